use std::collections::BTreeMap;
use std::fmt;

use super::grid::Grid;
use crate::exactalg::Ring;

/// Free generators of a formal chain group, identified by canonical key.
pub trait Generator: Clone + fmt::Debug {
    fn key(&self) -> &str;
}

impl<R: Ring> Generator for Grid<R> {
    fn key(&self) -> &str {
        Grid::key(self)
    }
}

/// Finite integer combination of generators, keyed by canonical key.
#[derive(Clone)]
pub struct ChainElement<G: Generator> {
    terms: BTreeMap<String, (i64, G)>,
}

pub type CubeChain<R> = ChainElement<Grid<R>>;

impl<G: Generator> Default for ChainElement<G> {
    fn default() -> Self {
        ChainElement { terms: BTreeMap::new() }
    }
}

impl<G: Generator> ChainElement<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(coeff: i64, g: G) -> Self {
        let mut x = Self::zero();
        x.add_term(coeff, g);
        x
    }

    pub fn add_term(&mut self, coeff: i64, g: G) {
        if coeff == 0 {
            return;
        }
        let key = g.key().to_string();
        let remove = match self.terms.get_mut(&key) {
            Some(entry) => {
                entry.0 += coeff;
                entry.0 == 0
            }
            None => {
                self.terms.insert(key.clone(), (coeff, g));
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, coeff: i64, other: &ChainElement<G>) {
        for (c, g) in other.terms.values() {
            self.add_term(coeff * c, g.clone());
        }
    }

    pub fn plus(&self, other: &ChainElement<G>) -> Self {
        let mut x = self.clone();
        x.add_scaled(1, other);
        x
    }

    pub fn minus(&self, other: &ChainElement<G>) -> Self {
        let mut x = self.clone();
        x.add_scaled(-1, other);
        x
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut x = Self::zero();
        x.add_scaled(c, self);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &G)> {
        self.terms.values().map(|(c, g)| (*c, g))
    }

    pub fn coefficient(&self, g: &G) -> i64 {
        self.terms.get(g.key()).map_or(0, |t| t.0)
    }

    /// Extends a map on generators linearly.
    pub fn map_linear<H: Generator>(&self, mut f: impl FnMut(&G) -> ChainElement<H>) -> ChainElement<H> {
        let mut out = ChainElement::zero();
        for (c, g) in self.terms.values() {
            out.add_scaled(*c, &f(g));
        }
        out
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&G) -> bool) -> ChainElement<G> {
        let mut out = Self::zero();
        for (c, g) in self.terms.values() {
            if keep(g) {
                out.add_term(*c, g.clone());
            }
        }
        out
    }
}

impl<G: Generator> FromIterator<(i64, G)> for ChainElement<G> {
    fn from_iter<T: IntoIterator<Item = (i64, G)>>(iter: T) -> Self {
        let mut x = Self::zero();
        for (c, g) in iter {
            x.add_term(c, g);
        }
        x
    }
}

impl<G: Generator> PartialEq for ChainElement<G> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((k1, (c1, _)), (k2, (c2, _)))| k1 == k2 && c1 == c2)
    }
}
impl<G: Generator> Eq for ChainElement<G> {}

impl<G: Generator> fmt::Debug for ChainElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, g)) in self.terms.values().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{g:?}")?;
        }
        Ok(())
    }
}
