//! Normal forms: an object is a sorted direct sum of tensor monomials, each
//! a sorted list of factors. Bases are concatenated over summands and taken
//! in mixed radix (first factor most significant) inside a monomial.

use std::collections::HashMap;
use std::fmt;

use super::atom::{Atom, Factor, Power};
use super::tuples::{sort_sign, table};
use super::ObjError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<Factor>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(Factor::rank).product()
    }

    pub fn odd_degree(&self) -> usize {
        self.0.iter().map(Factor::odd_degree).sum()
    }

    pub fn key(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(Factor::key).collect::<Vec<_>>().join("⊗")
    }

    /// Per-factor indices of local basis element `i`.
    pub fn split_index(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (slot, f) in self.0.iter().enumerate().rev() {
            let r = f.rank();
            out[slot] = i % r;
            i /= r;
        }
        out
    }

    pub fn join_index(&self, parts: &[usize]) -> usize {
        self.0.iter().zip(parts).fold(0, |acc, (f, &p)| acc * f.rank() + p)
    }

    pub fn basis_labels(&self) -> Vec<String> {
        let per: Vec<Vec<String>> = self.0.iter().map(Factor::basis_labels).collect();
        (0..self.rank())
            .map(|i| {
                let idx = self.split_index(i);
                match per.len() {
                    0 => "1".to_string(),
                    1 => per[0][idx[0]].clone(),
                    _ => {
                        let parts: Vec<&str> = idx.iter().zip(&per).map(|(&j, l)| l[j].as_str()).collect();
                        format!("({})", parts.join("⊗"))
                    }
                }
            })
            .collect()
    }
}

/// Result of sorting a tensor product of factors into a monomial.
#[derive(Clone, Debug)]
pub struct PureNormal {
    pub monomial: Monomial,
    /// Sign of the graded swap, `(-1)^{q_a q_b}` per exchanged pair.
    pub sign: i8,
    /// `kept[new_position] = old_position`; unit factors are dropped.
    pub kept: Vec<usize>,
}

impl PureNormal {
    /// Local index in the monomial of the element with old per-factor indices.
    pub fn map_index(&self, old: &[usize]) -> usize {
        let parts: Vec<usize> = self.kept.iter().map(|&o| old[o]).collect();
        self.monomial.join_index(&parts)
    }
}

/// Sorts factors stably; `None` when some factor has rank zero.
pub fn normalize_pure(factors: &[Factor]) -> Option<PureNormal> {
    if factors.iter().any(|f| f.rank() == 0) {
        return None;
    }
    let mut kept: Vec<usize> = (0..factors.len()).filter(|&i| !factors[i].is_unit()).collect();
    kept.sort_by(|&a, &b| factors[a].cmp(&factors[b]));
    let mut sign = 1i8;
    for x in 0..kept.len() {
        for y in x + 1..kept.len() {
            if kept[x] > kept[y] && factors[kept[x]].odd_degree() * factors[kept[y]].odd_degree() % 2 == 1 {
                sign = -sign;
            }
        }
    }
    let monomial = Monomial(kept.iter().map(|&i| factors[i].clone()).collect());
    Some(PureNormal { monomial, sign, kept })
}

/// Signed image of a basis vector: `(sign, index)`.
pub type SignedIndex = (i8, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Obj {
    monos: Vec<Monomial>,
    offsets: Vec<usize>,
    rank: usize,
}

impl Obj {
    pub fn zero() -> Obj {
        Obj::default()
    }

    pub fn one() -> Obj {
        Obj::from_sorted(vec![Monomial::one()])
    }

    pub fn atom(a: &Atom) -> Obj {
        Obj::monomial(Monomial(vec![Factor::bare(a)]))
    }

    pub fn monomial(m: Monomial) -> Obj {
        if m.rank() == 0 {
            Obj::zero()
        } else {
            Obj::from_sorted(vec![m])
        }
    }

    fn from_sorted(monos: Vec<Monomial>) -> Obj {
        let mut offsets = Vec::with_capacity(monos.len());
        let mut rank = 0;
        for m in &monos {
            offsets.push(rank);
            rank += m.rank();
        }
        Obj { monos, offsets, rank }
    }

    /// Sorted sum of monomials; also returns `new_position[old_position]`.
    pub fn from_monomials(monos: Vec<Monomial>) -> (Obj, Vec<usize>) {
        let mut order: Vec<usize> = (0..monos.len()).collect();
        order.sort_by(|&a, &b| monos[a].cmp(&monos[b]));
        let mut position = vec![0; monos.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let sorted = order.iter().map(|&i| monos[i].clone()).collect();
        (Obj::from_sorted(sorted), position)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn key(&self) -> String {
        if self.monos.is_empty() {
            return "0".into();
        }
        self.monos.iter().map(Monomial::key).collect::<Vec<_>>().join(" ⊕ ")
    }

    /// Summand and local index of basis element `i`.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let s = self.offsets.partition_point(|&o| o <= i) - 1;
        (s, i - self.offsets[s])
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.monos.iter().flat_map(Monomial::basis_labels).collect()
    }

    /// Atoms, when every summand is a single bare atom.
    pub fn bare_atoms(&self) -> Option<Vec<Atom>> {
        self.monos
            .iter()
            .map(|m| match m.factors() {
                [f] if f.power == Power::Bare => Some(f.atom.clone()),
                _ => None,
            })
            .collect()
    }

    /// Sorted direct sum; `maps[part][i]` is the new index of basis element `i` of `part`.
    pub fn direct_sum(parts: &[Obj]) -> (Obj, Vec<Vec<usize>>) {
        let tagged: Vec<(usize, usize)> =
            parts.iter().enumerate().flat_map(|(p, o)| (0..o.monos.len()).map(move |m| (p, m))).collect();
        let monos: Vec<Monomial> = tagged.iter().map(|&(p, m)| parts[p].monos[m].clone()).collect();
        let (sum, position) = Obj::from_monomials(monos);
        let mut lookup = HashMap::new();
        for (t, &(p, m)) in tagged.iter().enumerate() {
            lookup.insert((p, m), sum.offsets[position[t]]);
        }
        let maps = parts
            .iter()
            .enumerate()
            .map(|(p, o)| {
                (0..o.rank)
                    .map(|i| {
                        let (m, local) = o.locate(i);
                        lookup[&(p, m)] + local
                    })
                    .collect()
            })
            .collect();
        (sum, maps)
    }

    /// Distributed, sorted tensor product. The map is indexed by the
    /// mixed-radix product basis (first part most significant).
    pub fn tensor(parts: &[Obj]) -> (Obj, Vec<SignedIndex>) {
        if parts.iter().any(Obj::is_zero) {
            return (Obj::zero(), Vec::new());
        }
        // One distributed term per choice of summand in each part.
        let choices: Vec<Vec<usize>> = crate::multiindex::box_grid(&parts.iter().map(|o| o.monos.len() - 1).collect::<Vec<_>>())
            .into_iter()
            .map(|m| m.entries().to_vec())
            .collect();
        let mut terms = Vec::new();
        let mut term_of = HashMap::new();
        for choice in &choices {
            let factors: Vec<Factor> =
                choice.iter().enumerate().flat_map(|(p, &m)| parts[p].monos[m].0.iter().cloned()).collect();
            let pure = normalize_pure(&factors).expect("parts have positive rank");
            term_of.insert(choice.clone(), terms.len());
            terms.push(pure);
        }
        let (sum, position) = Obj::from_monomials(terms.iter().map(|t| t.monomial.clone()).collect());
        let dims: Vec<usize> = parts.iter().map(Obj::rank).collect();
        let total: usize = dims.iter().product();
        let mut map = Vec::with_capacity(total);
        for flat in 0..total {
            let mut rest = flat;
            let mut idx = vec![0; parts.len()];
            for p in (0..parts.len()).rev() {
                idx[p] = rest % dims[p];
                rest /= dims[p];
            }
            let mut choice = Vec::with_capacity(parts.len());
            let mut old = Vec::new();
            for (p, &i) in idx.iter().enumerate() {
                let (m, local) = parts[p].locate(i);
                choice.push(m);
                old.extend(parts[p].monos[m].split_index(local));
            }
            let t = term_of[&choice];
            let local = terms[t].map_index(&old);
            map.push((terms[t].sign, sum.offsets[position[t]] + local));
        }
        (sum, map)
    }

    /// `S^p` of a sum of bare atoms, split by the additivity rule. The map is
    /// indexed by weakly increasing `p`-tuples over this object's basis.
    pub fn sym_power(&self, p: usize) -> Result<(Obj, Vec<SignedIndex>), ObjError> {
        self.power_split(p, false)
    }

    /// `Λ^q` of a sum of bare atoms; indexed by strictly increasing tuples.
    pub fn ext_power(&self, q: usize) -> Result<(Obj, Vec<SignedIndex>), ObjError> {
        self.power_split(q, true)
    }

    fn power_split(&self, p: usize, strict: bool) -> Result<(Obj, Vec<SignedIndex>), ObjError> {
        let atoms = self
            .bare_atoms()
            .ok_or_else(|| ObjError::Unsupported(format!("power of non-atomic summands in {}", self.key())))?;
        let src = table(strict, p, self.rank);
        let mut terms: Vec<PureNormal> = Vec::new();
        let mut term_of: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut raw = Vec::with_capacity(src.len());
        for t in &src.tuples {
            let mut counts = vec![0; atoms.len()];
            let mut locals: Vec<Vec<usize>> = vec![Vec::new(); atoms.len()];
            for &i in t {
                let (s, local) = self.locate(i);
                counts[s] += 1;
                locals[s].push(local);
            }
            let factors: Vec<Factor> = atoms
                .iter()
                .zip(&counts)
                .map(|(a, &c)| if strict { Factor::ext(a, c) } else { Factor::sym(a, c) })
                .collect();
            let term = *term_of.entry(counts.clone()).or_insert_with(|| {
                terms.push(normalize_pure(&factors).expect("atoms of positive rank"));
                terms.len() - 1
            });
            let old: Vec<usize> = factors
                .iter()
                .zip(&locals)
                .map(|(f, l)| f.position(l).expect("tuple lies in factor basis"))
                .collect();
            raw.push((term, old));
        }
        let (sum, position) = Obj::from_monomials(terms.iter().map(|t| t.monomial.clone()).collect());
        let map = raw
            .into_iter()
            .map(|(t, old)| (terms[t].sign, sum.offsets[position[t]] + terms[t].map_index(&old)))
            .collect();
        Ok((sum, map))
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// Sorts a tuple of indices for a power basis: sign for wedges, `None` for
/// a repeated wedge entry.
pub fn sort_tuple(t: &mut [usize], strict: bool) -> Option<i8> {
    if strict {
        sort_sign(t)
    } else {
        t.sort_unstable();
        Some(1)
    }
}
