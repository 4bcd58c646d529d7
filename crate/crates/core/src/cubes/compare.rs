//! Two-tier comparison of grids and chains.
//!
//! Tier 1 is equality of canonical keys. Tier 2 allows, at every vertex, a
//! signed permutation of monomial summands that agree once degree-one powers
//! are read as the atom itself (`S¹a = Λ¹a = a`), applied uniformly so that
//! all edges match.

use std::collections::HashMap;

use super::chain::{ChainElement, Generator};
use super::grid::Grid;
use crate::exactalg::{Mat, Ring};
use crate::objects::{Factor, Monomial, Obj, Power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Strict,
    Canonical,
}

impl Tier {
    pub fn label(self) -> &'static str {
        match self {
            Tier::Strict => "tier-1",
            Tier::Canonical => "tier-2",
        }
    }
}

fn factor_key(f: &Factor) -> String {
    match f.power {
        Power::Sym(1) | Power::Ext(1) => Factor::bare(&f.atom).key(),
        _ => f.key(),
    }
}

fn untagged(m: &Monomial) -> String {
    m.factors().iter().map(factor_key).collect::<Vec<_>>().join("⊗")
}

/// Vertex key with degree-one powers untagged, summands sorted.
pub fn untagged_key(o: &Obj) -> String {
    let mut keys: Vec<String> = o.monomials().iter().map(untagged).collect();
    keys.sort();
    keys.join(" ⊕ ")
}

fn shape_key<R: Ring>(g: &Grid<R>) -> String {
    let verts: Vec<String> = g.vertices().iter().map(untagged_key).collect();
    format!("{:?}|{}", g.lengths(), verts.join("|"))
}

struct Block {
    key: String,
    offset: usize,
    rank: usize,
}

fn blocks(o: &Obj) -> Vec<Block> {
    o.monomials()
        .iter()
        .zip(o.offsets())
        .map(|(m, &offset)| Block { key: untagged(m), offset, rank: m.rank() })
        .collect()
}

/// Compares block `(rows, cols)` of `a` against block `(rows2, cols2)` of `b`:
/// `Some(false)` equal, `Some(true)` negated, `None` otherwise. Zero blocks
/// compare equal.
fn block_sign<R: Ring>(a: &Mat<R>, b: &Mat<R>, r: (&Block, &Block), c: (&Block, &Block)) -> Option<bool> {
    let (mut same, mut neg) = (true, true);
    for i in 0..r.0.rank {
        for j in 0..c.0.rank {
            let x = a.get(r.0.offset + i, c.0.offset + j);
            let y = b.get(r.1.offset + i, c.1.offset + j);
            same &= x == y;
            neg &= *x == y.negate();
            if !same && !neg {
                return None;
            }
        }
    }
    Some(!same)
}

/// Union-find over (vertex, block) nodes with parity to the root.
#[derive(Clone)]
struct Parity {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Parity { parent: (0..n).collect(), flip: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, f) = self.find(p);
        self.parent[x] = root;
        self.flip[x] ^= f;
        (root, self.flip[x])
    }

    fn join(&mut self, a: usize, b: usize, odd: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == odd;
        }
        self.parent[ra] = rb;
        self.flip[ra] = fa ^ fb ^ odd;
        true
    }
}

struct Search<'a, R: Ring> {
    a: &'a Grid<R>,
    b: &'a Grid<R>,
    blocks_a: Vec<Vec<Block>>,
    blocks_b: Vec<Vec<Block>>,
    node_base: Vec<usize>,
    assign: Vec<Vec<usize>>,
}

impl<R: Ring> Search<'_, R> {
    fn run(&mut self, v: usize, parity: Parity) -> bool {
        if v == self.a.vertex_count() {
            return true;
        }
        let n = self.blocks_a[v].len();
        let mut used = vec![false; n];
        let mut current = vec![usize::MAX; n];
        self.choose(v, 0, &mut used, &mut current, &parity)
    }

    fn choose(&mut self, v: usize, slot: usize, used: &mut [bool], current: &mut [usize], parity: &Parity) -> bool {
        if slot == current.len() {
            let mut p = parity.clone();
            self.assign[v] = current.to_vec();
            if self.constrain(v, &mut p) && self.run(v + 1, p) {
                return true;
            }
            return false;
        }
        for t in 0..current.len() {
            if !used[t] && self.blocks_b[v][t].key == self.blocks_a[v][slot].key {
                used[t] = true;
                current[slot] = t;
                if self.choose(v, slot + 1, used, current, parity) {
                    return true;
                }
                used[t] = false;
            }
        }
        false
    }

    /// Edge constraints between `v` and earlier vertices.
    fn constrain(&self, v: usize, p: &mut Parity) -> bool {
        let coords = self.a.coords(v);
        for d in 0..self.a.dims() {
            if coords[d] == 0 {
                continue;
            }
            let u = v - self.a.stride(d);
            let (ea, eb) = (self.a.edge_at(d, u).expect("edge"), self.b.edge_at(d, u).expect("edge"));
            for (ti, tb) in self.blocks_a[v].iter().enumerate() {
                for (si, sb) in self.blocks_a[u].iter().enumerate() {
                    let rows = (tb, &self.blocks_b[v][self.assign[v][ti]]);
                    let cols = (sb, &self.blocks_b[u][self.assign[u][si]]);
                    match block_sign(ea, eb, rows, cols) {
                        None => return false,
                        Some(odd) => {
                            let zero = (0..tb.rank).all(|i| (0..sb.rank).all(|j| ea.get(tb.offset + i, sb.offset + j).is_zero()));
                            if !zero && !p.join(self.node_base[v] + ti, self.node_base[u] + si, odd) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Tier-2 equality of two grids.
pub fn canonically_equal<R: Ring>(a: &Grid<R>, b: &Grid<R>) -> bool {
    if a.lengths() != b.lengths() || shape_key(a) != shape_key(b) {
        return false;
    }
    let blocks_a: Vec<Vec<Block>> = a.vertices().iter().map(blocks).collect();
    let blocks_b: Vec<Vec<Block>> = b.vertices().iter().map(blocks).collect();
    let mut node_base = Vec::with_capacity(blocks_a.len());
    let mut total = 0;
    for bl in &blocks_a {
        node_base.push(total);
        total += bl.len();
    }
    let mut search = Search { a, b, blocks_a, blocks_b, node_base, assign: vec![Vec::new(); a.vertex_count()] };
    search.run(0, Parity::new(total))
}

/// Whether a formal sum of grids vanishes once tier-2 equal grids are
/// identified. Terms carry a tag; only equal tags are identified.
pub fn cancels_canonically<R: Ring>(terms: &[(i64, String, &Grid<R>)]) -> bool {
    let mut classes: Vec<(String, &Grid<R>, i64)> = Vec::new();
    let mut by_shape: HashMap<String, Vec<usize>> = HashMap::new();
    for &(c, ref tag, g) in terms {
        let key = format!("{tag}#{}", shape_key(g));
        let bucket = by_shape.entry(key).or_default();
        match bucket.iter().find(|&&i| canonically_equal(classes[i].1, g)) {
            Some(&i) => classes[i].2 += c,
            None => {
                bucket.push(classes.len());
                classes.push((tag.clone(), g, c));
            }
        }
    }
    classes.iter().all(|(_, _, c)| *c == 0)
}

/// Compares two formal sums with the tier at which they agree.
pub fn compare_sums<G: Generator, R: Ring>(
    lhs: &ChainElement<G>,
    rhs: &ChainElement<G>,
    view: impl Fn(&G) -> (String, &Grid<R>),
) -> Option<Tier> {
    if lhs == rhs {
        return Some(Tier::Strict);
    }
    let diff = lhs.minus(rhs);
    let terms: Vec<(i64, String, &Grid<R>)> = diff
        .terms()
        .map(|(c, g)| {
            let (tag, grid) = view(g);
            (c, tag, grid)
        })
        .collect();
    cancels_canonically(&terms).then_some(Tier::Canonical)
}

/// [`compare_sums`] for chains of grids.
pub fn compare_chains<R: Ring>(lhs: &ChainElement<Grid<R>>, rhs: &ChainElement<Grid<R>>) -> Option<Tier> {
    compare_sums(lhs, rhs, |g| (String::new(), g))
}
