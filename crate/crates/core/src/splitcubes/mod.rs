//! Direct-sum cubes, split cubes and their chain complex.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng as _;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use serde::{Deserialize, Serialize};

use crate::cubes::json::vertex_label;
use crate::cubes::{ChainElement, CubeChain, CubeError, Generator, Grid, GridJson};
use crate::exactalg::{ExactRing, Mat, Ring, Q};
use crate::multiindex::{corners, grid};
use crate::objects::{Atom, Obj};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("splitting at {vertex:?} is not invertible")]
    NotInvertible { vertex: Vec<usize> },
    #[error("splitting at corner {vertex:?} is not the identity")]
    CornerNotIdentity { vertex: Vec<usize> },
    #[error("splitting does not commute with the edge in direction {direction} at {vertex:?}")]
    NotACubeMap { direction: usize, vertex: Vec<usize> },
    #[error("splitting has the wrong shape at {vertex:?}")]
    Shape { vertex: Vec<usize> },
    #[error(transparent)]
    Cube(#[from] CubeError),
}

/// Corners `c ∈ {0,2}^n` feeding vertex `j`, in lexicographic order.
pub fn corners_of(j: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(j.len())];
    for &x in j {
        let choices: &[usize] = if x == 1 { &[0, 2] } else { std::slice::from_ref(&x) };
        out = out.iter().flat_map(|p| choices.iter().map(move |&c| [p.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Position of each corner summand inside a direct-sum vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumLayout {
    pub blocks: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SumLayout {
    pub fn block(&self, corner: &[usize]) -> Option<&[usize]> {
        self.blocks.iter().find(|(c, _)| c == corner).map(|(_, b)| b.as_slice())
    }
}

/// Direct-sum cube `[E^c]` together with the corner layout of every vertex.
#[derive(Clone, Debug)]
pub struct DirectSumCube<R: Ring> {
    pub cube: Grid<R>,
    pub layouts: Vec<SumLayout>,
}

impl<R: Ring> DirectSumCube<R> {
    /// `corner(c)` gives the object at corner `c ∈ {0,2}^n`.
    pub fn new(n: usize, corner: impl Fn(&[usize]) -> Obj) -> Self {
        let lengths = vec![2; n];
        let layout_of = |j: &[usize]| {
            let cs = corners_of(j);
            let objs: Vec<Obj> = cs.iter().map(|c| corner(c)).collect();
            let (sum, maps) = Obj::direct_sum(&objs);
            (sum, SumLayout { blocks: cs.into_iter().zip(maps).collect() })
        };
        let points = grid(n, 3);
        let layouts: Vec<SumLayout> = points.iter().map(|j| layout_of(j.entries()).1).collect();
        let cube = Grid::from_fn(
            &lengths,
            |j| layout_of(j).0,
            |d, j, src, tgt| {
                let mut w = j.to_vec();
                w[d] += 1;
                transfer_between(&layout_of(j).1, &layout_of(&w).1, src.rank(), tgt.rank())
            },
        );
        DirectSumCube { cube, layouts }
    }

    pub fn layout(&self, j: &[usize]) -> &SumLayout {
        &self.layouts[self.cube.index(j)]
    }

    /// Identity on the corners shared by the two vertices.
    pub fn transfer(&self, from: &[usize], to: &[usize]) -> Mat<R> {
        transfer_between(
            self.layout(from),
            self.layout(to),
            self.cube.vertex(from).rank(),
            self.cube.vertex(to).rank(),
        )
    }
}

pub fn transfer_between<R: Ring>(from: &SumLayout, to: &SumLayout, src_rank: usize, tgt_rank: usize) -> Mat<R> {
    let mut m = Mat::zeros(tgt_rank, src_rank);
    for (c, cols) in &from.blocks {
        if let Some(rows) = to.block(c) {
            for (&r, &col) in rows.iter().zip(cols) {
                m.set(r, col, R::one());
            }
        }
    }
    m
}

/// `Sp(E)`: the direct-sum cube on the corners of `E`.
pub fn sp<R: Ring>(e: &Grid<R>) -> DirectSumCube<R> {
    DirectSumCube::new(e.dims(), |c| e.vertex(c).clone())
}

/// A cube with an isomorphism `f: Sp(E) -> E` that is the identity on corners.
#[derive(Clone)]
pub struct SplitCube<R: Ring> {
    pub cube: Grid<R>,
    /// `splitting[v]`: `Sp(E)^v -> E^v`, indexed like the cube's vertices.
    pub splitting: Vec<Mat<R>>,
    key: Arc<OnceLock<String>>,
}

impl<R: Ring> SplitCube<R> {
    pub fn new_unchecked(cube: Grid<R>, splitting: Vec<Mat<R>>) -> Self {
        SplitCube { cube, splitting, key: Arc::default() }
    }

    /// `(Sp(E), id)` for a direct-sum cube.
    pub fn trivial(d: &DirectSumCube<R>) -> Self {
        let splitting = d.cube.vertices().iter().map(|o| Mat::identity(o.rank())).collect();
        SplitCube::new_unchecked(d.cube.clone(), splitting)
    }

    pub fn dims(&self) -> usize {
        self.cube.dims()
    }

    pub fn splitting_at(&self, j: &[usize]) -> &Mat<R> {
        &self.splitting[self.cube.index(j)]
    }

    pub fn forget(&self) -> Grid<R> {
        self.cube.clone()
    }
}

/// Cube JSON plus `"splitting": {vertex: rows}`, in the normalized vertex
/// bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitCubeJson {
    #[serde(flatten)]
    pub cube: GridJson,
    pub splitting: BTreeMap<String, Vec<Vec<String>>>,
}

impl<R: Ring> SplitCube<R> {
    pub fn to_json(&self) -> SplitCubeJson {
        let splitting = (0..self.cube.vertex_count())
            .map(|v| (vertex_label(&self.cube.coords(v)), self.splitting[v].to_strings()))
            .collect();
        SplitCubeJson { cube: self.cube.to_json(), splitting }
    }
}

impl<R: ExactRing> SplitCube<R> {
    pub fn new(cube: Grid<R>, splitting: Vec<Mat<R>>) -> Result<Self, SplitError> {
        let s = SplitCube::new_unchecked(cube, splitting);
        s.validate()?;
        Ok(s)
    }

    /// Parses and validates; a missing vertex in `splitting` means the
    /// identity, which only fits corners and zero vertices.
    pub fn from_json(j: &SplitCubeJson) -> Result<Self, SplitError> {
        let cube = Grid::<R>::from_json(&j.cube)?;
        let spe = sp(&cube);
        let mut splitting = Vec::with_capacity(cube.vertex_count());
        for v in 0..cube.vertex_count() {
            let m = cube.coords(v);
            let (rows, cols) = (cube.vertex_at(v).rank(), spe.cube.vertex_at(v).rank());
            let f = match j.splitting.get(&vertex_label(&m)) {
                Some(s) => Mat::from_strings(s.len(), s.first().map_or(0, Vec::len), s).map_err(CubeError::from)?,
                None if rows == cols => Mat::identity(rows),
                None => return Err(SplitError::Shape { vertex: m }),
            };
            if f.dims() != (rows, cols) {
                return Err(SplitError::Shape { vertex: m });
            }
            splitting.push(f);
        }
        SplitCube::new(cube, splitting)
    }

    pub fn validate(&self) -> Result<(), SplitError> {
        let e = &self.cube;
        if !e.is_cube() || self.splitting.len() != e.vertex_count() {
            return Err(SplitError::Cube(CubeError::Shape("split cube needs a cube and one map per vertex".into())));
        }
        let spe = sp(e);
        for v in 0..e.vertex_count() {
            let j = e.coords(v);
            let f = &self.splitting[v];
            if f.dims() != (e.vertex_at(v).rank(), spe.cube.vertex_at(v).rank()) {
                return Err(SplitError::Shape { vertex: j });
            }
            if j.iter().all(|&x| x != 1) {
                if !f.is_identity() {
                    return Err(SplitError::CornerNotIdentity { vertex: j });
                }
            } else if R::inverse(f).is_none() {
                return Err(SplitError::NotInvertible { vertex: j });
            }
            for d in 0..e.dims() {
                let Some(edge) = e.edge_at(d, v) else { continue };
                let w = v + e.stride(d);
                let lhs = edge.dot(f);
                let rhs = self.splitting[w].dot(spe.cube.edge_at(d, v).expect("same shape"));
                if lhs != rhs {
                    return Err(SplitError::NotACubeMap { direction: d + 1, vertex: j });
                }
            }
        }
        Ok(())
    }

    /// Face `∂_l^j` with the transported splitting when `j = 1`.
    pub fn face(&self, l: usize, j: usize) -> SplitCube<R> {
        let cube = self.cube.face(l, j);
        if j != 1 {
            let d = l - 1;
            let splitting = (0..cube.vertex_count())
                .map(|v| {
                    let mut full = cube.coords(v);
                    full.insert(d, j);
                    self.splitting_at(&full).clone()
                })
                .collect();
            return SplitCube::new_unchecked(cube, splitting);
        }
        let d = l - 1;
        let spe = sp(&self.cube);
        let sp_face = sp(&cube);
        let splitting = (0..cube.vertex_count())
            .map(|v| {
                let jp = cube.coords(v);
                let mut big = jp.clone();
                big.insert(d, 1);
                let layout = sp_face.layout(&jp);
                let width = sp_face.cube.vertex_at(v).rank();
                let mut regroup = Mat::zeros(spe.cube.vertex(&big).rank(), width);
                for (corner, cols) in &layout.blocks {
                    let mut k = corner.clone();
                    k.insert(d, 1);
                    let inv = R::inverse(self.splitting_at(&k)).expect("splitting is invertible");
                    let mut select = Mat::zeros(self.cube.vertex(&k).rank(), width);
                    for (r, &c) in cols.iter().enumerate() {
                        select.set(r, c, R::one());
                    }
                    let piece = spe.transfer(&k, &big).dot(&inv).dot(&select);
                    regroup = regroup.add(&piece).expect("same shape");
                }
                self.splitting_at(&big).dot(&regroup)
            })
            .collect();
        SplitCube::new_unchecked(cube, splitting)
    }
}

impl<R: Ring> Generator for SplitCube<R> {
    fn key(&self) -> &str {
        self.key.get_or_init(|| {
            let mut h = Sha256::new();
            h.update(self.cube.key().as_bytes());
            for f in &self.splitting {
                h.update(b"|");
                h.update(f.key_string().as_bytes());
            }
            h.finalize().iter().map(|b| format!("{b:02x}")).collect()
        })
    }
}

impl<R: Ring> fmt::Debug for SplitCube<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Split{:?}", self.cube)
    }
}

pub type SplitChain<R> = ChainElement<SplitCube<R>>;

/// `d = Σ_l Σ_i (-1)^{i+l} ∂_l^i` on split cubes.
pub fn split_differential<R: ExactRing>(x: &SplitChain<R>) -> SplitChain<R> {
    x.map_linear(|s| {
        let mut out = ChainElement::zero();
        for l in 1..=s.dims() {
            for i in 0..=2 {
                out.add_term(if (i + l) % 2 == 0 { 1 } else { -1 }, s.face(l, i));
            }
        }
        out
    })
}

pub fn forget_splitting<R: Ring>(x: &SplitChain<R>) -> CubeChain<R> {
    x.map_linear(|s| ChainElement::single(1, s.forget()))
}

/// Invertible matrix with small integer entries: a product of unit
/// triangular factors with a random row permutation.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat<Q> {
    let mut lower = Mat::<Q>::identity(n);
    let mut upper = Mat::<Q>::identity(n);
    for r in 0..n {
        for c in 0..n {
            let x = rng.gen_range(-2i64..=2);
            if r > c {
                lower.set(r, c, Q::from_integer(x.into()));
            } else if r < c {
                upper.set(r, c, Q::from_integer(x.into()));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    lower.dot(&upper).permute(&perm, &(0..n).collect::<Vec<_>>())
}

/// Random split cube: named corner atoms of rank `0..=max_rank`, fresh atoms
/// in the interior, and a random splitting conjugating `Sp(E)` onto `E`.
pub fn random_split_cube<R: ExactRing>(rng: &mut ChaCha8Rng, n: usize, max_rank: usize, label: &str) -> SplitCube<R> {
    let mut corner_objs: BTreeMap<Vec<usize>, Obj> = BTreeMap::new();
    for c in corners(n) {
        let rank = rng.gen_range(0..=max_rank);
        let name = format!("{label}{}", vertex_digits(c.entries()));
        corner_objs.insert(c.into_vec(), if rank == 0 { Obj::zero() } else { Obj::atom(&Atom::named(&name, rank)) });
    }
    split_cube_over(rng, n, label, |c| corner_objs[c].clone())
}

/// Random splitting over given corners.
pub fn split_cube_over<R: ExactRing>(
    rng: &mut ChaCha8Rng,
    n: usize,
    label: &str,
    corner: impl Fn(&[usize]) -> Obj,
) -> SplitCube<R> {
    let spe = DirectSumCube::<R>::new(n, corner);
    let mut objects = Vec::new();
    let mut splitting = Vec::new();
    let mut inverses = Vec::new();
    for v in 0..spe.cube.vertex_count() {
        let j = spe.cube.coords(v);
        let o = spe.cube.vertex_at(v);
        if j.iter().all(|&x| x != 1) || o.rank() == 0 {
            objects.push(o.clone());
            splitting.push(Mat::<R>::identity(o.rank()));
            inverses.push(Mat::<R>::identity(o.rank()));
            continue;
        }
        let name = format!("{label}{}", vertex_digits(&j));
        objects.push(Obj::atom(&Atom::named(&name, o.rank())));
        let f = random_invertible(rng, o.rank());
        let inv = crate::exactalg::inverse_q(&f).expect("unit triangular product");
        splitting.push(f.map(R::from_q));
        inverses.push(inv.map(R::from_q));
    }
    let cube = Grid::from_fn(
        spe.cube.lengths(),
        |j| objects[spe.cube.index(j)].clone(),
        |d, j, _, _| {
            let v = spe.cube.index(j);
            let w = v + spe.cube.stride(d);
            splitting[w].dot(spe.cube.edge_at(d, v).expect("edge")).dot(&inverses[v])
        },
    );
    SplitCube::new_unchecked(cube, splitting)
}

fn vertex_digits(j: &[usize]) -> String {
    j.iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn atom(l: &str, r: usize) -> Obj {
        Obj::atom(&Atom::named(l, r))
    }

    #[test]
    fn one_dimensional_direct_sum() {
        let d = DirectSumCube::<Q>::new(1, |c| if c[0] == 0 { atom("A", 1) } else { atom("B", 2) });
        assert_eq!(d.cube.vertex(&[1]).key(), "A#1 ⊕ B#2");
        assert_eq!(d.cube.edge(0, &[0]).unwrap(), &Mat::from_i64_rows(&[&[1], &[0], &[0]]));
        assert_eq!(d.cube.edge(0, &[1]).unwrap(), &Mat::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1]]));
        d.cube.validate().unwrap();
    }

    #[test]
    fn two_dimensional_centre() {
        let d = DirectSumCube::<Q>::new(2, |c| atom(&format!("E{}{}", c[0], c[1]), 1));
        assert_eq!(d.cube.vertex(&[1, 1]).rank(), 4);
        assert_eq!(d.cube.vertex(&[1, 2]).key(), "E02#1 ⊕ E22#1");
        d.cube.validate().unwrap();
        let z = DirectSumCube::<Q>::new(2, |_| Obj::zero());
        assert!(z.cube.is_zero());
    }

    #[test]
    fn random_split_cubes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=3 {
            let s = random_split_cube::<Q>(&mut rng, n, 2, "E");
            s.cube.validate().unwrap();
            s.validate().unwrap();
            for l in 1..=n {
                for j in 0..=2 {
                    s.face(l, j).validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn split_differential_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = random_split_cube::<Q>(&mut rng, 2, 2, "E");
        let x = SplitChain::single(1, s);
        let dd = split_differential(&split_differential(&x));
        assert!(dd.is_zero());
        let lhs = forget_splitting(&split_differential(&x));
        let rhs = crate::cubes::differential(&forget_splitting(&x));
        assert_eq!(lhs, rhs);
    }
}
