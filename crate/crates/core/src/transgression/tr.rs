//! Iterated transgressions by the affine line.
//!
//! For a short exact sequence `E⁰ -> E¹ -> E² ` the transgression `tr_1(E)`
//! is the kernel of `(a, b) ↦ t·f¹(a) - (t-1)·b` on `E¹ ⊕ E²` over `ℚ[t]`.
//! Given a section `s` of `f¹` it has the basis
//! `K = [I - t·s·f¹; -t·f¹]` (columns indexed by `E¹`) and left inverse
//! `[I, -s]`, so `K(0) = [I; 0]` and `K(1)` spans `ker f¹ ⊕ E²`.
//!
//! `tr_S(E)` applies this in every direction of `S`, highest first, each
//! time prepending the new variable. At every remaining vertex it is stored
//! as a [`Frame`]: a basis inside the sum of the `E`-vertices `ℓ ∈ {1,2}^S`.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::subobject::{obj_has_vars, subobject};
use super::TransError;
use crate::cubes::Grid;
use crate::exactalg::{inverse_q, q, rref, Mat, Poly, Ring, Q};
use crate::objects::Obj;

/// Transgressed module at one vertex, as the column span of `basis` inside
/// the sum of the `E`-vertices listed in `blocks`. `left · basis = I`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub blocks: Vec<Vec<usize>>,
    pub basis: Mat<Poly>,
    pub left: Mat<Poly>,
}

impl Frame {
    /// Sets each listed variable to 1, highest index first.
    pub fn at_one(&self, vars: &[usize]) -> Frame {
        let mut sorted = vars.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let (mut basis, mut left) = (self.basis.clone(), self.left.clone());
        for v in sorted {
            basis = basis.evaluate(v, &q(1)).expect("variables are 1-based");
            left = left.evaluate(v, &q(1)).expect("variables are 1-based");
        }
        Frame { blocks: self.blocks.clone(), basis, left }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
}

pub type FrameMap = BTreeMap<Vec<usize>, Frame>;

pub fn to_poly_grid(e: &Grid<Q>) -> Grid<Poly> {
    Grid::from_fn(e.lengths(), |m| e.vertex(m).clone(), |d, m, _, _| e.edge(d, m).expect("edge").to_poly())
}

/// `tr_S(E)` for every `S`, computed on demand and cached.
pub struct Transgressions {
    cube: Grid<Poly>,
    base_vars: usize,
    frames: RefCell<HashMap<Vec<usize>, Rc<FrameMap>>>,
    fallback: Cell<bool>,
}

fn key_with(m: &[usize], dirs: &[usize], value: usize) -> Vec<usize> {
    let mut k = m.to_vec();
    for &d in dirs {
        k[d] = value;
    }
    k
}

impl Transgressions {
    pub fn new(e: &Grid<Q>) -> Self {
        Transgressions::over(to_poly_grid(e)).expect("rational cubes have constant objects")
    }

    /// A cube over `ℚ[t_1, ..., t_p]`; the new variables go in front of
    /// the existing ones. Vertex objects must not involve variables.
    pub fn over(cube: Grid<Poly>) -> Result<Self, TransError> {
        if !cube.is_cube() {
            return Err(TransError::Cube(crate::cubes::CubeError::Shape("transgression needs a cube".into())));
        }
        if cube.vertices().iter().any(obj_has_vars) {
            return Err(TransError::Index("vertex objects depend on variables".into()));
        }
        let base_vars = cube.var_count();
        Ok(Transgressions { cube, base_vars, frames: RefCell::default(), fallback: Cell::new(false) })
    }

    pub fn cube(&self) -> &Grid<Poly> {
        &self.cube
    }

    pub fn dims(&self) -> usize {
        self.cube.dims()
    }

    pub fn base_vars(&self) -> usize {
        self.base_vars
    }

    /// Whether some section was not built from a coordinate complement, so
    /// that faces may hold only up to isomorphism.
    pub fn used_fallback(&self) -> bool {
        self.fallback.get()
    }

    /// `tr_S(E)` at all vertices; `dirs` are 0-based and increasing. Keys are
    /// vertices of `E` with the coordinates in `dirs` set to 1.
    pub fn frames(&self, dirs: &[usize]) -> Result<Rc<FrameMap>, TransError> {
        if let Some(f) = self.frames.borrow().get(dirs) {
            return Ok(f.clone());
        }
        let out = Rc::new(self.compute(dirs)?);
        self.frames.borrow_mut().insert(dirs.to_vec(), out.clone());
        Ok(out)
    }

    pub fn frame(&self, dirs: &[usize], vertex: &[usize]) -> Result<Frame, TransError> {
        let key = key_with(vertex, dirs, 1);
        Ok(self.frames(dirs)?.get(&key).expect("frame at every vertex").clone())
    }

    /// Edge of `E` in direction `d` at `m`, with `shift` variables in front.
    fn edge(&self, d: usize, m: &[usize], shift: usize) -> Mat<Poly> {
        self.cube.edge(d, m).expect("edge").insert_vars(1, shift)
    }

    fn compute(&self, dirs: &[usize]) -> Result<FrameMap, TransError> {
        let Some((&b, rest)) = dirs.split_first() else {
            return Ok((0..self.cube.vertex_count())
                .map(|v| {
                    let m = self.cube.coords(v);
                    let r = self.cube.vertex_at(v).rank();
                    (m.clone(), Frame { blocks: vec![m], basis: Mat::identity(r), left: Mat::identity(r) })
                })
                .collect());
        };
        let prev = self.frames(rest)?;
        let shift = rest.len();
        let mut out = FrameMap::new();
        for (key, c0) in prev.iter().filter(|(k, _)| k[b] == 0) {
            let at = |level: usize| &prev[&key_with(key, &[b], level)];
            let (c1, c2) = (at(1), at(2));
            let a01 = Mat::block_diag(&c0.blocks.iter().map(|x| self.edge(b, x, shift)).collect::<Vec<_>>());
            let a12 = Mat::block_diag(&c1.blocks.iter().map(|x| self.edge(b, x, shift)).collect::<Vec<_>>());
            let f0 = c1.left.dot(&a01).dot(&c0.basis);
            let f1 = c2.left.dot(&a12).dot(&c1.basis);
            let (s, natural) = section(&f0, &f1).ok_or(TransError::NoSection(b + 1))?;
            if !natural {
                self.fallback.set(true);
            }
            let up = |m: &Mat<Poly>| m.insert_vars(1, 1);
            let (s, f1) = (up(&s), up(&f1));
            let t = Poly::var(1);
            let r1 = c1.rank();
            let sf1 = s.dot(&f1).scale(&t);
            let k = Mat::vstack(&[Mat::identity(r1).sub(&sf1)?, f1.scale(&t).neg()])?;
            let basis = Mat::block_diag(&[up(&c1.basis), up(&c2.basis)]).dot(&k);
            let left = Mat::hstack(&[Mat::identity(r1), s.neg()])?.dot(&Mat::block_diag(&[up(&c1.left), up(&c2.left)]));
            let blocks = c1.blocks.iter().chain(&c2.blocks).cloned().collect();
            out.insert(key_with(key, &[b], 1), Frame { blocks, basis, left });
        }
        Ok(out)
    }

    /// The frame as a canonical subobject of its ambient sum.
    pub fn object(&self, f: &Frame) -> Obj {
        let blocks: Vec<Obj> = f.blocks.iter().map(|x| self.cube.vertex(x).clone()).collect();
        subobject(&blocks, &f.basis, "tr")
    }

    fn offsets(&self, f: &Frame) -> Vec<usize> {
        let mut out = Vec::with_capacity(f.blocks.len() + 1);
        let mut acc = 0;
        out.push(0);
        for x in &f.blocks {
            acc += self.cube.vertex(x).rank();
            out.push(acc);
        }
        out
    }

    /// Map of ambient sums sending block `x` of `src` to block `y` of `tgt`
    /// through `rule(x) = Some((y, matrix))`, and to zero on `None`.
    pub fn ambient_map(
        &self,
        src: &Frame,
        tgt: &Frame,
        mut rule: impl FnMut(&[usize]) -> Option<(Vec<usize>, Mat<Poly>)>,
    ) -> Result<Mat<Poly>, TransError> {
        let (so, to) = (self.offsets(src), self.offsets(tgt));
        let mut out = Mat::zeros(to[tgt.blocks.len()], so[src.blocks.len()]);
        for (p, x) in src.blocks.iter().enumerate() {
            let Some((y, m)) = rule(x) else { continue };
            let q = tgt
                .blocks
                .iter()
                .position(|b| *b == y)
                .ok_or_else(|| TransError::Index(format!("no block {y:?} in target frame")))?;
            out.set_block(to[q], so[p], &m);
        }
        Ok(out)
    }

    /// `left_tgt · amb · basis_src`, checked to land in the target span.
    pub fn frame_map(&self, src: &Frame, tgt: &Frame, amb: &Mat<Poly>, direction: usize) -> Result<Mat<Poly>, TransError> {
        let image = amb.dot(&src.basis);
        let m = tgt.left.dot(&image);
        if tgt.basis.dot(&m) != image {
            return Err(TransError::NotFunctorial(direction));
        }
        Ok(m)
    }

    /// Composite of `E`-edges from `from` up to `to` (componentwise `≥`),
    /// with `shift` variables in front.
    pub fn path(&self, from: &[usize], to: &[usize], shift: usize) -> Mat<Poly> {
        let mut cur = from.to_vec();
        let mut m: Mat<Poly> = Mat::identity(self.cube.vertex(from).rank());
        for d in 0..cur.len() {
            while cur[d] < to[d] {
                m = self.edge(d, &cur, shift).dot(&m);
                cur[d] += 1;
            }
        }
        m
    }

    /// `tr_m^i(E)`: the cube in the directions `i` (1-based) whose vertex
    /// `j` is `tr_m(∂_i^j E)`, over `ℚ[t_1, ..., t_m]` for the complementary
    /// directions.
    pub fn tr_cube(&self, i: &[usize]) -> Result<Grid<Poly>, TransError> {
        let n = self.dims();
        let kept = zero_based(i, n)?;
        let others: Vec<usize> = (0..n).filter(|d| !kept.contains(d)).collect();
        let frames = self.frames(&others)?;
        let lengths = vec![2; kept.len()];
        let shape: Grid<Poly> = Grid::zero(&lengths);
        let full = |j: &[usize]| {
            let mut m = vec![1; n];
            for (u, &d) in kept.iter().enumerate() {
                m[d] = j[u];
            }
            m
        };
        let mut objects = Vec::with_capacity(shape.vertex_count());
        let mut edges: HashMap<(usize, usize), Mat<Poly>> = HashMap::new();
        for v in 0..shape.vertex_count() {
            let j = shape.coords(v);
            let f = &frames[&full(&j)];
            objects.push(self.object(f));
            for (u, &d) in kept.iter().enumerate() {
                if j[u] == 2 {
                    continue;
                }
                let mut jt = j.clone();
                jt[u] += 1;
                let g = &frames[&full(&jt)];
                let amb = self.ambient_map(f, g, |x| {
                    let mut y = x.to_vec();
                    y[d] += 1;
                    Some((y, self.edge(d, x, others.len())))
                })?;
                edges.insert((u, v), self.frame_map(f, g, &amb, d + 1)?);
            }
        }
        Ok(Grid::from_fn(&lengths, |j| objects[shape.index(j)].clone(), |u, j, _, _| edges[&(u, shape.index(j))].clone()))
    }
}

/// 0-based directions of a strictly increasing 1-based index list.
pub(crate) fn zero_based(i: &[usize], n: usize) -> Result<Vec<usize>, TransError> {
    if i.iter().any(|&d| d == 0 || d > n) || i.windows(2).any(|w| w[0] >= w[1]) {
        return Err(TransError::Index(format!("{i:?} is not strictly increasing in 1..={n}")));
    }
    Ok(i.iter().map(|d| d - 1).collect())
}

/// Inverse over the polynomial ring: rational inverse for constants,
/// otherwise Faddeev–LeVerrier, which needs a nonzero constant determinant.
pub fn poly_inverse(m: &Mat<Poly>) -> Option<Mat<Poly>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    if let Some(c) = m.constant_part() {
        return inverse_q(&c).map(|x| x.to_poly());
    }
    let id: Mat<Poly> = Mat::identity(n);
    let mut adj = id.clone();
    let mut coeff = Poly::one();
    for k in 1..=n {
        let am = m.dot(&adj);
        let trace = (0..n).fold(Poly::zero(), |acc, r| acc.plus(am.get(r, r)));
        coeff = trace.times(&Poly::constant(-q(1) / q(k as i64)));
        if k < n {
            adj = am.add(&id.scale(&coeff)).ok()?;
        }
    }
    // `coeff` is now the constant coefficient of the characteristic polynomial.
    if !coeff.is_constant() || coeff.is_zero() {
        return None;
    }
    let inv = adj.scale(&Poly::constant(-q(1) / coeff.constant_term()));
    inv.dot(m).is_identity().then_some(inv)
}

/// Section `s` of `f1` with `f1 · s = I`, and whether it is natural:
/// `s = E_C (f1 E_C)^{-1}` with `E_C` the coordinates complementary to the
/// echelon pivots of `im f0` at the origin. That choice commutes with
/// setting any variable to 0, which is what the faces `δ⁰` need.
pub fn section(f0: &Mat<Poly>, f1: &Mat<Poly>) -> Option<(Mat<Poly>, bool)> {
    let (r2, r1) = f1.dims();
    if r2 == 0 {
        return Some((Mat::zeros(r1, 0), true));
    }
    let through = |cols: &[usize]| -> Option<Mat<Poly>> {
        let pick: Mat<Poly> = Mat::identity(r1).select_cols(cols);
        let inv = poly_inverse(&f1.dot(&pick))?;
        Some(pick.dot(&inv))
    };
    let pivots = rref(&f0.eval_point(&[]).transpose()).pivots;
    let cols: Vec<usize> = (0..r1).filter(|x| !pivots.contains(x)).collect();
    if cols.len() == r2 {
        if let Some(s) = through(&cols) {
            return Some((s, true));
        }
    }
    let mut subsets = combinations(r1, r2);
    if let Some(s) = subsets.find_map(|cols| through(&cols)) {
        return Some((s, false));
    }
    crate::exactalg::polyalg::solve_poly(f1, &Mat::identity(r2)).map(|s| (s, false))
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// `tr_1` of a short exact sequence with its ambient data.
#[derive(Clone, Debug)]
pub struct Tr1 {
    pub object: Obj,
    /// Columns span `tr_1(E)` inside `E¹ ⊕ E²`; indexed by the basis of `E¹`.
    pub basis: Mat<Poly>,
    pub left: Mat<Poly>,
    pub ambient: [Obj; 2],
    /// Variables of the input, now shifted up by one.
    pub vars: usize,
}

/// `tr_1(E)` for a short exact sequence over `ℚ[t_1, ..., t_p]`, in
/// `ℚ[t, t_1, ..., t_p]`.
pub fn tr1(seq: &Grid<Poly>) -> Result<Tr1, TransError> {
    if seq.dims() != 1 {
        return Err(TransError::Index("tr_1 takes a 1-cube".into()));
    }
    let t = Transgressions::over(seq.clone())?;
    let frame = t.frame(&[0], &[1])?;
    Ok(Tr1 {
        object: t.object(&frame),
        basis: frame.basis,
        left: frame.left,
        ambient: [seq.vertex(&[1]).clone(), seq.vertex(&[2]).clone()],
        vars: t.base_vars() + 1,
    })
}

/// `tr_m^i(E)` as a cube on `□^m`.
pub fn tr_m_i(e: &Grid<Q>, i: &[usize]) -> Result<super::BoxElement<Grid<Poly>>, TransError> {
    let t = Transgressions::new(e);
    let cube = t.tr_cube(i)?;
    Ok(super::BoxElement::new(e.dims() - i.len(), cube))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lex_order() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(combinations(2, 0).count(), 1);
    }

    #[test]
    fn leverrier_inverts_unimodular_matrices() {
        let t = Poly::var(1);
        let one = Poly::one();
        let m = Mat::from_rows(vec![vec![one.clone(), t.clone()], vec![Poly::zero(), one.clone()]]).unwrap();
        let inv = poly_inverse(&m).unwrap();
        assert!(inv.dot(&m).is_identity());
        let singular = Mat::from_rows(vec![vec![t.clone(), Poly::zero()], vec![Poly::zero(), one]]).unwrap();
        assert!(poly_inverse(&singular).is_none());
    }
}
