//! The split cubes `T^i(E)` on `□^m` and the morphism
//! `T = Σ_m Σ_{i ∈ J_n^m} (-1)^{|i| + σ(n-m) + m} T^i`.

use std::collections::HashMap;

use super::lambda::lambda;
use super::tr::{zero_based, Transgressions};
use super::{BoxChain, BoxElement, TransError};
use crate::cubes::{CubeChain, Grid};
use crate::exactalg::{Mat, Poly, Q};
use crate::multiindex::j_set;
use crate::splitcubes::{DirectSumCube, SplitCube};

/// `(-1)^{|i| + σ(n-m) + m}` with `|i|` the sum of the 1-based entries and
/// `σ(k) = k(k+1)/2`.
pub fn t_sign(n: usize, m: usize, i: &[usize]) -> i64 {
    let k = n - m;
    let e = i.iter().sum::<usize>() + k * (k + 1) / 2 + m;
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `T^i(E)`: vertex `j` is `tr_{D ∪ U}(E)` at `∂_U(j)` with the variables of
/// `U = {i_u : j_u = 1}` set to 1, where `D` is the complement of `i`.
/// Corners are plain `tr_m^i(E)`; the splitting comes from the paths of
/// `f⁰`-edges from corner blocks into each vertex.
pub fn t_component(t: &Transgressions, i: &[usize]) -> Result<SplitCube<Poly>, TransError> {
    let n = t.dims();
    let kept = zero_based(i, n)?;
    let others: Vec<usize> = (0..n).filter(|d| !kept.contains(d)).collect();
    let m = others.len();
    let lengths = vec![2; kept.len()];
    let shape: Grid<Poly> = Grid::zero(&lengths);
    let full = |j: &[usize]| {
        let mut x = vec![1; n];
        for (u, &d) in kept.iter().enumerate() {
            x[d] = j[u];
        }
        x
    };

    let mut vertices = Vec::with_capacity(shape.vertex_count());
    for v in 0..shape.vertex_count() {
        let j = shape.coords(v);
        let mut dirs: Vec<usize> = others.clone();
        dirs.extend(kept.iter().enumerate().filter(|&(u, _)| j[u] == 1).map(|(_, &d)| d));
        dirs.sort_unstable();
        let ones: Vec<usize> =
            dirs.iter().enumerate().filter(|(_, d)| !others.contains(d)).map(|(p, _)| p + 1).collect();
        let frame = t.frame(&dirs, &full(&j))?.at_one(&ones);
        vertices.push(frame);
    }
    let objects: Vec<_> = vertices.iter().map(|f| t.object(f)).collect();

    let mut edges: HashMap<(usize, usize), Mat<Poly>> = HashMap::new();
    for v in 0..shape.vertex_count() {
        let j = shape.coords(v);
        for (u, &d) in kept.iter().enumerate() {
            if j[u] == 2 {
                continue;
            }
            let w = v + shape.stride(u);
            let (src, tgt) = (&vertices[v], &vertices[w]);
            let amb = if j[u] == 0 {
                t.ambient_map(src, tgt, |x| {
                    let mut y = x.to_vec();
                    y[d] = 1;
                    Some((y, t.path(x, &key(x, d, 1), m)))
                })?
            } else {
                t.ambient_map(src, tgt, |x| (x[d] == 2).then(|| (x.to_vec(), Mat::identity(t.cube().vertex(x).rank()))))?
            };
            edges.insert((u, v), t.frame_map(src, tgt, &amb, d + 1)?);
        }
    }
    let cube = Grid::from_fn(&lengths, |j| objects[shape.index(j)].clone(), |u, j, _, _| edges[&(u, shape.index(j))].clone());

    let sp = DirectSumCube::<Poly>::new(kept.len(), |c| objects[shape.index(c)].clone());
    let mut splitting = Vec::with_capacity(shape.vertex_count());
    for v in 0..shape.vertex_count() {
        let j = shape.coords(v);
        let target = &vertices[v];
        let mut f = Mat::zeros(objects[v].rank(), sp.cube.vertex_at(v).rank());
        for (corner, cols) in &sp.layout(&j).blocks {
            let source = &vertices[shape.index(corner)];
            let amb = t.ambient_map(source, target, |x| {
                let mut y = x.to_vec();
                for (u, &d) in kept.iter().enumerate() {
                    if j[u] == 1 {
                        y[d] = if corner[u] == 0 { 1 } else { 2 };
                    }
                }
                Some((y.clone(), t.path(x, &y, m)))
            })?;
            let block = t.frame_map(source, target, &amb, 0)?;
            for (k, &c) in cols.iter().enumerate() {
                for r in 0..block.rows() {
                    f.set(r, c, block.get(r, k).clone());
                }
            }
        }
        splitting.push(f);
    }
    Ok(SplitCube::new_unchecked(cube, splitting))
}

fn key(x: &[usize], d: usize, value: usize) -> Vec<usize> {
    let mut y = x.to_vec();
    y[d] = value;
    y
}

/// `T(E)` for a cube with canonical kernels; zero components dropped.
pub fn t_of_cube(e: &Grid<Q>) -> Result<BoxChain<SplitCube<Poly>>, TransError> {
    let n = e.dims();
    let t = Transgressions::new(e);
    let mut out = BoxChain::zero();
    for m in 0..=n {
        for i in j_set(n, m).map_err(|err| TransError::Index(err.to_string()))? {
            let s = t_component(&t, i.entries())?;
            if !s.cube.is_zero() {
                out.add_term(t_sign(n, m, i.entries()), BoxElement::new(m, s));
            }
        }
    }
    Ok(out)
}

/// `T` extended linearly; inputs should have canonical kernels.
pub fn t_morphism(x: &CubeChain<Q>) -> Result<BoxChain<SplitCube<Poly>>, TransError> {
    let mut out = BoxChain::zero();
    for (c, g) in x.terms() {
        out.add_scaled(c, &t_of_cube(g)?);
    }
    Ok(out)
}

/// `T ∘ λ`.
pub fn transgression_morphism(x: &CubeChain<Q>) -> Result<BoxChain<SplitCube<Poly>>, TransError> {
    t_morphism(&lambda(x))
}
