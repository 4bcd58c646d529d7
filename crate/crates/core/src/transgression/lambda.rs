//! `λ`: replaces a cube by a combination of cubes whose `f_i⁰` edges are
//! inclusions of subsets, through the images `im f_i⁰`.

use super::subobject::image_object;
use crate::cubes::{CubeChain, Grid};
use crate::exactalg::{rref, Mat, Q};
use crate::objects::Obj;

/// `im f_i⁰` as a grid over the face `∂_i^0`, with the inclusions into
/// `∂_i^1 X` and their left inverses (pivot-row selections).
fn image_layer(x: &Grid<Q>, i: usize) -> (Grid<Q>, Vec<Mat<Q>>, Vec<Mat<Q>>) {
    let d = i - 1;
    let middle = x.face(i, 1);
    let count = middle.vertex_count();
    let lift = |m: &[usize]| {
        let mut full = m.to_vec();
        full.insert(d, 0);
        full
    };
    let mut objs: Vec<Obj> = Vec::with_capacity(count);
    let mut incs = Vec::with_capacity(count);
    let mut lefts = Vec::with_capacity(count);
    for v in 0..count {
        let f0 = x.edge(d, &lift(&middle.coords(v))).expect("edge");
        let (obj, basis) = image_object(middle.vertex_at(v), f0, "im");
        let pivots = rref(&f0.transpose()).pivots;
        lefts.push(Mat::identity(f0.rows()).select_rows(&pivots));
        objs.push(obj);
        incs.push(basis);
    }
    let layer = Grid::from_fn(
        middle.lengths(),
        |m| objs[middle.index(m)].clone(),
        |e, m, _, _| {
            let v = middle.index(m);
            let w = v + middle.stride(e);
            lefts[w].dot(middle.edge_at(e, v).expect("edge")).dot(&incs[v])
        },
    );
    (layer, incs, lefts)
}

/// `(λ_i⁰ X, λ_i¹ X)`: `0 -> ∂_i⁰X -> im f_i⁰` and
/// `im f_i⁰ -> ∂_i¹X -> ∂_i²X` in direction `i` (1-based).
pub fn lambda_parts(x: &Grid<Q>, i: usize) -> (Grid<Q>, Grid<Q>) {
    let d = i - 1;
    let (image, incs, lefts) = image_layer(x, i);
    let (low, middle, high) = (x.face(i, 0), x.face(i, 1), x.face(i, 2));
    let count = middle.vertex_count();
    let lift = |v: usize, level: usize| {
        let mut full = middle.coords(v);
        full.insert(d, level);
        full
    };
    let zero = Grid::zero(middle.lengths());
    let into_zero: Vec<Mat<Q>> = (0..count).map(|v| Mat::zeros(low.vertex_at(v).rank(), 0)).collect();
    let onto: Vec<Mat<Q>> = (0..count).map(|v| lefts[v].dot(x.edge(d, &lift(v, 0)).expect("edge"))).collect();
    let f1: Vec<Mat<Q>> = (0..count).map(|v| x.edge(d, &lift(v, 1)).expect("edge").clone()).collect();
    let first = Grid::stack(&[zero, low, image.clone()], &[into_zero, onto], i).expect("layers share a shape");
    let second = Grid::stack(&[image, middle, high], &[incs, f1], i).expect("layers share a shape");
    (first, second)
}

/// `λ = λ_n ∘ ... ∘ λ_1` with `λ_i = -λ_i⁰ + λ_i¹`; cubes of dimension
/// below `i` pass through `λ_i` unchanged.
pub fn lambda(x: &CubeChain<Q>) -> CubeChain<Q> {
    let n = x.terms().map(|(_, g)| g.dims()).max().unwrap_or(0);
    let mut y = x.clone();
    for i in 1..=n {
        y = y.map_linear(|g| {
            let mut out = CubeChain::zero();
            if g.dims() < i {
                out.add_term(1, g.clone());
                return out;
            }
            let (first, second) = lambda_parts(g, i);
            for (c, h) in [(-1, first), (1, second)] {
                if !h.is_zero() {
                    out.add_term(c, h);
                }
            }
            out
        });
    }
    y
}

pub fn lambda_grid(g: &Grid<Q>) -> CubeChain<Q> {
    lambda(&CubeChain::single(1, g.clone()))
}
