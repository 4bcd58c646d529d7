use super::chain::{ChainElement, CubeChain};
use super::grid::Grid;
use super::CubeError;
use crate::exactalg::{ExactRing, Mat, Ring};
use crate::objects::{tensor_normal_map, Obj};

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `d = Σ_i Σ_{j ≤ l_i} (-1)^{i+j} ∂_i^j`.
pub fn differential<R: Ring>(x: &CubeChain<R>) -> CubeChain<R> {
    x.map_linear(grid_differential)
}

pub fn grid_differential<R: Ring>(g: &Grid<R>) -> CubeChain<R> {
    let mut out = ChainElement::zero();
    for i in 1..=g.dims() {
        for j in 0..=g.lengths()[i - 1] {
            out.add_term(sign(i + j), g.face(i, j));
        }
    }
    out
}

/// Applies `∂_i^j` to every term.
pub fn face_chain<R: Ring>(x: &CubeChain<R>, i: usize, j: usize) -> CubeChain<R> {
    x.map_linear(|g| ChainElement::single(1, g.face(i, j)))
}

pub fn degeneracy_chain<R: Ring>(x: &CubeChain<R>, i: usize, j: usize) -> CubeChain<R> {
    x.map_linear(|g| ChainElement::single(1, g.degeneracy(i, j)))
}

/// A witness `(i, j)` with `E = s_i^j(∂_i^j E)`. Zero grids report `(1, 0)`.
pub fn is_degenerate<R: Ring>(e: &Grid<R>) -> Option<(usize, usize)> {
    if e.is_zero() {
        return Some((1, 0));
    }
    if !e.is_cube() {
        return None;
    }
    for i in 1..=e.dims() {
        for j in 0..=1 {
            if e.face(i, j).degeneracy(i, j) == *e {
                return Some((i, j));
            }
        }
    }
    None
}

/// Representative in the quotient by degenerate cubes: degenerate
/// generators dropped.
pub fn reduce<R: Ring>(x: &CubeChain<R>) -> CubeChain<R> {
    x.filter(|g| is_degenerate(g).is_none())
}

/// Projection onto `∩ ker ∂_i^0 ∩ ∩ ker ∂_i^2`:
/// `Π_i (1 - s_i^1 ∂_i^2) ∘ Π_i (1 - s_i^0 ∂_i^0)`. Zero grids count as
/// degenerate and are dropped.
pub fn normalized_project<R: Ring>(x: &CubeChain<R>) -> CubeChain<R> {
    let n = x.terms().map(|(_, g)| g.dims()).max().unwrap_or(0);
    let mut y = x.clone();
    for (face_level, degen_level) in [(0, 0), (2, 1)] {
        for i in 1..=n {
            let correction = y.map_linear(|g| {
                if g.dims() < i {
                    return ChainElement::zero();
                }
                ChainElement::single(1, g.face(i, face_level).degeneracy(i, degen_level))
            });
            y = y.minus(&correction);
        }
    }
    y.filter(|g| !g.is_zero())
}

/// Cube with `∂_i^j = E_j` from a sequence `E_0 -> E_1 -> E_2` of cubes
/// given with its vertex-wise maps.
pub fn cube_from_sequence<R: ExactRing>(
    layers: &[Grid<R>; 3],
    maps: &[Vec<Mat<R>>; 2],
    i: usize,
) -> Result<Grid<R>, CubeError> {
    let g = Grid::stack(layers, maps, i)?;
    g.check_complex()?;
    g.check_exact()?;
    Ok(g)
}

/// Collapses directions 1 and 2 into one with `d¹ + (-1)^r d²`;
/// remaining directions are carried along blockwise.
pub fn simple_complex<R: Ring>(b: &Grid<R>) -> Grid<R> {
    assert!(b.dims() >= 2, "simple complex needs two directions");
    let (l1, l2) = (b.lengths()[0], b.lengths()[1]);
    let rest_lengths: Vec<usize> = b.lengths()[2..].to_vec();
    let mut lengths = vec![l1 + l2];
    lengths.extend(&rest_lengths);
    let parts_of = |n: usize| -> Vec<(usize, usize)> { (0..=l1).filter(|&r| n >= r && n - r <= l2).map(|r| (r, n - r)).collect() };
    let full = |r: usize, s: usize, rest: &[usize]| {
        let mut m = vec![r, s];
        m.extend_from_slice(rest);
        m
    };
    let assemble = |n: usize, rest: &[usize]| {
        let parts = parts_of(n);
        let objs: Vec<Obj> = parts.iter().map(|&(r, s)| b.vertex(&full(r, s, rest)).clone()).collect();
        let (sum, maps) = Obj::direct_sum(&objs);
        (parts, sum, maps)
    };
    Grid::from_fn(
        &lengths,
        |m| assemble(m[0], &m[1..]).1,
        |d, m, src, tgt| {
            let mut out = Mat::zeros(tgt.rank(), src.rank());
            let (parts, _, src_maps) = assemble(m[0], &m[1..]);
            if d == 0 {
                let (tparts, _, tgt_maps) = assemble(m[0] + 1, &m[1..]);
                for (p, &(r, s)) in parts.iter().enumerate() {
                    let here = full(r, s, &m[1..]);
                    let mut push = |dir: usize, r2: usize, s2: usize, sgn: i64| {
                        let Some(t) = tparts.iter().position(|&x| x == (r2, s2)) else { return };
                        let e = b.edge(dir, &here).expect("interior edge");
                        scatter(&mut out, e, &tgt_maps[t], &src_maps[p], sgn);
                    };
                    if r < l1 {
                        push(0, r + 1, s, 1);
                    }
                    if s < l2 {
                        push(1, r, s + 1, sign(r));
                    }
                }
            } else {
                let mut next = m[1..].to_vec();
                next[d - 1] += 1;
                let (_, _, tgt_maps) = assemble(m[0], &next);
                for (p, &(r, s)) in parts.iter().enumerate() {
                    let e = b.edge(d + 1, &full(r, s, &m[1..])).expect("interior edge");
                    scatter(&mut out, e, &tgt_maps[p], &src_maps[p], 1);
                }
            }
            out
        },
    )
}

/// Adds `sgn * e` into `out` with rows and columns relabelled.
pub fn scatter<R: Ring>(out: &mut Mat<R>, e: &Mat<R>, rows: &[usize], cols: &[usize], sgn: i64) {
    for (r, &rr) in rows.iter().enumerate() {
        for (c, &cc) in cols.iter().enumerate() {
            let v = e.get(r, c);
            if !v.is_zero() {
                out.add_at(rr, cc, &v.scale_int(sgn));
            }
        }
    }
}

/// `(A ⊗ B)^{n,m} = A^n ⊗ B^m` with `(d_A ⊗ 1, 1 ⊗ d_B)`.
pub fn tensor_complex<R: Ring>(a: &Grid<R>, b: &Grid<R>) -> Grid<R> {
    assert!(a.dims() == 1 && b.dims() == 1, "tensor of one-direction complexes");
    let lengths = [a.lengths()[0], b.lengths()[0]];
    Grid::from_fn(
        &lengths,
        |m| Obj::tensor(&[a.vertex(&[m[0]]).clone(), b.vertex(&[m[1]]).clone()]).0,
        |d, m, _, _| {
            let (x, y) = (a.vertex(&[m[0]]).clone(), b.vertex(&[m[1]]).clone());
            if d == 0 {
                let x2 = a.vertex(&[m[0] + 1]).clone();
                let f = a.edge(0, &[m[0]]).expect("edge").clone();
                tensor_normal_map(&[x, y.clone()], &[x2, y.clone()], &[f, Mat::identity(y.rank())]).2
            } else {
                let y2 = b.vertex(&[m[1] + 1]).clone();
                let f = b.edge(0, &[m[1]]).expect("edge").clone();
                tensor_normal_map(&[x.clone(), y], &[x.clone(), y2], &[Mat::identity(x.rank()), f]).2
            }
        },
    )
}

/// Vertex-wise direct sum of grids of one shape; `blocks[p][v]` places the
/// basis of part `p` at vertex `v` inside the sum.
pub fn grid_direct_sum<R: Ring>(parts: &[Grid<R>]) -> (Grid<R>, Vec<Vec<Vec<usize>>>) {
    let lengths = parts[0].lengths().to_vec();
    assert!(parts.iter().all(|g| g.lengths() == lengths.as_slice()), "direct sum of grids of one shape");
    let count = parts[0].vertex_count();
    let sums: Vec<(Obj, Vec<Vec<usize>>)> =
        (0..count).map(|v| Obj::direct_sum(&parts.iter().map(|g| g.vertex_at(v).clone()).collect::<Vec<_>>())).collect();
    let grid = Grid::from_fn(
        &lengths,
        |m| sums[parts[0].index(m)].0.clone(),
        |d, m, src, tgt| {
            let v = parts[0].index(m);
            let w = v + parts[0].stride(d);
            let mut out = Mat::zeros(tgt.rank(), src.rank());
            for (p, g) in parts.iter().enumerate() {
                scatter(&mut out, g.edge_at(d, v).expect("interior edge"), &sums[w].1[p], &sums[v].1[p], 1);
            }
            out
        },
    );
    let blocks = (0..parts.len()).map(|p| sums.iter().map(|(_, maps)| maps[p].clone()).collect()).collect();
    (grid, blocks)
}
