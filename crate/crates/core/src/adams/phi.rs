//! `φ: ℤG^k -> ℤC^{arb}` and `μ: ℤC^{arb} -> ℤC`.

use super::gk::{psi_split, GkChain, GkPart};
use super::AdamsError;
use crate::cubes::{grid_direct_sum, reduce, CubeChain, Grid};
use crate::exactalg::{ExactRing, Mat, Ring};
use crate::objects::{kernel_object, Obj};
use crate::splitcubes::{SplitChain, SplitCube};

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn add<R: Ring>(x: &mut CubeChain<R>, c: i64, g: Grid<R>) {
    if c != 0 && !g.is_zero() {
        x.add_term(c, g);
    }
}

/// Secondary Euler characteristic `Σ_p (-1)^{k-p+1} (k-p) A^p` of a length-`k` sequence.
pub fn varphi1<R: Ring>(a: &Grid<R>) -> CubeChain<R> {
    let k = a.lengths()[0] as i64;
    let mut out = CubeChain::zero();
    for p in 0..=k {
        add(&mut out, sign(k - p + 1) * (k - p), a.face(1, p as usize));
    }
    out
}

/// `φ_2(B)` for a bicomplex of lengths `(k - i, i)`: row and column Euler
/// characteristics plus the short exact correction cubes
/// `B^{s-j,j} -> ⊕_{j' ≥ j} B^{s-j',j'} -> ⊕_{j' > j} B^{s-j',j'}`.
pub fn varphi2<R: Ring>(b: &Grid<R>) -> CubeChain<R> {
    let (l1, l2) = (b.lengths()[0], b.lengths()[1]);
    let (k, i) = ((l1 + l2) as i64, l2 as i64);
    let mut out = CubeChain::zero();
    for j in 0..=(l1.max(l2) as i64) {
        let c = sign(k - j + 1);
        add(&mut out, c * (k - i - j), b.face(2, j as usize));
        add(&mut out, c * (i - j), b.face(1, j as usize));
    }
    let entry = |r: i64, s: i64| -> Grid<R> {
        let face = b.face(1, r as usize);
        face.face(1, s as usize)
    };
    for s in 1..k {
        let coeff = sign(k - s) * (k - s);
        for j in 0..=s {
            let parts: Vec<Grid<R>> = (j..=s).map(|jp| entry(s - jp, jp)).collect();
            let first = parts[0].clone();
            let (middle, blocks) = grid_direct_sum(&parts);
            let (tail, tail_blocks) = if parts.len() > 1 {
                grid_direct_sum(&parts[1..])
            } else {
                (Grid::zero(first.lengths()), Vec::new())
            };
            let count = middle.vertex_count();
            let inclusion: Vec<Mat<R>> =
                (0..count).map(|v| placement(&blocks[0][v], middle.vertex_at(v).rank(), first.vertex_at(v).rank())).collect();
            let projection: Vec<Mat<R>> = (0..count)
                .map(|v| {
                    let mut m = Mat::zeros(tail.vertex_at(v).rank(), middle.vertex_at(v).rank());
                    for p in 1..parts.len() {
                        for (&r, &c) in tail_blocks[p - 1][v].iter().zip(&blocks[p][v]) {
                            m.set(r, c, R::one());
                        }
                    }
                    m
                })
                .collect();
            let cube = Grid::stack(&[first, middle, tail], &[inclusion, projection], 1).expect("layers of one shape");
            add(&mut out, coeff, cube);
        }
    }
    out
}

/// Inclusion of a block: basis `c` goes to row `rows[c]`.
fn placement<R: Ring>(rows: &[usize], total: usize, width: usize) -> Mat<R> {
    let mut m = Mat::zeros(total, width);
    for (c, &r) in rows.iter().enumerate() {
        m.set(r, c, R::one());
    }
    m
}

/// `φ(B_1, ..., B_{k-1}, A) = φ_1(A) + Σ_i (-1)^{i+1} φ_2(B_i)`.
pub fn varphi<R: Ring>(x: &GkChain<R>) -> CubeChain<R> {
    x.map_linear(|g| match g.part {
        GkPart::Long => varphi1(&g.grid),
        GkPart::Bicomplex(i) => varphi2(&g.grid).scale(sign(i as i64 + 1)),
    })
}

/// Kernels `K^j = ker f^j` of an exact sequence along direction 1, with
/// their inclusions into `A^j`. `K^0 = 0`, `K^1 = A^0` through `f^0` and
/// `K^r = A^r`.
fn kernels<R: ExactRing>(a: &Grid<R>, label: &str) -> Result<Vec<(Grid<R>, Vec<Mat<R>>)>, AdamsError> {
    let r = a.lengths()[0];
    let layers: Vec<Grid<R>> = (0..=r).map(|j| a.face(1, j)).collect();
    let shape = layers[0].clone();
    let count = shape.vertex_count();
    let mut out = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let layer = &layers[j];
        let (objs, incs): (Vec<Obj>, Vec<Mat<R>>) = if j == r {
            (layer.vertices().to_vec(), layer.vertices().iter().map(|o| Mat::identity(o.rank())).collect())
        } else if j == 0 {
            (vec![Obj::zero(); count], layer.vertices().iter().map(|o| Mat::zeros(o.rank(), 0)).collect())
        } else if j == 1 {
            let prev = &layers[0];
            let f: Vec<Mat<R>> = (0..count).map(|v| a.edge(0, &lift(&shape.coords(v), 0)).expect("edge").clone()).collect();
            (prev.vertices().to_vec(), f)
        } else {
            let mut objs = Vec::with_capacity(count);
            let mut incs = Vec::with_capacity(count);
            for v in 0..count {
                let at = lift(&shape.coords(v), j);
                let f = a.edge(0, &at).expect("edge");
                let (k, inc) = kernel_object(layer.vertex_at(v), layers[j + 1].vertex_at(v), f, label)?;
                objs.push(k);
                incs.push(inc);
            }
            (objs, incs)
        };
        let grid = Grid::from_fn(
            shape.lengths(),
            |m| objs[shape.index(m)].clone(),
            |d, m, src, tgt| {
                let v = shape.index(m);
                let w = v + shape.stride(d);
                if src.rank() == 0 || tgt.rank() == 0 {
                    return Mat::zeros(tgt.rank(), src.rank());
                }
                let e = layer.edge_at(d, v).expect("interior edge");
                R::solve(&incs[w], &e.dot(&incs[v])).expect("edges preserve kernels")
            },
        );
        out.push((grid, incs));
    }
    Ok(out)
}

fn lift(m: &[usize], level: usize) -> Vec<usize> {
    let mut full = Vec::with_capacity(m.len() + 1);
    full.push(level);
    full.extend_from_slice(m);
    full
}

/// `μ(A) = Σ_j (-1)^{j-1} μ^j(A)` with `μ^j(A) = (ker f^j -> A^j -> ker f^{j+1})`.
/// Grids without directions are returned unchanged.
pub fn mu_grid<R: ExactRing>(a: &Grid<R>) -> Result<CubeChain<R>, AdamsError> {
    let mut out = CubeChain::zero();
    if a.dims() == 0 {
        add(&mut out, 1, a.clone());
        return Ok(out);
    }
    let r = a.lengths()[0];
    let ks = kernels(a, "ker")?;
    for j in 0..r {
        let layer = a.face(1, j);
        let count = layer.vertex_count();
        let (kj, inc) = &ks[j];
        let (kn, inc_next) = &ks[j + 1];
        let to_next: Vec<Mat<R>> = (0..count)
            .map(|v| {
                let f = a.edge(0, &lift(&layer.coords(v), j)).expect("edge");
                R::solve(&inc_next[v], f).expect("image lies in the next kernel")
            })
            .collect();
        let cube = Grid::stack(&[kj.clone(), layer, kn.clone()], &[inc.clone(), to_next], 1)?;
        add(&mut out, sign(j as i64 - 1), cube);
    }
    Ok(out)
}

pub fn mu<R: ExactRing>(x: &CubeChain<R>) -> Result<CubeChain<R>, AdamsError> {
    let mut out = CubeChain::zero();
    for (c, g) in x.terms() {
        out.add_scaled(c, &mu_grid(g)?);
    }
    Ok(out)
}

/// `ψ^k(S) = μ(φ(Ψ^k(S)))` reduced modulo degenerate cubes.
pub fn adams_split<R: ExactRing>(split: &SplitCube<R>, k: usize) -> Result<CubeChain<R>, AdamsError> {
    if k == 0 {
        return Err(AdamsError::ZeroK);
    }
    Ok(reduce(&mu(&varphi(&psi_split(split, k)))?))
}

pub fn adams_split_chain<R: ExactRing>(x: &SplitChain<R>, k: usize) -> Result<CubeChain<R>, AdamsError> {
    let mut out = CubeChain::zero();
    for (c, s) in x.terms() {
        out.add_scaled(c, &adams_split(s, k)?);
    }
    Ok(out)
}
