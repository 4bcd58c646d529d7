//! Random split cubes whose `f_i⁰` edges are coordinate inclusions.

use std::collections::HashMap;

use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::cubes::Grid;
use crate::exactalg::{inverse_q, Mat, Q};
use crate::multiindex::corners;
use crate::objects::{Atom, Obj};
use crate::splitcubes::{random_invertible, DirectSumCube, SplitCube};

fn digits(j: &[usize]) -> String {
    j.iter().map(|c| c.to_string()).collect()
}

/// `w` with the positions where `w` is 1 and `m` is 0 set to 0.
fn reduced(w: &[usize], m: &[usize]) -> Vec<usize> {
    w.iter().zip(m).map(|(&a, &b)| if a == 1 && b == 0 { 0 } else { a }).collect()
}

/// A split cube `φ: Sp(E) -> E` with `φ_w` block upper triangular for the
/// componentwise order of corners, whose blocks in a column `m` depend
/// only on `w` with the directions where `m` sits at 0 collapsed. Then `φ`
/// commutes with the `f⁰`-inclusions of `Sp(E)`, so the `f⁰` edges of `E`
/// are coordinate inclusions.
pub fn canonical_kernel_cube(rng: &mut ChaCha8Rng, n: usize, max_rank: usize, label: &str) -> SplitCube<Q> {
    let mut corner_objs: HashMap<Vec<usize>, Obj> = HashMap::new();
    for c in corners(n) {
        let rank = rng.gen_range(0..=max_rank);
        let name = format!("{label}{}", digits(c.entries()));
        corner_objs.insert(c.into_vec(), if rank == 0 { Obj::zero() } else { Obj::atom(&Atom::named(&name, rank)) });
    }
    let sp = DirectSumCube::<Q>::new(n, |c| corner_objs[c].clone());
    let mut diagonal: HashMap<(Vec<usize>, Vec<usize>), Mat<Q>> = HashMap::new();
    let mut off: HashMap<(Vec<usize>, Vec<usize>, Vec<usize>), Mat<Q>> = HashMap::new();
    let mut objects = Vec::with_capacity(sp.cube.vertex_count());
    let mut phi = Vec::with_capacity(sp.cube.vertex_count());
    for v in 0..sp.cube.vertex_count() {
        let w = sp.cube.coords(v);
        let o = sp.cube.vertex_at(v);
        let mut f = Mat::<Q>::zeros(o.rank(), o.rank());
        let layout = sp.layout(&w);
        for (m, cols) in &layout.blocks {
            let r = reduced(&w, m);
            let diag = if r.contains(&1) {
                diagonal.entry((r.clone(), m.clone())).or_insert_with(|| random_invertible(rng, cols.len())).clone()
            } else {
                Mat::identity(cols.len())
            };
            set_block(&mut f, cols, cols, &diag);
            for (mp, rows) in &layout.blocks {
                if mp == m || mp.iter().zip(m).any(|(a, b)| a > b) {
                    continue;
                }
                let block = off
                    .entry((r.clone(), mp.clone(), m.clone()))
                    .or_insert_with(|| random_matrix(rng, rows.len(), cols.len()))
                    .clone();
                set_block(&mut f, rows, cols, &block);
            }
        }
        let interior = w.contains(&1) && o.rank() > 0;
        objects.push(if interior { Obj::atom(&Atom::named(&format!("{label}{}", digits(&w)), o.rank())) } else { o.clone() });
        phi.push(f);
    }
    let inverses: Vec<Mat<Q>> = phi.iter().map(|f| inverse_q(f).expect("block triangular with invertible diagonal")).collect();
    let cube = Grid::from_fn(
        sp.cube.lengths(),
        |j| objects[sp.cube.index(j)].clone(),
        |d, j, _, _| {
            let v = sp.cube.index(j);
            let w = v + sp.cube.stride(d);
            phi[w].dot(sp.cube.edge_at(d, v).expect("edge")).dot(&inverses[v])
        },
    );
    SplitCube::new_unchecked(cube, phi)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat<Q> {
    let mut m = Mat::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, Q::from_integer(rng.gen_range(-2i64..=2).into()));
        }
    }
    m
}

fn set_block(f: &mut Mat<Q>, rows: &[usize], cols: &[usize], block: &Mat<Q>) {
    for (a, &r) in rows.iter().enumerate() {
        for (b, &c) in cols.iter().enumerate() {
            f.set(r, c, block.get(a, b).clone());
        }
    }
}
