//! Cocubical structure on cubes over `ℚ[t_1, ..., t_m]`: faces `δ_r^j`
//! set `t_r := j`, degeneracies `σ_r` insert an unused variable at `r`.

use super::subobject::{apply_evaluate, apply_insert, evaluate_grid, insert_var_grid, obj_depends_on};
use super::TransError;
use crate::cubes::Grid;
use crate::exactalg::{Mat, Poly};
use crate::splitcubes::{DirectSumCube, SplitCube};

pub fn grid_face(g: &Grid<Poly>, r: usize, j: usize) -> Result<Grid<Poly>, TransError> {
    check_level(j)?;
    Ok(evaluate_grid(g, r, j == 1)?.0)
}

pub fn grid_degeneracy(g: &Grid<Poly>, r: usize) -> Result<Grid<Poly>, TransError> {
    Ok(insert_var_grid(g, r)?.0)
}

fn check_level(j: usize) -> Result<(), TransError> {
    if j > 1 {
        return Err(TransError::Level(j));
    }
    Ok(())
}

/// Moves a splitting along vertex isos: the new `Sp` is rebuilt from the
/// transformed corners, and each corner block is carried by its own iso.
fn transport_splitting(
    old: &SplitCube<Poly>,
    cube: Grid<Poly>,
    isos: &[Mat<Poly>],
    entry: impl Fn(&Mat<Poly>) -> Mat<Poly>,
) -> SplitCube<Poly> {
    let n = cube.dims();
    let old_sp = DirectSumCube::<Poly>::new(n, |c| old.cube.vertex(c).clone());
    let new_sp = DirectSumCube::<Poly>::new(n, |c| cube.vertex(c).clone());
    let splitting = (0..cube.vertex_count())
        .map(|v| {
            let j = cube.coords(v);
            let f = entry(&old.splitting[v]);
            let mut out = Mat::zeros(cube.vertex_at(v).rank(), new_sp.cube.vertex_at(v).rank());
            for (corner, new_cols) in &new_sp.layout(&j).blocks {
                let old_cols = old_sp.layout(&j).block(corner).expect("same corners");
                let iso_c = &isos[cube.index(corner)];
                let piece = isos[v].dot(&f.select_cols(old_cols)).dot(&iso_c.transpose());
                for (k, &c) in new_cols.iter().enumerate() {
                    for r in 0..piece.rows() {
                        out.set(r, c, piece.get(r, k).clone());
                    }
                }
            }
            out
        })
        .collect();
    SplitCube::new_unchecked(cube, splitting)
}

/// `δ_r^j` on a split cube.
pub fn split_face(s: &SplitCube<Poly>, r: usize, j: usize) -> Result<SplitCube<Poly>, TransError> {
    check_level(j)?;
    let (cube, isos) = evaluate_grid(&s.cube, r, j == 1)?;
    Ok(transport_splitting(s, cube, &isos, |m| apply_evaluate(m, r, j == 1)))
}

/// `σ_r` on a split cube.
pub fn split_degeneracy(s: &SplitCube<Poly>, r: usize) -> Result<SplitCube<Poly>, TransError> {
    let (cube, isos) = insert_var_grid(&s.cube, r)?;
    Ok(transport_splitting(s, cube, &isos, |m| apply_insert(m, r)))
}

/// Some `r ≤ box_degree` such that nothing involves `t_r`: the cube is in
/// the image of `σ_r`.
pub fn box_degenerate(g: &Grid<Poly>, splitting: Option<&[Mat<Poly>]>, box_degree: usize) -> Option<usize> {
    (1..=box_degree).find(|&r| {
        let mats_free = |m: &Mat<Poly>| m.entries().iter().all(|p| p.independent_of(r));
        g.vertices().iter().all(|o| !obj_depends_on(o, r))
            && (0..g.dims()).all(|d| (0..g.vertex_count()).all(|v| g.edge_at(d, v).is_none_or(mats_free)))
            && splitting.is_none_or(|fs| fs.iter().all(mats_free))
    })
}
