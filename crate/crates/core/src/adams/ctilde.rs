//! The cubes `C_i(E)` and `C̃_i(E)` of a split cube, and Koszul complexes.

use std::cell::RefCell;
use std::collections::HashMap;

use super::slots::{build_grid, koszul_image, slot_image, Element, Slot, SlotWeight, StructVertex};
use crate::cubes::Grid;
use crate::exactalg::{ExactRing, Mat, Ring};
use crate::multiindex::{box_grid, lambda_set, MultiIndex};
use crate::objects::Obj;
use crate::splitcubes::{sp, DirectSumCube, SplitCube};

/// Summands of `C_i(E)` at the corner `2j`, `j ∈ {0,1}^n`, as slot weights
/// over corners of `E`.
pub fn c_corner_list(k: usize, i: &[usize], j: &[usize]) -> Vec<SlotWeight> {
    let nu: Vec<usize> = i.iter().map(|&x| usize::from(x > 0)).collect();
    if j.iter().zip(&nu).all(|(a, b)| a >= b) {
        let m: Vec<usize> = j.iter().zip(i).map(|(a, b)| a + b).collect();
        return lambda_set(k, &MultiIndex::new(m))
            .into_iter()
            .map(|t| {
                SlotWeight::new(
                    t.companions.iter().map(|c| c.entries().iter().map(|x| 2 * x).collect()).zip(t.parts.iter().copied()).collect(),
                )
            })
            .collect();
    }
    let reduced: Vec<usize> = i.iter().zip(j).map(|(&x, &y)| if x > 0 && y == 0 { x - 1 } else { x }).collect();
    let upper: Vec<usize> = j.iter().zip(&nu).map(|(a, b)| (*a).max(*b)).collect();
    let lower = j;
    box_grid(&upper)
        .into_iter()
        .filter(|m| m.entries().iter().zip(lower).all(|(a, b)| a >= b))
        .flat_map(|m| c_corner_list(k, &reduced, m.entries()))
        .collect()
}

/// Summands of `C̃_i(E)` at `j ∈ {0,1,2}^n`.
pub fn ctilde_summands(k: usize, i: &[usize], j: &[usize]) -> Vec<SlotWeight> {
    let n = j.len();
    let w: Vec<usize> = (0..n).filter(|&l| j[l] == 1 && i[l] + 1 == k).collect();
    let v: Vec<usize> = (0..n).filter(|&l| j[l] == 1 && i[l] + 1 != k).collect();
    let keep: Vec<usize> = (0..n).filter(|l| !w.contains(l)).collect();
    let i_red: Vec<usize> = keep.iter().map(|&l| i[l]).collect();
    let mut out = Vec::new();
    for m in box_grid(&vec![1; v.len()]) {
        let mut q = j.to_vec();
        for (&pos, &x) in v.iter().zip(m.entries()) {
            q[pos] = 2 * x;
        }
        let corner: Vec<usize> = keep.iter().map(|&l| q[l] / 2).collect();
        for sw in c_corner_list(k, &i_red, &corner) {
            out.push(SlotWeight::new(
                sw.0.into_iter()
                    .map(|(slot, weight)| {
                        let mut full = vec![1; n];
                        for (&l, &x) in keep.iter().zip(&slot) {
                            full[l] = x;
                        }
                        (full, weight)
                    })
                    .collect(),
            ));
        }
    }
    out
}

/// Maps between vertices of a split cube through its splitting:
/// `f_b ∘ (Sp(E)^a -> Sp(E)^b) ∘ f_a^{-1}`.
pub struct SlotMaps<'a, R: ExactRing> {
    split: &'a SplitCube<R>,
    spe: DirectSumCube<R>,
    cache: RefCell<HashMap<(Slot, Slot), Mat<R>>>,
}

impl<'a, R: ExactRing> SlotMaps<'a, R> {
    pub fn new(split: &'a SplitCube<R>) -> Self {
        SlotMaps { split, spe: sp(&split.cube), cache: RefCell::default() }
    }

    pub fn object(&self, slot: &Slot) -> Obj {
        self.split.cube.vertex(slot).clone()
    }

    pub fn map(&self, from: &Slot, to: &Slot) -> Mat<R> {
        let key = (from.clone(), to.clone());
        if let Some(m) = self.cache.borrow().get(&key) {
            return m.clone();
        }
        let inv = R::inverse(self.split.splitting_at(from)).expect("splitting is invertible");
        let m = self.split.splitting_at(to).dot(&self.spe.transfer(from, to)).dot(&inv);
        self.cache.borrow_mut().insert(key, m.clone());
        m
    }
}

/// Image of an element under the cube edge of `C̃_i` in direction `dir`
/// (0-based cube direction) leaving the cube vertex `j`.
pub(crate) fn cube_edge_image<R: ExactRing>(
    k: usize,
    i: &[usize],
    j: &[usize],
    dir: usize,
    maps: &SlotMaps<'_, R>,
    src: &StructVertex,
    tgt: &StructVertex,
    summand: usize,
    e: &Element,
) -> Vec<(usize, Element, R)> {
    let w = &src.summands[summand];
    if i[dir] + 1 != k {
        return match tgt.summand(w) {
            Some(t) => vec![(t, e.clone(), R::one())],
            None if j[dir] == 0 => panic!("inclusion target {w:?} missing"),
            None => Vec::new(),
        };
    }
    let level = j[dir] + 1;
    let tau = |u: &Slot| {
        let mut x = u.clone();
        x[dir] = level;
        x
    };
    let image = w.push(tau);
    let t = tgt.summand(&image).unwrap_or_else(|| panic!("slot image {image:?} missing from target"));
    let targets: Vec<usize> =
        w.0.iter().map(|(u, _)| image.0.iter().position(|(x, _)| *x == tau(u)).expect("pushed slot")).collect();
    let mats: Vec<Mat<R>> = w.0.iter().map(|(u, _)| maps.map(u, &tau(u))).collect();
    let refs: Vec<&Mat<R>> = mats.iter().collect();
    slot_image(e, &targets, image.0.len(), &refs).into_iter().map(|(x, c)| (t, x, c)).collect()
}

pub(crate) fn koszul_edge<R: Ring>(summand: usize, e: &Element, on: impl Fn(usize) -> bool) -> Vec<(usize, Element, R)> {
    koszul_image(e, on).into_iter().map(|(x, c)| (summand, x, R::from_i64(c))).collect()
}

/// `C̃_i(E)` as a grid of lengths `[k, 2, ..., 2]`: the Koszul direction
/// first, then the cube directions.
pub fn ctilde_cube<R: ExactRing>(split: &SplitCube<R>, i: &[usize], k: usize) -> Grid<R> {
    let maps = SlotMaps::new(split);
    ctilde_with(&maps, i, k)
}

pub(crate) fn ctilde_with<R: ExactRing>(maps: &SlotMaps<'_, R>, i: &[usize], k: usize) -> Grid<R> {
    let n = i.len();
    let mut lengths = vec![k];
    lengths.extend(std::iter::repeat(2).take(n));
    let object = |s: &Slot| maps.object(s);
    build_grid(
        &lengths,
        |m| StructVertex::new(ctilde_summands(k, i, &m[1..]), m[0], |_, _| true, &object).expect("vertex objects are atomic"),
        |d, m, src, tgt, s, e| {
            if d == 0 {
                koszul_edge(s, e, |_| true)
            } else {
                cube_edge_image(k, i, &m[1..], d - 1, maps, src, tgt, s, e)
            }
        },
    )
}

/// `C_i(E)`: `C̃_i` of the direct-sum cube on the corners of `E`.
pub fn c_cube<R: ExactRing>(e: &Grid<R>, i: &[usize], k: usize) -> Grid<R> {
    let trivial = SplitCube::trivial(&sp(e));
    ctilde_cube(&trivial, i, k)
}

/// Koszul complex `Ψ^k(E)` with `Ψ^k(E)^p = S^p E ⊗ Λ^{k-p} E`.
pub fn koszul<R: Ring>(e: &Obj, k: usize) -> Grid<R> {
    let slot: Slot = Vec::new();
    let object = |_: &Slot| e.clone();
    build_grid(
        &[k],
        |m| StructVertex::new(vec![SlotWeight::new(vec![(slot.clone(), k)])], m[0], |_, _| true, &object).expect("atomic object"),
        |_, _, _, _, s, x| koszul_edge(s, x, |_| true),
    )
}

/// `Ψ^k(E ⊕ F)` against `⊕_m Ψ^{k-m}(E) ⊗ Ψ^m(F)`: the two complexes and the
/// degreewise map given by multiplication.
pub fn koszul_additivity<R: Ring>(e: &Obj, f: &Obj, k: usize) -> (Grid<R>, Grid<R>, Vec<Mat<R>>) {
    let (sum, blocks) = Obj::direct_sum(&[e.clone(), f.clone()]);
    let slot_e: Slot = vec![0];
    let slot_f: Slot = vec![2];
    let object = |s: &Slot| if s[0] == 0 { e.clone() } else { f.clone() };
    let summands: Vec<SlotWeight> =
        (0..=k).map(|m| SlotWeight::new(vec![(slot_e.clone(), k - m), (slot_f.clone(), m)])).collect();
    let split_vertex = |p: usize| StructVertex::new(summands.clone(), p, |_, _| true, &object).expect("atomic objects");
    let split = build_grid(&[k], |m| split_vertex(m[0]), |_, _, _, _, s, x| koszul_edge(s, x, |_| true));
    let whole: Grid<R> = koszul(&sum, k);
    let inclusion = |b: &[usize]| {
        let mut m = Mat::zeros(sum.rank(), b.len());
        for (c, &r) in b.iter().enumerate() {
            m.set(r, c, R::one());
        }
        m
    };
    let (inc_e, inc_f) = (inclusion(&blocks[0]), inclusion(&blocks[1]));
    let sum_object = |_: &Slot| sum.clone();
    let isos = (0..=k)
        .map(|p| {
            let src = split_vertex(p);
            let tgt = StructVertex::new(vec![SlotWeight::new(vec![(Vec::new(), k)])], p, |_, _| true, &sum_object)
                .expect("atomic object");
            super::slots::assemble(&src, &tgt, |s, x| {
                let w = &src.summands[s];
                let mats: Vec<&Mat<R>> = w.0.iter().map(|(u, _)| if u[0] == 0 { &inc_e } else { &inc_f }).collect();
                slot_image(x, &vec![0; w.0.len()], 1, &mats).into_iter().map(|(y, c)| (0, y, c)).collect()
            })
        })
        .collect();
    (split, whole, isos)
}
