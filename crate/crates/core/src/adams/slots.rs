//! Tensor products of Koszul terms indexed by weighted slots.
//!
//! A summand `⊗_s Ψ^{w_s}(X_s)` is a list of slots (a slot is a vertex of
//! the input cube) with positive weights. Its degree-`p` part splits into
//! pieces, one per distribution `P` of the symmetric degrees over slots.
//! A basis element of a piece is a list of (symmetric tuple, exterior tuple)
//! per slot, read as a product in the graded-commutative algebra where the
//! exterior generators are odd and ordered by slot.

use std::collections::{BTreeMap, HashMap};

use crate::cubes::Grid;
use crate::exactalg::{Mat, Ring};
use crate::objects::tuples::{sort_sign, table};
use crate::objects::{expand_product, Obj, ObjError};

/// Vertex of the input cube used as a tensor slot.
pub type Slot = Vec<usize>;

/// Slots with positive weights, in increasing slot order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotWeight(pub Vec<(Slot, usize)>);

impl SlotWeight {
    pub fn new(mut entries: Vec<(Slot, usize)>) -> Self {
        entries.retain(|(_, w)| *w > 0);
        entries.sort();
        let mut merged: Vec<(Slot, usize)> = Vec::with_capacity(entries.len());
        for (s, w) in entries {
            match merged.last_mut() {
                Some((last, lw)) if *last == s => *lw += w,
                _ => merged.push((s, w)),
            }
        }
        SlotWeight(merged)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|(_, w)| w).sum()
    }

    /// Weights pushed forward along a slot map.
    pub fn push(&self, tau: impl Fn(&Slot) -> Slot) -> SlotWeight {
        SlotWeight::new(self.0.iter().map(|(s, w)| (tau(s), *w)).collect())
    }
}

/// Per-slot (symmetric tuple, exterior tuple).
pub type Element = Vec<(Vec<usize>, Vec<usize>)>;

fn distribution(e: &Element) -> Vec<usize> {
    e.iter().map(|(s, _)| s.len()).collect()
}

/// Degree-`dist` part of one summand, with the normal-form position of each
/// of its basis elements inside the enclosing vertex.
#[derive(Clone, Debug)]
pub struct Piece {
    pub summand: usize,
    pub dist: Vec<usize>,
    pub elements: Vec<Element>,
    /// `(sign, index)`: the element is `sign` times the basis vector `index`.
    pub positions: Vec<(i8, usize)>,
    lookup: HashMap<Element, usize>,
}

/// A direct sum of pieces, realized as a normal-form object.
#[derive(Clone, Debug)]
pub struct StructVertex {
    pub summands: Vec<SlotWeight>,
    pub obj: Obj,
    pub pieces: Vec<Piece>,
    summand_index: HashMap<SlotWeight, usize>,
    piece_index: HashMap<(usize, Vec<usize>), usize>,
}

/// All distributions `P ≤ weights` with `Σ P = total`, in lexicographic order.
pub fn distributions(weights: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(weights: &[usize], left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == weights.len() {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let rest: usize = weights[acc.len() + 1..].iter().sum();
        let w = weights[acc.len()];
        for p in 0..=w.min(left) {
            if left - p > rest {
                continue;
            }
            acc.push(p);
            rec(weights, left - p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, total, &mut Vec::new(), &mut out);
    out
}

impl StructVertex {
    /// Pieces of `summands` accepted by `keep`, in summand order and then
    /// lexicographic order of distributions of total degree `degree`.
    pub fn new(
        summands: Vec<SlotWeight>,
        degree: usize,
        keep: impl Fn(&SlotWeight, &[usize]) -> bool,
        object: &dyn Fn(&Slot) -> Obj,
    ) -> Result<Self, ObjError> {
        let mut raw = Vec::new();
        let mut objs = Vec::new();
        for (si, w) in summands.iter().enumerate() {
            let weights: Vec<usize> = w.0.iter().map(|(_, x)| *x).collect();
            for dist in distributions(&weights, degree) {
                if !keep(w, &dist) {
                    continue;
                }
                let (obj, elements, local) = piece_object(w, &dist, object)?;
                raw.push((si, dist, elements, local));
                objs.push(obj);
            }
        }
        let (obj, maps) = Obj::direct_sum(&objs);
        let mut pieces = Vec::with_capacity(raw.len());
        let mut piece_index = HashMap::new();
        for ((summand, dist, elements, local), map) in raw.into_iter().zip(maps) {
            let positions: Vec<(i8, usize)> = local.iter().map(|&(s, i)| (s, map[i])).collect();
            let lookup = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            piece_index.insert((summand, dist.clone()), pieces.len());
            pieces.push(Piece { summand, dist, elements, positions, lookup });
        }
        let summand_index = summands.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(StructVertex { summands, obj, pieces, summand_index, piece_index })
    }

    pub fn summand(&self, w: &SlotWeight) -> Option<usize> {
        self.summand_index.get(w).copied()
    }

    /// Normal-form `(sign, index)` of an element of summand `s`.
    pub fn position(&self, s: usize, e: &Element) -> Option<(i8, usize)> {
        let p = self.piece_index.get(&(s, distribution(e)))?;
        let piece = &self.pieces[*p];
        piece.lookup.get(e).map(|&i| piece.positions[i])
    }
}

/// Normal form of one piece with the `(sign, index)` of each structural element.
fn piece_object(
    w: &SlotWeight,
    dist: &[usize],
    object: &dyn Fn(&Slot) -> Obj,
) -> Result<(Obj, Vec<Element>, Vec<(i8, usize)>), ObjError> {
    let mut parts = Vec::new();
    let mut tuple_lists: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut part_maps = Vec::new();
    for ((slot, weight), &p) in w.0.iter().zip(dist) {
        let x = object(slot);
        for (deg, strict) in [(p, false), (weight - p, true)] {
            let (o, map) = if strict { x.ext_power(deg)? } else { x.sym_power(deg)? };
            tuple_lists.push(table(strict, deg, x.rank()).tuples.clone());
            parts.push(o);
            part_maps.push(map);
        }
    }
    let (tensor, tmap) = Obj::tensor(&parts);
    let mut elements = Vec::new();
    let mut positions = Vec::new();
    if tensor.is_zero() {
        return Ok((tensor, elements, positions));
    }
    let sizes: Vec<usize> = tuple_lists.iter().map(Vec::len).collect();
    let ranks: Vec<usize> = parts.iter().map(Obj::rank).collect();
    let total: usize = sizes.iter().product();
    for flat in 0..total {
        let mut rest = flat;
        let mut idx = vec![0; sizes.len()];
        for p in (0..sizes.len()).rev() {
            idx[p] = rest % sizes[p];
            rest /= sizes[p];
        }
        let mut sign = 1i8;
        let mut mixed = 0;
        for (p, &t) in idx.iter().enumerate() {
            let (s, i) = part_maps[p][t];
            sign *= s;
            mixed = mixed * ranks[p] + i;
        }
        let (s, i) = tmap[mixed];
        let element: Element =
            (0..w.0.len()).map(|s| (tuple_lists[2 * s][idx[2 * s]].clone(), tuple_lists[2 * s + 1][idx[2 * s + 1]].clone())).collect();
        elements.push(element);
        positions.push((sign * s, i));
    }
    Ok((tensor, elements, positions))
}

/// Image of an element of a summand under one map per source slot, each
/// source slot sent to target slot `targets[s]`. Symmetric parts multiply,
/// exterior generators are reordered by (target slot, index) with sign.
pub fn slot_image<R: Ring>(e: &Element, targets: &[usize], n_targets: usize, maps: &[&Mat<R>]) -> Vec<(Element, R)> {
    // Partial products: per target slot symmetric multiset, a global
    // sequence of exterior generators, and a coefficient.
    type Partial<R> = (Vec<Vec<usize>>, Vec<(usize, usize)>, R);
    let mut acc: Vec<Partial<R>> = vec![(vec![Vec::new(); n_targets], Vec::new(), R::one())];
    for (s, (sym, ext)) in e.iter().enumerate() {
        let t = targets[s];
        let sym_img = expand_product(maps[s], sym, false);
        let ext_img = expand_product(maps[s], ext, true);
        let mut next = Vec::new();
        for (syms, exts, c) in &acc {
            for (st, sc) in &sym_img {
                for (et, ec) in &ext_img {
                    let mut syms2 = syms.clone();
                    syms2[t].extend_from_slice(st);
                    let mut exts2 = exts.clone();
                    exts2.extend(et.iter().map(|&i| (t, i)));
                    next.push((syms2, exts2, c.times(sc).times(ec)));
                }
            }
        }
        acc = next;
    }
    let mut out: BTreeMap<Element, R> = BTreeMap::new();
    for (mut syms, exts, c) in acc {
        let width = 1 + exts.iter().map(|&(_, i)| i).max().unwrap_or(0);
        let mut keys: Vec<usize> = exts.iter().map(|&(t, i)| t * width + i).collect();
        let Some(sign) = sort_sign(&mut keys) else { continue };
        let mut per: Vec<Vec<usize>> = vec![Vec::new(); n_targets];
        for k in keys {
            per[k / width].push(k % width);
        }
        for s in &mut syms {
            s.sort_unstable();
        }
        let element: Element = syms.into_iter().zip(per).collect();
        let c = if sign < 0 { c.negate() } else { c };
        out.entry(element).or_insert_with(R::zero).accumulate(&c);
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Koszul differential restricted to the slots accepted by `on`: each
/// exterior generator moves to the symmetric side, with the sign of the
/// exterior generators it passes.
pub fn koszul_image(e: &Element, on: impl Fn(usize) -> bool) -> Vec<(Element, i64)> {
    let mut out = Vec::new();
    let mut passed = 0;
    for (s, (_, ext)) in e.iter().enumerate() {
        if on(s) {
            for t in 0..ext.len() {
                let mut next = e.clone();
                let moved = next[s].1.remove(t);
                next[s].0.push(moved);
                next[s].0.sort_unstable();
                out.push((next, if (passed + t) % 2 == 0 { 1 } else { -1 }));
            }
        }
        passed += ext.len();
    }
    out
}

/// Matrix of a map between two vertices given on structural elements.
/// `image(summand, element)` lists target (summand, element, coefficient).
pub fn assemble<R: Ring>(
    src: &StructVertex,
    tgt: &StructVertex,
    mut image: impl FnMut(usize, &Element) -> Vec<(usize, Element, R)>,
) -> Mat<R> {
    let mut out = Mat::zeros(tgt.obj.rank(), src.obj.rank());
    for piece in &src.pieces {
        for (e, &(s1, col)) in piece.elements.iter().zip(&piece.positions) {
            for (ts, te, c) in image(piece.summand, e) {
                let (s2, row) = tgt
                    .position(ts, &te)
                    .unwrap_or_else(|| panic!("image element {te:?} missing from target summand {ts}"));
                let c = if s1 * s2 < 0 { c.negate() } else { c };
                out.add_at(row, col, &c);
            }
        }
    }
    out
}

/// Grid whose vertices are structured sums; `image(d, coords, summand, element)`
/// gives the edge in direction `d` leaving `coords`.
pub fn build_grid<R: Ring>(
    lengths: &[usize],
    vertex: impl Fn(&[usize]) -> StructVertex,
    image: impl Fn(usize, &[usize], &StructVertex, &StructVertex, usize, &Element) -> Vec<(usize, Element, R)>,
) -> Grid<R> {
    let verts: HashMap<Vec<usize>, StructVertex> =
        crate::multiindex::box_grid(lengths).into_iter().map(|m| (m.entries().to_vec(), vertex(m.entries()))).collect();
    Grid::from_fn(
        lengths,
        |m| verts[m].obj.clone(),
        |d, m, _, _| {
            let mut next = m.to_vec();
            next[d] += 1;
            let (src, tgt) = (&verts[m], &verts[&next]);
            assemble(src, tgt, |s, e| image(d, m, src, tgt, s, e))
        },
    )
}
