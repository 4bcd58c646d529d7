//! Subobjects of free modules as atoms, and the two atom transforms of the
//! cocubical structure: evaluating a variable and inserting a fresh one.
//!
//! A subobject atom is a kernel atom whose target is zero: its basis columns
//! span a submodule of the source. [`subobject`] is the only constructor, so
//! equal data gives equal atoms whatever route produced it.

use std::cell::RefCell;

use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

use super::TransError;
use crate::cubes::Grid;
use crate::exactalg::{q, rref, ExactRing, Mat, Poly, Ring, Q};
use crate::objects::{Atom, Factor, KernelDef, Monomial, Obj, Power, SignedIndex};

/// Submodule of `⊕ blocks` spanned by the columns of `basis` (rows in block
/// order). Ambient summands on which the basis vanishes are dropped; if what
/// is left is the identity on the remaining summands the result is their sum.
pub fn subobject(blocks: &[Obj], basis: &Mat<Poly>, label: &str) -> Obj {
    let (ambient, maps) = Obj::direct_sum(blocks);
    assert_eq!(basis.rows(), ambient.rank(), "subobject basis rows");
    if basis.cols() == 0 {
        return Obj::zero();
    }
    let mut sorted = Mat::zeros(ambient.rank(), basis.cols());
    let mut row = 0;
    for map in &maps {
        for &r in map {
            for c in 0..basis.cols() {
                sorted.set(r, c, basis.get(row, c).clone());
            }
            row += 1;
        }
    }
    let mut kept = Vec::new();
    let mut rows = Vec::new();
    for (m, mono) in ambient.monomials().iter().enumerate() {
        let off = ambient.offsets()[m];
        let range: Vec<usize> = (off..off + mono.rank()).collect();
        if range.iter().any(|&r| (0..basis.cols()).any(|c| !sorted.get(r, c).is_zero())) {
            kept.push(mono.clone());
            rows.extend(range);
        }
    }
    let reduced = sorted.select_rows(&rows);
    let (source, _) = Obj::from_monomials(kept);
    if reduced.is_identity() {
        return source;
    }
    Obj::atom(&Atom::kernel(label, KernelDef { source, target: Obj::zero(), basis: reduced }))
}

/// Reduced column-echelon basis of the column space of `m`.
pub fn column_echelon(m: &Mat<Q>) -> Mat<Q> {
    let r = rref(&m.transpose());
    r.reduced.select_rows(&(0..r.rank).collect::<Vec<_>>()).transpose()
}

/// Image of `f: X -> Y` as a canonical subobject of `Y`, with its inclusion.
pub fn image_object(target: &Obj, f: &Mat<Q>, label: &str) -> (Obj, Mat<Q>) {
    let basis = column_echelon(f);
    (subobject(std::slice::from_ref(target), &basis.to_poly(), label), basis)
}

pub fn is_subobject_atom(a: &Atom) -> bool {
    a.kernel_def().is_some_and(|d| d.target.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Evaluate { var: usize, one: bool },
    Insert { at: usize },
}

impl Op {
    fn apply(self, m: &Mat<Poly>) -> Mat<Poly> {
        match self {
            Op::Evaluate { var, one } => {
                m.evaluate(var, &q(i64::from(one))).expect("variables are 1-based")
            }
            Op::Insert { at } => m.insert_vars(at, 1),
        }
    }
}

thread_local! {
    static ATOM_CACHE: RefCell<HashMap<(String, Op), Obj>> = RefCell::new(HashMap::new());
}

/// An atom after the transform, with the same basis read in the new object.
fn transform_atom(a: &Atom, op: Op) -> Result<Obj, TransError> {
    let Some(def) = a.kernel_def() else {
        return Ok(Obj::atom(a));
    };
    let key = (a.key().to_string(), op);
    if let Some(o) = ATOM_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return Ok(o);
    }
    let (source, src_iso) = transform_obj(&def.source, op)?;
    let p_src: Mat<Poly> = Mat::signed_permutation(&src_iso, source.rank());
    let basis = p_src.dot(&op.apply(&def.basis));
    let out = if def.target.is_zero() {
        subobject(std::slice::from_ref(&source), &basis, a.label())
    } else {
        let (target, _) = transform_obj(&def.target, op)?;
        Obj::atom(&Atom::kernel(a.label(), KernelDef { source, target, basis }))
    };
    if out.rank() != a.rank() {
        return Err(TransError::Rank(a.key().to_string()));
    }
    ATOM_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    Ok(out)
}

/// Whether an object involves `t_var` through some atom.
pub fn obj_depends_on(o: &Obj, var: usize) -> bool {
    o.monomials().iter().any(|m| m.factors().iter().any(|f| atom_depends_on(&f.atom, var)))
}

fn atom_depends_on(a: &Atom, var: usize) -> bool {
    a.kernel_def().is_some_and(|d| {
        d.basis.entries().iter().any(|p| !p.independent_of(var)) || obj_depends_on(&d.source, var) || obj_depends_on(&d.target, var)
    })
}

/// Whether any atom of `o` involves a variable.
pub fn obj_has_vars(o: &Obj) -> bool {
    o.monomials().iter().any(|m| m.factors().iter().any(|f| atom_has_vars_from(&f.atom, 1)))
}

fn unchanged(o: &Obj, op: Op) -> bool {
    match op {
        Op::Evaluate { var, .. } | Op::Insert { at: var } => {
            !o.monomials().iter().any(|m| m.factors().iter().any(|f| atom_has_vars_from(&f.atom, var)))
        }
    }
}

/// Whether the atom involves some variable `t_v` with `v >= var`.
fn atom_has_vars_from(a: &Atom, var: usize) -> bool {
    a.kernel_def().is_some_and(|d| {
        d.basis.var_count() >= var
            || [&d.source, &d.target]
                .iter()
                .any(|o| o.monomials().iter().any(|m| m.factors().iter().any(|f| atom_has_vars_from(&f.atom, var))))
    })
}

/// Renormalized object after transforming every atom, with the signed image
/// of each old basis element.
fn transform_obj(o: &Obj, op: Op) -> Result<(Obj, Vec<SignedIndex>), TransError> {
    if unchanged(o, op) {
        return Ok((o.clone(), (0..o.rank()).map(|i| (1, i)).collect()));
    }
    let mut parts = Vec::with_capacity(o.monomials().len());
    let mut part_maps = Vec::with_capacity(o.monomials().len());
    for mono in o.monomials() {
        let (obj, map) = transform_monomial(mono, op)?;
        parts.push(obj);
        part_maps.push(map);
    }
    let (sum, blocks) = Obj::direct_sum(&parts);
    let mut images = Vec::with_capacity(o.rank());
    for (map, block) in part_maps.iter().zip(&blocks) {
        for &(s, i) in map {
            images.push((s, block[i]));
        }
    }
    Ok((sum, images))
}

fn transform_monomial(mono: &Monomial, op: Op) -> Result<(Obj, Vec<SignedIndex>), TransError> {
    let mut parts = Vec::new();
    let mut maps: Vec<Vec<SignedIndex>> = Vec::new();
    for f in mono.factors() {
        let x = transform_atom(&f.atom, op)?;
        let (obj, map) = match f.power {
            Power::Bare => {
                let r = x.rank();
                (x, (0..r).map(|i| (1, i)).collect())
            }
            Power::Sym(p) => x.sym_power(p)?,
            Power::Ext(q) => x.ext_power(q)?,
        };
        parts.push(obj);
        maps.push(map);
    }
    let (tensor, tmap) = Obj::tensor(&parts);
    let ranks: Vec<usize> = parts.iter().map(Obj::rank).collect();
    let images = (0..mono.rank())
        .map(|i| {
            let idx = mono.split_index(i);
            let mut sign = 1i8;
            let mut mixed = 0;
            for (p, &j) in idx.iter().enumerate() {
                let (s, k) = maps[p][j];
                sign *= s;
                mixed = mixed * ranks[p] + k;
            }
            let (s, k) = tmap[mixed];
            (sign * s, k)
        })
        .collect();
    Ok((tensor, images))
}

/// `(object, iso)` with `iso` the signed permutation from the old basis.
pub fn evaluate_obj(o: &Obj, var: usize, one: bool) -> Result<(Obj, Mat<Poly>), TransError> {
    let (obj, images) = transform_obj(o, Op::Evaluate { var, one })?;
    let iso = Mat::signed_permutation(&images, obj.rank());
    Ok((obj, iso))
}

pub fn insert_var_obj(o: &Obj, at: usize) -> Result<(Obj, Mat<Poly>), TransError> {
    let (obj, images) = transform_obj(o, Op::Insert { at })?;
    let iso = Mat::signed_permutation(&images, obj.rank());
    Ok((obj, iso))
}

fn grid_transform(g: &Grid<Poly>, op: Op) -> Result<(Grid<Poly>, Vec<Mat<Poly>>), TransError> {
    let mut objs = Vec::with_capacity(g.vertex_count());
    let mut isos = Vec::with_capacity(g.vertex_count());
    for o in g.vertices() {
        let (obj, images) = transform_obj(o, op)?;
        isos.push(Mat::signed_permutation(&images, obj.rank()));
        objs.push(obj);
    }
    let out = Grid::from_fn(
        g.lengths(),
        |m| objs[g.index(m)].clone(),
        |d, m, _, _| {
            let v = g.index(m);
            let w = v + g.stride(d);
            isos[w].dot(&op.apply(g.edge_at(d, v).expect("edge"))).dot(&isos[v].transpose())
        },
    );
    Ok((out, isos))
}

/// `δ`-face data: the grid with `t_var` set to 0 or 1, with vertex isos.
pub fn evaluate_grid(g: &Grid<Poly>, var: usize, one: bool) -> Result<(Grid<Poly>, Vec<Mat<Poly>>), TransError> {
    grid_transform(g, Op::Evaluate { var, one })
}

/// `σ`-pullback: a fresh variable inserted before `t_at`.
pub fn insert_var_grid(g: &Grid<Poly>, at: usize) -> Result<(Grid<Poly>, Vec<Mat<Poly>>), TransError> {
    grid_transform(g, Op::Insert { at })
}

pub(crate) fn apply_evaluate(m: &Mat<Poly>, var: usize, one: bool) -> Mat<Poly> {
    Op::Evaluate { var, one }.apply(m)
}

pub(crate) fn apply_insert(m: &Mat<Poly>, at: usize) -> Mat<Poly> {
    Op::Insert { at }.apply(m)
}

/// Inclusion of an object into the free module on the named atoms it is
/// built from, one block per named atom key. `None` for tensor monomials.
pub fn root_embedding(o: &Obj) -> Option<BTreeMap<String, Mat<Poly>>> {
    let mut out: BTreeMap<String, Mat<Poly>> = BTreeMap::new();
    for (mono, &off) in o.monomials().iter().zip(o.offsets()) {
        let [Factor { atom, power: Power::Bare }] = mono.factors() else {
            return None;
        };
        let local = atom_root(atom)?;
        for (key, m) in local {
            let entry = out.entry(key).or_insert_with(|| Mat::zeros(m.rows(), o.rank()));
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    entry.add_at(r, off + c, m.get(r, c));
                }
            }
        }
    }
    Some(out)
}

fn atom_root(a: &Atom) -> Option<BTreeMap<String, Mat<Poly>>> {
    match a.kernel_def() {
        None => Some(BTreeMap::from([(a.key().to_string(), Mat::identity(a.rank()))])),
        Some(def) if def.target.is_zero() => {
            Some(root_embedding(&def.source)?.into_iter().map(|(k, m)| (k, m.dot(&def.basis))).collect())
        }
        Some(_) => Some(BTreeMap::from([(a.key().to_string(), Mat::identity(a.rank()))])),
    }
}

/// Columns are distinct standard basis vectors in increasing order.
pub fn is_selection<R: Ring>(m: &Mat<R>) -> bool {
    let mut last: Option<usize> = None;
    for c in 0..m.cols() {
        let mut hit = None;
        for r in 0..m.rows() {
            let x = m.get(r, c);
            if x.is_zero() {
                continue;
            }
            if hit.is_some() || *x != R::one() {
                return false;
            }
            hit = Some(r);
        }
        match (hit, last) {
            (None, _) => return false,
            (Some(r), Some(l)) if r <= l => return false,
            (Some(r), _) => last = Some(r),
        }
    }
    true
}

/// `f: X -> Y` is the inclusion of a subset: either a coordinate selection,
/// or both sides embed in the same named atoms and `f` commutes with the
/// embeddings.
pub fn is_set_inclusion<R: ExactRing>(src: &Obj, tgt: &Obj, f: &Mat<R>) -> bool {
    if is_selection(f) {
        return true;
    }
    let (Some(rs), Some(rt)) = (root_embedding(src), root_embedding(tgt)) else {
        return false;
    };
    let fp = R::to_poly(f);
    rt.iter().all(|(k, mt)| {
        let lhs = mt.dot(&fp);
        match rs.get(k) {
            Some(ms) => lhs == *ms,
            None => lhs.is_zero(),
        }
    }) && rs.keys().all(|k| rt.contains_key(k))
}

/// Every `f_i^0` edge is the inclusion of a subset.
pub fn has_canonical_kernels<R: ExactRing>(e: &Grid<R>) -> bool {
    for d in 0..e.dims() {
        for v in 0..e.vertex_count() {
            if e.coords(v)[d] != 0 {
                continue;
            }
            let Some(f) = e.edge_at(d, v) else { continue };
            let w = v + e.stride(d);
            if !is_set_inclusion(e.vertex_at(v), e.vertex_at(w), f) {
                return false;
            }
        }
    }
    true
}
