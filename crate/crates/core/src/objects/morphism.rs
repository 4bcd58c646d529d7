use std::collections::BTreeMap;

use super::atom::{Atom, KernelDef};
use super::expr::ObjectExpr;
use super::normal::{sort_tuple, Obj};
use super::tuples::table;
use super::ObjError;
use crate::exactalg::{ExactRing, Mat, Ring};

/// Matrix between realized bases of two expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<R: Ring> {
    pub source: ObjectExpr,
    pub target: ObjectExpr,
    pub matrix: Mat<R>,
}

impl<R: Ring> Morphism<R> {
    pub fn new(source: ObjectExpr, target: ObjectExpr, matrix: Mat<R>) -> Result<Self, ObjError> {
        if matrix.dims() != (target.rank(), source.rank()) {
            return Err(ObjError::Dimension(format!(
                "matrix {:?} for {} -> {}",
                matrix.dims(),
                source.rank(),
                target.rank()
            )));
        }
        Ok(Morphism { source, target, matrix })
    }

    pub fn identity(obj: ObjectExpr) -> Self {
        let n = obj.rank();
        Morphism { source: obj.clone(), target: obj, matrix: Mat::identity(n) }
    }

    pub fn compose(&self, first: &Morphism<R>) -> Result<Self, ObjError> {
        if first.target.rank() != self.source.rank() {
            return Err(ObjError::Dimension("composable ranks differ".into()));
        }
        Ok(Morphism { source: first.source.clone(), target: self.target.clone(), matrix: self.matrix.dot(&first.matrix) })
    }

    /// Same map written between the normal forms.
    pub fn normalized(&self) -> Result<(Obj, Obj, Mat<R>), ObjError> {
        let s = self.source.normalize()?;
        let t = self.target.normalize()?;
        // iso matrices are signed permutations, so the inverse is the transpose
        let matrix = t.iso::<R>().dot(&self.matrix).dot(&s.iso::<R>().transpose());
        Ok((s.object, t.object, matrix))
    }
}

pub fn direct_sum_map<R: Ring>(fs: &[Morphism<R>]) -> Morphism<R> {
    Morphism {
        source: ObjectExpr::Sum(fs.iter().map(|f| f.source.clone()).collect()),
        target: ObjectExpr::Sum(fs.iter().map(|f| f.target.clone()).collect()),
        matrix: Mat::block_diag(&fs.iter().map(|f| f.matrix.clone()).collect::<Vec<_>>()),
    }
}

pub fn tensor_map<R: Ring>(fs: &[Morphism<R>]) -> Morphism<R> {
    let matrix = fs.iter().fold(Mat::identity(1), |acc, f| acc.kron(&f.matrix));
    Morphism {
        source: ObjectExpr::Tensor(fs.iter().map(|f| f.source.clone()).collect()),
        target: ObjectExpr::Tensor(fs.iter().map(|f| f.target.clone()).collect()),
        matrix,
    }
}

pub fn sym_power_map<R: Ring>(p: usize, f: &Morphism<R>) -> Morphism<R> {
    Morphism {
        source: ObjectExpr::sym(p, f.source.clone()),
        target: ObjectExpr::sym(p, f.target.clone()),
        matrix: power_matrix(&f.matrix, p, false),
    }
}

pub fn ext_power_map<R: Ring>(q: usize, f: &Morphism<R>) -> Morphism<R> {
    Morphism {
        source: ObjectExpr::ext(q, f.source.clone()),
        target: ObjectExpr::ext(q, f.target.clone()),
        matrix: power_matrix(&f.matrix, q, true),
    }
}

/// Induced map on `S^p` (or `Λ^p` when `strict`) in the increasing-tuple bases:
/// the product of column images, expanded and re-sorted.
pub fn power_matrix<R: Ring>(m: &Mat<R>, p: usize, strict: bool) -> Mat<R> {
    let src = table(strict, p, m.cols());
    let tgt = table(strict, p, m.rows());
    let mut out = Mat::zeros(tgt.len(), src.len());
    for (j, t) in src.tuples.iter().enumerate() {
        for (tuple, c) in expand_product(m, t, strict) {
            let i = tgt.position(&tuple).expect("sorted tuple");
            out.set(i, j, c);
        }
    }
    out
}

/// Coefficients of `m e_{t_1} * ... * m e_{t_p}` on sorted target tuples.
pub fn expand_product<R: Ring>(m: &Mat<R>, t: &[usize], strict: bool) -> BTreeMap<Vec<usize>, R> {
    let mut acc: BTreeMap<Vec<usize>, R> = BTreeMap::new();
    acc.insert(Vec::new(), R::one());
    for &col in t {
        let mut next: BTreeMap<Vec<usize>, R> = BTreeMap::new();
        for (tuple, c) in &acc {
            for r in 0..m.rows() {
                let entry = m.get(r, col);
                if entry.is_zero() {
                    continue;
                }
                let mut grown = tuple.clone();
                grown.push(r);
                let Some(sign) = sort_tuple(&mut grown, strict) else { continue };
                let mut term = c.times(entry);
                if sign < 0 {
                    term = term.negate();
                }
                next.entry(grown).or_insert_with(R::zero).accumulate(&term);
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

/// Kernel of `f: source -> target` (normal-form bases) with its inclusion.
/// A zero map keeps the source; an injective map gives the zero object.
pub fn kernel_object<R: ExactRing>(
    source: &Obj,
    target: &Obj,
    f: &Mat<R>,
    label: &str,
) -> Result<(Obj, Mat<R>), ObjError> {
    if f.dims() != (target.rank(), source.rank()) {
        return Err(ObjError::Dimension(format!("map {:?} for {} -> {}", f.dims(), source.key(), target.key())));
    }
    if f.is_zero() {
        return Ok((source.clone(), Mat::identity(source.rank())));
    }
    let basis = R::kernel(f)?;
    if basis.cols() == 0 {
        return Ok((Obj::zero(), Mat::zeros(source.rank(), 0)));
    }
    let def = KernelDef { source: source.clone(), target: target.clone(), basis: R::to_poly(&basis) };
    Ok((Obj::atom(&Atom::kernel(label, def)), basis))
}

/// `kernel_object` on realized expressions.
pub fn kernel_of_morphism<R: ExactRing>(f: &Morphism<R>, label: &str) -> Result<Morphism<R>, ObjError> {
    let (s, t, m) = f.normalized()?;
    let (k, inc) = kernel_object(&s, &t, &m, label)?;
    let back = f.source.normalize()?.iso::<R>().transpose();
    Ok(Morphism { source: k.to_expr(), target: f.source.clone(), matrix: back.dot(&inc) })
}

/// Matrix of `⊗ f_i` between the normal forms of `⊗ sources` and `⊗ targets`.
pub fn tensor_normal_map<R: Ring>(sources: &[Obj], targets: &[Obj], maps: &[Mat<R>]) -> (Obj, Obj, Mat<R>) {
    let (src, src_images) = Obj::tensor(sources);
    let (tgt, tgt_images) = Obj::tensor(targets);
    let kron = maps.iter().fold(Mat::identity(1), |acc, f| acc.kron(f));
    let p_src: Mat<R> = Mat::signed_permutation(&src_images, src.rank());
    let p_tgt: Mat<R> = Mat::signed_permutation(&tgt_images, tgt.rank());
    let m = p_tgt.dot(&kron).dot(&p_src.transpose());
    (src, tgt, m)
}
