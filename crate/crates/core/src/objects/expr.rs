use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::atom::{Atom, KernelDef, Power};
use super::normal::{sort_tuple, Obj, SignedIndex};
use super::tuples::table;
use super::ObjError;
use crate::exactalg::{Mat, Poly};

/// Expression tree over atoms. Realized bases are structural: sums
/// concatenate children in the given order, tensors use the mixed-radix
/// product basis, powers use increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectExpr {
    Zero,
    Atom(Atom),
    Sum(Vec<ObjectExpr>),
    Tensor(Vec<ObjectExpr>),
    SymPow(usize, Box<ObjectExpr>),
    ExtPow(usize, Box<ObjectExpr>),
}

/// Rank and ordered basis labels of a realized expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedModule {
    pub rank: usize,
    pub basis_labels: Vec<String>,
}

/// Normal form together with the canonical iso from the realized basis.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub object: Obj,
    /// Signed image of each realized basis vector.
    pub images: Vec<SignedIndex>,
}

impl Normalized {
    pub fn iso<R: crate::exactalg::Ring>(&self) -> Mat<R> {
        Mat::signed_permutation(&self.images, self.object.rank())
    }
}

impl ObjectExpr {
    pub fn atom(label: &str, rank: usize) -> ObjectExpr {
        ObjectExpr::Atom(Atom::named(label, rank))
    }

    pub fn sum(children: Vec<ObjectExpr>) -> ObjectExpr {
        ObjectExpr::Sum(children)
    }

    pub fn tensor(children: Vec<ObjectExpr>) -> ObjectExpr {
        ObjectExpr::Tensor(children)
    }

    pub fn sym(p: usize, child: ObjectExpr) -> ObjectExpr {
        ObjectExpr::SymPow(p, Box::new(child))
    }

    pub fn ext(q: usize, child: ObjectExpr) -> ObjectExpr {
        ObjectExpr::ExtPow(q, Box::new(child))
    }

    pub fn rank(&self) -> usize {
        match self {
            ObjectExpr::Zero => 0,
            ObjectExpr::Atom(a) => a.rank(),
            ObjectExpr::Sum(c) => c.iter().map(ObjectExpr::rank).sum(),
            ObjectExpr::Tensor(c) => c.iter().map(ObjectExpr::rank).product(),
            ObjectExpr::SymPow(p, c) => table(false, *p, c.rank()).len(),
            ObjectExpr::ExtPow(q, c) => table(true, *q, c.rank()).len(),
        }
    }

    pub fn realize(&self) -> BasedModule {
        let basis_labels = self.labels();
        BasedModule { rank: basis_labels.len(), basis_labels }
    }

    fn labels(&self) -> Vec<String> {
        match self {
            ObjectExpr::Zero => Vec::new(),
            ObjectExpr::Atom(a) => a.basis_labels(),
            ObjectExpr::Sum(c) => c.iter().flat_map(ObjectExpr::labels).collect(),
            ObjectExpr::Tensor(c) => {
                let per: Vec<Vec<String>> = c.iter().map(ObjectExpr::labels).collect();
                if per.len() == 1 {
                    return per[0].clone();
                }
                let mut out = vec![Vec::<&str>::new()];
                for l in &per {
                    out = out.iter().flat_map(|prefix| l.iter().map(move |x| [prefix.clone(), vec![x.as_str()]].concat())).collect();
                }
                if per.is_empty() {
                    return vec!["1".into()];
                }
                out.into_iter().map(|parts| format!("({})", parts.join("⊗"))).collect()
            }
            ObjectExpr::SymPow(p, c) => power_labels(&c.labels(), *p, false),
            ObjectExpr::ExtPow(q, c) => power_labels(&c.labels(), *q, true),
        }
    }

    /// Normal form and the signed permutation onto it.
    pub fn normalize(&self) -> Result<Normalized, ObjError> {
        match self {
            ObjectExpr::Zero => Ok(Normalized { object: Obj::zero(), images: Vec::new() }),
            ObjectExpr::Atom(a) => {
                let object = Obj::atom(a);
                Ok(Normalized { images: (0..object.rank()).map(|i| (1, i)).collect(), object })
            }
            ObjectExpr::Sum(children) => {
                let parts = children.iter().map(ObjectExpr::normalize).collect::<Result<Vec<_>, _>>()?;
                let objs: Vec<Obj> = parts.iter().map(|p| p.object.clone()).collect();
                let (object, maps) = Obj::direct_sum(&objs);
                let images = parts
                    .iter()
                    .zip(&maps)
                    .flat_map(|(p, m)| p.images.iter().map(move |&(s, i)| (s, m[i])))
                    .collect();
                Ok(Normalized { object, images })
            }
            ObjectExpr::Tensor(children) => {
                let parts = children.iter().map(ObjectExpr::normalize).collect::<Result<Vec<_>, _>>()?;
                let objs: Vec<Obj> = parts.iter().map(|p| p.object.clone()).collect();
                let (object, map) = Obj::tensor(&objs);
                if object.is_zero() {
                    return Ok(Normalized { object, images: Vec::new() });
                }
                let dims: Vec<usize> = objs.iter().map(Obj::rank).collect();
                let realized: Vec<usize> = parts.iter().map(|p| p.images.len()).collect();
                let total: usize = realized.iter().product();
                let images = (0..total)
                    .map(|flat| {
                        let mut rest = flat;
                        let mut sign = 1i8;
                        let mut idx = vec![0; parts.len()];
                        for c in (0..parts.len()).rev() {
                            let (s, i) = parts[c].images[rest % realized[c]];
                            rest /= realized[c];
                            sign *= s;
                            idx[c] = i;
                        }
                        let flat_norm = idx.iter().zip(&dims).fold(0, |acc, (&i, &d)| acc * d + i);
                        let (s, i) = map[flat_norm];
                        (sign * s, i)
                    })
                    .collect();
                Ok(Normalized { object, images })
            }
            ObjectExpr::SymPow(p, child) => power_normalize(child, *p, false),
            ObjectExpr::ExtPow(q, child) => power_normalize(child, *q, true),
        }
    }

    pub fn normal_form(&self) -> Result<Obj, ObjError> {
        Ok(self.normalize()?.object)
    }

    /// Canonical key: structural key of the normal form.
    pub fn key(&self) -> Result<String, ObjError> {
        Ok(self.normal_form()?.key())
    }
}

fn power_labels(child: &[String], p: usize, strict: bool) -> Vec<String> {
    let sep = if strict { "∧" } else { "·" };
    table(strict, p, child.len())
        .tuples
        .iter()
        .map(|t| match t.len() {
            0 => "1".to_string(),
            1 => child[t[0]].clone(),
            _ => format!("({})", t.iter().map(|&i| child[i].as_str()).collect::<Vec<_>>().join(sep)),
        })
        .collect()
}

fn power_normalize(child: &ObjectExpr, p: usize, strict: bool) -> Result<Normalized, ObjError> {
    let inner = child.normalize()?;
    let (object, map) =
        if strict { inner.object.ext_power(p)? } else { inner.object.sym_power(p)? };
    let target = table(strict, p, inner.object.rank());
    let images = table(strict, p, inner.images.len())
        .tuples
        .iter()
        .filter_map(|t| {
            let mut sign = 1i8;
            let mut imgs: Vec<usize> = t
                .iter()
                .map(|&i| {
                    let (s, j) = inner.images[i];
                    sign *= s;
                    j
                })
                .collect();
            let s = sort_tuple(&mut imgs, strict)?;
            let (s2, j) = map[target.position(&imgs).expect("sorted tuple")];
            Some((sign * s * s2, j))
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(images.len(), table(strict, p, inner.images.len()).len());
    Ok(Normalized { object, images })
}

impl From<&Obj> for ObjectExpr {
    fn from(o: &Obj) -> ObjectExpr {
        let terms: Vec<ObjectExpr> = o
            .monomials()
            .iter()
            .map(|m| {
                let mut fs: Vec<ObjectExpr> = m
                    .factors()
                    .iter()
                    .map(|f| match f.power {
                        Power::Bare => ObjectExpr::Atom(f.atom.clone()),
                        Power::Sym(p) => ObjectExpr::sym(p, ObjectExpr::Atom(f.atom.clone())),
                        Power::Ext(q) => ObjectExpr::ext(q, ObjectExpr::Atom(f.atom.clone())),
                    })
                    .collect();
                if fs.len() == 1 {
                    fs.pop().expect("one factor")
                } else {
                    ObjectExpr::Tensor(fs)
                }
            })
            .collect();
        match terms.len() {
            0 => ObjectExpr::Zero,
            1 => terms.into_iter().next().expect("one term"),
            _ => ObjectExpr::Sum(terms),
        }
    }
}

impl Obj {
    pub fn to_expr(&self) -> ObjectExpr {
        ObjectExpr::from(self)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ExprRepr {
    Zero,
    Atom { label: String, rank: usize },
    Sum(Vec<ExprRepr>),
    Tensor(Vec<ExprRepr>),
    Sym(usize, Box<ExprRepr>),
    Ext(usize, Box<ExprRepr>),
    Kernel(KernelRepr),
}

#[derive(Serialize, Deserialize)]
struct KernelRepr {
    label: String,
    key: String,
    source: Box<ExprRepr>,
    target: Box<ExprRepr>,
    rows: usize,
    cols: usize,
    basis: Vec<Vec<String>>,
}

impl ExprRepr {
    fn from_expr(e: &ObjectExpr) -> ExprRepr {
        match e {
            ObjectExpr::Zero => ExprRepr::Zero,
            ObjectExpr::Atom(a) => match a.kernel_def() {
                None => ExprRepr::Atom { label: a.label().to_string(), rank: a.rank() },
                Some(def) => ExprRepr::Kernel(KernelRepr {
                    label: a.label().to_string(),
                    key: a.key().to_string(),
                    source: Box::new(ExprRepr::from_expr(&def.source.to_expr())),
                    target: Box::new(ExprRepr::from_expr(&def.target.to_expr())),
                    rows: def.basis.rows(),
                    cols: def.basis.cols(),
                    basis: def.basis.to_strings(),
                }),
            },
            ObjectExpr::Sum(c) => ExprRepr::Sum(c.iter().map(ExprRepr::from_expr).collect()),
            ObjectExpr::Tensor(c) => ExprRepr::Tensor(c.iter().map(ExprRepr::from_expr).collect()),
            ObjectExpr::SymPow(p, c) => ExprRepr::Sym(*p, Box::new(ExprRepr::from_expr(c))),
            ObjectExpr::ExtPow(q, c) => ExprRepr::Ext(*q, Box::new(ExprRepr::from_expr(c))),
        }
    }

    fn into_expr(self) -> Result<ObjectExpr, ObjError> {
        let many = |c: Vec<ExprRepr>| c.into_iter().map(ExprRepr::into_expr).collect::<Result<Vec<_>, _>>();
        Ok(match self {
            ExprRepr::Zero => ObjectExpr::Zero,
            ExprRepr::Atom { label, rank } => ObjectExpr::atom(&label, rank),
            ExprRepr::Sum(c) => ObjectExpr::Sum(many(c)?),
            ExprRepr::Tensor(c) => ObjectExpr::Tensor(many(c)?),
            ExprRepr::Sym(p, c) => ObjectExpr::sym(p, c.into_expr()?),
            ExprRepr::Ext(q, c) => ObjectExpr::ext(q, c.into_expr()?),
            ExprRepr::Kernel(k) => {
                let source = k.source.into_expr()?.normal_form()?;
                let target = k.target.into_expr()?.normal_form()?;
                let basis = Mat::<Poly>::from_strings(k.rows, k.cols, &k.basis)?;
                if basis.rows() != source.rank() {
                    return Err(ObjError::Dimension(format!("kernel basis has {} rows, source rank {}", basis.rows(), source.rank())));
                }
                let def = KernelDef { source, target, basis };
                ObjectExpr::Atom(Atom::kernel_with_key(&k.key, &k.label, def))
            }
        })
    }
}

impl Serialize for ObjectExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExprRepr::from_expr(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ObjectExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ExprRepr::deserialize(d)?.into_expr().map_err(D::Error::custom)
    }
}

impl Serialize for Obj {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_expr().serialize(s)
    }
}
