use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::normal::Obj;
use super::tuples::{binomial, table};
use crate::exactalg::{Mat, Poly};

/// Defining data of a kernel atom: columns of `basis` span the kernel of
/// a map `source -> target`, written in the basis of `source`.
#[derive(Clone, Debug)]
pub struct KernelDef {
    pub source: Obj,
    pub target: Obj,
    pub basis: Mat<Poly>,
}

#[derive(Debug)]
struct AtomData {
    key: String,
    label: String,
    rank: usize,
    kernel: Option<KernelDef>,
}

/// A free module with a fixed ordered basis. Equality and order go by key.
#[derive(Clone)]
pub struct Atom(Arc<AtomData>);

impl Atom {
    pub fn named(label: &str, rank: usize) -> Atom {
        Atom(Arc::new(AtomData { key: format!("{label}#{rank}"), label: label.to_string(), rank, kernel: None }))
    }

    /// Kernel atom keyed by its defining data; `label` is cosmetic.
    pub fn kernel(label: &str, def: KernelDef) -> Atom {
        let rank = def.basis.cols();
        let mut h = Sha256::new();
        h.update(def.source.key().as_bytes());
        h.update(b"|");
        h.update(def.target.key().as_bytes());
        h.update(b"|");
        h.update(def.basis.key_string().as_bytes());
        let digest = h.finalize();
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        Atom(Arc::new(AtomData { key: format!("ker:{hex}#{rank}"), label: label.to_string(), rank, kernel: Some(def) }))
    }

    /// Kernel atom restored from serialized data, trusting the stored key.
    pub fn kernel_with_key(key: &str, label: &str, def: KernelDef) -> Atom {
        let rank = def.basis.cols();
        Atom(Arc::new(AtomData { key: key.to_string(), label: label.to_string(), rank, kernel: Some(def) }))
    }

    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn kernel_def(&self) -> Option<&KernelDef> {
        self.0.kernel.as_ref()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.rank()).map(|i| format!("{}_{i}", self.label())).collect()
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.key == other.0.key
    }
}
impl Eq for Atom {}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state);
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key.cmp(&other.0.key)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.key)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.label)
    }
}

/// How an atom enters a tensor monomial. `Sym(1)` and `Ext(1)` are kept
/// apart from `Bare` so Koszul degrees survive normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Power {
    Bare,
    Sym(usize),
    Ext(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub atom: Atom,
    pub power: Power,
}

impl Factor {
    pub fn bare(atom: &Atom) -> Factor {
        Factor { atom: atom.clone(), power: Power::Bare }
    }

    pub fn sym(atom: &Atom, p: usize) -> Factor {
        Factor { atom: atom.clone(), power: Power::Sym(p) }
    }

    pub fn ext(atom: &Atom, q: usize) -> Factor {
        Factor { atom: atom.clone(), power: Power::Ext(q) }
    }

    pub fn rank(&self) -> usize {
        let r = self.atom.rank();
        match self.power {
            Power::Bare => r,
            Power::Sym(0) => 1,
            Power::Sym(p) => binomial(r + p - 1, p),
            Power::Ext(q) => binomial(r, q),
        }
    }

    /// Exterior degree, the parity used for graded swaps.
    pub fn odd_degree(&self) -> usize {
        match self.power {
            Power::Ext(q) => q,
            _ => 0,
        }
    }

    /// Trivial factors (`S^0`, `Λ^0`) are the unit and get dropped.
    pub fn is_unit(&self) -> bool {
        matches!(self.power, Power::Sym(0) | Power::Ext(0))
    }

    /// Basis element `i` as an index tuple over the atom basis.
    pub fn tuple(&self, i: usize) -> Vec<usize> {
        match self.power {
            Power::Bare => vec![i],
            Power::Sym(p) => table(false, p, self.atom.rank()).tuples[i].clone(),
            Power::Ext(q) => table(true, q, self.atom.rank()).tuples[i].clone(),
        }
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        match self.power {
            Power::Bare => (t.len() == 1 && t[0] < self.atom.rank()).then(|| t[0]),
            Power::Sym(p) => table(false, p, self.atom.rank()).position(t),
            Power::Ext(q) => table(true, q, self.atom.rank()).position(t),
        }
    }

    pub fn key(&self) -> String {
        match self.power {
            Power::Bare => self.atom.key().to_string(),
            Power::Sym(p) => format!("S{p}({})", self.atom.key()),
            Power::Ext(q) => format!("L{q}({})", self.atom.key()),
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        let atom_labels = self.atom.basis_labels();
        let join = |sep: &str, t: Vec<usize>| {
            let parts: Vec<&str> = t.iter().map(|&i| atom_labels[i].as_str()).collect();
            format!("({})", parts.join(sep))
        };
        match self.power {
            Power::Bare => atom_labels.clone(),
            Power::Sym(_) => (0..self.rank()).map(|i| join("·", self.tuple(i))).collect(),
            Power::Ext(_) => (0..self.rank()).map(|i| join("∧", self.tuple(i))).collect(),
        }
    }
}
