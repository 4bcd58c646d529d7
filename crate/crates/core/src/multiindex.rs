//! Multi-index calculus and the index sets used by the Adams and
//! transgression constructions.
//!
//! Positions are 1-based in every public signature.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("position {pos} out of range for length {len}")]
    Position { pos: usize, len: usize },
    #[error("multi-index {0} has an entry outside {{0,1}}")]
    NotBinary(MultiIndex),
    #[error("length mismatch: {0} vs {1}")]
    Length(usize, usize),
    #[error("invalid range {r1}..={r2} in length {n}")]
    Range { r1: usize, r2: usize, n: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Finite sequence of naturals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (pos, e) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[usize; N]> for MultiIndex {
    fn from(v: [usize; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = usize;
    /// 1-based access.
    fn index(&self, pos: usize) -> &usize {
        &self.0[pos - 1]
    }
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn constant(n: usize, value: usize) -> Self {
        MultiIndex(vec![value; n])
    }

    /// Unit multi-index with a single 1 at position `pos`.
    pub fn unit(n: usize, pos: usize) -> Self {
        let mut v = vec![0; n];
        v[pos - 1] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// 1-based read; `None` when out of range.
    pub fn get(&self, pos: usize) -> Option<usize> {
        if pos == 0 {
            None
        } else {
            self.0.get(pos - 1).copied()
        }
    }

    pub fn with(&self, pos: usize, value: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[pos - 1] = value;
        MultiIndex(v)
    }

    fn check_pos(&self, pos: usize, len: usize) -> Result<(), IndexError> {
        if pos == 0 || pos > len {
            Err(IndexError::Position { pos, len: self.len() })
        } else {
            Ok(())
        }
    }

    fn check_binary(&self) -> Result<(), IndexError> {
        if self.0.iter().all(|&e| e <= 1) {
            Ok(())
        } else {
            Err(IndexError::NotBinary(self.clone()))
        }
    }

    /// 0 where the entry is 0, 1 elsewhere.
    pub fn characteristic(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&e| usize::from(e != 0)).collect())
    }

    /// Sum of all entries, or of the first `upto` entries.
    pub fn norm(&self, upto: Option<usize>) -> Result<usize, IndexError> {
        match upto {
            None => Ok(self.0.iter().sum()),
            Some(u) if u <= self.len() => Ok(self.0[..u].iter().sum()),
            Some(u) => Err(IndexError::Position { pos: u, len: self.len() }),
        }
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Deletes entry `l`.
    pub fn face(&self, l: usize) -> Result<MultiIndex, IndexError> {
        self.check_pos(l, self.len())?;
        let mut v = self.0.clone();
        v.remove(l - 1);
        Ok(MultiIndex(v))
    }

    /// Inserts `m` so that it ends up at position `l`.
    pub fn degeneracy(&self, l: usize, m: usize) -> Result<MultiIndex, IndexError> {
        self.check_pos(l, self.len() + 1)?;
        let mut v = self.0.clone();
        v.insert(l - 1, m);
        Ok(MultiIndex(v))
    }

    /// Replaces entry `l` by `m`.
    pub fn substitution(&self, l: usize, m: usize) -> Result<MultiIndex, IndexError> {
        self.check_pos(l, self.len())?;
        Ok(self.with(l, m))
    }

    /// Deletes the entries at the given ascending positions.
    pub fn face_many(&self, positions: &[usize]) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .enumerate()
                .filter(|(p, _)| !positions.contains(&(p + 1)))
                .map(|(_, &e)| e)
                .collect(),
        )
    }

    /// Replaces the entries at `positions` by the entries of `values`.
    pub fn substitute_many(&self, positions: &[usize], values: &[usize]) -> MultiIndex {
        let mut v = self.0.clone();
        for (p, &val) in positions.iter().zip(values) {
            v[p - 1] = val;
        }
        MultiIndex(v)
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MultiIndex(v)
    }

    pub fn complement(&self) -> Result<MultiIndex, IndexError> {
        self.check_binary()?;
        Ok(MultiIndex(self.0.iter().map(|&e| 1 - e).collect()))
    }

    fn binary_pair(&self, other: &MultiIndex) -> Result<(), IndexError> {
        self.check_binary()?;
        other.check_binary()?;
        if self.len() != other.len() {
            return Err(IndexError::Length(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn meet(&self, other: &MultiIndex) -> Result<MultiIndex, IndexError> {
        self.binary_pair(other)?;
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    pub fn join(&self, other: &MultiIndex) -> Result<MultiIndex, IndexError> {
        self.binary_pair(other)?;
        Ok(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect()))
    }

    pub fn lex_compare(&self, other: &MultiIndex) -> Result<Ordering, IndexError> {
        if self.len() != other.len() {
            return Err(IndexError::Length(self.len(), other.len()));
        }
        Ok(self.0.cmp(&other.0))
    }

    pub fn pointwise_geq(&self, other: &MultiIndex) -> Result<bool, IndexError> {
        if self.len() != other.len() {
            return Err(IndexError::Length(self.len(), other.len()));
        }
        Ok(self.geq(other))
    }

    /// Unchecked pointwise comparison for equal lengths.
    pub fn geq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Entrywise difference; panics on underflow.
    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: usize) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| a * c).collect())
    }

    /// Positions (ascending) whose entry equals `value`.
    pub fn positions_of(&self, value: usize) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == value)
            .map(|(p, _)| p + 1)
            .collect()
    }
}

/// Entry `i` is 1 iff `r1 <= i <= r2`.
pub fn ones_range(r1: usize, r2: usize, n: usize) -> Result<MultiIndex, IndexError> {
    if r1 == 0 || r1 > r2 || r2 > n {
        return Err(IndexError::Range { r1, r2, n });
    }
    Ok(MultiIndex((1..=n).map(|i| usize::from(r1 <= i && i <= r2)).collect()))
}

/// Positions where `j` equals 1, and their count.
pub fn u_and_s(j: &MultiIndex) -> (MultiIndex, usize) {
    let u = j.positions_of(1);
    let s = u.len();
    (MultiIndex(u), s)
}

/// Among the positions where `j` equals 1: those where `i` is `k-1` (`w`)
/// and the rest (`v`).
pub fn w_and_v(j: &MultiIndex, i: &MultiIndex, k: usize) -> (MultiIndex, MultiIndex) {
    let mut w = Vec::new();
    let mut v = Vec::new();
    for pos in j.positions_of(1) {
        if i[pos] + 1 == k {
            w.push(pos);
        } else {
            v.push(pos);
        }
    }
    (MultiIndex(w), MultiIndex(v))
}

/// Strictly increasing `(n-m)`-tuples in `1..=n`, in lexicographic order.
pub fn j_set(n: usize, m: usize) -> Result<Vec<MultiIndex>, IndexError> {
    if m > n {
        return Err(IndexError::Parameter(format!("m={m} exceeds n={n}")));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    subsets_rec(1, n, n - m, &mut cur, &mut out);
    Ok(out)
}

fn subsets_rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
    if cur.len() == size {
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for x in start..=n {
        if n - x + 1 < size - cur.len() {
            break;
        }
        cur.push(x);
        subsets_rec(x + 1, n, size, cur, out);
        cur.pop();
    }
}

/// `(i_{u_1}, i_{u_2} - 1, ..., i_{u_l} - l + 1)` over the positions `u(j)`.
pub fn i_of_j(i: &MultiIndex, j: &MultiIndex) -> Result<MultiIndex, IndexError> {
    if i.len() != j.len() {
        return Err(IndexError::Length(i.len(), j.len()));
    }
    let (u, _) = u_and_s(j);
    let mut out = Vec::with_capacity(u.len());
    for (l, &pos) in u.entries().iter().enumerate() {
        let e = i[pos]
            .checked_sub(l)
            .ok_or_else(|| IndexError::Parameter(format!("i_of_j underflow at position {pos}")))?;
        out.push(e);
    }
    Ok(MultiIndex(out))
}

/// All multi-indices in `{0,..,base-1}^n` in lexicographic order.
pub fn grid(n: usize, base: usize) -> Vec<MultiIndex> {
    box_grid(&vec![base - 1; n])
}

/// All multi-indices `x` with `0 <= x_i <= bounds_i`, lexicographic.
pub fn box_grid(bounds: &[usize]) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex(Vec::with_capacity(bounds.len()))];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b + 1));
        for x in &out {
            for e in 0..=b {
                let mut y = x.0.clone();
                y.push(e);
                next.push(MultiIndex(y));
            }
        }
        out = next;
    }
    out
}

/// Corners `{0,2}^n` in lexicographic order.
pub fn corners(n: usize) -> Vec<MultiIndex> {
    grid(n, 2).into_iter().map(|x| x.scale(2)).collect()
}

/// Element of the partition index set: parts `k_1..k_r` with companion
/// vectors in `{0,1}^n`, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionTuple {
    pub parts: Vec<usize>,
    pub companions: Vec<MultiIndex>,
}

impl PartitionTuple {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `Σ k_s n^s`.
    pub fn weighted_sum(&self, n: usize) -> MultiIndex {
        let mut acc = MultiIndex::zeros(n);
        for (k, c) in self.parts.iter().zip(&self.companions) {
            acc = acc.add(&c.scale(*k));
        }
        acc
    }

    fn sort_key(&self) -> (usize, &Vec<usize>, &Vec<MultiIndex>) {
        (self.parts.len(), &self.parts, &self.companions)
    }
}

/// All tuples with `Σ parts = k` and `Σ k_s n^s = m`, sorted by
/// (length, parts, companions).
pub fn lambda_set(k: usize, m: &MultiIndex) -> Vec<PartitionTuple> {
    let n = m.len();
    let binaries = grid(n, 2);
    let mut out = Vec::new();
    let mut parts = Vec::new();
    let mut comps = Vec::new();
    lambda_rec(k, m.clone(), &binaries, 0, &mut parts, &mut comps, &mut out);
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

fn lambda_rec(
    k_left: usize,
    m_left: MultiIndex,
    binaries: &[MultiIndex],
    next: usize,
    parts: &mut Vec<usize>,
    comps: &mut Vec<MultiIndex>,
    out: &mut Vec<PartitionTuple>,
) {
    if k_left == 0 {
        if m_left.total() == 0 {
            out.push(PartitionTuple { parts: parts.clone(), companions: comps.clone() });
        }
        return;
    }
    for (idx, c) in binaries.iter().enumerate().skip(next) {
        for part in 1..=k_left {
            let used = c.scale(part);
            if !m_left.geq(&used) {
                break;
            }
            parts.push(part);
            comps.push(c.clone());
            lambda_rec(k_left - part, m_left.sub(&used), binaries, idx + 1, parts, comps, out);
            parts.pop();
            comps.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn basic_operations() {
        assert_eq!(mi(&[0, 3, 1]).characteristic(), mi(&[0, 1, 1]));
        assert_eq!(mi(&[2, 5, 7]).norm(None).unwrap(), 14);
        assert_eq!(mi(&[2, 5, 7]).norm(Some(2)).unwrap(), 7);
        assert_eq!(mi(&[]).norm(None).unwrap(), 0);
        assert!(mi(&[1]).norm(Some(2)).is_err());
        assert_eq!(mi(&[2, 5, 7]).face(2).unwrap(), mi(&[2, 7]));
        assert_eq!(mi(&[2, 7]).degeneracy(2, 4).unwrap(), mi(&[2, 4, 7]));
        assert_eq!(mi(&[2, 5, 7]).substitution(2, 0).unwrap(), mi(&[2, 0, 7]));
        assert!(mi(&[2]).face(2).is_err());
        assert_eq!(mi(&[1, 0, 1]).complement().unwrap(), mi(&[0, 1, 0]));
        assert_eq!(mi(&[1, 0, 1]).meet(&mi(&[1, 1, 0])).unwrap(), mi(&[1, 0, 0]));
        assert_eq!(mi(&[1, 0, 1]).join(&mi(&[1, 1, 0])).unwrap(), mi(&[1, 1, 1]));
        assert!(mi(&[2]).complement().is_err());
    }

    #[test]
    fn orders_and_ranges() {
        assert_eq!(mi(&[0, 1]).lex_compare(&mi(&[1, 0])).unwrap(), Ordering::Less);
        assert!(mi(&[2, 1]).pointwise_geq(&mi(&[1, 1])).unwrap());
        assert!(!mi(&[0, 2]).pointwise_geq(&mi(&[1, 0])).unwrap());
        assert_eq!(ones_range(2, 3, 4).unwrap(), mi(&[0, 1, 1, 0]));
        assert_eq!(ones_range(1, 1, 1).unwrap(), mi(&[1]));
        assert_eq!(ones_range(1, 3, 3).unwrap(), mi(&[1, 1, 1]));
        assert!(ones_range(3, 2, 4).is_err());
    }

    #[test]
    fn u_w_v_and_j_sets() {
        assert_eq!(u_and_s(&mi(&[1, 0, 2, 1])), (mi(&[1, 4]), 2));
        assert_eq!(u_and_s(&mi(&[0, 2])), (mi(&[]), 0));
        assert_eq!(w_and_v(&mi(&[1, 1]), &mi(&[1, 0]), 2), (mi(&[1]), mi(&[2])));
        assert_eq!(w_and_v(&mi(&[1]), &mi(&[2]), 3), (mi(&[1]), mi(&[])));
        assert_eq!(j_set(3, 1).unwrap(), vec![mi(&[1, 2]), mi(&[1, 3]), mi(&[2, 3])]);
        assert_eq!(j_set(2, 2).unwrap(), vec![mi(&[])]);
        assert!(j_set(1, 2).is_err());
        assert_eq!(i_of_j(&mi(&[2, 5]), &mi(&[1, 1])).unwrap(), mi(&[2, 4]));
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_set(2, &mi(&[1]));
        assert_eq!(l, vec![PartitionTuple { parts: vec![1, 1], companions: vec![mi(&[0]), mi(&[1])] }]);
        let l = lambda_set(2, &mi(&[1, 1]));
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].companions, vec![mi(&[0, 0]), mi(&[1, 1])]);
        assert_eq!(l[1].companions, vec![mi(&[0, 1]), mi(&[1, 0])]);
        let l = lambda_set(2, &mi(&[2]));
        assert_eq!(l, vec![PartitionTuple { parts: vec![2], companions: vec![mi(&[1])] }]);
    }
}
