//! Ordered bases of symmetric and exterior powers: weakly / strictly
//! increasing index tuples in lexicographic order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct TupleTable {
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TupleTable {
    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

type Cache = Mutex<HashMap<(bool, usize, usize), Arc<TupleTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Increasing `len`-tuples over `0..rank`; strict when `strict`.
pub fn table(strict: bool, len: usize, rank: usize) -> Arc<TupleTable> {
    let key = (strict, len, rank);
    if let Some(t) = cache().lock().expect("tuple cache").get(&key) {
        return t.clone();
    }
    let mut tuples = Vec::new();
    let mut cur = Vec::with_capacity(len);
    build(strict, len, rank, 0, &mut cur, &mut tuples);
    let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let t = Arc::new(TupleTable { tuples, index });
    cache().lock().expect("tuple cache").insert(key, t.clone());
    t
}

fn build(strict: bool, len: usize, rank: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for x in start..rank {
        cur.push(x);
        build(strict, len, rank, if strict { x + 1 } else { x }, cur, out);
        cur.pop();
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Sign of the permutation sorting `v` (distinct entries), or `None` on a repeat.
pub fn sort_sign(v: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes_match_binomials() {
        for r in 0..5 {
            for p in 0..4 {
                assert_eq!(table(true, p, r).len(), binomial(r, p));
                if r > 0 {
                    assert_eq!(table(false, p, r).len(), binomial(r + p - 1, p));
                }
            }
        }
        assert_eq!(table(false, 2, 2).tuples, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn sorting_sign() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_sign(&mut v), Some(1));
        assert_eq!(v, vec![0, 1, 2]);
        assert_eq!(sort_sign(&mut [1, 0]), Some(-1));
        assert_eq!(sort_sign(&mut [1, 1]), None);
    }
}
