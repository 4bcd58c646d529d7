//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::matrix::Mat;
use super::ring::Q;
use super::AlgError;

/// Reduced row-echelon form, pivot columns and rank.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat<Q>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Mat<Q>) -> Rref {
    let (rows, cols) = m.dims();
    let mut a: Vec<Vec<Q>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pr, sel);
        let inv = Q::one() / &a[pr][c];
        if !inv.is_one() {
            for x in a[pr][c..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_support: Vec<(usize, Q)> =
            a[pr].iter().enumerate().skip(c).filter(|(_, p)| !p.is_zero()).map(|(i, p)| (i, p.clone())).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (i, p) in &pivot_support {
                row[*i] -= &factor * p;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    let rank = pivots.len();
    let reduced = Mat::from_vec(rows, cols, a.into_iter().flatten().collect()).expect("shape preserved");
    Rref { reduced, pivots, rank }
}

pub fn rank(m: &Mat<Q>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    rref(m).rank
}

/// Columns are the free-variable basis of the kernel, in free-column order.
pub fn kernel_basis_q(m: &Mat<Q>) -> Mat<Q> {
    let cols = m.cols();
    let r = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut k = Mat::zeros(cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, Q::one());
        for (i, &p) in r.pivots.iter().enumerate() {
            let v = r.reduced.get(i, f);
            if !v.is_zero() {
                k.set(p, j, -v.clone());
            }
        }
    }
    k
}

/// Some `x` with `a x = b`, free variables set to zero.
pub fn solve_q(a: &Mat<Q>, b: &Mat<Q>) -> Option<Mat<Q>> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let aug = Mat::hstack(&[a.clone(), b.clone()]).expect("rows agree");
    let r = rref(&aug);
    if r.pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    let mut x = Mat::zeros(a.cols(), b.cols());
    for (i, &p) in r.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.reduced.get(i, a.cols() + j).clone());
        }
    }
    Some(x)
}

pub fn inverse_q(a: &Mat<Q>) -> Option<Mat<Q>> {
    if a.rows() != a.cols() {
        return None;
    }
    let n = a.rows();
    let x = solve_q(a, &Mat::identity(n))?;
    if rank(a) == n {
        Some(x)
    } else {
        None
    }
}

/// Betti numbers of a bounded complex of rational vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessProfile {
    pub betti: Vec<usize>,
    pub is_exact: bool,
}

/// `maps[i]: C^i -> C^{i+1}`, matrices of size `dims[i+1] x dims[i]`.
pub fn exactness_profile(dims: &[usize], maps: &[Mat<Q>]) -> Result<ExactnessProfile, AlgError> {
    if maps.len() + 1 != dims.len() && !(dims.len() == 1 && maps.is_empty()) {
        return Err(AlgError::Dimension(format!("{} maps for {} terms", maps.len(), dims.len())));
    }
    for (i, d) in maps.iter().enumerate() {
        if d.dims() != (dims[i + 1], dims[i]) {
            return Err(AlgError::Dimension(format!("map {i} has shape {:?}", d.dims())));
        }
    }
    for i in 1..maps.len() {
        if !maps[i].dot(&maps[i - 1]).is_zero() {
            return Err(AlgError::NotAComplex { index: i });
        }
    }
    let ranks: Vec<usize> = maps.iter().map(rank).collect();
    let betti: Vec<usize> = (0..dims.len())
        .map(|i| {
            let out = if i < ranks.len() { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            dims[i] - out - inc
        })
        .collect();
    let is_exact = betti.iter().all(|&b| b == 0);
    Ok(ExactnessProfile { betti, is_exact })
}

pub fn is_exact_q(dims: &[usize], maps: &[Mat<Q>]) -> bool {
    exactness_profile(dims, maps).map(|p| p.is_exact).unwrap_or(false)
}

pub fn is_zero_q(m: &Mat<Q>) -> bool {
    m.entries().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ring::q;

    fn m(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_i64_rows(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&m(&[&[1, 2], &[2, 4]])).rank, 1);
        assert_eq!(rref(&Mat::<Q>::identity(3)).rank, 3);
        assert_eq!(rref(&m(&[&[0]])).rank, 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis_q(&m(&[&[1, 1]]));
        assert_eq!(k, m(&[&[-1], &[1]]));
        assert_eq!(kernel_basis_q(&m(&[&[2, 1], &[1, 1]])).cols(), 0);
        assert_eq!(kernel_basis_q(&Mat::zeros(2, 2)), Mat::identity(2));
    }

    #[test]
    fn exactness_examples() {
        let p = exactness_profile(&[1, 1], &[m(&[&[1]])]).unwrap();
        assert!(p.is_exact);
        let p = exactness_profile(&[1], &[]).unwrap();
        assert_eq!(p.betti, vec![1]);
        assert!(!p.is_exact);
        let e = exactness_profile(&[1, 1, 1], &[m(&[&[1]]), m(&[&[1]])]);
        assert!(matches!(e, Err(AlgError::NotAComplex { .. })));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse_q(&a).unwrap();
        assert!(a.dot(&inv).is_identity());
        assert!(solve_q(&m(&[&[1, 1], &[1, 1]]), &m(&[&[1], &[2]])).is_none());
        assert_eq!(solve_q(&m(&[&[2]]), &m(&[&[3]])).unwrap().get(0, 0), &(q(3) / q(2)));
    }
}
