//! Exact linear algebra over the rationals and over polynomial rings.

pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod polyalg;
pub mod ring;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use linalg::{exactness_profile, inverse_q, kernel_basis_q, rank, rref, solve_q, ExactnessProfile, Rref};
pub use matrix::{Mat, PolyMatrix, QMatrix};
pub use poly::{Mono, Poly};
pub use polyalg::{generic_rank, membership_solve, poly_kernel, random_points, Membership};
pub use ring::{q, qf, Ring, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a complex: composite at position {index} is nonzero")]
    NotAComplex { index: usize },
    #[error("kernel certification failed up to degree {degree}")]
    CertificationFailed { degree: u32 },
    #[error("variable t{0} out of range")]
    Variable(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not invertible")]
    Singular,
}

/// Seed used for kernel certification points inside cube constructions.
pub const CERTIFICATION_SEED: u64 = 0xce47_1f1e;
/// Certification points used by cube-level kernels.
pub const CERTIFICATION_POINTS: usize = 6;

/// Entry rings on which cube constructions run: the rationals and
/// polynomial rings over them.
pub trait ExactRing: Ring {
    /// Generating set of the kernel (a basis in every case arising here).
    fn kernel(m: &Mat<Self>) -> Result<Mat<Self>, AlgError>;
    /// Rank over the fraction field.
    fn rank_of(m: &Mat<Self>) -> usize;
    /// Some `x` with `a x = b`.
    fn solve(a: &Mat<Self>, b: &Mat<Self>) -> Option<Mat<Self>>;
    /// Rational matrices at which exactness is checked: the matrix itself
    /// for constants, fibers at sample points otherwise.
    fn fibers(ms: &[&Mat<Self>]) -> Vec<Vec<Mat<Q>>>;
    fn to_poly(m: &Mat<Self>) -> Mat<Poly>;

    fn inverse(m: &Mat<Self>) -> Option<Mat<Self>> {
        if m.rows() != m.cols() {
            return None;
        }
        let x = Self::solve(m, &Mat::identity(m.rows()))?;
        if x.dot(m).is_identity() {
            Some(x)
        } else {
            None
        }
    }
}

impl ExactRing for Q {
    fn kernel(m: &Mat<Q>) -> Result<Mat<Q>, AlgError> {
        Ok(kernel_basis_q(m))
    }
    fn rank_of(m: &Mat<Q>) -> usize {
        rank(m)
    }
    fn solve(a: &Mat<Q>, b: &Mat<Q>) -> Option<Mat<Q>> {
        solve_q(a, b)
    }
    fn fibers(ms: &[&Mat<Q>]) -> Vec<Vec<Mat<Q>>> {
        vec![ms.iter().map(|m| (*m).clone()).collect()]
    }
    fn to_poly(m: &Mat<Q>) -> Mat<Poly> {
        m.to_poly()
    }
}

impl ExactRing for Poly {
    fn kernel(m: &Mat<Poly>) -> Result<Mat<Poly>, AlgError> {
        let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATION_SEED);
        let start = 1 + m.max_degree();
        poly_kernel(m, start, CERTIFICATION_POINTS, &mut rng)
    }
    fn rank_of(m: &Mat<Poly>) -> usize {
        generic_rank(m)
    }
    fn solve(a: &Mat<Poly>, b: &Mat<Poly>) -> Option<Mat<Poly>> {
        polyalg::solve_poly(a, b)
    }
    fn fibers(ms: &[&Mat<Poly>]) -> Vec<Vec<Mat<Q>>> {
        let nvars = ms.iter().map(|m| m.var_count()).max().unwrap_or(0);
        if nvars == 0 {
            return vec![ms.iter().map(|m| m.eval_point(&[])).collect()];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATION_SEED ^ 0x11);
        let mut points = vec![vec![Q::from_integer(0.into()); nvars], vec![Q::from_integer(1.into()); nvars]];
        points.extend(random_points(&mut rng, nvars, 3));
        points.iter().map(|p| ms.iter().map(|m| m.eval_point(p)).collect()).collect()
    }
    fn to_poly(m: &Mat<Poly>) -> Mat<Poly> {
        m.clone()
    }
}
