//! Kernels and linear solves over polynomial rings by degree-truncated
//! linear algebra, with fiber certification at random rational points.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{kernel_basis_q, rank, solve_q};
use super::matrix::Mat;
use super::poly::{Mono, Poly};
use super::ring::Q;
use super::{AlgError, Ring};
use num_traits::One;

/// Hard cap on the degree searched by [`poly_kernel`].
pub const DEGREE_CAP: u32 = 16;

const GENERIC_RANK_SEED: u64 = 0x5eed_0f_f1be5;

/// Random rational points avoiding the face values 0 and 1.
pub fn random_points(rng: &mut ChaCha8Rng, nvars: usize, count: usize) -> Vec<Vec<Q>> {
    (0..count)
        .map(|_| {
            (0..nvars)
                .map(|_| loop {
                    let num: i64 = rng.gen_range(-40..=40);
                    let den: i64 = rng.gen_range(1..=9);
                    let v = Q::new(BigInt::from(num), BigInt::from(den));
                    if v != Q::from_integer(0.into()) && v != Q::from_integer(1.into()) {
                        break v;
                    }
                })
                .collect()
        })
        .collect()
}

/// Rank over the fraction field, estimated as the maximum fiber rank at
/// seeded random points (exact for constant matrices).
pub fn generic_rank(m: &Mat<Poly>) -> usize {
    if let Some(c) = m.constant_part() {
        return rank(&c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_RANK_SEED);
    let nv = m.var_count();
    random_points(&mut rng, nv, 4).iter().map(|p| rank(&m.eval_point(p))).max().unwrap_or(0)
}

/// Coefficient-space linearization of `x -> M x` for vectors of polynomials
/// of degree at most `d`.
struct Linearized {
    monos: Vec<Mono>,
    system: Mat<Q>,
}

fn linearize(m: &Mat<Poly>, nvars: usize, d: u32) -> Linearized {
    let monos = Mono::all_up_to(nvars, d);
    let out_monos = Mono::all_up_to(nvars, d + m.max_degree());
    let out_index: HashMap<&Mono, usize> = out_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let nm = monos.len();
    let mut system = Mat::zeros(m.rows() * out_monos.len(), m.cols() * nm);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (g, a) in m.get(i, j).terms() {
                for (ai, alpha) in monos.iter().enumerate() {
                    let beta = alpha.mul(g);
                    let row = i * out_monos.len() + out_index[&beta];
                    system.add_at(row, j * nm + ai, a);
                }
            }
        }
    }
    Linearized { monos, system }
}

fn vector_from_coeffs(coeffs: &[Q], len: usize, monos: &[Mono]) -> Vec<Poly> {
    let nm = monos.len();
    (0..len)
        .map(|j| Poly::from_terms(monos.iter().enumerate().map(|(ai, a)| (a.clone(), coeffs[j * nm + ai].clone()))))
        .collect()
}

fn coeffs_from_vector(v: &[Poly], monos: &[Mono]) -> Vec<Q> {
    let mut out = Vec::with_capacity(v.len() * monos.len());
    for p in v {
        for a in monos {
            out.push(p.coeff(a));
        }
    }
    out
}

fn columns_to_matrix(rows: usize, cols: &[Vec<Poly>]) -> Mat<Poly> {
    let mut k = Mat::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, p) in c.iter().enumerate() {
            k.set(i, j, p.clone());
        }
    }
    k
}

fn certified(m: &Mat<Poly>, k: &Mat<Poly>, points: &[Vec<Q>]) -> bool {
    points.iter().all(|p| {
        let expected = m.cols() - rank(&m.eval_point(p));
        let got = if k.cols() == 0 { 0 } else { rank(&k.eval_point(p)) };
        got == expected
    })
}

/// Generators of the kernel of `m` over the polynomial ring.
///
/// Searches degrees `0..=bound` layer by layer, keeping each new solution
/// that is not already in the module generated by earlier ones, and stops
/// as soon as the generators span the kernel at every certification point.
/// The bound doubles from `degree_bound` until [`DEGREE_CAP`].
pub fn poly_kernel(
    m: &Mat<Poly>,
    degree_bound: u32,
    certification_points: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Mat<Poly>, AlgError> {
    let nvars = m.var_count();
    let cols = m.cols();
    if let Some(c) = m.constant_part() {
        return Ok(kernel_basis_q(&c).to_poly());
    }
    let points = random_points(rng, nvars, certification_points.max(1));
    let mut bound = degree_bound.max(1);
    loop {
        let mut gens: Vec<Vec<Poly>> = Vec::new();
        for d in 0..=bound {
            let lin = linearize(m, nvars, d);
            let sol = kernel_basis_q(&lin.system);
            // Module span of the generators found so far, truncated at degree d.
            let mut span_rows: Vec<Vec<Q>> = Vec::new();
            for g in &gens {
                let gdeg = g.iter().map(Poly::degree).max().unwrap_or(0);
                if gdeg > d {
                    continue;
                }
                for shift in Mono::all_up_to(nvars, d - gdeg) {
                    let shifted: Vec<Poly> = g.iter().map(|p| p.times(&Poly::monomial(shift.clone(), Q::one()))).collect();
                    span_rows.push(coeffs_from_vector(&shifted, &lin.monos));
                }
            }
            let width = cols * lin.monos.len();
            let mut current = rank_of_rows(&span_rows, width);
            for j in 0..sol.cols() {
                let v = sol.column(j);
                span_rows.push(v.clone());
                let r = rank_of_rows(&span_rows, width);
                if r > current {
                    current = r;
                    gens.push(vector_from_coeffs(&v, cols, &lin.monos));
                } else {
                    span_rows.pop();
                }
            }
            let k = columns_to_matrix(cols, &gens);
            if certified(m, &k, &points) {
                debug_assert!(m.dot(&k).is_zero());
                return Ok(k);
            }
        }
        if bound >= DEGREE_CAP {
            return Err(AlgError::CertificationFailed { degree: bound });
        }
        bound = (bound * 2).min(DEGREE_CAP);
    }
}

fn rank_of_rows(rows: &[Vec<Q>], width: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = Mat::from_vec(rows.len(), width, rows.concat()).expect("uniform rows");
    rank(&m)
}

/// Outcome of a degree-truncated membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Solution(Mat<Poly>),
    NotInSpan,
}

/// Solves `k x = v` with entries of `x` of degree at most `degree_bound`.
pub fn membership_solve(k: &Mat<Poly>, v: &Mat<Poly>, degree_bound: u32) -> Membership {
    assert_eq!(k.rows(), v.rows(), "membership_solve: row mismatch");
    let nvars = k.var_count().max(v.var_count());
    if let (Some(kc), Some(vc)) = (k.constant_part(), v.constant_part()) {
        return match solve_q(&kc, &vc) {
            Some(x) => Membership::Solution(x.to_poly()),
            None => Membership::NotInSpan,
        };
    }
    let lin = linearize(k, nvars, degree_bound);
    let out_monos = Mono::all_up_to(nvars, degree_bound + k.max_degree());
    if v.max_degree() > degree_bound + k.max_degree() {
        return Membership::NotInSpan;
    }
    let mut rhs = Mat::zeros(lin.system.rows(), v.cols());
    for c in 0..v.cols() {
        for i in 0..v.rows() {
            for (oi, b) in out_monos.iter().enumerate() {
                let coef = v.get(i, c).coeff(b);
                rhs.set(i * out_monos.len() + oi, c, coef);
            }
        }
    }
    match solve_q(&lin.system, &rhs) {
        None => Membership::NotInSpan,
        Some(x) => {
            let nm = lin.monos.len();
            let mut out = Mat::zeros(k.cols(), v.cols());
            for c in 0..v.cols() {
                let col = x.column(c);
                for j in 0..k.cols() {
                    let p = Poly::from_terms(lin.monos.iter().enumerate().map(|(ai, a)| (a.clone(), col[j * nm + ai].clone())));
                    out.set(j, c, p);
                }
            }
            Membership::Solution(out)
        }
    }
}

/// Solves `k x = v`, raising the degree bound up to the cap.
pub fn solve_poly(k: &Mat<Poly>, v: &Mat<Poly>) -> Option<Mat<Poly>> {
    let mut bound = v.max_degree().max(1);
    loop {
        if let Membership::Solution(x) = membership_solve(k, v, bound) {
            return Some(x);
        }
        if bound >= DEGREE_CAP {
            return None;
        }
        bound = (bound * 2).min(DEGREE_CAP);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse_str(s).unwrap()
    }

    #[test]
    fn kernel_of_t_and_t_minus_one() {
        let m = Mat::from_rows(vec![vec![p("t1"), p("t1 - 1")]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = poly_kernel(&m, 2, 20, &mut rng).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(m.dot(&k).is_zero());
        // Proportional to (t-1, -t).
        let expected = Mat::from_rows(vec![vec![p("t1 - 1")], vec![p("-t1")]]).unwrap();
        let ratio = k.get(0, 0).coeff(&Mono::var(1, 1));
        assert_eq!(k, expected.scale(&Poly::constant(ratio)));
    }

    #[test]
    fn trivial_kernels() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let inv = Mat::<Poly>::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(poly_kernel(&inv, 1, 5, &mut rng).unwrap().cols(), 0);
        let zero = Mat::<Poly>::zeros(1, 1);
        assert_eq!(poly_kernel(&zero, 1, 5, &mut rng).unwrap(), Mat::identity(1));
    }

    #[test]
    fn membership_examples() {
        let k = Mat::from_rows(vec![vec![p("t1")], vec![p("1")]]).unwrap();
        let v = Mat::from_rows(vec![vec![p("2*t1")], vec![p("2")]]).unwrap();
        assert_eq!(membership_solve(&k, &v, 2), Membership::Solution(Mat::from_rows(vec![vec![p("2")]]).unwrap()));
        let k = Mat::from_rows(vec![vec![p("t1")]]).unwrap();
        let v = Mat::from_rows(vec![vec![p("1")]]).unwrap();
        assert_eq!(membership_solve(&k, &v, 4), Membership::NotInSpan);
        let id = Mat::<Poly>::identity(2);
        let v = Mat::from_rows(vec![vec![p("t1^2")], vec![p("3")]]).unwrap();
        assert_eq!(membership_solve(&id, &v, 2), Membership::Solution(v.clone()));
    }
}
