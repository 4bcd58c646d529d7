use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tcomp::t_of_cube;
use super::tr::{to_poly_grid, Transgressions};
use super::*;
use crate::cubes::{differential, CubeChain};
use crate::cubes::Grid;
use crate::exactalg::{membership_solve, poly_kernel, q, random_points, rank, Mat, Membership, Poly, Ring, Q};
use num_traits::One;
use crate::splitcubes::random_split_cube;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn generated_cubes_have_canonical_kernels() {
    let mut r = rng(1);
    for n in 1..=3 {
        for _ in 0..4 {
            let s = canonical_kernel_cube(&mut r, n, 2, "E");
            s.cube.validate().unwrap();
            s.validate().unwrap();
            assert!(has_canonical_kernels(&s.cube));
        }
    }
}

#[test]
fn tr1_faces() {
    let mut r = rng(2);
    for _ in 0..10 {
        let s = random_split_cube::<Q>(&mut r, 1, 3, "E");
        let seq = to_poly_grid(&s.cube);
        let t = tr1(&seq).unwrap();
        let (at0, _) = subobject::evaluate_obj(&t.object, 1, false).unwrap();
        assert_eq!(at0, *s.cube.vertex(&[1]));
        assert!(t.left.dot(&t.basis).is_identity());
    }
}

#[test]
fn lambda_outputs_have_canonical_kernels_and_commute_with_d() {
    let mut r = rng(3);
    for n in 1..=2 {
        for _ in 0..3 {
            let s = random_split_cube::<Q>(&mut r, n, 2, "E");
            let x = CubeChain::single(1, s.cube.clone());
            let l = lambda(&x);
            for (_, g) in l.terms() {
                g.validate().unwrap();
                assert!(has_canonical_kernels(g), "{g:?}");
            }
            let nonzero = |y: &CubeChain<Q>| y.filter(|g| !g.is_zero());
            assert_eq!(nonzero(&differential(&l)), nonzero(&lambda(&differential(&x))));
        }
    }
}

#[test]
fn t_components_are_split() {
    let mut r = rng(4);
    for n in 1..=2 {
        for _ in 0..3 {
            let s = canonical_kernel_cube(&mut r, n, 2, "E");
            let t = Transgressions::new(&s.cube);
            for m in 0..=n {
                for i in crate::multiindex::j_set(n, m).unwrap() {
                    let c = tcomp::t_component(&t, i.entries()).unwrap();
                    c.cube.validate().unwrap_or_else(|e| panic!("{i:?}: {e}"));
                    c.validate().unwrap_or_else(|e| panic!("{i:?}: {e}"));
                }
            }
            assert!(!t.used_fallback());
        }
    }
}

#[test]
fn transgression_is_a_chain_map() {
    let mut r = rng(5);
    for n in 1..=2 {
        for case in 0..3 {
            let s = canonical_kernel_cube(&mut r, n, 2, "E");
            let lhs = box_differential(&t_of_cube(&s.cube).unwrap()).unwrap();
            let rhs = t_morphism(&differential(&CubeChain::single(1, s.cube.clone()))).unwrap();
            let diff = lhs.minus(&rhs);
            assert!(diff.is_zero(), "n={n} case {case}: {} terms differ: {:?}", diff.len(), diff.terms().map(|(c, g)| (c, g.box_degree, g.cube_degree())).collect::<Vec<_>>());
        }
    }
}

/// Every payload identity between `δ_r^j` and `σ_r` on a grid with `vars`
/// box variables.
fn check_cocubical(g: &Grid<Poly>, vars: usize) {
    let face = |g: &Grid<Poly>, r, j| grid_face(g, r, j).unwrap();
    let degen = |g: &Grid<Poly>, r| grid_degeneracy(g, r).unwrap();
    for s in 1..=vars {
        for r in 1..s {
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                assert_eq!(face(&face(g, s, i), r, j), face(&face(g, r, j), s - 1, i), "δδ r={r} s={s}");
            }
        }
    }
    for s in 1..=vars + 1 {
        let lifted = degen(g, s);
        assert_eq!(box_degenerate(&lifted, None, vars + 1).map(|r| r <= s), Some(true));
        for j in 0..=1 {
            assert_eq!(face(&lifted, s, j), *g, "δσ r=s={s}");
        }
        for r in 1..=vars + 1 {
            for j in 0..=1 {
                let expected = match r.cmp(&s) {
                    std::cmp::Ordering::Less => degen(&face(g, r, j), s - 1),
                    std::cmp::Ordering::Greater => degen(&face(g, r - 1, j), s),
                    std::cmp::Ordering::Equal => continue,
                };
                assert_eq!(face(&lifted, r, j), expected, "δσ r={r} s={s}");
            }
        }
        for r in 1..=s {
            assert_eq!(degen(&degen(g, s), r), degen(&degen(g, r), s + 1), "σσ r={r} s={s}");
        }
    }
}

#[test]
fn cocubical_identities_on_payloads() {
    let mut r = rng(6);
    for n in 1..=3 {
        let s = canonical_kernel_cube(&mut r, n, 2, "E");
        let t = Transgressions::new(&s.cube);
        check_cocubical(&t.tr_cube(&[]).unwrap(), n);
        if n > 1 {
            check_cocubical(&t.tr_cube(&[1]).unwrap(), n - 1);
        }
    }
}

/// `tr_1` is the kernel of `(a, b) ↦ t f¹a + (1 - t) b` on `E¹ ⊕ E²`.
fn tr1_map(f1: &Mat<Poly>) -> Mat<Poly> {
    let t = Poly::var(1);
    let one_minus_t = Poly::one().minus(&t);
    Mat::hstack(&[f1.insert_vars(1, 1).scale(&t), Mat::<Poly>::identity(f1.rows()).scale(&one_minus_t)]).unwrap()
}

fn same_span(a: &Mat<Q>, b: &Mat<Q>) -> bool {
    let both = Mat::hstack(&[a.clone(), b.clone()]).unwrap();
    rank(a) == rank(b) && rank(&both) == rank(a)
}

#[test]
fn tr1_is_the_kernel_bundle() {
    let mut r = rng(9);
    for _ in 0..10 {
        let s = random_split_cube::<Q>(&mut r, 1, 3, "E");
        let seq = to_poly_grid(&s.cube);
        let (f0, f1) = (seq.edge(0, &[0]).unwrap().clone(), seq.edge(0, &[1]).unwrap().clone());
        let tr = tr1(&seq).unwrap();
        let map = tr1_map(&f1);
        assert!(map.dot(&tr.basis).is_zero());
        let oracle = poly_kernel(&map, 2, 5, &mut r).unwrap();
        for (a, b) in [(&tr.basis, &oracle), (&oracle, &tr.basis)] {
            assert!(matches!(membership_solve(a, b, 3), Membership::Solution(_)));
        }
        let (e1, e2) = (f1.cols(), f1.rows());
        let at1 = tr.basis.evaluate(1, &q(1)).unwrap().eval_point(&[]);
        let expected = Mat::block_diag(&[f0.eval_point(&[]), Mat::identity(e2)]);
        assert!(same_span(&at1, &expected));
        let at0 = tr.basis.evaluate(1, &q(0)).unwrap().eval_point(&[]);
        assert!(same_span(&at0, &Mat::vstack(&[Mat::identity(e1), Mat::zeros(e2, e1)]).unwrap()));
        for p in random_points(&mut r, 1, 5) {
            assert_eq!(rank(&tr.basis.eval_point(&p)), e1);
        }
    }
}

#[test]
fn composite_with_lambda_is_a_chain_map_in_one_direction() {
    let mut r = rng(7);
    for case in 0..4 {
        let s = random_split_cube::<Q>(&mut r, 1, 2, "E");
        let x = CubeChain::single(1, s.cube.clone());
        let lhs = box_differential(&transgression_morphism(&x).unwrap()).unwrap();
        let rhs = transgression_morphism(&differential(&x)).unwrap();
        assert!(lhs.minus(&rhs).is_zero(), "case {case}");
    }
}

#[test]
fn full_adams_of_a_point() {
    for rank in 1..=3 {
        for k in 1..=3 {
            let x = CubeChain::single(1, crate::cubes::Grid::point(crate::objects::Obj::atom(&crate::objects::Atom::named("A", rank))));
            let y = full_adams(&x, k).unwrap();
            let total: i64 = y.terms().map(|(c, g)| c * g.payload.vertex(&[]).rank() as i64).sum();
            assert_eq!(total, rank as i64, "rank {rank} k {k}");
        }
    }
}

#[test]
fn full_adams_chain_identity_k2_n1() {
    let mut r = rng(8);
    for case in 0..3 {
        let s = random_split_cube::<Q>(&mut r, 1, 2, "E");
        let x = CubeChain::single(1, s.cube.clone());
        let lhs = nc_box_reduce(&box_differential(&full_adams(&x, 2).unwrap()).unwrap());
        let rhs = full_adams(&differential(&x), 2).unwrap();
        let diff = lhs.minus(&rhs);
        assert!(diff.is_zero(), "case {case}: {} terms differ: {:?}", diff.len(), diff.terms().map(|(c, g)| (c, g.box_degree, g.cube_degree())).collect::<Vec<_>>());
    }
}
