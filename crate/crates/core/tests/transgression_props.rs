use adams_core::cubes::{differential, normalized_project, CubeChain, Grid};
use adams_core::exactalg::{q, rank, Q};
use adams_core::objects::{Atom, Obj};
use adams_core::splitcubes::{random_split_cube, SplitCube};
use adams_core::transgression::tr::to_poly_grid;
use adams_core::transgression::{
    box_differential, canonical_kernel_cube, full_adams, has_canonical_kernels, lambda, nc_box_reduce, t_morphism, tr1,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tr1_interpolates_between_the_faces(seed in any::<u64>(), max_rank in 1usize..=3) {
        let s = random_split_cube::<Q>(&mut rng(seed), 1, max_rank, "E");
        let seq = to_poly_grid(&s.cube);
        let t = tr1(&seq).unwrap();
        let e1 = s.cube.vertex(&[1]).rank();
        prop_assert_eq!(t.basis.cols(), e1);
        prop_assert!(t.left.dot(&t.basis).is_identity());
        for v in [0, 1, 2, -3] {
            let fiber = t.basis.evaluate(1, &q(v)).unwrap().eval_point(&[]);
            prop_assert_eq!(rank(&fiber), e1);
        }
    }

    #[test]
    fn transgression_commutes_with_differentials(seed in any::<u64>(), n in 1usize..=2) {
        let s = canonical_kernel_cube(&mut rng(seed), n, 2, "E");
        prop_assert!(has_canonical_kernels(&s.cube));
        let x = CubeChain::single(1, s.cube.clone());
        let lhs = box_differential(&t_morphism(&x).unwrap()).unwrap();
        let rhs = t_morphism(&differential(&x)).unwrap();
        prop_assert!(lhs.minus(&rhs).is_zero());
    }

    #[test]
    fn lambda_commutes_with_differentials(seed in any::<u64>(), n in 1usize..=2) {
        let s = random_split_cube::<Q>(&mut rng(seed), n, 2, "E");
        let x = CubeChain::single(1, s.cube);
        let nonzero = |y: &CubeChain<Q>| y.filter(|g| !g.is_zero());
        let l = lambda(&x);
        prop_assert!(l.terms().all(|(_, g)| has_canonical_kernels(g)));
        prop_assert_eq!(nonzero(&differential(&l)), nonzero(&lambda(&differential(&x))));
    }

    #[test]
    fn full_adams_is_a_chain_map_in_one_direction(seed in any::<u64>(), k in 1usize..=3) {
        let s = random_split_cube::<Q>(&mut rng(seed), 1, 2, "E");
        let x = normalized_project(&CubeChain::single(1, s.cube));
        let lhs = nc_box_reduce(&box_differential(&full_adams(&x, k).unwrap()).unwrap());
        let rhs = full_adams(&differential(&x), k).unwrap();
        prop_assert!(lhs.minus(&rhs).is_zero());
    }
}

#[test]
fn full_adams_preserves_rank_of_points() {
    for r in 1..=4 {
        for k in 1..=4 {
            let x = CubeChain::single(1, Grid::point(Obj::atom(&Atom::named("A", r))));
            let y = full_adams(&x, k).unwrap();
            let total: i64 = y.terms().map(|(c, g)| c * g.payload.vertex(&[]).rank() as i64).sum();
            assert_eq!(total, r as i64, "r={r} k={k}");
        }
    }
}

#[test]
fn split_cube_json_round_trip() {
    for n in 0..=2 {
        let s = random_split_cube::<Q>(&mut rng(n as u64), n, 2, "E");
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back = SplitCube::<Q>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.cube, s.cube);
        assert_eq!(back.splitting, s.splitting);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }
}
