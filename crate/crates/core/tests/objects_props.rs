use adams_core::exactalg::{q, Mat, Q};
use adams_core::objects::{power_matrix, ObjectExpr};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Q>> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Mat::from_vec(rows, cols, v.into_iter().map(q).collect()).unwrap())
}

fn expr() -> impl Strategy<Value = ObjectExpr> {
    let leaf = prop_oneof![
        Just(ObjectExpr::Zero),
        (0usize..4, 1usize..3).prop_map(|(l, r)| ObjectExpr::atom(["A", "B", "C", "D"][l], r)),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..3).prop_map(ObjectExpr::Sum),
            prop::collection::vec(inner.clone(), 1..3).prop_map(ObjectExpr::Tensor),
            (0usize..3, (0usize..3, 1usize..3))
                .prop_map(|(p, (l, r))| ObjectExpr::sym(p, ObjectExpr::atom(["A", "B", "C"][l], r))),
            (0usize..3, prop::collection::vec((0usize..3, 1usize..3), 1..3)).prop_map(|(p, atoms)| {
                ObjectExpr::ext(
                    p,
                    ObjectExpr::Sum(atoms.into_iter().map(|(l, r)| ObjectExpr::atom(["A", "B", "C"][l], r)).collect()),
                )
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn powers_are_functorial(p in 0usize..4, f in matrix(3, 2), g in matrix(2, 3)) {
        for strict in [false, true] {
            let lhs = power_matrix(&f.dot(&g), p, strict);
            let rhs = power_matrix(&f, p, strict).dot(&power_matrix(&g, p, strict));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tensor_is_functorial(f1 in matrix(2, 2), g1 in matrix(2, 2), f2 in matrix(1, 2), g2 in matrix(2, 3)) {
        let lhs = f1.dot(&g1).kron(&f2.dot(&g2));
        let rhs = f1.kron(&f2).dot(&g1.kron(&g2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_is_an_idempotent_permutation(e in expr()) {
        let n = e.normalize().unwrap();
        prop_assert_eq!(n.object.rank(), e.rank());
        prop_assert_eq!(n.images.len(), e.rank());
        let iso = n.iso::<Q>();
        prop_assert!(iso.dot(&iso.transpose()).is_identity());
        let again = n.object.to_expr().normalize().unwrap();
        prop_assert_eq!(&again.object, &n.object);
        prop_assert!(again.iso::<Q>().is_identity());
    }
}
