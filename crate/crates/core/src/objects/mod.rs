//! Based free modules built from atoms by sums, tensor products, symmetric
//! and exterior powers and kernels, with canonical normal forms.

pub mod atom;
pub mod expr;
pub mod morphism;
pub mod normal;
pub mod tuples;

use thiserror::Error;

use crate::exactalg::AlgError;

pub use atom::{Atom, Factor, KernelDef, Power};
pub use expr::{BasedModule, Normalized, ObjectExpr};
pub use morphism::{
    direct_sum_map, expand_product, ext_power_map, kernel_object, kernel_of_morphism, power_matrix, sym_power_map,
    tensor_map, tensor_normal_map, Morphism,
};
pub use normal::{normalize_pure, Monomial, Obj, PureNormal, SignedIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObjError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported object: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Mat, Q};

    fn a(label: &str, rank: usize) -> ObjectExpr {
        ObjectExpr::atom(label, rank)
    }

    #[test]
    fn realize_examples() {
        let e = ObjectExpr::ext(2, a("E", 2)).realize();
        assert_eq!(e.rank, 1);
        assert_eq!(e.basis_labels, vec!["(E_1∧E_2)"]);
        assert_eq!(ObjectExpr::sym(2, a("E", 2)).realize().rank, 3);
        assert_eq!(ObjectExpr::sum(vec![a("A", 2), a("B", 3)]).realize().rank, 5);
    }

    #[test]
    fn sum_is_sorted_with_block_swap() {
        let n = ObjectExpr::sum(vec![a("B", 1), a("A", 2)]).normalize().unwrap();
        assert_eq!(n.object.key(), "A#2 ⊕ B#1");
        assert_eq!(n.images, vec![(1, 2), (1, 0), (1, 1)]);
        let z = ObjectExpr::sum(vec![a("A", 2), ObjectExpr::Zero]).normalize().unwrap();
        assert_eq!(z.object, ObjectExpr::atom("A", 2).normal_form().unwrap());
        assert!(z.iso::<Q>().is_identity());
    }

    #[test]
    fn tensor_distributes() {
        let e = ObjectExpr::tensor(vec![a("A", 1), ObjectExpr::sum(vec![a("C", 1), a("B", 2)])]);
        let n = e.normalize().unwrap();
        assert_eq!(n.object.key(), "A#1⊗B#2 ⊕ A#1⊗C#1");
        assert_eq!(n.images, vec![(1, 2), (1, 0), (1, 1)]);
    }

    #[test]
    fn odd_factors_swap_with_sign() {
        let e = ObjectExpr::tensor(vec![ObjectExpr::ext(1, a("B", 1)), ObjectExpr::ext(1, a("A", 1))]);
        assert_eq!(e.normalize().unwrap().images, vec![(-1, 0)]);
        let e = ObjectExpr::tensor(vec![ObjectExpr::sym(1, a("B", 1)), ObjectExpr::ext(1, a("A", 1))]);
        assert_eq!(e.normalize().unwrap().images, vec![(1, 0)]);
        let e = ObjectExpr::tensor(vec![a("B", 1), a("A", 1)]);
        assert_eq!(e.normalize().unwrap().images, vec![(1, 0)]);
    }

    #[test]
    fn powers_of_sums_split() {
        let u = ObjectExpr::sum(vec![a("A", 2), a("B", 1)]);
        let n = ObjectExpr::ext(2, u.clone()).normalize().unwrap();
        assert_eq!(n.object.key(), "L1(A#2)⊗L1(B#1) ⊕ L2(A#2)");
        assert_eq!(n.object.rank(), 3);
        let n = ObjectExpr::sym(2, u).normalize().unwrap();
        assert_eq!(n.object.rank(), 6);
        assert!(n.iso::<Q>().dot(&n.iso::<Q>().transpose()).is_identity());
    }

    #[test]
    fn normalize_is_idempotent() {
        let e = ObjectExpr::tensor(vec![
            ObjectExpr::ext(2, ObjectExpr::sum(vec![a("B", 2), a("A", 1)])),
            ObjectExpr::sum(vec![a("C", 2), ObjectExpr::sym(2, a("A", 1))]),
        ]);
        let n = e.normalize().unwrap();
        let again = n.object.to_expr().normalize().unwrap();
        assert_eq!(again.object, n.object);
        assert!(again.iso::<Q>().is_identity());
    }

    #[test]
    fn induced_maps() {
        let e = a("E", 2);
        let f = |rows: &[&[i64]]| Morphism::new(e.clone(), e.clone(), Mat::<Q>::from_i64_rows(rows)).unwrap();
        assert_eq!(ext_power_map(2, &f(&[&[2, 0], &[0, 3]])).matrix, Mat::from_i64_rows(&[&[6]]));
        assert!(sym_power_map(2, &Morphism::<Q>::identity(e.clone())).matrix.is_identity());
        assert_eq!(ext_power_map(2, &f(&[&[1, 2], &[3, 4]])).matrix, Mat::from_i64_rows(&[&[-2]]));
        let one = ObjectExpr::atom("L", 1);
        let two = Morphism::new(one.clone(), one.clone(), Mat::<Q>::from_i64_rows(&[&[2]])).unwrap();
        let three = Morphism::new(one.clone(), one, Mat::<Q>::from_i64_rows(&[&[3]])).unwrap();
        assert_eq!(tensor_map(&[two.clone(), three.clone()]).matrix, Mat::from_i64_rows(&[&[6]]));
        assert_eq!(direct_sum_map(&[two, three]).matrix, Mat::from_i64_rows(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn sym_square_of_a_matrix() {
        // (x e1 + y e2)(z e1 + w e2) expanded on e1e1, e1e2, e2e2
        let m = Mat::<Q>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let s = power_matrix(&m, 2, false);
        assert_eq!(s, Mat::from_i64_rows(&[&[1, 2, 4], &[6, 10, 16], &[9, 12, 16]]));
    }

    #[test]
    fn kernel_examples() {
        let src = ObjectExpr::atom("V", 2);
        let tgt = ObjectExpr::atom("W", 1);
        let f = Morphism::new(src.clone(), tgt.clone(), Mat::<Q>::from_i64_rows(&[&[1, 1]])).unwrap();
        let k = kernel_of_morphism(&f, "K").unwrap();
        assert_eq!(k.matrix, Mat::from_i64_rows(&[&[-1], &[1]]));
        assert_eq!(k.source.rank(), 1);
        let again = kernel_of_morphism(&f, "other").unwrap();
        assert_eq!(k.source.key().unwrap(), again.source.key().unwrap());

        let inj = Morphism::new(tgt.clone(), src.clone(), Mat::<Q>::from_i64_rows(&[&[1], &[1]])).unwrap();
        assert_eq!(kernel_of_morphism(&inj, "K").unwrap().source.rank(), 0);
        let zero = Morphism::new(src.clone(), tgt, Mat::<Q>::zeros(1, 2)).unwrap();
        let k = kernel_of_morphism(&zero, "K").unwrap();
        assert_eq!(k.source, src);
        assert!(k.matrix.is_identity());
    }

    #[test]
    fn json_round_trip() {
        let src = ObjectExpr::atom("V", 2);
        let f = Morphism::new(src.clone(), ObjectExpr::atom("W", 1), Mat::<Q>::from_i64_rows(&[&[1, 1]])).unwrap();
        let k = kernel_of_morphism(&f, "K").unwrap().source;
        let e = ObjectExpr::tensor(vec![ObjectExpr::sym(2, src), ObjectExpr::sum(vec![k, ObjectExpr::Zero])]);
        let json = serde_json::to_string(&e).unwrap();
        let back: ObjectExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert!(json.contains("\"kernel\""));
    }
}
