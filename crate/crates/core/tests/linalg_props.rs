mod common;

use common::*;
use num::Zero;
use proptest::prelude::*;
use pwlfix::linalg::{adjugate, det, nullspace, nullspace_1d, rank, solve_particular, solve_unique};
use pwlfix::{Matrix, Rational, Scalar, Vector};

fn sized_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=6).prop_flat_map(matrix)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjugate_times_matrix_is_det_identity(m in sized_matrix()) {
        let n = m.rows();
        let lhs = adjugate(&m).unwrap().mul(&m).unwrap();
        let rhs = Matrix::identity(n).scale(&det(&m).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn det_agrees_with_laplace(m in (1usize..=5).prop_flat_map(matrix)) {
        prop_assert_eq!(det(&m).unwrap(), laplace_det(&rows_of(&m)));
    }

    #[test]
    fn solve_unique_is_exact((m, rhs) in (1usize..=6).prop_flat_map(|n| (matrix(n), vector(n)))) {
        prop_assume!(!det(&m).unwrap().is_zero());
        let x = solve_unique(&m, &rhs).unwrap();
        prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs);
    }

    #[test]
    fn float_det_matches_rational(
        (n, entries) in (1usize..=6).prop_flat_map(|n| (Just(n), proptest::collection::vec(-10i64..=10, n * n)))
    ) {
        let exact = Matrix::new(n, n, entries.iter().map(|&v| Rational::from_integer(v.into())).collect()).unwrap();
        let float = Matrix::new(n, n, entries.iter().map(|&v| v as f64).collect()).unwrap();
        let e = det(&exact).unwrap().to_f64();
        let f = det(&float).unwrap();
        prop_assert!((e - f).abs() <= 1e-9 * e.abs().max(1.0), "exact {} float {}", e, f);
    }

    #[test]
    fn rank_agrees_with_integer_elimination(m in (1usize..=5).prop_flat_map(matrix)) {
        prop_assert_eq!(rank(&m, 0.0), integer_rank(&rows_of(&m)));
    }

    #[test]
    fn nullspace_vectors_are_annihilated(
        (n, entries) in (2usize..=5).prop_flat_map(|n| (Just(n), proptest::collection::vec(-2i64..=2, n * n)))
    ) {
        let m = Matrix::new(n, n, entries.iter().map(|&v| Rational::from_integer(v.into())).collect()).unwrap();
        let basis = nullspace(&m, 0.0);
        prop_assert_eq!(basis.len() + rank(&m, 0.0), n);
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        if basis.len() == 1 {
            let v = nullspace_1d(&m).unwrap();
            prop_assert!(m.mul_vec(&v).unwrap().is_zero());
            prop_assert!(!v.is_zero());
        }
    }

    #[test]
    fn particular_solutions_solve_consistent_systems(
        (n, entries, x) in (2usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(-2i64..=2, n * n), vector(n)))
    ) {
        let m = Matrix::new(n, n, entries.iter().map(|&v| Rational::from_integer(v.into())).collect()).unwrap();
        let rhs: Vector<Rational> = m.mul_vec(&x).unwrap();
        let z = solve_particular(&m, &rhs, 0.0).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&z).unwrap(), rhs);
    }
}
