use proptest::prelude::*;

use pacs_core::linalg::matrix::adjoint;
use pacs_core::linalg::scalar::{frac, int, parse, to_string};
use pacs_core::linalg::subspace::kernel;
use pacs_core::linalg::{Matrix, Scalar, SparseVec, Subspace};

fn rational() -> impl Strategy<Value = Scalar> {
    // zeros are common so that kernels are not always trivial
    prop_oneof![Just(int(0)), (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(rational(), cols), rows).prop_map(|g| Matrix::from_dense(&g))
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| matrix(r, c))
}

fn subspace(ambient: usize, gens: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(rational(), ambient), gens)
        .prop_map(move |vs| Subspace::span(ambient, &vs.iter().map(|v| SparseVec::from_dense(v)).collect::<Vec<_>>()).unwrap())
}

/// Cofactor expansion along the first row.
fn laplace(m: &[Vec<Scalar>]) -> Scalar {
    if m.is_empty() {
        return int(1);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<Scalar>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
            let s = if j % 2 == 0 { int(1) } else { int(-1) };
            s * &m[0][j] * laplace(&minor)
        })
        .fold(int(0), |a, b| a + b)
}

/// Symmetric positive definite: `AᵀA + I`.
fn spd(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, n).prop_map(move |a| a.transpose().mul(&a).unwrap().add(&Matrix::identity(n)).unwrap())
}

#[test]
fn small_examples() {
    assert_eq!(Matrix::identity(3).rank(), 3);
    assert_eq!(Matrix::from_i64(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    assert!(kernel(&Matrix::identity(3)).is_zero());
    assert_eq!(kernel(&Matrix::zeros(4, 4)).dim(), 4);
    let x = Subspace::span(2, &[SparseVec::unit(0)]).unwrap();
    let y = Subspace::span(2, &[SparseVec::unit(1)]).unwrap();
    assert!(x.intersect(&y).unwrap().is_zero());
    assert_eq!(x.intersect(&x).unwrap(), x);
    let m = Matrix::from_i64(&[vec![1, 2, 0], vec![0, 3, 4]]);
    assert_eq!(adjoint(&m, &Matrix::identity(3), &Matrix::identity(2)).unwrap(), m.transpose());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.ncols());
        for v in k.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn transpose_preserves_rank(m in any_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn determinant_matches_cofactors(m in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        prop_assert_eq!(m.det().unwrap(), laplace(&m.to_dense()));
    }

    #[test]
    fn inverse_is_two_sided(m in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        let n = m.nrows();
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(n));
                prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(n));
            }
            Err(_) => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn canonical_form_decides_equality(s in subspace(6, 3), c in 1i64..5) {
        prop_assert_eq!(s.canonicalize(), s.canonicalize().canonicalize());
        // rescaled and reversed generators give the same value
        let mut gens: Vec<SparseVec> = s.basis().iter().map(|v| v.scale(&int(c))).collect();
        gens.reverse();
        prop_assert_eq!(Subspace::span(6, &gens).unwrap(), s);
    }

    #[test]
    fn modular_law(u in subspace(10, 6), w in subspace(10, 6)) {
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(u.contains_subspace(&meet).unwrap() && w.contains_subspace(&meet).unwrap());
        prop_assert!(sum.contains_subspace(&u).unwrap() && sum.contains_subspace(&w).unwrap());
    }

    #[test]
    fn adjoint_residual(
        (m, gs, gd, x, y) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            (matrix(r, c), spd(c), spd(r), prop::collection::vec(rational(), c), prop::collection::vec(rational(), r))
        })
    ) {
        let a = adjoint(&m, &gs, &gd).unwrap();
        let (x, y) = (SparseVec::from_dense(&x), SparseVec::from_dense(&y));
        let lhs = gd.apply(&y).dot(&m.apply(&x));
        let rhs = gs.apply(&a.apply(&y)).dot(&x);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(adjoint(&a, &gd, &gs).unwrap(), m);
    }

    #[test]
    fn scalar_strings_round_trip(x in rational()) {
        prop_assert_eq!(parse(&to_string(&x)).unwrap(), x);
    }
}
