use dgforge_core::linalg::{rref, solve, sparse, Matrix, Subspace};
use dgforge_core::{Rational, Scalar};
use proptest::prelude::*;

type Q = Rational;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Q>> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let data = v.chunks(cols).map(|r| r.iter().map(|x| Q::from_i64(*x)).collect()).collect();
        Matrix::from_rows(data).unwrap()
    })
}

fn sized_matrix() -> impl Strategy<Value = Matrix<Q>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace<Q>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, ambient), 0..ambient + 1).prop_map(move |rows| {
        let dense: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|x| Q::from_i64(*x)).collect()).collect();
        Subspace::from_dense_rows(ambient, &dense)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in sized_matrix()) {
        let (r, pivots) = rref(&m);
        let (rr, pivots2) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots, pivots2);
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn solve_is_exact((a, x) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (matrix(r, c), matrix(c, 2)))) {
        let b = a.mul(&x).unwrap();
        let y = solve(&a, &b).unwrap().expect("a·x = b is solvable");
        prop_assert_eq!(a.mul(&y).unwrap(), b);
    }

    #[test]
    fn sum_and_intersection_dimensions((u, v) in (1usize..7).prop_flat_map(|n| (subspace(n), subspace(n)))) {
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
    }

    #[test]
    fn complement_is_a_direct_summand(u in (1usize..7).prop_flat_map(subspace)) {
        let c = u.complement();
        let n = u.ambient_dim();
        prop_assert_eq!(u.sum(&c).unwrap().dim(), n);
        prop_assert!(u.intersect(&c).unwrap().is_zero());
    }
}

#[test]
fn inconsistent_system_has_no_solution() {
    let a = Matrix::<Q>::from_i64(&[&[1, 1], &[2, 2]]);
    let b = Matrix::<Q>::from_i64(&[&[1], &[3]]);
    assert!(solve(&a, &b).unwrap().is_none());
}

#[test]
fn span_reduces_to_echelon_rows() {
    let one = Q::from_i64(1);
    let s = Subspace::span(3, vec![vec![(0, one.clone()), (1, one.clone())], vec![(1, one.clone())], sparse::from_dense(&[one.clone(), Q::from_i64(2), Q::from_i64(0)])]);
    assert_eq!(s.dim(), 2);
    assert!(s.contains(&[(0, one)]));
}
