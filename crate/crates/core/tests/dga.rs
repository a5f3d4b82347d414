use std::collections::BTreeMap;

use dgforge_core::dga::BUILTIN_NAMES;
use dgforge_core::linalg::SparseVec;
use dgforge_core::{builtin_example, Complex, FdDga, Fp, Rational, Scalar};
use proptest::prelude::*;

type Q = Rational;

fn builtins<S: Scalar>() -> Vec<FdDga<S>> {
    BUILTIN_NAMES.iter().map(|n| builtin_example(n).unwrap()).collect()
}

fn convolve(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

#[test]
fn opposite_is_an_involution() {
    let all = builtins::<Q>();
    for a in &all {
        assert_eq!(&a.opposite().opposite(), a);
        for b in &all {
            let t = a.tensor(b);
            assert_eq!(t.opposite().opposite(), t);
        }
    }
}

#[test]
fn tensor_products_validate_and_satisfy_kunneth() {
    let all = builtins::<Q>();
    for (a, na) in all.iter().zip(BUILTIN_NAMES) {
        for (b, nb) in all.iter().zip(BUILTIN_NAMES) {
            let t = a.tensor(b);
            assert!(t.validate().is_empty(), "{na} ⊗ {nb}");
            let expected = convolve(&a.cohomology().dims(), &b.cohomology().dims());
            let mut got = t.cohomology().dims();
            got.retain(|_, v| *v > 0);
            assert_eq!(got, expected, "{na} ⊗ {nb}");
        }
    }
}

#[test]
fn kunneth_in_positive_characteristic() {
    let all = builtins::<Fp<5>>();
    for a in &all {
        for b in &all {
            let mut got = a.tensor(b).cohomology().dims();
            got.retain(|_, v| *v > 0);
            assert_eq!(got, convolve(&a.cohomology().dims(), &b.cohomology().dims()));
        }
    }
}

#[test]
fn enveloping_algebras_validate() {
    for a in builtins::<Q>() {
        let e = a.enveloping();
        assert_eq!(e.dim(), a.dim() * a.dim());
        assert!(e.validate().is_empty());
    }
}

/// Pairs `x_i → y_i` twisted by a unitriangular change of basis.
fn acyclic_complex(pairs: usize, degree: i32, mix: &[i64]) -> Complex<Q> {
    let mut degrees = vec![degree; pairs];
    degrees.extend(vec![degree + 1; pairs]);
    let mut diff: Vec<SparseVec<Q>> = Vec::new();
    for i in 0..pairs {
        let mut v = vec![(pairs + i, Q::from_i64(1))];
        for j in i + 1..pairs {
            let c = mix[(i * pairs + j) % mix.len()];
            if c != 0 {
                v.push((pairs + j, Q::from_i64(c)));
            }
        }
        diff.push(v);
    }
    diff.extend(vec![Vec::new(); pairs]);
    Complex::new(degrees, diff)
}

proptest! {
    #[test]
    fn acyclic_complexes_have_no_cohomology(pairs in 1usize..6, degree in -4i32..4, mix in prop::collection::vec(-3i64..=3, 1..20)) {
        let c = acyclic_complex(pairs, degree, &mix);
        prop_assert!(c.cohomology().is_zero());
    }
}
