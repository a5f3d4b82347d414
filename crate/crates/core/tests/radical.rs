use std::sync::Arc;

use dgforge_core::dga::BUILTIN_NAMES;
use dgforge_core::filtration::radical_filtration;
use dgforge_core::radical::{is_d_closed, is_two_sided_ideal, power, tensor_idempotent};
use dgforge_core::{
    builtin_example, dg_ideals, is_separable, quotient_dga, random_module, subspace_cohomology, underlying_radical,
    FdDga, Rational, Scalar,
};
use proptest::prelude::*;

type Q = Rational;

fn builtin(i: usize) -> FdDga<Q> {
    builtin_example(BUILTIN_NAMES[i]).unwrap()
}

/// Builtins and their pairwise tensor products.
fn corpus() -> Vec<(String, FdDga<Q>)> {
    let mut out: Vec<(String, FdDga<Q>)> = (0..BUILTIN_NAMES.len()).map(|i| (BUILTIN_NAMES[i].to_string(), builtin(i))).collect();
    for i in 0..BUILTIN_NAMES.len() {
        for j in i..BUILTIN_NAMES.len() {
            out.push((format!("{} ⊗ {}", BUILTIN_NAMES[i], BUILTIN_NAMES[j]), builtin(i).tensor(&builtin(j))));
        }
    }
    out
}

#[test]
fn radical_is_nilpotent_with_semisimple_quotient() {
    for (name, a) in corpus() {
        let j = underlying_radical(&a).unwrap();
        assert!(power(&a, &j, a.dim() + 1).is_zero(), "{name}");
        if !is_d_closed(&a, &j) {
            continue;
        }
        let q = quotient_dga(&a, &j).unwrap();
        if q.algebra.dim() > 0 {
            assert_eq!(underlying_radical(&q.algebra).unwrap().dim(), 0, "{name}");
        }
    }
}

#[test]
fn dg_ideal_laws() {
    for (name, a) in corpus() {
        let j = underlying_radical(&a).unwrap();
        let (jm, jp) = dg_ideals(&a).unwrap();
        assert!(jm.space.is_subspace_of(&j) && j.is_subspace_of(&jp.space), "{name}");
        for u in [&jm.space, &jp.space] {
            assert!(is_d_closed(&a, u) && is_two_sided_ideal(&a, u), "{name}");
        }
        assert_eq!(subspace_cohomology(&a, &jm.space).unwrap(), subspace_cohomology(&a, &jp.space).unwrap(), "{name}");
    }
}

#[test]
fn enveloping_algebra_of_the_semisimple_quotient() {
    for name in BUILTIN_NAMES {
        let a: FdDga<Q> = builtin_example(name).unwrap();
        let (_, jp) = dg_ideals(&a).unwrap();
        let q = quotient_dga(&a, &jp.space).unwrap().algebra;
        if q.dim() == 0 || is_separable(&q).is_none() {
            continue;
        }
        let e = q.enveloping();
        assert!(is_separable(&e).is_some(), "{name}");
        assert_eq!(underlying_radical(&e).unwrap().dim(), 0, "{name}");
    }
}

/// `M₂` on `1, e11, e12, e21` with `|e12| = g`, `|e21| = −g`.
fn matrix_algebra(g: i32) -> FdDga<Q> {
    let one = |i: usize| vec![(i, Q::from_i64(1))];
    let basis = vec![("1".into(), 0), ("e11".into(), 0), ("e12".into(), g), ("e21".into(), -g)];
    let products = vec![(1, 1, one(1)), (1, 2, one(2)), (2, 3, one(1)), (3, 2, vec![(0, Q::from_i64(1)), (1, Q::from_i64(-1))]), (3, 1, one(3))];
    FdDga::from_tables(basis, 0, products, vec![]).unwrap()
}

fn product_field() -> FdDga<Q> {
    FdDga::from_tables(vec![("1".into(), 0), ("e".into(), 0)], 0, vec![(1, 1, vec![(1, Q::from_i64(1))])], vec![]).unwrap()
}

fn separable(choice: u8, g: i32) -> FdDga<Q> {
    match choice % 3 {
        0 => builtin_example("point").unwrap(),
        1 => product_field(),
        _ => matrix_algebra(g),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_idempotents_are_separability_idempotents(ca in 0u8..3, cb in 0u8..3, ga in -2i32..=2, gb in -2i32..=2) {
        let (a, b) = (separable(ca, ga), separable(cb, gb));
        let (pa, pb) = (is_separable(&a).unwrap(), is_separable(&b).unwrap());
        let (ab, p) = tensor_idempotent(&a, &pa, &b, &pb).unwrap();
        prop_assert!(ab.validate().is_empty());
        prop_assert!(p.verify(&ab));
    }

    #[test]
    fn filtration_factors_are_killed_by_the_radical(alg in 0usize..6, seed in 0u64..500) {
        let a = Arc::new(builtin(alg));
        let m = random_module(&a, seed, 3).unwrap();
        let (jm, _) = dg_ideals(&a).unwrap();
        let (w, factors) = radical_filtration(&m).unwrap();
        prop_assert_eq!(w.factor_dims.iter().sum::<usize>(), m.dim());
        for f in &factors {
            prop_assert!(f.validate().is_empty());
            for i in 0..f.dim() {
                for j in jm.space.rows() {
                    prop_assert!(f.act(&f.basis_vector(i), j).is_empty());
                }
            }
        }
    }
}
