use std::collections::BTreeMap;
use std::sync::Arc;

use dgforge_core::dga::BUILTIN_NAMES;
use dgforge_core::{builtin_example, cone, random_module, strict_hom, strict_tensor, DgModule, FdDga, ModuleMap, Rational};
use proptest::prelude::*;

type Q = Rational;

fn alg(i: usize) -> Arc<FdDga<Q>> {
    Arc::new(builtin_example(BUILTIN_NAMES[i]).unwrap())
}

fn degree_counts(degrees: &[i32]) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for d in degrees {
        *out.entry(*d).or_insert(0) += 1;
    }
    out
}

fn shifted(counts: &BTreeMap<i32, usize>, by: i32) -> BTreeMap<i32, usize> {
    counts.iter().map(|(d, n)| (d + by, *n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_modules_validate(i in 0usize..6, seed in 0u64..1000, budget in 1usize..5) {
        let m = random_module(&alg(i), seed, budget).unwrap();
        prop_assert!(m.validate().is_empty());
        prop_assert!(m.side_swap().validate().is_empty());
        prop_assert_eq!(m.side_swap().side_swap(), m);
    }

    #[test]
    fn duality_reverses_cohomology(i in 0usize..6, seed in 0u64..1000) {
        let m = random_module(&alg(i), seed, 3).unwrap();
        let d = m.k_dual().unwrap();
        prop_assert!(d.validate().is_empty());
        let (h, hd) = (m.cohomology(), d.cohomology());
        for deg in -10..=10 {
            prop_assert_eq!(hd.dim(deg), h.dim(-deg));
        }
    }

    #[test]
    fn free_modules_behave_like_shifts(i in 0usize..6, seed in 0u64..1000, g in -2i32..=2) {
        let a = alg(i);
        let m = random_module(&a, seed, 2).unwrap();
        let counts = degree_counts(m.degrees());
        // Hom_A(A·e_g, M)^p = M^{p+g}
        let hom = strict_hom(&DgModule::free(&a, &[g]), &m).unwrap();
        prop_assert_eq!(degree_counts(&hom.complex.degrees), shifted(&counts, -g));
        // (M ⊗_A A·e_g)^p = M^{p−g}
        let op = Arc::new(a.opposite());
        let t = strict_tensor(&m, &DgModule::free(&op, &[g])).unwrap();
        prop_assert_eq!(degree_counts(&t.complex.degrees), shifted(&counts, g));
        prop_assert_eq!(t.complex.cohomology(), m.shift(-g).cohomology());
    }

    #[test]
    fn cone_of_the_identity_is_acyclic(i in 0usize..6, seed in 0u64..1000) {
        let m = random_module(&alg(i), seed, 3).unwrap();
        let c = cone(&ModuleMap::identity(&m)).unwrap();
        prop_assert!(c.validate().is_empty());
        prop_assert!(c.cohomology().is_zero());
    }
}
