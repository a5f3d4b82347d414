use std::sync::Arc;

use dgforge_core::derived::{left_residue_module, perfect_dual, residue_module, table_dims, tensor_table, hom_table, twisted_tensor};
use dgforge_core::dga::BUILTIN_NAMES;
use dgforge_core::{
    builtin_example, nakayama_witness, perfection_check, random_module, resolve, resolve_minimal, DgModule, FdDga, Rational, Status,
    Window,
};
use proptest::prelude::*;

type Q = Rational;

fn alg(i: usize) -> Arc<FdDga<Q>> {
    Arc::new(builtin_example(BUILTIN_NAMES[i]).unwrap())
}

fn window() -> Window {
    Window::new(-4, 4).unwrap()
}

#[test]
fn minimal_resolutions_have_zero_differential_after_reduction() {
    for i in 0..BUILTIN_NAMES.len() {
        let a = alg(i);
        let m = residue_module(&a).unwrap();
        let r = resolve_minimal(&m, 4).unwrap();
        let t = twisted_tensor(&r, &left_residue_module(&a).unwrap()).unwrap();
        assert!(t.complex.diff.iter().all(|v| v.is_empty()), "{}", BUILTIN_NAMES[i]);
    }
}

#[test]
fn perfect_duals_are_perfect_with_matching_cohomology() {
    for i in 0..BUILTIN_NAMES.len() {
        let a = alg(i);
        let mut inputs = vec![DgModule::regular(&a), DgModule::free(&a, &[0, 2])];
        inputs.extend((0..20).filter_map(|s| random_module(&a, s, 2).ok()));
        for m in inputs {
            let r = resolve_minimal(&m, 6).unwrap();
            if !r.complete {
                continue;
            }
            let d = perfect_dual(&r).unwrap();
            assert!(d.validate().is_empty());
            let rd = resolve_minimal(&d, 6).unwrap();
            assert!(rd.complete, "{}: dual of a perfect module is perfect", BUILTIN_NAMES[i]);
            // RHom_{A^op}(M^∨, A^op) ≃ M
            let back = hom_table(&rd, &DgModule::regular(d.algebra()), window()).unwrap();
            let h = m.cohomology();
            for (deg, (dim, certified)) in table_dims(&back) {
                if certified {
                    assert_eq!(dim, h.dim(deg), "{} degree {deg}", BUILTIN_NAMES[i]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tables_do_not_depend_on_the_resolution(i in 0usize..6, seed in 0u64..500) {
        let a = alg(i);
        let m = random_module(&a, seed, 2).unwrap();
        let n = left_residue_module(&a).unwrap();
        let small = resolve_minimal(&m, 4).unwrap();
        let big = resolve(&m, 4, false).unwrap();
        let (ts, tb) = (table_dims(&tensor_table(&small, &n, window()).unwrap()), table_dims(&tensor_table(&big, &n, window()).unwrap()));
        for (d, (dim, ok)) in &ts {
            if let Some((dim2, ok2)) = tb.get(d) {
                if *ok && *ok2 {
                    prop_assert_eq!(dim, dim2);
                }
            }
        }
        let k = residue_module(&a).unwrap();
        let (hs, hb) = (table_dims(&hom_table(&small, &k, window()).unwrap()), table_dims(&hom_table(&big, &k, window()).unwrap()));
        for (d, (dim, ok)) in &hs {
            if let Some((dim2, ok2)) = hb.get(d) {
                if *ok && *ok2 {
                    prop_assert_eq!(dim, dim2);
                }
            }
        }
    }

    #[test]
    fn certified_entries_are_stable_under_more_stages(i in 0usize..6, seed in 0u64..500) {
        let a = alg(i);
        let m = random_module(&a, seed, 2).unwrap();
        let n = left_residue_module(&a).unwrap();
        let t3 = table_dims(&tensor_table(&resolve_minimal(&m, 3).unwrap(), &n, window()).unwrap());
        let t5 = table_dims(&tensor_table(&resolve_minimal(&m, 5).unwrap(), &n, window()).unwrap());
        for (d, (dim, ok)) in &t3 {
            if *ok {
                let (dim5, ok5) = t5[d];
                prop_assert!(ok5);
                prop_assert_eq!(*dim, dim5);
            }
        }
    }

    #[test]
    fn nakayama_stage_zero_detects_cohomology(i in 0usize..6, seed in 0u64..500) {
        let m = random_module(&alg(i), seed, 3).unwrap();
        let rep = nakayama_witness(&m, 4).unwrap();
        prop_assert_eq!(rep.cohomology_nonzero, rep.stage_zero_generators > 0);
        prop_assert!(rep.verdict.status != Status::CertifiedNo);
    }

    #[test]
    fn free_modules_are_perfect(i in 0usize..6, shifts in prop::collection::vec(-3i32..=3, 1..4)) {
        let a = alg(i);
        let v = perfection_check(&DgModule::free(&a, &shifts), 4).unwrap();
        prop_assert_eq!(v.status, Status::CertifiedYes);
    }
}
