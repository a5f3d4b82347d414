//! A quick consistency sweep over the builtin algebras.

use std::sync::Arc;

use serde::Serialize;

use dgforge_core::derived::residue_module;
use dgforge_core::dga::BUILTIN_NAMES;
use dgforge_core::{
    builtin_example, dg_ideals, nakayama_witness, subspace_cohomology, FdDga, Fp, Rational, Scalar, Status,
};

use crate::commands::Failure;
use crate::format::{emit_algebra, parse_algebra};
use crate::report::Report;

#[derive(Serialize)]
struct Check {
    algebra: String,
    field: String,
    check: &'static str,
    passed: bool,
}

fn sweep<S: Scalar>(name: &str, checks: &mut Vec<Check>) -> Result<(), Failure> {
    let a: FdDga<S> = builtin_example(name)?;
    let field = a.field().to_string();
    let mut push = |check, passed| checks.push(Check { algebra: name.into(), field: field.clone(), check, passed });
    push("axioms", a.validate().is_empty());
    let text = emit_algebra(&a).map_err(Failure::Input)?;
    push("format round trip", parse_algebra::<S>(&text).map(|b| b == a).unwrap_or(false));
    let (jm, jp) = dg_ideals(&a)?;
    push("J₋ ≃ J₊", subspace_cohomology(&a, &jm.space)? == subspace_cohomology(&a, &jp.space)?);
    let a = Arc::new(a);
    let m = residue_module(&a)?;
    let n = nakayama_witness(&m, 4)?;
    push("Nakayama on A/J₋", n.verdict.status != Status::CertifiedNo);
    Ok(())
}

pub fn run(report: &mut Report) -> Result<(), Failure> {
    let mut checks = Vec::new();
    for name in BUILTIN_NAMES {
        sweep::<Rational>(name, &mut checks)?;
        sweep::<Fp<101>>(name, &mut checks)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    report.summary = format!("{} checks, {failed} failed", checks.len());
    report.set_status(if failed == 0 { Status::CertifiedYes } else { Status::CertifiedNo });
    report.detail("checks", checks);
    Ok(())
}
