//! Argument parsing and dispatch of every subcommand.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dgforge_core::auslander::{auslander_dga, keylemma_from};
use dgforge_core::derived::{residue_module, simple_modules};
use dgforge_core::filtration::{bimodule_filtration, radical_filtration};
use dgforge_core::koszul::koszul_dual;
use dgforge_core::radical::{nilpotency_index, power};
use dgforge_core::{
    builtin_example, contradual_perfection_check, dg_ideals, derived_hom, derived_tensor, ext_tor_duality_check,
    gorenstein_check, hochschild_homology, is_separable, nakayama_witness, perfection_check, quotient_dga, random_module,
    resolve_minimal, serre_duality_check, smoothness_check, subspace_cohomology, underlying_radical, DgModule, Error,
    FdDga, FieldSpec, Fp, Rational, Scalar, Status, Window,
};

use crate::format::{emit_algebra, emit_module, module_algebra_ref, parse_algebra, parse_module, sniff_field, AlgebraRef};
use crate::report::{InputDigest, Options, Report, TableReport, STATUS_OK};
use crate::selftest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Radical,
    Quotient,
    Filtration,
    SepIdem,
    Resolve,
    Betti,
    Tensor,
    Rhom,
    ExttorCheck,
    Nakayama,
    Perfect,
    PerfectContradual,
    Gorenstein,
    SerreCheck,
    Koszul,
    Hochschild,
    Smooth,
    Auslander,
    Keylemma,
    Selftest,
}

impl Command {
    pub fn name(&self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum IdealKind {
    Minus,
    #[default]
    Plus,
}

/// Exact computations with finite-dimensional DG algebras.
///
/// Exit codes: 0 yes/success, 1 no, 2 inconclusive at truncation, 3 input error.
#[derive(Clone, Debug, Parser)]
#[command(name = "dgforge", version)]
pub struct Cli {
    pub command: Command,
    /// Algebra file, or `builtin:<name>`.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Module file, `residue` (A/J₋), `regular`, `simple:<i>` or `random`
    /// (seeded by --seed).
    #[arg(long)]
    pub module: Option<String>,
    /// Second module, for tensor, rhom, exttor-check and serre-check. For
    /// tensor and exttor-check it is a left module (a module over `A^op`).
    #[arg(long)]
    pub module2: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub stages: usize,
    #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Building blocks used by `--module random`.
    #[arg(long, default_value_t = 3)]
    pub budget: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub no_validate: bool,
    #[arg(long, default_value_t = 6)]
    pub bar_length: usize,
    /// Field for builtin algebras: `Q` or `Fp:<p>`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Ideal used by `quotient`.
    #[arg(long, value_enum, default_value_t = IdealKind::Plus)]
    pub ideal: IdealKind,
}

/// Primes with a compiled field type.
pub const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 101, 1009, 32003, 2147483647];

macro_rules! with_field {
    ($field:expr, $S:ident => $body:expr) => {
        match $field {
            FieldSpec::Rational => {
                type $S = Rational;
                $body
            }
            FieldSpec::Prime(2) => {
                type $S = Fp<2>;
                $body
            }
            FieldSpec::Prime(3) => {
                type $S = Fp<3>;
                $body
            }
            FieldSpec::Prime(5) => {
                type $S = Fp<5>;
                $body
            }
            FieldSpec::Prime(7) => {
                type $S = Fp<7>;
                $body
            }
            FieldSpec::Prime(11) => {
                type $S = Fp<11>;
                $body
            }
            FieldSpec::Prime(13) => {
                type $S = Fp<13>;
                $body
            }
            FieldSpec::Prime(101) => {
                type $S = Fp<101>;
                $body
            }
            FieldSpec::Prime(1009) => {
                type $S = Fp<1009>;
                $body
            }
            FieldSpec::Prime(32003) => {
                type $S = Fp<32003>;
                $body
            }
            FieldSpec::Prime(2147483647) => {
                type $S = Fp<2147483647>;
                $body
            }
            FieldSpec::Prime(p) => Err(Failure::Input(format!("unsupported prime {p}; supported: {PRIMES:?}"))),
        }
    };
}

/// Why a command produced no verdict.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    /// The computation outgrew a size guard; reported as inconclusive.
    TooLarge(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge(m) => Failure::TooLarge(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &str) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

struct Source {
    label: String,
    text: Option<String>,
    builtin: Option<String>,
}

impl Source {
    fn algebra(spec: &str) -> std::result::Result<Self, Failure> {
        match spec.strip_prefix("builtin:") {
            Some(name) => Ok(Source { label: spec.into(), text: None, builtin: Some(name.into()) }),
            None => Ok(Source { label: spec.into(), text: Some(read(spec)?), builtin: None }),
        }
    }

    fn field(&self, flag: &str) -> std::result::Result<FieldSpec, Failure> {
        match &self.text {
            Some(t) => sniff_field(t).map_err(|e| Failure::Input(format!("{}:{e}", self.label))),
            None => flag.parse().map_err(|e: Error| Failure::Input(e.to_string())),
        }
    }
}

fn algebra_source(cli: &Cli) -> std::result::Result<Source, Failure> {
    if let Some(a) = &cli.algebra {
        return Source::algebra(a);
    }
    let Some(m) = cli.module.as_deref().filter(|m| is_file_module(m)) else {
        return Err(Failure::Input("--algebra is required".into()));
    };
    let text = read(m)?;
    match module_algebra_ref(&text).map_err(|e| Failure::Input(format!("{m}:{e}")))? {
        Some(AlgebraRef::Builtin(name)) => Source::algebra(&format!("builtin:{name}")),
        Some(AlgebraRef::Path(p)) => {
            let base = Path::new(m).parent().unwrap_or(Path::new(""));
            Source::algebra(&base.join(p).to_string_lossy())
        }
        None => Err(Failure::Input(format!("{m}: no algebra reference; pass --algebra"))),
    }
}

fn is_file_module(spec: &str) -> bool {
    !matches!(spec, "residue" | "regular" | "random") && !spec.starts_with("simple:")
}

fn violations_message(what: &str, v: &[dgforge_core::Violation]) -> String {
    let list: Vec<String> = v.iter().take(8).map(|x| format!("{} {:?}: {}", x.axiom, x.indices, x.detail)).collect();
    let more = if v.len() > 8 { format!(" (and {} more)", v.len() - 8) } else { String::new() };
    format!("{what} fails validation: {}{more}", list.join("; "))
}

struct Inputs<S> {
    algebra: Arc<FdDga<S>>,
    algebra_label: String,
}

impl<S: Scalar> Inputs<S> {
    fn load(cli: &Cli, src: &Source, report: &mut Report) -> std::result::Result<Self, Failure> {
        let (algebra, bytes) = match (&src.text, &src.builtin) {
            (Some(t), _) => {
                let a = parse_algebra::<S>(t).map_err(|e| Failure::Input(format!("{}:{e}", src.label)))?;
                (a, t.clone())
            }
            (None, Some(name)) => {
                let a = builtin_example::<S>(name)?;
                let text = emit_algebra(&a).map_err(Failure::Input)?;
                (a, text)
            }
            _ => unreachable!("sources carry text or a builtin name"),
        };
        report.inputs.push(InputDigest::new("algebra", &src.label, bytes.as_bytes()));
        if !cli.no_validate && cli.command != Command::Validate {
            let v = algebra.validate();
            if !v.is_empty() {
                return Err(Failure::Input(violations_message(&src.label, &v)));
            }
        }
        Ok(Inputs { algebra: Arc::new(algebra), algebra_label: src.label.clone() })
    }

    fn module(&self, cli: &Cli, spec: Option<&str>, role: &str, report: &mut Report) -> std::result::Result<Option<DgModule<S>>, Failure> {
        self.module_over(&self.algebra, cli, spec, role, report)
    }

    /// A left module, i.e. a right module over `A^op`.
    fn left_module(&self, cli: &Cli, spec: Option<&str>, role: &str, report: &mut Report) -> std::result::Result<DgModule<S>, Failure> {
        let op = Arc::new(self.algebra.opposite());
        let spec = spec.unwrap_or("residue");
        let m = self.module_over(&op, cli, Some(spec), role, report)?.expect("spec given");
        Ok(m)
    }

    fn module_over(
        &self,
        a: &Arc<FdDga<S>>,
        cli: &Cli,
        spec: Option<&str>,
        role: &str,
        report: &mut Report,
    ) -> std::result::Result<Option<DgModule<S>>, Failure> {
        let Some(spec) = spec else { return Ok(None) };
        // the second module of a pair gets its own random stream
        let seed = if role == "module2" { cli.seed.wrapping_add(1) } else { cli.seed };
        let m = match spec {
            "residue" => residue_module(a)?,
            "regular" => DgModule::regular(a),
            "random" => random_module(a, seed, cli.budget)?,
            s if s.starts_with("simple:") => {
                let i: usize = s["simple:".len()..].parse().map_err(|_| Failure::Input(format!("bad module spec `{s}`")))?;
                let simples = simple_modules(a)?;
                simples.get(i).cloned().ok_or_else(|| Failure::Input(format!("{s}: only {} simple modules", simples.len())))?
            }
            path => {
                let text = read(path)?;
                report.inputs.push(InputDigest::new(role, path, text.as_bytes()));
                let m = parse_module::<S>(&text, a).map_err(|e| Failure::Input(format!("{path}:{e}")))?;
                if !cli.no_validate && cli.command != Command::Validate {
                    let v = m.validate();
                    if !v.is_empty() {
                        return Err(Failure::Input(violations_message(path, &v)));
                    }
                }
                return Ok(Some(m));
            }
        };
        let label = if spec == "random" { format!("random (seed {seed}, budget {})", cli.budget) } else { spec.to_string() };
        let text = emit_module(&m, "generated").unwrap_or_else(|_| label.clone());
        report.inputs.push(InputDigest::new(role, &label, text.as_bytes()));
        Ok(Some(m))
    }

    /// `--module`, defaulting to `A/J₋`.
    fn module_or_residue(&self, cli: &Cli, report: &mut Report) -> std::result::Result<DgModule<S>, Failure> {
        let spec = cli.module.as_deref().unwrap_or("residue");
        Ok(self.module(cli, Some(spec), "module", report)?.expect("spec given"))
    }
}

fn options(cli: &Cli) -> Options {
    Options {
        field: cli.field.clone(),
        stages: cli.stages,
        window: cli.window.clone(),
        seed: cli.seed,
        bar_length: cli.bar_length,
        validate: !cli.no_validate,
    }
}

/// Runs one parsed invocation.
pub fn execute(cli: &Cli) -> Report {
    let start = Instant::now();
    let mut report = Report::new(&cli.command.name(), options(cli));
    let result = dispatch(cli, &mut report);
    let mut report = match result {
        Ok(()) => report,
        Err(Failure::Input(m)) => report.input_error(&m),
        Err(Failure::TooLarge(m)) => {
            report.set_status(Status::Inconclusive);
            report.summary = format!("computation too large: {m}");
            report
        }
    };
    report.wall_time = start.elapsed();
    report
}

fn dispatch(cli: &Cli, report: &mut Report) -> Outcome {
    let window: Window = cli.window.parse().map_err(|e: Error| Failure::Input(e.to_string()))?;
    if cli.command == Command::Selftest {
        return selftest::run(report);
    }
    let src = algebra_source(cli)?;
    let field = src.field(&cli.field)?;
    report.options.field = field.to_string();
    with_field!(field, S => {
        let inputs = Inputs::<S>::load(cli, &src, report)?;
        run_command(cli, &inputs, window, report)
    })
}

#[derive(Serialize)]
struct GeneratorInfo {
    degree: i32,
    stage: usize,
    idempotent: usize,
}

fn degree_counts(degrees: &[i32]) -> std::collections::BTreeMap<i32, usize> {
    let mut out = std::collections::BTreeMap::new();
    for d in degrees {
        *out.entry(*d).or_insert(0) += 1;
    }
    out
}

fn run_command<S: Scalar>(cli: &Cli, inputs: &Inputs<S>, window: Window, report: &mut Report) -> Outcome {
    let a = &inputs.algebra;
    let stages = cli.stages;
    match cli.command {
        Command::Validate => {
            let mut all = a.validate();
            report.detail("dimension", a.dim());
            report.detail("degrees", degree_counts(a.degrees()));
            let m = inputs.module(cli, cli.module.as_deref(), "module", report)?;
            if let Some(m) = &m {
                all.extend(m.validate());
                report.detail("module_dimension", m.dim());
            }
            let list: Vec<_> = all.iter().map(|v| json!({"axiom": v.axiom, "indices": v.indices, "detail": v.detail})).collect();
            report.detail("violations", list);
            if all.is_empty() {
                report.status = "valid".into();
                report.summary = format!("{} satisfies every axiom", inputs.algebra_label);
            } else {
                report.status = "invalid".into();
                report.exit_code = 1;
                report.summary = violations_message(&inputs.algebra_label, &all);
            }
        }
        Command::Radical => {
            let j = underlying_radical(a)?;
            let (jm, jp) = dg_ideals(a)?;
            report.detail("dim_J", j.dim());
            report.detail("dim_J_minus", jm.dim());
            report.detail("dim_J_plus", jp.dim());
            report.detail("nilpotency_index", nilpotency_index(a, &j)?);
            let q = quotient_dga(a, &jp.space)?;
            report.detail("quotient_separable", q.algebra.dim() == 0 || is_separable(&q.algebra).is_some());
            let hm = subspace_cohomology(a, &jm.space)?;
            let hp = subspace_cohomology(a, &jp.space)?;
            report.summary = if hm == hp {
                "J₋ ⊆ J ⊆ J₊ with J₋ ↪ J₊ a quasi-isomorphism".into()
            } else {
                "H(J₋) and H(J₊) differ".into()
            };
            report.tables.push(TableReport::new("H(J₋)", &hm));
            report.tables.push(TableReport::new("H(J₊)", &hp));
        }
        Command::Quotient => {
            let (jm, jp) = dg_ideals(a)?;
            let ideal = if cli.ideal == IdealKind::Minus { &jm.space } else { &jp.space };
            let q = quotient_dga(a, ideal)?;
            report.detail("dimension", q.algebra.dim());
            report.detail("representatives", q.representatives.iter().map(|i| a.name(*i).to_string()).collect::<Vec<_>>());
            match emit_algebra(&q.algebra) {
                Ok(text) => report.detail("algebra", text),
                Err(_) => report.detail("algebra", "the zero ring"),
            }
            report.summary = format!("quotient of dimension {}", q.algebra.dim());
            report.tables.push(TableReport::new("H(quotient)", &q.algebra.cohomology()));
        }
        Command::Filtration => match inputs.module(cli, cli.module.as_deref(), "module", report)? {
            Some(m) => {
                let (w, factors) = radical_filtration(&m)?;
                report.detail("factor_dims", &w.factor_dims);
                report.detail("length", w.length());
                report.summary = format!("M ⊇ MJ₋ ⊇ … ⊇ 0 has {} factors, each killed by J₋", w.length());
                for (i, f) in factors.iter().enumerate() {
                    report.tables.push(TableReport::new(&format!("H(factor {i})"), &f.cohomology()));
                }
            }
            None => {
                let w = bimodule_filtration(a)?;
                report.detail("factor_dims", &w.factor_dims);
                report.detail("length", w.length());
                report.summary = format!("A ⊇ J₋ ⊇ … ⊇ 0 has {} factors, each an A/J₋-bimodule", w.length());
            }
        },
        Command::SepIdem => {
            match is_separable(a) {
                Some(p) => {
                    let terms: Vec<_> = p
                        .terms(a.dim())
                        .into_iter()
                        .map(|(i, j, c)| json!({"left": a.name(i), "right": a.name(j), "coeff": c.to_string()}))
                        .collect();
                    report.detail("idempotent", terms);
                    report.set_status(Status::CertifiedYes);
                    report.summary = "separability idempotent found and verified".into();
                }
                None => {
                    report.detail("idempotent", serde_json::Value::Null);
                    report.set_status(Status::CertifiedNo);
                    report.summary = "no separability idempotent exists".into();
                }
            }
            let (_, jp) = dg_ideals(a)?;
            let q = quotient_dga(a, &jp.space)?;
            report.detail("quotient_separable", q.algebra.dim() == 0 || is_separable(&q.algebra).is_some());
        }
        Command::Resolve | Command::Betti => {
            let m = inputs.module_or_residue(cli, report)?;
            let r = resolve_minimal(&m, stages)?;
            report.betti.push(crate::report::BettiReport::new("M", &r.betti_table()));
            report.periodicity = r.periodicity.map(Into::into);
            report.detail("complete", r.complete);
            report.detail("stages_run", r.stages_run);
            report.summary = format!(
                "{} generators over {} stages{}",
                r.generator_count(),
                r.stages_run,
                if r.complete { ", resolution complete" } else { "" }
            );
            if cli.command == Command::Resolve {
                let gens: Vec<_> =
                    r.generators.iter().map(|g| GeneratorInfo { degree: g.degree, stage: g.stage, idempotent: g.ty }).collect();
                report.detail("generators", gens);
                report.detail("minimal", r.minimal);
                report.detail("cancellations", r.cancellations);
                report.tables.push(TableReport::new("residual H(cone)", &r.residual));
            }
        }
        Command::Tensor => {
            let m = inputs.module_or_residue(cli, report)?;
            let n = inputs.left_module(cli, cli.module2.as_deref(), "module2", report)?;
            let t = derived_tensor(&m, &n, window, stages)?;
            report.summary = certified_summary(&t);
            report.tables.push(TableReport::new("H(M ⊗^L N)", &t));
        }
        Command::Rhom => {
            let m = inputs.module_or_residue(cli, report)?;
            let n = match inputs.module(cli, cli.module2.as_deref(), "module2", report)? {
                Some(n) => n,
                None => residue_module(a)?,
            };
            let t = derived_hom(&m, &n, window, stages)?;
            report.summary = certified_summary(&t);
            report.tables.push(TableReport::new("H(RHom(M, N))", &t));
        }
        Command::ExttorCheck => {
            let m = inputs.module_or_residue(cli, report)?;
            let n = inputs.left_module(cli, cli.module2.as_deref(), "module2", report)?;
            report.absorb(&ext_tor_duality_check(&m, &n, window, stages)?);
        }
        Command::Nakayama => {
            let m = inputs.module_or_residue(cli, report)?;
            let n = nakayama_witness(&m, stages)?;
            report.absorb(&n.verdict);
            report.detail("cohomology_nonzero", n.cohomology_nonzero);
            report.detail("stage_zero_generators", n.stage_zero_generators);
            report.detail("witness", n.witness.map(|(d, t)| json!({"degree": d, "idempotent": t})));
            report.detail("tensor_certificate", &n.tensor_certificate);
        }
        Command::Perfect => {
            let m = inputs.module_or_residue(cli, report)?;
            report.absorb(&perfection_check(&m, stages)?);
        }
        Command::PerfectContradual => {
            let m = inputs.module_or_residue(cli, report)?;
            report.absorb(&contradual_perfection_check(&m, window, stages)?);
        }
        Command::Gorenstein => report.absorb(&gorenstein_check(a, window, stages)?),
        Command::SerreCheck => {
            let m = inputs.module(cli, Some(cli.module.as_deref().unwrap_or("regular")), "module", report)?.expect("given");
            let n = match inputs.module(cli, cli.module2.as_deref(), "module2", report)? {
                Some(n) => n,
                None => m.clone(),
            };
            report.absorb(&serre_duality_check(&m, &n, window, stages)?);
        }
        Command::Koszul => {
            let k = koszul_dual(a, stages, window)?;
            report.tables.push(TableReport::new("H(Hom(F, A/J₋))", &k.table));
            report.tables.push(TableReport::new("certified H(A^!)", &k.certified_table()));
            report.tables.push(TableReport::new("H(End(F)) of the truncation", &k.end_cohomology));
            report.betti.push(crate::report::BettiReport::new("A/J₋", &k.resolution.betti_table()));
            report.detail("truncated_dimension", k.algebra.dim());
            let classes: Vec<_> = k
                .classes
                .iter()
                .map(|c| json!({"degree": c.degree, "generator": c.generator, "lifted": c.lift.is_some()}))
                .collect();
            report.detail("classes", classes);
            let products: Vec<_> = k
                .products
                .iter()
                .map(|p| {
                    let coords: Vec<_> = p.coords.iter().map(|(i, c)| json!([i, c.to_string()])).collect();
                    json!({"left": p.left, "right": p.right, "degree": p.degree, "coords": coords, "complete": p.complete})
                })
                .collect();
            report.detail("products", products);
            let total: usize = k.certified.values().sum();
            report.summary = format!("{total} certified classes of A^! from {} stages", k.resolution.stages_run);
        }
        Command::Hochschild => {
            let t = hochschild_homology(a, cli.bar_length, window)?;
            report.summary = format!("normalized bar complex up to length {}; {}", cli.bar_length, certified_summary(&t));
            report.tables.push(TableReport::new("HH (degree −n holds HH_n)", &t));
        }
        Command::Smooth => report.absorb(&smoothness_check(a, stages)?),
        Command::Auslander => {
            let aus = auslander_dga(a)?;
            report.detail("dimension", aus.dim());
            report.detail("nilpotency_index", aus.index);
            report.detail("degrees", degree_counts(aus.endomorphisms.degrees()));
            report.detail("ideal_dims", aus.ideals.iter().map(|j| j.dim()).collect::<Vec<_>>());
            report.detail("projective_dims", aus.projectives.iter().map(|p| p.dim()).collect::<Vec<_>>());
            report.detail("J_power_dims", (1..=aus.index).map(|i| power(a, &underlying_radical(a).unwrap(), i).dim()).collect::<Vec<_>>());
            report.tables.push(TableReport::new("H(Aus(A))", &aus.endomorphisms.cohomology()));
            report.summary = format!("End(M) has dimension {} for N = {}", aus.dim(), aus.index);
        }
        Command::Keylemma => {
            let aus = auslander_dga(a)?;
            let s = keylemma_from(&aus)?;
            report.detail("dimension", s.dim());
            report.detail("degrees", degree_counts(s.degrees()));
            report.detail("valid", s.validate().is_empty());
            report.tables.push(TableReport::new("H(S)", &s.cohomology()));
            report.summary = format!("P_N ⊗_E E/J(E)₋ is a module over A^op of dimension {}", s.dim());
        }
        Command::Selftest => unreachable!("handled before loading inputs"),
    }
    if report.status.is_empty() {
        report.status = STATUS_OK.into();
    }
    Ok(())
}

fn certified_summary(t: &dgforge_core::CohomologyTable) -> String {
    let cert: Vec<i32> = t.entries.iter().filter(|(_, e)| e.certified).map(|(d, _)| *d).collect();
    match (cert.first(), cert.last()) {
        (Some(lo), Some(hi)) if cert.len() as i32 == hi - lo + 1 => format!("certified on degrees {lo}..{hi}"),
        (Some(_), Some(_)) => format!("certified on {} degrees", cert.len()),
        _ => "no degree certified".into(),
    }
}

/// Parses `args` (including the program name), runs, and prints.
/// Returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    let report = execute(&cli);
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_human());
    }
    report.exit_code
}
