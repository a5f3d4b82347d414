//! Derived tensor and Hom through truncated resolutions, with certified
//! windows, and the verdict-level criteria built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::complex::{CohomologyTable, Complex};
use crate::dga::FdDga;
use crate::error::{Error, Result};
use crate::linalg::{sparse, SparseVec, Subspace};
use crate::module::{diagonal_bimodule, same_algebra, strict_tensor, DgModule, Side};
use crate::radical::{dg_ideals, is_separable, quotient_dga};
use crate::resolution::{resolve_minimal, BettiTable, FutureGenerators, Periodicity, TruncatedResolution};
use crate::scalar::Scalar;

/// Inclusive range of cohomological degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!("empty window {lo}:{hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    pub fn contains(&self, d: i32) -> bool {
        (self.lo..=self.hi).contains(&d)
    }
}

impl Default for Window {
    fn default() -> Self {
        Window { lo: -8, hi: 8 }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // the first ':' after a possible leading sign separates the bounds
        let bad = || Error::Parse(format!("window `{s}` is not of the form lo:hi"));
        let split = s.char_indices().skip(1).find(|(_, c)| *c == ':').map(|(i, _)| i).ok_or_else(bad)?;
        let lo = s[..split].trim().parse().map_err(|_| bad())?;
        let hi = s[split + 1..].trim().parse().map_err(|_| bad())?;
        Window::new(lo, hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    CertifiedYes,
    CertifiedNo,
    Inconclusive,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::CertifiedYes => 0,
            Status::CertifiedNo => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::CertifiedYes => "Certified-Yes",
            Status::CertifiedNo => "Certified-No",
            Status::Inconclusive => "Inconclusive-at-truncation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub summary: String,
    pub betti: Vec<(String, BettiTable)>,
    pub tables: Vec<(String, CohomologyTable)>,
    pub window: Option<Window>,
    pub periodicity: Option<Periodicity>,
}

impl Verdict {
    fn new(status: Status, summary: impl Into<String>) -> Self {
        Verdict { status, summary: summary.into(), betti: vec![], tables: vec![], window: None, periodicity: None }
    }
}

/// `F ⊗_A N` on the basis `e_g ⊗ (ε_g N)`.
#[derive(Clone, Debug)]
pub struct TwistedTensor<S> {
    pub complex: Complex<S>,
    /// `(generator, row of the part)` per basis vector.
    pub labels: Vec<(usize, usize)>,
    /// Echelon basis of `ε_τ N` per type, in coordinates of `N`.
    pub parts: Vec<Subspace<S>>,
    pub offsets: Vec<usize>,
}

/// `Hom_A(F, N)` on the basis `e_g ↦ w`, `w` running over `N ε_g`.
#[derive(Clone, Debug)]
pub struct TwistedHom<S> {
    pub complex: Complex<S>,
    pub labels: Vec<(usize, usize)>,
    pub parts: Vec<Subspace<S>>,
    pub offsets: Vec<usize>,
}

fn part_coords<S: Scalar>(part: &Subspace<S>, v: &[(usize, S)]) -> SparseVec<S> {
    sparse::from_dense(&part.coords(v).expect("vector lies in its part"))
}

/// The twisted tensor product with a left module over `A` (or a right module
/// over `A^op`).
pub fn twisted_tensor<S: Scalar>(r: &TruncatedResolution<S>, n: &DgModule<S>) -> Result<TwistedTensor<S>> {
    let n = n.as_left_over(r.algebra())?;
    let ctx = &*r.context;
    let parts: Vec<Subspace<S>> = ctx
        .types
        .iter()
        .map(|e| {
            let es = sparse::from_dense(e);
            Subspace::span(n.dim(), (0..n.dim()).map(|j| n.act(&n.basis_vector(j), &es)).collect::<Vec<_>>())
        })
        .collect();
    let mut offsets = Vec::new();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (gi, g) in r.generators.iter().enumerate() {
        offsets.push(labels.len());
        for (row, v) in parts[g.ty].rows().iter().enumerate() {
            labels.push((gi, row));
            degrees.push(g.degree + n.homogeneous_degree(v).expect("homogeneous rows"));
        }
    }
    let mut diff = Vec::with_capacity(labels.len());
    for (gi, row) in &labels {
        let g = &r.generators[*gi];
        let v = &parts[g.ty].rows()[*row];
        let mut e = Vec::new();
        for (h, c) in &g.coeffs {
            let th = r.generators[*h].ty;
            let cv = n.act_dense(v, c);
            e.extend(sparse::shift_indices(&part_coords(&parts[th], &cv), offsets[*h]));
        }
        let s = S::sign(g.degree as i64);
        for (k, x) in part_coords(&parts[g.ty], &n.d(v)) {
            e.push((offsets[*gi] + k, s.clone() * x));
        }
        diff.push(sparse::from_entries(e));
    }
    let complex = Complex::new(degrees, diff);
    complex.check()?;
    Ok(TwistedTensor { complex, labels, parts, offsets })
}

/// `Hom_A(F, N)` for a right module `N`, with `d(f) = d∘f − (−1)^{|f|} f∘d`.
pub fn twisted_hom<S: Scalar>(r: &TruncatedResolution<S>, n: &DgModule<S>) -> Result<TwistedHom<S>> {
    if n.side() != Side::Right || !same_algebra(n.algebra(), r.algebra()) {
        return Err(Error::AlgebraMismatch("Hom target must be a right module over the same algebra".into()));
    }
    let ctx = &*r.context;
    let parts: Vec<Subspace<S>> = ctx
        .types
        .iter()
        .map(|e| {
            let es = sparse::from_dense(e);
            Subspace::span(n.dim(), (0..n.dim()).map(|j| n.act(&n.basis_vector(j), &es)).collect::<Vec<_>>())
        })
        .collect();
    let mut offsets = Vec::new();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (gi, g) in r.generators.iter().enumerate() {
        offsets.push(labels.len());
        for (row, w) in parts[g.ty].rows().iter().enumerate() {
            labels.push((gi, row));
            degrees.push(n.homogeneous_degree(w).expect("homogeneous rows") - g.degree);
        }
    }
    // users[h] = generators g whose differential involves e_h
    let mut users: Vec<Vec<(usize, &Vec<S>)>> = vec![Vec::new(); r.generators.len()];
    for (gi, g) in r.generators.iter().enumerate() {
        for (h, c) in &g.coeffs {
            users[*h].push((gi, c));
        }
    }
    let mut diff = Vec::with_capacity(labels.len());
    for (idx, (hi, row)) in labels.iter().enumerate() {
        let h = &r.generators[*hi];
        let w = &parts[h.ty].rows()[*row];
        let p = degrees[idx];
        let mut e: Vec<(usize, S)> =
            part_coords(&parts[h.ty], &n.d(w)).into_iter().map(|(k, x)| (offsets[*hi] + k, x)).collect();
        let s = -S::sign(p as i64);
        for (gi, c) in &users[*hi] {
            let tg = r.generators[*gi].ty;
            let wc = n.act_dense(w, c);
            for (k, x) in part_coords(&parts[tg], &wc) {
                e.push((offsets[*gi] + k, s.clone() * x));
            }
        }
        diff.push(sparse::from_entries(e));
    }
    let complex = Complex::new(degrees, diff);
    complex.check()?;
    Ok(TwistedHom { complex, labels, parts, offsets })
}

/// `RHom_A(M, A) = Hom_A(F, A)` for a finite resolution `F`, with `A`
/// acting on the left by postcomposition; returned as a right `A^op`-module.
pub fn perfect_dual<S: Scalar>(r: &TruncatedResolution<S>) -> Result<DgModule<S>> {
    if !r.complete {
        return Err(Error::Precondition("RHom(M, A) as a module needs a finite resolution".into()));
    }
    let a = r.algebra();
    let h = twisted_hom(r, &DgModule::regular(a))?;
    let k = a.dim();
    let mut act = Vec::with_capacity(h.complex.dim() * k);
    for (gi, row) in &h.labels {
        let part = &h.parts[r.generators[*gi].ty];
        let w = sparse::to_dense(&part.rows()[*row], k);
        for b in 0..k {
            let bw = sparse::from_dense(&a.mul(&a.basis_vector(b), &w));
            act.push(part_coords(part, &bw).into_iter().map(|(j, x)| (h.offsets[*gi] + j, x)).collect());
        }
    }
    let names = h.labels.iter().map(|(g, row)| format!("g{g}_{row}")).collect();
    let left = DgModule::from_raw(a.clone(), Side::Left, names, h.complex.degrees.clone(), act, h.complex.diff.clone())?;
    if let Some(v) = left.validate().first() {
        return Err(Error::Internal(format!("Hom(F, A) fails {}: {}", v.axiom, v.detail)));
    }
    Ok(left.side_swap())
}

fn range_of<S: Scalar>(n: &DgModule<S>) -> Option<(i32, i32)> {
    n.degree_range()
}

/// Tensor degree `d` is exact when no later generator reaches degrees `d−1, d`.
pub fn tensor_degree_certified(future: &FutureGenerators, n_range: Option<(i32, i32)>, d: i32) -> bool {
    match n_range {
        None => true,
        Some((lo, hi)) => !future.meets_shifted(d - 1 - hi, d - lo),
    }
}

/// Hom degree `p` is exact when no later generator `G` has `G + p` or
/// `G + p + 1` in the degree range of the target.
pub fn hom_degree_certified(future: &FutureGenerators, n_range: Option<(i32, i32)>, p: i32) -> bool {
    match n_range {
        None => true,
        Some((lo, hi)) => !future.meets_shifted(lo - p - 1, hi - p),
    }
}

fn window_table<S: Scalar>(complex: &Complex<S>, window: Window, certified: impl Fn(i32) -> bool) -> CohomologyTable {
    let h = complex.cohomology();
    let mut t = CohomologyTable::new();
    for d in window.degrees() {
        t.set(d, h.dim(d), certified(d));
    }
    t
}

pub fn tensor_table<S: Scalar>(r: &TruncatedResolution<S>, n: &DgModule<S>, window: Window) -> Result<CohomologyTable> {
    let model = twisted_tensor(r, n)?;
    let range = range_of(n);
    Ok(window_table(&model.complex, window, |d| tensor_degree_certified(&r.future, range, d)))
}

pub fn hom_table<S: Scalar>(r: &TruncatedResolution<S>, n: &DgModule<S>, window: Window) -> Result<CohomologyTable> {
    let model = twisted_hom(r, n)?;
    let range = range_of(n);
    Ok(window_table(&model.complex, window, |p| hom_degree_certified(&r.future, range, p)))
}

/// `H(M ⊗^L_A N)` over the window; `n` is a left `A`-module or a right `A^op`-module.
pub fn derived_tensor<S: Scalar>(m: &DgModule<S>, n: &DgModule<S>, window: Window, max_stages: usize) -> Result<CohomologyTable> {
    let r = resolve_minimal(m, max_stages)?;
    tensor_table(&r, n, window)
}

/// `H(RHom_A(M, N))` over the window.
pub fn derived_hom<S: Scalar>(m: &DgModule<S>, n: &DgModule<S>, window: Window, max_stages: usize) -> Result<CohomologyTable> {
    let r = resolve_minimal(m, max_stages)?;
    hom_table(&r, n, window)
}

/// `A/J₊` must be separable for the radical-based criteria.
pub fn require_separable<S: Scalar>(a: &FdDga<S>) -> Result<()> {
    if a.is_zero_ring() {
        return Ok(());
    }
    let (_, jp) = dg_ideals(a)?;
    if jp.dim() == a.dim() {
        return Ok(());
    }
    let q = quotient_dga(a, &jp.space)?;
    if is_separable(&q.algebra).is_some() {
        Ok(())
    } else {
        Err(Error::Precondition("A/J₊ is not separable".into()))
    }
}

/// `A/J₋` as a right module.
pub fn residue_module<S: Scalar>(a: &Arc<FdDga<S>>) -> Result<DgModule<S>> {
    if a.is_zero_ring() {
        return Ok(DgModule::zero(a.clone()));
    }
    let (jm, _) = dg_ideals(a)?;
    DgModule::algebra_quotient(a, &jm.space)
}

/// The simple right modules `εA / εJ₋`, one per idempotent of the
/// resolution's family.
pub fn simple_modules<S: Scalar>(a: &Arc<FdDga<S>>) -> Result<Vec<DgModule<S>>> {
    if a.is_zero_ring() {
        return Ok(Vec::new());
    }
    let ctx = crate::resolution::ResolutionContext::new(a)?;
    let n = a.dim();
    let one = a.one();
    let mut out = Vec::new();
    for e in &ctx.types {
        // J₋ + (1 − ε)A is a right ideal with quotient εA/εJ₋
        let f: Vec<S> = one.iter().zip(e).map(|(x, y)| x.clone() - y.clone()).collect();
        let mut gens: Vec<SparseVec<S>> = ctx.j_minus.rows().to_vec();
        for b in 0..n {
            gens.push(sparse::from_dense(&a.mul(&f, &a.basis_vector(b))));
        }
        out.push(DgModule::algebra_quotient(a, &Subspace::span(n, gens))?);
    }
    Ok(out)
}

/// `A/J₋` as a right module over `A^op`, i.e. a left `A`-module.
pub fn left_residue_module<S: Scalar>(a: &Arc<FdDga<S>>) -> Result<DgModule<S>> {
    let op = Arc::new(a.opposite());
    residue_module(&op)
}

pub fn ext_tor_duality_check<S: Scalar>(m: &DgModule<S>, n: &DgModule<S>, window: Window, max_stages: usize) -> Result<Verdict> {
    let r = resolve_minimal(m, max_stages)?;
    ext_tor_with(&r, n, window)
}

/// `dim H^i RHom_A(M, N^∨) = dim H^{−i}(M ⊗^L_A N)` on mutually certified degrees.
pub fn ext_tor_with<S: Scalar>(r: &TruncatedResolution<S>, n: &DgModule<S>, window: Window) -> Result<Verdict> {
    let n_right = match n.side() {
        Side::Right => n.clone(),
        Side::Left => n.side_swap(),
    };
    let dual = n_right.k_dual()?;
    if !same_algebra(dual.algebra(), r.algebra()) {
        return Err(Error::AlgebraMismatch("N must be a module over the opposite algebra".into()));
    }
    let dual = DgModule::from_raw(
        r.algebra().clone(),
        Side::Right,
        dual.names().to_vec(),
        dual.degrees().to_vec(),
        (0..dual.dim()).flat_map(|i| (0..r.algebra().dim()).map(move |b| (i, b))).map(|(i, b)| dual.act_basis(i, b).clone()).collect(),
        (0..dual.dim()).map(|i| dual.diff_basis(i).clone()).collect(),
    )?;
    let flipped = Window { lo: -window.hi, hi: -window.lo };
    let hom = hom_table(r, &dual, window)?;
    let ten = tensor_table(r, &n_right, flipped)?;
    let mut compared = 0;
    let mut bad = Vec::new();
    for i in window.degrees() {
        if hom.is_certified(i) && ten.is_certified(-i) {
            compared += 1;
            if hom.dim(i) != ten.dim(-i) {
                bad.push(i);
            }
        }
    }
    let mut v = if bad.is_empty() {
        Verdict::new(Status::CertifiedYes, format!("Ext and Tor agree on {compared} mutually certified degrees"))
    } else {
        Verdict::new(Status::CertifiedNo, format!("Ext and Tor differ in degrees {bad:?}"))
    };
    v.tables = vec![("RHom(M, N^∨)".into(), hom), ("M ⊗^L N".into(), ten)];
    v.window = Some(window);
    Ok(v)
}

/// Certifies that `H(M ⊗^L_A N) ≠ 0`: either a nonzero class in a
/// certified degree, or a cycle of `F ⊗ N` whose image under
/// `ε ⊗ 1: F ⊗ N → M ⊗_A N` is not a boundary.
pub fn tensor_nonzero_certificate<S: Scalar>(r: &TruncatedResolution<S>, n: &DgModule<S>) -> Result<Option<String>> {
    let model = twisted_tensor(r, n)?;
    let data = model.complex.degree_data();
    let range = range_of(n);
    for (d, dd) in &data {
        if dd.cycles.len() > dd.boundaries.rank() && tensor_degree_certified(&r.future, range, *d) {
            return Ok(Some(format!("certified degree {d} has dimension {}", dd.cycles.len() - dd.boundaries.rank())));
        }
    }
    let strict = strict_tensor(&r.target, n)?;
    let sdata = strict.complex.degree_data();
    for (d, dd) in &data {
        for z in &dd.cycles {
            let mut terms = Vec::new();
            for (idx, x) in z {
                let (gi, row) = model.labels[*idx];
                let g = &r.generators[gi];
                let v = &model.parts[g.ty].rows()[row];
                for (mi, y) in &g.aug {
                    for (nj, w) in v {
                        terms.push((*mi, *nj, x.clone() * y.clone() * w.clone()));
                    }
                }
            }
            let image = strict.coords(&terms);
            let nonzero = match sdata.get(d) {
                Some(sd) => !sd.boundaries.contains(&image),
                None => !image.is_empty(),
            };
            if nonzero {
                return Ok(Some(format!("a degree-{d} class maps to a nonzero class of the strict tensor product")));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaReport {
    pub cohomology_nonzero: bool,
    pub stage_zero_generators: usize,
    /// Degree and type of the first stage-0 generator.
    pub witness: Option<(i32, usize)>,
    pub tensor_certificate: Option<String>,
    pub verdict: Verdict,
}

/// `H(M) ≠ 0 ⟺` a stage-0 generator exists `⟺` certified `H(M ⊗^L A/J₋) ≠ 0`.
pub fn nakayama_witness<S: Scalar>(m: &DgModule<S>, max_stages: usize) -> Result<NakayamaReport> {
    require_separable(m.algebra())?;
    let r = resolve_minimal(m, max_stages)?;
    let left = left_residue_module(m.algebra())?;
    let cohomology_nonzero = !m.cohomology().is_zero();
    let stage_zero = r.stage_zero_count();
    let witness = r.generators.iter().find(|g| g.stage == 0).map(|g| (g.degree, g.ty));
    let cert = if stage_zero > 0 { tensor_nonzero_certificate(&r, &left)? } else { None };
    let tensor_zero_certified = r.complete && r.generators.is_empty();
    let (status, summary) = if !cohomology_nonzero && stage_zero == 0 && tensor_zero_certified {
        (Status::CertifiedYes, "H(M) = 0; the minimal resolution is empty".to_string())
    } else if cohomology_nonzero && stage_zero > 0 && cert.is_some() {
        (Status::CertifiedYes, format!("H(M) ≠ 0, witnessed by a stage-0 generator; {}", cert.clone().unwrap()))
    } else if cohomology_nonzero == (stage_zero > 0) {
        (Status::Inconclusive, "M ⊗^L A/J₋ could not be certified nonzero at this truncation".to_string())
    } else {
        (Status::CertifiedNo, "H(M) and the stage-0 generators disagree".to_string())
    };
    let mut verdict = Verdict::new(status, summary);
    verdict.betti = vec![("M".into(), r.betti_table())];
    Ok(NakayamaReport { cohomology_nonzero, stage_zero_generators: stage_zero, witness, tensor_certificate: cert, verdict })
}

/// Perfection from the minimal resolution: complete → yes; periodic
/// syzygies → no; otherwise inconclusive.
pub fn perfection_check<S: Scalar>(m: &DgModule<S>, max_stages: usize) -> Result<Verdict> {
    require_separable(m.algebra())?;
    let r = resolve_minimal(m, max_stages)?;
    Ok(perfection_from(&r))
}

pub fn perfection_from<S: Scalar>(r: &TruncatedResolution<S>) -> Verdict {
    let betti = r.betti_table();
    let mut v = if r.complete {
        let len = betti.per_stage().len();
        Verdict::new(Status::CertifiedYes, format!("the minimal resolution terminates after {len} stage(s)"))
    } else if let Some(p) = r.periodicity {
        let mut v = Verdict::new(
            Status::CertifiedNo,
            format!("Ω^{} ≅ Σ^{} Ω^{} (Ω^0 = M), so the syzygies repeat forever", p.later + 1, p.shift, p.earlier + 1),
        );
        v.periodicity = Some(p);
        v
    } else {
        Verdict::new(Status::Inconclusive, format!("no termination after {} stages", r.stages_run))
    };
    v.betti = vec![("M".into(), betti)];
    v
}

/// Perfection through `RHom(M, A/J₋) ≅ (M ⊗^L (A/J₋)^∨)^∨`, cross-checked
/// against the direct `RHom` and against [`perfection_check`].
pub fn contradual_perfection_check<S: Scalar>(m: &DgModule<S>, window: Window, max_stages: usize) -> Result<Verdict> {
    require_separable(m.algebra())?;
    let r = resolve_minimal(m, max_stages)?;
    let a = m.algebra();
    let k = residue_module(a)?;
    let kd = k.k_dual()?;
    let flipped = Window { lo: -window.hi, hi: -window.lo };
    let ten = tensor_table(&r, &kd, flipped)?;
    let mut via = CohomologyTable::new();
    for i in window.degrees() {
        via.set(i, ten.dim(-i), ten.is_certified(-i));
    }
    let direct = hom_table(&r, &k, window)?;
    for i in window.degrees() {
        if via.is_certified(i) && direct.is_certified(i) && via.dim(i) != direct.dim(i) {
            return Err(Error::Internal(format!("Ext–Tor duality fails for RHom(M, A/J₋) in degree {i}")));
        }
    }
    let mut v = if r.complete {
        Verdict::new(Status::CertifiedYes, "RHom(M, A/J₋) is computed from a finite resolution and is bounded")
    } else if let Some(p) = r.periodicity {
        // infinitely many generators of a minimal resolution: RHom(M, A/J₋) is not finite
        let mut v = Verdict::new(Status::CertifiedNo, "RHom(M, A/J₋) repeats along a periodic syzygy and is unbounded");
        v.periodicity = Some(p);
        v
    } else {
        Verdict::new(Status::Inconclusive, "RHom(M, A/J₋) has no boundedness certificate at this truncation")
    };
    let plain = perfection_from(&r);
    if plain.status != Status::Inconclusive && v.status != Status::Inconclusive && plain.status != v.status {
        return Err(Error::Internal("the two perfection criteria contradict each other".into()));
    }
    v.tables = vec![("RHom(M, A/J₋) via duality".into(), via), ("RHom(M, A/J₋)".into(), direct)];
    v.betti = plain.betti;
    v.window = Some(window);
    Ok(v)
}

/// Whether `H(RHom(M, N))` is provably bounded: a finite resolution, or a
/// periodic classical resolution of a module and algebra in degree 0 whose
/// certified table vanishes over one period past the start of periodicity.
fn bounded_rhom<S: Scalar>(r: &TruncatedResolution<S>, table: &CohomologyTable) -> Option<String> {
    if r.complete {
        return Some("finite resolution".into());
    }
    let p = r.periodicity?;
    let a = r.algebra();
    let in_degree_zero = a.degrees().iter().all(|d| *d == 0) && r.target.degrees().iter().all(|d| *d == 0);
    let period = p.later - p.earlier;
    // Ω_s sits in total degree −s for s ≥ 0; Ω_{−1} = M in degree 0
    let internal_shift = p.later.max(0) - p.earlier.max(0);
    if !in_degree_zero || period <= 0 || p.shift as i64 != internal_shift {
        return None;
    }
    // Ext^q(M, N) ≅ Ext^{q − period}(M, N) for q ≥ later + 2
    let from = (p.earlier + 2).max(1) as i32;
    let to = (p.later + 1) as i32;
    let ok = (from..=to).all(|q| table.entries.get(&q).is_some_and(|e| e.certified) && table.dim(q) == 0);
    ok.then(|| format!("vanishes on degrees {from}..{to} and repeats with period {period} beyond"))
}

pub fn gorenstein_check<S: Scalar>(a: &Arc<FdDga<S>>, window: Window, max_stages: usize) -> Result<Verdict> {
    require_separable(a)?;
    let op = Arc::new(a.opposite());
    let mut notes = Vec::new();
    let mut tables = Vec::new();
    let mut betti = Vec::new();
    let mut all = true;
    for (label, alg) in [("A", a), ("A^op", &op)] {
        let k = residue_module(alg)?;
        let r = resolve_minimal(&k, max_stages)?;
        let t = hom_table(&r, &DgModule::regular(alg), window)?;
        match bounded_rhom(&r, &t) {
            Some(why) => notes.push(format!("{label}: {why}")),
            None => {
                all = false;
                notes.push(format!("{label}: no boundedness certificate"));
            }
        }
        tables.push((format!("RHom_{label}(A/J₋, A)"), t));
        betti.push((format!("A/J₋ over {label}"), r.betti_table()));
    }
    let mut v = Verdict::new(if all { Status::CertifiedYes } else { Status::Inconclusive }, notes.join("; "));
    v.tables = tables;
    v.betti = betti;
    v.window = Some(window);
    Ok(v)
}

/// `A^∨` with both actions: left from the right regular module, right from
/// the left regular module.
pub fn dual_bimodule<S: Scalar>(a: &Arc<FdDga<S>>) -> Result<(DgModule<S>, DgModule<S>)> {
    let left = DgModule::regular(a).k_dual()?.side_swap();
    let op = Arc::new(a.opposite());
    let right_raw = DgModule::regular(&op).k_dual()?;
    let k = a.dim();
    let right = DgModule::from_raw(
        a.clone(),
        Side::Right,
        right_raw.names().to_vec(),
        right_raw.degrees().to_vec(),
        (0..k).flat_map(|i| (0..k).map(move |b| (i, b))).map(|(i, b)| right_raw.act_basis(i, b).clone()).collect(),
        (0..k).map(|i| right_raw.diff_basis(i).clone()).collect(),
    )?;
    let left = DgModule::from_raw(
        a.clone(),
        Side::Left,
        left.names().to_vec(),
        left.degrees().to_vec(),
        (0..k).flat_map(|i| (0..k).map(move |b| (i, b))).map(|(i, b)| left.act_basis(i, b).clone()).collect(),
        (0..k).map(|i| left.diff_basis(i).clone()).collect(),
    )?;
    for i in 0..k {
        for b in 0..k {
            for c in 0..k {
                let lhs = right.act(&left.act_basis(i, b).clone(), &[(c, S::one())]);
                let rhs = left.act(&right.act_basis(i, c).clone(), &[(b, S::one())]);
                if lhs != rhs {
                    return Err(Error::Internal("the two actions on A^∨ do not commute".into()));
                }
            }
        }
    }
    Ok((left, right))
}

/// `F ⊗_A B` as a right module, for a bimodule given by its left and right
/// halves on a common basis.
pub fn twisted_tensor_module<S: Scalar>(r: &TruncatedResolution<S>, left: &DgModule<S>, right: &DgModule<S>) -> Result<DgModule<S>> {
    let model = twisted_tensor(r, left)?;
    let k = right.algebra().dim();
    let mut act = Vec::with_capacity(model.labels.len() * k);
    let mut names = Vec::new();
    for (gi, row) in &model.labels {
        let g = &r.generators[*gi];
        let part = &model.parts[g.ty];
        let v = &part.rows()[*row];
        names.push(format!("e{gi}⊗{row}"));
        for b in 0..k {
            let vb = right.act(v, &[(b, S::one())]);
            act.push(sparse::shift_indices(&part_coords(part, &vb), model.offsets[*gi]));
        }
    }
    DgModule::from_raw(right.algebra().clone(), Side::Right, names, model.complex.degrees.clone(), act, model.complex.diff.clone())
}

/// `dim H^i RHom(M, N) = dim H^{−i} RHom(N, M ⊗^L A^∨)`.
pub fn serre_duality_check<S: Scalar>(m: &DgModule<S>, n: &DgModule<S>, window: Window, max_stages: usize) -> Result<Verdict> {
    let a = m.algebra();
    let g = gorenstein_check(a, window, max_stages)?;
    match g.status {
        Status::CertifiedYes => {}
        Status::CertifiedNo => return Err(Error::Precondition("the algebra is not Gorenstein".into())),
        Status::Inconclusive => {
            return Ok(Verdict::new(Status::Inconclusive, "the Gorenstein property is not certified at this truncation"));
        }
    }
    let rm = resolve_minimal(m, max_stages)?;
    let rn = resolve_minimal(n, max_stages)?;
    for r in [&rm, &rn] {
        if r.periodicity.is_some() {
            return Err(Error::Precondition("both modules must be perfect".into()));
        }
        if !r.complete {
            return Ok(Verdict::new(Status::Inconclusive, "perfection of the inputs is not certified at this truncation"));
        }
    }
    let (l, r) = dual_bimodule(a)?;
    let serre = twisted_tensor_module(&rm, &l, &r)?;
    if !serre.validate().is_empty() {
        return Err(Error::Internal("M ⊗ A^∨ fails validation".into()));
    }
    let lhs = hom_table(&rm, n, window)?;
    let flipped = Window { lo: -window.hi, hi: -window.lo };
    let rhs = hom_table(&rn, &serre, flipped)?;
    let bad: Vec<i32> = window.degrees().filter(|i| lhs.dim(*i) != rhs.dim(-i)).collect();
    let mut v = if bad.is_empty() {
        Verdict::new(Status::CertifiedYes, "RHom(M, N) and RHom(N, S M) have dual dimensions")
    } else {
        Verdict::new(Status::CertifiedNo, format!("dimensions differ in degrees {bad:?}"))
    };
    v.tables = vec![("RHom(M, N)".into(), lhs), ("RHom(N, M ⊗^L A^∨)".into(), rhs)];
    v.window = Some(window);
    Ok(v)
}

/// Perfection of the diagonal bimodule over `A^e`.
pub fn smoothness_check<S: Scalar>(a: &FdDga<S>, max_stages: usize) -> Result<Verdict> {
    let diag = diagonal_bimodule(a);
    perfection_check(&diag, max_stages)
}

/// `dims` keyed by degree from a table, for tests and reports.
pub fn table_dims(t: &CohomologyTable) -> BTreeMap<i32, (usize, bool)> {
    t.entries.iter().map(|(d, e)| (*d, (e.dim, e.certified))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::builtin_example;
    use crate::scalar::Rational;

    type Q = Rational;

    fn alg(name: &str) -> Arc<FdDga<Q>> {
        Arc::new(builtin_example(name).unwrap())
    }

    #[test]
    fn windows_parse() {
        assert_eq!("-8:8".parse::<Window>().unwrap(), Window { lo: -8, hi: 8 });
        assert_eq!("-3:-1".parse::<Window>().unwrap(), Window { lo: -3, hi: -1 });
        assert!("3:1".parse::<Window>().is_err());
        assert!("x".parse::<Window>().is_err());
    }

    #[test]
    fn tor_over_dual_numbers() {
        let d = alg("dual_numbers");
        let k = residue_module(&d).unwrap();
        let kl = left_residue_module(&d).unwrap();
        let t = derived_tensor(&k, &kl, Window::default(), 6).unwrap();
        for i in -8..=8 {
            if t.is_certified(i) {
                assert_eq!(t.dim(i), usize::from(i <= 0), "degree {i}");
            }
        }
        assert!((-4..=8).all(|i| t.is_certified(i)));
    }

    #[test]
    fn ext_over_dual_numbers() {
        let d = alg("dual_numbers");
        let k = residue_module(&d).unwrap();
        let t = derived_hom(&k, &k, Window::default(), 6).unwrap();
        for i in -8..=8 {
            if t.is_certified(i) {
                assert_eq!(t.dim(i), usize::from(i >= 0), "degree {i}");
            }
        }
        let t = derived_hom(&k, &DgModule::regular(&d), Window::default(), 6).unwrap();
        for i in -8..=8 {
            if t.is_certified(i) {
                assert_eq!(t.dim(i), usize::from(i == 0), "degree {i}");
            }
        }
    }

    #[test]
    fn free_module_is_neutral() {
        let t = alg("a2_path");
        let m = crate::module::random_module(&t, 3, 3).unwrap();
        let tab = derived_tensor(&m, &left_regular(&t), Window::default(), 4).unwrap();
        let h = m.cohomology();
        for i in -8..=8 {
            assert_eq!(tab.dim(i), h.dim(i));
        }
        let hom = derived_hom(&DgModule::regular(&t), &m, Window::default(), 4).unwrap();
        for i in -8..=8 {
            assert_eq!(hom.dim(i), h.dim(i));
        }
    }

    fn left_regular(a: &Arc<FdDga<Q>>) -> DgModule<Q> {
        DgModule::regular(&Arc::new(a.opposite()))
    }

    #[test]
    fn perfection_examples() {
        let d = alg("dual_numbers");
        assert_eq!(perfection_check(&DgModule::regular(&d), 4).unwrap().status, Status::CertifiedYes);
        let v = perfection_check(&residue_module(&d).unwrap(), 8).unwrap();
        assert_eq!(v.status, Status::CertifiedNo);
        let t = alg("a2_path");
        let v = perfection_check(&residue_module(&t).unwrap(), 8).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
        assert!(v.betti[0].1.per_stage().len() <= 2);
        let c = contradual_perfection_check(&residue_module(&d).unwrap(), Window::default(), 8).unwrap();
        assert_eq!(c.status, Status::CertifiedNo);
    }

    #[test]
    fn gorenstein_examples() {
        assert_eq!(gorenstein_check(&alg("dual_numbers"), Window::default(), 8).unwrap().status, Status::CertifiedYes);
        assert_eq!(gorenstein_check(&alg("a2_path"), Window::default(), 8).unwrap().status, Status::CertifiedYes);
        let l = gorenstein_check(&alg("local_square_zero_2"), Window::default(), 6).unwrap();
        assert_eq!(l.status, Status::Inconclusive);
        assert_eq!(l.betti[0].1.per_stage(), vec![1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn serre_duality_examples() {
        let d = alg("dual_numbers");
        let dd = DgModule::regular(&d);
        let v = serre_duality_check(&dd, &dd, Window::default(), 6).unwrap();
        assert_eq!(v.status, Status::CertifiedYes);
        let sum = DgModule::direct_sum(&[&dd, &dd.shift(1)]).unwrap();
        assert_eq!(serre_duality_check(&dd, &sum, Window::default(), 6).unwrap().status, Status::CertifiedYes);
    }

    #[test]
    fn smoothness_examples() {
        assert_eq!(smoothness_check(&*alg("point"), 4).unwrap().status, Status::CertifiedYes);
        assert_eq!(smoothness_check(&*alg("a2_path"), 6).unwrap().status, Status::CertifiedYes);
        assert_eq!(smoothness_check(&*alg("dual_numbers"), 6).unwrap().status, Status::CertifiedNo);
    }

    #[test]
    fn nakayama_examples() {
        let d = alg("dual_numbers");
        let r = nakayama_witness(&residue_module(&d).unwrap(), 3).unwrap();
        assert_eq!(r.verdict.status, Status::CertifiedYes);
        assert_eq!(r.witness, Some((0, 0)));
        let id = crate::module::ModuleMap::identity(&DgModule::regular(&d));
        let c = crate::module::cone(&id).unwrap();
        let r = nakayama_witness(&c, 3).unwrap();
        assert_eq!(r.stage_zero_generators, 0);
        assert_eq!(r.verdict.status, Status::CertifiedYes);
    }
}
