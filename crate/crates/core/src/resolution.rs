//! Truncated semifree resolutions, built stage by stage as twisted complexes
//! `F = ⊕ e_g·ε_g A` with `d(e_g a) = Σ_h e_h c_hg a + (−1)^{|g|} e_g da`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::sync::Arc;

use crate::complex::{CohomologyTable, DegreeData};
use crate::dga::FdDga;
use crate::error::{Error, Result};
use crate::linalg::{kernel_and_image, solve, sparse, Echelon, Matrix, SparseVec, Subspace};
use crate::module::{DgModule, ModuleMap, Side};
use crate::radical::dg_ideals;
use crate::scalar::Scalar;

/// A free generator `e_g` of type `ε_τ`: `e_g = e_g ε_τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<S> {
    pub degree: i32,
    pub ty: usize,
    pub stage: usize,
    /// `d(e_g) = Σ_h e_h c_hg`, sorted by `h`; each `c_hg ∈ ε_h A ε_g`.
    pub coeffs: Vec<(usize, Vec<S>)>,
    /// `ε(e_g) ∈ M ε_g`.
    pub aug: SparseVec<S>,
}

/// Algebra data shared by all resolutions over one algebra.
#[derive(Clone, Debug)]
pub struct ResolutionContext<S> {
    pub algebra: Arc<FdDga<S>>,
    /// Orthogonal idempotents of degree 0 with `d = 0`, summing to 1.
    pub types: Vec<Vec<S>>,
    /// Reduced echelon basis of `ε_τ A` for each type.
    pub type_bases: Vec<Subspace<S>>,
    type_act: Vec<Vec<SparseVec<S>>>,
    type_diff: Vec<Vec<SparseVec<S>>>,
    pub radical: Subspace<S>,
    pub j_minus: Subspace<S>,
    /// Cycles of `A` lying in `J₋`.
    pub radical_cycles: Vec<SparseVec<S>>,
    /// Hull of the support of `H(A)`.
    pub cohomology_hull: Option<(i32, i32)>,
}

impl<S: Scalar> ResolutionContext<S> {
    pub fn new(algebra: &Arc<FdDga<S>>) -> Result<Self> {
        let a = &**algebra;
        let n = a.dim();
        let (jm, jp) = if a.is_zero_ring() {
            (Subspace::zero(0), Subspace::zero(0))
        } else {
            let (jm, _) = dg_ideals(a)?;
            (jm.space, crate::radical::underlying_radical(a)?)
        };
        let types = if a.is_zero_ring() { vec![] } else { idempotent_family(a, &jp) };
        let mut type_bases = Vec::new();
        let mut type_act = Vec::new();
        let mut type_diff = Vec::new();
        for e in &types {
            let space = Subspace::span(n, (0..n).map(|b| sparse::from_dense(&a.mul(e, &a.basis_vector(b)))).collect::<Vec<_>>());
            let coords = |v: &[S]| sparse::from_dense(&space.coords_dense(v).expect("ε A is a right ideal"));
            let mut act = Vec::new();
            let mut diff = Vec::new();
            for r in space.dense_rows() {
                for b in 0..n {
                    act.push(coords(&a.mul(&r, &a.basis_vector(b))));
                }
                diff.push(coords(&a.d(&r)));
            }
            type_bases.push(space);
            type_act.push(act);
            type_diff.push(diff);
        }
        let cycles = Subspace::span(n, kernel_and_image(n, n, &(0..n).map(|i| a.diff_basis(i).clone()).collect::<Vec<_>>()).0);
        let jc = cycles.intersect(&jm)?;
        let radical_cycles = if a.is_zero_ring() {
            vec![]
        } else {
            // homogeneous spanning set
            let comps: Vec<SparseVec<S>> = jc
                .dense_rows()
                .iter()
                .flat_map(|r| a.components(r).into_values().map(|c| sparse::from_dense(&c)))
                .collect();
            Subspace::span(n, comps).rows().to_vec()
        };
        let support = a.cohomology().support();
        let cohomology_hull = support.first().map(|lo| (*lo, *support.last().unwrap()));
        Ok(ResolutionContext { algebra: algebra.clone(), types, type_bases, type_act, type_diff, radical: jp, j_minus: jm, radical_cycles, cohomology_hull })
    }

    pub(crate) fn type_dim(&self, t: usize) -> usize {
        self.type_bases[t].dim()
    }

    /// Coordinates of `x ∈ ε_τ A` in the type basis.
    fn type_coords(&self, t: usize, x: &[S]) -> Option<SparseVec<S>> {
        self.type_bases[t].coords_dense(x).map(|c| sparse::from_dense(&c))
    }

    pub(crate) fn type_element(&self, t: usize, c: &[(usize, S)]) -> Vec<S> {
        let mut out = self.algebra.zero();
        for (r, x) in c {
            sparse::add_into(&mut out, x, &self.type_bases[t].rows()[*r]);
        }
        out
    }
}

/// Greedy orthogonal basis idempotents plus the remainder, split further by
/// commuting basis idempotents. Falls back to `{1}` unless every corner
/// `εAε / εJε` is one-dimensional.
pub fn idempotent_family<S: Scalar>(a: &FdDga<S>, radical: &Subspace<S>) -> Vec<Vec<S>> {
    let n = a.dim();
    let one = a.one();
    let candidates: Vec<Vec<S>> = (0..n)
        .filter(|i| Some(*i) != a.unit() && a.degree(*i) == 0 && a.diff_basis(*i).is_empty())
        .map(|i| a.basis_vector(i))
        .filter(|e| a.mul(e, e) == *e)
        .collect();
    let is_zero = |v: &[S]| v.iter().all(|x| x.is_zero());
    let orth = |x: &[S], y: &[S]| is_zero(&a.mul(x, y)) && is_zero(&a.mul(y, x));
    let mut family: Vec<Vec<S>> = Vec::new();
    for c in &candidates {
        if family.iter().all(|f| orth(f, c)) {
            family.push(c.clone());
        }
    }
    let mut rest = one.clone();
    for f in &family {
        for (r, x) in rest.iter_mut().zip(f) {
            *r = r.clone() - x.clone();
        }
    }
    if !is_zero(&rest) {
        family.push(rest);
    }
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < n + 1 {
        changed = false;
        rounds += 1;
        let mut next = Vec::new();
        for f in &family {
            let mut split = None;
            for q in &candidates {
                let fq = a.mul(f, q);
                if fq == a.mul(q, f) && !is_zero(&fq) && fq != *f {
                    let rest: Vec<S> = f.iter().zip(&fq).map(|(x, y)| x.clone() - y.clone()).collect();
                    split = Some((fq, rest));
                    break;
                }
            }
            match split {
                Some((p, q)) => {
                    next.push(p);
                    next.push(q);
                    changed = true;
                }
                None => next.push(f.clone()),
            }
        }
        family = next;
    }
    let corner_ok = |e: &Vec<S>| {
        let corner = Subspace::span(n, (0..n).map(|b| sparse::from_dense(&a.mul(&a.mul(e, &a.basis_vector(b)), e))).collect::<Vec<_>>());
        let with_j = corner.sum(radical).expect("same ambient");
        with_j.dim() == radical.dim() + 1
    };
    let sums_to_one = {
        let mut s = a.zero();
        for f in &family {
            for (x, y) in s.iter_mut().zip(f) {
                *x = x.clone() + y.clone();
            }
        }
        s == one
    };
    let idempotent = family.iter().all(|f| a.mul(f, f) == *f);
    if family.len() > 1 && sums_to_one && idempotent && family.iter().all(corner_ok) {
        family
    } else {
        vec![one]
    }
}

/// Bounds on the degrees of generators that later stages could add.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FutureGenerators {
    /// The resolution is complete.
    None,
    /// Degrees lie in `[lo, hi]`; `None` means unbounded on that side.
    Within { lo: Option<i32>, hi: Option<i32> },
}

impl FutureGenerators {
    pub fn may_contain(&self, deg: i32) -> bool {
        match self {
            FutureGenerators::None => false,
            FutureGenerators::Within { lo, hi } => lo.map_or(true, |l| deg >= l) && hi.map_or(true, |h| deg <= h),
        }
    }

    /// Whether some future generator degree `g` has `g + s ∈ [lo, hi]`.
    pub fn meets_shifted(&self, lo: i32, hi: i32) -> bool {
        match *self {
            FutureGenerators::None => false,
            FutureGenerators::Within { lo: a, hi: b } => a.map_or(true, |a| a <= hi) && b.map_or(true, |b| b >= lo),
        }
    }
}

/// Canonical form of a module with `d = 0` generated by given vectors:
/// breadth-first basis, action table in it, degrees relative to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm<S> {
    pub relative_degrees: Vec<i32>,
    pub table: Vec<SparseVec<S>>,
    pub base_degree: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Periodicity {
    /// `Ω_later ≅ Σ^{shift} Ω_earlier`, syzygies indexed from −1 (the module itself).
    pub earlier: i64,
    pub later: i64,
    pub shift: i32,
}

#[derive(Clone, Debug)]
pub struct TruncatedResolution<S> {
    pub context: Arc<ResolutionContext<S>>,
    pub target: DgModule<S>,
    pub generators: Vec<Generator<S>>,
    pub stages_run: usize,
    pub complete: bool,
    pub minimal: bool,
    /// `H` of the cone of the augmentation after the last stage.
    pub residual: CohomologyTable,
    pub future: FutureGenerators,
    /// `d_A = 0`, `d_M = 0`, coefficients only between consecutive stages,
    /// augmentation only on stage 0, and minimal.
    pub classical: bool,
    pub periodicity: Option<Periodicity>,
    pub cancellations: usize,
}

/// The explicit free module underlying a resolution.
#[derive(Clone, Debug)]
pub struct FreeModule<S> {
    pub module: DgModule<S>,
    /// Index of the first basis vector of each generator.
    pub offsets: Vec<usize>,
}

impl<S: Scalar> FreeModule<S> {
    pub fn generator_of(&self, idx: usize) -> (usize, usize) {
        let g = self.offsets.partition_point(|o| *o <= idx) - 1;
        (g, idx - self.offsets[g])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    /// `(stage, degree) → count`.
    pub entries: BTreeMap<(usize, i32), usize>,
    pub total_per_degree: BTreeMap<i32, usize>,
    pub complete: bool,
}

impl BettiTable {
    pub fn per_stage(&self) -> Vec<usize> {
        let n = self.entries.keys().map(|(s, _)| s + 1).max().unwrap_or(0);
        let mut v = vec![0; n];
        for ((s, _), c) in &self.entries {
            v[*s] += c;
        }
        v
    }
}

pub fn resolve_minimal<S: Scalar>(m: &DgModule<S>, max_stages: usize) -> Result<TruncatedResolution<S>> {
    resolve(m, max_stages, true)
}

pub fn resolve<S: Scalar>(m: &DgModule<S>, max_stages: usize, minimize: bool) -> Result<TruncatedResolution<S>> {
    let ctx = Arc::new(ResolutionContext::new(m.algebra())?);
    resolve_in(&ctx, m, max_stages, minimize)
}

pub fn resolve_in<S: Scalar>(
    ctx: &Arc<ResolutionContext<S>>,
    m: &DgModule<S>,
    max_stages: usize,
    minimize: bool,
) -> Result<TruncatedResolution<S>> {
    if max_stages == 0 {
        return Err(Error::Invalid("the stage budget must be positive".into()));
    }
    if m.side() != Side::Right || !crate::module::same_algebra(m.algebra(), &ctx.algebra) {
        return Err(Error::AlgebraMismatch("resolutions are of right modules over the context algebra".into()));
    }
    let a = &*ctx.algebra;
    let mut r = TruncatedResolution {
        context: ctx.clone(),
        target: m.clone(),
        generators: Vec::new(),
        stages_run: 0,
        complete: false,
        minimal: true,
        residual: CohomologyTable::new(),
        future: FutureGenerators::None,
        classical: false,
        periodicity: None,
        cancellations: 0,
    };
    let flat = a.has_zero_differential() && (0..m.dim()).all(|i| m.diff_basis(i).is_empty());
    let mut syzygies: Vec<(i64, CanonicalForm<S>)> = Vec::new();
    if flat && m.dim() > 0 {
        let gens = minimal_generators(ctx, m, &Subspace::full(m.dim()));
        if let Some(f) = canonical_form(m, &gens) {
            syzygies.push((-1, f));
        }
    }
    let mut last = None;
    for s in 0..max_stages {
        let free = r.free_module();
        let cone = r.cone(&free);
        let data = cone.complex().degree_data();
        if s > 0 && r.periodicity.is_none() && flat && r.is_classical() {
            r.check_periodicity(&free, s - 1, &mut syzygies);
        }
        if is_acyclic(&data) {
            r.complete = true;
            last = Some(data);
            break;
        }
        let types: Vec<usize> = r.generators.iter().map(|g| g.ty).collect();
        let new = select_generators(ctx, &cone, &data, m.dim(), &free, &types, s);
        r.generators.extend(new);
        r.stages_run = s + 1;
        if minimize {
            r.cancel_units()?;
        }
    }
    let data = match last {
        Some(d) => d,
        None => {
            let free = r.free_module();
            let cone = r.cone(&free);
            let data = cone.complex().degree_data();
            if r.periodicity.is_none() && flat && r.is_classical() && r.stages_run > 0 {
                r.check_periodicity(&free, r.stages_run - 1, &mut syzygies);
            }
            if is_acyclic(&data) {
                r.complete = true;
            }
            data
        }
    };
    let residual: BTreeMap<i32, usize> = data.iter().map(|(d, x)| (*d, x.cycles.len() - x.boundaries.rank())).collect();
    r.residual = CohomologyTable::exact(&residual);
    r.minimal = r.generators.iter().all(|g| g.coeffs.iter().all(|(_, c)| ctx.radical.contains_dense(c)));
    r.classical = flat && r.is_classical();
    if !r.classical {
        r.periodicity = None;
    }
    r.future = if r.complete {
        FutureGenerators::None
    } else {
        let support = r.residual.support();
        match ctx.cohomology_hull {
            None => FutureGenerators::None,
            Some((hlo, hhi)) => FutureGenerators::Within {
                lo: (hlo - 1 >= 0).then(|| support[0]),
                hi: (hhi - 1 <= 0).then(|| *support.last().unwrap()),
            },
        }
    };
    r.verify()?;
    Ok(r)
}

fn is_acyclic<S: Scalar>(data: &BTreeMap<i32, DegreeData<S>>) -> bool {
    data.values().all(|d| d.cycles.len() == d.boundaries.rank())
}

/// New generators killing `H(cone)`: for every degree and type, a basis of
/// `Z ε_τ` modulo `(B + Z·J_c) ε_τ`.
fn select_generators<S: Scalar>(
    ctx: &ResolutionContext<S>,
    cone: &DgModule<S>,
    data: &BTreeMap<i32, DegreeData<S>>,
    dim_m: usize,
    free: &FreeModule<S>,
    gen_types: &[usize],
    stage: usize,
) -> Vec<Generator<S>> {
    let a = &*ctx.algebra;
    let n = cone.dim();
    let mut out = Vec::new();
    for (deg, dd) in data {
        if dd.cycles.len() == dd.boundaries.rank() {
            continue;
        }
        let mut u: Vec<SparseVec<S>> = dd.boundaries.rows().to_vec();
        for r in &ctx.radical_cycles {
            let rd = a.degree(r[0].0);
            if let Some(src) = data.get(&(deg - rd)) {
                for z in &src.cycles {
                    let p = cone.act(z, r);
                    if !p.is_empty() {
                        u.push(p);
                    }
                }
            }
        }
        for (t, e) in ctx.types.iter().enumerate() {
            let es = sparse::from_dense(e);
            let mut ech = Echelon::new(n);
            for v in &u {
                ech.insert(cone.act(v, &es));
            }
            for z in &dd.cycles {
                let w = ech.reduce(cone.act(z, &es));
                if let Some(row) = ech.push_reduced(w) {
                    let w = ech.rows()[row].clone();
                    let (aug, rest): (Vec<_>, Vec<_>) = w.into_iter().partition(|(i, _)| *i < dim_m);
                    let mut per_gen: BTreeMap<usize, Vec<(usize, S)>> = BTreeMap::new();
                    for (i, x) in rest {
                        let (h, k) = free.generator_of(i - dim_m);
                        per_gen.entry(h).or_default().push((k, -x));
                    }
                    let coeffs = per_gen.into_iter().map(|(h, c)| (h, ctx.type_element(gen_types[h], &c))).collect();
                    out.push(Generator { degree: *deg, ty: t, stage, coeffs, aug });
                }
            }
        }
    }
    out
}

/// Minimal generators of the submodule `space` of `m`: reduced basis rows
/// not in `space·J + (chosen)`.
fn minimal_generators<S: Scalar>(ctx: &ResolutionContext<S>, m: &DgModule<S>, space: &Subspace<S>) -> Vec<SparseVec<S>> {
    let sj = m.times_ideal(space, &ctx.radical);
    let mut ech = Echelon::new(m.dim());
    for r in sj.rows() {
        ech.insert(r.clone());
    }
    let mut gens = Vec::new();
    for r in space.rows() {
        if ech.insert(r.clone()).is_some() {
            gens.push(r.clone());
        }
    }
    gens
}

/// Breadth-first closure of `gens` under the basis of the algebra.
fn canonical_form<S: Scalar>(m: &DgModule<S>, gens: &[SparseVec<S>]) -> Option<CanonicalForm<S>> {
    let k = m.algebra().dim();
    let mut basis = crate::linalg::Coordinatizer::new(m.dim());
    let mut queue = Vec::new();
    for g in gens {
        if basis.push(g.clone()) {
            queue.push(g.clone());
        }
    }
    let mut i = 0;
    while i < queue.len() {
        for b in 0..k {
            let v = m.act(&queue[i], &[(b, S::one())]);
            if !v.is_empty() && basis.push(v.clone()) {
                queue.push(v);
            }
        }
        i += 1;
    }
    let degs: Vec<i32> = queue.iter().map(|v| m.homogeneous_degree(v)).collect::<Option<_>>()?;
    let base = *degs.first()?;
    let mut table = Vec::with_capacity(queue.len() * k);
    for v in &queue {
        for b in 0..k {
            table.push(sparse::from_dense(&basis.coords(&m.act(v, &[(b, S::one())]))?));
        }
    }
    Some(CanonicalForm { relative_degrees: degs.iter().map(|d| d - base).collect(), table, base_degree: base })
}

impl<S: Scalar> TruncatedResolution<S> {
    pub fn algebra(&self) -> &Arc<FdDga<S>> {
        &self.context.algebra
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn free_module(&self) -> FreeModule<S> {
        let ctx = &*self.context;
        let a = &*ctx.algebra;
        let k = a.dim();
        let mut offsets = Vec::with_capacity(self.generators.len());
        let mut total = 0;
        for g in &self.generators {
            offsets.push(total);
            total += ctx.type_dim(g.ty);
        }
        let mut names = Vec::with_capacity(total);
        let mut degrees = Vec::with_capacity(total);
        let mut act = Vec::with_capacity(total * k);
        let mut diff = Vec::with_capacity(total);
        for (gi, g) in self.generators.iter().enumerate() {
            let t = g.ty;
            let rows = ctx.type_bases[t].rows();
            let sign = S::sign(g.degree as i64);
            for (r, beta) in rows.iter().enumerate() {
                let bdeg = a.degree(beta[0].0);
                degrees.push(g.degree + bdeg);
                let bname = if beta.len() == 1 && beta[0].1.is_one() { a.name(beta[0].0).to_string() } else { format!("β{r}") };
                names.push(format!("e{gi}·{bname}"));
                for b in 0..k {
                    act.push(sparse::shift_indices(&ctx.type_act[t][r * k + b], offsets[gi]));
                }
                let bd = sparse::to_dense(beta, k);
                let mut entries = Vec::new();
                for (h, c) in &g.coeffs {
                    let cb = a.mul(c, &bd);
                    let th = self.generators[*h].ty;
                    let co = ctx.type_coords(th, &cb).expect("c_hg β lies in ε_h A");
                    entries.extend(sparse::shift_indices(&co, offsets[*h]));
                }
                for (i, x) in &ctx.type_diff[t][r] {
                    entries.push((offsets[gi] + i, sign.clone() * x.clone()));
                }
                diff.push(sparse::from_entries(entries));
            }
        }
        let module = DgModule::from_raw(ctx.algebra.clone(), Side::Right, names, degrees, act, diff).expect("consistent shapes");
        FreeModule { module, offsets }
    }

    /// `ε: F → M`.
    pub fn augmentation(&self, free: &FreeModule<S>) -> ModuleMap<S> {
        let ctx = &*self.context;
        let mut images = Vec::with_capacity(free.module.dim());
        for g in &self.generators {
            for beta in ctx.type_bases[g.ty].rows() {
                images.push(self.target.act(&g.aug, beta));
            }
        }
        ModuleMap { source: free.module.clone(), target: self.target.clone(), degree: 0, images }
    }

    /// `M ⊕ ΣF` with `d(m, f) = (dm + ε(f), −df)`.
    fn cone(&self, free: &FreeModule<S>) -> DgModule<S> {
        let m = &self.target;
        let f = &free.module;
        let (dm, k) = (m.dim(), self.context.algebra.dim());
        let aug = self.augmentation(free);
        let mut names = m.names().to_vec();
        names.extend(f.names().iter().map(|s| format!("s{s}")));
        let mut degrees = m.degrees().to_vec();
        degrees.extend(f.degrees().iter().map(|d| d - 1));
        let mut act = Vec::with_capacity((dm + f.dim()) * k);
        let mut diff = Vec::with_capacity(dm + f.dim());
        for i in 0..dm {
            for b in 0..k {
                act.push(m.act_basis(i, b).clone());
            }
            diff.push(m.diff_basis(i).clone());
        }
        for i in 0..f.dim() {
            for b in 0..k {
                act.push(sparse::shift_indices(f.act_basis(i, b), dm));
            }
            let mut e = aug.images[i].clone();
            e.extend(sparse::shift_indices(&sparse::neg(f.diff_basis(i)), dm));
            diff.push(e);
        }
        DgModule::from_raw(self.context.algebra.clone(), Side::Right, names, degrees, act, diff).expect("consistent shapes")
    }

    fn is_classical(&self) -> bool {
        self.generators.iter().all(|g| {
            (g.stage == 0 || g.aug.is_empty()) && g.coeffs.iter().all(|(h, _)| self.generators[*h].stage + 1 == g.stage)
        }) && self.generators.iter().all(|g| g.coeffs.iter().all(|(_, c)| self.context.radical.contains_dense(c)))
    }

    /// Compares `Ω_s = ker(F_s → F_{s−1})` with the earlier syzygies.
    fn check_periodicity(&mut self, free: &FreeModule<S>, s: usize, seen: &mut Vec<(i64, CanonicalForm<S>)>) {
        let f = &free.module;
        let cols: Vec<usize> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.stage == s)
            .flat_map(|(gi, _)| free.offsets[gi]..free.offsets[gi] + self.context.type_dim(self.generators[gi].ty))
            .collect();
        if cols.is_empty() {
            return;
        }
        let aug = if s == 0 { Some(self.augmentation(free)) } else { None };
        let nf = f.dim();
        let images: Vec<SparseVec<S>> = cols
            .iter()
            .map(|c| {
                let mut v = f.diff_basis(*c).clone();
                if let Some(a) = &aug {
                    v.extend(sparse::shift_indices(&a.images[*c], nf));
                }
                v
            })
            .collect();
        let (ker, _) = kernel_and_image(cols.len(), nf + self.target.dim(), &images);
        let space = Subspace::span(nf, ker.iter().map(|v| sparse::remap(v, |l| Some(cols[l]))).collect::<Vec<_>>());
        if space.is_zero() {
            return;
        }
        let gens = minimal_generators(&self.context, f, &space);
        let Some(form) = canonical_form(f, &gens) else { return };
        for (t, earlier) in seen.iter() {
            if earlier.relative_degrees == form.relative_degrees && earlier.table == form.table {
                self.periodicity = Some(Periodicity { earlier: *t, later: s as i64, shift: earlier.base_degree - form.base_degree });
                return;
            }
        }
        seen.push((s as i64, form));
    }

    /// Invertible degree-0 cycle coefficient `c ∈ ε_h A ε_g`: returns `u` with `uc = ε_g`, `cu = ε_h`.
    fn unit_inverse(&self, g: usize, h: usize, c: &[S]) -> Option<Vec<S>> {
        let a = &*self.context.algebra;
        if a.homogeneous_degree(c) != Some(0) || !a.d(c).iter().all(|x| x.is_zero()) {
            return None;
        }
        let eg = &self.context.types[self.generators[g].ty];
        let eh = &self.context.types[self.generators[h].ty];
        let zero_deg: Vec<usize> = (0..a.dim()).filter(|i| a.degree(*i) == 0).collect();
        let n = a.dim();
        let mut mat = Matrix::zeros(2 * n, zero_deg.len());
        for (col, b) in zero_deg.iter().enumerate() {
            let bv = a.basis_vector(*b);
            let uc = a.mul(&bv, c);
            let cu = a.mul(c, &bv);
            for i in 0..n {
                mat.set(i, col, uc[i].clone());
                mat.set(n + i, col, cu[i].clone());
            }
        }
        let mut rhs = Matrix::zeros(2 * n, 1);
        for i in 0..n {
            rhs.set(i, 0, eg[i].clone());
            rhs.set(n + i, 0, eh[i].clone());
        }
        let sol = solve(&mat, &rhs).ok()??;
        let mut u = a.zero();
        for (col, b) in zero_deg.iter().enumerate() {
            u[*b] = sol.get(col, 0).clone();
        }
        let u = a.mul(&a.mul(eg, &u), eh);
        (a.mul(&u, c) == *eg && a.mul(c, &u) == *eh).then_some(u)
    }

    /// Repeatedly eliminates pairs `(g, h)` joined by a unit coefficient.
    fn cancel_units(&mut self) -> Result<()> {
        let mut rejected: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        'outer: loop {
            for g in 0..self.generators.len() {
                for (h, c) in self.generators[g].coeffs.clone() {
                    if self.generators[h].degree != self.generators[g].degree + 1 {
                        continue;
                    }
                    let key = (self.generators.len(), g, h);
                    if rejected.contains(&key) {
                        continue;
                    }
                    if let Some(u) = self.unit_inverse(g, h, &c) {
                        if let Some(next) = self.eliminate(g, h, &u) {
                            self.generators = next;
                            self.cancellations += 1;
                            rejected.clear();
                            continue 'outer;
                        }
                        rejected.insert(key);
                    }
                }
            }
            return Ok(());
        }
    }

    /// `c'_jk = c_jk − c_jg u c_hk`, `ε'(e_k) = ε(e_k) − ε(e_g) u c_hk`.
    fn eliminate(&self, g: usize, h: usize, u: &[S]) -> Option<Vec<Generator<S>>> {
        let a = &*self.context.algebra;
        let gens = &self.generators;
        let cg: BTreeMap<usize, Vec<S>> = gens[g].coeffs.iter().cloned().collect();
        if cg.contains_key(&g) {
            return None;
        }
        let mut updated: Vec<Generator<S>> = Vec::with_capacity(gens.len());
        for (k, gk) in gens.iter().enumerate() {
            let mut coeffs: BTreeMap<usize, Vec<S>> = gk.coeffs.iter().filter(|(j, _)| *j != g && *j != h).cloned().collect();
            let mut aug = gk.aug.clone();
            if k != g && k != h {
                if let Some(chk) = gk.coeffs.iter().find(|(j, _)| *j == h).map(|(_, c)| c) {
                    let uc = a.mul(u, chk);
                    for (j, cjg) in &cg {
                        if *j == h {
                            continue;
                        }
                        let t = a.mul(cjg, &uc);
                        let e = coeffs.entry(*j).or_insert_with(|| a.zero());
                        for (x, y) in e.iter_mut().zip(&t) {
                            *x = x.clone() - y.clone();
                        }
                    }
                    let corr = self.target.act_dense(&gens[g].aug, &uc);
                    aug = sparse::axpy(&aug, &-S::one(), &corr);
                }
            }
            coeffs.retain(|_, c| c.iter().any(|x| !x.is_zero()));
            updated.push(Generator { coeffs: coeffs.into_iter().collect(), aug, ..gk.clone() });
        }
        // drop g and h, then re-sort topologically
        let keep: Vec<usize> = (0..gens.len()).filter(|k| *k != g && *k != h).collect();
        let mut indeg = vec![0usize; gens.len()];
        let mut users: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        for &k in &keep {
            for (j, _) in &updated[k].coeffs {
                indeg[k] += 1;
                users[*j].push(k);
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> = keep.iter().filter(|k| indeg[**k] == 0).map(|k| Reverse(*k)).collect();
        let mut order = Vec::with_capacity(keep.len());
        while let Some(Reverse(k)) = heap.pop() {
            order.push(k);
            for &u in &users[k] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    heap.push(Reverse(u));
                }
            }
        }
        if order.len() != keep.len() {
            return None;
        }
        let mut pos = vec![usize::MAX; gens.len()];
        for (p, k) in order.iter().enumerate() {
            pos[*k] = p;
        }
        let next: Vec<Generator<S>> = order
            .iter()
            .map(|k| {
                let mut gk = updated[*k].clone();
                gk.coeffs = gk.coeffs.into_iter().map(|(j, c)| (pos[j], c)).collect();
                gk.coeffs.sort_by_key(|(j, _)| *j);
                gk
            })
            .collect();
        let candidate = TruncatedResolution { generators: next, ..self.clone() };
        candidate.check_twisted().ok()?;
        Some(candidate.generators)
    }

    /// `d² = 0` and `ε∘d = d∘ε` on generators.
    fn check_twisted(&self) -> Result<()> {
        let a = &*self.context.algebra;
        for (g, gen) in self.generators.iter().enumerate() {
            let mut acc: BTreeMap<usize, Vec<S>> = BTreeMap::new();
            let mut eps = Vec::new();
            for (h, chg) in &gen.coeffs {
                if *h >= g {
                    return Err(Error::Internal("generators are not in topological order".into()));
                }
                for (j, cjh) in &self.generators[*h].coeffs {
                    let p = a.mul(cjh, chg);
                    let e = acc.entry(*j).or_insert_with(|| a.zero());
                    for (x, y) in e.iter_mut().zip(p) {
                        *x = x.clone() + y;
                    }
                }
                let s = S::sign(self.generators[*h].degree as i64);
                let dc = a.d(chg);
                let e = acc.entry(*h).or_insert_with(|| a.zero());
                for (x, y) in e.iter_mut().zip(dc) {
                    *x = x.clone() + s.clone() * y;
                }
                eps = sparse::axpy(&eps, &S::one(), &self.target.act_dense(&self.generators[*h].aug, chg));
            }
            if acc.values().any(|v| v.iter().any(|x| !x.is_zero())) {
                return Err(Error::NotAComplex(format!("d² ≠ 0 on generator {g}")));
            }
            if eps != self.target.d(&gen.aug) {
                return Err(Error::NotAChainMap(format!("augmentation fails on generator {g}")));
            }
        }
        Ok(())
    }

    fn verify(&self) -> Result<()> {
        self.check_twisted()?;
        let ctx = &*self.context;
        let a = &*ctx.algebra;
        for g in &self.generators {
            let e = &ctx.types[g.ty];
            for (h, c) in &g.coeffs {
                let eh = &ctx.types[self.generators[*h].ty];
                if a.mul(&a.mul(eh, c), e) != *c || a.homogeneous_degree(c).is_some_and(|d| d != g.degree + 1 - self.generators[*h].degree) {
                    return Err(Error::Internal("coefficient outside its corner or degree".into()));
                }
            }
            if self.target.act_dense(&g.aug, e) != g.aug || !self.target.is_homogeneous_of(&g.aug, g.degree) {
                return Err(Error::Internal("augmentation value outside M ε".into()));
            }
        }
        Ok(())
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable { complete: self.complete, ..Default::default() };
        for g in &self.generators {
            *t.entries.entry((g.stage, g.degree)).or_default() += 1;
            *t.total_per_degree.entry(g.degree).or_default() += 1;
        }
        t
    }

    /// Whether generator `g` survives every further stage and cancellation.
    pub fn is_final(&self, g: usize) -> bool {
        self.complete || self.classical || !self.future.may_contain(self.generators[g].degree - 1)
    }

    pub fn stage_zero_count(&self) -> usize {
        self.generators.iter().filter(|g| g.stage == 0).count()
    }
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

    fn residue(a: &Arc<FdDga<Q>>) -> DgModule<Q> {
        let (jm, _) = dg_ideals(a).unwrap();
        DgModule::algebra_quotient(a, &jm.space).unwrap()
    }

    #[test]
    fn free_resolves_in_one_stage() {
        for name in ["point", "dual_numbers", "dual_numbers_deg1", "a2_path"] {
            let a = alg(name);
            let r = resolve_minimal(&DgModule::regular(&a), 3).unwrap();
            assert!(r.complete, "{name}");
            assert_eq!(r.stages_run, 1, "{name}");
            let (jm, _) = dg_ideals(&a).unwrap();
            assert_eq!(r.generator_count(), a.dim() - jm.dim(), "{name}");
        }
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let d = alg("dual_numbers");
        let r = resolve_minimal(&residue(&d), 6).unwrap();
        assert!(!r.complete && r.minimal && r.classical);
        assert_eq!(r.betti_table().per_stage(), vec![1; 6]);
        let p = r.periodicity.unwrap();
        assert_eq!((p.earlier, p.later), (-1, 0));
    }

    #[test]
    fn residue_field_of_l3_doubles() {
        let l = alg("local_square_zero_2");
        let r = resolve_minimal(&residue(&l), 4).unwrap();
        assert_eq!(r.betti_table().per_stage(), vec![1, 2, 4, 8]);
        assert!(r.periodicity.is_none());
    }

    #[test]
    fn residue_of_x_sits_in_degree_zero() {
        let x = alg("dual_numbers_deg1");
        let r = resolve_minimal(&residue(&x), 5).unwrap();
        assert!(r.generators.iter().all(|g| g.degree == 0));
        assert_eq!(r.generator_count(), 5);
    }

    #[test]
    fn triangular_simples() {
        let t = alg("a2_path");
        let ctx = ResolutionContext::new(&t).unwrap();
        assert_eq!(ctx.types.len(), 2);
        let (jm, _) = dg_ideals(&t).unwrap();
        let k = DgModule::algebra_quotient(&t, &jm.space).unwrap();
        let r = resolve_minimal(&k, 4).unwrap();
        assert!(r.complete);
        assert!(r.betti_table().per_stage().len() <= 2);
    }

    #[test]
    fn acyclic_algebra_needs_nothing() {
        let a = alg("acyclic");
        let r = resolve_minimal(&DgModule::regular(&a), 2).unwrap();
        assert!(r.complete);
        assert_eq!(r.generator_count(), 0);
    }
}
