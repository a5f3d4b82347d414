//! The endomorphism DGA of a truncated minimal resolution of `A/J₋`, with
//! the cohomology classes that survive every further stage.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::CohomologyTable;
use crate::derived::{hom_degree_certified, require_separable, residue_module, twisted_hom, TwistedHom, Window};
use crate::dga::FdDga;
use crate::endo::{rebase_unit, UnitChange};
use crate::error::{Error, Result};
use crate::linalg::{sparse, Coordinatizer, SparseVec, Subspace};
use crate::radical::underlying_radical;
use crate::resolution::{resolve_minimal, FreeModule, TruncatedResolution};
use crate::scalar::Scalar;

/// Largest endomorphism complex the construction will build.
pub const MAX_ENDO_DIM: usize = 1500;

/// The dual `e_g^*` of a generator, as a basis cochain of `Hom(F, A/J₋)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulClass<S> {
    pub degree: i32,
    pub generator: usize,
    pub cochain: usize,
    /// A cocycle of the truncated DGA mapping to the cochain under `ε_*`.
    pub lift: Option<SparseVec<S>>,
}

/// `[x]·[y]` expanded along the certified classes; `complete` when every
/// class of that degree is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassProduct<S> {
    pub left: usize,
    pub right: usize,
    pub degree: i32,
    pub coords: Vec<(usize, S)>,
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct KoszulDual<S> {
    /// `End_A(F)` for the truncated resolution `F → A/J₋`.
    pub algebra: FdDga<S>,
    pub resolution: TruncatedResolution<S>,
    /// `H(Hom(F, A/J₋))` over the window.
    pub table: CohomologyTable,
    /// Exact cohomology of the truncated DGA itself.
    pub end_cohomology: CohomologyTable,
    /// Classes of the full `A^!`, in generator order.
    pub classes: Vec<KoszulClass<S>>,
    pub certified: BTreeMap<i32, usize>,
    pub products: Vec<ClassProduct<S>>,
}

impl<S: Scalar> KoszulDual<S> {
    pub fn certified_table(&self) -> CohomologyTable {
        let mut t = CohomologyTable::new();
        for (d, n) in &self.certified {
            t.set(*d, *n, true);
        }
        t
    }

    pub fn product(&self, left: usize, right: usize) -> Option<&ClassProduct<S>> {
        self.products.iter().find(|p| p.left == left && p.right == right)
    }
}

/// `End_A(F)` on the basis `e_h ↦ w`, `w` running over `F ε_h`.
struct EndModel<S> {
    free: FreeModule<S>,
    hom: TwistedHom<S>,
    types: Vec<usize>,
    /// `blocks[j]`: the algebra coefficients of the image of map `j`, per generator.
    blocks: Vec<Vec<(usize, Vec<S>)>>,
}

impl<S: Scalar> EndModel<S> {
    fn new(r: &TruncatedResolution<S>) -> Result<Self> {
        let free = r.free_module();
        let hom = twisted_hom(r, &free.module)?;
        let types: Vec<usize> = r.generators.iter().map(|g| g.ty).collect();
        let ctx = &*r.context;
        let mut blocks = Vec::with_capacity(hom.labels.len());
        for &(h, row) in &hom.labels {
            let v = &hom.parts[types[h]].rows()[row];
            let mut per: BTreeMap<usize, SparseVec<S>> = BTreeMap::new();
            for (i, x) in v {
                let (g, k) = free.generator_of(*i);
                per.entry(g).or_default().push((k, x.clone()));
            }
            blocks.push(per.into_iter().map(|(g, c)| (g, ctx.type_element(types[g], &c))).collect());
        }
        Ok(EndModel { free, hom, types, blocks })
    }

    fn dim(&self) -> usize {
        self.hom.labels.len()
    }

    fn image(&self, i: usize) -> &SparseVec<S> {
        let (h, row) = self.hom.labels[i];
        &self.hom.parts[self.types[h]].rows()[row]
    }

    /// Coordinates of the map `e_h ↦ w`.
    fn map_coords(&self, h: usize, w: &[(usize, S)]) -> SparseVec<S> {
        let c = self.hom.parts[self.types[h]].coords(w).expect("image lies in F ε_h");
        sparse::shift_indices(&sparse::from_dense(&c), self.hom.offsets[h])
    }

    /// `a ∘ b` on basis maps.
    fn compose(&self, a: usize, b: usize) -> SparseVec<S> {
        let (ha, _) = self.hom.labels[a];
        let (hb, _) = self.hom.labels[b];
        let Some((_, x)) = self.blocks[b].iter().find(|(g, _)| *g == ha) else {
            return Vec::new();
        };
        let w = self.free.module.act(self.image(a), &sparse::from_dense(x));
        if w.is_empty() {
            return w;
        }
        self.map_coords(hb, &w)
    }

    fn identity(&self, r: &TruncatedResolution<S>) -> SparseVec<S> {
        let ctx = &*r.context;
        let mut out = Vec::new();
        for (h, &t) in self.types.iter().enumerate() {
            let c = ctx.type_bases[t].coords_dense(&ctx.types[t]).expect("ε_τ ∈ ε_τ A");
            let w = sparse::shift_indices(&sparse::from_dense(&c), self.free.offsets[h]);
            out.extend(self.map_coords(h, &w));
        }
        sparse::from_entries(out)
    }
}

fn compose_vectors<S: Scalar>(model: &EndModel<S>, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
    let mut acc = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            let p = model.compose(*i, *j);
            if !p.is_empty() {
                acc.extend(sparse::scale(&p, &(a.clone() * b.clone())));
            }
        }
    }
    sparse::from_entries(acc)
}

/// Truncated Koszul dual over `max_stages` stages, with `H(Hom(F, A/J₋))`
/// reported on `window`.
pub fn koszul_dual<S: Scalar>(a: &Arc<FdDga<S>>, max_stages: usize, window: Window) -> Result<KoszulDual<S>> {
    require_separable(a)?;
    let n = residue_module(a)?;
    let r = resolve_minimal(&n, max_stages)?;
    let model = EndModel::new(&r)?;
    let dim = model.dim();
    if dim > MAX_ENDO_DIM {
        return Err(Error::TooLarge(format!("endomorphism complex of dimension {dim} exceeds {MAX_ENDO_DIM}")));
    }
    let names: Vec<String> = model.hom.labels.iter().map(|(h, row)| format!("e{h}↦w{row}")).collect();
    let id = model.identity(&r);
    if id.is_empty() {
        // acyclic A/J₋: the resolution is empty and End(F) is the zero ring
        let algebra = FdDga::zero_ring();
        let mut table = CohomologyTable::new();
        for d in window.degrees() {
            table.set(d, 0, hom_degree_certified(&r.future, n.degree_range(), d));
        }
        let end_cohomology = CohomologyTable::new();
        return Ok(KoszulDual { algebra, resolution: r, table, end_cohomology, classes: vec![], certified: BTreeMap::new(), products: vec![] });
    }
    let (algebra, change) =
        rebase_unit(names, model.hom.complex.degrees.clone(), &model.hom.complex.diff, id, |i, j| model.compose(i, j))?;
    let violations = algebra.validate();
    if let Some(v) = violations.first() {
        return Err(Error::Internal(format!("truncated endomorphism DGA fails {}: {}", v.axiom, v.detail)));
    }
    let end_cohomology = algebra.cohomology();

    let cochains = twisted_hom(&r, &n)?;
    let range = n.degree_range();
    let mut table = CohomologyTable::new();
    let h = cochains.complex.cohomology();
    for d in window.degrees() {
        table.set(d, h.dim(d), hom_degree_certified(&r.future, range, d));
    }

    let mut classes = Vec::new();
    let mut certified = BTreeMap::new();
    let mut products = Vec::new();
    let exact_cochains = r.minimal && cochains.complex.diff.iter().all(|v| v.is_empty()) && {
        let j = underlying_radical(a)?;
        j.dim() == r.context.j_minus.dim()
    };
    if exact_cochains {
        let push = epsilon_pushforward(&r, &model, &cochains);
        for (idx, &(g, _)) in cochains.labels.iter().enumerate() {
            if !r.is_final(g) {
                continue;
            }
            let degree = cochains.complex.degrees[idx];
            let lift = lift_cochain(&model, &push, idx, degree, cochains.complex.dim()).map(|v| change.to_new(&v));
            *certified.entry(degree).or_insert(0) += 1;
            classes.push(KoszulClass { degree, generator: g, cochain: idx, lift });
        }
        products = class_products(&r, &model, &change, &push, &classes, range);
    }
    Ok(KoszulDual { algebra, resolution: r, table, end_cohomology, classes, certified, products })
}

/// `ε_*` on basis maps, in cochain coordinates.
fn epsilon_pushforward<S: Scalar>(
    r: &TruncatedResolution<S>,
    model: &EndModel<S>,
    cochains: &TwistedHom<S>,
) -> Vec<SparseVec<S>> {
    let eps = r.augmentation(&model.free);
    (0..model.dim())
        .map(|i| {
            let (h, _) = model.hom.labels[i];
            let v = eps.apply(model.image(i));
            if v.is_empty() {
                return v;
            }
            let part: &Subspace<S> = &cochains.parts[model.types[h]];
            let c = part.coords(&v).expect("ε(F ε_h) ⊆ N ε_h");
            sparse::shift_indices(&sparse::from_dense(&c), cochains.offsets[h])
        })
        .collect()
}

/// A cocycle `α` of degree `degree` with `ε_* α = e_idx`, in the old basis.
fn lift_cochain<S: Scalar>(
    model: &EndModel<S>,
    push: &[SparseVec<S>],
    idx: usize,
    degree: i32,
    ncochains: usize,
) -> Option<SparseVec<S>> {
    let n = model.dim();
    let mut coord = Coordinatizer::new(n + ncochains);
    let mut used = Vec::new();
    for j in 0..n {
        if model.hom.complex.degrees[j] != degree {
            continue;
        }
        let mut v = model.hom.complex.diff[j].clone();
        v.extend(sparse::shift_indices(&push[j], n));
        if coord.push(sparse::from_entries(v)) {
            used.push(j);
        }
    }
    let c = coord.coords(&[(n + idx, S::one())])?;
    Some(sparse::from_entries(used.iter().zip(c).map(|(j, x)| (*j, x)).collect()))
}

fn class_products<S: Scalar>(
    r: &TruncatedResolution<S>,
    model: &EndModel<S>,
    change: &UnitChange<S>,
    push: &[SparseVec<S>],
    classes: &[KoszulClass<S>],
    range: Option<(i32, i32)>,
) -> Vec<ClassProduct<S>> {
    let class_of: BTreeMap<usize, usize> = classes.iter().enumerate().map(|(k, c)| (c.cochain, k)).collect();
    let mut out = Vec::new();
    for (i, x) in classes.iter().enumerate() {
        for (j, y) in classes.iter().enumerate() {
            let (Some(lx), Some(ly)) = (&x.lift, &y.lift) else { continue };
            let prod = compose_vectors(model, &change.to_old(lx), &change.to_old(ly));
            let mut image = Vec::new();
            for (k, c) in &prod {
                image.extend(sparse::scale(&push[*k], c));
            }
            let image = sparse::from_entries(image);
            let degree = x.degree + y.degree;
            let mut complete = match range {
                None => true,
                Some((lo, hi)) => !r.future.meets_shifted(lo - degree, hi - degree),
            };
            let mut coords = Vec::new();
            for (k, c) in image {
                match class_of.get(&k) {
                    Some(m) => coords.push((*m, c)),
                    None => complete = false,
                }
            }
            out.push(ClassProduct { left: i, right: j, degree, coords, complete });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::builtin_example;
    use crate::scalar::Rational;

    fn dual(name: &str, stages: usize) -> KoszulDual<Rational> {
        let a = Arc::new(builtin_example::<Rational>(name).unwrap());
        koszul_dual(&a, stages, Window::new(-6, 6).unwrap()).unwrap()
    }

    #[test]
    fn point_is_self_dual() {
        let k = dual("point", 3);
        assert_eq!(k.algebra.dim(), 1);
        assert_eq!(k.certified, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn polynomial_ring_in_degree_zero() {
        let k = dual("dual_numbers_deg1", 6);
        assert_eq!(k.certified, BTreeMap::from([(0, 6)]));
        assert!(k.classes.iter().all(|c| c.lift.is_some()));
        // classes come in generator order t^0, t^1, ...
        for p in &k.products {
            if p.left + p.right < 6 {
                assert_eq!(p.coords, vec![(p.left + p.right, Rational::from_integer(1.into()))], "{p:?}");
            } else {
                assert!(p.coords.is_empty());
            }
        }
    }

    #[test]
    fn exterior_dual_has_one_class_per_degree() {
        let k = dual("dual_numbers", 5);
        let degrees: Vec<i32> = k.classes.iter().map(|c| c.degree).collect();
        assert_eq!(degrees, vec![0, 1, 2, 3, 4]);
        assert!(k.products.iter().filter(|p| p.degree < 5).all(|p| p.coords.len() == 1));
    }
}
