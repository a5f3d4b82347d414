//! The Auslander DGA `End_A(A/J_1 ⊕ … ⊕ A/J_{N−1} ⊕ A)` with
//! `J_i = (J^i)₋`, its projectives `Hom_A(M, A/J_i)`, and the finite
//! module `P_N ⊗_E E/J(E)₋`.

use std::sync::Arc;

use crate::dga::FdDga;
use crate::endo::{rebase_unit, UnitChange};
use crate::error::{Error, Result};
use crate::linalg::{sparse, SparseVec, Subspace};
use crate::module::{strict_hom, DgModule, HomComplex, Side};
use crate::radical::{dg_ideals, dg_ideals_from, nilpotency_index, power, underlying_radical};
use crate::scalar::Scalar;

/// Largest `End_A(M)` the construction will build.
pub const MAX_AUSLANDER_DIM: usize = 1500;

#[derive(Clone, Debug)]
pub struct Auslander<S> {
    pub algebra: Arc<FdDga<S>>,
    /// Nilpotency index of `J`.
    pub index: usize,
    /// `J_1, …, J_N`.
    pub ideals: Vec<Subspace<S>>,
    pub module: DgModule<S>,
    /// `E = End_A(M)`, with the identity as a basis element.
    pub endomorphisms: Arc<FdDga<S>>,
    /// `P_i = Hom_A(M, A/J_i)` as right `E`-modules, `i = 1..N`.
    pub projectives: Vec<DgModule<S>>,
    hom: HomComplex<S>,
    change: UnitChange<S>,
}

fn compose<S: Scalar>(f: &[SparseVec<S>], g: &[SparseVec<S>]) -> Vec<SparseVec<S>> {
    g.iter()
        .map(|v| {
            let mut acc = Vec::new();
            for (t, x) in v {
                acc.extend(sparse::scale(&f[*t], x));
            }
            sparse::from_entries(acc)
        })
        .collect()
}

pub fn auslander_dga<S: Scalar>(a: &Arc<FdDga<S>>) -> Result<Auslander<S>> {
    if a.is_zero_ring() {
        return Err(Error::Precondition("the zero ring has no Auslander algebra".into()));
    }
    let j = underlying_radical(a)?;
    let n = nilpotency_index(a, &j)?;
    let mut ideals = Vec::with_capacity(n);
    let mut quotients = Vec::with_capacity(n);
    for i in 1..=n {
        let ji = dg_ideals_from(a, &power(a, &j, i))?.0.space;
        let q = DgModule::algebra_quotient(a, &ji)?;
        let names = q.names().iter().map(|s| format!("{s}@{i}")).collect();
        quotients.push(q.with_names(names));
        ideals.push(ji);
    }
    let refs: Vec<&DgModule<S>> = quotients.iter().collect();
    let module = DgModule::direct_sum(&refs)?;
    let hom = strict_hom(&module, &module)?;
    let dim = hom.complex.dim();
    if dim > MAX_AUSLANDER_DIM {
        return Err(Error::TooLarge(format!("End(M) of dimension {dim} exceeds {MAX_AUSLANDER_DIM}")));
    }
    let identity: Vec<SparseVec<S>> = (0..module.dim()).map(|i| module.basis_vector(i)).collect();
    let id = hom.coords(0, &identity).ok_or_else(|| Error::Internal("identity is not A-linear".into()))?;
    let names = (0..dim).map(|k| format!("f{k}")).collect();
    let product = |x: usize, y: usize| -> SparseVec<S> {
        let p = hom.complex.degrees[x] + hom.complex.degrees[y];
        hom.coords(p, &compose(&hom.maps[x], &hom.maps[y])).expect("composites are A-linear")
    };
    let (e, change) = rebase_unit(names, hom.complex.degrees.clone(), &hom.complex.diff, id, product)?;
    if let Some(v) = e.validate().first() {
        return Err(Error::Internal(format!("End(M) fails {}: {}", v.axiom, v.detail)));
    }
    let mut aus = Auslander {
        algebra: a.clone(),
        index: n,
        ideals,
        module,
        endomorphisms: Arc::new(e),
        projectives: Vec::new(),
        hom,
        change,
    };
    for q in &quotients {
        let (p, _) = aus.hom_into(q)?;
        aus.projectives.push(p);
    }
    Ok(aus)
}

impl<S: Scalar> Auslander<S> {
    pub fn dim(&self) -> usize {
        self.endomorphisms.dim()
    }

    /// Basis element `k` of `E` as a map `M → M`.
    pub fn endomorphism(&self, k: usize) -> Vec<SparseVec<S>> {
        self.hom.element(&self.change.to_old(&[(k, S::one())]))
    }

    /// `Hom_A(M, N)` as a right `E`-module under precomposition.
    pub fn hom_into(&self, n: &DgModule<S>) -> Result<(DgModule<S>, HomComplex<S>)> {
        let h = strict_hom(&self.module, n)?;
        let e = &self.endomorphisms;
        let k = e.dim();
        let ends: Vec<_> = (0..k).map(|l| self.endomorphism(l)).collect();
        let mut act = Vec::with_capacity(h.complex.dim() * k);
        for f in 0..h.complex.dim() {
            for (l, g) in ends.iter().enumerate() {
                let p = h.complex.degrees[f] + e.degree(l);
                let c = h.coords(p, &compose(&h.maps[f], g)).ok_or_else(|| Error::Internal("f∘e is not A-linear".into()))?;
                act.push(c);
            }
        }
        let names = (0..h.complex.dim()).map(|f| format!("p{f}")).collect();
        let m = DgModule::from_raw(e.clone(), Side::Right, names, h.complex.degrees.clone(), act, h.complex.diff.clone())?;
        if let Some(v) = m.validate().first() {
            return Err(Error::Internal(format!("Hom(M, N) fails {}: {}", v.axiom, v.detail)));
        }
        Ok((m, h))
    }
}

/// `P_N / P_N·J(E)₋` with `A` acting on the left by postcomposition, as a
/// right module over `A^op`.
pub fn keylemma_witness<S: Scalar>(a: &Arc<FdDga<S>>) -> Result<DgModule<S>> {
    let aus = auslander_dga(a)?;
    keylemma_from(&aus)
}

pub fn keylemma_from<S: Scalar>(aus: &Auslander<S>) -> Result<DgModule<S>> {
    let a = &aus.algebra;
    let regular = DgModule::regular(a);
    let (pn, h) = aus.hom_into(&regular)?;
    let jm = dg_ideals(&aus.endomorphisms)?.0.space;
    let (n, k) = (pn.dim(), a.dim());
    let mut act = Vec::with_capacity(n * k);
    for f in 0..n {
        for b in 0..k {
            let bv = a.basis_vector(b);
            let images: Vec<SparseVec<S>> =
                h.maps[f].iter().map(|v| sparse::from_dense(&a.mul(&bv, &sparse::to_dense(v, k)))).collect();
            let p = h.complex.degrees[f] + a.degree(b);
            act.push(h.coords(p, &images).ok_or_else(|| Error::Internal("a·f is not A-linear".into()))?);
        }
    }
    let left = DgModule::from_raw(a.clone(), Side::Left, pn.names().to_vec(), pn.degrees().to_vec(), act, h.complex.diff.clone())?;
    if let Some(v) = left.validate().first() {
        return Err(Error::Internal(format!("Hom(M, A) as a left module fails {}: {}", v.axiom, v.detail)));
    }
    let sub = Subspace::span(n, (0..n).flat_map(|f| jm.rows().iter().map(move |r| (f, r))).map(|(f, r)| pn.act(&[(f, S::one())], r)).collect::<Vec<_>>());
    let quotient = left.quotient(&sub)?.module;
    if let Some(v) = quotient.validate().first() {
        return Err(Error::Internal(format!("witness fails {}: {}", v.axiom, v.detail)));
    }
    Ok(quotient.side_swap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::builtin_example;
    use crate::scalar::Rational;

    fn aus(name: &str) -> Auslander<Rational> {
        auslander_dga(&Arc::new(builtin_example::<Rational>(name).unwrap())).unwrap()
    }

    #[test]
    fn point() {
        let e = aus("point");
        assert_eq!((e.index, e.dim()), (1, 1));
        let s = keylemma_from(&e).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn dual_numbers() {
        let e = aus("dual_numbers");
        assert_eq!(e.index, 2);
        assert_eq!(e.dim(), 5);
        assert_eq!(e.projectives[1].dim(), 3);
        assert_eq!(e.projectives[0].dim(), 2);
        let s = keylemma_from(&e).unwrap();
        assert!(s.validate().is_empty());
        assert_eq!(s.side(), Side::Right);
    }

    #[test]
    fn odd_dual_numbers() {
        let e = aus("dual_numbers_deg1");
        assert_eq!(e.dim(), 5);
        let mut degrees = e.endomorphisms.degrees().to_vec();
        degrees.sort();
        // End(k), Hom(X, k), End(X) ≅ X, and Hom(k, X) = k·(1 ↦ x)
        assert_eq!(degrees, vec![0, 0, 0, 1, 1]);
        assert!(keylemma_from(&e).unwrap().validate().is_empty());
    }

    #[test]
    fn other_builtins_validate() {
        for name in ["a2_path", "local_square_zero_2", "acyclic"] {
            let e = aus(name);
            assert!(e.endomorphisms.validate().is_empty(), "{name}");
            assert!(keylemma_from(&e).unwrap().validate().is_empty(), "{name}");
        }
    }
}
