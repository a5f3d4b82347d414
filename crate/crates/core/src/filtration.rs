//! Radical filtrations of modules and of the algebra as a bimodule.

use crate::dga::FdDga;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::module::DgModule;
use crate::radical::{dg_ideals, product_space};
use crate::scalar::Scalar;

/// A descending chain `M = F_0 ⊇ F_1 ⊇ … ⊇ F_N = 0` of subspaces of the
/// subject, with the dimensions of the factors `F_i / F_{i+1}`.
#[derive(Clone, Debug)]
pub struct FiltrationWitness<S> {
    pub chain: Vec<Subspace<S>>,
    pub factor_dims: Vec<usize>,
}

impl<S: Scalar> FiltrationWitness<S> {
    pub fn length(&self) -> usize {
        self.factor_dims.len()
    }
}

fn witness<S: Scalar>(chain: Vec<Subspace<S>>) -> FiltrationWitness<S> {
    let factor_dims = chain.windows(2).map(|w| w[0].dim() - w[1].dim()).collect();
    FiltrationWitness { chain, factor_dims }
}

/// `M ⊇ MJ₋ ⊇ MJ₋² ⊇ … ⊇ 0`, with each factor checked to be a DG module
/// killed by `J₋`.
pub fn radical_filtration<S: Scalar>(m: &DgModule<S>) -> Result<(FiltrationWitness<S>, Vec<DgModule<S>>)> {
    let (jm, _) = dg_ideals(m.algebra())?;
    let mut chain = vec![Subspace::full(m.dim())];
    while !chain.last().unwrap().is_zero() {
        if chain.len() > m.algebra().dim() + 2 {
            return Err(Error::Internal("J₋ acts non-nilpotently".into()));
        }
        let next = m.times_ideal(chain.last().unwrap(), &jm.space);
        chain.push(next);
    }
    let mut factors = Vec::new();
    for w in chain.windows(2) {
        let sub = m.submodule(&w[0])?;
        // coordinates of the smaller space inside the larger one
        let inner = Subspace::span(sub.dim(), w[1].rows().iter().map(|r| crate::linalg::sparse::from_dense(&w[0].coords(r).expect("nested"))));
        let f = sub.quotient(&inner)?.module;
        if !f.times_ideal(&Subspace::full(f.dim()), &jm.space).is_zero() {
            return Err(Error::Internal("a radical filtration factor is not killed by J₋".into()));
        }
        factors.push(f);
    }
    Ok((witness(chain), factors))
}

/// `A ⊇ J₋ ⊇ J₋² ⊇ … ⊇ 0`; every factor is checked to be an
/// `A/J₋`-bimodule.
pub fn bimodule_filtration<S: Scalar>(a: &FdDga<S>) -> Result<FiltrationWitness<S>> {
    let (jm, _) = dg_ideals(a)?;
    let mut chain = vec![Subspace::full(a.dim())];
    while !chain.last().unwrap().is_zero() {
        if chain.len() > a.dim() + 2 {
            return Err(Error::Internal("J₋ is not nilpotent".into()));
        }
        let next = product_space(a, chain.last().unwrap(), &jm.space);
        chain.push(next);
    }
    for w in chain.windows(2) {
        let left = product_space(a, &jm.space, &w[0]);
        let right = product_space(a, &w[0], &jm.space);
        if !left.is_subspace_of(&w[1]) || !right.is_subspace_of(&w[1]) {
            return Err(Error::Internal("a bimodule filtration factor is not an A/J₋-bimodule".into()));
        }
    }
    Ok(witness(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::builtin_example;
    use crate::scalar::Rational;
    use std::sync::Arc;

    type Q = Rational;

    #[test]
    fn module_filtrations() {
        let d = Arc::new(builtin_example::<Q>("dual_numbers").unwrap());
        let (w, f) = radical_filtration(&DgModule::regular(&d)).unwrap();
        assert_eq!(w.factor_dims, vec![1, 1]);
        assert!(f.iter().all(|m| m.validate().is_empty()));
        let (jm, _) = dg_ideals(&d).unwrap();
        let k = DgModule::algebra_quotient(&d, &jm.space).unwrap();
        assert_eq!(radical_filtration(&k).unwrap().0.length(), 1);
        let l3 = Arc::new(builtin_example::<Q>("local_square_zero_2").unwrap());
        assert_eq!(radical_filtration(&DgModule::regular(&l3)).unwrap().0.factor_dims, vec![1, 2]);
    }

    #[test]
    fn algebra_filtrations() {
        let k: FdDga<Q> = builtin_example("point").unwrap();
        assert_eq!(bimodule_filtration(&k).unwrap().length(), 1);
        let d: FdDga<Q> = builtin_example("dual_numbers").unwrap();
        assert_eq!(bimodule_filtration(&d).unwrap().length(), 2);
        assert_eq!(bimodule_filtration(&d.tensor(&d)).unwrap().factor_dims, vec![1, 2, 1]);
    }
}
