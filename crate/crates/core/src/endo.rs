//! Endomorphism DGAs on a basis of maps, with the identity swapped in as
//! the unit basis element.

use crate::dga::FdDga;
use crate::error::{Error, Result};
use crate::linalg::{sparse, SparseVec};
use crate::scalar::Scalar;

/// Change of basis replacing old basis vector `pivot` by `identity`.
#[derive(Clone, Debug)]
pub struct UnitChange<S> {
    pub pivot: usize,
    pub identity: SparseVec<S>,
}

impl<S: Scalar> UnitChange<S> {
    pub fn new(identity: SparseVec<S>, degrees: &[i32]) -> Result<Self> {
        let pivot = identity
            .iter()
            .find(|(i, _)| degrees[*i] == 0)
            .map(|(i, _)| *i)
            .ok_or_else(|| Error::Internal("the identity map is zero".into()))?;
        Ok(UnitChange { pivot, identity })
    }

    fn pivot_coeff(&self) -> S {
        sparse::get(&self.identity, self.pivot)
    }

    pub fn to_new(&self, old: &[(usize, S)]) -> SparseVec<S> {
        let y = sparse::get(old, self.pivot) / self.pivot_coeff();
        if y.is_zero() {
            return old.to_vec();
        }
        let mut v = sparse::axpy(old, &-y.clone(), &self.identity);
        v.push((self.pivot, y));
        sparse::from_entries(v)
    }

    pub fn to_old(&self, new: &[(usize, S)]) -> SparseVec<S> {
        let y = sparse::get(new, self.pivot);
        let rest: SparseVec<S> = new.iter().filter(|(i, _)| *i != self.pivot).cloned().collect();
        sparse::axpy(&rest, &y, &self.identity)
    }
}

/// The DGA on a basis of maps with product `mul_old(i, j)` and differential
/// `diff_old`, rebased so that the identity is a basis element.
pub fn rebase_unit<S: Scalar>(
    mut names: Vec<String>,
    degrees: Vec<i32>,
    diff_old: &[SparseVec<S>],
    identity: SparseVec<S>,
    mut mul_old: impl FnMut(usize, usize) -> SparseVec<S>,
) -> Result<(FdDga<S>, UnitChange<S>)> {
    let n = degrees.len();
    let ch = UnitChange::new(identity, &degrees)?;
    let p = ch.pivot;
    let mut mul = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = if i == p {
                vec![(j, S::one())]
            } else if j == p {
                vec![(i, S::one())]
            } else {
                ch.to_new(&mul_old(i, j))
            };
        }
    }
    let mut diff: Vec<SparseVec<S>> = diff_old.iter().map(|v| ch.to_new(v)).collect();
    diff[p] = Vec::new();
    names[p] = "id".into();
    let a = FdDga::from_raw(names, degrees, Some(p), mul, diff)?;
    Ok((a, ch))
}
