//! Finite cochain complexes and their cohomology.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{kernel_and_image, sparse, Echelon, Matrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyEntry {
    pub dim: usize,
    pub certified: bool,
}

/// Degree → (dimension, certified flag).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CohomologyTable {
    pub entries: BTreeMap<i32, CohomologyEntry>,
}

impl CohomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A fully certified table from dimensions; zero entries are dropped.
    pub fn exact(dims: &BTreeMap<i32, usize>) -> Self {
        CohomologyTable {
            entries: dims
                .iter()
                .filter(|(_, d)| **d > 0)
                .map(|(k, d)| (*k, CohomologyEntry { dim: *d, certified: true }))
                .collect(),
        }
    }

    pub fn set(&mut self, degree: i32, dim: usize, certified: bool) {
        self.entries.insert(degree, CohomologyEntry { dim, certified });
    }

    /// Dimension in `degree` (0 when absent).
    pub fn dim(&self, degree: i32) -> usize {
        self.entries.get(&degree).map_or(0, |e| e.dim)
    }

    pub fn is_certified(&self, degree: i32) -> bool {
        self.entries.get(&degree).map_or(false, |e| e.certified)
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().map(|e| e.dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Degrees with nonzero dimension.
    pub fn support(&self) -> Vec<i32> {
        self.entries.iter().filter(|(_, e)| e.dim > 0).map(|(k, _)| *k).collect()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.entries.iter().filter(|(_, e)| e.dim > 0).map(|(k, e)| (*k, e.dim)).collect()
    }

    pub fn all_certified(&self) -> bool {
        self.entries.values().all(|e| e.certified)
    }
}

/// A finite cochain complex on a graded basis. `diff[j]` is the image of
/// basis vector `j`, which must be homogeneous of degree `degrees[j] + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex<S> {
    pub degrees: Vec<i32>,
    pub diff: Vec<SparseVec<S>>,
}

/// Cycles and boundaries of one degree, in ambient coordinates.
#[derive(Clone, Debug)]
pub struct DegreeData<S> {
    pub cycles: Vec<SparseVec<S>>,
    pub boundaries: Echelon<S>,
}

impl<S: Scalar> Complex<S> {
    pub fn new(degrees: Vec<i32>, diff: Vec<SparseVec<S>>) -> Self {
        Complex { degrees, diff }
    }

    /// Assembles a complex from per-degree blocks `d_i : C^i → C^{i+1}`.
    pub fn from_blocks(dims: &BTreeMap<i32, usize>, blocks: &BTreeMap<i32, Matrix<S>>) -> Result<Self> {
        let mut offset = BTreeMap::new();
        let mut degrees = Vec::new();
        for (deg, n) in dims {
            offset.insert(*deg, degrees.len());
            degrees.extend(std::iter::repeat(*deg).take(*n));
        }
        let mut diff = vec![Vec::new(); degrees.len()];
        for (deg, m) in blocks {
            let src = dims.get(deg).copied().unwrap_or(0);
            let tgt = dims.get(&(deg + 1)).copied().unwrap_or(0);
            if m.is_zero() {
                continue;
            }
            if m.cols() != src || m.rows() != tgt {
                return Err(Error::DimensionMismatch(format!(
                    "d_{deg} is {}x{} but the spaces have dimensions {src} -> {tgt}",
                    m.rows(),
                    m.cols()
                )));
            }
            let (so, to) = (offset[deg], offset[&(deg + 1)]);
            for j in 0..src {
                diff[so + j] = sparse::shift_indices(&m.sparse_column(j), to);
            }
        }
        Ok(Complex { degrees, diff })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn by_degree(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, d) in self.degrees.iter().enumerate() {
            out.entry(*d).or_default().push(i);
        }
        out
    }

    /// Checks homogeneity of `d` and `d∘d = 0`.
    pub fn check(&self) -> Result<()> {
        for (j, img) in self.diff.iter().enumerate() {
            if let Some((i, _)) = img.iter().find(|(i, _)| self.degrees[*i] != self.degrees[j] + 1) {
                return Err(Error::NotAComplex(format!(
                    "d of basis vector {j} (degree {}) has a component on vector {i} of degree {}",
                    self.degrees[j], self.degrees[*i]
                )));
            }
            let dd = self.apply(img);
            if !dd.is_empty() {
                return Err(Error::NotAComplex(format!("d∘d is nonzero on basis vector {j}")));
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = Vec::new();
        for (i, x) in v {
            acc = sparse::axpy(&acc, x, &self.diff[*i]);
        }
        acc
    }

    /// Cycles and boundaries in every occupied degree.
    pub fn degree_data(&self) -> BTreeMap<i32, DegreeData<S>> {
        let n = self.dim();
        let groups = self.by_degree();
        let mut out: BTreeMap<i32, DegreeData<S>> = groups
            .keys()
            .map(|d| (*d, DegreeData { cycles: Vec::new(), boundaries: Echelon::new(n) }))
            .collect();
        for (deg, idx) in &groups {
            let images: Vec<SparseVec<S>> = idx.iter().map(|j| self.diff[*j].clone()).collect();
            let (ker, im) = kernel_and_image(idx.len(), n, &images);
            out.get_mut(deg).unwrap().cycles = ker.into_iter().map(|k| sparse::remap(&k, |l| Some(idx[l]))).collect();
            if let Some(next) = out.get_mut(&(deg + 1)) {
                for b in im {
                    next.boundaries.insert(b);
                }
            }
        }
        out
    }

    pub fn cohomology(&self) -> CohomologyTable {
        let dims = self
            .degree_data()
            .into_iter()
            .map(|(d, data)| (d, data.cycles.len() - data.boundaries.rank()))
            .collect();
        CohomologyTable::exact(&dims)
    }

    /// Representatives of a basis of `H^deg`, reduced modulo boundaries.
    pub fn cohomology_basis(&self, data: &DegreeData<S>) -> Vec<SparseVec<S>> {
        let mut e = data.boundaries.clone();
        let mut reps = Vec::new();
        for z in &data.cycles {
            let r = e.reduce(z.clone());
            if !r.is_empty() {
                reps.push(r.clone());
                e.push_reduced(r);
            }
        }
        reps
    }
}

/// Cohomology of a complex given degreewise (`d_i : C^i → C^{i+1}`).
pub fn cohomology_of_complex<S: Scalar>(
    dims: &BTreeMap<i32, usize>,
    differentials: &BTreeMap<i32, Matrix<S>>,
) -> Result<CohomologyTable> {
    let c = Complex::from_blocks(dims, differentials)?;
    c.check()?;
    Ok(c.cohomology())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn acyclic_two_term() {
        let dims = BTreeMap::from([(-1, 1), (0, 1)]);
        let d = BTreeMap::from([(-1, Matrix::<Q>::from_i64(&[&[1]]))]);
        assert!(cohomology_of_complex(&dims, &d).unwrap().is_zero());
    }

    #[test]
    fn non_complex_rejected() {
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let d = BTreeMap::from([
            (0, Matrix::<Q>::from_i64(&[&[1]])),
            (1, Matrix::<Q>::from_i64(&[&[1]])),
        ]);
        assert!(cohomology_of_complex(&dims, &d).is_err());
    }

    #[test]
    fn rank_one_differential() {
        let dims = BTreeMap::from([(0, 2), (1, 2)]);
        let d = BTreeMap::from([(0, Matrix::<Q>::from_i64(&[&[1, 2], &[2, 4]]))]);
        let h = cohomology_of_complex(&dims, &d).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 1);
        assert!(h.all_certified());
    }
}
