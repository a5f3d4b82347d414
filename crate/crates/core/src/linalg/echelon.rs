//! Row-echelon bases of subspaces of `k^n`.

use super::sparse::{self, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A semi-reduced echelon basis: each row has leading entry 1 at a distinct
/// pivot column, and no row has a nonzero entry left of its pivot.
///
/// Rows need not vanish at the pivots of other rows; use [`Subspace`] when the
/// unique reduced form is needed.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    dim: usize,
    rows: Vec<SparseVec<S>>,
    pivot_row: Vec<Option<usize>>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<S>] {
        &self.rows
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row][0].0
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Normal form of `v` modulo the span: zero at every pivot column.
    pub fn reduce(&self, mut v: SparseVec<S>) -> SparseVec<S> {
        let mut k = 0;
        while k < v.len() {
            let (c, x) = (v[k].0, v[k].1.clone());
            match self.pivot_row[c] {
                Some(r) => v = sparse::axpy(&v, &(-x), &self.rows[r]),
                None => k += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &[(usize, S)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    /// Adds `v` to the span; returns the new row index if the rank grew.
    pub fn insert(&mut self, v: SparseVec<S>) -> Option<usize> {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    /// Inserts a vector already in normal form.
    pub fn push_reduced(&mut self, r: SparseVec<S>) -> Option<usize> {
        if r.is_empty() {
            return None;
        }
        let lead = r[0].1.inv().expect("nonzero leading entry");
        let r = sparse::scale(&r, &lead);
        let p = r[0].0;
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(r);
        Some(self.rows.len() - 1)
    }

    pub fn into_subspace(self) -> Subspace<S> {
        Subspace::from_echelon(self)
    }
}

/// A subspace of `k^n` stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<S> {
    ambient: usize,
    rows: Vec<SparseVec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vec![(i, S::one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = SparseVec<S>>>(ambient: usize, vectors: I) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn from_dense_rows(ambient: usize, rows: &[Vec<S>]) -> Self {
        Self::span(ambient, rows.iter().map(|r| sparse::from_dense(r)))
    }

    fn from_echelon(e: Echelon<S>) -> Self {
        let ambient = e.dim;
        let mut rows = e.rows;
        rows.sort_by_key(|r| r[0].0);
        // back substitution, bottom up
        for i in (0..rows.len()).rev() {
            let p = rows[i][0].0;
            for j in 0..i {
                let x = sparse::get(&rows[j], p);
                if !x.is_zero() {
                    rows[j] = sparse::axpy(&rows[j], &(-x), &rows[i]);
                }
            }
        }
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dense_rows(&self) -> Vec<Vec<S>> {
        self.rows.iter().map(|r| sparse::to_dense(r, self.ambient)).collect()
    }

    fn pivot_lookup(&self, col: usize) -> Option<usize> {
        self.pivots.binary_search(&col).ok()
    }

    /// Normal form modulo the subspace (zero at all pivots).
    pub fn reduce(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut out = v.to_vec();
        // rows are fully reduced, so pivot entries of `v` are never disturbed
        for (c, x) in v {
            if let Some(r) = self.pivot_lookup(*c) {
                out = sparse::axpy(&out, &(-x.clone()), &self.rows[r]);
            }
        }
        out
    }

    pub fn reduce_dense(&self, v: &[S]) -> Vec<S> {
        sparse::to_dense(&self.reduce(&sparse::from_dense(v)), self.ambient)
    }

    pub fn contains(&self, v: &[(usize, S)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[S]) -> bool {
        self.contains(&sparse::from_dense(v))
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[(usize, S)]) -> Option<Vec<S>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| sparse::get(v, *p)).collect())
    }

    pub fn coords_dense(&self, v: &[S]) -> Option<Vec<S>> {
        let sv = sparse::from_dense(v);
        if !self.contains(&sv) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v[*p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace<S>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    fn check_ambient(&self, other: &Subspace<S>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of k^{} and k^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient, self.rows.iter().chain(other.rows.iter()).cloned()))
    }

    /// Zassenhaus: reduce rows `(u, u)` and `(v, 0)`; rows with vanishing
    /// first half carry the intersection in their second half.
    pub fn intersect(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut e = Echelon::new(2 * n);
        for u in &self.rows {
            let mut w = u.clone();
            w.extend(sparse::shift_indices(u, n));
            e.insert(w);
        }
        for v in &other.rows {
            e.insert(v.clone());
        }
        let meet = e
            .rows()
            .iter()
            .filter(|r| r[0].0 >= n)
            .map(|r| r.iter().map(|(i, x)| (i - n, x.clone())).collect::<SparseVec<S>>());
        Ok(Subspace::span(n, meet))
    }

    /// `{ v : map(v) ∈ target }` where `map` lists the images of basis vectors.
    pub fn preimage(source_dim: usize, images: &[SparseVec<S>], target: &Subspace<S>) -> Result<Subspace<S>> {
        if images.len() != source_dim {
            return Err(Error::DimensionMismatch(format!(
                "map has {} columns, source has dimension {}",
                images.len(),
                source_dim
            )));
        }
        let reduced: Vec<SparseVec<S>> = images.iter().map(|w| target.reduce(w)).collect();
        let (ker, _) = kernel_and_image(source_dim, target.ambient, &reduced);
        Ok(Subspace::span(source_dim, ker))
    }

    /// Coordinate vectors at the non-pivot columns; together with `self`
    /// they span the ambient space.
    pub fn complement(&self) -> Subspace<S> {
        let free = self.free_columns();
        Subspace {
            ambient: self.ambient,
            rows: free.iter().map(|i| vec![(*i, S::one())]).collect(),
            pivots: free,
        }
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.ambient).filter(|i| !is_pivot[*i]).collect()
    }

    /// Basis of the solution space of `row · x = 0` for all rows.
    pub fn null_space(&self) -> Vec<SparseVec<S>> {
        let free = self.free_columns();
        free.iter()
            .map(|f| {
                let mut entries = vec![(*f, S::one())];
                for (r, p) in self.rows.iter().zip(&self.pivots) {
                    let x = sparse::get(r, *f);
                    if !x.is_zero() {
                        entries.push((*p, -x));
                    }
                }
                sparse::from_entries(entries)
            })
            .collect()
    }
}

/// Kernel and image of the map sending basis vector `j` of `k^source_dim` to
/// `images[j]` in `k^target_dim`.
///
/// The kernel basis is in source coordinates; the image basis is an echelon
/// basis in target coordinates.
pub fn kernel_and_image<S: Scalar>(
    source_dim: usize,
    target_dim: usize,
    images: &[SparseVec<S>],
) -> (Vec<SparseVec<S>>, Vec<SparseVec<S>>) {
    let mut e = Echelon::new(target_dim + source_dim);
    for (j, w) in images.iter().enumerate() {
        let mut v = w.clone();
        v.push((target_dim + j, S::one()));
        e.insert(v);
    }
    let mut ker = Vec::new();
    let mut im = Vec::new();
    for r in e.rows {
        if r[0].0 >= target_dim {
            ker.push(r.into_iter().map(|(i, x)| (i - target_dim, x)).collect());
        } else {
            im.push(r.into_iter().take_while(|(i, _)| *i < target_dim).collect());
        }
    }
    (ker, im)
}

/// Expresses vectors in a basis chosen by insertion order.
#[derive(Clone, Debug)]
pub struct Coordinatizer<S> {
    ambient: usize,
    basis: Vec<SparseVec<S>>,
    ech: Echelon<S>,
}

impl<S: Scalar> Coordinatizer<S> {
    pub fn new(ambient: usize) -> Self {
        Coordinatizer { ambient, basis: Vec::new(), ech: Echelon::new(0) }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec<S>] {
        &self.basis
    }

    fn reduce_tagged(&self, mut v: SparseVec<S>) -> SparseVec<S> {
        let mut k = 0;
        while k < v.len() && v[k].0 < self.ambient {
            let (c, x) = (v[k].0, v[k].1.clone());
            match self.row_for(c) {
                Some(r) => v = sparse::axpy(&v, &(-x), &self.ech.rows[r]),
                None => k += 1,
            }
        }
        v
    }

    fn row_for(&self, col: usize) -> Option<usize> {
        self.ech.pivot_row.get(col).copied().flatten()
    }

    /// Appends `v` to the basis when it is independent of the current one.
    pub fn push(&mut self, v: SparseVec<S>) -> bool {
        let t = self.basis.len();
        let mut tagged = v.clone();
        tagged.push((self.ambient + t, S::one()));
        let r = self.reduce_tagged(tagged);
        if r.is_empty() || r[0].0 >= self.ambient {
            return false;
        }
        let lead = r[0].1.inv().expect("nonzero");
        let r = sparse::scale(&r, &lead);
        let p = r[0].0;
        if self.ech.pivot_row.len() < self.ambient {
            self.ech.pivot_row.resize(self.ambient, None);
        }
        self.ech.pivot_row[p] = Some(self.ech.rows.len());
        self.ech.rows.push(r);
        self.basis.push(v);
        true
    }

    pub fn contains(&self, v: &[(usize, S)]) -> bool {
        let r = self.reduce_tagged(v.to_vec());
        r.first().map_or(true, |e| e.0 >= self.ambient)
    }

    pub fn coords(&self, v: &[(usize, S)]) -> Option<Vec<S>> {
        let r = self.reduce_tagged(v.to_vec());
        if r.first().map_or(false, |e| e.0 < self.ambient) {
            return None;
        }
        let mut out = vec![S::zero(); self.basis.len()];
        for (i, x) in r {
            out[i - self.ambient] = -x;
        }
        Some(out)
    }
}
