//! Sparse vectors as sorted `(index, value)` lists with no stored zeros.

use crate::scalar::Scalar;

pub type SparseVec<S> = Vec<(usize, S)>;

pub fn from_dense<S: Scalar>(v: &[S]) -> SparseVec<S> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<S: Scalar>(v: &[(usize, S)], n: usize) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries<S: Scalar>(mut entries: Vec<(usize, S)>) -> SparseVec<S> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<S> = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.clone() + x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `v + c * w`.
pub fn axpy<S: Scalar>(v: &[(usize, S)], c: &S, w: &[(usize, S)]) -> SparseVec<S> {
    if c.is_zero() {
        return v.to_vec();
    }
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        if b == w.len() || (a < v.len() && v[a].0 < w[b].0) {
            out.push(v[a].clone());
            a += 1;
        } else if a == v.len() || w[b].0 < v[a].0 {
            out.push((w[b].0, c.clone() * w[b].1.clone()));
            b += 1;
        } else {
            let s = v[a].1.clone() + c.clone() * w[b].1.clone();
            if !s.is_zero() {
                out.push((v[a].0, s));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn scale<S: Scalar>(v: &[(usize, S)], c: &S) -> SparseVec<S> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.clone() * c.clone())).collect()
}

pub fn neg<S: Scalar>(v: &[(usize, S)]) -> SparseVec<S> {
    v.iter().map(|(i, x)| (*i, -x.clone())).collect()
}

pub fn get<S: Scalar>(v: &[(usize, S)], i: usize) -> S {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => S::zero(),
    }
}

/// Adds `c * w` into a dense accumulator.
pub fn add_into<S: Scalar>(acc: &mut [S], c: &S, w: &[(usize, S)]) {
    if c.is_zero() {
        return;
    }
    for (i, x) in w {
        acc[*i] = acc[*i].clone() + c.clone() * x.clone();
    }
}

/// Reindexes entries through `f`, dropping those mapped to `None`.
pub fn remap<S: Scalar>(v: &[(usize, S)], f: impl Fn(usize) -> Option<usize>) -> SparseVec<S> {
    from_entries(v.iter().filter_map(|(i, x)| f(*i).map(|j| (j, x.clone()))).collect())
}

pub fn shift_indices<S: Scalar>(v: &[(usize, S)], offset: usize) -> SparseVec<S> {
    v.iter().map(|(i, x)| (i + offset, x.clone())).collect()
}
