//! Hochschild homology through the normalized bar complex
//! `A ⊗ Ā^{⊗n}`, truncated by bar length.

use crate::complex::{CohomologyTable, Complex};
use crate::derived::Window;
use crate::dga::FdDga;
use crate::error::{Error, Result};
use crate::linalg::sparse;
use crate::scalar::Scalar;

/// Largest truncated bar complex the computation will build.
pub const MAX_BAR_DIM: usize = 200_000;

/// `a0[a1|…|an]` for `n ≤ length`, with `ā` the basis minus the unit.
#[derive(Clone, Debug)]
pub struct BarComplex<S> {
    pub complex: Complex<S>,
    pub length: usize,
    /// Non-unit basis indices, in order.
    pub reduced: Vec<usize>,
    offsets: Vec<usize>,
}

impl<S: Scalar> BarComplex<S> {
    /// Basis index of `a0[ā_{i1}|…]`, slots given as positions in `reduced`.
    pub fn index(&self, a0: usize, slots: &[usize]) -> usize {
        let m = self.reduced.len();
        slots.iter().fold(a0, |acc, s| acc * m + s) + self.offsets[slots.len()]
    }

    pub fn column_of(&self, idx: usize) -> usize {
        self.offsets.partition_point(|o| *o <= idx) - 1
    }

    pub fn decode(&self, idx: usize) -> (usize, Vec<usize>) {
        let n = self.column_of(idx);
        let m = self.reduced.len();
        let mut r = idx - self.offsets[n];
        let mut slots = vec![0; n];
        for s in slots.iter_mut().rev() {
            *s = r % m;
            r /= m;
        }
        (r, slots)
    }

    /// Cohomological degree of column `n` ranges within these bounds.
    fn column_bounds(a: &FdDga<S>, reduced: &[usize], n: usize) -> (i64, i64) {
        let (amin, amax) = degree_bounds(a, 0..a.dim());
        let (bmin, bmax) = degree_bounds(a, reduced.iter().copied());
        let n = n as i64;
        (amin + n * (bmin - 1), amax + n * (bmax - 1))
    }
}

fn degree_bounds<S: Scalar>(a: &FdDga<S>, idx: impl Iterator<Item = usize>) -> (i64, i64) {
    idx.map(|i| a.degree(i) as i64).fold((i64::MAX, i64::MIN), |(l, h), d| (l.min(d), h.max(d)))
}

pub fn bar_complex<S: Scalar>(a: &FdDga<S>, length: usize) -> Result<BarComplex<S>> {
    let k = a.dim();
    let Some(unit) = a.unit() else {
        let complex = Complex::new(Vec::new(), Vec::new());
        return Ok(BarComplex { complex, length, reduced: Vec::new(), offsets: vec![0; length + 2] });
    };
    let reduced: Vec<usize> = (0..k).filter(|i| *i != unit).collect();
    let m = reduced.len();
    let mut pos = vec![usize::MAX; k];
    for (p, i) in reduced.iter().enumerate() {
        pos[*i] = p;
    }
    let mut offsets = vec![0];
    let mut size = k;
    for _ in 0..=length {
        let last = *offsets.last().unwrap();
        if last > MAX_BAR_DIM {
            return Err(Error::TooLarge(format!("bar complex exceeds {MAX_BAR_DIM} basis elements")));
        }
        offsets.push(last + size);
        size *= m.max(1);
        if m == 0 {
            size = 0;
        }
    }
    let dim = offsets[length + 1];
    if dim > MAX_BAR_DIM {
        return Err(Error::TooLarge(format!("bar complex of dimension {dim} exceeds {MAX_BAR_DIM}")));
    }
    let mut bar = BarComplex { complex: Complex::new(Vec::new(), Vec::new()), length, reduced, offsets };
    let sd = |i: usize| a.degree(i) as i64 - 1;
    let mut degrees = Vec::with_capacity(dim);
    let mut diff = Vec::with_capacity(dim);
    for idx in 0..dim {
        let (a0, slots) = bar.decode(idx);
        let el: Vec<usize> = slots.iter().map(|s| bar.reduced[*s]).collect();
        let n = el.len();
        // prefix[i] = |a0| + Σ_{j<i} (|a_j| − 1), slots numbered from 1
        let mut prefix = vec![a.degree(a0) as i64];
        for e in &el {
            prefix.push(prefix.last().unwrap() + sd(*e));
        }
        degrees.push(prefix[n] as i32);
        let mut out: Vec<(usize, S)> = Vec::new();
        let put = |out: &mut Vec<(usize, S)>, a0: usize, slots: &[usize], c: S| out.push((bar.index(a0, slots), c));
        // slot vector with entry i replaced by the terms of v projected to Ā
        let replace = |out: &mut Vec<(usize, S)>, i: usize, v: &[(usize, S)], sign: &S| {
            for (b, x) in v {
                if *b == unit {
                    continue;
                }
                let mut s = slots.clone();
                s[i] = pos[*b];
                put(out, a0, &s, sign.clone() * x.clone());
            }
        };
        for (b, x) in a.diff_basis(a0) {
            put(&mut out, *b, &slots, x.clone());
        }
        for i in 0..n {
            let sign = -S::sign(prefix[i]);
            replace(&mut out, i, a.diff_basis(el[i]), &sign);
        }
        if n > 0 {
            let sign = S::sign(prefix[0]);
            for (b, x) in a.mul_basis(a0, el[0]) {
                put(&mut out, *b, &slots[1..], sign.clone() * x.clone());
            }
            for i in 0..n - 1 {
                let sign = S::sign(prefix[i + 1]);
                let mut rest: Vec<usize> = slots[..i].to_vec();
                rest.push(0);
                rest.extend_from_slice(&slots[i + 2..]);
                for (b, x) in a.mul_basis(el[i], el[i + 1]) {
                    if *b == unit {
                        continue;
                    }
                    rest[i] = pos[*b];
                    put(&mut out, a0, &rest, sign.clone() * x.clone());
                }
            }
            let sign = -S::sign(sd(el[n - 1]) * prefix[n - 1]);
            for (b, x) in a.mul_basis(el[n - 1], a0) {
                put(&mut out, *b, &slots[..n - 1], sign.clone() * x.clone());
            }
        }
        diff.push(sparse::from_entries(out));
    }
    bar.complex = Complex::new(degrees, diff);
    Ok(bar)
}

/// Whether no column beyond the truncation meets degrees `t − 1` or `t`.
pub fn hochschild_degree_certified<S: Scalar>(a: &FdDga<S>, length: usize, t: i32) -> bool {
    let Some(unit) = a.unit() else { return true };
    let reduced: Vec<usize> = (0..a.dim()).filter(|i| *i != unit).collect();
    if reduced.is_empty() {
        return true;
    }
    let (amin, amax) = degree_bounds(a, 0..a.dim());
    let (bmin, bmax) = degree_bounds(a, reduced.iter().copied());
    let t = t as i64;
    // columns n > length with lo(n) ≤ t and hi(n) ≥ t − 1
    let (l1, h1) = solutions(bmin - 1, t - amin);
    let (l2, h2) = solutions(1 - bmax, amax - t + 1);
    let lo = l1.max(l2).max(length as i64 + 1);
    let hi = h1.min(h2);
    lo > hi
}

/// The `n ≥ 0` with `n·slope ≤ room`, as an interval (`i64::MAX` for unbounded).
fn solutions(slope: i64, room: i64) -> (i64, i64) {
    match slope.signum() {
        1 if room < 0 => (1, 0),
        1 => (0, room.div_euclid(slope)),
        0 if room < 0 => (1, 0),
        0 => (0, i64::MAX),
        _ => ((-room).div_euclid(-slope) + i64::from((-room).rem_euclid(-slope) != 0), i64::MAX),
    }
}

/// `HH_*(A)` on the window in cohomological degrees, so `HH_n` sits in degree `−n`.
pub fn hochschild_homology<S: Scalar>(a: &FdDga<S>, max_bar_length: usize, window: Window) -> Result<CohomologyTable> {
    let bar = bar_complex(a, max_bar_length)?;
    bar.complex.check()?;
    let h = bar.complex.cohomology();
    let mut t = CohomologyTable::new();
    for d in window.degrees() {
        t.set(d, h.dim(d), hochschild_degree_certified(a, max_bar_length, d));
    }
    Ok(t)
}

/// The column bounds used for certification, per bar length.
pub fn column_degree_bounds<S: Scalar>(a: &FdDga<S>, length: usize) -> Vec<(i64, i64)> {
    let Some(unit) = a.unit() else { return Vec::new() };
    let reduced: Vec<usize> = (0..a.dim()).filter(|i| *i != unit).collect();
    (0..=length).map(|n| BarComplex::<S>::column_bounds(a, &reduced, n)).collect()
}
