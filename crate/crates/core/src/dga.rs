//! Finite-dimensional DG algebras in structure-constant form.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{CohomologyTable, Complex};
use crate::error::{Error, Result};
use crate::linalg::{sparse, Matrix, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

/// One failed axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

/// A finite-dimensional DGA. `mul[i * n + j]` is `b_i · b_j`; `diff[i]` is
/// `d(b_i)`. The zero ring has no basis and no unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FdDga<S> {
    names: Vec<String>,
    degrees: Vec<i32>,
    unit: Option<usize>,
    mul: Vec<SparseVec<S>>,
    diff: Vec<SparseVec<S>>,
}

impl<S: Scalar> FdDga<S> {
    /// Raw constructor; no axioms are checked.
    pub fn from_raw(
        names: Vec<String>,
        degrees: Vec<i32>,
        unit: Option<usize>,
        mul: Vec<SparseVec<S>>,
        diff: Vec<SparseVec<S>>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || mul.len() != n * n || diff.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} basis names but {} degrees, {} products, {} differentials",
                degrees.len(),
                mul.len(),
                diff.len()
            )));
        }
        if unit.map_or(n > 0, |u| u >= n) {
            return Err(Error::Invalid("unit must name a basis element (only the zero ring has none)".into()));
        }
        for v in mul.iter().chain(diff.iter()) {
            if v.iter().any(|(i, _)| *i >= n) || v.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::Invalid("table entry out of range or unsorted".into()));
            }
        }
        Ok(FdDga { names, degrees, unit, mul, diff })
    }

    /// Builds from sparse product and differential lists. Products involving
    /// the unit are filled in automatically; everything unspecified is zero.
    pub fn from_tables(
        basis: Vec<(String, i32)>,
        unit: usize,
        products: Vec<(usize, usize, SparseVec<S>)>,
        diffs: Vec<(usize, SparseVec<S>)>,
    ) -> Result<Self> {
        let n = basis.len();
        if unit >= n {
            return Err(Error::Invalid("unit index out of range".into()));
        }
        let mut mul = vec![Vec::new(); n * n];
        for i in 0..n {
            mul[unit * n + i] = vec![(i, S::one())];
            mul[i * n + unit] = vec![(i, S::one())];
        }
        for (i, j, v) in products {
            if i >= n || j >= n {
                return Err(Error::Invalid("product index out of range".into()));
            }
            mul[i * n + j] = sparse::from_entries(v);
        }
        let mut diff = vec![Vec::new(); n];
        for (i, v) in diffs {
            if i >= n {
                return Err(Error::Invalid("differential index out of range".into()));
            }
            diff[i] = sparse::from_entries(v);
        }
        let (names, degrees) = basis.into_iter().unzip();
        Self::from_raw(names, degrees, Some(unit), mul, diff)
    }

    pub fn zero_ring() -> Self {
        FdDga { names: Vec::new(), degrees: Vec::new(), unit: None, mul: Vec::new(), diff: Vec::new() }
    }

    /// The ground field as a one-dimensional DGA.
    pub fn point() -> Self {
        Self::from_tables(vec![("1".into(), 0)], 0, vec![], vec![]).expect("k is well formed")
    }

    pub fn field(&self) -> FieldSpec {
        S::field()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<S> {
        &self.mul[i * self.dim() + j]
    }

    pub fn diff_basis(&self, i: usize) -> &SparseVec<S> {
        &self.diff[i]
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(|v| v.is_empty())
    }

    /// Dense element with a single 1 at `i`.
    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    pub fn one(&self) -> Vec<S> {
        match self.unit {
            Some(u) => self.basis_vector(u),
            None => Vec::new(),
        }
    }

    pub fn zero(&self) -> Vec<S> {
        vec![S::zero(); self.dim()]
    }

    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                sparse::add_into(&mut out, &(a.clone() * b.clone()), &self.mul[i * n + j]);
            }
        }
        out
    }

    pub fn d(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            sparse::add_into(&mut out, a, &self.diff[i]);
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mul_matrix(&self, x: &[S]) -> Matrix<S> {
        let n = self.dim();
        let cols: Vec<SparseVec<S>> = (0..n).map(|j| sparse::from_dense(&self.mul(x, &self.basis_vector(j)))).collect();
        Matrix::from_sparse_columns(n, &cols)
    }

    /// Degree of a nonzero homogeneous element, `None` if zero or mixed.
    pub fn homogeneous_degree(&self, x: &[S]) -> Option<i32> {
        let mut deg = None;
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                match deg {
                    None => deg = Some(self.degrees[i]),
                    Some(d) if d != self.degrees[i] => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Splits an element into homogeneous components.
    pub fn components(&self, x: &[S]) -> BTreeMap<i32, Vec<S>> {
        let mut out: BTreeMap<i32, Vec<S>> = BTreeMap::new();
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                out.entry(self.degrees[i]).or_insert_with(|| self.zero())[i] = a.clone();
            }
        }
        out
    }

    /// Smallest and largest occupied degree.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    pub fn complex(&self) -> Complex<S> {
        Complex::new(self.degrees.clone(), self.diff.clone())
    }

    pub fn cohomology(&self) -> CohomologyTable {
        self.complex().cohomology()
    }

    /// Empty iff all DGA axioms hold.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        let push = |out: &mut Vec<Violation>, axiom, indices: Vec<usize>, detail: String| {
            out.push(Violation { axiom, indices, detail })
        };
        if n == 0 {
            return out;
        }
        let name = |i: usize| self.names[i].as_str();
        match self.unit {
            None => push(&mut out, "unit", vec![], "a nonzero algebra needs a unit".into()),
            Some(u) => {
                if self.degrees[u] != 0 {
                    push(&mut out, "unit", vec![u], format!("unit {} has degree {}", name(u), self.degrees[u]));
                }
                for i in 0..n {
                    let e = vec![(i, S::one())];
                    if self.mul[u * n + i] != e || self.mul[i * n + u] != e {
                        push(&mut out, "unit", vec![u, i], format!("{} is not a two-sided identity on {}", name(u), name(i)));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let want = self.degrees[i] + self.degrees[j];
                if self.mul[i * n + j].iter().any(|(k, _)| self.degrees[*k] != want) {
                    push(&mut out, "degree", vec![i, j], format!("{}·{} is not homogeneous of degree {want}", name(i), name(j)));
                }
            }
            if self.diff[i].iter().any(|(k, _)| self.degrees[*k] != self.degrees[i] + 1) {
                push(&mut out, "degree", vec![i], format!("d({}) does not have degree {}", name(i), self.degrees[i] + 1));
            }
        }
        // sparse combination Σ c_l · table(l)
        let comb = |terms: &[(usize, S)], row: &dyn Fn(usize) -> usize| -> SparseVec<S> {
            let mut acc = Vec::new();
            for (l, c) in terms {
                acc.extend(sparse::scale(&self.mul[row(*l)], c));
            }
            sparse::from_entries(acc)
        };
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mul[i * n + j];
                for k in 0..n {
                    let jk = &self.mul[j * n + k];
                    if ij.is_empty() && jk.is_empty() {
                        continue;
                    }
                    let lhs = comb(ij, &|l| l * n + k);
                    let rhs = comb(jk, &|l| i * n + l);
                    if lhs != rhs {
                        push(&mut out, "associativity", vec![i, j, k], format!("({}·{})·{} ≠ {}·({}·{})", name(i), name(j), name(k), name(i), name(j), name(k)));
                    }
                }
            }
        }
        let apply_d = |v: &[(usize, S)]| -> SparseVec<S> {
            let mut acc = Vec::new();
            for (l, c) in v {
                acc.extend(sparse::scale(&self.diff[*l], c));
            }
            sparse::from_entries(acc)
        };
        for i in 0..n {
            if !apply_d(&self.diff[i]).is_empty() {
                push(&mut out, "d∘d = 0", vec![i], format!("d(d({})) ≠ 0", name(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = apply_d(&self.mul[i * n + j]);
                let sign = S::sign(self.degrees[i] as i64);
                let mut rhs = comb(&self.diff[i], &|l| l * n + j);
                rhs.extend(sparse::scale(&comb(&self.diff[j], &|l| i * n + l), &sign));
                if lhs != sparse::from_entries(rhs) {
                    push(&mut out, "Leibniz", vec![i, j], format!("d({}·{}) violates the graded Leibniz rule", name(i), name(j)));
                }
            }
        }
        out
    }

    /// Same space and differential, product `a·b ↦ (−1)^{|a||b|} b·a`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut mul = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                let s = S::sign((self.degrees[i] as i64) * (self.degrees[j] as i64));
                mul[i * n + j] = sparse::scale(&self.mul[j * n + i], &s);
            }
        }
        FdDga { names: self.names.clone(), degrees: self.degrees.clone(), unit: self.unit, mul, diff: self.diff.clone() }
    }

    /// Graded tensor product; basis pair `(i, j)` has index `i * dim(b) + j`.
    pub fn tensor(&self, b: &FdDga<S>) -> Self {
        let (n, m) = (self.dim(), b.dim());
        let idx = |i: usize, j: usize| i * m + j;
        let mut names = Vec::with_capacity(n * m);
        let mut degrees = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                names.push(format!("{}⊗{}", self.names[i], b.names[j]));
                degrees.push(self.degrees[i] + b.degrees[j]);
            }
        }
        let nm = n * m;
        let mut mul = vec![Vec::new(); nm * nm];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        let s = S::sign((b.degrees[j] as i64) * (self.degrees[k] as i64));
                        let mut entries = Vec::new();
                        for (p, x) in &self.mul[i * n + k] {
                            for (q, y) in &b.mul[j * m + l] {
                                entries.push((idx(*p, *q), s.clone() * x.clone() * y.clone()));
                            }
                        }
                        mul[idx(i, j) * nm + idx(k, l)] = sparse::from_entries(entries);
                    }
                }
            }
        }
        let mut diff = vec![Vec::new(); nm];
        for i in 0..n {
            for j in 0..m {
                let mut entries = Vec::new();
                for (p, x) in &self.diff[i] {
                    entries.push((idx(*p, j), x.clone()));
                }
                let s = S::sign(self.degrees[i] as i64);
                for (q, y) in &b.diff[j] {
                    entries.push((idx(i, *q), s.clone() * y.clone()));
                }
                diff[idx(i, j)] = sparse::from_entries(entries);
            }
        }
        let unit = match (self.unit, b.unit) {
            (Some(u), Some(v)) => Some(idx(u, v)),
            _ => None,
        };
        FdDga { names, degrees, unit, mul, diff }
    }

    /// `A^e = A^op ⊗ A`.
    pub fn enveloping(&self) -> Self {
        self.opposite().tensor(self)
    }

    /// Multiplication table as a map from basis pairs to sparse vectors, for emitters.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, &SparseVec<S>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = &self.mul[i * n + j];
                if !v.is_empty() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.names = names;
        self
    }
}

/// A degree-zero DGA map, stored as one matrix (target × source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMorphism<S> {
    pub source: FdDga<S>,
    pub target: FdDga<S>,
    pub map: Matrix<S>,
}

impl<S: Scalar> DgaMorphism<S> {
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.map.apply(x)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (a, b) = (&self.source, &self.target);
        for i in 0..a.dim() {
            let fi = self.apply(&a.basis_vector(i));
            if !fi.iter().all(|x| x.is_zero()) && b.homogeneous_degree(&fi) != Some(a.degree(i)) {
                out.push(Violation { axiom: "degree", indices: vec![i], detail: format!("image of {} has the wrong degree", a.name(i)) });
            }
            if self.apply(&a.d(&a.basis_vector(i))) != b.d(&fi) {
                out.push(Violation { axiom: "chain map", indices: vec![i], detail: format!("f(d {}) ≠ d f({})", a.name(i), a.name(i)) });
            }
            for j in 0..a.dim() {
                let fj = self.apply(&a.basis_vector(j));
                if self.apply(&a.mul(&a.basis_vector(i), &a.basis_vector(j))) != b.mul(&fi, &fj) {
                    out.push(Violation { axiom: "multiplicative", indices: vec![i, j], detail: format!("f({}·{}) ≠ f({})·f({})", a.name(i), a.name(j), a.name(i), a.name(j)) });
                }
            }
        }
        if self.apply(&a.one()) != b.one() && !(a.is_zero_ring() && b.is_zero_ring()) {
            out.push(Violation { axiom: "unital", indices: vec![], detail: "f(1) ≠ 1".into() });
        }
        out
    }
}

pub const BUILTIN_NAMES: [&str; 6] =
    ["point", "dual_numbers", "dual_numbers_deg1", "acyclic", "a2_path", "local_square_zero_2"];

/// The library of named example algebras.
pub fn builtin_example<S: Scalar>(name: &str) -> Result<FdDga<S>> {
    let one = S::one;
    let b = |v: &[(&str, i32)]| v.iter().map(|(n, d)| (n.to_string(), *d)).collect::<Vec<_>>();
    let a = match name {
        "point" => FdDga::point(),
        // k[x]/x², |x| = 0
        "dual_numbers" => FdDga::from_tables(b(&[("1", 0), ("x", 0)]), 0, vec![], vec![])?,
        // k[x]/x², |x| = 1
        "dual_numbers_deg1" => FdDga::from_tables(b(&[("1", 0), ("x", 1)]), 0, vec![], vec![])?,
        // k ⊕ kε, |ε| = −1, dε = 1
        "acyclic" => FdDga::from_tables(b(&[("1", 0), ("e", -1)]), 0, vec![], vec![(1, vec![(0, one())])])?,
        // upper triangular 2×2: e1 = e11, a = e12
        "a2_path" => FdDga::from_tables(
            b(&[("1", 0), ("e1", 0), ("a", 0)]),
            0,
            vec![(1, 1, vec![(1, one())]), (1, 2, vec![(2, one())])],
            vec![],
        )?,
        // k[x,y]/(x², xy, y²)
        "local_square_zero_2" => FdDga::from_tables(b(&[("1", 0), ("x", 0), ("y", 0)]), 0, vec![], vec![])?,
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    debug_assert!(a.validate().is_empty());
    Ok(a)
}

pub fn validate_dga<S: Scalar>(a: &FdDga<S>) -> Vec<Violation> {
    a.validate()
}

pub fn opposite_dga<S: Scalar>(a: &FdDga<S>) -> FdDga<S> {
    a.opposite()
}

pub fn tensor_dga<S: Scalar>(a: &FdDga<S>, b: &FdDga<S>) -> FdDga<S> {
    a.tensor(b)
}

pub fn enveloping_dga<S: Scalar>(a: &FdDga<S>) -> FdDga<S> {
    a.enveloping()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn builtins_validate() {
        for n in BUILTIN_NAMES {
            let a = builtin_example::<Q>(n).unwrap();
            assert!(a.validate().is_empty(), "{n}: {:?}", a.validate());
        }
        assert!(builtin_example::<Q>("nope").is_err());
    }

    #[test]
    fn injected_entries() {
        let basis = vec![("1".to_string(), 0), ("x".to_string(), 0)];
        // x² = 1 gives k[x]/(x² − 1) ≅ k × k, still a valid algebra
        let split = FdDga::from_tables(basis.clone(), 0, vec![(1, 1, vec![(0, q(1))])], vec![]).unwrap();
        assert!(split.validate().is_empty());

        // x² = 1 + x with d(x) = x breaks d² = 0 and Leibniz
        let bad = FdDga::from_tables(basis.clone(), 0, vec![(1, 1, vec![(0, q(1)), (1, q(1))])], vec![(1, vec![(1, q(1))])])
            .unwrap();
        let v = bad.validate();
        assert!(v.iter().any(|x| x.axiom == "degree" || x.axiom == "Leibniz"));

        // a product landing in the wrong degree is named by its pair
        let basis1 = vec![("1".to_string(), 0), ("x".to_string(), 1)];
        let bad = FdDga::from_tables(basis1, 0, vec![(1, 1, vec![(1, q(1))])], vec![]).unwrap();
        assert!(bad.validate().iter().any(|x| x.axiom == "degree" && x.indices == vec![1, 1]));
    }

    #[test]
    fn opposite_of_triangular_transposes() {
        let t = builtin_example::<Q>("a2_path").unwrap();
        let op = t.opposite();
        // e1 ·op a = a · e1 = 0
        assert!(op.mul_basis(1, 2).is_empty());
        assert_eq!(op.mul_basis(2, 1), &vec![(2, q(1))]);
        assert_eq!(op.opposite(), t);
        assert!(op.validate().is_empty());
    }

    #[test]
    fn koszul_sign_in_tensor() {
        let x = builtin_example::<Q>("dual_numbers_deg1").unwrap();
        let xx = x.tensor(&x);
        assert!(xx.validate().is_empty());
        // basis index i*2+j; x⊗1 = 2, 1⊗x = 1, x⊗x = 3
        assert_eq!(xx.mul_basis(2, 1), &vec![(3, q(1))]);
        assert_eq!(xx.mul_basis(1, 2), &vec![(3, q(-1))]);
    }

    #[test]
    fn cohomology_of_builtins() {
        let d = builtin_example::<Q>("dual_numbers").unwrap();
        assert_eq!(d.cohomology().dim(0), 2);
        assert!(builtin_example::<Q>("acyclic").unwrap().cohomology().is_zero());
        let x = builtin_example::<Q>("dual_numbers_deg1").unwrap().cohomology();
        assert_eq!((x.dim(0), x.dim(1)), (1, 1));
    }
}
