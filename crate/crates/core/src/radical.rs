//! Jacobson radical, the DG ideals J₋ ⊆ J ⊆ J₊, quotients and separability.

use crate::complex::{CohomologyTable, Complex};
use crate::dga::{DgaMorphism, FdDga};
use crate::error::{Error, Result};
use crate::linalg::{solve, sparse, Matrix, SparseVec, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A graded two-sided ideal of an [`FdDga`], as a subspace spanned by
/// homogeneous vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgIdeal<S> {
    pub space: Subspace<S>,
}

impl<S: Scalar> DgIdeal<S> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &[S]) -> bool {
        self.space.contains_dense(x)
    }

    pub fn basis(&self) -> Vec<Vec<S>> {
        self.space.dense_rows()
    }
}

/// The span of all products `u·v`.
pub fn product_space<S: Scalar>(a: &FdDga<S>, u: &Subspace<S>, v: &Subspace<S>) -> Subspace<S> {
    let (ur, vr) = (u.dense_rows(), v.dense_rows());
    let mut prods = Vec::with_capacity(ur.len() * vr.len());
    for x in &ur {
        for y in &vr {
            prods.push(sparse::from_dense(&a.mul(x, y)));
        }
    }
    Subspace::span(a.dim(), prods)
}

pub fn power<S: Scalar>(a: &FdDga<S>, j: &Subspace<S>, k: usize) -> Subspace<S> {
    let mut p = Subspace::full(a.dim());
    for _ in 0..k {
        p = product_space(a, &p, j);
    }
    p
}

/// Smallest `N` with `J^N = 0` (0 for the zero ring).
pub fn nilpotency_index<S: Scalar>(a: &FdDga<S>, j: &Subspace<S>) -> Result<usize> {
    let mut p = Subspace::full(a.dim());
    for k in 0..=a.dim() + 1 {
        if p.is_zero() {
            return Ok(k);
        }
        p = product_space(a, &p, j);
    }
    Err(Error::Internal("subspace is not nilpotent".into()))
}

pub fn is_two_sided_ideal<S: Scalar>(a: &FdDga<S>, u: &Subspace<S>) -> bool {
    let rows = u.dense_rows();
    (0..a.dim()).all(|b| {
        let bv = a.basis_vector(b);
        rows.iter().all(|r| u.contains_dense(&a.mul(r, &bv)) && u.contains_dense(&a.mul(&bv, r)))
    })
}

pub fn is_d_closed<S: Scalar>(a: &FdDga<S>, u: &Subspace<S>) -> bool {
    u.dense_rows().iter().all(|r| u.contains_dense(&a.d(r)))
}

pub fn is_graded<S: Scalar>(a: &FdDga<S>, u: &Subspace<S>) -> bool {
    u.dense_rows().iter().all(|r| a.components(r).values().all(|c| u.contains_dense(c)))
}

fn homogenize<S: Scalar>(a: &FdDga<S>, u: &Subspace<S>) -> Subspace<S> {
    Subspace::span(
        a.dim(),
        u.dense_rows().iter().flat_map(|r| a.components(r).into_values().map(|c| sparse::from_dense(&c))).collect::<Vec<_>>(),
    )
}

/// Jacobson radical of the underlying ungraded algebra, computed as the
/// kernel of the trace form `(x, y) ↦ tr(L_{xy})`.
///
/// Requires characteristic 0 or `p > dim A`.
pub fn underlying_radical<S: Scalar>(a: &FdDga<S>) -> Result<Subspace<S>> {
    let n = a.dim();
    if let FieldSpec::Prime(p) = S::field() {
        if (p as usize) <= n {
            return Err(Error::FieldTooSmall { p, dim: n });
        }
    }
    if n == 0 {
        return Ok(Subspace::zero(0));
    }
    let traces: Vec<S> = (0..n)
        .map(|k| {
            let mut t = S::zero();
            for i in 0..n {
                t = t + sparse::get(a.mul_basis(k, i), i);
            }
            t
        })
        .collect();
    // G_ij = tr(L_{b_i b_j}); J = { x : Σ_i x_i G_ij = 0 for all j }
    let constraints: Vec<SparseVec<S>> = (0..n)
        .map(|j| {
            let row: Vec<S> = (0..n)
                .map(|i| {
                    let mut g = S::zero();
                    for (k, c) in a.mul_basis(i, j) {
                        g = g + c.clone() * traces[*k].clone();
                    }
                    g
                })
                .collect();
            sparse::from_dense(&row)
        })
        .collect();
    let j = Subspace::span(n, Subspace::span(n, constraints).null_space());
    if !is_graded(a, &j) {
        return Err(Error::NonGradedRadical(format!("trace-form kernel of dimension {} has non-homogeneous elements", j.dim())));
    }
    let j = homogenize(a, &j);
    if !is_two_sided_ideal(a, &j) {
        return Err(Error::Internal("trace-form kernel is not a two-sided ideal".into()));
    }
    nilpotency_index(a, &j)?;
    Ok(j)
}

/// The internal and external DG ideals `J₋ = {r ∈ J : dr ∈ J}` and `J₊ = J + dJ`.
pub fn dg_ideals<S: Scalar>(a: &FdDga<S>) -> Result<(DgIdeal<S>, DgIdeal<S>)> {
    let j = underlying_radical(a)?;
    let (jm, jp) = dg_ideals_from(a, &j)?;
    Ok((jm, jp))
}

/// `(I)₋` and `(I)₊` for a graded two-sided ideal `I`.
pub fn dg_ideals_from<S: Scalar>(a: &FdDga<S>, j: &Subspace<S>) -> Result<(DgIdeal<S>, DgIdeal<S>)> {
    let n = a.dim();
    let dj = Subspace::span(n, j.dense_rows().iter().map(|r| sparse::from_dense(&a.d(r))).collect::<Vec<_>>());
    let plus = j.sum(&dj)?;
    let pre = Subspace::preimage(n, &(0..n).map(|i| a.diff_basis(i).clone()).collect::<Vec<_>>(), j)?;
    let minus = homogenize(a, &pre.intersect(j)?);
    for (name, u) in [("J-", &minus), ("J+", &plus)] {
        if !is_two_sided_ideal(a, u) || !is_d_closed(a, u) {
            return Err(Error::Internal(format!("{name} is not a d-closed two-sided ideal")));
        }
    }
    if !minus.is_subspace_of(j) || !j.is_subspace_of(&plus) {
        return Err(Error::Internal("J- ⊆ J ⊆ J+ fails".into()));
    }
    Ok((DgIdeal { space: minus }, DgIdeal { space: plus }))
}

/// Cohomology of a d-closed graded subspace as a subcomplex of `A`.
pub fn subspace_cohomology<S: Scalar>(a: &FdDga<S>, u: &Subspace<S>) -> Result<CohomologyTable> {
    let rows = u.dense_rows();
    let mut degrees = Vec::with_capacity(rows.len());
    let mut diff = Vec::with_capacity(rows.len());
    for r in &rows {
        degrees.push(a.homogeneous_degree(r).ok_or_else(|| Error::NonGradedRadical("basis row is not homogeneous".into()))?);
        let c = u.coords_dense(&a.d(r)).ok_or_else(|| Error::NotAnIdeal("subspace is not closed under d".into()))?;
        diff.push(sparse::from_dense(&c));
    }
    let complex = Complex::new(degrees, diff);
    complex.check()?;
    Ok(complex.cohomology())
}

/// `A/I` with its projection. The quotient basis is the set of non-pivot
/// coordinates of `I`, with the unit column eliminated last so that `1`
/// stays a basis element whenever `I ≠ A`.
#[derive(Clone, Debug)]
pub struct Quotient<S> {
    pub algebra: FdDga<S>,
    pub projection: DgaMorphism<S>,
    /// Original basis indices of the quotient basis.
    pub representatives: Vec<usize>,
    order: Vec<usize>,
    ideal: Subspace<S>,
}

impl<S: Scalar> Quotient<S> {
    /// Coordinates of the class of `x` in the quotient basis.
    pub fn reduce(&self, x: &[S]) -> Vec<S> {
        let v: SparseVec<S> = sparse::from_entries(
            self.order.iter().enumerate().filter(|(_, o)| !x[**o].is_zero()).map(|(p, o)| (p, x[*o].clone())).collect(),
        );
        let r = self.ideal.reduce(&v);
        let mut out = vec![S::zero(); self.representatives.len()];
        for (p, c) in r {
            let orig = self.order[p];
            let k = self.representatives.binary_search(&orig).expect("reduced vectors live on free columns");
            out[k] = c;
        }
        out
    }
}

pub fn quotient_dga<S: Scalar>(a: &FdDga<S>, ideal: &Subspace<S>) -> Result<Quotient<S>> {
    if !is_two_sided_ideal(a, ideal) || !is_d_closed(a, ideal) {
        return Err(Error::NotAnIdeal("quotient needs a d-closed two-sided ideal".into()));
    }
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).filter(|i| Some(*i) != a.unit()).collect();
    order.extend(a.unit());
    let mut pos = vec![0; n];
    for (p, o) in order.iter().enumerate() {
        pos[*o] = p;
    }
    let permuted = Subspace::span(n, ideal.rows().iter().map(|r| sparse::remap(r, |i| Some(pos[i]))).collect::<Vec<_>>());
    let mut reps: Vec<usize> = permuted.free_columns().into_iter().map(|p| order[p]).collect();
    reps.sort_unstable();
    let mut q = Quotient {
        algebra: FdDga::zero_ring(),
        projection: DgaMorphism { source: a.clone(), target: FdDga::zero_ring(), map: Matrix::zeros(0, n) },
        representatives: reps.clone(),
        order,
        ideal: permuted,
    };
    let m = reps.len();
    let algebra = if m == 0 {
        FdDga::zero_ring()
    } else {
        let mut mul = Vec::with_capacity(m * m);
        for i in &reps {
            for j in &reps {
                mul.push(sparse::from_dense(&q.reduce(&a.mul(&a.basis_vector(*i), &a.basis_vector(*j)))));
            }
        }
        let diff = reps.iter().map(|i| sparse::from_dense(&q.reduce(&a.d(&a.basis_vector(*i))))).collect();
        let unit = a.unit().and_then(|u| reps.iter().position(|r| *r == u));
        FdDga::from_raw(
            reps.iter().map(|i| a.name(*i).to_string()).collect(),
            reps.iter().map(|i| a.degree(*i)).collect(),
            unit,
            mul,
            diff,
        )?
    };
    let cols: Vec<SparseVec<S>> = (0..n).map(|i| sparse::from_dense(&q.reduce(&a.basis_vector(i)))).collect();
    q.projection = DgaMorphism { source: a.clone(), target: algebra.clone(), map: Matrix::from_sparse_columns(m, &cols) };
    q.algebra = algebra;
    Ok(q)
}

/// An element `p = Σ c_ij b_i ⊗ b_j` of `A ⊗ A`, coefficient `(i, j)` at
/// index `i * dim A + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityIdempotent<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> SeparabilityIdempotent<S> {
    pub fn terms(&self, n: usize) -> Vec<(usize, usize, S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / n, k % n, c.clone()))
            .collect()
    }

    /// `μ(p) = 1`, `(x ⊗ 1)p = p(1 ⊗ x)` for every basis `x`, and `p` of total degree 0.
    pub fn verify(&self, a: &FdDga<S>) -> bool {
        let n = a.dim();
        if self.coeffs.len() != n * n {
            return false;
        }
        let terms = self.terms(n);
        if terms.iter().any(|(i, j, _)| a.degree(*i) + a.degree(*j) != 0) {
            return false;
        }
        let mut mu = a.zero();
        for (i, j, c) in &terms {
            sparse::add_into(&mut mu, c, a.mul_basis(*i, *j));
        }
        if mu != a.one() {
            return false;
        }
        (0..n).all(|x| centrality_defect(a, &terms, x).iter().all(|c| c.is_zero()))
    }
}

/// Coefficients of `(x ⊗ 1)p − p(1 ⊗ x)` over the pair basis.
fn centrality_defect<S: Scalar>(a: &FdDga<S>, terms: &[(usize, usize, S)], x: usize) -> Vec<S> {
    let n = a.dim();
    let mut out = vec![S::zero(); n * n];
    for (i, j, c) in terms {
        for (k, y) in a.mul_basis(x, *i) {
            out[k * n + j] = out[k * n + j].clone() + c.clone() * y.clone();
        }
        for (k, y) in a.mul_basis(*j, x) {
            out[i * n + k] = out[i * n + k].clone() - c.clone() * y.clone();
        }
    }
    out
}

/// A separability idempotent of total degree 0, if one exists.
pub fn is_separable<S: Scalar>(a: &FdDga<S>) -> Option<SeparabilityIdempotent<S>> {
    let n = a.dim();
    if n == 0 {
        return None;
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| a.degree(*i) + a.degree(*j) == 0).collect();
    let rows = n + n * n * n;
    let mut m = Matrix::<S>::zeros(rows, pairs.len());
    let mut rhs = Matrix::zeros(rows, 1);
    for (col, (i, j)) in pairs.iter().enumerate() {
        for (k, c) in a.mul_basis(*i, *j) {
            m.set(*k, col, m.get(*k, col).clone() + c.clone());
        }
        for x in 0..n {
            let defect = centrality_defect(a, &[(*i, *j, S::one())], x);
            for (k, c) in defect.into_iter().enumerate() {
                if !c.is_zero() {
                    let r = n + x * n * n + k;
                    m.set(r, col, m.get(r, col).clone() + c);
                }
            }
        }
    }
    for (k, c) in a.one().into_iter().enumerate() {
        rhs.set(k, 0, c);
    }
    let sol = solve(&m, &rhs).ok()??;
    let mut coeffs = vec![S::zero(); n * n];
    for (col, (i, j)) in pairs.iter().enumerate() {
        coeffs[i * n + j] = sol.get(col, 0).clone();
    }
    let p = SeparabilityIdempotent { coeffs };
    debug_assert!(p.verify(a));
    Some(p)
}

/// The separability idempotent of `A ⊗ B` assembled from those of `A` and `B`:
/// `p = Σ (−1)^{|b_j||a_i'|} (a_i ⊗ b_j) ⊗ (a_i' ⊗ b_j')`.
pub fn tensor_idempotent<S: Scalar>(
    a: &FdDga<S>,
    pa: &SeparabilityIdempotent<S>,
    b: &FdDga<S>,
    pb: &SeparabilityIdempotent<S>,
) -> Result<(FdDga<S>, SeparabilityIdempotent<S>)> {
    let (n, m) = (a.dim(), b.dim());
    let ab = a.tensor(b);
    let nm = n * m;
    let mut coeffs = vec![S::zero(); nm * nm];
    // only the homogeneous summands with |a_i| = −|a_i'| survive the projection
    let ta: Vec<_> = pa.terms(n).into_iter().filter(|(i, j, _)| a.degree(*i) + a.degree(*j) == 0).collect();
    let tb: Vec<_> = pb.terms(m).into_iter().filter(|(i, j, _)| b.degree(*i) + b.degree(*j) == 0).collect();
    for (ai, ai2, c) in &ta {
        for (bj, bj2, e) in &tb {
            let s = S::sign((b.degree(*bj) as i64) * (a.degree(*ai2) as i64));
            let left = ai * m + bj;
            let right = ai2 * m + bj2;
            coeffs[left * nm + right] = coeffs[left * nm + right].clone() + s * c.clone() * e.clone();
        }
    }
    let p = SeparabilityIdempotent { coeffs };
    if !p.verify(&ab) {
        return Err(Error::Internal("the signed tensor of separability idempotents is not a separability idempotent".into()));
    }
    Ok((ab, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{builtin_example, BUILTIN_NAMES};
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn radicals_of_builtins() {
        let dims = [0, 1, 1, 1, 1, 2];
        for (name, d) in BUILTIN_NAMES.iter().zip(dims) {
            let a = builtin_example::<Q>(name).unwrap();
            assert_eq!(underlying_radical(&a).unwrap().dim(), d, "{name}");
        }
        let t = builtin_example::<Q>("a2_path").unwrap();
        let j = underlying_radical(&t).unwrap();
        assert!(j.contains_dense(&t.basis_vector(2)));
    }

    #[test]
    fn small_prime_rejected() {
        let l3 = builtin_example::<Fp<3>>("local_square_zero_2").unwrap();
        assert!(matches!(underlying_radical(&l3), Err(Error::FieldTooSmall { p: 3, dim: 3 })));
        let l3 = builtin_example::<Fp<5>>("local_square_zero_2").unwrap();
        assert_eq!(underlying_radical(&l3).unwrap().dim(), 2);
    }

    #[test]
    fn acyclic_ideals() {
        let a = builtin_example::<Q>("acyclic").unwrap();
        let (jm, jp) = dg_ideals(&a).unwrap();
        assert_eq!((jm.dim(), jp.dim()), (0, 2));
        let q = quotient_dga(&a, &jp.space).unwrap();
        assert!(q.algebra.is_zero_ring());
    }

    #[test]
    fn quotients_are_local_residue_fields() {
        for name in ["dual_numbers", "local_square_zero_2", "dual_numbers_deg1"] {
            let a = builtin_example::<Q>(name).unwrap();
            let (jm, _) = dg_ideals(&a).unwrap();
            let q = quotient_dga(&a, &jm.space).unwrap();
            assert_eq!(q.algebra.dim(), 1, "{name}");
            assert!(q.projection.validate().is_empty());
        }
    }

    #[test]
    fn dual_numbers_not_separable() {
        assert!(is_separable(&builtin_example::<Q>("dual_numbers").unwrap()).is_none());
        let k = builtin_example::<Q>("point").unwrap();
        assert_eq!(is_separable(&k).unwrap().coeffs, vec![Q::from_i64(1)]);
    }

    /// M₂ on the basis `1, e11, e12, e21` with `|e12| = g`, `|e21| = −g`.
    pub(crate) fn matrix_algebra(g: i32) -> FdDga<Q> {
        let one = |i: usize| vec![(i, Q::from_i64(1))];
        let basis = vec![("1".into(), 0), ("e11".into(), 0), ("e12".into(), g), ("e21".into(), -g)];
        let products = vec![
            (1, 1, one(1)),
            (1, 2, one(2)),
            (2, 3, one(1)),
            (3, 2, vec![(0, Q::from_i64(1)), (1, Q::from_i64(-1))]),
            (3, 1, one(3)),
        ];
        FdDga::from_tables(basis, 0, products, vec![]).unwrap()
    }

    fn product_field() -> FdDga<Q> {
        let basis = vec![("1".into(), 0), ("e".into(), 0)];
        FdDga::from_tables(basis, 0, vec![(1, 1, vec![(1, Q::from_i64(1))])], vec![]).unwrap()
    }

    #[test]
    fn matrix_algebras_are_separable() {
        for g in [0, 1] {
            let m = matrix_algebra(g);
            assert!(m.validate().is_empty());
            assert_eq!(underlying_radical(&m).unwrap().dim(), 0);
            assert!(is_separable(&m).unwrap().verify(&m));
        }
        let k2 = product_field();
        let p = is_separable(&k2).unwrap();
        // e⊗e + (1−e)⊗(1−e), the unique separability idempotent of k × k
        let c = |x| Q::from_i64(x);
        assert_eq!(p.coeffs, vec![c(1), c(-1), c(-1), c(2)]);
    }

    #[test]
    fn signed_tensor_of_idempotents() {
        let algebras = [matrix_algebra(0), matrix_algebra(1), product_field()];
        for a in &algebras {
            for b in &algebras {
                let (pa, pb) = (is_separable(a).unwrap(), is_separable(b).unwrap());
                let (ab, p) = tensor_idempotent(a, &pa, b, &pb).unwrap();
                assert!(p.verify(&ab));
                assert!(ab.validate().is_empty());
            }
        }
    }
}
