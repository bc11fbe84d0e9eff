//! Skew-symmetric algebras as points of `V = Lambda^2 (R^n)* (x) R^n`.
//!
//! A [`LieAlgebra`] stores the bracket sparsely as entries `(i, j, k, c)` with
//! `i < j` (0-based internally, 1-based in the JSON format). The module also
//! provides the `GL_n` change-of-basis action on brackets, the `gl_n`
//! representation `pi`, the inner product on `V`, and structural
//! classification: lower central and derived series, nilpotency, solvability,
//! unimodularity and the derivation algebra.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::{Error, Result};

/// Default tolerance below which a Jacobi defect is accepted as zero.
pub const JACOBI_TOL: f64 = 1e-9;

/// Absolute threshold below which a structure constant counts as zero.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// One sparse structure constant `c_ijk` with `i < j`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

/// A skew-symmetric algebra of dimension `n`, i.e. an element of `V`.
///
/// Instances accepted as genuine Lie algebras additionally satisfy the Jacobi
/// identity up to [`JACOBI_TOL`]; the constructor does not enforce that, so
/// that defective brackets can still be inspected via [`LieAlgebra::jacobi_defect`].
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    entries: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    k: usize,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    brackets: Vec<BracketJson>,
}

impl LieAlgebra {
    /// Builds an algebra from 0-based sparse entries. Indices must satisfy
    /// `i < j < dim`, `k < dim`; duplicate `(i, j, k)` keys are rejected.
    pub fn new(dim: usize, entries: Vec<(usize, usize, usize, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut out: Vec<BracketEntry> = Vec::with_capacity(entries.len());
        for (i, j, k, c) in entries {
            if i >= j {
                return Err(Error::InvalidInput(format!(
                    "bracket entry requires i < j, got ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket index out of range in ({}, {}, {})",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if !c.is_finite() {
                return Err(Error::InvalidInput("non-finite structure constant".into()));
            }
            if out.iter().any(|e| (e.i, e.j, e.k) == (i, j, k)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate bracket entry ({}, {}, {})",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if c != 0.0 {
                out.push(BracketEntry { i, j, k, c });
            }
        }
        out.sort_by_key(|e| (e.i, e.j, e.k));
        Ok(Self { dim, entries: out })
    }

    /// Convenience constructor with 1-based indices, matching the JSON format.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        for &(i, j, k, _) in entries {
            if i == 0 || j == 0 || k == 0 {
                return Err(Error::InvalidInput("1-based index must be positive".into()));
            }
        }
        Self::new(
            dim,
            entries
                .iter()
                .map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, c))
                .collect(),
        )
    }

    /// The abelian algebra of dimension `n`.
    pub fn abelian(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("positive dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sparse entries, 0-based, sorted by `(i, j, k)`.
    pub fn entries(&self) -> &[BracketEntry] {
        &self.entries
    }

    /// Structure constant `c_ijk` for arbitrary `i, j` (antisymmetric in `i, j`).
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        if i == j {
            return 0.0;
        }
        self.entries
            .iter()
            .find(|e| (e.i, e.j, e.k) == (a, b, k))
            .map_or(0.0, |e| sign * e.c)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        if i == j {
            return out;
        }
        for e in &self.entries {
            if (e.i, e.j) == (a, b) {
                out[e.k] += sign * e.c;
            }
        }
        out
    }

    /// `[x, y]` for arbitrary coordinate vectors.
    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for e in &self.entries {
            out[e.k] += e.c * (x[e.i] * y[e.j] - x[e.j] * y[e.i]);
        }
        out
    }

    /// Matrix of `ad e_i`.
    pub fn ad_basis(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |k, j| self.c(i, j, k))
    }

    /// Matrix of `ad x`.
    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for e in &self.entries {
            out[(e.k, e.j)] += e.c * x[e.i];
            out[(e.k, e.i)] -= e.c * x[e.j];
        }
        out
    }

    /// Dense materialization of the bracket as an element of `V`.
    pub fn to_tensor(&self) -> VTensor {
        let mut t = VTensor::zeros(self.dim);
        for e in &self.entries {
            t.set(e.i, e.j, e.k, e.c);
        }
        t
    }

    /// Maximum over triples `i < j < k` of the norm of the Jacobiator
    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        let basis: Vec<DVector<f64>> = (0..n)
            .map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))
            .collect();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let jac = self.bracket(&basis[i], &self.bracket_basis(j, k))
                        + self.bracket(&basis[j], &self.bracket_basis(k, i))
                        + self.bracket(&basis[k], &self.bracket_basis(i, j));
                    worst = worst.max(jac.norm());
                }
            }
        }
        worst
    }

    /// The change-of-basis action `A . mu (X, Y) = A mu(A^-1 X, A^-1 Y)`.
    pub fn change_basis(&self, a: &BasisChange) -> Result<LieAlgebra> {
        let n = self.dim;
        if a.matrix().nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.matrix().nrows(),
            });
        }
        let inv = a.inverse();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = a.matrix() * self.bracket(&inv.column(i).into_owned(), &inv.column(j).into_owned());
                for k in 0..n {
                    if w[k] != 0.0 {
                        entries.push((i, j, k, w[k]));
                    }
                }
            }
        }
        LieAlgebra::new(n, entries)
    }

    /// Dimensions of the lower central series `C^0 = n, C^i = [n, C^{i-1}]`,
    /// until the series stabilizes (0 for nilpotent algebras).
    pub fn lower_central_series(&self) -> Vec<usize> {
        self.series_dims(|span| self.bracket_span(&self.full_span(), span))
    }

    /// Type `(n_1, ..., n_r)`: dimension jumps of the lower central series.
    /// Covers the whole dimension exactly when the algebra is nilpotent.
    pub fn type_of(&self) -> Vec<usize> {
        let dims = self.lower_central_series();
        dims.windows(2).map(|w| w[0] - w[1]).filter(|&d| d > 0).collect()
    }

    /// Whether the lower central series reaches 0.
    pub fn is_nilpotent(&self) -> bool {
        *self.lower_central_series().last().unwrap() == 0
    }

    /// Dimensions of the derived series `D^0 = n, D^i = [D^{i-1}, D^{i-1}]`.
    pub fn derived_series(&self) -> Vec<usize> {
        self.series_dims(|span| self.bracket_span(span, span))
    }

    /// Whether the derived series reaches 0.
    pub fn is_solvable(&self) -> bool {
        *self.derived_series().last().unwrap() == 0
    }

    /// Whether `tr ad X = 0` for every `X` (up to tolerance).
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().abs() <= JACOBI_TOL)
    }

    /// Basis of the derivation algebra: all `D` with
    /// `D[X, Y] = [DX, Y] + [X, DY]`, as the kernel of the induced linear
    /// system on `gl_n`.
    pub fn derivation_algebra(&self) -> Vec<DMatrix<f64>> {
        let n = self.dim;
        let npairs = n * (n - 1) / 2;
        let mut rows = DMatrix::zeros(npairs * n, n * n);
        let col = |r: usize, s: usize| r * n + s;
        let mut row = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    // (D[e_i,e_j] - [De_i,e_j] - [e_i,De_j])_k = 0
                    for m in 0..n {
                        rows[(row, col(k, m))] += self.c(i, j, m);
                        rows[(row, col(m, i))] -= self.c(m, j, k);
                        rows[(row, col(m, j))] -= self.c(i, m, k);
                    }
                    row += 1;
                }
            }
        }
        linalg::null_space(&rows, linalg::RANK_TOL)
            .into_iter()
            .map(|v| DMatrix::from_fn(n, n, |r, s| v[col(r, s)]))
            .collect()
    }

    /// Serializes to the JSON algebra format (1-based indices).
    pub fn to_json(&self) -> String {
        let doc = AlgebraJson {
            dim: self.dim,
            brackets: self
                .entries
                .iter()
                .map(|e| BracketJson {
                    i: e.i + 1,
                    j: e.j + 1,
                    k: e.k + 1,
                    c: e.c,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// Parses the JSON algebra format; `i < j` is required and duplicate
    /// `(i, j, k)` keys are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let entries: Vec<(usize, usize, usize, f64)> = doc
            .brackets
            .iter()
            .map(|b| (b.i, b.j, b.k, b.c))
            .collect();
        Self::from_brackets(doc.dim, &entries)
    }

    fn full_span(&self) -> DMatrix<f64> {
        DMatrix::identity(self.dim, self.dim)
    }

    /// Span (as column basis) of all `[x, y]` with `x` from the columns of
    /// `left` and `y` from the columns of `right`.
    fn bracket_span(&self, left: &DMatrix<f64>, right: &DMatrix<f64>) -> DMatrix<f64> {
        let n = self.dim;
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for a in 0..left.ncols() {
            for b in 0..right.ncols() {
                let w = self.bracket(&left.column(a).into_owned(), &right.column(b).into_owned());
                if w.norm() > 0.0 {
                    cols.push(w);
                }
            }
        }
        if cols.is_empty() {
            return DMatrix::zeros(n, 0);
        }
        let m = DMatrix::from_columns(&cols);
        // Rank decisions must be made against the algebra's own scale: a span
        // that is pure numerical noise still has a largest singular value, so
        // a cutoff relative to that value would never report rank 0.
        let scale = self
            .entries
            .iter()
            .map(|e| e.c * e.c)
            .sum::<f64>()
            .sqrt()
            .max(f64::MIN_POSITIVE);
        orth_basis(&m, linalg::RANK_TOL * scale)
    }

    fn series_dims(&self, step: impl Fn(&DMatrix<f64>) -> DMatrix<f64>) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut span = self.full_span();
        loop {
            let next = step(&span);
            let d = next.ncols();
            // Require strict decrease: numerical rank can inflate a nested
            // subspace, and accepting `d >= last` would loop forever.
            if d >= *dims.last().unwrap() {
                break; // stabilized without reaching zero
            }
            dims.push(d);
            span = next;
            if d == 0 {
                break;
            }
        }
        dims
    }
}

/// Orthonormal column basis of the column space of `m`, rank decided at the
/// crate-wide relative tolerance.
fn orth_basis(m: &DMatrix<f64>, cutoff: f64) -> DMatrix<f64> {
    // Column-pivoted QR: the pivoting keeps the rank decision and the
    // returned orthonormal columns accurate even for nearly rank-deficient
    // inputs (near-parallel columns defeat the plain SVD here).
    let qr = m.clone().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let mut cols = Vec::new();
    for idx in 0..r.nrows().min(r.ncols()) {
        if r[(idx, idx)].abs() > cutoff {
            cols.push(q.column(idx).into_owned());
        }
    }
    if cols.is_empty() {
        DMatrix::zeros(m.nrows(), 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// An invertible change of basis `A` acting on brackets via `A . mu`.
#[derive(Debug, Clone)]
pub struct BasisChange {
    a: DMatrix<f64>,
    inv: DMatrix<f64>,
}

/// Determinant magnitudes below this floor are rejected as singular.
pub const SINGULARITY_FLOOR: f64 = 1e-12;

impl BasisChange {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::InvalidInput("basis change must be square".into()));
        }
        let det = a.determinant();
        if det.abs() <= SINGULARITY_FLOOR {
            return Err(Error::Singular(det.abs()));
        }
        let inv = a
            .clone()
            .try_inverse()
            .ok_or(Error::Singular(det.abs()))?;
        Ok(Self { a, inv })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(DMatrix::identity(n, n)).expect("identity is invertible")
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_row_slice(d)))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inv
    }
}

/// An element of `gl_n` acting on `V` through the representation `pi`.
#[derive(Debug, Clone)]
pub struct GlElement {
    mat: DMatrix<f64>,
    symmetric: bool,
    diagonal: bool,
}

impl GlElement {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::InvalidInput("gl element must be square".into()));
        }
        let symmetric = (&mat - mat.transpose()).norm() <= 1e-12 * (1.0 + mat.norm());
        let diagonal = linalg::max_offdiag(&mat) == 0.0;
        Ok(Self {
            mat,
            symmetric,
            diagonal,
        })
    }

    /// `E_rs`: the matrix whose only nonzero coefficient is 1 at entry `(r, s)`.
    pub fn basis_matrix(n: usize, r: usize, s: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(r, s)] = 1.0;
        Self::new(m).expect("square by construction")
    }

    pub fn diagonal(d: &[f64]) -> Self {
        Self::new(DMatrix::from_diagonal(&DVector::from_row_slice(d))).expect("square")
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }
}

/// Dense element of `V`: a skew-symmetric bilinear map stored as the full
/// rank-3 array `t[i][j][k]` with `t[j][i][k] = -t[i][j][k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VTensor {
    n: usize,
    data: Vec<f64>,
}

impl VTensor {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.idx(i, j, k)]
    }

    /// Sets the `(i, j, k)` coefficient and its antisymmetric mirror.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let a = self.idx(i, j, k);
        self.data[a] = v;
        let b = self.idx(j, i, k);
        self.data[b] = -v;
    }

    /// Frobenius-type norm under the all-ordered-pairs inner product, so a
    /// single weight vector `v_ijk` has squared norm 2.
    pub fn norm_sq(&self) -> f64 {
        inner_v(self, self).expect("same dimension")
    }

    pub fn scale(&self, s: f64) -> VTensor {
        VTensor {
            n: self.n,
            data: self.data.iter().map(|&x| s * x).collect(),
        }
    }

    pub fn sub(&self, other: &VTensor) -> Result<VTensor> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(VTensor {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// The basis weight vector `v_ijk` (requires `i < j`).
    pub fn weight_vector(n: usize, i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zeros(n);
        t.set(i, j, k, 1.0);
        t
    }
}

/// The representation `pi(alpha) mu = alpha mu(.,.) - mu(alpha ., .) - mu(., alpha .)`.
///
/// For diagonal `alpha = Diag(a_1, ..., a_n)` the `(i, j, k)` coefficient of
/// the result is `(a_k - a_i - a_j) c_ijk`.
pub fn pi_action(alpha: &GlElement, mu: &VTensor) -> Result<VTensor> {
    let n = mu.dim();
    let a = alpha.matrix();
    if a.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.nrows(),
        });
    }
    let mut out = VTensor::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let mut v = 0.0;
                for l in 0..n {
                    v += a[(k, l)] * mu.get(i, j, l);
                    v -= a[(l, i)] * mu.get(l, j, k);
                    v -= a[(l, j)] * mu.get(i, l, k);
                }
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

/// Inner product on `V`, summed over all ordered pairs `(i, j)`, so every
/// stored `i < j` coefficient contributes twice.
pub fn inner_v(mu: &VTensor, lambda: &VTensor) -> Result<f64> {
    if mu.dim() != lambda.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: lambda.dim(),
        });
    }
    Ok(mu.data.iter().zip(&lambda.data).map(|(&a, &b)| a * b).sum())
}

/// Draws a random nilpotent algebra on a strictly triangular basis
/// (`[e_i, e_j]` lands in `span(e_k : k > j)` for `i < j`).
///
/// Strict triangularity does not by itself guarantee the Jacobi identity, so
/// the sampler alternates between a rejection loop over small-integer
/// triangular coefficients and a two-step construction (generators bracket
/// into a central complement) that is Jacobi-exact by design. The result is
/// always nilpotent with defect below `JACOBI_TOL`, and for `dim >= 4` the mix
/// produces both nice and non-nice bases at a healthy rate.
pub fn random_nilpotent<R: Rng>(dim: usize, rng: &mut R) -> LieAlgebra {
    assert!(dim >= 3, "nilpotent sampling needs dim >= 3");
    let coeffs = [-2.0, -1.0, 1.0, 2.0];
    if rng.gen_bool(0.5) {
        // Rejection loop over fully triangular brackets.
        for _ in 0..64 {
            let mut entries = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    for k in (j + 1)..dim {
                        if rng.gen_bool(0.4) {
                            entries.push((i + 1, j + 1, k + 1, coeffs[rng.gen_range(0..4)]));
                        }
                    }
                }
            }
            if entries.is_empty() {
                continue;
            }
            if let Ok(l) = LieAlgebra::from_brackets(dim, &entries) {
                if l.jacobi_defect() <= JACOBI_TOL && !l.entries().is_empty() {
                    return l;
                }
            }
        }
    }
    // Two-step fallback: generators e_1..e_m bracket only into e_{m+1}..e_n,
    // so every iterated bracket vanishes and Jacobi holds identically.
    loop {
        let m = rng.gen_range(2..dim);
        let mut entries = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in m..dim {
                    if rng.gen_bool(0.5) {
                        entries.push((i + 1, j + 1, k + 1, coeffs[rng.gen_range(0..4)]));
                    }
                }
            }
        }
        if !entries.is_empty() {
            let l = LieAlgebra::from_brackets(dim, &entries).expect("triangular indices");
            debug_assert!(l.jacobi_defect() == 0.0);
            return l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[(1, 2, 3, 1.0)]).unwrap()
    }

    fn l6_11() -> LieAlgebra {
        LieAlgebra::from_brackets(
            6,
            &[
                (1, 2, 4, 1.0),
                (1, 4, 5, 1.0),
                (1, 5, 6, 1.0),
                (2, 3, 6, 1.0),
                (2, 4, 6, 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_bad_entries() {
        assert!(LieAlgebra::from_brackets(3, &[(2, 1, 3, 1.0)]).is_err());
        assert!(LieAlgebra::from_brackets(3, &[(1, 2, 4, 1.0)]).is_err());
        assert!(LieAlgebra::from_brackets(3, &[(1, 2, 3, 1.0), (1, 2, 3, 2.0)]).is_err());
    }

    #[test]
    fn jacobi_defect_examples() {
        assert_eq!(heisenberg().jacobi_defect(), 0.0);
        assert_eq!(l6_11().jacobi_defect(), 0.0);
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1: the Jacobiator on (1,2,3) has norm 1.
        let bad =
            LieAlgebra::from_brackets(3, &[(1, 2, 3, 1.0), (2, 3, 1, 1.0), (1, 3, 1, 1.0)])
                .unwrap();
        assert_relative_eq!(bad.jacobi_defect(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn change_basis_identity_and_diagonal() {
        let h = heisenberg();
        let same = h.change_basis(&BasisChange::identity(3)).unwrap();
        assert_eq!(same.entries(), h.entries());

        // Diag(a1,a2,a3) sends c_123 to a3/(a1 a2).
        let a = BasisChange::diagonal(&[2.0, 4.0, 3.0]).unwrap();
        let t = h.change_basis(&a).unwrap();
        assert_eq!(t.entries().len(), 1);
        assert_relative_eq!(t.c(0, 1, 2), 3.0 / 8.0, epsilon = 1e-14);
    }

    #[test]
    fn change_basis_is_functorial() {
        let h = l6_11();
        let a = BasisChange::new(DMatrix::from_fn(6, 6, |r, c| {
            if r == c {
                1.0
            } else {
                0.05 * ((r * 7 + c * 3) % 5) as f64
            }
        }))
        .unwrap();
        let b = BasisChange::diagonal(&[1.0, 2.0, 0.5, 1.5, 3.0, 0.25]).unwrap();
        let lhs = h.change_basis(&a).unwrap().change_basis(&b).unwrap();
        let ba = BasisChange::new(b.matrix() * a.matrix()).unwrap();
        let rhs = h.change_basis(&ba).unwrap();
        let diff = lhs.to_tensor().sub(&rhs.to_tensor()).unwrap();
        assert!(diff.norm_sq().sqrt() < 1e-9);
    }

    #[test]
    fn l6_13_epsilon_rescaling_normalizes_b() {
        // b = 4 variant; rescaling the basis {X1, X2, e^2 X3, X4, e^2 X5,
        // e^2 X6} with e = 2 brings every constant back to 0 or +-1.
        let l = LieAlgebra::from_brackets(
            6,
            &[
                (1, 2, 4, 1.0),
                (2, 3, 5, 1.0),
                (3, 4, 6, 1.0),
                (1, 4, 5, 4.0),
                (1, 5, 6, -1.0),
            ],
        )
        .unwrap();
        let e = 2.0;
        let s = e * e;
        let a = BasisChange::diagonal(&[1.0, 1.0, 1.0 / s, 1.0, 1.0 / s, 1.0 / s]).unwrap();
        let t = l.change_basis(&a).unwrap();
        for entry in t.entries() {
            assert_relative_eq!(entry.c.abs(), 1.0, epsilon = 1e-12);
        }
        assert_eq!(t.entries().len(), 5);
    }

    #[test]
    fn pi_action_diagonal_weights() {
        let h = heisenberg();
        let mu = h.to_tensor();
        // alpha = I: weight a_k - a_i - a_j = -1 on every coefficient.
        let pi_i = pi_action(&GlElement::diagonal(&[1.0, 1.0, 1.0]), &mu).unwrap();
        assert_relative_eq!(pi_i.get(0, 1, 2), -1.0, epsilon = 1e-14);
        // alpha = Diag(1,0,0): weight 0 - 1 - 0 = -1.
        let pi_d = pi_action(&GlElement::diagonal(&[1.0, 0.0, 0.0]), &mu).unwrap();
        assert_relative_eq!(pi_d.get(0, 1, 2), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn pi_action_matches_finite_difference_of_group_action() {
        // pi(alpha) mu ~ (exp(s alpha) . mu - mu) / s for small s.
        let h = l6_11();
        let mu = h.to_tensor();
        let mut alpha = DMatrix::zeros(6, 6);
        alpha[(1, 0)] = 1.0; // E_21
        alpha[(3, 2)] = -0.5;
        alpha[(0, 0)] = 0.7;
        let s = 1e-5;
        let expm = (alpha.clone() * s).exp();
        let moved = h
            .change_basis(&BasisChange::new(expm).unwrap())
            .unwrap()
            .to_tensor();
        let fd = moved.sub(&mu).unwrap().scale(1.0 / s);
        let pi = pi_action(&GlElement::new(alpha).unwrap(), &mu).unwrap();
        let err = fd.sub(&pi).unwrap().norm_sq().sqrt();
        assert!(err < 1e-4 * (1.0 + pi.norm_sq().sqrt()), "err = {err}");
    }

    #[test]
    fn inner_product_conventions() {
        let mu = heisenberg().to_tensor();
        assert_relative_eq!(inner_v(&mu, &mu).unwrap(), 2.0);
        let zero = VTensor::zeros(3);
        assert_eq!(inner_v(&mu, &zero).unwrap(), 0.0);
        let v123 = VTensor::weight_vector(3, 0, 1, 2);
        let v132 = VTensor::weight_vector(3, 0, 2, 1);
        assert_eq!(inner_v(&v123, &v132).unwrap(), 0.0);
    }

    #[test]
    fn equivariance_of_pi_under_transpose() {
        // <pi(alpha) mu, lambda> = <mu, pi(alpha^t) lambda>
        let mu = l6_11().to_tensor();
        let lam = LieAlgebra::from_brackets(6, &[(1, 3, 5, 2.0), (2, 5, 6, -1.0)])
            .unwrap()
            .to_tensor();
        let mut m = DMatrix::zeros(6, 6);
        m[(0, 2)] = 1.3;
        m[(4, 1)] = -0.4;
        m[(2, 2)] = 0.9;
        let alpha = GlElement::new(m.clone()).unwrap();
        let alpha_t = GlElement::new(m.transpose()).unwrap();
        let lhs = inner_v(&pi_action(&alpha, &mu).unwrap(), &lam).unwrap();
        let rhs = inner_v(&mu, &pi_action(&alpha_t, &lam).unwrap()).unwrap();
        assert_relative_eq!(lhs, rhs, epsilon = 1e-9);
    }

    #[test]
    fn series_and_type() {
        assert_eq!(l6_11().type_of(), vec![3, 1, 1, 1]);
        assert_eq!(heisenberg().type_of(), vec![2, 1]);
        assert_eq!(LieAlgebra::abelian(4).type_of(), vec![4]);
        assert!(l6_11().is_nilpotent());
        assert!(!LieAlgebra::from_brackets(3, &[(1, 3, 2, 1.0), (1, 3, 3, 1.0)])
            .unwrap()
            .is_nilpotent());
    }

    #[test]
    fn type_is_invariant_under_change_of_basis() {
        let l = l6_11();
        let a = BasisChange::new(DMatrix::from_fn(6, 6, |r, c| {
            if r == c {
                1.0
            } else {
                0.1 * ((r * 5 + c) % 3) as f64 - 0.05
            }
        }))
        .unwrap();
        let t = l.change_basis(&a).unwrap();
        assert!(t.jacobi_defect() < 1e-9);
        assert_eq!(t.type_of(), l.type_of());
    }

    #[test]
    fn solvable_and_unimodular() {
        // s3: [X1,X3] = X2 + X3 is solvable but not unimodular.
        let s3 = LieAlgebra::from_brackets(3, &[(1, 3, 2, 1.0), (1, 3, 3, 1.0)]).unwrap();
        assert!(s3.is_solvable());
        assert!(!s3.is_unimodular());
        // sl2 is unimodular but not solvable.
        let sl2 =
            LieAlgebra::from_brackets(3, &[(1, 2, 2, 1.0), (1, 3, 3, -1.0), (2, 3, 1, 1.0)])
                .unwrap();
        assert!(!sl2.is_solvable());
        assert!(sl2.is_unimodular());
        // nilpotent implies unimodular.
        assert!(l6_11().is_unimodular());
    }

    #[test]
    fn derivation_algebra_dimensions() {
        assert_eq!(LieAlgebra::abelian(3).derivation_algebra().len(), 9);
        let ders = heisenberg().derivation_algebra();
        assert_eq!(ders.len(), 6);
        let sl2 =
            LieAlgebra::from_brackets(3, &[(1, 2, 2, 1.0), (1, 3, 3, -1.0), (2, 3, 1, 1.0)])
                .unwrap();
        assert_eq!(sl2.derivation_algebra().len(), 3);
    }

    #[test]
    fn derivations_satisfy_the_identity() {
        let l = l6_11();
        for d in l.derivation_algebra() {
            for i in 0..6 {
                for j in (i + 1)..6 {
                    let ei = DVector::from_fn(6, |r, _| if r == i { 1.0 } else { 0.0 });
                    let ej = DVector::from_fn(6, |r, _| if r == j { 1.0 } else { 0.0 });
                    let lhs = &d * l.bracket_basis(i, j);
                    let rhs = l.bracket(&(&d * ei.clone()), &ej) + l.bracket(&ei, &(&d * ej));
                    assert!((lhs - rhs).norm() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let l = LieAlgebra::from_brackets(
            4,
            &[(1, 2, 3, std::f64::consts::SQRT_2), (1, 2, 4, -0.125)],
        )
        .unwrap();
        let back = LieAlgebra::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(LieAlgebra::from_json(r#"{"dim":3,"brackets":[{"i":2,"j":1,"k":3,"c":1.0}]}"#).is_err());
        assert!(LieAlgebra::from_json(
            r#"{"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":1.0},{"i":1,"j":2,"k":3,"c":2.0}]}"#
        )
        .is_err());
    }

    #[test]
    fn jacobi_defect_invariant_under_well_conditioned_change() {
        let l = l6_11();
        let a = BasisChange::new(
            DMatrix::identity(6, 6) + DMatrix::from_fn(6, 6, |r, c| 0.02 * ((r + 2 * c) % 7) as f64),
        )
        .unwrap();
        assert!(l.change_basis(&a).unwrap().jacobi_defect() < 1e-9);
    }
}
