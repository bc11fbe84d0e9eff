//! Ricci curvature of left-invariant metrics.
//!
//! For a metric `<P., .>` on the fixed basis, [`ricci`] builds an orthonormal
//! frame from the symmetric square root of `P`, evaluates the nilpotent part
//! `M` of the Ricci operator there, and assembles the general formula
//! `Ric = M - B/2 - S(ad H)` with the Killing operator `B` and the mean
//! curvature vector `H`. Both terms vanish for nilpotent algebras.
//!
//! The module also carries the moment-map proportionality check
//! (`<Ric_mu, alpha>` against `<pi(alpha) mu, mu>` over symmetric `alpha`)
//! and the two stably-Ricci-diagonal decision procedures: a seeded sampler
//! over diagonal metrics and, for nilpotent algebras, the exact combinatorial
//! criterion with its grouped-coefficient diagnostic.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{inner_v, pi_action, GlElement, LieAlgebra};
use crate::linalg;
use crate::nice::{self, NiceVerdict, PositiveRoot, Weight};
use crate::{Error, Result};

/// Symmetry tolerance for accepting a metric matrix.
const METRIC_SYM_TOL: f64 = 1e-12;

/// A left-invariant metric `<P., .>` relative to the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    p: DMatrix<f64>,
    diagonal: bool,
}

impl Metric {
    /// Validates symmetry (to `1e-12`, relative) and positive-definiteness.
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        if p.nrows() != p.ncols() {
            return Err(Error::NotPositiveDefinite("matrix is not square".into()));
        }
        let asym = (&p - p.transpose()).norm();
        if asym > METRIC_SYM_TOL * (1.0 + p.norm()) {
            return Err(Error::NotPositiveDefinite(format!(
                "asymmetry {asym:e} exceeds tolerance"
            )));
        }
        let (min_ev, _) = linalg::sym_eig_range(&p);
        if min_ev <= 0.0 {
            return Err(Error::NotPositiveDefinite(format!(
                "minimal eigenvalue {min_ev:e}"
            )));
        }
        let diagonal = linalg::max_offdiag(&p) == 0.0;
        Ok(Self { p, diagonal })
    }

    /// The canonical metric `P = I`.
    pub fn canonical(n: usize) -> Self {
        Self {
            p: DMatrix::identity(n, n),
            diagonal: true,
        }
    }

    /// Diagonal metric with the given positive entries.
    pub fn diagonal(d: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_row_slice(d)))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }
}

/// Ricci data of `(L, <P., .>)`, expressed in the fixed basis.
#[derive(Debug, Clone)]
pub struct RicciReport {
    /// Ricci tensor `Rc = P Ric`.
    pub rc: DMatrix<f64>,
    /// Ricci operator (self-adjoint w.r.t. `P`).
    pub ric: DMatrix<f64>,
    /// Nilpotent part of the operator.
    pub m: DMatrix<f64>,
    /// Killing operator.
    pub b: DMatrix<f64>,
    /// Symmetric part of `ad H`.
    pub s_ad_h: DMatrix<f64>,
    /// Mean curvature vector.
    pub h: DVector<f64>,
}

/// Mean curvature vector `H = P^-1 h` with `h_i = tr ad e_i`; zero exactly
/// for unimodular algebras.
pub fn mean_curvature_vector(l: &LieAlgebra, metric: &Metric) -> Result<DVector<f64>> {
    check_dims(l, metric)?;
    let h = DVector::from_fn(l.dim(), |i, _| l.ad_basis(i).trace());
    let p_inv = metric
        .matrix()
        .clone()
        .try_inverse()
        .expect("SPD matrices are invertible");
    Ok(p_inv * h)
}

/// Killing operator `B = P^-1 B_form` with `B_form(i,j) = tr(ad e_i ad e_j)`.
pub fn killing_operator(l: &LieAlgebra, metric: &Metric) -> Result<DMatrix<f64>> {
    check_dims(l, metric)?;
    let n = l.dim();
    let ads: Vec<DMatrix<f64>> = (0..n).map(|i| l.ad_basis(i)).collect();
    let form = DMatrix::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace());
    let p_inv = metric
        .matrix()
        .clone()
        .try_inverse()
        .expect("SPD matrices are invertible");
    Ok(p_inv * form)
}

fn check_dims(l: &LieAlgebra, metric: &Metric) -> Result<()> {
    if metric.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            got: metric.dim(),
        });
    }
    Ok(())
}

/// Nilpotent part of the Ricci operator for the canonical metric, from the
/// structure constants of an orthonormal frame:
/// `<M X, Y> = -1/2 sum <[X,X_i],X_j><[Y,X_i],X_j> + 1/4 sum <[X_i,X_j],X><[X_i,X_j],Y>`,
/// both sums over all ordered pairs.
fn m_operator_canonical(l: &LieAlgebra) -> DMatrix<f64> {
    let n = l.dim();
    let mut c = vec![0.0; n * n * n];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for e in l.entries() {
        c[idx(e.i, e.j, e.k)] += e.c;
        c[idx(e.j, e.i, e.k)] -= e.c;
    }
    let mut m = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut t1 = 0.0;
            let mut t2 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    t1 += c[idx(a, i, j)] * c[idx(b, i, j)];
                    t2 += c[idx(i, j, a)] * c[idx(i, j, b)];
                }
            }
            let v = -0.5 * t1 + 0.25 * t2;
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    m
}

/// Full Ricci report for `(L, metric)`.
///
/// The orthonormal frame is the column set of `P^{-1/2}` (symmetric square
/// root); the bracket is rewritten in that frame, the canonical-metric
/// formulas are evaluated there, and everything is conjugated back to the
/// fixed basis.
pub fn ricci(l: &LieAlgebra, metric: &Metric) -> Result<RicciReport> {
    check_dims(l, metric)?;
    let n = l.dim();
    let q = linalg::sym_inv_sqrt(metric.matrix()); // P^{-1/2}
    let q_inv = linalg::sym_sqrt(metric.matrix()); // P^{1/2}

    // bracket in the orthonormal frame: A . mu with A = P^{1/2}
    let frame = l.change_basis(&crate::algebra::BasisChange::new(q_inv.clone())?)?;

    let m_f = m_operator_canonical(&frame);
    let ads: Vec<DMatrix<f64>> = (0..n).map(|i| frame.ad_basis(i)).collect();
    let b_f = DMatrix::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace());
    let h_f = DVector::from_fn(n, |i, _| ads[i].trace());
    let ad_h = frame.ad(&h_f);
    let s_ad_h_f = (&ad_h + ad_h.transpose()) * 0.5;
    let ric_f = &m_f - &b_f * 0.5 - &s_ad_h_f;

    // conjugate operators back: Ric_P = A^{-1} Ric_frame A with A = P^{1/2}
    let back = |op: &DMatrix<f64>| &q * op * &q_inv;
    let ric = back(&ric_f);
    let rc = metric.matrix() * &ric;
    Ok(RicciReport {
        rc,
        ric,
        m: back(&m_f),
        b: back(&b_f),
        s_ad_h: back(&s_ad_h_f),
        h: mean_curvature_vector(l, metric)?,
    })
}

/// Outcome of the moment-map proportionality check: the least-squares
/// constant `kappa` in `<Ric_mu, alpha> = kappa <pi(alpha) mu, mu>` over a
/// spanning set of symmetric `alpha`, and the relative fit residual.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentMapFit {
    pub kappa: f64,
    pub residual: f64,
}

/// Fits the proportionality constant between the Ricci operator of the
/// canonical metric and the pairing `<pi(alpha) mu, mu>`; the identity holds
/// with one universal constant for nilpotent brackets.
pub fn moment_map_check(l: &LieAlgebra) -> Result<MomentMapFit> {
    if !l.is_nilpotent() {
        return Err(Error::InvalidInput(
            "moment-map identity requires a nilpotent algebra".into(),
        ));
    }
    let n = l.dim();
    let mu = l.to_tensor();
    if mu.norm_sq() == 0.0 {
        return Err(Error::InvalidInput("zero bracket".into()));
    }
    let ric = ricci(l, &Metric::canonical(n))?.ric;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut alphas: Vec<DMatrix<f64>> = Vec::new();
    for i in 0..n {
        let mut a = DMatrix::zeros(n, n);
        a[(i, i)] = 1.0;
        alphas.push(a);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut a = DMatrix::zeros(n, n);
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
            alphas.push(a);
        }
    }
    for a in alphas {
        lhs.push((&ric * a.transpose()).trace());
        let pa = pi_action(&GlElement::new(a)?, &mu)?;
        rhs.push(inner_v(&pa, &mu)?);
    }
    let dot: f64 = lhs.iter().zip(&rhs).map(|(&x, &y)| x * y).sum();
    let rr: f64 = rhs.iter().map(|&y| y * y).sum();
    if rr == 0.0 {
        return Err(Error::InvalidInput("degenerate pairing".into()));
    }
    let kappa = dot / rr;
    let lhs_norm: f64 = lhs.iter().map(|&x| x * x).sum::<f64>().sqrt();
    let res_norm: f64 = lhs
        .iter()
        .zip(&rhs)
        .map(|(&x, &y)| (x - kappa * y).powi(2))
        .sum::<f64>()
        .sqrt();
    let residual = if lhs_norm > 0.0 {
        res_norm / lhs_norm
    } else {
        res_norm
    };
    Ok(MomentMapFit { kappa, residual })
}

/// Relative off-diagonal threshold for the diagonal-Ricci verdict.
pub const OFFDIAG_REL_TOL: f64 = 1e-6;

/// Verdict of the sampling-based stably-Ricci-diagonal check.
#[derive(Debug, Clone)]
pub struct NumericDiagonalVerdict {
    pub stably_diagonal: bool,
    /// Diagonal metric whose Ricci tensor has relative off-diagonal mass
    /// above [`OFFDIAG_REL_TOL`], when one was found.
    pub witness: Option<Metric>,
    pub samples: usize,
}

/// Samples diagonal metrics (canonical first, then entries log-uniform in
/// `[1e-2, 1e2]`) and reports whether any produced an off-diagonal Ricci
/// tensor. A `true` verdict is evidence, not proof, outside the nilpotent
/// case.
pub fn stably_ricci_diagonal_numeric(
    l: &LieAlgebra,
    samples: usize,
    seed: u64,
) -> NumericDiagonalVerdict {
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0;
    let mut candidates = Vec::with_capacity(samples + 1);
    candidates.push(Metric::canonical(n));
    for _ in 0..samples {
        let d: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.gen_range(-2.0..2.0))).collect();
        candidates.push(Metric::diagonal(&d).expect("positive entries"));
    }
    for metric in candidates {
        tried += 1;
        let rc = ricci(l, &metric).expect("diagonal metric is SPD").rc;
        let scale = rc.norm();
        if scale > 0.0 && linalg::max_offdiag(&rc) > OFFDIAG_REL_TOL * scale {
            return NumericDiagonalVerdict {
                stably_diagonal: false,
                witness: Some(metric),
                samples: tried,
            };
        }
    }
    NumericDiagonalVerdict {
        stably_diagonal: true,
        witness: None,
        samples: tried,
    }
}

/// One grouped coefficient of the root-wise expansion of the off-diagonal
/// Ricci entries: a pair of weights differing by the root `E_lm`, with the
/// product of their structure constants. All products vanish exactly when
/// the basis is stably Ricci-diagonal.
#[derive(Debug, Clone, Serialize)]
pub struct RootCoupling {
    /// 1-based `(l, m)` with `l > m`.
    pub root: (usize, usize),
    /// 1-based weight triples `(i, j, k)` and `(r, s, t)`.
    pub pair: [[usize; 3]; 2],
    pub product: f64,
}

/// Exact verdict for nilpotent algebras plus the per-root coupling
/// diagnostic.
#[derive(Debug, Clone)]
pub struct ExactDiagonalVerdict {
    pub verdict: NiceVerdict,
    pub couplings: Vec<RootCoupling>,
}

/// Exact stably-Ricci-diagonal decision for nilpotent algebras: equivalent to
/// the basis being nice. The diagnostic lists, for each positive root, the
/// weight pairs coupled through it together with their coefficient products.
pub fn stably_ricci_diagonal_exact(l: &LieAlgebra) -> Result<ExactDiagonalVerdict> {
    if !l.is_nilpotent() {
        return Err(Error::InvalidInput(
            "exact criterion holds only for nilpotent algebras".into(),
        ));
    }
    let verdict = nice::nice_via_roots(l)?;
    let n = l.dim();
    let entries: Vec<(Weight, f64)> = l
        .entries()
        .iter()
        .filter(|e| e.c.abs() > crate::algebra::STRUCTURE_TOL)
        .map(|e| (Weight::new(n, e.i, e.j, e.k), e.c))
        .collect();
    let mut couplings = Vec::new();
    for root in PositiveRoot::all(n) {
        for (w1, c1) in &entries {
            for (w2, c2) in &entries {
                // alpha_ij^k - alpha_rs^t = E_lm, per the grouped expansion
                let d: Vec<i64> = w1.vec.iter().zip(&w2.vec).map(|(&a, &b)| a - b).collect();
                if d == root.vec {
                    couplings.push(RootCoupling {
                        root: (root.l + 1, root.m + 1),
                        pair: [
                            [w1.ijk.0 + 1, w1.ijk.1 + 1, w1.ijk.2 + 1],
                            [w2.ijk.0 + 1, w2.ijk.1 + 1, w2.ijk.2 + 1],
                        ],
                        product: c1 * c2,
                    });
                }
            }
        }
    }
    Ok(ExactDiagonalVerdict { verdict, couplings })
}
