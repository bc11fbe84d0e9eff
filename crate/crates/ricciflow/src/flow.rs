//! The Ricci-flow ODE on metrics, `dP/dt = -2 P Ric(P)`, with adaptive
//! Runge-Kutta integration, diagonality monitoring, algebraic-soliton
//! detection and the closed-form soliton solution.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::curvature::{ricci, Metric};
use crate::algebra::LieAlgebra;
use crate::linalg;
use crate::{Error, Result};

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowStatus {
    Completed,
    SingularityDetected,
    StepUnderflow,
}

/// One accepted step of the flow.
#[derive(Debug, Clone)]
pub struct FlowSample {
    pub t: f64,
    pub p: Metric,
    pub ric: DMatrix<f64>,
}

/// Time-stamped trajectory of the metric ODE.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub samples: Vec<FlowSample>,
    pub status: FlowStatus,
}

impl FlowTrajectory {
    pub fn final_time(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.t)
    }

    pub fn final_metric(&self) -> &Metric {
        &self.samples.last().expect("trajectory holds P(0)").p
    }
}

/// Integration options; the defaults match the crate-wide tolerances.
#[derive(Debug, Clone, Copy)]
pub struct FlowOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Initial step size (sign is taken from `t_max`).
    pub dt_init: f64,
    pub max_steps: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            dt_init: 1e-3,
            max_steps: 200_000,
        }
    }
}

/// Condition-number ceiling beyond which the metric is declared singular.
const COND_LIMIT: f64 = 1e12;
/// Eigenvalue floor below which the metric is declared singular.
const EIG_FLOOR: f64 = 1e-12;
/// Ricci-norm ceiling beyond which the flow is declared singular.
const RIC_LIMIT: f64 = 1e12;
/// Minimal step magnitude before reporting step underflow.
const DT_FLOOR: f64 = 1e-14;

/// Integrates `dP/dt = -2 P Ric_t` from `P0` towards `t_max` (negative for
/// backward flow) with an adaptive Dormand-Prince 4(5) scheme. `P` is
/// re-symmetrized after every accepted step; the run halts gracefully at
/// curvature blow-up or loss of positivity.
pub fn integrate_flow(
    l: &LieAlgebra,
    p0: &Metric,
    t_max: f64,
    options: &FlowOptions,
) -> Result<FlowTrajectory> {
    if t_max == 0.0 || !t_max.is_finite() {
        return Err(Error::InvalidInput("t_max must be nonzero and finite".into()));
    }
    if p0.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            got: p0.dim(),
        });
    }
    let dir = t_max.signum();
    let rhs = |p: &DMatrix<f64>| -> Result<(DMatrix<f64>, DMatrix<f64>)> {
        let metric = Metric::new(symmetrize(p))?;
        let ric = ricci(l, &metric)?.ric;
        Ok(((metric.matrix() * &ric) * -2.0, ric))
    };

    let mut t = 0.0_f64;
    let mut p = p0.matrix().clone();
    let (_, ric0) = rhs(&p)?;
    let mut samples = vec![FlowSample {
        t,
        p: p0.clone(),
        ric: ric0,
    }];
    let mut dt = options.dt_init.abs().min(t_max.abs()) * dir;
    let mut status = FlowStatus::Completed;

    // Dormand-Prince 4(5) tableau.
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut steps = 0;
    while (t_max - t) * dir > 0.0 {
        steps += 1;
        if steps > options.max_steps {
            status = FlowStatus::StepUnderflow;
            break;
        }
        if dt.abs() > (t_max - t).abs() {
            dt = t_max - t;
        }
        if dt.abs() < DT_FLOOR {
            status = FlowStatus::StepUnderflow;
            break;
        }

        let mut k: Vec<DMatrix<f64>> = Vec::with_capacity(7);
        let mut blow_up = false;
        match rhs(&p) {
            Ok((f, ric)) => {
                if ric.norm() > RIC_LIMIT {
                    blow_up = true;
                }
                k.push(f);
            }
            Err(_) => blow_up = true,
        }
        if !blow_up {
            for stage in 0..6 {
                let mut y = p.clone();
                for (s, ks) in k.iter().enumerate() {
                    let coeff = A[stage][s];
                    if coeff != 0.0 {
                        y += ks * (coeff * dt);
                    }
                }
                match rhs(&y) {
                    Ok((f, _)) => k.push(f),
                    Err(_) => {
                        blow_up = true;
                        break;
                    }
                }
            }
        }
        if blow_up {
            // retry with a smaller step; declare singularity at underflow
            dt *= 0.5;
            if dt.abs() < DT_FLOOR {
                status = FlowStatus::SingularityDetected;
                break;
            }
            continue;
        }

        let mut p5 = p.clone();
        let mut p4 = p.clone();
        for (s, ks) in k.iter().enumerate() {
            if B5[s] != 0.0 {
                p5 += ks * (B5[s] * dt);
            }
            if B4[s] != 0.0 {
                p4 += ks * (B4[s] * dt);
            }
        }
        let scale = options.abs_tol + options.rel_tol * p.norm().max(p5.norm());
        let err = (&p5 - &p4).norm() / scale;

        if err <= 1.0 {
            t += dt;
            p = symmetrize(&p5);
            let (min_ev, max_ev) = linalg::sym_eig_range(&p);
            if min_ev < EIG_FLOOR || max_ev / min_ev > COND_LIMIT {
                status = FlowStatus::SingularityDetected;
                break;
            }
            let metric = Metric::new(p.clone())?;
            let ric = ricci(l, &metric)?.ric;
            if ric.norm() > RIC_LIMIT {
                samples.push(FlowSample { t, p: metric, ric });
                status = FlowStatus::SingularityDetected;
                break;
            }
            samples.push(FlowSample { t, p: metric, ric });
        }
        // PI-flavoured step control with the usual safety clamp
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        dt *= factor;
    }
    Ok(FlowTrajectory { samples, status })
}

fn symmetrize(p: &DMatrix<f64>) -> DMatrix<f64> {
    (p + p.transpose()) * 0.5
}

/// Result of the algebraic-soliton test `Ric_0 = c I + D`, `D` a derivation.
#[derive(Debug, Clone, Serialize)]
pub struct SolitonData {
    pub c: f64,
    /// `Ric_0 - c I`; a derivation up to `derivation_residual`.
    #[serde(serialize_with = "crate::cli::serialize_matrix")]
    pub d: DMatrix<f64>,
    pub derivation_residual: f64,
    pub is_soliton: bool,
}

/// Residual threshold, relative to the squared bracket norm.
pub const SOLITON_TOL: f64 = 1e-9;

/// Decides whether `(L, metric)` is an algebraic soliton. The derivation
/// defect of `Ric_0 - c I` is affine in `c`, so the optimal `c` solves a
/// scalar least-squares problem in closed form.
pub fn detect_algebraic_soliton(l: &LieAlgebra, metric: &Metric) -> Result<SolitonData> {
    let n = l.dim();
    let ric0 = ricci(l, metric)?.ric;
    // defect(c)(e_i, e_j) = (Ric0 [e_i,e_j] - [Ric0 e_i, e_j] - [e_i, Ric0 e_j]) + c [e_i,e_j]
    let mut base = Vec::new(); // defect at c = 0, stacked
    let mut gain = Vec::new(); // d defect / dc
    for i in 0..n {
        for j in (i + 1)..n {
            let bij = l.bracket_basis(i, j);
            let ei = ric0.column(i).into_owned();
            let ej = ric0.column(j).into_owned();
            let basis_i = nalgebra::DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
            let basis_j = nalgebra::DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
            let d0 = &ric0 * &bij - l.bracket(&ei, &basis_j) - l.bracket(&basis_i, &ej);
            for r in 0..n {
                base.push(d0[r]);
                gain.push(bij[r]);
            }
        }
    }
    let gg: f64 = gain.iter().map(|&g| g * g).sum();
    let mu_norm_sq = l.to_tensor().norm_sq();
    if gg == 0.0 {
        // abelian: the defect vanishes identically, c is arbitrary
        return Ok(SolitonData {
            c: 0.0,
            d: DMatrix::zeros(n, n),
            derivation_residual: 0.0,
            is_soliton: true,
        });
    }
    let c = -base.iter().zip(&gain).map(|(&b, &g)| b * g).sum::<f64>() / gg;
    let residual: f64 = base
        .iter()
        .zip(&gain)
        .map(|(&b, &g)| (b + c * g).powi(2))
        .sum::<f64>()
        .sqrt();
    let is_soliton = residual <= SOLITON_TOL * mu_norm_sq;
    Ok(SolitonData {
        c,
        d: &ric0 - DMatrix::identity(n, n) * c,
        derivation_residual: residual,
        is_soliton,
    })
}

/// Closed-form soliton flow `P(t) = exp((log(-2ct+1)/c) Ric_0)`, evaluated
/// through the symmetric eigendecomposition of `Ric_0`. The steady case
/// `c = 0` uses the limit `P(t) = exp(-2t Ric_0)`.
pub fn closed_form_soliton_flow(sol: &SolitonData, ric0: &DMatrix<f64>, t: f64) -> Result<Metric> {
    if !sol.is_soliton {
        return Err(Error::InvalidInput(
            "closed form requires an algebraic soliton".into(),
        ));
    }
    let sym = (ric0 + ric0.transpose()) * 0.5;
    if (ric0 - &sym).norm() > 1e-9 * (1.0 + ric0.norm()) {
        return Err(Error::InvalidInput("Ric_0 must be symmetric".into()));
    }
    let c = sol.c;
    let p = if c == 0.0 {
        linalg::sym_exp(&sym, -2.0 * t)
    } else {
        let arg = -2.0 * c * t + 1.0;
        if arg <= 0.0 {
            return Err(Error::Domain(format!(
                "t = {t} is outside the maximal interval (-2ct + 1 > 0)"
            )));
        }
        linalg::sym_exp(&sym, arg.ln() / c)
    };
    Metric::new(symmetrize(&p))
}

/// Diagonality diagnostics of a trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalityReport {
    /// Max over sampled time pairs of `||[P(s), P(t)]||_F / (||P(s)|| ||P(t)||)`.
    pub max_commutator: f64,
    /// Max over samples of the relative off-diagonal mass of `Ric_t` in a
    /// fixed eigenbasis of `Ric_0`.
    pub eigenbasis_offdiag: f64,
    /// The `Ric_0` spectrum is degenerate, making the eigenbasis route
    /// inconclusive (the commutator test remains valid).
    pub degenerate_spectrum: bool,
}

/// Commutator level below which a trajectory is declared diagonal.
pub const DIAGONAL_TOL: f64 = 1e-8;
/// Commutator level above which a trajectory is declared non-diagonal;
/// readings in between are inconclusive.
pub const NON_DIAGONAL_TOL: f64 = 1e-3;

/// Cap on the number of trajectory samples entering the pairwise commutator
/// scan.
const DIAG_SAMPLE_CAP: usize = 48;

/// Evaluates the commutativity of `{P(t)}` and the off-diagonal mass of
/// `Ric_t` in the eigenbasis of `Ric_0`.
pub fn diagonality_report(traj: &FlowTrajectory) -> Result<DiagonalityReport> {
    if traj.samples.len() < 3 {
        return Err(Error::InvalidInput(
            "diagonality report needs at least 3 samples".into(),
        ));
    }
    let picked: Vec<&FlowSample> = thin(&traj.samples, DIAG_SAMPLE_CAP);
    let mut max_commutator = 0.0_f64;
    for (a, sa) in picked.iter().enumerate() {
        for sb in picked.iter().skip(a + 1) {
            let pa = sa.p.matrix();
            let pb = sb.p.matrix();
            let denom = pa.norm() * pb.norm();
            if denom > 0.0 {
                max_commutator = max_commutator.max(linalg::commutator_norm(pa, pb) / denom);
            }
        }
    }

    let ric0 = symmetrize(&traj.samples[0].ric);
    let eig = ric0.clone().symmetric_eigen();
    let mut evs: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let scale = evs.iter().map(|e| e.abs()).fold(0.0_f64, f64::max).max(1e-300);
    let degenerate_spectrum = evs.windows(2).any(|w| (w[1] - w[0]).abs() < 1e-9 * scale);
    let q = &eig.eigenvectors;
    let mut eigenbasis_offdiag = 0.0_f64;
    for s in &picked {
        let r = q.transpose() * symmetrize(&s.ric) * q;
        let norm = r.norm();
        if norm > 0.0 {
            eigenbasis_offdiag = eigenbasis_offdiag.max(linalg::max_offdiag(&r) / norm);
        }
    }
    Ok(DiagonalityReport {
        max_commutator,
        eigenbasis_offdiag,
        degenerate_spectrum,
    })
}

fn thin(samples: &[FlowSample], cap: usize) -> Vec<&FlowSample> {
    if samples.len() <= cap {
        return samples.iter().collect();
    }
    let stride = (samples.len() - 1) as f64 / (cap - 1) as f64;
    (0..cap)
        .map(|i| &samples[(i as f64 * stride).round() as usize])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[(1, 2, 3, 1.0)]).unwrap()
    }

    fn n4() -> LieAlgebra {
        let r = std::f64::consts::SQRT_2;
        LieAlgebra::from_brackets(4, &[(1, 2, 3, r), (1, 2, 4, r), (1, 3, 4, r)]).unwrap()
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[(1, 2, 2, 1.0), (1, 3, 3, -1.0), (2, 3, 1, 1.0)]).unwrap()
    }

    #[test]
    fn abelian_flow_is_constant() {
        let l = LieAlgebra::abelian(3);
        let p0 = Metric::diagonal(&[2.0, 0.5, 1.0]).unwrap();
        let traj = integrate_flow(&l, &p0, 1.0, &FlowOptions::default()).unwrap();
        assert_eq!(traj.status, FlowStatus::Completed);
        assert!((traj.final_metric().matrix() - p0.matrix()).norm() < 1e-12);
    }

    #[test]
    fn heisenberg_soliton_detection() {
        let sol = detect_algebraic_soliton(&heisenberg(), &Metric::canonical(3)).unwrap();
        assert!(sol.is_soliton);
        assert_relative_eq!(sol.c, -1.5, epsilon = 1e-12);
        assert!(sol.derivation_residual < 1e-12);
        let expected_d = DMatrix::from_diagonal(&DVector::from_row_slice(&[1.0, 1.0, 2.0]));
        assert!((&sol.d - expected_d).norm() < 1e-12);
    }

    #[test]
    fn abelian_soliton_convention() {
        let sol =
            detect_algebraic_soliton(&LieAlgebra::abelian(3), &Metric::canonical(3)).unwrap();
        assert!(sol.is_soliton);
        assert_eq!(sol.c, 0.0);
        assert_eq!(sol.d.norm(), 0.0);
    }

    #[test]
    fn sl2_is_not_an_algebraic_soliton() {
        let sol = detect_algebraic_soliton(&sl2(), &Metric::canonical(3)).unwrap();
        assert!(!sol.is_soliton);
        assert!(sol.derivation_residual > 1e-3);
    }

    #[test]
    fn closed_form_matches_known_exponents() {
        let l = heisenberg();
        let ric0 = ricci(&l, &Metric::canonical(3)).unwrap().ric;
        let sol = detect_algebraic_soliton(&l, &Metric::canonical(3)).unwrap();
        // P(t) eigenvalues: ((3t+1)^{1/3}, (3t+1)^{1/3}, (3t+1)^{-1/3})
        for t in [0.0, 0.25, 1.0, 4.0] {
            let p = closed_form_soliton_flow(&sol, &ric0, t).unwrap();
            let m = p.matrix();
            let g = (3.0 * t + 1.0_f64).powf(1.0 / 3.0);
            assert_relative_eq!(m[(0, 0)], g, epsilon = 1e-12);
            assert_relative_eq!(m[(1, 1)], g, epsilon = 1e-12);
            assert_relative_eq!(m[(2, 2)], 1.0 / g, epsilon = 1e-12);
        }
        // t = 0 gives the identity
        let p0 = closed_form_soliton_flow(&sol, &ric0, 0.0).unwrap();
        assert!((p0.matrix() - DMatrix::identity(3, 3)).norm() < 1e-14);
        // c < 0: domain is t > 1/(2c); just inside is fine, outside errors
        let t_low = 1.0 / (2.0 * sol.c);
        assert!(closed_form_soliton_flow(&sol, &ric0, t_low - 0.01).is_err());
        assert!(closed_form_soliton_flow(&sol, &ric0, t_low + 0.01).is_ok());
    }

    #[test]
    fn integrator_matches_closed_form_on_heisenberg() {
        let l = heisenberg();
        let ric0 = ricci(&l, &Metric::canonical(3)).unwrap().ric;
        let sol = detect_algebraic_soliton(&l, &Metric::canonical(3)).unwrap();
        let traj =
            integrate_flow(&l, &Metric::canonical(3), 1.0, &FlowOptions::default()).unwrap();
        assert_eq!(traj.status, FlowStatus::Completed);
        for s in &traj.samples {
            let exact = closed_form_soliton_flow(&sol, &ric0, s.t).unwrap();
            let rel = (s.p.matrix() - exact.matrix()).norm() / exact.matrix().norm();
            assert!(rel < 1e-6, "t = {}, rel = {rel:e}", s.t);
        }
    }

    #[test]
    fn backward_flow_runs() {
        let l = heisenberg();
        let ric0 = ricci(&l, &Metric::canonical(3)).unwrap().ric;
        let sol = detect_algebraic_soliton(&l, &Metric::canonical(3)).unwrap();
        let traj =
            integrate_flow(&l, &Metric::canonical(3), -0.2, &FlowOptions::default()).unwrap();
        assert_eq!(traj.status, FlowStatus::Completed);
        let exact = closed_form_soliton_flow(&sol, &ric0, -0.2).unwrap();
        let last = traj.final_metric();
        assert!((last.matrix() - exact.matrix()).norm() / exact.matrix().norm() < 1e-6);
    }

    #[test]
    fn semigroup_property() {
        let l = n4();
        let opts = FlowOptions::default();
        let t1 = 0.05;
        let t2 = 0.12;
        let first = integrate_flow(&l, &Metric::canonical(4), t1, &opts).unwrap();
        let mid = first.final_metric().clone();
        let second = integrate_flow(&l, &mid, t2 - t1, &opts).unwrap();
        let direct = integrate_flow(&l, &Metric::canonical(4), t2, &opts).unwrap();
        let a = second.final_metric().matrix();
        let b = direct.final_metric().matrix();
        assert!((a - b).norm() / b.norm() < 1e-6);
    }

    #[test]
    fn symmetry_and_positivity_preserved() {
        let l = n4();
        let traj =
            integrate_flow(&l, &Metric::canonical(4), 0.2, &FlowOptions::default()).unwrap();
        for s in &traj.samples {
            let p = s.p.matrix();
            assert!((p - p.transpose()).norm() <= 1e-9 * p.norm());
            let (min_ev, _) = linalg::sym_eig_range(p);
            assert!(min_ev > 0.0);
        }
    }

    #[test]
    fn soliton_trajectory_is_diagonal_n4_is_not() {
        let l = heisenberg();
        let traj =
            integrate_flow(&l, &Metric::canonical(3), 1.0, &FlowOptions::default()).unwrap();
        let report = diagonality_report(&traj).unwrap();
        assert!(report.max_commutator <= DIAGONAL_TOL);

        let l = n4();
        let traj =
            integrate_flow(&l, &Metric::canonical(4), 0.2, &FlowOptions::default()).unwrap();
        let report = diagonality_report(&traj).unwrap();
        assert!(
            report.max_commutator > NON_DIAGONAL_TOL,
            "commutator = {:e}",
            report.max_commutator
        );
    }

    #[test]
    fn abelian_commutator_is_zero() {
        let l = LieAlgebra::abelian(3);
        let traj = integrate_flow(&l, &Metric::diagonal(&[1.0, 2.0, 3.0]).unwrap(), 0.5, &FlowOptions::default())
            .unwrap();
        let report = diagonality_report(&traj).unwrap();
        assert_eq!(report.max_commutator, 0.0);
    }
}
