//! Command-line front end: parse algebra/metric files, dispatch to the
//! computing modules, emit machine-readable reports and plot-ready
//! trajectories.
//!
//! Inputs are either file paths (JSON algebra format) or `catalog:NAME`
//! references. All randomness flows from the single `--seed` flag, so
//! identical invocations produce byte-identical reports.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::algebra::LieAlgebra;
use crate::catalog;
use crate::curvature::{self, Metric};
use crate::flow::{self, FlowOptions, FlowTrajectory};
use crate::nice;
use crate::{Error, Result};

/// Shared option set; every subcommand accepts the full set and uses the
/// relevant slice.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Algebra source: a JSON file path or `catalog:NAME`.
    #[arg(long)]
    pub input: Option<String>,

    /// Metric source: `canonical`, or a JSON file with `{"diag": [...]}` or
    /// `{"p": [[...], ...]}`.
    #[arg(long, default_value = "canonical")]
    pub metric: String,

    /// Flow horizon; negative values integrate backward.
    #[arg(long = "t-max", default_value_t = 1.0, allow_hyphen_values = true)]
    pub t_max: f64,

    /// Initial step size for the flow integrator.
    #[arg(long = "dt-init", default_value_t = 1e-3)]
    pub dt_init: f64,

    /// Relative/absolute local error tolerance for the flow integrator.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Number of sampled diagonal metrics for `stably-diagonal`.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,

    /// Seed for every randomized procedure.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Report destination (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Report format; `csv` applies to flow trajectories.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural summary: Jacobi defect, nilpotency, solvability, type.
    Info(RunConfig),
    /// Nice-basis verdict with violation witness and root-criterion cross-check.
    Nice(RunConfig),
    /// Ricci tensor/operator report for the given metric.
    Ricci(RunConfig),
    /// Sampling (and, for nilpotent algebras, exact) stably-Ricci-diagonal verdict.
    StablyDiagonal(RunConfig),
    /// Algebraic-soliton detection for the given metric.
    Soliton(RunConfig),
    /// Integrate the Ricci-flow ODE and report diagonality diagnostics.
    Flow(RunConfig),
    /// List catalog entries, or export one with `--input NAME`.
    Catalog(RunConfig),
}

pub fn serialize_matrix<S: Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    matrix_rows(m).serialize(s)
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

#[derive(Serialize)]
struct InfoReport {
    dim: usize,
    brackets: usize,
    jacobi_defect: f64,
    nilpotent: bool,
    solvable: bool,
    unimodular: bool,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    type_of: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct NiceReport {
    nice: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[[usize; 3]; 2]>,
    /// Root-criterion agreement; absent when the criterion does not apply.
    #[serde(skip_serializing_if = "Option::is_none")]
    root_criterion_agrees: Option<bool>,
}

#[derive(Serialize)]
struct RicciJson {
    ric: Vec<Vec<f64>>,
    rc: Vec<Vec<f64>>,
    m: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    s_ad_h: Vec<Vec<f64>>,
    h: Vec<f64>,
}

#[derive(Serialize)]
struct StablyDiagonalReport {
    stably_diagonal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_metric_diag: Option<Vec<f64>>,
    samples: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_nice: Option<bool>,
}

#[derive(Serialize)]
struct FlowSummary {
    status: flow::FlowStatus,
    t_final: f64,
    steps: usize,
    max_commutator: f64,
    eigenbasis_offdiag: f64,
    degenerate_spectrum: bool,
    /// Commutator-based verdict; `null` when between the two thresholds.
    flow_diagonal: Option<bool>,
    soliton: flow::SolitonData,
}

/// Executes one subcommand. Errors map to exit code 2 (invalid input) or 1
/// (I/O) in the binary.
pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Info(cfg) => {
            let l = load_algebra(cfg)?;
            let report = InfoReport {
                dim: l.dim(),
                brackets: l.entries().len(),
                jacobi_defect: l.jacobi_defect(),
                nilpotent: l.is_nilpotent(),
                solvable: l.is_solvable(),
                unimodular: l.is_unimodular(),
                type_of: l.is_nilpotent().then(|| l.type_of()),
            };
            emit(cfg, &to_json(&report))
        }
        Command::Nice(cfg) => {
            let l = load_algebra(cfg)?;
            let verdict = nice::is_nice_basis(&l);
            let agrees = nice::nice_via_roots(&l)
                .ok()
                .map(|v| v.nice == verdict.nice);
            let report = NiceReport {
                nice: verdict.nice,
                witness: verdict.witness,
                root_criterion_agrees: agrees,
            };
            emit(cfg, &to_json(&report))
        }
        Command::Ricci(cfg) => {
            let l = load_algebra(cfg)?;
            let metric = load_metric(cfg, l.dim())?;
            let rep = curvature::ricci(&l, &metric)?;
            let report = RicciJson {
                ric: matrix_rows(&rep.ric),
                rc: matrix_rows(&rep.rc),
                m: matrix_rows(&rep.m),
                b: matrix_rows(&rep.b),
                s_ad_h: matrix_rows(&rep.s_ad_h),
                h: rep.h.iter().cloned().collect(),
            };
            emit(cfg, &to_json(&report))
        }
        Command::StablyDiagonal(cfg) => {
            let l = load_algebra(cfg)?;
            let verdict = curvature::stably_ricci_diagonal_numeric(&l, cfg.samples, cfg.seed);
            let exact = curvature::stably_ricci_diagonal_exact(&l)
                .ok()
                .map(|v| v.verdict.nice);
            let report = StablyDiagonalReport {
                stably_diagonal: verdict.stably_diagonal,
                witness_metric_diag: verdict
                    .witness
                    .map(|m| m.matrix().diagonal().iter().cloned().collect()),
                samples: verdict.samples,
                seed: cfg.seed,
                exact_nice: exact,
            };
            emit(cfg, &to_json(&report))
        }
        Command::Soliton(cfg) => {
            let l = load_algebra(cfg)?;
            let metric = load_metric(cfg, l.dim())?;
            let sol = flow::detect_algebraic_soliton(&l, &metric)?;
            emit(cfg, &to_json(&sol))
        }
        Command::Flow(cfg) => {
            let l = load_algebra(cfg)?;
            let metric = load_metric(cfg, l.dim())?;
            let options = FlowOptions {
                rel_tol: cfg.tol,
                abs_tol: cfg.tol,
                dt_init: cfg.dt_init,
                ..FlowOptions::default()
            };
            let traj = flow::integrate_flow(&l, &metric, cfg.t_max, &options)?;
            let diag = flow::diagonality_report(&traj)?;
            let sol = flow::detect_algebraic_soliton(&l, &metric)?;
            let flow_diagonal = if diag.max_commutator <= flow::DIAGONAL_TOL {
                Some(true)
            } else if diag.max_commutator > flow::NON_DIAGONAL_TOL {
                Some(false)
            } else {
                None
            };
            let summary = FlowSummary {
                status: traj.status,
                t_final: traj.final_time(),
                steps: traj.samples.len() - 1,
                max_commutator: diag.max_commutator,
                eigenbasis_offdiag: diag.eigenbasis_offdiag,
                degenerate_spectrum: diag.degenerate_spectrum,
                flow_diagonal,
                soliton: sol,
            };
            match cfg.format {
                Format::Csv => {
                    let csv = trajectory_csv(&traj);
                    match &cfg.output {
                        Some(path) => {
                            fs::write(path, csv)?;
                            // summary still goes to stdout
                            println!("{}", to_json(&summary));
                            Ok(())
                        }
                        None => {
                            print!("{csv}");
                            Ok(())
                        }
                    }
                }
                Format::Json => emit(cfg, &to_json(&summary)),
            }
        }
        Command::Catalog(cfg) => match &cfg.input {
            None => emit(cfg, &to_json(&catalog::list())),
            Some(name) => {
                let name = name.strip_prefix("catalog:").unwrap_or(name);
                let entry = catalog::get(name)?;
                emit(cfg, &entry.algebra.to_json())
            }
        },
    }
}

/// Trajectory CSV: `t,p_11,p_12,...,p_nn,offdiag,commutator`, upper triangle
/// of `P` row-major, 17 significant digits.
pub fn trajectory_csv(traj: &FlowTrajectory) -> String {
    let n = traj.samples[0].p.dim();
    let mut header = String::from("t");
    for i in 0..n {
        for j in i..n {
            header.push_str(&format!(",p_{}{}", i + 1, j + 1));
        }
    }
    header.push_str(",offdiag,commutator\n");
    let p0 = traj.samples[0].p.matrix().clone();
    let p0_norm = p0.norm();
    let mut out = header;
    for s in &traj.samples {
        let p = s.p.matrix();
        let mut row = fmt17(s.t);
        for i in 0..n {
            for j in i..n {
                row.push(',');
                row.push_str(&fmt17(p[(i, j)]));
            }
        }
        let offdiag = crate::linalg::max_offdiag(p);
        let comm = if p0_norm > 0.0 && p.norm() > 0.0 {
            crate::linalg::commutator_norm(p, &p0) / (p.norm() * p0_norm)
        } else {
            0.0
        };
        row.push(',');
        row.push_str(&fmt17(offdiag));
        row.push(',');
        row.push_str(&fmt17(comm));
        row.push('\n');
        out.push_str(&row);
    }
    out
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => {
            fs::write(path, format!("{text}\n"))?;
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_algebra(cfg: &RunConfig) -> Result<LieAlgebra> {
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--input is required".into()))?;
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(catalog::get(name)?.algebra);
    }
    let text = fs::read_to_string(input)?;
    LieAlgebra::from_json(&text)
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum MetricJson {
    Diag { diag: Vec<f64> },
    Full { p: Vec<Vec<f64>> },
}

fn load_metric(cfg: &RunConfig, dim: usize) -> Result<Metric> {
    if cfg.metric == "canonical" {
        return Ok(Metric::canonical(dim));
    }
    let text = fs::read_to_string(&cfg.metric)?;
    let parsed: MetricJson =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("metric: {e}")))?;
    let metric = match parsed {
        MetricJson::Diag { diag } => {
            if diag.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: diag.len(),
                });
            }
            Metric::diagonal(&diag)?
        }
        MetricJson::Full { p } => {
            if p.len() != dim || p.iter().any(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            let flat: Vec<f64> = p.into_iter().flatten().collect();
            Metric::new(DMatrix::from_row_slice(dim, dim, &flat))?
        }
    };
    Ok(metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_reference_resolves() {
        let cfg = RunConfig {
            input: Some("catalog:heis3".into()),
            metric: "canonical".into(),
            t_max: 1.0,
            dt_init: 1e-3,
            tol: 1e-10,
            samples: 10,
            seed: 1,
            output: None,
            format: Format::Json,
        };
        assert_eq!(load_algebra(&cfg).unwrap().dim(), 3);
    }

    #[test]
    fn csv_has_expected_shape() {
        let l = catalog::get("heis3").unwrap().algebra;
        let traj = flow::integrate_flow(
            &l,
            &Metric::canonical(3),
            0.1,
            &FlowOptions::default(),
        )
        .unwrap();
        let csv = trajectory_csv(&traj);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,p_11,p_12,p_13,p_22,p_23,p_33,offdiag,commutator"
        );
        let first = lines.next().unwrap();
        assert!(first.starts_with("0.0000000000000000e0,"));
        assert_eq!(first.split(',').count(), 9);
    }
}
