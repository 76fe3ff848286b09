//! Machine-readable reports. Identical inputs and seeds serialize to
//! byte-identical JSON except for `wall_time_s`, which is the only
//! nondeterministic field.

use std::time::Instant;

use eofkit::ensembles::Ensemble;
use eofkit::eof::{eof_estimate, spectral_upper_bound, EofConfig, EofResult};
use eofkit::oracle::{brute_force_eof, wootters_eof};
use eofkit::qstate::{partial_trace, von_neumann_entropy, DensityMatrix, Subsystem};
use eofkit::separability::{ppt_check, SeparabilityVerdict};
use serde::Serialize;

use crate::{CliError, CliResult};

pub const REPORT_SCHEMA: u32 = 1;

/// Budget used for the brute-force oracle value attached to 2×2 reports.
pub const ORACLE_BUDGET: usize = 2000;

#[derive(Serialize, Debug)]
pub struct VerdictJson {
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
    pub conclusive: bool,
}

impl From<SeparabilityVerdict> for VerdictJson {
    fn from(v: SeparabilityVerdict) -> Self {
        Self {
            ppt: v.ppt,
            min_pt_eigenvalue: v.min_pt_eigenvalue,
            conclusive: v.conclusive,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct OracleJson {
    pub wootters_eof: f64,
    pub brute_force_eof: f64,
    pub brute_force_budget: usize,
}

/// Witness decomposition as parallel arrays; each member is a length-d1·d2
/// array of [re, im] pairs.
#[derive(Serialize, Debug)]
pub struct WitnessJson {
    pub weights: Vec<f64>,
    pub members: Vec<Vec<[f64; 2]>>,
}

impl From<&Ensemble> for WitnessJson {
    fn from(e: &Ensemble) -> Self {
        Self {
            weights: e.weights().to_vec(),
            members: e
                .members()
                .iter()
                .map(|psi| psi.amplitudes().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ConfigJson {
    pub cardinality: Option<usize>,
    pub restarts: usize,
    pub max_iterations: usize,
    pub objective_tolerance: f64,
    pub seed: u64,
}

impl From<&EofConfig> for ConfigJson {
    fn from(cfg: &EofConfig) -> Self {
        Self {
            cardinality: cfg.cardinality,
            restarts: cfg.restarts,
            max_iterations: cfg.max_iterations,
            objective_tolerance: cfg.objective_tolerance,
            seed: cfg.seed,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub input: String,
    pub d1: usize,
    pub d2: usize,
    pub eof_value: f64,
    pub converged: bool,
    pub spectral_upper_bound: f64,
    pub cnt_entropy: f64,
    pub separability: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub demo: Option<serde_json::Value>,
    pub config: ConfigJson,
    pub wall_time_s: f64,
}

/// Run the full pipeline (estimate, spectral bound, CNT entropy, PPT check,
/// oracles on 2×2) and assemble the report.
pub fn build_report(
    input: impl Into<String>,
    rho: &DensityMatrix,
    cfg: &EofConfig,
    emit_witness: bool,
) -> CliResult<Report> {
    let estimate = eof_estimate(rho, cfg).map_err(|e| match e {
        eofkit::Error::ConfigError(_) => CliError::Config(e.to_string()),
        other => CliError::Internal(other.to_string()),
    })?;
    build_report_from_estimate(input, rho, cfg, emit_witness, &estimate)
}

/// [`build_report`] for callers that already hold the estimate (demos that
/// warm-start or reuse endpoint estimates).
pub fn build_report_from_estimate(
    input: impl Into<String>,
    rho: &DensityMatrix,
    cfg: &EofConfig,
    emit_witness: bool,
    estimate: &EofResult,
) -> CliResult<Report> {
    let started = Instant::now();
    let dims = rho.dims();
    let upper = spectral_upper_bound(rho);
    let reduced_entropy = von_neumann_entropy(&partial_trace(rho, Subsystem::First))
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let cnt = reduced_entropy - estimate.value;
    let verdict = ppt_check(rho);

    let oracle = if (dims.d1, dims.d2) == (2, 2) {
        Some(OracleJson {
            wootters_eof: wootters_eof(rho).map_err(|e| CliError::Internal(e.to_string()))?,
            brute_force_eof: brute_force_eof(rho, ORACLE_BUDGET, cfg.seed)
                .map_err(|e| CliError::Internal(e.to_string()))?,
            brute_force_budget: ORACLE_BUDGET,
        })
    } else {
        None
    };

    let report = Report {
        schema: REPORT_SCHEMA,
        version: env!("CARGO_PKG_VERSION").to_string(),
        input: input.into(),
        d1: dims.d1,
        d2: dims.d2,
        eof_value: estimate.value,
        converged: estimate.converged,
        spectral_upper_bound: upper,
        cnt_entropy: cnt,
        separability: verdict.into(),
        oracle,
        witness: emit_witness.then(|| WitnessJson::from(&estimate.witness)),
        demo: None,
        config: cfg.into(),
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    report.check_invariants();
    Ok(report)
}

impl Report {
    /// Every numeric field finite, the estimate below the spectral bound,
    /// and the estimate below the ln d1 ceiling. Violations are bugs, not
    /// user errors.
    fn check_invariants(&self) {
        assert!(self.eof_value.is_finite());
        assert!(self.spectral_upper_bound.is_finite());
        assert!(self.cnt_entropy.is_finite());
        assert!(self.separability.min_pt_eigenvalue.is_finite());
        assert!(
            self.eof_value <= self.spectral_upper_bound + 1e-8,
            "estimate {} above spectral bound {}",
            self.eof_value,
            self.spectral_upper_bound
        );
        assert!(self.eof_value >= 0.0);
        assert!(
            self.eof_value <= (self.d1 as f64).ln() + 1e-9,
            "estimate {} above the ln d1 ceiling",
            self.eof_value
        );
    }
}

/// Pretty JSON with a trailing newline; field order is fixed by the struct
/// declarations, so output is deterministic.
pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}
