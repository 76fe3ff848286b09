//! The three commands behind the binary. Each returns the JSON payload to
//! print on stdout; everything else goes to stderr.

use std::path::PathBuf;

use eofkit::eof::EofConfig;
use eofkit::separability::ppt_check;

use crate::config::load_config;
use crate::demos::{run_demo, DemoArgs};
use crate::report::{build_report, to_json, VerdictJson};
use crate::statefile::{read_state, write_state};
use crate::CliResult;

#[derive(Debug, Clone)]
pub struct ComputeArgs {
    pub state: PathBuf,
    pub config: Option<PathBuf>,
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
    pub cardinality: Option<usize>,
    pub emit_witness: bool,
    pub emit_state: Option<PathBuf>,
}

pub fn cmd_compute(args: &ComputeArgs) -> CliResult<String> {
    let rho = read_state(&args.state)?;
    let mut cfg = match &args.config {
        Some(path) => load_config(path)?,
        None => EofConfig::default(),
    };
    if let Some(r) = args.restarts {
        cfg.restarts = r;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(m) = args.cardinality {
        cfg.cardinality = Some(m);
    }
    if let Some(path) = &args.emit_state {
        write_state(path, &rho)?;
    }
    let report = build_report(
        args.state.display().to_string(),
        &rho,
        &cfg,
        args.emit_witness,
    )?;
    to_json(&report)
}

pub fn cmd_demo(name: &str, args: &DemoArgs) -> CliResult<String> {
    let reports = run_demo(name, args)?;
    to_json(&reports)
}

pub fn cmd_check(state: &PathBuf) -> CliResult<String> {
    let rho = read_state(state)?;
    let verdict: VerdictJson = ppt_check(&rho).into();
    to_json(&verdict)
}
