//! Named reproduction demos, each a small seeded experiment emitting one or
//! more reports.

use eofkit::ensembles::mix_ensembles;
use eofkit::eof::{eof_estimate, eof_estimate_with_starts, subadditivity_check, EofConfig};
use eofkit::qstate::{BipartiteDims, DensityMatrix, PureState};
use eofkit::separability::{
    max_product_overlap, random_density, tiles_projector, tiles_upb_state, SearchConfig,
};
use serde_json::json;

use crate::report::{build_report, build_report_from_estimate, Report};
use crate::{CliError, CliResult};

pub const DEMO_NAMES: &[&str] = &[
    "singlet",
    "maxent-d",
    "werner-sweep",
    "tiles",
    "subadditivity",
    "convexity",
];

#[derive(Debug, Clone)]
pub struct DemoArgs {
    /// Local dimension for `maxent-d`.
    pub d: usize,
    /// Number of sweep intervals for `werner-sweep` (grid+1 points).
    pub grid: usize,
    pub seed: u64,
}

pub fn run_demo(name: &str, args: &DemoArgs) -> CliResult<Vec<Report>> {
    match name {
        "singlet" => singlet(args),
        "maxent-d" => maxent(args),
        "werner-sweep" => werner_sweep(args),
        "tiles" => tiles(args),
        "subadditivity" => subadditivity(args),
        "convexity" => convexity(args),
        other => Err(CliError::UnknownDemo(other.to_string())),
    }
}

fn internal(e: eofkit::Error) -> CliError {
    CliError::Internal(e.to_string())
}

fn singlet(args: &DemoArgs) -> CliResult<Vec<Report>> {
    let rho = PureState::singlet().projector();
    let cfg = EofConfig::with_seed(args.seed);
    Ok(vec![build_report("demo:singlet", &rho, &cfg, false)?])
}

fn maxent(args: &DemoArgs) -> CliResult<Vec<Report>> {
    if args.d == 0 {
        return Err(CliError::Config("maxent-d needs d ≥ 1".into()));
    }
    let rho = PureState::maximally_entangled(args.d)
        .map_err(|e| CliError::Config(e.to_string()))?
        .projector();
    let cfg = EofConfig::with_seed(args.seed);
    let mut report = build_report(format!("demo:maxent-d({})", args.d), &rho, &cfg, false)?;
    report.demo = Some(json!({ "d": args.d }));
    Ok(vec![report])
}

fn werner_sweep(args: &DemoArgs) -> CliResult<Vec<Report>> {
    if args.grid == 0 {
        return Err(CliError::Config("werner-sweep needs grid ≥ 1".into()));
    }
    let mut reports = Vec::with_capacity(args.grid + 1);
    for i in 0..=args.grid {
        let p = i as f64 / args.grid as f64;
        let rho = eofkit::oracle::werner_state(p).map_err(internal)?;
        // cardinality 4 covers optimal two-qubit decompositions
        let cfg = EofConfig {
            cardinality: Some(4),
            ..EofConfig::with_seed(args.seed)
        };
        let mut report = build_report("demo:werner-sweep", &rho, &cfg, false)?;
        report.demo = Some(json!({ "p": p }));
        reports.push(report);
    }
    Ok(reports)
}

fn tiles(args: &DemoArgs) -> CliResult<Vec<Report>> {
    let rho = tiles_upb_state();
    let cfg = EofConfig::with_seed(args.seed);
    let mut report = build_report("demo:tiles", &rho, &cfg, false)?;
    let overlap = max_product_overlap(
        &tiles_projector(),
        BipartiteDims { d1: 3, d2: 3 },
        &SearchConfig {
            seed: args.seed,
            ..SearchConfig::default()
        },
    )
    .map_err(internal)?;
    report.demo = Some(json!({
        "max_product_overlap": overlap,
        "overlap_margin": 1.0 - overlap,
    }));
    Ok(vec![report])
}

fn subadditivity(args: &DemoArgs) -> CliResult<Vec<Report>> {
    let dims = BipartiteDims { d1: 2, d2: 2 };
    let rho = random_density(dims, 2, args.seed).map_err(internal)?;
    let cfg = EofConfig::with_seed(args.seed);
    let check = subadditivity_check(&rho, &cfg).map_err(internal)?;
    let mut report = build_report("demo:subadditivity", &rho, &cfg, false)?;
    report.demo = Some(json!({
        "doubled_eof": check.doubled,
        "twice_single_eof": 2.0 * check.single,
        "excess": check.excess(),
    }));
    Ok(vec![report])
}

fn convexity(args: &DemoArgs) -> CliResult<Vec<Report>> {
    let dims = BipartiteDims { d1: 2, d2: 2 };
    let cfg = EofConfig::with_seed(args.seed);
    let mut reports = Vec::new();
    for k in 0u64..5 {
        let lambda = (k as f64 + 1.0) / 6.0;
        let rank1 = 1 + (k as usize % 4);
        let rank2 = 1 + ((k as usize + 2) % 4);
        let seed1 = args.seed.wrapping_mul(1000).wrapping_add(2 * k);
        let seed2 = args.seed.wrapping_mul(1000).wrapping_add(2 * k + 1);
        let rho1 = random_density(dims, rank1, seed1).map_err(internal)?;
        let rho2 = random_density(dims, rank2, seed2).map_err(internal)?;
        let left = eof_estimate(&rho1, &cfg).map_err(internal)?;
        let right = eof_estimate(&rho2, &cfg).map_err(internal)?;
        let mixture = DensityMatrix::mix(&rho1, &rho2, lambda).map_err(internal)?;
        let warm = mix_ensembles(&left.witness, &right.witness, lambda).map_err(internal)?;
        let mixed = eof_estimate_with_starts(&mixture, &cfg, &[warm]).map_err(internal)?;
        let gap = lambda * left.value + (1.0 - lambda) * right.value - mixed.value;
        let mut report =
            build_report_from_estimate("demo:convexity", &mixture, &cfg, false, &mixed)?;
        report.demo = Some(json!({
            "lambda": lambda,
            "eof_left": left.value,
            "eof_right": right.value,
            "gap": gap,
        }));
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn args(seed: u64) -> DemoArgs {
        DemoArgs {
            d: 3,
            grid: 4,
            seed,
        }
    }

    #[test]
    fn unknown_demo_is_its_own_error() {
        match run_demo("bogus", &args(1)) {
            Err(CliError::UnknownDemo(name)) => assert_eq!(name, "bogus"),
            other => panic!("expected UnknownDemo, got {other:?}"),
        }
    }

    #[test]
    fn singlet_demo_reports_ln2() {
        let reports = run_demo("singlet", &args(1)).unwrap();
        assert_eq!(reports.len(), 1);
        assert!((reports[0].eof_value - LN_2).abs() < 1e-6);
    }

    #[test]
    fn maxent_demo_reports_ln3() {
        let reports = run_demo("maxent-d", &args(2)).unwrap();
        assert!((reports[0].eof_value - 3f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn sweep_has_grid_plus_one_rows() {
        let reports = run_demo("werner-sweep", &args(3)).unwrap();
        assert_eq!(reports.len(), 5);
        // endpoints: maximally mixed and singlet
        assert!(reports[0].eof_value < 1e-6);
        assert!((reports[4].eof_value - LN_2).abs() < 1e-6);
    }

    #[test]
    fn convexity_demo_gaps_are_nonnegative() {
        let reports = run_demo("convexity", &args(4)).unwrap();
        assert_eq!(reports.len(), 5);
        for r in reports {
            let gap = r.demo.as_ref().unwrap()["gap"].as_f64().unwrap();
            assert!(gap >= -1e-8, "gap {gap}");
        }
    }
}
