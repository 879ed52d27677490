use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, ValueEnum};
use octonode_core::curve::PRESETS;
use octonode_core::invariants::{serre_gamma, METHOD_GAMMA_FLOOR};
use octonode_core::{bundle_invariants, degree_nine_obstruction, BundleInvariants, CurveMapSpec, Obstruction};
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::checks;
use crate::octic::search;
use crate::{with_field, CliError, Outcome, RunConfig, EXIT_PASS};

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PredictArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<i64>,
    /// Degree of an elliptic curve used in the Serre construction
    #[arg(long)]
    pub serre_degree: Option<i64>,
}

#[derive(Debug, Serialize)]
pub struct SerrePrediction {
    pub serre_degree: i64,
    #[serde(flatten)]
    pub invariants: BundleInvariants,
    pub obstruction: Obstruction,
}

pub fn predict(args: &PredictArgs) -> Result<Outcome, CliError> {
    match (args.gamma, args.serre_degree) {
        (Some(g), _) => Ok(Outcome::json(&bundle_invariants(g), EXIT_PASS)),
        (None, Some(d)) => Ok(Outcome::json(
            &SerrePrediction {
                serre_degree: d,
                invariants: bundle_invariants(serre_gamma(d)),
                obstruction: degree_nine_obstruction(d),
            },
            EXIT_PASS,
        )),
        (None, None) => Err(CliError::Input("one of --gamma or --serre-degree is required".into())),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s.split_once("..").unwrap_or((s, s));
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    let hi: i64 = hi.trim_start_matches('=').trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Markdown,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Split types, inclusive, e.g. 0..4
    #[arg(long, default_value = "0..4", value_parser = parse_range)]
    pub a: RangeInclusive<i64>,
    /// Degrees of elliptic curves for the Serre rows, inclusive
    #[arg(long, default_value = "5..8", value_parser = parse_range)]
    pub d: RangeInclusive<i64>,
    /// Extra values of gamma to tabulate
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-24,-3,5,13")]
    pub gammas: Vec<i64>,
    /// Only tabulate predictions; skip the certification runs
    #[arg(long)]
    pub predict_only: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowStatus {
    Certified,
    NotCertified,
    CurveVerified,
    Predicted,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitRow {
    pub a: i64,
    #[serde(flatten)]
    pub invariants: BundleInvariants,
    pub status: RowStatus,
    /// Present only for certified rows.
    pub certified_nodes: Option<u64>,
    pub seed: Option<u64>,
    pub attempts: Option<u32>,
    pub failures: Vec<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SerreRow {
    pub degree: i64,
    #[serde(flatten)]
    pub invariants: BundleInvariants,
    pub obstructed: bool,
    pub status: RowStatus,
    pub curve_preset: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub field: String,
    pub base_seed: u64,
    pub split: Vec<SplitRow>,
    pub serre: Vec<SerreRow>,
    pub gamma: Vec<BundleInvariants>,
    pub method_maximum: BundleInvariants,
}

impl Table {
    pub fn all_certified(&self) -> bool {
        self.split.iter().all(|r| matches!(r.status, RowStatus::Certified | RowStatus::Predicted))
            && self.serre.iter().all(|r| matches!(r.status, RowStatus::CurveVerified | RowStatus::Predicted))
    }
}

fn split_row(a: i64, config: &RunConfig, predict_only: bool) -> SplitRow {
    let mut row = SplitRow {
        a,
        invariants: bundle_invariants(a * a),
        status: RowStatus::Predicted,
        certified_nodes: None,
        seed: None,
        attempts: None,
        failures: Vec::new(),
        error: None,
    };
    if predict_only {
        return row;
    }
    let outcome: Result<_, CliError> = (|| {
        let a = u32::try_from(a).ok().filter(|&a| a <= 4).ok_or_else(|| CliError::Input(format!("split type {a} outside 0..=4")))?;
        with_field!(config.resolve_field(None), |f| search(f, a, config))
    })();
    match outcome {
        Ok(out) => {
            let search = out.search.expect("random search records its attempts");
            row.attempts = Some(search.attempts);
            row.seed = search.accepted_seed;
            if out.report.certified {
                row.status = RowStatus::Certified;
                row.certified_nodes = out.report.node_degree;
            } else {
                row.status = RowStatus::NotCertified;
                row.failures = out.report.failures;
            }
        }
        Err(e) => {
            row.status = RowStatus::Error;
            row.error = Some(e.to_string());
        }
    }
    row
}

/// Presets realizing an elliptic curve of the given degree.
fn preset_for(degree: i64) -> Option<&'static str> {
    match degree {
        5 => Some("elliptic-quintic"),
        8 => Some("paper-degree8"),
        _ => None,
    }
}

fn serre_row(d: i64, config: &RunConfig, predict_only: bool) -> SerreRow {
    let obstruction = degree_nine_obstruction(d);
    let mut row = SerreRow {
        degree: d,
        invariants: bundle_invariants(obstruction.gamma),
        obstructed: obstruction.obstructed,
        status: RowStatus::Predicted,
        curve_preset: None,
        error: None,
    };
    let Some(name) = preset_for(d).filter(|_| !predict_only) else { return row };
    debug_assert!(PRESETS.contains(&name));
    row.curve_preset = Some(name.to_string());
    let report: Result<_, CliError> = (|| {
        with_field!(config.resolve_field(None), |f| Ok(octonode_core::curve_report(&CurveMapSpec::preset(name, f)?)?))
    })();
    match report {
        Ok(r) if r.degree_d == d && r.arithmetic_genus == 1 && r.y_smooth && checks(&r, Some(name)).passed() => {
            row.status = RowStatus::CurveVerified;
        }
        Ok(r) => {
            row.status = RowStatus::Error;
            row.error = Some(format!("preset gave degree {} genus {}", r.degree_d, r.arithmetic_genus));
        }
        Err(e) => {
            row.status = RowStatus::Error;
            row.error = Some(e.to_string());
        }
    }
    row
}

pub fn build_table(args: &TableArgs, config: &RunConfig) -> Result<Table, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Input(format!("worker pool: {e}")))?;
    enum Job {
        Split(i64),
        Serre(i64),
    }
    enum Row {
        Split(SplitRow),
        Serre(SerreRow),
    }
    let jobs: Vec<Job> = args.a.clone().map(Job::Split).chain(args.d.clone().map(Job::Serre)).collect();
    let rows: Vec<Row> = pool.install(|| {
        jobs.par_iter()
            .map(|job| match *job {
                Job::Split(a) => Row::Split(split_row(a, config, args.predict_only)),
                Job::Serre(d) => Row::Serre(serre_row(d, config, args.predict_only)),
            })
            .collect()
    });
    let (mut split, mut serre) = (Vec::new(), Vec::new());
    for row in rows {
        match row {
            Row::Split(r) => split.push(r),
            Row::Serre(r) => serre.push(r),
        }
    }
    Ok(Table {
        field: config.resolve_field(None).to_string(),
        base_seed: config.seed,
        split,
        serre,
        gamma: args.gammas.iter().map(|&g| bundle_invariants(g)).collect(),
        method_maximum: bundle_invariants(METHOD_GAMMA_FLOOR),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status(s: RowStatus) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn markdown(t: &Table) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "## Split bundles O + O(a) over {} (base seed {})\n", t.field, t.base_seed);
    let _ = writeln!(s, "| a | gamma | predicted nodes | certified nodes | c3(X) | (-K)^4 | status |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for r in &t.split {
        let certified = r.certified_nodes.map_or("-".to_string(), |n| n.to_string());
        let i = &r.invariants;
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.a, i.gamma, i.predicted_nodes, certified, i.c3_x, i.minus_k_fourth, status(r.status)
        );
    }
    let _ = writeln!(s, "\n## Serre construction from elliptic curves of degree d\n");
    let _ = writeln!(s, "| d | gamma | predicted nodes | c3(X) | (-K)^4 | obstructed | status |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for r in &t.serre {
        let i = &r.invariants;
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.degree, i.gamma, i.predicted_nodes, i.c3_x, i.minus_k_fourth, yes(r.obstructed), status(r.status)
        );
    }
    let _ = writeln!(s, "\n## gamma\n");
    let _ = writeln!(s, "| gamma | predicted nodes | c3(X) | admissible | within method bound |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for i in &t.gamma {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            i.gamma, i.predicted_nodes, i.c3_x, yes(i.admissible), yes(i.within_method_bound)
        );
    }
    let m = &t.method_maximum;
    let _ = writeln!(s, "\nMethod maximum: {} nodes at gamma = {}.", m.predicted_nodes, m.gamma);
    s
}

pub fn run(args: &TableArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let table = build_table(args, config)?;
    let code = if table.all_certified() { EXIT_PASS } else { crate::EXIT_CERTIFICATION_FAILED };
    Ok(match args.format {
        TableFormat::Json => Outcome::json(&table, code),
        TableFormat::Markdown => Outcome { text: markdown(&table), code },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..4").unwrap(), 0..=4);
        assert_eq!(parse_range("5..=8").unwrap(), 5..=8);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn prediction_only_table() {
        let args = TableArgs {
            a: 0..=4,
            d: 5..=9,
            gammas: vec![-24, 5],
            predict_only: true,
            format: TableFormat::Markdown,
        };
        let t = build_table(&args, &RunConfig::default()).unwrap();
        let nodes: Vec<i64> = t.split.iter().map(|r| r.invariants.predicted_nodes).collect();
        assert_eq!(nodes, [64, 60, 48, 28, 0]);
        assert!(t.split.iter().all(|r| r.certified_nodes.is_none()));
        assert!(t.serre.last().unwrap().obstructed);
        let md = markdown(&t);
        assert!(md.contains("| 8 | -16 | 128 | -40 | 0 | no | PREDICTED |"), "{md}");
        assert!(md.contains("Method maximum: 160 nodes at gamma = -24."));
    }
}
