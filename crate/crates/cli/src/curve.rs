use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use octonode_core::{curve_report, CurveFile, CurveMapSpec, CurveReport, Field, FieldSpec};
use serde::Serialize;

use crate::octic::Consensus;
use crate::{read_file, with_field, CliError, Outcome, RunConfig};

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CurveArgs {
    /// paper-degree8, twisted-cubic or elliptic-quintic
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

/// Known answers for the built-in presets.
pub fn expected(preset: &str) -> Option<(BTreeMap<u32, usize>, &'static str)> {
    match preset {
        "paper-degree8" => Some((BTreeMap::from([(4, 3), (5, 4)]), "8t")),
        "twisted-cubic" => Some((BTreeMap::from([(2, 3)]), "3t + 1")),
        "elliptic-quintic" => Some((BTreeMap::from([(3, 5)]), "5t")),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CurveChecks {
    /// Linear Hilbert polynomial with nonnegative genus, equal to the preset's when known.
    pub hilbert: bool,
    /// Generator profile complete within the degree cap, equal to the preset's when known.
    pub profile: bool,
    pub cutout: bool,
}

impl CurveChecks {
    pub fn passed(&self) -> bool {
        self.hilbert && self.profile && self.cutout
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(flatten)]
    pub report: CurveReport,
    pub checks: CurveChecks,
}

pub fn checks(report: &CurveReport, preset: Option<&str>) -> CurveChecks {
    let expect = preset.and_then(expected);
    CurveChecks {
        hilbert: report.arithmetic_genus >= 0 && expect.as_ref().is_none_or(|(_, hp)| report.hilbert_poly == *hp),
        profile: report.profile_complete && expect.as_ref().is_none_or(|(p, _)| report.generator_profile == *p),
        cutout: report.quartic_cutout_equal,
    }
}

fn build<F: Field>(field: F, args: &CurveArgs, file: Option<&CurveFile>) -> Result<CurveMapSpec<F>, CliError> {
    match (&args.preset, file, &args.spec) {
        (Some(name), _, _) => Ok(CurveMapSpec::preset(name, field)?),
        (None, Some(file), Some(path)) => file.build(field).map_err(|e| CliError::in_file(path, e)),
        _ => Err(CliError::Input("one of --preset or --spec is required".into())),
    }
}

fn one_run(args: &CurveArgs, file: Option<&CurveFile>, field: FieldSpec) -> Result<CurveOutput, CliError> {
    let report = with_field!(field, |f| curve_report(&build(f, args, file)?)?);
    let checks = checks(&report, args.preset.as_deref());
    Ok(CurveOutput { preset: args.preset.clone(), report, checks })
}

pub fn run(args: &CurveArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let file = match &args.spec {
        Some(path) => Some(CurveFile::parse(&read_file(path)?).map_err(|e| CliError::in_file(path, e))?),
        None => None,
    };
    if config.consensus_primes.is_empty() {
        let field = config.resolve_field(file.as_ref().and_then(|f| f.field));
        let out = one_run(args, file.as_ref(), field)?;
        let passed = out.checks.passed();
        return Ok(Outcome::pass_if(&out, passed));
    }
    let runs = config
        .consensus_primes
        .iter()
        .map(|&p| one_run(args, file.as_ref(), FieldSpec::PrimeField(p as u32)))
        .collect::<Result<Vec<_>, _>>()?;
    let comparable = |o: &CurveOutput| {
        // basis coefficients are residues and differ between primes
        let mut r = o.report.clone();
        r.field.clear();
        r.curve_ideal.clear();
        (r, o.checks.clone())
    };
    let agree = runs.windows(2).all(|w| comparable(&w[0]) == comparable(&w[1]));
    let passed = agree && runs.iter().all(|o| o.checks.passed());
    Ok(Outcome::pass_if(&Consensus { primes: config.consensus_primes.clone(), agree, runs }, passed))
}
