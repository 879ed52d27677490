use std::path::{Path, PathBuf};

use clap::Args;
use octonode_core::formats::TripleData;
use octonode_core::{
    run_pipeline, Field, FieldSpec, MonomialOrder, OcticReport, PipelineOptions, Ring, SectionTriple, TripleFile,
    ZeroDimDegree,
};
use serde::Serialize;

use crate::{read_file, with_field, CliError, Outcome, RunConfig, EXIT_PRECONDITION};

/// Seeds tried by the random search before a row is reported NOT_CERTIFIED.
pub const SEARCH_ATTEMPTS: u32 = 10;

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OcticArgs {
    /// Split type a of O + O(a); sections are drawn from --seed
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4))]
    pub a: Option<u32>,
    #[arg(long)]
    pub triple: Option<PathBuf>,
}

/// The k-th seed of a search starting from `base`; the first is `base` itself.
pub fn derive_seed(base: u64, k: u32) -> u64 {
    if k == 0 {
        return base;
    }
    // splitmix64 finalizer
    let mut z = base.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k as u64));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Search {
    pub base_seed: u64,
    pub attempts: u32,
    /// Seed of the first instance with smooth X and Sing(B) = P, if any.
    pub accepted_seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ListedPoints {
    pub count: usize,
    pub distinct: bool,
    pub on_node_scheme: bool,
    pub matches_node_degree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OcticOutput {
    #[serde(flatten)]
    pub report: OcticReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<Search>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub listed_points: Option<ListedPoints>,
}

impl OcticOutput {
    pub fn passed(&self) -> bool {
        self.report.certified && self.listed_points.as_ref().is_none_or(|p| p.matches_node_degree)
    }
}

#[derive(Debug, Serialize)]
pub struct Consensus<T> {
    pub primes: Vec<u64>,
    pub agree: bool,
    pub runs: Vec<T>,
}

fn options(config: &RunConfig, seed: Option<u64>) -> PipelineOptions {
    PipelineOptions { seed, budget: config.budget(), order: config.order, ..PipelineOptions::default() }
}

/// Draw triples from derived seeds until one gives a smooth X with
/// Sing(B) = P; the last report is returned when none does.
pub fn search<F: Field>(field: F, a: u32, config: &RunConfig) -> Result<OcticOutput, CliError> {
    let ring = Ring::new(field, &["z0", "z1", "z2", "z3"], MonomialOrder::GrevLex);
    let mut last = None;
    for k in 0..SEARCH_ATTEMPTS {
        let seed = derive_seed(config.seed, k);
        let triple = SectionTriple::random(&ring, a, seed)?;
        let report = match run_pipeline(&triple, &options(config, Some(seed))) {
            Ok(r) => r,
            Err(octonode_core::OcticError::DegenerateOctic) => continue,
            Err(e) => return Err(e.into()),
        };
        let accepted = report.X_smooth && report.sing_equals_P;
        let search = Search { base_seed: config.seed, attempts: k + 1, accepted_seed: accepted.then_some(seed) };
        let out = OcticOutput { report, search: Some(search), listed_points: None };
        if accepted {
            return Ok(out);
        }
        last = Some(out);
    }
    last.ok_or_else(|| CliError::Precondition(format!("every one of {SEARCH_ATTEMPTS} triples gave a degenerate octic")))
}

fn same_point<F: Field>(field: &F, p: &[F::Elem], q: &[F::Elem]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| field.is_zero(&field.sub(&field.mul(&p[i], &q[j]), &field.mul(&p[j], &q[i])))))
}

fn check_points<F: Field>(data: &TripleData<F>, report: &OcticReport) -> ListedPoints {
    let field = data.triple.ring().field();
    let t = &data.triple;
    let pts = &data.points;
    let nonzero = pts.iter().all(|p| p.iter().any(|c| !field.is_zero(c)));
    let distinct = nonzero && (0..pts.len()).all(|i| (0..i).all(|j| !same_point(field, &pts[i], &pts[j])));
    let on = pts.iter().all(|p| [&t.f, &t.g, &t.h].iter().all(|s| field.is_zero(&s.evaluate(p))));
    ListedPoints {
        count: pts.len(),
        distinct,
        on_node_scheme: on,
        matches_node_degree: distinct && on && report.node_degree == Some(pts.len() as u64),
    }
}

fn from_triple<F: Field>(field: F, path: &Path, file: &TripleFile, config: &RunConfig) -> Result<OcticOutput, CliError> {
    let data = file.build(field).map_err(|e| CliError::in_file(path, e))?;
    let report = run_pipeline(&data.triple, &options(config, None))?;
    let listed_points = (!data.points.is_empty()).then(|| check_points(&data, &report));
    Ok(OcticOutput { report, search: None, listed_points })
}

fn one_run(args: &OcticArgs, field: FieldSpec, config: &RunConfig) -> Result<OcticOutput, CliError> {
    match (&args.a, &args.triple) {
        (Some(a), _) => with_field!(field, |f| search(f, *a, config)),
        (None, Some(path)) => {
            let file = TripleFile::parse(&read_file(path)?).map_err(|e| CliError::in_file(path, e))?;
            with_field!(field, |f| from_triple(f, path, &file, config))
        }
        (None, None) => Err(CliError::Input("one of --a or --triple is required".into())),
    }
}

fn file_field(args: &OcticArgs) -> Result<Option<FieldSpec>, CliError> {
    match &args.triple {
        Some(path) => Ok(TripleFile::parse(&read_file(path)?).map_err(|e| CliError::in_file(path, e))?.field),
        None => Ok(None),
    }
}

fn agree(runs: &[OcticOutput]) -> bool {
    let key = |o: &OcticOutput| {
        let r = &o.report;
        (r.node_degree, r.sing_equals_P, r.all_A1, r.X_smooth, r.tjurina_degree, r.certified)
    };
    runs.windows(2).all(|w| key(&w[0]) == key(&w[1]))
}

pub fn run(args: &OcticArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    if config.consensus_primes.is_empty() {
        let out = one_run(args, config.resolve_field(file_field(args)?), config)?;
        if out.report.node_scheme == ZeroDimDegree::NotZeroDimensional {
            return Ok(Outcome::json(&out, EXIT_PRECONDITION));
        }
        let passed = out.passed();
        return Ok(Outcome::pass_if(&out, passed));
    }
    let runs = config
        .consensus_primes
        .iter()
        .map(|&p| one_run(args, FieldSpec::PrimeField(p as u32), config))
        .collect::<Result<Vec<_>, _>>()?;
    let consensus = Consensus { primes: config.consensus_primes.clone(), agree: agree(&runs), runs };
    let passed = consensus.agree && consensus.runs.iter().all(OcticOutput::passed);
    Ok(Outcome::pass_if(&consensus, passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use octonode_core::Fp;

    #[test]
    fn derived_seeds_are_distinct() {
        let seeds: Vec<u64> = (0..SEARCH_ATTEMPTS).map(|k| derive_seed(7, k)).collect();
        assert_eq!(seeds[0], 7);
        let mut sorted = seeds.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn projective_point_comparison() {
        let f = Fp::new(101).unwrap();
        assert!(same_point(&f, &[1, 2, 3, 4], &[2, 4, 6, 8]));
        assert!(!same_point(&f, &[1, 2, 3, 4], &[1, 2, 3, 5]));
    }
}
