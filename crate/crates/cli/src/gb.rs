use std::path::Path;

use octonode_core::{Field, Ideal, IdealFile, Polynomial};
use serde::Serialize;

use crate::{read_file, with_field, CliError, Outcome, RunConfig, EXIT_PASS};

#[derive(Debug, Serialize)]
pub struct GbListing {
    pub vars: Vec<String>,
    pub field: String,
    pub order: String,
    pub basis: Vec<String>,
    pub leading_terms: Vec<String>,
}

pub fn run(path: &Path, config: &RunConfig) -> Result<Outcome, CliError> {
    let file = IdealFile::parse(&read_file(path)?).map_err(|e| CliError::in_file(path, e))?;
    let listing = with_field!(config.resolve_field(file.field), |field| listing(&file, field, path, config)?);
    Ok(Outcome::json(&listing, EXIT_PASS))
}

fn listing<F: Field>(file: &IdealFile, field: F, path: &Path, config: &RunConfig) -> Result<GbListing, CliError> {
    let (ring, gens) = file.build(field, config.order).map_err(|e| CliError::in_file(path, e))?;
    let ideal = Ideal::new(&ring, gens).with_budget(config.budget());
    let gb = ideal.groebner(config.order)?;
    let one = ring.field().one();
    Ok(GbListing {
        vars: file.vars.clone(),
        field: ring.field().spec().to_string(),
        order: config.order.to_string(),
        basis: gb.elements().iter().map(|g| g.to_string()).collect(),
        leading_terms: gb
            .leading_monomials()
            .into_iter()
            .map(|m| Polynomial::monomial(&ring, m, one.clone()).to_string())
            .collect(),
    })
}
