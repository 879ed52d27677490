use std::path::PathBuf;

use octonode_core::{Budget, FieldSpec, MonomialOrder};

use crate::CliError;

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// `None` lets an input file choose its field; otherwise it overrides the file.
    pub field: Option<FieldSpec>,
    pub order: MonomialOrder,
    pub seed: u64,
    pub spair_budget: usize,
    pub degree_budget: u32,
    pub consensus_primes: Vec<u64>,
    pub output_path: Option<PathBuf>,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let budget = Budget::default();
        RunConfig {
            field: None,
            order: MonomialOrder::GrevLex,
            seed: 0,
            spair_budget: budget.max_pairs,
            degree_budget: budget.max_degree,
            consensus_primes: Vec::new(),
            output_path: None,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.spair_budget == 0 || self.degree_budget == 0 {
            return Err(CliError::Input("budgets must be positive".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Input("--workers must be positive".into()));
        }
        for (i, &p) in self.consensus_primes.iter().enumerate() {
            FieldSpec::prime(p).map_err(|e| CliError::Input(format!("consensus: {e}")))?;
            if self.consensus_primes[..i].contains(&p) {
                return Err(CliError::Input(format!("consensus prime {p} repeated")));
            }
        }
        Ok(())
    }

    pub fn budget(&self) -> Budget {
        Budget { max_pairs: self.spair_budget, max_degree: self.degree_budget }
    }

    /// Command-line field, then the file's field, then F_32003.
    pub fn resolve_field(&self, from_file: Option<FieldSpec>) -> FieldSpec {
        self.field.or(from_file).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consensus_primes_are_checked() {
        let mut c = RunConfig { consensus_primes: vec![32003, 65537], ..Default::default() };
        assert!(c.validate().is_ok());
        c.consensus_primes = vec![3, 7];
        assert!(c.validate().is_err());
        c.consensus_primes = vec![7, 7];
        assert!(c.validate().is_err());
        c.consensus_primes = vec![9];
        assert!(c.validate().is_err());
    }

    #[test]
    fn field_precedence() {
        let c = RunConfig::default();
        assert_eq!(c.resolve_field(None), FieldSpec::PrimeField(32003));
        assert_eq!(c.resolve_field(Some(FieldSpec::Rationals)), FieldSpec::Rationals);
        let c = RunConfig { field: Some(FieldSpec::PrimeField(101)), ..Default::default() };
        assert_eq!(c.resolve_field(Some(FieldSpec::Rationals)), FieldSpec::PrimeField(101));
    }
}
