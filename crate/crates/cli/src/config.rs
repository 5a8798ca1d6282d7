use std::path::PathBuf;

use serde::Serialize;
use sha2::{Digest, Sha256};

use exactcat_core::algebra::AlgebraSpec;

use crate::WorkbenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Theorem {
    #[serde(rename = "2.3")]
    ConflationCriteria,
    #[serde(rename = "2.9")]
    PairBijection,
    #[serde(rename = "3.3")]
    Wakamatsu,
    #[serde(rename = "3.4")]
    CompleteHereditary,
    #[serde(rename = "3.5")]
    ResolvingApproximations,
    #[serde(rename = "3.6")]
    ClassicalRestriction,
    #[serde(rename = "4.3")]
    ProjectiveVanishing,
    #[serde(rename = "2.8-4")]
    Triangles,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::ConflationCriteria,
        Theorem::PairBijection,
        Theorem::Wakamatsu,
        Theorem::CompleteHereditary,
        Theorem::ResolvingApproximations,
        Theorem::ClassicalRestriction,
        Theorem::ProjectiveVanishing,
        Theorem::Triangles,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::ConflationCriteria => "2.3",
            Theorem::PairBijection => "2.9",
            Theorem::Wakamatsu => "3.3",
            Theorem::CompleteHereditary => "3.4",
            Theorem::ResolvingApproximations => "3.5",
            Theorem::ClassicalRestriction => "3.6",
            Theorem::ProjectiveVanishing => "4.3",
            Theorem::Triangles => "2.8-4",
        }
    }

    pub fn parse(s: &str) -> Result<Theorem, WorkbenchError> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| WorkbenchError::Input(format!("unknown theorem '{s}' (expected one of 2.3, 2.9, 3.3, 3.4, 3.5, 3.6, 4.3, 2.8-4)")))
    }

    pub fn title(&self) -> &'static str {
        match self {
            Theorem::ConflationCriteria => "conflations detected by relative projectives and injectives",
            Theorem::PairBijection => "exact structures versus balanced pairs",
            Theorem::Wakamatsu => "kernels of covers and cokernels of envelopes",
            Theorem::CompleteHereditary => "complete hereditary cotorsion pairs",
            Theorem::ResolvingApproximations => "approximations from resolving subcategories",
            Theorem::ClassicalRestriction => "restricting classical cotorsion pairs",
            Theorem::ProjectiveVanishing => "vanishing Ext from relative projectives",
            Theorem::Triangles => "balanced pairs from cotorsion triples",
        }
    }
}

#[derive(Debug, Clone)]
pub struct WorkbenchConfig {
    pub spec_path: PathBuf,
    /// Overrides `bounds.dim` of the spec.
    pub dim_bound: Option<usize>,
    /// Axiom verification bound; defaults to twice the largest catalog dimension.
    pub bound: Option<usize>,
    pub budget: u128,
    pub workers: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub use_cache: bool,
    pub cache_dir: PathBuf,
}

pub const DEFAULT_BUDGET: u128 = 1 << 32;

impl WorkbenchConfig {
    pub fn new(spec_path: impl Into<PathBuf>) -> Self {
        WorkbenchConfig {
            spec_path: spec_path.into(),
            dim_bound: None,
            bound: None,
            budget: DEFAULT_BUDGET,
            workers: None,
            format: Format::Text,
            out: None,
            use_cache: false,
            cache_dir: default_cache_dir(),
        }
    }

    pub fn validate(&self) -> Result<(), WorkbenchError> {
        if self.dim_bound == Some(0) || self.bound == Some(0) {
            return Err(WorkbenchError::Input("bounds must be positive".into()));
        }
        if self.budget == 0 {
            return Err(WorkbenchError::Input("budget must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(WorkbenchError::Input("worker count must be positive".into()));
        }
        Ok(())
    }

    pub fn load_spec(&self) -> Result<AlgebraSpec, WorkbenchError> {
        AlgebraSpec::from_path(&self.spec_path).map_err(|e| WorkbenchError::Input(e.to_string()))
    }
}

pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os("EXACTCAT_CACHE_DIR") {
        Some(d) => PathBuf::from(d),
        None => std::env::temp_dir().join("exactcat-cache"),
    }
}

/// Hash of the parsed spec, so formatting and comments do not matter.
pub fn spec_hash(spec: &AlgebraSpec) -> String {
    let bytes = serde_json::to_vec(spec).expect("spec serializes");
    hex::encode(Sha256::digest(&bytes))
}

/// Values the report echoes back; paths and cache settings are left out so
/// cached and uncached runs print the same thing.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub spec_hash: String,
    pub dim_bound: usize,
    pub bound: usize,
    pub budget: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.id()).unwrap(), t);
        }
        assert!(Theorem::parse("9.9").is_err());
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = AlgebraSpec::from_toml("[field]\np = 2\n[quiver]\nvertices = 2\narrows = [[0,1]]\n").unwrap();
        let b = AlgebraSpec::from_toml("# comment\n[quiver]\narrows = [ [0, 1] ]\nvertices = 2\n\n[field]\np=2\n").unwrap();
        assert_eq!(spec_hash(&a), spec_hash(&b));
    }

    #[test]
    fn rejects_zero_budget() {
        let mut c = WorkbenchConfig::new("x.toml");
        c.budget = 0;
        assert!(c.validate().is_err());
    }
}
