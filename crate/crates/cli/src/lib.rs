//! Command-line workbench: loads an algebra spec, builds the catalog and Ext
//! tables, enumerates exact structures and runs the theorem sweeps.

pub mod cache;
pub mod config;
pub mod report;
pub mod sweeps;

use std::fmt::Display;

use exactcat_core::algebra::{Algebra, AlgebraError, AlgebraSpec};
use exactcat_core::exact::{enumerate_exact_structures, Enumeration, ExactError};
use exactcat_core::ext::ExtTable;
use exactcat_core::Category;
use thiserror::Error;

use cache::Cache;
use config::{spec_hash, ConfigEcho, Theorem, WorkbenchConfig};
use report::{CatalogSummary, EnumerationSummary, RunReport};
use sweeps::SweepContext;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("input error: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("computation failed: {0}")]
    Internal(String),
}

impl WorkbenchError {
    pub fn internal(e: impl Display) -> Self {
        WorkbenchError::Internal(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Input(_) => 2,
            WorkbenchError::Budget(_) => 3,
            WorkbenchError::Internal(_) => 1,
        }
    }
}

impl From<AlgebraError> for WorkbenchError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget { .. } => WorkbenchError::Budget(e.to_string()),
            other => WorkbenchError::Input(other.to_string()),
        }
    }
}

impl From<ExactError> for WorkbenchError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Budget { .. } => WorkbenchError::Budget(e.to_string()),
            other => WorkbenchError::Internal(other.to_string()),
        }
    }
}

/// Exit code of a finished run.
pub fn exit_code(r: &RunReport) -> i32 {
    if r.violations > 0 {
        1
    } else {
        0
    }
}

/// A loaded spec with its category, built or read from the cache.
pub struct Session {
    pub spec: AlgebraSpec,
    pub cat: Category,
    pub dim_bound: usize,
    pub bound: usize,
    pub budget: u128,
    spec_hash: String,
    cache: Cache,
}

impl Session {
    pub fn open(config: &WorkbenchConfig) -> Result<Session, WorkbenchError> {
        config.validate()?;
        let spec = config.load_spec()?;
        let alg = Algebra::from_spec(&spec)?;
        let dim_bound = config.dim_bound.unwrap_or(spec.bounds.dim);
        let hash = spec_hash(&spec);
        let cache = if config.use_cache {
            Cache::new(&config.cache_dir, &format!("{hash}-d{dim_bound}-v{}", env!("CARGO_PKG_VERSION")))
        } else {
            Cache::disabled()
        };
        let cat = match cache.get::<ExtTable>("category.json") {
            Some(mut ext) => {
                ext.reindex();
                Category::from_parts(alg, ext)
            }
            None => {
                let cat = Category::build(alg, dim_bound, config.budget)?;
                cache.put("category.json", &cat.ext);
                cat
            }
        };
        let bound = config.bound.unwrap_or_else(|| cat.default_bound().max(1));
        Ok(Session { spec, cat, dim_bound, bound, budget: config.budget, spec_hash: hash, cache })
    }

    pub fn enumeration(&self) -> Result<Enumeration, WorkbenchError> {
        let name = format!("enumeration-b{}.json", self.bound);
        if let Some(e) = self.cache.get::<Enumeration>(&name) {
            return Ok(e);
        }
        let e = enumerate_exact_structures(&self.cat, self.bound, self.budget)?;
        self.cache.put(&name, &e);
        Ok(e)
    }

    fn report(&self, command: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            config: ConfigEcho {
                spec_hash: self.spec_hash.clone(),
                dim_bound: self.dim_bound,
                bound: self.bound,
                budget: self.budget.to_string(),
            },
            catalog: CatalogSummary::new(&self.cat),
            ext_table: self.cat.ext.export(&self.cat.alg),
            enumeration: None,
            sweep: None,
            violations: 0,
        }
    }
}

pub fn cmd_catalog(s: &Session) -> Result<RunReport, WorkbenchError> {
    Ok(s.report("catalog"))
}

pub fn cmd_enumerate(s: &Session) -> Result<RunReport, WorkbenchError> {
    let e = s.enumeration()?;
    let summary = EnumerationSummary::new(&s.cat, &e)?;
    let mut r = s.report("enumerate");
    r.violations = summary.violations();
    r.enumeration = Some(summary);
    Ok(r)
}

pub fn cmd_verify(s: &Session, t: &Theorem) -> Result<RunReport, WorkbenchError> {
    let e = s.enumeration()?;
    let ctx = SweepContext::new(&s.cat, s.bound, s.budget)?;
    let sweep = sweeps::run(t, &ctx, &e.structures)?;
    let mut r = s.report(&format!("verify {}", t.id()));
    r.violations = sweep.violations.len();
    r.sweep = Some(sweep);
    Ok(r)
}
