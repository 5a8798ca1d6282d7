//! The finite module category under study: an algebra, its catalog of
//! indecomposables and the Ext¹ data between them.

use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, AlgebraError, Catalog, Module};
use crate::ext::ExtTable;
use crate::linalg::Field;

#[derive(Debug, Clone)]
pub struct Category {
    pub alg: Algebra,
    pub ext: ExtTable,
}

impl Category {
    pub fn build(alg: Algebra, dim_bound: usize, budget: u128) -> Result<Category, AlgebraError> {
        let catalog = Catalog::enumerate(&alg, dim_bound, budget)?;
        let ext = ExtTable::new(&alg, catalog);
        Ok(Category { alg, ext })
    }

    pub fn from_parts(alg: Algebra, ext: ExtTable) -> Category {
        Category { alg, ext }
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn catalog(&self) -> &Catalog {
        self.ext.catalog()
    }

    pub fn len(&self) -> usize {
        self.ext.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ext.is_empty()
    }

    pub fn module(&self, i: usize) -> &Module {
        self.ext.module(i)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.catalog().labels[i]
    }

    /// Default bound for axiom checks: twice the largest catalog dimension.
    pub fn default_bound(&self) -> usize {
        2 * self.catalog().max_dim()
    }

    /// Content hash of the catalog modules, stable across runs.
    pub fn fingerprint(&self) -> String {
        let bytes = serde_json::to_vec(&self.catalog().modules).expect("modules serialize");
        hex::encode(Sha256::digest(&bytes))
    }
}
