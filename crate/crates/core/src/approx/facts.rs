//! Memoized minimal approximations of catalog objects. Covers and envelopes
//! do not depend on the exact structure, so sweeps share them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{minimize, precover, preenvelope, ApproxKind, Minimality, Subcategory};
use crate::exact::SubfunctorExt;
use crate::ext::{Component, ExtError};
use crate::Category;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxFacts {
    pub object: usize,
    pub kind: ApproxKind,
    pub summands: Vec<usize>,
    pub certificate: Minimality,
    /// Epi for a cover, mono for an envelope.
    pub onto: bool,
    /// Sorted summands of the kernel (or cokernel) when `onto`.
    pub third: Option<Vec<usize>>,
    /// Class components of the resulting short exact sequence.
    pub components: Vec<Component>,
}

impl ApproxFacts {
    pub fn is_conflation(&self, f: &SubfunctorExt) -> bool {
        self.onto && self.components.iter().all(|c| f.get(c.right, c.left).contains(&c.coords))
    }

    pub fn third_in(&self, s: &Subcategory) -> bool {
        self.third.as_ref().is_some_and(|t| s.contains_all(t))
    }

    pub fn established(&self) -> bool {
        self.certificate != Minimality::NotEstablished
    }
}

type Table = Mutex<HashMap<Subcategory, Arc<Vec<ApproxFacts>>>>;

pub struct ApproxIndex<'a> {
    cat: &'a Category,
    covers: Table,
    envelopes: Table,
}

impl<'a> ApproxIndex<'a> {
    pub fn new(cat: &'a Category) -> Self {
        ApproxIndex { cat, covers: Mutex::default(), envelopes: Mutex::default() }
    }

    pub fn category(&self) -> &'a Category {
        self.cat
    }

    /// Minimal `sub`-precover of every catalog object.
    pub fn covers(&self, sub: &Subcategory) -> Result<Arc<Vec<ApproxFacts>>, ExtError> {
        self.get(&self.covers, sub, ApproxKind::Precover)
    }

    /// Minimal `sub`-preenvelope of every catalog object.
    pub fn envelopes(&self, sub: &Subcategory) -> Result<Arc<Vec<ApproxFacts>>, ExtError> {
        self.get(&self.envelopes, sub, ApproxKind::Preenvelope)
    }

    fn get(&self, table: &Table, sub: &Subcategory, kind: ApproxKind) -> Result<Arc<Vec<ApproxFacts>>, ExtError> {
        if let Some(v) = table.lock().expect("not poisoned").get(sub) {
            return Ok(v.clone());
        }
        let facts = (0..self.cat.len()).map(|a| compute(self.cat, sub, kind, a)).collect::<Result<Vec<_>, _>>()?;
        let facts = Arc::new(facts);
        table.lock().expect("not poisoned").entry(sub.clone()).or_insert(facts.clone());
        Ok(facts)
    }
}

fn compute(cat: &Category, sub: &Subcategory, kind: ApproxKind, a: usize) -> Result<ApproxFacts, ExtError> {
    let obj = cat.module(a);
    let raw = match kind {
        ApproxKind::Precover => precover(cat, sub, obj),
        ApproxKind::Preenvelope => preenvelope(cat, sub, obj),
    };
    let m = minimize(cat, &raw);
    let seq = match kind {
        ApproxKind::Precover => m.approx.kernel_sequence(cat),
        ApproxKind::Preenvelope => m.approx.cokernel_sequence(cat),
    };
    let (onto, third, components) = match seq {
        Some(s) => {
            let end = if kind == ApproxKind::Precover { &s.left } else { &s.right };
            let mut t = cat.catalog().identify(&cat.alg, end)?.summands;
            t.sort_unstable();
            (true, Some(t), cat.ext.components(&cat.alg, &s)?)
        }
        None => (false, None, Vec::new()),
    };
    let mut summands = m.approx.summands.clone();
    summands.sort_unstable();
    Ok(ApproxFacts { object: a, kind, summands, certificate: m.certificate, onto, third, components })
}
