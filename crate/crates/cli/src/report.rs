use std::fmt::Write;

use serde::Serialize;

use exactcat_core::approx::{subfunctor_to_pair, validate_balanced, ApproxIndex};
use exactcat_core::exact::{EnumeratedStructure, Enumeration, Provenance};
use exactcat_core::ext::ExtTableExport;
use exactcat_core::relative::rel_ext_table;
use exactcat_core::Category;

use crate::config::ConfigEcho;
use crate::sweeps::Sweep;
use crate::WorkbenchError;

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraSummary {
    pub p: u32,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub relations: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleSummary {
    pub index: usize,
    pub label: String,
    pub dims: Vec<usize>,
    pub projective: bool,
    pub injective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogSummary {
    pub algebra: AlgebraSummary,
    pub fingerprint: String,
    pub modules: Vec<ModuleSummary>,
}

impl CatalogSummary {
    pub fn new(cat: &Category) -> Self {
        let c = cat.catalog();
        CatalogSummary {
            algebra: AlgebraSummary {
                p: cat.field().p(),
                vertices: cat.alg.vertices(),
                arrows: cat.alg.arrows().to_vec(),
                relations: cat.alg.relations().len(),
                dim: cat.alg.dim(),
            },
            fingerprint: cat.fingerprint(),
            modules: (0..c.len())
                .map(|i| ModuleSummary {
                    index: i,
                    label: c.labels[i].clone(),
                    dims: c.modules[i].dims().to_vec(),
                    projective: c.projective[i],
                    injective: c.injective[i],
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomLine {
    pub axiom: String,
    pub cases: u64,
    pub exhaustive: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BalancedPairSummary {
    pub projectives: Vec<String>,
    pub injectives: Vec<String>,
    pub balanced: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureSummary {
    pub index: usize,
    pub provenance: Provenance,
    /// `dims[x][y]` of the chosen subspace of `Ext¹(C_x, C_y)`.
    pub dims: Vec<Vec<usize>>,
    pub total_dim: usize,
    pub projectives: Vec<String>,
    pub injectives: Vec<String>,
    pub enough_projectives: bool,
    pub enough_injectives: bool,
    pub axioms: Vec<AxiomLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_pair: Option<BalancedPairSummary>,
    /// Relative Ext¹ from resolutions matches the table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_ext_consistent: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationSummary {
    pub bound: usize,
    pub subfunctors: usize,
    pub exact: usize,
    pub eligible: usize,
    pub rejected: usize,
    pub structures: Vec<StructureSummary>,
}

fn labels(cat: &Category, s: &[usize]) -> Vec<String> {
    s.iter().map(|&i| cat.label(i).to_string()).collect()
}

fn summarize(cat: &Category, idx: &ApproxIndex, i: usize, s: &EnumeratedStructure) -> Result<StructureSummary, WorkbenchError> {
    let f = &s.structure;
    let (balanced_pair, relative_ext_consistent) = if s.is_eligible() {
        let (c, d) = subfunctor_to_pair(f);
        let b = validate_balanced(idx, &c, &d).map_err(WorkbenchError::internal)?;
        let t = rel_ext_table(cat, f, 1).map_err(WorkbenchError::internal)?;
        (
            Some(BalancedPairSummary {
                projectives: labels(cat, c.members()),
                injectives: labels(cat, d.members()),
                balanced: b.balanced,
            }),
            Some(t.consistent()),
        )
    } else {
        (None, None)
    };
    Ok(StructureSummary {
        index: i,
        provenance: f.provenance.clone(),
        dims: f.dims(),
        total_dim: f.total_dim(),
        projectives: labels(cat, &f.projectives()),
        injectives: labels(cat, &f.injectives()),
        enough_projectives: s.proj_inj.enough_projectives,
        enough_injectives: s.proj_inj.enough_injectives,
        axioms: s
            .axioms
            .checks
            .iter()
            .map(|c| AxiomLine { axiom: c.axiom.name().to_string(), cases: c.cases, exhaustive: c.exhaustive, passed: c.passed() })
            .collect(),
        balanced_pair,
        relative_ext_consistent,
    })
}

impl EnumerationSummary {
    pub fn new(cat: &Category, e: &Enumeration) -> Result<Self, WorkbenchError> {
        let idx = ApproxIndex::new(cat);
        let structures = e
            .structures
            .iter()
            .enumerate()
            .map(|(i, s)| summarize(cat, &idx, i, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EnumerationSummary {
            bound: e.bound,
            subfunctors: e.subfunctors,
            exact: e.structures.len(),
            eligible: e.eligible().count(),
            rejected: e.rejected.len(),
            structures,
        })
    }

    /// Eligible structures whose pair is unbalanced or whose relative Ext disagrees.
    pub fn violations(&self) -> usize {
        self.structures
            .iter()
            .filter(|s| s.balanced_pair.as_ref().is_some_and(|b| !b.balanced) || s.relative_ext_consistent == Some(false))
            .count()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: ConfigEcho,
    pub catalog: CatalogSummary,
    pub ext_table: ExtTableExport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    pub violations: usize,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.catalog;
        let a = &c.algebra;
        let _ = writeln!(
            out,
            "algebra: {} vertices, {} arrows, {} relations over F_{} (dimension {})",
            a.vertices,
            a.arrows.len(),
            a.relations,
            a.p,
            a.dim
        );
        let _ = writeln!(out, "spec {} dim bound {} axiom bound {}", &self.config.spec_hash[..12], self.config.dim_bound, self.config.bound);
        let _ = writeln!(out, "\nindecomposables: {}", c.modules.len());
        for m in &c.modules {
            let flags = match (m.projective, m.injective) {
                (true, true) => " proj inj",
                (true, false) => " proj",
                (false, true) => " inj",
                (false, false) => "",
            };
            let _ = writeln!(out, "  [{}] {}{}", m.index, m.label, flags);
        }
        let _ = writeln!(out, "\nExt¹ dimensions (row X, column Y):");
        for (x, row) in self.ext_table.dims.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "  {:>12}  {}", self.ext_table.labels[x], cells.join(" "));
        }
        if let Some(e) = &self.enumeration {
            let _ = writeln!(
                out,
                "\nsubfunctors: {}  exact structures: {}  with enough projectives and injectives: {}  rejected: {}",
                e.subfunctors, e.exact, e.eligible, e.rejected
            );
            for s in &e.structures {
                let _ = writeln!(
                    out,
                    "  #{} total dim {}{}{}",
                    s.index,
                    s.total_dim,
                    if s.enough_projectives { " enough-proj" } else { "" },
                    if s.enough_injectives { " enough-inj" } else { "" }
                );
                let _ = writeln!(out, "     projectives {{{}}}", s.projectives.join(", "));
                let _ = writeln!(out, "     injectives  {{{}}}", s.injectives.join(", "));
                let axioms: Vec<String> =
                    s.axioms.iter().map(|l| format!("{}:{}{}", l.axiom, l.cases, if l.passed { "" } else { "!" })).collect();
                let _ = writeln!(out, "     axioms {}", axioms.join(" "));
                if let Some(b) = &s.balanced_pair {
                    let _ = writeln!(out, "     balanced pair: {}", if b.balanced { "yes" } else { "NO" });
                }
                if let Some(r) = s.relative_ext_consistent {
                    let _ = writeln!(out, "     relative Ext¹ matches table: {}", if r { "yes" } else { "NO" });
                }
            }
        }
        if let Some(s) = &self.sweep {
            let _ = writeln!(out, "\nverify {}: {}", s.theorem, s.title);
            let _ = writeln!(out, "  structures {}  cases {}  bound {}", s.structures, s.cases, s.bound);
            for (k, v) in &s.statistics {
                let _ = writeln!(out, "  {k}: {v}");
            }
            if !s.vacuous.is_empty() {
                let _ = writeln!(out, "  vacuous: {}", s.vacuous.join(", "));
            }
            for e in &s.examples {
                let _ = writeln!(out, "  example{}: {} {}", structure_tag(e.structure), e.message, e.witness);
            }
            for v in &s.violations {
                let _ = writeln!(out, "  VIOLATION{}: {} {}", structure_tag(v.structure), v.message, v.witness);
            }
        }
        let _ = writeln!(out, "\nviolations: {}", self.violations);
        out
    }
}

fn structure_tag(s: Option<usize>) -> String {
    s.map(|i| format!(" #{i}")).unwrap_or_default()
}
