//! Theorem sweeps over the enumerated structures. Each sweep records case
//! counts next to its violations so an empty domain is visible.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use exactcat_core::approx::{
    check_resolving_approximations, check_classical_restriction, check_cotorsion_triples, check_complete_hereditary, check_wakamatsu, classical_pairs,
    extension_closed_subcategories, orthogonal_candidates, pair_to_subfunctor, subfunctor_to_pair, validate_balanced,
    ApproxIndex, CotorsionPair, PairError, Subcategory,
};
use exactcat_core::exact::{EnumeratedStructure, ExtensionDb, SubfunctorExt};
use exactcat_core::ext::ShortExactSequence;
use exactcat_core::relative::{conflation_tests, projective_vanishing_check};
use exactcat_core::Category;

use crate::config::Theorem;
use crate::WorkbenchError;

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<usize>,
    pub message: String,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep {
    pub theorem: String,
    pub title: String,
    pub bound: usize,
    pub structures: usize,
    pub cases: u64,
    pub statistics: BTreeMap<String, u64>,
    /// Case counters that stayed at zero.
    pub vacuous: Vec<String>,
    pub violations: Vec<Finding>,
    /// Notable non-violating instances.
    pub examples: Vec<Finding>,
    #[serde(skip)]
    counters: BTreeSet<String>,
}

impl Sweep {
    fn new(t: &Theorem, bound: usize, structures: usize) -> Sweep {
        Sweep {
            theorem: t.id().to_string(),
            title: t.title().to_string(),
            bound,
            structures,
            cases: 0,
            statistics: BTreeMap::new(),
            vacuous: Vec::new(),
            violations: Vec::new(),
            examples: Vec::new(),
            counters: BTreeSet::new(),
        }
    }

    fn add(&mut self, key: &str, n: u64) {
        *self.statistics.entry(key.to_string()).or_insert(0) += n;
    }

    /// Like `add`, for a counter whose zero value makes the sweep vacuous in part.
    fn count(&mut self, key: &str, n: u64) {
        self.counters.insert(key.to_string());
        self.add(key, n);
    }

    fn finish(mut self) -> Sweep {
        self.vacuous = self.counters.iter().filter(|k| self.statistics[*k] == 0).cloned().collect();
        if self.cases == 0 {
            self.vacuous.insert(0, "cases".into());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Shared inputs of every sweep.
pub struct SweepContext<'a> {
    pub cat: &'a Category,
    pub idx: ApproxIndex<'a>,
    pub db: ExtensionDb,
    pub bound: usize,
    pub budget: u128,
}

impl<'a> SweepContext<'a> {
    pub fn new(cat: &'a Category, bound: usize, budget: u128) -> Result<Self, WorkbenchError> {
        let db = ExtensionDb::build(cat, bound).map_err(WorkbenchError::internal)?;
        Ok(SweepContext { cat, idx: ApproxIndex::new(cat), db, bound, budget })
    }

    fn names(&self, s: &Subcategory) -> Vec<String> {
        s.members().iter().map(|&i| self.cat.label(i).to_string()).collect()
    }
}

pub fn run(t: &Theorem, ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    match t {
        Theorem::ConflationCriteria => conflation_criteria(ctx, structures),
        Theorem::PairBijection => pair_bijection(ctx, structures),
        Theorem::Wakamatsu => wakamatsu(ctx, structures),
        Theorem::CompleteHereditary => complete_hereditary(ctx, structures),
        Theorem::ResolvingApproximations => resolving_approximations(ctx, structures),
        Theorem::ClassicalRestriction => classical_restriction(ctx, structures),
        Theorem::ProjectiveVanishing => projective_vanishing(ctx, structures),
        Theorem::Triangles => triangles(ctx, structures),
    }
}

/// Indexed structures in the domain of the sweep.
fn eligible(structures: &[EnumeratedStructure]) -> Vec<(usize, &SubfunctorExt)> {
    structures.iter().enumerate().filter(|(_, s)| s.is_eligible()).map(|(i, s)| (i, &s.structure)).collect()
}

fn exact(structures: &[EnumeratedStructure]) -> Vec<(usize, &SubfunctorExt)> {
    structures.iter().enumerate().filter(|(_, s)| s.is_exact()).map(|(i, s)| (i, &s.structure)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceId {
    pub right: Vec<usize>,
    pub left: Vec<usize>,
    pub components: Vec<Vec<Vec<u32>>>,
}

/// Every class with indecomposable ends of total dimension at most `bound`,
/// split ones included, then the nonsplit classes with a sum end.
pub fn bounded_sequences(ctx: &SweepContext) -> Vec<(SequenceId, ShortExactSequence)> {
    let cat = ctx.cat;
    let mut ids = Vec::new();
    for x in 0..cat.len() {
        for y in 0..cat.len() {
            if cat.module(x).total_dim() + cat.module(y).total_dim() > ctx.bound {
                continue;
            }
            for coords in cat.field().all_vectors(cat.ext.dim(x, y)) {
                ids.push(SequenceId { right: vec![x], left: vec![y], components: vec![vec![coords]] });
            }
        }
    }
    for r in &ctx.db.records {
        if r.left.len() > 1 || r.right.len() > 1 {
            ids.push(SequenceId { right: r.right.clone(), left: r.left.clone(), components: r.components.clone() });
        }
    }
    ids.into_par_iter()
        .map(|id| {
            let s = cat.ext.realize_components(&cat.alg, &id.right, &id.left, &id.components);
            (id, s)
        })
        .collect()
}

fn conflation_criteria(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = eligible(structures);
    let mut sweep = Sweep::new(&Theorem::ConflationCriteria, ctx.bound, domain.len());
    sweep.count("conflations", 0);
    sweep.count("non_conflations", 0);
    let seqs = bounded_sequences(ctx);
    let results: Vec<Vec<_>> = domain
        .par_iter()
        .map(|&(i, f)| {
            seqs.iter()
                .map(|(id, s)| conflation_tests(ctx.cat, f, s).map(|t| (i, id, t)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(WorkbenchError::internal)?;
    for (i, id, t) in results.into_iter().flatten() {
        sweep.cases += 1;
        if t.by_membership {
            sweep.count("conflations", 1);
        } else {
            sweep.count("non_conflations", 1);
        }
        if !t.agree() {
            sweep.violations.push(Finding {
                structure: Some(i),
                message: "conflation criteria disagree".into(),
                witness: json!({ "sequence": id, "tests": t }),
            });
        }
    }
    sweep.count("sequences", seqs.len() as u64);
    sweep.count("structures_with_enough_projectives_and_injectives", domain.len() as u64);
    Ok(sweep.finish())
}

fn pair_bijection(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = eligible(structures);
    let mut sweep = Sweep::new(&Theorem::PairBijection, ctx.bound, domain.len());
    for key in ["balanced_pairs", "structure_round_trips", "pair_round_trips"] {
        sweep.count(key, 0);
    }
    sweep.count("structures_with_enough_projectives_and_injectives", domain.len() as u64);
    for (i, f) in domain {
        sweep.cases += 1;
        let (c, d) = subfunctor_to_pair(f);
        let balance = validate_balanced(&ctx.idx, &c, &d).map_err(WorkbenchError::internal)?;
        sweep.add("balance_classes_checked", balance.classes_checked);
        if !balance.balanced {
            sweep.violations.push(Finding {
                structure: Some(i),
                message: "induced pair is not balanced".into(),
                witness: serde_json::to_value(&balance).expect("serializes"),
            });
            continue;
        }
        sweep.count("balanced_pairs", 1);
        let back = match pair_to_subfunctor(ctx.cat, &c, &d, ctx.budget) {
            Ok(g) => g,
            Err(PairError::Budget { needed, budget }) => {
                return Err(WorkbenchError::Budget(format!("pair recovery needs {needed} classes, budget {budget}")))
            }
            Err(e) => {
                sweep.violations.push(Finding {
                    structure: Some(i),
                    message: format!("pair recovery failed: {e}"),
                    witness: json!({ "projectives": ctx.names(&c), "injectives": ctx.names(&d) }),
                });
                continue;
            }
        };
        if back.table() != f.table() {
            sweep.violations.push(Finding {
                structure: Some(i),
                message: "structure -> pair -> structure changed the table".into(),
                witness: json!({ "expected": f.dims(), "found": back.dims() }),
            });
            continue;
        }
        sweep.count("structure_round_trips", 1);
        let (c2, d2) = subfunctor_to_pair(&back);
        if c2 != c || d2 != d {
            sweep.violations.push(Finding {
                structure: Some(i),
                message: "pair -> structure -> pair changed the classes".into(),
                witness: json!({ "projectives": [ctx.names(&c), ctx.names(&c2)], "injectives": [ctx.names(&d), ctx.names(&d2)] }),
            });
            continue;
        }
        sweep.count("pair_round_trips", 1);
        sweep.examples.push(Finding {
            structure: Some(i),
            message: "balanced pair".into(),
            witness: json!({ "projectives": ctx.names(&c), "injectives": ctx.names(&d) }),
        });
    }
    Ok(sweep.finish())
}

fn wakamatsu(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = exact(structures);
    let mut sweep = Sweep::new(&Theorem::Wakamatsu, ctx.bound, domain.len());
    for key in ["extension_closed_subcategories", "covers_checked", "envelopes_checked"] {
        sweep.count(key, 0);
    }
    for &(i, f) in &domain {
        let subs = extension_closed_subcategories(&ctx.db, f);
        sweep.count("extension_closed_subcategories", subs.len() as u64);
        let reports = subs
            .par_iter()
            .map(|x| check_wakamatsu(&ctx.idx, &ctx.db, f, x))
            .collect::<Result<Vec<_>, _>>()
            .map_err(WorkbenchError::internal)?;
        for r in reports {
            sweep.cases += ctx.cat.len() as u64;
            sweep.count("covers_checked", r.covers_checked as u64);
            sweep.count("envelopes_checked", r.envelopes_checked as u64);
            sweep.add("covers_not_epi", r.covers_not_epi as u64);
            sweep.add("envelopes_not_mono", r.envelopes_not_mono as u64);
            sweep.add("not_established", r.not_established as u64);
            for v in r.violations {
                sweep.violations.push(Finding {
                    structure: Some(i),
                    message: format!(
                        "{} of {} has third term outside the orthogonal of {}",
                        if v.envelope { "envelope" } else { "cover" },
                        ctx.cat.label(v.object),
                        r.x.describe(ctx.cat)
                    ),
                    witness: serde_json::to_value(&v).expect("serializes"),
                });
            }
        }
    }
    Ok(sweep.finish())
}

fn complete_hereditary(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = eligible(structures);
    let mut sweep = Sweep::new(&Theorem::CompleteHereditary, ctx.bound, domain.len());
    sweep.count("complete_hereditary", 0);
    sweep.count("not_complete_hereditary", 0);
    for &(i, f) in &domain {
        let cands = orthogonal_candidates(f);
        let reports = cands
            .par_iter()
            .map(|(x, y)| check_complete_hereditary(&ctx.idx, &ctx.db, f, x, y))
            .collect::<Result<Vec<_>, _>>()
            .map_err(WorkbenchError::internal)?;
        for r in reports {
            sweep.cases += 1;
            sweep.count("complete_hereditary", r.cond3 as u64);
            sweep.count("not_complete_hereditary", !r.cond3 as u64);
            sweep.add("undetermined", r.undetermined as u64);
            if !r.agrees() && !r.undetermined {
                sweep.violations.push(Finding {
                    structure: Some(i),
                    message: format!("conditions disagree for ({}, {})", r.x.describe(ctx.cat), r.y.describe(ctx.cat)),
                    witness: json!({ "cond1": r.cond1, "cond2": r.cond2, "cond3": r.cond3, "x": ctx.names(&r.x), "y": ctx.names(&r.y) }),
                });
            }
        }
    }
    // The degenerate pairs of the abelian structure.
    let cat = ctx.cat;
    let ab = SubfunctorExt::abelian(cat);
    let all = Subcategory::all(cat.len());
    for (x, y) in [
        (Subcategory::new(cat.catalog().projectives()), all.clone()),
        (all.clone(), Subcategory::new(cat.catalog().injectives())),
    ] {
        let r = check_complete_hereditary(&ctx.idx, &ctx.db, &ab, &x, &y).map_err(WorkbenchError::internal)?;
        let finding = Finding {
            structure: None,
            message: format!("abelian structure: ({}, {})", x.describe(cat), y.describe(cat)),
            witness: json!({ "cond1": r.cond1, "cond2": r.cond2, "cond3": r.cond3 }),
        };
        if r.cond1 && r.cond2 && r.cond3 {
            sweep.add("degenerate_pairs_complete_hereditary", 1);
            sweep.examples.push(finding);
        } else {
            sweep.violations.push(finding);
        }
    }
    Ok(sweep.finish())
}

fn corollary_sweep(
    sweep: &mut Sweep,
    ctx: &SweepContext,
    i: usize,
    r: exactcat_core::approx::PairFamilyReport,
) {
    sweep.cases += r.cases.len() as u64;
    sweep.add("candidates_examined", r.examined as u64);
    sweep.count("hypothesis_held", r.cases.len() as u64);
    sweep.add("conclusion_held", r.cases.iter().filter(|c| c.holds).count() as u64);
    sweep.add("undetermined", r.cases.iter().filter(|c| c.undetermined).count() as u64);
    for c in r.cases.iter().filter(|c| !c.holds && !c.undetermined) {
        sweep.violations.push(Finding {
            structure: Some(i),
            message: format!("conclusion fails for ({}, {})", c.x.describe(ctx.cat), c.y.describe(ctx.cat)),
            witness: json!({ "x": ctx.names(&c.x), "y": ctx.names(&c.y) }),
        });
    }
}

fn resolving_approximations(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = eligible(structures);
    let mut sweep = Sweep::new(&Theorem::ResolvingApproximations, ctx.bound, domain.len());
    sweep.count("hypothesis_held", 0);
    for (i, f) in domain {
        let r = check_resolving_approximations(&ctx.idx, &ctx.db, f).map_err(WorkbenchError::internal)?;
        corollary_sweep(&mut sweep, ctx, i, r);
    }
    Ok(sweep.finish())
}

fn classical(ctx: &SweepContext) -> Result<Vec<CotorsionPair>, WorkbenchError> {
    classical_pairs(&ctx.idx, &ctx.db).map_err(WorkbenchError::internal)
}

fn classical_restriction(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = eligible(structures);
    let mut sweep = Sweep::new(&Theorem::ClassicalRestriction, ctx.bound, domain.len());
    sweep.count("hypothesis_held", 0);
    let pairs = classical(ctx)?;
    sweep.count("classical_complete_hereditary_pairs", pairs.len() as u64);
    for (i, f) in domain {
        let r = check_classical_restriction(&ctx.idx, &ctx.db, f, &pairs).map_err(WorkbenchError::internal)?;
        corollary_sweep(&mut sweep, ctx, i, r);
    }
    Ok(sweep.finish())
}

fn projective_vanishing(ctx: &SweepContext, structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let domain = exact(structures);
    let mut sweep = Sweep::new(&Theorem::ProjectiveVanishing, ctx.bound, domain.len());
    sweep.count("classes_checked", 0);
    sweep.count("both_hold", 0);
    let cat = ctx.cat;
    let jobs: Vec<(usize, &SubfunctorExt, usize)> =
        domain.iter().flat_map(|&(i, f)| (0..cat.len()).map(move |a| (i, f, a))).collect();
    let results = jobs
        .par_iter()
        .map(|&(i, f, a)| projective_vanishing_check(cat, f, cat.module(a), ctx.bound).map(|r| (i, a, r)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(WorkbenchError::internal)?;
    for (i, a, r) in results {
        sweep.cases += 1;
        sweep.count("classes_checked", r.classes_checked);
        sweep.count("both_hold", (r.lhs && r.rhs) as u64);
        sweep.add("both_fail", (!r.lhs && !r.rhs) as u64);
        let witness = json!({
            "object": cat.label(a),
            "lhs": r.lhs,
            "rhs": r.rhs,
            "projective_with_ext": r.lhs_witness.map(|p| cat.label(p).to_string()),
            "non_conflation": r.rhs_witness.as_ref().map(|(v, coords)| json!({ "end": cat.label(*v), "class": coords })),
        });
        if r.lhs != r.rhs {
            sweep.violations.push(Finding { structure: Some(i), message: "sides disagree".into(), witness });
        } else if !r.lhs {
            sweep.examples.push(Finding { structure: Some(i), message: "both sides fail".into(), witness });
        }
    }
    Ok(sweep.finish())
}

/// Depends only on the abelian structure.
fn triangles(ctx: &SweepContext, _structures: &[EnumeratedStructure]) -> Result<Sweep, WorkbenchError> {
    let mut sweep = Sweep::new(&Theorem::Triangles, ctx.bound, 1);
    let pairs = classical(ctx)?;
    sweep.count("classical_complete_hereditary_pairs", pairs.len() as u64);
    let cases = check_cotorsion_triples(&ctx.idx, &pairs).map_err(WorkbenchError::internal)?;
    for c in cases {
        sweep.cases += 1;
        let witness = json!({ "b": ctx.names(&c.b), "c": ctx.names(&c.c), "d": ctx.names(&c.d) });
        if c.balanced {
            sweep.add("balanced", 1);
            sweep.examples.push(Finding { structure: None, message: "balanced".into(), witness });
        } else {
            sweep.violations.push(Finding { structure: None, message: "(B, D) is not balanced".into(), witness });
        }
    }
    sweep.count("triangles", sweep.cases);
    Ok(sweep.finish())
}
