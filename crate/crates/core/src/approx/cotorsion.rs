//! Relative cotorsion pairs, resolving subcategories and the sweeps over
//! them: the Wakamatsu-type kernel property of covers, the equivalence of
//! the three descriptions of complete hereditary pairs and its corollaries.

use serde::{Deserialize, Serialize};

use super::pairs::{orthogonal, validate_balanced, Side};
use super::{ApproxFacts, ApproxIndex, Subcategory};
use crate::exact::{ExtensionDb, ExtensionRecord, SubfunctorExt};
use crate::ext::ExtError;
#[cfg(test)]
use crate::Category;

/// Closure properties of a subcategory under the conflations of a structure
/// recorded in the extension database.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// Contains the relative projectives (resolving) or injectives (coresolving).
    pub contains_relative: bool,
    pub extension_closed: bool,
    /// Closed under kernels of deflations (resolving) or cokernels of inflations.
    pub two_out_of_three: bool,
    pub witness: Option<ExtensionRecord>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.contains_relative && self.extension_closed && self.two_out_of_three
    }
}

fn all_in(s: &Subcategory, v: &[usize]) -> bool {
    s.contains_all(v)
}

/// First conflation with end terms in `s` whose middle term leaves `s`.
pub fn extension_violation<'a>(db: &'a ExtensionDb, f: &'a SubfunctorExt, s: &Subcategory) -> Option<&'a ExtensionRecord> {
    db.conflations(f).find(|r| all_in(s, &r.left) && all_in(s, &r.right) && !all_in(s, &r.middle))
}

pub fn resolving(db: &ExtensionDb, f: &SubfunctorExt, x: &Subcategory) -> ClosureReport {
    let contains_relative = x.contains_all(&f.projectives());
    let ext = extension_violation(db, f, x);
    let kernel = db
        .conflations(f)
        .filter(|r| r.right.len() == 1)
        .find(|r| all_in(x, &r.right) && all_in(x, &r.middle) && !all_in(x, &r.left));
    ClosureReport {
        contains_relative,
        extension_closed: ext.is_none(),
        two_out_of_three: kernel.is_none(),
        witness: ext.or(kernel).cloned(),
    }
}

pub fn coresolving(db: &ExtensionDb, f: &SubfunctorExt, y: &Subcategory) -> ClosureReport {
    let contains_relative = y.contains_all(&f.injectives());
    let ext = extension_violation(db, f, y);
    let cokernel = db
        .conflations(f)
        .filter(|r| r.left.len() == 1)
        .find(|r| all_in(y, &r.left) && all_in(y, &r.middle) && !all_in(y, &r.right));
    ClosureReport {
        contains_relative,
        extension_closed: ext.is_none(),
        two_out_of_three: cokernel.is_none(),
        witness: ext.or(cokernel).cloned(),
    }
}

/// Outcome of searching for an approximation with the required third term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Search {
    Found,
    Absent,
    /// Minimality of the candidate was not certified, so absence is not proven.
    Undetermined,
}

/// Whether the object has an onto approximation (epi precover or mono
/// preenvelope) with third term in `target`, optionally required to be a
/// conflation. Checking the minimal approximation suffices: any other one is
/// it plus a trivial summand, whose third term contains the minimal one's.
fn approx_with_third(a: &ApproxFacts, target: &Subcategory, f: Option<&SubfunctorExt>) -> Search {
    let ok = a.onto && a.third_in(target) && f.is_none_or(|f| a.is_conflation(f));
    match (ok, a.established()) {
        (true, _) => Search::Found,
        (false, true) => Search::Absent,
        (false, false) => Search::Undetermined,
    }
}

fn all_found(results: impl IntoIterator<Item = Search>) -> Search {
    let mut out = Search::Found;
    for r in results {
        match r {
            Search::Absent => return Search::Absent,
            Search::Undetermined => out = Search::Undetermined,
            Search::Found => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionWitness {
    pub object: usize,
    /// `0 -> Y -> X -> M -> 0`: summands of `X` and `Y`.
    pub precover: Vec<usize>,
    pub kernel: Option<Vec<usize>>,
    /// `0 -> M -> Y' -> X' -> 0`: summands of `Y'` and `X'`.
    pub preenvelope: Vec<usize>,
    pub cokernel: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotorsionPair {
    pub x: Subcategory,
    pub y: Subcategory,
    /// `X = ⊥Y` and `Y = X^⊥`, recomputed from the table.
    pub is_pair: bool,
    pub complete: Search,
    pub hereditary: bool,
    /// Cross-check: `Y` coresolving.
    pub cohereditary: bool,
    pub witnesses: Vec<CompletionWitness>,
}

impl CotorsionPair {
    pub fn complete_hereditary(&self) -> bool {
        self.is_pair && self.complete == Search::Found && self.hereditary
    }
}

/// Completes `seed` to a pair by double orthogonals and evaluates it.
pub fn cotorsion_pair(
    idx: &ApproxIndex,
    db: &ExtensionDb,
    f: &SubfunctorExt,
    seed: &Subcategory,
    side: Side,
) -> Result<CotorsionPair, ExtError> {
    let (x, y) = match side {
        Side::Left => {
            let x = orthogonal(f, &orthogonal(f, seed, Side::Right), Side::Left);
            let y = orthogonal(f, &x, Side::Right);
            (x, y)
        }
        Side::Right => {
            let y = orthogonal(f, &orthogonal(f, seed, Side::Left), Side::Right);
            let x = orthogonal(f, &y, Side::Left);
            (x, y)
        }
    };
    evaluate_pair(idx, db, f, &x, &y)
}

pub fn evaluate_pair(
    idx: &ApproxIndex,
    db: &ExtensionDb,
    f: &SubfunctorExt,
    x: &Subcategory,
    y: &Subcategory,
) -> Result<CotorsionPair, ExtError> {
    let is_pair = orthogonal(f, y, Side::Left) == *x && orthogonal(f, x, Side::Right) == *y;
    let covers = idx.covers(x)?;
    let envelopes = idx.envelopes(y)?;
    let complete = all_found(
        covers
            .iter()
            .map(|c| approx_with_third(c, y, Some(f)))
            .chain(envelopes.iter().map(|e| approx_with_third(e, x, Some(f)))),
    );
    let witnesses = covers
        .iter()
        .zip(envelopes.iter())
        .map(|(c, e)| CompletionWitness {
            object: c.object,
            precover: c.summands.clone(),
            kernel: c.third.clone(),
            preenvelope: e.summands.clone(),
            cokernel: e.third.clone(),
        })
        .collect();
    Ok(CotorsionPair {
        x: x.clone(),
        y: y.clone(),
        is_pair,
        complete,
        hereditary: resolving(db, f, x).holds(),
        cohereditary: coresolving(db, f, y).holds(),
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WakamatsuViolation {
    pub object: usize,
    pub envelope: bool,
    pub approximation: Vec<usize>,
    pub third: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WakamatsuReport {
    pub x: Subcategory,
    /// Hypothesis; when false nothing else is checked.
    pub extension_closed: bool,
    pub closure_witness: Option<ExtensionRecord>,
    pub covers_checked: usize,
    pub envelopes_checked: usize,
    pub covers_not_epi: usize,
    pub envelopes_not_mono: usize,
    pub not_established: usize,
    pub violations: Vec<WakamatsuViolation>,
}

/// Kernels of epimorphic `X`-covers lie in `X^⊥` and cokernels of
/// monomorphic `X`-envelopes lie in `⊥X`, over every catalog object.
pub fn check_wakamatsu(
    idx: &ApproxIndex,
    db: &ExtensionDb,
    f: &SubfunctorExt,
    x: &Subcategory,
) -> Result<WakamatsuReport, ExtError> {
    let closure_witness = extension_violation(db, f, x).cloned();
    let mut r = WakamatsuReport {
        x: x.clone(),
        extension_closed: closure_witness.is_none(),
        closure_witness,
        covers_checked: 0,
        envelopes_checked: 0,
        covers_not_epi: 0,
        envelopes_not_mono: 0,
        not_established: 0,
        violations: Vec::new(),
    };
    if !r.extension_closed {
        return Ok(r);
    }
    let right = orthogonal(f, x, Side::Right);
    let left = orthogonal(f, x, Side::Left);
    for (facts, target, envelope) in [(idx.covers(x)?, &right, false), (idx.envelopes(x)?, &left, true)] {
        for a in facts.iter() {
            if !a.established() {
                r.not_established += 1;
                continue;
            }
            if !a.onto {
                if envelope {
                    r.envelopes_not_mono += 1;
                } else {
                    r.covers_not_epi += 1;
                }
                continue;
            }
            if envelope {
                r.envelopes_checked += 1;
            } else {
                r.covers_checked += 1;
            }
            if !a.third_in(target) {
                r.violations.push(WakamatsuViolation {
                    object: a.object,
                    envelope,
                    approximation: a.summands.clone(),
                    third: a.third.clone().unwrap_or_default(),
                });
            }
        }
    }
    Ok(r)
}

/// Extension-closed subcategories among all subsets of the catalog.
pub fn extension_closed_subcategories(db: &ExtensionDb, f: &SubfunctorExt) -> Vec<Subcategory> {
    Subcategory::all_subsets(f.len()).into_iter().filter(|s| extension_violation(db, f, s).is_none()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryConditions {
    pub x: Subcategory,
    pub y: Subcategory,
    pub x_resolving: ClosureReport,
    pub y_coresolving: ClosureReport,
    pub y_is_right_perp: bool,
    pub x_is_left_perp: bool,
    /// Epimorphic `X`-precovers with kernel in `Y` for every object.
    pub precovers: Search,
    /// Monomorphic `Y`-preenvelopes with cokernel in `X` for every object.
    pub preenvelopes: Search,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub undetermined: bool,
    pub pair: CotorsionPair,
}

impl HereditaryConditions {
    pub fn agrees(&self) -> bool {
        self.cond1 == self.cond2 && self.cond2 == self.cond3
    }
}

/// Evaluates the three conditions independently.
pub fn check_complete_hereditary(
    idx: &ApproxIndex,
    db: &ExtensionDb,
    f: &SubfunctorExt,
    x: &Subcategory,
    y: &Subcategory,
) -> Result<HereditaryConditions, ExtError> {
    let x_resolving = resolving(db, f, x);
    let y_coresolving = coresolving(db, f, y);
    let y_is_right_perp = orthogonal(f, x, Side::Right) == *y;
    let x_is_left_perp = orthogonal(f, y, Side::Left) == *x;
    let precovers = all_found(idx.covers(x)?.iter().map(|c| approx_with_third(c, y, None)));
    let preenvelopes = all_found(idx.envelopes(y)?.iter().map(|e| approx_with_third(e, x, None)));
    let pair = evaluate_pair(idx, db, f, x, y)?;
    let cond1 = x_resolving.holds() && y_is_right_perp && precovers == Search::Found;
    let cond2 = y_coresolving.holds() && x_is_left_perp && preenvelopes == Search::Found;
    let cond3 = pair.complete_hereditary();
    let undetermined = [precovers, preenvelopes, pair.complete].contains(&Search::Undetermined);
    Ok(HereditaryConditions {
        x: x.clone(),
        y: y.clone(),
        x_resolving,
        y_coresolving,
        y_is_right_perp,
        x_is_left_perp,
        precovers,
        preenvelopes,
        cond1,
        cond2,
        cond3,
        undetermined,
        pair,
    })
}

/// Candidate pairs `(S, S^⊥)` and `(⊥S, S)` for every subset `S`, deduplicated.
pub fn orthogonal_candidates(f: &SubfunctorExt) -> Vec<(Subcategory, Subcategory)> {
    let mut out: Vec<(Subcategory, Subcategory)> = Subcategory::all_subsets(f.len())
        .into_iter()
        .flat_map(|s| {
            let right = (s.clone(), orthogonal(f, &s, Side::Right));
            let left = (orthogonal(f, &s, Side::Left), s);
            [right, left]
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFamilyCase {
    pub x: Subcategory,
    pub y: Subcategory,
    pub holds: bool,
    pub undetermined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFamilyReport {
    /// Cases where the hypothesis held.
    pub cases: Vec<PairFamilyCase>,
    /// Candidates examined, including those failing the hypothesis.
    pub examined: usize,
}

impl PairFamilyReport {
    pub fn violations(&self) -> usize {
        self.cases.iter().filter(|c| !c.holds && !c.undetermined).count()
    }
}

/// Epi-covering resolving `X` gives monomorphic `X^⊥`-preenvelopes with
/// cokernel in `X`; dually for mono-enveloping coresolving `Y`.
pub fn check_resolving_approximations(idx: &ApproxIndex, db: &ExtensionDb, f: &SubfunctorExt) -> Result<PairFamilyReport, ExtError> {
    let subsets = Subcategory::all_subsets(f.len());
    let mut cases = Vec::new();
    for s in &subsets {
        let covers = idx.covers(s)?;
        if covers.iter().all(|c| c.onto && c.established()) && resolving(db, f, s).holds() {
            let y = orthogonal(f, s, Side::Right);
            let r = all_found(idx.envelopes(&y)?.iter().map(|e| approx_with_third(e, s, None)));
            cases.push(PairFamilyCase { x: s.clone(), y, holds: r == Search::Found, undetermined: r == Search::Undetermined });
        }
        let envelopes = idx.envelopes(s)?;
        if envelopes.iter().all(|e| e.onto && e.established()) && coresolving(db, f, s).holds() {
            let x = orthogonal(f, s, Side::Left);
            let r = all_found(idx.covers(&x)?.iter().map(|c| approx_with_third(c, s, None)));
            cases.push(PairFamilyCase { x, y: s.clone(), holds: r == Search::Found, undetermined: r == Search::Undetermined });
        }
    }
    Ok(PairFamilyReport { cases, examined: 2 * subsets.len() })
}

/// Complete hereditary pairs of the abelian structure.
pub fn classical_pairs(idx: &ApproxIndex, db: &ExtensionDb) -> Result<Vec<CotorsionPair>, ExtError> {
    let ab = SubfunctorExt::abelian(idx.category());
    let mut out = Vec::new();
    for (x, y) in orthogonal_candidates(&ab) {
        let p = evaluate_pair(idx, db, &ab, &x, &y)?;
        if p.complete_hereditary() && !out.iter().any(|q: &CotorsionPair| q.x == p.x && q.y == p.y) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Classical complete hereditary pairs restrict to relative ones when they
/// contain the relative projectives (or injectives).
pub fn check_classical_restriction(
    idx: &ApproxIndex,
    db: &ExtensionDb,
    f: &SubfunctorExt,
    classical: &[CotorsionPair],
) -> Result<PairFamilyReport, ExtError> {
    let mut cases = Vec::new();
    for p in classical {
        if p.x.contains_all(&f.projectives()) {
            let y = orthogonal(f, &p.x, Side::Right);
            let q = evaluate_pair(idx, db, f, &p.x, &y)?;
            let env = all_found(idx.envelopes(&y)?.iter().map(|e| approx_with_third(e, &p.x, None)));
            let holds = q.complete_hereditary() && env == Search::Found;
            let undetermined = q.complete == Search::Undetermined || env == Search::Undetermined;
            cases.push(PairFamilyCase { x: p.x.clone(), y, holds, undetermined });
        }
        if p.y.contains_all(&f.injectives()) {
            let x = orthogonal(f, &p.y, Side::Left);
            let q = evaluate_pair(idx, db, f, &x, &p.y)?;
            let cov = all_found(idx.covers(&x)?.iter().map(|c| approx_with_third(c, &p.y, None)));
            let holds = q.complete_hereditary() && cov == Search::Found;
            let undetermined = q.complete == Search::Undetermined || cov == Search::Undetermined;
            cases.push(PairFamilyCase { x, y: p.y.clone(), holds, undetermined });
        }
    }
    Ok(PairFamilyReport { cases, examined: 2 * classical.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCase {
    pub b: Subcategory,
    pub c: Subcategory,
    pub d: Subcategory,
    pub balanced: bool,
}

/// For classical complete hereditary pairs `(B, C)` and `(C, D)`, the pair
/// `(B, D)` must be balanced.
pub fn check_cotorsion_triples(idx: &ApproxIndex, classical: &[CotorsionPair]) -> Result<Vec<TriangleCase>, ExtError> {
    let mut out = Vec::new();
    for p in classical {
        for q in classical {
            if p.y == q.x {
                let r = validate_balanced(idx, &p.x, &q.y)?;
                out.push(TriangleCase { b: p.x.clone(), c: p.y.clone(), d: q.y.clone(), balanced: r.balanced });
            }
        }
    }
    Ok(out)
}
