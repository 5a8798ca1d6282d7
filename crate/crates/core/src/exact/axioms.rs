//! Direct verification of the exact-category axioms for a subfunctor table,
//! and detection of relative projectives and injectives.

use serde::{Deserialize, Serialize};

use super::SubfunctorExt;
use crate::algebra::Hom;
use crate::approx::{precover, preenvelope, Subcategory};
use crate::ext::{compose_epics, compose_monics, pullback_sequence, pushout_sequence, ExtError, ShortExactSequence};
use crate::linalg::Subspace;
use crate::Category;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    E0,
    E1,
    E1op,
    E2,
    E2op,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::E0, Axiom::E1, Axiom::E1op, Axiom::E2, Axiom::E2op];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::E0 => "E0",
            Axiom::E1 => "E1",
            Axiom::E1op => "E1op",
            Axiom::E2 => "E2",
            Axiom::E2op => "E2op",
        }
    }
}

/// Replayable counterexample: the input conflations, the morphism used (for
/// pushout/pullback) and the offending output sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    pub description: String,
    pub inputs: Vec<ShortExactSequence>,
    pub morphism: Option<Hom>,
    pub output: ShortExactSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub cases: u64,
    /// False when some tuple space was sampled instead of enumerated.
    pub exhaustive: bool,
    pub witness: Option<AxiomWitness>,
    pub error: Option<String>,
}

impl AxiomCheck {
    fn new(axiom: Axiom) -> Self {
        AxiomCheck { axiom, cases: 0, exhaustive: true, witness: None, error: None }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none() && self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub verified_bound: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Largest tuple space enumerated element by element in the composition checks.
const TUPLE_CAP: u128 = 4096;

/// Checks all five axioms with every module involved of total dimension at most `bound`.
pub fn validate_axioms(cat: &Category, f: &SubfunctorExt, bound: usize) -> AxiomReport {
    let checks = Axiom::ALL
        .iter()
        .map(|&axiom| {
            let mut c = AxiomCheck::new(axiom);
            let run = match axiom {
                Axiom::E0 => check_e0(cat, f, bound, &mut c),
                Axiom::E1 => check_e1(cat, f, bound, &mut c),
                Axiom::E1op => check_e1op(cat, f, bound, &mut c),
                Axiom::E2 => check_e2(cat, f, bound, &mut c, false),
                Axiom::E2op => check_e2(cat, f, bound, &mut c, true),
            };
            if let Err(e) = run {
                c.error = Some(e.to_string());
            }
            c
        })
        .collect();
    AxiomReport { verified_bound: bound, checks }
}

fn dim(cat: &Category, i: usize) -> usize {
    cat.module(i).total_dim()
}

fn check_e0(cat: &Category, f: &SubfunctorExt, bound: usize, c: &mut AxiomCheck) -> Result<(), ExtError> {
    let n = cat.len();
    for a in 0..n {
        for r in 0..n {
            if dim(cat, a) + dim(cat, r) > bound {
                continue;
            }
            let s = ShortExactSequence::split(&cat.alg, cat.module(a), cat.module(r));
            c.cases += 1;
            if !f.is_conflation(cat, &s)? {
                c.witness = Some(AxiomWitness {
                    description: format!("split sequence {} -> {} is not admissible", cat.label(a), cat.label(r)),
                    inputs: vec![],
                    morphism: None,
                    output: s,
                });
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Coordinate tuples, one vector per space: every element when the product is
/// small, otherwise zero plus single basis vectors.
fn tuples(spaces: &[&Subspace]) -> (Vec<Vec<Vec<u32>>>, bool) {
    let size = spaces.iter().fold(1u128, |acc, s| {
        acc.saturating_mul((s.field().p() as u128).saturating_pow(s.dim() as u32))
    });
    let zero: Vec<Vec<u32>> = spaces.iter().map(|s| vec![0; s.ambient()]).collect();
    if size <= TUPLE_CAP {
        let mut out = vec![Vec::new()];
        for s in spaces {
            let elems: Vec<Vec<u32>> = s.elements().collect();
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Vec<u32>>| {
                    elems.iter().map(move |e| {
                        let mut t = prefix.clone();
                        t.push(e.clone());
                        t
                    })
                })
                .collect();
        }
        (out, true)
    } else {
        let mut out = vec![zero.clone()];
        for (k, s) in spaces.iter().enumerate() {
            for b in s.basis() {
                let mut t = zero.clone();
                t[k] = b.clone();
                out.push(t);
            }
        }
        (out, false)
    }
}

/// Elements of a table entry, or its basis when there are too many.
fn elements(s: &Subspace) -> (Vec<Vec<u32>>, bool) {
    let size = (s.field().p() as u128).saturating_pow(s.dim() as u32);
    if size <= TUPLE_CAP {
        (s.elements().collect(), true)
    } else {
        let mut out = vec![vec![0; s.ambient()]];
        out.extend(s.basis().iter().cloned());
        (out, false)
    }
}

fn check_e1(cat: &Category, f: &SubfunctorExt, bound: usize, c: &mut AxiomCheck) -> Result<(), ExtError> {
    let alg = &cat.alg;
    let n = cat.len();
    for r1 in 0..n {
        for a1 in 0..n {
            if dim(cat, r1) + dim(cat, a1) > bound {
                continue;
            }
            let (elems, full) = elements(f.get(r1, a1));
            c.exhaustive &= full;
            for e in elems {
                let s1 = cat.ext.group(r1, a1).realize(alg, &e);
                let mid = cat.catalog().identify(alg, &s1.mid)?;
                let to_sum = Hom::vcat(&mid.projections);
                for r2 in 0..n {
                    if s1.mid.total_dim() + dim(cat, r2) > bound {
                        continue;
                    }
                    let spaces: Vec<&Subspace> = mid.summands.iter().map(|&a| f.get(r2, a)).collect();
                    let (ts, full) = tuples(&spaces);
                    c.exhaustive &= full;
                    for t in ts {
                        let raw = cat.ext.realize_components(alg, &[r2], &mid.summands, &[t]);
                        let s2 = ShortExactSequence { left: s1.mid.clone(), i: raw.i.after(&to_sum), ..raw };
                        let comp = compose_monics(alg, &s1, &s2)?;
                        c.cases += 1;
                        if !f.is_conflation(cat, &comp.sequence)? {
                            c.witness = Some(AxiomWitness {
                                description: "composite of admissible monics is not admissible".into(),
                                inputs: vec![s1, s2],
                                morphism: None,
                                output: comp.sequence,
                            });
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_e1op(cat: &Category, f: &SubfunctorExt, bound: usize, c: &mut AxiomCheck) -> Result<(), ExtError> {
    let alg = &cat.alg;
    let n = cat.len();
    for r1 in 0..n {
        for a1 in 0..n {
            if dim(cat, r1) + dim(cat, a1) > bound {
                continue;
            }
            let (elems, full) = elements(f.get(r1, a1));
            c.exhaustive &= full;
            for e in elems {
                let s1 = cat.ext.group(r1, a1).realize(alg, &e);
                let mid = cat.catalog().identify(alg, &s1.mid)?;
                let from_sum = Hom::hcat(&mid.inclusions);
                for a2 in 0..n {
                    if s1.mid.total_dim() + dim(cat, a2) > bound {
                        continue;
                    }
                    let spaces: Vec<&Subspace> = mid.summands.iter().map(|&r| f.get(r, a2)).collect();
                    let (ts, full) = tuples(&spaces);
                    c.exhaustive &= full;
                    for t in ts {
                        let coords: Vec<Vec<Vec<u32>>> = t.into_iter().map(|v| vec![v]).collect();
                        let raw = cat.ext.realize_components(alg, &mid.summands, &[a2], &coords);
                        let s2 = ShortExactSequence { right: s1.mid.clone(), p: from_sum.after(&raw.p), ..raw };
                        let comp = compose_epics(alg, &s1, &s2)?;
                        c.cases += 1;
                        if !f.is_conflation(cat, &comp.sequence)? {
                            c.witness = Some(AxiomWitness {
                                description: "composite of admissible epics is not admissible".into(),
                                inputs: vec![s1, s2],
                                morphism: None,
                                output: comp.sequence,
                            });
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Pushouts (or pullbacks with `dual`) of basis conflations along hom basis
/// elements; both operations are bilinear so bases suffice.
fn check_e2(cat: &Category, f: &SubfunctorExt, bound: usize, c: &mut AxiomCheck, dual: bool) -> Result<(), ExtError> {
    let alg = &cat.alg;
    let n = cat.len();
    for r in 0..n {
        for a in 0..n {
            if dim(cat, r) + dim(cat, a) > bound {
                continue;
            }
            for e in f.get(r, a).basis() {
                let s = cat.ext.group(r, a).realize(alg, e);
                for b in 0..n {
                    let homs = if dual { cat.ext.hom(b, r) } else { cat.ext.hom(a, b) };
                    for h in homs.basis() {
                        let out = if dual {
                            pullback_sequence(alg, &s, h, cat.module(b))
                        } else {
                            pushout_sequence(alg, &s, h, cat.module(b))
                        };
                        c.cases += 1;
                        if !f.is_conflation(cat, &out)? {
                            let what = if dual { "pullback" } else { "pushout" };
                            c.witness = Some(AxiomWitness {
                                description: format!("{what} of an admissible sequence is not admissible"),
                                inputs: vec![s],
                                morphism: Some(h.clone()),
                                output: out,
                            });
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Evaluation map from relative projectives onto one catalog object (or the
/// dual coevaluation into relative injectives).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxWitness {
    pub object: usize,
    /// Catalog indices of the summands of the source (or target) sum.
    pub summands: Vec<usize>,
    /// Summands of the kernel (or cokernel), when the map is epi (or mono).
    pub third_term: Option<Vec<usize>>,
    pub onto: bool,
    pub conflation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjInjReport {
    pub projectives: Vec<usize>,
    pub injectives: Vec<usize>,
    pub enough_projectives: bool,
    pub enough_injectives: bool,
    pub projective_witnesses: Vec<ApproxWitness>,
    pub injective_witnesses: Vec<ApproxWitness>,
    pub error: Option<String>,
}

pub fn proj_inj_report(cat: &Category, f: &SubfunctorExt) -> ProjInjReport {
    let projectives = f.projectives();
    let injectives = f.injectives();
    let mut report = ProjInjReport {
        projectives: projectives.clone(),
        injectives: injectives.clone(),
        enough_projectives: false,
        enough_injectives: false,
        projective_witnesses: Vec::new(),
        injective_witnesses: Vec::new(),
        error: None,
    };
    if let Err(e) = fill_witnesses(cat, f, &mut report) {
        report.error = Some(e.to_string());
        report.enough_projectives = false;
        report.enough_injectives = false;
    }
    report
}

fn fill_witnesses(cat: &Category, f: &SubfunctorExt, r: &mut ProjInjReport) -> Result<(), ExtError> {
    let alg = &cat.alg;
    let proj = Subcategory::new(r.projectives.iter().copied());
    let inj = Subcategory::new(r.injectives.iter().copied());
    for a in 0..cat.len() {
        let p = precover(cat, &proj, cat.module(a));
        let (third_term, conflation) = match p.kernel_sequence(cat) {
            Some(s) => (Some(cat.catalog().identify(alg, &s.left)?.summands), f.is_conflation(cat, &s)?),
            None => (None, false),
        };
        r.projective_witnesses.push(ApproxWitness { object: a, summands: p.summands.clone(), third_term, onto: p.is_epi(), conflation });

        let e = preenvelope(cat, &inj, cat.module(a));
        let (third_term, conflation) = match e.cokernel_sequence(cat) {
            Some(s) => (Some(cat.catalog().identify(alg, &s.right)?.summands), f.is_conflation(cat, &s)?),
            None => (None, false),
        };
        r.injective_witnesses.push(ApproxWitness { object: a, summands: e.summands.clone(), third_term, onto: e.is_mono(), conflation });
    }
    r.enough_projectives = r.projective_witnesses.iter().all(|w| w.onto && w.conflation);
    r.enough_injectives = r.injective_witnesses.iter().all(|w| w.onto && w.conflation);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::exact::{validate_subfunctor, Provenance};
    use crate::linalg::Field;

    fn linear(n: usize) -> Category {
        Category::build(Algebra::linear(Field::new(2).unwrap(), n).unwrap(), n, 1 << 20).unwrap()
    }

    fn idx(cat: &Category, dims: &[usize]) -> usize {
        (0..cat.len()).find(|&i| cat.module(i).dims() == dims).unwrap()
    }

    #[test]
    fn split_and_abelian_pass_all_axioms() {
        for n in [2, 3] {
            let cat = linear(n);
            let bound = cat.default_bound();
            for f in [SubfunctorExt::split(&cat), SubfunctorExt::abelian(&cat)] {
                let r = validate_axioms(&cat, &f, bound);
                assert!(r.passed(), "{:?}", r.first_failure());
                assert!(r.check(Axiom::E0).cases > 0);
            }
            let ab = validate_axioms(&cat, &SubfunctorExt::abelian(&cat), bound);
            for a in [Axiom::E1, Axiom::E1op, Axiom::E2, Axiom::E2op] {
                assert!(ab.check(a).cases > 0, "{a:?} checked nothing");
            }
        }
    }

    #[test]
    fn a2_reports() {
        let cat = linear(2);
        let (s0, s1, p0) = (idx(&cat, &[1, 0]), idx(&cat, &[0, 1]), idx(&cat, &[1, 1]));
        let ab = proj_inj_report(&cat, &SubfunctorExt::abelian(&cat));
        assert_eq!(ab.projectives, { let mut v = vec![p0, s1]; v.sort(); v });
        assert_eq!(ab.injectives, { let mut v = vec![p0, s0]; v.sort(); v });
        assert!(ab.enough_projectives && ab.enough_injectives);
        let w = &ab.projective_witnesses[s0];
        assert_eq!(w.summands, vec![p0]);
        assert_eq!(w.third_term, Some(vec![s1]));

        let split = proj_inj_report(&cat, &SubfunctorExt::split(&cat));
        assert_eq!(split.projectives.len(), 3);
        assert!(split.enough_projectives && split.enough_injectives);
    }

    #[test]
    fn unclosed_a3_assignment_fails_axioms() {
        // Keep only the class between the two simples at the ends of a length-two
        // uniserial; pushing it into the projective cover breaks closure.
        let cat = linear(3);
        let f = cat.field();
        let mut found = false;
        for x in 0..cat.len() {
            for y in 0..cat.len() {
                if cat.ext.dim(x, y) == 0 {
                    continue;
                }
                let mut t = SubfunctorExt::split(&cat).table().to_vec();
                t[x][y] = Subspace::full(f, cat.ext.dim(x, y));
                let s = SubfunctorExt::from_table(&cat, t, Provenance::Explicit).unwrap();
                if validate_subfunctor(&cat, &s).is_err() {
                    let r = validate_axioms(&cat, &s, cat.default_bound());
                    let fail = r.first_failure().expect("unclosed table must fail");
                    assert!(fail.witness.is_some());
                    found = true;
                }
            }
        }
        assert!(found);
    }
}
