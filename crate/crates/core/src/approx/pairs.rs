//! Balanced pairs of subcategories and their correspondence with subfunctors
//! of Ext¹.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ApproxFacts, ApproxIndex, Subcategory};
use crate::exact::{ExactError, Provenance, SubfunctorExt};
use crate::ext::ExtError;
use crate::linalg::Subspace;
use crate::Category;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Error)]
pub enum PairError {
    #[error("{needed} extension classes to examine, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("admissible classes in Ext¹({x}, {y}) do not form a subspace: {element:?} is a combination of admissible classes but is not admissible")]
    NotSubspace { x: usize, y: usize, element: Vec<u32> },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// `S^⊥ = {N : F(M, N) = 0 for M in S}` (right) or `⊥S` (left), read off the table.
pub fn orthogonal(f: &SubfunctorExt, s: &Subcategory, side: Side) -> Subcategory {
    let n = f.len();
    match side {
        Side::Right => Subcategory::new((0..n).filter(|&y| s.members().iter().all(|&x| f.get(x, y).is_zero()))),
        Side::Left => Subcategory::new((0..n).filter(|&x| s.members().iter().all(|&y| f.get(x, y).is_zero()))),
    }
}

/// Whether the sequence realizing `coords` in `Ext¹(C_x, C_y)` stays exact
/// under `Hom(C, -)` and under `Hom(-, D)`, by dimension counts.
fn exactness(cat: &Category, c: &Subcategory, d: &Subcategory, x: usize, y: usize, coords: &[u32]) -> (bool, bool) {
    let s = cat.ext.group(x, y).realize(&cat.alg, coords);
    let hom = |a: usize, b: usize| cat.ext.hom(a, b).dim();
    let from_c = c.members().iter().all(|&m| cat.alg.hom_dim(cat.module(m), &s.mid) == hom(m, y) + hom(m, x));
    let into_d = d.members().iter().all(|&m| cat.alg.hom_dim(&s.mid, cat.module(m)) == hom(y, m) + hom(x, m));
    (from_c, into_d)
}

fn class_count(cat: &Category) -> u128 {
    let p = cat.field().p() as u128;
    let n = cat.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .fold(0u128, |acc, (x, y)| acc.saturating_add(p.saturating_pow(cat.ext.dim(x, y) as u32)))
}

/// Classes whose realizations are both `Hom(C, -)`-exact and `Hom(-, D)`-exact,
/// by exhaustive search. A non-subspace outcome is an error, never repaired.
pub fn pair_to_subfunctor(cat: &Category, c: &Subcategory, d: &Subcategory, budget: u128) -> Result<SubfunctorExt, PairError> {
    let needed = class_count(cat);
    if needed > budget {
        return Err(PairError::Budget { needed, budget });
    }
    let f = cat.field();
    let n = cat.len();
    let mut table = SubfunctorExt::split(cat).table().to_vec();
    for x in 0..n {
        for y in 0..n {
            let dim = cat.ext.dim(x, y);
            if dim == 0 {
                continue;
            }
            let good: Vec<Vec<u32>> = f
                .all_vectors(dim)
                .filter(|v| {
                    let (a, b) = exactness(cat, c, d, x, y, v);
                    a && b
                })
                .collect();
            let span = Subspace::from_vectors(f, dim, &good);
            if f.size_pow(span.dim()) != Some(good.len() as u64) {
                let element = span.elements().find(|v| !good.contains(v)).expect("span is strictly larger");
                return Err(PairError::NotSubspace { x, y, element });
            }
            table[x][y] = span;
        }
    }
    Ok(SubfunctorExt::from_table(cat, table, Provenance::FromPair)?)
}

/// `(F-projectives, F-injectives)`.
pub fn subfunctor_to_pair(f: &SubfunctorExt) -> (Subcategory, Subcategory) {
    (Subcategory::new(f.projectives()), Subcategory::new(f.injectives()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessMismatch {
    pub x: usize,
    pub y: usize,
    pub coords: Vec<u32>,
    pub hom_from_exact: bool,
    pub hom_into_exact: bool,
}

/// Two steps of a resolution (or coresolution) of one catalog object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCertificate {
    pub object: usize,
    /// Summands of each term, `terms[0]` being the approximation of the object.
    pub terms: Vec<Vec<usize>>,
    /// Summands of the kernel (or cokernel) after the last term.
    pub syzygy: Option<Vec<usize>>,
    /// Each short piece stays exact under the opposite Hom functor.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub epic_precovering: bool,
    pub monic_preenveloping: bool,
    pub failing_precovers: Vec<usize>,
    pub failing_preenvelopes: Vec<usize>,
    pub classes_checked: u64,
    pub exhaustive: bool,
    pub mismatch: Option<ExactnessMismatch>,
    pub resolutions: Vec<ResolutionCertificate>,
    pub coresolutions: Vec<ResolutionCertificate>,
    pub balanced: bool,
}

const CLASS_CAP: u64 = 4096;

/// Checks the balanced pair conditions for `(C, D)`: epimorphic precovers,
/// monomorphic preenvelopes, agreement of the two exactness notions on
/// every class between catalog objects, and length-two certificates.
pub fn validate_balanced(idx: &ApproxIndex, c: &Subcategory, d: &Subcategory) -> Result<BalanceReport, ExtError> {
    let cat = idx.category();
    let n = cat.len();
    let covers = idx.covers(c)?;
    let envelopes = idx.envelopes(d)?;
    let failing_precovers: Vec<usize> = covers.iter().filter(|a| !a.onto).map(|a| a.object).collect();
    let failing_preenvelopes: Vec<usize> = envelopes.iter().filter(|a| !a.onto).map(|a| a.object).collect();

    let mut classes_checked = 0;
    let mut exhaustive = true;
    let mut mismatch = None;
    'pairs: for x in 0..n {
        for y in 0..n {
            let g = cat.ext.group(x, y);
            if g.dim() == 0 {
                continue;
            }
            let vecs: Vec<Vec<u32>> = match cat.field().size_pow(g.dim()) {
                Some(k) if k <= CLASS_CAP => cat.field().all_vectors(g.dim()).collect(),
                _ => {
                    exhaustive = false;
                    (0..g.dim()).map(|k| crate::ext::unit(g.dim(), k)).collect()
                }
            };
            for v in vecs {
                classes_checked += 1;
                let (a, b) = exactness(cat, c, d, x, y, &v);
                if a != b {
                    mismatch = Some(ExactnessMismatch { x, y, coords: v, hom_from_exact: a, hom_into_exact: b });
                    break 'pairs;
                }
            }
        }
    }

    let hom = |a: usize, b: usize| cat.ext.hom(a, b).dim();
    let sum_hom_into = |s: &[usize], m: usize| s.iter().map(|&k| hom(k, m)).sum::<usize>();
    let sum_hom_from = |m: usize, s: &[usize]| s.iter().map(|&k| hom(m, k)).sum::<usize>();
    let resolutions: Vec<ResolutionCertificate> = (0..n)
        .map(|a| {
            two_steps(&covers, a, |start, term, third| {
                d.members().iter().all(|&m| sum_hom_into(term, m) == sum_hom_into(third, m) + sum_hom_into(start, m))
            })
        })
        .collect();
    let coresolutions: Vec<ResolutionCertificate> = (0..n)
        .map(|a| {
            two_steps(&envelopes, a, |start, term, third| {
                c.members().iter().all(|&m| sum_hom_from(m, term) == sum_hom_from(m, third) + sum_hom_from(m, start))
            })
        })
        .collect();
    let balanced = failing_precovers.is_empty()
        && failing_preenvelopes.is_empty()
        && mismatch.is_none()
        && resolutions.iter().chain(&coresolutions).all(|r| r.exact);
    Ok(BalanceReport {
        epic_precovering: failing_precovers.is_empty(),
        monic_preenveloping: failing_preenvelopes.is_empty(),
        failing_precovers,
        failing_preenvelopes,
        classes_checked,
        exhaustive,
        mismatch,
        resolutions,
        coresolutions,
        balanced,
    })
}

/// Splices approximations of the object and then of each summand of the
/// third term; `piece_exact(start, term, third)` judges one short piece.
fn two_steps(
    facts: &[ApproxFacts],
    object: usize,
    piece_exact: impl Fn(&[usize], &[usize], &[usize]) -> bool,
) -> ResolutionCertificate {
    let mut terms = Vec::new();
    let mut start = vec![object];
    let mut exact = true;
    let mut syzygy = None;
    for _ in 0..2 {
        let mut term = Vec::new();
        let mut third = Vec::new();
        for &s in &start {
            let a = &facts[s];
            term.extend(&a.summands);
            match &a.third {
                Some(t) => third.extend(t),
                None => exact = false,
            }
        }
        term.sort_unstable();
        third.sort_unstable();
        exact &= piece_exact(&start, &term, &third);
        terms.push(term);
        syzygy = Some(third.clone());
        start = third;
        if !exact {
            break;
        }
    }
    ResolutionCertificate { object, terms, syzygy, exact }
}
