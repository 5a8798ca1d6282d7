//! Database of short exact sequences `0 -> A -> B -> C -> 0` with `A` or `C`
//! indecomposable, used to test closure of subcategories under extensions,
//! kernels of deflations and cokernels of inflations.
//!
//! Summands of a sum end whose component vanishes split off, so only tuples
//! of nonzero components are stored. For kernel closure a decomposable right
//! end reduces to indecomposable ones by pulling back along a summand inclusion
//! and composing deflations; cokernel closure is dual with left ends.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SubfunctorExt;
use crate::ext::ExtError;
use crate::Category;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRecord {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// `components[l][k]` is the class component in `Ext¹(C_right[l], C_left[k])`.
    pub components: Vec<Vec<Vec<u32>>>,
    pub middle: Vec<usize>,
}

impl ExtensionRecord {
    pub fn in_structure(&self, f: &SubfunctorExt) -> bool {
        self.right.iter().zip(&self.components).all(|(&c, row)| {
            self.left.iter().zip(row).all(|(&a, v)| f.get(c, a).contains(v))
        })
    }

    pub fn total_dim(&self, cat: &Category) -> usize {
        self.left.iter().chain(&self.right).map(|&i| cat.module(i).total_dim()).sum()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionDb {
    pub bound: usize,
    pub records: Vec<ExtensionRecord>,
}

impl ExtensionDb {
    /// All componentwise nonsplit extensions with one indecomposable end and
    /// `dim A + dim C <= bound`.
    pub fn build(cat: &Category, bound: usize) -> Result<ExtensionDb, ExtError> {
        let n = cat.len();
        let jobs: Vec<(bool, usize)> = (0..n).map(|c| (true, c)).chain((0..n).map(|a| (false, a))).collect();
        let parts: Vec<Result<Vec<ExtensionRecord>, ExtError>> = jobs
            .into_par_iter()
            .map(|(right_fixed, fixed)| {
                let room = bound.saturating_sub(cat.module(fixed).total_dim());
                let candidates: Vec<usize> = (0..n)
                    .filter(|&o| if right_fixed { cat.ext.dim(fixed, o) > 0 } else { cat.ext.dim(o, fixed) > 0 })
                    .collect();
                let mut multisets = Vec::new();
                multisets_into(cat, &candidates, 0, room, &mut Vec::new(), &mut multisets);
                let mut out = Vec::new();
                for multi in multisets {
                    // Single-single extensions are stored once, with the right end fixed.
                    if !right_fixed && multi.len() == 1 {
                        continue;
                    }
                    let (left, right) = if right_fixed { (multi, vec![fixed]) } else { (vec![fixed], multi) };
                    let groups: Vec<(usize, usize)> =
                        right.iter().flat_map(|&c| left.iter().map(move |&a| (c, a))).collect();
                    for flat in nonzero_tuples(cat, &groups) {
                        let mut it = flat.into_iter();
                        let components: Vec<Vec<Vec<u32>>> =
                            right.iter().map(|_| left.iter().map(|_| it.next().expect("sized")).collect()).collect();
                        let s = cat.ext.realize_components(&cat.alg, &right, &left, &components);
                        let mut middle = cat.catalog().identify(&cat.alg, &s.mid)?.summands;
                        middle.sort_unstable();
                        out.push(ExtensionRecord { left: left.clone(), right: right.clone(), components, middle });
                    }
                }
                Ok(out)
            })
            .collect();
        let mut records = Vec::new();
        for r in parts {
            records.extend(r?);
        }
        Ok(ExtensionDb { bound, records })
    }

    /// Records that are conflations of `f`.
    pub fn conflations<'a>(&'a self, f: &'a SubfunctorExt) -> impl Iterator<Item = &'a ExtensionRecord> + 'a {
        self.records.iter().filter(move |r| r.in_structure(f))
    }
}

fn multisets_into(
    cat: &Category,
    candidates: &[usize],
    start: usize,
    room: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for k in start..candidates.len() {
        let d = cat.module(candidates[k]).total_dim();
        if d > room {
            continue;
        }
        cur.push(candidates[k]);
        out.push(cur.clone());
        multisets_into(cat, candidates, k, room - d, cur, out);
        cur.pop();
    }
}

/// Coordinate tuples over the given groups with every component nonzero.
fn nonzero_tuples(cat: &Category, groups: &[(usize, usize)]) -> Vec<Vec<Vec<u32>>> {
    let f = cat.field();
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for &(c, a) in groups {
        let elems: Vec<Vec<u32>> = f.all_vectors(cat.ext.dim(c, a)).filter(|v| v.iter().any(|&x| x != 0)).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |e| {
                    let mut t = prefix.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    #[test]
    fn a2_database_has_single_extension() {
        let cat = Category::build(Algebra::linear(Field::new(2).unwrap(), 2).unwrap(), 2, 1 << 20).unwrap();
        let db = ExtensionDb::build(&cat, cat.default_bound()).unwrap();
        // One nonsplit class; the bound admits a second copy of the left end.
        assert!(!db.records.is_empty());
        let single: Vec<_> = db.records.iter().filter(|r| r.left.len() == 1 && r.right.len() == 1).collect();
        assert_eq!(single.len(), 1);
        assert!(cat.catalog().projective[single[0].middle[0]]);
        assert_eq!(db.conflations(&SubfunctorExt::split(&cat)).count(), 0);
        assert_eq!(db.conflations(&SubfunctorExt::abelian(&cat)).count(), db.records.len());
    }
}
