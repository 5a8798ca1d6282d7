//! Exact structures stored as subfunctors of Ext¹ on catalog pairs.
//!
//! A structure is a table `F[x][y] ⊆ Ext¹(C_x, C_y)`; values on direct sums
//! follow by additivity. A sequence is a conflation iff every component of its
//! class lies in the table.

mod axioms;
mod extensions;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ext::{ExtError, ShortExactSequence};
use crate::linalg::Subspace;
use crate::Category;

pub use axioms::{
    proj_inj_report, validate_axioms, ApproxWitness, Axiom, AxiomCheck, AxiomReport, AxiomWitness, ProjInjReport,
};
pub use extensions::{ExtensionDb, ExtensionRecord};

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("table shape does not match the catalog: {0}")]
    Shape(String),
    #[error("enumeration needs {lattice} assignments, budget is {budget}")]
    Budget { lattice: u128, budget: u128 },
    #[error("structure was built for catalog {found}, expected {expected}")]
    Fingerprint { expected: String, found: String },
    #[error(transparent)]
    Ext(#[from] ExtError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Split,
    Abelian,
    Explicit,
    Generated,
    Enumerated,
    /// Recovered from a pair of subcategories.
    FromPair,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubfunctorExt {
    table: Vec<Vec<Subspace>>,
    pub provenance: Provenance,
}

impl PartialEq for SubfunctorExt {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for SubfunctorExt {}

impl std::hash::Hash for SubfunctorExt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

/// A class in `Ext¹(C_x, C_y)` given by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtElement {
    pub x: usize,
    pub y: usize,
    pub coords: Vec<u32>,
}

impl SubfunctorExt {
    pub fn split(cat: &Category) -> SubfunctorExt {
        let n = cat.len();
        let table = (0..n)
            .map(|x| (0..n).map(|y| Subspace::zero(cat.field(), cat.ext.dim(x, y))).collect())
            .collect();
        SubfunctorExt { table, provenance: Provenance::Split }
    }

    pub fn abelian(cat: &Category) -> SubfunctorExt {
        let n = cat.len();
        let table = (0..n)
            .map(|x| (0..n).map(|y| Subspace::full(cat.field(), cat.ext.dim(x, y))).collect())
            .collect();
        SubfunctorExt { table, provenance: Provenance::Abelian }
    }

    pub fn from_table(cat: &Category, table: Vec<Vec<Subspace>>, provenance: Provenance) -> Result<Self, ExactError> {
        let n = cat.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(ExactError::Shape(format!("expected {n}x{n} pairs")));
        }
        for (x, row) in table.iter().enumerate() {
            for (y, s) in row.iter().enumerate() {
                if s.ambient() != cat.ext.dim(x, y) || s.field() != cat.field() {
                    return Err(ExactError::Shape(format!(
                        "pair ({x}, {y}) has ambient {} but Ext¹ has dimension {}",
                        s.ambient(),
                        cat.ext.dim(x, y)
                    )));
                }
            }
        }
        Ok(SubfunctorExt { table, provenance })
    }

    pub fn table(&self) -> &[Vec<Subspace>] {
        &self.table
    }

    pub fn get(&self, x: usize, y: usize) -> &Subspace {
        &self.table[x][y]
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn contains(&self, e: &ExtElement) -> bool {
        self.table[e.x][e.y].contains(&e.coords)
    }

    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.table.iter().map(|r| r.iter().map(Subspace::dim).collect()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.table.iter().flatten().map(Subspace::dim).sum()
    }

    /// Pointwise inclusion of tables.
    pub fn le(&self, other: &SubfunctorExt) -> bool {
        self.table.iter().flatten().zip(other.table.iter().flatten()).all(|(a, b)| a.is_subspace_of(b))
    }

    /// Catalog objects `C` with `F(C, -) = 0`.
    pub fn projectives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.table[x].iter().all(Subspace::is_zero)).collect()
    }

    /// Catalog objects `C` with `F(-, C) = 0`.
    pub fn injectives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.table.iter().all(|r| r[y].is_zero())).collect()
    }

    /// Whether `s` is an `F`-sequence.
    pub fn is_conflation(&self, cat: &Category, s: &ShortExactSequence) -> Result<bool, ExtError> {
        cat.ext.class_in(&cat.alg, s, &self.table)
    }

    pub fn export(&self, cat: &Category) -> StructureExport {
        StructureExport {
            fingerprint: cat.fingerprint(),
            provenance: self.provenance.clone(),
            bases: self.table.iter().map(|r| r.iter().map(|s| s.basis().to_vec()).collect()).collect(),
        }
    }

    pub fn import(cat: &Category, e: &StructureExport) -> Result<SubfunctorExt, ExactError> {
        let fp = cat.fingerprint();
        if fp != e.fingerprint {
            return Err(ExactError::Fingerprint { expected: fp, found: e.fingerprint.clone() });
        }
        let n = cat.len();
        if e.bases.len() != n || e.bases.iter().any(|r| r.len() != n) {
            return Err(ExactError::Shape(format!("expected {n}x{n} pairs")));
        }
        let mut table = Vec::with_capacity(n);
        for (x, row) in e.bases.iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (y, b) in row.iter().enumerate() {
                let d = cat.ext.dim(x, y);
                if b.iter().any(|v| v.len() != d || v.iter().any(|&c| c >= cat.field().p())) {
                    return Err(ExactError::Shape(format!("bad basis vector at pair ({x}, {y})")));
                }
                out.push(Subspace::from_vectors(cat.field(), d, b));
            }
            table.push(out);
        }
        Ok(SubfunctorExt { table, provenance: e.provenance.clone() })
    }
}

/// JSON form of a structure: catalog hash plus per-pair subspace bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureExport {
    pub fingerprint: String,
    pub provenance: Provenance,
    pub bases: Vec<Vec<Vec<Vec<u32>>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `Ext¹(C_i, C_j) -> Ext¹(C_i, C_k)` along `f: C_j -> C_k`.
    Pushout,
    /// `Ext¹(C_i, C_j) -> Ext¹(C_l, C_j)` along `g: C_l -> C_i`.
    Pullback,
}

/// A class of `F(from)` whose image along a hom basis element leaves `F(to)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub direction: Direction,
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub hom_basis_index: usize,
    pub element: Vec<u32>,
    pub image: Vec<u32>,
}

fn push_violation(cat: &Category, table: &[Vec<Subspace>], i: usize, j: usize, k: usize) -> Option<ClosureWitness> {
    for (b, m) in cat.ext.push(i, j, k).iter().enumerate() {
        for v in table[i][j].basis() {
            let image = m.mul_vec(v);
            if !table[i][k].contains(&image) {
                let (from, to) = ((i, j), (i, k));
                return Some(ClosureWitness { direction: Direction::Pushout, from, to, hom_basis_index: b, element: v.clone(), image });
            }
        }
    }
    None
}

fn pull_violation(cat: &Category, table: &[Vec<Subspace>], i: usize, j: usize, l: usize) -> Option<ClosureWitness> {
    for (b, m) in cat.ext.pull(i, j, l).iter().enumerate() {
        for v in table[i][j].basis() {
            let image = m.mul_vec(v);
            if !table[l][j].contains(&image) {
                let (from, to) = ((i, j), (l, j));
                return Some(ClosureWitness { direction: Direction::Pullback, from, to, hom_basis_index: b, element: v.clone(), image });
            }
        }
    }
    None
}

/// Functorial closure on hom-space basis elements; linearity covers the rest.
pub fn validate_subfunctor(cat: &Category, f: &SubfunctorExt) -> Result<(), ClosureWitness> {
    let n = cat.len();
    for i in 0..n {
        for j in 0..n {
            if f.table[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                if let Some(w) = push_violation(cat, &f.table, i, j, k) {
                    return Err(w);
                }
                if let Some(w) = pull_violation(cat, &f.table, i, j, k) {
                    return Err(w);
                }
            }
        }
    }
    Ok(())
}

/// Least subfunctor containing the seeds: fixpoint of pushout/pullback images.
pub fn generate_closure(cat: &Category, seeds: &[ExtElement]) -> SubfunctorExt {
    let n = cat.len();
    let f = cat.field();
    let mut table = SubfunctorExt::split(cat).table;
    for s in seeds {
        table[s.x][s.y] = table[s.x][s.y].sum(&Subspace::from_vectors(f, table[s.x][s.y].ambient(), &[s.coords.clone()])).expect("same ambient");
    }
    let mut dirty: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !table[i][j].is_zero()).collect();
    while let Some((i, j)) = dirty.pop() {
        for k in 0..n {
            for (target, mats) in [((i, k), cat.ext.push(i, j, k)), ((k, j), cat.ext.pull(i, j, k))] {
                let images: Vec<Vec<u32>> =
                    mats.iter().flat_map(|m| table[i][j].basis().iter().map(move |v| m.mul_vec(v))).collect();
                let cur = &table[target.0][target.1];
                let grown = cur.sum(&Subspace::from_vectors(f, cur.ambient(), &images)).expect("same ambient");
                if grown.dim() > cur.dim() {
                    table[target.0][target.1] = grown;
                    if !dirty.contains(&target) {
                        dirty.push(target);
                    }
                }
            }
        }
    }
    SubfunctorExt { table, provenance: Provenance::Generated }
}

/// Every subfunctor of Ext¹ on the catalog, in lexicographic order over
/// pairs then canonical subspace forms. `budget` caps the unpruned lattice size.
pub fn enumerate_subfunctors(cat: &Category, budget: u128) -> Result<Vec<SubfunctorExt>, ExactError> {
    let n = cat.len();
    let f = cat.field();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| cat.ext.dim(i, j) > 0).collect();
    let lattice = pairs.iter().fold(1u128, |acc, &(i, j)| acc.saturating_mul(Subspace::count_all(f, cat.ext.dim(i, j))));
    if lattice > budget {
        return Err(ExactError::Budget { lattice, budget });
    }
    let choices: Vec<Vec<Subspace>> = pairs.iter().map(|&(i, j)| Subspace::enumerate_all(f, cat.ext.dim(i, j))).collect();
    let base = SubfunctorExt::split(cat).table;
    let Some(first) = choices.first() else {
        return Ok(vec![SubfunctorExt { table: base, provenance: Provenance::Enumerated }]);
    };
    let ctx = Search { cat, pairs: &pairs, choices: &choices };
    let parts: Vec<Vec<Vec<Vec<Subspace>>>> = first
        .par_iter()
        .map(|s| {
            let mut table = base.clone();
            table[pairs[0].0][pairs[0].1] = s.clone();
            let mut out = Vec::new();
            if ctx.consistent(&table, 0) {
                ctx.extend(&mut table, 1, &mut out);
            }
            out
        })
        .collect();
    Ok(parts
        .into_iter()
        .flatten()
        .map(|table| SubfunctorExt { table, provenance: Provenance::Enumerated })
        .collect())
}

struct Search<'a> {
    cat: &'a Category,
    pairs: &'a [(usize, usize)],
    choices: &'a [Vec<Subspace>],
}

impl Search<'_> {
    /// Checks every closure constraint between pair `d` and pairs `0..=d`.
    fn consistent(&self, table: &[Vec<Subspace>], d: usize) -> bool {
        let (i, j) = self.pairs[d];
        for &(a, b) in &self.pairs[..=d] {
            // From (i, j) into an assigned pair and back.
            if a == i && push_violation(self.cat, table, i, j, b).is_some() {
                return false;
            }
            if b == j && pull_violation(self.cat, table, i, j, a).is_some() {
                return false;
            }
            if a == i && push_violation(self.cat, table, i, b, j).is_some() {
                return false;
            }
            if b == j && pull_violation(self.cat, table, a, j, i).is_some() {
                return false;
            }
        }
        true
    }

    fn extend(&self, table: &mut Vec<Vec<Subspace>>, d: usize, out: &mut Vec<Vec<Vec<Subspace>>>) {
        if d == self.pairs.len() {
            out.push(table.clone());
            return;
        }
        let (i, j) = self.pairs[d];
        for s in &self.choices[d] {
            table[i][j] = s.clone();
            if self.consistent(table, d) {
                self.extend(table, d + 1, out);
            }
        }
        table[i][j] = Subspace::zero(self.cat.field(), self.cat.ext.dim(i, j));
    }
}

/// An enumerated structure with its reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnumeratedStructure {
    pub structure: SubfunctorExt,
    pub axioms: AxiomReport,
    pub proj_inj: ProjInjReport,
}

impl EnumeratedStructure {
    pub fn is_exact(&self) -> bool {
        self.axioms.passed()
    }

    /// In the domain of the balanced pair correspondence.
    pub fn is_eligible(&self) -> bool {
        self.is_exact() && self.proj_inj.enough_projectives && self.proj_inj.enough_injectives
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Enumeration {
    pub subfunctors: usize,
    pub bound: usize,
    pub structures: Vec<EnumeratedStructure>,
    /// Subfunctors rejected by the axiom check.
    pub rejected: Vec<EnumeratedStructure>,
}

impl Enumeration {
    pub fn eligible(&self) -> impl Iterator<Item = &EnumeratedStructure> {
        self.structures.iter().filter(|s| s.is_eligible())
    }
}

/// All exact structures: subfunctors that pass every axiom at `bound`.
pub fn enumerate_exact_structures(cat: &Category, bound: usize, budget: u128) -> Result<Enumeration, ExactError> {
    let subs = enumerate_subfunctors(cat, budget)?;
    let count = subs.len();
    let reports: Vec<EnumeratedStructure> = subs
        .into_par_iter()
        .map(|s| {
            let axioms = validate_axioms(cat, &s, bound);
            let proj_inj = proj_inj_report(cat, &s);
            EnumeratedStructure { structure: s, axioms, proj_inj }
        })
        .collect();
    let (structures, rejected) = reports.into_iter().partition(EnumeratedStructure::is_exact);
    Ok(Enumeration { subfunctors: count, bound, structures, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    fn linear(p: u32, n: usize) -> Category {
        Category::build(Algebra::linear(Field::new(p).unwrap(), n).unwrap(), n, 1 << 20).unwrap()
    }

    fn kronecker() -> Category {
        let alg = Algebra::path_algebra(Field::new(2).unwrap(), 2, vec![(0, 1), (0, 1)]).unwrap();
        Category::build(alg, 3, 1 << 24).unwrap()
    }

    #[test]
    fn split_and_abelian_are_subfunctors() {
        for cat in [linear(2, 2), linear(2, 3)] {
            assert!(validate_subfunctor(&cat, &SubfunctorExt::split(&cat)).is_ok());
            assert!(validate_subfunctor(&cat, &SubfunctorExt::abelian(&cat)).is_ok());
            let split = SubfunctorExt::split(&cat);
            assert_eq!(split.projectives(), (0..cat.len()).collect::<Vec<_>>());
            assert_eq!(split.injectives(), (0..cat.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn abelian_projectives_match_catalog_flags() {
        let cat = linear(2, 3);
        let ab = SubfunctorExt::abelian(&cat);
        assert_eq!(ab.projectives(), cat.catalog().projectives());
        assert_eq!(ab.injectives(), cat.catalog().injectives());
    }

    #[test]
    fn closure_of_single_class_on_a2() {
        let cat = linear(2, 2);
        assert_eq!(generate_closure(&cat, &[]), SubfunctorExt::split(&cat));
        let (x, y) = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).find(|&(x, y)| cat.ext.dim(x, y) > 0).unwrap();
        let g = generate_closure(&cat, &[ExtElement { x, y, coords: vec![1] }]);
        assert_eq!(g, SubfunctorExt::abelian(&cat));
    }

    #[test]
    fn a2_has_two_subfunctors() {
        let cat = linear(2, 2);
        let subs = enumerate_subfunctors(&cat, 1 << 20).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0], SubfunctorExt::split(&cat));
        assert_eq!(subs[1], SubfunctorExt::abelian(&cat));
    }

    #[test]
    fn enumeration_budget_reports_lattice() {
        let cat = linear(2, 3);
        match enumerate_subfunctors(&cat, 1) {
            Err(ExactError::Budget { lattice, budget: 1 }) => assert!(lattice > 1),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_kronecker_table_is_rejected() {
        let cat = kronecker();
        let f = cat.field();
        let (x, y) = (0..cat.len())
            .flat_map(|x| (0..cat.len()).map(move |y| (x, y)))
            .find(|&(x, y)| cat.ext.dim(x, y) == 2)
            .expect("Kronecker catalog has a 2-dimensional Ext group");
        let mut found = None;
        for line in Subspace::enumerate_all(f, 2).into_iter().filter(|s| s.dim() == 1) {
            let mut t = SubfunctorExt::split(&cat).table;
            t[x][y] = line;
            let s = SubfunctorExt::from_table(&cat, t, Provenance::Explicit).unwrap();
            if let Err(w) = validate_subfunctor(&cat, &s) {
                found = Some(w);
                break;
            }
        }
        let w = found.expect("some line is not functorially closed");
        assert_eq!(w.from, (x, y));
    }

    #[test]
    fn export_round_trip() {
        let cat = linear(2, 3);
        let ab = SubfunctorExt::abelian(&cat);
        let e = ab.export(&cat);
        let json = serde_json::to_string(&e).unwrap();
        let back: StructureExport = serde_json::from_str(&json).unwrap();
        assert_eq!(SubfunctorExt::import(&cat, &back).unwrap(), ab);
        let other = linear(2, 2);
        assert!(matches!(SubfunctorExt::import(&other, &back), Err(ExactError::Fingerprint { .. })));
    }

    #[test]
    fn from_table_rejects_wrong_shape() {
        let cat = linear(2, 2);
        assert!(matches!(SubfunctorExt::from_table(&cat, vec![], Provenance::Explicit), Err(ExactError::Shape(_))));
    }
}
