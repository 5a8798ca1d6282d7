//! Exhaustive catalog of indecomposable modules up to a dimension bound.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Algebra, AlgebraError, Hom, Module};
use crate::linalg::{Field, Matrix, Subspace};

/// One representative per isomorphism class of indecomposables with total
/// dimension at most `dim_bound`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Catalog {
    pub dim_bound: usize,
    pub modules: Vec<Module>,
    pub labels: Vec<String>,
    pub projective: Vec<bool>,
    pub injective: Vec<bool>,
    /// Radical of `End(C)` as a subspace of the hom-space coordinates.
    pub radicals: Vec<Subspace>,
    #[serde(skip)]
    lookup: HashMap<Module, usize>,
}

/// A module matched against the catalog: `M ≅ ⊕ C_{summands[k]}` with split
/// structure maps for each summand.
#[derive(Debug, Clone)]
pub struct Identified {
    pub summands: Vec<usize>,
    pub inclusions: Vec<Hom>,
    pub projections: Vec<Hom>,
}

impl Identified {
    /// Multiplicity of each catalog index.
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for &s in &self.summands {
            m[s] += 1;
        }
        m
    }
}

impl Catalog {
    /// Exhaustive search over dimension vectors and action matrices.
    /// `budget` caps the number of candidate representations examined.
    pub fn enumerate(alg: &Algebra, dim_bound: usize, budget: u128) -> Result<Catalog, AlgebraError> {
        let f = alg.field();
        let nv = alg.vertices();
        let mut dim_vectors = Vec::new();
        for total in 1..=dim_bound {
            let mut cur = vec![0; nv];
            compositions(total, 0, &mut cur, &mut dim_vectors);
        }
        dim_vectors.retain(|d| support_connected(alg, d));

        let mut needed: u128 = 0;
        for d in &dim_vectors {
            let entries: usize = alg.arrows().iter().map(|&(s, t)| d[s] * d[t]).sum();
            let count = (f.p() as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
            needed = needed.saturating_add(count);
        }
        if needed > budget {
            return Err(AlgebraError::Budget { needed, budget });
        }

        let mut modules: Vec<Module> = Vec::new();
        for d in &dim_vectors {
            let shapes: Vec<(usize, usize)> = alg.arrows().iter().map(|&(s, t)| (d[t], d[s])).collect();
            let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
            for fill in f.all_vectors(entries) {
                let mut off = 0;
                let action: Vec<Matrix> = shapes
                    .iter()
                    .map(|&(r, c)| {
                        let m = Matrix::from_fn(f, r, c, |i, j| fill[off + i * c + j] as i64);
                        off += r * c;
                        m
                    })
                    .collect();
                let Ok(m) = alg.module(d.clone(), action) else { continue };
                if !alg.is_indecomposable(&m) {
                    continue;
                }
                if modules.iter().any(|x| x.dims() == m.dims() && alg.find_iso(x, &m).is_some()) {
                    continue;
                }
                modules.push(m);
            }
        }
        Ok(Self::from_modules(alg, dim_bound, modules))
    }

    /// Builds a catalog from known pairwise non-isomorphic indecomposables.
    pub fn from_modules(alg: &Algebra, dim_bound: usize, modules: Vec<Module>) -> Catalog {
        let nv = alg.vertices();
        let projective = modules
            .iter()
            .map(|m| (0..nv).any(|v| alg.find_iso(alg.projective(v), m).is_some()))
            .collect();
        let injective = modules
            .iter()
            .map(|m| (0..nv).any(|v| alg.find_iso(alg.injective(v), m).is_some()))
            .collect();
        let mut labels: Vec<String> = Vec::new();
        for m in &modules {
            let base = format!("({})", m.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
            let dup = labels.iter().filter(|l| l.split('#').next() == Some(base.as_str())).count();
            labels.push(if dup == 0 { base } else { format!("{base}#{}", dup + 1) });
        }
        let radicals = modules.iter().map(|m| radical_of_local_end(alg, m)).collect();
        let lookup = modules.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Catalog { dim_bound, modules, labels, projective, injective, radicals, lookup }
    }

    /// Restores the lookup table after deserialization.
    pub fn reindex(&mut self) {
        self.lookup = self.modules.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.modules.iter().map(Module::total_dim).max().unwrap_or(0)
    }

    pub fn projectives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.projective[i]).collect()
    }

    pub fn injectives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.injective[i]).collect()
    }

    /// Catalog index of an indecomposable, with an iso `C_index -> m`.
    pub fn index_of(&self, alg: &Algebra, m: &Module) -> Option<(usize, Hom, Hom)> {
        if let Some(&i) = self.lookup.get(m) {
            return Some((i, Hom::identity(m), Hom::identity(m)));
        }
        self.modules
            .iter()
            .enumerate()
            .filter(|(_, c)| c.dims() == m.dims())
            .find_map(|(i, c)| alg.find_iso(c, m).map(|(phi, inv)| (i, phi, inv)))
    }

    /// Decomposes `m` and matches every summand against the catalog.
    pub fn identify(&self, alg: &Algebra, m: &Module) -> Result<Identified, AlgebraError> {
        if let Some(&i) = self.lookup.get(m) {
            return Ok(Identified { summands: vec![i], inclusions: vec![Hom::identity(m)], projections: vec![Hom::identity(m)] });
        }
        let mut out = Identified { summands: Vec::new(), inclusions: Vec::new(), projections: Vec::new() };
        for s in alg.split_indecomposables(m) {
            let (i, phi, inv) = self
                .index_of(alg, &s.module)
                .ok_or_else(|| AlgebraError::NotInCatalog(s.module.dims().to_vec()))?;
            out.summands.push(i);
            out.inclusions.push(s.inclusion.after(&phi));
            out.projections.push(inv.after(&s.projection));
        }
        Ok(out)
    }

    /// Is `m` in the additive closure of `members`?
    pub fn in_add(&self, alg: &Algebra, m: &Module, members: &[usize]) -> Result<bool, AlgebraError> {
        Ok(self.identify(alg, m)?.summands.iter().all(|s| members.contains(s)))
    }
}

fn compositions(remaining: usize, idx: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(cur.clone());
        return;
    }
    for k in (0..=remaining).rev() {
        cur[idx] = k;
        compositions(remaining - k, idx + 1, cur, out);
    }
}

fn support_connected(alg: &Algebra, d: &[usize]) -> bool {
    let support: Vec<usize> = (0..d.len()).filter(|&v| d[v] > 0).collect();
    let Some(&start) = support.first() else { return false };
    let mut seen = vec![false; d.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in alg.arrows() {
            for (a, b) in [(s, t), (t, s)] {
                if a == v && d[b] > 0 && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

/// Radical of a local endomorphism ring, in hom-space coordinates.
///
/// When the residue field is `F_p`, every basis element `b` is congruent to a
/// scalar `λ` modulo the radical, so the radical is spanned by the nilpotent
/// elements `b - λ·id`. Otherwise falls back to collecting all nilpotents.
pub fn radical_of_local_end(alg: &Algebra, m: &Module) -> Subspace {
    radical_by_scalar_shift(alg, m).unwrap_or_else(|| radical_by_enumeration(alg, m))
}

pub fn radical_by_scalar_shift(alg: &Algebra, m: &Module) -> Option<Subspace> {
    let f = alg.field();
    let end = alg.hom_space(m, m);
    let id = Hom::identity(m);
    let mut vecs = Vec::new();
    for b in end.basis() {
        let shifted = (0..f.p()).map(|l| b.sub(&id.scale(l))).find(Hom::is_nilpotent)?;
        vecs.push(end.coords(&shifted));
    }
    let rad = Subspace::from_vectors(f, end.dim(), &vecs);
    (rad.dim() + 1 == end.dim()).then_some(rad)
}

pub fn radical_by_enumeration(alg: &Algebra, m: &Module) -> Subspace {
    let f: Field = alg.field();
    let end = alg.hom_space(m, m);
    let nil: Vec<Vec<u32>> = f
        .all_vectors(end.dim())
        .filter(|c| end.combine(f, m, m, c).is_nilpotent())
        .collect();
    Subspace::from_vectors(f, end.dim(), &nil)
}
