//! Bound quiver algebras `kQ/I` over `F_p` and their finite-dimensional right
//! modules, realized as quiver representations.
//!
//! Conventions: paths compose left to right (`a*b` means `a` then `b`), an
//! arrow `a: i -> j` acts on a module by a matrix `V_i -> V_j`, and the
//! projective `P_v = e_v A` has basis the paths starting at `v`.

mod catalog;
mod decompose;
mod module;
pub mod spec;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Field, LinalgError, Matrix, Subspace};

pub use catalog::{radical_by_enumeration, radical_by_scalar_shift, radical_of_local_end, Catalog, Identified};
pub use decompose::{Decomposition, Summand};
pub use module::{DirectSum, Hom, HomSpace, Module, Quotient};
pub use spec::AlgebraSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("spec parse error: {0}")]
    Parse(String),
    #[error("relation '{relation}' column {column}: {message}")]
    Relation { relation: String, column: usize, message: String },
    #[error("relations are not admissible: {0}")]
    NotAdmissible(String),
    #[error("quotient is not finite-dimensional within path length {0}")]
    InfiniteDimensional(usize),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("search budget exceeded: {needed} candidates over budget {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("module has a summand not present in the catalog (dims {0:?})")]
    NotInCatalog(Vec<usize>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A path in the quiver; an empty arrow list is the trivial path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn concat(&self, other: &Path) -> Option<Path> {
        (self.target == other.source).then(|| {
            let mut arrows = self.arrows.clone();
            arrows.extend_from_slice(&other.arrows);
            Path { source: self.source, target: other.target, arrows }
        })
    }
}

/// A relation as a linear combination of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(u32, Path)>,
}

/// Finite-dimensional algebra `kQ/I` with cached path basis and multiplication.
#[derive(Debug, Clone)]
pub struct Algebra {
    field: Field,
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    names: Vec<String>,
    relations: Vec<Relation>,
    /// Paths of length at most `max_len`; everything longer lies in `I`.
    max_len: usize,
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    ideal: Subspace,
    basis: Vec<usize>,
    structure: Vec<Vec<Vec<u32>>>,
    projectives: Vec<Module>,
    injectives: Vec<Module>,
}

impl Algebra {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self, AlgebraError> {
        let field = Field::new(spec.field.p)?;
        let names = spec.arrow_names();
        if names.len() != spec.quiver.arrows.len() {
            return Err(AlgebraError::Quiver(format!(
                "{} arrow names for {} arrows",
                names.len(),
                spec.quiver.arrows.len()
            )));
        }
        let mut relations = Vec::new();
        for text in &spec.relations {
            let terms = spec::parse_relation(text, &names)?;
            relations.push((text.clone(), terms));
        }
        Self::new(field, spec.quiver.vertices, spec.quiver.arrows.iter().map(|a| (a[0], a[1])).collect(), names, &relations, spec.bounds.path_length)
    }

    /// Path algebra of a quiver with no relations (must be acyclic to be finite).
    pub fn path_algebra(field: Field, vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self, AlgebraError> {
        let names = spec::default_arrow_names(arrows.len());
        Self::new(field, vertices, arrows, names, &[], 16)
    }

    /// Linear quiver `0 -> 1 -> ... -> n-1`.
    pub fn linear(field: Field, n: usize) -> Result<Self, AlgebraError> {
        Self::path_algebra(field, n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn new(
        field: Field,
        vertices: usize,
        arrows: Vec<(usize, usize)>,
        names: Vec<String>,
        relations: &[(String, Vec<spec::RelationTerm>)],
        path_length: usize,
    ) -> Result<Self, AlgebraError> {
        if vertices == 0 {
            return Err(AlgebraError::Quiver("no vertices".into()));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(AlgebraError::Quiver(format!("arrow {s}->{t} out of range")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(n) = names.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(AlgebraError::Quiver(format!("duplicate arrow name '{n}'")));
        }

        let rels = relations
            .iter()
            .map(|(text, terms)| build_relation(field, &arrows, text, terms))
            .collect::<Result<Vec<_>, _>>()?;

        // Grow the length cutoff until every path of that length lies in the ideal.
        for max_len in 1..=path_length.max(1) {
            let paths = all_paths(vertices, &arrows, max_len);
            let path_index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let gens = ideal_generators(field, &paths, &path_index, &rels, max_len);
            let ideal = Subspace::from_vectors(field, paths.len(), &gens);
            let saturated = paths.iter().enumerate().filter(|(_, p)| p.len() == max_len).all(|(i, _)| {
                let mut v = vec![0; paths.len()];
                v[i] = 1;
                ideal.contains(&v)
            });
            if !saturated {
                continue;
            }
            let basis: Vec<usize> = {
                let mut b = ideal.quotient_cols();
                b.sort_by(|&x, &y| paths[x].len().cmp(&paths[y].len()).then_with(|| paths[x].cmp(&paths[y])));
                b
            };
            let mut alg = Algebra {
                field,
                vertices,
                arrows: arrows.clone(),
                names: names.clone(),
                relations: rels.clone(),
                max_len,
                paths,
                path_index,
                ideal,
                basis,
                structure: Vec::new(),
                projectives: Vec::new(),
                injectives: Vec::new(),
            };
            alg.structure = alg.compute_structure();
            alg.check_associative()?;
            alg.projectives = (0..vertices).map(|v| alg.build_projective(v)).collect();
            alg.injectives = (0..vertices).map(|v| alg.build_injective(v)).collect();
            return Ok(alg);
        }
        Err(AlgebraError::InfiniteDimensional(path_length))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis paths of the quotient, shortest first.
    pub fn basis_paths(&self) -> Vec<&Path> {
        self.basis.iter().map(|&i| &self.paths[i]).collect()
    }

    /// Product of basis elements `i * j` as coordinates in the path basis.
    pub fn multiply_basis(&self, i: usize, j: usize) -> &[u32] {
        &self.structure[i][j]
    }

    /// Normal form of a path: coordinates over the basis paths.
    pub fn normal_form(&self, path: &Path) -> Vec<u32> {
        let mut out = vec![0; self.basis.len()];
        if path.len() > self.max_len {
            return out;
        }
        let Some(&idx) = self.path_index.get(path) else {
            return out;
        };
        let mut v = vec![0; self.paths.len()];
        v[idx] = 1;
        let r = self.ideal.reduce(&v);
        for (k, &b) in self.basis.iter().enumerate() {
            out[k] = r[b];
        }
        out
    }

    fn compute_structure(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.basis.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let pi = &self.paths[self.basis[i]];
                        let pj = &self.paths[self.basis[j]];
                        match pi.concat(pj) {
                            Some(q) => self.normal_form(&q),
                            None => vec![0; n],
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn mul_coords(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.basis.len();
        let mut out = vec![0; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    f.axpy(f.mul(xi, yj), &self.structure[i][j], &mut out);
                }
            }
        }
        out
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.basis.len();
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(&self.structure[i][j], &unit(k));
                    let right = self.mul_coords(&unit(i), &self.structure[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAdmissible(format!(
                            "multiplication not associative on basis ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn basis_between(&self, source: Option<usize>, target: Option<usize>) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| {
                let p = &self.paths[self.basis[k]];
                source.is_none_or(|s| p.source == s) && target.is_none_or(|t| p.target == t)
            })
            .collect()
    }

    fn build_projective(&self, v: usize) -> Module {
        let f = self.field;
        let at: Vec<Vec<usize>> = (0..self.vertices).map(|w| self.basis_between(Some(v), Some(w))).collect();
        let dims = at.iter().map(Vec::len).collect();
        let action = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let arrow = Path { source: s, target: t, arrows: vec![a] };
                let mut m = Matrix::zeros(f, at[t].len(), at[s].len());
                for (c, &k) in at[s].iter().enumerate() {
                    let q = self.paths[self.basis[k]].concat(&arrow).expect("composable");
                    let nf = self.normal_form(&q);
                    for (r, &k2) in at[t].iter().enumerate() {
                        m[(r, c)] = nf[k2];
                    }
                }
                m
            })
            .collect();
        Module::from_parts(f, dims, action)
    }

    fn build_injective(&self, v: usize) -> Module {
        let f = self.field;
        let at: Vec<Vec<usize>> = (0..self.vertices).map(|w| self.basis_between(Some(w), Some(v))).collect();
        let dims = at.iter().map(Vec::len).collect();
        let action = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                // (phi . a)(q') = phi(a q') for q' a basis path t -> v.
                let arrow = Path { source: s, target: t, arrows: vec![a] };
                let mut m = Matrix::zeros(f, at[t].len(), at[s].len());
                for (r, &k2) in at[t].iter().enumerate() {
                    let q = arrow.concat(&self.paths[self.basis[k2]]).expect("composable");
                    let nf = self.normal_form(&q);
                    for (c, &k) in at[s].iter().enumerate() {
                        m[(r, c)] = nf[k];
                    }
                }
                m
            })
            .collect();
        Module::from_parts(f, dims, action)
    }

    /// Indecomposable projective `P_v = e_v A`.
    pub fn projective(&self, v: usize) -> &Module {
        &self.projectives[v]
    }

    /// Indecomposable injective `I_v = D(A e_v)`.
    pub fn injective(&self, v: usize) -> &Module {
        &self.injectives[v]
    }

    /// Simple module at vertex `v`.
    pub fn simple(&self, v: usize) -> Module {
        let dims = (0..self.vertices).map(|w| usize::from(w == v)).collect();
        self.module_unchecked(dims, |s, t| Matrix::zeros(self.field, usize::from(t == v), usize::from(s == v)))
    }

    pub fn zero_module(&self) -> Module {
        let dims = vec![0; self.vertices];
        self.module_unchecked(dims, |_, _| Matrix::zeros(self.field, 0, 0))
    }

    fn module_unchecked(&self, dims: Vec<usize>, mut f: impl FnMut(usize, usize) -> Matrix) -> Module {
        let action = self.arrows.iter().map(|&(s, t)| f(s, t)).collect();
        Module::from_parts(self.field, dims, action)
    }

    /// Basis paths starting at `v`, grouped by target vertex; they index `P_v`.
    pub fn projective_basis(&self, v: usize, w: usize) -> Vec<&Path> {
        self.basis_between(Some(v), Some(w)).into_iter().map(|k| &self.paths[self.basis[k]]).collect()
    }

    /// Validates shapes and relations, returning the module.
    pub fn module(&self, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Module, AlgebraError> {
        let m = Module::from_parts(self.field, dims, action);
        self.check_module(&m)?;
        Ok(m)
    }

    pub fn check_module(&self, m: &Module) -> Result<(), AlgebraError> {
        self.check_shape(m)?;
        for rel in &self.relations {
            let mut acc = Matrix::zeros(self.field, m.dims()[rel.target], m.dims()[rel.source]);
            for (c, path) in &rel.terms {
                acc = acc.add(&self.path_matrix(m, path).scale(*c));
            }
            if !acc.is_zero() {
                return Err(AlgebraError::InvalidModule(format!(
                    "relation {:?} does not vanish",
                    rel.terms.iter().map(|(_, p)| &p.arrows).collect::<Vec<_>>()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn check_shape(&self, m: &Module) -> Result<(), AlgebraError> {
        if m.dims().len() != self.vertices || m.action().len() != self.arrows.len() {
            return Err(AlgebraError::Shape(format!(
                "module has {} vertices / {} arrows, algebra has {} / {}",
                m.dims().len(),
                m.action().len(),
                self.vertices,
                self.arrows.len()
            )));
        }
        if m.field() != self.field {
            return Err(AlgebraError::Shape("field mismatch".into()));
        }
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            if m.action()[a].shape() != (m.dims()[t], m.dims()[s]) {
                return Err(AlgebraError::Shape(format!("arrow {a} has wrong matrix shape")));
            }
        }
        Ok(())
    }

    /// Action matrix of a path (`V_source -> V_target`).
    pub fn path_matrix(&self, m: &Module, path: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field, m.dims()[path.source]);
        for &a in &path.arrows {
            acc = m.action()[a].mul(&acc);
        }
        acc
    }
}

fn build_relation(
    field: Field,
    arrows: &[(usize, usize)],
    text: &str,
    terms: &[spec::RelationTerm],
) -> Result<Relation, AlgebraError> {
    let mut out: Vec<(u32, Path)> = Vec::new();
    let mut ends = None;
    for (coef, arrow_seq) in terms {
        let path = path_from_arrows(arrows, arrow_seq)
            .ok_or_else(|| AlgebraError::NotAdmissible(format!("'{text}': non-composable path")))?;
        if path.len() < 2 {
            return Err(AlgebraError::NotAdmissible(format!(
                "'{text}': term of length {} is not in the square of the arrow ideal",
                path.len()
            )));
        }
        match ends {
            None => ends = Some((path.source, path.target)),
            Some(e) if e != (path.source, path.target) => {
                return Err(AlgebraError::NotAdmissible(format!("'{text}': terms are not parallel paths")));
            }
            _ => {}
        }
        let c = field.reduce(*coef);
        if let Some(slot) = out.iter_mut().find(|(_, p)| *p == path) {
            slot.0 = field.add(slot.0, c);
        } else {
            out.push((c, path));
        }
    }
    out.retain(|(c, _)| *c != 0);
    let (source, target) = ends.ok_or_else(|| AlgebraError::NotAdmissible(format!("'{text}': empty")))?;
    if out.is_empty() {
        return Err(AlgebraError::NotAdmissible(format!("'{text}': relation is zero over F_{}", field.p())));
    }
    Ok(Relation { source, target, terms: out })
}

fn path_from_arrows(arrows: &[(usize, usize)], seq: &[usize]) -> Option<Path> {
    let (&first, rest) = seq.split_first()?;
    let mut target = arrows[first].1;
    for &a in rest {
        if arrows[a].0 != target {
            return None;
        }
        target = arrows[a].1;
    }
    Some(Path { source: arrows[first].0, target, arrows: seq.to_vec() })
}

fn all_paths(vertices: usize, arrows: &[(usize, usize)], max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..vertices).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (a, &(s, t)) in arrows.iter().enumerate() {
                if s == p.target {
                    let mut q = p.clone();
                    q.arrows.push(a);
                    q.target = t;
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    // Longest paths first so they become pivots and short paths span the quotient.
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

fn ideal_generators(
    field: Field,
    paths: &[Path],
    index: &HashMap<Path, usize>,
    rels: &[Relation],
    max_len: usize,
) -> Vec<Vec<u32>> {
    let mut gens = Vec::new();
    for rel in rels {
        let min_len = rel.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for u in paths.iter().filter(|u| u.target == rel.source) {
            for v in paths.iter().filter(|v| v.source == rel.target) {
                if u.len() + min_len + v.len() > max_len {
                    continue;
                }
                let mut g = vec![0; paths.len()];
                for (c, t) in &rel.terms {
                    let q = u.concat(t).and_then(|x| x.concat(v)).expect("composable");
                    if let Some(&i) = index.get(&q) {
                        g[i] = field.add(g[i], *c);
                    }
                }
                gens.push(g);
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn a2_has_dimension_three() {
        // Two trivial paths and one arrow.
        let alg = Algebra::linear(f2(), 2).unwrap();
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn single_vertex_is_the_field() {
        let alg = Algebra::path_algebra(f2(), 1, vec![]).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn loop_with_square_relation() {
        let spec = AlgebraSpec::from_toml(
            "relations = [\"a*a\"]\n[field]\np = 3\n[quiver]\nvertices = 1\narrows = [[0,0]]\n",
        )
        .unwrap();
        let alg = Algebra::from_spec(&spec).unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.projective(0).dims(), &[2]);
    }

    #[test]
    fn free_loop_is_infinite() {
        let err = Algebra::path_algebra(f2(), 1, vec![(0, 0)]).unwrap_err();
        assert!(matches!(err, AlgebraError::InfiniteDimensional(_)));
    }

    #[test]
    fn non_admissible_relation_rejected() {
        let spec = AlgebraSpec::from_toml(
            "relations = [\"a\"]\n[field]\np = 2\n[quiver]\nvertices = 2\narrows = [[0,1]]\n",
        )
        .unwrap();
        assert!(matches!(Algebra::from_spec(&spec), Err(AlgebraError::NotAdmissible(_))));
        let spec = AlgebraSpec::from_toml(
            "relations = [\"a*b\"]\n[field]\np = 4\n[quiver]\nvertices = 3\narrows = [[0,1],[1,2]]\n",
        )
        .unwrap();
        assert!(matches!(Algebra::from_spec(&spec), Err(AlgebraError::Linalg(LinalgError::NotPrime(4)))));
    }

    #[test]
    fn a3_with_zero_relation() {
        let spec = AlgebraSpec::from_toml(
            "relations = [\"a*b\"]\n[field]\np = 2\n[quiver]\nvertices = 3\narrows = [[0,1],[1,2]]\n",
        )
        .unwrap();
        let alg = Algebra::from_spec(&spec).unwrap();
        // e0 e1 e2 a b
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.projective(0).dims(), &[1, 1, 0]);
        assert_eq!(alg.injective(2).dims(), &[0, 1, 1]);
    }

    #[test]
    fn projectives_and_injectives_of_a3() {
        let alg = Algebra::linear(f2(), 3).unwrap();
        assert_eq!(alg.projective(0).dims(), &[1, 1, 1]);
        assert_eq!(alg.projective(2).dims(), &[0, 0, 1]);
        assert_eq!(alg.injective(0).dims(), &[1, 0, 0]);
        assert_eq!(alg.injective(2).dims(), &[1, 1, 1]);
        for v in 0..3 {
            alg.check_module(alg.projective(v)).unwrap();
            alg.check_module(alg.injective(v)).unwrap();
        }
    }

    #[test]
    fn commutativity_relation() {
        // Commutative square 0->1->3, 0->2->3 with a*c - b*d.
        let spec = AlgebraSpec::from_toml(
            "relations = [\"a*c - b*d\"]\n[field]\np = 3\n[quiver]\nvertices = 4\narrows = [[0,1],[0,2],[1,3],[2,3]]\n",
        )
        .unwrap();
        let alg = Algebra::from_spec(&spec).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        assert_eq!(alg.projective(0).dims(), &[1, 1, 1, 1]);
    }
}
