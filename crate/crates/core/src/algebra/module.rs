use std::fmt;

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::linalg::{Field, Matrix, Subspace};

/// A finite-dimensional right module given as a quiver representation:
/// one vector space per vertex and one matrix per arrow.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Module {
    field: Field,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)
    }
}

impl Module {
    pub(crate) fn from_parts(field: Field, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        Module { field, dims, action }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Conjugates by per-vertex invertible matrices `g_v`: new action is
    /// `g_t A g_s^{-1}`. Returns the module and the iso `self -> new`.
    pub fn conjugate(&self, arrows: &[(usize, usize)], change: &[Matrix]) -> (Module, Hom) {
        let inv: Vec<Matrix> = change.iter().map(|g| g.inverse().expect("basis change must be invertible")).collect();
        let action = arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| change[t].mul(&self.action[a]).mul(&inv[s]))
            .collect();
        (Module { field: self.field, dims: self.dims.clone(), action }, Hom { blocks: change.to_vec() })
    }
}

/// A module homomorphism, one matrix per vertex (`source_v -> target_v`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hom {
    blocks: Vec<Matrix>,
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

impl Hom {
    pub fn from_blocks(blocks: Vec<Matrix>) -> Self {
        Hom { blocks }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::cols).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    pub fn identity(m: &Module) -> Hom {
        Hom { blocks: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect() }
    }

    pub fn zero(source: &Module, target: &Module) -> Hom {
        Hom {
            blocks: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(source.field, t, s))
                .collect(),
        }
    }

    /// `self ∘ first` (apply `first`, then `self`).
    pub fn after(&self, first: &Hom) -> Hom {
        Hom { blocks: self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &Hom) -> Hom {
        Hom { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Hom) -> Hom {
        Hom { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> Hom {
        Hom { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<Hom> {
        self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>().map(|blocks| Hom { blocks })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.blocks.iter().all(Matrix::is_nilpotent)
    }

    pub fn pow(&self, e: u32) -> Hom {
        Hom { blocks: self.blocks.iter().map(|b| b.pow(e)).collect() }
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    /// `[f_1 | f_2 | ...]` out of a direct sum of the sources.
    pub fn hcat(parts: &[Hom]) -> Hom {
        let first = &parts[0];
        let blocks = (0..first.blocks.len())
            .map(|v| parts[1..].iter().fold(first.blocks[v].clone(), |acc, h| acc.hstack(&h.blocks[v])))
            .collect();
        Hom { blocks }
    }

    /// `[f_1 ; f_2 ; ...]` into a direct sum of the targets.
    pub fn vcat(parts: &[Hom]) -> Hom {
        let first = &parts[0];
        let blocks = (0..first.blocks.len())
            .map(|v| parts[1..].iter().fold(first.blocks[v].clone(), |acc, h| acc.vstack(&h.blocks[v])))
            .collect();
        Hom { blocks }
    }
}

/// Basis of `Hom(X, Y)` with coordinates read off at free columns of the
/// intertwining system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomSpace {
    basis: Vec<Hom>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Hom] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Hom> {
        self.basis
    }

    /// Coordinates of a hom known to lie in this space.
    pub fn coords(&self, h: &Hom) -> Vec<u32> {
        let flat = h.flatten();
        self.free.iter().map(|&c| flat[c]).collect()
    }

    pub fn combine(&self, field: Field, source: &Module, target: &Module, coeffs: &[u32]) -> Hom {
        let mut acc = Hom::zero(source, target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(*c % field.p()));
            }
        }
        acc
    }
}

/// Direct sum with its structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<Hom>,
    pub projections: Vec<Hom>,
}

/// A cokernel with projection and a per-vertex linear section of it.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: Module,
    pub projection: Hom,
    pub section: Vec<Matrix>,
}

impl Algebra {
    /// Basis of `Hom(X, Y)` in deterministic order.
    pub fn hom_space(&self, x: &Module, y: &Module) -> HomSpace {
        let f = self.field;
        let nv = self.vertices;
        let mut offsets = Vec::with_capacity(nv + 1);
        let mut total = 0;
        for v in 0..nv {
            offsets.push(total);
            total += y.dims[v] * x.dims[v];
        }
        offsets.push(total);
        let eqs: usize = self.arrows.iter().map(|&(s, t)| y.dims[t] * x.dims[s]).sum();
        let mut sys = Matrix::zeros(f, eqs, total);
        let mut row0 = 0;
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let ya = &y.action[a];
            let xa = &x.action[a];
            let (ys, xs, yt, xt) = (y.dims[s], x.dims[s], y.dims[t], x.dims[t]);
            // (Y_a f_s - f_t X_a)[r][c]
            for r in 0..yt {
                for c in 0..xs {
                    let row = row0 + r * xs + c;
                    for k in 0..ys {
                        let idx = offsets[s] + k * xs + c;
                        sys[(row, idx)] = f.add(sys[(row, idx)], ya[(r, k)]);
                    }
                    for k in 0..xt {
                        let idx = offsets[t] + r * xt + k;
                        sys[(row, idx)] = f.sub(sys[(row, idx)], xa[(k, c)]);
                    }
                }
            }
            row0 += yt * xs;
        }
        let (vecs, free) = sys.kernel_basis();
        let basis = vecs
            .iter()
            .map(|v| Hom {
                blocks: (0..nv)
                    .map(|w| {
                        Matrix::from_fn(f, y.dims[w], x.dims[w], |r, c| v[offsets[w] + r * x.dims[w] + c] as i64)
                    })
                    .collect(),
            })
            .collect();
        HomSpace { basis, free }
    }

    pub fn hom_dim(&self, x: &Module, y: &Module) -> usize {
        self.hom_space(x, y).dim()
    }

    /// Checks the intertwining identity `Y_a h_s = h_t X_a` for every arrow.
    pub fn is_hom(&self, x: &Module, y: &Module, h: &Hom) -> bool {
        if h.blocks.len() != self.vertices {
            return false;
        }
        for v in 0..self.vertices {
            if h.blocks[v].shape() != (y.dims[v], x.dims[v]) {
                return false;
            }
        }
        self.arrows
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| y.action[a].mul(&h.blocks[s]) == h.blocks[t].mul(&x.action[a]))
    }

    pub fn direct_sum(&self, parts: &[&Module]) -> DirectSum {
        let f = self.field;
        let nv = self.vertices;
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let action = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(f, dims[t], dims[s]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    m.set_block(r0, c0, &p.action[a]);
                    r0 += p.dims[t];
                    c0 += p.dims[s];
                }
                m
            })
            .collect();
        let module = Module { field: f, dims: dims.clone(), action };
        let mut offsets = vec![0; nv];
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for p in parts {
            let mut inc = Vec::new();
            let mut proj = Vec::new();
            for v in 0..nv {
                let mut i = Matrix::zeros(f, dims[v], p.dims[v]);
                let mut q = Matrix::zeros(f, p.dims[v], dims[v]);
                for k in 0..p.dims[v] {
                    i[(offsets[v] + k, k)] = 1;
                    q[(k, offsets[v] + k)] = 1;
                }
                offsets[v] += p.dims[v];
                inc.push(i);
                proj.push(q);
            }
            inclusions.push(Hom { blocks: inc });
            projections.push(Hom { blocks: proj });
        }
        DirectSum { module, inclusions, projections }
    }

    /// Submodule spanned per vertex by the columns of `bases` (assumed stable
    /// under the action and of full column rank). Returns it with its inclusion.
    pub fn submodule(&self, m: &Module, bases: Vec<Matrix>) -> (Module, Hom) {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let action = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let image = m.action[a].mul(&bases[s]);
                bases[t].solve(&image).expect("shapes agree").expect("subspace is not a submodule")
            })
            .collect();
        (Module { field: self.field, dims, action }, Hom { blocks: bases })
    }

    /// Kernel of `h: X -> Y` as a submodule of `X`.
    pub fn kernel(&self, x: &Module, h: &Hom) -> (Module, Hom) {
        let bases = (0..self.vertices)
            .map(|v| {
                let k = h.blocks[v].kernel();
                Matrix::from_col_vecs(self.field, x.dims[v], k.basis())
            })
            .collect();
        self.submodule(x, bases)
    }

    /// Image of `h: X -> Y` as a submodule of `Y`.
    pub fn image(&self, y: &Module, h: &Hom) -> (Module, Hom) {
        let bases = (0..self.vertices)
            .map(|v| {
                let s = h.blocks[v].column_space();
                Matrix::from_col_vecs(self.field, y.dims[v], s.basis())
            })
            .collect();
        self.submodule(y, bases)
    }

    /// Cokernel of `h: X -> Y`, with coordinates on the non-pivot columns of
    /// the image so the construction is canonical.
    pub fn cokernel(&self, y: &Module, h: &Hom) -> Quotient {
        let f = self.field;
        let images: Vec<Subspace> = h.blocks.iter().map(Matrix::column_space).collect();
        let mut proj = Vec::new();
        let mut section = Vec::new();
        for v in 0..self.vertices {
            let q = images[v].quotient_cols();
            let n = y.dims[v];
            let cols: Vec<Vec<u32>> = (0..n)
                .map(|c| {
                    let mut e = vec![0; n];
                    e[c] = 1;
                    images[v].quotient_coords(&e)
                })
                .collect();
            proj.push(Matrix::from_col_vecs(f, q.len(), &cols));
            let mut s = Matrix::zeros(f, n, q.len());
            for (k, &c) in q.iter().enumerate() {
                s[(c, k)] = 1;
            }
            section.push(s);
        }
        let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
        let action = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| proj[t].mul(&y.action[a]).mul(&section[s]))
            .collect();
        Quotient { module: Module { field: f, dims, action }, projection: Hom { blocks: proj }, section }
    }

    /// Map out of a cokernel induced by `g: Y -> Z` vanishing on the image.
    pub fn induced_from_quotient(&self, q: &Quotient, g: &Hom) -> Hom {
        Hom { blocks: g.blocks.iter().zip(&q.section).map(|(b, s)| b.mul(s)).collect() }
    }

    /// Homomorphism `P_v -> M` sending the idempotent `e_v` to `m ∈ M_v`.
    pub fn hom_from_projective(&self, v: usize, target: &Module, m: &[u32]) -> Hom {
        let f = self.field;
        let blocks = (0..self.vertices)
            .map(|w| {
                let cols: Vec<Vec<u32>> = self
                    .projective_basis(v, w)
                    .into_iter()
                    .map(|p| self.path_matrix(target, p).mul_vec(m))
                    .collect();
                Matrix::from_col_vecs(f, target.dims[w], &cols)
            })
            .collect();
        Hom { blocks }
    }

    /// Dual construction: `M -> I_v` determined by a functional `φ` on `M_v`,
    /// sending `x ∈ M_w` to `q ↦ φ(x·q)` for basis paths `q: w -> v`.
    pub fn hom_to_injective(&self, v: usize, source: &Module, functional: &[u32]) -> Hom {
        let f = self.field;
        let blocks = (0..self.vertices)
            .map(|w| {
                let paths = self.basis_paths_between(w, v);
                let rows: Vec<Vec<u32>> = paths
                    .iter()
                    .map(|p| {
                        let pm = self.path_matrix(source, p);
                        (0..source.dims[w]).map(|c| f.dot(functional, &pm.col(c))).collect()
                    })
                    .collect();
                Matrix::from_row_vecs(f, source.dims[w], &rows)
            })
            .collect();
        Hom { blocks }
    }

    /// Finds `t: X -> E` with `g ∘ t = h`, where `g: E -> A` and `h: X -> A`.
    pub fn lift_hom(&self, x: &Module, e: &Module, g: &Hom, h: &Hom) -> Option<Hom> {
        let hs = self.hom_space(x, e);
        let cols: Vec<Vec<u32>> = hs.basis().iter().map(|b| g.after(b).flatten()).collect();
        let coeffs = solve_columns(self.field, &cols, &h.flatten())?;
        Some(hs.combine(self.field, x, e, &coeffs))
    }

    /// Finds `t: E -> Z` with `t ∘ g = h`, where `g: A -> E` and `h: A -> Z`.
    pub fn extend_hom(&self, e: &Module, z: &Module, g: &Hom, h: &Hom) -> Option<Hom> {
        let hs = self.hom_space(e, z);
        let cols: Vec<Vec<u32>> = hs.basis().iter().map(|b| b.after(g).flatten()).collect();
        let coeffs = solve_columns(self.field, &cols, &h.flatten())?;
        Some(hs.combine(self.field, e, z, &coeffs))
    }

    pub(crate) fn basis_paths_between(&self, s: usize, t: usize) -> Vec<&super::Path> {
        self.projective_basis(s, t)
    }
}

fn solve_columns(field: Field, cols: &[Vec<u32>], rhs: &[u32]) -> Option<Vec<u32>> {
    if cols.is_empty() {
        return rhs.iter().all(|&x| x == 0).then(Vec::new);
    }
    Matrix::from_col_vecs(field, rhs.len(), cols).solve_vec(rhs)
}
