//! Short exact sequences and Yoneda `Ext¹` as a concrete `F_p`-space.
//!
//! `Ext¹(X, Y)` is computed as `Hom(ΩX, Y) / {restrictions of Hom(P0, Y)}`
//! from a projective presentation `0 -> ΩX -> P0 -> X -> 0`. Coordinates are
//! taken on the non-pivot columns of the coboundary space, so they depend
//! only on the presentation and the deterministic hom-space bases.

mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Hom, HomSpace, Module};
use crate::linalg::{Matrix, Subspace};

pub use table::{Component, ExtEntry, ExtTable, ExtTableExport, SumObject};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("invalid short exact sequence: {0}")]
    InvalidSequence(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `0 -> syzygy -> top -> module -> 0` with `top` a sum of indecomposable projectives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Presentation {
    pub module: Module,
    /// `(vertex v, element of module_v)` for each summand `P_v` of `top`.
    pub generators: Vec<(usize, Vec<u32>)>,
    pub top: Module,
    pub cover: Hom,
    pub syzygy: Module,
    pub inclusion: Hom,
}

impl Presentation {
    /// Projective cover: generators lift a basis of `X / rad X` at each vertex.
    pub fn minimal(alg: &Algebra, x: &Module) -> Presentation {
        let f = alg.field();
        let mut gens = Vec::new();
        for v in 0..alg.vertices() {
            let d = x.dims()[v];
            let mut rad = Vec::new();
            for (a, &(_, t)) in alg.arrows().iter().enumerate() {
                if t == v {
                    rad.extend(x.action()[a].col_vecs());
                }
            }
            let rad = Subspace::from_vectors(f, d, &rad);
            for c in rad.quotient_cols() {
                let mut e = vec![0; d];
                e[c] = 1;
                gens.push((v, e));
            }
        }
        Self::from_generators(alg, x, gens)
    }

    /// A deliberately redundant presentation using every basis vector as a generator.
    pub fn all_basis(alg: &Algebra, x: &Module) -> Presentation {
        let mut gens = Vec::new();
        for v in 0..alg.vertices() {
            let d = x.dims()[v];
            for c in 0..d {
                let mut e = vec![0; d];
                e[c] = 1;
                gens.push((v, e));
            }
        }
        Self::from_generators(alg, x, gens)
    }

    /// Presentation from explicit generators, which must generate `x`.
    pub fn from_generators(alg: &Algebra, x: &Module, generators: Vec<(usize, Vec<u32>)>) -> Presentation {
        let parts: Vec<&Module> = generators.iter().map(|(v, _)| alg.projective(*v)).collect();
        let top = alg.direct_sum(&parts).module;
        let maps: Vec<Hom> = generators.iter().map(|(v, m)| alg.hom_from_projective(*v, x, m)).collect();
        let cover = hcat_or_zero(&maps, &top, x);
        assert!(cover.is_surjective(), "generators do not generate the module");
        let (syzygy, inclusion) = alg.kernel(&top, &cover);
        Presentation { module: x.clone(), generators, top, cover, syzygy, inclusion }
    }

    /// Block-diagonal presentation of a direct sum, in the order of `parts`.
    pub fn direct_sum(alg: &Algebra, parts: &[&Presentation]) -> Presentation {
        let sum = alg.direct_sum(&parts.iter().map(|p| &p.module).collect::<Vec<_>>());
        let top = alg.direct_sum(&parts.iter().map(|p| &p.top).collect::<Vec<_>>());
        let syz = alg.direct_sum(&parts.iter().map(|p| &p.syzygy).collect::<Vec<_>>());
        let mut cover = Hom::zero(&top.module, &sum.module);
        let mut inclusion = Hom::zero(&syz.module, &top.module);
        let mut generators = Vec::new();
        for (l, p) in parts.iter().enumerate() {
            cover = cover.add(&sum.inclusions[l].after(&p.cover).after(&top.projections[l]));
            inclusion = inclusion.add(&top.inclusions[l].after(&p.inclusion).after(&syz.projections[l]));
            for (v, m) in &p.generators {
                generators.push((*v, sum.inclusions[l].block(*v).mul_vec(m)));
            }
        }
        Presentation { module: sum.module, generators, top: top.module, cover, syzygy: syz.module, inclusion }
    }

    /// Lifts `g ∘ cover: P0 -> C` through an epimorphism `p: B -> C`.
    pub fn lift(&self, alg: &Algebra, b: &Module, p: &Hom, g: &Hom) -> Option<Hom> {
        let mut maps = Vec::with_capacity(self.generators.len());
        for (v, m) in &self.generators {
            let target = g.block(*v).mul_vec(m);
            let pre = p.block(*v).solve_vec(&target)?;
            maps.push(alg.hom_from_projective(*v, b, &pre));
        }
        Some(hcat_or_zero(&maps, &self.top, b))
    }

    pub fn sequence(&self) -> ShortExactSequence {
        ShortExactSequence {
            left: self.syzygy.clone(),
            mid: self.top.clone(),
            right: self.module.clone(),
            i: self.inclusion.clone(),
            p: self.cover.clone(),
        }
    }
}

pub(crate) fn hcat_or_zero(parts: &[Hom], source: &Module, target: &Module) -> Hom {
    if parts.is_empty() {
        Hom::zero(source, target)
    } else {
        Hom::hcat(parts)
    }
}

pub(crate) fn vcat_or_zero(parts: &[Hom], source: &Module, target: &Module) -> Hom {
    if parts.is_empty() {
        Hom::zero(source, target)
    } else {
        Hom::vcat(parts)
    }
}

/// Solves `mono ∘ t = h` blockwise; `None` when `h` does not land in the image.
pub fn factor_through_mono(mono: &Hom, h: &Hom) -> Option<Hom> {
    let blocks = mono
        .blocks()
        .iter()
        .zip(h.blocks())
        .map(|(m, b)| m.solve(b).ok().flatten())
        .collect::<Option<Vec<Matrix>>>()?;
    Some(Hom::from_blocks(blocks))
}

/// `0 -> left --i--> mid --p--> right -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShortExactSequence {
    pub left: Module,
    pub mid: Module,
    pub right: Module,
    pub i: Hom,
    pub p: Hom,
}

impl ShortExactSequence {
    pub fn split(alg: &Algebra, left: &Module, right: &Module) -> ShortExactSequence {
        let s = alg.direct_sum(&[left, right]);
        ShortExactSequence {
            left: left.clone(),
            mid: s.module,
            right: right.clone(),
            i: s.inclusions[0].clone(),
            p: s.projections[1].clone(),
        }
    }

    pub fn validate(&self, alg: &Algebra) -> Result<(), ExtError> {
        let bad = |m: &str| Err(ExtError::InvalidSequence(m.to_string()));
        for m in [&self.left, &self.mid, &self.right] {
            alg.check_module(m)?;
        }
        if !alg.is_hom(&self.left, &self.mid, &self.i) || !alg.is_hom(&self.mid, &self.right, &self.p) {
            return bad("structure maps are not homomorphisms");
        }
        if !self.i.is_injective() {
            return bad("left map is not injective");
        }
        if !self.p.is_surjective() {
            return bad("right map is not surjective");
        }
        if !self.p.after(&self.i).is_zero() {
            return bad("composite is nonzero");
        }
        for v in 0..alg.vertices() {
            if self.mid.dims()[v] != self.left.dims()[v] + self.right.dims()[v] {
                return bad("not exact in the middle");
            }
        }
        Ok(())
    }

    /// Whether `p` admits a section.
    pub fn is_split(&self, alg: &Algebra) -> bool {
        alg.lift_hom(&self.right, &self.mid, &self.p, &Hom::identity(&self.right)).is_some()
    }

    /// Whether `Hom(T, mid) -> Hom(T, right)` is onto, by counting dimensions.
    pub fn hom_exact_from(&self, alg: &Algebra, t: &Module) -> bool {
        alg.hom_dim(t, &self.mid) == alg.hom_dim(t, &self.left) + alg.hom_dim(t, &self.right)
    }

    /// Whether `Hom(mid, T) -> Hom(left, T)` is onto, by counting dimensions.
    pub fn hom_exact_into(&self, alg: &Algebra, t: &Module) -> bool {
        alg.hom_dim(&self.mid, t) == alg.hom_dim(&self.left, t) + alg.hom_dim(&self.right, t)
    }
}

/// The connecting map `ΩX -> A` obtained by lifting `g ∘ cover` through `p`.
pub fn connecting_map(alg: &Algebra, pres: &Presentation, s: &ShortExactSequence, g: &Hom) -> Result<Hom, ExtError> {
    let lift = pres
        .lift(alg, &s.mid, &s.p, g)
        .ok_or_else(|| ExtError::InvalidSequence("right map does not lift the presentation".into()))?;
    let restricted = lift.after(&pres.inclusion);
    factor_through_mono(&s.i, &restricted)
        .ok_or_else(|| ExtError::InvalidSequence("kernel of the right map exceeds the image of the left map".into()))
}

/// Pushout of `0 -> Ω -> P0 -> X -> 0` along a cocycle `u: Ω -> Y`.
pub fn realize_cocycle(alg: &Algebra, pres: &Presentation, y: &Module, u: &Hom) -> ShortExactSequence {
    let f = alg.field();
    let s = alg.direct_sum(&[y, &pres.top]);
    let rel = Hom::vcat(&[u.clone(), pres.inclusion.scale(f.p() - 1)]);
    let q = alg.cokernel(&s.module, &rel);
    let i = q.projection.after(&s.inclusions[0]);
    let out = Hom::hcat(&[Hom::zero(y, &pres.module), pres.cover.clone()]);
    let p = alg.induced_from_quotient(&q, &out);
    ShortExactSequence { left: y.clone(), mid: q.module, right: pres.module.clone(), i, p }
}

/// `Ext¹(X, Y)` with an explicit basis of cocycles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtGroup {
    pres: Presentation,
    y: Module,
    cocycles: HomSpace,
    coboundaries: Subspace,
    quotient: Vec<usize>,
}

impl ExtGroup {
    pub fn new(alg: &Algebra, x: &Module, y: &Module) -> ExtGroup {
        Self::with_presentation(alg, Presentation::minimal(alg, x), y)
    }

    pub fn with_presentation(alg: &Algebra, pres: Presentation, y: &Module) -> ExtGroup {
        let cocycles = alg.hom_space(&pres.syzygy, y);
        let restricted: Vec<Vec<u32>> = alg
            .hom_space(&pres.top, y)
            .basis()
            .iter()
            .map(|h| cocycles.coords(&h.after(&pres.inclusion)))
            .collect();
        let coboundaries = Subspace::from_vectors(alg.field(), cocycles.dim(), &restricted);
        let quotient = coboundaries.quotient_cols();
        ExtGroup { pres, y: y.clone(), cocycles, coboundaries, quotient }
    }

    pub fn x(&self) -> &Module {
        &self.pres.module
    }

    pub fn y(&self) -> &Module {
        &self.y
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    /// Representative cocycle `ΩX -> Y` of a class.
    pub fn cocycle(&self, coords: &[u32]) -> Hom {
        let f = self.y.field();
        let mut full = vec![0; self.cocycles.dim()];
        for (k, &c) in self.quotient.iter().enumerate() {
            full[c] = coords[k];
        }
        self.cocycles.combine(f, &self.pres.syzygy, &self.y, &full)
    }

    /// Class of a cocycle `ΩX -> Y`.
    pub fn coords_of(&self, cocycle: &Hom) -> Vec<u32> {
        self.coboundaries.quotient_coords(&self.cocycles.coords(cocycle))
    }

    pub fn realize(&self, alg: &Algebra, coords: &[u32]) -> ShortExactSequence {
        realize_cocycle(alg, &self.pres, &self.y, &self.cocycle(coords))
    }

    /// Class of a validated sequence `0 -> Y -> E -> X -> 0`.
    pub fn classify(&self, alg: &Algebra, s: &ShortExactSequence) -> Result<Vec<u32>, ExtError> {
        if s.right != self.pres.module || s.left != self.y {
            return Err(ExtError::Mismatch("sequence end terms differ from the group's".into()));
        }
        s.validate(alg)?;
        self.class_of(alg, s, &Hom::identity(&s.right), &Hom::identity(&s.left))
    }

    /// Class of `h_* g^* s` for `s: 0 -> A -> B -> C -> 0`, `g: X -> C`, `h: A -> Y`.
    /// `s` is assumed exact.
    pub fn class_of(&self, alg: &Algebra, s: &ShortExactSequence, g: &Hom, h: &Hom) -> Result<Vec<u32>, ExtError> {
        let k = connecting_map(alg, &self.pres, s, g)?;
        Ok(self.coords_of(&h.after(&k)))
    }

    /// `Ext¹(X, f)` for `f: Y -> Y'`, landing in `target = Ext¹(X, Y')` built on the same presentation.
    pub fn pushout(&self, coords: &[u32], f: &Hom, target: &ExtGroup) -> Vec<u32> {
        target.coords_of(&f.after(&self.cocycle(coords)))
    }

    /// `Ext¹(g, Y)` for `g: X' -> X`, landing in `target = Ext¹(X', Y)`.
    pub fn pullback(&self, alg: &Algebra, coords: &[u32], g: &Hom, target: &ExtGroup) -> Vec<u32> {
        let k = connecting_map(alg, &target.pres, &self.pres.sequence(), g).expect("presentations are exact");
        target.coords_of(&self.cocycle(coords).after(&k))
    }

    /// Matrix of `Ext¹(X, f)` in the two coordinate systems.
    pub fn pushout_matrix(&self, f: &Hom, target: &ExtGroup) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|k| self.pushout(&unit(self.dim(), k), f, target)).collect();
        Matrix::from_col_vecs(self.y.field(), target.dim(), &cols)
    }

    /// Matrix of `Ext¹(g, Y)` in the two coordinate systems.
    pub fn pullback_matrix(&self, alg: &Algebra, g: &Hom, target: &ExtGroup) -> Matrix {
        if self.dim() == 0 || target.dim() == 0 {
            return Matrix::zeros(alg.field(), target.dim(), self.dim());
        }
        let k = connecting_map(alg, &target.pres, &self.pres.sequence(), g).expect("presentations are exact");
        let cols: Vec<Vec<u32>> = (0..self.dim())
            .map(|j| target.coords_of(&self.cocycle(&unit(self.dim(), j)).after(&k)))
            .collect();
        Matrix::from_col_vecs(alg.field(), target.dim(), &cols)
    }

    /// Baer sum in coordinates.
    pub fn baer_sum(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.y.field().add_vec(a, b)
    }
}

pub(crate) fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[k] = 1;
    e
}

/// Classical Baer sum of two extensions with the same end terms:
/// pull back along the diagonal of the right end, push out along the codiagonal
/// of the left end.
pub fn baer_sum_sequences(
    alg: &Algebra,
    s1: &ShortExactSequence,
    s2: &ShortExactSequence,
) -> Result<ShortExactSequence, ExtError> {
    if s1.left != s2.left || s1.right != s2.right {
        return Err(ExtError::Mismatch("Baer sum needs equal end terms".into()));
    }
    let f = alg.field();
    let neg = f.p() - 1;
    let sum = alg.direct_sum(&[&s1.mid, &s2.mid]);
    let diff = Hom::hcat(&[s1.p.clone(), s2.p.scale(neg)]);
    let (pb, pb_inc) = alg.kernel(&sum.module, &diff);
    let anti = Hom::vcat(&[s1.i.clone(), s2.i.scale(neg)]);
    let anti = factor_through_mono(&pb_inc, &anti).ok_or_else(|| ExtError::InvalidSequence("pullback".into()))?;
    let q = alg.cokernel(&pb, &anti);
    let first = Hom::vcat(&[s1.i.clone(), Hom::zero(&s1.left, &s2.mid)]);
    let first = factor_through_mono(&pb_inc, &first).ok_or_else(|| ExtError::InvalidSequence("pullback".into()))?;
    let i = q.projection.after(&first);
    let p = alg.induced_from_quotient(&q, &s1.p.after(&sum.projections[0]).after(&pb_inc));
    Ok(ShortExactSequence { left: s1.left.clone(), mid: q.module, right: s1.right.clone(), i, p })
}

/// Explicit pushout of `s` along `f: left -> target`: the cokernel of `(i, -f)`.
pub fn pushout_sequence(alg: &Algebra, s: &ShortExactSequence, f: &Hom, target: &Module) -> ShortExactSequence {
    let neg = alg.field().p() - 1;
    let sum = alg.direct_sum(&[&s.mid, target]);
    let rel = Hom::vcat(&[s.i.clone(), f.scale(neg)]);
    let q = alg.cokernel(&sum.module, &rel);
    let i = q.projection.after(&sum.inclusions[1]);
    let p = alg.induced_from_quotient(&q, &Hom::hcat(&[s.p.clone(), Hom::zero(target, &s.right)]));
    ShortExactSequence { left: target.clone(), mid: q.module, right: s.right.clone(), i, p }
}

/// Explicit pullback of `s` along `g: source -> right`: the kernel of `(p, -g)`.
pub fn pullback_sequence(alg: &Algebra, s: &ShortExactSequence, g: &Hom, source: &Module) -> ShortExactSequence {
    let neg = alg.field().p() - 1;
    let sum = alg.direct_sum(&[&s.mid, source]);
    let diff = Hom::hcat(&[s.p.clone(), g.scale(neg)]);
    let (k, inc) = alg.kernel(&sum.module, &diff);
    let into = Hom::vcat(&[s.i.clone(), Hom::zero(&s.left, source)]);
    let i = factor_through_mono(&inc, &into).expect("left term lies in the pullback");
    let p = sum.projections[1].after(&inc);
    ShortExactSequence { left: s.left.clone(), mid: k, right: source.clone(), i, p }
}

/// Composite of two monics with the induced short exact sequence of cokernels.
#[derive(Debug, Clone)]
pub struct Composite {
    pub sequence: ShortExactSequence,
    /// `0 -> Coker f -> Coker(gf) -> Coker g -> 0` (or the dual kernels for epics).
    pub ladder: ShortExactSequence,
}

/// `0 -> A1 -> A3 -> Coker(gf) -> 0` for `s1: A1 -> A2` and `s2: A2 -> A3`.
pub fn compose_monics(
    alg: &Algebra,
    s1: &ShortExactSequence,
    s2: &ShortExactSequence,
) -> Result<Composite, ExtError> {
    if s1.mid != s2.left {
        return Err(ExtError::Mismatch("monics are not composable".into()));
    }
    let gf = s2.i.after(&s1.i);
    let q = alg.cokernel(&s2.mid, &gf);
    let alpha = alg
        .extend_hom(&s1.right, &q.module, &s1.p, &q.projection.after(&s2.i))
        .ok_or_else(|| ExtError::InvalidSequence("first sequence is not exact".into()))?;
    let beta = alg.induced_from_quotient(&q, &s2.p);
    let sequence = ShortExactSequence { left: s1.left.clone(), mid: s2.mid.clone(), right: q.module.clone(), i: gf, p: q.projection };
    let ladder = ShortExactSequence { left: s1.right.clone(), mid: q.module, right: s2.right.clone(), i: alpha, p: beta };
    Ok(Composite { sequence, ladder })
}

/// `0 -> Ker(pq) -> A -> C -> 0` for `s1: B -> C` and `s2: A -> B`.
pub fn compose_epics(
    alg: &Algebra,
    s1: &ShortExactSequence,
    s2: &ShortExactSequence,
) -> Result<Composite, ExtError> {
    if s2.right != s1.mid {
        return Err(ExtError::Mismatch("epics are not composable".into()));
    }
    let pq = s1.p.after(&s2.p);
    let (k, inc) = alg.kernel(&s2.mid, &pq);
    let alpha = factor_through_mono(&inc, &s2.i).ok_or_else(|| ExtError::InvalidSequence("second sequence".into()))?;
    let beta = factor_through_mono(&s1.i, &s2.p.after(&inc))
        .ok_or_else(|| ExtError::InvalidSequence("first sequence is not exact".into()))?;
    let sequence = ShortExactSequence { left: k.clone(), mid: s2.mid.clone(), right: s1.right.clone(), i: inc, p: pq };
    let ladder = ShortExactSequence { left: s2.left.clone(), mid: k, right: s1.left.clone(), i: alpha, p: beta };
    Ok(Composite { sequence, ladder })
}

/// First syzygy from the minimal presentation.
pub fn syzygy(alg: &Algebra, x: &Module) -> Module {
    Presentation::minimal(alg, x).syzygy
}

/// `dim Ext^i(X, Y)` for `i >= 1` by dimension shifting along minimal syzygies.
pub fn ext_dim(alg: &Algebra, i: usize, x: &Module, y: &Module) -> usize {
    assert!(i >= 1, "Ext^i is exposed for i >= 1 only");
    let mut m = x.clone();
    for _ in 1..i {
        m = syzygy(alg, &m);
    }
    ExtGroup::new(alg, &m, y).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn a2() -> Algebra {
        Algebra::linear(Field::new(2).unwrap(), 2).unwrap()
    }

    #[test]
    fn presentation_of_projective_is_trivial() {
        let alg = a2();
        let p = Presentation::minimal(&alg, alg.projective(0));
        assert_eq!(p.top.dims(), alg.projective(0).dims());
        assert!(p.syzygy.is_zero());
    }

    #[test]
    fn presentation_of_sink_simple() {
        let alg = a2();
        let s1 = alg.simple(1);
        let p = Presentation::minimal(&alg, &s1);
        assert_eq!(p.top, s1);
        assert!(p.syzygy.is_zero());
    }

    #[test]
    fn syzygy_of_source_simple() {
        let alg = a2();
        let p = Presentation::minimal(&alg, &alg.simple(0));
        assert_eq!(p.top.dims(), &[1, 1]);
        assert_eq!(p.syzygy, alg.simple(1));
    }

    #[test]
    fn ext_between_simples_of_a2() {
        let alg = a2();
        assert_eq!(ExtGroup::new(&alg, &alg.simple(0), &alg.simple(1)).dim(), 1);
        assert_eq!(ExtGroup::new(&alg, &alg.simple(1), &alg.simple(0)).dim(), 0);
        assert_eq!(ExtGroup::new(&alg, alg.projective(0), &alg.simple(1)).dim(), 0);
        assert_eq!(ExtGroup::new(&alg, &alg.simple(0), alg.injective(1)).dim(), 0);
    }

    #[test]
    fn nonzero_class_realizes_the_projective() {
        let alg = a2();
        let g = ExtGroup::new(&alg, &alg.simple(0), &alg.simple(1));
        let s = g.realize(&alg, &[1]);
        s.validate(&alg).unwrap();
        assert!(!s.is_split(&alg));
        assert!(alg.find_iso(&s.mid, alg.projective(0)).is_some());
        assert_eq!(g.classify(&alg, &s).unwrap(), vec![1]);
        let z = g.realize(&alg, &[0]);
        assert!(z.is_split(&alg));
        assert_eq!(g.classify(&alg, &z).unwrap(), vec![0]);
    }

    #[test]
    fn classify_rejects_non_exact() {
        let alg = a2();
        let g = ExtGroup::new(&alg, &alg.simple(0), &alg.simple(1));
        let mut s = g.realize(&alg, &[1]);
        s.p = Hom::zero(&s.mid, &s.right);
        assert!(matches!(g.classify(&alg, &s), Err(ExtError::InvalidSequence(_))));
    }

    #[test]
    fn non_minimal_presentation_gives_same_dimension() {
        let alg = Algebra::linear(Field::new(3).unwrap(), 3).unwrap();
        let mods: Vec<Module> = (0..3).flat_map(|v| [alg.simple(v), alg.injective(v).clone()]).collect();
        for x in &mods {
            for y in &mods {
                let a = ExtGroup::new(&alg, x, y).dim();
                let b = ExtGroup::with_presentation(&alg, Presentation::all_basis(&alg, x), y).dim();
                assert_eq!(a, b, "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn pushout_along_identity_and_zero() {
        let alg = a2();
        let (s0, s1) = (alg.simple(0), alg.simple(1));
        let g = ExtGroup::new(&alg, &s0, &s1);
        assert_eq!(g.pushout(&[1], &Hom::identity(&s1), &g), vec![1]);
        assert_eq!(g.pushout(&[1], &Hom::zero(&s1, &s1), &g), vec![0]);
        assert_eq!(g.pullback(&alg, &[1], &Hom::identity(&s0), &g), vec![1]);
        assert_eq!(g.pullback(&alg, &[1], &Hom::zero(&s0, &s0), &g), vec![0]);
    }

    #[test]
    fn pullback_along_epi_from_projective_vanishes() {
        let alg = a2();
        let s0 = alg.simple(0);
        let p0 = alg.projective(0);
        let g = ExtGroup::new(&alg, &s0, &alg.simple(1));
        let epi = alg.hom_from_projective(0, &s0, &[1]);
        let target = ExtGroup::new(&alg, p0, &alg.simple(1));
        assert_eq!(g.pullback(&alg, &[1], &epi, &target), Vec::<u32>::new());
    }

    #[test]
    fn pushout_into_sum_matches_explicit_cokernel() {
        let alg = a2();
        let (s0, s1) = (alg.simple(0), alg.simple(1));
        let ys = alg.direct_sum(&[&s1, alg.projective(0)]);
        let g = ExtGroup::with_presentation(&alg, Presentation::minimal(&alg, &s0), &s1);
        let target = ExtGroup::with_presentation(&alg, Presentation::minimal(&alg, &s0), &ys.module);
        let f = &ys.inclusions[0];
        let coords = g.pushout(&[1], f, &target);
        let po = pushout_sequence(&alg, &g.realize(&alg, &[1]), f, &ys.module);
        po.validate(&alg).unwrap();
        assert_eq!(target.classify(&alg, &po).unwrap(), coords);
        assert!(coords.iter().any(|&c| c != 0));
    }

    #[test]
    fn explicit_pullback_matches_coordinates() {
        let alg = Algebra::linear(Field::new(3).unwrap(), 3).unwrap();
        let x = alg.injective(1).clone();
        let y = alg.simple(2);
        let g = ExtGroup::new(&alg, &x, &y);
        assert_eq!(g.dim(), 1);
        let src = alg.simple(1);
        let target = ExtGroup::new(&alg, &src, &y);
        for h in alg.hom_space(&src, &x).basis() {
            for c in 0..3 {
                let s = pullback_sequence(&alg, &g.realize(&alg, &[c]), h, &src);
                s.validate(&alg).unwrap();
                assert_eq!(target.classify(&alg, &s).unwrap(), g.pullback(&alg, &[c], h, &target));
            }
        }
    }

    #[test]
    fn composing_monics_on_a2() {
        let alg = a2();
        let (s0, s1) = (alg.simple(0), alg.simple(1));
        let s1_seq = ExtGroup::new(&alg, &s0, &s1).realize(&alg, &[1]);
        let s2_seq = ShortExactSequence::split(&alg, &s1_seq.mid, &s1);
        let c = compose_monics(&alg, &s1_seq, &s2_seq).unwrap();
        c.sequence.validate(&alg).unwrap();
        c.ladder.validate(&alg).unwrap();
        assert_eq!(c.sequence.right.dims(), &[1, 1]);
        let d = alg.decompose(&c.sequence.right);
        assert_eq!(d.summands.len(), 2);
    }

    #[test]
    fn composing_with_identity_extension() {
        let alg = a2();
        let (s0, s1) = (alg.simple(0), alg.simple(1));
        let s = ExtGroup::new(&alg, &s0, &s1).realize(&alg, &[1]);
        let id = ShortExactSequence::split(&alg, &s.mid, &alg.zero_module());
        let c = compose_monics(&alg, &s, &id).unwrap();
        let g = ExtGroup::new(&alg, &s0, &s1);
        let iso = alg.find_iso(&c.sequence.right, &s0).unwrap();
        assert_eq!(g.class_of(&alg, &c.sequence, &iso.1, &Hom::identity(&s1)).unwrap(), vec![1]);
    }

    #[test]
    fn composing_epics() {
        let alg = Algebra::linear(Field::new(2).unwrap(), 3).unwrap();
        let s0 = alg.simple(0);
        let pres = Presentation::minimal(&alg, &s0);
        let first = pres.sequence();
        let second = Presentation::minimal(&alg, &first.mid).sequence();
        let c = compose_epics(&alg, &first, &second).unwrap();
        c.sequence.validate(&alg).unwrap();
        c.ladder.validate(&alg).unwrap();
        assert_eq!(c.sequence.left.dims(), &[0, 1, 1]);
    }

    #[test]
    fn baer_sum_of_class_with_itself_vanishes_in_char_two() {
        let alg = a2();
        let g = ExtGroup::new(&alg, &alg.simple(0), &alg.simple(1));
        let s = g.realize(&alg, &[1]);
        let b = baer_sum_sequences(&alg, &s, &s).unwrap();
        b.validate(&alg).unwrap();
        assert_eq!(g.classify(&alg, &b).unwrap(), vec![0]);
        let z = g.realize(&alg, &[0]);
        assert_eq!(g.classify(&alg, &baer_sum_sequences(&alg, &s, &z).unwrap()).unwrap(), vec![1]);
    }

    #[test]
    fn higher_ext_by_dimension_shifting() {
        let spec = crate::algebra::AlgebraSpec::from_toml(
            "relations = [\"a*b\"]\n[field]\np = 2\n[quiver]\nvertices = 3\narrows = [[0,1],[1,2]]\n",
        )
        .unwrap();
        let alg = Algebra::from_spec(&spec).unwrap();
        assert_eq!(ext_dim(&alg, 2, &alg.simple(0), &alg.simple(2)), 1);
        assert_eq!(ext_dim(&alg, 1, &alg.simple(0), &alg.simple(2)), 0);
        let a3 = Algebra::linear(Field::new(2).unwrap(), 3).unwrap();
        assert_eq!(ext_dim(&a3, 2, &a3.simple(0), &a3.simple(2)), 0);
    }
}
