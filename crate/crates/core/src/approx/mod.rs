//! Precovers, preenvelopes and their minimal versions relative to additive
//! subcategories of the catalog, balanced pairs and cotorsion pairs.

mod cotorsion;
mod facts;
mod pairs;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Hom, Module};
use crate::ext::{hcat_or_zero, vcat_or_zero, ShortExactSequence};
use crate::linalg::Matrix;
use crate::Category;

pub use cotorsion::{
    check_resolving_approximations, check_classical_restriction, check_cotorsion_triples, check_complete_hereditary, check_wakamatsu, classical_pairs, coresolving,
    cotorsion_pair, evaluate_pair, extension_closed_subcategories, extension_violation, orthogonal_candidates,
    resolving, ClosureReport, CompletionWitness, PairFamilyCase, PairFamilyReport, CotorsionPair, Search,
    HereditaryConditions, TriangleCase, WakamatsuReport, WakamatsuViolation,
};
pub use facts::{ApproxFacts, ApproxIndex};
pub use pairs::{
    orthogonal, pair_to_subfunctor, subfunctor_to_pair, validate_balanced, BalanceReport, ExactnessMismatch, PairError,
    ResolutionCertificate, Side,
};

/// Full subcategory `add(members)` of the catalog; members are sorted catalog indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subcategory {
    members: Vec<usize>,
}

impl Subcategory {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Subcategory {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Subcategory { members }
    }

    pub fn all(n: usize) -> Subcategory {
        Subcategory { members: (0..n).collect() }
    }

    pub fn empty() -> Subcategory {
        Subcategory { members: Vec::new() }
    }

    /// Every subset of an `n`-element catalog, by bitmask order.
    pub fn all_subsets(n: usize) -> Vec<Subcategory> {
        (0u64..1 << n).map(|mask| Subcategory::new((0..n).filter(|&i| mask >> i & 1 == 1))).collect()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn contains_all(&self, summands: &[usize]) -> bool {
        summands.iter().all(|&s| self.contains(s))
    }

    pub fn is_subset(&self, other: &Subcategory) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Whether an arbitrary module lies in `add(members)`.
    pub fn contains_module(&self, cat: &Category, m: &Module) -> Result<bool, AlgebraError> {
        Ok(self.contains_all(&cat.catalog().identify(&cat.alg, m)?.summands))
    }

    pub fn describe(&self, cat: &Category) -> String {
        let names: Vec<&str> = self.members.iter().map(|&i| cat.label(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ApproxKind {
    Precover,
    Preenvelope,
}

/// A map between `object` and a sum of catalog modules: `other -> object`
/// for a precover, `object -> other` for a preenvelope.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub kind: ApproxKind,
    pub object: Module,
    pub other: Module,
    pub summands: Vec<usize>,
    pub components: Vec<Hom>,
    pub map: Hom,
}

impl Approximation {
    fn assemble(cat: &Category, kind: ApproxKind, object: &Module, summands: Vec<usize>, components: Vec<Hom>) -> Self {
        let other = cat.ext.sum_object(&cat.alg, &summands).module;
        let map = match kind {
            ApproxKind::Precover => hcat_or_zero(&components, &other, object),
            ApproxKind::Preenvelope => vcat_or_zero(&components, object, &other),
        };
        Approximation { kind, object: object.clone(), other, summands, components, map }
    }

    pub fn is_epi(&self) -> bool {
        self.map.is_surjective()
    }

    pub fn is_mono(&self) -> bool {
        self.map.is_injective()
    }

    /// `0 -> Ker -> other -> object -> 0` for an epimorphic precover.
    pub fn kernel_sequence(&self, cat: &Category) -> Option<ShortExactSequence> {
        (self.kind == ApproxKind::Precover && self.is_epi()).then(|| {
            let (k, inc) = cat.alg.kernel(&self.other, &self.map);
            ShortExactSequence { left: k, mid: self.other.clone(), right: self.object.clone(), i: inc, p: self.map.clone() }
        })
    }

    /// `0 -> object -> other -> Coker -> 0` for a monomorphic preenvelope.
    pub fn cokernel_sequence(&self, cat: &Category) -> Option<ShortExactSequence> {
        (self.kind == ApproxKind::Preenvelope && self.is_mono()).then(|| {
            let q = cat.alg.cokernel(&self.other, &self.map);
            ShortExactSequence {
                left: self.object.clone(),
                mid: self.other.clone(),
                right: q.module,
                i: self.map.clone(),
                p: q.projection,
            }
        })
    }

    /// Checks the approximation property against every hom-space basis
    /// element from (or into) each member by solving a factorization system.
    pub fn certify(&self, cat: &Category, sub: &Subcategory) -> bool {
        let alg = &cat.alg;
        sub.members().iter().all(|&c| {
            let m = cat.module(c);
            match self.kind {
                ApproxKind::Precover => alg
                    .hom_space(m, &self.object)
                    .basis()
                    .iter()
                    .all(|h| alg.lift_hom(m, &self.other, &self.map, h).is_some()),
                ApproxKind::Preenvelope => alg
                    .hom_space(&self.object, m)
                    .basis()
                    .iter()
                    .all(|h| alg.extend_hom(&self.other, m, &self.map, h).is_some()),
            }
        })
    }
}

/// Canonical evaluation map `⊕ C^{dim Hom(C, A)} -> A` over the members.
pub fn precover(cat: &Category, sub: &Subcategory, a: &Module) -> Approximation {
    let mut summands = Vec::new();
    let mut comps = Vec::new();
    for &c in sub.members() {
        for h in cat.alg.hom_space(cat.module(c), a).into_basis() {
            summands.push(c);
            comps.push(h);
        }
    }
    Approximation::assemble(cat, ApproxKind::Precover, a, summands, comps)
}

/// Canonical coevaluation map `A -> ⊕ D^{dim Hom(A, D)}` over the members.
pub fn preenvelope(cat: &Category, sub: &Subcategory, a: &Module) -> Approximation {
    let mut summands = Vec::new();
    let mut comps = Vec::new();
    for &d in sub.members() {
        for h in cat.alg.hom_space(a, cat.module(d)).into_basis() {
            summands.push(d);
            comps.push(h);
        }
    }
    Approximation::assemble(cat, ApproxKind::Preenvelope, a, summands, comps)
}

/// How minimality of an approximation was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Minimality {
    /// `{h : g h = 0}` (or `{h : h g = 0}`) lies in the radical of the endomorphism ring.
    Radical,
    /// Every element of `id + K` was checked to be invertible.
    Exhaustive,
    NotEstablished,
}

#[derive(Debug, Clone)]
pub struct Minimized {
    pub approx: Approximation,
    pub certificate: Minimality,
}

impl Minimized {
    pub fn established(&self) -> bool {
        self.certificate != Minimality::NotEstablished
    }
}

const EXHAUSTIVE_KERNEL_LIMIT: u64 = 1 << 16;

/// Strips copies whose component factors through the remaining ones, then
/// certifies right (or left) minimality.
pub fn minimize(cat: &Category, approx: &Approximation) -> Minimized {
    let alg = &cat.alg;
    let mut summands = approx.summands.clone();
    let mut comps = approx.components.clone();
    'outer: loop {
        for k in 0..summands.len() {
            let rest_s: Vec<usize> = summands.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &s)| s).collect();
            let rest_c: Vec<Hom> = comps.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, h)| h.clone()).collect();
            let rest = Approximation::assemble(cat, approx.kind, &approx.object, rest_s, rest_c);
            let ck = cat.module(summands[k]);
            let redundant = match approx.kind {
                ApproxKind::Precover => alg.lift_hom(ck, &rest.other, &rest.map, &comps[k]).is_some(),
                ApproxKind::Preenvelope => alg.extend_hom(&rest.other, ck, &rest.map, &comps[k]).is_some(),
            };
            if redundant {
                summands = rest.summands;
                comps = rest.components;
                continue 'outer;
            }
        }
        break;
    }
    let out = Approximation::assemble(cat, approx.kind, &approx.object, summands, comps);
    let certificate = certify_minimal(cat, &out);
    Minimized { approx: out, certificate }
}

fn certify_minimal(cat: &Category, a: &Approximation) -> Minimality {
    let alg = &cat.alg;
    let f = cat.field();
    let end = alg.hom_space(&a.other, &a.other);
    let cols: Vec<Vec<u32>> = end
        .basis()
        .iter()
        .map(|h| match a.kind {
            ApproxKind::Precover => a.map.after(h).flatten(),
            ApproxKind::Preenvelope => h.after(&a.map).flatten(),
        })
        .collect();
    let rows = a.map.flatten().len();
    let kernel: Vec<Vec<u32>> = if cols.is_empty() {
        Vec::new()
    } else {
        Matrix::from_col_vecs(f, rows, &cols).kernel().basis().to_vec()
    };
    let ks: Vec<Hom> = kernel.iter().map(|c| end.combine(f, &a.other, &a.other, c)).collect();
    if ks.iter().all(|k| in_radical(cat, &a.summands, k)) {
        return Minimality::Radical;
    }
    match f.size_pow(ks.len()) {
        Some(n) if n <= EXHAUSTIVE_KERNEL_LIMIT => {
            let id = Hom::identity(&a.other);
            let all_units = f.all_vectors(ks.len()).all(|c| {
                let mut h = id.clone();
                for (x, k) in c.iter().zip(&ks) {
                    if *x != 0 {
                        h = h.add(&k.scale(*x));
                    }
                }
                h.is_iso()
            });
            if all_units {
                Minimality::Exhaustive
            } else {
                Minimality::NotEstablished
            }
        }
        _ => Minimality::NotEstablished,
    }
}

/// Radical membership for an endomorphism of `⊕ C_{summands}`: blocks between
/// copies of the same indecomposable must lie in its radical, others are free.
pub fn in_radical(cat: &Category, summands: &[usize], h: &Hom) -> bool {
    let s = cat.ext.sum_object(&cat.alg, summands);
    for (l, &cl) in summands.iter().enumerate() {
        for (k, &ck) in summands.iter().enumerate() {
            if cl != ck {
                continue;
            }
            let block = s.projections[l].after(h).after(&s.inclusions[k]);
            let coords = cat.ext.hom(ck, ck).coords(&block);
            if !cat.catalog().radicals[ck].contains(&coords) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::linalg::Field;

    fn a2() -> Category {
        Category::build(Algebra::linear(Field::new(2).unwrap(), 2).unwrap(), 2, 1 << 20).unwrap()
    }

    fn idx(cat: &Category, dims: &[usize]) -> usize {
        (0..cat.len()).find(|&i| cat.module(i).dims() == dims).unwrap()
    }

    #[test]
    fn precover_by_projectives_is_epi() {
        let cat = a2();
        let proj = Subcategory::new(cat.catalog().projectives());
        for i in 0..cat.len() {
            let p = precover(&cat, &proj, cat.module(i));
            assert!(p.is_epi());
            assert!(p.certify(&cat, &proj));
        }
    }

    #[test]
    fn precover_from_non_mapping_class_is_zero() {
        let cat = a2();
        let s0 = Subcategory::new([idx(&cat, &[1, 0])]);
        let p1 = cat.module(idx(&cat, &[1, 1])).clone();
        let p = precover(&cat, &s0, &p1);
        assert!(p.summands.is_empty());
        assert!(!p.is_epi());
    }

    #[test]
    fn member_object_has_split_precover() {
        let cat = a2();
        let all = Subcategory::all(cat.len());
        for i in 0..cat.len() {
            let m = minimize(&cat, &precover(&cat, &all, cat.module(i)));
            assert_eq!(m.approx.summands, vec![i]);
            assert!(m.approx.map.is_iso());
            assert_eq!(m.certificate, Minimality::Radical);
        }
    }

    #[test]
    fn projective_cover_is_minimization_of_padded_precover() {
        let cat = a2();
        let (p, s1, s0) = (idx(&cat, &[1, 1]), idx(&cat, &[0, 1]), idx(&cat, &[1, 0]));
        let proj = Subcategory::new([p, s1]);
        let padded = precover(&cat, &proj, cat.module(s0));
        assert_eq!(padded.summands, vec![p]);
        // Add a redundant S1 copy mapping by zero.
        let extra = Approximation::assemble(
            &cat,
            ApproxKind::Precover,
            cat.module(s0),
            vec![p, s1],
            vec![padded.components[0].clone(), Hom::zero(cat.module(s1), cat.module(s0))],
        );
        let m = minimize(&cat, &extra);
        assert_eq!(m.approx.summands, vec![p]);
        assert!(m.established());
        let again = minimize(&cat, &m.approx);
        assert_eq!(again.approx.summands, m.approx.summands);
    }

    #[test]
    fn injective_envelope_of_sink_simple() {
        let cat = a2();
        let inj = Subcategory::new(cat.catalog().injectives());
        let s1 = idx(&cat, &[0, 1]);
        let m = minimize(&cat, &preenvelope(&cat, &inj, cat.module(s1)));
        assert!(m.approx.is_mono());
        assert_eq!(m.approx.summands, vec![idx(&cat, &[1, 1])]);
        assert_eq!(m.certificate, Minimality::Radical);
    }
}
