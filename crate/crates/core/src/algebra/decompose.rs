//! Krull–Schmidt decomposition by Fitting splitting.
//!
//! An endomorphism that is neither nilpotent nor invertible splits a module as
//! `Im φ^N ⊕ Ker φ^N`. A module is indecomposable exactly when no such
//! endomorphism exists (its endomorphism ring is local).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algebra, Hom, Module};
use crate::linalg::Matrix;

/// Endomorphism rings up to this many elements are searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
const RANDOM_TRIES: usize = 2048;

/// An indecomposable summand with its split inclusion and projection.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: Module,
    pub inclusion: Hom,
    pub projection: Hom,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// `(index of a representative summand, multiplicity)` per iso class.
    pub classes: Vec<(usize, usize)>,
}

impl Decomposition {
    /// `X -> ⊕ summands`.
    pub fn to_sum(&self) -> Hom {
        Hom::vcat(&self.summands.iter().map(|s| s.projection.clone()).collect::<Vec<_>>())
    }

    /// `⊕ summands -> X`.
    pub fn from_sum(&self) -> Hom {
        Hom::hcat(&self.summands.iter().map(|s| s.inclusion.clone()).collect::<Vec<_>>())
    }
}

impl Algebra {
    /// Finds an endomorphism that is neither nilpotent nor invertible, if any.
    /// Exhaustive when `|End| <= 2^16`, otherwise randomized.
    pub fn splitting_endomorphism(&self, m: &Module) -> Option<Hom> {
        if m.total_dim() <= 1 {
            return None;
        }
        let f = self.field();
        let end = self.hom_space(m, m);
        let splits = |h: &Hom| !h.is_iso() && !h.is_nilpotent();
        let id = Hom::identity(m);
        for b in end.basis() {
            if splits(b) {
                return Some(b.clone());
            }
            for lambda in 1..f.p() {
                let h = b.add(&id.scale(lambda));
                if splits(&h) {
                    return Some(h);
                }
            }
        }
        match f.size_pow(end.dim()) {
            Some(n) if n <= EXHAUSTIVE_LIMIT => {
                f.all_vectors(end.dim()).map(|c| end.combine(f, m, m, &c)).find(|h| splits(h))
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                (0..RANDOM_TRIES).find_map(|_| {
                    let c: Vec<u32> = (0..end.dim()).map(|_| rng.gen_range(0..f.p())).collect();
                    let h = end.combine(f, m, m, &c);
                    splits(&h).then_some(h)
                })
            }
        }
    }

    pub fn is_indecomposable(&self, m: &Module) -> bool {
        !m.is_zero() && self.splitting_endomorphism(m).is_none()
    }

    /// Splits `m` into indecomposable summands with split inclusions/projections.
    pub fn split_indecomposables(&self, m: &Module) -> Vec<Summand> {
        if m.is_zero() {
            return Vec::new();
        }
        let Some(phi) = self.splitting_endomorphism(m) else {
            return vec![Summand { module: m.clone(), inclusion: Hom::identity(m), projection: Hom::identity(m) }];
        };
        let f = self.field();
        let power = phi.pow(m.total_dim() as u32);
        let mut im_bases = Vec::new();
        let mut ker_bases = Vec::new();
        let mut inverses = Vec::new();
        for v in 0..self.vertices() {
            let b = power.block(v);
            let im = Matrix::from_col_vecs(f, m.dims()[v], b.column_space().basis());
            let ker = Matrix::from_col_vecs(f, m.dims()[v], b.kernel().basis());
            let t = im.hstack(&ker);
            inverses.push(t.inverse().expect("Fitting decomposition is direct"));
            im_bases.push(im);
            ker_bases.push(ker);
        }
        let proj_im = Hom::from_blocks(
            inverses.iter().zip(&im_bases).map(|(t, b)| t.block(0, 0, b.cols(), t.cols())).collect(),
        );
        let proj_ker = Hom::from_blocks(
            inverses
                .iter()
                .zip(&im_bases)
                .zip(&ker_bases)
                .map(|((t, bi), bk)| t.block(bi.cols(), 0, bk.cols(), t.cols()))
                .collect(),
        );
        let (im_mod, im_inc) = self.submodule(m, im_bases);
        let (ker_mod, ker_inc) = self.submodule(m, ker_bases);
        let mut out = Vec::new();
        for (sub, inc, proj) in [(im_mod, im_inc, proj_im), (ker_mod, ker_inc, proj_ker)] {
            for s in self.split_indecomposables(&sub) {
                out.push(Summand {
                    module: s.module,
                    inclusion: inc.after(&s.inclusion),
                    projection: s.projection.after(&proj),
                });
            }
        }
        out
    }

    /// Searches `Hom(a, b)` for an isomorphism; returns it with its inverse.
    /// Intended for indecomposable `a`, where invertible maps are plentiful.
    pub fn find_iso(&self, a: &Module, b: &Module) -> Option<(Hom, Hom)> {
        if a.dims() != b.dims() {
            return None;
        }
        if a == b {
            return Some((Hom::identity(a), Hom::identity(a)));
        }
        let f = self.field();
        let hs = self.hom_space(a, b);
        if hs.dim() != self.hom_dim(a, a) || hs.dim() != self.hom_dim(b, b) {
            return None;
        }
        let pick = |h: Hom| h.inverse().map(|inv| (h, inv));
        if let Some(found) = hs.basis().iter().find_map(|h| pick(h.clone())) {
            return Some(found);
        }
        match f.size_pow(hs.dim()) {
            Some(n) if n <= EXHAUSTIVE_LIMIT => f.all_vectors(hs.dim()).find_map(|c| pick(hs.combine(f, a, b, &c))),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(0x150);
                (0..RANDOM_TRIES).find_map(|_| {
                    let c: Vec<u32> = (0..hs.dim()).map(|_| rng.gen_range(0..f.p())).collect();
                    pick(hs.combine(f, a, b, &c))
                })
            }
        }
    }

    /// Decomposes into indecomposables and groups them by isomorphism class.
    pub fn decompose(&self, m: &Module) -> Decomposition {
        let summands = self.split_indecomposables(m);
        let mut classes: Vec<(usize, usize)> = Vec::new();
        for (i, s) in summands.iter().enumerate() {
            match classes.iter_mut().find(|(r, _)| self.find_iso(&summands[*r].module, &s.module).is_some()) {
                Some(entry) => entry.1 += 1,
                None => classes.push((i, 1)),
            }
        }
        Decomposition { summands, classes }
    }

    /// Isomorphism test by matching indecomposable summands.
    pub fn is_isomorphic(&self, x: &Module, y: &Module) -> Option<Hom> {
        if x.dims() != y.dims() {
            return None;
        }
        let dx = self.split_indecomposables(x);
        let dy = self.split_indecomposables(y);
        if dx.len() != dy.len() {
            return None;
        }
        let mut used = vec![false; dy.len()];
        let mut iso = Hom::zero(x, y);
        for sx in &dx {
            let (j, (phi, _)) = dy
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .find_map(|(j, sy)| self.find_iso(&sx.module, &sy.module).map(|p| (j, p)))?;
            used[j] = true;
            iso = iso.add(&dy[j].inclusion.after(&phi).after(&sx.projection));
        }
        debug_assert!(iso.is_iso());
        Some(iso)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn random_invertible(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let m = Matrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.p()) as i64);
            if m.is_invertible() {
                return m;
            }
        }
    }

    fn check_certificate(alg: &Algebra, m: &Module, d: &Decomposition) {
        let to = d.to_sum();
        let from = d.from_sum();
        assert_eq!(from.after(&to), Hom::identity(m));
        let parts: Vec<&Module> = d.summands.iter().map(|s| &s.module).collect();
        let sum = alg.direct_sum(&parts).module;
        assert_eq!(to.after(&from), Hom::identity(&sum));
        for s in &d.summands {
            assert!(alg.is_hom(&s.module, m, &s.inclusion));
            assert!(alg.is_hom(m, &s.module, &s.projection));
            assert!(alg.is_indecomposable(&s.module));
        }
    }

    #[test]
    fn indecomposable_is_its_own_decomposition() {
        let alg = Algebra::linear(Field::new(2).unwrap(), 2).unwrap();
        let d = alg.decompose(alg.projective(0));
        assert_eq!(d.classes, vec![(0, 1)]);
        check_certificate(&alg, alg.projective(0), &d);
    }

    #[test]
    fn doubled_simple_has_multiplicity_two() {
        let alg = Algebra::linear(Field::new(2).unwrap(), 2).unwrap();
        let s = alg.simple(0);
        let ss = alg.direct_sum(&[&s, &s]).module;
        let d = alg.decompose(&ss);
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].1, 2);
        check_certificate(&alg, &ss, &d);
    }

    #[test]
    fn scrambled_projective_stays_indecomposable() {
        let f = Field::new(2).unwrap();
        let alg = Algebra::linear(f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = alg.projective(0);
        let change: Vec<Matrix> = p.dims().iter().map(|&d| random_invertible(f, d, &mut rng)).collect();
        let (q, iso) = p.conjugate(alg.arrows(), &change);
        assert!(alg.is_hom(p, &q, &iso));
        let d = alg.decompose(&q);
        assert_eq!(d.classes, vec![(0, 1)]);
        assert!(alg.find_iso(p, &q).is_some());
    }

    #[test]
    fn conjugated_sum_decomposes_with_certificate() {
        let f = Field::new(3).unwrap();
        let alg = Algebra::linear(f, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let parts = [alg.projective(0).clone(), alg.simple(1), alg.injective(1).clone(), alg.simple(1)];
        let refs: Vec<&Module> = parts.iter().collect();
        let sum = alg.direct_sum(&refs).module;
        let change: Vec<Matrix> = sum.dims().iter().map(|&d| random_invertible(f, d, &mut rng)).collect();
        let (scrambled, _) = sum.conjugate(alg.arrows(), &change);
        let d = alg.decompose(&scrambled);
        assert_eq!(d.summands.len(), 4);
        let mut mults: Vec<usize> = d.classes.iter().map(|c| c.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 2]);
        check_certificate(&alg, &scrambled, &d);
        let iso = alg.is_isomorphic(&scrambled, &sum).expect("isomorphic by construction");
        assert!(alg.is_hom(&scrambled, &sum, &iso));
        assert!(iso.is_iso());
    }

    #[test]
    fn different_dims_are_not_isomorphic() {
        let alg = Algebra::linear(Field::new(2).unwrap(), 2).unwrap();
        assert!(alg.is_isomorphic(&alg.simple(0), &alg.simple(1)).is_none());
        let x = alg.projective(0).clone();
        assert!(alg.is_isomorphic(&x, &x).unwrap().is_iso());
    }
}
