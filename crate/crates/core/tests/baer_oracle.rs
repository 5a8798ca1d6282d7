//! Coordinate addition in Ext¹ against the explicit Baer sum: pull back the
//! direct sum of two extensions along the diagonal, then push out along the
//! codiagonal.

mod common;

use exactcat_core::algebra::Module;
use exactcat_core::ext::{baer_sum_sequences, pullback_sequence, pushout_sequence, ExtGroup};
use exactcat_core::Category;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Catalog objects and sums of two of them, with every nonzero Ext group between them.
fn groups(cat: &Category) -> Vec<ExtGroup> {
    let n = cat.len();
    let mut objects: Vec<Module> = (0..n).map(|i| cat.module(i).clone()).collect();
    for i in 0..n {
        for j in i..n {
            objects.push(common::sum_module(cat, &[i, j]));
        }
    }
    let mut out = Vec::new();
    for x in &objects {
        for y in &objects {
            let g = ExtGroup::new(&cat.alg, x, y);
            if g.dim() > 0 {
                out.push(g);
            }
        }
    }
    out
}

#[test]
fn coordinates_add_like_explicit_baer_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut largest = 0;
    for (name, cat) in common::testbeds() {
        let alg = &cat.alg;
        let f = cat.field();
        let gs = groups(&cat);
        assert!(!gs.is_empty(), "{name}");
        for _ in 0..40 {
            let g = &gs[rng.gen_range(0..gs.len())];
            largest = largest.max(g.dim());
            let a: Vec<u32> = (0..g.dim()).map(|_| rng.gen_range(0..f.p())).collect();
            let b: Vec<u32> = (0..g.dim()).map(|_| rng.gen_range(0..f.p())).collect();
            let s1 = g.realize(alg, &a);
            let s2 = g.realize(alg, &b);
            assert_eq!(g.classify(alg, &s1).unwrap(), a);
            let (c2, diag) = common::diagonal(&cat, g.x());
            let (a2, codiag) = common::codiagonal(&cat, g.y());
            let sum = common::direct_sum(&cat, &s1, &s2);
            assert_eq!((&sum.left, &sum.right), (&a2, &c2));
            let pulled = pullback_sequence(alg, &sum, &diag, g.x());
            let explicit = pushout_sequence(alg, &pulled, &codiag, g.y());
            explicit.validate(alg).unwrap();
            let expected = f.add_vec(&a, &b);
            assert_eq!(g.classify(alg, &explicit).unwrap(), expected, "{name}");
            assert_eq!(g.baer_sum(&a, &b), expected);
            let library = baer_sum_sequences(alg, &s1, &s2).unwrap();
            assert_eq!(g.classify(alg, &library).unwrap(), expected, "{name}");
            checked += 1;
        }
    }
    assert!(checked >= 100);
    assert!(largest >= 2, "only one-dimensional groups were sampled");
}
