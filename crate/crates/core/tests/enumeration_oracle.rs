//! Exact structures recomputed without pruning: every assignment of a
//! subspace to every nonzero Ext group, filtered by functoriality and then by
//! the axioms.

mod common;

use std::collections::HashSet;

use exactcat_core::exact::{
    enumerate_exact_structures, enumerate_subfunctors, validate_axioms, validate_subfunctor, Provenance, SubfunctorExt,
};
use exactcat_core::linalg::Subspace;
use exactcat_core::Category;

struct Oracle {
    closed: Vec<SubfunctorExt>,
    exact: Vec<SubfunctorExt>,
    unclosed: Vec<SubfunctorExt>,
}

fn brute_force(cat: &Category) -> Oracle {
    let f = cat.field();
    let n = cat.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| cat.ext.dim(x, y) > 0).collect();
    let choices: Vec<Vec<Subspace>> = pairs.iter().map(|&(x, y)| Subspace::enumerate_all(f, cat.ext.dim(x, y))).collect();
    let mut out = Oracle { closed: vec![], exact: vec![], unclosed: vec![] };
    let mut digits = vec![0usize; pairs.len()];
    loop {
        let mut table: Vec<Vec<Subspace>> =
            (0..n).map(|x| (0..n).map(|y| Subspace::zero(f, cat.ext.dim(x, y))).collect()).collect();
        for (k, &(x, y)) in pairs.iter().enumerate() {
            table[x][y] = choices[k][digits[k]].clone();
        }
        let s = SubfunctorExt::from_table(cat, table, Provenance::Explicit).unwrap();
        if validate_subfunctor(cat, &s).is_ok() {
            if validate_axioms(cat, &s, cat.default_bound()).passed() {
                out.exact.push(s.clone());
            }
            out.closed.push(s);
        } else {
            out.unclosed.push(s);
        }
        // Odometer over the product of lattices.
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < choices[k].len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
    }
    out
}

fn as_set(v: &[SubfunctorExt]) -> HashSet<SubfunctorExt> {
    v.iter().cloned().collect()
}

#[test]
fn pruned_enumeration_matches_full_product() {
    // (closed subfunctors, exact structures), frozen from the full product.
    let expected = [(2, 2), (13, 8), (4, 4), (2, 2)];
    for ((name, cat), (closed, exact)) in common::testbeds().into_iter().zip(expected) {
        let oracle = brute_force(&cat);
        assert_eq!(oracle.closed.len(), closed, "{name}");
        assert_eq!(oracle.exact.len(), exact, "{name}");
        let subs = enumerate_subfunctors(&cat, 1 << 24).unwrap();
        assert_eq!(as_set(&subs), as_set(&oracle.closed), "{name}");
        assert_eq!(subs.len(), oracle.closed.len(), "{name}: duplicates");
        let e = enumerate_exact_structures(&cat, cat.default_bound(), 1 << 24).unwrap();
        let found: Vec<SubfunctorExt> = e.structures.iter().map(|s| s.structure.clone()).collect();
        assert_eq!(as_set(&found), as_set(&oracle.exact), "{name}");
    }
}

#[test]
fn one_structure_per_set_of_almost_split_sequences() {
    // Each non-projective indecomposable ends exactly one almost split sequence.
    for (name, cat) in common::testbeds() {
        let non_projective = cat.catalog().projective.iter().filter(|&&p| !p).count();
        let e = enumerate_exact_structures(&cat, cat.default_bound(), 1 << 24).unwrap();
        assert_eq!(e.structures.len(), 1 << non_projective, "{name}");
    }
}

#[test]
fn unclosed_assignments_fail_the_axioms_with_a_witness() {
    let mut controls = 0;
    for (name, cat) in common::testbeds() {
        for s in brute_force(&cat).unclosed {
            let r = validate_axioms(&cat, &s, cat.default_bound());
            let failure = r.first_failure().unwrap_or_else(|| panic!("{name}: unclosed assignment passed"));
            assert!(failure.witness.is_some() || failure.error.is_some(), "{name}: no witness");
            controls += 1;
        }
    }
    assert!(controls > 0);
}

#[test]
fn extremes_are_split_and_abelian() {
    for (name, cat) in common::testbeds() {
        let e = enumerate_exact_structures(&cat, cat.default_bound(), 1 << 24).unwrap();
        let split = SubfunctorExt::split(&cat);
        let ab = SubfunctorExt::abelian(&cat);
        for s in &e.structures {
            assert!(split.le(&s.structure) && s.structure.le(&ab), "{name}");
        }
        assert!(e.structures.iter().any(|s| s.structure == split));
        assert!(e.structures.iter().any(|s| s.structure == ab));
    }
}
