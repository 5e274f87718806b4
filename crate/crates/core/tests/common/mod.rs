#![allow(dead_code)]

use prefdyn_core::dynamics::PreferenceProfile;
use prefdyn_core::preorder::{transitive_reflexive_closure, PreferenceRelation};
use prefdyn_core::relation::{AlternativeSet, Relation};
use proptest::prelude::*;

pub fn alts(n: usize) -> AlternativeSet {
    AlternativeSet::new(n).unwrap()
}

/// Arbitrary raw relation on `n` alternatives.
pub fn relation(n: usize) -> impl Strategy<Value = Relation> {
    prop::collection::vec((0..n, 0..n), 0..=3 * n).prop_map(move |pairs| Relation::from_pairs(alts(n), &pairs).unwrap())
}

/// Arbitrary preorder: closure of a few random pairs, so both sparse and
/// dense preorders show up.
pub fn preorder(n: usize) -> impl Strategy<Value = PreferenceRelation> {
    prop::collection::vec((0..n, 0..n), 0..=n + 2)
        .prop_map(move |pairs| transitive_reflexive_closure(&Relation::from_pairs(alts(n), &pairs).unwrap()))
}

pub fn profile(agents: usize, n: usize) -> impl Strategy<Value = PreferenceProfile> {
    prop::collection::vec(preorder(n), agents).prop_map(|rels| PreferenceProfile::new(rels).unwrap())
}

/// Independent transitivity check on a plain boolean matrix.
pub fn naive_is_transitive(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m[a][b] && m[b][c] && !m[a][c] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn to_matrix(r: &Relation) -> Vec<Vec<bool>> {
    (0..r.dim()).map(|a| (0..r.dim()).map(|b| r.contains(a, b)).collect()).collect()
}

pub fn naive_subset(x: &Relation, y: &Relation) -> bool {
    x.pairs().all(|(a, b)| y.contains(a, b))
}
