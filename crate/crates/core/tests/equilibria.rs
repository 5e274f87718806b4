//! Equilibrium sets of small systems, found by exhaustive search.

mod common;

use common::*;
use prefdyn_core::aggregation::{MessageFn, UpdateFn};
use prefdyn_core::analysis::{enumerate_fixed_points, verify_lattice};
use prefdyn_core::dynamics::{is_fixed_point, run, AgentSpec, PreferenceProfile, SystemSpec};
use prefdyn_core::exec::Execution;
use prefdyn_core::graph::Graph;
use prefdyn_core::preorder::{enumerate_preorders, PreferenceRelation};

fn spec(graph: Graph, rs: &[usize], update: UpdateFn, n_alts: usize) -> SystemSpec {
    let agents = rs.iter().map(|&r| AgentSpec::new(MessageFn::Identity, r, update)).collect();
    SystemSpec::new(graph, agents, alts(n_alts)).unwrap()
}

#[test]
fn extremal_profiles_are_always_equilibria() {
    for g in [Graph::path(2), Graph::path(3), Graph::complete(3)] {
        let n = g.n();
        let degree1 = vec![1; n];
        let s = spec(g, &degree1, UpdateFn::JoinUpdate, 3);
        let set = enumerate_fixed_points(&s, Execution::Parallel).unwrap();
        let bottom = PreferenceProfile::constant(n, PreferenceRelation::epsilon(alts(3)));
        let top = PreferenceProfile::constant(n, PreferenceRelation::iota(alts(3)));
        assert!(set.points.contains(&bottom) && set.points.contains(&top));
        assert!(set.points.len() >= 2);
        assert_eq!(set.min.as_ref(), Some(&bottom));
        assert_eq!(set.max.as_ref(), Some(&top));
    }
}

#[test]
fn every_monotone_spec_on_a_small_system_has_a_lattice_of_equilibria() {
    let updates = [UpdateFn::JoinUpdate, UpdateFn::MeetUpdate, UpdateFn::Posterior, UpdateFn::Prior];
    for update in updates {
        for rs in [[1, 1], [1, 1]] {
            let s = spec(Graph::path(2), &rs, update, 3);
            let set = enumerate_fixed_points(&s, Execution::Parallel).unwrap();
            assert!(!set.points.is_empty(), "{update:?}");
            let report = verify_lattice(&set.points).unwrap();
            assert!(report.passed(), "{update:?}: {report:?}");
        }
    }
    // path on three agents; the middle agent has degree 2
    for r_mid in 1..=2 {
        let s = spec(Graph::path(3), &[1, r_mid, 1], UpdateFn::JoinUpdate, 3);
        let set = enumerate_fixed_points(&s, Execution::Parallel).unwrap();
        assert!(verify_lattice(&set.points).unwrap().passed(), "r_mid = {r_mid}");
    }
}

#[test]
fn sequential_and_parallel_enumeration_agree() {
    let s = spec(Graph::path(3), &[1, 2, 1], UpdateFn::JoinUpdate, 3);
    assert_eq!(
        enumerate_fixed_points(&s, Execution::Sequential).unwrap(),
        enumerate_fixed_points(&s, Execution::Parallel).unwrap()
    );
}

#[test]
fn converged_runs_land_in_the_equilibrium_set() {
    let s = spec(Graph::path(3), &[1, 2, 1], UpdateFn::JoinUpdate, 3);
    let set = enumerate_fixed_points(&s, Execution::Parallel).unwrap();
    let all = enumerate_preorders(alts(3)).unwrap();
    for (i, x) in all.iter().enumerate().step_by(3) {
        let y = &all[(i * 7) % all.len()];
        let z = &all[(i * 13 + 5) % all.len()];
        let start = PreferenceProfile::new(vec![x.clone(), y.clone(), z.clone()]).unwrap();
        let traj = run(&s, &start, 100).unwrap();
        assert!(traj.converged_at.is_some());
        assert!(is_fixed_point(&s, traj.last()).unwrap());
        assert!(set.points.contains(traj.last()));
    }
}

/// The in-set join of two equilibria need not be their agentwise join; the
/// scan records how often that happens without asserting it.
#[test]
fn in_set_operations_may_differ_from_ambient() {
    let s = spec(Graph::path(3), &[1, 2, 1], UpdateFn::JoinUpdate, 3);
    let set = enumerate_fixed_points(&s, Execution::Parallel).unwrap();
    let report = verify_lattice(&set.points).unwrap();
    println!(
        "|S| = {}, join differs on {} pairs, meet differs on {} pairs",
        report.size,
        report.join_differs.len(),
        report.meet_differs.len()
    );
    assert!(report.passed());
}
