//! Self-checks behind `prefdyn verify`.
//!
//! Each check compares the library against a brute-force route (exhaustive
//! enumeration, literal subset formulas, naive triple loops) or checks an
//! order-theoretic invariant on sampled inputs, and reports pass or fail
//! with a short detail line.

use std::time::Instant;

use prefdyn_core::aggregation::{check_aggregation_axioms, median, median_bruteforce, MessageFn, UpdateFn};
use prefdyn_core::analysis::{enumerate_fixed_points, trajectory_metrics, verify_lattice, KendallVariant};
use prefdyn_core::dynamics::{
    global_step_with, is_fixed_point, monotone_round_bound, run, AgentSpec, PreferenceProfile, SystemSpec, Trajectory,
};
use prefdyn_core::exec::{try_map_range, Execution};
use prefdyn_core::graph::Graph;
use prefdyn_core::preorder::{
    enumerate_preorders, join_many, meet_many, transitive_reflexive_closure, PreferenceRelation,
};
use prefdyn_core::relation::{AlternativeSet, Relation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::experiment::{build_system, initial_profile, run_experiment};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:<28} {} ({:.2}s)", self.name, self.detail, self.seconds)
    }
}

fn timed(name: &'static str, body: impl FnOnce() -> Result<(bool, String), CliError>) -> Result<Check, CliError> {
    let start = Instant::now();
    let (passed, detail) = body()?;
    Ok(Check { name, passed, detail, seconds: start.elapsed().as_secs_f64() })
}

fn alts(n: usize) -> AlternativeSet {
    AlternativeSet::new(n).expect("small alternative set")
}

/// A preorder drawn as the closure of a random raw relation of random
/// density, which reaches sparse and dense preorders alike.
pub fn sample_preorder<R: Rng>(n: usize, rng: &mut R) -> PreferenceRelation {
    let density = rng.gen_range(0.0..0.4);
    let mut rel = Relation::empty(alts(n));
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                rel.insert(a, b).expect("in range");
            }
        }
    }
    transitive_reflexive_closure(&rel)
}

fn sample_raw<R: Rng>(n: usize, rng: &mut R) -> Relation {
    let rows = (0..n).map(|_| rng.gen::<u64>() & rng.gen::<u64>() & ((1u64 << n) - 1)).collect();
    Relation::from_rows(rows).expect("masked rows")
}

fn subset(x: &Relation, y: &Relation) -> bool {
    x.pairs().all(|(a, b)| y.contains(a, b))
}

fn le(x: &PreferenceRelation, y: &PreferenceRelation) -> bool {
    subset(x.relation(), y.relation())
}

/// Triple-loop transitivity on a boolean matrix.
pub fn naive_is_transitive(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    (0..n).all(|a| (0..n).all(|b| !m[a][b] || (0..n).all(|c| !m[b][c] || m[a][c])))
}

/// Lattice axioms and closure-operator laws on random triples.
pub fn lattice_laws(seed: u64, triples: usize, n_alts: usize) -> Result<Check, CliError> {
    timed("lattice laws", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = Vec::new();
        for _ in 0..triples {
            let (x, y, z) = (
                sample_preorder(n_alts, &mut rng),
                sample_preorder(n_alts, &mut rng),
                sample_preorder(n_alts, &mut rng),
            );
            let mut check = |ok: bool, law: &'static str| {
                if !ok {
                    violations.push(law);
                }
            };
            check(x.meet(&y)? == y.meet(&x)? && x.join(&y)? == y.join(&x)?, "commutativity");
            check(x.meet(&y)?.meet(&z)? == x.meet(&y.meet(&z)?)?, "meet associativity");
            check(x.join(&y)?.join(&z)? == x.join(&y.join(&z)?)?, "join associativity");
            check(x.meet(&x)? == x && x.join(&x)? == x, "idempotence");
            check(x.join(&x.meet(&y)?)? == x && x.meet(&x.join(&y)?)? == x, "absorption");
            // x ⪯ x ∨ y, so both operations with z must preserve the order
            let hi = x.join(&y)?;
            check(le(&x.meet(&z)?, &hi.meet(&z)?) && le(&x.join(&z)?, &hi.join(&z)?), "monotonicity");
            check(le(&x, &hi) && le(&y, &hi) && le(&x.meet(&y)?, &x), "bounds");

            let (p, q) = (sample_raw(n_alts, &mut rng), sample_raw(n_alts, &mut rng));
            let cp = transitive_reflexive_closure(&p);
            check(subset(&p, cp.relation()), "closure inflationary");
            check(transitive_reflexive_closure(cp.relation()) == cp, "closure idempotent");
            let cpq = transitive_reflexive_closure(&p.union(&q)?);
            check(subset(cp.relation(), cpq.relation()), "closure monotone");
        }
        let detail = format!("{triples} triples at |A| = {n_alts}, {} violations {:?}", violations.len(), violations);
        Ok((violations.is_empty(), detail))
    })
}

/// Join and meet against exhaustive bound search over every preorder.
pub fn completeness(n_alts: usize) -> Result<Check, CliError> {
    timed("lattice completeness", || {
        let all = enumerate_preorders(alts(n_alts))?;
        let off: Vec<(usize, usize)> =
            (0..n_alts).flat_map(|a| (0..n_alts).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let filtered = (0u64..(1 << off.len()))
            .filter(|mask| {
                let mut m = vec![vec![false; n_alts]; n_alts];
                for (a, row) in m.iter_mut().enumerate() {
                    row[a] = true;
                }
                for (bit, &(a, b)) in off.iter().enumerate() {
                    m[a][b] = mask >> bit & 1 == 1;
                }
                naive_is_transitive(&m)
            })
            .count();
        let mut mismatches = 0;
        for x in &all {
            for y in &all {
                let uppers: Vec<_> = all.iter().filter(|u| le(x, u) && le(y, u)).collect();
                let lub = uppers.iter().find(|c| uppers.iter().all(|u| le(c, u)));
                let lowers: Vec<_> = all.iter().filter(|l| le(l, x) && le(l, y)).collect();
                let glb = lowers.iter().find(|c| lowers.iter().all(|l| le(l, c)));
                if lub.map(|p| (*p).clone()) != Some(x.join(y)?) {
                    mismatches += 1;
                }
                if glb.map(|p| (*p).clone()) != Some(x.meet(y)?) {
                    mismatches += 1;
                }
            }
        }
        let ok = all.len() == filtered && mismatches == 0;
        let detail = format!(
            "{} preorders (filter oracle: {filtered}), {} pairs, {mismatches} mismatches",
            all.len(),
            all.len() * all.len()
        );
        Ok((ok, detail))
    })
}

/// Threshold-count median against the literal subset formula.
pub fn median_oracle(seed: u64, instances: usize, max_inputs: usize, n_alts: usize) -> Result<Check, CliError> {
    timed("median oracle", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alts(n_alts);
        let mut mismatches = 0;
        let mut comparisons = 0;
        for _ in 0..instances {
            let n = rng.gen_range(1..=max_inputs);
            let rels: Vec<_> = (0..n).map(|_| sample_preorder(n_alts, &mut rng)).collect();
            for r in 1..=n {
                comparisons += 1;
                if median(r, &rels)? != median_bruteforce(r, &rels)? {
                    mismatches += 1;
                }
            }
            if median(1, &rels)? != join_many(a, &rels)? || median(n, &rels)? != meet_many(a, &rels)? {
                mismatches += 1;
            }
        }
        Ok((mismatches == 0, format!("{instances} instances, {comparisons} (r, input) pairs, {mismatches} mismatches")))
    })
}

/// A random ascending chain of length `n` under inclusion.
fn sample_chain<R: Rng>(n: usize, n_alts: usize, rng: &mut R) -> Vec<PreferenceRelation> {
    let mut chain = vec![PreferenceRelation::epsilon(alts(n_alts))];
    while chain.len() < n {
        let last = chain.last().expect("nonempty");
        let mut extra = Relation::empty(alts(n_alts));
        let (a, b) = (rng.gen_range(0..n_alts), rng.gen_range(0..n_alts));
        extra.insert(a, b).expect("in range");
        let next = last.join(&transitive_reflexive_closure(&extra)).expect("same size");
        chain.push(next);
    }
    chain.shuffle(rng);
    chain
}

/// Anonymity, unanimity and chain behaviour of the r-median.
pub fn aggregation_axioms(seed: u64, instances: usize, permutations: usize) -> Result<Check, CliError> {
    timed("aggregation axioms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_alts = 4;
        let mut failures = 0;
        let mut chains = 0;
        let mut position_r = 0;
        for _ in 0..instances {
            let n = rng.gen_range(1..=6);
            let tuple: Vec<_> = (0..n).map(|_| sample_preorder(n_alts, &mut rng)).collect();
            let chain = sample_chain(n, n_alts, &mut rng);
            for r in 1..=n {
                let report = check_aggregation_axioms(
                    |x| median(r, x),
                    r,
                    &[tuple.clone(), chain.clone()],
                    permutations,
                    &mut rng,
                )?;
                failures += usize::from(!report.passed());
                chains += report.chains_checked;
                position_r += report.chain_position_r_mismatches;
            }
        }
        let detail = format!(
            "{instances} tuples x {permutations} permutations, {chains} chains return position n-r+1, \
             {failures} failures; position r (literal r-middle) differs on {position_r} chains"
        );
        Ok((failures == 0, detail))
    })
}

/// Equilibria of a single edge on three alternatives form a complete lattice.
pub fn tarski() -> Result<Check, CliError> {
    timed("tarski equilibria", || {
        let mut details = Vec::new();
        let mut ok = true;
        // single edge: both agents have one neighbour, so r = 1 is the only
        // admissible threshold; the 3-agent path lets the middle agent take r = 2
        let cases: [(Graph, Vec<usize>); 3] =
            [(Graph::path(2), vec![1, 1]), (Graph::path(3), vec![1, 1, 1]), (Graph::path(3), vec![1, 2, 1])];
        for (graph, rs) in cases {
            let n = graph.n();
            let agents = rs.iter().map(|&r| AgentSpec::new(MessageFn::Identity, r, UpdateFn::JoinUpdate)).collect();
            let spec = SystemSpec::new(graph, agents, alts(3))?;
            let set = enumerate_fixed_points(&spec, Execution::default())?;
            let report = verify_lattice(&set.points)?;
            let pass = !set.points.is_empty() && set.min.is_some() && set.max.is_some() && report.passed();
            ok &= pass;
            details.push(format!(
                "n={n} r={rs:?}: 29^{n} profiles, |S|={}, in-set join differs on {} pairs",
                set.points.len(),
                report.join_differs.len()
            ));
        }
        Ok((ok, details.join("; ")))
    })
}

/// Default-scale system (20 agents, five alternatives) and initial profile for `seed`.
pub fn default_scale_run(
    seed: u64,
    k: usize,
    update: UpdateFn,
    t_max: Option<usize>,
) -> Result<(SystemSpec, Trajectory), CliError> {
    let mut cfg = ExperimentConfig::default();
    cfg.graph.k = k;
    cfg.graph.seed = seed;
    cfg.agents.r_seed = seed.wrapping_add(1);
    cfg.init.seed = seed.wrapping_add(2);
    cfg.agents.update = update.name().into();
    let validated = cfg.validate()?;
    let (spec, _) = build_system(&validated)?;
    let initial = initial_profile(&cfg, 0)?;
    let horizon = t_max.unwrap_or_else(|| monotone_round_bound(&spec));
    let trajectory = run(&spec, &initial, horizon)?;
    Ok((spec, trajectory))
}

/// Inflationary and deflationary runs converge to the agentwise join
/// (meet) of their iterates within `round_limit` rounds.
pub fn convergence(seed: u64, runs: usize, round_limit: usize) -> Result<Check, CliError> {
    timed("finite-time convergence", || {
        let mut bad = Vec::new();
        let mut slowest = 0;
        for update in [UpdateFn::JoinUpdate, UpdateFn::MeetUpdate] {
            let results = try_map_range(Execution::default(), runs, |i| {
                default_scale_run(seed + i as u64 * 7919, 4, update, None)
            })?;
            for (i, (spec, traj)) in results.iter().enumerate() {
                let limit = match update {
                    UpdateFn::JoinUpdate => traj.agentwise_join()?,
                    _ => traj.agentwise_meet()?,
                };
                let t0 = traj.converged_at.unwrap_or(usize::MAX);
                slowest = slowest.max(t0);
                if t0 > round_limit || !is_fixed_point(spec, traj.last())? || traj.last() != &limit {
                    bad.push(format!("{}#{i}", update.name()));
                }
            }
        }
        let detail = format!(
            "{runs} join + {runs} meet runs, slowest convergence at t0 = {slowest} (limit {round_limit}), failures {bad:?}"
        );
        Ok((bad.is_empty(), detail))
    })
}

/// The round map preserves the product order for Identity messages,
/// median aggregation and join updates.
pub fn monotone_dynamics(seed: u64, pairs: usize) -> Result<Check, CliError> {
    timed("monotone dynamics", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = 0;
        for _ in 0..pairs {
            let (n, k) = (10, 4);
            let cfg = ExperimentConfig {
                n_agents: n,
                graph: crate::config::GraphConfig { k, seed: rng.gen(), ..Default::default() },
                agents: crate::config::AgentsConfig { r_seed: rng.gen(), ..Default::default() },
                ..ExperimentConfig::default()
            };
            let (spec, _) = build_system(&cfg.validate()?)?;
            let lo_rels: Vec<_> = (0..n).map(|_| sample_preorder(5, &mut rng)).collect();
            let bump: Vec<_> = (0..n).map(|_| sample_preorder(5, &mut rng)).collect();
            let lo = PreferenceProfile::new(lo_rels)?;
            let hi = lo.join(&PreferenceProfile::new(bump)?)?;
            let f_lo = global_step_with(&spec, &lo, Execution::Sequential)?;
            let f_hi = global_step_with(&spec, &hi, Execution::Sequential)?;
            if !f_lo.leq(&f_hi)?.is_le() {
                violations += 1;
            }
        }
        Ok((violations == 0, format!("{pairs} ordered profile pairs, {violations} violations")))
    })
}

/// Join-update runs never lose disagreement, in total or on any edge.
pub fn energy_monotonicity(seed: u64, runs: usize) -> Result<Check, CliError> {
    timed("energy monotonicity", || {
        let results = try_map_range(Execution::default(), runs, |i| {
            default_scale_run(seed + i as u64 * 7919, 4, UpdateFn::JoinUpdate, None)
        })?;
        let mut bad = 0;
        for (spec, traj) in &results {
            let trace = trajectory_metrics(spec.graph(), traj, KendallVariant::Literal)?;
            if !trace.is_non_decreasing() || !trace.edges_non_decreasing() {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{runs} join trajectories, {bad} with a decreasing total or edge trace")))
    })
}

/// Mean final energy at k = 8 versus k = 4 over paired seeds.
pub fn connectivity_effect(seed: u64, trials: usize, t_max: usize) -> Result<(Check, f64, f64), CliError> {
    let mut means = (0.0, 0.0);
    let check = timed("connectivity effect", || {
        let mut totals = [0.0f64; 2];
        for (slot, k) in [4usize, 8].into_iter().enumerate() {
            for trial in 0..trials {
                let s = seed + trial as u64 * 104_729;
                let mut cfg = ExperimentConfig { t_max, n_initial_profiles: 1, ..ExperimentConfig::default() };
                cfg.graph.k = k;
                cfg.graph.seed = s;
                cfg.agents.r_seed = s + 1;
                cfg.init.seed = s + 2;
                totals[slot] += run_experiment(&cfg)?.mean_final_energy();
            }
        }
        means = (totals[0] / trials as f64, totals[1] / trials as f64);
        Ok((
            means.1 > means.0,
            format!("{trials} paired trials: mean final energy k=4 {:.2}, k=8 {:.2}", means.0, means.1),
        ))
    })?;
    Ok((check, means.0, means.1))
}

/// Everything `prefdyn verify` runs, at the full acceptance sizes.
pub fn run_all(seed: u64) -> Result<Vec<Check>, CliError> {
    Ok(vec![
        lattice_laws(seed, 1000, 5)?,
        completeness(3)?,
        median_oracle(seed, 500, 6, 4)?,
        aggregation_axioms(seed, 200, 50)?,
        tarski()?,
        convergence(seed, 100, 15)?,
        monotone_dynamics(seed, 200)?,
        energy_monotonicity(seed, 100)?,
        connectivity_effect(seed, 20, 15)?.0,
    ])
}
