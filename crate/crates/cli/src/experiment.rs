//! Seeded experiment runs: one graph, one threshold assignment, many
//! initial profiles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use prefdyn_core::analysis::{dirichlet_energy_with, trajectory_metrics, EnergyTrace, KendallVariant};
use prefdyn_core::dynamics::{run, AgentSpec, PreferenceProfile, SystemSpec};
use prefdyn_core::exec::{try_map_range, Execution};
use prefdyn_core::graph::{random_k_regular, Graph, DEFAULT_RESTART_BUDGET};
use prefdyn_core::preorder::random_preorder;
use prefdyn_core::relation::AlternativeSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentConfig, RAssignment, ValidatedConfig};
use crate::error::CliError;

/// Everything one initial profile produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub run_id: usize,
    pub initial: PreferenceProfile,
    pub final_profile: PreferenceProfile,
    pub converged_at: Option<usize>,
    /// Trace under the configured metric variant.
    pub trace: EnergyTrace,
    pub final_energy_literal: u64,
    pub final_energy_strict: u64,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub metric: KendallVariant,
    pub spec: SystemSpec,
    pub connected: bool,
    pub r_values: Vec<usize>,
    pub records: Vec<RunRecord>,
}

/// RNG for initial profile `run_id`: the init seed selects the key and the
/// run index selects the ChaCha stream, so runs never share randomness.
pub fn init_rng(seed: u64, run_id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run_id as u64);
    rng
}

pub fn build_system(cfg: &ValidatedConfig) -> Result<(SystemSpec, Vec<usize>), CliError> {
    let raw = &cfg.raw;
    let alts = AlternativeSet::new(raw.alternatives)?;
    let mut graph_rng = ChaCha8Rng::seed_from_u64(raw.graph.seed);
    let graph: Graph = random_k_regular(raw.n_agents, raw.graph.k, &mut graph_rng, DEFAULT_RESTART_BUDGET)?;
    let k = raw.graph.k;
    let r_values: Vec<usize> = match cfg.r_assignment {
        // isolated agents (k = 0) never aggregate; r = 1 is a placeholder
        _ if k == 0 => vec![1; raw.n_agents],
        RAssignment::Fixed(r) => vec![r; raw.n_agents],
        RAssignment::Uniform { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..raw.n_agents).map(|_| rng.gen_range(1..=k)).collect()
        }
    };
    let agents = r_values.iter().map(|&r| AgentSpec::new(cfg.message, r, cfg.update)).collect();
    Ok((SystemSpec::new(graph, agents, alts)?, r_values))
}

pub fn initial_profile(cfg: &ExperimentConfig, run_id: usize) -> Result<PreferenceProfile, CliError> {
    let alts = AlternativeSet::new(cfg.alternatives)?;
    let mut rng = init_rng(cfg.init.seed, run_id);
    let rels = (0..cfg.n_agents)
        .map(|_| random_preorder(alts, cfg.init.edge_prob, &mut rng, cfg.init.max_rejects))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PreferenceProfile::new(rels)?)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment, CliError> {
    run_experiment_with(config, Execution::default())
}

/// Runs are independent and each seeds its own RNG, so `exec` never
/// changes the result.
pub fn run_experiment_with(config: &ExperimentConfig, exec: Execution) -> Result<Experiment, CliError> {
    let cfg = config.validate()?;
    let (spec, r_values) = build_system(&cfg)?;
    let records = try_map_range(exec, config.n_initial_profiles, |run_id| -> Result<RunRecord, CliError> {
        let initial = initial_profile(config, run_id)?;
        let trajectory = run(&spec, &initial, config.t_max)?;
        let trace = trajectory_metrics(spec.graph(), &trajectory, cfg.metric)?;
        let final_profile = trajectory.last().clone();
        Ok(RunRecord {
            run_id,
            final_energy_literal: dirichlet_energy_with(spec.graph(), &final_profile, KendallVariant::Literal)?,
            final_energy_strict: dirichlet_energy_with(spec.graph(), &final_profile, KendallVariant::Strict)?,
            initial,
            final_profile,
            converged_at: trajectory.converged_at,
            trace,
        })
    })?;
    Ok(Experiment {
        config: config.clone(),
        metric: cfg.metric,
        connected: spec.graph().is_connected(),
        spec,
        r_values,
        records,
    })
}

impl Experiment {
    pub fn mean_final_energy(&self) -> f64 {
        let total: u64 = self.records.iter().map(|r| r.trace.final_energy()).sum();
        total as f64 / self.records.len().max(1) as f64
    }

    /// Human-readable summary for the terminal.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let cfg = &self.config;
        let _ = writeln!(
            s,
            "graph: {} agents, {}-regular, {} edges, {}",
            cfg.n_agents,
            cfg.graph.k,
            self.spec.graph().edge_count(),
            if self.connected { "connected" } else { "disconnected" }
        );
        let mut rounds: BTreeMap<String, usize> = BTreeMap::new();
        for r in &self.records {
            let key = r.converged_at.map_or_else(|| "not converged".to_string(), |t| format!("t0 = {t:>2}"));
            *rounds.entry(key).or_default() += 1;
        }
        let _ = writeln!(s, "convergence (of {} runs):", self.records.len());
        for (k, v) in &rounds {
            let _ = writeln!(s, "  {k}: {v}");
        }
        let lit: Vec<u64> = self.records.iter().map(|r| r.final_energy_literal).collect();
        let strict: Vec<u64> = self.records.iter().map(|r| r.final_energy_strict).collect();
        let stats = |v: &[u64]| {
            let mean = v.iter().sum::<u64>() as f64 / v.len().max(1) as f64;
            format!("min {} / mean {:.2} / max {}", v.iter().min().unwrap_or(&0), mean, v.iter().max().unwrap_or(&0))
        };
        let _ = writeln!(s, "final energy (literal): {}", stats(&lit));
        let _ = writeln!(s, "final energy (strict):  {}", stats(&strict));
        let monotone = self.records.iter().filter(|r| r.trace.is_non_decreasing()).count();
        let _ = writeln!(s, "non-decreasing energy traces: {monotone}/{}", self.records.len());

        // edges starting in agreement that stay in agreement
        let (mut zero_start, mut zero_stay) = (0usize, 0usize);
        for r in &self.records {
            if let (Some(first), Some(last)) = (r.trace.per_edge.first(), r.trace.per_edge.last()) {
                for (a, b) in first.iter().zip(last) {
                    if *a == 0 {
                        zero_start += 1;
                        zero_stay += usize::from(*b == 0);
                    }
                }
            }
        }
        let _ = writeln!(s, "edges agreeing at t = 0 that still agree at the end: {zero_stay}/{zero_start}");
        s
    }
}
