//! Experiment configuration, read from a small TOML file.

use std::path::{Path, PathBuf};

use prefdyn_core::aggregation::{MessageFn, UpdateFn};
use prefdyn_core::analysis::KendallVariant;
use prefdyn_core::relation::MAX_ALTERNATIVES;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub alternatives: usize,
    pub n_agents: usize,
    pub t_max: usize,
    pub n_initial_profiles: usize,
    pub output: PathBuf,
    /// `"literal"` or `"strict"` Kendall tau.
    pub metric: String,
    pub graph: GraphConfig,
    pub init: InitConfig,
    pub agents: AgentsConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GraphConfig {
    pub kind: String,
    pub k: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitConfig {
    pub edge_prob: f64,
    pub seed: u64,
    pub max_rejects: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AgentsConfig {
    pub message: String,
    pub update: String,
    /// `"uniform"`: r drawn uniformly from 1..=k per agent with `r_seed`.
    /// `"fixed"`: every agent uses `r_value`.
    pub r_assignment: String,
    pub r_seed: u64,
    pub r_value: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            alternatives: 5,
            n_agents: 20,
            t_max: 15,
            n_initial_profiles: 10,
            output: PathBuf::from("prefdyn-out"),
            metric: "literal".into(),
            graph: GraphConfig::default(),
            init: InitConfig::default(),
            agents: AgentsConfig::default(),
        }
    }
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig { kind: "k_regular".into(), k: 4, seed: 1 }
    }
}

impl Default for InitConfig {
    fn default() -> Self {
        InitConfig { edge_prob: 0.15, seed: 2, max_rejects: 100_000 }
    }
}

impl Default for AgentsConfig {
    fn default() -> Self {
        AgentsConfig {
            message: "identity".into(),
            update: "join".into(),
            r_assignment: "uniform".into(),
            r_seed: 3,
            r_value: 1,
        }
    }
}

/// How median thresholds are handed out to agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RAssignment {
    Uniform { seed: u64 },
    Fixed(usize),
}

/// A config whose fields have all been checked and parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    pub raw: ExperimentConfig,
    pub message: MessageFn,
    pub update: UpdateFn,
    pub metric: KendallVariant,
    pub r_assignment: RAssignment,
}

fn field_error(field: &str, message: impl Into<String>) -> CliError {
    CliError::Config(format!("{field}: {}", message.into()))
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<ValidatedConfig, CliError> {
        if self.alternatives == 0 || self.alternatives > MAX_ALTERNATIVES {
            return Err(field_error("alternatives", format!("must be in 1..={MAX_ALTERNATIVES}")));
        }
        if self.n_agents == 0 {
            return Err(field_error("n_agents", "must be at least 1"));
        }
        if self.t_max == 0 {
            return Err(field_error("t_max", "must be at least 1"));
        }
        if self.n_initial_profiles == 0 {
            return Err(field_error("n_initial_profiles", "must be at least 1"));
        }
        let metric = KendallVariant::from_name(&self.metric)
            .ok_or_else(|| field_error("metric", format!("unknown variant {:?} (literal | strict)", self.metric)))?;
        if self.graph.kind != "k_regular" {
            return Err(field_error("graph.kind", format!("unknown kind {:?} (k_regular)", self.graph.kind)));
        }
        let (n, k) = (self.n_agents, self.graph.k);
        if k >= n || !(n * k).is_multiple_of(2) {
            return Err(field_error("graph.k", format!("no simple {k}-regular graph on {n} agents")));
        }
        if !(0.0..=1.0).contains(&self.init.edge_prob) {
            return Err(field_error("init.edge_prob", "must be in [0, 1]"));
        }
        if self.init.max_rejects == 0 {
            return Err(field_error("init.max_rejects", "must be at least 1"));
        }
        let message = MessageFn::from_name(&self.agents.message).ok_or_else(|| {
            field_error("agents.message", format!("unknown {:?} (identity | converse | mirror)", self.agents.message))
        })?;
        let update = UpdateFn::from_name(&self.agents.update).ok_or_else(|| {
            field_error("agents.update", format!("unknown {:?} (prior | posterior | meet | join)", self.agents.update))
        })?;
        let r_assignment = match self.agents.r_assignment.as_str() {
            "uniform" => RAssignment::Uniform { seed: self.agents.r_seed },
            "fixed" => {
                let r = self.agents.r_value;
                if k > 0 && (r == 0 || r > k) {
                    return Err(field_error("agents.r_value", format!("must be in 1..={k}")));
                }
                RAssignment::Fixed(r)
            }
            other => return Err(field_error("agents.r_assignment", format!("unknown {other:?} (uniform | fixed)"))),
        };
        Ok(ValidatedConfig { raw: self.clone(), message, update, metric, r_assignment })
    }
}
