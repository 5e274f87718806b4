//! Synchronous message-passing preference dynamics.
//!
//! Each round every agent `i` collects `ψ_j(π_j, π_i)` from its neighbours
//! `j` (in ascending index order), aggregates them with its own r-median,
//! and combines the aggregate with its prior via its update function. All
//! agents read the same input profile, so a round is the global map
//! `F(π) = (F_1(π), …, F_N(π))`.

use std::fmt;

use crate::aggregation::{median, MessageFn, UpdateFn};
use crate::error::{Error, Result};
use crate::exec::{try_map_range, Execution};
use crate::graph::Graph;
use crate::preorder::{join_many, meet_many, InformationOrder, PreferenceRelation};
use crate::relation::{AlternativeSet, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentSpec {
    pub message: MessageFn,
    /// Median threshold; ignored for isolated agents.
    pub r: usize,
    pub update: UpdateFn,
}

impl AgentSpec {
    pub fn new(message: MessageFn, r: usize, update: UpdateFn) -> Self {
        AgentSpec { message, r, update }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    graph: Graph,
    agents: Vec<AgentSpec>,
    alternatives: AlternativeSet,
}

impl SystemSpec {
    pub fn new(graph: Graph, agents: Vec<AgentSpec>, alternatives: AlternativeSet) -> Result<Self> {
        if agents.len() != graph.n() {
            return Err(Error::InvalidSystem(format!(
                "{} agent specs for a graph on {} agents",
                agents.len(),
                graph.n()
            )));
        }
        for (i, agent) in agents.iter().enumerate() {
            let degree = graph.degree(i)?;
            if degree > 0 && (agent.r == 0 || agent.r > degree) {
                return Err(Error::InvalidSystem(format!("agent {i}: r = {} outside [1, {degree}]", agent.r)));
            }
        }
        Ok(SystemSpec { graph, agents, alternatives })
    }

    /// Every agent gets the same spec.
    pub fn uniform(graph: Graph, agent: AgentSpec, alternatives: AlternativeSet) -> Result<Self> {
        let agents = vec![agent; graph.n()];
        SystemSpec::new(graph, agents, alternatives)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn agents(&self) -> &[AgentSpec] {
        &self.agents
    }

    pub fn alternatives(&self) -> AlternativeSet {
        self.alternatives
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    fn check_profile(&self, profile: &PreferenceProfile) -> Result<()> {
        if profile.len() != self.n() {
            return Err(Error::InvalidSystem(format!("profile has {} agents, system has {}", profile.len(), self.n())));
        }
        if profile.alternatives() != Some(self.alternatives) && self.n() > 0 {
            return Err(Error::DimensionMismatch {
                left: profile.relations()[0].dim(),
                right: self.alternatives.size(),
            });
        }
        Ok(())
    }
}

/// One preference relation per agent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceProfile(Vec<PreferenceRelation>);

impl PreferenceProfile {
    /// All relations must share one alternative set.
    pub fn new(relations: Vec<PreferenceRelation>) -> Result<Self> {
        if let Some(first) = relations.first() {
            for p in &relations[1..] {
                first.relation().check_dim(p.relation())?;
            }
        }
        Ok(PreferenceProfile(relations))
    }

    pub fn constant(n: usize, p: PreferenceRelation) -> Self {
        PreferenceProfile(vec![p; n])
    }

    pub fn relations(&self) -> &[PreferenceRelation] {
        &self.0
    }

    pub fn into_relations(self) -> Vec<PreferenceRelation> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn alternatives(&self) -> Option<AlternativeSet> {
        self.0.first().map(PreferenceRelation::alternatives)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// Product order: entrywise comparison.
    pub fn leq(&self, other: &Self) -> Result<InformationOrder> {
        self.check_len(other)?;
        let (mut le, mut ge) = (true, true);
        for (p, q) in self.0.iter().zip(&other.0) {
            let c = p.leq(q)?;
            le &= c.is_le();
            ge &= c.is_ge();
        }
        Ok(InformationOrder::from_inclusions(le, ge))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let rels = self.0.iter().zip(&other.0).map(|(p, q)| p.meet(q)).collect::<Result<_>>()?;
        Ok(PreferenceProfile(rels))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let rels = self.0.iter().zip(&other.0).map(|(p, q)| p.join(q)).collect::<Result<_>>()?;
        Ok(PreferenceProfile(rels))
    }

    /// Header `"n |A|"`, then each relation's text block, blocks separated
    /// by one blank line.
    pub fn to_text(&self) -> String {
        let dim = self.alternatives().map_or(0, AlternativeSet::size);
        let mut s = format!("{} {}\n", self.len(), dim);
        for p in &self.0 {
            s.push('\n');
            s.push_str(&p.to_text());
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let header = lines.first().ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(1, "header must be \"n |A|\""))?;
        let [n, dim] = fields[..] else {
            return Err(Error::parse(1, "header must be \"n |A|\""));
        };
        let mut relations = Vec::with_capacity(n);
        let mut idx = 1;
        while relations.len() < n {
            while idx < lines.len() && lines[idx].trim().is_empty() {
                idx += 1;
            }
            if idx + dim > lines.len() {
                return Err(Error::parse(idx + 1, format!("expected {n} relations, found {}", relations.len())));
            }
            let rel = Relation::parse_lines(&lines[idx..idx + dim], idx + 1)?;
            relations.push(PreferenceRelation::new(rel).map_err(|e| Error::parse(idx + 1, e.to_string()))?);
            idx += dim;
        }
        if lines[idx..].iter().any(|l| !l.trim().is_empty()) {
            return Err(Error::parse(idx + 1, "trailing content after last relation"));
        }
        PreferenceProfile::new(relations)
    }
}

impl fmt::Debug for PreferenceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Agent `i`'s next relation given the current profile.
pub fn local_step(spec: &SystemSpec, profile: &PreferenceProfile, i: usize) -> Result<PreferenceRelation> {
    let neighbors = spec.graph.neighbors(i)?;
    let current = &profile.0[i];
    let agent = spec.agents[i];
    let aggregate = if neighbors.is_empty() {
        PreferenceRelation::epsilon(spec.alternatives)
    } else {
        let messages: Vec<PreferenceRelation> =
            neighbors.iter().map(|&j| spec.agents[j].message.apply(&profile.0[j], current)).collect();
        median(agent.r, &messages)?
    };
    agent.update.apply(current, &aggregate)
}

/// One synchronous round.
pub fn global_step(spec: &SystemSpec, profile: &PreferenceProfile) -> Result<PreferenceProfile> {
    global_step_with(spec, profile, Execution::default())
}

pub fn global_step_with(spec: &SystemSpec, profile: &PreferenceProfile, exec: Execution) -> Result<PreferenceProfile> {
    spec.check_profile(profile)?;
    let rels = try_map_range(exec, spec.n(), |i| local_step(spec, profile, i))?;
    Ok(PreferenceProfile(rels))
}

pub fn is_fixed_point(spec: &SystemSpec, profile: &PreferenceProfile) -> Result<bool> {
    Ok(&global_step_with(spec, profile, Execution::Sequential)? == profile)
}

/// Visited profiles `π(0), π(1), …` and the first round `t` with
/// `π(t+1) = π(t)`, if reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub profiles: Vec<PreferenceProfile>,
    pub converged_at: Option<usize>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn last(&self) -> &PreferenceProfile {
        self.profiles.last().expect("trajectory holds the initial profile")
    }

    /// Agentwise join of every visited profile.
    pub fn agentwise_join(&self) -> Result<PreferenceProfile> {
        self.agentwise(join_many)
    }

    /// Agentwise meet of every visited profile.
    pub fn agentwise_meet(&self) -> Result<PreferenceProfile> {
        self.agentwise(meet_many)
    }

    fn agentwise(
        &self,
        fold: fn(AlternativeSet, &[PreferenceRelation]) -> Result<PreferenceRelation>,
    ) -> Result<PreferenceProfile> {
        let first = &self.profiles[0];
        let Some(alts) = first.alternatives() else {
            return Ok(first.clone());
        };
        let rels = (0..first.len())
            .map(|i| {
                let column: Vec<_> = self.profiles.iter().map(|p| p.0[i].clone()).collect();
                fold(alts, &column)
            })
            .collect::<Result<_>>()?;
        Ok(PreferenceProfile(rels))
    }
}

/// Iterates [`global_step`] from `initial` for at most `t_max` rounds,
/// stopping as soon as a round leaves the profile unchanged.
pub fn run(spec: &SystemSpec, initial: &PreferenceProfile, t_max: usize) -> Result<Trajectory> {
    run_with(spec, initial, t_max, Execution::Sequential)
}

pub fn run_with(spec: &SystemSpec, initial: &PreferenceProfile, t_max: usize, exec: Execution) -> Result<Trajectory> {
    if t_max == 0 {
        return Err(Error::ZeroHorizon);
    }
    spec.check_profile(initial)?;
    let mut profiles = vec![initial.clone()];
    let mut converged_at = None;
    for t in 0..t_max {
        let next = global_step_with(spec, &profiles[t], exec)?;
        let fixed = next == profiles[t];
        profiles.push(next);
        if fixed {
            converged_at = Some(t);
            break;
        }
    }
    Ok(Trajectory { profiles, converged_at })
}

/// Runs many initial profiles against one system, one trajectory each, in
/// input order.
pub fn run_many(
    spec: &SystemSpec,
    initials: &[PreferenceProfile],
    t_max: usize,
    exec: Execution,
) -> Result<Vec<Trajectory>> {
    try_map_range(exec, initials.len(), |k| run(spec, &initials[k], t_max))
}

/// Round bound for inflationary or deflationary runs: each strict step
/// changes at least one of the `n·|A|²` bits.
pub fn monotone_round_bound(spec: &SystemSpec) -> usize {
    let a = spec.alternatives.size();
    a * a * spec.n() + 1
}
