//! Exhaustive equilibrium search for `prefdyn enumerate`.

use std::fmt::Write as _;

use prefdyn_core::aggregation::{MessageFn, UpdateFn};
use prefdyn_core::analysis::{enumerate_fixed_points, verify_lattice, FixedPointSet, LatticeReport};
use prefdyn_core::dynamics::{AgentSpec, SystemSpec};
use prefdyn_core::exec::Execution;
use prefdyn_core::graph::Graph;
use prefdyn_core::relation::AlternativeSet;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerateRequest {
    pub alternatives: usize,
    pub agents: usize,
    /// `path`, `cycle`, `complete` or `edgeless`.
    pub graph: String,
    pub message: String,
    pub update: String,
    /// One threshold for everyone, clamped to each agent's degree.
    pub r: usize,
}

impl Default for EnumerateRequest {
    fn default() -> Self {
        EnumerateRequest {
            alternatives: 3,
            agents: 2,
            graph: "path".into(),
            message: "identity".into(),
            update: "join".into(),
            r: 1,
        }
    }
}

pub fn build_graph(kind: &str, n: usize) -> Result<Graph, CliError> {
    Ok(match kind {
        "path" => Graph::path(n),
        "cycle" => Graph::cycle(n)?,
        "complete" => Graph::complete(n),
        "edgeless" => Graph::edgeless(n),
        other => {
            return Err(CliError::Config(format!("graph: unknown kind {other:?} (path | cycle | complete | edgeless)")))
        }
    })
}

pub fn build_spec(req: &EnumerateRequest) -> Result<SystemSpec, CliError> {
    let alts = AlternativeSet::new(req.alternatives).map_err(|e| CliError::Config(format!("alts: {e}")))?;
    if req.r == 0 {
        return Err(CliError::Config("r: must be at least 1".into()));
    }
    let message = MessageFn::from_name(&req.message)
        .ok_or_else(|| CliError::Config(format!("message: unknown {:?}", req.message)))?;
    let update = UpdateFn::from_name(&req.update)
        .ok_or_else(|| CliError::Config(format!("update: unknown {:?}", req.update)))?;
    let graph = build_graph(&req.graph, req.agents)?;
    let agents = (0..req.agents)
        .map(|i| Ok(AgentSpec::new(message, req.r.min(graph.degree(i)?.max(1)), update)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SystemSpec::new(graph, agents, alts)?)
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub spec: SystemSpec,
    pub set: FixedPointSet,
    pub report: LatticeReport,
}

pub fn enumerate(req: &EnumerateRequest, exec: Execution) -> Result<Enumeration, CliError> {
    let spec = build_spec(req)?;
    let set = enumerate_fixed_points(&spec, exec)?;
    let report = verify_lattice(&set.points)?;
    Ok(Enumeration { spec, set, report })
}

impl Enumeration {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let r: Vec<String> = self.spec.agents().iter().map(|a| a.r.to_string()).collect();
        let _ = writeln!(
            s,
            "{} agents, {} edges, |A| = {}, r = [{}]",
            self.spec.n(),
            self.spec.graph().edge_count(),
            self.spec.alternatives().size(),
            r.join(", ")
        );
        let _ = writeln!(s, "fixed points: {}", self.set.points.len());
        for (label, point) in [("least", &self.set.min), ("greatest", &self.set.max)] {
            match point {
                Some(p) => {
                    let _ = writeln!(s, "{label}:");
                    for (i, rel) in p.relations().iter().enumerate() {
                        let _ =
                            writeln!(s, "  agent {i}: {}", rel.relation().to_text().trim_end().replace('\n', " / "));
                    }
                }
                None => {
                    let _ = writeln!(s, "{label}: none");
                }
            }
        }
        let rep = &self.report;
        let _ = writeln!(
            s,
            "complete lattice: {} ({} pairs checked, {} without an in-set join, {} without an in-set meet)",
            if rep.passed() { "yes" } else { "no" },
            rep.pairs_checked,
            rep.missing_join.len(),
            rep.missing_meet.len()
        );
        let _ = writeln!(
            s,
            "in-set join differs from pointwise join on {} pairs, in-set meet from pointwise meet on {}",
            rep.join_differs.len(),
            rep.meet_differs.len()
        );
        s
    }
}
