//! Disagreement metrics and equilibrium structure.

use crate::dynamics::{is_fixed_point, PreferenceProfile, SystemSpec, Trajectory};
use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};
use crate::graph::Graph;
use crate::preorder::{enumerate_preorders, PreferenceRelation};

/// Largest alternative set and agent count [`enumerate_fixed_points`] accepts.
pub const FIXED_POINT_MAX_ALTERNATIVES: usize = 3;
pub const FIXED_POINT_MAX_AGENTS: usize = 3;

/// Which ordered pairs count as a disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KendallVariant {
    /// `a ≠ b` with `a ≿ b` in the first relation and `b ≿ a` in the second.
    /// Mutual indifference in both relations counts.
    #[default]
    Literal,
    /// Only strictly opposed pairs: `a ≻ b` in the first, `b ≻ a` in the second.
    Strict,
}

impl KendallVariant {
    pub fn name(self) -> &'static str {
        match self {
            KendallVariant::Literal => "literal",
            KendallVariant::Strict => "strict",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "literal" => Some(KendallVariant::Literal),
            "strict" => Some(KendallVariant::Strict),
            _ => None,
        }
    }
}

/// Kendall tau distance between two preorders.
pub fn kendall_tau(p1: &PreferenceRelation, p2: &PreferenceRelation) -> Result<u64> {
    kendall_tau_with(p1, p2, KendallVariant::Literal)
}

pub fn kendall_tau_with(p1: &PreferenceRelation, p2: &PreferenceRelation, variant: KendallVariant) -> Result<u64> {
    let (r1, r2) = (p1.relation(), p2.relation());
    r1.check_dim(r2)?;
    // row a of the transpose of p2 holds {b : b ≿ a in p2}
    let t1 = r1.transpose();
    let t2 = r2.transpose();
    let mut count = 0u64;
    for a in 0..r1.dim() {
        let off_diagonal = !(1u64 << a);
        let mut mask = r1.row(a) & t2.row(a) & off_diagonal;
        if variant == KendallVariant::Strict {
            // not b ≿ a in p1, not a ≿ b in p2
            mask &= !t1.row(a) & !r2.row(a);
        }
        count += u64::from(mask.count_ones());
    }
    Ok(count)
}

/// Sum of Kendall tau distances over edges, each undirected edge once.
pub fn dirichlet_energy(g: &Graph, profile: &PreferenceProfile) -> Result<u64> {
    dirichlet_energy_with(g, profile, KendallVariant::Literal)
}

pub fn dirichlet_energy_with(g: &Graph, profile: &PreferenceProfile, variant: KendallVariant) -> Result<u64> {
    Ok(edge_disagreements(g, profile, variant)?.iter().sum())
}

/// Kendall tau for every edge of `g`, in the graph's edge order.
pub fn edge_disagreements(g: &Graph, profile: &PreferenceProfile, variant: KendallVariant) -> Result<Vec<u64>> {
    if profile.len() != g.n() {
        return Err(Error::DimensionMismatch { left: profile.len(), right: g.n() });
    }
    let rels = profile.relations();
    g.edges().iter().map(|&(i, j)| kendall_tau_with(&rels[i], &rels[j], variant)).collect()
}

/// Per-round energies and per-edge distances for a whole trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyTrace {
    /// `energy[t]`.
    pub energy: Vec<u64>,
    /// `per_edge[t][e]`, edges in the graph's edge order.
    pub per_edge: Vec<Vec<u64>>,
}

impl EnergyTrace {
    pub fn is_non_decreasing(&self) -> bool {
        self.energy.windows(2).all(|w| w[0] <= w[1])
    }

    /// Every edge's distance is non-decreasing over time.
    pub fn edges_non_decreasing(&self) -> bool {
        self.per_edge.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a <= b))
    }

    pub fn final_energy(&self) -> u64 {
        self.energy.last().copied().unwrap_or(0)
    }
}

pub fn trajectory_metrics(g: &Graph, trajectory: &Trajectory, variant: KendallVariant) -> Result<EnergyTrace> {
    let per_edge = trajectory.profiles.iter().map(|p| edge_disagreements(g, p, variant)).collect::<Result<Vec<_>>>()?;
    let energy = per_edge.iter().map(|row| row.iter().sum()).collect();
    Ok(EnergyTrace { energy, per_edge })
}

/// The equilibrium set of a small system, with its least and greatest
/// elements when they exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSet {
    pub points: Vec<PreferenceProfile>,
    pub min: Option<PreferenceProfile>,
    pub max: Option<PreferenceProfile>,
}

/// Brute-force equilibrium search: every profile in the product of all
/// preorders is tested with [`is_fixed_point`].
pub fn enumerate_fixed_points(spec: &SystemSpec, exec: Execution) -> Result<FixedPointSet> {
    let alts = spec.alternatives();
    if alts.size() > FIXED_POINT_MAX_ALTERNATIVES {
        return Err(Error::Capacity { what: "alternatives", value: alts.size(), limit: FIXED_POINT_MAX_ALTERNATIVES });
    }
    let n = spec.n();
    if n > FIXED_POINT_MAX_AGENTS {
        return Err(Error::Capacity { what: "agents", value: n, limit: FIXED_POINT_MAX_AGENTS });
    }
    let preorders = enumerate_preorders(alts)?;
    let base = preorders.len();
    let total = base.pow(n as u32);

    let decode = |mut index: usize| {
        let rels = (0..n)
            .map(|_| {
                let p = preorders[index % base].clone();
                index /= base;
                p
            })
            .collect();
        PreferenceProfile::new(rels).expect("shared alternative set")
    };
    let hits = map_range(exec, total, |index| {
        let profile = decode(index);
        match is_fixed_point(spec, &profile) {
            Ok(true) => Ok(Some(profile)),
            Ok(false) => Ok(None),
            Err(e) => Err(e),
        }
    });
    let mut points = Vec::new();
    for hit in hits {
        if let Some(p) = hit? {
            points.push(p);
        }
    }
    let min = extremum(&points, |c| c.is_le());
    let max = extremum(&points, |c| c.is_ge());
    Ok(FixedPointSet { points, min, max })
}

/// The element related to every other by `rel`, if any.
fn extremum(
    points: &[PreferenceProfile],
    rel: impl Fn(crate::preorder::InformationOrder) -> bool,
) -> Option<PreferenceProfile> {
    points.iter().find(|x| points.iter().all(|y| x.leq(y).map(&rel).unwrap_or(false))).cloned()
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
}

/// Result of [`verify_lattice`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeReport {
    pub size: usize,
    pub pairs_checked: usize,
    pub has_min: bool,
    pub has_max: bool,
    /// Pairs `(i, j)` with no least upper bound inside the set.
    pub missing_join: Vec<(usize, usize)>,
    /// Pairs `(i, j)` with no greatest lower bound inside the set.
    pub missing_meet: Vec<(usize, usize)>,
    /// Pairs whose in-set join differs from the ambient agentwise join.
    pub join_differs: Vec<(usize, usize)>,
    /// Pairs whose in-set meet differs from the ambient agentwise meet.
    pub meet_differs: Vec<(usize, usize)>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.size > 0 && self.has_min && self.has_max && self.missing_join.is_empty() && self.missing_meet.is_empty()
    }
}

/// Checks that a finite set of profiles is a lattice under the product
/// order, by searching every pair's bounds within the set.
///
/// Upper and lower sets are kept as bitsets. Among the common upper bounds
/// of a pair, only the one with the largest up-set can be least, so each
/// pair costs one candidate scan and one subset test.
pub fn verify_lattice(points: &[PreferenceProfile]) -> Result<LatticeReport> {
    let m = points.len();
    let words = m.div_ceil(64);
    let mut up = vec![vec![0u64; words]; m];
    let mut down = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in 0..m {
            if points[i].leq(&points[j])?.is_le() {
                up[i][j / 64] |= 1 << (j % 64);
                down[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let up_size: Vec<u32> = up.iter().map(|s| s.iter().map(|w| w.count_ones()).sum()).collect();
    let down_size: Vec<u32> = down.iter().map(|s| s.iter().map(|w| w.count_ones()).sum()).collect();

    let intersect = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| x & y).collect() };
    let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
    // element of `set` below (resp. above) all of `set`
    let least = |set: &[u64]| {
        let c = members(set).max_by_key(|&u| up_size[u])?;
        subset(set, &up[c]).then_some(c)
    };
    let greatest = |set: &[u64]| {
        let c = members(set).max_by_key(|&u| down_size[u])?;
        subset(set, &down[c]).then_some(c)
    };

    let mut all = vec![0u64; words];
    for i in 0..m {
        all[i / 64] |= 1 << (i % 64);
    }
    let mut report = LatticeReport {
        size: m,
        has_min: least(&all).is_some(),
        has_max: greatest(&all).is_some(),
        ..LatticeReport::default()
    };
    for i in 0..m {
        for j in i + 1..m {
            report.pairs_checked += 1;
            match least(&intersect(&up[i], &up[j])) {
                Some(lub) => {
                    if points[lub] != points[i].join(&points[j])? {
                        report.join_differs.push((i, j));
                    }
                }
                None => report.missing_join.push((i, j)),
            }
            match greatest(&intersect(&down[i], &down[j])) {
                Some(glb) => {
                    if points[glb] != points[i].meet(&points[j])? {
                        report.meet_differs.push((i, j));
                    }
                }
                None => report.missing_meet.push((i, j)),
            }
        }
    }
    Ok(report)
}
