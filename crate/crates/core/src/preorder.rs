//! Preference relations (preorders) and the complete lattice they form under
//! inclusion, the information order.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::relation::{AlternativeSet, Relation};

/// Largest alternative set [`enumerate_preorders`] accepts without opt-in.
pub const ENUMERATION_CAP: usize = 4;
/// Largest alternative set [`enumerate_preorders_opt_in`] accepts.
pub const ENUMERATION_HARD_CAP: usize = 5;

/// Outcome of comparing two relations by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InformationOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl InformationOrder {
    /// `Less` or `Equal`.
    pub fn is_le(self) -> bool {
        matches!(self, InformationOrder::Less | InformationOrder::Equal)
    }

    /// `Greater` or `Equal`.
    pub fn is_ge(self) -> bool {
        matches!(self, InformationOrder::Greater | InformationOrder::Equal)
    }

    pub(crate) fn from_inclusions(le: bool, ge: bool) -> Self {
        match (le, ge) {
            (true, true) => InformationOrder::Equal,
            (true, false) => InformationOrder::Less,
            (false, true) => InformationOrder::Greater,
            (false, false) => InformationOrder::Incomparable,
        }
    }
}

/// A reflexive, transitive relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceRelation(Relation);

impl PreferenceRelation {
    /// Validates `rel` as a preorder.
    pub fn new(rel: Relation) -> Result<Self> {
        if !rel.is_reflexive() {
            return Err(Error::NotAPreorder { reason: "not reflexive" });
        }
        if !rel.is_transitive() {
            return Err(Error::NotAPreorder { reason: "not transitive" });
        }
        Ok(PreferenceRelation(rel))
    }

    /// Convenience: the transitive-reflexive closure of the given pairs.
    pub fn generated_by(alts: AlternativeSet, pairs: &[(usize, usize)]) -> Result<Self> {
        Ok(transitive_reflexive_closure(&Relation::from_pairs(alts, pairs)?))
    }

    /// The diagonal: no alternatives compared. Minimum of the lattice.
    pub fn epsilon(alts: AlternativeSet) -> Self {
        PreferenceRelation(Relation::diagonal(alts))
    }

    /// Every pair present: total indifference. Maximum of the lattice.
    pub fn iota(alts: AlternativeSet) -> Self {
        PreferenceRelation(Relation::full(alts))
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn into_relation(self) -> Relation {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn alternatives(&self) -> AlternativeSet {
        self.0.alternatives()
    }

    /// True iff `a ≿ b`.
    #[inline]
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.0.contains(a, b)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        Ok(PreferenceRelation(self.0.intersection(&other.0)?))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        // the union is already reflexive
        Ok(PreferenceRelation(self.0.union(&other.0)?.transitive_closure()))
    }

    pub fn leq(&self, other: &Self) -> Result<InformationOrder> {
        let le = self.0.is_subset(&other.0)?;
        let ge = other.0.is_subset(&self.0)?;
        Ok(InformationOrder::from_inclusions(le, ge))
    }

    /// Reverses every comparison.
    pub fn converse(&self) -> Self {
        PreferenceRelation(self.0.transpose())
    }

    /// A witness chain `a = c0 ≿ c1 ≿ … ≿ cℓ = b` whose steps are each held
    /// by `self` or `other`, present iff `a ≿ b` holds in their join.
    /// The chain found is a shortest one.
    pub fn join_chain_witness(&self, other: &Self, a: usize, b: usize) -> Result<Option<JoinChain>> {
        self.0.check_dim(&other.0)?;
        let dim = self.dim();
        for i in [a, b] {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, size: dim });
            }
        }
        let union = self.0.union(&other.0)?;
        let path = shortest_path(&union, a, b);
        Ok(path.map(|nodes| {
            let steps = nodes
                .windows(2)
                .map(|w| {
                    let source = match (self.prefers(w[0], w[1]), other.prefers(w[0], w[1])) {
                        (true, true) => ChainSource::Both,
                        (true, false) => ChainSource::First,
                        _ => ChainSource::Second,
                    };
                    ChainStep { to: w[1], source }
                })
                .collect();
            JoinChain { start: a, steps }
        }))
    }

    pub fn to_text(&self) -> String {
        self.0.to_text()
    }
}

impl fmt::Debug for PreferenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict: Vec<_> = self.0.pairs().filter(|(a, b)| a != b).collect();
        write!(f, "Pre{}{:?}", self.dim(), strict)
    }
}

impl fmt::Display for PreferenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for PreferenceRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PreferenceRelation::new(s.parse()?)
    }
}

impl AsRef<Relation> for PreferenceRelation {
    fn as_ref(&self) -> &Relation {
        &self.0
    }
}

/// BFS over the digraph of `rel`; returns the node sequence from `a` to `b`.
pub(crate) fn shortest_path(rel: &Relation, a: usize, b: usize) -> Option<Vec<usize>> {
    if a == b {
        return Some(vec![a]);
    }
    let dim = rel.dim();
    let mut parent = vec![usize::MAX; dim];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(c) = queue.pop_front() {
        let mut bits = rel.row(c);
        while bits != 0 {
            let d = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if parent[d] != usize::MAX {
                continue;
            }
            parent[d] = c;
            if d == b {
                let mut path = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(d);
        }
    }
    None
}

/// Which input relation(s) hold a step of a join chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSource {
    First,
    Second,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStep {
    pub to: usize,
    pub source: ChainSource,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinChain {
    pub start: usize,
    pub steps: Vec<ChainStep>,
}

impl JoinChain {
    /// `[c0, c1, .., cℓ]`.
    pub fn alternatives(&self) -> Vec<usize> {
        std::iter::once(self.start).chain(self.steps.iter().map(|s| s.to)).collect()
    }
}

/// Smallest preorder containing `rel`.
pub fn transitive_reflexive_closure(rel: &Relation) -> PreferenceRelation {
    PreferenceRelation(rel.with_diagonal().transitive_closure())
}

/// Intersection of all inputs; the empty meet is `iota`.
pub fn meet_many(alts: AlternativeSet, rels: &[PreferenceRelation]) -> Result<PreferenceRelation> {
    let mut acc = Relation::full(alts);
    for p in rels {
        acc = acc.intersection(p.relation())?;
    }
    Ok(PreferenceRelation(acc))
}

/// Closure of the union of all inputs; the empty join is `epsilon`.
pub fn join_many(alts: AlternativeSet, rels: &[PreferenceRelation]) -> Result<PreferenceRelation> {
    let mut acc = Relation::diagonal(alts);
    for p in rels {
        acc = acc.union(p.relation())?;
    }
    Ok(PreferenceRelation(acc.transitive_closure()))
}

fn off_diagonal_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
}

/// Every preorder on `alts`, each once, ordered by the bitmask of
/// off-diagonal pairs (row-major). Refuses sizes above [`ENUMERATION_CAP`].
pub fn enumerate_preorders(alts: AlternativeSet) -> Result<Vec<PreferenceRelation>> {
    if alts.size() > ENUMERATION_CAP {
        return Err(Error::Capacity { what: "alternatives", value: alts.size(), limit: ENUMERATION_CAP });
    }
    Ok(enumerate_unchecked(alts))
}

/// As [`enumerate_preorders`] but allows up to [`ENUMERATION_HARD_CAP`]
/// alternatives (6942 preorders at size 5).
pub fn enumerate_preorders_opt_in(alts: AlternativeSet) -> Result<Vec<PreferenceRelation>> {
    if alts.size() > ENUMERATION_HARD_CAP {
        return Err(Error::Capacity { what: "alternatives", value: alts.size(), limit: ENUMERATION_HARD_CAP });
    }
    Ok(enumerate_unchecked(alts))
}

fn enumerate_unchecked(alts: AlternativeSet) -> Vec<PreferenceRelation> {
    let pairs = off_diagonal_pairs(alts.size());
    let base = Relation::diagonal(alts);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rows = base.rows().to_vec();
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rows[a] |= 1u64 << b;
            }
        }
        let rel = Relation::from_rows(rows).expect("rows within dimension");
        if rel.is_transitive() {
            out.push(PreferenceRelation(rel));
        }
    }
    out
}

/// Rejection sampler: each off-diagonal pair is included independently with
/// probability `p`, the diagonal is added, and the draw is kept only if it is
/// transitive. Gives up after `max_rejects` draws.
pub fn random_preorder<R: Rng + ?Sized>(
    alts: AlternativeSet,
    p: f64,
    rng: &mut R,
    max_rejects: usize,
) -> Result<PreferenceRelation> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let n = alts.size();
    for _ in 0..max_rejects {
        let mut rows: Vec<u64> = (0..n).map(|a| 1u64 << a).collect();
        for (a, row) in rows.iter_mut().enumerate() {
            for b in 0..n {
                if a != b && rng.gen_bool(p) {
                    *row |= 1u64 << b;
                }
            }
        }
        let rel = Relation::from_rows(rows).expect("rows within dimension");
        if rel.is_transitive() {
            return Ok(PreferenceRelation(rel));
        }
    }
    Err(Error::RejectionBudget { attempts: max_rejects })
}
