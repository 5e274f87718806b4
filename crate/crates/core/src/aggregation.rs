//! Lattice polynomials, the r-median aggregation rule, and the message and
//! update function families used by agents.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::preorder::{join_many, meet_many, shortest_path, PreferenceRelation};
use crate::relation::{AlternativeSet, Relation};

/// Largest input count [`median_bruteforce`] will enumerate subsets for.
pub const BRUTEFORCE_MAX_INPUTS: usize = 12;

/// A term built from variables with binary meet and join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticePolynomial {
    Var(usize),
    Meet(Box<LatticePolynomial>, Box<LatticePolynomial>),
    Join(Box<LatticePolynomial>, Box<LatticePolynomial>),
}

impl LatticePolynomial {
    pub fn var(i: usize) -> Self {
        LatticePolynomial::Var(i)
    }

    pub fn meet(l: LatticePolynomial, r: LatticePolynomial) -> Self {
        LatticePolynomial::Meet(Box::new(l), Box::new(r))
    }

    pub fn join(l: LatticePolynomial, r: LatticePolynomial) -> Self {
        LatticePolynomial::Join(Box::new(l), Box::new(r))
    }

    /// One more than the largest variable index used.
    pub fn arity(&self) -> usize {
        match self {
            LatticePolynomial::Var(i) => i + 1,
            LatticePolynomial::Meet(l, r) | LatticePolynomial::Join(l, r) => l.arity().max(r.arity()),
        }
    }

    pub fn eval(&self, args: &[PreferenceRelation]) -> Result<PreferenceRelation> {
        match self {
            LatticePolynomial::Var(i) => {
                args.get(*i).cloned().ok_or(Error::UnboundVariable { index: *i, arity: args.len() })
            }
            LatticePolynomial::Meet(l, r) => l.eval(args)?.meet(&r.eval(args)?),
            LatticePolynomial::Join(l, r) => l.eval(args)?.join(&r.eval(args)?),
        }
    }
}

/// Message an agent sends, given its own relation and its estimate of the
/// receiver's relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MessageFn {
    /// Honest: send your own relation.
    Identity,
    /// Send your relation with every comparison reversed.
    Converse,
    /// Echo the receiver's relation back.
    Mirror,
}

impl MessageFn {
    pub fn apply(self, own: &PreferenceRelation, receiver: &PreferenceRelation) -> PreferenceRelation {
        match self {
            MessageFn::Identity => own.clone(),
            MessageFn::Converse => own.converse(),
            MessageFn::Mirror => receiver.clone(),
        }
    }

    /// Ignores the receiver.
    pub fn is_isotropic(self) -> bool {
        !matches!(self, MessageFn::Mirror)
    }

    pub fn name(self) -> &'static str {
        match self {
            MessageFn::Identity => "identity",
            MessageFn::Converse => "converse",
            MessageFn::Mirror => "mirror",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "identity" => Some(MessageFn::Identity),
            "converse" => Some(MessageFn::Converse),
            "mirror" => Some(MessageFn::Mirror),
            _ => None,
        }
    }
}

/// How an agent combines its prior relation with the aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpdateFn {
    Prior,
    Posterior,
    MeetUpdate,
    JoinUpdate,
}

impl UpdateFn {
    pub fn apply(self, prior: &PreferenceRelation, aggregate: &PreferenceRelation) -> Result<PreferenceRelation> {
        match self {
            UpdateFn::Prior => Ok(prior.clone()),
            UpdateFn::Posterior => Ok(aggregate.clone()),
            UpdateFn::MeetUpdate => prior.meet(aggregate),
            UpdateFn::JoinUpdate => prior.join(aggregate),
        }
    }

    /// The update as a polynomial in `(prior, aggregate) = (Var(0), Var(1))`.
    pub fn as_polynomial(self) -> LatticePolynomial {
        use LatticePolynomial as P;
        match self {
            UpdateFn::Prior => P::var(0),
            UpdateFn::Posterior => P::var(1),
            UpdateFn::MeetUpdate => P::meet(P::var(0), P::var(1)),
            UpdateFn::JoinUpdate => P::join(P::var(0), P::var(1)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UpdateFn::Prior => "prior",
            UpdateFn::Posterior => "posterior",
            UpdateFn::MeetUpdate => "meet",
            UpdateFn::JoinUpdate => "join",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "prior" => Some(UpdateFn::Prior),
            "posterior" => Some(UpdateFn::Posterior),
            "meet" => Some(UpdateFn::MeetUpdate),
            "join" => Some(UpdateFn::JoinUpdate),
            _ => None,
        }
    }
}

/// A validated `(r, n)` pair with `1 <= r <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MedianParams {
    r: usize,
    n: usize,
}

impl MedianParams {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::ThresholdOutOfRange { r, n });
        }
        Ok(MedianParams { r, n })
    }

    pub fn r(self) -> usize {
        self.r
    }

    pub fn n(self) -> usize {
        self.n
    }
}

fn common_alternatives(relations: &[PreferenceRelation]) -> Result<AlternativeSet> {
    let first = relations.first().ok_or(Error::EmptyInput)?;
    for p in &relations[1..] {
        first.relation().check_dim(p.relation())?;
    }
    Ok(first.alternatives())
}

/// Pairs held by at least `r` of the inputs.
fn supported_pairs(r: usize, relations: &[PreferenceRelation]) -> Result<Relation> {
    let alts = common_alternatives(relations)?;
    MedianParams::new(r, relations.len())?;
    let n = alts.size();
    let mut rows = vec![0u64; n];
    for (a, row) in rows.iter_mut().enumerate() {
        for b in 0..n {
            let count = relations.iter().filter(|p| p.prefers(a, b)).count();
            if count >= r {
                *row |= 1u64 << b;
            }
        }
    }
    Relation::from_rows(rows)
}

/// The r-median: the join, over all input subsets of size at least `r`, of
/// the meet of the subset.
///
/// A pair lies in some such meet iff at least `r` inputs hold it, so this
/// counts support per pair and closes once.
pub fn median(r: usize, relations: &[PreferenceRelation]) -> Result<PreferenceRelation> {
    let support = supported_pairs(r, relations)?;
    // r <= n, so every diagonal pair is supported; closure keeps it a preorder.
    Ok(crate::preorder::transitive_reflexive_closure(&support))
}

/// The r-median evaluated literally over all `2^n` subsets.
pub fn median_bruteforce(r: usize, relations: &[PreferenceRelation]) -> Result<PreferenceRelation> {
    let alts = common_alternatives(relations)?;
    let n = relations.len();
    if n > BRUTEFORCE_MAX_INPUTS {
        return Err(Error::Capacity { what: "median inputs", value: n, limit: BRUTEFORCE_MAX_INPUTS });
    }
    MedianParams::new(r, n)?;
    let mut meets = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if (mask.count_ones() as usize) < r {
            continue;
        }
        let subset: Vec<PreferenceRelation> =
            (0..n).filter(|m| mask >> m & 1 == 1).map(|m| relations[m].clone()).collect();
        meets.push(meet_many(alts, &subset)?);
    }
    join_many(alts, &meets)
}

/// Violations found by [`check_aggregation_axioms`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub tuples_checked: usize,
    pub permutations_checked: usize,
    /// Indices of tuples whose aggregate changed under some permutation.
    pub anonymity_violations: Vec<usize>,
    /// Indices of tuples whose constant version did not map to the constant.
    pub unanimity_violations: Vec<usize>,
    pub chains_checked: usize,
    /// Indices of chain tuples not returning the element at position n-r+1.
    pub chain_violations: Vec<usize>,
    /// Chains where the position-r element (the literal r-middle statement)
    /// differs from the result. Informational; nonzero is expected.
    pub chain_position_r_mismatches: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.anonymity_violations.is_empty() && self.unanimity_violations.is_empty() && self.chain_violations.is_empty()
    }
}

/// Sorts `tuple` into an ascending chain under inclusion, if it is one.
fn as_chain(tuple: &[PreferenceRelation]) -> Option<Vec<PreferenceRelation>> {
    let mut sorted = tuple.to_vec();
    sorted.sort_by_key(|p| p.relation().len());
    sorted.windows(2).all(|w| w[0].relation().is_subset(w[1].relation()).unwrap_or(false)).then_some(sorted)
}

/// Checks anonymity, unanimity and chain behaviour of an aggregation rule
/// with threshold `r` over the given tuples.
///
/// For tuples that form a chain `p1 ⪯ … ⪯ pn`, the expected aggregate is
/// the element at 1-based position `n - r + 1`: exactly the pairs held by at
/// least `r` of the inputs. The report also counts how often that differs
/// from position `r`.
pub fn check_aggregation_axioms<F, R>(
    aggregate: F,
    r: usize,
    tuples: &[Vec<PreferenceRelation>],
    permutations: usize,
    rng: &mut R,
) -> Result<AxiomReport>
where
    F: Fn(&[PreferenceRelation]) -> Result<PreferenceRelation>,
    R: Rng + ?Sized,
{
    let mut report = AxiomReport::default();
    for (idx, tuple) in tuples.iter().enumerate() {
        report.tuples_checked += 1;
        let base = aggregate(tuple)?;

        let mut shuffled = tuple.clone();
        for _ in 0..permutations {
            shuffled.shuffle(rng);
            report.permutations_checked += 1;
            if aggregate(&shuffled)? != base {
                report.anonymity_violations.push(idx);
                break;
            }
        }

        if let Some(first) = tuple.first() {
            let constant = vec![first.clone(); tuple.len()];
            if &aggregate(&constant)? != first {
                report.unanimity_violations.push(idx);
            }
        }

        if let Some(chain) = as_chain(tuple) {
            let n = chain.len();
            report.chains_checked += 1;
            if chain[n - r] != base {
                report.chain_violations.push(idx);
            }
            if chain[r - 1] != base {
                report.chain_position_r_mismatches += 1;
            }
        }
    }
    Ok(report)
}

/// Evidence that `a ≿ b` is in the r-median: a chain `a = c0, …, cℓ = b`
/// and for each step a coalition of at least `r` input indices all holding
/// that step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionWitness {
    pub chain: Vec<usize>,
    pub coalitions: Vec<Vec<usize>>,
}

pub fn coalition_witness(
    r: usize,
    relations: &[PreferenceRelation],
    a: usize,
    b: usize,
) -> Result<Option<CoalitionWitness>> {
    let support = supported_pairs(r, relations)?;
    let dim = support.dim();
    for i in [a, b] {
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, size: dim });
        }
    }
    Ok(shortest_path(&support, a, b).map(|chain| {
        let coalitions = chain
            .windows(2)
            .map(|w| (0..relations.len()).filter(|&j| relations[j].prefers(w[0], w[1])).collect())
            .collect();
        CoalitionWitness { chain, coalitions }
    }))
}
