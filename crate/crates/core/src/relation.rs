//! Binary relations on a finite set of alternatives, stored as dense bit
//! matrices with one `u64` word per row.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported number of alternatives (one machine word per row).
pub const MAX_ALTERNATIVES: usize = 64;

/// The finite alternative set `{0, .., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlternativeSet {
    size: usize,
}

impl AlternativeSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ALTERNATIVES {
            return Err(Error::InvalidAlternatives { size, max: MAX_ALTERNATIVES });
        }
        Ok(AlternativeSet { size })
    }

    pub fn size(self) -> usize {
        self.size
    }
}

/// A binary relation on `0..dim`. Row `a`, bit `b` is set iff `(a, b)` is in
/// the relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    dim: usize,
    rows: Vec<u64>,
}

#[inline]
fn full_mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

impl Relation {
    pub fn empty(alts: AlternativeSet) -> Self {
        Relation { dim: alts.size, rows: vec![0; alts.size] }
    }

    pub fn full(alts: AlternativeSet) -> Self {
        Relation { dim: alts.size, rows: vec![full_mask(alts.size); alts.size] }
    }

    pub fn diagonal(alts: AlternativeSet) -> Self {
        let rows = (0..alts.size).map(|a| 1u64 << a).collect();
        Relation { dim: alts.size, rows }
    }

    /// Builds a relation from explicit pairs.
    pub fn from_pairs(alts: AlternativeSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = Relation::empty(alts);
        for &(a, b) in pairs {
            rel.insert(a, b)?;
        }
        Ok(rel)
    }

    /// Builds a relation from row bit masks; bits at or above `dim` are rejected.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let alts = AlternativeSet::new(rows.len())?;
        let mask = full_mask(alts.size);
        if let Some(a) = rows.iter().position(|r| r & !mask != 0) {
            return Err(Error::IndexOutOfRange { index: a, size: alts.size });
        }
        Ok(Relation { dim: alts.size, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alternatives(&self) -> AlternativeSet {
        AlternativeSet { size: self.dim }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, a: usize) -> u64 {
        self.rows[a]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            Err(Error::IndexOutOfRange { index: i, size: self.dim })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_dim(&self, other: &Relation) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        } else {
            Ok(())
        }
    }

    /// Membership test. Out-of-range indices are simply not members.
    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.dim && b < self.dim && self.rows[a] >> b & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_index(a)?;
        self.check_index(b)?;
        self.rows[a] |= 1u64 << b;
        Ok(())
    }

    pub fn remove(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_index(a)?;
        self.check_index(b)?;
        self.rows[a] &= !(1u64 << b);
        Ok(())
    }

    /// Number of pairs in the relation.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim).flat_map(move |a| (0..self.dim).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_dim(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(x, y)| x | y).collect();
        Ok(Relation { dim: self.dim, rows })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_dim(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(x, y)| x & y).collect();
        Ok(Relation { dim: self.dim, rows })
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(x, y)| x & !y == 0))
    }

    /// `{(a, b) : exists c, (a, c) in self and (c, b) in next}`, i.e. the
    /// boolean matrix product `self * next` (apply `self` first).
    pub fn compose(&self, next: &Relation) -> Result<Relation> {
        self.check_dim(next)?;
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut out = 0u64;
                let mut bits = row;
                while bits != 0 {
                    let c = bits.trailing_zeros() as usize;
                    out |= next.rows[c];
                    bits &= bits - 1;
                }
                out
            })
            .collect();
        Ok(Relation { dim: self.dim, rows })
    }

    pub fn transpose(&self) -> Relation {
        let mut rows = vec![0u64; self.dim];
        for (a, &row) in self.rows.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                rows[b] |= 1u64 << a;
                bits &= bits - 1;
            }
        }
        Relation { dim: self.dim, rows }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.dim).all(|a| self.contains(a, a))
    }

    pub fn is_transitive(&self) -> bool {
        // self ∘ self ⊆ self
        self.rows.iter().all(|&row| {
            let mut bits = row;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                if self.rows[c] & !row != 0 {
                    return false;
                }
                bits &= bits - 1;
            }
            true
        })
    }

    /// Smallest transitive relation containing `self` (Warshall, in place on
    /// a copy).
    pub fn transitive_closure(&self) -> Relation {
        let mut rows = self.rows.clone();
        for k in 0..self.dim {
            let via = rows[k];
            let bit = 1u64 << k;
            for row in rows.iter_mut() {
                if *row & bit != 0 {
                    *row |= via;
                }
            }
        }
        Relation { dim: self.dim, rows }
    }

    /// Adds the diagonal.
    pub fn with_diagonal(&self) -> Relation {
        let rows = self.rows.iter().enumerate().map(|(a, &r)| r | 1u64 << a).collect();
        Relation { dim: self.dim, rows }
    }

    /// Writes the canonical text form: `dim` lines of `dim` characters
    /// `'0'`/`'1'`, row-major, each line newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.dim * (self.dim + 1));
        for a in 0..self.dim {
            for b in 0..self.dim {
                s.push(if self.contains(a, b) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses a block of `'0'`/`'1'` lines. `first_line` is only used for
    /// error messages.
    pub(crate) fn parse_lines(lines: &[&str], first_line: usize) -> Result<Relation> {
        let dim = lines.len();
        let alts = AlternativeSet::new(dim).map_err(|e| Error::parse(first_line, e.to_string()))?;
        let mut rel = Relation::empty(alts);
        for (a, line) in lines.iter().enumerate() {
            let line = line.trim_end();
            if line.len() != dim {
                return Err(Error::parse(first_line + a, format!("expected {dim} characters, found {}", line.len())));
            }
            for (b, ch) in line.chars().enumerate() {
                match ch {
                    '1' => rel.rows[a] |= 1u64 << b,
                    '0' => {}
                    other => return Err(Error::parse(first_line + a, format!("unexpected character {other:?}"))),
                }
            }
        }
        Ok(rel)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).collect();
        Relation::parse_lines(&lines, 1)
    }
}
