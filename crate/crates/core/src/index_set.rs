//! Eventually periodic sets of natural numbers in canonical form.
//!
//! A set here is "periodic residues modulo `m`, with finitely many exceptions
//! either way": `n` is a member iff `n % m` lies in the residue set, unless
//! `n` is explicitly added or removed. Finite sets are the special case of an
//! empty residue set, cofinite sets the case of a full one. The family is
//! closed under union, intersection, and complement, and every set has one
//! canonical representation: minimal modulus, then minimal exception sets.
//! That canonicity is what makes ultrafilter membership decidable later on.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus boolean operations will produce before refusing; keeps
/// adversarial inputs from materializing astronomically long residue tables.
pub const MAX_MODULUS: u64 = 1 << 20;

/// Default modulus bound tried by [`IndexSet::from_predicate`].
pub const DEFAULT_CLASSIFY_MODULUS: u64 = 12;

/// Minimum observations required of every residue class during windowed
/// classification: a modulus `m` is only tried when `window >= 2 * m * QUORUM`.
pub const CLASSIFY_QUORUM: u64 = 2;

/// An eventually periodic subset of the naturals, always canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    modulus: u64,
    residues: BTreeSet<u64>,
    added: BTreeSet<u64>,
    removed: BTreeSet<u64>,
}

/// Coarse shape of an [`IndexSet`], as seen by the ultrafilter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetClass {
    Finite,
    Cofinite,
    ProperPeriodic,
}

impl IndexSet {
    /// The empty set.
    #[must_use]
    pub fn empty() -> IndexSet {
        IndexSet { modulus: 1, residues: BTreeSet::new(), added: BTreeSet::new(), removed: BTreeSet::new() }
    }

    /// All of the naturals.
    #[must_use]
    pub fn full() -> IndexSet {
        IndexSet {
            modulus: 1,
            residues: BTreeSet::from([0]),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    /// The finite set holding exactly `members`.
    #[must_use]
    pub fn finite(members: impl IntoIterator<Item = u64>) -> IndexSet {
        IndexSet {
            modulus: 1,
            residues: BTreeSet::new(),
            added: members.into_iter().collect(),
            removed: BTreeSet::new(),
        }
    }

    /// The cofinite set missing exactly `holes`.
    #[must_use]
    pub fn cofinite_without(holes: impl IntoIterator<Item = u64>) -> IndexSet {
        IndexSet {
            modulus: 1,
            residues: BTreeSet::from([0]),
            added: BTreeSet::new(),
            removed: holes.into_iter().collect(),
        }
    }

    /// The set `{ n : n % modulus in residues }`, canonicalized.
    pub fn periodic(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<IndexSet> {
        IndexSet::from_parts(modulus, residues, [], [])
    }

    /// Builds a set from all four fields, validating ranges and disjointness,
    /// then canonicalizes.
    pub fn from_parts(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        added: impl IntoIterator<Item = u64>,
        removed: impl IntoIterator<Item = u64>,
    ) -> Result<IndexSet> {
        if modulus == 0 {
            return Err(Error::InvalidForm("modulus must be at least 1".into()));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::ModulusOverflow { modulus, limit: crate::ultrafilter::DEFAULT_DEPTH });
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(Error::InvalidForm(format!("residue {r} outside 0..{modulus}")));
        }
        let added: BTreeSet<u64> = added.into_iter().collect();
        let removed: BTreeSet<u64> = removed.into_iter().collect();
        if let Some(&n) = added.intersection(&removed).next() {
            return Err(Error::InvalidForm(format!("index {n} both added and removed")));
        }
        Ok(Self::canonicalize(modulus, residues, added, removed))
    }

    /// Reduces to the minimal eventual period, then re-derives the minimal
    /// exception sets against it. The inputs may be redundant in any way.
    fn canonicalize(
        modulus: u64,
        residues: BTreeSet<u64>,
        added: BTreeSet<u64>,
        removed: BTreeSet<u64>,
    ) -> IndexSet {
        let member = |n: u64| {
            if added.contains(&n) {
                true
            } else if removed.contains(&n) {
                false
            } else {
                residues.contains(&(n % modulus))
            }
        };

        // Minimal eventual period divides every period of the residue
        // pattern, so it is the smallest divisor d of m under whose shift the
        // pattern is invariant.
        let min_period = divisors(modulus)
            .into_iter()
            .find(|&d| (0..modulus).all(|r| residues.contains(&r) == residues.contains(&((r + d) % modulus))))
            .expect("m divides itself");
        let reduced: BTreeSet<u64> = residues.iter().map(|r| r % min_period).collect();

        let mut min_added = BTreeSet::new();
        let mut min_removed = BTreeSet::new();
        for &n in added.iter().chain(removed.iter()) {
            let actual = member(n);
            let periodic = reduced.contains(&(n % min_period));
            if actual && !periodic {
                min_added.insert(n);
            } else if !actual && periodic {
                min_removed.insert(n);
            }
        }
        IndexSet { modulus: min_period, residues: reduced, added: min_added, removed: min_removed }
    }

    #[must_use]
    pub fn contains(&self, n: u64) -> bool {
        if self.added.contains(&n) {
            return true;
        }
        if self.removed.contains(&n) {
            return false;
        }
        self.residues.contains(&(n % self.modulus))
    }

    #[must_use]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[must_use]
    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    #[must_use]
    pub fn added(&self) -> &BTreeSet<u64> {
        &self.added
    }

    #[must_use]
    pub fn removed(&self) -> &BTreeSet<u64> {
        &self.removed
    }

    #[must_use]
    pub fn classify(&self) -> SetClass {
        if self.residues.is_empty() {
            SetClass::Finite
        } else if self.residues.len() as u64 == self.modulus {
            SetClass::Cofinite
        } else {
            SetClass::ProperPeriodic
        }
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.added.is_empty()
    }

    #[must_use]
    pub fn is_full(&self) -> bool {
        self.residues.len() as u64 == self.modulus && self.removed.is_empty()
    }

    /// Past this bound, membership is purely periodic.
    #[must_use]
    pub fn exception_bound(&self) -> u64 {
        self.added
            .iter()
            .chain(self.removed.iter())
            .max()
            .map(|&n| n + 1)
            .unwrap_or(0)
    }

    /// The members below `limit`, ascending.
    #[must_use]
    pub fn members_below(&self, limit: u64) -> Vec<u64> {
        (0..limit).filter(|&n| self.contains(n)).collect()
    }

    #[must_use]
    pub fn complement(&self) -> IndexSet {
        let flipped: BTreeSet<u64> = (0..self.modulus).filter(|r| !self.residues.contains(r)).collect();
        // Exceptions swap roles: an added member becomes a removed one.
        Self::canonicalize(self.modulus, flipped, self.removed.clone(), self.added.clone())
    }

    pub fn union(&self, other: &IndexSet) -> Result<IndexSet> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &IndexSet) -> Result<IndexSet> {
        self.combine(other, |a, b| a && b)
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &IndexSet) -> Result<IndexSet> {
        self.intersection(&other.complement())
    }

    fn combine(&self, other: &IndexSet, op: impl Fn(bool, bool) -> bool) -> Result<IndexSet> {
        let modulus = self.modulus.lcm(&other.modulus);
        if modulus > MAX_MODULUS {
            return Err(Error::ModulusOverflow { modulus, limit: crate::ultrafilter::DEFAULT_DEPTH });
        }
        let residues: BTreeSet<u64> = (0..modulus)
            .filter(|&r| {
                op(
                    self.residues.contains(&(r % self.modulus)),
                    other.residues.contains(&(r % other.modulus)),
                )
            })
            .collect();
        // Away from both exception sets the result is exactly the combined
        // periodic pattern, so only those positions can deviate.
        let mut added = BTreeSet::new();
        let mut removed = BTreeSet::new();
        let suspects = self
            .added
            .iter()
            .chain(self.removed.iter())
            .chain(other.added.iter())
            .chain(other.removed.iter());
        for &n in suspects {
            let actual = op(self.contains(n), other.contains(n));
            let periodic = residues.contains(&(n % modulus));
            if actual && !periodic {
                added.insert(n);
            } else if !actual && periodic {
                removed.insert(n);
            }
        }
        Ok(Self::canonicalize(modulus, residues, added, removed))
    }

    /// True iff every member of `self` belongs to `other`.
    pub fn is_subset_of(&self, other: &IndexSet) -> Result<bool> {
        Ok(self.minus(other)?.is_empty())
    }

    /// Forces the membership of one index, leaving the rest of the set alone.
    #[must_use]
    pub(crate) fn with_member(&self, n: u64, member: bool) -> IndexSet {
        let mut added = self.added.clone();
        let mut removed = self.removed.clone();
        added.remove(&n);
        removed.remove(&n);
        if member {
            added.insert(n);
        } else {
            removed.insert(n);
        }
        Self::canonicalize(self.modulus, self.residues.clone(), added, removed)
    }

    /// Drops every member below `start` (finitely many removals).
    #[must_use]
    pub(crate) fn without_prefix(&self, start: u64) -> IndexSet {
        let mut out = self.clone();
        for n in 0..start {
            out = out.with_member(n, false);
        }
        out
    }

    /// Evaluates `predicate` on `[0, window)` and classifies the outcome.
    #[must_use]
    pub fn from_predicate(
        window: u64,
        predicate: impl Fn(u64) -> bool,
        modulus_hint: Option<u64>,
    ) -> PredicateClass {
        let bits: Vec<bool> = (0..window).map(predicate).collect();
        Self::classify_window(&bits, modulus_hint)
    }

    /// Classifies a window of observations as an eventually periodic set.
    ///
    /// Tries moduli from 1 up to the hint (default
    /// [`DEFAULT_CLASSIFY_MODULUS`]), further capped so every residue class is
    /// observed at least `2 *` [`CLASSIFY_QUORUM`] times. Each class votes by
    /// majority; the first modulus whose pattern explains the window with at
    /// most `window / 8` exceptions wins. The result only describes the
    /// window — it is an empirical classification, not a proof — which is why
    /// callers must keep it tagged as such.
    #[must_use]
    pub fn classify_window(bits: &[bool], modulus_hint: Option<u64>) -> PredicateClass {
        let window = bits.len() as u64;
        let budget = window / 8;
        let cap = modulus_hint
            .unwrap_or(DEFAULT_CLASSIFY_MODULUS)
            .min(window / (2 * CLASSIFY_QUORUM))
            .max(1);
        for modulus in 1..=cap {
            let mut residues = BTreeSet::new();
            for r in 0..modulus {
                let ones = (r..window).step_by(modulus as usize).filter(|&n| bits[n as usize]).count();
                let total = (window - r).div_ceil(modulus);
                if 2 * ones as u64 > total {
                    residues.insert(r);
                }
            }
            let mismatch: Vec<u64> =
                (0..window).filter(|&n| bits[n as usize] != residues.contains(&(n % modulus))).collect();
            if mismatch.len() as u64 <= budget {
                let added = mismatch.iter().copied().filter(|&n| bits[n as usize]);
                let removed = mismatch.iter().copied().filter(|&n| !bits[n as usize]);
                let set = Self::canonicalize(
                    modulus,
                    residues,
                    added.collect(),
                    removed.collect(),
                );
                return PredicateClass::Empirical(set);
            }
        }
        PredicateClass::Undecided(bits.to_vec())
    }
}

/// Outcome of classifying an opaque per-index predicate over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateClass {
    /// The window matches an eventually periodic pattern. Empirical: the
    /// pattern is extrapolated from the window, not derived.
    Empirical(IndexSet),
    /// No supported pattern explains the window; the raw observations are
    /// returned instead.
    Undecided(Vec<bool>),
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{n % {} in {:?}}}", self.modulus, self.residues)?;
        if !self.added.is_empty() {
            write!(f, " + {:?}", self.added)?;
        }
        if !self.removed.is_empty() {
            write!(f, " - {:?}", self.removed)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct IndexSetWire {
    modulus: u64,
    residues: Vec<u64>,
    added: Vec<u64>,
    removed: Vec<u64>,
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IndexSetWire {
            modulus: self.modulus,
            residues: self.residues.iter().copied().collect(),
            added: self.added.iter().copied().collect(),
            removed: self.removed.iter().copied().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<IndexSet, D::Error> {
        let wire = IndexSetWire::deserialize(d)?;
        IndexSet::from_parts(wire.modulus, wire.residues, wire.added, wire.removed)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Divisors of `m` in ascending order.
fn divisors(m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}
