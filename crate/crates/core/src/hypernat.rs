//! Hypernaturals: symbolic sequences of naturals compared almost everywhere.
//!
//! A [`HyperNat`] pairs a [`SeqNat`] with the [`Ultrafilter`] it is judged
//! against. Two hypernaturals are equal when the index set on which their
//! sequences agree is a member of the ultrafilter; order works the same way.
//! Because the sequences admit exact pointwise comparison, every order
//! question reduces to one exact `decide` call, and trichotomy is checked
//! rather than assumed.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::seq::SeqNat;
use crate::ultrafilter::Ultrafilter;

/// A hypernatural number: a symbolic sequence read modulo an ultrafilter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperNat {
    seq: SeqNat,
    filter: Ultrafilter,
}

impl HyperNat {
    #[must_use]
    pub fn new(seq: SeqNat, filter: Ultrafilter) -> HyperNat {
        HyperNat { seq, filter }
    }

    /// The image of a standard natural: a constant sequence.
    #[must_use]
    pub fn standard(value: u64, filter: Ultrafilter) -> HyperNat {
        HyperNat { seq: SeqNat::constant(value), filter }
    }

    #[must_use]
    pub fn seq(&self) -> &SeqNat {
        &self.seq
    }

    #[must_use]
    pub fn filter(&self) -> &Ultrafilter {
        &self.filter
    }

    fn require_same_filter(&self, other: &HyperNat) -> Result<()> {
        if self.filter != other.filter {
            return Err(Error::FilterMismatch);
        }
        Ok(())
    }

    /// Almost-everywhere comparison. Exactly one of the three pointwise
    /// classes is large; that class is the answer.
    pub fn compare(&self, other: &HyperNat) -> Result<Ordering> {
        self.require_same_filter(other)?;
        let cmp = self.seq.compare_pointwise(&other.seq)?;
        let less = self.filter.decide(&cmp.less)?.is_in();
        let equal = self.filter.decide(&cmp.equal)?.is_in();
        let greater = self.filter.decide(&cmp.greater)?.is_in();
        debug_assert_eq!(
            [less, equal, greater].iter().filter(|&&x| x).count(),
            1,
            "an ultrafilter picks exactly one class of a partition"
        );
        Ok(if less {
            Ordering::Less
        } else if greater {
            Ordering::Greater
        } else {
            Ordering::Equal
        })
    }

    /// Almost-everywhere equality.
    pub fn eq_ae(&self, other: &HyperNat) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Equal)
    }

    /// Almost-everywhere strict order.
    pub fn lt_ae(&self, other: &HyperNat) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    /// Almost-everywhere non-strict order.
    pub fn le_ae(&self, other: &HyperNat) -> Result<bool> {
        Ok(self.compare(other)? != Ordering::Greater)
    }

    pub fn add(&self, other: &HyperNat) -> Result<HyperNat> {
        self.require_same_filter(other)?;
        Ok(HyperNat { seq: self.seq.add(&other.seq)?, filter: self.filter.clone() })
    }

    pub fn mul(&self, other: &HyperNat) -> Result<HyperNat> {
        self.require_same_filter(other)?;
        Ok(HyperNat { seq: self.seq.mul(&other.seq)?, filter: self.filter.clone() })
    }

    /// Truncated subtraction, the natural-number difference.
    pub fn monus(&self, other: &HyperNat) -> Result<HyperNat> {
        self.require_same_filter(other)?;
        Ok(HyperNat { seq: self.seq.monus(&other.seq)?, filter: self.filter.clone() })
    }

    /// The standard natural this element equals almost everywhere, if any.
    ///
    /// A bounded sequence takes one of finitely many values; the residue
    /// classes of its period partition the indices, so the ultrafilter picks
    /// exactly one value. An unbounded polynomial takes each value finitely
    /// often, so it equals no standard natural.
    pub fn standard_value(&self) -> Result<Option<u64>> {
        let Some(candidates) = self.seq.bounded_values() else {
            return Ok(None);
        };
        // Probe each recurring value through its exact equality set; the
        // level sets partition a tail of the indices, so exactly one is
        // large.
        for v in candidates {
            let eq = self.seq.equal_set(&SeqNat::constant(v))?;
            if self.filter.decide(&eq)?.is_in() {
                return Ok(Some(v));
            }
        }
        unreachable!("a bounded sequence equals one of its values almost everywhere")
    }

    /// True when this element exceeds every standard natural almost
    /// everywhere.
    #[must_use]
    pub fn is_unlimited(&self) -> bool {
        !self.seq.is_bounded()
    }
}

impl std::fmt::Display for HyperNat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.seq)
    }
}
