//! Nonprincipal ultrafilters on the eventually periodic algebra.
//!
//! On that algebra an ultrafilter is determined by a single "profinite
//! point": a compatible chain of residues `r mod k!` for `k = 1..=depth`.
//! Intuitively the point is the limit the index runs toward; a periodic set
//! is large exactly when the point's residue lands in the set's residue
//! classes. Finite sets are never large and cofinite sets always are, so the
//! filter is nonprincipal, and finite exceptions on a set can never change a
//! decision.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index_set::{IndexSet, SetClass};

/// Default chain depth: residues are tracked modulo `1!..=12!`, which covers
/// every modulus up to 12 (and any other divisor of 12!).
pub const DEFAULT_DEPTH: u32 = 12;

/// Verdict of an ultrafilter on an [`IndexSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    /// The set is large: it contains almost every index.
    In,
    /// The complement is large.
    Out,
}

impl Membership {
    #[must_use]
    pub fn is_in(self) -> bool {
        matches!(self, Membership::In)
    }
}

/// A profinite point, i.e. an ultrafilter on the decidable fragment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ultrafilter {
    /// `residues[k - 1]` is the point's residue modulo `k!`.
    residues: Vec<u64>,
}

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product::<u64>().max(1)
}

impl Ultrafilter {
    /// The point converging to 0 along every factorial modulus: a periodic
    /// set is large iff it contains the class of 0.
    #[must_use]
    pub fn zero_point() -> Ultrafilter {
        Ultrafilter::from_limit(0)
    }

    /// The point converging to `c` in the profinite metric: `r mod k! = c mod
    /// k!` at every depth.
    #[must_use]
    pub fn from_limit(c: u64) -> Ultrafilter {
        let residues = (1..=DEFAULT_DEPTH).map(|k| c % factorial(k)).collect();
        Ultrafilter { residues }
    }

    /// Builds a point from an explicit residue chain `r mod 1!, r mod 2!,
    /// ...`; each entry must be in range and refine the previous one.
    pub fn from_residues(residues: Vec<u64>) -> Result<Ultrafilter> {
        if residues.is_empty() || residues.len() > 20 {
            return Err(Error::InvalidPoint(format!(
                "need between 1 and 20 factorial residues, got {}",
                residues.len()
            )));
        }
        for (i, &r) in residues.iter().enumerate() {
            let k = i as u32 + 1;
            if r >= factorial(k) {
                return Err(Error::InvalidPoint(format!("residue {r} is not below {k}!")));
            }
            if i > 0 && r % factorial(i as u32) != residues[i - 1] {
                return Err(Error::InvalidPoint(format!(
                    "residue {r} mod {i}! does not refine {}",
                    residues[i - 1]
                )));
            }
        }
        Ok(Ultrafilter { residues })
    }

    /// Depth of the chain; moduli must divide `depth!`.
    #[must_use]
    pub fn depth(&self) -> u32 {
        self.residues.len() as u32
    }

    /// The point's residue modulo `m`, defined whenever `m` divides `depth!`.
    pub fn residue_mod(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Err(Error::InvalidForm("modulus must be at least 1".into()));
        }
        let top = factorial(self.depth());
        if !top.is_multiple_of(m) {
            return Err(Error::ModulusOverflow { modulus: m, limit: self.depth() });
        }
        Ok(self.residues[self.residues.len() - 1] % m)
    }

    /// Decides whether `s` is large. Exceptions never matter: only the
    /// canonical periodic part of `s` is consulted.
    pub fn decide(&self, s: &IndexSet) -> Result<Membership> {
        match s.classify() {
            SetClass::Finite => Ok(Membership::Out),
            SetClass::Cofinite => Ok(Membership::In),
            SetClass::ProperPeriodic => {
                let r = self.residue_mod(s.modulus())?;
                Ok(if s.residues().contains(&r) { Membership::In } else { Membership::Out })
            }
        }
    }

    /// Convenience: `decide(s) == In`.
    pub fn holds(&self, s: &IndexSet) -> Result<bool> {
        Ok(self.decide(s)?.is_in())
    }
}

#[derive(Serialize, Deserialize)]
struct UltrafilterWire {
    factorial_residues: Vec<u64>,
}

impl Serialize for Ultrafilter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        UltrafilterWire { factorial_residues: self.residues.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ultrafilter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ultrafilter, D::Error> {
        let wire = UltrafilterWire::deserialize(d)?;
        Ultrafilter::from_residues(wire.factorial_residues).map_err(|e| D::Error::custom(e.to_string()))
    }
}
