//! Symbolic sequences of naturals with exact pointwise analysis.
//!
//! A [`SeqNat`] is one of: an affine map `a n + b`, an integer-valued
//! quadratic, a periodic table, or any of those behind a finite prefix table.
//! The family is small on purpose — every question we need (where are two
//! sequences equal? what are the values mod k?) has an answer inside the
//! eventually periodic algebra of [`IndexSet`]s, computed exactly rather than
//! sampled.
//!
//! Quadratics are stored in the binomial basis `c0 + c1 n + c2 n(n-1)/2`
//! with integer coordinates. Every integer-valued quadratic — including ones
//! with half-integer monomial coefficients such as `m (m - 1) / 2` — has
//! exactly one such representation, which keeps products of affine maps and
//! triangular-number counts exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;

/// Bound on coefficient magnitudes and table entries; keeps every
/// intermediate product inside `i128` and float root estimates reliable.
pub const COEFF_CAP: i64 = 1 << 40;

/// Longest accepted periodic table.
pub const MAX_TABLE: usize = 512;

/// Longest accepted prefix, and the most exceptional indices a comparison may
/// enumerate before giving up.
pub const EXCEPTION_CAP: u64 = 1 << 16;

/// Integer-valued polynomial of degree at most 2 in the binomial basis:
/// `value(n) = c0 + c1 n + c2 n(n-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Poly {
    c0: i64,
    c1: i64,
    c2: i64,
}

impl Poly {
    const ZERO: Poly = Poly { c0: 0, c1: 0, c2: 0 };

    fn constant(c: i64) -> Poly {
        Poly { c0: c, c1: 0, c2: 0 }
    }

    fn checked(c0: i128, c1: i128, c2: i128) -> Result<Poly> {
        let cap = COEFF_CAP as i128;
        for c in [c0, c1, c2] {
            if c.abs() > cap {
                return Err(Error::FormOverflow(format!("coefficient {c} exceeds the supported magnitude")));
            }
        }
        Ok(Poly { c0: c0 as i64, c1: c1 as i64, c2: c2 as i64 })
    }

    fn eval(self, n: u64) -> i128 {
        let n = n as i128;
        self.c0 as i128 + self.c1 as i128 * n + self.c2 as i128 * n * (n - 1) / 2
    }

    fn degree(self) -> u32 {
        if self.c2 != 0 {
            2
        } else if self.c1 != 0 {
            1
        } else {
            0
        }
    }

    fn is_zero(self) -> bool {
        self == Poly::ZERO
    }

    fn add(self, other: Poly) -> Result<Poly> {
        Poly::checked(
            self.c0 as i128 + other.c0 as i128,
            self.c1 as i128 + other.c1 as i128,
            self.c2 as i128 + other.c2 as i128,
        )
    }

    fn sub(self, other: Poly) -> Result<Poly> {
        Poly::checked(
            self.c0 as i128 - other.c0 as i128,
            self.c1 as i128 - other.c1 as i128,
            self.c2 as i128 - other.c2 as i128,
        )
    }

    /// Exact product. The degrees must sum to at most 2; the result is then
    /// the unique quadratic through three interpolated points.
    fn mul(self, other: Poly) -> Result<Poly> {
        if self.degree() + other.degree() > 2 {
            return Err(Error::FormOverflow("product exceeds degree 2".into()));
        }
        let v: Vec<i128> = (0u64..3).map(|n| self.eval(n) * other.eval(n)).collect();
        Poly::checked(v[0], v[1] - v[0], v[2] - 2 * v[1] + v[0])
    }

    /// Sign of the values far to the right.
    fn eventual_sign(self) -> Ordering {
        for c in [self.c2, self.c1, self.c0] {
            match c.cmp(&0) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// For degree 2: an integer at or beyond the vertex, after which the
    /// values are monotone toward the eventual sign.
    fn vertex_ceil(self) -> u64 {
        debug_assert_eq!(self.degree(), 2);
        // d/dn [c0 + c1 n + c2 n(n-1)/2] = c1 + c2 (2n - 1)/2 = 0 at
        // n = 1/2 - c1/c2. Coefficients are capped, so the quotient is exact
        // to well under one unit.
        let num = self.c2 as f64 - 2.0 * self.c1 as f64;
        let den = 2.0 * self.c2 as f64;
        let v = num / den;
        if v <= 0.0 {
            0
        } else {
            v.ceil() as u64 + 1
        }
    }

    /// Smallest `N >= from` such that the sign of `eval(n)` is provably
    /// constant for all `n >= N`.
    fn sign_stable_from(self, from: u64) -> Result<u64> {
        let eventual = self.eventual_sign();
        match self.degree() {
            0 => Ok(from),
            1 => {
                // Monotone everywhere: exact integer crossing of zero.
                let ceil_div = |a: i128, b: i128| -> i128 {
                    debug_assert!(b > 0);
                    if a >= 0 { (a + b - 1) / b } else { -(-a / b) }
                };
                let (c0, c1) = (self.c0 as i128, self.c1 as i128);
                let cross = if c1 > 0 { ceil_div(-c0, c1) + 1 } else { ceil_div(c0, -c1) + 1 };
                Ok(from.max(cross.max(0) as u64))
            }
            _ => {
                // Estimate the larger real root, then verify: past the vertex
                // the values are monotone toward the eventual sign, so one
                // matching sample proves stability.
                let a = self.c2 as f64 / 2.0;
                let b = self.c1 as f64 - self.c2 as f64 / 2.0;
                let c = self.c0 as f64;
                let disc = b * b - 4.0 * a * c;
                let root_hint = if disc >= 0.0 {
                    let r1 = (-b + disc.sqrt()) / (2.0 * a);
                    let r2 = (-b - disc.sqrt()) / (2.0 * a);
                    r1.max(r2).max(0.0).ceil() as u64 + 2
                } else {
                    0
                };
                let mut n = from.max(self.vertex_ceil()).max(root_hint);
                let mut steps = 0u64;
                while self.eval(n).cmp(&0) != eventual {
                    n += 1;
                    steps += 1;
                    if steps > EXCEPTION_CAP {
                        return Err(Error::FormOverflow("sign stabilization out of reach".into()));
                    }
                }
                Ok(n)
            }
        }
    }

    /// Least value over all `n >= from`, exact.
    fn min_from(self, from: u64) -> i128 {
        match self.degree() {
            0 => self.c0 as i128,
            1 => {
                if self.c1 > 0 {
                    self.eval(from)
                } else {
                    // Decreasing without bound.
                    i128::MIN / 4
                }
            }
            _ => {
                if self.c2 < 0 {
                    return i128::MIN / 4;
                }
                // Upward parabola: minimum near the vertex, or at `from` if
                // the vertex lies to the left. Sample a safety margin.
                let v = self.vertex_ceil();
                (0..6)
                    .map(|i| from.max(v.saturating_sub(3)) + i)
                    .chain([from])
                    .map(|n| self.eval(n))
                    .min()
                    .expect("nonempty candidate set")
            }
        }
    }
}

/// The form behind the prefix: a polynomial or a periodic table, evaluated at
/// the absolute index.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Core {
    Poly(Poly),
    Periodic(Vec<u64>),
}

impl Core {
    fn eval(&self, n: u64) -> i128 {
        match self {
            Core::Poly(p) => p.eval(n),
            Core::Periodic(t) => t[(n % t.len() as u64) as usize] as i128,
        }
    }
}

/// A symbolic sequence of naturals: finite prefix table, then an affine map,
/// an integer-valued quadratic, or a periodic table. Always canonical: the
/// prefix is minimal, periodic tables have minimal period, constants collapse
/// to degree-0 polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqNat {
    prefix: Vec<u64>,
    core: Core,
}

/// Exact three-way pointwise comparison of two sequences: the index sets
/// where the left one is smaller, equal, and greater. The three sets
/// partition the naturals.
#[derive(Debug, Clone)]
pub struct PointwiseCmp {
    pub less: IndexSet,
    pub equal: IndexSet,
    pub greater: IndexSet,
}

impl SeqNat {
    /// The constant sequence `c`.
    #[must_use]
    pub fn constant(c: u64) -> SeqNat {
        assert!((c as i64) <= COEFF_CAP, "constant exceeds the supported magnitude");
        SeqNat { prefix: vec![], core: Core::Poly(Poly::constant(c as i64)) }
    }

    /// The sequence `n -> a n + b`.
    #[must_use]
    pub fn affine(a: u64, b: u64) -> SeqNat {
        assert!((a as i64) <= COEFF_CAP && (b as i64) <= COEFF_CAP, "coefficient exceeds cap");
        SeqNat { prefix: vec![], core: Core::Poly(Poly { c0: b as i64, c1: a as i64, c2: 0 }) }
            .canonical()
    }

    /// The sequence `n -> a n^2 + b n + c` with natural coefficients.
    #[must_use]
    pub fn poly2(a: u64, b: u64, c: u64) -> SeqNat {
        assert!(
            [a, b, c].iter().all(|&x| (x as i64) <= COEFF_CAP / 4),
            "coefficient exceeds cap"
        );
        // Monomial to binomial: n^2 = 2 C(n,2) + n.
        let p = Poly { c0: c as i64, c1: (a + b) as i64, c2: 2 * a as i64 };
        SeqNat { prefix: vec![], core: Core::Poly(p) }.canonical()
    }

    /// The sequence repeating `table` forever (`table[n % len]`).
    pub fn periodic(table: Vec<u64>) -> Result<SeqNat> {
        if table.is_empty() || table.len() > MAX_TABLE {
            return Err(Error::InvalidForm(format!(
                "periodic table length must be in 1..={MAX_TABLE}, got {}",
                table.len()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v as i128 > COEFF_CAP as i128) {
            return Err(Error::InvalidForm(format!("table entry {v} exceeds the supported magnitude")));
        }
        Ok(SeqNat { prefix: vec![], core: Core::Periodic(table) }.canonical())
    }

    /// Explicit values for `n < prefix.len()`, then `tail` evaluated at the
    /// absolute index. The tail must itself be prefix-free.
    pub fn table_with_tail(prefix: Vec<u64>, tail: SeqNat) -> Result<SeqNat> {
        if !tail.prefix.is_empty() {
            return Err(Error::InvalidForm("tail must be a base form, not another table".into()));
        }
        if prefix.len() as u64 > EXCEPTION_CAP {
            return Err(Error::InvalidForm("prefix too long".into()));
        }
        if let Some(&v) = prefix.iter().find(|&&v| v as i128 > COEFF_CAP as i128) {
            return Err(Error::InvalidForm(format!("prefix entry {v} exceeds the supported magnitude")));
        }
        let candidate = SeqNat { prefix, core: tail.core };
        candidate.validate_core_range()?;
        Ok(candidate.canonical())
    }

    /// Internal builder for possibly-signed polynomial cores behind a prefix.
    fn from_parts(prefix: Vec<u64>, core: Core) -> Result<SeqNat> {
        let candidate = SeqNat { prefix, core };
        candidate.validate_core_range()?;
        Ok(candidate.canonical())
    }

    /// The core must stay non-negative from the end of the prefix on.
    fn validate_core_range(&self) -> Result<()> {
        if let Core::Poly(p) = &self.core {
            if p.min_from(self.prefix.len() as u64) < 0 {
                return Err(Error::InvalidForm("sequence takes a negative value".into()));
            }
        }
        Ok(())
    }

    fn canonical(mut self) -> SeqNat {
        // Periodic: minimal period; a constant table is a constant poly.
        if let Core::Periodic(table) = &self.core {
            let m = table.len();
            let d = (1..=m)
                .find(|&d| m % d == 0 && (0..m).all(|i| table[i] == table[(i + d) % m]))
                .expect("m divides itself");
            if d == 1 {
                self.core = Core::Poly(Poly::constant(table[0] as i64));
            } else if d < m {
                self.core = Core::Periodic(table[..d].to_vec());
            }
        }
        // Prefix: drop trailing entries the core already produces.
        while let Some(&last) = self.prefix.last() {
            let n = self.prefix.len() as u64 - 1;
            if self.core.eval(n) == last as i128 {
                self.prefix.pop();
            } else {
                break;
            }
        }
        self
    }

    /// Value at index `n`.
    #[must_use]
    pub fn eval(&self, n: u64) -> u64 {
        let v = if (n as usize) < self.prefix.len() {
            self.prefix[n as usize] as i128
        } else {
            self.core.eval(n)
        };
        u64::try_from(v).expect("canonical sequences are non-negative")
    }

    /// Values on `[0, window)`.
    #[must_use]
    pub fn window(&self, window: u64) -> Vec<u64> {
        (0..window).map(|n| self.eval(n)).collect()
    }

    /// True when the value set is finite (periodic or constant core).
    #[must_use]
    pub fn is_bounded(&self) -> bool {
        match &self.core {
            Core::Periodic(_) => true,
            Core::Poly(p) => p.degree() == 0,
        }
    }

    /// The distinct values taken infinitely often, when bounded (prefix
    /// values are transient and excluded).
    #[must_use]
    pub fn bounded_values(&self) -> Option<Vec<u64>> {
        match &self.core {
            Core::Periodic(t) => {
                let set: BTreeSet<u64> = t.iter().copied().collect();
                Some(set.into_iter().collect())
            }
            Core::Poly(p) if p.degree() == 0 => Some(vec![p.c0 as u64]),
            Core::Poly(_) => None,
        }
    }

    /// Largest value ever attained, when bounded.
    #[must_use]
    pub fn bounded_max(&self) -> Option<u64> {
        let core_max = match &self.core {
            Core::Periodic(t) => *t.iter().max().expect("nonempty"),
            Core::Poly(p) if p.degree() == 0 => p.c0 as u64,
            Core::Poly(_) => return None,
        };
        Some(self.prefix.iter().copied().max().unwrap_or(0).max(core_max))
    }

    /// Least value over all indices.
    #[must_use]
    pub fn global_min(&self) -> u64 {
        let core_min = match &self.core {
            Core::Periodic(t) => *t.iter().min().expect("nonempty") as i128,
            Core::Poly(p) => p.min_from(self.prefix.len() as u64),
        };
        let core_min = u64::try_from(core_min).expect("canonical sequences are non-negative");
        self.prefix.iter().copied().min().unwrap_or(u64::MAX).min(core_min)
    }

    pub(crate) fn prefix_len(&self) -> u64 {
        self.prefix.len() as u64
    }

    /// Componentwise sum.
    pub fn add(&self, other: &SeqNat) -> Result<SeqNat> {
        self.combine(other, "sum", |a, b| a.add(b), |a, b| {
            a.checked_add(b).ok_or_else(|| Error::FormOverflow("sum exceeds the value range".into()))
        })
    }

    /// Componentwise product; fails when the degree leaves the family.
    pub fn mul(&self, other: &SeqNat) -> Result<SeqNat> {
        self.combine(other, "product", |a, b| a.mul(b), |a, b| {
            a.checked_mul(b)
                .ok_or_else(|| Error::FormOverflow("product exceeds the value range".into()))
        })
    }

    /// Componentwise truncated difference `max(self - other, 0)`.
    pub fn monus(&self, other: &SeqNat) -> Result<SeqNat> {
        let start = self.prefix_len().max(other.prefix_len());
        match (&self.core, &other.core) {
            (Core::Poly(pa), Core::Poly(pb)) => {
                let d = pa.sub(*pb)?;
                let stable = d.sign_stable_from(start)?;
                self.check_exception_span(start, stable)?;
                // The prefix covers every index where the difference could
                // clamp; past it the sign is fixed.
                let prefix: Vec<u64> =
                    (0..stable).map(|n| self.eval(n).saturating_sub(other.eval(n))).collect();
                let core = if d.eventual_sign() == Ordering::Less {
                    Core::Poly(Poly::ZERO)
                } else {
                    Core::Poly(d)
                };
                Ok(SeqNat { prefix, core }.canonical())
            }
            (Core::Periodic(_), Core::Periodic(_)) => {
                self.combine_periodic(other, |a, b| Ok(a.saturating_sub(b)))
            }
            (Core::Poly(p), Core::Periodic(_)) if p.degree() == 0 => {
                self.combine_periodic(other, |a, b| Ok(a.saturating_sub(b)))
            }
            (Core::Periodic(_), Core::Poly(p)) if p.degree() == 0 => {
                self.combine_periodic(other, |a, b| Ok(a.saturating_sub(b)))
            }
            (Core::Periodic(t), Core::Poly(p)) => {
                // A bounded sequence minus one growing without bound is
                // eventually zero.
                let ceiling = *t.iter().max().expect("nonempty") as i64;
                let gap = Poly::constant(ceiling).sub(*p)?;
                debug_assert_eq!(gap.eventual_sign(), Ordering::Less, "nonconstant naturals grow");
                let stable = gap.sign_stable_from(start)?;
                self.check_exception_span(start, stable)?;
                let prefix: Vec<u64> =
                    (0..stable).map(|n| self.eval(n).saturating_sub(other.eval(n))).collect();
                Ok(SeqNat { prefix, core: Core::Poly(Poly::ZERO) }.canonical())
            }
            (Core::Poly(_), Core::Periodic(_)) => Err(Error::FormOverflow(
                "difference of polynomial and periodic sequences leaves the family".into(),
            )),
        }
    }

    /// Shared shape of `add`/`mul`: combine prefixes pointwise and cores
    /// symbolically.
    fn combine(
        &self,
        other: &SeqNat,
        what: &str,
        poly_op: impl Fn(Poly, Poly) -> Result<Poly>,
        value_op: impl Fn(u64, u64) -> Result<u64> + Copy,
    ) -> Result<SeqNat> {
        let start = self.prefix_len().max(other.prefix_len());
        match (&self.core, &other.core) {
            (Core::Poly(pa), Core::Poly(pb)) => {
                let prefix: Vec<u64> = (0..start)
                    .map(|n| value_op(self.eval(n), other.eval(n)))
                    .collect::<Result<_>>()?;
                SeqNat::from_parts(prefix, Core::Poly(poly_op(*pa, *pb)?))
            }
            (Core::Periodic(_), Core::Periodic(_)) => self.combine_periodic(other, value_op),
            (Core::Poly(p), Core::Periodic(_)) | (Core::Periodic(_), Core::Poly(p)) => {
                if p.degree() == 0 {
                    self.combine_periodic(other, value_op)
                } else {
                    Err(Error::FormOverflow(format!(
                        "{what} of polynomial and periodic sequences leaves the family"
                    )))
                }
            }
        }
    }

    /// Combine two bounded sequences over the least common period. The table
    /// is phased to absolute indices using representatives beyond both
    /// prefixes.
    fn combine_periodic(
        &self,
        other: &SeqNat,
        value_op: impl Fn(u64, u64) -> Result<u64>,
    ) -> Result<SeqNat> {
        let table_len = |core: &Core| match core {
            Core::Periodic(t) => t.len() as u64,
            Core::Poly(_) => 1,
        };
        let period = table_len(&self.core).lcm(&table_len(&other.core));
        if period > MAX_TABLE as u64 {
            return Err(Error::FormOverflow("combined period too long".into()));
        }
        let start = self.prefix_len().max(other.prefix_len());
        let prefix: Vec<u64> = (0..start)
            .map(|n| value_op(self.eval(n), other.eval(n)))
            .collect::<Result<_>>()?;
        let mut table = vec![0u64; period as usize];
        for r in 0..period {
            // Smallest index at or beyond both prefixes in this class.
            let n = start + (period + r - start % period) % period;
            let a = u64::try_from(self.core.eval(n)).expect("non-negative beyond prefix");
            let b = u64::try_from(other.core.eval(n)).expect("non-negative beyond prefix");
            table[(n % period) as usize] = value_op(a, b)?;
        }
        if let Some(&v) = table.iter().find(|&&v| v as i128 > COEFF_CAP as i128) {
            return Err(Error::FormOverflow(format!(
                "table entry {v} exceeds the supported magnitude"
            )));
        }
        let core = SeqNat::periodic(table)?;
        Ok(SeqNat { prefix, core: core.core }.canonical())
    }

    fn check_exception_span(&self, from: u64, to: u64) -> Result<()> {
        if to.saturating_sub(from) > EXCEPTION_CAP {
            return Err(Error::FormOverflow("too many exceptional indices".into()));
        }
        Ok(())
    }

    /// Exact pointwise comparison; the three returned sets partition the
    /// naturals.
    pub fn compare_pointwise(&self, other: &SeqNat) -> Result<PointwiseCmp> {
        let start = self.prefix_len().max(other.prefix_len());
        let mut cmp = self.compare_cores(other, start)?;
        for n in 0..start {
            let o = self.eval(n).cmp(&other.eval(n));
            cmp.less = cmp.less.with_member(n, o == Ordering::Less);
            cmp.equal = cmp.equal.with_member(n, o == Ordering::Equal);
            cmp.greater = cmp.greater.with_member(n, o == Ordering::Greater);
        }
        debug_assert!({
            let u = cmp.less.union(&cmp.equal).unwrap().union(&cmp.greater).unwrap();
            u.is_full()
        });
        Ok(cmp)
    }

    /// Comparison of the cores from `start` on (prefixes handled by caller).
    fn compare_cores(&self, other: &SeqNat, start: u64) -> Result<PointwiseCmp> {
        let classify = |sets: [IndexSet; 3]| {
            let [less, equal, greater] = sets;
            PointwiseCmp { less, equal, greater }
        };
        match (&self.core, &other.core) {
            (Core::Poly(pa), Core::Poly(pb)) => {
                let d = pa.sub(*pb)?;
                if d.is_zero() {
                    return Ok(classify([
                        IndexSet::empty(),
                        IndexSet::full(),
                        IndexSet::empty(),
                    ]));
                }
                let stable = d.sign_stable_from(start)?;
                self.check_exception_span(start, stable)?;
                let eventual = d.eventual_sign();
                let mut sets = [vec![], vec![], vec![]];
                for n in start..stable {
                    let slot = match d.eval(n).cmp(&0) {
                        Ordering::Less => 0,
                        Ordering::Equal => 1,
                        Ordering::Greater => 2,
                    };
                    sets[slot].push(n);
                }
                let tail_slot = match eventual {
                    Ordering::Less => 0,
                    Ordering::Equal => unreachable!("nonzero difference"),
                    Ordering::Greater => 2,
                };
                let mut out = [IndexSet::empty(), IndexSet::empty(), IndexSet::empty()];
                for (slot, extras) in sets.into_iter().enumerate() {
                    let base = if slot == tail_slot {
                        IndexSet::cofinite_without(0..stable)
                    } else {
                        IndexSet::empty()
                    };
                    let mut s = base;
                    for n in extras {
                        s = s.with_member(n, true);
                    }
                    out[slot] = s;
                }
                Ok(classify(out))
            }
            (Core::Periodic(ta), Core::Periodic(tb)) => {
                self.compare_tables(ta, tb, start).map(classify)
            }
            (Core::Poly(p), Core::Periodic(t)) if p.degree() == 0 => {
                let table = vec![p.c0 as u64];
                self.compare_tables(&table, t, start).map(classify)
            }
            (Core::Periodic(t), Core::Poly(p)) if p.degree() == 0 => {
                let table = vec![p.c0 as u64];
                self.compare_tables(t, &table, start).map(classify)
            }
            (Core::Poly(p), Core::Periodic(t)) => {
                let sets = self.compare_poly_table(*p, t, start, false)?;
                Ok(classify(sets))
            }
            (Core::Periodic(t), Core::Poly(p)) => {
                let sets = self.compare_poly_table(*p, t, start, true)?;
                Ok(classify(sets))
            }
        }
    }

    fn compare_tables(&self, ta: &[u64], tb: &[u64], start: u64) -> Result<[IndexSet; 3]> {
        let period = (ta.len() as u64).lcm(&(tb.len() as u64));
        let mut residues = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
        for r in 0..period {
            let a = ta[(r % ta.len() as u64) as usize];
            let b = tb[(r % tb.len() as u64) as usize];
            let slot = match a.cmp(&b) {
                Ordering::Less => 0,
                Ordering::Equal => 1,
                Ordering::Greater => 2,
            };
            residues[slot].insert(r);
        }
        let mut out = [IndexSet::empty(), IndexSet::empty(), IndexSet::empty()];
        for (slot, rs) in residues.into_iter().enumerate() {
            // Indices below `start` are cleared here; the caller classifies
            // them pointwise.
            out[slot] = IndexSet::periodic(period, rs)?.without_prefix(start);
        }
        Ok(out)
    }

    /// Nonconstant polynomial vs periodic table: the polynomial eventually
    /// clears the table's range, so only finitely many indices need a look.
    fn compare_poly_table(
        &self,
        p: Poly,
        table: &[u64],
        start: u64,
        table_on_left: bool,
    ) -> Result<[IndexSet; 3]> {
        let ceiling = *table.iter().max().expect("nonempty") as i64;
        let gap = p.sub(Poly::constant(ceiling))?;
        debug_assert!(gap.eventual_sign() == Ordering::Greater, "nonconstant naturals grow");
        let stable = gap.sign_stable_from(start)?;
        self.check_exception_span(start, stable)?;
        let mut sets: [Vec<u64>; 3] = [vec![], vec![], vec![]];
        for n in start..stable {
            let poly_val = p.eval(n);
            let table_val = table[(n % table.len() as u64) as usize] as i128;
            let (a, b) = if table_on_left { (table_val, poly_val) } else { (poly_val, table_val) };
            let slot = match a.cmp(&b) {
                Ordering::Less => 0,
                Ordering::Equal => 1,
                Ordering::Greater => 2,
            };
            sets[slot].push(n);
        }
        // Beyond `stable` the polynomial side is strictly greater.
        let tail_slot = if table_on_left { 0 } else { 2 };
        let mut out = [IndexSet::empty(), IndexSet::empty(), IndexSet::empty()];
        for (slot, extras) in sets.into_iter().enumerate() {
            let mut s = if slot == tail_slot {
                IndexSet::cofinite_without(0..stable)
            } else {
                IndexSet::empty()
            };
            for n in extras {
                s = s.with_member(n, true);
            }
            out[slot] = s;
        }
        Ok(out)
    }

    /// The set of indices where the two sequences agree.
    pub fn equal_set(&self, other: &SeqNat) -> Result<IndexSet> {
        Ok(self.compare_pointwise(other)?.equal)
    }

    /// The set `{ n : eval(n) % modulus == residue }`, exact.
    pub fn residue_set(&self, modulus: u64, residue: u64) -> Result<IndexSet> {
        if modulus == 0 {
            return Err(Error::InvalidForm("modulus must be at least 1".into()));
        }
        let start = self.prefix_len();
        let base = match &self.core {
            Core::Periodic(t) => {
                let m = t.len() as u64;
                let rs = (0..m).filter(|&i| t[i as usize] % modulus == residue);
                IndexSet::periodic(m, rs)?
            }
            Core::Poly(p) => {
                // Values of an integer-valued quadratic repeat mod k with
                // period 2k: the binomial term shifts by a multiple of k.
                let period = if p.degree() == 2 { 2 * modulus } else { modulus };
                let mut rs = BTreeSet::new();
                for rho in 0..period {
                    // Representative at or beyond the prefix.
                    let n = start + (period + rho - start % period) % period;
                    let v = p.eval(n).rem_euclid(modulus as i128) as u64;
                    if v == residue {
                        rs.insert(n % period);
                    }
                }
                IndexSet::periodic(period, rs)?
            }
        };
        let mut out = base.without_prefix(start);
        for n in 0..start {
            out = out.with_member(n, self.eval(n) % modulus == residue);
        }
        Ok(out)
    }

    /// Exact division of every value by `k`, when the remainder is the same
    /// at every index beyond the prefix; `None` when the remainder varies.
    pub fn floor_div_const(&self, k: u64) -> Result<Option<SeqNat>> {
        if k == 0 {
            return Err(Error::InvalidForm("division by zero".into()));
        }
        let start = self.prefix_len();
        let prefix: Vec<u64> = (0..start).map(|n| self.eval(n) / k).collect();
        match &self.core {
            Core::Periodic(t) => {
                let table: Vec<u64> = t.iter().map(|v| v / k).collect();
                Ok(Some(SeqNat { prefix, core: Core::Periodic(table) }.canonical()))
            }
            Core::Poly(p) => {
                let r = p.eval(start).rem_euclid(k as i128) as u64;
                let whole = self.residue_set(k, r)?.without_prefix(start);
                if whole != IndexSet::full().without_prefix(start) {
                    return Ok(None);
                }
                // All coordinates of (p - r) are divisible by k, because the
                // binomial coordinates are integer combinations of values.
                let shifted = p.sub(Poly::constant(r as i64))?;
                debug_assert!(shifted.c0 % k as i64 == 0 && shifted.c1 % k as i64 == 0 && shifted.c2 % k as i64 == 0);
                let q = Poly {
                    c0: shifted.c0 / k as i64,
                    c1: shifted.c1 / k as i64,
                    c2: shifted.c2 / k as i64,
                };
                Ok(Some(SeqNat::from_parts(prefix, Core::Poly(q))?))
            }
        }
    }

    /// Componentwise minimum when it stays in the family: one sequence must
    /// dominate the other at all but finitely many indices.
    pub fn pointwise_min(&self, other: &SeqNat) -> Result<Option<SeqNat>> {
        let cmp = self.compare_pointwise(other)?;
        let (winner, loser, exceptional) = if cmp.greater.classify() == crate::index_set::SetClass::Finite {
            (self, other, cmp.greater)
        } else if cmp.less.classify() == crate::index_set::SetClass::Finite {
            (other, self, cmp.less)
        } else {
            return Ok(None);
        };
        let bound = exceptional.exception_bound().max(winner.prefix_len());
        let prefix: Vec<u64> = (0..bound)
            .map(|n| if exceptional.contains(n) { loser.eval(n) } else { winner.eval(n) })
            .collect();
        Ok(Some(SeqNat { prefix, core: winner.core.clone() }.canonical()))
    }

    /// Replaces the values at indices `0..values.len()`, keeping the rest.
    pub fn with_prefix_overrides(&self, values: &[u64]) -> Result<SeqNat> {
        if values.len() as u64 > EXCEPTION_CAP {
            return Err(Error::InvalidForm("prefix too long".into()));
        }
        if let Some(&v) = values.iter().find(|&&v| v as i128 > COEFF_CAP as i128) {
            return Err(Error::InvalidForm(format!("prefix entry {v} exceeds the supported magnitude")));
        }
        let mut prefix = values.to_vec();
        for n in values.len()..self.prefix.len() {
            prefix.push(self.prefix[n]);
        }
        // The core was valid beyond the old prefix, which the new one covers.
        Ok(SeqNat { prefix, core: self.core.clone() }.canonical())
    }

    /// The sequence that is `if_in` on members of `set` and `if_out` off it.
    pub fn indicator(set: &IndexSet, if_in: u64, if_out: u64) -> Result<SeqNat> {
        let m = set.modulus();
        let table: Vec<u64> =
            (0..m).map(|r| if set.residues().contains(&r) { if_in } else { if_out }).collect();
        let bound = set.exception_bound();
        let prefix: Vec<u64> =
            (0..bound).map(|n| if set.contains(n) { if_in } else { if_out }).collect();
        let core = SeqNat::periodic(table)?;
        SeqNat::table_with_tail(prefix, core)
    }

    /// Fits a window of values to a sequence form, preferring simpler shapes.
    /// The result reproduces the window exactly but only describes the window
    /// — callers must treat it as empirical.
    #[must_use]
    pub fn fit(values: &[u64]) -> Option<SeqNat> {
        if values.len() < 8 || values.iter().any(|&v| v as i128 > COEFF_CAP as i128) {
            return None;
        }
        // Allow a prefix of exceptional values before the pattern settles.
        for split in 0..=(values.len() / 2) {
            if let Some(core) = Self::fit_core(values, split as u64) {
                let prefix = values[..split].to_vec();
                if let Ok(fitted) = SeqNat::from_parts(prefix, core) {
                    if fitted.window(values.len() as u64) == values {
                        return Some(fitted);
                    }
                }
            }
        }
        None
    }

    /// Fits `values[split..]` as a prefix-free core at absolute indices.
    fn fit_core(values: &[u64], split: u64) -> Option<Core> {
        let tail = &values[split as usize..];
        if tail.len() < 6 {
            return None;
        }
        // Polynomial: constant second differences.
        let d1: Vec<i128> = tail.windows(2).map(|w| w[1] as i128 - w[0] as i128).collect();
        let d2: Vec<i128> = d1.windows(2).map(|w| w[1] - w[0]).collect();
        if d2.iter().all(|&d| d == d2[0]) {
            // Re-base the binomial coordinates from the split point to 0:
            // value(split + t) = v0 + d1 t + d2 C(t,2).
            let c2 = d2[0];
            let c1 = d1[0] - c2 * split as i128;
            let c0 = tail[0] as i128
                - c1 * split as i128
                - c2 * (split as i128) * (split as i128 - 1) / 2;
            if let Ok(p) = Poly::checked(c0, c1, c2) {
                if tail.iter().enumerate().all(|(t, &v)| p.eval(split + t as u64) == v as i128) {
                    return Some(Core::Poly(p));
                }
            }
        }
        // Periodic at absolute phase, at least three full periods observed.
        for m in 2..=(tail.len() / 3) {
            if (m..tail.len()).all(|i| tail[i] == tail[i - m]) {
                let mut table = vec![0u64; m];
                for (i, &v) in tail.iter().enumerate().take(m) {
                    table[(split as usize + i) % m] = v;
                }
                return Some(Core::Periodic(table));
            }
        }
        None
    }

    /// Short human-readable description of the form.
    #[must_use]
    pub fn describe(&self) -> String {
        format!("{self}")
    }

    fn core_to_value(&self) -> serde_json::Value {
        match &self.core {
            Core::Poly(p) if p.degree() <= 1 => serde_json::json!({
                "form": "affine", "a": p.c1, "b": p.c0,
            }),
            Core::Poly(p) => {
                // Binomial to monomial: a = c2/2, b = c1 - c2/2, c = c0.
                let half = |num: i64| -> serde_json::Value {
                    if num % 2 == 0 {
                        serde_json::json!(num / 2)
                    } else {
                        serde_json::json!(num as f64 / 2.0)
                    }
                };
                serde_json::json!({
                    "form": "poly2",
                    "a": half(p.c2),
                    "b": half(2 * p.c1 - p.c2),
                    "c": p.c0,
                })
            }
            Core::Periodic(t) => serde_json::json!({ "form": "periodic", "table": t }),
        }
    }

    fn to_value(&self) -> serde_json::Value {
        if self.prefix.is_empty() {
            self.core_to_value()
        } else {
            serde_json::json!({
                "form": "table_with_tail",
                "prefix": self.prefix,
                "tail": self.core_to_value(),
            })
        }
    }

    fn from_value(v: &serde_json::Value) -> Result<SeqNat> {
        let form = v
            .get("form")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::InvalidForm("missing form tag".into()))?;
        if form == "table_with_tail" {
            let prefix = Self::naturals_field(v, "prefix")?;
            if prefix.len() as u64 > EXCEPTION_CAP
                || prefix.iter().any(|&x| x as i128 > COEFF_CAP as i128)
            {
                return Err(Error::InvalidForm("prefix entry exceeds the supported range".into()));
            }
            let tail = v
                .get("tail")
                .ok_or_else(|| Error::InvalidForm("table_with_tail: missing tail".into()))?;
            // The tail may dip negative inside the prefix span; validity is
            // checked for the assembled sequence.
            SeqNat::from_parts(prefix, Self::core_from_value(tail)?)
        } else {
            SeqNat::from_parts(vec![], Self::core_from_value(v)?)
        }
    }

    fn naturals_field(v: &serde_json::Value, name: &str) -> Result<Vec<u64>> {
        v.get(name)
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::InvalidForm(format!("missing array field {name}")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .ok_or_else(|| Error::InvalidForm(format!("{name} entries must be naturals")))
            })
            .collect()
    }

    fn core_from_value(v: &serde_json::Value) -> Result<Core> {
        let form = v
            .get("form")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::InvalidForm("missing form tag".into()))?;
        match form {
            "affine" => {
                let int_field = |name: &str| -> Result<i64> {
                    v.get(name).and_then(|x| x.as_i64()).ok_or_else(|| {
                        Error::InvalidForm(format!("affine: field {name} must be an integer"))
                    })
                };
                let a = int_field("a")?;
                let b = int_field("b")?;
                if a.abs() > COEFF_CAP || b.abs() > COEFF_CAP {
                    return Err(Error::InvalidForm(
                        "coefficient exceeds the supported magnitude".into(),
                    ));
                }
                Ok(Core::Poly(Poly { c0: b, c1: a, c2: 0 }))
            }
            "poly2" => {
                // Monomial coefficients may be half-integers, but the values
                // must be integral at every index: 2a, a+b, and c integers.
                let num_field = |name: &str| -> Result<f64> {
                    v.get(name).and_then(|x| x.as_f64()).ok_or_else(|| {
                        Error::InvalidForm(format!("poly2: field {name} must be a number"))
                    })
                };
                let doubled = |name: &str| -> Result<i64> {
                    let x = num_field(name)?;
                    let d = 2.0 * x;
                    if d.fract() != 0.0 || d.abs() > (COEFF_CAP / 2) as f64 {
                        return Err(Error::InvalidForm(format!(
                            "poly2: coefficient {name}={x} must be a half-integer in range"
                        )));
                    }
                    Ok(d as i64)
                };
                let (a2, b2, c2) = (doubled("a")?, doubled("b")?, doubled("c")?);
                if (a2 + b2) % 2 != 0 || c2 % 2 != 0 {
                    return Err(Error::InvalidForm(
                        "poly2: values are not integers at every index".into(),
                    ));
                }
                Ok(Core::Poly(Poly { c0: c2 / 2, c1: (a2 + b2) / 2, c2: a2 }))
            }
            "periodic" => {
                let table = Self::naturals_field(v, "table")?;
                Ok(SeqNat::periodic(table)?.core)
            }
            other => Err(Error::InvalidForm(format!("unknown form {other:?}"))),
        }
    }
}

impl fmt::Display for SeqNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "table{:?}+", self.prefix)?;
        }
        match &self.core {
            Core::Poly(p) if p.degree() == 0 => write!(f, "constant({})", p.c0),
            Core::Poly(p) if p.degree() == 1 => write!(f, "affine({}, {})", p.c1, p.c0),
            Core::Poly(p) => write!(f, "quadratic(c2={}, c1={}, c0={})", p.c2, p.c1, p.c0),
            Core::Periodic(t) => write!(f, "periodic{t:?}"),
        }
    }
}

impl Serialize for SeqNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeqNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<SeqNat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        SeqNat::from_value(&v).map_err(|e| D::Error::custom(e.to_string()))
    }
}
