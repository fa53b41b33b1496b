//! Slopes, degeneracy loci, negative continued fractions and lens spaces.
//!
//! Everything here is exact integer arithmetic. Slopes are stored reduced with a
//! positive denominator; the numerator carries the sign.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i64
}

/// A surgery slope `p/q` with `gcd(p, q) = 1` and `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Builds the reduced slope `p/q`. A negative denominator moves its sign to
    /// the numerator; `q = 0` is rejected (that is the meridian, not a surgery slope).
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidSlope { p, q, reason: "denominator is zero" });
        }
        if p == i64::MIN || q == i64::MIN {
            return Err(Error::Overflow);
        }
        let g = gcd(p, q);
        let sign = if q < 0 { -1 } else { 1 };
        Ok(Self { p: sign * p / g, q: sign * q / g })
    }

    pub fn integer(p: i64) -> Self {
        Self { p, q: 1 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Exact comparison of `p/q` against the integer `n`.
    pub fn cmp_int(&self, n: i64) -> Ordering {
        (self.p as i128).cmp(&(n as i128 * self.q as i128))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128))
    }
}

/// Parses `p` or `p/q`. Whitespace anywhere is rejected.
impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason| Error::InvalidSlope { p: 0, q: 0, reason };
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad("expected `p` or `p/q` without whitespace"));
        }
        let parse = |t: &str| {
            if t.starts_with('+') {
                return Err(bad("explicit `+` sign not accepted"));
            }
            t.parse::<i64>().map_err(|_| bad("not an integer"))
        };
        match s.split_once('/') {
            None => Ok(Slope::integer(parse(s)?)),
            Some((p, q)) => Slope::new(parse(p)?, parse(q)?),
        }
    }
}

/// Boundary data `m/n` of a lamination. Not necessarily reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegeneracyLocus {
    m: i64,
    n: i64,
}

impl DegeneracyLocus {
    /// `(m, n)` with `n < 0` is stored as `(-m, -n)`.
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::ZeroLocus);
        }
        if n < 0 {
            Ok(Self { m: -m, n: -n })
        } else {
            Ok(Self { m, n })
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Divides out `gcd(|m|, n)`; any `m/0` becomes `1/0`.
    pub fn reduced(&self) -> DegeneracyLocus {
        if self.n == 0 {
            return DegeneracyLocus { m: 1, n: 0 };
        }
        let g = gcd(self.m, self.n);
        DegeneracyLocus { m: self.m / g, n: self.n / g }
    }

    /// `gcd(|m|, n)`.
    pub fn multiplicity(&self) -> i64 {
        gcd(self.m, self.n)
    }
}

impl fmt::Display for DegeneracyLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// `Δ(m/n, p/q) = |p·n − q·m|`.
pub fn delta_distance(d: DegeneracyLocus, s: Slope) -> u64 {
    let v = s.p as i128 * d.n as i128 - s.q as i128 * d.m as i128;
    v.unsigned_abs() as u64
}

pub fn reduce_locus(d: DegeneracyLocus) -> DegeneracyLocus {
    d.reduced()
}

/// `L(p, q)`, oriented as `p/q` surgery on the unknot, stored with `1 <= q < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidLens { p, q, reason: "p must be at least 2" });
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidLens { p, q, reason: "p and q must be coprime" });
        }
        Ok(Self { p, q: q.rem_euclid(p) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The orientation reversal `L(p, p − q)`.
    pub fn mirror(&self) -> LensSpace {
        LensSpace { p: self.p, q: self.p - self.q }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LensRelation {
    OrientPreserving,
    OrientReversing,
    NotHomeomorphic,
}

/// Classical classification: `L(p,q) ≅ L(p,q')` preserving orientation iff
/// `q' ≡ q^{±1} (mod p)`, reversing iff `q' ≡ −q^{±1} (mod p)`.
pub fn lens_equiv(a: LensSpace, b: LensSpace) -> LensRelation {
    if a.p != b.p {
        return LensRelation::NotHomeomorphic;
    }
    let p = a.p as i128;
    let (q1, q2) = (a.q as i128, b.q as i128);
    let prod = (q1 * q2).rem_euclid(p);
    if q1 == q2 || prod == 1 % p {
        LensRelation::OrientPreserving
    } else if (q1 + q2).rem_euclid(p) == 0 || prod == (p - 1) {
        LensRelation::OrientReversing
    } else {
        LensRelation::NotHomeomorphic
    }
}

/// `[a_1, …, a_k]^- = a_1 − 1/(a_2 − 1/(… − 1/a_k))` with every `a_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NegContinuedFraction {
    terms: Vec<i64>,
}

impl NegContinuedFraction {
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() || terms.iter().any(|&a| a < 2) {
            return Err(Error::InvalidContinuedFraction);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for NegContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(i64::to_string).collect();
        write!(f, "[{}]^-", parts.join(","))
    }
}

/// Unique expansion of `p/q` (with `0 < q < p`, coprime) into a negative
/// continued fraction with all terms at least 2.
pub fn neg_cf_expand(p: i64, q: i64) -> Result<NegContinuedFraction> {
    if q <= 0 || q >= p || gcd(p, q) != 1 {
        return Err(Error::InvalidFractionInput { p, q });
    }
    let (mut num, mut den) = (p, q);
    let mut terms = Vec::new();
    while den != 0 {
        // ceiling division; num, den > 0
        let a = (num + den - 1) / den;
        terms.push(a);
        let rest = a * den - num;
        num = den;
        den = rest;
    }
    NegContinuedFraction::new(terms)
}

/// Evaluates the fraction to a reduced `(p, q)`.
pub fn neg_cf_eval(cf: &NegContinuedFraction) -> Result<(i64, i64)> {
    let mut it = cf.terms.iter().rev();
    let mut num = *it.next().ok_or(Error::InvalidContinuedFraction)?;
    let mut den = 1i64;
    for &a in it {
        let next = a
            .checked_mul(num)
            .and_then(|v| v.checked_sub(den))
            .ok_or(Error::Overflow)?;
        den = num;
        num = next;
    }
    Ok((num, den))
}
