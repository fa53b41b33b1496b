//! Alexander polynomials, torsion coefficients and genus.
//!
//! Torsion coefficients `t_i` and symmetric Alexander coefficients `a_i` are
//! related by `a_i = t_{i−1} − 2t_i + t_{i+1}` for `i > 0` and
//! `a_0 = 1 − 2Σ_{i>0} a_i`. Inverting under `t_i = 0` for `i >= deg` gives
//! `t_i = Σ_{j>=1} j·a_{i+j}`. All arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattices::{dot, ChangemakerVector};
use crate::slopes::gcd;

/// Finitely supported Laurent polynomial in `t`. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<(i64, i64)>", from = "Vec<(i64, i64)>")]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in pairs {
            *coeffs.entry(e).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Self { coeffs }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_pairs([(0, c)])
    }

    /// Symmetric polynomial with `a_i = a_{−i} = coeffs[i]`.
    pub fn symmetric(coeffs: &[i64]) -> Self {
        Self::from_pairs(
            coeffs.iter().enumerate().flat_map(|(i, &c)| {
                let i = i as i64;
                let mirror = (i > 0).then_some((-i, c));
                std::iter::once((i, c)).chain(mirror)
            }),
        )
    }

    pub fn coeff(&self, exponent: i64) -> i64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Sparse `(exponent, coefficient)` pairs, highest exponent first.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.coeffs.iter().rev().map(|(&e, &c)| (e, c)).collect()
    }
}

impl From<LaurentPoly> for Vec<(i64, i64)> {
    fn from(p: LaurentPoly) -> Self {
        p.terms()
    }
}

impl From<Vec<(i64, i64)>> for LaurentPoly {
    fn from(pairs: Vec<(i64, i64)>) -> Self {
        LaurentPoly::from_pairs(pairs)
    }
}

/// Renders e.g. `t^2-t+1-t^-1+t^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (mag, e) {
                (_, 0) => write!(f, "{sign}{mag}")?,
                (1, _) => write!(f, "{sign}{mono}")?,
                _ => write!(f, "{sign}{mag}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Torsion coefficients `t_0, …, t_H`; every `t_i` with `i > H` is zero.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct TorsionCoeffs {
    values: Vec<i64>,
}

impl TorsionCoeffs {
    pub fn new(values: Vec<i64>) -> Self {
        Self { values }
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values.get(i).copied().unwrap_or(0)
    }

    pub fn horizon(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    fn support(&self) -> &[i64] {
        let end = self.values.iter().rposition(|&t| t != 0).map_or(0, |i| i + 1);
        &self.values[..end]
    }
}

impl PartialEq for TorsionCoeffs {
    fn eq(&self, other: &Self) -> bool {
        self.support() == other.support()
    }
}

/// Positive torus knot `T_{r,s}` with `r > s >= 2` coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusKnot {
    r: i64,
    s: i64,
}

impl TorusKnot {
    /// Accepts the two parameters in either order.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let (r, s) = if a >= b { (a, b) } else { (b, a) };
        if s < 2 {
            return Err(Error::InvalidTorusKnot { r, s, reason: "parameters must be at least 2" });
        }
        if gcd(r, s) != 1 {
            return Err(Error::InvalidTorusKnot { r, s, reason: "parameters must be coprime" });
        }
        Ok(Self { r, s })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// All torus knots of the given genus, ordered by `(r, s)`.
    pub fn with_genus(g: i64) -> Vec<TorusKnot> {
        let mut out = Vec::new();
        // (r−1)(s−1) = 2g with r > s >= 2, so d = s − 1 satisfies d² < 2g
        let mut d = 1;
        while d * d < 2 * g {
            if (2 * g) % d == 0 {
                if let Ok(k) = TorusKnot::new(2 * g / d + 1, d + 1) {
                    out.push(k);
                }
            }
            d += 1;
        }
        out.sort();
        out
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.r, self.s)
    }
}

/// Characteristic vector: every coordinate odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicVector(Vec<i64>);

impl CharacteristicVector {
    pub fn new(coords: Vec<i64>) -> Option<Self> {
        coords.iter().all(|c| c.rem_euclid(2) == 1).then_some(Self(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

/// `Δ = (t^{rs}−1)(t−1) / ((t^r−1)(t^s−1))`, shifted to be symmetric.
pub fn torus_alexander(knot: TorusKnot) -> LaurentPoly {
    let (r, s) = (knot.r as usize, knot.s as usize);
    // numerator (t^{rs} − 1)(t − 1) = t^{rs+1} − t^{rs} − t + 1, low degree first
    let mut num = vec![0i64; r * s + 2];
    num[r * s + 1] += 1;
    num[r * s] -= 1;
    num[1] -= 1;
    num[0] += 1;
    let mut den = vec![0i64; r + s + 1];
    den[r + s] += 1;
    den[r] -= 1;
    den[s] -= 1;
    den[0] += 1;
    let quotient = monic_divide(&num, &den);
    let g = ((r - 1) * (s - 1) / 2) as i64;
    LaurentPoly::from_pairs(quotient.into_iter().enumerate().map(|(i, c)| (i as i64 - g, c)))
}

/// Exact division by a monic polynomial; coefficient vectors are low degree first.
fn monic_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "division not exact");
    q
}

pub fn torus_genus(knot: TorusKnot) -> i64 {
    (knot.r - 1) * (knot.s - 1) / 2
}

/// Genus of the `(m, k)`-cable of a companion of genus `g_companion`, for `k = 2`
/// and odd `m = 2h + 1`: `2·g_companion + h`.
pub fn cable_genus(m: i64, k: i64, g_companion: i64) -> Result<i64> {
    if k != 2 {
        return Err(Error::InvalidCable("only 2-cables are supported"));
    }
    if m.rem_euclid(2) != 1 || m < 1 {
        return Err(Error::InvalidCable("cable slope numerator must be odd and positive"));
    }
    if g_companion < 0 {
        return Err(Error::InvalidCable("companion genus must be nonnegative"));
    }
    Ok(2 * g_companion + (m - 1) / 2)
}

fn check_norm(sigma: &ChangemakerVector, p: i64) -> Result<()> {
    let norm = sigma.norm();
    if norm != p || p < 1 {
        return Err(Error::NormMismatch { sigma: sigma.coords().to_vec(), norm, p });
    }
    Ok(())
}

/// `2g = p − |σ|_1`.
pub fn genus_from_changemaker(sigma: &ChangemakerVector, p: i64) -> Result<i64> {
    check_norm(sigma, p)?;
    let diff = p - sigma.l1();
    if diff < 0 || diff % 2 != 0 {
        return Err(Error::GenusParity(diff));
    }
    Ok(diff / 2)
}

/// Largest odd coordinate magnitude tried per coordinate: `2p + 1`.
pub fn default_coordinate_bound(p: i64) -> i64 {
    2 * p + 1
}

/// Minimum of `‖𝔠‖²` over odd vectors with `|𝔠_j| <= bound` for every residue
/// `⟨𝔠, σ⟩ mod 2p`, plus the per-layer choices needed to rebuild a minimizer.
struct ResidueTable {
    modulus: usize,
    best: Vec<Option<i64>>,
    // choice[j][r] = coordinate value picked at layer j reaching residue r
    choice: Vec<Vec<i64>>,
}

fn residue_table(sigma: &[i64], p: i64, bound: i64) -> ResidueTable {
    let modulus = 2 * p as usize;
    let m = modulus as i64;
    let mut best: Vec<Option<i64>> = vec![None; modulus];
    best[0] = Some(0);
    let mut choice = Vec::with_capacity(sigma.len());
    for &s in sigma {
        // cheapest odd value for each residue c·s mod 2p
        let mut step: Vec<Option<(i64, i64)>> = vec![None; modulus];
        let mut c = -bound + (1 - bound.rem_euclid(2));
        while c <= bound {
            let r = (c * s).rem_euclid(m) as usize;
            let cost = c * c;
            if step[r].is_none_or(|(best_cost, _)| cost < best_cost) {
                step[r] = Some((cost, c));
            }
            c += 2;
        }
        let steps: Vec<(usize, i64, i64)> =
            step.iter().enumerate().filter_map(|(r, v)| v.map(|(cost, c)| (r, cost, c))).collect();
        let mut next: Vec<Option<i64>> = vec![None; modulus];
        let mut pick = vec![0i64; modulus];
        for (r0, cur) in best.iter().enumerate() {
            let Some(cur) = *cur else { continue };
            for &(dr, cost, c) in &steps {
                let r = (r0 + dr) % modulus;
                let total = cur + cost;
                if next[r].is_none_or(|b| total < b) {
                    next[r] = Some(total);
                    pick[r] = c;
                }
            }
        }
        best = next;
        choice.push(pick);
    }
    ResidueTable { modulus, best, choice }
}

fn target_residue(i: i64, p: i64) -> usize {
    (2 * i - p).rem_euclid(2 * p) as usize
}

/// Torsion coefficients `t_0..t_{⌊p/2⌋}` from a changemaker vector of norm `p`.
pub fn torsion_from_changemaker(sigma: &ChangemakerVector, p: i64) -> Result<TorsionCoeffs> {
    torsion_with_bound(sigma, p, default_coordinate_bound(p))
}

/// As [`torsion_from_changemaker`] with an explicit odd-coordinate bound.
pub fn torsion_with_bound(sigma: &ChangemakerVector, p: i64, bound: i64) -> Result<TorsionCoeffs> {
    check_norm(sigma, p)?;
    let dim = sigma.dim() as i64;
    let table = residue_table(sigma.coords(), p, bound);
    let values = (0..=p / 2)
        .map(|i| {
            let min = table.best[target_residue(i, p)]
                .expect("changemaker vectors contain a unit coordinate, so every residue of parity p is reachable");
            debug_assert_eq!((min - dim) % 8, 0);
            (min - dim) / 8
        })
        .collect();
    Ok(TorsionCoeffs::new(values))
}

/// A characteristic vector attaining `t_i`.
pub fn torsion_minimizer(sigma: &ChangemakerVector, p: i64, i: i64) -> Result<CharacteristicVector> {
    check_norm(sigma, p)?;
    let table = residue_table(sigma.coords(), p, default_coordinate_bound(p));
    let mut r = target_residue(i.clamp(0, p / 2), p);
    let mut coords = vec![0i64; sigma.dim()];
    for (j, &s) in sigma.coords().iter().enumerate().rev() {
        let c = table.choice[j][r];
        coords[j] = c;
        let dr = (c * s).rem_euclid(table.modulus as i64) as usize;
        r = (r + table.modulus - dr) % table.modulus;
    }
    debug_assert_eq!(r, 0);
    Ok(CharacteristicVector::new(coords).expect("odd coordinates"))
}

pub fn alexander_from_torsion(t: &TorsionCoeffs) -> LaurentPoly {
    let top = t.support().len() as i64 + 1;
    let get = |i: i64| if i < 0 { 0 } else { t.get(i as usize) };
    let mut coeffs = vec![0i64; top as usize + 1];
    for i in 1..=top {
        coeffs[i as usize] = get(i - 1) - 2 * get(i) + get(i + 1);
    }
    coeffs[0] = 1 - 2 * coeffs[1..].iter().sum::<i64>();
    LaurentPoly::symmetric(&coeffs)
}

pub fn torsion_from_alexander(poly: &LaurentPoly) -> Result<TorsionCoeffs> {
    if !poly.is_symmetric() {
        return Err(Error::AsymmetricPolynomial);
    }
    let deg = poly.degree();
    let values = (0..=deg.max(0))
        .map(|i| (1..=deg - i).map(|j| j * poly.coeff(i + j)).sum())
        .collect();
    Ok(TorsionCoeffs::new(values))
}

/// `⟨𝔠, σ⟩` for a characteristic vector.
pub fn pairing(c: &CharacteristicVector, sigma: &ChangemakerVector) -> i64 {
    dot(c.coords(), sigma.coords())
}
