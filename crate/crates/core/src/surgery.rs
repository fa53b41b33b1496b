//! Surgeries on torus knots, exceptional-surgery gates for hyperbolic fibered
//! knots, and characterizing-slope bounds for torus knots.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{torus_genus, TorusKnot};
use crate::slopes::{delta_distance, gcd, DegeneracyLocus, LensSpace, Slope};

/// Result of `p/q` surgery on a torus knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurgeryClass {
    /// Connected sum of two lens spaces.
    Reducible { pieces: [LensSpace; 2] },
    Lens { space: LensSpace },
    /// Seifert fibered over `S²(a, b, c)`.
    Sfs { base: [i64; 3] },
}

impl fmt::Display for SurgeryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryClass::Reducible { pieces: [a, b] } => write!(f, "Reducible {a}#{b}"),
            SurgeryClass::Lens { space } => write!(f, "Lens {space}"),
            SurgeryClass::Sfs { base: [a, b, c] } => write!(f, "SFS({a},{b},{c})"),
        }
    }
}

/// Moser's classification for `T_{r,s}`:
/// reducible at `p/q = rs`, the lens space `L(p, q·s²)` when `|p − qrs| = 1`,
/// otherwise Seifert fibered over `S²(r, s, |p − qrs|)`.
pub fn classify_torus_surgery(knot: TorusKnot, slope: Slope) -> Result<SurgeryClass> {
    let (r, s) = (knot.r(), knot.s());
    let (p, q) = (slope.p(), slope.q());
    let rs = r.checked_mul(s).ok_or(Error::Overflow)?;
    let excess = (p as i128 - q as i128 * rs as i128).unsigned_abs();
    match excess {
        0 => Ok(SurgeryClass::Reducible { pieces: [LensSpace::new(r, s)?, LensSpace::new(s, r)?] }),
        1 => {
            let pp = p.abs();
            let twist = (q as i128 * (s as i128 * s as i128)).rem_euclid(pp as i128) as i64;
            Ok(SurgeryClass::Lens { space: LensSpace::new(pp, twist)? })
        }
        c => Ok(SurgeryClass::Sfs { base: [r, s, i64::try_from(c).map_err(|_| Error::Overflow)?] }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphericalType {
    Cyclic,
    Prism,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    NotFinite,
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SphericalType::Cyclic => "Cyclic",
            SphericalType::Prism => "Prism",
            SphericalType::Tetrahedral => "Tetrahedral",
            SphericalType::Octahedral => "Octahedral",
            SphericalType::Icosahedral => "Icosahedral",
            SphericalType::NotFinite => "NotFinite",
        };
        f.write_str(s)
    }
}

/// Type of the finite fundamental group of an SFS over `S²(a, b, c)`, if finite.
pub fn spherical_type(base: [i64; 3]) -> SphericalType {
    let mut t = base;
    t.sort_unstable();
    match t {
        [1, _, _] => SphericalType::Cyclic,
        [2, 2, _] => SphericalType::Prism,
        [2, 3, 3] => SphericalType::Tetrahedral,
        [2, 3, 4] => SphericalType::Octahedral,
        [2, 3, 5] => SphericalType::Icosahedral,
        _ => SphericalType::NotFinite,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonodromyClass {
    RightVeering,
    LeftVeering,
    Neither,
}

impl std::str::FromStr for MonodromyClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rv" => Ok(MonodromyClass::RightVeering),
            "lv" => Ok(MonodromyClass::LeftVeering),
            "neither" => Ok(MonodromyClass::Neither),
            other => Err(format!("unknown monodromy class `{other}` (expected rv, lv or neither)")),
        }
    }
}

/// Degeneracy loci permitted for the stable lamination of a hyperbolic fibered
/// knot of genus `g`: `m/1` with `2 <= |m| <= 4g − 2` and sign given by the
/// veering direction, or `m/0` with `1 <= m <= 4g − 2` when neither.
pub fn allowed_degeneracy_loci(g: i64, mc: MonodromyClass) -> Result<Vec<DegeneracyLocus>> {
    if g < 1 {
        return Err(Error::InvalidGenus);
    }
    let top = 4 * g - 2;
    
    match mc {
        MonodromyClass::RightVeering => (2..=top).map(|m| DegeneracyLocus::new(m, 1)).collect(),
        MonodromyClass::LeftVeering => (2..=top).map(|m| DegeneracyLocus::new(-m, 1)).collect(),
        MonodromyClass::Neither => (1..=top).map(|m| DegeneracyLocus::new(m, 0)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ExceptionalVerdict {
    MustBeHyperbolic {
        /// Allowed locus closest to the slope; absent when the L-space refinement decided.
        witness: Option<DegeneracyLocus>,
        min_delta: u64,
    },
    PossiblyExceptional {
        witness: DegeneracyLocus,
        min_delta: u64,
    },
}

impl ExceptionalVerdict {
    pub fn must_be_hyperbolic(&self) -> bool {
        matches!(self, ExceptionalVerdict::MustBeHyperbolic { .. })
    }
}

/// Decides whether `p/q` surgery on a hyperbolic fibered knot of genus `g` with the
/// given monodromy class is forced to be hyperbolic.
///
/// Distance is measured to each allowed locus reduced to its degeneracy slope; a
/// minimum above 2 forces hyperbolicity. With `small_sfs_lspace` set the slope
/// `4g` is excluded for right-veering monodromy: there the surgery carries an
/// essential lamination, so a small Seifert fibered result would have a taut
/// foliation and could not be an L-space.
pub fn exceptional_gate(g: i64, mc: MonodromyClass, slope: Slope, small_sfs_lspace: bool) -> Result<ExceptionalVerdict> {
    let loci = allowed_degeneracy_loci(g, mc)?;
    let (witness, min_delta) = loci
        .iter()
        .map(|&d| (d, delta_distance(d.reduced(), slope)))
        .min_by_key(|&(_, delta)| delta)
        .expect("allowed loci are nonempty for g >= 1");
    if min_delta > 2 {
        return Ok(ExceptionalVerdict::MustBeHyperbolic { witness: Some(witness), min_delta });
    }
    if small_sfs_lspace && mc == MonodromyClass::RightVeering && slope == Slope::integer(4 * g) {
        return Ok(ExceptionalVerdict::MustBeHyperbolic { witness: None, min_delta });
    }
    Ok(ExceptionalVerdict::PossiblyExceptional { witness, min_delta })
}

/// `2(r−1)(s−1) + 4`, i.e. `4g(T_{r,s}) + 4`.
pub fn characterizing_bound(knot: TorusKnot) -> i64 {
    4 * torus_genus(knot) + 4
}

/// Whether `p/q >= 4g(T_{r,s}) + 4`, which makes `p/q` characterizing.
pub fn characterizing_gate(knot: TorusKnot, slope: Slope) -> bool {
    slope.cmp_int(characterizing_bound(knot)).is_ge()
}

/// Slope on the companion torus seen by `p/q` surgery on a satellite with
/// winding number `w`: `p/(q·w²)`.
pub fn satellite_slope_transfer(slope: Slope, w: i64) -> Result<Slope> {
    let p = slope.p();
    if w < 2 || gcd(p, w) != 1 {
        return Err(Error::InvalidWinding { p, w });
    }
    let den = w
        .checked_mul(w)
        .and_then(|w2| w2.checked_mul(slope.q()))
        .ok_or(Error::Overflow)?;
    Slope::new(p, den)
}

/// Whether `4h + 2 + 1/nn >= 4(2gL + h) + 4` holds, compared exactly. For a
/// `(2h+1, 2)`-cable of a companion with genus `gL >= 1` it never does.
pub fn cable_inequality_infeasible(h: i64, nn: i64, g_l: i64) -> Result<bool> {
    if nn == 0 {
        return Err(Error::InvalidCable("nn must be nonzero"));
    }
    if g_l < 1 || h < 0 {
        return Err(Error::InvalidCable("need h >= 0 and companion genus >= 1"));
    }
    // (4h+2)·nn + 1 vs (8gL + 4h + 4)·nn, after multiplying by nn (flipping if negative)
    let lhs = (4 * h + 2) as i128 * nn as i128 + 1;
    let rhs = (8 * g_l + 4 * h + 4) as i128 * nn as i128;
    Ok(if nn > 0 { lhs >= rhs } else { lhs <= rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(r: i64, s: i64) -> TorusKnot {
        TorusKnot::new(r, s).unwrap()
    }

    fn lens(p: i64, q: i64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn classify_examples() {
        for n in 1..=10 {
            let k = torus(2 * n + 1, 2);
            assert_eq!(
                classify_torus_surgery(k, Slope::integer(4 * n + 1)).unwrap(),
                SurgeryClass::Lens { space: lens(4 * n + 1, 4) }
            );
            for t in [0, 4] {
                assert_eq!(
                    classify_torus_surgery(k, Slope::integer(4 * n + t)).unwrap(),
                    SurgeryClass::Sfs { base: [2 * n + 1, 2, 2] }
                );
            }
        }
        assert_eq!(
            classify_torus_surgery(torus(5, 2), Slope::integer(13)).unwrap(),
            SurgeryClass::Sfs { base: [5, 2, 3] }
        );
        assert_eq!(
            classify_torus_surgery(torus(3, 2), Slope::integer(6)).unwrap(),
            SurgeryClass::Reducible { pieces: [lens(3, 2), lens(2, 1)] }
        );
        assert_eq!(
            classify_torus_surgery(torus(5, 4), Slope::integer(21)).unwrap(),
            SurgeryClass::Lens { space: lens(21, 16) }
        );
    }

    #[test]
    fn classify_non_integral() {
        // 13/2 on T(3,2): |13 − 12| = 1, L(13, 2·4)
        assert_eq!(
            classify_torus_surgery(torus(3, 2), Slope::new(13, 2).unwrap()).unwrap(),
            SurgeryClass::Lens { space: lens(13, 8) }
        );
        assert_eq!(
            classify_torus_surgery(torus(3, 2), Slope::new(1, 2).unwrap()).unwrap(),
            SurgeryClass::Sfs { base: [3, 2, 11] }
        );
        assert_eq!(
            classify_torus_surgery(torus(3, 2), Slope::integer(0)).unwrap(),
            SurgeryClass::Sfs { base: [3, 2, 6] }
        );
    }

    #[test]
    fn spherical_examples() {
        assert_eq!(spherical_type([5, 2, 3]), SphericalType::Icosahedral);
        assert_eq!(spherical_type([2, 2, 7]), SphericalType::Prism);
        assert_eq!(spherical_type([2, 3, 7]), SphericalType::NotFinite);
        assert_eq!(spherical_type([4, 3, 2]), SphericalType::Octahedral);
        assert_eq!(spherical_type([3, 2, 3]), SphericalType::Tetrahedral);
        assert_eq!(spherical_type([7, 1, 9]), SphericalType::Cyclic);
    }

    #[test]
    fn spherical_matches_finiteness() {
        for a in 1..=12i64 {
            for b in 1..=12 {
                for c in 1..=12 {
                    let finite = b * c + a * c + a * b > a * b * c;
                    assert_eq!(spherical_type([a, b, c]) != SphericalType::NotFinite, finite, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn loci_examples() {
        let rv = allowed_degeneracy_loci(3, MonodromyClass::RightVeering).unwrap();
        assert_eq!(rv, (2..=10).map(|m| DegeneracyLocus::new(m, 1).unwrap()).collect::<Vec<_>>());
        let g1 = allowed_degeneracy_loci(1, MonodromyClass::RightVeering).unwrap();
        assert_eq!(g1, vec![DegeneracyLocus::new(2, 1).unwrap()]);
        let neither = allowed_degeneracy_loci(2, MonodromyClass::Neither).unwrap();
        assert!(neither.iter().all(|d| d.reduced() == DegeneracyLocus::new(1, 0).unwrap()));
        assert_eq!(neither.len(), 6);
        let lv = allowed_degeneracy_loci(2, MonodromyClass::LeftVeering).unwrap();
        assert!(lv.iter().all(|d| d.n() == 1 && (-6..=-2).contains(&d.m())));
        assert_eq!(allowed_degeneracy_loci(0, MonodromyClass::Neither), Err(Error::InvalidGenus));
    }

    #[test]
    fn gate_examples() {
        use MonodromyClass::*;
        let v = exceptional_gate(3, RightVeering, Slope::integer(14), false).unwrap();
        assert_eq!(v, ExceptionalVerdict::MustBeHyperbolic { witness: Some(DegeneracyLocus::new(10, 1).unwrap()), min_delta: 4 });
        for n in 1..=20 {
            assert!(exceptional_gate(n, RightVeering, Slope::integer(4 * n + 1), false).unwrap().must_be_hyperbolic());
        }
        for p in -40..=40 {
            if let Ok(s) = Slope::new(p, 3) {
                if s.q() == 3 {
                    assert!(exceptional_gate(2, Neither, s, false).unwrap().must_be_hyperbolic());
                }
            }
        }
        let v = exceptional_gate(2, RightVeering, Slope::integer(5), false).unwrap();
        assert_eq!(v, ExceptionalVerdict::PossiblyExceptional { witness: DegeneracyLocus::new(5, 1).unwrap(), min_delta: 0 });
    }

    #[test]
    fn gate_lspace_refinement() {
        use MonodromyClass::*;
        for g in 1..=10 {
            let at = Slope::integer(4 * g);
            assert!(!exceptional_gate(g, RightVeering, at, false).unwrap().must_be_hyperbolic());
            assert!(exceptional_gate(g, RightVeering, at, true).unwrap().must_be_hyperbolic());
            // the flag only affects the slope 4g
            let below = Slope::integer(4 * g - 1);
            assert!(!exceptional_gate(g, RightVeering, below, true).unwrap().must_be_hyperbolic());
        }
    }

    #[test]
    fn characterizing_examples() {
        assert!(characterizing_gate(torus(5, 2), Slope::integer(13)));
        assert_eq!(characterizing_bound(torus(5, 2)), 12);
        assert!(!characterizing_gate(torus(11, 2), Slope::integer(21)));
        assert_eq!(characterizing_bound(torus(11, 2)), 24);
        assert!(characterizing_gate(torus(3, 2), Slope::integer(8)));
        assert!(!characterizing_gate(torus(3, 2), Slope::new(15, 2).unwrap()));
        assert!(characterizing_gate(torus(3, 2), Slope::new(17, 2).unwrap()));
    }

    #[test]
    fn satellite_examples() {
        assert_eq!(satellite_slope_transfer(Slope::integer(21), 2).unwrap(), Slope::new(21, 4).unwrap());
        assert_eq!(satellite_slope_transfer(Slope::integer(13), 3).unwrap(), Slope::new(13, 9).unwrap());
        assert!(satellite_slope_transfer(Slope::integer(4), 2).is_err());
        assert!(satellite_slope_transfer(Slope::integer(5), 1).is_err());
        let s = satellite_slope_transfer(Slope::new(7, 3).unwrap(), 2).unwrap();
        assert_eq!((s.p(), s.q()), (7, 12));
    }

    #[test]
    fn cable_inequality_examples() {
        assert!(!cable_inequality_infeasible(1, 1, 1).unwrap());
        assert!(!cable_inequality_infeasible(0, -1, 1).unwrap());
        assert!(!cable_inequality_infeasible(5, 1, 2).unwrap());
        assert!(cable_inequality_infeasible(0, 0, 1).is_err());
        assert!(cable_inequality_infeasible(0, 1, 0).is_err());
    }

    #[test]
    fn surgery_class_json() {
        let v = serde_json::to_value(SurgeryClass::Sfs { base: [5, 2, 3] }).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "sfs", "base": [5, 2, 3]}));
        let v = serde_json::to_value(SurgeryClass::Lens { space: lens(21, 16) }).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "lens", "space": {"p": 21, "q": 16}}));
    }
}
