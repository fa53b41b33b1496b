//! Exhaustive search for changemaker vectors whose orthogonal complement is a
//! given linear plumbing lattice.
//!
//! If `p`-surgery on a knot bounds the negative definite plumbing for `p/q`, the
//! knot's changemaker vector has norm `p` in `Z^{k+1}` (`k` = plumbing rank) and
//! its complement is isomorphic to the plumbing lattice. The pipeline enumerates
//! every changemaker vector of that norm and dimension, keeps the ones passing the
//! isomorphism test, and reads off genus and Alexander polynomial for each.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{
    alexander_from_torsion, genus_from_changemaker, torsion_from_changemaker, torus_alexander, LaurentPoly,
    TorsionCoeffs, TorusKnot,
};
use crate::lattices::{complement_basis, enumerate_changemakers_par, linear_plumbing_gram, ChangemakerVector, IsoTarget};
use crate::slopes::neg_cf_expand;

/// Depth of the search-tree prefix used to split changemaker enumeration.
const SPLIT_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationCandidate {
    pub sigma: ChangemakerVector,
    pub genus: i64,
    pub torsion: TorsionCoeffs,
    pub alexander: LaurentPoly,
    /// `T(r,s)`, `unknot` or `unidentified`.
    pub label: String,
    pub torus_knot: Option<TorusKnot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationReport {
    /// Set for the `L(4n+1, 4)` family.
    pub n: Option<i64>,
    pub p: i64,
    pub q: i64,
    pub plumbing: Vec<i64>,
    pub ambient_dim: usize,
    /// Changemaker vectors of norm `p` examined before the lattice filter.
    pub examined: usize,
    pub candidates: Vec<RealizationCandidate>,
}

impl RealizationReport {
    pub fn sigmas(&self) -> Vec<Vec<i64>> {
        self.candidates.iter().map(|c| c.sigma.coords().to_vec()).collect()
    }

    /// Aligned-column text table, one row per candidate.
    pub fn to_table(&self) -> String {
        let header = ["sigma", "genus", "alexander", "match"];
        let rows: Vec<[String; 4]> = self
            .candidates
            .iter()
            .map(|c| [c.sigma.to_string(), c.genus.to_string(), c.alexander.to_string(), c.label.clone()])
            .collect();
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let plumbing: Vec<String> = self.plumbing.iter().map(|w| format!("-{w}")).collect();
        let _ = writeln!(out, "p = {}, q = {}, plumbing [{}], ambient Z^{}", self.p, self.q, plumbing.join(","), self.ambient_dim);
        let _ = writeln!(out, "{} changemaker vectors examined, {} candidate(s)", self.examined, self.candidates.len());
        let line = |cells: [&str; 4]| {
            let padded: Vec<String> =
                cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(header));
        for row in &rows {
            let _ = writeln!(out, "{}", line([&row[0], &row[1], &row[2], &row[3]]));
        }
        out
    }
}

/// Candidates for `(4n+1)`-surgery yielding `L(4n+1, 4)`, labelled against
/// `T(2n+1, 2)` and `T(5, 4)`.
pub fn lens_realization_candidates(n: i64) -> Result<RealizationReport> {
    if n < 1 {
        return Err(Error::InvalidFractionInput { p: 4 * n + 1, q: n });
    }
    let p = 4 * n + 1;
    let mut knots = vec![TorusKnot::new(2 * n + 1, 2)?];
    knots.push(TorusKnot::new(5, 4)?);
    knots.dedup();
    let mut report = run_pipeline(p, n, n as usize + 1, |_| knots.clone())?;
    report.n = Some(n);
    Ok(report)
}

/// Same pipeline against the plumbing of `p/q`, labelling each candidate against
/// every torus knot of its genus.
pub fn general_realization(p: i64, q: i64, ambient_dim: usize) -> Result<RealizationReport> {
    run_pipeline(p, q, ambient_dim, TorusKnot::with_genus)
}

fn run_pipeline(
    p: i64,
    q: i64,
    ambient_dim: usize,
    knots_for_genus: impl Fn(i64) -> Vec<TorusKnot> + Sync,
) -> Result<RealizationReport> {
    let cf = neg_cf_expand(p, q)?;
    let expected = cf.len() + 1;
    if ambient_dim != expected {
        return Err(Error::DimensionMismatch { given: ambient_dim, expected });
    }
    let plumbing = cf.terms().to_vec();
    let target = IsoTarget::new(&linear_plumbing_gram(&plumbing)?)?;
    let all = enumerate_changemakers_par(p, ambient_dim, SPLIT_DEPTH);
    let examined = all.len();

    let survivors: Vec<ChangemakerVector> = all
        .into_par_iter()
        .map(|sigma| -> Result<Option<ChangemakerVector>> {
            let complement = complement_basis(sigma.coords())?;
            Ok(target.find_isomorphism(&complement)?.map(|_| sigma))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let candidates = survivors
        .into_iter()
        .map(|sigma| {
            let genus = genus_from_changemaker(&sigma, p)?;
            let torsion = torsion_from_changemaker(&sigma, p)?;
            let alexander = alexander_from_torsion(&torsion);
            let (label, torus_knot) = identify(&alexander, &knots_for_genus(genus));
            Ok(RealizationCandidate { sigma, genus, torsion, alexander, label, torus_knot })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(RealizationReport { n: None, p, q, plumbing, ambient_dim, examined, candidates })
}

fn identify(alexander: &LaurentPoly, knots: &[TorusKnot]) -> (String, Option<TorusKnot>) {
    if let Some(&k) = knots.iter().find(|&&k| torus_alexander(k) == *alexander) {
        return (k.to_string(), Some(k));
    }
    if *alexander == LaurentPoly::constant(1) {
        return ("unknot".to_string(), None);
    }
    ("unidentified".to_string(), None)
}
