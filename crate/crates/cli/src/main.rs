//! `knotsurg`: command-line front end for surgery classification, exceptional
//! surgery gates, changemaker realization and Alexander polynomials.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use knotsurg_core::invariants::{
    alexander_from_torsion, genus_from_changemaker, torsion_from_changemaker, TorusKnot,
};
use knotsurg_core::lattices::ChangemakerVector;
use knotsurg_core::realize::{general_realization, lens_realization_candidates, RealizationReport};
use knotsurg_core::slopes::{neg_cf_expand, Slope};
use knotsurg_core::surgery::{
    characterizing_bound, characterizing_gate, classify_torus_surgery, exceptional_gate, spherical_type,
    ExceptionalVerdict, MonodromyClass, SurgeryClass,
};

#[derive(Parser, Debug)]
#[command(name = "knotsurg", version, about = "Dehn surgery and changemaker lattice toolkit")]
struct Cli {
    /// Emit a single JSON envelope on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify p/q surgery on a torus knot.
    Classify(TorusSlope),
    /// Exceptional-surgery gate for a hyperbolic fibered knot.
    Gate(GateArgs),
    /// Changemaker realization for a lens-space surgery.
    Realize(RealizeArgs),
    /// Alexander polynomial from a changemaker vector.
    Alexander(AlexanderArgs),
    /// Check the characterizing-slope bound for a torus knot.
    Charslope(TorusSlope),
}

#[derive(Args, Debug, Serialize)]
struct TorusSlope {
    /// Torus knot parameters `r,s`.
    #[arg(long, value_parser = parse_torus)]
    #[serde(serialize_with = "ser_torus")]
    torus: TorusKnot,
    /// Slope `p` or `p/q`.
    #[arg(long, value_parser = parse_slope, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_display")]
    slope: Slope,
}

#[derive(Args, Debug, Serialize)]
struct GateArgs {
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    genus: i64,
    /// rv, lv or neither.
    #[arg(long)]
    monodromy: MonodromyClass,
    #[arg(long, value_parser = parse_slope, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_display")]
    slope: Slope,
    /// The surgery is known to be a small Seifert fibered L-space.
    #[arg(long = "lspace-smallsfs")]
    lspace_smallsfs: bool,
}

#[derive(Args, Debug, Serialize)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["n", "p"]))]
struct RealizeArgs {
    /// Realize L(4n+1, 4) as (4n+1)-surgery.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..), conflicts_with_all = ["p", "q"])]
    n: Option<i64>,
    /// Plumbing for p/q (requires --q).
    #[arg(long, requires = "q")]
    p: Option<i64>,
    #[arg(long, requires = "p")]
    q: Option<i64>,
}

#[derive(Args, Debug, Serialize)]
struct AlexanderArgs {
    /// Changemaker vector as a comma-separated list.
    #[arg(long, value_parser = parse_sigma)]
    #[serde(serialize_with = "ser_sigma")]
    sigma: ChangemakerVector,
    #[arg(long)]
    p: i64,
}

fn parse_torus(s: &str) -> Result<TorusKnot, String> {
    let (r, t) = s.split_once(',').ok_or("expected `r,s`")?;
    let r: i64 = r.parse().map_err(|_| format!("bad integer `{r}`"))?;
    let t: i64 = t.parse().map_err(|_| format!("bad integer `{t}`"))?;
    TorusKnot::new(r, t).map_err(|e| e.to_string())
}

fn parse_slope(s: &str) -> Result<Slope, String> {
    s.parse().map_err(|e: knotsurg_core::Error| e.to_string())
}

fn parse_sigma(s: &str) -> Result<ChangemakerVector, String> {
    let coords = s
        .split(',')
        .map(|t| t.parse::<i64>().map_err(|_| format!("bad integer `{t}`")))
        .collect::<Result<Vec<_>, _>>()?;
    ChangemakerVector::new(coords).map_err(|e| e.to_string())
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_torus<S: serde::Serializer>(k: &TorusKnot, s: S) -> Result<S::Ok, S::Error> {
    [k.r(), k.s()].serialize(s)
}

fn ser_sigma<S: serde::Serializer>(v: &ChangemakerVector, s: S) -> Result<S::Ok, S::Error> {
    v.coords().serialize(s)
}

/// A failed run: `Usage` maps to exit code 2, `Internal` to 1.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<knotsurg_core::Error> for Failure {
    fn from(e: knotsurg_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    inputs: Value,
    result: Value,
    text: String,
}

fn classify(args: &TorusSlope) -> Result<Outcome, Failure> {
    let class = classify_torus_surgery(args.torus, args.slope)?;
    let spherical = match class {
        SurgeryClass::Sfs { base } => Some(spherical_type(base)),
        _ => None,
    };
    let text = match spherical {
        Some(t) => format!("{class}, {t}"),
        None => class.to_string(),
    };
    Ok(Outcome {
        inputs: json!(args),
        result: json!({ "class": class, "spherical_type": spherical }),
        text,
    })
}

fn gate(args: &GateArgs) -> Result<Outcome, Failure> {
    let verdict = exceptional_gate(args.genus, args.monodromy, args.slope, args.lspace_smallsfs)?;
    let text = match verdict {
        ExceptionalVerdict::MustBeHyperbolic { witness: Some(w), min_delta } => {
            format!("MustBeHyperbolic (min delta {min_delta} at locus {w})")
        }
        ExceptionalVerdict::MustBeHyperbolic { witness: None, min_delta } => {
            format!("MustBeHyperbolic (slope 4g excluded for a small Seifert fibered L-space; min delta {min_delta})")
        }
        ExceptionalVerdict::PossiblyExceptional { witness, min_delta } => {
            format!("PossiblyExceptional (min delta {min_delta} at locus {witness})")
        }
    };
    Ok(Outcome { inputs: json!(args), result: json!(verdict), text })
}

fn realize(args: &RealizeArgs) -> Result<Outcome, Failure> {
    let report = match (args.n, args.p, args.q) {
        (Some(n), _, _) => lens_realization_candidates(n)?,
        (None, Some(p), Some(q)) => {
            let dim = neg_cf_expand(p, q)?.len() + 1;
            general_realization(p, q, dim)?
        }
        _ => return Err(Failure::Usage("give either --n or both --p and --q".into())),
    };
    check_report(&report)?;
    Ok(Outcome { inputs: json!(args), result: json!(report), text: report.to_table() })
}

fn check_report(report: &RealizationReport) -> Result<(), Failure> {
    for c in &report.candidates {
        if c.alexander.degree() != c.genus || c.sigma.norm() != report.p {
            return Err(Failure::Internal(format!("inconsistent candidate {}", c.sigma)));
        }
    }
    Ok(())
}

fn alexander(args: &AlexanderArgs) -> Result<Outcome, Failure> {
    let torsion = torsion_from_changemaker(&args.sigma, args.p)?;
    let poly = alexander_from_torsion(&torsion);
    let genus = genus_from_changemaker(&args.sigma, args.p)?;
    if poly.degree() != genus {
        return Err(Failure::Internal(format!("degree {} differs from genus {genus}", poly.degree())));
    }
    Ok(Outcome {
        inputs: json!(args),
        result: json!({
            "alexander": poly,
            "rendered": poly.to_string(),
            "torsion": torsion.values(),
            "genus": genus,
        }),
        text: poly.to_string(),
    })
}

fn charslope(args: &TorusSlope) -> Result<Outcome, Failure> {
    let bound = characterizing_bound(args.torus);
    let characterizing = characterizing_gate(args.torus, args.slope);
    let boundary = args.slope == Slope::integer(bound);
    let text = match (characterizing, boundary) {
        (true, true) => format!("characterizing, boundary case (bound {bound})"),
        (true, false) => format!("characterizing (bound {bound})"),
        (false, _) => format!("below bound (bound {bound})"),
    };
    Ok(Outcome {
        inputs: json!(args),
        result: json!({ "characterizing": characterizing, "bound": bound, "boundary": boundary }),
        text,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = match &cli.command {
        Command::Classify(a) => ("classify", classify(a)),
        Command::Gate(a) => ("gate", gate(a)),
        Command::Realize(a) => ("realize", realize(a)),
        Command::Alexander(a) => ("alexander", alexander(a)),
        Command::Charslope(a) => ("charslope", charslope(a)),
    };
    match outcome {
        Ok(out) if cli.json => {
            let envelope = json!({
                "command": name,
                "inputs": out.inputs,
                "result": out.result,
                "version": env!("CARGO_PKG_VERSION"),
            });
            println!("{envelope}");
            ExitCode::SUCCESS
        }
        Ok(out) => {
            println!("{}", out.text.trim_end());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
