//! Command-line front end for `weylcone`: loads an instance (a JSON file or
//! a builtin), runs one library operation and prints a JSON report.
//!
//! Exit codes: 0 on success (a report that finds a violation or an overlap
//! is still a success), 2 for unparseable input, 3 for an invalid instance
//! or unknown name, 4 when an enumeration limit is hit or the library
//! panics.

pub mod instance;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use weylcone::looijenga::{pi_xi, polyhedral_type_check, sample_translate_union, stabilizer_trivial, FacetSource};
use weylcone::roots::{builtin_list, CoxeterEntry, ValidationReport};
use weylcone::weyl::{growth_series, make_dominant, orbit, stratum, tile_check, Dominance, PivotRule};
use weylcone::{builtin, coxeter_matrix, IntVec, RationalCovector, RationalVector};

pub use instance::Instance;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("limit reached: {0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Limit(_) => 4,
        }
    }
}

impl From<weylcone::Error> for CliError {
    fn from(e: weylcone::Error) -> Self {
        use weylcone::Error as E;
        match e {
            E::RankMismatch { .. } | E::InvalidStepCap => CliError::Parse(e.to_string()),
            E::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "weylcone", version, about = "Exact root systems, Weyl groups and cones")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the parallel library paths (results do not
    /// depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// JSON instance file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Builtin instance name, see `weylcone builtin`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the root axioms.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Coxeter matrix of a valid system.
    Coxeter {
        #[command(flatten)]
        source: Source,
    },
    /// Number of new group elements per word length.
    Growth {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Orbit directions of a point, up to a word length.
    Orbit {
        #[command(flatten)]
        source: Source,
        /// Comma-separated rationals, e.g. `-1,3/2,0`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Reflect a point into the closed fundamental chamber.
    Dominant {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = weylcone::weyl::DEFAULT_STEP_CAP)]
        cap: usize,
        /// Functional that must decrease along the descent.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Pick violated walls at random (seeded) instead of lowest first.
        #[arg(long)]
        random_pivot: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Audit the translates of a cone for overlaps and coverage.
    Tile {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = instance::CHAMBER)]
        cone: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orbit-minimum cone of a functional under a group action.
    Pixi {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = instance::WEYL)]
        action: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the builtin instances.
    Builtin,
}

pub fn parse_rationals(text: &str, rank: usize) -> Result<Vec<BigRational>, CliError> {
    let out = text
        .split(',')
        .map(|t| BigRational::from_str(t.trim()).map_err(|e| CliError::Parse(format!("bad rational {t:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if out.len() != rank {
        return Err(CliError::Parse(format!("expected {rank} coordinates, got {}", out.len())));
    }
    Ok(out)
}

fn load(source: &Source) -> Result<(Instance, String), CliError> {
    match (&source.file, &source.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            Ok((Instance::parse(&text)?, format!("file:{}", path.display())))
        }
        (None, Some(name)) => Ok((Instance::from_root_system(&builtin(name)?)?, format!("builtin:{name}"))),
        (None, None) => Err(CliError::Parse("one of --file or --builtin is required".into())),
    }
}

fn q(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn qs(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn ints(v: &[num_bigint::BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|c| match i64::try_from(c) {
                Ok(n) => json!(n),
                Err(_) => json!(c.to_string()),
            })
            .collect(),
    )
}

fn int_rows(rows: &[IntVec]) -> Value {
    Value::Array(rows.iter().map(|r| ints(r)).collect())
}

/// Words are reported with generators numbered from 1.
fn word(w: &[usize]) -> Value {
    json!(w.iter().map(|i| i + 1).collect::<Vec<_>>())
}

/// Runs one command and returns the full report.
pub fn run(command: &Command) -> Result<Value, CliError> {
    let (name, source, args, seed) = match command {
        Command::Validate { source } => ("validate", Some(source), json!({}), 0),
        Command::Coxeter { source } => ("coxeter", Some(source), json!({}), 0),
        Command::Growth { source, depth } => ("growth", Some(source), json!({ "depth": depth }), 0),
        Command::Orbit { source, point, depth } => {
            ("orbit", Some(source), json!({ "point": point, "depth": depth }), 0)
        }
        Command::Dominant { source, point, cap, xi, random_pivot, seed } => (
            "dominant",
            Some(source),
            json!({ "point": point, "cap": cap, "xi": xi, "random_pivot": random_pivot }),
            *seed,
        ),
        Command::Tile { source, cone, depth, samples, seed } => {
            ("tile", Some(source), json!({ "cone": cone, "depth": depth, "samples": samples }), *seed)
        }
        Command::Pixi { source, action, xi, depth, samples, seed } => (
            "pixi",
            Some(source),
            json!({ "action": action, "xi": xi, "depth": depth, "samples": samples }),
            *seed,
        ),
        Command::Builtin => ("builtin", None, json!({}), 0),
    };
    let mut report = json!({ "command": name, "args": args });
    let inst = match source {
        Some(s) => {
            let (inst, origin) = load(s)?;
            report["instance"] = json!({ "source": origin, "digest": inst.digest() });
            Some(inst)
        }
        None => None,
    };
    report["seed"] = json!(seed);
    report["result"] = match (command, inst) {
        (Command::Builtin, _) => cmd_builtin(),
        (cmd, Some(inst)) => dispatch(cmd, &inst)?,
        (_, None) => unreachable!("every other command has a source"),
    };
    Ok(report)
}

fn dispatch(command: &Command, inst: &Instance) -> Result<Value, CliError> {
    match command {
        Command::Validate { .. } => cmd_validate(inst),
        Command::Coxeter { .. } => cmd_coxeter(inst),
        Command::Growth { depth, .. } => cmd_growth(inst, *depth),
        Command::Orbit { point, depth, .. } => cmd_orbit(inst, point, *depth),
        Command::Dominant { point, cap, xi, random_pivot, seed, .. } => {
            let pivot = if *random_pivot { PivotRule::Random(*seed) } else { PivotRule::Lowest };
            cmd_dominant(inst, point, *cap, xi.as_deref(), pivot)
        }
        Command::Tile { cone, depth, samples, seed, .. } => cmd_tile(inst, cone, *depth, *samples, *seed),
        Command::Pixi { action, xi, depth, samples, seed, .. } => cmd_pixi(inst, action, xi, *depth, *samples, *seed),
        Command::Builtin => Ok(cmd_builtin()),
    }
}

pub fn cmd_validate(inst: &Instance) -> Result<Value, CliError> {
    let rs = inst.root_system()?;
    let labels: Vec<&str> = rs.roots().iter().map(|r| r.label.as_str()).collect();
    let pairings: Vec<Value> = rs.pairing_table().iter().map(|row| qs(row)).collect();
    let violation = match rs.validate() {
        ValidationReport::Valid => Value::Null,
        ValidationReport::Invalid(v) => json!({
            "axiom": v.axiom.number(),
            "description": v.axiom.description(),
            "roots": v.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "values": qs(&v.values),
        }),
    };
    Ok(json!({
        "valid": violation.is_null(),
        "labels": labels,
        "pairings": pairings,
        "violation": violation,
    }))
}

pub fn cmd_coxeter(inst: &Instance) -> Result<Value, CliError> {
    let rs = inst.valid_root_system()?;
    let m = coxeter_matrix(&rs)?;
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|e| match e {
                        CoxeterEntry::Finite(k) => json!(k),
                        CoxeterEntry::Infinite => json!("inf"),
                    })
                    .collect(),
            )
        })
        .collect();
    let labels: Vec<&str> = rs.roots().iter().map(|r| r.label.as_str()).collect();
    Ok(json!({ "labels": labels, "matrix": rows }))
}

pub fn cmd_growth(inst: &Instance, depth: usize) -> Result<Value, CliError> {
    let rs = inst.valid_root_system()?;
    let growth = growth_series(&rs, depth)?;
    let total = 1 + growth.iter().sum::<usize>();
    let exhausted = growth.contains(&0);
    Ok(json!({ "depth": depth, "growth": growth, "ball_size": total, "exhausted": exhausted }))
}

pub fn cmd_orbit(inst: &Instance, point: &str, depth: usize) -> Result<Value, CliError> {
    let rs = inst.valid_root_system()?;
    let x = RationalVector::new(parse_rationals(point, inst.rank)?);
    let pts = orbit(&rs, &x, depth)?;
    Ok(json!({ "point": qs(x.coords()), "depth": depth, "size": pts.len(), "directions": int_rows(&pts) }))
}

pub fn cmd_dominant(
    inst: &Instance,
    point: &str,
    cap: usize,
    xi: Option<&str>,
    pivot: PivotRule,
) -> Result<Value, CliError> {
    let rs = inst.valid_root_system()?;
    let x = RationalVector::new(parse_rationals(point, inst.rank)?);
    let xi = xi.map(|s| parse_rationals(s, inst.rank).map(RationalCovector::new)).transpose()?;
    Ok(match make_dominant(&rs, &x, xi.as_ref(), cap, pivot)? {
        Dominance::Dominant { point, word: w } => {
            let tight = stratum(&rs, &point)?.roots.iter().map(|i| i + 1).collect::<Vec<_>>();
            json!({
                "status": "dominant",
                "point": qs(point.coords()),
                "word": word(&w),
                "steps": w.len(),
                "tight_roots": tight,
            })
        }
        Dominance::Undecided { steps, last } => json!({
            "status": "undecided",
            "steps": steps,
            "last": qs(last.coords()),
        }),
    })
}

pub fn cmd_tile(inst: &Instance, cone: &str, depth: usize, samples: usize, seed: u64) -> Result<Value, CliError> {
    let rs = inst.valid_root_system()?;
    let base = inst.cone(cone)?;
    let rep = tile_check(&rs, &base, depth, samples, seed)?;
    let overlaps: Vec<Value> = rep
        .overlap_witnesses
        .iter()
        .map(|w| json!({ "first": word(&w.first), "second": word(&w.second), "full_dimensional": w.full_dimensional }))
        .collect();
    let uncovered: Vec<Value> =
        rep.coverage.iter().filter(|c| c.word.is_none()).map(|c| qs(c.point.coords())).collect();
    Ok(json!({
        "cone": cone,
        "depth": depth,
        "translates": rep.translate_count,
        "base_in_chamber": rep.base_in_chamber,
        "overlaps": overlaps,
        "samples": rep.coverage.len(),
        "covered": rep.covered_count(),
        "uncovered": uncovered,
        "clean": rep.is_clean(),
    }))
}

pub fn cmd_pixi(
    inst: &Instance,
    action: &str,
    xi: &str,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<Value, CliError> {
    let act = inst.action(action)?;
    let xi = RationalCovector::new(parse_rationals(xi, inst.rank)?);
    let res = pi_xi(&act, &xi, depth)?;
    let trivial = stabilizer_trivial(&act, &xi, depth)?;
    let points = sample_translate_union(&act, act.cone(), 0, samples, seed)?;
    let cov = polyhedral_type_check(&act, &res.cone, depth, &points)?;
    let facets: Vec<Value> = res
        .active
        .iter()
        .map(|f| {
            let source = match &f.source {
                FacetSource::Word(w) => json!({ "word": word(w) }),
                FacetSource::Boundary => json!("boundary"),
            };
            json!({ "normal": ints(&f.normal), "source": source })
        })
        .collect();
    let uncovered: Vec<Value> = cov.failures().map(|p| qs(p.coords())).collect();
    Ok(json!({
        "action": action,
        "xi": qs(xi.coords()),
        "depth": depth,
        "preserves_cone": act.preservation_failures().is_empty(),
        "stabilized": res.stabilized,
        "stabilizer_trivial": trivial,
        "rays": int_rows(res.cone.rays()),
        "lineality": int_rows(res.cone.lineality()),
        "equations": int_rows(res.cone.equations()),
        "facets": facets,
        "coverage": { "samples": points.len(), "covered": points.len() - uncovered.len(), "uncovered": uncovered },
    }))
}

pub fn cmd_builtin() -> Value {
    let list: Vec<Value> =
        builtin_list().into_iter().map(|b| json!({ "name": b.name, "provenance": b.provenance })).collect();
    json!({ "builtins": list })
}
