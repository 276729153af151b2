use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skeinforge::determinant::{determinant, kauffman_det};
use skeinforge::fixtures::{FixtureSet, Manifest};
use skeinforge::grid::{configured_limit, grid_components, tilde_homology_with_limit, GridDiagram};
use skeinforge::heegaard::{self, CurveReplacement, SpecialHeegaardDiagram, Variant};
use skeinforge::homalg::TriangleFile;
use skeinforge::quasialt::{certify, verify_certificate, CertifyOutcome, QaCertificate};
use skeinforge::scorecard;
use skeinforge::skein::{corollary_check, triangle_rank_check, LinkRank};
use skeinforge::{CrossingRef, PlanarDiagram, ResolutionChoice};

#[derive(Parser)]
#[command(name = "skeinforge", version, about = "Knot diagram, grid homology and skein triangle checks")]
struct Cli {
    /// Print a readable summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of a PD code, with the Kauffman bracket oracle.
    Det { pd: PathBuf },
    /// Resolve one crossing of a PD code.
    Resolve {
        pd: PathBuf,
        #[arg(long)]
        crossing: usize,
        #[arg(long, value_enum)]
        choice: Choice,
        /// Apply Reidemeister I and II simplification afterwards.
        #[arg(long)]
        simplify: bool,
    },
    /// Quasi-alternating certificates.
    Qa {
        #[command(subcommand)]
        command: QaCommand,
    },
    /// Knot Floer homology rank from a grid diagram.
    Hfk { grid: PathBuf },
    /// Special Heegaard diagrams.
    Heegaard {
        #[command(subcommand)]
        command: HeegaardCommand,
    },
    /// F₂ chain complex checks.
    Homalg {
        #[command(subcommand)]
        command: HomalgCommand,
    },
    /// Rank consequences of the skein exact triangle.
    Skein {
        #[command(subcommand)]
        command: SkeinCommand,
    },
    /// Fixture listing and consistency checks.
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
    /// Run every acceptance check and print a scorecard.
    VerifyPaper {
        /// Fixture directory with a manifest.json; the bundled set by default.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Include wall-clock timings, which makes the output vary between runs.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Choice {
    Zero,
    One,
}

impl From<Choice> for ResolutionChoice {
    fn from(c: Choice) -> Self {
        match c {
            Choice::Zero => ResolutionChoice::Zero,
            Choice::One => ResolutionChoice::One,
        }
    }
}

#[derive(Subcommand)]
enum QaCommand {
    Certify {
        pd: PathBuf,
        #[arg(long, default_value_t = scorecard::QA_BUDGET)]
        budget: u64,
    },
    Verify {
        certificate: PathBuf,
    },
}

#[derive(Subcommand)]
enum HeegaardCommand {
    Build {
        pd: PathBuf,
        /// Distinguished edge; the lowest edge on the unbounded region by default.
        #[arg(long)]
        edge: Option<u32>,
        /// Ladybug edge, repeatable; one per uncovered component by default.
        #[arg(long = "mark")]
        marks: Vec<u32>,
        /// Replace the beta curve at this crossing.
        #[arg(long)]
        replace: Option<usize>,
        #[arg(long, value_enum, default_value = "gamma", requires = "replace")]
        variant: VariantArg,
    },
    Validate {
        diagram: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Gamma,
    Delta,
}

#[derive(Subcommand)]
enum HomalgCommand {
    CheckTriangle { triangle: PathBuf },
}

#[derive(Subcommand)]
enum SkeinCommand {
    Check {
        #[arg(long = "L", value_parser = parse_rank)]
        l: LinkRank,
        #[arg(long = "L0", value_parser = parse_rank)]
        l0: LinkRank,
        #[arg(long = "L1", value_parser = parse_rank)]
        l1: LinkRank,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    List {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    Check {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn parse_rank(s: &str) -> Result<LinkRank, String> {
    let (rank, l) = s.split_once(',').ok_or("expected rank,components")?;
    let rank = rank.trim().parse().map_err(|e| format!("rank: {e}"))?;
    let l = l.trim().parse().map_err(|e| format!("components: {e}"))?;
    Ok(LinkRank::new(rank, l))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_pd(path: &Path) -> Result<PlanarDiagram> {
    read(path)?.parse().with_context(|| format!("parsing {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_fixtures(dir: Option<&Path>) -> Result<FixtureSet> {
    Ok(match dir {
        Some(d) => Manifest::load_dir(d)?,
        None => FixtureSet::embedded(),
    })
}

/// Command output and whether every check in it passed.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Det { pd } => {
            let d = read_pd(&pd)?;
            let det = determinant(&d);
            let oracle = kauffman_det(&d)?;
            Ok(Outcome {
                value: json!({
                    "det": det,
                    "kauffman_det": oracle,
                    "agree": det == oracle,
                    "components": d.components(),
                    "crossings": d.crossing_count(),
                }),
                ok: det == oracle,
            })
        }
        Command::Resolve { pd, crossing, choice, simplify } => {
            let d = read_pd(&pd)?;
            let mut r = d.resolve(CrossingRef(crossing), choice.into())?;
            if simplify {
                r = r.simplify();
            }
            Ok(Outcome::ok(json!({
                "pd": r.to_string(),
                "crossings": r.crossing_count(),
                "components": r.components(),
                "det": determinant(&r),
            })))
        }
        Command::Qa { command: QaCommand::Certify { pd, budget } } => {
            let d = read_pd(&pd)?;
            let result = certify(&d, budget)?;
            let value = match &result.outcome {
                CertifyOutcome::Certified(c) => json!({
                    "status": "certified",
                    "expansions": result.expansions,
                    "nodes": c.node_count(),
                    "depth": c.depth(),
                    "certificate": c,
                }),
                CertifyOutcome::Unknown => json!({ "status": "unknown", "expansions": result.expansions }),
            };
            Ok(Outcome::ok(value))
        }
        Command::Qa { command: QaCommand::Verify { certificate } } => {
            let v: Value = read_json(&certificate)?;
            // accept both a bare certificate and the output of `qa certify`
            let cert: QaCertificate =
                serde_json::from_value(v.get("certificate").cloned().unwrap_or(v)).context("not a certificate")?;
            let verdict = verify_certificate(&cert);
            Ok(Outcome {
                ok: verdict.is_ok(),
                value: match verdict {
                    Ok(()) => json!({ "valid": true }),
                    Err(f) => json!({ "valid": false, "path": f.path, "reason": f.reason }),
                },
            })
        }
        Command::Hfk { grid } => {
            let g: GridDiagram = read(&grid)?.parse().with_context(|| format!("parsing {}", grid.display()))?;
            let limit = configured_limit();
            let h = tilde_homology_with_limit(&g, limit)?;
            let rank = h.hfk_rank()?;
            let det = h.det_from_chi()?;
            let l = grid_components(&g) as u32;
            let ranks: Vec<Value> = h
                .ranks
                .triples()
                .into_iter()
                .map(|(m, a, r)| json!({ "maslov": m, "alexander": a, "rank": r }))
                .collect();
            Ok(Outcome::ok(json!({
                "grid_size": h.n,
                "components": l,
                "generators": h.generators,
                "tilde_rank": h.ranks.total,
                "hfk_rank": rank,
                "det": det,
                "corollary": corollary_check(rank, l, det),
                "tilde_ranks": ranks,
            })))
        }
        Command::Heegaard { command: HeegaardCommand::Build { pd, edge, marks, replace, variant } } => {
            let d = read_pd(&pd)?;
            let e = match edge {
                Some(e) => e,
                None => heegaard::default_distinguished_edge(&d)?,
            };
            let marks = if marks.is_empty() { heegaard::default_marked_edges(&d, e) } else { marks };
            let mut h = heegaard::build(&d, &marks, e)?;
            if let Some(v) = replace {
                let variant = match variant {
                    VariantArg::Gamma => Variant::Gamma,
                    VariantArg::Delta => Variant::Delta,
                };
                h = heegaard::replace_for_resolution(&h, CurveReplacement { crossing: CrossingRef(v), variant })?;
            }
            let report = heegaard::validate(&h);
            Ok(Outcome { ok: report.passed(), value: serde_json::to_value(&h)? })
        }
        Command::Heegaard { command: HeegaardCommand::Validate { diagram } } => {
            let h: SpecialHeegaardDiagram = read_json(&diagram)?;
            let report = heegaard::validate(&h);
            Ok(Outcome {
                ok: report.passed(),
                value: json!({ "valid": report.passed(), "violations": report.violations, "counts": heegaard::Counts::of(&h) }),
            })
        }
        Command::Homalg { command: HomalgCommand::CheckTriangle { triangle } } => {
            let file: TriangleFile = read_json(&triangle)?;
            let (t, hs) = file.load()?;
            let exactness = t.check_exactness();
            let hypotheses = hs.map(|hs| t.check_hypotheses(&hs)).transpose()?;
            // when the hypotheses hold, exactness is what the lemma promises
            let ok = exactness.exact() || hypotheses.as_ref().is_some_and(|h| !h.passed());
            Ok(Outcome {
                ok,
                value: json!({
                    "exact": exactness.exact(),
                    "exactness": exactness,
                    "hypotheses": hypotheses.as_ref().map(|h| json!({
                        "condition_one": h.condition_one(),
                        "condition_two": h.condition_two(),
                        "passed": h.passed(),
                        "detail": h,
                    })),
                }),
            })
        }
        Command::Skein { command: SkeinCommand::Check { l, l0, l1 } } => {
            let r = triangle_rank_check(l, l0, l1)?;
            Ok(Outcome { ok: r.passed, value: serde_json::to_value(&r)? })
        }
        Command::Fixtures { command: FixturesCommand::List { dir } } => {
            let set = load_fixtures(dir.as_deref())?;
            let rows: Vec<Value> = set
                .iter()
                .map(|f| {
                    json!({
                        "name": f.name,
                        "has_pd": f.pd.is_some(),
                        "grid_size": f.grid.as_ref().map(GridDiagram::size),
                        "expected": f.expected,
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({ "fixtures": rows })))
        }
        Command::Fixtures { command: FixturesCommand::Check { dir } } => {
            let set = load_fixtures(dir.as_deref())?;
            let verdict = set.cross_check(configured_limit());
            Ok(Outcome {
                ok: verdict.is_ok(),
                value: json!({ "consistent": verdict.is_ok(), "error": verdict.err().map(|e| e.to_string()) }),
            })
        }
        Command::VerifyPaper { fixtures, timings } => {
            let set = load_fixtures(fixtures.as_deref())?;
            let card = scorecard::run(&set, configured_limit());
            let mut value = serde_json::to_value(&card)?;
            if !timings {
                strip_timings(&mut value);
            }
            Ok(Outcome { ok: card.passed, value })
        }
    }
}

const TIMING_KEYS: [&str; 3] = ["elapsed_ms", "shared_grid_ms", "ms"];

fn strip_timings(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.retain(|k, _| !TIMING_KEYS.contains(&k.as_str()));
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn human(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                human(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                human(v, &format!("{prefix}[{i}]"), out);
            }
        }
        scalar => out.push_str(&format!("{prefix}: {scalar}\n")),
    }
}

fn human_scorecard(value: &Value) -> Option<String> {
    let criteria = value.get("criteria")?.as_array()?;
    let mut out = String::new();
    for c in criteria {
        let verdict = if c["passed"] == json!(true) { "PASS" } else { "FAIL" };
        let name = c["name"].as_str()?;
        match c.get("elapsed_ms") {
            Some(ms) => out.push_str(&format!("{verdict}  {}. {name} ({ms} ms)\n", c["id"])),
            None => out.push_str(&format!("{verdict}  {}. {name}\n", c["id"])),
        }
    }
    let overall = if value["passed"] == json!(true) { "all criteria pass" } else { "some criteria fail" };
    out.push_str(overall);
    out.push('\n');
    Some(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let is_scorecard = matches!(cli.command, Command::VerifyPaper { .. });
    match run(cli.command) {
        Ok(outcome) => {
            if cli.human {
                let text = is_scorecard.then(|| human_scorecard(&outcome.value)).flatten().unwrap_or_else(|| {
                    let mut s = String::new();
                    human(&outcome.value, "", &mut s);
                    s
                });
                print!("{text}");
            } else {
                // serde_json maps are ordered by key, so output is deterministic
                println!("{}", serde_json::to_string_pretty(&outcome.value).expect("JSON value"));
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_arguments() {
        assert_eq!(parse_rank("3,1").unwrap(), LinkRank::new(3, 1));
        assert_eq!(parse_rank(" 4 , 2").unwrap(), LinkRank::new(4, 2));
        assert!(parse_rank("3").is_err());
        assert!(parse_rank("x,1").is_err());
    }

    #[test]
    fn human_flattens_nested_values() {
        let mut s = String::new();
        human(&json!({ "a": { "b": 1 }, "c": [1, 2], "d": [{ "e": true }] }), "", &mut s);
        assert_eq!(s, "a.b: 1\nc: [1, 2]\nd[0].e: true\n");
    }
}
