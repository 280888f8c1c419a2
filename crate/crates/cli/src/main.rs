use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pinwheel::algebra::expr::{parse, print};
use pinwheel::algebra::{adjoint, multiply, AlgebraElement, Generator};
use pinwheel::geometry::patch::{iterate_with, max_level, Patch};
use pinwheel::geometry::rule::{discover_rule, pinwheel_rule, verify_rule, SubstitutionRule};
use pinwheel::geometry::{find_decompositions, prototiles, to_svg, SvgOptions};
use pinwheel::ktheory::{nonsplit_certificate, KGroup, LimitElement};
use pinwheel::numerics::{RigidMotion, Rational, Vec2};
use pinwheel::tower::norm::norm_estimate_with;
use pinwheel::tower::{check_cover, psi, simplicity_stage};
use pinwheel::verify;
use pinwheel::Error;

#[derive(Parser)]
#[command(name = "pinwheel", version, about = "Exact pinwheel tilings, their groupoid algebra and K-theory")]
struct Cli {
    /// Largest substitution level to build (default: PINWHEEL_MAX_LEVEL or 10).
    #[arg(long, global = true)]
    max_level: Option<usize>,
    /// Substitution rule JSON to use instead of the built-in rule.
    #[arg(long, global = true)]
    rule: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for dissections of the inflated proto-tiles.
    Decompose {
        /// List every candidate dissection.
        #[arg(long, conflicts_with = "pinwheel")]
        all: bool,
        /// Write the pinwheel rule and a picture of one substitution step.
        #[arg(long)]
        pinwheel: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build the patch ω^N(p).
    Patch {
        #[arg(short = 'N', long = "level")]
        level: usize,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        root: u8,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Draw tile labels in the SVG.
        #[arg(long)]
        labels: bool,
    },
    /// Run property suites and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate algebra expressions, one per line of the file.
    Algebra {
        #[arg(long)]
        expr: PathBuf,
        #[arg(long)]
        action: Action,
        /// Minimum number of sample points for norms.
        #[arg(long, default_value_t = pinwheel::tower::norm::DEFAULT_GRID)]
        grid: usize,
    },
    /// Queries on the limit group, elements written N:(v1,v2).
    Ktheory {
        #[command(subcommand)]
        op: KOp,
    },
    /// Find the stage at which the label families cover the circle.
    Simplicity {
        /// Arc length as a fraction of the circle, e.g. 0.1 or 1/10.
        #[arg(long)]
        arc_length: String,
        #[arg(long, default_value = "0")]
        arc_start: String,
        #[arg(long, default_value = "e[0](0;,)")]
        generator: String,
        #[arg(long, default_value = "simplicity-certificate.json")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Geometry,
    Algebra,
    Tower,
    Ktheory,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Algebra => "algebra",
            Suite::Tower => "tower",
            Suite::Ktheory => "ktheory",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Action {
    Multiply,
    Adjoint,
    Norm,
}

#[derive(Subcommand)]
enum KOp {
    Eq { x: String, y: String },
    Add { x: String, y: String },
    Neg { x: String },
    Invariants { x: String },
    Nonsplit {
        #[arg(long, default_value_t = 15625)]
        bound: i64,
    },
}

type CmdResult = Result<bool, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn load_rule(cli: &Cli) -> Result<SubstitutionRule, String> {
    match &cli.rule {
        Some(p) => {
            let s = fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            let rule = SubstitutionRule::from_json(&s).map_err(err)?;
            if !verify_rule(&rule).all_pass() {
                return Err(format!("{} does not pass the rule checks", p.display()));
            }
            Ok(rule)
        }
        None => Ok(pinwheel_rule().clone()),
    }
}

/// ω(p_0) and ω(p_1) side by side.
fn substitution_page(rule: &SubstitutionRule) -> String {
    let mut page = Patch::proto(0).substitute_with(rule);
    let right = Patch::proto(1).substitute_with(rule).moved(&RigidMotion::translation(Vec2::ints(5, 0)));
    page.tiles.extend(right.tiles);
    to_svg(&page, &SvgOptions { labels: true, ..SvgOptions::default() })
}

fn decompose(all: bool, pinwheel: bool, out: &Path) -> CmdResult {
    if !all && !pinwheel {
        return Err("choose --all or --pinwheel".into());
    }
    if all {
        let mut lists = Vec::new();
        for p in prototiles() {
            let cands = find_decompositions(p);
            println!("p{}: {} candidate dissections", p.id, cands.len());
            let tiles: Vec<Vec<serde_json::Value>> = cands
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|t| {
                            serde_json::json!({
                                "proto": t.proto,
                                "angle": t.angle(),
                                "tx": t.pose.translation.x,
                                "ty": t.pose.translation.y,
                            })
                        })
                        .collect()
                })
                .collect();
            lists.push(serde_json::json!({ "proto": p.id, "candidates": tiles }));
        }
        let path = out.join("decompositions.json");
        write(&path, &serde_json::to_string_pretty(&lists).map_err(err)?)?;
        println!("wrote {}", path.display());
        return Ok(true);
    }
    let rule = discover_rule().map_err(err)?;
    let report = verify_rule(&rule);
    let rule_path = out.join("pinwheel_rule.json");
    let svg_path = out.join("substitution.svg");
    write(&rule_path, &rule.to_json())?;
    write(&svg_path, &substitution_page(&rule))?;
    let types: Vec<String> = (1..=5).map(|d| rule.child(0, d).proto.to_string()).collect();
    println!("child types of p0 by digit 1..5: ({})", types.join(","));
    println!("substitution matrix {:?}", rule.matrix());
    println!("wrote {} and {}", rule_path.display(), svg_path.display());
    if !report.all_pass() {
        eprintln!("rule checks failed: {}", serde_json::to_string(&report).map_err(err)?);
    }
    Ok(report.all_pass())
}

fn patch(cli: &Cli, level: usize, root: u8, svg: Option<&Path>, json: Option<&Path>, labels: bool) -> CmdResult {
    let rule = load_rule(cli)?;
    let limit = cli.max_level.unwrap_or_else(max_level);
    let p = iterate_with(&rule, root, level, limit).map_err(err)?;
    let [a, b] = p.type_counts();
    println!("{} tiles ({a} p0, {b} p1)", p.len());
    if let Some(path) = svg {
        write(path, &to_svg(&p, &SvgOptions { labels, ..SvgOptions::default() }))?;
    }
    if let Some(path) = json {
        write(path, &p.to_json())?;
    }
    Ok(true)
}

fn run_verify(suite: Suite, out: Option<&Path>) -> CmdResult {
    let report = verify::run(suite.name()).map_err(err)?;
    let json = report.to_json();
    println!("{json}");
    if let Some(path) = out {
        write(path, &json)?;
    }
    Ok(report.pass)
}

fn read_exprs(path: &Path) -> Result<Vec<AlgebraElement>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let e = parse(line).map_err(|e| match e {
            Error::Parse { pos, msg } => format!("line {}, column {}: {msg}\n  {line}\n  {}^", i + 1, pos + 1, " ".repeat(pos)),
            other => format!("line {}: {other}", i + 1),
        })?;
        out.push(e);
    }
    if out.is_empty() {
        return Err(format!("{} contains no expressions", path.display()));
    }
    Ok(out)
}

fn algebra(path: &Path, action: Action, grid: usize) -> CmdResult {
    let exprs = read_exprs(path)?;
    match action {
        Action::Multiply => {
            let mut acc = exprs[0].clone();
            for e in &exprs[1..] {
                acc = multiply(&acc, e).map_err(err)?;
            }
            println!("{}", print(&acc));
        }
        Action::Adjoint => {
            for e in &exprs {
                println!("{}", print(&adjoint(e)));
            }
        }
        Action::Norm => {
            for e in &exprs {
                let (lo, hi) = norm_estimate_with(&psi(e), grid);
                println!("[{lo:.12}, {hi:.12}]");
            }
        }
    }
    Ok(true)
}

fn element(s: &str) -> Result<LimitElement, String> {
    s.parse().map_err(|e| format!("'{s}': {e}"))
}

fn ktheory(op: &KOp) -> CmdResult {
    let g = KGroup::default();
    match op {
        KOp::Eq { x, y } => println!("{}", g.equal(&element(x)?, &element(y)?)),
        KOp::Add { x, y } => println!("{}", g.add(&element(x)?, &element(y)?)),
        KOp::Neg { x } => println!("{}", g.neg(&element(x)?)),
        KOp::Invariants { x } => {
            let x = element(x)?;
            let inv = g.invariants(&x);
            println!("{inv}");
            println!("canonical {}", g.canonical(&x));
        }
        KOp::Nonsplit { bound } => {
            let r = nonsplit_certificate(*bound).map_err(err)?;
            println!("{}", serde_json::to_string_pretty(&r).map_err(err)?);
            println!("certificate {}", if r.nonsplit { "pass" } else { "FAIL" });
            return Ok(r.nonsplit);
        }
    }
    Ok(true)
}

/// `0.1`, `1/10` or `1`.
fn fraction(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.contains('/') {
        return s.parse().map_err(|_| format!("invalid fraction '{s}'"));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let ok = !int.is_empty() || !frac.is_empty();
    if !ok || !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
        return Err(format!("invalid number '{s}'"));
    }
    let den = 10i64.pow(frac.len() as u32);
    let num: i64 = format!("{int}{frac}").parse().map_err(|_| format!("invalid number '{s}'"))?;
    Ok(Rational::new(num, den))
}

fn simplicity(length: &str, start: &str, generator: &str, out: &Path) -> CmdResult {
    let length = fraction(length)?;
    let start = fraction(start)?;
    let g = parse(generator).map_err(|e| format!("generator: {e}"))?;
    let terms: Vec<&Generator> = g.terms.keys().collect();
    let [gen] = terms[..] else {
        return Err("the generator must be a single term".into());
    };
    let cert = simplicity_stage(&start, &length, gen).map_err(err)?;
    let ok = check_cover(&cert);
    write(out, &cert.to_json())?;
    println!("M = {}", cert.m);
    println!("cover check {}", if ok { "pass" } else { "FAIL" });
    println!("certificate {}", out.display());
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Decompose { all, pinwheel, out } => decompose(*all, *pinwheel, out),
        Cmd::Patch { level, root, svg, json, labels } => {
            patch(&cli, *level, *root, svg.as_deref(), json.as_deref(), *labels)
        }
        Cmd::Verify { suite, out } => run_verify(*suite, out.as_deref()),
        Cmd::Algebra { expr, action, grid } => algebra(expr, *action, *grid),
        Cmd::Ktheory { op } => ktheory(op),
        Cmd::Simplicity { arc_length, arc_start, generator, out } => simplicity(arc_length, arc_start, generator, out),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
