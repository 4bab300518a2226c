//! `rtm`: command-line front end to rtm-core.
//!
//! Exit status is 0 on pass (or plain output), 1 when a verification fails
//! and 2 on invalid input.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use num_traits::Zero;
use rtm_core::fbasis::{
    theta_inv, verify_lemma1, verify_lemma2, verify_lemma3, verify_lemma4, verify_prop1,
};
use rtm_core::forest::{coproduct, enumerate_forests, Forest};
use rtm_core::hpoly::{Poly, Word};
use rtm_core::kawa::{
    intertwine_check, kawashima_decompose, rank_report, sample_rtm_generators, RankMethod,
    RankReport,
};
use rtm_core::mzvnum::{zeta_of_poly, PrecisionSpec};
use rtm_core::quasi::harmonic;
use rtm_core::rtmap::{find_map_relations, rtm_apply, MapExpr};
use rtm_core::Rational;

#[derive(Parser)]
#[command(
    name = "rtm",
    version,
    about = "Rooted tree maps and MZV relation checks"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Modular,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a rooted tree map (forest code or combination) to a polynomial.
    Apply {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Connes–Kreimer coproduct of a forest.
    Coproduct { forest: String },
    /// Harmonic (stuffle) product of two elements of ℚ + ℍy.
    Harmonic {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Express a homogeneous element of xℍy as f(x) with f a combination of f_d.
    ThetaInv {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Write L_x φ(w ∗ v) as f(u) with u admissible.
    Decompose { v: String, w: String },
    /// Check the GF(2) identities behind Θ for d up to the given degree.
    VerifyLemmas {
        #[arg(long)]
        max_degree: usize,
    },
    /// Relation ranks per weight, compared with the stored table.
    RkTable {
        #[arg(long)]
        max_weight: usize,
        /// Use every forest of each degree instead of f_d.
        #[arg(long)]
        all_forests: bool,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Also write the table here (CSV, or JSON for a .json path).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that both relation families span the same space.
    SpanEquality {
        #[arg(long)]
        max_weight: usize,
        #[arg(long, default_value_t = 3)]
        min_weight: usize,
    },
    /// Check f χ_x = χ_x H_w on ℍy words up to the given degree.
    Intertwine {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    /// Linear relations among degree-d maps, probed on words up to degree N.
    FindMapRelations {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_word_degree: usize,
    },
    /// Evaluate random rooted-tree-map relations numerically.
    NumericCheck {
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Largest accepted |Σ c ζ(w)|.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Absolute error targeted by the evaluator.
        #[arg(long, default_value_t = 1e-10)]
        target: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Outcome {
    Pass,
    Fail,
    Report,
}

impl Outcome {
    fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Pass | Outcome::Report => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Summary of one verification command.
#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    parameters: Value,
    outcome: Outcome,
    wall_time_s: f64,
    artifacts: Vec<String>,
    details: Value,
}

struct Ctx {
    json: bool,
    start: Instant,
}

impl Ctx {
    fn value<T: Serialize>(&self, v: &T, human: impl FnOnce() -> String) -> Result<Outcome> {
        if self.json {
            println!("{}", serde_json::to_string(v)?);
        } else {
            println!("{}", human());
        }
        Ok(Outcome::Report)
    }

    fn report(
        &self,
        command: &'static str,
        parameters: Value,
        outcome: Outcome,
        artifacts: Vec<String>,
        details: Value,
    ) -> Result<Outcome> {
        let r = RunReport {
            command,
            parameters,
            outcome,
            wall_time_s: self.start.elapsed().as_secs_f64(),
            artifacts,
            details,
        };
        if self.json {
            println!("{}", serde_json::to_string(&r)?);
        } else {
            let verdict = match outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Report => "REPORT",
            };
            println!("{verdict} {command} ({:.2}s)", r.wall_time_s);
        }
        Ok(outcome)
    }
}

fn parse_poly(s: &str) -> Result<Poly> {
    s.parse()
        .with_context(|| format!("invalid polynomial `{s}`"))
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse().with_context(|| format!("invalid word `{s}`"))
}

fn parse_map(s: &str) -> Result<MapExpr> {
    s.parse()
        .with_context(|| format!("invalid forest or map `{s}`"))
}

type Verifier = fn(usize) -> rtm_core::Result<bool>;

/// Beyond this degree the brute-force property sweeps get slow.
const PROPERTY_MAX_DEGREE: usize = 6;

type Triple = BTreeMap<(Forest, Forest, Forest), Rational>;

fn add_triple(acc: &mut Triple, key: (Forest, Forest, Forest), c: Rational) {
    let e = acc.entry(key).or_insert_with(Rational::zero);
    *e += c;
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on every forest of degree `d`.
fn coassociative(d: usize) -> bool {
    enumerate_forests(d).iter().all(|f| {
        let mut lhs = Triple::new();
        let mut rhs = Triple::new();
        for (l, r, c) in coproduct(f).iter() {
            for (a, b, c2) in coproduct(l).iter() {
                add_triple(&mut lhs, (a.clone(), b.clone(), r.clone()), c * c2);
            }
            for (a, b, c2) in coproduct(r).iter() {
                add_triple(&mut rhs, (l.clone(), a.clone(), b.clone()), c * c2);
            }
        }
        lhs.retain(|_, c| !c.is_zero());
        rhs.retain(|_, c| !c.is_zero());
        lhs == rhs
    })
}

/// Commutativity on all ℍ¹ word pairs of total length `d`, associativity on
/// triples of total length `d`.
fn stuffle_laws(d: usize) -> rtm_core::Result<bool> {
    let h1 = |n: usize| -> Vec<Poly> {
        if n == 0 {
            vec![Poly::one()]
        } else {
            Word::ending_in_y_of_len(n).map(Poly::from).collect()
        }
    };
    for i in 0..=d {
        for a in h1(i) {
            for b in h1(d - i) {
                if harmonic(&a, &b)? != harmonic(&b, &a)? {
                    return Ok(false);
                }
            }
            for j in 0..=d - i {
                for b in h1(j) {
                    for c in h1(d - i - j) {
                        let l = harmonic(&harmonic(&a, &b)?, &c)?;
                        let r = harmonic(&a, &harmonic(&b, &c)?)?;
                        if l != r {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

fn rank_csv(rows: &[RankReport]) -> String {
    let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
    let mut s = String::from("k,r_rtm,r_kaw,r_joint,R_ref,C_ref\n");
    for r in rows {
        s += &format!(
            "{},{},{},{},{},{}\n",
            r.k,
            r.r_rtm,
            r.r_kaw,
            r.r_joint,
            opt(r.r_ref),
            opt(r.c_ref)
        );
    }
    s
}

fn run(cmd: Command, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        Command::Apply { map, poly } => {
            let out = rtm_apply(&parse_map(&map)?, &parse_poly(&poly)?);
            ctx.value(&out, || out.to_string())
        }
        Command::Coproduct { forest } => {
            let f: Forest = forest
                .parse()
                .with_context(|| format!("invalid forest `{forest}`"))?;
            let t = coproduct(&f);
            ctx.value(&t, || {
                t.iter()
                    .map(|(l, r, c)| {
                        let show = |f: &Forest| {
                            if f.is_empty() {
                                "𝕀".to_string()
                            } else {
                                f.to_string()
                            }
                        };
                        format!("{c} {} ⊗ {}", show(l), show(r))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Harmonic { p, q } => {
            let out = harmonic(&parse_poly(&p)?, &parse_poly(&q)?)?;
            ctx.value(&out, || out.to_string())
        }
        Command::ThetaInv { poly } => {
            let f = theta_inv(&parse_poly(&poly)?)?;
            ctx.value(&f, || f.to_string())
        }
        Command::Decompose { v, w } => {
            let (f, u) = kawashima_decompose(&parse_word(&v)?, &parse_word(&w)?)?;
            let j = json!({ "f": f, "u": u });
            ctx.value(&j, || format!("f = {f}\nu = {u}"))
        }
        Command::VerifyLemmas { max_degree } => {
            if max_degree < 2 {
                bail!("--max-degree must be at least 2");
            }
            let mut details = Vec::new();
            let mut ok = true;
            for d in 1..=max_degree {
                let mut row = serde_json::Map::new();
                row.insert("d".into(), json!(d));
                let checks: [(&str, usize, Verifier); 5] = [
                    ("lemma1", 2, verify_lemma1),
                    ("lemma3", 2, verify_lemma3),
                    ("lemma4", 2, verify_lemma4),
                    ("lemma2", 1, verify_lemma2),
                    ("prop1", 1, verify_prop1),
                ];
                for (name, min, check) in checks {
                    if d >= min {
                        let r = check(d)?;
                        ok &= r;
                        row.insert(name.into(), json!(r));
                        if !ctx.json {
                            println!("d={d} {name}: {}", if r { "ok" } else { "FAILED" });
                        }
                    }
                }
                if d <= PROPERTY_MAX_DEGREE {
                    for (name, r) in [
                        ("coassociative", coassociative(d)),
                        ("stuffle", stuffle_laws(d)?),
                    ] {
                        ok &= r;
                        row.insert(name.into(), json!(r));
                        if !ctx.json {
                            println!("d={d} {name}: {}", if r { "ok" } else { "FAILED" });
                        }
                    }
                }
                details.push(Value::Object(row));
            }
            ctx.report(
                "verify-lemmas",
                json!({ "max_degree": max_degree }),
                Outcome::from_bool(ok),
                vec![],
                Value::Array(details),
            )
        }
        Command::RkTable {
            max_weight,
            all_forests,
            method,
            output,
        } => {
            if max_weight < 2 {
                bail!("--max-weight must be at least 2");
            }
            let method = match method {
                MethodArg::Auto => None,
                MethodArg::Exact => Some(RankMethod::Exact),
                MethodArg::Modular => Some(RankMethod::Modular),
            };
            if !ctx.json {
                println!("k,r_rtm,r_kaw,r_joint,R_ref,C_ref");
            }
            let mut rows = Vec::new();
            for k in 2..=max_weight {
                let r = rank_report(k, all_forests, method);
                if !ctx.json {
                    let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
                    println!(
                        "{},{},{},{},{},{}",
                        r.k,
                        r.r_rtm,
                        r.r_kaw,
                        r.r_joint,
                        opt(r.r_ref),
                        opt(r.c_ref)
                    );
                    if !r.primes_agree {
                        eprintln!("warning: the two primes disagree at k={k}");
                    }
                }
                rows.push(r);
            }
            let ok = rows
                .iter()
                .all(|r| r.matches_reference() && r.spans_equal());
            let mut artifacts = Vec::new();
            if let Some(path) = output {
                let body = if path.extension().is_some_and(|e| e == "json") {
                    serde_json::to_string_pretty(&rows)?
                } else {
                    rank_csv(&rows)
                };
                fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                artifacts.push(path.display().to_string());
            }
            let details = json!(rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).unwrap();
                    v["method"] = json!(r.method);
                    v["seconds"] = json!(r.seconds);
                    v
                })
                .collect::<Vec<_>>());
            ctx.report(
                "rk-table",
                json!({ "max_weight": max_weight, "all_forests": all_forests }),
                Outcome::from_bool(ok),
                artifacts,
                details,
            )
        }
        Command::SpanEquality {
            max_weight,
            min_weight,
        } => {
            if min_weight < 3 || max_weight < min_weight {
                bail!("need 3 <= --min-weight <= --max-weight");
            }
            let rows: Vec<RankReport> = (min_weight..=max_weight)
                .map(|k| rank_report(k, false, None))
                .collect();
            if !ctx.json {
                for r in &rows {
                    println!(
                        "k={} r_rtm={} r_kaw={} r_joint={} {}",
                        r.k,
                        r.r_rtm,
                        r.r_kaw,
                        r.r_joint,
                        if r.spans_equal() {
                            "equal"
                        } else {
                            "DIFFERENT"
                        }
                    );
                }
            }
            let ok = rows.iter().all(RankReport::spans_equal);
            ctx.report(
                "span-equality",
                json!({ "min_weight": min_weight, "max_weight": max_weight }),
                Outcome::from_bool(ok),
                vec![],
                serde_json::to_value(&rows)?,
            )
        }
        Command::Intertwine { map, max_degree } => {
            let f = parse_map(&map)?;
            let ok = intertwine_check(&f, max_degree)?;
            ctx.report(
                "intertwine",
                json!({ "map": f, "max_degree": max_degree }),
                Outcome::from_bool(ok),
                vec![],
                Value::Null,
            )
        }
        Command::FindMapRelations {
            degree,
            max_word_degree,
        } => {
            if degree < 1 || max_word_degree < 1 {
                bail!("--degree and --max-word-degree must be positive");
            }
            let basis = find_map_relations(degree, max_word_degree);
            let expected = basis.forest_count.saturating_sub(1 << (degree - 1));
            if !ctx.json {
                println!(
                    "{} forests of degree {degree}; kernel dimension {} (conjectured {expected})",
                    basis.forest_count,
                    basis.dim()
                );
                for r in &basis.relations {
                    println!("  {r}");
                }
            }
            ctx.report(
                "find-map-relations",
                json!({ "degree": degree, "max_word_degree": max_word_degree }),
                Outcome::Report,
                vec![],
                json!({ "basis": basis, "conjectured_dim": expected }),
            )
        }
        Command::NumericCheck {
            weight,
            samples,
            tol,
            target,
            seed,
        } => {
            if !(tol > 0.0 && target > 0.0) {
                bail!("--tol and --target must be positive");
            }
            let prec = PrecisionSpec::new(target);
            let mut worst = 0f64;
            let mut details = Vec::new();
            for s in sample_rtm_generators(weight, samples, seed)? {
                let v = zeta_of_poly(&s.image, &prec)?;
                worst = worst.max(v.abs());
                details.push(json!({
                    "forest": s.forest.code(),
                    "word": s.word.to_string(),
                    "value": v,
                }));
                if !ctx.json {
                    println!("{}({}) -> {v:+.3e}", s.forest, s.word);
                }
            }
            if !ctx.json {
                println!("max |Z| = {worst:.3e} (tol {tol:e})");
            }
            ctx.report(
                "numeric-check",
                json!({ "weight": weight, "samples": samples, "tol": tol, "target": target, "seed": seed }),
                Outcome::from_bool(worst <= tol),
                vec![],
                Value::Array(details),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        json: cli.json,
        start: Instant::now(),
    };
    let result = match cli.threads {
        #[cfg(feature = "parallel")]
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| run(cli.command, &ctx)),
            Err(e) => Err(e.into()),
        },
        #[cfg(not(feature = "parallel"))]
        Some(_) => run(cli.command, &ctx),
        None => run(cli.command, &ctx),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
