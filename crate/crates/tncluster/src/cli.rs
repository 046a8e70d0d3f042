//! Command-line front end. `run` parses arguments, writes results to `out`
//! and diagnostics to `err`, and returns the exit code: 0 on pass, 1 on a
//! failed verification, 2 on a usage or input error.

use std::collections::BTreeSet;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tncluster_core::affine::{
    check_a_infinity, check_dual_period, family_spec, gamma_quiver, segment_image, t_system_triple, AffineTag,
};
use tncluster_core::multiseg::Segment;
use tncluster_core::qcluster::Vertex;
use tncluster_core::quiver::{
    initial_quiver, label_shift_defects, labeled_diff, seed_from_quiver, seed_schedule, sigma_even, sigma_even_n,
    sigma_hl, sigma_minus, sigma_minus_n, sigma_odd, sigma_odd_n, sigma_plus, sigma_plus_n, truncated_bar_quiver,
    truncated_quiver, KrWeightRule, Quiver, Window,
};
use tncluster_core::tnring::{b_form_n, omega_n};
use tncluster_core::word::{beta_by_reflection, beta_closed, coord, coord_inv, is_reduced_prefix, jp, root, Coord};
use tncluster_core::Error;

use crate::format::{label_to_json, multiseg_from_json, quiver_to_json, weight_from_json};

#[derive(Parser, Debug)]
#[command(name = "tncluster", version, about = "Quantum cluster combinatorics of type A-infinity and its truncations")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reduced-word checks.
    Word {
        #[command(subcommand)]
        cmd: WordCmd,
    },
    /// Translate between positions p and coordinates (ℓ, m).
    Coord {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        ell: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
    },
    /// Seed construction checks.
    Seed {
        #[command(subcommand)]
        cmd: SeedCmd,
    },
    /// Run a mutation schedule and report quiver and label verdicts.
    Mutate {
        #[arg(long, value_enum)]
        schedule: Schedule,
        #[arg(long)]
        cap: i64,
        #[arg(long = "N")]
        n: Option<i64>,
        #[arg(long, default_value_t = 1)]
        reps: i64,
        /// Also track quantum cluster variables.
        #[arg(long)]
        quantum: bool,
    },
    /// Quiver export.
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// Grothendieck-level operations in T_N.
    Tn {
        #[command(subcommand)]
        cmd: TnCmd,
    },
    /// Quantum affine dictionaries.
    Affine {
        #[command(subcommand)]
        cmd: AffineCmd,
    },
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    Check {
        #[arg(long)]
        pmax: u32,
    },
}

#[derive(Subcommand, Debug)]
enum SeedCmd {
    Verify {
        #[arg(long)]
        cap: i64,
        #[arg(long = "N")]
        n: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    Export {
        #[arg(long)]
        cap: i64,
        #[arg(long = "N")]
        n: Option<i64>,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
}

#[derive(Subcommand, Debug)]
enum TnCmd {
    Omega {
        #[arg(long = "N")]
        n: i64,
        /// Multisegment as JSON, e.g. [[0,4]].
        #[arg(long)]
        ms: String,
    },
    Bform {
        #[arg(long = "N")]
        n: i64,
        /// Weight as JSON, e.g. {"eps":{"0":1,"1":-1}}.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
enum AffineCmd {
    Gamma {
        #[arg(long = "type")]
        tag: String,
        #[arg(long)]
        rank: i64,
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
    Seg {
        #[arg(long = "type")]
        tag: String,
        #[arg(long)]
        rank: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    Tsys {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        ell: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "N", default_value_t = 5)]
        n: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Schedule {
    Even,
    Odd,
    Plus,
    Minus,
    Hl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

/// Result of one command: verdict, human-readable text, JSON document.
struct Outcome {
    pass: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn info(text: String, json: Value) -> Self {
        Outcome { pass: true, text, json }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e);
                    2
                }
            };
        }
    };
    match execute(&cli.cmd) {
        Ok(o) => {
            let body = if cli.json { o.json.to_string() } else { o.text };
            let _ = writeln!(out, "{}", body.trim_end());
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(Error::NonLaurent) => {
            let _ = writeln!(err, "error: {}", Error::NonLaurent);
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}

fn execute(cmd: &Cmd) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Word { cmd: WordCmd::Check { pmax } } => word_check(*pmax),
        Cmd::Coord { p, ell, m } => coord_query(*p, *ell, *m),
        Cmd::Seed { cmd: SeedCmd::Verify { cap, n } } => seed_verify(*cap, *n),
        Cmd::Mutate { schedule, cap, n, reps, quantum } => mutate(*schedule, *cap, *n, *reps, *quantum),
        Cmd::Quiver { cmd: QuiverCmd::Export { cap, n, format } } => export(*cap, *n, *format),
        Cmd::Tn { cmd } => tn(cmd),
        Cmd::Affine { cmd } => affine(cmd),
    }
}

fn word_check(pmax: u32) -> Result<Outcome, Error> {
    let first_bad = (1..=pmax).find(|&p| {
        let (a, b) = beta_closed(p);
        !is_reduced_prefix(p) || beta_by_reflection(p) != root(a, b)
    });
    let good = first_bad.map_or(pmax, |p| p - 1);
    let text = match first_bad {
        None => format!("OK {}/{}", pmax, pmax),
        Some(p) => format!("FAIL {}/{} (first failure at p={})", good, pmax, p),
    };
    Ok(Outcome {
        pass: first_bad.is_none(),
        text,
        json: json!({"checked": pmax, "passed": good, "first_failure": first_bad}),
    })
}

fn coord_query(p: Option<u32>, ell: Option<i64>, m: Option<i64>) -> Result<Outcome, Error> {
    let p = match (p, ell, m) {
        (Some(p), None, None) if p >= 1 => p,
        (None, Some(ell), Some(m)) => {
            let c = Coord::new(ell, m);
            if !c.is_valid() {
                return Err(Error::Invalid(format!("({}, {}) is not a lattice coordinate", ell, m)));
            }
            coord_inv(c)
        }
        _ => return Err(Error::Invalid("give either --p P (P ≥ 1) or both --ell and --m".into())),
    };
    let c = coord(p);
    let j = jp(p);
    Ok(Outcome::info(
        format!("p={} ell={} m={} j={}", p, c.ell, c.m, j),
        json!({"p": p, "ell": c.ell, "m": c.m, "j": j}),
    ))
}

fn window_quiver(cap: i64, n: Option<i64>) -> Result<Quiver, Error> {
    match n {
        None => initial_quiver(Window::triangle(cap)),
        Some(n) => truncated_quiver(n, cap),
    }
}

fn seed_verify(cap: i64, n: Option<i64>) -> Result<Outcome, Error> {
    let q = window_quiver(cap, n)?;
    let seed = seed_from_quiver(&q, n.is_some())?;
    let cols = seed.interior_columns();
    let ok = seed.compatible(2, &cols)?;
    Ok(Outcome {
        pass: ok,
        text: format!(
            "vertices={} exchangeable={} interior={}\ncompatible (d=2): {}",
            seed.vertices.len(),
            seed.exchangeable().len(),
            cols.len(),
            verdict(ok)
        ),
        json: json!({"vertices": seed.vertices.len(), "exchangeable": seed.exchangeable().len(),
                     "interior": cols.len(), "compatible": ok}),
    })
}

fn mutate(kind: Schedule, cap: i64, n: Option<i64>, reps: i64, quantum: bool) -> Result<Outcome, Error> {
    if reps < 1 {
        return Err(Error::Invalid("--reps must be positive".into()));
    }
    let q = match n {
        None => initial_quiver(Window::triangle(cap))?,
        Some(n) => truncated_bar_quiver(n, cap)?,
    };
    let nn = n.unwrap_or(i64::MAX);
    let schedule = match (kind, n) {
        (Schedule::Even, None) => sigma_even(&q),
        (Schedule::Odd, None) => sigma_odd(&q),
        (Schedule::Plus, None) => sigma_plus(&q),
        (Schedule::Minus, None) => sigma_minus(&q),
        (Schedule::Even, Some(n)) => sigma_even_n(&q, n),
        (Schedule::Odd, Some(n)) => sigma_odd_n(&q, n),
        (Schedule::Plus, Some(n)) => sigma_plus_n(&q, n),
        (Schedule::Minus, Some(n)) => sigma_minus_n(&q, n),
        (Schedule::Hl, _) => {
            let mut s = sigma_even_n(&q, nn);
            let after = q.apply_schedule(&s)?;
            s.extend(sigma_hl(&after, nn));
            s
        }
    };
    let margin = 2 * reps + 2;
    let trusted = q.trusted(margin);
    if trusted.is_empty() {
        return Err(Error::WindowTooSmall(format!("cap {} leaves no vertex at margin {}", cap, margin)));
    }
    let mut result = q.clone();
    for _ in 0..reps {
        result = result.apply_schedule(&schedule)?;
    }
    let mut lines = vec![format!("schedule={:?} steps={} reps={} vertices={}", kind, schedule.len(), reps, q.len())];
    let mut doc = json!({"schedule": format!("{:?}", kind).to_lowercase(), "steps": schedule.len(), "reps": reps,
                         "vertices": q.len(), "arrows": result.arrows().len()});
    let mut pass = true;
    let target = match kind {
        Schedule::Even | Schedule::Odd if reps % 2 == 1 => Some(("opposite", q.opposite())),
        Schedule::Hl => None,
        _ => Some(("initial", q.clone())),
    };
    match target {
        Some((name, t)) => {
            let diff = labeled_diff(&result, &t, margin);
            pass &= diff.is_empty();
            lines.push(format!(
                "quiver equals {} on trusted interior (margin {}): {}",
                name,
                margin,
                verdict(diff.is_empty())
            ));
            doc["quiver"] = json!({"target": name, "margin": margin, "mismatches": diff.len()});
        }
        None => {
            lines.push(format!("arrows after schedule: {}", result.arrows().len()));
            doc["quiver"] = Value::Null;
        }
    }
    let shift = match kind {
        Schedule::Plus => Some(reps),
        Schedule::Minus => Some(-reps),
        _ => None,
    };
    if shift.is_some() || quantum {
        let base = match n {
            None => initial_quiver(Window::triangle(cap))?,
            Some(n) => truncated_quiver(n, cap)?,
        };
        let mut seed = seed_from_quiver(&base, n.is_some())?;
        seed.track_vars = quantum;
        for _ in 0..reps {
            seed = seed_schedule(&seed, &schedule, &KrWeightRule)?;
        }
        if let Some(r) = shift {
            let among: BTreeSet<Vertex> =
                base.trusted(margin).into_iter().filter(|v| !seed.frozen.contains(v)).collect();
            let bad = label_shift_defects(&seed, r, &among);
            pass &= bad.is_empty();
            lines.push(format!(
                "labels shifted by {:+} on {} trusted vertices: {}",
                r,
                among.len(),
                verdict(bad.is_empty())
            ));
            doc["labels"] = json!({"shift": r, "checked": among.len(), "defects": bad});
        }
        if quantum {
            let positive = seed.vars.values().all(|x| x.is_positive());
            let max_terms = seed.vars.values().map(|x| x.num_terms()).max().unwrap_or(0);
            pass &= positive;
            lines.push(format!(
                "quantum Laurent: PASS; positive coefficients: {}; max terms {}",
                verdict(positive),
                max_terms
            ));
            doc["quantum"] = json!({"laurent": true, "positive": positive, "max_terms": max_terms});
        }
    }
    doc["pass"] = json!(pass);
    Ok(Outcome { pass, text: lines.join("\n"), json: doc })
}

fn export(cap: i64, n: Option<i64>, format: ExportFormat) -> Result<Outcome, Error> {
    let q = window_quiver(cap, n)?;
    let text = match format {
        ExportFormat::Dot => q.to_dot(),
        ExportFormat::Json => quiver_to_json(&q),
    };
    let json: Value = match format {
        ExportFormat::Json => serde_json::from_str(&text).expect("exported quiver is valid JSON"),
        ExportFormat::Dot => json!({"dot": text}),
    };
    Ok(Outcome::info(text, json))
}

fn tn(cmd: &TnCmd) -> Result<Outcome, Error> {
    match cmd {
        TnCmd::Omega { n, ms } => {
            let ms = multiseg_from_json(ms)?;
            let c = omega_n(&ms, *n)?;
            let doc = match &c {
                tncluster_core::tnring::ClassTN::Zero => json!({"class": "zero"}),
                tncluster_core::tnring::ClassTN::Simple { ms, .. } if ms.is_empty() => json!({"class": "unit"}),
                tncluster_core::tnring::ClassTN::Simple { ms, .. } => {
                    json!({"class": "simple", "ms": ms.to_pairs().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>()})
                }
            };
            Ok(Outcome::info(c.to_string(), doc))
        }
        TnCmd::Bform { n, x, y } => {
            let v = b_form_n(&weight_from_json(x)?, &weight_from_json(y)?, *n)?;
            Ok(Outcome::info(v.to_string(), json!({"value": v})))
        }
    }
}

fn parse_tag(s: &str) -> Result<AffineTag, Error> {
    AffineTag::parse(s)
        .ok_or_else(|| Error::Invalid(format!("unknown type {:?}; expected one of A1 A2 B1 C1 D1 D2 D3", s)))
}

fn label_value(l: &tncluster_core::affine::ModuleLabel) -> Value {
    serde_json::from_str(&label_to_json(l)).expect("labels serialize")
}

fn affine(cmd: &AffineCmd) -> Result<Outcome, Error> {
    match cmd {
        AffineCmd::Gamma { tag, rank, window } => {
            let spec = family_spec(parse_tag(tag)?, *rank)?;
            if *window < 1 || window + spec.big_n > tncluster_core::affine::TABLE_RADIUS {
                return Err(Error::Invalid(format!(
                    "window must lie in 1..={}",
                    tncluster_core::affine::TABLE_RADIUS - spec.big_n
                )));
            }
            let ainf = check_a_infinity(&spec, *window)?;
            let dual = check_dual_period(&spec, *window)?;
            let g = gamma_quiver(&spec, *window)?;
            let mut text = format!("A-infinity: {}\ndual period: {}", verdict(ainf.pass), verdict(dual.pass));
            for d in ainf.detail.iter().chain(dual.detail.iter()) {
                text.push_str(&format!("\n  {}", d));
            }
            Ok(Outcome {
                pass: ainf.pass && dual.pass,
                text,
                json: json!({"type": tag, "rank": rank, "N": spec.big_n, "window": window,
                             "a_infinity": ainf.pass, "dual_period": dual.pass,
                             "arrows": g.arrows.iter().map(|&(a, b, d)| [a, b, d]).collect::<Vec<_>>()}),
            })
        }
        AffineCmd::Seg { tag, rank, a, b } => {
            let spec = family_spec(parse_tag(tag)?, *rank)?;
            let seg = Segment::new(*a, *b)?;
            let l = segment_image(&spec, seg)?;
            Ok(Outcome::info(l.to_string(), label_value(&l)))
        }
        AffineCmd::Tsys { t, ell, m, k, n } => {
            let tr = t_system_triple(*t, *n, *ell, *m, *k)?;
            let pair = |p: &[tncluster_core::affine::ModuleLabel; 2]| format!("{} ⊗ {}", p[0], p[1]);
            let jp = |p: &[tncluster_core::affine::ModuleLabel; 2]| json!([label_value(&p[0]), label_value(&p[1])]);
            Ok(Outcome::info(
                format!("sub:  {}\nmid:  {}\nquot: {}", pair(&tr.sub), pair(&tr.mid), pair(&tr.quot)),
                json!({"sub": jp(&tr.sub), "mid": jp(&tr.mid), "quot": jp(&tr.quot)}),
            ))
        }
    }
}
