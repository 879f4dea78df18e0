use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use alexander::alexcore::{
    homology_bounded, jordan_data_bounded, jump_ideal, restrict_scalars, FreeComplex, JordanData,
};
use alexander::bundles::{mapping_torus_complex, monodromy_alexander_bounded, obstruction_check, ClassKind, TargetClass};
use alexander::dga::{
    semisimple_check_bounded, thicken, truncated_cohomology, validate_cdga, CdgaValidation, OneCocycle, StabilizedModule,
    DEFAULT_M_MAX,
};
use alexander::error::Error;
use alexander::gysin::{analyze, LocalModule, SpectralPage};
use alexander::io::{self, MonodromyInput};
use alexander::laurent::{parse_rational, DEFAULT_CYCLOTOMIC_BOUND};

mod render;
mod selftest;

use render::jordan_text;

#[derive(Parser, Debug)]
#[command(name = "alexander", version, about = "Alexander modules, thickened complexes and monodromy obstructions")]
struct Cli {
    /// Search bound for cyclotomic factors.
    #[arg(long, global = true, env = "ALEXANDER_CYCLOTOMIC_BOUND", default_value_t = DEFAULT_CYCLOTOMIC_BOUND)]
    cyclotomic_bound: u64,
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decomposition of the Alexander modules H_i.
    Homology {
        input: PathBuf,
        /// Only this degree.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Jordan block data S(i, factor) in every degree.
    Jordan { input: PathBuf },
    /// Jump ideal J_i^k.
    Jump {
        input: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
    },
    /// Restriction of scalars to Q[t^N, t^-N].
    Restrict {
        input: PathBuf,
        #[arg(long = "N", short = 'N')]
        n: usize,
    },
    /// Monodromy obstructions for a target class.
    Obstruct {
        input: PathBuf,
        /// kahler, qproj or qproj-pure
        #[arg(long)]
        class: String,
        /// Complex dimension, required for the quasi-projective classes.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Thickened complex of a CDGA and its stabilized cohomology.
    Thicken {
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
        /// Comma separated coefficients of eta in degree one; overrides the file.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
    },
    /// Spectral sequence and torsion bounds of a Gysin model.
    Gysin {
        input: PathBuf,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Run the bundled example corpus.
    Selftest {
        /// Read the corpus files from this directory instead.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Result of a command: the report and whether it passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selftest { dir } = &cli.command {
        let report = selftest::run(dir.as_deref(), cli.cyclotomic_bound);
        if cli.json {
            emit(&format!("{}\n", serde_json::to_string_pretty(&report.to_json()).expect("json")));
        } else {
            emit(&report.to_string());
        }
        return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json")));
            } else {
                emit(&out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn read(path: &PathBuf) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    io::parse_json(&text).with_context(|| path.display().to_string())
}

/// Anything with a chain complex over R: a complex file or a monodromy
/// file with chain data.
fn complex_of(v: &Value) -> alexander::error::Result<FreeComplex> {
    if v.get("ranks").is_some() {
        return io::complex_from_value(v);
    }
    match io::monodromy_from_value(v)? {
        MonodromyInput::Chain(f) => mapping_torus_complex(&f),
        MonodromyInput::Homology(_) => Err(Error::InvalidArgument(
            "a homology-level monodromy file has no chain complex; use a complex or chain data".into(),
        )),
    }
}

/// Jordan data of a complex, a monodromy file or a `{degrees}` record.
fn jordan_of(v: &Value, bound: u64) -> alexander::error::Result<JordanData> {
    if v.get("degrees").is_some() {
        return io::jordan_from_value(v);
    }
    if v.get("free_rank").is_some() {
        return Ok(JordanData::new(vec![io::decomposition_from_value(v, "record")?]));
    }
    if v.get("ranks").is_some() {
        return jordan_data_bounded(&io::complex_from_value(v)?, bound);
    }
    match io::monodromy_from_value(v)? {
        MonodromyInput::Chain(f) => jordan_data_bounded(&mapping_torus_complex(&f)?, bound),
        MonodromyInput::Homology(hs) => monodromy_alexander_bounded(&hs, bound),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let bound = cli.cyclotomic_bound;
    if bound == 0 {
        return Err(Error::InvalidArgument("cyclotomic bound must be positive".into()).into());
    }
    let out = match &cli.command {
        Command::Homology { input, i } => {
            let v = read(input)?;
            match i {
                Some(i) => {
                    let h = match v.get("ranks") {
                        Some(_) => homology_bounded(&complex_of(&v)?, *i, bound)?,
                        None => jordan_of(&v, bound)?.degree(*i),
                    };
                    Outcome::ok(format!("H_{} = {}\n", i, h), io::decomposition_to_json(&h))
                }
                None => {
                    let j = jordan_of(&v, bound)?;
                    let text: String =
                        j.degrees.iter().enumerate().map(|(i, h)| format!("H_{} = {}\n", i, h)).collect();
                    Outcome::ok(text, io::jordan_to_json(&j))
                }
            }
        }
        Command::Jordan { input } => {
            let j = jordan_of(&read(input)?, bound)?;
            Outcome::ok(jordan_text(&j, "t"), io::jordan_to_json(&j))
        }
        Command::Jump { input, i, k } => {
            positive("k", *k)?;
            let c = complex_of(&read(input)?)?;
            let ideal = jump_ideal(&c, *i, *k)?;
            let shown = if ideal.is_zero() { "0".to_string() } else { ideal.to_string() };
            Outcome::ok(
                format!("J_{}^{} = ({})\n", i, k, shown),
                json!({"i": i, "k": k, "generator": shown}),
            )
        }
        Command::Restrict { input, n } => {
            positive("N", *n)?;
            let j = jordan_of(&read(input)?, bound)?;
            let degrees =
                j.degrees.iter().map(|m| restrict_scalars(m, *n)).collect::<alexander::error::Result<Vec<_>>>()?;
            let r = JordanData::new(degrees);
            let mut text = format!("over Q[u, u^-1], u = t^{}\n", n);
            text.push_str(&jordan_text(&r, "u"));
            let mut js = io::jordan_to_json(&r);
            js["N"] = json!(n);
            js["variable"] = json!("u");
            Outcome::ok(text, js)
        }
        Command::Obstruct { input, class, n } => {
            let kind: ClassKind = class.parse()?;
            if let Some(n) = n {
                positive("n", *n)?;
            }
            let target = TargetClass::new(kind, *n)?;
            let j = jordan_of(&read(input)?, bound)?;
            let verdict = obstruction_check(&j, target);
            let reasons: Vec<Value> = verdict
                .reasons
                .iter()
                .map(|r| {
                    json!({
                        "rule": r.rule.name(),
                        "degree": r.degree,
                        "factor": r.factor.poly.to_string(),
                        "observed": r.observed,
                        "allowed": r.allowed,
                        "caveat": r.caveat,
                        "message": r.to_string(),
                    })
                })
                .collect();
            Outcome {
                text: format!("{}\n", verdict),
                json: json!({"class": verdict.class_tested.to_string(), "verdict": verdict.verdict(), "reasons": reasons}),
                passed: !verdict.obstructed(),
            }
        }
        Command::Thicken { input, m, m_max, eta } => {
            positive("m", *m)?;
            positive("m-max", *m_max)?;
            let file = io::cdga_from_value(&read(input)?)?;
            let a = &file.algebra;
            if let CdgaValidation::Violation { axiom, detail } = validate_cdga(a) {
                return Err(Error::InvalidAlgebra(format!("{}: {}", axiom, detail)).into());
            }
            let coeffs = match eta {
                Some(s) => s
                    .split(',')
                    .map(|x| parse_rational(x.trim()))
                    .collect::<alexander::error::Result<Vec<_>>>()
                    .context("--eta")?,
                None => file.eta.clone().ok_or_else(|| Error::MissingOption("eta (in the file or --eta)".into()))?,
            };
            let eta = OneCocycle::new(a, coeffs)?;
            let c = thicken(a, &eta, *m)?;
            let truncated: Vec<Vec<usize>> = (0..=a.top()).map(|k| truncated_cohomology(&c, k).partition).collect();
            let verdict = semisimple_check_bounded(a, &eta, *m_max)?;
            let mut text = format!("truncated cohomology at m = {}\n", m);
            for (k, p) in truncated.iter().enumerate() {
                text.push_str(&format!("  H^{}: blocks {:?}\n", k, p));
            }
            text.push_str("stabilized cohomology over Q[[s]]\n");
            for (k, s) in verdict.modules.iter().enumerate() {
                text.push_str(&format!("  H^{}: {} (level {})\n", k, stabilized_text(s), s.level));
            }
            text.push_str(&format!("verdict: {}\n", verdict));
            let stabilized: Vec<Value> = verdict
                .modules
                .iter()
                .map(|s| json!({"free_rank": s.free_rank, "torsion": s.torsion, "level": s.level}))
                .collect();
            Outcome {
                text,
                json: json!({
                    "m": m,
                    "truncated": truncated,
                    "stabilized": stabilized,
                    "semisimple": verdict.semisimple,
                    "offending_degrees": verdict.offending_degrees,
                }),
                passed: verdict.semisimple,
            }
        }
        Command::Gysin { input, truncation } => {
            if let Some(t) = truncation {
                positive("truncation", *t)?;
            }
            let g = io::gysin_from_value(&read(input)?)?;
            let r = analyze(&g, *truncation)?;
            let pages: Vec<Value> = r.pages.iter().chain(std::iter::once(&r.limit)).map(page_json).collect();
            let bounds: Vec<Value> = r
                .bounds
                .rows
                .iter()
                .map(|b| {
                    json!({
                        "degree": b.degree,
                        "homology": local_json(&b.homology),
                        "exponent": b.exponent,
                        "bound": b.bound,
                        "passed": b.passed,
                    })
                })
                .collect();
            let checks: Vec<Value> = r
                .bounds
                .edges
                .iter()
                .chain(&r.checks)
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            Outcome {
                text: r.to_string(),
                json: json!({
                    "eta": r.purity.to_string(),
                    "truncation": r.truncation,
                    "pages": pages,
                    "homology": r.total.iter().map(local_json).collect::<Vec<_>>(),
                    "bounds": bounds,
                    "checks": checks,
                    "passed": r.passed(),
                }),
                passed: r.passed(),
            }
        }
        Command::Selftest { .. } => unreachable!("handled in main"),
    };
    Ok(out)
}

fn positive(name: &str, v: usize) -> anyhow::Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("--{} must be positive", name)).into());
    }
    Ok(())
}

fn stabilized_text(s: &StabilizedModule) -> String {
    let m = LocalModule { free_rank: s.free_rank, torsion: s.torsion.clone() };
    m.to_string().replace('R', "Q[[s]]")
}

fn local_json(m: &LocalModule) -> Value {
    json!({"free_rank": m.free_rank, "torsion": m.torsion})
}

fn page_json(p: &SpectralPage) -> Value {
    let entries: Vec<Value> = p.nonzero().map(|((a, b), m)| json!({"p": a, "q": b, "module": local_json(m)})).collect();
    json!({"r": p.r.map_or_else(|| json!("inf"), |r| json!(r)), "entries": entries})
}
