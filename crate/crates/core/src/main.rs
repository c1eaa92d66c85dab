//! Command-line surface: simplex metrics, absorption/translate indices,
//! constructions, verification sweeps and extremal searches, with JSON
//! reports on stdout.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use simplex_absorb::absorption::{self, CubeKind};
use simplex_absorb::bodies::ConvexBody;
use simplex_absorb::constructions::{self, RandomScheme};
use simplex_absorb::error::Error;
use simplex_absorb::io as sio;
use simplex_absorb::metrics;
use simplex_absorb::oracle;
use simplex_absorb::search::{self, BodyKind, SearchConfig};
use simplex_absorb::simplex::Simplex;

#[derive(Parser)]
#[command(name = "simplex-absorb", version, about = "Absorption and translate indices of simplices")]
struct Cli {
    /// Scalar mode; rational mode is exact but restricted to
    /// rational-valued inputs and square-root-free quantities.
    #[arg(long, global = true, value_enum, default_value = "float")]
    mode: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Float,
    Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IndexChoice {
    Xi,
    Alpha,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Standard,
    RegularBall,
    Hadamard,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    UnitCubeVertices,
    Gaussian,
    InBall,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BodyArg {
    Ball,
    Cube,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Corollary1,
    AlphaBall,
    AlphaCube,
    Euler,
    XiOracle,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Metrics of a simplex: volume, heights, diameters, inradius,
    /// circumradius, Euler gap, regularity.
    Info {
        #[arg(long)]
        simplex: String,
    },
    /// Absorption index xi and/or translate index alpha of a body with
    /// respect to a simplex.
    Absorb {
        #[arg(long)]
        simplex: String,
        #[arg(long)]
        body: String,
        #[arg(long, value_enum, default_value = "both")]
        index: IndexChoice,
    },
    /// Emit a constructed simplex as JSON on stdout.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "gaussian")]
        scheme: SchemeArg,
    },
    /// Cross-validation sweeps; exit 0 iff every case passes.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overrides every suite's default tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Minimize xi over simplices inside the unit cube or ball.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        body: BodyArg,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 400)]
        max_iters: usize,
        /// Write the improvement history as CSV (restart,iteration,value).
        #[arg(long)]
        history: Option<String>,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    input_digest: String,
    mode: String,
    seed: Option<u64>,
    tolerances: serde_json::Value,
    results: serde_json::Value,
    wall_time_ms: f64,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DegenerateSimplex(_) => 3,
        Error::DimensionMismatch { .. } | Error::DimensionTooLarge { .. } => 4,
        Error::UnsupportedOrder(_) => 5,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let started = Instant::now();
    let mode_name = match cli.mode {
        Mode::Float => "float",
        Mode::Rational => "rational",
    };
    match cli.command {
        Command::Info { simplex } => {
            let text = read_input(&simplex)?;
            let results = match cli.mode {
                Mode::Float => info_float(&text)?,
                Mode::Rational => info_rational(&text)?,
            };
            print_report(Report {
                command: "info".into(),
                input_digest: digest(&text),
                mode: mode_name.into(),
                seed: None,
                tolerances: json!({"regularity": metrics::REGULARITY_TOL}),
                results,
                wall_time_ms: ms(started),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Absorb { simplex, body, index } => {
            let stext = read_input(&simplex)?;
            let btext = read_input(&body)?;
            let results = match cli.mode {
                Mode::Float => absorb_float(&stext, &btext, index)?,
                Mode::Rational => absorb_rational(&stext, &btext, index)?,
            };
            print_report(Report {
                command: "absorb".into(),
                input_digest: digest(&format!("{stext}\n{btext}")),
                mode: mode_name.into(),
                seed: None,
                tolerances: json!({"circumscribed": absorption::CIRCUMSCRIBED_TOL}),
                results,
                wall_time_ms: ms(started),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct { kind, n, seed, scheme } => {
            let s = match kind {
                ConstructKind::Standard => constructions::standard_simplex::<f64>(n),
                ConstructKind::RegularBall => constructions::regular_inscribed_simplex(n)?,
                ConstructKind::Hadamard => constructions::hadamard_simplex::<f64>(n)?,
                ConstructKind::Random => {
                    constructions::random_simplex(n, seed, scheme_of(scheme))?
                }
            };
            println!("{}", sio::simplex_to_json(&s));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, n, cases, seed, tol } => {
            let (results, all_pass) = run_verify(suite, n, cases, seed, tol)?;
            print_report(Report {
                command: "verify".into(),
                input_digest: digest(&format!("{n}:{cases}:{seed}")),
                mode: mode_name.into(),
                seed: Some(seed),
                tolerances: json!({"override": tol}),
                results,
                wall_time_ms: ms(started),
            });
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Search { n, body, restarts, seed, max_iters, history } => {
            let mut config = SearchConfig::new(
                n,
                match body {
                    BodyArg::Ball => BodyKind::Ball,
                    BodyArg::Cube => BodyKind::Cube,
                },
            );
            config.restarts = restarts;
            config.seed = seed;
            config.max_iters = max_iters;
            let result = search::minimize_xi(&config)?;
            if let Some(path) = history {
                let mut csv = String::from("restart,iteration,value\n");
                for entry in &result.history {
                    let _ = writeln!(csv, "{},{},{}", entry.restart, entry.iteration, entry.value);
                }
                std::fs::write(&path, csv)
                    .map_err(|e| Error::PreconditionFailed(format!("cannot write {path}: {e}")))?;
            }
            print_report(Report {
                command: "search".into(),
                input_digest: digest(&format!("{n}:{restarts}:{seed}")),
                mode: mode_name.into(),
                seed: Some(seed),
                tolerances: json!({"improvement": 1e-12}),
                results: json!({
                    "best_value": result.best_value,
                    "best_simplex": {
                        "dim": result.best_simplex.dim(),
                        "vertices": result.best_simplex.vertices(),
                    },
                    "restart_bests": result.restart_bests,
                    "iterations": result.iterations,
                }),
                wall_time_ms: ms(started),
            });
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn scheme_of(arg: SchemeArg) -> RandomScheme {
    match arg {
        SchemeArg::UnitCubeVertices => RandomScheme::UnitCubeVertices,
        SchemeArg::Gaussian => RandomScheme::Gaussian,
        SchemeArg::InBall => RandomScheme::InBall,
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::PreconditionFailed(format!("cannot read {path}: {e}")))
}

fn digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut acc, b| {
        let _ = write!(acc, "{b:02x}");
        acc
    })
}

fn ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

fn print_report(report: Report) {
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
    );
}

fn info_float(text: &str) -> Result<serde_json::Value, Error> {
    let s = sio::parse_simplex(text)?;
    let m = metrics::compute(&s)?;
    let tangents = metrics::tangent_points(&s);
    Ok(json!({
        "dim": s.dim(),
        "volume": m.volume,
        "heights": m.heights,
        "axial_diameters": m.axial_diameters,
        "inradius": m.inradius,
        "incenter": m.incenter,
        "tangent_points": tangents.0,
        "circumradius": m.circumradius,
        "circumcenter": m.circumcenter,
        "facet_measures": m.facet_measures,
        "surface": m.surface,
        "euler": {"circumradius": m.circumradius, "n_times_inradius": m.circumradius - m.euler_gap, "gap": m.euler_gap},
        "regular": m.regular,
    }))
}

/// Rational mode reports the square-root-free quantities exactly, as
/// fraction strings.
fn info_rational(text: &str) -> Result<serde_json::Value, Error> {
    let s = sio::parse_simplex_rational(text)?;
    let diameters: Vec<String> = metrics::axial_diameters(&s)
        .iter()
        .map(|d| d.to_string())
        .collect();
    Ok(json!({
        "dim": s.dim(),
        "volume": s.volume().to_string(),
        "axial_diameters": diameters,
        "alpha_unit_cube": absorption::alpha_cube(CubeKind::Unit, &s).to_string(),
        "alpha_sym_cube": absorption::alpha_cube(CubeKind::Sym, &s).to_string(),
    }))
}

fn absorb_float(
    stext: &str,
    btext: &str,
    index: IndexChoice,
) -> Result<serde_json::Value, Error> {
    let s = sio::parse_simplex(stext)?;
    let body = sio::parse_body(btext, s.dim())?;
    absorption::check_dims(&body, &s)?;
    let mut results = serde_json::Map::new();
    if matches!(index, IndexChoice::Xi | IndexChoice::Both) {
        results.insert("xi".into(), absorption_json(&absorption::xi(&body, &s)?));
    }
    if matches!(index, IndexChoice::Alpha | IndexChoice::Both) {
        results.insert("alpha".into(), absorption_json(&absorption::alpha(&body, &s)?));
    }
    Ok(serde_json::Value::Object(results))
}

fn absorption_json(res: &absorption::AbsorptionResult) -> serde_json::Value {
    json!({
        "value": res.value,
        "per_facet": res.per_facet,
        "argmax_facet": res.argmax_facet,
        "witness_point": res.witness_point,
        "circumscribed": res.circumscribed,
    })
}

/// Exact indices; only cube bodies are square-root free.
fn absorb_rational(
    stext: &str,
    btext: &str,
    index: IndexChoice,
) -> Result<serde_json::Value, Error> {
    let s = sio::parse_simplex_rational(stext)?;
    let body = sio::parse_body(btext, s.dim())?;
    let kind = match body {
        ConvexBody::UnitCube { .. } => CubeKind::Unit,
        ConvexBody::SymCube { .. } => CubeKind::Sym,
        ConvexBody::Ball { .. } => {
            return Err(Error::PreconditionFailed(
                "rational mode supports cube bodies only (ball indices need square roots)".into(),
            ))
        }
    };
    let mut results = serde_json::Map::new();
    if matches!(index, IndexChoice::Xi | IndexChoice::Both) {
        results.insert(
            "xi".into(),
            json!({"value": absorption::xi_cube(kind, &s).to_string()}),
        );
    }
    if matches!(index, IndexChoice::Alpha | IndexChoice::Both) {
        results.insert(
            "alpha".into(),
            json!({"value": absorption::alpha_cube(kind, &s).to_string()}),
        );
    }
    Ok(serde_json::Value::Object(results))
}

// ---------------------------------------------------------------------
// verification sweeps
// ---------------------------------------------------------------------

struct SuiteOutcome {
    name: &'static str,
    cases: usize,
    tol: f64,
    worst_deviation: f64,
    pass: bool,
    failing_simplex: Option<serde_json::Value>,
}

impl SuiteOutcome {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.name,
            "cases": self.cases,
            "tol": self.tol,
            "worst_deviation": self.worst_deviation,
            "pass": self.pass,
            "failing_simplex": self.failing_simplex,
        })
    }
}

struct SuiteRun {
    tol: f64,
    worst: f64,
    failing: Option<Simplex<f64>>,
}

impl SuiteRun {
    fn new(tol: f64) -> Self {
        SuiteRun {
            tol,
            worst: 0.0,
            failing: None,
        }
    }

    fn record(&mut self, deviation: f64, s: &Simplex<f64>) {
        if deviation > self.worst {
            self.worst = deviation;
        }
        if deviation > self.tol && self.failing.is_none() {
            self.failing = Some(s.clone());
        }
    }

    fn outcome(self, name: &'static str, cases: usize) -> SuiteOutcome {
        SuiteOutcome {
            name,
            cases,
            tol: self.tol,
            worst_deviation: self.worst,
            pass: self.failing.is_none(),
            failing_simplex: self.failing.map(|s| {
                serde_json::from_str(&sio::simplex_to_json(&s)).expect("valid JSON")
            }),
        }
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn run_verify(
    suite: SuiteArg,
    n: usize,
    cases: usize,
    seed: u64,
    tol_override: Option<f64>,
) -> Result<(serde_json::Value, bool), Error> {
    let tol = |default: f64| tol_override.unwrap_or(default);
    let mut outcomes = Vec::new();

    let run_all = suite == SuiteArg::All;
    if run_all || suite == SuiteArg::Corollary1 {
        let mut run = SuiteRun::new(tol(1e-9));
        for case in 0..cases {
            let s = constructions::random_simplex(n, seed.wrapping_add(case as u64), RandomScheme::Gaussian)?;
            let (r, _) = metrics::inradius_incenter(&s);
            let height_sum: f64 = metrics::heights(&s).iter().map(|h| 1.0 / h).sum();
            run.record((1.0 / r - height_sum).abs() * r, &s);
        }
        outcomes.push(run.outcome("corollary1", cases));
    }
    if run_all || suite == SuiteArg::AlphaBall {
        let mut run = SuiteRun::new(tol(1e-8));
        for case in 0..cases {
            let s = constructions::random_simplex(n, seed.wrapping_add(case as u64), RandomScheme::Gaussian)?;
            let generic = absorption::alpha(&ConvexBody::unit_ball(n), &s)?.value;
            let coeffs = absorption::alpha_ball_formula(1.0, &s);
            let (r, _) = metrics::inradius_incenter(&s);
            let sigma: f64 = metrics::facet_measures(&s).iter().sum();
            let via_r = 1.0 / r;
            let via_surface = sigma / (n as f64 * s.volume());
            let mut worst: f64 = 0.0;
            for (a, b) in [
                (generic, coeffs),
                (generic, via_r),
                (generic, via_surface),
                (coeffs, via_r),
                (coeffs, via_surface),
                (via_r, via_surface),
            ] {
                worst = worst.max(rel_dev(a, b));
            }
            run.record(worst, &s);
        }
        outcomes.push(run.outcome("alpha_ball", cases));
    }
    if run_all || suite == SuiteArg::AlphaCube {
        let mut run = SuiteRun::new(tol(1e-9));
        for case in 0..cases {
            let s = constructions::random_simplex(n, seed.wrapping_add(case as u64), RandomScheme::Gaussian)?;
            let generic = absorption::alpha(&ConvexBody::UnitCube { dim: n }, &s)?.value;
            let via_d = absorption::alpha_unit_cube_via_diameters(&s);
            let via_l = absorption::alpha_unit_cube_via_coeffs(&s);
            let sym_generic = absorption::alpha(&ConvexBody::SymCube { dim: n }, &s)?.value;
            let sym_l = absorption::alpha_sym_cube_via_coeffs(&s);
            let ball = absorption::alpha(&ConvexBody::unit_ball(n), &s)?.value;
            let mut worst = rel_dev(generic, via_d)
                .max(rel_dev(generic, via_l))
                .max(rel_dev(sym_generic, sym_l));
            // alpha(B_n;S) <= alpha(Q'_n;S)
            if ball > sym_generic {
                worst = worst.max(ball - sym_generic);
            }
            run.record(worst, &s);
        }
        outcomes.push(run.outcome("alpha_cube", cases));
    }
    if run_all || suite == SuiteArg::Euler {
        let mut run = SuiteRun::new(tol(1e-9));
        for case in 0..cases {
            let s = constructions::random_simplex(n, seed.wrapping_add(case as u64), RandomScheme::Gaussian)?;
            let (big_r, nr, gap) = metrics::euler_check(&s)?;
            let _ = (big_r, nr);
            run.record((-gap).max(0.0), &s);

            // lower-bound chain for simplices inside the unit cube
            let c = constructions::random_simplex(
                n,
                seed.wrapping_add(1_000_000 + case as u64),
                RandomScheme::UnitCubeVertices,
            )?;
            let xi = absorption::xi(&ConvexBody::UnitCube { dim: n }, &c)?.value;
            let alpha = absorption::alpha(&ConvexBody::UnitCube { dim: n }, &c)?.value;
            run.record((alpha - xi).max(n as f64 - alpha).max(0.0), &c);
        }
        outcomes.push(run.outcome("euler", cases));
    }
    if run_all || suite == SuiteArg::XiOracle {
        let mut run = SuiteRun::new(tol(1e-6));
        for case in 0..cases {
            let s = constructions::random_simplex(n, seed.wrapping_add(case as u64), RandomScheme::Gaussian)?;
            let body = match case % 3 {
                0 => ConvexBody::unit_ball(n),
                1 => ConvexBody::UnitCube { dim: n },
                _ => ConvexBody::SymCube { dim: n },
            };
            let formula = absorption::xi(&body, &s)?.value;
            let bisected = oracle::xi_bisection(&body, &s)?;
            run.record((formula - bisected).abs(), &s);

            let (r_oracle, _) = oracle::chebyshev_inradius(&s)?;
            let (r_formula, _) = metrics::inradius_incenter(&s);
            run.record((r_oracle - r_formula).abs() / 1e3, &s); // 1e-9 scale vs 1e-6 tol
        }
        outcomes.push(run.outcome("xi_oracle", cases));
    }

    let all_pass = outcomes.iter().all(|o| o.pass);
    let results = json!({
        "suites": outcomes.iter().map(SuiteOutcome::to_json).collect::<Vec<_>>(),
        "pass": all_pass,
    });
    Ok((results, all_pass))
}
