//! Command-line front end: synthesize and export circuits, run the
//! verification sweeps, produce resource-scaling tables, and run the
//! toy-scale discrete-log demo.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use edshor::circuit::{Circuit, ResourceReport};
use edshor::curve::{find_toy_curve, AffinePoint, CurveSpec, ToyCurve};
use edshor::estimate::{estimate, render_csv, EstimateKind};
use edshor::field::{FieldElement, FieldSpec};
use edshor::sim::{shor_distribution, shor_success};
use edshor::synth::dsa::{dsa_circuit, DsaVariant};
use edshor::synth::inv::itoh_tsuji_circuit;
use edshor::synth::mul::mastrovito_mul;
use edshor::synth::point::{point_add_circuit, proj_to_affine_circuit};
use edshor::synth::qft::{aqft_circuit, default_band};
use edshor::synth::shor::{shor_dlog_circuit, ShorOptions};
use edshor::synth::UncomputeMode;
use edshor::verify;

#[derive(Parser)]
#[command(name = "edshor", version, about = "Gate-level synthesis and verification of binary elliptic curve discrete-log circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a circuit and print its resource report.
    Synth {
        kind: SynthKind,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Run oracle-equivalence sweeps and print a pass/fail table.
    Verify {
        scope: VerifyScope,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Resource-scaling CSV across doublings of n.
    Estimate {
        /// Circuit kinds to measure.
        #[arg(value_delimiter = ',', default_values_t = vec![String::from("mul"), String::from("inv")])]
        kinds: Vec<String>,
        #[arg(long, default_value_t = 256)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = ModeFlag::Garbage)]
        uncompute: ModeFlag,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a circuit file, validate it, and re-emit it canonically.
    Export {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact end-to-end discrete-log run on a toy curve.
    ShorDemo {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    Mul,
    Inv,
    Add,
    #[value(name = "dsa-r2l")]
    DsaR2l,
    #[value(name = "dsa-l2r")]
    DsaL2r,
    #[value(name = "dsa-tree")]
    DsaTree,
    P2a,
    Aqft,
    Shor,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyScope {
    Field,
    Curve,
    Circuits,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeFlag {
    Clean,
    Garbage,
}

impl From<ModeFlag> for UncomputeMode {
    fn from(m: ModeFlag) -> Self {
        match m {
            ModeFlag::Clean => UncomputeMode::BennettClean,
            ModeFlag::Garbage => UncomputeMode::Garbage,
        }
    }
}

#[derive(Args)]
struct CommonFlags {
    #[arg(long)]
    n: usize,
    /// Field modulus coefficient bits as hex (bit i = coefficient of x^i).
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    d1: Option<String>,
    #[arg(long)]
    d2: Option<String>,
    /// `auto` discovers a deterministic toy curve for point-level kinds.
    #[arg(long)]
    curve: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeFlag::Clean)]
    uncompute: ModeFlag,
    /// AQFT target error; 0 selects 2^(-2m).
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn fail_usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn build_field(n: usize, poly: &Option<String>) -> Result<FieldSpec, String> {
    match poly {
        None => FieldSpec::with_default_modulus(n).map_err(|e| e.to_string()),
        Some(hex) => {
            FieldSpec::parse_description(&format!("gf2n n={n} poly={hex}")).map_err(|e| e.to_string())
        }
    }
}

/// Deterministic curve resolution: explicit d1/d2 flags win, otherwise
/// `--curve auto` (implied when the flags are absent) runs the toy
/// search. Returns the curve plus a generator and its order.
fn build_curve(flags: &CommonFlags) -> Result<ToyCurve, String> {
    let field = build_field(flags.n, &flags.poly)?;
    match (&flags.d1, &flags.d2) {
        (Some(d1), Some(d2)) => {
            let d1 = FieldElement::from_hex(flags.n, d1).ok_or("bad --d1 hex")?;
            let d2 = FieldElement::from_hex(flags.n, d2).ok_or("bad --d2 hex")?;
            let curve = CurveSpec::new(field, d1, d2).map_err(|e| e.to_string())?;
            let points = curve.enumerate_points().map_err(|e| e.to_string())?;
            let mut best: Option<(u64, AffinePoint)> = None;
            for p in &points {
                let ord = curve.order_of(p);
                if best.as_ref().is_none_or(|(b, _)| ord > *b) {
                    best = Some((ord, p.clone()));
                }
            }
            let (order, generator) = best.ok_or("curve has no points")?;
            Ok(ToyCurve { curve, generator, order })
        }
        (None, None) => {
            match flags.curve.as_deref() {
                Some("auto") | None => find_toy_curve(&field).map_err(|e| e.to_string()),
                Some(other) => Err(format!("unknown --curve value '{other}'")),
            }
        }
        _ => Err("--d1 and --d2 must be given together".into()),
    }
}

fn emit_circuit(
    c: &Circuit,
    name: &str,
    n: usize,
    out: &Option<PathBuf>,
) -> Result<(), String> {
    if let Some(path) = out {
        fs::write(path, c.serialize()).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    println!("{}", ResourceReport::CSV_HEADER);
    println!("{}", c.report().csv_row(name, n));
    Ok(())
}

fn run_synth(kind: SynthKind, flags: &CommonFlags) -> Result<(), String> {
    let mode: UncomputeMode = flags.uncompute.into();
    match kind {
        SynthKind::Mul => {
            let field = build_field(flags.n, &flags.poly)?;
            emit_circuit(&mastrovito_mul(&field, mode), "mul", flags.n, &flags.out)
        }
        SynthKind::Inv => {
            let field = build_field(flags.n, &flags.poly)?;
            emit_circuit(&itoh_tsuji_circuit(&field, mode).0, "inv", flags.n, &flags.out)
        }
        SynthKind::Add => {
            let toy = build_curve(flags)?;
            emit_circuit(&point_add_circuit(&toy.curve, mode).0, "add", flags.n, &flags.out)
        }
        SynthKind::P2a => {
            let toy = build_curve(flags)?;
            emit_circuit(&proj_to_affine_circuit(&toy.curve, mode), "p2a", flags.n, &flags.out)
        }
        SynthKind::DsaR2l | SynthKind::DsaL2r | SynthKind::DsaTree => {
            let variant = match kind {
                SynthKind::DsaR2l => DsaVariant::RightToLeft,
                SynthKind::DsaL2r => DsaVariant::LeftToRight,
                _ => DsaVariant::Tree,
            };
            let toy = build_curve(flags)?;
            let r = planted_r(&toy, flags.seed);
            let q = toy.curve.scalar_mul(r, &toy.generator);
            let (c, info) = dsa_circuit(variant, &toy.curve, &toy.generator, &q, mode);
            let name = match variant {
                DsaVariant::RightToLeft => "dsa-r2l",
                DsaVariant::LeftToRight => "dsa-l2r",
                DsaVariant::Tree => "dsa-tree",
            };
            println!(
                "# adders={} layers={} init-depth={}",
                info.adder_count, info.adder_layers, info.init_depth
            );
            emit_circuit(&c, name, flags.n, &flags.out)
        }
        SynthKind::Aqft => {
            let m = flags.n;
            let epsilon = if flags.epsilon > 0.0 {
                flags.epsilon
            } else {
                0.25f64.powi(m as i32)
            };
            let band = default_band(m, epsilon);
            emit_circuit(&aqft_circuit(m, band), "aqft", m, &flags.out)
        }
        SynthKind::Shor => {
            let toy = build_curve(flags)?;
            let r = planted_r(&toy, flags.seed);
            let q = toy.curve.scalar_mul(r, &toy.generator);
            let opts = ShorOptions {
                variant: DsaVariant::Tree,
                mode,
                epsilon: flags.epsilon,
                band: None,
            };
            let (c, report) = shor_dlog_circuit(&toy.curve, &toy.generator, &q, &opts);
            println!("{}", ResourceReport::CSV_HEADER);
            for (stage, rep) in &report.stages {
                println!("{}", rep.csv_row(&format!("shor.{stage}"), flags.n));
            }
            println!("{}", report.total.csv_row("shor", flags.n));
            if let Some(path) = &flags.out {
                fs::write(path, c.serialize())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            Ok(())
        }
    }
}

/// Deterministic planted discrete log in [1, order).
fn planted_r(toy: &ToyCurve, seed: u64) -> u64 {
    if toy.order <= 1 {
        return 0;
    }
    1 + (seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(2)) % (toy.order - 1)
}

fn run_verify(scope: VerifyScope, n_max: usize, seed: u64) -> Result<bool, String> {
    let mut all_pass = true;
    let mut run = |name: String, result: Result<(), verify::VerifyError>| {
        match result {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                all_pass = false;
                println!("FAIL {name}: {e}");
            }
        }
    };
    let field_scope = matches!(scope, VerifyScope::Field | VerifyScope::All);
    let curve_scope = matches!(scope, VerifyScope::Curve | VerifyScope::All);
    let circuit_scope = matches!(scope, VerifyScope::Circuits | VerifyScope::All);

    if field_scope {
        for n in 2..=n_max.min(6) {
            let f = FieldSpec::with_default_modulus(n).map_err(|e| e.to_string())?;
            run(
                format!("mastrovito-identity n={n} exhaustive"),
                verify::check_mastrovito_identity(&f, None, seed),
            );
        }
        for n in [8usize, 16] {
            let f = FieldSpec::with_default_modulus(n).map_err(|e| e.to_string())?;
            run(
                format!("mastrovito-identity n={n} random"),
                verify::check_mastrovito_identity(&f, Some(200), seed),
            );
        }
    }
    if curve_scope {
        for n in 3..=n_max.min(4) {
            let toy = verify::standard_toy(n);
            run(
                format!("point-adder n={n} exhaustive"),
                verify::check_point_adder(&toy.curve, UncomputeMode::BennettClean),
            );
        }
    }
    if circuit_scope {
        for n in 2..=n_max.min(4) {
            let f = FieldSpec::with_default_modulus(n).map_err(|e| e.to_string())?;
            run(
                format!("mul-circuit n={n} exhaustive"),
                verify::check_mul_circuit(&f, UncomputeMode::BennettClean, n <= 3, None, seed),
            );
            run(
                format!("inverter n={n} exhaustive"),
                verify::check_inverter(&f, UncomputeMode::BennettClean, None, seed),
            );
        }
        let toy = verify::standard_toy(3);
        for variant in [DsaVariant::RightToLeft, DsaVariant::LeftToRight, DsaVariant::Tree] {
            run(
                format!("{variant:?} n=3 exhaustive"),
                verify::check_dsa(&toy, 3, variant, UncomputeMode::Garbage),
            );
        }
        run(
            "proj-to-affine n=3 random".to_string(),
            verify::check_proj_to_affine(&toy, UncomputeMode::BennettClean, 100, seed),
        );
        let f4 = FieldSpec::with_default_modulus(4).map_err(|e| e.to_string())?;
        let mul4 = mastrovito_mul(&f4, UncomputeMode::BennettClean);
        run(
            "reversibility mul n=4".to_string(),
            verify::check_reversibility(&mul4, "mul", 100, seed),
        );
    }
    Ok(all_pass)
}

fn run_export(input: &PathBuf, out: &Option<PathBuf>) -> Result<(), String> {
    let text = fs::read_to_string(input).map_err(|e| format!("reading {}: {e}", input.display()))?;
    let c = Circuit::parse(&text).map_err(|e| e.to_string())?;
    c.validate().map_err(|e| e.to_string())?;
    let canonical = c.serialize();
    match out {
        Some(path) => {
            fs::write(path, &canonical).map_err(|e| format!("writing {}: {e}", path.display()))?
        }
        None => print!("{canonical}"),
    }
    eprintln!("{}", ResourceReport::CSV_HEADER);
    eprintln!("{}", c.report().csv_row("export", 0));
    Ok(())
}

fn run_estimate(
    kinds: &[String],
    n_max: usize,
    mode: UncomputeMode,
    out: &Option<PathBuf>,
) -> Result<(), String> {
    let kinds: Result<Vec<EstimateKind>, String> = kinds
        .iter()
        .map(|k| EstimateKind::parse(k).ok_or(format!("unknown estimate kind '{k}'")))
        .collect();
    let kinds = kinds?;
    let mut ns = Vec::new();
    let mut n = 4usize;
    while n <= n_max {
        ns.push(n);
        n *= 2;
    }
    let rows = estimate(&kinds, &ns, mode).map_err(|e| e.to_string())?;
    let csv = render_csv(&rows);
    match out {
        Some(path) => fs::write(path, &csv).map_err(|e| format!("writing {}: {e}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn run_shor_demo(n: usize, seed: u64) -> Result<bool, String> {
    if n > 4 {
        return Err("shor-demo is capped at n <= 4".into());
    }
    let toy = verify::standard_toy(n);
    let p = &toy.generator;
    let q_order = toy.order;
    let planted = planted_r(&toy, seed);
    let target = toy.curve.scalar_mul(planted, p);
    let m = n + 1;
    println!("curve: {}", toy.curve.describe());
    println!(
        "generator: (0x{}, 0x{}) order {q_order}",
        p.x.to_hex(),
        p.y.to_hex()
    );
    println!("planted r = {planted}, target Q = (0x{}, 0x{})", target.x.to_hex(), target.y.to_hex());
    let dist = shor_distribution(&toy.curve, p, &target, m).map_err(|e| e.to_string())?;
    println!("top outcomes (u, v, probability):");
    for (u, v, prob) in dist.top(8) {
        println!("  ({u:3}, {v:3})  {prob:.6}");
    }
    let (recovered, mass) = shor_success(&dist, q_order, &toy.curve, p, &target);
    println!("success probability p* = {mass:.6}");
    match recovered {
        Some(r) => {
            println!("recovered r = {r}");
            if toy.curve.scalar_mul(r, p) == target {
                println!("check: rP = Q confirmed");
                Ok(r == planted || toy.curve.scalar_mul(planted, p) == toy.curve.scalar_mul(r, p))
            } else {
                Ok(false)
            }
        }
        None => {
            println!("no outcome recovered a verified discrete log");
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<bool, String> = match &cli.command {
        Command::Synth { kind, common } => run_synth(*kind, common).map(|_| true),
        Command::Verify { scope, n_max, seed } => run_verify(*scope, *n_max, *seed),
        Command::Estimate { kinds, n_max, uncompute, out } => {
            run_estimate(kinds, *n_max, (*uncompute).into(), out).map(|_| true)
        }
        Command::Export { input, out } => run_export(input, out).map(|_| true),
        Command::ShorDemo { n, seed } => run_shor_demo(*n, *seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => fail_usage(&msg),
    }
}
