use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use plane_integral::constructions::{generalized_unit_stream, ConstructionMode};
use plane_integral::families::FamilySpec;
use plane_integral::forms::expr::parse_form;
use plane_integral::heights::{height_report, is_s_integral};
use plane_integral::orbits::{
    height_cap_digits, is_completely_invariant_line_set, is_invariant_line, iterate_orbit, orbit_csv,
    scan_orbit_integrality, Orbit, DEFAULT_CAP_DIGITS,
};
use plane_integral::pencils::weight_report;
use plane_integral::point::{parse_points_csv, write_points_csv};
use plane_integral::search::{enumerate_integral_points, fibers_hit, solve_s_unit_bounded};
use plane_integral::{Endo, FactoredDivisor, Pencil, PlaceSet, ProjPoint, Rat};

/// Integral points on plane curve complements: heights, pencils, orbits and
/// bounded searches with exact arithmetic.
#[derive(Parser)]
#[command(name = "plane-integral", version)]
struct Cli {
    /// Worker threads for data-parallel subcommands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output path; `-` writes to standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Local and global heights of a point relative to a divisor.
    Height {
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: ProjPoint,
        #[arg(long = "S", default_value = "", value_parser = parse_places)]
        s: PlaceSet,
        /// Add floating-point renderings of the log values, marked approx.
        #[arg(long)]
        decimal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Whether a point is S-integral relative to a divisor.
    IntegralCheck {
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: ProjPoint,
        #[arg(long = "S", value_parser = parse_places)]
        s: PlaceSet,
    },
    /// All S-integral points with coordinates bounded by B, as CSV.
    Enumerate {
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long = "S", value_parser = parse_places)]
        s: PlaceSet,
        #[arg(long)]
        bound: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Counts of points on each member of a pencil.
    Fibers {
        #[arg(long)]
        pencil: PathBuf,
        /// Points CSV (x,y,z rows).
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Campana and gcd weights of a divisor relative to a pencil.
    Weight {
        #[arg(long)]
        pencil: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        decimal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Curve families.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Explicit S-integral points from the unit constructions.
    Construct {
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long = "S", value_parser = parse_places)]
        s: PlaceSet,
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Iterates an endomorphism from a point.
    Orbit {
        #[arg(long)]
        endo: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: ProjPoint,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP_DIGITS)]
        cap_digits: u32,
        /// Emit JSON records instead of CSV.
        #[arg(long)]
        json: bool,
        #[arg(long, requires = "json")]
        decimal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Iterates an endomorphism and checks S-integrality of every point.
    OrbitScan {
        #[arg(long)]
        endo: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: ProjPoint,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long = "S", value_parser = parse_places)]
        s: PlaceSet,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_CAP_DIGITS)]
        cap_digits: u32,
        #[arg(long)]
        json: bool,
        #[arg(long, requires = "json")]
        decimal: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Invariance of lines under an endomorphism.
    InvariantLines {
        #[arg(long)]
        endo: PathBuf,
        /// Comma-separated linear forms, e.g. `X,Y,Z`.
        #[arg(long)]
        lines: String,
        #[command(flatten)]
        output: Output,
    },
    /// Solutions of u + v = 1 in S-units with bounded exponents.
    Sunit {
        #[arg(long = "S", value_parser = parse_places)]
        s: PlaceSet,
        #[arg(long)]
        exp_bound: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum FamilyAction {
    /// Builds the curve, divisor and pencil of a family member.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    ThirdType,
    Congruence,
    LineCurve,
}

fn parse_places(s: &str) -> Result<PlaceSet, String> {
    PlaceSet::parse_list(s).map_err(|e| e.to_string())
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: &Output, text: &str) -> anyhow::Result<()> {
    if output.out.as_os_str() == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
        Ok(())
    } else {
        fs::write(&output.out, text).with_context(|| format!("writing {}", output.out.display()))
    }
}

fn emit_json(output: &Output, v: &Value) -> anyhow::Result<()> {
    emit(output, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn approx(r: &Rat) -> Value {
    r.to_f64().map_or(Value::Null, Value::from)
}

fn construction_mode(
    mode: Mode,
    alpha: Option<u32>,
    m: Option<u32>,
    a: Option<u32>,
    b: Option<u32>,
) -> Result<ConstructionMode, clap::Error> {
    let need = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| {
            Cli::command().error(ErrorKind::MissingRequiredArgument, format!("--{name} is required for this mode"))
        })
    };
    Ok(match mode {
        Mode::ThirdType => ConstructionMode::ThirdType { alpha: need(alpha, "alpha")?, m: m.unwrap_or(1) },
        Mode::Congruence => ConstructionMode::Congruence { a: need(a, "a")?, b: need(b, "b")? },
        Mode::LineCurve => ConstructionMode::LineCurve { a: need(a, "a")?, b: need(b, "b")? },
    })
}

fn orbit_output(orbit: &Orbit, json: bool, decimal: bool) -> anyhow::Result<String> {
    if !json {
        return Ok(orbit_csv(orbit));
    }
    let mut v = serde_json::to_value(orbit)?;
    if decimal {
        for (rec, out) in orbit.records.iter().zip(v["records"].as_array_mut().expect("records array")) {
            out["approx"] = json!({ "height_log": rec.height_log.approx() });
        }
    }
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Height { divisor, point, s, decimal, output } => {
            let d: FactoredDivisor = read_json(&divisor)?;
            let report = height_report(&d, &point, &s)?;
            let mut v = serde_json::to_value(&report)?;
            if decimal {
                v["approx"] = json!({ "global": report.global().approx() });
            }
            emit_json(&output, &v)
        }
        Command::IntegralCheck { divisor, point, s } => {
            let d: FactoredDivisor = read_json(&divisor)?;
            let ok = is_s_integral(&d, &point, &s)?;
            emit(&Output { out: "-".into() }, &format!("{ok}\n"))
        }
        Command::Enumerate { divisor, s, bound, output } => {
            let d: FactoredDivisor = read_json(&divisor)?;
            let points = enumerate_integral_points(&d, &s, bound)?;
            emit(&output, &write_points_csv(&points))
        }
        Command::Fibers { pencil, points, output } => {
            let pencil: Pencil = read_json(&pencil)?;
            let points = parse_points_csv(&read_input(&points)?)?;
            let rows: Vec<Value> = fibers_hit(&points, &pencil)
                .into_iter()
                .map(|(k, n)| json!({ "fiber": k, "count": n }))
                .collect();
            emit_json(&output, &Value::Array(rows))
        }
        Command::Weight { pencil, divisor, decimal, output } => {
            let pencil: Pencil = read_json(&pencil)?;
            let d: FactoredDivisor = read_json(&divisor)?;
            let report = weight_report(&pencil, &d)?;
            let mut v = serde_json::to_value(&report)?;
            if decimal {
                v["approx"] = json!({
                    "campana_weight": approx(&report.campana_weight),
                    "gcd_weight": approx(&report.gcd_weight),
                });
            }
            emit_json(&output, &v)
        }
        Command::Family { action: FamilyAction::Generate { spec, output } } => {
            let spec: FamilySpec = read_json(&spec)?;
            emit_json(&output, &serde_json::to_value(spec.generate()?)?)
        }
        Command::Construct { mode, alpha, m, a, b, s, count, output } => {
            let mode = construction_mode(mode, alpha, m, a, b).unwrap_or_else(|e| e.exit());
            let certs = generalized_unit_stream(mode, &s, count)?;
            emit_json(&output, &serde_json::to_value(certs)?)
        }
        Command::Orbit { endo, point, n, cap_digits, json, decimal, output } => {
            let phi: Endo = read_json(&endo)?;
            let orbit = iterate_orbit(&phi, &point, n, &height_cap_digits(cap_digits))?;
            emit(&output, &orbit_output(&orbit, json, decimal)?)
        }
        Command::OrbitScan { endo, point, divisor, s, n, cap_digits, json, decimal, output } => {
            let phi: Endo = read_json(&endo)?;
            let d: FactoredDivisor = read_json(&divisor)?;
            let orbit = scan_orbit_integrality(&phi, &point, &d, &s, n, &height_cap_digits(cap_digits))?;
            emit(&output, &orbit_output(&orbit, json, decimal)?)
        }
        Command::InvariantLines { endo, lines, output } => {
            let phi: Endo = read_json(&endo)?;
            let forms = lines.split(',').map(parse_form).collect::<Result<Vec<_>, _>>()?;
            let mut per_line = Vec::new();
            for l in &forms {
                per_line.push(json!({ "line": l.to_string(), "invariant": is_invariant_line(&phi, l)? }));
            }
            let complete = is_completely_invariant_line_set(&phi, &forms)?;
            emit_json(&output, &json!({ "lines": per_line, "completely_invariant": complete }))
        }
        Command::Sunit { s, exp_bound, output } => {
            emit_json(&output, &serde_json::to_value(solve_s_unit_bounded(&s, exp_bound))?)
        }
    }
}

fn error_kind(e: &anyhow::Error) -> String {
    match e.downcast_ref::<plane_integral::Error>() {
        Some(inner) => {
            let dbg = format!("{inner:?}");
            dbg.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
        }
        None if e.downcast_ref::<serde_json::Error>().is_some() => "InvalidInput".into(),
        None if e.downcast_ref::<io::Error>().is_some() => "Io".into(),
        None => "InvalidInput".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = json!({ "error": error_kind(&e), "message": format!("{e:#}") });
            eprintln!("{report}");
            ExitCode::from(1)
        }
    }
}
