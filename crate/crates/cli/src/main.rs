use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_crf::arith::{int, parse_rational, rational_decimal, rational_string, Rational};
use abelian_crf::chern::TiltConvention;
use abelian_crf::crf::candidates;
use abelian_crf::report::{Report, DECIMAL_DIGITS};
use abelian_crf::verify::{self, VerifyOptions};
use abelian_crf::walls::{accumulation_point, enumerate_walls};
use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Pell walls, rank-function candidates and syzygy verdicts for
/// (1,d)-polarized abelian surfaces.
#[derive(Parser, Debug)]
#[command(name = "abelian-crf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one polarization type.
    Report(ReportArgs),
    /// Wall data as CSV, outermost wall first.
    Walls(WallsArgs),
    /// Sampled h0 and h1 of one candidate as CSV.
    Plot(PlotArgs),
    /// Run every oracle and invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    /// Walls to list; with --no-narrowing also the number of Pell candidates.
    #[arg(long, default_value_t = 2)]
    solutions: usize,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
    /// Keep the trivial shape and every listed Pell shape as candidates.
    #[arg(long)]
    no_narrowing: bool,
}

#[derive(Args, Debug)]
struct WallsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    #[arg(long)]
    solutions: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    d: u64,
    /// Index into the candidate list shown by `report`.
    #[arg(long)]
    candidate: usize,
    /// Right end of the sample range, e.g. `3/2` or `1.25`.
    #[arg(long, value_parser = parse_xmax)]
    xmax: Rational,
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    no_narrowing: bool,
    /// Pell candidates listed when narrowing is off.
    #[arg(long, default_value_t = 2)]
    solutions: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Fault {
    FlippedBeta,
    FlippedAlphaSquared,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest d visited by any suite.
    #[arg(long, default_value_t = 1000)]
    dmax: u64,
    /// Raise the per-suite ceilings.
    #[arg(long)]
    deep: bool,
    /// Evaluate tilt slopes with a deliberately wrong convention.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

fn parse_xmax(s: &str) -> Result<Rational, String> {
    match parse_rational(s) {
        Some(q) if q >= int(0) => Ok(q),
        Some(_) => Err("xmax must be nonnegative".to_string()),
        None => Err(format!("not a rational number: {s}")),
    }
}

enum Failure {
    Usage(String),
    Verify(String),
    Empty(String),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) | Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Empty(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_writer(path: &Option<PathBuf>) -> anyhow::Result<csv::Writer<Box<dyn Write>>> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(output(path)?))
}

fn report(args: &ReportArgs) -> Outcome {
    let r = Report::build(args.d, args.solutions, !args.no_narrowing)
        .map_err(|e| Failure::Verify(e.to_string()))?;
    let text = if args.table { r.to_table() } else { r.to_json() };
    io::stdout().lock().write_all(text.as_bytes()).context("writing report")?;
    Ok(())
}

fn walls(args: &WallsArgs) -> Outcome {
    let walls = match enumerate_walls(args.d, args.solutions) {
        Ok(w) => w,
        Err(abelian_crf::walls::WallError::Arith(abelian_crf::arith::ArithError::SquareRadicand(_))) => {
            return Err(Failure::Empty("no walls: Pell equation has only trivial solutions".into()))
        }
        Err(e) => return Err(Failure::Verify(e.to_string())),
    };
    let mut w = csv_writer(&args.csv)?;
    let io_err = |e: csv::Error| Failure::Io(e.into());
    w.write_record(["solution_x", "solution_y", "center_beta", "radius_sq", "radius", "p_quot", "p_sub"])
        .map_err(io_err)?;
    let two = int(2);
    for (s, wall) in &walls {
        let (q, p) = wall.endpoints();
        let radius = (p - q) / &two;
        w.write_record([
            s.x().to_string(),
            s.y().to_string(),
            rational_string(wall.center_beta()),
            rational_string(wall.radius_sq()),
            rational_decimal(&radius, DECIMAL_DIGITS),
            rational_string(q),
            rational_string(p),
        ])
        .map_err(io_err)?;
    }
    if !walls.is_empty() {
        let limit = accumulation_point(args.d).to_string();
        w.write_record(["accumulation", "", &limit, "0", &rational_decimal(&int(0), DECIMAL_DIGITS), &limit, &limit])
            .map_err(io_err)?;
    }
    w.flush().context("writing walls")?;
    Ok(())
}

fn plot(args: &PlotArgs) -> Outcome {
    let cs = candidates(args.d, args.solutions, !args.no_narrowing);
    let c = cs.get(args.candidate).ok_or_else(|| {
        Failure::Usage(format!(
            "candidate index {} out of range: d = {} has {} candidates",
            args.candidate,
            args.d,
            cs.len()
        ))
    })?;
    let h1 = c.h1();
    let mut w = csv_writer(&args.csv)?;
    let io_err = |e: csv::Error| Failure::Io(e.into());
    w.write_record(["x", "h0", "h1", "x_exact", "h0_exact", "h1_exact"]).map_err(io_err)?;
    for i in 0..args.samples {
        let x = if args.samples == 1 { int(0) } else { int(i) * &args.xmax / int(args.samples - 1) };
        let v0 = c.h0.eval(&x).map_err(|e| Failure::Verify(e.to_string()))?;
        let v1 = h1.eval(&x).map_err(|e| Failure::Verify(e.to_string()))?;
        let dec = |q: &Rational| rational_decimal(q, DECIMAL_DIGITS);
        w.write_record([dec(&x), dec(&v0), dec(&v1), rational_string(&x), rational_string(&v0), rational_string(&v1)])
            .map_err(io_err)?;
    }
    w.flush().context("writing samples")?;
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let convention = match args.inject_fault {
        None => TiltConvention::Standard,
        Some(Fault::FlippedBeta) => TiltConvention::FlippedBeta,
        Some(Fault::FlippedAlphaSquared) => TiltConvention::FlippedAlphaSquared,
    };
    let r = verify::run(&VerifyOptions { dmax: args.dmax, deep: args.deep, convention });
    io::stdout().lock().write_all(r.summary().as_bytes()).context("writing summary")?;
    match r.first_failure() {
        None => {
            println!("all suites passed");
            Ok(())
        }
        Some((suite, d, msg)) => Err(Failure::Verify(format!("{} failed at d = {d}: {msg}", suite.name()))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Report(a) => report(a),
        Command::Walls(a) => walls(a),
        Command::Plot(a) => plot(a),
        Command::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Usage(m) | Failure::Verify(m) | Failure::Empty(m) => eprintln!("{m}"),
                Failure::Io(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}
