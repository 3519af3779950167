use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bihole::bounds::{
    asymp_avg_bound, avg2_bound, avg_degree_bound, delta_floor_bound, extremal_upper, f2_value,
    f3_window, format_real, parse_rational, profile012_bound, profile01_bound, theorem1_constant,
    BoundValue,
};
use bihole::constructive::{Algorithm, BoundedDegreeSolver, GuaranteedBihole, SolverMode};
use bihole::exact::{max_bihole_with, ExactOptions, DEFAULT_NODE_BUDGET};
use bihole::generate::{gen_extremal_paths, gen_random_bounded, gen_random_edges};
use bihole::harness::sweep::{medians_nondecreasing, sweep_csv};
use bihole::harness::verify::run_algorithm;
use bihole::harness::{
    self, read_graph, render, run_sweep, serialize_graph, ReportFormat, RunConfig, SweepFamily,
    SweepSpec,
};
use bihole::randomized::{bihole_random3, solve_p_fixed_point, SamplingParams};
use bihole::{BipartiteGraph, Error, Rational};

/// `println!` that exits quietly once stdout is closed.
macro_rules! say {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "bihole",
    version,
    about = "Biholes in balanced bipartite graphs"
)]
struct Cli {
    /// Single-threaded exact search (reproducible node counts).
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Maximum bihole by branch and bound.
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Run one construction.
    Construct {
        #[arg(long)]
        alg: Algorithm,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BaseMode::Auto)]
        base: BaseMode,
    },
    /// Run the randomized degree-3 pipeline.
    Rand3 {
        file: PathBuf,
        #[arg(long, value_parser = parse_rational_arg, default_value = "1/10")]
        epsilon: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SamplingParams::DEFAULT_MAX_RETRIES)]
        max_retries: usize,
        #[arg(long, value_enum, default_value_t = BaseMode::Auto)]
        base: BaseMode,
    },
    /// Verify a corpus described by a config file.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Report format.
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
        /// Report path; overrides the config's `output`.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Achieved order ratios over a range of sizes.
    Sweep(SweepArgs),
    /// Evaluate a bound formula.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseMode {
    Auto,
    Certified,
    Heuristic,
}

impl BaseMode {
    fn solver(self) -> BoundedDegreeSolver {
        let mode = match self {
            BaseMode::Auto => SolverMode::Auto,
            BaseMode::Certified => SolverMode::Certified,
            BaseMode::Heuristic => SolverMode::Heuristic,
        };
        BoundedDegreeSolver {
            mode,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ExtremalPaths,
    RandomDelta,
    RandomEdges,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Parameter of the extremal family.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    /// Edge probability for random-delta.
    #[arg(long, value_parser = parse_rational_arg, default_value = "1")]
    p: Rational,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Family::RandomDelta)]
    family: Family,
    #[arg(long, default_value_t = 3)]
    delta: usize,
    #[arg(long, value_parser = parse_rational_arg, default_value = "1")]
    p: Rational,
    /// Average degree for random-edges.
    #[arg(long, value_parser = parse_rational_arg, default_value = "2")]
    d: Rational,
    /// Sizes, e.g. `500,1000,2000,5000`.
    #[arg(long, default_value = "500,1000,2000,5000")]
    sizes: String,
    /// Seeds, e.g. `0..20`.
    #[arg(long, default_value = "0..20")]
    seeds: String,
    #[arg(long, default_value = "rand3")]
    alg: Algorithm,
    #[arg(long, value_parser = parse_rational_arg, default_value = "1/10")]
    epsilon: Rational,
    #[arg(long, value_enum, default_value_t = BaseMode::Auto)]
    base: BaseMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// One of f2, delta-floor, avg-degree, avg2, profile01, profile012,
    /// extremal-upper, f3-window, asymp-avg, theorem1, p.
    #[arg(long)]
    formula: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    delta: Option<usize>,
    #[arg(long, value_parser = parse_rational_arg)]
    d: Option<Rational>,
    #[arg(long)]
    n0: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, value_parser = parse_rational_arg)]
    epsilon: Option<Rational>,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failure of a subcommand, mapped to an exit status.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuaranteeViolated { .. } | Error::RetriesExhausted(_) => {
                Failure::Check(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn emit(out: Option<&PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn print_bihole(r: &GuaranteedBihole, g: &BipartiteGraph) {
    say!(
        "order={} guarantee={} valid={}",
        r.order(),
        bihole::bounds::format_rational(r.guarantee),
        r.bihole.is_valid_in(g)
    );
    say!("s={}", join(r.bihole.s()));
    say!("t={}", join(r.bihole.t()));
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let g = match a.family {
        Family::ExtremalPaths => gen_extremal_paths(need(a.i, "i")?)?,
        Family::RandomDelta => {
            gen_random_bounded(need(a.n, "n")?, need(a.delta, "delta")?, a.p, a.seed)?
        }
        Family::RandomEdges => gen_random_edges(need(a.n, "n")?, need(a.m, "m")?, a.seed)?,
    };
    emit(a.out.as_ref(), &serialize_graph(&g))
}

fn cmd_exact(
    file: PathBuf,
    budget: u64,
    time_limit: Option<f64>,
    deterministic: bool,
) -> CmdResult {
    let g = read_graph(&file)?;
    let threads = if deterministic {
        1
    } else {
        harness::worker_count()
    };
    let opts = ExactOptions {
        budget,
        time_limit: time_limit.map(Duration::from_secs_f64),
        threads,
        ..Default::default()
    };
    let r = max_bihole_with(&g, &opts);
    say!("order={} optimal={}", r.order, r.optimal);
    say!("s={}", join(r.witness.s()));
    say!("t={}", join(r.witness.t()));
    say!("nodes={}", r.nodes_explored);
    Ok(())
}

fn cmd_construct(alg: Algorithm, file: PathBuf, base: BaseMode) -> CmdResult {
    let g = read_graph(&file)?;
    if alg == Algorithm::Rand3 {
        return Err(Failure::Usage(
            "use the rand3 subcommand for the randomized pipeline".into(),
        ));
    }
    let cfg = RunConfig {
        base: base.solver(),
        ..Default::default()
    };
    let (r, _) = run_algorithm(alg, &g, &cfg)?;
    print_bihole(&r, &g);
    Ok(())
}

fn cmd_rand3(
    file: PathBuf,
    epsilon: Rational,
    seed: u64,
    max_retries: usize,
    base: BaseMode,
) -> CmdResult {
    let g = read_graph(&file)?;
    let mut params = SamplingParams::new(epsilon, seed)?;
    params.max_retries = max_retries;
    match bihole_random3(&g, &params, &base.solver()) {
        Ok((r, t)) => {
            print_bihole(&r, &g);
            say!(
                "transcript={}",
                serde_json::to_string(&t).expect("plain struct")
            );
            Ok(())
        }
        Err(Error::RetriesExhausted(t)) => {
            say!(
                "transcript={}",
                serde_json::to_string(&*t).expect("plain struct")
            );
            Err(Failure::Check(format!(
                "sampling not accepted after {} retries",
                t.retries_used
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(
    config: PathBuf,
    out: OutFormat,
    output: Option<PathBuf>,
    deterministic: bool,
) -> CmdResult {
    let mut cfg = RunConfig::load(&config)?;
    if deterministic {
        cfg.exact_threads = 1;
    }
    let (records, summary) = harness::run_verification(&cfg, harness::worker_count())?;
    let format = match out {
        OutFormat::Csv => ReportFormat::Csv,
        OutFormat::Json => ReportFormat::Json,
    };
    let text = render(&records, summary, format)?;
    emit(output.as_ref().or(cfg.output.as_ref()), &text)?;
    eprintln!(
        "records={} pass={} fail={} skip={}",
        summary.records, summary.pass, summary.fail, summary.skip
    );
    if summary.fail > 0 {
        return Err(Failure::Check(format!("{} check(s) failed", summary.fail)));
    }
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> CmdResult {
    use bihole::harness::config::parse_int_list;
    let family = match a.family {
        Family::RandomDelta => SweepFamily::RandomDelta {
            delta: a.delta,
            p: a.p,
        },
        Family::RandomEdges => SweepFamily::RandomEdges { d: a.d },
        Family::ExtremalPaths => {
            return Err(Failure::Usage("sweep supports random families only".into()))
        }
    };
    let spec = SweepSpec {
        family,
        sizes: parse_int_list(&a.sizes).map_err(Failure::Usage)?,
        seeds: parse_int_list(&a.seeds).map_err(Failure::Usage)?,
        algorithm: a.alg,
        epsilon: a.epsilon,
        base: a.base.solver(),
    };
    let points = run_sweep(&spec, harness::worker_count())?;
    emit(a.out.as_ref(), &sweep_csv(&points))?;
    eprintln!(
        "median ratio non-decreasing: {}",
        medians_nondecreasing(&points, 0.0)
    );
    Ok(())
}

fn print_bound(b: BoundValue) {
    let mut line = b.value.to_string();
    if !b.applicable {
        line.push_str(" (not applicable)");
    }
    if b.asymptotic {
        line.push_str(" (asymptotic)");
    }
    say!("{line}");
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    match a.formula.as_str() {
        "f2" => print_bound(f2_value(need(a.n, "n")?)),
        "delta-floor" => print_bound(delta_floor_bound(need(a.n, "n")?, need(a.delta, "delta")?)),
        "avg-degree" => print_bound(avg_degree_bound(need(a.n, "n")?, need(a.d, "d")?)),
        "avg2" => print_bound(avg2_bound(need(a.n, "n")?)),
        "profile01" => print_bound(profile01_bound(need(a.n0, "n0")?, need(a.n1, "n1")?)),
        "profile012" => print_bound(profile012_bound(
            need(a.n0, "n0")?,
            need(a.n1, "n1")?,
            need(a.n2, "n2")?,
        )),
        "extremal-upper" => print_bound(extremal_upper(need(a.i, "i")?)),
        "asymp-avg" => {
            let d = need(a.d, "d")?;
            print_bound(asymp_avg_bound(
                need(a.n, "n")?,
                *d.numer() as f64 / *d.denom() as f64,
            ));
        }
        "f3-window" => {
            let w = f3_window(need(a.n, "n")?);
            say!(
                "{} {} {} (asymptotic)",
                format_real(w.lower_old),
                format_real(w.lower_new),
                format_real(w.upper)
            );
        }
        "theorem1" => say!(
            "{}",
            format_real(theorem1_constant(a.epsilon.unwrap_or_default())?)
        ),
        "p" => say!("{}", format_real(solve_p_fixed_point(1e-12))),
        other => return Err(Failure::Usage(format!("unknown formula {other:?}"))),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let deterministic = cli.deterministic;
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Exact {
            file,
            budget,
            time_limit,
        } => cmd_exact(file, budget, time_limit, deterministic),
        Command::Construct { alg, file, base } => cmd_construct(alg, file, base),
        Command::Rand3 {
            file,
            epsilon,
            seed,
            max_retries,
            base,
        } => cmd_rand3(file, epsilon, seed, max_retries, base),
        Command::Verify {
            config,
            out,
            output,
        } => cmd_verify(config, out, output, deterministic),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Bounds(a) => cmd_bounds(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
