//! `relcur` command-line tool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use relcur::decomp::{columns_for_cx, cur_boost_trials, cx_boost_trials, rows_for_cur, LowRankProblem};
use relcur::eval::{run_eval, EvalConfig};
use relcur::io::{load_matrix, matrix_to_string, save_matrix, MatrixFormat};
use relcur::linalg::frobenius_norm;
use relcur::matmul::{approx_multiply, column_norm_probs, optimal_product_probs};
use relcur::regression::{diagnostics, epsilon_for_rows, exact_regression, sampled_regression};
use relcur::synth::{synth, Spectrum, SynthSpec};
use relcur::{CurResult, CxResult, DenseMatrix, Error, Method, RegressionDiagnostics, SamplingPlan};

#[derive(Parser)]
#[command(name = "relcur", version, about = "Column/row sampling matrix decompositions")]
struct Cli {
    /// More log output (-v info, -vv debug)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a matrix with a prescribed spectrum plus Gaussian noise
    Synth(SynthArgs),
    /// Sample columns and report ‖A − CC⁺A‖_F
    Cx(CxArgs),
    /// Sample columns, then rows, and report ‖A − CUR‖_F
    Cur(CurArgs),
    /// Solve min ‖AX − B‖_F on a sample of rows
    Regress(RegressArgs),
    /// Approximate AB by sampled column/row outer products
    Matmul(MatmulArgs),
    /// Sweep the number of columns and report reconstruction ratios
    Eval(EvalArgs),
    /// Rewrite a matrix file in another format
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// c i.i.d. draws (duplicates possible)
    Exactly,
    /// Independent inclusion with probability min(1, c·p)
    Expected,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exactly => Method::Exactly,
            MethodArg::Expected => Method::Expected,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbsArg {
    /// p_i ∝ ‖A column i‖·‖B row i‖
    Optimal,
    /// p_i ∝ ‖A column i‖²
    ColumnNorm,
}

#[derive(Args)]
struct Common {
    /// Sampling scheme
    #[arg(long, value_enum, default_value = "expected")]
    method: MethodArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Matrix file format: auto, mtx, coordinate or csv
    #[arg(long, default_value = "auto")]
    format: MatrixFormat,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long)]
    rank: usize,
    /// flat, geometric:<ratio> or custom:<v1>,<v2>,...
    #[arg(long, default_value = "flat")]
    spectrum: Spectrum,
    /// Frobenius norm of the added noise
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format; auto follows the file extension
    #[arg(long, default_value = "auto")]
    format: MatrixFormat,
    /// Matrix file to write (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Input format
    #[arg(long, default_value = "auto")]
    from: MatrixFormat,
    /// Output format; auto follows the file extension
    #[arg(long, default_value = "auto")]
    to: MatrixFormat,
}

#[derive(Args)]
struct CxArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Columns to sample [default: 3k]
    #[arg(long)]
    c: Option<usize>,
    /// Target relative error, used for the worst-case sample sizes
    #[arg(long)]
    epsilon: Option<f64>,
    /// Use the worst-case sample sizes implied by --epsilon
    #[arg(long, requires = "epsilon")]
    theoretical: bool,
    /// Keep the best of ln(1/δ) independent trials
    #[arg(long)]
    delta: Option<f64>,
    /// Also compute the rank-k restricted approximation error
    #[arg(long)]
    rank_k: bool,
    /// Write the sampled columns C to this matrix file
    #[arg(long)]
    save_c: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CurArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Columns to sample [default: 3k]
    #[arg(long)]
    c: Option<usize>,
    /// Rows to sample [default: 2c]
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Use the worst-case sample sizes implied by --epsilon
    #[arg(long, requires = "epsilon")]
    theoretical: bool,
    /// Keep the best of ln(2/δ) trials in each stage
    #[arg(long)]
    delta: Option<f64>,
    /// Write C.mtx, U.mtx and R.mtx into this directory
    #[arg(long)]
    save_factors: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RegressArgs {
    /// Constraint matrix A
    #[arg(long)]
    a: PathBuf,
    /// Right-hand sides B
    #[arg(long)]
    b: PathBuf,
    /// Rank of A used to build the row probabilities [default: numerical rank]
    #[arg(long)]
    k: Option<usize>,
    /// Rows to sample [default: 20k]
    #[arg(long)]
    r: Option<usize>,
    /// ε for the reported coefficient bounds [default: implied by r]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Solve the full problem only
    #[arg(long)]
    exact: bool,
    /// Write the solution X to this matrix file
    #[arg(long)]
    save_x: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct MatmulArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Column/row pairs to sample
    #[arg(long)]
    c: usize,
    #[arg(long, value_enum, default_value = "optimal")]
    probs: ProbsArg,
    /// Independent repetitions
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Form the exact product and report the errors
    #[arg(long)]
    exact: bool,
    /// Write the first approximate product to this matrix file
    #[arg(long)]
    save_product: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Column counts to sweep, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<usize>,
    /// Decompositions per repetition group (minimum kept)
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Repetition groups per column count (averaged)
    #[arg(long, default_value_t = 10)]
    groups: usize,
    /// Rows sampled per sampled column
    #[arg(long, default_value_t = 2.0)]
    r_multiplier: f64,
    /// Also write the sweep as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Record wall-clock times (makes the report non-reproducible)
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
struct PlanSummary<'a> {
    method: Method,
    seed: u64,
    requested: usize,
    selected: usize,
    attempt: u32,
    indices: &'a [usize],
    scales: &'a [f64],
}

impl<'a> From<&'a SamplingPlan> for PlanSummary<'a> {
    fn from(p: &'a SamplingPlan) -> Self {
        Self {
            method: p.method,
            seed: p.seed,
            requested: p.c_requested,
            selected: p.len(),
            attempt: p.attempt,
            indices: &p.indices,
            scales: &p.scales,
        }
    }
}

#[derive(Serialize)]
struct Boosting {
    delta: f64,
    trials: usize,
    column_errors: Vec<f64>,
    best_column_trial: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    row_errors: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_row_trial: Option<usize>,
}

#[derive(Serialize)]
struct CxReport<'a> {
    input: String,
    rows: usize,
    cols: usize,
    k: usize,
    c: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_case_columns: Option<f64>,
    columns: PlanSummary<'a>,
    error_frob: f64,
    projected_rank_k_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_rank_k_frob: Option<f64>,
    best_rank_k_error: f64,
    theta1: f64,
    theta2: f64,
    zero_denominator: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    boosting: Option<Boosting>,
}

#[derive(Serialize)]
struct CurReport<'a> {
    input: String,
    rows: usize,
    cols: usize,
    k: usize,
    c: usize,
    r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_case_columns: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_case_rows: Option<f64>,
    columns: PlanSummary<'a>,
    rows_sampled: PlanSummary<'a>,
    error_frob: f64,
    cx_error_frob: f64,
    best_rank_k_error: f64,
    theta1: f64,
    theta2: f64,
    theta3: f64,
    zero_denominator: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    boosting: Option<Boosting>,
}

#[derive(Serialize)]
struct RegressReport<'a> {
    a: String,
    b: String,
    rows: usize,
    cols: usize,
    rhs: usize,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    residual_frob: f64,
    optimal_residual_frob: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampled_residual_frob: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampled_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    plan: Option<PlanSummary<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<RegressionDiagnostics>,
}

#[derive(Serialize)]
struct MatmulReport {
    a: String,
    b: String,
    c: usize,
    probs: &'static str,
    method: Method,
    seed: u64,
    trials: usize,
    bound: f64,
    sample_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    errors: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_product_frob: Option<f64>,
}

fn load(path: &Path, format: MatrixFormat) -> anyhow::Result<DenseMatrix> {
    load_matrix(path, format).with_context(|| format!("cannot load {}", path.display()))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let text = relcur::json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn save(m: &DenseMatrix, path: &Path) -> anyhow::Result<()> {
    save_matrix(m, path, MatrixFormat::Auto).with_context(|| format!("cannot write {}", path.display()))
}

fn ceil_count(x: f64, what: &str) -> anyhow::Result<usize> {
    if !(x.is_finite() && x < usize::MAX as f64) {
        bail!("{what} {x} is too large");
    }
    Ok(x.ceil() as usize)
}

/// Column count from `--c`, the worst-case formula, or the 3k default.
fn column_count(c: Option<usize>, k: usize, epsilon: Option<f64>, theoretical: bool) -> anyhow::Result<usize> {
    if theoretical {
        if c.is_some() {
            bail!("--c and --theoretical are mutually exclusive");
        }
        let eps = epsilon.expect("clap enforces --epsilon");
        return ceil_count(columns_for_cx(k, eps), "worst-case column count");
    }
    Ok(c.unwrap_or(3 * k))
}

fn check_epsilon(epsilon: Option<f64>) -> anyhow::Result<()> {
    if let Some(e) = epsilon {
        if !(e > 0.0 && e.is_finite()) {
            bail!(Error::InvalidInput(format!("epsilon {e} must be positive")));
        }
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> anyhow::Result<()> {
    let spec = SynthSpec {
        rows: args.rows,
        cols: args.cols,
        target_rank: args.rank,
        spectrum: args.spectrum,
        noise_level: args.noise,
        seed: args.seed,
    };
    let a = synth(&spec)?;
    match args.out {
        Some(path) => save_matrix(&a, &path, args.format)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{}", matrix_to_string(&a, args.format)),
    }
    Ok(())
}

fn cx_report<'a>(
    input: &Path,
    a: &DenseMatrix,
    c: usize,
    worst: Option<f64>,
    res: &'a CxResult,
    boosting: Option<Boosting>,
) -> CxReport<'a> {
    CxReport {
        input: input.display().to_string(),
        rows: a.rows(),
        cols: a.cols(),
        k: res.k,
        c,
        worst_case_columns: worst,
        columns: (&res.plan).into(),
        error_frob: res.error_frob,
        projected_rank_k_error: res.projected_rank_k_error,
        error_rank_k_frob: res.error_rank_k_frob,
        best_rank_k_error: res.best_rank_k_error,
        theta1: res.theta1,
        theta2: res.theta2,
        zero_denominator: res.zero_denominator,
        boosting,
    }
}

fn cmd_cx(args: CxArgs) -> anyhow::Result<()> {
    check_epsilon(args.epsilon)?;
    let a = load(&args.input, args.common.format)?;
    let c = column_count(args.c, args.k, args.epsilon, args.theoretical)?;
    let method = args.common.method.into();
    let problem = LowRankProblem::new(&a, args.k)?;
    let worst = args.epsilon.map(|e| columns_for_cx(args.k, e));

    let (mut res, boosting) = match args.delta {
        Some(delta) => {
            let b = problem.boosted_cx(c, method, delta, args.common.seed)?;
            let info = Boosting {
                delta,
                trials: cx_boost_trials(delta)?,
                column_errors: b.column_errors,
                best_column_trial: b.best_column_trial,
                row_errors: Vec::new(),
                best_row_trial: None,
            };
            (b.best, Some(info))
        }
        None => (problem.cx(c, method, args.common.seed)?, None),
    };
    if args.rank_k {
        let approx = problem.rank_k_approximation(&res.c)?;
        res.error_rank_k_frob = Some(frobenius_norm(&a.sub(&approx)));
    }
    if let Some(path) = &args.save_c {
        save(&res.c, path)?;
    }
    emit(&cx_report(&args.input, &a, c, worst, &res, boosting), args.common.out.as_deref())
}

fn cmd_cur(args: CurArgs) -> anyhow::Result<()> {
    check_epsilon(args.epsilon)?;
    let a = load(&args.input, args.common.format)?;
    let c = column_count(args.c, args.k, args.epsilon, args.theoretical)?;
    let r = match (args.r, args.theoretical) {
        (Some(_), true) => bail!("--r and --theoretical are mutually exclusive"),
        (Some(r), false) => r,
        (None, true) => ceil_count(rows_for_cur(c, args.epsilon.expect("clap enforces --epsilon")), "worst-case row count")?,
        (None, false) => 2 * c,
    };
    let method = args.common.method.into();
    let problem = LowRankProblem::new(&a, args.k)?;

    let (res, boosting): (CurResult, _) = match args.delta {
        Some(delta) => {
            let b = problem.boosted_cur(c, r, method, delta, args.common.seed)?;
            let info = Boosting {
                delta,
                trials: cur_boost_trials(delta)?,
                column_errors: b.column_errors,
                best_column_trial: b.best_column_trial,
                row_errors: b.row_errors,
                best_row_trial: Some(b.best_row_trial),
            };
            (b.best, Some(info))
        }
        None => (problem.cur(c, r, method, args.common.seed)?, None),
    };
    if let Some(dir) = &args.save_factors {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        save(&res.cx.c, &dir.join("C.mtx"))?;
        save(&res.u, &dir.join("U.mtx"))?;
        save(&res.r, &dir.join("R.mtx"))?;
    }
    let report = CurReport {
        input: args.input.display().to_string(),
        rows: a.rows(),
        cols: a.cols(),
        k: res.cx.k,
        c,
        r,
        worst_case_columns: args.epsilon.map(|e| columns_for_cx(args.k, e)),
        worst_case_rows: args.epsilon.map(|e| rows_for_cur(c, e)),
        columns: (&res.cx.plan).into(),
        rows_sampled: (&res.row_plan).into(),
        error_frob: res.error_frob,
        cx_error_frob: res.cx.error_frob,
        best_rank_k_error: res.cx.best_rank_k_error,
        theta1: res.cx.theta1,
        theta2: res.cx.theta2,
        theta3: res.theta3,
        zero_denominator: res.cx.zero_denominator,
        boosting,
    };
    emit(&report, args.common.out.as_deref())
}

fn cmd_regress(args: RegressArgs) -> anyhow::Result<()> {
    check_epsilon(args.epsilon)?;
    let a = load(&args.a, args.common.format)?;
    let b = load(&args.b, args.common.format)?;
    let exact = exact_regression(&a, &b)?;
    let k = match args.k {
        Some(k) => k,
        None => relcur::linalg::rank(&a, relcur::linalg::DEFAULT_RANK_TOL)?.max(1),
    };

    let sampled = if args.exact {
        None
    } else {
        let r = args.r.unwrap_or(20 * k);
        Some((r, sampled_regression(&a, &b, k, r, args.common.method.into(), args.common.seed)?))
    };
    let solution = sampled.as_ref().map_or(&exact, |(_, s)| s);
    if let Some(path) = &args.save_x {
        save(&solution.x, path)?;
    }
    let diag = match &sampled {
        Some((r, s)) => {
            let eps = args.epsilon.unwrap_or_else(|| epsilon_for_rows(k, 1.0, *r));
            Some(diagnostics(&a, &b, k, s, eps)?)
        }
        None => None,
    };
    let report = RegressReport {
        a: args.a.display().to_string(),
        b: args.b.display().to_string(),
        rows: a.rows(),
        cols: a.cols(),
        rhs: b.cols(),
        exact: args.exact,
        k: sampled.as_ref().map(|_| k),
        r: sampled.as_ref().map(|(r, _)| *r),
        residual_frob: solution.residual_frob,
        optimal_residual_frob: exact.residual_frob,
        sampled_residual_frob: solution.sampled_residual_frob,
        sampled_rank: solution.sampled_rank,
        plan: solution.plan.as_ref().map(Into::into),
        diagnostics: diag,
    };
    emit(&report, args.common.out.as_deref())
}

fn cmd_matmul(args: MatmulArgs) -> anyhow::Result<()> {
    if args.trials == 0 {
        bail!(Error::InvalidInput("--trials must be at least 1".into()));
    }
    let a = load(&args.a, args.common.format)?;
    let b = load(&args.b, args.common.format)?;
    let (probs, name) = match args.probs {
        ProbsArg::Optimal => (optimal_product_probs(&a, &b)?, "optimal"),
        ProbsArg::ColumnNorm => (column_norm_probs(&a)?, "column-norm"),
    };
    let method: Method = args.common.method.into();
    let exact = args.exact.then(|| a.matmul(&b));
    let mut sizes = Vec::with_capacity(args.trials);
    let mut errors = Vec::with_capacity(args.trials);
    let mut bound = 0.0;
    for t in 0..args.trials {
        let seed = relcur::rng::derive_seed(args.common.seed, t as u64);
        let res = approx_multiply(&a, &b, args.c, &probs, method, seed, false)?;
        bound = res.bound;
        sizes.push(res.plan.len());
        if let Some(ab) = &exact {
            errors.push(frobenius_norm(&ab.sub(&res.product)));
        }
        if t == 0 {
            if let Some(path) = &args.save_product {
                save(&res.product, path)?;
            }
        }
    }
    let mean_error = exact.as_ref().map(|_| errors.iter().sum::<f64>() / errors.len() as f64);
    let report = MatmulReport {
        a: args.a.display().to_string(),
        b: args.b.display().to_string(),
        c: args.c,
        probs: name,
        method,
        seed: args.common.seed,
        trials: args.trials,
        bound,
        sample_sizes: sizes,
        errors: exact.as_ref().map(|_| errors),
        mean_error,
        exact_product_frob: exact.as_ref().map(frobenius_norm),
    };
    emit(&report, args.common.out.as_deref())
}

fn cmd_eval(args: EvalArgs) -> anyhow::Result<()> {
    let a = load(&args.input, args.common.format)?;
    let cfg = EvalConfig {
        k: args.k,
        c_values: args.c,
        trials: args.trials,
        groups: args.groups,
        method: args.common.method.into(),
        r_multiplier: args.r_multiplier,
        seed: args.common.seed,
    };
    let report = run_eval(&a, &args.input.display().to_string(), &cfg, args.timing)?;
    if let Some(path) = &args.csv {
        fs::write(path, report.to_csv()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    emit(&report, args.common.out.as_deref())
}

fn cmd_convert(args: ConvertArgs) -> anyhow::Result<()> {
    let a = load(&args.input, args.from)?;
    save_matrix(&a, &args.out, args.to).with_context(|| format!("cannot write {}", args.out.display()))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Synth(a) => cmd_synth(a),
        Command::Cx(a) => cmd_cx(a),
        Command::Cur(a) => cmd_cur(a),
        Command::Regress(a) => cmd_regress(a),
        Command::Matmul(a) => cmd_matmul(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Convert(a) => cmd_convert(a),
    }
}

/// 2 for bad input, 3 for numerical failure, 4 for an exhausted Expected(c) sampler.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Numerical(_)) => 3,
        Some(Error::EmptySample { .. }) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kind() {
        let code = |e: Error| exit_code(&anyhow::Error::new(e).context("while running"));
        assert_eq!(code(Error::InvalidInput("x".into())), 2);
        assert_eq!(code(Error::Parse { line: 1, column: 1, message: "x".into() }), 2);
        assert_eq!(code(Error::Numerical("x".into())), 3);
        assert_eq!(code(Error::EmptySample { attempts: 16 }), 4);
        assert_eq!(exit_code(&anyhow::anyhow!("other")), 2);
    }

    #[test]
    fn default_column_count_is_three_k() {
        assert_eq!(column_count(None, 4, None, false).unwrap(), 12);
        assert_eq!(column_count(Some(5), 4, None, false).unwrap(), 5);
        assert_eq!(column_count(None, 2, Some(0.5), true).unwrap(), 51_200);
        assert!(column_count(Some(5), 2, Some(0.5), true).is_err());
    }
}
