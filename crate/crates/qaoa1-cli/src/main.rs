//! Command-line harness for the `qaoa1` library.
//!
//! Subcommands cover instance generation, landscape export, frequency
//! plans, parameter tuning, recursive solving, ensemble experiments, and a
//! built-in self-verification suite. Every run is reproducible from the
//! command line plus the seed; reports embed the full configuration.
//!
//! Exit codes: 0 success, 2 usage error, 3 capacity exceeded, 4 numerical
//! failure.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qaoa1::analytic::{build_index, Evaluator, NeighborhoodIndex, QaoaAngles};
use qaoa1::ising::{
    eliminate_fields, from_qubo, generate_d_regular, generate_erdos_renyi, load_model, save_model,
    with_random_fields, IsingModel, QuboModel, SpinAssignment, WeightDist,
};
use qaoa1::optimize::{
    gradient_descent_near_zero, line_search, line_search_coarse, subdivision_optimize, Method,
    OptimizationResult,
};
use qaoa1::oracle::{
    approximation_ratio, brute_force, statevector_correlators, statevector_expectation,
};
use qaoa1::recursive::{correlators, iter_qaoa, rqaoa, FieldStrategy, Tuner, TunerMethod};
use qaoa1::report::{weight_class_label, PlanSummary, SolverReport};
use qaoa1::spectral::{sample_landscape, sampling_plan, BetaPolicy};
use qaoa1::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qaoa1",
    about = "Closed-form level-1 QAOA toolkit for weighted Ising models",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random Ising instance and write it as an edge list.
    Generate {
        /// Output model file.
        #[arg(long)]
        out: PathBuf,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Graph family.
        #[arg(long, value_enum, default_value_t = Family::Er)]
        graph: Family,
        /// Edge probability (Erdős–Rényi family).
        #[arg(long)]
        p: Option<f64>,
        /// Vertex degree (regular family).
        #[arg(long)]
        degree: Option<usize>,
        /// Coupling distribution: pm1, int:LO:HI, or gauss:MEAN:VAR.
        #[arg(long, default_value = "pm1")]
        weights: String,
        /// External-field distribution (same syntax); omitted = no fields.
        #[arg(long)]
        fields: Option<String>,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample the γ landscape of a model to CSV.
    Landscape {
        /// Input model file.
        #[arg(long)]
        model: PathBuf,
        /// β policy: "optimal" (analytic elimination) or "fixed:VALUE".
        #[arg(long, default_value = "optimal")]
        beta_policy: String,
        /// Override the number of rows (default: the alias-free count).
        #[arg(long)]
        samples: Option<usize>,
        /// Output CSV file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the frequency bound and sampling plan of a model as JSON.
    Maxfreq {
        /// Input model file.
        #[arg(long)]
        model: PathBuf,
    },
    /// Tune (γ*, β*) on a model and print a solver report as JSON.
    Tune {
        /// Input model file.
        #[arg(long)]
        model: PathBuf,
        /// Optimizer.
        #[arg(long, value_enum, default_value_t = MethodFlag::Line)]
        method: MethodFlag,
        /// Subdivision tolerance on the squared cost.
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        /// Fixed sample count for the line search (default: alias-free).
        #[arg(long)]
        samples: Option<usize>,
        /// Skip local refinement after the line search.
        #[arg(long)]
        no_refine: bool,
        /// How models with fields are tuned.
        #[arg(long, value_enum, default_value_t = StrategyFlag::Native)]
        field_strategy: StrategyFlag,
        /// Seed echoed into the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report JSON to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a model (recursive elimination or brute force).
    Solve {
        /// Input model file.
        #[arg(long)]
        model: PathBuf,
        /// Solver.
        #[arg(long, value_enum, default_value_t = SolverFlag::Rqaoa)]
        solver: SolverFlag,
        /// Elimination steps before the exhaustive remainder solve.
        #[arg(long, default_value_t = 0)]
        steps: usize,
        /// Per-step tuner.
        #[arg(long, value_enum, default_value_t = MethodFlag::Line)]
        method: MethodFlag,
        /// Subdivision tolerance on the squared cost.
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        /// Fixed sample count for the line search (default: alias-free).
        #[arg(long)]
        samples: Option<usize>,
        /// Skip local refinement after the line search.
        #[arg(long)]
        no_refine: bool,
        /// How models with fields are tuned.
        #[arg(long, value_enum, default_value_t = StrategyFlag::Native)]
        field_strategy: StrategyFlag,
        /// Seed echoed into the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the spin assignment here (one ±1 per line).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the replayable reduction trace here as JSON.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Run a two-optimizer ensemble experiment and aggregate the results.
    Experiment {
        /// Graph family.
        #[arg(long, value_enum, default_value_t = Family::Er)]
        family: Family,
        /// Number of vertices per instance.
        #[arg(long)]
        n: usize,
        /// Number of instances.
        #[arg(long)]
        count: usize,
        /// Edge probability (Erdős–Rényi family).
        #[arg(long)]
        p: Option<f64>,
        /// Vertex degree (regular family).
        #[arg(long)]
        degree: Option<usize>,
        /// Coupling distribution: pm1, int:LO:HI, or gauss:MEAN:VAR.
        #[arg(long, default_value = "pm1")]
        weights: String,
        /// External-field distribution (same syntax); omitted = no fields.
        #[arg(long)]
        fields: Option<String>,
        /// Instance i uses seed seed_base + i.
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        /// Output JSON file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in oracle-equivalence suite.
    Verify,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Er,
    Regular,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodFlag {
    Gradient,
    Line,
    Subdivision,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum StrategyFlag {
    Native,
    EliminateFirst,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SolverFlag {
    Rqaoa,
    Iter,
    Brute,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Input(_) | Error::Parse { .. } => 2,
                Error::Capacity(_) => 3,
                Error::Numeric(_) | Error::Domain(_) | Error::UnsupportedCase(_) => 4,
                Error::Io(_) => 1,
            })
        }
    }
}

/// Caps the worker pool at QAOA1_THREADS when the variable is set.
fn init_thread_pool() {
    let Ok(raw) = std::env::var("QAOA1_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(k) if k > 0 => {
            if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
                log::warn!("could not size the worker pool: {err}");
            }
        }
        _ => log::warn!("ignoring QAOA1_THREADS={raw:?}: expected a positive integer"),
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate { out, n, graph, p, degree, weights, fields, seed } => {
            cmd_generate(&out, n, graph, p, degree, &weights, fields.as_deref(), seed)
        }
        Command::Landscape { model, beta_policy, samples, out } => {
            cmd_landscape(&model, &beta_policy, samples, out.as_deref())
        }
        Command::Maxfreq { model } => cmd_maxfreq(&model),
        Command::Tune {
            model,
            method,
            epsilon,
            samples,
            no_refine,
            field_strategy,
            seed,
            out,
        } => cmd_tune(
            &model,
            method,
            epsilon,
            samples,
            !no_refine,
            field_strategy,
            seed,
            out.as_deref(),
        ),
        Command::Solve {
            model,
            solver,
            steps,
            method,
            epsilon,
            samples,
            no_refine,
            field_strategy,
            seed,
            out,
            trace_out,
        } => cmd_solve(
            &model,
            solver,
            steps,
            method,
            epsilon,
            samples,
            !no_refine,
            field_strategy,
            seed,
            out.as_deref(),
            trace_out.as_deref(),
        ),
        Command::Experiment {
            family,
            n,
            count,
            p,
            degree,
            weights,
            fields,
            seed_base,
            out,
        } => cmd_experiment(
            family,
            n,
            count,
            p,
            degree,
            &weights,
            fields.as_deref(),
            seed_base,
            out.as_deref(),
        ),
        Command::Verify => cmd_verify(),
    }
}

/// Parses `pm1`, `int:LO:HI`, or `gauss:MEAN:VAR`.
fn parse_dist(text: &str) -> Result<WeightDist> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || {
        Error::Input(format!(
            "unknown weight distribution {text:?}; expected pm1, int:LO:HI, or gauss:MEAN:VAR"
        ))
    };
    match parts.as_slice() {
        ["pm1"] => Ok(WeightDist::PmOne),
        ["int", lo, hi] => {
            let lo = lo.parse::<i64>().map_err(|_| bad())?;
            let hi = hi.parse::<i64>().map_err(|_| bad())?;
            Ok(WeightDist::UniformInt { lo, hi })
        }
        ["gauss", mean, var] => {
            let mean = mean.parse::<f64>().map_err(|_| bad())?;
            let var = var.parse::<f64>().map_err(|_| bad())?;
            Ok(WeightDist::GaussianRounded { mean, var })
        }
        _ => Err(bad()),
    }
}

fn generate_instance(
    family: Family,
    n: usize,
    p: Option<f64>,
    degree: Option<usize>,
    weights: &str,
    fields: Option<&str>,
    seed: u64,
) -> Result<IsingModel> {
    let dist = parse_dist(weights)?;
    let model = match family {
        Family::Er => {
            let p = p.ok_or_else(|| Error::Input("--p is required for --graph er".into()))?;
            generate_erdos_renyi(n, p, &dist, seed)?
        }
        Family::Regular => {
            let d = degree
                .ok_or_else(|| Error::Input("--degree is required for --graph regular".into()))?;
            generate_d_regular(n, d, &dist, seed)?
        }
    };
    match fields {
        // The xor decorrelates the field stream from the coupling stream.
        Some(spec) => with_random_fields(&model, &parse_dist(spec)?, seed ^ 0x5EED_F1E1D5),
        None => Ok(model),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    out: &std::path::Path,
    n: usize,
    graph: Family,
    p: Option<f64>,
    degree: Option<usize>,
    weights: &str,
    fields: Option<&str>,
    seed: u64,
) -> Result<()> {
    let model = generate_instance(graph, n, p, degree, weights, fields, seed)?;
    save_model(&model, out)?;
    eprintln!(
        "wrote {} (n = {}, |E| = {}, {})",
        out.display(),
        model.n(),
        model.edge_count(),
        weight_class_label(model.weight_class())
    );
    Ok(())
}

/// 17-significant-digit float for hand-rolled JSON; non-finite → null.
fn jf(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn jopt(x: Option<f64>) -> String {
    x.map_or_else(|| "null".to_string(), jf)
}

fn plan_comment(plan: &qaoa1::spectral::SamplingPlan) -> String {
    format!(
        "# plan: omega_max={} nu_max={} delta_gamma={} period={} num_samples={}\n",
        jf(plan.omega_max),
        jf(plan.nu_max),
        jf(plan.delta_gamma),
        jopt(plan.period),
        plan.num_samples
            .map_or_else(|| "null".to_string(), |k| k.to_string()),
    )
}

fn write_or_print(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_landscape(
    model_path: &std::path::Path,
    beta_policy: &str,
    samples: Option<usize>,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let model = load_model(model_path)?;
    let index = build_index(&model);
    let mut plan = sampling_plan(&model, &index);
    let default_rows = plan.num_samples;
    if let Some(rows) = samples {
        if rows == 0 {
            return Err(Error::Input("--samples must be positive".into()));
        }
        if let Some(needed) = default_rows {
            if rows < needed {
                log::warn!(
                    "{rows} samples are below the alias-free count {needed}; \
                     the sampled landscape may alias"
                );
            }
        }
        plan.num_samples = Some(rows);
    }
    let policy = match beta_policy.split_once(':') {
        None if beta_policy == "optimal" => BetaPolicy::AnalyticOptimal,
        Some(("fixed", value)) => {
            let beta = value.parse::<f64>().map_err(|_| {
                Error::Input(format!("invalid fixed β value {value:?} in --beta-policy"))
            })?;
            BetaPolicy::Fixed(beta)
        }
        _ => {
            return Err(Error::Input(format!(
                "unknown β policy {beta_policy:?}; expected optimal or fixed:VALUE"
            )))
        }
    };
    let samples = sample_landscape(&model, &plan, policy)?;
    let csv = format!("{}{}", plan_comment(&plan), samples.to_csv());
    write_or_print(out, &csv)
}

fn cmd_maxfreq(model_path: &std::path::Path) -> Result<()> {
    let model = load_model(model_path)?;
    let index = build_index(&model);
    let plan = sampling_plan(&model, &index);
    println!(
        "{{\"schema\":1,\"omega_max\":{},\"nu_max\":{},\"delta_gamma\":{},\
         \"period\":{},\"num_samples\":{}}}",
        jf(plan.omega_max),
        jf(plan.nu_max),
        jf(plan.delta_gamma),
        jopt(plan.period),
        plan.num_samples
            .map_or_else(|| "null".to_string(), |k| k.to_string()),
    );
    Ok(())
}

fn tuner_from_flags(
    method: MethodFlag,
    epsilon: f64,
    samples: Option<usize>,
    refine: bool,
    strategy: StrategyFlag,
) -> Tuner {
    Tuner {
        method: match method {
            MethodFlag::Gradient => TunerMethod::GradientNearZero,
            MethodFlag::Line => TunerMethod::LineSearch { samples, refine },
            MethodFlag::Subdivision => TunerMethod::Subdivision { epsilon },
        },
        field_strategy: match strategy {
            StrategyFlag::Native => FieldStrategy::Native,
            StrategyFlag::EliminateFirst => FieldStrategy::EliminateFirst,
        },
    }
}

fn dispatch_optimizer(
    tuner: &Tuner,
    model: &IsingModel,
    index: &NeighborhoodIndex,
) -> Result<OptimizationResult> {
    let run = |m: &IsingModel, idx: &NeighborhoodIndex| match tuner.method {
        TunerMethod::GradientNearZero => gradient_descent_near_zero(m, idx),
        TunerMethod::LineSearch { samples: None, refine } => line_search(m, idx, refine),
        TunerMethod::LineSearch { samples: Some(k), refine } => line_search_coarse(m, idx, k, refine),
        TunerMethod::Subdivision { epsilon } => subdivision_optimize(m, idx, epsilon),
    };
    match tuner.field_strategy {
        FieldStrategy::Native => run(model, index),
        FieldStrategy::EliminateFirst => {
            let eliminated = eliminate_fields(model);
            let elim_index = build_index(&eliminated);
            run(&eliminated, &elim_index)
        }
    }
}

fn method_label(method: Method) -> &'static str {
    match method {
        Method::Subdivision => "subdivision",
        Method::GradientNearZero => "gradient_near_zero",
        Method::LineSearch => "line_search",
        Method::ClosedForm => "closed_form",
    }
}

/// Approximation ratio of an achieved energy when the instance is small
/// enough to solve exactly; `None` (with a warning) otherwise.
fn ratio_if_feasible(model: &IsingModel, achieved: f64) -> Option<f64> {
    if model.n() > 24 {
        return None;
    }
    match brute_force(model).and_then(|truth| approximation_ratio(achieved, &truth)) {
        Ok(r) => Some(r),
        Err(err) => {
            log::warn!("approximation ratio unavailable: {err}");
            None
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_tune(
    model_path: &std::path::Path,
    method: MethodFlag,
    epsilon: f64,
    samples: Option<usize>,
    refine: bool,
    strategy: StrategyFlag,
    seed: u64,
    out: Option<&std::path::Path>,
) -> Result<()> {
    let started = Instant::now();
    let model = load_model(model_path)?;
    let index = build_index(&model);
    let tuner = tuner_from_flags(method, epsilon, samples, refine, strategy);
    let result = dispatch_optimizer(&tuner, &model, &index)?;
    let angles = QaoaAngles { gamma: result.gamma_star, beta: result.beta_star };
    // Expected energy of the actual model at the tuned angles (the two
    // differ when tuning ran on the field-free equivalent).
    let mut ev = Evaluator::new(&model, &index);
    let expectation = ev.expectation_with_fields(angles);
    let plan = sampling_plan(&model, &index);
    let report = SolverReport {
        n: model.n(),
        edge_count: model.edge_count(),
        weight_class: weight_class_label(model.weight_class()).to_string(),
        seed,
        method: method_label(result.method).to_string(),
        configuration: tuner.label(),
        gamma_star: result.gamma_star,
        beta_star: result.beta_star,
        energy: expectation - model.constant(),
        constant: model.constant(),
        approximation_ratio: ratio_if_feasible(&model, expectation),
        evaluations: result.evaluations,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        plan: PlanSummary::from(&plan),
    };
    let json = report.to_json();
    println!("{json}");
    if let Some(path) = out {
        std::fs::write(path, format!("{json}\n"))?;
    }
    Ok(())
}

fn write_assignment(path: &std::path::Path, assignment: &SpinAssignment) -> Result<()> {
    let mut text = String::with_capacity(3 * assignment.len());
    for &s in assignment.spins() {
        text.push_str(&format!("{s:+}\n"));
    }
    std::fs::write(path, text)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    model_path: &std::path::Path,
    solver: SolverFlag,
    steps: usize,
    method: MethodFlag,
    epsilon: f64,
    samples: Option<usize>,
    refine: bool,
    strategy: StrategyFlag,
    seed: u64,
    out: Option<&std::path::Path>,
    trace_out: Option<&std::path::Path>,
) -> Result<()> {
    let model = load_model(model_path)?;
    let (assignment, trace, report) = match solver {
        SolverFlag::Brute => {
            let started = Instant::now();
            let truth = brute_force(&model)?;
            let index = build_index(&model);
            let plan = sampling_plan(&model, &index);
            let report = SolverReport {
                n: model.n(),
                edge_count: model.edge_count(),
                weight_class: weight_class_label(model.weight_class()).to_string(),
                seed,
                method: "brute_force".to_string(),
                configuration: "exhaustive".to_string(),
                gamma_star: 0.0,
                beta_star: 0.0,
                energy: truth.e_min - model.constant(),
                constant: model.constant(),
                approximation_ratio: Some(1.0),
                evaluations: 0,
                wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
                plan: PlanSummary::from(&plan),
            };
            (truth.argmin.clone(), None, report)
        }
        SolverFlag::Rqaoa | SolverFlag::Iter => {
            let tuner = tuner_from_flags(method, epsilon, samples, refine, strategy);
            let (assignment, trace, report) = if solver == SolverFlag::Rqaoa {
                rqaoa(&model, steps, &tuner, seed)?
            } else {
                iter_qaoa(&model, steps, &tuner, seed)?
            };
            (assignment, Some(trace), report)
        }
    };
    println!("{}", report.to_json());
    if let Some(path) = out {
        write_assignment(path, &assignment)?;
    }
    if let Some(path) = trace_out {
        match &trace {
            Some(trace) => std::fs::write(path, format!("{}\n", trace.to_json()))?,
            None => {
                return Err(Error::Input(
                    "--trace-out requires a recursive solver (rqaoa or iter)".into(),
                ))
            }
        }
    }
    Ok(())
}

struct ExperimentRow {
    seed: u64,
    gamma_gradient: f64,
    gamma_line: f64,
    value_gradient: f64,
    value_line: f64,
    agree: bool,
}

/// Folds γ into the fundamental domain `[0, half]` of an even periodic
/// landscape (mirror optima `{γ, T−γ}` are identified).
fn canonical_gamma(gamma: f64, period: f64) -> f64 {
    let g = gamma.rem_euclid(period);
    g.min(period - g)
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment(
    family: Family,
    n: usize,
    count: usize,
    p: Option<f64>,
    degree: Option<usize>,
    weights: &str,
    fields: Option<&str>,
    seed_base: u64,
    out: Option<&std::path::Path>,
) -> Result<()> {
    use rayon::prelude::*;
    if count == 0 {
        return Err(Error::Input("--count must be positive".into()));
    }
    let rows: Vec<ExperimentRow> = (0..count)
        .into_par_iter()
        .map(|i| -> Result<ExperimentRow> {
            let seed = seed_base + i as u64;
            let model = generate_instance(family, n, p, degree, weights, fields, seed)?;
            let index = build_index(&model);
            let plan = sampling_plan(&model, &index);
            let gradient = gradient_descent_near_zero(&model, &index)?;
            let line = line_search(&model, &index, true)?;
            let agree = match plan.period {
                Some(period) => {
                    let dg = canonical_gamma(gradient.gamma_star, period);
                    let dl = canonical_gamma(line.gamma_star, period);
                    (dg - dl).abs() <= plan.delta_gamma / 2.0
                }
                None => (gradient.gamma_star - line.gamma_star).abs() <= plan.delta_gamma / 2.0,
            };
            Ok(ExperimentRow {
                seed,
                gamma_gradient: gradient.gamma_star,
                gamma_line: line.gamma_star,
                value_gradient: gradient.value,
                value_line: line.value,
                agree,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mismatches = rows.iter().filter(|r| !r.agree).count();
    let (mut sum, mut min, mut max) = (0.0, f64::INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        sum += r.value_line;
        min = min.min(r.value_line);
        max = max.max(r.value_line);
    }
    let mut json = String::with_capacity(256 + 160 * rows.len());
    json.push_str(&format!(
        "{{\"schema\":1,\"family\":\"{}\",\"n\":{n},\"count\":{count},\"p\":{},\
         \"degree\":{},\"weights\":\"{weights}\",\"fields\":{},\"seed_base\":{seed_base},\
         \"instances\":[",
        match family {
            Family::Er => "er",
            Family::Regular => "regular",
        },
        jopt(p),
        degree.map_or_else(|| "null".to_string(), |d| d.to_string()),
        fields.map_or_else(|| "null".to_string(), |f| format!("\"{f}\"")),
    ));
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            json.push(',');
        }
        json.push_str(&format!(
            "{{\"index\":{i},\"seed\":{},\"gamma_gradient\":{},\"gamma_line\":{},\
             \"value_gradient\":{},\"value_line\":{},\"agree\":{}}}",
            r.seed,
            jf(r.gamma_gradient),
            jf(r.gamma_line),
            jf(r.value_gradient),
            jf(r.value_line),
            r.agree,
        ));
    }
    json.push_str(&format!(
        "],\"aggregate\":{{\"value_mean\":{},\"value_min\":{},\"value_max\":{},\
         \"adversarial_fraction\":{}}}}}\n",
        jf(sum / count as f64),
        jf(min),
        jf(max),
        jf(mismatches as f64 / count as f64),
    ));
    write_or_print(out, &json)
}

/// One verification block: prints PASS/FAIL and reports failure upward.
fn verify_block(name: &str, outcome: std::result::Result<String, String>) -> Result<()> {
    match outcome {
        Ok(detail) => {
            println!("verify {name}: PASS ({detail})");
            Ok(())
        }
        Err(detail) => {
            println!("verify {name}: FAIL ({detail})");
            Err(Error::Numeric(format!("verification block {name:?} failed: {detail}")))
        }
    }
}

fn cmd_verify() -> Result<()> {
    // Closed-form expectation vs statevector simulation.
    let equivalence = {
        let mut worst = 0.0f64;
        for k in 0..100u64 {
            let n = 2 + (k % 9) as usize;
            let dist = WeightDist::UniformInt { lo: -5, hi: 5 };
            let mut model = generate_erdos_renyi(n, 0.5, &dist, 1000 + k)?;
            if k % 2 == 1 {
                model = with_random_fields(&model, &dist, 2000 + k)?;
            }
            let index = build_index(&model);
            let mut ev = Evaluator::new(&model, &index);
            let mut rng = ChaCha8Rng::seed_from_u64(3000 + k);
            for _ in 0..5 {
                let angles = QaoaAngles {
                    gamma: rng.random_range(0.0..std::f64::consts::PI),
                    beta: rng.random_range(0.0..std::f64::consts::PI),
                };
                let analytic = ev.expectation_with_fields(angles);
                let simulated = statevector_expectation(&model, angles)?;
                worst = worst.max((analytic - simulated).abs());
            }
        }
        if worst <= 1e-9 {
            Ok(format!("max |Δ| = {worst:.3e} over 500 checks"))
        } else {
            Err(format!("max |Δ| = {worst:.3e} exceeds 1e-9"))
        }
    };
    verify_block("oracle-equivalence", equivalence)?;

    // Closed-form correlators vs statevector correlators.
    let correlator_agreement = {
        let mut worst = 0.0f64;
        for k in 0..10u64 {
            let n = 3 + (k % 6) as usize;
            let dist = WeightDist::UniformInt { lo: -3, hi: 3 };
            let base = generate_erdos_renyi(n, 0.6, &dist, 4000 + k)?;
            let model = with_random_fields(&base, &dist, 5000 + k)?;
            let index = build_index(&model);
            let mut rng = ChaCha8Rng::seed_from_u64(6000 + k);
            for _ in 0..3 {
                let angles = QaoaAngles {
                    gamma: rng.random_range(0.0..std::f64::consts::PI),
                    beta: rng.random_range(0.0..std::f64::consts::PI),
                };
                let (m_i, m_uv) = correlators(&model, &index, angles);
                let sv = statevector_correlators(&model, angles)?;
                for (a, b) in m_i.iter().zip(&sv.z) {
                    worst = worst.max((a - b).abs());
                }
                for ((ea, a), (eb, b)) in m_uv.iter().zip(&sv.zz) {
                    debug_assert_eq!(ea, eb);
                    worst = worst.max((a - b).abs());
                }
            }
        }
        if worst <= 1e-9 {
            Ok(format!("max |Δ| = {worst:.3e} over 30 checks"))
        } else {
            Err(format!("max |Δ| = {worst:.3e} exceeds 1e-9"))
        }
    };
    verify_block("correlator-agreement", correlator_agreement)?;

    // Exact transform identities on integer instances.
    let transforms = {
        let mut rng = ChaCha8Rng::seed_from_u64(7000);
        let mut checks = 0usize;
        let mut failure = None;
        for _ in 0..20 {
            let n = 2 + rng.random_range(0..7usize);
            let mut a = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let w = rng.random_range(-5..=5i64) as f64;
                    a[i * n + j] = w;
                    a[j * n + i] = w;
                }
            }
            let b: Vec<f64> = (0..n).map(|_| rng.random_range(-5..=5i64) as f64).collect();
            let q = QuboModel::new(n, a, b)?;
            let m = from_qubo(&q)?;
            for bits in 0..(1u32 << n) {
                let x: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                let s = SpinAssignment::new(
                    x.iter().map(|&xi| if xi { 1 } else { -1 }).collect(),
                )?;
                if q.objective(&x)? != m.energy(&s)? {
                    failure = Some(format!("objective/energy split on n = {n}"));
                }
                checks += 1;
            }
        }
        for k in 0..20u64 {
            let n = 2 + (k % 7) as usize;
            let dist = WeightDist::UniformInt { lo: -4, hi: 4 };
            let base = generate_erdos_renyi(n, 0.6, &dist, 8000 + k)?;
            let model = with_random_fields(&base, &dist, 9000 + k)?;
            let lifted = eliminate_fields(&model);
            for bits in 0..(1u32 << n) {
                let mut spins: Vec<i8> =
                    (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
                let original = model.energy(&SpinAssignment::new(spins.clone())?)?;
                spins.push(1); // the ancilla is pinned up
                let embedded = lifted.energy(&SpinAssignment::new(spins)?)?;
                if original != embedded {
                    failure = Some(format!("field elimination shifted energy on n = {n}"));
                }
                checks += 1;
            }
        }
        match failure {
            None => Ok(format!("{checks} exact identities")),
            Some(detail) => Err(detail),
        }
    };
    verify_block("transform-identities", transforms)?;
    Ok(())
}
