mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kzero::filtration::{compute_filtration, FiltrationConfig, FiltrationKind, Method};
use kzero::io::{
    fingerprint, read_model, write_model, ModelSummary, ReportConfig, SuiteEntry,
    VerificationReport,
};
use kzero::lambda::{
    gamma_expansion, normalization_report, stirling_prediction, GammaCoeffTable, LogLambda,
};
use kzero::model::{validate, Builder};
use kzero::suite::{conjecture_suite, identity_suite};
use kzero::{Check, Error, ModelAlgebra, Outcome};

use config::FileConfig;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "kzero",
    version,
    about = "Exact checks on bigraded models of K_0(A) ⊗ Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, validate or re-export a model file.
    Model {
        #[arg(value_enum)]
        action: ModelAction,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the identity suite (Fourier-Mukai, Adams, γ-operations).
    Verify {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Dimension tables of the γ, ⋆, π and Γ filtrations.
    Filtration {
        /// Restrict to one kind: gamma, star, pi, Gamma.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Filtration comparisons and the statements about the Γ-structure.
    Conjecture {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Table of a(i; d, m), the coefficient of x^m in γ^i_π(x) for π-weight d.
    GammaCoeffs {
        #[arg(long, default_value_t = 4)]
        i: usize,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Λ_t and Γ_t for an eigenvector of K[j] under both log-λ normalizations.
    Series {
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelAction {
    Build,
    Validate,
    Export,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Saturation,
    EigenSum,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Clone)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// theta, antisym, pathological or violator.
    #[arg(long)]
    builder: Option<String>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long, conflicts_with = "builder")]
    model_file: Option<PathBuf>,
    /// Series truncation order; at least g + 1.
    #[arg(long)]
    order: Option<usize>,
    /// Seed for the saturation enrichment.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_rounds: Option<usize>,
    /// TOML file with defaults for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Record wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    out: OutArgs,
}

/// Failures that end a run, mapped onto exit codes.
enum Fatal {
    Usage(String),
    NonConvergence(String),
}

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Fatal::NonConvergence(e.to_string()),
            _ => Fatal::Usage(e.to_string()),
        }
    }
}

struct Run {
    model: ModelAlgebra,
    source: String,
    filtration: FiltrationConfig,
    format: Format,
    out: Option<PathBuf>,
    timings: bool,
}

impl Run {
    fn resolve(args: &RunArgs) -> Result<Run, Fatal> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p).map_err(Fatal::Usage)?,
            None => FileConfig::default(),
        };
        let model_file = args.model_file.clone().or(if args.builder.is_some() {
            None
        } else {
            file.model_file
        });
        let (model, source) = match model_file {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Fatal::Usage(format!("cannot read {}: {e}", path.display())))?;
                let m = read_model(&text)
                    .map_err(|e| Fatal::Usage(format!("{}: {e}", path.display())))?;
                (m, path.display().to_string())
            }
            None => {
                let name = args
                    .builder
                    .clone()
                    .or(file.builder)
                    .unwrap_or_else(|| "theta".into());
                let builder: Builder = name.parse()?;
                let g = args.g.or(file.g).unwrap_or(2);
                (builder.build(g)?, format!("{}(g={g})", builder.name()))
            }
        };
        if args.model_file.is_some() && args.g.is_some_and(|g| g != model.g()) {
            return Err(Fatal::Usage(format!(
                "--g {} disagrees with the model file (g = {})",
                args.g.unwrap(),
                model.g()
            )));
        }
        let mut filtration = FiltrationConfig::for_model(&model);
        if let Some(order) = args.order.or(file.order) {
            if order < model.g() + 1 {
                return Err(Fatal::Usage(format!(
                    "--order must be at least g + 1 = {}",
                    model.g() + 1
                )));
            }
            filtration.order = order;
            filtration.n_max = filtration.n_max.min(order);
        }
        filtration.seed = args.seed.or(file.seed).unwrap_or(filtration.seed);
        filtration.max_rounds = args
            .max_rounds
            .or(file.max_rounds)
            .unwrap_or(filtration.max_rounds);
        let format = match (args.out.format, file.format) {
            (Some(f), _) => f,
            (None, Some(s)) => s
                .parse()
                .map_err(|_| Fatal::Usage(format!("unknown format `{s}` in config")))?,
            (None, None) => Format::Text,
        };
        Ok(Run {
            model,
            source,
            filtration,
            format,
            out: args.out.out.clone(),
            timings: args.timings,
        })
    }

    fn report(&self, command: &str) -> VerificationReport {
        VerificationReport::new(
            command,
            ModelSummary {
                source: self.source.clone(),
                g: self.model.g(),
                dim: self.model.dim(),
                fingerprint: fingerprint(&self.model),
            },
            ReportConfig {
                order: self.filtration.order,
                seed: self.filtration.seed,
                max_rounds: self.filtration.max_rounds,
            },
        )
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Fatal> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Fatal::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(
    report: &VerificationReport,
    format: Format,
    out: &Option<PathBuf>,
    extra_text: &str,
) -> Result<ExitCode, Fatal> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => format!("{extra_text}{}", report.to_text()),
    };
    emit(&text, out)?;
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    })
}

fn timed<T>(run: &Run, timings: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    if run.timings {
        timings.insert(key.to_string(), start.elapsed().as_secs_f64() * 1e3);
    }
    out
}

fn attach_timings(run: &Run, report: &mut VerificationReport, timings: BTreeMap<String, f64>) {
    if run.timings {
        report.timings_ms = Some(timings);
    }
}

fn cmd_model(action: ModelAction, args: &RunArgs) -> Result<ExitCode, Fatal> {
    let run = Run::resolve(args)?;
    match action {
        ModelAction::Build | ModelAction::Export => {
            emit(&write_model(&run.model), &run.out)?;
            Ok(ExitCode::SUCCESS)
        }
        ModelAction::Validate => {
            let mut report = run.report("model validate");
            let v = validate(&run.model);
            let check = Check::from_bool(v.is_ok(), || {
                v.violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            });
            report.results.push(SuiteEntry::new(
                "model-admissible",
                "structure constants and fm satisfy the model axioms",
                check,
            ));
            if !v.is_ok() {
                report.details.insert(
                    "violations".into(),
                    serde_json::to_value(&v.violations).expect("serializable"),
                );
            }
            finish(&report, run.format, &run.out, "")
        }
    }
}

fn cmd_verify(args: &RunArgs) -> Result<ExitCode, Fatal> {
    let run = Run::resolve(args)?;
    let mut report = run.report("verify");
    let mut t = BTreeMap::new();
    report.results = timed(&run, &mut t, "identity_suite", || {
        identity_suite(&run.model, run.filtration.order)
    })?;
    attach_timings(&run, &mut report, t);
    finish(&report, run.format, &run.out, "")
}

fn cmd_filtration(
    kind: Option<String>,
    method: MethodArg,
    args: &RunArgs,
) -> Result<ExitCode, Fatal> {
    let run = Run::resolve(args)?;
    let kinds = match kind {
        Some(k) => vec![k.parse::<FiltrationKind>()?],
        None => FiltrationKind::ALL.to_vec(),
    };
    let methods: Vec<Method> = match method {
        MethodArg::Saturation => vec![Method::Saturation],
        MethodArg::EigenSum => vec![Method::EigenSum],
        MethodArg::Both => vec![Method::Saturation, Method::EigenSum],
    };
    let mut report = run.report("filtration");
    let mut t = BTreeMap::new();
    let mut table = String::new();
    let mut dims = serde_json::Map::new();
    for &k in &kinds {
        let mut per_method = Vec::new();
        for &meth in &methods {
            let key = format!("{k}/{}", method_name(meth));
            let fil = timed(&run, &mut t, &key, || {
                compute_filtration(&run.model, k, &run.filtration, meth)
            })?;
            let check =
                Check::from_bool(fil.is_decreasing(), || format!("{key} is not decreasing"));
            report.results.push(SuiteEntry::new(
                &format!("filtration/{key}/decreasing"),
                "Fil^0 ⊇ Fil^1 ⊇ …",
                check,
            ));
            table.push_str(&format!("{key:24} {:?}\n", fil.dims()));
            dims.insert(key, serde_json::json!(fil.dims()));
            per_method.push(fil);
        }
        if let [sat, eig] = per_method.as_slice() {
            let g = run.model.g();
            let negative = run.model.basis().iter().any(|b| b.bidegree.index(g) < 0);
            let outcome = if negative {
                Outcome::skipped("eigenspace description assumes K[j] = 0 for j < 0")
            } else if sat.stages == eig.stages {
                Outcome::Pass
            } else {
                let n = (0..sat.stages.len())
                    .find(|&n| sat.stages[n] != eig.stages[n])
                    .unwrap_or(0);
                Outcome::Fail {
                    witness: format!(
                        "stage {n}: saturation {:?} vs eigen-sum {:?}",
                        sat.dims(),
                        eig.dims()
                    ),
                }
            };
            report.results.push(SuiteEntry::new(
                &format!("filtration/{k}/methods-agree"),
                "saturation and eigenspace sums give the same stages",
                outcome,
            ));
        }
    }
    report
        .details
        .insert("dims".into(), serde_json::Value::Object(dims));
    attach_timings(&run, &mut report, t);
    finish(&report, run.format, &run.out, &table)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Saturation => "saturation",
        Method::EigenSum => "eigen_sum",
    }
}

fn cmd_conjecture(args: &RunArgs) -> Result<ExitCode, Fatal> {
    let run = Run::resolve(args)?;
    let mut report = run.report("conjecture");
    let mut t = BTreeMap::new();
    report.results = timed(&run, &mut t, "conjecture_suite", || {
        conjecture_suite(&run.model, &run.filtration)
    })?;
    attach_timings(&run, &mut report, t);
    finish(&report, run.format, &run.out, "")
}

fn standalone_report(command: &str, order: usize) -> VerificationReport {
    VerificationReport::new(
        command,
        ModelSummary {
            source: "none".into(),
            g: 0,
            dim: 0,
            fingerprint: String::new(),
        },
        ReportConfig {
            order,
            seed: 0,
            max_rounds: 0,
        },
    )
}

fn cmd_gamma_coeffs(i: usize, d: usize, m: usize, out: &OutArgs) -> Result<ExitCode, Fatal> {
    if i == 0 || d == 0 || m == 0 {
        return Err(Fatal::Usage("--i, --d and --m start at 1".into()));
    }
    let table = GammaCoeffTable::new(i, d, m);
    let mut report = standalone_report("gamma-coeffs", i);
    let mut text = String::new();
    for mm in 1..=m {
        text.push_str(&format!(
            "a(i; d, {mm})    rows d = 1..{d}, columns i = 1..{i}\n"
        ));
        for dd in 1..=d {
            let row: Vec<String> = (1..=i)
                .map(|ii| table.get(ii, dd, mm).expect("in range").to_string())
                .collect();
            text.push_str(&format!("d={dd:<3} {}\n", row.join("\t")));
        }
    }
    let mut bad = None;
    'scan: for dd in 1..=d {
        for ii in 1..=i {
            let got = table.get(ii, dd, 1).expect("in range");
            if *got != stirling_prediction(ii, dd) {
                bad = Some(format!(
                    "a({ii};{dd},1) = {got}, expected {}",
                    stirling_prediction(ii, dd)
                ));
                break 'scan;
            }
        }
    }
    let check = match bad {
        None => Check::pass(),
        Some(w) => Check::fail(w),
    };
    report.results.push(SuiteEntry::new(
        "ex-stirling",
        "a(i; d, 1) = (-1)^{i-1} (i-1)! S(d, i)",
        check,
    ));
    report.details.insert(
        "table".into(),
        serde_json::to_value(&table).expect("serializable"),
    );
    finish(&report, out.format.unwrap_or(Format::Text), &out.out, &text)
}

fn cmd_series(j: i64, order: usize, out: &OutArgs) -> Result<ExitCode, Fatal> {
    if order == 0 {
        return Err(Fatal::Usage("--order must be at least 1".into()));
    }
    let mut report = standalone_report("series", order);
    let mut text = String::new();
    let expansions: Vec<_> = LogLambda::ALL
        .iter()
        .map(|&nl| gamma_expansion(j, order, nl))
        .collect();
    for e in &expansions {
        let show = |v: &[kzero::Rational]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        text.push_str(&format!("{:?}, j = {j}\n", e.normalization));
        text.push_str(&format!(
            "  log Λ_t coefficients: {}\n",
            show(&e.log_lambda)
        ));
        text.push_str(&format!("  log Γ_t coefficients: {}\n", show(&e.log_gamma)));
        text.push_str(&format!(
            "  n! · log Γ_t:         {}\n",
            show(&e.numerators)
        ));
    }
    report.details.insert(
        "expansions".into(),
        serde_json::to_value(&expansions).expect("serializable"),
    );
    if j == -1 {
        let nr = normalization_report(order);
        text.push_str(&format!(
            "target |s(n+1,2)|: {}\n{}\n",
            nr.target.join(", "),
            nr.finding
        ));
        let check = Check::from_bool(!nr.matching.is_empty(), || nr.finding.clone());
        report.results.push(SuiteEntry::new(
            "series-numerators",
            "some log-λ normalization gives numerators |s(n+1,2)| for x ∈ K[-1]",
            check,
        ));
        report.details.insert(
            "normalization".into(),
            serde_json::to_value(&nr).expect("serializable"),
        );
    } else {
        report.results.push(SuiteEntry::new(
            "series-numerators",
            "numerator comparison is defined for j = -1",
            Outcome::skipped(format!("j = {j}")),
        ));
    }
    finish(&report, out.format.unwrap_or(Format::Text), &out.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Model { action, run } => cmd_model(*action, run),
        Command::Verify { run } => cmd_verify(run),
        Command::Filtration { kind, method, run } => cmd_filtration(kind.clone(), *method, run),
        Command::Conjecture { run } => cmd_conjecture(run),
        Command::GammaCoeffs { i, d, m, out } => cmd_gamma_coeffs(*i, *d, *m, out),
        Command::Series { j, order, out } => cmd_series(*j, *order, out),
    };
    match result {
        Ok(code) => code,
        Err(Fatal::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Fatal::NonConvergence(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NONCONVERGENCE)
        }
    }
}
