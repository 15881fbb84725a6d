//! `gvm` — fit, test and simulate generalized von Mises circular models.
//!
//! Verbs: `fit` (maximum likelihood on a CSV of angles), `test` (the three
//! Bayesian symmetry tests), `simulate` (the named Monte Carlo study
//! cases), `density` (plot-ready tables), `sample` (draw synthetic data).
//!
//! Exit codes: 0 success; 2 usage / invalid parameters; 3 input parse or
//! I/O failure; 4 fit did not converge; 5 numeric degeneracy.

mod config;
mod ingest;
mod records;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::Config;
use gvm::study::{builtin_case, run_case, CaseName, FULL_R, FULL_S};
use gvm::{
    bayes_factor, fit_mle, models, sample_gvm, sample_vm, sample_vm2, seeded_rng, DeltaNuisance,
    GvMParams, Kappa2Nuisance, MixtureVM2Prior, NuisanceSpec, PerturbationConfig, PriorSpec,
    Sample, TestKind, UniformPrior, VM2Params, VMParams,
};
use ingest::Unit;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Convergence(String),
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Convergence(_) => 4,
            CliError::Numeric(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Convergence(m) => write!(f, "convergence error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
        }
    }
}

impl From<gvm::Error> for CliError {
    fn from(e: gvm::Error) -> Self {
        fn is_numeric(e: &gvm::Error) -> bool {
            use gvm::Error::*;
            match e {
                DegenerateEstimate | BesselOverflow(_) | SeriesNonConvergence(_)
                | RejectionCap(_) => true,
                Replicate { source, .. } => is_numeric(source),
                _ => false,
            }
        }
        if is_numeric(&e) {
            CliError::Numeric(e.to_string())
        } else if matches!(e, gvm::Error::InsufficientData { .. }) {
            CliError::Input(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(name = "gvm", version, about = "Generalized von Mises models and Bayesian symmetry tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// CSV file of angles.
    file: PathBuf,
    /// Angle column: a 0-based index, or a name when --header is set.
    #[arg(long)]
    column: Option<String>,
    /// Unit of the input angles (output is always radians).
    #[arg(long, value_enum, default_value = "radians")]
    unit: Unit,
    /// Treat the first CSV row as a header.
    #[arg(long)]
    header: bool,
}

impl InputArgs {
    fn read(&self) -> Result<Vec<f64>, CliError> {
        ingest::read_angles(&self.file, self.column.as_deref(), self.unit, self.header)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `table` for humans, `records` for machine-readable key=value lines.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TestArg {
    NoShift,
    AxialSymmetry,
    VmSymmetry,
}

impl TestArg {
    fn kind(self) -> TestKind {
        match self {
            TestArg::NoShift => TestKind::NoShift,
            TestArg::AxialSymmetry => TestKind::AxialSymmetry,
            TestArg::VmSymmetry => TestKind::VmSymmetry,
        }
    }
    fn name(self) -> &'static str {
        match self {
            TestArg::NoShift => "no-shift",
            TestArg::AxialSymmetry => "axial-symmetry",
            TestArg::VmSymmetry => "vm-symmetry",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Gvm,
    Vm,
    Vm2,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the four-parameter GvM model by maximum likelihood.
    Fit {
        #[command(flatten)]
        input: InputArgs,
        /// Drop points whose log density falls this far below the sample
        /// mean, then refit once (outlier trimming).
        #[arg(long)]
        trim: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run one of the Bayesian symmetry tests on a CSV of angles.
    Test {
        #[command(flatten)]
        input: InputArgs,
        /// Which null hypothesis to test.
        #[arg(long = "test", value_enum)]
        test: TestArg,
        /// Neighbourhood length epsilon (default 0.18 for user data).
        #[arg(long)]
        epsilon: Option<f64>,
        /// Monte Carlo draws for the marginal integral.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Prior axis (vM2 prior over delta).
        #[arg(long)]
        nu: Option<f64>,
        /// Prior concentration tau (vM2 / mixture priors).
        #[arg(long)]
        tau: Option<f64>,
        /// Mixture weight (axial-symmetry test).
        #[arg(long)]
        xi: Option<f64>,
        /// Mixture component axes (axial-symmetry test).
        #[arg(long)]
        nu1: Option<f64>,
        #[arg(long)]
        nu2: Option<f64>,
        /// Uniform prior bounds over kappa2 (vm-symmetry test).
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        /// Fixed nuisance values (alternatively, use --fit-file).
        #[arg(long)]
        mu1: Option<f64>,
        #[arg(long)]
        mu2: Option<f64>,
        #[arg(long)]
        kappa1: Option<f64>,
        #[arg(long)]
        kappa2: Option<f64>,
        /// Take the nuisance values from a `fit --format records` output.
        #[arg(long)]
        fit_file: Option<PathBuf>,
        /// Key=value config file (flag > config > default).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a named simulation case and report the Bayes factor CI.
    Simulate {
        /// Case name: D1, D1prime, D2, S1, S2, S3 or K2.
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Replicates per sequence.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        sequences: Option<usize>,
        /// Monte Carlo draws per replicate.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Use the published full-scale design (r = s = 10000).
        #[arg(long)]
        full: bool,
        /// Include every replicate's b01 in records output.
        #[arg(long)]
        store_raw: bool,
        /// Key=value config file (flag > config > default).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate a GvM density over a grid.
    Density {
        #[arg(long)]
        mu1: f64,
        #[arg(long)]
        mu2: f64,
        #[arg(long)]
        kappa1: f64,
        #[arg(long)]
        kappa2: f64,
        /// Number of grid points (rows).
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Grid range, half-open [from, to).
        #[arg(long, default_value_t = -2.0 * PI, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 2.0 * PI, allow_hyphen_values = true)]
        to: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Draw synthetic angles and emit them as a one-column CSV.
    Sample {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// GvM parameters (model = gvm).
        #[arg(long)]
        mu1: Option<f64>,
        #[arg(long)]
        mu2: Option<f64>,
        #[arg(long)]
        kappa1: Option<f64>,
        #[arg(long)]
        kappa2: Option<f64>,
        /// vM / vM2 parameters (model = vm or vm2).
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require(v: Option<f64>, name: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required value --{name}")))
}

fn cmd_fit(input: &InputArgs, trim: Option<f64>, output: &OutputArgs) -> Result<i32, CliError> {
    let angles = input.read()?;
    let mut sample = Sample::new(angles)?;
    let mut fit = fit_mle(&sample)?;
    let mut trimmed = 0usize;
    if let Some(threshold) = trim {
        if !(threshold > 0.0) {
            return Err(CliError::Usage(format!("--trim must be > 0, got {threshold}")));
        }
        let ld: Vec<f64> =
            sample.angles().iter().map(|&t| models::gvm_log_density(t, &fit.params)).collect();
        let mean = ld.iter().sum::<f64>() / ld.len() as f64;
        let kept: Vec<f64> = sample
            .angles()
            .iter()
            .zip(&ld)
            .filter(|(_, &l)| mean - l <= threshold)
            .map(|(&t, _)| t)
            .collect();
        trimmed = sample.n() - kept.len();
        if trimmed > 0 {
            sample = Sample::new(kept)?;
            fit = fit_mle(&sample)?;
        }
    }

    let text = match output.format {
        Format::Records => format!("{}\n", records::print_fit(&fit)),
        Format::Table => {
            let p = &fit.params;
            format!(
                "n:              {}\n\
                 trimmed:        {}\n\
                 mu1:            {:.6}\n\
                 mu2:            {:.6}\n\
                 kappa1:         {:.6}\n\
                 kappa2:         {:.6}\n\
                 delta:          {:.6}\n\
                 log-likelihood: {:.6}\n\
                 converged:      {}\n",
                sample.n(),
                trimmed,
                p.mu1(),
                p.mu2(),
                p.kappa1(),
                p.kappa2(),
                p.delta(),
                fit.log_likelihood,
                fit.converged
            )
        }
    };
    emit(&text, output.out.as_deref())?;
    if fit.converged {
        Ok(0)
    } else {
        eprintln!("warning: fit did not converge (gradient norm above tolerance)");
        Ok(4)
    }
}

struct TestOpts<'a> {
    test: TestArg,
    epsilon: Option<f64>,
    s: Option<usize>,
    seed: Option<u64>,
    nu: Option<f64>,
    tau: Option<f64>,
    xi: Option<f64>,
    nu1: Option<f64>,
    nu2: Option<f64>,
    lo: Option<f64>,
    hi: Option<f64>,
    mu1: Option<f64>,
    mu2: Option<f64>,
    kappa1: Option<f64>,
    kappa2: Option<f64>,
    fit_file: Option<&'a Path>,
}

fn cmd_test(input: &InputArgs, o: &TestOpts, cfg_file: Option<&Path>, output: &OutputArgs) -> Result<i32, CliError> {
    let cfg = Config::load(cfg_file)?;
    let epsilon = cfg.resolve(o.epsilon, "epsilon", 0.18)?;
    let s = cfg.resolve(o.s, "s", 100_000)?;
    let seed = cfg.resolve(o.seed, "seed", 42)?;

    // Nuisance values: a fit record file fills anything not given by flags.
    let (mut mu1, mut mu2, mut kappa1, mut kappa2) = (o.mu1, o.mu2, o.kappa1, o.kappa2);
    if let Some(path) = o.fit_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let line = text
            .lines()
            .find(|l| l.trim_start().starts_with("record=fit"))
            .ok_or_else(|| CliError::Input(format!("{}: no fit record found", path.display())))?;
        let fit = records::parse_fit(line)?;
        mu1 = mu1.or(Some(fit.params.mu1()));
        mu2 = mu2.or(Some(fit.params.mu2()));
        kappa1 = kappa1.or(Some(fit.params.kappa1()));
        kappa2 = kappa2.or(Some(fit.params.kappa2()));
    }

    let kind = o.test.kind();
    let pcfg = PerturbationConfig::new(epsilon, kind)?;
    let prior = match kind {
        TestKind::NoShift => {
            let nu = cfg.resolve(o.nu, "nu", 0.0)?;
            let tau = cfg.resolve(o.tau, "tau", 300.0)?;
            PriorSpec::Vm2(VM2Params::new(nu, tau)?)
        }
        TestKind::AxialSymmetry => {
            let xi = cfg.resolve(o.xi, "xi", 0.5)?;
            let nu1 = cfg.resolve(o.nu1, "nu1", 0.0)?;
            let nu2 = cfg.resolve(o.nu2, "nu2", PI / 2.0)?;
            let tau = cfg.resolve(o.tau, "tau", 300.0)?;
            PriorSpec::Mixture(MixtureVM2Prior::new(
                xi,
                VM2Params::new(nu1, tau)?,
                VM2Params::new(nu2, tau)?,
            )?)
        }
        TestKind::VmSymmetry => {
            let lo = cfg.resolve(o.lo, "lo", 0.0)?;
            let hi = cfg.resolve(o.hi, "hi", 0.5)?;
            PriorSpec::Uniform(UniformPrior::new(lo, hi)?)
        }
    };
    let nuisance = match kind {
        TestKind::NoShift | TestKind::AxialSymmetry => NuisanceSpec::Delta(DeltaNuisance::new(
            require(mu1, "mu1")?,
            require(kappa1, "kappa1")?,
            require(kappa2, "kappa2")?,
        )?),
        TestKind::VmSymmetry => NuisanceSpec::Kappa2(Kappa2Nuisance::new(
            require(mu1, "mu1")?,
            require(mu2, "mu2")?,
            require(kappa1, "kappa1")?,
        )?),
    };

    let sample = Sample::new(input.read()?)?;
    let mut rng = seeded_rng(seed);
    let bf = bayes_factor(&sample, &prior, &pcfg, &nuisance, s, &mut rng)?;

    let text = match output.format {
        Format::Records => format!("{}\n", records::print_bf(o.test.name(), &bf)),
        Format::Table => format!(
            "test:         {}\n\
             n:            {}\n\
             epsilon:      {}\n\
             s:            {}\n\
             seed:         {}\n\
             b01:          {:.4}\n\
             mc std error: {:.4}\n\
             evidence:     {}\n",
            o.test.name(),
            sample.n(),
            epsilon,
            s,
            seed,
            bf.b01,
            bf.mc_std_error,
            bf.evidence
        ),
    };
    emit(&text, output.out.as_deref())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    case: Option<&str>,
    n: Option<usize>,
    r: Option<usize>,
    sequences: Option<usize>,
    s: Option<usize>,
    epsilon: Option<f64>,
    seed: Option<u64>,
    full: bool,
    store_raw: bool,
    cfg_file: Option<&Path>,
    output: &OutputArgs,
) -> Result<i32, CliError> {
    let cfg = Config::load(cfg_file)?;
    let case_name: CaseName = case
        .or(cfg.get("case"))
        .ok_or_else(|| CliError::Usage("missing case: pass --case or set it in the config".into()))?
        .parse()?;
    let mut spec = builtin_case(case_name);
    if full {
        spec.r = FULL_R;
        spec.s = FULL_S;
    }
    spec.n = cfg.resolve(n, "n", spec.n)?;
    spec.r = cfg.resolve(r, "r", spec.r)?;
    spec.sequences = cfg.resolve(sequences, "sequences", spec.sequences)?;
    spec.s = cfg.resolve(s, "s", spec.s)?;
    spec.seed = cfg.resolve(seed, "seed", spec.seed)?;
    let eps = cfg.resolve(epsilon, "epsilon", spec.cfg.epsilon())?;
    spec.cfg = PerturbationConfig::new(eps, spec.cfg.test_kind())?;
    spec.store_raw = store_raw;

    let report = run_case(&spec)?;
    let text = match output.format {
        Format::Records => {
            let mut t = format!("{}\n", records::print_study(&report));
            if let Some(raw) = &report.all_b01 {
                for (i, b) in raw.iter().enumerate() {
                    t.push_str(&format!("record=b01 index={i} value={b}\n"));
                }
            }
            t
        }
        Format::Table => format!(
            "case   mean    ci95               evidence\n\
             {:<6} {:<7.4} ({:.4}, {:.4})   {}\n\
             per-sequence means: {}\n\
             wall time: {:.1}s\n",
            report.name.to_string(),
            report.aggregated_mean,
            report.ci95.0,
            report.ci95.1,
            report.evidence,
            report
                .per_sequence_means
                .iter()
                .map(|m| format!("{m:.4}"))
                .collect::<Vec<_>>()
                .join(" "),
            report.wall_time
        ),
    };
    emit(&text, output.out.as_deref())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_density(
    mu1: f64,
    mu2: f64,
    kappa1: f64,
    kappa2: f64,
    grid: usize,
    from: f64,
    to: f64,
    output: &OutputArgs,
) -> Result<i32, CliError> {
    if grid == 0 || !(from < to) {
        return Err(CliError::Usage("need grid > 0 and from < to".into()));
    }
    let p = GvMParams::new(mu1, mu2, kappa1, kappa2)?;
    let mut text = String::new();
    for i in 0..grid {
        let theta = from + (to - from) * i as f64 / grid as f64;
        let d = models::gvm_log_density(theta, &p).exp();
        match output.format {
            Format::Table => text.push_str(&format!("{theta}\t{d}\n")),
            Format::Records => text.push_str(&format!("record=density theta={theta} density={d}\n")),
        }
    }
    emit(&text, output.out.as_deref())?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    model: Model,
    n: usize,
    seed: u64,
    mu1: Option<f64>,
    mu2: Option<f64>,
    kappa1: Option<f64>,
    kappa2: Option<f64>,
    mu: Option<f64>,
    kappa: Option<f64>,
    output: &OutputArgs,
) -> Result<i32, CliError> {
    let mut rng = seeded_rng(seed);
    let draws: Vec<f64> = match model {
        Model::Gvm => {
            let p = GvMParams::new(
                require(mu1, "mu1")?,
                require(mu2, "mu2")?,
                require(kappa1, "kappa1")?,
                require(kappa2, "kappa2")?,
            )?;
            (0..n).map(|_| sample_gvm(&p, &mut rng)).collect::<gvm::Result<_>>()?
        }
        Model::Vm => {
            let p = VMParams::new(require(mu, "mu")?, require(kappa, "kappa")?)?;
            (0..n).map(|_| sample_vm(&p, &mut rng)).collect()
        }
        Model::Vm2 => {
            let p = VM2Params::new(require(mu, "mu")?, require(kappa, "kappa")?)?;
            (0..n).map(|_| sample_vm2(&p, &mut rng)).collect()
        }
    };
    let mut text = String::from("theta\n");
    for d in draws {
        text.push_str(&format!("{d}\n"));
    }
    emit(&text, output.out.as_deref())?;
    Ok(0)
}

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Fit { input, trim, output } => cmd_fit(input, *trim, output),
        Command::Test {
            input,
            test,
            epsilon,
            s,
            seed,
            nu,
            tau,
            xi,
            nu1,
            nu2,
            lo,
            hi,
            mu1,
            mu2,
            kappa1,
            kappa2,
            fit_file,
            config,
            output,
        } => cmd_test(
            input,
            &TestOpts {
                test: *test,
                epsilon: *epsilon,
                s: *s,
                seed: *seed,
                nu: *nu,
                tau: *tau,
                xi: *xi,
                nu1: *nu1,
                nu2: *nu2,
                lo: *lo,
                hi: *hi,
                mu1: *mu1,
                mu2: *mu2,
                kappa1: *kappa1,
                kappa2: *kappa2,
                fit_file: fit_file.as_deref(),
            },
            config.as_deref(),
            output,
        ),
        Command::Simulate {
            case,
            n,
            r,
            sequences,
            s,
            epsilon,
            seed,
            full,
            store_raw,
            config,
            output,
        } => cmd_simulate(
            case.as_deref(),
            *n,
            *r,
            *sequences,
            *s,
            *epsilon,
            *seed,
            *full,
            *store_raw,
            config.as_deref(),
            output,
        ),
        Command::Density { mu1, mu2, kappa1, kappa2, grid, from, to, output } => {
            cmd_density(*mu1, *mu2, *kappa1, *kappa2, *grid, *from, *to, output)
        }
        Command::Sample { model, n, seed, mu1, mu2, kappa1, kappa2, mu, kappa, output } => {
            cmd_sample(*model, *n, *seed, *mu1, *mu2, *kappa1, *kappa2, *mu, *kappa, output)
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
