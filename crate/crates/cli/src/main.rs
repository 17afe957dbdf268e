//! `cechlab`: sampling, persistence queries, property counts, cycle
//! witnesses and Monte Carlo experiments from the command line.
//!
//! Every subcommand writes its outputs and a `manifest.toml` into `--out`.
//! Exit codes: 0 success, 1 configuration or usage error, 2 audit failure.

mod manifest;
mod property;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cechlab::experiment::{
    lower_bound_audit, render_balls, run_experiment, trial_cloud, ExperimentConfig,
};
use cechlab::geometry::{sample_binomial, sample_poisson, Density};
use cechlab::persistence::{
    build_cech_filtration, compute_persistence, persistent_betti, FieldSpec,
};
use cechlab::properties::{
    count_property, estimate_mu, palm_check, subset_count, AGREEMENT_SIGMAS,
};
use cechlab::witness::{
    bracket_m, construct_witness, construct_witness_with_rounds, perturb_and_verify,
};
use cechlab::{rng, PointCloud};

use manifest::Manifest;

#[derive(Parser)]
#[command(
    name = "cechlab",
    version,
    about = "Persistent homology of random Čech complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a binomial or Poisson point cloud.
    Sample(SampleArgs),
    /// Persistence diagram of a point cloud's Čech filtration.
    Persistence(PersistenceArgs),
    /// Betti or θ-persistent Betti number at one radius.
    Betti(BettiArgs),
    /// Count subsets with a geometric (subset) property.
    Count(CountArgs),
    /// Monte Carlo estimate of a property's limiting constant μ.
    Mu(MuArgs),
    /// Compare a Poisson subset count with its Palm-formula estimate.
    Palm(PalmArgs),
    /// Build a θ-persistent k-cycle witness and test it under perturbation.
    Witness(WitnessArgs),
    /// Bracket the minimal support size of a θ-persistent k-cycle.
    SearchM(SearchArgs),
    /// Run a Monte Carlo experiment from a TOML config.
    Experiment(ExperimentArgs),
    /// Reproduce the Θ(1) band setting and render one frame per n.
    Figure1(Figure1Args),
    /// Render r- and θr-balls around a planar cloud as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct OutArg {
    /// Output directory.
    #[arg(long, default_value = "cechlab-out")]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct BoxArgs {
    /// Ambient dimension of the default unit cube.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Lower box corner, comma separated (overrides --d).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lo: Option<Vec<f64>>,
    /// Upper box corner, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hi: Option<Vec<f64>>,
}

impl BoxArgs {
    fn density(&self) -> Result<Density> {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => Ok(Density::uniform_box(lo.clone(), hi.clone())?),
            (None, None) => Ok(Density::unit_cube(self.d)?),
            _ => bail!(cechlab::Error::Config(
                "--lo and --hi must be given together".into()
            )),
        }
    }

    fn record(&self, m: &mut Manifest) -> Result<()> {
        let density = self.density()?;
        let (lo, hi) = density.bounds();
        m.param("box_lo", lo.to_vec()).param("box_hi", hi.to_vec());
        Ok(())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Binomial,
    Poisson,
}

#[derive(Args)]
struct SampleArgs {
    /// Number of points (binomial) or intensity (Poisson).
    #[arg(long)]
    n: f64,
    #[arg(long, value_enum, default_value = "poisson")]
    model: Model,
    #[command(flatten)]
    density: BoxArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct PersistenceArgs {
    /// Point cloud file (`d N` header, one point per line).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    r_max: f64,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, default_value_t = 2)]
    field: u32,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct BettiArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    k: usize,
    /// Persistence factor; 1 gives the ordinary Betti number.
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 2)]
    field: u32,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct PropertyArgs {
    /// edge, triangle, pathN, cycleN, completeN, graph:N:a-b,..., spread, conn or zeta.
    #[arg(long)]
    property: String,
    /// Subset context: `always` or `sep:<factor>`.
    #[arg(long, default_value = "always")]
    context: String,
    #[arg(long)]
    r: f64,
    /// Subset size for spread, conn and zeta.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

impl PropertyArgs {
    fn record(&self, m: &mut Manifest) {
        m.param("property", self.property.as_str())
            .param("context", self.context.as_str())
            .param("r", self.r)
            .param("theta", self.theta)
            .param("k", self.k as i64);
        if let Some(p) = self.p {
            m.param("p", p as i64);
        }
    }
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    property: PropertyArgs,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct MuArgs {
    #[command(flatten)]
    property: PropertyArgs,
    #[command(flatten)]
    density: BoxArgs,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct PalmArgs {
    #[command(flatten)]
    property: PropertyArgs,
    #[command(flatten)]
    density: BoxArgs,
    /// Poisson intensity.
    #[arg(long)]
    n: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Multiplies the Palm side before comparing (negative control).
    #[arg(long, default_value_t = 1.0)]
    rhs_scale: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    theta: f64,
    /// Fixed number of subdivision rounds instead of the diameter rule.
    #[arg(long)]
    rounds: Option<usize>,
    #[arg(long, default_value_t = 100)]
    perturb_trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    theta: f64,
    /// Largest cardinality searched.
    #[arg(long, default_value_t = 6)]
    p_max: usize,
    /// Random configurations per cardinality.
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

/// Flags overriding keys of an experiment config.
#[derive(Args, Default)]
struct SpecOverrides {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    /// Radius law constant c in r_n = c·n^q.
    #[arg(long)]
    c: Option<f64>,
    /// Radius law exponent q.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_trials: Option<usize>,
    #[arg(long)]
    target_rel_se: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    field: Option<u32>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lo: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hi: Option<Vec<f64>>,
}

impl SpecOverrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        macro_rules! set {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$field.clone() { $target = v; })*
            };
        }
        set!(d => cfg.d, k => cfg.k, theta => cfg.theta, c => cfg.radius.c, q => cfg.radius.q,
             n_grid => cfg.n_grid, trials => cfg.trials, seed => cfg.seed, field => cfg.field,
             lo => cfg.density.lo, hi => cfg.density.hi);
        if self.m.is_some() {
            cfg.m = self.m;
        }
        if self.max_trials.is_some() {
            cfg.max_trials = self.max_trials;
        }
        if self.target_rel_se.is_some() {
            cfg.target_rel_se = self.target_rel_se;
        }
    }
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML config mirroring the experiment spec.
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    overrides: SpecOverrides,
    /// Also audit the separated-cycle lower bound on every cloud.
    #[arg(long)]
    audit: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct Figure1Args {
    #[command(flatten)]
    overrides: SpecOverrides,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// View box lower corner; defaults to the cloud's bounding box.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lo: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hi: Option<Vec<f64>>,
    #[command(flatten)]
    out: OutArg,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<cechlab::Error>() {
        Some(cechlab::Error::Audit(_)) => 2,
        _ => 1,
    }
}

fn read_cloud(path: &Path) -> Result<PointCloud> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(PointCloud::from_text(&text)?)
}

fn field(p: u32) -> Result<FieldSpec> {
    FieldSpec::new(p).map_err(|e| cechlab::Error::Config(e.to_string()).into())
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Sample(a) => sample(a),
        Command::Persistence(a) => persistence(a),
        Command::Betti(a) => betti(a),
        Command::Count(a) => count(a),
        Command::Mu(a) => mu(a),
        Command::Palm(a) => palm(a),
        Command::Witness(a) => witness(a),
        Command::SearchM(a) => search(a),
        Command::Experiment(a) => experiment(a),
        Command::Figure1(a) => figure1(a),
        Command::Render(a) => render(a),
    }
}

fn sample(a: SampleArgs) -> Result<()> {
    let density = a.density.density()?;
    let mut rng = rng::root(a.seed);
    let cloud = match a.model {
        Model::Binomial => {
            if a.n < 0.0 || a.n.fract() != 0.0 {
                bail!(cechlab::Error::Config(format!(
                    "binomial sample size must be a whole number, got {}",
                    a.n
                )));
            }
            sample_binomial(a.n as usize, &density, &mut rng)?
        }
        Model::Poisson => sample_poisson(a.n, &density, &mut rng)?,
    };
    let mut m = Manifest::new("sample", &a.out.out)?;
    m.seed(a.seed).param("n", a.n).param(
        "model",
        match a.model {
            Model::Binomial => "binomial",
            Model::Poisson => "poisson",
        },
    );
    a.density.record(&mut m)?;
    m.write("cloud.txt", &cloud.to_text())?;
    println!("{} points", cloud.len());
    m.finish()
}

fn persistence(a: PersistenceArgs) -> Result<()> {
    let cloud = read_cloud(&a.input)?;
    let complex = build_cech_filtration(&cloud, a.r_max, a.max_dim)?;
    let diagram = compute_persistence(&complex, field(a.field)?);
    let mut m = Manifest::new("persistence", &a.out.out)?;
    m.param("input", a.input.display().to_string())
        .param("r_max", a.r_max)
        .param("max_dim", a.max_dim as i64)
        .param("field", a.field as i64);
    m.write("diagram.csv", &diagram.to_csv())?;
    println!(
        "{} simplices, {} intervals",
        complex.len(),
        diagram.intervals().len()
    );
    m.finish()
}

fn betti(a: BettiArgs) -> Result<()> {
    let cloud = read_cloud(&a.input)?;
    let value = persistent_betti(&cloud, a.r, a.theta, a.k, field(a.field)?)?;
    let mut m = Manifest::new("betti", &a.out.out)?;
    m.param("input", a.input.display().to_string())
        .param("r", a.r)
        .param("k", a.k as i64)
        .param("theta", a.theta)
        .param("field", a.field as i64);
    m.write("betti.txt", &format!("{value}\n"))?;
    println!("{value}");
    m.finish()
}

fn count(a: CountArgs) -> Result<()> {
    let cloud = read_cloud(&a.input)?;
    let pa = &a.property;
    let h = property::subset_property(&pa.property, &pa.context, pa.r, pa.p, pa.theta, pa.k)?;
    let value = if pa.context == "always" {
        count_property(h.base(), &cloud)
    } else {
        subset_count(&h, &cloud)
    };
    let mut m = Manifest::new("count", &a.out.out)?;
    m.param("input", a.input.display().to_string());
    pa.record(&mut m);
    m.write("count.txt", &format!("{value}\n"))?;
    println!("{value}");
    m.finish()
}

fn mu(a: MuArgs) -> Result<()> {
    let density = a.density.density()?;
    let pa = &a.property;
    let g = property::parse_property(&pa.property, pa.r, pa.p, pa.theta, pa.k)?;
    let est = estimate_mu(&g, &density, a.samples, &mut rng::root(a.seed))?;
    let mut m = Manifest::new("mu", &a.out.out)?;
    m.seed(a.seed).param("samples", a.samples as i64);
    pa.record(&mut m);
    a.density.record(&mut m)?;
    m.write(
        "mu.csv",
        &format!("estimate,std_error\n{},{}\n", est.estimate, est.std_error),
    )?;
    println!("mu = {} ± {}", est.estimate, est.std_error);
    m.finish()
}

fn palm(a: PalmArgs) -> Result<()> {
    let density = a.density.density()?;
    let pa = &a.property;
    let h = property::subset_property(&pa.property, &pa.context, pa.r, pa.p, pa.theta, pa.k)?;
    let check = palm_check(&h, a.n, &density, a.trials, &mut rng::root(a.seed))?
        .with_rhs_scaled(a.rhs_scale);
    let mut m = Manifest::new("palm", &a.out.out)?;
    m.seed(a.seed)
        .param("n", a.n)
        .param("trials", a.trials as i64)
        .param("rhs_scale", a.rhs_scale);
    pa.record(&mut m);
    a.density.record(&mut m)?;
    m.write(
        "palm.csv",
        &format!(
            "lhs_mean,lhs_se,rhs_mean,rhs_se,agree\n{},{},{},{},{}\n",
            check.lhs.mean,
            check.lhs.se,
            check.rhs.mean,
            check.rhs.se,
            check.agree()
        ),
    )?;
    println!(
        "subset count {} ± {}, Palm side {} ± {}, agree at {AGREEMENT_SIGMAS} SE: {}",
        check.lhs.mean,
        check.lhs.se,
        check.rhs.mean,
        check.rhs.se,
        check.agree()
    );
    m.finish()
}

fn witness(a: WitnessArgs) -> Result<()> {
    let w = match a.rounds {
        Some(rounds) => construct_witness_with_rounds(a.k, a.theta, rounds)?,
        None => construct_witness(a.k, a.theta)?,
    };
    let fraction = perturb_and_verify(&w, &mut rng::root(a.seed), a.perturb_trials)?;
    let mut m = Manifest::new("witness", &a.out.out)?;
    m.seed(a.seed)
        .param("k", a.k as i64)
        .param("theta", a.theta)
        .param("perturb_trials", a.perturb_trials as i64);
    if let Some(rounds) = a.rounds {
        m.param("rounds", rounds as i64);
    }
    m.write("witness.txt", &w.to_text())?;
    m.write(
        "perturb.csv",
        &format!(
            "trials,success_fraction\n{},{}\n",
            a.perturb_trials, fraction
        ),
    )?;
    println!(
        "{} points, r = {}, R = {}, rank {}, perturbation success {}",
        w.points.len(),
        w.r,
        w.outer_radius,
        w.verified_rank,
        fraction
    );
    m.finish()
}

fn search(a: SearchArgs) -> Result<()> {
    let found = bracket_m(a.d, a.k, a.theta, a.p_max, a.trials, &mut rng::root(a.seed))?;
    let mut m = Manifest::new("search-m", &a.out.out)?;
    m.seed(a.seed)
        .param("d", a.d as i64)
        .param("k", a.k as i64)
        .param("theta", a.theta)
        .param("p_max", a.p_max as i64)
        .param("trials", a.trials as i64);
    match found {
        Some((bracket, w)) => {
            m.write(
                "bracket.csv",
                &format!(
                    "d,k,theta,lower_searched,upper,trials\n{},{},{},{},{},{}\n",
                    a.d, a.k, a.theta, bracket.lower_searched, bracket.upper, a.trials
                ),
            )?;
            m.write("witness.txt", &w.to_text())?;
            println!(
                "{} < m <= {} (witness with {} points)",
                bracket.lower_searched,
                bracket.upper,
                w.points.len()
            );
        }
        None => {
            m.write(
                "bracket.csv",
                &format!(
                    "d,k,theta,lower_searched,upper,trials\n{},{},{},{},,{}\n",
                    a.d, a.k, a.theta, a.p_max, a.trials
                ),
            )?;
            println!(
                "no witness with at most {} points in {} trials each",
                a.p_max, a.trials
            );
        }
    }
    m.finish()
}

fn write_experiment(cfg: &ExperimentConfig, audit: bool, m: &mut Manifest) -> Result<()> {
    let spec = cfg.to_spec()?;
    m.seed(cfg.seed).params_from(toml::Table::try_from(cfg)?);
    m.write("spec.toml", &cfg.to_toml())?;
    let result = run_experiment(&spec)?;
    m.write("results.csv", &result.results_csv())?;
    m.write("fit.csv", &result.fit_csv())?;
    print!("{}", result.results_csv());
    if let Some(fit) = result.fit {
        println!("slope {} [{}, {}]", fit.slope, fit.ci_lo, fit.ci_hi);
    }
    if let Some(predicted) = result.predicted {
        println!("predicted exponent {predicted}");
    }
    if audit {
        let report = lower_bound_audit(&spec)?;
        m.write("audit.csv", &report.summary_csv())?;
        println!("audit passed on {} clouds", report.rows.len());
    }
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let text =
        fs::read_to_string(&a.config).with_context(|| format!("reading {}", a.config.display()))?;
    let mut cfg = ExperimentConfig::from_toml(&text)?;
    a.overrides.apply(&mut cfg);
    let mut m = Manifest::new("experiment", &a.out.out)?;
    write_experiment(&cfg, a.audit, &mut m)?;
    m.finish()
}

fn figure1(a: Figure1Args) -> Result<()> {
    let mut cfg = ExperimentConfig::figure1();
    a.overrides.apply(&mut cfg);
    let mut m = Manifest::new("figure1", &a.out.out)?;
    write_experiment(&cfg, false, &mut m)?;
    let spec = cfg.to_spec()?;
    if spec.d == 2 {
        for (i, &n) in spec.n_grid.iter().enumerate() {
            let cloud = trial_cloud(&spec, i, 0)?;
            let svg = render_balls(
                &cloud,
                spec.radius.radius(n),
                spec.theta,
                Some(&spec.density),
            )?;
            m.write(&format!("frame_n{n}.svg"), &svg)?;
        }
    }
    m.finish()
}

fn render(a: RenderArgs) -> Result<()> {
    let cloud = read_cloud(&a.input)?;
    let view = match (a.lo, a.hi) {
        (Some(lo), Some(hi)) => Some(Density::uniform_box(lo, hi)?),
        (None, None) => None,
        _ => bail!(cechlab::Error::Config(
            "--lo and --hi must be given together".into()
        )),
    };
    let svg = render_balls(&cloud, a.r, a.theta, view.as_ref())?;
    let mut m = Manifest::new("render", &a.out.out)?;
    m.param("input", a.input.display().to_string())
        .param("r", a.r)
        .param("theta", a.theta);
    m.write("balls.svg", &svg)?;
    println!("{} disk pairs", cloud.len());
    m.finish()
}
