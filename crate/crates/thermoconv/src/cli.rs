//! Command-line front end.
//!
//! Every subcommand reads one JSON document, from `--config` or standard
//! input, and writes CSV or JSON to standard output or `--output`. The exit
//! status is 0 on success, 2 for a malformed configuration and 3 when the
//! instance itself cannot be solved.
//!
//! Configuration keys (all camelCase, unknown keys rejected):
//!
//! | key | meaning |
//! |-----|---------|
//! | `energies` | level energies |
//! | `beta` / `temperature` | exactly one of the two |
//! | `kB` | Boltzmann constant, default 1 |
//! | `embeddingPrecision` | largest denominator of the rational Gibbs state, default 10^6 |
//! | `arithmetic` | `"rational"` or `"float"` |
//! | `p`, `q` | initial and target distributions |
//! | `n` | input copies, a number or a list |
//! | `epsilon` | error budget, a number or a list |
//! | `m` | output copies (`infidelity`) |
//! | `padding` | balance dimensions with Gibbs states, default true |
//! | `mu`, `nu`, `invert` | Rayleigh-normal arguments |
//! | `Th`, `Tc`, `TcPrime` | engine temperatures |
//!
//! `work` emits `W`, `deltaW`, `WD`, `WF`; `engine` emits `w`, `qOut`, `qIn`,
//! `eta`, `etaCarnotIntegrated`, `etaSecondOrder`, `nu`, `thresholdEpsilon`,
//! `reversible`, `carnotWork`, `gOfTc` and `continuousErrorBound`. Both add
//! `"estimate": "second-order"`.
//!
//! Any number may also be written as a string such as `"7/10"`.

use std::fmt::{self, Display, Write as _};
use std::io::{Read, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::arith::{parse_rational, ratio_to_f64, Exact, Scalar};
use crate::asymptotics::{classify, irreversibility_nu, second_order_rate, Regime};
use crate::dist::{rel_entropy, Distribution, ThermalSystem};
use crate::error::Error;
use crate::iid::{optimal_infidelity, optimal_rate, ConversionInstance, RateOptions};
use crate::majorize::{embed, lorenz_points, EmbeddingSpec};
use crate::rayleigh::{rayleigh_normal, rayleigh_normal_inverse};
use crate::thermo::{carnot_work, engine_error_rate, engine_performance, work_report, EngineSetup};

pub const RATE_HEADER: &str = "n,m_exact,R_exact,R2,R2_rounded,R1,epsilon,regime,nu";
pub const DEFAULT_EMBEDDING_PRECISION: u64 = 1_000_000;
const SIGNIFICANT_DIGITS: i32 = 12;

#[derive(Debug, Parser)]
#[command(name = "thermoconv", version, about = "Optimal interconversion rates under thermal operations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration; read from standard input when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write results here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Fill the R2_rounded column with R2 rounded to the nearest multiple of 1/n.
    #[arg(long, global = true)]
    pub round_rate: bool,
    /// Evaluate every candidate m instead of relying on monotonicity.
    #[arg(long, global = true)]
    pub linear_scan: bool,
    #[arg(long, global = true, value_enum)]
    pub arithmetic: Option<Arithmetic>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exact and second-order rates for every (epsilon, n) pair, as CSV.
    Rate,
    /// Optimal infidelity of p^n -> q^m.
    Infidelity,
    /// Corners of the Lorenz curve of the embedded p, as CSV.
    Curve,
    /// Rayleigh-normal CDF Z_nu(mu), or its inverse in mu.
    Rayleigh {
        /// Solve Z_nu(mu) = epsilon for mu instead.
        #[arg(long)]
        invert: bool,
    },
    /// Distillable work, work of formation and their gap, as JSON.
    Work,
    /// Second-order heat-engine report, as JSON.
    Engine,
    /// Rate table for the built-in qubit instance; a config only overrides keys it sets.
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Rational,
    Float,
}

/// A number given either as a JSON number or as a string (`"a/b"`, decimal).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    /// Exact value; JSON numbers are read through their shortest decimal form.
    pub fn rational(&self) -> Result<BigRational, CliError> {
        match self {
            Number::Float(x) => parse_rational(&x.to_string()),
            Number::Text(s) => parse_rational(s),
        }
        .map_err(CliError::config)
    }

    pub fn value(&self) -> Result<f64, CliError> {
        match self {
            Number::Float(x) => Ok(*x),
            Number::Text(_) => {
                let r = self.rational()?;
                Ok(ratio_to_f64(r.numer(), r.denom()))
            }
        }
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Number::Float(x)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Config {
    pub energies: Option<Vec<Number>>,
    pub beta: Option<Number>,
    pub temperature: Option<Number>,
    #[serde(rename = "kB")]
    pub kb: Option<Number>,
    pub embedding_precision: Option<u64>,
    pub arithmetic: Option<Arithmetic>,
    pub p: Option<Vec<Number>>,
    pub q: Option<Vec<Number>>,
    pub n: Option<OneOrMany<u32>>,
    pub epsilon: Option<OneOrMany<Number>>,
    pub m: Option<u32>,
    pub padding: Option<bool>,
    pub mu: Option<Number>,
    pub nu: Option<Number>,
    pub invert: Option<bool>,
    #[serde(rename = "Th")]
    pub th: Option<Number>,
    #[serde(rename = "Tc")]
    pub tc: Option<Number>,
    #[serde(rename = "TcPrime")]
    pub tc_prime: Option<Number>,
}

fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing key {key:?}"))
}

fn required<'a, T>(value: &'a Option<T>, key: &str) -> Result<&'a T, CliError> {
    value.as_ref().ok_or_else(|| missing(key))
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::config)
    }

    /// Fills the built-in qubit rate instance into every unset key.
    pub fn with_figure_defaults(mut self) -> Self {
        let nums = |xs: &[f64]| Some(xs.iter().map(|&x| Number::Float(x)).collect());
        if self.energies.is_none() {
            self.energies = nums(&[0.0, 1.0]);
        }
        if self.beta.is_none() && self.temperature.is_none() {
            self.temperature = Some(3.0.into());
        }
        if self.p.is_none() {
            self.p = nums(&[0.7, 0.3]);
        }
        if self.q.is_none() {
            self.q = nums(&[0.8, 0.2]);
        }
        if self.n.is_none() {
            self.n = Some(OneOrMany::Many((1..=10).map(|k| 20 * k).collect()));
        }
        if self.epsilon.is_none() {
            self.epsilon = Some(OneOrMany::Many(vec![0.05.into(), 1e-5.into()]));
        }
        if self.arithmetic.is_none() {
            self.arithmetic = Some(Arithmetic::Float);
        }
        self
    }

    fn energies(&self) -> Result<Vec<f64>, CliError> {
        required(&self.energies, "energies")?.iter().map(Number::value).collect()
    }

    fn kb(&self) -> Result<f64, CliError> {
        self.kb.as_ref().map_or(Ok(1.0), Number::value)
    }

    pub fn system(&self) -> Result<ThermalSystem, CliError> {
        let energies = self.energies()?;
        let kb = self.kb()?;
        match (&self.beta, &self.temperature) {
            (Some(b), None) => ThermalSystem::with_kb(energies, b.value()?, kb),
            (None, Some(t)) => ThermalSystem::from_temperature(energies, t.value()?, kb),
            _ => return Err(CliError::Config("give exactly one of \"beta\" and \"temperature\"".into())),
        }
        .map_err(CliError::config)
    }

    pub fn embedding(&self, system: &ThermalSystem) -> Result<EmbeddingSpec, CliError> {
        let precision = self.embedding_precision.unwrap_or(DEFAULT_EMBEDDING_PRECISION);
        if precision == 0 {
            return Err(CliError::Config("embeddingPrecision must be at least 1".into()));
        }
        let (spec, err) = EmbeddingSpec::from_gibbs(system, precision).map_err(CliError::config)?;
        log::info!("rational Gibbs state {:?}/{} (max error {err:.3e})", spec.numerators(), spec.denominator());
        Ok(spec)
    }

    fn copies(&self) -> Result<Vec<u32>, CliError> {
        let ns = required(&self.n, "n")?.to_vec();
        if ns.is_empty() || ns.contains(&0) {
            return Err(CliError::Config("\"n\" must hold positive integers".into()));
        }
        Ok(ns)
    }

    fn single_copies(&self) -> Result<u32, CliError> {
        match self.copies()?.as_slice() {
            [n] => Ok(*n),
            _ => Err(CliError::Config("this command takes a single \"n\"".into())),
        }
    }

    fn epsilons(&self) -> Result<Vec<f64>, CliError> {
        let eps: Vec<f64> = required(&self.epsilon, "epsilon")?
            .to_vec()
            .iter()
            .map(Number::value)
            .collect::<Result<_, _>>()?;
        if eps.is_empty() || eps.iter().any(|e| !(0.0..1.0).contains(e)) {
            return Err(CliError::Config("\"epsilon\" values must lie in [0, 1)".into()));
        }
        Ok(eps)
    }

    fn single_epsilon(&self) -> Result<f64, CliError> {
        match self.epsilons()?.as_slice() {
            [e] => Ok(*e),
            _ => Err(CliError::Config("this command takes a single \"epsilon\"".into())),
        }
    }

    fn distribution<S: Scalar>(&self, key: &str, dim: usize) -> Result<Distribution<S>, CliError> {
        let entries = match key {
            "p" => required(&self.p, key)?,
            _ => required(&self.q, key)?,
        };
        if entries.len() != dim {
            return Err(CliError::Config(format!("{key:?} has {} entries but there are {dim} levels", entries.len())));
        }
        let values = entries
            .iter()
            .map(|x| x.rational().map(|r| S::from_rational(&r)))
            .collect::<Result<Vec<S>, _>>()?;
        Distribution::new(values).map_err(|e| CliError::Config(format!("{key:?}: {e}")))
    }

    /// The command-line flag wins, then the config; otherwise rational
    /// arithmetic for small instances.
    fn arithmetic(&self, flag: Option<Arithmetic>, n_max: u32, dim: usize) -> Arithmetic {
        flag.or(self.arithmetic).unwrap_or(if n_max <= 200 && dim <= 3 {
            Arithmetic::Rational
        } else {
            Arithmetic::Float
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unreadable or inconsistent input (exit code 2).
    Config(String),
    /// A well-formed instance the library cannot solve (exit code 3).
    Infeasible(String),
    /// Failure writing the results (exit code 1).
    Io(String),
}

impl CliError {
    pub fn config(e: impl Display) -> Self {
        CliError::Config(e.to_string())
    }

    fn solve(e: Error) -> Self {
        match e {
            Error::Config(s) => CliError::Config(s),
            other => CliError::Infeasible(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "malformed configuration: {s}"),
            CliError::Infeasible(s) => write!(f, "infeasible instance: {s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

/// `x` with 12 significant digits, trailing zeros removed; scientific
/// notation outside `[1e-5, 1e15)`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exponent) {
        let decimals = (SIGNIFICANT_DIGITS - 1 - exponent).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.*e}", (SIGNIFICANT_DIGITS - 1) as usize);
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn optional(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

/// Rounds every float in a JSON tree to 12 significant digits.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            format_sig(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn to_json(v: impl serde::Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(e.to_string()))
}

/// Tag on JSON reports built from second-order formulas rather than the exact engine.
const SECOND_ORDER: &str = "second-order";

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports serialise to objects"),
    }
}

fn pretty(v: Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(&round_json(v)).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

struct Problem<S: Scalar> {
    p: Distribution<S>,
    q: Distribution<S>,
    spec: EmbeddingSpec,
    gamma: Distribution<S>,
}

impl<S: Scalar> Problem<S> {
    fn load(config: &Config, need_q: bool) -> Result<Self, CliError> {
        let system = config.system()?;
        let spec = config.embedding(&system)?;
        let p = config.distribution("p", spec.dim())?;
        let q = if need_q { config.distribution("q", spec.dim())? } else { p.clone() };
        let gamma = spec.gibbs_state();
        Ok(Self { p, q, spec, gamma })
    }
}

/// One CSV row per `(epsilon, n)` pair, epsilons outermost.
fn rate_table<S: Scalar>(config: &Config, cli: &Cli) -> Result<String, CliError> {
    let ns = config.copies()?;
    let epsilons = config.epsilons()?;
    let pr = Problem::<S>::load(config, true)?;
    let (p, q, gamma) = (&pr.p, &pr.q, &pr.gamma);
    let regime = classify(p, q, gamma).map_err(CliError::solve)?;
    let dq = rel_entropy(q, gamma).map_err(CliError::solve)?;
    let r1 = rel_entropy(p, gamma).map_err(CliError::solve)? / dq;
    let nu = match regime {
        Regime::FlatToFlat => None,
        Regime::Distillation => Some(f64::INFINITY),
        _ => irreversibility_nu(p, q, gamma).ok(),
    };
    let options = RateOptions { linear_scan: cli.linear_scan, ..Default::default() };
    let jobs: Vec<(f64, u32)> = epsilons.iter().flat_map(|&e| ns.iter().map(move |&n| (e, n))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(eps, n)| -> Result<String, CliError> {
            let exact = optimal_rate(p, q, &pr.spec, n, eps, options).map_err(CliError::solve)?;
            let r2 = match second_order_rate(n, eps, p, q, gamma) {
                Ok(r) => Some(r),
                Err(e) => {
                    log::warn!("no second-order estimate at n = {n}, epsilon = {eps}: {e}");
                    None
                }
            };
            let nf = n as f64;
            let rounded = r2.filter(|_| cli.round_rate).map(|r| (r * nf).round() / nf);
            Ok(format!(
                "{n},{},{},{},{},{},{},{},{}\n",
                exact.m,
                format_sig(exact.rate_f64()),
                optional(r2),
                optional(rounded),
                format_sig(r1),
                format_sig(eps),
                regime,
                optional(nu),
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = format!("{RATE_HEADER}\n");
    rows.iter().for_each(|r| out.push_str(r));
    Ok(out)
}

fn infidelity_value<S: Scalar>(config: &Config) -> Result<String, CliError> {
    let n = config.single_copies()?;
    let m = *required(&config.m, "m")?;
    let pr = Problem::<S>::load(config, true)?;
    let mut inst = ConversionInstance::new(pr.p, pr.q, pr.spec, n, m).map_err(CliError::config)?;
    inst.gibbs_padding = config.padding.unwrap_or(true);
    let eps = optimal_infidelity(&inst).map_err(CliError::solve)?;
    Ok(format!("{}\n", format_sig(eps)))
}

fn curve_table<S: Scalar>(config: &Config) -> Result<String, CliError> {
    let pr = Problem::<S>::load(config, false)?;
    let embedded = embed(&pr.p, &pr.spec).map_err(CliError::solve)?;
    let mut out = String::from("k,L\n");
    for (k, l) in lorenz_points(&embedded) {
        writeln!(out, "{k},{}", format_sig(l.to_f64())).expect("write to string");
    }
    Ok(out)
}

fn rayleigh_value(config: &Config, invert_flag: bool) -> Result<String, CliError> {
    let nu = required(&config.nu, "nu")?.value()?;
    let value = if invert_flag || config.invert.unwrap_or(false) {
        let eps = config.single_epsilon_any()?;
        rayleigh_normal_inverse(eps, nu)
    } else {
        rayleigh_normal(required(&config.mu, "mu")?.value()?, nu)
    }
    .map_err(CliError::solve)?;
    Ok(format!("{}\n", format_sig(value)))
}

impl Config {
    /// A single epsilon without the `[0, 1)` check, for the inverse CDF which
    /// reports its own domain errors.
    fn single_epsilon_any(&self) -> Result<f64, CliError> {
        match required(&self.epsilon, "epsilon")?.to_vec().as_slice() {
            [e] => e.value(),
            _ => Err(CliError::Config("this command takes a single \"epsilon\"".into())),
        }
    }
}

fn work_json(config: &Config) -> Result<String, CliError> {
    let n = config.single_copies()?;
    let eps = config.single_epsilon()?;
    let system = config.system()?;
    let p = config.distribution::<f64>("p", system.dim())?;
    let report = work_report(n, eps, &p, &system).map_err(CliError::solve)?;
    let mut map = object(to_json(report)?);
    map.insert("estimate".into(), SECOND_ORDER.into());
    pretty(Value::Object(map))
}

fn engine_json(config: &Config) -> Result<String, CliError> {
    let n = config.single_copies()?;
    let eps = config.single_epsilon()?;
    let t = |key: &str, v: &Option<Number>| required(v, key)?.value();
    let (th, tc, tc_prime) = (t("Th", &config.th)?, t("Tc", &config.tc)?, t("TcPrime", &config.tc_prime)?);
    let setup = EngineSetup::new(config.energies()?, config.kb()?, th, tc, tc_prime, n).map_err(CliError::config)?;
    let report = engine_performance(&setup, n, eps).map_err(CliError::solve)?;
    let rate = engine_error_rate(setup.hot_system(), th, tc, tc_prime).map_err(CliError::solve)?;
    let mut map = object(to_json(report)?);
    map.insert("estimate".into(), SECOND_ORDER.into());
    map.insert("carnotWork".into(), to_json(carnot_work(&setup).map_err(CliError::solve)?)?);
    map.insert("gOfTc".into(), to_json(rate.g_of_tc)?);
    map.insert("continuousErrorBound".into(), to_json(rate.continuous_error_bound)?);
    pretty(Value::Object(map))
}

fn read_config(path: Option<&Path>) -> Result<Config, CliError> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(CliError::config)?;
            s
        }
    };
    Config::from_json(&text)
}

fn dim_hint(config: &Config) -> usize {
    config.energies.as_ref().map_or(0, Vec::len)
}

fn max_copies(config: &Config) -> u32 {
    config.n.as_ref().map_or(0, |n| n.to_vec().into_iter().max().unwrap_or(0))
}

/// Runs one subcommand on an already parsed config and returns its output.
pub fn execute(cli: &Cli, config: &Config) -> Result<String, CliError> {
    let arithmetic = config.arithmetic(cli.arithmetic, max_copies(config), dim_hint(config));
    log::debug!("{:?} arithmetic", arithmetic);
    macro_rules! by_arithmetic {
        ($f:ident, $($arg:expr),*) => {
            match arithmetic {
                Arithmetic::Rational => $f::<Exact>($($arg),*),
                Arithmetic::Float => $f::<f64>($($arg),*),
            }
        };
    }
    match &cli.command {
        Command::Rate => by_arithmetic!(rate_table, config, cli),
        Command::Figure => {
            let config = config.clone().with_figure_defaults();
            let arithmetic = config.arithmetic(cli.arithmetic, 0, 0);
            match arithmetic {
                Arithmetic::Rational => rate_table::<Exact>(&config, cli),
                Arithmetic::Float => rate_table::<f64>(&config, cli),
            }
        }
        Command::Infidelity => by_arithmetic!(infidelity_value, config),
        Command::Curve => by_arithmetic!(curve_table, config),
        Command::Rayleigh { invert } => rayleigh_value(config, *invert),
        Command::Work => work_json(config),
        Command::Engine => engine_json(config),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("THERMOCONV_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Config(format!("THERMOCONV_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| CliError::Io(e.to_string()))
}

fn run_inner(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let config = match (&cli.command, &cli.config) {
        (Command::Figure, None) => Config::default(),
        (_, path) => read_config(path.as_deref())?,
    };
    let output = execute(cli, &config)?;
    match &cli.output {
        Some(path) => std::fs::write(path, output).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    match run_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("thermoconv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Entry point of the `thermoconv` binary.
pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    run(&Cli::parse())
}
