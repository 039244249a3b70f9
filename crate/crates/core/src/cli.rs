//! Command-line front end.
//!
//! Every subcommand prints one flat JSON record (or a CSV header and row with
//! `--format csv`). `sweep` re-runs another subcommand over a grid of one
//! parameter and prints one row per grid point.
//!
//! Exit codes: 0 when the result converged, 2 when a best-effort result is
//! printed but did not converge, 1 for usage and input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::identities::{lemma1_grid, lemma1_residual, theorem_residual, IdentityCase, IdentityId, DEFAULT_SEED};
use crate::orr_sommerfeld::{phi_quadrature_with, phi_series_with, AiryCenter, InterpretationFlag, OSParams, OSSolution};
use crate::oracle::{airy_integral, QuadratureResult};
use crate::series_integrals::{antiderivative, definite_integral, AntiderivativeValue, IntegrandSpec, Kernel};
use crate::special_functions::{pfq, pfq_1f1_asymptotic, two_f_zero_asymptotic, PFqParams, SeriesEvaluation, TruncationPolicy};
use crate::transforms::{fourier_gaussian, fourier_moment_gaussian, laplace_erf, laplace_moment_gaussian};
use crate::{airy_ai, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pfq", version, about = "Hypergeometric series, series antiderivatives and their quadrature checks")]
struct Cli {
    /// Relative truncation tolerance of every series.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Term budget of every series.
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized verification grids.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate pFq(a; b; z).
    #[command(allow_negative_numbers = true)]
    Pfq(PfqArgs),
    /// Series antiderivative of x^α kernel(ηx^β) pFq(λx^γ) at x.
    #[command(allow_negative_numbers = true)]
    Antideriv(AntiderivArgs),
    /// Definite integral over [a, b] from the series antiderivative.
    #[command(allow_negative_numbers = true)]
    Definite(DefiniteArgs),
    /// Residual of the product identity or of a kernel decomposition.
    #[command(allow_negative_numbers = true)]
    IdentityCheck(IdentityArgs),
    /// Fourier transform of x^α e^{−θ²x²}.
    #[command(allow_negative_numbers = true)]
    Fourier(FourierArgs),
    /// Laplace transform of x^α e^{−θ²x²} by optimal truncation.
    #[command(allow_negative_numbers = true)]
    Laplace(LaplaceArgs),
    /// Airy function Ai(z).
    #[command(allow_negative_numbers = true)]
    Airy(AiryArgs),
    /// Orr-Sommerfeld solution φ(y) for plane Couette flow.
    #[command(allow_negative_numbers = true)]
    OsSolve(OsArgs),
    /// Run another subcommand over a uniform grid of one of its parameters.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct ParamLists {
    /// Upper parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p_params: Vec<f64>,
    /// Imaginary parts of the upper parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p_params_im: Vec<f64>,
    /// Lower parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q_params: Vec<f64>,
    /// Imaginary parts of the lower parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q_params_im: Vec<f64>,
}

impl ParamLists {
    fn build(&self) -> crate::Result<PFqParams> {
        let join = |re: &[f64], im: &[f64], name: &str| -> crate::Result<Vec<Complex64>> {
            if !im.is_empty() && im.len() != re.len() {
                return Err(Error::InvalidParameter(format!("{name}-im needs one entry per {name} entry")));
            }
            Ok(re.iter().enumerate().map(|(i, &r)| Complex64::new(r, im.get(i).copied().unwrap_or(0.0))).collect())
        };
        PFqParams::new(join(&self.p_params, &self.p_params_im, "p-params")?, join(&self.q_params, &self.q_params_im, "q-params")?)
    }

    fn record(&self, inputs: &mut Inputs) {
        inputs.list("p_params", &self.p_params);
        inputs.list("p_params_im", &self.p_params_im);
        inputs.list("q_params", &self.q_params);
        inputs.list("q_params_im", &self.q_params_im);
    }
}

#[derive(Debug, Args)]
struct PfqArgs {
    #[command(flatten)]
    params: ParamLists,
    #[arg(long = "z-re", visible_alias = "z", default_value_t = 0.0)]
    z_re: f64,
    #[arg(long, default_value_t = 0.0)]
    z_im: f64,
    /// Use the large-|z| form for 1F1 or optimal truncation for 2F0.
    #[arg(long)]
    asymptotic: bool,
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long, default_value = "exp")]
    kernel: String,
    #[arg(long = "alpha-re", visible_alias = "alpha", default_value_t = 0.0)]
    alpha_re: f64,
    #[arg(long, default_value_t = 0.0)]
    alpha_im: f64,
    #[arg(long = "beta-re", visible_alias = "beta", default_value_t = 1.0)]
    beta_re: f64,
    #[arg(long, default_value_t = 0.0)]
    beta_im: f64,
    #[arg(long = "eta-re", visible_alias = "eta", default_value_t = 1.0)]
    eta_re: f64,
    #[arg(long, default_value_t = 0.0)]
    eta_im: f64,
    #[arg(long = "lambda-re", visible_alias = "lambda", default_value_t = 0.0)]
    lambda_re: f64,
    #[arg(long, default_value_t = 0.0)]
    lambda_im: f64,
    #[arg(long = "gamma-re", visible_alias = "gamma", default_value_t = 1.0)]
    gamma_re: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma_im: f64,
    #[command(flatten)]
    params: ParamLists,
}

impl SpecArgs {
    fn build(&self) -> crate::Result<IntegrandSpec> {
        let kernel: Kernel = self.kernel.parse()?;
        IntegrandSpec::new(
            kernel,
            Complex64::new(self.alpha_re, self.alpha_im),
            Complex64::new(self.beta_re, self.beta_im),
            Complex64::new(self.eta_re, self.eta_im),
            Complex64::new(self.lambda_re, self.lambda_im),
            Complex64::new(self.gamma_re, self.gamma_im),
            self.params.build()?,
        )
    }

    fn record(&self, inputs: &mut Inputs) {
        inputs.text("kernel", &self.kernel);
        inputs.complex("alpha", self.alpha_re, self.alpha_im);
        inputs.complex("beta", self.beta_re, self.beta_im);
        inputs.complex("eta", self.eta_re, self.eta_im);
        inputs.complex("lambda", self.lambda_re, self.lambda_im);
        inputs.complex("gamma", self.gamma_re, self.gamma_im);
        self.params.record(inputs);
    }
}

#[derive(Debug, Args)]
struct AntiderivArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long = "x-re", visible_alias = "x")]
    x_re: f64,
    #[arg(long, default_value_t = 0.0)]
    x_im: f64,
}

#[derive(Debug, Args)]
struct DefiniteArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// lemma1 or t1..t6.
    #[arg(long)]
    id: String,
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long = "x-re", visible_alias = "x", default_value_t = 0.5)]
    x_re: f64,
    #[arg(long, default_value_t = 0.0)]
    x_im: f64,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    j: usize,
    /// Product identity only: check this many random cases and report the largest residual.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Debug, Args)]
struct FourierArgs {
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 0.0)]
    k: f64,
    /// Integer moment; omit for the plain Gaussian.
    #[arg(long)]
    alpha: Option<i64>,
}

#[derive(Debug, Args)]
struct LaplaceArgs {
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long = "u-re", visible_alias = "u")]
    u_re: f64,
    #[arg(long, default_value_t = 0.0)]
    u_im: f64,
    /// Transform of the unnormalised error function instead.
    #[arg(long)]
    erf: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AiryMethod {
    Series,
    Integral,
}

#[derive(Debug, Args)]
struct AiryArgs {
    #[arg(long = "z-re", visible_alias = "z", default_value_t = 0.0)]
    z_re: f64,
    #[arg(long, default_value_t = 0.0)]
    z_im: f64,
    #[arg(long, value_enum, default_value_t = AiryMethod::Series)]
    method: AiryMethod,
    /// Tolerance of the integral method.
    #[arg(long, default_value_t = 1e-12)]
    quad_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OsMethod {
    Quadrature,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CenterArg {
    Consistent,
    AsPrinted,
}

#[derive(Debug, Args)]
struct OsArgs {
    #[arg(long)]
    y: f64,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 10.0)]
    r: f64,
    #[arg(long, default_value_t = 100.0)]
    re: f64,
    #[arg(long, default_value_t = 0.0)]
    omega_re: f64,
    #[arg(long, default_value_t = 0.1)]
    omega_im: f64,
    #[arg(long, value_enum, default_value_t = OsMethod::Quadrature)]
    method: OsMethod,
    #[arg(long, value_enum, default_value_t = CenterArg::Consistent)]
    center: CenterArg,
    /// Absolute tolerance of each Green's-function integral.
    #[arg(long, default_value_t = 1e-13)]
    quad_tol: f64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Flag of the inner subcommand to vary, without dashes (e.g. `z`, `x`, `y`).
    #[arg(long)]
    param: String,
    #[arg(long)]
    start: f64,
    #[arg(long)]
    stop: f64,
    /// Number of intervals; `steps + 1` rows are produced.
    #[arg(long)]
    steps: usize,
    /// The inner subcommand and its fixed flags, after `--`.
    #[arg(last = true, required = true)]
    inner: Vec<String>,
}

/// Ordered `name → value` map of the inputs a record was computed from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Inputs(BTreeMap<String, String>);

impl Inputs {
    fn float(&mut self, key: &str, v: f64) {
        self.0.insert(key.into(), format!("{v}"));
    }

    fn complex(&mut self, key: &str, re: f64, im: f64) {
        self.float(&format!("{key}_re"), re);
        self.float(&format!("{key}_im"), im);
    }

    fn text(&mut self, key: &str, v: &str) {
        self.0.insert(key.into(), v.into());
    }

    fn list(&mut self, key: &str, v: &[f64]) {
        if !v.is_empty() {
            let joined: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
            self.0.insert(key.into(), joined.join(","));
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

/// One result as printed by the CLI.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Inputs,
    pub value_re: f64,
    pub value_im: f64,
    pub error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

/// Fixed 17-significant-digit rendering; non-finite values become `null`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

impl OutputRecord {
    fn new(command: &str, inputs: Inputs) -> Self {
        Self {
            command: command.into(),
            inputs,
            value_re: f64::NAN,
            value_im: f64::NAN,
            error_estimate: f64::NAN,
            terms_used: 0,
            converged: false,
            warnings: Vec::new(),
        }
    }

    fn with_value(mut self, value: Complex64, error: f64, terms: usize, converged: bool) -> Self {
        self.value_re = value.re;
        self.value_im = value.im;
        self.error_estimate = error;
        self.terms_used = terms;
        self.converged = converged;
        self
    }

    fn with_series(self, s: &SeriesEvaluation) -> Self {
        self.with_value(s.value, s.error_estimate, s.terms_used, s.converged)
    }

    fn with_antiderivative(mut self, a: &AntiderivativeValue, converged: bool) -> Self {
        self.warnings.extend(a.warnings.iter().cloned());
        self.with_value(a.value, a.error_estimate, a.outer_terms_used, converged && a.inner_diagnostics.converged)
    }

    fn with_quadrature(self, q: &QuadratureResult) -> Self {
        self.with_value(q.value, q.error_estimate, q.evaluations, q.converged)
    }

    fn json_fields(&self, out: &mut String) {
        let _ = write!(out, "\"command\":{},\"inputs\":{{", json_string(&self.command));
        for (i, (k, v)) in self.inputs.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}:{}", json_string(k), json_string(v));
        }
        let _ = write!(
            out,
            "}},\"value_re\":{},\"value_im\":{},\"error_estimate\":{},\"terms_used\":{},\"converged\":{},\"warnings\":[",
            format_float(self.value_re),
            format_float(self.value_im),
            format_float(self.error_estimate),
            self.terms_used,
            self.converged
        );
        for (i, w) in self.warnings.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&json_string(w));
        }
        out.push(']');
    }

    /// Single-line JSON object with a fixed key order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        self.json_fields(&mut out);
        out.push('}');
        out
    }

    pub const CSV_HEADER: &'static str = "command,value_re,value_im,error_estimate,terms_used,converged";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.command,
            csv_float(self.value_re),
            csv_float(self.value_im),
            csv_float(self.error_estimate),
            self.terms_used,
            self.converged
        )
    }
}

fn csv_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NaN".into()
    }
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Outcome {
    Record(OutputRecord),
    Failure(String),
}

impl Outcome {
    fn code(&self) -> i32 {
        match self {
            Outcome::Record(r) if r.converged => EXIT_OK,
            Outcome::Record(_) => EXIT_NOT_CONVERGED,
            Outcome::Failure(_) => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Globals {
    policy: TruncationPolicy,
    seed: u64,
}

/// Parses `args` (program name first) and runs the selected subcommand.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CliOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CliOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let globals = match globals(&cli) {
        Ok(g) => g,
        Err(msg) => return CliOutput { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    if let Command::Sweep(sweep) = &cli.command {
        return run_sweep(sweep, &cli, globals);
    }
    let outcome = execute(&cli.command, globals);
    let code = outcome.code();
    match outcome {
        Outcome::Record(r) => {
            let stdout = match cli.format {
                Format::Json => format!("{}\n", r.to_json()),
                Format::Csv => format!("{}\n{}\n", OutputRecord::CSV_HEADER, r.to_csv_row()),
            };
            CliOutput { code, stdout, stderr: String::new() }
        }
        Outcome::Failure(msg) => CliOutput { code, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn globals(cli: &Cli) -> Result<Globals, String> {
    let base = TruncationPolicy::default();
    let policy = TruncationPolicy::new(
        cli.tol.unwrap_or(base.rel_tol),
        base.abs_tol,
        cli.max_terms.unwrap_or(base.max_terms),
        base.consecutive_small,
    )
    .map_err(|e| e.to_string())?;
    Ok(Globals { policy, seed: cli.seed.unwrap_or(DEFAULT_SEED) })
}

/// Turns a failed computation into either a best-effort record or a hard failure.
fn settle(record: OutputRecord, err: Error) -> Outcome {
    match err {
        Error::NotConverged(s) => Outcome::Record(record.with_series(&s).with_failure_note("series did not converge")),
        Error::OuterNotConverged(a) => {
            Outcome::Record(record.with_antiderivative(&a, false).with_failure_note("outer series did not converge"))
        }
        Error::MaxSubdivisions(q) => {
            Outcome::Record(record.with_quadrature(&q).with_failure_note("quadrature hit the subdivision cap"))
        }
        other => Outcome::Failure(other.to_string()),
    }
}

impl OutputRecord {
    fn with_failure_note(mut self, note: &str) -> Self {
        self.converged = false;
        self.warnings.push(note.into());
        self
    }
}

fn execute(command: &Command, g: Globals) -> Outcome {
    let policy = &g.policy;
    match command {
        Command::Pfq(a) => {
            let mut inputs = Inputs::default();
            a.params.record(&mut inputs);
            inputs.complex("z", a.z_re, a.z_im);
            if a.asymptotic {
                inputs.text("mode", "asymptotic");
            }
            let record = OutputRecord::new("pfq", inputs);
            let z = Complex64::new(a.z_re, a.z_im);
            let result = a.params.build().and_then(|params| {
                if !a.asymptotic {
                    return pfq(&params, z, policy);
                }
                match (params.upper(), params.lower()) {
                    ([a1], [b1]) => pfq_1f1_asymptotic(*a1, *b1, z),
                    ([a1, a2], []) => two_f_zero_asymptotic(*a1, *a2, z),
                    _ => Err(Error::InvalidParameter("asymptotic mode covers 1F1 and 2F0 only".into())),
                }
            });
            match result {
                Ok(s) => Outcome::Record(record.with_series(&s)),
                Err(e) => settle(record, e),
            }
        }
        Command::Antideriv(a) => {
            let mut inputs = Inputs::default();
            a.spec.record(&mut inputs);
            inputs.complex("x", a.x_re, a.x_im);
            let record = OutputRecord::new("antideriv", inputs);
            match a.spec.build().and_then(|spec| antiderivative(&spec, Complex64::new(a.x_re, a.x_im), policy)) {
                Ok(v) => Outcome::Record(record.with_antiderivative(&v, true)),
                Err(e) => settle(record, e),
            }
        }
        Command::Definite(a) => {
            let mut inputs = Inputs::default();
            a.spec.record(&mut inputs);
            inputs.float("a", a.a);
            inputs.float("b", a.b);
            let record = OutputRecord::new("definite", inputs);
            match a.spec.build().and_then(|spec| definite_integral(&spec, a.a, a.b, policy)) {
                Ok(v) => Outcome::Record(record.with_antiderivative(&v, true)),
                Err(e) => settle(record, e),
            }
        }
        Command::IdentityCheck(a) => identity_check(a, g),
        Command::Fourier(a) => {
            let mut inputs = Inputs::default();
            inputs.float("theta", a.theta);
            inputs.float("k", a.k);
            let record = match a.alpha {
                None => {
                    let record = OutputRecord::new("fourier", inputs);
                    match fourier_gaussian(a.theta, a.k) {
                        Ok(v) => record.with_value(Complex64::new(v, 0.0), 0.0, 0, true),
                        Err(e) => return settle(record, e),
                    }
                }
                Some(alpha) => {
                    inputs.text("alpha", &alpha.to_string());
                    let record = OutputRecord::new("fourier", inputs);
                    match fourier_moment_gaussian(alpha, a.theta, a.k, policy) {
                        Ok(s) => record.with_series(&s),
                        Err(e) => return settle(record, e),
                    }
                }
            };
            Outcome::Record(record)
        }
        Command::Laplace(a) => {
            let mut inputs = Inputs::default();
            let u = Complex64::new(a.u_re, a.u_im);
            inputs.complex("u", a.u_re, a.u_im);
            let result = if a.erf {
                inputs.text("transform", "erf");
                laplace_erf(u)
            } else {
                inputs.float("alpha", a.alpha);
                inputs.float("theta", a.theta);
                laplace_moment_gaussian(a.alpha, a.theta, u)
            };
            let record = OutputRecord::new("laplace", inputs);
            match result {
                Ok(s) => Outcome::Record(record.with_series(&s)),
                Err(e) => settle(record, e),
            }
        }
        Command::Airy(a) => {
            let mut inputs = Inputs::default();
            inputs.complex("z", a.z_re, a.z_im);
            let z = Complex64::new(a.z_re, a.z_im);
            match a.method {
                AiryMethod::Series => {
                    inputs.text("method", "series");
                    let record = OutputRecord::new("airy", inputs);
                    match airy_ai(z, policy) {
                        Ok(s) => Outcome::Record(record.with_series(&s)),
                        Err(e) => settle(record, e),
                    }
                }
                AiryMethod::Integral => {
                    inputs.text("method", "integral");
                    inputs.float("quad_tol", a.quad_tol);
                    let record = OutputRecord::new("airy", inputs);
                    match airy_integral(z, a.quad_tol) {
                        Ok(q) => Outcome::Record(record.with_quadrature(&q)),
                        Err(e) => settle(record, e),
                    }
                }
            }
        }
        Command::OsSolve(a) => os_solve(a, policy),
        Command::Sweep(_) => Outcome::Failure("sweeps cannot be nested".into()),
    }
}

fn identity_check(a: &IdentityArgs, g: Globals) -> Outcome {
    let mut inputs = Inputs::default();
    inputs.text("id", &a.id.to_ascii_lowercase());
    let id: IdentityId = match a.id.parse() {
        Ok(id) => id,
        Err(e) => return Outcome::Failure(Error::to_string(&e)),
    };
    if id == IdentityId::Lemma1 {
        if let Some(count) = a.grid {
            inputs.text("grid", &count.to_string());
            inputs.text("seed", &g.seed.to_string());
            let record = OutputRecord::new("identity-check", inputs);
            let residuals: Vec<crate::Result<f64>> = lemma1_grid(count, g.seed)
                .into_par_iter()
                .map(|(al, be, ga, n, j)| {
                    let c = |v: f64| Complex64::new(v, 0.0);
                    lemma1_residual(c(al), c(be), c(ga), n, j)
                })
                .collect();
            let mut worst = 0.0f64;
            for r in residuals {
                match r {
                    Ok(v) => worst = worst.max(v),
                    Err(e) => return settle(record, e),
                }
            }
            return Outcome::Record(record.with_value(Complex64::new(worst, 0.0), 0.0, count, true));
        }
        inputs.complex("alpha", a.spec.alpha_re, a.spec.alpha_im);
        inputs.complex("beta", a.spec.beta_re, a.spec.beta_im);
        inputs.complex("gamma", a.spec.gamma_re, a.spec.gamma_im);
        inputs.text("n", &a.n.to_string());
        inputs.text("j", &a.j.to_string());
        let record = OutputRecord::new("identity-check", inputs);
        return match lemma1_residual(
            Complex64::new(a.spec.alpha_re, a.spec.alpha_im),
            Complex64::new(a.spec.beta_re, a.spec.beta_im),
            Complex64::new(a.spec.gamma_re, a.spec.gamma_im),
            a.n,
            a.j,
        ) {
            Ok(r) => Outcome::Record(record.with_value(Complex64::new(r, 0.0), 0.0, a.j + 1, true)),
            Err(e) => settle(record, e),
        };
    }
    a.spec.record(&mut inputs);
    inputs.complex("x", a.x_re, a.x_im);
    let record = OutputRecord::new("identity-check", inputs);
    let result = a.spec.build().and_then(|spec| {
        let case = IdentityCase { id, spec, x: Complex64::new(a.x_re, a.x_im), n: a.n, j: a.j };
        theorem_residual(&case, &g.policy)
    });
    match result {
        Ok(r) => Outcome::Record(record.with_value(Complex64::new(r, 0.0), 0.0, 0, true)),
        Err(e) => settle(record, e),
    }
}

fn flag_name(flag: &InterpretationFlag) -> String {
    match flag {
        InterpretationFlag::ImplicitBlockSum => "interpretation: adjacent blocks summed".into(),
        InterpretationFlag::TwoFThreeInsideSum => "interpretation: 2F3 factors inside the j-sums".into(),
        InterpretationFlag::PrintedNormalization => "interpretation: printed Airy normalisation".into(),
        InterpretationFlag::Center(AiryCenter::Consistent) => "airy centre: lambda/(i Re k)".into(),
        InterpretationFlag::Center(AiryCenter::AsPrinted) => "airy centre: lambda".into(),
    }
}

fn os_solve(a: &OsArgs, policy: &TruncationPolicy) -> Outcome {
    let mut inputs = Inputs::default();
    inputs.float("y", a.y);
    inputs.float("k", a.k);
    inputs.float("r", a.r);
    inputs.float("re", a.re);
    inputs.complex("omega", a.omega_re, a.omega_im);
    let center = match a.center {
        CenterArg::Consistent => AiryCenter::Consistent,
        CenterArg::AsPrinted => AiryCenter::AsPrinted,
    };
    inputs.text("center", if center == AiryCenter::Consistent { "consistent" } else { "as-printed" });
    let params = OSParams::new(a.k, a.r, a.re, Complex64::new(a.omega_re, a.omega_im));
    let result: crate::Result<OSSolution> = match a.method {
        OsMethod::Quadrature => {
            inputs.text("method", "quadrature");
            inputs.float("quad_tol", a.quad_tol);
            params.and_then(|p| phi_quadrature_with(a.y, &p, center, a.quad_tol))
        }
        OsMethod::Series => {
            inputs.text("method", "series");
            params.and_then(|p| phi_series_with(a.y, &p, center, policy))
        }
    };
    let record = OutputRecord::new("os-solve", inputs);
    match result {
        Ok(s) => {
            let mut record = record.with_value(s.phi, s.error_estimate, s.evaluations, s.converged);
            record.warnings.extend(s.flags.iter().map(flag_name));
            Outcome::Record(record)
        }
        Err(e) => settle(record, e),
    }
}

/// Grid point `i` of `steps` intervals; the last point is `stop` exactly.
fn grid_point(start: f64, stop: f64, steps: usize, i: usize) -> f64 {
    if i == steps {
        stop
    } else {
        start + (stop - start) * (i as f64 / steps as f64)
    }
}

fn run_sweep(sweep: &SweepArgs, cli: &Cli, g: Globals) -> CliOutput {
    let usage = |msg: String| CliOutput { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") };
    if sweep.steps == 0 {
        return usage("sweep needs at least one step".into());
    }
    if !(sweep.start.is_finite() && sweep.stop.is_finite()) {
        return usage("sweep limits must be finite".into());
    }
    let flag = format!("--{}", sweep.param.trim_start_matches('-'));
    let commands: Result<Vec<Command>, String> = (0..=sweep.steps)
        .map(|i| {
            let value = grid_point(sweep.start, sweep.stop, sweep.steps, i);
            let mut argv = vec!["pfq".to_string()];
            argv.extend(sweep.inner.iter().cloned());
            argv.push(format!("{flag}={value:e}"));
            Cli::try_parse_from(&argv).map(|c| c.command).map_err(|e| e.render().to_string())
        })
        .collect();
    let commands = match commands {
        Ok(c) => c,
        Err(msg) => return usage(msg.trim_end().trim_start_matches("error: ").to_string()),
    };
    if commands.iter().any(|c| matches!(c, Command::Sweep(_))) {
        return usage("sweeps cannot be nested".into());
    }
    let outcomes: Vec<Outcome> = commands.par_iter().map(|c| execute(c, g)).collect();

    let mut code = EXIT_OK;
    let mut stderr = String::new();
    let mut rows = Vec::with_capacity(outcomes.len());
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let grid = grid_point(sweep.start, sweep.stop, sweep.steps, i);
        code = code.max(outcome.code());
        let record = match outcome {
            Outcome::Record(r) => r,
            Outcome::Failure(msg) => {
                let _ = writeln!(stderr, "error: row {i}: {msg}");
                let mut r = OutputRecord::new(&sweep.inner[0], Inputs::default());
                r.warnings.push(msg);
                r
            }
        };
        rows.push((grid, record));
    }
    let stdout = match cli.format {
        Format::Json => {
            let mut out = format!("{{\"command\":\"sweep\",\"param\":{},\"rows\":[", json_string(&sweep.param));
            for (i, (grid, r)) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{{\"index\":{i},\"grid\":{},", format_float(*grid));
                r.json_fields(&mut out);
                out.push('}');
            }
            out.push_str("]}\n");
            out
        }
        Format::Csv => {
            let mut out = format!("index,grid,{}\n", OutputRecord::CSV_HEADER);
            for (i, (grid, r)) in rows.iter().enumerate() {
                let _ = writeln!(out, "{i},{},{}", csv_float(*grid), r.to_csv_row());
            }
            out
        }
    };
    CliOutput { code, stdout, stderr }
}
