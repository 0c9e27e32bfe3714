//! Command-line front end for `pcform`.
//!
//! [`run`] parses arguments, reads an input document from a file or
//! standard input, dispatches on the document's field and renders the result
//! as ASCII text (`--pretty`, the default) or as a lossless JSON document
//! (`--json`). Exit status 0 means success, 1 a domain error (its name is
//! written to standard error), 2 a malformed command line or document.

pub mod doc;
pub mod json;
pub mod pretty;
pub mod scalar;

use std::ffi::OsString;
use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use pcform::{
    closedform_eval, complex_pcf, expm_closed_with_tol, expm_real_with_tol, kron_minpoly_direct_with_tol,
    kron_minpoly_symbolic_with_tol, log_pcf_with_tol, logm_with_tol, lrs_eval, lrs_product_poly_with_tol,
    pcf_build_with_tol, pcf_eval, pcf_realify_with_tol, pcf_to_gamma, pcf_to_lambda, wedge, Basis, EigSpec, Error,
    Fp, LinRecSeq, LogBranchSpec, Matrix, PCanonicalForm, Poly, WedgeContext, DEFAULT_TOL,
};

pub use doc::InputDocument;
pub use scalar::{CliScalar, FieldDesc};

/// Malformed command line or input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(String);

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Domain(Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "pcform",
    version,
    about = "P-canonical forms, Kronecker minimal polynomials, recurrence products and closed-form exp/log",
    after_help = "Input documents are JSON objects such as {\"field\": \"Q\", \"matrix\": [[2, 1], [0, 2]]}.\n\
                  field is \"Q\" (default), \"C\", or \"Fp\" with \"p\"; rationals are integers or \"n/d\" strings,\n\
                  complex entries {\"re\": x, \"im\": y}. Polynomials are ascending coefficient arrays\n\
                  (constant term first), so [-1, -1, 1] is X^2-X-1."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a lossless JSON document.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit ASCII text (default).
    #[arg(long, global = true)]
    pretty: bool,
    /// Numeric tolerance [default: 1e-8, or options.tol of the document].
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Allow exact input whose spectrum does not split to continue numerically over C.
    #[arg(long, global = true)]
    numeric: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    Lambda,
    Gamma,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// P-canonical form of a matrix.
    Pcf {
        /// Input document (standard input when absent or "-").
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "lambda")]
        basis: BasisArg,
        /// Real form with conjugate pairs merged (real input only).
        #[arg(long)]
        real: bool,
    },
    /// A^k evaluated from the P-canonical form.
    Power {
        input: Option<PathBuf>,
        /// Exponent [or options.k].
        #[arg(long)]
        k: Option<u64>,
    },
    /// Closed form of e^{tA}.
    Expm {
        input: Option<PathBuf>,
        /// Evaluate at this t instead of printing the closed form [or options.t].
        #[arg(long)]
        at: Option<f64>,
        /// Real closed form (real input only).
        #[arg(long)]
        real: bool,
    },
    /// Matrix logarithm on a chosen branch.
    Logm {
        input: Option<PathBuf>,
        /// Principal branch (default).
        #[arg(long, conflicts_with = "branch")]
        principal: bool,
        /// One branch index per distinct eigenvalue, in canonical eigenvalue order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        branch: Option<Vec<i64>>,
        /// Print the P-canonical form of the logarithm instead of the matrix.
        #[arg(long)]
        form: bool,
    },
    /// Minimal polynomial of a Kronecker product (document key "matrices").
    KronMinpoly {
        input: Option<PathBuf>,
        /// Build the product explicitly instead of using the spectra.
        #[arg(long)]
        direct: bool,
    },
    /// Characteristic polynomial of termwise products of recurrence sequences.
    LrsProduct {
        /// Characteristic polynomials as JSON arrays, e.g. '[-1,-1,1]'; read
        /// "polynomials" from a document on standard input when absent.
        polys: Vec<String>,
        /// Field characteristic: 0 for Q, a prime p for F_p.
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// n-th term of a recurrence sequence.
    LrsEval {
        /// Document with "sequence" (used when --poly is absent).
        input: Option<PathBuf>,
        /// Characteristic polynomial as a JSON array.
        #[arg(long, requires = "initial")]
        poly: Option<String>,
        /// Initial terms as a JSON array.
        #[arg(long, requires = "poly")]
        initial: Option<String>,
        /// Index of the term [or options.n].
        #[arg(long)]
        n: Option<u64>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Wedge s^t: the nilpotency index of J_s(1) (x) J_t(1) - I in characteristic c.
    Wedge {
        s: usize,
        t: usize,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Json,
    Pretty,
}

struct Settings {
    mode: Mode,
    tol: f64,
    numeric: bool,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli, stdin) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(CliError::Parse(e)) => Outcome { code: 2, stdout: String::new(), stderr: format!("ParseError: {e}\n") },
        Err(CliError::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("{}: {e}\n", e.name()) },
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<InputDocument, CliError> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| ParseError::new(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| ParseError::new(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    InputDocument::parse(&text)
}

fn settings(cli: &Cli, doc: Option<&InputDocument>) -> Result<Settings, ParseError> {
    let tol = match (cli.tol, doc) {
        (Some(t), _) => t,
        (None, Some(d)) => d.opt_f64("tol")?.unwrap_or(DEFAULT_TOL),
        (None, None) => DEFAULT_TOL,
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(ParseError::new(format!("tolerance must be positive, got {tol}")));
    }
    let numeric = cli.numeric || doc.map(|d| d.opt_bool("numeric")).transpose()?.unwrap_or(false);
    let mode = if cli.json { Mode::Json } else { Mode::Pretty };
    Ok(Settings { mode, tol, numeric })
}

/// Positional JSON arguments; a typographic minus is accepted.
fn parse_arg_json(text: &str) -> Result<serde_json::Value, ParseError> {
    serde_json::from_str(&text.replace('\u{2212}', "-")).map_err(|e| ParseError::new(format!("invalid JSON argument {text:?}: {e}")))
}

macro_rules! dispatch {
    ($field:expr, $f:ident ( $($arg:expr),* )) => {
        match $field {
            FieldDesc::Q => $f::<BigRational>(&(), $($arg),*),
            FieldDesc::Fp(m) => $f::<Fp>(&m, $($arg),*),
            FieldDesc::C => $f::<Complex64>(&(), $($arg),*),
        }
    };
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    match &cli.command {
        Command::Pcf { input, basis, real } => {
            let doc = read_input(input, stdin)?;
            let s = settings(&cli, Some(&doc))?;
            let basis = match basis {
                BasisArg::Lambda => Basis::Lambda,
                BasisArg::Gamma => Basis::Gamma,
            };
            dispatch!(doc.field, cmd_pcf(&doc, &s, basis, *real))
        }
        Command::Power { input, k } => {
            let doc = read_input(input, stdin)?;
            let s = settings(&cli, Some(&doc))?;
            let k = match k {
                Some(k) => *k,
                None => doc.opt_u64("k")?.ok_or_else(|| ParseError::new("power needs --k or options.k"))?,
            };
            dispatch!(doc.field, cmd_power(&doc, &s, k))
        }
        Command::Expm { input, at, real } => {
            let doc = read_input(input, stdin)?;
            let s = settings(&cli, Some(&doc))?;
            let at = match at {
                Some(t) => Some(*t),
                None => doc.opt_f64("t")?,
            };
            dispatch!(doc.field, cmd_expm(&doc, &s, at, *real))
        }
        Command::Logm { input, principal, branch, form } => {
            let doc = read_input(input, stdin)?;
            let s = settings(&cli, Some(&doc))?;
            let branch = match (principal, branch) {
                (true, _) => LogBranchSpec::Principal,
                (false, Some(b)) => LogBranchSpec::Branches(b.clone()),
                (false, None) => match doc.opt_branch()? {
                    Some(b) if !doc.opt_bool("principal")? => LogBranchSpec::Branches(b),
                    _ => LogBranchSpec::Principal,
                },
            };
            dispatch!(doc.field, cmd_logm(&doc, &s, &branch, *form))
        }
        Command::KronMinpoly { input, direct } => {
            let doc = read_input(input, stdin)?;
            let s = settings(&cli, Some(&doc))?;
            dispatch!(doc.field, cmd_kron(&doc, &s, *direct))
        }
        Command::LrsProduct { polys, characteristic } => {
            let (field, values, s) = if polys.is_empty() {
                let doc = read_input(&None, stdin)?;
                let s = settings(&cli, Some(&doc))?;
                (doc.field, PolySource::Doc(doc), s)
            } else {
                let field = FieldDesc::from_characteristic(*characteristic)?;
                let values = polys.iter().map(|p| parse_arg_json(p)).collect::<Result<Vec<_>, _>>()?;
                (field, PolySource::Args(values), settings(&cli, None)?)
            };
            dispatch!(field, cmd_lrs_product(&values, &s))
        }
        Command::LrsEval { input, poly, initial, n, characteristic } => {
            let (field, source, doc) = match (poly, initial) {
                (Some(p), Some(i)) => {
                    let field = FieldDesc::from_characteristic(*characteristic)?;
                    (field, SeqSource::Args(parse_arg_json(p)?, parse_arg_json(i)?), None)
                }
                _ => {
                    let doc = read_input(input, stdin)?;
                    (doc.field, SeqSource::Doc(doc.clone()), Some(doc))
                }
            };
            let s = settings(&cli, doc.as_ref())?;
            let n = match (n, &doc) {
                (Some(n), _) => *n,
                (None, Some(d)) => d.opt_u64("n")?.ok_or_else(|| ParseError::new("lrs-eval needs --n or options.n"))?,
                (None, None) => return Err(ParseError::new("lrs-eval needs --n").into()),
            };
            dispatch!(field, cmd_lrs_eval(&source, &s, n))
        }
        Command::Wedge { s: bs, t, characteristic } => {
            let s = settings(&cli, None)?;
            let ctx = WedgeContext::new(*characteristic)?;
            let value = wedge(*bs, *t, &ctx);
            Ok(match s.mode {
                Mode::Pretty => format!("{value}\n"),
                Mode::Json => json::render(
                    serde_json::json!({ "type": "wedge", "s": bs, "t": t, "char": characteristic, "value": value })
                        .as_object()
                        .cloned()
                        .expect("object literal"),
                ),
            })
        }
    }
}

fn emit_pcf<F: CliScalar>(f: &PCanonicalForm<F>, a: Option<&Matrix<F>>, s: &Settings) -> String {
    match s.mode {
        Mode::Json => json::render(json::pcf_doc(f)),
        Mode::Pretty => pretty::pcf(f, a, s.tol),
    }
}

fn emit_matrix<F: CliScalar>(m: &Matrix<F>, s: &Settings) -> String {
    match s.mode {
        Mode::Json => json::render(json::matrix_doc(m)),
        Mode::Pretty => pretty::matrix(m),
    }
}

fn emit_poly<F: CliScalar>(p: &Poly<F>, s: &Settings) -> String {
    match s.mode {
        Mode::Json => json::render(json::poly_doc(p)),
        Mode::Pretty => pretty::poly(p),
    }
}

fn with_basis<F: CliScalar>(f: PCanonicalForm<F>, basis: Basis) -> pcform::Result<PCanonicalForm<F>> {
    match (f.basis(), basis) {
        (Basis::Gamma, Basis::Lambda) => pcf_to_lambda(&f),
        (Basis::Lambda, Basis::Gamma) => pcf_to_gamma(&f),
        _ => Ok(f),
    }
}

/// Exact input whose minimal polynomial does not split is an error unless
/// `--numeric` was given.
fn require_split<F: CliScalar>(a: &Matrix<F>, s: &Settings) -> Result<(), CliError> {
    if F::EXACT && !s.numeric {
        if let Err(Error::NonSplitField) = pcf_build_with_tol(a, s.tol) {
            return Err(Error::NonSplitField.into());
        }
    }
    Ok(())
}

/// The form over C, through the exact path when it applies.
fn complex_form<F: CliScalar>(a: &Matrix<F>, s: &Settings) -> Result<(PCanonicalForm<Complex64>, Matrix<Complex64>), CliError> {
    let ac = a.to_complex().ok_or(Error::CharPositive)?;
    require_split(a, s)?;
    Ok((complex_pcf(a, s.tol)?, ac))
}

fn cmd_pcf<F: CliScalar>(ctx: &F::Ctx, doc: &InputDocument, s: &Settings, basis: Basis, real: bool) -> Result<String, CliError> {
    let a = doc.matrix::<F>(ctx)?;
    if real {
        let (f, _) = complex_form(&a, s)?;
        let r = pcf_realify_with_tol(&with_basis(f, basis)?, s.tol)?;
        return Ok(match s.mode {
            Mode::Json => json::render(json::real_pcf_doc(&r)),
            Mode::Pretty => pretty::real_pcf(&r, s.tol),
        });
    }
    match pcf_build_with_tol(&a, s.tol) {
        Ok(f) => Ok(emit_pcf(&with_basis(f, basis)?, Some(&a), s)),
        Err(Error::NonSplitField) if s.numeric => {
            let ac = a.to_complex().ok_or(Error::NonSplitField)?;
            let f = pcf_build_with_tol(&ac, s.tol)?;
            Ok(emit_pcf(&with_basis(f, basis)?, Some(&ac), s))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_power<F: CliScalar>(ctx: &F::Ctx, doc: &InputDocument, s: &Settings, k: u64) -> Result<String, CliError> {
    let a = doc.matrix::<F>(ctx)?;
    match pcf_build_with_tol(&a, s.tol) {
        Ok(f) => Ok(emit_matrix(&pcf_eval(&f, k), s)),
        Err(Error::NonSplitField) if s.numeric => {
            let ac = a.to_complex().ok_or(Error::NonSplitField)?;
            let f = pcf_build_with_tol(&ac, s.tol)?;
            Ok(emit_matrix(&pcf_eval(&f, k), s))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_expm<F: CliScalar>(ctx: &F::Ctx, doc: &InputDocument, s: &Settings, at: Option<f64>, real: bool) -> Result<String, CliError> {
    let a = doc.matrix::<F>(ctx)?;
    let ac = a.to_complex().ok_or(Error::CharPositive)?;
    require_split(&a, s)?;
    if real {
        let e = expm_real_with_tol(&a, s.tol)?;
        return Ok(match (at, s.mode) {
            (Some(t), Mode::Json) => json::render(json::real_matrix_doc(&e.eval(t))),
            (Some(t), Mode::Pretty) => pretty::real_matrix(&e.eval(t)),
            (None, Mode::Json) => json::render(json::real_closed_form_doc(&e)),
            (None, Mode::Pretty) => pretty::real_closed_form(&e, s.tol),
        });
    }
    let e = expm_closed_with_tol(&a, s.tol)?;
    Ok(match (at, s.mode) {
        (Some(t), _) => emit_matrix(&closedform_eval(&e, Complex64::new(t, 0.0)), s),
        (None, Mode::Json) => json::render(json::closed_form_doc(&e)),
        (None, Mode::Pretty) => pretty::closed_form(&e, Some(&ac), s.tol),
    })
}

fn cmd_logm<F: CliScalar>(ctx: &F::Ctx, doc: &InputDocument, s: &Settings, branch: &LogBranchSpec, form: bool) -> Result<String, CliError> {
    let a = doc.matrix::<F>(ctx)?;
    if form {
        let (f, _) = complex_form(&a, s)?;
        let l = log_pcf_with_tol(&pcf_to_gamma(&f)?, branch, s.tol)?;
        return Ok(emit_pcf(&l, None, s));
    }
    a.to_complex().ok_or(Error::CharPositive)?;
    require_split(&a, s)?;
    Ok(emit_matrix(&logm_with_tol(&a, branch, s.tol)?, s))
}

fn cmd_kron<F: CliScalar>(ctx: &F::Ctx, doc: &InputDocument, s: &Settings, direct: bool) -> Result<String, CliError> {
    let mats = doc.matrices::<F>(ctx)?;
    if direct {
        return Ok(emit_poly(&kron_minpoly_direct_with_tol(&mats, s.tol)?, s));
    }
    let specs: pcform::Result<Vec<EigSpec<F>>> = mats.iter().map(|m| EigSpec::from_matrix_with_tol(m, s.tol)).collect();
    let p = match specs {
        Ok(specs) => kron_minpoly_symbolic_with_tol(&specs, &WedgeContext::of_field::<F>(ctx), s.tol)?,
        // the explicit product stays exact, so nothing is lost
        Err(Error::NonSplitField) => kron_minpoly_direct_with_tol(&mats, s.tol)?,
        Err(e) => return Err(e.into()),
    };
    Ok(emit_poly(&p, s))
}

enum PolySource {
    Args(Vec<serde_json::Value>),
    Doc(InputDocument),
}

fn cmd_lrs_product<F: CliScalar>(ctx: &F::Ctx, src: &PolySource, s: &Settings) -> Result<String, CliError> {
    let polys = match src {
        PolySource::Args(values) => values.iter().map(|v| json::parse_poly::<F>(ctx, v)).collect::<Result<Vec<_>, _>>()?,
        PolySource::Doc(doc) => doc.polynomials::<F>(ctx)?,
    };
    let p = lrs_product_poly_with_tol(&polys, &WedgeContext::of_field::<F>(ctx), s.tol)?;
    Ok(emit_poly(&p, s))
}

enum SeqSource {
    Args(serde_json::Value, serde_json::Value),
    Doc(InputDocument),
}

fn cmd_lrs_eval<F: CliScalar>(ctx: &F::Ctx, src: &SeqSource, s: &Settings, n: u64) -> Result<String, CliError> {
    let (p, init) = match src {
        SeqSource::Args(p, i) => (json::parse_poly::<F>(ctx, p)?, json::parse_scalars::<F>(ctx, i)?),
        SeqSource::Doc(doc) => doc.sequence::<F>(ctx)?,
    };
    let seq = LinRecSeq::new(p, init)?;
    let x = lrs_eval(&seq, n as usize);
    Ok(match s.mode {
        Mode::Json => json::render(json::scalar_doc(ctx, &x)),
        Mode::Pretty => format!("{}\n", x.coef().signed()),
    })
}
