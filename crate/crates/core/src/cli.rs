//! Command-line front end.
//!
//! Exit statuses: 0 when the headline verdicts hold, 2 when one is refuted,
//! 3 when one stays undecided, 4 when the oracle contradicts a classifier
//! `Yes`, and 1 for invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::classify::{classify, consistency_harness};
use crate::error::Error as CoreError;
use crate::generated::{lambda_decompose, lambda_round_trip_error, GeneratedOp};
use crate::monotone::PiecewiseMonotoneFn;
use crate::numeric::{parse_rational, Rational};
use crate::tnorm::{Generator, GeneratorSpec, TNormDescriptor};
use crate::value::{BinaryOp, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 4;

const DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "subnorm-forge", version, about = "Build and classify operations generated by monotone functions and t-norms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Structured,
}

/// Where the operation comes from: a function file with a t-norm, or an
/// additive generator (optionally split by the λ-construction).
#[derive(Debug, Clone, Args)]
pub struct OpArgs {
    /// Function description file.
    #[arg(long = "fn", value_name = "PATH", conflicts_with = "gen")]
    pub fn_path: Option<PathBuf>,
    /// t-norm: product, min, hamacher2, halfprod, gen:NAME or lambda:NAME:P/Q.
    #[arg(long, value_name = "DESC", requires = "fn_path")]
    pub tnorm: Option<String>,
    /// Registered additive generator (neglog, one-minus-log).
    #[arg(long, value_name = "NAME")]
    pub gen: Option<String>,
    /// Scale of the λ-construction; requires `--gen`.
    #[arg(long, value_name = "P/Q", requires = "gen")]
    pub lambda: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F(x,y) exactly where possible.
    Eval {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, value_name = "P/Q")]
        x: String,
        #[arg(long, value_name = "P/Q")]
        y: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Classify F and print the report.
    Classify {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print the range decomposition of a function.
    Decompose {
        #[arg(long = "fn", value_name = "PATH")]
        fn_path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Brute-force every law on a grid and compare with the classifier.
    Oracle {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, default_value_t = 12)]
        grid_n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Tabulate F on an (n+1)×(n+1) grid as CSV.
    Grid {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, default_value_t = 10)]
        grid_n: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Split an additively generated operation into f(x)=λx and a t-norm.
    ConstructSubnorm {
        #[arg(long, value_name = "NAME")]
        gen: String,
        #[arg(long, value_name = "P/Q")]
        lambda: String,
        /// Round-trip grid resolution.
        #[arg(long, default_value_t = 50)]
        grid_n: u32,
        /// Where to write the function file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_fn(path: &PathBuf) -> Result<PiecewiseMonotoneFn> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    text.parse().map_err(|e| match e {
        CoreError::Parse { line, message } => CliError::Usage(format!("{}:{line}: {message}", path.display())),
        other => CliError::Core(other),
    })
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

fn spec(name: &str) -> Result<GeneratorSpec> {
    Ok(GeneratorSpec::new(name.parse::<Generator>()?))
}

fn resolve(op: &OpArgs) -> Result<(PiecewiseMonotoneFn, TNormDescriptor)> {
    match (&op.fn_path, &op.gen) {
        (Some(path), None) => {
            let desc = op.tnorm.as_deref().ok_or_else(|| CliError::Usage("--fn needs --tnorm".into()))?;
            Ok((read_fn(path)?, desc.parse()?))
        }
        (None, Some(gen)) => match &op.lambda {
            Some(l) => Ok(lambda_decompose(spec(gen)?, rational(l)?)?),
            None => Ok((PiecewiseMonotoneFn::identity(), TNormDescriptor::new(crate::tnorm::Family::Additive(spec(gen)?))?)),
        },
        _ => Err(CliError::Usage("give either --fn with --tnorm, or --gen (optionally with --lambda)".into())),
    }
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<()> {
    let io = |p: String| move |source| CliError::Io { path: p, source };
    match path {
        Some(p) => std::fs::write(p, text).map_err(io(p.display().to_string())),
        None => out.write_all(text.as_bytes()).map_err(io("<stdout>".into())),
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Eval { op, x, y, format, out: path } => {
            let (f, t) = resolve(&op)?;
            let (x, y) = (rational(&x)?, rational(&y)?);
            let v = GeneratedOp::new(f, t).eval(&x, &y)?;
            emit(out, &path, &render_eval(&x, &y, &v, format))?;
            Ok(EXIT_OK)
        }
        Command::Classify { op, format, out: path } => {
            let (f, t) = resolve(&op)?;
            let report = classify(&f, &t);
            let text = match format {
                Format::Structured => report.render_structured(),
                _ => report.render_text(),
            };
            emit(out, &path, &text)?;
            Ok(report.exit_code())
        }
        Command::Decompose { fn_path, format, out: path } => {
            let d = read_fn(&fn_path)?.decompose();
            let text = match format {
                // the text form is a space-separated list of key=value fields
                Format::Structured => d.to_string().split(' ').map(|kv| format!("{kv}\n")).collect(),
                _ => format!("{d}\n"),
            };
            emit(out, &path, &text)?;
            Ok(EXIT_OK)
        }
        Command::Oracle { op, grid_n, format, out: path } => {
            let (f, t) = resolve(&op)?;
            let h = consistency_harness(&f, &t, grid_n.max(1));
            let text = match format {
                Format::Structured => {
                    let mut s = String::new();
                    for r in &h.rows {
                        s += &format!("{}.classifier={}\n", r.property.key(), r.classifier);
                        for (law, o) in &r.oracle {
                            s += &format!("{}.{law}={}\n", r.property.key(), o.label());
                        }
                        s += &format!("{}.agreement={}\n", r.property.key(), r.agreement);
                    }
                    s + &format!("hard_failures={}\n", h.hard_failures())
                }
                _ => h.render_text(),
            };
            emit(out, &path, &text)?;
            Ok(if h.hard_failures() > 0 { EXIT_DISAGREEMENT } else { EXIT_OK })
        }
        Command::Grid { op, grid_n, out: path } => {
            let (f, t) = resolve(&op)?;
            let exact = t.flags.exact;
            let text = grid_csv(&GeneratedOp::new(f, t), grid_n.max(1), exact);
            emit(out, &path, &text)?;
            Ok(EXIT_OK)
        }
        Command::ConstructSubnorm { gen, lambda, grid_n, out: path } => {
            let spec = spec(&gen)?;
            let lambda = rational(&lambda)?;
            let (f, t) = lambda_decompose(spec, lambda.clone())?;
            let deviation = lambda_round_trip_error(spec, lambda, grid_n.max(1))?;
            let n = grid_n.max(1) + 1;
            let mut text = String::new();
            match &path {
                Some(p) => {
                    std::fs::write(p, f.to_string())
                        .map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
                    text += &format!("function file: {}\n", p.display());
                }
                None => text += &f.to_string(),
            }
            text += &format!("tnorm: {t}\n");
            text += &format!("round-trip max deviation on {n}x{n} grid: {deviation:.3e}\n");
            out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            if spec.generator.at_one() == 0.0 {
                let _ = writeln!(
                    err,
                    "warning: generator {} has g(1) = 0, so the constructed operation is a t-norm and the properness check T(1,1) < 1 fails",
                    spec.generator.name()
                );
            }
            Ok(EXIT_OK)
        }
    }
}

fn render_eval(x: &Rational, y: &Rational, v: &Value, format: Format) -> String {
    match (format, v) {
        (Format::Structured, _) => format!(
            "x={x}\ny={y}\nvalue={}\ndecimal={}\nradius={:e}\n",
            v.exact().map_or_else(|| "approx".to_string(), ToString::to_string),
            v.to_decimal(DIGITS),
            v.radius()
        ),
        (_, Value::Exact(r)) => format!("F({x},{y}) = {r} ≈ {}\n", v.to_decimal(DIGITS)),
        (_, Value::Approx { rad, .. }) => format!("F({x},{y}) ≈ {} ± {rad:.1e}\n", v.to_decimal(DIGITS)),
    }
}

/// Row-major CSV of `F` over `{0, 1/n, …, 1}²`.
pub fn grid_csv(op: &dyn BinaryOp, n: u32, exact: bool) -> String {
    let mut s = String::from(if exact { "x,y,F,F_exact\n" } else { "x,y,F\n" });
    let pts: Vec<Rational> = (0..=n).map(|i| Rational::new(i.into(), n.into())).collect();
    for x in &pts {
        for y in &pts {
            let v = op.apply(x, y);
            let dec = |r: &Rational| crate::numeric::to_decimal(r, DIGITS);
            s += &format!("{},{},{}", dec(x), dec(y), v.to_decimal(DIGITS));
            if exact {
                s += &format!(",{}", v.exact().map_or_else(String::new, ToString::to_string));
            }
            s.push('\n');
        }
    }
    s
}
