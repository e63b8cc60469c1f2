//! Command dispatch for the `bgsplit` binary.
//!
//! [`run_command`] does all the work and returns the text to print and the
//! process exit code, so the whole contract is testable in-process.

use std::fs;
use std::path::{Path, PathBuf};

use bgsplit::bundle::random_bundle;
use bgsplit::cech::{euler_char, h0_dim, h0_dim_at, h0_profile, h1_dim, h1_dim_oracle, CechWindow};
use bgsplit::splitter::{grothendieck_split, is_self_dual, iso, verify_factorization};
use bgsplit::text::{format_bundle, parse_bundle, parse_factorization, serialize_factorization};
use bgsplit::{Error, VectorBundle};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_BUNDLE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bgsplit",
    version,
    about = "Splitting types and cohomology of vector bundles on the projective line"
)]
struct Cli {
    /// Print a JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Override the Čech truncation window (h0, h1, chi, profile). The
    /// result is still checked against window + 1.
    #[arg(long, global = true, value_name = "D")]
    window: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Splitting type with a verified factorization certificate.
    Split {
        file: PathBuf,
        /// Write the factorization (W, U, D blocks) here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dimension of the space of global sections.
    H0 { file: PathBuf },
    /// Dimension of the first cohomology.
    H1 { file: PathBuf },
    /// Degree of the bundle.
    Deg { file: PathBuf },
    /// Euler characteristic h0 - h1.
    Chi { file: PathBuf },
    /// h0 of every twist in a range.
    Profile {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Dual, determinant, direct sum or tensor product.
    Op {
        op: OpKind,
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Twist by O(m).
    Twist {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        m: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether two bundles are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// Whether a bundle is isomorphic to its dual.
    Selfdual { file: PathBuf },
    /// Seeded scrambled bundle of a given splitting type.
    Random {
        #[arg(
            long = "type",
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        degrees: Vec<i64>,
        #[arg(long, default_value_t = 2)]
        gauge_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a factorization file against a bundle.
    Verify { file: PathBuf, factfile: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OpKind {
    Dual,
    Det,
    Dsum,
    Tensor,
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub result: Map<String, Value>,
}

impl Report {
    fn new(command: &str, inputs: Vec<String>) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            result: Map::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.result.insert(key.to_string(), value.into());
        self
    }

    /// Serialization with sorted keys.
    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(..) => EXIT_PARSE,
            Failure::Core(e) if e.is_internal() => EXIT_INTERNAL,
            Failure::Core(Error::Parse { .. } | Error::InvalidInput(_)) => EXIT_PARSE,
            Failure::Core(_) => EXIT_INVALID_BUNDLE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    report: None,
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_PARSE,
                }
            } else {
                Outcome {
                    report: None,
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((report, plain)) => Outcome {
            stdout: if cli.json {
                report.to_json() + "\n"
            } else {
                plain
            },
            report: Some(report),
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(f) => Outcome {
            report: None,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
            code: f.code(),
        },
    }
}

fn read(path: &Path) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Run<()> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Reads and validates a bundle file, prefixing diagnostics with the path.
fn load(path: &Path) -> Run<VectorBundle> {
    parse_bundle(&read(path)?).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure::Core(Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        }),
        other => Failure::Core(other),
    })
}

fn name(p: &Path) -> String {
    p.display().to_string()
}

fn window(cli: &Cli) -> Option<CechWindow> {
    cli.window.map(CechWindow)
}

fn h0_of(e: &VectorBundle, w: Option<CechWindow>) -> Run<usize> {
    Ok(match w {
        Some(w) => h0_dim_at(e, w)?,
        None => h0_dim(e)?,
    })
}

fn h1_of(e: &VectorBundle, w: Option<CechWindow>) -> Run<usize> {
    Ok(match w {
        Some(w) => h1_dim_oracle(e, w)?,
        None => h1_dim(e)?,
    })
}

/// Emits a derived bundle to a file or inline.
fn bundle_result(report: Report, e: &VectorBundle, out: &Option<PathBuf>) -> Run<(Report, String)> {
    let text = format_bundle(e);
    let report = report.with("rank", e.rank()).with("deg", e.degree());
    match out {
        Some(path) => {
            write(path, &text)?;
            let plain = format!("wrote {}\n", path.display());
            Ok((report.with("output", name(path)), plain))
        }
        None => Ok((report.with("bundle", text.clone()), text)),
    }
}

fn dispatch(cli: &Cli) -> Run<(Report, String)> {
    let uses_window = matches!(
        cli.command,
        Command::H0 { .. } | Command::H1 { .. } | Command::Chi { .. } | Command::Profile { .. }
    );
    if cli.window.is_some() && !uses_window {
        return Err(Failure::Usage(
            "--window applies only to h0, h1, chi and profile".into(),
        ));
    }
    let w = window(cli);
    match &cli.command {
        Command::Split { file, output } => {
            let e = load(file)?;
            let (ty, f) = grothendieck_split(&e)?;
            let verified = verify_factorization(&e, &f);
            let fact = serialize_factorization(&f);
            let factors = json!({
                "W": bgsplit::text::format_matrix(&f.w),
                "U": bgsplit::text::format_matrix(&f.u),
                "D": bgsplit::text::format_matrix(&f.d),
            });
            let mut report = Report::new("split", vec![name(file)])
                .with("rank", e.rank())
                .with("type", ty.degrees().to_vec())
                .with("deg", e.degree())
                .with("verified", verified)
                .with("factors", factors);
            let mut plain = format!("type: {ty}\ndeg: {}\nverified: {verified}\n", e.degree());
            match output {
                Some(path) => {
                    write(path, &fact)?;
                    report = report.with("output", name(path));
                    plain.push_str(&format!("wrote {}\n", path.display()));
                }
                None => plain.push_str(&fact),
            }
            Ok((report, plain))
        }
        Command::H0 { file } => {
            let h = h0_of(&load(file)?, w)?;
            Ok((
                Report::new("h0", vec![name(file)]).with("h0", h),
                format!("{h}\n"),
            ))
        }
        Command::H1 { file } => {
            let h = h1_of(&load(file)?, w)?;
            Ok((
                Report::new("h1", vec![name(file)]).with("h1", h),
                format!("{h}\n"),
            ))
        }
        Command::Deg { file } => {
            let d = load(file)?.degree();
            Ok((
                Report::new("deg", vec![name(file)]).with("deg", d),
                format!("{d}\n"),
            ))
        }
        Command::Chi { file } => {
            let e = load(file)?;
            let chi = match w {
                Some(_) => h0_of(&e, w)? as i64 - h1_of(&e, w)? as i64,
                None => euler_char(&e)?,
            };
            Ok((
                Report::new("chi", vec![name(file)]).with("chi", chi),
                format!("{chi}\n"),
            ))
        }
        Command::Profile { file, from, to } => {
            let e = load(file)?;
            let profile = match w {
                None => h0_profile(&e, *from, *to)?,
                Some(w) => {
                    if from > to {
                        return Err(Failure::Usage(format!("empty twist range [{from}, {to}]")));
                    }
                    (*from..=*to)
                        .map(|m| Ok((m, h0_of(&e.twist(m), Some(w))?)))
                        .collect::<Run<Vec<_>>>()?
                }
            };
            let plain: String = profile.iter().map(|(m, h)| format!("{m} {h}\n")).collect();
            let points: Vec<Value> = profile.iter().map(|(m, h)| json!([m, h])).collect();
            let report = Report::new("profile", vec![name(file)])
                .with("from", *from)
                .with("to", *to)
                .with("h0", points);
            Ok((report, plain))
        }
        Command::Op { op, a, b, output } => {
            let ea = load(a)?;
            let (label, result, inputs) = match (op, b) {
                (OpKind::Dual, None) => ("dual", ea.dual(), vec![name(a)]),
                (OpKind::Det, None) => ("det", ea.det_bundle(), vec![name(a)]),
                (OpKind::Dsum, Some(b)) => {
                    ("dsum", ea.direct_sum(&load(b)?), vec![name(a), name(b)])
                }
                (OpKind::Tensor, Some(b)) => {
                    ("tensor", ea.tensor(&load(b)?), vec![name(a), name(b)])
                }
                (OpKind::Dual | OpKind::Det, Some(_)) => {
                    return Err(Failure::Usage("dual and det take one bundle".into()))
                }
                (OpKind::Dsum | OpKind::Tensor, None) => {
                    return Err(Failure::Usage("dsum and tensor take two bundles".into()))
                }
            };
            bundle_result(Report::new("op", inputs).with("op", label), &result, output)
        }
        Command::Twist { file, m, output } => {
            let e = load(file)?.twist(*m);
            bundle_result(
                Report::new("twist", vec![name(file)]).with("m", *m),
                &e,
                output,
            )
        }
        Command::Iso { a, b } => {
            let same = iso(&load(a)?, &load(b)?)?;
            Ok((
                Report::new("iso", vec![name(a), name(b)]).with("iso", same),
                format!("{same}\n"),
            ))
        }
        Command::Selfdual { file } => {
            let sd = is_self_dual(&load(file)?)?;
            Ok((
                Report::new("selfdual", vec![name(file)]).with("selfdual", sd),
                format!("{sd}\n"),
            ))
        }
        Command::Random {
            degrees,
            gauge_degree,
            seed,
            output,
        } => {
            if degrees.is_empty() {
                return Err(Failure::Usage("--type needs at least one degree".into()));
            }
            let e = random_bundle(degrees, *gauge_degree, *seed);
            let report = Report::new("random", vec![])
                .with("type", degrees.clone())
                .with("gauge_degree", *gauge_degree)
                .with("seed", *seed);
            bundle_result(report, &e, output)
        }
        Command::Verify { file, factfile } => {
            let e = load(file)?;
            let f = parse_factorization(&read(factfile)?)?;
            let ok = verify_factorization(&e, &f);
            Ok((
                Report::new("verify", vec![name(file), name(factfile)]).with("verified", ok),
                format!("{ok}\n"),
            ))
        }
    }
}
