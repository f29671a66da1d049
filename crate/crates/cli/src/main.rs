use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use harmonia::acceptance;
use harmonia::banach::{neumann_inverse, spectral_radius_seq, spectrum_via_characters, L1AlgebraElement};
use harmonia::circle::{abel_sum, poisson_extension, write_kernel_csv, SampledCircleFun, TrigPoly};
use harmonia::group::{convolve, dft, dft_fast, idft, idft_fast, CharTable, FiniteAbelianGroup, GroupFun, Haar};
use harmonia::padic::{
    haar_integral, pairing_element, qp_fourier, qp_normalize, table_level, zp_fourier, QpTable, RAdicInt, RadixTower, DEFAULT_PRIME_LEVELS,
};
use harmonia::scalar::{format_rational, parse_rational};
use harmonia::solenoid::{sol_add, sol_char_angle, sol_from_real, sol_neg, zr_embed, SolenoidChar, SolenoidPoint};
use harmonia::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "harmonia", version, about = "Harmonic analysis on finite abelian groups, the circle, r-adic integers and solenoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Tolerance for numerical checks.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Transform of a function on a finite abelian group.
    Dft {
        /// Comma-separated moduli; required when the input is a bare value array.
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<u64>>,
        #[arg(long)]
        input: PathBuf,
        /// Treat the input as a character table and invert it.
        #[arg(long)]
        inverse: bool,
        /// Use the FFT path, cross-checked against the direct sum within --tol.
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Convolution of two functions on the same group.
    Conv {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        with: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Abel sum of a trigonometric polynomial at r·e^{iz}.
    Abel {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: f64,
        /// Angle of the boundary point, in radians.
        #[arg(long, default_value_t = 0.0)]
        z: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Poisson integral over M samples; the constant function 1 without --input.
    Poisson {
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Angle of the boundary point, in radians.
        #[arg(long, default_value_t = 0.0)]
        z: f64,
        /// Trigonometric polynomial to extend.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the kernel table on the sample grid as CSV to this path.
        #[arg(long)]
        kernel_csv: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// r-adic and p-adic arithmetic.
    Padic {
        #[command(subcommand)]
        op: PadicOp,
    },
    /// Points and characters of the r-adic solenoid.
    Solenoid {
        #[command(subcommand)]
        op: SolenoidOp,
    },
    /// Spectrum and spectral radius of an element of l1(A).
    Spectrum {
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<u64>>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        k_max: usize,
        /// Also invert e − x by its Neumann series.
        #[arg(long)]
        neumann: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Runs the acceptance suite.
    Check {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Tower {
    /// Prime for a constant tower.
    #[arg(long)]
    p: Option<u64>,
    /// Number of levels.
    #[arg(long = "L")]
    levels: Option<usize>,
    /// Comma-separated radices for a mixed tower.
    #[arg(long, value_delimiter = ',')]
    radices: Option<Vec<u64>>,
}

impl Tower {
    fn build(&self) -> harmonia::Result<Arc<RadixTower>> {
        let t = match (&self.radices, self.p) {
            (Some(r), None) => RadixTower::new(r.clone())?,
            (None, Some(p)) => RadixTower::constant(p, self.levels.unwrap_or(DEFAULT_PRIME_LEVELS))?,
            (None, None) => return Err(Error::InvalidArgument("give --p or --radices".into())),
            (Some(_), Some(_)) => return Err(Error::InvalidArgument("--p and --radices are exclusive".into())),
        };
        Ok(Arc::new(t))
    }

    fn prime(&self) -> harmonia::Result<(u64, usize)> {
        let p = self.p.ok_or_else(|| Error::InvalidArgument("--p is required".into()))?;
        Ok((p, self.levels.unwrap_or(DEFAULT_PRIME_LEVELS)))
    }
}

#[derive(Subcommand)]
enum PadicOp {
    /// |x|: p-adic for a rational with --p, r-adic for an integer with --radices.
    Abs {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
    /// Valuation.
    Val {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
    /// Inverse of a unit modulo R_L.
    Inv {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
    /// p^v · unit form of a rational.
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
    /// Character value exp(2πi {x y}_p) for y in Q_p and x in Z_p.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
    /// Transform of a locally constant function on Z_p (a JSON array of p^j values).
    Fourier {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
    /// Transform on a window of Q_p ({"p","m","k","values"}).
    QpFourier {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Haar integral of a locally constant table by level-L Riemann sums.
    Haar {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        tower: Tower,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum SolenoidOp {
    /// Image of a real (rational) number.
    FromReal {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_delimiter = ',')]
        radices: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Sum of two points.
    Add {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        with: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    Neg {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Embedding of an r-adic integer.
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, value_delimiter = ',')]
        radices: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Character a/R_k evaluated at a point.
    Char {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        a: String,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Validation(Error),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

type Outcome = std::result::Result<Output, Failure>;

struct Output {
    doc: Value,
    out: Option<PathBuf>,
    ok: bool,
}

fn done(doc: Value, common: &Common) -> Outcome {
    Ok(Output { doc, out: common.out.clone(), ok: true })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Accepts the full {"moduli","haar","values"} form or a bare value array
/// together with --moduli.
fn read_group_fun(path: &Path, moduli: &Option<Vec<u64>>) -> std::result::Result<GroupFun, Failure> {
    let raw: Value = read_json(path)?;
    let f = if raw.is_array() {
        let moduli = moduli.clone().ok_or_else(|| Failure::Validation(Error::InvalidArgument("--moduli is required for a bare value array".into())))?;
        let values: Vec<Complex64> = serde_json::from_value(raw).map_err(|e| Failure::Data(e.to_string()))?;
        GroupFun::new(FiniteAbelianGroup::new(moduli)?, Haar::Counting, values)?
    } else {
        serde_json::from_value::<GroupFun>(raw).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?
    };
    if let Some(m) = moduli {
        if m.as_slice() != f.group.moduli() {
            return Err(Error::GroupMismatch(m.clone(), f.group.moduli().to_vec()).into());
        }
    }
    Ok(f)
}

fn parse_q(s: &str) -> std::result::Result<harmonia::Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn parse_int(s: &str) -> std::result::Result<num_bigint::BigInt, Failure> {
    s.trim().parse().map_err(|_| Failure::Validation(Error::Parse(format!("{s:?} is not an integer"))))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Dft { moduli, input, inverse, fast, common } => {
            let f = read_group_fun(&input, &moduli)?;
            let doc = if inverse {
                let t = CharTable { group: f.group, haar: f.haar, values: f.values };
                let g = if fast { checked(idft_fast(&t).values, idft(&t).values, common.tol)? } else { idft(&t).values };
                to_value(&GroupFun { group: t.group, haar: t.haar, values: g })
            } else {
                let v = if fast { checked(dft_fast(&f).values, dft(&f).values, common.tol)? } else { dft(&f).values };
                to_value(&CharTable { group: f.group, haar: f.haar, values: v })
            };
            done(doc, &common)
        }
        Command::Conv { input, with, common } => {
            let f = read_group_fun(&input, &None)?;
            let g = read_group_fun(&with, &None)?;
            done(to_value(&convolve(&f, &g)?), &common)
        }
        Command::Abel { input, r, z, common } => {
            let a: TrigPoly = read_json(&input)?;
            let v = abel_sum(&a, r, Complex64::from_polar(1.0, z))?;
            done(json!({ "r": r, "z": z, "value": complex(v) }), &common)
        }
        Command::Poisson { r, samples, z, input, kernel_csv, common } => {
            if samples == 0 {
                return Err(Error::InvalidArgument("--samples must be positive".into()).into());
            }
            let f = match &input {
                Some(path) => read_json::<TrigPoly>(path)?.sample(samples),
                None => SampledCircleFun::from_fn(samples, |_| Complex64::new(1.0, 0.0))?,
            };
            let v = poisson_extension(&f, r, Complex64::from_polar(1.0, z))?;
            if let Some(path) = kernel_csv {
                let file = fs::File::create(&path).map_err(|e| Failure::Validation(Error::InvalidArgument(format!("{}: {e}", path.display()))))?;
                write_kernel_csv(file, &[r], samples)?;
            }
            done(json!({ "r": r, "z": z, "samples": samples, "value": complex(v) }), &common)
        }
        Command::Padic { op } => padic(op),
        Command::Solenoid { op } => solenoid(op),
        Command::Spectrum { moduli, input, k_max, neumann, common } => {
            let x = L1AlgebraElement::new(read_group_fun(&input, &moduli)?)?;
            let spectrum: Vec<Value> = spectrum_via_characters(&x).into_iter().map(complex).collect();
            let radius = spectral_radius_seq(&x, k_max)?;
            let mut doc = json!({
                "norm": x.norm(),
                "spectrum": spectrum,
                "spectral_radius": radius.estimate,
                "sequence": radius.sequence,
            });
            if neumann {
                let inv = neumann_inverse(&x, common.tol)?;
                doc["neumann_inverse"] = to_value(inv.inverse.fun());
                doc["terms"] = json!(inv.terms);
            }
            done(doc, &common)
        }
        Command::Check { common } => {
            let report = acceptance::run_all(common.seed)?;
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            let ok = report.all_pass();
            Ok(Output { doc: to_value(&report), out: common.out.clone(), ok })
        }
    }
}

fn checked(fast: Vec<Complex64>, naive: Vec<Complex64>, tol: f64) -> std::result::Result<Vec<Complex64>, Failure> {
    let gap = fast.iter().zip(&naive).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if gap > tol {
        return Err(Error::Domain { value: gap, limit: tol }.into());
    }
    Ok(fast)
}

fn padic(op: PadicOp) -> Outcome {
    match op {
        PadicOp::Abs { x, tower, common } => {
            if tower.radices.is_some() {
                let t = tower.build()?;
                let u = RAdicInt::from_int(&t, &parse_int(&x)?);
                return done(json!({ "abs": format_rational(&u.abs(&t.default_decay())?) }), &common);
            }
            let (p, l) = tower.prime()?;
            let y = qp_normalize(p, &parse_q(&x)?, l)?;
            done(json!({ "abs": format_rational(&y.abs()) }), &common)
        }
        PadicOp::Val { x, tower, common } => {
            if tower.radices.is_some() {
                let t = tower.build()?;
                let u = RAdicInt::from_int(&t, &parse_int(&x)?);
                return done(json!({ "valuation": u.valuation() }), &common);
            }
            let (p, l) = tower.prime()?;
            let y = qp_normalize(p, &parse_q(&x)?, l)?;
            // zero has infinite valuation
            done(json!({ "valuation": y.valuation() }), &common)
        }
        PadicOp::Inv { x, tower, common } => {
            let t = tower.build()?;
            let u = RAdicInt::from_int(&t, &parse_int(&x)?);
            let inv = u.invert_unit()?;
            done(json!({ "inverse": to_value(&inv) }), &common)
        }
        PadicOp::Normalize { x, tower, common } => {
            let (p, l) = tower.prime()?;
            done(to_value(&qp_normalize(p, &parse_q(&x)?, l)?), &common)
        }
        PadicOp::Pair { y, x, tower, common } => {
            let (p, l) = tower.prime()?;
            let y = qp_normalize(p, &parse_q(&y)?, l)?;
            let t = Arc::new(RadixTower::constant(p, l)?);
            let x = RAdicInt::from_int(&t, &parse_int(&x)?);
            let e = pairing_element(&y, &x)?;
            done(json!({ "angle": format_rational(&e.angle()), "value": complex(e.eval()) }), &common)
        }
        PadicOp::Fourier { input, tower, common } => {
            let (p, _) = tower.prime()?;
            let table: Vec<Complex64> = read_json(&input)?;
            done(to_value(&zp_fourier(p, &table)?.values), &common)
        }
        PadicOp::QpFourier { input, common } => {
            let raw: QpTable = read_json(&input)?;
            let f = QpTable::new(raw.p, raw.m, raw.k, raw.values)?;
            done(to_value(&qp_fourier(&f)?), &common)
        }
        PadicOp::Haar { input, tower, common } => {
            let p = tower.p.ok_or_else(|| Error::InvalidArgument("--p is required".into()))?;
            let table: Vec<Complex64> = read_json(&input)?;
            // --L is the sample level; defaults to the table's own level
            let level = match tower.levels {
                Some(l) => l,
                None => table_level(p, table.len())?,
            };
            done(json!({ "integral": complex(haar_integral(p, &table, level)?) }), &common)
        }
    }
}

fn solenoid(op: SolenoidOp) -> Outcome {
    match op {
        SolenoidOp::FromReal { a, radices, common } => {
            let t = Arc::new(RadixTower::new(radices)?);
            done(to_value(&sol_from_real(&t, &parse_q(&a)?)), &common)
        }
        SolenoidOp::Add { input, with, common } => {
            let x: SolenoidPoint = read_json(&input)?;
            let y: SolenoidPoint = read_json(&with)?;
            done(to_value(&sol_add(&x, &y)?), &common)
        }
        SolenoidOp::Neg { input, common } => {
            let x: SolenoidPoint = read_json(&input)?;
            done(to_value(&sol_neg(&x)), &common)
        }
        SolenoidOp::Embed { u, radices, common } => {
            let t = Arc::new(RadixTower::new(radices)?);
            done(to_value(&zr_embed(&RAdicInt::from_int(&t, &parse_int(&u)?))), &common)
        }
        SolenoidOp::Char { input, level, a, common } => {
            let x: SolenoidPoint = read_json(&input)?;
            let a = parse_int(&a)?
                .to_biguint()
                .ok_or_else(|| Failure::Validation(Error::InvalidArgument("numerator must be non-negative".into())))?;
            let chi = SolenoidChar::new(x.tower(), level, a)?;
            let angle = sol_char_angle(&chi, &x)?;
            done(json!({ "angle": format_rational(&angle), "value": complex(harmonia::scalar::turn(&angle)) }), &common)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("HARMONIA_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // ignore failure when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn emit_error(code: &str, detail: &str) {
    println!("{}", json!({ "error": code, "detail": detail }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand => {
                    emit_error("unknown_subcommand", e.to_string().lines().next().unwrap_or(""));
                    ExitCode::from(EXIT_USAGE)
                }
                _ => {
                    emit_error("invalid_argument", e.to_string().lines().next().unwrap_or(""));
                    ExitCode::from(EXIT_VALIDATION)
                }
            };
        }
    };
    configure_threads();
    match run(cli.command) {
        Ok(Output { doc, out, ok }) => {
            let text = serde_json::to_string(&doc).expect("serializable") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        emit_error("io", &format!("{}: {e}", path.display()));
                        return ExitCode::from(EXIT_VALIDATION);
                    }
                }
                None => {
                    let _ = std::io::stdout().write_all(text.as_bytes());
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(Failure::Validation(e)) => {
            emit_error(e.code(), &e.to_string());
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Data(detail)) => {
            emit_error("malformed_input", &detail);
            ExitCode::from(EXIT_DATA)
        }
    }
}
