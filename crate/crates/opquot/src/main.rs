//! Command-line interface for dense-matrix operator quotients.
//!
//! Exit codes: 0 success, 1 verification failure, 2 precondition violation
//! (residual reported on stderr), 3 parse/format error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use opquot::algebra;
use opquot::error::Error;
use opquot::io::{self, MatrixFormat};
use opquot::numkernel::{self, Matrix, ToleranceConfig};
use opquot::oracle::{self, GenMode, GeneratedInstance, InstanceSpec};
use opquot::quotient::{LeftQuotient, RightQuotient};
use opquot::report;

#[derive(Parser)]
#[command(
    name = "opquot",
    version,
    about = "Left and right quotients of dense complex matrices"
)]
struct Cli {
    /// Relative singular-value cutoff for numerical rank (default: automatic)
    #[arg(long, global = true)]
    tol_rank: Option<f64>,

    /// Relative residual threshold for inclusion and identity checks
    #[arg(long, global = true)]
    tol_residual: Option<f64>,

    /// Output format for matrices
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Mm)]
    format: FormatArg,

    /// Write the primary matrix result to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Emit results as JSON on stdout
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// Matrix Market array format
    Mm,
    /// Comma-separated complex literals
    Csv,
}

impl From<FormatArg> for MatrixFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Mm => MatrixFormat::MatrixMarket,
            FormatArg::Csv => MatrixFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// R(X) subset R(Y)
    Range,
    /// N(X) subset N(Y)
    Kernel,
    /// inf of mu with X X^* <= mu Y Y^*
    Mu,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Moore-Penrose pseudoinverse of a matrix
    Pinv { matrix: PathBuf },

    /// Left quotient [B\A] = B^dagger A; requires R(A) subset R(B)
    Ldiv { b: PathBuf, a: PathBuf },

    /// Right quotient [A/B] = A B^dagger; requires N(B) subset N(A)
    Rdiv { a: PathBuf, b: PathBuf },

    /// Subspace predicates and the majorization infimum
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        x: PathBuf,
        y: PathBuf,
    },

    /// Sum of left quotients [B\A] + [D\C]; prints the projection defect
    SumLeft {
        b: PathBuf,
        a: PathBuf,
        d: PathBuf,
        c: PathBuf,
    },

    /// Sum of right quotients [A/B] + [C/D]; prints the projection defect
    SumRight {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
    },

    /// Witness-verified product [B\A][D\C] = [NB\MC]
    ProdLeft {
        b: PathBuf,
        a: PathBuf,
        d: PathBuf,
        c: PathBuf,
        #[arg(long, requires = "witness_n")]
        witness_m: Option<PathBuf>,
        #[arg(long, requires = "witness_m")]
        witness_n: Option<PathBuf>,
        /// Construct the witness pair automatically (default when no files)
        #[arg(long, conflicts_with_all = ["witness_m", "witness_n"])]
        auto: bool,
    },

    /// Witness-verified product [A/B][C/D] = [A P M / D N]
    ProdRight {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
        #[arg(long, requires = "witness_n")]
        witness_m: Option<PathBuf>,
        #[arg(long, requires = "witness_m")]
        witness_n: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["witness_m", "witness_n"])]
        auto: bool,
    },

    /// Cancel a common factor: left [MB\MA] = [B\A], right [AM/BM] = [A/B]
    Simplify {
        #[arg(value_enum)]
        side: SideArg,
        m: PathBuf,
        b: PathBuf,
        a: PathBuf,
    },

    /// Canonical quotients A = [A*\A*A] and A^dagger = [A*A\A*]
    Decompose { a: PathBuf },

    /// Run the full invariant suite on one instance; JSON report on stdout
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        mode: SideArg,
    },

    /// Generate a structured random instance and write its matrices
    Gen {
        #[arg(long, value_enum)]
        mode: GenModeArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        rank: usize,
        /// Defaults to OPQUOT_SEED from the environment, then 0
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_prefix: PathBuf,
        /// Push the smallest singular value down to 1e-7
        #[arg(long)]
        stress: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenModeArg {
    RangeIncluded,
    KernelIncluded,
    SameRange,
    SameKernel,
    PinvProductPair,
    WitnessCompatible,
}

impl From<GenModeArg> for GenMode {
    fn from(m: GenModeArg) -> Self {
        match m {
            GenModeArg::RangeIncluded => GenMode::RangeIncluded,
            GenModeArg::KernelIncluded => GenMode::KernelIncluded,
            GenModeArg::SameRange => GenMode::SameRange,
            GenModeArg::SameKernel => GenMode::SameKernel,
            GenModeArg::PinvProductPair => GenMode::PinvProductPair,
            GenModeArg::WitnessCompatible => GenMode::WitnessCompatible,
        }
    }
}

struct Output {
    format: MatrixFormat,
    out: Option<PathBuf>,
    json: bool,
}

impl Output {
    fn matrix_json(m: &Matrix) -> serde_json::Value {
        json!({
            "rows": m.rows(),
            "cols": m.cols(),
            "entries": m.entries().iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>(),
        })
    }

    /// Writes one matrix (with optional named scalars) respecting the
    /// --json/--out/--format flags.
    fn emit(&self, m: &Matrix, extras: &[(&str, f64)]) -> opquot::Result<()> {
        if self.json {
            let mut obj = json!({ "matrix": Self::matrix_json(m) });
            for (k, v) in extras {
                obj[*k] = json!(v);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&obj).expect("serializable")
            );
            return Ok(());
        }
        match &self.out {
            Some(path) => io::write_matrix(m, path, self.format)?,
            None => print!("{}", io::format_matrix(m, self.format)),
        }
        for (k, v) in extras {
            eprintln!("{k}: {v}");
        }
        Ok(())
    }
}

fn read(path: &Path) -> opquot::Result<Matrix> {
    io::read_matrix(path)
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn run(cli: Cli) -> opquot::Result<i32> {
    let tol = ToleranceConfig::new(cli.tol_rank, cli.tol_residual.unwrap_or(1e-8), 1e-10);
    let output = Output {
        format: cli.format.into(),
        out: cli.out.clone(),
        json: cli.json,
    };

    match cli.command {
        Command::Pinv { matrix } => {
            let m = read(&matrix)?;
            output.emit(&numkernel::pseudoinverse(&m, &tol)?, &[])?;
        }
        Command::Ldiv { b, a } => {
            let (b, a) = (read(&b)?, read(&a)?);
            let lq = LeftQuotient::new(&a, &b, &tol)?;
            output.emit(lq.q(), &[])?;
        }
        Command::Rdiv { a, b } => {
            let (a, b) = (read(&a)?, read(&b)?);
            let rq = RightQuotient::new(&a, &b, &tol)?;
            output.emit(rq.q(), &[])?;
        }
        Command::Check { kind, x, y } => {
            let (x, y) = (read(&x)?, read(&y)?);
            match kind {
                CheckKind::Range => {
                    let v = numkernel::range_included(&x, &y, &tol)?;
                    if cli.json {
                        println!("{}", json!({ "range_included": v }));
                    } else {
                        println!("{v}");
                    }
                }
                CheckKind::Kernel => {
                    let v = numkernel::kernel_included(&x, &y, &tol)?;
                    if cli.json {
                        println!("{}", json!({ "kernel_included": v }));
                    } else {
                        println!("{v}");
                    }
                }
                CheckKind::Mu => {
                    let mu = oracle::mu_bisection(&x, &y, &tol)?;
                    if cli.json {
                        println!("{}", json!({ "mu": mu }));
                    } else {
                        println!("{mu}");
                    }
                }
            }
        }
        Command::SumLeft { b, a, d, c } => {
            let lq1 = LeftQuotient::new(&read(&a)?, &read(&b)?, &tol)?;
            let lq2 = LeftQuotient::new(&read(&c)?, &read(&d)?, &tol)?;
            let (sum, defect) = algebra::sum_left(&lq1, &lq2, &tol)?;
            output.emit(sum.q(), &[("defect", defect)])?;
        }
        Command::SumRight { a, b, c, d } => {
            let rq1 = RightQuotient::new(&read(&a)?, &read(&b)?, &tol)?;
            let rq2 = RightQuotient::new(&read(&c)?, &read(&d)?, &tol)?;
            let (sum, defect) = algebra::sum_right(&rq1, &rq2, &tol)?;
            output.emit(sum.q(), &[("defect", defect)])?;
        }
        Command::ProdLeft {
            b,
            a,
            d,
            c,
            witness_m,
            witness_n,
            auto: _,
        } => {
            let lq1 = LeftQuotient::new(&read(&a)?, &read(&b)?, &tol)?;
            let lq2 = LeftQuotient::new(&read(&c)?, &read(&d)?, &tol)?;
            let witness = match (witness_m, witness_n) {
                (Some(mp), Some(np)) => {
                    algebra::ProductWitness::for_left(read(&mp)?, read(&np)?, &lq1, &lq2, &tol)?
                }
                _ => algebra::auto_witness_left(&lq1, &lq2, &tol)?,
            };
            let prod = algebra::product_left(&lq1, &lq2, &witness, &tol)?;
            output.emit(
                prod.q(),
                &[
                    (
                        "witness_compatibility_residual",
                        witness.compatibility_residual,
                    ),
                    ("witness_kernel_residual", witness.kernel_residual),
                ],
            )?;
        }
        Command::ProdRight {
            a,
            b,
            c,
            d,
            witness_m,
            witness_n,
            auto: _,
        } => {
            let rq1 = RightQuotient::new(&read(&a)?, &read(&b)?, &tol)?;
            let rq2 = RightQuotient::new(&read(&c)?, &read(&d)?, &tol)?;
            let witness = match (witness_m, witness_n) {
                (Some(mp), Some(np)) => {
                    algebra::ProductWitness::for_right(read(&mp)?, read(&np)?, &rq1, &rq2, &tol)?
                }
                _ => algebra::auto_witness_right(&rq1, &rq2, &tol)?,
            };
            let prod = algebra::product_right(&rq1, &rq2, &witness, &tol)?;
            output.emit(
                prod.q(),
                &[
                    (
                        "witness_compatibility_residual",
                        witness.compatibility_residual,
                    ),
                    ("witness_kernel_residual", witness.kernel_residual),
                ],
            )?;
        }
        Command::Simplify { side, m, b, a } => {
            let m = read(&m)?;
            let (b, a) = (read(&b)?, read(&a)?);
            match side {
                SideArg::Left => {
                    let lq = LeftQuotient::new(&a, &b, &tol)?;
                    let s = algebra::simplify_left(&m, &lq, &tol)?;
                    output.emit(s.q(), &[])?;
                }
                SideArg::Right => {
                    let rq = RightQuotient::new(&a, &b, &tol)?;
                    let s = algebra::simplify_right(&m, &rq, &tol)?;
                    output.emit(s.q(), &[])?;
                }
            }
        }
        Command::Decompose { a } => {
            let a = read(&a)?;
            let (first, second) = algebra::canonical_decomposition(&a, &tol)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "reconstruction_q": Output::matrix_json(first.q()),
                        "pseudoinverse_q": Output::matrix_json(second.q()),
                    }))
                    .expect("serializable")
                );
            } else if let Some(prefix) = &cli.out {
                let ext = match output.format {
                    MatrixFormat::MatrixMarket => "mm",
                    MatrixFormat::Csv => "csv",
                };
                let q1 = prefix.with_extension(format!("q1.{ext}"));
                let q2 = prefix.with_extension(format!("q2.{ext}"));
                io::write_matrix(first.q(), &q1, output.format)?;
                io::write_matrix(second.q(), &q2, output.format)?;
                println!("{}", q1.display());
                println!("{}", q2.display());
            } else {
                println!("== q of [A*\\A*A] (reconstructs A) ==");
                print!("{}", io::format_matrix(first.q(), output.format));
                println!("== q of [A*A\\A*] (pseudoinverse of A) ==");
                print!("{}", io::format_matrix(second.q(), output.format));
            }
        }
        Command::Verify { a, b, mode } => {
            let (am, bm) = (read(&a)?, read(&b)?);
            let paths = [path_str(&a), path_str(&b)];
            let refs: Vec<&str> = paths.iter().map(|s| s.as_str()).collect();
            let report = match mode {
                SideArg::Left => report::verify_left(&am, &bm, &tol, &refs)?,
                SideArg::Right => report::verify_right(&am, &bm, &tol, &refs)?,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
            if !report.all_passed() {
                return Ok(1);
            }
        }
        Command::Gen {
            mode,
            m,
            n,
            p,
            rank,
            seed,
            out_prefix,
            stress,
        } => {
            let seed = seed
                .or_else(|| {
                    std::env::var("OPQUOT_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(0);
            let spec = InstanceSpec {
                m,
                n,
                p,
                rank_b: rank,
                seed,
                mode: mode.into(),
                stress,
            };
            let ext = match output.format {
                MatrixFormat::MatrixMarket => "mm",
                MatrixFormat::Csv => "csv",
            };
            let write_named = |name: &str, mat: &Matrix| -> opquot::Result<()> {
                let mut path = out_prefix.as_os_str().to_owned();
                path.push(format!("_{name}.{ext}"));
                let path = PathBuf::from(path);
                io::write_matrix(mat, &path, output.format)?;
                println!("{}", path.display());
                Ok(())
            };
            match oracle::generate(&spec)? {
                GeneratedInstance::Pair { a, b } => {
                    write_named("A", &a)?;
                    write_named("B", &b)?;
                }
                GeneratedInstance::Quad { a, b, c, d } => {
                    write_named("A", &a)?;
                    write_named("B", &b)?;
                    write_named("C", &c)?;
                    write_named("D", &d)?;
                }
            }
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match &err {
                Error::Io(_) => 3,
                other => other.exit_code(),
            };
            std::process::exit(code);
        }
    }
}
