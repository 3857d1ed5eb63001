//! `weylab`: exact Weyl algebra computations from the command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
//! or input errors.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use weylab::exact::{Prime, Ring};
use weylab::fiber::{fiber_eval, matrix_rep};
use weylab::pipeline::{center_map, invert_weyl_endo, run_suite, verify_center_map};
use weylab::poly::poisson_standard;
use weylab::report::render_suite_report;
use weylab::syntax::{parse_expr, parse_poly, parse_weyl, render_polymap, EndoFile, ParseMode, Parsed};
use weylab::weyl::{canonical_poisson, WeylEndo, WeylSignature};

#[derive(Parser)]
#[command(name = "weylab", version, about = "Exact Weyl algebra and characteristic-p center maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Algebra {
    /// Number of conjugate pairs; generators are y1..y{2n}
    #[arg(long)]
    n: usize,
    /// Coefficient ring: Z, Q or Fp:<p>
    #[arg(long, default_value = "Z")]
    ring: Ring,
    /// Read commutative polynomials in x1..x{2n} instead of Weyl elements
    #[arg(long)]
    poly: bool,
}

impl Algebra {
    fn mode(&self) -> ParseMode {
        if self.poly {
            ParseMode::Poly(2 * self.n)
        } else {
            ParseMode::Weyl(self.n)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its normal form
    Parse {
        #[command(flatten)]
        alg: Algebra,
        expr: String,
    },
    /// Product A*B in normal form
    Mul {
        #[command(flatten)]
        alg: Algebra,
        a: String,
        b: String,
    },
    /// Commutator [A, B] = A*B - B*A
    Commutator {
        #[command(flatten)]
        alg: Algebra,
        a: String,
        b: String,
    },
    /// Total degree; `-inf` for zero
    Degree {
        #[command(flatten)]
        alg: Algebra,
        expr: String,
    },
    /// Operations on endomorphism files
    Endo {
        #[command(subcommand)]
        action: EndoAction,
    },
    /// Poisson bracket of two polynomials in x1..x{2n}
    Poisson {
        #[arg(long)]
        n: usize,
        /// Canonical bracket [a~, b~]/p mod p through integer lifts
        #[arg(long, conflicts_with = "standard", required_unless_present = "standard")]
        prime: Option<Prime>,
        /// Standard symplectic bracket over --ring
        #[arg(long)]
        standard: bool,
        #[arg(long, default_value = "Q")]
        ring: Ring,
        a: String,
        b: String,
    },
    /// Print the generator matrices of the fiber at a point
    Matrep {
        #[arg(long)]
        prime: Prime,
        #[arg(long)]
        n: usize,
        /// Comma-separated 2n residues (default: the origin)
        #[arg(long, value_delimiter = ',')]
        point: Option<Vec<u64>>,
    },
    /// Evaluate a Weyl expression over F_p at the fiber of a point
    Fiber {
        #[arg(long)]
        prime: Prime,
        /// Comma-separated 2n residues; n is half their number
        #[arg(long, value_delimiter = ',', required = true)]
        point: Vec<u64>,
        expr: String,
    },
    /// Full multi-prime verification of an endomorphism over Z, as JSON
    Suite {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<Prime>,
        #[arg(long)]
        max_degree: Option<u32>,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum EndoAction {
    /// Check the defining relations of the images
    Verify { file: PathBuf },
    /// The induced polynomial map on the center mod p, with its checks
    CenterMap {
        #[arg(long)]
        prime: Prime,
        file: PathBuf,
    },
    /// Search for an inverse (over Q for files over Z)
    Invert {
        #[arg(long)]
        max_degree: Option<u32>,
        file: PathBuf,
    },
}

/// Why a command did not succeed.
enum Failure {
    /// A check ran and failed (exit 1).
    Check(String),
    /// Bad input (exit 2).
    Input(String),
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse(alg: &Algebra, text: &str) -> Result<Parsed, Failure> {
    if alg.n == 0 {
        return Err(input("--n must be at least 1"));
    }
    parse_expr(text, alg.mode(), alg.ring).map_err(|e| input(format!("in `{text}`: {e}")))
}

fn binary(alg: &Algebra, a: &str, b: &str, commutator: bool) -> Result<String, Failure> {
    Ok(match (parse(alg, a)?, parse(alg, b)?) {
        (Parsed::Weyl(a), Parsed::Weyl(b)) => {
            if commutator {
                a.commutator(&b).map_err(input)?.to_string()
            } else {
                a.try_mul(&b).map_err(input)?.to_string()
            }
        }
        (Parsed::Poly(a), Parsed::Poly(b)) => {
            if commutator {
                "0".to_string()
            } else {
                a.try_mul(&b).map_err(input)?.to_string()
            }
        }
        _ => unreachable!("both operands use the same mode"),
    })
}

fn load(file: &PathBuf) -> Result<EndoFile, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| input(format!("{}: {e}", file.display())))?;
    EndoFile::parse(&text).map_err(|e| input(format!("{}: {e}", file.display())))
}

/// The endomorphism, or a failed check carrying the offending pair.
fn verified(file: &EndoFile) -> Result<WeylEndo, Failure> {
    file.to_unverified_endo().map_err(input)?;
    file.to_endo().map_err(|e| Failure::Check(e.to_string()))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Parse { alg, expr } => println!("{}", parse(&alg, &expr)?),
        Command::Mul { alg, a, b } => println!("{}", binary(&alg, &a, &b, false)?),
        Command::Commutator { alg, a, b } => println!("{}", binary(&alg, &a, &b, true)?),
        Command::Degree { alg, expr } => {
            let d = match parse(&alg, &expr)? {
                Parsed::Weyl(a) => a.bernstein_degree(),
                Parsed::Poly(a) => a.total_degree(),
            };
            match d {
                Some(d) => println!("{d}"),
                None => println!("-inf"),
            }
        }
        Command::Endo { action } => endo(action)?,
        Command::Poisson {
            n,
            prime,
            standard,
            ring,
            a,
            b,
        } => {
            if n == 0 {
                return Err(input("--n must be at least 1"));
            }
            let ring = match prime {
                Some(p) if !standard => Ring::PrimeField(p),
                _ => ring,
            };
            let pa = parse_poly(&a, 2 * n, ring).map_err(|e| input(format!("in `{a}`: {e}")))?;
            let pb = parse_poly(&b, 2 * n, ring).map_err(|e| input(format!("in `{b}`: {e}")))?;
            let bracket = match prime {
                Some(p) if !standard => canonical_poisson(&pa, &pb, p, n).map_err(input)?,
                _ => poisson_standard(&pa, &pb, n).map_err(input)?,
            };
            println!("{bracket}");
        }
        Command::Matrep { prime, n, point } => {
            if n == 0 {
                return Err(input("--n must be at least 1"));
            }
            let point = point.unwrap_or_else(|| vec![0; 2 * n]);
            let rep = matrix_rep(prime, n, &point).map_err(input)?;
            for (i, m) in rep.generators().iter().enumerate() {
                println!("Y{}:", i + 1);
                print!("{m}");
            }
        }
        Command::Fiber { prime, point, expr } => {
            if point.is_empty() || point.len() % 2 != 0 {
                return Err(input("--point needs an even, positive number of coordinates"));
            }
            let n = point.len() / 2;
            let rep = matrix_rep(prime, n, &point).map_err(input)?;
            let a = parse_weyl(&expr, WeylSignature::new(n), rep.ring())
                .map_err(|e| input(format!("in `{expr}`: {e}")))?;
            let m = fiber_eval(&a, &rep).map_err(input)?;
            print!("{m}");
            match m.as_scalar() {
                Some(s) => println!("scalar: {s}"),
                None => println!("scalar: no"),
            }
        }
        Command::Suite {
            primes,
            max_degree,
            file,
        } => {
            let parsed = load(&file)?;
            if parsed.ring != Ring::Integer {
                return Err(input("suite expects an endomorphism over Z"));
            }
            let f = verified(&parsed)?;
            let name = file.file_name().map_or_else(|| file.display().to_string(), |s| s.to_string_lossy().into_owned());
            let report = run_suite(&f, &primes, max_degree, &name).map_err(input)?;
            println!("{}", render_suite_report(&report));
            if !report.passed() {
                return Err(Failure::Check("some suite checks failed".into()));
            }
        }
    }
    Ok(())
}

fn endo(action: EndoAction) -> Outcome {
    match action {
        EndoAction::Verify { file } => {
            let parsed = load(&file)?;
            verified(&parsed)?;
            println!("relations: ok");
        }
        EndoAction::CenterMap { prime, file } => {
            let parsed = load(&file)?;
            if parsed.ring != Ring::Integer && parsed.ring != Ring::PrimeField(prime) {
                return Err(input(format!("center-map expects a file over Z or Fp:{prime}")));
            }
            let f = verified(&parsed)?;
            let r = center_map(&f, prime).map_err(|e| Failure::Check(e.to_string()))?;
            let v = verify_center_map(&r).map_err(input)?;
            print!("{}", render_polymap(&r.map));
            println!("jacobian: {}", v.jacobian);
            println!("bracket_preserved: {}", v.bracket_preserved);
            println!("jacobian_one: {}", v.jacobian_one);
            println!("degree_equal: {}", v.degree_equal);
            if v.outside_jacobian_hypothesis {
                println!("note: p <= n, the jacobian statement does not apply");
            }
            if !v.all_passed() {
                return Err(Failure::Check("center map checks failed".into()));
            }
        }
        EndoAction::Invert { max_degree, file } => {
            let parsed = load(&file)?;
            let f = verified(&parsed)?;
            let f = if f.ring().is_field() {
                f
            } else {
                f.to_ring(Ring::Rational).map_err(input)?
            };
            match invert_weyl_endo(&f, max_degree).map_err(input)? {
                Some(g) => print!("{}", EndoFile::from_endo(&g).render()),
                None => return Err(Failure::Check("no inverse within the degree bound".into())),
            }
        }
    }
    Ok(())
}
