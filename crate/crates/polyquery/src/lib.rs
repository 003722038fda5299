//! Exact simulation and query-count analysis for nonadaptive polynomial
//! interpolation from phase queries.
//!
//! An unknown polynomial of total degree at most `d` in `n` variables can be
//! recovered from evaluation queries.  Classically this takes one query per
//! coefficient, `binomial(n + d, d)` of them.  A phase-query strategy does
//! much better: `k` nonadaptive queries produce a state whose measurement
//! recovers all coefficients at once with success probability exactly
//! `|R_k| / q^J`, where `R_k` is the set of phase-coefficient vectors
//! reachable with `k` queries.  This crate computes that set, simulates the
//! measurement, and carries out the companion rank computations over the
//! reals and complexes that determine how small `k` can be.
//!
//! Modules, in dependency order:
//!
//! * [`ffield`]: arithmetic in `F_q` with `q = p^r`, traces, and the additive
//!   character used for phase kickback.
//! * [`monomial`]: graded-lexicographic exponent bookkeeping and evaluation
//!   of monomial feature vectors.
//! * [`querymap`]: enumeration of the reachable phase-vector set `R_k`, its
//!   canonical representatives, and the exact success ratio.
//! * [`qsim`]: state-vector simulation of the prepare/query/measure pipeline
//!   and the Gram-matrix rank bound showing the measurement is optimal.
//! * [`classical`]: the Vandermonde interpolation baseline the quantum count
//!   is compared against.
//! * [`secant`]: dimensions of secant varieties of Veronese varieties via
//!   randomized Terracini ranks, and the closed-form minimal query count.
//! * [`waring`]: real and complex low-rank fits by damped least squares, and
//!   Monte Carlo estimates of typical-rank fractions.
//! * [`cli`]: the `polyquery` command-line front end with reproducible
//!   CSV/JSON reports.
//!
//! Each capability has a runnable walkthrough under `examples/`:
//!
//! ```text
//! cargo run --example range_growth          # |R_k| and success ratios over a q sweep
//! cargo run --example success_probability   # the full state-vector pipeline, step by step
//! cargo run --example gram_rank             # measurement-optimality rank bound
//! cargo run --example classical_baseline    # Vandermonde round trips and failure modes
//! cargo run --example secant_dimensions     # expected vs observed secant dimensions
//! cargo run --example generic_rank_table    # closed-form vs scanned minimal query counts
//! cargo run --example typical_rank          # real/complex rank fractions with confidence bounds
//! cargo run --example query_counts          # classical vs quantum query-count comparison
//! ```

pub mod classical;
pub mod cli;
pub mod ffield;
pub mod monomial;
pub mod qsim;
pub mod querymap;
pub mod secant;
pub mod tolerances;
pub mod waring;

use std::fmt;

/// Errors shared across the crate.
///
/// Variants carry enough context to report the failing quantity; they do not
/// capture backtraces or wrap other errors except for I/O.
#[derive(Debug)]
pub enum Error {
    /// The requested characteristic is not a prime number.
    NonPrime(u64),
    /// The supplied modulus polynomial factors over the prime field.
    ReducibleModulus,
    /// The supplied modulus is malformed (wrong degree, not monic, or has
    /// coefficients outside the prime field).
    InvalidModulus(String),
    /// No built-in modulus exists for this characteristic and degree, and
    /// none was supplied.
    UnsupportedDegree { p: u64, r: u32 },
    /// Inversion of the zero element.
    DivideByZero,
    /// A monomial basis would exceed the configured term cap.
    Overflow { terms: u128, cap: u128 },
    /// An enumeration would exceed the configured work cap.
    WorkCapExceeded { needed: u128, cap: u128 },
    /// A problem dimension exceeds a hard size cap.
    SizeCap { what: &'static str, size: u128, cap: u128 },
    /// A linear system has no unique solution.
    SingularSystem,
    /// Rejection sampling gave up after the attempt limit.
    Exhausted { attempts: u32 },
    /// A projective point with all coordinates zero was supplied.
    ZeroPoint { index: usize },
    /// A slice length does not match the expected dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Invalid user input outside the more specific cases above.
    InvalidInput(String),
    /// An underlying I/O failure.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrime(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus => write!(f, "modulus polynomial is reducible"),
            Error::InvalidModulus(why) => write!(f, "invalid modulus: {why}"),
            Error::UnsupportedDegree { p, r } => {
                write!(f, "no built-in modulus for p = {p}, r = {r}; supply one explicitly")
            }
            Error::DivideByZero => write!(f, "division by zero"),
            Error::Overflow { terms, cap } => {
                write!(f, "monomial basis has {terms} terms, above the cap of {cap}")
            }
            Error::WorkCapExceeded { needed, cap } => {
                write!(f, "enumeration needs about {needed} operations, above the cap of {cap}")
            }
            Error::SizeCap { what, size, cap } => {
                write!(f, "{what} is {size}, above the cap of {cap}")
            }
            Error::SingularSystem => write!(f, "linear system is singular"),
            Error::Exhausted { attempts } => {
                write!(f, "gave up after {attempts} sampling attempts")
            }
            Error::ZeroPoint { index } => {
                write!(f, "point {index} has all coordinates zero")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected length {expected}, got {got}")
            }
            Error::InvalidInput(why) => write!(f, "{why}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
