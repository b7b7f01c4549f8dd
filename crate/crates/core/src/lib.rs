//! Exact analysis of when two linear integer polynomials `f(x) = a·x + b`
//! and `g(x) = c·x + d` take coprime values.
//!
//! [`reduce`] runs Euclid's algorithm on the pair of polynomials and ends in
//! a reduced form `(u, v, s)` with `gcd(f(x), g(x)) = gcd(u·x + v, s)` for
//! every integer x. From that form [`exact_density`] computes the natural
//! density of coprime evaluations, [`witness`] produces an x in one period
//! with `gcd = 1`, and [`decide`] answers the positivity question straight
//! from the coefficients: the density is positive exactly when
//! `gcd(a, b, c, d) = 1` and `a·d ≠ b·c`.
//!
//! All algorithms are generic over the [`Int`] scalar. Use the `Big*`
//! aliases for unbounded inputs and the `*64` aliases for bounded sweeps.

pub mod density;
pub mod error;
pub mod factor;
pub mod gcd;
pub mod scalar;
pub mod verify;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use density::{
    count_coprime_residues, decide, empirical_density, exact_density, is_everywhere_coprime,
    local_factors, product_density, witness, DensityReport, EmpiricalDensity, Reason, Verdict,
    WitnessMethod, WitnessResult,
};
pub use error::{Error, Operand, Result};
pub use factor::factorize;
pub use gcd::{
    determinant, eval_gcd, gcd, gcd4, reduce, reduce_coeffs, LinearPoly, RawTerminal, ReducedForm,
    ReductionStep, ReductionTrace,
};
pub use scalar::Int;
pub use verify::{convergence_table, exhaustive_check, ConvergenceRow, SweepReport};

pub use num_bigint;
pub use num_rational;

/// Exact rational in lowest terms.
pub type Rational<T> = Ratio<T>;

pub type BigRational = Ratio<BigInt>;
pub type BigLinearPoly = LinearPoly<BigInt>;
pub type BigReducedForm = ReducedForm<BigInt>;
pub type BigReductionTrace = ReductionTrace<BigInt>;
pub type BigDensityReport = DensityReport<BigInt>;
pub type BigVerdict = Verdict<BigInt>;

pub type Rational64 = Ratio<i64>;
pub type LinearPoly64 = LinearPoly<i64>;
pub type ReducedForm64 = ReducedForm<i64>;
pub type ReductionTrace64 = ReductionTrace<i64>;
pub type DensityReport64 = DensityReport<i64>;
pub type SweepReport64 = SweepReport<i64>;
