//! Density of coprime evaluations, the positivity decision, and witnesses.
//!
//! `x ↦ gcd(u·x + v, s)` is periodic with period dividing `s`, so for `s > 0`
//! the natural density of `{x : gcd(f(x), g(x)) = 1}` is the share of residues
//! `r ∈ [0, s)` with `gcd(u·r + v, s) = 1`. When `s = 0` the gcd is `|u·x + v|`,
//! which equals 1 for at most two x, and the density is 0.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::gcd::{determinant, eval_gcd, gcd4, reduce_coeffs, LinearPoly, ReducedForm};
use crate::scalar::Int;

/// Largest `s` for which [`exact_density`] counts residues one by one. Above
/// it the count is taken from the per-prime product.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport<T: Int> {
    pub reduced: ReducedForm<T>,
    /// `s` when `s > 0`, otherwise 1.
    pub period: T,
    /// Residues `r ∈ [0, s)` with `gcd(u·r + v, s) = 1`; 0 when `s = 0`.
    pub coprime_residues: T,
    pub density: Ratio<T>,
    pub positive: bool,
    /// Factor contributed by each prime dividing `s`. Empty when `s ∈ {0, 1}`.
    pub local_factors: BTreeMap<T, Ratio<T>>,
}

/// Counts `r ∈ [0, s)` with `gcd(u·r + v, s) = 1` by enumeration.
pub fn count_coprime_residues<T: Int>(rf: &ReducedForm<T>) -> T {
    let mut count = T::zero();
    let mut r = T::zero();
    while &r < rf.s() {
        if rf.eval_gcd(&r).is_one() {
            count = count + T::one();
        }
        r = r + T::one();
    }
    count
}

/// Per-prime factors for `s > 0`: 0 if `p | u` and `p | v`, 1 if `p | u`
/// and `p ∤ v`, `(p − 1)/p` if `p ∤ u`.
pub fn local_factors<T: Int>(rf: &ReducedForm<T>) -> BTreeMap<T, Ratio<T>> {
    if rf.s().is_zero() {
        return BTreeMap::new();
    }
    let primes = factorize(rf.s()).expect("s is positive");
    primes
        .into_keys()
        .map(|p| {
            let divides_u = (rf.u().clone() % p.clone()).is_zero();
            let divides_v = (rf.v().clone() % p.clone()).is_zero();
            let factor = match (divides_u, divides_v) {
                (true, true) => Ratio::zero(),
                (true, false) => Ratio::one(),
                (false, _) => Ratio::new(p.clone() - T::one(), p.clone()),
            };
            (p, factor)
        })
        .collect()
}

/// Product of the local factors; 1 for the empty product.
pub fn product_density<T: Int>(factors: &BTreeMap<T, Ratio<T>>) -> Ratio<T> {
    factors
        .values()
        .fold(Ratio::one(), |acc, f| acc * f.clone())
}

pub fn exact_density<T: Int>(rf: &ReducedForm<T>) -> DensityReport<T> {
    let s = rf.s();
    if s.is_zero() {
        return DensityReport {
            reduced: rf.clone(),
            period: T::one(),
            coprime_residues: T::zero(),
            density: Ratio::zero(),
            positive: false,
            local_factors: BTreeMap::new(),
        };
    }
    let local = local_factors(rf);
    let small = s.to_u64().is_some_and(|n| n <= ENUMERATION_LIMIT);
    let coprime_residues = if small {
        count_coprime_residues(rf)
    } else {
        let d = product_density(&local) * Ratio::from_integer(s.clone());
        d.to_integer()
    };
    let density = Ratio::new(coprime_residues.clone(), s.clone());
    DensityReport {
        reduced: rf.clone(),
        period: s.clone(),
        positive: coprime_residues.is_positive(),
        coprime_residues,
        density,
        local_factors: local,
    }
}

/// Why a pair does or does not have positive density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason<T> {
    Positive,
    /// Every coefficient shares the divisor `j > 1`.
    CommonFactor(T),
    /// `a·d = b·c`: one polynomial is a rational multiple of the other.
    Proportional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T> {
    pub positive_density: bool,
    pub reason: Reason<T>,
}

/// Decides positivity from the coefficients alone: positive exactly when
/// `gcd(a, b, c, d) = 1` and `a·d ≠ b·c`. A common factor is reported ahead
/// of proportionality when both apply.
pub fn decide<T: Int>(a: &T, b: &T, c: &T, d: &T) -> Result<Verdict<T>> {
    LinearPoly::pair(a.clone(), b.clone(), c.clone(), d.clone())?;
    let j = gcd4(a, b, c, d);
    let reason = if j > T::one() {
        Reason::CommonFactor(j)
    } else if determinant(a, b, c, d).is_zero() {
        Reason::Proportional
    } else {
        Reason::Positive
    };
    Ok(Verdict {
        positive_density: reason == Reason::Positive,
        reason,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMethod {
    ModularInverse,
    PeriodScan,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult<T> {
    /// When present, `0 ≤ x < s` and `gcd(u·x + v, s) = 1`.
    pub x: Option<T>,
    pub method: WitnessMethod,
}

/// Finds `x ∈ [0, s)` with `gcd(u·x + v, s) = 1`.
///
/// With `gcd(u, s) = 1` the witness is `u⁻¹·(1 − v) mod s`, which makes
/// `u·x + v ≡ 1 (mod s)`. Otherwise one period is scanned. `s = 0` always
/// gives no witness: isolated solutions of `|u·x + v| = 1` do not certify
/// positive density.
pub fn witness<T: Int>(rf: &ReducedForm<T>) -> WitnessResult<T> {
    let s = rf.s();
    if s.is_zero() {
        return WitnessResult {
            x: None,
            method: WitnessMethod::None,
        };
    }
    let eg = rf.u().extended_gcd(s);
    if eg.gcd.is_one() {
        let inverse = eg.x.mod_floor(s);
        let x = (inverse * (T::one() - rf.v().clone())).mod_floor(s);
        return WitnessResult {
            x: Some(x),
            method: WitnessMethod::ModularInverse,
        };
    }
    let mut r = T::zero();
    while &r < s {
        if rf.eval_gcd(&r).is_one() {
            return WitnessResult {
                x: Some(r),
                method: WitnessMethod::PeriodScan,
            };
        }
        r = r + T::one();
    }
    WitnessResult {
        x: None,
        method: WitnessMethod::None,
    }
}

/// True when `gcd(a·x + b, c·x + d) = 1` for every integer x.
pub fn is_everywhere_coprime<T: Int>(a: &T, b: &T, c: &T, d: &T) -> Result<bool> {
    let trace = reduce_coeffs(a.clone(), b.clone(), c.clone(), d.clone())?;
    let rf = &trace.reduced;
    if rf.s().is_zero() {
        return Ok(false);
    }
    let small = rf.s().to_u64().is_some_and(|n| n <= ENUMERATION_LIMIT);
    if small {
        let mut r = T::zero();
        while &r < rf.s() {
            if !rf.eval_gcd(&r).is_one() {
                return Ok(false);
            }
            r = r + T::one();
        }
        Ok(true)
    } else {
        Ok(product_density(&local_factors(rf)).is_one())
    }
}

/// Count of coprime evaluations over the window `x ∈ [−N, N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDensity<T: Int> {
    pub n: u64,
    pub coprime: T,
    /// `2N + 1`, unreduced.
    pub total: T,
    pub ratio: Ratio<T>,
}

pub fn empirical_density<T: Int>(
    f: &LinearPoly<T>,
    g: &LinearPoly<T>,
    n: u64,
) -> Result<EmpiricalDensity<T>> {
    if n == 0 || n > i64::MAX as u64 / 2 {
        return Err(Error::NotPositive(n.to_string()));
    }
    let n_signed = n as i64;
    let coprime = (-n_signed..=n_signed)
        .into_par_iter()
        .filter(|&x| {
            let x = T::from_i64(x).expect("window fits the scalar type");
            eval_gcd(f, g, &x).is_one()
        })
        .count() as u64;
    let coprime = T::from_u64_lossless(coprime);
    let total = T::from_u64_lossless(2 * n + 1);
    Ok(EmpiricalDensity {
        n,
        ratio: Ratio::new(coprime.clone(), total.clone()),
        coprime,
        total,
    })
}
