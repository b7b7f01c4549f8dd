//! Euclidean reduction of a pair of linear polynomials.
//!
//! Given `f(x) = a·x + b` and `g(x) = c·x + d`, repeated division on the
//! leading coefficients
//!
//! ```text
//! a_i·x + b_i = e_{i+1}·(a_{i+1}·x + b_{i+1}) + (a_{i+2}·x + b_{i+2})
//! ```
//!
//! with `e_{i+1}` the largest integer such that `e_{i+1}·a_{i+1} ≤ a_i`, ends
//! when a remainder has zero leading coefficient. Every step preserves
//! `gcd(f(x), g(x))` pointwise, so the last divisor `u·x + v` and the final
//! constant `s` satisfy `gcd(f(x), g(x)) = gcd(u·x + v, s)` for all integers x.

use crate::error::{Error, Operand, Result};
use crate::scalar::Int;

/// `gcd(|m|, |n|)`, with `gcd(n, 0) = |n|` and `gcd(0, 0) = 0`.
pub fn gcd<T: Int>(m: &T, n: &T) -> T {
    m.gcd(n)
}

/// Greatest common divisor of four integers.
///
/// Grouping does not matter: `((a,b),(c,d)) = ((a,c),(b,d))`.
pub fn gcd4<T: Int>(a: &T, b: &T, c: &T, d: &T) -> T {
    gcd(&gcd(a, b), &gcd(c, d))
}

/// A linear polynomial `a·x + b` with `a ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearPoly<T> {
    a: T,
    b: T,
}

impl<T: Int> LinearPoly<T> {
    /// Returns `None` when the leading coefficient is zero.
    pub fn new(a: T, b: T) -> Option<Self> {
        if a.is_zero() {
            None
        } else {
            Some(LinearPoly { a, b })
        }
    }

    /// Builds the pair `(a·x + b, c·x + d)`, reporting which leading
    /// coefficient is zero if either is.
    pub fn pair(a: T, b: T, c: T, d: T) -> Result<(Self, Self)> {
        let f = Self::new(a, b).ok_or(Error::ZeroLeadingCoefficient(Operand::F))?;
        let g = Self::new(c, d).ok_or(Error::ZeroLeadingCoefficient(Operand::G))?;
        Ok((f, g))
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn eval(&self, x: &T) -> T {
        self.a.clone() * x.clone() + self.b.clone()
    }

    pub fn negated(&self) -> Self {
        LinearPoly {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl<T: Int> std::fmt::Display for LinearPoly<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}x - {}", self.a, self.b.abs())
        } else {
            write!(f, "{}x + {}", self.a, self.b)
        }
    }
}

/// `gcd(f(x), g(x))` evaluated directly.
pub fn eval_gcd<T: Int>(f: &LinearPoly<T>, g: &LinearPoly<T>, x: &T) -> T {
    gcd(&f.eval(x), &g.eval(x))
}

/// One division `a_i·x + b_i = e_next·(a_next·x + b_next) + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep<T> {
    pub a_i: T,
    pub b_i: T,
    pub a_next: T,
    pub b_next: T,
    pub e_next: T,
}

impl<T: Int> ReductionStep<T> {
    /// The remainder pair `(a_i − e·a_next, b_i − e·b_next)`.
    pub fn remainder(&self) -> (T, T) {
        (
            self.a_i.clone() - self.e_next.clone() * self.a_next.clone(),
            self.b_i.clone() - self.e_next.clone() * self.b_next.clone(),
        )
    }
}

/// Terminal values exactly as the algorithm produces them, before any
/// sign or residue canonicalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTerminal<T> {
    pub u: T,
    pub v: T,
    pub s: T,
}

/// Canonical reduced form `(u, v, s)`: `u ≥ 1`, `s ≥ 0`, and `0 ≤ v < s`
/// whenever `s > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedForm<T> {
    u: T,
    v: T,
    s: T,
}

impl<T: Int> ReducedForm<T> {
    /// Canonicalizes an arbitrary triple. Fails if `u < 1`.
    pub fn new(u: T, v: T, s: T) -> Result<Self> {
        if !u.is_positive() {
            return Err(Error::NotPositive(u.to_string()));
        }
        let s = s.abs();
        let v = if s.is_zero() { v } else { v.mod_floor(&s) };
        Ok(ReducedForm { u, v, s })
    }

    pub fn u(&self) -> &T {
        &self.u
    }

    pub fn v(&self) -> &T {
        &self.v
    }

    pub fn s(&self) -> &T {
        &self.s
    }

    /// `gcd(u·x + v, s)`.
    pub fn eval_gcd(&self, x: &T) -> T {
        gcd(&(self.u.clone() * x.clone() + self.v.clone()), &self.s)
    }
}

/// Full record of one run of the reduction.
///
/// `normalized_f` and `normalized_g` are the two polynomials that enter the
/// first division, i.e. after negating any polynomial with a negative leading
/// coefficient and then swapping so that the larger leading coefficient comes
/// first. `swapped` means `normalized_f` came from the caller's `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace<T> {
    pub normalized_f: LinearPoly<T>,
    pub normalized_g: LinearPoly<T>,
    pub f_negated: bool,
    pub g_negated: bool,
    pub swapped: bool,
    pub steps: Vec<ReductionStep<T>>,
    pub raw: RawTerminal<T>,
    pub reduced: ReducedForm<T>,
    /// Index `m` with `a_m = 0`; always `steps.len() + 2`.
    pub step_count: usize,
}

impl<T: Int> ReductionTrace<T> {
    /// Recomputes the reduction from `normalized_f`/`normalized_g` and checks
    /// that every recorded step, the terminal values and the canonical form
    /// agree with it.
    pub fn verify_replay(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidTrace(msg));
        if self.normalized_f.a < self.normalized_g.a || !self.normalized_g.a.is_positive() {
            return fail("leading coefficients are not ordered a1 >= a2 > 0".into());
        }
        if self.steps.is_empty() {
            return fail("no steps recorded".into());
        }
        if self.step_count != self.steps.len() + 2 {
            return fail(format!(
                "step_count {} does not match {} steps",
                self.step_count,
                self.steps.len()
            ));
        }
        let mut cur = (self.normalized_f.a.clone(), self.normalized_f.b.clone());
        let mut next = (self.normalized_g.a.clone(), self.normalized_g.b.clone());
        for (i, step) in self.steps.iter().enumerate() {
            if (step.a_i.clone(), step.b_i.clone()) != cur
                || (step.a_next.clone(), step.b_next.clone()) != next
            {
                return fail(format!("step {i} does not continue the previous remainder"));
            }
            if step.e_next != cur.0.div_floor(&next.0) {
                return fail(format!("step {i} quotient is not maximal"));
            }
            let rem = step.remainder();
            let last = i + 1 == self.steps.len();
            if rem.0.is_zero() != last {
                return fail(format!("step {i} terminates at the wrong place"));
            }
            cur = next;
            next = rem;
        }
        let raw = RawTerminal {
            u: cur.0,
            v: cur.1,
            s: next.1,
        };
        if raw != self.raw {
            return fail("terminal values differ".into());
        }
        let reduced = ReducedForm::new(raw.u, raw.v, raw.s)?;
        if reduced != self.reduced {
            return fail("canonical form differs".into());
        }
        Ok(())
    }
}

/// Runs the reduction on `f` and `g`.
pub fn reduce<T: Int>(f: &LinearPoly<T>, g: &LinearPoly<T>) -> ReductionTrace<T> {
    let f_negated = f.a.is_negative();
    let g_negated = g.a.is_negative();
    let f1 = if f_negated { f.negated() } else { f.clone() };
    let g1 = if g_negated { g.negated() } else { g.clone() };
    let swapped = f1.a < g1.a;
    let (first, second) = if swapped { (g1, f1) } else { (f1, g1) };

    let mut steps = Vec::new();
    let (mut a_i, mut b_i) = (first.a.clone(), first.b.clone());
    let (mut a_next, mut b_next) = (second.a.clone(), second.b.clone());
    let raw = loop {
        // a_i, a_next > 0, so floor division is the largest e with e·a_next ≤ a_i
        let e_next = a_i.div_floor(&a_next);
        let step = ReductionStep {
            a_i,
            b_i,
            a_next,
            b_next,
            e_next,
        };
        let (a_rem, b_rem) = step.remainder();
        let done = a_rem.is_zero();
        let (a_n, b_n) = (step.a_next.clone(), step.b_next.clone());
        steps.push(step);
        if done {
            break RawTerminal {
                u: a_n,
                v: b_n,
                s: b_rem,
            };
        }
        a_i = a_n;
        b_i = b_n;
        a_next = a_rem;
        b_next = b_rem;
    };

    let reduced = ReducedForm::new(raw.u.clone(), raw.v.clone(), raw.s.clone())
        .expect("last divisor has positive leading coefficient");
    let step_count = steps.len() + 2;
    ReductionTrace {
        normalized_f: first,
        normalized_g: second,
        f_negated,
        g_negated,
        swapped,
        steps,
        raw,
        reduced,
        step_count,
    }
}

/// [`reduce`] on raw coefficients, rejecting `a = 0` or `c = 0`.
pub fn reduce_coeffs<T: Int>(a: T, b: T, c: T, d: T) -> Result<ReductionTrace<T>> {
    let (f, g) = LinearPoly::pair(a, b, c, d)?;
    Ok(reduce(&f, &g))
}

/// `a·d − b·c`.
pub fn determinant<T: Int>(a: &T, b: &T, c: &T, d: &T) -> T {
    a.clone() * d.clone() - b.clone() * c.clone()
}

/// Upper bound on the number of division steps for a run whose second
/// leading coefficient is `a2 ≥ 1`: remainders at least halve every two
/// steps, so there are at most `2·⌊log₂ a2⌋ + 2`.
pub fn division_step_bound<T: Int>(a2: &T) -> usize {
    let two = T::one() + T::one();
    let mut n = a2.abs();
    let mut log2 = 0usize;
    while n > T::one() {
        n = n.div_floor(&two);
        log2 += 1;
    }
    2 * log2 + 2
}
