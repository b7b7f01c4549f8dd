//! Brute-force checks over every small coefficient quadruple, and window
//! convergence tables.

use std::time::Instant;

use num_rational::Ratio;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::density::{
    count_coprime_residues, decide, empirical_density, exact_density, product_density, witness,
};
use crate::error::{Error, Result};
use crate::gcd::{determinant, eval_gcd, gcd, gcd4, reduce, reduce_coeffs, LinearPoly};
use crate::scalar::Int;

/// Decision and ground truth disagree for one quadruple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub predicted: bool,
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub detail: String,
}

/// Result of [`exhaustive_check`]. A clean run has every failure list empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport<T> {
    pub bound: u64,
    pub quadruples_checked: u64,
    pub mismatches: Vec<Mismatch<T>>,
    pub lemma2_failures: Vec<CheckFailure<T>>,
    pub determinant_failures: Vec<CheckFailure<T>>,
    pub pointwise_failures: Vec<CheckFailure<T>>,
    pub periodicity_failures: Vec<CheckFailure<T>>,
    pub gcd4_failures: Vec<CheckFailure<T>>,
    pub lower_bound_failures: Vec<CheckFailure<T>>,
    pub local_factor_failures: Vec<CheckFailure<T>>,
    pub witness_failures: Vec<CheckFailure<T>>,
    /// Wall-clock seconds. The only field that varies between identical runs.
    pub elapsed: f64,
}

impl<T: Int> SweepReport<T> {
    fn empty(bound: u64) -> Self {
        SweepReport {
            bound,
            quadruples_checked: 0,
            mismatches: Vec::new(),
            lemma2_failures: Vec::new(),
            determinant_failures: Vec::new(),
            pointwise_failures: Vec::new(),
            periodicity_failures: Vec::new(),
            gcd4_failures: Vec::new(),
            lower_bound_failures: Vec::new(),
            local_factor_failures: Vec::new(),
            witness_failures: Vec::new(),
            elapsed: 0.0,
        }
    }

    fn failure_lists_mut(&mut self) -> [&mut Vec<CheckFailure<T>>; 8] {
        [
            &mut self.lemma2_failures,
            &mut self.determinant_failures,
            &mut self.pointwise_failures,
            &mut self.periodicity_failures,
            &mut self.gcd4_failures,
            &mut self.lower_bound_failures,
            &mut self.local_factor_failures,
            &mut self.witness_failures,
        ]
    }

    /// Named failure lists, in serialization order.
    pub fn failure_lists(&self) -> [(&'static str, &Vec<CheckFailure<T>>); 8] {
        [
            ("lemma2_failures", &self.lemma2_failures),
            ("determinant_failures", &self.determinant_failures),
            ("pointwise_failures", &self.pointwise_failures),
            ("periodicity_failures", &self.periodicity_failures),
            ("gcd4_failures", &self.gcd4_failures),
            ("lower_bound_failures", &self.lower_bound_failures),
            ("local_factor_failures", &self.local_factor_failures),
            ("witness_failures", &self.witness_failures),
        ]
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.failure_lists().iter().all(|(_, l)| l.is_empty())
    }

    /// Order-insensitive merge; failure lists are sorted by [`Self::finish`].
    fn merge(mut self, mut other: Self) -> Self {
        self.quadruples_checked += other.quadruples_checked;
        self.mismatches.append(&mut other.mismatches);
        for (mine, theirs) in self
            .failure_lists_mut()
            .into_iter()
            .zip(other.failure_lists_mut())
        {
            mine.append(theirs);
        }
        self
    }

    fn finish(mut self) -> Self {
        fn key<T: Clone>(a: &T, b: &T, c: &T, d: &T) -> (T, T, T, T) {
            (a.clone(), b.clone(), c.clone(), d.clone())
        }
        self.mismatches.sort_by_key(|m| key(&m.a, &m.b, &m.c, &m.d));
        for list in self.failure_lists_mut() {
            list.sort_by(|x, y| {
                key(&x.a, &x.b, &x.c, &x.d)
                    .cmp(&key(&y.a, &y.b, &y.c, &y.d))
                    .then_with(|| x.detail.cmp(&y.detail))
            });
        }
        self
    }
}

/// Largest k dividing all four, found by search. Independent of
/// [`gcd4`]; requires `a ≠ 0`.
fn brute_gcd4<T: Int>(a: &T, b: &T, c: &T, d: &T) -> T {
    let limit = a.abs();
    let mut k = limit.clone();
    while k > T::one() {
        if [a, b, c, d]
            .iter()
            .all(|n| (*n).clone() % k.clone() == T::zero())
        {
            return k;
        }
        k = k - T::one();
    }
    T::one()
}

fn check_quadruple<T: Int>(a: T, b: T, c: T, d: T, report: &mut SweepReport<T>) {
    let fail = |list: &mut Vec<CheckFailure<T>>, detail: String| {
        list.push(CheckFailure {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            d: d.clone(),
            detail,
        })
    };
    let (f, g) = LinearPoly::pair(a.clone(), b.clone(), c.clone(), d.clone())
        .expect("sweep skips zero leading coefficients");
    let trace = reduce(&f, &g);
    let rf = &trace.reduced;
    let (u, v, s) = (rf.u().clone(), rf.v().clone(), rf.s().clone());
    let report_density = exact_density(rf);
    report.quadruples_checked += 1;

    let verdict = decide(&a, &b, &c, &d).expect("nonzero leading coefficients");
    if verdict.positive_density != report_density.positive {
        report.mismatches.push(Mismatch {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            d: d.clone(),
            predicted: verdict.positive_density,
            observed: report_density.positive,
        });
    }

    if u != gcd(&a, &c) {
        fail(
            &mut report.lemma2_failures,
            format!("u = {u}, gcd(a, c) = {}", gcd(&a, &c)),
        );
    }
    let bd = gcd(&b, &d);
    let raw_vs = gcd(&trace.raw.v, &trace.raw.s);
    if bd != raw_vs || bd != gcd(&v, &s) {
        fail(
            &mut report.lemma2_failures,
            format!("gcd(b, d) = {bd}, gcd(v_raw, s_raw) = {raw_vs}"),
        );
    }

    let det = determinant(&a, &b, &c, &d).abs();
    if u.clone() * s.clone() != det {
        fail(
            &mut report.determinant_failures,
            format!("u*s = {}, |ad - bc| = {det}", u.clone() * s.clone()),
        );
    }

    let brute = brute_gcd4(&a, &b, &c, &d);
    let by_pairs = gcd(&gcd(&a, &b), &gcd(&c, &d));
    let by_columns = gcd(&gcd(&a, &c), &gcd(&b, &d));
    if brute != by_pairs || brute != by_columns || brute != gcd4(&a, &b, &c, &d) {
        fail(
            &mut report.gcd4_failures,
            format!("brute {brute}, ((a,b),(c,d)) {by_pairs}, ((a,c),(b,d)) {by_columns}"),
        );
    }

    let two = T::one() + T::one();
    let reach = two.clone() * s.clone() + two;
    let mut x = -reach.clone();
    let raw = &trace.raw;
    let raw_gcd = |x: &T| gcd(&(raw.u.clone() * x.clone() + raw.v.clone()), &raw.s);
    while x <= reach {
        let direct = eval_gcd(&f, &g, &x);
        let reduced = rf.eval_gcd(&x);
        if direct != reduced {
            fail(
                &mut report.pointwise_failures,
                format!("x = {x}: gcd(f, g) = {direct}, gcd(ux+v, s) = {reduced}"),
            );
        }
        if reduced != rf.eval_gcd(&(x.clone() + s.clone()))
            || raw_gcd(&x) != raw_gcd(&(x.clone() + raw.s.clone()))
        {
            fail(&mut report.periodicity_failures, format!("x = {x}"));
        }
        x = x + T::one();
    }

    if report_density.positive {
        let floor = Ratio::new(T::one(), s.clone());
        if report_density.density < floor {
            fail(
                &mut report.lower_bound_failures,
                format!("density {} < 1/{s}", report_density.density),
            );
        }
    }

    if s.is_positive() {
        let counted = Ratio::new(count_coprime_residues(rf), s.clone());
        let product = product_density(&report_density.local_factors);
        if counted != product || counted != report_density.density {
            fail(
                &mut report.local_factor_failures,
                format!("counted {counted}, product {product}"),
            );
        }
    }

    let w = witness(rf);
    match &w.x {
        Some(x) => {
            let value = eval_gcd(&f, &g, x);
            if !report_density.positive || !value.is_one() || x.is_negative() || x >= &s {
                fail(
                    &mut report.witness_failures,
                    format!("witness {x} gives gcd {value}"),
                );
            }
        }
        None => {
            if report_density.positive {
                fail(
                    &mut report.witness_failures,
                    "no witness for positive density".into(),
                );
            }
        }
    }
}

/// Checks every quadruple with `|a|, |b|, |c|, |d| ≤ bound` and `a, c ≠ 0`.
///
/// Failure lists come back sorted lexicographically by `(a, b, c, d)`.
pub fn exhaustive_check<T: Int>(bound: u64) -> Result<SweepReport<T>> {
    if bound == 0 {
        return Err(Error::NotPositive(bound.to_string()));
    }
    let start = Instant::now();
    let k = bound as i64;
    let to_t = |n: i64| T::from_i64(n).expect("bound fits the scalar type");
    let leading: Vec<i64> = (-k..=k).filter(|&n| n != 0).collect();
    let pairs: Vec<(i64, i64)> = leading
        .iter()
        .flat_map(|&a| (-k..=k).map(move |b| (a, b)))
        .collect();
    let report = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let mut part = SweepReport::empty(bound);
            for &c in &leading {
                for d in -k..=k {
                    check_quadruple(to_t(a), to_t(b), to_t(c), to_t(d), &mut part);
                }
            }
            part
        })
        .reduce(|| SweepReport::empty(bound), SweepReport::merge);
    let mut report = report.finish();
    report.elapsed = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Empirical against exact density for one window size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow<T: Int> {
    pub n: u64,
    pub empirical: Ratio<T>,
    pub exact: Ratio<T>,
    pub abs_error: Ratio<T>,
    /// `s/(2N+1)`, or `2/(2N+1)` when `s = 0`.
    pub bound: Ratio<T>,
}

impl<T: Int> ConvergenceRow<T> {
    pub fn within_bound(&self) -> bool {
        self.abs_error <= self.bound
    }
}

/// One [`ConvergenceRow`] per window half-width in `ns`, which must be
/// nonempty and strictly ascending.
pub fn convergence_table<T: Int>(
    a: &T,
    b: &T,
    c: &T,
    d: &T,
    ns: &[u64],
) -> Result<Vec<ConvergenceRow<T>>> {
    let trace = reduce_coeffs(a.clone(), b.clone(), c.clone(), d.clone())?;
    if ns.is_empty() {
        return Err(Error::InvalidArgument("no window sizes given".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "window sizes must be strictly ascending".into(),
        ));
    }
    let exact = exact_density(&trace.reduced).density;
    let s = trace.reduced.s().clone();
    // for s = 0 the gcd |ux + v| equals 1 at no more than two x
    let slack = if s.is_zero() { T::one() + T::one() } else { s };
    let (f, g) = LinearPoly::pair(a.clone(), b.clone(), c.clone(), d.clone())?;
    ns.iter()
        .map(|&n| {
            let emp = empirical_density(&f, &g, n)?;
            let abs_error = (emp.ratio.clone() - exact.clone()).abs();
            Ok(ConvergenceRow {
                n,
                bound: Ratio::new(slack.clone(), emp.total.clone()),
                empirical: emp.ratio,
                exact: exact.clone(),
                abs_error,
            })
        })
        .collect()
}
