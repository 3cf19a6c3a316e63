//! Direct summation of `W(a,b|z) = Σ z^k / (k! Γ(ak + b))`.
//!
//! Used as a reference for moderate `|z|`. The sum is accumulated with
//! Neumaier's compensated algorithm and refuses to answer when the magnitude of
//! the terms makes the rounding error of the result larger than
//! [`RELIABILITY`] relative to `max(1, |sum|)`.

use crate::error::{Error, Result};
use crate::gamma::reciprocal_gamma;

/// Largest accepted rounding bound relative to `max(1, |sum|)`.
pub const RELIABILITY: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Magnitude of the last nonzero term included.
    pub tail_bound: f64,
    /// Bound on the accumulated rounding error of the computed terms.
    pub rounding_bound: f64,
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Sums the Wright series until two consecutive nonzero terms fall below
/// `tol · |partial sum|`. Terms sitting on a pole of `Γ` are exactly zero and are
/// skipped by the stopping rule.
pub fn wright_series(a: f64, b: f64, z: f64, max_terms: usize, tol: f64) -> Result<SeriesResult> {
    if !(a > -1.0) {
        return Err(Error::Domain {
            a,
            b,
            reason: "series oracle requires a > -1",
        });
    }
    if max_terms < 1 || !(tol > 0.0) || !z.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wright_series needs max_terms >= 1, tol > 0 and finite arguments \
             (max_terms = {max_terms}, tol = {tol}, b = {b}, z = {z})"
        )));
    }

    let mut acc = Neumaier::default();
    // weighted Σ |t_k|: the k-th power/factorial ratio carries about k + 4 roundings
    let mut rounding = 0.0;
    let mut power = 1.0; // z^k / k!
    let mut quiet = 0;
    let mut tail_bound = 0.0;

    for k in 0..max_terms {
        if k > 0 {
            power *= z / k as f64;
        }
        let arg = a * k as f64 + b;
        if is_pole(arg) {
            continue;
        }
        let term = power * reciprocal_gamma(arg);
        if !term.is_finite() {
            return Err(Error::SeriesUnreliable {
                rounding_bound: f64::INFINITY,
                sum: acc.value(),
            });
        }
        acc.add(term);
        rounding += (k as f64 + 4.0) * f64::EPSILON * term.abs();
        if term != 0.0 {
            tail_bound = term.abs();
        }

        let sum = acc.value();
        if term.abs() <= tol * sum.abs() && k as f64 > z.abs() {
            quiet += 1;
            if quiet >= 2 {
                return finish(sum, k + 1, tail_bound, rounding);
            }
        } else {
            quiet = 0;
        }
        if power == 0.0 {
            // every later term is zero as well
            return finish(sum, k + 1, tail_bound, rounding);
        }
    }
    Err(Error::SeriesNonConvergence {
        terms: max_terms,
        tail_bound,
    })
}

fn finish(value: f64, terms_used: usize, tail_bound: f64, rounding_bound: f64) -> Result<SeriesResult> {
    if rounding_bound > RELIABILITY * value.abs().max(1.0) {
        return Err(Error::SeriesUnreliable {
            rounding_bound,
            sum: value,
        });
    }
    Ok(SeriesResult {
        value,
        terms_used,
        tail_bound,
        rounding_bound,
    })
}

/// [`wright_series`] with 100 000 terms and tolerance `1e-17`.
pub fn wright_series_default(a: f64, b: f64, z: f64) -> Result<SeriesResult> {
    wright_series(a, b, z, 100_000, 1e-17)
}
