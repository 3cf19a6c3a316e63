//! Built-in identity suite run by `wrightfn selftest`.
//!
//! Every group takes the Wright evaluator as a parameter so that a deliberately
//! broken evaluator can be fed through the same harness.

use std::f64::consts::PI;

use crate::dequad::{integrate_compact, QuadratureConfig};
use crate::error::Result;
use crate::series::wright_series_default;
use crate::wright::{arc_integrand, wright, WrightValue};

/// Signature shared by [`wright`] and any substitute under test.
pub type Evaluator<'a> = &'a dyn Fn(f64, f64, f64) -> Result<WrightValue>;

pub const GRID_A: [f64; 8] = [-0.9, -0.5, -1.0 / 3.0, 0.0, 1.0 / 3.0, 0.5, 1.0, 2.0];
pub const GRID_B: [f64; 6] = [-1.5, -0.5, 0.5, 1.0, 1.5, 3.0];

/// The 25 equally spaced sample points of `[-3, 3]`.
pub fn grid_z() -> impl Iterator<Item = f64> {
    (0..25).map(|i| -3.0 + 0.25 * i as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// Largest residual seen, already normalized the way the group's tolerance expects.
    pub worst: f64,
    pub tolerance: f64,
    /// Minimum number of checks the group must actually perform.
    pub required: usize,
}

impl GroupReport {
    fn new(name: &'static str, tolerance: f64) -> Self {
        GroupReport {
            name,
            passed: 0,
            total: 0,
            worst: 0.0,
            tolerance,
            required: 1,
        }
    }

    fn record(&mut self, residual: f64) {
        self.total += 1;
        // NaN residuals count as failures and poison `worst`
        if residual <= self.tolerance {
            self.passed += 1;
        }
        if !(residual <= self.worst) {
            self.worst = residual;
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total && self.total >= self.required
    }
}

/// Value of a converged evaluation; errors and non-convergence become NaN so the
/// check that uses it fails.
fn value(eval: Evaluator, a: f64, b: f64, z: f64) -> f64 {
    match eval(a, b, z) {
        Ok(w) if w.converged => w.value,
        _ => f64::NAN,
    }
}

/// wright against the series reference wherever the reference certifies itself.
pub fn oracle_grid(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("oracle grid", 1e-8);
    g.required = 1000;
    for a in GRID_A {
        for b in GRID_B {
            for z in grid_z() {
                if let Ok(s) = wright_series_default(a, b, z) {
                    let w = value(eval, a, b, z);
                    g.record((w - s.value).abs() / s.value.abs().max(1.0));
                }
            }
        }
    }
    g
}

fn reduced_grid() -> impl Iterator<Item = (f64, f64, f64)> {
    GRID_A
        .into_iter()
        .filter(|&a| a > -0.5)
        .flat_map(|a| GRID_B.into_iter().flat_map(move |b| grid_z().map(move |z| (a, b, z))))
}

/// `d/dz W(a,b|z) = W(a,a+b|z)` by central differences with step 1e-5.
pub fn derivative(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("derivative", 1e-5);
    let h = 1e-5;
    for (a, b, z) in reduced_grid() {
        let fd = (value(eval, a, b, z + h) - value(eval, a, b, z - h)) / (2.0 * h);
        let want = value(eval, a, a + b, z);
        g.record((fd - want).abs() / want.abs().max(1.0));
    }
    g
}

/// `W(a,b-1|z) = (b-1) W(a,b|z) + a z W(a,a+b|z)`.
pub fn recurrence(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("recurrence", 1e-8);
    for (a, b, z) in reduced_grid() {
        let lhs = value(eval, a, b - 1.0, z);
        let t1 = (b - 1.0) * value(eval, a, b, z);
        let t2 = a * z * value(eval, a, a + b, z);
        let scale = 1f64.max(lhs.abs()).max(t1.abs()).max(t2.abs());
        g.record((lhs - t1 - t2).abs() / scale);
    }
    g
}

/// The three branches meeting at `b = 1` agree for `a = -1/2`, `z = 1`.
pub fn branch_continuity(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("branch continuity", 1e-6);
    let v: Vec<f64> = [1.0 - 1e-9, 1.0, 1.0 + 1e-9]
        .iter()
        .map(|&b| value(eval, -0.5, b, 1.0))
        .collect();
    g.record((v[0] - v[1]).abs());
    g.record((v[1] - v[2]).abs());
    g.record((v[0] - v[2]).abs());
    g
}

/// Negative integer `a` gives polynomials.
pub fn polynomial(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("polynomial exactness", 4.0 * f64::EPSILON);
    for z in [-10.0, -1.0, 0.0, 1.0, 10.0] {
        let want: f64 = 1.0 + z;
        g.record((value(eval, -1.0, 2.0, z) - want).abs() / want.abs().max(1.0));
    }
    for n in 1..=3 {
        for z in [-10.0, 0.5, 10.0] {
            g.record((value(eval, -(n as f64), 1.0, z) - 1.0).abs());
        }
    }
    g
}

/// The arc integral over `[-π, π]` equals twice the integral over `[0, π]`.
pub fn arc_evenness() -> GroupReport {
    let cfg = QuadratureConfig::default();
    let mut g = GroupReport::new("arc evenness", 1e-10);
    for (a, b, z, eps) in [
        (0.5, 1.0, 2.0, 1.0),
        (1.0, 1.5, -3.0, 1.5),
        (-0.5, 1.5, 1.0, 1.0),
        (2.0, -0.5, 2.5, 1.2),
    ] {
        let f = |phi: f64| arc_integrand(a, b, z, eps, phi).unwrap_or(f64::NAN);
        let full = integrate_compact(f, -PI, PI, &cfg).map(|r| r.value);
        let half = integrate_compact(f, 0.0, PI, &cfg).map(|r| r.value);
        match (full, half) {
            (Ok(full), Ok(half)) => g.record((full - 2.0 * half).abs() / full.abs().max(1.0)),
            _ => g.record(f64::NAN),
        }
    }
    g
}

/// Special-function identities with elementary closed forms.
pub fn special_identities(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("special identities", 1e-8);
    // erfc reflection
    for x in [0.5, 1.0, 2.0] {
        g.record((value(eval, -0.5, 1.0, -2.0 * x) + value(eval, -0.5, 1.0, 2.0 * x) - 2.0).abs());
    }
    // J₀ at its first zero
    let w1: f64 = 2.404825557695773;
    g.record(value(eval, 1.0, 1.0, -w1 * w1 / 4.0).abs());
    // sin(2√x)/√(πx)
    for x in [1.0f64, 2.5, PI * PI, 15.0] {
        let want = (2.0 * x.sqrt()).sin() / (PI * x).sqrt();
        g.record((value(eval, 1.0, 1.5, -x) - want).abs());
    }
    // Gaussian: M_{1/2}(z) = e^{-z²/4}/√π
    for z in [0.0f64, 1.0, 2.5] {
        let want = (-z * z / 4.0).exp() / PI.sqrt();
        g.record((value(eval, -0.5, 0.5, -z) - want).abs());
    }
    g
}

/// `M' + (z/2) M = 0` for the M-Wright function of order 1/2, by central differences.
pub fn mwright_ode(eval: Evaluator) -> GroupReport {
    let mut g = GroupReport::new("M-Wright ODE", 1e-5);
    let h = 1e-5;
    let m = |z: f64| value(eval, -0.5, 0.5, -z);
    for i in 0..=14 {
        let z = 0.2 + 0.2 * i as f64;
        let d = (m(z + h) - m(z - h)) / (2.0 * h);
        g.record((d + 0.5 * z * m(z)).abs());
    }
    g
}

/// Runs every group with the given evaluator.
pub fn run_with(eval: Evaluator) -> Vec<GroupReport> {
    vec![
        oracle_grid(eval),
        derivative(eval),
        recurrence(eval),
        branch_continuity(eval),
        polynomial(eval),
        arc_evenness(),
        special_identities(eval),
        mwright_ode(eval),
    ]
}

/// Runs every group against [`wright`] with the default configuration.
pub fn run() -> Vec<GroupReport> {
    let cfg = QuadratureConfig::default();
    run_with(&|a, b, z| wright(a, b, z, &cfg))
}
