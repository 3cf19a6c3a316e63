//! Wright function `W(a,b|z)` for real arguments.
//!
//! The Hankel contour of the canonical integral representation
//!
//! ```text
//! W(a,b|z) = 1/(2πi) ∫_Ha exp(ξ + z ξ^{-a}) ξ^{-b} dξ
//! ```
//!
//! is deformed into a circle of radius `ε` around the origin and the two banks of
//! the cut `(-∞, -ε]`. The banks give the radial integral `I_r(ε)` and the circle
//! the arc integral `P(ε)`; both are real integrals evaluated by double-exponential
//! quadrature. Which combination is used depends on the signs of `a` and `b - 1`,
//! see [`Branch`].

use std::f64::consts::{FRAC_1_PI, PI};
use std::fmt;

use crate::dequad::{integrate_compact, integrate_semiinfinite, QuadratureConfig, QuadratureResult};
use crate::error::{Error, Result};
use crate::gamma::{cos_pi, reciprocal_gamma, sin_pi};

/// Parameters closer than this to 0, 1 or a negative integer are snapped onto it.
const SNAP: f64 = 4.0 * f64::EPSILON;

/// Largest exponent whose `exp` is finite.
const LN_MAX: f64 = 709.782712893384;

/// The pair `(a, b)` of Wright parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    pub a: f64,
    pub b: f64,
}

impl WrightParams {
    /// Checks admissibility: `a > -1`, or `a` a negative integer with `b` a positive integer.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        classify(a, b, 0.0)?;
        Ok(WrightParams { a, b })
    }

    pub fn branch(&self) -> Branch {
        classify(self.a, self.b, 0.0).expect("validated on construction")
    }
}

/// Evaluation route for a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `a = -n`, `b = m` with `n, m` positive integers: the contour closes and the
    /// function is a polynomial in `z`.
    ResiduePolynomial { n: u32, m: u32 },
    /// `-1 < a < 0`, `b < 1`: `I_r(0)`.
    NegABelow1,
    /// `-1 < a < 0`, `b = 1`: `I_r(0) + 1`.
    NegAEqual1,
    /// `-1 < a < 0`, `b > 1`: `I_r(ε) + P(ε)`.
    NegAAbove1,
    /// `a = 0`: `e^z / Γ(b)`.
    ZeroA,
    /// `a > 0`: `I_u(ε^a) + P(ε)`.
    PosA,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::ResiduePolynomial { n, m } => write!(f, "ResiduePolynomial({n},{m})"),
            Branch::NegABelow1 => f.write_str("NegA_bBelow1"),
            Branch::NegAEqual1 => f.write_str("NegA_bEqual1"),
            Branch::NegAAbove1 => f.write_str("NegA_bAbove1"),
            Branch::ZeroA => f.write_str("ZeroA"),
            Branch::PosA => f.write_str("PosA"),
        }
    }
}

/// Result of one Wright function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightValue {
    pub value: f64,
    /// Sum of the error estimates of the component integrals.
    pub error_estimate: f64,
    pub branch: Branch,
    pub n_evals: usize,
    /// `false` when any component quadrature exhausted its refinement levels.
    pub converged: bool,
}

fn snap_to(x: f64, target: f64) -> Option<f64> {
    ((x - target).abs() <= SNAP).then_some(target)
}

/// Selects the evaluation route for `(a, b)`. `z` does not influence the choice.
pub fn classify(a: f64, b: f64, _z: f64) -> Result<Branch> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain {
            a,
            b,
            reason: "parameters must be finite",
        });
    }
    let a_int = a.round();
    if a_int <= -1.0 && snap_to(a, a_int).is_some() {
        let b_int = b.round();
        return match snap_to(b, b_int) {
            Some(m) if m >= 1.0 && m <= u32::MAX as f64 => Ok(Branch::ResiduePolynomial {
                n: (-a_int) as u32,
                m: m as u32,
            }),
            _ => Err(Error::Domain {
                a,
                b,
                reason: "b must be a positive integer for negative integer a",
            }),
        };
    }
    if a <= -1.0 {
        return Err(Error::Domain {
            a,
            b,
            reason: "a must exceed -1 unless it is a negative integer",
        });
    }
    if snap_to(a, 0.0).is_some() {
        return Ok(Branch::ZeroA);
    }
    if a > 0.0 {
        return Ok(Branch::PosA);
    }
    if snap_to(b, 1.0).is_some() {
        Ok(Branch::NegAEqual1)
    } else if b < 1.0 {
        Ok(Branch::NegABelow1)
    } else {
        Ok(Branch::NegAAbove1)
    }
}

/// Modulus `|a z|^{1/(a+1)}` of the point where the phase of `ξ + z ξ^{-a}` is stationary.
pub fn stationary_point(a: f64, z: f64) -> Result<f64> {
    if snap_to(a, -1.0).is_some() {
        return Err(Error::InvalidArgument(
            "stationary point is undefined for a = -1".into(),
        ));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(0.0);
    }
    Ok((a * z).abs().powf(1.0 / (a + 1.0)))
}

/// Radius of the arc around the origin for the given branch.
///
/// For `a > 0` this is the stationary radius floored at 1. For `a < 0, b > 1` the
/// stationary point lies on the principal sheet only when `a z > 0`; otherwise the
/// kernel grows monotonically along the positive axis and the floor 1 is used.
/// Branches that do not need an arc report 0.
pub fn epsilon(branch: Branch, a: f64, z: f64) -> f64 {
    match branch {
        Branch::PosA => stationary_point(a, z).unwrap_or(0.0).max(1.0),
        Branch::NegAAbove1 if a * z > 0.0 => stationary_point(a, z).unwrap_or(0.0).max(1.0),
        Branch::NegAAbove1 => 1.0,
        _ => 0.0,
    }
}

/// Logarithmic derivative `ξ d/dξ log ker(ξ) = -a z ξ^{-a} + ξ - b` of the kernel.
pub fn holder_exponent(a: f64, b: f64, z: f64, xi: f64) -> Result<f64> {
    if xi == 0.0 || !xi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "xi must be finite and nonzero, got {xi}"
        )));
    }
    let p = xi.powf(-a);
    if p.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "xi^(-a) is not real for xi = {xi}, a = {a}"
        )));
    }
    Ok(-a * z * p + xi - b)
}

fn checked_exp(exponent: f64) -> Result<f64> {
    if exponent > LN_MAX {
        Err(Error::Overflow { exponent })
    } else {
        Ok(exponent.exp())
    }
}

/// `sin(y + π b)` with `sin(π b)` and `cos(π b)` exact at integer and half-integer `b`.
fn sin_shifted(y: f64, b: f64) -> f64 {
    y.sin() * cos_pi(b) + y.cos() * sin_pi(b)
}

/// Integrand of `I_r`: `(1/π) r^{-b} exp(cos(πa) z r^{-a} - r) sin(sin(πa) z r^{-a} + πb)`.
pub fn radial_integrand(a: f64, b: f64, z: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
    }
    let q = z * r.powf(-a);
    let magnitude = checked_exp(cos_pi(a) * q - r - b * r.ln())?;
    Ok(FRAC_1_PI * magnitude * sin_shifted(sin_pi(a) * q, b))
}

/// Integrand of `P(ε)`:
/// `(ε^{1-b}/2π) exp(ε cos φ + cos(aφ) z/ε^a) cos(ε sin φ - z sin(aφ)/ε^a + (1-b)φ)`.
pub fn arc_integrand(a: f64, b: f64, z: f64, eps: f64, phi: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let q = z * eps.powf(-a);
    let (sin_phi, cos_phi) = phi.sin_cos();
    let (sin_aphi, cos_aphi) = (a * phi).sin_cos();
    let magnitude = checked_exp((1.0 - b) * eps.ln() + eps * cos_phi + cos_aphi * q)?;
    let phase = eps * sin_phi - q * sin_aphi + (1.0 - b) * phi;
    Ok(0.5 * FRAC_1_PI * magnitude * phase.cos())
}

/// Integrand of `I_u`, the radial integral after `u = r^a` (requires `a > 0`):
/// `(1/(πa)) u^{(1-b)/a - 1} sin(sin(πa) z/u + πb) exp(cos(πa) z/u - u^{1/a})`.
pub fn substituted_integrand(a: f64, b: f64, z: f64, u: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a must be positive, got {a}")));
    }
    if !(u > 0.0) {
        return Err(Error::InvalidArgument(format!("u must be positive, got {u}")));
    }
    let q = z / u;
    let magnitude = checked_exp(((1.0 - b) / a - 1.0) * u.ln() + cos_pi(a) * q - u.powf(1.0 / a))?;
    Ok(FRAC_1_PI / a * magnitude * sin_shifted(sin_pi(a) * q, b))
}

/// `I_r(0) - 1/Γ(b)` integrand for `a < 0`, `b ≤ 1`.
///
/// Near the origin the radial integrand behaves like `sin(πb)/π · r^{-b}`, which is
/// not resolvable by quadrature once `b` approaches 1. Subtracting
/// `sin(πb)/π · r^{-b} e^{-r}`, whose integral is `1/Γ(b)`, leaves an integrand of
/// order `r^{|a|-b}`.
fn regularized_radial_integrand(a: f64, b: f64, z: f64, r: f64) -> Result<f64> {
    let q = z * r.powf(-a);
    let x = cos_pi(a) * q;
    let y = sin_pi(a) * q;
    let (sb, cb) = (sin_pi(b), cos_pi(b));
    let base = -r - b * r.ln();
    let bracket = if x.abs() < 1.0 {
        let s = (0.5 * y).sin();
        checked_exp(base + x)? * y.sin() * cb
            + sb * checked_exp(base)? * (x.exp_m1() * y.cos() - 2.0 * s * s)
    } else {
        checked_exp(base + x)? * (y.sin() * cb + y.cos() * sb) - sb * checked_exp(base)?
    };
    Ok(FRAC_1_PI * bracket)
}

fn range_error(what: &'static str, a: f64, b: f64, z: f64) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::NonFiniteIntegrand { x, .. } => Error::Range { what, a, b, z, at: x },
        other => other,
    }
}

/// `I_r(ε) = ∫_ε^∞ radial_integrand dr`.
pub fn radial_integral(a: f64, b: f64, z: f64, eps: f64, config: &QuadratureConfig) -> Result<QuadratureResult> {
    integrate_semiinfinite(
        |r| radial_integrand(a, b, z, r).unwrap_or(f64::INFINITY),
        eps,
        config,
    )
    .map_err(range_error("radial integral", a, b, z))
}

/// `I_u(λ) = ∫_λ^∞ substituted_integrand du`; equals `I_r(λ^{1/a})`.
pub fn substituted_integral(
    a: f64,
    b: f64,
    z: f64,
    lower: f64,
    config: &QuadratureConfig,
) -> Result<QuadratureResult> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a must be positive, got {a}")));
    }
    integrate_semiinfinite(
        |u| substituted_integrand(a, b, z, u).unwrap_or(f64::INFINITY),
        lower,
        config,
    )
    .map_err(range_error("substituted radial integral", a, b, z))
}

/// `P(ε) = ∫_{-π}^{π} arc_integrand dφ`, evaluated as twice the integral over
/// `[0, π]` since the integrand is even in `φ`.
pub fn arc_integral(a: f64, b: f64, z: f64, eps: f64, config: &QuadratureConfig) -> Result<QuadratureResult> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let half = integrate_compact(
        |phi| arc_integrand(a, b, z, eps, phi).unwrap_or(f64::INFINITY),
        0.0,
        PI,
        config,
    )
    .map_err(range_error("arc integral", a, b, z))?;
    Ok(QuadratureResult {
        value: 2.0 * half.value,
        error_estimate: 2.0 * half.error_estimate,
        ..half
    })
}

/// Coefficients, in ascending powers of `z`, of the polynomial `W(-n, m | z)`.
///
/// The residue `(1/Γ(m)) (d/dξ)^{m-1} e^{ξ + z ξ^n}` at the origin is `(m-1)!/Γ(m)`
/// times the `ξ^{m-1}` coefficient of the product of the series of `e^ξ` and
/// `e^{z ξ^n}`. The returned list has length `m`.
pub fn residue_polynomial(n: u32, m: u32) -> Result<Vec<f64>> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidArgument(format!(
            "residue polynomial needs n >= 1 and m >= 1, got n = {n}, m = {m}"
        )));
    }
    let order = (m - 1) as usize;
    // Taylor coefficients 1/i! of e^ξ up to ξ^{m-1}
    let mut inv_fact = vec![1.0f64; order + 1];
    for i in 1..=order {
        inv_fact[i] = inv_fact[i - 1] / i as f64;
    }
    let mut coeffs = vec![0.0; m as usize];
    // e^{z ξ^n} contributes z^j/j! at ξ^{nj}
    let mut j = 0usize;
    while j * n as usize <= order {
        coeffs[j] = inv_fact[j] * inv_fact[order - j * n as usize];
        j += 1;
    }
    Ok(coeffs)
}

fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Evaluates `W(a, b | z)`.
pub fn wright(a: f64, b: f64, z: f64, config: &QuadratureConfig) -> Result<WrightValue> {
    config.validate()?;
    let branch = classify(a, b, z)?;
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("z must be finite, got {z}")));
    }
    let exact = |value: f64| WrightValue {
        value,
        error_estimate: 0.0,
        branch,
        n_evals: 0,
        converged: true,
    };
    let combine = |value: f64, parts: &[&QuadratureResult]| WrightValue {
        value,
        error_estimate: parts.iter().map(|p| p.error_estimate).sum(),
        branch,
        n_evals: parts.iter().map(|p| p.n_evals).sum(),
        converged: parts.iter().all(|p| p.converged),
    };

    match branch {
        Branch::ResiduePolynomial { n, m } => Ok(exact(horner(&residue_polynomial(n, m)?, z))),
        _ if z == 0.0 => Ok(exact(reciprocal_gamma(b))),
        Branch::ZeroA => {
            let value = checked_exp(z)? * reciprocal_gamma(b);
            Ok(exact(value))
        }
        Branch::NegABelow1 => {
            let rest = integrate_semiinfinite(
                |r| regularized_radial_integrand(a, b, z, r).unwrap_or(f64::INFINITY),
                0.0,
                config,
            )
            .map_err(range_error("radial integral", a, b, z))?;
            Ok(combine(reciprocal_gamma(b) + rest.value, &[&rest]))
        }
        Branch::NegAEqual1 => {
            let radial = radial_integral(a, 1.0, z, 0.0, config)?;
            Ok(combine(radial.value + 1.0, &[&radial]))
        }
        Branch::NegAAbove1 => {
            let eps = epsilon(branch, a, z);
            let radial = radial_integral(a, b, z, eps, config)?;
            let arc = arc_integral(a, b, z, eps, config)?;
            Ok(combine(radial.value + arc.value, &[&radial, &arc]))
        }
        Branch::PosA => {
            let eps = epsilon(branch, a, z);
            let radial = substituted_integral(a, b, z, eps.powf(a), config)?;
            let arc = arc_integral(a, b, z, eps, config)?;
            Ok(combine(radial.value + arc.value, &[&radial, &arc]))
        }
    }
}
