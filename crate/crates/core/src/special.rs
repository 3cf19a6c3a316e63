//! Special functions expressed through the Wright function.
//!
//! | function | identity |
//! |---|---|
//! | M-Wright `M_a(z)` | `W(-a, 1-a \| -z)` |
//! | `∫_{-∞}^x M_a(-u) du` | `W(-a, 1 \| x)` |
//! | Gaussian derivative `G_n(x) = (d/dx)^n e^{-x²/4}/√π` | `W(-1/2, (1-n)/2 \| x)` |
//! | `J_ν(x)` | `(x/2)^ν W(1, ν+1 \| -x²/4)` |
//! | `I_ν(x)` | `(x/2)^ν W(1, ν+1 \| x²/4)` |
//! | `erfc(x)` | `W(-1/2, 1 \| -2x)` |
//! | `₀F₂(-; 1/2, 1; x/4)` | `W(2, 1 \| x)` |

use crate::dequad::QuadratureConfig;
use crate::error::{Error, Result};
use crate::wright::wright;

type ParamMap = Box<dyn Fn(f64) -> (f64, f64, f64) + Send + Sync>;
type Prefactor = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function of one real variable of the form `prefactor(x) · W(a, b | z(x))`.
pub struct SpecialFn {
    pub name: String,
    /// Maps `x` to the Wright arguments `(a, b, z)`.
    pub wright_params: ParamMap,
    pub prefactor: Prefactor,
}

impl std::fmt::Debug for SpecialFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpecialFn").field("name", &self.name).finish()
    }
}

impl SpecialFn {
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_with(x, &QuadratureConfig::default())
    }

    pub fn eval_with(&self, x: f64, config: &QuadratureConfig) -> Result<f64> {
        let (a, b, z) = (self.wright_params)(x);
        let w = wright(a, b, z, config)?;
        if !w.converged {
            return Err(Error::NotConverged {
                value: w.value,
                error_estimate: w.error_estimate,
            });
        }
        Ok((self.prefactor)(x) * w.value)
    }

    fn unit(name: String, map: impl Fn(f64) -> (f64, f64, f64) + Send + Sync + 'static) -> Self {
        SpecialFn {
            name,
            wright_params: Box::new(map),
            prefactor: Box::new(|_| 1.0),
        }
    }

    pub fn mwright(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "M-Wright order must lie in (0, 1), got {a}"
            )));
        }
        Ok(Self::unit(format!("M_{a}"), move |z| (-a, 1.0 - a, -z)))
    }

    pub fn mwright_integral(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "M-Wright order must lie in (0, 1), got {a}"
            )));
        }
        Ok(Self::unit(format!("int M_{a}"), move |x| (-a, 1.0, x)))
    }

    pub fn gaussian_derivative(n: u32) -> Self {
        let b = (1.0 - n as f64) / 2.0;
        Self::unit(format!("G_{n}"), move |x| (-0.5, b, x))
    }

    /// `J_ν`. For non-integer `ν` and `x < 0` the prefactor is `(|x|/2)^ν`.
    pub fn bessel_j(nu: f64) -> Self {
        SpecialFn {
            name: format!("J_{nu}"),
            wright_params: Box::new(move |x| (1.0, nu + 1.0, -0.25 * x * x)),
            prefactor: Box::new(move |x| half_power(x, nu)),
        }
    }

    /// `I_ν`, with the same prefactor convention as [`SpecialFn::bessel_j`].
    pub fn bessel_i(nu: f64) -> Self {
        SpecialFn {
            name: format!("I_{nu}"),
            wright_params: Box::new(move |x| (1.0, nu + 1.0, 0.25 * x * x)),
            prefactor: Box::new(move |x| half_power(x, nu)),
        }
    }

    pub fn erfc() -> Self {
        Self::unit("erfc".into(), |x| (-0.5, 1.0, -2.0 * x))
    }

    pub fn hyp0f2() -> Self {
        Self::unit("0F2(-;1/2,1;x/4)".into(), |x| (2.0, 1.0, x))
    }
}

/// `(x/2)^ν`, using `|x|` when `ν` is not an integer.
fn half_power(x: f64, nu: f64) -> f64 {
    if nu == nu.round() && nu.abs() < i32::MAX as f64 {
        (0.5 * x).powi(nu as i32)
    } else {
        (0.5 * x.abs()).powf(nu)
    }
}

/// M-Wright function `M_a(z) = W(-a, 1-a | -z)`, `0 < a < 1`.
pub fn mwright(a: f64, z: f64) -> Result<f64> {
    SpecialFn::mwright(a)?.eval(z)
}

/// `∫_{-∞}^x M_a(-u) du = W(-a, 1 | x)`.
pub fn mwright_integral(a: f64, x: f64) -> Result<f64> {
    SpecialFn::mwright_integral(a)?.eval(x)
}

/// `(d/dx)^n e^{-x²/4}/√π`.
pub fn gaussian_derivative(n: u32, x: f64) -> Result<f64> {
    SpecialFn::gaussian_derivative(n).eval(x)
}

pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    SpecialFn::bessel_j(nu).eval(x)
}

pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    SpecialFn::bessel_i(nu).eval(x)
}

/// Complementary error function through `W(-1/2, 1 | -2x)`.
pub fn erfc_w(x: f64) -> Result<f64> {
    SpecialFn::erfc().eval(x)
}

/// `₀F₂(-; 1/2, 1; x/4)` through `W(2, 1 | x)`.
pub fn hyp0f2_w(x: f64) -> Result<f64> {
    SpecialFn::hyp0f2().eval(x)
}
