//! Double-exponential quadrature.
//!
//! Two transforms are provided:
//!
//! * `SemiInfinite` (exp-sinh): `x = exp(π/2 · sinh t)` maps the real line onto `(0, ∞)`;
//! * `Compact` (tanh-sinh): `x = tanh(π/2 · sinh t)` maps the real line onto `(-1, 1)`.
//!
//! After the change of variables the integral is approximated by the trapezoidal
//! sum `h · Σ w_k f(x_k)` with `x_k = φ(k h)` and `w_k = φ'(k h)`. Each refinement
//! level halves `h`; only the odd-indexed nodes of a level are new, so every
//! function value of the coarser levels is reused.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Consecutive negligible tail terms required before a side of the sum is cut.
const TAIL_RUN: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// `x = exp(π/2 · sinh t)`, onto `(0, ∞)`.
    SemiInfinite,
    /// `x = tanh(π/2 · sinh t)`, onto `(-1, 1)`.
    Compact,
}

impl TransformKind {
    /// Abscissa and weight `(φ(t), φ'(t))` of the transform.
    pub fn node(self, t: f64) -> (f64, f64) {
        let s = FRAC_PI_2 * t.sinh();
        match self {
            TransformKind::SemiInfinite => {
                let x = s.exp();
                (x, FRAC_PI_2 * t.cosh() * x)
            }
            TransformKind::Compact => {
                let c = s.cosh();
                (s.tanh(), FRAC_PI_2 * t.cosh() / (c * c))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Step size `h` at level 0.
    pub base_step: f64,
    /// Number of step halvings allowed.
    pub max_level: u32,
    /// Relative tolerance on the difference of consecutive levels.
    pub target_rel_tol: f64,
    /// A tail term is negligible when `|h w_k f(x_k)|` falls below this
    /// fraction of the running `∫|f|` estimate.
    pub trunc_threshold: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            base_step: 1.0,
            max_level: 10,
            target_rel_tol: 1e-12,
            trunc_threshold: 1e-17,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.target_rel_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.base_step > 0.0 && self.base_step.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "base_step must be positive, got {}",
                self.base_step
            )));
        }
        if self.max_level < 1 {
            return Err(Error::InvalidConfig("max_level must be at least 1".into()));
        }
        if !(self.target_rel_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "target_rel_tol must be positive, got {}",
                self.target_rel_tol
            )));
        }
        if !(self.trunc_threshold > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "trunc_threshold must be positive, got {}",
                self.trunc_threshold
            )));
        }
        Ok(())
    }

    fn step(&self, level: u32) -> f64 {
        self.base_step / f64::powi(2.0, level as i32)
    }
}

/// Abscissas and weights of one refinement level, ordered by increasing `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeTable {
    pub level: u32,
    pub kind: TransformKind,
    pub step: f64,
    pub abscissas: Vec<f64>,
    pub weights: Vec<f64>,
}

impl NodeTable {
    pub fn len(&self) -> usize {
        self.abscissas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissas.is_empty()
    }
}

/// Builds the full node table of `level` (every `k`, not only the new odd ones).
///
/// Nodes are generated outwards from `t = 0` until the abscissa saturates the
/// interval endpoint or the weight leaves the normal floating-point range.
pub fn generate_nodes(
    kind: TransformKind,
    level: u32,
    config: &QuadratureConfig,
) -> Result<NodeTable> {
    config.validate()?;
    if level > config.max_level {
        return Err(Error::LevelOutOfRange {
            level,
            max_level: config.max_level,
        });
    }
    let h = config.step(level);
    let usable = |x: f64, w: f64| -> bool {
        let interior = match kind {
            TransformKind::SemiInfinite => x >= f64::MIN_POSITIVE && x.is_finite(),
            TransformKind::Compact => x.abs() < 1.0,
        };
        interior && w >= f64::MIN_POSITIVE && w.is_finite()
    };

    let mut negative = Vec::new();
    let mut positive = Vec::new();
    for (sign, side) in [(-1.0, &mut negative), (1.0, &mut positive)] {
        let mut k = 1u64;
        let mut last = kind.node(0.0).0;
        loop {
            let (x, w) = kind.node(sign * k as f64 * h);
            // a repeated abscissa means the transform has saturated
            if !usable(x, w) || x == last {
                break;
            }
            last = x;
            side.push((x, w));
            k += 1;
        }
    }
    let (x0, w0) = kind.node(0.0);
    let nodes: Vec<(f64, f64)> = negative
        .into_iter()
        .rev()
        .chain(std::iter::once((x0, w0)))
        .chain(positive)
        .collect();
    Ok(NodeTable {
        level,
        kind,
        step: h,
        abscissas: nodes.iter().map(|n| n.0).collect(),
        weights: nodes.iter().map(|n| n.1).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute difference between the last two level sums.
    pub error_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
    /// Refinement level at which the result was taken.
    pub level: u32,
}

/// Trapezoidal sum of one refinement level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSum {
    pub level: u32,
    pub value: f64,
    /// Cumulative number of integrand evaluations up to this level.
    pub n_evals: usize,
}

/// Maps a transform parameter `t` to the integrand argument and the Jacobian
/// weight, or `None` once the argument has collapsed onto an endpoint.
trait Sampler {
    fn sample(&self, t: f64) -> Option<(f64, f64)>;
}

struct ShiftedHalfLine {
    lower: f64,
}

impl Sampler for ShiftedHalfLine {
    fn sample(&self, t: f64) -> Option<(f64, f64)> {
        let (x, w) = TransformKind::SemiInfinite.node(t);
        let arg = self.lower + x;
        if x < f64::MIN_POSITIVE || arg == self.lower || !arg.is_finite() || !w.is_finite() {
            return None;
        }
        Some((arg, w))
    }
}

struct Interval {
    lower: f64,
    upper: f64,
    half: f64,
}

impl Sampler for Interval {
    fn sample(&self, t: f64) -> Option<(f64, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let c = s.cosh();
        let w = FRAC_PI_2 * t.cosh() / (c * c) * self.half;
        // distance to the nearer endpoint in [-1, 1] units, without cancellation
        let gap = 2.0 / ((2.0 * s.abs()).exp() + 1.0);
        let arg = if s >= 0.0 {
            self.upper - self.half * gap
        } else {
            self.lower + self.half * gap
        };
        if arg <= self.lower || arg >= self.upper || !(w >= f64::MIN_POSITIVE) {
            return None;
        }
        Some((arg, w))
    }
}

/// Runs the nested trapezoidal refinement. With `stop_early` the loop returns at
/// the first level meeting the tolerance; otherwise every level up to
/// `max_level` is computed.
fn refine<S, F>(
    sampler: &S,
    mut f: F,
    config: &QuadratureConfig,
    stop_early: bool,
) -> Result<(QuadratureResult, Vec<LevelSum>)>
where
    S: Sampler,
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    let mut n_evals = 0usize;
    let mut eval = |x: f64, n_evals: &mut usize| -> Result<f64> {
        *n_evals += 1;
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x, value: y })
        }
    };

    let mut history: Vec<LevelSum> = Vec::new();
    let mut prev_value = 0.0;
    let mut prev_l1 = 0.0;
    // farthest |t| with a non-negligible term on the positive and negative side
    let mut reach = [0.0f64; 2];

    for level in 0..=config.max_level {
        let h = config.step(level);
        let mut sum = 0.0;
        let mut l1 = 0.0;
        // level 0 visits every k, finer levels only the odd k
        let (first, stride) = if level == 0 { (1u64, 1u64) } else { (1, 2) };

        if level == 0 {
            if let Some((x, w)) = sampler.sample(0.0) {
                let c = w * eval(x, &mut n_evals)?;
                sum += c;
                l1 += c.abs();
            }
        }
        for (side, sign) in [1.0, -1.0].into_iter().enumerate() {
            let mut k = first;
            let mut quiet = 0u32;
            while let Some((x, w)) = sampler.sample(sign * k as f64 * h) {
                let c = w * eval(x, &mut n_evals)?;
                sum += c;
                l1 += c.abs();
                let t = k as f64 * h;
                let running_l1 = 0.5 * prev_l1 + h * l1;
                if h * c.abs() >= config.trunc_threshold * running_l1 {
                    quiet = 0;
                    reach[side] = reach[side].max(t);
                } else if t > reach[side] {
                    // nodes short of the farthest significant one are interior
                    // refinements, not tail, even where the integrand vanishes
                    quiet += 1;
                    if quiet >= TAIL_RUN {
                        break;
                    }
                }
                k += stride;
            }
        }

        let value = if level == 0 { h * sum } else { 0.5 * prev_value + h * sum };
        let l1_total = if level == 0 { h * l1 } else { 0.5 * prev_l1 + h * l1 };
        history.push(LevelSum {
            level,
            value,
            n_evals,
        });

        if level >= 1 {
            let error_estimate = (value - prev_value).abs();
            let converged = error_estimate <= config.target_rel_tol * value.abs().max(1.0);
            if (converged && stop_early) || level == config.max_level {
                let result = QuadratureResult {
                    value,
                    error_estimate,
                    n_evals,
                    converged,
                    level,
                };
                return Ok((result, history));
            }
        }
        prev_value = value;
        prev_l1 = l1_total;
    }
    unreachable!("max_level >= 1 guarantees a return inside the loop")
}

/// `∫_lower^∞ f(x) dx`, computed as `∫_0^∞ f(lower + x) dx` under the exp-sinh transform.
pub fn integrate_semiinfinite<F>(f: F, lower: f64, config: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    check_lower(lower)?;
    refine(&ShiftedHalfLine { lower }, f, config, true).map(|(r, _)| r)
}

/// `∫_lower^upper f(x) dx` under the tanh-sinh transform. The endpoints are never sampled.
pub fn integrate_compact<F>(
    f: F,
    lower: f64,
    upper: f64,
    config: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    let interval = interval(lower, upper)?;
    refine(&interval, f, config, true).map(|(r, _)| r)
}

/// Every level sum of the semi-infinite rule from level 0 up to `max_level`.
pub fn semiinfinite_level_sums<F>(f: F, lower: f64, config: &QuadratureConfig) -> Result<Vec<LevelSum>>
where
    F: FnMut(f64) -> f64,
{
    check_lower(lower)?;
    refine(&ShiftedHalfLine { lower }, f, config, false).map(|(_, h)| h)
}

/// Every level sum of the compact rule from level 0 up to `max_level`.
pub fn compact_level_sums<F>(
    f: F,
    lower: f64,
    upper: f64,
    config: &QuadratureConfig,
) -> Result<Vec<LevelSum>>
where
    F: FnMut(f64) -> f64,
{
    let interval = interval(lower, upper)?;
    refine(&interval, f, config, false).map(|(_, h)| h)
}

fn check_lower(lower: f64) -> Result<()> {
    if !lower.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lower bound must be finite, got {lower}"
        )));
    }
    Ok(())
}

fn interval(lower: f64, upper: f64) -> Result<Interval> {
    if !(upper > lower) || !lower.is_finite() || !upper.is_finite() {
        return Err(Error::InvalidInterval { lower, upper });
    }
    Ok(Interval {
        lower,
        upper,
        half: 0.5 * (upper - lower),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn central_nodes() {
        let (x, w) = TransformKind::SemiInfinite.node(0.0);
        assert_eq!(x, 1.0);
        assert_eq!(w, FRAC_PI_2);
        let (x, w) = TransformKind::Compact.node(0.0);
        assert_eq!(x, 0.0);
        assert_eq!(w, FRAC_PI_2);
    }

    #[test]
    fn compact_table_is_symmetric() {
        for level in 0..4 {
            let t = generate_nodes(TransformKind::Compact, level, &cfg()).unwrap();
            let n = t.len();
            assert_eq!(n % 2, 1);
            for i in 0..n {
                assert_eq!(t.abscissas[i], -t.abscissas[n - 1 - i]);
                assert_eq!(t.weights[i], t.weights[n - 1 - i]);
            }
        }
    }

    #[test]
    fn tables_respect_domains() {
        for level in [0, 3, 6] {
            let c = generate_nodes(TransformKind::Compact, level, &cfg()).unwrap();
            assert!(c.abscissas.iter().all(|x| x.abs() < 1.0));
            let s = generate_nodes(TransformKind::SemiInfinite, level, &cfg()).unwrap();
            assert!(s.abscissas.iter().all(|&x| x > 0.0 && x.is_finite()));
            for t in [&c, &s] {
                assert_eq!(t.abscissas.len(), t.weights.len());
                assert!(t.weights.iter().all(|&w| w > 0.0));
                assert!(t.abscissas.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn levels_are_nested() {
        for kind in [TransformKind::SemiInfinite, TransformKind::Compact] {
            for level in 0..5 {
                let coarse = generate_nodes(kind, level, &cfg()).unwrap();
                let fine = generate_nodes(kind, level + 1, &cfg()).unwrap();
                for x in &coarse.abscissas {
                    assert!(fine.abscissas.contains(x), "{kind:?} level {level}: {x} missing");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let c = cfg();
        assert!(matches!(
            generate_nodes(TransformKind::Compact, 11, &c),
            Err(Error::LevelOutOfRange { .. })
        ));
        let bad = QuadratureConfig {
            base_step: 0.0,
            ..c
        };
        assert!(matches!(
            generate_nodes(TransformKind::Compact, 0, &bad),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            integrate_compact(|x| x, 1.0, 1.0, &c),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate_compact(|x| x, 2.0, 1.0, &c),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn exponential_on_half_line() {
        let r = integrate_semiinfinite(|x| (-x).exp(), 0.0, &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-12, "{r:?}");

        let r = integrate_semiinfinite(|x| (-x).exp(), 1.0, &cfg()).unwrap();
        assert!((r.value - 0.367879441171442).abs() < 1e-12, "{r:?}");
        assert!((r.value - 1.0 / E).abs() < 1e-12);

        let r = integrate_semiinfinite(|x| x * (-x).exp(), 0.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{r:?}");
    }

    /// All the mass sits just above the lower bound and the integrand is exactly
    /// zero in between, so interior refinement nodes must not trip the tail rule.
    #[test]
    fn mass_next_to_lower_bound() {
        let f = |u: f64| {
            let e = (-u.powi(20)).exp();
            if e == 0.0 { 0.0 } else { 20.0 * u.powi(19) * e }
        };
        let r = integrate_semiinfinite(f, 1.0, &cfg()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - 1.0 / E).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn algebraic_singularity_at_origin() {
        // ∫_0^∞ x^{-1/2} e^{-x} dx = Γ(1/2)
        let r = integrate_semiinfinite(|x| (-x).exp() / x.sqrt(), 0.0, &cfg()).unwrap();
        assert!(r.converged);
        assert!((r.value - PI.sqrt()).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn full_period_integrals() {
        let r = integrate_compact(|_| 1.0, -PI, PI, &cfg()).unwrap();
        assert!((r.value - 2.0 * PI).abs() < 1e-12 * 2.0 * PI);
        let r = integrate_compact(f64::cos, -PI, PI, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn inverse_sqrt_endpoint_singularity() {
        // Midpoint-rule refinement as an independent check of the analytic value π:
        // the error of the midpoint rule for this integrand decays like N^{-1/2}.
        let midpoint = |n: usize| -> f64 {
            let h = 2.0 / n as f64;
            (0..n)
                .map(|i| {
                    let x = -1.0 + (i as f64 + 0.5) * h;
                    h / (1.0 - x * x).sqrt()
                })
                .sum()
        };
        let coarse = (midpoint(10_000) - PI).abs();
        let fine = (midpoint(1_000_000) - PI).abs();
        assert!(fine < coarse / 5.0 && fine < 5e-3);

        let r = integrate_compact(|x| 1.0 / (1.0 - x * x).sqrt(), -1.0, 1.0, &cfg()).unwrap();
        // nodes cannot approach ±1 closer than one ulp, which bounds the attainable accuracy
        assert!((r.value - PI).abs() < 1e-7, "{r:?}");
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let err = integrate_semiinfinite(|x| if x > 2.0 { f64::NAN } else { 1.0 }, 0.0, &cfg());
        assert!(matches!(err, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn exhausted_levels_are_reported() {
        let c = QuadratureConfig {
            max_level: 1,
            target_rel_tol: 1e-15,
            ..cfg()
        };
        let r = integrate_semiinfinite(|x| (-x * x).exp(), 0.0, &c).unwrap();
        assert!(!r.converged);
        assert_eq!(r.level, 1);
        assert!(r.error_estimate > 0.0);
    }

    #[test]
    fn evaluations_are_reused() {
        let levels = semiinfinite_level_sums(|x| (-x).exp(), 0.0, &cfg()).unwrap();
        assert_eq!(levels.len(), 11);
        // each level adds at most as many points as all coarser levels together, plus tail growth
        for p in levels.windows(2) {
            let added = p[1].n_evals - p[0].n_evals;
            assert!(added <= p[0].n_evals + 8, "{p:?}");
        }
    }
}
