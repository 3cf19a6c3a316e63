//! Real-argument Wright function `W(a,b|z) = Σ z^k / (k! Γ(ak + b))`.
//!
//! Evaluation goes through the Hankel-contour integral representation split into
//! radial and arc pieces ([`wright`]), integrated by a self-contained
//! double-exponential quadrature engine ([`dequad`]). A series reference
//! ([`series`]) and a catalog of special-function identities ([`special`]) are
//! provided for verification.

pub mod cli;
pub mod dequad;
pub mod error;
pub mod gamma;
pub mod selftest;
pub mod series;
pub mod special;
pub mod wright;

pub use dequad::{QuadratureConfig, QuadratureResult, TransformKind};
pub use error::{Error, Result};
pub use gamma::reciprocal_gamma;
pub use series::{wright_series, SeriesResult};
pub use wright::{classify, wright, Branch, WrightParams, WrightValue};
