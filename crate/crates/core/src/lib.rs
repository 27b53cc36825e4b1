//! Fourier analysis on variable-exponent Lebesgue spaces `L^{p(·)}(ℝ)`.
//!
//! The crate evaluates modulars and Luxemburg norms, the transform
//! `Ψ_f(s) = ∫ f(t) (1 - e^{-ist}) / (it) dt` with its growth bounds,
//! Fourier exchange formulas and summability-kernel inversion. Every routine
//! is generic over [`Real`]; the `*F64` aliases fix the scalar to `f64`.

pub mod error;
pub mod exponent;
pub mod fourier;
pub mod funcspace;
pub mod integration;
pub mod io;
pub mod modular;
pub mod psi;
pub mod quadrature;
pub mod report;
pub mod run;
pub mod scalar;
pub mod special;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::Real;

pub use exponent::{ExponentForm, ExponentFunction, IntervalUnion};
pub use funcspace::{BvFunction, CatalogFunction, LineFunction, SampledFunction, SchwartzFunction};
pub use integration::{Kernel, KernelFamily};

pub type ExponentFunctionF64 = ExponentFunction<f64>;
pub type IntervalUnionF64 = IntervalUnion<f64>;
pub type CatalogFunctionF64 = CatalogFunction<f64>;
pub type SampledFunctionF64 = SampledFunction<f64>;
pub type SchwartzFunctionF64 = SchwartzFunction<f64>;
pub type BvFunctionF64 = BvFunction<f64>;
pub type KernelF64 = Kernel<f64>;
pub type EnvelopeF64 = quadrature::Envelope<f64>;
