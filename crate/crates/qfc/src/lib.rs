//! Toolkit for cascaded two-stage quantum frequency converters.
//!
//! Models the full analysis chain of a cascaded difference-frequency
//! converter that transduces visible single photons to the telecom C-band
//! via an intermediate wavelength, sharing one mid-infrared pump between
//! both stages:
//!
//! - [`spectral`] — wavelength/frequency/wavenumber bookkeeping for
//!   difference-frequency chains.
//! - [`phasematch`] — temperature-dependent refractive index,
//!   quasi-phase-matching periods and temperatures, sinc² acceptance
//!   bandwidths.
//! - [`conversion`] — pump-depletion conversion efficiency per stage and
//!   for the cascade, plus depletion-curve fitting.
//! - [`budget`] — multiplicative efficiency/rate ledgers with first-order
//!   uncertainty propagation, noise-rate correction, per-bandwidth
//!   normalization.
//! - [`correlation`] — analytic g²(τ) model with background and detector
//!   jitter, a Monte Carlo Hanbury Brown–Twiss simulator, and the g² fitter.
//! - [`specfit`] — emitter spectrum model (super-Gaussian background plus
//!   Lorentzian lines) and signal-to-background extraction.
//! - [`fitkit`] — damped least-squares optimizer with numeric Jacobians,
//!   box bounds and profile-likelihood confidence intervals.
//! - [`io`] — CSV and key-value file formats used by the CLI.
//!
//! The `qfc` binary exposes all of the above as subcommands; see the
//! [`cli`] module and the project README.

pub mod fitkit;
pub mod spectral;

pub use fitkit::{FitProblem, FitResult};
pub use spectral::{SpectralWidth, Wavelength};
