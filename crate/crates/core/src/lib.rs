//! Time-frequency analysis on the cyclic group `Z_N`.
//!
//! Everything here is finite-dimensional: signals are complex vectors of
//! length `N`, phase space is `Z_N x Z_N`, and operators are dense `N x N`
//! matrices. The crate provides
//!
//! * time-frequency shifts, the short-time Fourier transform and the
//!   cross-Wigner distribution ([`tf`]),
//! * Gabor frames on separable lattices with canonical dual and tight
//!   windows ([`gabor`]),
//! * Weyl and Kohn-Nirenberg quantization together with the twisted
//!   product of symbols ([`quantize`]),
//! * the Gabor matrix of an operator, off-diagonal decay profiles, the
//!   convolution-dominated matrix norm and the phase-space symbol norm
//!   ([`gabor_matrix`]),
//! * admissible weights and weighted mixed-norm sequence norms
//!   ([`modspace`]),
//! * inverse-closedness experiments: matrix algebra identities,
//!   pseudoinverses (SVD and contour integral) and decay of inverses
//!   ([`wiener`]).
//!
//! All computations are deterministic given the caller's RNG; nothing in
//! the crate keeps global state.

pub mod error;
pub mod fft;
pub mod gabor;
pub mod gabor_matrix;
pub mod linalg;
pub mod modspace;
pub mod quantize;
pub mod symbols;
pub mod tf;
pub mod wiener;

pub use error::{Error, Result};
pub use gabor::{periodized_gaussian, CoeffArray, GaborSystem, Lattice, Window};
pub use gabor_matrix::{
    cv_norm, cv_norm_profile, decay_profile, diagram_check, gabor_matrix, sjostrand_norm,
    symbol_stft, DecayProfile, GaborMatrix, SymbolStft,
};
pub use modspace::{mixed_norm, mod_norm, young_bound_check, MixedNormSpec, ModerateWeight, Weight};
pub use quantize::{
    dequantize, kn_from_weyl, kn_quantize, quantize, twisted_product, weyl_quantize, Calculus,
    OperatorMatrix, Symbol,
};
pub use tf::{cross_wigner, j_map, stft, tf_shift, GroupCtx, PhaseArray, PhasePoint, Signal};
pub use wiener::{
    algebra_check, boundedness_report, pseudoinverse_riesz, pseudoinverse_svd,
    spectral_invariance_check, wiener_experiment, BoundednessReport, ContourSpec,
    SpectralInvarianceReport, WienerReport,
};

/// Convenience alias used throughout the crate.
pub type C64 = num_complex::Complex64;
