//! Deterministic random generators for signals and symbols.
//!
//! All randomness comes from the caller's RNG; draws happen in a fixed
//! order so a seed pins every generated object. The smooth generator
//! shapes 2-D Fourier coefficients with a Gaussian envelope; decay of
//! the envelope controls the phase-space smoothness of the symbol and
//! with it the off-diagonal decay of its Gabor matrix.

use crate::error::Result;
use crate::fft::Dft;
use crate::linalg::op_norm;
use crate::quantize::{weyl_quantize, Symbol};
use crate::tf::{GroupCtx, Signal};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// One draw from the standard complex Gaussian.
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Signal with iid standard complex Gaussian entries.
pub fn random_signal(ctx: GroupCtx, rng: &mut impl Rng) -> Signal {
    Signal::from_fn(ctx, |_| complex_gaussian(rng))
}

/// Symbol with iid standard complex Gaussian entries (full band).
pub fn random_symbol(ctx: GroupCtx, rng: &mut impl Rng) -> Symbol {
    Symbol::from_fn(ctx, |_, _| complex_gaussian(rng))
}

/// Coefficient array with iid standard complex Gaussian entries.
pub fn random_coeffs(lattice: crate::gabor::Lattice, rng: &mut impl Rng) -> crate::gabor::CoeffArray {
    let mut c = crate::gabor::CoeffArray::zero(lattice);
    for slot in c.values_mut() {
        *slot = complex_gaussian(rng);
    }
    c
}

/// Banded lattice matrix: iid Gaussian entries at offsets whose signed
/// phase-space length is at most `bandwidth`, zero elsewhere.
pub fn random_banded_matrix(
    lattice: crate::gabor::Lattice,
    bandwidth: f64,
    rng: &mut impl Rng,
) -> crate::gabor_matrix::GaborMatrix {
    let ctx = lattice.ctx();
    let k = lattice.count();
    let mut m = crate::linalg::CMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let off = lattice.point(lattice.index_sub(i, j));
            if off.signed_len(ctx) <= bandwidth {
                m[(i, j)] = complex_gaussian(rng);
            }
        }
    }
    crate::gabor_matrix::GaborMatrix::new(lattice, m).expect("square by construction")
}

/// Band-limited random symbol: iid Gaussian 2-D Fourier coefficients on
/// the square `max(|p|, |q|) <= band` of signed frequencies, zero
/// outside. `band >= N/2` reproduces the full-band generator up to
/// normalization.
pub fn random_banded_symbol(ctx: GroupCtx, band: usize, rng: &mut impl Rng) -> Symbol {
    let n = ctx.n();
    let mut coeffs = vec![Complex64::default(); n * n];
    for p in 0..n {
        for q in 0..n {
            let sp = ctx.signed(p).unsigned_abs() as usize;
            let sq = ctx.signed(q).unsigned_abs() as usize;
            if sp <= band && sq <= band {
                coeffs[p * n + q] = complex_gaussian(rng);
            }
        }
    }
    let dft = Dft::new(n);
    dft.inverse_2d(&mut coeffs);
    let scale = Complex64::new(n as f64, 0.0);
    for v in coeffs.iter_mut() {
        *v *= scale;
    }
    Symbol::new(ctx, coeffs).expect("generated symbol is finite")
}

/// Smooth random symbol: Gaussian-envelope 2-D Fourier coefficients
/// `shat(p, q) = z_{pq} exp(-pi (p^2 + q^2) / width^2)` at signed
/// frequencies, transformed back to phase space.
pub fn gaussian_envelope_symbol(ctx: GroupCtx, width: f64, rng: &mut impl Rng) -> Symbol {
    let n = ctx.n();
    let mut coeffs = vec![Complex64::default(); n * n];
    for p in 0..n {
        for q in 0..n {
            let sp = ctx.signed(p) as f64;
            let sq = ctx.signed(q) as f64;
            let env = (-std::f64::consts::PI * (sp * sp + sq * sq) / (width * width)).exp();
            coeffs[p * n + q] = complex_gaussian(rng) * env;
        }
    }
    let dft = Dft::new(n);
    dft.inverse_2d(&mut coeffs);
    let scale = Complex64::new(n as f64, 0.0);
    for v in coeffs.iter_mut() {
        *v *= scale;
    }
    Symbol::new(ctx, coeffs).expect("generated symbol is finite")
}

/// Perturbation-of-identity symbol `sigma = 1 + eps * sigma_0`, where
/// `sigma_0` is a Gaussian-envelope symbol rescaled to unit operator
/// norm under Weyl quantization. For `|eps| < 1` the quantized operator
/// is invertible by the Neumann series. Odd N only.
pub fn eps_perturbation_symbol(
    ctx: GroupCtx,
    eps: f64,
    width: f64,
    rng: &mut impl Rng,
) -> Result<Symbol> {
    let base = gaussian_envelope_symbol(ctx, width, rng);
    let norm = op_norm(weyl_quantize(&base)?.matrix());
    let scaled = base.scale(Complex64::new(eps / norm, 0.0));
    Ok(Symbol::constant(ctx, Complex64::new(1.0, 0.0)).add(&scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic() {
        let ctx = GroupCtx::new(15).unwrap();
        let a = random_symbol(ctx, &mut ChaCha8Rng::seed_from_u64(5));
        let b = random_symbol(ctx, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn eps_perturbation_is_neumann_invertible() {
        let ctx = GroupCtx::new(15).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let sigma = eps_perturbation_symbol(ctx, 0.3, 3.0, &mut rng).unwrap();
        let t = weyl_quantize(&sigma).unwrap();
        let dev = op_norm(&(t.matrix() - crate::linalg::CMat::identity(15, 15)));
        assert!((dev - 0.3).abs() < 1e-10);
    }

    #[test]
    fn banded_symbol_has_no_high_frequencies() {
        let ctx = GroupCtx::new(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sigma = random_banded_symbol(ctx, 2, &mut rng);
        let dft = Dft::new(16);
        let mut buf = sigma.values().to_vec();
        dft.forward_2d(&mut buf);
        for p in 0..16 {
            for q in 0..16 {
                let sp = ctx.signed(p).unsigned_abs();
                let sq = ctx.signed(q).unsigned_abs();
                if sp > 2 || sq > 2 {
                    assert!(buf[p * 16 + q].norm() < 1e-9);
                }
            }
        }
    }
}
