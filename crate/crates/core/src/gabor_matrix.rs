//! The Gabor matrix of an operator, off-diagonal decay profiles, the
//! convolution-dominated matrix norm, and the phase-space symbol norm.
//!
//! Central identity: with `M(T)_{lm} = <T pi(mu) g, pi(lambda) g>` the
//! matrix factors as `C T C^H` through the analysis matrix `C`, so
//! `analyze(T f) = M(T) analyze_dual(f)` holds exactly in finite
//! dimensions. The modulus of `M` at offset `lambda - mu` is a sampled
//! phase-space STFT of the Weyl symbol of `T`; the decay profile and
//! the `C_v` norm quantify that off-diagonal decay.

use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::gabor::{CoeffArray, GaborSystem, Lattice, Window};
use crate::linalg::CMat;
use crate::modspace::Weight;
use crate::quantize::{OperatorMatrix, Symbol};
use crate::tf::{cross_wigner, GroupCtx, PhasePoint, Signal};
use num_complex::Complex64;

/// Full symbol STFTs store N^4 complex entries; past this the Gabor
/// matrix is the intended tool.
pub const SYMBOL_STFT_MAX_N: usize = 32;

/// A `K x K` matrix indexed by lattice points in coefficient order.
#[derive(Clone, Debug, PartialEq)]
pub struct GaborMatrix {
    lattice: Lattice,
    m: CMat,
}

impl GaborMatrix {
    pub fn new(lattice: Lattice, m: CMat) -> Result<Self> {
        let k = lattice.count();
        if m.nrows() != k || m.ncols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: m.nrows().max(m.ncols()),
            });
        }
        Ok(Self { lattice, m })
    }

    pub fn identity(lattice: Lattice) -> Self {
        Self {
            m: CMat::identity(lattice.count(), lattice.count()),
            lattice,
        }
    }

    /// The permutation matrix of the cyclic lattice shift by the point
    /// at flat index `shift`: `(P c)(lambda) = c(lambda - shift)`.
    pub fn lattice_shift(lattice: Lattice, shift: usize) -> Self {
        let k = lattice.count();
        let mut m = CMat::zeros(k, k);
        for row in 0..k {
            m[(row, lattice.index_sub(row, shift))] = Complex64::new(1.0, 0.0);
        }
        Self { lattice, m }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn adjoint(&self) -> GaborMatrix {
        GaborMatrix {
            lattice: self.lattice,
            m: self.m.adjoint(),
        }
    }

    pub fn compose(&self, other: &GaborMatrix) -> Result<GaborMatrix> {
        self.lattice.check_same(&other.lattice)?;
        Ok(GaborMatrix {
            lattice: self.lattice,
            m: &self.m * &other.m,
        })
    }

    pub fn sub(&self, other: &GaborMatrix) -> GaborMatrix {
        GaborMatrix {
            lattice: self.lattice,
            m: &self.m - &other.m,
        }
    }

    /// Apply to a coefficient array.
    pub fn apply(&self, c: &CoeffArray) -> Result<CoeffArray> {
        self.lattice.check_same(&c.lattice())?;
        let v = nalgebra::DVector::from_column_slice(c.values());
        let out = &self.m * v;
        CoeffArray::new(self.lattice, out.iter().copied().collect())
    }
}

/// Tightest translation-invariant envelope of a Gabor matrix, indexed
/// by the lattice difference group in coefficient order.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayProfile {
    lattice: Lattice,
    values: Vec<f64>,
}

impl DecayProfile {
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    /// Flat index of the difference point with the largest signed
    /// Euclidean length (smallest index among ties).
    pub fn farthest_offset(&self) -> usize {
        let ctx = self.lattice.ctx();
        let mut best = 0usize;
        let mut best_len = -1.0f64;
        for idx in 0..self.lattice.count() {
            let len = self.lattice.point(idx).signed_len(ctx);
            if len > best_len {
                best_len = len;
                best = idx;
            }
        }
        best
    }
}

/// The Gabor matrix `M_{lambda mu} = <T pi(mu) g, pi(lambda) g>` of an
/// operator with respect to the system's primary window, computed as
/// `C T C^H`.
pub fn gabor_matrix(t: &OperatorMatrix, sys: &GaborSystem) -> Result<GaborMatrix> {
    sys.ctx().check_same(t.ctx())?;
    let c = sys.analysis_matrix(Window::Primary);
    let m = &c * t.matrix() * c.adjoint();
    Ok(GaborMatrix {
        lattice: sys.lattice(),
        m,
    })
}

/// Relative residual of the commutative-diagram identity
/// `analyze(T f, Primary) = M(T) analyze(f, Dual)`; exact in finite
/// dimensions, so the result sits at rounding level. For `T f = 0` the
/// residual is reported as the absolute norm.
pub fn diagram_check(t: &OperatorMatrix, sys: &GaborSystem, f: &Signal) -> Result<f64> {
    let lhs = sys.analyze(&t.apply(f)?, Window::Primary)?;
    let rhs = gabor_matrix(t, sys)?.apply(&sys.analyze(f, Window::Dual)?)?;
    let denom = lhs.norm();
    let dev = lhs.sub(&rhs).norm();
    Ok(if denom == 0.0 { dev } else { dev / denom })
}

/// `h(mu) = max_lambda |M_{lambda, lambda - mu}|` over the lattice
/// difference group: the smallest translation-invariant dominating
/// envelope of the matrix.
pub fn decay_profile(m: &GaborMatrix) -> DecayProfile {
    let lat = m.lattice();
    let k = lat.count();
    let mut values = vec![0.0f64; k];
    for (mu, slot) in values.iter_mut().enumerate() {
        let mut best = 0.0f64;
        for lambda in 0..k {
            let v = m.matrix()[(lambda, lat.index_sub(lambda, mu))].norm();
            if v > best {
                best = v;
            }
        }
        *slot = best;
    }
    DecayProfile {
        lattice: lat,
        values,
    }
}

/// The convolution-dominated matrix norm
/// `sum_mu h(mu) v(mu)` with `h` the decay profile and the weight
/// evaluated at signed representatives of the lattice offsets.
pub fn cv_norm(m: &GaborMatrix, v: &Weight) -> f64 {
    cv_norm_profile(&decay_profile(m), v)
}

pub fn cv_norm_profile(h: &DecayProfile, v: &Weight) -> f64 {
    let lat = h.lattice();
    let ctx = lat.ctx();
    (0..lat.count())
        .map(|idx| h.get(idx) * v.eval(ctx, lat.point(idx)))
        .sum()
}

/// The 4-D STFT of a symbol against the window `Phi = W(g, g)`:
/// `V(z, zeta) = sum_t sigma(t) conj(Phi(t - z)) exp(-2 pi i zeta.t / N)`
/// over phase-space points `t`. Odd N (the window is a Wigner
/// distribution) and `N <= 32` (N^4 storage).
#[derive(Clone, Debug)]
pub struct SymbolStft {
    ctx: GroupCtx,
    values: Vec<Complex64>,
}

impl SymbolStft {
    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    /// Value at base point `z` and phase-space frequency `zeta`.
    pub fn get(&self, z: PhasePoint, zeta: PhasePoint) -> Complex64 {
        let n = self.ctx.n();
        self.values[((z.x * n + z.xi) * n + zeta.x) * n + zeta.xi]
    }

    /// `sup_z |V(z, zeta)|` for a fixed frequency.
    pub fn sup_over_base(&self, zeta: PhasePoint) -> f64 {
        let n = self.ctx.n();
        let mut best = 0.0f64;
        for zx in 0..n {
            for zxi in 0..n {
                let v = self.values[((zx * n + zxi) * n + zeta.x) * n + zeta.xi].norm();
                if v > best {
                    best = v;
                }
            }
        }
        best
    }
}

pub fn symbol_stft(sigma: &Symbol, g: &Signal) -> Result<SymbolStft> {
    let ctx = sigma.ctx();
    ctx.check_same(g.ctx())?;
    let n = ctx.n();
    if n > SYMBOL_STFT_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: SYMBOL_STFT_MAX_N,
        });
    }
    let phi = cross_wigner(g, g)?;
    let dft = Dft::new(n);
    let mut values = vec![Complex64::default(); n * n * n * n];
    let mut buf = vec![Complex64::default(); n * n];
    for zx in 0..n {
        for zxi in 0..n {
            for t1 in 0..n {
                for t2 in 0..n {
                    let p1 = ctx.reduce(t1 as i64 - zx as i64);
                    let p2 = ctx.reduce(t2 as i64 - zxi as i64);
                    buf[t1 * n + t2] = sigma.get(t1, t2) * phi.get(p1, p2).conj();
                }
            }
            dft.forward_2d(&mut buf);
            let base = (zx * n + zxi) * n * n;
            values[base..base + n * n].copy_from_slice(&buf);
        }
    }
    Ok(SymbolStft { ctx, values })
}

/// Discrete Sjostrand-class norm:
/// `sum_zeta (sup_z |V_Phi sigma(z, zeta)|) v(zeta)`.
pub fn sjostrand_norm(sigma: &Symbol, g: &Signal, v: &Weight) -> Result<f64> {
    let stft = symbol_stft(sigma, g)?;
    let ctx = sigma.ctx();
    let n = ctx.n();
    let mut acc = 0.0f64;
    for zx in 0..n {
        for zxi in 0..n {
            let zeta = PhasePoint { x: zx, xi: zxi };
            acc += stft.sup_over_base(zeta) * v.eval(ctx, zeta);
        }
    }
    Ok(acc)
}
