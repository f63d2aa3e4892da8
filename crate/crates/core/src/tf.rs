//! Time-frequency shifts, STFT and cross-Wigner distribution on `Z_N`.
//!
//! Conventions: the DFT kernel is `exp(-2 pi i xi t / N)` with no forward
//! normalization, so that `stft(f, g)(x, xi) = <f, tf_shift(g, (x, xi))>`
//! holds literally. Group elements are kept in the canonical range
//! `[0, N)`; signed representatives in `[-N/2, N/2)` are used only for
//! weight evaluation (see [`crate::modspace`]).

use crate::error::{Error, Result};
use crate::fft::Dft;
use num_complex::Complex64;
use std::f64::consts::PI;

/// The cyclic group `Z_N` every object lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCtx {
    n: usize,
}

impl GroupCtx {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GroupOrder(n));
        }
        Ok(Self { n })
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Reduce an integer to the canonical range `[0, N)`.
    pub fn reduce(self, v: i64) -> usize {
        v.rem_euclid(self.n as i64) as usize
    }

    /// Signed representative in `[-N/2, N/2)` of a canonical element.
    pub fn signed(self, v: usize) -> i64 {
        debug_assert!(v < self.n);
        if v < self.n.div_ceil(2) {
            v as i64
        } else {
            v as i64 - self.n as i64
        }
    }

    /// The inverse of 2 mod N, i.e. `(N+1)/2`. Rejects even N, where no
    /// canonical half-shift exists.
    pub fn inv2(self) -> Result<usize> {
        if self.n % 2 == 0 {
            Err(Error::EvenOrder(self.n))
        } else {
            Ok((self.n + 1) / 2)
        }
    }

    pub fn check_same(self, other: GroupCtx) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CtxMismatch(self.n, other.n))
        }
    }

    /// `exp(2 pi i k / N)`.
    pub fn root_of_unity(self, k: i64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * k.rem_euclid(self.n as i64) as f64 / self.n as f64)
    }
}

/// A point `z = (x, xi)` of phase space `Z_N x Z_N`, stored canonically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhasePoint {
    pub x: usize,
    pub xi: usize,
}

impl PhasePoint {
    pub fn new(ctx: GroupCtx, x: i64, xi: i64) -> Self {
        Self {
            x: ctx.reduce(x),
            xi: ctx.reduce(xi),
        }
    }

    pub fn zero() -> Self {
        Self { x: 0, xi: 0 }
    }

    pub fn add(self, other: PhasePoint, ctx: GroupCtx) -> PhasePoint {
        PhasePoint::new(ctx, self.x as i64 + other.x as i64, self.xi as i64 + other.xi as i64)
    }

    pub fn sub(self, other: PhasePoint, ctx: GroupCtx) -> PhasePoint {
        PhasePoint::new(ctx, self.x as i64 - other.x as i64, self.xi as i64 - other.xi as i64)
    }

    pub fn neg(self, ctx: GroupCtx) -> PhasePoint {
        PhasePoint::new(ctx, -(self.x as i64), -(self.xi as i64))
    }

    /// Euclidean length of the signed representative.
    pub fn signed_len(self, ctx: GroupCtx) -> f64 {
        let dx = ctx.signed(self.x) as f64;
        let dxi = ctx.signed(self.xi) as f64;
        dx.hypot(dxi)
    }
}

/// The rotation `j(z1, z2) = (z2, -z1)`; `j` applied four times is the
/// identity.
pub fn j_map(z: PhasePoint, ctx: GroupCtx) -> PhasePoint {
    PhasePoint::new(ctx, z.xi as i64, -(z.x as i64))
}

/// Inverse rotation `j^{-1}(z1, z2) = (-z2, z1)`.
pub fn j_inv(z: PhasePoint, ctx: GroupCtx) -> PhasePoint {
    PhasePoint::new(ctx, -(z.xi as i64), z.x as i64)
}

/// A complex signal of length `N` on `Z_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    ctx: GroupCtx,
    values: Vec<Complex64>,
}

impl Signal {
    pub fn new(ctx: GroupCtx, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Parameter("signal contains non-finite entries".into()));
        }
        Ok(Self { ctx, values })
    }

    pub fn from_fn(ctx: GroupCtx, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            ctx,
            values: (0..ctx.n()).map(f).collect(),
        }
    }

    pub fn zero(ctx: GroupCtx) -> Self {
        Self {
            ctx,
            values: vec![Complex64::default(); ctx.n()],
        }
    }

    /// The Kronecker delta at position `t`.
    pub fn delta(ctx: GroupCtx, t: usize) -> Self {
        let mut s = Self::zero(ctx);
        s.values[ctx.reduce(t as i64)] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, t: i64) -> Complex64 {
        self.values[self.ctx.reduce(t)]
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<f, g> = sum_t f(t) conj(g(t))`.
    pub fn inner(&self, other: &Signal) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        Signal {
            ctx: self.ctx,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn sub(&self, other: &Signal) -> Signal {
        Signal {
            ctx: self.ctx,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// A complex array on phase space, indexed by `(x, xi)` in row-major
/// order with `x` as the row.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseArray {
    ctx: GroupCtx,
    values: Vec<Complex64>,
}

impl PhaseArray {
    pub fn zero(ctx: GroupCtx) -> Self {
        Self {
            ctx,
            values: vec![Complex64::default(); ctx.n() * ctx.n()],
        }
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, x: usize, xi: usize) -> Complex64 {
        self.values[x * self.ctx.n() + xi]
    }

    pub fn at(&self, z: PhasePoint) -> Complex64 {
        self.get(z.x, z.xi)
    }

    pub(crate) fn from_raw(ctx: GroupCtx, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), ctx.n() * ctx.n());
        Self { ctx, values }
    }

    pub fn sum_abs_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// The dense matrix of the time-frequency shift `pi(z)`.
pub fn tf_shift_matrix(ctx: GroupCtx, z: PhasePoint) -> crate::linalg::CMat {
    let n = ctx.n();
    let mut m = crate::linalg::CMat::zeros(n, n);
    for t in 0..n {
        m[(t, ctx.reduce(t as i64 - z.x as i64))] = ctx.root_of_unity(z.xi as i64 * t as i64);
    }
    m
}

/// Time-frequency shift `pi(z) f(t) = exp(2 pi i xi t / N) f(t - x)`.
/// Unitary, hence norm-preserving.
pub fn tf_shift(f: &Signal, z: PhasePoint) -> Signal {
    let ctx = f.ctx();
    let n = ctx.n();
    let mut values = vec![Complex64::default(); n];
    for (t, slot) in values.iter_mut().enumerate() {
        let src = ctx.reduce(t as i64 - z.x as i64);
        *slot = ctx.root_of_unity(z.xi as i64 * t as i64) * f.values[src];
    }
    Signal { ctx, values }
}

/// Short-time Fourier transform `V_g f(x, xi) = sum_t f(t) conj(g(t-x))
/// exp(-2 pi i xi t / N)`, computed with one length-N DFT per time shift.
/// Equals `<f, tf_shift(g, (x, xi))>` entrywise.
pub fn stft(f: &Signal, g: &Signal) -> Result<PhaseArray> {
    f.ctx().check_same(g.ctx())?;
    let ctx = f.ctx();
    let n = ctx.n();
    let dft = Dft::new(n);
    let mut out = vec![Complex64::default(); n * n];
    let mut buf = vec![Complex64::default(); n];
    for x in 0..n {
        for t in 0..n {
            let gt = g.values[ctx.reduce(t as i64 - x as i64)];
            buf[t] = f.values[t] * gt.conj();
        }
        dft.forward(&mut buf);
        out[x * n..(x + 1) * n].copy_from_slice(&buf);
    }
    Ok(PhaseArray::from_raw(ctx, out))
}

/// Cross-Wigner distribution for odd `N`:
/// `W(f,g)(x, xi) = sum_t f(x + inv2 t) conj(g(x - inv2 t)) exp(-2 pi i xi t / N)`
/// where `inv2 = (N+1)/2` inverts 2 mod N.
pub fn cross_wigner(f: &Signal, g: &Signal) -> Result<PhaseArray> {
    f.ctx().check_same(g.ctx())?;
    let ctx = f.ctx();
    let inv2 = ctx.inv2()? as i64;
    let n = ctx.n();
    let dft = Dft::new(n);
    let mut out = vec![Complex64::default(); n * n];
    let mut buf = vec![Complex64::default(); n];
    for x in 0..n {
        for (t, slot) in buf.iter_mut().enumerate() {
            let a = f.values[ctx.reduce(x as i64 + inv2 * t as i64)];
            let b = g.values[ctx.reduce(x as i64 - inv2 * t as i64)];
            *slot = a * b.conj();
        }
        dft.forward(&mut buf);
        out[x * n..(x + 1) * n].copy_from_slice(&buf);
    }
    Ok(PhaseArray::from_raw(ctx, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::random_signal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: usize) -> GroupCtx {
        GroupCtx::new(n).unwrap()
    }

    #[test]
    fn shift_identity() {
        let c = ctx(9);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_signal(c, &mut rng);
        let shifted = tf_shift(&f, PhasePoint::zero());
        assert!(f.sub(&shifted).norm() < 1e-15);
    }

    #[test]
    fn shift_moves_delta() {
        let c = ctx(8);
        let f = Signal::delta(c, 0);
        let shifted = tf_shift(&f, PhasePoint::new(c, 3, 0));
        assert!((shifted.get(3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((shifted.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shift_commutation_phase() {
        // pi(z) pi(z') = exp(-2 pi i xi' x / N) pi(z + z')
        let c = ctx(16);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_signal(c, &mut rng);
        for &(z, zp) in &[((3, 5), (7, 11)), ((0, 4), (9, 2)), ((15, 15), (1, 1))] {
            let z = PhasePoint::new(c, z.0, z.1);
            let zp = PhasePoint::new(c, zp.0, zp.1);
            let lhs = tf_shift(&tf_shift(&f, zp), z);
            let phase = c.root_of_unity(-(zp.xi as i64) * z.x as i64);
            let rhs = tf_shift(&f, z.add(zp, c)).scale(phase);
            assert!(lhs.sub(&rhs).norm() < 1e-12 * f.norm());
        }
    }

    #[test]
    fn shift_is_unitary() {
        let c = ctx(11);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_signal(c, &mut rng);
        let g = random_signal(c, &mut rng);
        let z = PhasePoint::new(c, 4, 7);
        let lhs = tf_shift(&f, z).inner(&tf_shift(&g, z));
        assert!((lhs - f.inner(&g)).norm() < 1e-12);
    }

    #[test]
    fn stft_at_origin_is_norm_squared() {
        let c = ctx(10);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = random_signal(c, &mut rng);
        let v = stft(&g, &g).unwrap();
        let expect = Complex64::new(g.norm().powi(2), 0.0);
        assert!((v.get(0, 0) - expect).norm() < 1e-12);
    }

    #[test]
    fn stft_with_delta_window() {
        let c = ctx(12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_signal(c, &mut rng);
        let g = Signal::delta(c, 0);
        let v = stft(&f, &g).unwrap();
        for x in 0..12 {
            for xi in 0..12 {
                assert!((v.get(x, xi).norm() - f.get(x as i64).norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stft_matches_naive_and_inner_product() {
        let c = ctx(64);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_signal(c, &mut rng);
        let g = random_signal(c, &mut rng);
        let v = stft(&f, &g).unwrap();
        // naive O(N^3) oracle
        for x in (0..64).step_by(13) {
            for xi in (0..64).step_by(11) {
                let mut acc = Complex64::default();
                for t in 0..64 {
                    acc += f.get(t)
                        * g.get(t - x).conj()
                        * c.root_of_unity(-(xi * t))
                }
                assert!((acc - v.get(x as usize, xi as usize)).norm() < 1e-10);
                // second route: inner product against the shifted window
                let z = PhasePoint::new(c, x, xi);
                let ip = f.inner(&tf_shift(&g, z));
                assert!((ip - v.get(x as usize, xi as usize)).norm() < 1e-12 * (1.0 + ip.norm()));
            }
        }
    }

    #[test]
    fn stft_parseval() {
        let c = ctx(36);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_signal(c, &mut rng);
        let g = random_signal(c, &mut rng);
        let v = stft(&f, &g).unwrap();
        let lhs = v.sum_abs_sqr();
        let rhs = 36.0 * f.norm().powi(2) * g.norm().powi(2);
        assert!((lhs - rhs).abs() < 1e-10 * rhs);
    }

    #[test]
    fn stft_rejects_length_mismatch() {
        let f = Signal::delta(ctx(8), 0);
        let g = Signal::delta(ctx(9), 0);
        assert!(matches!(stft(&f, &g), Err(Error::CtxMismatch(8, 9))));
    }

    #[test]
    fn wigner_of_deltas() {
        let c = ctx(5);
        let d = Signal::delta(c, 0);
        let w = cross_wigner(&d, &d).unwrap();
        for x in 0..5 {
            for xi in 0..5 {
                let expect = if x == 0 { 1.0 } else { 0.0 };
                assert!((w.get(x, xi) - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn wigner_frequency_sum() {
        // sum_xi W(f,g)(x, xi) = N f(x) conj(g(x))
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = random_signal(c, &mut rng);
        let g = random_signal(c, &mut rng);
        let w = cross_wigner(&f, &g).unwrap();
        for x in 0..15 {
            let sum: Complex64 = (0..15).map(|xi| w.get(x, xi)).sum();
            let expect = 15.0 * f.get(x as i64) * g.get(x as i64).conj();
            assert!((sum - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn wigner_rejects_even_order() {
        let c = ctx(8);
        let d = Signal::delta(c, 0);
        assert!(matches!(cross_wigner(&d, &d), Err(Error::EvenOrder(8))));
    }

    #[test]
    fn wigner_intertwining_modulus_small_orders() {
        // |W(pi(w)f, pi(z)g)(x, xi)| = |W(f,g)(x - inv2(w1+z1), xi - inv2(w2+z2))|,
        // exhaustively over w, z for N = 5 and 9.
        for &n in &[5usize, 9] {
            let c = ctx(n);
            let inv2 = c.inv2().unwrap() as i64;
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let f = random_signal(c, &mut rng);
            let g = random_signal(c, &mut rng);
            let base = cross_wigner(&f, &g).unwrap();
            for w1 in 0..n {
                for w2 in 0..n {
                    for z1 in 0..n {
                        for z2 in 0..n {
                            let w = PhasePoint { x: w1, xi: w2 };
                            let z = PhasePoint { x: z1, xi: z2 };
                            let shifted =
                                cross_wigner(&tf_shift(&f, w), &tf_shift(&g, z)).unwrap();
                            let dx = inv2 * (w1 + z1) as i64;
                            let dxi = inv2 * (w2 + z2) as i64;
                            for x in 0..n {
                                for xi in 0..n {
                                    let lhs = shifted.get(x, xi).norm();
                                    let rhs = base
                                        .get(c.reduce(x as i64 - dx), c.reduce(xi as i64 - dxi))
                                        .norm();
                                    assert!(
                                        (lhs - rhs).abs() < 1e-10,
                                        "N={n} w=({w1},{w2}) z=({z1},{z2})"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn wigner_is_dilated_stft() {
        // Finite form of the Wigner/STFT relation: W(f,g)(x, xi) =
        // exp(4 pi i x xi / N) V_{g^}f(2x, 2xi) with g^(t) = g(-t); the
        // dilation constant is 1 on Z_N (odd N), unlike the factor 2^d
        // in the continuous picture.
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f = random_signal(c, &mut rng);
        let g = random_signal(c, &mut rng);
        let gcheck = Signal::from_fn(c, |t| g.get(-(t as i64)));
        let w = cross_wigner(&f, &g).unwrap();
        let v = stft(&f, &gcheck).unwrap();
        for x in 0..15usize {
            for xi in 0..15usize {
                let phase = c.root_of_unity(2 * (x * xi) as i64);
                let rhs = phase * v.get(c.reduce(2 * x as i64), c.reduce(2 * xi as i64));
                assert!((w.get(x, xi) - rhs).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn j_map_basics() {
        let c = ctx(8);
        assert_eq!(j_map(PhasePoint::zero(), c), PhasePoint::zero());
        assert_eq!(j_map(PhasePoint { x: 3, xi: 5 }, c), PhasePoint { x: 5, xi: 5 });
        let z = PhasePoint { x: 2, xi: 7 };
        let mut w = z;
        for _ in 0..4 {
            w = j_map(w, c);
        }
        assert_eq!(w, z);
        assert_eq!(j_inv(j_map(z, c), c), z);
    }

    #[test]
    fn group_ctx_validation() {
        assert!(GroupCtx::new(1).is_err());
        assert!(GroupCtx::new(2).is_ok());
        assert_eq!(ctx(15).inv2().unwrap(), 8);
        assert!(ctx(16).inv2().is_err());
        assert_eq!(ctx(8).signed(3), 3);
        assert_eq!(ctx(8).signed(4), -4);
        assert_eq!(ctx(15).signed(7), 7);
        assert_eq!(ctx(15).signed(8), -7);
    }
}
