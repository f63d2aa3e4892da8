//! Gabor frames on separable lattices `a Z_N x b Z_N`: frame operator,
//! canonical dual and tight windows, analysis and synthesis.
//!
//! Everything is dense: the frame operator is an `N x N` matrix and its
//! inverse and inverse square root come from a Hermitian
//! eigendecomposition, which also yields the frame bounds. Coefficient
//! arrays are indexed row-major in (frequency index l, time index k);
//! that bijection is part of the file-format contract downstream.

use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::linalg::{hermitian_apply, hermitian_eig, CMat};
use crate::tf::{GroupCtx, PhasePoint, Signal};
use num_complex::Complex64;

/// Separable lattice `{(k a, l b)}` inside `Z_N x Z_N`; a subgroup under
/// componentwise addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    ctx: GroupCtx,
    a: usize,
    b: usize,
}

impl Lattice {
    pub fn new(ctx: GroupCtx, a: usize, b: usize) -> Result<Self> {
        let n = ctx.n();
        if a == 0 || n % a != 0 {
            return Err(Error::NotADivisor { name: "a", value: a, n });
        }
        if b == 0 || n % b != 0 {
            return Err(Error::NotADivisor { name: "b", value: b, n });
        }
        Ok(Self { ctx, a, b })
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Number of time steps `N / a`.
    pub fn time_count(&self) -> usize {
        self.ctx.n() / self.a
    }

    /// Number of frequency steps `N / b`.
    pub fn freq_count(&self) -> usize {
        self.ctx.n() / self.b
    }

    /// Total number of lattice points `K`.
    pub fn count(&self) -> usize {
        self.time_count() * self.freq_count()
    }

    /// Flat index of the point `(k a, l b)`: row-major in `(l, k)`.
    pub fn index(&self, k: usize, l: usize) -> usize {
        debug_assert!(k < self.time_count() && l < self.freq_count());
        l * self.time_count() + k
    }

    /// Inverse of [`Lattice::index`].
    pub fn unindex(&self, idx: usize) -> (usize, usize) {
        (idx % self.time_count(), idx / self.time_count())
    }

    /// The phase-space point at flat index `idx`.
    pub fn point(&self, idx: usize) -> PhasePoint {
        let (k, l) = self.unindex(idx);
        PhasePoint {
            x: k * self.a,
            xi: l * self.b,
        }
    }

    /// Difference of two flat indices inside the lattice group.
    pub fn index_sub(&self, i: usize, j: usize) -> usize {
        let (ki, li) = self.unindex(i);
        let (kj, lj) = self.unindex(j);
        let tc = self.time_count() as i64;
        let fc = self.freq_count() as i64;
        let k = (ki as i64 - kj as i64).rem_euclid(tc) as usize;
        let l = (li as i64 - lj as i64).rem_euclid(fc) as usize;
        self.index(k, l)
    }

    pub fn check_same(&self, other: &Lattice) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(self.a, self.b, other.a, other.b))
        }
    }
}

/// Which window of a Gabor system an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    Primary,
    Dual,
    Tight,
}

/// Coefficients indexed by lattice points in [`Lattice::index`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffArray {
    lattice: Lattice,
    values: Vec<Complex64>,
}

impl CoeffArray {
    pub fn new(lattice: Lattice, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != lattice.count() {
            return Err(Error::DimensionMismatch {
                expected: lattice.count(),
                got: values.len(),
            });
        }
        Ok(Self { lattice, values })
    }

    pub fn zero(lattice: Lattice) -> Self {
        Self {
            lattice,
            values: vec![Complex64::default(); lattice.count()],
        }
    }

    /// Indicator of a single lattice point.
    pub fn delta(lattice: Lattice, idx: usize) -> Self {
        let mut c = Self::zero(lattice);
        c.values[idx] = Complex64::new(1.0, 0.0);
        c
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn get(&self, k: usize, l: usize) -> Complex64 {
        self.values[self.lattice.index(k, l)]
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<c, d> = sum c conj(d)` over lattice points.
    pub fn inner(&self, other: &CoeffArray) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn sub(&self, other: &CoeffArray) -> CoeffArray {
        CoeffArray {
            lattice: self.lattice,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Cyclic shift by `(r, s)` lattice steps: `(T c)(k, l) = c(k-r, l-s)`.
    pub fn translate(&self, r: i64, s: i64) -> CoeffArray {
        let tc = self.lattice.time_count() as i64;
        let fc = self.lattice.freq_count() as i64;
        let mut out = CoeffArray::zero(self.lattice);
        for l in 0..fc {
            for k in 0..tc {
                let src = self
                    .lattice
                    .index((k - r).rem_euclid(tc) as usize, (l - s).rem_euclid(fc) as usize);
                out.values[self.lattice.index(k as usize, l as usize)] = self.values[src];
            }
        }
        out
    }
}

/// The periodized, l2-normalized Gaussian `sum_k exp(-pi (t + k N)^2 / N)`
/// with `|k| <= r` wrap-around terms. Strictly positive and even about 0.
pub fn periodized_gaussian_with_tail(ctx: GroupCtx, r: i64) -> Signal {
    let n = ctx.n() as f64;
    let raw = Signal::from_fn(ctx, |t| {
        let mut acc = 0.0;
        for k in -r..=r {
            let u = t as f64 + k as f64 * n;
            acc += (-std::f64::consts::PI * u * u / n).exp();
        }
        Complex64::new(acc, 0.0)
    });
    let nrm = raw.norm();
    raw.scale(Complex64::new(1.0 / nrm, 0.0))
}

/// The default window: periodized Gaussian with 6 wrap-around terms.
pub fn periodized_gaussian(ctx: GroupCtx) -> Signal {
    periodized_gaussian_with_tail(ctx, 6)
}

/// A Gabor system: window, lattice, frame operator, canonical dual and
/// tight windows, and the frame bounds (extreme eigenvalues of S).
#[derive(Clone, Debug)]
pub struct GaborSystem {
    g: Signal,
    lattice: Lattice,
    s: CMat,
    gamma: Signal,
    tight: Signal,
    bounds: (f64, f64),
}

impl GaborSystem {
    /// Build the system for window `g` on the lattice `a Z_N x b Z_N`.
    ///
    /// Constructs the frame operator `S = C_g^* C_g` densely, verifies
    /// invertibility (smallest eigenvalue above `1e-10 B`), and computes
    /// the canonical dual `S^{-1} g` and tight window `S^{-1/2} g` from
    /// the Hermitian eigendecomposition.
    pub fn build(g: &Signal, a: usize, b: usize) -> Result<Self> {
        let ctx = g.ctx();
        let lattice = Lattice::new(ctx, a, b)?;
        if g.norm() == 0.0 {
            return Err(Error::Parameter("window must be nonzero".into()));
        }
        let c = analysis_matrix_for(&lattice, g);
        let s = c.adjoint() * &c;
        let (vals, vecs) = hermitian_eig(&s);
        let min_eig = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let max_eig = vals.iter().copied().fold(0.0f64, f64::max);
        let threshold = 1e-10 * max_eig;
        if min_eig <= threshold {
            return Err(Error::NotAFrame { min_eig, threshold });
        }
        let gamma = Signal::new(
            ctx,
            hermitian_apply(&vals, &vecs, |ev| 1.0 / ev, g.values()),
        )?;
        let tight = Signal::new(
            ctx,
            hermitian_apply(&vals, &vecs, |ev| 1.0 / ev.sqrt(), g.values()),
        )?;
        Ok(Self {
            g: g.clone(),
            lattice,
            s,
            gamma,
            tight,
            bounds: (min_eig, max_eig),
        })
    }

    pub fn ctx(&self) -> GroupCtx {
        self.g.ctx()
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Frame bounds `(A, B)`.
    pub fn frame_bounds(&self) -> (f64, f64) {
        self.bounds
    }

    pub fn frame_operator(&self) -> &CMat {
        &self.s
    }

    /// `S f` as a signal.
    pub fn apply_frame_operator(&self, f: &Signal) -> Result<Signal> {
        self.ctx().check_same(f.ctx())?;
        let v = nalgebra::DVector::from_column_slice(f.values());
        let out = &self.s * v;
        Signal::new(self.ctx(), out.iter().copied().collect())
    }

    pub fn window(&self, which: Window) -> &Signal {
        match which {
            Window::Primary => &self.g,
            Window::Dual => &self.gamma,
            Window::Tight => &self.tight,
        }
    }

    /// The `K x N` matrix whose row at lattice index `lambda` is
    /// `conj(pi(lambda) w)`, so that `analyze` is matrix application.
    pub fn analysis_matrix(&self, which: Window) -> CMat {
        analysis_matrix_for(&self.lattice, self.window(which))
    }

    /// `C_w f(lambda) = <f, pi(lambda) w>` over the lattice, computed as
    /// a subsampled STFT (one FFT per time step).
    pub fn analyze(&self, f: &Signal, which: Window) -> Result<CoeffArray> {
        self.ctx().check_same(f.ctx())?;
        let w = self.window(which);
        let ctx = self.ctx();
        let n = ctx.n();
        let dft = Dft::new(n);
        let mut out = CoeffArray::zero(self.lattice);
        let mut buf = vec![Complex64::default(); n];
        for k in 0..self.lattice.time_count() {
            let x = k * self.lattice.a;
            for t in 0..n {
                let wt = w.values()[ctx.reduce(t as i64 - x as i64)];
                buf[t] = f.values()[t] * wt.conj();
            }
            dft.forward(&mut buf);
            for l in 0..self.lattice.freq_count() {
                out.values_mut()[self.lattice.index(k, l)] = buf[l * self.lattice.b];
            }
        }
        Ok(out)
    }

    /// `sum_lambda c(lambda) pi(lambda) w`; the adjoint of `analyze`
    /// with the same window.
    pub fn synthesize(&self, c: &CoeffArray, which: Window) -> Result<Signal> {
        self.lattice.check_same(&c.lattice())?;
        let w = self.window(which);
        let ctx = self.ctx();
        let n = ctx.n();
        let dft = Dft::new(n);
        let mut acc = vec![Complex64::default(); n];
        let mut spec = vec![Complex64::default(); n];
        for k in 0..self.lattice.time_count() {
            let x = k * self.lattice.a;
            // m_k(t) = sum_l c(k, l) exp(2 pi i (l b) t / N): place the
            // coefficients on their frequency bins and inverse-transform
            spec.iter_mut().for_each(|v| *v = Complex64::default());
            for l in 0..self.lattice.freq_count() {
                spec[l * self.lattice.b] = c.values()[self.lattice.index(k, l)];
            }
            dft.inverse(&mut spec);
            let scale = Complex64::new(n as f64, 0.0);
            for t in 0..n {
                let wt = w.values()[ctx.reduce(t as i64 - x as i64)];
                acc[t] += spec[t] * scale * wt;
            }
        }
        Signal::new(ctx, acc)
    }

    /// The normalized tight system: same lattice, window `S^{-1/2} g`.
    /// Its frame operator is the identity, so analysis and synthesis
    /// with one window invert each other.
    pub fn tight_system(&self) -> Result<GaborSystem> {
        GaborSystem::build(&self.tight, self.lattice.a, self.lattice.b)
    }
}

fn analysis_matrix_for(lattice: &Lattice, w: &Signal) -> CMat {
    let ctx = lattice.ctx();
    let n = ctx.n();
    let k = lattice.count();
    let mut c = CMat::zeros(k, n);
    for idx in 0..k {
        let z = lattice.point(idx);
        for t in 0..n {
            let wt = w.values()[ctx.reduce(t as i64 - z.x as i64)];
            let phase = ctx.root_of_unity(z.xi as i64 * t as i64);
            c[(idx, t)] = (phase * wt).conj();
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{complex_gaussian, random_signal};
    use crate::tf::tf_shift;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: usize) -> GroupCtx {
        GroupCtx::new(n).unwrap()
    }

    #[test]
    fn gaussian_is_normalized_symmetric_and_tail_stable() {
        let c = ctx(64);
        let g = periodized_gaussian(c);
        assert!((g.norm() - 1.0).abs() < 1e-14);
        for t in 1..64 {
            let dev = (g.get(t as i64) - g.get(64 - t as i64)).norm();
            assert!(dev < 1e-14, "t={t} dev={dev}");
        }
        let g8 = periodized_gaussian_with_tail(c, 8);
        let sup = (0..64)
            .map(|t| (g.get(t) - g8.get(t)).norm())
            .fold(0.0f64, f64::max);
        assert!(sup < 1e-15);
        assert!(g.values().iter().all(|v| v.re > 0.0));
    }

    #[test]
    fn full_lattice_frame_operator_is_scaled_identity() {
        let c = ctx(32);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 1, 1).unwrap();
        let scale = 32.0 * g.norm().powi(2);
        let expect = CMat::identity(32, 32) * Complex64::new(scale, 0.0);
        let dev = (sys.frame_operator() - &expect).norm();
        assert!(dev < 1e-10 * sys.frame_operator().norm());
        let (a, b) = sys.frame_bounds();
        assert!((a - scale).abs() < 1e-8 * scale);
        assert!((b - scale).abs() < 1e-8 * scale);
        // gamma = g / (N ||g||^2)
        let gamma = sys.window(Window::Dual);
        let expect_gamma = g.scale(Complex64::new(1.0 / scale, 0.0));
        assert!(gamma.sub(&expect_gamma).norm() < 1e-12);
    }

    #[test]
    fn undersampled_lattice_is_not_a_frame() {
        // K = 6 < N = 12 vectors cannot span
        let c = ctx(12);
        let g = periodized_gaussian(c);
        assert!(matches!(
            GaborSystem::build(&g, 6, 4),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn non_divisor_steps_are_rejected() {
        let c = ctx(12);
        let g = periodized_gaussian(c);
        assert!(matches!(
            GaborSystem::build(&g, 5, 4),
            Err(Error::NotADivisor { name: "a", .. })
        ));
        assert!(matches!(
            GaborSystem::build(&g, 4, 7),
            Err(Error::NotADivisor { name: "b", .. })
        ));
    }

    #[test]
    fn analyze_peaks_at_the_shift() {
        let c = ctx(24);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let idx = sys.lattice().index(2, 3);
        let f = tf_shift(&g, sys.lattice().point(idx));
        let coeffs = sys.analyze(&f, Window::Primary).unwrap();
        let expect = Complex64::new(g.norm().powi(2), 0.0);
        assert!((coeffs.values()[idx] - expect).norm() < 1e-12);
    }

    #[test]
    fn analyze_zero_is_zero() {
        let c = ctx(24);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 3).unwrap();
        let coeffs = sys.analyze(&Signal::zero(c), Window::Dual).unwrap();
        assert!(coeffs.norm() == 0.0);
    }

    #[test]
    fn dual_analysis_is_primary_of_inverse_frame_operator() {
        // C_gamma f = C_g (S^{-1} f)
        let c = ctx(48);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = random_signal(c, &mut rng);
        let lhs = sys.analyze(&f, Window::Dual).unwrap();
        let (vals, vecs) = hermitian_eig(sys.frame_operator());
        let sinvf = Signal::new(
            c,
            hermitian_apply(&vals, &vecs, |ev| 1.0 / ev, f.values()),
        )
        .unwrap();
        let rhs = sys.analyze(&sinvf, Window::Primary).unwrap();
        assert!(lhs.sub(&rhs).norm() < 1e-10 * lhs.norm());
    }

    #[test]
    fn synthesize_delta_is_shifted_window() {
        let c = ctx(24);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let idx = sys.lattice().index(1, 5);
        let out = sys
            .synthesize(&CoeffArray::delta(sys.lattice(), idx), Window::Tight)
            .unwrap();
        let expect = tf_shift(sys.window(Window::Tight), sys.lattice().point(idx));
        assert!(out.sub(&expect).norm() < 1e-12);
    }

    #[test]
    fn synthesize_is_adjoint_of_analyze() {
        let c = ctx(48);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let f = random_signal(c, &mut rng);
        let mut cf = CoeffArray::zero(sys.lattice());
        for v in cf.values_mut() {
            *v = complex_gaussian(&mut rng);
        }
        let lhs = sys.synthesize(&cf, Window::Primary).unwrap().inner(&f);
        let rhs = cf.inner(&sys.analyze(&f, Window::Primary).unwrap());
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn three_reconstructions_agree() {
        let c = ctx(48);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..5 {
            let f = random_signal(c, &mut rng);
            let r1 = sys
                .synthesize(&sys.analyze(&f, Window::Primary).unwrap(), Window::Dual)
                .unwrap();
            let r2 = sys
                .synthesize(&sys.analyze(&f, Window::Dual).unwrap(), Window::Primary)
                .unwrap();
            let r3 = sys
                .synthesize(&sys.analyze(&f, Window::Tight).unwrap(), Window::Tight)
                .unwrap();
            for r in [&r1, &r2, &r3] {
                assert!(r.sub(&f).norm() < 1e-10 * f.norm());
            }
        }
    }

    #[test]
    fn frame_inequality_holds() {
        let c = ctx(48);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let (a, b) = sys.frame_bounds();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..10 {
            let f = random_signal(c, &mut rng);
            let e = sys.analyze(&f, Window::Primary).unwrap().norm().powi(2);
            let n2 = f.norm().powi(2);
            assert!(a * n2 * (1.0 - 1e-10) <= e && e <= b * n2 * (1.0 + 1e-10));
        }
    }

    #[test]
    fn frame_operator_commutes_with_lattice_shifts() {
        let c = ctx(36);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 6, 3).unwrap();
        let n = c.n();
        for idx in [1usize, 7, 20] {
            let z = sys.lattice().point(idx);
            let mut pi = CMat::zeros(n, n);
            for t in 0..n {
                pi[(t, c.reduce(t as i64 - z.x as i64))] =
                    c.root_of_unity(z.xi as i64 * t as i64);
            }
            let dev = (sys.frame_operator() * &pi - &pi * sys.frame_operator()).norm();
            assert!(dev < 1e-10 * sys.frame_operator().norm());
        }
    }

    #[test]
    fn gamma_solves_the_frame_equation() {
        let c = ctx(48);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let gv = nalgebra::DVector::from_column_slice(sys.window(Window::Dual).values());
        let back = sys.frame_operator() * gv;
        let dev: f64 = back
            .iter()
            .zip(g.values())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(dev < 1e-10 * g.norm());
    }

    #[test]
    fn tight_system_has_unit_frame_bounds() {
        let c = ctx(48);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 4, 4).unwrap();
        let tsys = sys.tight_system().unwrap();
        let (a, b) = tsys.frame_bounds();
        assert!((a - 1.0).abs() < 1e-10 && (b - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dual_and_primary_ranges_coincide() {
        // principal angles between ran C_gamma and ran C_g below 1e-8
        let c = ctx(36);
        let g = periodized_gaussian(c);
        let sys = GaborSystem::build(&g, 6, 3).unwrap();
        let u1 = crate::linalg::range_basis(&sys.analysis_matrix(Window::Primary), 1e-12);
        let u2 = crate::linalg::range_basis(&sys.analysis_matrix(Window::Dual), 1e-12);
        assert_eq!(u1.ncols(), 36);
        assert_eq!(u2.ncols(), 36);
        let overlap = u1.adjoint() * u2;
        let svs = overlap.svd(false, false).singular_values;
        for &s in svs.iter() {
            // cos(theta) >= cos(1e-8)
            assert!(s >= 1.0 - 1e-12, "principal angle too large: cos = {s}");
        }
    }
}
