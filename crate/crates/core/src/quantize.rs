//! Weyl and Kohn-Nirenberg quantization of phase-space symbols and the
//! twisted product.
//!
//! Normalization: `sigma == 1` maps to the identity operator in both
//! calculi, which pins the `1/N` factor in the kernels. The Weyl branch
//! needs 2 invertible mod N and therefore odd N; even N is a typed
//! error, never an approximation. The twisted product is computed by
//! composing operators and dequantizing, which is exact in finite
//! dimensions.

use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::linalg::CMat;
use crate::tf::{GroupCtx, PhaseArray, Signal};
use num_complex::Complex64;

/// A complex symbol `sigma(x, xi)` on phase space, row-major with `x`
/// as the row index.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    ctx: GroupCtx,
    values: Vec<Complex64>,
}

impl Symbol {
    pub fn new(ctx: GroupCtx, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != ctx.n() * ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n() * ctx.n(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Parameter("symbol contains non-finite entries".into()));
        }
        Ok(Self { ctx, values })
    }

    pub fn from_fn(ctx: GroupCtx, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = ctx.n();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self { ctx, values }
    }

    pub fn constant(ctx: GroupCtx, c: Complex64) -> Self {
        Self {
            ctx,
            values: vec![c; ctx.n() * ctx.n()],
        }
    }

    pub fn zero(ctx: GroupCtx) -> Self {
        Self::constant(ctx, Complex64::default())
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

    pub fn conj(&self) -> Symbol {
        Symbol {
            ctx: self.ctx,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Symbol {
        Symbol {
            ctx: self.ctx,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Symbol) -> Symbol {
        Symbol {
            ctx: self.ctx,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Symbol) -> Symbol {
        Symbol {
            ctx: self.ctx,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Weak pairing `<sigma, W> = sum sigma conj(W)` against a phase
    /// array, e.g. a cross-Wigner distribution.
    pub fn pair(&self, w: &PhaseArray) -> Complex64 {
        self.values
            .iter()
            .zip(w.values())
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

/// A dense `N x N` operator acting on signals.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    ctx: GroupCtx,
    m: CMat,
}

impl OperatorMatrix {
    pub fn new(ctx: GroupCtx, m: CMat) -> Result<Self> {
        if m.nrows() != ctx.n() || m.ncols() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: m.nrows().max(m.ncols()),
            });
        }
        Ok(Self { ctx, m })
    }

    pub fn identity(ctx: GroupCtx) -> Self {
        Self {
            ctx,
            m: CMat::identity(ctx.n(), ctx.n()),
        }
    }

    pub fn zero(ctx: GroupCtx) -> Self {
        Self {
            ctx,
            m: CMat::zeros(ctx.n(), ctx.n()),
        }
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn apply(&self, f: &Signal) -> Result<Signal> {
        self.ctx.check_same(f.ctx())?;
        let v = nalgebra::DVector::from_column_slice(f.values());
        let out = &self.m * v;
        Signal::new(self.ctx, out.iter().copied().collect())
    }

    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.ctx.check_same(other.ctx)?;
        Ok(OperatorMatrix {
            ctx: self.ctx,
            m: &self.m * &other.m,
        })
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            ctx: self.ctx,
            m: self.m.adjoint(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }
}

/// Which symbol-operator correspondence to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Calculus {
    Weyl,
    Kn,
}

/// Kohn-Nirenberg quantization: the operator with matrix entries
/// `T(x, y) = (1/N) sum_xi sigma(x, xi) exp(2 pi i (x-y) xi / N)`,
/// so that `(T f)(x) = (1/N) sum_xi sigma(x, xi) fhat(xi) exp(2 pi i x xi / N)`.
pub fn kn_quantize(sigma: &Symbol) -> OperatorMatrix {
    let ctx = sigma.ctx();
    let n = ctx.n();
    let dft = Dft::new(n);
    // s(x, d) = (1/N) sum_xi sigma(x, xi) w^{d xi}: inverse DFT per row
    let mut rows = sigma.values().to_vec();
    for row in rows.chunks_exact_mut(n) {
        dft.inverse(row);
    }
    let mut m = CMat::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let d = ctx.reduce(x as i64 - y as i64);
            m[(x, y)] = rows[x * n + d];
        }
    }
    OperatorMatrix { ctx, m }
}

/// Weyl quantization (odd N): matrix entries
/// `K(x, y) = (1/N) sum_xi sigma(inv2 (x+y), xi) exp(2 pi i (x-y) xi / N)`.
/// Real symbols give Hermitian operators.
pub fn weyl_quantize(sigma: &Symbol) -> Result<OperatorMatrix> {
    let ctx = sigma.ctx();
    let inv2 = ctx.inv2()? as i64;
    let n = ctx.n();
    let dft = Dft::new(n);
    let mut rows = sigma.values().to_vec();
    for row in rows.chunks_exact_mut(n) {
        dft.inverse(row);
    }
    let mut m = CMat::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let u = ctx.reduce(inv2 * (x as i64 + y as i64));
            let d = ctx.reduce(x as i64 - y as i64);
            m[(x, y)] = rows[u * n + d];
        }
    }
    Ok(OperatorMatrix { ctx, m })
}

pub fn quantize(sigma: &Symbol, calculus: Calculus) -> Result<OperatorMatrix> {
    match calculus {
        Calculus::Kn => Ok(kn_quantize(sigma)),
        Calculus::Weyl => weyl_quantize(sigma),
    }
}

/// Inverse of the corresponding quantization map; both directions are
/// linear bijections of `N x N` arrays.
pub fn dequantize(t: &OperatorMatrix, calculus: Calculus) -> Result<Symbol> {
    let ctx = t.ctx();
    let n = ctx.n();
    let dft = Dft::new(n);
    let mut rows = vec![Complex64::default(); n * n];
    match calculus {
        Calculus::Kn => {
            for x in 0..n {
                for d in 0..n {
                    let y = ctx.reduce(x as i64 - d as i64);
                    rows[x * n + d] = t.m[(x, y)];
                }
            }
        }
        Calculus::Weyl => {
            let inv2 = ctx.inv2()? as i64;
            for u in 0..n {
                for d in 0..n {
                    let x = ctx.reduce(u as i64 + inv2 * d as i64);
                    let y = ctx.reduce(u as i64 - inv2 * d as i64);
                    rows[u * n + d] = t.m[(x, y)];
                }
            }
        }
    }
    // forward DFT in the offset variable recovers sigma(x, .)
    for row in rows.chunks_exact_mut(n) {
        dft.forward(row);
    }
    Symbol::new(ctx, rows)
}

/// Twisted product: the symbol of the composition
/// `quantize(sigma) * quantize(tau)`. Associative with unit `sigma == 1`.
pub fn twisted_product(sigma: &Symbol, tau: &Symbol, calculus: Calculus) -> Result<Symbol> {
    sigma.ctx().check_same(tau.ctx())?;
    let a = quantize(sigma, calculus)?;
    let b = quantize(tau, calculus)?;
    dequantize(&a.compose(&b)?, calculus)
}

/// The Kohn-Nirenberg symbol of the operator `weyl_quantize(sigma)`,
/// realized as a chirp multiplier on the 2-D Fourier side:
/// `sigma_kn_hat(p, q) = sigma_hat(p, q) exp(2 pi i inv2 p q / N)`.
pub fn kn_from_weyl(sigma: &Symbol) -> Result<Symbol> {
    let ctx = sigma.ctx();
    let inv2 = ctx.inv2()? as i64;
    let n = ctx.n();
    let dft = Dft::new(n);
    let mut buf = sigma.values().to_vec();
    dft.forward_2d(&mut buf);
    for p in 0..n {
        for q in 0..n {
            buf[p * n + q] *= ctx.root_of_unity(inv2 * (p * q) as i64);
        }
    }
    dft.inverse_2d(&mut buf);
    Symbol::new(ctx, buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{random_signal, random_symbol};
    use crate::tf::cross_wigner;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: usize) -> GroupCtx {
        GroupCtx::new(n).unwrap()
    }

    fn one(n: usize) -> Symbol {
        Symbol::constant(ctx(n), Complex64::new(1.0, 0.0))
    }

    #[test]
    fn kn_of_one_is_identity() {
        let t = kn_quantize(&one(9));
        assert!((t.matrix() - CMat::identity(9, 9)).norm() < 1e-13);
    }

    #[test]
    fn weyl_of_one_is_identity() {
        let t = weyl_quantize(&one(9)).unwrap();
        assert!((t.matrix() - CMat::identity(9, 9)).norm() < 1e-13);
    }

    #[test]
    fn kn_of_position_symbol_is_diagonal() {
        let c = ctx(8);
        let m: Vec<f64> = (0..8).map(|x| 1.0 + (x as f64).sin()).collect();
        let sigma = Symbol::from_fn(c, |x, _| Complex64::new(m[x], 0.0));
        let t = kn_quantize(&sigma);
        for x in 0..8 {
            for y in 0..8 {
                let expect = if x == y {
                    Complex64::new(m[x], 0.0)
                } else {
                    Complex64::default()
                };
                assert!((t.matrix()[(x, y)] - expect).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn kn_of_modulation_symbol_translates() {
        // sigma(x, xi) = exp(2 pi i xi s / N) acts as f(x) -> f(x + s)
        let c = ctx(8);
        let s = 3i64;
        let sigma = Symbol::from_fn(c, |_, xi| c.root_of_unity(xi as i64 * s));
        let t = kn_quantize(&sigma);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = random_signal(c, &mut rng);
        let out = t.apply(&f).unwrap();
        // direct summation oracle
        for x in 0..8i64 {
            let mut acc = Complex64::default();
            for xi in 0..8i64 {
                let mut fhat = Complex64::default();
                for u in 0..8i64 {
                    fhat += f.get(u) * c.root_of_unity(-(xi * u));
                }
                acc += sigma.get(x as usize, xi as usize) * fhat * c.root_of_unity(x * xi) / 8.0;
            }
            assert!((acc - out.get(x)).norm() < 1e-12);
            assert!((out.get(x) - f.get(x + s)).norm() < 1e-12);
        }
    }

    #[test]
    fn weyl_rejects_even_order() {
        let sigma = one(8);
        assert!(matches!(weyl_quantize(&sigma), Err(Error::EvenOrder(8))));
        let t = OperatorMatrix::identity(ctx(8));
        assert!(matches!(dequantize(&t, Calculus::Weyl), Err(Error::EvenOrder(8))));
    }

    #[test]
    fn real_weyl_symbols_give_hermitian_operators() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let sigma = random_symbol(c, &mut rng);
        let re = Symbol::from_fn(c, |x, xi| Complex64::new(sigma.get(x, xi).re, 0.0));
        let t = weyl_quantize(&re).unwrap();
        assert!((t.matrix() - t.matrix().adjoint()).norm() < 1e-12 * t.matrix().norm());
    }

    #[test]
    fn conjugate_symbol_gives_adjoint_operator() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let sigma = random_symbol(c, &mut rng);
        let t = weyl_quantize(&sigma).unwrap();
        let tc = weyl_quantize(&sigma.conj()).unwrap();
        assert!((tc.matrix() - t.matrix().adjoint()).norm() < 1e-12 * t.matrix().norm());
    }

    #[test]
    fn dequantize_identity_kn_is_ones() {
        let t = OperatorMatrix::identity(ctx(12));
        let sigma = dequantize(&t, Calculus::Kn).unwrap();
        for v in sigma.values() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn round_trips_are_exact() {
        let c16 = ctx(16);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let sigma = random_symbol(c16, &mut rng);
        let back = dequantize(&kn_quantize(&sigma), Calculus::Kn).unwrap();
        assert!(back.sub(&sigma).norm() < 1e-12 * sigma.norm());

        let c15 = ctx(15);
        let sigma = random_symbol(c15, &mut rng);
        let back = dequantize(&weyl_quantize(&sigma).unwrap(), Calculus::Weyl).unwrap();
        assert!(back.sub(&sigma).norm() < 1e-12 * sigma.norm());
    }

    #[test]
    fn quantization_is_linear() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let s1 = random_symbol(c, &mut rng);
        let s2 = random_symbol(c, &mut rng);
        let a = Complex64::new(0.7, -1.3);
        let lhs = weyl_quantize(&s1.scale(a).add(&s2)).unwrap();
        let rhs = weyl_quantize(&s1).unwrap().matrix() * a + weyl_quantize(&s2).unwrap().matrix();
        assert!((lhs.matrix() - &rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn weak_pairing_constant_is_stable() {
        // <sigma^w f, h> = c_N <sigma, W(h, f)> with one constant for all
        // inputs; the constant is measured, not asserted.
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let mut constants = Vec::new();
        for _ in 0..50 {
            let sigma = random_symbol(c, &mut rng);
            let f = random_signal(c, &mut rng);
            let h = random_signal(c, &mut rng);
            let lhs = weyl_quantize(&sigma).unwrap().apply(&f).unwrap().inner(&h);
            let rhs = sigma.pair(&cross_wigner(&h, &f).unwrap());
            constants.push(lhs / rhs);
        }
        let c0 = constants[0];
        for cn in &constants {
            assert!((cn - c0).norm() < 1e-12 * c0.norm());
        }
    }

    #[test]
    fn twisted_product_unit() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let sigma = random_symbol(c, &mut rng);
        let u = one(15);
        for calculus in [Calculus::Weyl, Calculus::Kn] {
            let left = twisted_product(&sigma, &u, calculus).unwrap();
            let right = twisted_product(&u, &sigma, calculus).unwrap();
            assert!(left.sub(&sigma).norm() < 1e-11 * sigma.norm());
            assert!(right.sub(&sigma).norm() < 1e-11 * sigma.norm());
        }
    }

    #[test]
    fn twisted_product_is_associative() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let s1 = random_symbol(c, &mut rng);
        let s2 = random_symbol(c, &mut rng);
        let s3 = random_symbol(c, &mut rng);
        let left = twisted_product(&twisted_product(&s1, &s2, Calculus::Weyl).unwrap(), &s3, Calculus::Weyl).unwrap();
        let right = twisted_product(&s1, &twisted_product(&s2, &s3, Calculus::Weyl).unwrap(), Calculus::Weyl).unwrap();
        assert!(left.sub(&right).norm() < 1e-10 * left.norm());
    }

    #[test]
    fn twisted_product_distributes() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let s1 = random_symbol(c, &mut rng);
        let s2 = random_symbol(c, &mut rng);
        let s3 = random_symbol(c, &mut rng);
        let lhs = twisted_product(&s1, &s2.add(&s3), Calculus::Weyl).unwrap();
        let rhs = twisted_product(&s1, &s2, Calculus::Weyl)
            .unwrap()
            .add(&twisted_product(&s1, &s3, Calculus::Weyl).unwrap());
        assert!(lhs.sub(&rhs).norm() < 1e-10 * lhs.norm());
    }

    #[test]
    fn twisted_product_of_position_symbols_is_pointwise() {
        // xi-independent symbols compose to their pointwise product in
        // the KN calculus (both quantize to diagonal matrices)
        let c = ctx(8);
        let m1: Vec<f64> = (0..8).map(|x| 1.0 + (x as f64).cos()).collect();
        let m2: Vec<f64> = (0..8).map(|x| 2.0 - (x as f64 / 3.0).sin()).collect();
        let s1 = Symbol::from_fn(c, |x, _| Complex64::new(m1[x], 0.0));
        let s2 = Symbol::from_fn(c, |x, _| Complex64::new(m2[x], 0.0));
        let prod = twisted_product(&s1, &s2, Calculus::Kn).unwrap();
        for x in 0..8 {
            for xi in 0..8 {
                let expect = Complex64::new(m1[x] * m2[x], 0.0);
                assert!((prod.get(x, xi) - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn operator_norm_submultiplicative_through_dequantize() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let s1 = random_symbol(c, &mut rng);
        let s2 = random_symbol(c, &mut rng);
        let prod = twisted_product(&s1, &s2, Calculus::Weyl).unwrap();
        let n1 = crate::linalg::op_norm(weyl_quantize(&s1).unwrap().matrix());
        let n2 = crate::linalg::op_norm(weyl_quantize(&s2).unwrap().matrix());
        let np = crate::linalg::op_norm(weyl_quantize(&prod).unwrap().matrix());
        assert!(np <= n1 * n2 * (1.0 + 1e-12));
    }

    #[test]
    fn chirp_route_matches_composition_route() {
        let c = ctx(15);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let sigma = random_symbol(c, &mut rng);
        let via_chirp = kn_from_weyl(&sigma).unwrap();
        let via_composition =
            dequantize(&weyl_quantize(&sigma).unwrap(), Calculus::Kn).unwrap();
        assert!(via_chirp.sub(&via_composition).norm() < 1e-10 * sigma.norm());
        // and the defining property
        let lhs = kn_quantize(&via_chirp);
        let rhs = weyl_quantize(&sigma).unwrap();
        assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-10 * rhs.matrix().norm());
    }

    #[test]
    fn kn_from_weyl_fixes_constant_and_position_symbols() {
        let c = ctx(15);
        let u = one(15);
        assert!(kn_from_weyl(&u).unwrap().sub(&u).norm() < 1e-12 * u.norm());
        let m: Vec<f64> = (0..15).map(|x| 1.0 + 0.1 * x as f64).collect();
        let s = Symbol::from_fn(c, |x, _| Complex64::new(m[x], 0.0));
        assert!(kn_from_weyl(&s).unwrap().sub(&s).norm() < 1e-11 * s.norm());
    }
}
