//! Admissible weights, moderate weights, and weighted mixed-norm
//! sequence norms over lattice coefficients.
//!
//! Weights are evaluated at signed representatives in `[-N/2, N/2)^2`;
//! `|z|` always means the Euclidean norm of that representative. The
//! canonical-range alternative would make every weight periodic and
//! destroy submultiplicativity, so it is not offered.

use crate::error::{Error, Result};
use crate::gabor::{CoeffArray, GaborSystem, Window};
use crate::gabor_matrix::{cv_norm, GaborMatrix};
use crate::symbols::complex_gaussian;
use crate::tf::{GroupCtx, PhasePoint, Signal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pairs sampled when validating submultiplicativity or moderateness.
const SAMPLE_PAIRS: usize = 10_000;
/// Fixed seed for those samples, so construction is reproducible.
const WEIGHT_CHECK_SEED: u64 = 0x5eed_ca11;

#[derive(Clone, Debug)]
enum WeightKind {
    Constant,
    Polynomial { s: f64 },
    Subexponential { a: f64, b: f64 },
    Custom { ctx: GroupCtx, table: Vec<f64>, grs: bool },
}

/// A submultiplicative, even, normalized weight on phase space.
///
/// The built-in families `(1 + |z|)^s` and `exp(a |z|^b)` with `b < 1`
/// also satisfy the spectral-radius condition `v(n z)^{1/n} -> 1`;
/// custom tables carry that property as unverifiable metadata.
#[derive(Clone, Debug)]
pub struct Weight {
    kind: WeightKind,
}

impl Weight {
    pub fn constant() -> Weight {
        Weight {
            kind: WeightKind::Constant,
        }
    }

    /// `v(z) = (1 + |z|)^s`, `s >= 0`.
    pub fn polynomial(s: f64) -> Result<Weight> {
        if !s.is_finite() || s < 0.0 {
            return Err(Error::Weight(format!("polynomial exponent must be >= 0, got {s}")));
        }
        Ok(Weight {
            kind: WeightKind::Polynomial { s },
        })
    }

    /// `v(z) = exp(a |z|^b)` with `a >= 0` and `0 <= b < 1`. With
    /// `b = 0` only `a = 0` keeps `v(0) = 1`.
    pub fn subexponential(a: f64, b: f64) -> Result<Weight> {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::Weight(format!("subexponential rate must be >= 0, got {a}")));
        }
        if !b.is_finite() || !(0.0..1.0).contains(&b) {
            return Err(Error::Weight(format!(
                "subexponential power must lie in [0, 1), got {b}"
            )));
        }
        if b == 0.0 && a != 0.0 {
            return Err(Error::Weight(
                "subexponential power 0 forces v(0) = exp(a) != 1".into(),
            ));
        }
        Ok(Weight {
            kind: WeightKind::Subexponential { a, b },
        })
    }

    /// A table weight on `Z_N x Z_N` (canonical indexing `x * N + xi`).
    /// Checks normalization, evenness under coordinate sign flips, and
    /// submultiplicativity on a fixed-seed random pair sample; the
    /// spectral-radius property cannot be checked at finite N and is
    /// recorded via the `grs` flag.
    pub fn custom(ctx: GroupCtx, table: Vec<f64>, grs: bool) -> Result<Weight> {
        let n = ctx.n();
        if table.len() != n * n {
            return Err(Error::Weight(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if table.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(Error::Weight("table entries must be positive and finite".into()));
        }
        if (table[0] - 1.0).abs() > 1e-12 {
            return Err(Error::Weight(format!("v(0) must be 1, got {}", table[0])));
        }
        let at = |x: i64, xi: i64| table[ctx.reduce(x) * n + ctx.reduce(xi)];
        for x in 0..n as i64 {
            for xi in 0..n as i64 {
                let v = at(x, xi);
                for (fx, fxi) in [(-x, xi), (x, -xi), (-x, -xi)] {
                    if (at(fx, fxi) - v).abs() > 1e-12 * v {
                        return Err(Error::Weight(format!(
                            "not even in each coordinate at ({x}, {xi})"
                        )));
                    }
                }
            }
        }
        let w = Weight {
            kind: WeightKind::Custom { ctx, table, grs },
        };
        w.check_submultiplicative(ctx)?;
        Ok(w)
    }

    /// Whether the spectral-radius condition holds: analytic for the
    /// built-in families, caller-asserted metadata for tables.
    pub fn satisfies_grs(&self) -> bool {
        match &self.kind {
            WeightKind::Custom { grs, .. } => *grs,
            _ => true,
        }
    }

    /// Stable identifier used as a key in reports.
    pub fn id(&self) -> String {
        match &self.kind {
            WeightKind::Constant => "constant".into(),
            WeightKind::Polynomial { s } => format!("polynomial(s={s})"),
            WeightKind::Subexponential { a, b } => format!("subexponential(a={a},b={b})"),
            WeightKind::Custom { ctx, grs, .. } => format!("custom(N={},grs={})", ctx.n(), grs),
        }
    }

    /// Evaluate at the signed representative of a phase-space point.
    pub fn eval(&self, ctx: GroupCtx, z: PhasePoint) -> f64 {
        match &self.kind {
            WeightKind::Constant => 1.0,
            WeightKind::Polynomial { s } => (1.0 + z.signed_len(ctx)).powf(*s),
            WeightKind::Subexponential { a, b } => (a * z.signed_len(ctx).powf(*b)).exp(),
            WeightKind::Custom { ctx: tctx, table, .. } => {
                assert_eq!(
                    *tctx, ctx,
                    "custom weight evaluated over a different group order"
                );
                table[z.x * tctx.n() + z.xi]
            }
        }
    }

    /// The weight `v o j^{-1}`. The built-in families are radial and
    /// unchanged; tables are permuted by the rotation, which preserves
    /// all weight axioms.
    pub fn compose_j_inv(&self) -> Weight {
        match &self.kind {
            WeightKind::Custom { ctx, table, grs } => {
                let n = ctx.n();
                let mut out = vec![0.0; n * n];
                for x in 0..n {
                    for xi in 0..n {
                        let zj = crate::tf::j_inv(PhasePoint { x, xi }, *ctx);
                        out[x * n + xi] = table[zj.x * n + zj.xi];
                    }
                }
                Weight {
                    kind: WeightKind::Custom {
                        ctx: *ctx,
                        table: out,
                        grs: *grs,
                    },
                }
            }
            _ => self.clone(),
        }
    }

    fn check_submultiplicative(&self, ctx: GroupCtx) -> Result<()> {
        let n = ctx.n() as i64;
        let mut rng = ChaCha8Rng::seed_from_u64(WEIGHT_CHECK_SEED);
        let check = |w: PhasePoint, z: PhasePoint| -> Result<()> {
            let sum = w.add(z, ctx);
            let lhs = self.eval(ctx, sum);
            let rhs = self.eval(ctx, w) * self.eval(ctx, z);
            if lhs > rhs * (1.0 + 1e-12) {
                return Err(Error::Weight(format!(
                    "not submultiplicative: v({},{}) = {lhs} > {rhs}",
                    sum.x, sum.xi
                )));
            }
            Ok(())
        };
        check(PhasePoint::zero(), PhasePoint::zero())?;
        for _ in 0..SAMPLE_PAIRS {
            let w = PhasePoint::new(ctx, rng.random_range(0..n), rng.random_range(0..n));
            let z = PhasePoint::new(ctx, rng.random_range(0..n), rng.random_range(0..n));
            check(w, z)?;
        }
        Ok(())
    }
}

/// A weight `m` moderate with respect to an admissible `v`:
/// `m(w + z) <= C v(z) m(w)`. The constant is measured on a fixed-seed
/// pair sample (always including the zero pair, so `C >= 1`).
#[derive(Clone, Debug)]
pub struct ModerateWeight {
    ctx: GroupCtx,
    m: Weight,
    base: Weight,
    constant: f64,
}

impl ModerateWeight {
    pub fn new(ctx: GroupCtx, m: Weight, base: Weight) -> Result<Self> {
        let n = ctx.n() as i64;
        let mut rng = ChaCha8Rng::seed_from_u64(WEIGHT_CHECK_SEED ^ 0x0dd);
        let mut constant = 0.0f64;
        let visit = |w: PhasePoint, z: PhasePoint, constant: &mut f64| {
            let ratio = m.eval(ctx, w.add(z, ctx)) / (base.eval(ctx, z) * m.eval(ctx, w));
            if ratio > *constant {
                *constant = ratio;
            }
        };
        visit(PhasePoint::zero(), PhasePoint::zero(), &mut constant);
        for _ in 0..SAMPLE_PAIRS {
            let w = PhasePoint::new(ctx, rng.random_range(0..n), rng.random_range(0..n));
            let z = PhasePoint::new(ctx, rng.random_range(0..n), rng.random_range(0..n));
            visit(w, z, &mut constant);
        }
        if !constant.is_finite() {
            return Err(Error::Weight("moderateness constant is not finite".into()));
        }
        Ok(Self {
            ctx,
            m,
            base,
            constant,
        })
    }

    /// `m` used both as itself and as the governing weight.
    pub fn self_moderate(ctx: GroupCtx, w: Weight) -> Result<Self> {
        Self::new(ctx, w.clone(), w)
    }

    pub fn ctx(&self) -> GroupCtx {
        self.ctx
    }

    pub fn weight(&self) -> &Weight {
        &self.m
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    /// The stored moderateness constant `C`.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn eval(&self, z: PhasePoint) -> f64 {
        self.m.eval(self.ctx, z)
    }
}

/// Exponents and weight of a weighted mixed norm: inner `p` over the
/// time index, outer `q` over the frequency index. `f64::INFINITY`
/// selects the max.
#[derive(Clone, Debug)]
pub struct MixedNormSpec {
    pub p: f64,
    pub q: f64,
    pub m: ModerateWeight,
}

impl MixedNormSpec {
    pub fn new(p: f64, q: f64, m: ModerateWeight) -> Result<Self> {
        for (name, e) in [("p", p), ("q", q)] {
            if e.is_nan() || e < 1.0 {
                return Err(Error::Parameter(format!(
                    "exponent {name} must lie in [1, inf], got {e}"
                )));
            }
        }
        Ok(Self { p, q, m })
    }

    /// Key used in report tables.
    pub fn id(&self) -> String {
        let fmt = |e: f64| {
            if e.is_infinite() {
                "inf".to_string()
            } else {
                format!("{e}")
            }
        };
        format!("p={},q={},m={}", fmt(self.p), fmt(self.q), self.m.weight().id())
    }
}

/// The weighted mixed norm
/// `( sum_l ( sum_k |c(k,l)|^p m(ka, lb)^p )^{q/p} )^{1/q}`,
/// with max replacing the sum at infinite exponents.
pub fn mixed_norm(c: &CoeffArray, spec: &MixedNormSpec) -> f64 {
    let lat = c.lattice();
    let ctx = lat.ctx();
    debug_assert_eq!(ctx, spec.m.ctx());
    let mut outer_sum = 0.0f64;
    let mut outer_max = 0.0f64;
    for l in 0..lat.freq_count() {
        let mut inner_sum = 0.0f64;
        let mut inner_max = 0.0f64;
        for k in 0..lat.time_count() {
            let z = lat.point(lat.index(k, l));
            let w = spec.m.eval(z);
            let v = c.get(k, l).norm() * w;
            if spec.p.is_infinite() {
                inner_max = inner_max.max(v);
            } else {
                inner_sum += v.powf(spec.p);
            }
        }
        let inner = if spec.p.is_infinite() {
            inner_max
        } else {
            inner_sum.powf(1.0 / spec.p)
        };
        if spec.q.is_infinite() {
            outer_max = outer_max.max(inner);
        } else {
            outer_sum += inner.powf(spec.q);
        }
    }
    if spec.q.is_infinite() {
        outer_max
    } else {
        outer_sum.powf(1.0 / spec.q)
    }
}

/// Discrete modulation-space norm: the mixed norm of the Gabor
/// coefficients of `f` taken with the selected window.
pub fn mod_norm(
    f: &Signal,
    sys: &GaborSystem,
    spec: &MixedNormSpec,
    window: Window,
) -> Result<f64> {
    Ok(mixed_norm(&sys.analyze(f, window)?, spec))
}

/// Result of [`young_bound_check`].
#[derive(Clone, Debug)]
pub struct YoungReport {
    /// `cv_norm(M, v) * C_m`, the claimed operator-norm bound.
    pub bound: f64,
    /// Largest observed `|Mc| / |c|` ratio in the mixed norm.
    pub max_ratio: f64,
    /// Whether every trial stayed within the bound.
    pub holds: bool,
}

/// Convolution-domination bound: for random coefficient arrays the
/// mixed-norm ratio of `M c` to `c` must stay below
/// `cv_norm(M, v) * C_m`.
pub fn young_bound_check(
    m: &GaborMatrix,
    v: &Weight,
    spec: &MixedNormSpec,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<YoungReport> {
    let bound = cv_norm(m, v) * spec.m.constant();
    let lat = m.lattice();
    let mut max_ratio = 0.0f64;
    for _ in 0..trials {
        let mut c = CoeffArray::zero(lat);
        for slot in c.values_mut() {
            *slot = complex_gaussian(rng);
        }
        let denom = mixed_norm(&c, spec);
        if denom == 0.0 {
            continue;
        }
        let num = mixed_norm(&m.apply(&c)?, spec);
        max_ratio = max_ratio.max(num / denom);
    }
    Ok(YoungReport {
        bound,
        max_ratio,
        holds: max_ratio <= bound * (1.0 + 1e-12),
    })
}

/// Fixed iteration order for `(p, q)` grids in reports and tests.
pub fn pq_grid() -> [(f64, f64); 9] {
    let es = [1.0, 2.0, f64::INFINITY];
    let mut out = [(0.0, 0.0); 9];
    let mut i = 0;
    for &p in &es {
        for &q in &es {
            out[i] = (p, q);
            i += 1;
        }
    }
    out
}
