//! Property tests over randomized inputs and group orders.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfzn_core::symbols::{random_signal, random_symbol};
use tfzn_core::{
    cross_wigner, dequantize, kn_quantize, mixed_norm, stft, tf_shift, weyl_quantize, Calculus,
    CoeffArray, GroupCtx, Lattice, MixedNormSpec, ModerateWeight, PhasePoint, Weight,
};

fn signals(n: usize, seed: u64) -> (GroupCtx, tfzn_core::Signal, tfzn_core::Signal) {
    let ctx = GroupCtx::new(n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_signal(ctx, &mut rng);
    let g = random_signal(ctx, &mut rng);
    (ctx, f, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tf_shift_preserves_inner_products(n in 2usize..24, seed in 0u64..1u64 << 48,
                                         x in 0i64..32, xi in 0i64..32) {
        let (ctx, f, g) = signals(n, seed);
        let z = PhasePoint::new(ctx, x, xi);
        let lhs = tf_shift(&f, z).inner(&tf_shift(&g, z));
        prop_assert!((lhs - f.inner(&g)).norm() < 1e-11 * (1.0 + lhs.norm()));
    }

    #[test]
    fn stft_parseval_holds(n in 2usize..24, seed in 0u64..1u64 << 48) {
        let (_, f, g) = signals(n, seed);
        let v = stft(&f, &g).unwrap();
        let rhs = n as f64 * f.norm().powi(2) * g.norm().powi(2);
        prop_assert!((v.sum_abs_sqr() - rhs).abs() < 1e-10 * rhs);
    }

    #[test]
    fn wigner_parity_contract(n in 2usize..24, seed in 0u64..1u64 << 48) {
        let (_, f, g) = signals(n, seed);
        let w = cross_wigner(&f, &g);
        if n % 2 == 0 {
            prop_assert!(w.is_err());
        } else {
            prop_assert!(w.is_ok());
        }
    }

    #[test]
    fn quantization_round_trips(n in 2usize..20, seed in 0u64..1u64 << 48) {
        let ctx = GroupCtx::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = random_symbol(ctx, &mut rng);
        let back = dequantize(&kn_quantize(&sigma), Calculus::Kn).unwrap();
        prop_assert!(back.sub(&sigma).norm() < 1e-11 * sigma.norm());
        if n % 2 == 1 {
            let back = dequantize(&weyl_quantize(&sigma).unwrap(), Calculus::Weyl).unwrap();
            prop_assert!(back.sub(&sigma).norm() < 1e-11 * sigma.norm());
        }
    }

    #[test]
    fn mixed_norms_are_norms(seed in 0u64..1u64 << 48,
                             pi in 0usize..3, qi in 0usize..3, s in 0.0f64..3.0) {
        let es = [1.0, 2.0, f64::INFINITY];
        let ctx = GroupCtx::new(24).unwrap();
        let lat = Lattice::new(ctx, 4, 3).unwrap();
        let m = ModerateWeight::self_moderate(ctx, Weight::polynomial(s).unwrap()).unwrap();
        let spec = MixedNormSpec::new(es[pi], es[qi], m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = tfzn_core::symbols::random_coeffs(lat, &mut rng);
        let b = tfzn_core::symbols::random_coeffs(lat, &mut rng);
        let na = mixed_norm(&a, &spec);
        let nb = mixed_norm(&b, &spec);
        prop_assert!(na > 0.0);
        // homogeneity
        let c = Complex64::new(-0.3, 1.7);
        let mut scaled = CoeffArray::zero(lat);
        for (s_slot, v) in scaled.values_mut().iter_mut().zip(a.values()) {
            *s_slot = v * c;
        }
        prop_assert!((mixed_norm(&scaled, &spec) - c.norm() * na).abs() < 1e-10 * na);
        // triangle inequality
        let mut sum = CoeffArray::zero(lat);
        for ((s_slot, x), y) in sum.values_mut().iter_mut().zip(a.values()).zip(b.values()) {
            *s_slot = x + y;
        }
        prop_assert!(mixed_norm(&sum, &spec) <= (na + nb) * (1.0 + 1e-12));
    }

    #[test]
    fn weight_submultiplicativity_on_random_points(
        s in 0.0f64..4.0, a in 0.0f64..2.0, b in 0.05f64..0.95,
        px in 0i64..48, pxi in 0i64..48, qx in 0i64..48, qxi in 0i64..48,
    ) {
        let ctx = GroupCtx::new(48).unwrap();
        for w in [Weight::polynomial(s).unwrap(), Weight::subexponential(a, b).unwrap()] {
            let p = PhasePoint::new(ctx, px, pxi);
            let q = PhasePoint::new(ctx, qx, qxi);
            let lhs = w.eval(ctx, p.add(q, ctx));
            let rhs = w.eval(ctx, p) * w.eval(ctx, q);
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}
