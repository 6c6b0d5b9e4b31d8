use almost_hilbert::hilbert_embed::{weighted_inner, EmbeddingSpace, Weights};
use almost_hilbert::integral_ops::{hilbert_multiplier, random_band_limited};
use almost_hilbert::ks2::{functionals, ks2_inner, ks2_norm, pairing_index, pairing_order, sup_norm_constant, CubeSystem};
use almost_hilbert::operator_algebra::{random_operator, BOperator};
use almost_hilbert::rng::{random_complex_vector, seeded};
use almost_hilbert::sbasis::{duality_map, fourier_sbasis, lp_norm, pairing, GridFunction, Interval};
use almost_hilbert::schatten::schatten_norm;
use num_complex::Complex64;
use proptest::prelude::*;

fn step(heights: &[f64]) -> GridFunction {
    let n = heights.len();
    GridFunction::from_real_fn_1d(Interval::unit(), 512, |x| heights[((x * n as f64) as usize).min(n - 1)]).unwrap()
}

fn heights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_round_trip(k in 1u64..200_000) {
        let (l, i) = pairing_order(k).unwrap();
        prop_assert_eq!(pairing_index(l, i).unwrap(), k);
    }

    #[test]
    fn pairing_inverse(l in 1u64..300, i in 1u64..300) {
        let k = pairing_index(l, i).unwrap();
        prop_assert_eq!(pairing_order(k).unwrap(), (l, i));
    }

    #[test]
    fn adjoint_is_involutive(seed in any::<u64>(), n in 1usize..12) {
        let a = random_operator(&mut seeded(seed), &Weights::dyadic(n));
        let back = a.adjoint().adjoint();
        let d = (a.matrix() - back.matrix()).frobenius_norm();
        prop_assert!(d <= 1e-10 * a.matrix().frobenius_norm());
    }

    #[test]
    fn adjoint_identity(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = seeded(seed);
        let w = Weights::dyadic(n);
        let a = random_operator(&mut rng, &w);
        let u = random_complex_vector(&mut rng, n);
        let v = random_complex_vector(&mut rng, n);
        let lhs = weighted_inner(&a.apply(&u), &v, &w);
        let rhs = weighted_inner(&u, &a.adjoint().apply(&v), &w);
        let scale = a.h_norm().unwrap() * weighted_inner(&u, &u, &w).re.sqrt() * weighted_inner(&v, &v, &w).re.sqrt();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale.max(1e-300));
    }

    #[test]
    fn identity_is_selfadjoint(n in 1usize..20) {
        let id = BOperator::identity(Weights::dyadic(n));
        prop_assert!((id.adjoint().matrix() - id.matrix()).max_abs() == 0.0);
    }

    #[test]
    fn schatten_norms_decrease_in_p(seed in any::<u64>(), n in 1usize..10) {
        let a = random_operator(&mut seeded(seed), &Weights::dyadic(n));
        let mut prev = f64::INFINITY;
        for p in [1.0, 1.5, 2.0, 3.0, 8.0] {
            let s = schatten_norm(&a, p).unwrap();
            prop_assert!(s <= prev * (1.0 + 1e-12));
            prev = s;
        }
    }

    #[test]
    fn duality_map_identity(coef in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6), p in 1.2f64..5.0) {
        let space = EmbeddingSpace::new(fourier_sbasis(6, p, 256).unwrap());
        let c: Vec<Complex64> = coef.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let u = space.reconstruct(&c).unwrap();
        let nu = lp_norm(&u, p).unwrap();
        prop_assume!(nu > 1e-6);
        let j = duality_map(&u, p).unwrap();
        let q = p / (p - 1.0);
        prop_assert!((pairing(&u, &j).unwrap() - nu * nu).norm() <= 1e-9 * nu * nu);
        prop_assert!((lp_norm(&j, q).unwrap() - nu).abs() <= 1e-9 * nu);
    }

    #[test]
    fn ks2_gram_is_hermitian_psd(a in heights(), b in heights()) {
        let sys = CubeSystem::unit(1, 128).unwrap();
        let (f, g) = (step(&a), step(&b));
        let fg = ks2_inner(&f, &g, 128, &sys).unwrap();
        let gf = ks2_inner(&g, &f, 128, &sys).unwrap();
        prop_assert!((fg - gf.conj()).norm() <= 1e-12 * (1.0 + fg.norm()));
        let ff = ks2_inner(&f, &f, 128, &sys).unwrap();
        let gg = ks2_inner(&g, &g, 128, &sys).unwrap();
        prop_assert!(ff.re >= 0.0 && ff.im.abs() <= 1e-14 * (1.0 + ff.re));
        prop_assert!(fg.norm_sqr() <= ff.re * gg.re * (1.0 + 1e-10) + 1e-300);
    }

    #[test]
    fn ks2_below_sup(a in heights()) {
        let sys = CubeSystem::unit(1, 128).unwrap();
        let f = step(&a);
        let sup = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        prop_assert!(ks2_norm(&f, 128, &sys).unwrap() <= sup_norm_constant(1) * sup * (1.0 + 1e-9));
    }

    #[test]
    fn functionals_bounded_by_l1(a in heights()) {
        let sys = CubeSystem::unit(1, 64).unwrap();
        let f = step(&a);
        let l1 = lp_norm(&f, 1.0).unwrap();
        for z in functionals(&f, 64, &sys).unwrap() {
            prop_assert!(z.norm() <= l1 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn hilbert_isometry_and_square(seed in any::<u64>(), log_m in 4u32..11, modes in 1usize..8) {
        let m = 1usize << log_m;
        let f = random_band_limited(&mut seeded(seed), m, modes.min(m / 2 - 1)).unwrap();
        let hf = hilbert_multiplier(&f);
        prop_assert!((hf.l2_norm() - f.l2_norm()).abs() <= 1e-12 * f.l2_norm());
        let back = hilbert_multiplier(&hf).scale(Complex64::new(-1.0, 0.0));
        prop_assert!(back.sub(&f).unwrap().l2_norm() <= 1e-12 * f.l2_norm());
    }
}
