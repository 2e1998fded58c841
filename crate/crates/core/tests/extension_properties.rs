use fracgs::extension::{c_constant, extend, nodal_domains, profile_m, ExtensionField, Profile};
use fracgs::Grid;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profile_is_a_decreasing_fraction(a in -0.9f64..0.9, r in 1e-6f64..60.0) {
        let t = profile_m(a, &[r, 1.05 * r]).unwrap();
        prop_assert!(t.values[0] > 0.0 && t.values[0] < 1.0);
        prop_assert!(t.values[1] < t.values[0]);
        prop_assert!(t.derivatives[0] < 0.0);
        let p = Profile::new(a).unwrap();
        prop_assert!((p.value(r) - t.values[0]).abs() < 1e-9);
    }

    #[test]
    fn trace_constants_are_reciprocal(a in -0.95f64..0.95) {
        prop_assert!((c_constant(a).unwrap() * c_constant(-a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extension_is_linear(s in 0.2f64..0.95, c in -3.0f64..3.0, shift in -2.0f64..2.0) {
        let g = Grid::new(20.0, 128).unwrap();
        let f = g.sample(|x| (-(x - shift).powi(2)).exp());
        let h = g.sample(|x| 1.0 / (1.0 + x * x));
        let levels = [0.01, 0.1, 1.0];
        let combo = f.axpy(c, &h);
        let (uf, uh, uc) = (extend(&f, s, &levels).unwrap(), extend(&h, s, &levels).unwrap(), extend(&combo, s, &levels).unwrap());
        for m in 0..3 {
            for j in 0..128 {
                prop_assert!((uc.samples[m][j] - uf.samples[m][j] - c * uh.samples[m][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stripes_are_counted(stripes in prop::sample::select(vec![1usize, 2, 4, 8]), rows in 2usize..6) {
        // 2·stripes alternating vertical bands, wrapping in x; the grid needs a power of two
        let n = 4 * stripes * 2;
        let g = Grid::new(1.0, n).unwrap();
        let samples = (0..rows)
            .map(|_| (0..n).map(|j| if (j / 4) % 2 == 0 { 1.0 } else { -1.0 }).collect())
            .collect();
        let levels = (0..rows).map(|m| 1.0 + m as f64).collect();
        let u = ExtensionField { grid: g, levels, samples, a: 0.0 };
        prop_assert_eq!(nodal_domains(&u, 1e-6), 2 * stripes);
    }
}
