use proptest::prelude::*;

use vortex_sheets::fourier::{analyze_even, analyze_odd};
use vortex_sheets::{AliasPolicy, EvenSeries, Grid, OddSeries, ParamPoint, SheetState, SteadyFunctional};

fn coeffs(n: usize, scale: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-scale..scale, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synthesis_then_analysis_is_identity(m in 1usize..4, a in coeffs(6, 1.0), b in coeffs(6, 1.0)) {
        let grid = Grid::for_modes(m, 6);
        let even = EvenSeries::new(m, a).unwrap();
        let odd = OddSeries::new(m, b).unwrap();
        let policy = AliasPolicy::default();
        let (e, _) = analyze_even(&grid, &even.evaluate(&grid), m, 6, &policy).unwrap();
        let (o, _) = analyze_odd(&grid, &odd.evaluate(&grid), m, 6, &policy).unwrap();
        for (x, y) in e.coeffs().iter().zip(even.coeffs()) {
            prop_assert!((x - y).abs() < 1e-13);
        }
        for (x, y) in o.coeffs().iter().zip(odd.coeffs()) {
            prop_assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn norms_are_homogeneous(a in coeffs(5, 1.0), f in -3.0f64..3.0, s in 0.0f64..3.0) {
        let even = EvenSeries::new(2, a).unwrap();
        let lhs = even.scaled(f).sobolev_norm(s);
        prop_assert!((lhs - f.abs() * even.sobolev_norm(s)).abs() <= 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn half_period_shift_commutes_with_the_steady_map(
        a in coeffs(4, 0.02),
        b in coeffs(4, 0.02),
        c in -1.5f64..1.5,
        sigma in 0.2f64..2.5,
        gamma in -1.5f64..1.5,
    ) {
        // x -> x + π/m flips the sign of every odd fold-mode
        let flip = |v: &[f64]| -> Vec<f64> {
            v.iter().enumerate().map(|(i, x)| if i % 2 == 0 { -x } else { *x }).collect()
        };
        let m = 2;
        let f = SteadyFunctional::for_modes(m, 4);
        let p = ParamPoint::new(c, sigma, gamma).unwrap();
        let u = SheetState::new(EvenSeries::new(m, a.clone()).unwrap(), OddSeries::new(m, b.clone()).unwrap()).unwrap();
        let v = SheetState::new(EvenSeries::new(m, flip(&a)).unwrap(), OddSeries::new(m, flip(&b)).unwrap()).unwrap();
        let (r1, r2) = f.evaluate(&p, &u).unwrap();
        let (s1, s2) = f.evaluate(&p, &v).unwrap();
        for (x, y) in flip(r1.coeffs()).iter().zip(s1.coeffs()) {
            prop_assert!((x - y).abs() < 1e-13);
        }
        for (x, y) in flip(r2.coeffs()).iter().zip(s2.coeffs()) {
            prop_assert!((x - y).abs() < 1e-13);
        }
    }
}
