use std::sync::OnceLock;

use hyperkernel::coefficients::{s_factor, s_factor_integral};
use hyperkernel::geometry::{ahlfors_bracket, mobius_map};
use hyperkernel::kernels::{harmonic_dimensions, zonal, DEFAULT_TRUNCATION_CAP};
use hyperkernel::quadrature::{ball_integrate, gauss_jacobi_rule, BallIntegrand};
use hyperkernel::specfun::{
    gamma, gamma_ratio, gauss_value, hyp2f1, hyp3f2_unit, unit_series, GammaRatioSpec, HypParams21, HypParams32,
};
use hyperkernel::verify::{Bound, ReportParams, VerifyReport, DEFAULT_PARAMS};
use hyperkernel::{BallPoint, CoefTable, KernelSeries, Params};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn near_pole(x: f64) -> bool {
    x < 0.05 && (x - x.round()).abs() < 0.05
}

fn point(n: usize, max_norm: f64) -> impl Strategy<Value = Vec<f64>> {
    (prop::collection::vec(-1.0..1.0f64, n), 0.0..max_norm).prop_map(|(v, r)| {
        let len = v.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-3);
        v.into_iter().map(|c| c * r / len).collect()
    })
}

fn engines() -> &'static [(KernelSeries, KernelSeries)] {
    static CELL: OnceLock<Vec<(KernelSeries, KernelSeries)>> = OnceLock::new();
    CELL.get_or_init(|| {
        DEFAULT_PARAMS
            .iter()
            .map(|&(n, alpha)| {
                let table = CoefTable::with_defaults(Params::new(n, alpha).unwrap()).unwrap();
                let fine = KernelSeries::bergman(&table, 1e-13, DEFAULT_TRUNCATION_CAP).unwrap();
                let coarse = KernelSeries::bergman(&table, 1e-6, DEFAULT_TRUNCATION_CAP).unwrap();
                (fine, coarse)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn euler_transform(a in -2.0..3.0f64, b in -2.0..3.0f64, c in 0.3..4.0f64, z in -0.9..0.9f64) {
        prop_assume!(!near_pole(c - a) && !near_pole(c - b));
        let lhs = hyp2f1(&HypParams21::new(a, b, c).unwrap(), z).unwrap();
        let rhs = (1.0 - z).powf(c - a - b) * hyp2f1(&HypParams21::new(c - a, c - b, c).unwrap(), z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1e-3), "{lhs} vs {rhs}");
    }

    #[test]
    fn gauss_value_matches_series(a in -2.0..3.0f64, b in -2.0..3.0f64, excess in 0.5..4.0f64) {
        let c = a + b + excess;
        prop_assume!(!near_pole(c) && !near_pole(c - a) && !near_pole(c - b));
        let closed = gauss_value(a, b, c).unwrap();
        let series = unit_series(&[a, b], &[c]).unwrap();
        prop_assert!((closed - series).abs() <= 1e-9 * closed.abs().max(1e-3), "{closed} vs {series}");
    }

    #[test]
    fn dixon_sum(a in 0.5..5.0f64, b in -1.5..1.5f64, c in -1.5..1.5f64) {
        let args = [a - b + 1.0, a - c + 1.0, a / 2.0 - b - c + 1.0, a - b - c + 1.0, a / 2.0 - b + 1.0, a / 2.0 - c + 1.0];
        prop_assume!(a - 2.0 * b - 2.0 * c > -1.5 && args.iter().all(|&x| !near_pole(x)));
        let series = hyp3f2_unit(&HypParams32::new(a, b, c, a - b + 1.0, a - c + 1.0).unwrap()).unwrap();
        let closed = gamma(a / 2.0 + 1.0).unwrap() * gamma(args[0]).unwrap() * gamma(args[1]).unwrap() * gamma(args[2]).unwrap()
            / (gamma(a + 1.0).unwrap() * gamma(args[4]).unwrap() * gamma(args[5]).unwrap() * gamma(args[3]).unwrap());
        prop_assert!((series - closed).abs() <= 1e-10 * closed.abs().max(1e-3), "{series} vs {closed}");
    }

    #[test]
    fn kummer_transform(a in -1.0..2.0f64, b in -1.0..2.0f64, c in -1.0..2.0f64, d in 0.5..4.0f64, e in 0.5..4.0f64) {
        prop_assume!(d + e - a - b - c > 0.5 && e - a > 0.5);
        prop_assume!([a, b, c, d - b, d - c].iter().all(|&x| !near_pole(x)));
        let lhs = hyp3f2_unit(&HypParams32::new(a, b, c, d, e).unwrap()).unwrap();
        let front = gamma(e).unwrap() * gamma(d + e - a - b - c).unwrap() / (gamma(e - a).unwrap() * gamma(d + e - b - c).unwrap());
        let rhs = front * hyp3f2_unit(&HypParams32::new(a, d - b, d - c, d, d + e - b - c).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1e-3), "{lhs} vs {rhs}");
    }

    #[test]
    fn unit_3f2_lies_in_unit_interval(
        a in 0.1..3.0f64, da in 0.05..3.0f64, b in 0.1..3.0f64, eb in 0.05..3.0f64, c in -3.0..-0.01f64,
    ) {
        let v = hyp3f2_unit(&HypParams32::new(a, b, c, a + da, b + eb).unwrap()).unwrap();
        prop_assert!((-1e-14..=1.0 + 1e-14).contains(&v), "{v}");
    }

    #[test]
    fn gamma_ratio_matches_direct(o1 in 0.1..14.0f64, o2 in 0.1..14.0f64, o3 in 0.1..14.0f64, k in 0.0..15.0f64) {
        let spec = GammaRatioSpec::new(&[o1, o2], &[o3]);
        let direct = gamma(o1 + k).unwrap() * gamma(o2 + k).unwrap() / gamma(o3 + k).unwrap();
        prop_assert!(rel(gamma_ratio(&spec, k).unwrap(), direct) <= 1e-13);
    }

    #[test]
    fn bracket_symmetric_and_bounded_below(x in point(3, 0.999), y in point(3, 0.999)) {
        prop_assert_eq!(ahlfors_bracket(&x, &y), ahlfors_bracket(&y, &x));
        let norms = x.iter().map(|c| c * c).sum::<f64>().sqrt() * y.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assert!(ahlfors_bracket(&x, &y) >= 1.0 - norms - 1e-15);
    }

    #[test]
    fn mobius_is_an_involution(a in point(4, 0.95), x in point(4, 0.95)) {
        let a = BallPoint::new(a).unwrap();
        let x = BallPoint::new(x).unwrap();
        let back = mobius_map(&a, &mobius_map(&a, &x).unwrap()).unwrap();
        for (u, v) in back.coords().iter().zip(x.coords()) {
            prop_assert!((u - v).abs() <= 1e-12);
        }
    }

    #[test]
    fn zonal_bounded_by_dimension(m in 0usize..40, x in point(4, 1.0), y in point(4, 1.0)) {
        let z = zonal(m, &x, &y, false).unwrap().value;
        let nx = x.iter().map(|c| c * c).sum::<f64>().sqrt();
        let ny = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        let bound = harmonic_dimensions(m, 4)[m] * (nx * ny).powi(m as i32);
        prop_assert!(z.abs() <= bound * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn s_factor_decreases_from_origin(m in 0usize..200, idx in 0usize..3, r in 0.0..0.99f64, step in 0.001..0.01f64) {
        let (n, alpha) = DEFAULT_PARAMS[idx];
        let params = Params::new(n, alpha).unwrap();
        let here = s_factor(m, r, &params).unwrap();
        let further = s_factor(m, (r + step).min(1.0), &params).unwrap();
        prop_assert!(further <= here * (1.0 + 1e-14));
        prop_assert!(further >= 1.0 - 1e-14);
        prop_assert!((s_factor(m, 1.0, &params).unwrap() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn s_factor_series_matches_integral(m in 0usize..60, idx in 0usize..3, r in 0.0..0.95f64) {
        let (n, alpha) = DEFAULT_PARAMS[idx];
        let params = Params::new(n, alpha).unwrap();
        let series = s_factor(m, r, &params).unwrap();
        prop_assert!(rel(s_factor_integral(m, r, &params).unwrap(), series) <= 1e-10);
    }

    #[test]
    fn ball_measure_has_unit_mass(beta in -0.9..3.0f64, n in 3usize..6) {
        let one = |_: f64, ts: &[f64]| Ok(vec![1.0; ts.len()]);
        let mass = ball_integrate(BallIntegrand::Zonal(&one), n, beta, 1e-12).unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn jacobi_weights_are_positive(npoints in 2usize..40, a0 in -0.9..3.0f64, a1 in -0.9..3.0f64) {
        let rule = gauss_jacobi_rule(npoints, a0, a1).unwrap();
        prop_assert!(rule.weights.iter().all(|&w| w > 0.0));
        prop_assert!(rule.len() == npoints);
    }

    #[test]
    fn verdict_is_a_function_of_statistics(values in prop::collection::vec(-10.0..10.0f64, 1..6), limit in -5.0..5.0f64) {
        let params = ReportParams { n: 3, alpha: 0.0, beta: None, p: None };
        let mut report = VerifyReport::new("synthetic", params, "", 0.0);
        for (k, &v) in values.iter().enumerate() {
            report.check(&format!("s{k}"), v, Bound::at_most(limit));
        }
        prop_assert_eq!(report.passed, values.iter().all(|&v| v <= limit));
        prop_assert_eq!(report.passed, report.verdict());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kernel_is_symmetric(idx in 0usize..3, x in point(4, 0.95), y in point(4, 0.95)) {
        let (fine, _) = &engines()[idx];
        let n = fine.params().n;
        let (x, y) = (&x[..n], &y[..n]);
        let xy = fine.eval(x, y).unwrap();
        let yx = fine.eval(y, x).unwrap();
        let slack = xy.tail_bound + yx.tail_bound + xy.rounding_bound + yx.rounding_bound;
        prop_assert!((xy.value - yx.value).abs() <= slack, "{} vs {}", xy.value, yx.value);
    }

    #[test]
    fn tail_bound_encloses_the_series(idx in 0usize..3, x in point(4, 0.95), y in point(4, 0.95)) {
        let (fine, coarse) = &engines()[idx];
        let n = fine.params().n;
        let (x, y) = (&x[..n], &y[..n]);
        let reference = fine.eval(x, y).unwrap();
        let truncated = coarse.eval(x, y).unwrap();
        prop_assert!(truncated.tail_bound >= 0.0);
        let slack = truncated.tail_bound + reference.tail_bound + truncated.rounding_bound + reference.rounding_bound;
        prop_assert!((truncated.value - reference.value).abs() <= slack);
    }

    #[test]
    fn diagonal_is_positive(idx in 0usize..3, x in point(4, 0.95)) {
        let (fine, _) = &engines()[idx];
        let x = &x[..fine.params().n];
        prop_assert!(fine.eval(x, x).unwrap().value > 0.0);
    }
}
