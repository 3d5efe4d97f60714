use super::*;
use crate::coefficients::{s_factor, CoefTable};
use crate::geometry::{dot, gradient_fd, hyperbolic_laplacian_fd, FdScheme, Params};
use crate::quadrature::{sphere_integrate, SphereIntegrand};

fn table(n: usize, alpha: f64) -> CoefTable {
    CoefTable::new(Params::new(n, alpha).unwrap(), 120, 4).unwrap()
}

fn engines() -> Vec<KernelSeries> {
    let mut out = Vec::new();
    for (n, alpha) in [(3, 0.0), (3, 1.5), (4, 0.5)] {
        out.push(KernelSeries::bergman(&table(n, alpha), 1e-13, 20_000).unwrap());
        out.push(KernelSeries::euclid(Params::new(n, alpha).unwrap(), 1e-13, 20_000).unwrap());
    }
    out.push(KernelSeries::hardy(3, 1e-13, 20_000).unwrap());
    out.push(KernelSeries::hardy(5, 1e-13, 20_000).unwrap());
    out
}

fn point(n: usize, seed: usize, radius: f64) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|i| ((seed * 7 + i * 13) % 17) as f64 / 17.0 - 0.45).collect();
    let norm = dot(&v, &v).sqrt();
    v.iter().map(|c| radius * c / norm).collect()
}

#[test]
fn value_at_origin_is_one() {
    for e in engines() {
        let n = e.params().n;
        for seed in 0..5 {
            let x = point(n, seed, 0.8);
            let v = e.eval(&x, &vec![0.0; n]).unwrap();
            assert_eq!(v.terms_used, 1);
            assert!((v.value - 1.0).abs() < 1e-15, "{:?}: {}", e.kind(), v.value);
        }
    }
}

#[test]
fn symmetric_in_arguments() {
    for e in engines() {
        let n = e.params().n;
        for seed in 0..8 {
            let x = point(n, seed, 0.75);
            let y = point(n, seed + 3, 0.85);
            let a = e.eval(&x, &y).unwrap();
            let b = e.eval(&y, &x).unwrap();
            assert!((a.value - b.value).abs() <= 1e-12 * a.value.abs().max(1.0));
        }
    }
}

#[test]
fn matches_termwise_zonal_sum() {
    let t = table(3, 1.5);
    let e = KernelSeries::bergman(&t, 1e-14, 20_000).unwrap();
    let x = [0.3, -0.2, 0.1];
    let y = [0.1, 0.35, -0.25];
    let (r, rho) = (dot(&x, &x).sqrt(), dot(&y, &y).sqrt());
    let coef = t.sequence(80).unwrap();
    let mut direct = 0.0;
    for m in 0..80 {
        let s = s_factor(m, r, &t.params).unwrap() * s_factor(m, rho, &t.params).unwrap();
        direct += coef[m] * s * zonal(m, &x, &y, false).unwrap().value;
    }
    let v = e.eval(&x, &y).unwrap();
    assert!((v.value - direct).abs() < 1e-13 * direct.abs(), "{} vs {direct}", v.value);
    assert!(v.tail_bound < 1e-13 * direct.abs().max(1.0));
}

#[test]
fn euclidean_closed_form() {
    // γ_m = (2m+3)/3 for n = 3, α = 0
    let p = Params::new(3, 0.0).unwrap();
    let e = KernelSeries::euclid(p, 1e-14, 20_000).unwrap();
    let x = [0.4, 0.1, -0.3];
    let y = [-0.2, 0.5, 0.2];
    let mut direct = 0.0;
    for m in 0..200 {
        direct += (2.0 * m as f64 + 3.0) / 3.0 * zonal(m, &x, &y, false).unwrap().value;
    }
    let v = e.eval(&x, &y).unwrap();
    assert!((v.value - direct).abs() < 1e-12 * direct.abs());
}

#[test]
fn hardy_is_poisson_product() {
    // K(x, y) = ∫_S P_h(x, ζ) P_h(y, ζ) dσ(ζ) with P_h(x, ζ) = ((1-|x|²)/|x-ζ|²)^{n-1}
    let e = KernelSeries::hardy(3, 1e-14, 20_000).unwrap();
    let x = [0.3, 0.1, -0.2];
    let y = [-0.1, 0.4, 0.25];
    let poisson = |a: &[f64], z: &[f64]| {
        let d: f64 = a.iter().zip(z).map(|(p, q)| (p - q) * (p - q)).sum();
        ((1.0 - dot(a, a)) / d).powi(2)
    };
    let f = |z: &[f64]| Ok(poisson(&x, z) * poisson(&y, z));
    let want = sphere_integrate(SphereIntegrand::Field(&f), 3, 1e-13).unwrap();
    let v = e.eval(&x, &y).unwrap();
    assert!((v.value - want).abs() < 1e-11 * want, "{} vs {want}", v.value);
    assert!(v.value > 0.0);
}

#[test]
fn hyperbolic_harmonic_in_first_argument() {
    for e in engines().into_iter().filter(|e| e.kind() != KernelKind::Euclid) {
        let n = e.params().n;
        let y = point(n, 4, 0.6);
        let f = |x: &[f64]| e.eval(x, &y).map(|v| v.value);
        let x = point(n, 1, 0.7);
        let coarse = hyperbolic_laplacian_fd(&f, &x, FdScheme::new(2e-2)).unwrap().abs();
        let fine = hyperbolic_laplacian_fd(&f, &x, FdScheme::new(1e-2)).unwrap().abs();
        let refined = hyperbolic_laplacian_fd(&f, &x, FdScheme::new(1e-2).richardson()).unwrap().abs();
        assert!(refined < 1e-7, "{:?} n={n}: {refined}", e.kind());
        assert!((3.5..4.5).contains(&(coarse / fine)), "{:?}: no h² decay ({coarse} vs {fine})", e.kind());
    }
}

#[test]
fn gradient_matches_differences() {
    for e in engines() {
        let n = e.params().n;
        for seed in 0..3 {
            let x = point(n, seed, 0.75);
            let y = point(n, seed + 5, 0.8);
            let f = |p: &[f64]| e.eval(p, &y).map(|v| v.value);
            let fd = gradient_fd(&f, &x, FdScheme::new(1e-3).richardson()).unwrap();
            let g = e.gradient(&x, &y).unwrap();
            for i in 0..n {
                assert!((g[i].value - fd[i]).abs() < 1e-8 * fd[i].abs().max(1.0), "{:?} i={i}", e.kind());
            }
        }
        // at the origin the gradient is Σ over the degree-one term only
        let y = point(n, 2, 0.75);
        let g = e.gradient(&vec![0.0; n], &y).unwrap();
        let f = |p: &[f64]| e.eval(p, &y).map(|v| v.value);
        let fd = gradient_fd(&f, &vec![0.0; n], FdScheme::new(1e-3).richardson()).unwrap();
        for i in 0..n {
            assert!((g[i].value - fd[i]).abs() < 1e-8 * fd[i].abs().max(1.0));
        }
    }
}

#[test]
fn diagonal_terms_are_positive_and_tail_is_bounded() {
    let e = KernelSeries::bergman(&table(3, 0.0), 1e-12, 400_000).unwrap();
    for r in [0.9, 0.99, 0.999] {
        let x = [r, 0.0, 0.0];
        let v = e.eval(&x, &x).unwrap();
        assert!(v.value > 0.0);
        // the majorant exceeds the diagonal sum by at most S_m(0)² ~ m for n = 3
        assert!(v.tail_bound <= 1e-12 * v.value * v.terms_used as f64);
    }
}

#[test]
fn truncation_cap_is_reported() {
    let e = KernelSeries::hardy(3, 1e-12, 100).unwrap();
    let x = [0.999, 0.0, 0.0];
    assert!(matches!(e.eval(&x, &x), Err(crate::Error::Truncation { cap: 100, .. })));
    assert!(e.eval(&[1.0, 0.0, 0.0], &x).is_err());
}
