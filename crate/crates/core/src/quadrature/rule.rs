//! Gauss–Jacobi rules on `[0, 1]` and composite rules graded toward `t = 1`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::ln_beta;

/// Quadrature rule for `∫₀¹ t^{a0} (1-t)^{a1} g(t) dt ≈ Σ w_i g(t_i)`.
///
/// The weight function is folded into `weights`, so callers only supply `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_exponents: (f64, f64),
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    /// Sum of the weights, i.e. `B(a0 + 1, a1 + 1)`.
    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Three-term recurrence of the monic Jacobi polynomials orthogonal on `[-1, 1]`
/// for `(1-x)^α (1+x)^β`: diagonal `a_k`, off-diagonal `b_k` (`b_0 = 0`).
fn jacobi_matrix(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(n + 1);
    let mut off = vec![0.0; n + 1];
    for k in 0..=n {
        let kf = k as f64;
        diag.push(if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        });
        if k >= 1 {
            let s = 2.0 * kf + ab;
            let sq = if k == 1 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off[k] = sq.sqrt();
        }
    }
    (diag, off)
}

/// Orthonormal `p_N(x)`, `p_N'(x)` and the Christoffel sum `Σ_{k<N} p_k(x)²`.
fn orthonormal_eval(x: f64, n: usize, diag: &[f64], off: &[f64]) -> (f64, f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    let mut christoffel = 0.0;
    for k in 0..n {
        christoffel += p * p;
        let p_next = ((x - diag[k]) * p - off[k] * p_prev) / off[k + 1];
        let d_next = (p + (x - diag[k]) * d - off[k] * d_prev) / off[k + 1];
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d, christoffel)
}

/// Gauss–Jacobi rule with `npoints` nodes for the weight `t^{a0} (1-t)^{a1}` on `[0, 1]`.
///
/// Nodes start from the eigenvalues of the Jacobi matrix and are polished by
/// Newton's method; weights come from the Christoffel function, which keeps
/// small endpoint weights accurate in the relative sense.
pub fn gauss_jacobi_rule(npoints: usize, a0: f64, a1: f64) -> Result<QuadRule> {
    if npoints < 2 {
        return Err(Error::InvalidParameter(format!("Gauss rule needs at least 2 nodes, got {npoints}")));
    }
    if !(a0 > -1.0 && a1 > -1.0) {
        return Err(Error::InvalidParameter(format!("Jacobi exponents must exceed -1, got ({a0}, {a1})")));
    }
    // t^{a0} ↔ (1+x)^β and (1-t)^{a1} ↔ (1-x)^α under t = (1+x)/2
    let (alpha, beta) = (a1, a0);
    let (diag, off) = jacobi_matrix(npoints, alpha, beta);
    let mut jm = DMatrix::<f64>::zeros(npoints, npoints);
    for k in 0..npoints {
        jm[(k, k)] = diag[k];
        if k + 1 < npoints {
            jm[(k, k + 1)] = off[k + 1];
            jm[(k + 1, k)] = off[k + 1];
        }
    }
    let mut xs: Vec<f64> = SymmetricEigen::new(jm).eigenvalues.iter().copied().collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let mass = ln_beta(a0 + 1.0, a1 + 1.0)?.exp();
    let mut nodes = Vec::with_capacity(npoints);
    let mut weights = Vec::with_capacity(npoints);
    for x0 in xs {
        let mut x = x0;
        let mut step = f64::INFINITY;
        for _ in 0..50 {
            let (p, d, _) = orthonormal_eval(x, npoints, &diag, &off);
            step = p / d;
            x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-3) {
                break;
            }
        }
        // near x = 0 the relative test can sit below the rounding floor of p/d
        let converged = step.abs() <= 16.0 * f64::EPSILON;
        if !converged || !(-1.0..=1.0).contains(&x) {
            return Err(Error::Convergence(format!("Gauss-Jacobi node near {x0} ({npoints} points)")));
        }
        let (_, _, christoffel) = orthonormal_eval(x, npoints, &diag, &off);
        nodes.push((1.0 + x) / 2.0);
        weights.push(mass / christoffel);
    }
    Ok(QuadRule { nodes, weights, weight_exponents: (a0, a1) })
}

/// Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre_rule(npoints: usize) -> Result<QuadRule> {
    gauss_jacobi_rule(npoints, 0.0, 0.0)
}

/// Builds composite rules for `∫₀¹ t^{a0}(1-t)^{a1} g(t) dt` whose panels shrink
/// geometrically toward `t = 1`.
///
/// Panels are `[0, 1/2]`, `[1 - 2^{-k}, 1 - 2^{-k-1}]` down to the requested
/// floor, and a final panel touching `t = 1`. The end panels use Gauss–Jacobi
/// rules for the endpoint singularity; interior panels use Gauss–Legendre with
/// the weight folded in. Each dyadic level may be split into several equal panels.
#[derive(Debug, Clone)]
pub struct GradedRuleBuilder {
    a0: f64,
    a1: f64,
    left: QuadRule,
    right: QuadRule,
    inner: QuadRule,
}

impl GradedRuleBuilder {
    pub fn new(order: usize, a0: f64, a1: f64) -> Result<Self> {
        Ok(Self {
            a0,
            a1,
            left: gauss_jacobi_rule(order, a0, 0.0)?,
            right: gauss_jacobi_rule(order, 0.0, a1)?,
            inner: gauss_legendre_rule(order)?,
        })
    }

    pub fn order(&self) -> usize {
        self.inner.len()
    }

    /// Composite rule with last interior panel of width about `floor` and
    /// `split` panels per dyadic level.
    pub fn build(&self, floor: f64, split: usize) -> QuadRule {
        let split = split.max(1);
        let levels = if floor >= 0.5 { 0 } else { (0.5 / floor.max(1e-300)).log2().ceil().min(1000.0) as usize };
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        // [0, h]: weight t^{a0} exact, (1-t)^{a1} folded
        let h0 = 0.5 / split as f64;
        for (&s, &w) in self.left.nodes.iter().zip(&self.left.weights) {
            let t = h0 * s;
            nodes.push(t);
            weights.push(w * h0.powf(self.a0 + 1.0) * (1.0 - t).powf(self.a1));
        }
        let push_inner = |lo: f64, width: f64, nodes: &mut Vec<f64>, weights: &mut Vec<f64>| {
            for (&s, &w) in self.inner.nodes.iter().zip(&self.inner.weights) {
                let t = lo + width * s;
                // 1 - t evaluated from the panel's distance to 1
                let one_minus = (1.0 - lo) - width * s;
                nodes.push(t);
                weights.push(w * width * t.powf(self.a0) * one_minus.powf(self.a1));
            }
        };
        for j in 1..split {
            push_inner(j as f64 * h0, h0, &mut nodes, &mut weights);
        }
        let mut lo = 0.5;
        for _ in 0..levels {
            let width = (1.0 - lo) / 2.0 / split as f64;
            for j in 0..split {
                push_inner(lo + j as f64 * width, width, &mut nodes, &mut weights);
            }
            lo += (1.0 - lo) / 2.0;
        }
        // [lo, 1]: weight (1-t)^{a1} exact, t^{a0} folded
        let width = 1.0 - lo;
        for (&s, &w) in self.right.nodes.iter().zip(&self.right.weights) {
            let t = lo + width * s;
            nodes.push(t);
            weights.push(w * width.powf(self.a1 + 1.0) * t.powf(self.a0));
        }
        QuadRule { nodes, weights, weight_exponents: (self.a0, self.a1) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::beta;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_moments() {
        let r = gauss_jacobi_rule(5, 0.0, 0.0).unwrap();
        assert!(rel(r.integrate(|_| 1.0), 1.0) < 1e-14);
        let r = gauss_jacobi_rule(6, 1.5, 0.0).unwrap();
        assert!(rel(r.integrate(|_| 1.0), 0.4) < 1e-14);
    }

    #[test]
    fn beta_moments() {
        let r = gauss_jacobi_rule(10, 0.5, 1.5).unwrap();
        assert!(rel(r.mass(), beta(1.5, 2.5).unwrap()) < 1e-14);
        for k in 0..20 {
            let want = beta(1.5 + k as f64, 2.5).unwrap();
            assert!(rel(r.integrate(|t| t.powi(k)), want) < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn strong_endpoint_weights() {
        let r = gauss_jacobi_rule(40, -0.9, 7.5).unwrap();
        assert!(r.weights.iter().all(|&w| w > 0.0));
        assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
        for k in [0, 13, 79] {
            let want = beta(0.1 + k as f64, 8.5).unwrap();
            assert!(rel(r.integrate(|t| t.powi(k)), want) < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn graded_rule_resolves_boundary_layer() {
        let b = GradedRuleBuilder::new(12, 0.5, 0.25).unwrap();
        let rule = b.build(1e-12, 1);
        let m = 5000;
        let want = beta(1.5 + m as f64, 1.25).unwrap();
        assert!(rel(rule.integrate(|t| t.powi(m)), want) < 1e-12);
        assert!(rel(rule.mass(), beta(1.5, 1.25).unwrap()) < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gauss_jacobi_rule(1, 0.0, 0.0).is_err());
        assert!(gauss_jacobi_rule(4, -1.0, 0.0).is_err());
    }

    #[test]
    fn midpoint_nodes_converge() {
        for (npoints, a0, a1) in [(4, 0.0, 2.291088344896319), (24, 0.5, 0.0), (8, 0.5, 2.2854785740445283)] {
            let rule = gauss_jacobi_rule(npoints, a0, a1).unwrap();
            let exact = ln_beta(a0 + 2.0, a1 + 1.0).unwrap().exp();
            assert!((rule.integrate(|t| t) - exact).abs() <= 1e-14 * exact);
        }
    }
}
