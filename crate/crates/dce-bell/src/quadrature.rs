//! Gauss-Legendre rules and adaptive panel quadrature used by the
//! correlator oracle path.

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Build an n-point rule by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> GaussLegendre {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussLegendre { nodes, weights }
}

/// Legendre P_n(x) and its derivative by the recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

impl GaussLegendre {
    /// Iterate (node, weight) pairs mapped to [a, b].
    pub fn scaled(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.scaled(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// Adaptive 1D quadrature: per-panel fixed-order rule, panels split until
/// the two-half refinement agrees with the parent estimate.
pub fn adaptive_1d<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let rule = gauss_legendre(15);
    let whole = rule.integrate(a, b, f);
    let mut converged = true;
    let v = adapt_1d(f, &rule, a, b, whole, tol, max_depth, &mut converged);
    if converged {
        Ok(v)
    } else {
        Err(Error::Convergence { last_estimate: v })
    }
}

#[allow(clippy::too_many_arguments)]
fn adapt_1d<F>(
    f: &F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    converged: &mut bool,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let mid = 0.5 * (a + b);
    let left = rule.integrate(a, mid, f);
    let right = rule.integrate(mid, b, f);
    let refined = left + right;
    if (refined - whole).abs() <= tol {
        return refined;
    }
    if depth == 0 {
        *converged = false;
        return refined;
    }
    adapt_1d(f, rule, a, mid, left, 0.5 * tol, depth - 1, converged)
        + adapt_1d(f, rule, mid, b, right, 0.5 * tol, depth - 1, converged)
}

/// Adaptive quadrature over the rectangle [ax, bx] × [ay, by] by nesting
/// the 1D scheme. The inner integral is resolved a factor tighter than the
/// outer request.
pub fn adaptive_2d<F>(f: &F, ax: f64, bx: f64, ay: f64, by: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let inner_tol = 0.1 * tol;
    let inner_failed = std::cell::Cell::new(false);
    let outer = |x: f64| match adaptive_1d(&|y| f(x, y), ay, by, inner_tol, 24) {
        Ok(v) => v,
        Err(Error::Convergence { last_estimate }) => {
            inner_failed.set(true);
            last_estimate
        }
        Err(_) => unreachable!(),
    };
    let v = adaptive_1d(&outer, ax, bx, tol, 24)?;
    if inner_failed.get() {
        return Err(Error::Convergence { last_estimate: v });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(8);
        // degree 15 is exact for an 8-point rule
        let v = rule.integrate(-1.0, 1.0, |x| x.powi(14));
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
        let w_sum: f64 = rule.weights.iter().sum();
        assert!((w_sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_1d_gaussian() {
        let v = adaptive_1d(&|x: f64| (-x * x).exp(), -10.0, 10.0, 1e-12, 30).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn adaptive_2d_separable() {
        let v = adaptive_2d(
            &|x: f64, y: f64| (-(x * x + y * y)).exp(),
            -8.0,
            8.0,
            -8.0,
            8.0,
            1e-10,
        )
        .unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn adaptive_1d_handles_kink() {
        let v = adaptive_1d(&|x: f64| x.abs(), -1.0, 1.0, 1e-12, 30).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }
}
