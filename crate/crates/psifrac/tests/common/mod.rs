//! Shared oracle machinery for the integration tests. Everything here is
//! deliberately independent of the production integration path: plain
//! Gauss-Legendre panels (nodes from a Newton iteration, not shared
//! tables), geometric mesh grading toward the singular endpoint, and a
//! leading-order analytic tail.

#![allow(dead_code)]

/// Gauss-Legendre nodes/weights on [-1, 1] via Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by upward recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Plain 16-point Gauss-Legendre on [a, b].
pub fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * f(c + h * x))
        .sum::<f64>()
        * h
}

/// Brute-force evaluation of `int_lo^hi (hi - u)^gamma g(u) du` for
/// `gamma > -1` and bounded `g`: geometric panels graded toward BOTH ends
/// (ratio 1/2 down to 1e-12 of the span; `g` may carry a weak derivative
/// singularity at `lo` as well), 24-point Gauss-Legendre per panel, plus
/// the leading analytic tail `g(hi) h^(gamma+1) / (gamma+1)` for the
/// sliver at the singular end.
pub fn graded_singular_hi<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, gamma: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(24);
    let span = hi - lo;
    let weighted = |u: f64| (hi - u).powf(gamma) * g(u);
    let h_min = span * 1e-12;
    let mut sum = 0.0;

    // left half [lo, mid]: the integrand is bounded, so the final sliver
    // can be integrated directly
    let mut w = span * 0.25;
    while w > h_min {
        sum += gl_panel(&weighted, lo + w, lo + 2.0 * w, &nodes, &weights);
        w *= 0.5;
    }
    sum += gl_panel(&weighted, lo, lo + 2.0 * w, &nodes, &weights);

    // right half [mid, hi]: graded toward the algebraic singularity and
    // integrated in the distance variable w = hi - u, where w^gamma is
    // formed without cancellation; the remaining sliver is integrated
    // analytically from the limit of g
    let weighted_w = |w: f64| w.powf(gamma) * g(hi - w);
    let mut w = span * 0.25;
    while w > h_min {
        sum += gl_panel(&weighted_w, w, 2.0 * w, &nodes, &weights);
        w *= 0.5;
    }
    sum + g(hi) * (2.0 * w).powf(gamma + 1.0) / (gamma + 1.0)
}

/// Same for a singularity at the lower end.
pub fn graded_singular_lo<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, gamma: f64) -> f64 {
    graded_singular_hi(|u| g(lo + hi - u), lo, hi, gamma)
}

/// Direct evaluation of the order-`alpha` anchored derivative at `t`
/// (left side) straight from its defining integral in the original
/// variable — no substitution, no shared code with the operator under
/// test: `1/Gamma(n-alpha) * int_a^t psi'(s) (psi(t)-psi(s))^(n-alpha-1) fn_deriv(s) ds`.
///
/// `psi_eval`/`psi_deriv` evaluate the weight, `fn_deriv` is the n-fold
/// weighted derivative of the function (closed form supplied by the test).
#[allow(clippy::too_many_arguments)]
pub fn direct_caputo_left(
    psi_eval: &dyn Fn(f64) -> f64,
    psi_deriv: &dyn Fn(f64) -> f64,
    fn_deriv: &dyn Fn(f64) -> f64,
    gamma_fn: &dyn Fn(f64) -> f64,
    a: f64,
    t: f64,
    alpha: f64,
    n: usize,
) -> f64 {
    if t <= a {
        return 0.0;
    }
    let g = n as f64 - alpha - 1.0;
    let span = t - a;
    // smooth part after peeling off (t - s)^g; the kernel ratio
    // (psi(t)-psi(s))/(t-s) switches to the midpoint derivative once the
    // difference becomes cancellation-dominated
    let smooth = |s: f64| {
        let w = t - s;
        let ratio = if w > 1e-6 * span {
            (psi_eval(t) - psi_eval(s)) / w
        } else {
            psi_deriv(0.5 * (s + t))
        };
        psi_deriv(s) * ratio.powf(g) * fn_deriv(s)
    };
    graded_singular_hi(smooth, a, t, g) / gamma_fn(n as f64 - alpha)
}

/// Relative error against a reference that may be near zero.
pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-12)
}
