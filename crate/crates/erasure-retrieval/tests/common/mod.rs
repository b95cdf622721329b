//! Shared oracles for the acceptance suite.

/// Bivariate standard normal density.
fn density(u: f64, v: f64, rho: f64) -> f64 {
    let det = 1.0 - rho * rho;
    let quad = (u * u - 2.0 * rho * u * v + v * v) / (2.0 * det);
    (-quad).exp() / (2.0 * std::f64::consts::PI * det.sqrt())
}

fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, fa, m, fm, flm);
    let right = simpson(m, fm, b, fb, frm);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        refine(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
            + refine(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson over [a, b], pre-split at `hints` so that narrow
/// features are seen by the initial partition.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, hints: &[f64]) -> f64 {
    if a >= b {
        return 0.0;
    }
    let mut cuts: Vec<f64> = hints.iter().copied().filter(|h| *h > a && *h < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let seg_tol = tol / cuts.len() as f64;
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let flo = f(lo);
        let fhi = f(hi);
        let fmid = f(0.5 * (lo + hi));
        let whole = simpson(lo, flo, hi, fhi, fmid);
        total += refine(f, lo, flo, hi, fhi, fmid, whole, seg_tol, 40);
    }
    total
}

/// 2-D adaptive-quadrature oracle for the bivariate normal CDF: nested
/// adaptive Simpson over the truncated lower-left quadrant. The tail mass
/// beyond -8.75 is below 1e-17, far under the oracle's error budget.
///
/// The inner slice at height `u` is a Gaussian bump centered at `rho * u`
/// with width `sqrt(1 - rho^2)`; both integrals are pre-split around their
/// bump so the adaptive refinement cannot step over it.
pub fn bivariate_cdf_oracle(x: f64, y: f64, rho: f64) -> f64 {
    const LO: f64 = -8.75;
    if x <= LO || y <= LO {
        return 0.0;
    }
    let x = x.min(8.75);
    let y = y.min(8.75);
    let width = (1.0 - rho * rho).sqrt().max(1e-8);
    let inner_hints = |center: f64| -> Vec<f64> {
        [-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0]
            .iter()
            .map(|k| center + k * width)
            .collect()
    };
    let outer = |u: f64| {
        let f = |v: f64| density(u, v, rho);
        adaptive_simpson(&f, LO, y, 2e-12, &inner_hints(rho * u))
    };
    // The outer integrand is phi(u) times a smooth 0->1 transition around
    // u = y/rho of width ~ width/|rho|.
    let mut outer_hints = vec![-6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 6.0];
    if rho.abs() > 0.05 {
        let t = y / rho;
        let tw = width / rho.abs();
        for k in [-3.0, -1.0, 0.0, 1.0, 3.0] {
            outer_hints.push(t + k * tw);
        }
    }
    adaptive_simpson(&outer, LO, x, 2e-11, &outer_hints)
}

/// Two-sided slack for comparing two binomial estimates.
pub fn combined_stderr(a_stderr: f64, b_stderr: f64) -> f64 {
    a_stderr + b_stderr
}
