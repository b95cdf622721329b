//! Univariate and bivariate standard normal CDFs.
//!
//! `Φ` is evaluated through the complementary error function. `Φ₂` follows
//! the Drezner–Wesolowsky method with Genz's double-precision modifications
//! (the `BVND` routine distributed with the `mvtnorm` TVPACK sources): a
//! Gauss–Legendre quadrature of the single-integral form for |ρ| ≤ 0.925 and
//! a transformed expansion for ρ close to ±1. Absolute error is far below
//! the 1e-7 contract everywhere on |x|, |y| ≤ 8.

use crate::Error;

/// Standard normal CDF `Φ(x) = erfc(-x/√2) / 2`.
///
/// Accepts ±∞ and returns the exact limits 0 and 1.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

// Gauss-Legendre abscissae/weights as (weight, point) pairs; each point is
// evaluated at 1 - x and 1 + x, so these tables carry half the nodes.
#[allow(clippy::excessive_precision)]
const GL_6: [(f64, f64); 3] = [
    (0.1713244923791705, -0.9324695142031522),
    (0.3607615730481384, -0.6612093864662647),
    (0.4679139345726904, -0.2386191860831970),
];

#[allow(clippy::excessive_precision)]
const GL_12: [(f64, f64); 6] = [
    (0.04717533638651177, -0.9815606342467191),
    (0.1069393259953183, -0.9041172563704750),
    (0.1600783285433464, -0.7699026741943050),
    (0.2031674267230659, -0.5873179542866171),
    (0.2334925365383547, -0.3678314989981802),
    (0.2491470458134029, -0.1252334085114692),
];

#[allow(clippy::excessive_precision)]
const GL_20: [(f64, f64); 10] = [
    (0.01761400713915212, -0.9931285991850949),
    (0.04060142980038694, -0.9639719272779138),
    (0.06267204833410906, -0.9122344282513259),
    (0.08327674157670475, -0.8391169718222188),
    (0.1019301198172404, -0.7463319064601508),
    (0.1181945319615184, -0.6360536807265150),
    (0.1316886384491766, -0.5108670019508271),
    (0.1420961093183821, -0.3737060887154196),
    (0.1491729864726037, -0.2277858511416451),
    (0.1527533871307259, -0.07652652113349733),
];

fn quadrature(rho_abs: f64) -> &'static [(f64, f64)] {
    if rho_abs < 0.3 {
        &GL_6
    } else if rho_abs < 0.75 {
        &GL_12
    } else {
        &GL_20
    }
}

/// Upper-orthant probability `P[X > h, Y > k]` for standard normals with
/// correlation `r`, |r| < 1. Port of the TVPACK `BVND` routine.
fn upper_orthant(dh: f64, dk: f64, r: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let h = dh;
    let mut k = dk;
    let mut hk = h * k;
    let mut bvn = 0.0;

    if r.abs() < 0.925 {
        if r.abs() > 0.0 {
            let hs = (h * h + k * k) / 2.0;
            let asr = r.asin();
            for &(w, x) in quadrature(r.abs()) {
                for sign in [-1.0, 1.0] {
                    let sn = (asr * (sign * x + 1.0) / 2.0).sin();
                    bvn += w * ((sn * hk - hs) / (1.0 - sn * sn)).exp();
                }
            }
            bvn = bvn * asr / (2.0 * two_pi);
        }
        bvn + std_normal_cdf(-h) * std_normal_cdf(-k)
    } else {
        if r < 0.0 {
            k = -k;
            hk = -hk;
        }
        if r.abs() < 1.0 {
            let a_sq = (1.0 - r) * (1.0 + r);
            let mut a = a_sq.sqrt();
            let b_sq = (h - k) * (h - k);
            let c = (4.0 - hk) / 8.0;
            let d = (12.0 - hk) / 16.0;
            let asr = -(b_sq / a_sq + hk) / 2.0;
            if asr > -100.0 {
                bvn = a
                    * asr.exp()
                    * (1.0 - c * (b_sq - a_sq) * (1.0 - d * b_sq / 5.0) / 3.0
                        + c * d * a_sq * a_sq / 5.0);
            }
            if -hk < 100.0 {
                let b = b_sq.sqrt();
                bvn -= (-hk / 2.0).exp()
                    * two_pi.sqrt()
                    * std_normal_cdf(-b / a)
                    * b
                    * (1.0 - c * b_sq * (1.0 - d * b_sq / 5.0) / 3.0);
            }
            a /= 2.0;
            for &(w, x) in quadrature(r.abs()) {
                for sign in [-1.0, 1.0] {
                    let xs = (a * (sign * x + 1.0)).powi(2);
                    let rs = (1.0 - xs).sqrt();
                    let asr = -(b_sq / xs + hk) / 2.0;
                    if asr > -100.0 {
                        bvn += a
                            * w
                            * asr.exp()
                            * ((-hk * (1.0 - rs) / (2.0 * (1.0 + rs))).exp() / rs
                                - (1.0 + c * xs * (1.0 + d * xs)));
                    }
                }
            }
            bvn = -bvn / two_pi;
        }
        if r > 0.0 {
            bvn + std_normal_cdf(-h.max(k))
        } else {
            bvn = -bvn;
            if k > h {
                bvn += std_normal_cdf(k) - std_normal_cdf(h);
            }
            bvn
        }
    }
}

/// Bivariate standard normal CDF `Φ₂(x, y; ρ) = P[Z₁ ≤ x, Z₂ ≤ y]`.
///
/// `ρ = ±1` degenerates exactly: `Φ(min(x, y))` and
/// `max(0, Φ(x) + Φ(y) − 1)` respectively. Rejects |ρ| > 1.
pub fn bivariate_normal_cdf(x: f64, y: f64, rho: f64) -> Result<f64, Error> {
    if rho.is_nan() || rho.abs() > 1.0 {
        return Err(Error::InvalidCorrelation(rho));
    }
    if x.is_nan() || y.is_nan() {
        return Ok(f64::NAN);
    }
    if rho == 1.0 {
        return Ok(std_normal_cdf(x.min(y)));
    }
    if rho == -1.0 {
        return Ok((std_normal_cdf(x) + std_normal_cdf(y) - 1.0).max(0.0));
    }
    if x == f64::NEG_INFINITY || y == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(std_normal_cdf(y));
    }
    if y == f64::INFINITY {
        return Ok(std_normal_cdf(x));
    }
    Ok(upper_orthant(-x, -y, rho).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_basics() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        assert_eq!(std_normal_cdf(f64::NEG_INFINITY), 0.0);
        assert_eq!(std_normal_cdf(f64::INFINITY), 1.0);
        // 97.5th percentile of the standard normal.
        assert!((std_normal_cdf(1.959963985) - 0.975).abs() < 1e-9);
        assert!((std_normal_cdf(-1.2) - 0.11506967022170822).abs() < 1e-12);
        // Complement symmetry.
        for x in [-3.7, -0.4, 0.9, 2.3] {
            assert!((std_normal_cdf(x) + std_normal_cdf(-x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn phi2_independence_and_quarter() {
        let v = bivariate_normal_cdf(0.0, 0.0, 0.0).unwrap();
        assert!((v - 0.25).abs() < 1e-14);
        for (x, y) in [(0.3, -1.2), (2.0, 0.5), (-0.7, -0.7)] {
            let v = bivariate_normal_cdf(x, y, 0.0).unwrap();
            assert!((v - std_normal_cdf(x) * std_normal_cdf(y)).abs() < 1e-14);
        }
    }

    #[test]
    fn phi2_arcsine_identity_at_origin() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut rho = -0.99;
        while rho <= 0.99 {
            let v = bivariate_normal_cdf(0.0, 0.0, rho).unwrap();
            let expect = 0.25 + rho.asin() / two_pi;
            assert!((v - expect).abs() < 1e-9, "rho={rho}: {v} vs {expect}");
            rho += 0.01;
        }
        let third = bivariate_normal_cdf(0.0, 0.0, 0.5).unwrap();
        assert!((third - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn phi2_degenerate_correlations() {
        for (x, y) in [(0.5, -0.3), (-2.0, -2.0), (1.7, 2.4), (0.0, 0.0)] {
            let plus = bivariate_normal_cdf(x, y, 1.0).unwrap();
            assert!((plus - std_normal_cdf(x.min(y))).abs() < 1e-12);
            let minus = bivariate_normal_cdf(x, y, -1.0).unwrap();
            let expect = (std_normal_cdf(x) + std_normal_cdf(y) - 1.0).max(0.0);
            assert!((minus - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn phi2_frozen_reference_values() {
        // Independently computed with a high-precision bivariate normal CDF.
        let cases = [
            (0.5, -0.3, 0.7, 0.3567836347968547),
            (1.0, 0.2, -0.4, 0.45120425759818733),
            (-1.5, 2.0, 0.9, 0.066807201268858),
            (2.0, 2.0, 0.5, 0.9585526823388045),
        ];
        for (x, y, rho, expect) in cases {
            let v = bivariate_normal_cdf(x, y, rho).unwrap();
            assert!(
                (v - expect).abs() < 1e-10,
                "({x},{y};{rho}): {v} vs {expect}"
            );
        }
    }

    #[test]
    fn phi2_symmetry_and_marginals() {
        let xs = [-3.0, -1.0, -0.2, 0.0, 0.4, 1.3, 2.8];
        let rhos = [-0.98, -0.8, -0.5, -0.1, 0.0, 0.3, 0.6, 0.9, 0.99];
        for &rho in &rhos {
            for &x in &xs {
                for &y in &xs {
                    let v = bivariate_normal_cdf(x, y, rho).unwrap();
                    let t = bivariate_normal_cdf(y, x, rho).unwrap();
                    assert!((v - t).abs() < 1e-12, "symmetry at ({x},{y};{rho})");
                    assert!((0.0..=1.0).contains(&v));
                    // Reduction identity: P[X<=x, Y<=y] + P[X<=x, Y>y] = Φ(x).
                    let flip = bivariate_normal_cdf(x, -y, -rho).unwrap();
                    assert!(
                        (v + flip - std_normal_cdf(x)).abs() < 5e-14,
                        "reduction at ({x},{y};{rho}): {}",
                        v + flip - std_normal_cdf(x)
                    );
                }
            }
            // Infinite arguments collapse to marginals.
            assert_eq!(
                bivariate_normal_cdf(f64::NEG_INFINITY, 0.3, rho).unwrap(),
                0.0
            );
            let m = bivariate_normal_cdf(f64::INFINITY, 0.3, rho).unwrap();
            assert!((m - std_normal_cdf(0.3)).abs() < 1e-15);
        }
    }

    #[test]
    fn phi2_monotone_in_each_argument_and_rho() {
        let grid: Vec<f64> = (-8..=8).map(|i| i as f64 / 2.0).collect();
        let rhos: Vec<f64> = (-9..=9).map(|i| i as f64 / 10.0).collect();
        for &rho in &rhos {
            for &y in &grid {
                let mut prev = 0.0;
                for &x in &grid {
                    let v = bivariate_normal_cdf(x, y, rho).unwrap();
                    assert!(v + 1e-14 >= prev, "x-monotonicity at ({x},{y};{rho})");
                    prev = v;
                }
            }
        }
        for &x in &grid {
            for &y in &grid {
                let mut prev = 0.0;
                for (i, &rho) in rhos.iter().enumerate() {
                    let v = bivariate_normal_cdf(x, y, rho).unwrap();
                    if i > 0 {
                        assert!(v + 1e-12 >= prev, "rho-monotonicity at ({x},{y};{rho})");
                    }
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn phi2_rejects_bad_correlation() {
        assert!(matches!(
            bivariate_normal_cdf(0.0, 0.0, 1.5),
            Err(Error::InvalidCorrelation(_))
        ));
        assert!(matches!(
            bivariate_normal_cdf(0.0, 0.0, f64::NAN),
            Err(Error::InvalidCorrelation(_))
        ));
    }
}
