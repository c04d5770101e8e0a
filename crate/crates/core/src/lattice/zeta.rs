//! Riemann zeta, Dirichlet beta and the square-lattice Epstein zeta.

use crate::error::{Error, Result};

/// Terms used by the alternating-series accelerator; the error falls like
/// `(3 + sqrt 8)^-n`, so 40 terms are far below double precision.
const ACCELERATION_TERMS: usize = 40;

/// `sum_{k>=0} (-1)^k a(k)` for a totally monotone sequence `a`, using the
/// Cohen-Rodriguez Villegas-Zagier acceleration.
pub fn accelerated_alternating_sum(a: impl Fn(usize) -> f64) -> f64 {
    let n = ACCELERATION_TERMS as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(n);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = 0.0;
    for k in 0..ACCELERATION_TERMS {
        let kf = k as f64;
        c = b - c;
        sum += c * a(k);
        b *= (kf + n) * (kf - n) / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

/// Dirichlet eta, `sum (-1)^k / (k+1)^x`, for `x > 0`.
pub fn dirichlet_eta(x: f64) -> f64 {
    accelerated_alternating_sum(|k| ((k + 1) as f64).powf(-x))
}

/// Riemann zeta for real `x > 1`, through `zeta = eta / (1 - 2^{1-x})`.
pub fn riemann_zeta(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 1.0 {
        return Err(Error::invalid("x", format!("riemann_zeta needs finite x > 1, got {x}")));
    }
    let factor = -((1.0 - x) * std::f64::consts::LN_2).exp_m1();
    Ok(dirichlet_eta(x) / factor)
}

/// Dirichlet beta, `sum (-1)^k / (2k+1)^x`, for `x > 0`.
pub fn dirichlet_beta(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::invalid(
            "x",
            format!("dirichlet_beta needs finite x > 0, got {x}"),
        ));
    }
    Ok(accelerated_alternating_sum(|k| ((2 * k + 1) as f64).powf(-x)))
}

/// `Z_2(s) = sum' |n|^{-s}` over the square lattice, `4 zeta(s/2) beta(s/2)`.
pub fn epstein_zeta(s: f64) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::invalid("s", "must be finite"));
    }
    if s <= 2.0 {
        return Err(Error::Divergent { s });
    }
    Ok(4.0 * riemann_zeta(0.5 * s)? * dirichlet_beta(0.5 * s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const CATALAN: f64 = 0.915_965_594_177_219;

    #[test]
    fn zeta_known_values() {
        assert_relative_eq!(riemann_zeta(2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(riemann_zeta(4.0).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-14);
        assert_relative_eq!(riemann_zeta(1.5).unwrap(), 2.612_375_348_685_488, max_relative = 1e-14);
        assert_relative_eq!(
            riemann_zeta(3.0).unwrap(),
            1.202_056_903_159_594_3,
            max_relative = 1e-14
        );
        // near the pole, (x - 1) zeta(x) -> 1 + gamma_E (x - 1)
        let x = 1.0 + 1e-6;
        let val = riemann_zeta(x).unwrap() * (x - 1.0);
        assert_relative_eq!(val, 1.0 + 0.577_215_664_901_532_9e-6, max_relative = 1e-9);
    }

    #[test]
    fn beta_known_values() {
        assert_relative_eq!(dirichlet_beta(1.0).unwrap(), PI / 4.0, max_relative = 1e-14);
        assert_relative_eq!(dirichlet_beta(2.0).unwrap(), CATALAN, max_relative = 1e-14);
        assert_relative_eq!(dirichlet_beta(3.0).unwrap(), PI.powi(3) / 32.0, max_relative = 1e-14);
        assert_relative_eq!(
            dirichlet_beta(1.5).unwrap(),
            0.864_502_653_461_202,
            max_relative = 1e-14
        );
    }

    #[test]
    fn epstein_values() {
        assert_relative_eq!(epstein_zeta(3.0).unwrap(), 9.0336, epsilon = 5e-4);
        assert_relative_eq!(
            epstein_zeta(4.0).unwrap(),
            4.0 * PI * PI / 6.0 * CATALAN,
            max_relative = 1e-14
        );
        assert_relative_eq!(epstein_zeta(4.0).unwrap(), 6.0268, epsilon = 1e-4);
    }

    #[test]
    fn epstein_exceeds_nearest_shells() {
        let partial = 4.0 + 4.0 / 2f64.powf(1.5);
        assert_relative_eq!(partial, 5.41421, epsilon = 1e-5);
        assert!(partial < epstein_zeta(3.0).unwrap());
    }

    #[test]
    fn domain_errors() {
        assert_eq!(epstein_zeta(2.0), Err(Error::Divergent { s: 2.0 }));
        assert_eq!(epstein_zeta(1.0), Err(Error::Divergent { s: 1.0 }));
        assert!(riemann_zeta(1.0).is_err());
        assert!(dirichlet_beta(0.0).is_err());
        assert!(epstein_zeta(f64::NAN).is_err());
    }
}
