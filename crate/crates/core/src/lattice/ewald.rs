//! Ewald-split lattice sums: Gaussian-screened real-space terms plus
//! reciprocal-lattice terms, with the splitting parameter chosen so both
//! halves converge like `exp(-pi n^2)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::{gamma, gamma_ur};

use super::{fold_zone, InteractionMatrix, LatticeSumResult, LatticeWavevector};
use crate::error::{Error, Result};

/// Shells kept on each side; `exp(-pi 8^2)` is far below an ulp.
const SHELLS: i64 = 8;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `E_1(x)` for `x > 0`.
fn exp_integral_one(x: f64) -> f64 {
    if x <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..60 {
            let kf = k as f64;
            term *= -x / kf;
            let add = -term / kf;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        -EULER_GAMMA - x.ln() + sum
    } else {
        // modified Lentz on the continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Upper incomplete gamma `Gamma(a, x)` for `x > 0` and any real `a`.
pub fn upper_gamma(a: f64, x: f64) -> f64 {
    if a > 0.0 {
        gamma_ur(a, x) * gamma(a)
    } else if a == 0.0 {
        exp_integral_one(x)
    } else {
        // Gamma(a, x) = (Gamma(a + 1, x) - x^a e^{-x}) / a
        (upper_gamma(a + 1.0, x) - x.powf(a) * (-x).exp()) / a
    }
}

/// Generalized exponential integral `E_p(x) = x^{p-1} Gamma(1 - p, x)`,
/// with `E_p(0) = 1 / (p - 1)` for `p > 1`.
pub fn generalized_exp_integral(p: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0 / (p - 1.0);
    }
    x.powf(p - 1.0) * upper_gamma(1.0 - p, x)
}

fn reciprocal_shift(k: LatticeWavevector) -> (f64, f64) {
    (fold_zone(k.kx) / (2.0 * PI), fold_zone(k.ky) / (2.0 * PI))
}

fn for_each_site(mut f: impl FnMut(f64, f64)) {
    for a in -SHELLS..=SHELLS {
        for b in -SHELLS..=SHELLS {
            if a != 0 || b != 0 {
                f(a as f64, b as f64);
            }
        }
    }
}

fn for_each_reciprocal(mut f: impl FnMut(f64, f64)) {
    for a in -SHELLS..=SHELLS {
        for b in -SHELLS..=SHELLS {
            f(a as f64, b as f64);
        }
    }
}

/// `J_s(k)` converged to machine precision for any `s > 2`.
#[allow(non_snake_case)]
pub fn ewald_lattice_sum(s: f64, k: LatticeWavevector) -> Result<LatticeSumResult> {
    if !s.is_finite() {
        return Err(Error::invalid("s", "must be finite"));
    }
    if s <= 2.0 {
        return Err(Error::Divergent { s });
    }
    k.validate()?;
    let half = 0.5 * s;
    let gamma_half = gamma(half);

    let mut real = 0.0;
    for_each_site(|a, b| {
        let r2 = a * a + b * b;
        let phase = (k.kx * a + k.ky * b).cos();
        real += phase * gamma_ur(half, PI * r2) * r2.powf(-half);
    });

    let (gx, gy) = reciprocal_shift(k);
    let mut recip = 0.0;
    for_each_reciprocal(|a, b| {
        let (x, y) = (a + gx, b + gy);
        recip += generalized_exp_integral(half, PI * (x * x + y * y));
    });
    let prefactor = PI.powf(half) / gamma_half;
    let value = real + prefactor * recip - 2.0 * prefactor / s;
    Ok(LatticeSumResult {
        value: Complex64::new(value, 0.0),
        cutoff: SHELLS as usize,
        tail_estimate: (-PI * (SHELLS * SHELLS) as f64).exp(),
    })
}

/// The static interaction matrix of [`super::static_interaction_matrix`]
/// without cutoff error, from `-3 d_i d_j J_5 - delta_ij J_3`.
pub fn ewald_interaction_matrix(k: LatticeWavevector) -> Result<InteractionMatrix> {
    k.validate()?;
    let j3 = ewald_lattice_sum(3.0, k)?.value.re;
    let half = 2.5;

    // real space: d_i d_j sum' cos(k.n) Q(5/2, pi n^2) / n^5
    let mut real = [0.0; 3];
    for_each_site(|a, b| {
        let r2 = a * a + b * b;
        let w = (k.kx * a + k.ky * b).cos() * gamma_ur(half, PI * r2) / (r2 * r2 * r2.sqrt());
        real[0] -= a * a * w;
        real[1] -= b * b * w;
        real[2] -= a * b * w;
    });

    let (gx, gy) = reciprocal_shift(k);
    let mut recip = [0.0; 3];
    for_each_reciprocal(|a, b| {
        let (x, y) = (a + gx, b + gy);
        let arg = PI * (x * x + y * y);
        let iso = generalized_exp_integral(1.5, arg) / (2.0 * PI);
        let aniso = if arg == 0.0 {
            0.0
        } else {
            generalized_exp_integral(0.5, arg)
        };
        recip[0] += aniso * x * x - iso;
        recip[1] += aniso * y * y - iso;
        recip[2] += aniso * x * y;
    });
    let prefactor = PI.powf(half) / gamma(half);
    let d: [f64; 3] = std::array::from_fn(|i| real[i] + prefactor * recip[i]);

    let t11 = -3.0 * d[0] - j3;
    let t22 = -3.0 * d[1] - j3;
    let t12 = -3.0 * d[2];
    Ok(InteractionMatrix::new([
        [t11, t12, 0.0],
        [t12, t22, 0.0],
        [0.0, 0.0, -j3],
    ]))
}
