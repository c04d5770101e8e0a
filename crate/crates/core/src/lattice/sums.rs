//! Direct square-cutoff lattice sums over `n in Z^2 \ {0}`.
//!
//! Rows are summed in parallel and reduced in fixed order with compensated
//! summation, so results are bit-for-bit reproducible at a given cutoff.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::zeta::epstein_zeta;
use super::{InteractionMatrix, LatticeSumResult, LatticeWavevector};
use crate::error::{Error, Result};

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

fn check_exponent(s: f64) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::invalid("s", "must be finite"));
    }
    if s <= 2.0 {
        return Err(Error::Divergent { s });
    }
    Ok(())
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::invalid("cutoff", "must be at least 1"));
    }
    Ok(())
}

/// `r2^{-s/2}` with fast paths for the exponents the interaction matrix uses.
#[inline]
fn inv_pow(r2: f64, s: f64) -> f64 {
    if s == 3.0 {
        1.0 / (r2 * r2.sqrt())
    } else if s == 5.0 {
        1.0 / (r2 * r2 * r2.sqrt())
    } else {
        r2.powf(-0.5 * s)
    }
}

/// `int_0^1 (1 + t^2)^{-s/2} dt` by composite Simpson.
fn corner_integral(s: f64) -> f64 {
    const INTERVALS: usize = 512;
    let h = 1.0 / INTERVALS as f64;
    let f = |t: f64| (1.0 + t * t).powf(-0.5 * s);
    let mut acc = f(0.0) + f(1.0);
    for i in 1..INTERVALS {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}

/// `int r^{-s} d^2x` over the plane outside the square `|x_i| <= N + 1/2`,
/// the continuum estimate of the terms beyond the cutoff.
pub fn square_tail_integral(s: f64, cutoff: usize) -> f64 {
    let m = cutoff as f64 + 0.5;
    8.0 * corner_integral(s) * m.powf(2.0 - s) / (s - 2.0)
}

/// Bound `2 pi N^{2-s} / (s - 2)` on the magnitude of the omitted terms.
pub fn tail_bound(s: f64, cutoff: usize) -> f64 {
    2.0 * PI * (cutoff as f64).powf(2.0 - s) / (s - 2.0)
}

fn cos_table(k: f64, cutoff: usize) -> Vec<f64> {
    (0..=cutoff).map(|n| (k * n as f64).cos()).collect()
}

fn sin_table(k: f64, cutoff: usize) -> Vec<f64> {
    (0..=cutoff).map(|n| (k * n as f64).sin()).collect()
}

/// `J_s(k) = sum' e^{-i k.n} / |n|^s` over `|n_1|, |n_2| <= N`.
///
/// Terms at `n` and `-n` are paired, so the imaginary part is exactly zero.
/// At `k = 0` the continuum estimate of the omitted terms is added; for
/// `k != 0` the raw partial sum is returned.
#[allow(non_snake_case)]
pub fn lattice_sum_J(s: f64, k: LatticeWavevector, cutoff: usize) -> Result<LatticeSumResult> {
    check_exponent(s)?;
    check_cutoff(cutoff)?;
    k.validate()?;
    let cx = cos_table(k.kx, cutoff);
    let cy = cos_table(k.ky, cutoff);

    let rows: Vec<f64> = (1..=cutoff)
        .into_par_iter()
        .map(|n1| {
            let a = n1 as f64;
            let mut row = Compensated::default();
            for (n2, &cos_y) in cy.iter().enumerate().skip(1) {
                let b = n2 as f64;
                row.add(cos_y * inv_pow(a * a + b * b, s));
            }
            let mut out = Compensated::default();
            out.add(4.0 * cx[n1] * row.value());
            // axis terms (n1, 0) and (0, n1)
            out.add(2.0 * (cx[n1] + cy[n1]) * inv_pow(a * a, s));
            out.value()
        })
        .collect();

    let mut total = Compensated::default();
    for r in rows {
        total.add(r);
    }
    if k.is_zero() {
        total.add(square_tail_integral(s, cutoff));
    }
    Ok(LatticeSumResult {
        value: Complex64::new(total.value(), 0.0),
        cutoff,
        tail_estimate: tail_bound(s, cutoff),
    })
}

/// Static interaction matrix `sum' (3 n n - n^2) / n^5 e^{-i k.n}` with the
/// out-of-plane entry `-J_3(k)`, summed over `|n_1|, |n_2| <= N`.
///
/// At `k = 0` the continuum tail correction is added (`+1/2`, `+1/2`, `-1`
/// times the `J_3` tail), which keeps the trace exactly zero.
pub fn static_interaction_matrix(k: LatticeWavevector, cutoff: usize) -> Result<InteractionMatrix> {
    check_cutoff(cutoff)?;
    k.validate()?;
    let cx = cos_table(k.kx, cutoff);
    let cy = cos_table(k.ky, cutoff);
    let sx = sin_table(k.kx, cutoff);
    let sy = sin_table(k.ky, cutoff);

    let rows: Vec<[f64; 4]> = (1..=cutoff)
        .into_par_iter()
        .map(|n1| {
            let a = n1 as f64;
            let mut t11 = Compensated::default();
            let mut t22 = Compensated::default();
            let mut t12 = Compensated::default();
            let mut t33 = Compensated::default();
            for n2 in 1..=cutoff {
                let b = n2 as f64;
                let r2 = a * a + b * b;
                let root = r2.sqrt();
                let inv3 = 1.0 / (r2 * root);
                let inv5 = inv3 / r2;
                let even = 4.0 * cx[n1] * cy[n2];
                let odd = -4.0 * sx[n1] * sy[n2];
                t11.add((2.0 * a * a - b * b) * inv5 * even);
                t22.add((2.0 * b * b - a * a) * inv5 * even);
                t12.add(3.0 * a * b * inv5 * odd);
                t33.add(-inv3 * even);
            }
            // axis terms: (n1, 0) weighs 2 cos(kx n1), (0, n1) weighs 2 cos(ky n1)
            let inv3 = 1.0 / (a * a * a);
            let wx = 2.0 * cx[n1];
            let wy = 2.0 * cy[n1];
            t11.add(2.0 * inv3 * wx - inv3 * wy);
            t22.add(2.0 * inv3 * wy - inv3 * wx);
            t33.add(-inv3 * (wx + wy));
            [t11.value(), t22.value(), t12.value(), t33.value()]
        })
        .collect();

    let mut acc = [Compensated::default(); 4];
    for row in rows {
        for (a, v) in acc.iter_mut().zip(row) {
            a.add(v);
        }
    }
    if k.is_zero() {
        let tail = square_tail_integral(3.0, cutoff);
        acc[0].add(0.5 * tail);
        acc[1].add(0.5 * tail);
        acc[3].add(-tail);
    }
    let [t11, t22, t12, t33] = acc.map(|a| a.value());
    Ok(InteractionMatrix::new([
        [t11, t12, 0.0],
        [t12, t22, 0.0],
        [0.0, 0.0, t33],
    ]))
}

/// Coefficient of the non-analytic term `k^{s-2}` in the small-k expansion
/// of `J_s(k)`, the two-dimensional Fourier transform of `|x|^{-s}`:
/// `pi 2^{2-s} Gamma(1 - s/2) / Gamma(s/2)`.
pub fn nonanalytic_coefficient(s: f64) -> Result<f64> {
    check_exponent(s)?;
    let arg = 1.0 - 0.5 * s;
    if arg.fract() == 0.0 {
        return Err(Error::ExpansionInvalid { s });
    }
    Ok(PI * 2f64.powf(2.0 - s) * gamma(arg) / gamma(0.5 * s))
}

/// Small-k expansion `c_s k^{s-2} + Z_2(s) - (k^2/4) Z_2(s-2)`; the `k^2`
/// term is kept only for `s > 4`, where `Z_2(s-2)` converges.
#[allow(non_snake_case)]
pub fn J_expansion(s: f64, k: f64) -> Result<f64> {
    let coeff = nonanalytic_coefficient(s)?;
    if !k.is_finite() || k < 0.0 {
        return Err(Error::invalid("k", "must be finite and >= 0"));
    }
    let mut value = epstein_zeta(s)?;
    if k > 0.0 {
        value += coeff * k.powf(s - 2.0);
    }
    if s > 4.0 {
        value -= 0.25 * k * k * epstein_zeta(s - 2.0)?;
    }
    Ok(value)
}
