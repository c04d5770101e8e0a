//! Retarded dipole-dipole kernel and the field of a set of point dipoles.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexTensor = [[Complex64; 3]; 3];
pub type ComplexVector = [Complex64; 3];

/// `(grad grad + kappa^2) e^{i kappa |x|} / |x|` in closed form, with
/// `kappa = omega / c`. At `kappa = 0` this is `(3 x x - x^2) / x^5`.
pub fn dipole_kernel(wavenumber: f64, x: [f64; 3]) -> Result<ComplexTensor> {
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if r2 == 0.0 {
        return Err(Error::Singularity);
    }
    if !r2.is_finite() || !wavenumber.is_finite() {
        return Err(Error::invalid("x", "position and wavenumber must be finite"));
    }
    let r = r2.sqrt();
    let kr = Complex64::new(0.0, wavenumber * r);
    let phase = kr.exp();
    let inv = 1.0 / r;
    let inv2 = inv * inv;
    let inv3 = inv2 * inv;
    let k = wavenumber;
    // e^{ikr} [ (3/r^3 - 3ik/r^2 - k^2/r) xx/r^2 + (k^2/r + ik/r^2 - 1/r^3) 1 ]
    let radial = phase * Complex64::new(3.0 * inv3 - k * k * inv, -3.0 * k * inv2);
    let isotropic = phase * Complex64::new(k * k * inv - inv3, k * inv2);
    let unit = [x[0] * inv, x[1] * inv, x[2] * inv];
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = radial * (unit[i] * unit[j]);
            if i == j {
                *cell += isotropic;
            }
        }
    }
    Ok(out)
}

/// A point dipole at `site` with (complex) moment `moment`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole {
    pub site: [f64; 3],
    pub moment: ComplexVector,
}

impl Dipole {
    pub fn real(site: [f64; 3], moment: [f64; 3]) -> Self {
        Dipole {
            site,
            moment: moment.map(Complex64::from),
        }
    }
}

/// `E(x) = 4 pi sum_n T(x - s_n) p_n`.
pub fn field_of_dipoles(dipoles: &[Dipole], wavenumber: f64, x: [f64; 3]) -> Result<ComplexVector> {
    let mut field = [Complex64::new(0.0, 0.0); 3];
    for d in dipoles {
        let sep = [x[0] - d.site[0], x[1] - d.site[1], x[2] - d.site[2]];
        let t = dipole_kernel(wavenumber, sep)?;
        for (i, f) in field.iter_mut().enumerate() {
            for (j, p) in d.moment.iter().enumerate() {
                *f += t[i][j] * p;
            }
        }
    }
    let scale = 4.0 * std::f64::consts::PI;
    Ok(field.map(|f| f * scale))
}

/// Absorbs the on-site self term into the coupling: `alpha / (1 - alpha T_self)`.
pub fn renormalized_coupling(alpha: Complex64, self_term: Complex64) -> Result<Complex64> {
    let den = 1.0 - alpha * self_term;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::RenormalizationPole);
    }
    Ok(alpha / den)
}
