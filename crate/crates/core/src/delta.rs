//! One-dimensional scattering off a generalized delta potential and the sheet
//! reflection coefficients built on it.
//!
//! The generic problem is
//!
//! ```text
//! (p^2 + d_z^2) phi(z) = mu * phi(0) * (1 + lambda d_z^2) delta(z)
//! ```
//!
//! which reduces to continuity of `phi`, a jump `mu (1 - lambda p^2) phi(0)` in
//! `phi'`, and a delta-function amplitude `h = mu lambda phi(0)` in the field,
//! where `phi(0)` is read as the limit `z -> 0` of the smooth part.
//!
//! The sheet coefficients are not computed by dividing through by the
//! polarizability. Writing every channel as
//!
//! ```text
//! r = -A / (A + i B),   t = i B / (A + i B),   tan(eta) = A / B
//! ```
//!
//! with `D = Omega^2 - omega^2` and `q = 2 pi n e^2 / (m c^2)`,
//!
//! | channel | A           | B      |
//! |---------|-------------|--------|
//! | TE      | q omega^2   | p D    |
//! | TM      | q c^2 p     | D      |
//! | P       | q c^2 k^2   | p D    |
//!
//! keeps resonance (`D = 0`) and grazing incidence (`p = 0`) regular.

use num_complex::Complex64;

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::material::{perpendicular_momentum, polarizability, Kinematics, Polarization, SheetMaterial};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Strength `mu` and derivative coupling `lambda` of the generalized delta potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPotential {
    pub mu: Complex64,
    pub lambda: Complex64,
}

impl DeltaPotential {
    pub fn new(mu: impl Into<Complex64>, lambda: impl Into<Complex64>) -> Self {
        DeltaPotential {
            mu: mu.into(),
            lambda: lambda.into(),
        }
    }

    /// Jump coefficient of the derivative, `mu (1 - lambda p^2)`.
    pub fn effective_strength(&self, p: Complex64) -> Complex64 {
        self.mu * (1.0 - self.lambda * p * p)
    }
}

/// Reflection, transmission, phase shift and delta amplitude for one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterResult {
    pub r: Complex64,
    pub t: Complex64,
    /// Principal value of the phase shift with `r = i sin(eta) e^{i eta}`.
    /// Defined modulo pi; complex for evanescent waves.
    pub eta: Complex64,
    /// Amplitude of the `delta(z)` term in the field.
    pub h: Complex64,
}

impl ScatterResult {
    fn transparent(h: Complex64) -> Self {
        ScatterResult {
            r: Complex64::new(0.0, 0.0),
            t: Complex64::new(1.0, 0.0),
            eta: Complex64::new(0.0, 0.0),
            h,
        }
    }

    /// `|r|^2 + |t|^2`, equal to one for lossless propagating scattering.
    pub fn flux(&self) -> f64 {
        self.r.norm_sqr() + self.t.norm_sqr()
    }
}

/// `eta = -(i/2) ln(1 + 2 r)`, the inverse of `r = (e^{2 i eta} - 1) / 2`.
fn phase_from_ratio(ratio: Complex64) -> Complex64 {
    -0.5 * I * ratio.ln()
}

/// Solves the matching problem for incidence `e^{ipz}` from `z < 0`.
pub fn match_delta(pot: DeltaPotential, p: Complex64) -> Result<ScatterResult> {
    let mu_eff = pot.effective_strength(p);
    if !(mu_eff.is_finite() && p.is_finite()) {
        return Err(Error::invalid("potential", "non-finite strength or momentum"));
    }
    if mu_eff == Complex64::new(0.0, 0.0) {
        return Ok(ScatterResult::transparent(pot.mu * pot.lambda));
    }
    let two_ip = 2.0 * I * p;
    let den = mu_eff - two_ip;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::BoundStatePole);
    }
    let r = -mu_eff / den;
    let t = -two_ip / den;
    Ok(ScatterResult {
        r,
        t,
        eta: phase_from_ratio(-(mu_eff + two_ip) / den),
        h: pot.mu * pot.lambda * t,
    })
}

fn check_frequency(omega: f64, k: f64) -> Result<()> {
    require_positive("omega", omega)?;
    require_non_negative("k", k)?;
    require_finite("k", k)
}

/// Delta-potential parameters of the sheet for one channel.
///
/// Uses the polarizability directly, so this fails at resonance; see
/// [`reflection`] for the pole-free route.
pub fn delta_params(pol: Polarization, mat: &SheetMaterial, omega: f64, k: f64) -> Result<DeltaPotential> {
    check_frequency(omega, k)?;
    let c = mat.light_speed();
    let n_alpha = mat.areal_density() * polarizability(mat, omega)?;
    let w2 = omega * omega / (c * c);
    Ok(match pol {
        Polarization::TE => DeltaPotential::new(-n_alpha * w2, 0.0),
        Polarization::TM => {
            let p2 = (omega / c - k) * (omega / c + k);
            DeltaPotential::new(-n_alpha * p2, 0.0)
        }
        Polarization::P => DeltaPotential::new(-n_alpha * w2, 1.0 / w2),
    })
}

/// Cleared coefficients `(A, B)` of one channel.
fn cleared_pair(mat: &SheetMaterial, pol: Polarization, omega: f64, k: f64, p: Complex64) -> (Complex64, Complex64) {
    let q = mat.q_parameter();
    let c2 = mat.light_speed() * mat.light_speed();
    let detuning = mat.detuning(omega);
    match pol {
        Polarization::TE => (Complex64::from(q * omega * omega), p * detuning),
        Polarization::TM => (q * c2 * p, Complex64::from(detuning)),
        Polarization::P => (Complex64::from(q * c2 * k * k), p * detuning),
    }
}

/// Reflection and transmission of the sheet in channel `pol`.
///
/// Regular at `omega = Omega`, where `r = -1` in every channel with a
/// non-vanishing numerator. Evanescent `k > omega/c` is accepted.
pub fn reflection(mat: &SheetMaterial, pol: Polarization, omega: f64, k: f64) -> Result<ScatterResult> {
    check_frequency(omega, k)?;
    let p = perpendicular_momentum(Kinematics::new(omega, k)?, mat.light_speed());
    if mat.charge() == 0.0 {
        return Ok(ScatterResult::transparent(Complex64::new(0.0, 0.0)));
    }
    let (a, b) = cleared_pair(mat, pol, omega, k, p);
    let ib = I * b;
    let den = a + ib;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::BoundStatePole);
    }
    let h = match pol {
        Polarization::P => {
            let c2 = mat.light_speed() * mat.light_speed();
            -2.0 * I * mat.q_parameter() * c2 * p / den
        }
        _ => Complex64::new(0.0, 0.0),
    };
    Ok(ScatterResult {
        r: -a / den,
        t: ib / den,
        eta: phase_from_ratio((ib - a) / den),
        h,
    })
}

/// Plasma-sheet reflection coefficients `(r_TE, r_TM)` for q-parameter `q`.
///
/// `q = 0` is accepted and gives a transparent sheet.
pub fn hydrodynamic_reflection(q: f64, omega: f64, k: f64, c: f64) -> Result<(Complex64, Complex64)> {
    require_non_negative("q", q)?;
    require_positive("c", c)?;
    check_frequency(omega, k)?;
    let p = perpendicular_momentum(Kinematics::new(omega, k)?, c);
    if q == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let te_den = q - I * p;
    let a_tm = p * c * c * q;
    let tm_den = a_tm - I * omega * omega;
    if te_den == Complex64::new(0.0, 0.0) || tm_den == Complex64::new(0.0, 0.0) {
        return Err(Error::BoundStatePole);
    }
    Ok((-q / te_den, -a_tm / tm_den))
}

/// Phase shift from `tan(eta) = A / B`, principal branch of the arctangent.
///
/// Agrees with [`ScatterResult::eta`] modulo pi. Where the tangent is
/// unbounded (`B = 0`) the value is `pi/2`.
pub fn phase_shift(mat: &SheetMaterial, pol: Polarization, omega: f64, k: f64) -> Result<Complex64> {
    check_frequency(omega, k)?;
    if mat.charge() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let p = perpendicular_momentum(Kinematics::new(omega, k)?, mat.light_speed());
    let (a, b) = cleared_pair(mat, pol, omega, k, p);
    if b == Complex64::new(0.0, 0.0) {
        if a == Complex64::new(0.0, 0.0) {
            return Err(Error::BoundStatePole);
        }
        return Ok(Complex64::new(std::f64::consts::FRAC_PI_2, 0.0));
    }
    Ok((a / b).atan())
}
