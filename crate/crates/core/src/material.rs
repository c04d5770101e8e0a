//! Sheet material parameters, kinematics and the single-oscillator response.
//!
//! Everything is in unrationalized Gaussian units. Setting `c = 1` gives the
//! dimensionless mode used throughout the tests.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};

/// A sheet of identical charged isotropic harmonic oscillators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetMaterial {
    charge: f64,
    mass: f64,
    oscillator_frequency: f64,
    areal_density: f64,
    light_speed: f64,
}

impl SheetMaterial {
    /// `charge` in statC, `mass` in g, `oscillator_frequency` in rad/s,
    /// `areal_density` in 1/cm^2, `light_speed` in cm/s.
    pub fn new(
        charge: f64,
        mass: f64,
        oscillator_frequency: f64,
        areal_density: f64,
        light_speed: f64,
    ) -> Result<Self> {
        require_finite("charge", charge)?;
        require_positive("mass", mass)?;
        require_non_negative("oscillator_frequency", oscillator_frequency)?;
        require_positive("areal_density", areal_density)?;
        require_positive("light_speed", light_speed)?;
        Ok(SheetMaterial {
            charge,
            mass,
            oscillator_frequency,
            areal_density,
            light_speed,
        })
    }

    /// Same as [`SheetMaterial::new`] with `c = 1`.
    pub fn dimensionless(charge: f64, mass: f64, oscillator_frequency: f64, areal_density: f64) -> Result<Self> {
        Self::new(charge, mass, oscillator_frequency, areal_density, 1.0)
    }

    /// Plasma-sheet (hydrodynamic) material with the given q-parameter:
    /// unit charge and mass, no restoring force, density chosen so that
    /// `2 pi n e^2 / (m c^2) = q`. A zero `q` gives an uncharged sheet.
    pub fn hydrodynamic(q: f64, light_speed: f64) -> Result<Self> {
        require_non_negative("q", q)?;
        require_positive("light_speed", light_speed)?;
        if q == 0.0 {
            return Self::new(0.0, 1.0, 0.0, 1.0, light_speed);
        }
        let density = q * light_speed * light_speed / (2.0 * PI);
        Self::new(1.0, 1.0, 0.0, density, light_speed)
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn oscillator_frequency(&self) -> f64 {
        self.oscillator_frequency
    }

    pub fn areal_density(&self) -> f64 {
        self.areal_density
    }

    pub fn light_speed(&self) -> f64 {
        self.light_speed
    }

    /// Returns a copy with a different oscillator frequency.
    pub fn with_oscillator_frequency(self, oscillator_frequency: f64) -> Result<Self> {
        Self::new(
            self.charge,
            self.mass,
            oscillator_frequency,
            self.areal_density,
            self.light_speed,
        )
    }

    /// `q = 2 pi n e^2 / (m c^2)`, an inverse length.
    pub fn q_parameter(&self) -> f64 {
        2.0 * PI * self.areal_density * self.charge * self.charge / (self.mass * self.light_speed * self.light_speed)
    }

    /// `4 pi e^2 / m`, the numerator of the polarizability.
    pub(crate) fn coupling(&self) -> f64 {
        4.0 * PI * self.charge * self.charge / self.mass
    }

    /// `Omega^2 - omega^2`, the cleared resonance denominator.
    pub(crate) fn detuning(&self, omega: f64) -> f64 {
        let w0 = self.oscillator_frequency;
        (w0 - omega) * (w0 + omega)
    }
}

/// Frequency and wavenumber parallel to the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub omega: f64,
    pub k_parallel: f64,
}

impl Kinematics {
    pub fn new(omega: f64, k_parallel: f64) -> Result<Self> {
        require_non_negative("omega", omega)?;
        require_non_negative("k_parallel", k_parallel)?;
        Ok(Kinematics { omega, k_parallel })
    }

    /// Incidence angle in radians measured from the sheet normal.
    pub fn from_angle(omega: f64, angle: f64, light_speed: f64) -> Result<Self> {
        require_finite("angle", angle)?;
        if !(0.0..PI / 2.0).contains(&angle) {
            return Err(Error::invalid("angle", "must lie in [0, pi/2)"));
        }
        require_positive("light_speed", light_speed)?;
        Self::new(omega, omega / light_speed * angle.sin())
    }

    pub fn is_propagating(&self, light_speed: f64) -> bool {
        self.k_parallel <= self.omega / light_speed
    }
}

/// Scattering channel of the sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    /// Transverse electric, in-plane polarizability.
    TE,
    /// Transverse magnetic, in-plane polarizability.
    TM,
    /// Polarizability perpendicular to the sheet.
    P,
}

impl Polarization {
    pub const ALL: [Polarization; 3] = [Polarization::TE, Polarization::TM, Polarization::P];

    pub fn as_str(&self) -> &'static str {
        match self {
            Polarization::TE => "TE",
            Polarization::TM => "TM",
            Polarization::P => "P",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "te" => Ok(Polarization::TE),
            "tm" => Ok(Polarization::TM),
            "p" => Ok(Polarization::P),
            other => Err(Error::invalid(
                "polarization",
                format!("expected te, tm or p, got `{other}`"),
            )),
        }
    }
}

/// Square root on the branch with non-negative imaginary part.
pub fn sqrt_upper(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// Square root of a real number onto the `Im >= 0` branch.
pub(crate) fn sqrt_upper_real(x: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-x).sqrt())
    }
}

/// Momentum perpendicular to the sheet, `p = sqrt(omega^2/c^2 - k^2)` with `Im p >= 0`.
pub fn perpendicular_momentum(kin: Kinematics, light_speed: f64) -> Complex64 {
    let w = kin.omega / light_speed;
    let k = kin.k_parallel;
    sqrt_upper_real((w - k) * (w + k))
}

/// Polarizability of one oscillator, `4 pi e^2 / (m (Omega^2 - omega^2))`.
///
/// Fails with [`Error::Resonance`] at `omega = Omega`; the scattering
/// coefficients never call this directly and stay finite there.
pub fn polarizability(mat: &SheetMaterial, omega: f64) -> Result<f64> {
    require_non_negative("omega", omega)?;
    let detuning = mat.detuning(omega);
    if detuning == 0.0 {
        return Err(Error::Resonance { omega });
    }
    Ok(mat.coupling() / detuning)
}

/// Drude permittivity `1 - omega_p^2 / omega^2`.
pub fn plasma_permittivity(plasma_frequency: f64, omega: f64) -> Result<f64> {
    require_finite("plasma_frequency", plasma_frequency)?;
    require_non_negative("omega", omega)?;
    if omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let ratio = plasma_frequency / omega;
    Ok(1.0 - ratio * ratio)
}

/// Strength `s` of the sheet term `epsilon(z) - 1 = s delta(z)`, taken as `4 pi n alpha(omega)`.
pub fn sheet_susceptibility_strength(mat: &SheetMaterial, omega: f64) -> Result<f64> {
    Ok(4.0 * PI * mat.areal_density() * polarizability(mat, omega)?)
}
