//! Collective oscillation modes of the dipole lattice in the static
//! approximation.
//!
//! A mode with interaction eigenvalue `tau` solves `1 - n alpha(omega) tau / a = 0`.
//! With `alpha = 4 pi e^2 / (m (Omega^2 - omega^2))` this clears to
//! `omega^2 = Omega^2 - 4 pi e^2 n tau / (m a)`.

use std::fmt;

use num_complex::Complex64;

use super::{epstein_zeta, ewald_interaction_matrix, InteractionMatrix, LatticeWavevector};
use crate::error::{require_positive, Error, Result};
use crate::material::SheetMaterial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeChannel {
    /// Dipoles oscillating in the plane of the lattice.
    Parallel,
    /// Dipoles oscillating along the normal.
    Perpendicular,
}

impl ModeChannel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModeChannel::Parallel => "parallel",
            ModeChannel::Perpendicular => "perpendicular",
        }
    }
}

impl fmt::Display for ModeChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionMode {
    pub channel: ModeChannel,
    /// Eigenvalue of the dimensionless interaction matrix.
    pub eigenvalue: f64,
    pub omega_squared: f64,
    /// `Omega^2 - omega^2`, computed directly so it scales exactly with `1/a`.
    pub shift: f64,
    pub stable: bool,
}

impl DispersionMode {
    fn from_eigenvalue(mat: &SheetMaterial, a: f64, channel: ModeChannel, tau: f64) -> Self {
        let shift = mat.coupling() * mat.areal_density() * tau / a;
        let w0 = mat.oscillator_frequency();
        let omega_squared = w0 * w0 - shift;
        DispersionMode {
            channel,
            eigenvalue: tau,
            omega_squared,
            shift,
            stable: omega_squared >= 0.0,
        }
    }

    /// Mode frequency; purely imaginary (positive imaginary part) when unstable.
    pub fn omega(&self) -> Complex64 {
        if self.omega_squared >= 0.0 {
            Complex64::new(self.omega_squared.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-self.omega_squared).sqrt())
        }
    }
}

/// `1 - n alpha(omega) tau / a` evaluated at the mode's `omega^2`; zero at a root.
/// An uncoupled sheet (`e = 0`) has no root and returns 1.
pub fn mode_residual(mat: &SheetMaterial, a: f64, mode: &DispersionMode) -> f64 {
    let w0 = mat.oscillator_frequency();
    let detuning = w0 * w0 - mode.omega_squared;
    if mat.coupling() == 0.0 {
        return 1.0;
    }
    let alpha = mat.coupling() / detuning;
    1.0 - mat.areal_density() * alpha * mode.eigenvalue / a
}

/// Leading-order modes, where the interaction matrix is replaced by its
/// `k = 0` value `diag(1/2, 1/2, -1) Z_2(3)`. Neither depends on `k`.
///
/// An unstable parallel mode is an error carrying the negative `omega^2`.
pub fn dispersion_leading(mat: &SheetMaterial, a: f64, channel: ModeChannel) -> Result<DispersionMode> {
    require_positive("a", a)?;
    let z = epstein_zeta(3.0)?;
    let tau = match channel {
        ModeChannel::Parallel => 0.5 * z,
        ModeChannel::Perpendicular => -z,
    };
    let mode = DispersionMode::from_eigenvalue(mat, a, channel, tau);
    if !mode.stable {
        return Err(Error::Instability {
            omega_squared: mode.omega_squared,
        });
    }
    Ok(mode)
}

/// Modes for a given interaction matrix: the two in-plane eigenvalues
/// (larger first, so lower frequency first) and the perpendicular one.
pub fn dispersion_from_matrix(mat: &SheetMaterial, a: f64, matrix: &InteractionMatrix) -> Result<Vec<DispersionMode>> {
    require_positive("a", a)?;
    let [hi, lo, perp] = matrix.eigenvalues();
    Ok(vec![
        DispersionMode::from_eigenvalue(mat, a, ModeChannel::Parallel, hi),
        DispersionMode::from_eigenvalue(mat, a, ModeChannel::Parallel, lo),
        DispersionMode::from_eigenvalue(mat, a, ModeChannel::Perpendicular, perp),
    ])
}

/// Static-approximation modes at the dimensionless wavevector `k a`, using
/// the Ewald-converged interaction matrix. Unstable modes are returned with
/// `stable == false`.
pub fn dispersion_static(mat: &SheetMaterial, a: f64, ka: LatticeWavevector) -> Result<Vec<DispersionMode>> {
    let matrix = ewald_interaction_matrix(ka)?;
    dispersion_from_matrix(mat, a, &matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn unit_material() -> SheetMaterial {
        SheetMaterial::dimensionless(1.0, 1.0, 10.0, 1.0).unwrap()
    }

    #[test]
    fn leading_example_values() {
        let m = unit_material();
        let par = dispersion_leading(&m, 1.0, ModeChannel::Parallel).unwrap();
        let perp = dispersion_leading(&m, 1.0, ModeChannel::Perpendicular).unwrap();
        let z = epstein_zeta(3.0).unwrap();
        assert_relative_eq!(par.omega_squared, 100.0 - 2.0 * PI * z, max_relative = 1e-14);
        assert_relative_eq!(perp.omega_squared, 100.0 + 4.0 * PI * z, max_relative = 1e-14);
        assert_relative_eq!(par.omega_squared, 43.24, epsilon = 5e-3);
        assert_relative_eq!(perp.omega_squared, 213.52, epsilon = 5e-3);
        assert!(mode_residual(&m, 1.0, &par).abs() < 1e-12);
        assert!(mode_residual(&m, 1.0, &perp).abs() < 1e-12);
    }

    #[test]
    fn uncharged_sheet_is_decoupled() {
        let m = SheetMaterial::dimensionless(0.0, 1.0, 3.0, 1.0).unwrap();
        for ch in [ModeChannel::Parallel, ModeChannel::Perpendicular] {
            let mode = dispersion_leading(&m, 0.5, ch).unwrap();
            assert_eq!(mode.omega(), Complex64::new(3.0, 0.0));
        }
    }

    #[test]
    fn parallel_instability() {
        let m = SheetMaterial::dimensionless(1.0, 1.0, 1.0, 1.0).unwrap();
        match dispersion_leading(&m, 1.0, ModeChannel::Parallel) {
            Err(Error::Instability { omega_squared }) => assert!(omega_squared < 0.0),
            other => panic!("expected instability, got {other:?}"),
        }
        let modes = dispersion_static(&m, 1.0, LatticeWavevector::zero()).unwrap();
        assert!(!modes[0].stable);
        assert!(modes[0].omega().re == 0.0 && modes[0].omega().im > 0.0);
        assert!(modes[2].stable);
    }

    #[test]
    fn ordering_around_bare_frequency() {
        let m = unit_material();
        for a in [0.7, 1.0, 3.0] {
            let par = dispersion_leading(&m, a, ModeChannel::Parallel).unwrap();
            let perp = dispersion_leading(&m, a, ModeChannel::Perpendicular).unwrap();
            assert!(par.omega().re < 10.0 && perp.omega().re > 10.0);
        }
    }

    #[test]
    fn static_reproduces_leading_at_zero() {
        let m = unit_material();
        let modes = dispersion_static(&m, 1.3, LatticeWavevector::zero()).unwrap();
        let par = dispersion_leading(&m, 1.3, ModeChannel::Parallel).unwrap();
        let perp = dispersion_leading(&m, 1.3, ModeChannel::Perpendicular).unwrap();
        assert_relative_eq!(modes[0].omega_squared, par.omega_squared, max_relative = 1e-12);
        assert_relative_eq!(modes[1].omega_squared, par.omega_squared, max_relative = 1e-12);
        assert_relative_eq!(modes[2].omega_squared, perp.omega_squared, max_relative = 1e-12);
    }

    #[test]
    fn shifts_cancel() {
        let m = unit_material();
        let modes = dispersion_static(&m, 2.0, LatticeWavevector::new(0.6, 1.9)).unwrap();
        let total: f64 = modes.iter().map(|md| md.shift).sum();
        assert!(total.abs() < 1e-11);
    }

    #[test]
    fn perpendicular_small_k_shift() {
        let (e, m, n, a) = (1.0, 1.0, 1.0, 1.5);
        let mat = SheetMaterial::dimensionless(e, m, 10.0, n).unwrap();
        let ka = 1e-3;
        let at_k = dispersion_static(&mat, a, LatticeWavevector::new(ka, 0.0)).unwrap()[2];
        let at_0 = dispersion_static(&mat, a, LatticeWavevector::zero()).unwrap()[2];
        let want = -8.0 * PI * PI * e * e * n * ka / (m * a);
        assert_relative_eq!(at_k.omega_squared - at_0.omega_squared, want, max_relative = 1e-2);
    }
}
