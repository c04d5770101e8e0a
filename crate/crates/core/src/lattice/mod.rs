//! Square-lattice dipole sums and the collective modes they produce.
//!
//! Lengths are in units of the lattice spacing `a` unless noted, so a
//! [`LatticeWavevector`] holds the dimensionless product `k a`.

mod dispersion;
mod ewald;
mod kernel;
mod sums;
mod zeta;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{require_finite, Result};

pub use dispersion::{
    dispersion_from_matrix, dispersion_leading, dispersion_static, mode_residual, DispersionMode, ModeChannel,
};
pub use ewald::{ewald_interaction_matrix, ewald_lattice_sum, generalized_exp_integral, upper_gamma};
pub use kernel::{dipole_kernel, field_of_dipoles, renormalized_coupling, ComplexTensor, ComplexVector, Dipole};
pub use sums::{
    lattice_sum_J, nonanalytic_coefficient, square_tail_integral, static_interaction_matrix, tail_bound, J_expansion,
};
pub use zeta::{accelerated_alternating_sum, dirichlet_beta, dirichlet_eta, epstein_zeta, riemann_zeta};

/// In-plane Bloch wavevector in units of `1/a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeWavevector {
    pub kx: f64,
    pub ky: f64,
}

impl LatticeWavevector {
    pub fn new(kx: f64, ky: f64) -> Self {
        LatticeWavevector { kx, ky }
    }

    pub fn zero() -> Self {
        LatticeWavevector { kx: 0.0, ky: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        require_finite("kx", self.kx)?;
        require_finite("ky", self.ky)
    }

    pub fn is_zero(&self) -> bool {
        self.kx == 0.0 && self.ky == 0.0
    }

    pub fn magnitude(&self) -> f64 {
        self.kx.hypot(self.ky)
    }

    pub fn negated(&self) -> Self {
        LatticeWavevector::new(-self.kx, -self.ky)
    }

    /// Counter-clockwise rotation by 90 degrees.
    pub fn rotated(&self) -> Self {
        LatticeWavevector::new(-self.ky, self.kx)
    }

    /// Image in the irreducible wedge `0 <= ky <= kx <= pi` under lattice
    /// translations, reflections and the diagonal mirror.
    pub fn to_fundamental_domain(&self) -> Self {
        let a = fold_zone(self.kx).abs();
        let b = fold_zone(self.ky).abs();
        if b <= a {
            LatticeWavevector::new(a, b)
        } else {
            LatticeWavevector::new(b, a)
        }
    }
}

/// Reduces a wavevector component to `(-pi, pi]`.
pub(crate) fn fold_zone(k: f64) -> f64 {
    if k > -PI && k <= PI {
        return k;
    }
    let two_pi = 2.0 * PI;
    let r = k.rem_euclid(two_pi);
    if r > PI {
        r - two_pi
    } else {
        r
    }
}

/// Scalar lattice sum with its truncation data. For Ewald results `cutoff`
/// is the shell count and `tail_estimate` the Gaussian remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSumResult {
    pub value: Complex64,
    pub cutoff: usize,
    pub tail_estimate: f64,
}

/// Real symmetric 3x3 static interaction matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionMatrix {
    entries: [[f64; 3]; 3],
}

impl InteractionMatrix {
    pub fn new(entries: [[f64; 3]; 3]) -> Self {
        InteractionMatrix { entries }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Eigenvalues of the in-plane block, larger first.
    pub fn in_plane_eigenvalues(&self) -> [f64; 2] {
        let [[a, b, _], [_, d, _], _] = self.entries;
        let mean = 0.5 * (a + d);
        let radius = (0.5 * (a - d)).hypot(b);
        [mean + radius, mean - radius]
    }

    pub fn perpendicular_eigenvalue(&self) -> f64 {
        self.entries[2][2]
    }

    /// In-plane eigenvalues (larger first) followed by the `zz` entry.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let [hi, lo] = self.in_plane_eigenvalues();
        [hi, lo, self.perpendicular_eigenvalue()]
    }
}
