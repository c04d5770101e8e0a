//! Electromagnetic scattering off a monoatomically thin sheet of
//! harmonic-oscillator dipoles.
//!
//! * [`delta`]: reflection, transmission and phase shifts of the sheet.
//! * [`slab`]: finite-thickness dielectric slab and its thin-film limit.
//! * [`lattice`]: square-lattice dipole sums and collective modes.

pub mod delta;
pub mod error;
pub mod lattice;
pub mod material;
pub mod slab;

pub use error::{Error, Result};
pub use material::{Kinematics, Polarization, SheetMaterial};
