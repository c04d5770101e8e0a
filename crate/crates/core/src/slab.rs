//! Plasma slab of finite thickness and its thin-film limit onto the sheet.
//!
//! The slab occupies `0 <= z <= L`, the wave is incident from `z < 0` and
//! phases are referenced to the `z = 0` face.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::delta::hydrodynamic_reflection;
use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::material::{perpendicular_momentum, sqrt_upper, Kinematics, SheetMaterial};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabConfig {
    thickness: f64,
    permittivity: Complex64,
    omega: f64,
    k_parallel: f64,
    light_speed: f64,
}

impl SlabConfig {
    pub fn new(
        thickness: f64,
        permittivity: impl Into<Complex64>,
        omega: f64,
        k_parallel: f64,
        light_speed: f64,
    ) -> Result<Self> {
        let permittivity = permittivity.into();
        require_positive("thickness", thickness)?;
        require_positive("omega", omega)?;
        require_non_negative("k_parallel", k_parallel)?;
        require_positive("light_speed", light_speed)?;
        if !permittivity.is_finite() {
            return Err(Error::invalid("permittivity", "must be finite"));
        }
        Ok(SlabConfig {
            thickness,
            permittivity,
            omega,
            k_parallel,
            light_speed,
        })
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn permittivity(&self) -> Complex64 {
        self.permittivity
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn k_parallel(&self) -> f64 {
        self.k_parallel
    }

    pub fn light_speed(&self) -> f64 {
        self.light_speed
    }

    /// Perpendicular momentum outside the slab.
    pub fn exterior_momentum(&self) -> Complex64 {
        perpendicular_momentum(
            Kinematics {
                omega: self.omega,
                k_parallel: self.k_parallel,
            },
            self.light_speed,
        )
    }

    /// Perpendicular momentum inside, `sqrt(eps omega^2/c^2 - k^2)` with `Im >= 0`.
    pub fn interior_momentum(&self) -> Complex64 {
        let w = self.omega / self.light_speed;
        sqrt_upper(self.permittivity * w * w - self.k_parallel * self.k_parallel)
    }

    /// `omega^2` recovered from the interior relation `eps omega^2 = c^2 (k^2 + q^2)`.
    pub fn omega_squared_from_interior(&self) -> Complex64 {
        let q = self.interior_momentum();
        let c2 = self.light_speed * self.light_speed;
        c2 * (self.k_parallel * self.k_parallel + q * q) / self.permittivity
    }
}

/// Slab reflection coefficients.
///
/// `tm` follows the magnetic-field convention of the two-interface formula;
/// [`SlabReflection::tm_electric`] gives the tangential electric field
/// convention used by the sheet coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabReflection {
    pub te: Complex64,
    pub tm: Complex64,
}

impl SlabReflection {
    pub fn tm_electric(&self) -> Complex64 {
        -self.tm
    }
}

/// `e^z - 1` without cancellation for small `|z|`.
fn exp_m1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let er = z.re.exp_m1();
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    Complex64::new(er * c - 2.0 * half * half, z.re.exp() * s)
}

/// Two-interface reflection for interface ratio `rho = (q - x)/(q + x)`.
fn two_interface(q: Complex64, outer: Complex64, phase_m1: Complex64, cfg: &SlabConfig) -> Result<Complex64> {
    let sum = q + outer;
    if sum == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateInterface("q + p"));
    }
    let rho = (q - outer) / sum;
    // 1 - rho^2 e = 4 q x / (q + x)^2 - rho^2 (e - 1)
    let den = 4.0 * q * outer / (sum * sum) - rho * rho * phase_m1;
    if den == Complex64::new(0.0, 0.0) || !den.is_finite() {
        return Err(Error::FabryPerotPole {
            length: cfg.thickness,
            q_re: q.re,
            q_im: q.im,
        });
    }
    Ok(rho * phase_m1 / den)
}

pub fn slab_reflection(cfg: &SlabConfig) -> Result<SlabReflection> {
    let p = cfg.exterior_momentum();
    let q = cfg.interior_momentum();
    let phase_m1 = exp_m1(2.0 * I * q * cfg.thickness);
    let te = two_interface(q, p, phase_m1, cfg)?;
    let tm = two_interface(q, cfg.permittivity * p, phase_m1, cfg)?;
    Ok(SlabReflection { te, tm })
}

/// Permittivity of a plasma film of thickness `L` holding the sheet's charges,
/// `1 - 2 q c^2 / (omega^2 L)`.
pub fn thin_film_map(mat: &SheetMaterial, thickness: f64, omega: f64) -> Result<f64> {
    require_positive("thickness", thickness)?;
    require_positive("omega", omega)?;
    let c = mat.light_speed();
    Ok(1.0 - 2.0 * mat.q_parameter() * c * c / (omega * omega * thickness))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPoint {
    pub thickness: f64,
    pub permittivity: f64,
    pub r_te: Complex64,
    /// Electric-field convention, comparable with the sheet value.
    pub r_tm: Complex64,
    pub residual_te: f64,
    pub residual_tm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitStudy {
    pub sheet_te: Complex64,
    pub sheet_tm: Complex64,
    /// In the order of the input grid.
    pub points: Vec<LimitPoint>,
    /// Fitted `d log(residual) / d log(L)`; `None` when fewer than two
    /// residuals are non-zero.
    pub exponent_te: Option<f64>,
    pub exponent_tm: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`, skipping non-positive `y`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Compares thin plasma films against the plasma-sheet coefficients.
///
/// The material must have no restoring force. The TM slab coefficient is
/// converted to the electric-field convention before differencing.
pub fn slab_limit_study(mat: &SheetMaterial, omega: f64, k: f64, lengths: &[f64]) -> Result<LimitStudy> {
    if lengths.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: lengths.len(),
        });
    }
    for &l in lengths {
        require_positive("thickness", l)?;
    }
    require_positive("omega", omega)?;
    require_non_negative("k", k)?;
    require_finite("k", k)?;
    if mat.oscillator_frequency() != 0.0 {
        return Err(Error::invalid(
            "oscillator_frequency",
            "the thin-film limit targets a sheet without restoring force",
        ));
    }
    let c = mat.light_speed();
    if k >= omega / c {
        return Err(Error::Evanescent(
            "the thin-film limit is stated for propagating waves (p real and positive)",
        ));
    }
    let (sheet_te, sheet_tm) = hydrodynamic_reflection(mat.q_parameter(), omega, k, c)?;

    let points = lengths
        .par_iter()
        .map(|&thickness| {
            let eps = thin_film_map(mat, thickness, omega)?;
            let refl = slab_reflection(&SlabConfig::new(thickness, eps, omega, k, c)?)?;
            let r_tm = refl.tm_electric();
            Ok(LimitPoint {
                thickness,
                permittivity: eps,
                r_te: refl.te,
                r_tm,
                residual_te: (refl.te - sheet_te).norm(),
                residual_tm: (r_tm - sheet_tm).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ls: Vec<f64> = points.iter().map(|p| p.thickness).collect();
    let te: Vec<f64> = points.iter().map(|p| p.residual_te).collect();
    let tm: Vec<f64> = points.iter().map(|p| p.residual_tm).collect();
    Ok(LimitStudy {
        sheet_te,
        sheet_tm,
        exponent_te: log_log_slope(&ls, &te),
        exponent_tm: log_log_slope(&ls, &tm),
        points,
    })
}

/// `count` log-spaced lengths from `max` down to `min`.
pub fn descending_log_grid(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    require_positive("min", min)?;
    require_positive("max", max)?;
    if min >= max {
        return Err(Error::invalid("min", "must be smaller than max"));
    }
    if count < 2 {
        return Err(Error::InsufficientData { needed: 2, got: count });
    }
    let (lo, hi) = (min.ln(), max.ln());
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| match i {
            0 => max,
            i if i == count - 1 => min,
            i => (hi - step * i as f64).exp(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn transparent_slab() {
        let cfg = SlabConfig::new(0.3, 1.0, 2.0, 1.0, 1.0).unwrap();
        let r = slab_reflection(&cfg).unwrap();
        assert_eq!(r.te.norm(), 0.0);
        assert_eq!(r.tm.norm(), 0.0);
    }

    #[test]
    fn thick_lossy_slab_tends_to_single_interface() {
        let eps = Complex64::new(-3.0, 0.5);
        let cfg = SlabConfig::new(200.0, eps, 2.0, 1.0, 1.0).unwrap();
        let r = slab_reflection(&cfg).unwrap();
        let (p, q) = (cfg.exterior_momentum(), cfg.interior_momentum());
        assert!((r.te - (p - q) / (p + q)).norm() < 1e-12);
        assert!((r.tm - (eps * p - q) / (eps * p + q)).norm() < 1e-12);
    }

    #[test]
    fn metallic_slab_is_bounded() {
        let cfg = SlabConfig::new(0.1, -3.0, 2.0, 1.0, 1.0).unwrap();
        let r = slab_reflection(&cfg).unwrap();
        assert!(r.te.norm() <= 1.0 + 1e-12);
        assert!(r.tm.norm() <= 1.0 + 1e-12);
        assert!(r.te.norm() > 0.0);
        // below the plasma edge the interior wave is evanescent
        let q = cfg.interior_momentum();
        assert_eq!(q.re, 0.0);
        assert_relative_eq!(q.im, 13f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn interior_relation_round_trips() {
        for eps in [
            Complex64::new(2.5, 0.0),
            Complex64::new(-40.0, 0.0),
            Complex64::new(3.0, 1.0),
        ] {
            let cfg = SlabConfig::new(0.1, eps, 1.7, 0.6, 1.3).unwrap();
            let w2 = cfg.omega_squared_from_interior();
            assert!((w2 - 1.7 * 1.7).norm() <= 1e-12 * 1.7 * 1.7);
        }
    }

    #[test]
    fn thin_film_examples() {
        let mat = SheetMaterial::hydrodynamic(1.0, 1.0).unwrap();
        assert_relative_eq!(thin_film_map(&mat, 0.5, 2.0).unwrap(), 0.0, epsilon = 1e-15);
        let neutral = SheetMaterial::hydrodynamic(0.0, 1.0).unwrap();
        assert_eq!(thin_film_map(&neutral, 0.5, 2.0).unwrap(), 1.0);

        let a = thin_film_map(&mat, 1e-3, 2.0).unwrap() - 1.0;
        let b = thin_film_map(&mat, 5e-4, 2.0).unwrap() - 1.0;
        assert_relative_eq!(b / a, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn limit_study_needs_three_points() {
        let mat = SheetMaterial::hydrodynamic(1.0, 1.0).unwrap();
        assert_eq!(
            slab_limit_study(&mat, 2.0, 1.0, &[1e-3, 1e-4]),
            Err(Error::InsufficientData { needed: 3, got: 2 })
        );
    }

    #[test]
    fn limit_study_refuses_evanescent_and_restoring_force() {
        let mat = SheetMaterial::hydrodynamic(1.0, 1.0).unwrap();
        let grid = [1e-3, 1e-4, 1e-5];
        assert!(matches!(
            slab_limit_study(&mat, 1.0, 2.0, &grid),
            Err(Error::Evanescent(_))
        ));
        let osc = SheetMaterial::dimensionless(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(slab_limit_study(&osc, 2.0, 1.0, &grid).is_err());
    }

    #[test]
    fn limit_study_uncharged_sheet() {
        let mat = SheetMaterial::hydrodynamic(0.0, 1.0).unwrap();
        let study = slab_limit_study(&mat, 2.0, 1.0, &[1e-3, 1e-4, 1e-5]).unwrap();
        for p in &study.points {
            assert_eq!(p.r_te.norm(), 0.0);
            assert_eq!(p.residual_te, study.sheet_te.norm());
            assert_eq!(p.residual_tm, study.sheet_tm.norm());
        }
        assert_eq!(study.exponent_te, None);
    }

    #[test]
    fn limit_study_converges_and_keeps_order() {
        let mat = SheetMaterial::hydrodynamic(1.0, 1.0).unwrap();
        let grid = descending_log_grid(5e-7, 5e-4, 7).unwrap();
        let study = slab_limit_study(&mat, 2.0, 1.0, &grid).unwrap();
        let ls: Vec<f64> = study.points.iter().map(|p| p.thickness).collect();
        assert_eq!(ls, grid);
        let first = study.points.first().unwrap();
        let last = study.points.last().unwrap();
        assert!(first.residual_te > last.residual_te);
        assert!(first.residual_tm > last.residual_tm);
        assert!(last.residual_te < 1e-4);
        let te = study.exponent_te.unwrap();
        assert!((te - 1.0).abs() < 0.05, "{te}");
    }

    #[test]
    fn log_grid_endpoints() {
        let g = descending_log_grid(1e-6, 1e-3, 4).unwrap();
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[3], 1e-6);
        assert_relative_eq!(g[1], 1e-4, max_relative = 1e-12);
        assert!(descending_log_grid(1e-3, 1e-6, 4).is_err());
    }

    #[test]
    fn slope_fit() {
        let xs = [1.0, 10.0, 100.0];
        let ys = [2.0, 20.0, 200.0];
        assert_relative_eq!(log_log_slope(&xs, &ys).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(log_log_slope(&xs, &[0.0, 0.0, 1.0]), None);
    }

    #[test]
    fn complex_expm1_matches_direct() {
        for z in [
            Complex64::new(1e-9, 2e-9),
            Complex64::new(-0.3, 1.2),
            Complex64::new(0.0, 3.0),
        ] {
            let direct = z.exp() - 1.0;
            assert!((exp_m1(z) - direct).norm() <= 1e-15 * direct.norm().max(1.0));
        }
    }
}
