//! Library results against the independent reference solutions.

use approx::assert_relative_eq;
use num_complex::Complex64;
use thinsheet::delta::{match_delta, DeltaPotential};
use thinsheet::lattice::{dipole_kernel, epstein_zeta, lattice_sum_J, LatticeWavevector};
use thinsheet::slab::{slab_reflection, SlabConfig};
use thinsheet_oracles as oracle;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn delta_matching_against_helmholtz() {
    let cases = [
        (c(-0.8, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
        (c(2.5, 0.0), c(0.0, 0.0), c(0.6, 0.0)),
        (c(-1.0, 0.3), c(0.0, 0.0), c(1.7, 0.0)),
        (c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.8)),
        (c(-0.4, 0.0), c(0.7, 0.0), c(1.2, 0.0)),
        (c(1.1, 0.0), c(-0.3, 0.0), c(2.0, 0.0)),
    ];
    for (mu, lambda, p) in cases {
        let lib = match_delta(DeltaPotential::new(mu, lambda), p).unwrap();
        let num = oracle::helmholtz_extrapolated(mu, lambda, p, 1e-2);
        assert!((lib.r - num.r).norm() < 1e-6, "mu={mu} p={p}: {} vs {}", lib.r, num.r);
        assert!((lib.t - num.t).norm() < 1e-6, "mu={mu} p={p}: {} vs {}", lib.t, num.t);
        assert!((lib.h - num.h).norm() < 1e-6, "mu={mu} p={p}: {} vs {}", lib.h, num.h);
    }
}

#[test]
fn slab_against_transfer_matrix() {
    let cases = [
        (0.3, c(2.25, 0.0), 2.0, 1.0),
        (1.7, c(4.0, 0.5), 1.3, 0.2),
        (0.05, c(-3.0, 0.0), 2.0, 1.0),
        (2.0, c(0.5, 0.0), 1.0, 0.9),
        (1e-4, c(-1e4, 0.0), 2.0, 1.0),
    ];
    for (l, eps, omega, k) in cases {
        let lib = slab_reflection(&SlabConfig::new(l, eps, omega, k, 1.0).unwrap()).unwrap();
        let (te, tm) = oracle::transfer_matrix_slab(l, eps, omega, k, 1.0);
        assert!((lib.te - te).norm() < 1e-12, "L={l} eps={eps}: {} vs {te}", lib.te);
        assert!((lib.tm - tm).norm() < 1e-12, "L={l} eps={eps}: {} vs {tm}", lib.tm);
    }
}

#[test]
fn static_kernel_against_differences() {
    for x in [[1.0, 0.0, 0.0], [0.3, -1.2, 0.7], [2.0, 1.5, -0.4], [0.01, 0.02, 0.0]] {
        let lib = dipole_kernel(0.0, x).unwrap();
        let fd = oracle::static_kernel_by_differences(x);
        for i in 0..3 {
            for j in 0..3 {
                let scale = lib[i][i].re.abs().max(lib[j][j].re.abs());
                assert!(
                    (lib[i][j].re - fd[i][j]).abs() <= 1e-6 * scale,
                    "x={x:?} ({i},{j}): {} vs {}",
                    lib[i][j].re,
                    fd[i][j]
                );
                assert_eq!(lib[i][j].im, 0.0);
            }
        }
    }
}

#[test]
fn retarded_kernel_on_axis_against_differences() {
    for (kappa, z) in [(1.0, 2.0), (0.3, 0.5), (2.5, 1.1)] {
        let lib = dipole_kernel(kappa, [0.0, 0.0, z]).unwrap()[2][2];
        let fd = oracle::on_axis_zz_by_differences(kappa, z);
        assert!((lib - fd).norm() < 1e-6 * lib.norm(), "kappa={kappa}: {lib} vs {fd}");
    }
}

#[test]
fn epstein_against_brute_force() {
    for s in [3.0, 4.0, 5.5] {
        let brute = oracle::epstein_brute_force(s, 500);
        assert_relative_eq!(epstein_zeta(s).unwrap(), brute, max_relative = 1e-8);
        let lib = lattice_sum_J(s, LatticeWavevector::zero(), 500).unwrap().value.re;
        assert_relative_eq!(lib, brute, max_relative = 1e-8);
    }
}
