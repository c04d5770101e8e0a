//! Independent reference computations shared by the test suites.
//! Nothing here calls into the `thinsheet` library.

use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Outgoing-wave data of `(p^2 + d_z^2) G = g_w(z)` for a unit Gaussian of
/// width `w`: the transmitted amplitude `a`, the reflected amplitude `b` and
/// the point value `G(0)`.
struct GaussianResponse {
    a: Complex64,
    b: Complex64,
    at_origin: Complex64,
}

fn gaussian_response(p: Complex64, w: f64) -> GaussianResponse {
    // z = w u, so y'' = w phi(u) - (w p)^2 y over u in [-10, 10]
    const HALF_STEPS: usize = 1000;
    let span = 10.0;
    let h = span / HALF_STEPS as f64;
    let wp2 = w * w * p * p;
    let pdf = |u: f64| (-0.5 * u * u).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let rhs = |u: f64, y: Complex64| c(w * pdf(u)) - wp2 * y;

    let mut u = -span;
    let mut y = c(0.0);
    let mut v = c(0.0);
    let mut at_zero = c(0.0);
    for step in 0..2 * HALF_STEPS {
        let k1y = v;
        let k1v = rhs(u, y);
        let k2y = v + 0.5 * h * k1v;
        let k2v = rhs(u + 0.5 * h, y + 0.5 * h * k1y);
        let k3y = v + 0.5 * h * k2v;
        let k3v = rhs(u + 0.5 * h, y + 0.5 * h * k2y);
        let k4y = v + h * k3v;
        let k4v = rhs(u + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        u = -span + (step + 1) as f64 * h;
        if step + 1 == HALF_STEPS {
            at_zero = y;
        }
    }
    // right edge: y = a e^{ipz} + b e^{-ipz}, dy/dz = v / w
    let z = span * w;
    let dy = v / w;
    let a = 0.5 * (y + dy / (I * p)) * (-I * p * z).exp();
    let b = 0.5 * (y - dy / (I * p)) * (I * p * z).exp();
    GaussianResponse {
        a,
        b,
        at_origin: at_zero - b,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HelmholtzSolution {
    pub r: Complex64,
    pub t: Complex64,
    pub h: Complex64,
}

/// `(p^2 + d_z^2) Phi = mu Phi(0) (1 + lambda d_z^2) g_w(z)` with the delta
/// regularized by a Gaussian of width `w`, incidence `e^{ipz}` from the left.
///
/// `Phi(0)` is the smooth part at the origin; the `lambda g_w` spike carries
/// the amplitude `h = mu lambda Phi(0)`.
pub fn helmholtz_regularized(mu: Complex64, lambda: Complex64, p: Complex64, w: f64) -> HelmholtzSolution {
    let g = gaussian_response(p, w);
    let strength = mu * (1.0 - lambda * p * p);
    let phi0 = 1.0 / (1.0 - strength * g.at_origin);
    let amp = strength * phi0;
    HelmholtzSolution {
        r: -amp * g.b,
        t: 1.0 + amp * g.a,
        h: mu * lambda * phi0,
    }
}

/// Richardson extrapolation `w -> 0` from widths `w, w/2, w/4`, removing
/// the linear and quadratic terms in `w`.
pub fn helmholtz_extrapolated(mu: Complex64, lambda: Complex64, p: Complex64, w: f64) -> HelmholtzSolution {
    let s: Vec<HelmholtzSolution> = [w, 0.5 * w, 0.25 * w]
        .iter()
        .map(|&wi| helmholtz_regularized(mu, lambda, p, wi))
        .collect();
    let extrap = |f: &dyn Fn(&HelmholtzSolution) -> Complex64| {
        let (f0, f1, f2) = (f(&s[0]), f(&s[1]), f(&s[2]));
        let g1 = 2.0 * f1 - f0;
        let g2 = 2.0 * f2 - f1;
        (4.0 * g2 - g1) / 3.0
    };
    HelmholtzSolution {
        r: extrap(&|x| x.r),
        t: extrap(&|x| x.t),
        h: extrap(&|x| x.h),
    }
}

/// Step-index slab reflection by a 2x2 transfer matrix, incidence from the
/// vacuum side. Returns `(r_TE, r_TM)`, TE for the electric field and TM for
/// the magnetic field. TE carries `E, E'` and TM carries `H, H'/eps` across
/// the interfaces.
pub fn transfer_matrix_slab(
    thickness: f64,
    eps: Complex64,
    omega: f64,
    k: f64,
    c_light: f64,
) -> (Complex64, Complex64) {
    let k0 = omega / c_light;
    let p = principal_upper_sqrt(c((k0 - k) * (k0 + k)));
    let q = principal_upper_sqrt(eps * k0 * k0 - k * k);
    let (s, co) = ((q * thickness).sin(), (q * thickness).cos());
    let solve = |weight: Complex64| {
        // field and weighted derivative at z = L: outgoing e^{ipz}, unit amplitude there
        let f_l = c(1.0);
        let g_l = I * p;
        // back through the interior: f'' + q^2 f = 0, g = f' / weight
        let f0 = co * f_l - weight * s / q * g_l;
        let g0 = q / weight * s * f_l + co * g_l;
        // left: f = A e^{ipz} + B e^{-ipz}, g = ip (A - B)
        let amp_in = 0.5 * (f0 + g0 / (I * p));
        let amp_out = 0.5 * (f0 - g0 / (I * p));
        amp_out / amp_in
    };
    (solve(c(1.0)), solve(eps))
}

/// Square root with non-negative imaginary part, non-negative real part on
/// the positive axis.
pub fn principal_upper_sqrt(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.im < 0.0 || (r.im == 0.0 && r.re < 0.0) {
        -r
    } else {
        r
    }
}

/// Serial brute-force `sum' |n|^{-s}` over `|n_i| <= n` plus the integral of
/// `r^{-s}` outside the square of half-side `n + 1/2`, done in polar form:
/// `8 / (s - 2) int_0^{pi/4} (M / cos t)^{2-s} dt`.
pub fn epstein_brute_force(s: f64, n: i64) -> f64 {
    let mut sum = 0.0;
    for a in -n..=n {
        for b in -n..=n {
            if a == 0 && b == 0 {
                continue;
            }
            sum += ((a * a + b * b) as f64).powf(-0.5 * s);
        }
    }
    let m = n as f64 + 0.5;
    let steps = 2000;
    let top = std::f64::consts::FRAC_PI_4;
    let dt = top / steps as f64;
    let f = |t: f64| (m / t.cos()).powf(2.0 - s);
    let mut integral = 0.5 * (f(0.0) + f(top));
    for i in 1..steps {
        integral += f(i as f64 * dt);
    }
    integral *= dt;
    sum + 8.0 * integral / (s - 2.0)
}

/// Hessian of `1/|x|` by central differences of its analytic gradient.
pub fn static_kernel_by_differences(x: [f64; 3]) -> [[f64; 3]; 3] {
    let grad = |y: [f64; 3]| {
        let r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
        let inv3 = 1.0 / (r2 * r2.sqrt());
        [-y[0] * inv3, -y[1] * inv3, -y[2] * inv3]
    };
    let norm = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let h = 1e-5 * norm;
    let mut out = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut up = x;
        let mut down = x;
        up[j] += h;
        down[j] -= h;
        let (gu, gd) = (grad(up), grad(down));
        for i in 0..3 {
            out[i][j] = (gu[i] - gd[i]) / (2.0 * h);
        }
    }
    out
}

/// `(d_z^2 + kappa^2) e^{i kappa z}/z`-type check: the `zz` entry of the
/// retarded kernel on the z axis by central second differences of the
/// scalar Green function along the axis, plus `kappa^2 G`.
pub fn on_axis_zz_by_differences(kappa: f64, z: f64) -> Complex64 {
    let g = |t: f64| (I * kappa * t).exp() / t;
    let h = 1e-4 * z;
    (g(z + h) - 2.0 * g(z) + g(z - h)) / (h * h) + kappa * kappa * g(z)
}
