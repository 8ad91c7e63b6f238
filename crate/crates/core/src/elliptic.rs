//! Incomplete elliptic integrals of the first and second kind in Legendre
//! form, evaluated through Carlson's symmetric integrals R_F and R_D.

use alloc::format;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticKind {
    F,
    E,
}

const TOL: f64 = 1e-4;
const MAX_ITER: usize = 200;

/// Carlson's R_F(x, y, z) by the duplication algorithm; arguments may be
/// complex as long as none lies on the closed negative real axis (one may be 0).
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..MAX_ITER {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        let a = (x + y + z) / 3.0;
        let (dx, dy, dz) = ((a - x) / a, (a - y) / a, (a - z) / a);
        if dx.norm().max(dy.norm()).max(dz.norm()) < TOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / a.sqrt();
        }
    }
    Complex64::new(f64::NAN, f64::NAN)
}

/// Carlson's R_D(x, y, z) = R_J(x, y, z, z).
pub fn carlson_rd(x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fac = 1.0;
    for _ in 0..MAX_ITER {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        sum += fac / (sz * (z + lambda));
        fac *= 0.25;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        let a = (x + y + 3.0 * z) * 0.2;
        let (dx, dy, dz) = ((a - x) / a, (a - y) / a, (a - z) / a);
        if dx.norm().max(dy.norm()).max(dz.norm()) < TOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            let (c1, c2, c3, c4) = (3.0 / 14.0, 1.0 / 6.0, 9.0 / 22.0, 3.0 / 26.0);
            let (c5, c6) = (0.25 * c3, 1.5 * c4);
            let series = 1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea));
            return 3.0 * sum + fac * series / (a * a.sqrt());
        }
    }
    Complex64::new(f64::NAN, f64::NAN)
}

/// Legendre integral for an amplitude in the principal strip |Re phi| <= pi/2.
pub fn elliptic_complex(kind: EllipticKind, phi: Complex64, k: Complex64) -> Complex64 {
    let s = phi.sin();
    let c = phi.cos();
    let one = Complex64::new(1.0, 0.0);
    let delta = one - k * k * s * s;
    let rf = carlson_rf(c * c, delta, one);
    match kind {
        EllipticKind::F => s * rf,
        EllipticKind::E => s * rf - k * k * s * s * s * carlson_rd(c * c, delta, one) / 3.0,
    }
}

/// Complete integrals K(k) and E(k).
pub fn complete(kind: EllipticKind, k: f64) -> f64 {
    elliptic_complex(kind, Complex64::new(core::f64::consts::FRAC_PI_2, 0.0), Complex64::new(k, 0.0)).re
}

/// Incomplete elliptic integral `F(phi, k)` or `E(phi, k)` for real arguments,
/// with quasi-periodic reduction of the amplitude.
pub fn elliptic_integral(kind: EllipticKind, phi: f64, k: f64) -> Result<f64> {
    if !phi.is_finite() || !k.is_finite() {
        return Err(Error::Domain(format!("non-finite argument phi={phi}, k={k}")));
    }
    if k * k >= 1.0 {
        return Err(Error::Domain(format!("modulus k={k} has k^2 >= 1")));
    }
    let pi = core::f64::consts::PI;
    let n = libm::round(phi / pi);
    let r = phi - n * pi;
    let part = elliptic_complex(kind, Complex64::new(r, 0.0), Complex64::new(k, 0.0)).re;
    let full = if n != 0.0 { 2.0 * n * complete(kind, k) } else { 0.0 };
    Ok(full + part)
}
