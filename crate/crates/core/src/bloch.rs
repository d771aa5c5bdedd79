//! Qubit <-> Bloch sphere.
//!
//! A unit qubit `(a_0, a_1)` maps to
//! `(2 Re(conj(a_0) a_1), 2 Im(conj(a_0) a_1), |a_0|^2 - |a_1|^2)`, which is the
//! point `c` with `a a* = (I + c . sigma) / 2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{BlochPoint, Star, BLOCH_INPUT_TOL};

pub fn star_to_bloch(s: &Star) -> BlochPoint {
    let u = s.normalized();
    let cross = u.alpha.conj() * u.beta;
    let (cx, cy, cz) = (
        2.0 * cross.re,
        2.0 * cross.im,
        u.alpha.norm_sqr() - u.beta.norm_sqr(),
    );
    let n = (cx * cx + cy * cy + cz * cz).sqrt();
    BlochPoint::new_unchecked(cx / n, cy / n, cz / n)
}

/// The star `(cos(theta/2), e^{i phi} sin(theta/2))` with `theta = acos(cz)`
/// and `phi = atan2(cy, cx)`.
pub fn bloch_to_star(p: &BlochPoint) -> Result<Star> {
    let n = p.norm();
    if !n.is_finite() || (n - 1.0).abs() > BLOCH_INPUT_TOL {
        return Err(Error::Argument(format!(
            "Bloch point has norm {n}, expected 1"
        )));
    }
    let cz = (p.cz / n).clamp(-1.0, 1.0);
    // half-angle forms keep the poles exact
    let cos_half = ((1.0 + cz) / 2.0).sqrt();
    let sin_half = ((1.0 - cz) / 2.0).sqrt();
    let beta = if sin_half == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::from_polar(sin_half, p.azimuth())
    };
    Star::new(Complex64::new(cos_half, 0.0), beta)
}
