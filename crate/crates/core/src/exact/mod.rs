//! Reference values of the critical coupling.
//!
//! Two independent numerical solvers (zero-energy shooting and a Nystrom
//! discretisation of the Birman-Schwinger kernel) plus the closed forms that
//! exist for the square well, the exponential s-wave and the STIS s-wave.

pub mod bessel;
mod nystrom;
mod ode;
mod shooting;

pub use nystrom::{critical_coupling_nystrom, KernelDiscretization};
pub use shooting::{critical_coupling_shooting, shoot_zero_energy, ShotResult};

use crate::error::{Error, Result};
use crate::potential::AngularMomentum;

/// Zero-energy radial Green's function `r_<^(l+1) r_>^(-l) / (2l+1)`.
pub fn greens_function(ell: AngularMomentum, r: f64, rp: f64) -> f64 {
    let (lo, hi) = if r <= rp { (r, rp) } else { (rp, r) };
    if lo <= 0.0 {
        return 0.0;
    }
    lo * (lo / hi).powi(ell.ell() as i32) / ell.multiplicity()
}

/// `g_c` of the square well: the square of the first zero of `J_(l-1/2)`.
pub fn square_well_exact(ell: AngularMomentum) -> Result<f64> {
    let j = bessel::first_zero(ell.ell() as f64 - 0.5)?;
    Ok(j * j)
}

/// `g_c` of the exponential shape in the s-wave, `(j_0 / 2)²` with `j_0` the
/// first zero of `J_0`.
pub fn exponential_exact_swave() -> f64 {
    let j = bessel::first_zero(0.0).expect("J_0 has a first zero");
    0.25 * j * j
}

/// `g_c` of the STIS shape in the s-wave: `(λ² + 1)/4` with `λ` the root of
/// `λ ln(1 + α) + 2 arctan λ = 2π`.
pub fn stis_exact_swave(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("STIS cutoff must be positive, got {alpha}")));
    }
    let k = alpha.ln_1p();
    let f = |lam: f64| lam * k + 2.0 * lam.atan() - 2.0 * std::f64::consts::PI;
    // f is increasing, f(0) < 0 and f(2π/k) > 0.
    let (mut lo, mut hi) = (0.0, 2.0 * std::f64::consts::PI / k);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lam = 0.5 * (lo + hi);
    Ok(0.25 * (lam * lam + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn greens_function_is_symmetric() {
        let l = AngularMomentum::new(2);
        assert_eq!(greens_function(l, 0.3, 1.7), greens_function(l, 1.7, 0.3));
        assert_relative_eq!(greens_function(l, 0.5, 2.0), 0.5f64.powi(3) / 4.0 / 5.0, max_relative = 1e-15);
        assert_relative_eq!(greens_function(AngularMomentum::new(0), 0.5, 2.0), 0.5);
    }

    #[test]
    fn square_well_values() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(square_well_exact(0.into()).unwrap(), pi * pi / 4.0, max_relative = 1e-14);
        assert_relative_eq!(square_well_exact(1.into()).unwrap(), pi * pi, max_relative = 1e-14);
        // tan x = x at 4.493409457909064.
        assert_relative_eq!(square_well_exact(2.into()).unwrap(), 4.493409457909064f64.powi(2), max_relative = 1e-13);
        assert_relative_eq!(square_well_exact(5.into()).unwrap(), 66.954, max_relative = 1e-5);
    }

    #[test]
    fn exponential_value() {
        assert_relative_eq!(exponential_exact_swave(), 1.4457964907366, max_relative = 1e-12);
    }

    #[test]
    fn stis_values() {
        assert_relative_eq!(stis_exact_swave(0.1).unwrap(), 282.26, max_relative = 2e-5);
        assert_relative_eq!(stis_exact_swave(50.0).unwrap(), 0.58684, max_relative = 2e-5);
        // Large cutoff approaches the bare 1/(1+r)² threshold g = 1/4 from above.
        let far = stis_exact_swave(1e12).unwrap();
        assert!(far > 0.25 && far < stis_exact_swave(50.0).unwrap());
        assert!(stis_exact_swave(0.0).is_err());
    }
}
