//! Bessel functions of the first kind for moderate arguments.

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// `J_ν(x)` and `J'_ν(x)` from the ascending series; accurate for `x ≲ 20`.
pub fn j_and_derivative(nu: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return if nu == 0.0 { (1.0, 0.0) } else { (0.0, 0.0) };
    }
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half.powf(nu) / gamma(nu + 1.0);
    let mut sum = term;
    let mut dsum = term * nu;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        dsum += term * (2.0 * k + nu);
        if k > half && term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    (sum, dsum / x)
}

pub fn j(nu: f64, x: f64) -> f64 {
    j_and_derivative(nu, x).0
}

/// First positive zero of `J_ν` for `ν >= -1/2`.
pub fn first_zero(nu: f64) -> Result<f64> {
    if !(nu >= -0.5) || nu > 30.0 {
        return Err(Error::Domain(format!("first Bessel zero supported for -1/2 <= ν <= 30, got {nu}")));
    }
    // J_ν keeps its small-argument sign until the first zero; zeros are
    // spaced by more than π/2, so a step of 0.1 cannot skip one.
    let sign0 = j(nu, 1e-3).signum();
    let step = 0.1;
    let mut a = 1e-3;
    let mut b = a + step;
    while j(nu, b).signum() == sign0 {
        a = b;
        b += step;
        if b > 60.0 {
            return Err(Error::Range(format!("no zero of J_{nu} below 60")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if j(nu, mid).signum() == sign0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    // One Newton polish from the bracket midpoint.
    let x = 0.5 * (a + b);
    let (f, df) = j_and_derivative(nu, x);
    let polished = x - f / df;
    Ok(if (polished - x).abs() <= (b - a).max(4.0 * f64::EPSILON * x) { polished } else { x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_integer_orders_are_elementary() {
        let x: f64 = 1.3;
        let pref = (2.0 / (std::f64::consts::PI * x)).sqrt();
        assert_relative_eq!(j(0.5, x), pref * x.sin(), max_relative = 1e-14);
        assert_relative_eq!(j(-0.5, x), pref * x.cos(), max_relative = 1e-14);
        assert_relative_eq!(j(1.5, x), pref * (x.sin() / x - x.cos()), max_relative = 1e-13);
    }

    #[test]
    fn derivative_matches_recurrence() {
        // J'_ν = J_(ν-1) - (ν/x) J_ν.
        for (nu, x) in [(1.0, 2.0), (2.5, 4.2), (4.5, 7.9)] {
            let (f, df) = j_and_derivative(nu, x);
            assert_relative_eq!(df, j(nu - 1.0, x) - nu / x * f, max_relative = 1e-11);
        }
    }

    #[test]
    fn known_zeros() {
        assert_relative_eq!(first_zero(0.0).unwrap(), 2.404825557695773, max_relative = 1e-14);
        assert_relative_eq!(first_zero(1.0).unwrap(), 3.831705970207512, max_relative = 1e-14);
        assert_relative_eq!(first_zero(-0.5).unwrap(), std::f64::consts::FRAC_PI_2, max_relative = 1e-14);
        assert_relative_eq!(first_zero(0.5).unwrap(), std::f64::consts::PI, max_relative = 1e-14);
        assert!(first_zero(-1.0).is_err());
    }
}
