//! Dormand-Prince 5(4) integrator for the two-component radial system.

use crate::error::{Error, Result};

pub(crate) type State = [f64; 2];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub rtol: f64,
    pub max_steps: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `y' = f(x, y)` from `x0` to `x1 > x0`, calling `on_step` after
/// every accepted step. The local error of `(u, u')` is measured against
/// `rtol (|u| + x |u'|)`, which keeps the test meaningful for power-law
/// solutions spanning many decades.
pub(crate) fn integrate<F, S>(f: F, x0: f64, y0: State, x1: f64, tol: Tolerance, mut on_step: S) -> Result<State>
where
    F: Fn(f64, &State) -> State,
    S: FnMut(f64, &State),
{
    let mut x = x0;
    let mut y = y0;
    let span = x1 - x0;
    if span <= 0.0 {
        return Ok(y);
    }
    let mut h = (1e-3 * x0.max(span * 1e-6)).min(span);
    let mut k = [[0.0; 2]; 7];
    k[0] = f(x, &y);
    let mut steps = 0;
    while x < x1 {
        if steps >= tol.max_steps {
            return Err(Error::Integration(format!("step budget exhausted at x = {x:e}")));
        }
        steps += 1;
        let last = x + h >= x1;
        if last {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    ys[0] += h * a * kj[0];
                    ys[1] += h * a * kj[1];
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err = [0.0; 2];
        for s in 0..7 {
            for c in 0..2 {
                y5[c] += h * B5[s] * k[s][c];
                err[c] += h * (B5[s] - B4[s]) * k[s][c];
            }
        }
        let xn = if last { x1 } else { x + h };
        let scale = tol.rtol * (y[0].abs().max(y5[0].abs()) + xn * y[1].abs().max(y5[1].abs())) + f64::MIN_POSITIVE;
        let ratio = (err[0].abs() + xn * err[1].abs()) / scale;
        if !ratio.is_finite() {
            return Err(Error::Integration(format!("non-finite state near x = {x:e}")));
        }
        if ratio <= 1.0 {
            x = xn;
            y = y5;
            k[0] = k[6];
            on_step(x, &y);
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < 1e-14 * x.abs() {
            return Err(Error::Integration(format!("step size underflow at x = {x:e}")));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_oscillator_over_many_periods() {
        let tol = Tolerance { rtol: 1e-11, max_steps: 100_000 };
        let y = integrate(|_, y| [y[1], -y[0]], 1.0, [1f64.sin(), 1f64.cos()], 21.0, tol, |_, _| {}).unwrap();
        assert!((y[0] - 21f64.sin()).abs() < 1e-8);
        assert!((y[1] - 21f64.cos()).abs() < 1e-8);
    }

    #[test]
    fn power_law_over_decades() {
        // u'' = 6 u / x², u = x³.
        let tol = Tolerance { rtol: 1e-11, max_steps: 100_000 };
        let x0: f64 = 1e-6;
        let y = integrate(|x, y| [y[1], 6.0 * y[0] / (x * x)], x0, [x0.powi(3), 3.0 * x0 * x0], 2.0, tol, |_, _| {})
            .unwrap();
        assert_relative_eq!(y[0], 8.0, max_relative = 1e-8);
        assert_relative_eq!(y[1], 12.0, max_relative = 1e-8);
    }
}
