//! Zero-energy shooting of `u'' = [l(l+1)/r² - g v(r)] u`.

use super::ode::{self, Tolerance};
use crate::error::{Error, Result};
use crate::limits;
use crate::potential::{AngularMomentum, Potential, PotentialKind};
use crate::quad::QuadratureConfig;

/// Outcome of one zero-energy integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShotResult {
    /// Coefficient of the growing solution `r^(l+1)` at the matching radius.
    pub growing_coefficient: f64,
    /// Number of zeros of `u` on `(0, ∞)`, including one beyond the matching
    /// radius when the free continuation crosses zero.
    pub nodes: u32,
    pub r_match: f64,
}

const TAIL_TOL: f64 = 1e-12;
const RTOL: f64 = 1e-11;

/// Matching radius: the cutoff for compact shapes, otherwise 1.5 times the
/// radius where `r v(r)` falls below `1e-12 / R`.
fn matching_radius(pot: &Potential, cfg: &QuadratureConfig) -> Result<f64> {
    match pot.support().outer {
        Some(outer) => Ok(outer),
        None => Ok(1.5 * pot.support_radius(TAIL_TOL / pot.scale(), cfg.max_radius)?),
    }
}

pub fn shoot_zero_energy(pot: &Potential, ell: AngularMomentum, g: f64, cfg: &QuadratureConfig) -> Result<ShotResult> {
    let r_match = matching_radius(pot, cfg)?;
    shoot_to(pot, ell, g, r_match)
}

fn shoot_to(pot: &Potential, ell: AngularMomentum, g: f64, r_match: f64) -> Result<ShotResult> {
    if !(g >= 0.0 && g.is_finite()) {
        return Err(Error::Domain(format!("coupling must be finite and nonnegative, got {g}")));
    }
    let support = pot.support();
    let lf = ell.ell() as f64;
    let cent = ell.centrifugal();
    let start_factor = if pot.kind() == PotentialKind::Yukawa { 1e-8 } else { 1e-6 };
    // Below the inner edge v vanishes and the regular solution is exact.
    let r0 = support.inner.max(start_factor * pot.scale());
    let mut y = [r0.powf(lf + 1.0), (lf + 1.0) * r0.powf(lf)];

    let mut knots: Vec<f64> = support.breaks.iter().copied().filter(|&b| b > r0 && b < r_match).collect();
    knots.push(r_match);
    let tol = Tolerance { rtol: RTOL, max_steps: 2_000_000 };
    let rhs = |r: f64, y: &[f64; 2]| [y[1], (cent / (r * r) - g * pot.value(r)) * y[0]];

    let mut nodes = 0u32;
    let mut last_sign = 1.0f64;
    let mut from = r0;
    for knot in knots {
        y = ode::integrate(rhs, from, y, knot, tol, |_, s| {
            let sign = s[0].signum();
            if s[0] != 0.0 && sign != last_sign {
                nodes += 1;
                last_sign = sign;
            }
        })?;
        from = knot;
    }
    let r = r_match;
    let a = (r * y[1] + lf * y[0]) / (ell.multiplicity() * r.powf(lf + 1.0));
    if !a.is_finite() {
        return Err(Error::Integration(format!("growing coefficient is not finite at g = {g}")));
    }
    if a != 0.0 && a.signum() != y[0].signum() {
        nodes += 1;
    }
    Ok(ShotResult { growing_coefficient: a, nodes, r_match })
}

/// Smallest `g` at which a zero-energy node appears.
///
/// Scans geometrically upward from the Bargmann-Schwinger limit until the
/// node count reaches one, then bisects to relative width `1e-11`.
pub fn critical_coupling_shooting(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let r_match = matching_radius(pot, cfg)?;
    let bound = |g: f64| shoot_to(pot, ell, g, r_match).map(|s| s.nodes >= 1);
    let mut lo = limits::lower_bargmann_schwinger(pot, ell, cfg)?.value;
    while bound(lo)? {
        lo *= 0.5;
        if lo < 1e-12 {
            return Err(Error::Range("bound state persists as g -> 0".into()));
        }
    }
    let mut hi = lo * 1.5;
    let mut tries = 0;
    while !bound(hi)? {
        lo = hi;
        hi *= 1.5;
        tries += 1;
        if tries > 200 {
            return Err(Error::Accuracy {
                what: "no bound state found while scanning the coupling".into(),
                best: hi,
                error: f64::INFINITY,
            });
        }
    }
    while hi / lo - 1.0 > 1e-11 {
        let mid = 0.5 * (lo + hi);
        if bound(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn square_well_matches_bessel_zero() {
        let pot = Potential::square_well(1.0).unwrap();
        for ell in [0u32, 1, 3, 5] {
            let g = critical_coupling_shooting(&pot, ell.into(), &cfg()).unwrap();
            let exact = exact::square_well_exact(ell.into()).unwrap();
            assert_relative_eq!(g, exact, max_relative = 1e-8);
        }
    }

    #[test]
    fn exponential_and_stis_swave() {
        let e = Potential::exponential(1.0).unwrap();
        let g = critical_coupling_shooting(&e, 0.into(), &cfg()).unwrap();
        assert_relative_eq!(g, exact::exponential_exact_swave(), max_relative = 1e-8);
        for alpha in [0.1, 5.0, 50.0] {
            let s = Potential::stis(1.0, alpha).unwrap();
            let g = critical_coupling_shooting(&s, 0.into(), &cfg()).unwrap();
            assert_relative_eq!(g, exact::stis_exact_swave(alpha).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn node_count_grows_with_coupling() {
        let pot = Potential::square_well(1.0).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert_eq!(shoot_zero_energy(&pot, 0.into(), 1.0, &cfg()).unwrap().nodes, 0);
        assert_eq!(shoot_zero_energy(&pot, 0.into(), 0.5 * pi2, &cfg()).unwrap().nodes, 1);
        assert_eq!(shoot_zero_energy(&pot, 0.into(), 4.0 * pi2, &cfg()).unwrap().nodes, 2);
        let shot = shoot_zero_energy(&pot, 0.into(), 1.0, &cfg()).unwrap();
        // u = sin(r)/1 at g = 1 gives A = cos 1.
        assert_relative_eq!(shot.growing_coefficient, 1f64.cos(), max_relative = 1e-9);
        assert_eq!(shot.r_match, 1.0);
    }
}
