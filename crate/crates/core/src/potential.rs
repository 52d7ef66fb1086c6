//! Nonnegative radial shapes `v(r)` of potentials `V(r) = -g v(r)`.
//!
//! The built-in catalogue covers the square well, exponential, Yukawa and
//! shifted truncated inverse-square (STIS) wells, a narrow shell approximating
//! a delta-function shell, and tabulated shapes with linear interpolation.
//! Every kind carries a length scale `R`; shapes are normalised so that the
//! coupling `g` is dimensionless (`v` has units of inverse length squared).

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Angular momentum quantum number of the partial wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngularMomentum(u32);

impl AngularMomentum {
    pub const fn new(ell: u32) -> Self {
        AngularMomentum(ell)
    }

    pub const fn ell(self) -> u32 {
        self.0
    }

    /// `l + 1/2`.
    pub fn big_l(self) -> f64 {
        self.0 as f64 + 0.5
    }

    /// `2l + 1`.
    pub fn multiplicity(self) -> f64 {
        2.0 * self.0 as f64 + 1.0
    }

    /// Centrifugal coefficient `l(l+1)`.
    pub fn centrifugal(self) -> f64 {
        let l = self.0 as f64;
        l * (l + 1.0)
    }
}

impl From<u32> for AngularMomentum {
    fn from(ell: u32) -> Self {
        AngularMomentum(ell)
    }
}

impl fmt::Display for AngularMomentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    SquareWell,
    Exponential,
    Yukawa,
    Stis,
    Shell,
    Tabulated,
}

impl PotentialKind {
    pub const BUILT_IN: [PotentialKind; 4] = [
        PotentialKind::SquareWell,
        PotentialKind::Exponential,
        PotentialKind::Yukawa,
        PotentialKind::Stis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PotentialKind::SquareWell => "square_well",
            PotentialKind::Exponential => "exponential",
            PotentialKind::Yukawa => "yukawa",
            PotentialKind::Stis => "stis",
            PotentialKind::Shell => "shell",
            PotentialKind::Tabulated => "tabulated",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "square_well" | "squarewell" | "square" => PotentialKind::SquareWell,
            "exponential" | "exp" => PotentialKind::Exponential,
            "yukawa" => PotentialKind::Yukawa,
            "stis" => PotentialKind::Stis,
            "shell" => PotentialKind::Shell,
            "tabulated" | "table" => PotentialKind::Tabulated,
            other => return Err(Error::config("kind", format!("unknown potential kind `{other}`"))),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    SquareWell,
    Exponential,
    Yukawa,
    Stis { alpha: f64 },
    Shell { width: f64 },
    Tabulated { radii: Vec<f64>, values: Vec<f64> },
}

/// Radial extent of the nonzero part of `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    /// `v(r) = 0` for `r < inner`.
    pub inner: f64,
    /// `v(r) = 0` for `r > outer`; `None` for tails that only decay.
    pub outer: Option<f64>,
    /// Interior radii where `v` or its derivative jumps.
    pub breaks: Vec<f64>,
}

/// An immutable potential shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    shape: Shape,
    scale: f64,
}

fn positive(field: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::config(field, format!("must be a positive finite number, got {x}")))
    }
}

impl Potential {
    /// `v(r) = R^-2` for `r <= R`, zero beyond.
    pub fn square_well(scale: f64) -> Result<Self> {
        Ok(Potential { shape: Shape::SquareWell, scale: positive("R", scale)? })
    }

    /// `v(r) = R^-2 exp(-r/R)`.
    pub fn exponential(scale: f64) -> Result<Self> {
        Ok(Potential { shape: Shape::Exponential, scale: positive("R", scale)? })
    }

    /// `v(r) = (rR)^-1 exp(-r/R)`.
    pub fn yukawa(scale: f64) -> Result<Self> {
        Ok(Potential { shape: Shape::Yukawa, scale: positive("R", scale)? })
    }

    /// `v(r) = (R + r)^-2` for `r <= alpha R`, zero beyond.
    pub fn stis(scale: f64, alpha: f64) -> Result<Self> {
        Ok(Potential {
            shape: Shape::Stis { alpha: positive("alpha", alpha)? },
            scale: positive("R", scale)?,
        })
    }

    /// `v(r) = 1/(w R)` on `[R, R + w]`, zero elsewhere, so that the shell
    /// carries the weight `1/R` of a delta shell at `R`.
    pub fn shell(scale: f64, width: f64) -> Result<Self> {
        Ok(Potential {
            shape: Shape::Shell { width: positive("width", width)? },
            scale: positive("R", scale)?,
        })
    }

    /// Piecewise-linear shape through `(radius, value)` points.
    ///
    /// Radii must be strictly increasing and nonnegative, values finite and
    /// nonnegative. Below the first radius the first value is held; beyond the
    /// last radius the shape is zero.
    pub fn tabulated(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::config("grid", "tabulated potential needs at least one point"));
        }
        let mut radii = Vec::with_capacity(points.len());
        let mut values = Vec::with_capacity(points.len());
        for (i, &(r, v)) in points.iter().enumerate() {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::config("grid", format!("radius #{i} = {r} is not a finite nonnegative number")));
            }
            if !v.is_finite() || v < 0.0 {
                return Err(Error::config("grid", format!("value #{i} = {v} is not finite and nonnegative")));
            }
            if let Some(&prev) = radii.last() {
                if r <= prev {
                    return Err(Error::config("grid", format!("radii must be strictly increasing (#{i}: {r} <= {prev})")));
                }
            }
            radii.push(r);
            values.push(v);
        }
        let last = *radii.last().unwrap();
        if last <= 0.0 {
            return Err(Error::config("grid", "last radius must be positive"));
        }
        Ok(Potential { shape: Shape::Tabulated { radii, values }, scale: last })
    }

    /// Reads a two-column `radius,value` CSV. A header row is allowed.
    pub fn tabulated_from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut points = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::config("grid", e.to_string()))?;
            if record.len() < 2 {
                return Err(Error::config("grid", format!("row {} has fewer than two columns", line + 1)));
            }
            let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
            match parsed {
                (Ok(r), Ok(v)) => points.push((r, v)),
                _ if line == 0 => continue,
                _ => return Err(Error::config("grid", format!("row {} is not numeric", line + 1))),
            }
        }
        Potential::tabulated(&points)
    }

    pub fn kind(&self) -> PotentialKind {
        match self.shape {
            Shape::SquareWell => PotentialKind::SquareWell,
            Shape::Exponential => PotentialKind::Exponential,
            Shape::Yukawa => PotentialKind::Yukawa,
            Shape::Stis { .. } => PotentialKind::Stis,
            Shape::Shell { .. } => PotentialKind::Shell,
            Shape::Tabulated { .. } => PotentialKind::Tabulated,
        }
    }

    /// The length scale `R` (the last grid radius for tabulated shapes).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn alpha(&self) -> Option<f64> {
        match self.shape {
            Shape::Stis { alpha } => Some(alpha),
            _ => None,
        }
    }

    pub fn shell_width(&self) -> Option<f64> {
        match self.shape {
            Shape::Shell { width } => Some(width),
            _ => None,
        }
    }

    /// Same shape with every length multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Result<Self> {
        let factor = positive("factor", factor)?;
        Ok(match &self.shape {
            Shape::Shell { width } => Potential::shell(self.scale * factor, width * factor)?,
            Shape::Tabulated { radii, values } => {
                let f2 = factor * factor;
                let pts: Vec<_> = radii.iter().zip(values).map(|(r, v)| (r * factor, v / f2)).collect();
                Potential::tabulated(&pts)?
            }
            shape => Potential { shape: shape.clone(), scale: self.scale * factor },
        })
    }

    /// `v(r)`; errors for `r <= 0`.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || r.is_nan() {
            return Err(Error::Domain(format!("potential evaluated at r = {r}, need r > 0")));
        }
        Ok(self.value(r))
    }

    /// Unchecked `v(r)` for integrands; `r` must be positive.
    #[inline]
    pub(crate) fn value(&self, r: f64) -> f64 {
        let big_r = self.scale;
        match &self.shape {
            Shape::SquareWell => {
                if r <= big_r {
                    1.0 / (big_r * big_r)
                } else {
                    0.0
                }
            }
            Shape::Exponential => (-r / big_r).exp() / (big_r * big_r),
            Shape::Yukawa => (-r / big_r).exp() / (r * big_r),
            Shape::Stis { alpha } => {
                if r <= alpha * big_r {
                    let d = big_r + r;
                    1.0 / (d * d)
                } else {
                    0.0
                }
            }
            Shape::Shell { width } => {
                if r >= big_r && r <= big_r + width {
                    1.0 / (width * big_r)
                } else {
                    0.0
                }
            }
            Shape::Tabulated { radii, values } => interpolate(radii, values, r),
        }
    }

    pub fn support(&self) -> Support {
        let big_r = self.scale;
        match &self.shape {
            Shape::SquareWell => Support { inner: 0.0, outer: Some(big_r), breaks: vec![] },
            Shape::Exponential | Shape::Yukawa => Support { inner: 0.0, outer: None, breaks: vec![] },
            Shape::Stis { alpha } => Support { inner: 0.0, outer: Some(alpha * big_r), breaks: vec![] },
            Shape::Shell { width } => Support { inner: big_r, outer: Some(big_r + width), breaks: vec![] },
            Shape::Tabulated { radii, .. } => {
                let last = *radii.last().unwrap();
                let breaks = radii.iter().copied().filter(|&r| r > 0.0 && r < last).collect();
                Support { inner: 0.0, outer: Some(last), breaks }
            }
        }
    }

    pub fn has_compact_support(&self) -> bool {
        self.support().outer.is_some()
    }

    /// Radius beyond which `r v(r) < tail_tol` at every sampled radius.
    ///
    /// Compact shapes return their exact cutoff. Decaying shapes are sampled on
    /// a geometric ladder up to `max_radius` and the last crossing is refined by
    /// bisection.
    pub fn support_radius(&self, tail_tol: f64, max_radius: f64) -> Result<f64> {
        if !(tail_tol > 0.0) {
            return Err(Error::Domain(format!("tail tolerance must be positive, got {tail_tol}")));
        }
        if let Some(outer) = self.support().outer {
            return Ok(outer);
        }
        let tail = |r: f64| r * self.value(r);
        let ratio = 1.05_f64;
        let mut r = self.scale * 1e-3;
        let mut last_above = None;
        while r <= max_radius {
            if tail(r) >= tail_tol {
                last_above = Some(r);
            }
            r *= ratio;
        }
        let Some(lo) = last_above else {
            return Ok(self.scale * 1e-3);
        };
        let mut lo = lo;
        let mut hi = lo * ratio;
        if hi > max_radius {
            return Err(Error::Truncation { tol: tail_tol, radius: max_radius });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if tail(mid) >= tail_tol {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * hi {
                break;
            }
        }
        Ok(hi)
    }

    /// Samples `r^(2-eps) v(r)` on `r = 2^-k` and `r^(2+eps) v(r)` on `r = 2^k`,
    /// `k = 0..=40`, and checks that both ladders end decreasing toward zero.
    pub fn validate_regularity(&self, eps: f64) -> RegularityReport {
        let ladder = |sign: f64, power: f64| -> Vec<f64> {
            (0..=40)
                .map(|k| {
                    let r = 2f64.powf(sign * k as f64) * self.scale;
                    r.powf(power) * self.value(r)
                })
                .collect()
        };
        let origin = ladder(-1.0, 2.0 - eps);
        let infinity = ladder(1.0, 2.0 + eps);
        RegularityReport {
            eps,
            origin_ok: tends_to_zero(&origin),
            infinity_ok: tends_to_zero(&infinity),
            origin,
            infinity,
        }
    }
}

fn interpolate(radii: &[f64], values: &[f64], r: f64) -> f64 {
    let n = radii.len();
    if r <= radii[0] {
        return values[0];
    }
    if r > radii[n - 1] {
        return 0.0;
    }
    let k = radii.partition_point(|&x| x < r);
    if radii[k] == r {
        return values[k];
    }
    let (r0, r1) = (radii[k - 1], radii[k]);
    let t = (r - r0) / (r1 - r0);
    values[k - 1] + t * (values[k] - values[k - 1])
}

// Last three samples non-increasing and either already zero or strictly
// smaller than where they started.
fn tends_to_zero(samples: &[f64]) -> bool {
    let tail = &samples[samples.len() - 3..];
    if tail.iter().any(|x| !x.is_finite()) {
        return false;
    }
    let non_increasing = tail.windows(2).all(|w| w[1] <= w[0]);
    non_increasing && (tail[2] == 0.0 || tail[2] < tail[0])
}

/// Numerical check of the small- and large-`r` regularity conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub eps: f64,
    pub origin_ok: bool,
    pub infinity_ok: bool,
    /// `r^(2-eps) v(r)` at `r = R 2^-k`.
    pub origin: Vec<f64>,
    /// `r^(2+eps) v(r)` at `r = R 2^k`.
    pub infinity: Vec<f64>,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.origin_ok && self.infinity_ok
    }
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok| if ok { "ok" } else { "VIOLATED" };
        write!(
            f,
            "regularity (eps = {}): r -> 0 {}, r -> inf {}",
            self.eps,
            verdict(self.origin_ok),
            verdict(self.infinity_ok)
        )
    }
}
