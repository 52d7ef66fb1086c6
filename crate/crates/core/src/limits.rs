//! Lower and upper limits on the critical coupling `g_c`.
//!
//! All limits are computed for the unit-strength shape `v` of
//! `V(r) = -g v(r)`, so the returned values bound the dimensionless `g_c`
//! directly. With `m = 2l + 1` and `L = l + 1/2`:
//!
//! | method | side | formula |
//! |---|---|---|
//! | Bargmann-Schwinger | lower | `m / ∫ r v` |
//! | second order | lower | `[(2/m²) ∫ dx x^-2l v(x) ∫_0^x dy y^(2l+2) v(y)]^(-1/2)` |
//! | third order | lower | `[(6/m³) ∫ dx x^-2l v ∫_0^x dy y v ∫_0^y dz z^(2l+2) v]^(-1/3)` |
//! | GGMT | lower | `[C(p, l) ∫ dr/r (r² v)^p]^(-1/p)`, maximised over `p >= 1` |
//! | Calogero I | upper | `m / [∫_0^a r v (r/a)^m + ∫_a^∞ r v (a/r)^m]`, minimised over `a` |
//! | Calogero II | upper | smallest `g` with `a ∫ g v / [(r/a)^2l + (r/a)^-2l a² g v] > 1` for some `a` |
//! | variational | upper | `L ∫ F(2p-1) / ∫ dx F(p;x) x^-L ∫_0^x dy F(p;y) y^L`, minimised over `p > 0` |
//!
//! where `F(q; x) = x^q v(x)^((q+1)/2)` and
//! `C(p, l) = (p-1)^(p-1) Γ(2p) / (m^(2p-1) p^p Γ(p)²)`.

use std::fmt;
use std::str::FromStr;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact;
use crate::optimize::{minimize_log, LogSearch};
use crate::potential::{AngularMomentum, Potential, PotentialKind};
use crate::quad::{Domain, IntegralResult, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BargmannSchwinger,
    SecondOrder,
    ThirdOrder,
    Ggmt,
    CalogeroI,
    CalogeroII,
    Variational,
    VariationalClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::BargmannSchwinger,
        Method::SecondOrder,
        Method::ThirdOrder,
        Method::Ggmt,
        Method::CalogeroI,
        Method::CalogeroII,
        Method::Variational,
        Method::VariationalClosedForm,
    ];

    pub fn side(self) -> Side {
        match self {
            Method::BargmannSchwinger | Method::SecondOrder | Method::ThirdOrder | Method::Ggmt => Side::Lower,
            _ => Side::Upper,
        }
    }

    pub fn has_parameter(self) -> bool {
        matches!(
            self,
            Method::Ggmt | Method::CalogeroI | Method::CalogeroII | Method::Variational | Method::VariationalClosedForm
        )
    }

    /// Whether the method applies to this potential.
    pub fn applies_to(self, pot: &Potential) -> bool {
        self != Method::VariationalClosedForm || pot.kind() == PotentialKind::SquareWell
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::BargmannSchwinger => "bargmann_schwinger",
            Method::SecondOrder => "second_order",
            Method::ThirdOrder => "third_order",
            Method::Ggmt => "ggmt",
            Method::CalogeroI => "calogero_1",
            Method::CalogeroII => "calogero_2",
            Method::Variational => "variational",
            Method::VariationalClosedForm => "variational_closed_form",
        }
    }

    /// Column label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Method::BargmannSchwinger => "g_BS",
            Method::SecondOrder => "g_eq2",
            Method::ThirdOrder => "g_B",
            Method::Ggmt => "g_GGMT",
            Method::CalogeroI => "g_C1",
            Method::CalogeroII => "g_C2",
            Method::Variational => "g_New",
            Method::VariationalClosedForm => "g_New_closed",
        }
    }

    /// Computes this bound with its free parameter optimised.
    pub fn compute(self, pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
        match self {
            Method::BargmannSchwinger => lower_bargmann_schwinger(pot, ell, cfg),
            Method::SecondOrder => lower_second_order(pot, ell, cfg),
            Method::ThirdOrder => lower_third_order(pot, ell, cfg),
            Method::Ggmt => lower_ggmt(pot, ell, cfg),
            Method::CalogeroI => upper_calogero_i(pot, ell, cfg),
            Method::CalogeroII => upper_calogero_ii(pot, ell, cfg),
            Method::Variational => upper_variational(pot, ell, cfg),
            Method::VariationalClosedForm => {
                if pot.kind() != PotentialKind::SquareWell {
                    return Err(Error::config(
                        "methods",
                        "variational_closed_form is only available for the square well",
                    ));
                }
                Ok(upper_variational_square_well(ell))
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Method::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .or(match key.as_str() {
                "bs" => Some(Method::BargmannSchwinger),
                "eq2" => Some(Method::SecondOrder),
                "eq3" | "brau" => Some(Method::ThirdOrder),
                "c1" | "calogero_i" => Some(Method::CalogeroI),
                "c2" | "calogero_ii" => Some(Method::CalogeroII),
                "new" => Some(Method::Variational),
                _ => None,
            })
            .ok_or_else(|| Error::config("methods", format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub method: Method,
    pub side: Side,
    pub value: f64,
    /// `p` for GGMT and the variational bounds, `a` for the Calogero bounds.
    pub optimal_param: Option<f64>,
    pub ell: AngularMomentum,
    /// Propagated quadrature error estimate on `value`.
    pub error_estimate: f64,
}

impl BoundResult {
    fn new(method: Method, ell: AngularMomentum, value: f64, rel_err: f64, param: Option<f64>) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Degenerate(format!("{method} bound evaluated to {value}")));
        }
        Ok(BoundResult {
            method,
            side: method.side(),
            value,
            optimal_param: param,
            ell,
            error_estimate: (value * rel_err).abs(),
        })
    }
}

fn relative_cfg(cfg: &QuadratureConfig) -> QuadratureConfig {
    // Bound integrals span many orders of magnitude as R and p vary, so only
    // the relative tolerance is meaningful for them.
    QuadratureConfig { abs_tol: f64::MIN_POSITIVE, ..*cfg }
}

fn domain(pot: &Potential) -> Result<Domain> {
    Domain::from_support(&pot.support(), pot.scale())
}

fn rel(r: &IntegralResult) -> f64 {
    if r.value == 0.0 {
        f64::INFINITY
    } else {
        (r.error_estimate / r.value).abs()
    }
}

fn positive_integral(r: IntegralResult, what: &str) -> Result<IntegralResult> {
    if r.value.is_finite() && r.value > 0.0 {
        Ok(r)
    } else {
        Err(Error::Degenerate(format!("{what} = {} is not positive and finite", r.value)))
    }
}

pub fn lower_bargmann_schwinger(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    let cfg = relative_cfg(cfg);
    let first = domain(pot)?.integrate(|x| x * pot.value(x), &cfg)?;
    let first = positive_integral(first, "∫ r v(r) dr")?;
    BoundResult::new(Method::BargmannSchwinger, ell, ell.multiplicity() / first.value, rel(&first), None)
}

pub fn lower_second_order(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    let cfg = relative_cfg(cfg);
    let l2 = 2 * ell.ell() as i32;
    let nested = domain(pot)?.nested_double(
        |x| x.powi(-l2) * pot.value(x),
        |y| y.powi(l2 + 2) * pot.value(y),
        &cfg,
    )?;
    let nested = positive_integral(nested, "second-order nested integral")?;
    let m = ell.multiplicity();
    let value = (2.0 / (m * m) * nested.value).powf(-0.5);
    BoundResult::new(Method::SecondOrder, ell, value, 0.5 * rel(&nested), None)
}

pub fn lower_third_order(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    let cfg = relative_cfg(cfg);
    let l2 = 2 * ell.ell() as i32;
    let nested = domain(pot)?.nested_triple(
        |x| x.powi(-l2) * pot.value(x),
        |y| y * pot.value(y),
        |z| z.powi(l2 + 2) * pot.value(z),
        &cfg,
    )?;
    let nested = positive_integral(nested, "third-order nested integral")?;
    let m = ell.multiplicity();
    let value = (6.0 / (m * m * m) * nested.value).powf(-1.0 / 3.0);
    BoundResult::new(Method::ThirdOrder, ell, value, rel(&nested) / 3.0, None)
}

/// `ln C(p, l)`; the `(p-1)^(p-1)` factor is taken as 1 at `p = 1`.
pub fn ggmt_log_constant(p: f64, ell: AngularMomentum) -> f64 {
    let pm1 = p - 1.0;
    let head = if pm1 == 0.0 { 0.0 } else { pm1 * pm1.ln() };
    head + ln_gamma(2.0 * p) - (2.0 * p - 1.0) * ell.multiplicity().ln() - p * p.ln() - 2.0 * ln_gamma(p)
}

/// Rough maximum of `r² v(r)` over the support, used to keep `(r² v)^p` in range.
fn peak_r2v(pot: &Potential) -> f64 {
    let s = pot.support();
    let lo = if s.inner > 0.0 { s.inner } else { pot.scale() * 1e-6 };
    let hi = s.outer.unwrap_or(pot.scale() * 100.0);
    let n = 200;
    let mut peak = 0.0_f64;
    for i in 0..=n {
        let r = lo * (hi / lo).powf(i as f64 / n as f64);
        peak = peak.max(r * r * pot.value(r));
    }
    peak
}

pub const GGMT_MAX_P: f64 = 50.0;

pub fn lower_ggmt_at(pot: &Potential, ell: AngularMomentum, p: f64, cfg: &QuadratureConfig) -> Result<BoundResult> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("GGMT exponent must satisfy p >= 1, got {p}")));
    }
    let cfg = relative_cfg(cfg);
    let peak = peak_r2v(pot);
    if !(peak > 0.0) {
        return Err(Error::Degenerate("r² v(r) vanishes on the sampled support".into()));
    }
    let ln_peak = peak.ln();
    let scaled = domain(pot)?.integrate(
        |r| {
            let v = pot.value(r);
            if v == 0.0 {
                0.0
            } else {
                (p * (2.0 * r.ln() + v.ln() - ln_peak)).exp() / r
            }
        },
        &cfg,
    )?;
    let scaled = positive_integral(scaled, "∫ (r² v)^p dr/r")?;
    let ln_integral = p * ln_peak + scaled.value.ln();
    let value = (-(ggmt_log_constant(p, ell) + ln_integral) / p).exp();
    BoundResult::new(Method::Ggmt, ell, value, rel(&scaled) / p, Some(p))
}

pub fn lower_ggmt(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    let search = LogSearch::new(1.0, 20.0).bounded(1.0, GGMT_MAX_P);
    let best = minimize_log(|p| lower_ggmt_at(pot, ell, p, cfg).map(|b| -b.value), search, cfg.execution)?;
    if best.at_limit && best.arg >= GGMT_MAX_P {
        log::warn!("GGMT optimum for {} l={} sits at the p = {GGMT_MAX_P} cap", pot.kind(), ell);
    }
    lower_ggmt_at(pot, ell, best.arg, cfg)
}

pub fn upper_calogero_i_at(pot: &Potential, ell: AngularMomentum, a: f64, cfg: &QuadratureConfig) -> Result<BoundResult> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("Calogero radius must be positive, got {a}")));
    }
    let cfg = relative_cfg(cfg);
    let m = ell.multiplicity();
    let mi = 2 * ell.ell() as i32 + 1;
    let dom = domain(pot)?;
    let mut total = 0.0;
    let mut err = 0.0;
    if let Some(inner) = dom.restrict(0.0, Some(a)) {
        let r = inner.integrate(|r| r * pot.value(r) * (r / a).powi(mi), &cfg)?;
        total += r.value;
        err += r.error_estimate;
    }
    if let Some(outer) = dom.restrict(a, None) {
        let r = outer.integrate(|r| r * pot.value(r) * (a / r).powi(mi), &cfg)?;
        total += r.value;
        err += r.error_estimate;
    }
    if !(total > 0.0) {
        return Err(Error::Degenerate(format!("Calogero I denominator vanishes at a = {a}")));
    }
    BoundResult::new(Method::CalogeroI, ell, m / total, err / total, Some(a))
}

pub fn upper_calogero_i(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    let s = pot.scale();
    let best = minimize_log(
        |a| upper_calogero_i_at(pot, ell, a, cfg).map(|b| b.value),
        LogSearch::new(1e-2 * s, 1e2 * s),
        cfg.execution,
    )?;
    upper_calogero_i_at(pot, ell, best.arg, cfg)
}

/// Left side of the second Calogero condition at radius `a` and strength `g`.
pub fn calogero_ii_lhs(pot: &Potential, ell: AngularMomentum, a: f64, g: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(a > 0.0 && g > 0.0) {
        return Err(Error::Domain(format!("need a > 0 and g > 0, got a = {a}, g = {g}")));
    }
    let cfg = relative_cfg(cfg);
    let l2 = 2 * ell.ell() as i32;
    let a2g = a * a * g;
    let r = domain(pot)?.integrate(
        |r| {
            let v = pot.value(r);
            if v == 0.0 {
                return 0.0;
            }
            let rho = r / a;
            let up = rho.powi(l2);
            g * v * up / (up * up + a2g * v)
        },
        &cfg,
    )?;
    Ok(a * r.value)
}

struct CalogeroIiProbe {
    lhs: f64,
    a: f64,
}

fn calogero_ii_max(pot: &Potential, ell: AngularMomentum, g: f64, cfg: &QuadratureConfig) -> Result<CalogeroIiProbe> {
    let s = pot.scale();
    let best = minimize_log(
        |a| calogero_ii_lhs(pot, ell, a, g, cfg).map(|x| -x),
        LogSearch::new(1e-2 * s, 1e2 * s),
        cfg.execution,
    )?;
    Ok(CalogeroIiProbe { lhs: -best.value, a: best.arg })
}

/// Second Calogero condition evaluated at a fixed radius: the smallest `g`
/// for which the left side exceeds 1 at this `a`.
pub fn upper_calogero_ii_at(
    pot: &Potential,
    ell: AngularMomentum,
    a: f64,
    g_trial: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundResult> {
    let holds = |g: f64| calogero_ii_lhs(pot, ell, a, g, cfg).map(|x| x >= 1.0);
    let g = bisect_threshold(holds, g_trial)?;
    BoundResult::new(Method::CalogeroII, ell, g, 1e-11, Some(a))
}

pub const CALOGERO_II_G_RANGE: (f64, f64) = (1e-6, 1e6);

/// Smallest `g` where `holds(g)` becomes true, by geometric bisection.
/// `hint` seeds the bracket when it lies inside the search range.
fn bisect_threshold<F: Fn(f64) -> Result<bool>>(holds: F, hint: f64) -> Result<f64> {
    let (mut lo, mut hi) = CALOGERO_II_G_RANGE;
    if hint > lo && hint < hi {
        if holds(hint)? {
            hi = hint;
        } else {
            lo = hint;
        }
    }
    if !holds(hi)? {
        return Err(Error::Range(format!(
            "second Calogero condition never holds for g up to {hi:e}"
        )));
    }
    for _ in 0..200 {
        if hi / lo - 1.0 < 1e-11 {
            break;
        }
        let mid = (lo * hi).sqrt();
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

pub fn upper_calogero_ii(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    // The left side grows with g, so the threshold of its maximum over a is
    // found by bisection on g. The Bargmann-Schwinger value seeds the bracket:
    // no sufficient condition can hold below a necessary one.
    let hint = lower_bargmann_schwinger(pot, ell, cfg).map(|b| b.value).unwrap_or(1.0);
    let g = bisect_threshold(|g| calogero_ii_max(pot, ell, g, cfg).map(|p| p.lhs >= 1.0), hint)?;
    let probe = calogero_ii_max(pot, ell, g, cfg)?;
    BoundResult::new(Method::CalogeroII, ell, g, 1e-11, Some(probe.a))
}

/// The two integrals of the variational bound at exponent `p` for the shape
/// `strength * v`.
fn variational_parts(
    pot: &Potential,
    ell: AngularMomentum,
    p: f64,
    strength: f64,
    cfg: &QuadratureConfig,
) -> Result<(IntegralResult, IntegralResult)> {
    let cfg = relative_cfg(cfg);
    let big_l = ell.big_l();
    let ln_s = strength.ln();
    let f = move |q: f64, extra: f64, x: f64| {
        let v = pot.value(x);
        if v == 0.0 {
            0.0
        } else {
            ((q + extra) * x.ln() + 0.5 * (q + 1.0) * (v.ln() + ln_s)).exp()
        }
    };
    let dom = domain(pot)?;
    let numerator = dom.integrate(|x| f(2.0 * p - 1.0, 0.0, x), &cfg)?;
    let nested = dom.nested_double(|x| f(p, -big_l, x), |y| f(p, big_l, y), &cfg)?;
    Ok((numerator, nested))
}

pub fn upper_variational_at(pot: &Potential, ell: AngularMomentum, p: f64, cfg: &QuadratureConfig) -> Result<BoundResult> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain(format!("variational exponent must be positive, got {p}")));
    }
    let (num, nested) = variational_parts(pot, ell, p, 1.0, cfg)?;
    let num = positive_integral(num, "∫ F(2p-1; x) dx")?;
    let nested = positive_integral(nested, "variational nested integral")?;
    let value = ell.big_l() * num.value / nested.value;
    BoundResult::new(Method::Variational, ell, value, rel(&num) + rel(&nested), Some(p))
}

pub fn upper_variational(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<BoundResult> {
    let best = minimize_log(
        |p| upper_variational_at(pot, ell, p, cfg).map(|b| b.value),
        LogSearch::new(1e-2, 1e2),
        cfg.execution,
    )?;
    upper_variational_at(pot, ell, best.arg, cfg)
}

/// Closed-form minimum of the variational bound for the square well,
/// `L (sqrt(L + 1) + 1)²` at `p = sqrt(L + 1)`.
pub fn upper_variational_square_well(ell: AngularMomentum) -> BoundResult {
    let big_l = ell.big_l();
    let p = (big_l + 1.0).sqrt();
    BoundResult {
        method: Method::VariationalClosedForm,
        side: Side::Upper,
        value: big_l * (p + 1.0) * (p + 1.0),
        optimal_param: Some(p),
        ell,
        error_estimate: 0.0,
    }
}

/// Left side of the sufficient condition at strength `g` and exponent `p`,
/// built from `|V| = g v`.
pub fn sufficient_condition_lhs(
    pot: &Potential,
    ell: AngularMomentum,
    g: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(g > 0.0 && p > 0.0) {
        return Err(Error::Domain(format!("need g > 0 and p > 0, got g = {g}, p = {p}")));
    }
    let (den, num) = variational_parts(pot, ell, p, g, cfg)?;
    let den = positive_integral(den, "∫ F(2p-1; x) dx")?;
    Ok(num.value / (ell.big_l() * den.value))
}

/// Whether the sufficient condition for an `l`-wave bound state holds at
/// strength `g` with trial exponent `p`.
pub fn sufficient_condition_holds(
    pot: &Potential,
    ell: AngularMomentum,
    g: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<bool> {
    Ok(sufficient_condition_lhs(pot, ell, g, p, cfg)? >= 1.0)
}

pub const SANDWICH_NYSTROM_NODES: usize = 400;

/// Every limit plus both reference values for one `(potential, l)` case.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub kind: PotentialKind,
    pub ell: AngularMomentum,
    pub lower: Vec<BoundResult>,
    pub upper: Vec<BoundResult>,
    pub g_shooting: f64,
    pub g_nystrom: f64,
}

impl SandwichReport {
    pub fn bound(&self, method: Method) -> Option<&BoundResult> {
        self.lower.iter().chain(&self.upper).find(|b| b.method == method)
    }

    pub fn best_lower(&self) -> f64 {
        self.lower.iter().map(|b| b.value).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn best_upper(&self) -> f64 {
        self.upper.iter().map(|b| b.value).fold(f64::INFINITY, f64::min)
    }

    /// Smallest relative gap `(g - lower)/g` or `(upper - g)/g`, with `g`
    /// the shooting value. Negative means a bound crosses the exact value.
    pub fn ordering_margin(&self) -> f64 {
        let g = self.g_shooting;
        ((g - self.best_lower()) / g).min((self.best_upper() - g) / g)
    }

    pub fn is_ordered(&self, tolerance: f64) -> bool {
        self.ordering_margin() >= -tolerance
    }

    pub fn lower_sequence_monotone(&self, tolerance: f64) -> bool {
        let get = |m| self.bound(m).map(|b| b.value);
        match (get(Method::BargmannSchwinger), get(Method::SecondOrder), get(Method::ThirdOrder)) {
            (Some(bs), Some(b2), Some(b3)) => bs <= b2 * (1.0 + tolerance) && b2 <= b3 * (1.0 + tolerance),
            _ => false,
        }
    }
}

enum Task {
    Bound(Method),
    Shooting,
    Nystrom,
}

enum Outcome {
    Bound(BoundResult),
    Exact(f64),
}

/// Computes all limits and both reference values, independently and in
/// parallel when the configuration allows.
pub fn sandwich(pot: &Potential, ell: AngularMomentum, cfg: &QuadratureConfig) -> Result<SandwichReport> {
    let mut tasks: Vec<Task> = Method::ALL
        .into_iter()
        .filter(|m| m.applies_to(pot))
        .map(Task::Bound)
        .collect();
    tasks.push(Task::Shooting);
    tasks.push(Task::Nystrom);
    let outcomes = cfg.execution.map(&tasks, |t| match t {
        Task::Bound(m) => m.compute(pot, ell, cfg).map(Outcome::Bound),
        Task::Shooting => exact::critical_coupling_shooting(pot, ell, cfg).map(Outcome::Exact),
        Task::Nystrom => {
            exact::critical_coupling_nystrom(pot, ell, SANDWICH_NYSTROM_NODES, cfg).map(Outcome::Exact)
        }
    });
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut exact_values = Vec::new();
    for outcome in outcomes {
        match outcome? {
            Outcome::Bound(b) if b.side == Side::Lower => lower.push(b),
            Outcome::Bound(b) => upper.push(b),
            Outcome::Exact(g) => exact_values.push(g),
        }
    }
    let report = SandwichReport {
        kind: pot.kind(),
        ell,
        lower,
        upper,
        g_shooting: exact_values[0],
        g_nystrom: exact_values[1],
    };
    if !report.is_ordered(1e-6) {
        log::warn!(
            "{} l={}: bounds do not bracket g_c = {} (margin {:e})",
            report.kind,
            ell,
            report.g_shooting,
            report.ordering_margin()
        );
    }
    Ok(report)
}
