//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals,
//! plus the nested cumulative integrals
//!
//! ```text
//! ∫ dx w_out(x) ∫_0^x dy w_in(y)
//! ∫ dx w1(x) ∫_0^x dy w2(y) ∫_0^y dz w3(z)
//! ```
//!
//! The base rule is the 21-point Kronrod extension of 10-point Gauss-Legendre,
//! applied with global error-driven bisection. Nodes are interior, so
//! integrable endpoint singularities are never evaluated. A half-line
//! `[a, ∞)` is mapped onto `[0, 1)` with `x = a + c t / (1 - t)`.
//!
//! Nested integrals are computed in the mapped variable (the map is monotone,
//! so the ordering `y < x` is preserved). The inner antiderivative is cached as
//! prefix sums over an adaptive partition; evaluating it at an outer node costs
//! one short adaptive integral from the nearest partition edge.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::potential::Support;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Largest radius any search (tail truncation, threshold matching) may reach.
    pub max_radius: f64,
    /// How independent sub-problems (optimizer scans, matrix rows, table cells) run.
    pub execution: Execution,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            max_radius: 1e4,
            execution: Execution::default(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::config("rel_tol", "must be positive"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::config("abs_tol", "must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::config("max_subdivisions", "must be at least 1"));
        }
        if !(self.max_radius > 0.0) {
            return Err(Error::config("max_radius", "must be positive"));
        }
        Ok(())
    }

    pub fn sequential(mut self) -> Self {
        self.execution = Execution::Sequential;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 21-point Kronrod abscissae and weights; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525478186,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let dhlgth = hlgth.abs();

    let fc = f(centr);
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let absc = hlgth * XGK[j];
        let f1 = f(centr - absc);
        let f2 = f(centr + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    let mut error = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Panel { a, b, value, error }
}

const EVALS_PER_PANEL: usize = 21;

/// Global adaptive bisection starting from the partition `edges`.
/// Returns the result and the final partition sorted by position.
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    edges: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<(IntegralResult, Vec<Panel>)> {
    debug_assert!(edges.len() >= 2);
    let mut heap: BinaryHeap<Panel> = edges.windows(2).map(|w| gk21(f, w[0], w[1])).collect();
    let mut evaluations = heap.len() * EVALS_PER_PANEL;
    let mut frozen: Vec<Panel> = Vec::new();
    let mut subdivisions = heap.len();

    let totals = |heap: &BinaryHeap<Panel>, frozen: &[Panel]| {
        heap.iter()
            .chain(frozen)
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
    };

    loop {
        let (value, error) = totals(&heap, &frozen);
        if !value.is_finite() {
            return Err(Error::Accuracy {
                what: "integrand is not finite on the integration range".into(),
                best: value,
                error,
            });
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            let mut panels: Vec<Panel> = heap.into_vec();
            panels.extend(frozen);
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            return Ok((IntegralResult { value, error_estimate: error, evaluations }, panels));
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Accuracy {
                what: format!("quadrature did not converge within {max_subdivisions} subdivisions"),
                best: value,
                error,
            });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::Accuracy {
                what: "quadrature reached the resolution limit of the interval".into(),
                best: value,
                error,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen.push(worst);
            continue;
        }
        heap.push(gk21(f, worst.a, mid));
        heap.push(gk21(f, mid, worst.b));
        evaluations += 2 * EVALS_PER_PANEL;
        subdivisions += 1;
    }
}

/// `∫_a^b f(x) dx`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    Domain::finite(a, b)?.integrate(f, cfg)
}

/// `∫_a^∞ f(x) dx` through the map `x = a + t/(1-t)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    Domain::semi_infinite(a, 1.0)?.integrate(f, cfg)
}

/// `∫_0^∞ dx w_out(x) ∫_0^x dy w_in(y)`.
pub fn nested_double<F, G>(w_out: F, w_in: G, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    Domain::semi_infinite(0.0, 1.0)?.nested_double(w_out, w_in, cfg)
}

/// `∫_0^∞ dx w1(x) ∫_0^x dy w2(y) ∫_0^y dz w3(z)`.
pub fn nested_triple<F, G, H>(w1: F, w2: G, w3: H, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    Domain::semi_infinite(0.0, 1.0)?.nested_triple(w1, w2, w3, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Map {
    Identity,
    /// `x = origin + scale * t / (1 - t)`.
    HalfLine { origin: f64, scale: f64 },
}

impl Map {
    #[inline]
    fn x(self, t: f64) -> f64 {
        match self {
            Map::Identity => t,
            Map::HalfLine { origin, scale } => origin + scale * t / (1.0 - t),
        }
    }

    #[inline]
    fn jacobian(self, t: f64) -> f64 {
        match self {
            Map::Identity => 1.0,
            Map::HalfLine { scale, .. } => {
                let s = 1.0 - t;
                scale / (s * s)
            }
        }
    }

    fn t(self, x: f64) -> f64 {
        match self {
            Map::Identity => x,
            Map::HalfLine { origin, scale } => {
                let d = x - origin;
                d / (scale + d)
            }
        }
    }

    /// `f(x(t)) x'(t)`, zero wherever `f` vanishes.
    #[inline]
    fn pull_back(self, f: &dyn Fn(f64) -> f64, t: f64) -> f64 {
        let fx = f(self.x(t));
        if fx == 0.0 {
            0.0
        } else {
            fx * self.jacobian(t)
        }
    }
}

/// An integration range `[lower, upper]` or `[lower, ∞)` with interior
/// breakpoints where the integrand may have kinks or jumps.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    lower: f64,
    upper: Option<f64>,
    breaks: Vec<f64>,
    scale: f64,
}

impl Domain {
    pub fn finite(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!("need finite a < b, got [{a}, {b}]")));
        }
        Ok(Domain { lower: a, upper: Some(b), breaks: vec![], scale: b - a })
    }

    /// `[a, ∞)`; `scale` sets where the map puts `t = 1/2` (at `x = a + scale`).
    pub fn semi_infinite(a: f64, scale: f64) -> Result<Self> {
        if !a.is_finite() || !(scale > 0.0) {
            return Err(Error::Domain(format!("need finite a and positive scale, got a = {a}, scale = {scale}")));
        }
        Ok(Domain { lower: a, upper: None, breaks: vec![], scale })
    }

    /// The region where a potential shape is nonzero.
    pub fn from_support(support: &Support, scale: f64) -> Result<Self> {
        let d = match support.outer {
            Some(b) => Domain::finite(support.inner, b)?,
            None => Domain::semi_infinite(support.inner, scale)?,
        };
        Ok(d.with_breaks(&support.breaks))
    }

    pub fn with_breaks(mut self, breaks: &[f64]) -> Self {
        let upper = self.upper.unwrap_or(f64::INFINITY);
        self.breaks
            .extend(breaks.iter().copied().filter(|&x| x > self.lower && x < upper));
        self.breaks.sort_by(f64::total_cmp);
        self.breaks.dedup();
        self
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> Option<f64> {
        self.upper
    }

    /// The part of this domain inside `[lo, hi]` (`hi = None` for no upper cut);
    /// `None` if that part is empty.
    pub fn restrict(&self, lo: f64, hi: Option<f64>) -> Option<Domain> {
        let lower = self.lower.max(lo);
        let upper = match (self.upper, hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, b) => b,
        };
        if let Some(u) = upper {
            if u <= lower {
                return None;
            }
        }
        let d = Domain { lower, upper, breaks: vec![], scale: self.scale };
        Some(d.with_breaks(&self.breaks))
    }

    fn map_and_edges(&self) -> (Map, Vec<f64>) {
        let map = match self.upper {
            Some(_) => Map::Identity,
            None => Map::HalfLine { origin: self.lower, scale: self.scale },
        };
        let mut edges = Vec::with_capacity(self.breaks.len() + 2);
        edges.push(map.t(self.lower));
        edges.extend(self.breaks.iter().map(|&x| map.t(x)));
        edges.push(self.upper.unwrap_or(1.0));
        edges.dedup();
        (map, edges)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, cfg: &QuadratureConfig) -> Result<IntegralResult> {
        let (map, edges) = self.map_and_edges();
        let g = |t: f64| map.pull_back(&f, t);
        adaptive(&g, &edges, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions).map(|(r, _)| r)
    }

    pub fn nested_double<F, G>(&self, w_out: F, w_in: G, cfg: &QuadratureConfig) -> Result<IntegralResult>
    where
        F: Fn(f64) -> f64,
        G: Fn(f64) -> f64,
    {
        let (map, edges) = self.map_and_edges();
        let inner = |t: f64| map.pull_back(&w_in, t);
        let cum = Cumulative::build(&inner, &edges, cfg)?;
        let outer = |t: f64| {
            let w = map.pull_back(&w_out, t);
            if w == 0.0 {
                0.0
            } else {
                w * cum.eval(t)
            }
        };
        let result = adaptive(&outer, &edges, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions).map(|(r, _)| r);
        cum.finish(result)
    }

    pub fn nested_triple<F, G, H>(&self, w1: F, w2: G, w3: H, cfg: &QuadratureConfig) -> Result<IntegralResult>
    where
        F: Fn(f64) -> f64,
        G: Fn(f64) -> f64,
        H: Fn(f64) -> f64,
    {
        let (map, edges) = self.map_and_edges();
        let innermost = |t: f64| map.pull_back(&w3, t);
        let cum3 = Cumulative::build(&innermost, &edges, cfg)?;
        let middle = |t: f64| {
            let w = map.pull_back(&w2, t);
            if w == 0.0 {
                0.0
            } else {
                w * cum3.eval(t)
            }
        };
        let cum2 = Cumulative::build(&middle, &edges, cfg);
        if let Some(e) = cum3.failure.borrow_mut().take() {
            return Err(e);
        }
        let cum2 = cum2?;
        let outer = |t: f64| {
            let w = map.pull_back(&w1, t);
            if w == 0.0 {
                0.0
            } else {
                w * cum2.eval(t)
            }
        };
        let result = adaptive(&outer, &edges, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions).map(|(r, _)| r);
        let result = cum2.finish(result);
        cum3.finish(result)
    }
}

/// Running integral `t -> ∫_{edges[0]}^t f` with cached panel prefix sums.
struct Cumulative<'f> {
    f: &'f dyn Fn(f64) -> f64,
    edges: Vec<f64>,
    prefix: Vec<f64>,
    rel_tol: f64,
    max_subdivisions: usize,
    evaluations: Cell<usize>,
    failure: RefCell<Option<Error>>,
}

impl<'f> Cumulative<'f> {
    // Prefix sums use a tighter tolerance than the outer integral, since the
    // outer weight may be large where the antiderivative is small.
    const PREFIX_TIGHTENING: f64 = 1e-2;

    fn build(f: &'f dyn Fn(f64) -> f64, edges: &[f64], cfg: &QuadratureConfig) -> Result<Self> {
        let rel = (cfg.rel_tol * Self::PREFIX_TIGHTENING).max(1e3 * f64::EPSILON);
        let (res, panels) = match adaptive(f, edges, rel, 0.0, cfg.max_subdivisions.max(4 * edges.len())) {
            Ok(built) => built,
            // The running integral may diverge where the outer weight vanishes;
            // fall back to integrating from the left end on every call.
            Err(e) => {
                log::debug!("cumulative prefix unavailable ({e}); integrating on demand");
                return Ok(Cumulative {
                    f,
                    edges: vec![edges[0], f64::INFINITY],
                    prefix: vec![0.0, f64::NAN],
                    rel_tol: cfg.rel_tol,
                    max_subdivisions: cfg.max_subdivisions,
                    evaluations: Cell::new(0),
                    failure: RefCell::new(None),
                });
            }
        };
        let mut cuts = Vec::with_capacity(panels.len() + 1);
        let mut prefix = Vec::with_capacity(panels.len() + 1);
        let mut acc = 0.0;
        for p in &panels {
            cuts.push(p.a);
            prefix.push(acc);
            acc += p.value;
        }
        cuts.push(panels.last().map_or(edges[edges.len() - 1], |p| p.b));
        prefix.push(acc);
        Ok(Cumulative {
            f,
            edges: cuts,
            prefix,
            rel_tol: cfg.rel_tol,
            max_subdivisions: cfg.max_subdivisions,
            evaluations: Cell::new(res.evaluations),
            failure: RefCell::new(None),
        })
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.edges.len();
        if t <= self.edges[0] {
            return 0.0;
        }
        if t >= self.edges[n - 1] {
            return self.prefix[n - 1];
        }
        // Panel k covers [edges[k], edges[k+1]).
        let k = self.edges.partition_point(|&e| e <= t) - 1;
        let left = self.edges[k];
        if t == left {
            return self.prefix[k];
        }
        match adaptive(self.f, &[left, t], self.rel_tol, 0.0, self.max_subdivisions) {
            Ok((piece, _)) => {
                self.evaluations.set(self.evaluations.get() + piece.evaluations);
                self.prefix[k] + piece.value
            }
            Err(e) => {
                let best = match &e {
                    Error::Accuracy { best, .. } => *best,
                    _ => 0.0,
                };
                self.failure.borrow_mut().get_or_insert(e);
                self.prefix[k] + best
            }
        }
    }

    /// Folds this level's failure and evaluation count into a downstream result.
    fn finish<T: Evaluated>(&self, downstream: Result<T>) -> Result<T> {
        if let Some(e) = self.failure.borrow_mut().take() {
            return Err(e);
        }
        downstream.map(|mut r| {
            r.add_evaluations(self.evaluations.get());
            r
        })
    }
}

trait Evaluated {
    fn add_evaluations(&mut self, n: usize);
}

impl Evaluated for IntegralResult {
    fn add_evaluations(&mut self, n: usize) {
        self.evaluations += n;
    }
}

impl Evaluated for (IntegralResult, Vec<Panel>) {
    fn add_evaluations(&mut self, n: usize) {
        self.0.evaluations += n;
    }
}
