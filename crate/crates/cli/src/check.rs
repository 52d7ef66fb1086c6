//! Invariant suite behind `gcrit check`.

use gcrit::limits::{self, Method, SandwichReport};
use gcrit::{exact, AngularMomentum, Error, Execution, Potential, QuadratureConfig};

pub const ORDERING_TOLERANCE: f64 = 1e-6;
pub const ORACLE_TOLERANCE: f64 = 1e-5;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-7;
pub const ANALYTIC_TOLERANCE: f64 = 1e-8;
pub const REGULARITY_EPS: f64 = 1e-2;

pub struct Case {
    pub potential: Potential,
    pub ell: AngularMomentum,
}

impl Case {
    fn name(&self) -> String {
        match self.potential.alpha() {
            Some(a) => format!("{}(alpha={a}) l={}", self.potential.kind(), self.ell),
            None => format!("{} l={}", self.potential.kind(), self.ell),
        }
    }
}

pub struct InvariantLine {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: Vec<String>,
    extreme: Option<(f64, String)>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, failures: Vec::new(), extreme: None }
    }

    fn record(&mut self, ok: bool, case: &str, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(format!("{case}: {}", what()));
        }
    }

    /// Tracks the smallest observed `value`, reported as the closest call.
    fn observe_min(&mut self, value: f64, case: &str) {
        if self.extreme.as_ref().is_none_or(|(v, _)| value < *v) {
            self.extreme = Some((value, case.to_string()));
        }
    }

    fn observe_max(&mut self, value: f64, case: &str) {
        self.observe_min(-value, case);
    }

    fn line(self, label: &str, flip: bool) -> InvariantLine {
        let pass = self.failures.is_empty();
        let detail = if pass {
            let mut d = format!("{} cases", self.checked);
            if let Some((v, c)) = self.extreme {
                let v = if flip { -v } else { v };
                d += &format!(", {label} {v:.2e} ({c})");
            }
            d
        } else {
            self.failures.join("; ")
        };
        InvariantLine { name: self.name, pass, detail }
    }
}

/// Runs every invariant over `cases`. Numerical failures abort with the
/// first error; invariant violations are reported per line.
pub fn run(cases: &[Case], cfg: &QuadratureConfig) -> Result<Vec<InvariantLine>, Error> {
    let mut regularity = Tally::new("regularity");
    let mut regular = Vec::new();
    for case in cases {
        let report = case.potential.validate_regularity(REGULARITY_EPS);
        let ok = report.passed();
        regularity.record(ok, &case.name(), || report.to_string());
        if ok {
            regular.push(case);
        }
    }
    let mut lines = vec![regularity.line("", false)];

    // Cases are independent, so they run concurrently; the sandwich itself
    // parallelises internally as well.
    let reports: Vec<Result<SandwichReport, Error>> = cfg
        .execution
        .map(&regular, |case| limits::sandwich(&case.potential, case.ell, cfg));

    let mut ordering = Tally::new("sandwich ordering");
    let mut monotone = Tally::new("monotone lower sequence");
    let mut ggmt = Tally::new("GGMT above Bargmann-Schwinger");
    let mut oracles = Tally::new("shooting vs Nystrom");
    let mut analytic = Tally::new("shooting vs closed form");
    let mut closed = Tally::new("closed-form variational minimum");
    let mut sufficient = Tally::new("sufficient condition at the variational limit");
    for (case, report) in regular.iter().zip(reports) {
        let report = report?;
        let name = case.name();
        let margin = report.ordering_margin();
        ordering.record(report.is_ordered(ORDERING_TOLERANCE), &name, || format!("margin {margin:.3e}"));
        ordering.observe_min(margin, &name);

        monotone.record(report.lower_sequence_monotone(0.0), &name, || {
            let v = |m| report.bound(m).map_or(f64::NAN, |b| b.value);
            format!(
                "BS {} eq2 {} B {}",
                v(Method::BargmannSchwinger),
                v(Method::SecondOrder),
                v(Method::ThirdOrder)
            )
        });

        let value = |m| report.bound(m).map(|b| b.value).unwrap_or(f64::NAN);
        let (g_ggmt, g_bs) = (value(Method::Ggmt), value(Method::BargmannSchwinger));
        ggmt.record(g_ggmt >= g_bs * (1.0 - 1e-12), &name, || format!("GGMT {g_ggmt} < BS {g_bs}"));

        let dev = ((report.g_shooting - report.g_nystrom) / report.g_shooting).abs();
        oracles.record(dev <= ORACLE_TOLERANCE, &name, || format!("relative deviation {dev:.3e}"));
        oracles.observe_max(dev, &name);

        if let Some(exact) = closed_form(&case.potential, case.ell) {
            let dev = ((report.g_shooting - exact) / exact).abs();
            analytic.record(dev <= ANALYTIC_TOLERANCE, &name, || format!("relative deviation {dev:.3e}"));
            analytic.observe_max(dev, &name);
        }

        if let Some(c) = report.bound(Method::VariationalClosedForm) {
            let numeric = value(Method::Variational);
            let dev = ((numeric - c.value) / c.value).abs();
            closed.record(dev <= CLOSED_FORM_TOLERANCE, &name, || format!("relative deviation {dev:.3e}"));
            closed.observe_max(dev, &name);
        }

        let variational = report.bound(Method::Variational).expect("sandwich computes the variational limit");
        let p = variational.optimal_param.expect("variational limit records p");
        let above = limits::sufficient_condition_holds(&case.potential, case.ell, variational.value * (1.0 + 1e-6), p, cfg)?;
        let below = limits::sufficient_condition_holds(&case.potential, case.ell, variational.value * (1.0 - 1e-6), p, cfg)?;
        sufficient.record(above && !below, &name, || format!("holds above: {above}, holds below: {below}"));
    }
    lines.push(ordering.line("smallest margin", false));
    lines.push(monotone.line("", false));
    lines.push(ggmt.line("", false));
    lines.push(oracles.line("largest deviation", true));
    if analytic.checked > 0 {
        lines.push(analytic.line("largest deviation", true));
    }
    if closed.checked > 0 {
        lines.push(closed.line("largest deviation", true));
    }
    lines.push(sufficient.line("", false));
    Ok(lines)
}

/// The four built-in shapes at `R = 1` (STIS with `alpha = 1`), `l = 0..=5`.
pub fn default_cases() -> Vec<Case> {
    let shapes = [
        Potential::square_well(1.0),
        Potential::exponential(1.0),
        Potential::yukawa(1.0),
        Potential::stis(1.0, 1.0),
    ];
    shapes
        .into_iter()
        .map(|p| p.expect("built-in parameters are valid"))
        .flat_map(|p| (0..=5).map(move |l| Case { potential: p.clone(), ell: AngularMomentum::new(l) }))
        .collect()
}

fn closed_form(p: &Potential, ell: AngularMomentum) -> Option<f64> {
    use gcrit::PotentialKind::*;
    match (p.kind(), ell.ell()) {
        (SquareWell, _) => exact::square_well_exact(ell).ok(),
        (Exponential, 0) => Some(exact::exponential_exact_swave()),
        (Stis, 0) => p.alpha().and_then(|a| exact::stis_exact_swave(a).ok()),
        _ => None,
    }
}

pub fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}
