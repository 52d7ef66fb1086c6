//! Acceptance gate: one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance`. A criterion marked as a documented
//! deviation may fail without failing the run, but only in exactly the
//! documented way.

use std::process::ExitCode;
use std::time::Instant;

use gcrit::exact;
use gcrit::limits::{self, Method};
use gcrit::quad::{self, Domain};
use gcrit::tables::{self, Column, TableArtifact, TableId};
use gcrit::{AngularMomentum, Potential, QuadratureConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// The failure matches a documented, independently confirmed deviation.
    known: bool,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), known: false }
    }
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn built_ins(scale: f64) -> Vec<Potential> {
    vec![
        Potential::square_well(scale).unwrap(),
        Potential::exponential(scale).unwrap(),
        Potential::yukawa(scale).unwrap(),
        Potential::stis(scale, 1.0).unwrap(),
    ]
}

fn built_in_cases() -> Vec<(Potential, AngularMomentum)> {
    built_ins(1.0)
        .into_iter()
        .flat_map(|p| (0..=5).map(move |l| (p.clone(), AngularMomentum::new(l))))
        .collect()
}

/// Smooth, compactly supported, nonnegative shapes: a sum of Gaussian bumps
/// tapered by `(1 - r/c)²`, tabulated on 160 points.
fn random_tabulated(count: usize) -> Vec<Potential> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    (0..count)
        .map(|_| {
            let cutoff = rng.gen_range(1.0..4.0);
            let bumps: Vec<(f64, f64, f64)> = (0..rng.gen_range(1..4))
                .map(|_| {
                    (
                        rng.gen_range(0.2..2.0),
                        rng.gen_range(0.0..cutoff),
                        rng.gen_range(0.15..0.8) * cutoff,
                    )
                })
                .collect();
            let n = 160;
            let points: Vec<(f64, f64)> = (1..=n)
                .map(|i| {
                    let r = cutoff * i as f64 / n as f64;
                    let taper = (1.0 - r / cutoff).powi(2);
                    let v: f64 = bumps
                        .iter()
                        .map(|&(a, c, s)| a * (-((r - c) / s).powi(2)).exp())
                        .sum();
                    (r, v * taper)
                })
                .collect();
            Potential::tabulated(&points).unwrap()
        })
        .collect()
}

fn table_outcome(id: TableId, check_exponent: bool) -> (Outcome, TableArtifact) {
    let t0 = Instant::now();
    let table = tables::reproduce_table(id, &cfg()).unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let worst_g = table
        .columns
        .iter()
        .filter(|c| **c != Column::OptimalExponent)
        .map(|&c| table.max_deviation(c))
        .fold(0.0, f64::max);
    let mut detail = format!("max g deviation {worst_g:.2e}");
    if check_exponent {
        detail += &format!(", max p deviation {:.2e}", table.max_deviation(Column::OptimalExponent));
    }
    detail += &format!(", {secs:.1} s");
    for (label, cell) in table.failures() {
        detail += &format!(
            "; {}={label} {}: computed {:.6} vs printed {} (dev {:.2e})",
            id.label_name(),
            cell.column.label(),
            cell.computed,
            cell.printed,
            cell.deviation()
        );
    }
    (Outcome::check(table.pass, detail), table)
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let (mut out, _) = table_outcome(TableId::SquareWell, false);
    let secs = t0.elapsed().as_secs_f64();
    out.pass &= secs < 30.0;
    out
}

fn criterion_2() -> Outcome {
    let (mut out, table) = table_outcome(TableId::Exponential, true);
    if !out.pass {
        // The printed exponent for l = 3 (4.4015) disagrees with an
        // independent scipy minimisation of the same objective, which gives
        // p* = 4.396808 with minimum 29.2890539. The objective there is flat
        // to 1e-7, so the printed value is an optimiser artefact. Accept only
        // that single cell, and only if it matches the oracle.
        let failures = table.failures();
        out.known = failures.len() == 1 && {
            let (label, cell) = failures[0];
            label == 3.0
                && cell.column == Column::OptimalExponent
                && ((cell.computed - 4.396808) / 4.396808).abs() < 2e-5
        };
    }
    out
}

fn criterion_3() -> Outcome {
    table_outcome(TableId::Yukawa, true).0
}

fn criterion_4() -> Outcome {
    let (mut out, table) = table_outcome(TableId::Stis, true);
    let mut worst = 0.0_f64;
    for row in &table.rows {
        let g = row.cell(Column::Critical).unwrap().computed;
        let exact = exact::stis_exact_swave(row.label).unwrap();
        worst = worst.max(((g - exact) / exact).abs());
    }
    out.pass &= worst <= 1e-9;
    out.detail += &format!(", shooting vs closed form {worst:.2e}");
    out
}

fn criterion_5() -> Outcome {
    let pot = Potential::square_well(1.0).unwrap();
    let (mut worst_v, mut worst_p) = (0.0_f64, 0.0_f64);
    for l in 0..=5 {
        let ell = AngularMomentum::new(l);
        let b = limits::upper_variational(&pot, ell, &cfg()).unwrap();
        let closed = limits::upper_variational_square_well(ell);
        worst_v = worst_v.max(((b.value - closed.value) / closed.value).abs());
        let p_star = (ell.big_l() + 1.0).sqrt();
        worst_p = worst_p.max(((b.optimal_param.unwrap() - p_star) / p_star).abs());
    }
    Outcome::check(
        worst_v <= 1e-7 && worst_p <= 1e-3,
        format!("value deviation {worst_v:.2e}, p* deviation {worst_p:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0_f64;
    let mut worst_case = String::new();
    for (pot, ell) in built_in_cases() {
        let s = exact::critical_coupling_shooting(&pot, ell, &cfg()).unwrap();
        let n = exact::critical_coupling_nystrom(&pot, ell, 400, &cfg()).unwrap();
        let dev = ((s - n) / s).abs();
        if dev > worst {
            worst = dev;
            worst_case = format!("{} l={}", pot.kind(), ell);
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    Outcome::check(
        worst <= 1e-5 && secs < 120.0,
        format!("24 cases, max deviation {worst:.2e} ({worst_case}), {secs:.1} s"),
    )
}

struct SandwichSummary {
    margin: f64,
    monotone: bool,
    worst: String,
}

fn sandwich_summary() -> SandwichSummary {
    let mut cases = built_in_cases();
    for (i, pot) in random_tabulated(10).into_iter().enumerate() {
        cases.push((pot, AngularMomentum::new(i as u32 % 3)));
    }
    let mut margin = f64::INFINITY;
    let mut monotone = true;
    let mut worst = String::new();
    for (pot, ell) in &cases {
        let report = limits::sandwich(pot, *ell, &cfg()).unwrap();
        let m = report.ordering_margin();
        if m < margin {
            margin = m;
            worst = format!("{} l={}", pot.kind(), ell);
        }
        monotone &= report.lower_sequence_monotone(0.0);
    }
    SandwichSummary { margin, monotone, worst }
}

fn criterion_7(s: &SandwichSummary) -> Outcome {
    Outcome::check(
        s.margin >= -1e-6,
        format!("34 cases, smallest relative margin {:.2e} ({})", s.margin, s.worst),
    )
}

fn criterion_8(s: &SandwichSummary) -> Outcome {
    Outcome::check(s.monotone, "g_BS <= g_eq2 <= g_B on 34 cases")
}

fn criterion_9() -> Outcome {
    let methods: Vec<Method> = Method::ALL
        .into_iter()
        .filter(|m| *m != Method::VariationalClosedForm)
        .collect();
    let mut worst = 0.0_f64;
    let mut worst_case = String::new();
    for (i, reference) in built_ins(1.0).iter().enumerate() {
        for l in [0, 3] {
            let ell = AngularMomentum::new(l);
            let base: Vec<f64> = methods
                .iter()
                .map(|m| m.compute(reference, ell, &cfg()).unwrap().value)
                .collect();
            for scale in [0.5, 2.0] {
                let pot = &built_ins(scale)[i];
                for (m, b) in methods.iter().zip(&base) {
                    let v = m.compute(pot, ell, &cfg()).unwrap().value;
                    let dev = ((v - b) / b).abs();
                    if dev > worst {
                        worst = dev;
                        worst_case = format!("{} {} l={} R={}", pot.kind(), m, l, scale);
                    }
                }
            }
        }
    }
    Outcome::check(worst <= 1e-8, format!("max deviation {worst:.2e} ({worst_case})"))
}

fn criterion_10() -> Outcome {
    let mut worst = (f64::INFINITY, f64::NEG_INFINITY);
    for scale in [1.0, 3.0] {
        let shell = Potential::shell(scale, 1e-3 * scale).unwrap();
        let ell = AngularMomentum::new(0);
        let upper = limits::upper_variational_at(&shell, ell, 1.0, &cfg()).unwrap();
        let g = exact::critical_coupling_shooting(&shell, ell, &cfg()).unwrap();
        let ratio = upper.value / g;
        worst = (worst.0.min(ratio), worst.1.max(ratio));
    }
    Outcome::check(
        worst.0 >= 1.0 && worst.1 <= 1.01,
        format!("ratio range [{:.6}, {:.6}]", worst.0, worst.1),
    )
}

fn criterion_11() -> Outcome {
    let c = cfg();
    let unit = |x: f64| if x <= 1.0 { 1.0 } else { 0.0 };
    let mut worst = 0.0_f64;
    let mut track = |got: f64, want: f64| worst = worst.max(((got - want) / want).abs());
    track(quad::nested_double(unit, unit, &c).unwrap().value, 0.5);
    track(quad::nested_triple(unit, unit, unit, &c).unwrap().value, 1.0 / 6.0);
    let e = |x: f64| (-x).exp();
    track(quad::nested_triple(e, e, e, &c).unwrap().value, 1.0 / 6.0);
    // Exchange symmetry: both orderings together cover the full square.
    let f = |x: f64| (-x).exp() * (1.0 + x);
    let g = |x: f64| 1.0 / (1.0 + x * x) * (-0.5 * x).exp();
    let dom = Domain::semi_infinite(0.0, 1.0).unwrap();
    let fg = dom.nested_double(f, g, &c).unwrap().value + dom.nested_double(g, f, &c).unwrap().value;
    let product = dom.integrate(f, &c).unwrap().value * dom.integrate(g, &c).unwrap().value;
    track(fg, product);
    Outcome::check(worst <= 1e-9, format!("max deviation {worst:.2e}"))
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let sandwich = sandwich_summary();
    let results = vec![
        ("table 1 reproduction (square well)", criterion_1()),
        ("table 2 reproduction (exponential)", criterion_2()),
        ("table 3 reproduction (Yukawa)", criterion_3()),
        ("table 4 reproduction (STIS)", criterion_4()),
        ("closed-form variational minimum, square well", criterion_5()),
        ("shooting vs Nystrom", criterion_6()),
        ("sandwich ordering", criterion_7(&sandwich)),
        ("monotone lower sequence", criterion_8(&sandwich)),
        ("scale invariance", criterion_9()),
        ("delta-shell saturation", criterion_10()),
        ("nested-integral identities", criterion_11()),
    ];
    let mut unexpected = 0;
    for (i, (name, out)) in results.iter().enumerate() {
        let tag = match (out.pass, out.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented deviation)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2} {tag}: {name}: {}", i + 1, out.detail);
        if !out.pass && !out.known {
            unexpected += 1;
        }
    }
    let passed = results.iter().filter(|(_, o)| o.pass).count();
    println!(
        "acceptance: {passed}/{} criteria pass, {unexpected} unexpected failures, {:.1} s",
        results.len(),
        t0.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
