use approx::assert_relative_eq;
use gcrit::exact::{self, bessel};
use gcrit::limits;
use gcrit::quad;
use gcrit::{AngularMomentum, Potential, QuadratureConfig};
use std::f64::consts::PI;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn l(n: u32) -> AngularMomentum {
    AngularMomentum::new(n)
}

/// Agreement with a value printed to five significant digits.
fn close(x: f64, printed: f64) {
    assert!(((x - printed) / printed).abs() < 2e-4, "{x} vs {printed}");
}

#[test]
fn potential_values() {
    assert_eq!(Potential::square_well(1.0).unwrap().evaluate(0.5).unwrap(), 1.0);
    assert_eq!(Potential::stis(1.0, 5.0).unwrap().evaluate(6.0).unwrap(), 0.0);
    assert_relative_eq!(Potential::yukawa(1.0).unwrap().evaluate(1.0).unwrap(), (-1.0f64).exp(), max_relative = 1e-15);
    let c = cfg();
    assert_eq!(Potential::square_well(1.0).unwrap().support_radius(1e-12, c.max_radius).unwrap(), 1.0);
    assert_eq!(Potential::stis(1.0, 10.0).unwrap().support_radius(1e-12, c.max_radius).unwrap(), 10.0);
    // r e^{-r} = 1e-12 at r = 31.0...
    let r = Potential::exponential(1.0).unwrap().support_radius(1e-12, c.max_radius).unwrap();
    assert!((r * (-r).exp() - 1e-12).abs() < 1e-14 && r > 30.0 && r < 32.0, "{r}");
}

#[test]
fn single_integrals() {
    let c = cfg();
    assert_relative_eq!(quad::integrate(|x| x * x, 0.0, 1.0, &c).unwrap().value, 1.0 / 3.0, max_relative = 1e-12);
    assert_relative_eq!(quad::integrate(|x| x.powf(-0.5), 0.0, 1.0, &c).unwrap().value, 2.0, max_relative = 1e-9);
    assert_relative_eq!(quad::integrate_semi_infinite(|x| x * (-x).exp(), 0.0, &c).unwrap().value, 1.0, max_relative = 1e-10);
    assert_relative_eq!(quad::integrate_semi_infinite(|x| x.powi(3) * (-2.0 * x).exp(), 0.0, &c).unwrap().value, 0.375, max_relative = 1e-10);
}

#[test]
fn nested_integrals() {
    let c = cfg();
    let unit = |x: f64| if x <= 1.0 { 1.0 } else { 0.0 };
    assert_relative_eq!(quad::nested_double(unit, |y| y * y, &c).unwrap().value, 1.0 / 12.0, max_relative = 1e-9);
    let e = |x: f64| (-x).exp();
    assert_relative_eq!(quad::nested_double(e, e, &c).unwrap().value, 0.5, max_relative = 1e-9);
    let w_out = |x: f64| if x <= 1.0 { x.powf(-0.5) } else { 0.0 };
    let w_in = |y: f64| if y <= 1.0 { y.powf(1.5) } else { 0.0 };
    assert_relative_eq!(quad::nested_double(w_out, w_in, &c).unwrap().value, 2.0 / 15.0, max_relative = 1e-8);
    assert_relative_eq!(quad::nested_triple(e, e, e, &c).unwrap().value, 1.0 / 6.0, max_relative = 1e-8);
}

#[test]
fn lower_limits() {
    let c = cfg();
    let sq = Potential::square_well(1.0).unwrap();
    let ex = Potential::exponential(1.0).unwrap();
    let yu = Potential::yukawa(1.0).unwrap();
    assert_relative_eq!(limits::lower_bargmann_schwinger(&sq, l(0), &c).unwrap().value, 2.0, max_relative = 1e-12);
    assert_relative_eq!(limits::lower_bargmann_schwinger(&yu, l(2), &c).unwrap().value, 5.0, max_relative = 1e-10);
    close(limits::lower_bargmann_schwinger(&Potential::stis(1.0, 1.0).unwrap(), l(0), &c).unwrap().value, 5.1774);
    assert_relative_eq!(limits::lower_second_order(&sq, l(0), &c).unwrap().value, 6f64.sqrt(), max_relative = 1e-10);
    let b2 = limits::lower_second_order(&ex, l(0), &c).unwrap().value;
    assert!(b2 > 1.0 && b2 < 1.4422, "{b2}");
    close(limits::lower_third_order(&sq, l(0), &c).unwrap().value, 2.4662);
    close(limits::lower_third_order(&ex, l(3), &c).unwrap().value, 26.265);
    close(limits::lower_third_order(&Potential::stis(1.0, 50.0).unwrap(), l(0), &c).unwrap().value, 0.58085);
    close(limits::lower_ggmt(&sq, l(0), &c).unwrap().value, 2.3593);
    close(limits::lower_ggmt(&yu, l(5), &c).unwrap().value, 92.850);
    let at_one = limits::lower_ggmt_at(&ex, l(0), 1.0, &c).unwrap().value;
    assert_relative_eq!(at_one, limits::lower_bargmann_schwinger(&ex, l(0), &c).unwrap().value, max_relative = 1e-10);
}

#[test]
fn upper_limits() {
    let c = cfg();
    let sq = Potential::square_well(1.0).unwrap();
    let ex = Potential::exponential(1.0).unwrap();
    let yu = Potential::yukawa(1.0).unwrap();

    let c1 = limits::upper_calogero_i(&sq, l(0), &c).unwrap();
    assert_relative_eq!(c1.value, 8.0 / 3.0, max_relative = 1e-9);
    assert_relative_eq!(c1.optimal_param.unwrap(), 0.75, max_relative = 1e-4);
    close(limits::upper_calogero_i(&ex, l(1), &c).unwrap().value, 9.7188);
    close(limits::upper_calogero_i(&Potential::stis(1.0, 0.1).unwrap(), l(0), &c).unwrap().value, 306.01);

    let c2 = limits::upper_calogero_ii(&sq, l(0), &c).unwrap();
    assert_relative_eq!(c2.value, 4.0, max_relative = 1e-9);
    assert_relative_eq!(c2.optimal_param.unwrap(), 0.5, max_relative = 1e-4);
    close(limits::upper_calogero_ii(&yu, l(0), &c).unwrap().value, 1.6810);
    close(limits::upper_calogero_ii(&ex, l(5), &c).unwrap().value, 91.708);

    let v = limits::upper_variational(&sq, l(0), &c).unwrap();
    assert_relative_eq!(v.value, 0.5 * (1.5f64.sqrt() + 1.0).powi(2), max_relative = 1e-9);
    assert_relative_eq!(v.optimal_param.unwrap(), 1.5f64.sqrt(), max_relative = 1e-4);
    let v = limits::upper_variational(&ex, l(2), &c).unwrap();
    close(v.value, 16.334);
    close(v.optimal_param.unwrap(), 3.4103);
    let v = limits::upper_variational(&yu, l(5), &c).unwrap();
    close(v.value, 92.998);
    close(v.optimal_param.unwrap(), 8.7481);
    let v = limits::upper_variational(&Potential::stis(1.0, 10.0).unwrap(), l(0), &c).unwrap();
    close(v.value, 1.0156);
    close(v.optimal_param.unwrap(), 1.5004);

    for (n, expected) in [(0, 2.4747), (1, 9.9934), (5, 69.295)] {
        close(limits::upper_variational_square_well(l(n)).value, expected);
    }
}

#[test]
fn sufficient_condition_examples() {
    let c = cfg();
    let sq = Potential::square_well(1.0).unwrap();
    assert!(limits::sufficient_condition_holds(&sq, l(0), 2.48, 1.2247, &c).unwrap());
    assert!(!limits::sufficient_condition_holds(&sq, l(0), 2.40, 1.2247, &c).unwrap());
    assert!(!limits::sufficient_condition_holds(&sq, l(0), 1e-9, 0.7, &c).unwrap());
}

#[test]
fn sandwich_rows() {
    let c = cfg();
    let r = limits::sandwich(&Potential::square_well(1.0).unwrap(), l(2), &c).unwrap();
    assert!(r.is_ordered(1e-6));
    close(r.g_shooting, 20.191);
    let r = limits::sandwich(&Potential::exponential(1.0).unwrap(), l(0), &c).unwrap();
    assert!(r.is_ordered(1e-6));
    close(r.g_shooting, 1.4458);
    let r = limits::sandwich(&Potential::stis(1.0, 0.5).unwrap(), l(0), &c).unwrap();
    assert!(r.is_ordered(1e-6) && r.lower_sequence_monotone(0.0));
}

#[test]
fn greens_function_values() {
    assert_eq!(exact::greens_function(l(0), 1.0, 2.0), 1.0);
    assert_relative_eq!(exact::greens_function(l(1), 2.0, 1.0), 1.0 / 6.0, max_relative = 1e-15);
}

#[test]
fn shooting_examples() {
    let c = cfg();
    let sq = Potential::square_well(1.0).unwrap();
    let at = exact::shoot_zero_energy(&sq, l(0), PI * PI / 4.0, &c).unwrap();
    let below = exact::shoot_zero_energy(&sq, l(0), 1.0, &c).unwrap();
    assert!(below.growing_coefficient > 0.0);
    assert!(at.growing_coefficient.abs() < 1e-8 * below.growing_coefficient.abs());
    close(exact::critical_coupling_shooting(&sq, l(3), &c).unwrap(), 33.217);
    close(exact::critical_coupling_shooting(&Potential::yukawa(1.0).unwrap(), l(0), &c).unwrap(), 1.6798);
    close(exact::critical_coupling_shooting(&Potential::stis(1.0, 5.0).unwrap(), l(0), &c).unwrap(), 1.4875);
}

#[test]
fn nystrom_examples() {
    let c = cfg();
    let g = exact::critical_coupling_nystrom(&Potential::square_well(1.0).unwrap(), l(0), 200, &c).unwrap();
    assert!((g - 2.4674).abs() < 1e-4, "{g}");
    let g = exact::critical_coupling_nystrom(&Potential::exponential(1.0).unwrap(), l(4), 200, &c).unwrap();
    assert!((g - 45.893).abs() < 1e-2, "{g}");
    let g = exact::critical_coupling_nystrom(&Potential::exponential(1.0).unwrap(), l(0), 400, &c).unwrap();
    assert_relative_eq!(g, exact::exponential_exact_swave(), max_relative = 1e-5);
}

#[test]
fn closed_forms() {
    assert_relative_eq!(exact::square_well_exact(l(0)).unwrap(), PI * PI / 4.0, max_relative = 1e-13);
    assert_relative_eq!(exact::square_well_exact(l(1)).unwrap(), PI * PI, max_relative = 1e-13);
    close(exact::square_well_exact(l(2)).unwrap(), 20.191);
    close(exact::exponential_exact_swave(), 1.4458);
    for (alpha, printed) in [(1.0, 6.7319), (0.1, 282.26), (50.0, 0.58684)] {
        close(exact::stis_exact_swave(alpha).unwrap(), printed);
    }
    assert_relative_eq!(bessel::first_zero(-0.5).unwrap(), PI / 2.0, max_relative = 1e-13);
    assert_relative_eq!(bessel::first_zero(0.5).unwrap(), PI, max_relative = 1e-13);
    assert_relative_eq!(bessel::first_zero(0.0).unwrap(), 2.404825557695773, max_relative = 1e-12);
}
