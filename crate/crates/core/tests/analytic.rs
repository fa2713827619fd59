//! Checks against quantities known in closed form or computable by a
//! method independent of the library.

use core::f64::consts::{FRAC_PI_2, PI};

use dini_core::{
    certify, critical_equation, critical_order, dini_prime, factorization_check, find_zeros,
    ismail_lower_bound, landau_monotonicity_check, oracle_closed_form, smallest_zero_exceeds_one,
    sum_closed, sum_criterion, sum_truncated, ClosedForm, Complex64, DiniFamily, Error, GridSpec,
    Order, SearchInterval, Verdict,
};

fn family(a: f64, nu: f64) -> DiniFamily {
    DiniFamily::new(a, nu).unwrap()
}

fn order(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

/// Plain bisection on a continuous `f` with a sign change on `[lo, hi]`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn half_order_zeros_are_odd_multiples_of_half_pi() {
    let table = find_zeros(family(1.0, 0.5), 10, 1e-12).unwrap();
    for (n, z) in table.zeros().enumerate() {
        let exact = (2 * n + 1) as f64 * FRAC_PI_2;
        assert!((z - exact).abs() < 1e-10, "n = {}: {z}", n + 1);
    }
}

#[test]
fn first_zero_solves_tan_x_equals_minus_x() {
    // D_{2,1/2}(x) ∝ sin x + x cos x.
    let root = bisect(|x| x.sin() + x * x.cos(), FRAC_PI_2, PI);
    let table = find_zeros(family(2.0, 0.5), 1, 1e-12).unwrap();
    assert!((table.entries[0].zero - root).abs() < 1e-12);
    assert!((root - 2.0287578).abs() < 1e-7);
}

#[test]
fn three_half_zero_is_a_zero_of_the_closed_form() {
    let table = find_zeros(family(1.0, 1.5), 3, 1e-12).unwrap();
    for z in table.zeros() {
        let w = oracle_closed_form(ClosedForm::RThreeHalf, Complex64::new(z * z, 0.0));
        assert!(w.norm() < 1e-10, "r_3/2({}) = {w}", z * z);
    }
}

#[test]
fn derivative_nonzero_at_tabulated_zeros() {
    for &(a, nu) in &[(1.0, 0.5), (2.0, -0.5), (0.3, 4.0)] {
        let f = family(a, nu);
        for z in find_zeros(f, 12, 1e-12).unwrap().zeros() {
            assert!(dini_prime(f, z).unwrap().abs() > 1e-3);
        }
    }
}

#[test]
fn dini_prime_matches_difference() {
    let f = family(2.0, 0.5);
    let h = 1e-6;
    let fd = (dini_eval(f, 1.0 + h) - dini_eval(f, 1.0 - h)) / (2.0 * h);
    assert!((dini_prime(f, 1.0).unwrap() - fd).abs() < 1e-6);
}

fn dini_eval(f: DiniFamily, x: f64) -> f64 {
    dini_core::dini_eval(f, x).unwrap()
}

#[test]
fn smallest_zero_examples() {
    let (ok, margin) = smallest_zero_exceeds_one(family(1.0, 0.5)).unwrap();
    assert!(ok && (margin - (FRAC_PI_2 - 1.0)).abs() < 1e-12);
    let (ok, margin) = smallest_zero_exceeds_one(family(2.0, 0.5)).unwrap();
    assert!(ok && (margin - 1.0287578).abs() < 1e-7);
    assert!(smallest_zero_exceeds_one(family(1.0, 0.0)).unwrap().0);
}

#[test]
fn ismail_examples() {
    assert!((ismail_lower_bound(family(1.0, 0.5)) - 2.0).abs() < 1e-15);
    assert!((ismail_lower_bound(family(0.5, 0.25)) - 1.0).abs() < 1e-15);
    assert!((ismail_lower_bound(family(2.0, 0.0)) - 2.0).abs() < 1e-15);
}

#[test]
fn landau_examples() {
    assert!(
        landau_monotonicity_check(1.0, order(0.5), order(1.5), 1)
            .unwrap()
            .0
    );
    assert!(
        landau_monotonicity_check(2.0, order(0.0), order(1.0), 2)
            .unwrap()
            .0
    );
    assert!(landau_monotonicity_check(1.0, order(0.5), order(0.5), 1).is_err());
}

#[test]
fn tan_one_half_by_brute_force() {
    // Σ_{n≤N} 1/(α_n² - 1) with α_n = (2n-1)π/2, plus the midpoint-rule tail
    // ∫_{N+1/2}^∞ dt/(α(t)² - 1) = ln((U+1)/(U-1)) / (2π), U = Nπ.
    let n_terms = 1_000_000u32;
    let mut sum = 0.0;
    for n in (1..=n_terms).rev() {
        let alpha = (2 * n - 1) as f64 * FRAC_PI_2;
        sum += 1.0 / (alpha * alpha - 1.0);
    }
    let u = n_terms as f64 * PI;
    let tail = ((u + 1.0) / (u - 1.0)).ln() / (2.0 * PI);
    let brute = sum + tail;
    let exact = 1f64.tan() / 2.0;
    assert!((brute - exact).abs() < 1e-12, "{brute} vs {exact}");
    let closed = sum_closed(family(1.0, 0.5)).unwrap();
    assert!((closed - exact).abs() < 1e-10);
    assert!((closed - 0.77870386).abs() < 1e-8);
}

#[test]
fn tan_x_minus_x_sum() {
    // Roots of tan x = -x found by bisection, summed with a tail bound.
    let mut sum = 0.0;
    for k in 1..=2000 {
        let lo = (k as f64 - 0.5) * PI;
        let root = bisect(|x| x.sin() + x * x.cos(), lo + 1e-12, lo + PI / 2.0);
        sum += 1.0 / (root * root - 1.0);
    }
    // Roots beyond the 2000th sit at (k - 1/2)π + O(1/k); their sum is
    // 1/(2000π²) up to O(1e-10).
    let tail = 1.0 / (2000.0 * PI * PI);
    let closed = sum_closed(family(2.0, 0.5)).unwrap();
    assert!(
        (closed - sum - tail).abs() < 1e-9,
        "{closed} vs {}",
        sum + tail
    );
    assert!((closed - 0.4135).abs() < 1e-4);
}

#[test]
fn truncated_sum_with_eight_terms() {
    let t = sum_truncated(family(1.0, 0.5), 8).unwrap();
    let exact: f64 = (1..=8)
        .map(|n| {
            let alpha = (2 * n - 1) as f64 * FRAC_PI_2;
            1.0 / (alpha * alpha - 1.0)
        })
        .sum();
    assert!((t.value - exact).abs() < 1e-12);
    assert!((t.value - 0.7660485).abs() < 1e-7);
    let true_tail = 1f64.tan() / 2.0 - exact;
    assert!((true_tail - 0.0126554).abs() < 1e-7);
    assert!(t.tail_bound >= true_tail);
    assert_eq!(t.terms_used, 8);
}

#[test]
fn truncated_sum_converges() {
    let exact = 1f64.tan() / 2.0;
    let mut last_bound = f64::INFINITY;
    for n in [4, 8, 12, 18] {
        let t = sum_truncated(family(1.0, 0.5), n).unwrap();
        assert!(t.encloses(exact));
        assert!(t.tail_bound < last_bound);
        last_bound = t.tail_bound;
    }
}

#[test]
fn empty_truncated_sum() {
    for &(a, nu) in &[(1.0, 0.5), (2.0, 0.0), (0.8, 1.7)] {
        let f = family(a, nu);
        let t = sum_truncated(f, 0).unwrap();
        assert_eq!(t.value, 0.0);
        assert!(t.tail_bound >= sum_closed(f).unwrap());
    }
}

#[test]
fn truncated_route_rejects_zero_inside_disk() {
    let c = sum_criterion(family(2.0, -0.9), 12).unwrap();
    assert!(c.truncated.is_none());
    assert!(matches!(
        sum_truncated(family(2.0, -0.9), 12),
        Err(Error::ZeroInsideDisk { .. })
    ));
}

#[test]
fn critical_orders_high_precision() {
    // Roots of 3J_ν(1) - (4-2ν)J_{ν+1}(1) and J_ν(1) - (3-2ν)J_{ν+1}(1)
    // at 40 digits.
    let star = critical_order(2.0, SearchInterval::default(), 1e-12).unwrap();
    assert!(
        (star.nu_a - -0.14386074042543).abs() < 1e-10,
        "{}",
        star.nu_a
    );
    let ast = critical_order(1.0, SearchInterval::default(), 1e-12).unwrap();
    assert!((ast.nu_a - 0.30607666145125).abs() < 1e-10, "{}", ast.nu_a);
    for c in [star, ast] {
        assert_eq!(c.sign_changes, 1);
        assert!((c.criterion_sum - 1.0).abs() < 1e-8);
        assert!(c.admissible);
    }
}

#[test]
fn critical_equation_signs() {
    // 3J_1(1) - 2J_2(1) > 0.
    assert!(critical_equation(2.0, order(1.0)) > 0.0);
    let star = critical_order(2.0, SearchInterval::default(), 1e-12).unwrap();
    assert!(critical_equation(2.0, order(star.nu_a - 0.01)) < 0.0);
    assert!(critical_equation(2.0, order(star.nu_a + 0.01)) > 0.0);
}

#[test]
fn critical_order_is_continuous_and_decreasing_in_a() {
    let mut prev: Option<f64> = None;
    for i in 0..=70 {
        let a = 0.5 + 0.05 * i as f64;
        let nu = critical_order(a, SearchInterval::default(), 1e-12)
            .unwrap()
            .nu_a;
        if let Some(p) = prev {
            assert!(nu < p, "a = {a}");
            // Steepest near a = 1/2, where dν_a/da ≈ -3.5.
            assert!(p - nu < 4.0 * 0.05, "jump at a = {a}: {p} -> {nu}");
        }
        prev = Some(nu);
    }
}

fn verdict_flips(a: f64) -> (usize, f64, f64) {
    let nu_a = critical_order(a, SearchInterval::default(), 1e-12)
        .unwrap()
        .nu_a;
    let grid = GridSpec {
        radii: 2,
        angles: 8,
        max_radius: 0.5,
    };
    let start = (100.0 * (nu_a - 0.2)).ceil() as i32;
    let end = (100.0 * (nu_a + 0.2)).floor() as i32;
    let mut flips = 0;
    let mut at = (f64::NAN, f64::NAN);
    let mut prev: Option<(f64, Verdict)> = None;
    for k in start..=end {
        let nu = k as f64 / 100.0;
        let v = dini_core::certify_with_grid(family(a, nu), 12, grid)
            .unwrap()
            .verdict;
        assert!(
            matches!(v, Verdict::Certified | Verdict::Refuted),
            "nu = {nu}: {v}"
        );
        if let Some((p_nu, p)) = prev {
            if p != v {
                assert_eq!((p, v), (Verdict::Refuted, Verdict::Certified));
                flips += 1;
                at = (p_nu, nu);
            }
        }
        prev = Some((nu, v));
    }
    assert!(at.0 <= nu_a && nu_a <= at.1);
    (flips, at.0, at.1)
}

#[test]
fn verdict_flips_once_at_the_critical_order() {
    let (flips, lo, hi) = verdict_flips(1.0);
    assert_eq!(flips, 1);
    assert!((lo - 0.30).abs() < 1e-12 && (hi - 0.31).abs() < 1e-12);
    let (flips, lo, hi) = verdict_flips(2.0);
    assert_eq!(flips, 1);
    assert!((lo + 0.15).abs() < 1e-12 && (hi + 0.14).abs() < 1e-12);
}

#[test]
fn certified_families_sample_starlike() {
    for &(a, nu) in &[
        (1.0, 0.5),
        (2.0, 0.0),
        (1.0, 0.31),
        (2.0, -0.14),
        (0.8, 1.9),
    ] {
        let r = certify(family(a, nu), 12).unwrap();
        assert_eq!(r.verdict, Verdict::Certified, "({a}, {nu})");
        assert!(r.min_re_starlike.unwrap() > 0.0, "({a}, {nu})");
    }
}

#[test]
fn starlike_functional_is_conjugate_symmetric() {
    let f = family(1.3, 0.7);
    for &theta in &[0.3, 1.1, 2.9] {
        for &r in &[0.2, 0.6, 0.99] {
            let z = Complex64::from_polar(r, theta);
            let zc = z.conj();
            let g = |z: Complex64| {
                let w = dini_core::w_eval(f, z).unwrap();
                let wp = dini_core::w_prime_eval(f, z).unwrap();
                (z * wp / w).re
            };
            assert!((g(z) - g(zc)).abs() < 1e-14);
        }
    }
}

#[test]
fn factorization_within_envelope() {
    for &(a, nu) in &[(1.0, 0.5), (2.0, 0.5), (1.0, 1.5), (2.0, 1.0)] {
        let c = factorization_check(family(a, nu), 18, GridSpec::FACTORIZATION).unwrap();
        assert!(
            c.within_envelope,
            "({a}, {nu}): {} > {}",
            c.max_deviation, c.envelope
        );
        assert_eq!(c.zeros_used, 18);
    }
}

#[test]
fn factorization_envelope_is_exact_for_half_order() {
    // Σ_{n>18} 1/ω_n² for ω_n = (2n-1)π/2 is below the integral bound.
    let c = factorization_check(family(1.0, 0.5), 18, GridSpec::FACTORIZATION).unwrap();
    let tail: f64 = (19..200_000)
        .map(|n| {
            let w = (2 * n - 1) as f64 * FRAC_PI_2;
            1.0 / (w * w)
        })
        .sum();
    assert!(c.tail_sum_bound >= tail);
    assert!(c.max_deviation <= c.max_partial_product * 0.9 * tail * 1.01);
}

#[test]
fn factorization_deviation_shrinks() {
    for &(a, nu) in &[(1.0, 0.5), (2.0, 1.0)] {
        let mut prev = f64::INFINITY;
        for n in 6..=18 {
            let c = factorization_check(family(a, nu), n, GridSpec::FACTORIZATION).unwrap();
            assert!(c.max_deviation <= 1.1 * prev, "({a}, {nu}) N = {n}");
            prev = c.max_deviation;
        }
    }
}

#[test]
fn factorization_vanishes_at_origin() {
    let grid = GridSpec {
        radii: 1,
        angles: 2,
        max_radius: 1e-300,
    };
    let c = factorization_check(family(1.7, 0.2), 6, grid).unwrap();
    assert!(c.max_deviation <= 1e-300);
}
