//! Positive zeros of the Dini function `D_{a,ν}(x) = (a-ν)J_ν(x) + xJ'_ν(x)`.
//!
//! `D` is evaluated as `aJ_ν(x) - xJ_{ν+1}(x)`. Zeros are bracketed by a
//! fixed-step sign-change scan that starts below the Ismail bound
//! `ω_1² > 4a(ν+1)/(a+2)`, then refined by bisection and a Newton iteration
//! that keeps the bracket. The table stores `ω_n`; the zeros of `w_{a,ν}` are
//! `ω_n²`.

use alloc::vec::Vec;

use crate::bessel::{j_pair, Order, MAX_ARGUMENT};
use crate::error::{Error, Result};
use crate::series::DiniFamily;

/// Longest table [`find_zeros`] produces; keeps every zero below `x = 60`
/// for moderate orders.
pub const MAX_ZEROS: usize = 18;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MIN_TOLERANCE: f64 = 1e-13;
pub const MAX_TOLERANCE: f64 = 1e-2;
pub const SCAN_STEP: f64 = 0.25;
/// Residual acceptance: `|D(ω)| ≤ RESIDUAL_FACTOR · scale`.
pub const RESIDUAL_FACTOR: f64 = 1e-10;

const BISECTION_WIDTH: f64 = 1e-4;
const MAX_NEWTON_STEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZeroEntry {
    /// 1-based index `n` of `ω_n`.
    pub index: usize,
    pub zero: f64,
    pub lo: f64,
    pub hi: f64,
    /// `|D(zero)|`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZeroTable {
    pub family: DiniFamily,
    pub tolerance: f64,
    pub entries: Vec<ZeroEntry>,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn zeros(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.zero)
    }

    /// `ω_n` for 1-based `n`.
    pub fn zero(&self, n: usize) -> Option<f64> {
        n.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| e.zero)
    }

    /// Smallest gap between consecutive zeros, if there are at least two.
    pub fn min_spacing(&self) -> Option<f64> {
        self.entries
            .windows(2)
            .map(|w| w[1].zero - w[0].zero)
            .reduce(f64::min)
    }
}

#[derive(Clone, Copy, Debug)]
struct Sample {
    value: f64,
    derivative: f64,
    scale: f64,
}

fn sample(family: DiniFamily, x: f64) -> Sample {
    let a = family.a();
    let nu = family.nu();
    let (j, j_next) = j_pair(nu, x);
    let j_prime = nu / x * j - j_next;
    Sample {
        value: a * j - x * j_next,
        derivative: (a - nu) * j_prime + (nu * nu / x - x) * j,
        scale: (a * j).abs() + (x * j_next).abs(),
    }
}

#[inline]
fn value(family: DiniFamily, x: f64) -> f64 {
    sample(family, x).value
}

fn check_argument(x: f64) -> Result<()> {
    if x > 0.0 && x <= MAX_ARGUMENT {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: "(0, 60]",
        })
    }
}

/// `D_{a,ν}(x) = aJ_ν(x) - xJ_{ν+1}(x)`.
pub fn dini_eval(family: DiniFamily, x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(value(family, x))
}

/// `D'_{a,ν}(x) = (a-ν)J'_ν(x) + (ν²/x - x)J_ν(x)`, using Bessel's equation
/// to eliminate `J''`.
pub fn dini_prime(family: DiniFamily, x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(sample(family, x).derivative)
}

/// `4a(ν+1)/(a+2)`, a strict lower bound on `ω_1²`.
pub fn ismail_lower_bound(family: DiniFamily) -> f64 {
    let a = family.a();
    4.0 * a * (family.nu() + 1.0) / (a + 2.0)
}

/// The first `count` positive zeros of `D_{a,ν}`, each with a sign-change
/// bracket no wider than `tol`.
pub fn find_zeros(family: DiniFamily, count: usize, tol: f64) -> Result<ZeroTable> {
    if count == 0 || count > MAX_ZEROS {
        return Err(Error::InvalidParameter("zero count must lie in 1..=18"));
    }
    if !(MIN_TOLERANCE..=MAX_TOLERANCE).contains(&tol) {
        return Err(Error::InvalidParameter("tol must lie in [1e-13, 1e-2]"));
    }

    let mut entries = Vec::with_capacity(count);
    let mut x = (0.5 * libm::sqrt(ismail_lower_bound(family))).max(1e-3);
    let mut fx = value(family, x);
    while entries.len() < count {
        if x >= MAX_ARGUMENT {
            return Err(Error::TooFewZeros {
                found: entries.len(),
                requested: count,
                limit: MAX_ARGUMENT,
            });
        }
        let next = (x + SCAN_STEP).min(MAX_ARGUMENT);
        let f_next = value(family, next);
        if f_next == 0.0 {
            entries.push(accept(family, entries.len() + 1, next, next, next)?);
            // Step past the exact zero so it is not bracketed twice.
            x = (next + 0.5 * SCAN_STEP).min(MAX_ARGUMENT);
            fx = value(family, x);
            continue;
        }
        if fx.signum() != f_next.signum() {
            let (zero, lo, hi) = refine(family, x, next, fx, tol);
            entries.push(accept(family, entries.len() + 1, zero, lo, hi)?);
        }
        x = next;
        fx = f_next;
    }

    Ok(ZeroTable {
        family,
        tolerance: tol,
        entries,
    })
}

fn accept(family: DiniFamily, index: usize, zero: f64, lo: f64, hi: f64) -> Result<ZeroEntry> {
    let at_zero = sample(family, zero);
    let scale = at_zero
        .scale
        .max(sample(family, lo).scale)
        .max(sample(family, hi).scale);
    let residual = at_zero.value.abs();
    let bound = RESIDUAL_FACTOR * scale;
    if residual > bound {
        return Err(Error::ResidualTooLarge {
            x: zero,
            residual,
            bound,
        });
    }
    if at_zero.derivative.abs() <= f64::EPSILON * scale {
        return Err(Error::NonSimpleZero { x: zero });
    }
    Ok(ZeroEntry {
        index,
        zero,
        lo,
        hi,
        residual,
    })
}

/// Shrink a sign-change bracket `[lo, hi]` to width `tol`. Returns the zero
/// estimate and the final bracket.
fn refine(family: DiniFamily, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> (f64, f64, f64) {
    let lo_sign = f_lo.signum();
    let coarse = BISECTION_WIDTH.max(tol);
    while hi - lo > coarse {
        let mid = 0.5 * (lo + hi);
        let f = value(family, mid);
        if f == 0.0 {
            return (mid, mid, mid);
        }
        if f.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Newton, falling back to bisection whenever an iterate leaves the bracket.
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON_STEPS {
        if hi - lo <= tol {
            break;
        }
        let s = sample(family, x);
        if s.value == 0.0 {
            return (x, x, x);
        }
        if s.value.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - s.value / s.derivative;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 0.5 * tol {
            // Converged: try to close the bracket around the iterate.
            let left = (next - 0.25 * tol).max(lo);
            let right = (next + 0.25 * tol).min(hi);
            for probe in [left, right] {
                if probe > lo && probe < hi {
                    let f = value(family, probe);
                    if f == 0.0 {
                        return (probe, probe, probe);
                    }
                    if f.signum() == lo_sign {
                        lo = probe;
                    } else {
                        hi = probe;
                    }
                }
            }
        }
        if next == x || next <= lo || next >= hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            next = mid;
        }
        x = next;
    }
    let zero = if x >= lo && x <= hi {
        x
    } else {
        0.5 * (lo + hi)
    };
    (zero, lo, hi)
}

/// Whether `ω_1 > 1`, with margin `ω_1 - 1`.
pub fn smallest_zero_exceeds_one(family: DiniFamily) -> Result<(bool, f64)> {
    let table = find_zeros(family, 1, DEFAULT_TOLERANCE)?;
    let margin = table.entries[0].zero - 1.0;
    Ok((margin > 0.0, margin))
}

/// Compare `ω_{a,ν₁,n}` with `ω_{a,ν₂,n}` for `ν₁ < ν₂`. Returns whether the
/// zero increased and the gap `ω_{a,ν₂,n} - ω_{a,ν₁,n}`.
pub fn landau_monotonicity_check(a: f64, nu1: Order, nu2: Order, n: usize) -> Result<(bool, f64)> {
    if nu1.value() >= nu2.value() {
        return Err(Error::InvalidParameter("orders must satisfy nu1 < nu2"));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("zero index must be at least 1"));
    }
    let lower = find_zeros(DiniFamily::with_order(a, nu1)?, n, DEFAULT_TOLERANCE)?;
    let upper = find_zeros(DiniFamily::with_order(a, nu2)?, n, DEFAULT_TOLERANCE)?;
    let gap = upper.entries[n - 1].zero - lower.entries[n - 1].zero;
    Ok((gap > 0.0, gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    fn family(a: f64, nu: f64) -> DiniFamily {
        DiniFamily::new(a, nu).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(dini_eval(family(1.0, 0.5), FRAC_PI_2).unwrap().abs() < 1e-15);
        let expected = (2.0 / PI).sqrt() * (1f64.sin() + 1f64.cos());
        let got = dini_eval(family(2.0, 0.5), 1.0).unwrap();
        assert!((got - expected).abs() < 1e-14);
        assert!((got - 1.1024956).abs() < 1e-7);
        for &(a, nu) in &[(1.0, -0.9), (0.1, 3.0), (2.0, 0.0)] {
            assert!(dini_eval(family(a, nu), 1e-3).unwrap() > 0.0);
        }
    }

    #[test]
    fn derivative_at_half_order_zero() {
        // D_{1,1/2}(x) = √(2/π) √x cos x, so D'(π/2) = -√(2/π)·√(π/2) = -1.
        let d = dini_prime(family(1.0, 0.5), FRAC_PI_2).unwrap();
        assert!((d + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = family(1.0, 0.5);
        assert!(dini_eval(f, 0.0).is_err());
        assert!(dini_prime(f, 61.0).is_err());
        assert!(find_zeros(f, 0, 1e-12).is_err());
        assert!(find_zeros(f, 19, 1e-12).is_err());
        assert!(find_zeros(f, 3, 0.0).is_err());
    }

    #[test]
    fn half_order_table() {
        let table = find_zeros(family(1.0, 0.5), 5, 1e-12).unwrap();
        for (n, e) in table.entries.iter().enumerate() {
            let exact = (2 * n + 1) as f64 * FRAC_PI_2;
            assert!((e.zero - exact).abs() < 1e-10);
            assert!(e.lo <= e.zero && e.zero <= e.hi);
            assert!(e.hi - e.lo <= 1e-12);
        }
    }

    #[test]
    fn reports_too_few_zeros() {
        match find_zeros(family(1.0, 10.0), 18, 1e-12) {
            Err(Error::TooFewZeros {
                requested: 18,
                found,
                ..
            }) => assert!(found < 18),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn smallest_zero_margins() {
        let (ok, margin) = smallest_zero_exceeds_one(family(1.0, 0.5)).unwrap();
        assert!(ok);
        assert!((margin - (FRAC_PI_2 - 1.0)).abs() < 1e-10);
        let (ok, margin) = smallest_zero_exceeds_one(family(2.0, 0.5)).unwrap();
        assert!(ok && (margin - 1.0287578).abs() < 1e-6);
        assert!(smallest_zero_exceeds_one(family(1.0, 0.0)).unwrap().0);
    }

    #[test]
    fn ismail_examples() {
        assert_eq!(ismail_lower_bound(family(1.0, 0.5)), 2.0);
        assert_eq!(ismail_lower_bound(family(2.0, 0.0)), 2.0);
        let nu = 0.25;
        let a = 2.0 / (4.0 * nu + 3.0);
        assert!((ismail_lower_bound(family(a, nu)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn landau_examples() {
        let o = |v| Order::new(v).unwrap();
        assert!(landau_monotonicity_check(1.0, o(0.5), o(1.5), 1).unwrap().0);
        assert!(landau_monotonicity_check(2.0, o(0.0), o(1.0), 2).unwrap().0);
        assert!(landau_monotonicity_check(1.0, o(0.5), o(0.5), 1).is_err());
        assert!(landau_monotonicity_check(1.0, o(0.5), o(1.0), 0).is_err());
    }
}
