//! The zero sum `S(a,ν) = Σ_{n≥1} 1/(ω²_{a,ν,n} - 1)` and the critical orders.
//!
//! Logarithmic differentiation of the product `D(x) ∝ x^ν Π(1 - x²/ω_n²)`
//! at `x = 1` gives
//!
//! ```text
//! S = -1/2 · [(2ν² - aν - 1)J_ν(1) + (a - 2ν)J'_ν(1)] / [(a - ν)J_ν(1) + J'_ν(1)]
//!   =  [J_ν(1) + (a - 2ν)J_{ν+1}(1)] / [2(aJ_ν(1) - J_{ν+1}(1))]
//! ```
//!
//! after `J'_ν = νJ_ν - J_{ν+1}`. Then `1 - S = g(ν) / (2D(1))` with
//! `g(ν) = (2a-1)J_ν(1) - (a-2ν+2)J_{ν+1}(1)`, so `S = 1` exactly where the
//! critical equation `g = 0` holds.

use core::f64::consts::PI;

use crate::bessel::{j_pair, Order};
use crate::error::{Error, Result};
use crate::series::DiniFamily;
use crate::zeros::{find_zeros, ZeroTable, DEFAULT_TOLERANCE, MAX_ZEROS};

/// `D(1)` counts as zero below this multiple of `|aJ_ν(1)| + |J_{ν+1}(1)|`.
pub const POLE_FACTOR: f64 = 1e-10;
pub const DEFAULT_TERMS: usize = 12;
pub const DEFAULT_CRITICAL_TOLERANCE: f64 = 1e-10;
/// Required `|g(ν_a)| / scale` at the reported critical order.
pub const CRITICAL_RESIDUAL_FACTOR: f64 = 1e-12;

const MAX_SECANT_STEPS: usize = 200;

/// Partial zero sum with a bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TruncatedSum {
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
    /// Lower bound on zero spacing used for the tail.
    pub spacing: f64,
}

impl TruncatedSum {
    pub fn encloses(&self, value: f64) -> bool {
        self.value <= value && value <= self.value + self.tail_bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SumCriterion {
    pub family: DiniFamily,
    pub closed_value: f64,
    /// `1 - closed_value`; nonnegative exactly when the criterion holds.
    pub threshold_margin: f64,
    /// Absent when `ω_1 ≤ 1`, where the terms are no longer all positive.
    pub truncated: Option<TruncatedSum>,
}

/// The closed form of `S(a,ν)`.
pub fn sum_closed(family: DiniFamily) -> Result<f64> {
    let a = family.a();
    let nu = family.nu();
    let (j, j_next) = j_pair(nu, 1.0);
    let denom = a * j - j_next;
    let threshold = POLE_FACTOR * ((a * j).abs() + j_next.abs());
    if denom.abs() <= threshold {
        return Err(Error::Pole {
            value: denom,
            threshold,
        });
    }
    Ok((j + (a - 2.0 * nu) * j_next) / (2.0 * denom))
}

/// `Σ_{n≤N} 1/(ω_n² - 1)` plus a tail bound.
///
/// With `s = min(π, smallest observed spacing)` and `ω_n ≥ ω_N + (n-N)s`,
/// comparison with an integral gives
/// `Σ_{n>N} 1/(ω_n² - 1) ≤ ln((ω_N+1)/(ω_N-1)) / (2s)`.
/// For `N = 0` the first term is added to the bound taken from `ω_1`.
pub fn sum_truncated(family: DiniFamily, terms: usize) -> Result<TruncatedSum> {
    if terms > MAX_ZEROS {
        return Err(Error::InvalidParameter("term count must not exceed 18"));
    }
    let table = find_zeros(family, terms.max(3), DEFAULT_TOLERANCE)?;
    let first = table.entries[0].zero;
    if first <= 1.0 {
        return Err(Error::ZeroInsideDisk { zero: first });
    }
    Ok(truncated_from_table(&table, terms))
}

/// Callers guarantee `ω_1 > 1` and `terms ≤ table.len()`.
pub(crate) fn truncated_from_table(table: &ZeroTable, terms: usize) -> TruncatedSum {
    let first = table.entries[0].zero;
    let spacing = table.min_spacing().map_or(PI, |s| s.min(PI));
    let value: f64 = table.zeros().take(terms).map(|w| 1.0 / (w * w - 1.0)).sum();
    let (anchor, head) = match terms {
        0 => (first, 1.0 / (first * first - 1.0)),
        n => (table.entries[n - 1].zero, 0.0),
    };
    let tail_bound = head + libm::log1p(2.0 / (anchor - 1.0)) / (2.0 * spacing);
    TruncatedSum {
        value,
        terms_used: terms,
        tail_bound,
        spacing,
    }
}

/// Closed value plus, when `ω_1 > 1`, the truncated enclosure.
pub fn sum_criterion(family: DiniFamily, terms: usize) -> Result<SumCriterion> {
    let closed_value = sum_closed(family)?;
    let truncated = match sum_truncated(family, terms) {
        Ok(t) => Some(t),
        Err(Error::ZeroInsideDisk { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SumCriterion {
        family,
        closed_value,
        threshold_margin: 1.0 - closed_value,
        truncated,
    })
}

/// `g(ν) = (2a-1)J_ν(1) - (a-2ν+2)J_{ν+1}(1)`.
pub fn critical_equation(a: f64, nu: Order) -> f64 {
    critical_terms(a, nu.value()).0
}

/// `(g(ν), |(2a-1)J_ν(1)| + |(a-2ν+2)J_{ν+1}(1)|)`.
fn critical_terms(a: f64, nu: f64) -> (f64, f64) {
    let (j, j_next) = j_pair(nu, 1.0);
    let left = (2.0 * a - 1.0) * j;
    let right = (a - 2.0 * nu + 2.0) * j_next;
    (left - right, left.abs() + right.abs())
}

/// Scan range and step for [`critical_order`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchInterval {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for SearchInterval {
    fn default() -> Self {
        SearchInterval {
            lo: -0.74,
            hi: 2.0,
            step: 0.05,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriticalOrder {
    pub a: f64,
    pub nu_a: f64,
    pub lo: f64,
    pub hi: f64,
    /// `g(ν_a)`.
    pub residual: f64,
    pub scale: f64,
    /// Sign changes seen by the scan; always 1 for a returned root.
    pub sign_changes: usize,
    /// `S(a, ν_a)`, which should equal 1.
    pub criterion_sum: f64,
    /// `ν_a > -3/4` and `a ≥ 2/(4ν_a+3)`.
    pub admissible: bool,
}

/// The root `ν_a` of the critical equation on `interval`.
///
/// The scan counts sign changes and refuses to pick one when there are
/// several. The single bracket is refined by Illinois regula falsi.
pub fn critical_order(a: f64, interval: SearchInterval, tol: f64) -> Result<CriticalOrder> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter("a must be positive"));
    }
    let SearchInterval { lo, hi, step } = interval;
    if !(lo > -1.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidParameter(
            "search interval must satisfy -1 < lo < hi",
        ));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter("scan step must be positive"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter("tol must be positive"));
    }

    let g = |nu: f64| critical_terms(a, nu).0;
    let steps = libm::ceil((hi - lo) / step) as usize;
    let mut sign_changes = 0;
    let mut bracket = None;
    let mut x0 = lo;
    let mut g0 = g(x0);
    for i in 1..=steps {
        let x1 = if i == steps { hi } else { lo + i as f64 * step };
        let g1 = g(x1);
        if g0 == 0.0 {
            sign_changes += 1;
            bracket = Some((x0, x0, g0, g0));
        } else if g1 != 0.0 && g0.signum() != g1.signum() {
            sign_changes += 1;
            bracket = Some((x0, x1, g0, g1));
        }
        x0 = x1;
        g0 = g1;
    }
    if g0 == 0.0 {
        sign_changes += 1;
        bracket = Some((x0, x0, g0, g0));
    }

    let (mut l, mut r, mut gl, mut gr) = match (sign_changes, bracket) {
        (1, Some(b)) => b,
        (0, _) => return Err(Error::NoSignChange { lo, hi }),
        (count, _) => return Err(Error::MultipleSignChanges { count, lo, hi }),
    };

    let mut best = if gl.abs() <= gr.abs() {
        (l, gl)
    } else {
        (r, gr)
    };
    let mut side = 0i8;
    for _ in 0..MAX_SECANT_STEPS {
        if best.1 == 0.0 {
            break;
        }
        let (_, best_scale) = critical_terms(a, best.0);
        if r - l <= tol && best.1.abs() <= 0.1 * CRITICAL_RESIDUAL_FACTOR * best_scale {
            break;
        }
        let mut x = (l * gr - r * gl) / (gr - gl);
        if !(x > l && x < r) {
            x = 0.5 * (l + r);
            if !(x > l && x < r) {
                break;
            }
        }
        let gx = g(x);
        if gx.abs() < best.1.abs() {
            best = (x, gx);
        }
        if gx == 0.0 {
            l = x;
            r = x;
            break;
        }
        if gx.signum() == gr.signum() {
            r = x;
            gr = gx;
            if side == -1 {
                gl *= 0.5;
            }
            side = -1;
        } else {
            l = x;
            gl = gx;
            if side == 1 {
                gr *= 0.5;
            }
            side = 1;
        }
    }

    let nu_a = best.0;
    let (residual, scale) = critical_terms(a, nu_a);
    if residual.abs() > CRITICAL_RESIDUAL_FACTOR * scale {
        return Err(Error::ResidualTooLarge {
            x: nu_a,
            residual: residual.abs(),
            bound: CRITICAL_RESIDUAL_FACTOR * scale,
        });
    }
    let family = DiniFamily::new(a, nu_a)?;
    Ok(CriticalOrder {
        a,
        nu_a,
        lo: l,
        hi: r,
        residual,
        scale,
        sign_changes,
        criterion_sum: sum_closed(family)?,
        admissible: family.is_admissible(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j_prime;

    fn family(a: f64, nu: f64) -> DiniFamily {
        DiniFamily::new(a, nu).unwrap()
    }

    #[test]
    fn closed_sum_half_order() {
        let s = sum_closed(family(1.0, 0.5)).unwrap();
        assert!((s - 1f64.tan() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn reduced_form_matches_derivative_form() {
        for &(a, nu) in &[(1.0, 0.5), (2.0, -0.3), (0.7, 1.9), (3.5, 0.05)] {
            let o = Order::new(nu).unwrap();
            let (j, _) = j_pair(nu, 1.0);
            let jp = bessel_j_prime(o, 1.0).unwrap();
            let by_derivative = -0.5 * ((2.0 * nu * nu - a * nu - 1.0) * j + (a - 2.0 * nu) * jp)
                / ((a - nu) * j + jp);
            let s = sum_closed(family(a, nu)).unwrap();
            assert!(
                (s - by_derivative).abs() < 1e-13 * by_derivative.abs().max(1.0),
                "a={a} nu={nu}"
            );
        }
    }

    #[test]
    fn margin_equals_critical_ratio() {
        for &(a, nu) in &[(1.0, 0.1), (2.0, 0.4), (1.5, 1.2)] {
            let f = family(a, nu);
            let (j, j_next) = j_pair(nu, 1.0);
            let d1 = a * j - j_next;
            let g = critical_equation(a, f.order());
            let margin = 1.0 - sum_closed(f).unwrap();
            assert!((margin - g / (2.0 * d1)).abs() < 1e-13);
        }
    }

    #[test]
    fn pole_detected() {
        // D_{1,ν}(1) = J_ν(1) - J_{ν+1}(1) vanishes near ν = -0.3400924939.
        let nu = critical_pole(1.0);
        match sum_closed(family(1.0, nu)) {
            Err(Error::Pole { .. }) => {}
            other => panic!("expected pole, got {other:?}"),
        }
    }

    fn critical_pole(a: f64) -> f64 {
        let d = |nu: f64| {
            let (j, jn) = j_pair(nu, 1.0);
            a * j - jn
        };
        let (mut lo, mut hi) = (-0.5, -0.2);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if d(mid).signum() == d(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn truncated_empty_sum() {
        let f = family(1.0, 0.5);
        let t = sum_truncated(f, 0).unwrap();
        assert_eq!(t.value, 0.0);
        assert!(t.tail_bound >= sum_closed(f).unwrap());
    }

    #[test]
    fn truncated_rejects_zero_inside_disk() {
        match sum_truncated(family(2.0, -0.9), 4) {
            Err(Error::ZeroInsideDisk { zero }) => assert!(zero <= 1.0),
            other => panic!("unexpected {other:?}"),
        }
        let c = sum_criterion(family(2.0, -0.9), 4).unwrap();
        assert!(c.truncated.is_none());
    }

    #[test]
    fn critical_equation_signs() {
        let o = |v| Order::new(v).unwrap();
        assert!(critical_equation(2.0, o(1.0)) > 0.0);
        assert!(critical_equation(1.0, o(0.0)) < 0.0);
    }

    #[test]
    fn critical_order_validation() {
        let d = SearchInterval::default();
        assert_eq!(
            critical_order(0.0, d, 1e-10).unwrap_err().to_string(),
            "a must be positive"
        );
        let bad = SearchInterval {
            lo: 1.0,
            hi: 0.0,
            step: 0.05,
        };
        assert!(critical_order(1.0, bad, 1e-10).is_err());
        let empty = SearchInterval {
            lo: 0.5,
            hi: 1.0,
            step: 0.05,
        };
        assert!(matches!(
            critical_order(1.0, empty, 1e-10),
            Err(Error::NoSignChange { .. })
        ));
    }
}
