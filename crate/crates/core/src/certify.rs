//! Verdicts for `w_{a,ν}`: starlike in the unit disk with every derivative
//! close-to-convex.
//!
//! `w(z) = z Π(1 - z/ω_n²)` has positive real zeros `ω_n²`. When all of them
//! lie outside the unit disk (`ω_1 > 1`), the property holds if and only if
//! `Σ 1/(ω_n² - 1) ≤ 1`. The decision uses the closed form of the sum; the
//! truncated sum with its tail bound, a sampled minimum of `Re(z w'/w)` and
//! a product-versus-series comparison are attached as corroboration only.

use num_complex::Complex64;

use crate::criterion::{sum_closed, truncated_from_table, SumCriterion};
use crate::error::{Error, Result};
use crate::series::{w_and_prime, DiniFamily};
use crate::zeros::{find_zeros, ismail_lower_bound, ZeroTable, DEFAULT_TOLERANCE, MAX_ZEROS};

/// Sums within this distance of 1 are reported as [`Verdict::Boundary`].
pub const BOUNDARY_BAND: f64 = 1e-9;
pub const DEFAULT_ZERO_COUNT: usize = 12;
/// Grid points where `|w|` falls below this are grid faults.
pub const GRID_FAULT_MODULUS: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    /// `ω_1 > 1` and the sum is at most 1.
    Certified,
    /// `ω_1 > 1` and the sum exceeds 1.
    Refuted,
    /// `ω_1 ≤ 1`: a zero of `w` lies in the closed unit disk.
    Inapplicable,
    /// The sum is within [`BOUNDARY_BAND`] of 1, or `ω = 1` is itself a zero.
    Boundary,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Boundary => "boundary",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Polar sampling grid: radii `max_radius·i/radii` for `i = 1..=radii` and
/// angles `π·j/(angles-1)` for `j = 0..angles`. Real coefficients make the
/// lower half-disk a mirror image, so only `θ ∈ [0, π]` is sampled.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    pub radii: usize,
    pub angles: usize,
    pub max_radius: f64,
}

impl GridSpec {
    pub const STARLIKE: GridSpec = GridSpec {
        radii: 64,
        angles: 720,
        max_radius: 0.99,
    };

    pub const FACTORIZATION: GridSpec = GridSpec {
        radii: 9,
        angles: 64,
        max_radius: 0.9,
    };

    fn validate(&self) -> Result<()> {
        if self.radii == 0 || self.angles < 2 {
            return Err(Error::InvalidParameter(
                "grid needs at least 1 radius and 2 angles",
            ));
        }
        if !(self.max_radius > 0.0 && self.max_radius <= 1.0) {
            return Err(Error::InvalidParameter("grid radius must lie in (0, 1]"));
        }
        Ok(())
    }

    pub fn radius_values(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.radii).map(move |i| self.max_radius * i as f64 / self.radii as f64)
    }

    pub fn angle_values(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.angles - 1) as f64;
        (0..self.angles).map(move |j| core::f64::consts::PI * j as f64 / last)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CertReport {
    pub family: DiniFamily,
    pub verdict: Verdict,
    /// Absent for inapplicable families and when `D(1) = 0`.
    pub sum_criterion: Option<SumCriterion>,
    pub smallest_zero: f64,
    /// `ω_1 - 1`.
    pub smallest_zero_margin: f64,
    /// `4a(ν+1)/(a+2)`.
    pub ismail_bound: f64,
    /// The Ismail bound alone already exceeds 1.
    pub decided_by_bound: bool,
    /// `(a, ν)` lies in `ν > -3/4`, `a ≥ 2/(4ν+3)`.
    pub admissible: bool,
    /// `D(1)` vanished, i.e. `ω = 1` is a zero.
    pub pole: bool,
    /// Minimum of `Re(z w'(z)/w(z))` over the grid; corroboration, not proof.
    pub min_re_starlike: Option<f64>,
    pub grid: GridSpec,
}

/// [`certify_with_grid`] on [`GridSpec::STARLIKE`].
pub fn certify(family: DiniFamily, zero_count: usize) -> Result<CertReport> {
    certify_with_grid(family, zero_count, GridSpec::STARLIKE)
}

pub fn certify_with_grid(
    family: DiniFamily,
    zero_count: usize,
    grid: GridSpec,
) -> Result<CertReport> {
    if zero_count == 0 || zero_count > MAX_ZEROS {
        return Err(Error::InvalidParameter("zero count must lie in 1..=18"));
    }
    grid.validate()?;
    let ismail_bound = ismail_lower_bound(family);
    let decided_by_bound = ismail_bound > 1.0;
    let table = find_zeros(family, zero_count.max(3), DEFAULT_TOLERANCE)?;
    let smallest_zero = table.entries[0].zero;

    let mut report = CertReport {
        family,
        verdict: Verdict::Inapplicable,
        sum_criterion: None,
        smallest_zero,
        smallest_zero_margin: smallest_zero - 1.0,
        ismail_bound,
        decided_by_bound,
        admissible: family.is_admissible(),
        pole: false,
        min_re_starlike: None,
        grid,
    };
    if !(decided_by_bound || smallest_zero > 1.0) {
        return Ok(report);
    }

    let closed_value = match sum_closed(family) {
        Ok(s) => s,
        Err(Error::Pole { .. }) => {
            report.verdict = Verdict::Boundary;
            report.pole = true;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.sum_criterion = Some(SumCriterion {
        family,
        closed_value,
        threshold_margin: 1.0 - closed_value,
        truncated: Some(truncated_from_table(&table, zero_count)),
    });
    report.verdict = if (closed_value - 1.0).abs() <= BOUNDARY_BAND {
        Verdict::Boundary
    } else if closed_value <= 1.0 {
        Verdict::Certified
    } else {
        Verdict::Refuted
    };
    let radii: alloc::vec::Vec<f64> = grid.radius_values().collect();
    report.min_re_starlike = Some(starlike_sample(family, &radii, grid.angles)?);
    Ok(report)
}

/// `Re(z w'(z)/w(z))`, or a grid fault when `|w|` is too small.
pub(crate) fn starlike_functional(family: DiniFamily, z: Complex64) -> Result<f64> {
    let (w, w_prime) = w_and_prime(family, z);
    let modulus = w.norm();
    if modulus < GRID_FAULT_MODULUS {
        return Err(Error::GridFault {
            re: z.re,
            im: z.im,
            modulus,
        });
    }
    Ok((z * w_prime / w).re)
}

/// Minimum of `Re(z w'/w)` over `radii × {π j/(angles-1)}`.
pub fn starlike_sample(family: DiniFamily, radii: &[f64], angles: usize) -> Result<f64> {
    if angles < 2 || radii.is_empty() {
        return Err(Error::InvalidParameter(
            "grid needs at least 1 radius and 2 angles",
        ));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::InvalidParameter("sample radii must lie in (0, 1)"));
    }
    let last = (angles - 1) as f64;
    let mut min = f64::INFINITY;
    for &r in radii {
        for j in 0..angles {
            let theta = core::f64::consts::PI * j as f64 / last;
            let z = Complex64::from_polar(r, theta);
            min = min.min(starlike_functional(family, z)?);
        }
    }
    Ok(min)
}

/// Series versus truncated product `z Π_{n≤N}(1 - z/ω_n²)`.
///
/// The omitted factors change the product by at most
/// `|z|·|P_N(z)|·(exp(|z|T) - 1)` with `T = Σ_{n>N} 1/ω_n²`. To first order
/// this is below `envelope = C · r_max · T̂` where `C = max |P_N|` over the
/// grid and `T̂ = 1/(s ω_N) ≥ T` from integral comparison with spacing `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FactorizationCheck {
    pub zeros_used: usize,
    pub max_deviation: f64,
    pub envelope: f64,
    pub tail_sum_bound: f64,
    pub max_partial_product: f64,
    pub spacing: f64,
    pub within_envelope: bool,
}

pub fn factorization_check(
    family: DiniFamily,
    zeros: usize,
    grid: GridSpec,
) -> Result<FactorizationCheck> {
    grid.validate()?;
    let table = find_zeros(family, zeros.max(2), DEFAULT_TOLERANCE)?;
    factorization_from_table(&table, zeros, grid)
}

pub(crate) fn factorization_from_table(
    table: &ZeroTable,
    zeros: usize,
    grid: GridSpec,
) -> Result<FactorizationCheck> {
    if zeros == 0 || zeros > table.len() {
        return Err(Error::InvalidParameter("zero count exceeds the table"));
    }
    let family = table.family;
    let squares: alloc::vec::Vec<f64> = table.zeros().take(zeros).map(|w| w * w).collect();
    let spacing = table
        .min_spacing()
        .map_or(core::f64::consts::PI, |s| s.min(core::f64::consts::PI));
    let last = table.entries[zeros - 1].zero;
    let tail_sum_bound = 1.0 / (spacing * last);

    let mut max_deviation = 0.0f64;
    let mut max_partial_product = 1.0f64;
    for r in grid.radius_values() {
        for theta in grid.angle_values() {
            let z = Complex64::from_polar(r, theta);
            let product = squares
                .iter()
                .fold(Complex64::new(1.0, 0.0), |p, &s| p * (1.0 - z / s));
            let (w, _) = w_and_prime(family, z);
            max_deviation = max_deviation.max((w - z * product).norm());
            max_partial_product = max_partial_product.max(product.norm());
        }
    }
    let envelope = max_partial_product * grid.max_radius * tail_sum_bound;
    Ok(FactorizationCheck {
        zeros_used: zeros,
        max_deviation,
        envelope,
        tail_sum_bound,
        max_partial_product,
        spacing,
        within_envelope: max_deviation <= envelope,
    })
}
