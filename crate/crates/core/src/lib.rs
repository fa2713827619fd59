//! Special-function kernels for the normalized Dini family
//!
//! ```text
//! w(z) = z · Σ (-1)^n (2n + a) Γ(ν+1) z^n / (a · 4^n · n! · Γ(n+ν+1))
//! ```
//!
//! together with the machinery needed to decide whether `w` is starlike in
//! the unit disk with all derivatives close-to-convex:
//!
//! * [`bessel`]: the gamma function and Bessel functions `J_ν` of real order.
//! * [`series`]: the power series of `w` and closed forms at half-integer order.
//! * [`zeros`]: positive zeros `ω_n` of `D(x) = (a-ν)J_ν(x) + xJ'_ν(x)`.
//! * [`criterion`]: the zero sum `Σ 1/(ω_n² - 1)` and the critical orders.
//! * [`certify`]: the verdict plus sampled corroboration.
//!
//! The crate is `no_std` (it needs `alloc`) when built without the default
//! `std` feature. All elementary functions go through `libm`, so results are
//! bit-identical with or without `std`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bessel;
pub mod certify;
pub mod criterion;
mod error;
pub mod series;
pub mod zeros;

pub use bessel::{bessel_j, bessel_j_pair, bessel_j_prime, gamma_real, Order};
pub use certify::{
    certify, certify_with_grid, factorization_check, starlike_sample, CertReport,
    FactorizationCheck, GridSpec, Verdict,
};
pub use criterion::{
    critical_equation, critical_order, sum_closed, sum_criterion, sum_truncated, CriticalOrder,
    SearchInterval, SumCriterion, TruncatedSum,
};
pub use error::{Error, Result};
pub use series::{
    oracle_closed_form, w_eval, w_prime_eval, ClosedForm, DiniFamily, SeriesTermStream,
};
pub use zeros::{
    dini_eval, dini_prime, find_zeros, ismail_lower_bound, landau_monotonicity_check,
    smallest_zero_exceeds_one, ZeroEntry, ZeroTable,
};

pub use num_complex::Complex64;
