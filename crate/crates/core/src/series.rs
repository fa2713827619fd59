//! Power series of the normalized Dini function
//!
//! ```text
//! w(z) = Σ_{n≥0} c_n z^{n+1},   c_n = (-1)^n (2n+a) Γ(ν+1) / (a · 4^n · n! · Γ(n+ν+1))
//! ```
//!
//! `a = 2` gives `q_ν(z) = z f'_ν(z)` and `a = 1` gives the normalized Dini
//! function `r_ν`. Coefficients come from the exact ratio
//! `c_{n+1}/c_n = -(2n+2+a) / ((2n+a) · 4(n+1)(n+ν+1))`, so no gamma or
//! factorial is ever formed and `c_0 = 1` holds exactly.

use num_complex::Complex64;

use crate::bessel::Order;
use crate::error::{Error, Result};

/// Slack on `|z| ≤ 1` for points constructed as `e^{iθ}`.
const DISK_SLACK: f64 = 1e-12;
const TRUNCATION: f64 = 1e-16;

/// The pair `(a, ν)` indexing `D_{a,ν}` and `w_{a,ν}`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawFamily"))]
pub struct DiniFamily {
    a: f64,
    nu: Order,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct RawFamily {
    a: f64,
    nu: f64,
}

#[cfg(feature = "serde")]
impl TryFrom<RawFamily> for DiniFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        DiniFamily::new(raw.a, raw.nu)
    }
}

impl DiniFamily {
    pub fn new(a: f64, nu: f64) -> Result<Self> {
        let order = Order::new(nu)?;
        Self::with_order(a, order)
    }

    pub fn with_order(a: f64, nu: Order) -> Result<Self> {
        if a.is_finite() && a > 0.0 {
            Ok(DiniFamily { a, nu })
        } else {
            Err(Error::InvalidParameter("a must be positive"))
        }
    }

    /// `q_ν(z) = z f'_ν(z)`, i.e. `a = 2`.
    pub fn q(nu: f64) -> Result<Self> {
        Self::new(2.0, nu)
    }

    /// The normalized Dini function `r_ν`, i.e. `a = 1`.
    pub fn r(nu: f64) -> Result<Self> {
        Self::new(1.0, nu)
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn nu(&self) -> f64 {
        self.nu.value()
    }

    #[inline]
    pub fn order(&self) -> Order {
        self.nu
    }

    /// Coupling `γ = a - ν` in `γ J_ν(x) + x J'_ν(x)`.
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.a - self.nu.value()
    }

    /// Whether `(a, ν)` lies in the region `ν > -3/4`, `a ≥ 2/(4ν+3)` where the
    /// Ismail bound alone places every zero `ω_n²` outside the unit disk.
    pub fn is_admissible(&self) -> bool {
        let nu = self.nu();
        nu > -0.75 && self.a >= 2.0 / (4.0 * nu + 3.0)
    }

    /// `c_{n+1} / c_n`.
    #[inline]
    pub fn coefficient_ratio(&self, n: usize) -> f64 {
        let n = n as f64;
        let a = self.a;
        -(2.0 * n + 2.0 + a) / ((2.0 * n + a) * 4.0 * (n + 1.0) * (n + self.nu() + 1.0))
    }
}

/// Successive terms `t_n = c_n z^{n+1}` of the series of `w`, starting at
/// `t_0 = z`. The stream is infinite; callers decide when to stop.
#[derive(Clone, Debug)]
pub struct SeriesTermStream {
    family: DiniFamily,
    z: Complex64,
    index: usize,
    term: Complex64,
}

impl SeriesTermStream {
    pub fn new(family: DiniFamily, z: Complex64) -> Self {
        Self::starting_at(family, z, z)
    }

    /// A stream over `first · c_n z^n`, e.g. `first = 1` for the derivative.
    pub fn starting_at(family: DiniFamily, z: Complex64, first: Complex64) -> Self {
        SeriesTermStream {
            family,
            z,
            index: 0,
            term: first,
        }
    }

    /// Index of the term the next call to `next` returns.
    pub fn index(&self) -> usize {
        self.index
    }
}

impl Iterator for SeriesTermStream {
    type Item = Complex64;

    fn next(&mut self) -> Option<Complex64> {
        let current = self.term;
        self.term = current * self.z * self.family.coefficient_ratio(self.index);
        self.index += 1;
        Some(current)
    }
}

fn check_disk(z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if modulus <= 1.0 + DISK_SLACK {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            name: "|z|",
            value: modulus,
            domain: "[0, 1]",
        })
    }
}

/// Sum weighted terms until two in a row fall below `1e-16·(1 + |partial|)`.
fn sum_stream(stream: SeriesTermStream, weight: impl Fn(usize) -> f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small = 0;
    for (n, t) in stream.enumerate() {
        let t = t * weight(n);
        sum += t;
        if t.norm() < TRUNCATION * (1.0 + sum.norm()) {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// `w_{a,ν}(z)` for `|z| ≤ 1`.
pub fn w_eval(family: DiniFamily, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    Ok(sum_stream(SeriesTermStream::new(family, z), |_| 1.0))
}

/// `w'_{a,ν}(z) = Σ (n+1) c_n z^n` for `|z| ≤ 1`.
pub fn w_prime_eval(family: DiniFamily, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let stream = SeriesTermStream::starting_at(family, z, Complex64::new(1.0, 0.0));
    Ok(sum_stream(stream, |n| (n + 1) as f64))
}

/// `(w(z), w'(z))` in one pass. Callers guarantee `|z| ≤ 1`.
pub(crate) fn w_and_prime(family: DiniFamily, z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    let mut small = 0;
    let stream = SeriesTermStream::starting_at(family, z, Complex64::new(1.0, 0.0));
    for (n, u) in stream.enumerate() {
        value += u;
        let du = u * (n + 1) as f64;
        deriv += du;
        if du.norm() < TRUNCATION * (1.0 + deriv.norm()) {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (value * z, deriv)
}

/// Half-integer members of the family with elementary closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ClosedForm {
    /// `q_{1/2}(z) = (√z/2)(sin√z + √z cos√z)`
    QHalf,
    /// `q_{3/2}(z) = (3/(2√z))(√z cos√z + (z-1) sin√z)`
    QThreeHalf,
    /// `r_{1/2}(z) = z cos√z`
    RHalf,
    /// `r_{3/2}(z) = 6 cos√z + 3(z-2) sin√z / √z`
    RThreeHalf,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 4] = [
        ClosedForm::QHalf,
        ClosedForm::QThreeHalf,
        ClosedForm::RHalf,
        ClosedForm::RThreeHalf,
    ];

    pub fn family(self) -> DiniFamily {
        let (a, nu) = match self {
            ClosedForm::QHalf => (2.0, 0.5),
            ClosedForm::QThreeHalf => (2.0, 1.5),
            ClosedForm::RHalf => (1.0, 0.5),
            ClosedForm::RThreeHalf => (1.0, 1.5),
        };
        DiniFamily {
            a,
            nu: Order::new(nu).expect("valid order"),
        }
    }

    /// The closed form matching `family`, if there is one.
    pub fn for_family(family: DiniFamily) -> Option<ClosedForm> {
        ClosedForm::ALL.into_iter().find(|c| c.family() == family)
    }
}

/// Evaluate a half-integer closed form. Every form is even in `√z`, so the
/// branch of the square root does not matter; `z = 0` uses the limit
/// `sin√z/√z → 1`.
pub fn oracle_closed_form(which: ClosedForm, z: Complex64) -> Complex64 {
    let s = z.sqrt();
    let (sin, cos) = (s.sin(), s.cos());
    let sinc = if s == Complex64::new(0.0, 0.0) {
        Complex64::new(1.0, 0.0)
    } else {
        sin / s
    };
    match which {
        ClosedForm::QHalf => s * 0.5 * (sin + s * cos),
        ClosedForm::QThreeHalf => (cos + (z - 1.0) * sinc) * 1.5,
        ClosedForm::RHalf => z * cos,
        ClosedForm::RThreeHalf => cos * 6.0 + (z - 2.0) * sinc * 3.0,
    }
}
