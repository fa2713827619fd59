use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A parameter failed validation. The message names the violated rule.
    #[error("{0}")]
    InvalidParameter(&'static str),

    #[error("{name} = {value} is outside {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("found only {found} of {requested} zeros below x = {limit}")]
    TooFewZeros {
        found: usize,
        requested: usize,
        limit: f64,
    },

    #[error("derivative vanishes at refined zero x = {x}; zero is not simple")]
    NonSimpleZero { x: f64 },

    #[error("residual {residual:e} at x = {x} exceeds {bound:e}")]
    ResidualTooLarge { x: f64, residual: f64, bound: f64 },

    /// `D(1)` vanishes, so 1 is itself a zero and the criterion sum has a pole.
    #[error("D(1) = {value:e} is within {threshold:e} of zero; the criterion sum has a pole")]
    Pole { value: f64, threshold: f64 },

    #[error("smallest positive zero {zero} does not exceed 1")]
    ZeroInsideDisk { zero: f64 },

    #[error("critical equation has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("critical equation has {count} sign changes on [{lo}, {hi}]")]
    MultipleSignChanges { count: usize, lo: f64, hi: f64 },

    #[error("|w| = {modulus:e} at z = {re}{im:+}i is too small to sample")]
    GridFault { re: f64, im: f64, modulus: f64 },
}

impl Error {
    /// True for errors caused by invalid input rather than by a numerical
    /// failure on valid input.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::OutOfDomain { .. })
    }
}
