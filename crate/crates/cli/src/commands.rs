use std::f64::consts::TAU;
use std::io::Write;

use dini_core::certify::BOUNDARY_BAND;
use dini_core::criterion::CRITICAL_RESIDUAL_FACTOR;
use dini_core::zeros::{RESIDUAL_FACTOR, SCAN_STEP};
use dini_core::{
    certify, critical_order, find_zeros, ismail_lower_bound, sum_criterion, w_eval, w_prime_eval,
    CertReport, Complex64, CriticalOrder, DiniFamily, Error, SearchInterval, SumCriterion,
    ZeroTable,
};
use serde::{Deserialize, Serialize};

use crate::output::{deliver, to_csv, to_json, Envelope, Format};
use crate::{CliError, Command, FamilyArgs, OutputArgs};

/// Series truncation: two consecutive terms below this times `1 + |partial|`.
const SERIES_TRUNCATION: f64 = 1e-16;
/// Radius of the circle on which `boundary` samples `Re(zw'/w)`.
pub const STARLIKE_RADIUS: f64 = 0.99;
/// `|w|` below this makes `Re(zw'/w)` meaningless; the cell is left empty.
const FAULT_MODULUS: f64 = 1e-14;
const MAX_SAMPLES: usize = 1 << 20;

pub(crate) fn execute(command: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Zeros {
            family,
            n,
            tol,
            out,
        } => zeros(*family, *n, *tol, out, stdout),
        Command::Sum { family, n, out } => sum(*family, *n, out, stdout),
        Command::Critical {
            a,
            tol,
            lo,
            hi,
            step,
            out,
        } => critical(
            *a,
            *tol,
            SearchInterval {
                lo: *lo,
                hi: *hi,
                step: *step,
            },
            out,
            stdout,
        ),
        Command::Certify { family, n, out } => cert(*family, *n, out, stdout),
        Command::Eval {
            family,
            re,
            im,
            out,
        } => eval(*family, *re, *im, out, stdout),
        Command::Boundary {
            family,
            samples,
            out,
        } => boundary(*family, *samples, out, stdout),
        Command::Selftest { .. } => unreachable!("selftest is dispatched by run"),
    }
}

fn emit<I, R, D, C>(
    out: &OutputArgs,
    stdout: &mut dyn Write,
    envelope: Envelope<I, R, D>,
    rows: impl FnOnce(&Envelope<I, R, D>) -> Vec<C>,
) -> Result<(), CliError>
where
    I: Serialize,
    R: Serialize,
    D: Serialize,
    C: Serialize,
{
    let text = match Format::from(out.format) {
        Format::Json => to_json(&envelope)?,
        Format::Csv => to_csv(&rows(&envelope))?,
    };
    deliver(&text, out.out.as_deref(), stdout)
}

fn family(args: FamilyArgs) -> Result<DiniFamily, CliError> {
    Ok(DiniFamily::new(args.a, args.nu)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZerosInputs {
    pub a: f64,
    pub nu: f64,
    pub n: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZerosDiagnostics {
    pub scan_step: f64,
    /// Zeros are accepted when `|D(ω)| ≤ residual_factor · scale`.
    pub residual_factor: f64,
    pub max_residual: f64,
    pub max_bracket_width: f64,
    pub min_spacing: Option<f64>,
    /// `4a(ν+1)/(a+2) < ω_1²`.
    pub ismail_bound: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroRow {
    pub n: usize,
    pub zero: f64,
    pub lo: f64,
    pub hi: f64,
    pub residual: f64,
}

fn zeros(
    args: FamilyArgs,
    n: usize,
    tol: f64,
    out: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let f = family(args)?;
    let table: ZeroTable = find_zeros(f, n, tol)?;
    let diagnostics = ZerosDiagnostics {
        scan_step: SCAN_STEP,
        residual_factor: RESIDUAL_FACTOR,
        max_residual: table.entries.iter().map(|e| e.residual).fold(0.0, f64::max),
        max_bracket_width: table
            .entries
            .iter()
            .map(|e| e.hi - e.lo)
            .fold(0.0, f64::max),
        min_spacing: table.min_spacing(),
        ismail_bound: ismail_lower_bound(f),
    };
    let inputs = ZerosInputs {
        a: args.a,
        nu: args.nu,
        n,
        tol,
    };
    emit(
        out,
        stdout,
        Envelope::new("zeros", inputs, table, diagnostics),
        |e| {
            e.results
                .entries
                .iter()
                .map(|z| ZeroRow {
                    n: z.index,
                    zero: z.zero,
                    lo: z.lo,
                    hi: z.hi,
                    residual: z.residual,
                })
                .collect()
        },
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyInputs {
    pub a: f64,
    pub nu: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumDiagnostics {
    /// `"applicable"`, or `"inapplicable"` when `ω_1 ≤ 1` puts a zero of
    /// `w` inside the unit disk.
    pub truncated_route: String,
    pub smallest_zero: f64,
    /// Whether `truncated ≤ closed ≤ truncated + tail_bound`.
    pub enclosed: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumRow {
    pub a: f64,
    pub nu: f64,
    pub closed_value: f64,
    pub threshold_margin: f64,
    pub truncated_value: Option<f64>,
    pub tail_bound: Option<f64>,
    pub terms_used: Option<usize>,
    pub truncated_route: String,
}

fn sum(
    args: FamilyArgs,
    n: usize,
    out: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let f = family(args)?;
    let criterion: SumCriterion = sum_criterion(f, n)?;
    let smallest_zero = find_zeros(f, 1, dini_core::zeros::DEFAULT_TOLERANCE)?.entries[0].zero;
    let route = if criterion.truncated.is_some() {
        "applicable"
    } else {
        "inapplicable"
    };
    let diagnostics = SumDiagnostics {
        truncated_route: route.to_owned(),
        smallest_zero,
        enclosed: criterion
            .truncated
            .map(|t| t.encloses(criterion.closed_value)),
    };
    let inputs = FamilyInputs {
        a: args.a,
        nu: args.nu,
        n,
    };
    emit(
        out,
        stdout,
        Envelope::new("sum", inputs, criterion, diagnostics),
        |e| {
            let c = &e.results;
            vec![SumRow {
                a: args.a,
                nu: args.nu,
                closed_value: c.closed_value,
                threshold_margin: c.threshold_margin,
                truncated_value: c.truncated.map(|t| t.value),
                tail_bound: c.truncated.map(|t| t.tail_bound),
                terms_used: c.truncated.map(|t| t.terms_used),
                truncated_route: e.diagnostics.truncated_route.clone(),
            }]
        },
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalInputs {
    pub a: f64,
    pub tol: f64,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalDiagnostics {
    pub bracket_width: f64,
    /// The root is accepted when `|g(ν_a)| ≤ residual_bound`.
    pub residual_bound: f64,
}

fn critical(
    a: f64,
    tol: f64,
    interval: SearchInterval,
    out: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let c: CriticalOrder = critical_order(a, interval, tol)?;
    let diagnostics = CriticalDiagnostics {
        bracket_width: c.hi - c.lo,
        residual_bound: CRITICAL_RESIDUAL_FACTOR * c.scale,
    };
    let inputs = CriticalInputs {
        a,
        tol,
        lo: interval.lo,
        hi: interval.hi,
        step: interval.step,
    };
    emit(
        out,
        stdout,
        Envelope::new("critical", inputs, c, diagnostics),
        |e| vec![e.results],
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifyDiagnostics {
    /// `|S - 1|` at or below this is reported as `boundary`.
    pub boundary_band: f64,
    /// The starlikeness grid corroborates the verdict; it is not a proof.
    pub grid_role: String,
    pub enclosed: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifyRow {
    pub a: f64,
    pub nu: f64,
    pub verdict: String,
    pub closed_value: Option<f64>,
    pub truncated_value: Option<f64>,
    pub tail_bound: Option<f64>,
    pub smallest_zero: f64,
    pub ismail_bound: f64,
    pub decided_by_bound: bool,
    pub admissible: bool,
    pub pole: bool,
    pub min_re_starlike: Option<f64>,
}

fn cert(
    args: FamilyArgs,
    n: usize,
    out: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let f = family(args)?;
    let report: CertReport = certify(f, n)?;
    let diagnostics = CertifyDiagnostics {
        boundary_band: BOUNDARY_BAND,
        grid_role: "corroboration".to_owned(),
        enclosed: report
            .sum_criterion
            .and_then(|s| s.truncated.map(|t| t.encloses(s.closed_value))),
    };
    let inputs = FamilyInputs {
        a: args.a,
        nu: args.nu,
        n,
    };
    emit(
        out,
        stdout,
        Envelope::new("certify", inputs, report, diagnostics),
        |e| {
            let r = &e.results;
            let truncated = r.sum_criterion.and_then(|s| s.truncated);
            vec![CertifyRow {
                a: args.a,
                nu: args.nu,
                verdict: r.verdict.as_str().to_owned(),
                closed_value: r.sum_criterion.map(|s| s.closed_value),
                truncated_value: truncated.map(|t| t.value),
                tail_bound: truncated.map(|t| t.tail_bound),
                smallest_zero: r.smallest_zero,
                ismail_bound: r.ismail_bound,
                decided_by_bound: r.decided_by_bound,
                admissible: r.admissible,
                pole: r.pole,
                min_re_starlike: r.min_re_starlike,
            }]
        },
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalInputs {
    pub a: f64,
    pub nu: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvalResults {
    pub w_re: f64,
    pub w_im: f64,
    pub w_prime_re: f64,
    pub w_prime_im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesDiagnostics {
    /// Summation stops after two terms below this times `1 + |partial|`.
    pub truncation: f64,
}

fn eval(
    args: FamilyArgs,
    re: f64,
    im: f64,
    out: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let f = family(args)?;
    let z = Complex64::new(re, im);
    let w = w_eval(f, z)?;
    let wp = w_prime_eval(f, z)?;
    let results = EvalResults {
        w_re: w.re,
        w_im: w.im,
        w_prime_re: wp.re,
        w_prime_im: wp.im,
    };
    let inputs = EvalInputs {
        a: args.a,
        nu: args.nu,
        re,
        im,
    };
    let diagnostics = SeriesDiagnostics {
        truncation: SERIES_TRUNCATION,
    };
    emit(
        out,
        stdout,
        Envelope::new("eval", inputs, results, diagnostics),
        |e| vec![e.results],
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryInputs {
    pub a: f64,
    pub nu: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub j: usize,
    /// `2πj/M`.
    pub theta: f64,
    /// `w(e^{iθ})`.
    pub w_re: f64,
    pub w_im: f64,
    /// `Re(zw'(z)/w(z))` at `z = 0.99 e^{iθ}`; empty where `|w|` underflows.
    pub starlike: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryResults {
    pub starlike_radius: f64,
    pub rows: Vec<BoundaryRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryDiagnostics {
    pub truncation: f64,
    /// Rows `j > M/2` are exact conjugates of rows `M - j`.
    pub mirrored_rows: usize,
    pub grid_faults: usize,
}

/// Boundary samples for `θ_j = 2πj/M`, `j = 0..M`.
pub fn boundary_rows(f: DiniFamily, samples: usize) -> Result<Vec<BoundaryRow>, Error> {
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(Error::InvalidParameter("samples must lie in 1..=1048576"));
    }
    let m = samples as f64;
    let mut rows: Vec<BoundaryRow> = Vec::with_capacity(samples);
    for j in 0..samples {
        let theta = TAU * j as f64 / m;
        if 2 * j > samples {
            // Real coefficients: w(z̄) = conj(w(z)).
            let mirror = rows[samples - j];
            rows.push(BoundaryRow {
                j,
                theta,
                w_re: mirror.w_re,
                w_im: -mirror.w_im,
                starlike: mirror.starlike,
            });
            continue;
        }
        let (w_re, w_im) = if j == 0 {
            (w_eval(f, Complex64::new(1.0, 0.0))?.re, 0.0)
        } else if 2 * j == samples {
            (w_eval(f, Complex64::new(-1.0, 0.0))?.re, 0.0)
        } else {
            let w = w_eval(f, Complex64::from_polar(1.0, theta))?;
            (w.re, w.im)
        };
        let z = Complex64::from_polar(STARLIKE_RADIUS, theta);
        let w = w_eval(f, z)?;
        let starlike = if w.norm() < FAULT_MODULUS {
            None
        } else {
            Some((z * w_prime_eval(f, z)? / w).re)
        };
        rows.push(BoundaryRow {
            j,
            theta,
            w_re,
            w_im,
            starlike,
        });
    }
    Ok(rows)
}

fn boundary(
    args: FamilyArgs,
    samples: usize,
    out: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let f = family(args)?;
    let rows = boundary_rows(f, samples)?;
    let diagnostics = BoundaryDiagnostics {
        truncation: SERIES_TRUNCATION,
        mirrored_rows: (0..samples).filter(|&j| 2 * j > samples).count(),
        grid_faults: rows.iter().filter(|r| r.starlike.is_none()).count(),
    };
    let inputs = BoundaryInputs {
        a: args.a,
        nu: args.nu,
        samples,
    };
    let results = BoundaryResults {
        starlike_radius: STARLIKE_RADIUS,
        rows,
    };
    emit(
        out,
        stdout,
        Envelope::new("boundary", inputs, results, diagnostics),
        |e| e.results.rows.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_mirrors_exactly() {
        let f = DiniFamily::new(1.7, 0.3).unwrap();
        for m in [1, 2, 7, 8] {
            let rows = boundary_rows(f, m).unwrap();
            assert_eq!(rows.len(), m);
            assert_eq!(rows[0].w_im, 0.0);
            for j in 1..m {
                assert_eq!(rows[j].w_re, rows[m - j].w_re);
                assert_eq!(rows[j].w_im, -rows[m - j].w_im);
                assert_eq!(rows[j].starlike, rows[m - j].starlike);
            }
        }
        assert!(boundary_rows(f, 0).is_err());
    }

    #[test]
    fn boundary_starlike_origin_value() {
        // Re(zw'/w) at r = 0.99 is close to its value on the circle, and the
        // functional of z itself (a huge) tends to 1.
        let f = DiniFamily::new(1e6, 5.0).unwrap();
        let rows = boundary_rows(f, 4).unwrap();
        for r in rows {
            assert!((r.starlike.unwrap() - 1.0).abs() < 0.05);
        }
    }
}
