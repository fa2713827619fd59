//! Built-in acceptance checks, numbered 1 to 12.
//!
//! Each check returns a [`Check`] with a one-line detail string holding the
//! measured quantities. `dini selftest` runs them all and exits with 1 if any
//! fails. Random families come from a fixed ChaCha8 seed, so the run is
//! reproducible.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;
use std::sync::OnceLock;

use dini_core::{
    bessel_j, certify, critical_order, factorization_check, find_zeros, ismail_lower_bound,
    oracle_closed_form, sum_closed, sum_truncated, w_eval, CertReport, ClosedForm, Complex64,
    CriticalOrder, DiniFamily, GridSpec, Order, SearchInterval, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::output::{to_json, Envelope, VERSION};
use crate::{EXIT_NUMERIC, EXIT_OK, EXIT_SELFTEST, EXIT_VALIDATION};

pub const SEED: u64 = 0x00d1_0115;
pub const RANDOM_FAMILIES: usize = 20;

/// Published four-decimal values of ν_2 and ν_1.
pub const NU_STAR_PUBLISHED: f64 = -0.1438;
pub const NU_AST_PUBLISHED: f64 = 0.3062;
pub const CONSTANT_TOLERANCE: f64 = 5e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(id: u8, name: &str, passed: bool, detail: String) -> Self {
        Check {
            id,
            name: name.to_owned(),
            passed,
            detail,
        }
    }

    /// `PASS  3  zero table exactness  max |Δ| = ...`
    pub fn line(&self) -> String {
        format!(
            "{}  {:>2}  {:<28}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn family(a: f64, nu: f64) -> DiniFamily {
    DiniFamily::new(a, nu).expect("built-in family is valid")
}

/// The 20 families `a ∈ [0.8, 3]`, `ν ∈ [0, 2]` shared by checks 5, 7 and 11.
pub fn random_families() -> Vec<DiniFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_FAMILIES)
        .map(|_| {
            let a = rng.gen_range(0.8..=3.0);
            let nu = rng.gen_range(0.0..=2.0);
            family(a, nu)
        })
        .collect()
}

/// Run `dini <args>` in-process: (exit code, stdout, stderr).
pub fn invoke(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dini").chain(args.iter().copied());
    let code = crate::run(argv, &mut out, &mut err);
    (code, out, err)
}

/// Check 1: `critical --a 2` and `critical --a 1` against the published
/// four-decimal constants.
pub fn critical_constants() -> Check {
    let mut detail = Vec::new();
    let mut passed = true;
    for (a, published, label) in [
        (2.0, NU_STAR_PUBLISHED, "nu_2"),
        (1.0, NU_AST_PUBLISHED, "nu_1"),
    ] {
        let (code, out, err) = invoke(&["critical", "--a", &a.to_string()]);
        if code != EXIT_OK {
            passed = false;
            detail.push(format!(
                "{label}: exit {code}: {}",
                String::from_utf8_lossy(&err).trim()
            ));
            continue;
        }
        let env: Envelope<serde_json::Value, CriticalOrder, serde_json::Value> =
            serde_json::from_slice(&out).expect("critical emits its envelope");
        let delta = (env.results.nu_a - published).abs();
        passed &= delta <= CONSTANT_TOLERANCE;
        detail.push(format!(
            "{label} = {:.11} (|Δ| = {delta:.2e} vs {published})",
            env.results.nu_a
        ));
    }
    detail.push(format!("tolerance {CONSTANT_TOLERANCE:e}"));
    Check::new(1, "critical constants", passed, detail.join(", "))
}

/// Check 2: `S(1, 1/2) = tan(1)/2`, also by brute force over 10⁶ zeros
/// `(2n-1)π/2` with the integral tail.
pub fn closed_form_sum() -> Check {
    let exact = 1f64.tan() / 2.0;
    let closed = match sum_closed(family(1.0, 0.5)) {
        Ok(v) => v,
        Err(e) => return Check::new(2, "closed-form sum", false, e.to_string()),
    };
    let terms = 1_000_000u32;
    let mut brute = 0.0;
    for n in (1..=terms).rev() {
        let alpha = (2 * n - 1) as f64 * FRAC_PI_2;
        brute += 1.0 / (alpha * alpha - 1.0);
    }
    let u = terms as f64 * PI;
    brute += ((u + 1.0) / (u - 1.0)).ln() / TAU;
    let d_exact = (closed - exact).abs();
    let d_brute = (closed - brute).abs();
    Check::new(
        2,
        "closed-form sum",
        d_exact <= 1e-10 && d_brute <= 1e-10,
        format!("S = {closed:.15}, |S - tan(1)/2| = {d_exact:.1e}, |S - brute| = {d_brute:.1e}"),
    )
}

/// Check 3: zeros of `D_{1,1/2}` are `(2n-1)π/2`.
pub fn zero_table_exactness() -> Check {
    match find_zeros(family(1.0, 0.5), 10, 1e-12) {
        Ok(table) => {
            let worst = table
                .zeros()
                .enumerate()
                .map(|(i, z)| (z - (2 * i + 1) as f64 * FRAC_PI_2).abs())
                .fold(0.0, f64::max);
            Check::new(
                3,
                "zero table exactness",
                table.len() == 10 && worst <= 1e-10,
                format!("N = {}, max |ω_n - (2n-1)π/2| = {worst:.1e}", table.len()),
            )
        }
        Err(e) => Check::new(3, "zero table exactness", false, e.to_string()),
    }
}

/// A certify scan over `ν ∈ (ν_a - 0.2, ν_a + 0.2)` on the 0.01 grid.
#[derive(Debug, Clone)]
pub struct FlipScan {
    pub a: f64,
    pub nu_a: f64,
    pub reports: Vec<(f64, CertReport)>,
}

impl FlipScan {
    /// Verdict changes along the scan as `(ν_before, ν_after, from, to)`.
    pub fn flips(&self) -> Vec<(f64, f64, Verdict, Verdict)> {
        self.reports
            .windows(2)
            .filter(|w| w[0].1.verdict != w[1].1.verdict)
            .map(|w| (w[0].0, w[1].0, w[0].1.verdict, w[1].1.verdict))
            .collect()
    }
}

fn scan(a: f64) -> Result<FlipScan, dini_core::Error> {
    let nu_a = critical_order(a, SearchInterval::default(), 1e-12)?.nu_a;
    let start = (100.0 * (nu_a - 0.2)).ceil() as i64;
    let end = (100.0 * (nu_a + 0.2)).floor() as i64;
    let mut reports = Vec::new();
    for k in start..=end {
        let nu = k as f64 / 100.0;
        reports.push((nu, certify(family(a, nu), 12)?));
    }
    Ok(FlipScan { a, nu_a, reports })
}

/// Scans for `a = 1` and `a = 2`, computed once per process.
pub fn flip_scans() -> &'static Result<[FlipScan; 2], String> {
    static SCANS: OnceLock<Result<[FlipScan; 2], String>> = OnceLock::new();
    SCANS.get_or_init(|| {
        let one = scan(1.0).map_err(|e| e.to_string())?;
        let two = scan(2.0).map_err(|e| e.to_string())?;
        Ok([one, two])
    })
}

/// Certificates of the random families, computed once per process.
pub fn random_reports() -> &'static Result<Vec<CertReport>, String> {
    static REPORTS: OnceLock<Result<Vec<CertReport>, String>> = OnceLock::new();
    REPORTS.get_or_init(|| {
        random_families()
            .into_iter()
            .map(|f| certify(f, 12).map_err(|e| e.to_string()))
            .collect()
    })
}

/// Check 4: exactly one refuted → certified flip, in the expected cell.
pub fn iff_flip() -> Check {
    let scans = match flip_scans() {
        Ok(s) => s,
        Err(e) => return Check::new(4, "iff flip", false, e.clone()),
    };
    let mut passed = true;
    let mut detail = Vec::new();
    for (scan, (lo, hi)) in scans.iter().zip([(0.30, 0.31), (-0.15, -0.14)]) {
        let flips = scan.flips();
        let ok = match flips.as_slice() {
            [(before, after, Verdict::Refuted, Verdict::Certified)] => {
                (before - lo).abs() < 1e-9 && (after - hi).abs() < 1e-9
            }
            _ => false,
        };
        passed &= ok;
        let cells: Vec<String> = flips
            .iter()
            .map(|(b, a, from, to)| format!("{from}->{to} in [{b:.2}, {a:.2}]"))
            .collect();
        detail.push(format!(
            "a = {}: {} flip(s) over {} orders {}",
            scan.a,
            flips.len(),
            scan.reports.len(),
            cells.join(" ")
        ));
    }
    Check::new(4, "iff flip", passed, detail.join("; "))
}

/// Check 5: `truncated ≤ closed ≤ truncated + tail` with N = 12.
pub fn enclosure() -> Check {
    let mut failures = 0;
    let mut min_slack = f64::INFINITY;
    for f in random_families() {
        let ok = match (sum_closed(f), sum_truncated(f, 12)) {
            (Ok(closed), Ok(t)) => {
                min_slack = min_slack.min((closed - t.value).min(t.value + t.tail_bound - closed));
                t.value <= closed && closed <= t.value + t.tail_bound
            }
            _ => false,
        };
        failures += usize::from(!ok);
    }
    Check::new(
        5,
        "enclosure",
        failures == 0,
        format!("{failures}/{RANDOM_FAMILIES} outside, min slack {min_slack:.2e}"),
    )
}

/// Check 6: `J_ν + J_{ν+2} - 2(ν+1)J_{ν+1}/x`, relative to `max(1, |J_ν|)`.
pub fn recurrence_identity() -> Check {
    let mut worst = 0.0f64;
    for nu in [-0.5, 0.0, 0.5, 1.0, 2.0] {
        let o = Order::new(nu).expect("valid order");
        for x in [0.5, 1.0, 5.0, 10.0, 20.0] {
            let j0 = bessel_j(o, x).expect("x in range");
            let j1 = bessel_j(o.next(), x).expect("x in range");
            let j2 = bessel_j(o.next().next(), x).expect("x in range");
            let residual = (j0 + j2 - 2.0 * (nu + 1.0) * j1 / x).abs() / j0.abs().max(1.0);
            worst = worst.max(residual);
        }
    }
    Check::new(
        6,
        "recurrence identity",
        worst < 1e-12,
        format!("max relative residual {worst:.2e}"),
    )
}

/// Check 7: `ω_1² > 4a(ν+1)/(a+2)` strictly.
pub fn ismail_bound() -> Check {
    let mut failures = 0;
    let mut min_gap = f64::INFINITY;
    for f in random_families() {
        match find_zeros(f, 1, 1e-12) {
            Ok(t) => {
                let gap = t.entries[0].zero.powi(2) - ismail_lower_bound(f);
                min_gap = min_gap.min(gap);
                failures += usize::from(gap <= 0.0);
            }
            Err(_) => failures += 1,
        }
    }
    Check::new(
        7,
        "ismail bound",
        failures == 0,
        format!("{failures}/{RANDOM_FAMILIES} violations, min ω_1² - bound = {min_gap:.3e}"),
    )
}

/// Check 8: `ω_{a,ν,n}` strictly increasing in ν.
pub fn landau_monotonicity() -> Check {
    const ORDERS: [f64; 6] = [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0];
    let mut failures = 0;
    let mut min_gap = f64::INFINITY;
    for a in [1.0, 2.0] {
        let tables: Vec<_> = ORDERS
            .iter()
            .map(|&nu| find_zeros(family(a, nu), 3, 1e-12))
            .collect();
        for n in 0..3 {
            for pair in tables.windows(2) {
                match (&pair[0], &pair[1]) {
                    (Ok(lo), Ok(hi)) => {
                        let gap = hi.entries[n].zero - lo.entries[n].zero;
                        min_gap = min_gap.min(gap);
                        failures += usize::from(gap <= 0.0);
                    }
                    _ => failures += 1,
                }
            }
        }
    }
    Check::new(
        8,
        "landau monotonicity",
        failures == 0,
        format!("{failures}/30 non-increasing steps, min gap {min_gap:.3e}"),
    )
}

/// Check 9: Weierstrass product with 18 zeros within its envelope.
pub fn factorization_agreement() -> Check {
    let mut passed = true;
    let mut detail = Vec::new();
    for (a, nu) in [(1.0, 0.5), (2.0, 0.5), (1.0, 1.5), (2.0, 1.0)] {
        match factorization_check(family(a, nu), 18, GridSpec::FACTORIZATION) {
            Ok(c) => {
                passed &= c.within_envelope;
                detail.push(format!(
                    "({a}, {nu}) {:.2e} <= {:.2e}",
                    c.max_deviation, c.envelope
                ));
            }
            Err(e) => {
                passed = false;
                detail.push(format!("({a}, {nu}) {e}"));
            }
        }
    }
    Check::new(9, "factorization agreement", passed, detail.join(", "))
}

/// The 100 points `(i/10) e^{2πik/10}`, `i = 1..=10`, `k = 0..10`.
pub fn disk_grid() -> Vec<Complex64> {
    (1..=10)
        .flat_map(|i| {
            (0..10).map(move |k| Complex64::from_polar(i as f64 / 10.0, TAU * k as f64 / 10.0))
        })
        .collect()
}

/// Check 10: series against the four half-integer closed forms.
pub fn oracle_agreement() -> Check {
    let mut worst = 0.0f64;
    let mut failed = false;
    for form in ClosedForm::ALL {
        for z in disk_grid() {
            match w_eval(form.family(), z) {
                Ok(w) => worst = worst.max((w - oracle_closed_form(form, z)).norm()),
                Err(_) => failed = true,
            }
        }
    }
    Check::new(
        10,
        "oracle agreement",
        !failed && worst <= 1e-12,
        format!("4 forms x 100 points, max |w - closed form| = {worst:.2e}"),
    )
}

/// Check 11: every certified family from checks 4 and 5 samples starlike.
pub fn starlike_corroboration() -> Check {
    let (scans, random) = match (flip_scans(), random_reports()) {
        (Ok(s), Ok(r)) => (s, r),
        (Err(e), _) | (_, Err(e)) => {
            return Check::new(11, "starlike corroboration", false, e.clone())
        }
    };
    let certified: Vec<&CertReport> = scans
        .iter()
        .flat_map(|s| s.reports.iter().map(|(_, r)| r))
        .chain(random.iter())
        .filter(|r| r.verdict == Verdict::Certified)
        .collect();
    let mins: Vec<f64> = certified
        .iter()
        .map(|r| r.min_re_starlike.unwrap_or(f64::NAN))
        .collect();
    let min = mins.iter().copied().fold(f64::INFINITY, f64::min);
    let passed = !certified.is_empty() && mins.iter().all(|&m| m > 0.0);
    Check::new(
        11,
        "starlike corroboration",
        passed,
        format!(
            "{} certified families on the 64x720 grid at r <= 0.99, min Re(zw'/w) = {min:.4}",
            certified.len()
        ),
    )
}

/// Commands whose output is compared byte for byte across runs.
pub const DETERMINISM_CASES: &[&[&str]] = &[
    &["zeros", "--a", "2", "--nu", "0.5", "--n", "5"],
    &["sum", "--a", "1", "--nu", "0.5"],
    &["critical", "--a", "1"],
    &["certify", "--a", "1", "--nu", "0.2"],
    &[
        "boundary",
        "--a",
        "1",
        "--nu",
        "0.5",
        "--samples",
        "8",
        "--format",
        "csv",
    ],
    &[
        "eval", "--a", "2", "--nu", "-0.5", "--re", "0.3", "--im", "0.4",
    ],
];

/// Expected exit code and a fragment of stderr.
pub const EXIT_CASES: &[(&[&str], i32, &str)] = &[
    (&["sum", "--a", "1", "--nu", "0.5"], EXIT_OK, ""),
    (
        &["zeros", "--a", "1", "--nu", "-2"],
        EXIT_VALIDATION,
        "nu must exceed -1",
    ),
    (
        &["critical", "--a", "0"],
        EXIT_VALIDATION,
        "a must be positive",
    ),
    (
        &["zeros", "--a", "1", "--nu", "0.5", "--n", "0"],
        EXIT_VALIDATION,
        "zero count",
    ),
    (
        &["zeros", "--a", "1", "--nu", "0.5", "--bogus"],
        EXIT_VALIDATION,
        "--bogus",
    ),
    (
        &["eval", "--a", "1", "--nu", "0.5", "--re", "1.5"],
        EXIT_VALIDATION,
        "|z|",
    ),
    (
        &["zeros", "--a", "1", "--nu", "10", "--n", "18"],
        EXIT_NUMERIC,
        "found",
    ),
];

/// Golden outputs, with the version string replaced by `*`.
pub const GOLDEN: &[(&[&str], &str)] = &[
    (
        &["zeros", "--a", "1", "--nu", "0.5", "--n", "5"],
        include_str!("../golden/zeros_r_half.json"),
    ),
    (
        &[
            "zeros", "--a", "2", "--nu", "0.5", "--n", "1", "--format", "csv",
        ],
        include_str!("../golden/zeros_q_half.csv"),
    ),
    (
        &[
            "boundary",
            "--a",
            "1",
            "--nu",
            "0.5",
            "--samples",
            "8",
            "--format",
            "csv",
        ],
        include_str!("../golden/boundary_r_half.csv"),
    ),
];

/// Replace the version field so goldens survive a version bump.
pub fn normalize_version(text: &str) -> String {
    text.replace(&format!("\"version\": \"{VERSION}\""), "\"version\": \"*\"")
}

/// Check 12: determinism, exit codes and golden outputs, in-process.
pub fn cli_golden() -> Check {
    let mut problems = Vec::new();
    for args in DETERMINISM_CASES {
        let first = invoke(args);
        let second = invoke(args);
        if first != second || first.0 != EXIT_OK {
            problems.push(format!("nondeterministic or failing: {}", args.join(" ")));
        }
    }
    for (args, code, fragment) in EXIT_CASES {
        let (got, _, err) = invoke(args);
        let err = String::from_utf8_lossy(&err);
        if got != *code || !err.contains(fragment) {
            problems.push(format!("{}: exit {got}, expected {code}", args.join(" ")));
        }
    }
    for (args, expected) in GOLDEN {
        let (_, out, _) = invoke(args);
        if normalize_version(&String::from_utf8_lossy(&out)) != *expected {
            problems.push(format!("golden mismatch: {}", args.join(" ")));
        }
    }
    let total = DETERMINISM_CASES.len() + EXIT_CASES.len() + GOLDEN.len();
    let detail = if problems.is_empty() {
        format!("{total} cases byte-exact")
    } else {
        problems.join("; ")
    };
    Check::new(12, "cli determinism and exits", problems.is_empty(), detail)
}

pub fn all_checks() -> Vec<Check> {
    vec![
        critical_constants(),
        closed_form_sum(),
        zero_table_exactness(),
        iff_flip(),
        enclosure(),
        recurrence_identity(),
        ismail_bound(),
        landau_monotonicity(),
        factorization_agreement(),
        oracle_agreement(),
        starlike_corroboration(),
        cli_golden(),
    ]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelftestResults {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelftestDiagnostics {
    pub seed: u64,
    pub random_families: usize,
}

pub(crate) fn run_selftest(json: bool, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let checks = all_checks();
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    let written = if json {
        let results = SelftestResults {
            checks,
            passed,
            failed,
        };
        let diagnostics = SelftestDiagnostics {
            seed: SEED,
            random_families: RANDOM_FAMILIES,
        };
        let env = Envelope::new("selftest", serde_json::json!({}), results, diagnostics);
        to_json(&env).map(|s| stdout.write_all(s.as_bytes()).is_ok())
    } else {
        let mut ok = true;
        for c in &checks {
            ok &= writeln!(stdout, "{}", c.line()).is_ok();
        }
        ok &= writeln!(stdout, "{passed}/{} checks passed", passed + failed).is_ok();
        Ok(ok)
    };
    if !matches!(written, Ok(true)) {
        let _ = writeln!(stderr, "error: failed to write the selftest report");
        return EXIT_NUMERIC;
    }
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_SELFTEST
    }
}
