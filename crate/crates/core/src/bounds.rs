//! Explicit upper and lower bounds on `p_d(n)`, evaluated in natural-log scale
//! and checked against exact counts.
//!
//! Quantities such as `gamma_d = beta_2^(d^ln d)` overflow any float for
//! moderate `d`, so everything here is a logarithm unless stated otherwise.
//! Where a bound is rational in `p_d(n)` the pass/fail decision is made with
//! exact integer arithmetic; the log values are for reporting.

use std::f64::consts::{E, LN_2};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::count::BigCount;
use crate::staircase::{choose_m, staircase_numbers};

/// `pi * sqrt(2/3)`, the Hardy-Ramanujan growth constant of linear partitions.
pub const ALPHA_2: f64 = 2.565_099_660_323_728;

/// Absolute slack for the float-valued bound comparisons.
pub const LOG_TOLERANCE: f64 = 1e-9;

pub const SIGMA_1: f64 = 1.25;
pub const SIGMA_2: f64 = 2.6;

/// Natural logarithm of a positive quantity.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct LogValue(pub f64);

impl LogValue {
    pub fn get(self) -> f64 {
        self.0
    }

    pub fn exp(self) -> f64 {
        self.0.exp()
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `(lower, upper) = (ln(d^(n-1) / (n-1)!), ln d^(n-1))`.
pub fn thm1_bounds(d: u64, n: u64) -> (LogValue, LogValue) {
    assert!(d >= 2 && n >= 1, "thm1_bounds needs d >= 2, n >= 1");
    let upper = (n - 1) as f64 * (d as f64).ln();
    (LogValue(upper - ln_factorial(n - 1)), LogValue(upper))
}

/// The better of `2^(dn)` and `d^(n-1) (n-1)!`, in log scale.
pub fn cohen_bounds(d: u64, n: u64) -> LogValue {
    assert!(d >= 1 && n >= 1, "cohen_bounds needs d >= 1, n >= 1");
    let a = (d * n) as f64 * LN_2;
    let b = (n - 1) as f64 * (d as f64).ln() + ln_factorial(n - 1);
    LogValue(a.min(b))
}

/// `alpha_2 * sqrt(n)`, the log of the uniform upper bound on `p_2(n)`.
pub fn hardy_ramanujan_upper(n: u64) -> LogValue {
    assert!(n >= 1);
    LogValue(ALPHA_2 * (n as f64).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Theorem2Constants {
    /// Lower constant for `ln p_d(n) / n^(1 - 1/d)`.
    pub c_prime: f64,
    /// Upper constant `alpha_2 * d^(ln d)`.
    pub c_upper: f64,
    /// `d / (d!)^(1/d)`.
    pub lambda_d: f64,
}

pub fn lambda_d(d: u64) -> f64 {
    d as f64 / (ln_factorial(d) / d as f64).exp()
}

pub fn theorem2_constants(d: u64, n: u64) -> Theorem2Constants {
    assert!(d >= 2 && n >= 2, "theorem2_constants needs d >= 2, n >= 2");
    let df = d as f64;
    let lam = lambda_d(d);
    let shrink = (df / (df + 1.0)).min(E * (n as f64).powf(-1.0 / df));
    Theorem2Constants {
        c_prime: (1.0 - shrink).powi(2) * lam * LN_2,
        c_upper: gamma_ln(d).0,
        lambda_d: lam,
    }
}

/// `n^(1 - 1/d)`, the normalisation in the growth-rate ratios.
pub fn growth_scale(d: u64, n: u64) -> f64 {
    (n as f64).powf(1.0 - 1.0 / d as f64)
}

/// Riemann zeta at an integer `s >= 2`.
///
/// Direct sum to `N` plus an Euler-Maclaurin tail; the neglected remainder is
/// below `s(s+1)(s+2) / (720 N^(s+3))`, under `1e-15` for the `N` used.
pub fn zeta(s: u32) -> f64 {
    assert!(s >= 2, "zeta needs s >= 2");
    const N: u32 = 2000;
    let sf = s as f64;
    let head: f64 = (1..=N).rev().map(|k| (k as f64).powf(-sf)).sum();
    let nf = N as f64;
    let tail = nf.powf(1.0 - sf) / (sf - 1.0) - 0.5 * nf.powf(-sf) + sf / 12.0 * nf.powf(-sf - 1.0);
    head + tail
}

/// `(d/(d-1)) * ((d-1) zeta(d))^(1/d)`, the conjectured value of the growth constant.
pub fn rho_d(d: u32) -> f64 {
    assert!(d >= 2);
    let df = d as f64;
    df / (df - 1.0) * ((df - 1.0) * zeta(d)).powf(1.0 / df)
}

/// `beta_2 = e^(alpha_2)`.
pub fn beta_2() -> f64 {
    ALPHA_2.exp()
}

/// `ln gamma_d = alpha_2 * d^(ln d)`.
pub fn gamma_ln(d: u64) -> LogValue {
    assert!(d >= 2);
    let l = (d as f64).ln();
    LogValue(ALPHA_2 * (l * l).exp())
}

/// The exponent `r(d)` with `p_d(n) < gamma_{d-1}^(r(d) n^(1-1/d))` in the inductive step.
pub fn r_of_d(d: u64) -> f64 {
    assert!(d >= 3);
    let df = d as f64;
    let s2d = SIGMA_2 * df;
    let dm1 = df - 1.0;
    s2d.powf(1.0 - df / 2.0) * dm1.powf(-dm1.ln()) + s2d.powf(2.0 - df) / SIGMA_1 + df.powf(1.0 / dm1)
}

/// Both auxiliary inequalities `d^(sigma_1 d) <= gamma_{d-1}` and `d^(sigma_2 d) <= gamma_d`.
pub fn sigma_check(d: u64) -> bool {
    assert!(d >= 3);
    let lhs = |sigma: f64| sigma * d as f64 * (d as f64).ln();
    lhs(SIGMA_1) <= gamma_ln(d - 1).0 && lhs(SIGMA_2) <= gamma_ln(d).0
}

/// `r(d) * ln gamma_{d-1} < ln gamma_d`, the inequality closing the induction.
pub fn induction_step_holds(d: u64) -> bool {
    r_of_d(d) * gamma_ln(d - 1).0 < gamma_ln(d).0
}

/// `alpha_2 * prod_{k=3}^{d} k^(1/(k-1))`.
pub fn alpha_product_bound(d: u64) -> f64 {
    assert!(d >= 2);
    let log_prod: f64 = (3..=d).map(|k| (k as f64).ln() / (k - 1) as f64).sum();
    ALPHA_2 * log_prod.exp()
}

/// `ln((d/2) 2^(a_m))` with `m = choose_m(d, n)`.
pub fn eq_a_lower_bound(d: u64, n: u64) -> LogValue {
    assert!(d >= 2 && n >= 2);
    let m = choose_m(d, n);
    let a_m = staircase_numbers(d, m).a_m;
    LogValue((d as f64 / 2.0).ln() + a_m.value().to_f64().expect("finite") * LN_2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagStatus {
    Pass,
    /// The bound holds with equality where a strict inequality is claimed.
    Boundary,
    Fail,
    /// Preconditions of the bound are not met for this cell.
    Skipped,
}

impl fmt::Display for FlagStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlagStatus::Pass => "pass",
            FlagStatus::Boundary => "boundary",
            FlagStatus::Fail => "fail",
            FlagStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flag {
    pub bound: &'static str,
    pub status: FlagStatus,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.bound, self.status)
    }
}

/// Every bound for one `(d, n)` cell next to the exact count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub d: u64,
    pub n: u64,
    pub exact: BigCount,
    pub ln_p: f64,
    pub thm1_lo: Option<f64>,
    pub thm1_hi: Option<f64>,
    pub cohen: Option<f64>,
    pub hr: Option<f64>,
    /// `ln p_d(n) / n^(1 - 1/d)`.
    pub ratio: Option<f64>,
    pub c_prime: Option<f64>,
    pub c_upper: Option<f64>,
    pub lambda_d: Option<f64>,
    pub rho_d: Option<f64>,
    pub eq_a: Option<f64>,
    pub flags: Vec<Flag>,
}

impl BoundsReport {
    pub const CSV_HEADER: &'static str = "d,n,ln_p,thm1_lo,thm1_hi,cohen,hr,c_prime_ratio,c_upper,eq_a,flags";

    pub fn flag(&self, bound: &str) -> Option<FlagStatus> {
        self.flags.iter().find(|f| f.bound == bound).map(|f| f.status)
    }

    /// No bound failed; boundary and skipped cells are acceptable.
    pub fn all_pass(&self) -> bool {
        self.flags.iter().all(|f| f.status != FlagStatus::Fail)
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let flags: Vec<String> = self.flags.iter().map(Flag::to_string).collect();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.n,
            self.ln_p,
            opt(self.thm1_lo),
            opt(self.thm1_hi),
            opt(self.cohen),
            opt(self.hr),
            opt(self.c_prime),
            opt(self.c_upper),
            opt(self.eq_a),
            flags.join(";")
        )
    }
}

fn status(ok: bool) -> FlagStatus {
    if ok {
        FlagStatus::Pass
    } else {
        FlagStatus::Fail
    }
}

/// Evaluates every bound at `(d, n)` and checks it against `exact = p_d(n)`.
///
/// Flags: `thm1` (the `d^(n-1)/(n-1)!` sandwich, decided exactly), `cohen`,
/// `hr` (`d = 2` only), `thm2` (normalised ratio within `[c_prime, c_upper]`)
/// and `eq_a` (the staircase-family lower bound, decided exactly).
pub fn verify_sandwich(d: u64, n: u64, exact: &BigCount) -> BoundsReport {
    let p = exact.value();
    let ln_p = exact.ln();
    let mut flags = Vec::new();
    let mut report = BoundsReport {
        d,
        n,
        exact: exact.clone(),
        ln_p,
        thm1_lo: None,
        thm1_hi: None,
        cohen: None,
        hr: None,
        ratio: None,
        c_prime: None,
        c_upper: None,
        lambda_d: None,
        rho_d: None,
        eq_a: None,
        flags: Vec::new(),
    };

    if d >= 2 && n >= 1 {
        let (lo, hi) = thm1_bounds(d, n);
        report.thm1_lo = Some(lo.0);
        report.thm1_hi = Some(hi.0);
        let power = BigUint::from(d).pow((n - 1) as u32);
        let scaled = p * factorial(n - 1);
        let st = if *p > power {
            FlagStatus::Fail
        } else if scaled > power {
            FlagStatus::Pass
        } else if scaled == power {
            FlagStatus::Boundary
        } else {
            FlagStatus::Fail
        };
        flags.push(Flag { bound: "thm1", status: st });
    } else {
        flags.push(Flag { bound: "thm1", status: FlagStatus::Skipped });
    }

    if d >= 1 && n >= 1 {
        report.cohen = Some(cohen_bounds(d, n).0);
        let two_pow = BigUint::one() << (d * n);
        let alt = BigUint::from(d).pow((n - 1) as u32) * factorial(n - 1);
        flags.push(Flag { bound: "cohen", status: status(*p <= two_pow && *p <= alt) });
    } else {
        flags.push(Flag { bound: "cohen", status: FlagStatus::Skipped });
    }

    if d == 2 && n >= 1 {
        let hr = hardy_ramanujan_upper(n).0;
        report.hr = Some(hr);
        flags.push(Flag { bound: "hr", status: status(ln_p <= hr + LOG_TOLERANCE) });
    } else {
        flags.push(Flag { bound: "hr", status: FlagStatus::Skipped });
    }

    if d >= 2 && n >= 2 {
        let c = theorem2_constants(d, n);
        let ratio = ln_p / growth_scale(d, n);
        report.ratio = Some(ratio);
        report.c_prime = Some(c.c_prime);
        report.c_upper = Some(c.c_upper);
        report.lambda_d = Some(c.lambda_d);
        report.rho_d = Some(rho_d(d as u32));
        let ok = c.c_prime <= ratio + LOG_TOLERANCE && ratio <= c.c_upper + LOG_TOLERANCE;
        flags.push(Flag { bound: "thm2", status: status(ok) });

        report.eq_a = Some(eq_a_lower_bound(d, n).0);
        let a_m = staircase_numbers(d, choose_m(d, n)).a_m;
        let a_m = a_m.to_u64().expect("a_m fits in u64 for enumerable n");
        // (d/2) 2^a_m <= p  <=>  d 2^a_m <= 2p
        let lhs = BigUint::from(d) << a_m;
        flags.push(Flag { bound: "eq_a", status: status(lhs <= p * 2u32) });
    } else {
        flags.push(Flag { bound: "thm2", status: FlagStatus::Skipped });
        flags.push(Flag { bound: "eq_a", status: FlagStatus::Skipped });
    }

    report.flags = flags;
    report
}
