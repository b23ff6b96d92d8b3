//! Grid verification of every identity relating the `H`, Stirling and Bell
//! families. Each check produces one [`IdentityReport`] per parameter point;
//! a failure is data, not an error.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::enumerate::{self, EnumerationBudget};
use crate::error::Result;
use crate::numbers::{self, raw_egf, Method, Params};
use crate::numeric::{binomial_row, forward_difference, ipow};
use crate::par;
use crate::stirling::{self, certified_integer_sum, ratio_at_most_three_quarters, TailBound};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub n: u32,
    pub lambda: u32,
    pub beta: u32,
    pub gamma: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(
        identity: &'static str,
        n: u32,
        (lambda, beta, gamma): (u32, u32, u32),
        lhs: BigInt,
        rhs: BigInt,
    ) -> Self {
        let pass = lhs == rhs;
        IdentityReport {
            identity,
            n,
            lambda,
            beta,
            gamma,
            lhs,
            rhs,
            pass,
        }
    }

    /// One JSON object; big integers are written as decimal strings.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "identity": self.identity,
            "n": self.n,
            "lambda": self.lambda,
            "beta": self.beta,
            "gamma": self.gamma,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "pass": self.pass,
        })
        .to_string()
    }
}

/// `sum_{k=0}^{n} sum_{s=0}^{k} C(k,s) (-1)^{k-s} (gamma + s)^n`.
pub fn nelsen_finite_side(gamma: u32, n: u32) -> BigInt {
    let values: Vec<BigInt> = (0..=n as u64)
        .map(|s| ipow(gamma as u64 + s, n as u64))
        .collect();
    (0..=n as usize)
        .map(|k| forward_difference(&values, k))
        .sum()
}

/// Finite double sum against `1/2 sum_s (gamma + s)^n / 2^s` (certified).
pub fn check_nelsen(gamma: u32, n: u32) -> Result<IdentityReport> {
    let lhs = nelsen_finite_side(gamma, n);
    let rhs = stirling::bell_dobinski(n, 0, 1, gamma)?;
    Ok(IdentityReport::new("nelsen", n, (1, 1, gamma), lhs, rhs))
}

/// `sum_{s>=0} H_n(lambda-1, beta, gamma + beta s) / 2^{s+1}` with its certificate.
pub fn negative_binomial_series(
    lambda: u32,
    beta: u32,
    gamma: u32,
    n: u32,
) -> Result<(BigInt, TailBound)> {
    let base = raw_egf(lambda - 1, beta as u64, 0, n as usize);
    let term = |s: u64| {
        let q = numbers::h_at_gamma_offset(&base, n as usize, gamma as u64 + beta as u64 * s);
        BigRational::new(q, BigInt::from(BigUint::one() << (s + 1)))
    };
    let geometric_from = |s: u64| {
        ratio_at_most_three_quarters(gamma as i64 + beta as i64 * s as i64, beta as u64, n)
    };
    certified_integer_sum(term, geometric_from)
}

/// Finite alternating double sum against the certified infinite series.
pub fn check_negative_binomial_series(
    lambda: u32,
    beta: u32,
    gamma: u32,
    n: u32,
) -> Result<IdentityReport> {
    let lhs = numbers::alternating_double_sum(n as usize, lambda, beta, gamma)?;
    let (rhs, _) = negative_binomial_series(lambda, beta, gamma, n)?;
    Ok(IdentityReport::new(
        "negative_binomial_series",
        n,
        (lambda, beta, gamma),
        lhs,
        rhs,
    ))
}

/// Bounds of the verification grid. All bounds are inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub n_max: u32,
    pub lambda_max: u32,
    pub beta_max: u32,
    pub gamma_max: u32,
    /// Enumeration-backed checks run only up to this `n`.
    pub enumeration_n_max: u32,
    /// Test hook: adds one to the right side of the first report of this identity.
    pub inject_fault: Option<String>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_max: 25,
            lambda_max: 3,
            beta_max: 3,
            gamma_max: 3,
            enumeration_n_max: 5,
            inject_fault: None,
        }
    }
}

pub const IDENTITY_NAMES: &[&str] = &[
    "conv_vs_egf",
    "one_bar_recurrence",
    "block_split_recurrence",
    "alternating_bell_sum",
    "bell_convolution",
    "marked_bar_recurrence",
    "gamma_shift",
    "gamma_shift_at_zero",
    "shift_ladder",
    "merge_recurrence",
    "insertion_recurrence",
    "empty_special_recurrence",
    "alternating_double_sum",
    "negative_binomial_series",
    "nelsen",
    "gould_mays",
    "dobinski_bell",
    "scaling_law",
    "enumeration_count",
    "band_restricted_enumeration",
];

fn table_reports(
    name: &'static str,
    params: &Params,
    lhs: &[BigInt],
    rhs: &[BigInt],
) -> Vec<IdentityReport> {
    let point = (params.lambda, params.beta, params.gamma);
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .map(|(n, (l, r))| IdentityReport::new(name, n as u32, point, l.clone(), r.clone()))
        .collect()
}

fn signed(t: numbers::HTable) -> Vec<BigInt> {
    t.values.into_iter().map(BigInt::from).collect()
}

fn method_reports(
    name: &'static str,
    params: &Params,
    method: Method,
    reference: &[BigInt],
) -> Result<Vec<IdentityReport>> {
    let n_max = reference.len() - 1;
    let values = signed(numbers::compute(params, n_max, method)?);
    Ok(table_reports(name, params, &values, reference))
}

// Every check anchored at one parameter point.
fn point_reports(params: Params, grid: &GridSpec) -> Result<Vec<IdentityReport>> {
    let n_max = grid.n_max as usize;
    let (l, b, g) = (params.lambda, params.beta, params.gamma);
    let point = (l, b, g);
    let egf = raw_egf(l, b as u64, g as u64, n_max + 1);
    let reference = &egf[..=n_max];
    let mut out = Vec::new();

    out.extend(method_reports(
        "conv_vs_egf",
        &params,
        Method::Conv,
        reference,
    )?);
    out.extend(method_reports(
        "insertion_recurrence",
        &params,
        Method::Insert,
        reference,
    )?);
    out.extend(method_reports(
        "shift_ladder",
        &params,
        Method::Shift,
        reference,
    )?);

    if l == 1 {
        out.extend(method_reports(
            "one_bar_recurrence",
            &params,
            Method::OneBar,
            reference,
        )?);
        out.extend(method_reports(
            "block_split_recurrence",
            &params,
            Method::BlockSplit,
            reference,
        )?);
        let alt: Vec<BigInt> = numbers::b_from_alternating(b, g, n_max)?
            .into_iter()
            .map(BigInt::from)
            .collect();
        let bell: Vec<BigInt> = (0..=grid.n_max)
            .map(|n| stirling::bell(n, 0, b, 0))
            .collect::<Result<_>>()?;
        out.extend(table_reports("alternating_bell_sum", &params, &alt, &bell));
        let conv_bell: Vec<BigInt> = (0..=n_max)
            .map(|n| {
                let row = binomial_row(n as u64);
                (0..=n)
                    .map(|r| &row[r] * &bell[r] * ipow(g as u64, (n - r) as u64))
                    .sum()
            })
            .collect();
        out.extend(table_reports(
            "bell_convolution",
            &params,
            &conv_bell,
            reference,
        ));
        for n in 0..=grid.n_max {
            let lhs = stirling::bell_dobinski(n, 0, b, g)?;
            let rhs = stirling::bell(n, 0, b, g)?;
            out.push(IdentityReport::new("dobinski_bell", n, point, lhs, rhs));
        }
    }
    if l >= 2 && g == b {
        out.extend(method_reports(
            "marked_bar_recurrence",
            &params,
            Method::MarkedBar,
            reference,
        )?);
    }
    if l >= 2 && g == 0 {
        out.extend(method_reports(
            "empty_special_recurrence",
            &params,
            Method::EmptySpecial,
            reference,
        )?);
    }
    if l >= 1 {
        let up = raw_egf(l, b as u64, (g + b) as u64, n_max);
        let down = raw_egf(l - 1, b as u64, g as u64, n_max);
        let rhs: Vec<BigInt> = (0..=n_max)
            .map(|n| BigInt::from(2) * &egf[n] - &down[n])
            .collect();
        let name = if g == 0 {
            "gamma_shift_at_zero"
        } else {
            "gamma_shift"
        };
        out.extend(table_reports(name, &params, &up, &rhs));

        for n in 0..=grid.n_max {
            let lhs = numbers::alternating_double_sum(n as usize, l, b, g)?;
            out.push(IdentityReport::new(
                "alternating_double_sum",
                n,
                point,
                lhs,
                egf[n as usize].clone(),
            ));
            out.push(check_negative_binomial_series(l, b, g, n)?);
        }
    }
    for n in 0..=grid.n_max {
        let rhs = BigInt::from(numbers::h_rec_merge(&params, n as usize)?);
        out.push(IdentityReport::new(
            "merge_recurrence",
            n,
            point,
            egf[n as usize + 1].clone(),
            rhs,
        ));
    }
    // H_n(l, b, c b) = b^n H_n(l, 1, c) whenever gamma is a multiple of beta
    if g % b == 0 {
        let unit = raw_egf(l, 1, (g / b) as u64, n_max);
        let scaled: Vec<BigInt> = (0..=n_max)
            .map(|n| ipow(b as u64, n as u64) * &unit[n])
            .collect();
        out.extend(table_reports("scaling_law", &params, reference, &scaled));
    }

    let enum_n = grid.enumeration_n_max.min(grid.n_max);
    if l <= 2 && b <= 2 && g <= 2 {
        let budget = EnumerationBudget::default();
        for n in 0..=enum_n {
            let counted = BigInt::from(enumerate::count(n, &params, &budget)?);
            out.push(IdentityReport::new(
                "enumeration_count",
                n,
                point,
                counted,
                egf[n as usize].clone(),
            ));
            if l >= 1 {
                let restricted = enumerate::count_band_restricted(n, l, b, g, &budget)?;
                let sum = numbers::alternating_double_sum(n as usize, l, b, g)?;
                out.push(IdentityReport::new(
                    "band_restricted_enumeration",
                    n,
                    point,
                    BigInt::from(restricted),
                    sum,
                ));
            }
        }
    }
    Ok(out)
}

fn grid_points(grid: &GridSpec) -> Vec<Params> {
    let mut points = Vec::new();
    for l in 0..=grid.lambda_max {
        for b in 1..=grid.beta_max.max(1) {
            for g in 0..=grid.gamma_max {
                if let Ok(p) = Params::new(l, b, g) {
                    points.push(p);
                }
            }
        }
    }
    points
}

/// Runs every identity over the grid. Output order is deterministic.
pub fn run_suite(grid: &GridSpec) -> Result<Vec<IdentityReport>> {
    let per_point = par::map(grid_points(grid), |p| point_reports(p, grid));
    let mut reports = Vec::new();
    for r in per_point {
        reports.extend(r?);
    }
    let mut nelsen = Vec::new();
    for g in 0..=grid.gamma_max {
        for n in 0..=grid.n_max {
            nelsen.push(check_nelsen(g, n)?);
        }
    }
    reports.extend(nelsen);
    let chains = numbers::h_rec_one_bar(1, 2, grid.n_max as usize)?.values;
    for n in 0..=grid.n_max {
        reports.push(IdentityReport::new(
            "gould_mays",
            n,
            (1, 1, 2),
            gould_mays_side(n),
            BigInt::from(chains[n as usize].clone()),
        ));
    }
    if let Some(name) = &grid.inject_fault {
        if let Some(r) = reports.iter_mut().find(|r| r.identity == name.as_str()) {
            r.rhs += 1;
            r.pass = r.lhs == r.rhs;
        }
    }
    Ok(reports)
}

/// `sum_{k=0}^{n} sum_{s=0}^{k} C(k,s) (2+s)^n (-1)^{k-s}`: chains in the power set.
pub fn gould_mays_side(n: u32) -> BigInt {
    nelsen_finite_side(2, n)
}

pub fn all_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
