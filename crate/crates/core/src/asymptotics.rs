//! Growth diagnostics for `H_n(lambda, beta, gamma)`.
//!
//! The generating function has its nearest singularity at `log 2 / beta`, so
//! `H_n / n!` grows like `(beta / log 2)^n` up to polynomial factors. All
//! comparisons are exact, with `log 2` bracketed by `0.6931 < log 2 < 0.6932`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::numbers::{h_conv, Params};
use crate::numeric::{factorial, CountValue};

pub fn log2_lower() -> BigRational {
    BigRational::new(BigInt::from(6931), BigInt::from(10000))
}

pub fn log2_upper() -> BigRational {
    BigRational::new(BigInt::from(6932), BigInt::from(10000))
}

/// Smallest rational of the form `beta / 0.6931 + epsilon`; it exceeds
/// `beta / log 2 + epsilon`.
pub fn growth_base(beta: u32, epsilon: &BigRational) -> BigRational {
    BigRational::from_integer(BigInt::from(beta)) / log2_lower() + epsilon
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub q: BigRational,
    /// `(n, H_n <= n! q^n)` for every `n` in the requested range.
    pub per_n: Vec<(u32, bool)>,
}

impl BoundCheck {
    pub fn first_violation(&self) -> Option<u32> {
        self.per_n.iter().find(|(_, ok)| !ok).map(|(n, _)| *n)
    }

    pub fn last_violation(&self) -> Option<u32> {
        self.per_n.iter().rev().find(|(_, ok)| !ok).map(|(n, _)| *n)
    }

    pub fn passed(&self) -> bool {
        self.first_violation().is_none()
    }
}

/// Checks `H_n <= n! q^n` exactly over `n_range`, with `q = beta/0.6931 + epsilon`.
pub fn bound_check(
    params: &Params,
    epsilon: &BigRational,
    n_range: RangeInclusive<u32>,
) -> Result<BoundCheck> {
    let q = growth_base(params.beta, epsilon);
    let table = h_conv(params, *n_range.end() as usize)?;
    let (num, den) = (q.numer().clone(), q.denom().clone());
    let mut num_pow = BigInt::one();
    let mut den_pow = BigInt::one();
    let mut per_n = Vec::new();
    for n in 0..=*n_range.end() {
        if n_range.contains(&n) {
            let h = BigInt::from(table.values[n as usize].clone());
            let bound = BigInt::from(factorial(n as usize)) * &num_pow;
            per_n.push((n, h * &den_pow <= bound));
        }
        num_pow *= &num;
        den_pow *= &den;
    }
    Ok(BoundCheck { q, per_n })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthDiagnostic {
    pub n: u32,
    pub h_n: CountValue,
    /// `H_{n+1} / ((n+1) H_n)`.
    pub ratio: BigRational,
    /// `ratio * log 2 / beta`, bracketed.
    pub normalized_lo: BigRational,
    pub normalized_hi: BigRational,
}

impl GrowthDiagnostic {
    /// Whether the whole bracket lies within `1 +- tolerance`.
    pub fn normalized_within(&self, tolerance: &BigRational) -> bool {
        let one = BigRational::one();
        self.normalized_lo >= &one - tolerance && self.normalized_hi <= &one + tolerance
    }
}

/// Ratio diagnostics for `n = 0..n_max`.
pub fn ratio_table(params: &Params, n_max: u32) -> Result<Vec<GrowthDiagnostic>> {
    let table = h_conv(params, n_max as usize + 1)?;
    let beta = BigRational::from_integer(BigInt::from(params.beta.max(1)));
    Ok((0..n_max)
        .map(|n| {
            let h = &table.values[n as usize];
            let next = &table.values[n as usize + 1];
            let ratio = if h.is_zero() {
                BigRational::zero()
            } else {
                BigRational::new(
                    BigInt::from(next.clone()),
                    BigInt::from(h.clone()) * BigInt::from(n + 1),
                )
            };
            GrowthDiagnostic {
                n,
                h_n: h.clone(),
                normalized_lo: &ratio * log2_lower() / &beta,
                normalized_hi: &ratio * log2_upper() / &beta,
                ratio,
            }
        })
        .collect())
}

fn decimal(r: &BigRational, digits: u32, round_up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = r * BigRational::from_integer(scale.clone());
    let v = if round_up {
        scaled.ceil()
    } else {
        scaled.floor()
    }
    .to_integer();
    let (sign, v) = if v < BigInt::zero() {
        ("-", -v)
    } else {
        ("", v)
    };
    let int = &v / &scale;
    let frac = (&v % &scale).to_string();
    format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
}

pub const CSV_HEADER: &str = "n,H_n,ratio_num,ratio_den,normalized_lo,normalized_hi";

/// CSV with [`CSV_HEADER`]; the normalized bracket is rounded outward to 9 places.
pub fn to_csv(rows: &[GrowthDiagnostic]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            r.h_n,
            r.ratio.numer(),
            r.ratio.denom(),
            decimal(&r.normalized_lo, 9, false),
            decimal(&r.normalized_hi, 9, true)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: u32, b: u32, g: u32) -> Params {
        Params::new(l, b, g).unwrap()
    }

    fn tenth() -> BigRational {
        BigRational::new(1.into(), 10.into())
    }

    #[test]
    fn log2_bracket_is_correct() {
        use num_traits::ToPrimitive;
        let ln2 = std::f64::consts::LN_2;
        assert!(log2_lower().to_f64().unwrap() < ln2);
        assert!(ln2 < log2_upper().to_f64().unwrap());
    }

    #[test]
    fn fubini_bound_holds() {
        let check = bound_check(&p(1, 1, 0), &tenth(), 1..=200).unwrap();
        assert!(
            check.passed(),
            "first violation {:?}",
            check.first_violation()
        );
        assert_eq!(check.per_n.len(), 200);
    }

    #[test]
    fn constant_sequence_bound_holds() {
        assert!(bound_check(&p(0, 1, 1), &tenth(), 1..=50).unwrap().passed());
    }

    #[test]
    fn scaled_fubini_bound_holds() {
        assert!(bound_check(&p(1, 2, 0), &tenth(), 1..=100)
            .unwrap()
            .passed());
    }

    #[test]
    fn violation_is_located() {
        // H_1(1,1,2) = 3 exceeds 1/0.6931 + 1/10
        let check = bound_check(&p(1, 1, 2), &tenth(), 1..=40).unwrap();
        assert_eq!(check.first_violation(), Some(1));
    }

    #[test]
    fn ratio_examples() {
        let rows = ratio_table(&p(1, 1, 0), 5).unwrap();
        assert_eq!(rows[4].ratio, BigRational::new(541.into(), 375.into()));
        let tight = BigRational::new(1.into(), 1000.into());
        assert!(rows[4].normalized_within(&tight));

        let rows = ratio_table(&p(1, 2, 0), 5).unwrap();
        assert_eq!(
            rows[4].ratio,
            BigRational::new((2 * 541).into(), 375.into())
        );
        assert!(rows[4].normalized_within(&BigRational::new(2.into(), 100.into())));

        let rows = ratio_table(&p(0, 1, 1), 10).unwrap();
        assert_eq!(rows[9].ratio, BigRational::new(1.into(), 10.into()));
    }

    #[test]
    fn one_bar_ratio_converges() {
        let tol = BigRational::new(2.into(), 100.into());
        for b in 1..=3 {
            for g in 0..=3 {
                let rows = ratio_table(&p(1, b, g), 101).unwrap();
                for r in &rows[20..=100] {
                    assert!(r.normalized_within(&tol), "b={b} g={g} n={}", r.n);
                }
            }
        }
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&ratio_table(&p(1, 1, 0), 3).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,1,1,1,0.693100000,0.693200000"));
    }

    #[test]
    fn decimal_rounds_outward() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(decimal(&third, 3, false), "0.333");
        assert_eq!(decimal(&third, 3, true), "0.334");
    }
}
