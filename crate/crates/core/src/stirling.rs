//! Generalized Stirling numbers `S(n,i,alpha,beta,gamma)` and generalized
//! Bell numbers `B_n(alpha,beta,gamma)`.
//!
//! Three routes are provided: the alternating closed form, the sum of scaled
//! Stirling numbers, and a Dobinski-type series evaluated with a certified
//! tail bound. A brute-force cell-distribution count serves as the oracle for
//! `alpha = 0`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{forward_difference, gen_factorial, ipow, round_nearest, CountValue};
use crate::par;

/// Default largest `n` accepted by [`cell_count_oracle`].
pub const DEFAULT_ORACLE_CAP: u32 = 8;

/// Index of one generalized Stirling number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GsnKey {
    pub n: u32,
    pub i: u32,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl GsnKey {
    pub fn new(n: u32, i: u32, alpha: u32, beta: u32, gamma: u32) -> Result<Self> {
        check_beta(beta)?;
        Ok(GsnKey {
            n,
            i,
            alpha,
            beta,
            gamma,
        })
    }
}

fn check_beta(beta: u32) -> Result<()> {
    if beta == 0 {
        return Err(Error::InvalidParams(
            "beta must be at least 1 for Stirling and Bell numbers".into(),
        ));
    }
    Ok(())
}

/// `beta^i i! S(n,i,alpha,beta,gamma) = sum_{s=0}^{i} (-1)^{i-s} C(i,s) (beta s + gamma | alpha)_n`.
///
/// Non-negative when `alpha = 0`; may be negative otherwise.
pub fn stirling_scaled(key: &GsnKey) -> BigInt {
    let values: Vec<BigInt> = (0..=key.i as i64)
        .map(|s| {
            gen_factorial(
                key.beta as i64 * s + key.gamma as i64,
                key.alpha as u64,
                key.n as u64,
            )
        })
        .collect();
    forward_difference(&values, key.i as usize)
}

/// `S(n,i,alpha,beta,gamma)` as an exact rational.
pub fn stirling(key: &GsnKey) -> BigRational {
    let scale = ipow(key.beta as u64, key.i as u64)
        * BigInt::from(crate::numeric::factorial(key.i as usize));
    BigRational::new(stirling_scaled(key), scale)
}

/// `B_n(alpha,beta,gamma) = sum_i beta^i i! S(n,i,alpha,beta,gamma)`.
///
/// Signed because `alpha > 0` can produce negative values.
pub fn bell(n: u32, alpha: u32, beta: u32, gamma: u32) -> Result<BigInt> {
    check_beta(beta)?;
    let values: Vec<BigInt> = (0..=n as i64)
        .map(|s| gen_factorial(beta as i64 * s + gamma as i64, alpha as u64, n as u64))
        .collect();
    Ok((0..=n as usize)
        .map(|i| forward_difference(&values, i))
        .sum())
}

/// Certificate for a truncated non-negative-tailed series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailBound {
    /// Last index included in the partial sum.
    pub truncation_index: u64,
    pub partial_sum: BigRational,
    /// Upper bound on the sum of all omitted terms; strictly below 1/2.
    pub bound: BigRational,
}

/// Sums `term(0) + term(1) + ...` whose value is known to be an integer.
///
/// `geometric_from(k)` must certify that every term from `k` on is
/// non-negative and that each successive ratio is at most 3/4, so that the
/// tail after `k` is at most `3 * term(k)`. Summation stops once that bound
/// drops below 1/2, at which point the integer is the nearest one to the
/// partial sum.
pub fn certified_integer_sum<T, G>(
    mut term: T,
    mut geometric_from: G,
) -> Result<(BigInt, TailBound)>
where
    T: FnMut(u64) -> BigRational,
    G: FnMut(u64) -> bool,
{
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let three = BigInt::from(3);
    let mut partial = BigRational::zero();
    let mut k = 0u64;
    loop {
        let t = term(k);
        partial += &t;
        if geometric_from(k) {
            let bound = t * three.clone();
            if bound < half {
                let value = round_nearest(&partial);
                let v = BigRational::from_integer(value.clone());
                if v < partial || v > &partial + &bound {
                    return Err(Error::NonExactDivision {
                        context: "certified series: no integer inside the tail interval",
                    });
                }
                return Ok((
                    value,
                    TailBound {
                        truncation_index: k,
                        partial_sum: partial,
                        bound,
                    },
                ));
            }
        }
        k += 1;
    }
}

/// True when the one-step ratio `((d + beta)/d)^n / 2` is at most 3/4, with `d > 0`.
pub(crate) fn ratio_at_most_three_quarters(d: i64, beta: u64, n: u32) -> bool {
    if n == 0 {
        return true;
    }
    if d <= 0 {
        return false;
    }
    let lhs = ipow(d as u64 + beta, n as u64) * 2;
    let rhs = ipow(d as u64, n as u64) * 3;
    lhs <= rhs
}

/// `B_n(alpha,beta,gamma)` from `1/2 sum_k (beta k + gamma | alpha)_n / 2^k`, with its certificate.
pub fn bell_dobinski_certified(
    n: u32,
    alpha: u32,
    beta: u32,
    gamma: u32,
) -> Result<(BigInt, TailBound)> {
    check_beta(beta)?;
    let (a, b, g) = (alpha as i64, beta as i64, gamma as i64);
    let term = |k: u64| {
        let num = gen_factorial(b * k as i64 + g, alpha as u64, n as u64);
        BigRational::new(num, BigInt::from(BigUint::one() << (k + 1)))
    };
    // smallest factor of (beta k + gamma | alpha)_n is beta k + gamma - (n-1) alpha
    let geometric_from = |k: u64| {
        let d = b * k as i64 + g - (n.max(1) as i64 - 1) * a;
        ratio_at_most_three_quarters(d, beta as u64, n)
    };
    certified_integer_sum(term, geometric_from)
}

pub fn bell_dobinski(n: u32, alpha: u32, beta: u32, gamma: u32) -> Result<BigInt> {
    bell_dobinski_certified(n, alpha, beta, gamma).map(|(v, _)| v)
}

/// Brute-force count of distributions of `n` labelled elements into `i`
/// cells of `beta` compartments plus one cell of `gamma` compartments, with
/// the first `i` cells non-empty. Visits all `(i beta + gamma)^n` assignments.
pub fn cell_count_oracle(n: u32, i: u32, beta: u32, gamma: u32, cap: u32) -> Result<CountValue> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let slots = i * beta + gamma;
    if n == 0 {
        return Ok(if i == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    if slots == 0 {
        return Ok(BigUint::zero());
    }
    let counts = par::map((0..slots).collect(), |top| {
        count_assignments(n, i, beta, slots, top)
    });
    Ok(counts.into_iter().map(BigUint::from).sum())
}

// Odometer over the low n-1 digits with the top digit pinned to `top`.
fn count_assignments(n: u32, i: u32, beta: u32, slots: u32, top: u32) -> u64 {
    let ordinary = i * beta;
    let cell = |d: u32| {
        if d < ordinary {
            (d / beta) as usize
        } else {
            i as usize
        }
    };
    let n = n as usize;
    let mut digits = vec![0u32; n];
    digits[n - 1] = top;
    let mut load = vec![0u32; i as usize + 1];
    for &d in &digits {
        load[cell(d)] += 1;
    }
    let mut empty = load[..i as usize].iter().filter(|&&c| c == 0).count();
    let mut total = 0u64;
    loop {
        if empty == 0 {
            total += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n - 1 {
                return total;
            }
            let old = digits[pos];
            let c = cell(old);
            load[c] -= 1;
            if c < i as usize && load[c] == 0 {
                empty += 1;
            }
            let new = if old + 1 < slots { old + 1 } else { 0 };
            digits[pos] = new;
            let c = cell(new);
            if c < i as usize && load[c] == 0 {
                empty -= 1;
            }
            load[c] += 1;
            if new != 0 {
                break;
            }
            pos += 1;
        }
    }
}
