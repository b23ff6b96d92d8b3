//! Exact integer and rational primitives shared by every engine.
//!
//! Counts are `BigUint`, signed intermediates are `BigInt`, and exact ratios
//! are `BigRational` (always normalized by `num-rational`).

use std::ops::{Add, Mul, Sub};
use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact non-negative count.
pub type CountValue = BigUint;

/// Exact rational in lowest terms with positive denominator.
pub type ExactRatio = BigRational;

static FACTORIALS: LazyLock<RwLock<Vec<BigUint>>> =
    LazyLock::new(|| RwLock::new(vec![BigUint::one()]));

/// `n!`, served from a process-wide cache that grows on demand.
pub fn factorial(n: usize) -> BigUint {
    {
        let table = FACTORIALS.read().expect("factorial cache poisoned");
        if let Some(v) = table.get(n) {
            return v.clone();
        }
    }
    let mut table = FACTORIALS.write().expect("factorial cache poisoned");
    while table.len() <= n {
        let k = table.len();
        let next = &table[k - 1] * BigUint::from(k);
        table.push(next);
    }
    table[n].clone()
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = k as u64;
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Row `C(n, 0..=n)` as signed integers, for convolution loops.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = BigUint::one();
    row.push(BigInt::one());
    for j in 0..n {
        acc *= n - j;
        acc /= j + 1;
        row.push(BigInt::from(acc.clone()));
    }
    row
}

/// `(sum parts)! / prod(parts_i!)`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p as i64);
    }
    acc
}

/// Generalized falling factorial `(x|alpha)_n = x (x - alpha) ... (x - (n-1) alpha)`.
///
/// `(x|0)_n = x^n`, and the empty product is 1.
pub fn gen_factorial(x: i64, alpha: u64, n: u64) -> BigInt {
    let x = BigInt::from(x);
    let alpha = BigInt::from(alpha);
    let mut acc = BigInt::one();
    let mut factor = x;
    for _ in 0..n {
        if factor.is_zero() {
            return BigInt::zero();
        }
        acc *= &factor;
        factor -= &alpha;
    }
    acc
}

/// `i`-th forward difference at 0: `sum_{s=0}^{i} (-1)^{i-s} C(i,s) f(s)`.
///
/// Works for any exact ring element that can be scaled by an integer
/// (`BigInt` or `BigRational`). Panics if `values` has fewer than `i + 1` entries.
pub fn forward_difference<T>(values: &[T], i: usize) -> T
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<BigInt, Output = T>,
{
    assert!(values.len() > i, "forward difference needs f(0..={i})");
    let row = binomial_row(i as u64);
    let mut acc = T::zero();
    for (s, c) in row.into_iter().enumerate() {
        let term = values[s].clone() * c;
        if (i - s).is_multiple_of(2) {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    acc
}

/// `base^exp` for small bases; `0^0 = 1`.
pub fn pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

pub fn ipow(base: u64, exp: u64) -> BigInt {
    BigInt::from(pow(base, exp))
}

/// Converts a signed intermediate into a count, rejecting negatives.
pub fn to_count(value: BigInt, context: &'static str) -> Result<CountValue> {
    if value.is_negative() {
        return Err(Error::NegativeCount {
            value: value.to_string(),
            context,
        });
    }
    Ok(value.magnitude().clone())
}

/// Exact integer division, failing loudly if a remainder is left.
pub fn exact_div(num: &BigRational, den: &BigInt, context: &'static str) -> Result<BigInt> {
    let q = num / BigRational::from_integer(den.clone());
    if !q.is_integer() {
        return Err(Error::NonExactDivision { context });
    }
    Ok(q.to_integer())
}

/// Nearest integer to a rational; halves round up.
pub fn round_nearest(r: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (r + half).floor().to_integer()
}
