//! Engines for `H_n(lambda, beta, gamma)`, the number of barred preferential
//! arrangements of an `n`-set with `lambda` ordinary sections (blocks carry
//! `beta` compartments) and one special section of `gamma` compartments.
//!
//! `H_n` is the `n`-th coefficient of `e^{gamma x} / (2 - e^{beta x})^lambda`.
//! Every engine below computes the same prefix table by a different route,
//! and each one is checked against the others.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::egf::bpa_egf;
use crate::error::{Error, Result};
use crate::numeric::{binomial_row, forward_difference, ipow, to_count, CountValue};
use crate::stirling;

/// `(lambda, beta, gamma)`: number of ordinary sections, compartments per
/// ordinary block, compartments in the special section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub lambda: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl Params {
    pub fn new(lambda: u32, beta: u32, gamma: u32) -> Result<Self> {
        if lambda == 0 && gamma == 0 {
            return Err(Error::InvalidParams(
                "lambda and gamma cannot both be zero".into(),
            ));
        }
        if lambda >= 1 && beta == 0 {
            return Err(Error::InvalidParams(
                "beta must be at least 1 when lambda >= 1".into(),
            ));
        }
        Ok(Params {
            lambda,
            beta,
            gamma,
        })
    }

    /// The two-section family `H_n(beta, gamma) = H_n(1, beta, gamma)`.
    pub fn one_bar(beta: u32, gamma: u32) -> Result<Self> {
        Self::new(1, beta, gamma)
    }

    /// Skips validation. Only for internal use where `(0, _, 0)` stands for
    /// the series `1`.
    pub(crate) fn unchecked(lambda: u32, beta: u32, gamma: u32) -> Self {
        Params {
            lambda,
            beta,
            gamma,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(lambda={}, beta={}, gamma={})",
            self.lambda, self.beta, self.gamma
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Coefficient extraction from the generating function.
    Egf,
    /// Multinomial convolution of `gamma^n` with `lambda` copies of `B_n(0,beta,0)`.
    Conv,
    /// `H_n = gamma^n + sum_{i<n} C(n,i) H_i beta^{n-i}` (one bar).
    OneBar,
    /// Insertion of the last element with a split at its block (one bar).
    BlockSplit,
    /// Insertion of the last element, any number of bars.
    Insert,
    /// Ladder `H(gamma + beta) = 2 H(gamma) - H(lambda - 1, gamma)`.
    Shift,
    /// Marked-bar recurrence, `gamma = beta`, `lambda >= 2`.
    MarkedBar,
    /// Empty-special-section recurrence, `gamma = 0`, `lambda >= 2`.
    EmptySpecial,
    /// Certified Dobinski series (one bar).
    Dobinski,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Egf,
        Method::Conv,
        Method::OneBar,
        Method::BlockSplit,
        Method::Insert,
        Method::Shift,
        Method::MarkedBar,
        Method::EmptySpecial,
        Method::Dobinski,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Egf => "egf",
            Method::Conv => "conv",
            Method::OneBar => "rec3",
            Method::BlockSplit => "rec4",
            Method::Insert => "insert",
            Method::Shift => "shift",
            Method::MarkedBar => "marked",
            Method::EmptySpecial => "empty-special",
            Method::Dobinski => "dobinski-backed",
        }
    }

    /// `Err` explains why the method cannot produce this family.
    pub fn check_applicable(self, params: &Params) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::MethodNotApplicable {
                method: self.name(),
                reason: reason.to_string(),
            })
        };
        match self {
            Method::OneBar | Method::BlockSplit | Method::Dobinski if params.lambda != 1 => {
                fail("requires lambda = 1")
            }
            Method::MarkedBar if params.lambda < 2 || params.gamma != params.beta => {
                fail("requires lambda >= 2 and gamma = beta")
            }
            Method::EmptySpecial if params.lambda < 2 || params.gamma != 0 => {
                fail("requires lambda >= 2 and gamma = 0")
            }
            _ => Ok(()),
        }
    }

    pub fn is_applicable(self, params: &Params) -> bool {
        self.check_applicable(params).is_ok()
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown method {s:?}")))
    }
}

/// Prefix table `H_0..=H_N` for one parameter point, tagged with the engine
/// that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTable {
    pub params: Params,
    pub values: Vec<CountValue>,
    pub method: Method,
}

impl HTable {
    fn from_signed(params: Params, values: Vec<BigInt>, method: Method) -> Result<Self> {
        let values = values
            .into_iter()
            .map(|v| to_count(v, "H table entry"))
            .collect::<Result<Vec<_>>>()?;
        Ok(HTable {
            params,
            values,
            method,
        })
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }
}

/// Dispatches to the engine named by `method`.
pub fn compute(params: &Params, n_max: usize, method: Method) -> Result<HTable> {
    method.check_applicable(params)?;
    let (l, b, g) = (params.lambda, params.beta as u64, params.gamma as u64);
    let values = match method {
        Method::Egf => raw_egf(l, b, g, n_max),
        Method::Conv => raw_conv(l, b, g, n_max),
        Method::OneBar => raw_one_bar(b, g, n_max),
        Method::BlockSplit => raw_block_split(b, g, n_max),
        Method::Insert => raw_insert(l, b, g, n_max),
        Method::Shift => raw_shift(l, b, g, n_max),
        Method::MarkedBar => raw_marked_bar(l, b, n_max)?,
        Method::EmptySpecial => raw_empty_special(l, b, n_max)?,
        Method::Dobinski => (0..=n_max as u32)
            .map(|n| stirling::bell_dobinski(n, 0, params.beta, params.gamma))
            .collect::<Result<Vec<_>>>()?,
    };
    HTable::from_signed(*params, values, method)
}

pub fn h_egf(params: &Params, n_max: usize) -> Result<HTable> {
    compute(params, n_max, Method::Egf)
}

pub fn h_conv(params: &Params, n_max: usize) -> Result<HTable> {
    compute(params, n_max, Method::Conv)
}

pub fn h_rec_one_bar(beta: u32, gamma: u32, n_max: usize) -> Result<HTable> {
    compute(&Params::one_bar(beta, gamma)?, n_max, Method::OneBar)
}

pub fn h_rec_block_split(beta: u32, gamma: u32, n_max: usize) -> Result<HTable> {
    compute(&Params::one_bar(beta, gamma)?, n_max, Method::BlockSplit)
}

pub fn h_rec_insert(params: &Params, n_max: usize) -> Result<HTable> {
    compute(params, n_max, Method::Insert)
}

pub fn h_shift(params: &Params, n_max: usize) -> Result<HTable> {
    compute(params, n_max, Method::Shift)
}

pub fn h_rec_marked_bar(lambda: u32, beta: u32, n_max: usize) -> Result<HTable> {
    compute(&Params::new(lambda, beta, beta)?, n_max, Method::MarkedBar)
}

pub fn h_rec_empty_special(lambda: u32, beta: u32, n_max: usize) -> Result<HTable> {
    compute(&Params::new(lambda, beta, 0)?, n_max, Method::EmptySpecial)
}

/// `B_n(0,beta,0) = sum_i C(n,i) H_i(1,beta,gamma) (-gamma)^{n-i}`, for any `gamma`.
pub fn b_from_alternating(beta: u32, gamma: u32, n_max: usize) -> Result<Vec<CountValue>> {
    Params::one_bar(beta, gamma)?;
    let h = raw_one_bar(beta as u64, gamma as u64, n_max);
    let minus_gamma = -BigInt::from(gamma);
    (0..=n_max)
        .map(|n| {
            let row = binomial_row(n as u64);
            let v: BigInt = (0..=n)
                .map(|i| &row[i] * &h[i] * num_traits::pow(minus_gamma.clone(), n - i))
                .sum();
            to_count(v, "alternating Bell sum")
        })
        .collect()
}

/// Right side of `H_{n+1}(l,b,g) = g H_n(l,b,g) + l b H_n(l+1, b, g+b)`,
/// evaluated from generating-function tables.
pub fn h_rec_merge(params: &Params, n: usize) -> Result<CountValue> {
    let (l, b, g) = (params.lambda, params.beta as u64, params.gamma as u64);
    let here = raw_egf(l, b, g, n);
    let mut rhs = BigInt::from(g) * &here[n];
    if l > 0 {
        let up = raw_egf(l + 1, b, g + b, n);
        rhs += BigInt::from(l as u64 * b) * &up[n];
    }
    to_count(rhs, "merge recurrence")
}

/// `H_n(lambda, beta, gamma + delta)` from the table of `H(lambda, beta, gamma)`:
/// `sum_r C(n,r) delta^r H_{n-r}`.
pub fn h_at_gamma_offset(base: &[BigInt], n: usize, delta: u64) -> BigInt {
    let row = binomial_row(n as u64);
    let delta = BigInt::from(delta);
    let mut power = BigInt::one();
    let mut acc = BigInt::zero();
    for r in 0..=n {
        acc += &row[r] * &power * &base[n - r];
        power *= &delta;
    }
    acc
}

/// `sum_{k=0}^{n} sum_{s=0}^{k} (-1)^{k-s} C(k,s) H_n(lambda-1, beta, gamma + beta s)`.
///
/// Requires `lambda >= 1`.
pub fn alternating_double_sum(n: usize, lambda: u32, beta: u32, gamma: u32) -> Result<BigInt> {
    if lambda == 0 || beta == 0 {
        return Err(Error::InvalidParams(
            "double sum needs lambda >= 1 and beta >= 1".into(),
        ));
    }
    let base = raw_egf(lambda - 1, beta as u64, 0, n);
    let q: Vec<BigInt> = (0..=n as u64)
        .map(|s| h_at_gamma_offset(&base, n, gamma as u64 + beta as u64 * s))
        .collect();
    Ok((0..=n).map(|k| forward_difference(&q, k)).sum())
}

/// Signed table straight from the generating function; accepts `(0, _, 0)`.
pub(crate) fn raw_egf(lambda: u32, beta: u64, gamma: u64, n_max: usize) -> Vec<BigInt> {
    bpa_egf(lambda, beta, gamma, n_max)
        .to_integers()
        .expect("integer parameters give integral coefficients")
}

fn powers(base: u64, n_max: usize) -> Vec<BigInt> {
    (0..=n_max as u64).map(|n| ipow(base, n)).collect()
}

fn binomial_convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|n| {
            let row = binomial_row(n as u64);
            (0..=n).map(|r| &row[r] * &a[r] * &b[n - r]).sum()
        })
        .collect()
}

pub(crate) fn raw_conv(lambda: u32, beta: u64, gamma: u64, n_max: usize) -> Vec<BigInt> {
    let mut acc = powers(gamma, n_max);
    if lambda == 0 {
        return acc;
    }
    let bell: Vec<BigInt> = (0..=n_max as u32)
        .map(|r| stirling::bell(r, 0, beta as u32, 0).expect("beta >= 1"))
        .collect();
    for _ in 0..lambda {
        acc = binomial_convolve(&acc, &bell);
    }
    acc
}

fn raw_one_bar(beta: u64, gamma: u64, n_max: usize) -> Vec<BigInt> {
    let beta_pow = powers(beta, n_max);
    let mut h: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row = binomial_row(n as u64);
        let mut v = ipow(gamma, n as u64);
        for i in 0..n {
            v += &row[i] * &h[i] * &beta_pow[n - i];
        }
        h.push(v);
    }
    h
}

// H(1, beta, beta): H_{n+1} = beta H_n + beta sum C(n,i) H_i H_{n-i}; closes on itself.
fn raw_one_bar_diagonal(beta: u64, n_max: usize) -> Vec<BigInt> {
    let beta = BigInt::from(beta);
    let mut h = vec![BigInt::one()];
    for n in 0..n_max {
        let row = binomial_row(n as u64);
        let split: BigInt = (0..=n).map(|i| &row[i] * &h[i] * &h[n - i]).sum();
        let next = &beta * &h[n] + &beta * split;
        h.push(next);
    }
    h
}

fn raw_block_split(beta: u64, gamma: u64, n_max: usize) -> Vec<BigInt> {
    let aux = raw_one_bar_diagonal(beta, n_max);
    let (beta, gamma) = (BigInt::from(beta), BigInt::from(gamma));
    let mut h = vec![BigInt::one()];
    for n in 0..n_max {
        let row = binomial_row(n as u64);
        let split: BigInt = (0..=n).map(|i| &row[i] * &h[i] * &aux[n - i]).sum();
        let next = &gamma * &h[n] + &beta * split;
        h.push(next);
    }
    h
}

pub(crate) fn raw_insert(lambda: u32, beta: u64, gamma: u64, n_max: usize) -> Vec<BigInt> {
    let aux = raw_one_bar_diagonal(beta, n_max);
    let weight = BigInt::from(lambda as u64 * beta);
    let gamma = BigInt::from(gamma);
    let mut h = vec![BigInt::one()];
    for n in 0..n_max {
        let row = binomial_row(n as u64);
        let split: BigInt = (0..=n).map(|i| &row[i] * &aux[i] * &h[n - i]).sum();
        let next = &gamma * &h[n] + &weight * split;
        h.push(next);
    }
    h
}

// Start from gamma mod beta (computed by convolution) and climb in steps of beta.
fn raw_shift(lambda: u32, beta: u64, gamma: u64, n_max: usize) -> Vec<BigInt> {
    if lambda == 0 {
        return powers(gamma, n_max);
    }
    let base_gamma = gamma % beta;
    let mut table = raw_conv(lambda, beta, base_gamma, n_max);
    for step in 0..gamma / beta {
        let lower = raw_shift(lambda - 1, beta, base_gamma + step * beta, n_max);
        table = table
            .iter()
            .zip(&lower)
            .map(|(h, l)| BigInt::from(2) * h - l)
            .collect();
    }
    table
}

fn one_bar_or(lambda: u32, beta: u64, gamma: u64, n_max: usize) -> Result<Vec<BigInt>> {
    debug_assert!(lambda >= 1);
    if lambda == 1 {
        return Ok(raw_one_bar(beta, gamma, n_max));
    }
    if gamma == 0 {
        raw_empty_special(lambda, beta, n_max)
    } else {
        debug_assert_eq!(gamma, beta);
        raw_marked_bar(lambda, beta, n_max)
    }
}

fn raw_marked_bar(lambda: u32, beta: u64, n_max: usize) -> Result<Vec<BigInt>> {
    debug_assert!(lambda >= 2);
    let prev_diag = one_bar_or(lambda - 1, beta, beta, n_max)?;
    let prev_empty = one_bar_or(lambda - 1, beta, 0, n_max + 1)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let weight = BigRational::new(BigInt::one(), BigInt::from(2 * beta * (lambda as u64 - 1)));
    let beta_pow = powers(beta, n_max);
    (0..=n_max)
        .map(|n| {
            let row = binomial_row(n as u64);
            let sum: BigInt = (0..=n)
                .map(|i| &row[i] * &prev_empty[i + 1] * &beta_pow[n - i])
                .sum();
            let v = &half * BigRational::from_integer(prev_diag[n].clone())
                + &weight * BigRational::from_integer(sum);
            integral(v, "marked-bar recurrence")
        })
        .collect()
}

fn raw_empty_special(lambda: u32, beta: u64, n_max: usize) -> Result<Vec<BigInt>> {
    debug_assert!(lambda >= 2);
    let prev = one_bar_or(lambda - 1, beta, 0, n_max + 1)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let weight = BigRational::new(BigInt::one(), BigInt::from(2 * beta * (lambda as u64 - 1)));
    (0..=n_max)
        .map(|n| {
            let v = &weight * BigRational::from_integer(prev[n + 1].clone())
                + &half * BigRational::from_integer(prev[n].clone());
            integral(v, "empty-special recurrence")
        })
        .collect()
}

fn integral(v: BigRational, context: &'static str) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonExactDivision { context })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(lambda: u32, beta: u32, gamma: u32) -> Params {
        Params::new(lambda, beta, gamma).unwrap()
    }

    fn vals(t: &HTable) -> Vec<u64> {
        t.values.iter().map(|v| u64::try_from(v).unwrap()).collect()
    }

    fn at(t: &HTable, n: usize) -> u64 {
        u64::try_from(&t.values[n]).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(0, 1, 0).is_err());
        assert!(Params::new(1, 0, 0).is_err());
        assert!(Params::new(0, 0, 3).is_ok());
        assert!(Params::new(2, 1, 0).is_ok());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn egf_examples() {
        assert_eq!(
            vals(&h_egf(&p(1, 1, 0), 5).unwrap()),
            vec![1, 1, 3, 13, 75, 541]
        );
        assert_eq!(vals(&h_egf(&p(0, 1, 3), 2).unwrap()), vec![1, 3, 9]);
        assert_eq!(vals(&h_egf(&p(2, 1, 0), 2).unwrap()), vec![1, 2, 8]);
    }

    #[test]
    fn conv_examples() {
        assert_eq!(
            vals(&h_conv(&p(1, 1, 2), 4).unwrap()),
            vec![1, 3, 11, 51, 299]
        );
        assert_eq!(vals(&h_conv(&p(1, 2, 0), 3).unwrap()), vec![1, 2, 12, 104]);
        assert_eq!(vals(&h_conv(&p(2, 1, 0), 2).unwrap()), vec![1, 2, 8]);
    }

    #[test]
    fn one_bar_examples() {
        assert_eq!(at(&h_rec_one_bar(1, 2, 2).unwrap(), 2), 11);
        assert_eq!(at(&h_rec_one_bar(1, 0, 3).unwrap(), 3), 13);
        assert_eq!(at(&h_rec_one_bar(2, 0, 1).unwrap(), 1), 2);
    }

    #[test]
    fn block_split_examples() {
        assert_eq!(at(&h_rec_block_split(1, 0, 3).unwrap(), 3), 13);
        assert_eq!(at(&h_rec_block_split(1, 1, 1).unwrap(), 1), 2);
        assert_eq!(at(&h_rec_block_split(3, 2, 0).unwrap(), 0), 1);
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(b_from_alternating(1, 1, 2).unwrap()[2], BigUint::from(3u32));
        assert_eq!(b_from_alternating(1, 0, 2).unwrap()[2], BigUint::from(3u32));
        assert_eq!(b_from_alternating(2, 1, 1).unwrap()[1], BigUint::from(2u32));
    }

    #[test]
    fn alternating_is_independent_of_gamma() {
        for beta in 1..=4 {
            let reference: Vec<BigUint> = (0..=20)
                .map(|n| to_count(stirling::bell(n, 0, beta, 0).unwrap(), "t").unwrap())
                .collect();
            for gamma in 0..=4 {
                assert_eq!(b_from_alternating(beta, gamma, 20).unwrap(), reference);
            }
        }
    }

    #[test]
    fn marked_bar_examples() {
        let t = h_rec_marked_bar(2, 1, 1).unwrap();
        assert_eq!(at(&t, 1), 3);
        assert_eq!(at(&t, 0), 1);
        assert_eq!(at(&h_rec_marked_bar(2, 2, 1).unwrap(), 1), 6);
        assert!(h_rec_marked_bar(1, 1, 3).is_err());
    }

    #[test]
    fn insert_examples() {
        assert_eq!(at(&h_rec_insert(&p(1, 1, 0), 3).unwrap(), 3), 13);
        assert_eq!(at(&h_rec_insert(&p(2, 1, 0), 2).unwrap(), 2), 8);
        assert_eq!(at(&h_rec_insert(&p(3, 2, 4), 0).unwrap(), 0), 1);
    }

    #[test]
    fn merge_examples() {
        assert_eq!(h_rec_merge(&p(1, 1, 0), 1).unwrap(), BigUint::from(3u32));
        assert_eq!(h_rec_merge(&p(1, 1, 2), 0).unwrap(), BigUint::from(3u32));
        for n in 0..6 {
            assert_eq!(
                h_rec_merge(&p(0, 1, 3), n).unwrap(),
                crate::numeric::pow(3, n as u64 + 1)
            );
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(at(&h_shift(&p(1, 1, 2), 2).unwrap(), 2), 11);
        assert_eq!(at(&h_shift(&p(1, 1, 1), 2).unwrap(), 2), 6);
        assert_eq!(at(&h_shift(&p(3, 2, 4), 0).unwrap(), 0), 1);
    }

    #[test]
    fn empty_special_examples() {
        let t = h_rec_empty_special(2, 1, 2).unwrap();
        assert_eq!(at(&t, 2), 8);
        assert_eq!(at(&t, 0), 1);
        assert_eq!(at(&h_rec_empty_special(2, 2, 1).unwrap(), 1), 4);
    }

    #[test]
    fn dobinski_backed_matches() {
        let t = compute(&p(1, 2, 3), 12, Method::Dobinski).unwrap();
        assert_eq!(t.values, h_egf(&p(1, 2, 3), 12).unwrap().values);
    }

    #[test]
    fn inapplicable_methods_are_rejected() {
        assert!(compute(&p(2, 1, 0), 3, Method::OneBar).is_err());
        assert!(compute(&p(2, 1, 0), 3, Method::BlockSplit).is_err());
        assert!(compute(&p(2, 1, 1), 3, Method::EmptySpecial).is_err());
        assert!(compute(&p(2, 1, 0), 3, Method::MarkedBar).is_err());
        assert!(compute(&p(2, 1, 0), 3, Method::Dobinski).is_err());
    }

    #[test]
    fn all_methods_agree_on_small_grid() {
        for lambda in 0..=4 {
            for beta in 1..=3 {
                for gamma in 0..=3 {
                    let Ok(params) = Params::new(lambda, beta, gamma) else {
                        continue;
                    };
                    let reference = h_egf(&params, 15).unwrap().values;
                    for m in Method::ALL.into_iter().filter(|m| m.is_applicable(&params)) {
                        assert_eq!(
                            compute(&params, 15, m).unwrap().values,
                            reference,
                            "{params} {m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn shift_at_gamma_zero_also_holds() {
        for lambda in 1..=3 {
            for beta in 1..=3 {
                let up = raw_egf(lambda, beta, beta, 20);
                let here = raw_egf(lambda, beta, 0, 20);
                let down = raw_egf(lambda - 1, beta, 0, 20);
                for n in 0..=20 {
                    assert_eq!(up[n], BigInt::from(2) * &here[n] - &down[n]);
                }
            }
        }
    }

    #[test]
    fn gamma_offset_matches_direct() {
        let base = raw_egf(2, 3, 1, 10);
        for delta in 0..5u64 {
            let direct = raw_egf(2, 3, 1 + delta, 10);
            for (n, d) in direct.iter().enumerate() {
                assert_eq!(&h_at_gamma_offset(&base, n, delta), d);
            }
        }
    }

    #[test]
    fn double_sum_equals_h() {
        for lambda in 1..=3 {
            for beta in 1..=2 {
                for gamma in 0..=2 {
                    let h = raw_egf(lambda, beta as u64, gamma as u64, 8);
                    for (n, v) in h.iter().enumerate() {
                        assert_eq!(&alternating_double_sum(n, lambda, beta, gamma).unwrap(), v);
                    }
                }
            }
        }
    }
}
