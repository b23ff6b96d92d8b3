//! Truncated exponential generating functions with exact coefficients.
//!
//! A series of order `N` holds `c_0..=c_N` and represents `sum c_n x^n / n!`.
//! Coefficients are stored already scaled by `n!`, so the product of two
//! series is the binomial convolution of their coefficient lists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{binomial_row, ipow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    coeffs: Vec<BigRational>,
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

impl EgfSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series holds at least c_0");
        EgfSeries { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(int).collect())
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        EgfSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `e^{c x}`: coefficient `n` is `c^n`.
    pub fn exp(c: u64, order: usize) -> Self {
        Self::from_integers((0..=order as u64).map(|n| ipow(c, n)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `[x^n/n!]` of the series.
    pub fn coeff(&self, n: usize) -> Result<&BigRational> {
        self.coeffs.get(n).ok_or(Error::IndexBeyondOrder {
            index: n,
            order: self.order(),
        })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// `a * self + b * other`, coefficientwise.
    pub fn linear_combination(
        &self,
        a: &BigRational,
        other: &Self,
        b: &BigRational,
    ) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(EgfSeries { coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let one = BigRational::one();
        self.linear_combination(&one, other, &one)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(&BigRational::one(), other, &-BigRational::one())
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        EgfSeries {
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }

    /// Truncated product: `c_n = sum_r C(n,r) a_r b_{n-r}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .map(|n| {
                let row = binomial_row(n as u64);
                let mut acc = BigRational::zero();
                for (r, c) in row.into_iter().enumerate() {
                    let (a, b) = (&self.coeffs[r], &other.coeffs[n - r]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc += a * b * c;
                }
                acc
            })
            .collect();
        Ok(EgfSeries { coeffs })
    }

    /// Multiplicative inverse via the triangular convolution recurrence.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_a0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv_a0.clone());
        for n in 1..=self.order() {
            let row = binomial_row(n as u64);
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &out[n - k] * row[k].clone();
            }
            out.push(-(acc * &inv_a0));
        }
        Ok(EgfSeries { coeffs: out })
    }

    /// `self^lambda`; `lambda = 0` gives the series 1.
    pub fn power(&self, lambda: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = lambda;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        result
    }

    /// All coefficients as integers, or `NonExactDivision` if any is fractional.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonExactDivision {
                        context: "egf coefficient is not integral",
                    })
                }
            })
            .collect()
    }
}

/// `e^{gamma x} / (2 - e^{beta x})^lambda` truncated at `order`.
pub fn bpa_egf(lambda: u32, beta: u64, gamma: u64, order: usize) -> EgfSeries {
    let exp_gamma = EgfSeries::exp(gamma, order);
    if lambda == 0 {
        return exp_gamma;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let denom = EgfSeries::one(order)
        .linear_combination(&two, &EgfSeries::exp(beta, order), &-BigRational::one())
        .expect("same order");
    let inv = denom.reciprocal().expect("2 - e^{bx} has constant term 1");
    exp_gamma.mul(&inv.power(lambda)).expect("same order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> EgfSeries {
        EgfSeries::from_integers(v.iter().map(|&x| BigInt::from(x)))
    }

    fn as_i64(s: &EgfSeries) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .into_iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    fn two_minus_exp(beta: u64, order: usize) -> EgfSeries {
        EgfSeries::one(order)
            .linear_combination(
                &BigRational::from_integer(2.into()),
                &EgfSeries::exp(beta, order),
                &-BigRational::one(),
            )
            .unwrap()
    }

    #[test]
    fn exp_examples() {
        assert_eq!(as_i64(&EgfSeries::exp(0, 3)), vec![1, 0, 0, 0]);
        assert_eq!(as_i64(&EgfSeries::exp(1, 3)), vec![1, 1, 1, 1]);
        assert_eq!(as_i64(&EgfSeries::exp(2, 3)), vec![1, 2, 4, 8]);
    }

    #[test]
    fn add_examples() {
        assert_eq!(as_i64(&two_minus_exp(1, 2)), vec![1, -1, -1]);
        let a = ints(&[3, 1, 4]);
        assert_eq!(a.add(&ints(&[0, 0, 0])).unwrap(), a);
        assert_eq!(
            as_i64(&ints(&[1, 2]).add(&ints(&[0, 1])).unwrap()),
            vec![1, 3]
        );
        assert_eq!(as_i64(&a.sub(&a).unwrap()), vec![0, 0, 0]);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = ints(&[1, 2]).add(&ints(&[1])).unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 1, right: 0 });
        assert!(ints(&[1, 2]).mul(&ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn mul_examples() {
        let e = EgfSeries::exp(1, 6);
        assert_eq!(e.mul(&e).unwrap(), EgfSeries::exp(2, 6));
        let a = ints(&[5, -3, 2]);
        assert_eq!(a.mul(&EgfSeries::one(2)).unwrap(), a);
        let fubini = ints(&[1, 1, 3]);
        assert_eq!(as_i64(&fubini.mul(&fubini).unwrap()), vec![1, 2, 8]);
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(
            as_i64(&two_minus_exp(1, 3).reciprocal().unwrap()),
            vec![1, 1, 3, 13]
        );
        assert_eq!(EgfSeries::one(4).reciprocal().unwrap(), EgfSeries::one(4));
        assert_eq!(
            as_i64(&EgfSeries::exp(1, 5).reciprocal().unwrap()),
            vec![1, -1, 1, -1, 1, -1]
        );
        assert_eq!(
            ints(&[0, 1]).reciprocal().unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn power_examples() {
        let a = ints(&[2, 1, 7]);
        assert_eq!(a.power(0), EgfSeries::one(2));
        assert_eq!(a.power(1), a);
        let f = two_minus_exp(1, 2).reciprocal().unwrap();
        assert_eq!(as_i64(&f.power(2)), vec![1, 2, 8]);
        assert_eq!(a.power(3), a.mul(&a).unwrap().mul(&a).unwrap());
    }

    #[test]
    fn coeff_examples() {
        assert_eq!(
            EgfSeries::exp(2, 3).coeff(3).unwrap(),
            &BigRational::from_integer(8.into())
        );
        assert!(EgfSeries::one(5).coeff(5).unwrap().is_zero());
        let s = bpa_egf(1, 1, 2, 2);
        assert_eq!(s.coeff(2).unwrap(), &BigRational::from_integer(11.into()));
        assert_eq!(
            EgfSeries::one(2).coeff(3).unwrap_err(),
            Error::IndexBeyondOrder { index: 3, order: 2 }
        );
    }

    #[test]
    fn rational_coefficients_survive() {
        let half = BigRational::new(1.into(), 2.into());
        let s = EgfSeries::constant(half.clone(), 2).reciprocal().unwrap();
        assert_eq!(s.coeff(0).unwrap(), &BigRational::from_integer(2.into()));
        assert!(EgfSeries::constant(half, 1).to_integers().is_err());
    }

    #[test]
    fn bpa_egf_is_integral_and_nonnegative() {
        for lambda in 0..=4u32 {
            for beta in 0..=4u64 {
                for gamma in 0..=4u64 {
                    if lambda >= 1 && beta == 0 {
                        continue;
                    }
                    let s = bpa_egf(lambda, beta, gamma, 60);
                    for c in s.to_integers().expect("integral") {
                        assert!(c >= BigInt::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn mul_commutes_and_associates_on_grid() {
        let pool: Vec<EgfSeries> = vec![
            ints(&[1, 2, 3, 4, 5]),
            ints(&[0, -1, 0, 2, 7]),
            ints(&[3, 0, 0, 0, 1]),
            EgfSeries::exp(3, 4),
            two_minus_exp(2, 4),
        ];
        for a in &pool {
            for b in &pool {
                assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                for c in &pool {
                    let left = a.mul(b).unwrap().mul(c).unwrap();
                    let right = a.mul(&b.mul(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    fn series_strategy() -> impl Strategy<Value = EgfSeries> {
        (0usize..=40).prop_flat_map(|order| {
            (
                prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
                prop::collection::vec(-50i64..50, order),
            )
                .prop_map(|(c0, rest)| {
                    let mut v = vec![BigRational::from_integer(c0.into())];
                    v.extend(
                        rest.into_iter()
                            .map(|x| BigRational::new(x.into(), 7.into())),
                    );
                    EgfSeries::from_coeffs(v)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn times_reciprocal_is_one(a in series_strategy()) {
            let inv = a.reciprocal().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), EgfSeries::one(a.order()));
        }
    }
}
