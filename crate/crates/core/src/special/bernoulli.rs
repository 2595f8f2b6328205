use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::rational_to_f64;
use super::ComplexValue;
use crate::error::{Error, Result};

pub const BERNOULLI_MAX_DEGREE: usize = 32;

/// Bernoulli polynomials `B_0 .. B_max_degree` with exact rational coefficients.
///
/// `coefficients[n][k]` is the coefficient of `x^k` in `B_n(x)`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    max_degree: usize,
    coefficients: Vec<Vec<BigRational>>,
    coefficients_f64: Vec<Vec<f64>>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl BernoulliTable {
    pub fn new(max_degree: usize) -> Self {
        // Bernoulli numbers from sum_{k<=m} C(m+1, k) B_k = 0.
        let mut numbers: Vec<BigRational> = Vec::with_capacity(max_degree + 1);
        numbers.push(BigRational::one());
        for m in 1..=max_degree {
            let mut acc = BigRational::zero();
            for (k, b) in numbers.iter().enumerate() {
                acc += BigRational::from_integer(binomial(m + 1, k)) * b;
            }
            numbers.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }

        let coefficients: Vec<Vec<BigRational>> = (0..=max_degree)
            .map(|n| {
                (0..=n)
                    .map(|k| BigRational::from_integer(binomial(n, k)) * &numbers[n - k])
                    .collect()
            })
            .collect();
        let coefficients_f64 = coefficients
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect();
        BernoulliTable {
            max_degree,
            coefficients,
            coefficients_f64,
        }
    }

    /// Shared table of degree [`BERNOULLI_MAX_DEGREE`].
    pub fn shared() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(|| BernoulliTable::new(BERNOULLI_MAX_DEGREE))
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coefficients(&self, n: usize) -> Result<&[BigRational]> {
        self.coefficients
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::Range {
                index: n,
                max: self.max_degree,
            })
    }

    /// Bernoulli number `B_n = B_n(0)`.
    pub fn number(&self, n: usize) -> Result<&BigRational> {
        Ok(&self.coefficients(n)?[0])
    }

    pub fn eval(&self, n: usize, x: ComplexValue) -> Result<ComplexValue> {
        let row = self.coefficients_f64.get(n).ok_or(Error::Range {
            index: n,
            max: self.max_degree,
        })?;
        Ok(row
            .iter()
            .rev()
            .fold(ComplexValue::new(0.0, 0.0), |acc, &c| acc * x + c))
    }

    pub fn eval_exact(&self, n: usize, x: &BigRational) -> Result<BigRational> {
        let row = self.coefficients(n)?;
        Ok(row
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c))
    }
}

/// `B_n(a)` from the shared table.
pub fn bernoulli_poly(n: usize, a: ComplexValue) -> Result<ComplexValue> {
    BernoulliTable::shared().eval(n, a)
}

/// Even Bernoulli numbers `B_2, B_4, ..., B_{2k}` as floats.
pub fn bernoulli_numbers_f64(k: usize) -> Vec<f64> {
    let table = BernoulliTable::shared();
    (1..=k)
        .map(|i| rational_to_f64(table.number(2 * i).expect("within table")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::exact::rational;

    #[test]
    fn low_degree_polynomials() {
        let t = BernoulliTable::shared();
        assert_eq!(t.coefficients(0).unwrap(), &[rational(1, 1)]);
        assert_eq!(t.coefficients(1).unwrap(), &[rational(-1, 2), rational(1, 1)]);
        assert_eq!(
            t.coefficients(2).unwrap(),
            &[rational(1, 6), rational(-1, 1), rational(1, 1)]
        );
        let a = ComplexValue::new(0.3, -1.1);
        let b1 = bernoulli_poly(1, a).unwrap();
        assert!((b1 - (a - 0.5)).norm() < 1e-15);
        let b2 = bernoulli_poly(2, ComplexValue::new(0.0, 0.0)).unwrap();
        assert!((b2.re - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn known_bernoulli_numbers() {
        let t = BernoulliTable::shared();
        assert_eq!(t.number(12).unwrap(), &rational(-691, 2730));
        assert_eq!(t.number(20).unwrap(), &rational(-174611, 330));
        assert_eq!(t.number(13).unwrap(), &rational(0, 1));
    }

    #[test]
    fn derivative_and_integral_identities() {
        let t = BernoulliTable::shared();
        for n in 1..=t.max_degree() {
            let row = t.coefficients(n).unwrap();
            let lower = t.coefficients(n - 1).unwrap();
            // B_n' = n B_{n-1}
            for k in 1..=n {
                let deriv = &row[k] * BigRational::from_integer(BigInt::from(k));
                let expect = &lower[k - 1] * BigRational::from_integer(BigInt::from(n));
                assert_eq!(deriv, expect, "n={n} k={k}");
            }
            // integral over [0, 1] vanishes
            let integral: BigRational = row
                .iter()
                .enumerate()
                .map(|(k, c)| c / BigRational::from_integer(BigInt::from(k + 1)))
                .sum();
            assert!(integral.is_zero(), "n={n}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            bernoulli_poly(BERNOULLI_MAX_DEGREE + 1, ComplexValue::new(0.0, 0.0)),
            Err(Error::Range { .. })
        ));
    }
}
