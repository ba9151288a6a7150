//! Truncated formal power series over exact rationals, used as exponential
//! generating functions: the sequence value at degree `n` is `n!` times the
//! `m^n` coefficient.
//!
//! Truncation order is fixed at construction and arithmetic never
//! extrapolates past available coefficients; binary operations truncate to
//! the shorter operand.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{factorial, render_rational, Count, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EgfError {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("degree {degree} requested from a series truncated at order {order}")]
    OrderExceeded { degree: usize, order: usize },
    #[error("{degree}!·[m^{degree}] = {value} is not an integer")]
    NonIntegral { degree: usize, value: String },
    #[error("{degree}!·[m^{degree}] = {value} is negative, not a count")]
    NegativeCoefficient { degree: usize, value: String },
}

/// Formal power series truncated at a fixed order, with exact rational
/// coefficients `coeffs[i]` of `m^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    coeffs: Vec<Rational>,
}

impl EgfSeries {
    /// Builds a series from its coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least degree 0");
        Self { coeffs }
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(Rational::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// Truncation of `e^(scale·m)`: `coeffs[i] = scale^i / i!`.
    pub fn exp_series(scale: i64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(Rational::one());
        for i in 1..=order as u64 {
            let step = Rational::new(BigInt::from(scale), BigInt::from(i));
            let next = coeffs.last().unwrap() * step;
            coeffs.push(next);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Result<&Rational, EgfError> {
        self.coeffs.get(degree).ok_or(EgfError::OrderExceeded {
            degree,
            order: self.order(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        Self { coeffs }
    }

    /// Cauchy product truncated to the shorter operand, so that
    /// `n!·[m^n](a·b) = Σ_s C(n,s)·(s!·[m^s]a)·((n-s)!·[m^{n-s}]b)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse through the truncation order, by the
    /// triangular recurrence `b_0 = 1/a_0`,
    /// `b_n = -(1/a_0)·Σ_{i=1}^{n} a_i·b_{n-i}`.
    pub fn reciprocal(&self) -> Result<Self, EgfError> {
        if self.coeffs[0].is_zero() {
            return Err(EgfError::ZeroConstantTerm);
        }
        let inv0 = Rational::one() / &self.coeffs[0];
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let sum: Rational = (1..=n).map(|i| &self.coeffs[i] * &coeffs[n - i]).sum();
            coeffs.push(-&inv0 * sum);
        }
        Ok(Self { coeffs })
    }

    /// Integer power by repeated multiplication; the order is preserved.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = acc.multiply(self);
        }
        acc
    }

    /// `degree!·[m^degree]`, which must come out a nonnegative integer;
    /// non-integral or negative results are reported as errors rather than
    /// silently rounded.
    pub fn integer_coefficient(&self, degree: usize) -> Result<Count, EgfError> {
        let value = self.coeff(degree)? * Rational::from(BigInt::from(factorial(degree as u32)));
        if !value.denom().is_one() {
            return Err(EgfError::NonIntegral {
                degree,
                value: render_rational(&value),
            });
        }
        if value.numer().is_negative() {
            return Err(EgfError::NegativeCoefficient {
                degree,
                value: render_rational(&value),
            });
        }
        Ok(value.numer().magnitude().clone())
    }

    /// The full sequence `n!·[m^n]` for `n = 0..=order`.
    pub fn integer_sequence(&self) -> Result<Vec<Count>, EgfError> {
        (0..=self.order()).map(|n| self.integer_coefficient(n)).collect()
    }
}

/// The series `2 - e^m`, assembled from a constant and `exp_series` rather
/// than hard-coded coefficients.
pub fn two_minus_exp(order: usize) -> EgfSeries {
    EgfSeries::constant(Rational::from(BigInt::from(2)), order)
        .sub(&EgfSeries::exp_series(1, order))
}

/// `e^{km} / (2 - e^m)`: the generating function of `p^k_n`
/// (one free section, `k` restricted sections).
pub fn nelsen_schmidt_series(k: u32, order: usize) -> EgfSeries {
    let reciprocal = two_minus_exp(order)
        .reciprocal()
        .expect("2 - e^m has constant term 1");
    EgfSeries::exp_series(k as i64, order).multiply(&reciprocal)
}

/// `e^{rm} / (2 - e^m)^j`: the generating function of `p^r_j(n)`
/// (`r` restricted sections, `j` free sections). The power of the
/// reciprocal is formed by repeated multiplication.
pub fn general_series(r: u32, j: u32, order: usize) -> EgfSeries {
    let reciprocal = two_minus_exp(order)
        .reciprocal()
        .expect("2 - e^m has constant term 1");
    EgfSeries::exp_series(r as i64, order).multiply(&reciprocal.pow(j))
}
