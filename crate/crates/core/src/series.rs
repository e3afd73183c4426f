//! Truncated formal power series over the integers, plus the k-Catalan and
//! Raney primitives the counting modules are built on.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `t^0 ..= t^N` and nothing else. Binary operations require both operands
//! to carry the same order; the `checked_*` methods report a mismatch as an
//! error, while the operator impls panic on it the same way slice indexing
//! panics on an out-of-range index.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer used for every count.
pub type ExactInt = BigInt;

/// The step parameter of a k-Dyck path: up steps are `(1, 1)`, down steps
/// are `(1, 1 - k)`. Always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct K(u32);

impl K {
    pub const TWO: K = K(2);

    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        Ok(K(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Height lost by one down step.
    pub fn drop(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for K {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    // Always exactly order + 1 entries.
    coeffs: Vec<ExactInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![ExactInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `t^power`, which is the zero series when `power > order`.
    pub fn monomial(power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = ExactInt::one();
        }
        s
    }

    /// Builds a series from leading coefficients, padding with zeros or
    /// dropping anything past `order`.
    pub fn from_coeffs<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<ExactInt>,
    {
        let mut v: Vec<ExactInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        v.resize(order + 1, ExactInt::zero());
        TruncatedSeries { coeffs: v }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactInt> {
        self.coeffs
    }

    /// Coefficient of `t^n`. Panics when `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &ExactInt {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&ExactInt> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Re-truncates to a smaller (or equal) order.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch {
                left: order,
                right: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
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

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![ExactInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, factor: &ExactInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `t^power`, dropping whatever falls past the order.
    pub fn shift(&self, power: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        if power <= order {
            out.coeffs[power..].clone_from_slice(&self.coeffs[..=order - power]);
        }
        out
    }

    /// `self^exp` by binary exponentiation; `self^0` is the one-series.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative inverse modulo `t^(N+1)`. The constant term must be
    /// `1` or `-1`, which keeps every coefficient of the inverse integral.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != ExactInt::one() {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        let order = self.order();
        let mut out: Vec<ExactInt> = Vec::with_capacity(order + 1);
        out.push(c0.clone());
        for i in 1..=order {
            let mut acc = ExactInt::zero();
            for j in 1..=i {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[i - j];
                }
            }
            // c0 is its own inverse.
            out.push(-(acc * c0));
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_add(rhs).expect("series orders differ")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_sub(rhs).expect("series orders differ")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.checked_mul(rhs).expect("series orders differ")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Binomial coefficient `C(a, b)` for `0 <= b <= a`.
pub fn binom(a: u64, b: u64) -> ExactInt {
    if b > a {
        return ExactInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = ExactInt::one();
    for i in 1..=b {
        // Product of i consecutive integers is divisible by i!.
        acc = acc * ExactInt::from(a - b + i) / ExactInt::from(i);
    }
    acc
}

/// Binomial coefficient extended by zero: `0` whenever `a < 0`, `b < 0`,
/// or `b > a`.
pub fn binom_guarded(a: i64, b: i64) -> ExactInt {
    if a < 0 || b < 0 || b > a {
        return ExactInt::zero();
    }
    binom(a as u64, b as u64)
}

/// Raney number `r / (kn + r) * C(kn + r, n)`, the coefficient of `t^n` in
/// `C_k(t)^r`. For `r = 0` this is `1` at `n = 0` and `0` otherwise.
pub fn raney(k: K, r: u64, n: u64) -> ExactInt {
    if r == 0 {
        return if n == 0 {
            ExactInt::one()
        } else {
            ExactInt::zero()
        };
    }
    let top = k.get() as u64 * n + r;
    let (q, rem) = (binom(top, n) * ExactInt::from(r)).div_rem(&ExactInt::from(top));
    debug_assert!(rem.is_zero());
    q
}

/// Raney number at a possibly negative index; zero when `n < 0`.
pub(crate) fn raney_at(k: K, r: u64, n: i64) -> ExactInt {
    if n < 0 {
        ExactInt::zero()
    } else {
        raney(k, r, n as u64)
    }
}

/// The k-Catalan generating function `C_k(t)` modulo `t^(order+1)`.
///
/// Coefficients come from `C(kn, n) / ((k-1)n + 1)`, with the central
/// binomial updated incrementally from one index to the next.
pub fn catalan_series(k: K, order: usize) -> TruncatedSeries {
    let kk = k.get() as u64;
    let mut coeffs = Vec::with_capacity(order + 1);
    // b = C(kn, n)
    let mut b = ExactInt::one();
    for n in 0..=order as u64 {
        if n > 0 {
            let m = n - 1;
            let mut num = ExactInt::one();
            for j in 1..=kk {
                num *= kk * m + j;
            }
            let mut den = ExactInt::from(n);
            for j in 1..kk {
                den *= (kk - 1) * m + j;
            }
            b = b * num / den;
        }
        coeffs.push(&b / ExactInt::from((kk - 1) * n + 1));
    }
    TruncatedSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(v.iter().copied(), v.len() - 1)
    }

    fn k(v: u32) -> K {
        K::new(v).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1]) + &s(&[0, 1]), s(&[1, 2]));
        assert_eq!(&s(&[3, -2, 7]) + &TruncatedSeries::zero(2), s(&[3, -2, 7]));
        assert_eq!(&s(&[1, -1]) + &s(&[-1, 1]), s(&[0, 0]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = s(&[1, 1]).checked_add(&s(&[1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::OrderMismatch { left: 1, right: 2 }));
        assert!(s(&[1]).checked_mul(&s(&[1, 2])).is_err());
        assert!(s(&[1]).checked_sub(&s(&[1, 2])).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1, 0]) * &s(&[1, 1, 0]), s(&[1, 2, 1]));
        let x = s(&[4, -1, 9, 2]);
        assert_eq!(&x * &TruncatedSeries::one(3), x);
        let c = catalan_series(K::TWO, 4);
        assert_eq!(&c * &c, s(&[1, 2, 5, 14, 42]));
    }

    #[test]
    fn pow_examples() {
        let x = s(&[2, 5, -3]);
        assert_eq!(x.pow(0), s(&[1, 0, 0]));
        let c = catalan_series(K::TWO, 6);
        assert_eq!(c.pow(1), c);
        assert_eq!(catalan_series(k(3), 3).pow(2).coeff(3), &ExactInt::from(30));
        assert_eq!(raney(k(3), 2, 3), ExactInt::from(30));
    }

    #[test]
    fn recip_examples() {
        assert_eq!(s(&[1, 0, 0]).recip().unwrap(), s(&[1, 0, 0]));
        assert_eq!(s(&[1, 1, 0]).recip().unwrap(), s(&[1, -1, 1]));
        assert_eq!(s(&[-1, 2]).recip().unwrap(), s(&[-1, -2]));
        let a = &TruncatedSeries::one(6) + &catalan_series(K::TWO, 6).shift(1);
        let r = a.recip().unwrap();
        assert_eq!(&a * &r, TruncatedSeries::one(6));
        assert_eq!(&r * &a, TruncatedSeries::one(6));
    }

    #[test]
    fn recip_rejects_non_units() {
        assert!(matches!(s(&[2, 1]).recip(), Err(Error::NotInvertible(_))));
        assert!(matches!(s(&[0, 1]).recip(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan_series(K::TWO, 4), s(&[1, 1, 2, 5, 14]));
        assert_eq!(catalan_series(k(3), 3), s(&[1, 1, 3, 12]));
        for kv in 2..8 {
            assert_eq!(catalan_series(k(kv), 0), s(&[1]));
        }
    }

    #[test]
    fn catalan_matches_raney_closed_form() {
        for kv in 2..7 {
            let c = catalan_series(k(kv), 30);
            for n in 0..=30 {
                assert_eq!(c.coeff(n), &raney(k(kv), 1, n as u64), "k={kv} n={n}");
            }
        }
    }

    #[test]
    fn invalid_k() {
        assert!(matches!(K::new(1), Err(Error::InvalidK(1))));
        assert!(K::new(0).is_err());
    }

    #[test]
    fn raney_examples() {
        assert_eq!(raney(K::TWO, 1, 3), ExactInt::from(5));
        for kv in 2..6 {
            for r in 1..10 {
                assert_eq!(raney(k(kv), r, 0), ExactInt::one());
            }
        }
        assert_eq!(raney(K::TWO, 2, 2), ExactInt::from(5));
        assert_eq!(raney(K::TWO, 0, 0), ExactInt::one());
        assert_eq!(raney(K::TWO, 0, 3), ExactInt::zero());
    }

    #[test]
    fn binom_guarded_examples() {
        assert_eq!(binom_guarded(-1, 1), ExactInt::zero());
        assert_eq!(binom_guarded(3, -1), ExactInt::zero());
        assert_eq!(binom_guarded(5, 0), ExactInt::one());
        assert_eq!(binom_guarded(7, 3), ExactInt::from(35));
        assert_eq!(binom_guarded(2, 5), ExactInt::zero());
    }

    #[test]
    fn binom_agrees_with_pascal() {
        let mut row = vec![ExactInt::one()];
        for a in 1..40u64 {
            let mut next = vec![ExactInt::one(); a as usize + 1];
            for b in 1..a as usize {
                next[b] = &row[b - 1] + &row[b];
            }
            row = next;
            for (b, v) in row.iter().enumerate() {
                assert_eq!(&binom(a, b as u64), v);
            }
        }
    }

    #[test]
    fn shift_and_valuation() {
        let x = s(&[1, 2, 3]);
        assert_eq!(x.shift(1), s(&[0, 1, 2]));
        assert_eq!(x.shift(5), s(&[0, 0, 0]));
        assert_eq!(x.shift(2).valuation(), Some(2));
        assert_eq!(TruncatedSeries::zero(4).valuation(), None);
        assert_eq!(x.truncated(1).unwrap(), s(&[1, 2]));
        assert!(x.truncated(3).is_err());
    }
}
