//! Truncated formal power series in `t` with exact rational coefficients.
//!
//! A [`Series`] of order `N` knows the coefficients of `t^0 .. t^(N-1)`.
//! Binary operations return the smaller of the two orders.

mod catalog;
mod formulas;
mod kernel;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use catalog::{gf, scalar_gf, GfName, Params};
pub use formulas::{h_formula, rect_formula};
pub use kernel::{functional_equation_checks, kernel_checks, IdentityCheck};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("divisor has no usable leading term")]
    NonUnitDivisor,
    #[error("square root needs constant term 1")]
    BadConstantTerm,
    #[error("{name} needs parameter {param}")]
    MissingParam { name: String, param: char },
    #[error("degenerate parameter: {0}")]
    DegenerateParam(String),
    #[error("{0} is not a scalar generating function")]
    NotScalar(String),
    #[error("unknown generating function {0:?}")]
    UnknownName(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigRational::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Series::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The variable `t`.
    pub fn t(order: usize) -> Self {
        Series::one(order).shift(1)
    }

    /// Series from leading coefficients; missing ones are zero, extra ones
    /// are dropped.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order, BigRational::zero());
        Series { coeffs }
    }

    /// Polynomial with integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Series::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    ///
    /// # Panics
    /// If `k` is not below the order.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series { coeffs: self.coeffs[..order.min(self.order())].to_vec() }
    }

    /// Zero-pads to a larger order. The padding is only correct when the
    /// series is known to be a polynomial of lower degree.
    fn padded(&self, order: usize) -> Self {
        Series::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); k.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        Series { coeffs }
    }

    /// Divides by `t^k`; the order drops by `k`.
    pub fn unshift(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NonUnitDivisor);
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    fn nonzero_terms(&self) -> Vec<(usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Quotient `self / divisor`.
    ///
    /// When the divisor starts at `t^v` with `v > 0`, the dividend must too;
    /// both are divided by `t^v` first and the order drops by `v`.
    pub fn div(&self, divisor: &Series) -> Result<Self, SeriesError> {
        let v = divisor.valuation().ok_or(SeriesError::NonUnitDivisor)?;
        let num = self.unshift(v)?;
        let den = divisor.unshift(v)?;
        let n = num.order().min(den.order());
        let lead_inv = den.coeffs[0].recip();
        let tail: Vec<(usize, &BigRational)> = den.nonzero_terms().into_iter().filter(|&(k, _)| k > 0).collect();
        let mut q: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = num.coeffs[i].clone();
            for &(k, b) in &tail {
                if k > i {
                    break;
                }
                if !q[i - k].is_zero() {
                    acc -= b * &q[i - k];
                }
            }
            q.push(acc * &lead_inv);
        }
        Ok(Series { coeffs: q })
    }

    /// Square root with constant term 1, by Newton iteration from 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm);
        }
        let half = frac(1, 2);
        let mut root = Series::one(1);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let guess = root.padded(prec);
            let quotient = self.truncate(prec).div(&guess)?;
            root = (&guess + &quotient).scale(&half);
        }
        Ok(root)
    }

    /// Binomial series `(1 + c t)^p` for rational `p`.
    pub fn binomial(c: &BigRational, p: &BigRational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut cur = BigRational::one();
        for k in 0..order {
            if k > 0 {
                let kk = rat(k as i64);
                cur = cur * c * (p - &kk + BigRational::one()) / kk;
            }
            coeffs.push(cur.clone());
        }
        Series { coeffs }
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Series::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// First exponent where `self` and `other` differ, within both orders.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(t^{})]", self.order())
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n];
        let right = rhs.nonzero_terms();
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &right {
                if i + j >= n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Series {
    type Output = Series;

    fn neg(self) -> Series {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn ring_basics() {
        let n = 6;
        let s = Series::from_ints(&[3, 1, 4, 1, 5, 9], n);
        assert_eq!(&Series::one(n) * &s, s);
        let t2 = &Series::t(n) * &Series::t(n);
        assert_eq!(ints(&t2), vec![0, 0, 1, 0, 0, 0]);
        assert_eq!(ints(&(&s - &s)), vec![0; 6]);
        assert_eq!(ints(&s.shift(2)), vec![0, 0, 3, 1, 4, 1]);
        assert_eq!(s.shift(2).unshift(2).unwrap().order(), 4);
        assert!(s.unshift(1).is_err());
    }

    #[test]
    fn mixed_orders_take_minimum() {
        let a = Series::from_ints(&[1, 1], 3);
        let b = Series::from_ints(&[1, 2], 5);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn division() {
        let n = 8;
        let one = Series::one(n);
        let geo = one.div(&Series::from_ints(&[1, -4], n)).unwrap();
        assert_eq!(ints(&geo), (0..8).map(|k| 4i64.pow(k)).collect::<Vec<_>>());
        let rec = one.div(&Series::from_ints(&[1, -4, 2], n)).unwrap();
        assert_eq!(&ints(&rec)[..5], &[1, 4, 14, 48, 164]);
        assert_eq!(&Series::from_ints(&[1, -4], n) * &geo, one);
        assert_eq!(one.div(&Series::zero(n)), Err(SeriesError::NonUnitDivisor));
        assert_eq!(one.div(&Series::t(n)), Err(SeriesError::NonUnitDivisor));
        // t^2 / (t - t^2) = t / (1 - t), order drops by one
        let q = Series::from_ints(&[0, 0, 1], n).div(&Series::from_ints(&[0, 1, -1], n)).unwrap();
        assert_eq!(ints(&q), vec![0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn square_roots() {
        let n = 12;
        assert_eq!(Series::one(n).sqrt().unwrap(), Series::one(n));
        let s = Series::from_ints(&[1, -4], n).sqrt().unwrap();
        assert_eq!(&ints(&s)[..5], &[1, -2, -2, -4, -10]);
        assert_eq!(s, Series::binomial(&rat(-4), &frac(1, 2), n));
        assert_eq!(Series::from_ints(&[2, 1], n).sqrt(), Err(SeriesError::BadConstantTerm));
        let d = (&Series::from_ints(&[1, -2], n) - &s).scale(&frac(1, 2));
        assert_eq!(&ints(&d)[..6], &[0, 0, 1, 2, 5, 14]);
    }

    #[test]
    fn binomial_integer_power() {
        let b = Series::binomial(&rat(2), &rat(3), 6);
        assert_eq!(ints(&b), vec![1, 6, 12, 8, 0, 0]);
        assert_eq!(Series::from_ints(&[1, 2], 6).pow(3), b);
    }
}
