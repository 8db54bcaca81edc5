//! Exact scalar types: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` (`num_rational::BigRational`) is the backbone of every exact
//! determinant in the crate: it is always stored gcd-reduced with a positive
//! denominator, which is exactly the invariant the rest of the code relies on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

/// `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Double factorial `n!!`; by convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    if n <= 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial n·(n−1)⋯(n−k+1).
pub fn falling_factorial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
    }
    acc
}

/// 2^e as a rational, e possibly negative.
pub fn pow2(e: i64) -> Rational {
    let two = BigInt::from(2);
    if e >= 0 {
        Rational::from_integer(two.pow(e as u32))
    } else {
        Rational::new(BigInt::one(), two.pow((-e) as u32))
    }
}

/// Element of Q(i): `re + i·im` with exact rational parts.
///
/// Closed under +,−,× and division by nonzero elements; equality is
/// componentwise. Coefficient ring for the soft-edge moment polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(rat_int(n), Rational::zero())
    }

    /// Pure imaginary `i·n`.
    pub fn imag_int(n: i64) -> Self {
        GaussianRational::new(Rational::zero(), rat_int(n))
    }

    pub fn zero() -> Self {
        GaussianRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::imag_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² = re² + im², a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division; `None` when `d` is zero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm_sqr();
        let prod = self.clone() * d.conj();
        Some(GaussianRational::new(prod.re / &n, prod.im / &n))
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianRational::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(3, 5), BigInt::from(0));
    }

    #[test]
    fn rational_is_reduced() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::new(rat(1, 2), rat(3, 1));
        let w = GaussianRational::new(rat(-2, 1), rat(1, 3));
        let p = z.clone() * w.clone();
        let back = p.div_exact(&w).unwrap();
        assert_eq!(back, z);
        assert!(GaussianRational::i().clone().mul(GaussianRational::i()) == GaussianRational::from_int(-1));
        assert!(w.div_exact(&GaussianRational::zero()).is_none());
    }
}
