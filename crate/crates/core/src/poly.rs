//! Integer-coefficient polynomials in one formal variable and their quotients.
//!
//! `RationalFunction` is the exact carrier for the hard-edge kernel entries as
//! functions of the order parameter and for the finite-size parameter in the
//! Gaussian-ensemble formulas. It is kept fully reduced after every ring
//! operation: numerator and denominator share no content and no polynomial
//! factor, and the denominator has a positive leading coefficient.

use crate::error::Result;
use crate::exact::Rational;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(vec![])
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c)])
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c0), BigInt::from(c1)])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        IntPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.0.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// gcd of all coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|x| x / &c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i as u64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = <Rational as Zero>::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Pseudo-remainder of `self` by `d` (lc(d)^(Δ+1)·self = q·d + r).
    fn pseudo_rem(&self, d: &Self) -> Self {
        debug_assert!(!d.is_zero());
        let mut r = self.clone();
        let dd = d.degree();
        let lc = d.leading();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let rl = r.leading();
            // r = lc·r − rl·x^shift·d
            let mut shifted = vec![BigInt::zero(); shift];
            shifted.extend(d.0.iter().map(|c| c * &rl));
            r = IntPoly::new(
                r.0.iter()
                    .map(|c| c * &lc)
                    .zip_longest_sub(&shifted),
            );
        }
        r
    }

    fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.primitive_part().positive_leading();
        }
        if rhs.is_zero() {
            return self.primitive_part().positive_leading();
        }
        let ca = self.content();
        let cb = rhs.content();
        let mut a = self.primitive_part();
        let mut b = rhs.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.positive_leading().scale(&ca.gcd(&cb))
    }

    /// Exact polynomial division; `None` if the division leaves a remainder.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        // rational long division, then check integrality
        let mut rem: Vec<Rational> = self
            .0
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let dd = d.degree();
        let lc = Rational::from_integer(d.leading());
        let mut q = vec![<Rational as Zero>::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            q[k] = c.clone();
            for (j, dc) in d.0.iter().enumerate() {
                let sub = c.clone() * Rational::from_integer(dc.clone());
                rem[k + j] -= sub;
            }
        }
        if rem.iter().any(|c| !Zero::is_zero(c)) {
            return None;
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(IntPoly::new(out))
    }

    fn positive_leading(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                1 if mag.is_one() => write!(f, "{}", var)?,
                1 => write!(f, "{}*{}", mag, var)?,
                _ if mag.is_one() => write!(f, "{}^{}", var, i)?,
                _ => write!(f, "{}*{}^{}", mag, var, i)?,
            }
        }
        Ok(())
    }
}

// small helper: elementwise a[i] - b[i] over iterators of unequal length
trait ZipLongestSub {
    fn zip_longest_sub(self, b: &[BigInt]) -> Vec<BigInt>;
}
impl<I: Iterator<Item = BigInt>> ZipLongestSub for I {
    fn zip_longest_sub(self, b: &[BigInt]) -> Vec<BigInt> {
        let a: Vec<BigInt> = self.collect();
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
                x - y
            })
            .collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "x")
    }
}

/// Reduced ratio of integer polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(crate::error::Error::argument(
                "rational function with zero denominator",
            ));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num: IntPoly::zero(),
                den: IntPoly::constant(1),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact_poly(&g).expect("gcd divides numerator");
        let mut den = den.div_exact_poly(&g).expect("gcd divides denominator");
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction {
            num: p,
            den: IntPoly::constant(1),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(IntPoly::constant(n))
    }

    pub fn from_rational(r: &Rational) -> Self {
        RationalFunction::reduced(
            IntPoly::new(vec![r.numer().clone()]),
            IntPoly::new(vec![r.denom().clone()]),
        )
    }

    /// The formal variable itself.
    pub fn variable() -> Self {
        Self::from_poly(IntPoly::linear(0, 1))
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduced(self.den.clone(), self.num.clone()))
        }
    }

    /// Substitute the variable; `None` if the point is a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        let d = self.den.mul(&self.den);
        Self::reduced(n, d)
    }

    pub fn to_string_with_var(&self, var: &str) -> String {
        struct W<'a>(&'a IntPoly, &'a str);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        if self.den == IntPoly::constant(1) {
            format!("{}", W(&self.num, var))
        } else {
            format!("({})/({})", W(&self.num, var), W(&self.den, var))
        }
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_int(0)
    }
    fn one() -> Self {
        RationalFunction::from_int(1)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::reduced(n, self.den.mul(&rhs.den))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg_ref(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| self.mul_ref(&r))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use num_bigint::BigInt;

    #[test]
    fn reduction_cancels_common_factors() {
        // (x²−1)/(x−1) reduces to x+1
        let num = IntPoly::new(vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
        let den = IntPoly::linear(-1, 1);
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r, RationalFunction::from_poly(IntPoly::linear(1, 1)));
    }

    #[test]
    fn content_is_cancelled() {
        let r = RationalFunction::new(IntPoly::constant(6), IntPoly::constant(-4)).unwrap();
        assert_eq!(r, RationalFunction::from_rational(&rat(-3, 2)));
        assert!(r.denominator().leading() > BigInt::zero());
    }

    #[test]
    fn field_inverse_roundtrip() {
        let x = RationalFunction::variable();
        let a = x.add_ref(&RationalFunction::from_int(2)); // x+2
        let b = x.mul_ref(&x).sub_ref(&RationalFunction::from_int(3)); // x²−3
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul_ref(&b), a);
    }

    #[test]
    fn eval_and_pole() {
        let x = RationalFunction::variable();
        let r = RationalFunction::from_int(1)
            .div_exact(&x.add_ref(&RationalFunction::from_int(1)))
            .unwrap(); // 1/(x+1)
        assert_eq!(r.eval(&rat_int(1)).unwrap(), rat(1, 2));
        assert!(r.eval(&rat_int(-1)).is_none());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx [x/(1+x²)] = (1−x²)/(1+x²)²
        let x = RationalFunction::variable();
        let den = RationalFunction::from_int(1).add_ref(&x.mul_ref(&x));
        let r = x.div_exact(&den).unwrap();
        let d = r.derivative();
        assert_eq!(d.eval(&rat_int(0)).unwrap(), rat_int(1));
        assert_eq!(d.eval(&rat_int(1)).unwrap(), rat_int(0));
        assert_eq!(d.eval(&rat_int(2)).unwrap(), rat(-3, 25));
    }
}
