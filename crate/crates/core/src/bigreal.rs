//! Arbitrary-precision real arithmetic on a fixed binary scale.
//!
//! A `BigReal` stores an integer mantissa `m` and a scale `bits`, representing
//! the value `m · 2^(-bits)`. All public operations in this crate run at a
//! working scale derived from the requested decimal digits plus a guard
//! budget (`work_bits`), so each elementary operation contributes at most one
//! unit in the last working place and the final result is good to the
//! requested `10^(-digits)` with room to spare.
//!
//! Only the elementary functions the crate actually needs are provided:
//! exp, ln, sqrt, sin on a bounded range, π and ln 2. Everything else
//! (Γ, Barnes G, Euler's constant, regularized products) lives in `special`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Guard digits applied on top of every requested precision.
pub const GUARD_DIGITS: u32 = 5;

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const LOG10_2: f64 = std::f64::consts::LOG10_2;

/// Working binary precision for a decimal-digit request.
pub fn work_bits(digits: u32) -> u32 {
    ((digits + GUARD_DIGITS + 10) as f64 * LOG2_10).ceil() as u32 + 32
}

#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
}

fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(!d.is_zero());
    let (q, r) = n.div_rem(d);
    if (&r * 2u8).abs() >= d.abs() {
        let negative = n.is_negative() ^ d.is_negative();
        if negative {
            q - 1u8
        } else {
            q + 1u8
        }
    } else {
        q
    }
}

fn div_round_pow2(n: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return n.clone();
    }
    let half = BigInt::one() << (k - 1);
    if n.is_negative() {
        -((-n + half) >> k)
    } else {
        (n + half) >> k
    }
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        BigReal::from_i64(1, bits)
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        BigReal {
            mant: BigInt::from(n) << bits,
            bits,
        }
    }

    pub fn from_bigint(n: &BigInt, bits: u32) -> Self {
        BigReal {
            mant: n.clone() << bits,
            bits,
        }
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        BigReal {
            mant: div_round(&(r.numer().clone() << bits), r.denom()),
            bits,
        }
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        // exact: f64 is a dyadic rational
        let (m, e, s) = integer_decode(x);
        let mut mant = BigInt::from(m) * s;
        let shift = e + bits as i64;
        if shift >= 0 {
            mant <<= shift as u32;
        } else {
            mant = div_round_pow2(&mant, (-shift) as u32);
        }
        BigReal { mant, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        BigReal {
            mant: -self.mant.clone(),
            bits: self.bits,
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        match self.bits.cmp(&other.bits) {
            Ordering::Equal => (self.mant.clone(), other.mant.clone(), self.bits),
            Ordering::Less => (
                self.mant.clone() << (other.bits - self.bits),
                other.mant.clone(),
                other.bits,
            ),
            Ordering::Greater => (
                self.mant.clone(),
                other.mant.clone() << (self.bits - other.bits),
                self.bits,
            ),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b, bits) = self.aligned(rhs);
        BigReal { mant: a + b, bits }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (a, b, bits) = self.aligned(rhs);
        BigReal { mant: a - b, bits }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let bits = self.bits.max(rhs.bits);
        let shift = self.bits + rhs.bits - bits;
        BigReal {
            mant: div_round_pow2(&(&self.mant * &rhs.mant), shift),
            bits,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "BigReal division by zero");
        let bits = self.bits.max(rhs.bits);
        let shift = bits + rhs.bits - self.bits;
        BigReal {
            mant: div_round(&(self.mant.clone() << shift), &rhs.mant),
            bits,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigReal {
            mant: &self.mant * BigInt::from(k),
            bits: self.bits,
        }
    }

    pub fn div_u64(&self, k: u64) -> Self {
        BigReal {
            mant: div_round(&self.mant, &BigInt::from(k)),
            bits: self.bits,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        BigReal {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    /// Multiply by 2^k (exact).
    pub fn ldexp(&self, k: i64) -> Self {
        if k >= 0 {
            BigReal {
                mant: self.mant.clone() << k as u32,
                bits: self.bits,
            }
        } else {
            BigReal {
                mant: div_round_pow2(&self.mant, (-k) as u32),
                bits: self.bits,
            }
        }
    }

    pub fn recip(&self) -> Self {
        BigReal::one(self.bits).div(self)
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        let (a, b, _) = self.aligned(rhs);
        a.cmp(&b)
    }

    /// |self| < 2^(-bits+k), i.e. the mantissa is below 2^k.
    pub fn below_ulps(&self, k: u32) -> bool {
        self.mant.bits() <= k as u64
    }

    pub fn floor_bigint(&self) -> BigInt {
        self.mant.clone() >> self.bits
    }

    pub fn round_bigint(&self) -> BigInt {
        if self.bits == 0 {
            return self.mant.clone();
        }
        let half = BigInt::one() << (self.bits - 1);
        (self.mant.clone() + half) >> self.bits
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let a = self.mant.abs();
        let bl = a.bits();
        let (top, shift) = if bl > 53 {
            ((&a >> (bl - 53)).to_i64().unwrap(), bl as i64 - 53)
        } else {
            (a.to_i64().unwrap(), 0)
        };
        let e = shift - self.bits as i64;
        let mut v = top as f64;
        // apply 2^e in two steps to dodge powi saturation at the boundary
        let (e1, e2) = (e / 2, e - e / 2);
        v *= 2f64.powi(e1 as i32);
        v *= 2f64.powi(e2 as i32);
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return BigReal::one(self.bits);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = BigReal::one(self.bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of negative BigReal");
        BigReal {
            mant: (self.mant.clone() << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    /// π at the given scale (Machin's formula; alternating tails).
    pub fn pi(bits: u32) -> Self {
        let a = atan_inv(5, bits + 8);
        let b = atan_inv(239, bits + 8);
        a.mul_i64(16).sub(&b.mul_i64(4)).rescale(bits)
    }

    /// ln 2 at the given scale (2·atanh(1/3)).
    pub fn ln2(bits: u32) -> Self {
        atanh_inv(3, bits + 8).mul_i64(2).rescale(bits)
    }

    pub fn rescale(&self, bits: u32) -> Self {
        if bits == self.bits {
            self.clone()
        } else if bits > self.bits {
            BigReal {
                mant: self.mant.clone() << (bits - self.bits),
                bits,
            }
        } else {
            BigReal {
                mant: div_round_pow2(&self.mant, self.bits - bits),
                bits,
            }
        }
    }

    /// e^self. Argument reduction by ln 2; |k| must fit in i64, which covers
    /// every exponent this crate produces.
    pub fn exp(&self) -> Self {
        let bits = self.bits;
        if self.is_zero() {
            return BigReal::one(bits);
        }
        let ln2 = BigReal::ln2(bits + 16);
        let x = self.rescale(bits + 16);
        let k = x.div(&ln2).round_bigint();
        let k_i64 = k.to_i64().expect("exp argument out of supported range");
        let r = x.sub(&ln2.mul_bigint(&k));
        // |r| <= ln2/2 + ulp
        let mut sum = BigReal::one(bits + 16);
        let mut term = BigReal::one(bits + 16);
        let mut n: u64 = 1;
        loop {
            term = term.mul(&r).div_u64(n);
            if term.below_ulps(4) {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        sum.ldexp(k_i64).rescale(bits)
    }

    /// Natural log; requires a strictly positive value.
    pub fn ln(&self) -> Self {
        assert!(
            self.mant.is_positive(),
            "ln of a non-positive BigReal"
        );
        let bits = self.bits;
        let wb = bits + 16;
        let s = self.mant.bits() as i64 - 1;
        // m = mant·2^(-s) normalized into [1,2), carried at scale wb
        let m = BigReal {
            mant: div_round_pow2(&(self.mant.clone() << wb), s as u32),
            bits: wb,
        };
        let one = BigReal::one(wb);
        let u = m.sub(&one).div(&m.add(&one));
        let usq = u.mul(&u);
        let mut pow = u.clone();
        let mut sum = u;
        let mut n: u64 = 3;
        loop {
            pow = pow.mul(&usq);
            let term = pow.div_u64(n);
            if term.below_ulps(4) {
                break;
            }
            sum = sum.add(&term);
            n += 2;
        }
        let lnm = sum.mul_i64(2);
        let e = s - self.bits as i64;
        lnm.add(&BigReal::ln2(wb).mul_bigint(&BigInt::from(e)))
            .rescale(bits)
    }

    /// sin for |x| ≤ 4; enough for reflection arguments in (0, π).
    pub fn sin_small(&self) -> Self {
        let bits = self.bits;
        let x = self.rescale(bits + 16);
        let xsq = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x;
        let mut n: u64 = 1;
        loop {
            term = term.mul(&xsq).div_u64((n + 1) * (n + 2)).neg();
            n += 2;
            if term.below_ulps(4) {
                break;
            }
            sum = sum.add(&term);
            if n > 600 {
                break;
            }
        }
        sum.rescale(bits)
    }

    /// Round-trip through a decimal string with `sig` significant digits.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        let a = self.mant.abs();
        let mut d10 =
            (((a.bits() as f64 - 1.0) - self.bits as f64) * LOG10_2).floor() as i64;
        let digits_str = loop {
            let e = sig as i64 - 1 - d10;
            let n = if e >= 0 {
                div_round_pow2(&(&a * BigInt::from(10u8).pow(e as u32)), self.bits)
            } else {
                div_round(
                    &a,
                    &((BigInt::one() << self.bits) * BigInt::from(10u8).pow((-e) as u32)),
                )
            };
            let s = n.to_string();
            if s.len() == sig {
                break s;
            }
            d10 += s.len() as i64 - sig as i64;
        };
        let sign = if neg { "-" } else { "" };
        // plain notation in a friendly range, scientific otherwise
        if (-6..=20).contains(&d10) {
            let d10 = d10;
            if d10 >= 0 {
                let ip = d10 as usize + 1;
                if ip >= digits_str.len() {
                    let zeros = "0".repeat(ip - digits_str.len());
                    format!("{sign}{digits_str}{zeros}")
                } else {
                    format!("{sign}{}.{}", &digits_str[..ip], &digits_str[ip..])
                }
            } else {
                let zeros = "0".repeat((-d10 - 1) as usize);
                format!("{sign}0.{zeros}{digits_str}")
            }
        } else {
            let head = &digits_str[..1];
            let tail = &digits_str[1..];
            if tail.is_empty() {
                format!("{sign}{head}e{d10}")
            } else {
                format!("{sign}{head}.{tail}e{d10}")
            }
        }
    }

    /// Parse a plain or scientific decimal literal at the given scale.
    pub fn parse_decimal(s: &str, bits: u32) -> Option<Self> {
        let s = s.trim();
        let (s, sign) = match s.strip_prefix('-') {
            Some(rest) => (rest, -1),
            None => (s.strip_prefix('+').unwrap_or(s), 1),
        };
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        let e = exp - frac_part.len() as i64;
        let mant = if e >= 0 {
            (digits * BigInt::from(10u8).pow(e as u32)) << bits
        } else {
            div_round(
                &(digits << bits),
                &BigInt::from(10u8).pow((-e) as u32),
            )
        };
        Some(BigReal {
            mant: mant * sign,
            bits,
        })
    }
}

fn integer_decode(x: f64) -> (u64, i64, i64) {
    let b = x.to_bits();
    let sign = if b >> 63 == 0 { 1 } else { -1 };
    let mut exponent = ((b >> 52) & 0x7ff) as i64;
    let mantissa = if exponent == 0 {
        (b & 0xf_ffff_ffff_ffff) << 1
    } else {
        (b & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    exponent -= 1075;
    (mantissa, exponent, sign)
}

/// atan(1/q) by the alternating power series; tail below first omitted term.
fn atan_inv(q: i64, bits: u32) -> BigReal {
    let qsq = BigInt::from(q) * BigInt::from(q);
    let mut p = BigReal::one(bits).div(&BigReal::from_i64(q, bits));
    let mut sum = p.clone();
    let mut n: u64 = 1;
    loop {
        p = BigReal {
            mant: div_round(&p.mant, &qsq),
            bits,
        };
        n += 2;
        let term = p.div_u64(n);
        if term.below_ulps(2) {
            break;
        }
        sum = if (n / 2) % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
    }
    sum
}

/// atanh(1/q), q ≥ 2.
fn atanh_inv(q: i64, bits: u32) -> BigReal {
    let qsq = BigInt::from(q) * BigInt::from(q);
    let mut p = BigReal::one(bits).div(&BigReal::from_i64(q, bits));
    let mut sum = p.clone();
    let mut n: u64 = 1;
    loop {
        p = BigReal {
            mant: div_round(&p.mant, &qsq),
            bits,
        };
        n += 2;
        let term = p.div_u64(n);
        if term.below_ulps(2) {
            break;
        }
        sum = sum.add(&term);
    }
    sum
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(24))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    const B: u32 = 200;

    fn close(a: &BigReal, b: &BigReal, ulps: u32) -> bool {
        a.sub(b).below_ulps(ulps)
    }

    #[test]
    fn pi_reference() {
        let pi = BigReal::pi(B);
        let expect = BigReal::parse_decimal(
            "3.14159265358979323846264338327950288419716939937510582097",
            B,
        )
        .unwrap();
        // reference string carries ~193 bits; allow the parse rounding slack
        assert!(close(&pi, &expect, 24));
    }

    #[test]
    fn ln2_reference() {
        let l = BigReal::ln2(B);
        let expect = BigReal::parse_decimal(
            "0.693147180559945309417232121458176568075500134360255254120",
            B,
        )
        .unwrap();
        assert!(close(&l, &expect, 24));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [rat(7, 2), rat(-13, 5), rat(1, 97), rat(400, 1)] {
            let x = BigReal::from_rational(&v, B);
            let y = x.exp().ln();
            assert!(close(&x, &y, 24), "roundtrip failed for {v}");
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let x = BigReal::from_rational(&rat(2, 1), B);
        let s = x.sqrt();
        assert!(close(&s.mul(&s), &x, 8));
    }

    #[test]
    fn sin_of_pi_over_six() {
        let pi = BigReal::pi(B);
        let s = pi.div_u64(6).sin_small();
        let expect = BigReal::from_rational(&rat(1, 2), B);
        assert!(close(&s, &expect, 8));
    }

    #[test]
    fn large_exponent_exp() {
        // e^400 stays finite and ln brings it back
        let x = BigReal::from_i64(400, B);
        let e = x.exp();
        assert!(close(&e.ln(), &x, 24));
        assert!(e.to_f64().is_infinite() || e.to_f64() > 1e170);
    }

    #[test]
    fn decimal_formatting() {
        let x = BigReal::from_rational(&rat(1, 3), B);
        assert_eq!(x.to_decimal_string(10), "0.3333333333");
        let y = BigReal::from_rational(&rat(-1, 80000000), B);
        assert_eq!(y.to_decimal_string(4), "-1.250e-8");
        let z = BigReal::from_i64(1250, B);
        assert_eq!(z.to_decimal_string(3), "1250");
        assert_eq!(BigReal::zero(B).to_decimal_string(5), "0");
    }

    #[test]
    fn parse_round_trip() {
        // formatting at 15 digits and re-parsing is stable
        let x = BigReal::parse_decimal("0.000090758324070860917", B).unwrap();
        let s = x.to_decimal_string(15);
        let y = BigReal::parse_decimal(&s, B).unwrap();
        assert_eq!(s, y.to_decimal_string(15));
    }

    #[test]
    fn floor_and_round() {
        let x = BigReal::from_rational(&rat(-7, 2), B);
        assert_eq!(x.floor_bigint(), BigInt::from(-4));
        assert_eq!(x.round_bigint(), BigInt::from(-3));
        let y = BigReal::from_rational(&rat(7, 2), B);
        assert_eq!(y.floor_bigint(), BigInt::from(3));
        assert_eq!(y.round_bigint(), BigInt::from(4));
    }

    #[test]
    fn to_f64_extremes() {
        let tiny = BigReal::from_rational(&rat(1, 1_000_000_007), 300);
        assert!((tiny.to_f64() - 1e-9).abs() < 1e-17);
        let big = BigReal::from_i64(3, 64).powi(100);
        assert!((big.to_f64().log10() - 47.712).abs() < 0.01);
    }
}
