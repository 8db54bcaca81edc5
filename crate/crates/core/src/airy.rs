//! Soft-edge moment ring and Hankel determinants.
//!
//! Moments of the cubic-phase measure live in Z[i][C1, C2] where C1, C2 are
//! the two independent constants of the problem (the Airy function and its
//! derivative at the origin). Everything here is exact; numbers only appear
//! when a polynomial is finally evaluated at the numeric constants.

use crate::bigreal::{work_bits, BigReal};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::ring::{exact_det, Ring};
use crate::special::airy_constants;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in the formal symbols C1, C2 with Gaussian-rational
/// coefficients; monomials are exponent pairs (p, q) ↦ C1^p C2^q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AiryPolynomial {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl AiryPolynomial {
    pub fn zero() -> Self {
        AiryPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(coeff: GaussianRational, c1_pow: u32, c2_pow: u32) -> Self {
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert((c1_pow, c2_pow), coeff);
        }
        AiryPolynomial { terms: t }
    }

    pub fn c1() -> Self {
        AiryPolynomial::term(GaussianRational::one(), 1, 0)
    }

    pub fn c2() -> Self {
        AiryPolynomial::term(GaussianRational::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Single-monomial view: Some((coeff, p, q)) when exactly one term.
    pub fn as_monomial(&self) -> Option<(&GaussianRational, u32, u32)> {
        if self.terms.len() == 1 {
            let ((p, q), c) = self.terms.iter().next().unwrap();
            Some((c, *p, *q))
        } else {
            None
        }
    }

    /// All coefficients have zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    fn insert_add(&mut self, key: (u32, u32), val: GaussianRational) {
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + val;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                if !val.is_zero() {
                    self.terms.insert(key, val);
                }
            }
        }
    }

    fn leading(&self) -> Option<(&(u32, u32), &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Evaluate at numeric (c1, c2); returns (real, imaginary) parts.
    pub fn eval(&self, c1: &BigReal, c2: &BigReal) -> (BigReal, BigReal) {
        let bits = c1.bits().max(c2.bits());
        let mut re = BigReal::zero(bits);
        let mut im = BigReal::zero(bits);
        for ((p, q), coeff) in &self.terms {
            let mono = c1.powi(*p as i64).mul(&c2.powi(*q as i64));
            re = re.add(&BigReal::from_rational(&coeff.re, bits).mul(&mono));
            im = im.add(&BigReal::from_rational(&coeff.im, bits).mul(&mono));
        }
        (re, im)
    }
}

impl Ring for AiryPolynomial {
    fn zero() -> Self {
        AiryPolynomial::zero()
    }
    fn one() -> Self {
        AiryPolynomial::term(GaussianRational::one(), 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_add(*k, v.clone());
        }
        out
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = AiryPolynomial::zero();
        for ((p1, q1), c1) in &self.terms {
            for ((p2, q2), c2) in &rhs.terms {
                out.insert_add((p1 + p2, q1 + q2), c1.clone() * c2.clone());
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        AiryPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, -v.clone()))
                .collect(),
        }
    }
    /// Multivariate long division in lex order; exact quotients only.
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (dk, dc) = {
            let (k, c) = rhs.leading().unwrap();
            (*k, c.clone())
        };
        let mut rem = self.clone();
        let mut quot = AiryPolynomial::zero();
        while !rem.is_zero() {
            let (rk, rc) = {
                let (k, c) = rem.leading().unwrap();
                (*k, c.clone())
            };
            if rk.0 < dk.0 || rk.1 < dk.1 {
                return None; // leading monomial not divisible: not exact
            }
            let qk = (rk.0 - dk.0, rk.1 - dk.1);
            let qc = rc.div_exact(&dc)?;
            let qterm = AiryPolynomial::term(qc, qk.0, qk.1);
            rem = rem.sub_ref(&qterm.mul_ref(rhs));
            quot = quot.add_ref(&qterm);
        }
        Some(quot)
    }
}

impl fmt::Display for AiryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((p, q), c) in self.terms.iter().rev() {
            let mono = match (*p, *q) {
                (0, 0) => String::new(),
                (1, 0) => "C1".into(),
                (pp, 0) => format!("C1^{pp}"),
                (0, 1) => "C2".into(),
                (0, qq) => format!("C2^{qq}"),
                (1, 1) => "C1*C2".into(),
                (1, qq) => format!("C1*C2^{qq}"),
                (pp, 1) => format!("C1^{pp}*C2"),
                (pp, qq) => format!("C1^{pp}*C2^{qq}"),
            };
            let coeff = format_coeff(c, mono.is_empty());
            let piece = if mono.is_empty() {
                coeff
            } else if coeff.is_empty() {
                mono
            } else if coeff == "-" {
                format!("-{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

fn format_coeff(c: &GaussianRational, constant_term: bool) -> String {
    use num_traits::One;
    let one = <Rational as One>::one();
    if c.is_real() {
        if c.re == one && !constant_term {
            String::new()
        } else if c.re == -one.clone() && !constant_term {
            "-".to_string()
        } else {
            format!("{}", c.re)
        }
    } else if Zero::is_zero(&c.re) {
        if c.im == one {
            "i".to_string()
        } else if c.im == -one {
            "-i".to_string()
        } else {
            format!("{}i", c.im)
        }
    } else {
        format!("({c})")
    }
}

/// Moments m_0..m_max of the cubic-phase measure, generated by the
/// integration-by-parts recurrence m_{n+1} = i·(n−1)·m_{n−2} from
/// m_0 = C1, m_1 = −i C2, m_2 = 0.
#[derive(Debug, Clone)]
pub struct AiryMomentSequence {
    pub moments: Vec<AiryPolynomial>,
}

pub fn airy_moments(n_max: usize) -> AiryMomentSequence {
    let mut m = Vec::with_capacity(n_max + 1);
    m.push(AiryPolynomial::c1());
    if n_max >= 1 {
        m.push(AiryPolynomial::term(
            -GaussianRational::i(),
            0,
            1,
        ));
    }
    if n_max >= 2 {
        m.push(AiryPolynomial::zero());
    }
    for n in 2..n_max {
        let coeff = GaussianRational::imag_int(n as i64 - 1);
        let prev: &AiryPolynomial = &m[n - 2];
        let next = AiryPolynomial::term(coeff, 0, 0).mul_ref(prev);
        m.push(next);
    }
    AiryMomentSequence { moments: m }
}

/// The same moment in closed product form:
/// m_n = (−i)^n (n−2)(n−5)(n−8)⋯ Ã_n with Ã_n = C1, C2, 0 for
/// n ≡ 0, 1, 2 (mod 3); the descending product stops at the residue.
pub fn airy_moment_closed(n: usize) -> AiryPolynomial {
    let base = match n % 3 {
        0 => AiryPolynomial::c1(),
        1 => AiryPolynomial::c2(),
        _ => return AiryPolynomial::zero(),
    };
    let mut prod = GaussianRational::one();
    let mut f = n as i64 - 2;
    while f > 0 {
        prod = prod * GaussianRational::from_int(f);
        f -= 3;
    }
    // (−i)^n
    let minus_i_pow = match n % 4 {
        0 => GaussianRational::one(),
        1 => -GaussianRational::i(),
        2 => GaussianRational::from_int(-1),
        _ => GaussianRational::i(),
    };
    AiryPolynomial::term(prod * minus_i_pow, 0, 0).mul_ref(&base)
}

/// Hankel matrix of moments: entry (i, j) = m_{i+j}, size (n+1)×(n+1).
pub fn airy_hankel_matrix(n: usize) -> Vec<Vec<AiryPolynomial>> {
    let seq = airy_moments(2 * n);
    (0..=n)
        .map(|i| (0..=n).map(|j| seq.moments[i + j].clone()).collect())
        .collect()
}

/// Exact Hankel determinant d_n = det[m_{i+j}], a polynomial in C1, C2.
pub fn airy_hankel_det(n: usize) -> AiryPolynomial {
    exact_det(&airy_hankel_matrix(n)).expect("square by construction")
}

/// d_n evaluated at the numeric Airy constants. The imaginary part must
/// vanish; a residual beyond 10^(−digits+guard) is an internal error.
pub fn airy_hankel_numeric(n: usize, digits: u32) -> Result<BigReal> {
    let bits = work_bits(digits);
    let (c1, c2) = airy_constants(digits);
    let (re, im) = airy_hankel_det(n).eval(&c1.rescale(bits), &c2.rescale(bits));
    let tol = crate::special::tolerance(digits.saturating_sub(crate::bigreal::GUARD_DIGITS));
    if im.abs().cmp_value(&tol) != std::cmp::Ordering::Less {
        return Err(Error::Inconsistency(format!(
            "nonreal Hankel value at n={n}: imaginary part {}",
            im.to_decimal_string(6)
        )));
    }
    Ok(re)
}

/// Soft-edge analogue of the bulk constant: γ_K^{edge} = d_{2K−1}
/// (the product of the first 2K orthogonal-polynomial norms).
pub fn edge_gamma(k: usize, digits: u32) -> Result<BigReal> {
    if k < 1 {
        return Err(Error::argument("edge_gamma needs K >= 1"));
    }
    airy_hankel_numeric(2 * k - 1, digits)
}
