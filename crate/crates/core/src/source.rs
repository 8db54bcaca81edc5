//! Moments of characteristic polynomials under the Gaussian measure with an
//! external matrix source, the b-integral representation, the two-saddle
//! bulk recovery, and the gap-closing critical determinant.

use crate::bigreal::{work_bits, BigReal};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rat_int, Rational};
use crate::gue::{charpoly_moment, hermite_values, MomentSpec};
use crate::poly::{IntPoly, RationalFunction};
use crate::ring::exact_det;
use crate::special::gamma_rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// External-source spectrum: eigenvalues with multiplicities in canonical
/// (sorted, merged) order; multiplicities sum to the matrix size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpec {
    eigenvalues: Vec<(Rational, usize)>,
}

impl SourceSpec {
    pub fn new(pairs: Vec<(Rational, usize)>) -> Result<Self> {
        if pairs.iter().any(|(_, m)| *m == 0) {
            return Err(Error::argument("source multiplicities must be positive"));
        }
        let mut sorted = pairs;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rational, usize)> = Vec::with_capacity(sorted.len());
        for (a, m) in sorted {
            match merged.last_mut() {
                Some((prev, pm)) if *prev == a => *pm += m,
                _ => merged.push((a, m)),
            }
        }
        Ok(SourceSpec {
            eigenvalues: merged,
        })
    }

    /// All eigenvalues zero: the vanishing-source case.
    pub fn zero(m: usize) -> Self {
        SourceSpec {
            eigenvalues: vec![(<Rational as Zero>::zero(), m)],
        }
    }

    pub fn eigenvalues(&self) -> &[(Rational, usize)] {
        &self.eigenvalues
    }

    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|(_, m)| m).sum()
    }

    /// Eigenvalues repeated by multiplicity (diagonal of A).
    pub fn expand(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for (a, m) in &self.eigenvalues {
            out.extend(std::iter::repeat(a.clone()).take(*m));
        }
        out
    }
}

/// Confluent Vandermonde over the distinct source eigenvalues:
/// Π_{i<j} (a_j − a_i)^{m_i m_j}.
fn confluent_vandermonde(eigs: &[(Rational, usize)]) -> Rational {
    let mut acc = <Rational as One>::one();
    for i in 0..eigs.len() {
        for j in i + 1..eigs.len() {
            let d = &eigs[j].0 - &eigs[i].0;
            acc *= d.pow((eigs[i].1 * eigs[j].1) as i32);
        }
    }
    acc
}

/// Exact source moment ⟨Π_l det(λ_l − X)⟩ under
/// exp(−(N/2)Tr X² + N Tr XA), via the mixed power/Hermite determinant.
/// Repeated source eigenvalues contribute scaled derivative columns
/// (confluent Vandermonde); λ's may be all equal (derivative columns) or
/// all distinct.
pub fn source_moment(spec: &MomentSpec, source: &SourceSpec) -> Result<Rational> {
    if spec.deriv_order != 0 {
        return Err(Error::argument(
            "derivative moments are supported only without a source",
        ));
    }
    let m = spec.matrix_size;
    if source.total_multiplicity() != m {
        return Err(Error::argument(format!(
            "source multiplicities sum to {}, matrix size is {}",
            source.total_multiplicity(),
            m
        )));
    }
    let k = spec.lambdas.len();
    if k == 0 {
        return Ok(<Rational as One>::one());
    }
    let rows = m + k;
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    // source columns: ∂_a^l (a^r) / l! = C(r, l)·a^{r−l}
    for (a, mult) in source.eigenvalues() {
        for l in 0..*mult {
            let mut col = Vec::with_capacity(rows);
            for r in 0..rows {
                if l > r {
                    col.push(<Rational as Zero>::zero());
                } else {
                    let c = Rational::from_integer(binomial(r as u64, l as u64));
                    col.push(c * a.pow((r - l) as i32));
                }
            }
            cols.push(col);
        }
    }
    // λ columns
    let all_equal = spec.lambdas.windows(2).all(|w| w[0] == w[1]);
    let mut lambda_vdm = <Rational as One>::one();
    if all_equal {
        let lam = &spec.lambdas[0];
        let values = hermite_values(lam, &spec.weight_scale, rows - 1);
        for l in 0..k {
            let mut col = Vec::with_capacity(rows);
            for (r, _) in values.iter().enumerate() {
                if l > r {
                    col.push(<Rational as Zero>::zero());
                } else {
                    // H_r^{(l)}(λ)/l! = falling(r,l)/l!·H_{r−l}(λ)
                    let ff = crate::exact::falling_factorial(r as u64, l as u64);
                    col.push(
                        Rational::new(ff, factorial(l as u64)) * &values[r - l],
                    );
                }
            }
            cols.push(col);
        }
    } else {
        for i in 0..k {
            for j in i + 1..k {
                if spec.lambdas[i] == spec.lambdas[j] {
                    return Err(Error::argument(
                        "lambda values must be all equal or all distinct",
                    ));
                }
                lambda_vdm *= &spec.lambdas[j] - &spec.lambdas[i];
            }
        }
        for lam in &spec.lambdas {
            let values = hermite_values(lam, &spec.weight_scale, rows - 1);
            cols.push(values);
        }
    }
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let det = exact_det(&matrix)?;
    let denom = confluent_vandermonde(source.eigenvalues()) * lambda_vdm;
    Ok(det / denom)
}

/// Gauss–Hermite nodes and weights for ∫ f(t) e^{−t²} dt (Newton iteration
/// on the recurrence; standard initial guesses).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let pim4 = 0.751_125_544_464_943; // π^(−1/4)
    let mut z = 0.0f64;
    let m = n.div_ceil(2);
    for i in 0..m {
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / (j as f64 + 1.0)).sqrt() * p2
                    - (j as f64 / (j as f64 + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * n as f64).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

fn tensor_b_integral(
    order: usize,
    k: usize,
    scale: f64,
    avals: &[f64],
    lambdas: &[f64],
    n_weight: f64,
    symmetric_vdm: bool,
) -> Complex64 {
    let (xs, ws) = gauss_hermite(order);
    let mut idx = vec![0usize; k];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let b: Vec<f64> = idx.iter().map(|&i| xs[i] * scale).collect();
        let mut w = 1.0;
        for &i in &idx {
            w *= ws[i];
        }
        let mut f = Complex64::new(1.0, 0.0);
        for &bl in &b {
            for &a in avals {
                f *= Complex64::new(-a, bl); // (i b − a)
            }
        }
        if symmetric_vdm {
            // Δ(b)² for the confluent form
            for l in 0..k {
                for lp in l + 1..k {
                    let d = b[lp] - b[l];
                    f *= d * d;
                }
            }
        } else {
            // Δ(ib) with later-minus-earlier orientation
            for l in 0..k {
                for lp in l + 1..k {
                    f *= Complex64::new(0.0, b[lp] - b[l]);
                }
            }
        }
        let phase: f64 = lambdas
            .iter()
            .zip(&b)
            .map(|(lam, bl)| lam * bl)
            .sum::<f64>()
            * n_weight;
        f *= Complex64::from_polar(1.0, -phase);
        total += w * f;
        // advance multi-index
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] < xs.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            if pos == k {
                return total * scale.powi(k as i32);
            }
        }
    }
}

/// Numerical evaluation of the K-fold b-integral representation of the
/// source moment, by tensor Gauss–Hermite quadrature with order doubling
/// until successive values differ by less than 10^(−digits/2). Returns the
/// value and the last-step difference as the reported error bound.
pub fn b_integral_moment(
    spec: &MomentSpec,
    source: &SourceSpec,
    digits: u32,
) -> Result<(f64, f64)> {
    let k = spec.lambdas.len();
    if k == 0 {
        return Ok((1.0, 0.0));
    }
    if k > 3 {
        return Err(Error::argument(
            "b-integral limited to K <= 3 quadrature dimensions",
        ));
    }
    if source.total_multiplicity() != spec.matrix_size {
        return Err(Error::argument("source size must match matrix size"));
    }
    let n_weight = spec
        .weight_scale
        .to_f64()
        .ok_or_else(|| Error::argument("weight scale out of f64 range"))?;
    let avals: Vec<f64> = source
        .expand()
        .iter()
        .map(|a| a.to_f64().unwrap_or(f64::NAN))
        .collect();
    let lambdas: Vec<f64> = spec
        .lambdas
        .iter()
        .map(|l| l.to_f64().unwrap_or(f64::NAN))
        .collect();
    let all_equal = spec.lambdas.windows(2).all(|w| w[0] == w[1]);
    let scale = (2.0 / n_weight).sqrt();
    let sum_lam_sq: f64 = lambdas.iter().map(|l| l * l).sum();
    // closed prefactors
    let mut pref = (n_weight / (2.0 * std::f64::consts::PI)).powf(k as f64 / 2.0)
        * (n_weight / 2.0 * sum_lam_sq).exp();
    if all_equal {
        pref *= n_weight.powi((k * (k - 1) / 2) as i32);
        for l in 0..k as u64 {
            pref /= factorial(l).to_f64().unwrap();
        }
        pref /= factorial(k as u64).to_f64().unwrap();
    } else {
        let mut vdm = 1.0;
        for i in 0..k {
            for j in i + 1..k {
                vdm *= lambdas[j] - lambdas[i];
            }
        }
        pref /= vdm;
    }
    let tol = 10f64.powf(-(digits as f64) / 2.0);
    let mut order = 12usize;
    let mut prev: Option<f64> = None;
    let mut last_diff = f64::INFINITY;
    for _ in 0..6 {
        let raw = tensor_b_integral(
            order,
            k,
            scale,
            &avals,
            &lambdas,
            n_weight,
            all_equal,
        );
        let val = pref * raw.re;
        if let Some(p) = prev {
            last_diff = (val - p).abs();
            if last_diff < tol * (1.0 + val.abs()) {
                return Ok((val, last_diff.max(val.abs() * 1e-13)));
            }
        }
        prev = Some(val);
        order *= 2;
    }
    Err(Error::Precision {
        requested: digits,
        achieved: format!("quadrature stalled at difference {last_diff:.3e}"),
    })
}

/// Roots of b² + iλb − 1 = 0 as (re, im) pairs, and ρ(λ) = |b⁺−b⁻|/(2π).
/// Inside the bulk (|λ| < 2) ρ is the semicircle density √(4−λ²)/(2π).
pub struct SaddlePoints {
    pub plus: (BigReal, BigReal),
    pub minus: (BigReal, BigReal),
    pub density: BigReal,
}

pub fn saddle_density(lambda: &Rational, digits: u32) -> SaddlePoints {
    let bits = work_bits(digits);
    let lam = BigReal::from_rational(lambda, bits);
    let four = BigReal::from_i64(4, bits);
    let disc = four.sub(&lam.mul(&lam));
    let im = lam.ldexp(-1).neg();
    if !disc.is_negative() {
        let s = disc.sqrt().ldexp(-1);
        let two_pi = BigReal::pi(bits).mul_i64(2);
        SaddlePoints {
            plus: (s.clone(), im.clone()),
            minus: (s.neg(), im),
            density: s.mul_i64(2).div(&two_pi),
        }
    } else {
        let s = disc.neg().sqrt().ldexp(-1);
        let two_pi = BigReal::pi(bits).mul_i64(2);
        SaddlePoints {
            plus: (BigReal::zero(bits), im.add(&s)),
            minus: (BigReal::zero(bits), im.sub(&s)),
            density: s.mul_i64(2).div(&two_pi),
        }
    }
}

/// Closed form of the Gaussian–Vandermonde integral
/// (1/K!) ∫ Π db e^{−(c/2)Σb²} Π_{i<j}(b_i−b_j)² =
/// (2π/c)^{K/2} Π_{l<K} l! / c^{K(K−1)/2}.
pub fn vandermonde_gaussian(k: usize, c: &BigReal, digits: u32) -> Result<BigReal> {
    if c.is_zero() || c.is_negative() {
        return Err(Error::domain("vandermonde_gaussian needs c > 0"));
    }
    let bits = work_bits(digits);
    let c = c.rescale(bits);
    let two_pi = BigReal::pi(bits).mul_i64(2);
    let mut ln = two_pi.ln().sub(&c.ln()).mul_i64(k as i64).ldexp(-1);
    ln = ln.sub(&c.ln().mul_i64((k * (k - 1) / 2) as i64));
    let mut fact = BigInt::one();
    for l in 0..k as u64 {
        fact *= factorial(l);
    }
    Ok(ln.exp().mul_bigint(&fact))
}

fn ln_f64_of_rational(x: &Rational) -> f64 {
    // ln of a positive rational whose magnitude may escape f64 range
    fn ln_big(n: &BigInt) -> f64 {
        let bl = n.bits();
        if bl <= 52 {
            return n.to_f64().unwrap().ln();
        }
        let top = (n >> (bl - 52)).to_f64().unwrap();
        top.ln() + (bl - 52) as f64 * std::f64::consts::LN_2
    }
    ln_big(x.numer()) - ln_big(x.denom())
}

/// Two-saddle recovery of the bulk moment: assembles the saddle-point
/// approximation from `saddle_density`, `vandermonde_gaussian` and the
/// (2K)!/(K!K!) split factor, and returns exact/assembled, which tends to 1
/// from above as N grows (M = N − 2K).
pub fn bulk_recovery_check(lambda: &Rational, k: usize, n: u64, digits: u32) -> Result<f64> {
    if lambda.abs() >= rat_int(2) {
        return Err(Error::domain("bulk point must satisfy |λ| < 2"));
    }
    if k < 1 || (n as usize) <= 2 * k {
        return Err(Error::argument("need K >= 1 and N > 2K"));
    }
    let m = n as usize - 2 * k;
    let kk = k as i32;
    let f_exact = charpoly_moment(&MomentSpec::plain(
        m,
        rat_int(n as i64),
        vec![lambda.clone(); 2 * k],
    ))?;
    let ln_f = ln_f64_of_rational(&f_exact);
    // saddle data in f64 (the ratio test is a percent-level diagnostic)
    let lam = lambda.to_f64().unwrap();
    let nf = n as f64;
    let sp = saddle_density(lambda, digits);
    let bp = Complex64::new(sp.plus.0.to_f64(), sp.plus.1.to_f64());
    let bm = Complex64::new(sp.minus.0.to_f64(), sp.minus.1.to_f64());
    let fpp = |b: Complex64| Complex64::new(1.0, 0.0) + 1.0 / (b * b);
    let ln_vg = |c: Complex64| -> Complex64 {
        // ln[(2π/c)^{K/2} Π l! / c^{K(K−1)/2}]
        let mut acc = (Complex64::new(2.0 * std::f64::consts::PI, 0.0).ln() - c.ln())
            * (kk as f64 / 2.0);
        acc -= c.ln() * ((k * (k - 1)) as f64 / 2.0);
        for l in 1..k as u64 {
            acc += Complex64::new((factorial(l).to_f64().unwrap()).ln(), 0.0);
        }
        acc
    };
    // ln A = K ln(N/2π) + K(2K−1) ln N + NKλ²/2 − NK + ln C(2K,K) − ln (2K)!
    //        − Σ_{l<2K} ln l! + 2K² ln(b⁺−b⁻) + ln VG(Nf″(b⁺)) + ln VG(Nf″(b⁻)) + 2 ln K!
    let mut ln_a = Complex64::new(
        kk as f64 * (nf / (2.0 * std::f64::consts::PI)).ln()
            + (k * (2 * k - 1)) as f64 * nf.ln()
            + nf * kk as f64 * lam * lam / 2.0
            - nf * kk as f64,
        0.0,
    );
    ln_a += Complex64::new(
        (binomial(2 * k as u64, k as u64).to_f64().unwrap()).ln()
            - (factorial(2 * k as u64).to_f64().unwrap()).ln(),
        0.0,
    );
    for l in 0..2 * k as u64 {
        ln_a -= Complex64::new((factorial(l).to_f64().unwrap()).ln(), 0.0);
    }
    ln_a += (bp - bm).ln() * (2 * k * k) as f64;
    ln_a += ln_vg(fpp(bp) * nf) + ln_vg(fpp(bm) * nf);
    ln_a += Complex64::new(2.0 * (factorial(k as u64).to_f64().unwrap()).ln(), 0.0);
    if ln_a.im.sin().abs() > 1e-6 {
        return Err(Error::Inconsistency(format!(
            "saddle assembly picked up a residual phase {:.3e}",
            ln_a.im
        )));
    }
    Ok((ln_f - ln_a.re).exp() * ln_a.im.cos().signum())
}

/// Moments q_j = ∫ t^j e^{−t⁴} dt of the quartic critical weight:
/// Γ((j+1)/4)/2 for even j, zero for odd j.
#[derive(Debug, Clone)]
pub struct QuarticMomentTable {
    pub q: Vec<BigReal>,
}

pub fn quartic_moment_table(k: usize, digits: u32) -> Result<QuarticMomentTable> {
    let bits = work_bits(digits);
    let mut q = Vec::with_capacity(2 * k - 1);
    for j in 0..=(2 * k).saturating_sub(2) {
        if j % 2 == 1 {
            q.push(BigReal::zero(bits));
        } else {
            let g = gamma_rational(&Rational::new((j as i64 + 1).into(), 4.into()), digits)?;
            q.push(g.ldexp(-1));
        }
    }
    Ok(QuarticMomentTable { q })
}

/// Determinant by Gaussian elimination with partial pivoting in BigReal.
fn det_bigreal(mut m: Vec<Vec<BigReal>>, bits: u32) -> BigReal {
    let n = m.len();
    let mut det = BigReal::one(bits);
    for kcol in 0..n {
        let pivot = (kcol..n)
            .max_by(|&a, &b| m[a][kcol].abs().cmp_value(&m[b][kcol].abs()))
            .unwrap();
        if m[pivot][kcol].is_zero() {
            return BigReal::zero(bits);
        }
        if pivot != kcol {
            m.swap(pivot, kcol);
            det = det.neg();
        }
        let inv = m[kcol][kcol].recip();
        det = det.mul(&m[kcol][kcol]);
        for i in kcol + 1..n {
            if m[i][kcol].is_zero() {
                continue;
            }
            let f = m[i][kcol].mul(&inv);
            for j in kcol..n {
                let sub = f.mul(&m[kcol][j]);
                m[i][j] = m[i][j].sub(&sub);
            }
        }
    }
    det
}

/// K×K Hankel determinant of the quartic moments q_{i+j}: the universal
/// constant of the gap-closing critical point, up to the overall powers of
/// N and 2π that are reported, not folded in.
pub fn critical_quartic_hankel(k: usize, digits: u32) -> Result<BigReal> {
    if k < 1 {
        return Err(Error::argument("need K >= 1"));
    }
    let bits = work_bits(digits);
    let table = quartic_moment_table(k, digits)?;
    let rows: Vec<Vec<BigReal>> = (0..k)
        .map(|i| (0..k).map(|j| table.q[i + j].rescale(bits)).collect())
        .collect();
    Ok(det_bigreal(rows, bits))
}

/// Quadratic coefficient of the per-variable saddle exponent
/// −b²/2 + (1/2)·log(a²+b²)-form, evaluated symbolically: the b²
/// coefficient is (−1 + r′(0))/2 with r(b) = b/(a²+b²). It vanishes exactly
/// at the gap-closing point a = ±1.
pub fn gap_closing_quadratic_coeff(a: &Rational) -> Result<Rational> {
    if a.numer().is_zero() {
        return Err(Error::domain("source eigenvalue must be nonzero"));
    }
    let asq = a * a;
    // r(b) = b/(a²+b²) as a rational function of b
    let num = IntPoly::new(vec![BigInt::zero(), asq.denom().clone()]);
    let den = IntPoly::new(vec![asq.numer().clone(), BigInt::zero(), asq.denom().clone()]);
    let r = RationalFunction::new(num, den)?;
    let rp0 = r
        .derivative()
        .eval(&<Rational as Zero>::zero())
        .expect("denominator a² is nonzero at b = 0");
    Ok((rp0 - rat_int(1)) / rat_int(2))
}
