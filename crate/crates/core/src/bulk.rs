//! Bulk (sine-kernel) and hard-edge (Bessel-kernel) Taylor-coefficient
//! matrices, their exact determinants, the universal constants γ_K, and the
//! unitary = symplectic × orthogonal factorization.

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, pow2, rat_int, Rational};
use crate::poly::{IntPoly, RationalFunction};
use crate::ring::{exact_det, Ring};
use crate::special::gamma_rational;
use crate::bigreal::{work_bits, BigReal};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Taylor coefficient of the sine kernel sin(u−v)/(u−v) at the origin:
/// a_nm = (−1)^{(n+m)/2+m} C(n+m, n) / (n+m+1)!, zero for odd n+m.
pub fn sine_entry(n: usize, m: usize) -> Rational {
    if (n + m) % 2 == 1 {
        return <Rational as Zero>::zero();
    }
    let k = (n + m) / 2;
    let sign = if (k + m) % 2 == 0 { 1 } else { -1 };
    Rational::new(
        binomial((n + m) as u64, n as u64) * BigInt::from(sign),
        factorial((n + m) as u64 + 1),
    )
}

/// The K×K sine-kernel Taylor matrix. Checkerboard (zero for odd n+m) and
/// symmetric by construction.
#[derive(Debug, Clone)]
pub struct SineTaylorMatrix {
    pub order: usize,
    entries: Vec<Vec<Rational>>,
}

impl SineTaylorMatrix {
    pub fn new(order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::argument("sine Taylor matrix needs order >= 1"));
        }
        let entries = (0..order)
            .map(|n| (0..order).map(|m| sine_entry(n, m)).collect())
            .collect();
        Ok(SineTaylorMatrix { order, entries })
    }

    pub fn entry(&self, n: usize, m: usize) -> &Rational {
        &self.entries[n][m]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn det(&self) -> Rational {
        exact_det(&self.entries).expect("square by construction")
    }

    /// Principal submatrix on the even or odd index set.
    pub fn principal_submatrix(&self, odd: bool) -> Vec<Vec<Rational>> {
        let start = usize::from(odd);
        let idx: Vec<usize> = (start..self.order).step_by(2).collect();
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }
}

/// γ_K = Π_{l=0}^{K−1} l!/(K+l)!.
pub fn gamma_k(k: usize) -> Rational {
    let mut acc = <Rational as One>::one();
    for l in 0..k as u64 {
        acc *= Rational::new(factorial(l), factorial(k as u64 + l));
    }
    acc
}

/// Exact determinant of the order-K sine matrix next to its closed form
/// 2^{K²−K}·γ_K; the two must coincide.
pub fn sine_det_check(k: usize) -> Result<(Rational, Rational)> {
    let m = SineTaylorMatrix::new(k)?;
    let closed = pow2((k * k - k) as i64) * gamma_k(k);
    Ok((m.det(), closed))
}

/// Full, odd-principal and even-principal determinants of the order-n sine
/// matrix. The checkerboard zero pattern makes the full determinant factor
/// exactly as I_U = I_Sp · I_O.
pub fn checkerboard_factorization(order: usize) -> Result<(Rational, Rational, Rational)> {
    let m = SineTaylorMatrix::new(order)?;
    let i_u = m.det();
    let i_sp = exact_det(&m.principal_submatrix(true))?;
    let i_o = exact_det(&m.principal_submatrix(false))?;
    Ok((i_u, i_sp, i_o))
}

/// (γ_U, γ_Sp, γ_O) with the normalizations that satisfy
/// 2^{K²−1} γ_U = γ_Sp γ_O.
pub fn gamma_k_ensembles(k: usize) -> (Rational, Rational, Rational) {
    let k64 = k as u64;
    let prod_fact = |from: u64, to: u64| -> BigInt {
        let mut acc = BigInt::one();
        for l in from..=to {
            acc *= factorial(l);
        }
        acc
    };
    let prod_even_fact = |to: u64| -> BigInt {
        let mut acc = BigInt::one();
        for l in 1..=to {
            acc *= factorial(2 * l);
        }
        acc
    };
    let gamma_u = if k64 == 0 {
        <Rational as One>::one()
    } else {
        let num = prod_fact(1, k64 - 1);
        Rational::new(&num * &num, prod_fact(1, 2 * k64 - 1))
    };
    let gamma_sp =
        pow2((k64 * (k64 + 1) / 2) as i64) * Rational::new(prod_fact(1, k64), prod_even_fact(k64));
    let gamma_o = pow2((k64 * (k64 + 1) / 2) as i64 - 1)
        * Rational::new(
            if k64 >= 1 { prod_fact(1, k64 - 1) } else { BigInt::one() },
            if k64 >= 1 { prod_even_fact(k64 - 1) } else { BigInt::one() },
        );
    (gamma_u, gamma_sp, gamma_o)
}

/// Hard-edge kernel entries as functions of the order parameter, or at a
/// fixed rational value of it.
#[derive(Debug, Clone)]
pub enum BesselEntries {
    Formal(Vec<Vec<RationalFunction>>),
    Numeric(Vec<Vec<Rational>>),
}

#[derive(Debug, Clone)]
pub struct BesselTaylorMatrix {
    pub order: usize,
    pub alpha: Option<Rational>,
    pub entries: BesselEntries,
}

/// Series coefficients of φ and ψ to index `len−1` over any field that can
/// represent α+l. φ_p = (−1)^p / (4^p p! Π_{l=1..p}(α+l)),
/// ψ_p = (−1)^p (α+2p) / (4^p p! Π_{l=0..p}(α+l)).
fn phi_psi_series<R: Ring>(len: usize, alpha_plus: impl Fn(i64) -> R) -> Result<(Vec<R>, Vec<R>)> {
    let mut phi = Vec::with_capacity(len);
    let mut psi = Vec::with_capacity(len);
    let mut den_phi = R::one(); // 4^p p! Π_{l=1..p}(α+l)
    let mut den_psi_core = alpha_plus(0); // Π_{l=0..p}(α+l)
    if den_psi_core.is_zero() {
        return Err(Error::domain("Bessel series pole: α is a nonpositive integer"));
    }
    for p in 0..len as i64 {
        if p > 0 {
            let ap = alpha_plus(p);
            if ap.is_zero() {
                return Err(Error::domain("Bessel series pole: α is a nonpositive integer"));
            }
            let four_p = R::one().add_ref(&R::one()).mul_ref(&R::one().add_ref(&R::one())); // 4
            let step = four_p.mul_ref(&int_elem::<R>(p)).mul_ref(&ap);
            den_phi = den_phi.mul_ref(&step);
            den_psi_core = den_psi_core.mul_ref(&ap);
        }
        let sign = if p % 2 == 0 { R::one() } else { R::one().neg_ref() };
        let phi_p = sign
            .div_exact(&den_phi)
            .expect("nonzero denominator checked above");
        // den_psi = 4^p p! Π_{l=0..p}(α+l); the (α+l) product is tracked
        // separately because it starts at l = 0, unlike den_phi's.
        let den_psi = fourp_fact::<R>(p).mul_ref(&den_psi_core);
        let num_psi = alpha_plus(2 * p);
        let sign2 = if p % 2 == 0 { num_psi } else { num_psi.neg_ref() };
        let psi_p = sign2
            .div_exact(&den_psi)
            .expect("nonzero denominator checked above");
        phi.push(phi_p);
        psi.push(psi_p);
    }
    Ok((phi, psi))
}

fn int_elem<R: Ring>(n: i64) -> R {
    let mut acc = R::zero();
    let one = R::one();
    for _ in 0..n.unsigned_abs() {
        acc = acc.add_ref(&one);
    }
    if n < 0 {
        acc.neg_ref()
    } else {
        acc
    }
}

fn fourp_fact<R: Ring>(p: i64) -> R {
    // 4^p p!
    let mut acc = R::one();
    for i in 1..=p {
        acc = acc.mul_ref(&int_elem::<R>(4 * i));
    }
    acc
}

/// Taylor coefficients a_nm of the reduced hard-edge kernel
/// [φ(x)ψ(y) − ψ(x)φ(y)] / (2(x−y)) by exact division of the antisymmetric
/// numerator by (x−y) (telescoping along anti-diagonals).
fn bessel_matrix_in<R: Ring>(k: usize, alpha_plus: impl Fn(i64) -> R) -> Result<Vec<Vec<R>>> {
    let len = 2 * k + 1;
    let (phi, psi) = phi_psi_series(len, alpha_plus)?;
    // numerator coefficients A[p][q] of φ(x)ψ(y) − ψ(x)φ(y)
    let a = |p: usize, q: usize| -> R {
        phi[p].mul_ref(&psi[q]).sub_ref(&psi[p].mul_ref(&phi[q]))
    };
    // (x−y)·B = A  ⇒  A[p][q] = B[p−1][q] − B[p][q−1]
    let mut b = vec![vec![R::zero(); len]; len];
    for s in 0..len - 1 {
        // fill B entries of total degree s from A entries of degree s+1
        for p in 0..=s + 1 {
            let q = s + 1 - p;
            if q == 0 {
                continue;
            }
            let prev = if p > 0 { b[p - 1][q].clone() } else { R::zero() };
            b[p][q - 1] = prev.sub_ref(&a(p, q));
        }
    }
    let two = R::one().add_ref(&R::one());
    let mut out = vec![vec![R::zero(); k]; k];
    for (n, row) in out.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate() {
            *cell = b[n][m]
                .div_exact(&two)
                .expect("division by two in a field");
        }
    }
    Ok(out)
}

impl BesselTaylorMatrix {
    /// Entries as rational functions of the order parameter.
    pub fn formal(order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::argument("Bessel Taylor matrix needs order >= 1"));
        }
        let var = RationalFunction::variable();
        let entries = bessel_matrix_in(order, |l| {
            var.add_ref(&RationalFunction::from_poly(IntPoly::constant(l)))
        })?;
        Ok(BesselTaylorMatrix {
            order,
            alpha: None,
            entries: BesselEntries::Formal(entries),
        })
    }

    /// Entries at a fixed rational α (not a nonpositive integer).
    pub fn with_alpha(order: usize, alpha: &Rational) -> Result<Self> {
        if order < 1 {
            return Err(Error::argument("Bessel Taylor matrix needs order >= 1"));
        }
        if alpha.denom().is_one() && !alpha.numer().is_positive() {
            return Err(Error::domain(
                "Bessel kernel pole: α must not be a nonpositive integer",
            ));
        }
        let entries = bessel_matrix_in(order, |l| alpha + rat_int(l))?;
        Ok(BesselTaylorMatrix {
            order,
            alpha: Some(alpha.clone()),
            entries: BesselEntries::Numeric(entries),
        })
    }

    pub fn det_numeric(&self) -> Result<Rational> {
        match &self.entries {
            BesselEntries::Numeric(rows) => exact_det(rows),
            BesselEntries::Formal(_) => Err(Error::argument(
                "determinant of a formal matrix: use det_formal",
            )),
        }
    }

    pub fn det_formal(&self) -> Result<RationalFunction> {
        match &self.entries {
            BesselEntries::Formal(rows) => exact_det(rows),
            BesselEntries::Numeric(_) => Err(Error::argument(
                "determinant of a numeric matrix: use det_numeric",
            )),
        }
    }
}

/// Closed-form hard-edge moment I_K = 4^{−K²−αK} Π_{l=0}^{2K−1} 1/(α+l)!.
pub fn bessel_moment_closed(k: usize, alpha: &Rational, digits: u32) -> Result<BigReal> {
    let bits = work_bits(digits);
    let mut ln_acc = BigReal::ln2(bits).mul_i64(-2).mul(
        &BigReal::from_rational(alpha, bits)
            .mul_i64(k as i64)
            .add(&BigReal::from_i64((k * k) as i64, bits)),
    );
    let mut sign_neg = false;
    for l in 0..2 * k as i64 {
        let g = gamma_rational(&(alpha + rat_int(l + 1)), digits)?;
        if g.is_negative() {
            sign_neg = !sign_neg;
        }
        ln_acc = ln_acc.sub(&g.abs().ln());
    }
    let v = ln_acc.exp();
    Ok(if sign_neg { v.neg() } else { v })
}

/// Both sides of the prefactor bridge c(α)^K·det(a_nm) = I_K with
/// c(α) = 2^{−2α}/(Γ(α)Γ(α+1)); callers assert agreement.
pub fn bessel_consistency(k: usize, alpha: &Rational, digits: u32) -> Result<(BigReal, BigReal)> {
    let bits = work_bits(digits);
    let det = BesselTaylorMatrix::with_alpha(k, alpha)?.det_numeric()?;
    let g0 = gamma_rational(alpha, digits)?;
    let g1 = gamma_rational(&(alpha + rat_int(1)), digits)?;
    let ln_two = BigReal::ln2(bits);
    let c = ln_two
        .mul_i64(-2)
        .mul(&BigReal::from_rational(alpha, bits))
        .exp()
        .div(&g0.mul(&g1));
    let lhs = c.powi(k as i64).mul(&BigReal::from_rational(&det, bits));
    let rhs = bessel_moment_closed(k, alpha, digits)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::special::tolerance;
    use std::cmp::Ordering;

    #[test]
    fn sine_matrix_small_orders() {
        let m1 = SineTaylorMatrix::new(1).unwrap();
        assert_eq!(*m1.entry(0, 0), rat_int(1));
        let m2 = SineTaylorMatrix::new(2).unwrap();
        assert_eq!(*m2.entry(0, 0), rat_int(1));
        assert_eq!(*m2.entry(0, 1), rat_int(0));
        assert_eq!(*m2.entry(1, 1), rat(1, 3));
        let m4 = SineTaylorMatrix::new(4).unwrap();
        assert_eq!(*m4.entry(1, 3), rat(-1, 30));
        assert_eq!(*m4.entry(0, 2), rat(-1, 6));
        assert_eq!(*m4.entry(3, 3), rat(20, 5040));
        assert!(SineTaylorMatrix::new(0).is_err());
    }

    #[test]
    fn checkerboard_and_symmetry_pattern() {
        let m = SineTaylorMatrix::new(16).unwrap();
        for n in 0..16 {
            for mm in 0..16 {
                if (n + mm) % 2 == 1 {
                    assert!(Zero::is_zero(m.entry(n, mm)));
                }
                assert_eq!(m.entry(n, mm), m.entry(mm, n));
            }
        }
    }

    #[test]
    fn gamma_k_values() {
        assert_eq!(gamma_k(1), rat_int(1));
        assert_eq!(gamma_k(2), rat(1, 12));
        assert_eq!(gamma_k(3), rat(1, 8640));
    }

    #[test]
    fn sine_determinant_closed_form() {
        for k in 1..=8 {
            let (det, closed) = sine_det_check(k).unwrap();
            assert_eq!(det, closed, "mismatch at K={k}");
        }
        // spot values
        assert_eq!(sine_det_check(2).unwrap().0, rat(1, 3));
        assert_eq!(sine_det_check(3).unwrap().0, rat(1, 135));
    }

    #[test]
    fn factorization_small_orders() {
        let (iu, isp, io) = checkerboard_factorization(3).unwrap();
        assert_eq!(io, rat(1, 45));
        assert_eq!(isp, rat(1, 3));
        assert_eq!(iu, rat(1, 135));
        assert_eq!(iu, isp * io);
        let (iu1, isp1, io1) = checkerboard_factorization(1).unwrap();
        assert_eq!((iu1, isp1, io1), (rat_int(1), rat_int(1), rat_int(1)));
    }

    #[test]
    fn factorization_holds_to_order_ten() {
        for order in 1..=10 {
            let (iu, isp, io) = checkerboard_factorization(order).unwrap();
            assert_eq!(iu, isp * io, "factorization failed at order {order}");
        }
    }

    #[test]
    fn ensemble_gammas() {
        let (u, sp, o) = gamma_k_ensembles(1);
        assert_eq!((u.clone(), sp, o), (rat_int(1), rat_int(1), rat_int(1)));
        for k in 1..=6 {
            let (u, sp, o) = gamma_k_ensembles(k);
            assert_eq!(pow2((k * k) as i64 - 1) * &u, sp * o, "relation failed at K={k}");
            assert_eq!(u, gamma_k(k), "γ_U differs from γ_K at K={k}");
        }
    }

    #[test]
    fn bessel_formal_corner_entry() {
        // a_00 = 1/(4α(α+1))
        let m = BesselTaylorMatrix::formal(1).unwrap();
        let BesselEntries::Formal(rows) = &m.entries else {
            panic!()
        };
        let expect = RationalFunction::from_int(4)
            .mul_ref(&RationalFunction::from_poly(IntPoly::linear(0, 1)))
            .mul_ref(&RationalFunction::from_poly(IntPoly::linear(1, 1)))
            .recip()
            .unwrap();
        assert_eq!(rows[0][0], expect);
        assert_eq!(rows[0][0].eval(&rat(1, 2)).unwrap(), rat(1, 3));
    }

    #[test]
    fn bessel_phi_psi_normalization() {
        // φ(0) = ψ(0) = 1 at any regular α
        let (phi, psi) =
            phi_psi_series::<Rational>(3, |l| rat(1, 3) + rat_int(l)).unwrap();
        assert_eq!(phi[0], rat_int(1));
        assert_eq!(psi[0], rat_int(1));
    }

    #[test]
    fn bessel_pole_rejected() {
        assert!(BesselTaylorMatrix::with_alpha(2, &rat_int(0)).is_err());
        assert!(BesselTaylorMatrix::with_alpha(2, &rat_int(-2)).is_err());
        assert!(BesselTaylorMatrix::with_alpha(2, &rat(1, 2)).is_ok());
    }

    #[test]
    fn bessel_closed_form_paper_values() {
        let digits = 30;
        let bits = work_bits(digits);
        let tol = tolerance(25);
        let pi = BigReal::pi(bits);
        let quarter = BigReal::from_rational(&rat(1, 4), bits);
        let v0 = bessel_moment_closed(1, &rat_int(0), digits).unwrap();
        assert!(v0.sub(&quarter).abs().cmp_value(&tol) == Ordering::Less);
        let v1 = bessel_moment_closed(1, &rat(1, 2), digits).unwrap();
        assert!(v1.sub(&pi.mul_i64(3).recip()).abs().cmp_value(&tol) == Ordering::Less);
        let v2 = bessel_moment_closed(1, &rat(-1, 2), digits).unwrap();
        assert!(v2.sub(&pi.recip()).abs().cmp_value(&tol) == Ordering::Less);
    }

    #[test]
    fn bridge_consistency_small_alpha_grid() {
        let digits = 30;
        let tol = tolerance(digits - crate::bigreal::GUARD_DIGITS);
        for k in 1..=3 {
            for alpha in [rat(1, 2), rat(-1, 2), rat(3, 2)] {
                let (lhs, rhs) = bessel_consistency(k, &alpha, digits).unwrap();
                assert!(
                    lhs.sub(&rhs).abs().cmp_value(&tol) == Ordering::Less,
                    "bridge failed at K={k}, α={alpha}: {} vs {}",
                    lhs.to_decimal_string(20),
                    rhs.to_decimal_string(20)
                );
            }
        }
    }

    #[test]
    fn bridge_alpha_to_zero_limit() {
        // removable singularity: c(α)·det → 1/4 as α → 0
        let digits = 30;
        let (lhs, _) = bessel_consistency(1, &rat(1, 1_000_000), digits).unwrap();
        let diff = lhs
            .sub(&BigReal::from_rational(&rat(1, 4), work_bits(digits)))
            .abs();
        assert!(
            diff.cmp_value(&BigReal::from_rational(&rat(1, 10_000), work_bits(digits)))
                == Ordering::Less
        );
    }

    #[test]
    fn bessel_matches_sine_subdeterminants() {
        // det_bessel(K, 1/2) = det(sine odd principal of order 2K)
        // det_bessel(K, −1/2) = (−1)^K det(sine even principal of order 2K)
        for k in 1..=3usize {
            let sine = SineTaylorMatrix::new(2 * k).unwrap();
            let isp = exact_det(&sine.principal_submatrix(true)).unwrap();
            let io = exact_det(&sine.principal_submatrix(false)).unwrap();
            let dsp = BesselTaylorMatrix::with_alpha(k, &rat(1, 2))
                .unwrap()
                .det_numeric()
                .unwrap();
            let dof = BesselTaylorMatrix::with_alpha(k, &rat(-1, 2))
                .unwrap()
                .det_numeric()
                .unwrap();
            assert_eq!(dsp, isp, "Sp identification failed at K={k}");
            let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            assert_eq!(dof, sign * io, "O identification failed at K={k}");
        }
    }

    #[test]
    fn formal_and_numeric_routes_agree() {
        let k = 2;
        let alpha = rat(1, 2);
        let formal = BesselTaylorMatrix::formal(k).unwrap().det_formal().unwrap();
        let numeric = BesselTaylorMatrix::with_alpha(k, &alpha)
            .unwrap()
            .det_numeric()
            .unwrap();
        assert_eq!(formal.eval(&alpha).unwrap(), numeric);
        assert_eq!(numeric, rat(1, 4725));
    }
}
