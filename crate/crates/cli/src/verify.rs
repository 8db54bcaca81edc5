//! The full cross-check battery behind `verify-all`: every identity the
//! library can validate by two independent routes, plus the measured-only
//! normalizations, as machine-readable records.

use crate::records::OutputRecord;
use num_traits::{Signed, ToPrimitive, Zero};
use polymoment::airy::{airy_hankel_det, airy_hankel_numeric, airy_moment_closed, airy_moments};
use polymoment::bigreal::{work_bits, BigReal};
use polymoment::bulk::{
    bessel_consistency, bessel_moment_closed, checkerboard_factorization, gamma_k,
    gamma_k_ensembles, sine_det_check, BesselTaylorMatrix, SineTaylorMatrix,
};
use polymoment::exact::{pow2, rat, rat_int, Rational};
use polymoment::gue::{
    bulk_asymptotic_ratio, charpoly_moment, deriv_moment_closed, edge_moment_scaling,
    hermite_edge_shape, MomentSpec,
};
use polymoment::mc::{estimate_moment, SamplerConfig};
use polymoment::source::{
    b_integral_moment, bulk_recovery_check, critical_quartic_hankel, gap_closing_quadratic_coeff,
    gauss_hermite, saddle_density, source_moment, vandermonde_gaussian, SourceSpec,
};
use polymoment::special::{
    airy_ai_series, dirac_det, dirac_det_product, euler_gamma, gamma_rational,
    harmonic_fredholm_product, tolerance,
};
use polymoment::{exact_det, Error, Ring};
use std::cmp::Ordering;

pub struct Check {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    Check { name, outcome: f() }
}

fn lt(a: &BigReal, b: &BigReal) -> bool {
    a.cmp_value(b) == Ordering::Less
}

fn numeric_close(a: &BigReal, b: &BigReal, digits: u32) -> Result<String, String> {
    let d = a.sub(b).abs();
    if lt(&d, &tolerance(digits)) {
        Ok(format!("difference {}", d.to_decimal_string(3)))
    } else {
        Err(format!(
            "difference {} exceeds 1e-{digits}",
            d.to_decimal_string(5)
        ))
    }
}

/// Run every cross-check; `mc_samples` scales the Monte Carlo pieces.
pub fn run_all(digits: u32, mc_samples: u64) -> Vec<Check> {
    let bits = work_bits(digits);
    let mut checks = Vec::new();

    checks.push(check("sine-determinant-identity", || {
        for k in 1..=8 {
            let (det, closed) = sine_det_check(k).map_err(|e| e.to_string())?;
            if det != closed {
                return Err(format!("K={k}: {det} vs {closed}"));
            }
        }
        Ok("det = 2^(K²−K)γ_K exactly, K = 1..8".into())
    }));

    checks.push(check("sine-checkerboard-zero-pattern", || {
        let m = SineTaylorMatrix::new(16).map_err(|e| e.to_string())?;
        for n in 0..16 {
            for mm in 0..16 {
                if (n + mm) % 2 == 1 && !Zero::is_zero(m.entry(n, mm)) {
                    return Err(format!("nonzero entry at ({n},{mm})"));
                }
            }
        }
        Ok("a_nm = 0 for odd n+m up to order 16".into())
    }));

    checks.push(check("checkerboard-factorization", || {
        for order in 1..=10 {
            let (iu, isp, io) = checkerboard_factorization(order).map_err(|e| e.to_string())?;
            if iu != isp * io {
                return Err(format!("order {order}"));
            }
        }
        Ok("I_U = I_Sp·I_O exactly to order 10".into())
    }));

    checks.push(check("ensemble-gamma-relation", || {
        for k in 1..=6 {
            let (u, sp, o) = gamma_k_ensembles(k);
            if pow2((k * k) as i64 - 1) * &u != sp * o {
                return Err(format!("relation fails at K={k}"));
            }
            if u != gamma_k(k) {
                return Err(format!("γ_U ≠ γ_K at K={k}"));
            }
        }
        Ok("2^(K²−1)γ_U = γ_Sp·γ_O and γ_U = γ_K for K ≤ 6".into())
    }));

    checks.push(check("barnes-functional-equation", move || {
        let z = rat(3, 2);
        let zr = BigReal::from_rational(&z, bits);
        let lhs = polymoment::special::barnes_g(&zr, digits).map_err(|e| e.to_string())?;
        let g = gamma_rational(&z, digits).map_err(|e| e.to_string())?;
        let prev = polymoment::special::barnes_g(&zr.sub(&BigReal::one(bits)), digits)
            .map_err(|e| e.to_string())?;
        numeric_close(&lhs, &g.mul(&prev), digits.saturating_sub(6))
    }));

    checks.push(check("barnes-dirac-identity", move || {
        let bound = BigReal::parse_decimal("1e-20", bits).unwrap();
        let gamma_const = euler_gamma(digits).rescale(bits);
        let one = BigReal::one(bits);
        let mut worst = BigReal::zero(bits);
        for k in 1..=5i64 {
            let gk = BigReal::from_rational(&gamma_k(k as usize), bits);
            let dp = dirac_det(&BigReal::from_i64(-k, bits), digits).map_err(|e| e.to_string())?;
            let expo = one.add(&gamma_const).mul_i64(-k * k).exp();
            let dev = gk.mul(&dp).mul(&expo).sub(&one).abs();
            if !lt(&dev, &bound) {
                return Err(format!("K={k}: deviation {}", dev.to_decimal_string(5)));
            }
            if lt(&worst, &dev) {
                worst = dev;
            }
        }
        Ok(format!(
            "γ_K·Δ⁺(−K)e^(−K²(1+γ)) = 1 within {} for K = 1..5",
            worst.to_decimal_string(3)
        ))
    }));

    checks.push(check("dirac-product-vs-closed-form", move || {
        for z in [-1i64, -2, -3] {
            let zr = BigReal::from_i64(z, bits);
            let a = dirac_det(&zr, digits).map_err(|e| e.to_string())?;
            let b = dirac_det_product(&zr, digits).map_err(|e| e.to_string())?;
            let rel = a.sub(&b).abs().div(&a.abs());
            if !lt(&rel, &tolerance(digits)) {
                return Err(format!("z={z}: relative gap {}", rel.to_decimal_string(5)));
            }
        }
        Ok("closed form and regularized product agree at z = −1, −2, −3".into())
    }));

    checks.push(check("harmonic-oscillator-identity", move || {
        for k in 0..2i64 {
            let lam = rat(-(2 * k + 1), 2);
            let d = harmonic_fredholm_product(&lam, digits).map_err(|e| e.to_string())?;
            let lhs = euler_gamma(digits)
                .rescale(bits)
                .mul(&BigReal::from_rational(&lam, bits))
                .exp()
                .div(&d);
            let rhs = gamma_rational(&rat(2 * k + 1, 2), digits).map_err(|e| e.to_string())?;
            let rel = lhs.sub(&rhs).abs().div(&rhs.abs());
            if !lt(&rel, &tolerance(digits.saturating_sub(6))) {
                return Err(format!("K={k}"));
            }
        }
        Ok("e^(γλ)/Δ(λ) = Γ(K+1/2) at λ = −(K+1/2), product mode".into())
    }));

    checks.push(check("bessel-closed-form-values", move || {
        let tol = tolerance(25);
        let pi = BigReal::pi(bits);
        let cases = [
            (rat_int(0), BigReal::from_rational(&rat(1, 4), bits)),
            (rat(1, 2), pi.mul_i64(3).recip()),
            (rat(-1, 2), pi.recip()),
        ];
        for (alpha, expect) in cases {
            let v = bessel_moment_closed(1, &alpha, digits).map_err(|e| e.to_string())?;
            if !lt(&v.sub(&expect).abs(), &tol) {
                return Err(format!("α={alpha}"));
            }
        }
        Ok("I_1 = 1/4, 1/(3π), 1/π at α = 0, 1/2, −1/2".into())
    }));

    checks.push(check("bessel-prefactor-bridge", move || {
        for k in 1..=3 {
            for alpha in [rat(1, 2), rat(-1, 2), rat(3, 2)] {
                let (lhs, rhs) =
                    bessel_consistency(k, &alpha, digits).map_err(|e| e.to_string())?;
                if !lt(&lhs.sub(&rhs).abs(), &tolerance(digits.saturating_sub(6))) {
                    return Err(format!("K={k}, α={alpha}"));
                }
            }
        }
        Ok("c(α)^K·det(a_nm) = I_K at α ∈ {±1/2, 3/2}, K ≤ 3".into())
    }));

    checks.push(check("bessel-alpha-to-zero-limit", move || {
        let (lhs, _) = bessel_consistency(1, &rat(1, 1_000_000), digits)
            .map_err(|e| e.to_string())?;
        let diff = lhs.sub(&BigReal::from_rational(&rat(1, 4), bits)).abs();
        if lt(&diff, &BigReal::from_rational(&rat(1, 10_000), bits)) {
            Ok(format!(
                "removable singularity: c·det at α=1e-6 within {} of 1/4",
                diff.to_decimal_string(2)
            ))
        } else {
            Err(format!("limit off by {}", diff.to_decimal_string(4)))
        }
    }));

    checks.push(check("bessel-sine-subdeterminants", || {
        for k in 1..=3usize {
            let sine = SineTaylorMatrix::new(2 * k).map_err(|e| e.to_string())?;
            let isp = exact_det(&sine.principal_submatrix(true)).map_err(|e| e.to_string())?;
            let io = exact_det(&sine.principal_submatrix(false)).map_err(|e| e.to_string())?;
            let dsp = BesselTaylorMatrix::with_alpha(k, &rat(1, 2))
                .and_then(|m| m.det_numeric())
                .map_err(|e| e.to_string())?;
            let dof = BesselTaylorMatrix::with_alpha(k, &rat(-1, 2))
                .and_then(|m| m.det_numeric())
                .map_err(|e| e.to_string())?;
            let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            if dsp != isp || dof != sign * io {
                return Err(format!("identification fails at K={k}"));
            }
        }
        Ok("α = ±1/2 determinants equal the sine Sp/O sub-determinants (constant ±1)".into())
    }));

    checks.push(check("airy-recurrence-vs-closed-form", || {
        let seq = airy_moments(30);
        for n in 0..=30 {
            if seq.moments[n] != airy_moment_closed(n) {
                return Err(format!("moment mismatch at n={n}"));
            }
        }
        Ok("recurrence equals the closed product for n ≤ 30".into())
    }));

    checks.push(check("airy-hankel-reality", || {
        for n in 0..=9 {
            let d = airy_hankel_det(n);
            if !d.is_real() || d.is_zero() {
                return Err(format!("d_{n} nonreal or zero"));
            }
        }
        Ok("d_n real and nonvanishing for n ≤ 9".into())
    }));

    checks.push(check("airy-printed-table", move || {
        let cases: [(usize, &str); 6] = [
            (0, "0.355028053"),
            (1, "0.066987483"),
            (2, "0.010074161"),
            (3, "0.001580882"),
            (4, "0.000313095517"),
            (5, "0.000090758324"), // corrected: polynomial value; ...756324 is a misprint
        ];
        for (n, printed) in cases {
            let v = airy_hankel_numeric(n, digits).map_err(|e| e.to_string())?;
            let decimals = printed.len() as u32 - 2;
            let scaled = v
                .mul(&BigReal::from_bigint(
                    &num_bigint::BigInt::from(10u8).pow(decimals),
                    bits,
                ))
                .floor_bigint();
            let expect: num_bigint::BigInt = printed[2..].parse().unwrap();
            if scaled != expect {
                return Err(format!(
                    "n={n}: {} does not truncate to {printed}",
                    v.to_decimal_string(15)
                ));
            }
        }
        Ok("table reproduced to every printed digit (n=5 from its defining polynomial)".into())
    }));

    checks.push(check("finite-n-determinant-vs-closed", || {
        let n = rat_int(7);
        for m in (2..=12).step_by(2) {
            for k in 1..=3usize {
                for d in (0..=m).step_by(2) {
                    let mut spec = MomentSpec::plain(m, n.clone(), vec![rat_int(0); 2 * k]);
                    spec.deriv_order = d;
                    let det = charpoly_moment(&spec).map_err(|e| e.to_string())?;
                    let closed = deriv_moment_closed(m, d, k, &n).map_err(|e| e.to_string())?;
                    if det != closed {
                        return Err(format!("M={m}, D={d}, K={k}"));
                    }
                }
            }
        }
        Ok("exact equality over even M ≤ 12, K ≤ 3, even D ≤ M".into())
    }));

    checks.push(check("finite-n-positivity-and-parity", || {
        for (m, k) in [(2usize, 1usize), (3, 1), (4, 2), (5, 2)] {
            let n = rat_int((m + 2 * k) as i64);
            for lam in [rat_int(0), rat(1, 2), rat_int(1)] {
                let plus = charpoly_moment(&MomentSpec::plain(
                    m,
                    n.clone(),
                    vec![lam.clone(); 2 * k],
                ))
                .map_err(|e| e.to_string())?;
                let minus = charpoly_moment(&MomentSpec::plain(
                    m,
                    n.clone(),
                    vec![-lam.clone(); 2 * k],
                ))
                .map_err(|e| e.to_string())?;
                if plus != minus {
                    return Err(format!("parity fails at M={m}, K={k}, λ={lam}"));
                }
                if !plus.is_positive() {
                    return Err(format!("positivity fails at M={m}, K={k}, λ={lam}"));
                }
            }
        }
        Ok("F_{2K}(λ) = F_{2K}(−λ) > 0 across the spot grid".into())
    }));

    checks.push(check("brute-force-center-anchor", || {
        let spec = MomentSpec::plain(2, rat_int(3), vec![rat_int(0), rat_int(0)]);
        let v = charpoly_moment(&spec).map_err(|e| e.to_string())?;
        if v == rat(1, 3) {
            Ok("F_2(0) = 1/3 at (M,N) = (2,3)".into())
        } else {
            Err(format!("got {v}"))
        }
    }));

    checks.push(check("bulk-asymptotic-trend", move || {
        let rs = bulk_asymptotic_ratio(&rat_int(0), 1, &[51, 101, 201], digits)
            .map_err(|e| e.to_string())?;
        let d: Vec<f64> = rs.iter().map(|r| (r.to_f64() - 1.0).abs()).collect();
        if d[0] > d[1] && d[1] > d[2] && d[2] < 0.02 {
            Ok(format!("deviations {:.5} > {:.5} > {:.5}", d[0], d[1], d[2]))
        } else {
            Err(format!("trend violated: {d:?}"))
        }
    }));

    checks.push(check("edge-shape-ratio", || {
        let digits = 25;
        let target = airy_ai_series(&rat_int(0), digits)
            .map_err(|e| e.to_string())?
            .div(&airy_ai_series(&rat_int(-1), digits).map_err(|e| e.to_string())?)
            .to_f64();
        let r = hermite_edge_shape(200, 0, &rat_int(0), &rat_int(-1), digits)
            .map_err(|e| e.to_string())?
            .to_f64();
        let rel = (r - target).abs() / target.abs();
        if rel < 0.10 {
            Ok(format!("rel. err {rel:.4} at N=200 vs Ai(0)/Ai(−1)"))
        } else {
            Err(format!("rel. err {rel:.4} ≥ 10%"))
        }
    }));

    checks.push(check("source-zero-limit", || {
        for m in 1..=4usize {
            for k in 1..=2usize {
                let spec = MomentSpec::plain(m, rat_int((m + k) as i64), vec![rat(1, 2); k]);
                let a = source_moment(&spec, &SourceSpec::zero(m)).map_err(|e| e.to_string())?;
                let b = charpoly_moment(&spec).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("M={m}, K={k}"));
                }
            }
        }
        Ok("vanishing source reduces exactly to the plain moment (M ≤ 4, K ≤ 2)".into())
    }));

    checks.push(check("source-sign-covariance", || {
        let n = rat_int(5);
        for (m, k) in [(1usize, 1usize), (2, 2), (3, 2)] {
            let lams: Vec<Rational> = (1..=k as i64).map(|i| rat(i, 4)).collect();
            let eigs: Vec<(Rational, usize)> = (1..=m as i64).map(|i| (rat(i, 3), 1)).collect();
            let lhs = source_moment(
                &MomentSpec::plain(m, n.clone(), lams.clone()),
                &SourceSpec::new(eigs.clone()).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let rhs = source_moment(
                &MomentSpec::plain(m, n.clone(), lams.iter().map(|l| -l.clone()).collect()),
                &SourceSpec::new(eigs.iter().map(|(a, mu)| (-a.clone(), *mu)).collect())
                    .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let sign = if (k * m) % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            if lhs != sign * rhs {
                return Err(format!("M={m}, K={k}"));
            }
        }
        Ok("F(λ;A) = (−1)^(KM) F(−λ;−A) exactly".into())
    }));

    checks.push(check("source-b-integral-agreement", || {
        for (m, k) in [(1usize, 1usize), (2, 2), (4, 2)] {
            let eigs: Vec<(Rational, usize)> = (0..m as i64).map(|i| (rat(i - 1, 2), 1)).collect();
            let src = SourceSpec::new(eigs).map_err(|e| e.to_string())?;
            let spec = MomentSpec::plain(m, rat_int((m + k) as i64), vec![rat(1, 3); k]);
            let exact = source_moment(&spec, &src)
                .map_err(|e| e.to_string())?
                .to_f64()
                .unwrap();
            let (quad, bound) = b_integral_moment(&spec, &src, 20).map_err(|e| e.to_string())?;
            if (quad - exact).abs() > bound.max(1e-8 * (1.0 + exact.abs())) {
                return Err(format!("M={m}, K={k}: {quad} vs {exact}"));
            }
        }
        Ok("quadrature matches the exact determinant within its bound".into())
    }));

    checks.push(check("saddle-density-values", move || {
        let s0 = saddle_density(&rat_int(0), digits);
        let inv_pi = BigReal::pi(bits).recip();
        if !lt(&s0.density.sub(&inv_pi).abs(), &tolerance(digits.saturating_sub(6))) {
            return Err("ρ(0) ≠ 1/π".into());
        }
        let s2 = saddle_density(&rat_int(2), digits);
        if !s2.density.is_zero() {
            return Err("ρ(2) ≠ 0".into());
        }
        let s1 = saddle_density(&rat_int(1), digits);
        let expect = BigReal::from_i64(3, bits).sqrt().div(&BigReal::pi(bits).mul_i64(2));
        if !lt(&s1.density.sub(&expect).abs(), &tolerance(digits.saturating_sub(6))) {
            return Err("ρ(1) ≠ √3/(2π)".into());
        }
        Ok("ρ(0) = 1/π, ρ(1) = √3/(2π), ρ(2) = 0".into())
    }));

    checks.push(check("vandermonde-gaussian-quadrature", move || {
        let c = 2.0f64;
        let (xs, ws) = gauss_hermite(40);
        let scale = (2.0 / c).sqrt();
        let mut acc = 0.0;
        for (i, &x1) in xs.iter().enumerate() {
            for (j, &x2) in xs.iter().enumerate() {
                let (b1, b2) = (x1 * scale, x2 * scale);
                acc += ws[i] * ws[j] * (b1 - b2) * (b1 - b2);
            }
        }
        acc *= scale * scale / 2.0;
        let closed = vandermonde_gaussian(2, &BigReal::from_f64(c, bits), digits)
            .map_err(|e| e.to_string())?
            .to_f64();
        if (acc - closed).abs() < 1e-10 * closed.abs() {
            Ok("closed form matches direct quadrature at K=2".into())
        } else {
            Err(format!("{acc} vs {closed}"))
        }
    }));

    checks.push(check("bulk-recovery-two-saddle", || {
        let mut detail = String::new();
        for (lam, k, tol) in [(rat_int(0), 1usize, 0.01), (rat_int(1), 1, 0.02), (rat_int(1), 2, 0.05)] {
            let r = bulk_recovery_check(&lam, k, 201, 20).map_err(|e| e.to_string())?;
            if (r - 1.0).abs() > tol {
                return Err(format!("λ={lam}, K={k}: ratio {r}"));
            }
            detail.push_str(&format!("(λ={lam},K={k}): {r:.5} "));
        }
        Ok(format!("exact/assembled → 1: {detail}"))
    }));

    checks.push(check("critical-quartic-hankel", move || {
        let v = critical_quartic_hankel(2, digits).map_err(|e| e.to_string())?;
        let expect = BigReal::pi(bits).mul(&BigReal::from_i64(2, bits).sqrt()).ldexp(-2);
        numeric_close(&v, &expect, 25)?;
        for k in 1..=6 {
            let v = critical_quartic_hankel(k, digits).map_err(|e| e.to_string())?;
            if v.is_negative() || v.is_zero() {
                return Err(format!("not positive at K={k}"));
            }
        }
        Ok("K=2 value is π√2/4 to 1e-25; positive for K ≤ 6".into())
    }));

    checks.push(check("gap-closing-criticality", || {
        if gap_closing_quadratic_coeff(&rat_int(1)).map_err(|e| e.to_string())? != rat_int(0) {
            return Err("coefficient does not vanish at a=1".into());
        }
        if gap_closing_quadratic_coeff(&rat_int(2)).map_err(|e| e.to_string())? == rat_int(0) {
            return Err("coefficient vanishes away from a=1".into());
        }
        Ok("b² coefficient vanishes exactly at a = 1 and only there".into())
    }));

    checks.push(check("mc-center-moment", move || {
        let mut config = SamplerConfig::new(2, 3.0, mc_samples, 20260810);
        config.workers = 4;
        let est = estimate_moment(&config, &[0.0, 0.0]).map_err(|e| e.to_string())?;
        let exact = 1.0 / 3.0;
        if (est.mean - exact).abs() <= 3.0 * est.stderr {
            Ok(format!("{:.6} ± {:.6} covers 1/3 at 3σ", est.mean, est.stderr))
        } else {
            Err(format!("{:.6} ± {:.6} misses 1/3", est.mean, est.stderr))
        }
    }));

    checks.push(check("mc-seed-coverage", move || {
        let exact = 1.0 / 3.0;
        let per_seed = (mc_samples / 5).max(2_000);
        let mut covered = 0;
        let seeds = 50u64;
        for seed in 0..seeds {
            let mut c = SamplerConfig::new(2, 3.0, per_seed, 7_000 + seed);
            c.workers = 4;
            let e = estimate_moment(&c, &[0.0, 0.0]).map_err(|e| e.to_string())?;
            if (e.mean - exact).abs() <= 2.0 * e.stderr {
                covered += 1;
            }
        }
        if covered * 10 >= seeds * 9 {
            Ok(format!("{covered}/{seeds} seeds cover the exact value at 2σ"))
        } else {
            Err(format!("coverage {covered}/{seeds} below 90%"))
        }
    }));

    checks.push(check("mc-worker-determinism", || {
        let mut c1 = SamplerConfig::new(3, 2.0, 4_000, 123);
        c1.workers = 1;
        let mut c3 = c1.clone();
        c3.workers = 3;
        let e1 = estimate_moment(&c1, &[0.5, 0.25]).map_err(|e| e.to_string())?;
        let e3 = estimate_moment(&c3, &[0.5, 0.25]).map_err(|e| e.to_string())?;
        if e1.mean.to_bits() == e3.mean.to_bits() && e1.stderr.to_bits() == e3.stderr.to_bits() {
            Ok("bit-identical estimates across worker counts".into())
        } else {
            Err("worker count changed the estimate".into())
        }
    }));

    checks.push(check("mc-vs-source-moment", move || {
        // external-source case cross-checked against the exact value
        let spec = MomentSpec::plain(2, rat_int(4), vec![rat_int(0), rat_int(0)]);
        let src = SourceSpec::new(vec![(rat_int(1), 1), (rat_int(-1), 1)]).map_err(|e| e.to_string())?;
        let exact = source_moment(&spec, &src)
            .map_err(|e| e.to_string())?
            .to_f64()
            .unwrap();
        let mut config = SamplerConfig::new(2, 4.0, mc_samples, 31415);
        config.workers = 4;
        config.source = Some(src);
        let est = estimate_moment(&config, &[0.0, 0.0]).map_err(|e| e.to_string())?;
        if (est.mean - exact).abs() <= 3.0 * est.stderr {
            Ok(format!(
                "{:.6} ± {:.6} covers exact {exact:.6} at 3σ",
                est.mean, est.stderr
            ))
        } else {
            Err(format!(
                "{:.6} ± {:.6} misses exact {exact:.6}",
                est.mean, est.stderr
            ))
        }
    }));

    checks
}

/// Measured-only quantities: recorded next to their reference combinations,
/// never asserted (the absolute normalizations are open).
pub fn recorded_measurements(digits: u32) -> Result<Vec<OutputRecord>, Error> {
    let mut out = Vec::new();
    for k in 1..=2usize {
        let ns = [50u64, 100, 200];
        let s = edge_moment_scaling(k, &ns, digits.min(20))?;
        for (n, v) in ns.iter().zip(&s) {
            out.push(
                OutputRecord::new(
                    "edge-moment-envelope-peeled",
                    v.to_decimal_string(10),
                    "recorded",
                )
                .with("k", k)
                .with("n", n),
            );
        }
        // reference combination d_{2K-1}/prod l! from the soft-edge ring
        let d = airy_hankel_numeric(2 * k - 1, digits)?;
        let mut fact = 1.0f64;
        for l in 1..2 * k as u32 {
            fact *= polymoment::exact::factorial(l as u64).to_f64().unwrap();
        }
        let ratio = s.last().unwrap().to_f64() / (d.to_f64() / fact);
        out.push(
            OutputRecord::new(
                "edge-moment-constant-vs-hankel",
                format!("{ratio:.6e}"),
                "recorded",
            )
            .with("k", k)
            .with("note", "limit(s)/(d_(2K-1)/prod l!), absolute normalization open"),
        );
    }
    Ok(out)
}
