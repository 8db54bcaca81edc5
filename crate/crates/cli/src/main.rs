//! Command-line surface: every computation as reproducible table/JSON output.
//!
//! Exit codes: 0 success, 2 argument/domain error, 3 precision error,
//! 4 cross-check failure.

use polymoment_cli::{records, verify};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use polymoment::airy::{airy_hankel_det, airy_hankel_numeric, edge_gamma};
use polymoment::bigreal::{work_bits, BigReal};
use polymoment::bulk::{
    bessel_consistency, bessel_moment_closed, gamma_k, sine_det_check, BesselEntries,
    BesselTaylorMatrix,
};
use polymoment::exact::{rat_int, Rational};
use polymoment::gue::{bulk_asymptotic_ratio, charpoly_moment, deriv_moment_closed, MomentSpec};
use polymoment::mc::{estimate_moment, SamplerConfig};
use polymoment::source::{b_integral_moment, critical_quartic_hankel, source_moment, SourceSpec};
use polymoment::special::{dirac_det, euler_gamma, tolerance};
use polymoment::{Error, MomentResult};
use records::OutputRecord;
use std::cmp::Ordering;

#[derive(Parser)]
#[command(
    name = "polymoment",
    version,
    about = "Moments of characteristic polynomials of random matrices: exact determinants, closed forms, and Monte Carlo cross-checks"
)]
struct Cli {
    /// Decimal digits for numeric results
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,
    /// Output format for records on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Universal bulk constant γ_K = Π l!/(K+l)!
    GammaK {
        #[arg(long)]
        k: usize,
    },
    /// Sine-kernel Taylor determinant and its closed form
    SineDet {
        #[arg(long)]
        k: usize,
    },
    /// Hard-edge moment: closed form, exact determinant, prefactor bridge.
    /// Without --alpha, prints the matrix entries as rational functions.
    Bessel {
        #[arg(long)]
        k: usize,
        /// order parameter as p/q, integer, or decimal
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Barnes/Dirac identity γ_K·Δ⁺(−K)·e^(−K²(1+γ)) = 1 for K = 1..k
    BarnesCheck {
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Soft-edge Hankel determinants d_n: exact polynomials and numerics
    Airy {
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// also emit log-plot rows of the edge constants for K = 1..6
        #[arg(long)]
        edge_log_plot: bool,
    },
    /// Exact finite-size moment ⟨(d/dλ)^D det(λ−X) ... k factors⟩
    FiniteN {
        #[arg(long)]
        m: usize,
        /// number of determinant factors
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        d: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        /// weight scale; defaults to m + k
        #[arg(long)]
        n: Option<String>,
    },
    /// Bulk universality ratio r(N) → 1 (k = number of factors, even)
    Asymptotic {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
    },
    /// External-source moment (k = number of factors)
    Source {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// source eigenvalues, comma-separated rationals
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        eigs: Vec<String>,
        /// multiplicities matching --eigs
        #[arg(long, value_delimiter = ',', required = true)]
        mult: Vec<usize>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        /// weight scale; defaults to m + k
        #[arg(long)]
        n: Option<String>,
    },
    /// Gap-closing critical Hankel determinant of quartic moments
    Critical {
        #[arg(long)]
        k: usize,
    },
    /// Monte Carlo estimate of the k-factor moment at λ
    Mc {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run the full cross-check suite; nonzero exit on any failure
    VerifyAll {
        /// sample count for the Monte Carlo checks
        #[arg(long, default_value_t = 100_000)]
        mc_samples: u64,
    },
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::argument(format!("bad rational '{s}'")))?;
        let q: num_bigint::BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::argument(format!("bad rational '{s}'")))?;
        if q == 0.into() {
            return Err(Error::argument("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if s.contains(['.', 'e', 'E']) {
        let br = BigReal::parse_decimal(s, 64)
            .ok_or_else(|| Error::argument(format!("bad number '{s}'")))?;
        return Ok(br.to_rational());
    }
    let n: num_bigint::BigInt = s
        .parse()
        .map_err(|_| Error::argument(format!("bad integer '{s}'")))?;
    Ok(Rational::from_integer(n))
}

fn numeric_record(name: &str, v: &BigReal, digits: u32) -> OutputRecord {
    OutputRecord::from_result(
        name,
        &MomentResult::Numeric {
            value: v.clone(),
            digits,
        },
    )
}

fn execute(cmd: Cmd, digits: u32) -> Result<(Vec<OutputRecord>, i32), Error> {
    let bits = work_bits(digits);
    let mut records = Vec::new();
    let mut exit = 0;
    match cmd {
        Cmd::GammaK { k } => {
            if k < 1 {
                return Err(Error::argument("need --k >= 1"));
            }
            records.push(
                OutputRecord::from_result("gamma_k", &MomentResult::Exact(gamma_k(k))).with("k", k),
            );
        }
        Cmd::SineDet { k } => {
            let (det, closed) = sine_det_check(k)?;
            let agree = det == closed;
            records.push(OutputRecord::new("sine_det", det.to_string(), "exact").with("k", k));
            records.push(
                OutputRecord::new("sine_det_closed_form", closed.to_string(), "closed-form")
                    .with("k", k),
            );
            if !agree {
                records.push(OutputRecord::new("sine_det_identity", "FAIL", "exact").with("k", k));
                exit = 4;
            }
        }
        Cmd::Bessel { k, alpha } => match alpha {
            Some(a) => {
                let alpha = parse_rational(&a)?;
                let closed = bessel_moment_closed(k, &alpha, digits)?;
                records.push(
                    numeric_record("bessel_moment_closed", &closed, digits)
                        .with("k", k)
                        .with("alpha", &alpha),
                );
                let det = BesselTaylorMatrix::with_alpha(k, &alpha)?.det_numeric()?;
                records.push(
                    OutputRecord::new("bessel_det", det.to_string(), "exact")
                        .with("k", k)
                        .with("alpha", &alpha),
                );
                let (lhs, rhs) = bessel_consistency(k, &alpha, digits)?;
                records.push(
                    numeric_record("bessel_bridge_lhs", &lhs, digits)
                        .with("k", k)
                        .with("alpha", &alpha),
                );
                let gap = lhs.sub(&rhs).abs();
                if gap.cmp_value(&tolerance(digits.saturating_sub(6))) != Ordering::Less {
                    records.push(OutputRecord::new(
                        "bessel_bridge_check",
                        format!("FAIL(gap={})", gap.to_decimal_string(4)),
                        "cross-check",
                    ));
                    exit = 4;
                }
            }
            None => {
                let m = BesselTaylorMatrix::formal(k)?;
                if let BesselEntries::Formal(rows) = &m.entries {
                    for (i, row) in rows.iter().enumerate() {
                        for (j, e) in row.iter().enumerate() {
                            records.push(
                                OutputRecord::new(
                                    "bessel_entry",
                                    e.to_string_with_var("alpha"),
                                    "exact-polynomial",
                                )
                                .with("n", i)
                                .with("m", j),
                            );
                        }
                    }
                }
            }
        },
        Cmd::BarnesCheck { k } => {
            let gamma_const = euler_gamma(digits).rescale(bits);
            let one = BigReal::one(bits);
            let bound = tolerance(20);
            for kk in 1..=k as i64 {
                let gk = BigReal::from_rational(&gamma_k(kk as usize), bits);
                let dp = dirac_det(&BigReal::from_i64(-kk, bits), digits)?;
                let dev = gk
                    .mul(&dp)
                    .mul(&one.add(&gamma_const).mul_i64(-kk * kk).exp())
                    .sub(&one)
                    .abs();
                let ok = dev.cmp_value(&bound) == Ordering::Less;
                records.push(
                    OutputRecord::new(
                        "barnes_dirac_identity_deviation",
                        dev.to_decimal_string(4),
                        format!("numeric(digits={digits},bound=1e-{digits})"),
                    )
                    .with("k", kk)
                    .with("pass", ok),
                );
                if !ok {
                    exit = 4;
                }
            }
        }
        Cmd::Airy {
            max_order,
            edge_log_plot,
        } => {
            for n in 0..=max_order {
                let poly = airy_hankel_det(n);
                records.push(
                    OutputRecord::from_result(
                        "airy_hankel_polynomial",
                        &MomentResult::ExactPolynomial(poly),
                    )
                    .with("n", n),
                );
                let v = airy_hankel_numeric(n, digits)?;
                records.push(numeric_record("airy_hankel_numeric", &v, digits).with("n", n));
            }
            if edge_log_plot {
                for k in 1..=6usize {
                    let v = edge_gamma(k, digits)?;
                    records.push(
                        numeric_record("edge_gamma", &v, digits)
                            .with("k", k)
                            .with("log10", format!("{:.8}", v.to_f64().log10())),
                    );
                }
            }
        }
        Cmd::FiniteN { m, k, d, lambda, n } => {
            let lam = parse_rational(&lambda)?;
            let scale = match n {
                Some(s) => parse_rational(&s)?,
                None => rat_int((m + k) as i64),
            };
            let mut spec = MomentSpec::plain(m, scale.clone(), vec![lam.clone(); k]);
            spec.deriv_order = d;
            let v = charpoly_moment(&spec)?;
            records.push(
                OutputRecord::new("finite_n_moment", v.to_string(), "exact")
                    .with("m", m)
                    .with("k", k)
                    .with("d", d)
                    .with("lambda", &lam)
                    .with("n", &scale),
            );
            if lam == rat_int(0) && k % 2 == 0 && k > 0 && m % 2 == 0 && d % 2 == 0 && d <= m {
                let closed = deriv_moment_closed(m, d, k / 2, &scale)?;
                records.push(
                    OutputRecord::new("finite_n_closed_form", closed.to_string(), "closed-form")
                        .with("m", m)
                        .with("k", k)
                        .with("d", d),
                );
                if closed != v {
                    records.push(OutputRecord::new("finite_n_cross_check", "FAIL", "cross-check"));
                    exit = 4;
                }
            }
        }
        Cmd::Asymptotic { k, n_list, lambda } => {
            if k % 2 != 0 || k == 0 {
                return Err(Error::argument(
                    "--k must be a positive even factor count for the bulk ratio",
                ));
            }
            let lam = parse_rational(&lambda)?;
            let rs = bulk_asymptotic_ratio(&lam, k / 2, &n_list, digits)?;
            for (n, r) in n_list.iter().zip(&rs) {
                records.push(
                    numeric_record("bulk_asymptotic_ratio", r, digits)
                        .with("k", k)
                        .with("lambda", &lam)
                        .with("n", n),
                );
            }
        }
        Cmd::Source {
            m,
            k,
            eigs,
            mult,
            lambda,
            n,
        } => {
            if eigs.len() != mult.len() {
                return Err(Error::argument("--eigs and --mult need matching lengths"));
            }
            let pairs: Result<Vec<(Rational, usize)>, Error> = eigs
                .iter()
                .zip(&mult)
                .map(|(e, &mu)| Ok((parse_rational(e)?, mu)))
                .collect();
            let source = SourceSpec::new(pairs?)?;
            let lam = parse_rational(&lambda)?;
            let scale = match n {
                Some(s) => parse_rational(&s)?,
                None => rat_int((m + k) as i64),
            };
            let spec = MomentSpec::plain(m, scale.clone(), vec![lam.clone(); k]);
            let v = source_moment(&spec, &source)?;
            records.push(
                OutputRecord::new("source_moment", v.to_string(), "exact")
                    .with("m", m)
                    .with("k", k)
                    .with("lambda", &lam)
                    .with("n", &scale),
            );
            if k <= 3 && m <= 6 {
                let (quad, bound) = b_integral_moment(&spec, &source, digits.min(20))?;
                records.push(
                    OutputRecord::new(
                        "source_b_integral",
                        format!("{quad:.12e}"),
                        format!("numeric(digits={},bound={bound:.3e})", digits.min(20)),
                    )
                    .with("m", m)
                    .with("k", k),
                );
                let exact = v.to_f64().unwrap_or(f64::NAN);
                if (quad - exact).abs() > bound.max(1e-8 * (1.0 + exact.abs())) {
                    records.push(OutputRecord::new("source_cross_check", "FAIL", "cross-check"));
                    exit = 4;
                }
            }
        }
        Cmd::Critical { k } => {
            let v = critical_quartic_hankel(k, digits)?;
            records.push(numeric_record("critical_quartic_hankel", &v, digits).with("k", k));
        }
        Cmd::Mc {
            m,
            n,
            k,
            lambda,
            samples,
            seed,
            workers,
        } => {
            let mut config = SamplerConfig::new(m, n, samples, seed);
            config.workers = workers;
            let est = estimate_moment(&config, &vec![lambda; k])?;
            records.push(
                OutputRecord::from_result("mc_moment", &MomentResult::MonteCarlo(est.clone()))
                    .with("m", m)
                .with("n", n)
                .with("k", k)
                .with("lambda", lambda)
                .with("seed", seed)
                .with("workers", workers),
            );
        }
        Cmd::VerifyAll { mc_samples } => {
            let checks = verify::run_all(digits, mc_samples);
            let mut failures = Vec::new();
            for c in &checks {
                match &c.outcome {
                    Ok(detail) => {
                        records.push(
                            OutputRecord::new(format!("check:{}", c.name), "pass", "cross-check")
                                .with("detail", detail),
                        );
                    }
                    Err(detail) => {
                        records.push(
                            OutputRecord::new(format!("check:{}", c.name), "FAIL", "cross-check")
                                .with("detail", detail),
                        );
                        failures.push(c.name);
                    }
                }
            }
            records.extend(verify::recorded_measurements(digits)?);
            if !failures.is_empty() {
                eprintln!("cross-check failures: {failures:?}");
                exit = 4;
            }
        }
    }
    Ok((records, exit))
}

fn main() {
    let cli = Cli::parse();
    match execute(cli.cmd, cli.digits) {
        Ok((records, code)) => {
            let text = match cli.format {
                Format::Json => records::to_json(&records),
                Format::Csv => records::to_csv(&records),
            };
            println!("{text}");
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Argument(_) | Error::Domain(_) => 2,
                Error::Precision { .. } => 3,
                Error::Inconsistency(_) => 4,
            };
            std::process::exit(code);
        }
    }
}
