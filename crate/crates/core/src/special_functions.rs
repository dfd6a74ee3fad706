//! Polylogarithms of order 2 and 3, tabulated zeta constants, a stable
//! `log(1 - e^{-x})`, and the exponentially cut-off mode sums that witness
//! zeta-function regularisation numerically.

use std::f64::consts::PI;
use std::sync::LazyLock;

use crate::dd::Dd;
use crate::error::{domain, Error, Result};

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// ζ(2) = π²/6.
pub const ZETA_2: f64 = PI * PI / 6.0;

const SERIES_REL_CUTOFF: f64 = 1e-15;
const SERIES_MAX_TERMS: usize = 1_000_000;

/// The zeta values the energy formulas need, stored as exact closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaTable;

impl ZetaTable {
    pub const ARGUMENTS: [i32; 6] = [-5, -3, 2, 3, 4, 6];

    pub fn get(&self, k: i32) -> Option<f64> {
        let v = match k {
            -5 => -1.0 / 252.0,
            -3 => 1.0 / 120.0,
            2 => ZETA_2,
            3 => ZETA_3,
            4 => PI.powi(4) / 90.0,
            6 => PI.powi(6) / 945.0,
            _ => return None,
        };
        Some(v)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        Self::ARGUMENTS
            .iter()
            .map(move |&k| (k, self.get(k).expect("tabulated argument")))
    }
}

/// Riemann zeta at one of the tabulated arguments {−5, −3, 2, 3, 4, 6}.
pub fn zeta_value(k: i32) -> Result<f64> {
    ZetaTable.get(k).ok_or_else(|| Error::UnsupportedArgument {
        op: "zeta_value",
        detail: format!("zeta({k}) is not tabulated"),
    })
}

fn check_order(op: &'static str, s: u32) -> Result<()> {
    if s == 2 || s == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedArgument {
            op,
            detail: format!("polylog order {s} (only 2 and 3 are implemented)"),
        })
    }
}

fn check_unit_interval(op: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(op, format!("argument {x} outside [0, 1]")))
    }
}

/// `Li_s(x)` for `s ∈ {2, 3}` and `x ∈ [0, 1]`.
///
/// Direct series for `x <= 1/2`, expansion in `ln x` above that.
pub fn polylog(s: u32, x: f64) -> Result<f64> {
    check_order("polylog", s)?;
    check_unit_interval("polylog", x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(polylog_exp(s, x.ln()))
}

/// `Li_s(x)` by summing `Σ xⁿ/nˢ` directly.
pub fn polylog_series(s: u32, x: f64) -> Result<f64> {
    check_order("polylog_series", s)?;
    check_unit_interval("polylog_series", x)?;
    Ok(raw_series(s, x))
}

/// `Li_s(x)` by the expansion in `μ = ln x` around `x = 1`.
///
/// Converges for `|ln x| < 2π`; accepted on `(0, 1]`.
pub fn polylog_log_expansion(s: u32, x: f64) -> Result<f64> {
    check_order("polylog_log_expansion", s)?;
    check_unit_interval("polylog_log_expansion", x)?;
    if x == 0.0 || x.ln() <= -2.0 * PI {
        return Err(domain(
            "polylog_log_expansion",
            format!("argument {x} outside the convergence disc |ln x| < 2π"),
        ));
    }
    Ok(log_expansion(s, x.ln()))
}

/// `Li_s(e^μ)` for `μ <= 0`, with the order already validated.
///
/// Taking the logarithm as input keeps full accuracy for arguments
/// `e^{-2κL}` near 1, where `κL` is small.
pub(crate) fn polylog_exp(s: u32, mu: f64) -> f64 {
    debug_assert!(mu <= 0.0);
    if mu < -std::f64::consts::LN_2 {
        raw_series(s, mu.exp())
    } else {
        log_expansion(s, mu)
    }
}

fn raw_series(s: u32, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return if s == 2 { ZETA_2 } else { ZETA_3 };
    }
    // Neumaier-compensated sum of positive, decreasing terms.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut power = 1.0f64;
    for n in 1..=SERIES_MAX_TERMS {
        power *= x;
        let nf = n as f64;
        let term = if s == 2 {
            power / (nf * nf)
        } else {
            power / (nf * nf * nf)
        };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term < SERIES_REL_CUTOFF * sum {
            break;
        }
    }
    sum + comp
}

/// `(-1)^m · 2ζ(2m)/(2π)^{2m}`, i.e. `ζ(1−2m)/(2m−1)!`, for m = 1, 2, ...
static NEG_ODD_ZETA_OVER_FACTORIAL: LazyLock<Vec<f64>> = LazyLock::new(|| {
    const TERMS: usize = 48;
    let two_pi_sq = (2.0 * PI) * (2.0 * PI);
    let mut out = Vec::with_capacity(TERMS);
    let mut scale = 1.0;
    for m in 1..=TERMS {
        scale /= two_pi_sq;
        let zeta_even = match m {
            1 => ZETA_2,
            2 => PI.powi(4) / 90.0,
            3 => PI.powi(6) / 945.0,
            _ => {
                let e = 2 * m as i32;
                // n^{-8} falls below 1e-18 well before n = 200.
                (1..200).rev().map(|n| (n as f64).powi(-e)).sum::<f64>()
            }
        };
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        out.push(sign * 2.0 * zeta_even * scale);
    }
    out
});

fn log_expansion(s: u32, mu: f64) -> f64 {
    if mu == 0.0 {
        return if s == 2 { ZETA_2 } else { ZETA_3 };
    }
    let ln_neg_mu = (-mu).ln();
    let mu2 = mu * mu;
    // Closed-form head: ζ(s−k)μᵏ/k! for k ≤ s, the k = s−1 term carrying the
    // harmonic number and ln(−μ), and the ζ(0) = −1/2 term.
    let (head, mut power, order_shift) = if s == 2 {
        (ZETA_2 + mu * (1.0 - ln_neg_mu) - 0.25 * mu2, mu * mu2, 1)
    } else {
        (
            ZETA_3 + ZETA_2 * mu + mu2 * (0.75 - 0.5 * ln_neg_mu) - mu * mu2 / 12.0,
            mu2 * mu2,
            2,
        )
    };
    // Tail: ζ(1−2m) μ^{2m+s−1} / (2m+s−1)!.
    let mut tail = 0.0;
    for (i, &c) in NEG_ODD_ZETA_OVER_FACTORIAL.iter().enumerate() {
        let m = (i + 1) as f64;
        let denom = if order_shift == 1 {
            2.0 * m * (2.0 * m + 1.0)
        } else {
            2.0 * m * (2.0 * m + 1.0) * (2.0 * m + 2.0)
        };
        let term = c * power / denom;
        tail += term;
        if term.abs() < SERIES_REL_CUTOFF * (head + tail).abs() {
            break;
        }
        power *= mu2;
    }
    head + tail
}

/// `log(1 − e^{−x})` for `x > 0`, accurate across the whole range.
pub fn log_one_minus_exp(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(domain("log_one_minus_exp", format!("argument {x} must be > 0")));
    }
    Ok(ln_one_minus_exp_unchecked(x))
}

#[inline]
pub(crate) fn ln_one_minus_exp_unchecked(x: f64) -> f64 {
    if x <= std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// Exponentially regularised mode sum with its leading divergence removed:
/// `Σ_{n≥1} nᵖ e^{−nδ} − p!/δ^{p+1}`, for `p ∈ {3, 5}`.
///
/// Tends to ζ(−p) as δ → 0 with corrections in even powers of δ. The sum
/// and the subtraction are carried in double-double arithmetic.
pub fn cutoff_zeta_demo(p: u32, delta: f64) -> Result<f64> {
    if p != 3 && p != 5 {
        return Err(Error::UnsupportedArgument {
            op: "cutoff_zeta_demo",
            detail: format!("power {p} (only 3 and 5 are implemented)"),
        });
    }
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(domain("cutoff_zeta_demo", format!("delta {delta} outside (0, 0.5]")));
    }

    let ratio = Dd::exp_small(-delta);
    let mut weight = ratio;
    let mut sum = Dd::ZERO;
    // 10^7 terms is far past where e^{-nδ} vanishes for δ in range.
    for n in 1..10_000_000u64 {
        let term = Dd::from_f64(n as f64).powi(p) * weight;
        sum = sum + term;
        // Stop at the double-double resolution of the sum; the remaining
        // tail is then below 1e-28 of the divergence being subtracted.
        if term.hi < 1e-30 * sum.hi {
            break;
        }
        weight = weight * ratio;
    }

    let factorial = if p == 3 { 6.0 } else { 120.0 };
    let divergence = Dd::from_f64(factorial) / Dd::from_f64(delta).powi(p + 1);
    Ok((sum - divergence).to_f64())
}

/// Polynomial (Neville) extrapolation to `h → 0` of samples `f(h)` assumed to
/// expand in powers of `h^power`.
pub fn richardson_to_zero(steps: &[f64], values: &[f64], power: f64) -> Result<f64> {
    if steps.len() != values.len() || steps.is_empty() {
        return Err(domain(
            "richardson_to_zero",
            "need the same, non-zero number of steps and values",
        ));
    }
    let t: Vec<f64> = steps.iter().map(|h| h.abs().powf(power)).collect();
    for i in 0..t.len() {
        for j in 0..i {
            if t[i] == t[j] {
                return Err(domain("richardson_to_zero", "steps must be distinct"));
            }
        }
    }
    let mut table = values.to_vec();
    let n = t.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ta, tb) = (t[i], t[i + level]);
            table[i] = (tb * table[i] - ta * table[i + 1]) / (tb - ta);
        }
    }
    Ok(table[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ζ(3) by direct summation with an Euler–Maclaurin tail.
    fn zeta3_oracle() -> f64 {
        let n = 2000u32;
        let head: f64 = (1..n).rev().map(|k| 1.0 / (k as f64).powi(3)).sum();
        let nf = n as f64;
        head + 1.0 / (2.0 * nf * nf) + 1.0 / (2.0 * nf.powi(3)) + 1.0 / (4.0 * nf.powi(4))
    }

    #[test]
    fn zeta_constants() {
        assert_eq!(zeta_value(-3).unwrap(), 1.0 / 120.0);
        assert_eq!(zeta_value(-5).unwrap(), -1.0 / 252.0);
        assert!((zeta_value(4).unwrap() - 1.082_323_233_711_138_2).abs() < 1e-15);
        assert!((zeta_value(6).unwrap() - 1.017_343_061_984_449).abs() < 1e-15);
        assert!((ZETA_3 - zeta3_oracle()).abs() < 1e-15);
        assert!(matches!(
            zeta_value(5),
            Err(Error::UnsupportedArgument { .. })
        ));
        assert_eq!(ZetaTable.entries().count(), 6);
    }

    #[test]
    fn polylog_examples() {
        assert_eq!(polylog(2, 0.0).unwrap(), 0.0);
        assert!((polylog(2, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-13);
        assert!((polylog(3, 1.0).unwrap() - zeta3_oracle()).abs() < 1e-13);
        // Li2(1/2) = π²/12 − ln²2/2
        let li2_half = PI * PI / 12.0 - 0.5 * std::f64::consts::LN_2.powi(2);
        assert!((polylog(2, 0.5).unwrap() - li2_half).abs() < 1e-14);
        assert!((polylog(2, 0.5).unwrap() - 0.582_240).abs() < 1e-6);
        // Li3(1/2) = (7/8)ζ(3) − π² ln2/12 + ln³2/6
        let ln2 = std::f64::consts::LN_2;
        let li3_half = 0.875 * ZETA_3 - PI * PI * ln2 / 12.0 + ln2.powi(3) / 6.0;
        assert!((polylog(3, 0.5).unwrap() - li3_half).abs() < 1e-14);
        assert!((polylog(3, 0.5).unwrap() - 0.537_213).abs() < 1e-6);
    }

    #[test]
    fn polylog_rejects_bad_input() {
        assert!(matches!(polylog(2, -0.1), Err(Error::Domain { .. })));
        assert!(matches!(polylog(3, 1.0001), Err(Error::Domain { .. })));
        assert!(matches!(polylog(4, 0.5), Err(Error::UnsupportedArgument { .. })));
        assert!(polylog(2, f64::NAN).is_err());
        assert!(polylog_log_expansion(2, 0.0).is_err());
    }

    #[test]
    fn expansion_and_series_agree() {
        for s in [2, 3] {
            for &x in &[0.1, 0.3, 0.5, 0.6, 0.7, 0.9, 0.99] {
                let a = polylog_log_expansion(s, x).unwrap();
                let b = polylog_series(s, x).unwrap();
                assert!((a - b).abs() < 1e-12, "s={s} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn polylog_monotone_on_grid() {
        for s in [2, 3] {
            let mut prev = -1.0;
            for i in 0..=1000 {
                let v = polylog(s, i as f64 / 1000.0).unwrap();
                assert!(v > prev, "s={s} i={i}");
                prev = v;
            }
        }
    }

    #[test]
    fn log_one_minus_exp_examples() {
        let ln2 = std::f64::consts::LN_2;
        assert!((log_one_minus_exp(ln2).unwrap() + ln2).abs() < 1e-15);
        // log(1 - e^{-x}) = log x - x/2 + x²/24 + O(x⁴)
        let x: f64 = 1e-8;
        let expected = x.ln() - x / 2.0 + x * x / 24.0;
        let got = log_one_minus_exp(x).unwrap();
        assert!(((got - expected) / expected).abs() < 1e-14);
        assert!((got + 18.420_680_7).abs() < 1e-6);
        let got = log_one_minus_exp(50.0).unwrap();
        let y = (-50.0f64).exp();
        assert!(((got + y + y * y / 2.0) / y).abs() < 1e-14);
        assert!(log_one_minus_exp(0.0).is_err());
        assert!(log_one_minus_exp(-1.0).is_err());
        assert!(log_one_minus_exp(700.0).unwrap() < 0.0);
        assert!(log_one_minus_exp(1e-300).unwrap().is_finite());
    }

    #[test]
    fn log_one_minus_exp_consistency() {
        for i in 0..=300 {
            let x = 0.1 + i as f64 * (30.0 - 0.1) / 300.0;
            let r = log_one_minus_exp(x).unwrap();
            assert!((r.exp() + (-x).exp() - 1.0).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn cutoff_demo_examples() {
        // ζ(−3) + ζ(−5)δ²/2 + ζ(−7)δ⁴/24
        let d = 0.1f64;
        let expected = 1.0 / 120.0 - d * d / 504.0 + d.powi(4) / 240.0 / 24.0;
        let got = cutoff_zeta_demo(3, d).unwrap();
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
        assert!((got - 0.008_314).abs() < 1e-6);

        // ζ(−5) + ζ(−7)δ²/2
        let expected = -1.0 / 252.0 + d * d / 480.0;
        let got = cutoff_zeta_demo(5, d).unwrap();
        assert!((got - expected).abs() < 1e-7, "{got} vs {expected}");
    }

    #[test]
    fn cutoff_demo_rejects_bad_input() {
        assert!(cutoff_zeta_demo(4, 0.1).is_err());
        assert!(cutoff_zeta_demo(3, 0.0).is_err());
        assert!(cutoff_zeta_demo(3, 0.6).is_err());
        assert!(cutoff_zeta_demo(5, f64::NAN).is_err());
    }

    #[test]
    fn cutoff_demo_error_is_quadratic() {
        for (p, target) in [(3, 1.0 / 120.0), (5, -1.0 / 252.0)] {
            for &d in &[0.1, 0.08, 0.05] {
                let e1 = cutoff_zeta_demo(p, d).unwrap() - target;
                let e2 = cutoff_zeta_demo(p, d / 2.0).unwrap() - target;
                let r = e1 / e2;
                assert!((3.5..=4.5).contains(&r), "p={p} d={d} ratio={r}");
            }
        }
    }

    #[test]
    fn richardson_removes_polynomial_error() {
        // f(h) = 2 + 3h² − h⁴ is reproduced exactly from three samples.
        let hs = [0.4, 0.2, 0.1];
        let vals: Vec<f64> = hs.iter().map(|h: &f64| 2.0 + 3.0 * h * h - h.powi(4)).collect();
        let r = richardson_to_zero(&hs, &vals, 2.0).unwrap();
        assert!((r - 2.0).abs() < 1e-14);
        assert!(richardson_to_zero(&[0.1, 0.1], &[1.0, 1.0], 2.0).is_err());
        assert!(richardson_to_zero(&[], &[], 2.0).is_err());
    }
}
