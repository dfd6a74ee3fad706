//! Refractive-index models for the medium between the plates.
//!
//! Frequencies are in natural units (ħ = c = 1), so `n1` carries units of
//! length². The Cauchy form `n(ω) = n0 + n1·ω²` continues to the imaginary
//! axis as `n(iξ) = n0 − n1·ξ²`.

use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Samples of `n(iξ)` on the imaginary-frequency axis, interpolated with a
/// monotone cubic and held flat beyond the ends.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexTable {
    xi: Vec<f64>,
    n: Vec<f64>,
    #[serde(skip)]
    slopes: Vec<f64>,
}

impl IndexTable {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Table("table has no samples".into()));
        }
        for (i, &(xi, n)) in samples.iter().enumerate() {
            if !xi.is_finite() || xi < 0.0 {
                return Err(Error::Table(format!("row {i}: xi = {xi} must be finite and >= 0")));
            }
            if !n.is_finite() || n <= 0.0 {
                return Err(Error::Table(format!("row {i}: n = {n} must be finite and > 0")));
            }
            if i > 0 && xi <= samples[i - 1].0 {
                return Err(Error::Table(format!("row {i}: xi values must be strictly increasing")));
            }
        }
        let (xi, n): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        let slopes = monotone_slopes(&xi, &n);
        Ok(IndexTable { xi, n, slopes })
    }

    /// Parses a two-column `xi,n` CSV. A non-numeric first row is treated
    /// as a header.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut samples = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Table(e.to_string()))?;
            if record.len() != 2 {
                return Err(Error::Table(format!(
                    "row {row}: expected 2 columns, found {}",
                    record.len()
                )));
            }
            let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
            match parsed {
                (Ok(xi), Ok(n)) => samples.push((xi, n)),
                _ if row == 0 => continue,
                _ => return Err(Error::Table(format!("row {row}: non-numeric value"))),
            }
        }
        Self::new(samples)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xi.iter().copied().zip(self.n.iter().copied())
    }

    pub fn min_index(&self) -> f64 {
        self.n.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let last = self.xi.len() - 1;
        if x <= self.xi[0] {
            return self.n[0];
        }
        if x >= self.xi[last] {
            return self.n[last];
        }
        let k = self.xi.partition_point(|&v| v <= x) - 1;
        let h = self.xi[k + 1] - self.xi[k];
        let t = (x - self.xi[k]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let (y0, y1) = (self.n[k], self.n[k + 1]);
        let rise = 3.0 * t2 - 2.0 * t3;
        let v = y0 + (y1 - y0) * rise + h * (self.slopes[k] * (t3 - 2.0 * t2 + t) + self.slopes[k + 1] * (t3 - t2));
        // The monotone cubic stays inside the bracket; clip rounding excursions.
        v.clamp(y0.min(y1), y0.max(y1))
    }
}

/// Fritsch–Butland slopes: harmonic mean of neighbouring secants, zero at
/// local extrema. The resulting Hermite cubic never overshoots the data.
fn monotone_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let secant: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
    let mut m = vec![0.0; n];
    m[0] = secant[0];
    m[n - 1] = secant[n - 2];
    for i in 1..n - 1 {
        let (a, b) = (secant[i - 1], secant[i]);
        if a * b > 0.0 {
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            let w1 = 2.0 * h1 + h0;
            let w2 = h1 + 2.0 * h0;
            m[i] = (w1 + w2) / (w1 / a + w2 / b);
        }
    }
    // Endpoint slopes limited so the end intervals stay monotone.
    for (end, s) in [(0usize, secant[0]), (n - 1, secant[n - 2])] {
        if m[end] * s <= 0.0 {
            m[end] = 0.0;
        } else if m[end].abs() > 3.0 * s.abs() {
            m[end] = 3.0 * s;
        }
    }
    m
}

/// Refractive index model of the medium between the plates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DispersionModel {
    Constant { n0: f64 },
    Cauchy { n0: f64, n1: f64 },
    Tabulated(IndexTable),
}

/// Lower limit `κ₁ = n(iξ)ξ` of the Lifshitz momentum integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaLower {
    pub value: f64,
    /// The unclamped value; differs from `value` only when `clamped`.
    pub raw: f64,
    /// True when the Cauchy continuation went negative and was cut at 0.
    pub clamped: bool,
}

/// Perturbative validity limits of the first-order dispersive correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    /// `2π√n1`: separations at or below this are outside the expansion.
    pub min_separation: f64,
    /// `1/(14 n0³)`: upper bound on `ΔE/E₀` inside the valid region.
    pub ratio_bound: f64,
}

impl ValidityReport {
    pub fn is_valid_at(&self, separation: f64) -> bool {
        separation > self.min_separation
    }
}

impl DispersionModel {
    pub fn constant(n0: f64) -> Result<Self> {
        check_n0("DispersionModel::constant", n0)?;
        Ok(DispersionModel::Constant { n0 })
    }

    pub fn cauchy(n0: f64, n1: f64) -> Result<Self> {
        check_n0("DispersionModel::cauchy", n0)?;
        check_n1("DispersionModel::cauchy", n1)?;
        Ok(DispersionModel::Cauchy { n0, n1 })
    }

    pub fn tabulated(table: IndexTable) -> Self {
        DispersionModel::Tabulated(table)
    }

    pub fn name(&self) -> &'static str {
        match self {
            DispersionModel::Constant { .. } => "constant",
            DispersionModel::Cauchy { .. } => "cauchy",
            DispersionModel::Tabulated(_) => "tabulated",
        }
    }

    /// `(n0, n1)` for the closed-form models; `Constant(n0)` maps to `(n0, 0)`.
    pub fn cauchy_coefficients(&self) -> Option<(f64, f64)> {
        match *self {
            DispersionModel::Constant { n0 } => Some((n0, 0.0)),
            DispersionModel::Cauchy { n0, n1 } => Some((n0, n1)),
            DispersionModel::Tabulated(_) => None,
        }
    }

    /// Checks the invariants of a possibly hand-built variant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            DispersionModel::Constant { n0 } => check_n0("DispersionModel", n0),
            DispersionModel::Cauchy { n0, n1 } => {
                check_n0("DispersionModel", n0)?;
                check_n1("DispersionModel", n1)
            }
            DispersionModel::Tabulated(_) => Ok(()),
        }
    }

    /// Smallest index the model reaches on the imaginary axis before any
    /// clamping; sets how fast the Lifshitz integrand decays in ξ.
    pub(crate) fn decay_index(&self) -> f64 {
        match self {
            DispersionModel::Constant { n0 } | DispersionModel::Cauchy { n0, .. } => *n0,
            DispersionModel::Tabulated(t) => t.min_index(),
        }
    }

    /// `n(ω)` on the real frequency axis.
    pub fn index_of_real_frequency(&self, omega: f64) -> Result<f64> {
        if omega.is_nan() || omega < 0.0 {
            return Err(domain("index_of_real_frequency", format!("omega = {omega} must be >= 0")));
        }
        self.validate()?;
        Ok(match self {
            DispersionModel::Tabulated(t) => t.eval(omega),
            _ => {
                let (n0, n1) = self.cauchy_coefficients().expect("closed-form model");
                if n1 == 0.0 {
                    n0
                } else {
                    n0 + n1 * omega * omega
                }
            }
        })
    }

    /// `κ₁ = n(iξ)·ξ`, clamped below at zero.
    pub fn kappa_lower(&self, xi: f64) -> Result<KappaLower> {
        if xi.is_nan() || xi < 0.0 {
            return Err(domain("kappa_lower", format!("xi = {xi} must be >= 0")));
        }
        self.validate()?;
        Ok(self.kappa_lower_unchecked(xi))
    }

    pub(crate) fn kappa_lower_unchecked(&self, xi: f64) -> KappaLower {
        let raw = match self {
            DispersionModel::Tabulated(t) => t.eval(xi) * xi,
            _ => {
                let (n0, n1) = self.cauchy_coefficients().expect("closed-form model");
                if n1 == 0.0 {
                    n0 * xi
                } else {
                    n0 * xi - n1 * xi * xi * xi
                }
            }
        };
        if raw < 0.0 {
            KappaLower {
                value: 0.0,
                raw,
                clamped: true,
            }
        } else {
            KappaLower {
                value: raw,
                raw,
                clamped: false,
            }
        }
    }

    /// ξ at which the Cauchy continuation `n0 − n1ξ²` reaches zero.
    pub fn clamp_onset(&self) -> Option<f64> {
        match self.cauchy_coefficients() {
            Some((n0, n1)) if n1 > 0.0 => Some((n0 / n1).sqrt()),
            _ => None,
        }
    }

    pub fn validity(&self) -> Result<ValidityReport> {
        self.validate()?;
        let (n0, n1) = self.cauchy_coefficients().ok_or(Error::UnsupportedModel {
            op: "validity",
            model: "tabulated",
        })?;
        Ok(ValidityReport {
            min_separation: 2.0 * PI * n1.sqrt(),
            ratio_bound: 1.0 / (14.0 * n0 * n0 * n0),
        })
    }
}

pub(crate) fn check_n0(op: &'static str, n0: f64) -> Result<()> {
    if n0.is_finite() && n0 > 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("n0 = {n0} must be finite and > 0")))
    }
}

pub(crate) fn check_n1(op: &'static str, n1: f64) -> Result<()> {
    if n1.is_finite() && n1 >= 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("n1 = {n1} must be finite and >= 0")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        let m = DispersionModel::cauchy(1.5, 0.01).unwrap();
        assert!((m.index_of_real_frequency(2.0).unwrap() - 1.54).abs() < 1e-15);
        let flat = DispersionModel::cauchy(1.3, 0.0).unwrap();
        assert_eq!(flat.index_of_real_frequency(1e200).unwrap(), 1.3);
        let c = DispersionModel::constant(2.0).unwrap();
        assert_eq!(c.index_of_real_frequency(100.0).unwrap(), 2.0);
        assert!(c.index_of_real_frequency(-1.0).is_err());
    }

    #[test]
    fn kappa_examples() {
        let m = DispersionModel::cauchy(1.5, 0.01).unwrap();
        let k = m.kappa_lower(2.0).unwrap();
        assert!((k.value - 2.92).abs() < 1e-15);
        assert!(!k.clamped);
        assert_eq!(m.kappa_lower(0.0).unwrap().value, 0.0);

        let k = DispersionModel::cauchy(1.0, 1.0).unwrap().kappa_lower(2.0).unwrap();
        assert_eq!(k.value, 0.0);
        assert_eq!(k.raw, -6.0);
        assert!(k.clamped);
        assert!(m.kappa_lower(-0.5).is_err());
    }

    #[test]
    fn validity_examples() {
        let v = DispersionModel::cauchy(1.0, 0.01).unwrap().validity().unwrap();
        assert!((v.min_separation - 0.2 * PI).abs() < 1e-15);
        assert!((v.min_separation - 0.6283).abs() < 1e-4);
        assert!(!v.is_valid_at(0.1));
        assert!(v.is_valid_at(1.0));
        let v = DispersionModel::cauchy(1.0, 0.0).unwrap().validity().unwrap();
        assert_eq!(v.min_separation, 0.0);
        let v = DispersionModel::cauchy(2.0, 0.3).unwrap().validity().unwrap();
        assert_eq!(v.ratio_bound, 1.0 / 112.0);
        let t = IndexTable::new(vec![(0.0, 1.5), (1.0, 1.4)]).unwrap();
        assert!(matches!(
            DispersionModel::tabulated(t).validity(),
            Err(Error::UnsupportedModel { .. })
        ));
    }

    #[test]
    fn constructors_reject_invalid() {
        assert!(DispersionModel::constant(0.0).is_err());
        assert!(DispersionModel::constant(f64::NAN).is_err());
        assert!(DispersionModel::cauchy(1.0, -1e-3).is_err());
        let hand_built = DispersionModel::Cauchy { n0: -1.0, n1: 0.0 };
        assert!(hand_built.kappa_lower(1.0).is_err());
        assert!(IndexTable::new(vec![]).is_err());
        assert!(IndexTable::new(vec![(0.0, 1.0), (0.0, 1.1)]).is_err());
        assert!(IndexTable::new(vec![(0.0, 1.0), (1.0, 0.0)]).is_err());
        assert!(IndexTable::new(vec![(-1.0, 1.0)]).is_err());
    }

    #[test]
    fn table_interpolation_hits_nodes_and_holds_ends() {
        let t = IndexTable::new(vec![(0.0, 2.0), (1.0, 1.8), (2.0, 1.3), (4.0, 1.1)]).unwrap();
        for (x, n) in t.samples().collect::<Vec<_>>() {
            assert!((t.eval(x) - n).abs() < 1e-15);
        }
        assert_eq!(t.eval(10.0), 1.1);
        // Monotone data stays monotone and bracketed.
        let mut prev = f64::INFINITY;
        for i in 0..=400 {
            let v = t.eval(i as f64 * 0.01);
            assert!(v <= prev + 1e-15 && (1.1..=2.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn table_interpolation_does_not_overshoot_a_step() {
        let t = IndexTable::new(vec![(0.0, 1.0), (1.0, 1.0), (1.1, 3.0), (2.0, 3.0)]).unwrap();
        for i in 0..=200 {
            let v = t.eval(i as f64 * 0.01);
            assert!((1.0..=3.0).contains(&v), "x={} v={v}", i as f64 * 0.01);
        }
    }

    #[test]
    fn csv_loading_with_and_without_header() {
        let with = "xi,n\n0,1.5\n1,1.45\n2,1.4\n";
        let without = "0,1.5\n1,1.45\n2,1.4\n";
        let a = IndexTable::from_csv_reader(with.as_bytes()).unwrap();
        let b = IndexTable::from_csv_reader(without.as_bytes()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples().count(), 3);
        assert!(IndexTable::from_csv_reader("0,1.5\nx,1\n".as_bytes()).is_err());
        assert!(IndexTable::from_csv_reader("0,1.5,3\n".as_bytes()).is_err());
        assert!(matches!(
            IndexTable::from_csv_path("/nonexistent/table.csv"),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn tabulated_kappa_uses_table_directly() {
        let t = IndexTable::new(vec![(0.0, 1.5), (10.0, 1.5)]).unwrap();
        let m = DispersionModel::tabulated(t);
        assert!((m.kappa_lower(2.0).unwrap().value - 3.0).abs() < 1e-15);
        assert_eq!(m.index_of_real_frequency(3.0).unwrap(), 1.5);
    }
}
