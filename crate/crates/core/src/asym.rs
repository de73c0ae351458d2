//! Small-rho asymptotics of the zero structures: closed-form predictions, exponent fits
//! on computed scatters, and dominant balance on the bivariate loci.

use crate::error::{Error, Result};
use crate::exact::{BiPoly, Poly, Rational, Ring, Var};
use crate::graphs::Family;
use crate::zeros::{aberth_roots, ZeroSet};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// K3 f=0 triple point, `+-i a / sqrt(rho) + b`.
pub const K3F0_TRIPLE_A: f64 = 0.4610389;
pub const K3F0_TRIPLE_B: f64 = -0.08457522;
/// K3 f=0 imaginary-axis crossing, `+-i a' / sqrt(rho)`.
pub const K3F0_CROSSING_A: f64 = 0.33529987;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    /// The triplet of isolated zeros, real member first.
    K4Isolated,
    /// The outer circle and its radius.
    K4Circle,
    K3F0Circle,
    K3F0Triple,
    K3F0Crossing,
    K3Circle,
    K3Crossing,
}

impl Feature {
    pub const ALL: [Feature; 7] = [
        Feature::K4Isolated,
        Feature::K4Circle,
        Feature::K3F0Circle,
        Feature::K3F0Triple,
        Feature::K3F0Crossing,
        Feature::K3Circle,
        Feature::K3Crossing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::K4Isolated => "k4-isolated",
            Feature::K4Circle => "k4-circle",
            Feature::K3F0Circle => "k3f0-circle",
            Feature::K3F0Triple => "k3f0-triple",
            Feature::K3F0Crossing => "k3f0-crossing",
            Feature::K3Circle => "k3-circle",
            Feature::K3Crossing => "k3-crossing",
        }
    }

    pub fn family(self) -> Family {
        match self {
            Feature::K4Isolated | Feature::K4Circle => Family::K4Ladder,
            Feature::K3F0Circle | Feature::K3F0Triple | Feature::K3F0Crossing => Family::K3Cylinder { f_zero: true },
            Feature::K3Circle | Feature::K3Crossing => Family::K3Cylinder { f_zero: false },
        }
    }

    pub fn model(self) -> AsymptoticModel {
        let i = Complex64::i();
        let (exponent, prefactor, offset, shift, directions) = match self {
            Feature::K4Isolated => {
                let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
                (Rational::from((-1, 3)), 2f64.powf(-1.0 / 3.0), Complex64::new(25.0 / 24.0, 0.0), 0.0, vec![-Complex64::new(1.0, 0.0), -w.conj(), -w])
            }
            Feature::K4Circle => (Rational::from((-1, 4)), 2f64.powf(-0.25), Complex64::new(27.0 / 32.0, 0.0), 0.0, vec![]),
            Feature::K3F0Circle => (Rational::from((-1, 2)), (5.0 - 17f64.sqrt()).powf(0.25) / 2f64.sqrt(), Complex64::default(), 0.0, vec![]),
            Feature::K3F0Triple => (Rational::from((-1, 2)), K3F0_TRIPLE_A, Complex64::new(K3F0_TRIPLE_B, 0.0), 0.0, vec![i, -i]),
            Feature::K3F0Crossing => (Rational::from((-1, 2)), K3F0_CROSSING_A, Complex64::default(), 0.0, vec![i, -i]),
            Feature::K3Circle => (Rational::from((-2, 5)), 7f64.powf(-0.2), Complex64::default(), 0.0, vec![]),
            Feature::K3Crossing => {
                (Rational::from((-1, 3)), 10f64.powf(-1.0 / 6.0), Complex64::default(), -3.0 / (5.0 * 10f64.sqrt()), vec![i, -i])
            }
        };
        AsymptoticModel { feature: self, exponent, prefactor, offset, shift, directions }
    }

    /// How to read this feature off a scatter, if it can be.
    pub fn selector(self) -> Option<Selector> {
        match self {
            Feature::K4Isolated => Some(Selector::LeftmostReal { offset: 25.0 / 24.0 }),
            Feature::K4Circle => Some(Selector::CloudMedian { centre: 27.0 / 32.0 }),
            Feature::K3F0Circle | Feature::K3Circle => Some(Selector::CloudMedian { centre: 0.0 }),
            // inner curves carry no zeros at practical lengths
            Feature::K3F0Crossing | Feature::K3Crossing | Feature::K3F0Triple => None,
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown feature {s:?}")))
    }
}

/// `offset + direction * (prefactor * rho^exponent + shift)` for each direction.
#[derive(Clone, Debug)]
pub struct AsymptoticModel {
    pub feature: Feature,
    pub exponent: Rational,
    pub prefactor: f64,
    pub offset: Complex64,
    pub shift: f64,
    /// Empty for circles: the prediction is a radius about `offset`.
    pub directions: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct Prediction {
    pub scale: f64,
    pub values: Vec<Complex64>,
}

impl AsymptoticModel {
    pub fn scale(&self, rho: f64) -> f64 {
        self.prefactor * rho.powf(self.exponent.to_f64())
    }

    pub fn predict(&self, rho: f64) -> Prediction {
        let scale = self.scale(rho);
        let values = self.directions.iter().map(|d| self.offset + d * (scale + self.shift)).collect();
        Prediction { scale, values }
    }
}

/// Closed-form prediction of a feature at small rho.
pub fn asymptote(feature: Feature, rho: f64) -> Result<Prediction> {
    if !(rho > 0.0) {
        return Err(Error::Invalid("rho must be positive".into()));
    }
    Ok(feature.model().predict(rho))
}

/// Scalar extracted from one scatter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Selector {
    /// Median distance of the nonzero zeros from `centre`.
    CloudMedian { centre: f64 },
    /// `|x - offset|` for the real zero of smallest real part.
    LeftmostReal { offset: f64 },
    /// Modulus of the upper-half-plane zero closest in angle to the imaginary axis.
    ImagCrossing,
}

impl Selector {
    pub fn apply(self, points: &[Complex64]) -> Result<f64> {
        let pts: Vec<Complex64> = points.iter().copied().filter(|z| z.norm() > 0.0).collect();
        if pts.is_empty() {
            return Err(Error::FeatureAbsent("no nonzero roots".into()));
        }
        match self {
            Selector::CloudMedian { centre } => {
                let mut d: Vec<f64> = pts.iter().map(|z| (z - centre).norm()).collect();
                d.sort_by(f64::total_cmp);
                let m = d.len() / 2;
                Ok(if d.len() % 2 == 1 { d[m] } else { 0.5 * (d[m - 1] + d[m]) })
            }
            Selector::LeftmostReal { offset } => {
                let z = pts.iter().min_by(|a, b| a.re.total_cmp(&b.re)).unwrap();
                if z.im.abs() > 1e-6 * z.norm() {
                    return Err(Error::FeatureAbsent(format!("leftmost zero {z} is not real")));
                }
                Ok((z.re - offset).abs())
            }
            Selector::ImagCrossing => pts
                .iter()
                .filter(|z| z.im > 0.0)
                .min_by(|a, b| (a.arg() - PI / 2.0).abs().total_cmp(&(b.arg() - PI / 2.0).abs()))
                .map(|z| z.norm())
                .ok_or_else(|| Error::FeatureAbsent("no zero in the upper half plane".into())),
        }
    }
}

/// One scatter for fitting.
#[derive(Clone, Debug)]
pub struct Sample {
    pub rho: f64,
    pub n: usize,
    pub points: Vec<Complex64>,
}

impl Sample {
    pub fn from_zero_set(z: &ZeroSet) -> Result<Sample> {
        let meta = z.meta.as_ref().ok_or_else(|| Error::Invalid("scatter has no metadata".into()))?;
        let points = z.points_f64().into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        Ok(Sample { rho: rug::Float::with_val(53, &meta.rho).to_f64(), n: meta.n, points })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub feature: String,
    /// Least-squares slope of `ln scale` against `ln rho`.
    pub exponent: f64,
    /// At the smallest rho, `scale * rho^(-e)`; `e` is the reference exponent when given.
    pub prefactor: f64,
    pub rhos: Vec<f64>,
    /// `ln scale` minus the fitted line, per rho.
    pub residuals: Vec<f64>,
    /// Whether the prefactor was extrapolated in `1/n` from two lengths.
    pub extrapolated: bool,
}

/// Fit `scale ~ prefactor * rho^exponent` over scatters at three or more values of rho.
///
/// The exponent uses the longest scatter at each rho. When the smallest rho carries two
/// lengths, the prefactor is extrapolated linearly in `1/n`.
pub fn fit_exponent(samples: &[Sample], selector: Selector, reference: Option<&Rational>, label: &str) -> Result<FitReport> {
    let mut by_rho: BTreeMap<u64, Vec<&Sample>> = BTreeMap::new();
    for s in samples {
        if !(s.rho > 0.0) {
            return Err(Error::Invalid("rho must be positive".into()));
        }
        by_rho.entry(s.rho.to_bits()).or_default().push(s);
    }
    if by_rho.len() < 3 {
        return Err(Error::Invalid(format!("need scatters at 3 or more values of rho, got {}", by_rho.len())));
    }
    let mut rows = Vec::new();
    for group in by_rho.values_mut() {
        group.sort_by_key(|s| s.n);
        let scales: Vec<(usize, f64)> = group.iter().map(|s| Ok((s.n, selector.apply(&s.points)?))).collect::<Result<_>>()?;
        rows.push((group[0].rho, scales));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let xs: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1.last().unwrap().1.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (icept + slope * x)).collect();
    let e = reference.map(|r| r.to_f64()).unwrap_or(slope);
    let (rho0, scales) = &rows[0];
    let pf = |s: f64| s * rho0.powf(-e);
    let (prefactor, extrapolated) = match scales.as_slice() {
        [.., (n1, s1), (n2, s2)] if n1 != n2 => {
            let (n1, n2) = (*n1 as f64, *n2 as f64);
            ((n2 * pf(*s2) - n1 * pf(*s1)) / (n2 - n1), true)
        }
        _ => (pf(scales.last().unwrap().1), false),
    };
    Ok(FitReport { feature: label.to_string(), exponent: slope, prefactor, rhos: rows.iter().map(|r| r.0).collect(), residuals, extrapolated })
}

/// Leading balance of a locus under `p = chi * rho^(-e)`.
#[derive(Clone, Debug)]
pub struct Balance {
    /// Power of rho carried by the balancing terms.
    pub order: Rational,
    /// Polynomial in chi with the `chi^k` factor removed.
    pub equation: Poly<Rational>,
    pub roots: Vec<Complex64>,
}

/// Substitute `p = chi * rho^(-e)` and keep the lowest power of rho.
pub fn verify_dominant_balance(locus: &BiPoly, e: &Rational) -> Result<Balance> {
    let mut order: Option<Rational> = None;
    for (i, c) in locus.coeffs().iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let o = Rational::from(j) - Rational::from(e * Rational::from(i));
            if order.as_ref().map_or(true, |m| o < *m) {
                order = Some(o);
            }
        }
    }
    let order = order.ok_or(Error::ZeroPolynomial)?;
    let mut eq = vec![Rational::new(); locus.coeffs().len()];
    for (i, c) in locus.coeffs().iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            if !a.is_zero() && Rational::from(j) - Rational::from(e * Rational::from(i)) == order {
                eq[i] = a.clone();
            }
        }
    }
    let eq = Poly::new(eq, Var::X);
    let eq = eq.shift_down(eq.valuation());
    if eq.deg0() == 0 {
        return Err(Error::FeatureAbsent(format!("no consistent balance at exponent {e}")));
    }
    let zs = aberth_roots(&eq, 128)?;
    let roots = zs
        .roots
        .iter()
        .flat_map(|r| std::iter::repeat(r.z.to_f64()).take(r.multiplicity))
        .map(|(a, b)| Complex64::new(a, b))
        .collect();
    Ok(Balance { order, equation: eq, roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> BiPoly {
        let np = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let c = (0..np)
            .map(|i| Poly::new(rows.iter().map(|r| Rational::from(r.get(i).copied().unwrap_or(0))).collect(), Var::Rho))
            .collect();
        Poly::new(c, Var::P)
    }

    #[test]
    fn formula_values() {
        let p = asymptote(Feature::K4Isolated, 1e-3).unwrap();
        assert!((p.values[0].re + 6.8953).abs() < 1e-4 && p.values[0].im == 0.0);
        assert_eq!(p.values.len(), 3);
        assert!((asymptote(Feature::K4Circle, 1e-4).unwrap().scale - 5000f64.powf(0.25)).abs() < 1e-12);
        assert!((Feature::K3F0Circle.model().prefactor - 0.684261).abs() < 1e-6);
        assert!((Feature::K3Circle.model().prefactor - 0.677611).abs() < 1e-6);
        let c = asymptote(Feature::K3Crossing, 1e-6).unwrap();
        assert!((c.values[0].im - (100.0 * 10f64.powf(-1.0 / 6.0) - 0.6 / 10f64.sqrt())).abs() < 1e-9);
        assert!(asymptote(Feature::K4Circle, 0.0).is_err());
        assert!("k5".parse::<Feature>().is_err());
    }

    #[test]
    fn isolated_balance() {
        let eq7 = bi(&[&[2], &[2, 4, -11, 4], &[0, 12, -40, 45, -20, 3]]);
        let b = verify_dominant_balance(&eq7, &Rational::from((1, 3))).unwrap();
        assert_eq!(b.equation, Poly::new(vec![Rational::from(2), Rational::new(), Rational::new(), Rational::from(4)], Var::X));
        for r in &b.roots {
            assert!(((r * r * r) + 0.5).norm() < 1e-12);
        }
        assert!(matches!(verify_dominant_balance(&eq7, &Rational::from(1)), Err(Error::FeatureAbsent(_))));
    }

    #[test]
    fn circle_balance() {
        let a4 = bi(&[&[4, -14, 8], &[0, 8, -46, 130, -153, 80, -16], &[0, 0, 4, 18, -130, 249, -232, 119, -33, 4]]);
        let b = verify_dominant_balance(&a4, &Rational::from((1, 4))).unwrap();
        assert_eq!(b.order, Rational::from((-1, 2)));
        assert_eq!(b.roots.len(), 4);
        for r in &b.roots {
            assert!((r.powi(4) - 0.5).norm() < 1e-12);
        }
    }

    #[test]
    fn synthetic_fit() {
        let mk = |rho: f64, n: usize, bias: f64| {
            let r = 2.0 * rho.powf(-0.25) * (1.0 + bias / n as f64);
            Sample { rho, n, points: (0..40).map(|k| Complex64::from_polar(r, k as f64 * 0.157)).collect() }
        };
        let s = vec![mk(1e-2, 100, 1.0), mk(1e-4, 100, 1.0), mk(1e-6, 100, 1.0), mk(1e-6, 50, 1.0)];
        let f = fit_exponent(&s, Selector::CloudMedian { centre: 0.0 }, Some(&Rational::from((-1, 4))), "t").unwrap();
        assert!((f.exponent + 0.25).abs() < 1e-12);
        assert!(f.extrapolated && (f.prefactor - 2.0).abs() < 1e-9);
        assert!(fit_exponent(&s[..2], Selector::ImagCrossing, None, "t").is_err());
    }
}
