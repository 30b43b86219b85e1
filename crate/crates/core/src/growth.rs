//! Growth of `TV_r` along odd levels: `f(r) = (2π/r) log TV_r`, log-log fits,
//! the cabling sandwich check and operator-norm tables.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cabling::{cabling_matrix, p2_inverse};
use crate::error::{Error, Result};
use crate::knots::{turaev_viro, KnotSpec};
use crate::norm::{operator_norm_with, NormOptions};
use crate::qroots::TqftParameter;
use crate::real::DOUBLE_BITS;

/// Above this level, double-precision points are re-run at 106 bits.
pub const RECHECK_ABOVE: u32 = 1200;
pub const RECHECK_BITS: u32 = 106;
/// Largest relative drift accepted between the two precisions.
pub const RECHECK_TOL: f64 = 1e-8;

/// Odd levels `r_min, r_min + 2, ..., ≤ r_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelRange {
    r_min: u32,
    r_max: u32,
}

impl LevelRange {
    pub fn new(r_min: i64, r_max: i64) -> Result<Self> {
        let r_min = TqftParameter::new(r_min)?.r();
        if r_max < i64::from(r_min) || r_max > i64::from(u32::MAX / 8) {
            return Err(Error::InvalidRange {
                r_min: i64::from(r_min),
                r_max,
            });
        }
        Ok(LevelRange {
            r_min,
            r_max: r_max as u32,
        })
    }

    /// All odd levels from 3 to `r_max`.
    pub fn up_to(r_max: i64) -> Result<Self> {
        Self::new(3, r_max)
    }

    pub fn r_min(&self) -> u32 {
        self.r_min
    }

    pub fn r_max(&self) -> u32 {
        self.r_max
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> + Clone {
        (self.r_min..=self.r_max).step_by(2)
    }

    pub fn len(&self) -> usize {
        ((self.r_max - self.r_min) / 2 + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub r: u32,
    pub tv: f64,
    /// Absent when `TV_r = 0`.
    pub f: Option<f64>,
}

/// `log TV ≈ logB + N log r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerFit {
    #[serde(rename = "N")]
    pub n: f64,
    #[serde(rename = "logB")]
    pub log_b: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointFailure {
    pub r: u32,
    pub error: Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSeries {
    pub knot: KnotSpec,
    pub points: Vec<GrowthPoint>,
    pub failures: Vec<PointFailure>,
    pub fit: Option<PowerFit>,
    pub ltv_estimate: Option<f64>,
    /// Points above [`RECHECK_ABOVE`] whose two precisions disagreed.
    pub precision_warnings: Vec<String>,
}

pub fn growth_rate(r: u32, tv: f64) -> Option<f64> {
    (tv > 0.0).then(|| 2.0 * std::f64::consts::PI / f64::from(r) * tv.ln())
}

pub fn growth_point(param: &TqftParameter, spec: &KnotSpec) -> Result<GrowthPoint> {
    let tv = turaev_viro(param, spec)?;
    Ok(GrowthPoint {
        r: param.r(),
        tv,
        f: growth_rate(param.r(), tv),
    })
}

fn with_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

/// Ordinary least squares `y ≈ a + b x`; `None` with fewer than two distinct `x`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((my - slope * mx, slope))
}

/// Spearman rank correlation, ties sharing their mean rank.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut out = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let rank = (i + j) as f64 / 2.0 + 1.0;
            for &k in &idx[i..=j] {
                out[k] = rank;
            }
            i = j + 1;
        }
        out
    }
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let mean = (xs.len() as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mean) * (b - mean);
        sxx += (a - mean) * (a - mean);
        syy += (b - mean) * (b - mean);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

impl GrowthSeries {
    fn from_points(knot: KnotSpec, points: Vec<GrowthPoint>) -> Self {
        let tail = &points[points.len() / 2..];
        let (xs, ys): (Vec<f64>, Vec<f64>) = tail
            .iter()
            .filter(|p| p.tv > 0.0)
            .map(|p| (f64::from(p.r).ln(), p.tv.ln()))
            .unzip();
        let fit = least_squares(&xs, &ys).map(|(log_b, n)| PowerFit { n, log_b });
        let ltv_estimate = tail.iter().filter_map(|p| p.f).reduce(f64::max);
        GrowthSeries {
            knot,
            points,
            failures: Vec::new(),
            fit,
            ltv_estimate,
            precision_warnings: Vec::new(),
        }
    }

    /// Points with `r ≥ r0`.
    pub fn tail(&self, r0: u32) -> impl Iterator<Item = &GrowthPoint> {
        self.points.iter().filter(move |p| p.r >= r0)
    }

    pub fn point(&self, r: u32) -> Option<&GrowthPoint> {
        self.points.iter().find(|p| p.r == r)
    }

    /// Header `r,tv,f`; floats with 17 significant digits; `f` empty when
    /// `TV = 0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,tv,f\n");
        for p in &self.points {
            let _ = write!(out, "{},{:.16e},", p.r, p.tv);
            if let Some(f) = p.f {
                let _ = write!(out, "{f:.16e}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "knot": self.knot.to_string(),
            "points": self.points,
            "fit": self.fit,
            "ltv_estimate": self.ltv_estimate,
        })
    }
}

fn scan_point(r: u32, precision: u32, spec: &KnotSpec) -> (Result<GrowthPoint>, Option<String>) {
    let param = match TqftParameter::with_precision(i64::from(r), precision) {
        Ok(p) => p,
        Err(e) => return (Err(e), None),
    };
    let point = growth_point(&param, spec);
    if r <= RECHECK_ABOVE || precision >= RECHECK_BITS {
        return (point, None);
    }
    let wide = param
        .with_bits(RECHECK_BITS)
        .and_then(|p| growth_point(&p, spec));
    match (point, wide) {
        (Ok(lo), Ok(hi)) => {
            let drift = (lo.tv - hi.tv).abs() / hi.tv.abs().max(f64::MIN_POSITIVE);
            let warning = (drift > RECHECK_TOL).then(|| {
                format!("r={r}: {precision}-bit TV differs from {RECHECK_BITS}-bit by {drift:.3e} relative")
            });
            (Ok(hi), warning)
        }
        (_, wide) => (wide, None),
    }
}

/// Growth points for every odd level in `range`, spread over `jobs` workers
/// (0 picks the rayon default). The result does not depend on `jobs`.
pub fn scan(
    range: LevelRange,
    spec: &KnotSpec,
    precision: u32,
    jobs: usize,
) -> Result<GrowthSeries> {
    spec.validate()?;
    if precision < DOUBLE_BITS {
        return Err(Error::InvalidPrecision(precision));
    }
    let levels: Vec<u32> = range.levels().collect();
    let results: Vec<_> = with_pool(jobs, || {
        levels
            .par_iter()
            .map(|&r| (r, scan_point(r, precision, spec)))
            .collect()
    });

    let mut points = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    for (r, (point, warning)) in results {
        match point {
            Ok(p) => points.push(p),
            Err(error) => failures.push(PointFailure { r, error }),
        }
        warnings.extend(warning);
    }
    let mut series = GrowthSeries::from_points(spec.clone(), points);
    series.failures = failures;
    series.precision_warnings = warnings;
    Ok(series)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SandwichRow {
    pub r: u32,
    pub m: usize,
    pub tv: f64,
    pub cabled_tv: f64,
    /// Absent when the inner TV vanishes.
    pub ratio: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub knot: KnotSpec,
    pub p: i64,
    pub rows: Vec<SandwichRow>,
    pub failures: Vec<PointFailure>,
    /// Slope of `log ρ` against `log r` over rows with a ratio.
    pub exponent: Option<f64>,
}

impl SandwichReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.rows.iter().all(|row| row.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,m,tv,cabled_tv,ratio,verdict\n");
        for row in &self.rows {
            let _ = write!(
                out,
                "{},{},{:.16e},{:.16e},",
                row.r, row.m, row.tv, row.cabled_tv
            );
            if let Some(ratio) = row.ratio {
                let _ = write!(out, "{ratio:.16e}");
            }
            let _ = writeln!(out, ",{}", if row.pass { "PASS" } else { "FAIL" });
        }
        out
    }
}

const SANDWICH_SLACK: f64 = 1e-9;

fn sandwich_row(r: u32, spec: &KnotSpec, cabled: &KnotSpec) -> Result<SandwichRow> {
    let param = TqftParameter::new(i64::from(r))?;
    let tv = turaev_viro(&param, spec)?;
    let cabled_tv = turaev_viro(&param, cabled)?;
    let m = param.m();
    let ratio = (tv > 0.0).then(|| cabled_tv / tv);
    let pass = match ratio {
        Some(x) => x >= 0.25 - SANDWICH_SLACK && x <= (m * m) as f64 + SANDWICH_SLACK,
        None => false,
    };
    Ok(SandwichRow {
        r,
        m,
        tv,
        cabled_tv,
        ratio,
        pass,
    })
}

/// Checks `TV_r(K)/4 ≤ TV_r(cable_p K) ≤ m² TV_r(K)` at every odd level.
pub fn sandwich_check(range: LevelRange, spec: &KnotSpec, p: i64) -> Result<SandwichReport> {
    let cabled = KnotSpec::cable(p, spec.clone());
    cabled.validate()?;
    let results: Vec<_> = range
        .levels()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|r| (r, sandwich_row(r, spec, &cabled)))
        .collect();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (r, row) in results {
        match row {
            Ok(row) => rows.push(row),
            Err(error) => failures.push(PointFailure { r, error }),
        }
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter_map(|row| row.ratio.map(|x| (f64::from(row.r).ln(), x.ln())))
        .unzip();
    let exponent = least_squares(&xs, &ys).map(|(_, slope)| slope);
    Ok(SandwichReport {
        knot: spec.clone(),
        p,
        rows,
        failures,
        exponent,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormRow {
    pub r: u32,
    pub m: usize,
    pub forward: Result<f64>,
    pub inverse: Result<f64>,
}

impl NormRow {
    /// `|||M||| ≤ m` and `|||M⁻¹||| ≤ 2`, both estimates available.
    pub fn pass(&self) -> bool {
        matches!((&self.forward, &self.inverse),
            (Ok(f), Ok(i)) if *f <= self.m as f64 * (1.0 + 1e-8) && *i <= 2.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub p: i64,
    pub rows: Vec<NormRow>,
}

impl NormReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(NormRow::pass)
    }

    pub fn has_failed_estimates(&self) -> bool {
        self.rows
            .iter()
            .any(|row| row.forward.is_err() || row.inverse.is_err())
    }
}

fn norm_row(r: u32, p: i64, opts: NormOptions) -> Result<NormRow> {
    let param = TqftParameter::new(i64::from(r))?;
    let forward = cabling_matrix(&param, p, 2)?.numeric_view();
    let inverse = p2_inverse(&param, p)?.numeric_view();
    Ok(NormRow {
        r,
        m: param.m(),
        forward: operator_norm_with(&forward, opts).map(|e| e.norm),
        inverse: operator_norm_with(&inverse, opts).map(|e| e.norm),
    })
}

/// Operator norms of the `(p, 2)` cabling matrix and its inverse at every
/// odd level in `range`. Non-convergent estimates are kept per row.
pub fn norm_scan(range: LevelRange, p: i64, opts: NormOptions) -> Result<NormReport> {
    if p % 2 == 0 {
        return Err(Error::EvenP(p));
    }
    let rows = range
        .levels()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|r| norm_row(r, p, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(NormReport { p, rows })
}
