//! RT vectors and Turaev–Viro invariants of knot complements.
//!
//! The coordinate of `RT_r(S³ \ K)` along `e_i` is `η_r J_i(K, A⁴)`, with
//! `J_i` the unnormalised colored Jones polynomial. Cables and torus knots are
//! produced by applying the cabling operator, and `TV_r = ‖RT_r‖²`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::cabling::{apply, cabling_matrix, check_cabling_pair};
use crate::error::{Error, Result};
use crate::qroots::{eta, eta_in, loop_value_in, TqftParameter};
use crate::real::{Cx, Mp, Real};
use crate::torus_basis::TqftVector;

/// A knot complement built from the unknot, torus knots and the figure-eight
/// knot by iterated `(p, 2)`-cabling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotSpec {
    Unknot,
    /// `q = 2` goes through the `(p, 2)` cabling matrix; other `q` use the
    /// general-`q` matrix and are experimental.
    TorusKnot { p: i64, q: i64 },
    FigureEight,
    Cable { p: i64, inner: Box<KnotSpec> },
}

impl KnotSpec {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotSpec::TorusKnot { p, q }
    }

    pub fn cable(p: i64, inner: KnotSpec) -> Self {
        KnotSpec::Cable {
            p,
            inner: Box::new(inner),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            KnotSpec::Unknot | KnotSpec::FigureEight => Ok(()),
            KnotSpec::TorusKnot { p, q } => check_cabling_pair(*p, *q),
            KnotSpec::Cable { p, inner } => {
                if p % 2 == 0 {
                    return Err(Error::EvenP(*p));
                }
                inner.validate()
            }
        }
    }

    /// Number of cabling operators between the spec and its innermost knot.
    pub fn depth(&self) -> usize {
        match self {
            KnotSpec::Cable { inner, .. } => 1 + inner.depth(),
            _ => 0,
        }
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::Unknot => f.write_str("unknot"),
            KnotSpec::FigureEight => f.write_str("figure8"),
            KnotSpec::TorusKnot { p, q } => write!(f, "torus:{p},{q}"),
            KnotSpec::Cable { p, inner } => write!(f, "cable:{p}:{inner}"),
        }
    }
}

impl FromStr for KnotSpec {
    type Err = Error;

    /// Grammar: `unknot | figure8 | torus:p,q | cable:p:<spec>`.
    fn from_str(input: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::KnotSpec {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let int = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| syntax(&format!("`{s}` is not an integer")))
        };

        let mut rest = input.trim();
        let mut cables = Vec::new();
        while let Some(tail) = rest.strip_prefix("cable:") {
            let (p, inner) = tail
                .split_once(':')
                .ok_or_else(|| syntax("expected `cable:p:<spec>`"))?;
            cables.push(int(p)?);
            rest = inner;
        }
        let mut spec = match rest {
            "unknot" => KnotSpec::Unknot,
            "figure8" => KnotSpec::FigureEight,
            _ => {
                let args = rest
                    .strip_prefix("torus:")
                    .ok_or_else(|| syntax(&format!("unknown knot `{rest}`")))?;
                let (p, q) = args
                    .split_once(',')
                    .ok_or_else(|| syntax("expected `torus:p,q`"))?;
                KnotSpec::torus(int(p)?, int(q)?)
            }
        };
        for p in cables.into_iter().rev() {
            spec = KnotSpec::cable(p, spec);
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn unknot_in<R: Real>(param: &TqftParameter) -> TqftVector<R> {
    let prec = param.precision();
    let eta = eta_in::<R>(param);
    let coords = (1..=param.m() as i64)
        .map(|i| {
            let lv = loop_value_in::<R>(param, i).expect("colors start at 1");
            Cx::real(eta.clone() * lv, prec)
        })
        .collect();
    TqftVector::from_vec_unchecked(coords)
}

/// `H_N` for every `N = 1..=m`, sharing one sine table.
fn figure8_all_in<R: Real>(param: &TqftParameter) -> Vec<R> {
    let prec = param.precision();
    let r = i64::from(param.r());
    let two_pi_over_r = R::from_i64(prec, 2) * R::pi(prec) / R::from_i64(prec, r);
    let sines: Vec<R> = (0..r)
        .map(|n| (R::from_i64(prec, n) * two_pi_over_r.clone()).sin())
        .collect();
    let sin = |n: i64| sines[n.rem_euclid(r) as usize].clone();
    let minus_four = R::from_i64(prec, -4);
    (1..=param.m() as i64)
        .map(|n| {
            let mut term = R::one(prec);
            let mut sum = R::one(prec);
            for j in 1..n {
                term = term * minus_four.clone() * sin(n - j) * sin(n + j);
                sum = sum + term.clone();
            }
            sum
        })
        .collect()
}

pub fn figure8_cyclotomic_in<R: Real>(param: &TqftParameter, n: i64) -> Result<R> {
    if n < 1 || n > param.m() as i64 {
        return Err(Error::ColorOutOfRange {
            color: n,
            max: param.m(),
        });
    }
    let mut all = figure8_all_in::<R>(param);
    Ok(all.swap_remove(n as usize - 1))
}

/// The cyclotomic expansion of the figure-eight knot's normalised colored
/// Jones polynomial at `t = A⁴`:
///
/// ```text
/// H_N = Σ_{k=0}^{N-1} Π_{j=1}^{k} {N-j}{N+j},   {a} = t^{a/2} - t^{-a/2}
/// ```
///
/// Each factor `{N-j}{N+j} = -4 sin(2π(N-j)/r) sin(2π(N+j)/r)` is real.
pub fn figure8_cyclotomic(param: &TqftParameter, n: i64) -> Result<f64> {
    figure8_cyclotomic_in::<f64>(param, n)
}

/// The same expansion evaluated in complex arithmetic at an arbitrary
/// `t = s²`, given `s = t^{1/2}`.
pub fn figure8_cyclotomic_at(s: Complex64, n: i64) -> Complex64 {
    let log_s = s.ln();
    let bracket = |a: i64| (log_s * a as f64).exp() - (log_s * -(a as f64)).exp();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for j in 1..n {
        term *= bracket(n - j) * bracket(n + j);
        sum += term;
    }
    sum
}

fn figure8_in<R: Real>(param: &TqftParameter) -> TqftVector<R> {
    let unknot = unknot_in::<R>(param);
    let coords = unknot
        .coords()
        .iter()
        .zip(figure8_all_in::<R>(param))
        .map(|(u, h)| u.scale(&h))
        .collect();
    TqftVector::from_vec_unchecked(coords)
}

pub fn rt_vector_in<R: Real>(param: &TqftParameter, spec: &KnotSpec) -> Result<TqftVector<R>> {
    spec.validate()?;
    rt_vector_unchecked(param, spec)
}

fn rt_vector_unchecked<R: Real>(param: &TqftParameter, spec: &KnotSpec) -> Result<TqftVector<R>> {
    match spec {
        KnotSpec::Unknot => Ok(unknot_in(param)),
        KnotSpec::FigureEight => Ok(figure8_in(param)),
        KnotSpec::TorusKnot { p, q } => apply(&cabling_matrix(param, *p, *q)?, &unknot_in(param)),
        KnotSpec::Cable { p, inner } => {
            let v = rt_vector_unchecked::<R>(param, inner)?;
            apply(&cabling_matrix(param, *p, 2)?, &v)
        }
    }
}

/// `RT_r` of the knot complement, evaluated at the parameter's precision and
/// rounded to `f64` coordinates. Coordinates carry an unnormalised global
/// phase; only moduli and norms are meaningful.
pub fn rt_vector(param: &TqftParameter, spec: &KnotSpec) -> Result<TqftVector<f64>> {
    if param.is_extended() {
        let v = rt_vector_in::<Mp>(param, spec)?;
        TqftVector::from_c64(param, &v.to_c64())
    } else {
        rt_vector_in::<f64>(param, spec)
    }
}

/// `TV_r(S³ \ K) = ‖RT_r(S³ \ K)‖²`.
pub fn turaev_viro(param: &TqftParameter, spec: &KnotSpec) -> Result<f64> {
    let tv = if param.is_extended() {
        rt_vector_in::<Mp>(param, spec)?.norm_sqr().to_f64()
    } else {
        rt_vector_in::<f64>(param, spec)?.norm_sqr()
    };
    if !tv.is_finite() {
        return Err(Error::Overflow("Turaev-Viro evaluation"));
    }
    Ok(tv)
}

/// Unnormalised colored Jones polynomial `J_N(T_{p,q}, A⁴)` of a torus knot
/// from the Rosso–Jones formula
///
/// ```text
/// J_N = θ_N^{-pq} Σ_{k ∈ S_N} θ_{2qk+1}^{p/q} Δ(2qk+1),   θ_n = (-1)^{n-1} A^{n²-1},
/// ```
///
/// with `Δ(n) = (-1)^{n-1} [n]` the loop value extended to all integers.
/// Evaluated directly in `f64`, without index reduction or the cabling
/// matrix; it is meant as an independent cross-check. Defined up to a global
/// unit factor.
pub fn torus_knot_oracle(param: &TqftParameter, p: i64, q: i64, n: i64) -> Result<Complex64> {
    check_cabling_pair(p, q)?;
    if n < 1 || n > param.m() as i64 {
        return Err(Error::ColorOutOfRange {
            color: n,
            max: param.m(),
        });
    }
    let r = i64::from(param.r());
    let pi = std::f64::consts::PI;
    let a_pow = |k: i64| Complex64::from_polar(1.0, pi * k.rem_euclid(2 * r) as f64 / r as f64);
    let parity = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let dim = |k: i64| {
        parity(k - 1) * (2.0 * pi * k as f64 / r as f64).sin() / (2.0 * pi / r as f64).sin()
    };

    let top = n - 1;
    let sum: Complex64 = (-top..=top)
        .step_by(2)
        .map(|k2| {
            let label = q * k2 + 1;
            // θ_label^{p/q}: ((label² - 1)/q) = q·k2² + 2·k2 and (label - 1)p/q = p·k2
            a_pow(p * (q * k2 * k2 + 2 * k2)) * parity(p * k2) * dim(label)
        })
        .sum();
    let framing = a_pow(-p * q * (n * n - 1)) * parity(p * q * (n - 1));
    Ok(framing * sum)
}

/// `η_r |J_N(T_{p,q})|` for `N = 1..=m`: the moduli the classical formula
/// predicts for the coordinates of the torus knot complement.
pub fn torus_knot_oracle_moduli(param: &TqftParameter, p: i64, q: i64) -> Result<Vec<f64>> {
    let e = eta(param);
    (1..=param.m() as i64)
        .map(|n| torus_knot_oracle(param, p, q, n).map(|j| e * j.norm()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn p(r: i64) -> TqftParameter {
        TqftParameter::new(r).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let cases = [
            ("unknot", KnotSpec::Unknot),
            ("figure8", KnotSpec::FigureEight),
            ("torus:3,2", KnotSpec::torus(3, 2)),
            ("torus:-5,2", KnotSpec::torus(-5, 2)),
            (
                "cable:3:cable:5:figure8",
                KnotSpec::cable(3, KnotSpec::cable(5, KnotSpec::FigureEight)),
            ),
            (
                "cable:-1:torus:3,2",
                KnotSpec::cable(-1, KnotSpec::torus(3, 2)),
            ),
        ];
        for (text, spec) in cases {
            let parsed: KnotSpec = text.parse().unwrap();
            assert_eq!(parsed, spec);
            assert_eq!(parsed.to_string(), text);
        }
        assert_eq!(
            "cable:3:cable:5:figure8"
                .parse::<KnotSpec>()
                .unwrap()
                .depth(),
            2
        );
    }

    #[test]
    fn parse_rejections() {
        assert_eq!("cable:2:figure8".parse::<KnotSpec>(), Err(Error::EvenP(2)));
        assert_eq!(
            "torus:4,2".parse::<KnotSpec>(),
            Err(Error::NotCoprime { p: 4, q: 2 })
        );
        assert_eq!("torus:3,0".parse::<KnotSpec>(), Err(Error::NonPositiveQ(0)));
        for bad in [
            "trefoil",
            "torus:3",
            "cable:3",
            "cable:x:unknot",
            "torus:a,b",
            "",
        ] {
            assert!(
                matches!(bad.parse::<KnotSpec>(), Err(Error::KnotSpec { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn unknot_vectors() {
        let v = rt_vector(&p(3), &KnotSpec::Unknot).unwrap().to_c64();
        assert_eq!(v.len(), 1);
        assert_abs_diff_eq!(v[0].re, 1.0, epsilon = 1e-15);
        let v = rt_vector(&p(5), &KnotSpec::Unknot).unwrap().to_c64();
        assert_abs_diff_eq!(v[0].re, 0.85065, epsilon = 1e-5);
        assert_abs_diff_eq!(v[1].re, -0.52573, epsilon = 1e-5);
    }

    #[test]
    fn trivial_torus_knot_has_unknot_norm() {
        for r in [5, 7, 21, 101] {
            let t = p(r);
            let tv = turaev_viro(&t, &KnotSpec::torus(1, 2)).unwrap();
            assert_relative_eq!(
                tv,
                turaev_viro(&t, &KnotSpec::Unknot).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn figure8_values() {
        let t = p(5);
        assert_eq!(figure8_cyclotomic(&t, 1).unwrap(), 1.0);
        assert_abs_diff_eq!(
            figure8_cyclotomic(&t, 2).unwrap(),
            1.0 + 5f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(figure8_cyclotomic(&t, 0).is_err());
        assert!(figure8_cyclotomic(&t, 3).is_err());

        let expected =
            eta(&t).powi(2) * (1.0 + 0.381_966_011_250_105_1 * (1.0 + 5f64.sqrt()).powi(2));
        let tv = turaev_viro(&t, &KnotSpec::FigureEight).unwrap();
        assert_relative_eq!(tv, expected, max_relative = 1e-12);
        assert_abs_diff_eq!(tv, 3.6180, epsilon = 1e-4);
    }

    #[test]
    fn figure8_jones_identity_on_unit_circle() {
        // N = 2 reproduces V(t) = t² - t + 1 - t⁻¹ + t⁻².
        for k in 0..20 {
            let theta = 0.1 + 0.31 * k as f64;
            let s = Complex64::from_polar(1.0, theta);
            let t = s * s;
            let jones = t * t - t + 1.0 - t.inv() + t.inv() * t.inv();
            assert!((figure8_cyclotomic_at(s, 2) - jones).norm() < 1e-12);
        }
    }

    #[test]
    fn figure8_complex_route_is_real() {
        for r in [5, 11, 51, 201] {
            let t = p(r);
            let wide = TqftParameter::with_precision(r, 106).unwrap();
            let reference = figure8_all_in::<Mp>(&wide);
            let s = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / r as f64);
            for n in 1..=t.m() as i64 {
                let z = figure8_cyclotomic_at(s, n);
                assert!(z.im.abs() <= 1e-10 * z.re.abs() + 1e-12, "r={r} N={n}: {z}");
                let exact = reference[n as usize - 1].to_f64();
                // the alternating sum cancels, so errors scale with Σ|terms|
                let mut term = 1.0f64;
                let mut scale = 1.0f64;
                for j in 1..n {
                    let x = 2.0 * std::f64::consts::PI / r as f64;
                    term *=
                        4.0 * ((n - j) as f64 * x).sin().abs() * ((n + j) as f64 * x).sin().abs();
                    scale += term;
                }
                assert!((z.re - exact).abs() <= 1e-12 * scale, "r={r} N={n}");
                let real = figure8_cyclotomic(&t, n).unwrap();
                assert!((real - exact).abs() <= 1e-12 * scale, "r={r} N={n}");
            }
        }
    }

    #[test]
    fn cable_of_figure8_ratio_is_bounded() {
        let t = p(5);
        let inner = turaev_viro(&t, &KnotSpec::FigureEight).unwrap();
        let cabled = turaev_viro(&t, &KnotSpec::cable(1, KnotSpec::FigureEight)).unwrap();
        let ratio = cabled / inner;
        assert!((0.25..=4.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn turaev_viro_is_nonnegative_and_validated() {
        let t = p(9);
        for spec in [
            "unknot",
            "figure8",
            "torus:3,2",
            "torus:-5,2",
            "cable:3:figure8",
            "torus:2,3",
        ] {
            let spec: KnotSpec = spec.parse().unwrap();
            assert!(turaev_viro(&t, &spec).unwrap() > 0.0);
        }
        let bad = KnotSpec::cable(4, KnotSpec::Unknot);
        assert_eq!(turaev_viro(&t, &bad), Err(Error::EvenP(4)));
    }

    #[test]
    fn oracle_trivial_color() {
        for r in [5, 11, 101] {
            let t = p(r);
            for pp in [1, 3, 5, 7] {
                let j1 = torus_knot_oracle(&t, pp, 2, 1).unwrap();
                assert_abs_diff_eq!(j1.norm(), 1.0, epsilon = 1e-12);
            }
        }
        assert!(torus_knot_oracle(&p(5), 2, 2, 1).is_err());
        assert!(torus_knot_oracle(&p(5), 3, 2, 3).is_err());
    }

    #[test]
    fn oracle_for_unknotted_torus_knot_is_unknot() {
        let t = p(21);
        for n in 1..=t.m() as i64 {
            let lv = crate::qroots::loop_value(&t, n).unwrap();
            assert_abs_diff_eq!(
                torus_knot_oracle(&t, 1, 2, n).unwrap().norm(),
                lv.abs(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn oracle_norm_equals_turaev_viro() {
        for r in [5, 7, 9, 15, 21, 25, 45] {
            let t = p(r);
            for pp in [1, 3, 5, 7, 9, 15, -3] {
                if num_integer::gcd(pp, r) != 1 {
                    continue;
                }
                let oracle: f64 = torus_knot_oracle_moduli(&t, pp, 2)
                    .unwrap()
                    .iter()
                    .map(|x| x * x)
                    .sum();
                let tv = turaev_viro(&t, &KnotSpec::torus(pp, 2)).unwrap();
                assert_relative_eq!(oracle, tv, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn extended_precision_matches() {
        for (r, spec) in [(51, "figure8"), (31, "cable:3:figure8"), (41, "torus:5,2")] {
            let spec: KnotSpec = spec.parse().unwrap();
            let lo = turaev_viro(&p(r), &spec).unwrap();
            let hi = turaev_viro(&TqftParameter::with_precision(r, 106).unwrap(), &spec).unwrap();
            assert_relative_eq!(lo, hi, max_relative = 1e-10);
        }
    }
}
