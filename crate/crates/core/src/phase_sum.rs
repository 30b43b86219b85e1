//! Exact formal sums `Σ c_k A^{n_k/2}` with integer coefficients.
//!
//! The canonical form folds exponents into `[0, 2r)` half-units through
//! `A^r = -1`, merges equal exponents and drops zero coefficients. Equality of
//! canonical forms therefore implies equality of the complex values, which is
//! all the exact matrix identities need.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qroots::{phase_in, PhaseExponent, TqftParameter};
use crate::real::{Cx, Real};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PhaseSum {
    // sorted by exponent, coefficients nonzero, exponents below 2r
    terms: Vec<(PhaseExponent, i64)>,
}

fn fold(e: PhaseExponent, c: i64) -> (PhaseExponent, i64) {
    if e.half_units() >= 2 * e.level() {
        (e.half_turn(), -c)
    } else {
        (e, c)
    }
}

impl PhaseSum {
    pub fn zero() -> Self {
        PhaseSum::default()
    }

    /// `±A^{e}`.
    pub fn signed(sign: i64, e: PhaseExponent) -> Self {
        Self::from_terms([(e, sign)])
    }

    pub fn one(param: &TqftParameter) -> Self {
        Self::signed(1, param.half_units(0))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PhaseExponent, i64)>) -> Self {
        let mut folded: Vec<_> = terms
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| fold(e, c))
            .collect();
        folded.sort_unstable_by_key(|&(e, _)| e);
        let mut terms: Vec<(PhaseExponent, i64)> = Vec::with_capacity(folded.len());
        for (e, c) in folded {
            match terms.last_mut() {
                Some((last, acc)) if *last == e => *acc += c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|&(_, c)| c != 0);
        PhaseSum { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(PhaseExponent, i64)] {
        &self.terms
    }

    /// `Some((c, e))` when the sum is the single term `c·A^{e}`.
    pub fn single_term(&self) -> Option<(i64, PhaseExponent)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*c, *e)),
            _ => None,
        }
    }

    /// Whether the sum is exactly `1`.
    pub fn is_one(&self) -> bool {
        matches!(self.single_term(), Some((1, e)) if e.is_zero())
    }

    pub fn eval_in<R: Real>(&self, param: &TqftParameter) -> Cx<R> {
        let prec = param.precision();
        self.terms.iter().fold(Cx::zero(prec), |acc, &(e, c)| {
            acc + phase_in::<R>(param, e).scale(&R::from_i64(prec, c))
        })
    }

    pub fn eval(&self, param: &TqftParameter) -> num_complex::Complex64 {
        self.eval_in::<f64>(param).to_c64()
    }
}

impl Add for &PhaseSum {
    type Output = PhaseSum;
    fn add(self, rhs: &PhaseSum) -> PhaseSum {
        PhaseSum::from_terms(self.terms.iter().chain(&rhs.terms).copied())
    }
}

impl Add for PhaseSum {
    type Output = PhaseSum;
    fn add(self, rhs: PhaseSum) -> PhaseSum {
        &self + &rhs
    }
}

impl Neg for &PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        PhaseSum {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        -&self
    }
}

impl Sub for &PhaseSum {
    type Output = PhaseSum;
    fn sub(self, rhs: &PhaseSum) -> PhaseSum {
        self + &(-rhs)
    }
}

impl Mul for &PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: &PhaseSum) -> PhaseSum {
        PhaseSum::from_terms(
            self.terms
                .iter()
                .flat_map(|&(a, x)| rhs.terms.iter().map(move |&(b, y)| (a + b, x * y))),
        )
    }
}

impl Mul for PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: PhaseSum) -> PhaseSum {
        &self * &rhs
    }
}

impl fmt::Display for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, &(e, c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if k > 0 {
                f.write_str(" ")?;
            }
            match (mag, e.is_zero()) {
                (_, true) => write!(f, "{sign}{mag}")?,
                (1, false) => write!(f, "{sign}{e}")?,
                _ => write!(f, "{sign}{mag}·{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(r: i64) -> TqftParameter {
        TqftParameter::new(r).unwrap()
    }

    #[test]
    fn folding_uses_half_turn() {
        let t = p(5);
        // A^5 = -1
        assert_eq!(PhaseSum::signed(1, t.a_power(5)), -PhaseSum::one(&t));
        // A^7 = -A^2
        assert_eq!(
            PhaseSum::signed(1, t.a_power(7)),
            PhaseSum::signed(-1, t.a_power(2))
        );
        assert!((PhaseSum::signed(1, t.a_power(3)) + PhaseSum::signed(1, t.a_power(8))).is_zero());
    }

    #[test]
    fn display() {
        let t = p(5);
        let s = PhaseSum::signed(-1, t.a_power(3)) + PhaseSum::one(&t);
        assert_eq!(s.to_string(), "1 -A^3");
        assert_eq!(PhaseSum::zero().to_string(), "0");
        assert!(PhaseSum::one(&t).is_one());
    }

    fn small_sum(r: i64) -> impl Strategy<Value = PhaseSum> {
        prop::collection::vec((-200i64..200, -3i64..=3), 0..5).prop_map(move |ts| {
            let t = p(r);
            PhaseSum::from_terms(ts.into_iter().map(|(n, c)| (t.half_units(n), c)))
        })
    }

    proptest! {
        #[test]
        fn exact_ops_match_numeric(a in small_sum(11), b in small_sum(11)) {
            let t = p(11);
            let (x, y) = (a.eval(&t), b.eval(&t));
            prop_assert!(((&a * &b).eval(&t) - x * y).norm() < 1e-10);
            prop_assert!(((&a + &b).eval(&t) - (x + y)).norm() < 1e-10);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_form(a in small_sum(7)) {
            for &(e, c) in a.terms() {
                prop_assert!(c != 0);
                prop_assert!(e.half_units() < 14);
            }
            prop_assert!(a.terms().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }
}
