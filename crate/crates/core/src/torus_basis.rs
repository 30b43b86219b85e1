//! The torus space `RT_r(T²)`: reduction of arbitrary labels `e_l` onto the
//! orthonormal basis `e_1, …, e_m`, dense vectors and the Hermitian form.

use std::ops::Neg;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qroots::{loop_value_in, TqftParameter};
use crate::real::{Cx, Real};

/// `e_l = sign · e_index`, or the zero vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducedBasisIndex {
    sign: i8,
    index: usize,
}

impl ReducedBasisIndex {
    pub const ZERO: ReducedBasisIndex = ReducedBasisIndex { sign: 0, index: 0 };

    pub fn new(sign: i8, index: usize) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        assert!(index >= 1, "basis labels start at 1");
        ReducedBasisIndex { sign, index }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The canonical label in `[1, m]`, or `None` for the zero vector.
    pub fn index(&self) -> Option<usize> {
        (self.sign != 0).then_some(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
}

impl Neg for ReducedBasisIndex {
    type Output = ReducedBasisIndex;
    fn neg(self) -> Self {
        ReducedBasisIndex {
            sign: -self.sign,
            index: self.index,
        }
    }
}

/// Reduces any integer label using `e_{l+r} = -e_l`, `e_{-l} = -e_l` and
/// `e_{m-i} = e_{m+1+i}`.
pub fn reduce_index(param: &TqftParameter, l: i64) -> ReducedBasisIndex {
    let r = i64::from(param.r());
    let m = param.m() as i64;
    let k = l.div_euclid(r);
    let residue = l.rem_euclid(r);
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    match residue {
        0 => ReducedBasisIndex::ZERO,
        j if j <= m => ReducedBasisIndex::new(sign, j as usize),
        j => ReducedBasisIndex::new(sign, (r - j) as usize),
    }
}

/// Value of the closure of `e_l` in `S³`: the loop value of its reduction.
pub fn evaluate_closure(param: &TqftParameter, l: i64) -> f64 {
    evaluate_closure_in::<f64>(param, l)
}

pub fn evaluate_closure_in<R: Real>(param: &TqftParameter, l: i64) -> R {
    let red = reduce_index(param, l);
    match red.index() {
        None => R::zero(param.precision()),
        Some(j) => {
            let v = loop_value_in::<R>(param, j as i64).expect("canonical labels are positive");
            if red.sign() < 0 {
                -v
            } else {
                v
            }
        }
    }
}

/// `π(j)`: the canonical label of `e_{2j-1}`, for `j = 1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    // images[j - 1] = π(j)
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `π(j)` for a 1-based `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (j, &pj) in self.images.iter().enumerate() {
            inv[pj - 1] = j + 1;
        }
        Permutation { images: inv }
    }
}

pub fn odd_basis_permutation(param: &TqftParameter) -> Permutation {
    let images = (1..=param.m() as i64)
        .map(|j| {
            let red = reduce_index(param, 2 * j - 1);
            debug_assert_eq!(red.sign(), 1);
            red.index().expect("odd labels below r never vanish")
        })
        .collect();
    Permutation::from_images(images).expect("odd labels cover the basis exactly once")
}

/// Coordinates of a vector of `RT_r(T²)` in the basis `e_1, …, e_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TqftVector<R = f64> {
    coords: Vec<Cx<R>>,
}

impl<R: Real> TqftVector<R> {
    pub fn zeros(param: &TqftParameter) -> Self {
        TqftVector {
            coords: vec![Cx::zero(param.precision()); param.m()],
        }
    }

    /// The basis vector `e_j` for `1 ≤ j ≤ m`.
    pub fn basis(param: &TqftParameter, j: usize) -> Result<Self> {
        if j == 0 || j > param.m() {
            return Err(Error::ColorOutOfRange {
                color: j as i64,
                max: param.m(),
            });
        }
        let mut v = Self::zeros(param);
        v.coords[j - 1] = Cx::real(R::one(param.precision()), param.precision());
        Ok(v)
    }

    pub fn from_coords(param: &TqftParameter, coords: Vec<Cx<R>>) -> Result<Self> {
        if coords.len() != param.m() {
            return Err(Error::DimensionMismatch {
                expected: param.m(),
                found: coords.len(),
            });
        }
        Ok(TqftVector { coords })
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<Cx<R>>) -> Self {
        TqftVector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Cx<R>] {
        &self.coords
    }

    /// Coordinate along `e_j`, 1-based.
    pub fn coord(&self, j: usize) -> &Cx<R> {
        &self.coords[j - 1]
    }

    pub fn norm_sqr(&self) -> R {
        let mut it = self.coords.iter().map(Cx::norm_sqr);
        let first = it.next().expect("torus spaces have m >= 1");
        it.fold(first, |acc, x| acc + x)
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coords.iter().map(Cx::to_c64).collect()
    }
}

impl TqftVector<f64> {
    pub fn from_c64(param: &TqftParameter, coords: &[Complex64]) -> Result<Self> {
        Self::from_coords(param, coords.iter().map(|z| Cx::new(z.re, z.im)).collect())
    }
}

/// `⟨u, v⟩ = Σ u_j conj(v_j)`.
pub fn inner_product<R: Real>(u: &TqftVector<R>, v: &TqftVector<R>) -> Result<Cx<R>> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    let mut terms = u
        .coords
        .iter()
        .zip(&v.coords)
        .map(|(a, b)| a.clone() * b.conj());
    let first = terms.next().expect("torus spaces have m >= 1");
    Ok(terms.fold(first, |acc, x| acc + x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qroots::loop_value;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn p(r: i64) -> TqftParameter {
        TqftParameter::new(r).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_index(&p(5), 3), ReducedBasisIndex::new(1, 2));
        assert_eq!(reduce_index(&p(5), 7), ReducedBasisIndex::new(-1, 2));
        assert_eq!(reduce_index(&p(5), -1), ReducedBasisIndex::new(-1, 1));
        for r in [3, 5, 9, 101] {
            assert_eq!(reduce_index(&p(r), 0), ReducedBasisIndex::ZERO);
            assert_eq!(reduce_index(&p(r), r), ReducedBasisIndex::ZERO);
            assert_eq!(reduce_index(&p(r), 0).index(), None);
        }
    }

    #[test]
    fn inner_product_examples() {
        let t = p(5);
        let e1 = TqftVector::<f64>::basis(&t, 1).unwrap();
        let e2 = TqftVector::<f64>::basis(&t, 2).unwrap();
        assert_eq!(inner_product(&e1, &e1).unwrap(), Cx::new(1.0, 0.0));
        assert_eq!(inner_product(&e1, &e2).unwrap(), Cx::new(0.0, 0.0));
        let v = TqftVector::from_c64(&t, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)])
            .unwrap();
        assert_eq!(inner_product(&v, &v).unwrap(), Cx::new(2.0, 0.0));

        let w = TqftVector::<f64>::basis(&p(7), 1).unwrap();
        assert_eq!(
            inner_product(&v, &w),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(TqftVector::<f64>::basis(&t, 3).is_err());
    }

    #[test]
    fn odd_permutation_examples() {
        assert_eq!(odd_basis_permutation(&p(3)).images(), &[1]);
        assert_eq!(odd_basis_permutation(&p(5)).images(), &[1, 2]);
        assert_eq!(odd_basis_permutation(&p(7)).images(), &[1, 3, 2]);
    }

    #[test]
    fn odd_permutation_is_positive_bijection() {
        for r in (3..=501).step_by(2) {
            let t = p(r);
            let perm = odd_basis_permutation(&t);
            assert_eq!(perm.len(), t.m());
            for j in 1..=t.m() {
                let red = reduce_index(&t, 2 * j as i64 - 1);
                assert_eq!(red.sign(), 1);
                assert_eq!(red.index(), Some(perm.image(j)));
            }
            let inv = perm.inverse();
            for j in 1..=t.m() {
                assert_eq!(inv.image(perm.image(j)), j);
            }
        }
    }

    #[test]
    fn closure_examples() {
        let t = p(5);
        let via_reduction = evaluate_closure(&t, 3);
        assert_abs_diff_eq!(via_reduction, loop_value(&t, 2).unwrap(), epsilon = 1e-15);
        assert_abs_diff_eq!(via_reduction, -0.61803, epsilon = 1e-5);
        let unreduced = loop_value(&t, 3).unwrap();
        assert_abs_diff_eq!(
            unreduced,
            (6.0 * std::f64::consts::PI / 5.0).sin() / (2.0 * std::f64::consts::PI / 5.0).sin(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(via_reduction, unreduced, epsilon = 1e-12);
        for r in [3, 7, 11] {
            assert_eq!(evaluate_closure(&p(r), 0), 0.0);
        }
    }

    fn label_case() -> impl Strategy<Value = (i64, i64)> {
        (1i64..250).prop_flat_map(|k| {
            let r = 2 * k + 1;
            (Just(r), -10 * r..=10 * r)
        })
    }

    proptest! {
        #[test]
        fn shift_by_level_flips_sign((r, l) in label_case()) {
            let t = p(r);
            prop_assert_eq!(reduce_index(&t, l + r), -reduce_index(&t, l));
        }

        #[test]
        fn negation_flips_sign((r, l) in label_case()) {
            let t = p(r);
            prop_assert_eq!(reduce_index(&t, -l), -reduce_index(&t, l));
        }

        #[test]
        fn symmetry_principle((r, l) in label_case()) {
            let t = p(r);
            let l = 1 + l.rem_euclid(r - 1);
            prop_assert_eq!(reduce_index(&t, r - l), reduce_index(&t, l));
        }

        #[test]
        fn canonical_range((r, l) in label_case()) {
            let t = p(r);
            let red = reduce_index(&t, l);
            prop_assert_eq!(red.is_zero(), l % r == 0);
            if let Some(j) = red.index() {
                prop_assert!((1..=t.m()).contains(&j));
            }
        }

        #[test]
        fn closure_route_independence((r, l) in label_case()) {
            let t = p(r);
            let unreduced = if l % r == 0 {
                0.0
            } else {
                let s = if (l - 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let two_pi = 2.0 * std::f64::consts::PI;
                s * (two_pi * l as f64 / r as f64).sin() / (two_pi / r as f64).sin()
            };
            prop_assert!((evaluate_closure(&t, l) - unreduced).abs() <= 1e-12);
        }
    }
}
