//! The cabling operator `RT_r(C_{p,q})` on `RT_r(T²)`.
//!
//! Columns come from Morton's cabling formula
//!
//! ```text
//! C(e_i) = A^{pq(i²-1)/2} Σ_{k ∈ S_i} A^{-2pk(qk+1)} e_{2qk+1}
//! ```
//!
//! evaluated exactly: every coefficient is a [`PhaseSum`] and every exponent
//! lives in half-units modulo `4r`. For `q = 2` the matrix factors as a row
//! permutation times `diag · T · diag`, with `T` the alternating upper
//! triangular sign matrix, and the inverse has the same shape with the upper
//! bidiagonal matrix of ones in the middle.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::phase_sum::PhaseSum;
use crate::qroots::{phase_in, PhaseExponent, TqftParameter};
use crate::real::{Cx, Real};
use crate::torus_basis::{odd_basis_permutation, reduce_index, Permutation, TqftVector};

/// `S_i = {-(i-1)/2, …, (i-1)/2}`, stored as the integers `2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorSet {
    color: usize,
}

impl ColorSet {
    pub fn len(&self) -> usize {
        self.color
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The elements doubled, `2k ∈ {-(i-1), -(i-3), …, i-1}`.
    pub fn doubled(&self) -> impl Iterator<Item = i64> + Clone {
        let top = self.color as i64 - 1;
        (-top..=top).step_by(2)
    }

    pub fn elements(&self) -> Vec<f64> {
        self.doubled().map(|d| d as f64 / 2.0).collect()
    }
}

pub fn color_set(i: i64) -> Result<ColorSet> {
    if i < 1 {
        return Err(Error::NonPositiveColor(i));
    }
    Ok(ColorSet { color: i as usize })
}

pub(crate) fn check_cabling_pair(p: i64, q: i64) -> Result<()> {
    if q < 1 {
        return Err(Error::NonPositiveQ(q));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

fn check_color(param: &TqftParameter, i: i64) -> Result<()> {
    if i < 1 || i > param.m() as i64 {
        return Err(Error::ColorOutOfRange {
            color: i,
            max: param.m(),
        });
    }
    Ok(())
}

/// Exact image of `e_i` under the `(p, q)` cabling, as coordinates along
/// `e_1, …, e_m`.
pub fn cable_column(param: &TqftParameter, p: i64, q: i64, i: i64) -> Result<Vec<PhaseSum>> {
    check_cabling_pair(p, q)?;
    check_color(param, i)?;
    let mut terms: Vec<Vec<(PhaseExponent, i64)>> = vec![Vec::new(); param.m()];
    for k2 in color_set(i)?.doubled() {
        // With k = k2/2, the exponent of A in half-units is
        // pq(i²-1) - 4pk(qk+1) = pq(i²-1) - pq·k2² - 2p·k2.
        let half_units = p * q * (i * i - 1) - p * q * k2 * k2 - 2 * p * k2;
        let target = reduce_index(param, q * k2 + 1);
        if let Some(j) = target.index() {
            terms[j - 1].push((param.half_units(half_units), i64::from(target.sign())));
        }
    }
    Ok(terms.into_iter().map(PhaseSum::from_terms).collect())
}

/// Square matrix of exact phase sums, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<PhaseSum>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![PhaseSum::zero(); dim * dim],
        }
    }

    pub fn identity(param: &TqftParameter) -> Self {
        Self::diagonal(&vec![param.half_units(0); param.m()])
    }

    pub fn diagonal(phases: &[PhaseExponent]) -> Self {
        let mut out = Self::zeros(phases.len());
        for (k, &e) in phases.iter().enumerate() {
            out.entries[k * phases.len() + k] = PhaseSum::signed(1, e);
        }
        out
    }

    pub fn from_integers(param: &TqftParameter, m: &IntMatrix) -> Self {
        let one = param.half_units(0);
        ExactMatrix {
            dim: m.dim,
            entries: m.data.iter().map(|&c| PhaseSum::signed(c, one)).collect(),
        }
    }

    /// Matrix sending `e_j` to `e_{π(j)}`.
    pub fn permutation(param: &TqftParameter, perm: &Permutation) -> Self {
        let mut out = Self::zeros(perm.len());
        for j in 1..=perm.len() {
            out.set(perm.image(j), j, PhaseSum::one(param));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &PhaseSum {
        &self.entries[(row - 1) * self.dim + col - 1]
    }

    pub fn set(&mut self, row: usize, col: usize, value: PhaseSum) {
        self.entries[(row - 1) * self.dim + col - 1] = value;
    }

    pub fn entries(&self) -> &[PhaseSum] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let e = &self.entries[r * self.dim + c];
                if r == c {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Exact product, skipping zero entries on both sides.
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in exact product");
        let n = self.dim;
        let mut out = ExactMatrix::zeros(n);
        let mut acc: Vec<Vec<(PhaseExponent, i64)>> = vec![Vec::new(); n];
        for row in 0..n {
            for k in 0..n {
                let a = &self.entries[row * n + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.entries[k * n..(k + 1) * n];
                for (slot, b) in acc.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        slot.extend((a * b).terms().iter().copied());
                    }
                }
            }
            for (col, terms) in acc.iter_mut().enumerate() {
                out.entries[row * n + col] = PhaseSum::from_terms(terms.drain(..));
            }
        }
        out
    }

    pub fn numeric_in<R: Real>(&self, param: &TqftParameter) -> Vec<Cx<R>> {
        let table = phase_table::<R>(param);
        self.entries
            .iter()
            .map(|e| eval_with_table(e, &table, param.precision()))
            .collect()
    }

    pub fn numeric_view(&self, param: &TqftParameter) -> DMatrix<Complex64> {
        let values = self.numeric_in::<f64>(param);
        DMatrix::from_fn(self.dim, self.dim, |r, c| values[r * self.dim + c].to_c64())
    }
}

fn phase_table<R: Real>(param: &TqftParameter) -> Vec<Cx<R>> {
    (0..4 * i64::from(param.r()))
        .map(|n| phase_in::<R>(param, param.half_units(n)))
        .collect()
}

fn eval_with_table<R: Real>(e: &PhaseSum, table: &[Cx<R>], prec: u32) -> Cx<R> {
    e.terms().iter().fold(Cx::zero(prec), |acc, &(x, c)| {
        let z = &table[x.half_units() as usize];
        acc + match c {
            1 => z.clone(),
            -1 => -z.clone(),
            _ => z.scale(&R::from_i64(prec, c)),
        }
    })
}

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| i64::from(r == c))
    }

    /// 1-based `f(row, col)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let data = (0..dim * dim)
            .map(|k| f(k / dim + 1, k % dim + 1))
            .collect();
        IntMatrix { dim, data }
    }

    /// `T_{ji} = (-1)^{i-j}` for `j ≤ i`, zero below the diagonal.
    pub fn alternating_upper(dim: usize) -> Self {
        Self::from_fn(dim, |j, i| match i.checked_sub(j) {
            Some(d) if d % 2 == 0 => 1,
            Some(_) => -1,
            None => 0,
        })
    }

    /// Ones on the diagonal and the superdiagonal.
    pub fn upper_bidiagonal_ones(dim: usize) -> Self {
        Self::from_fn(dim, |j, i| i64::from(i == j || i == j + 1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[(row - 1) * self.dim + col - 1]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut data = vec![0i64; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        IntMatrix { dim: n, data }
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| {
            Complex64::new(self.data[r * self.dim + c] as f64, 0.0)
        })
    }
}

/// Which map a [`CablingOperator`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `RT_r(C_{p,q})` (or its inverse) in the basis `e_1, …, e_m` on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct CablingOperator {
    param: TqftParameter,
    p: i64,
    q: i64,
    direction: Direction,
    matrix: ExactMatrix,
}

impl CablingOperator {
    pub fn param(&self) -> &TqftParameter {
        &self.param
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Coefficient of `e_row` in the image of `e_col`.
    pub fn entry(&self, row: usize, col: usize) -> &PhaseSum {
        self.matrix.get(row, col)
    }

    pub fn numeric_view(&self) -> DMatrix<Complex64> {
        self.matrix.numeric_view(&self.param)
    }

    /// Exact composition `self ∘ rhs`.
    pub fn compose(&self, rhs: &CablingOperator) -> ExactMatrix {
        self.matrix.mul(&rhs.matrix)
    }
}

/// The matrix of `RT_r(C_{p,q})` with column `i` equal to [`cable_column`].
pub fn cabling_matrix(param: &TqftParameter, p: i64, q: i64) -> Result<CablingOperator> {
    check_cabling_pair(p, q)?;
    let m = param.m();
    let mut matrix = ExactMatrix::zeros(m);
    for i in 1..=m {
        for (row, value) in cable_column(param, p, q, i as i64)?.into_iter().enumerate() {
            if q == 2 {
                assert!(
                    value.is_zero()
                        || matches!(value.single_term(), Some((c, e)) if c.abs() == 1 && e.a_exponent().is_some()),
                    "(p,2) entries must be single signed integral powers of A"
                );
            }
            matrix.set(row + 1, i, value);
        }
    }
    Ok(CablingOperator {
        param: *param,
        p,
        q,
        direction: Direction::Forward,
        matrix,
    })
}

fn check_odd(p: i64) -> Result<()> {
    if p % 2 == 0 {
        return Err(Error::EvenP(p));
    }
    Ok(())
}

/// `RT_r(C_{p,2}) = P · diag(A^{p(j-j²)}) · T · diag(A^{p(i²-1)})`, where `P`
/// sends `e_j` to the canonical label of `e_{2j-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct P2Factorization {
    param: TqftParameter,
    p: i64,
    pub left_diag: Vec<PhaseExponent>,
    pub middle: IntMatrix,
    pub right_diag: Vec<PhaseExponent>,
    pub perm: Permutation,
}

impl P2Factorization {
    pub fn p(&self) -> i64 {
        self.p
    }

    /// Exact product `P · L · T · R`.
    pub fn compose(&self) -> ExactMatrix {
        let left = ExactMatrix::diagonal(&self.left_diag);
        let middle = ExactMatrix::from_integers(&self.param, &self.middle);
        let right = ExactMatrix::diagonal(&self.right_diag);
        let perm = ExactMatrix::permutation(&self.param, &self.perm);
        perm.mul(&left.mul(&middle.mul(&right)))
    }
}

pub fn p2_factorization(param: &TqftParameter, p: i64) -> Result<P2Factorization> {
    check_odd(p)?;
    let m = param.m() as i64;
    Ok(P2Factorization {
        param: *param,
        p,
        left_diag: (1..=m).map(|j| param.a_power(p * (j - j * j))).collect(),
        middle: IntMatrix::alternating_upper(param.m()),
        right_diag: (1..=m).map(|i| param.a_power(p * (i * i - 1))).collect(),
        perm: odd_basis_permutation(param),
    })
}

/// `RT_r(C_{p,2})^{-1} = diag(A^{p(1-i²)}) · B · diag(A^{p(j²-j)}) · P^{-1}`,
/// with `B` the upper bidiagonal matrix of ones.
pub fn p2_inverse(param: &TqftParameter, p: i64) -> Result<CablingOperator> {
    check_odd(p)?;
    let m = param.m() as i64;
    let left = ExactMatrix::diagonal(
        &(1..=m)
            .map(|i| param.a_power(p * (1 - i * i)))
            .collect::<Vec<_>>(),
    );
    let middle = ExactMatrix::from_integers(param, &IntMatrix::upper_bidiagonal_ones(param.m()));
    let right = ExactMatrix::diagonal(
        &(1..=m)
            .map(|j| param.a_power(p * (j * j - j)))
            .collect::<Vec<_>>(),
    );
    let unpermute = ExactMatrix::permutation(param, &odd_basis_permutation(param).inverse());
    Ok(CablingOperator {
        param: *param,
        p,
        q: 2,
        direction: Direction::Inverse,
        matrix: left.mul(&middle.mul(&right.mul(&unpermute))),
    })
}

/// Matrix–vector product at the vector's working precision.
pub fn apply<R: Real>(op: &CablingOperator, v: &TqftVector<R>) -> Result<TqftVector<R>> {
    if v.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: v.dim(),
        });
    }
    let param = op.param();
    let prec = param.precision();
    let table = phase_table::<R>(param);
    let n = op.dim();
    let out = (1..=n)
        .map(|row| {
            (1..=n).fold(Cx::zero(prec), |acc, col| {
                let e = op.entry(row, col);
                if e.is_zero() {
                    acc
                } else {
                    acc + eval_with_table(e, &table, prec) * v.coord(col).clone()
                }
            })
        })
        .collect();
    Ok(TqftVector::from_vec_unchecked(out))
}
