//! Cabling operators on the SO(3) torus TQFT space at odd levels, and the
//! growth of Turaev–Viro invariants of knot complements built from them.

pub mod cabling;
pub mod error;
pub mod growth;
pub mod knots;
pub mod norm;
pub mod phase_sum;
pub mod qroots;
pub mod real;
pub mod torus_basis;

pub use cabling::{
    apply, cable_column, cabling_matrix, color_set, p2_factorization, p2_inverse, CablingOperator,
    ColorSet, Direction, ExactMatrix, IntMatrix, P2Factorization,
};
pub use error::{Error, Result};
pub use growth::{
    growth_point, norm_scan, sandwich_check, scan, GrowthPoint, GrowthSeries, LevelRange,
    NormReport, PowerFit, SandwichReport,
};
pub use knots::{
    figure8_cyclotomic, rt_vector, torus_knot_oracle, torus_knot_oracle_moduli, turaev_viro,
    KnotSpec,
};
pub use norm::{operator_norm, operator_norm_with, NormEstimate, NormOptions};
pub use phase_sum::PhaseSum;
pub use qroots::{eta, loop_value, phase, quantum_integer, PhaseExponent, TqftParameter};
pub use real::{Cx, Mp, Real};
pub use torus_basis::{
    evaluate_closure, inner_product, odd_basis_permutation, reduce_index, Permutation,
    ReducedBasisIndex, TqftVector,
};
