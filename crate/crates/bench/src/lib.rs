//! Inputs shared by the benchmarks.

use tvcable_core::{KnotSpec, TqftParameter};

pub fn level(r: i64) -> TqftParameter {
    TqftParameter::new(r).expect("benchmark levels are odd and at least 3")
}

pub fn knot(spec: &str) -> KnotSpec {
    spec.parse().expect("benchmark specs are valid")
}
