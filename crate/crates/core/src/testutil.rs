//! Proptest strategies shared by unit tests.

use std::f64::consts::PI;

use proptest::prelude::*;

use crate::character::Character;
use crate::linalg::{cis, Mat2};

/// Random valid characters: sorted draws rescaled to sum 2, kept if in (0, 1).
pub fn character_strategy() -> impl Strategy<Value = Character> {
    prop::array::uniform4(0.05..1.0f64).prop_filter_map("regular window", |mut a| {
        a.sort_by(f64::total_cmp);
        let s: f64 = a.iter().sum();
        Character::new(a.map(|x| 2.0 * x / s)).ok()
    })
}

/// Generic character with λ strictly inside its range and χ in (−π, π].
pub fn generic_params() -> impl Strategy<Value = (Character, f64, f64)> {
    (character_strategy(), 0.02..0.98f64, -PI..PI).prop_filter_map("generic", |(c, t, chi)| {
        let r = c.lambda_range().ok()?;
        if r.upper - r.lower < 1e-6 {
            return None;
        }
        Some((c, r.lower + t * (r.upper - r.lower), chi))
    })
}

/// Haar-ish random SU(2)·U(1) element.
pub fn unitary_strategy() -> impl Strategy<Value = Mat2> {
    (0.0..PI, -PI..PI, -PI..PI, -PI..PI).prop_map(|(t, a, b, g)| {
        let (s, co) = (t / 2.0).sin_cos();
        Mat2::new(cis(a) * co, -cis(b) * s, cis(g - b) * s, cis(g - a) * co)
    })
}
