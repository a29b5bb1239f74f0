//! Characters of regular locally scalar representations and their derived
//! constants.
//!
//! A character is stored normalized, so the center weight is always 1. The
//! leaf weights must satisfy `0 < α₁ ≤ α₂ ≤ α₃ ≤ α₄ < 1` and `Σαᵢ = 2`. The
//! library never reorders them: leaf indices are part of the representation.

use crate::error::{Error, Result};
use crate::tolerance::TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Character {
    alpha: [f64; 4],
}

/// The shifts β and anticommutator constants γ of the x, y, z generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub beta: [f64; 3],
    pub gamma: [f64; 3],
}

/// Closed interval of admissible λ in the generic branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRange {
    pub lower: f64,
    pub upper: f64,
}

impl LambdaRange {
    pub fn contains(&self, lambda: f64, tol: f64) -> bool {
        lambda >= self.lower - tol && lambda <= self.upper + tol
    }
}

pub fn validate_character(alpha: [f64; 4]) -> Result<Character> {
    if alpha.iter().any(|a| !a.is_finite()) {
        return Err(Error::NonFinite);
    }
    if let Some(i) = alpha.iter().position(|&a| !(a > 0.0 && a < 1.0)) {
        return Err(Error::OutOfRange { index: i + 1 });
    }
    if alpha.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotSorted);
    }
    let sum: f64 = alpha.iter().sum();
    if (sum - 2.0).abs() > TOL.alpha_sum {
        return Err(Error::SumNotTwo { sum });
    }
    Ok(Character { alpha })
}

impl Character {
    /// The all-½ character.
    pub const EQUAL: Character = Character { alpha: [0.5; 4] };

    pub fn new(alpha: [f64; 4]) -> Result<Self> {
        validate_character(alpha)
    }

    /// Normalizes unnormalized weights `(α′₀; α′₁..α′₄)` by `αᵢ = α′ᵢ/α′₀`.
    pub fn from_raw(raw: [f64; 5]) -> Result<Self> {
        let a0 = raw[0];
        if !a0.is_finite() || raw.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite);
        }
        if a0 <= 0.0 {
            return Err(Error::OutOfRange { index: 0 });
        }
        validate_character([raw[1] / a0, raw[2] / a0, raw[3] / a0, raw[4] / a0])
    }

    pub fn alpha(&self) -> [f64; 4] {
        self.alpha
    }

    /// Leaf weight αᵢ for `i` in `1..=4`.
    pub fn weight(&self, i: usize) -> f64 {
        self.alpha[i - 1]
    }

    /// Center weight, fixed by normalization.
    pub fn alpha0(&self) -> f64 {
        1.0
    }

    pub fn derived(&self) -> DerivedConstants {
        derived_constants(self)
    }

    /// True when γ₃ vanishes, which forces all weights to ½.
    pub fn is_equal(&self) -> bool {
        self.derived().gamma[2].abs() <= TOL.degenerate_gamma
    }

    pub fn lambda_range(&self) -> Result<LambdaRange> {
        lambda_range(self)
    }

    pub fn max_abs_diff(&self, other: &Character) -> f64 {
        self.alpha
            .iter()
            .zip(other.alpha.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn derived_constants(c: &Character) -> DerivedConstants {
    let [a1, a2, a3, a4] = c.alpha;
    let beta = [
        (2.0 - a1 + a2 + a3 - a4) / 2.0,
        (2.0 + a1 - a2 + a3 - a4) / 2.0,
        (2.0 + a1 + a2 - a3 - a4) / 2.0,
    ];
    let (s1, s2, s3, s4) = (a1 * a1, a2 * a2, a3 * a3, a4 * a4);
    let gamma = [
        (s1 - s2 - s3 + s4) / 4.0,
        (-s1 + s2 - s3 + s4) / 4.0,
        (-s1 - s2 + s3 + s4) / 4.0,
    ];
    DerivedConstants { beta, gamma }
}

pub fn lambda_range(c: &Character) -> Result<LambdaRange> {
    if c.is_equal() {
        return Err(Error::DegenerateCharacter);
    }
    let [a1, a2, a3, a4] = c.alpha;
    Ok(LambdaRange {
        lower: (a4 - a1) / 2.0,
        upper: ((a2 + a3) / 2.0).min((a1 + a4) / 2.0),
    })
}
