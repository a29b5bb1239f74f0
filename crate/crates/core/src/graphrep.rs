//! Locally scalar representations of the D̃₄ star graph in dimension
//! (2; 1, 1, 1, 1), and their correspondence with projector quadruples.
//!
//! The center space is ℂ², each leaf space is ℂ. Edge maps `Γ₀ᵢ: ℂ → ℂ²` are
//! stored as column vectors with `Γ₀ᵢ*Γ₀ᵢ = αᵢ` at the leaves and
//! `Σ Γ₀ᵢΓ₀ᵢ* = I` at the center; the projectors are `Pᵢ = Γ₀ᵢΓ₀ᵢ*/αᵢ`.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::constructor::ProjectorQuadruple;
use crate::error::{Error, Result};
use crate::linalg::{c, cis, Mat2, Vec2};
use crate::tolerance::TOL;

pub const DIMENSION: [usize; 5] = [2, 1, 1, 1, 1];

/// Rank-one test threshold on |tr P − 1| and |det P|.
const RANK_ONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphRepresentation {
    pub gamma: [Vec2; 4],
    pub character: Character,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarityReport {
    /// ‖A₀ − I‖_max with `A₀ = Σ Γ₀ᵢΓ₀ᵢ*`.
    pub a0_residual: f64,
    /// |Aᵢ − αᵢ| with `Aᵢ = Γ₀ᵢ*Γ₀ᵢ`.
    pub leaf_residuals: [f64; 4],
}

impl ScalarityReport {
    pub fn max(&self) -> f64 {
        self.leaf_residuals.iter().copied().fold(self.a0_residual, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max() <= TOL.scalarity
    }
}

/// Which normalization the edge maps follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaConvention {
    /// `Γ₀ᵢ*Γ₀ᵢ = αᵢ`; the representation is locally scalar.
    Scaled,
    /// `Γ₀ᵢ*Γ₀ᵢ = 1`; the maps are isometries and `A₀ = ΣPᵢ`.
    Isometric,
}

impl GraphRepresentation {
    pub fn dim(&self) -> [usize; 5] {
        DIMENSION
    }

    /// Center operator `A₀ = Σ Γ₀ᵢΓ₀ᵢ*`.
    pub fn center_operator(&self) -> Mat2 {
        self.gamma.iter().fold(Mat2::ZERO, |acc, g| acc + g.outer())
    }

    /// Leaf operators `Aᵢ = Γ₀ᵢ*Γ₀ᵢ`.
    pub fn leaf_operators(&self) -> [f64; 4] {
        self.gamma.map(|g| g.norm_sqr())
    }

    /// Detects the edge normalization from the leaf operators, if either fits.
    pub fn convention(&self, tol: f64) -> Option<GammaConvention> {
        let leaves = self.leaf_operators();
        let alpha = self.character.alpha();
        if leaves.iter().zip(alpha).all(|(l, a)| (l - a).abs() <= tol) {
            Some(GammaConvention::Scaled)
        } else if leaves.iter().all(|l| (l - 1.0).abs() <= tol) {
            Some(GammaConvention::Isometric)
        } else {
            None
        }
    }

    /// Rescales isometric edge maps by √αᵢ; scaled maps are returned as is.
    pub fn to_scaled(&self, from: GammaConvention) -> GraphRepresentation {
        match from {
            GammaConvention::Scaled => *self,
            GammaConvention::Isometric => {
                let mut g = *self;
                for (v, a) in g.gamma.iter_mut().zip(self.character.alpha()) {
                    *v = v.scale(a.sqrt());
                }
                g
            }
        }
    }
}

/// Unit vector spanning the range of a rank-one projector, first nonzero
/// component real non-negative.
fn range_vector(p: &Mat2) -> Vec2 {
    let (p11, p22) = (p.get(0, 0).re, p.get(1, 1).re);
    let v = if p11 >= p22 {
        p.col(0).scale(1.0 / p11.max(f64::MIN_POSITIVE).sqrt())
    } else {
        p.col(1).scale(1.0 / p22.max(f64::MIN_POSITIVE).sqrt())
    };
    v.scale(1.0 / v.norm()).phase_fixed()
}

pub fn to_graph_rep(q: &ProjectorQuadruple) -> Result<GraphRepresentation> {
    let mut gamma = [Vec2::real(0.0, 0.0); 4];
    for (i, (p, a)) in q.p.iter().zip(q.character.alpha()).enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        let rank_one = (p.trace() - 1.0).norm() <= RANK_ONE_TOL
            && p.det().norm() <= RANK_ONE_TOL
            && p.hermitian_residual() <= RANK_ONE_TOL;
        if !rank_one {
            return Err(Error::NotRankOne { index: i + 1 });
        }
        gamma[i] = range_vector(p).scale(a.sqrt());
    }
    Ok(GraphRepresentation {
        gamma,
        character: q.character,
    })
}

pub fn from_graph_rep(g: &GraphRepresentation) -> Result<ProjectorQuadruple> {
    if g.gamma.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let report = verify_locally_scalar(g);
    if !report.passes() {
        return Err(Error::ScalarityViolated { residual: report.max() });
    }
    let alpha = g.character.alpha();
    let p = [0, 1, 2, 3].map(|i| g.gamma[i].outer().scale(1.0 / alpha[i]));
    Ok(ProjectorQuadruple::new(p, g.character))
}

pub fn verify_locally_scalar(g: &GraphRepresentation) -> ScalarityReport {
    let alpha = g.character.alpha();
    let leaves = g.leaf_operators();
    ScalarityReport {
        a0_residual: g.center_operator().distance_to_scalar(g.character.alpha0()),
        leaf_residuals: [0, 1, 2, 3].map(|i| (leaves[i] - alpha[i]).abs()),
    }
}

/// The isometric edge columns of the generic family written out in λ, χ and
/// the weights. Multiply by √αᵢ to compare with [`to_graph_rep`].
pub fn printed_columns(ch: &Character, lambda: f64, chi: f64) -> Result<[Vec2; 4]> {
    if ch.is_equal() {
        return Err(Error::DegenerateCharacter);
    }
    if lambda.is_nan() || lambda <= 0.0 || !lambda.is_finite() || !chi.is_finite() {
        return Err(Error::LambdaOutOfRange { lambda });
    }
    let [a1, a2, a3, a4] = ch.alpha();
    let l2 = lambda * lambda;
    let d14 = (a4 * a4 - a1 * a1) / 4.0;
    let d23 = (a3 * a3 - a2 * a2) / 4.0;
    // tiny negative arguments appear at the ends of the λ range
    let root = |num: f64, a: f64| (num / (2.0 * a * lambda)).max(0.0).sqrt();
    let e = cis(-chi);

    Ok([
        Vec2::real(root(l2 + a1 * lambda - d14, a1), root(-l2 + a1 * lambda + d14, a1)),
        Vec2::new(
            c(root(-l2 + a2 * lambda + d23, a2), 0.0),
            e * root(l2 + a2 * lambda - d23, a2),
        ),
        Vec2::new(
            c(root(-l2 + a3 * lambda - d23, a3), 0.0),
            -e * root(l2 + a3 * lambda + d23, a3),
        ),
        Vec2::real(root(l2 + a4 * lambda + d14, a4), -root(-l2 + a4 * lambda - d14, a4)),
    ])
}
