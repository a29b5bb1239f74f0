//! Geometric ground truth for the projector family.
//!
//! A rank-one projector on ℂ² is `P = ½(I + n·σ)` for a unit vector `n`, and
//! `Σαᵢ Pᵢ = I` with `Σαᵢ = 2` is the same as the closed linkage
//! `Σαᵢ nᵢ = 0`. The sampler below draws such linkages directly on the sphere,
//! never touching the closed-form family, and [`cross_check`] verifies that
//! each sample is unitarily equivalent to a member of that family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::UnitSphere;
use serde::{Deserialize, Serialize};

use crate::analysis::{canonicalize, commutant_dimension, unitary_equivalent};
use crate::character::Character;
use crate::constructor::ProjectorQuadruple;
use crate::error::{Error, Result};
use crate::linalg::{c, Mat2};
use crate::tolerance::TOL;

pub type Vec3 = [f64; 3];

const MAX_REJECTIONS: usize = 1_000_000;

/// Equivalence tolerance used by [`cross_check`].
pub const CROSS_CHECK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochQuadruple {
    pub n: [Vec3; 4],
    pub character: Character,
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axpy(a: f64, x: Vec3, y: Vec3) -> Vec3 {
    [a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2]]
}

fn scale(a: f64, x: Vec3) -> Vec3 {
    [a * x[0], a * x[1], a * x[2]]
}

impl BlochQuadruple {
    /// |Σαᵢ nᵢ|
    pub fn closure_residual(&self) -> f64 {
        let s = self
            .n
            .iter()
            .zip(self.character.alpha())
            .fold([0.0; 3], |acc, (n, a)| axpy(a, *n, acc));
        norm(s)
    }

    pub fn unit_residual(&self) -> f64 {
        self.n.iter().map(|n| (norm(*n) - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Half the length of `α₂n₂ + α₃n₃`, which equals the positive eigenvalue
    /// of `X = α₂P₂ + α₃P₃ − ½(α₂+α₃)I`.
    pub fn lambda(&self) -> f64 {
        let [_, a2, a3, _] = self.character.alpha();
        0.5 * norm(axpy(a2, self.n[1], scale(a3, self.n[2])))
    }
}

/// `½(I + n·σ)`
pub fn projector_from_vector(n: Vec3) -> Mat2 {
    Mat2::new(
        c(0.5 * (1.0 + n[2]), 0.0),
        c(0.5 * n[0], -0.5 * n[1]),
        c(0.5 * n[0], 0.5 * n[1]),
        c(0.5 * (1.0 - n[2]), 0.0),
    )
}

/// The vector `n` with `P = ½(I + n·σ)`, read off the entries of `P`.
pub fn vector_from_projector(p: &Mat2) -> Vec3 {
    let off = p.get(0, 1);
    [2.0 * off.re, -2.0 * off.im, p.get(0, 0).re - p.get(1, 1).re]
}

pub fn bloch_from_projectors(q: &ProjectorQuadruple) -> Result<BlochQuadruple> {
    let mut n = [[0.0; 3]; 4];
    for (i, p) in q.p.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        let v = vector_from_projector(p);
        let rank_one =
            (norm(v) - 1.0).abs() <= 1e-9 && (p.trace() - 1.0).norm() <= 1e-9 && p.hermitian_residual() <= 1e-9;
        if !rank_one {
            return Err(Error::NotRankOne { index: i + 1 });
        }
        n[i] = v;
    }
    Ok(BlochQuadruple {
        n,
        character: q.character,
    })
}

pub fn projectors_from_bloch(b: &BlochQuadruple) -> Result<ProjectorQuadruple> {
    if b.n.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let unit = b.unit_residual();
    let closure = b.closure_residual();
    if unit > TOL.bloch_unit || closure > TOL.bloch_closure {
        return Err(Error::ClosureViolated {
            residual: unit.max(closure),
        });
    }
    Ok(ProjectorQuadruple::new(b.n.map(projector_from_vector), b.character))
}

/// Orthonormal pair spanning the plane perpendicular to the unit vector `w`.
fn perpendicular_basis(w: Vec3) -> (Vec3, Vec3) {
    // cross with the coordinate axis least aligned with w
    let axis = if w[0].abs() <= w[1].abs() && w[0].abs() <= w[2].abs() {
        [1.0, 0.0, 0.0]
    } else if w[1].abs() <= w[2].abs() {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let e1 = cross(w, axis);
    let e1 = scale(1.0 / norm(e1), e1);
    (e1, cross(w, e1))
}

/// Random closed linkage `Σαᵢnᵢ = 0` on the unit sphere.
///
/// `n₁` is uniform; `n₄` is uniform subject to `w = −α₁n₁ − α₄n₄` having a
/// length the pair `(α₂, α₃)` can reach; `w = α₂n₂ + α₃n₃` is then split by
/// triangle closure with a uniform dihedral angle.
pub fn sample_linkage_with<R: Rng + ?Sized>(c: &Character, rng: &mut R) -> Result<BlochQuadruple> {
    let [a1, a2, a3, a4] = c.alpha();
    let n1: Vec3 = rng.sample(UnitSphere);
    let (lo, hi) = (a3 - a2, a2 + a3);

    for _ in 0..MAX_REJECTIONS {
        let n4: Vec3 = rng.sample(UnitSphere);
        let w = axpy(-a1, n1, scale(-a4, n4));
        let len = norm(w);
        if len < lo || len > hi {
            continue;
        }
        let psi = rng.gen_range(0.0..std::f64::consts::TAU);
        let w_hat = if len > 0.0 {
            scale(1.0 / len, w)
        } else {
            [0.0, 0.0, 1.0]
        };
        let cos_t = if len > 0.0 {
            ((len * len + a2 * a2 - a3 * a3) / (2.0 * len * a2)).clamp(-1.0, 1.0)
        } else {
            0.0
        };
        let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
        let (e1, e2) = perpendicular_basis(w_hat);
        let side = axpy(psi.cos(), e1, scale(psi.sin(), e2));
        let n2 = axpy(cos_t, w_hat, scale(sin_t, side));
        let n3 = scale(1.0 / a3, axpy(-a2, n2, w));
        return Ok(BlochQuadruple {
            n: [n1, n2, n3, n4],
            character: *c,
        });
    }
    Err(Error::SamplingExhausted)
}

/// Seeded generator for one trial: ChaCha8 keyed by `seed`, stream `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn sample_linkage(c: &Character, seed: u64) -> Result<BlochQuadruple> {
    sample_linkage_with(c, &mut trial_rng(seed, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub trials: usize,
    pub passes: usize,
    pub decomposable_skipped: usize,
    pub max_equiv_residual: f64,
}

impl CrossCheckReport {
    pub fn failures(&self) -> usize {
        self.trials - self.passes - self.decomposable_skipped
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TrialOutcome {
    Pass(f64),
    Fail(f64),
    Skipped,
}

fn run_trial(c: &Character, seed: u64, trial: u64) -> TrialOutcome {
    let outcome = || -> Result<TrialOutcome> {
        let sample = sample_linkage_with(c, &mut trial_rng(seed, trial))?;
        let q = projectors_from_bloch(&sample)?;
        if commutant_dimension(&q) > 1 {
            return Ok(TrialOutcome::Skipped);
        }
        let form = canonicalize(&q)?;
        let family = form.rebuild_closed_form()?;
        let residual = q.conjugated(&form.gauge).max_abs_diff(&family);
        let equivalent = unitary_equivalent(&q, &family, CROSS_CHECK_TOL)?;
        Ok(if equivalent && residual <= CROSS_CHECK_TOL {
            TrialOutcome::Pass(residual)
        } else {
            TrialOutcome::Fail(residual)
        })
    };
    outcome().unwrap_or(TrialOutcome::Fail(f64::INFINITY))
}

/// Samples `trials` linkages, skips decomposable ones, and checks the rest
/// against the closed-form family.
pub fn cross_check(c: &Character, trials: usize, seed: u64) -> CrossCheckReport {
    let mut report = CrossCheckReport {
        trials,
        ..Default::default()
    };
    for t in 0..trials {
        match run_trial(c, seed, t as u64) {
            TrialOutcome::Pass(r) => {
                report.passes += 1;
                report.max_equiv_residual = report.max_equiv_residual.max(r);
            }
            TrialOutcome::Fail(r) => {
                report.max_equiv_residual = report.max_equiv_residual.max(r);
            }
            TrialOutcome::Skipped => report.decomposable_skipped += 1,
        }
    }
    report
}
