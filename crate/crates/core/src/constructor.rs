//! Construction of generator triples and projector quadruples.
//!
//! Two parameterizations are covered:
//!
//! * generic characters (γ₃ ≠ 0): `X = λ·diag(−1, 1)`, with Y and Z fixed by
//!   the anticommutator constants and two moduli `r₁`, `r₂` plus a phase χ;
//! * the all-½ character (γ₃ = 0): triples built from Pauli matrices with
//!   weights λ, μ, ν, `λ² + μ² + ν² = ¼`, and the two-parameter projector
//!   family they produce.
//!
//! Projectors are recovered from a triple by
//! `P₁ = (−X+Y+Z)/(2α₁) + ½I`, `P₂ = (X−Y+Z)/(2α₂) + ½I`,
//! `P₃ = (X+Y−Z)/(2α₃) + ½I`, `P₄ = (−X−Y−Z)/(2α₄) + ½I`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::linalg::{c, cis, wrap_angle, Complex, Mat2, I, ZERO};
use crate::tolerance::TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Generic,
    Equal,
}

impl Branch {
    pub fn of(c: &Character) -> Branch {
        if c.is_equal() {
            Branch::Equal
        } else {
            Branch::Generic
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Generic => "generic",
            Branch::Equal => "equal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XYZTriple {
    pub x: Mat2,
    pub y: Mat2,
    pub z: Mat2,
    pub branch: Branch,
}

/// Residuals of the relations `{y,z} = γ₁`, `{z,x} = γ₂`, `{x,y} = γ₃`,
/// `(x+y+z)² = α₄²` and, for the equal branch, `x²+y²+z² = ¼`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RelationResiduals {
    pub anticommutators: [f64; 3],
    pub square: f64,
    pub sum_of_squares: Option<f64>,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.anticommutators
            .iter()
            .copied()
            .chain([self.square, self.sum_of_squares.unwrap_or(0.0)])
            .fold(0.0, f64::max)
    }
}

impl XYZTriple {
    pub fn relation_residuals(&self, c: &Character) -> RelationResiduals {
        relation_residuals(&self.x, &self.y, &self.z, c)
    }
}

pub(crate) fn relation_residuals(x: &Mat2, y: &Mat2, z: &Mat2, c: &Character) -> RelationResiduals {
    let g = c.derived().gamma;
    let a4 = c.weight(4);
    let s = *x + *y + *z;
    let sum_of_squares = c
        .is_equal()
        .then(|| (*x * *x + *y * *y + *z * *z).distance_to_scalar(0.25));
    RelationResiduals {
        anticommutators: [
            y.anticommutator(z).distance_to_scalar(g[0]),
            z.anticommutator(x).distance_to_scalar(g[1]),
            x.anticommutator(y).distance_to_scalar(g[2]),
        ],
        square: (s * s).distance_to_scalar(a4 * a4),
        sum_of_squares,
    }
}

/// Four rank-one orthogonal projectors with `Σαᵢ Pᵢ = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorQuadruple {
    pub p: [Mat2; 4],
    pub character: Character,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QuadrupleResiduals {
    /// max ‖Pᵢ − Pᵢ*‖
    pub hermitian: f64,
    /// max ‖Pᵢ² − Pᵢ‖
    pub idempotent: f64,
    /// max |tr Pᵢ − 1|
    pub trace: f64,
    /// max |det Pᵢ|
    pub determinant: f64,
    /// ‖Σαᵢ Pᵢ − I‖
    pub sum_relation: f64,
}

impl QuadrupleResiduals {
    pub fn max(&self) -> f64 {
        [
            self.hermitian,
            self.idempotent,
            self.trace,
            self.determinant,
            self.sum_relation,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl ProjectorQuadruple {
    pub fn new(p: [Mat2; 4], character: Character) -> Self {
        ProjectorQuadruple { p, character }
    }

    pub fn residuals(&self) -> QuadrupleResiduals {
        let mut r = QuadrupleResiduals::default();
        let mut sum = Mat2::ZERO;
        for (p, a) in self.p.iter().zip(self.character.alpha()) {
            r.hermitian = r.hermitian.max(p.hermitian_residual());
            r.idempotent = r.idempotent.max((*p * *p - *p).max_abs());
            r.trace = r.trace.max((p.trace() - 1.0).norm());
            r.determinant = r.determinant.max(p.det().norm());
            sum = sum + p.scale(a);
        }
        r.sum_relation = sum.distance_to_scalar(1.0);
        r
    }

    /// Errors with `NotAQuadruple` if any invariant fails beyond `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.p.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        let r = self.residuals();
        if r.max() > tol {
            return Err(Error::NotAQuadruple {
                reason: format!("invariant residual {:e} exceeds {:e}", r.max(), tol),
            });
        }
        Ok(())
    }

    /// The generators `x = α₂P₂+α₃P₃−½β₁`, `y = α₁P₁+α₃P₃−½β₂`,
    /// `z = α₁P₁+α₂P₂−½β₃`.
    pub fn generators(&self) -> (Mat2, Mat2, Mat2) {
        let [a1, a2, a3, _] = self.character.alpha();
        let b = self.character.derived().beta;
        let [p1, p2, p3, _] = self.p;
        let id = Mat2::IDENTITY;
        (
            p2.scale(a2) + p3.scale(a3) - id.scale(0.5 * b[0]),
            p1.scale(a1) + p3.scale(a3) - id.scale(0.5 * b[1]),
            p1.scale(a1) + p2.scale(a2) - id.scale(0.5 * b[2]),
        )
    }

    pub fn relation_residuals(&self) -> RelationResiduals {
        let (x, y, z) = self.generators();
        relation_residuals(&x, &y, &z, &self.character)
    }

    /// `u·Pᵢ·u*` for every projector; `u` is assumed unitary.
    pub fn conjugated(&self, u: &Mat2) -> ProjectorQuadruple {
        let ua = u.adjoint();
        ProjectorQuadruple {
            p: self.p.map(|p| *u * p * ua),
            character: self.character,
        }
    }

    pub fn max_abs_diff(&self, other: &ProjectorQuadruple) -> f64 {
        self.p
            .iter()
            .zip(other.p.iter())
            .map(|(a, b)| (*a - *b).max_abs())
            .fold(0.0, f64::max)
    }
}

/// The moduli `r₁ = |y₁₂ + z₁₂|` and `r₂ = |z₁₂ − y₁₂|` of the generic branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RPair {
    pub r1: f64,
    pub r2: f64,
}

fn clamp_radicand(value: f64, lambda: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -TOL.radicand_clamp {
        Ok(0.0)
    } else {
        Err(Error::LambdaOutOfRange { lambda })
    }
}

/// `−4(λ² − ((a−b)/2)²)(λ² − ((a+b)/2)²)` in fully factored form.
fn factored_radicand(lambda: f64, small: f64, large: f64) -> f64 {
    let p = 0.5 * (large - small);
    let q = 0.5 * (large + small);
    -4.0 * (lambda - p) * (lambda + p) * (lambda - q) * (lambda + q)
}

pub fn r_values(c: &Character, lambda: f64) -> Result<RPair> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite);
    }
    let [a1, a2, a3, a4] = c.alpha();
    let r1_sq = clamp_radicand(factored_radicand(lambda, a1, a4), lambda)?;
    let r2_sq = clamp_radicand(factored_radicand(lambda, a2, a3), lambda)?;
    Ok(RPair {
        r1: r1_sq.sqrt(),
        r2: r2_sq.sqrt(),
    })
}

/// Off-diagonal entries `(y₁₂, z₁₂) = ((r₁ − r₂e^{iχ})/2, (r₁ + r₂e^{iχ})/2)`,
/// before the `1/(2λ)` scaling of Y and Z.
pub fn generic_offdiagonals(r: RPair, chi: f64) -> (Complex, Complex) {
    let w = cis(chi) * r.r2;
    ((c(r.r1, 0.0) - w) * 0.5, (c(r.r1, 0.0) + w) * 0.5)
}

pub fn build_xyz_generic(ch: &Character, lambda: f64, chi: f64) -> Result<XYZTriple> {
    if !chi.is_finite() {
        return Err(Error::NonFinite);
    }
    if ch.is_equal() {
        return Err(Error::DegenerateCharacter);
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::LambdaOutOfRange { lambda });
    }
    let r = r_values(ch, lambda)?;
    let chi = wrap_angle(chi);
    let g = ch.derived().gamma;
    let (y12, z12) = generic_offdiagonals(r, chi);
    let k = 1.0 / (2.0 * lambda);
    Ok(XYZTriple {
        x: Mat2::diag(-lambda, lambda),
        y: Mat2::hermitian(-g[2], y12, g[2]).scale(k),
        z: Mat2::hermitian(-g[1], z12, g[1]).scale(k),
        branch: Branch::Generic,
    })
}

/// `X = λ·diag(−1,1)`, `Y = μσ₁`, `Z = ν[[0,i],[−i,0]]`.
pub fn build_xyz_equal(lambda: f64, mu: f64, nu: f64) -> Result<XYZTriple> {
    if !(lambda.is_finite() && mu.is_finite() && nu.is_finite()) {
        return Err(Error::NonFinite);
    }
    let value = lambda * lambda + mu * mu + nu * nu;
    if (value - 0.25).abs() > TOL.unit_sum {
        return Err(Error::ConstraintViolated { value });
    }
    let sign_ok = (lambda > 0.0 && mu > 0.0)
        || (lambda == 0.0 && mu > 0.0 && nu > 0.0)
        || (lambda > 0.0 && mu == 0.0 && nu > 0.0);
    if !sign_ok {
        return Err(Error::SignPatternInvalid);
    }
    Ok(XYZTriple {
        x: Mat2::diag(-lambda, lambda),
        y: Mat2::pauli_x().scale(mu),
        z: Mat2::new(ZERO, I * nu, -I * nu, ZERO),
        branch: Branch::Equal,
    })
}

pub fn projectors_from_xyz(t: &XYZTriple, ch: &Character) -> Result<ProjectorQuadruple> {
    let res = t.relation_residuals(ch).max();
    if res.is_nan() || res > TOL.relation_input {
        return Err(Error::RelationResidualTooLarge { residual: res });
    }
    let [a1, a2, a3, a4] = ch.alpha();
    let (x, y, z) = (t.x, t.y, t.z);
    let half = Mat2::IDENTITY.scale(0.5);
    let p = [
        (-x + y + z).scale(0.5 / a1) + half,
        (x - y + z).scale(0.5 / a2) + half,
        (x + y - z).scale(0.5 / a3) + half,
        (-x - y - z).scale(0.5 / a4) + half,
    ];
    Ok(ProjectorQuadruple::new(p, *ch))
}

/// True when `(λ, χ)` lies in the printed fundamental domain of the equal
/// family: `λ = 0, 0 < χ < π/2` or `0 < λ < ½, −π/2 < χ ≤ π/2`.
pub fn in_equal_domain(lambda: f64, chi: f64) -> bool {
    (lambda == 0.0 && chi > 0.0 && chi < FRAC_PI_2)
        || (lambda > 0.0 && lambda < 0.5 && chi > -FRAC_PI_2 && chi <= FRAC_PI_2)
}

pub fn build_projectors_equal(lambda: f64, chi: f64) -> Result<ProjectorQuadruple> {
    if !(lambda.is_finite() && chi.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !in_equal_domain(lambda, chi) {
        return Err(Error::DomainViolation { lambda, chi });
    }
    equal_family(lambda, chi)
}

/// The equal-character family at any `0 ≤ λ < ½` and any χ, without the
/// fundamental-domain restriction. P₃ carries `−e^{iχ}s` in position (1,2)
/// and `−e^{−iχ}s` in (2,1), which is the Hermitian choice.
pub fn equal_family(lambda: f64, chi: f64) -> Result<ProjectorQuadruple> {
    if !(lambda.is_finite() && chi.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !(0.0..0.5).contains(&lambda) {
        return Err(Error::DomainViolation { lambda, chi });
    }
    let s = (0.25 - lambda * lambda).sqrt();
    let (lo, hi) = (0.5 - lambda, 0.5 + lambda);
    let w = cis(chi) * s;
    let p = [
        Mat2::hermitian(lo, c(s, 0.0), hi),
        Mat2::hermitian(hi, w, lo),
        Mat2::hermitian(hi, -w, lo),
        Mat2::hermitian(lo, c(-s, 0.0), hi),
    ];
    Ok(ProjectorQuadruple::new(p, Character::EQUAL))
}

/// The four generic projectors written out entrywise in λ, χ and the
/// weights, independent of the X, Y, Z route. Radicands are expanded
/// polynomials here, factored in [`r_values`].
pub fn closed_form_generic(ch: &Character, lambda: f64, chi: f64) -> Result<ProjectorQuadruple> {
    if !(lambda.is_finite() && chi.is_finite()) {
        return Err(Error::NonFinite);
    }
    if ch.is_equal() {
        return Err(Error::DegenerateCharacter);
    }
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::LambdaOutOfRange { lambda });
    }
    let [a1, a2, a3, a4] = ch.alpha();
    let l2 = lambda * lambda;
    let l4 = l2 * l2;
    let d14 = a4 * a4 - a1 * a1;
    let d23 = a3 * a3 - a2 * a2;
    let big1 = clamp_radicand(-4.0 * l4 + 2.0 * (a1 * a1 + a4 * a4) * l2 - 0.25 * d14 * d14, lambda)?.sqrt();
    let big2 = clamp_radicand(-4.0 * l4 + 2.0 * (a2 * a2 + a3 * a3) * l2 - 0.25 * d23 * d23, lambda)?.sqrt();
    let e = cis(chi);

    let p1 = Mat2::hermitian(
        2.0 * l2 + 2.0 * a1 * lambda - 0.5 * d14,
        c(big1, 0.0),
        -2.0 * l2 + 2.0 * a1 * lambda + 0.5 * d14,
    )
    .scale(1.0 / (4.0 * a1 * lambda));
    let p2 = Mat2::hermitian(
        -2.0 * l2 + 2.0 * a2 * lambda + 0.5 * d23,
        e * big2,
        2.0 * l2 + 2.0 * a2 * lambda - 0.5 * d23,
    )
    .scale(1.0 / (4.0 * a2 * lambda));
    let p3 = Mat2::hermitian(
        -2.0 * l2 + 2.0 * a3 * lambda - 0.5 * d23,
        -e * big2,
        2.0 * l2 + 2.0 * a3 * lambda + 0.5 * d23,
    )
    .scale(1.0 / (4.0 * a3 * lambda));
    let p4 = Mat2::hermitian(
        2.0 * l2 + 2.0 * a4 * lambda + 0.5 * d14,
        c(-big1, 0.0),
        -2.0 * l2 + 2.0 * a4 * lambda - 0.5 * d14,
    )
    .scale(1.0 / (4.0 * a4 * lambda));
    Ok(ProjectorQuadruple::new([p1, p2, p3, p4], *ch))
}

/// Builds the representation for `(c, λ, χ)`, choosing the branch from the
/// character. The equal branch enforces its fundamental domain.
pub fn build(ch: &Character, lambda: f64, chi: f64) -> Result<ProjectorQuadruple> {
    match Branch::of(ch) {
        Branch::Generic => projectors_from_xyz(&build_xyz_generic(ch, lambda, chi)?, ch),
        Branch::Equal => build_projectors_equal(lambda, chi),
    }
}

/// Like [`build`], but the equal branch accepts any `0 ≤ λ < ½` and χ.
pub fn build_unrestricted(ch: &Character, lambda: f64, chi: f64) -> Result<ProjectorQuadruple> {
    match Branch::of(ch) {
        Branch::Generic => projectors_from_xyz(&build_xyz_generic(ch, lambda, chi)?, ch),
        Branch::Equal => equal_family(lambda, wrap_angle(chi)),
    }
}
