//! Canonical forms, unitary equivalence and indecomposability of projector
//! quadruples.
//!
//! A quadruple is brought to canonical position by diagonalizing
//! `X = α₂P₂ + α₃P₃ − ½β₁I`, then applying a diagonal phase so that P₁'s
//! off-diagonal entry is real and non-negative. λ is the positive eigenvalue
//! of X and χ the argument of P₂'s (1,2) entry in that frame.

use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::constructor::{
    build_unrestricted, closed_form_generic, equal_family, in_equal_domain, Branch, ProjectorQuadruple,
};
use crate::error::{Error, Result};
use crate::linalg::{circle_distance, cis, eigen_h2, wrap_angle, Complex, Mat2, I, ONE, ZERO};
use crate::tolerance::TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    pub character: Character,
    pub branch: Branch,
    pub lambda: f64,
    pub chi: f64,
    /// Unitary `G` with `G·Pᵢ·G*` equal to the canonical projectors.
    pub gauge: Mat2,
}

impl CanonicalForm {
    /// Rebuilds the canonical quadruple from `(character, branch, λ, χ)`
    /// through the constructor's X, Y, Z route.
    pub fn rebuild(&self) -> Result<ProjectorQuadruple> {
        match self.branch {
            Branch::Generic => build_unrestricted(&self.character, self.lambda, self.chi),
            Branch::Equal => equal_family(self.lambda, self.chi),
        }
    }

    /// Rebuilds through the entrywise closed forms (generic) or the
    /// equal-character family.
    pub fn rebuild_closed_form(&self) -> Result<ProjectorQuadruple> {
        match self.branch {
            Branch::Generic => closed_form_generic(&self.character, self.lambda, self.chi),
            Branch::Equal => equal_family(self.lambda, self.chi),
        }
    }

    /// Whether `(λ, χ)` lies in the printed parameter domain of its branch.
    /// Reported only; canonical χ is always in `(−π, π]`.
    pub fn in_printed_domain(&self) -> bool {
        match self.branch {
            Branch::Equal => in_equal_domain(self.lambda, self.chi),
            Branch::Generic => self
                .character
                .lambda_range()
                .map(|r| r.contains(self.lambda, 1e-10))
                .unwrap_or(false),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector {
    /// tr(PᵢPⱼ) for (1,2), (1,3), (1,4), (2,3), (2,4), (3,4).
    pub pairwise: [f64; 6],
    /// Im tr(P₁P₂P₃).
    pub triple_im: f64,
}

impl InvariantVector {
    pub fn max_abs_diff(&self, other: &InvariantVector) -> f64 {
        self.pairwise
            .iter()
            .zip(other.pairwise.iter())
            .map(|(a, b)| (a - b).abs())
            .fold((self.triple_im - other.triple_im).abs(), f64::max)
    }
}

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn trace_invariants(q: &ProjectorQuadruple) -> InvariantVector {
    let p = &q.p;
    InvariantVector {
        pairwise: PAIRS.map(|(i, j)| (p[i] * p[j]).trace().re),
        triple_im: (p[0] * p[1] * p[2]).trace().im,
    }
}

/// Dimension of the real space of Hermitian `C` with `[C, Pᵢ] = 0` for all i.
///
/// `C = c₀I + c₁σ₁ + c₂σ₂ + c₃σ₃`; each commutator `[C, Pᵢ]` is
/// anti-Hermitian and contributes four real equations, giving a 16×4 system
/// whose null space is the commutant.
pub fn commutant_dimension(q: &ProjectorQuadruple) -> usize {
    let basis = [Mat2::IDENTITY, Mat2::pauli_x(), Mat2::pauli_y(), Mat2::pauli_z()];
    let mut a = SMatrix::<f64, 16, 4>::zeros();
    for (i, p) in q.p.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            let m = b.commutator(p);
            let rows = [m.get(0, 0).im, m.get(1, 1).im, m.get(0, 1).re, m.get(0, 1).im];
            for (r, v) in rows.into_iter().enumerate() {
                a[(4 * i + r, k)] = v;
            }
        }
    }
    let rank = a
        .singular_values()
        .iter()
        .filter(|&&s| s > TOL.commutant_singular)
        .count();
    4 - rank
}

fn diag_phase(phi: f64) -> Mat2 {
    Mat2::new(cis(phi), ZERO, ZERO, ONE)
}

/// The unitary `u` whose columns diagonalize `m`, ordered by descending
/// eigenvalue.
fn descending_frame(m: &Mat2) -> Result<(f64, Mat2)> {
    let e = eigen_h2(m)?;
    Ok((e.values[1], e.vectors.swap_cols()))
}

pub fn canonicalize(q: &ProjectorQuadruple) -> Result<CanonicalForm> {
    q.validate(TOL.relation_input)?;
    let dim = commutant_dimension(q);
    if dim > 1 {
        return Err(Error::Decomposable { commutant_dim: dim });
    }
    let branch = Branch::of(&q.character);
    let (x, _, _) = q.generators();

    // Frame in which X is diagonal: ascending (−λ, λ) for the generic branch,
    // descending (λ, −λ) for the equal family.
    let (lambda, frame) = match branch {
        Branch::Generic => {
            let e = eigen_h2(&x)?;
            (e.values[1], e.vectors)
        }
        Branch::Equal => {
            let (lambda, frame) = descending_frame(&x)?;
            if lambda > TOL.equal_lambda_zero {
                (lambda, frame)
            } else {
                // X vanishes; orient by i[P₁, P₂] instead, which is a positive
                // multiple of σ₃ in the canonical frame when sin χ > 0.
                let k = q.p[0].commutator(&q.p[1]).scale_c(I);
                let (_, frame) = descending_frame(&k)?;
                (lambda.max(0.0), frame)
            }
        }
    };
    let framed = q.conjugated(&frame.adjoint());

    // Diagonal gauge: P₁₂ of P₁ real positive, or P₂ when that vanishes.
    let p1_12 = framed.p[0].get(0, 1);
    let p2_12 = framed.p[1].get(0, 1);
    let phase = if p1_12.norm() > TOL.gauge_floor {
        diag_phase(-p1_12.arg())
    } else if p2_12.norm() > TOL.phase_floor {
        diag_phase(-p2_12.arg())
    } else {
        Mat2::IDENTITY
    };
    let gauge = phase * frame.adjoint();
    let canonical = q.conjugated(&gauge);
    let w: Complex = canonical.p[1].get(0, 1);
    let chi = if w.norm() < TOL.phase_floor {
        0.0
    } else {
        wrap_angle(w.arg())
    };

    Ok(CanonicalForm {
        character: q.character,
        branch,
        lambda,
        chi,
        gauge,
    })
}

pub fn unitary_equivalent(a: &ProjectorQuadruple, b: &ProjectorQuadruple, tol: f64) -> Result<bool> {
    if a.character.max_abs_diff(&b.character) > tol {
        return Err(Error::CharacterMismatch);
    }
    match (canonicalize(a), canonicalize(b)) {
        (Ok(ca), Ok(cb)) => Ok(ca.branch == cb.branch
            && (ca.lambda - cb.lambda).abs() <= tol
            && circle_distance(ca.chi, cb.chi) <= tol),
        (Err(Error::Decomposable { .. }), _) | (_, Err(Error::Decomposable { .. })) => {
            a.validate(TOL.relation_input)?;
            b.validate(TOL.relation_input)?;
            Ok(trace_invariants(a).max_abs_diff(&trace_invariants(b)) <= tol)
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::{build, build_projectors_equal};
    use crate::linalg::c;
    use crate::testutil::{generic_params, unitary_strategy};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, PI};

    fn ch() -> Character {
        Character::new([0.3, 0.4, 0.6, 0.7]).unwrap()
    }

    pub(crate) fn diagonal_quadruple() -> ProjectorQuadruple {
        let (e1, e2) = (Mat2::diag(1.0, 0.0), Mat2::diag(0.0, 1.0));
        ProjectorQuadruple::new([e1, e2, e2, e1], ch())
    }

    #[test]
    fn generic_round_trip() {
        let q = build(&ch(), 0.35, FRAC_PI_3).unwrap();
        let f = canonicalize(&q).unwrap();
        assert_eq!(f.branch, Branch::Generic);
        assert!((f.lambda - 0.35).abs() < 1e-10);
        assert!((f.chi - FRAC_PI_3).abs() < 1e-10);
        assert!(f.in_printed_domain());
    }

    #[test]
    fn equal_round_trip() {
        let q = build_projectors_equal(0.3, 0.4).unwrap();
        let f = canonicalize(&q).unwrap();
        assert_eq!(f.branch, Branch::Equal);
        assert!((f.lambda - 0.3).abs() < 1e-10);
        assert!((f.chi - 0.4).abs() < 1e-10);
    }

    #[test]
    fn equal_round_trip_at_zero_lambda() {
        let q = build_projectors_equal(0.0, 0.7).unwrap();
        let f = canonicalize(&q).unwrap();
        assert_eq!(f.lambda, 0.0);
        assert!((f.chi - 0.7).abs() < 1e-12);
        // χ and −χ coincide at λ = 0
        let q2 = equal_family(0.0, -0.7).unwrap();
        assert!(unitary_equivalent(&q, &q2, 1e-9).unwrap());
    }

    #[test]
    fn diagonal_quadruple_is_decomposable() {
        let q = diagonal_quadruple();
        assert!(q.residuals().max() < 1e-15);
        assert_eq!(commutant_dimension(&q), 2);
        assert_eq!(canonicalize(&q), Err(Error::Decomposable { commutant_dim: 2 }));
    }

    #[test]
    fn constructed_quadruple_is_indecomposable() {
        assert_eq!(commutant_dimension(&build(&ch(), 0.35, 1.0).unwrap()), 1);
        assert_eq!(commutant_dimension(&build_projectors_equal(0.0, 0.5).unwrap()), 1);
    }

    #[test]
    fn invalid_input_is_rejected() {
        let half = Mat2::IDENTITY.scale(0.5);
        let q = ProjectorQuadruple::new([half; 4], Character::EQUAL);
        assert!(matches!(canonicalize(&q), Err(Error::NotAQuadruple { .. })));
    }

    #[test]
    fn equal_family_orthogonality() {
        let q = build_projectors_equal(0.0, 1.2).unwrap();
        assert!(trace_invariants(&q).pairwise[2].abs() < 1e-15);
    }

    #[test]
    fn chi_sign_is_detected() {
        let a = build(&ch(), 0.35, FRAC_PI_3).unwrap();
        let b = build(&ch(), 0.35, -FRAC_PI_3).unwrap();
        let (ia, ib) = (trace_invariants(&a), trace_invariants(&b));
        assert!(ia.triple_im * ib.triple_im < 0.0);
        assert!(!unitary_equivalent(&a, &b, 1e-9).unwrap());
    }

    #[test]
    fn nearby_lambda_is_inequivalent() {
        let a = build(&ch(), 0.3, 1.0).unwrap();
        let b = build(&ch(), 0.31, 1.0).unwrap();
        let d = (trace_invariants(&a).pairwise[2] - trace_invariants(&b).pairwise[2]).abs();
        assert!(d > 1e-9);
        assert!(!unitary_equivalent(&a, &b, 1e-9).unwrap());
    }

    #[test]
    fn character_mismatch() {
        let a = build(&ch(), 0.3, 1.0).unwrap();
        let b = build_projectors_equal(0.3, 1.0).unwrap();
        assert_eq!(unitary_equivalent(&a, &b, 1e-9), Err(Error::CharacterMismatch));
    }

    #[test]
    fn boundary_lambda_gauges_by_second_projector() {
        // r₁ = 0 at the lower end: P₁ diagonal, χ is not an invariant
        let a = build(&ch(), 0.2, 1.0).unwrap();
        let b = build(&ch(), 0.2, -2.0).unwrap();
        assert_eq!(commutant_dimension(&a), 1);
        let f = canonicalize(&a).unwrap();
        assert!(f.chi.abs() < 1e-12);
        assert!(unitary_equivalent(&a, &b, 1e-9).unwrap());
        // both r vanish at the upper end for this character
        let top = build(&ch(), 0.5, 1.0).unwrap();
        assert!(commutant_dimension(&top) > 1);
    }

    #[test]
    fn decomposables_fall_back_to_invariants() {
        let q = diagonal_quadruple();
        let u = Mat2::new(c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.8), c(0.6, 0.0));
        assert!(unitary_equivalent(&q, &q.conjugated(&u), 1e-12).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn canonical_form_recovers_parameters(
            (c, lambda, chi) in generic_params(),
            u in unitary_strategy(),
        ) {
            let q = build(&c, lambda, chi).unwrap().conjugated(&u);
            let f = canonicalize(&q).unwrap();
            prop_assert!((f.lambda - lambda).abs() <= 1e-9);
            prop_assert!(circle_distance(f.chi, chi) <= 1e-9);
            prop_assert!(c.lambda_range().unwrap().contains(f.lambda, 1e-10));
            // input = G*·canonical·G
            let rebuilt = f.rebuild().unwrap();
            prop_assert!(rebuilt.conjugated(&f.gauge.adjoint()).max_abs_diff(&q) <= 1e-9);
            prop_assert!(q.conjugated(&f.gauge).max_abs_diff(&rebuilt) <= 1e-9);
        }

        #[test]
        fn invariants_are_unitary_invariant(
            (c, lambda, chi) in generic_params(),
            u in unitary_strategy(),
        ) {
            let q = build(&c, lambda, chi).unwrap();
            let a = trace_invariants(&q);
            let b = trace_invariants(&q.conjugated(&u));
            prop_assert!(a.max_abs_diff(&b) <= 1e-12);
            for t in a.pairwise {
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&t));
            }
            prop_assert!(unitary_equivalent(&q, &q.conjugated(&u), 1e-9).unwrap());
            prop_assert_eq!(commutant_dimension(&q), 1);
        }

        #[test]
        fn equal_branch_round_trip(lambda in 0.001..0.499f64, chi in -PI..PI, u in unitary_strategy()) {
            prop_assume!(circle_distance(chi, PI) > 1e-3);
            let q = equal_family(lambda, chi).unwrap().conjugated(&u);
            let f = canonicalize(&q).unwrap();
            prop_assert!((f.lambda - lambda).abs() <= 1e-9);
            prop_assert!(circle_distance(f.chi, chi) <= 1e-8);
        }
    }
}
