//! JSON representation files and their verification.
//!
//! Complex numbers are written as `[re, im]` pairs. Floats use the shortest
//! decimal form that parses back to the same bits, so a file survives
//! write→read unchanged and residuals recomputed on read match the stored
//! ones exactly.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::constructor::{Branch, ProjectorQuadruple, QuadrupleResiduals};
use crate::error::{Error, Result};
use crate::graphrep::{to_graph_rep, verify_locally_scalar, GammaConvention, GraphRepresentation, DIMENSION};
use crate::linalg::{c, Complex, Mat2, Vec2};
use crate::tolerance::TOL;

pub type ComplexJson = [f64; 2];
pub type MatrixJson = [[ComplexJson; 2]; 2];
pub type ColumnJson = [ComplexJson; 2];

fn complex_to_json(z: Complex) -> ComplexJson {
    [z.re, z.im]
}

fn complex_from_json(z: ComplexJson) -> Complex {
    c(z[0], z[1])
}

pub fn matrix_to_json(m: &Mat2) -> MatrixJson {
    m.m.map(|row| row.map(complex_to_json))
}

pub fn matrix_from_json(m: &MatrixJson) -> Mat2 {
    Mat2 {
        m: m.map(|row| row.map(complex_from_json)),
    }
}

fn column_to_json(v: &Vec2) -> ColumnJson {
    v.v.map(complex_to_json)
}

fn column_from_json(v: &ColumnJson) -> Vec2 {
    Vec2 {
        v: v.map(complex_from_json),
    }
}

/// `{"alpha": [a1..a4]}` or `{"alpha_raw": [a0, a1..a4]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_raw: Option<[f64; 5]>,
}

impl CharacterJson {
    pub fn from_character(c: &Character) -> Self {
        CharacterJson {
            alpha: Some(c.alpha()),
            alpha_raw: None,
        }
    }

    pub fn to_character(&self) -> Result<Character> {
        match (self.alpha, self.alpha_raw) {
            (Some(a), None) => Character::new(a),
            (None, Some(raw)) => Character::from_raw(raw),
            _ => Err(Error::NotAQuadruple {
                reason: "character needs exactly one of alpha, alpha_raw".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub lambda: f64,
    pub chi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub dim: [usize; 5],
    pub gamma: [ColumnJson; 4],
}

/// Verification summary stored alongside the matrices.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Residuals {
    pub hermitian: f64,
    pub idempotent: f64,
    pub trace: f64,
    pub determinant: f64,
    pub sum_relation: f64,
    /// `{y,z} − γ₁`, `{z,x} − γ₂`, `{x,y} − γ₃`
    pub anticommutators: [f64; 3],
    /// `(x+y+z)² − α₄²`
    pub square: f64,
    pub scalarity_center: f64,
    pub scalarity_leaves: [f64; 4],
    /// max ‖Γ₀ᵢΓ₀ᵢ*/αᵢ − Pᵢ‖
    pub graph_projector: f64,
}

impl Residuals {
    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        [
            self.hermitian,
            self.idempotent,
            self.trace,
            self.determinant,
            self.sum_relation,
            self.square,
            self.scalarity_center,
            self.graph_projector,
        ]
        .into_iter()
        .chain(self.anticommutators)
        .chain(self.scalarity_leaves)
    }

    pub fn max(&self) -> f64 {
        self.values()
            .fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v) })
    }

    pub fn max_abs_diff(&self, other: &Residuals) -> f64 {
        self.values()
            .zip(other.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) })
    }
}

pub fn compute_residuals(q: &ProjectorQuadruple, g: &GraphRepresentation) -> Residuals {
    let QuadrupleResiduals {
        hermitian,
        idempotent,
        trace,
        determinant,
        sum_relation,
    } = q.residuals();
    let rel = q.relation_residuals();
    let scal = verify_locally_scalar(g);
    let alpha = q.character.alpha();
    let graph_projector = (0..4)
        .map(|i| (g.gamma[i].outer().scale(1.0 / alpha[i]) - q.p[i]).max_abs())
        .fold(0.0, f64::max);
    Residuals {
        hermitian,
        idempotent,
        trace,
        determinant,
        sum_relation,
        anticommutators: rel.anticommutators,
        square: rel.square,
        scalarity_center: scal.a0_residual,
        scalarity_leaves: scal.leaf_residuals,
        graph_projector,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub character: CharacterJson,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Parameters>,
    pub projectors: [MatrixJson; 4],
    pub graph: GraphJson,
    pub residuals: Residuals,
}

impl RepresentationFile {
    pub fn from_quadruple(q: &ProjectorQuadruple, parameters: Option<Parameters>) -> Result<Self> {
        let g = to_graph_rep(q)?;
        Ok(RepresentationFile {
            character: CharacterJson::from_character(&q.character),
            branch: Branch::of(&q.character),
            parameters,
            projectors: q.p.map(|p| matrix_to_json(&p)),
            graph: GraphJson {
                dim: DIMENSION,
                gamma: g.gamma.map(|v| column_to_json(&v)),
            },
            residuals: compute_residuals(q, &g),
        })
    }

    pub fn character(&self) -> Result<Character> {
        self.character.to_character()
    }

    pub fn quadruple(&self) -> Result<ProjectorQuadruple> {
        Ok(ProjectorQuadruple::new(
            self.projectors.map(|m| matrix_from_json(&m)),
            self.character()?,
        ))
    }

    pub fn graph(&self) -> Result<GraphRepresentation> {
        if self.graph.dim != DIMENSION {
            return Err(Error::NotAQuadruple {
                reason: format!("graph dimension {:?}, expected {:?}", self.graph.dim, DIMENSION),
            });
        }
        Ok(GraphRepresentation {
            gamma: self.graph.gamma.map(|v| column_from_json(&v)),
            character: self.character()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation file serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Hermiticity and sum-relation residuals under one reading of P₃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadingResiduals {
    pub hermitian: f64,
    pub sum_relation: f64,
}

/// P₃ as stored versus P₃ with the (2,1) entry copied into (1,2), which is
/// the other sign convention for its phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct P3Readings {
    pub hermitian: ReadingResiduals,
    pub printed: ReadingResiduals,
    /// "hermitian", "printed", "both" or "neither".
    pub satisfied_by: String,
}

fn reading(q: &ProjectorQuadruple, p3: Mat2) -> ReadingResiduals {
    let mut alt = *q;
    alt.p[2] = p3;
    let r = alt.residuals();
    ReadingResiduals {
        hermitian: p3.hermitian_residual(),
        sum_relation: r.sum_relation,
    }
}

pub fn p3_readings(q: &ProjectorQuadruple, tol: f64) -> P3Readings {
    let p3 = q.p[2];
    let printed = Mat2::new(p3.get(0, 0), p3.get(1, 0), p3.get(1, 0), p3.get(1, 1));
    let h = reading(q, p3);
    let p = reading(q, printed);
    let ok = |r: &ReadingResiduals| r.hermitian.max(r.sum_relation) <= tol;
    let satisfied_by = match (ok(&h), ok(&p)) {
        (true, true) => "both",
        (true, false) => "hermitian",
        (false, true) => "printed",
        (false, false) => "neither",
    };
    P3Readings {
        hermitian: h,
        printed: p,
        satisfied_by: satisfied_by.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub passed: bool,
    pub max_residual: f64,
    pub residuals: Residuals,
    /// max |recomputed − stored| over all residuals
    pub stored_residual_drift: f64,
    pub gamma_convention: Option<GammaConvention>,
    pub p3_readings: P3Readings,
}

pub fn verify_file(file: &RepresentationFile, tol: f64) -> Result<VerifyReport> {
    let q = file.quadruple()?;
    let g = file.graph()?;
    let convention = g.convention(tol);
    let scaled = match convention {
        Some(GammaConvention::Isometric) => g.to_scaled(GammaConvention::Isometric),
        _ => g,
    };
    let residuals = compute_residuals(&q, &scaled);
    let drift = residuals.max_abs_diff(&file.residuals);
    let max_residual = residuals.max();
    let passed = max_residual <= tol && drift <= TOL.stored_residual_drift;
    Ok(VerifyReport {
        tolerance: tol,
        passed,
        max_residual,
        residuals,
        stored_residual_drift: drift,
        gamma_convention: convention,
        p3_readings: p3_readings(&q, tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::build;
    use crate::testutil::generic_params;
    use proptest::prelude::*;

    fn sample() -> RepresentationFile {
        let c = Character::new([0.3, 0.4, 0.6, 0.7]).unwrap();
        let q = build(&c, 0.35, 1.0).unwrap();
        RepresentationFile::from_quadruple(&q, Some(Parameters { lambda: 0.35, chi: 1.0 })).unwrap()
    }

    #[test]
    fn fresh_file_verifies() {
        let r = verify_file(&sample(), 1e-10).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.stored_residual_drift, 0.0);
        assert_eq!(r.p3_readings.satisfied_by, "hermitian");
        assert_eq!(r.gamma_convention, Some(GammaConvention::Scaled));
    }

    #[test]
    fn perturbed_entry_fails() {
        let mut f = sample();
        f.projectors[0][0][1][0] += 1e-3;
        let r = verify_file(&f, 1e-10).unwrap();
        assert!(!r.passed);
        assert!(r.residuals.idempotent >= 1e-4);
    }

    #[test]
    fn raw_character_fragment() {
        let j: CharacterJson = serde_json::from_str(r#"{"alpha_raw": [2, 0.6, 0.8, 1.2, 1.4]}"#).unwrap();
        let c = j.to_character().unwrap();
        assert!((c.weight(4) - 0.7).abs() < 1e-15);
        let both: CharacterJson =
            serde_json::from_str(r#"{"alpha": [0.5,0.5,0.5,0.5], "alpha_raw": [1,0.5,0.5,0.5,0.5]}"#).unwrap();
        assert!(both.to_character().is_err());
    }

    #[test]
    fn isometric_graph_is_recognized() {
        let mut f = sample();
        let alpha = f.character().unwrap().alpha();
        for (col, a) in f.graph.gamma.iter_mut().zip(alpha) {
            for z in col.iter_mut() {
                z[0] /= a.sqrt();
                z[1] /= a.sqrt();
            }
        }
        let r = verify_file(&f, 1e-10).unwrap();
        assert_eq!(r.gamma_convention, Some(GammaConvention::Isometric));
        assert!(r.max_residual <= 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn json_round_trip_is_bit_exact((c, lambda, chi) in generic_params()) {
            let q = build(&c, lambda, chi).unwrap();
            let f = RepresentationFile::from_quadruple(&q, Some(Parameters { lambda, chi })).unwrap();
            let back = RepresentationFile::from_json(&f.to_json()).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.quadruple().unwrap(), q);
            prop_assert_eq!(verify_file(&back, 1e-10).unwrap().stored_residual_drift, 0.0);
        }
    }
}
