//! Regular locally scalar representations of the extended Dynkin graph D̃₄.
//!
//! The representations of dimension (2; 1, 1, 1, 1) correspond to quadruples
//! of rank-one orthogonal projectors `P₁..P₄` on ℂ² with `Σαᵢ Pᵢ = I`. This
//! crate builds the full two-parameter family `(λ, χ)` for every regular
//! character, checks all defining identities numerically, brings arbitrary
//! quadruples back to canonical parameters, and cross-validates the family
//! against linkages sampled directly on the Bloch sphere.
//!
//! ```
//! use d4rep::{build, canonicalize, Character};
//!
//! let c = Character::new([0.3, 0.4, 0.6, 0.7]).unwrap();
//! let q = build(&c, 0.35, 1.0).unwrap();
//! assert!(q.residuals().max() < 1e-12);
//! let form = canonicalize(&q).unwrap();
//! assert!((form.lambda - 0.35).abs() < 1e-10);
//! ```

pub mod analysis;
pub mod character;
pub mod cli;
pub mod constructor;
pub mod error;
pub mod file;
pub mod graphrep;
pub mod linalg;
pub mod oracle;
pub mod tolerance;

#[cfg(test)]
mod testutil;

pub use analysis::{
    canonicalize, commutant_dimension, trace_invariants, unitary_equivalent, CanonicalForm, InvariantVector,
};
pub use character::{derived_constants, lambda_range, validate_character, Character, DerivedConstants, LambdaRange};
pub use constructor::{
    build, build_projectors_equal, build_unrestricted, build_xyz_equal, build_xyz_generic, closed_form_generic,
    equal_family, projectors_from_xyz, r_values, Branch, ProjectorQuadruple, RPair, XYZTriple,
};
pub use error::{Error, Result};
pub use graphrep::{from_graph_rep, to_graph_rep, verify_locally_scalar, GraphRepresentation, ScalarityReport};
pub use linalg::{conjugate, eigen_h2, Complex, Mat2, Vec2};
pub use oracle::{
    bloch_from_projectors, cross_check, projectors_from_bloch, sample_linkage, BlochQuadruple, CrossCheckReport,
};
pub use tolerance::{Tolerances, TOL};
