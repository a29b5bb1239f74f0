//! Numerical tolerance policy shared by every module.

/// All thresholds used by construction, validation and reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative ‖m − m*‖_max accepted by the eigensolver.
    pub hermitian: f64,
    /// ‖u·u* − I‖_max accepted by unitary conjugation.
    pub unitary: f64,
    /// Eigenvalue gap below which a Hermitian matrix is treated as scalar.
    pub eigen_gap: f64,
    /// |Σαᵢ − 2| accepted for a character.
    pub alpha_sum: f64,
    /// γ₃ at or below this routes a character to the equal branch.
    pub degenerate_gamma: f64,
    /// Negative radicands down to −this are clamped to zero.
    pub radicand_clamp: f64,
    /// |λ²+μ²+ν² − ¼| accepted by the equal-branch triple.
    pub unit_sum: f64,
    /// Relation residual above which a triple or quadruple is rejected as input.
    pub relation_input: f64,
    /// Scalarity residual under which a graph representation passes.
    pub scalarity: f64,
    /// Singular values at or below this count as zero in the commutant system.
    pub commutant_singular: f64,
    /// Off-diagonal magnitude under which a phase is considered undefined.
    pub phase_floor: f64,
    /// |(P₁)₁₂| under which canonicalization gauges on P₂ instead. Boundary
    /// radicands carry rounding noise of order √ε, so this sits well above it.
    pub gauge_floor: f64,
    /// Positive eigenvalue of X under which the equal branch uses the λ = 0 frame.
    pub equal_lambda_zero: f64,
    /// Default pass threshold of the `verify` command.
    pub verify: f64,
    /// Allowed drift between stored and recomputed residuals in a file.
    pub stored_residual_drift: f64,
    /// Unit length and closure tolerance for Bloch vectors.
    pub bloch_unit: f64,
    pub bloch_closure: f64,
}

pub const TOL: Tolerances = Tolerances {
    hermitian: 1e-12,
    unitary: 1e-12,
    eigen_gap: 1e-14,
    alpha_sum: 1e-12,
    degenerate_gamma: 1e-12,
    radicand_clamp: 1e-13,
    unit_sum: 1e-12,
    relation_input: 1e-9,
    scalarity: 1e-10,
    commutant_singular: 1e-9,
    phase_floor: 1e-12,
    gauge_floor: 1e-6,
    equal_lambda_zero: 1e-10,
    verify: 1e-10,
    stored_residual_drift: 1e-12,
    bloch_unit: 1e-12,
    bloch_closure: 1e-11,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}
