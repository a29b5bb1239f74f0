//! C ABI for `d4rep`.
//!
//! Quadruples live behind the opaque `D4Quadruple` handle; create one with
//! `d4_build` or `d4_from_matrices` and release it with `d4_quadruple_free`.
//! Every fallible call returns a `D4Status` and writes results through out
//! pointers, which are left untouched on failure. Complex matrices are passed
//! as flat `double` arrays of `(re, im)` pairs in row-major order.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use d4rep::analysis::{canonicalize, commutant_dimension, unitary_equivalent};
use d4rep::constructor::{build, Branch, ProjectorQuadruple};
use d4rep::graphrep::{to_graph_rep, verify_locally_scalar};
use d4rep::linalg::{c, Mat2};
use d4rep::oracle::cross_check;
use d4rep::{Character, Error, TOL};

/// Opaque handle to a validated projector quadruple.
pub struct D4Quadruple(ProjectorQuadruple);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D4Status {
    Ok = 0,
    NullPointer,
    Panic,
    NonFinite,
    NotHermitian,
    NotUnitary,
    NotSorted,
    SumNotTwo,
    OutOfRange,
    DegenerateCharacter,
    LambdaOutOfRange,
    ConstraintViolated,
    SignPatternInvalid,
    RelationResidualTooLarge,
    DomainViolation,
    NotRankOne,
    ScalarityViolated,
    Decomposable,
    NotAQuadruple,
    CharacterMismatch,
    ClosureViolated,
    SamplingExhausted,
}

impl From<Error> for D4Status {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite => D4Status::NonFinite,
            Error::NotHermitian { .. } => D4Status::NotHermitian,
            Error::NotUnitary { .. } => D4Status::NotUnitary,
            Error::NotSorted => D4Status::NotSorted,
            Error::SumNotTwo { .. } => D4Status::SumNotTwo,
            Error::OutOfRange { .. } => D4Status::OutOfRange,
            Error::DegenerateCharacter => D4Status::DegenerateCharacter,
            Error::LambdaOutOfRange { .. } => D4Status::LambdaOutOfRange,
            Error::ConstraintViolated { .. } => D4Status::ConstraintViolated,
            Error::SignPatternInvalid => D4Status::SignPatternInvalid,
            Error::RelationResidualTooLarge { .. } => D4Status::RelationResidualTooLarge,
            Error::DomainViolation { .. } => D4Status::DomainViolation,
            Error::NotRankOne { .. } => D4Status::NotRankOne,
            Error::ScalarityViolated { .. } => D4Status::ScalarityViolated,
            Error::Decomposable { .. } => D4Status::Decomposable,
            Error::NotAQuadruple { .. } => D4Status::NotAQuadruple,
            Error::CharacterMismatch => D4Status::CharacterMismatch,
            Error::ClosureViolated { .. } => D4Status::ClosureViolated,
            Error::SamplingExhausted => D4Status::SamplingExhausted,
        }
    }
}

/// Canonical parameters. `branch` is 0 for generic characters and 1 for the
/// all-½ character; `gauge` is the unitary G, as 4 row-major `(re, im)` pairs,
/// with `G·Pᵢ·G*` equal to the canonical projectors.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct D4Canonical {
    pub branch: u32,
    pub lambda: f64,
    pub chi: f64,
    pub gauge: [f64; 8],
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct D4CrossCheck {
    pub trials: u64,
    pub passes: u64,
    pub decomposable_skipped: u64,
    pub max_equiv_residual: f64,
}

fn guard(f: impl FnOnce() -> Result<(), D4Status>) -> D4Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => D4Status::Ok,
        Ok(Err(s)) => s,
        Err(_) => D4Status::Panic,
    }
}

unsafe fn read<const N: usize>(p: *const f64) -> Result<[f64; N], D4Status> {
    if p.is_null() {
        return Err(D4Status::NullPointer);
    }
    Ok(ptr::read(p as *const [f64; N]))
}

unsafe fn write<T>(p: *mut T, value: T) -> Result<(), D4Status> {
    if p.is_null() {
        return Err(D4Status::NullPointer);
    }
    ptr::write(p, value);
    Ok(())
}

unsafe fn handle<'a>(q: *const D4Quadruple) -> Result<&'a ProjectorQuadruple, D4Status> {
    q.as_ref().map(|h| &h.0).ok_or(D4Status::NullPointer)
}

fn mat_to_flat(m: &Mat2, out: &mut [f64]) {
    for (k, z) in m.m.iter().flatten().enumerate() {
        out[2 * k] = z.re;
        out[2 * k + 1] = z.im;
    }
}

fn mat_from_flat(v: &[f64]) -> Mat2 {
    let z = |k: usize| c(v[2 * k], v[2 * k + 1]);
    Mat2::new(z(0), z(1), z(2), z(3))
}

fn boxed(q: ProjectorQuadruple) -> *mut D4Quadruple {
    Box::into_raw(Box::new(D4Quadruple(q)))
}

/// Builds the family member with parameters `(lambda, chi)` for the
/// normalized character `alpha[4]`.
///
/// # Safety
/// `alpha` must point to 4 doubles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn d4_build(alpha: *const f64, lambda: f64, chi: f64, out: *mut *mut D4Quadruple) -> D4Status {
    guard(|| {
        if out.is_null() {
            return Err(D4Status::NullPointer);
        }
        let ch = Character::new(read::<4>(alpha)?)?;
        let q = build(&ch, lambda, chi)?;
        write(out, boxed(q))
    })
}

/// Wraps four projectors given as 32 doubles (projector, row, column,
/// re/im). The input must satisfy the defining relations within 1e-9.
///
/// # Safety
/// `alpha` must point to 4 doubles, `entries` to 32; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn d4_from_matrices(
    alpha: *const f64,
    entries: *const f64,
    out: *mut *mut D4Quadruple,
) -> D4Status {
    guard(|| {
        if out.is_null() {
            return Err(D4Status::NullPointer);
        }
        let ch = Character::new(read::<4>(alpha)?)?;
        let e = read::<32>(entries)?;
        if e.iter().any(|x| !x.is_finite()) {
            return Err(D4Status::NonFinite);
        }
        let q = ProjectorQuadruple::new(std::array::from_fn(|i| mat_from_flat(&e[8 * i..8 * i + 8])), ch);
        q.validate(TOL.relation_input)?;
        write(out, boxed(q))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `q` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn d4_quadruple_free(q: *mut D4Quadruple) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Copies the projectors into `out[32]`, laid out as in `d4_from_matrices`.
///
/// # Safety
/// `q` must be a live handle and `out` must have room for 32 doubles.
#[no_mangle]
pub unsafe extern "C" fn d4_quadruple_projectors(q: *const D4Quadruple, out: *mut f64) -> D4Status {
    guard(|| {
        let q = handle(q)?;
        let mut flat = [0.0; 32];
        for (i, p) in q.p.iter().enumerate() {
            mat_to_flat(p, &mut flat[8 * i..8 * i + 8]);
        }
        write(out as *mut [f64; 32], flat)
    })
}

/// Largest of the Hermiticity, idempotence, trace, rank, sum-relation,
/// generator-relation and scalarity residuals.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn d4_quadruple_max_residual(q: *const D4Quadruple, out: *mut f64) -> D4Status {
    guard(|| {
        let q = handle(q)?;
        let scalar = verify_locally_scalar(&to_graph_rep(q)?).max();
        let r = q.residuals().max().max(q.relation_residuals().max()).max(scalar);
        write(out, r)
    })
}

/// Dimension of the commutant; 1 exactly when the quadruple is indecomposable.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn d4_quadruple_commutant_dimension(q: *const D4Quadruple, out: *mut u32) -> D4Status {
    guard(|| write(out, commutant_dimension(handle(q)?) as u32))
}

/// Edge maps Γ₀ᵢ of the graph representation as 4 columns of 2 complex
/// entries: `out[16]`, column-major, `(re, im)` pairs.
///
/// # Safety
/// `q` must be a live handle and `out` must have room for 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn d4_graph_gamma(q: *const D4Quadruple, out: *mut f64) -> D4Status {
    guard(|| {
        let g = to_graph_rep(handle(q)?)?;
        let mut flat = [0.0; 16];
        for (k, z) in g.gamma.iter().flat_map(|v| v.v).enumerate() {
            flat[2 * k] = z.re;
            flat[2 * k + 1] = z.im;
        }
        write(out as *mut [f64; 16], flat)
    })
}

/// Canonical parameters of an indecomposable quadruple.
///
/// # Safety
/// `q` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn d4_canonicalize(q: *const D4Quadruple, out: *mut D4Canonical) -> D4Status {
    guard(|| {
        let f = canonicalize(handle(q)?)?;
        let mut r = D4Canonical {
            branch: match f.branch {
                Branch::Generic => 0,
                Branch::Equal => 1,
            },
            lambda: f.lambda,
            chi: f.chi,
            gauge: [0.0; 8],
        };
        mat_to_flat(&f.gauge, &mut r.gauge);
        write(out, r)
    })
}

/// Writes 1 to `out` when `a` and `b` are unitarily equivalent, else 0.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn d4_unitary_equivalent(
    a: *const D4Quadruple,
    b: *const D4Quadruple,
    tol: f64,
    out: *mut i32,
) -> D4Status {
    guard(|| {
        let eq = unitary_equivalent(handle(a)?, handle(b)?, tol)?;
        write(out, i32::from(eq))
    })
}

/// Samples `trials` Bloch-sphere solutions of the character and checks each
/// against the family.
///
/// # Safety
/// `alpha` must point to 4 doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn d4_cross_check(alpha: *const f64, trials: u64, seed: u64, out: *mut D4CrossCheck) -> D4Status {
    guard(|| {
        let ch = Character::new(read::<4>(alpha)?)?;
        let r = cross_check(&ch, trials as usize, seed);
        write(
            out,
            D4CrossCheck {
                trials: r.trials as u64,
                passes: r.passes as u64,
                decomposable_skipped: r.decomposable_skipped as u64,
                max_equiv_residual: r.max_equiv_residual,
            },
        )
    })
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn d4_status_name(status: D4Status) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        D4Status::Ok => c"Ok",
        D4Status::NullPointer => c"NullPointer",
        D4Status::Panic => c"Panic",
        D4Status::NonFinite => c"NonFinite",
        D4Status::NotHermitian => c"NotHermitian",
        D4Status::NotUnitary => c"NotUnitary",
        D4Status::NotSorted => c"NotSorted",
        D4Status::SumNotTwo => c"SumNotTwo",
        D4Status::OutOfRange => c"OutOfRange",
        D4Status::DegenerateCharacter => c"DegenerateCharacter",
        D4Status::LambdaOutOfRange => c"LambdaOutOfRange",
        D4Status::ConstraintViolated => c"ConstraintViolated",
        D4Status::SignPatternInvalid => c"SignPatternInvalid",
        D4Status::RelationResidualTooLarge => c"RelationResidualTooLarge",
        D4Status::DomainViolation => c"DomainViolation",
        D4Status::NotRankOne => c"NotRankOne",
        D4Status::ScalarityViolated => c"ScalarityViolated",
        D4Status::Decomposable => c"Decomposable",
        D4Status::NotAQuadruple => c"NotAQuadruple",
        D4Status::CharacterMismatch => c"CharacterMismatch",
        D4Status::ClosureViolated => c"ClosureViolated",
        D4Status::SamplingExhausted => c"SamplingExhausted",
    };
    s.as_ptr()
}
