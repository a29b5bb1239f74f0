//! Fixed-size complex linear algebra on 2×2 matrices and 2-vectors.
//!
//! Everything here is closed form: no iteration, no allocation. The Hermitian
//! eigensolver fixes eigenvector phases so that results are bit-reproducible.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::TOL;

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Unit complex number `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex {
    Complex::new(theta.cos(), theta.sin())
}

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[Complex; 2]; 2],
}

/// Complex column 2-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub v: [Complex; 2],
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 {
        m: [[ZERO, ZERO], [ZERO, ZERO]],
    };
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    pub const fn new(a11: Complex, a12: Complex, a21: Complex, a22: Complex) -> Self {
        Mat2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(c(a11, 0.0), c(a12, 0.0), c(a21, 0.0), c(a22, 0.0))
    }

    pub fn diag(d1: f64, d2: f64) -> Self {
        Mat2::real(d1, 0.0, 0.0, d2)
    }

    /// Hermitian matrix `[[a, b], [b̄, d]]`.
    pub fn hermitian(a: f64, b: Complex, d: f64) -> Self {
        Mat2::new(c(a, 0.0), b, b.conj(), c(d, 0.0))
    }

    pub fn pauli_x() -> Self {
        Mat2::real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn pauli_y() -> Self {
        Mat2::new(ZERO, -I, I, ZERO)
    }

    pub fn pauli_z() -> Self {
        Mat2::diag(1.0, -1.0)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.m[i][j]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let m = &self.m;
        Mat2::new(f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1]))
    }

    /// Largest entry modulus, ‖·‖_max.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// ‖m − m*‖_max
    pub fn hermitian_residual(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// ‖u·u* − I‖_max
    pub fn unitary_residual(&self) -> f64 {
        (*self * self.adjoint() - Mat2::IDENTITY).max_abs()
    }

    /// `ab + ba`
    pub fn anticommutator(&self, other: &Mat2) -> Mat2 {
        *self * *other + *other * *self
    }

    /// `ab − ba`
    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    /// ‖m − s·I‖_max
    pub fn distance_to_scalar(&self, s: f64) -> f64 {
        (*self - Mat2::IDENTITY.scale(s)).max_abs()
    }

    pub fn col(&self, j: usize) -> Vec2 {
        Vec2::new(self.m[0][j], self.m[1][j])
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Mat2::new(c0.v[0], c1.v[0], c0.v[1], c1.v[1])
    }

    /// Swaps the two columns.
    pub fn swap_cols(&self) -> Self {
        Mat2::from_cols(self.col(1), self.col(0))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, x: Vec2) -> Vec2 {
        let a = &self.m;
        Vec2::new(a[0][0] * x.v[0] + a[0][1] * x.v[1], a[1][0] * x.v[0] + a[1][1] * x.v[1])
    }
}

impl Vec2 {
    pub const fn new(v1: Complex, v2: Complex) -> Self {
        Vec2 { v: [v1, v2] }
    }

    pub fn real(v1: f64, v2: f64) -> Self {
        Vec2::new(c(v1, 0.0), c(v2, 0.0))
    }

    /// `v*v`
    pub fn norm_sqr(&self) -> f64 {
        self.v[0].norm_sqr() + self.v[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Vec2 {
        Vec2::new(self.v[0] * s, self.v[1] * s)
    }

    pub fn scale_c(&self, s: Complex) -> Vec2 {
        Vec2::new(self.v[0] * s, self.v[1] * s)
    }

    /// Rank-one `v·v*`.
    pub fn outer(&self) -> Mat2 {
        let [a, b] = self.v;
        Mat2::new(a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj())
    }

    pub fn max_abs_diff(&self, o: &Vec2) -> f64 {
        (self.v[0] - o.v[0]).norm().max((self.v[1] - o.v[1]).norm())
    }

    pub fn is_finite(&self) -> bool {
        self.v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Multiplies by a unit phase so the first nonzero component is real and
    /// non-negative.
    pub fn phase_fixed(&self) -> Vec2 {
        for z in self.v {
            let r = z.norm();
            if r > 0.0 {
                return self.scale_c(z.conj() / r);
            }
        }
        *self
    }
}

/// Ascending eigenvalues plus the unitary whose columns are the eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigen {
    pub values: [f64; 2],
    pub vectors: Mat2,
}

/// Closed-form eigendecomposition of a Hermitian 2×2 matrix.
///
/// `u*·m·u = diag(values)` with `values[0] ≤ values[1]`. Each eigenvector is
/// phase fixed so its first nonzero component is real positive. When the
/// eigenvalue gap is below [`Tolerances::eigen_gap`](crate::Tolerances) the
/// matrix is treated as scalar and `u = I`.
pub fn eigen_h2(m: &Mat2) -> Result<HermitianEigen> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = m.max_abs().max(1.0);
    let herm = m.hermitian_residual();
    if herm > TOL.hermitian * scale {
        return Err(Error::NotHermitian { residual: herm });
    }
    let a = m.m[0][0].re;
    let d = m.m[1][1].re;
    // symmetrized off-diagonal
    let b = (m.m[0][1] + m.m[1][0].conj()) * 0.5;

    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let radius = half.hypot(b.norm());
    let values = [mean - radius, mean + radius];

    if 2.0 * radius < TOL.eigen_gap {
        return Ok(HermitianEigen {
            values,
            vectors: Mat2::IDENTITY,
        });
    }

    // Pick the better-conditioned row of (m − ev·I) for each eigenvector.
    let (low, high) = if half >= 0.0 {
        (
            Vec2::new(-b, c(half + radius, 0.0)),
            Vec2::new(c(half + radius, 0.0), b.conj()),
        )
    } else {
        (
            Vec2::new(c(radius - half, 0.0), -b.conj()),
            Vec2::new(b, c(radius - half, 0.0)),
        )
    };
    let low = low.scale(1.0 / low.norm()).phase_fixed();
    let high = high.scale(1.0 / high.norm()).phase_fixed();
    Ok(HermitianEigen {
        values,
        vectors: Mat2::from_cols(low, high),
    })
}

/// `u·m·u*`.
pub fn conjugate(u: &Mat2, m: &Mat2) -> Result<Mat2> {
    let res = u.unitary_residual();
    if res.is_nan() || res > TOL.unitary {
        return Err(Error::NotUnitary { residual: res });
    }
    Ok(*u * *m * u.adjoint())
}

/// Distance between two angles measured on the circle, in `[0, π]`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let t = theta.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}
