//! 2x2 complex matrices for the Dirac algebra: Pauli matrices, Green-function
//! kernels, density matrices.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// A 2x2 complex matrix stored by entries.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// Pauli matrix sigma_1 = [[0, 1], [1, 0]].
    pub fn sigma1() -> Self {
        Self::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    /// Pauli matrix sigma_3 = [[1, 0], [0, -1]].
    pub fn sigma3() -> Self {
        Self::diag(Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), d)
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a11.conj(), self.a12.conj(), self.a21.conj(), self.a22.conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(Complex64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    /// Largest entry modulus; the norm used by quadrature error control.
    pub fn max_abs(&self) -> f64 {
        self.a11
            .norm()
            .max(self.a12.norm())
            .max(self.a21.norm())
            .max(self.a22.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// max |A - A^dagger| entrywise; zero for Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: f64) -> Mat2 {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Complex64) -> Mat2 {
        self.scale_c(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trace_is_diagonal_sum() {
        let a = Mat2::new(c(1.0, 2.0), c(0.5, 0.0), c(0.0, -1.0), c(3.0, -2.0));
        assert_eq!(a.trace(), c(4.0, 0.0));
    }

    #[test]
    fn product_is_associative() {
        let a = Mat2::new(c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5), c(2.0, 0.0));
        let b = Mat2::sigma1() + Mat2::sigma3().scale(0.3);
        let d = Mat2::new(c(0.2, -0.7), c(1.5, 0.0), c(0.0, 0.1), c(-0.4, 0.9));
        let lhs = (a * b) * d;
        let rhs = a * (b * d);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn pauli_algebra() {
        let s1 = Mat2::sigma1();
        let s3 = Mat2::sigma3();
        assert!((s1 * s1).max_abs_diff(&Mat2::identity()) < 1e-15);
        assert!((s3 * s3).max_abs_diff(&Mat2::identity()) < 1e-15);
        // sigma1 sigma3 = -sigma3 sigma1
        assert!((s1 * s3 + s3 * s1).max_abs() < 1e-15);
    }

    #[test]
    fn adjoint_of_product() {
        let a = Mat2::new(c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.5), c(2.0, 0.0));
        let b = Mat2::new(c(0.2, -0.7), c(1.5, 0.0), c(0.0, 0.1), c(-0.4, 0.9));
        assert!((a * b).adjoint().max_abs_diff(&(b.adjoint() * a.adjoint())) < 1e-14);
    }
}
