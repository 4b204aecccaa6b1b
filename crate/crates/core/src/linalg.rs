//! Small fixed-size linear algebra: real 3-vectors and matrices, complex
//! 2-spinors and 2×2 complex matrices. Everything is `Copy` and allocation
//! free; this is all the geometry in the crate ever needs.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);
    pub const X: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const Y: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const Z: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3([
            self.0[1] * other.0[2] - self.0[2] * other.0[1],
            self.0[2] * other.0[0] - self.0[0] * other.0[2],
            self.0[0] * other.0[1] - self.0[1] * other.0[0],
        ])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(&self) -> Vec3 {
        *self * (1.0 / self.norm())
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Vec3) -> f64 {
        (0..3)
            .map(|i| (self.0[i] - other.0[i]).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

/// Real 3×3 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        Vec3([
            self.0[0][0] * v.0[0] + self.0[0][1] * v.0[1] + self.0[0][2] * v.0[2],
            self.0[1][0] * v.0[0] + self.0[1][1] * v.0[1] + self.0[1][2] * v.0[2],
            self.0[2][0] * v.0[0] + self.0[2][1] * v.0[1] + self.0[2][2] * v.0[2],
        ])
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] = self.0[j][i];
            }
        }
        Mat3(t)
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        let mut m = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        m
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut p = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                p[i][j] = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Mat3(p)
    }
}

/// Complex 2-spinor `(z₁, z₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor(pub [Complex64; 2]);

impl Spinor {
    pub const ZERO: Spinor = Spinor([Complex64::new(0.0, 0.0); 2]);

    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Spinor([z1, z2])
    }

    pub fn from_reals(a: f64, b: f64, c: f64, d: f64) -> Self {
        Spinor([Complex64::new(a, b), Complex64::new(c, d)])
    }

    /// Hermitian inner product `⟨self, other⟩ = self† other`.
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// `z†z`.
    pub fn norm_sq(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn scale(&self, c: Complex64) -> Spinor {
        Spinor([self.0[0] * c, self.0[1] * c])
    }

    pub fn add(&self, other: &Spinor) -> Spinor {
        Spinor([self.0[0] + other.0[0], self.0[1] + other.0[1]])
    }

    pub fn sub(&self, other: &Spinor) -> Spinor {
        Spinor([self.0[0] - other.0[0], self.0[1] - other.0[1]])
    }

    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.0[0] - other.0[0])
            .norm()
            .max((self.0[1] - other.0[1]).norm())
    }
}

/// Complex 2×2 matrix, row major. Used for SU(2) elements, the quaternion
/// matrix `M(z)`, Pauli algebra, and the group `B ⊂ SL(2,ℂ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorMatrix(pub [[Complex64; 2]; 2]);

impl SpinorMatrix {
    pub const ZERO: SpinorMatrix = SpinorMatrix([[Complex64::new(0.0, 0.0); 2]; 2]);

    pub fn identity() -> Self {
        SpinorMatrix([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        SpinorMatrix([[a, b], [c, d]])
    }

    /// Matrix whose two columns are the given spinors.
    pub fn from_columns(c1: &Spinor, c2: &Spinor) -> Self {
        SpinorMatrix([[c1.0[0], c2.0[0]], [c1.0[1], c2.0[1]]])
    }

    pub fn adjoint(&self) -> SpinorMatrix {
        SpinorMatrix([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Inverse via the adjugate; caller must ensure the determinant is
    /// bounded away from zero.
    pub fn inverse(&self) -> SpinorMatrix {
        let d = self.det();
        SpinorMatrix([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    pub fn scale(&self, c: Complex64) -> SpinorMatrix {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= c;
            }
        }
        m
    }

    pub fn add(&self, other: &SpinorMatrix) -> SpinorMatrix {
        let mut m = *self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] += other.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &SpinorMatrix) -> SpinorMatrix {
        let mut m = *self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] -= other.0[i][j];
            }
        }
        m
    }

    pub fn apply(&self, z: &Spinor) -> Spinor {
        Spinor([
            self.0[0][0] * z.0[0] + self.0[0][1] * z.0[1],
            self.0[1][0] * z.0[0] + self.0[1][1] * z.0[1],
        ])
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0f64, |m, e| m.max(e.norm()))
    }

    pub fn max_abs_diff(&self, other: &SpinorMatrix) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        m
    }
}

impl Mul for SpinorMatrix {
    type Output = SpinorMatrix;
    fn mul(self, o: SpinorMatrix) -> SpinorMatrix {
        let mut p = SpinorMatrix::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                p.0[i][j] = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        p
    }
}
