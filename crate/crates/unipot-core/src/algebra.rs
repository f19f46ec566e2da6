//! Complex 4-vectors and 4x4 matrices under the x4 = ict convention.
//!
//! The bilinear form used throughout is the plain Euclidean sum
//! `a·b = Σ a_i b_i` with no conjugation, and "orthogonal" means
//! `A Aᵗ = I` with a plain (not conjugate) transpose.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

/// Complex 4-component vector (houses U, V, A and friends).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [C64; 4]);

impl FourVector {
    pub fn zero() -> Self {
        FourVector([ZERO; 4])
    }

    /// The rest vector (0, 0, 0, 1).
    pub fn rest() -> Self {
        FourVector([ZERO, ZERO, ZERO, ONE])
    }

    pub fn from_real(v: [f64; 4]) -> Self {
        FourVector([
            C64::new(v[0], 0.0),
            C64::new(v[1], 0.0),
            C64::new(v[2], 0.0),
            C64::new(v[3], 0.0),
        ])
    }

    /// Bilinear form Σ a_i b_i, no conjugation.
    pub fn dot(&self, other: &FourVector) -> C64 {
        let mut s = ZERO;
        for k in 0..4 {
            s += self.0[k] * other.0[k];
        }
        s
    }

    pub fn scaled(&self, s: C64) -> FourVector {
        FourVector([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    /// Largest component magnitude.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for FourVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        let mut out = self;
        for k in 0..4 {
            out.0[k] += rhs.0[k];
        }
        out
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        let mut out = self;
        for k in 0..4 {
            out.0[k] -= rhs.0[k];
        }
        out
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self.scaled(C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: C64) -> FourVector {
        self.scaled(s)
    }
}

/// Complex 4x4 matrix (houses F, phi, P, S, Gamma_k, Psi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[C64; 4]; 4]);

impl Matrix4 {
    pub fn zero() -> Self {
        Matrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Matrix4::zero();
        for k in 0..4 {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    /// Rank-one product `a_i b_j`.
    pub fn outer(a: &FourVector, b: &FourVector) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = a.0[i] * b.0[j];
            }
        }
        m
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        let mut out = FourVector::zero();
        for i in 0..4 {
            let mut s = ZERO;
            for j in 0..4 {
                s += self.0[i][j] * x.0[j];
            }
            out.0[i] = s;
        }
        out
    }

    pub fn mat_mul(&self, other: &Matrix4) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = ZERO;
                for k in 0..4 {
                    s += self.0[i][k] * other.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    /// Plain transpose, never conjugate-transpose.
    pub fn transpose(&self) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn scaled(&self, s: C64) -> Matrix4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix4) -> Matrix4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += other.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix4) -> Matrix4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] -= other.0[i][j];
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max(self.0[i][j].norm());
            }
        }
        m
    }

    /// Max-norm of A + Aᵗ; zero for an antisymmetric matrix.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((self.0[i][j] + self.0[j][i]).norm());
            }
        }
        m
    }

    /// Max-norm of A·Aᵗ - I.
    pub fn orthogonality_defect(&self) -> f64 {
        self.mat_mul(&self.transpose())
            .sub(&Matrix4::identity())
            .max_norm()
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        self.mat_mul(&rhs)
    }
}
