//! Small exact linear algebra on E⁴.
//!
//! Vectors and 4×4 matrices are plain fixed-size arrays. Bivectors are kept
//! as full alternating matrices so they can be multiplied and traced like
//! any other endomorphism of E⁴.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for the matrix predicates in this module.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not alternating (max |a_ij + a_ji| = {0:e})")]
    NotAlternating(f64),
}

/// A vector of E⁴.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// The standard basis vector e_k, with `k` in 1..=4.
    pub fn basis(k: usize) -> Self {
        assert!((1..=4).contains(&k), "basis index {k} out of range 1..=4");
        let mut v = [0.0; 4];
        v[k - 1] = 1.0;
        Vec4(v)
    }

    pub fn dot(self, other: Vec4) -> f64 {
        inner4(self, other)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Vec4 {
        Vec4(self.0.map(|x| x * s))
    }

    pub fn normalized(self) -> Vec4 {
        self.scale(1.0 / self.norm())
    }

    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Outer product `self · ᵗother`.
    pub fn outer(self, other: Vec4) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[i] * other.0[j];
            }
        }
        m
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        self.scale(-1.0)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, rhs: Vec4) -> Vec4 {
        rhs.scale(self)
    }
}

/// The standard inner product of E⁴.
pub fn inner4(a: Vec4, b: Vec4) -> f64 {
    a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2] + a.0[3] * b.0[3]
}

/// A real 4×4 matrix, row-major: `m.0[i][j]` is row `i`, column `j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[0.0; 4]; 4]);
    pub const IDENTITY: Mat4 = Mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    pub fn diag(d: [f64; 4]) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: [Vec4; 4]) -> Mat4 {
        let mut m = Mat4::ZERO;
        for (j, c) in cols.iter().enumerate() {
            for i in 0..4 {
                m.0[i][j] = c.0[i];
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn scale(&self, s: f64) -> Mat4 {
        Mat4(self.0.map(|row| row.map(|x| x * s)))
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn mul_vec(&self, x: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| {
            (0..4).map(|j| self.0[i][j] * x.0[j]).sum()
        }))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Entrywise max-norm distance.
    pub fn dist(&self, other: &Mat4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] + rhs.0[i][j])
        }))
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] - rhs.0[i][j])
        }))
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self.scale(-1.0)
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
        }))
    }
}

impl Mul<Vec4> for Mat4 {
    type Output = Vec4;
    fn mul(self, rhs: Vec4) -> Vec4 {
        self.mul_vec(rhs)
    }
}

impl Mul<Mat4> for f64 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        rhs.scale(self)
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(
                f,
                "[{:>10.6} {:>10.6} {:>10.6} {:>10.6}]",
                row[0], row[1], row[2], row[3]
            )?;
        }
        Ok(())
    }
}

/// `⟨A, B⟩ = ¼ tr(ᵗA B)`.
pub fn mat_inner(a: &Mat4, b: &Mat4) -> f64 {
    0.25 * a
        .0
        .iter()
        .flatten()
        .zip(b.0.iter().flatten())
        .map(|(x, y)| x * y)
        .sum::<f64>()
}

/// Chirality of an orthogonal complex structure (the sign ε).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Chirality {
    pub const BOTH: [Chirality; 2] = [Chirality::Plus, Chirality::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Chirality {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::Plus => "+",
            Chirality::Minus => "-",
        })
    }
}

/// An element of ∧²E⁴, stored as an alternating 4×4 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bivector(Mat4);

impl Bivector {
    pub const ZERO: Bivector = Bivector(Mat4::ZERO);

    /// Accepts `m` if it is alternating within `tol`, then antisymmetrizes it
    /// so the stored matrix is exactly alternating.
    pub fn from_matrix(m: Mat4, tol: f64) -> Result<Self, LinalgError> {
        let skew = alternation_defect(&m);
        if skew > tol {
            return Err(LinalgError::NotAlternating(skew));
        }
        Ok(Bivector((m - m.transpose()).scale(0.5)))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }

    /// Coordinates in the orthonormal basis {I₊,ₖ} ∪ {I₋,ₖ}.
    pub fn coords(&self) -> ([f64; 3], [f64; 3]) {
        let c = |eps| std::array::from_fn(|k| mat_inner(&self.0, basis_i(eps, k + 1).matrix()));
        (c(Chirality::Plus), c(Chirality::Minus))
    }

    /// Inverse of [`Bivector::coords`].
    pub fn from_coords(cplus: [f64; 3], cminus: [f64; 3]) -> Bivector {
        let mut m = Mat4::ZERO;
        for k in 0..3 {
            m = m + basis_i(Chirality::Plus, k + 1).0.scale(cplus[k]);
            m = m + basis_i(Chirality::Minus, k + 1).0.scale(cminus[k]);
        }
        Bivector(m)
    }

    pub fn scale(&self, s: f64) -> Bivector {
        Bivector(self.0.scale(s))
    }
}

impl Add for Bivector {
    type Output = Bivector;
    fn add(self, rhs: Bivector) -> Bivector {
        Bivector(self.0 + rhs.0)
    }
}

impl Sub for Bivector {
    type Output = Bivector;
    fn sub(self, rhs: Bivector) -> Bivector {
        Bivector(self.0 - rhs.0)
    }
}

impl Neg for Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector(-self.0)
    }
}

fn alternation_defect(m: &Mat4) -> f64 {
    (*m + m.transpose()).max_abs()
}

/// `a ∧ b = b ᵗa − a ᵗb`.
pub fn wedge(a: Vec4, b: Vec4) -> Bivector {
    let mut m = Mat4::ZERO;
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = b.0[i] * a.0[j] - a.0[i] * b.0[j];
        }
    }
    Bivector(m)
}

const I_PLUS: [[[f64; 4]; 4]; 3] = [
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ],
    [
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
    ],
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ],
];

const I_MINUS: [[[f64; 4]; 4]; 3] = [
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ],
    [
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ],
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ],
];

/// The basis bivector I_{ε,k}, `k` in 1..=3.
pub fn basis_i(eps: Chirality, k: usize) -> Bivector {
    assert!((1..=3).contains(&k), "I_(eps,k) index {k} out of range 1..=3");
    let table = match eps {
        Chirality::Plus => &I_PLUS,
        Chirality::Minus => &I_MINUS,
    };
    Bivector(Mat4(table[k - 1]))
}

/// Coordinates of an alternating matrix in the basis {I±,ₖ}.
pub fn bivector_coords(m: &Mat4, tol: f64) -> Result<([f64; 3], [f64; 3]), LinalgError> {
    Ok(Bivector::from_matrix(*m, tol)?.coords())
}

/// Determinant by Laplace expansion along 2×2 minors of the top rows.
pub fn det4(m: &Mat4) -> f64 {
    let a = &m.0;
    let s0 = a[0][0] * a[1][1] - a[1][0] * a[0][1];
    let s1 = a[0][0] * a[1][2] - a[1][0] * a[0][2];
    let s2 = a[0][0] * a[1][3] - a[1][0] * a[0][3];
    let s3 = a[0][1] * a[1][2] - a[1][1] * a[0][2];
    let s4 = a[0][1] * a[1][3] - a[1][1] * a[0][3];
    let s5 = a[0][2] * a[1][3] - a[1][2] * a[0][3];
    let c5 = a[2][2] * a[3][3] - a[3][2] * a[2][3];
    let c4 = a[2][1] * a[3][3] - a[3][1] * a[2][3];
    let c3 = a[2][1] * a[3][2] - a[3][1] * a[2][2];
    let c2 = a[2][0] * a[3][3] - a[3][0] * a[2][3];
    let c1 = a[2][0] * a[3][2] - a[3][0] * a[2][2];
    let c0 = a[2][0] * a[3][1] - a[3][0] * a[2][1];
    s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
}

/// `‖ᵗA A − E₄‖_max`.
pub fn orthogonality_defect(m: &Mat4) -> f64 {
    (m.transpose() * *m).dist(&Mat4::IDENTITY)
}

pub fn is_orthogonal(m: &Mat4, tol: f64) -> bool {
    orthogonality_defect(m) <= tol
}

pub fn is_special_orthogonal(m: &Mat4, tol: f64) -> bool {
    is_orthogonal(m, tol) && (det4(m) - 1.0).abs() <= tol
}

/// Eigen-decomposition of a symmetric 4×4 matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors.
pub fn symmetric_eigen(m: &Mat4) -> ([f64; 4], [Vec4; 4]) {
    let mut a = m.0;
    let mut v = Mat4::IDENTITY.0;
    for _sweep in 0..64 {
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-300 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let vm = Mat4(v);
    (
        order.map(|i| a[i][i]),
        order.map(|i| vm.column(i)),
    )
}
