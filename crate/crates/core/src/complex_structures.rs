//! Orthogonal complex structures of E⁴ and oriented 2-planes.
//!
//! An orthogonal complex structure is `A ∈ O(4)` with `A² = −E₄`. The set
//! splits into two 2-spheres Σ₊, Σ₋ sitting in ∧²₊E⁴ and ∧²₋E⁴, and an
//! oriented 2-plane corresponds to exactly one pair `(A₊, A₋) ∈ Σ₊ × Σ₋`.
//! This module also factors `SO(4) = H₁·H₂` and evaluates the double covers
//! `Φ: H₁ → SO(3)` and `Φ̃: SO(4) → SO(3) × SO(3)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg4::{
    basis_i, det4, inner4, is_special_orthogonal, orthogonality_defect, symmetric_eigen, Chirality,
    Mat4, Vec4,
};

/// Rank tolerance for the common-plane eigenspace in [`pair_to_plane`].
pub const PLANE_RANK_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error("not an orthogonal complex structure: |ᵗAA − E| = {orthogonality:e}, |A² + E| = {square:e}")]
    NotAComplexStructure { orthogonality: f64, square: f64 },
    #[error("sphere coordinates are not unit: |c| = {0}")]
    NonUnitCoords(f64),
    #[error("vectors are not an orthonormal pair (|a| = {norm_a}, |b| = {norm_b}, <a,b> = {dot})")]
    DegeneratePair { norm_a: f64, norm_b: f64, dot: f64 },
    #[error("A₋A₊ has a {0}-dimensional (-1)-eigenspace, expected 2")]
    NoCommonPlane(usize),
    #[error("matrix is not in SO(4) (orthogonality defect {orthogonality:e}, det {det})")]
    NotSO4 { orthogonality: f64, det: f64 },
    #[error("H₁·H₂ factorization failed: first row/column of C deviates by {0:e}")]
    FactorizationFailed(f64),
    #[error("quaternion is not unit: |b| = {0}")]
    NonUnitQuaternion(f64),
    #[error("frame condition violated: {0}")]
    FrameConditionViolated(String),
    #[error("structure has chirality {found}, expected {expected}")]
    ChiralityMismatch { expected: Chirality, found: Chirality },
}

/// `A ∈ Σ_ε` together with its chirality and its point `c ∈ S²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalComplexStructure {
    pub matrix: Mat4,
    pub chirality: Chirality,
    pub coords: [f64; 3],
}

impl OrthogonalComplexStructure {
    /// The structure with the same chirality and antipodal coordinates.
    pub fn negated(&self) -> Self {
        Self {
            matrix: -self.matrix,
            chirality: self.chirality,
            coords: self.coords.map(|c| -c),
        }
    }

    pub fn apply(&self, x: Vec4) -> Vec4 {
        self.matrix * x
    }
}

fn norm3(c: [f64; 3]) -> f64 {
    (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
}

fn combine(eps: Chirality, c: [f64; 3]) -> Mat4 {
    (1..=3).fold(Mat4::ZERO, |m, k| {
        m + basis_i(eps, k).into_matrix().scale(c[k - 1])
    })
}

/// Identifies the chirality and sphere coordinates of `a`.
///
/// The coordinates are read off the first column (`c = (a₂₁, a₃₁, a₄₁)`).
/// The chirality comes from the sign relation between the first two columns
/// when `(a₃₁, a₄₁)` carries most of the weight, and otherwise from
/// `a₄₃ = ε a₂₁`.
pub fn classify_ocs(a: &Mat4, tol: f64) -> Result<OrthogonalComplexStructure, StructureError> {
    let orthogonality = orthogonality_defect(a);
    let square = (*a * *a + Mat4::IDENTITY).max_abs();
    let not_ocs = || StructureError::NotAComplexStructure {
        orthogonality,
        square,
    };
    if orthogonality > tol || square > tol {
        return Err(not_ocs());
    }
    let m = &a.0;
    let c = [m[1][0], m[2][0], m[3][0]];
    let lateral = c[1] * c[1] + c[2] * c[2];
    let eps = if lateral > c[0] * c[0] {
        // (a₃₂, a₄₂) = ε (a₄₁, −a₃₁)
        let s = m[2][1] * m[3][0] - m[3][1] * m[2][0];
        if s >= 0.0 {
            Chirality::Plus
        } else {
            Chirality::Minus
        }
    } else if m[3][2] * m[1][0] >= 0.0 {
        Chirality::Plus
    } else {
        Chirality::Minus
    };
    if combine(eps, c).dist(a) > tol {
        return Err(not_ocs());
    }
    Ok(OrthogonalComplexStructure {
        matrix: *a,
        chirality: eps,
        coords: c,
    })
}

/// `c¹I_{ε,1} + c²I_{ε,2} + c³I_{ε,3}` for a unit `c`.
pub fn compose_ocs(
    eps: Chirality,
    c: [f64; 3],
    tol: f64,
) -> Result<OrthogonalComplexStructure, StructureError> {
    let n = norm3(c);
    if (n - 1.0).abs() > tol {
        return Err(StructureError::NonUnitCoords(n));
    }
    Ok(OrthogonalComplexStructure {
        matrix: combine(eps, c),
        chirality: eps,
        coords: c,
    })
}

/// An oriented 2-plane, represented by an ordered orthonormal pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientedPlane {
    a: Vec4,
    b: Vec4,
}

impl OrientedPlane {
    pub fn new(a: Vec4, b: Vec4, tol: f64) -> Result<Self, StructureError> {
        let (norm_a, norm_b, dot) = (a.norm(), b.norm(), inner4(a, b));
        if (norm_a - 1.0).abs() > tol || (norm_b - 1.0).abs() > tol || dot.abs() > tol {
            return Err(StructureError::DegeneratePair {
                norm_a,
                norm_b,
                dot,
            });
        }
        Ok(Self { a, b })
    }

    /// Orthonormalizes an arbitrary independent pair, keeping its orientation.
    pub fn from_span(a: Vec4, b: Vec4, tol: f64) -> Result<Self, StructureError> {
        let a1 = a.normalized();
        let b1 = b - a1.scale(inner4(a1, b));
        let nb = b1.norm();
        if !(nb > tol) || !a1.is_finite() {
            return Err(StructureError::DegeneratePair {
                norm_a: a.norm(),
                norm_b: b.norm(),
                dot: inner4(a, b),
            });
        }
        Ok(Self {
            a: a1,
            b: b1.scale(1.0 / nb),
        })
    }

    pub fn a(&self) -> Vec4 {
        self.a
    }

    pub fn b(&self) -> Vec4 {
        self.b
    }

    /// The pair with its order reversed (opposite orientation).
    pub fn reversed(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    /// Another representative of the same orientation class, rotated by θ.
    pub fn rotated(&self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            a: self.a.scale(c) + self.b.scale(s),
            b: self.b.scale(c) - self.a.scale(s),
        }
    }

    /// Orthogonal projector `a ᵗa + b ᵗb` onto the plane.
    pub fn projector(&self) -> Mat4 {
        self.a.outer(self.a) + self.b.outer(self.b)
    }

    pub fn projector_distance(&self, other: &OrientedPlane) -> f64 {
        self.projector().dist(&other.projector())
    }

    /// Same underlying plane and same orientation class.
    pub fn same_oriented(&self, other: &OrientedPlane, tol: f64) -> bool {
        if self.projector_distance(other) > tol {
            return false;
        }
        let (p1, m1) = plane_to_pair(self);
        let (p2, m2) = plane_to_pair(other);
        p1.matrix.dist(&p2.matrix) <= tol && m1.matrix.dist(&m2.matrix) <= tol
    }
}

fn plane_coords(a: Vec4, b: Vec4, eps: Chirality) -> [f64; 3] {
    let s = eps.sign();
    let (a, b) = (a.0, b.0);
    [
        a[0] * b[1] - a[1] * b[0] + s * (a[2] * b[3] - a[3] * b[2]),
        a[0] * b[2] - a[2] * b[0] + s * (a[3] * b[1] - a[1] * b[3]),
        a[0] * b[3] - a[3] * b[0] + s * (a[1] * b[2] - a[2] * b[1]),
    ]
}

/// The pair `(A₊, A₋)` with `A_ε a = b`.
pub fn plane_to_pair(p: &OrientedPlane) -> (OrthogonalComplexStructure, OrthogonalComplexStructure) {
    let make = |eps| {
        let c = plane_coords(p.a, p.b, eps);
        OrthogonalComplexStructure {
            matrix: combine(eps, c),
            chirality: eps,
            coords: c,
        }
    };
    (make(Chirality::Plus), make(Chirality::Minus))
}

/// The oriented plane `(u, A₊u)` where `u` spans `{x : A₊x = A₋x}`.
///
/// That set is the (−1)-eigenspace of the symmetric involution `A₋A₊`, i.e.
/// the kernel of `A₋A₊ + E₄`, extracted by a symmetric eigen-decomposition.
pub fn pair_to_plane(
    aplus: &OrthogonalComplexStructure,
    aminus: &OrthogonalComplexStructure,
) -> Result<OrientedPlane, StructureError> {
    for (s, want) in [(aplus, Chirality::Plus), (aminus, Chirality::Minus)] {
        if s.chirality != want {
            return Err(StructureError::ChiralityMismatch {
                expected: want,
                found: s.chirality,
            });
        }
    }
    let prod = aminus.matrix * aplus.matrix;
    let m = (prod + prod.transpose()).scale(0.5) + Mat4::IDENTITY;
    let (vals, vecs) = symmetric_eigen(&m);
    let kernel: Vec<Vec4> = vals
        .iter()
        .zip(vecs)
        .filter(|(l, _)| l.abs() <= PLANE_RANK_TOL)
        .map(|(_, v)| v)
        .collect();
    if kernel.len() != 2 {
        return Err(StructureError::NoCommonPlane(kernel.len()));
    }
    // Best-conditioned basis direction projected into the kernel.
    let proj = kernel[0].outer(kernel[0]) + kernel[1].outer(kernel[1]);
    let u = (0..4)
        .map(|j| proj.column(j))
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("four columns")
        .normalized();
    let au = aplus.matrix * u;
    Ok(OrientedPlane { a: u, b: au })
}

/// Elements of H₁ are parametrized by a unit quaternion `b = (b₁, b₂, b₃, b₄)`.
pub fn h1_matrix(b: [f64; 4]) -> Mat4 {
    let [b1, b2, b3, b4] = b;
    Mat4([
        [b1, -b2, -b3, -b4],
        [b2, b1, b4, -b3],
        [b3, -b4, b1, b2],
        [b4, b3, -b2, b1],
    ])
}

/// Product in H₁ expressed on parameters: `h1(quat_mul(b, b')) = h1(b) h1(b')`.
pub fn quat_mul(b: [f64; 4], bp: [f64; 4]) -> [f64; 4] {
    h1_matrix(b).mul_vec(Vec4(bp)).0
}

/// Embeds `C ∈ SO(3)` as the lower-right block of an element of H₂.
pub fn h2_matrix(c: &[[f64; 3]; 3]) -> Mat4 {
    let mut m = Mat4::IDENTITY;
    for i in 0..3 {
        for j in 0..3 {
            m.0[i + 1][j + 1] = c[i][j];
        }
    }
    m
}

/// `A = B·C` with `B ∈ H₁`, `C ∈ H₂`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SO4Factorization {
    pub b_quat: [f64; 4],
    pub c_block: [[f64; 3]; 3],
}

impl SO4Factorization {
    pub fn b_matrix(&self) -> Mat4 {
        h1_matrix(self.b_quat)
    }

    pub fn c_matrix(&self) -> Mat4 {
        h2_matrix(&self.c_block)
    }

    pub fn product(&self) -> Mat4 {
        self.b_matrix() * self.c_matrix()
    }
}

fn check_so4(a: &Mat4, tol: f64) -> Result<(), StructureError> {
    if !is_special_orthogonal(a, tol) {
        return Err(StructureError::NotSO4 {
            orthogonality: orthogonality_defect(a),
            det: det4(a),
        });
    }
    Ok(())
}

/// Factors `A ∈ SO(4)` as `B·C`. `B` is pinned by the first column of `A`.
pub fn h1h2_factorize(a: &Mat4, tol: f64) -> Result<SO4Factorization, StructureError> {
    check_so4(a, tol)?;
    let b_quat = a.column(0).0;
    let c = h1_matrix(b_quat).transpose() * *a;
    let defect = (1..4)
        .map(|k| c.0[0][k].abs().max(c.0[k][0].abs()))
        .fold((c.0[0][0] - 1.0).abs(), f64::max);
    if defect > tol {
        return Err(StructureError::FactorizationFailed(defect));
    }
    let c_block = std::array::from_fn(|i| std::array::from_fn(|j| c.0[i + 1][j + 1]));
    Ok(SO4Factorization { b_quat, c_block })
}

pub type Mat3 = [[f64; 3]; 3];

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn mat3_dist(a: &Mat3, b: &Mat3) -> f64 {
    let mut d = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a[i][j] - b[i][j]).abs());
        }
    }
    d
}

pub fn mat3_det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// `max(‖ᵗCC − E₃‖, |det C − 1|)`.
pub fn so3_defect(c: &Mat3) -> f64 {
    let ct: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| c[j][i]));
    let id: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }));
    mat3_dist(&mat3_mul(&ct, c), &id).max((mat3_det(c) - 1.0).abs())
}

/// The double cover `Φ: H₁ → SO(3)` evaluated on the quaternion parameter.
pub fn phi(b: [f64; 4], tol: f64) -> Result<Mat3, StructureError> {
    let n = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (n - 1.0).abs() > tol {
        return Err(StructureError::NonUnitQuaternion(n));
    }
    let [b1, b2, b3, b4] = b;
    Ok([
        [
            b1 * b1 + b2 * b2 - b3 * b3 - b4 * b4,
            2.0 * b1 * b4 + 2.0 * b2 * b3,
            -2.0 * b1 * b3 + 2.0 * b2 * b4,
        ],
        [
            -2.0 * b1 * b4 + 2.0 * b2 * b3,
            b1 * b1 + b3 * b3 - b2 * b2 - b4 * b4,
            2.0 * b1 * b2 + 2.0 * b3 * b4,
        ],
        [
            2.0 * b1 * b3 + 2.0 * b2 * b4,
            -2.0 * b1 * b2 + 2.0 * b3 * b4,
            b1 * b1 + b4 * b4 - b2 * b2 - b3 * b3,
        ],
    ])
}

/// `Φ̃(A) = (C, Φ(B)·C)` where `A = B·C`.
pub fn phi_tilde(a: &Mat4, tol: f64) -> Result<(Mat3, Mat3), StructureError> {
    let f = h1h2_factorize(a, tol)?;
    let bt = phi(f.b_quat, tol)?;
    Ok((f.c_block, mat3_mul(&bt, &f.c_block)))
}

/// Chirality of `A ∈ Σ` from the sign of `det[u Au u' Au']`.
pub fn chirality_via_frame(
    a: &Mat4,
    u: Vec4,
    uprime: Vec4,
    tol: f64,
) -> Result<Chirality, StructureError> {
    let au = *a * u;
    let checks = [
        ("|u| = 1", (u.norm() - 1.0).abs()),
        ("|u'| = 1", (uprime.norm() - 1.0).abs()),
        ("<u', u> = 0", inner4(uprime, u).abs()),
        ("<u', Au> = 0", inner4(uprime, au).abs()),
    ];
    if let Some((what, _)) = checks.iter().find(|(_, d)| *d > tol) {
        return Err(StructureError::FrameConditionViolated((*what).to_string()));
    }
    let x = Mat4::from_columns([u, au, uprime, *a * uprime]);
    Ok(if det4(&x) > 0.0 {
        Chirality::Plus
    } else {
        Chirality::Minus
    })
}
