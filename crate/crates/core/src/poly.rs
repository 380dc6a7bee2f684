//! Homogeneous cubics on R^2 and R^3: evaluation, differentials, the
//! orthogonal-group action, plane restriction and zonal constructors.
//!
//! `Cubic3` stores plain monomial coefficients c_ijk of
//! p(x) = sum c_ijk x1^i x2^j x3^k.  The scaled coefficients used by the
//! face parametrizations (factor 3 on x1*x2^2-type monomials, 6 on x1*x2*x3)
//! are exposed as named accessors.  `Cubic2` stores the scaled convention
//! p(x) = p30 x1^3 + 3 p21 x1^2 x2 + 3 p12 x1 x2^2 + p03 x2^3 directly.

use crate::error::{Error, Result};
use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};

pub type Vec2 = Vector2<f64>;
pub type Vec3 = Vector3<f64>;
pub type Mat2 = Matrix2<f64>;
pub type Mat3 = Matrix3<f64>;

/// Tolerance on unit norms and orthogonality checks.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance on the first-order criticality residual |grad p(u) - 3 p(u) u|.
pub const CRITICAL_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Sphere points
// ---------------------------------------------------------------------------

/// Unit vector on S^1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint2(Vec2);

impl SpherePoint2 {
    pub fn new(v: Vec2) -> Result<Self> {
        let deviation = (v.norm() - 1.0).abs();
        if deviation > UNIT_TOL {
            return Err(Error::NotOnSphere { deviation });
        }
        Ok(Self(v))
    }

    pub fn from_angle(phi: f64) -> Self {
        Self(Vec2::new(phi.cos(), phi.sin()))
    }

    pub fn coords(&self) -> Vec2 {
        self.0
    }

    pub fn angle(&self) -> f64 {
        self.0.y.atan2(self.0.x)
    }

    /// Counter-clockwise unit tangent at the point.
    pub fn tangent(&self) -> Vec2 {
        Vec2::new(-self.0.y, self.0.x)
    }
}

/// Unit vector on S^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint3(Vec3);

impl SpherePoint3 {
    pub fn new(v: Vec3) -> Result<Self> {
        let deviation = (v.norm() - 1.0).abs();
        if deviation > UNIT_TOL {
            return Err(Error::NotOnSphere { deviation });
        }
        Ok(Self(v))
    }

    /// Normalizes an arbitrary non-zero vector onto the sphere.
    pub fn normalized(v: Vec3) -> Result<Self> {
        let n = v.norm();
        if n < 1e-300 {
            return Err(Error::NotOnSphere { deviation: 1.0 });
        }
        Ok(Self(v / n))
    }

    pub fn e1() -> Self {
        Self(Vec3::x())
    }

    pub fn coords(&self) -> Vec3 {
        self.0
    }

    pub fn antipode(&self) -> Self {
        Self(-self.0)
    }
}

/// Deterministic orthonormal tangent basis at `u`: v1 is the normalized
/// component of the smallest-index standard basis vector not parallel to u,
/// v2 = u x v1.
pub fn tangent_basis(u: &Vec3) -> (Vec3, Vec3) {
    let mut idx = 0;
    for i in 0..3 {
        if 1.0 - u[i].abs() > 1e-6 {
            idx = i;
            break;
        }
    }
    let e = Vec3::ith(idx, 1.0);
    let v1 = (e - u * u[idx]).normalize();
    let v2 = u.cross(&v1);
    (v1, v2)
}

// ---------------------------------------------------------------------------
// Orthogonal maps
// ---------------------------------------------------------------------------

fn orthogonality_deviation2(m: &Mat2) -> f64 {
    (m.transpose() * m - Mat2::identity()).norm()
}

fn orthogonality_deviation3(m: &Mat3) -> f64 {
    (m.transpose() * m - Mat3::identity()).norm()
}

/// Orthogonal 2x2 matrix acting on cubics by p -> p(Q^{-1} x).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthogonalMap2(Mat2);

impl OrthogonalMap2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let deviation = orthogonality_deviation2(&m);
        if deviation > UNIT_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self(Mat2::new(c, -s, s, c))
    }

    pub fn matrix(&self) -> Mat2 {
        self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn apply_point(&self, x: &Vec2) -> Vec2 {
        self.0 * x
    }
}

/// Orthogonal 3x3 matrix acting on cubics by p -> p(Q^{-1} x).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthogonalMap3(Mat3);

impl Serialize for OrthogonalMap3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrthogonalMap3 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[f64; 3]; 3]>::deserialize(deserializer)?;
        OrthogonalMap3::new(Mat3::new(
            rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0],
            rows[2][1], rows[2][2],
        ))
        .map_err(serde::de::Error::custom)
    }
}

impl OrthogonalMap3 {
    pub fn new(m: Mat3) -> Result<Self> {
        let deviation = orthogonality_deviation3(&m);
        if deviation > UNIT_TOL {
            return Err(Error::NotOrthogonal { deviation });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat3::identity())
    }

    /// Rotation about the x1-axis by `theta` (x2 rotates towards x3).
    pub fn rotation_about_x1(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self(Mat3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c))
    }

    /// Reflection flipping the given coordinate axis.
    pub fn reflection(axis: usize) -> Self {
        let mut m = Mat3::identity();
        m[(axis, axis)] = -1.0;
        Self(m)
    }

    /// Shortest rotation taking unit vector `a` to unit vector `b`.
    pub fn rotation_align(a: &Vec3, b: &Vec3) -> Self {
        let c = a.dot(b);
        let v = a.cross(b);
        let s2 = v.norm_squared();
        if s2 < 1e-30 {
            if c > 0.0 {
                return Self::identity();
            }
            // a = -b: rotate by pi about any axis orthogonal to a.
            let (w, _) = tangent_basis(a);
            let k = skew(&w);
            return Self(Mat3::identity() + 2.0 * k * k);
        }
        let k = skew(&v);
        Self(Mat3::identity() + k + k * k * ((1.0 - c) / s2))
    }

    /// Orthogonal map with prescribed rows, i.e. taking r1 -> e1, r2 -> e2,
    /// r3 -> e3 for an orthonormal triple.
    pub fn from_rows(r1: &Vec3, r2: &Vec3, r3: &Vec3) -> Result<Self> {
        Self::new(Mat3::from_rows(&[
            r1.transpose(),
            r2.transpose(),
            r3.transpose(),
        ]))
    }

    pub fn matrix(&self) -> Mat3 {
        self.0
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let m = self.0;
        [
            [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
            [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
            [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
        ]
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn apply_point(&self, x: &Vec3) -> Vec3 {
        self.0 * x
    }
}

fn skew(v: &Vec3) -> Mat3 {
    Mat3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

// ---------------------------------------------------------------------------
// Cubic2
// ---------------------------------------------------------------------------

/// Homogeneous cubic on R^2, stored as
/// p(x) = p30 x1^3 + 3 p21 x1^2 x2 + 3 p12 x1 x2^2 + p03 x2^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cubic2 {
    pub p30: f64,
    pub p21: f64,
    pub p12: f64,
    pub p03: f64,
}

impl Cubic2 {
    pub fn new(p30: f64, p21: f64, p12: f64, p03: f64) -> Result<Self> {
        let c = Self { p30, p21, p12, p03 };
        if !c.is_finite() {
            return Err(Error::NonFiniteCoefficients);
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        Self {
            p30: 0.0,
            p21: 0.0,
            p12: 0.0,
            p03: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.p30.is_finite() && self.p21.is_finite() && self.p12.is_finite() && self.p03.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.p30 == 0.0 && self.p21 == 0.0 && self.p12 == 0.0 && self.p03 == 0.0
    }

    /// Plain monomial coefficients (c30, c21, c12, c03) of x1^3, x1^2 x2, x1 x2^2, x2^3.
    pub fn monomial_coeffs(&self) -> [f64; 4] {
        [self.p30, 3.0 * self.p21, 3.0 * self.p12, self.p03]
    }

    pub fn from_monomial(c: [f64; 4]) -> Result<Self> {
        Self::new(c[0], c[1] / 3.0, c[2] / 3.0, c[3])
    }

    pub fn eval(&self, x: &Vec2) -> f64 {
        let (a, b) = (x.x, x.y);
        self.p30 * a * a * a
            + 3.0 * self.p21 * a * a * b
            + 3.0 * self.p12 * a * b * b
            + self.p03 * b * b * b
    }

    pub fn eval_angle(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        self.eval(&Vec2::new(c, s))
    }

    pub fn gradient(&self, x: &Vec2) -> Vec2 {
        let (a, b) = (x.x, x.y);
        Vec2::new(
            3.0 * self.p30 * a * a + 6.0 * self.p21 * a * b + 3.0 * self.p12 * b * b,
            3.0 * self.p21 * a * a + 6.0 * self.p12 * a * b + 3.0 * self.p03 * b * b,
        )
    }

    pub fn hessian(&self, x: &Vec2) -> Mat2 {
        let (a, b) = (x.x, x.y);
        let hxx = 6.0 * (self.p30 * a + self.p21 * b);
        let hxy = 6.0 * (self.p21 * a + self.p12 * b);
        let hyy = 6.0 * (self.p12 * a + self.p03 * b);
        Mat2::new(hxx, hxy, hxy, hyy)
    }

    /// Second derivative of p restricted to S^1 at `u`: t' H t - 3 p(u),
    /// with t the unit tangent.  `critical` reports whether u passes the
    /// first-order test.
    pub fn tangent_hessian(&self, u: &SpherePoint2) -> TangentHessianS1 {
        let x = u.coords();
        let t = u.tangent();
        let g = self.gradient(&x);
        let value = self.eval(&x);
        let residual = (g - x * (3.0 * value)).norm();
        let h = (t.transpose() * self.hessian(&x) * t)[(0, 0)] - 3.0 * value;
        TangentHessianS1 {
            h,
            critical: residual <= CRITICAL_TOL,
        }
    }

    fn tensor(&self) -> [[[f64; 2]; 2]; 2] {
        // Symmetric 3-tensor with p(x) = sum T_ijk x_i x_j x_k.
        let mut t = [[[0.0; 2]; 2]; 2];
        t[0][0][0] = self.p30;
        t[1][1][1] = self.p03;
        for (i, j, k) in [(0, 0, 1), (0, 1, 0), (1, 0, 0)] {
            t[i][j][k] = self.p21;
        }
        for (i, j, k) in [(0, 1, 1), (1, 0, 1), (1, 1, 0)] {
            t[i][j][k] = self.p12;
        }
        t
    }

    /// Symmetric trilinear form with T(x, x, x) = p(x).
    pub fn trilinear(&self, a: &Vec2, b: &Vec2, c: &Vec2) -> f64 {
        let t = self.tensor();
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    acc += t[i][j][k] * a[i] * b[j] * c[k];
                }
            }
        }
        acc
    }

    /// The image q of p under Q, with q(x) = p(Q^{-1} x).
    pub fn apply_orthogonal(&self, q: &OrthogonalMap2) -> Cubic2 {
        let r = q.inverse().matrix();
        let t = self.tensor();
        let mut out = [[[0.0; 2]; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let mut acc = 0.0;
                    for i in 0..2 {
                        for j in 0..2 {
                            for k in 0..2 {
                                acc += t[i][j][k] * r[(i, a)] * r[(j, b)] * r[(k, c)];
                            }
                        }
                    }
                    out[a][b][c] = acc;
                }
            }
        }
        Cubic2 {
            p30: out[0][0][0],
            p21: out[0][0][1],
            p12: out[0][1][1],
            p03: out[1][1][1],
        }
    }

    pub fn scale(&self, s: f64) -> Cubic2 {
        Cubic2 {
            p30: s * self.p30,
            p21: s * self.p21,
            p12: s * self.p12,
            p03: s * self.p03,
        }
    }

    /// Euclidean distance between monomial coefficient vectors.
    pub fn coeff_distance(&self, other: &Cubic2) -> f64 {
        let a = self.monomial_coeffs();
        let b = other.monomial_coeffs();
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

/// Tangent Hessian of a cubic restricted to S^1 (a scalar).
#[derive(Clone, Copy, Debug)]
pub struct TangentHessianS1 {
    pub h: f64,
    pub critical: bool,
}

// ---------------------------------------------------------------------------
// Cubic3
// ---------------------------------------------------------------------------

/// Exponent triples of the ten cubic monomials, in the fixed storage order.
pub const MONOMIALS3: [(u8, u8, u8); 10] = [
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
];

/// Homogeneous cubic on R^3 in the plain monomial basis.
///
/// Coefficient order: x1^3, x1^2 x2, x1^2 x3, x1 x2^2, x1 x2 x3, x1 x3^2,
/// x2^3, x2^2 x3, x2 x3^2, x3^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cubic3 {
    c: [f64; 10],
}

impl Cubic3 {
    pub fn new(c: [f64; 10]) -> Result<Self> {
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCoefficients);
        }
        Ok(Self { c })
    }

    pub fn zero() -> Self {
        Self { c: [0.0; 10] }
    }

    pub fn coeffs(&self) -> &[f64; 10] {
        &self.c
    }

    /// Coefficient of the monomial x1^i x2^j x3^k.
    pub fn coeff(&self, i: u8, j: u8, k: u8) -> f64 {
        let pos = MONOMIALS3
            .iter()
            .position(|&m| m == (i, j, k))
            .expect("exponents must sum to 3");
        self.c[pos]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0.0)
    }

    pub fn coeff_norm(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn coeff_abs_sum(&self) -> f64 {
        self.c.iter().map(|v| v.abs()).sum()
    }

    pub fn coeff_distance(&self, other: &Cubic3) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    // Scaled accessors of the e1-face parametrization.
    pub fn p120(&self) -> f64 {
        self.c[3] / 3.0
    }
    pub fn p111(&self) -> f64 {
        self.c[4] / 6.0
    }
    pub fn p102(&self) -> f64 {
        self.c[5] / 3.0
    }
    pub fn p030(&self) -> f64 {
        self.c[6]
    }
    pub fn p021(&self) -> f64 {
        self.c[7] / 3.0
    }
    pub fn p012(&self) -> f64 {
        self.c[8] / 3.0
    }
    pub fn p003(&self) -> f64 {
        self.c[9]
    }

    /// Builds the cubic with value 1 and critical point at e1:
    /// x1^3 + 3(p120 x2^2 + 2 p111 x2 x3 + p102 x3^2) x1
    ///      + p030 x2^3 + 3 p021 x2^2 x3 + 3 p012 x2 x3^2 + p003 x3^3.
    #[allow(clippy::too_many_arguments)]
    pub fn face_form(
        p120: f64,
        p111: f64,
        p102: f64,
        p030: f64,
        p021: f64,
        p012: f64,
        p003: f64,
    ) -> Self {
        Self {
            c: [
                1.0,
                0.0,
                0.0,
                3.0 * p120,
                6.0 * p111,
                3.0 * p102,
                p030,
                3.0 * p021,
                3.0 * p012,
                p003,
            ],
        }
    }

    /// Whether the cubic has face form (c300 = 1, c210 = c201 = 0) within `tol`.
    pub fn is_face_form(&self, tol: f64) -> bool {
        (self.c[0] - 1.0).abs() <= tol && self.c[1].abs() <= tol && self.c[2].abs() <= tol
    }

    pub fn eval(&self, x: &Vec3) -> f64 {
        let c = &self.c;
        let (a, b, d) = (x.x, x.y, x.z);
        a * (a * (c[0] * a + c[1] * b + c[2] * d) + c[3] * b * b + c[4] * b * d + c[5] * d * d)
            + b * (b * (c[6] * b + c[7] * d) + c[8] * d * d)
            + c[9] * d * d * d
    }

    pub fn gradient(&self, x: &Vec3) -> Vec3 {
        let c = &self.c;
        let (a, b, d) = (x.x, x.y, x.z);
        Vec3::new(
            3.0 * c[0] * a * a
                + 2.0 * a * (c[1] * b + c[2] * d)
                + c[3] * b * b
                + c[4] * b * d
                + c[5] * d * d,
            c[1] * a * a
                + 2.0 * c[3] * a * b
                + c[4] * a * d
                + 3.0 * c[6] * b * b
                + 2.0 * c[7] * b * d
                + c[8] * d * d,
            c[2] * a * a
                + c[4] * a * b
                + 2.0 * c[5] * a * d
                + c[7] * b * b
                + 2.0 * c[8] * b * d
                + 3.0 * c[9] * d * d,
        )
    }

    pub fn hessian(&self, x: &Vec3) -> Mat3 {
        let c = &self.c;
        let (a, b, d) = (x.x, x.y, x.z);
        let hxx = 6.0 * c[0] * a + 2.0 * c[1] * b + 2.0 * c[2] * d;
        let hxy = 2.0 * c[1] * a + 2.0 * c[3] * b + c[4] * d;
        let hxz = 2.0 * c[2] * a + c[4] * b + 2.0 * c[5] * d;
        let hyy = 2.0 * c[3] * a + 6.0 * c[6] * b + 2.0 * c[7] * d;
        let hyz = c[4] * a + 2.0 * c[7] * b + 2.0 * c[8] * d;
        let hzz = 2.0 * c[5] * a + 2.0 * c[8] * b + 6.0 * c[9] * d;
        Mat3::new(hxx, hxy, hxz, hxy, hyy, hyz, hxz, hyz, hzz)
    }

    /// First-order criticality residual |grad p(u) - 3 p(u) u| on the sphere.
    pub fn criticality_residual(&self, u: &Vec3) -> f64 {
        (self.gradient(u) - u * (3.0 * self.eval(u))).norm()
    }

    /// Coefficient vector of the Laplacian, which is a linear form.  For a
    /// zonal cubic it is proportional to the symmetry axis.
    pub fn laplacian_form(&self) -> Vec3 {
        let c = &self.c;
        Vec3::new(
            6.0 * c[0] + 2.0 * c[3] + 2.0 * c[5],
            2.0 * c[1] + 6.0 * c[6] + 2.0 * c[8],
            2.0 * c[2] + 2.0 * c[7] + 6.0 * c[9],
        )
    }

    /// Hessian of p restricted to S^2 at `u`, in the deterministic tangent
    /// basis: V' (grad^2 p) V - <grad p, u> I.  At critical points the inner
    /// product equals 3 p(u).
    pub fn tangent_hessian(&self, u: &SpherePoint3) -> TangentHessianS2 {
        let x = u.coords();
        let (v1, v2) = tangent_basis(&x);
        let h = self.hessian(&x);
        let g = self.gradient(&x);
        let value = self.eval(&x);
        let lambda = 3.0 * value;
        let residual = (g - x * lambda).norm();
        let m = Mat2::new(
            v1.dot(&(h * v1)) - lambda,
            v1.dot(&(h * v2)),
            v2.dot(&(h * v1)),
            v2.dot(&(h * v2)) - lambda,
        );
        TangentHessianS2 {
            m,
            v1,
            v2,
            critical: residual <= CRITICAL_TOL,
        }
    }

    /// Symmetric trilinear form with T(x, x, x) = p(x), via polarization.
    pub fn trilinear(&self, a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
        (self.eval(&(a + b + c)) - self.eval(&(a + b)) - self.eval(&(a + c)) - self.eval(&(b + c))
            + self.eval(a)
            + self.eval(b)
            + self.eval(c))
            / 6.0
    }

    fn tensor(&self) -> [[[f64; 3]; 3]; 3] {
        let mut t = [[[0.0; 3]; 3]; 3];
        for (pos, &(i, j, k)) in MONOMIALS3.iter().enumerate() {
            let exps = [i as usize, j as usize, k as usize];
            let mult = multinomial(exps);
            let val = self.c[pos] / mult as f64;
            // Distribute over every arrangement of the multiset.
            let mut vars = Vec::new();
            for (v, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    vars.push(v);
                }
            }
            for perm in permutations3(&vars) {
                t[perm[0]][perm[1]][perm[2]] = val;
            }
        }
        t
    }

    pub(crate) fn from_tensor(t: &[[[f64; 3]; 3]; 3]) -> Self {
        let mut c = [0.0; 10];
        for (pos, &(i, j, k)) in MONOMIALS3.iter().enumerate() {
            let exps = [i as usize, j as usize, k as usize];
            let mut vars = Vec::new();
            for (v, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    vars.push(v);
                }
            }
            let mut acc = 0.0;
            for perm in permutations3(&vars) {
                acc += t[perm[0]][perm[1]][perm[2]];
            }
            c[pos] = acc;
        }
        Self { c }
    }

    /// The image q of p under Q, with q(x) = p(Q^{-1} x) for all x.
    pub fn apply_orthogonal(&self, q: &OrthogonalMap3) -> Cubic3 {
        let r = q.inverse().matrix();
        let t = self.tensor();
        let mut out = [[[0.0; 3]; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut acc = 0.0;
                    for i in 0..3 {
                        for j in 0..3 {
                            acc += r[(i, a)]
                                * r[(j, b)]
                                * (t[i][j][0] * r[(0, c)]
                                    + t[i][j][1] * r[(1, c)]
                                    + t[i][j][2] * r[(2, c)]);
                        }
                    }
                    out[a][b][c] = acc;
                }
            }
        }
        Self::from_tensor(&out)
    }

    /// Restriction (s, t) -> p(s v1 + t v2) to the great circle spanned by
    /// the orthonormal pair v1, v2.
    pub fn restrict_to_plane(&self, v1: &SpherePoint3, v2: &SpherePoint3) -> Result<Cubic2> {
        let a = v1.coords();
        let b = v2.coords();
        let inner = a.dot(&b).abs();
        if inner > UNIT_TOL {
            return Err(Error::NotOrthonormalPair { inner });
        }
        Ok(Cubic2 {
            p30: self.eval(&a),
            p21: self.trilinear(&a, &a, &b),
            p12: self.trilinear(&a, &b, &b),
            p03: self.eval(&b),
        })
    }

    /// The zonal cubic l1 <axis, x> |x|^2 + l3 <axis, x>^3.
    pub fn make_zonal(axis: &SpherePoint3, l1: f64, l3: f64) -> Cubic3 {
        let a = axis.coords();
        let mut c = [0.0; 10];
        // <a, x> |x|^2
        let lin_norm: [(usize, f64); 9] = [
            (0, a.x),
            (3, a.x),
            (5, a.x),
            (1, a.y),
            (6, a.y),
            (8, a.y),
            (2, a.z),
            (7, a.z),
            (9, a.z),
        ];
        for (pos, v) in lin_norm {
            c[pos] += l1 * v;
        }
        // <a, x>^3
        for (pos, &(i, j, k)) in MONOMIALS3.iter().enumerate() {
            let mult = multinomial([i as usize, j as usize, k as usize]) as f64;
            c[pos] += l3 * mult * a.x.powi(i as i32) * a.y.powi(j as i32) * a.z.powi(k as i32);
        }
        Self { c }
    }

    /// Product of three linear forms <a, x> <b, x> <c, x>.
    pub fn product_of_linears(a: &Vec3, b: &Vec3, c: &Vec3) -> Cubic3 {
        let mut t = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    // symmetrized tensor of the product
                    t[i][j][k] = (a[i] * b[j] * c[k]
                        + a[i] * b[k] * c[j]
                        + a[j] * b[i] * c[k]
                        + a[j] * b[k] * c[i]
                        + a[k] * b[i] * c[j]
                        + a[k] * b[j] * c[i])
                        / 6.0;
                }
            }
        }
        Self::from_tensor(&t)
    }

    pub fn scale(&self, s: f64) -> Cubic3 {
        let mut c = self.c;
        for v in &mut c {
            *v *= s;
        }
        Self { c }
    }

    pub fn add(&self, other: &Cubic3) -> Cubic3 {
        let mut c = self.c;
        for (v, w) in c.iter_mut().zip(other.c.iter()) {
            *v += w;
        }
        Self { c }
    }

    pub fn sub(&self, other: &Cubic3) -> Cubic3 {
        self.add(&other.scale(-1.0))
    }
}

/// Tangent Hessian of a cubic restricted to S^2 (2x2 symmetric) together
/// with the tangent basis it is expressed in.
#[derive(Clone, Copy, Debug)]
pub struct TangentHessianS2 {
    pub m: Mat2,
    pub v1: Vec3,
    pub v2: Vec3,
    pub critical: bool,
}

impl TangentHessianS2 {
    /// Eigenvalues sorted ascending with their 3D eigendirections.
    pub fn eigen(&self) -> ([f64; 2], [Vec3; 2]) {
        let se = self.m.symmetric_eigen();
        let (l0, l1) = (se.eigenvalues[0], se.eigenvalues[1]);
        let d0 = self.v1 * se.eigenvectors[(0, 0)] + self.v2 * se.eigenvectors[(1, 0)];
        let d1 = self.v1 * se.eigenvectors[(0, 1)] + self.v2 * se.eigenvectors[(1, 1)];
        if l0 <= l1 {
            ([l0, l1], [d0.normalize(), d1.normalize()])
        } else {
            ([l1, l0], [d1.normalize(), d0.normalize()])
        }
    }
}

fn multinomial(exps: [usize; 3]) -> usize {
    fn fact(n: usize) -> usize {
        (1..=n).product::<usize>().max(1)
    }
    6 / (fact(exps[0]) * fact(exps[1]) * fact(exps[2]))
}

fn permutations3(vars: &[usize]) -> Vec<[usize; 3]> {
    debug_assert_eq!(vars.len(), 3);
    let idx = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::with_capacity(6);
    for p in idx {
        let arr = [vars[p[0]], vars[p[1]], vars[p[2]]];
        if !out.contains(&arr) {
            out.push(arr);
        }
    }
    out
}
