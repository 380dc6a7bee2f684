//! The four-maxima machinery: Gramians of quadruples of global maxima from
//! barycentric data, point recovery by rank-3 factorization, the unique
//! cubic through a prescribed quadruple, Hessian-based regime tests, the
//! three-point perturbation witness, and the linear-conditions extremality
//! certificate.

use crate::error::{Error, Result};
use crate::poly::{tangent_basis, Cubic3, SpherePoint3, Vec3};
use crate::sphere::{CriticalCircle, CriticalPoint, Degeneracy, MorseType};
use crate::trig::SphereCircle;
use nalgebra::{DMatrix, DVector, Matrix4, Vector4};

/// Barycentric coordinate of the origin with respect to a quadruple of
/// affinely independent sphere points: entries sum to 1 and are non-zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarycentricZ {
    z: [f64; 4],
}

impl BarycentricZ {
    pub fn new(z: [f64; 4]) -> Result<Self> {
        let sum: f64 = z.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BarycentricSum { sum });
        }
        for (i, &v) in z.iter().enumerate() {
            if v.abs() < 1e-12 {
                return Err(Error::ZeroBarycentricComponent { index: i, value: v });
            }
        }
        Ok(Self { z })
    }

    pub fn values(&self) -> [f64; 4] {
        self.z
    }

    /// g_i = -3 + 1/z_i.
    pub fn g(&self) -> [f64; 4] {
        [
            -3.0 + 1.0 / self.z[0],
            -3.0 + 1.0 / self.z[1],
            -3.0 + 1.0 / self.z[2],
            -3.0 + 1.0 / self.z[3],
        ]
    }

    /// z_i = (1 - b_i) / 3 for b in the open simplex.
    pub fn from_central(b: [f64; 4]) -> Result<Self> {
        let sum: f64 = b.iter().sum();
        if (sum - 1.0).abs() > 1e-12 || b.iter().any(|&v| v <= 0.0) {
            return Err(Error::OutsideDomain {
                name: "b",
                value: sum,
                domain: "open simplex (positive entries summing to 1)",
            });
        }
        Self::new([
            (1.0 - b[0]) / 3.0,
            (1.0 - b[1]) / 3.0,
            (1.0 - b[2]) / 3.0,
            (1.0 - b[3]) / 3.0,
        ])
    }

    /// z_i = (1 + b_i) / 3 for i < 4, z_4 = -(b_1 + b_2 + b_3) / 3, b_i > 0.
    pub fn from_wing(b: [f64; 3]) -> Result<Self> {
        if b.iter().any(|&v| v <= 0.0) {
            return Err(Error::OutsideDomain {
                name: "b",
                value: b[0].min(b[1]).min(b[2]),
                domain: "positive entries",
            });
        }
        Self::new([
            (1.0 + b[0]) / 3.0,
            (1.0 + b[1]) / 3.0,
            (1.0 + b[2]) / 3.0,
            -(b[0] + b[1] + b[2]) / 3.0,
        ])
    }
}

/// Gramian of a quadruple of sphere points: unit diagonal, positive
/// semidefinite of rank 3, with the barycentric coordinate of the origin in
/// its kernel.
#[derive(Clone, Copy, Debug)]
pub struct Gramian4 {
    matrix: Matrix4<f64>,
    kernel: [f64; 4],
}

impl Gramian4 {
    /// Validates the structural invariants and normalizes the kernel vector.
    pub fn new(matrix: Matrix4<f64>, kernel: [f64; 4]) -> Result<Self> {
        for i in 0..4 {
            if (matrix[(i, i)] - 1.0).abs() > 1e-10 {
                return Err(Error::NotRank3Gramian {
                    eigenvalues: [matrix[(0, 0)], matrix[(1, 1)], matrix[(2, 2)], matrix[(3, 3)]],
                });
            }
        }
        let eig = sorted_eigenvalues(&matrix);
        let scale = eig[0].abs().max(1.0);
        if eig[3].abs() > 1e-9 * scale || eig[2] <= 1e-9 * scale {
            return Err(Error::NotRank3Gramian { eigenvalues: eig });
        }
        let z = Vector4::from_column_slice(&kernel);
        let residual = (matrix * z).norm();
        if residual > 1e-10 * scale {
            return Err(Error::NotRank3Gramian { eigenvalues: eig });
        }
        Ok(Self {
            matrix,
            kernel,
        })
    }

    /// Builds a Gramian from the matrix alone, recovering the kernel vector.
    pub fn from_matrix(matrix: Matrix4<f64>) -> Result<Self> {
        let kernel = kernel_of(&matrix)?;
        Self::new(matrix, kernel)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn kernel(&self) -> [f64; 4] {
        self.kernel
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        sorted_eigenvalues(&self.matrix)
    }

    /// Whether all off-diagonal entries lie in the open maxima window (-1/2, 1).
    pub fn in_maxima_window(&self) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let v = self.matrix[(i, j)];
                    if !(v > -0.5 && v < 1.0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn sorted_eigenvalues(m: &Matrix4<f64>) -> [f64; 4] {
    let mut e: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| b.total_cmp(a));
    [e[0], e[1], e[2], e[3]]
}

/// Gramian with entries -1/2 + g_i g_j / 6 off the diagonal.
pub fn gram_from_z(z: &BarycentricZ) -> Result<Gramian4> {
    let g = z.g();
    let mut m = Matrix4::identity();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                m[(i, j)] = -0.5 + g[i] * g[j] / 6.0;
            }
        }
    }
    Gramian4::new(m, z.values())
}

/// Gramian of the all-interior regime, parameterized by b in the open simplex.
pub fn gram_central(b: [f64; 4]) -> Result<Gramian4> {
    let z = BarycentricZ::from_central(b)?;
    let mut m = Matrix4::identity();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                m[(i, j)] = -0.5 + 1.5 / ((1.0 / b[i] - 1.0) * (1.0 / b[j] - 1.0));
            }
        }
    }
    Gramian4::new(m, z.values())
}

/// Closed form of the upper-left 3x3 determinant of [`gram_central`].
pub fn gram_central_minor3(b: [f64; 4]) -> f64 {
    let prod = b.iter().product::<f64>();
    let inv_sum: f64 = b.iter().map(|v| 1.0 / v).sum();
    9.0 * prod * (inv_sum - 4.0)
        / (4.0 * (1.0 - b[0]).powi(2) * (1.0 - b[1]).powi(2) * (1.0 - b[2]).powi(2))
}

/// Gramian of the one-negative-component regime, parameterized by positive b.
pub fn gram_wing(b: [f64; 3]) -> Result<Gramian4> {
    let z = BarycentricZ::from_wing(b)?;
    let s: f64 = b.iter().sum();
    let mut m = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                m[(i, j)] = -0.5 + 1.5 / ((1.0 / b[i] + 1.0) * (1.0 / b[j] + 1.0));
            }
        }
        let v = -0.5 + 1.5 * (s + 1.0) * b[i] / (s * (b[i] + 1.0));
        m[(i, 3)] = v;
        m[(3, i)] = v;
    }
    Gramian4::new(m, z.values())
}

/// Closed form of the upper-left 3x3 determinant of [`gram_wing`].
pub fn gram_wing_minor3(b: [f64; 3]) -> f64 {
    let s: f64 = b.iter().sum();
    let prod = b[0] * b[1] * b[2];
    let pairs = b[0] * b[1] + b[0] * b[2] + b[1] * b[2];
    9.0 * (4.0 * prod * (s + 0.75) + (s + 1.0) * pairs)
        / (4.0 * (b[0] + 1.0).powi(2) * (b[1] + 1.0).powi(2) * (b[2] + 1.0).powi(2))
}

/// Gramian of the three-on-a-great-circle limit: first three points pairwise
/// at inner product -1/2, fourth column b with b_1 + b_2 + b_3 = 0 and
/// entries in (-1/2, 1).
pub fn gram_case_b(b: [f64; 3]) -> Result<Gramian4> {
    let s: f64 = b.iter().sum();
    if s.abs() > 1e-12 || b.iter().any(|&v| v <= -0.5 || v >= 1.0) {
        return Err(Error::OutsideDomain {
            name: "b",
            value: s,
            domain: "b_1 + b_2 + b_3 = 0, entries in (-1/2, 1)",
        });
    }
    let mut m = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                m[(i, j)] = -0.5;
            }
        }
        m[(i, 3)] = b[i];
        m[(3, i)] = b[i];
    }
    // kernel: (v, 0) with v in the kernel of the 3x3 block after adding the
    // fourth-column constraint; solve the affine system directly.
    let kernel = kernel_of(&m)?;
    Gramian4::new(m, kernel)
}

fn kernel_of(m: &Matrix4<f64>) -> Result<[f64; 4]> {
    let se = m.symmetric_eigen();
    let mut idx = 0;
    for k in 1..4 {
        if se.eigenvalues[k].abs() < se.eigenvalues[idx].abs() {
            idx = k;
        }
    }
    let v = se.eigenvectors.column(idx);
    let sum: f64 = v.iter().sum();
    if sum.abs() < 1e-9 {
        return Err(Error::NotRank3Gramian {
            eigenvalues: sorted_eigenvalues(m),
        });
    }
    let v = v / sum;
    Ok([v[0], v[1], v[2], v[3]])
}

/// Recovers four sphere points with the prescribed Gramian through the
/// eigen-factorization, with a fixed sign convention per eigenvector.
pub fn points_from_gram(g: &Gramian4) -> Result<[SpherePoint3; 4]> {
    let se = g.matrix.symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));
    let scale = se.eigenvalues[order[0]].abs().max(1.0);
    if se.eigenvalues[order[3]].abs() > 1e-9 * scale || se.eigenvalues[order[2]] <= 1e-9 * scale {
        return Err(Error::NotRank3Gramian {
            eigenvalues: g.eigenvalues(),
        });
    }
    let mut cols = [Vector4::zeros(); 3];
    for (k, col) in cols.iter_mut().enumerate() {
        let lam = se.eigenvalues[order[k]].max(0.0);
        let mut v: Vector4<f64> = se.eigenvectors.column(order[k]).into();
        // deterministic sign: largest-magnitude entry positive
        let mut dominant = 0;
        for i in 1..4 {
            if v[i].abs() > v[dominant].abs() {
                dominant = i;
            }
        }
        if v[dominant] < 0.0 {
            v = -v;
        }
        *col = v * lam.sqrt();
    }
    let mut points = [SpherePoint3::e1(); 4];
    for i in 0..4 {
        let u = Vec3::new(cols[0][i], cols[1][i], cols[2][i]);
        points[i] = SpherePoint3::normalized(u)?;
    }
    Ok(points)
}

// ---------------------------------------------------------------------------
// Cubic through a quadruple
// ---------------------------------------------------------------------------

/// Symmetric cubic form on R^4, stored as the full coefficient tensor of
/// q(y) = sum_{i,j,k} t_ijk y_i y_j y_k.
#[derive(Clone, Debug)]
pub struct QForm4 {
    t: [[[f64; 4]; 4]; 4],
}

impl QForm4 {
    fn from_parts(gram: &Matrix4<f64>, mixed: [f64; 4]) -> Self {
        // mixed[l] is the coefficient q_ijk with {i,j,k} the complement of {l}
        let mut t = [[[0.0; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    t[i][j][k] = if i == j && j == k {
                        1.0
                    } else if i == j || j == k || i == k {
                        let (a, b) = if i == j { (i, k) } else if j == k { (j, i) } else { (i, j) };
                        gram[(a, b)]
                    } else {
                        mixed[6 - i - j - k]
                    };
                }
            }
        }
        Self { t }
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> f64 {
        self.t[i][j][k]
    }

    pub fn eval(&self, y: &Vector4<f64>) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let yij = y[i] * y[j];
                for k in 0..4 {
                    acc += self.t[i][j][k] * yij * y[k];
                }
            }
        }
        acc
    }

    pub fn gradient(&self, y: &Vector4<f64>) -> Vector4<f64> {
        let mut g = Vector4::zeros();
        for i in 0..4 {
            let mut acc = 0.0;
            for j in 0..4 {
                for k in 0..4 {
                    acc += self.t[i][j][k] * y[j] * y[k];
                }
            }
            g[i] = 3.0 * acc;
        }
        g
    }
}

/// The unique cubic having a prescribed quadruple of critical points with
/// value 1, together with the lifted form on R^4.
#[derive(Clone, Debug)]
pub struct QuadrupleCubic {
    pub points: [SpherePoint3; 4],
    pub cubic: Cubic3,
    pub q: QForm4,
    pub z: [f64; 4],
    pub gramian: Matrix4<f64>,
}

/// Barycentric coordinate of the origin with respect to the quadruple.
pub fn barycentric_of_origin(points: &[SpherePoint3; 4]) -> Result<[f64; 4]> {
    let m = quadruple_matrix(points);
    let det = m.determinant();
    if det.abs() < 1e-9 {
        return Err(Error::DegenerateQuadruple { det });
    }
    let z = m
        .lu()
        .solve(&Vector4::new(0.0, 0.0, 0.0, 1.0))
        .ok_or(Error::DegenerateQuadruple { det })?;
    Ok([z[0], z[1], z[2], z[3]])
}

fn quadruple_matrix(points: &[SpherePoint3; 4]) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (j, p) in points.iter().enumerate() {
        let u = p.coords();
        m[(0, j)] = u.x;
        m[(1, j)] = u.y;
        m[(2, j)] = u.z;
        m[(3, j)] = 1.0;
    }
    m
}

/// Mixed coefficient q_ijk with {i,j,k,l} = {0,1,2,3}: the closed form
/// 1 - (g_i g_j + g_i g_k + g_j g_k + g_i g_j g_k) / 6.
fn mixed_coefficient(g: &[f64; 4], l: usize) -> f64 {
    let others: Vec<f64> = (0..4).filter(|&i| i != l).map(|i| g[i]).collect();
    let (a, b, c) = (others[0], others[1], others[2]);
    1.0 - (a * b + a * c + b * c + a * b * c) / 6.0
}

/// Builds the unique cubic with critical points of value 1 at the given
/// affinely independent quadruple (no three on a great circle).
pub fn cubic_from_quadruple(points: &[SpherePoint3; 4]) -> Result<QuadrupleCubic> {
    let m = quadruple_matrix(points);
    let det = m.determinant();
    if det.abs() < 1e-9 {
        return Err(Error::DegenerateQuadruple { det });
    }
    let lu = m.lu();
    let zvec = lu
        .solve(&Vector4::new(0.0, 0.0, 0.0, 1.0))
        .ok_or(Error::DegenerateQuadruple { det })?;
    let z = [zvec[0], zvec[1], zvec[2], zvec[3]];
    for (i, &v) in z.iter().enumerate() {
        if v.abs() < 1e-9 {
            return Err(Error::ZeroBarycentricComponent { index: i, value: v });
        }
    }
    let g = [
        -3.0 + 1.0 / z[0],
        -3.0 + 1.0 / z[1],
        -3.0 + 1.0 / z[2],
        -3.0 + 1.0 / z[3],
    ];
    let mut gram = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            gram[(i, j)] = points[i].coords().dot(&points[j].coords());
        }
    }
    let mixed = [
        mixed_coefficient(&g, 0),
        mixed_coefficient(&g, 1),
        mixed_coefficient(&g, 2),
        mixed_coefficient(&g, 3),
    ];
    let q = QForm4::from_parts(&gram, mixed);

    // Linear part of the barycentric map: column a of B solves M B_a = (e_a, 0).
    let mut bmap = [[0.0; 3]; 4]; // bmap[i][a]
    for a in 0..3 {
        let mut rhs = Vector4::zeros();
        rhs[a] = 1.0;
        let col = lu.solve(&rhs).ok_or(Error::DegenerateQuadruple { det })?;
        for (row, c) in bmap.iter_mut().zip(col.iter()) {
            row[a] = *c;
        }
    }
    // Pull the R^4 form back to R^3.
    let mut t3 = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let mut acc = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        let bij = bmap[i][a] * bmap[j][b];
                        if bij == 0.0 {
                            continue;
                        }
                        for (k, row_k) in bmap.iter().enumerate() {
                            acc += q.t[i][j][k] * bij * row_k[c];
                        }
                    }
                }
                t3[a][b][c] = acc;
            }
        }
    }
    let cubic = Cubic3::from_tensor(&t3);
    Ok(QuadrupleCubic {
        points: *points,
        cubic,
        q,
        z,
        gramian: gram,
    })
}

/// The 10x10 linear system tying the Gramian entries and mixed coefficients
/// to z; retained as an oracle for the closed forms.  Unknown order:
/// Gamma_12, Gamma_13, Gamma_14, Gamma_23, Gamma_24, Gamma_34,
/// q_234, q_134, q_124, q_123.
pub fn coefficient_system(z: &[f64; 4]) -> (DMatrix<f64>, DVector<f64>) {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut m = DMatrix::zeros(10, 10);
    let mut rhs = DVector::zeros(10);
    // rows for mixed index pairs (i, j), i != j
    for (row, &(i, j)) in pairs.iter().enumerate() {
        m[(row, row)] = z[i] + z[j];
        for (k, &zk) in z.iter().enumerate() {
            if k != i && k != j {
                // unknown q_{ijk}: column 6 + (6 - i - j - k) maps to the
                // complement index l of {i, j, k}
                let l = 6 - i - j - k;
                m[(row, 6 + l)] = zk;
            }
        }
    }
    // rows for doubled indices (i, i)
    for i in 0..4 {
        let row = 6 + i;
        for (col, &(a, b)) in pairs.iter().enumerate() {
            if a == i || b == i {
                let other = if a == i { b } else { a };
                m[(row, col)] = z[other];
            }
        }
        rhs[row] = -z[i];
    }
    (m, rhs)
}

/// Closed form of the determinant of [`coefficient_system`].
pub fn coefficient_system_det(z: &[f64; 4]) -> f64 {
    let sum: f64 = z.iter().sum();
    -12.0 * z.iter().map(|v| v * v).product::<f64>() * sum * sum
}

// ---------------------------------------------------------------------------
// Hessian classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// All z_i in (0, 1/3).
    Central,
    /// Three z_i above 1/3 and one negative; the index of the negative one.
    Wing { negative_index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HessianVerdict {
    AllMaxNonDegenerate(Regime),
    NotAllMaxima,
}

/// Whether the critical points of the cubic attached to `z` are all
/// non-degenerate local maxima, and in which of the two regimes z falls.
pub fn hessian_classification(z: &BarycentricZ) -> Result<HessianVerdict> {
    let gram = gram_from_z(z)?;
    if !gram.in_maxima_window() {
        return Ok(HessianVerdict::NotAllMaxima);
    }
    let zv = z.values();
    if zv.iter().all(|&v| v > 0.0 && v < 1.0 / 3.0) {
        return Ok(HessianVerdict::AllMaxNonDegenerate(Regime::Central));
    }
    let negatives: Vec<usize> = (0..4).filter(|&i| zv[i] < 0.0).collect();
    if negatives.len() == 1
        && (0..4)
            .filter(|&i| i != negatives[0])
            .all(|i| zv[i] > 1.0 / 3.0)
    {
        return Ok(HessianVerdict::AllMaxNonDegenerate(Regime::Wing {
            negative_index: negatives[0],
        }));
    }
    Ok(HessianVerdict::NotAllMaxima)
}

/// The 0-homogeneous ratio r(y) = q(y) / Omega(y)^{3/2} whose Hessian at the
/// basis vectors types the critical points; exposed for the finite-difference
/// cross-check.
pub fn homogeneous_ratio(z: &BarycentricZ) -> Result<impl Fn(&Vector4<f64>) -> f64> {
    let gram = gram_from_z(z)?;
    let g = z.g();
    let mixed = [
        mixed_coefficient(&g, 0),
        mixed_coefficient(&g, 1),
        mixed_coefficient(&g, 2),
        mixed_coefficient(&g, 3),
    ];
    let q = QForm4::from_parts(gram.matrix(), mixed);
    let omega = *gram.matrix();
    Ok(move |y: &Vector4<f64>| {
        let o = (y.transpose() * omega * y)[(0, 0)];
        q.eval(y) / o.powf(1.5)
    })
}

/// Closed-form entries of the Hessian of [`homogeneous_ratio`] at e1
/// (rows and columns 2..4, one-based as in the source formulas).
pub fn ratio_hessian_at_e1(z: &BarycentricZ) -> nalgebra::Matrix3<f64> {
    let zv = z.values();
    let g = z.g();
    let diag = |j: usize| -(g[0] * g[j] - 9.0).powi(2) / 12.0;
    let off = |j: usize, k: usize| {
        (3.0 * zv[j] - 6.0 * zv[0] + 3.0 * zv[k]
            + 9.0 * (zv[0] * zv[j] + zv[0] * zv[k] - zv[j] * zv[k] + zv[0] * zv[0])
            - 1.0)
            / (12.0 * zv[0] * zv[0] * zv[j] * zv[k])
    };
    nalgebra::Matrix3::new(
        diag(1),
        off(1, 2),
        off(1, 3),
        off(1, 2),
        diag(2),
        off(2, 3),
        off(1, 3),
        off(2, 3),
        diag(3),
    )
}

// ---------------------------------------------------------------------------
// Perturbation witness and extremality certificate
// ---------------------------------------------------------------------------

/// The cubic <a x b, x> <b x c, x> <c x a, x>: vanishes with its gradient at
/// a, b and c, witnessing non-extremality of cubics whose global maxima are
/// among those points.
pub fn perturbation_witness(
    a: &SpherePoint3,
    b: &SpherePoint3,
    c: &SpherePoint3,
) -> Result<Cubic3> {
    let (pa, pb, pc) = (a.coords(), b.coords(), c.coords());
    if (pa - pb).norm() < 1e-9 || (pb - pc).norm() < 1e-9 || (pa - pc).norm() < 1e-9 {
        return Err(Error::CoincidentPoints);
    }
    Ok(Cubic3::product_of_linears(
        &pa.cross(&pb),
        &pb.cross(&pc),
        &pc.cross(&pa),
    ))
}

/// Outcome of the linear-conditions extremality test.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub extremal: bool,
    pub rank: usize,
    pub rows: usize,
    /// A unit-coefficient direction from the null space when rank < 10;
    /// perturbations p +- eps delta along it stay inside the ball.
    pub null_direction: Option<Cubic3>,
}

const BASIS_COUNT: usize = 10;

fn basis_cubic(n: usize) -> Cubic3 {
    let mut c = [0.0; 10];
    c[n] = 1.0;
    Cubic3::new(c).unwrap()
}

fn value_row(x: &Vec3) -> [f64; BASIS_COUNT] {
    let mut row = [0.0; BASIS_COUNT];
    for (n, r) in row.iter_mut().enumerate() {
        *r = basis_cubic(n).eval(x);
    }
    row
}

fn gradient_row(x: &Vec3, dir: &Vec3) -> [f64; BASIS_COUNT] {
    let mut row = [0.0; BASIS_COUNT];
    for (n, r) in row.iter_mut().enumerate() {
        *r = basis_cubic(n).gradient(x).dot(dir);
    }
    row
}

fn circle_derivative_row(circle: &SphereCircle, order: u32) -> [f64; BASIS_COUNT] {
    let mut row = [0.0; BASIS_COUNT];
    for (n, r) in row.iter_mut().enumerate() {
        *r = circle.restrict(&basis_cubic(n)).derivative_at_zero(order);
    }
    row
}

/// Assembles the homogeneous linear conditions a perturbation direction must
/// satisfy to keep p on its minimal face, and reads extremality off the rank.
///
/// Each global maximum pins the value and the tangential gradient.  A
/// maximum of order 2k along a curve forces every derivative of the
/// perturbation below order 2k to vanish along that curve: orders 2 and 3
/// along the kernel geodesic for double maxima, additionally orders up to 5
/// along the order-six circle for triple maxima, and the full second- and
/// third-order jets for flat maxima.  Maxima circles contribute value and
/// tangential-gradient conditions at seven sampled points.
pub fn extremality_certificate(
    p: &Cubic3,
    maxima: &[CriticalPoint],
    circles: &[CriticalCircle],
) -> Result<Certificate> {
    if maxima.is_empty() && circles.is_empty() {
        return Err(Error::UnverifiedMaxima {
            reason: "empty maxima list".into(),
        });
    }
    let mut vmax = f64::NEG_INFINITY;
    for m in maxima {
        vmax = vmax.max(m.value);
    }
    for c in circles {
        vmax = vmax.max(c.value);
    }
    let vtol = 1e-9 * vmax.abs().max(1.0);
    for m in maxima {
        if (m.value - vmax).abs() > vtol {
            return Err(Error::UnverifiedMaxima {
                reason: format!("maximum value {} differs from the norm {}", m.value, vmax),
            });
        }
        if m.morse != MorseType::Max {
            return Err(Error::UnverifiedMaxima {
                reason: "list contains a non-maximum".into(),
            });
        }
    }
    let on_boundary = (vmax - 1.0).abs() <= 1e-7;

    let mut rows: Vec<[f64; BASIS_COUNT]> = Vec::new();
    for m in maxima {
        let u = m.location.coords();
        let (v1, v2) = tangent_basis(&u);
        rows.push(value_row(&u));
        rows.push(gradient_row(&u, &v1));
        rows.push(gradient_row(&u, &v2));
        match m.degeneracy {
            Degeneracy::NonDegenerate => {}
            Degeneracy::Double => {
                let info = crate::sphere::maximum_degeneracy(p, &m.location);
                if let Some(w) = info.kernel {
                    let geo = SphereCircle::great(&u, &w);
                    rows.push(circle_derivative_row(&geo, 2));
                    rows.push(circle_derivative_row(&geo, 3));
                }
            }
            Degeneracy::Triple => {
                let info = crate::sphere::maximum_degeneracy(p, &m.location);
                if let Some(w) = info.kernel {
                    let geo = SphereCircle::great(&u, &w);
                    rows.push(circle_derivative_row(&geo, 2));
                    rows.push(circle_derivative_row(&geo, 3));
                    let special = SphereCircle::curved(&u, &w, info.best_kappa);
                    for order in 2..=5 {
                        rows.push(circle_derivative_row(&special, order));
                    }
                }
            }
            Degeneracy::Flat => {
                let dirs = [v1, v2, (v1 + v2).normalize(), (v1 - v2).normalize()];
                for w in &dirs[..3] {
                    rows.push(circle_derivative_row(&SphereCircle::great(&u, w), 2));
                }
                for w in &dirs {
                    rows.push(circle_derivative_row(&SphereCircle::great(&u, w), 3));
                }
            }
        }
    }
    for c in circles {
        let circle = SphereCircle::from_plane(&c.axis, c.offset, None);
        for j in 0..7 {
            let alpha = 2.0 * std::f64::consts::PI * j as f64 / 7.0;
            let x = circle.point(alpha).normalize();
            let (v1, v2) = tangent_basis(&x);
            rows.push(value_row(&x));
            rows.push(gradient_row(&x, &v1));
            rows.push(gradient_row(&x, &v2));
        }
    }

    let mut m = DMatrix::zeros(rows.len(), BASIS_COUNT);
    for (i, row) in rows.iter().enumerate() {
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        let scale = if norm > 1e-300 { 1.0 / norm } else { 1.0 };
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = v * scale;
        }
    }
    let svd = m.svd(false, true);
    let smax = svd
        .singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-8 * smax)
        .count();
    let null_direction = if rank < BASIS_COUNT {
        let vt = svd.v_t.as_ref().expect("svd with v_t");
        // right singular vector for the smallest singular value; when rows
        // do not span all 10 dimensions take any unit vector orthogonal to
        // the row space.
        let idx = vt.nrows() - 1;
        let mut c = [0.0; 10];
        // v_t rows beyond the rank span the null space only when v_t is
        // square; nalgebra returns a compact SVD, so complete the basis by
        // projecting a probe onto the orthogonal complement of the row space.
        if vt.nrows() == BASIS_COUNT {
            for j in 0..BASIS_COUNT {
                c[j] = vt[(idx, j)];
            }
        } else {
            // project e_j candidates
            let mut best: Option<[f64; 10]> = None;
            let mut best_norm = 0.0;
            for probe in 0..BASIS_COUNT {
                let mut v = DVector::zeros(BASIS_COUNT);
                v[probe] = 1.0;
                // remove row-space components
                for r in 0..vt.nrows() {
                    if svd.singular_values[r] > 1e-8 * smax {
                        let row = vt.row(r).transpose();
                        let coeff = row.dot(&v);
                        v -= row * coeff;
                    }
                }
                let n = v.norm();
                if n > best_norm {
                    best_norm = n;
                    let mut arr = [0.0; 10];
                    for j in 0..BASIS_COUNT {
                        arr[j] = v[j] / n;
                    }
                    best = Some(arr);
                }
            }
            best = best.or(Some([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
            c = best.unwrap();
        }
        Some(Cubic3::new(c).unwrap())
    } else {
        None
    };
    Ok(Certificate {
        extremal: on_boundary && rank == BASIS_COUNT,
        rank,
        rows: rows.len(),
        null_direction,
    })
}
