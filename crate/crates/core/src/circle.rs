//! The unit norm ball of cubics on S^1: norm computation by root isolation,
//! the distinguished face and its two equivalent descriptions, the extremal
//! one-parameter family and the five-way boundary classification.

use crate::error::{Error, Result};
use crate::poly::{Cubic2, Mat3, OrthogonalMap2, SpherePoint2};
use crate::trig::{derivative_half_angle_poly, real_roots, CircleFourier};
use serde::Serialize;
use std::f64::consts::PI;

/// Default boundary tolerance for membership decisions.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Deduplication radius for maximizer angles.
pub const ARGMAX_DEDUP: f64 = 1e-7;

pub const SQRT3_HALF: f64 = 0.866_025_403_784_438_6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// Maximum of the cubic over S^1 together with every global maximizer angle
/// in (-pi, pi], deduplicated.  The zero cubic reports value 0 and no angles.
pub fn norm_s1(p: &Cubic2) -> (f64, Vec<f64>) {
    if p.is_zero() {
        return (0.0, Vec::new());
    }
    let fourier = CircleFourier::from_cubic(p);
    let mut candidates: Vec<f64> = real_roots(&derivative_half_angle_poly(p))
        .into_iter()
        .map(|t| 2.0 * t.atan())
        .collect();
    candidates.push(PI); // t = infinity
    // Newton polish on f'(phi) = 0; skip when the second derivative degenerates.
    let scale = fourier.eval(0.0).abs().max(fourier.eval(1.0).abs()).max(1.0);
    for phi in &mut candidates {
        for _ in 0..10 {
            let d1 = fourier.d1(*phi);
            let d2 = fourier.d2(*phi);
            if d2.abs() < 1e-9 * scale {
                break;
            }
            let step = d1 / d2;
            if !step.is_finite() {
                break;
            }
            *phi -= step.clamp(-0.1, 0.1);
            if step.abs() < 1e-15 {
                break;
            }
        }
    }
    let value = candidates
        .iter()
        .map(|&phi| fourier.eval(phi))
        .fold(f64::NEG_INFINITY, f64::max);
    let tol = 1e-9 * value.abs().max(1.0);
    let curvature_tol = 1e-9 * scale;
    let mut argmax: Vec<f64> = Vec::new();
    for &phi in &candidates {
        if fourier.eval(phi) < value - tol {
            continue;
        }
        // near-degenerate clusters: a local minimum squeezed between two
        // barely separated maxima can land within the value window
        if fourier.d2(phi) > curvature_tol {
            continue;
        }
        let mut a = normalize_angle(phi);
        if (a - PI).abs() < ARGMAX_DEDUP {
            a = PI;
        }
        if !argmax
            .iter()
            .any(|&b| circular_distance(a, b) <= ARGMAX_DEDUP)
        {
            argmax.push(a);
        }
    }
    argmax.sort_by(f64::total_cmp);
    (value, argmax)
}

/// Maximum of p over `n` equispaced angles; oracle for tests.
pub fn brute_force_norm_s1(p: &Cubic2, n: usize) -> f64 {
    let fourier = CircleFourier::from_cubic(p);
    let mut best = f64::NEG_INFINITY;
    for j in 0..n {
        let phi = -PI + 2.0 * PI * j as f64 / n as f64;
        best = best.max(fourier.eval(phi));
    }
    best
}

pub fn membership_s1(p: &Cubic2, tol: f64) -> Membership {
    let (value, _) = norm_s1(p);
    if value < 1.0 - tol {
        Membership::Inside
    } else if value <= 1.0 + tol {
        Membership::Boundary
    } else {
        Membership::Outside
    }
}

// ---------------------------------------------------------------------------
// The face F and its boundary curve
// ---------------------------------------------------------------------------

/// Coordinates (p12, p03) of a cubic x1^3 + 3 p12 x1 x2^2 + p03 x2^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceFPoint {
    pub p12: f64,
    pub p03: f64,
}

impl FaceFPoint {
    pub fn new(p12: f64, p03: f64) -> Self {
        Self { p12, p03 }
    }

    /// Slack of the defining inequality, 1 - 2 p12^3 - 3 p12^2 - p03^2.
    pub fn boundary_slack(&self) -> f64 {
        1.0 - 2.0 * self.p12.powi(3) - 3.0 * self.p12 * self.p12 - self.p03 * self.p03
    }

    pub fn cubic(&self) -> Cubic2 {
        Cubic2 {
            p30: 1.0,
            p21: 0.0,
            p12: self.p12,
            p03: self.p03,
        }
    }
}

/// Scalar-inequality description of membership in the face F.
pub fn face_f_membership(q: &FaceFPoint) -> bool {
    q.p12 >= -1.0 - 1e-12 && q.boundary_slack() >= -1e-12
}

/// The 3x3 matrix M(alpha) whose positive semidefiniteness at
/// alpha = 2 p12 - 1 describes the face F.
pub fn face_f_matrix(q: &FaceFPoint) -> Mat3 {
    let alpha = 2.0 * q.p12 - 1.0;
    Mat3::new(
        3.0 - 6.0 * q.p12,
        2.0 * q.p03,
        alpha,
        2.0 * q.p03,
        6.0 * q.p12 - 2.0 * alpha,
        0.0,
        alpha,
        0.0,
        1.0,
    )
}

/// LMI description of membership in the face F; must agree with
/// [`face_f_membership`] on every input.
pub fn face_f_lmi(q: &FaceFPoint) -> bool {
    let m = face_f_matrix(q);
    let eig = m.symmetric_eigen().eigenvalues;
    let scale = eig.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    eig.iter().all(|&e| e >= -1e-12 * scale)
}

// ---------------------------------------------------------------------------
// The extremal family
// ---------------------------------------------------------------------------

/// The boundary curve of the face F:
/// x1^3 + (3/2)(1 - 4 tau^2) x1 x2^2 + (3 tau - 4 tau^3) x2^3
/// for tau in [-sqrt(3)/2, sqrt(3)/2].
pub fn extremal_poly(tau: f64) -> Result<Cubic2> {
    if tau.is_nan() || tau.abs() > SQRT3_HALF + 1e-15 {
        return Err(Error::OutsideDomain {
            name: "tau",
            value: tau,
            domain: "[-sqrt(3)/2, sqrt(3)/2]",
        });
    }
    Ok(Cubic2 {
        p30: 1.0,
        p21: 0.0,
        p12: 0.5 * (1.0 - 4.0 * tau * tau),
        p03: 3.0 * tau - 4.0 * tau.powi(3),
    })
}

/// Reflection of R^2 leaving `extremal_poly(tau)` invariant.
pub fn extremal_reflection(tau: f64) -> OrthogonalMap2 {
    let d = 1.0 + 4.0 * tau * tau;
    let m = nalgebra::Matrix2::new(
        (1.0 - 4.0 * tau * tau) / d,
        4.0 * tau / d,
        4.0 * tau / d,
        (4.0 * tau * tau - 1.0) / d,
    );
    OrthogonalMap2::new(m).expect("reflection is orthogonal")
}

/// Angle between the two global maxima of `extremal_poly(tau)` for
/// 0 < |tau| < sqrt(3)/2.
pub fn maxima_angle(tau: f64) -> Result<f64> {
    if tau == 0.0 || tau.abs() >= SQRT3_HALF {
        return Err(Error::OutsideDomain {
            name: "tau",
            value: tau,
            domain: "(0, sqrt(3)/2) up to sign",
        });
    }
    let t2 = 4.0 * tau * tau;
    Ok(((1.0 - t2) / (1.0 + t2)).acos())
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum S1Case {
    Interior,
    FaceInterior,
    SingleDegenerate,
    TwoMaxima,
    ThreeMaxima,
}

/// Outcome of the boundary classification on S^1.
#[derive(Clone, Debug, Serialize)]
pub struct S1Classification {
    pub case: S1Case,
    /// Angle the canonical representative was rotated by to produce the input.
    pub rotation_angle: f64,
    /// Parameter of the extremal family, present for the boundary-curve cases.
    pub tau: Option<f64>,
    /// Global maximizer angles of the input, in (-pi, pi].
    pub maxima: Vec<f64>,
}

/// Classifies a cubic of norm <= 1 according to the structure of its set of
/// global maxima.  A maximum with the smallest angle in [-pi, pi) is rotated
/// to angle 0 before the face coordinates are read off.
pub fn classify_s1(p: &Cubic2, tol: f64) -> Result<S1Classification> {
    let (value, maxima) = norm_s1(p);
    if value > 1.0 + tol {
        return Err(Error::OutsideBall { norm: value });
    }
    if value < 1.0 - tol {
        return Ok(S1Classification {
            case: S1Case::Interior,
            rotation_angle: 0.0,
            tau: None,
            maxima,
        });
    }
    // Tie-break: smallest angle in [-pi, pi).
    let rotation_angle = maxima
        .iter()
        .map(|&a| if a >= PI { a - 2.0 * PI } else { a })
        .fold(f64::INFINITY, f64::min);
    let rotated = p.apply_orthogonal(&OrthogonalMap2::rotation(-rotation_angle));
    let face_point = FaceFPoint::new(rotated.p12, rotated.p03);
    match maxima.len() {
        1 => {
            let th = rotated.tangent_hessian(&SpherePoint2::from_angle(0.0));
            if th.h.abs() <= 1e-7 {
               Ok(S1Classification {
                    case: S1Case::SingleDegenerate,
                    rotation_angle,
                    tau: Some(0.0),
                    maxima,
                })
            } else {
                Ok(S1Classification {
                    case: S1Case::FaceInterior,
                    rotation_angle,
                    tau: None,
                    maxima,
                })
            }
        }
        2 => {
            let tau_mag = (0.25 * (1.0 - 2.0 * face_point.p12)).max(0.0).sqrt();
            let tau = if face_point.p03 >= 0.0 { tau_mag } else { -tau_mag };
            Ok(S1Classification {
                case: S1Case::TwoMaxima,
                rotation_angle,
                tau: Some(tau),
                maxima,
            })
        }
        _ => Ok(S1Classification {
            case: S1Case::ThreeMaxima,
            rotation_angle,
            tau: Some(SQRT3_HALF),
            maxima,
        }),
    }
}

pub fn normalize_angle(phi: f64) -> f64 {
    let mut a = phi.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}

pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}
