//! Constructors and membership tests for the parametrized families of
//! extremal cubics on S^2 and for the 3- and 4-dimensional faces attached to
//! three equally spaced maxima on a great circle and to a degenerate maximum.

use crate::error::{Error, Result};
use crate::poly::{Cubic3, SpherePoint3, Vec3};
use nalgebra::Matrix2;
use serde::Serialize;

/// Labels and parameters of the canonical forms of extremal cubics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "form", content = "parameters", rename_all = "lowercase")]
pub enum CanonicalForm {
    A,
    B { p102: f64, p012: f64 },
    C { p102: f64 },
    D,
    E { p102: f64 },
    F { p102: f64, xi: f64 },
    G { b: [f64; 4] },
    H { b: [f64; 3] },
}

impl CanonicalForm {
    pub fn label(&self) -> char {
        match self {
            CanonicalForm::A => 'a',
            CanonicalForm::B { .. } => 'b',
            CanonicalForm::C { .. } => 'c',
            CanonicalForm::D => 'd',
            CanonicalForm::E { .. } => 'e',
            CanonicalForm::F { .. } => 'f',
            CanonicalForm::G { .. } => 'g',
            CanonicalForm::H { .. } => 'h',
        }
    }

    /// The canonical representative cubic, when it is determined by the
    /// parameters alone (all families except the Gramian-parametrized ones).
    pub fn representative(&self) -> Result<Option<Cubic3>> {
        Ok(match *self {
            CanonicalForm::A => Some(case_a()),
            CanonicalForm::B { p102, p012 } => Some(case_b(p102, p012)?),
            CanonicalForm::C { p102 } => Some(case_c(p102)?),
            CanonicalForm::D => Some(case_d()),
            CanonicalForm::E { p102 } => Some(case_e(p102)?),
            CanonicalForm::F { p102, xi } => Some(case_f(p102, xi)?),
            CanonicalForm::G { .. } | CanonicalForm::H { .. } => None,
        })
    }
}

// ---------------------------------------------------------------------------
// Families (a) through (f)
// ---------------------------------------------------------------------------

/// The zonal cubic x1^3 - 3 x1 (x2^2 + x3^2): an isolated maximum at e1 and
/// a maximum circle at x1 = -1/2.
pub fn case_a() -> Cubic3 {
    Cubic3::make_zonal(&SpherePoint3::e1(), -3.0, 4.0)
}

fn check_interval(name: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    if !(value >= lo && value < hi) {
        return Err(Error::OutsideDomain {
            name,
            value,
            domain,
        });
    }
    Ok(())
}

/// p003 > 0 branch of the four-maxima family over the triangle
/// 0 <= p012 <= sqrt(3) p102, p102 < 1/2.
pub fn case_b_p003(p102: f64, p012: f64) -> f64 {
    (((1.0 + p102) * (1.0 + p102) - 3.0 * p012 * p012) * (1.0 - 2.0 * p102)).sqrt()
}

/// Cubic with maxima at e1, (-1/2, +-sqrt(3)/2, 0) and a fourth maximum in
/// the upper hemisphere:
/// x1^3 + 3(-x2^2 + p102 x3^2) x1 + (3 p012 x2 + p003 x3) x3^2.
pub fn case_b(p102: f64, p012: f64) -> Result<Cubic3> {
    check_case_b_params(p102, p012)?;
    let p003 = case_b_p003(p102, p012);
    Ok(Cubic3::face_form(-1.0, 0.0, p102, 0.0, 0.0, p012, p003))
}

fn check_case_b_params(p102: f64, p012: f64) -> Result<()> {
    if !(p102 < 0.5 && (0.0..=3.0f64.sqrt() * p102 + 1e-15).contains(&p012)) {
        return Err(Error::OutsideDomain {
            name: "(p102, p012)",
            value: p102,
            domain: "0 <= p012 <= sqrt(3) p102, p102 < 1/2",
        });
    }
    Ok(())
}

/// The fourth maximum of `case_b(p102, p012)`.
pub fn fourth_maximum(p102: f64, p012: f64) -> Result<SpherePoint3> {
    check_case_b_params(p102, p012)?;
    let denom = 1.0 - p102 * p102 - p012 * p012;
    if denom.abs() < 1e-12 {
        return Err(Error::OutsideDomain {
            name: "(p102, p012)",
            value: denom,
            domain: "denominator 1 - p102^2 - p012^2 must not vanish",
        });
    }
    let x1 = (p102 + p102 * p102 - p012 * p012) / denom;
    let x2 = p012 * (1.0 - 2.0 * p102) / denom;
    let x3 = ((1.0 - 2.0 * p102) * ((1.0 + p102) * (1.0 + p102) - 3.0 * p012 * p012)).sqrt() / denom;
    SpherePoint3::new(Vec3::new(x1, x2, x3))
}

/// Map from the parameter triangle to the location triangle through
/// reciprocal barycentric coordinates; test oracle for [`fourth_maximum`].
pub fn fourth_maximum_barycentric(p102: f64, p012: f64) -> (f64, f64) {
    let s = 3.0f64.sqrt();
    // barycentric coordinates of (p102, p012) w.r.t. (-1,0), (1/2,-s/2), (1/2,s/2)
    let m = nalgebra::Matrix3::new(-1.0, 0.5, 0.5, 0.0, -s / 2.0, s / 2.0, 1.0, 1.0, 1.0);
    let lambda = m
        .lu()
        .solve(&Vec3::new(p102, p012, 1.0))
        .expect("corner matrix invertible");
    let mu_raw = Vec3::new(1.0 / lambda[0], 1.0 / lambda[1], 1.0 / lambda[2]);
    let mu = mu_raw / (mu_raw[0] + mu_raw[1] + mu_raw[2]);
    // corners of the location triangle: (1,0), (-1/2, s/2), (-1/2, -s/2)
    let x1 = mu[0] - 0.5 * mu[1] - 0.5 * mu[2];
    let x2 = s / 2.0 * (mu[1] - mu[2]);
    (x1, x2)
}

/// Zonal family with its maximum attained on the circle
/// x1 + sqrt(1 - 2 p102) x3 = 1, for p102 in (-1, 1/2).
pub fn case_c(p102: f64) -> Result<Cubic3> {
    check_interval("p102", p102, -1.0 + f64::EPSILON, 0.5, "(-1, 1/2)")?;
    let w = (1.0 - 2.0 * p102).sqrt();
    Ok(Cubic3::face_form(
        0.5,
        0.0,
        p102,
        0.0,
        0.5 * w,
        0.0,
        w * (1.0 + p102),
    ))
}

/// Axis of symmetry of `case_c(p102)`.
pub fn case_c_axis(p102: f64) -> SpherePoint3 {
    let w = (1.0 - 2.0 * p102).sqrt();
    SpherePoint3::normalized(Vec3::new(1.0, 0.0, w)).unwrap()
}

/// The zonal cubic x1^3 + (3/2) x1 (x2^2 + x3^2) with a unique flat maximum
/// at e1.
pub fn case_d() -> Cubic3 {
    Cubic3::make_zonal(&SpherePoint3::e1(), 1.5, -0.5)
}

/// Family with a triply degenerate maximum at e1 and a non-degenerate
/// maximum at (p102, 0, sqrt(1 - 2 p102)) / (1 - p102).
pub fn case_e(p102: f64) -> Result<Cubic3> {
    check_interval("p102", p102, -1.0 + f64::EPSILON, 0.5, "(-1, 1/2)")?;
    let w = (1.0 - 2.0 * p102).sqrt();
    Ok(Cubic3::face_form(
        0.5,
        0.0,
        p102,
        0.0,
        -0.5 * w,
        0.0,
        w * (1.0 + p102),
    ))
}

/// The non-degenerate maximum of `case_e(p102)`.
pub fn case_e_second_maximum(p102: f64) -> Result<SpherePoint3> {
    check_interval("p102", p102, -1.0 + f64::EPSILON, 0.5, "(-1, 1/2)")?;
    let w = (1.0 - 2.0 * p102).sqrt();
    SpherePoint3::new(Vec3::new(p102, 0.0, w) / (1.0 - p102))
}

/// Family with a doubly degenerate maximum at e1 and two non-degenerate
/// maxima, for p102 in (-1, 1/2) and xi in [0, pi/2).
pub fn case_f(p102: f64, xi: f64) -> Result<Cubic3> {
    check_interval("p102", p102, -1.0 + f64::EPSILON, 0.5, "(-1, 1/2)")?;
    check_interval("xi", xi, 0.0, std::f64::consts::FRAC_PI_2, "[0, pi/2)")?;
    let w = (1.0 - 2.0 * p102).sqrt();
    let (s, c) = xi.sin_cos();
    Ok(Cubic3::face_form(
        0.5,
        0.0,
        p102,
        0.0,
        -0.5 * w * s,
        6.0f64.sqrt() / 3.0 * w * (1.0 + p102).sqrt() * c,
        w * (1.0 + p102) * s,
    ))
}

/// The two non-degenerate maxima of `case_f(p102, xi)`, lying on the circles
/// x1 +- sqrt(1 - 2 p102) x3 = 1 respectively.
pub fn nondeg_maxima(p102: f64, xi: f64) -> Result<(SpherePoint3, SpherePoint3)> {
    check_interval("p102", p102, -1.0 + f64::EPSILON, 0.5, "(-1, 1/2)")?;
    check_interval("xi", xi, 0.0, std::f64::consts::FRAC_PI_2, "[0, pi/2)")?;
    let w2 = 1.0 - 2.0 * p102;
    let w = w2.sqrt();
    let (s, c) = xi.sin_cos();
    let make = |sign: f64| {
        let denom = 2.0 * (2.0 - p102 + sign * w2 * s);
        SpherePoint3::new(
            Vec3::new(
                1.0 + 4.0 * p102 - sign * w2 * s,
                (6.0 * w2 * (1.0 + p102)).sqrt() * c,
                3.0 * w * (sign + s),
            ) / denom,
        )
    };
    Ok((make(1.0)?, make(-1.0)?))
}

// ---------------------------------------------------------------------------
// Face membership tests
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceRegion {
    Interior,
    Boundary,
    Outside,
}

/// Coordinates of a cubic of the three-maxima normal form
/// x1^3 + 3(-x2^2 + p102 x3^2) x1 + (3 p012 x2 + p003 x3) x3^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F3Point {
    pub p102: f64,
    pub p012: f64,
    pub p003: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct F3Verdict {
    pub region: FaceRegion,
    pub extremal: bool,
}

/// Membership in the 3-dimensional face of cubics with maxima at e1 and
/// (-1/2, +-sqrt(3)/2, 0), with the extremality flag of its boundary points.
pub fn face_f3_membership(q: &F3Point, tol: f64) -> F3Verdict {
    let s = 3.0f64.sqrt();
    let lin = [
        1.0 + q.p102 + s * q.p012,
        1.0 + q.p102 - s * q.p012,
        1.0 - 2.0 * q.p102,
    ];
    let det_slack = lin[0] * lin[1] * lin[2] - q.p003 * q.p003;
    let region = if lin.iter().any(|&v| v < -tol) || det_slack < -tol {
        FaceRegion::Outside
    } else if lin.iter().all(|&v| v > tol) && det_slack > tol {
        FaceRegion::Interior
    } else {
        FaceRegion::Boundary
    };
    let strict = lin.iter().filter(|&&v| v > tol).count();
    let extremal =
        region != FaceRegion::Outside && det_slack.abs() <= tol && (strict == 3 || strict == 1);
    F3Verdict { region, extremal }
}

/// Coordinates of a cubic of the degenerate-maximum normal form
/// x1^3 + 3(x2^2/2 + p102 x3^2) x1 + 3 p021 x2^2 x3 + 3 p012 x2 x3^2 + p003 x3^3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F4Point {
    pub p102: f64,
    pub p021: f64,
    pub p012: f64,
    pub p003: f64,
}

/// Membership in the 4-dimensional face attached to a degenerate maximum:
/// both matrix inequalities
/// sqrt(1 - 2 p102) diag(3, 2(1 + p102)) +- [[6 p021, 3 p012], [3 p012, 2 p003]] >= 0.
pub fn face_f4_membership(q: &F4Point, tol: f64) -> Result<FaceRegion> {
    if !(-1.0..=0.5).contains(&q.p102) {
        return Err(Error::OutsideDomain {
            name: "p102",
            value: q.p102,
            domain: "[-1, 1/2]",
        });
    }
    let w = (1.0 - 2.0 * q.p102).sqrt();
    let base = Matrix2::new(3.0 * w, 0.0, 0.0, 2.0 * w * (1.0 + q.p102));
    let sym = Matrix2::new(
        6.0 * q.p021,
        3.0 * q.p012,
        3.0 * q.p012,
        2.0 * q.p003,
    );
    let min_eig = |m: Matrix2<f64>| {
        let se = m.symmetric_eigen();
        se.eigenvalues[0].min(se.eigenvalues[1])
    };
    let lam = min_eig(base + sym).min(min_eig(base - sym));
    Ok(if lam > tol {
        FaceRegion::Interior
    } else if lam >= -tol {
        FaceRegion::Boundary
    } else {
        FaceRegion::Outside
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{self, Membership};
    use crate::sphere;

    #[test]
    fn case_a_values() {
        let p = case_a();
        assert!((p.eval(&Vec3::x()) - 1.0).abs() < 1e-15);
        let s = 3.0f64.sqrt() / 2.0;
        assert!((p.eval(&Vec3::new(-0.5, s, 0.0)) - 1.0).abs() < 1e-14);
        for k in 0..20 {
            let t = k as f64 * 0.33;
            let x = Vec3::new(-0.5, s * t.cos(), s * t.sin());
            assert!((p.eval(&x) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn f3_membership_examples() {
        let corner = face_f3_membership(
            &F3Point {
                p102: -1.0,
                p012: 0.0,
                p003: 0.0,
            },
            1e-12,
        );
        assert_eq!(corner.region, FaceRegion::Boundary);
        assert!(corner.extremal);

        let sheet = face_f3_membership(
            &F3Point {
                p102: 0.0,
                p012: 0.0,
                p003: 1.0,
            },
            1e-12,
        );
        assert_eq!(sheet.region, FaceRegion::Boundary);
        assert!(sheet.extremal);

        let origin = face_f3_membership(
            &F3Point {
                p102: 0.0,
                p012: 0.0,
                p003: 0.0,
            },
            1e-12,
        );
        assert_eq!(origin.region, FaceRegion::Interior);
        assert!(!origin.extremal);

        // edge point with p003 = 0: two strict inequalities, not extremal
        let edge = face_f3_membership(
            &F3Point {
                p102: 0.5,
                p012: 0.2,
                p003: 0.0,
            },
            1e-12,
        );
        assert_eq!(edge.region, FaceRegion::Boundary);
        assert!(!edge.extremal);
    }

    #[test]
    fn case_b_examples() {
        let p = case_b(0.0, 0.0).unwrap();
        // x1^3 - 3 x1 x2^2 + x3^3
        let mut expected = [0.0; 10];
        expected[0] = 1.0;
        expected[3] = -3.0;
        expected[9] = 1.0;
        assert!(p.coeff_distance(&Cubic3::new(expected).unwrap()) < 1e-14);
        let fourth = fourth_maximum(0.0, 0.0).unwrap();
        assert!((fourth.coords() - Vec3::z()).norm() < 1e-14);
        assert!(case_b(0.5, 0.0).is_err());
        assert!(case_b(0.2, 0.4).is_err());
    }

    #[test]
    fn case_b_maxima_are_critical_with_value_one() {
        let p = case_b(0.3, 0.1).unwrap();
        let s = 3.0f64.sqrt() / 2.0;
        let mut maxima = vec![
            Vec3::x(),
            Vec3::new(-0.5, s, 0.0),
            Vec3::new(-0.5, -s, 0.0),
        ];
        maxima.push(fourth_maximum(0.3, 0.1).unwrap().coords());
        for u in maxima {
            assert!((p.eval(&u) - 1.0).abs() < 1e-10, "value at {u:?}");
            assert!(p.criticality_residual(&u) < 1e-8);
        }
    }

    #[test]
    fn fourth_maximum_stays_close_to_pole() {
        for k in 1..10 {
            let p102 = 0.45 * k as f64 / 10.0;
            let p012 = 0.5 * 3.0f64.sqrt() * p102;
            let u = fourth_maximum(p102, p012).unwrap();
            assert!(u.coords().x > -0.5 + 1e-9, "angle bound violated");
        }
    }

    #[test]
    fn fourth_maximum_matches_barycentric_route() {
        for (p102, p012) in [(0.1, 0.05), (0.3, 0.1), (0.45, 0.6), (0.2, 0.0)] {
            if p012 > 3.0f64.sqrt() * p102 {
                continue;
            }
            let u = fourth_maximum(p102, p012).unwrap().coords();
            let (x1, x2) = fourth_maximum_barycentric(p102, p012);
            assert!((u.x - x1).abs() < 1e-11, "x1 {} vs {x1}", u.x);
            assert!((u.y - x2).abs() < 1e-11);
        }
    }

    #[test]
    fn case_b_restriction_is_three_maxima_extremal() {
        let p = case_b(0.3, 0.1).unwrap();
        let r = p
            .restrict_to_plane(
                &SpherePoint3::new(Vec3::x()).unwrap(),
                &SpherePoint3::new(Vec3::y()).unwrap(),
            )
            .unwrap();
        let expected = circle::extremal_poly(circle::SQRT3_HALF).unwrap();
        assert!(r.coeff_distance(&expected) < 1e-12);
    }

    #[test]
    fn case_c_is_zonal_with_unit_circle_maximum() {
        let p = case_c(0.0).unwrap();
        // constant on the circle x1 + x3 = 1
        let axis = case_c_axis(0.0);
        assert!((axis.coords() - Vec3::new(1.0, 0.0, 1.0) / 2.0f64.sqrt()).norm() < 1e-15);
        let circle = crate::trig::SphereCircle::from_plane(&axis.coords(), 1.0 / 2.0f64.sqrt(), None);
        for k in 0..50 {
            let x = circle.point(k as f64 * 0.13);
            assert!((p.eval(&x) - 1.0).abs() < 1e-12, "value {}", p.eval(&x));
        }
    }

    #[test]
    fn case_d_has_flat_maximum() {
        let p = case_d();
        let th = p.tangent_hessian(&SpherePoint3::e1());
        assert!(th.critical);
        assert!(th.m.norm() < 1e-14);
    }

    #[test]
    fn case_e_second_maximum_checks() {
        let p = case_e(0.0).unwrap();
        let x = case_e_second_maximum(0.0).unwrap();
        assert!((x.coords() - Vec3::z()).norm() < 1e-15);
        assert!((p.eval(&x.coords()) - 1.0).abs() < 1e-14);
        assert!(p.criticality_residual(&x.coords()) < 1e-10);
    }

    #[test]
    fn case_f_maxima_on_stated_circles() {
        let (xp, xm) = nondeg_maxima(0.0, 0.0).unwrap();
        let expected_p = Vec3::new(1.0, 6.0f64.sqrt(), 3.0) / 4.0;
        let expected_m = Vec3::new(1.0, 6.0f64.sqrt(), -3.0) / 4.0;
        assert!((xp.coords() - expected_p).norm() < 1e-12);
        assert!((xm.coords() - expected_m).norm() < 1e-12);
        let p = case_f(0.0, 0.0).unwrap();
        assert!((p.eval(&xp.coords()) - 1.0).abs() < 1e-12);
        assert!((p.eval(&xm.coords()) - 1.0).abs() < 1e-12);
        // circles x1 +- x3 = 1
        assert!((xp.coords().x + xp.coords().z - 1.0).abs() < 1e-12);
        assert!((xm.coords().x - xm.coords().z - 1.0).abs() < 1e-12);
    }

    #[test]
    fn case_f_minus_branch_merges_into_e1() {
        let xi = std::f64::consts::FRAC_PI_2 - 1e-6;
        let (_, xm) = nondeg_maxima(0.0, xi).unwrap();
        assert!((xm.coords() - Vec3::x()).norm() < 1e-2);
    }

    #[test]
    fn case_f_symmetries() {
        let (p102, xi) = (0.2, 0.7);
        let p = case_f(p102, xi).unwrap();
        // x2 -> -x2 realizes xi -> pi - xi
        let refl2 = crate::poly::OrthogonalMap3::reflection(1);
        let q = p.apply_orthogonal(&refl2);
        let direct = {
            let w = (1.0f64 - 2.0 * p102).sqrt();
            let (s, c) = (std::f64::consts::PI - xi).sin_cos();
            Cubic3::face_form(
                0.5,
                0.0,
                p102,
                0.0,
                -0.5 * w * s,
                6.0f64.sqrt() / 3.0 * w * (1.0 + p102).sqrt() * c,
                w * (1.0 + p102) * s,
            )
        };
        assert!(q.coeff_distance(&direct) < 1e-13);
        // x3 -> -x3 realizes xi -> -xi
        let refl3 = crate::poly::OrthogonalMap3::reflection(2);
        let q3 = p.apply_orthogonal(&refl3);
        let direct3 = {
            let w = (1.0f64 - 2.0 * p102).sqrt();
            let (s, c) = (-xi).sin_cos();
            Cubic3::face_form(
                0.5,
                0.0,
                p102,
                0.0,
                -0.5 * w * s,
                6.0f64.sqrt() / 3.0 * w * (1.0 + p102).sqrt() * c,
                w * (1.0 + p102) * s,
            )
        };
        assert!(q3.coeff_distance(&direct3) < 1e-13);
    }

    #[test]
    fn f4_membership_examples() {
        let tol = 1e-10;
        let shrunk = face_f4_membership(
            &F4Point {
                p102: 0.5,
                p021: 0.0,
                p012: 0.0,
                p003: 0.0,
            },
            tol,
        )
        .unwrap();
        assert_eq!(shrunk, FaceRegion::Boundary);
        for sign in [-1.0, 1.0] {
            let endpoint = face_f4_membership(
                &F4Point {
                    p102: -1.0,
                    p021: sign * 3.0f64.sqrt() / 2.0,
                    p012: 0.0,
                    p003: 0.0,
                },
                tol,
            )
            .unwrap();
            assert_eq!(endpoint, FaceRegion::Boundary);
        }
        let origin = face_f4_membership(
            &F4Point {
                p102: 0.0,
                p021: 0.0,
                p012: 0.0,
                p003: 0.0,
            },
            tol,
        )
        .unwrap();
        assert_eq!(origin, FaceRegion::Interior);
        assert!(face_f4_membership(
            &F4Point {
                p102: 0.7,
                p021: 0.0,
                p012: 0.0,
                p003: 0.0
            },
            tol
        )
        .is_err());
    }

    #[test]
    fn constructed_families_sit_on_the_boundary() {
        let cubics = [
            case_a(),
            case_b(0.25, 0.2).unwrap(),
            case_c(-0.3).unwrap(),
            case_d(),
            case_e(0.2).unwrap(),
            case_f(-0.5, 1.1).unwrap(),
        ];
        for (i, p) in cubics.iter().enumerate() {
            let bf = sphere::brute_force_norm(p, 400);
            let bound = sphere::brute_force_error_bound(p, 400);
            assert!(bf <= 1.0 + 1e-10, "family {i}: norm {bf}");
            assert!(bf >= 1.0 - bound, "family {i}: norm {bf}");
        }
    }

    #[test]
    fn case_b_delta_root_matches_closed_form() {
        let (p102, p012) = (0.3, 0.2);
        let p = case_b(p102, p012).unwrap();
        let profile = sphere::face_profile(&p).unwrap();
        let dmin = profile.delta_min(4096);
        assert!(dmin.value.abs() < 1e-9, "delta min {}", dmin.value);
        let expected_cos = p012 * (1.0 - 2.0 * p102).sqrt()
            / ((1.0 + p102) * (1.0 + p102 - 2.0 * p012 * p012)).sqrt();
        let got = dmin.phi.cos().abs();
        // the root pair is (phi*, phi* - pi); compare |cos|
        assert!(
            (got - expected_cos.abs()).abs() < 1e-9,
            "cos phi* {got} vs {expected_cos}"
        );
    }

    #[test]
    fn restrictions_of_families_stay_in_the_disc_ball() {
        let p = case_f(0.1, 0.8).unwrap();
        let v1 = SpherePoint3::normalized(Vec3::new(1.0, 0.3, -0.2)).unwrap();
        let w = Vec3::new(0.0, 1.0, 1.0);
        let v2 = SpherePoint3::normalized(w - v1.coords() * w.dot(&v1.coords())).unwrap();
        let r = p.restrict_to_plane(&v1, &v2).unwrap();
        assert_ne!(circle::membership_s1(&r, 1e-9), Membership::Outside);
    }
}
