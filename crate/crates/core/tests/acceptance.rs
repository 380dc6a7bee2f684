//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p extremal-cubics --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use extremal_cubics::circle::{self, FaceFPoint};
use extremal_cubics::classify::{self, Verdict};
use extremal_cubics::families::{self, CanonicalForm};
use extremal_cubics::gramian::{self, BarycentricZ};
use extremal_cubics::poly::{Cubic2, Cubic3, OrthogonalMap3, SpherePoint3, Vec3};
use extremal_cubics::sphere::{self, Degeneracy, MorseType};
use nalgebra::Matrix3;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use std::f64::consts::PI;
use std::time::Instant;

const CENSUS_STARTS: usize = 4000;

fn report(number: u32, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("acceptance criterion {number} ({name}): PASS");
    } else {
        println!(
            "acceptance criterion {number} ({name}): FAIL — {} issue(s); first: {}",
            failures.len(),
            failures[0]
        );
        for f in failures.iter().take(12) {
            println!("    - {f}");
        }
    }
    assert!(failures.is_empty(), "{name}: {failures:?}");
}

fn random_rotation(rng: &mut StdRng) -> OrthogonalMap3 {
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = rng.sample::<f64, _>(StandardNormal);
        }
    }
    OrthogonalMap3::new(m.qr().q()).expect("QR factor is orthogonal")
}

fn embed(p: &Cubic2) -> Cubic3 {
    let m = p.monomial_coeffs();
    Cubic3::new([m[0], m[1], 0.0, m[2], 0.0, 0.0, m[3], 0.0, 0.0, 0.0]).unwrap()
}

#[test]
fn criterion_01_s1_extremal_family() {
    let mut failures = Vec::new();
    let half = circle::SQRT3_HALF;
    for k in 0..200 {
        let tau = -half + 2.0 * half * k as f64 / 199.0;
        let p = circle::extremal_poly(tau).unwrap();
        let brute = circle::brute_force_norm_s1(&p, 1_000_000);
        if (brute - 1.0).abs() > 1e-9 {
            failures.push(format!("tau {tau}: brute-force norm {brute}"));
        }
        if tau > 1e-12 && tau < half - 1e-12 {
            let (_, argmax) = circle::norm_s1(&p);
            if argmax.len() != 2 {
                failures.push(format!("tau {tau}: {} maximizers", argmax.len()));
                continue;
            }
            let sep = circle::circular_distance(argmax[0], argmax[1]);
            let expected = circle::maxima_angle(tau).unwrap();
            if (sep - expected).abs() > 1e-8 {
                failures.push(format!("tau {tau}: separation {sep} vs {expected}"));
            }
        }
    }
    report(1, "S1 extremal family norms and maxima separation", &failures);
}

#[test]
fn criterion_02_face_dual_description() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let q = FaceFPoint::new(rng.random_range(-1.5..1.0), rng.random_range(-1.5..1.5));
        if circle::face_f_membership(&q) != circle::face_f_lmi(&q) {
            failures.push(format!("descriptions disagree at ({}, {})", q.p12, q.p03));
        }
    }
    for i in 0..1000 {
        let p12 = -1.0 + 1.5 * (i as f64 + 0.5) / 1000.0;
        let slack = 1.0 - 2.0 * p12.powi(3) - 3.0 * p12 * p12;
        let p03 = if i % 2 == 0 { slack.sqrt() } else { -slack.sqrt() };
        let det = circle::face_f_matrix(&FaceFPoint::new(p12, p03)).determinant();
        if det.abs() > 1e-10 {
            failures.push(format!("boundary determinant {det} at p12 {p12}"));
        }
    }
    report(2, "face F scalar/LMI agreement and boundary determinant", &failures);
}

#[test]
fn criterion_03_quartic_order_at_tau_zero() {
    let p = circle::extremal_poly(0.0).unwrap();
    let mut s44 = 0.0;
    let mut s46 = 0.0;
    let mut s66 = 0.0;
    let mut r4 = 0.0;
    let mut r6 = 0.0;
    for k in 1..=40 {
        let phi = 0.0025 * k as f64;
        let y = 1.0 - p.eval_angle(phi);
        let (x4, x6) = (phi.powi(4), phi.powi(6));
        s44 += x4 * x4;
        s46 += x4 * x6;
        s66 += x6 * x6;
        r4 += x4 * y;
        r6 += x6 * y;
    }
    let det = s44 * s66 - s46 * s46;
    let fitted = (s66 * r4 - s46 * r6) / det;
    let mut failures = Vec::new();
    if (fitted - 0.375).abs() > 1e-4 {
        failures.push(format!("fitted quartic coefficient {fitted}"));
    }
    report(3, "quartic order of the degenerate maximum", &failures);
}

#[test]
fn criterion_04_case_b_pipeline() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(4);
    for trial in 0..100 {
        let p102 = rng.random_range(0.03..0.47);
        let p012 = rng.random_range(0.05..0.95) * 3.0f64.sqrt() * p102;
        let p = match families::case_b(p102, p012) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("trial {trial}: construction failed: {e}"));
                continue;
            }
        };
        let n = sphere::norm_s2_with_starts(&p, CENSUS_STARTS).unwrap();
        if n.maxima.len() != 4 || !n.max_circles.is_empty() {
            failures.push(format!(
                "trial {trial} ({p102}, {p012}): {} maxima, {} circles",
                n.maxima.len(),
                n.max_circles.len()
            ));
            continue;
        }
        for m in &n.maxima {
            if (m.value - 1.0).abs() > 1e-9 {
                failures.push(format!("trial {trial}: maximum value {}", m.value));
            }
        }
        let fourth = families::fourth_maximum(p102, p012).unwrap().coords();
        let closest = n
            .maxima
            .iter()
            .map(|m| (m.location.coords() - fourth).norm())
            .fold(f64::INFINITY, f64::min);
        if closest > 1e-9 {
            failures.push(format!("trial {trial}: fourth maximum off by {closest}"));
        }
        let cert = gramian::extremality_certificate(&p, &n.maxima, &n.max_circles).unwrap();
        if cert.rank != 10 {
            failures.push(format!("trial {trial}: certificate rank {}", cert.rank));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed > 120.0 {
        failures.push(format!("runtime {elapsed:.1} s exceeds 2 min"));
    }
    println!("criterion 4 runtime: {elapsed:.1} s");
    report(4, "four-maxima family pipeline", &failures);
}

#[test]
fn criterion_05_case_f_maxima() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(5);
    for trial in 0..100 {
        let p102 = rng.random_range(-0.95..0.45);
        let xi = rng.random_range(0.0..PI / 2.0 - 0.01);
        let p = families::case_f(p102, xi).unwrap();
        let (xp, xm) = families::nondeg_maxima(p102, xi).unwrap();
        let w = (1.0 - 2.0 * p102).sqrt();
        for (sign, x) in [(1.0, xp), (-1.0, xm)] {
            let u = x.coords();
            if (u.norm() - 1.0).abs() > 1e-12 {
                failures.push(format!("trial {trial}: |x| - 1 = {}", u.norm() - 1.0));
            }
            if (p.eval(&u) - 1.0).abs() > 1e-10 {
                failures.push(format!("trial {trial}: value {}", p.eval(&u)));
            }
            if (u.x + sign * w * u.z - 1.0).abs() > 1e-10 {
                failures.push(format!("trial {trial}: circle incidence violated"));
            }
        }
    }
    let (xp, xm) = families::nondeg_maxima(0.0, 0.0).unwrap();
    let expected_p = Vec3::new(1.0, 6.0f64.sqrt(), 3.0) / 4.0;
    let expected_m = Vec3::new(1.0, 6.0f64.sqrt(), -3.0) / 4.0;
    if (xp.coords() - expected_p).norm() > 1e-12 || (xm.coords() - expected_m).norm() > 1e-12 {
        failures.push("exact values at (0, 0) missed".to_string());
    }
    report(5, "doubly degenerate family maxima", &failures);
}

#[test]
fn criterion_06_gramian_identities() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(6);
    let mut zs: Vec<[f64; 4]> = Vec::new();
    for trial in 0..1000 {
        // central draw
        let mut b = [0.0; 4];
        let mut sum = 0.0;
        for v in &mut b {
            *v = rng.random_range(0.05..1.0);
            sum += *v;
        }
        for v in &mut b {
            *v /= sum;
        }
        let direct = gramian::gram_central(b).unwrap();
        let z = BarycentricZ::from_central(b).unwrap();
        let via_z = gramian::gram_from_z(&z).unwrap();
        let dist = (direct.matrix() - via_z.matrix()).norm();
        if dist > 1e-12 {
            failures.push(format!("central trial {trial}: distance {dist}"));
        }
        let res = (direct.matrix() * nalgebra::Vector4::from_column_slice(&direct.kernel())).norm();
        if res > 1e-10 {
            failures.push(format!("central trial {trial}: kernel residual {res}"));
        }
        let eig = direct.eigenvalues();
        if eig[3].abs() > 1e-10 || eig[2] <= 0.0 {
            failures.push(format!("central trial {trial}: eigenvalues {eig:?}"));
        }
        if trial < 50 {
            zs.push(z.values());
        }

        // wing draw
        let bw = [
            rng.random_range(0.05..3.0),
            rng.random_range(0.05..3.0),
            rng.random_range(0.05..3.0),
        ];
        let direct = gramian::gram_wing(bw).unwrap();
        let z = BarycentricZ::from_wing(bw).unwrap();
        let via_z = gramian::gram_from_z(&z).unwrap();
        let dist = (direct.matrix() - via_z.matrix()).norm();
        if dist > 1e-12 {
            failures.push(format!("wing trial {trial}: distance {dist}"));
        }
        let res = (direct.matrix() * nalgebra::Vector4::from_column_slice(&direct.kernel())).norm();
        if res > 1e-10 {
            failures.push(format!("wing trial {trial}: kernel residual {res}"));
        }
        let eig = direct.eigenvalues();
        if eig[3].abs() > 1e-10 || eig[2] <= 0.0 {
            failures.push(format!("wing trial {trial}: eigenvalues {eig:?}"));
        }
        if trial < 50 {
            zs.push(z.values());
        }
    }
    for z in zs {
        let (m, _) = gramian::coefficient_system(&z);
        let det = m.determinant();
        let expected = gramian::coefficient_system_det(&z);
        if (det - expected).abs() > 1e-8 * expected.abs() {
            failures.push(format!("determinant {det} vs closed form {expected}"));
        }
    }
    report(6, "Gramian parametrization identities", &failures);
}

#[test]
fn criterion_07_morse_census() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..100 {
        let gram = if trial < 50 {
            let mut b = [0.0; 4];
            let mut sum = 0.0;
            for v in &mut b {
                *v = rng.random_range(0.08..1.0);
                sum += *v;
            }
            for v in &mut b {
                *v /= sum;
            }
            gramian::gram_central(b).unwrap()
        } else {
            gramian::gram_wing([
                rng.random_range(0.1..2.5),
                rng.random_range(0.1..2.5),
                rng.random_range(0.1..2.5),
            ])
            .unwrap()
        };
        let pts = gramian::points_from_gram(&gram).unwrap();
        let p = gramian::cubic_from_quadruple(&pts).unwrap().cubic;
        let set = sphere::critical_points_with_starts(&p, CENSUS_STARTS).unwrap();
        let (ma, mi, sa) = set.counts();
        if (ma, mi, sa) != (4, 4, 6) {
            failures.push(format!("trial {trial}: census {ma}/{mi}/{sa}"));
        }
        if ma as isize - sa as isize + mi as isize != 2 {
            failures.push(format!("trial {trial}: Euler count violated"));
        }
        if set.warning.is_some() {
            failures.push(format!("trial {trial}: {:?}", set.warning));
        }
    }
    report(7, "Morse census of the four-maxima cubics", &failures);
}

#[test]
fn criterion_08_zonal_verifications() {
    let mut failures = Vec::new();
    // family (a): circle x1 = -1/2 at value 1
    let a = families::case_a();
    let r = (3.0f64).sqrt() / 2.0;
    for k in 0..1000 {
        let t = 2.0 * PI * k as f64 / 1000.0;
        let x = Vec3::new(-0.5, r * t.cos(), r * t.sin());
        if (a.eval(&x) - 1.0).abs() > 1e-10 {
            failures.push(format!("family (a) deviates at sample {k}"));
            break;
        }
    }
    // family (c) over a sweep of parameters
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..10 {
        let p102 = rng.random_range(-0.9..0.45);
        let p = families::case_c(p102).unwrap();
        let axis = families::case_c_axis(p102).coords();
        let offset = 1.0 / (2.0 - 2.0 * p102).sqrt();
        let circle = extremal_cubics::trig::SphereCircle::from_plane(&axis, offset, None);
        for k in 0..1000 {
            let x = circle.point(2.0 * PI * k as f64 / 1000.0).normalize();
            if (p.eval(&x) - 1.0).abs() > 1e-10 {
                failures.push(format!("family (c) p102 {p102} deviates at sample {k}"));
                break;
            }
        }
    }
    // family (d): flat maximum
    let th = families::case_d().tangent_hessian(&SpherePoint3::e1());
    if th.m.norm() > 1e-10 {
        failures.push(format!("family (d) tangent Hessian norm {}", th.m.norm()));
    }
    report(8, "zonal constancy and the flat maximum", &failures);
}

#[test]
fn criterion_09_classifier_round_trip() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(9);
    let families_list = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];
    for &family in &families_list {
        for trial in 0..50 {
            let (p, expected): (Cubic3, CanonicalForm) = match family {
                'a' => (families::case_a(), CanonicalForm::A),
                'b' => {
                    let p102 = rng.random_range(0.05..0.45);
                    let p012 = rng.random_range(0.1..0.9) * 3.0f64.sqrt() * p102;
                    (
                        families::case_b(p102, p012).unwrap(),
                        CanonicalForm::B { p102, p012 },
                    )
                }
                'c' => {
                    let p102 = rng.random_range(-0.9..0.42);
                    (families::case_c(p102).unwrap(), CanonicalForm::C { p102 })
                }
                'd' => (families::case_d(), CanonicalForm::D),
                'e' => {
                    let p102 = rng.random_range(-0.9..0.42);
                    (families::case_e(p102).unwrap(), CanonicalForm::E { p102 })
                }
                'f' => {
                    let p102 = rng.random_range(-0.9..0.42);
                    let xi = rng.random_range(0.03..PI / 2.0 - 0.03);
                    (
                        families::case_f(p102, xi).unwrap(),
                        CanonicalForm::F { p102, xi },
                    )
                }
                'g' => {
                    let mut b = [0.0; 4];
                    let mut sum = 0.0;
                    for v in &mut b {
                        *v = rng.random_range(0.2..1.0);
                        sum += *v;
                    }
                    for v in &mut b {
                        *v /= sum;
                    }
                    let gram = gramian::gram_central(b).unwrap();
                    let pts = gramian::points_from_gram(&gram).unwrap();
                    b.sort_by(f64::total_cmp);
                    (
                        gramian::cubic_from_quadruple(&pts).unwrap().cubic,
                        CanonicalForm::G { b },
                    )
                }
                'h' => {
                    let mut b = [
                        rng.random_range(0.15..2.0),
                        rng.random_range(0.15..2.0),
                        rng.random_range(0.15..2.0),
                    ];
                    let gram = gramian::gram_wing(b).unwrap();
                    let pts = gramian::points_from_gram(&gram).unwrap();
                    b.sort_by(f64::total_cmp);
                    (
                        gramian::cubic_from_quadruple(&pts).unwrap().cubic,
                        CanonicalForm::H { b },
                    )
                }
                _ => unreachable!(),
            };
            let rotated = p.apply_orthogonal(&random_rotation(&mut rng));
            let c = match classify::classify_s2_with_starts(&rotated, 1e-7, CENSUS_STARTS) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("family {family} trial {trial}: {e}"));
                    continue;
                }
            };
            let Some(form) = c.form else {
                failures.push(format!(
                    "family {family} trial {trial}: no form matched (residual {})",
                    c.residual
                ));
                continue;
            };
            if form.label() != family {
                failures.push(format!(
                    "family {family} trial {trial}: classified as {}",
                    form.label()
                ));
                continue;
            }
            if !params_match(&form, &expected, 1e-6) {
                failures.push(format!(
                    "family {family} trial {trial}: parameters {form:?} vs {expected:?}"
                ));
            }
            if c.verdict != Verdict::Extremal {
                failures.push(format!(
                    "family {family} trial {trial}: verdict {:?}",
                    c.verdict
                ));
            }
            // exclusivity: runner-up candidates stay far
            for (label, residual) in c.candidates.iter().skip(1) {
                if *label != family && *residual <= 1e-3 {
                    failures.push(format!(
                        "family {family} trial {trial}: runner-up {label} residual {residual}"
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed > 600.0 {
        failures.push(format!("runtime {elapsed:.1} s exceeds 10 min"));
    }
    println!("criterion 9 runtime: {elapsed:.1} s");
    report(9, "classifier round trip over all families", &failures);
}

fn params_match(got: &CanonicalForm, expected: &CanonicalForm, tol: f64) -> bool {
    match (got, expected) {
        (CanonicalForm::A, CanonicalForm::A) | (CanonicalForm::D, CanonicalForm::D) => true,
        (CanonicalForm::B { p102: a1, p012: a2 }, CanonicalForm::B { p102: b1, p012: b2 }) => {
            (a1 - b1).abs() <= tol && (a2 - b2).abs() <= tol
        }
        (CanonicalForm::C { p102: a }, CanonicalForm::C { p102: b })
        | (CanonicalForm::E { p102: a }, CanonicalForm::E { p102: b }) => (a - b).abs() <= tol,
        (CanonicalForm::F { p102: a1, xi: a2 }, CanonicalForm::F { p102: b1, xi: b2 }) => {
            (a1 - b1).abs() <= tol && (a2 - b2).abs() <= tol
        }
        (CanonicalForm::G { b: a }, CanonicalForm::G { b }) => {
            a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
        }
        (CanonicalForm::H { b: a }, CanonicalForm::H { b }) => {
            a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
        }
        _ => false,
    }
}

#[test]
fn criterion_10_non_extremality_witness() {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(10);
    let mut cases: Vec<(String, Cubic3, Vec<Vec3>)> = Vec::new();

    // single-maximum cubics: random directions scaled onto the boundary
    let mut produced = 0;
    let mut attempts = 0;
    while produced < 7 && attempts < 40 {
        attempts += 1;
        let mut c = [0.0; 10];
        for v in &mut c {
            *v = rng.random_range(-1.0..1.0);
        }
        let raw = Cubic3::new(c).unwrap();
        let n = sphere::norm_s2_with_starts(&raw, CENSUS_STARTS).unwrap();
        if n.value < 0.1 {
            continue;
        }
        let p = raw.scale(1.0 / n.value);
        let n = sphere::norm_s2_with_starts(&p, CENSUS_STARTS).unwrap();
        if n.maxima.len() == 1
            && n.max_circles.is_empty()
            && n.maxima[0].degeneracy == Degeneracy::NonDegenerate
        {
            cases.push((
                format!("single-max #{produced}"),
                p,
                vec![n.maxima[0].location.coords()],
            ));
            produced += 1;
        }
    }

    // two-maxima cubics: the extremal circle family lifted to the sphere
    for k in 0..7 {
        let tau = 0.15 + 0.6 * k as f64 / 6.0;
        let p2 = circle::extremal_poly(tau).unwrap();
        let p = embed(&p2);
        let (_, angles) = circle::norm_s1(&p2);
        let maxima: Vec<Vec3> = angles
            .iter()
            .map(|&a| Vec3::new(a.cos(), a.sin(), 0.0))
            .collect();
        cases.push((format!("two-max tau {tau:.2}"), p, maxima));
    }

    // three-maxima cubics: rotated copies of the corner polynomial
    for k in 0..6 {
        let p2 = circle::extremal_poly(circle::SQRT3_HALF).unwrap();
        let q = random_rotation(&mut rng);
        let p = embed(&p2).apply_orthogonal(&q);
        let maxima: Vec<Vec3> = [0.0, 2.0 * PI / 3.0, -2.0 * PI / 3.0]
            .iter()
            .map(|&a| q.apply_point(&Vec3::new(a.cos(), a.sin(), 0.0)))
            .collect();
        cases.push((format!("three-max #{k}"), p, maxima));
    }

    assert!(cases.len() >= 20, "only {} test cubics produced", cases.len());

    for (name, p, maxima) in &cases {
        // pad the witness triple with fixed distinct points
        let mut pts: Vec<Vec3> = maxima.clone();
        let extra = [
            Vec3::new(0.36, 0.48, 0.8),
            Vec3::new(-0.8, 0.36, 0.48),
            Vec3::new(0.48, -0.8, 0.36),
        ];
        let mut i = 0;
        while pts.len() < 3 {
            let cand = extra[i];
            if pts.iter().all(|u| (u - cand).norm() > 1e-6) {
                pts.push(cand);
            }
            i += 1;
        }
        let delta = gramian::perturbation_witness(
            &SpherePoint3::new(pts[0].normalize()).unwrap(),
            &SpherePoint3::new(pts[1].normalize()).unwrap(),
            &SpherePoint3::new(pts[2].normalize()).unwrap(),
        )
        .unwrap();
        let scale = 1.0 / delta.coeff_norm();
        let delta = delta.scale(scale);
        let mut eps = 1e-2;
        let fits = |eps: f64| {
            sphere::brute_force_norm(&p.add(&delta.scale(eps)), 400) <= 1.0 + 1e-12
                && sphere::brute_force_norm(&p.sub(&delta.scale(eps)), 400) <= 1.0 + 1e-12
        };
        while eps >= 1e-6 && !fits(eps) {
            eps *= 0.5;
        }
        if eps < 1e-6 {
            failures.push(format!("{name}: no feasible perturbation above 1e-6"));
        }
    }
    report(10, "perturbation witnesses for few-maxima cubics", &failures);
}

#[test]
fn maxima_of_witness_cases_are_nondegenerate() {
    // supporting check for criterion 10: the lifted two- and three-maxima
    // cubics have only non-degenerate isolated global maxima on the sphere
    let p2 = circle::extremal_poly(0.45).unwrap();
    let p = embed(&p2);
    let n = sphere::norm_s2_with_starts(&p, CENSUS_STARTS).unwrap();
    assert_eq!(n.maxima.len(), 2);
    assert!(n.max_circles.is_empty());
    for m in &n.maxima {
        assert_eq!(m.morse, MorseType::Max);
        assert_eq!(m.degeneracy, Degeneracy::NonDegenerate);
    }
}
