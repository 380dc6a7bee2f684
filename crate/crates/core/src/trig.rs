//! Trigonometric-polynomial machinery: the Fourier form of a cubic on S^1,
//! real root isolation through the tan-half-angle substitution and a
//! companion matrix, and restrictions of 3-variable cubics to circles on S^2.

use crate::poly::{Cubic2, Cubic3, Vec3};
use nalgebra::DMatrix;

/// Restriction of a `Cubic2` to S^1 in Fourier form:
/// f(phi) = a1 cos(phi) + b1 sin(phi) + a3 cos(3 phi) + b3 sin(3 phi).
#[derive(Clone, Copy, Debug)]
pub struct CircleFourier {
    pub a1: f64,
    pub b1: f64,
    pub a3: f64,
    pub b3: f64,
}

impl CircleFourier {
    pub fn from_cubic(p: &Cubic2) -> Self {
        Self {
            a1: 0.75 * (p.p30 + p.p12),
            b1: 0.75 * (p.p21 + p.p03),
            a3: 0.25 * (p.p30 - 3.0 * p.p12),
            b3: 0.25 * (3.0 * p.p21 - p.p03),
        }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let (s1, c1) = phi.sin_cos();
        let (s3, c3) = (3.0 * phi).sin_cos();
        self.a1 * c1 + self.b1 * s1 + self.a3 * c3 + self.b3 * s3
    }

    pub fn d1(&self, phi: f64) -> f64 {
        let (s1, c1) = phi.sin_cos();
        let (s3, c3) = (3.0 * phi).sin_cos();
        -self.a1 * s1 + self.b1 * c1 - 3.0 * self.a3 * s3 + 3.0 * self.b3 * c3
    }

    pub fn d2(&self, phi: f64) -> f64 {
        let (s1, c1) = phi.sin_cos();
        let (s3, c3) = (3.0 * phi).sin_cos();
        -self.a1 * c1 - self.b1 * s1 - 9.0 * self.a3 * c3 - 9.0 * self.b3 * s3
    }
}

/// Coefficients (ascending in t) of the degree-6 polynomial obtained from
/// f'(phi) = 0 under cos(phi) = (1 - t^2)/(1 + t^2), sin(phi) = 2t/(1 + t^2),
/// after clearing the (1 + t^2)^3 denominator.
pub fn derivative_half_angle_poly(p: &Cubic2) -> [f64; 7] {
    let a = p.p21;
    let b = 2.0 * p.p12 - p.p30;
    let c = p.p03 - 2.0 * p.p21;
    let d = p.p12;
    [
        3.0 * a,
        6.0 * b,
        3.0 * (-3.0 * a + 4.0 * c),
        3.0 * (-4.0 * b - 8.0 * d),
        3.0 * (3.0 * a - 4.0 * c),
        6.0 * b,
        -3.0 * a,
    ]
}

/// Real roots of a polynomial given by ascending coefficients, via the
/// eigenvalues of its companion matrix.  Near-zero leading coefficients are
/// trimmed relative to the largest coefficient.  When the bounded Schur
/// iteration fails to converge (repeated imaginary pairs can stall it), a
/// derivative-chain bisection isolator takes over.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-12 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let monic: Vec<f64> = coeffs[..=deg].iter().map(|c| c / coeffs[deg]).collect();
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -monic[i];
    }
    if let Some(schur) = m.try_schur(1e-13, 400) {
        let eig = schur.complex_eigenvalues();
        let mut out = Vec::new();
        for e in eig.iter() {
            if e.im.abs() <= 1e-6 * (1.0 + e.re.abs()) {
                out.push(e.re);
            }
        }
        out
    } else {
        real_roots_bisection(&monic)
    }
}

/// Root isolation by the derivative chain: the real roots of p' split the
/// line into monotone intervals, each holding at most one root of p.
fn real_roots_bisection(monic: &[f64]) -> Vec<f64> {
    let deg = monic.len() - 1;
    let eval = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci);
    if deg == 1 {
        return vec![-monic[0]];
    }
    let deriv: Vec<f64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect();
    let dlead = *deriv.last().unwrap();
    let dmonic: Vec<f64> = deriv.iter().map(|c| c / dlead).collect();
    let mut breaks = real_roots_bisection(&dmonic);
    breaks.sort_by(f64::total_cmp);
    let bound = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut grid = vec![-bound];
    grid.extend(breaks.iter().copied().filter(|b| b.abs() < bound));
    grid.push(bound);
    let mut out = Vec::new();
    let scale = monic.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1.0);
    for w in grid.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(monic, lo), eval(monic, hi));
        if flo == 0.0 {
            out.push(lo);
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            let fm = eval(monic, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if flo.signum() == fm.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    // even-multiplicity roots sit at derivative roots without a sign change
    for b in breaks {
        if eval(monic, b).abs() <= 1e-9 * scale && !out.iter().any(|r| (r - b).abs() < 1e-9) {
            out.push(b);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Circles on S^2
// ---------------------------------------------------------------------------

/// A circle on S^2 parameterized as gamma(alpha) = c0 + cos(alpha) c1 + sin(alpha) c2.
#[derive(Clone, Copy, Debug)]
pub struct SphereCircle {
    pub c0: Vec3,
    pub c1: Vec3,
    pub c2: Vec3,
}

impl SphereCircle {
    /// Great circle through `u` with tangent direction `w` at alpha = 0.
    pub fn great(u: &Vec3, w: &Vec3) -> Self {
        Self {
            c0: Vec3::zeros(),
            c1: *u,
            c2: *w,
        }
    }

    /// Circle through `u` tangent to `w` with geodesic curvature `kappa`
    /// towards `w_n = u x w`.  kappa = 0 recovers the great circle.
    pub fn curved(u: &Vec3, w: &Vec3, kappa: f64) -> Self {
        let w_n = u.cross(w);
        let denom = (1.0 + kappa * kappa).sqrt();
        let (sb, cb) = (kappa / denom, 1.0 / denom);
        let n = w_n * cb + u * sb;
        Self {
            c0: n * sb,
            c1: (u * cb - w_n * sb) * cb,
            c2: w * cb,
        }
    }

    /// Circle cut by the plane <axis, x> = offset, starting at the point of
    /// the circle closest to `start_hint` (or a deterministic point).
    pub fn from_plane(axis: &Vec3, offset: f64, start_hint: Option<&Vec3>) -> Self {
        let n = axis.normalize();
        let rho = (1.0 - offset * offset).max(0.0).sqrt();
        let (t1, t2) = crate::poly::tangent_basis(&n);
        let (d1, d2) = match start_hint {
            Some(h) => {
                let w = h - n * h.dot(&n);
                if w.norm() > 1e-9 {
                    let d1 = w.normalize();
                    (d1, n.cross(&d1))
                } else {
                    (t1, t2)
                }
            }
            None => (t1, t2),
        };
        Self {
            c0: n * offset,
            c1: d1 * rho,
            c2: d2 * rho,
        }
    }

    pub fn point(&self, alpha: f64) -> Vec3 {
        let (s, c) = alpha.sin_cos();
        self.c0 + self.c1 * c + self.c2 * s
    }

    /// Speed of the parametrization (circle radius).
    pub fn speed(&self) -> f64 {
        self.c2.norm()
    }

    /// Restriction of a cubic to the circle as a trig polynomial of degree 3.
    pub fn restrict(&self, p: &Cubic3) -> TrigPoly3 {
        let mut samples = [0.0; 8];
        for (j, s) in samples.iter_mut().enumerate() {
            *s = p.eval(&self.point(j as f64 * std::f64::consts::FRAC_PI_4));
        }
        TrigPoly3::from_samples8(&samples)
    }
}

/// Trig polynomial a0 + sum_{k=1..3} (ak cos k alpha + bk sin k alpha).
#[derive(Clone, Copy, Debug)]
pub struct TrigPoly3 {
    pub a: [f64; 4],
    pub b: [f64; 4], // b[0] unused
}

impl TrigPoly3 {
    /// Exact reconstruction from 8 equispaced samples (degree <= 3).
    pub fn from_samples8(f: &[f64; 8]) -> Self {
        let mut a = [0.0; 4];
        let mut b = [0.0; 4];
        for k in 0..4 {
            let mut ca = 0.0;
            let mut cb = 0.0;
            for (j, &fj) in f.iter().enumerate() {
                let ang = 2.0 * std::f64::consts::PI * (k * j) as f64 / 8.0;
                ca += fj * ang.cos();
                cb += fj * ang.sin();
            }
            let norm = if k == 0 { 8.0 } else { 4.0 };
            a[k] = ca / norm;
            b[k] = cb / norm;
        }
        Self { a, b }
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        let mut v = self.a[0];
        for k in 1..4 {
            let (s, c) = (k as f64 * alpha).sin_cos();
            v += self.a[k] * c + self.b[k] * s;
        }
        v
    }

    /// m-th derivative at alpha = 0.
    pub fn derivative_at_zero(&self, m: u32) -> f64 {
        if m == 0 {
            return self.a[0] + self.a[1] + self.a[2] + self.a[3];
        }
        let mut v = 0.0;
        for k in 1..4usize {
            let km = (k as f64).powi(m as i32);
            match m % 4 {
                0 => v += self.a[k] * km,
                1 => v += self.b[k] * km,
                2 => v -= self.a[k] * km,
                3 => v -= self.b[k] * km,
                _ => unreachable!(),
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::SpherePoint3;

    #[test]
    fn fourier_form_matches_direct_evaluation() {
        let p = Cubic2::new(0.7, -0.2, 0.9, 1.1).unwrap();
        let f = CircleFourier::from_cubic(&p);
        for n in 0..50 {
            let phi = n as f64 * 0.13 - 3.0;
            assert!((f.eval(phi) - p.eval_angle(phi)).abs() < 1e-13);
            let h = 1e-6;
            let fd = (p.eval_angle(phi + h) - p.eval_angle(phi - h)) / (2.0 * h);
            assert!((f.d1(phi) - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn half_angle_poly_vanishes_at_critical_angles() {
        let p = Cubic2::new(1.0, 0.0, -1.0, 0.0).unwrap(); // cos 3 phi
        let coeffs = derivative_half_angle_poly(&p);
        // critical angles phi = k pi / 3, t = tan(phi/2)
        for k in [1.0f64, 2.0] {
            let t = (k * std::f64::consts::PI / 6.0).tan();
            let mut v = 0.0;
            for (i, c) in coeffs.iter().enumerate() {
                v += c * t.powi(i as i32);
            }
            assert!(v.abs() < 1e-12, "residual {v} at k = {k}");
        }
    }

    #[test]
    fn companion_roots_of_cubic_poly() {
        // (t - 1)(t + 2)(t - 0.5) = t^3 + 0.5 t^2 - 2.5 t + 1
        let mut roots = real_roots(&[1.0, -2.5, 0.5, 1.0]);
        roots.sort_by(f64::total_cmp);
        assert_eq!(roots.len(), 3);
        assert!((roots[0] + 2.0).abs() < 1e-10);
        assert!((roots[1] - 0.5).abs() < 1e-10);
        assert!((roots[2] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn circle_points_stay_on_sphere() {
        let u = Vec3::new(0.6, 0.64, 0.48).normalize();
        let (w, _) = crate::poly::tangent_basis(&u);
        for kappa in [-2.0, -1.0, 0.0, 0.7, 3.0] {
            let c = SphereCircle::curved(&u, &w, kappa);
            assert!((c.point(0.0) - u).norm() < 1e-14, "kappa {kappa}");
            for n in 0..20 {
                let alpha = n as f64 * 0.3;
                assert!((c.point(alpha).norm() - 1.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn trig_restriction_reproduces_values_and_derivatives() {
        let p = Cubic3::new([0.5, -0.3, 1.1, 0.2, -0.9, 0.4, 0.8, -0.6, 0.1, -1.3]).unwrap();
        let u = SpherePoint3::normalized(Vec3::new(1.0, -2.0, 0.5)).unwrap();
        let (w, _) = crate::poly::tangent_basis(&u.coords());
        let circle = SphereCircle::curved(&u.coords(), &w, 0.8);
        let t = circle.restrict(&p);
        for n in 0..30 {
            let alpha = n as f64 * 0.21;
            assert!((t.eval(alpha) - p.eval(&circle.point(alpha))).abs() < 1e-12);
        }
        // first derivative against finite differences
        let h = 1e-5;
        let fd = (p.eval(&circle.point(h)) - p.eval(&circle.point(-h))) / (2.0 * h);
        assert!((t.derivative_at_zero(1) - fd).abs() < 1e-8);
        let fd2 =
            (p.eval(&circle.point(h)) - 2.0 * p.eval(&circle.point(0.0)) + p.eval(&circle.point(-h)))
                / (h * h);
        assert!((t.derivative_at_zero(2) - fd2).abs() < 1e-5);
    }
}
