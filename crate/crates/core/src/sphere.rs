//! The unit norm ball of cubics on S^2: the 7-dimensional face of cubics
//! maximal at e1, norm computation through a critical-point census, the
//! brute-force grid oracle, and typing of degenerate maxima.

use crate::circle::Membership;
use crate::error::{Error, Result};
use crate::poly::{tangent_basis, Cubic3, SpherePoint3, Vec3, CRITICAL_TOL};
use crate::trig::{CircleFourier, SphereCircle};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Eigenvalue threshold below which a tangent-Hessian direction counts as
/// degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Threshold on the quartic coefficient used to separate double from triple
/// maxima.
pub const ORDER_FIT_TOL: f64 = 1e-6;
/// Radius for deduplicating critical points.
pub const POINT_DEDUP: f64 = 1e-7;
/// Chaining radius for collapsing noise clouds around degenerate critical
/// points and for collecting critical circles.
pub const CLUSTER_RADIUS: f64 = 5e-3;
/// Default number of multistart seeds on the Fibonacci lattice.
pub const DEFAULT_STARTS: usize = 20_000;

// ---------------------------------------------------------------------------
// Face profiles
// ---------------------------------------------------------------------------

/// The angular profiles of a face-form cubic: p12 and p03 as trigonometric
/// polynomials of the rotation angle about e1, and the slack profile
/// Delta = 1 - 2 p12^3 - 3 p12^2 - p03^2.
#[derive(Clone, Copy, Debug)]
pub struct FaceProfile {
    pub p120: f64,
    pub p111: f64,
    pub p102: f64,
    pub p030: f64,
    pub p021: f64,
    pub p012: f64,
    pub p003: f64,
}

impl FaceProfile {
    pub fn p12(&self, phi: f64) -> f64 {
        let (s, c) = phi.sin_cos();
        self.p120 * c * c + 2.0 * self.p111 * s * c + self.p102 * s * s
    }

    pub fn p12_d1(&self, phi: f64) -> f64 {
        let (s2, c2) = (2.0 * phi).sin_cos();
        (self.p102 - self.p120) * s2 + 2.0 * self.p111 * c2
    }

    fn p03_fourier(&self) -> CircleFourier {
        CircleFourier::from_cubic(&crate::poly::Cubic2 {
            p30: self.p030,
            p21: self.p021,
            p12: self.p012,
            p03: self.p003,
        })
    }

    pub fn p03(&self, phi: f64) -> f64 {
        self.p03_fourier().eval(phi)
    }

    pub fn delta(&self, phi: f64) -> f64 {
        let p12 = self.p12(phi);
        let p03 = self.p03(phi);
        1.0 - 2.0 * p12.powi(3) - 3.0 * p12 * p12 - p03 * p03
    }

    pub fn delta_d1(&self, phi: f64) -> f64 {
        let p12 = self.p12(phi);
        let f = self.p03_fourier();
        -6.0 * self.p12_d1(phi) * (p12 * p12 + p12) - 2.0 * f.eval(phi) * f.d1(phi)
    }

    /// Exact minimum of the degree-2 profile p12.
    pub fn p12_min(&self) -> f64 {
        let a0 = 0.5 * (self.p120 + self.p102);
        let a2 = 0.5 * (self.p120 - self.p102);
        a0 - (a2 * a2 + self.p111 * self.p111).sqrt()
    }

    /// Minimum of Delta over the circle with its minimizer, by a dense grid
    /// followed by Newton refinement of the local grid minima.  The Bernstein
    /// bound |Delta'| <= 6 max|Delta| certifies that no dip between grid
    /// nodes is missed beyond the returned `certified_slack`.
    pub fn delta_min(&self, n: usize) -> DeltaMin {
        let h = 2.0 * PI / n as f64;
        let mut values = Vec::with_capacity(n);
        for j in 0..n {
            values.push(self.delta(-PI + j as f64 * h));
        }
        let abs_max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        // max|Delta| <= grid max / (1 - 3h) for trig degree 6
        let true_max_bound = abs_max / (1.0 - 3.0 * h).max(0.5);
        let mut best = f64::INFINITY;
        let mut best_phi = 0.0;
        for j in 0..n {
            let prev = values[(j + n - 1) % n];
            let next = values[(j + 1) % n];
            if values[j] <= prev && values[j] <= next {
                let mut phi = -PI + j as f64 * h;
                // Newton on Delta'
                for _ in 0..30 {
                    let d1 = self.delta_d1(phi);
                    let d2 = (self.delta_d1(phi + 1e-6) - self.delta_d1(phi - 1e-6)) / 2e-6;
                    if d2.abs() < 1e-12 {
                        break;
                    }
                    let step = (d1 / d2).clamp(-h, h);
                    phi -= step;
                    if step.abs() < 1e-14 {
                        break;
                    }
                }
                let v = self.delta(phi).min(values[j]);
                if v < best {
                    best = v;
                    best_phi = phi;
                }
            }
        }
        DeltaMin {
            value: best,
            phi: best_phi,
            certified_slack: 0.5 * h * 6.0 * true_max_bound,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DeltaMin {
    pub value: f64,
    pub phi: f64,
    /// Worst-case dip between grid nodes not excluded by the Bernstein bound.
    pub certified_slack: f64,
}

/// Extracts the angular profiles of a cubic in e1-face form.
pub fn face_profile(p: &Cubic3) -> Result<FaceProfile> {
    if !p.is_face_form(1e-12) {
        return Err(Error::NotInFaceForm);
    }
    Ok(FaceProfile {
        p120: p.p120(),
        p111: p.p111(),
        p102: p.p102(),
        p030: p.p030(),
        p021: p.p021(),
        p012: p.p012(),
        p003: p.p003(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CalFMembership {
    Member,
    BoundaryOfFace,
    NotMember,
}

/// Membership of a face-form cubic in the 7-dimensional face of the ball.
pub fn face_calf_membership(p: &Cubic3, tol: f64) -> Result<CalFMembership> {
    let profile = face_profile(p)?;
    let dmin = profile.delta_min(4096);
    let p12min = profile.p12_min();
    if dmin.value >= tol && p12min >= -1.0 + tol {
        Ok(CalFMembership::Member)
    } else if dmin.value >= -tol && p12min >= -1.0 - tol {
        Ok(CalFMembership::BoundaryOfFace)
    } else {
        Ok(CalFMembership::NotMember)
    }
}

// ---------------------------------------------------------------------------
// Critical points
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorseType {
    Max,
    Min,
    Saddle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    NonDegenerate,
    Double,
    Triple,
    Flat,
}

/// An isolated critical point of p restricted to S^2.
#[derive(Clone, Copy, Debug)]
pub struct CriticalPoint {
    pub location: SpherePoint3,
    pub value: f64,
    pub morse: MorseType,
    pub degeneracy: Degeneracy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleKind {
    Max,
    Min,
    Other,
}

/// A continuum of critical points on the circle <axis, x> = offset.
#[derive(Clone, Copy, Debug)]
pub struct CriticalCircle {
    pub axis: Vec3,
    pub offset: f64,
    pub value: f64,
    pub kind: CircleKind,
}

#[derive(Clone, Debug, Default)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    pub circles: Vec<CriticalCircle>,
    /// Set when the isolated, non-degenerate census violates the Euler count.
    pub warning: Option<String>,
}

impl CriticalSet {
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut max = 0;
        let mut min = 0;
        let mut saddle = 0;
        for p in &self.points {
            match p.morse {
                MorseType::Max => max += 1,
                MorseType::Min => min += 1,
                MorseType::Saddle => saddle += 1,
            }
        }
        (max, min, saddle)
    }

    /// Isolated global maxima at the given level.
    pub fn maxima_at(&self, value: f64, tol: f64) -> Vec<CriticalPoint> {
        self.points
            .iter()
            .filter(|p| p.morse == MorseType::Max && (p.value - value).abs() <= tol)
            .copied()
            .collect()
    }

    pub fn circles_at(&self, value: f64, tol: f64) -> Vec<CriticalCircle> {
        self.circles
            .iter()
            .filter(|c| (c.value - value).abs() <= tol)
            .copied()
            .collect()
    }
}

/// Degeneracy data of a critical maximum: the kernel direction when the
/// tangent Hessian has rank one, and the circle realizing the deepest order
/// of vanishing.
#[derive(Clone, Copy, Debug)]
pub struct MaxDegeneracy {
    pub degeneracy: Degeneracy,
    pub kernel: Option<Vec3>,
    /// Curvature of the circle through the kernel direction minimizing the
    /// quartic coefficient (triple maxima vanish along it to order six).
    pub best_kappa: f64,
}

/// Arc-length-normalized quartic coefficient of 1 - p along the circle of
/// curvature `kappa` through `u` tangent to `w`.
fn quartic_coefficient(p: &Cubic3, u: &Vec3, w: &Vec3, kappa: f64) -> f64 {
    let circle = SphereCircle::curved(u, w, kappa);
    let t = circle.restrict(p);
    let rho = circle.speed();
    -t.derivative_at_zero(4) / 24.0 / rho.powi(4)
}

/// Classifies the order of vanishing of 1 - p around a critical maximum
/// whose tangent Hessian has kernel direction `w`.  The quartic coefficient
/// is an exact quadratic in the geodesic curvature of the probing circle, so
/// three samples determine its minimum.
fn kernel_order(p: &Cubic3, u: &Vec3, w: &Vec3) -> (f64, f64, f64) {
    let cm = quartic_coefficient(p, u, w, -1.0);
    let c0 = quartic_coefficient(p, u, w, 0.0);
    let cp = quartic_coefficient(p, u, w, 1.0);
    let a = 0.5 * (cp + cm) - c0;
    let b = 0.5 * (cp - cm);
    if a <= 1e-12 {
        // degenerate family: no interior minimum over curvature
        return (c0, 0.0, c0);
    }
    let kappa_star = -b / (2.0 * a);
    let c_star = c0 + b * kappa_star + a * kappa_star * kappa_star;
    (c0, kappa_star, c_star)
}

/// Full degeneracy typing of a maximum (or, applied to -p, a minimum).
pub fn maximum_degeneracy(p: &Cubic3, u: &SpherePoint3) -> MaxDegeneracy {
    let th = p.tangent_hessian(u);
    let (eigs, dirs) = th.eigen();
    let near_zero = |l: f64| l.abs() <= DEGENERACY_TOL;
    if near_zero(eigs[0]) && near_zero(eigs[1]) {
        return MaxDegeneracy {
            degeneracy: Degeneracy::Flat,
            kernel: None,
            best_kappa: 0.0,
        };
    }
    if near_zero(eigs[1]) {
        let w = dirs[1];
        let (_, kappa_star, c_star) = kernel_order(p, &u.coords(), &w);
        let degeneracy = if c_star.abs() <= ORDER_FIT_TOL {
            Degeneracy::Triple
        } else {
            Degeneracy::Double
        };
        return MaxDegeneracy {
            degeneracy,
            kernel: Some(w),
            best_kappa: kappa_star,
        };
    }
    MaxDegeneracy {
        degeneracy: Degeneracy::NonDegenerate,
        kernel: None,
        best_kappa: 0.0,
    }
}

fn classify_point(p: &Cubic3, u: &SpherePoint3) -> CriticalPoint {
    let value = p.eval(&u.coords());
    let th = p.tangent_hessian(u);
    let (eigs, _) = th.eigen();
    let neg = |l: f64| l < -DEGENERACY_TOL;
    let pos = |l: f64| l > DEGENERACY_TOL;
    let (morse, degeneracy) = if neg(eigs[0]) && neg(eigs[1]) {
        (MorseType::Max, Degeneracy::NonDegenerate)
    } else if pos(eigs[0]) && pos(eigs[1]) {
        (MorseType::Min, Degeneracy::NonDegenerate)
    } else if neg(eigs[0]) && pos(eigs[1]) {
        (MorseType::Saddle, Degeneracy::NonDegenerate)
    } else if neg(eigs[0]) {
        // rank-1, possibly a degenerate maximum
        let info = maximum_degeneracy(p, u);
        match info.degeneracy {
            Degeneracy::Double | Degeneracy::Triple => {
                let c0 = quartic_coefficient(p, &u.coords(), &info.kernel.unwrap(), info.best_kappa);
                if c0 >= -ORDER_FIT_TOL {
                    (MorseType::Max, info.degeneracy)
                } else {
                    (MorseType::Saddle, info.degeneracy)
                }
            }
            other => (MorseType::Max, other),
        }
    } else if pos(eigs[1]) {
        let neg_p = p.scale(-1.0);
        let info = maximum_degeneracy(&neg_p, u);
        match info.degeneracy {
            Degeneracy::Double | Degeneracy::Triple => {
                let c0 =
                    quartic_coefficient(&neg_p, &u.coords(), &info.kernel.unwrap(), info.best_kappa);
                if c0 >= -ORDER_FIT_TOL {
                    (MorseType::Min, info.degeneracy)
                } else {
                    (MorseType::Saddle, info.degeneracy)
                }
            }
            other => (MorseType::Min, other),
        }
    } else {
        // fully degenerate tangent Hessian
        let (v1, v2) = tangent_basis(&u.coords());
        let dirs = [v1, v2, (v1 + v2).normalize(), (v1 - v2).normalize()];
        let c4: Vec<f64> = dirs
            .iter()
            .map(|w| quartic_coefficient(p, &u.coords(), w, 0.0))
            .collect();
        if c4.iter().all(|&c| c > ORDER_FIT_TOL) {
            (MorseType::Max, Degeneracy::Flat)
        } else if c4.iter().all(|&c| c < -ORDER_FIT_TOL) {
            (MorseType::Min, Degeneracy::Flat)
        } else {
            (MorseType::Saddle, Degeneracy::Flat)
        }
    };
    CriticalPoint {
        location: *u,
        value,
        morse,
        degeneracy,
    }
}

/// Fibonacci lattice of `n` points on S^2.
pub fn fibonacci_lattice(n: usize) -> Vec<Vec3> {
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = 2.0 * PI * (i as f64 / golden).fract();
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// One Newton run on the sphere towards a zero of the tangential gradient.
/// Singular tangent Hessians are handled by a pseudo-inverse step, which lets
/// runs settle onto critical circles of zonal cubics.
fn newton_on_sphere(p: &Cubic3, start: &Vec3) -> Option<Vec3> {
    let mut u = *start;
    for _ in 0..50 {
        let (v1, v2) = tangent_basis(&u);
        let g = p.gradient(&u);
        let lambda = g.dot(&u);
        let gt = nalgebra::Vector2::new(v1.dot(&g), v2.dot(&g));
        // The tangential projection cancels the radial part 3 p(u) u of the
        // gradient, so its rounding error scales with |p(u)|.  Below that
        // floor further steps would be a random walk along the flat
        // directions of degenerate maxima.
        if gt.norm() <= 1e-14 * p.eval(&u).abs() {
            break;
        }
        let h = p.hessian(&u);
        let ht = nalgebra::Matrix2::new(
            v1.dot(&(h * v1)) - lambda,
            v1.dot(&(h * v2)),
            v2.dot(&(h * v1)),
            v2.dot(&(h * v2)) - lambda,
        );
        let se = ht.symmetric_eigen();
        let scale = se.eigenvalues.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        // pseudo-inverse: exact null directions (critical circles) are dropped
        let mut step = nalgebra::Vector2::zeros();
        for k in 0..2 {
            let ek = se.eigenvectors.column(k);
            let lamk = se.eigenvalues[k];
            if lamk.abs() > 1e-13 * scale.max(1e-300) {
                step += ek * (ek.dot(&gt) / lamk);
            }
        }
        let mut d = -(v1 * step[0] + v2 * step[1]);
        let dn = d.norm();
        if dn > 0.5 {
            d *= 0.5 / dn;
        }
        let dn = d.norm();
        u = if dn > 1e-300 {
            u * dn.cos() + d / dn * dn.sin()
        } else {
            u
        };
        u = u.normalize();
        if dn < 1e-13 {
            break;
        }
    }
    if p.criticality_residual(&u) <= CRITICAL_TOL {
        Some(u)
    } else {
        None
    }
}

/// All critical points of p on S^2 from `starts` Newton runs seeded on a
/// Fibonacci lattice.  Continua (critical circles of zonal cubics) are
/// detected and reported separately from isolated points.
pub fn critical_points_with_starts(p: &Cubic3, starts: usize) -> Result<CriticalSet> {
    if p.is_zero() {
        return Err(Error::IncompleteCensus {
            reason: "zero cubic has no isolated critical points".into(),
        });
    }
    let seeds = fibonacci_lattice(starts);
    let found: Vec<Vec3> = seeds
        .par_iter()
        .filter_map(|s| newton_on_sphere(p, s))
        .collect();
    // Deduplicate.
    let mut unique: Vec<Vec3> = Vec::new();
    let mut dedup_hash = SpatialHash::new(POINT_DEDUP);
    for u in found {
        if dedup_hash
            .near(&unique, &u, POINT_DEDUP)
            .next()
            .is_none()
        {
            dedup_hash.insert(&u, unique.len());
            unique.push(u);
        }
    }
    // Antipodal closure.
    let mut add = Vec::new();
    for u in &unique {
        let v = -u;
        if dedup_hash.near(&unique, &v, POINT_DEDUP).next().is_none() {
            add.push(v);
        }
    }
    for u in add {
        dedup_hash.insert(&u, unique.len());
        unique.push(u);
    }

    // Around a degenerate maximum the criticality tolerance 1e-8
    // admits a whole stretch of the flat ridge, and the gradient noise floor
    // scatters deposits over it.  Genuine critical points are recognisable
    // by residuals at the noise floor itself: within each chained cluster,
    // keep the best-converged representatives separated by the census
    // resolution and drop deposits whose residual sits far above the
    // cluster minimum.
    let clusters = chain_clusters(&unique, CLUSTER_RADIUS);
    let mut survivors: Vec<Vec3> = Vec::new();
    for cluster in clusters {
        let mut members: Vec<(f64, Vec3)> = cluster
            .iter()
            .map(|&i| (p.criticality_residual(&unique[i]), unique[i]))
            .collect();
        members.sort_by(|a, b| a.0.total_cmp(&b.0));
        let gate = (members[0].0 * 1e3).max(1e-12);
        let mut kept: Vec<Vec3> = Vec::new();
        for (res, u) in members {
            if res > gate {
                break;
            }
            if kept.iter().all(|v| (v - u).norm() > 0.012) {
                kept.push(u);
            }
        }
        survivors.extend(kept);
    }

    // Critical circles: within a group of equal critical values, the crowded
    // points (those with near neighbours) must fit a single plane section.
    let mut groups: Vec<(f64, Vec<Vec3>)> = Vec::new();
    for u in &survivors {
        let v = p.eval(&u.normalize());
        match groups.iter_mut().find(|(gv, _)| (v - *gv).abs() < 1e-7) {
            Some((_, g)) => g.push(*u),
            None => groups.push((v, vec![*u])),
        }
    }
    let mut isolated: Vec<Vec3> = Vec::new();
    let mut circles = Vec::new();
    for (value, group) in groups {
        if group.len() <= 20 {
            isolated.extend(group);
            continue;
        }
        let crowd_hash = {
            let mut h = SpatialHash::new(0.05);
            for (i, u) in group.iter().enumerate() {
                h.insert(u, i);
            }
            h
        };
        let mut crowded: Vec<Vec3> = Vec::new();
        let mut lone: Vec<Vec3> = Vec::new();
        for u in &group {
            if crowd_hash.near(&group, u, 0.05).count() >= 4 {
                crowded.push(*u);
            } else {
                lone.push(*u);
            }
        }
        let mut circle_found = None;
        if crowded.len() > 20 && coordinate_extent(&crowded) > 0.1 {
            if let Some((axis, offset)) = fit_circle(&crowded) {
                if plane_residual(&crowded, &axis, offset) <= 1e-8 {
                    let kind = circle_kind(p, &axis, offset);
                    circles.push(CriticalCircle {
                        axis,
                        offset,
                        value,
                        kind,
                    });
                    circle_found = Some((axis, offset));
                }
            }
        }
        match circle_found {
            Some((axis, offset)) => {
                // absorb stray collapsed points sitting on the circle
                for u in lone {
                    if (axis.dot(&u) - offset).abs() > 1e-8 {
                        isolated.push(u);
                    }
                }
            }
            None => {
                isolated.extend(crowded);
                isolated.extend(lone);
            }
        }
    }

    let points: Vec<CriticalPoint> = isolated
        .iter()
        .map(|u| classify_point(p, &SpherePoint3::new(u.normalize()).unwrap()))
        .collect();

    let mut warning = None;
    if circles.is_empty()
        && points
            .iter()
            .all(|cp| cp.degeneracy == Degeneracy::NonDegenerate)
    {
        let (ma, mi, sa) = {
            let set = CriticalSet {
                points: points.clone(),
                ..CriticalSet::default()
            };
            set.counts()
        };
        if ma + mi < sa + 2 || ma as isize - sa as isize + mi as isize != 2 {
            warning = Some(format!(
                "Morse census violated: {ma} maxima - {sa} saddles + {mi} minima != 2"
            ));
        }
    }

    Ok(CriticalSet {
        points,
        circles,
        warning,
    })
}

pub fn critical_points_s2(p: &Cubic3) -> Result<CriticalSet> {
    critical_points_with_starts(p, DEFAULT_STARTS)
}

/// Spatial hash over unit vectors for near-neighbour queries at a fixed radius.
struct SpatialHash {
    cell: f64,
    map: std::collections::HashMap<(i64, i64, i64), Vec<usize>>,
}

impl SpatialHash {
    fn new(cell: f64) -> Self {
        Self {
            cell: cell.max(1e-12),
            map: std::collections::HashMap::new(),
        }
    }

    fn key(&self, u: &Vec3) -> (i64, i64, i64) {
        (
            (u.x / self.cell).floor() as i64,
            (u.y / self.cell).floor() as i64,
            (u.z / self.cell).floor() as i64,
        )
    }

    fn insert(&mut self, u: &Vec3, idx: usize) {
        self.map.entry(self.key(u)).or_default().push(idx);
    }

    fn near<'a>(
        &'a self,
        points: &'a [Vec3],
        u: &'a Vec3,
        radius: f64,
    ) -> impl Iterator<Item = usize> + 'a {
        let (kx, ky, kz) = self.key(u);
        (-1..=1).flat_map(move |dx| {
            (-1..=1).flat_map(move |dy| {
                (-1..=1).flat_map(move |dz| {
                    self.map
                        .get(&(kx + dx, ky + dy, kz + dz))
                        .into_iter()
                        .flatten()
                        .copied()
                        .filter(move |&i| (points[i] - u).norm() <= radius)
                })
            })
        })
    }
}

/// Single-linkage clusters at the given chaining radius via union-find over
/// a spatial hash.
fn chain_clusters(points: &[Vec3], radius: f64) -> Vec<Vec<usize>> {
    let mut hash = SpatialHash::new(radius);
    for (i, u) in points.iter().enumerate() {
        hash.insert(u, i);
    }
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, u) in points.iter().enumerate() {
        let neighbors: Vec<usize> = hash.near(points, u, radius).collect();
        for j in neighbors {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Largest coordinate-wise spread of a point set (within sqrt(3) of the
/// diameter, cheap to compute).
fn coordinate_extent(points: &[Vec3]) -> f64 {
    let mut lo = Vec3::from_element(f64::INFINITY);
    let mut hi = Vec3::from_element(f64::NEG_INFINITY);
    for u in points {
        for k in 0..3 {
            lo[k] = lo[k].min(u[k]);
            hi[k] = hi[k].max(u[k]);
        }
    }
    (0..3).map(|k| hi[k] - lo[k]).fold(0.0, f64::max)
}

fn fit_circle(points: &[Vec3]) -> Option<(Vec3, f64)> {
    let n = points.len() as f64;
    let mean = points.iter().fold(Vec3::zeros(), |a, b| a + b) / n;
    let mut cov = nalgebra::Matrix3::<f64>::zeros();
    for u in points {
        let d = u - mean;
        cov += d * d.transpose();
    }
    let se = cov.symmetric_eigen();
    let mut idx = 0;
    for k in 1..3 {
        if se.eigenvalues[k] < se.eigenvalues[idx] {
            idx = k;
        }
    }
    let mut axis: Vec3 = se.eigenvectors.column(idx).into();
    axis = axis.normalize();
    let offset = axis.dot(&mean);
    if offset < 0.0 {
        Some((-axis, -offset))
    } else {
        Some((axis, offset))
    }
}

fn plane_residual(points: &[Vec3], axis: &Vec3, offset: f64) -> f64 {
    points
        .iter()
        .map(|u| (axis.dot(u) - offset).abs())
        .fold(0.0, f64::max)
}

fn circle_kind(p: &Cubic3, axis: &Vec3, offset: f64) -> CircleKind {
    // transverse curvature at a sample point of the circle
    let circle = SphereCircle::from_plane(axis, offset, None);
    let u = SpherePoint3::new(circle.point(0.4).normalize()).unwrap();
    let th = p.tangent_hessian(&u);
    let (eigs, _) = th.eigen();
    // one eigenvalue ~ 0 along the circle; the other decides
    let transverse = if eigs[0].abs() > eigs[1].abs() {
        eigs[0]
    } else {
        eigs[1]
    };
    if transverse < -DEGENERACY_TOL {
        CircleKind::Max
    } else if transverse > DEGENERACY_TOL {
        CircleKind::Min
    } else {
        CircleKind::Other
    }
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// Result of the critical-point norm computation on S^2.
#[derive(Clone, Debug)]
pub struct NormS2 {
    pub value: f64,
    pub maxima: Vec<CriticalPoint>,
    pub max_circles: Vec<CriticalCircle>,
    pub census: CriticalSet,
    pub warning: Option<String>,
}

/// Norm of p on S^2 with all global maximizers; cross-validated against the
/// grid oracle at resolution 200.
pub fn norm_s2(p: &Cubic3) -> Result<NormS2> {
    norm_s2_with_starts(p, DEFAULT_STARTS)
}

pub fn norm_s2_with_starts(p: &Cubic3, starts: usize) -> Result<NormS2> {
    let census = critical_points_with_starts(p, starts)?;
    let mut value = f64::NEG_INFINITY;
    for cp in &census.points {
        value = value.max(cp.value);
    }
    for c in &census.circles {
        value = value.max(c.value);
    }
    let mut warning = census.warning.clone();
    // Cross-validation against the grid oracle.
    let resolution = 200;
    let oracle = brute_force_norm(p, resolution);
    let bound = brute_force_error_bound(p, resolution);
    if oracle > value + bound.max(1e-9) {
        warning = Some(format!(
            "census missed the global maximum: oracle {oracle} > critical max {value}"
        ));
        value = oracle;
    }
    let tol = 1e-9 * value.abs().max(1.0);
    Ok(NormS2 {
        value,
        maxima: census.maxima_at(value, tol),
        max_circles: census.circles_at(value, tol),
        census,
        warning,
    })
}

/// Maximum of p over a latitude-longitude grid with `resolution` points per
/// pi of arc.  Guaranteed within [`brute_force_error_bound`] of the true max.
pub fn brute_force_norm(p: &Cubic3, resolution: usize) -> f64 {
    let res = resolution.max(2);
    (0..=res)
        .into_par_iter()
        .map(|i| {
            let theta = PI * i as f64 / res as f64;
            let (st, ct) = theta.sin_cos();
            let mut best = f64::NEG_INFINITY;
            for j in 0..(2 * res) {
                let phi = -PI + PI * j as f64 / res as f64;
                let x = Vec3::new(st * phi.cos(), st * phi.sin(), ct);
                best = best.max(p.eval(&x));
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Error bound C / resolution^2 of the grid oracle, with
/// C = 9 (sum |c_ijk|) pi^2 / 4 from the Bernstein bound along great circles.
pub fn brute_force_error_bound(p: &Cubic3, resolution: usize) -> f64 {
    9.0 * p.coeff_abs_sum() * PI * PI / 4.0 / (resolution * resolution) as f64
}

/// Membership of a 3-variable cubic in the unit norm ball.
pub fn membership_s2(p: &Cubic3, tol: f64) -> Result<Membership> {
    let n = norm_s2(p)?;
    Ok(if n.value < 1.0 - tol {
        Membership::Inside
    } else if n.value <= 1.0 + tol {
        Membership::Boundary
    } else {
        Membership::Outside
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::poly::SpherePoint3;

    fn x1_cubed() -> Cubic3 {
        let mut c = [0.0; 10];
        c[0] = 1.0;
        Cubic3::new(c).unwrap()
    }

    #[test]
    fn face_profile_of_inner_cubic() {
        // x1^3 + x1 (x2^2 + x3^2): p12 = 1/3, Delta = 16/27
        let p = Cubic3::make_zonal(&SpherePoint3::e1(), 1.0, 0.0);
        let profile = face_profile(&p).unwrap();
        for k in 0..20 {
            let phi = k as f64 * 0.33;
            assert!((profile.p12(phi) - 1.0 / 3.0).abs() < 1e-14);
            assert!((profile.delta(phi) - 16.0 / 27.0).abs() < 1e-13);
        }
        assert_eq!(
            face_calf_membership(&p, 1e-9).unwrap(),
            CalFMembership::Member
        );
    }

    #[test]
    fn face_profile_of_x1_cubed() {
        let profile = face_profile(&x1_cubed()).unwrap();
        assert_eq!(profile.p12(0.7), 0.0);
        assert_eq!(profile.p03(0.7), 0.0);
        assert!((profile.delta(0.7) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn face_profile_of_case_b_zero() {
        // x1^3 - 3 x1 x2^2 + x3^3: Delta = 3 sin^4 cos^2
        let p = families::case_b(0.0, 0.0).unwrap();
        let profile = face_profile(&p).unwrap();
        for k in 0..30 {
            let phi = -3.0 + k as f64 * 0.21;
            let expected = 3.0 * phi.sin().powi(4) * phi.cos().powi(2);
            assert!(
                (profile.delta(phi) - expected).abs() < 1e-12,
                "phi {phi}: {} vs {expected}",
                profile.delta(phi)
            );
        }
        assert_eq!(
            face_calf_membership(&p, 1e-9).unwrap(),
            CalFMembership::BoundaryOfFace
        );
    }

    #[test]
    fn face_membership_rejects_large_p120() {
        // x1^3 + 3 x1 x2^2: p12(0) = 1 forces Delta(0) < 0
        let p = Cubic3::face_form(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            face_calf_membership(&p, 1e-9).unwrap(),
            CalFMembership::NotMember
        );
        assert!(face_profile(&p).unwrap().delta(0.0) < 0.0);
    }

    #[test]
    fn face_profile_requires_face_form() {
        let mut c = [0.0; 10];
        c[0] = 1.0;
        c[1] = 0.5;
        assert!(face_profile(&Cubic3::new(c).unwrap()).is_err());
    }

    #[test]
    fn census_of_x1_cubed_reports_continuum() {
        let set = critical_points_with_starts(&x1_cubed(), 4000).unwrap();
        // isolated points +-e1, plus the equatorial circle of degenerate zeros
        assert_eq!(set.circles.len(), 1, "circles: {:?}", set.circles);
        let c = set.circles[0];
        assert!(c.offset.abs() < 1e-6);
        assert!(c.value.abs() < 1e-10);
        let maxima: Vec<_> = set
            .points
            .iter()
            .filter(|p| p.morse == MorseType::Max)
            .collect();
        assert_eq!(maxima.len(), 1);
        assert!((maxima[0].location.coords() - Vec3::x()).norm() < 1e-9);
    }

    #[test]
    fn census_of_zonal_maximum_circle() {
        // x1^3 - 3 x1 (x2^2 + x3^2): maxima at e1 and on the circle x1 = -1/2
        let p = Cubic3::make_zonal(&SpherePoint3::e1(), -3.0, 4.0);
        let n = norm_s2_with_starts(&p, 4000).unwrap();
        assert!((n.value - 1.0).abs() < 1e-10);
        assert_eq!(n.max_circles.len(), 1);
        let c = n.max_circles[0];
        assert_eq!(c.kind, CircleKind::Max);
        assert!((c.axis.dot(&Vec3::x()).abs() - 1.0).abs() < 1e-8);
        assert!((c.offset - 0.5).abs() < 1e-8);
        assert_eq!(n.maxima.len(), 1);
        assert!((n.maxima[0].location.coords() - Vec3::x()).norm() < 1e-9);
    }

    #[test]
    fn norm_of_case_b_zero_has_four_maxima() {
        let p = families::case_b(0.0, 0.0).unwrap();
        let n = norm_s2_with_starts(&p, 4000).unwrap();
        assert!((n.value - 1.0).abs() < 1e-10);
        assert_eq!(n.maxima.len(), 4, "maxima {:?}", n.maxima);
        let expected = [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(-0.5, 3.0f64.sqrt() / 2.0, 0.0),
            Vec3::new(-0.5, -(3.0f64.sqrt()) / 2.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ];
        for e in expected {
            assert!(
                n.maxima
                    .iter()
                    .any(|m| (m.location.coords() - e).norm() < 1e-8),
                "missing maximum {e:?}"
            );
        }
    }

    #[test]
    fn homogeneity_of_norm() {
        let p = families::case_b(0.0, 0.0).unwrap().scale(3.0);
        let n = norm_s2_with_starts(&p, 2000).unwrap();
        assert!((n.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn brute_force_examples() {
        assert!((brute_force_norm(&x1_cubed(), 500) - 1.0).abs() < 1e-4);
        let flat = Cubic3::make_zonal(&SpherePoint3::e1(), 1.5, -0.5);
        assert!((brute_force_norm(&flat, 500) - 1.0).abs() < 1e-4);
        assert_eq!(brute_force_norm(&Cubic3::zero(), 100), 0.0);
    }

    #[test]
    fn antipodal_symmetry_of_census() {
        let p = families::case_b(0.3, 0.1).unwrap();
        let set = critical_points_with_starts(&p, 4000).unwrap();
        for cp in &set.points {
            let anti = -cp.location.coords();
            let partner = set
                .points
                .iter()
                .find(|q| (q.location.coords() - anti).norm() < 1e-6)
                .expect("antipode present");
            assert!((partner.value + cp.value).abs() < 1e-9);
            match cp.morse {
                MorseType::Max => assert_eq!(partner.morse, MorseType::Min),
                MorseType::Min => assert_eq!(partner.morse, MorseType::Max),
                MorseType::Saddle => assert_eq!(partner.morse, MorseType::Saddle),
            }
        }
    }

    #[test]
    fn morse_census_of_tetrahedral_cubic() {
        let g = crate::gramian::gram_central([0.25, 0.25, 0.25, 0.25]).unwrap();
        let pts = crate::gramian::points_from_gram(&g).unwrap();
        let q = crate::gramian::cubic_from_quadruple(&pts).unwrap();
        let set = critical_points_with_starts(&q.cubic, 4000).unwrap();
        let (ma, mi, sa) = set.counts();
        assert_eq!((ma, mi, sa), (4, 4, 6));
        assert!(set.warning.is_none());
    }

    #[test]
    fn degeneracy_typing_flat_double_triple() {
        // flat: x1^3 + (3/2) x1 (x2^2 + x3^2)
        let flat = Cubic3::make_zonal(&SpherePoint3::e1(), 1.5, -0.5);
        let info = maximum_degeneracy(&flat, &SpherePoint3::e1());
        assert_eq!(info.degeneracy, Degeneracy::Flat);

        // double: family-(f) cubic at xi = 0
        let f = families::case_f(0.0, 0.0).unwrap();
        let info = maximum_degeneracy(&f, &SpherePoint3::e1());
        assert_eq!(info.degeneracy, Degeneracy::Double);

        // triple: family-(e) cubic
        let e = families::case_e(0.0).unwrap();
        let info = maximum_degeneracy(&e, &SpherePoint3::e1());
        assert_eq!(info.degeneracy, Degeneracy::Triple);
        // the order-6 circle for p102 = 0 has curvature -1 in the probing family
        assert!((info.best_kappa + 1.0).abs() < 1e-6, "kappa {}", info.best_kappa);
    }

    #[test]
    fn quartic_coefficient_along_geodesic_is_three_eighths() {
        // both the (e) and (f) families have 1 - p = (3/8) t^4 along the
        // kernel geodesic at p102 = 0
        for p in [families::case_e(0.0).unwrap(), families::case_f(0.0, 0.0).unwrap()] {
            let c0 = quartic_coefficient(&p, &Vec3::x(), &Vec3::y(), 0.0);
            assert!((c0 - 0.375).abs() < 1e-10, "c0 {c0}");
        }
    }

    #[test]
    fn grid_oracle_within_stated_bound() {
        let p = families::case_b(0.2, 0.1).unwrap();
        let exact = 1.0;
        for res in [100, 200, 400] {
            let approx = brute_force_norm(&p, res);
            let bound = brute_force_error_bound(&p, res);
            assert!(approx <= exact + 1e-12);
            assert!(approx >= exact - bound, "res {res}");
        }
    }
}
