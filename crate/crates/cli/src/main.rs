//! Command-line interface: norms, face checks, family constructors,
//! classification, verification, censuses, Gramian recovery, contour grids
//! and parameter sweeps over stable JSON/CSV formats.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use extremal_cubics::circle;
use extremal_cubics::classify;
use extremal_cubics::families;
use extremal_cubics::gramian;
use extremal_cubics::jsonio::{self, AnyCubic};
use extremal_cubics::poly::{Cubic3, SpherePoint3, Vec3};
use extremal_cubics::sphere;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubics", version, about = "Norm balls of homogeneous cubics on S^1 and S^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Surface {
    S1,
    S2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaceKind {
    /// Face of boundary cubics on the circle, coordinates (p12, p03).
    F,
    /// 7-dimensional face of cubics maximal at e1 on the sphere.
    CalF,
    /// 3-dimensional face attached to three equally spaced maxima.
    F3,
    /// 4-dimensional face attached to a degenerate maximum.
    F4,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    ExtremalS1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GramMode {
    Central,
    Wing,
    CaseB,
    FromZ,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of a cubic over the chosen sphere.
    Norm {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        surface: Surface,
        /// Multistart seeds for the critical-point census (S^2 only).
        #[arg(long, default_value_t = sphere::DEFAULT_STARTS)]
        starts: usize,
    },
    /// Face membership tests for cubics in the documented normal forms.
    Check {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        face: FaceKind,
    },
    /// Construct a member of one of the extremal families.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated key=value parameters, e.g. p102=0.3,p012=0.1 or xi=0.7.
        #[arg(long, default_value = "")]
        params: String,
        /// Parameter of the S^1 extremal family.
        #[arg(long, allow_negative_numbers = true)]
        tau: Option<f64>,
    },
    /// Classify a boundary cubic into its canonical form.
    Classify {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        surface: Surface,
        #[arg(long, default_value_t = sphere::DEFAULT_STARTS)]
        starts: usize,
    },
    /// Full verification battery: membership, criticality, census, certificate.
    Verify {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = sphere::DEFAULT_STARTS)]
        starts: usize,
    },
    /// Critical-point census of a cubic on S^2.
    CriticalPoints {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = sphere::DEFAULT_STARTS)]
        starts: usize,
    },
    /// Build a Gramian of four prescribed maxima from barycentric data.
    Gram {
        #[arg(long, value_enum)]
        mode: GramMode,
        /// Comma-separated b parameters (4 for central, 3 for wing/case-b).
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        b: String,
        /// Comma-separated barycentric z (4 entries) for --mode from-z.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        z: String,
    },
    /// Recover the unique cubic with the prescribed Gramian of maxima.
    Recover {
        /// Gramian JSON file; stdin when omitted.
        #[arg(long)]
        gram: Option<String>,
        #[arg(long, default_value_t = sphere::DEFAULT_STARTS)]
        starts: usize,
    },
    /// Longitude-colatitude value grid as CSV for external plotting.
    Contour {
        #[arg(long)]
        input: String,
        #[arg(long)]
        resolution: usize,
        #[arg(long)]
        output: String,
    },
    /// Parameter sweep over a family with per-point verification.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
}

fn boundary_tol() -> f64 {
    std::env::var("CUBIC_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| *t > 0.0)
        .unwrap_or(1e-9)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return match e.kind() {
                DisplayHelp | DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load_cubic(path: &str) -> Result<AnyCubic, String> {
    let text = read_input(path)?;
    jsonio::cubic_from_json(&text).map_err(|e| e.to_string())
}

fn require_dim3(cubic: AnyCubic) -> Result<Cubic3, String> {
    match cubic {
        AnyCubic::Dim3(p) => Ok(p),
        AnyCubic::Dim2(_) => Err("expected a 3-variable cubic (dim 3)".into()),
    }
}

fn parse_params(text: &str) -> Result<std::collections::BTreeMap<String, f64>, String> {
    let mut out = std::collections::BTreeMap::new();
    for piece in text.split(',').filter(|s| !s.is_empty()) {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| format!("malformed parameter \"{piece}\" (expected key=value)"))?;
        let parsed: f64 = value
            .parse()
            .map_err(|_| format!("parameter \"{key}\" has a non-numeric value \"{value}\""))?;
        out.insert(key.trim().to_string(), parsed);
    }
    Ok(out)
}

fn parse_vector(text: &str, expected: usize, name: &str) -> Result<Vec<f64>, String> {
    let values: Result<Vec<f64>, _> = text
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let values =
        values.map_err(|_| format!("--{name} must be a comma-separated list of numbers"))?;
    if values.len() != expected {
        return Err(format!(
            "--{name} must have {expected} entries, got {}",
            values.len()
        ));
    }
    Ok(values)
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Norm {
            input,
            surface,
            starts,
        } => {
            let cubic = load_cubic(&input)?;
            let value = match (surface, cubic) {
                (Surface::S1, AnyCubic::Dim2(p)) => circle::norm_s1(&p).0,
                (Surface::S2, AnyCubic::Dim3(p)) => {
                    sphere::norm_s2_with_starts(&p, starts)
                        .map_err(|e| e.to_string())?
                        .value
                }
                _ => return Err("cubic dimension does not match the surface".into()),
            };
            println!("{value:?}");
            Ok(0)
        }
        Command::Check { input, face } => check_command(&input, face),
        Command::Construct {
            family,
            params,
            tau,
        } => {
            let params = parse_params(&params)?;
            let get = |key: &str| -> Result<f64, String> {
                params
                    .get(key)
                    .copied()
                    .ok_or_else(|| format!("family requires --params {key}=<value>"))
            };
            let json = match family {
                Family::A => jsonio::cubic3_to_json(&families::case_a()),
                Family::B => jsonio::cubic3_to_json(
                    &families::case_b(get("p102")?, get("p012")?).map_err(|e| e.to_string())?,
                ),
                Family::C => jsonio::cubic3_to_json(
                    &families::case_c(get("p102")?).map_err(|e| e.to_string())?,
                ),
                Family::D => jsonio::cubic3_to_json(&families::case_d()),
                Family::E => jsonio::cubic3_to_json(
                    &families::case_e(get("p102")?).map_err(|e| e.to_string())?,
                ),
                Family::F => jsonio::cubic3_to_json(
                    &families::case_f(get("p102")?, get("xi")?).map_err(|e| e.to_string())?,
                ),
                Family::ExtremalS1 => {
                    let tau = tau.ok_or("--family extremal-s1 requires --tau")?;
                    jsonio::cubic2_to_json(
                        &circle::extremal_poly(tau).map_err(|e| e.to_string())?,
                    )
                }
            };
            println!("{json}");
            Ok(0)
        }
        Command::Classify {
            input,
            surface,
            starts,
        } => classify_command(&input, surface, starts),
        Command::Verify { input, starts } => verify_command(&input, starts),
        Command::CriticalPoints { input, starts } => {
            let p = require_dim3(load_cubic(&input)?)?;
            let set =
                sphere::critical_points_with_starts(&p, starts).map_err(|e| e.to_string())?;
            if let Some(w) = &set.warning {
                eprintln!("warning: {w}");
            }
            println!("{}", jsonio::to_json_string(&jsonio::census_entries(&set)));
            Ok(0)
        }
        Command::Gram { mode, b, z } => {
            let gram = match mode {
                GramMode::Central => {
                    let v = parse_vector(&b, 4, "b")?;
                    gramian::gram_central([v[0], v[1], v[2], v[3]])
                }
                GramMode::Wing => {
                    let v = parse_vector(&b, 3, "b")?;
                    gramian::gram_wing([v[0], v[1], v[2]])
                }
                GramMode::CaseB => {
                    let v = parse_vector(&b, 3, "b")?;
                    gramian::gram_case_b([v[0], v[1], v[2]])
                }
                GramMode::FromZ => {
                    let v = parse_vector(&z, 4, "z")?;
                    let zv = gramian::BarycentricZ::new([v[0], v[1], v[2], v[3]])
                        .map_err(|e| e.to_string())?;
                    gramian::gram_from_z(&zv)
                }
            }
            .map_err(|e| e.to_string())?;
            println!(
                "{}",
                jsonio::to_json_string(&jsonio::gramian_to_schema(&gram))
            );
            Ok(0)
        }
        Command::Recover { gram, starts } => recover_command(gram.as_deref(), starts),
        Command::Contour {
            input,
            resolution,
            output,
        } => {
            let p = require_dim3(load_cubic(&input)?)?;
            let n = resolution.max(2);
            let mut csv = String::from("phi,theta,value\n");
            for i in 0..=n {
                let theta = std::f64::consts::PI * i as f64 / n as f64;
                let (st, ct) = theta.sin_cos();
                for j in 0..=(2 * n) {
                    let phi = -std::f64::consts::PI
                        + 2.0 * std::f64::consts::PI * j as f64 / (2 * n) as f64;
                    let x = Vec3::new(st * phi.cos(), st * phi.sin(), ct);
                    csv.push_str(&format!("{phi:.16e},{theta:.16e},{:.16e}\n", p.eval(&x)));
                }
            }
            std::fs::write(&output, csv).map_err(|e| format!("writing {output}: {e}"))?;
            Ok(0)
        }
        Command::Sweep { family, grid } => sweep_command(family, grid),
    }
}

fn check_command(input: &str, face: FaceKind) -> Result<u8, String> {
    let cubic = load_cubic(input)?;
    let tol = 1e-9;
    let json = match face {
        FaceKind::F => {
            let AnyCubic::Dim2(p) = cubic else {
                return Err("--face f expects a 2-variable cubic".into());
            };
            if (p.p30 - 1.0).abs() > tol || p.p21.abs() > tol {
                return Err("cubic is not in face form (p30 = 1, p21 = 0)".into());
            }
            let q = circle::FaceFPoint::new(p.p12, p.p03);
            #[derive(Serialize)]
            struct Out {
                face: &'static str,
                member: bool,
                lmi: bool,
                boundary_slack: f64,
            }
            jsonio::to_json_string(&Out {
                face: "F",
                member: circle::face_f_membership(&q),
                lmi: circle::face_f_lmi(&q),
                boundary_slack: q.boundary_slack(),
            })
        }
        FaceKind::CalF => {
            let p = require_dim3(cubic)?;
            let verdict =
                sphere::face_calf_membership(&p, boundary_tol()).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Out {
                face: &'static str,
                membership: sphere::CalFMembership,
            }
            jsonio::to_json_string(&Out {
                face: "calF",
                membership: verdict,
            })
        }
        FaceKind::F3 => {
            let p = require_dim3(cubic)?;
            if !p.is_face_form(tol)
                || (p.p120() + 1.0).abs() > tol
                || p.p111().abs() > tol
                || p.p030().abs() > tol
                || p.p021().abs() > tol
            {
                return Err(
                    "cubic is not in the three-maxima normal form (p120 = -1, p111 = p030 = p021 = 0)"
                        .into(),
                );
            }
            let verdict = families::face_f3_membership(
                &families::F3Point {
                    p102: p.p102(),
                    p012: p.p012(),
                    p003: p.p003(),
                },
                1e-9,
            );
            #[derive(Serialize)]
            struct Out {
                face: &'static str,
                region: families::FaceRegion,
                extremal: bool,
            }
            jsonio::to_json_string(&Out {
                face: "F3",
                region: verdict.region,
                extremal: verdict.extremal,
            })
        }
        FaceKind::F4 => {
            let p = require_dim3(cubic)?;
            if !p.is_face_form(tol)
                || (p.p120() - 0.5).abs() > tol
                || p.p111().abs() > tol
                || p.p030().abs() > tol
            {
                return Err(
                    "cubic is not in the degenerate-maximum normal form (p120 = 1/2, p111 = p030 = 0)"
                        .into(),
                );
            }
            let region = families::face_f4_membership(
                &families::F4Point {
                    p102: p.p102(),
                    p021: p.p021(),
                    p012: p.p012(),
                    p003: p.p003(),
                },
                1e-9,
            )
            .map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Out {
                face: &'static str,
                region: families::FaceRegion,
            }
            jsonio::to_json_string(&Out { face: "F4", region })
        }
    };
    println!("{json}");
    Ok(0)
}

#[derive(Serialize)]
struct S2ClassifyReport {
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    form: Option<families::CanonicalForm>,
    transform: [[f64; 3]; 3],
    residual: f64,
    verdict: classify::Verdict,
    candidates: Vec<(char, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_rank: Option<usize>,
}

fn classify_command(input: &str, surface: Surface, starts: usize) -> Result<u8, String> {
    let cubic = load_cubic(input)?;
    match (surface, cubic) {
        (Surface::S1, AnyCubic::Dim2(p)) => {
            let c = circle::classify_s1(&p, boundary_tol()).map_err(|e| e.to_string())?;
            println!("{}", jsonio::s1_classification_to_json(&c));
            Ok(0)
        }
        (Surface::S2, AnyCubic::Dim3(p)) => {
            let c = classify::classify_s2_with_starts(&p, boundary_tol().max(1e-7), starts)
                .map_err(|e| e.to_string())?;
            let report = S2ClassifyReport {
                form: c.form,
                transform: c.transform.rows(),
                residual: c.residual,
                verdict: c.verdict,
                candidates: c.candidates,
                certificate_rank: c.certificate.as_ref().map(|cert| cert.rank),
            };
            println!("{}", jsonio::to_json_string(&report));
            Ok(0)
        }
        _ => Err("cubic dimension does not match the surface".into()),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    norm: f64,
    boundary: bool,
    maxima: usize,
    max_circles: usize,
    criticality_ok: bool,
    census: (usize, usize, usize),
    morse_ok: bool,
    extremal: bool,
    certificate_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn verify_command(input: &str, starts: usize) -> Result<u8, String> {
    let p = require_dim3(load_cubic(input)?)?;
    let tol = boundary_tol();
    let n = sphere::norm_s2_with_starts(&p, starts).map_err(|e| e.to_string())?;
    let boundary = (n.value - 1.0).abs() <= tol.max(1e-9);
    let criticality_ok = n
        .maxima
        .iter()
        .all(|m| p.criticality_residual(&m.location.coords()) <= 1e-8);
    let counts = n.census.counts();
    let all_nondegenerate = n.census.circles.is_empty()
        && n.census
            .points
            .iter()
            .all(|cp| cp.degeneracy == sphere::Degeneracy::NonDegenerate);
    let morse_ok = if all_nondegenerate {
        counts.0 as isize - counts.2 as isize + counts.1 as isize == 2
    } else {
        true
    };
    let cert = gramian::extremality_certificate(&p, &n.maxima, &n.max_circles)
        .map_err(|e| e.to_string())?;
    let report = VerifyReport {
        norm: n.value,
        boundary,
        maxima: n.maxima.len(),
        max_circles: n.max_circles.len(),
        criticality_ok,
        census: counts,
        morse_ok,
        extremal: cert.extremal,
        certificate_rank: cert.rank,
        warning: n.warning.clone(),
    };
    println!("{}", jsonio::to_json_string(&report));
    let ok = boundary && criticality_ok && morse_ok && n.warning.is_none();
    Ok(if ok { 0 } else { 2 })
}

fn recover_command(gram: Option<&str>, starts: usize) -> Result<u8, String> {
    let text = match gram {
        Some(path) => read_input(path)?,
        None => read_input("-")?,
    };
    let (matrix, z) = jsonio::gramian_from_json(&text).map_err(|e| e.to_string())?;
    let gram = if z.iter().all(|v| *v == 0.0) {
        gramian::Gramian4::from_matrix(matrix)
    } else {
        gramian::Gramian4::new(matrix, z)
    }
    .map_err(|e| e.to_string())?;
    let points = gramian::points_from_gram(&gram).map_err(|e| e.to_string())?;
    let quad = gramian::cubic_from_quadruple(&points).map_err(|e| e.to_string())?;
    let census = sphere::critical_points_with_starts(&quad.cubic, starts)
        .map_err(|e| e.to_string())?;
    let (maxima, minima, saddles) = census.counts();
    #[derive(Serialize)]
    struct CensusCounts {
        maxima: usize,
        minima: usize,
        saddles: usize,
    }
    #[derive(Serialize)]
    struct Recovered {
        cubic: jsonio::CubicJson,
        points: [[f64; 3]; 4],
        census: CensusCounts,
    }
    let mut pts = [[0.0; 3]; 4];
    for (row, sp) in pts.iter_mut().zip(points.iter()) {
        let u = sp.coords();
        *row = [u.x, u.y, u.z];
    }
    let out = Recovered {
        cubic: jsonio::cubic3_to_schema(&quad.cubic),
        points: pts,
        census: CensusCounts {
            maxima,
            minima,
            saddles,
        },
    };
    println!("{}", jsonio::to_json_string(&out));
    Ok(0)
}

#[derive(Serialize)]
struct SweepReport {
    family: char,
    grid: usize,
    points: usize,
    passed: usize,
    failures: Vec<String>,
}

fn sweep_command(family: Family, grid: usize) -> Result<u8, String> {
    let grid = grid.max(1);
    let label = match family {
        Family::A => 'a',
        Family::B => 'b',
        Family::C => 'c',
        Family::D => 'd',
        Family::E => 'e',
        Family::F => 'f',
        Family::ExtremalS1 => return sweep_s1(grid),
    };
    let mut params: Vec<(f64, f64)> = Vec::new();
    match family {
        Family::A | Family::D => params.push((0.0, 0.0)),
        Family::B => {
            for i in 0..grid {
                let p102 = 0.02 + 0.46 * (i as f64 + 0.5) / grid as f64;
                for j in 0..grid {
                    let p012 = 3.0f64.sqrt() * p102 * (j as f64 + 0.5) / grid as f64;
                    params.push((p102, p012));
                }
            }
        }
        Family::C | Family::E => {
            for i in 0..grid {
                params.push((-0.98 + 1.46 * (i as f64 + 0.5) / grid as f64, 0.0));
            }
        }
        Family::F => {
            for i in 0..grid {
                let p102 = -0.98 + 1.46 * (i as f64 + 0.5) / grid as f64;
                for j in 0..grid {
                    let xi =
                        (std::f64::consts::FRAC_PI_2 - 1e-3) * (j as f64 + 0.5) / grid as f64;
                    params.push((p102, xi));
                }
            }
        }
        Family::ExtremalS1 => unreachable!(),
    }
    let failures: Vec<String> = params
        .par_iter()
        .filter_map(|&(a, b)| sweep_point(family, a, b).err())
        .collect();
    let report = SweepReport {
        family: label,
        grid,
        points: params.len(),
        passed: params.len() - failures.len(),
        failures: failures.iter().take(20).cloned().collect(),
    };
    println!("{}", jsonio::to_json_string(&report));
    Ok(if failures.is_empty() { 0 } else { 2 })
}

/// Construction-level verification of one family member: the claimed maxima
/// are critical with value 1 and the extremality certificate reaches full
/// rank.
fn sweep_point(family: Family, a: f64, b: f64) -> Result<(), String> {
    use extremal_cubics::sphere::{
        CircleKind, CriticalCircle, CriticalPoint, Degeneracy, MorseType,
    };
    let point = |u: Vec3, degeneracy: Degeneracy, p: &Cubic3| -> Result<CriticalPoint, String> {
        let value = p.eval(&u);
        if (value - 1.0).abs() > 1e-9 {
            return Err(format!("({a}, {b}): maximum value {value}"));
        }
        if p.criticality_residual(&u) > 1e-8 {
            return Err(format!("({a}, {b}): criticality residual too large"));
        }
        Ok(CriticalPoint {
            location: SpherePoint3::new(u.normalize()).map_err(|e| e.to_string())?,
            value,
            morse: MorseType::Max,
            degeneracy,
        })
    };
    let s3 = 3.0f64.sqrt() / 2.0;
    let (p, maxima, circles): (Cubic3, Vec<CriticalPoint>, Vec<CriticalCircle>) = match family {
        Family::A => {
            let p = families::case_a();
            let m = vec![point(Vec3::x(), Degeneracy::NonDegenerate, &p)?];
            let c = vec![CriticalCircle {
                axis: -Vec3::x(),
                offset: 0.5,
                value: 1.0,
                kind: CircleKind::Max,
            }];
            (p, m, c)
        }
        Family::B => {
            let p = families::case_b(a, b).map_err(|e| e.to_string())?;
            let fourth = families::fourth_maximum(a, b).map_err(|e| e.to_string())?;
            let m = vec![
                point(Vec3::x(), Degeneracy::NonDegenerate, &p)?,
                point(Vec3::new(-0.5, s3, 0.0), Degeneracy::NonDegenerate, &p)?,
                point(Vec3::new(-0.5, -s3, 0.0), Degeneracy::NonDegenerate, &p)?,
                point(fourth.coords(), Degeneracy::NonDegenerate, &p)?,
            ];
            (p, m, Vec::new())
        }
        Family::C => {
            let p = families::case_c(a).map_err(|e| e.to_string())?;
            let s = (2.0 - 2.0 * a).sqrt();
            let circle = vec![CriticalCircle {
                axis: families::case_c_axis(a).coords(),
                offset: 1.0 / s,
                value: 1.0,
                kind: CircleKind::Max,
            }];
            (p, Vec::new(), circle)
        }
        Family::D => {
            let p = families::case_d();
            let m = vec![point(Vec3::x(), Degeneracy::Flat, &p)?];
            (p, m, Vec::new())
        }
        Family::E => {
            let p = families::case_e(a).map_err(|e| e.to_string())?;
            let x = families::case_e_second_maximum(a).map_err(|e| e.to_string())?;
            let m = vec![
                point(Vec3::x(), Degeneracy::Triple, &p)?,
                point(x.coords(), Degeneracy::NonDegenerate, &p)?,
            ];
            (p, m, Vec::new())
        }
        Family::F => {
            let p = families::case_f(a, b).map_err(|e| e.to_string())?;
            let (xp, xm) = families::nondeg_maxima(a, b).map_err(|e| e.to_string())?;
            let m = vec![
                point(Vec3::x(), Degeneracy::Double, &p)?,
                point(xp.coords(), Degeneracy::NonDegenerate, &p)?,
                point(xm.coords(), Degeneracy::NonDegenerate, &p)?,
            ];
            (p, m, Vec::new())
        }
        Family::ExtremalS1 => unreachable!(),
    };
    let cert =
        gramian::extremality_certificate(&p, &maxima, &circles).map_err(|e| e.to_string())?;
    if cert.rank != 10 {
        return Err(format!("({a}, {b}): certificate rank {}", cert.rank));
    }
    Ok(())
}

fn sweep_s1(grid: usize) -> Result<u8, String> {
    let half = circle::SQRT3_HALF;
    let failures: Vec<String> = (0..grid)
        .into_par_iter()
        .filter_map(|i| {
            let tau = -half + 2.0 * half * (i as f64 + 0.5) / grid as f64;
            let p = match circle::extremal_poly(tau) {
                Ok(p) => p,
                Err(e) => return Some(format!("tau {tau}: {e}")),
            };
            let (value, _) = circle::norm_s1(&p);
            if (value - 1.0).abs() > 1e-9 {
                Some(format!("tau {tau}: norm {value}"))
            } else {
                None
            }
        })
        .collect();
    let report = SweepReport {
        family: 's',
        grid,
        points: grid,
        passed: grid - failures.len(),
        failures: failures.iter().take(20).cloned().collect(),
    };
    println!("{}", jsonio::to_json_string(&report));
    Ok(if failures.is_empty() { 0 } else { 2 })
}
