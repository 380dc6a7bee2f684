//! Stable JSON schemas for cubics, Gramians, classifications and censuses.
//!
//! Cubic schema: {"dim": 2|3, "coeffs": {"<exponents>": coefficient, ...}}
//! with keys like "300" or "21"; missing keys mean zero; exponents must sum
//! to 3.  Floats are written with 17 significant digits so outputs are
//! byte-identical across runs and round-trip exactly.

use crate::circle::S1Classification;
use crate::error::{Error, Result};
use crate::gramian::Gramian4;
use crate::poly::{Cubic2, Cubic3, MONOMIALS3};
use crate::sphere::{CriticalCircle, CriticalPoint, CriticalSet};
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::io::Write;

/// serde_json formatter writing every float with 17 significant digits.
struct FixedFloatFormatter;

impl serde_json::ser::Formatter for FixedFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any value with the deterministic float format.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloatFormatter);
    value
        .serialize(&mut ser)
        .expect("serialization cannot fail for plain data");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicJson {
    pub dim: u8,
    pub coeffs: BTreeMap<String, f64>,
}

pub fn cubic3_to_schema(p: &Cubic3) -> CubicJson {
    let mut coeffs = BTreeMap::new();
    for (pos, &(i, j, k)) in MONOMIALS3.iter().enumerate() {
        let c = p.coeffs()[pos];
        if c != 0.0 {
            coeffs.insert(format!("{i}{j}{k}"), c);
        }
    }
    CubicJson { dim: 3, coeffs }
}

pub fn cubic2_to_schema(p: &Cubic2) -> CubicJson {
    let mono = p.monomial_coeffs();
    let mut coeffs = BTreeMap::new();
    for (idx, key) in ["30", "21", "12", "03"].iter().enumerate() {
        if mono[idx] != 0.0 {
            coeffs.insert((*key).to_string(), mono[idx]);
        }
    }
    CubicJson { dim: 2, coeffs }
}

pub fn cubic3_to_json(p: &Cubic3) -> String {
    to_json_string(&cubic3_to_schema(p))
}

pub fn cubic2_to_json(p: &Cubic2) -> String {
    to_json_string(&cubic2_to_schema(p))
}

#[derive(Clone, Debug)]
pub enum AnyCubic {
    Dim2(Cubic2),
    Dim3(Cubic3),
}

/// Parses the cubic schema, rejecting malformed keys with a message naming
/// the offending key.
pub fn cubic_from_json(text: &str) -> Result<AnyCubic> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::MalformedJson {
        reason: e.to_string(),
    })?;
    cubic_from_value(&value)
}

pub fn cubic_from_value(value: &Value) -> Result<AnyCubic> {
    let obj = value.as_object().ok_or_else(|| Error::MalformedJson {
        reason: "top level must be an object".into(),
    })?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::MalformedJson {
            reason: "missing integer field \"dim\"".into(),
        })?;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::MalformedJson {
            reason: "missing object field \"coeffs\"".into(),
        })?;
    match dim {
        2 => {
            let mut mono = [0.0; 4];
            for (key, v) in coeffs {
                let value = v.as_f64().ok_or_else(|| Error::MalformedJson {
                    reason: format!("coefficient \"{key}\" is not a number"),
                })?;
                let idx = parse_key2(key)?;
                mono[idx] = value;
            }
            Ok(AnyCubic::Dim2(Cubic2::from_monomial(mono)?))
        }
        3 => {
            let mut c = [0.0; 10];
            for (key, v) in coeffs {
                let value = v.as_f64().ok_or_else(|| Error::MalformedJson {
                    reason: format!("coefficient \"{key}\" is not a number"),
                })?;
                let idx = parse_key3(key)?;
                c[idx] = value;
            }
            Ok(AnyCubic::Dim3(Cubic3::new(c)?))
        }
        other => Err(Error::MalformedJson {
            reason: format!("\"dim\" must be 2 or 3, got {other}"),
        }),
    }
}

fn parse_key2(key: &str) -> Result<usize> {
    let bad = || Error::MalformedJson {
        reason: format!("malformed coefficient key \"{key}\" (expected two digits summing to 3)"),
    };
    let bytes = key.as_bytes();
    if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_digit) {
        return Err(bad());
    }
    let (i, j) = ((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize);
    if i + j != 3 {
        return Err(bad());
    }
    // storage order 30, 21, 12, 03
    Ok(3 - i)
}

fn parse_key3(key: &str) -> Result<usize> {
    let bad = || Error::MalformedJson {
        reason: format!(
            "malformed coefficient key \"{key}\" (expected three digits summing to 3)"
        ),
    };
    let bytes = key.as_bytes();
    if bytes.len() != 3 || !bytes.iter().all(u8::is_ascii_digit) {
        return Err(bad());
    }
    let triple = (bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0');
    if triple.0 + triple.1 + triple.2 != 3 {
        return Err(bad());
    }
    MONOMIALS3
        .iter()
        .position(|&m| m == triple)
        .ok_or_else(bad)
}

// ---------------------------------------------------------------------------
// Structured outputs
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct GramianJson {
    pub matrix: [[f64; 4]; 4],
    pub z: [f64; 4],
}

pub fn gramian_to_schema(g: &Gramian4) -> GramianJson {
    let mut matrix = [[0.0; 4]; 4];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = g.matrix()[(i, j)];
        }
    }
    GramianJson {
        matrix,
        z: g.kernel(),
    }
}

pub fn gramian_from_json(text: &str) -> Result<(nalgebra::Matrix4<f64>, [f64; 4])> {
    #[derive(serde::Deserialize)]
    struct Raw {
        matrix: [[f64; 4]; 4],
        #[serde(default)]
        z: Option<[f64; 4]>,
    }
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::MalformedJson {
        reason: e.to_string(),
    })?;
    let mut m = nalgebra::Matrix4::zeros();
    for (i, row) in raw.matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    let z = raw.z.unwrap_or([0.0; 4]);
    Ok((m, z))
}

/// Census entries: tagged union of isolated points and critical circles.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CensusEntry {
    Point {
        location: [f64; 3],
        value: f64,
        morse: crate::sphere::MorseType,
        degeneracy: crate::sphere::Degeneracy,
    },
    Circle {
        axis: [f64; 3],
        offset: f64,
        value: f64,
        kind: crate::sphere::CircleKind,
    },
}

pub fn census_entries(set: &CriticalSet) -> Vec<CensusEntry> {
    let mut entries: Vec<CensusEntry> = set.points.iter().map(point_entry).collect();
    entries.extend(set.circles.iter().map(circle_entry));
    entries
}

fn point_entry(p: &CriticalPoint) -> CensusEntry {
    let u = p.location.coords();
    CensusEntry::Point {
        location: [u.x, u.y, u.z],
        value: p.value,
        morse: p.morse,
        degeneracy: p.degeneracy,
    }
}

fn circle_entry(c: &CriticalCircle) -> CensusEntry {
    CensusEntry::Circle {
        axis: [c.axis.x, c.axis.y, c.axis.z],
        offset: c.offset,
        value: c.value,
        kind: c.kind,
    }
}

pub fn s1_classification_to_json(c: &S1Classification) -> String {
    to_json_string(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic3_round_trip() {
        let p = Cubic3::new([1.0, 0.0, 0.5, -3.0, 0.25, 0.0, 0.0, 1.5, 0.0, 1.0]).unwrap();
        let text = cubic3_to_json(&p);
        match cubic_from_json(&text).unwrap() {
            AnyCubic::Dim3(q) => assert!(p.coeff_distance(&q) < 1e-16),
            _ => panic!("wrong dimension"),
        }
    }

    #[test]
    fn cubic2_round_trip() {
        let p = Cubic2::new(1.0, -0.25, 0.5, 2.0).unwrap();
        let text = cubic2_to_json(&p);
        match cubic_from_json(&text).unwrap() {
            AnyCubic::Dim2(q) => assert!(p.coeff_distance(&q) < 1e-15),
            _ => panic!("wrong dimension"),
        }
    }

    #[test]
    fn malformed_keys_are_named() {
        let text = r#"{"dim": 3, "coeffs": {"310": 1.0}}"#;
        let err = cubic_from_json(text).unwrap_err();
        assert!(err.to_string().contains("310"), "message: {err}");
        let text2 = r#"{"dim": 3, "coeffs": {"ab1": 1.0}}"#;
        assert!(cubic_from_json(text2).unwrap_err().to_string().contains("ab1"));
        let text3 = r#"{"dim": 2, "coeffs": {"300": 1.0}}"#;
        assert!(cubic_from_json(text3).is_err());
    }

    #[test]
    fn missing_keys_mean_zero() {
        let text = r#"{"dim": 3, "coeffs": {"300": 1.0}}"#;
        match cubic_from_json(text).unwrap() {
            AnyCubic::Dim3(q) => {
                assert_eq!(q.coeff(3, 0, 0), 1.0);
                assert_eq!(q.coeff(0, 0, 3), 0.0);
            }
            _ => panic!("wrong dimension"),
        }
    }

    #[test]
    fn float_format_is_deterministic_and_exact() {
        let p = Cubic3::new([
            1.0 / 3.0,
            0.1,
            -0.7,
            2.0f64.sqrt(),
            0.0,
            -1e-13,
            5.0e10,
            0.25,
            std::f64::consts::PI,
            -0.625,
        ])
        .unwrap();
        let a = cubic3_to_json(&p);
        let b = cubic3_to_json(&p);
        assert_eq!(a, b);
        match cubic_from_json(&a).unwrap() {
            AnyCubic::Dim3(q) => {
                for (x, y) in p.coeffs().iter().zip(q.coeffs().iter()) {
                    assert_eq!(x.to_bits(), y.to_bits(), "{x} vs {y}");
                }
            }
            _ => panic!("wrong dimension"),
        }
    }
}
