//! JSON domain files and deterministic number formatting.
//!
//! A domain file is an object tagged by `type`:
//!
//! ```json
//! {"type": "raster", "h": 0.125, "origin": [0, 0], "mask": [[0, 0, 0], [0, 1, 0], [0, 0, 0]]}
//! {"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]], "h": 0.0078125}
//! {"type": "disk", "center": [0, 0], "radius": 1}
//! {"type": "square_fractal", "generations": 4}
//! {"type": "cube_fractal", "s": 0.333333333333333, "generations": 2}
//! ```
//!
//! Raster masks nest one array level per axis, outermost first. The optional
//! `h` on non-raster domains is the default grid spacing for commands that
//! need a raster.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::path::Path;

use crate::domain::Domain;
use crate::geometry::{ConvexBody, Disk, RasterDomain};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct DomainFile {
    pub domain: Domain,
    /// Suggested grid spacing for non-raster domains.
    pub h: Option<f64>,
}

fn bad(reason: impl Into<String>) -> Error {
    Error::InvalidDomain(reason.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("`{what}` must be a number")))
}

fn point2(v: &Value, what: &str) -> Result<[f64; 2]> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok([number(x, what)?, number(y, what)?]),
        _ => Err(bad(format!("`{what}` must be a pair of numbers"))),
    }
}

fn flatten_mask(v: &Value, depth: usize, shape: &mut Vec<usize>, out: &mut Vec<bool>) -> Result<()> {
    match v {
        Value::Array(items) => {
            if shape.len() == depth {
                shape.push(items.len());
            } else if shape[depth] != items.len() {
                return Err(bad("ragged `mask` array"));
            }
            items.iter().try_for_each(|item| flatten_mask(item, depth + 1, shape, out))
        }
        Value::Number(n) if shape.len() == depth => match n.as_u64() {
            Some(0) => {
                out.push(false);
                Ok(())
            }
            Some(1) => {
                out.push(true);
                Ok(())
            }
            _ => Err(bad("`mask` entries must be 0 or 1")),
        },
        Value::Bool(b) if shape.len() == depth => {
            out.push(*b);
            Ok(())
        }
        _ => Err(bad("`mask` must be a nested array of 0/1 entries")),
    }
}

fn nest_mask(mask: &[bool], shape: &[usize]) -> Value {
    if shape.len() == 1 {
        return Value::Array(mask.iter().map(|&b| json!(b as u8)).collect());
    }
    let chunk = mask.len() / shape[0];
    Value::Array(mask.chunks(chunk).map(|c| nest_mask(c, &shape[1..])).collect())
}

pub fn parse_domain(value: &Value) -> Result<DomainFile> {
    let obj = value.as_object().ok_or_else(|| bad("domain file must be a JSON object"))?;
    let kind = field(obj, "type")?.as_str().ok_or_else(|| bad("`type` must be a string"))?;
    let h = obj.get("h").map(|v| number(v, "h")).transpose()?;
    let generations = || -> Result<u32> {
        field(obj, "generations")?
            .as_u64()
            .and_then(|g| u32::try_from(g).ok())
            .ok_or_else(|| bad("`generations` must be a non-negative integer"))
    };
    let domain = match kind {
        "raster" => {
            let h = h.ok_or_else(|| bad("missing field `h`"))?;
            let mut shape = Vec::new();
            let mut mask = Vec::new();
            flatten_mask(field(obj, "mask")?, 0, &mut shape, &mut mask)?;
            let origin = match obj.get("origin") {
                Some(Value::Array(o)) => o.iter().map(|x| number(x, "origin")).collect::<Result<Vec<_>>>()?,
                Some(_) => return Err(bad("`origin` must be an array")),
                None => vec![0.0; shape.len()],
            };
            return Ok(DomainFile { domain: Domain::Raster(RasterDomain::new(h, origin, shape, mask)?), h: Some(h) });
        }
        "polygon" => {
            let vertices = field(obj, "vertices")?
                .as_array()
                .ok_or_else(|| bad("`vertices` must be an array"))?
                .iter()
                .map(|v| point2(v, "vertices"))
                .collect::<Result<Vec<_>>>()?;
            Domain::Polygon(ConvexBody::new(vertices)?)
        }
        "disk" => Domain::Disk(Disk::new(
            obj.get("center").map(|c| point2(c, "center")).transpose()?.unwrap_or([0.0, 0.0]),
            number(field(obj, "radius")?, "radius")?,
        )?),
        "square_fractal" | "snowflake" => Domain::Snowflake { generations: generations()? },
        "cube_fractal" => Domain::CubeFractal { s: number(field(obj, "s")?, "s")?, generations: generations()? },
        other => return Err(bad(format!("unknown domain type `{other}`"))),
    };
    Ok(DomainFile { domain, h })
}

pub fn domain_to_json(domain: &Domain, h: Option<f64>) -> Value {
    let mut v = match domain {
        Domain::Raster(r) => json!({
            "type": "raster",
            "h": r.h(),
            "origin": r.origin(),
            "mask": nest_mask(r.mask(), r.shape()),
        }),
        Domain::Polygon(p) => json!({"type": "polygon", "vertices": p.vertices()}),
        Domain::Disk(d) => json!({"type": "disk", "center": d.center, "radius": d.radius}),
        Domain::Snowflake { generations } => json!({"type": "square_fractal", "generations": generations}),
        Domain::CubeFractal { s, generations } => json!({"type": "cube_fractal", "s": s, "generations": generations}),
    };
    if let (Some(h), false) = (h, matches!(domain, Domain::Raster(_))) {
        v["h"] = json!(h);
    }
    round_json(v)
}

pub fn read_domain(path: &Path) -> Result<DomainFile> {
    let text = std::fs::read_to_string(path)?;
    parse_domain(&serde_json::from_str(&text)?)
}

/// `x` rounded to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree to 15 significant digits.
pub fn round_json(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => n.as_f64().map(|x| json!(round_sig(x))).unwrap_or(Value::Number(n)),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_json_string(value: &impl Serialize) -> Result<String> {
    let v = round_json(serde_json::to_value(value)?);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raster_round_trip() {
        let text = r#"{"type":"raster","h":0.5,"origin":[0,0],"mask":[[0,0,0,0],[0,1,1,0],[0,0,0,0]]}"#;
        let f = parse_domain(&serde_json::from_str(text).unwrap()).unwrap();
        let Domain::Raster(r) = &f.domain else { panic!("expected raster") };
        assert_eq!(r.shape(), &[3, 4]);
        assert_eq!(r.inside_count(), 2);
        let back = parse_domain(&domain_to_json(&f.domain, None)).unwrap();
        let Domain::Raster(r2) = back.domain else { panic!("expected raster") };
        assert_eq!(r2.mask(), r.mask());
    }

    #[test]
    fn other_types_and_errors() {
        let p: Value = serde_json::from_str(r#"{"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]],"h":0.25}"#).unwrap();
        let f = parse_domain(&p).unwrap();
        assert_eq!(f.h, Some(0.25));
        assert_eq!(f.domain.volume().unwrap(), 1.0);
        let d: Value = serde_json::from_str(r#"{"type":"disk","radius":2}"#).unwrap();
        assert_eq!(parse_domain(&d).unwrap().domain.dim(), 2);
        for bad_text in [
            r#"{"type":"raster","h":1,"mask":[[0,0],[0]]}"#,
            r#"{"type":"raster","h":1,"mask":[[0,2],[0,0]]}"#,
            r#"{"type":"triangle"}"#,
            r#"{"type":"disk"}"#,
            r#"[1,2]"#,
        ] {
            assert!(parse_domain(&serde_json::from_str(bad_text).unwrap()).is_err(), "{bad_text}");
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(round_json(json!([1, 0.1 + 0.2])), json!([1, 0.3]));
    }
}
