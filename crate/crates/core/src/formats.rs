//! JSON file and report formats.
//!
//! Output is canonical: object keys sorted, no insignificant whitespace and
//! rationals in reduced `n` / `n/d` form, so equal values serialize to
//! identical bytes.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::configs::{LabeledPoint, PointConfig, SimplexPair};
use crate::crossing::{CrossingCount, CrossingWitness, ExtensionReport};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::gale::{GaleDiagram, LabeledVector, LinearSeparation};
use crate::separations::{HamSandwichCut, HamSandwichInstance, Lemma4Case, ScheduleTrace};

pub fn canonical(value: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string(value).expect("serializing a Value cannot fail")
}

fn rats(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn parse_rats(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    label: String,
    coords: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    dimension: usize,
    points: Vec<Entry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    m: usize,
    source_d: usize,
    vectors: Vec<Entry>,
}

pub fn point_config_to_json(p: &PointConfig) -> Value {
    json!({
        "dimension": p.dimension(),
        "points": p.points().iter().map(|q| json!({
            "label": q.label,
            "coords": rats(&q.coords),
        })).collect::<Vec<_>>(),
    })
}

pub fn point_config_from_str(text: &str) -> Result<PointConfig> {
    let f: PointFile = serde_json::from_str(text)?;
    let points = f
        .points
        .into_iter()
        .map(|e| {
            Ok(LabeledPoint {
                label: e.label,
                coords: parse_rats(&e.coords)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(f.dimension, points)
}

pub fn diagram_to_json(g: &GaleDiagram) -> Value {
    json!({
        "m": g.m(),
        "source_d": g.source_d(),
        "vectors": g.vectors().iter().map(|v| json!({
            "label": v.label,
            "coords": rats(&v.coords),
        })).collect::<Vec<_>>(),
    })
}

pub fn diagram_from_str(text: &str) -> Result<GaleDiagram> {
    let f: DiagramFile = serde_json::from_str(text)?;
    let vectors = f
        .vectors
        .into_iter()
        .map(|e| {
            Ok(LabeledVector {
                label: e.label,
                coords: parse_rats(&e.coords)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GaleDiagram::new(f.m, f.source_d, vectors)
}

/// Either input file kind, recognized by its keys.
pub enum InputFile {
    Points(PointConfig),
    Diagram(GaleDiagram),
}

pub fn read_input(text: &str) -> Result<InputFile> {
    let v: Value = serde_json::from_str(text)?;
    if v.get("points").is_some() {
        Ok(InputFile::Points(point_config_from_str(text)?))
    } else if v.get("vectors").is_some() {
        Ok(InputFile::Diagram(diagram_from_str(text)?))
    } else {
        Err(Error::Parse("neither a point file nor a diagram file".into()))
    }
}

/// Re-serializes a point file canonically.
pub fn normalize_point_file(text: &str) -> Result<String> {
    Ok(canonical(&point_config_to_json(&point_config_from_str(text)?)))
}

pub fn pair_to_json(p: &SimplexPair) -> Value {
    json!({ "left": p.left, "right": p.right })
}

pub fn witness_to_json(w: &CrossingWitness) -> Value {
    json!({
        "pair": pair_to_json(&w.pair),
        "point": rats(&w.point),
        "left_coeffs": rats(&w.left_coeffs),
        "right_coeffs": rats(&w.right_coeffs),
    })
}

pub fn count_to_json(c: &CrossingCount, retained: bool) -> Value {
    let mut v = json!({
        "config_id": c.config_id,
        "part_sizes": [c.part_sizes.0, c.part_sizes.1],
        "total_pairs_checked": c.total_pairs_checked,
        "crossing_pairs": c.crossing_pairs,
    });
    if retained {
        v["witnesses"] = c.witnesses.iter().map(witness_to_json).collect();
    }
    v
}

pub fn extension_to_json(r: &ExtensionReport) -> Value {
    json!({
        "base": pair_to_json(&r.base),
        "target": r.target,
        "spares": r.spares,
        "distributions_checked": r.distributions_checked,
        "crossing": r.crossing.iter().map(witness_to_json).collect::<Vec<_>>(),
        "non_crossing": r.non_crossing.iter().map(pair_to_json).collect::<Vec<_>>(),
    })
}

pub fn separation_to_json(s: &LinearSeparation) -> Value {
    let mut v = json!({
        "side_a": s.side_a,
        "side_b": s.side_b,
        "witness_normal": rats(&s.witness_normal),
    });
    if let Some(r) = &s.rotation {
        v["rotation"] = json!({
            "plane_normal": rats(&r.plane_normal),
            "on_plane": r.on_plane.iter().map(|(l, a)| json!({
                "label": l,
                "side": if *a { "a" } else { "b" },
            })).collect::<Vec<_>>(),
        });
    }
    v
}

pub fn instance_to_json(i: &HamSandwichInstance) -> Value {
    json!({
        "ambient": i.ambient,
        "c1": i.c1,
        "c2": i.c2,
        "c3_origin": i.c3_origin,
    })
}

pub fn cut_to_json(c: &HamSandwichCut) -> Value {
    json!({
        "separation": separation_to_json(&c.separation),
        "fallback": c.fallback,
    })
}

pub fn trace_to_json(t: &ScheduleTrace) -> Value {
    let pairs = |v: &[(String, String)]| -> Value {
        v.iter().map(|(a, b)| json!([a, b])).collect()
    };
    json!({
        "case_taken": match t.case_taken {
            Some(Lemma4Case::AllSplit) => json!("case_i"),
            Some(Lemma4Case::SomeTogether) => json!("case_ii"),
            None => Value::Null,
        },
        "separation_count": t.len(),
        "steps": t.steps.iter().map(|s| json!({
            "coloring": instance_to_json(&s.coloring),
            "separation": separation_to_json(&s.separation),
            "newly_separated_pairs": pairs(&s.newly_separated_pairs),
            "distinct_from": pairs(&s.distinct_from),
            "fallback": s.fallback,
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{moment_curve_config, random_config};
    use crate::gale::gale_transform;

    #[test]
    fn point_file_shape() {
        let p = PointConfig::from_i64(2, &[&[0, -1], &[3, 4]]).unwrap();
        assert_eq!(
            canonical(&point_config_to_json(&p)),
            r#"{"dimension":2,"points":[{"coords":["0","-1"],"label":"p1"},{"coords":["3","4"],"label":"p2"}]}"#
        );
    }

    #[test]
    fn point_file_round_trip_is_byte_exact() {
        let p = random_config(7, 3, 11, 50).unwrap();
        let text = canonical(&point_config_to_json(&p));
        assert_eq!(point_config_from_str(&text).unwrap(), p);
        assert_eq!(normalize_point_file(&text).unwrap(), text);
        let loose = text.replace(',', ", ").replace(":", " : ");
        assert_eq!(normalize_point_file(&loose).unwrap(), text);
    }

    #[test]
    fn diagram_round_trip() {
        let g = gale_transform(&moment_curve_config(7, 3)).unwrap();
        let text = canonical(&diagram_to_json(&g));
        assert_eq!(diagram_from_str(&text).unwrap(), g);
        assert!(matches!(read_input(&text).unwrap(), InputFile::Diagram(_)));
    }

    #[test]
    fn bad_files() {
        assert!(point_config_from_str(r#"{"dimension":1,"points":[{"label":"a","coords":["1/0"]}]}"#).is_err());
        assert!(point_config_from_str(r#"{"dimension":2,"points":[{"label":"a","coords":["1"]}]}"#).is_err());
        assert!(point_config_from_str(r#"{"dimension":1,"points":[],"extra":1}"#).is_err());
        assert!(read_input("[]").is_err());
    }
}
