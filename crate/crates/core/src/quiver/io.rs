//! Text and JSON formats: the quiver DSL, representation files, object names.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::morphism::Morphism;
use super::quiver::{line_order, Quiver};
use super::rep::Rep;
use super::typea::interval_support;
use crate::error::{Error, Result};
use crate::exactla::{Fp, Matrix};

/// Parses `vertex 1 2 3` / `arrow a: 1 -> 2` lines; `#` starts a comment.
pub fn parse_quiver(text: &str) -> Result<Arc<Quiver>> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("vertex") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(err("expected `vertex <names>`"));
            }
            vertices.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("arrow") {
            let (name, ends) = rest
                .split_once(':')
                .ok_or_else(|| err("expected `arrow name: s -> t`"))?;
            let (s, t) = ends
                .split_once("->")
                .ok_or_else(|| err("expected `->` between endpoints"))?;
            let (name, s, t) = (name.trim(), s.trim(), t.trim());
            if name.is_empty() || s.is_empty() || t.is_empty() {
                return Err(err("empty arrow name or endpoint"));
            }
            arrows.push((name.to_string(), s.to_string(), t.to_string()));
        } else {
            return Err(err("unknown directive"));
        }
    }
    Quiver::new(&vertices, &arrows)
}

/// Named finite quivers: `A<n>` (linear) and `A<n>z` (alternating).
pub fn preset_quiver(name: &str) -> Option<Arc<Quiver>> {
    let rest = name.strip_prefix('A').or_else(|| name.strip_prefix('a'))?;
    let (digits, zig) = match rest.strip_suffix('z') {
        Some(d) => (d, true),
        None => (rest, false),
    };
    let n: usize = digits.parse().ok()?;
    if n == 0 {
        return None;
    }
    Some(if zig {
        Quiver::zigzag_a(n)
    } else {
        Quiver::linear_a(n)
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepJson {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismJson {
    pub comps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn matrix_json(m: &Matrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect()
}

pub fn rep_to_json(m: &Rep) -> RepJson {
    let q = m.quiver();
    RepJson {
        dims: q
            .vertices()
            .iter()
            .cloned()
            .zip(m.dims().iter().copied())
            .collect(),
        maps: q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| (arr.name.clone(), matrix_json(m.map(a))))
            .collect(),
    }
}

/// Builds a representation; missing dimensions are 0 and missing maps are zero matrices.
pub fn rep_from_json(q: &Arc<Quiver>, field: Fp, j: &RepJson) -> Result<Rep> {
    let mut dims = vec![0; q.num_vertices()];
    for (name, &d) in &j.dims {
        dims[q.vertex(name)?] = d;
    }
    for name in j.maps.keys() {
        q.arrow_id(name)?;
    }
    let mut maps = Vec::with_capacity(q.num_arrows());
    for arr in q.arrows() {
        let (r, c) = (dims[arr.target], dims[arr.source]);
        let m = match j.maps.get(&arr.name) {
            Some(rows) => {
                if rows.len() != r {
                    return Err(Error::DimensionMismatch(format!(
                        "arrow `{}` has {} rows, expected {r}",
                        arr.name,
                        rows.len()
                    )));
                }
                Matrix::from_rows(field, rows, c)?
            }
            None => Matrix::zeros(field, r, c),
        };
        maps.push(m);
    }
    Rep::new(q.clone(), field, dims, maps)
}

pub fn parse_rep(q: &Arc<Quiver>, field: Fp, text: &str) -> Result<Rep> {
    let j: RepJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    rep_from_json(q, field, &j)
}

pub fn morphism_to_json(f: &Morphism) -> MorphismJson {
    let q = f.source().quiver();
    MorphismJson {
        comps: q
            .vertices()
            .iter()
            .cloned()
            .zip(f.comps().iter().map(matrix_json))
            .collect(),
    }
}

pub fn morphism_from_json(source: &Rep, target: &Rep, j: &MorphismJson) -> Result<Morphism> {
    let q = source.quiver();
    let f = source.field();
    for name in j.comps.keys() {
        q.vertex(name)?;
    }
    let mut comps = Vec::with_capacity(q.num_vertices());
    for (v, name) in q.vertices().iter().enumerate() {
        let (r, c) = (target.dim_at(v), source.dim_at(v));
        comps.push(match j.comps.get(name) {
            Some(rows) if rows.len() == r => Matrix::from_rows(f, rows, c)?,
            Some(rows) => {
                return Err(Error::DimensionMismatch(format!(
                    "component at `{name}` has {} rows, expected {r}",
                    rows.len()
                )))
            }
            None => Matrix::zeros(f, r, c),
        });
    }
    Morphism::new(source.clone(), target.clone(), comps)
}

/// Resolves `S<v>`, `P<v>`, `I<v>` and, on line-shaped quivers, `[u,v]` interval names.
pub fn named_object(q: &Arc<Quiver>, field: Fp, name: &str) -> Result<Rep> {
    let name = name.trim();
    if let Some(inner) = name.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad interval `{name}`")))?;
        let order = line_order(q)?;
        let pos = |v: &str| -> Result<usize> {
            let id = q.vertex(v.trim())?;
            Ok(order.iter().position(|&x| x == id).expect("vertex on line"))
        };
        let (i, j) = (pos(a)?, pos(b)?);
        return super::typea::interval(q, field, i.min(j), i.max(j));
    }
    let mut chars = name.chars();
    let kind = chars
        .next()
        .ok_or_else(|| Error::Parse("empty object name".into()))?;
    let v = q.vertex(chars.as_str())?;
    match kind {
        'S' => Ok(Rep::simple(q, field, v)),
        'P' => Ok(Rep::projective(q, field, v)),
        'I' => Ok(Rep::injective(q, field, v)),
        _ => Err(Error::Parse(format!(
            "object `{name}` must be S<v>, P<v>, I<v> or [u,v]"
        ))),
    }
}

/// Short human label: `S1`, `P4`, `[2,3]` when recognizable, else the dimension vector.
pub fn describe(m: &Rep) -> String {
    let q = m.quiver();
    if m.is_zero() {
        return "0".into();
    }
    for v in 0..q.num_vertices() {
        if *m == Rep::simple(q, m.field(), v) {
            return format!("S{}", q.vertex_name(v));
        }
    }
    if let Some((a, b)) = interval_support(m) {
        if let Ok(order) = line_order(q) {
            let thin_iso = super::typea::interval(q, m.field(), a, b)
                .ok()
                .and_then(|iv| super::decompose::iso_indecomposable(&iv, m).ok())
                .unwrap_or(false);
            if thin_iso {
                return format!("[{},{}]", q.vertex_name(order[a]), q.vertex_name(order[b]));
            }
        }
    }
    let parts: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dsl_roundtrip() {
        let q = parse_quiver("# A2\nvertex 1 2\narrow a: 1 -> 2\n").unwrap();
        assert_eq!(q.num_arrows(), 1);
        assert_eq!(parse_quiver(&q.to_dsl()).unwrap().as_ref(), q.as_ref());
        assert!(parse_quiver("vertex 1\nedge x").is_err());
        assert!(parse_quiver("vertex 1 2\narrow a: 1 -> 3").is_err());
    }

    #[test]
    fn rep_json_roundtrip() {
        let f = Fp::new(3).unwrap();
        let q = preset_quiver("A3").unwrap();
        let p = Rep::projective(&q, f, 0);
        let j = serde_json::to_string(&rep_to_json(&p)).unwrap();
        assert_eq!(parse_rep(&q, f, &j).unwrap(), p);
        let reduced = parse_rep(&q, f, r#"{"dims":{"1":1,"2":1},"maps":{"a1":[[4]]}}"#).unwrap();
        assert_eq!(reduced.map(0).get(0, 0), 1);
    }

    #[test]
    fn names() {
        let f = Fp::new(2).unwrap();
        let q = preset_quiver("A3z").unwrap();
        assert_eq!(named_object(&q, f, "P1").unwrap().dims(), &[1, 1, 0]);
        assert_eq!(named_object(&q, f, "[2,3]").unwrap().dims(), &[0, 1, 1]);
        assert_eq!(describe(&named_object(&q, f, "I2").unwrap()), "[1,3]");
        assert!(named_object(&q, f, "X1").is_err());
    }
}
