//! Global settings and input resolution: quivers, objects, morphisms.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use arcat::exactla::Fp;
use arcat::quiver::io::{
    morphism_from_json, named_object, parse_quiver, preset_quiver, rep_from_json, RepJson,
};
use arcat::quiver::{enumerate_indecomposables, InfiniteQuiverSpec, Morphism, Quiver, Rep};
use arcat::stable::projective_cover;
use arcat::{Error, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseSelector {
    /// All indecomposables of the quiver.
    Indecomposables,
    /// Indecomposables and all pairwise direct sums.
    Pairs,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Config {
    /// Prime p of the ground field F_p.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Largest number of elements any exhaustive enumeration may visit.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub cap: u64,
    /// First truncation window for infinite quivers.
    #[arg(long, global = true, default_value_t = 8)]
    pub truncate: usize,
    /// Last truncation window for infinite quivers.
    #[arg(long = "truncate-max", global = true, default_value_t = 12)]
    #[serde(rename = "truncateMax")]
    pub truncate_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = UniverseSelector::Indecomposables)]
    pub universe: UniverseSelector,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Config {
    pub fn validate(&self) -> Result<Fp> {
        if self.cap == 0 {
            return Err(Error::Precondition("--cap must be positive".into()));
        }
        if self.truncate_max < self.truncate {
            return Err(Error::Precondition(
                "--truncate-max is below --truncate".into(),
            ));
        }
        Fp::new(self.p)
    }

    /// `truncate, truncate + 2, …` up to `truncate-max`, always ending at `truncate-max`.
    pub fn windows(&self) -> Result<Vec<usize>> {
        let mut w: Vec<usize> = (self.truncate..=self.truncate_max).step_by(2).collect();
        if w.last() != Some(&self.truncate_max) {
            w.push(self.truncate_max);
        }
        if w.len() < 2 {
            return Err(Error::Precondition(
                "stabilization needs at least two windows; raise --truncate-max".into(),
            ));
        }
        Ok(w)
    }

    pub fn universe_of(&self, q: &Arc<Quiver>, f: Fp) -> Result<Vec<Rep>> {
        let u = enumerate_indecomposables(q, f)?;
        Ok(match self.universe {
            UniverseSelector::Indecomposables => u,
            UniverseSelector::Pairs => {
                let mut all = u.clone();
                for i in 0..u.len() {
                    for j in i..u.len() {
                        all.push(u[i].oplus(&u[j])?);
                    }
                }
                all
            }
        })
    }
}

/// A finite quiver, or an infinite one read through truncations.
#[derive(Clone, Debug)]
pub enum Source {
    Finite { name: String, quiver: Arc<Quiver> },
    Infinite(InfiniteQuiverSpec),
}

impl Source {
    /// A preset name (`A3`, `A4z`, `ainf-zigzag`) or a path to a quiver DSL file.
    pub fn resolve(name: &str) -> Result<Self> {
        if let Some(spec) = InfiniteQuiverSpec::from_name(name) {
            return Ok(Self::Infinite(spec));
        }
        if let Some(q) = preset_quiver(name) {
            return Ok(Self::Finite {
                name: name.into(),
                quiver: q,
            });
        }
        let text = read(Path::new(name))?;
        Ok(Self::Finite {
            name: name.into(),
            quiver: parse_quiver(&text)?,
        })
    }

    pub fn name(&self) -> String {
        match self {
            Self::Finite { name, .. } => name.clone(),
            Self::Infinite(spec) => spec.name().into(),
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct QuiverArg {
    /// Quiver preset or quiver DSL file.
    #[arg(long, alias = "preset")]
    pub quiver: String,
}

impl QuiverArg {
    pub fn source(&self) -> Result<Source> {
        Source::resolve(&self.quiver)
    }

    pub fn finite(&self, command: &str) -> Result<(String, Arc<Quiver>)> {
        match self.source()? {
            Source::Finite { name, quiver } => Ok((name, quiver)),
            Source::Infinite(spec) => Err(Error::Precondition(format!(
                "`{command}` needs a finite quiver, `{}` is infinite",
                spec.name()
            ))),
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// An object given by name (`S1`, `P4`, `[2,3]`), an inline JSON rep, or a JSON file.
pub fn object(q: &Arc<Quiver>, f: Fp, spec: &str) -> Result<Rep> {
    let s = spec.trim();
    if s.starts_with('{') {
        return arcat::quiver::io::parse_rep(q, f, s);
    }
    if Path::new(s).is_file() {
        return arcat::quiver::io::parse_rep(q, f, &read(Path::new(s))?);
    }
    named_object(q, f, s)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ObjectJson {
    Name(String),
    Rep(RepJson),
}

/// `{"source": obj, "target": obj, "comps": {vertex: matrix}}` with objects given by name or as reps.
#[derive(Clone, Debug, Deserialize)]
struct MorphismFile {
    source: ObjectJson,
    target: ObjectJson,
    #[serde(default)]
    comps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn object_json(q: &Arc<Quiver>, f: Fp, o: &ObjectJson) -> Result<Rep> {
    match o {
        ObjectJson::Name(n) => named_object(q, f, n),
        ObjectJson::Rep(r) => rep_from_json(q, f, r),
    }
}

/// Parses a morphism file's text.
pub fn parse_morphism(q: &Arc<Quiver>, f: Fp, text: &str) -> Result<Morphism> {
    let m: MorphismFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let s = object_json(q, f, &m.source)?;
    let t = object_json(q, f, &m.target)?;
    morphism_from_json(&s, &t, &arcat::quiver::io::MorphismJson { comps: m.comps })
}

/// Parses a JSON list of morphism components `[{vertex: matrix}, …]` from `source` to `target`.
pub fn parse_generators(source: &Rep, target: &Rep, text: &str) -> Result<Vec<Morphism>> {
    let gens: Vec<BTreeMap<String, Vec<Vec<i64>>>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    gens.into_iter()
        .map(|comps| morphism_from_json(source, target, &arcat::quiver::io::MorphismJson { comps }))
        .collect()
}

#[derive(Clone, Debug, Args)]
pub struct MorphismArg {
    /// Morphism JSON file: `{"source", "target", "comps"}`.
    #[arg(long, conflicts_with = "cover")]
    pub morphism: Option<String>,
    /// Use the projective cover of this object.
    #[arg(long)]
    pub cover: Option<String>,
}

impl MorphismArg {
    pub fn describe(&self) -> String {
        match (&self.morphism, &self.cover) {
            (Some(m), _) => format!("morphism from {m}"),
            (None, Some(c)) => format!("projective cover of {c}"),
            (None, None) => "none".into(),
        }
    }

    pub fn resolve(&self, q: &Arc<Quiver>, f: Fp) -> Result<Morphism> {
        match (&self.morphism, &self.cover) {
            (Some(m), _) => {
                let text = if m.trim_start().starts_with('{') {
                    m.clone()
                } else {
                    read(Path::new(m))?
                };
                parse_morphism(q, f, &text)
            }
            (None, Some(c)) => Ok(projective_cover(&object(q, f, c)?)?.map),
            (None, None) => Err(Error::Precondition(
                "give --morphism FILE or --cover OBJECT".into(),
            )),
        }
    }
}
