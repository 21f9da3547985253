//! Named verification suites; each returns a deterministic report for a fixed configuration.

mod duality;
mod lemmas;
mod sweeps;

use std::sync::Arc;

use arcat::exactla::{random_vector, Fp};
use arcat::quiver::io::{describe, morphism_to_json, preset_quiver, rep_to_json};
use arcat::quiver::{enumerate_indecomposables, HomSpace, Morphism, Quiver, Rep};
use arcat::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub use duality::{pairing_nondegeneracy, quasi_inverse};
pub use lemmas::{
    lemma_arb, lemma_det_pb, lemma_det_stable, lemma_factor, lemma_ft_stable, prop_det, prop_ras,
};
pub use sweeps::{
    ass_a2, euler_form, radical_oracle, theorem_c, thm_exist_sweep, type_a_sweep, zigzag_fixture,
};

/// Parameters shared by all suites.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub p: u32,
    /// Primes for suites that sweep several fields; empty means the suite's default.
    pub primes: Vec<u32>,
    pub cap: u64,
    pub seed: u64,
    /// Quiver presets to run on; empty means the suite's default.
    pub quivers: Vec<String>,
    /// Sample count override for randomized suites.
    pub samples: Option<usize>,
    /// Truncation windows for the infinite-quiver suite.
    pub windows: Vec<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            p: 2,
            primes: Vec::new(),
            cap: 1 << 16,
            seed: 0,
            quivers: Vec::new(),
            samples: None,
            windows: vec![8, 10, 12],
        }
    }
}

impl SuiteConfig {
    pub fn field(&self) -> Result<Fp> {
        Fp::new(self.p)
    }

    pub fn quivers_or(&self, default: &[&str]) -> Result<Vec<(String, Arc<Quiver>)>> {
        let names: Vec<String> = if self.quivers.is_empty() {
            default.iter().map(|s| s.to_string()).collect()
        } else {
            self.quivers.clone()
        };
        names
            .into_iter()
            .map(|n| {
                preset_quiver(&n)
                    .map(|q| (n.clone(), q))
                    .ok_or_else(|| Error::Parse(format!("unknown quiver preset `{n}`")))
            })
            .collect()
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub cases: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub details: Value,
}

impl SuiteResult {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            pass: true,
            cases: 0,
            notes: Vec::new(),
            counterexample: None,
            details: Value::Null,
        }
    }

    /// Records one case; the first failure keeps its counterexample.
    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            if self.pass {
                self.counterexample = Some(counterexample());
            }
            self.pass = false;
        }
    }
}

pub const SUITES: &[&str] = &[
    "ass-a2",
    "type-a-sweep",
    "pairing-nondegeneracy",
    "quasi-inverse",
    "thm-exist-sweep",
    "theorem-c",
    "radical-oracle",
    "euler-form",
    "zigzag-fixture",
    "lemma-factor",
    "lemma-arb",
    "lemma-ft-stable",
    "lemma-det-stable",
    "lemma-det-pb",
    "prop-ras",
    "prop-det",
];

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteResult> {
    match name {
        "ass-a2" => ass_a2(cfg),
        "type-a-sweep" => type_a_sweep(cfg),
        "pairing-nondegeneracy" | "lemma31-nondegeneracy" => pairing_nondegeneracy(cfg),
        "quasi-inverse" => quasi_inverse(cfg),
        "thm-exist-sweep" => thm_exist_sweep(cfg),
        "theorem-c" => theorem_c(cfg),
        "radical-oracle" => radical_oracle(cfg),
        "euler-form" => euler_form(cfg),
        "zigzag-fixture" | "paper-5-2" => zigzag_fixture(cfg),
        "lemma-factor" => lemma_factor(cfg),
        "lemma-arb" => lemma_arb(cfg),
        "lemma-ft-stable" => lemma_ft_stable(cfg),
        "lemma-det-stable" => lemma_det_stable(cfg),
        "lemma-det-pb" => lemma_det_pb(cfg),
        "prop-ras" => prop_ras(cfg),
        "prop-det" => prop_det(cfg),
        _ => Err(Error::Parse(format!(
            "unknown suite `{name}`; known suites: {}",
            SUITES.join(", ")
        ))),
    }
}

fn rep_value(m: &Rep) -> Value {
    json!({ "label": describe(m), "rep": rep_to_json(m) })
}

fn morphism_value(f: &Morphism) -> Value {
    json!({
        "source": rep_value(f.source()),
        "target": rep_value(f.target()),
        "comps": morphism_to_json(f).comps,
    })
}

fn universe(q: &Arc<Quiver>, f: Fp) -> Result<Vec<Rep>> {
    enumerate_indecomposables(q, f)
}

fn random_in(hs: &HomSpace, rng: &mut ChaCha8Rng) -> Morphism {
    let f = hs.source().field();
    hs.combine(&random_vector(f, hs.dim(), rng))
}

/// A universe member, or a direct sum of two.
fn random_object(u: &[Rep], rng: &mut ChaCha8Rng) -> Result<Rep> {
    let a = &u[rng.gen_range(0..u.len())];
    if rng.gen_bool(0.5) {
        Ok(a.clone())
    } else {
        a.oplus(&u[rng.gen_range(0..u.len())])
    }
}
