use std::sync::Arc;

use arcat::determiners::{
    almost_factors_through, is_right_almost_split, is_right_determined, is_right_determined_stable,
    kernel, right_determiner_from_kernel,
};
use arcat::exactla::{random_vector, Fp, Scalar, Subspace};
use arcat::ext::{pullback_triangle, realize, ExtSpace, STriangle};
use arcat::quiver::{
    factor_through, factor_through_left, hom, is_indecomposable, is_retraction, is_section, Quiver,
    Rep,
};
use arcat::stable::{projective_cover, sproj_ideal};
use arcat::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{
    morphism_value, random_in, random_object, rep_value, universe, SuiteConfig, SuiteResult,
};

struct Fixture {
    name: String,
    universe: Vec<Rep>,
}

fn fixtures(cfg: &SuiteConfig, f: Fp) -> Result<Vec<Fixture>> {
    cfg.quivers_or(&["A3", "A4"])?
        .into_iter()
        .map(|(name, q): (String, Arc<Quiver>)| {
            Ok(Fixture {
                name,
                universe: universe(&q, f)?,
            })
        })
        .collect()
}

/// Runs `n` samples alternating over the fixtures.
fn sampled(
    suite: &str,
    cfg: &SuiteConfig,
    default: usize,
    mut sample: impl FnMut(&Fixture, &mut ChaCha8Rng, &mut SuiteResult) -> Result<()>,
) -> Result<SuiteResult> {
    let mut out = SuiteResult::new(suite);
    let f = cfg.field()?;
    let fx = fixtures(cfg, f)?;
    let n = cfg.samples_or(default);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..n {
        sample(&fx[i % fx.len()], &mut rng, &mut out)?;
    }
    out.details = json!({
        "samples": n,
        "quivers": fx.iter().map(|x| x.name.clone()).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn random_triangle(u: &[Rep], base: &Rep, rng: &mut ChaCha8Rng) -> Result<STriangle> {
    let a = random_object(u, rng)?;
    let e = ExtSpace::new(base, &a)?;
    let coords = random_vector(base.field(), e.dim(), rng);
    Ok(realize(&e.class(&coords)))
}

/// A deflation onto `y`: either a realized random extension, or a projective cover
/// widened by a random extra map, completed by its kernel.
fn random_deflation(u: &[Rep], y: &Rep, rng: &mut ChaCha8Rng) -> Result<STriangle> {
    if rng.gen_bool(0.5) {
        return random_triangle(u, y, rng);
    }
    let cover = projective_cover(y)?.map;
    let extra = random_object(u, rng)?;
    let h = random_in(&hom(&extra, y)?, rng);
    let sum = Rep::direct_sum(&[cover.source().clone(), extra])?;
    let alpha = cover.compose(&sum.projs[0]).add(&h.compose(&sum.projs[1]));
    let (_, incl) = kernel(&alpha)?;
    STriangle::from_sequence(incl, alpha)
}

fn triangle_value(t: &STriangle) -> Value {
    json!({ "infl": morphism_value(&t.infl), "defl": morphism_value(&t.defl) })
}

/// Section / split / retraction agree, and lifting through either end is decided by the split test.
pub fn lemma_factor(cfg: &SuiteConfig) -> Result<SuiteResult> {
    sampled("lemma-factor", cfg, 150, |fx, rng, out| {
        let u = &fx.universe;
        let c = random_object(u, rng)?;
        let t = random_triangle(u, &c, rng)?;
        let (s, sp, r) = (is_section(&t.infl)?, t.is_split()?, is_retraction(&t.defl)?);
        out.case(s == sp && sp == r, || {
            json!({ "quiver": fx.name, "triangle": triangle_value(&t), "section": s, "split": sp, "retraction": r })
        });
        let z = random_object(u, rng)?;
        let g = random_in(&hom(&z, &c)?, rng);
        let lifts = factor_through(&g, &t.defl)?.is_some();
        let split = t.cls.pullback(&g)?.is_split()?;
        out.case(lifts == split, || {
            json!({ "quiver": fx.name, "triangle": triangle_value(&t), "g": morphism_value(&g), "lifts": lifts, "pullbackSplit": split })
        });
        let a = random_in(&hom(&t.fiber, &z)?, rng);
        let extends = factor_through_left(&a, &t.infl)?.is_some();
        let split = t.cls.pushout(&a)?.is_split()?;
        out.case(extends == split, || {
            json!({ "quiver": fx.name, "triangle": triangle_value(&t), "a": morphism_value(&a), "extends": extends, "pushoutSplit": split })
        });
        Ok(())
    })
}

/// Membership in P, factoring through deflations onto the target, and vanishing of every pullback.
pub fn lemma_arb(cfg: &SuiteConfig) -> Result<SuiteResult> {
    sampled("lemma-arb", cfg, 150, |fx, rng, out| {
        let u = &fx.universe;
        let c = random_object(u, rng)?;
        let y = random_object(u, rng)?;
        let hs = Arc::new(hom(&c, &y)?);
        // bias toward P by sometimes sampling inside it
        let p = sproj_ideal(&c, &y)?;
        let f = if rng.gen_bool(0.4) && p.dim() > 0 {
            let coords = random_vector(c.field(), p.dim(), rng);
            hs.combine(&p.coords().combine(&coords))
        } else {
            random_in(&hs, rng)
        };
        let in_p = p.contains(&f);
        let mut deflations = vec![random_deflation(u, &y, rng)?, random_deflation(u, &y, rng)?];
        let cover = projective_cover(&y)?.map;
        let (_, incl) = kernel(&cover)?;
        deflations.push(STriangle::from_sequence(incl, cover)?);
        let mut through_all = true;
        for t in &deflations {
            through_all &= factor_through(&f, &t.defl)?.is_some();
        }
        let mut pullbacks_split = true;
        for a in u {
            for mu in ExtSpace::new(&y, a)?.basis() {
                pullbacks_split &= mu.pullback(&f)?.is_split()?;
            }
        }
        out.case(in_p == through_all && in_p == pullbacks_split, || {
            json!({ "quiver": fx.name, "f": morphism_value(&f), "inP": in_p, "factorsThroughSampledDeflations": through_all, "pullbacksSplit": pullbacks_split })
        });
        Ok(())
    })
}

/// Factoring through a deflation is the same in C and modulo P.
pub fn lemma_ft_stable(cfg: &SuiteConfig) -> Result<SuiteResult> {
    sampled("lemma-ft-stable", cfg, 150, |fx, rng, out| {
        let u = &fx.universe;
        let y = random_object(u, rng)?;
        let t = random_deflation(u, &y, rng)?;
        let c = random_object(u, rng)?;
        let hs = Arc::new(hom(&c, &y)?);
        let f = random_in(&hs, rng);
        let in_c = factor_through(&f, &t.defl)?.is_some();
        let field = c.field();
        let mut v: Vec<Vec<Scalar>> = hom(&c, &t.middle)?
            .basis()
            .iter()
            .map(|s| hs.coords(&t.defl.compose(s)).expect("in Hom"))
            .collect();
        v.extend(sproj_ideal(&c, &y)?.coords().basis().iter().cloned());
        let in_stable =
            Subspace::span(field, hs.dim(), &v).contains(&hs.coords(&f).expect("in Hom"));
        out.case(in_c == in_stable, || {
            json!({ "quiver": fx.name, "deflation": triangle_value(&t), "f": morphism_value(&f), "inC": in_c, "inStable": in_stable })
        });
        Ok(())
    })
}

/// A candidate determiner: sometimes τ⁻ of the weak kernel, otherwise random.
fn candidate(u: &[Rep], t: &STriangle, rng: &mut ChaCha8Rng, cap: u64) -> Result<Rep> {
    if rng.gen_bool(0.5) {
        if let Ok((c, _)) = right_determiner_from_kernel(&t.defl, u, cap) {
            return Ok(c);
        }
    }
    random_object(u, rng)
}

pub fn lemma_det_stable(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let cap = cfg.cap;
    sampled("lemma-det-stable", cfg, 120, |fx, rng, out| {
        let u = &fx.universe;
        let y = random_object(u, rng)?;
        let t = random_deflation(u, &y, rng)?;
        let c = candidate(u, &t, rng, cap)?;
        let a = is_right_determined(&t.defl, &c, u, cap)?;
        let b = is_right_determined_stable(&t.defl, &c, u, cap)?;
        out.case(a.verdict == b.verdict, || {
            json!({ "quiver": fx.name, "deflation": triangle_value(&t), "c": rep_value(&c), "inC": a, "stable": b })
        });
        Ok(())
    })
}

/// Pulling a right C-determined deflation back along any morphism keeps it right C-determined.
pub fn lemma_det_pb(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let cap = cfg.cap;
    let mut applicable = 0u64;
    let mut out = sampled("lemma-det-pb", cfg, 120, |fx, rng, out| {
        let u = &fx.universe;
        let y = random_object(u, rng)?;
        let t = random_deflation(u, &y, rng)?;
        let c = candidate(u, &t, rng, cap)?;
        let z = random_object(u, rng)?;
        let g = random_in(&hom(&z, &y)?, rng);
        let bottom = is_right_determined(&t.defl, &c, u, cap)?;
        let (top, _) = pullback_triangle(&t, &g)?;
        let top_r = is_right_determined(&top.defl, &c, u, cap)?;
        if bottom.verdict {
            applicable += 1;
        }
        out.case(!bottom.verdict || top_r.verdict, || {
            json!({ "quiver": fx.name, "deflation": triangle_value(&t), "g": morphism_value(&g), "c": rep_value(&c), "top": top_r })
        });
        Ok(())
    })?;
    out.details["hypothesisHeld"] = json!(applicable);
    Ok(out)
}

/// If g almost factors through α and g's source is indecomposable, the pulled-back deflation is right almost split.
pub fn prop_ras(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let cap = cfg.cap;
    let mut applicable = 0u64;
    let mut out = sampled("prop-ras", cfg, 120, |fx, rng, out| {
        let u = &fx.universe;
        let y = random_object(u, rng)?;
        let t = random_deflation(u, &y, rng)?;
        for z in u {
            let hs = hom(z, &y)?;
            for g in hs.basis() {
                if !almost_factors_through(g, &t.defl, u, cap)?.holds {
                    continue;
                }
                let (top, _) = pullback_triangle(&t, g)?;
                if !is_indecomposable(&top.base)? {
                    continue;
                }
                applicable += 1;
                let ok = is_right_almost_split(&top.defl, u, cap)?;
                out.case(ok, || {
                    json!({ "quiver": fx.name, "deflation": triangle_value(&t), "g": morphism_value(g), "pulledBack": triangle_value(&top) })
                });
            }
        }
        Ok(())
    })?;
    out.details["almostFactoringFound"] = json!(applicable);
    Ok(out)
}

/// Adding projective summands to C never changes whether a deflation is right C-determined.
pub fn prop_det(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let cap = cfg.cap;
    sampled("prop-det", cfg, 120, |fx, rng, out| {
        let u = &fx.universe;
        let y = random_object(u, rng)?;
        let t = random_deflation(u, &y, rng)?;
        let c = candidate(u, &t, rng, cap)?;
        let q = y.quiver();
        let v = rng.gen_range(0..q.num_vertices());
        let c2 = c.oplus(&Rep::projective(q, y.field(), v))?;
        let a = is_right_determined(&t.defl, &c, u, cap)?;
        let b = is_right_determined(&t.defl, &c2, u, cap)?;
        out.case(a.verdict == b.verdict, || {
            json!({ "quiver": fx.name, "deflation": triangle_value(&t), "c": rep_value(&c), "c2": rep_value(&c2), "a": a, "b": b })
        });
        Ok(())
    })
}
