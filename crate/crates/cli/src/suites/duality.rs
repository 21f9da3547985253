use arcat::artheory::{
    coset_inverse, is_nondegenerate, pairing_matrix, phi_is_natural, psi_is_natural,
    tau_minus_on_morphism, tau_on_morphism, theta, xi, PairingVariant, PairingWitness, Witnesses,
};
use arcat::ext::ExtSpace;
use arcat::quiver::{hom, Morphism, Rep};
use arcat::stable::{costable_hom, is_injective, is_projective, stable_hom};
use arcat::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    morphism_value, random_in, random_object, rep_value, universe, SuiteConfig, SuiteResult,
};

/// Nondegeneracy of both pairings and the matching dimension identities.
pub fn pairing_nondegeneracy(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("pairing-nondegeneracy");
    let f = cfg.field()?;
    let mut rows = Vec::new();
    for (name, q) in cfg.quivers_or(&["A4"])? {
        let u = universe(&q, f)?;
        let mut pairs = 0u64;
        for y in &u {
            if is_projective(y)? {
                continue;
            }
            let w = PairingWitness::right(y, &u, cfg.cap)?;
            for m in &u {
                for variant in [PairingVariant::Costable, PairingVariant::Stable] {
                    let g = pairing_matrix(&w, m, variant)?;
                    out.case(is_nondegenerate(&g), || {
                        json!({ "quiver": name, "y": rep_value(y), "m": rep_value(m), "variant": format!("{variant:?}"), "matrix": g.to_rows() })
                    });
                }
                let costable = costable_hom(m, &w.start)?.dim();
                let e_ym = ExtSpace::new(y, m)?.dim();
                let stable = stable_hom(y, m)?.dim();
                let e_mt = ExtSpace::new(m, &w.start)?.dim();
                out.case(costable == e_ym && stable == e_mt, || {
                    json!({
                        "quiver": name,
                        "y": rep_value(y),
                        "m": rep_value(m),
                        "costableHom": costable,
                        "extYM": e_ym,
                        "stableHom": stable,
                        "extMTau": e_mt,
                    })
                });
                pairs += 1;
            }
        }
        rows.push(json!({ "quiver": name, "pairs": pairs }));
    }
    out.details = json!({ "fixtures": rows });
    Ok(out)
}

/// A random nonzero morphism between indecomposables with the given filter on its endpoints.
fn random_morphism(
    u: &[Rep],
    rng: &mut ChaCha8Rng,
    ok: impl Fn(&Rep) -> Result<bool>,
) -> Result<Option<Morphism>> {
    let candidates: Vec<&Rep> = u
        .iter()
        .filter_map(|m| ok(m).map(|b| b.then_some(m)).transpose())
        .collect::<Result<_>>()?;
    for _ in 0..64 {
        let a = candidates[rng.gen_range(0..candidates.len())];
        let b = candidates[rng.gen_range(0..candidates.len())];
        let hs = hom(a, b)?;
        if hs.dim() == 0 {
            continue;
        }
        let g = random_in(&hs, rng);
        if !g.is_zero() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// θ and ξ: stable invertibility, both triangle identities, and naturality on seeded samples.
pub fn quasi_inverse(cfg: &SuiteConfig) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("quasi-inverse");
    let f = cfg.field()?;
    let n = cfg.samples_or(60);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for (name, q) in cfg.quivers_or(&["A3"])? {
        let u = universe(&q, f)?;
        let mut ws = Witnesses::new(u.clone(), cfg.cap);
        let (mut invertible, mut identities) = (0u64, 0u64);

        for y in &u {
            if is_projective(y)? {
                continue;
            }
            let wy = ws.right(y)?;
            let wl = ws.left(&wy.start)?;
            let th = theta(&wy, &wl)?;
            let inv = coset_inverse(&th, true)?;
            out.case(
                inv.is_some(),
                || json!({ "quiver": name, "y": rep_value(y), "theta": morphism_value(&th.rep()) }),
            );
            invertible += 1;

            // τ(θ_Y) ∘ ξ_{τY} = Id_{τY} in the costable category
            let wr = ws.right(&wl.end)?;
            let x = xi(&wl, &wr)?;
            let tth = tau_on_morphism(&wr, &wy, &th.rep())?;
            let comp = tth.rep().compose(&x.rep());
            let ok = costable_hom(&wy.start, &wy.start)?.coset(&comp)
                == costable_hom(&wy.start, &wy.start)?.coset(&Morphism::identity(&wy.start));
            out.case(ok, || json!({ "identity": "tau-theta-xi", "quiver": name, "y": rep_value(y), "composite": morphism_value(&comp) }));
            identities += 1;
        }

        for x0 in &u {
            if is_injective(x0)? {
                continue;
            }
            let wx = ws.left(x0)?;
            let wr = ws.right(&wx.end)?;
            let x = xi(&wx, &wr)?;
            let inv = coset_inverse(&x, false)?;
            out.case(
                inv.is_some(),
                || json!({ "quiver": name, "x": rep_value(x0), "xi": morphism_value(&x.rep()) }),
            );
            invertible += 1;

            // θ_{τ⁻X} ∘ τ⁻(ξ_X) = Id_{τ⁻X} in the stable category
            let wl2 = ws.left(&wr.start)?;
            let txi = tau_minus_on_morphism(&wx, &wl2, &x.rep())?;
            let th = theta(&wr, &wl2)?;
            let comp = th.rep().compose(&txi.rep());
            let sh = stable_hom(&wx.end, &wx.end)?;
            let ok = sh.coset(&comp) == sh.coset(&Morphism::identity(&wx.end));
            out.case(ok, || json!({ "identity": "theta-tauminus-xi", "quiver": name, "x": rep_value(x0), "composite": morphism_value(&comp) }));
            identities += 1;
        }

        let mut naturality = 0u64;
        for i in 0..n {
            match i % 3 {
                0 => {
                    // pairings natural in the varying argument
                    let y = loop {
                        let y = &u[rng.gen_range(0..u.len())];
                        if !is_projective(y)? {
                            break y.clone();
                        }
                    };
                    let w = ws.right(&y)?;
                    let a = random_object(&u, &mut rng)?;
                    let b = random_object(&u, &mut rng)?;
                    let g = random_in(&hom(&a, &b)?, &mut rng);
                    let ok = phi_is_natural(&w, &g)? && psi_is_natural(&w, &g)?;
                    out.case(ok, || json!({ "check": "pairing-naturality", "y": rep_value(&y), "g": morphism_value(&g) }));
                }
                1 => {
                    // f ∘ θ_Y = θ_{Y′} ∘ τ⁻τ(f)
                    let Some(g) = random_morphism(&u, &mut rng, |m| Ok(!is_projective(m)?))? else {
                        continue;
                    };
                    let (w1, w2) = (ws.right(g.source())?, ws.right(g.target())?);
                    let (l1, l2) = (ws.left(&w1.start)?, ws.left(&w2.start)?);
                    let tf = tau_on_morphism(&w1, &w2, &g)?;
                    let ttf = tau_minus_on_morphism(&l1, &l2, &tf.rep())?;
                    let (t1, t2) = (theta(&w1, &l1)?, theta(&w2, &l2)?);
                    let sh = stable_hom(&l1.end, g.target())?;
                    let ok =
                        sh.coset(&g.compose(&t1.rep())) == sh.coset(&t2.rep().compose(&ttf.rep()));
                    out.case(
                        ok,
                        || json!({ "check": "theta-naturality", "f": morphism_value(&g) }),
                    );
                }
                _ => {
                    // ξ_{X′} ∘ g = ττ⁻(g) ∘ ξ_X
                    let Some(g) = random_morphism(&u, &mut rng, |m| Ok(!is_injective(m)?))? else {
                        continue;
                    };
                    let (l1, l2) = (ws.left(g.source())?, ws.left(g.target())?);
                    let (r1, r2) = (ws.right(&l1.end)?, ws.right(&l2.end)?);
                    let tg = tau_minus_on_morphism(&l1, &l2, &g)?;
                    let ttg = tau_on_morphism(&r1, &r2, &tg.rep())?;
                    let (x1, x2) = (xi(&l1, &r1)?, xi(&l2, &r2)?);
                    let ch = costable_hom(g.source(), &r2.start)?;
                    let ok =
                        ch.coset(&x2.rep().compose(&g)) == ch.coset(&ttg.rep().compose(&x1.rep()));
                    out.case(
                        ok,
                        || json!({ "check": "xi-naturality", "g": morphism_value(&g) }),
                    );
                }
            }
            naturality += 1;
        }
        rows.push(json!({ "quiver": name, "invertibility": invertible, "triangleIdentities": identities, "naturality": naturality }));
    }
    out.details = json!({ "fixtures": rows, "samples": n });
    Ok(out)
}
