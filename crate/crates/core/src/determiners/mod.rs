//! Morphisms determined by objects, relativized to an explicit finite test universe.

mod construct;
mod kernel;
mod theorems;

use serde::Serialize;

use crate::error::Result;
use crate::exactla::{all_vectors, Scalar, Subspace};
use crate::quiver::io::{describe, morphism_to_json, MorphismJson};
use crate::quiver::{factor_through, hom, is_retraction, HomSpace, Morphism, Rep};
use crate::stable::{radical, sproj_ideal_in};

pub use construct::{
    construct_deflation_for_submodule, enumerate_submodules, perpendicular, Construction,
    SubmoduleH,
};
pub use kernel::{
    cokernel, intrinsic_weak_cokernel, intrinsic_weak_kernel, kernel, minimal_right_determiner,
    right_determiner_from_kernel, MinimalDeterminer, WeakCokernel, WeakKernel,
};
pub use theorems::{
    check_thm_det, determine_in_horizon, six_conditions, Condition, HorizonReport, HorizonWindow,
    SixConditions, ThmDetReport,
};

/// `f ∘ u = g` for some `u`.
pub fn factors_through(g: &Morphism, f: &Morphism) -> Result<Option<Morphism>> {
    factor_through(g, f)
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    #[serde(rename = "universeIndex")]
    pub universe_index: usize,
    pub object: String,
    pub morphism: MorphismJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminerReport {
    pub operation: String,
    pub morphism: MorphismJson,
    pub candidate: String,
    #[serde(rename = "candidateDims")]
    pub candidate_dims: Vec<usize>,
    #[serde(rename = "universeSize")]
    pub universe_size: usize,
    pub examined: u64,
    pub cap: u64,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// `{f ∘ u : u ∈ Hom(T, X)}` in the coordinates of `hs = Hom(T, Y)`, optionally plus P(T, Y).
fn image_of_post(f: &Morphism, hs: &HomSpace, stable: bool) -> Result<Subspace> {
    let t = hs.source();
    let field = t.field();
    let lifts = hom(t, f.source())?;
    let mut v: Vec<Vec<Scalar>> = lifts
        .basis()
        .iter()
        .map(|u| hs.coords(&f.compose(u)).expect("composite in Hom"))
        .collect();
    if stable {
        let p = sproj_ideal_in(std::sync::Arc::new(hs.clone()))?;
        v.extend(p.coords().basis().iter().cloned());
    }
    Ok(Subspace::span(field, hs.dim(), &v))
}

fn determined(
    f: &Morphism,
    c: &Rep,
    universe: &[Rep],
    cap: u64,
    stable: bool,
) -> Result<DeterminerReport> {
    let y = f.target();
    let hcy = hom(c, y)?;
    let through_c = image_of_post(f, &hcy, stable)?;
    let mut examined = 0u64;
    let mut counterexample = None;
    'outer: for (i, t) in universe.iter().enumerate() {
        let hty = hom(t, y)?;
        if hty.dim() == 0 {
            examined += 1;
            continue;
        }
        let through_t = image_of_post(f, &hty, stable)?;
        let hct = hom(c, t)?;
        for gc in all_vectors(t.field(), hty.dim(), cap)? {
            examined += 1;
            let g = hty.combine(&gc);
            let hyp = hct
                .basis()
                .iter()
                .all(|h| through_c.contains(&hcy.coords(&g.compose(h)).expect("in Hom")));
            if hyp && !through_t.contains(&gc) {
                counterexample = Some(Counterexample {
                    universe_index: i,
                    object: describe(t),
                    morphism: morphism_to_json(&g),
                });
                break 'outer;
            }
        }
    }
    Ok(DeterminerReport {
        operation: if stable {
            "is-right-determined-stable"
        } else {
            "is-right-determined"
        }
        .into(),
        morphism: morphism_to_json(f),
        candidate: describe(c),
        candidate_dims: c.dims().to_vec(),
        universe_size: universe.len(),
        examined,
        cap,
        verdict: counterexample.is_none(),
        counterexample,
    })
}

/// Every `g: T → Y` (T in `universe`) whose composites with all `h: C → T` factor through `f`
/// itself factors through `f`. Enumerates all of `Hom(T, Y)`.
pub fn is_right_determined(
    f: &Morphism,
    c: &Rep,
    universe: &[Rep],
    cap: u64,
) -> Result<DeterminerReport> {
    determined(f, c, universe, cap, false)
}

/// The same condition read in the stable category: factoring is taken modulo P.
pub fn is_right_determined_stable(
    f: &Morphism,
    c: &Rep,
    universe: &[Rep],
    cap: u64,
) -> Result<DeterminerReport> {
    determined(f, c, universe, cap, true)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostFactorReport {
    pub holds: bool,
    pub factors: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Counterexample>,
}

/// `g` does not factor through `f`, while `g∘h` does for every radical `h: T → Z`, T in `universe`.
pub fn almost_factors_through(
    g: &Morphism,
    f: &Morphism,
    universe: &[Rep],
    cap: u64,
) -> Result<AlmostFactorReport> {
    if factor_through(g, f)?.is_some() {
        return Ok(AlmostFactorReport {
            holds: false,
            factors: true,
            witness: None,
        });
    }
    let z = g.source();
    let y = g.target();
    for (i, t) in universe.iter().enumerate() {
        let rad = radical(t, z)?;
        if rad.dim() == 0 {
            continue;
        }
        let hty = hom(t, y)?;
        let through = image_of_post(f, &hty, false)?;
        for c in all_vectors(t.field(), rad.dim(), cap)? {
            let h = rad.hom().combine(&rad.coords().combine(&c));
            let gh = g.compose(&h);
            if !through.contains(&hty.coords(&gh).expect("in Hom")) {
                return Ok(AlmostFactorReport {
                    holds: false,
                    factors: false,
                    witness: Some(Counterexample {
                        universe_index: i,
                        object: describe(t),
                        morphism: morphism_to_json(&h),
                    }),
                });
            }
        }
    }
    Ok(AlmostFactorReport {
        holds: true,
        factors: false,
        witness: None,
    })
}

/// `f` is not a retraction and every non-retraction `g: T → Y` (T in `universe`) factors through it.
pub fn is_right_almost_split(f: &Morphism, universe: &[Rep], cap: u64) -> Result<bool> {
    if is_retraction(f)? {
        return Ok(false);
    }
    let y = f.target();
    for t in universe {
        let hty = hom(t, y)?;
        let through = image_of_post(f, &hty, false)?;
        for c in all_vectors(t.field(), hty.dim(), cap)? {
            if through.contains(&c) {
                continue;
            }
            if !is_retraction(&hty.combine(&c))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artheory::almost_split_ending_at;
    use crate::exactla::Fp;
    use crate::quiver::{enumerate_indecomposables, Quiver};

    #[test]
    fn a2_almost_split_deflation() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(2);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        let t = almost_split_ending_at(&s1, &u, 1 << 16).unwrap().triangle;
        assert!(
            is_right_determined(&t.defl, &s1, &u, 1 << 16)
                .unwrap()
                .verdict
        );
        let r = is_right_determined(&t.defl, &s2, &u, 1 << 16).unwrap();
        assert!(!r.verdict);
        assert!(r.counterexample.is_some());
        let zero = Rep::zero(&q, f);
        assert!(
            !is_right_determined(&t.defl, &zero, &u, 1 << 16)
                .unwrap()
                .verdict
        );
        let id = Morphism::identity(&s1);
        assert!(
            is_right_determined(&id, &zero, &u, 1 << 16)
                .unwrap()
                .verdict
        );
        assert!(
            almost_factors_through(&id, &t.defl, &u, 1 << 16)
                .unwrap()
                .holds
        );
        assert!(
            !almost_factors_through(&t.defl, &t.defl, &u, 1 << 16)
                .unwrap()
                .holds
        );
        assert!(is_right_almost_split(&t.defl, &u, 1 << 16).unwrap());
    }
}
