use std::sync::Arc;

use serde::Serialize;

use super::construct::{construct_deflation_for_submodule, enumerate_submodules};
use super::kernel::{intrinsic_weak_cokernel, intrinsic_weak_kernel, minimal_right_determiner};
use super::{almost_factors_through, is_right_determined};
use crate::artheory::{
    almost_split_ending_at, almost_split_with_fiber, check_almost_split, is_nondegenerate,
    membership_of, pairing_matrix, tau_minus, MembershipReport, PairingVariant, PairingWitness,
    Side, Verdict,
};
use crate::error::{Error, Result};
use crate::exactla::Fp;
use crate::quiver::io::{describe, named_object};
use crate::quiver::{
    decompose, is_indecomposable, is_isomorphic, is_retraction, line_order, InfiniteQuiverSpec,
    Morphism, Quiver, Rep,
};
use crate::stable::{is_injective, is_projective, projective_cover};

#[derive(Clone, Debug, Serialize)]
pub struct ThmDetReport {
    /// Right determined by the direct sum of the whole universe.
    #[serde(rename = "rightDetermined")]
    pub right_determined: bool,
    #[serde(rename = "weakKernel")]
    pub weak_kernel: Vec<String>,
    /// Every summand of the intrinsic weak kernel is injective or starts a validated almost split triangle.
    #[serde(rename = "kernelInCl")]
    pub kernel_in_cl: bool,
    pub agree: bool,
}

/// Both sides of the equivalence "right C-determined for some C ⟺ intrinsic weak kernel in C_l",
/// relativized to `universe`.
pub fn check_thm_det(f: &Morphism, universe: &[Rep], cap: u64) -> Result<ThmDetReport> {
    let y = f.target();
    let all = Rep::direct_sum_in(y.quiver(), y.field(), universe)?.rep;
    let right_determined = is_right_determined(f, &all, universe, cap)?.verdict;
    let k = intrinsic_weak_kernel(f)?.kernel;
    let mut kernel_in_cl = true;
    let mut weak_kernel = Vec::new();
    if !k.is_zero() {
        for s in decompose(&k)?.summands {
            weak_kernel.push(describe(&s.rep));
            if is_injective(&s.rep)? {
                continue;
            }
            let end = tau_minus(&s.rep)?;
            kernel_in_cl &= almost_split_with_fiber(&end, &s.rep, universe, cap)?.is_some();
        }
    }
    Ok(ThmDetReport {
        right_determined,
        weak_kernel,
        kernel_in_cl,
        agree: right_determined == kernel_in_cl,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HorizonWindow {
    pub window: usize,
    #[serde(rename = "weakKernel")]
    pub weak_kernel: String,
    #[serde(rename = "minimalDeterminer")]
    pub minimal_determiner: Vec<String>,
    /// Some summand of the determiner is nonzero at the window's last vertex.
    #[serde(rename = "touchesBoundary")]
    pub touches_boundary: bool,
    /// The determiner, extended by zero, still determines the morphism in the next window.
    #[serde(rename = "persistsToNext", skip_serializing_if = "Option::is_none")]
    pub persists_to_next: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HorizonReport {
    pub preset: String,
    pub morphism: String,
    pub windows: Vec<HorizonWindow>,
    #[serde(rename = "determinedWithinHorizon")]
    pub determined_within_horizon: bool,
    #[serde(rename = "kernelMembership")]
    pub kernel_membership: MembershipReport,
    #[serde(rename = "thmDet")]
    pub thm_det: (String, String),
}

/// Determiners of the projective cover of a named object across truncation windows.
/// A determiner counts as found within the horizon only if it stays clear of the window boundary
/// and keeps determining the morphism in every later window.
pub fn determine_in_horizon(
    spec: InfiniteQuiverSpec,
    object: &str,
    windows: &[usize],
    field: Fp,
    cap: u64,
) -> Result<HorizonReport> {
    let cover = |q: &Arc<Quiver>| -> Result<Morphism> {
        Ok(projective_cover(&named_object(q, field, object)?)?.map)
    };
    let mut out: Vec<HorizonWindow> = Vec::new();
    let mut determiners: Vec<Rep> = Vec::new();
    for &n in windows {
        let q = spec.truncate(n)?;
        let p = cover(&q)?;
        let universe = crate::quiver::enumerate_indecomposables(&q, field)?;
        let k = intrinsic_weak_kernel(&p)?.kernel;
        let md = minimal_right_determiner(&p, &universe, cap)?;
        if !md.determined.verdict {
            return Err(Error::Invariant(format!(
                "minimal determiner fails in window {n}"
            )));
        }
        let last = *line_order(&q)?.last().expect("nonempty");
        let touches = md.summands.iter().any(|s| s.dim_at(last) > 0);
        if let (Some(prev), Some(pc)) = (out.last_mut(), determiners.last()) {
            let ext = pc.extend_to(&q)?;
            prev.persists_to_next = Some(is_right_determined(&p, &ext, &universe, cap)?.verdict);
        }
        out.push(HorizonWindow {
            window: n,
            weak_kernel: describe(&k),
            minimal_determiner: md.labels.clone(),
            touches_boundary: touches,
            persists_to_next: None,
        });
        determiners.push(md.object);
    }
    let found = (0..out.len().saturating_sub(1)).any(|i| {
        !out[i].touches_boundary
            && out[i..out.len() - 1]
                .iter()
                .all(|w| w.persists_to_next == Some(true))
    });
    let kernel_membership = membership_of(
        spec,
        "weak kernel",
        windows,
        Side::Left,
        field,
        cap,
        true,
        |q| {
            let k = intrinsic_weak_kernel(&cover(q)?)?.kernel;
            if k.is_zero() || !is_indecomposable(&k)? {
                return Err(Error::Precondition(
                    "weak kernel is not indecomposable".into(),
                ));
            }
            Ok(k)
        },
    )?;
    let thm_det = (
        if found {
            "determined-within-horizon"
        } else {
            "no-candidate-in-horizon"
        }
        .to_string(),
        match kernel_membership.verdict {
            Verdict::Member => "kernel-in-cl",
            Verdict::NoEvidence => "no-evidence",
        }
        .to_string(),
    );
    Ok(HorizonReport {
        preset: spec.name().into(),
        morphism: format!("projective cover of {object}"),
        windows: out,
        determined_within_horizon: found,
        kernel_membership,
        thm_det,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub index: usize,
    pub statement: String,
    pub holds: bool,
    pub witness: String,
    pub recertified: bool,
    #[serde(rename = "dualityDerived")]
    pub duality_derived: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SixConditions {
    pub object: String,
    pub conditions: Vec<Condition>,
    pub equivalent: bool,
}

fn cond(
    index: usize,
    statement: &str,
    holds: bool,
    witness: String,
    recertified: bool,
) -> Condition {
    Condition {
        index,
        statement: statement.into(),
        holds,
        witness,
        recertified,
        duality_derived: false,
    }
}

/// Evaluates the six equivalent characterizations of C ∈ C_r constructively over `universe`.
pub fn six_conditions(c: &Rep, universe: &[Rep], cap: u64) -> Result<SixConditions> {
    if c.is_zero() || !is_indecomposable(c)? || is_projective(c)? {
        return Err(Error::Precondition(
            "object must be indecomposable and non-projective".into(),
        ));
    }
    let mut conditions = Vec::new();

    // (1) representability via a witness with nondegenerate pairings
    let w = PairingWitness::right(c, universe, cap).ok();
    let (h1, r1, w1) = match &w {
        Some(w) => {
            let mut nd = true;
            for m in universe {
                nd &= is_nondegenerate(&pairing_matrix(w, m, PairingVariant::Costable)?);
            }
            (
                true,
                nd && w.report.pass,
                format!(
                    "τC = {}, γ = coordinate {}",
                    describe(&w.start),
                    w.gamma_index
                ),
            )
        }
        None => (false, false, "no witness".into()),
    };
    conditions.push(cond(1, "C lies in C_r", h1, w1, r1));

    // (2) every submodule H ⊇ P(C, Y) is realized
    let (mut h2, mut count) = (w.is_some(), 0usize);
    if let Some(w) = &w {
        'sweep: for y in universe {
            for h in enumerate_submodules(c, y, cap)? {
                match construct_deflation_for_submodule(&h, Some(w), universe, cap) {
                    Ok(_) => count += 1,
                    Err(Error::Invariant(_)) => {
                        h2 = false;
                        break 'sweep;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    conditions.push(cond(
        2,
        "every right End(C)-submodule H ⊇ P(C,Y) is Im C(C,α) for a right C-determined deflation α",
        h2,
        format!("{count} submodules realized"),
        h2,
    ));

    // (4), (5), (6) from the almost split triangle
    let ass = almost_split_ending_at(c, universe, cap).ok();
    let (h4, r4, w4) = match &ass {
        Some(t) => (
            true,
            check_almost_split(&t.triangle, universe, cap)?.pass,
            format!(
                "0 → {} → {} → C → 0",
                describe(&t.triangle.fiber),
                describe(&t.triangle.middle)
            ),
        ),
        None => (false, false, "none".into()),
    };

    // (3) dual statement, checked over the opposite quiver
    let (h3, r3, w3) = match &ass {
        Some(t) => {
            let a = &t.triangle.infl;
            let wc = intrinsic_weak_cokernel(a)?;
            let op = c.quiver().opposite();
            let da = a.dual_between(
                &a.target().dual_over(op.clone()),
                &a.source().dual_over(op.clone()),
            );
            let dfiber = t.triangle.fiber.dual_over(op.clone());
            let duniverse: Vec<Rep> = universe.iter().map(|m| m.dual_over(op.clone())).collect();
            let left_det = is_right_determined(&da, &dfiber, &duniverse, cap)?.verdict;
            let iso = is_isomorphic(&wc.cokernel, c)?;
            (
                left_det && iso,
                left_det && iso,
                format!(
                    "inflation {} → {}",
                    describe(a.source()),
                    describe(a.target())
                ),
            )
        }
        None => (false, false, "none".into()),
    };
    let mut c3 = cond(
        3,
        "C is an intrinsic weak cokernel of a left determined inflation",
        h3,
        w3,
        r3,
    );
    c3.duality_derived = true;
    conditions.push(c3);
    conditions.push(cond(4, "an almost split triangle ends at C", h4, w4, r4));

    let (h5, r5, w5) = match &ass {
        Some(t) => {
            let d = &t.triangle.defl;
            let nr = !is_retraction(d)?;
            let det = is_right_determined(d, c, universe, cap)?.verdict;
            (
                nr && det,
                nr && det,
                format!("deflation {} → C", describe(&t.triangle.middle)),
            )
        }
        None => (false, false, "none".into()),
    };
    conditions.push(cond(
        5,
        "a non-retraction deflation is right C-determined",
        h5,
        w5,
        r5,
    ));

    let (h6, r6, w6) = match &ass {
        Some(t) => {
            let af =
                almost_factors_through(&Morphism::identity(c), &t.triangle.defl, universe, cap)?;
            (
                af.holds,
                af.holds,
                "Id_C almost factors through the almost split deflation".to_string(),
            )
        }
        None => (false, false, "none".into()),
    };
    conditions.push(cond(
        6,
        "a morphism almost factors through a deflation",
        h6,
        w6,
        r6,
    ));

    let equivalent = conditions.iter().all(|x| x.holds == conditions[0].holds);
    Ok(SixConditions {
        object: describe(c),
        conditions,
        equivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::enumerate_indecomposables;

    #[test]
    fn six_conditions_on_a3() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(3);
        let u = enumerate_indecomposables(&q, f).unwrap();
        for c in &u {
            if is_projective(c).unwrap() {
                assert!(six_conditions(c, &u, 1 << 16).is_err());
                continue;
            }
            let r = six_conditions(c, &u, 1 << 16).unwrap();
            assert!(r.equivalent);
            assert!(
                r.conditions.iter().all(|x| x.holds && x.recertified),
                "{r:?}"
            );
        }
    }

    #[test]
    fn thm_det_on_a3_deflations() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(3);
        let u = enumerate_indecomposables(&q, f).unwrap();
        for y in &u {
            let p = projective_cover(y).unwrap().map;
            let r = check_thm_det(&p, &u, 1 << 16).unwrap();
            assert!(r.right_determined && r.kernel_in_cl && r.agree);
        }
    }
}
