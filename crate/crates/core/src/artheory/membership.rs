use std::sync::Arc;

use serde::Serialize;

use super::almost_split::{almost_split_with_fiber, AlmostSplitReport};
use super::presentation::{tau, tau_minus};
use crate::error::{Error, Result};
use crate::exactla::Fp;
use crate::quiver::io::{describe, named_object};
use crate::quiver::{
    enumerate_indecomposables, is_indecomposable, is_isomorphic, InfiniteQuiverSpec, Quiver, Rep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Via τ: almost split triangles ending at the object.
    Right,
    /// Via τ⁻: almost split triangles starting at the object.
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NoEvidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowResult {
    pub window: usize,
    #[serde(skip)]
    pub translate: Rep,
    pub label: String,
    #[serde(rename = "dimVector")]
    pub dim_vector: Vec<usize>,
    /// Extension of the previous window's translate is isomorphic to this one.
    #[serde(rename = "agreesWithPrevious", skip_serializing_if = "Option::is_none")]
    pub agrees_with_previous: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<AlmostSplitReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub preset: String,
    pub object: String,
    pub side: Side,
    pub windows: Vec<WindowResult>,
    pub verdict: Verdict,
    /// Stabilization is only observed on finitely many windows; a member verdict is a semi-decision.
    #[serde(rename = "semiDecision")]
    pub semi_decision: bool,
}

impl MembershipReport {
    pub fn stable_translate(&self) -> Option<&Rep> {
        (self.verdict == Verdict::Member).then(|| &self.windows.last().expect("windows").translate)
    }
}

fn translate(m: &Rep, side: Side) -> Result<Rep> {
    match side {
        Side::Right => tau(m),
        Side::Left => tau_minus(m),
    }
}

/// Membership of a named object of a truncated infinite quiver in C_r (right) or C_l (left):
/// the translate is computed in each window and must agree, after extension by zero,
/// across the last two consecutive steps. With `validate`, each window of a member also gets
/// an exhaustively validated almost split triangle over all indecomposables of that window.
pub fn membership(
    spec: InfiniteQuiverSpec,
    object: &str,
    windows: &[usize],
    side: Side,
    field: Fp,
    cap: u64,
    validate: bool,
) -> Result<MembershipReport> {
    membership_of(spec, object, windows, side, field, cap, validate, |q| {
        named_object(q, field, object)
    })
}

/// As [`membership`], with the object in each window produced by `make`.
#[allow(clippy::too_many_arguments)]
pub fn membership_of<F>(
    spec: InfiniteQuiverSpec,
    object: &str,
    windows: &[usize],
    side: Side,
    field: Fp,
    cap: u64,
    validate: bool,
    make: F,
) -> Result<MembershipReport>
where
    F: Fn(&Arc<Quiver>) -> Result<Rep>,
{
    if windows.len() < 2 || windows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "need at least two increasing truncation windows".into(),
        ));
    }
    let mut out: Vec<WindowResult> = Vec::new();
    let mut objects = Vec::new();
    for &n in windows {
        let q = spec.truncate(n)?;
        let m = make(&q)?;
        if m.is_zero() || !is_indecomposable(&m)? {
            return Err(Error::Precondition(format!(
                "{object} is not indecomposable in window {n}"
            )));
        }
        let t = translate(&m, side)?;
        let agrees = match out.last() {
            Some(prev) => Some(is_isomorphic(&prev.translate.extend_to(&q)?, &t)?),
            None => None,
        };
        out.push(WindowResult {
            window: n,
            label: describe(&t),
            dim_vector: t.dims().to_vec(),
            translate: t,
            agrees_with_previous: agrees,
            validation: None,
        });
        objects.push(m);
    }
    let steps: Vec<bool> = out.iter().filter_map(|w| w.agrees_with_previous).collect();
    let tail = &steps[steps.len().saturating_sub(2)..];
    let verdict = if tail.iter().all(|&b| b) {
        Verdict::Member
    } else {
        Verdict::NoEvidence
    };
    if verdict == Verdict::Member && validate {
        for (w, m) in out.iter_mut().zip(&objects) {
            let universe = enumerate_indecomposables(m.quiver(), field)?;
            let (end, start) = match side {
                Side::Right => (m, &w.translate),
                Side::Left => (&w.translate, m),
            };
            let t = almost_split_with_fiber(end, start, &universe, cap)?.ok_or_else(|| {
                Error::Invariant(format!(
                    "no validated almost split triangle in window {}",
                    w.window
                ))
            })?;
            w.validation = Some(t.report);
        }
    }
    Ok(MembershipReport {
        preset: spec.name().into(),
        object: object.into(),
        side,
        windows: out,
        verdict,
        semi_decision: true,
    })
}

pub fn cr_membership(
    spec: InfiniteQuiverSpec,
    object: &str,
    windows: &[usize],
    field: Fp,
    cap: u64,
) -> Result<MembershipReport> {
    membership(spec, object, windows, Side::Right, field, cap, true)
}

pub fn cl_membership(
    spec: InfiniteQuiverSpec,
    object: &str,
    windows: &[usize],
    field: Fp,
    cap: u64,
) -> Result<MembershipReport> {
    membership(spec, object, windows, Side::Left, field, cap, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_is_in_cr() {
        let f = Fp::new(2).unwrap();
        let r =
            cr_membership(InfiniteQuiverSpec::AInfZigzag, "S1", &[6, 7, 8], f, 1 << 16).unwrap();
        assert_eq!(r.verdict, Verdict::Member);
        assert_eq!(r.windows.last().unwrap().label, "[2,3]");
        assert!(r
            .windows
            .iter()
            .all(|w| w.validation.as_ref().unwrap().pass));
    }

    #[test]
    fn p5_has_no_stable_inverse_translate() {
        let f = Fp::new(2).unwrap();
        let r =
            cl_membership(InfiniteQuiverSpec::AInfZigzag, "P5", &[6, 7, 8], f, 1 << 16).unwrap();
        assert_eq!(r.verdict, Verdict::NoEvidence);
        assert!(r.windows.iter().all(|w| w.validation.is_none()));
    }
}
