use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{image_basis, Scalar, Subspace};
use crate::quiver::{Morphism, Quiver, Rep};
use crate::stable::{morphism_from_projective, projective_cover, ProjectiveCover};

/// `0 → P₁ → P₀ → M → 0` with `P₀` a projective cover and `P₁` the (projective) kernel.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub module: Rep,
    pub p0: ProjectiveCover,
    pub p1: ProjectiveCover,
    /// `d: P₁ → P₀`.
    pub d: Morphism,
    /// `differential[j][i]`: coefficients over the paths `a_i → b_j` (in `P_{a_i}` basis order)
    /// of the image of the generator of the `j`-th summand `P_{b_j}` of `P₁`
    /// in the `i`-th summand `P_{a_i}` of `P₀`.
    pub differential: Vec<Vec<Vec<Scalar>>>,
}

impl ProjPresentation {
    pub fn p0_vertices(&self) -> &[usize] {
        &self.p0.vertices
    }
    pub fn p1_vertices(&self) -> &[usize] {
        &self.p1.vertices
    }

    /// No entry of the differential uses a trivial path.
    pub fn is_minimal(&self) -> bool {
        self.differential.iter().enumerate().all(|(j, row)| {
            row.iter().enumerate().all(|(i, coeffs)| {
                // on an acyclic quiver the only path a → a is trivial
                self.p0.vertices[i] != self.p1.vertices[j] || coeffs[0] == 0
            })
        })
    }
}

pub fn min_proj_presentation(m: &Rep) -> Result<ProjPresentation> {
    let p0 = projective_cover(m)?;
    let f = m.field();
    let q = m.quiver();
    let kers: Vec<_> = (0..q.num_vertices())
        .map(|v| crate::exactla::nullspace_basis(p0.map.comp(v)))
        .collect();
    let bases: Vec<_> = kers
        .iter()
        .zip(p0.rep.dims())
        .map(|(k, &d)| crate::exactla::Matrix::from_cols(f, d, k))
        .collect();
    let (k, k_incl) = p0.rep.subrep(&bases)?;
    let p1 = projective_cover(&k)?;
    if !p1.map.is_iso() {
        return Err(Error::Invariant(
            "kernel of a projective cover is not projective".into(),
        ));
    }
    let d = k_incl.compose(&p1.map);
    let sum0 = Rep::direct_sum_in(q, f, &p0_parts(q, f, &p0.vertices))?;
    let mut differential = Vec::with_capacity(p1.vertices.len());
    for (j, &b) in p1.vertices.iter().enumerate() {
        // image of the trivial path of P_b
        let gen = d.compose(&p1.incls[j]).comp(b).col(0);
        let row = sum0
            .projs
            .iter()
            .map(|pi| pi.comp(b).mul_vec(&gen))
            .collect();
        differential.push(row);
    }
    Ok(ProjPresentation {
        module: m.clone(),
        p0,
        p1,
        d,
        differential,
    })
}

fn p0_parts(q: &Arc<Quiver>, f: crate::exactla::Fp, vs: &[usize]) -> Vec<Rep> {
    vs.iter().map(|&a| Rep::projective(q, f, a)).collect()
}

/// Tr: cokernel of the dualized differential `⊕ P^op_{a_i} → ⊕ P^op_{b_j}`, placed over `opposite`
/// (which must be the opposite of the presentation's quiver).
pub fn transpose_over(pp: &ProjPresentation, opposite: &Arc<Quiver>) -> Result<Rep> {
    if pp.p1.vertices.is_empty() {
        return Err(Error::Precondition(
            "transpose of a projective module is undefined".into(),
        ));
    }
    if !pp.is_minimal() {
        return Err(Error::Precondition("presentation is not minimal".into()));
    }
    let q = pp.module.quiver();
    let f = pp.module.field();
    let src_parts: Vec<Rep> = pp
        .p0
        .vertices
        .iter()
        .map(|&a| Rep::projective(opposite, f, a))
        .collect();
    let tgt_parts: Vec<Rep> = pp
        .p1
        .vertices
        .iter()
        .map(|&b| Rep::projective(opposite, f, b))
        .collect();
    let src = Rep::direct_sum_in(opposite, f, &src_parts)?;
    let tgt = Rep::direct_sum_in(opposite, f, &tgt_parts)?;
    let mut dstar = Morphism::zero(&src.rep, &tgt.rep);
    for (i, &a) in pp.p0.vertices.iter().enumerate() {
        // e_{a} ↦ Σ_j Σ_p c_p · reverse(p) inside P^op_{b_j}(a)
        let mut v = vec![0; tgt.rep.dim_at(a)];
        for (j, &b) in pp.p1.vertices.iter().enumerate() {
            let coeffs = &pp.differential[j][i];
            let paths = q.paths(a, b);
            let op_paths = opposite.paths(b, a);
            for (c, p) in coeffs.iter().zip(&paths) {
                if *c == 0 {
                    continue;
                }
                let rev: Vec<usize> = p.arrows.iter().rev().copied().collect();
                let k = op_paths
                    .iter()
                    .position(|r| r.arrows == rev)
                    .ok_or_else(|| Error::Invariant("reversed path missing".into()))?;
                let local = tgt.incls[j].comp(a).col(k);
                for (o, x) in v.iter_mut().zip(local) {
                    *o = f.add(*o, f.mul(*c, x));
                }
            }
        }
        let g = morphism_from_projective(&tgt.rep, a, &v).compose(&src.projs[i]);
        dstar = dstar.add(&g);
    }
    let images: Vec<Subspace> = (0..opposite.num_vertices())
        .map(|x| Subspace::span(f, tgt.rep.dim_at(x), &image_basis(dstar.comp(x))))
        .collect();
    let (tr, _) = tgt.rep.quotient(&images)?;
    Ok(tr)
}

/// τ = D Tr.
pub fn tau(m: &Rep) -> Result<Rep> {
    let q = m.quiver().clone();
    let pp = min_proj_presentation(m)?;
    if pp.p1.vertices.is_empty() {
        return Err(Error::Precondition("τ of a projective module".into()));
    }
    let tr = transpose_over(&pp, &q.opposite())?;
    Ok(tr.dual_over(q))
}

/// τ⁻ = Tr D.
pub fn tau_minus(m: &Rep) -> Result<Rep> {
    let q = m.quiver().clone();
    let dm = m.dual_over(q.opposite());
    let pp = min_proj_presentation(&dm)?;
    if pp.p1.vertices.is_empty() {
        return Err(Error::Precondition("τ⁻ of an injective module".into()));
    }
    transpose_over(&pp, &q)
}

/// D: transpose every matrix and reverse arrows.
pub fn dualize(m: &Rep, opposite: &Arc<Quiver>) -> Rep {
    m.dual_over(opposite.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::io::named_object;
    use crate::quiver::{is_isomorphic, InfiniteQuiverSpec};

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn presentation_of_simple_in_a2() {
        let q = Quiver::linear_a(2);
        let s1 = Rep::simple(&q, f2(), 0);
        let pp = min_proj_presentation(&s1).unwrap();
        assert_eq!(pp.p0_vertices(), &[0]);
        assert_eq!(pp.p1_vertices(), &[1]);
        assert!(pp.is_minimal());
        let p = Rep::projective(&q, f2(), 0);
        assert!(min_proj_presentation(&p).unwrap().p1.vertices.is_empty());
        assert!(tau(&p).is_err());
    }

    #[test]
    fn tau_of_simple_in_a2() {
        let q = Quiver::linear_a(2);
        let s1 = Rep::simple(&q, f2(), 0);
        let t = tau(&s1).unwrap();
        assert_eq!(t, Rep::simple(&q, f2(), 1));
        assert!(is_isomorphic(&tau_minus(&t).unwrap(), &s1).unwrap());
    }

    #[test]
    fn tau_of_s4_presentation_in_truncation() {
        let q = InfiniteQuiverSpec::AInfZigzag.truncate(8).unwrap();
        let s4 = named_object(&q, f2(), "S4").unwrap();
        let pp = min_proj_presentation(&s4).unwrap();
        let name = |v: usize| q.vertex_name(v).to_string();
        assert_eq!(
            pp.p0_vertices()
                .iter()
                .map(|&v| name(v))
                .collect::<Vec<_>>(),
            vec!["4"]
        );
        assert_eq!(
            pp.p1_vertices()
                .iter()
                .map(|&v| name(v))
                .collect::<Vec<_>>(),
            vec!["5"]
        );
    }

    #[test]
    fn tau_of_s1_in_truncation_is_interval_2_3() {
        let q = InfiniteQuiverSpec::AInfZigzag.truncate(6).unwrap();
        let s1 = named_object(&q, f2(), "S1").unwrap();
        let t = tau(&s1).unwrap();
        assert!(is_isomorphic(&t, &named_object(&q, f2(), "[2,3]").unwrap()).unwrap());
    }
}
