use serde::Serialize;

use super::{almost_factors_through, is_right_determined, DeterminerReport};
use crate::artheory::tau_minus;
use crate::error::{Error, Result};
use crate::exactla::{all_vectors, image_basis, nullspace_basis, Matrix, Subspace};
use crate::quiver::io::describe;
use crate::quiver::{decompose, hom, iso_indecomposable, Morphism, Rep};
use crate::stable::{
    is_injective, is_projective, left_minimal_version, right_minimal_version, LeftMinimal,
    RightMinimal,
};

/// Vertexwise kernel with its inclusion.
pub fn kernel(f: &Morphism) -> Result<(Rep, Morphism)> {
    let src = f.source();
    let bases: Vec<Matrix> = (0..src.quiver().num_vertices())
        .map(|v| Matrix::from_cols(src.field(), src.dim_at(v), &nullspace_basis(f.comp(v))))
        .collect();
    src.subrep(&bases)
}

/// Vertexwise cokernel with its projection.
pub fn cokernel(f: &Morphism) -> Result<(Rep, Morphism)> {
    let tgt = f.target();
    let subs: Vec<Subspace> = (0..tgt.quiver().num_vertices())
        .map(|v| Subspace::span(tgt.field(), tgt.dim_at(v), &image_basis(f.comp(v))))
        .collect();
    tgt.quotient(&subs)
}

#[derive(Clone, Debug)]
pub struct WeakKernel {
    pub kernel: Rep,
    pub incl: Morphism,
    pub minimal: RightMinimal,
}

#[derive(Clone, Debug)]
pub struct WeakCokernel {
    pub cokernel: Rep,
    pub proj: Morphism,
    pub minimal: LeftMinimal,
}

/// Kernel of the right minimal version of a deflation.
pub fn intrinsic_weak_kernel(f: &Morphism) -> Result<WeakKernel> {
    if !f.is_surjective() {
        return Err(Error::Precondition("morphism is not a deflation".into()));
    }
    let minimal = right_minimal_version(f)?;
    let (kernel, incl) = kernel(&minimal.map)?;
    Ok(WeakKernel {
        kernel,
        incl,
        minimal,
    })
}

/// Cokernel of the left minimal version of an inflation.
pub fn intrinsic_weak_cokernel(f: &Morphism) -> Result<WeakCokernel> {
    if !f.is_injective() {
        return Err(Error::Precondition("morphism is not an inflation".into()));
    }
    let minimal = left_minimal_version(f)?;
    let (cokernel, proj) = cokernel(&minimal.map)?;
    Ok(WeakCokernel {
        cokernel,
        proj,
        minimal,
    })
}

/// `τ⁻K` for the intrinsic weak kernel `K` (injective summands dropped), certified over `universe`.
pub fn right_determiner_from_kernel(
    f: &Morphism,
    universe: &[Rep],
    cap: u64,
) -> Result<(Rep, DeterminerReport)> {
    let k = intrinsic_weak_kernel(f)?.kernel;
    let q = f.target().quiver();
    let field = f.field();
    let mut parts = Vec::new();
    if !k.is_zero() {
        for s in decompose(&k)?.summands {
            if !is_injective(&s.rep)? {
                parts.push(tau_minus(&s.rep)?);
            }
        }
    }
    let c = Rep::direct_sum_in(q, field, &parts)?.rep;
    let report = is_right_determined(f, &c, universe, cap)?;
    if !report.verdict {
        return Err(Error::Invariant(format!(
            "τ⁻ of the intrinsic weak kernel ({}) does not determine the morphism",
            describe(&c)
        )));
    }
    Ok((c, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalDeterminer {
    #[serde(skip)]
    pub object: Rep,
    #[serde(skip)]
    pub summands: Vec<Rep>,
    pub labels: Vec<String>,
    pub determined: DeterminerReport,
    #[serde(rename = "noProjectiveSummands")]
    pub no_projective_summands: bool,
    /// Every summand is a summand of τ⁻ of the intrinsic weak kernel.
    #[serde(rename = "dividesKernelDeterminer")]
    pub divides_kernel_determiner: bool,
    pub certified: bool,
}

/// Direct sum of the universe members admitting a morphism that almost factors through `f`.
pub fn minimal_right_determiner(
    f: &Morphism,
    universe: &[Rep],
    cap: u64,
) -> Result<MinimalDeterminer> {
    let y = f.target();
    let mut summands = Vec::new();
    for c in universe {
        let hs = hom(c, y)?;
        let mut found = false;
        for v in all_vectors(c.field(), hs.dim(), cap)? {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            if almost_factors_through(&hs.combine(&v), f, universe, cap)?.holds {
                found = true;
                break;
            }
        }
        if found {
            summands.push(c.clone());
        }
    }
    let object = Rep::direct_sum_in(y.quiver(), y.field(), &summands)?.rep;
    let determined = is_right_determined(f, &object, universe, cap)?;
    let mut no_projective_summands = true;
    for s in &summands {
        no_projective_summands &= !is_projective(s)?;
    }
    let (kd, _) = right_determiner_from_kernel(f, universe, cap)?;
    let kd_parts: Vec<Rep> = if kd.is_zero() {
        Vec::new()
    } else {
        decompose(&kd)?
            .summands
            .into_iter()
            .map(|s| s.rep)
            .collect()
    };
    let mut divides = true;
    for s in &summands {
        let mut hit = false;
        for p in &kd_parts {
            hit |= iso_indecomposable(s, p)?;
        }
        divides &= hit;
    }
    let certified = determined.verdict && no_projective_summands && divides;
    Ok(MinimalDeterminer {
        labels: summands.iter().map(describe).collect(),
        object,
        summands,
        determined,
        no_projective_summands,
        divides_kernel_determiner: divides,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artheory::almost_split_ending_at;
    use crate::exactla::Fp;
    use crate::quiver::io::named_object;
    use crate::quiver::{enumerate_indecomposables, is_isomorphic, InfiniteQuiverSpec, Quiver};
    use crate::stable::projective_cover;

    #[test]
    fn a2_deflation_determiners() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(2);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let s1 = Rep::simple(&q, f, 0);
        let t = almost_split_ending_at(&s1, &u, 1 << 16).unwrap().triangle;
        let (c, _) = right_determiner_from_kernel(&t.defl, &u, 1 << 16).unwrap();
        assert!(is_isomorphic(&c, &s1).unwrap());
        let m = minimal_right_determiner(&t.defl, &u, 1 << 16).unwrap();
        assert!(m.certified);
        assert_eq!(m.labels, vec!["S1".to_string()]);
        let id = Morphism::identity(&s1);
        assert!(intrinsic_weak_kernel(&id).unwrap().kernel.is_zero());
        assert!(minimal_right_determiner(&id, &u, 1 << 16)
            .unwrap()
            .summands
            .is_empty());
    }

    #[test]
    fn weak_kernel_of_p4_to_s4() {
        let f = Fp::new(2).unwrap();
        for n in [6, 8] {
            let q = InfiniteQuiverSpec::AInfZigzag.truncate(n).unwrap();
            let s4 = named_object(&q, f, "S4").unwrap();
            let p = projective_cover(&s4).unwrap().map;
            let k = intrinsic_weak_kernel(&p).unwrap().kernel;
            assert!(is_isomorphic(&k, &named_object(&q, f, "P5").unwrap()).unwrap());
            // padding the source with an identity summand does not change the kernel
            let z = named_object(&q, f, "S2").unwrap();
            let sum = Rep::direct_sum(&[p.source().clone(), z.clone()]).unwrap();
            let padded = p.compose(&sum.projs[0]);
            let k2 = intrinsic_weak_kernel(&padded).unwrap().kernel;
            assert!(is_isomorphic(&k2, &k).unwrap());
        }
    }
}
