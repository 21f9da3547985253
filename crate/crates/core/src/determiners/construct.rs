use std::collections::HashSet;
use std::sync::Arc;

use super::kernel::kernel;
use super::{is_right_determined, DeterminerReport};
use crate::artheory::{tau_on_morphism, PairingWitness};
use crate::error::{Error, Result};
use crate::exactla::{all_vectors, nullspace_basis, Matrix, Scalar, Subspace};
use crate::ext::{realize, ExtClass, ExtSpace, STriangle};
use crate::quiver::{decompose, hom, iso_indecomposable, HomSpace, Rep};
use crate::stable::{sproj_ideal_in, Closure, HomSubspace};

/// A right End(C)-submodule of Hom(C, Y) containing P(C, Y).
#[derive(Clone, Debug)]
pub struct SubmoduleH {
    space: HomSubspace,
}

impl SubmoduleH {
    pub fn new(hom: Arc<HomSpace>, coords: Subspace) -> Result<Self> {
        let space = HomSubspace::from_coords(hom.clone(), coords, Closure::RightEndSource)?;
        let p = sproj_ideal_in(hom)?;
        if !space.contains_space(&p) {
            return Err(Error::Precondition(
                "submodule does not contain P(C,Y)".into(),
            ));
        }
        Ok(Self { space })
    }

    /// Closure of the span of `gens` under End(C) and P(C, Y).
    pub fn generated_by(hom: Arc<HomSpace>, gens: &[crate::quiver::Morphism]) -> Result<Self> {
        let c = hom.source().clone();
        let end = crate::quiver::hom(&c, &c)?;
        let p = sproj_ideal_in(hom.clone())?;
        let mut v: Vec<Vec<Scalar>> = p.coords().basis().to_vec();
        for g in gens {
            let gc = hom
                .coords(g)
                .ok_or_else(|| Error::Precondition("generator is not a morphism C → Y".into()))?;
            v.push(gc);
            for e in end.basis() {
                v.push(hom.coords(&g.compose(e)).expect("in Hom"));
            }
        }
        let field = c.field();
        Self::new(hom.clone(), Subspace::span(field, hom.dim(), &v))
    }

    pub fn space(&self) -> &HomSubspace {
        &self.space
    }
    pub fn source(&self) -> &Rep {
        self.space.hom().source()
    }
    pub fn target(&self) -> &Rep {
        self.space.hom().target()
    }
}

/// Every right End(C)-submodule of Hom(C, Y) containing P(C, Y), found by exhausting
/// the subspaces between P and Hom.
pub fn enumerate_submodules(c: &Rep, y: &Rep, cap: u64) -> Result<Vec<SubmoduleH>> {
    let hs = Arc::new(hom(c, y)?);
    let field = c.field();
    let p = sproj_ideal_in(hs.clone())?.coords().clone();
    let vectors: Vec<Vec<Scalar>> = all_vectors(field, hs.dim(), cap)?.collect();
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut order = vec![p.clone()];
    seen.insert(p);
    let mut i = 0;
    while i < order.len() {
        let s = order[i].clone();
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let t = s.sum(&Subspace::span(field, hs.dim(), std::slice::from_ref(v)));
            if seen.insert(t.clone()) {
                order.push(t);
            }
        }
        i += 1;
    }
    order.sort_by_key(|s| s.dim());
    let mut out = Vec::new();
    for s in order {
        match SubmoduleH::new(hs.clone(), s) {
            Ok(h) => out.push(h),
            Err(Error::Invariant(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `H^⊥ = {μ ∈ E(Y, τC) : γ(h*μ) = 0 for all h ∈ H}` in the coordinates of `ext`.
pub fn perpendicular(h: &SubmoduleH, w: &PairingWitness, ext: &ExtSpace) -> Result<Subspace> {
    let field = ext.base().field();
    let hb = h.space.basis();
    if hb.is_empty() {
        return Ok(Subspace::full(field, ext.dim()));
    }
    let mut m = Matrix::zeros(field, hb.len(), ext.dim());
    for (r, hk) in hb.iter().enumerate() {
        for (s, mu) in ext.basis().iter().enumerate() {
            m.set(r, s, w.gamma(&mu.pullback(hk)?));
        }
    }
    Ok(Subspace::span(field, ext.dim(), &nullspace_basis(&m)))
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub triangle: STriangle,
    /// Generators of `H^⊥` as a module under `μ·f = τ(f)⋆μ`, in Ext coordinates.
    pub generators: Vec<Vec<Scalar>>,
    pub kernel_in_add: bool,
    pub image_matches: bool,
    pub determined: DeterminerReport,
}

fn close_under(span: Subspace, actions: &[Matrix]) -> Subspace {
    let field = span.field();
    let n = span.ambient();
    let mut s = span;
    loop {
        let mut v: Vec<Vec<Scalar>> = s.basis().to_vec();
        for b in s.basis() {
            for a in actions {
                v.push(a.mul_vec(b));
            }
        }
        let t = Subspace::span(field, n, &v);
        if t == s {
            return s;
        }
        s = t;
    }
}

/// Builds a deflation `α` onto Y with kernel in add(τC), `Im Hom(C, α) = H` and `α` right C-determined.
pub fn construct_deflation_for_submodule(
    h: &SubmoduleH,
    w: Option<&PairingWitness>,
    universe: &[Rep],
    cap: u64,
) -> Result<Construction> {
    let c = h.source();
    let y = h.target();
    let Some(w) = w else {
        return construct_for_projective(h, universe, cap);
    };
    if c != &w.end {
        return Err(Error::Precondition(
            "witness does not end at the submodule's source".into(),
        ));
    }
    let field = c.field();
    let ext = ExtSpace::new(y, &w.start)?;
    let perp = perpendicular(h, w, &ext)?;
    let end = hom(c, c)?;
    let actions: Vec<Matrix> = end
        .basis()
        .iter()
        .map(|e| {
            let r = tau_on_morphism(w, w, e)?.rep();
            ext.map_matrix(&ext, |mu| mu.pushout(&r))
        })
        .collect::<Result<_>>()?;
    let mut span = Subspace::zero(field, ext.dim());
    let mut generators = Vec::new();
    for b in perp.basis() {
        if span.contains(b) {
            continue;
        }
        generators.push(b.clone());
        span = close_under(
            span.sum(&Subspace::span(field, ext.dim(), std::slice::from_ref(b))),
            &actions,
        );
    }
    if !perp.contains_space(&span) {
        return Err(Error::Invariant(
            "perpendicular space is not closed under the End(C) action".into(),
        ));
    }
    let n = generators.len();
    let parts = vec![w.start.clone(); n];
    let sum = Rep::direct_sum_in(y.quiver(), field, &parts)?;
    let mut class = ExtClass::zero(y, &sum.rep);
    for (g, incl) in generators.iter().zip(&sum.incls) {
        class = class.add(&ext.class(g).pushout(incl)?);
    }
    let triangle = realize(&class);

    let (k, _) = kernel(&triangle.defl)?;
    let mut kernel_in_add = true;
    if !k.is_zero() {
        for s in decompose(&k)?.summands {
            kernel_in_add &= iso_indecomposable(&s.rep, &w.start)?;
        }
    }
    let hs = h.space.hom();
    let lifts = hom(c, &triangle.middle)?;
    let img: Vec<Vec<Scalar>> = lifts
        .basis()
        .iter()
        .map(|u| hs.coords(&triangle.defl.compose(u)).expect("in Hom"))
        .collect();
    let image_matches = Subspace::span(field, hs.dim(), &img) == *h.space.coords();
    let determined = is_right_determined(&triangle.defl, c, universe, cap)?;
    if !(kernel_in_add && image_matches && determined.verdict) {
        return Err(Error::Invariant(format!(
            "construction failed certification: kernel in add(τC) {kernel_in_add}, image = H {image_matches}, determined {}",
            determined.verdict
        )));
    }
    Ok(Construction {
        triangle,
        generators,
        kernel_in_add,
        image_matches,
        determined,
    })
}

// τC = 0: H = Hom(C, Y) is forced and α = Id_Y
fn construct_for_projective(h: &SubmoduleH, universe: &[Rep], cap: u64) -> Result<Construction> {
    let (c, y) = (h.source(), h.target());
    if !crate::stable::is_projective(c)? {
        return Err(Error::Precondition(
            "a non-projective source needs a pairing witness".into(),
        ));
    }
    let zero = Rep::zero(y.quiver(), y.field());
    let triangle = realize(&ExtClass::zero(y, &zero));
    let image_matches = h.space.coords().is_full();
    let determined = is_right_determined(&triangle.defl, c, universe, cap)?;
    if !(image_matches && determined.verdict) {
        return Err(Error::Invariant(
            "construction over a projective source failed certification".into(),
        ));
    }
    Ok(Construction {
        triangle,
        generators: Vec::new(),
        kernel_in_add: true,
        image_matches,
        determined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::{enumerate_indecomposables, Quiver};
    use crate::stable::is_projective;

    #[test]
    fn a3_sweep() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(3);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let mut cases = 0;
        for c in &u {
            let w = if is_projective(c).unwrap() {
                None
            } else {
                Some(PairingWitness::right(c, &u, 1 << 16).unwrap())
            };
            for y in &u {
                for h in enumerate_submodules(c, y, 1 << 16).unwrap() {
                    construct_deflation_for_submodule(&h, w.as_ref(), &u, 1 << 16).unwrap();
                    cases += 1;
                }
            }
        }
        assert!(cases > 0);
    }
}
