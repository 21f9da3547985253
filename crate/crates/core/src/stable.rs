//! Projective covers, the ideals of s-projective and s-injective morphisms, stable Hom,
//! the radical, and minimal versions of morphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{all_vectors, Matrix, Quotient, Scalar, Subspace};
use crate::ext::ExtSpace;
use crate::quiver::{
    decompose, factor_through, factor_through_left, hom, iso_between_indecomposables, HomSpace,
    Morphism, Quiver, Rep, Summand,
};

/// `P = ⊕ P_{a_i} ↠ M`, one summand per vector of a complement of the radical.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub rep: Rep,
    pub map: Morphism,
    /// Vertex of each summand, in summand order.
    pub vertices: Vec<usize>,
    /// Generator in `M_{a_i}` of each summand.
    pub generators: Vec<Vec<Scalar>>,
    pub incls: Vec<Morphism>,
}

/// `M ↪ I = ⊕ I_{a_i}`, obtained by duality from a projective cover over the opposite quiver.
#[derive(Clone, Debug)]
pub struct InjectiveEnvelope {
    pub rep: Rep,
    pub map: Morphism,
    pub vertices: Vec<usize>,
}

/// `M_p(v)` for a path `p`.
pub fn apply_path(m: &Rep, arrows: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    arrows
        .iter()
        .fold(v.to_vec(), |acc, &a| m.map(a).mul_vec(&acc))
}

/// The morphism `P_a → M` sending the trivial path to `v ∈ M_a`.
pub fn morphism_from_projective(m: &Rep, a: usize, v: &[Scalar]) -> Morphism {
    let q = m.quiver();
    let f = m.field();
    let pa = Rep::projective(q, f, a);
    let n = q.num_vertices();
    let mut cols: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n];
    for p in q.paths_from(a) {
        cols[p.target].push(apply_path(m, &p.arrows, v));
    }
    let comps = (0..n)
        .map(|x| Matrix::from_cols(f, m.dim_at(x), &cols[x]))
        .collect();
    Morphism::new_unchecked(pa, m.clone(), comps)
}

pub fn projective_cover(m: &Rep) -> Result<ProjectiveCover> {
    let q = m.quiver();
    let f = m.field();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for a in 0..q.num_vertices() {
        let quo = Quotient::new(&Subspace::full(f, m.dim_at(a)), &m.radical_at(a))?;
        for v in quo.representatives() {
            vertices.push(a);
            generators.push(v.clone());
        }
    }
    let parts: Vec<Rep> = vertices.iter().map(|&a| Rep::projective(q, f, a)).collect();
    let sum = Rep::direct_sum_in(q, f, &parts)?;
    let mut comps: Vec<Matrix> = (0..q.num_vertices())
        .map(|x| Matrix::zeros(f, m.dim_at(x), sum.rep.dim_at(x)))
        .collect();
    for ((&a, v), pi) in vertices.iter().zip(&generators).zip(&sum.projs) {
        let g = morphism_from_projective(m, a, v).compose(pi);
        for (c, gc) in comps.iter_mut().zip(g.comps()) {
            *c = &*c + gc;
        }
    }
    let map = Morphism::new_unchecked(sum.rep.clone(), m.clone(), comps);
    debug_assert!(map.is_surjective());
    Ok(ProjectiveCover {
        rep: sum.rep,
        map,
        vertices,
        generators,
        incls: sum.incls,
    })
}

pub fn injective_envelope(m: &Rep) -> Result<InjectiveEnvelope> {
    let q = m.quiver().clone();
    let op = q.opposite();
    let dm = m.dual_over(op);
    let cover = projective_cover(&dm)?;
    let i = cover.rep.dual_over(q);
    let map = cover.map.dual_between(m, &i);
    Ok(InjectiveEnvelope {
        rep: i,
        map,
        vertices: cover.vertices,
    })
}

/// Projective iff E(M, S_a) = 0 for every vertex.
pub fn is_projective(m: &Rep) -> Result<bool> {
    let q = m.quiver();
    for a in 0..q.num_vertices() {
        if ExtSpace::new(m, &Rep::simple(q, m.field(), a))?.dim() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Injective iff E(S_a, M) = 0 for every vertex.
pub fn is_injective(m: &Rep) -> Result<bool> {
    let q = m.quiver();
    for a in 0..q.num_vertices() {
        if ExtSpace::new(&Rep::simple(q, m.field(), a), m)?.dim() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Closure {
    None,
    RightEndSource,
    LeftEndTarget,
}

/// A subspace of Hom(source, target), in the coordinates of the Hom space's echelon basis.
#[derive(Clone, Debug)]
pub struct HomSubspace {
    hom: Arc<HomSpace>,
    sub: Subspace,
    closure: Closure,
}

impl HomSubspace {
    pub fn new(hom: Arc<HomSpace>, gens: &[Morphism], closure: Closure) -> Result<Self> {
        let f = hom.source().field();
        let coords: Vec<Vec<Scalar>> = gens
            .iter()
            .map(|g| {
                hom.coords(g)
                    .ok_or_else(|| Error::Invariant("generator outside the Hom space".into()))
            })
            .collect::<Result<_>>()?;
        let sub = Subspace::span(f, hom.dim(), &coords);
        let s = Self { hom, sub, closure };
        s.check_closure()?;
        Ok(s)
    }

    pub fn from_coords(hom: Arc<HomSpace>, sub: Subspace, closure: Closure) -> Result<Self> {
        let s = Self { hom, sub, closure };
        s.check_closure()?;
        Ok(s)
    }

    pub fn full(hom: Arc<HomSpace>) -> Self {
        let f = hom.source().field();
        let sub = Subspace::full(f, hom.dim());
        Self {
            hom,
            sub,
            closure: Closure::None,
        }
    }

    fn check_closure(&self) -> Result<()> {
        let acting = match self.closure {
            Closure::None => return Ok(()),
            Closure::RightEndSource => hom(self.hom.source(), self.hom.source())?,
            Closure::LeftEndTarget => hom(self.hom.target(), self.hom.target())?,
        };
        for g in self.basis() {
            for e in acting.basis() {
                let h = match self.closure {
                    Closure::RightEndSource => g.compose(e),
                    _ => e.compose(&g),
                };
                if !self.contains(&h) {
                    return Err(Error::Invariant(
                        "subspace is not closed under the action".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn hom(&self) -> &Arc<HomSpace> {
        &self.hom
    }
    pub fn coords(&self) -> &Subspace {
        &self.sub
    }
    pub fn closure(&self) -> Closure {
        self.closure
    }
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn basis(&self) -> Vec<Morphism> {
        self.sub
            .basis()
            .iter()
            .map(|c| self.hom.combine(c))
            .collect()
    }

    pub fn contains(&self, f: &Morphism) -> bool {
        self.hom.coords(f).is_some_and(|c| self.sub.contains(&c))
    }

    pub fn contains_space(&self, other: &HomSubspace) -> bool {
        self.sub.contains_space(&other.sub)
    }

    pub fn same_space(&self, other: &HomSubspace) -> bool {
        self.sub == other.sub
    }
}

fn ideal_from_images(hs: Arc<HomSpace>, images: Vec<Morphism>) -> Result<HomSubspace> {
    HomSubspace::new(hs, &images, Closure::None)
}

/// P(C, Y): morphisms lifting through the projective cover of Y.
pub fn sproj_ideal(c: &Rep, y: &Rep) -> Result<HomSubspace> {
    sproj_ideal_in(Arc::new(hom(c, y)?))
}

pub fn sproj_ideal_in(hs: Arc<HomSpace>) -> Result<HomSubspace> {
    let cover = projective_cover(hs.target())?;
    let lifts = hom(hs.source(), &cover.rep)?;
    let images = lifts.basis().iter().map(|h| cover.map.compose(h)).collect();
    ideal_from_images(hs, images)
}

/// I(X, A): morphisms extending over the injective envelope of X.
pub fn sinj_ideal(x: &Rep, a: &Rep) -> Result<HomSubspace> {
    sinj_ideal_in(Arc::new(hom(x, a)?))
}

pub fn sinj_ideal_in(hs: Arc<HomSpace>) -> Result<HomSubspace> {
    let env = injective_envelope(hs.source())?;
    let ext = hom(&env.rep, hs.target())?;
    let images = ext.basis().iter().map(|h| h.compose(&env.map)).collect();
    ideal_from_images(hs, images)
}

/// Hom modulo an ideal component, with coset coordinates.
#[derive(Clone, Debug)]
pub struct StableHom {
    hom: Arc<HomSpace>,
    ideal: HomSubspace,
    quotient: Quotient,
}

impl StableHom {
    pub fn new(ideal: HomSubspace) -> Result<Self> {
        let hom = ideal.hom().clone();
        let f = hom.source().field();
        let quotient = Quotient::new(&Subspace::full(f, hom.dim()), ideal.coords())?;
        Ok(Self {
            hom,
            ideal,
            quotient,
        })
    }

    pub fn hom(&self) -> &Arc<HomSpace> {
        &self.hom
    }
    pub fn ideal(&self) -> &HomSubspace {
        &self.ideal
    }
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Coset coordinates of `f`.
    pub fn coset(&self, f: &Morphism) -> Vec<Scalar> {
        let c = self.hom.coords(f).expect("morphism in Hom space");
        self.quotient.project(&c).expect("full ambient")
    }

    pub fn is_zero(&self, f: &Morphism) -> bool {
        self.coset(f).iter().all(|&x| x == 0)
    }

    /// A representative morphism of the coset with the given coordinates.
    pub fn representative(&self, coords: &[Scalar]) -> Morphism {
        let field = self.hom.source().field();
        let mut v = vec![0; self.hom.dim()];
        for (r, &c) in self.quotient.representatives().iter().zip(coords) {
            for (o, &x) in v.iter_mut().zip(r) {
                *o = field.add(*o, field.mul(c, x));
            }
        }
        self.hom.combine(&v)
    }

    pub fn representatives(&self) -> Vec<Morphism> {
        self.quotient
            .representatives()
            .iter()
            .map(|r| self.hom.combine(r))
            .collect()
    }
}

/// C̲(C, Y) = Hom / P.
pub fn stable_hom(c: &Rep, y: &Rep) -> Result<StableHom> {
    StableHom::new(sproj_ideal(c, y)?)
}

/// C̄(X, A) = Hom / I.
pub fn costable_hom(x: &Rep, a: &Rep) -> Result<StableHom> {
    StableHom::new(sinj_ideal(x, a)?)
}

/// rad End(X) for an indecomposable X, as coordinates in its End basis.
pub fn local_radical(end: &HomSpace) -> Result<Subspace> {
    let x = end.source();
    let f = x.field();
    let id = Morphism::identity(x);
    let mut shifted = Vec::with_capacity(end.dim());
    let mut all_shift = true;
    for e in end.basis() {
        match f.elements().find(|&l| e.sub(&id.scale(l)).is_nilpotent()) {
            Some(l) => shifted.push(end.coords(&e.sub(&id.scale(l))).expect("in End")),
            None => {
                all_shift = false;
                break;
            }
        }
    }
    if all_shift {
        return Ok(Subspace::span(f, end.dim(), &shifted));
    }
    // residue field larger than F_p: the radical is the set of nilpotent elements
    let nil: Vec<Vec<Scalar>> = all_vectors(f, end.dim(), crate::quiver::DEFAULT_END_CAP)?
        .filter(|c| end.combine(c).is_nilpotent())
        .collect();
    Ok(Subspace::span(f, end.dim(), &nil))
}

/// rad(X, Y) via the Krull–Schmidt block description.
pub fn radical(x: &Rep, y: &Rep) -> Result<HomSubspace> {
    radical_in(Arc::new(hom(x, y)?))
}

pub fn radical_in(hs: Arc<HomSpace>) -> Result<HomSubspace> {
    let (x, y) = (hs.source().clone(), hs.target().clone());
    let f = x.field();
    let dx = decompose(&x)?;
    let dy = decompose(&y)?;
    let mut sub = Subspace::full(f, hs.dim());
    for xi in &dx.summands {
        let end = hom(&xi.rep, &xi.rep)?;
        let mut rad: Option<Subspace> = None;
        for yj in &dy.summands {
            let Some(phi) = iso_between_indecomposables(&yj.rep, &xi.rep)? else {
                continue;
            };
            let rad = match &rad {
                Some(r) => r.clone(),
                None => {
                    let r = local_radical(&end)?;
                    rad = Some(r.clone());
                    r
                }
            };
            // constraint: coordinates of φ π_j h ι_i must lie in rad End(X_i)
            let images: Vec<Vec<Scalar>> = hs
                .basis()
                .iter()
                .map(|h| {
                    end.coords(&phi.compose(&yj.proj.compose(h).compose(&xi.incl)))
                        .expect("component lies in End")
                })
                .collect();
            sub = sub.intersect(&preimage(f, hs.dim(), &images, &rad));
        }
    }
    HomSubspace::from_coords(hs, sub, Closure::None)
}

/// `{c : Σ c_k images[k] ∈ target}`.
fn preimage(
    f: crate::exactla::Fp,
    n: usize,
    images: &[Vec<Scalar>],
    target: &Subspace,
) -> Subspace {
    if n == 0 {
        return Subspace::zero(f, 0);
    }
    let m = target.ambient();
    // c ↦ reduce(Σ c_k img_k) mod target is linear; kernel of that map
    let cols: Vec<Vec<Scalar>> = images.iter().map(|v| target.reduce(v)).collect();
    let a = Matrix::from_cols(f, m, &cols);
    Subspace::span(f, n, &crate::exactla::nullspace_basis(&a))
}

/// rad(X, Y) straight from the definition: `f` with `1_Y − f∘g` invertible for all `g: Y → X`.
pub fn radical_brute_force(x: &Rep, y: &Rep, cap: u64) -> Result<HomSubspace> {
    let hs = Arc::new(hom(x, y)?);
    let back = hom(y, x)?;
    let id = Morphism::identity(y);
    let gs: Vec<Morphism> = back.elements(cap)?.collect();
    let mut members = Vec::new();
    let mut count: u128 = 0;
    for c in all_vectors(x.field(), hs.dim(), cap)? {
        let f = hs.combine(&c);
        if gs.iter().all(|g| id.sub(&f.compose(g)).is_iso()) {
            members.push(c);
            count += 1;
        }
    }
    let sub = Subspace::span(x.field(), hs.dim(), &members);
    if x.field().space_size(sub.dim()) != count {
        return Err(Error::Invariant(
            "radical members do not form a subspace".into(),
        ));
    }
    HomSubspace::from_coords(hs, sub, Closure::None)
}

/// `f′ = f ∘ incl : X′ → Y` with `f = f′ ∘ retr`, and a certificate of minimality.
#[derive(Clone, Debug)]
pub struct RightMinimal {
    pub map: Morphism,
    pub incl: Morphism,
    pub retr: Morphism,
    pub certified: bool,
}

/// `g′ = proj ∘ g : X → Y′` with `g = sect ∘ g′`, and a certificate of minimality.
#[derive(Clone, Debug)]
pub struct LeftMinimal {
    pub map: Morphism,
    pub proj: Morphism,
    pub sect: Morphism,
    pub certified: bool,
}

fn sub_sum(m: &Rep, summands: &[&Summand]) -> Result<(Rep, Morphism, Morphism)> {
    let q: &Arc<Quiver> = m.quiver();
    let f = m.field();
    let parts: Vec<Rep> = summands.iter().map(|s| s.rep.clone()).collect();
    let sum = Rep::direct_sum_in(q, f, &parts)?;
    let mut incl = Morphism::zero(&sum.rep, m);
    let mut proj = Morphism::zero(m, &sum.rep);
    for ((s, i), p) in summands.iter().zip(&sum.incls).zip(&sum.projs) {
        incl = incl.add(&s.incl.compose(p));
        proj = proj.add(&i.compose(&s.proj));
    }
    Ok((sum.rep, incl, proj))
}

/// Greedily removes indecomposable summands of the source that `f` does not need.
pub fn right_minimal_version(f: &Morphism) -> Result<RightMinimal> {
    let x = f.source();
    let d = decompose(x)?;
    let mut keep: Vec<bool> = vec![true; d.summands.len()];
    for i in 0..d.summands.len() {
        keep[i] = false;
        let kept: Vec<&Summand> = d
            .summands
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(s, _)| s)
            .collect();
        let (_, incl, _) = sub_sum(x, &kept)?;
        if factor_through(f, &f.compose(&incl))?.is_none() {
            keep[i] = true;
        }
    }
    let kept: Vec<&Summand> = d
        .summands
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(s, _)| s)
        .collect();
    let (_, incl, _) = sub_sum(x, &kept)?;
    let map = f.compose(&incl);
    let retr = factor_through(f, &map)?
        .ok_or_else(|| Error::Invariant("minimal version lost right equivalence".into()))?;
    let certified = right_minimal_certificate(&map)?;
    if !certified {
        return Err(Error::Invariant(
            "right minimal version fails the radical certificate".into(),
        ));
    }
    Ok(RightMinimal {
        map,
        incl,
        retr,
        certified,
    })
}

/// `{h ∈ End(X) : f∘h = 0} ⊆ rad End(X)`.
pub fn right_minimal_certificate(f: &Morphism) -> Result<bool> {
    let x = f.source();
    let end = Arc::new(hom(x, x)?);
    let field = x.field();
    let cols: Vec<Vec<Scalar>> = end.basis().iter().map(|h| f.compose(h).flatten()).collect();
    let len = crate::quiver::flat_len(x, f.target());
    let null = if end.dim() == 0 {
        Vec::new()
    } else {
        crate::exactla::nullspace_basis(&Matrix::from_cols(field, len, &cols))
    };
    let rad = radical_in(end)?;
    Ok(null.iter().all(|c| rad.coords().contains(c)))
}

/// `{h ∈ End(Y) : h∘g = 0} ⊆ rad End(Y)`.
pub fn left_minimal_certificate(g: &Morphism) -> Result<bool> {
    let y = g.target();
    let end = Arc::new(hom(y, y)?);
    let field = y.field();
    let cols: Vec<Vec<Scalar>> = end.basis().iter().map(|h| h.compose(g).flatten()).collect();
    let len = crate::quiver::flat_len(g.source(), y);
    let null = if end.dim() == 0 {
        Vec::new()
    } else {
        crate::exactla::nullspace_basis(&Matrix::from_cols(field, len, &cols))
    };
    let rad = radical_in(end)?;
    Ok(null.iter().all(|c| rad.coords().contains(c)))
}

/// Greedily removes indecomposable summands of the target that `g` does not need.
pub fn left_minimal_version(g: &Morphism) -> Result<LeftMinimal> {
    let y = g.target();
    let d = decompose(y)?;
    let mut keep: Vec<bool> = vec![true; d.summands.len()];
    for i in 0..d.summands.len() {
        keep[i] = false;
        let kept: Vec<&Summand> = d
            .summands
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(s, _)| s)
            .collect();
        let (_, _, proj) = sub_sum(y, &kept)?;
        if factor_through_left(g, &proj.compose(g))?.is_none() {
            keep[i] = true;
        }
    }
    let kept: Vec<&Summand> = d
        .summands
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(s, _)| s)
        .collect();
    let (_, _, proj) = sub_sum(y, &kept)?;
    let map = proj.compose(g);
    let sect = factor_through_left(g, &map)?
        .ok_or_else(|| Error::Invariant("minimal version lost left equivalence".into()))?;
    let certified = left_minimal_certificate(&map)?;
    if !certified {
        return Err(Error::Invariant(
            "left minimal version fails the radical certificate".into(),
        ));
    }
    Ok(LeftMinimal {
        map,
        proj,
        sect,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::{is_isomorphic, InfiniteQuiverSpec};

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn covers_in_a3() {
        let q = Quiver::linear_a(3);
        let s2 = Rep::simple(&q, f2(), 1);
        let c = projective_cover(&s2).unwrap();
        assert_eq!(c.vertices, vec![1]);
        assert!(c.map.is_surjective());
        let i1 = Rep::injective(&q, f2(), 2);
        let e = injective_envelope(&s2).unwrap();
        assert!(e.map.is_injective());
        assert!(is_isomorphic(&e.rep, &Rep::injective(&q, f2(), 1)).unwrap());
        assert!(is_injective(&i1).unwrap());
        assert!(!is_projective(&s2).unwrap());
        assert!(is_projective(&Rep::projective(&q, f2(), 0)).unwrap());
    }

    #[test]
    fn stable_examples_a2() {
        let q = Quiver::linear_a(2);
        let s1 = Rep::simple(&q, f2(), 0);
        let p1 = Rep::projective(&q, f2(), 0);
        assert_eq!(sproj_ideal(&s1, &s1).unwrap().dim(), 0);
        assert_eq!(stable_hom(&s1, &s1).unwrap().dim(), 1);
        assert_eq!(stable_hom(&p1, &s1).unwrap().dim(), 0);
        assert_eq!(
            sproj_ideal(&s1, &p1).unwrap().dim(),
            hom(&s1, &p1).unwrap().dim()
        );
    }

    #[test]
    fn radical_examples() {
        let q = Quiver::linear_a(2);
        let s1 = Rep::simple(&q, f2(), 0);
        let p1 = Rep::projective(&q, f2(), 0);
        assert_eq!(radical(&s1, &s1).unwrap().dim(), 0);
        assert_eq!(radical(&p1, &s1).unwrap().dim(), 1);
        let ss = s1.oplus(&s1).unwrap();
        assert_eq!(radical(&ss, &ss).unwrap().dim(), 0);
        let b = radical_brute_force(&ss, &ss, 1 << 16).unwrap();
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn minimal_versions() {
        let q = Quiver::linear_a(2);
        let s1 = Rep::simple(&q, f2(), 0);
        let s2 = Rep::simple(&q, f2(), 1);
        let p1 = Rep::projective(&q, f2(), 0);
        let cover = projective_cover(&s1).unwrap().map;
        let rm = right_minimal_version(&cover).unwrap();
        assert_eq!(rm.map.source().dims(), p1.dims());
        // add a superfluous summand mapping to zero
        let ds = Rep::direct_sum(&[p1.clone(), s2.clone()]).unwrap();
        let f = cover.compose(&ds.projs[0]);
        let rm = right_minimal_version(&f).unwrap();
        assert!(is_isomorphic(rm.map.source(), &p1).unwrap());
        let inj = hom(&s2, &p1).unwrap().basis()[0].clone();
        let lm = left_minimal_version(&ds.incls[0].compose(&inj)).unwrap();
        assert!(is_isomorphic(lm.map.target(), &p1).unwrap());
    }

    #[test]
    fn canonical_epi_in_truncated_zigzag_is_right_minimal() {
        let q = InfiniteQuiverSpec::AInfZigzag.truncate(8).unwrap();
        let v4 = q.vertex("4").unwrap();
        let p = projective_cover(&Rep::simple(&q, f2(), v4)).unwrap().map;
        assert!(right_minimal_certificate(&p).unwrap());
    }
}
