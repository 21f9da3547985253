use super::{ExtClass, ExtSpace};
use crate::error::{Error, Result};
use crate::exactla::{solve, Matrix, Scalar};
use crate::quiver::{factor_through, hom, is_retraction, is_section, Morphism, Rep};

/// A short exact sequence `0 → A → B → C → 0` with its class in E(C, A).
#[derive(Clone, Debug)]
pub struct STriangle {
    pub fiber: Rep,
    pub middle: Rep,
    pub base: Rep,
    pub infl: Morphism,
    pub defl: Morphism,
    pub cls: ExtClass,
}

/// A morphism of triangles `(a, b, c)` with both squares commuting.
#[derive(Clone, Debug)]
pub struct STriangleMorphism {
    pub a: Morphism,
    pub b: Morphism,
    pub c: Morphism,
}

/// The middle term `B_x = A_x ⊕ C_x` with `B_α = [[A_α, c_α], [0, C_α]]`.
pub fn realize(d: &ExtClass) -> STriangle {
    let (a, c) = (d.fiber(), d.base());
    let f = a.field();
    let q = a.quiver();
    let dims: Vec<usize> = a.dims().iter().zip(c.dims()).map(|(x, y)| x + y).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
            m.set_block(0, 0, a.map(ai));
            m.set_block(0, a.dim_at(arr.source), &d.cocycle()[ai]);
            m.set_block(a.dim_at(arr.target), a.dim_at(arr.source), c.map(ai));
            m
        })
        .collect();
    let b = Rep::new_unchecked(q.clone(), f, dims.clone(), maps);
    let n = q.num_vertices();
    let mut ic = Vec::with_capacity(n);
    let mut dc = Vec::with_capacity(n);
    for v in 0..n {
        let mut i = Matrix::zeros(f, dims[v], a.dim_at(v));
        i.set_block(0, 0, &Matrix::identity(f, a.dim_at(v)));
        let mut p = Matrix::zeros(f, c.dim_at(v), dims[v]);
        p.set_block(0, a.dim_at(v), &Matrix::identity(f, c.dim_at(v)));
        ic.push(i);
        dc.push(p);
    }
    STriangle {
        fiber: a.clone(),
        middle: b.clone(),
        base: c.clone(),
        infl: Morphism::new_unchecked(a.clone(), b.clone(), ic),
        defl: Morphism::new_unchecked(b, c.clone(), dc),
        cls: d.clone(),
    }
}

impl STriangle {
    /// Wraps an exact sequence `A → B → C`, verifying exactness and reading off its class.
    pub fn from_sequence(infl: Morphism, defl: Morphism) -> Result<Self> {
        if infl.target() != defl.source() {
            return Err(Error::DimensionMismatch(
                "inflation and deflation do not compose".into(),
            ));
        }
        if !infl.is_injective() {
            return Err(Error::Precondition("inflation is not injective".into()));
        }
        if !defl.is_surjective() {
            return Err(Error::Precondition("deflation is not surjective".into()));
        }
        if !defl.compose(&infl).is_zero() {
            return Err(Error::Precondition("composite is not zero".into()));
        }
        let b = infl.target();
        for v in 0..b.quiver().num_vertices() {
            if b.dim_at(v) != infl.source().dim_at(v) + defl.target().dim_at(v) {
                return Err(Error::Precondition(
                    "sequence is not exact in the middle".into(),
                ));
            }
        }
        let cls = class_of_sequence(&infl, &defl)?;
        Ok(Self {
            fiber: infl.source().clone(),
            middle: b.clone(),
            base: defl.target().clone(),
            infl,
            defl,
            cls,
        })
    }

    /// Recomputes the class from the maps (independent of the stored `cls`).
    pub fn class_of(&self) -> Result<ExtClass> {
        class_of_sequence(&self.infl, &self.defl)
    }

    pub fn is_split(&self) -> Result<bool> {
        self.cls.is_split()
    }
}

/// Vertexwise section `s_x` of the deflation and retraction `r_x` of `[infl_x | s_x]`;
/// the cocycle is `r_y B_α s_x`.
fn class_of_sequence(infl: &Morphism, defl: &Morphism) -> Result<ExtClass> {
    let (a, b, c) = (infl.source(), infl.target(), defl.target());
    let f = a.field();
    let q = a.quiver();
    let n = q.num_vertices();
    let mut sections = Vec::with_capacity(n);
    let mut retractions = Vec::with_capacity(n);
    for v in 0..n {
        let s = solve(defl.comp(v), &Matrix::identity(f, c.dim_at(v)))?
            .ok_or_else(|| Error::Precondition("deflation is not surjective".into()))?;
        let t = Matrix::hstack(&[infl.comp(v), &s])?;
        let inv = t
            .inverse()
            .ok_or_else(|| Error::Precondition("sequence is not exact".into()))?;
        retractions.push(inv.block(0, 0, a.dim_at(v), b.dim_at(v)));
        sections.push(s);
    }
    let cocycle = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arr)| &(&retractions[arr.target] * b.map(ai)) * &sections[arr.source])
        .collect();
    ExtClass::new(c.clone(), a.clone(), cocycle)
}

/// Completes `(a, c)` to a morphism of triangles when `a⋆δ = c*δ′`; `None` otherwise.
pub fn complete_square(
    t: &STriangle,
    t2: &STriangle,
    a: &Morphism,
    c: &Morphism,
) -> Result<Option<STriangleMorphism>> {
    if a.source().dims() != t.fiber.dims()
        || a.target().dims() != t2.fiber.dims()
        || c.source().dims() != t.base.dims()
        || c.target().dims() != t2.base.dims()
    {
        return Err(Error::DimensionMismatch(
            "square endpoints do not match the triangles".into(),
        ));
    }
    let space = ExtSpace::new(&t.base, &t2.fiber)?;
    if !space.equal(&t.cls.pushout(a)?, &t2.cls.pullback(c)?) {
        return Ok(None);
    }
    let f = a.field();
    let hs = hom(&t.middle, &t2.middle)?;
    let rhs: Vec<Scalar> = t2
        .infl
        .compose(a)
        .flatten()
        .into_iter()
        .chain(c.compose(&t.defl).flatten())
        .collect();
    let b = if hs.dim() == 0 {
        if rhs.iter().all(|&x| x == 0) {
            Some(hs.zero())
        } else {
            None
        }
    } else {
        let cols: Vec<Vec<Scalar>> = hs
            .basis()
            .iter()
            .map(|h| {
                h.compose(&t.infl)
                    .flatten()
                    .into_iter()
                    .chain(t2.defl.compose(h).flatten())
                    .collect()
            })
            .collect();
        let m = Matrix::from_cols(f, rhs.len(), &cols);
        solve(&m, &Matrix::column_vector(f, &rhs))?.map(|x| hs.combine(&x.col(0)))
    };
    match b {
        Some(b) => Ok(Some(STriangleMorphism {
            a: a.clone(),
            b,
            c: c.clone(),
        })),
        None => Err(Error::Invariant(
            "classes agree but no middle map completes the square".into(),
        )),
    }
}

/// Outcome of lifting `g: T → C` through a deflation, decided two ways.
#[derive(Clone, Debug)]
pub struct DeflationFactor {
    pub witness: Option<Morphism>,
    pub pullback_split: bool,
}

/// Lifts `g` through `t.defl`; the linear solve and the split test of `g*δ` must agree.
pub fn factor_through_deflation(g: &Morphism, t: &STriangle) -> Result<DeflationFactor> {
    let witness = factor_through(g, &t.defl)?;
    let pullback_split = t.cls.pullback(g)?.is_split()?;
    if witness.is_some() != pullback_split {
        return Err(Error::Invariant(
            "lifting through a deflation disagrees with splitting of the pullback".into(),
        ));
    }
    Ok(DeflationFactor {
        witness,
        pullback_split,
    })
}

/// The triangle realizing `g*δ` with its comparison morphism `(Id, b, g)` to `t`.
pub fn pullback_triangle(t: &STriangle, g: &Morphism) -> Result<(STriangle, STriangleMorphism)> {
    let top = realize(&t.cls.pullback(g)?);
    let m = complete_square(&top, t, &Morphism::identity(&t.fiber), g)?
        .ok_or_else(|| Error::Invariant("pullback square does not complete".into()))?;
    Ok((top, m))
}

/// The triangle realizing `a⋆δ` with its comparison morphism `(a, b, Id)` from `t`.
pub fn pushout_triangle(t: &STriangle, a: &Morphism) -> Result<(STriangle, STriangleMorphism)> {
    let bottom = realize(&t.cls.pushout(a)?);
    let m = complete_square(t, &bottom, a, &Morphism::identity(&t.base))?
        .ok_or_else(|| Error::Invariant("pushout square does not complete".into()))?;
    Ok((bottom, m))
}

/// Both halves of the split criterion for a realized triangle.
pub fn split_criteria(t: &STriangle) -> Result<(bool, bool, bool)> {
    Ok((is_section(&t.infl)?, t.is_split()?, is_retraction(&t.defl)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::{is_isomorphic, Quiver};

    fn a2() -> (Rep, Rep, Rep) {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(2);
        (
            Rep::simple(&q, f, 0),
            Rep::simple(&q, f, 1),
            Rep::projective(&q, f, 0),
        )
    }

    #[test]
    fn nonsplit_extension_of_simples() {
        let (s1, s2, p1) = a2();
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let t = realize(&e.basis()[0]);
        assert!(is_isomorphic(&t.middle, &p1).unwrap());
        assert!(!t.is_split().unwrap());
        assert_eq!(split_criteria(&t).unwrap(), (false, false, false));
        let z = realize(&ExtClass::zero(&s1, &s2));
        assert!(is_isomorphic(&z.middle, &s1.oplus(&s2).unwrap()).unwrap());
        assert_eq!(split_criteria(&z).unwrap(), (true, true, true));
    }

    #[test]
    fn class_roundtrip() {
        let (s1, s2, _) = a2();
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let t = realize(&e.basis()[0]);
        assert!(e.equal(&t.class_of().unwrap(), &e.basis()[0]));
    }

    #[test]
    fn incompatible_square_is_absent() {
        let (s1, s2, _) = a2();
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let t = realize(&e.basis()[0]);
        let id1 = Morphism::identity(&s1);
        let zero2 = Morphism::zero(&s2, &s2);
        assert!(complete_square(&t, &t, &zero2, &id1).unwrap().is_none());
        let m = complete_square(&t, &t, &Morphism::identity(&s2), &id1)
            .unwrap()
            .unwrap();
        assert!(m.b.is_iso());
    }

    #[test]
    fn identity_on_base_lifts_iff_split() {
        let (s1, s2, _) = a2();
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let t = realize(&e.basis()[0]);
        let r = factor_through_deflation(&Morphism::identity(&s1), &t).unwrap();
        assert!(r.witness.is_none());
    }
}
