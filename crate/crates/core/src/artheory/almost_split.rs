use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{all_vectors, nullspace_basis, Matrix, Scalar, Subspace};
use crate::ext::{realize, ExtSpace, STriangle};
use crate::quiver::{hom, is_indecomposable, is_retraction, is_section, HomSpace, Rep};
use crate::stable::{is_injective, is_projective, radical};

/// One line of a validation transcript.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub kind: String,
    #[serde(rename = "universeSize")]
    pub universe_size: usize,
    pub examined: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AlmostSplitReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl AlmostSplitReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct AlmostSplitTriangle {
    pub triangle: STriangle,
    pub report: AlmostSplitReport,
}

fn check(kind: &str, n: usize, examined: u64, witness: Option<String>) -> Check {
    Check {
        kind: kind.into(),
        universe_size: n,
        examined,
        pass: witness.is_none(),
        witness,
    }
}

fn coords_span(hs: &HomSpace, ms: impl Iterator<Item = crate::quiver::Morphism>) -> Subspace {
    let f = hs.source().field();
    let v: Vec<Vec<Scalar>> = ms
        .map(|m| hs.coords(&m).expect("composite lies in the Hom space"))
        .collect();
    Subspace::span(f, hs.dim(), &v)
}

/// Exhaustive test of the almost split conditions over `universe`:
/// every non-section out of the fiber kills δ (and factors through the inflation),
/// every non-retraction into the base kills δ (and factors through the deflation).
pub fn check_almost_split(t: &STriangle, universe: &[Rep], cap: u64) -> Result<AlmostSplitReport> {
    let n = universe.len();
    let mut checks = Vec::new();
    let split = t.is_split()?;
    checks.push(check(
        "nonsplit",
        n,
        1,
        split.then(|| "class is zero".to_string()),
    ));
    let ind = |m: &Rep| -> Result<bool> { Ok(!m.is_zero() && is_indecomposable(m)?) };
    checks.push(check(
        "fiber-indecomposable",
        n,
        1,
        (!ind(&t.fiber)?).then(|| format!("fiber {:?}", t.fiber.dims())),
    ));
    checks.push(check(
        "base-indecomposable",
        n,
        1,
        (!ind(&t.base)?).then(|| format!("base {:?}", t.base.dims())),
    ));
    let f = t.fiber.field();

    // (AS1) and the left almost split form
    let (mut ex1, mut w1, mut wl) = (0u64, None, None);
    for (u, a2) in universe.iter().enumerate() {
        let hs = hom(&t.fiber, a2)?;
        if hs.dim() == 0 {
            ex1 += 1;
            continue;
        }
        let ext = ExtSpace::new(&t.base, a2)?;
        let push = Matrix::from_cols(
            f,
            ext.dim(),
            &hs.basis()
                .iter()
                .map(|a| Ok(ext.coords(&t.cls.pushout(a)?)))
                .collect::<Result<Vec<_>>>()?,
        );
        let through = coords_span(
            &hs,
            hom(&t.middle, a2)?
                .basis()
                .iter()
                .map(|h| h.compose(&t.infl)),
        );
        for c in all_vectors(f, hs.dim(), cap)? {
            ex1 += 1;
            let img = push.mul_vec(&c);
            let killed = img.iter().all(|&x| x == 0);
            if killed != through.contains(&c) && wl.is_none() {
                wl = Some(format!("universe[{u}]: pushout vanishing disagrees with factoring through the inflation"));
            }
            if !killed && w1.is_none() && !is_section(&hs.combine(&c))? {
                w1 = Some(format!(
                    "universe[{u}] {:?}: non-section a with a⋆δ ≠ 0, coords {c:?}",
                    a2.dims()
                ));
            }
        }
    }
    checks.push(check("AS1", n, ex1, w1));
    checks.push(check("left-almost-split", n, ex1, wl));

    // (AS2) and the right almost split form
    let (mut ex2, mut w2, mut wr) = (0u64, None, None);
    for (u, c2) in universe.iter().enumerate() {
        let hs = hom(c2, &t.base)?;
        if hs.dim() == 0 {
            ex2 += 1;
            continue;
        }
        let ext = ExtSpace::new(c2, &t.fiber)?;
        let pull = Matrix::from_cols(
            f,
            ext.dim(),
            &hs.basis()
                .iter()
                .map(|c| Ok(ext.coords(&t.cls.pullback(c)?)))
                .collect::<Result<Vec<_>>>()?,
        );
        let through = coords_span(
            &hs,
            hom(c2, &t.middle)?
                .basis()
                .iter()
                .map(|h| t.defl.compose(h)),
        );
        for c in all_vectors(f, hs.dim(), cap)? {
            ex2 += 1;
            let img = pull.mul_vec(&c);
            let killed = img.iter().all(|&x| x == 0);
            if killed != through.contains(&c) && wr.is_none() {
                wr = Some(format!("universe[{u}]: pullback vanishing disagrees with factoring through the deflation"));
            }
            if !killed && w2.is_none() && !is_retraction(&hs.combine(&c))? {
                w2 = Some(format!(
                    "universe[{u}] {:?}: non-retraction c with c*δ ≠ 0, coords {c:?}",
                    c2.dims()
                ));
            }
        }
    }
    checks.push(check("AS2", n, ex2, w2));
    checks.push(check("right-almost-split", n, ex2, wr));

    let pass = checks.iter().all(|c| c.pass);
    Ok(AlmostSplitReport { checks, pass })
}

/// `{δ ∈ E(C,A) : f*δ = 0 ∀ f ∈ rad End C, a⋆δ = 0 ∀ a ∈ rad End A}` in the coordinates of `ext`.
pub fn bisocle(ext: &ExtSpace) -> Result<Subspace> {
    let (c, a) = (ext.base(), ext.fiber());
    let f = c.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in radical(c, c)?.basis() {
        let m = ext.map_matrix(ext, |d| d.pullback(&r))?;
        rows.extend(m.to_rows());
    }
    for r in radical(a, a)?.basis() {
        let m = ext.map_matrix(ext, |d| d.pushout(&r))?;
        rows.extend(m.to_rows());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(f, ext.dim()));
    }
    let data: Vec<Scalar> = rows.concat();
    let m = Matrix::from_vec(f, rows.len(), ext.dim(), data)?;
    Ok(Subspace::span(f, ext.dim(), &nullspace_basis(&m)))
}

/// Realizes a nonzero bi-socle element of E(c, a) and validates it; `None` if none passes.
pub fn almost_split_with_fiber(
    c: &Rep,
    a: &Rep,
    universe: &[Rep],
    cap: u64,
) -> Result<Option<AlmostSplitTriangle>> {
    let ext = ExtSpace::new(c, a)?;
    if ext.dim() == 0 {
        return Ok(None);
    }
    let soc = bisocle(&ext)?;
    for v in soc.basis() {
        let t = realize(&ext.class(v));
        let report = check_almost_split(&t, universe, cap)?;
        if report.pass {
            return Ok(Some(AlmostSplitTriangle {
                triangle: t,
                report,
            }));
        }
    }
    Ok(None)
}

/// Scans `universe` for a fiber carrying an almost split extension ending at `c`.
pub fn almost_split_ending_at(c: &Rep, universe: &[Rep], cap: u64) -> Result<AlmostSplitTriangle> {
    if c.is_zero() || !is_indecomposable(c)? {
        return Err(Error::Precondition("object is not indecomposable".into()));
    }
    if is_projective(c)? {
        return Err(Error::Precondition(
            "no almost split triangle ends at a projective".into(),
        ));
    }
    for a in universe {
        if let Some(t) = almost_split_with_fiber(c, a, universe, cap)? {
            return Ok(t);
        }
    }
    Err(Error::Invariant(
        "no almost split candidate survives validation".into(),
    ))
}

/// Scans `universe` for a base carrying an almost split extension starting at `a`.
pub fn almost_split_starting_at(
    a: &Rep,
    universe: &[Rep],
    cap: u64,
) -> Result<AlmostSplitTriangle> {
    if a.is_zero() || !is_indecomposable(a)? {
        return Err(Error::Precondition("object is not indecomposable".into()));
    }
    if is_injective(a)? {
        return Err(Error::Precondition(
            "no almost split triangle starts at an injective".into(),
        ));
    }
    for c in universe {
        if let Some(t) = almost_split_with_fiber(c, a, universe, cap)? {
            return Ok(t);
        }
    }
    Err(Error::Invariant(
        "no almost split candidate survives validation".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::ext::ExtClass;
    use crate::quiver::io::named_object;
    use crate::quiver::{enumerate_indecomposables, is_isomorphic, Quiver};

    #[test]
    fn a2_triangle() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(2);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let s1 = Rep::simple(&q, f, 0);
        let t = almost_split_ending_at(&s1, &u, 1 << 16).unwrap();
        assert!(is_isomorphic(&t.triangle.fiber, &Rep::simple(&q, f, 1)).unwrap());
        assert!(is_isomorphic(&t.triangle.middle, &Rep::projective(&q, f, 0)).unwrap());
        assert!(t.report.pass);
        let p1 = Rep::projective(&q, f, 0);
        assert!(matches!(
            almost_split_ending_at(&p1, &u, 1 << 16),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn split_triangle_fails() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(2);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let t = realize(&ExtClass::zero(
            &Rep::simple(&q, f, 0),
            &Rep::simple(&q, f, 1),
        ));
        let r = check_almost_split(&t, &u, 1 << 16).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap().kind, "nonsplit");
    }

    #[test]
    fn zigzag_a3_middle_of_injective_hull() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::zigzag_a(3);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let m = named_object(&q, f, "[1,3]").unwrap();
        let t = almost_split_ending_at(&m, &u, 1 << 16).unwrap();
        assert!(is_isomorphic(&t.triangle.fiber, &Rep::simple(&q, f, 1)).unwrap());
    }
}
