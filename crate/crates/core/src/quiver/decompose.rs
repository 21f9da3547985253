use std::cell::RefCell;
use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::morphism::{hom, HomSpace, Morphism};
use super::rep::Rep;
use crate::error::{Error, Result};
use crate::exactla::{image_basis, nullspace_basis, random_vector, Matrix};

/// Default bound on `|End(M)|` for exhaustive locality checks.
pub const DEFAULT_END_CAP: u64 = 4096;
const RANDOM_SAMPLES: usize = 4000;

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Rep,
    pub incl: Morphism,
    pub proj: Morphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// False when some locality verdict came from random sampling rather than exhaustion.
    pub certified: bool,
}

impl Decomposition {
    /// Isomorphism classes with multiplicities, in order of first appearance.
    pub fn classes(&self) -> Vec<(Rep, usize)> {
        let mut out: Vec<(Rep, usize)> = Vec::new();
        for s in &self.summands {
            match out
                .iter_mut()
                .find(|(r, _)| iso_indecomposable(r, &s.rep).unwrap_or(false))
            {
                Some(entry) => entry.1 += 1,
                None => out.push((s.rep.clone(), 1)),
            }
        }
        out
    }
}

fn splits(f: &Morphism, n: usize) -> bool {
    let r = f.pow(n as u64).rank();
    r > 0 && r < n
}

/// An endomorphism that is neither nilpotent nor invertible, if one is found.
/// Returns the element and whether the search was exhaustive.
pub fn find_splitting_endo(end: &HomSpace, cap: u64) -> (Option<Morphism>, bool) {
    let m = end.source();
    let n = m.total_dim();
    let f = m.field();
    let id = Morphism::identity(m);
    let basis = end.basis();
    for e in basis {
        for lambda in f.elements() {
            let c = e.sub(&id.scale(lambda));
            if splits(&c, n) {
                return (Some(c), true);
            }
        }
    }
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let s = a.add(b);
            if splits(&s, n) {
                return (Some(s), true);
            }
        }
        for b in basis {
            let s = a.compose(b);
            if splits(&s, n) {
                return (Some(s), true);
            }
        }
    }
    if let Ok(all) = end.elements(cap) {
        for g in all {
            if splits(&g, n) {
                return (Some(g), true);
            }
        }
        return (None, true);
    }
    let seed = 0x5eed_u64 ^ (n as u64) << 8 ^ end.dim() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SAMPLES {
        let g = end.combine(&random_vector(f, end.dim(), &mut rng));
        if splits(&g, n) {
            return (Some(g), true);
        }
    }
    (None, false)
}

/// Fitting split along `f`: `M = im f^n ⊕ ker f^n`.
fn fitting_split(m: &Rep, f: &Morphism) -> Result<(Summand, Summand)> {
    let n = m.total_dim();
    let g = f.pow(n as u64);
    let field = m.field();
    let q = m.quiver();
    let mut ims = Vec::new();
    let mut kers = Vec::new();
    let mut proj_im = Vec::new();
    let mut proj_ker = Vec::new();
    for v in 0..q.num_vertices() {
        let d = m.dim_at(v);
        let im = Matrix::from_cols(field, d, &image_basis(g.comp(v)));
        let ker = Matrix::from_cols(field, d, &nullspace_basis(g.comp(v)));
        let both = Matrix::hstack(&[&im, &ker])?;
        let inv = both
            .inverse()
            .ok_or_else(|| Error::Invariant("Fitting decomposition is not a direct sum".into()))?;
        proj_im.push(inv.block(0, 0, im.cols(), d));
        proj_ker.push(inv.block(im.cols(), 0, ker.cols(), d));
        ims.push(im);
        kers.push(ker);
    }
    let (a, ia) = m.subrep(&ims)?;
    let (b, ib) = m.subrep(&kers)?;
    let pa = Morphism::new_unchecked(m.clone(), a.clone(), proj_im);
    let pb = Morphism::new_unchecked(m.clone(), b.clone(), proj_ker);
    Ok((
        Summand {
            rep: a,
            incl: ia,
            proj: pa,
        },
        Summand {
            rep: b,
            incl: ib,
            proj: pb,
        },
    ))
}

thread_local! {
    static CACHE: RefCell<HashMap<Rep, Decomposition>> = RefCell::new(HashMap::new());
}

/// Krull–Schmidt decomposition by repeated Fitting splitting (memoized per thread).
pub fn decompose(m: &Rep) -> Result<Decomposition> {
    if let Some(d) = CACHE.with(|c| c.borrow().get(m).cloned()) {
        return Ok(rebase(d, m));
    }
    let d = decompose_with(m, DEFAULT_END_CAP)?;
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 20_000 {
            c.clear();
        }
        c.insert(m.clone(), d.clone());
    });
    Ok(d)
}

// cached entries may hang off an equal but distinct copy of `m`
fn rebase(d: Decomposition, m: &Rep) -> Decomposition {
    let summands = d
        .summands
        .into_iter()
        .map(|s| Summand {
            incl: s.incl.retarget(&s.rep, m),
            proj: s.proj.retarget(m, &s.rep),
            rep: s.rep,
        })
        .collect();
    Decomposition {
        summands,
        certified: d.certified,
    }
}

pub fn decompose_with(m: &Rep, cap: u64) -> Result<Decomposition> {
    let mut out = Vec::new();
    let mut certified = true;
    let top = Summand {
        rep: m.clone(),
        incl: Morphism::identity(m),
        proj: Morphism::identity(m),
    };
    let mut stack = vec![top];
    while let Some(s) = stack.pop() {
        if s.rep.is_zero() {
            continue;
        }
        let end = hom(&s.rep, &s.rep)?;
        let (found, exhaustive) = find_splitting_endo(&end, cap);
        match found {
            Some(f) => {
                let (a, b) = fitting_split(&s.rep, &f)?;
                // push in reverse so the image part is processed first
                for part in [b, a] {
                    stack.push(Summand {
                        incl: s.incl.compose(&part.incl),
                        proj: part.proj.compose(&s.proj),
                        rep: part.rep,
                    });
                }
            }
            None => {
                certified &= exhaustive;
                out.push(s);
            }
        }
    }
    Ok(Decomposition {
        summands: out,
        certified,
    })
}

/// True iff the endomorphism algebra is local.
pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let end = hom(m, m)?;
    Ok(find_splitting_endo(&end, DEFAULT_END_CAP).0.is_none())
}

/// Isomorphism test for two indecomposables: some basis composite `g_j ∘ f_i` is invertible.
pub fn iso_indecomposable(x: &Rep, y: &Rep) -> Result<bool> {
    Ok(iso_between_indecomposables(x, y)?.is_some())
}

/// An explicit isomorphism `x → y` between indecomposables, if one exists.
pub fn iso_between_indecomposables(x: &Rep, y: &Rep) -> Result<Option<Morphism>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    if x == y {
        return Ok(Some(Morphism::identity(x)));
    }
    let xy = hom(x, y)?;
    let yx = hom(y, x)?;
    for f in xy.basis() {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
        for g in yx.basis() {
            let gf = g.compose(f);
            if !gf.is_nilpotent() {
                // gf is an automorphism of a local object, so f is split mono between equal dims
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

/// Isomorphism of arbitrary representations via their decompositions.
pub fn is_isomorphic(m: &Rep, n: &Rep) -> Result<bool> {
    m.same_category(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m == n {
        return Ok(true);
    }
    let a = decompose(m)?;
    let b = decompose(n)?;
    if a.summands.len() != b.summands.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.summands.len()];
    'outer: for s in &a.summands {
        for (j, t) in b.summands.iter().enumerate() {
            if !used[j] && iso_indecomposable(&s.rep, &t.rep)? {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::Quiver;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn simples_and_projectives_are_indecomposable() {
        let q = Quiver::linear_a(2);
        assert!(is_indecomposable(&Rep::simple(&q, f2(), 0)).unwrap());
        assert!(is_indecomposable(&Rep::projective(&q, f2(), 0)).unwrap());
        let s = Rep::simple(&q, f2(), 0);
        assert!(!is_indecomposable(&s.oplus(&s).unwrap()).unwrap());
        assert!(matches!(
            is_indecomposable(&Rep::zero(&q, f2())),
            Err(Error::ZeroRepresentation)
        ));
    }

    #[test]
    fn decompose_sum_of_projectives() {
        let q = Quiver::zigzag_a(3);
        let p1 = Rep::projective(&q, f2(), 0);
        let p3 = Rep::projective(&q, f2(), 2);
        let m = p1.oplus(&p3).unwrap();
        assert_eq!(m.dims(), &[1, 2, 1]);
        let d = decompose(&m).unwrap();
        assert!(d.certified);
        assert_eq!(d.summands.len(), 2);
        for s in &d.summands {
            assert!(
                iso_indecomposable(&s.rep, &p1).unwrap()
                    || iso_indecomposable(&s.rep, &p3).unwrap()
            );
            assert!(s.proj.compose(&s.incl).is_iso());
        }
        let pp = p1.oplus(&p1).unwrap();
        let classes = decompose(&pp).unwrap().classes();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].1, 2);
    }

    #[test]
    fn same_dims_not_isomorphic() {
        let q = Quiver::linear_a(3);
        let s = |v| Rep::simple(&q, f2(), v);
        // P2 ⊕ S1 vs P1(=[1,3]) ... both have dims (1,1,1)
        let a = Rep::projective(&q, f2(), 1).oplus(&s(0)).unwrap();
        let b = Rep::projective(&q, f2(), 0);
        assert_eq!(a.dims(), b.dims());
        assert!(!is_isomorphic(&a, &b).unwrap());
        assert!(is_isomorphic(&a, &s(0).oplus(&Rep::projective(&q, f2(), 1)).unwrap()).unwrap());
    }
}
