use std::collections::HashMap;
use std::sync::Arc;

use super::almost_split::{almost_split_with_fiber, AlmostSplitReport};
use super::presentation::{tau, tau_minus};
use crate::error::{Error, Result};
use crate::exactla::{rank, solve, Matrix, Scalar};
use crate::ext::{ExtClass, ExtSpace, STriangle};
use crate::quiver::{hom, Morphism, Rep};
use crate::stable::{costable_hom, stable_hom, StableHom};

/// An almost split extension `η ∈ E(end, start)` together with a linear form `γ` with `γ(η) ≠ 0`.
#[derive(Clone, Debug)]
pub struct PairingWitness {
    pub end: Rep,
    pub start: Rep,
    pub ext: ExtSpace,
    pub eta: ExtClass,
    /// `γ` is the `gamma_index`-th coordinate functional of `ext`.
    pub gamma_index: usize,
    pub triangle: STriangle,
    pub report: AlmostSplitReport,
}

impl PairingWitness {
    /// Witness for `end` and `start`, validated over `universe`.
    pub fn new(end: &Rep, start: &Rep, universe: &[Rep], cap: u64) -> Result<Self> {
        let t = almost_split_with_fiber(end, start, universe, cap)?.ok_or_else(|| {
            Error::Invariant("no almost split extension between the given objects".into())
        })?;
        let ext = ExtSpace::new(end, start)?;
        let eta = t.triangle.cls.clone();
        let gamma_index = ext
            .coords(&eta)
            .iter()
            .position(|&x| x != 0)
            .ok_or_else(|| Error::Invariant("almost split class is zero".into()))?;
        Ok(Self {
            end: end.clone(),
            start: start.clone(),
            ext,
            eta,
            gamma_index,
            triangle: t.triangle,
            report: t.report,
        })
    }

    /// Witness ending at `y`, with start `τy` computed as DTr.
    pub fn right(y: &Rep, universe: &[Rep], cap: u64) -> Result<Self> {
        Self::new(y, &tau(y)?, universe, cap)
    }

    /// Witness starting at `x`, with end `τ⁻x` computed as TrD.
    pub fn left(x: &Rep, universe: &[Rep], cap: u64) -> Result<Self> {
        Self::new(&tau_minus(x)?, x, universe, cap)
    }

    pub fn gamma(&self, mu: &ExtClass) -> Scalar {
        self.ext.coords(mu)[self.gamma_index]
    }
}

/// Memo of witnesses keyed by object, so that every translate is taken with one fixed `γ`.
#[derive(Default)]
pub struct Witnesses {
    universe: Vec<Rep>,
    cap: u64,
    right: HashMap<Rep, Arc<PairingWitness>>,
    left: HashMap<Rep, Arc<PairingWitness>>,
}

impl Witnesses {
    pub fn new(universe: Vec<Rep>, cap: u64) -> Self {
        Self {
            universe,
            cap,
            ..Default::default()
        }
    }

    pub fn universe(&self) -> &[Rep] {
        &self.universe
    }

    pub fn right(&mut self, y: &Rep) -> Result<Arc<PairingWitness>> {
        if let Some(w) = self.right.get(y) {
            return Ok(w.clone());
        }
        let w = Arc::new(PairingWitness::right(y, &self.universe, self.cap)?);
        self.right.insert(y.clone(), w.clone());
        Ok(w)
    }

    pub fn left(&mut self, x: &Rep) -> Result<Arc<PairingWitness>> {
        if let Some(w) = self.left.get(x) {
            return Ok(w.clone());
        }
        let w = Arc::new(PairingWitness::left(x, &self.universe, self.cap)?);
        self.left.insert(x.clone(), w.clone());
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingVariant {
    /// `C̄(m, start) × E(end, m) → k`, `(f̄, μ) ↦ γ(f⋆μ)`.
    Costable,
    /// `E(m, start) × C̲(end, m) → k`, `(μ, g̲) ↦ γ(g*μ)`.
    Stable,
}

/// Gram matrix of the pairing in coset-representative and Ext bases.
pub fn pairing_matrix(w: &PairingWitness, m: &Rep, variant: PairingVariant) -> Result<Matrix> {
    let f = m.field();
    match variant {
        PairingVariant::Costable => {
            let cs = costable_hom(m, &w.start)?;
            let e = ExtSpace::new(&w.end, m)?;
            let reps = cs.representatives();
            let mut out = Matrix::zeros(f, reps.len(), e.dim());
            for (r, fr) in reps.iter().enumerate() {
                for (s, mu) in e.basis().iter().enumerate() {
                    out.set(r, s, w.gamma(&mu.pushout(fr)?));
                }
            }
            Ok(out)
        }
        PairingVariant::Stable => {
            let e = ExtSpace::new(m, &w.start)?;
            let ss = stable_hom(&w.end, m)?;
            let reps = ss.representatives();
            let mut out = Matrix::zeros(f, e.dim(), reps.len());
            for (r, mu) in e.basis().iter().enumerate() {
                for (s, g) in reps.iter().enumerate() {
                    out.set(r, s, w.gamma(&mu.pullback(g)?));
                }
            }
            Ok(out)
        }
    }
}

/// Square and of full rank.
pub fn is_nondegenerate(m: &Matrix) -> bool {
    m.rows() == m.cols() && rank(m) == m.rows()
}

/// `φ_m : C̄(m, τY) → DE(Y, m)` in coset and dual-basis coordinates.
pub fn phi_matrix(w: &PairingWitness, m: &Rep) -> Result<Matrix> {
    Ok(pairing_matrix(w, m, PairingVariant::Costable)?.transpose())
}

/// `ψ_m : C̲(τ⁻X, m) → DE(m, X)` in coset and dual-basis coordinates.
pub fn psi_matrix(w: &PairingWitness, m: &Rep) -> Result<Matrix> {
    pairing_matrix(w, m, PairingVariant::Stable)
}

fn coset_matrix(src: &StableHom, dst: &StableHom, apply: impl Fn(&Morphism) -> Morphism) -> Matrix {
    let f = src.hom().source().field();
    let cols: Vec<Vec<Scalar>> = src
        .representatives()
        .iter()
        .map(|r| dst.coset(&apply(r)))
        .collect();
    Matrix::from_cols(f, dst.dim(), &cols)
}

/// `φ_m ∘ C̄(g, τY) = D E(Y, g) ∘ φ_{m′}` for `g : m → m′`.
pub fn phi_is_natural(w: &PairingWitness, g: &Morphism) -> Result<bool> {
    let (m, m2) = (g.source(), g.target());
    let cs = costable_hom(m, &w.start)?;
    let cs2 = costable_hom(m2, &w.start)?;
    let cg = coset_matrix(&cs2, &cs, |r| r.compose(g));
    let e = ExtSpace::new(&w.end, m)?;
    let e2 = ExtSpace::new(&w.end, m2)?;
    let eg = e.map_matrix(&e2, |mu| mu.pushout(g))?;
    let lhs = phi_matrix(w, m)?.try_mul(&cg)?;
    let rhs = eg.transpose().try_mul(&phi_matrix(w, m2)?)?;
    Ok(lhs == rhs)
}

/// `ψ_{m′} ∘ C̲(X′, g) = D E(g, X) ∘ ψ_m` for `g : m → m′`.
pub fn psi_is_natural(w: &PairingWitness, g: &Morphism) -> Result<bool> {
    let (m, m2) = (g.source(), g.target());
    let ss = stable_hom(&w.end, m)?;
    let ss2 = stable_hom(&w.end, m2)?;
    let sg = coset_matrix(&ss, &ss2, |r| g.compose(r));
    let e = ExtSpace::new(m, &w.start)?;
    let e2 = ExtSpace::new(m2, &w.start)?;
    let eg = e2.map_matrix(&e, |mu| mu.pullback(g))?;
    let lhs = psi_matrix(w, m2)?.try_mul(&sg)?;
    let rhs = eg.transpose().try_mul(&psi_matrix(w, m)?)?;
    Ok(lhs == rhs)
}

/// A coset in a stable or costable Hom space.
#[derive(Clone, Debug)]
pub struct Coset {
    pub space: StableHom,
    pub coords: Vec<Scalar>,
}

impl Coset {
    pub fn of(space: StableHom, f: &Morphism) -> Self {
        let coords = space.coset(f);
        Self { space, coords }
    }
    pub fn rep(&self) -> Morphism {
        self.space.representative(&self.coords)
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
    pub fn source(&self) -> &Rep {
        self.space.hom().source()
    }
    pub fn target(&self) -> &Rep {
        self.space.hom().target()
    }
    /// Same space and same class.
    pub fn equals(&self, f: &Morphism) -> bool {
        self.space.coset(f) == self.coords
    }
}

/// Solves `Σ_k x_k eval(r_k, μ_s) = rhs(μ_s)` for all basis classes `μ_s`.
fn solve_against(
    space: StableHom,
    classes: &[ExtClass],
    eval: impl Fn(&Morphism, &ExtClass) -> Result<Scalar>,
    rhs: impl Fn(&ExtClass) -> Result<Scalar>,
) -> Result<Coset> {
    let f = space.hom().source().field();
    let reps = space.representatives();
    let mut a = Matrix::zeros(f, classes.len(), reps.len());
    let mut b = Matrix::zeros(f, classes.len(), 1);
    for (s, mu) in classes.iter().enumerate() {
        for (k, r) in reps.iter().enumerate() {
            a.set(s, k, eval(r, mu)?);
        }
        b.set(s, 0, rhs(mu)?);
    }
    if !is_nondegenerate(&a) {
        return Err(Error::Invariant("pairing is degenerate".into()));
    }
    let x =
        solve(&a, &b)?.ok_or_else(|| Error::Invariant("pairing system has no solution".into()))?;
    Ok(Coset {
        space,
        coords: x.col(0),
    })
}

/// `τ(f) ∈ C̄(τY, τY′)` for `f: Y → Y′`: the unique coset with `γ′(τ(f)⋆μ′) = γ(f*μ′)`.
pub fn tau_on_morphism(w: &PairingWitness, w2: &PairingWitness, f: &Morphism) -> Result<Coset> {
    if f.source() != &w.end || f.target() != &w2.end {
        return Err(Error::DimensionMismatch(
            "morphism does not join the witnessed objects".into(),
        ));
    }
    let space = costable_hom(&w.start, &w2.start)?;
    let e = ExtSpace::new(&w2.end, &w.start)?;
    solve_against(
        space,
        e.basis(),
        |r, mu| Ok(w2.gamma(&mu.pushout(r)?)),
        |mu| Ok(w.gamma(&mu.pullback(f)?)),
    )
}

/// `τ⁻(g) ∈ C̲(τ⁻X, τ⁻X′)` for `g: X → X′`: the unique coset with `γ(τ⁻(g)*μ) = γ′(g⋆μ)`.
pub fn tau_minus_on_morphism(
    w: &PairingWitness,
    w2: &PairingWitness,
    g: &Morphism,
) -> Result<Coset> {
    if g.source() != &w.start || g.target() != &w2.start {
        return Err(Error::DimensionMismatch(
            "morphism does not join the witnessed objects".into(),
        ));
    }
    let space = stable_hom(&w.end, &w2.end)?;
    let e = ExtSpace::new(&w2.end, &w.start)?;
    solve_against(
        space,
        e.basis(),
        |r, mu| Ok(w.gamma(&mu.pullback(r)?)),
        |mu| Ok(w2.gamma(&mu.pushout(g)?)),
    )
}

/// `θ_Y ∈ C̲(τ⁻τY, Y)` with `ψ(θ_Y) = φ(Id_τY)`; `right` ends at Y, `left` starts at `right.start`.
pub fn theta(right: &PairingWitness, left: &PairingWitness) -> Result<Coset> {
    if left.start != right.start {
        return Err(Error::Precondition("witnesses do not share τY".into()));
    }
    let space = stable_hom(&left.end, &right.end)?;
    solve_against(
        space,
        right.ext.basis(),
        |r, mu| Ok(left.gamma(&mu.pullback(r)?)),
        |mu| Ok(right.gamma(mu)),
    )
}

/// `ξ_X ∈ C̄(X, ττ⁻X)` with `φ(ξ_X) = ψ(Id_τ⁻X)`; `left` starts at X, `right` ends at `left.end`.
pub fn xi(left: &PairingWitness, right: &PairingWitness) -> Result<Coset> {
    if left.end != right.end {
        return Err(Error::Precondition("witnesses do not share τ⁻X".into()));
    }
    let space = costable_hom(&left.start, &right.start)?;
    solve_against(
        space,
        left.ext.basis(),
        |r, mu| Ok(right.gamma(&mu.pushout(r)?)),
        |mu| Ok(left.gamma(mu)),
    )
}

/// A two-sided inverse of `c` modulo the same ideal, if one exists.
pub fn coset_inverse(c: &Coset, stable: bool) -> Result<Option<Morphism>> {
    let (x, y) = (c.source().clone(), c.target().clone());
    let quot = |a: &Rep, b: &Rep| {
        if stable {
            stable_hom(a, b)
        } else {
            costable_hom(a, b)
        }
    };
    let qyy = quot(&y, &y)?;
    let qxx = quot(&x, &x)?;
    let back = hom(&y, &x)?;
    let f = x.field();
    let g = c.rep();
    let rhs: Vec<Scalar> = qyy
        .coset(&Morphism::identity(&y))
        .into_iter()
        .chain(qxx.coset(&Morphism::identity(&x)))
        .collect();
    if back.dim() == 0 {
        return Ok(rhs.iter().all(|&v| v == 0).then(|| back.zero()));
    }
    let cols: Vec<Vec<Scalar>> = back
        .basis()
        .iter()
        .map(|s| {
            qyy.coset(&g.compose(s))
                .into_iter()
                .chain(qxx.coset(&s.compose(&g)))
                .collect()
        })
        .collect();
    let a = Matrix::from_cols(f, rhs.len(), &cols);
    Ok(solve(&a, &Matrix::column_vector(f, &rhs))?.map(|v| back.combine(&v.col(0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::{enumerate_indecomposables, is_isomorphic, Quiver};
    use crate::stable::is_projective;

    #[test]
    fn a3_pairings_are_nondegenerate() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(3);
        let u = enumerate_indecomposables(&q, f).unwrap();
        for y in &u {
            if is_projective(y).unwrap() {
                continue;
            }
            let w = PairingWitness::right(y, &u, 1 << 16).unwrap();
            assert_eq!(w.gamma(&w.eta), w.ext.coords(&w.eta)[w.gamma_index]);
            assert_ne!(w.gamma(&w.eta), 0);
            for m in &u {
                for v in [PairingVariant::Costable, PairingVariant::Stable] {
                    assert!(is_nondegenerate(&pairing_matrix(&w, m, v).unwrap()));
                }
            }
            let id = tau_on_morphism(&w, &w, &Morphism::identity(y)).unwrap();
            assert!(id.equals(&Morphism::identity(&w.start)));
        }
    }

    #[test]
    fn theta_is_invertible_on_a3() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(3);
        let u = enumerate_indecomposables(&q, f).unwrap();
        let mut ws = Witnesses::new(u.clone(), 1 << 16);
        for y in &u {
            if is_projective(y).unwrap() {
                continue;
            }
            let r = ws.right(y).unwrap();
            let l = ws.left(&r.start).unwrap();
            assert!(is_isomorphic(&l.end, y).unwrap());
            let t = theta(&r, &l).unwrap();
            assert!(coset_inverse(&t, true).unwrap().is_some());
        }
    }
}
