use std::fmt;

use super::rep::Rep;
use crate::error::{Error, Result};
use crate::exactla::{all_vectors, nullspace_basis, Fp, Matrix, Scalar, Subspace};

/// A morphism of representations: one matrix per vertex, intertwining every arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Rep,
    target: Rep,
    comps: Vec<Matrix>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism({:?} -> {:?}) {:?}",
            self.source, self.target, self.comps
        )
    }
}

impl Morphism {
    /// Checked constructor: shapes and the intertwining law `f_y M_α = N_α f_x`.
    pub fn new(source: Rep, target: Rep, comps: Vec<Matrix>) -> Result<Self> {
        source.same_category(&target)?;
        let q = source.quiver();
        if comps.len() != q.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} vertices",
                comps.len(),
                q.num_vertices()
            )));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dim_at(v), source.dim_at(v)) || c.field() != source.field() {
                return Err(Error::DimensionMismatch(format!(
                    "component at `{}` has shape {:?}, expected {:?}",
                    q.vertex_name(v),
                    c.shape(),
                    (target.dim_at(v), source.dim_at(v))
                )));
            }
        }
        let m = Self::new_unchecked(source, target, comps);
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Rep, target: Rep, comps: Vec<Matrix>) -> Self {
        Self {
            source,
            target,
            comps,
        }
    }

    /// Re-verifies the intertwining law.
    pub fn check(&self) -> Result<()> {
        let q = self.source.quiver();
        for (a, arr) in q.arrows().iter().enumerate() {
            let lhs = &self.comps[arr.target] * self.source.map(a);
            let rhs = self.target.map(a) * &self.comps[arr.source];
            if lhs != rhs {
                return Err(Error::NotAMorphism(arr.name.clone()));
            }
        }
        Ok(())
    }

    pub fn zero(source: &Rep, target: &Rep) -> Self {
        let f = source.field();
        let comps = (0..source.quiver().num_vertices())
            .map(|v| Matrix::zeros(f, target.dim_at(v), source.dim_at(v)))
            .collect();
        Self::new_unchecked(source.clone(), target.clone(), comps)
    }

    pub fn identity(m: &Rep) -> Self {
        let f = m.field();
        let comps = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        Self::new_unchecked(m.clone(), m.clone(), comps)
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }
    pub fn target(&self) -> &Rep {
        &self.target
    }
    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }
    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }
    pub fn field(&self) -> Fp {
        self.source.field()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        assert_eq!(
            first.target.dims(),
            self.source.dims(),
            "compose: codomain/domain mismatch"
        );
        let comps = self
            .comps
            .iter()
            .zip(&first.comps)
            .map(|(g, f)| g * f)
            .collect();
        Self::new_unchecked(first.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a + b)
            .collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a - b)
            .collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: Scalar) -> Morphism {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn neg(&self) -> Morphism {
        let comps = self.comps.iter().map(|a| -a).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    /// Same matrices, reinterpreted between other (equal-shaped) endpoints.
    pub(crate) fn retarget(&self, source: &Rep, target: &Rep) -> Morphism {
        Self::new_unchecked(source.clone(), target.clone(), self.comps.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let comps: Option<Vec<Matrix>> = self.comps.iter().map(|c| c.inverse()).collect();
        Some(Self::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            comps?,
        ))
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    /// Endomorphism power, vertexwise.
    pub fn pow(&self, e: u64) -> Morphism {
        let comps = self.comps.iter().map(|c| c.pow(e)).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_nilpotent(&self) -> bool {
        let n = self.source.total_dim().max(1) as u64;
        self.pow(n).is_zero()
    }

    /// Concatenation of the components, each flattened row-major, in vertex order.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for c in &self.comps {
            out.extend_from_slice(c.data());
        }
        out
    }

    /// Inverse of [`Morphism::flatten`]; does not check the intertwining law.
    pub fn from_flat_unchecked(source: &Rep, target: &Rep, flat: &[Scalar]) -> Morphism {
        let f = source.field();
        let mut comps = Vec::new();
        let mut off = 0;
        for v in 0..source.quiver().num_vertices() {
            let (r, c) = (target.dim_at(v), source.dim_at(v));
            let data = flat[off..off + r * c].to_vec();
            comps.push(Matrix::from_vec(f, r, c, data).expect("flat shape"));
            off += r * c;
        }
        Self::new_unchecked(source.clone(), target.clone(), comps)
    }

    /// Vector-space dual `D N -> D M` over the opposite quiver.
    pub fn dual_between(&self, dual_target: &Rep, dual_source: &Rep) -> Morphism {
        let comps = self.comps.iter().map(|c| c.transpose()).collect();
        Self::new_unchecked(dual_target.clone(), dual_source.clone(), comps)
    }
}

/// Flat length of a Hom space ambient: Σ_x dim N_x · dim M_x.
pub fn flat_len(m: &Rep, n: &Rep) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

/// A Hom space with its canonical echelon basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Rep,
    target: Rep,
    space: Subspace,
    basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn source(&self) -> &Rep {
        &self.source
    }
    pub fn target(&self) -> &Rep {
        &self.target
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn coords(&self, f: &Morphism) -> Option<Vec<Scalar>> {
        self.space.coordinates(&f.flatten())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Morphism {
        Morphism::from_flat_unchecked(&self.source, &self.target, &self.space.combine(coords))
    }

    pub fn zero(&self) -> Morphism {
        Morphism::zero(&self.source, &self.target)
    }

    /// Every element, exhaustively, when `p^dim ≤ cap`.
    pub fn elements(&self, cap: u64) -> Result<impl Iterator<Item = Morphism> + '_> {
        let it = all_vectors(self.source.field(), self.dim(), cap)?;
        Ok(it.map(move |c| self.combine(&c)))
    }
}

/// The linear map `(h_x)_x ↦ (N_α h_x − h_y M_α)_α` from `⊕_x Mat(N_x × M_x)` to
/// `⊕_α Mat(N_y × M_x)`. Its kernel is Hom(m, n); its image is the coboundary space of Ext¹(m, n).
pub fn intertwining_operator(m: &Rep, n: &Rep) -> Matrix {
    let f = m.field();
    let q = m.quiver();
    let mut offsets = Vec::with_capacity(q.num_vertices());
    let mut total = 0;
    for v in 0..q.num_vertices() {
        offsets.push(total);
        total += n.dim_at(v) * m.dim_at(v);
    }
    let rows: usize = q
        .arrows()
        .iter()
        .map(|a| n.dim_at(a.target) * m.dim_at(a.source))
        .sum();
    let mut sys = Matrix::zeros(f, rows, total);
    let mut row = 0;
    for (ai, arr) in q.arrows().iter().enumerate() {
        let (x, y) = (arr.source, arr.target);
        let (mx, my, nx, ny) = (m.dim_at(x), m.dim_at(y), n.dim_at(x), n.dim_at(y));
        let ma = m.map(ai);
        let na = n.map(ai);
        for i in 0..ny {
            for j in 0..mx {
                for k in 0..nx {
                    let v = na.get(i, k);
                    if v != 0 {
                        let col = offsets[x] + k * mx + j;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                for k in 0..my {
                    let v = ma.get(k, j);
                    if v != 0 {
                        let col = offsets[y] + i * my + k;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// Basis of Hom(m, n) as the nullspace of the intertwining constraints.
pub fn hom(m: &Rep, n: &Rep) -> Result<HomSpace> {
    m.same_category(n)?;
    let f = m.field();
    let sys = intertwining_operator(m, n);
    let total = sys.cols();
    let space = Subspace::span(f, total, &nullspace_basis(&sys));
    let basis = space
        .basis()
        .iter()
        .map(|v| Morphism::from_flat_unchecked(m, n, v))
        .collect();
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        space,
        basis,
    })
}

/// Some `h` with `f ∘ h = g` (g: T→Y, f: X→Y), by one linear solve over Hom(T,X).
pub fn factor_through(g: &Morphism, f: &Morphism) -> Result<Option<Morphism>> {
    let hs = hom(g.source(), f.source())?;
    factor_through_in(g, f, &hs)
}

/// As [`factor_through`] with a precomputed Hom(T,X).
pub fn factor_through_in(g: &Morphism, f: &Morphism, hs: &HomSpace) -> Result<Option<Morphism>> {
    let field = g.field();
    let len = g.flatten().len();
    if hs.dim() == 0 {
        return Ok(if g.is_zero() { Some(hs.zero()) } else { None });
    }
    let cols: Vec<Vec<Scalar>> = hs.basis().iter().map(|h| f.compose(h).flatten()).collect();
    let a = Matrix::from_cols(field, len, &cols);
    let b = Matrix::column_vector(field, &g.flatten());
    Ok(crate::exactla::solve(&a, &b)?.map(|x| hs.combine(&x.col(0))))
}

/// Some `h` with `h ∘ f = g` (f: X→Y, g: X→Z).
pub fn factor_through_left(g: &Morphism, f: &Morphism) -> Result<Option<Morphism>> {
    let hs = hom(f.target(), g.target())?;
    let field = g.field();
    let len = g.flatten().len();
    if hs.dim() == 0 {
        return Ok(if g.is_zero() { Some(hs.zero()) } else { None });
    }
    let cols: Vec<Vec<Scalar>> = hs.basis().iter().map(|h| h.compose(f).flatten()).collect();
    let a = Matrix::from_cols(field, len, &cols);
    let b = Matrix::column_vector(field, &g.flatten());
    Ok(crate::exactla::solve(&a, &b)?.map(|x| hs.combine(&x.col(0))))
}

/// `g ∘ f = Id` solvable.
pub fn is_section(f: &Morphism) -> Result<bool> {
    Ok(factor_through_left(&Morphism::identity(f.source()), f)?.is_some())
}

/// `f ∘ g = Id` solvable.
pub fn is_retraction(f: &Morphism) -> Result<bool> {
    Ok(factor_through(&Morphism::identity(f.target()), f)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn hom_between_distinct_simples_is_zero() {
        let q = Quiver::linear_a(3);
        let s0 = Rep::simple(&q, f2(), 0);
        let s1 = Rep::simple(&q, f2(), 1);
        assert_eq!(hom(&s0, &s1).unwrap().dim(), 0);
        assert_eq!(hom(&s0, &s0).unwrap().dim(), 1);
    }

    #[test]
    fn hom_from_projective_a2() {
        let q = Quiver::linear_a(2);
        let p1 = Rep::projective(&q, f2(), 0);
        let s1 = Rep::simple(&q, f2(), 0);
        let s2 = Rep::simple(&q, f2(), 1);
        assert_eq!(hom(&p1, &s1).unwrap().dim(), 1);
        assert_eq!(hom(&s2, &p1).unwrap().dim(), 1);
        assert_eq!(hom(&p1, &s2).unwrap().dim(), 0);
    }

    #[test]
    fn basis_members_intertwine() {
        let q = Quiver::zigzag_a(4);
        let p = Rep::projective(&q, f2(), 0);
        let i = Rep::injective(&q, f2(), 1);
        for b in hom(&p, &i).unwrap().basis() {
            b.check().unwrap();
        }
    }

    #[test]
    fn inclusion_of_socle_is_not_a_section() {
        let q = Quiver::linear_a(2);
        let p1 = Rep::projective(&q, f2(), 0);
        let s2 = Rep::simple(&q, f2(), 1);
        let incl = hom(&s2, &p1).unwrap().basis()[0].clone();
        assert!(!is_section(&incl).unwrap());
        assert!(is_section(&Morphism::identity(&p1)).unwrap());
        assert!(is_retraction(&Morphism::identity(&p1)).unwrap());
    }

    #[test]
    fn bad_morphism_rejected() {
        let q = Quiver::linear_a(2);
        let p1 = Rep::projective(&q, f2(), 0);
        let s1 = Rep::simple(&q, f2(), 0);
        let comps = vec![Matrix::identity(f2(), 1), Matrix::zeros(f2(), 1, 0)];
        assert!(Morphism::new(s1.clone(), p1.clone(), comps).is_err());
    }
}
