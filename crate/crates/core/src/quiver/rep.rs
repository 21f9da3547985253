use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::morphism::Morphism;
use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::exactla::{image_basis, nullspace_basis, solve, Fp, Matrix, Quotient, Subspace};

struct RepInner {
    quiver: Arc<Quiver>,
    field: Fp,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A finite-dimensional representation. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct Rep(Arc<RepInner>);

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.dims == other.0.dims
                && self.0.maps == other.0.maps
                && *self.0.quiver == *other.0.quiver)
    }
}
impl Eq for Rep {}

impl Hash for Rep {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.field.hash(state);
        self.0.dims.hash(state);
        self.0.maps.hash(state);
    }
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.0.dims)
    }
}

/// A direct sum together with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub rep: Rep,
    pub incls: Vec<Morphism>,
    pub projs: Vec<Morphism>,
}

impl Rep {
    pub fn new(
        quiver: Arc<Quiver>,
        field: Fp,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.num_vertices()
            )));
        }
        if maps.len() != quiver.num_arrows() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.num_arrows()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field().p(), field.p()));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow `{}` has a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Self::new_unchecked(quiver, field, dims, maps))
    }

    pub(crate) fn new_unchecked(
        quiver: Arc<Quiver>,
        field: Fp,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Self {
        Rep(Arc::new(RepInner {
            quiver,
            field,
            dims,
            maps,
        }))
    }

    pub fn zero(quiver: &Arc<Quiver>, field: Fp) -> Self {
        let dims = vec![0; quiver.num_vertices()];
        let maps = vec![Matrix::zeros(field, 0, 0); quiver.num_arrows()];
        Self::new_unchecked(quiver.clone(), field, dims, maps)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.0.quiver
    }
    pub fn field(&self) -> Fp {
        self.0.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }
    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.0.maps
    }
    pub fn map(&self, a: usize) -> &Matrix {
        &self.0.maps[a]
    }
    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_category(&self, other: &Rep) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().p(), other.field().p()));
        }
        if !Arc::ptr_eq(self.quiver(), other.quiver()) && **self.quiver() != **other.quiver() {
            return Err(Error::QuiverMismatch);
        }
        Ok(())
    }

    /// S_a: one-dimensional at `a`, zero elsewhere.
    pub fn simple(quiver: &Arc<Quiver>, field: Fp, a: usize) -> Self {
        let mut dims = vec![0; quiver.num_vertices()];
        dims[a] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|arr| Matrix::zeros(field, dims[arr.target], dims[arr.source]))
            .collect();
        Self::new_unchecked(quiver.clone(), field, dims, maps)
    }

    /// P_a: at `x` the span of paths a→x; an arrow α sends a path p to p followed by α.
    pub fn projective(quiver: &Arc<Quiver>, field: Fp, a: usize) -> Self {
        let n = quiver.num_vertices();
        let mut per_vertex: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for p in quiver.paths_from(a) {
            per_vertex[p.target].push(p.arrows);
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> = per_vertex
            .iter()
            .map(|ps| ps.iter().enumerate().map(|(i, p)| (p, i)).collect())
            .collect();
        let dims: Vec<usize> = per_vertex.iter().map(|v| v.len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arr)| {
                let mut m = Matrix::zeros(field, dims[arr.target], dims[arr.source]);
                for (j, p) in per_vertex[arr.source].iter().enumerate() {
                    let mut q = p.clone();
                    q.push(ai);
                    let i = index[arr.target][&q];
                    m.set(i, j, 1);
                }
                m
            })
            .collect();
        Self::new_unchecked(quiver.clone(), field, dims, maps)
    }

    /// I_a: at `x` the span of paths x→a; an arrow α sends a path αq to q and kills the rest.
    pub fn injective(quiver: &Arc<Quiver>, field: Fp, a: usize) -> Self {
        let n = quiver.num_vertices();
        let mut per_vertex: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for x in 0..n {
            for p in quiver.paths(x, a) {
                per_vertex[x].push(p.arrows);
            }
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> = per_vertex
            .iter()
            .map(|ps| ps.iter().enumerate().map(|(i, p)| (p, i)).collect())
            .collect();
        let dims: Vec<usize> = per_vertex.iter().map(|v| v.len()).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, arr)| {
                let mut m = Matrix::zeros(field, dims[arr.target], dims[arr.source]);
                for (j, p) in per_vertex[arr.source].iter().enumerate() {
                    if p.first() == Some(&ai) {
                        let i = index[arr.target][&p[1..].to_vec()];
                        m.set(i, j, 1);
                    }
                }
                m
            })
            .collect();
        Self::new_unchecked(quiver.clone(), field, dims, maps)
    }

    pub fn direct_sum(parts: &[Rep]) -> Result<DirectSum> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Precondition("direct sum of no summands".into()))?;
        Self::direct_sum_in(first.quiver(), first.field(), parts)
    }

    /// Direct sum that also accepts an empty list (giving the zero representation).
    pub fn direct_sum_in(quiver: &Arc<Quiver>, field: Fp, parts: &[Rep]) -> Result<DirectSum> {
        let zero = Self::zero(quiver, field);
        for p in parts {
            zero.same_category(p)?;
        }
        let q = quiver.clone();
        let f = field;
        let n = q.num_vertices();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dim_at(v)).sum())
            .collect();
        let maps = (0..q.num_arrows())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| p.map(a)).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        let rep = Self::new_unchecked(q, f, dims.clone(), maps);
        let mut offsets = vec![0usize; n];
        let mut incls = Vec::new();
        let mut projs = Vec::new();
        for p in parts {
            let mut ic = Vec::with_capacity(n);
            let mut pc = Vec::with_capacity(n);
            for v in 0..n {
                let mut i = Matrix::zeros(f, dims[v], p.dim_at(v));
                i.set_block(offsets[v], 0, &Matrix::identity(f, p.dim_at(v)));
                pc.push(i.transpose());
                ic.push(i);
                offsets[v] += p.dim_at(v);
            }
            incls.push(Morphism::new_unchecked(p.clone(), rep.clone(), ic));
            projs.push(Morphism::new_unchecked(rep.clone(), p.clone(), pc));
        }
        Ok(DirectSum { rep, incls, projs })
    }

    /// `self ⊕ other` without structure maps.
    pub fn oplus(&self, other: &Rep) -> Result<Rep> {
        Ok(Self::direct_sum(&[self.clone(), other.clone()])?.rep)
    }

    /// Vector-space dual: a representation of the opposite quiver with transposed maps.
    pub fn dual(&self) -> Rep {
        self.dual_over(self.quiver().opposite())
    }

    /// Dual placed over a given copy of the opposite quiver (keeps quiver identity stable).
    pub fn dual_over(&self, opposite: Arc<Quiver>) -> Rep {
        debug_assert_eq!(opposite.num_arrows(), self.quiver().num_arrows());
        let maps = self.maps().iter().map(|m| m.transpose()).collect();
        Self::new_unchecked(opposite, self.field(), self.dims().to_vec(), maps)
    }

    /// Subrepresentation spanned by the columns of `bases[x]` (must be arrow-stable and independent).
    pub fn subrep(&self, bases: &[Matrix]) -> Result<(Rep, Morphism)> {
        let q = self.quiver().clone();
        let f = self.field();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for (a, arr) in q.arrows().iter().enumerate() {
            let rhs = self.map(a) * &bases[arr.source];
            let m = solve(&bases[arr.target], &rhs)?.ok_or_else(|| {
                Error::Invariant(format!("subspace not stable under arrow `{}`", arr.name))
            })?;
            maps.push(m);
        }
        let sub = Self::new_unchecked(q, f, dims, maps);
        let incl = Morphism::new_unchecked(sub.clone(), self.clone(), bases.to_vec());
        Ok((sub, incl))
    }

    /// Quotient by an arrow-stable family of subspaces; returns the projection.
    pub fn quotient(&self, subs: &[Subspace]) -> Result<(Rep, Morphism)> {
        let q = self.quiver().clone();
        let f = self.field();
        let n = q.num_vertices();
        let mut projs = Vec::with_capacity(n);
        let mut reps = Vec::with_capacity(n);
        for v in 0..n {
            let quo = Quotient::new(&Subspace::full(f, self.dim_at(v)), &subs[v])?;
            projs.push(quo.projection_matrix());
            reps.push(Matrix::from_cols(f, self.dim_at(v), quo.representatives()));
        }
        let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| &(&projs[arr.target] * self.map(a)) * &reps[arr.source])
            .collect();
        let quo = Self::new_unchecked(q, f, dims, maps);
        let proj = Morphism::new_unchecked(self.clone(), quo.clone(), projs);
        Ok((quo, proj))
    }

    /// Top: the quotient by the sum of arrow images (the radical).
    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.quiver().num_vertices())
            .map(|v| self.dim_at(v) - self.radical_at(v).dim())
            .collect()
    }

    /// Σ_{α:x→v} image(M_α) inside M_v.
    pub fn radical_at(&self, v: usize) -> Subspace {
        let f = self.field();
        let vecs: Vec<Vec<u32>> = self
            .quiver()
            .incoming(v)
            .iter()
            .flat_map(|&a| image_basis(self.map(a)))
            .collect();
        Subspace::span(f, self.dim_at(v), &vecs)
    }

    /// Socle at `v`: common kernel of the outgoing arrow maps.
    pub fn socle_at(&self, v: usize) -> Subspace {
        let f = self.field();
        let mut s = Subspace::full(f, self.dim_at(v));
        for &a in self.quiver().outgoing(v) {
            s = s.intersect(&Subspace::span(
                f,
                self.dim_at(v),
                &nullspace_basis(self.map(a)),
            ));
        }
        s
    }

    /// Same representation viewed over a larger truncation: new vertices get zero spaces.
    pub fn extend_to(&self, bigger: &Arc<Quiver>) -> Result<Rep> {
        let f = self.field();
        let mut dims = vec![0; bigger.num_vertices()];
        for (v, name) in self.quiver().vertices().iter().enumerate() {
            dims[bigger.vertex(name)?] = self.dim_at(v);
        }
        let mut maps = Vec::with_capacity(bigger.num_arrows());
        for arr in bigger.arrows() {
            let m = match self.quiver().arrow_id(&arr.name) {
                Ok(a) => {
                    let old = self.quiver().arrow(a);
                    if self.quiver().vertex_name(old.source) != bigger.vertex_name(arr.source)
                        || self.quiver().vertex_name(old.target) != bigger.vertex_name(arr.target)
                    {
                        return Err(Error::QuiverMismatch);
                    }
                    self.map(a).clone()
                }
                Err(_) => Matrix::zeros(f, dims[arr.target], dims[arr.source]),
            };
            maps.push(m);
        }
        Rep::new(bigger.clone(), f, dims, maps)
    }

    /// Restriction to a full subquiver given by vertex names present in `smaller`.
    pub fn restrict_to(&self, smaller: &Arc<Quiver>) -> Result<Rep> {
        let f = self.field();
        let mut dims = Vec::with_capacity(smaller.num_vertices());
        for name in smaller.vertices() {
            dims.push(self.dim_at(self.quiver().vertex(name)?));
        }
        let mut maps = Vec::with_capacity(smaller.num_arrows());
        for arr in smaller.arrows() {
            maps.push(self.map(self.quiver().arrow_id(&arr.name)?).clone());
        }
        Rep::new(smaller.clone(), f, dims, maps)
    }

    /// Dimension vector keyed by vertex name, for reports.
    pub fn named_dims(&self) -> Vec<(String, usize)> {
        self.quiver()
            .vertices()
            .iter()
            .cloned()
            .zip(self.dims().iter().copied())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn projectives_of_a2() {
        let q = Quiver::linear_a(2);
        let p1 = Rep::projective(&q, f2(), 0);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.map(0), &Matrix::identity(f2(), 1));
        let i2 = Rep::injective(&q, f2(), 1);
        assert_eq!(i2.dims(), &[1, 1]);
        assert_eq!(Rep::projective(&q, f2(), 1).dims(), &[0, 1]);
        assert_eq!(Rep::injective(&q, f2(), 0).dims(), &[1, 0]);
    }

    #[test]
    fn projective_in_truncated_zigzag() {
        let q = super::super::InfiniteQuiverSpec::AInfZigzag
            .truncate(6)
            .unwrap();
        let p4 = Rep::projective(&q, f2(), q.vertex("4").unwrap());
        assert_eq!(p4.dims(), &[0, 0, 0, 1, 1, 1]);
        let p3 = Rep::projective(&q, f2(), q.vertex("3").unwrap());
        assert_eq!(p3.dims(), &[0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn dual_is_involutive() {
        let q = Quiver::zigzag_a(4);
        let p = Rep::projective(&q, f2(), 2);
        let dd = p.dual().dual();
        assert_eq!(dd, p);
        assert_eq!(p.dual().dims(), p.dims());
    }

    #[test]
    fn top_of_projective_is_simple() {
        let q = Quiver::linear_a(3);
        let p = Rep::projective(&q, f2(), 0);
        assert_eq!(p.top_dims(), vec![1, 0, 0]);
    }
}
