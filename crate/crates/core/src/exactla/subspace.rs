use super::field::{Fp, Scalar};
use super::matrix::{nullspace_basis, Matrix};
use crate::error::{Error, Result};

/// A subspace of F_p^n kept in canonical reduced echelon form, so `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Fp, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let data: Vec<Scalar> = vectors
            .iter()
            .flat_map(|v| {
                assert_eq!(v.len(), ambient, "span: vector length mismatch");
                v.iter().copied()
            })
            .collect();
        let m = Matrix::from_vec(field, vectors.len(), ambient, data).expect("span shape");
        let r = m.rref();
        let rows = (0..r.pivots.len())
            .map(|i| r.matrix.row(i).to_vec())
            .collect();
        Self {
            field,
            ambient,
            rows,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// `v` minus its component along the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(c, r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates with respect to the echelon basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coords) {
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, r));
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::span(self.field, self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        let f = self.field;
        let (a, b) = (self.dim(), other.dim());
        // columns: self basis then other basis; kernel gives relations.
        let mut m = Matrix::zeros(f, self.ambient, a + b);
        for (j, v) in self.rows.iter().chain(&other.rows).enumerate() {
            for (i, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        let vecs: Vec<Vec<Scalar>> = nullspace_basis(&m)
            .into_iter()
            .map(|k| self.combine(&k[..a]))
            .collect();
        Subspace::span(f, self.ambient, &vecs)
    }
}

/// Quotient `span(ambient) / sub` with representatives and a coordinate projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    reduced: Subspace,
}

impl Quotient {
    pub fn new(ambient: &Subspace, sub: &Subspace) -> Result<Self> {
        if !ambient.contains_space(sub) {
            return Err(Error::NotContained);
        }
        let reduced: Vec<Vec<Scalar>> = ambient.basis().iter().map(|v| sub.reduce(v)).collect();
        Ok(Self {
            sub: sub.clone(),
            reduced: Subspace::span(ambient.field(), ambient.ambient(), &reduced),
        })
    }

    pub fn dim(&self) -> usize {
        self.reduced.dim()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Coset representatives; together with a basis of `sub` they form a basis of the ambient span.
    pub fn representatives(&self) -> &[Vec<Scalar>] {
        self.reduced.basis()
    }

    /// Coordinates of the coset of `v`; `None` if `v` is outside the ambient span.
    pub fn project(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.reduced.coordinates(&self.sub.reduce(v))
    }

    /// Projection as a `dim × n` matrix (valid on the ambient span).
    pub fn projection_matrix(&self) -> Matrix {
        let n = self.sub.ambient();
        let f = self.sub.field();
        let mut m = Matrix::zeros(f, self.dim(), n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let r = self.sub.reduce(&e);
            // coordinates along reduced basis are read at its pivots, exact on the ambient span
            for (i, &p) in self.reduced.pivots().iter().enumerate() {
                m.set(i, j, r[p]);
            }
        }
        m
    }

    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.sub.contains(v)
    }
}

/// Quotient of `span(ambient)` by `span(sub)`.
pub fn quotient_basis(
    field: Fp,
    n: usize,
    ambient: &[Vec<Scalar>],
    sub: &[Vec<Scalar>],
) -> Result<Quotient> {
    Quotient::new(
        &Subspace::span(field, n, ambient),
        &Subspace::span(field, n, sub),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let id: Vec<Vec<Scalar>> = Subspace::full(f2(), 3).basis().to_vec();
        assert_eq!(quotient_basis(f2(), 3, &id, &id).unwrap().dim(), 0);
        assert_eq!(quotient_basis(f2(), 3, &id, &[]).unwrap().dim(), 3);
        let q = quotient_basis(f2(), 3, &id, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.project(&[1, 1, 0]).unwrap(), vec![0, 0]);
        assert_eq!(q.project(&[1, 0, 0]), q.project(&[0, 1, 0]));
        let pm = q.projection_matrix();
        assert_eq!(pm.mul_vec(&[1, 0, 1]), q.project(&[1, 0, 1]).unwrap());
    }

    #[test]
    fn quotient_requires_containment() {
        let r = quotient_basis(f2(), 3, &[vec![1, 0, 0]], &[vec![0, 1, 0]]);
        assert!(matches!(r, Err(Error::NotContained)));
    }

    #[test]
    fn intersection() {
        let f = Fp::new(3).unwrap();
        let u = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersect(&w), Subspace::span(f, 3, &[vec![0, 1, 0]]));
        assert_eq!(u.sum(&w), Subspace::full(f, 3));
    }
}
