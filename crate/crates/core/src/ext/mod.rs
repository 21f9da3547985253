//! Ext¹ as cocycles modulo coboundaries, realizations, and the actions of morphisms.

mod triangle;

pub use triangle::{
    complete_square, factor_through_deflation, pullback_triangle, pushout_triangle, realize,
    split_criteria, DeflationFactor, STriangle, STriangleMorphism,
};

use crate::error::{Error, Result};
use crate::exactla::{image_basis, Matrix, Quotient, Scalar, Subspace};
use crate::quiver::{intertwining_operator, Morphism, Rep};

/// A cocycle `(c_α)_α`, `c_α: C_x → A_y` for `α: x → y`, representing a class in E(C, A).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    base: Rep,
    fiber: Rep,
    cocycle: Vec<Matrix>,
}

impl ExtClass {
    pub fn new(base: Rep, fiber: Rep, cocycle: Vec<Matrix>) -> Result<Self> {
        base.same_category(&fiber)?;
        let q = base.quiver();
        if cocycle.len() != q.num_arrows() {
            return Err(Error::DimensionMismatch(
                "one cocycle matrix per arrow".into(),
            ));
        }
        for (arr, c) in q.arrows().iter().zip(&cocycle) {
            if c.shape() != (fiber.dim_at(arr.target), base.dim_at(arr.source)) {
                return Err(Error::DimensionMismatch(format!(
                    "cocycle at `{}` has shape {:?}",
                    arr.name,
                    c.shape()
                )));
            }
        }
        Ok(Self {
            base,
            fiber,
            cocycle,
        })
    }

    pub fn zero(base: &Rep, fiber: &Rep) -> Self {
        let f = base.field();
        let cocycle = base
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, fiber.dim_at(a.target), base.dim_at(a.source)))
            .collect();
        Self {
            base: base.clone(),
            fiber: fiber.clone(),
            cocycle,
        }
    }

    fn from_flat(base: &Rep, fiber: &Rep, flat: &[Scalar]) -> Self {
        let f = base.field();
        let mut off = 0;
        let cocycle = base
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (fiber.dim_at(a.target), base.dim_at(a.source));
                let m = Matrix::from_vec(f, r, c, flat[off..off + r * c].to_vec()).expect("shape");
                off += r * c;
                m
            })
            .collect();
        Self {
            base: base.clone(),
            fiber: fiber.clone(),
            cocycle,
        }
    }

    pub fn base(&self) -> &Rep {
        &self.base
    }
    pub fn fiber(&self) -> &Rep {
        &self.fiber
    }
    pub fn cocycle(&self) -> &[Matrix] {
        &self.cocycle
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.cocycle
            .iter()
            .flat_map(|m| m.data().iter().copied())
            .collect()
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        let cocycle = self
            .cocycle
            .iter()
            .zip(&other.cocycle)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            base: self.base.clone(),
            fiber: self.fiber.clone(),
            cocycle,
        }
    }

    pub fn scale(&self, s: Scalar) -> ExtClass {
        Self {
            base: self.base.clone(),
            fiber: self.fiber.clone(),
            cocycle: self.cocycle.iter().map(|m| m.scale(s)).collect(),
        }
    }

    /// a⋆δ for `a: fiber → A′`: cocycle `a_y c_α`.
    pub fn pushout(&self, a: &Morphism) -> Result<ExtClass> {
        if a.source().dims() != self.fiber.dims() {
            return Err(Error::DimensionMismatch(
                "pushout: source is not the fiber".into(),
            ));
        }
        let q = self.base.quiver();
        let cocycle = q
            .arrows()
            .iter()
            .zip(&self.cocycle)
            .map(|(arr, c)| a.comp(arr.target) * c)
            .collect();
        Ok(Self {
            base: self.base.clone(),
            fiber: a.target().clone(),
            cocycle,
        })
    }

    /// c*δ for `c: C′ → base`: cocycle `c_α c_x`.
    pub fn pullback(&self, c: &Morphism) -> Result<ExtClass> {
        if c.target().dims() != self.base.dims() {
            return Err(Error::DimensionMismatch(
                "pullback: target is not the base".into(),
            ));
        }
        let q = self.base.quiver();
        let cocycle = q
            .arrows()
            .iter()
            .zip(&self.cocycle)
            .map(|(arr, m)| m * c.comp(arr.source))
            .collect();
        Ok(Self {
            base: c.source().clone(),
            fiber: self.fiber.clone(),
            cocycle,
        })
    }

    /// δ⊕δ′ ∈ E(C⊕C′, A⊕A′): block-diagonal cocycle.
    pub fn direct_sum(&self, other: &ExtClass) -> Result<ExtClass> {
        let base = self.base.oplus(&other.base)?;
        let fiber = self.fiber.oplus(&other.fiber)?;
        let f = base.field();
        let cocycle = self
            .cocycle
            .iter()
            .zip(&other.cocycle)
            .map(|(a, b)| Matrix::block_diag(f, &[a, b]))
            .collect();
        Ok(Self {
            base,
            fiber,
            cocycle,
        })
    }

    /// Coset-zero test.
    pub fn is_split(&self) -> Result<bool> {
        Ok(ExtSpace::new(&self.base, &self.fiber)?.is_zero_class(self))
    }
}

/// E(C, A) with a canonical basis of coset representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    base: Rep,
    fiber: Rep,
    quotient: Quotient,
    basis: Vec<ExtClass>,
}

impl ExtSpace {
    pub fn new(base: &Rep, fiber: &Rep) -> Result<Self> {
        base.same_category(fiber)?;
        let f = base.field();
        let op = intertwining_operator(base, fiber);
        let z = op.rows();
        let cob = Subspace::span(f, z, &image_basis(&op));
        let quotient = Quotient::new(&Subspace::full(f, z), &cob)?;
        let basis = quotient
            .representatives()
            .iter()
            .map(|v| ExtClass::from_flat(base, fiber, v))
            .collect();
        Ok(Self {
            base: base.clone(),
            fiber: fiber.clone(),
            quotient,
            basis,
        })
    }

    pub fn base(&self) -> &Rep {
        &self.base
    }
    pub fn fiber(&self) -> &Rep {
        &self.fiber
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[ExtClass] {
        &self.basis
    }

    pub fn coords(&self, d: &ExtClass) -> Vec<Scalar> {
        self.quotient
            .project(&d.flatten())
            .expect("cocycle space is the full ambient")
    }

    pub fn class(&self, coords: &[Scalar]) -> ExtClass {
        let mut acc = ExtClass::zero(&self.base, &self.fiber);
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    pub fn is_zero_class(&self, d: &ExtClass) -> bool {
        self.quotient.is_zero_class(&d.flatten())
    }

    pub fn equal(&self, a: &ExtClass, b: &ExtClass) -> bool {
        let f = self.base.field();
        let diff: Vec<Scalar> = a
            .flatten()
            .iter()
            .zip(b.flatten())
            .map(|(&x, y)| f.sub(x, y))
            .collect();
        self.quotient.is_zero_class(&diff)
    }

    /// Matrix (in basis coordinates) of a linear map `E(C,A) → target` given on representatives.
    pub fn map_matrix<F>(&self, target: &ExtSpace, mut apply: F) -> Result<Matrix>
    where
        F: FnMut(&ExtClass) -> Result<ExtClass>,
    {
        let f = self.base.field();
        let cols: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|b| apply(b).map(|img| target.coords(&img)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_cols(f, target.dim(), &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::quiver::{hom, Quiver};

    #[test]
    fn ext_of_simples_in_a2() {
        let f = Fp::new(2).unwrap();
        let q = Quiver::linear_a(2);
        let s1 = Rep::simple(&q, f, 0);
        let s2 = Rep::simple(&q, f, 1);
        assert_eq!(ExtSpace::new(&s1, &s2).unwrap().dim(), 1);
        assert_eq!(ExtSpace::new(&s2, &s1).unwrap().dim(), 0);
        let p1 = Rep::projective(&q, f, 0);
        for m in [&s1, &s2, &p1] {
            assert_eq!(ExtSpace::new(&p1, m).unwrap().dim(), 0);
        }
    }

    #[test]
    fn euler_identity_small() {
        let f = Fp::new(3).unwrap();
        let q = Quiver::zigzag_a(4);
        let reps: Vec<Rep> = (0..4)
            .flat_map(|v| [Rep::projective(&q, f, v), Rep::injective(&q, f, v)])
            .collect();
        for m in &reps {
            for n in &reps {
                let lhs =
                    hom(m, n).unwrap().dim() as i64 - ExtSpace::new(m, n).unwrap().dim() as i64;
                assert_eq!(lhs, q.euler_form(m.dims(), n.dims()));
            }
        }
    }
}
