use rand::Rng;

use super::field::{Fp, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// All vectors of F_p^d in lexicographic order (last coordinate fastest).
#[derive(Clone, Debug)]
pub struct Vectors {
    p: u32,
    cur: Option<Vec<Scalar>>,
}

impl Iterator for Vectors {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.p {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

/// Enumerates F_p^d, refusing when `p^d` exceeds `cap`.
pub fn all_vectors(field: Fp, d: usize, cap: u64) -> Result<Vectors> {
    check_cap(field, d, cap)?;
    Ok(Vectors {
        p: field.p(),
        cur: Some(vec![0; d]),
    })
}

pub fn check_cap(field: Fp, d: usize, cap: u64) -> Result<()> {
    let size = field.space_size(d);
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

pub fn random_vector<R: Rng + ?Sized>(field: Fp, d: usize, rng: &mut R) -> Vec<Scalar> {
    (0..d).map(|_| rng.gen_range(0..field.p())).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(field: Fp, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_vec(field, rows, cols, random_vector(field, rows * cols, rng)).expect("shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let f = Fp::new(3).unwrap();
        assert_eq!(all_vectors(f, 3, 100).unwrap().count(), 27);
        assert_eq!(all_vectors(f, 0, 100).unwrap().count(), 1);
        assert!(all_vectors(f, 5, 100).is_err());
    }
}
