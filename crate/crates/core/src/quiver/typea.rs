use std::sync::Arc;

use super::quiver::{line_order, Quiver};
use super::rep::Rep;
use crate::error::Result;
use crate::exactla::{Fp, Matrix};

/// Interval module on line positions `i..=j`: one-dimensional there, identity on inner arrows.
pub fn interval(q: &Arc<Quiver>, field: Fp, i: usize, j: usize) -> Result<Rep> {
    let order = line_order(q)?;
    let mut dims = vec![0; q.num_vertices()];
    for &v in &order[i..=j] {
        dims[v] = 1;
    }
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            if dims[a.source] == 1 && dims[a.target] == 1 {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[a.target], dims[a.source])
            }
        })
        .collect();
    Rep::new(q.clone(), field, dims, maps)
}

/// One representative per isomorphism class of indecomposables, for line-shaped quivers.
/// Intervals are listed lexicographically by `(start, end)` along the line order.
pub fn enumerate_indecomposables(q: &Arc<Quiver>, field: Fp) -> Result<Vec<Rep>> {
    let n = line_order(q)?.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(interval(q, field, i, j)?);
        }
    }
    Ok(out)
}

/// Support of a thin indecomposable as `(first, last)` line positions, if it is an interval.
pub fn interval_support(m: &Rep) -> Option<(usize, usize)> {
    let order = line_order(m.quiver()).ok()?;
    let pos: Vec<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, &v)| m.dim_at(v) > 0)
        .map(|(i, _)| i)
        .collect();
    let (&a, &b) = (pos.first()?, pos.last()?);
    if b - a + 1 != pos.len() || order.iter().any(|&v| m.dim_at(v) > 1) {
        return None;
    }
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{is_indecomposable, iso_indecomposable};

    #[test]
    fn counts() {
        let f = Fp::new(2).unwrap();
        for n in 1..=4 {
            let q = Quiver::linear_a(n);
            assert_eq!(
                enumerate_indecomposables(&q, f).unwrap().len(),
                n * (n + 1) / 2
            );
        }
        let q = Quiver::linear_a(2);
        let all = enumerate_indecomposables(&q, f).unwrap();
        assert_eq!(all.len(), 3);
        for (i, a) in all.iter().enumerate() {
            assert!(is_indecomposable(a).unwrap());
            for b in &all[i + 1..] {
                assert!(!iso_indecomposable(a, b).unwrap());
            }
        }
    }

    #[test]
    fn non_line_rejected() {
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "3", "2"), ("c", "4", "2")],
        )
        .unwrap();
        assert!(enumerate_indecomposables(&q, Fp::new(2).unwrap()).is_err());
    }
}
