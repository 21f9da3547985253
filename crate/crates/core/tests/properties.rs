use std::sync::Arc;

use arcat::exactla::{nullspace_basis, rank, solve, Fp, Matrix, Scalar};
use arcat::ext::{realize, ExtSpace};
use arcat::quiver::{
    decompose, enumerate_indecomposables, hom, is_indecomposable, is_isomorphic, Morphism, Quiver,
    Rep,
};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];

fn matrix(f: Fp, rows: usize, cols: usize, seed: &[u32]) -> Matrix {
    let data = (0..rows * cols)
        .map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 1) % f.p())
        .collect();
    Matrix::from_vec(f, rows, cols, data).unwrap()
}

fn rep(q: &Arc<Quiver>, f: Fp, dims: &[usize], seed: &[u32]) -> Rep {
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let s: Vec<u32> = seed.iter().map(|x| x.rotate_left(k as u32 * 7)).collect();
            matrix(f, dims[a.target], dims[a.source], &s)
        })
        .collect();
    Rep::new(q.clone(), f, dims.to_vec(), maps).unwrap()
}

fn random_in(hs: &arcat::quiver::HomSpace, f: Fp, seed: &[u32]) -> Morphism {
    let c: Vec<Scalar> = (0..hs.dim())
        .map(|i| seed[i % seed.len()] % f.p())
        .collect();
    hs.combine(&c)
}

fn quiver(k: usize) -> Arc<Quiver> {
    match k % 4 {
        0 => Quiver::linear_a(3),
        1 => Quiver::zigzag_a(3),
        2 => Quiver::linear_a(4),
        _ => Quiver::zigzag_a(4),
    }
}

/// Σ d_i e_i − Σ_{α: i → j} d_i e_j, straight from the arrow list.
fn euler_oracle(q: &Quiver, d: &[usize], e: &[usize]) -> i64 {
    let verts: i64 = d.iter().zip(e).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = q
        .arrows()
        .iter()
        .map(|a| (d[a.source] * e[a.target]) as i64)
        .sum();
    verts - arrows
}

fn dims_for(q: &Quiver, raw: &[usize]) -> Vec<usize> {
    (0..q.num_vertices()).map(|i| raw[i % raw.len()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn row_rank_equals_column_rank(r in 0..7usize, c in 0..7usize, seed in prop::collection::vec(any::<u32>(), 1..50)) {
        for p in PRIMES {
            let f = Fp::new(p).unwrap();
            let m = matrix(f, r, c, &seed);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert!(rank(&m) <= r.min(c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(pi in 0..3usize, r in 0..7usize, c in 0..7usize, seed in prop::collection::vec(any::<u32>(), 1..50)) {
        let f = Fp::new(PRIMES[pi]).unwrap();
        let m = matrix(f, r, c, &seed);
        let ns = nullspace_basis(&m);
        prop_assert_eq!(ns.len() + rank(&m), c);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(pi in 0..3usize, r in 1..6usize, c in 1..6usize, k in 1..4usize, seed in prop::collection::vec(any::<u32>(), 1..50)) {
        let f = Fp::new(PRIMES[pi]).unwrap();
        let a = matrix(f, r, c, &seed);
        let x = matrix(f, c, k, &seed[seed.len() / 2..]);
        let b = a.try_mul(&x).unwrap();
        let y = solve(&a, &b).unwrap().expect("consistent system has a solution");
        prop_assert_eq!(a.try_mul(&y).unwrap(), b);
    }

    #[test]
    fn decomposition_reassembles(pi in 0..2usize, qk in 0..4usize, raw in prop::collection::vec(0..3usize, 4), seed in prop::collection::vec(any::<u32>(), 1..30)) {
        let f = Fp::new(PRIMES[pi]).unwrap();
        let q = quiver(qk);
        let m = rep(&q, f, &dims_for(&q, &raw), &seed);
        let d = decompose(&m).unwrap();
        let parts: Vec<Rep> = d.summands.iter().map(|s| s.rep.clone()).collect();
        for (i, s) in d.summands.iter().enumerate() {
            prop_assert!(is_indecomposable(&s.rep).unwrap());
            for (j, t) in d.summands.iter().enumerate() {
                let e = t.proj.compose(&s.incl);
                let ok = if i == j { e.sub(&Morphism::identity(&s.rep)).is_zero() } else { e.is_zero() };
                prop_assert!(ok, "proj {} . incl {}", j, i);
            }
        }
        if !parts.is_empty() {
            let sum = Rep::direct_sum_in(&q, f, &parts).unwrap().rep;
            prop_assert!(is_isomorphic(&sum, &m).unwrap());
        } else {
            prop_assert!(m.is_zero());
        }
    }

    #[test]
    fn euler_form_matches_hom_minus_ext(pi in 0..2usize, qk in 0..4usize, a in prop::collection::vec(0..3usize, 4), b in prop::collection::vec(0..3usize, 4), seed in prop::collection::vec(any::<u32>(), 1..30)) {
        let f = Fp::new(PRIMES[pi]).unwrap();
        let q = quiver(qk);
        let (da, db) = (dims_for(&q, &a), dims_for(&q, &b));
        let m = rep(&q, f, &da, &seed);
        let n = rep(&q, f, &db, &seed[seed.len() / 2..]);
        let lhs = hom(&m, &n).unwrap().dim() as i64 - ExtSpace::new(&m, &n).unwrap().dim() as i64;
        prop_assert_eq!(lhs, euler_oracle(&q, &da, &db));
    }

    #[test]
    fn realized_triangles_recover_their_class(pi in 0..2usize, qk in 0..4usize, a in prop::collection::vec(0..3usize, 4), b in prop::collection::vec(0..3usize, 4), seed in prop::collection::vec(any::<u32>(), 1..30)) {
        let f = Fp::new(PRIMES[pi]).unwrap();
        let q = quiver(qk);
        let c = rep(&q, f, &dims_for(&q, &a), &seed);
        let x = rep(&q, f, &dims_for(&q, &b), &seed[seed.len() / 2..]);
        let e = ExtSpace::new(&c, &x).unwrap();
        let coords: Vec<Scalar> = (0..e.dim()).map(|i| seed[i % seed.len()] % f.p()).collect();
        let d = e.class(&coords);
        let t = realize(&d);
        prop_assert!(e.equal(&t.class_of().unwrap(), &d));
        prop_assert_eq!(t.is_split().unwrap(), e.is_zero_class(&d));
        prop_assert_eq!(e.coords(&t.class_of().unwrap()), coords);
    }

    #[test]
    fn extension_classes_are_bifunctorial(pi in 0..2usize, qk in 0..4usize, raw in prop::collection::vec(0..3usize, 16), seed in prop::collection::vec(any::<u32>(), 4..40)) {
        let f = Fp::new(PRIMES[pi]).unwrap();
        let q = quiver(qk);
        let r = |k: usize| rep(&q, f, &dims_for(&q, &raw[4 * k..4 * k + 4]), &seed[k..]);
        let (c, x, c2, x2) = (r(0), r(1), r(2), r(3));
        let c3 = rep(&q, f, &dims_for(&q, &raw[2..6]), &seed[3..]);
        let e = ExtSpace::new(&c, &x).unwrap();
        let coords: Vec<Scalar> = (0..e.dim()).map(|i| seed[i % seed.len()] % f.p()).collect();
        let d = e.class(&coords);
        let g = random_in(&hom(&c2, &c).unwrap(), f, &seed);
        let h = random_in(&hom(&c3, &c2).unwrap(), f, &seed[1..]);
        let a = random_in(&hom(&x, &x2).unwrap(), f, &seed[2..]);

        let e3 = ExtSpace::new(&c3, &x).unwrap();
        let lhs = d.pullback(&g.compose(&h)).unwrap();
        let rhs = d.pullback(&g).unwrap().pullback(&h).unwrap();
        prop_assert!(e3.equal(&lhs, &rhs));

        let e22 = ExtSpace::new(&c2, &x2).unwrap();
        let pb_po = d.pullback(&g).unwrap().pushout(&a).unwrap();
        let po_pb = d.pushout(&a).unwrap().pullback(&g).unwrap();
        prop_assert!(e22.equal(&pb_po, &po_pb));

        let sum = d.add(&d.scale(2 % f.p()));
        let e2 = ExtSpace::new(&c2, &x).unwrap();
        let lin = d.pullback(&g).unwrap().add(&d.scale(2 % f.p()).pullback(&g).unwrap());
        prop_assert!(e2.equal(&sum.pullback(&g).unwrap(), &lin));
    }
}

#[test]
fn type_a_indecomposable_counts() {
    for p in [2, 3] {
        let f = Fp::new(p).unwrap();
        for n in 1..=5 {
            for q in [Quiver::linear_a(n), Quiver::zigzag_a(n)] {
                let u = enumerate_indecomposables(&q, f).unwrap();
                assert_eq!(u.len(), n * (n + 1) / 2, "n = {n}, p = {p}");
                for (i, a) in u.iter().enumerate() {
                    assert!(is_indecomposable(a).unwrap());
                    let e = hom(a, a).unwrap();
                    assert_eq!(e.dim(), 1, "interval modules are bricks");
                    for b in &u[i + 1..] {
                        assert!(!is_isomorphic(a, b).unwrap());
                    }
                }
            }
        }
    }
}
