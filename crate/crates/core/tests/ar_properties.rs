use std::sync::Arc;

use arcat::artheory::{
    almost_split_ending_at, almost_split_starting_at, check_almost_split, tau, tau_minus,
};
use arcat::determiners::{intrinsic_weak_kernel, is_right_determined};
use arcat::exactla::{Fp, Matrix, Scalar};
use arcat::ext::{realize, ExtSpace};
use arcat::quiver::{
    decompose, enumerate_indecomposables, hom, is_isomorphic, HomSpace, Morphism, Quiver, Rep,
};
use arcat::stable::{is_injective, is_projective, right_minimal_version};
use proptest::prelude::*;

const CAP: u64 = 1 << 16;

fn rep(q: &Arc<Quiver>, f: Fp, dims: &[usize], seed: &[u32]) -> Rep {
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let data = (0..r * c)
                .map(|i| seed[(i + k) % seed.len()].rotate_left(i as u32 + 3 * k as u32) % f.p())
                .collect();
            Matrix::from_vec(f, r, c, data).unwrap()
        })
        .collect();
    Rep::new(q.clone(), f, dims.to_vec(), maps).unwrap()
}

fn random_in(hs: &HomSpace, f: Fp, seed: &[u32]) -> Morphism {
    let c: Vec<Scalar> = (0..hs.dim())
        .map(|i| seed[i % seed.len()] % f.p())
        .collect();
    hs.combine(&c)
}

fn quiver(k: usize) -> Arc<Quiver> {
    [
        Quiver::linear_a(3),
        Quiver::zigzag_a(3),
        Quiver::linear_a(4),
        Quiver::zigzag_a(4),
    ][k % 4]
        .clone()
}

fn dims(q: &Quiver, raw: &[usize]) -> Vec<usize> {
    (0..q.num_vertices()).map(|i| raw[i % raw.len()]).collect()
}

fn class(e: &ExtSpace, f: Fp, seed: &[u32]) -> arcat::ext::ExtClass {
    let c: Vec<Scalar> = (0..e.dim())
        .map(|i| seed[(i * 5) % seed.len()] % f.p())
        .collect();
    e.class(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn direct_sums_of_classes_realize_to_direct_sums(pi in 0..2usize, qk in 0..4usize, raw in prop::collection::vec(0..3usize, 16), seed in prop::collection::vec(any::<u32>(), 4..40)) {
        let f = Fp::new([2, 3][pi]).unwrap();
        let q = quiver(qk);
        let r = |k: usize| rep(&q, f, &dims(&q, &raw[4 * k..4 * k + 4]), &seed[k..]);
        let (c, x, c2, x2) = (r(0), r(1), r(2), r(3));
        let (e, e2) = (ExtSpace::new(&c, &x).unwrap(), ExtSpace::new(&c2, &x2).unwrap());
        let (d, d2) = (class(&e, f, &seed), class(&e2, f, &seed[1..]));
        let sum = d.direct_sum(&d2).unwrap();
        let t = realize(&sum);
        let middle = realize(&d).middle.oplus(&realize(&d2).middle).unwrap();
        prop_assert!(is_isomorphic(&t.middle, &middle).unwrap());
        prop_assert_eq!(t.is_split().unwrap(), e.is_zero_class(&d) && e2.is_zero_class(&d2));
    }

    #[test]
    fn surjective_composite_forces_surjective_second_factor(pi in 0..2usize, qk in 0..4usize, raw in prop::collection::vec(0..3usize, 12), seed in prop::collection::vec(any::<u32>(), 4..40)) {
        let f = Fp::new([2, 3][pi]).unwrap();
        let q = quiver(qk);
        let r = |k: usize| rep(&q, f, &dims(&q, &raw[4 * k..4 * k + 4]), &seed[k..]);
        let (a, b, c) = (r(0), r(1), r(2));
        let fm = random_in(&hom(&a, &b).unwrap(), f, &seed);
        let g = random_in(&hom(&b, &c).unwrap(), f, &seed[2..]);
        if g.compose(&fm).is_surjective() {
            prop_assert!(g.is_surjective());
        }
    }

    #[test]
    fn right_minimal_version_is_idempotent(pi in 0..2usize, qk in 0..4usize, raw in prop::collection::vec(0..3usize, 8), seed in prop::collection::vec(any::<u32>(), 4..40)) {
        let f = Fp::new([2, 3][pi]).unwrap();
        let q = quiver(qk);
        let x = rep(&q, f, &dims(&q, &raw[..4]), &seed);
        let y = rep(&q, f, &dims(&q, &raw[4..]), &seed[1..]);
        let g = random_in(&hom(&x, &y).unwrap(), f, &seed[2..]);
        let m = right_minimal_version(&g).unwrap();
        prop_assert!(m.certified);
        prop_assert!(g.sub(&m.map.compose(&m.retr)).is_zero());
        let mm = right_minimal_version(&m.map).unwrap();
        prop_assert!(is_isomorphic(mm.map.source(), m.map.source()).unwrap());
    }
}

fn fixtures() -> Vec<(Arc<Quiver>, Fp)> {
    let mut out = Vec::new();
    for p in [2, 3] {
        for n in 2..=4 {
            out.push((Quiver::linear_a(n), Fp::new(p).unwrap()));
            out.push((Quiver::zigzag_a(n), Fp::new(p).unwrap()));
        }
    }
    out
}

#[test]
fn translates_are_mutually_inverse_on_indecomposables() {
    for (q, f) in fixtures() {
        for c in enumerate_indecomposables(&q, f).unwrap() {
            if !is_projective(&c).unwrap() {
                assert!(is_isomorphic(&tau_minus(&tau(&c).unwrap()).unwrap(), &c).unwrap());
            }
            if !is_injective(&c).unwrap() {
                assert!(is_isomorphic(&tau(&tau_minus(&c).unwrap()).unwrap(), &c).unwrap());
            }
        }
    }
}

#[test]
fn almost_split_triangles_validate_and_match_translates() {
    for (q, f) in fixtures() {
        let u = enumerate_indecomposables(&q, f).unwrap();
        for c in &u {
            if !is_projective(c).unwrap() {
                let t = almost_split_ending_at(c, &u, CAP).unwrap();
                assert!(t.report.pass);
                assert!(is_isomorphic(&t.triangle.fiber, &tau(c).unwrap()).unwrap());
                assert!(check_almost_split(&t.triangle, &u, CAP).unwrap().pass);
            }
            if !is_injective(c).unwrap() {
                let t = almost_split_starting_at(c, &u, CAP).unwrap();
                assert!(t.report.pass);
                assert!(is_isomorphic(&t.triangle.base, &tau_minus(c).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn almost_split_fiber_is_a_summand_of_the_weak_kernel_of_a_determined_deflation() {
    for (q, f) in fixtures() {
        let u = enumerate_indecomposables(&q, f).unwrap();
        for c in &u {
            if is_projective(c).unwrap() {
                continue;
            }
            let t = almost_split_ending_at(c, &u, CAP).unwrap().triangle;
            assert!(is_right_determined(&t.defl, c, &u, CAP).unwrap().verdict);
            let k = intrinsic_weak_kernel(&t.defl).unwrap().kernel;
            let hit = decompose(&k)
                .unwrap()
                .summands
                .iter()
                .any(|s| is_isomorphic(&s.rep, &t.fiber).unwrap());
            assert!(hit, "fiber is not a summand of the weak kernel");
        }
    }
}
