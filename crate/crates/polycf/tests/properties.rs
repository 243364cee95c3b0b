use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use polycf::automata::zk_recognizer;
use polycf::diophantine::{hilbert_basis, intersect_linear, minimal_inhom_solutions, HomSystem, SearchLimits};
use polycf::groups::AnyGroup;
use polycf::linalg::nonnegative_kernel_rays;
use polycf::vecset::{LinearSet, Permutation, SemilinearSet, Vec0};
use polycf::witness::complex_period_constant;

fn box_points(dim: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=bound).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn residual(rows: &[Vec<i64>], x: &[u64], rhs: &[i64]) -> bool {
    rows.iter().zip(rhs).all(|(row, b)| row.iter().zip(x).map(|(a, v)| a * *v as i64).sum::<i64>() == *b)
}

/// ≤-minimal elements of `sols`.
fn minimal(sols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = sols
        .iter()
        .filter(|x| !sols.iter().any(|y| y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect();
    out.sort();
    out
}

fn system(rows: &[Vec<i64>]) -> HomSystem {
    HomSystem::new(rows[0].len(), rows.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect()).unwrap()
}

fn in_box(v: &Vec0, bound: u64) -> Option<Vec<u64>> {
    let u = v.to_u64s()?;
    u.iter().all(|&x| x <= bound).then_some(u)
}

fn small_system() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4, 1usize..=2)
        .prop_flat_map(|(cols, rows)| prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows))
}

fn linear_set(dim: usize, max_periods: usize, max_entry: u64) -> impl Strategy<Value = LinearSet> {
    let vec = move || prop::collection::vec(0..=max_entry, dim);
    (vec(), prop::collection::vec(vec(), 0..=max_periods)).prop_map(|(c, ps)| {
        let periods = ps.iter().map(|p| Vec0::from_u64s(p)).collect();
        LinearSet::new(Vec0::from_u64s(&c), periods).unwrap()
    })
}

const DESCRIPTORS: [&str; 9] =
    ["free:2", "zn:3", "bs:1,2", "bs:2,3", "wreath:p=2", "wreath:Z", "gc:1,-2", "gc:-1,0,2", "abc:p=2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_basis_agrees_with_brute_force(rows in small_system()) {
        const B: u64 = 6;
        let cols = rows[0].len();
        let basis = hilbert_basis(&system(&rows), SearchLimits::default()).unwrap();
        let zero = vec![0i64; rows.len()];
        let sols: Vec<Vec<u64>> = box_points(cols, B)
            .into_iter()
            .filter(|x| x.iter().any(|&v| v > 0) && residual(&rows, x, &zero))
            .collect();
        let mut found: Vec<Vec<u64>> = basis.iter().filter_map(|v| in_box(v, B)).collect();
        found.sort();
        prop_assert_eq!(found, minimal(&sols));
        for v in &basis {
            prop_assert!(residual(&rows, &v.to_u64s().unwrap(), &zero));
        }
    }

    #[test]
    fn inhomogeneous_minimal_solutions_agree_with_brute_force(
        rows in small_system(),
        rhs_seed in prop::collection::vec(-4i64..=4, 2),
    ) {
        const B: u64 = 6;
        let cols = rows[0].len();
        let rhs: Vec<i64> = rhs_seed[..rows.len()].to_vec();
        let big: Vec<BigInt> = rhs.iter().map(|&b| BigInt::from(b)).collect();
        let mins = minimal_inhom_solutions(&system(&rows), &big, SearchLimits::default()).unwrap();
        let sols: Vec<Vec<u64>> = box_points(cols, B).into_iter().filter(|x| residual(&rows, x, &rhs)).collect();
        let mut found: Vec<Vec<u64>> = mins.iter().filter_map(|v| in_box(v, B)).collect();
        found.sort();
        prop_assert_eq!(found, minimal(&sols));
    }

    #[test]
    fn kernel_rays_are_nonnegative_kernel_vectors(rows in small_system()) {
        let cols = rows[0].len();
        let q: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect())
            .collect();
        let rays = nonnegative_kernel_rays(&q, cols);
        for ray in &rays {
            prop_assert!(ray.iter().all(|x| !x.is_negative()) && ray.iter().any(|x| !x.is_zero()));
            for row in &rows {
                let dot: BigInt = row.iter().zip(ray).map(|(a, x)| BigInt::from(*a) * x).sum();
                prop_assert!(dot.is_zero());
            }
        }
        let basis = hilbert_basis(&system(&rows), SearchLimits::default()).unwrap();
        prop_assert_eq!(rays.is_empty(), basis.is_empty());
    }

    #[test]
    fn membership_certificates_replay(set in linear_set(3, 3, 3), point in prop::collection::vec(0u64..=8, 3)) {
        let v = Vec0::from_u64s(&point);
        let members = SemilinearSet::single(set.clone()).box_members(8).unwrap();
        match set.certificate(&v).unwrap() {
            Some(alpha) => {
                let rebuilt = set
                    .periods()
                    .iter()
                    .zip(&alpha)
                    .fold(set.constant().clone(), |acc, (p, a)| acc.add(&p.scale(a)));
                prop_assert_eq!(&rebuilt, &v);
                prop_assert!(members.contains(&point));
            }
            None => prop_assert!(!members.contains(&point)),
        }
    }

    #[test]
    fn intersection_is_pointwise_and(
        a in linear_set(3, 3, 3),
        b in linear_set(3, 3, 3),
    ) {
        let got = intersect_linear(&[a.clone(), b.clone()], SearchLimits::default()).unwrap().box_members(9).unwrap();
        let want = SemilinearSet::single(a).box_members(9).unwrap().intersect(&SemilinearSet::single(b).box_members(9).unwrap());
        prop_assert_eq!(got.first_difference(&want), None);
    }

    #[test]
    fn permutation_preserves_membership(
        sets in prop::collection::vec(linear_set(3, 2, 3), 1..=2),
        images in Just(vec![1usize, 2, 3]).prop_shuffle(),
        point in prop::collection::vec(0u64..=6, 3),
    ) {
        let set = SemilinearSet::new(3, sets).unwrap();
        let tau = Permutation::from_one_based(&images).unwrap();
        let v = Vec0::from_u64s(&point);
        prop_assert_eq!(set.member(&v).unwrap(), set.permute(&tau).unwrap().member(&v.permute(&tau).unwrap()).unwrap());
    }

    #[test]
    fn complex_period_constant_bounds_b_over_a(
        sets in prop::collection::vec(linear_set(2, 2, 3), 1..=2),
        coeffs in prop::collection::vec(0u64..=6, 2),
    ) {
        let set = SemilinearSet::new(2, sets).unwrap();
        let c = complex_period_constant(&set, 1).unwrap();
        for comp in set.components() {
            let v = comp
                .periods()
                .iter()
                .filter(|p| !p.get(0).is_zero())
                .zip(&coeffs)
                .fold(comp.constant().clone(), |acc, (p, k)| acc.add(&p.scale(&BigUint::from(*k))));
            if !v.get(0).is_zero() {
                prop_assert!(*v.get(1) < &c * v.get(0), "{} breaks C = {}", v, c);
            }
        }
    }

    #[test]
    fn group_evaluation_is_a_homomorphism(
        which in 0..DESCRIPTORS.len(),
        u in prop::collection::vec(any::<prop::sample::Index>(), 0..10),
        v in prop::collection::vec(any::<prop::sample::Index>(), 0..10),
    ) {
        let g = AnyGroup::from_descriptor(DESCRIPTORS[which]).unwrap();
        let n = g.alphabet().len();
        let u: Vec<usize> = u.iter().map(|i| i.index(n)).collect();
        let v: Vec<usize> = v.iter().map(|i| i.index(n)).collect();
        prop_assert!(g.multiplicative_on(&u, &v));
        prop_assert!(g.inverse_consistent_on(&u));
    }

    #[test]
    fn plane_recognizer_matches_group(letters in prop::collection::vec(0usize..4, 0..14)) {
        let rec = zk_recognizer(2).unwrap();
        let g = AnyGroup::from_descriptor("zn:2").unwrap();
        prop_assert_eq!(rec.accepts(&letters), g.in_word_problem(&letters));
    }
}
