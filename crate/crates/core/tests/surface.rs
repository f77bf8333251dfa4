mod common;

use braidquiver_core::surface::{all_arcs, braid_graph, compatible, enumerate_triangulations, flip, initial_triangulation, quiver_of, Tag, TaggedArc, Triangulation};
use braidquiver_core::{DynkinType, Quiver};
use common::catalan;
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn type_a_counts_are_catalan() {
    for n in 2..=7usize {
        let all = enumerate_triangulations(DynkinType::a(n), 100_000).unwrap();
        assert_eq!(all.len() as u64, catalan(n + 1), "A{n}");
    }
}

#[test]
fn type_d_counts() {
    // (3n − 2)/n · C(2n − 2, n − 1)
    for n in 4..=6u64 {
        let all = enumerate_triangulations(DynkinType::d(n as usize), 100_000).unwrap();
        assert_eq!(all.len() as u64, (3 * n - 2) * binom(2 * n - 2, n - 1) / n);
    }
}

#[test]
fn flip_closure_finds_every_maximal_compatible_set() {
    // brute force over all rank-sized compatible subsets of arcs in D4
    let ty = DynkinType::d(4);
    let arcs = all_arcs(ty).unwrap();
    let mut count = 0;
    let n = arcs.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != 4 {
            continue;
        }
        let set: Vec<TaggedArc> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| arcs[i]).collect();
        if set.iter().enumerate().all(|(i, &a)| set[..i].iter().all(|&b| compatible(ty, a, b).unwrap())) {
            count += 1;
        }
    }
    assert_eq!(count, enumerate_triangulations(ty, 1000).unwrap().len());
}

#[test]
fn initial_quivers() {
    let a5 = quiver_of(&initial_triangulation(DynkinType::a(5)).unwrap());
    assert_eq!(a5, Quiver::new(1..=5, [(2, 1), (3, 2), (4, 3), (5, 4)]).unwrap());
    let d7 = quiver_of(&initial_triangulation(DynkinType::d(7)).unwrap());
    assert_eq!(d7, Quiver::new(1..=7, [(2, 1), (3, 2), (4, 3), (5, 4), (6, 5), (7, 5)]).unwrap());
}

#[test]
fn flips_commute_with_mutation_everywhere() {
    for ty in ["A2", "A3", "A4", "A5", "D4", "D5"] {
        let ty: DynkinType = ty.parse().unwrap();
        for set in enumerate_triangulations(ty, 100_000).unwrap() {
            let t = Triangulation::new(ty, set.into_iter().collect()).unwrap();
            let q = quiver_of(&t);
            let g = braid_graph(&t);
            assert_eq!(g.edges.len(), ty.rank());
            for k in 0..ty.rank() {
                let f = flip(&t, k).unwrap();
                assert_eq!(flip(&f, k).unwrap(), t);
                assert_eq!(quiver_of(&f), q.mutate(k as u32 + 1).unwrap());
            }
        }
    }
}

#[test]
fn invalid_input_is_rejected() {
    let ty = DynkinType::a(3);
    assert!(Triangulation::new(ty, vec![TaggedArc::Peripheral(1, 3), TaggedArc::Peripheral(2, 4), TaggedArc::Peripheral(1, 4)]).is_err());
    assert!(Triangulation::new(ty, vec![TaggedArc::Peripheral(1, 3)]).is_err());
    assert!(Triangulation::new(ty, vec![TaggedArc::Peripheral(1, 2), TaggedArc::Peripheral(1, 3), TaggedArc::Peripheral(1, 4)]).is_err());
    assert!(Triangulation::new(DynkinType::d(4), vec![TaggedArc::Radius(1, Tag::Plain), TaggedArc::Radius(2, Tag::Notched), TaggedArc::Peripheral(1, 3), TaggedArc::Peripheral(3, 1)]).is_err());
    assert!(initial_triangulation(DynkinType::e(6)).is_err());
}

proptest! {
    #[test]
    fn random_flip_walks_track_mutation(n in 4usize..=7, d in any::<bool>(), path in prop::collection::vec(0usize..7, 0..25)) {
        let ty = if d { DynkinType::d(n) } else { DynkinType::a(n) };
        let mut t = initial_triangulation(ty).unwrap();
        let mut q = quiver_of(&t);
        for k in path.into_iter().map(|k| k % n) {
            t = flip(&t, k).unwrap();
            q = q.mutate(k as u32 + 1).unwrap();
            prop_assert_eq!(quiver_of(&t), q.clone());
        }
    }
}
