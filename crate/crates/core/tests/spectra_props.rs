mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_family;
use ziegler::exceptional::{closure, metadata, point_closure, truncate, truncation_points, FamilySet};
use ziegler::nearly_simple::{ns_closure, NsPoint};
use ziegler::topology::{PointMeta, PointSet};

/// `Ass` and `Div` shrink and `ann` grows from a point to its specializations.
fn monotone(p: PointMeta, q: PointMeta) -> bool {
    q.ass.is_subset_of(p.ass) && q.div.is_subset_of(p.div) && p.ann.is_subset_of(q.ann)
}

#[test]
fn exceptional_metadata_is_monotone_along_specialization() {
    for k in 0..=3 {
        for p in truncation_points(k, 8) {
            for q in point_closure(p, k).unwrap() {
                assert!(monotone(metadata(p, k).unwrap(), metadata(q, k).unwrap()), "C_{k}: {p:?} ⤳ {q:?}");
            }
        }
    }
}

#[test]
fn nearly_simple_metadata_is_monotone_along_specialization() {
    for p in NsPoint::ALL {
        for q in ns_closure(p) {
            assert!(monotone(p.metadata(), q.metadata()), "{p:?} ⤳ {q:?}");
        }
    }
}

#[test]
fn truncations_compute_the_symbolic_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for k in 0..=3u64 {
        let n = k.max(1) + 4;
        let space = truncate(k, n).unwrap();
        let pts = truncation_points(k, n);
        for _ in 0..300 {
            let c = random_family(&mut rng, k);
            let members: Vec<usize> = (0..pts.len()).filter(|&i| c.contains(pts[i])).collect();
            let restricted = FamilySet::from_points(members.iter().map(|&i| pts[i]));
            let symbolic = closure(&restricted, k);
            let finite = space.closure(PointSet::from_indices(members));
            for (i, &p) in pts.iter().enumerate() {
                assert_eq!(finite.contains(i), symbolic.contains(p), "C_{k}: {p:?} for {}", c.to_compact_json());
            }
        }
    }
}

#[test]
fn closure_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for k in 0..=3 {
        for _ in 0..1000 {
            let a = random_family(&mut rng, k);
            let b = random_family(&mut rng, k);
            let ab = a.union(&b);
            assert!(closure(&a, k).is_subset(&closure(&ab, k)));
            assert!(FamilySet::empty().is_subset(&closure(&a, k)));
        }
    }
}
