//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ziegler::exceptional::FamilySet;
use ziegler::family::IndexPart;
use ziegler::invariant::{UpsetPair, WSet};
use ziegler::valuegroup::{Cut, Extended, QuadElement, ValueGroup};

pub fn golden_group() -> ValueGroup {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let phi = QuadElement::new(half.clone(), half, 5).expect("5 is square-free");
    ValueGroup::new(5, vec![QuadElement::from_ints(1, 0, 5), phi]).expect("valid generators")
}

pub fn random_group_element(rng: &mut ChaCha8Rng, g: &ValueGroup, radius: i64) -> QuadElement {
    let coeffs: Vec<i64> = (0..g.rank()).map(|_| rng.gen_range(-radius..=radius)).collect();
    g.element(&coeffs)
}

pub fn random_nonneg(rng: &mut ChaCha8Rng, g: &ValueGroup, radius: i64) -> QuadElement {
    loop {
        let x = random_group_element(rng, g, radius);
        if !x.is_negative() {
            return x;
        }
    }
}

pub fn random_positive(rng: &mut ChaCha8Rng, g: &ValueGroup, radius: i64) -> QuadElement {
    loop {
        let x = random_group_element(rng, g, radius);
        if x.is_positive() {
            return x;
        }
    }
}

/// A non-negative field element, usually outside a rank-two group.
pub fn random_field_nonneg(rng: &mut ChaCha8Rng, d: u64) -> QuadElement {
    loop {
        let r = |rng: &mut ChaCha8Rng| BigRational::new(BigInt::from(rng.gen_range(-12..=12)), BigInt::from(3));
        let x = QuadElement::new(r(rng), r(rng), d).expect("square-free");
        if !x.is_negative() {
            return x;
        }
    }
}

pub fn random_cut(rng: &mut ChaCha8Rng, g: &ValueGroup) -> Cut {
    match rng.gen_range(0..6) {
        0 => Cut::Infinity,
        1 | 2 => Cut::AtClosed(random_positive(rng, g, 4)),
        3 => Cut::AtOpen(random_field_nonneg(rng, g.d())),
        _ => Cut::AtOpen(random_nonneg(rng, g, 4)),
    }
}

pub fn random_extended(rng: &mut ChaCha8Rng, g: &ValueGroup) -> Extended {
    if rng.gen_bool(0.25) {
        Extended::Infinite
    } else {
        Extended::Finite(random_positive(rng, g, 3))
    }
}

pub fn random_wset(rng: &mut ChaCha8Rng, g: &ValueGroup) -> WSet {
    WSet::new(random_nonneg(rng, g, 3), random_nonneg(rng, g, 3), random_extended(rng, g), random_extended(rng, g))
}

/// A pair `≈`-equivalent to `p` through a random shift, when one is valid.
pub fn random_shift(rng: &mut ChaCha8Rng, p: &UpsetPair, g: &ValueGroup) -> Option<UpsetPair> {
    let s = random_nonneg(rng, g, 3);
    let q = if rng.gen() {
        UpsetPair::new(p.left.translate(&s), p.right.translate(&-s))
    } else {
        UpsetPair::new(p.left.translate(&-s.clone()), p.right.translate(&s))
    };
    q.validate(g).is_ok().then_some(q)
}

pub fn random_part(rng: &mut ChaCha8Rng) -> IndexPart {
    let picks: Vec<u64> = (1..=8).filter(|_| rng.gen_bool(0.3)).collect();
    match rng.gen_range(0..4) {
        0 => IndexPart::empty(),
        1 => IndexPart::cofinite(picks),
        _ => IndexPart::finite(picks),
    }
}

pub fn random_family(rng: &mut ChaCha8Rng, k: u64) -> FamilySet {
    let x = random_part(rng);
    let (y, z) = if k == 0 { (IndexPart::empty(), IndexPart::empty()) } else { (random_part(rng), random_part(rng)) };
    FamilySet { x, y, z, n00: rng.gen(), njj: rng.gen(), nj0: rng.gen(), n0j: rng.gen() }
}
