//! Shared fixtures for the criterion benchmarks.

use groupoidrep::gen;
use groupoidrep::groupoid::{FiniteGroupoid, GroupTable};
use groupoidrep::transfer::GroupoidRep;

pub fn pair(n: usize) -> FiniteGroupoid {
    FiniteGroupoid::pair(n)
}

pub fn group_bundle_z2(points: usize) -> FiniteGroupoid {
    FiniteGroupoid::group_bundle(&GroupTable::cyclic(2), points).expect("valid table")
}

/// A reproducible rank-`dim` representation on the given groupoid.
pub fn seeded_rep(gpd: &FiniteGroupoid, dim: usize, seed: u64) -> GroupoidRep {
    let mut rng = gen::seeded_rng(seed);
    gen::groupoid_rep(&mut rng, gpd, dim)
}
