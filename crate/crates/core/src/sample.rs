//! Seeded random vertices, component members and automorphisms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::auto::RegularAutomorphism;
use crate::error::Result;
use crate::graph::{as_vertex, Vertex};
use crate::perm::{random_permutation_with, RandomPermConfig};
use crate::setalg::PeriodicSet;

/// A balanced set with prefix and period lengths drawn up to the bounds.
pub fn random_balanced<R: Rng>(rng: &mut R, max_prefix: usize, max_period: usize) -> Vertex {
    loop {
        let prefix: Vec<bool> = (0..rng.gen_range(0..=max_prefix)).map(|_| rng.gen()).collect();
        let period: Vec<bool> = (0..rng.gen_range(2..=max_period.max(2))).map(|_| rng.gen()).collect();
        if let Ok(v) = PeriodicSet::from_parts(prefix, period).and_then(as_vertex) {
            return v;
        }
    }
}

/// A member of `J(base)`: swap up to `max_swaps` elements of `base` for
/// non-members, all inside `[1, window]`.
pub fn random_component_member<R: Rng>(rng: &mut R, base: &Vertex, max_swaps: usize, window: u64) -> Result<Vertex> {
    let mut inside = base.set().elements_upto(window);
    let mut outside: Vec<u64> = (1..=window).filter(|&n| !base.contains(n)).collect();
    let swaps = rng.gen_range(0..=max_swaps.min(inside.len()).min(outside.len()));
    inside.shuffle(rng);
    outside.shuffle(rng);
    base.edit(&inside[..swaps], &outside[..swaps])
}

/// A member of `J(base)` different from `base`, when the window allows one.
pub fn random_other_member<R: Rng>(rng: &mut R, base: &Vertex, max_swaps: usize, window: u64) -> Result<Vertex> {
    for _ in 0..64 {
        let v = random_component_member(rng, base, max_swaps.max(1), window)?;
        if &v != base {
            return Ok(v);
        }
    }
    base.edit(&[base.min_element()], &[base.min_absent()])
}

pub fn random_regular<R: Rng>(rng: &mut R, config: &RandomPermConfig, flip: bool) -> Result<RegularAutomorphism> {
    Ok(RegularAutomorphism::new(random_permutation_with(rng, config)?, flip))
}
