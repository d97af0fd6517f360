//! Seeded random diagrams for gluing and twist-expansion tests.

#![allow(dead_code)]

use halftwist::ribbon::{Generator, RibbonDiagram};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const GENERATORS: [Generator; 6] = [
    Generator::Node,
    Generator::Cap,
    Generator::Cup,
    Generator::Cross,
    Generator::TwistR,
    Generator::TwistL,
];

/// A valid diagram with at most `max_width` live strands and `1..=max_slices` slices.
pub fn random_diagram(rng: &mut StdRng, max_width: usize, max_slices: usize) -> RibbonDiagram {
    let bottom = rng.random_range(0..=max_width.min(3));
    let mut d = RibbonDiagram::new(bottom);
    d.r_power = rng.random_range(0..=2);
    let mut w = bottom;
    let target = rng.random_range(1..=max_slices);
    while d.slices.len() < target {
        let g = GENERATORS[rng.random_range(0..GENERATORS.len())];
        let (i, o) = g.arity();
        if i > w || w - i + o > max_width {
            continue;
        }
        let pos = rng.random_range(0..=w - i);
        d.push(g, pos);
        w = w - i + o;
    }
    d
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
