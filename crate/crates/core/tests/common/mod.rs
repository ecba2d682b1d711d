#![allow(dead_code)]

pub mod csp;
pub mod enumerate;
pub mod oracle;

use tally_core::fixtures::{cyc, rho, zpair};
use tally_core::{derive_addition, CountingSystem, MonoidTable};

/// Minimal systems whose derived monoid has at most `max` elements: cycles,
/// tail-and-cycle shapes, the two-map integers, and cores of two-map
/// products of cycles.
pub fn small_fixtures(max: usize) -> Vec<CountingSystem> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(cyc(n));
    }
    for t in 1..max {
        for l in 1..=max - t {
            out.push(rho(t, l));
        }
    }
    for n in 2..=max {
        out.push(zpair(n));
    }
    for a in 1..=max {
        for b in 1..=max {
            let sys = two_generator_product(a, b);
            if sys.size() <= max {
                out.push(sys);
            }
        }
    }
    out
}

/// `Z_a × Z_b` with one successor per coordinate.
pub fn two_generator_product(a: usize, b: usize) -> CountingSystem {
    let labels: Vec<String> = (0..a).flat_map(|i| (0..b).map(move |j| format!("({i},{j})"))).collect();
    let first = (0..a * b).map(|x| ((x / b + 1) % a) * b + x % b).collect();
    let second = (0..a * b).map(|x| (x / b) * b + (x % b + 1) % b).collect();
    CountingSystem::from_tables(labels, 0, ["u".to_string(), "v".to_string()], vec![first, second])
        .expect("product of cycles")
}

pub fn derived(sys: &CountingSystem) -> MonoidTable {
    derive_addition(sys).expect("fixture is minimal")
}

/// Generator points `x_s` of a minimal system.
pub fn generator_points(sys: &CountingSystem) -> Vec<usize> {
    (0..sys.index_set().len()).map(|s| sys.generator_point(s)).collect()
}
