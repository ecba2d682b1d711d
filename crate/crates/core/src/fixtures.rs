//! Standard small systems used throughout the test suites and examples.
//!
//! Every fixture uses numbered element labels `0..n`, so element `k` is the
//! one reached from the base point by `k` applications of the successor map.

use crate::model::CountingSystem;

/// `({0..n-1}, i ↦ i+1 mod n, 0)` with index label `s`.
pub fn cyc(n: usize) -> CountingSystem {
    assert!(n >= 1);
    let table = (0..n).map(|i| (i + 1) % n).collect();
    numbered(n, &["s"], vec![table])
}

/// `(Z_n, {+ : i ↦ i+1, - : i ↦ i-1}, 0)`.
pub fn zpair(n: usize) -> CountingSystem {
    assert!(n >= 1);
    let up = (0..n).map(|i| (i + 1) % n).collect();
    let down = (0..n).map(|i| (i + n - 1) % n).collect();
    numbered(n, &["+", "-"], vec![up, down])
}

/// A tail of `tail` elements feeding a cycle of `cycle` elements:
/// `f(i) = i+1` for `i < tail+cycle-1`, and the last element wraps to `tail`.
pub fn rho(tail: usize, cycle: usize) -> CountingSystem {
    assert!(cycle >= 1);
    let n = tail + cycle;
    let table = (0..n).map(|i| if i + 1 < n { i + 1 } else { tail }).collect();
    numbered(n, &["s"], vec![table])
}

/// `({0}, id, 0)`.
pub fn one_point() -> CountingSystem {
    cyc(1)
}

fn numbered(n: usize, index: &[&str], tables: Vec<Vec<usize>>) -> CountingSystem {
    CountingSystem::from_tables(
        (0..n).map(|i| i.to_string()),
        0,
        index.iter().map(|s| s.to_string()),
        tables,
    )
    .expect("fixture is a valid counting system")
}
