//! Exhaustive enumeration of small counting systems.

use tally_core::CountingSystem;

/// Every function `{0..n} → {0..n}` as an image table, in lexicographic order.
pub fn all_tables(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n).map(move |y| {
                    let mut t = t.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    out
}

fn numbered(n: usize, base: usize, index: &[&str], tables: Vec<Vec<usize>>) -> CountingSystem {
    CountingSystem::from_tables((0..n).map(|i| i.to_string()), base, index.iter().map(|s| s.to_string()), tables)
        .expect("enumerated family is valid")
}

/// All single-map systems on `n` elements, every base point.
pub fn single_map_systems(n: usize) -> Vec<CountingSystem> {
    let mut out = Vec::new();
    for t in all_tables(n) {
        for base in 0..n {
            out.push(numbered(n, base, &["s"], vec![t.clone()]));
        }
    }
    out
}

fn commute(f: &[usize], g: &[usize]) -> bool {
    (0..f.len()).all(|x| f[g[x]] == g[f[x]])
}

/// All ordered pairs of commuting maps on `n` elements, every base point.
pub fn two_map_systems(n: usize) -> Vec<CountingSystem> {
    let tables = all_tables(n);
    let mut out = Vec::new();
    for f in &tables {
        for g in tables.iter().filter(|g| commute(f, g)) {
            for base in 0..n {
                out.push(numbered(n, base, &["s", "t"], vec![f.clone(), g.clone()]));
            }
        }
    }
    out
}

/// Single-map systems up to `single` elements and two-map systems up to
/// `pairs` elements.
pub fn system_pool(single: usize, pairs: usize) -> Vec<CountingSystem> {
    let mut out: Vec<CountingSystem> = (1..=single).flat_map(single_map_systems).collect();
    out.extend((1..=pairs).flat_map(two_map_systems));
    out
}

/// Every minimal single-map system up to `n` elements.
pub fn minimal_single_map_systems(n: usize) -> Vec<CountingSystem> {
    (1..=n)
        .flat_map(single_map_systems)
        .filter(CountingSystem::is_minimal)
        .collect()
}
