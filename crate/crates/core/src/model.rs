//! Carriers, self-maps and counting systems, plus the structural constructions
//! on them (minimal core, products, base-point adjunction, single-map padding).

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Size limits applied when constructing systems and closures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_carrier: usize,
    pub max_index: usize,
    pub max_closure: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_carrier: 4096,
            max_index: 16,
            max_closure: 1 << 16,
        }
    }
}

pub(crate) fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

pub(crate) fn check_distinct<'a>(labels: impl IntoIterator<Item = &'a String>) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        check_label(l)?;
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// A finite set of labelled elements, addressed by dense indices `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        check_distinct(&labels)?;
        Ok(Carrier { labels })
    }

    /// Carrier labelled `0`, `1`, ..., `n-1`.
    pub fn numbered(n: usize) -> Result<Self> {
        Carrier::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A total map of a carrier `{0..n}` into itself, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoMap {
    table: Vec<usize>,
}

impl EndoMap {
    pub fn new(table: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::BadIndex {
                what: "map image".into(),
                index: bad,
                size: n,
            });
        }
        Ok(EndoMap { table })
    }

    pub fn identity(n: usize) -> Self {
        EndoMap {
            table: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        EndoMap {
            table: vec![value; n],
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EndoMap) -> EndoMap {
        EndoMap {
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    /// Apply the map `k` times to `x`, short-cutting once the orbit of `x` cycles.
    pub fn iterate(&self, x: usize, k: u64) -> usize {
        let mut first_seen = vec![u64::MAX; self.table.len()];
        let mut cur = x;
        let mut step = 0u64;
        while step < k {
            if first_seen[cur] != u64::MAX {
                let period = step - first_seen[cur];
                let remaining = (k - step) % period;
                for _ in 0..remaining {
                    cur = self.table[cur];
                }
                return cur;
            }
            first_seen[cur] = step;
            cur = self.table[cur];
            step += 1;
        }
        cur
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.table.len()];
        for &v in &self.table {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    /// On a finite carrier surjectivity and injectivity coincide, but both are
    /// computed directly.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.table.len()];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// A finite carrier with a base point and a non-empty, labelled family of
/// pairwise-commuting self-maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountingSystem {
    carrier: Carrier,
    base: usize,
    index_set: Vec<String>,
    maps: Vec<EndoMap>,
}

/// Per-map injectivity data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub label: String,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
}

impl CountingSystem {
    pub fn new(
        carrier: Carrier,
        base: usize,
        index_set: Vec<String>,
        maps: Vec<EndoMap>,
    ) -> Result<Self> {
        Self::with_limits(carrier, base, index_set, maps, &Limits::default())
    }

    pub fn with_limits(
        carrier: Carrier,
        base: usize,
        index_set: Vec<String>,
        maps: Vec<EndoMap>,
        limits: &Limits,
    ) -> Result<Self> {
        let n = carrier.len();
        if n > limits.max_carrier {
            return Err(Error::CarrierTooLarge {
                size: n,
                limit: limits.max_carrier,
            });
        }
        if index_set.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if index_set.len() > limits.max_index {
            return Err(Error::IndexSetTooLarge {
                size: index_set.len(),
                limit: limits.max_index,
            });
        }
        check_distinct(&index_set)?;
        if base >= n {
            return Err(Error::BadIndex {
                what: "base".into(),
                index: base,
                size: n,
            });
        }
        if maps.len() != index_set.len() {
            return Err(Error::ArityMismatch {
                map: "<family>".into(),
                expected: index_set.len(),
                got: maps.len(),
            });
        }
        for (label, map) in index_set.iter().zip(&maps) {
            if map.len() != n {
                return Err(Error::ArityMismatch {
                    map: label.clone(),
                    expected: n,
                    got: map.len(),
                });
            }
        }
        for (i, f) in maps.iter().enumerate() {
            for (j, g) in maps.iter().enumerate().skip(i + 1) {
                if let Some(x) = (0..n).find(|&x| f.apply(g.apply(x)) != g.apply(f.apply(x))) {
                    return Err(Error::NonCommuting {
                        s: index_set[i].clone(),
                        t: index_set[j].clone(),
                        x: carrier.label(x).to_string(),
                    });
                }
            }
        }
        Ok(CountingSystem {
            carrier,
            base,
            index_set,
            maps,
        })
    }

    /// Build a system from raw labels and image tables.
    pub fn from_tables<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        base: usize,
        index_set: impl IntoIterator<Item = S>,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let carrier = Carrier::new(labels)?;
        let n = carrier.len();
        let index_set: Vec<String> = index_set.into_iter().map(Into::into).collect();
        let mut maps = Vec::with_capacity(tables.len());
        for (k, t) in tables.into_iter().enumerate() {
            if t.len() != n {
                return Err(Error::ArityMismatch {
                    map: index_set.get(k).cloned().unwrap_or_default(),
                    expected: n,
                    got: t.len(),
                });
            }
            maps.push(EndoMap::new(t)?);
        }
        CountingSystem::new(carrier, base, index_set, maps)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn index_set(&self) -> &[String] {
        &self.index_set
    }

    pub fn maps(&self) -> &[EndoMap] {
        &self.maps
    }

    pub fn map(&self, s: usize) -> &EndoMap {
        &self.maps[s]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index_set.iter().position(|l| l == label)
    }

    pub fn label(&self, x: usize) -> &str {
        self.carrier.label(x)
    }

    /// `x_s = f_s(x₀)`.
    pub fn generator_point(&self, s: usize) -> usize {
        self.maps[s].apply(self.base)
    }

    /// Apply a word of map indices, innermost (rightmost) first.
    pub fn apply_word(&self, x: usize, word: &[usize]) -> usize {
        word.iter().rev().fold(x, |acc, &s| self.maps[s].apply(acc))
    }

    pub fn map_flags(&self) -> Vec<MapFlags> {
        self.index_set
            .iter()
            .zip(&self.maps)
            .map(|(l, f)| MapFlags {
                label: l.clone(),
                injective: f.is_injective(),
                surjective: f.is_surjective(),
                bijective: f.is_bijective(),
            })
            .collect()
    }

    /// Elements reachable from `x₀`, in discovery order. The frontier is
    /// expanded level by level, each level in ascending element index, each
    /// element's maps in index-set order.
    pub fn reachable_order(&self) -> Vec<usize> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut order = vec![self.base];
        seen[self.base] = true;
        let mut frontier = vec![self.base];
        while !frontier.is_empty() {
            frontier.sort_unstable();
            let mut next = Vec::new();
            for &x in &frontier {
                for f in &self.maps {
                    let y = f.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        order.push(y);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        order
    }

    /// Elements not reachable from the base point, in ascending index order.
    pub fn unreachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        for x in self.reachable_order() {
            seen[x] = true;
        }
        (0..self.size()).filter(|&x| !seen[x]).collect()
    }

    /// True iff the only invariant subset containing the base point is the
    /// whole carrier.
    pub fn is_minimal(&self) -> bool {
        self.reachable_order().len() == self.size()
    }

    pub(crate) fn require_minimal(&self) -> Result<()> {
        let missing = self.unreachable();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MinimalityRequired {
                unreachable: missing
                    .into_iter()
                    .map(|x| self.label(x).to_string())
                    .collect(),
            })
        }
    }

    pub(crate) fn require_single_map(&self) -> Result<()> {
        match self.maps.len() {
            1 => Ok(()),
            got => Err(Error::SingleMapRequired { got }),
        }
    }

    /// Restriction to the least invariant subset containing the base point,
    /// relabelled in discovery order.
    pub fn minimal_core(&self) -> CountingSystem {
        let (core, _) = self.minimal_core_with_embedding();
        core
    }

    /// The minimal core together with the inclusion of its carrier into ours.
    pub fn minimal_core_with_embedding(&self) -> (CountingSystem, Vec<usize>) {
        let order = self.reachable_order();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let labels = order.iter().map(|&x| self.label(x).to_string()).collect();
        let maps = self
            .maps
            .iter()
            .map(|f| EndoMap {
                table: order.iter().map(|&x| pos[f.apply(x)]).collect(),
            })
            .collect();
        let core = CountingSystem {
            carrier: Carrier { labels },
            base: 0,
            index_set: self.index_set.clone(),
            maps,
        };
        (core, order)
    }

    /// Product system over `S × T`, carrier in row-major order.
    pub fn product(&self, other: &CountingSystem) -> Result<CountingSystem> {
        self.product_with_limits(other, &Limits::default())
    }

    pub fn product_with_limits(
        &self,
        other: &CountingSystem,
        limits: &Limits,
    ) -> Result<CountingSystem> {
        let (n, m) = (self.size(), other.size());
        let size = n.saturating_mul(m);
        if size > limits.max_carrier {
            return Err(Error::CarrierTooLarge {
                size,
                limit: limits.max_carrier,
            });
        }
        let labels: Vec<String> = (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", self.label(i), other.label(j)))
            .collect();
        let mut index_set = Vec::new();
        let mut maps = Vec::new();
        for (s, f) in self.index_set.iter().zip(&self.maps) {
            for (t, g) in other.index_set.iter().zip(&other.maps) {
                index_set.push(format!("({s},{t})"));
                let table = (0..n)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .map(|(i, j)| f.apply(i) * m + g.apply(j))
                    .collect();
                maps.push(EndoMap { table });
            }
        }
        CountingSystem::with_limits(
            Carrier::new(labels)?,
            self.base * m + other.base,
            index_set,
            maps,
            limits,
        )
    }

    /// Adjoin a fresh base point ω with `f(ω) = x₀`; single-map systems only.
    pub fn adjoin_omega(&self) -> Result<CountingSystem> {
        self.require_single_map()?;
        let n = self.size();
        let mut labels = self.carrier.labels.clone();
        labels.push(fresh_label(&labels, "ω", "omega"));
        let mut table = self.maps[0].table.clone();
        table.push(self.base);
        Ok(CountingSystem {
            carrier: Carrier { labels },
            base: n,
            index_set: self.index_set.clone(),
            maps: vec![EndoMap { table }],
        })
    }

    /// Dedekind: minimal, injective, and the base point has no preimage.
    pub fn is_dedekind(&self) -> Result<bool> {
        self.require_single_map()?;
        let f = &self.maps[0];
        Ok(self.is_minimal() && f.is_injective() && !f.table.contains(&self.base))
    }

    /// Keep the map at `label`, replace every other map by the identity.
    pub fn pad_single(&self, label: &str) -> Result<CountingSystem> {
        let s = self
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        let n = self.size();
        let maps = (0..self.maps.len())
            .map(|t| {
                if t == s {
                    self.maps[t].clone()
                } else {
                    EndoMap::identity(n)
                }
            })
            .collect();
        Ok(CountingSystem {
            carrier: self.carrier.clone(),
            base: self.base,
            index_set: self.index_set.clone(),
            maps,
        })
    }

    /// The single-map system `(X, f_s, x₀)`.
    pub fn single(&self, label: &str) -> Result<CountingSystem> {
        let s = self
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(CountingSystem {
            carrier: self.carrier.clone(),
            base: self.base,
            index_set: vec![self.index_set[s].clone()],
            maps: vec![self.maps[s].clone()],
        })
    }

    /// Rename index labels; `renames` maps old label to new label.
    pub fn relabel_index(&self, renames: &[(String, String)]) -> Result<CountingSystem> {
        let mut index_set = self.index_set.clone();
        for (old, new) in renames {
            let s = self
                .index_of(old)
                .ok_or_else(|| Error::UnknownLabel(old.clone()))?;
            index_set[s] = new.clone();
        }
        check_distinct(&index_set)?;
        Ok(CountingSystem {
            index_set,
            ..self.clone()
        })
    }
}

fn fresh_label(taken: &[String], first: &str, stem: &str) -> String {
    let is_taken = |l: &str| taken.iter().any(|t| t == l);
    if !is_taken(first) {
        return first.to_string();
    }
    if !is_taken(stem) {
        return stem.to_string();
    }
    (1..)
        .map(|k| format!("{stem}_{k}"))
        .find(|l| !is_taken(l))
        .expect("unbounded search")
}

/// Does `subset` map into itself under every map of the family?
pub fn is_invariant(subset: &[usize], sys: &CountingSystem) -> bool {
    let mut member = vec![false; sys.size()];
    for &x in subset {
        member[x] = true;
    }
    subset
        .iter()
        .all(|&x| sys.maps().iter().all(|f| member[f.apply(x)]))
}
