//! Morphisms of counting systems: base-point-preserving maps that intertwine
//! the two families.

use std::collections::VecDeque;

use crate::biadditive::is_homomorphism;
use crate::error::{Error, Result};
use crate::model::CountingSystem;
use crate::monoid::MonoidTable;
use crate::outcome::{Conflict, Outcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMorphism<'a> {
    src: &'a CountingSystem,
    dst: &'a CountingSystem,
    map: Vec<usize>,
}

impl<'a> SystemMorphism<'a> {
    /// Wrap a candidate map. Shapes are checked here; the morphism
    /// conditions are checked by [`is_morphism`].
    pub fn new(src: &'a CountingSystem, dst: &'a CountingSystem, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.size() {
            return Err(Error::ArityMismatch {
                map: "morphism".into(),
                expected: src.size(),
                got: map.len(),
            });
        }
        if let Some(&y) = map.iter().find(|&&y| y >= dst.size()) {
            return Err(Error::BadIndex {
                what: "morphism image".into(),
                index: y,
                size: dst.size(),
            });
        }
        matching_index(src, dst)?;
        Ok(SystemMorphism { src, dst, map })
    }

    pub fn identity(sys: &'a CountingSystem) -> Self {
        SystemMorphism {
            src: sys,
            dst: sys,
            map: (0..sys.size()).collect(),
        }
    }

    pub fn src(&self) -> &'a CountingSystem {
        self.src
    }

    pub fn dst(&self) -> &'a CountingSystem {
        self.dst
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// For each map of `src`, the position of the same label in `dst`.
fn matching_index(src: &CountingSystem, dst: &CountingSystem) -> Result<Vec<usize>> {
    let mismatch = || Error::IndexSetMismatch {
        left: src.index_set().to_vec(),
        right: dst.index_set().to_vec(),
    };
    if src.index_set().len() != dst.index_set().len() {
        return Err(mismatch());
    }
    src.index_set()
        .iter()
        .map(|l| dst.index_of(l).ok_or_else(mismatch))
        .collect()
}

/// The unique morphism out of a minimal system, if any: `x₀ ↦ y₀` and
/// `f_s(x) ↦ g_s(π(x))`, propagated breadth-first.
pub fn morphism_find<'a>(
    src: &'a CountingSystem,
    dst: &'a CountingSystem,
) -> Result<Outcome<SystemMorphism<'a>>> {
    src.require_minimal()?;
    let pair = matching_index(src, dst)?;
    let mut image: Vec<Option<usize>> = vec![None; src.size()];
    image[src.base()] = Some(dst.base());
    let mut queue = VecDeque::from([src.base()]);
    while let Some(x) = queue.pop_front() {
        let y = image[x].expect("queued elements have images");
        for (s, f) in src.maps().iter().enumerate() {
            let next = f.apply(x);
            let forced = dst.map(pair[s]).apply(y);
            match image[next] {
                None => {
                    image[next] = Some(forced);
                    queue.push_back(next);
                }
                Some(prev) if prev != forced => {
                    return Ok(Outcome::Absent(Conflict {
                        element: src.label(next).to_string(),
                        first: dst.label(prev).to_string(),
                        second: dst.label(forced).to_string(),
                        context: format!(
                            "reached as {}({})",
                            src.index_set()[s],
                            src.label(x)
                        ),
                    }));
                }
                Some(_) => {}
            }
        }
    }
    let map = image
        .into_iter()
        .map(|y| y.expect("minimal source is fully reached"))
        .collect();
    let m = SystemMorphism { src, dst, map };
    if !is_morphism(&m) {
        return Err(Error::InternalInvariantViolation(
            "conflict-free propagation is not a morphism".into(),
        ));
    }
    Ok(Outcome::Found(m))
}

pub fn is_morphism(m: &SystemMorphism<'_>) -> bool {
    let Ok(pair) = matching_index(m.src, m.dst) else {
        return false;
    };
    m.map[m.src.base()] == m.dst.base()
        && m.src.maps().iter().enumerate().all(|(s, f)| {
            let g = m.dst.map(pair[s]);
            (0..m.src.size()).all(|x| m.map[f.apply(x)] == g.apply(m.map[x]))
        })
}

/// A morphism is an isomorphism iff it is bijective; the inverse is then
/// checked to be a morphism as well.
pub fn is_isomorphism(m: &SystemMorphism<'_>) -> Result<bool> {
    if !is_morphism(m) {
        return Ok(false);
    }
    let n = m.dst.size();
    if m.src.size() != n {
        return Ok(false);
    }
    let mut inverse = vec![usize::MAX; n];
    for (x, &y) in m.map.iter().enumerate() {
        if inverse[y] != usize::MAX {
            return Ok(false);
        }
        inverse[y] = x;
    }
    let back = SystemMorphism {
        src: m.dst,
        dst: m.src,
        map: inverse,
    };
    if !is_morphism(&back) {
        return Err(Error::InternalInvariantViolation(
            "inverse of a bijective morphism is not a morphism".into(),
        ));
    }
    Ok(true)
}

/// For minimal systems with their derived additions: the map is a monoid
/// homomorphism sending each `x_s` to `y_s`. Cross-checked against
/// [`is_morphism`].
pub fn bridge_check(
    m: &SystemMorphism<'_>,
    t_src: &MonoidTable,
    t_dst: &MonoidTable,
) -> Result<bool> {
    m.src.require_minimal()?;
    m.dst.require_minimal()?;
    if t_src.len() != m.src.size() || t_dst.len() != m.dst.size() {
        return Err(Error::NotAMonoid("table does not belong to its system".into()));
    }
    let pair = matching_index(m.src, m.dst)?;
    let bridge = is_homomorphism(t_src, t_dst, &m.map)
        && (0..pair.len())
            .all(|s| m.map[m.src.generator_point(s)] == m.dst.generator_point(pair[s]));
    if bridge != is_morphism(m) {
        return Err(Error::InternalInvariantViolation(format!(
            "homomorphism-with-generators = {bridge} disagrees with morphism test"
        )));
    }
    Ok(bridge)
}
