//! The transformation monoid generated by a commuting family, and the
//! evaluation map from it back to the carrier.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CountingSystem, EndoMap, Limits};

/// Closure of the generating maps under composition.
///
/// `elements[0]` is the identity. `comp[i][j]` is the index of
/// `elements[i] ∘ elements[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationMonoid {
    elements: Vec<EndoMap>,
    comp: Vec<Vec<usize>>,
    gen_index: Vec<usize>,
    words: Vec<Vec<usize>>,
}

impl TransformationMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[EndoMap] {
        &self.elements
    }

    pub fn comp(&self) -> &[Vec<usize>] {
        &self.comp
    }

    /// Element index of `f_s`, per index-set position.
    pub fn gen_index(&self) -> &[usize] {
        &self.gen_index
    }

    /// One generator word per element; diagnostic only.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.len();
        (0..m).all(|i| (i + 1..m).all(|j| self.comp[i][j] == self.comp[j][i]))
    }
}

pub fn monoid_closure(sys: &CountingSystem) -> Result<TransformationMonoid> {
    monoid_closure_with_limits(sys, &Limits::default())
}

/// Breadth-first closure by word length, generators in index-set order,
/// deduplicated on the full image table.
pub fn monoid_closure_with_limits(
    sys: &CountingSystem,
    limits: &Limits,
) -> Result<TransformationMonoid> {
    let n = sys.size();
    let k = sys.maps().len();
    let mut elements = vec![EndoMap::identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<EndoMap, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    // left[s][u] = index of f_s ∘ elements[u]
    let mut left: Vec<Vec<usize>> = vec![Vec::new(); k];

    let mut next = 0;
    while next < elements.len() {
        let u = next;
        next += 1;
        for (s, f) in sys.maps().iter().enumerate() {
            let image = f.compose(&elements[u]);
            let id = match index.get(&image) {
                Some(&id) => id,
                None => {
                    if elements.len() >= limits.max_closure {
                        return Err(Error::ClosureTooLarge {
                            limit: limits.max_closure,
                        });
                    }
                    let id = elements.len();
                    let mut word = Vec::with_capacity(words[u].len() + 1);
                    word.push(s);
                    word.extend_from_slice(&words[u]);
                    index.insert(image.clone(), id);
                    elements.push(image);
                    words.push(word);
                    id
                }
            };
            left[s].push(id);
        }
    }

    let m = elements.len();
    let mut comp = vec![vec![0; m]; m];
    for (i, row) in comp.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = words[i].iter().rev().fold(j, |acc, &s| left[s][acc]);
        }
    }
    let gen_index = (0..k).map(|s| left[s][0]).collect();

    let tm = TransformationMonoid {
        elements,
        comp,
        gen_index,
        words,
    };
    if !tm.is_commutative() {
        return Err(Error::InternalInvariantViolation(
            "closure of a commuting family is not commutative".into(),
        ));
    }
    Ok(tm)
}

/// `Φ(u) = u(x₀)` for every element of the closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationMap {
    pub to_carrier: Vec<usize>,
    pub bijective: bool,
    /// Closure element per carrier element, present when `bijective`.
    pub inverse: Option<Vec<usize>>,
}

pub fn evaluation(tm: &TransformationMonoid, sys: &CountingSystem) -> EvaluationMap {
    let n = sys.size();
    let to_carrier: Vec<usize> = tm.elements.iter().map(|u| u.apply(sys.base())).collect();
    let mut inverse = vec![usize::MAX; n];
    let mut bijective = to_carrier.len() == n;
    for (i, &x) in to_carrier.iter().enumerate() {
        if inverse[x] != usize::MAX {
            bijective = false;
        }
        inverse[x] = i;
    }
    bijective &= inverse.iter().all(|&i| i != usize::MAX);
    EvaluationMap {
        to_carrier,
        bijective,
        inverse: bijective.then_some(inverse),
    }
}
