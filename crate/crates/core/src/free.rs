//! The free commutative monoid over the index set, as finite multisets of
//! labels, and evaluation of its unique morphism into a counting system.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::CountingSystem;

/// A finite multiset of index labels. Only strictly positive counts are
/// stored, so structural equality is multiset equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeElement {
    counts: BTreeMap<String, u64>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn unit(label: &str) -> Self {
        FreeElement::from_counts([(label, 1)])
    }

    pub fn from_counts<S: Into<String>>(counts: impl IntoIterator<Item = (S, u64)>) -> Self {
        let mut out = FreeElement::zero();
        for (label, k) in counts {
            out.insert(label.into(), k);
        }
        out
    }

    fn insert(&mut self, label: String, k: u64) {
        if k > 0 {
            *self.counts.entry(label).or_insert(0) += k;
        }
    }

    pub fn count(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(l, &k)| (l.as_str(), k))
    }

    /// `self - unit(label)`, if `label` occurs.
    pub fn predecessor(&self, label: &str) -> Option<FreeElement> {
        let k = self.count(label);
        if k == 0 {
            return None;
        }
        let mut out = self.clone();
        if k == 1 {
            out.counts.remove(label);
        } else {
            out.counts.insert(label.to_string(), k - 1);
        }
        Some(out)
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;

    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (l, k) in rhs.iter() {
            out.insert(l.to_string(), k);
        }
        out
    }
}

impl Add for FreeElement {
    type Output = FreeElement;

    fn add(self, rhs: FreeElement) -> FreeElement {
        &self + &rhs
    }
}

pub fn free_add(a: &FreeElement, b: &FreeElement) -> FreeElement {
    a + b
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, k)| format!("{l}:{k}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid multiset entry `{0}`: expected `label:count`")]
pub struct ParseFreeElementError(pub String);

/// Parses `s:3,t:1`; a bare label counts once, and the empty string (or
/// `{}`) is zero.
impl FromStr for FreeElement {
    type Err = ParseFreeElementError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let body = text.trim();
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let mut out = FreeElement::zero();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (label, count) = match part.rsplit_once(':') {
                Some((l, k)) => (
                    l.trim(),
                    k.trim()
                        .parse::<u64>()
                        .map_err(|_| ParseFreeElementError(part.to_string()))?,
                ),
                None => (part, 1),
            };
            if label.is_empty() {
                return Err(ParseFreeElementError(part.to_string()));
            }
            out.insert(label.to_string(), count);
        }
        Ok(out)
    }
}

/// `(∏_s g_s^{e(s)})(y₀)`, applying the maps in index-set order.
pub fn free_eval(target: &CountingSystem, e: &FreeElement) -> Result<usize> {
    let steps = resolve(target, e)?;
    Ok(steps
        .into_iter()
        .fold(target.base(), |y, (s, k)| target.map(s).iterate(y, k)))
}

/// Like [`free_eval`] but applying the labels in the given order.
pub fn free_eval_in_order(target: &CountingSystem, e: &FreeElement, order: &[String]) -> Result<usize> {
    let steps = resolve(target, e)?;
    let mut y = target.base();
    for label in order {
        let s = target
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        if let Some(&(_, k)) = steps.iter().find(|(t, _)| *t == s) {
            y = target.map(s).iterate(y, k);
        }
    }
    Ok(y)
}

fn resolve(target: &CountingSystem, e: &FreeElement) -> Result<Vec<(usize, u64)>> {
    let mut steps: Vec<(usize, u64)> = e
        .iter()
        .map(|(l, k)| {
            target
                .index_of(l)
                .map(|s| (s, k))
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        })
        .collect::<Result<_>>()?;
    steps.sort_unstable();
    Ok(steps)
}

/// All multisets over `labels` of total degree exactly `degree`.
pub fn elements_of_degree(labels: &[String], degree: u64) -> Vec<FreeElement> {
    fn go(labels: &[String], remaining: u64, acc: &mut Vec<(String, u64)>, out: &mut Vec<FreeElement>) {
        match labels.split_first() {
            None => {
                if remaining == 0 {
                    out.push(FreeElement::from_counts(acc.iter().cloned()));
                }
            }
            Some((first, rest)) if rest.is_empty() => {
                acc.push((first.clone(), remaining));
                go(rest, 0, acc, out);
                acc.pop();
            }
            Some((first, rest)) => {
                for k in 0..=remaining {
                    acc.push((first.clone(), k));
                    go(rest, remaining - k, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(labels, degree, &mut Vec::new(), &mut out);
    out
}

/// Show that `m({}) = y₀` and `m(e + unit_s) = g_s(m(e))` force a single value
/// on every multiset of degree at most `bound`, and that it is `free_eval`.
///
/// Values are forced degree by degree: each multiset of degree `d > 0` gets
/// one candidate per label it contains, all of which must agree.
pub fn free_uniqueness_probe(target: &CountingSystem, bound: u64) -> Result<bool> {
    target.require_minimal()?;
    let labels = target.index_set().to_vec();
    let mut forced: HashMap<FreeElement, usize> = HashMap::new();
    forced.insert(FreeElement::zero(), target.base());
    for degree in 1..=bound {
        let mut layer = HashMap::new();
        for e in elements_of_degree(&labels, degree) {
            let mut value = None;
            for (s, label) in labels.iter().enumerate() {
                let Some(prev) = e.predecessor(label) else {
                    continue;
                };
                let candidate = target.map(s).apply(forced[&prev]);
                match value {
                    None => value = Some(candidate),
                    Some(v) if v != candidate => return Ok(false),
                    Some(_) => {}
                }
            }
            layer.insert(e, value.expect("positive degree has a predecessor"));
        }
        forced.extend(layer);
    }
    for (e, &v) in &forced {
        if free_eval(target, e)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}
