//! Finite monoid tables, the addition transferred from the closure onto the
//! carrier, and its verification and classification.

use std::fmt;

use serde::Serialize;

use crate::closure::{evaluation, monoid_closure_with_limits};
use crate::error::{Error, Result};
use crate::model::{check_distinct, Carrier, CountingSystem, EndoMap, Limits};

/// Properties established by exhaustive checks when the table was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MonoidFlags {
    pub associative: bool,
    pub commutative: bool,
    pub cancellative: bool,
    pub group: bool,
    pub zero_sum_free: bool,
}

/// A binary operation table over labelled elements with a two-sided unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    labels: Vec<String>,
    op: Vec<Vec<usize>>,
    zero: usize,
    flags: MonoidFlags,
}

impl MonoidTable {
    /// Checks shape and the unit law, then computes every flag exhaustively.
    pub fn new(labels: Vec<String>, op: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        check_distinct(&labels)?;
        if op.len() != n || op.iter().any(|row| row.len() != n) {
            return Err(Error::NotAMonoid(format!("table is not {n}×{n}")));
        }
        if let Some(&bad) = op.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::BadIndex {
                what: "table entry".into(),
                index: bad,
                size: n,
            });
        }
        if zero >= n {
            return Err(Error::BadIndex {
                what: "zero".into(),
                index: zero,
                size: n,
            });
        }
        if let Some(x) = (0..n).find(|&x| op[zero][x] != x || op[x][zero] != x) {
            return Err(Error::NotAMonoid(format!(
                "unit law fails at `{}`",
                labels[x]
            )));
        }
        let mut t = MonoidTable {
            labels,
            op,
            zero,
            flags: MonoidFlags::default(),
        };
        t.flags = t.compute_flags();
        Ok(t)
    }

    /// Table labelled `0..n`.
    pub fn numbered(op: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let labels = (0..op.len()).map(|i| i.to_string()).collect();
        MonoidTable::new(labels, op, zero)
    }

    fn compute_flags(&self) -> MonoidFlags {
        let n = self.len();
        let op = &self.op;
        let associative =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| op[op[a][b]][c] == op[a][op[b][c]])));
        let commutative = (0..n).all(|a| (0..n).all(|b| op[a][b] == op[b][a]));
        let cancellative = (0..n).all(|a| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            (0..n).all(|b| {
                let fresh = !row[op[a][b]] && !col[op[b][a]];
                row[op[a][b]] = true;
                col[op[b][a]] = true;
                fresh
            })
        });
        let group = (0..n).all(|a| (0..n).any(|b| op[a][b] == self.zero && op[b][a] == self.zero));
        let zero_sum_free = (0..n).all(|a| {
            (0..n).all(|b| op[a][b] != self.zero || b == self.zero)
        });
        MonoidFlags {
            associative,
            commutative,
            cancellative,
            group,
            zero_sum_free,
        }
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

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn flags(&self) -> MonoidFlags {
        self.flags
    }

    pub fn is_commutative_monoid(&self) -> bool {
        self.flags.associative && self.flags.commutative
    }

    pub(crate) fn require_commutative_monoid(&self) -> Result<()> {
        if self.is_commutative_monoid() {
            Ok(())
        } else {
            Err(Error::NotCommutativeMonoid)
        }
    }

    /// Least submonoid containing `gens`, as a membership vector.
    pub fn submonoid_closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        member[self.zero] = true;
        let mut stack = vec![self.zero];
        while let Some(a) = stack.pop() {
            for &g in gens {
                for b in [self.op(g, a), self.op(a, g)] {
                    if !member[b] {
                        member[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        member
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.submonoid_closure(gens).into_iter().all(|m| m)
    }

    pub(crate) fn require_generators(&self, gens: &[usize]) -> Result<()> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.len()) {
            return Err(Error::BadIndex {
                what: "generator".into(),
                index: g,
                size: self.len(),
            });
        }
        if self.generates(gens) {
            Ok(())
        } else {
            Err(Error::GensDoNotGenerate)
        }
    }

    /// Elements of the submonoid generated by `a`, ascending.
    pub fn cyclic_submonoid(&self, a: usize) -> Vec<usize> {
        members(&self.submonoid_closure(&[a]))
    }

    /// The submonoid on `subset` (which must contain zero and be closed),
    /// relabelled in the order given; returns the table and the inclusion.
    pub fn restrict(&self, subset: &[usize]) -> Result<MonoidTable> {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &a) in subset.iter().enumerate() {
            pos[a] = i;
        }
        if pos[self.zero] == usize::MAX {
            return Err(Error::NotAMonoid("subset does not contain zero".into()));
        }
        let mut op = Vec::with_capacity(subset.len());
        for &a in subset {
            let mut row = Vec::with_capacity(subset.len());
            for &b in subset {
                let c = pos[self.op(a, b)];
                if c == usize::MAX {
                    return Err(Error::NotAMonoid("subset is not closed".into()));
                }
                row.push(c);
            }
            op.push(row);
        }
        let labels = subset.iter().map(|&a| self.labels[a].clone()).collect();
        MonoidTable::new(labels, op, pos[self.zero])
    }

    /// Componentwise product, row-major.
    pub fn direct_product(&self, other: &MonoidTable) -> Result<MonoidTable> {
        let (n, m) = (self.len(), other.len());
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
        let labels = pairs
            .iter()
            .map(|&(i, j)| format!("({},{})", self.label(i), other.label(j)))
            .collect();
        let op = pairs
            .iter()
            .map(|&(a, b)| {
                pairs
                    .iter()
                    .map(|&(c, d)| self.op(a, c) * m + other.op(b, d))
                    .collect()
            })
            .collect();
        MonoidTable::new(labels, op, self.zero * m + other.zero)
    }

    /// The counting system `(M, {a ↦ a_s + a}, 0)` of a generating family.
    pub fn associated_system(&self, gens: &[usize], index_set: Vec<String>) -> Result<CountingSystem> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.len()) {
            return Err(Error::BadIndex {
                what: "generator".into(),
                index: g,
                size: self.len(),
            });
        }
        let maps = gens
            .iter()
            .map(|&g| EndoMap::new(self.op[g].clone()))
            .collect::<Result<Vec<_>>>()?;
        CountingSystem::new(Carrier::new(self.labels.clone())?, self.zero, index_set, maps)
    }
}

pub(crate) fn members(member: &[bool]) -> Vec<usize> {
    member
        .iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i))
        .collect()
}

pub fn derive_addition(sys: &CountingSystem) -> Result<MonoidTable> {
    derive_addition_with_limits(sys, &Limits::default())
}

/// Addition on a minimal system: `x₁ + x₂ = Φ(Φ⁻¹(x₁) ∘ Φ⁻¹(x₂))`.
pub fn derive_addition_with_limits(sys: &CountingSystem, limits: &Limits) -> Result<MonoidTable> {
    sys.require_minimal()?;
    let tm = monoid_closure_with_limits(sys, limits)?;
    let ev = evaluation(&tm, sys);
    let inv = ev.inverse.ok_or_else(|| {
        Error::InternalInvariantViolation("evaluation is not bijective on a minimal system".into())
    })?;
    let n = sys.size();
    let op: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| ev.to_carrier[tm.comp()[inv[a]][inv[b]]])
                .collect()
        })
        .collect();
    let t = MonoidTable::new(sys.carrier().labels().to_vec(), op, sys.base())?;
    if !t.is_commutative_monoid() {
        return Err(Error::InternalInvariantViolation(
            "derived addition is not a commutative monoid".into(),
        ));
    }
    for s in 0..sys.maps().len() {
        let xs = sys.generator_point(s);
        if let Some(x) = (0..n).find(|&x| sys.map(s).apply(x) != t.op(xs, x)) {
            return Err(Error::InternalInvariantViolation(format!(
                "f_{}(x) = x_s + x fails at `{}`",
                sys.index_set()[s],
                sys.label(x)
            )));
        }
    }
    Ok(t)
}

/// First failure found while checking a table against the successor axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlusFailure {
    /// The table's size does not match the carrier.
    Shape,
    /// `x₀ + x ≠ x`.
    Zero { x: usize },
    /// `f_s(x₁) + x₂ ≠ f_s(x₁ + x₂)`.
    Successor { s: usize, x1: usize, x2: usize },
    /// Row `x` is not determined by the axioms (the system is not minimal).
    Undetermined { x: usize },
    /// The axioms force two different rows for `x`.
    Inconsistent { x: usize },
    /// The table differs from the unique table the axioms force.
    Mismatch { x1: usize, x2: usize },
}

impl fmt::Display for PlusFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlusFailure::Shape => write!(f, "table size differs from carrier size"),
            PlusFailure::Zero { x } => write!(f, "zero law fails at {x}"),
            PlusFailure::Successor { s, x1, x2 } => {
                write!(f, "successor law fails for map {s} at ({x1}, {x2})")
            }
            PlusFailure::Undetermined { x } => write!(f, "row {x} is not determined"),
            PlusFailure::Inconsistent { x } => write!(f, "row {x} is forced inconsistently"),
            PlusFailure::Mismatch { x1, x2 } => {
                write!(f, "entry ({x1}, {x2}) differs from the forced table")
            }
        }
    }
}

/// Rebuild the addition from `x₀ + x = x` and `f_s(x₁) + x₂ = f_s(x₁ + x₂)`
/// alone, row by row along breadth-first discovery of first arguments.
pub fn addition_by_recursion(sys: &CountingSystem) -> Result<Vec<Vec<usize>>, PlusFailure> {
    let n = sys.size();
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
    rows[sys.base()] = Some((0..n).collect());
    for x1 in sys.reachable_order() {
        let row = rows[x1].clone().expect("discovered rows are filled");
        for f in sys.maps() {
            let y = f.apply(x1);
            let forced: Vec<usize> = row.iter().map(|&v| f.apply(v)).collect();
            match &rows[y] {
                None => rows[y] = Some(forced),
                Some(existing) if *existing != forced => {
                    return Err(PlusFailure::Inconsistent { x: y })
                }
                Some(_) => {}
            }
        }
    }
    rows.into_iter()
        .enumerate()
        .map(|(x, r)| r.ok_or(PlusFailure::Undetermined { x }))
        .collect()
}

/// Check both successor axioms directly, then compare against the table
/// they force.
pub fn check_plus_axioms(sys: &CountingSystem, t: &MonoidTable) -> Result<(), PlusFailure> {
    let n = sys.size();
    if t.len() != n {
        return Err(PlusFailure::Shape);
    }
    let x0 = sys.base();
    if let Some(x) = (0..n).find(|&x| t.op(x0, x) != x) {
        return Err(PlusFailure::Zero { x });
    }
    for (s, f) in sys.maps().iter().enumerate() {
        for x1 in 0..n {
            for x2 in 0..n {
                if t.op(f.apply(x1), x2) != f.apply(t.op(x1, x2)) {
                    return Err(PlusFailure::Successor { s, x1, x2 });
                }
            }
        }
    }
    let forced = addition_by_recursion(sys)?;
    for (x1, row) in forced.iter().enumerate() {
        if let Some(x2) = (0..n).find(|&x2| row[x2] != t.op(x1, x2)) {
            return Err(PlusFailure::Mismatch { x1, x2 });
        }
    }
    Ok(())
}

pub fn verify_plus_axioms(sys: &CountingSystem, t: &MonoidTable) -> bool {
    check_plus_axioms(sys, t).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub group: bool,
    pub cancellative: bool,
    pub zero_sum_free: bool,
    pub trichotomy: bool,
}

/// Classify a derived addition, checking table-level and map-level
/// characterisations against each other.
pub fn classify(sys: &CountingSystem, t: &MonoidTable) -> Result<Classification> {
    let n = sys.size();
    if t.len() != n || t.zero() != sys.base() {
        return Err(Error::NotAMonoid("table does not belong to this system".into()));
    }
    let flags = t.flags();
    let maps_bijective = sys.maps().iter().all(EndoMap::is_bijective);
    let maps_injective = sys.maps().iter().all(EndoMap::is_injective);
    if flags.group != maps_bijective {
        return Err(Error::InternalInvariantViolation(format!(
            "group = {} but all maps bijective = {}",
            flags.group, maps_bijective
        )));
    }
    if flags.cancellative != maps_injective {
        return Err(Error::InternalInvariantViolation(format!(
            "cancellative = {} but all maps injective = {}",
            flags.cancellative, maps_injective
        )));
    }
    let base_has_preimage = sys.maps().iter().any(|f| f.table().contains(&sys.base()));
    if !base_has_preimage && !flags.zero_sum_free {
        return Err(Error::InternalInvariantViolation(
            "base point has no preimage but a non-trivial sum is zero".into(),
        ));
    }
    let trichotomy = (0..n).all(|x1| {
        (0..n).all(|x2| (0..n).any(|x| t.op(x, x2) == x1 || t.op(x, x1) == x2))
    });
    Ok(Classification {
        group: flags.group,
        cancellative: flags.cancellative,
        zero_sum_free: flags.zero_sum_free,
        trichotomy,
    })
}

/// Check that `x ↦ (x' ↦ x + x')` is an injective homomorphism into the
/// self-maps of the carrier.
pub fn cayley_embedding(t: &MonoidTable) -> bool {
    let n = t.len();
    let rows: Vec<EndoMap> = match t.table().iter().map(|r| EndoMap::new(r.clone())).collect() {
        Ok(rows) => rows,
        Err(_) => return false,
    };
    let injective = {
        let mut sorted: Vec<&EndoMap> = rows.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    };
    injective
        && rows[t.zero()].is_identity()
        && (0..n).all(|a| (0..n).all(|b| rows[t.op(a, b)] == rows[a].compose(&rows[b])))
}
