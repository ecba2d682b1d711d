//! Initiality diagnostics and the aggregate analysis report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CountingSystem, MapFlags};
use crate::monoid::derive_addition;
use crate::morphism::morphism_find;
use crate::outcome::{Conflict, Outcome};

/// The per-label conditions whose conjunction characterises initiality of a
/// minimal system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingleMapCondition {
    pub label: String,
    /// A morphism into the system padded at this label exists.
    pub morphism_to_padded: bool,
    pub morphism_witness: Option<Conflict>,
    /// Size of the orbit of the base point under this map alone.
    pub core_size: usize,
    /// The single-map system on that orbit is Dedekind.
    pub core_dedekind: bool,
    pub core_failure: Option<String>,
}

impl SingleMapCondition {
    pub fn holds(&self) -> bool {
        self.morphism_to_padded && self.core_dedekind
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InitialityReport {
    pub initial: bool,
    pub conditions: Vec<SingleMapCondition>,
}

impl InitialityReport {
    pub fn failing(&self) -> impl Iterator<Item = &SingleMapCondition> {
        self.conditions.iter().filter(|c| !c.holds())
    }
}

/// Why a single-map system fails to be Dedekind, or `None` if it is.
pub fn dedekind_failure(sys: &CountingSystem) -> Result<Option<String>> {
    sys.require_single_map()?;
    let f = sys.map(0);
    let reason = if !sys.is_minimal() {
        Some("not minimal".to_string())
    } else if !f.is_injective() {
        Some("map is not injective".to_string())
    } else if f.table().contains(&sys.base()) {
        Some(format!("base point `{}` has a preimage", sys.label(sys.base())))
    } else {
        None
    };
    if reason.is_none() != sys.is_dedekind()? {
        return Err(Error::InternalInvariantViolation(
            "Dedekind diagnostics disagree with the predicate".into(),
        ));
    }
    Ok(reason)
}

/// For each label `s`: does a morphism into the system padded at `s` exist,
/// and is the orbit of `x₀` under `f_s` a Dedekind system? Also checks that
/// this orbit equals the cyclic submonoid generated by `x_s` in the derived
/// addition.
pub fn initiality_report(sys: &CountingSystem) -> Result<InitialityReport> {
    sys.require_minimal()?;
    let plus = derive_addition(sys)?;
    let mut conditions = Vec::with_capacity(sys.index_set().len());
    for (s, label) in sys.index_set().iter().enumerate() {
        let padded = sys.pad_single(label)?;
        let (morphism_to_padded, morphism_witness) = match morphism_find(sys, &padded)? {
            Outcome::Found(_) => (true, None),
            Outcome::Absent(c) => (false, Some(c)),
        };
        let (core, embedding) = sys.single(label)?.minimal_core_with_embedding();
        let mut orbit = embedding;
        orbit.sort_unstable();
        if orbit != plus.cyclic_submonoid(sys.generator_point(s)) {
            return Err(Error::InternalInvariantViolation(format!(
                "orbit of the base point under `{label}` is not the submonoid generated by x_{label}"
            )));
        }
        let core_failure = dedekind_failure(&core)?;
        conditions.push(SingleMapCondition {
            label: label.clone(),
            morphism_to_padded,
            morphism_witness,
            core_size: core.size(),
            core_dedekind: core_failure.is_none(),
            core_failure,
        });
    }
    Ok(InitialityReport {
        initial: conditions.iter().all(SingleMapCondition::holds),
        conditions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub size: usize,
    pub minimal: bool,
    pub core_size: usize,
    pub maps: Vec<MapFlags>,
    /// Present for single-map systems only.
    pub dedekind: Option<bool>,
    pub initial: bool,
    /// Present for minimal systems; non-minimal systems are never initial.
    pub initiality: Option<InitialityReport>,
}

pub fn analyze(sys: &CountingSystem) -> Result<AnalysisReport> {
    let minimal = sys.is_minimal();
    let dedekind = match sys.maps().len() {
        1 => Some(sys.is_dedekind()?),
        _ => None,
    };
    let initiality = if minimal {
        Some(initiality_report(sys)?)
    } else {
        None
    };
    let report = AnalysisReport {
        size: sys.size(),
        minimal,
        core_size: sys.minimal_core().size(),
        maps: sys.map_flags(),
        dedekind,
        initial: initiality.as_ref().is_some_and(|r| r.initial),
        initiality,
    };
    if report.dedekind == Some(true)
        && !(report.minimal && report.maps[0].injective && !sys.map(0).table().contains(&sys.base()))
    {
        return Err(Error::InternalInvariantViolation(
            "Dedekind flag without its defining conditions".into(),
        ));
    }
    Ok(report)
}
