//! Finite counting systems and the commutative monoids they carry.
//!
//! A counting system is a finite carrier with a base point and a family of
//! pairwise-commuting self-maps. When every element is reachable from the
//! base point, the closure of the family under composition is carried
//! bijectively onto the carrier by evaluation at the base point, and that
//! bijection transfers composition to an addition on the carrier. This crate
//! computes that addition, the multiplication obtained by biadditive
//! extension, morphisms between systems, and decision procedures for
//! freeness and initiality, verifying each result exhaustively.

pub mod biadditive;
pub mod closure;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod free;
pub mod initial;
pub mod model;
pub mod monoid;
pub mod morphism;
pub mod outcome;

pub use closure::{evaluation, monoid_closure, EvaluationMap, TransformationMonoid};
pub use error::{Error, Result};
pub use model::{is_invariant, Carrier, CountingSystem, EndoMap, Limits, MapFlags};
pub use monoid::{
    addition_by_recursion, cayley_embedding, check_plus_axioms, classify, derive_addition,
    verify_plus_axioms, Classification, MonoidFlags, MonoidTable, PlusFailure,
};
pub use biadditive::{
    biadditive_extend, derive_multiplication_indexed, derive_multiplication_single,
    direct_sum_check, hom_extend, is_free_report, is_homomorphism, projections,
    BiadditiveTable, CyclicFreeness, DirectSum, FreeReport, HomTable, OdotTable,
};
pub use outcome::{Conflict, Outcome};
pub use free::{free_add, free_eval, free_uniqueness_probe, FreeElement};
pub use initial::{analyze, initiality_report, AnalysisReport, InitialityReport, SingleMapCondition};
pub use morphism::{bridge_check, is_isomorphism, is_morphism, morphism_find, SystemMorphism};
pub use format::{emit_odot, emit_system, parse_odot, parse_system, tsv_table, ParseError, SystemDocument};
