use std::fmt;

use serde::Serialize;

/// Two different values forced onto the same element while propagating a
/// map along generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub element: String,
    pub first: String,
    pub second: String,
    pub context: String,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "conflict at {}: forced to both {} and {}",
            self.element, self.first, self.second
        )?;
        if !self.context.is_empty() {
            write!(f, " ({})", self.context)?;
        }
        Ok(())
    }
}

/// Result of a construction that may legitimately not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    Absent(Conflict),
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            Outcome::Absent(_) => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn conflict(&self) -> Option<&Conflict> {
        match self {
            Outcome::Found(_) => None,
            Outcome::Absent(c) => Some(c),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Absent(c) => Outcome::Absent(c),
        }
    }

    #[track_caller]
    pub fn unwrap(self) -> T {
        match self {
            Outcome::Found(t) => t,
            Outcome::Absent(c) => panic!("called `Outcome::unwrap()` on an absent value: {c}"),
        }
    }
}
