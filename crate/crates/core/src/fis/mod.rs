//! Finite interactive systems.
//!
//! A FIS is a hypergraph automaton over grids. Each transition consumes a
//! state from the north and a class from the west together with a letter, and
//! emits a class to the east and a state to the south. A grid is recognized
//! when a run exists whose north/west borders carry initial states/classes and
//! whose south/east borders carry final ones.

mod engine;
mod scenario;
mod text;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{is_valid_token, Grid, Letter};

pub use engine::CompiledFis;
pub use scenario::{Scenario, ScenarioDefect};
pub use text::{parse_fis, write_fis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FisError {
    #[error("invalid name {0:?}: names are nonempty and whitespace-free")]
    InvalidName(String),
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(Letter),
    #[error("transition {0} is not a transition of this system")]
    UnknownTransition(Transition),
    #[error("system is not well formed: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    Invalid(Vec<Diagnostic>),
}

macro_rules! name_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn new(token: impl Into<String>) -> Result<Self, FisError> {
                let token = token.into();
                if is_valid_token(&token) && token != crate::grid::BORDER {
                    Ok($name(token))
                } else {
                    Err(FisError::InvalidName(token))
                }
            }

            pub(crate) fn unchecked(token: String) -> Self {
                debug_assert!(is_valid_token(&token));
                $name(token)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl FromStr for $name {
            type Err = FisError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $name::new(s)
            }
        }

        impl TryFrom<String> for $name {
            type Error = FisError;

            fn try_from(value: String) -> Result<Self, Self::Error> {
                $name::new(value)
            }
        }

        impl From<$name> for String {
            fn from(value: $name) -> Self {
                value.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

name_type!(
    /// A state: carries information top to bottom.
    StateName
);
name_type!(
    /// An interaction class: carries information left to right.
    ClassName
);

/// A crossing `⟨north, west, letter, east, south⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub north: StateName,
    pub west: ClassName,
    pub letter: Letter,
    pub east: ClassName,
    pub south: StateName,
}

impl Transition {
    pub fn new(
        north: StateName,
        west: ClassName,
        letter: Letter,
        east: ClassName,
        south: StateName,
    ) -> Self {
        Transition {
            north,
            west,
            letter,
            east,
            south,
        }
    }

    /// Parses `"N W a E S"`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let [n, w, a, e, s] = toks.as_slice() else {
            return Err(format!(
                "a transition has five fields (north west letter east south), got {}",
                toks.len()
            ));
        };
        Ok(Transition {
            north: StateName::new(*n).map_err(|e| e.to_string())?,
            west: ClassName::new(*w).map_err(|e| e.to_string())?,
            letter: Letter::new(*a).map_err(|e| e.to_string())?,
            east: ClassName::new(*e).map_err(|e| e.to_string())?,
            south: StateName::new(*s).map_err(|e| e.to_string())?,
        })
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.north, self.west, self.letter, self.east, self.south
        )
    }
}

/// A finite interactive system. All sets are kept in declaration order, which
/// fixes every tie-break made by the recognizer and the searches.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Fis {
    pub alphabet: Vec<Letter>,
    pub states: Vec<StateName>,
    pub classes: Vec<ClassName>,
    pub transitions: Vec<Transition>,
    pub initial_states: Vec<StateName>,
    pub initial_classes: Vec<ClassName>,
    pub final_states: Vec<StateName>,
    pub final_classes: Vec<ClassName>,
}

/// A violated well-formedness condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Diagnostic {
    DuplicateLetter(Letter),
    DuplicateState(StateName),
    DuplicateClass(ClassName),
    UndeclaredState(StateName),
    UndeclaredClass(ClassName),
    UndeclaredLetter(Letter),
    DuplicateTransition(Transition),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DuplicateLetter(l) => write!(f, "letter {l} declared twice"),
            Diagnostic::DuplicateState(s) => write!(f, "state {s} declared twice"),
            Diagnostic::DuplicateClass(c) => write!(f, "class {c} declared twice"),
            Diagnostic::UndeclaredState(s) => write!(f, "state {s} is not declared"),
            Diagnostic::UndeclaredClass(c) => write!(f, "class {c} is not declared"),
            Diagnostic::UndeclaredLetter(l) => write!(f, "letter {l} is not in the alphabet"),
            Diagnostic::DuplicateTransition(t) => write!(f, "transition {t} listed twice"),
        }
    }
}

/// Declared but unused names. These are allowed; callers may report them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    UnusedState(StateName),
    UnusedClass(ClassName),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::UnusedState(s) => write!(f, "state {s} appears in no transition or designation"),
            Warning::UnusedClass(c) => write!(f, "class {c} appears in no transition or designation"),
        }
    }
}

impl Fis {
    /// Returns every violated invariant; empty iff the system is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let letters = dedup_check(&self.alphabet, &mut out, Diagnostic::DuplicateLetter);
        let states = dedup_check(&self.states, &mut out, Diagnostic::DuplicateState);
        let classes = dedup_check(&self.classes, &mut out, Diagnostic::DuplicateClass);

        let check_state = |s: &StateName, out: &mut Vec<Diagnostic>| {
            if !states.contains(s) {
                out.push(Diagnostic::UndeclaredState(s.clone()));
            }
        };
        for s in self.initial_states.iter().chain(&self.final_states) {
            check_state(s, &mut out);
        }
        for c in self.initial_classes.iter().chain(&self.final_classes) {
            if !classes.contains(c) {
                out.push(Diagnostic::UndeclaredClass(c.clone()));
            }
        }
        let mut seen = HashSet::new();
        for t in &self.transitions {
            check_state(&t.north, &mut out);
            check_state(&t.south, &mut out);
            for c in [&t.west, &t.east] {
                if !classes.contains(c) {
                    out.push(Diagnostic::UndeclaredClass(c.clone()));
                }
            }
            if !letters.contains(&t.letter) {
                out.push(Diagnostic::UndeclaredLetter(t.letter.clone()));
            }
            if !seen.insert(t) {
                out.push(Diagnostic::DuplicateTransition(t.clone()));
            }
        }
        out
    }

    pub fn warnings(&self) -> Vec<Warning> {
        let mut used_states: HashSet<&StateName> = HashSet::new();
        let mut used_classes: HashSet<&ClassName> = HashSet::new();
        used_states.extend(self.initial_states.iter().chain(&self.final_states));
        used_classes.extend(self.initial_classes.iter().chain(&self.final_classes));
        for t in &self.transitions {
            used_states.extend([&t.north, &t.south]);
            used_classes.extend([&t.west, &t.east]);
        }
        let states = self
            .states
            .iter()
            .filter(|s| !used_states.contains(s))
            .map(|s| Warning::UnusedState(s.clone()));
        let classes = self
            .classes
            .iter()
            .filter(|c| !used_classes.contains(c))
            .map(|c| Warning::UnusedClass(c.clone()));
        states.chain(classes).collect()
    }

    pub fn compile(&self) -> Result<CompiledFis, FisError> {
        CompiledFis::new(self)
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.transitions.contains(t)
    }
}

fn dedup_check<'a, T: Eq + std::hash::Hash + Clone>(
    items: &'a [T],
    out: &mut Vec<Diagnostic>,
    wrap: impl Fn(T) -> Diagnostic,
) -> HashSet<&'a T> {
    let mut set = HashSet::new();
    for item in items {
        if !set.insert(item) {
            out.push(wrap(item.clone()));
        }
    }
    set
}

/// Decides membership and returns one accepting scenario.
pub fn recognize(f: &Fis, w: &Grid) -> Result<Option<Scenario>, FisError> {
    f.compile()?.recognize(w)
}

/// Like [`recognize`], but only scenarios that use `t` in at least one cell count.
pub fn recognize_with_transition(
    f: &Fis,
    w: &Grid,
    t: &Transition,
) -> Result<Option<Scenario>, FisError> {
    f.compile()?.recognize_with_transition(w, t)
}

/// Every accepted grid with at most `max_rows` rows and `max_cols` columns,
/// ordered by area, then rows, then row-major letter index.
pub fn enumerate_language(
    f: &Fis,
    max_rows: usize,
    max_cols: usize,
) -> Result<Vec<Grid>, FisError> {
    let compiled = f.compile()?;
    let mut out = Vec::new();
    for (rows, cols) in canonical_sizes(max_rows, max_cols) {
        out.extend(compiled.accepted_grids(rows, cols, None)?);
    }
    Ok(out)
}

/// Grid shapes within the bounds, by area then by row count.
pub fn canonical_sizes(max_rows: usize, max_cols: usize) -> Vec<(usize, usize)> {
    let mut sizes: Vec<(usize, usize)> = (1..=max_rows)
        .flat_map(|r| (1..=max_cols).map(move |c| (r, c)))
        .collect();
    sizes.sort_by_key(|&(r, c)| (r * c, r));
    sizes
}
