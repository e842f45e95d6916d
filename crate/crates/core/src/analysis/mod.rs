//! Bounded decision procedures: emptiness, transition accessibility and
//! finiteness evidence over grids up to a fixed size, plus the structural
//! checker for runs of the reduction system.

mod structure;

use serde::Serialize;
use thiserror::Error;

use crate::fis::{canonical_sizes, Fis, FisError, Scenario, ScenarioDefect, StateName, Transition};
use crate::fis::ClassName;
use crate::grid::{v_compose, Grid, Letter};
use crate::pcp::MARKER;

pub use structure::{structural_check, Check, CheckName, Position, StructuralReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Fis(#[from] FisError),
    #[error("search bounds must be at least 1×1")]
    InvalidBounds,
    #[error("not a reduction system: {0}")]
    NotAReductionFis(String),
    #[error("scenario is not an accepting run of the reduction system: {0}")]
    NotReductionScenario(ScenarioDefect),
}

/// Largest grid shape a search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_rows: usize,
    pub max_cols: usize,
}

impl SearchBounds {
    pub fn new(max_rows: usize, max_cols: usize) -> Result<Self, AnalysisError> {
        if max_rows == 0 || max_cols == 0 {
            return Err(AnalysisError::InvalidBounds);
        }
        Ok(SearchBounds { max_rows, max_cols })
    }
}

/// An accepted grid together with one accepting run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub grid: Grid,
    pub scenario: Scenario,
}

fn first_witness(
    f: &Fis,
    track: Option<&Transition>,
    b: SearchBounds,
) -> Result<Option<Witness>, FisError> {
    let compiled = f.compile()?;
    if let Some(t) = track {
        if !f.has_transition(t) {
            return Err(FisError::UnknownTransition(t.clone()));
        }
    }
    for (rows, cols) in canonical_sizes(b.max_rows, b.max_cols) {
        let Some(grid) = compiled.first_accepted(rows, cols, track)? else {
            continue;
        };
        let scenario = match track {
            Some(t) => compiled.recognize_with_transition(&grid, t)?,
            None => compiled.recognize(&grid)?,
        }
        .expect("search and recognition agree");
        return Ok(Some(Witness { grid, scenario }));
    }
    Ok(None)
}

/// The canonically first accepted grid within `b` (smallest area, then
/// fewest rows, then lexicographically least letters).
pub fn bounded_emptiness(f: &Fis, b: SearchBounds) -> Result<Option<Witness>, FisError> {
    first_witness(f, None, b)
}

/// The canonically first grid within `b` with an accepting run through `t`.
pub fn bounded_accessibility(
    f: &Fis,
    t: &Transition,
    b: SearchBounds,
) -> Result<Option<Witness>, FisError> {
    first_witness(f, Some(t), b)
}

/// Outcome of pumping the first witness of a reduction system.
// built once per query, so the size gap between variants is irrelevant
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finiteness {
    EmptyWithinBounds,
    Pumped {
        witness: Witness,
        /// The witness with one more `$` row.
        pumped: Grid,
        /// A run on `pumped`, if it is accepted.
        pumped_run: Option<Scenario>,
    },
}

/// Checks the shape every reduction system has: the marker letter, `s`/`A`
/// as the only initial state/class, `c(0,0)` as the only final state, and the
/// idle transition on `$`.
fn looks_like_reduction(f: &Fis) -> Result<(), AnalysisError> {
    let not = |why: &str| Err(AnalysisError::NotAReductionFis(why.to_string()));
    let marker = Letter::new(MARKER).expect("marker");
    let s = StateName::new("s").expect("name");
    let a = ClassName::new("A").expect("name");
    let done = StateName::new("c(0,0)").expect("name");
    if !f.alphabet.contains(&marker) {
        return not("alphabet has no $");
    }
    if f.initial_states != [s] || f.initial_classes != [a.clone()] {
        return not("initial state and class must be exactly s and A");
    }
    if f.final_states != [done.clone()] {
        return not("final state must be exactly c(0,0)");
    }
    if !f.has_transition(&Transition::new(done.clone(), a.clone(), marker, a, done)) {
        return not("missing the idle $ transition at c(0,0)");
    }
    Ok(())
}

/// Finds the first witness within `b` and checks that adding a `$` row keeps
/// it in the language. Only meaningful for reduction systems.
pub fn finiteness_evidence(f: &Fis, b: SearchBounds) -> Result<Finiteness, AnalysisError> {
    looks_like_reduction(f)?;
    let Some(witness) = bounded_emptiness(f, b)? else {
        return Ok(Finiteness::EmptyWithinBounds);
    };
    let marker = Letter::new(MARKER).expect("marker");
    let row = Grid::filled(1, witness.grid.cols(), marker).expect("nonempty");
    let pumped = v_compose(&witness.grid, &row).expect("same width");
    let pumped_run = crate::fis::recognize(f, &pumped)?;
    Ok(Finiteness::Pumped {
        witness,
        pumped,
        pumped_run,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fis::tests::f1;
    use crate::pcp::{build_s, build_s1, corner_transition, PcpInstance};

    fn inst(x: &[&str], y: &[&str]) -> PcpInstance {
        PcpInstance::from_words(x, y).unwrap()
    }

    fn g(rows: &[&str]) -> Grid {
        Grid::parse_rows(rows).unwrap()
    }

    fn bounds(r: usize, c: usize) -> SearchBounds {
        SearchBounds::new(r, c).unwrap()
    }

    #[test]
    fn emptiness_examples() {
        let w = bounded_emptiness(&build_s(&inst(&["a"], &["a"])), bounds(4, 4))
            .unwrap()
            .unwrap();
        assert_eq!(w.grid, g(&["a", "a", "$"]));
        assert!(bounded_emptiness(&build_s(&inst(&["ab"], &["ba"])), bounds(6, 8))
            .unwrap()
            .is_none());
        let w = bounded_emptiness(&f1(), bounds(1, 1)).unwrap().unwrap();
        assert_eq!(w.grid, g(&["a"]));
        assert_eq!(w.scenario.check(&f1()), Ok(()));
        assert_eq!(SearchBounds::new(0, 3), Err(AnalysisError::InvalidBounds));
    }

    #[test]
    fn accessibility_examples() {
        let p = inst(&["a"], &["a"]);
        let w = bounded_accessibility(&build_s1(&p), &corner_transition(), bounds(5, 3))
            .unwrap()
            .unwrap();
        assert_eq!(w.grid, g(&["a $", "a $", "$ $", "$ $"]));
        assert!(w.scenario.cells.contains(&corner_transition()));
        let f = f1();
        let t = Transition::parse("1 A a B 2").unwrap();
        assert_eq!(
            bounded_accessibility(&f, &t, bounds(1, 1)).unwrap().unwrap().grid,
            g(&["a"])
        );
        let stranger = Transition::parse("9 A a B 2").unwrap();
        assert_eq!(
            bounded_accessibility(&f, &stranger, bounds(1, 1)),
            Err(FisError::UnknownTransition(stranger))
        );
    }

    #[test]
    fn pumping() {
        let Finiteness::Pumped {
            witness,
            pumped,
            pumped_run,
        } = finiteness_evidence(&build_s(&inst(&["a"], &["a"])), bounds(5, 4)).unwrap()
        else {
            panic!("expected a witness");
        };
        assert_eq!(witness.grid, g(&["a", "a", "$"]));
        assert_eq!(pumped, g(&["a", "a", "$", "$"]));
        assert!(pumped_run.is_some());
        assert_eq!(
            finiteness_evidence(&build_s(&inst(&["ab"], &["ba"])), bounds(6, 8)).unwrap(),
            Finiteness::EmptyWithinBounds
        );
        assert!(matches!(
            finiteness_evidence(&f1(), bounds(2, 2)),
            Err(AnalysisError::NotAReductionFis(_))
        ));
    }
}
