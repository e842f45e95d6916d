//! Compilation of a PCP instance into FISs.
//!
//! The first two rows of an accepted grid spell a candidate solution: row 1
//! as a sequence of `x`-words, row 2 as a sequence of `y`-words with the same
//! letters. Each state under row 2 is `c(i,j)`: the index of the `x`-word and
//! of the `y`-word that produced that column. Every following row is made of
//! `$` and cancels one pair of words from both index streams, left to right;
//! classes `M(i,k1,k2)` count how many positions of `x_i` and `y_i` still have
//! to be cancelled on the current row. A row that starts cancelling a pair
//! whose two indices differ can never reach a final class, so only grids
//! encoding genuine solutions are accepted.
//!
//! The accessibility variant adds a state `q` and classes `Q`, `T` so that one
//! extra `$` column and one extra `$` row can be parsed around an accepted
//! grid, ending with a dedicated corner transition.

use serde::{Deserialize, Serialize};

use super::{PcpError, PcpInstance, PcpSolution};
use crate::fis::{ClassName, Fis, StateName, Transition};
use crate::grid::{h_compose, v_compose, Grid, Letter};

/// Marker letter for every row below the candidate solution.
pub const MARKER: &str = "$";

/// The schema a reduction transition was instantiated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    /// Reads a letter of some `x_i` on the first row.
    TopWord,
    /// Reads a letter of some `y_i` on the second row, matching the letter above.
    BottomWord,
    /// Copies two exhausted streams.
    Idle,
    /// Starts cancelling a pair when both streams show the same index.
    PairStart,
    /// Starts cancelling a pair when only the `x` stream has an index left here.
    TopStart,
    /// Starts cancelling a pair when only the `y` stream has an index left here.
    BottomStart,
    /// Continues cancelling, or copies the rest of the streams.
    Cancel,
    /// Extra column, first cell after an `A`.
    ColumnFromIdle,
    /// Extra column next to a row that finished cancelling pair `i`.
    ColumnFromPair,
    /// Extra row, first cell.
    RowFirst,
    /// Extra row, later cells.
    RowNext,
    /// Bottom-right corner of the padded grid.
    Corner,
}

fn marker() -> Letter {
    Letter::new(MARKER).expect("marker is a valid letter")
}

fn state(name: String) -> StateName {
    StateName::unchecked(name)
}

fn class(name: String) -> ClassName {
    ClassName::unchecked(name)
}

fn s() -> StateName {
    state("s".into())
}

fn a(i: usize, j: usize) -> StateName {
    state(format!("a({i},{j})"))
}

fn c(i: usize, j: usize) -> StateName {
    state(format!("c({i},{j})"))
}

fn q() -> StateName {
    state("q".into())
}

fn class_a() -> ClassName {
    class("A".into())
}

/// `B(i,j)`, with `B(i,0) = B(i,|x_i|) = A`.
fn b(p: &PcpInstance, i: usize, j: usize) -> ClassName {
    if j == 0 || j == p.x(i).len() {
        class_a()
    } else {
        class(format!("B({i},{j})"))
    }
}

/// `C(i,k)`, with `C(i,0) = C(i,|y_i|) = A`.
fn cc(p: &PcpInstance, i: usize, k: usize) -> ClassName {
    if k == 0 || k == p.y(i).len() {
        class_a()
    } else {
        class(format!("C({i},{k})"))
    }
}

fn m(i: usize, j: usize, k: usize) -> ClassName {
    class(format!("M({i},{j},{k})"))
}

fn class_q() -> ClassName {
    class("Q".into())
}

fn class_t() -> ClassName {
    class("T".into())
}

/// Where cancellation goes next for one stream: `None` when the stream shows
/// an index other than the pair being cancelled while positions remain.
fn cancel_step(remaining: usize, shown: usize, pair: usize) -> Option<(usize, usize)> {
    if remaining == 0 {
        Some((shown, 0))
    } else if shown == pair {
        Some((0, remaining - 1))
    } else if shown == 0 {
        Some((0, remaining))
    } else {
        None
    }
}

/// Every transition of the reduction system with the schema it came from, in
/// generation order, duplicates removed (first occurrence kept).
pub fn reduction_rules(p: &PcpInstance) -> Vec<(RuleKind, Transition)> {
    let n = p.len();
    let dollar = marker();
    let mut out: Vec<(RuleKind, Transition)> = Vec::new();
    let mut push = |kind, t: Transition| {
        if !out.iter().any(|(_, u)| u == &t) {
            out.push((kind, t));
        }
    };

    for i in 1..=n {
        for (j, letter) in p.x(i).iter().enumerate().map(|(j, l)| (j + 1, l)) {
            push(
                RuleKind::TopWord,
                Transition::new(s(), b(p, i, j - 1), letter.clone(), b(p, i, j), a(i, j)),
            );
        }
    }
    for i in 1..=n {
        for (k, letter) in p.y(i).iter().enumerate().map(|(k, l)| (k + 1, l)) {
            for j in 1..=n {
                for (g, above) in p.x(j).iter().enumerate().map(|(g, l)| (g + 1, l)) {
                    if above == letter {
                        push(
                            RuleKind::BottomWord,
                            Transition::new(a(j, g), cc(p, i, k - 1), letter.clone(), cc(p, i, k), c(j, i)),
                        );
                    }
                }
            }
        }
    }
    push(
        RuleKind::Idle,
        Transition::new(c(0, 0), class_a(), dollar.clone(), class_a(), c(0, 0)),
    );
    for i in 1..=n {
        let (lx, ly) = (p.x(i).len(), p.y(i).len());
        push(
            RuleKind::PairStart,
            Transition::new(c(i, i), class_a(), dollar.clone(), m(i, lx - 1, ly - 1), c(0, 0)),
        );
    }
    for i in 1..=n {
        let (lx, ly) = (p.x(i).len(), p.y(i).len());
        push(
            RuleKind::TopStart,
            Transition::new(c(i, 0), class_a(), dollar.clone(), m(i, lx - 1, ly), c(0, 0)),
        );
    }
    for i in 1..=n {
        let (lx, ly) = (p.x(i).len(), p.y(i).len());
        push(
            RuleKind::BottomStart,
            Transition::new(c(0, i), class_a(), dollar.clone(), m(i, lx, ly - 1), c(0, 0)),
        );
    }
    for i in 1..=n {
        for k1 in 0..=p.x(i).len() {
            for k2 in 0..=p.y(i).len() {
                for j1 in 0..=n {
                    for j2 in 0..=n {
                        let (Some((m1, r1)), Some((m2, r2))) =
                            (cancel_step(k1, j1, i), cancel_step(k2, j2, i))
                        else {
                            continue;
                        };
                        push(
                            RuleKind::Cancel,
                            Transition::new(c(j1, j2), m(i, k1, k2), dollar.clone(), m(i, r1, r2), c(m1, m2)),
                        );
                    }
                }
            }
        }
    }
    out
}

/// The transitions added by the accessibility variant.
pub fn s1_reduction_rules(p: &PcpInstance) -> Vec<(RuleKind, Transition)> {
    let dollar = marker();
    let mut out = vec![(
        RuleKind::ColumnFromIdle,
        Transition::new(s(), class_a(), dollar.clone(), class_t(), s()),
    )];
    for i in 1..=p.len() {
        out.push((
            RuleKind::ColumnFromPair,
            Transition::new(s(), m(i, 0, 0), dollar.clone(), class_t(), s()),
        ));
    }
    out.push((
        RuleKind::RowFirst,
        Transition::new(c(0, 0), class_a(), dollar.clone(), class_q(), q()),
    ));
    out.push((
        RuleKind::RowNext,
        Transition::new(c(0, 0), class_q(), dollar.clone(), class_q(), q()),
    ));
    out.push((RuleKind::Corner, corner_transition()));
    out
}

/// The transition whose accessibility in the padded system is equivalent to
/// solvability of the instance.
pub fn corner_transition() -> Transition {
    Transition::new(s(), class_q(), marker(), class_t(), q())
}

/// The reduction system: nonempty (and then infinite) language iff the
/// instance has a solution.
pub fn build_s(p: &PcpInstance) -> Fis {
    let n = p.len();
    let mut states = vec![s()];
    for i in 1..=n {
        states.extend((1..=p.x(i).len()).map(|j| a(i, j)));
    }
    for i in 0..=n {
        states.extend((0..=n).map(|j| c(i, j)));
    }
    let mut classes = vec![class_a()];
    for i in 1..=n {
        classes.extend((1..p.x(i).len()).map(|j| b(p, i, j)));
    }
    for i in 1..=n {
        classes.extend((1..p.y(i).len()).map(|k| cc(p, i, k)));
    }
    for i in 1..=n {
        for j in 0..=p.x(i).len() {
            classes.extend((0..=p.y(i).len()).map(|k| m(i, j, k)));
        }
    }
    let mut alphabet = p.alphabet().to_vec();
    alphabet.push(marker());
    let mut final_classes = vec![class_a()];
    final_classes.extend((1..=n).map(|i| m(i, 0, 0)));
    Fis {
        alphabet,
        states,
        classes,
        transitions: reduction_rules(p).into_iter().map(|(_, t)| t).collect(),
        initial_states: vec![s()],
        initial_classes: vec![class_a()],
        final_states: vec![c(0, 0)],
        final_classes,
    }
}

/// The accessibility variant: everything in [`build_s`] plus `q`, `Q`, `T`,
/// the padding transitions, and `q`/`T` as the only final state/class.
pub fn build_s1(p: &PcpInstance) -> Fis {
    let mut f = build_s(p);
    f.states.push(q());
    f.classes.extend([class_q(), class_t()]);
    f.transitions
        .extend(s1_reduction_rules(p).into_iter().map(|(_, t)| t));
    f.final_states = vec![q()];
    f.final_classes = vec![class_t()];
    f
}

fn dollars(rows: usize, cols: usize) -> Grid {
    Grid::filled(rows, cols, marker()).expect("nonempty")
}

/// The grid spelling the solution on two rows, followed by one `$` row per
/// index.
pub fn witness_from_solution(p: &PcpInstance, sol: &PcpSolution) -> Result<Grid, PcpError> {
    let indices = sol.indices();
    let top = p.top(indices)?;
    let bottom = p.bottom(indices)?;
    if top != bottom {
        return Err(PcpError::InvalidSolution(indices.to_vec()));
    }
    let q = top.len();
    let words = Grid::from_rows(vec![top, bottom]).expect("nonempty rows");
    Ok(v_compose(&words, &dollars(indices.len(), q)).expect("same width"))
}

/// [`witness_from_solution`] with one more `$` column on the right and one
/// more `$` row at the bottom.
pub fn s1_witness(p: &PcpInstance, sol: &PcpSolution) -> Result<Grid, PcpError> {
    let w = witness_from_solution(p, sol)?;
    let widened = h_compose(&w, &dollars(w.rows(), 1)).expect("same height");
    Ok(v_compose(&widened, &dollars(1, widened.cols())).expect("same width"))
}
