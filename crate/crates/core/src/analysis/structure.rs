//! Structural checker for accepting runs of the reduction system.
//!
//! Every run accepted by the reduction system of an instance has a rigid
//! shape: two word rows, then one `$` row per cancelled pair, then idle `$`
//! rows. The checker recovers the index lists used on the two word rows and
//! verifies each property of that shape as an exact list equality.

use std::collections::HashMap;
use std::fmt::{self, Write};

use serde::Serialize;

use super::AnalysisError;
use crate::fis::{Scenario, Transition};
use crate::grid::Letter;
use crate::pcp::{build_s, reduction_rules, PcpInstance, RuleKind, MARKER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    /// At least three rows; borders are all `s`, `A` and `c(0,0)`.
    Borders,
    /// Rows 1 and 2 are equal and spell the `x`-words and `y`-words used.
    WordRows,
    /// The states under rows 1 and 2 repeat each word index once per letter.
    IndexStreams,
    /// Rows 1 and 2 read words; every later row is `$` read by marker rules.
    MarkerRows,
    /// Row `p + 2` has zeroed out exactly the first `p` words of both
    /// streams, and the two index lists coincide.
    PairReduction,
    /// Rows after the last cancellation only idle.
    IdleTail,
    /// East border is `A A M(i_1,0,0) … M(i_k,0,0) A…`.
    EastBorder,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::Borders,
        CheckName::WordRows,
        CheckName::IndexStreams,
        CheckName::MarkerRows,
        CheckName::PairReduction,
        CheckName::IdleTail,
        CheckName::EastBorder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Borders => "borders",
            CheckName::WordRows => "word_rows",
            CheckName::IndexStreams => "index_streams",
            CheckName::MarkerRows => "marker_rows",
            CheckName::PairReduction => "pair_reduction",
            CheckName::IdleTail => "idle_tail",
            CheckName::EastBorder => "east_border",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One-based grid coordinates. Row `0`/`rows + 1` and column `0`/`cols + 1`
/// address the north/south and west/east borders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: CheckName,
    pub passed: bool,
    /// Empty when passed.
    pub detail: String,
    /// Empty when passed.
    pub positions: Vec<Position>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub rows: usize,
    pub cols: usize,
    /// Indices of the `x`-words spelled by row 1.
    pub top_indices: Vec<usize>,
    /// Indices of the `y`-words spelled by row 2.
    pub bottom_indices: Vec<usize>,
    /// First coordinates of the states under row 2.
    pub top_stream: Vec<usize>,
    /// Second coordinates of the states under row 2.
    pub bottom_stream: Vec<usize>,
    pub east_border: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl StructuralReport {
    pub fn check(&self, name: CheckName) -> &Check {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .expect("every check is reported")
    }

    pub fn to_text(&self) -> String {
        let list = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "size: {}x{}", self.rows, self.cols);
        let _ = writeln!(out, "top indices: {}", list(&self.top_indices));
        let _ = writeln!(out, "bottom indices: {}", list(&self.bottom_indices));
        let _ = writeln!(out, "top stream: {}", list(&self.top_stream));
        let _ = writeln!(out, "bottom stream: {}", list(&self.bottom_stream));
        let _ = writeln!(out, "east border: {}", self.east_border.join(" "));
        for c in &self.checks {
            if c.passed {
                let _ = writeln!(out, "{}: PASS", c.name);
            } else {
                let at: Vec<String> = c.positions.iter().map(|p| format!("({},{})", p.row, p.col)).collect();
                let _ = writeln!(out, "{}: FAIL {} at {}", c.name, c.detail, at.join(" "));
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

/// `head(1,2,…)` → `[1,2,…]`.
fn name_indices(name: &str, head: &str) -> Option<Vec<usize>> {
    let inner = name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.parse().ok()).collect()
}

fn pair(name: &str, head: &str) -> Option<(usize, usize)> {
    match name_indices(name, head)?[..] {
        [a, b] => Some((a, b)),
        _ => None,
    }
}

/// Each index repeated once per letter of its word.
fn expand(indices: &[usize], len: impl Fn(usize) -> usize) -> Vec<usize> {
    indices.iter().flat_map(|&i| std::iter::repeat_n(i, len(i))).collect()
}

/// Zero-based positions where two lists differ, counting the surplus of the
/// longer one.
fn differences<T: PartialEq>(actual: &[T], expected: &[T]) -> Vec<usize> {
    (0..actual.len().max(expected.len()))
        .filter(|&t| actual.get(t) != expected.get(t))
        .collect()
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn record(&mut self, name: CheckName, failures: Vec<(String, Vec<Position>)>) {
        let passed = failures.is_empty();
        let detail = failures.iter().map(|(d, _)| d.as_str()).collect::<Vec<_>>().join("; ");
        let mut positions: Vec<Position> = failures.into_iter().flat_map(|(_, p)| p).collect();
        positions.sort();
        positions.dedup();
        self.checks.push(Check {
            name,
            passed,
            detail,
            positions,
        });
    }
}

/// Replays `sc` against the reduction system of `p` and reports every
/// structural property of the run.
pub fn structural_check(p: &PcpInstance, sc: &Scenario) -> Result<StructuralReport, AnalysisError> {
    sc.check(&build_s(p)).map_err(AnalysisError::NotReductionScenario)?;
    let kinds: HashMap<Transition, RuleKind> =
        reduction_rules(p).into_iter().map(|(k, t)| (t, k)).collect();
    let (m, q) = (sc.rows(), sc.cols());
    let at = |row: usize, col: usize| Position { row, col };
    let kind = |i: usize, j: usize| kinds[sc.cell(i, j)];
    let south = |i: usize, j: usize| sc.cell(i, j).south.as_str();
    let row_letters = |i: usize| sc.grid.row(i).to_vec();
    let x_len = |i: usize| p.x(i).len();
    let y_len = |i: usize| p.y(i).len();
    let mut b = Builder { checks: Vec::new() };

    // index lists: an x-word starts at a(i,1); a y-word starts after class A
    let top_pairs: Vec<Option<(usize, usize)>> = (0..q).map(|j| pair(south(0, j), "a")).collect();
    let top_indices: Vec<usize> = top_pairs
        .iter()
        .flatten()
        .filter(|(_, pos)| *pos == 1)
        .map(|(i, _)| *i)
        .collect();
    let stream_under = |i: usize| -> Vec<Option<(usize, usize)>> {
        (0..q).map(|j| pair(south(i, j), "c")).collect()
    };
    let (bottom_indices, row2_stream) = if m >= 2 {
        let stream = stream_under(1);
        let starts = (0..q)
            .filter(|&j| sc.cell(1, j).west.as_str() == "A")
            .filter_map(|j| stream[j].map(|(_, i)| i))
            .collect();
        (starts, stream)
    } else {
        (Vec::new(), Vec::new())
    };
    let top_stream: Vec<usize> = row2_stream.iter().map(|s| s.map_or(0, |(a, _)| a)).collect();
    let bottom_stream: Vec<usize> = row2_stream.iter().map(|s| s.map_or(0, |(_, b)| b)).collect();
    let k = top_indices.len();

    // borders
    let mut fails = Vec::new();
    if m < 3 {
        fails.push((format!("only {m} rows"), vec![at(m, 0)]));
    }
    let bad_north: Vec<Position> =
        (0..q).filter(|&j| sc.north[j].as_str() != "s").map(|j| at(0, j + 1)).collect();
    let bad_west: Vec<Position> =
        (0..m).filter(|&i| sc.west[i].as_str() != "A").map(|i| at(i + 1, 0)).collect();
    let bad_south: Vec<Position> = (0..q)
        .filter(|&j| sc.south[j].as_str() != "c(0,0)")
        .map(|j| at(m + 1, j + 1))
        .collect();
    for (what, bad) in [("north", bad_north), ("west", bad_west), ("south", bad_south)] {
        if !bad.is_empty() {
            fails.push((format!("unexpected {what} border"), bad));
        }
    }
    b.record(CheckName::Borders, fails);

    // word rows
    let mut fails = Vec::new();
    if m >= 2 {
        let (row1, row2) = (row_letters(0), row_letters(1));
        let spelled_x: Vec<Letter> = top_indices.iter().flat_map(|&i| p.x(i).iter().cloned()).collect();
        let spelled_y: Vec<Letter> =
            bottom_indices.iter().flat_map(|&i| p.y(i).iter().cloned()).collect();
        for (row, actual, expected, what) in [
            (1, &row1, &spelled_x, "row 1 is not the x-words"),
            (2, &row2, &spelled_y, "row 2 is not the y-words"),
            (2, &row2, &row1, "rows 1 and 2 differ"),
        ] {
            let diff = differences(actual, expected);
            if !diff.is_empty() {
                fails.push((what.to_string(), diff.into_iter().map(|t| at(row, t + 1)).collect()));
            }
        }
    } else {
        fails.push(("fewer than two rows".to_string(), vec![at(m, 0)]));
    }
    b.record(CheckName::WordRows, fails);

    // index streams
    let mut fails = Vec::new();
    let expected_top_pairs: Vec<Option<(usize, usize)>> = top_indices
        .iter()
        .flat_map(|&i| (1..=x_len(i)).map(move |pos| Some((i, pos))))
        .collect();
    let diff = differences(&top_pairs, &expected_top_pairs);
    if !diff.is_empty() {
        fails.push((
            "states under row 1 do not walk through whole x-words".to_string(),
            diff.into_iter().map(|t| at(1, t + 1)).collect(),
        ));
    }
    if m >= 2 {
        let want_top = expand(&top_indices, x_len);
        let want_bottom = expand(&bottom_indices, y_len);
        let expected: Vec<Option<(usize, usize)>> = (0..want_top.len().max(want_bottom.len()))
            .map(|t| Some((*want_top.get(t)?, *want_bottom.get(t)?)))
            .collect();
        let diff = differences(&row2_stream, &expected);
        if !diff.is_empty() {
            fails.push((
                "states under row 2 do not repeat the word indices".to_string(),
                diff.into_iter().map(|t| at(2, t + 1)).collect(),
            ));
        }
    }
    b.record(CheckName::IndexStreams, fails);

    // marker rows
    let mut fails = Vec::new();
    let marker = Letter::new(MARKER).expect("marker");
    for i in 0..m {
        let bad: Vec<Position> = (0..q)
            .filter(|&j| {
                let kd = kind(i, j);
                match i {
                    0 => kd != RuleKind::TopWord,
                    1 => kd != RuleKind::BottomWord,
                    _ => {
                        sc.grid.get(i, j) != &marker
                            || matches!(kd, RuleKind::TopWord | RuleKind::BottomWord)
                    }
                }
            })
            .map(|j| at(i + 1, j + 1))
            .collect();
        if !bad.is_empty() {
            fails.push((format!("row {} read by the wrong rules", i + 1), bad));
        }
    }
    b.record(CheckName::MarkerRows, fails);

    // pair reduction
    let mut fails = Vec::new();
    let r = bottom_indices.len();
    if k != r {
        fails.push((format!("{k} x-words but {r} y-words"), vec![at(2, 0)]));
    }
    let mut y_start = 0;
    for (pos, (&i, &j)) in top_indices.iter().zip(&bottom_indices).enumerate() {
        if i != j {
            fails.push((format!("pair {} uses x_{i} over y_{j}", pos + 1), vec![at(2, y_start + 1)]));
        }
        y_start += y_len(j);
    }
    for step in 0..=k {
        let row = step + 1;
        if row >= m {
            fails.push((format!("row {} is missing", step + 2), vec![at(step + 2, 0)]));
            break;
        }
        let done = step.min(r);
        let alpha: usize = top_indices[..step].iter().map(|&i| x_len(i)).sum();
        let beta: usize = bottom_indices[..done].iter().map(|&i| y_len(i)).sum();
        let mut want_top = vec![0; alpha];
        want_top.extend(expand(&top_indices[step..], x_len));
        let mut want_bottom = vec![0; beta];
        want_bottom.extend(expand(&bottom_indices[done..], y_len));
        let expected: Vec<Option<(usize, usize)>> = (0..want_top.len().max(want_bottom.len()))
            .map(|t| Some((*want_top.get(t)?, *want_bottom.get(t)?)))
            .collect();
        let diff = differences(&stream_under(row), &expected);
        if !diff.is_empty() {
            fails.push((
                format!("streams under row {} are not reduced by {step} pairs", step + 2),
                diff.into_iter().map(|t| at(step + 2, t + 1)).collect(),
            ));
        }
    }
    b.record(CheckName::PairReduction, fails);

    // idle tail
    let bad: Vec<Position> = (k + 2..m)
        .flat_map(|i| (0..q).map(move |j| (i, j)))
        .filter(|&(i, j)| kind(i, j) != RuleKind::Idle)
        .map(|(i, j)| at(i + 1, j + 1))
        .collect();
    let fails = if bad.is_empty() {
        Vec::new()
    } else {
        vec![("rows after the last pair do more than idle".to_string(), bad)]
    };
    b.record(CheckName::IdleTail, fails);

    // east border
    let mut expected: Vec<String> = vec!["A".into(), "A".into()];
    expected.extend(top_indices.iter().map(|i| format!("M({i},0,0)")));
    while expected.len() < m {
        expected.push("A".into());
    }
    let east_border: Vec<String> = sc.east.iter().map(|c| c.as_str().to_string()).collect();
    let diff = differences(&east_border, &expected);
    let fails = if diff.is_empty() {
        Vec::new()
    } else {
        vec![(
            format!("expected {}", expected.join(" ")),
            diff.into_iter().map(|i| at(i + 1, q + 1)).collect(),
        )]
    };
    b.record(CheckName::EastBorder, fails);

    let passed = b.checks.iter().all(|c| c.passed);
    Ok(StructuralReport {
        rows: m,
        cols: q,
        top_indices,
        bottom_indices,
        top_stream,
        bottom_stream,
        east_border,
        checks: b.checks,
        passed,
    })
}
