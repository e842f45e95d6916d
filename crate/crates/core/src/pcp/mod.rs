//! Post correspondence instances and their reduction to FISs.

mod reduction;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::Letter;
use crate::text::ParseError;

pub use reduction::{
    build_s, build_s1, corner_transition, reduction_rules, s1_reduction_rules, s1_witness,
    witness_from_solution, RuleKind, MARKER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcpError {
    #[error("an instance needs at least one pair")]
    NoPairs,
    #[error("the two lists have different lengths ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("word {index} of list {list} is empty")]
    EmptyWord { list: char, index: usize },
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(Letter),
    #[error("{0:?} is not a valid letter")]
    InvalidLetter(String),
    #[error("letter {0} is declared twice")]
    DuplicateLetter(Letter),
    #[error("the marker {MARKER:?} is reserved and cannot be part of the alphabet")]
    ReservedSymbolCollision,
    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("an index list must be nonempty")]
    EmptyIndices,
    #[error("indices {0:?} do not form a solution")]
    InvalidSolution(Vec<usize>),
}

pub type Word = Vec<Letter>;

/// Two equally long lists of nonempty words over an alphabet that does not
/// contain the marker `$`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpInstance {
    alphabet: Vec<Letter>,
    x: Vec<Word>,
    y: Vec<Word>,
}

impl PcpInstance {
    pub fn new(alphabet: Vec<Letter>, x: Vec<Word>, y: Vec<Word>) -> Result<Self, PcpError> {
        if x.len() != y.len() {
            return Err(PcpError::LengthMismatch {
                x: x.len(),
                y: y.len(),
            });
        }
        if x.is_empty() {
            return Err(PcpError::NoPairs);
        }
        let mut seen = HashSet::new();
        for l in &alphabet {
            if l.as_str() == MARKER {
                return Err(PcpError::ReservedSymbolCollision);
            }
            if !seen.insert(l) {
                return Err(PcpError::DuplicateLetter(l.clone()));
            }
        }
        for (list, words) in [('x', &x), ('y', &y)] {
            for (i, w) in words.iter().enumerate() {
                if w.is_empty() {
                    return Err(PcpError::EmptyWord { list, index: i + 1 });
                }
                if let Some(l) = w.iter().find(|l| !seen.contains(l)) {
                    return Err(PcpError::UnknownLetter(l.clone()));
                }
            }
        }
        Ok(PcpInstance { alphabet, x, y })
    }

    /// Builds an instance from words whose letters are single characters,
    /// inferring the alphabet in order of first appearance.
    pub fn from_words(x: &[&str], y: &[&str]) -> Result<Self, PcpError> {
        let split = |w: &str| -> Result<Word, PcpError> {
            w.chars()
                .map(|c| Letter::new(c.to_string()).map_err(|_| PcpError::InvalidLetter(c.to_string())))
                .collect()
        };
        let xs = x.iter().map(|w| split(w)).collect::<Result<Vec<_>, _>>()?;
        let ys = y.iter().map(|w| split(w)).collect::<Result<Vec<_>, _>>()?;
        let alphabet = infer_alphabet(xs.iter().zip(&ys).flat_map(|(a, b)| a.iter().chain(b)));
        PcpInstance::new(alphabet, xs, ys)
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `x_i`, one-based.
    pub fn x(&self, i: usize) -> &[Letter] {
        &self.x[i - 1]
    }

    /// `y_i`, one-based.
    pub fn y(&self, i: usize) -> &[Letter] {
        &self.y[i - 1]
    }

    pub fn top(&self, indices: &[usize]) -> Result<Word, PcpError> {
        self.concat(&self.x, indices)
    }

    pub fn bottom(&self, indices: &[usize]) -> Result<Word, PcpError> {
        self.concat(&self.y, indices)
    }

    fn concat(&self, words: &[Word], indices: &[usize]) -> Result<Word, PcpError> {
        let mut out = Vec::new();
        for &i in indices {
            if i == 0 || i > self.len() {
                return Err(PcpError::IndexOutOfRange {
                    index: i,
                    n: self.len(),
                });
            }
            out.extend_from_slice(&words[i - 1]);
        }
        Ok(out)
    }
}

fn infer_alphabet<'a>(letters: impl Iterator<Item = &'a Letter>) -> Vec<Letter> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for l in letters {
        if seen.insert(l) {
            out.push(l.clone());
        }
    }
    out
}

/// A nonempty index list (one-based) whose two concatenations agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpSolution {
    indices: Vec<usize>,
}

impl PcpSolution {
    pub fn new(p: &PcpInstance, indices: Vec<usize>) -> Result<Self, PcpError> {
        if check_solution(p, &indices)? {
            Ok(PcpSolution { indices })
        } else {
            Err(PcpError::InvalidSolution(indices))
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The solution followed by itself, which is again a solution.
    pub fn doubled(&self) -> PcpSolution {
        PcpSolution {
            indices: self.indices.repeat(2),
        }
    }
}

impl fmt::Display for PcpSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// True iff `x_{i_1}…x_{i_k}` and `y_{i_1}…y_{i_k}` are equal.
pub fn check_solution(p: &PcpInstance, indices: &[usize]) -> Result<bool, PcpError> {
    if indices.is_empty() {
        return Err(PcpError::EmptyIndices);
    }
    Ok(p.top(indices)? == p.bottom(indices)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Ahead {
    Top,
    Bottom,
}

/// Breadth-first search for the shortest solution with at most `max_k`
/// indices; among equally short ones the lexicographically least.
///
/// Only sequences whose concatenations are prefix-comparable are kept, and a
/// sequence is dropped when an earlier one (shorter, or equally long and
/// lexicographically smaller) left the same unmatched overhang.
pub fn solve_pcp(p: &PcpInstance, max_k: usize) -> Option<PcpSolution> {
    let mut level: Vec<(Vec<usize>, Ahead, Word)> = vec![(Vec::new(), Ahead::Top, Vec::new())];
    let mut seen: HashSet<(Ahead, Word)> = HashSet::new();
    for _ in 0..max_k {
        let mut next = Vec::new();
        for (seq, ahead, overhang) in &level {
            for i in 1..=p.len() {
                let (mut top, mut bottom) = match ahead {
                    Ahead::Top => (overhang.clone(), Vec::new()),
                    Ahead::Bottom => (Vec::new(), overhang.clone()),
                };
                top.extend_from_slice(p.x(i));
                bottom.extend_from_slice(p.y(i));
                let shared = top.len().min(bottom.len());
                if top[..shared] != bottom[..shared] {
                    continue;
                }
                let mut indices = seq.clone();
                indices.push(i);
                if top.len() == bottom.len() {
                    return Some(PcpSolution { indices });
                }
                let state = if top.len() > bottom.len() {
                    (Ahead::Top, top[shared..].to_vec())
                } else {
                    (Ahead::Bottom, bottom[shared..].to_vec())
                };
                if seen.insert(state.clone()) {
                    next.push((indices, state.0, state.1));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        level = next;
    }
    None
}

/// Reads the PCP text format: an optional `alphabet: ...` line followed by one
/// `x_i y_i` pair per line. Words are split into single-character letters.
/// Lines starting with `#` are comments.
pub fn parse_pcp(text: &str) -> Result<PcpInstance, ParseError> {
    let mut alphabet: Option<Vec<Letter>> = None;
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("alphabet:") {
            if alphabet.is_some() || !x.is_empty() {
                return Err(ParseError::new(line, "alphabet must come first and only once"));
            }
            let letters = rest
                .split_whitespace()
                .map(Letter::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ParseError::new(line, e.to_string()))?;
            alphabet = Some(letters);
            continue;
        }
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        let [top, bottom] = words.as_slice() else {
            return Err(ParseError::new(line, "expected a pair `x_i y_i`"));
        };
        let split = |w: &str| -> Result<Word, ParseError> {
            w.chars()
                .map(|c| Letter::new(c.to_string()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ParseError::new(line, e.to_string()))
        };
        x.push(split(top)?);
        y.push(split(bottom)?);
    }
    let alphabet = alphabet
        .unwrap_or_else(|| infer_alphabet(x.iter().zip(&y).flat_map(|(a, b)| a.iter().chain(b))));
    PcpInstance::new(alphabet, x, y).map_err(|e| ParseError::new(last_line, e.to_string()))
}

pub fn write_pcp(p: &PcpInstance) -> String {
    let join = |w: &[Letter]| w.iter().map(Letter::as_str).collect::<String>();
    let mut out = String::from("alphabet:");
    for l in &p.alphabet {
        out.push(' ');
        out.push_str(l.as_str());
    }
    out.push('\n');
    for (a, b) in p.x.iter().zip(&p.y) {
        out.push_str(&format!("{} {}\n", join(a), join(b)));
    }
    out
}
