//! Rectangular two-dimensional words.
//!
//! A [`Grid`] is an `m × q` array of [`Letter`]s with `m, q ≥ 1`. Letters are
//! arbitrary whitespace-free tokens, so enriched alphabets (transition tuples,
//! the reduction marker `$`) share one representation. The token `#` is
//! reserved for the frame added by [`border`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::ParseError;

/// Token used for the frame of a bordered grid.
pub const BORDER: &str = "#";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("invalid letter {0:?}: letters are nonempty, whitespace-free and not \"#\"")]
    InvalidLetter(String),
    #[error("grids must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertical composition needs equal widths ({top} vs {bottom})")]
    ColumnMismatch { top: usize, bottom: usize },
    #[error("horizontal composition needs equal heights ({left} vs {right})")]
    RowMismatch { left: usize, right: usize },
    #[error("iteration count must be at least 1")]
    ZeroIteration,
    #[error("window {r}x{s} does not fit in a {rows}x{cols} grid")]
    WindowTooLarge {
        r: usize,
        s: usize,
        rows: usize,
        cols: usize,
    },
}

/// A single grid symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Letter(String);

impl Letter {
    pub fn new(token: impl Into<String>) -> Result<Self, GridError> {
        let token = token.into();
        if is_valid_token(&token) && token != BORDER {
            Ok(Letter(token))
        } else {
            Err(GridError::InvalidLetter(token))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_token(token: &str) -> bool {
    !token.is_empty() && !token.chars().any(char::is_whitespace)
}

impl FromStr for Letter {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::new(s)
    }
}

impl TryFrom<String> for Letter {
    type Error = GridError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Letter::new(value)
    }
}

impl From<Letter> for String {
    fn from(value: Letter) -> Self {
        value.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Row-major rectangular array of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<Letter>,
}

impl Grid {
    pub fn from_rows(rows: Vec<Vec<Letter>>) -> Result<Self, GridError> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || width == 0 {
            return Err(GridError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(GridError::Ragged {
                    row: i,
                    expected: width,
                    found: row.len(),
                });
            }
        }
        let height = rows.len();
        Ok(Grid {
            rows: height,
            cols: width,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<Letter>) -> Result<Self, GridError> {
        if rows == 0 || cols == 0 {
            return Err(GridError::Empty);
        }
        if cells.len() != rows * cols {
            return Err(GridError::Ragged {
                row: cells.len() / cols,
                expected: cols,
                found: cells.len() % cols,
            });
        }
        Ok(Grid { rows, cols, cells })
    }

    /// Convenience constructor for tests and literals: `Grid::parse_rows(&["a b", "c d"])`.
    pub fn parse_rows(rows: &[&str]) -> Result<Self, GridError> {
        let rows = rows
            .iter()
            .map(|line| line.split_whitespace().map(Letter::new).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Grid::from_rows(rows)
    }

    /// A grid with every cell set to `letter`.
    pub fn filled(rows: usize, cols: usize, letter: Letter) -> Result<Self, GridError> {
        Grid::from_cells(rows, cols, vec![letter; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    /// Zero-based access.
    pub fn get(&self, row: usize, col: usize) -> &Letter {
        &self.cells[row * self.cols + col]
    }

    pub fn cells(&self) -> &[Letter] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[Letter] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Letter]> {
        self.cells.chunks(self.cols)
    }

    /// Writes the grid in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.row_iter() {
            let line: Vec<&str> = row.iter().map(Letter::as_str).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Stacks `top` above `bottom`.
pub fn v_compose(top: &Grid, bottom: &Grid) -> Result<Grid, GridError> {
    if top.cols != bottom.cols {
        return Err(GridError::ColumnMismatch {
            top: top.cols,
            bottom: bottom.cols,
        });
    }
    let mut cells = top.cells.clone();
    cells.extend_from_slice(&bottom.cells);
    Ok(Grid {
        rows: top.rows + bottom.rows,
        cols: top.cols,
        cells,
    })
}

/// Places `right` to the right of `left`.
pub fn h_compose(left: &Grid, right: &Grid) -> Result<Grid, GridError> {
    if left.rows != right.rows {
        return Err(GridError::RowMismatch {
            left: left.rows,
            right: right.rows,
        });
    }
    let mut cells = Vec::with_capacity(left.cells.len() + right.cells.len());
    for (l, r) in left.row_iter().zip(right.row_iter()) {
        cells.extend_from_slice(l);
        cells.extend_from_slice(r);
    }
    Ok(Grid {
        rows: left.rows,
        cols: left.cols + right.cols,
        cells,
    })
}

pub fn v_iterate(g: &Grid, k: usize) -> Result<Grid, GridError> {
    if k == 0 {
        return Err(GridError::ZeroIteration);
    }
    let mut cells = Vec::with_capacity(g.cells.len() * k);
    for _ in 0..k {
        cells.extend_from_slice(&g.cells);
    }
    Ok(Grid {
        rows: g.rows * k,
        cols: g.cols,
        cells,
    })
}

pub fn h_iterate(g: &Grid, k: usize) -> Result<Grid, GridError> {
    if k == 0 {
        return Err(GridError::ZeroIteration);
    }
    let mut cells = Vec::with_capacity(g.cells.len() * k);
    for row in g.row_iter() {
        for _ in 0..k {
            cells.extend_from_slice(row);
        }
    }
    Ok(Grid {
        rows: g.rows,
        cols: g.cols * k,
        cells,
    })
}

/// A cell of a bordered grid or a tile: either the frame symbol or a letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Border,
    Letter(Letter),
}

impl Cell {
    pub fn is_border(&self) -> bool {
        matches!(self, Cell::Border)
    }

    pub fn letter(&self) -> Option<&Letter> {
        match self {
            Cell::Border => None,
            Cell::Letter(l) => Some(l),
        }
    }

    pub fn parse(token: &str) -> Result<Self, GridError> {
        if token == BORDER {
            Ok(Cell::Border)
        } else {
            Letter::new(token).map(Cell::Letter)
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Border => f.write_str(BORDER),
            Cell::Letter(l) => l.fmt(f),
        }
    }
}

/// A grid surrounded by a one-cell frame of `#`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderedGrid {
    inner: Grid,
    cells: Vec<Cell>,
}

impl BorderedGrid {
    pub fn inner(&self) -> &Grid {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.rows + 2
    }

    pub fn cols(&self) -> usize {
        self.inner.cols + 2
    }

    pub fn get(&self, row: usize, col: usize) -> &Cell {
        &self.cells[row * self.cols() + col]
    }
}

pub fn border(g: &Grid) -> BorderedGrid {
    let rows = g.rows + 2;
    let cols = g.cols + 2;
    let mut cells = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            if i == 0 || j == 0 || i == rows - 1 || j == cols - 1 {
                cells.push(Cell::Border);
            } else {
                cells.push(Cell::Letter(g.get(i - 1, j - 1).clone()));
            }
        }
    }
    BorderedGrid {
        inner: g.clone(),
        cells,
    }
}

/// An `r × s` window of a bordered grid, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Cell>,
}

/// All contiguous `r × s` windows of `bg` in row-major order of their
/// top-left corner. Duplicates are kept; collect into a set for membership.
pub fn subgrids(bg: &BorderedGrid, r: usize, s: usize) -> Result<Vec<Window>, GridError> {
    if r == 0 || s == 0 || r > bg.rows() || s > bg.cols() {
        return Err(GridError::WindowTooLarge {
            r,
            s,
            rows: bg.rows(),
            cols: bg.cols(),
        });
    }
    let mut out = Vec::with_capacity((bg.rows() - r + 1) * (bg.cols() - s + 1));
    for top in 0..=bg.rows() - r {
        for left in 0..=bg.cols() - s {
            let mut cells = Vec::with_capacity(r * s);
            for i in top..top + r {
                for j in left..left + s {
                    cells.push(bg.get(i, j).clone());
                }
            }
            out.push(Window {
                rows: r,
                cols: s,
                cells,
            });
        }
    }
    Ok(out)
}

/// Reads one grid from the text format: one row per line, cells separated by
/// single spaces, terminated by a blank line or end of input. A row made of a
/// single token is split into characters. Leading blank lines are skipped.
pub fn parse_grid(text: &str) -> Result<Grid, ParseError> {
    let mut grids = parse_grids(text)?;
    if grids.is_empty() {
        return Err(ParseError::new(1, "no grid found"));
    }
    Ok(grids.swap_remove(0))
}

/// Reads every blank-line-separated grid in `text`.
pub fn parse_grids(text: &str) -> Result<Vec<Grid>, ParseError> {
    let mut grids = Vec::new();
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    let mut start_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            if !rows.is_empty() {
                grids.push(finish_grid(std::mem::take(&mut rows), start_line)?);
            }
            continue;
        }
        if rows.is_empty() {
            start_line = lineno;
        }
        rows.push(parse_row(trimmed).map_err(|e| ParseError::new(lineno, e.to_string()))?);
    }
    if !rows.is_empty() {
        grids.push(finish_grid(rows, start_line)?);
    }
    Ok(grids)
}

fn parse_row(line: &str) -> Result<Vec<Letter>, GridError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() == 1 {
        tokens[0]
            .chars()
            .map(|c| Letter::new(c.to_string()))
            .collect()
    } else {
        tokens.into_iter().map(Letter::new).collect()
    }
}

fn finish_grid(rows: Vec<Vec<Letter>>, line: usize) -> Result<Grid, ParseError> {
    Grid::from_rows(rows).map_err(|e| ParseError::new(line, e.to_string()))
}
