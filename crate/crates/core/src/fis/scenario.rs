use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ClassName, Fis, StateName, Transition};
use crate::grid::Grid;

/// An accepting run: the transition used at every cell plus the four border
/// sequences (`north`/`south` indexed by column, `west`/`east` by row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub grid: Grid,
    /// Row-major, one per grid cell.
    pub cells: Vec<Transition>,
    pub north: Vec<StateName>,
    pub west: Vec<ClassName>,
    pub south: Vec<StateName>,
    pub east: Vec<ClassName>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ScenarioDefect {
    #[error("scenario dimensions do not match its grid")]
    Shape,
    #[error("cell ({row},{col}) uses {transition}, which is not a transition of the system")]
    NotATransition {
        row: usize,
        col: usize,
        transition: Box<Transition>,
    },
    #[error("cell ({row},{col}) reads a letter different from the grid")]
    Letter { row: usize, col: usize },
    #[error("cell ({row},{col}) does not agree with its northern neighbour or border")]
    North { row: usize, col: usize },
    #[error("cell ({row},{col}) does not agree with its western neighbour or border")]
    West { row: usize, col: usize },
    #[error("southern border at column {col} disagrees with the last row")]
    South { col: usize },
    #[error("eastern border at row {row} disagrees with the last column")]
    East { row: usize },
    #[error("north border state at column {col} is not initial")]
    NotInitialState { col: usize },
    #[error("west border class at row {row} is not initial")]
    NotInitialClass { row: usize },
    #[error("south border state at column {col} is not final")]
    NotFinalState { col: usize },
    #[error("east border class at row {row} is not final")]
    NotFinalClass { row: usize },
}

impl Scenario {
    /// Derives the borders from row-major cell transitions.
    pub fn from_cells(grid: Grid, cells: Vec<Transition>) -> Self {
        let (m, q) = (grid.rows(), grid.cols());
        assert_eq!(cells.len(), m * q, "one transition per cell");
        let at = |i: usize, j: usize| &cells[i * q + j];
        let north = (0..q).map(|j| at(0, j).north.clone()).collect();
        let south = (0..q).map(|j| at(m - 1, j).south.clone()).collect();
        let west = (0..m).map(|i| at(i, 0).west.clone()).collect();
        let east = (0..m).map(|i| at(i, q - 1).east.clone()).collect();
        Scenario {
            grid,
            cells,
            north,
            west,
            south,
            east,
        }
    }

    pub fn rows(&self) -> usize {
        self.grid.rows()
    }

    pub fn cols(&self) -> usize {
        self.grid.cols()
    }

    /// Zero-based.
    pub fn cell(&self, row: usize, col: usize) -> &Transition {
        &self.cells[row * self.grid.cols() + col]
    }

    /// Replays the scenario against `f`, independently of how it was found.
    pub fn check(&self, f: &Fis) -> Result<(), ScenarioDefect> {
        let (m, q) = (self.rows(), self.cols());
        if self.cells.len() != m * q
            || self.north.len() != q
            || self.south.len() != q
            || self.west.len() != m
            || self.east.len() != m
        {
            return Err(ScenarioDefect::Shape);
        }
        let declared: HashSet<&Transition> = f.transitions.iter().collect();
        for i in 0..m {
            for j in 0..q {
                let t = self.cell(i, j);
                if !declared.contains(t) {
                    return Err(ScenarioDefect::NotATransition {
                        row: i,
                        col: j,
                        transition: Box::new(t.clone()),
                    });
                }
                if &t.letter != self.grid.get(i, j) {
                    return Err(ScenarioDefect::Letter { row: i, col: j });
                }
                let above = if i == 0 {
                    &self.north[j]
                } else {
                    &self.cell(i - 1, j).south
                };
                if &t.north != above {
                    return Err(ScenarioDefect::North { row: i, col: j });
                }
                let left = if j == 0 {
                    &self.west[i]
                } else {
                    &self.cell(i, j - 1).east
                };
                if &t.west != left {
                    return Err(ScenarioDefect::West { row: i, col: j });
                }
            }
        }
        for j in 0..q {
            if self.south[j] != self.cell(m - 1, j).south {
                return Err(ScenarioDefect::South { col: j });
            }
        }
        for i in 0..m {
            if self.east[i] != self.cell(i, q - 1).east {
                return Err(ScenarioDefect::East { row: i });
            }
        }
        if let Some(col) = self.north.iter().position(|s| !f.initial_states.contains(s)) {
            return Err(ScenarioDefect::NotInitialState { col });
        }
        if let Some(row) = self.west.iter().position(|c| !f.initial_classes.contains(c)) {
            return Err(ScenarioDefect::NotInitialClass { row });
        }
        if let Some(col) = self.south.iter().position(|s| !f.final_states.contains(s)) {
            return Err(ScenarioDefect::NotFinalState { col });
        }
        if let Some(row) = self.east.iter().position(|c| !f.final_classes.contains(c)) {
            return Err(ScenarioDefect::NotFinalClass { row });
        }
        Ok(())
    }

    /// ASCII drawing with state rows and class/letter rows interleaved:
    ///
    /// ```text
    ///  1 1 1
    /// AaBbBbB
    ///  2 1 1
    /// ```
    pub fn render(&self) -> String {
        let (m, q) = (self.rows(), self.cols());
        // state rows: 0 is the north border, r + 1 is the south of row r
        let state = |r: usize, j: usize| -> &str {
            if r == 0 {
                self.north[j].as_str()
            } else {
                self.cell(r - 1, j).south.as_str()
            }
        };
        // class slots: 0 is the west border, k is the east of column k - 1
        let class = |i: usize, k: usize| -> &str {
            if k == 0 {
                self.west[i].as_str()
            } else {
                self.cell(i, k - 1).east.as_str()
            }
        };
        let width = |s: &str| s.chars().count();
        let col_w: Vec<usize> = (0..q)
            .map(|j| {
                let letters = (0..m).map(|i| width(self.grid.get(i, j).as_str()));
                let states = (0..=m).map(|r| width(state(r, j)));
                letters.chain(states).max().unwrap_or(1)
            })
            .collect();
        let slot_w: Vec<usize> = (0..=q)
            .map(|k| (0..m).map(|i| width(class(i, k))).max().unwrap_or(1))
            .collect();

        let mut lines = Vec::with_capacity(2 * m + 1);
        for r in 0..=m {
            let mut line = String::new();
            for j in 0..q {
                line.push_str(&" ".repeat(slot_w[j]));
                line.push_str(&format!("{:<w$}", state(r, j), w = col_w[j]));
            }
            lines.push(line.trim_end().to_string());
            if r < m {
                let mut line = format!("{:<w$}", class(r, 0), w = slot_w[0]);
                for j in 0..q {
                    line.push_str(&format!("{:<w$}", self.grid.get(r, j).as_str(), w = col_w[j]));
                    line.push_str(&format!("{:<w$}", class(r, j + 1), w = slot_w[j + 1]));
                }
                lines.push(line.trim_end().to_string());
            }
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fis::{recognize, tests::f1};

    fn diag() -> Grid {
        Grid::parse_rows(&["a b b", "c a b", "c c a"]).unwrap()
    }

    #[test]
    fn renders_like_the_figure() {
        let sc = recognize(&f1(), &diag()).unwrap().unwrap();
        assert_eq!(
            sc.render(),
            " 1 1 1\nAaBbBbB\n 2 1 1\nAcAaBbB\n 2 2 1\nAcAcAaB\n 2 2 2\n"
        );
    }

    #[test]
    fn replay_catches_tampering() {
        let f = f1();
        let sc = recognize(&f, &diag()).unwrap().unwrap();
        assert_eq!(sc.check(&f), Ok(()));

        let mut bad = sc.clone();
        bad.north[0] = StateName::new("2").unwrap();
        assert_eq!(bad.check(&f), Err(ScenarioDefect::North { row: 0, col: 0 }));

        let mut bad = sc.clone();
        bad.cells.swap(0, 1);
        assert!(matches!(bad.check(&f), Err(ScenarioDefect::Letter { .. })));

        let mut wrong_letter = sc;
        wrong_letter.grid = Grid::parse_rows(&["a b b", "c a b", "c c b"]).unwrap();
        assert_eq!(
            wrong_letter.check(&f),
            Err(ScenarioDefect::Letter { row: 2, col: 2 })
        );
    }
}
