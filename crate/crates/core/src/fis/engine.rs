//! Row-major frontier propagation.
//!
//! Cells are parsed left to right, top to bottom. After cell `(i, j)` the
//! frontier records, per column, the south state already emitted by row `i`
//! (columns `..=j`) or the north state still pending from row `i - 1`
//! (columns `j+1..`), together with the east class of `(i, j)`. On row 1 the
//! pending north states are [`OPEN`]: the cell draws one from the initial
//! states when it is parsed, and column 1 draws its west class from the initial
//! classes the same way. A row is closed only if its east class is final, and
//! the last cell also requires every south state to be final.
//!
//! Frontier layout: `[col_0, .., col_{q-1}, class, used]`, where `used` is set
//! once a tracked transition has fired.

use std::collections::{BTreeMap, HashMap, HashSet};

use indexmap::IndexSet;

use super::{Fis, FisError, Scenario, Transition};
use crate::grid::{Grid, Letter};

const OPEN: u32 = u32::MAX;

type Frontier = Box<[u32]>;

#[derive(Debug, Clone, Copy)]
struct Packed {
    north: u32,
    west: u32,
    letter: u32,
    east: u32,
    south: u32,
}

/// A validated FIS with dense indices, reusable across many grids.
#[derive(Debug, Clone)]
pub struct CompiledFis {
    fis: Fis,
    letter_ix: HashMap<Letter, u32>,
    trans: Vec<Packed>,
    by_nw: HashMap<(u32, u32), Vec<u32>>,
    initial_states: Vec<u32>,
    initial_classes: Vec<u32>,
    final_state: Vec<bool>,
    final_class: Vec<bool>,
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    rows: usize,
    cols: usize,
}

impl Shape {
    fn cells(self) -> usize {
        self.rows * self.cols
    }
}

/// Every layer of a propagation, with the first-found predecessor of each
/// frontier and, optionally, the full edge relation.
struct Exploration {
    layers: Vec<IndexSet<Frontier>>,
    back: Vec<Vec<(u32, u32)>>,
    /// `edges[c][f]` lists `(letter, successor)` for frontier `f` of layer `c`.
    edges: Vec<Vec<Vec<(u32, u32)>>>,
    complete: bool,
}

impl CompiledFis {
    pub fn new(fis: &Fis) -> Result<Self, FisError> {
        let diagnostics = fis.validate();
        if !diagnostics.is_empty() {
            return Err(FisError::Invalid(diagnostics));
        }
        let index = |names: Vec<String>| -> HashMap<String, u32> {
            names
                .into_iter()
                .enumerate()
                .map(|(i, n)| (n, i as u32))
                .collect()
        };
        let state_ix = index(fis.states.iter().map(|s| s.to_string()).collect());
        let class_ix = index(fis.classes.iter().map(|c| c.to_string()).collect());
        let letter_ix: HashMap<Letter, u32> = fis
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();

        let trans: Vec<Packed> = fis
            .transitions
            .iter()
            .map(|t| Packed {
                north: state_ix[t.north.as_str()],
                west: class_ix[t.west.as_str()],
                letter: letter_ix[&t.letter],
                east: class_ix[t.east.as_str()],
                south: state_ix[t.south.as_str()],
            })
            .collect();
        let mut by_nw: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for (i, t) in trans.iter().enumerate() {
            by_nw.entry((t.north, t.west)).or_default().push(i as u32);
        }
        let mut final_state = vec![false; fis.states.len()];
        for s in &fis.final_states {
            final_state[state_ix[s.as_str()] as usize] = true;
        }
        let mut final_class = vec![false; fis.classes.len()];
        for c in &fis.final_classes {
            final_class[class_ix[c.as_str()] as usize] = true;
        }
        let mut initial_states: Vec<u32> = Vec::new();
        for s in &fis.initial_states {
            let i = state_ix[s.as_str()];
            if !initial_states.contains(&i) {
                initial_states.push(i);
            }
        }
        let mut initial_classes: Vec<u32> = Vec::new();
        for c in &fis.initial_classes {
            let i = class_ix[c.as_str()];
            if !initial_classes.contains(&i) {
                initial_classes.push(i);
            }
        }
        Ok(CompiledFis {
            fis: fis.clone(),
            letter_ix,
            trans,
            by_nw,
            initial_states,
            initial_classes,
            final_state,
            final_class,
        })
    }

    pub fn fis(&self) -> &Fis {
        &self.fis
    }

    fn letters_of(&self, w: &Grid) -> Result<Vec<u32>, FisError> {
        w.cells()
            .iter()
            .map(|l| {
                self.letter_ix
                    .get(l)
                    .copied()
                    .ok_or_else(|| FisError::UnknownLetter(l.clone()))
            })
            .collect()
    }

    fn transition_index(&self, t: &Transition) -> Result<u32, FisError> {
        self.fis
            .transitions
            .iter()
            .position(|x| x == t)
            .map(|i| i as u32)
            .ok_or_else(|| FisError::UnknownTransition(t.clone()))
    }

    fn start(cols: usize) -> Frontier {
        let mut f = vec![OPEN; cols + 2];
        f[cols + 1] = 0;
        f.into_boxed_slice()
    }

    /// Calls `emit(transition, successor)` for every move out of `f` at `cell`.
    fn successors(
        &self,
        shape: Shape,
        cell: usize,
        f: &[u32],
        letter: Option<u32>,
        track: Option<u32>,
        emit: &mut impl FnMut(u32, Frontier),
    ) {
        let cols = shape.cols;
        let j = cell % cols;
        let row_end = j + 1 == cols;
        let last = cell + 1 == shape.cells();
        let norths: &[u32] = if f[j] == OPEN {
            &self.initial_states
        } else {
            std::slice::from_ref(&f[j])
        };
        let wests: &[u32] = if j == 0 {
            &self.initial_classes
        } else {
            std::slice::from_ref(&f[cols])
        };
        for &n in norths {
            for &w in wests {
                let Some(candidates) = self.by_nw.get(&(n, w)) else {
                    continue;
                };
                for &ti in candidates {
                    let t = self.trans[ti as usize];
                    if letter.is_some_and(|a| a != t.letter) {
                        continue;
                    }
                    if row_end && !self.final_class[t.east as usize] {
                        continue;
                    }
                    let mut g: Frontier = f.into();
                    g[j] = t.south;
                    g[cols] = if row_end { OPEN } else { t.east };
                    if track == Some(ti) {
                        g[cols + 1] = 1;
                    }
                    if last {
                        let finals = g[..cols].iter().all(|&s| self.final_state[s as usize]);
                        if !finals || (track.is_some() && g[cols + 1] == 0) {
                            continue;
                        }
                    }
                    emit(ti, g);
                }
            }
        }
    }

    fn explore(
        &self,
        shape: Shape,
        letters: Option<&[u32]>,
        track: Option<u32>,
        record_edges: bool,
    ) -> Exploration {
        let mut layers: Vec<IndexSet<Frontier>> = Vec::with_capacity(shape.cells() + 1);
        layers.push(IndexSet::from([Self::start(shape.cols)]));
        let mut back = Vec::with_capacity(shape.cells());
        let mut edges = Vec::new();
        for cell in 0..shape.cells() {
            let letter = letters.map(|l| l[cell]);
            let current = layers.last().expect("start layer");
            let mut next: IndexSet<Frontier> = IndexSet::new();
            let mut preds: Vec<(u32, u32)> = Vec::new();
            let mut adj: Vec<Vec<(u32, u32)>> = if record_edges {
                vec![Vec::new(); current.len()]
            } else {
                Vec::new()
            };
            for (fi, f) in current.iter().enumerate() {
                self.successors(shape, cell, f, letter, track, &mut |ti, g| {
                    let (k, fresh) = next.insert_full(g);
                    if fresh {
                        preds.push((fi as u32, ti));
                    }
                    if record_edges {
                        adj[fi].push((self.trans[ti as usize].letter, k as u32));
                    }
                });
            }
            let dead = next.is_empty();
            layers.push(next);
            back.push(preds);
            if record_edges {
                edges.push(adj);
            }
            if dead {
                return Exploration {
                    layers,
                    back,
                    edges,
                    complete: false,
                };
            }
        }
        Exploration {
            layers,
            back,
            edges,
            complete: true,
        }
    }

    /// Transition indices along the first-found path to frontier `k` of the final layer.
    fn trace_back(&self, ex: &Exploration, mut k: u32) -> Vec<u32> {
        let mut path = Vec::with_capacity(ex.back.len());
        for preds in ex.back.iter().rev() {
            let (from, ti) = preds[k as usize];
            path.push(ti);
            k = from;
        }
        path.reverse();
        path
    }

    fn scenario(&self, grid: &Grid, path: &[u32]) -> Scenario {
        let cells: Vec<Transition> = path
            .iter()
            .map(|&ti| self.fis.transitions[ti as usize].clone())
            .collect();
        Scenario::from_cells(grid.clone(), cells)
    }

    /// Membership only; keeps a single layer in memory.
    pub fn accepts(&self, w: &Grid) -> Result<bool, FisError> {
        let letters = self.letters_of(w)?;
        let shape = Shape {
            rows: w.rows(),
            cols: w.cols(),
        };
        let mut current: HashSet<Frontier> = HashSet::from([Self::start(shape.cols)]);
        for (cell, &letter) in letters.iter().enumerate() {
            let mut next = HashSet::new();
            for f in &current {
                self.successors(shape, cell, f, Some(letter), None, &mut |_, g| {
                    next.insert(g);
                });
            }
            if next.is_empty() {
                return Ok(false);
            }
            current = next;
        }
        Ok(true)
    }

    pub fn recognize(&self, w: &Grid) -> Result<Option<Scenario>, FisError> {
        self.recognize_tracking(w, None)
    }

    pub fn recognize_with_transition(
        &self,
        w: &Grid,
        t: &Transition,
    ) -> Result<Option<Scenario>, FisError> {
        let ti = self.transition_index(t)?;
        self.recognize_tracking(w, Some(ti))
    }

    fn recognize_tracking(&self, w: &Grid, track: Option<u32>) -> Result<Option<Scenario>, FisError> {
        let letters = self.letters_of(w)?;
        let shape = Shape {
            rows: w.rows(),
            cols: w.cols(),
        };
        let ex = self.explore(shape, Some(&letters), track, false);
        if !ex.complete {
            return Ok(None);
        }
        let path = self.trace_back(&ex, 0);
        Ok(Some(self.scenario(w, &path)))
    }

    /// Every accepted `rows × cols` grid (using `track`, if given), in
    /// row-major lexicographic order of letter indices.
    pub fn accepted_grids(
        &self,
        rows: usize,
        cols: usize,
        track: Option<&Transition>,
    ) -> Result<Vec<Grid>, FisError> {
        self.search(rows, cols, track, false)
    }

    /// The lexicographically least accepted `rows × cols` grid, if any.
    pub fn first_accepted(
        &self,
        rows: usize,
        cols: usize,
        track: Option<&Transition>,
    ) -> Result<Option<Grid>, FisError> {
        Ok(self.search(rows, cols, track, true)?.into_iter().next())
    }

    /// Letter-existential search: letters are chosen inside the propagation,
    /// then a backward pass keeps only frontiers that can still reach
    /// acceptance, so the forward walk never enters a dead branch.
    fn search(
        &self,
        rows: usize,
        cols: usize,
        track: Option<&Transition>,
        first_only: bool,
    ) -> Result<Vec<Grid>, FisError> {
        let track = track.map(|t| self.transition_index(t)).transpose()?;
        if rows == 0 || cols == 0 {
            return Ok(Vec::new());
        }
        let shape = Shape { rows, cols };
        let ex = self.explore(shape, None, track, true);
        if !ex.complete {
            return Ok(Vec::new());
        }
        let live = liveness(&ex);
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(shape.cells());
        self.walk(&ex, &live, shape, 0, vec![0], &mut word, &mut out, first_only);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        ex: &Exploration,
        live: &[Vec<bool>],
        shape: Shape,
        cell: usize,
        current: Vec<u32>,
        word: &mut Vec<u32>,
        out: &mut Vec<Grid>,
        first_only: bool,
    ) -> bool {
        if cell == shape.cells() {
            let letters = word
                .iter()
                .map(|&a| self.fis.alphabet[a as usize].clone())
                .collect();
            out.push(Grid::from_cells(shape.rows, shape.cols, letters).expect("nonempty shape"));
            return true;
        }
        let mut by_letter: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &f in &current {
            for &(a, to) in &ex.edges[cell][f as usize] {
                if live[cell + 1][to as usize] {
                    by_letter.entry(a).or_default().push(to);
                }
            }
        }
        for (a, mut next) in by_letter {
            next.sort_unstable();
            next.dedup();
            word.push(a);
            let found = self.walk(ex, live, shape, cell + 1, next, word, out, first_only);
            word.pop();
            if found && first_only {
                return true;
            }
        }
        !out.is_empty()
    }
}

fn liveness(ex: &Exploration) -> Vec<Vec<bool>> {
    let n = ex.layers.len();
    let mut live: Vec<Vec<bool>> = ex.layers.iter().map(|l| vec![false; l.len()]).collect();
    live[n - 1].iter_mut().for_each(|x| *x = true);
    for c in (0..n - 1).rev() {
        for (f, succ) in ex.edges[c].iter().enumerate() {
            live[c][f] = succ.iter().any(|&(_, to)| live[c + 1][to as usize]);
        }
    }
    live
}
