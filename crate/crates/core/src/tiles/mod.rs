//! Local languages, tile systems, and the conversions between tile systems
//! and FISs in both directions.

mod text;

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::fis::{ClassName, Fis, StateName, Transition};
use crate::grid::{border, subgrids, Cell, Grid, Letter};

pub use text::{parse_tiles, write_tiles};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TileError {
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(Letter),
    #[error("letter {0} is declared twice")]
    DuplicateLetter(Letter),
    #[error("local letter {0} has no image")]
    Unmapped(Letter),
    #[error("local letter {0} is mapped twice")]
    MappedTwice(Letter),
    #[error("map sends {from} to {to}, which is not a target letter")]
    BadImage { from: Letter, to: Letter },
    #[error("tile {0} uses a letter outside the local alphabet")]
    ForeignTile(Tile),
}

/// A 2×2 block `[top_left, top_right, bottom_left, bottom_right]` over the
/// local alphabet and `#`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile(pub [Cell; 4]);

impl Tile {
    pub fn new(top_left: Cell, top_right: Cell, bottom_left: Cell, bottom_right: Cell) -> Self {
        Tile([top_left, top_right, bottom_left, bottom_right])
    }

    pub fn all_border() -> Self {
        Tile::new(Cell::Border, Cell::Border, Cell::Border, Cell::Border)
    }

    pub fn top_left(&self) -> &Cell {
        &self.0[0]
    }

    pub fn top_right(&self) -> &Cell {
        &self.0[1]
    }

    pub fn bottom_left(&self) -> &Cell {
        &self.0[2]
    }

    pub fn bottom_right(&self) -> &Cell {
        &self.0[3]
    }

    pub fn top_is_border(&self) -> bool {
        self.0[0].is_border() && self.0[1].is_border()
    }

    pub fn bottom_is_border(&self) -> bool {
        self.0[2].is_border() && self.0[3].is_border()
    }

    pub fn left_is_border(&self) -> bool {
        self.0[0].is_border() && self.0[2].is_border()
    }

    pub fn right_is_border(&self) -> bool {
        self.0[1].is_border() && self.0[3].is_border()
    }

    /// Compact one-token rendering, used for state and class names.
    fn token(&self) -> String {
        let [a, b, c, d] = &self.0;
        format!("[{a},{b};{c},{d}]")
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "{a} {b} / {c} {d}")
    }
}

/// Grids over `alphabet` whose bordered 2×2 windows all lie in `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalLanguage {
    pub alphabet: Vec<Letter>,
    pub delta: IndexSet<Tile>,
}

impl LocalLanguage {
    pub fn new(alphabet: Vec<Letter>, delta: impl IntoIterator<Item = Tile>) -> Result<Self, TileError> {
        let mut seen = HashSet::new();
        for l in &alphabet {
            if !seen.insert(l) {
                return Err(TileError::DuplicateLetter(l.clone()));
            }
        }
        let delta: IndexSet<Tile> = delta.into_iter().collect();
        for t in &delta {
            if t.0.iter().any(|c| c.letter().is_some_and(|l| !seen.contains(l))) {
                return Err(TileError::ForeignTile(t.clone()));
            }
        }
        Ok(LocalLanguage { alphabet, delta })
    }

    pub fn contains(&self, t: &Tile) -> bool {
        self.delta.contains(t)
    }
}

/// Whether every 2×2 window of the bordered `w` is a tile of `ll`.
pub fn local_member(ll: &LocalLanguage, w: &Grid) -> Result<bool, TileError> {
    if let Some(l) = w.cells().iter().find(|l| !ll.alphabet.contains(l)) {
        return Err(TileError::UnknownLetter(l.clone()));
    }
    let windows = subgrids(&border(w), 2, 2).expect("bordered grids are at least 3×3");
    Ok(windows.into_iter().all(|win| {
        let [a, b, c, d]: [Cell; 4] = win.cells.try_into().expect("2×2 window");
        ll.contains(&Tile::new(a, b, c, d))
    }))
}

/// A local language together with a letter-to-letter map onto `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSystem {
    pub local: LocalLanguage,
    pub target: Vec<Letter>,
    /// Total on the local alphabet, in declaration order.
    pub map: IndexMap<Letter, Letter>,
}

impl TileSystem {
    pub fn new(
        local: LocalLanguage,
        target: Vec<Letter>,
        map: impl IntoIterator<Item = (Letter, Letter)>,
    ) -> Result<Self, TileError> {
        let mut seen = HashSet::new();
        for l in &target {
            if !seen.insert(l) {
                return Err(TileError::DuplicateLetter(l.clone()));
            }
        }
        let mut images = IndexMap::new();
        for (from, to) in map {
            if !local.alphabet.contains(&from) {
                return Err(TileError::UnknownLetter(from));
            }
            if !seen.contains(&to) {
                return Err(TileError::BadImage { from, to });
            }
            if images.insert(from.clone(), to).is_some() {
                return Err(TileError::MappedTwice(from));
            }
        }
        if let Some(l) = local.alphabet.iter().find(|l| !images.contains_key(*l)) {
            return Err(TileError::Unmapped(l.clone()));
        }
        // keep the map in local-alphabet order
        let map = local
            .alphabet
            .iter()
            .map(|l| (l.clone(), images[l].clone()))
            .collect();
        Ok(TileSystem { local, target, map })
    }

    pub fn image(&self, local_letter: &Letter) -> &Letter {
        &self.map[local_letter]
    }

    /// Local letters mapped to `target_letter`, in local-alphabet order.
    pub fn preimage(&self, target_letter: &Letter) -> Vec<&Letter> {
        self.map
            .iter()
            .filter(|(_, to)| *to == target_letter)
            .map(|(from, _)| from)
            .collect()
    }
}

/// Row-major search state: the most recent local letter of every column and
/// the letter diagonally up-left of the next cell.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Profile {
    cols: Vec<Cell>,
    diag: Cell,
}

/// Whether some cellwise preimage of `w` is in the local language.
pub fn ts_recognize(ts: &TileSystem, w: &Grid) -> Result<bool, TileError> {
    let q = w.cols();
    let mut preimages: HashMap<&Letter, Vec<Cell>> = HashMap::new();
    for l in w.cells() {
        if !ts.target.contains(l) {
            return Err(TileError::UnknownLetter(l.clone()));
        }
        preimages
            .entry(l)
            .or_insert_with(|| ts.preimage(l).into_iter().cloned().map(Cell::Letter).collect());
    }
    let has = |a: &Cell, b: &Cell, c: &Cell, d: &Cell| {
        ts.local
            .contains(&Tile::new(a.clone(), b.clone(), c.clone(), d.clone()))
    };
    let hash = Cell::Border;
    let mut frontier: IndexSet<Profile> = IndexSet::from([Profile {
        cols: vec![Cell::Border; q],
        diag: Cell::Border,
    }]);
    for i in 0..w.rows() {
        for j in 0..q {
            let mut next = IndexSet::new();
            for p in &frontier {
                let up = &p.cols[j];
                let left = if j == 0 { &hash } else { &p.cols[j - 1] };
                for v in &preimages[w.get(i, j)] {
                    if has(&p.diag, up, left, v) {
                        let mut cols = p.cols.clone();
                        cols[j] = v.clone();
                        next.insert(Profile {
                            cols,
                            diag: up.clone(),
                        });
                    }
                }
            }
            frontier = next;
        }
        // east edge of this row, then restart the diagonal at the west edge
        frontier = frontier
            .into_iter()
            .filter(|p| has(&p.diag, &hash, &p.cols[q - 1], &hash))
            .map(|p| Profile {
                diag: Cell::Border,
                ..p
            })
            .collect();
    }
    Ok(frontier.iter().any(|p| {
        (0..=q).all(|j| {
            let left = if j == 0 { &hash } else { &p.cols[j - 1] };
            let right = if j == q { &hash } else { &p.cols[j] };
            has(left, right, &hash, &hash)
        })
    }))
}

/// Appends `'` until every name is distinct.
fn distinct_names(raw: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut used = HashSet::new();
    raw.into_iter()
        .map(|mut name| {
            while !used.insert(name.clone()) {
                name.push('\'');
            }
            name
        })
        .collect()
}

/// Tile system whose local letters are the transitions of `f` and whose tiles
/// glue transitions along shared states and classes.
pub fn fis_to_tiles(f: &Fis) -> TileSystem {
    let names = distinct_names(f.transitions.iter().map(Transition::to_string));
    let enriched: Vec<(Letter, &Transition)> = names
        .into_iter()
        .map(|n| Letter::new(n).expect("transition renderings are valid tokens"))
        .zip(&f.transitions)
        .collect();
    let by_letter: HashMap<&Letter, &Transition> = enriched.iter().map(|(l, t)| (l, *t)).collect();
    let of = |c: &Cell| c.letter().map(|l| by_letter[l]);

    // `left` beside `right`, either possibly a border cell
    let horizontal = |left: &Cell, right: &Cell| match (of(left), of(right)) {
        (Some(a), Some(b)) => a.east == b.west,
        (None, Some(b)) => f.initial_classes.contains(&b.west),
        (Some(a), None) => f.final_classes.contains(&a.east),
        (None, None) => true,
    };
    // `top` above `bottom`
    let vertical = |top: &Cell, bottom: &Cell| match (of(top), of(bottom)) {
        (Some(a), Some(b)) => a.south == b.north,
        (None, Some(b)) => f.initial_states.contains(&b.north),
        (Some(a), None) => f.final_states.contains(&a.south),
        (None, None) => true,
    };

    let letters: Vec<Cell> = enriched.iter().map(|(l, _)| Cell::Letter(l.clone())).collect();
    let border_only = vec![Cell::Border];
    // which of the four cells are border, for every arrangement that can
    // occur as a window of a bordered grid
    const SHAPES: [[bool; 4]; 10] = [
        [false, false, false, false],
        [true, true, false, false],
        [false, false, true, true],
        [true, false, true, false],
        [false, true, false, true],
        [true, true, true, false],
        [true, true, false, true],
        [true, false, true, true],
        [false, true, true, true],
        [true, true, true, true],
    ];
    let mut delta = IndexSet::new();
    for shape in SHAPES {
        let pool = |k: usize| if shape[k] { &border_only } else { &letters };
        for a in pool(0) {
            for b in pool(1) {
                if !horizontal(a, b) {
                    continue;
                }
                for c in pool(2) {
                    if !vertical(a, c) {
                        continue;
                    }
                    for d in pool(3) {
                        if horizontal(c, d) && vertical(b, d) {
                            delta.insert(Tile::new(a.clone(), b.clone(), c.clone(), d.clone()));
                        }
                    }
                }
            }
        }
    }
    let alphabet: Vec<Letter> = enriched.iter().map(|(l, _)| l.clone()).collect();
    let map: Vec<(Letter, Letter)> = enriched
        .iter()
        .map(|(l, t)| (l.clone(), t.letter.clone()))
        .collect();
    let local = LocalLanguage { alphabet, delta };
    TileSystem::new(local, f.alphabet.clone(), map).expect("construction is well formed")
}

/// FIS over the target alphabet whose states and classes are the tiles. The
/// state/class at a cell is the window whose bottom-right corner is that
/// cell; the transition reads the image of that corner.
pub fn tiles_to_fis(ts: &TileSystem) -> Fis {
    let delta: Vec<&Tile> = ts.local.delta.iter().collect();
    let names = distinct_names(delta.iter().map(|t| t.token()));
    let state_of: HashMap<&Tile, StateName> = delta
        .iter()
        .zip(&names)
        .map(|(t, n)| (*t, StateName::unchecked(n.clone())))
        .collect();
    let class_of: HashMap<&Tile, ClassName> = delta
        .iter()
        .zip(&names)
        .map(|(t, n)| (*t, ClassName::unchecked(n.clone())))
        .collect();
    let corner = |c: &Cell| Tile::new(c.clone(), Cell::Border, Cell::Border, Cell::Border);

    let mut transitions = Vec::new();
    for &t in &delta {
        let Some(v) = t.bottom_right().letter() else {
            continue;
        };
        let letter = ts.image(v).clone();
        let easts = delta
            .iter()
            .filter(|e| e.top_left() == t.top_right() && e.bottom_left() == t.bottom_right());
        for &e in easts {
            let souths = delta
                .iter()
                .filter(|s| s.top_left() == t.bottom_left() && s.top_right() == t.bottom_right());
            for &s in souths {
                // a cell that closes both the last row and the last column
                // also owns the south-east corner window
                if e.right_is_border() && s.bottom_is_border() && !ts.local.contains(&corner(t.bottom_right())) {
                    continue;
                }
                transitions.push(Transition::new(
                    state_of[t].clone(),
                    class_of[t].clone(),
                    letter.clone(),
                    class_of[e].clone(),
                    state_of[s].clone(),
                ));
            }
        }
    }
    let states = |keep: fn(&Tile) -> bool| -> Vec<StateName> {
        delta.iter().filter(|t| keep(t)).map(|t| state_of[*t].clone()).collect()
    };
    let classes = |keep: fn(&Tile) -> bool| -> Vec<ClassName> {
        delta.iter().filter(|t| keep(t)).map(|t| class_of[*t].clone()).collect()
    };
    Fis {
        alphabet: ts.target.clone(),
        states: states(|_| true),
        classes: classes(|_| true),
        transitions,
        initial_states: states(Tile::top_is_border),
        initial_classes: classes(Tile::left_is_border),
        final_states: states(Tile::bottom_is_border),
        final_classes: classes(Tile::right_is_border),
    }
}
