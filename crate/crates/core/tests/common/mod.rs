//! Independent oracles and generators shared by the integration tests. None of
//! this reuses the engine's search code.

#![allow(dead_code)]

use fis_core::fis::{canonical_sizes, parse_fis, ClassName, Fis, StateName, Transition};
use fis_core::grid::{Cell, Grid, Letter};
use fis_core::tiles::{local_member, LocalLanguage, Tile, TileSystem};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn letter(s: &str) -> Letter {
    Letter::new(s).unwrap()
}

pub fn grid(rows: &[&str]) -> Grid {
    Grid::parse_rows(rows).unwrap()
}

pub fn f1() -> Fis {
    parse_fis(
        "alphabet: a b c\nstates: 1 2\nclasses: A B\n\
         initial_states: 1\ninitial_classes: A\nfinal_states: 2\nfinal_classes: B\n\
         trans: 1 A a B 2\ntrans: 1 B b B 1\ntrans: 2 A c A 2\n",
    )
    .unwrap()
}

/// Number of accepting runs of `f` on `w`, found by plain backtracking over
/// transitions cell by cell. `limit` stops the count early.
pub fn count_runs(f: &Fis, w: &Grid, limit: usize) -> usize {
    let (m, q) = (w.rows(), w.cols());
    let mut chosen: Vec<&Transition> = Vec::with_capacity(m * q);
    fn go<'a>(
        f: &'a Fis,
        w: &Grid,
        chosen: &mut Vec<&'a Transition>,
        limit: usize,
        found: &mut usize,
    ) {
        if *found >= limit {
            return;
        }
        let (m, q) = (w.rows(), w.cols());
        let cell = chosen.len();
        if cell == m * q {
            let south_ok = (0..q).all(|j| f.final_states.contains(&chosen[(m - 1) * q + j].south));
            let east_ok = (0..m).all(|i| f.final_classes.contains(&chosen[i * q + q - 1].east));
            if south_ok && east_ok {
                *found += 1;
            }
            return;
        }
        let (i, j) = (cell / q, cell % q);
        for t in &f.transitions {
            if &t.letter != w.get(i, j) {
                continue;
            }
            let north_ok = if i == 0 {
                f.initial_states.contains(&t.north)
            } else {
                chosen[cell - q].south == t.north
            };
            let west_ok = if j == 0 {
                f.initial_classes.contains(&t.west)
            } else {
                chosen[cell - 1].east == t.west
            };
            if north_ok && west_ok {
                chosen.push(t);
                go(f, w, chosen, limit, found);
                chosen.pop();
            }
        }
    }
    let mut found = 0;
    go(f, w, &mut chosen, limit, &mut found);
    found
}

pub fn brute_accepts(f: &Fis, w: &Grid) -> bool {
    count_runs(f, w, 1) == 1
}

/// Every `rows × cols` grid over `alphabet`, row-major lexicographic by
/// alphabet position.
pub fn all_grids(alphabet: &[Letter], rows: usize, cols: usize) -> Vec<Grid> {
    let n = rows * cols;
    let base = alphabet.len();
    if base == 0 {
        return Vec::new();
    }
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut digits = vec![0; n];
            for d in digits.iter_mut().rev() {
                *d = code % base;
                code /= base;
            }
            let cells = digits.into_iter().map(|d| alphabet[d].clone()).collect();
            Grid::from_cells(rows, cols, cells).unwrap()
        })
        .collect()
}

/// Every grid up to the bounds, in canonical order.
pub fn all_grids_upto(alphabet: &[Letter], max_rows: usize, max_cols: usize) -> Vec<Grid> {
    canonical_sizes(max_rows, max_cols)
        .into_iter()
        .flat_map(|(r, c)| all_grids(alphabet, r, c))
        .collect()
}

pub fn brute_language(f: &Fis, max_rows: usize, max_cols: usize) -> Vec<Grid> {
    all_grids_upto(&f.alphabet, max_rows, max_cols)
        .into_iter()
        .filter(|w| brute_accepts(f, w))
        .collect()
}

/// Tile-system membership by trying every cellwise preimage.
pub fn naive_ts_recognize(ts: &TileSystem, w: &Grid) -> bool {
    let choices: Vec<Vec<Letter>> = w
        .cells()
        .iter()
        .map(|l| ts.preimage(l).into_iter().cloned().collect())
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return false;
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let cells = pick.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        let pre = Grid::from_cells(w.rows(), w.cols(), cells).unwrap();
        if local_member(&ts.local, &pre).unwrap() {
            return true;
        }
        // odometer
        let mut d = pick.len();
        loop {
            if d == 0 {
                return false;
            }
            d -= 1;
            pick[d] += 1;
            if pick[d] < choices[d].len() {
                break;
            }
            pick[d] = 0;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random subset, nonempty nine times out of ten.
fn subset<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> Vec<T> {
    let mut out: Vec<T> = items.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    if out.is_empty() && rng.gen_bool(0.9) {
        out.push(items.choose(rng).unwrap().clone());
    }
    out
}

/// At most 3 states, 3 classes, 3 letters and 8 transitions.
pub fn random_fis(rng: &mut ChaCha8Rng) -> Fis {
    let states: Vec<StateName> = (1..=rng.gen_range(1..=3))
        .map(|i| StateName::new(i.to_string()).unwrap())
        .collect();
    let classes: Vec<ClassName> = ["A", "B", "C"][..rng.gen_range(1..=3)]
        .iter()
        .map(|c| ClassName::new(*c).unwrap())
        .collect();
    let alphabet: Vec<Letter> = ["a", "b", "c"][..rng.gen_range(1..=3)]
        .iter()
        .map(|l| letter(l))
        .collect();
    let mut transitions: Vec<Transition> = Vec::new();
    for _ in 0..rng.gen_range(0..=8) {
        let t = Transition::new(
            states.choose(rng).unwrap().clone(),
            classes.choose(rng).unwrap().clone(),
            alphabet.choose(rng).unwrap().clone(),
            classes.choose(rng).unwrap().clone(),
            states.choose(rng).unwrap().clone(),
        );
        if !transitions.contains(&t) {
            transitions.push(t);
        }
    }
    Fis {
        initial_states: subset(rng, &states),
        initial_classes: subset(rng, &classes),
        final_states: subset(rng, &states),
        final_classes: subset(rng, &classes),
        alphabet,
        states,
        classes,
        transitions,
    }
}

/// One initial state, one initial class, and at most one transition per
/// (north, west, letter).
pub fn random_deterministic_fis(rng: &mut ChaCha8Rng) -> Fis {
    let mut f = random_fis(rng);
    let mut seen = std::collections::HashSet::new();
    f.transitions
        .retain(|t| seen.insert((t.north.clone(), t.west.clone(), t.letter.clone())));
    f.initial_states = vec![f.states[0].clone()];
    f.initial_classes = vec![f.classes[0].clone()];
    f
}

fn windows(w: &Grid) -> Vec<Tile> {
    fis_core::grid::subgrids(&fis_core::grid::border(w), 2, 2)
        .unwrap()
        .into_iter()
        .map(|win| {
            let [a, b, c, d]: [Cell; 4] = win.cells.try_into().unwrap();
            Tile::new(a, b, c, d)
        })
        .collect()
}

/// At most 4 local letters, 2 target letters and 20 tiles. Part of the tile
/// set comes from windows of random grids so the language is rarely empty.
pub fn random_tile_system(rng: &mut ChaCha8Rng) -> TileSystem {
    let local: Vec<Letter> = (1..=rng.gen_range(1..=4)).map(|i| letter(&format!("v{i}"))).collect();
    let target: Vec<Letter> = ["a", "b"][..rng.gen_range(1..=2)].iter().map(|l| letter(l)).collect();
    let map: Vec<(Letter, Letter)> = local
        .iter()
        .map(|l| (l.clone(), target.choose(rng).unwrap().clone()))
        .collect();
    let mut delta: Vec<Tile> = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let (r, c) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let cells = (0..r * c).map(|_| local.choose(rng).unwrap().clone()).collect();
        let g = Grid::from_cells(r, c, cells).unwrap();
        for t in windows(&g) {
            if !delta.contains(&t) {
                delta.push(t);
            }
        }
    }
    let mut pool: Vec<Cell> = local.iter().cloned().map(Cell::Letter).collect();
    pool.push(Cell::Border);
    for _ in 0..rng.gen_range(0..=8) {
        let mut pick = || pool.choose(rng).unwrap().clone();
        let t = Tile::new(pick(), pick(), pick(), pick());
        if !delta.contains(&t) {
            delta.push(t);
        }
    }
    delta.shuffle(rng);
    delta.truncate(20);
    let ll = LocalLanguage::new(local, delta).unwrap();
    TileSystem::new(ll, target, map).unwrap()
}
