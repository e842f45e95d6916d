use std::fmt::Write;

use super::{LocalLanguage, Tile, TileSystem};
use crate::grid::{Cell, Letter};
use crate::text::{key_lines, ParseError};

fn parse_tile(n: usize, values: &[&str]) -> Result<Tile, ParseError> {
    let [a, b, "/", c, d] = values else {
        return Err(ParseError::new(n, "expected `tile: p q / r s`"));
    };
    let cell = |tok: &str| Cell::parse(tok).map_err(|e| ParseError::new(n, e.to_string()));
    Ok(Tile::new(cell(a)?, cell(b)?, cell(c)?, cell(d)?))
}

/// Reads the tile-system format:
///
/// ```text
/// alphabet: a1 a2
/// target: a
/// map: a1 a
/// map: a2 a
/// tile: # # / # a1
/// ```
///
/// `#` is data here, so only whole-line comments are recognised.
pub fn parse_tiles(text: &str) -> Result<TileSystem, ParseError> {
    let mut alphabet = Vec::new();
    let mut target = Vec::new();
    let mut map = Vec::new();
    let mut delta = Vec::new();
    let mut last_line = 1;
    for line in key_lines(text, false) {
        let line = line?;
        let n = line.line;
        last_line = n;
        let letter = |tok: &str| Letter::new(tok).map_err(|e| ParseError::new(n, e.to_string()));
        match line.key {
            "alphabet" => {
                for v in &line.values {
                    alphabet.push(letter(v)?);
                }
            }
            "target" => {
                for v in &line.values {
                    target.push(letter(v)?);
                }
            }
            "map" => {
                let [from, to] = line.values[..] else {
                    return Err(ParseError::new(n, "expected `map: local target`"));
                };
                map.push((letter(from)?, letter(to)?));
            }
            "tile" => delta.push(parse_tile(n, &line.values)?),
            other => return Err(ParseError::new(n, format!("unknown key {other:?}"))),
        }
    }
    let err = |e: super::TileError| ParseError::new(last_line, e.to_string());
    let local = LocalLanguage::new(alphabet, delta).map_err(err)?;
    TileSystem::new(local, target, map).map_err(err)
}

/// Writes `ts` in the format read by [`parse_tiles`].
pub fn write_tiles(ts: &TileSystem) -> String {
    let mut out = String::new();
    let join = |ls: &[Letter]| ls.iter().map(Letter::as_str).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "alphabet: {}", join(&ts.local.alphabet));
    let _ = writeln!(out, "target: {}", join(&ts.target));
    for (from, to) in &ts.map {
        let _ = writeln!(out, "map: {from} {to}");
    }
    for t in &ts.local.delta {
        let _ = writeln!(out, "tile: {t}");
    }
    out
}
