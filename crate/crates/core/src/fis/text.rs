use std::fmt::Write;

use super::{ClassName, Fis, StateName, Transition};
use crate::grid::Letter;
use crate::text::{key_lines, ParseError};

/// Parses the `key: values` FIS format. Keys may repeat; their values are
/// appended. The result is not validated.
pub fn parse_fis(text: &str) -> Result<Fis, ParseError> {
    let mut fis = Fis::default();
    for line in key_lines(text, true) {
        let line = line?;
        let n = line.line;
        let err = |e: &dyn std::fmt::Display| ParseError::new(n, e.to_string());
        match line.key {
            "alphabet" => {
                for v in &line.values {
                    fis.alphabet.push(Letter::new(*v).map_err(|e| err(&e))?);
                }
            }
            "states" | "initial_states" | "final_states" => {
                let target = match line.key {
                    "states" => &mut fis.states,
                    "initial_states" => &mut fis.initial_states,
                    _ => &mut fis.final_states,
                };
                for v in &line.values {
                    target.push(StateName::new(*v).map_err(|e| err(&e))?);
                }
            }
            "classes" | "initial_classes" | "final_classes" => {
                let target = match line.key {
                    "classes" => &mut fis.classes,
                    "initial_classes" => &mut fis.initial_classes,
                    _ => &mut fis.final_classes,
                };
                for v in &line.values {
                    target.push(ClassName::new(*v).map_err(|e| err(&e))?);
                }
            }
            "trans" => {
                let t = Transition::parse(&line.values.join(" ")).map_err(|e| err(&e))?;
                fis.transitions.push(t);
            }
            other => return Err(ParseError::new(n, format!("unknown key {other:?}"))),
        }
    }
    Ok(fis)
}

/// Writes `f` in the format read by [`parse_fis`].
pub fn write_fis(f: &Fis) -> String {
    fn line<T: std::fmt::Display>(out: &mut String, key: &str, items: &[T]) {
        let _ = write!(out, "{key}:");
        for item in items {
            let _ = write!(out, " {item}");
        }
        out.push('\n');
    }
    let mut out = String::new();
    line(&mut out, "alphabet", &f.alphabet);
    line(&mut out, "states", &f.states);
    line(&mut out, "classes", &f.classes);
    line(&mut out, "initial_states", &f.initial_states);
    line(&mut out, "initial_classes", &f.initial_classes);
    line(&mut out, "final_states", &f.final_states);
    line(&mut out, "final_classes", &f.final_classes);
    for t in &f.transitions {
        let _ = writeln!(
            out,
            "trans: {} {} {} {} {}",
            t.north, t.west, t.letter, t.east, t.south
        );
    }
    out
}
