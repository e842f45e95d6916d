//! Shared helpers for the line-oriented `key: values` file formats.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// A non-comment, non-blank line split at its first `:`.
pub(crate) struct KeyLine<'a> {
    pub line: usize,
    pub key: &'a str,
    pub values: Vec<&'a str>,
}

/// Iterates over `key: values` lines. Lines whose first non-blank character is
/// `#` are comments. With `trailing_comments`, a standalone `#` token ends the
/// values of a line; formats that use `#` as data turn this off.
pub(crate) fn key_lines(
    text: &str,
    trailing_comments: bool,
) -> impl Iterator<Item = Result<KeyLine<'_>, ParseError>> {
    text.lines().enumerate().filter_map(move |(idx, raw)| {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let Some((key, rest)) = trimmed.split_once(':') else {
            return Some(Err(ParseError::new(line, format!("expected `key: values`, got {trimmed:?}"))));
        };
        let mut values = Vec::new();
        for tok in rest.split_whitespace() {
            if trailing_comments && tok == "#" {
                break;
            }
            values.push(tok);
        }
        Some(Ok(KeyLine {
            line,
            key: key.trim(),
            values,
        }))
    })
}
