//! Function-table files.
//!
//! Plain text holds one decimal per line; `#` starts a comment and blank lines
//! are skipped. A file whose name ends in `.json`, or whose first
//! non-whitespace character is `[`, is read as a JSON array of numbers.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub fn read_table(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || text.trim_start().starts_with('[');
    if is_json {
        parse_json_table(&text)
    } else {
        parse_text_table(&text)
    }
}

pub fn parse_json_table(text: &str) -> Result<Vec<f64>> {
    serde_json::from_str(text)
        .map_err(|e| Error::validation(format!("expected a JSON array of numbers: {e}")))
}

pub fn parse_text_table(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v: f64 = content.parse().map_err(|_| Error::Validation {
            message: format!("line {}: '{content}' is not a number", lineno + 1),
            indices: vec![out.len() + 1],
        })?;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_with_comments() {
        let t = "# samples\n0.25\n\n0.5 # second\n  1\n";
        assert_eq!(parse_text_table(t).unwrap(), vec![0.25, 0.5, 1.0]);
    }

    #[test]
    fn text_with_garbage() {
        match parse_text_table("0.1\nabc\n") {
            Err(Error::Validation { message, .. }) => assert!(message.contains("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_array() {
        assert_eq!(parse_json_table("[0.1, 0.9, 0.3]").unwrap(), vec![0.1, 0.9, 0.3]);
        assert!(parse_json_table("{\"a\": 1}").is_err());
    }
}
