//! The `.ucf` text format: one set per line, elements as strictly ascending
//! space-separated positive integers, `-` for the empty set, `#` comments and
//! blank lines ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{ElementSet, MAX_ELEMENT};

pub fn parse(text: &str) -> Result<SetFamily> {
    let mut first_seen: HashMap<ElementSet, usize> = HashMap::new();
    let mut sets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let set = parse_set(trimmed).map_err(|message| Error::Parse { line, message })?;
        if let Some(prev) = first_seen.insert(set, line) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate set {set} (first on line {prev})"),
            });
        }
        sets.push(set);
    }
    SetFamily::new(sets)
}

fn parse_set(line: &str) -> std::result::Result<ElementSet, String> {
    if line == "-" {
        return Ok(ElementSet::EMPTY);
    }
    let mut bits = 0u64;
    let mut prev = 0u64;
    for tok in line.split_whitespace() {
        let e: u64 = tok
            .parse()
            .map_err(|_| format!("expected a positive integer or '-', found {tok:?}"))?;
        if e == 0 || e > u64::from(MAX_ELEMENT) {
            return Err(format!("element {e} is out of range 1..={MAX_ELEMENT}"));
        }
        if e <= prev {
            return Err(format!("elements must be strictly ascending ({e} after {prev})"));
        }
        prev = e;
        bits |= 1 << (e - 1);
    }
    Ok(ElementSet::from_bits_unchecked(bits))
}

/// One set in `.ucf` syntax, without a newline.
pub fn format_set(set: ElementSet) -> String {
    if set.is_empty() {
        return "-".to_owned();
    }
    let mut out = String::new();
    for (i, e) in set.elements().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{e}").unwrap();
    }
    out
}

/// Members in ascending mask order, each line terminated by `\n`.
pub fn write(family: &SetFamily) -> String {
    let mut out = String::with_capacity(family.len() * 8);
    for &s in family {
        out.push_str(&format_set(s));
        out.push('\n');
    }
    out
}
