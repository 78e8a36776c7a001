//! Plain-text family files.
//!
//! ```text
//! m=5 k=3 kind=multiset
//! # comment lines and blank lines are ignored
//! 1 1 2
//! 1 2 5
//! ```
//!
//! Multiset members are written non-decreasing, set members strictly
//! increasing. For set families `m` is the ground size `n`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{Family, Kind};
use crate::multiset::Multiset;

pub fn parse_family(text: &str) -> Result<Family> {
    let mut header: Option<(usize, usize, Kind)> = None;
    let mut members: Vec<Multiset> = Vec::new();
    let mut seen = std::collections::HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((m, k, kind)) = header else {
            header = Some(parse_header(line, line_no)?);
            continue;
        };

        let mut elements = Vec::with_capacity(k);
        for tok in line.split_whitespace() {
            let e: usize = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("'{tok}' is not a positive integer")))?;
            if e == 0 || e > m {
                return Err(Error::parse(line_no, format!("element {e} outside [1, {m}]")));
            }
            elements.push(e);
        }
        if elements.len() != k {
            return Err(Error::parse(
                line_no,
                format!("expected {k} elements, found {}", elements.len()),
            ));
        }
        for w in elements.windows(2) {
            let ok = match kind {
                Kind::Multiset => w[0] <= w[1],
                Kind::Set => w[0] < w[1],
            };
            if !ok {
                let order = match kind {
                    Kind::Multiset => "non-decreasing",
                    Kind::Set => "strictly increasing",
                };
                return Err(Error::parse(line_no, format!("elements must be {order}")));
            }
        }
        let member = Multiset::from_elements(m, &elements).map_err(|e| Error::parse(line_no, e.to_string()))?;
        if let Some(first) = seen.insert(member.clone(), line_no) {
            return Err(Error::parse(
                line_no,
                format!("duplicate member {member} (first seen on line {first})"),
            ));
        }
        members.push(member);
    }

    let (m, k, kind) = header.ok_or_else(|| Error::parse(1, "missing header 'm=<int> k=<int> kind=<set|multiset>'"))?;
    Family::new(m, k, kind, members)
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize, Kind)> {
    let mut m = None;
    let mut k = None;
    let mut kind = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, format!("malformed header field '{tok}'")))?;
        match key {
            "m" => m = Some(parse_positive(value, "m", line_no)?),
            "k" => k = Some(parse_positive(value, "k", line_no)?),
            "kind" => {
                kind = Some(match value {
                    "set" => Kind::Set,
                    "multiset" => Kind::Multiset,
                    other => return Err(Error::parse(line_no, format!("unknown kind '{other}'"))),
                })
            }
            other => return Err(Error::parse(line_no, format!("unknown header field '{other}'"))),
        }
    }
    match (m, k, kind) {
        (Some(m), Some(k), Some(kind)) => {
            if kind == Kind::Set && k > m {
                return Err(Error::parse(line_no, format!("k={k} exceeds n={m} for a set family")));
            }
            Ok((m, k, kind))
        }
        _ => Err(Error::parse(
            line_no,
            "header must contain m=<int> k=<int> kind=<set|multiset>",
        )),
    }
}

fn parse_positive(value: &str, name: &str, line_no: usize) -> Result<usize> {
    match value.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::parse(
            line_no,
            format!("{name} must be a positive integer, got '{value}'"),
        )),
    }
}

/// Canonical text for a family: header, then members in family order.
pub fn emit_family(family: &Family) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "m={} k={} kind={}",
        family.ground_size(),
        family.k(),
        family.kind()
    );
    for a in family.members() {
        let line: Vec<String> = a.elements().iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
