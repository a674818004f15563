//! Plain-text group files.
//!
//! ```text
//! # dihedral group of order 8
//! degree 4
//! gen (1,2,3,4)
//! gen (1,3)
//! ```
//!
//! Points are 1-based on disk and 0-based in memory.

use std::fmt::Write as _;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Degree and generators read from a group file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    pub fn build(self) -> Result<Arc<PermGroup>> {
        PermGroup::from_generators(self.degree, self.generators)
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let line_no = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((line, ""));
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(parse_err(line_no, "duplicate degree line"));
                }
                let d = rest
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, "degree must be a non-negative integer"))?;
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| parse_err(line_no, "gen before degree"))?;
                let cycles = parse_cycles(rest).map_err(|m| parse_err(line_no, &m))?;
                generators.push(Permutation::from_cycles(d, &cycles)?);
            }
            other => return Err(parse_err(line_no, &format!("unknown keyword `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| parse_err(1, "missing degree line"))?;
    Ok(GroupSpec { degree, generators })
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

/// Parses `(1,2,3)(4,5)` into 0-based cycles. `()` is the identity.
fn parse_cycles(s: &str) -> std::result::Result<Vec<Vec<u32>>, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    if rest.is_empty() {
        return Err("empty generator".into());
    }
    while !rest.is_empty() {
        let body_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| format!("malformed cycle notation `{s}`"))?;
        let body = &rest[1..body_end + 1];
        rest = &rest[body_end + 2..];
        if body.is_empty() {
            continue;
        }
        let mut cycle = Vec::new();
        for tok in body.split(',') {
            let x: u32 = tok.parse().map_err(|_| format!("bad point `{tok}`"))?;
            if x == 0 {
                return Err("points are 1-based".into());
            }
            cycle.push(x - 1);
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Serializes a group's degree and generators in the group-file format.
pub fn write_group_file(group: &PermGroup, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "degree {}", group.degree());
    if group.generators().is_empty() {
        out.push_str("gen ()\n");
    }
    for g in group.generators() {
        let _ = writeln!(out, "gen {g}");
    }
    out
}

/// Hex SHA-256 over the degree and the sorted, deduplicated generator images.
pub fn content_hash(group: &PermGroup) -> String {
    let mut gens: Vec<&Permutation> = group.generators().iter().collect();
    gens.sort();
    gens.dedup();
    let mut h = Sha256::new();
    h.update(format!("degree {}\n", group.degree()).as_bytes());
    for g in gens {
        for x in g.images() {
            h.update(x.to_le_bytes());
        }
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# d8\n\ndegree 4\ngen (1,2,3,4)\ngen (1, 3)\n";
        let spec = parse_group_file(text).unwrap();
        assert_eq!(spec.degree, 4);
        let g = spec.clone().build().unwrap();
        assert_eq!(g.order(), 8);
        let again = parse_group_file(&write_group_file(&g, Some("d8"))).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn identity_generator() {
        let g = parse_group_file("degree 3\ngen ()\n")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(g.order(), 1);
        assert!(write_group_file(&g, None).contains("gen ()"));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_group_file("gen (1,2)\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_group_file("degree 3\ngen (1,4)\n").is_err());
        assert!(parse_group_file("degree 3\ngen (1,2\n").is_err());
        assert!(parse_group_file("degree 3\ngen (0,1)\n").is_err());
        assert!(parse_group_file("degree 3\nfoo\n").is_err());
        assert!(parse_group_file("").is_err());
    }

    #[test]
    fn hash_ignores_generator_order() {
        let a = parse_group_file("degree 4\ngen (1,2,3,4)\ngen (1,3)\n")
            .unwrap()
            .build()
            .unwrap();
        let b = parse_group_file("degree 4\ngen (1,3)\ngen (1,2,3,4)\n")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(content_hash(&a), content_hash(&b));
    }
}
