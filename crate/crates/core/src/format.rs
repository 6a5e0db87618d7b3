//! Text formats for implicational bases, set families, relations and CNFs.
//!
//! All formats are line based. `#` starts a comment running to the end of the
//! line, blank lines are ignored and tokens are separated by whitespace.
//!
//! ```text
//! # implicational base
//! ground: 1 2 3 4
//! 1 2 -> 3 4        # expands to 1 2 -> 3 and 1 2 -> 4
//!
//! # set family; `{}` alone on a line is the empty set
//! ground: 1 2 3
//! 1 3
//! {}
//!
//! # positive 3-CNF
//! vars: x y z w
//! x y z
//! x y w
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gadgets::PositiveCnf;
use crate::model::{Implication, ImplicationalBase, Relation, SetFamily};
use crate::set::{ElementSet, GroundSet, DEFAULT_MAX_GROUND, EMPTY_SET_TOKEN};

const GROUND_KEY: &str = "ground:";
const VARS_KEY: &str = "vars:";
const ARROW: &str = "->";

/// Knobs shared by the parsers.
#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_ground: usize,
    pub allow_empty_premise: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_ground: DEFAULT_MAX_GROUND, allow_empty_premise: false }
    }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

/// Reads the `key: labels…` header and returns the groundset plus remaining lines.
fn header<'a>(
    text: &'a str,
    key: &str,
    options: &ParseOptions,
) -> Result<(GroundSet, Vec<(usize, &'a str)>)> {
    let mut lines = content_lines(text);
    let (line_no, first) = lines.next().ok_or_else(|| syntax(0, format!("missing `{key}` line")))?;
    let labels = first
        .strip_prefix(key)
        .ok_or_else(|| syntax(line_no, format!("expected `{key}` line first")))?;
    let ground = GroundSet::with_limit(labels.split_whitespace(), options.max_ground)?;
    let rest: Vec<_> = lines.collect();
    if let Some(&(line, _)) = rest.iter().find(|(_, l)| l.starts_with(key)) {
        return Err(Error::DuplicateGround { line });
    }
    Ok((ground, rest))
}

fn resolve(ground: &GroundSet, line: usize, tokens: &str) -> Result<ElementSet> {
    tokens
        .split_whitespace()
        .map(|tok| {
            ground
                .index_of(tok)
                .ok_or_else(|| Error::UnknownElement { line, label: tok.to_string() })
        })
        .collect()
}

pub fn parse_ib(text: &str) -> Result<ImplicationalBase> {
    parse_ib_with(text, &ParseOptions::default())
}

/// Parses an implicational base. Multi-conclusion lines are expanded into
/// unit implications; tautologies and repeats are dropped.
pub fn parse_ib_with(text: &str, options: &ParseOptions) -> Result<ImplicationalBase> {
    let (ground, lines) = header(text, GROUND_KEY, options)?;
    let mut implications = Vec::new();
    for (line, content) in lines {
        let (lhs, rhs) = content
            .split_once(ARROW)
            .ok_or_else(|| syntax(line, "missing `->`"))?;
        if rhs.contains(ARROW) {
            return Err(syntax(line, "more than one `->`"));
        }
        let premise = resolve(&ground, line, lhs)?;
        let conclusions = resolve(&ground, line, rhs)?;
        if conclusions.is_empty() {
            return Err(syntax(line, "missing conclusion"));
        }
        if premise.is_empty() && !options.allow_empty_premise {
            return Err(Error::EmptyPremise { line });
        }
        implications.extend(conclusions.iter().filter_map(|c| Implication::new(premise, c)));
    }
    ImplicationalBase::new(ground, implications)
}

pub fn parse_set_family(text: &str) -> Result<SetFamily> {
    parse_set_family_with(text, &ParseOptions::default())
}

/// Parses a set family; a line repeating an earlier set is an error.
pub fn parse_set_family_with(text: &str, options: &ParseOptions) -> Result<SetFamily> {
    let (ground, lines) = header(text, GROUND_KEY, options)?;
    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    for (line, content) in lines {
        if content.contains(ARROW) {
            return Err(syntax(line, "unexpected `->` in set family"));
        }
        let set = if content == EMPTY_SET_TOKEN { ElementSet::empty() } else { resolve(&ground, line, content)? };
        if !seen.insert(set) {
            return Err(Error::DuplicateSet { line });
        }
        sets.push(set);
    }
    SetFamily::new(ground, sets)
}

pub fn parse_cnf(text: &str) -> Result<PositiveCnf> {
    parse_cnf_with(text, &ParseOptions::default())
}

/// Parses a positive 3-CNF: a `vars:` line, then one clause of three
/// distinct variables per line.
pub fn parse_cnf_with(text: &str, options: &ParseOptions) -> Result<PositiveCnf> {
    let (vars, lines) = header(text, VARS_KEY, options)?;
    let mut clauses = Vec::new();
    for (line, content) in lines {
        let clause = resolve(&vars, line, content)?;
        if content.split_whitespace().count() != 3 || clause.len() != 3 {
            return Err(syntax(line, "a clause needs exactly three distinct variables"));
        }
        clauses.push(clause);
    }
    PositiveCnf::new(vars, clauses)
}

fn ground_line(out: &mut String, key: &str, ground: &GroundSet) {
    out.push_str(key);
    for label in ground.labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
}

/// Canonical text: ground line, then binary implications, then the rest.
pub fn serialize_ib(ib: &ImplicationalBase) -> String {
    let mut out = String::new();
    ground_line(&mut out, GROUND_KEY, ib.ground());
    for imp in ib.canonicalize().iter() {
        out.push_str(&imp.display(ib.ground()));
        out.push('\n');
    }
    out
}

/// Canonical text: ground line, then sets by cardinality and lexicographic order.
pub fn serialize_set_family(family: &SetFamily) -> String {
    let mut out = String::new();
    ground_line(&mut out, GROUND_KEY, family.ground());
    for set in family.canonicalize().iter() {
        if set.is_empty() {
            out.push_str(EMPTY_SET_TOKEN);
        } else {
            out.push_str(&family.ground().format_set(set));
        }
        out.push('\n');
    }
    out
}

/// One `c -> a` line per arc, sorted by element index.
pub fn serialize_relation(relation: &Relation) -> String {
    let ground = relation.ground();
    relation.arcs().iter().fold(String::new(), |mut out, &(c, a)| {
        let _ = writeln!(out, "{} -> {}", ground.label(c), ground.label(a));
        out
    })
}

pub fn serialize_cnf(cnf: &PositiveCnf) -> String {
    let mut out = String::new();
    ground_line(&mut out, VARS_KEY, cnf.vars());
    for clause in cnf.clauses() {
        out.push_str(&cnf.vars().format_set(clause));
        out.push('\n');
    }
    out
}
