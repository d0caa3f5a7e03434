//! Line-oriented model files.
//!
//! ```text
//! # Fixture A
//! universe: 1 2 3
//! state: 1 : 0.2
//! state: 2 3 : 0.5
//! state: 1 2 3 : 0.3
//! ```
//!
//! `universe:` comes first and lists the labels. Each `state:` line names a
//! member of the family and optionally its mass after a second colon; states
//! without a mass get 0. `{}` (or nothing) is the empty state. Labels may be
//! separated by spaces or commas and wrapped in braces.
//!
//! An optional `partition:` line, blocks separated by `|`, declares the family
//! to be the algebra generated by that partition. States must then be members
//! of the algebra, and members not listed get mass 0.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use filterfn::{
    build_algebra_from_partition, build_mass, validate_family, MassFunction, NeighbourhoodFamily,
    SubsetMask, Universe,
};

use crate::error::{CliError, ParseReason, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub universe: Universe,
    pub family: Arc<NeighbourhoodFamily>,
    pub mass: MassFunction,
    /// Blocks as declared, if the family came from a partition.
    pub partition: Option<Vec<SubsetMask>>,
}

fn err(line: usize, reason: ParseReason) -> CliError {
    CliError::Parse { line, reason }
}

fn model_err(line: usize, e: filterfn::Error) -> CliError {
    err(line, ParseReason::Model(e))
}

fn split_labels(text: &str) -> Vec<&str> {
    let t = text.trim();
    let t = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(t);
    t.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect()
}

fn resolve(u: &Universe, line: usize, text: &str) -> Result<SubsetMask> {
    let mut s = SubsetMask::EMPTY;
    for l in split_labels(text) {
        let i = u
            .index_of(l)
            .ok_or_else(|| err(line, ParseReason::UnknownLabel(l.to_string())))?;
        s = s.union(SubsetMask::singleton(i));
    }
    Ok(s)
}

pub fn parse_model_file(text: &str) -> Result<Model> {
    let mut universe: Option<(usize, Universe)> = None;
    let mut partition: Option<(usize, Vec<SubsetMask>)> = None;
    let mut states: Vec<(usize, SubsetMask, f64)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| CliError::syntax(line, "expected `key: value`"))?;
        match key.trim() {
            "universe" => {
                if universe.is_some() {
                    return Err(CliError::syntax(line, "second `universe` line"));
                }
                let labels = split_labels(rest);
                let u = Universe::new(&labels).map_err(|e| model_err(line, e))?;
                universe = Some((line, u));
            }
            "partition" => {
                let u = match &universe {
                    Some((_, u)) => u,
                    None => return Err(CliError::syntax(line, "`partition` before `universe`")),
                };
                if partition.is_some() {
                    return Err(CliError::syntax(line, "second `partition` line"));
                }
                let blocks = rest
                    .split('|')
                    .map(|b| resolve(u, line, b))
                    .collect::<Result<Vec<_>>>()?;
                partition = Some((line, blocks));
            }
            "state" => {
                let u = match &universe {
                    Some((_, u)) => u,
                    None => return Err(CliError::syntax(line, "`state` before `universe`")),
                };
                let (labels, mass) = match rest.split_once(':') {
                    Some((l, m)) => {
                        let m = m.trim();
                        let v = m
                            .parse::<f64>()
                            .ok()
                            .filter(|v| v.is_finite())
                            .ok_or_else(|| err(line, ParseReason::BadMass(m.to_string())))?;
                        (l, v)
                    }
                    None => (rest, 0.0),
                };
                let s = resolve(u, line, labels)?;
                if states.iter().any(|&(_, t, _)| t == s) {
                    return Err(CliError::syntax(
                        line,
                        format!("state {} listed twice", u.render(s)),
                    ));
                }
                states.push((line, s, mass));
            }
            other => return Err(CliError::syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let last_line = text.lines().count().max(1);
    let (_, universe) =
        universe.ok_or_else(|| CliError::syntax(last_line, "missing `universe` line"))?;
    if states.is_empty() {
        return Err(model_err(last_line, filterfn::Error::EmptyFamily));
    }

    let family = match &partition {
        Some((line, blocks)) => {
            build_algebra_from_partition(&universe, blocks).map_err(|e| model_err(*line, e))?
        }
        None => {
            let members: Vec<SubsetMask> = states.iter().map(|&(_, s, _)| s).collect();
            validate_family(&universe, &members).map_err(|e| model_err(states[0].0, e))?
        }
    };
    let family = Arc::new(family);

    let lines: HashMap<SubsetMask, usize> = states.iter().map(|&(l, s, _)| (s, l)).collect();
    let assignments: Vec<(SubsetMask, f64)> = states.iter().map(|&(_, s, v)| (s, v)).collect();
    let mass = build_mass(family.clone(), &assignments).map_err(|e| {
        let line = match &e {
            filterfn::Error::NegativeMass { subset, .. } => lines.get(subset).copied(),
            _ => None,
        };
        let line = line.or_else(|| {
            // out-of-family states
            states
                .iter()
                .find(|&&(_, s, _)| !family.contains(s))
                .map(|&(l, _, _)| l)
        });
        model_err(line.unwrap_or(states[states.len() - 1].0), e)
    })?;

    Ok(Model {
        universe,
        family,
        mass,
        partition: partition.map(|(_, b)| b),
    })
}

fn labels_of(u: &Universe, s: SubsetMask) -> String {
    if s.is_empty() {
        return "{}".into();
    }
    s.iter().map(|i| u.label(i)).collect::<Vec<_>>().join(" ")
}

/// Writes a model back in the file format. Masses use the shortest decimal
/// that reads back to the same `f64`.
pub fn render_model(model: &Model) -> String {
    let u = &model.universe;
    let mut out = String::new();
    writeln!(out, "universe: {}", u.labels().join(" ")).unwrap();
    if let Some(blocks) = &model.partition {
        let parts: Vec<String> = blocks.iter().map(|&b| labels_of(u, b)).collect();
        writeln!(out, "partition: {}", parts.join(" | ")).unwrap();
    }
    for (s, v) in model.mass.iter() {
        writeln!(out, "state: {} : {v:?}", labels_of(u, s)).unwrap();
    }
    out
}

pub fn read_model(path: &std::path::Path) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_model_file(&text)
}
