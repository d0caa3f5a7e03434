use std::fmt;
use std::str::FromStr;

use filterfn::universe::CanonicalSubsets;
use filterfn::{
    approximate, contextual_prob, gamma, sampling_probability, NamedFilter, SubsetMask,
};

use crate::error::{CliError, Result};
use crate::model::Model;

/// A column of the `eval` table. `Mu` expands to two columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Mass(NamedFilter),
    /// Contextual probability of the indifference probability on the algebra.
    ContextualProb,
    Gamma,
    Mu,
}

impl Column {
    pub fn headers(self) -> Vec<String> {
        match self {
            Column::Mu => vec!["mu_lower".into(), "mu_upper".into()],
            other => vec![other.to_string()],
        }
    }

    /// Checks preconditions against the model before anything is printed.
    pub fn validate(self, model: &Model) -> Result<()> {
        let needs_algebra = |name: &str| {
            if model.family.is_algebra() {
                Ok(())
            } else {
                Err(CliError::Config(format!(
                    "`{name}` needs a family closed under union and complement"
                )))
            }
        };
        match self {
            Column::Mass(f) => f
                .validate(&model.family)
                .map_err(|e| CliError::Config(format!("`{f}`: {e}"))),
            Column::ContextualProb => needs_algebra("cp_p"),
            Column::Gamma => needs_algebra("gamma"),
            Column::Mu => needs_algebra("mu"),
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Mass(n) => write!(f, "{n}"),
            Column::ContextualProb => f.write_str("cp_p"),
            Column::Gamma => f.write_str("gamma"),
            Column::Mu => f.write_str("mu"),
        }
    }
}

impl FromStr for Column {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "cp_p" => Column::ContextualProb,
            "gamma" => Column::Gamma,
            "mu" => Column::Mu,
            other => Column::Mass(other.parse().map_err(|e| match e {
                filterfn::Error::Config(msg) => CliError::Config(msg),
                e => CliError::Config(format!("`{other}`: {e}")),
            })?),
        })
    }
}

pub fn parse_columns(list: &str) -> Result<Vec<Column>> {
    let cols = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Column>>>()?;
    if cols.is_empty() {
        return Err(CliError::Config("no filters given".into()));
    }
    Ok(cols)
}

/// Which events get a row. `All` and `Nonempty` both mean every nonempty
/// subset of the universe; the empty event is added on request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EventSelector {
    #[default]
    All,
    Nonempty,
    Singletons,
    /// The members of the family.
    Members,
}

impl FromStr for EventSelector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(EventSelector::All),
            "nonempty" => Ok(EventSelector::Nonempty),
            "singletons" => Ok(EventSelector::Singletons),
            "members" => Ok(EventSelector::Members),
            _ => Err(CliError::Config(format!(
                "unknown event selector `{s}` (all, nonempty, singletons, members)"
            ))),
        }
    }
}

impl EventSelector {
    pub fn events(self, model: &Model, include_empty: bool) -> Vec<SubsetMask> {
        let n = model.universe.len();
        match self {
            EventSelector::All | EventSelector::Nonempty => {
                CanonicalSubsets::new(n, include_empty).collect()
            }
            EventSelector::Singletons => {
                let mut v = Vec::with_capacity(n + 1);
                if include_empty {
                    v.push(SubsetMask::EMPTY);
                }
                v.extend((0..n).map(SubsetMask::singleton));
                v
            }
            EventSelector::Members => model
                .family
                .members()
                .iter()
                .copied()
                .filter(|s| include_empty || !s.is_empty())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalTable {
    pub headers: Vec<String>,
    pub events: Vec<SubsetMask>,
    /// One row per event, one value per header.
    pub rows: Vec<Vec<f64>>,
}

pub fn eval_table(model: &Model, columns: &[Column], events: &[SubsetMask]) -> Result<EvalTable> {
    for c in columns {
        c.validate(model)?;
    }
    let prob = if columns.contains(&Column::ContextualProb) {
        Some(sampling_probability(model.family.clone())?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(events.len());
    for &e in events {
        let mut row = Vec::new();
        for &c in columns {
            match c {
                Column::Mass(f) => row.push(f.eval(&model.mass, e)?),
                Column::ContextualProb => row.push(contextual_prob(prob.as_ref().unwrap(), e)?),
                Column::Gamma => row.push(gamma(&model.family, e)?),
                Column::Mu => {
                    let r = approximate(&model.family, e)?;
                    row.push(r.mu_lower);
                    row.push(r.mu_upper);
                }
            }
        }
        rows.push(row);
    }
    Ok(EvalTable {
        headers: columns.iter().flat_map(|c| c.headers()).collect(),
        events: events.to_vec(),
        rows,
    })
}

/// Six decimals, ties to even, and no negative zero.
pub fn fmt_value(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Tab-separated, one header line, events rendered as label sets.
pub fn render_table(model: &Model, table: &EvalTable) -> String {
    let mut out = String::from("event");
    for h in &table.headers {
        out.push('\t');
        out.push_str(h);
    }
    out.push('\n');
    for (e, row) in table.events.iter().zip(&table.rows) {
        out.push_str(&model.universe.render(*e));
        for &v in row {
            out.push('\t');
            out.push_str(&fmt_value(v));
        }
        out.push('\n');
    }
    out
}
