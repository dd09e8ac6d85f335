//! Line-oriented instance documents:
//!
//! ```text
//! # comments and blank lines are ignored
//! period: 2021
//! parties: Red, Green, Blue
//! votes: 60, 30, 10
//! weights: 10, 6, 4, 2
//! labels: Budget, Health, Transport, Culture
//! ```
//!
//! `votes` and `weights` are required; numbers may be separated by commas or
//! whitespace. Names are comma separated.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{sort_permutation, validate_instance, ElectionInstance};

/// A document as written, before validation and sorting.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InstanceDocument {
    pub parties: Option<Vec<String>>,
    pub votes: Vec<i64>,
    pub weights: Vec<i64>,
    pub labels: Option<Vec<String>>,
    pub period: Option<String>,
}

/// A validated instance plus names. `seat_labels` follows the sorted seat
/// order of `instance`; unnamed parties and seats get their one-based
/// position in the document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledInstance {
    pub instance: ElectionInstance,
    pub parties: Vec<String>,
    pub seat_labels: Vec<String>,
    pub period: Option<String>,
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = InstanceDocument::default();
        let (mut saw_votes, mut saw_weights) = (false, false);
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| Error::parse(line, "expected `key: value`"))?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim();
            let seen = match key.as_str() {
                "votes" => std::mem::replace(&mut saw_votes, true),
                "weights" => std::mem::replace(&mut saw_weights, true),
                "parties" => doc.parties.is_some(),
                "labels" => doc.labels.is_some(),
                "period" => doc.period.is_some(),
                other => return Err(Error::parse(line, format!("unknown key `{other}`"))),
            };
            if seen {
                return Err(Error::parse(line, format!("duplicate key `{key}`")));
            }
            match key.as_str() {
                "votes" => doc.votes = numbers(value, line)?,
                "weights" => doc.weights = numbers(value, line)?,
                "parties" => doc.parties = Some(names(value)),
                "labels" => doc.labels = Some(names(value)),
                _ => doc.period = Some(value.to_string()),
            }
        }
        let end = text.lines().count().max(1);
        if !saw_votes {
            return Err(Error::parse(end, "missing `votes`"));
        }
        if !saw_weights {
            return Err(Error::parse(end, "missing `weights`"));
        }
        Ok(doc)
    }

    pub fn into_instance(self) -> Result<LabeledInstance> {
        let instance = validate_instance(&self.votes, &self.weights)?;
        let parties = match self.parties {
            Some(p) if p.len() != self.votes.len() => {
                return Err(Error::Schema(format!(
                    "`parties` has {} names for {} vote counts",
                    p.len(),
                    self.votes.len()
                )))
            }
            Some(p) => p,
            None => (1..=self.votes.len()).map(|i| i.to_string()).collect(),
        };
        let labels = match self.labels {
            Some(l) if l.len() != self.weights.len() => {
                return Err(Error::Schema(format!(
                    "`labels` has {} names for {} weights",
                    l.len(),
                    self.weights.len()
                )))
            }
            Some(l) => l,
            None => (1..=self.weights.len()).map(|i| i.to_string()).collect(),
        };
        let raw: Vec<u64> = self.weights.iter().map(|&w| w as u64).collect();
        let seat_labels = sort_permutation(&raw).into_iter().map(|i| labels[i].clone()).collect();
        Ok(LabeledInstance {
            instance,
            parties,
            seat_labels,
            period: self.period,
        })
    }
}

pub fn parse_instance(text: &str) -> Result<LabeledInstance> {
    InstanceDocument::parse(text)?.into_instance()
}

impl LabeledInstance {
    pub fn unlabeled(instance: ElectionInstance) -> Self {
        LabeledInstance {
            parties: (1..=instance.num_parties()).map(|i| i.to_string()).collect(),
            seat_labels: (1..=instance.num_seats()).map(|i| i.to_string()).collect(),
            instance,
            period: None,
        }
    }

    /// Renders in sorted seat order; parsing the output yields `self` with
    /// the reorder flag cleared.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(period) = &self.period {
            writeln!(out, "period: {period}").unwrap();
        }
        writeln!(out, "parties: {}", self.parties.join(", ")).unwrap();
        writeln!(out, "votes: {}", join(self.instance.votes())).unwrap();
        writeln!(out, "weights: {}", join(self.instance.weights())).unwrap();
        writeln!(out, "labels: {}", self.seat_labels.join(", ")).unwrap();
        out
    }
}

/// Minimal document for a bare instance.
pub fn render_instance(instance: &ElectionInstance) -> String {
    format!(
        "votes: {}\nweights: {}\n",
        join(instance.votes()),
        join(instance.weights())
    )
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn numbers(value: &str, line: usize) -> Result<Vec<i64>> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::parse(line, format!("`{t}` is not an integer")))
        })
        .collect()
}

fn names(value: &str) -> Vec<String> {
    value.split(',').map(|s| s.trim().to_string()).collect()
}
