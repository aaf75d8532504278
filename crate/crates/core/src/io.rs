//! Text formats.
//!
//! Interval file: first line `n`, then `n` lines `id left right [num den]`,
//! weight 1 when omitted. Ids are arbitrary tokens, numbered densely in order
//! of appearance. Edge list: first line `n m`, then `m` lines `u v` with
//! `0 <= u, v < n`. In both, `#` starts a comment running to end of line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::interval::{Interval, Weight, WeightedIntervalGraph};
use crate::matching::SimpleGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: WeightedIntervalGraph,
    /// `labels[v]` is the id token of vertex `v`.
    pub labels: Vec<String>,
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {tok:?}"),
    })
}

pub fn parse_intervals(text: &str) -> Result<LabeledGraph> {
    let mut recs = records(text);
    let (line, head) = recs.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    if head.len() != 1 {
        return Err(Error::Parse {
            line,
            msg: "first line must hold only n".into(),
        });
    }
    let n: usize = number(line, head[0], "vertex count")?;
    let mut labels = Vec::with_capacity(n);
    let mut seen = HashMap::with_capacity(n);
    let mut ivs = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (line, t) in recs.by_ref() {
        if labels.len() == n {
            return Err(Error::Parse {
                line,
                msg: format!("more than {n} interval lines"),
            });
        }
        if t.len() != 3 && t.len() != 5 {
            return Err(Error::Parse {
                line,
                msg: "expected `id left right [num den]`".into(),
            });
        }
        if seen.insert(t[0].to_string(), labels.len()).is_some() {
            return Err(Error::DuplicateVertexId(labels.len()));
        }
        let left = number(line, t[1], "left endpoint")?;
        let right = number(line, t[2], "right endpoint")?;
        let w = if t.len() == 5 {
            let num: i64 = number(line, t[3], "weight numerator")?;
            let den: i64 = number(line, t[4], "weight denominator")?;
            if den == 0 {
                return Err(Error::Parse {
                    line,
                    msg: "zero weight denominator".into(),
                });
            }
            Weight::new(num, den)
        } else {
            Weight::from(1)
        };
        ivs.push(Interval::new(labels.len(), left, right));
        weights.push(w);
        labels.push(t[0].to_string());
    }
    if labels.len() != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {n} intervals, found {}", labels.len()),
        });
    }
    Ok(LabeledGraph {
        graph: WeightedIntervalGraph::new(&ivs, weights)?,
        labels,
    })
}

/// Writes the interval format; weights other than 1 are written as
/// `num den`, and `notes[v]`, when nonempty, as a trailing comment.
pub fn format_intervals(
    graph: &WeightedIntervalGraph,
    labels: &[String],
    notes: &[String],
) -> String {
    let mut out = format!("{}\n", graph.n());
    for v in 0..graph.n() {
        let w = graph.weight(v);
        write!(out, "{} {} {}", labels[v], graph.left(v), graph.right(v)).unwrap();
        if w != Weight::from(1) {
            write!(out, " {} {}", w.numer(), w.denom()).unwrap();
        }
        match notes.get(v) {
            Some(note) if !note.is_empty() => writeln!(out, " # {note}").unwrap(),
            _ => out.push('\n'),
        }
    }
    out
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut recs = records(text);
    let (line, head) = recs.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    if head.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: "header must be `n m`".into(),
        });
    }
    let n: usize = number(line, head[0], "vertex count")?;
    let m: usize = number(line, head[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (line, t) in recs {
        if t.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: "expected `u v`".into(),
            });
        }
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                msg: format!("more than {m} edge lines"),
            });
        }
        edges.push((number(line, t[0], "vertex")?, number(line, t[1], "vertex")?));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    SimpleGraph::new(n, &edges)
}

pub fn format_edge_list(graph: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.m());
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
