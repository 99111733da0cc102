use std::fmt;

use serde::Serialize;

use super::{brute_force_optima, Optima};
use crate::error::{Error, Result};
use crate::game::GameInstance;

/// How often a vertex or edge takes part in the optimal integral matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    /// In every optimum.
    Essential,
    /// In some optima but not all.
    Viable,
    /// In none.
    Subpar,
}

impl Label {
    fn from_count(hits: usize, total: usize) -> Label {
        if hits == total {
            Label::Essential
        } else if hits == 0 {
            Label::Subpar
        } else {
            Label::Viable
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Essential => "essential",
            Label::Viable => "viable",
            Label::Subpar => "subpar",
        })
    }
}

/// Labels for every vertex and edge, in game order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub vertices: Vec<Label>,
    pub edges: Vec<Label>,
    pub optima: Optima,
}

pub fn classify(g: &GameInstance, cap: u64) -> Result<Classification> {
    let optima = brute_force_optima(g, cap)?;
    let total = optima.count();
    let vertices = (0..g.vertex_count())
        .map(|q| Label::from_count(optima.matchings.iter().filter(|m| m.covers(g, q)).count(), total))
        .collect();
    let edges = (0..g.edge_count())
        .map(|e| {
            let hits = optima.matchings.iter().filter(|m| m.multiplicities[e].is_positive()).count();
            Label::from_count(hits, total)
        })
        .collect();
    Ok(Classification { vertices, edges, optima })
}

pub fn classify_vertex(g: &GameInstance, id: &str, cap: u64) -> Result<Label> {
    let q = g.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
    Ok(classify(g, cap)?.vertices[q])
}

pub fn classify_edge(g: &GameInstance, a: &str, b: &str, cap: u64) -> Result<Label> {
    let e = g.edge_index(a, b).ok_or_else(|| Error::UnknownEdge(format!("{a}-{b}")))?;
    Ok(classify(g, cap)?.edges[e])
}
