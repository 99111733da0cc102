//! Game instances, validation, induced sub-games and coalitions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Default limit on the number of vertices for coalition enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 16;

/// Which game is being played on the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Assignment,
    GeneralMatching,
    BUniform,
    BUnconstrained,
    BConstrained,
    BGeneral,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Assignment,
        Variant::GeneralMatching,
        Variant::BUniform,
        Variant::BUnconstrained,
        Variant::BConstrained,
        Variant::BGeneral,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Variant::Assignment => "assignment",
            Variant::GeneralMatching => "general-matching",
            Variant::BUniform => "b-uniform",
            Variant::BUnconstrained => "b-unconstrained",
            Variant::BConstrained => "b-constrained",
            Variant::BGeneral => "b-general",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.tag() == tag)
    }

    pub fn is_bipartite(self) -> bool {
        self != Variant::GeneralMatching
    }

    pub fn is_b_matching(self) -> bool {
        matches!(self, Variant::BUniform | Variant::BUnconstrained | Variant::BConstrained | Variant::BGeneral)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Side of the bipartition. General-matching games put every vertex on `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    U,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub side: Side,
    /// `a_q`: minimum load (b-general only, otherwise 0).
    pub lower: u32,
    /// `b_q`: maximum load.
    pub upper: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Vertex indices; for bipartite games `ends[0]` is on `U` and `ends[1]` on `V`.
    pub ends: [usize; 2],
    pub weight: Rational,
    /// `c_ij` (b-general only, otherwise 0).
    pub lower: u32,
    /// `d_ij`; `None` means no edge bound beyond the vertex bounds.
    pub upper: Option<u32>,
}

impl Edge {
    pub fn touches(&self, vertex: usize) -> bool {
        self.ends[0] == vertex || self.ends[1] == vertex
    }

    pub fn other(&self, vertex: usize) -> usize {
        if self.ends[0] == vertex {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// A graph game: vertices (players), weighted edges (teams) and the bounds
/// that apply for its [`Variant`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameInstance {
    variant: Variant,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    uniform_b: Option<u32>,
    pub name: Option<String>,
    pub provenance: Option<String>,
}

impl GameInstance {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The constant `b_c` of a b-uniform game.
    pub fn uniform_b(&self) -> Option<u32> {
        self.uniform_b
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, a: &str, b: &str) -> Option<usize> {
        let (a, b) = (self.vertex_index(a)?, self.vertex_index(b)?);
        self.edges.iter().position(|e| e.ends == [a, b] || e.ends == [b, a])
    }

    /// Indices of the `U` side, in declaration order.
    pub fn left_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].side == Side::U)
    }

    /// Indices of the `V` side, in declaration order.
    pub fn right_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].side == Side::V)
    }

    pub fn incident_edges(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].touches(vertex))
    }

    /// `"u1-v1"` style label.
    pub fn edge_label(&self, edge: usize) -> String {
        let [a, b] = self.edges[edge].ends;
        format!("{}-{}", self.vertices[a].id, self.vertices[b].id)
    }

    /// Largest multiplicity edge `edge` can take in any feasible b-matching.
    pub fn edge_capacity(&self, edge: usize) -> u32 {
        let e = &self.edges[edge];
        let vertex_cap = self.vertices[e.ends[0]].upper.min(self.vertices[e.ends[1]].upper);
        e.upper.map_or(vertex_cap, |d| d.min(vertex_cap))
    }

    /// `∑ b_q`, the enumeration budget measure.
    pub fn multiplicity_budget(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.upper)).sum()
    }

    /// Per-vertex neighbour bitmasks.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices.len()];
        for e in &self.edges {
            let [a, b] = e.ends;
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::from_indices(0..self.vertices.len())
    }

    /// Checks every structural invariant; violations are data, not errors.
    pub fn validate(&self) -> ValidationReport {
        validate_game(self)
    }

    /// Keeps the vertices of `coalition` and the edges with both endpoints in it.
    /// All bounds are inherited unchanged.
    pub fn induce(&self, coalition: &Coalition) -> Result<GameInstance> {
        induce_subgame(self, coalition)
    }
}

/// Endpoint ids, weight, and the optional `c` / `d` bounds.
type PendingEdge = (String, String, Rational, Option<u32>, Option<u32>);

/// Incremental construction of a [`GameInstance`] from vertex ids.
#[derive(Debug, Clone)]
pub struct GameBuilder {
    variant: Variant,
    left: Vec<String>,
    right: Vec<String>,
    edges: Vec<PendingEdge>,
    lower: BTreeMap<String, u32>,
    upper: BTreeMap<String, u32>,
    uniform_b: Option<u32>,
    name: Option<String>,
    provenance: Option<String>,
}

impl GameBuilder {
    pub fn new(variant: Variant) -> Self {
        GameBuilder {
            variant,
            left: Vec::new(),
            right: Vec::new(),
            edges: Vec::new(),
            lower: BTreeMap::new(),
            upper: BTreeMap::new(),
            uniform_b: None,
            name: None,
            provenance: None,
        }
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance = Some(note.into());
        self
    }

    pub fn left<S: Into<String>>(mut self, ids: impl IntoIterator<Item = S>) -> Self {
        self.left.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn right<S: Into<String>>(mut self, ids: impl IntoIterator<Item = S>) -> Self {
        self.right.extend(ids.into_iter().map(Into::into));
        self
    }

    /// Vertices of a general-matching game.
    pub fn vertices<S: Into<String>>(self, ids: impl IntoIterator<Item = S>) -> Self {
        self.right(ids)
    }

    pub fn edge(mut self, a: &str, b: &str, weight: Rational) -> Self {
        self.edges.push((a.into(), b.into(), weight, None, None));
        self
    }

    /// Edge with `c_ij` / `d_ij` bounds (b-general).
    pub fn bounded_edge(mut self, a: &str, b: &str, weight: Rational, lower: u32, upper: u32) -> Self {
        self.edges.push((a.into(), b.into(), weight, Some(lower), Some(upper)));
        self
    }

    /// Sets `b_q`.
    pub fn capacity(mut self, id: &str, upper: u32) -> Self {
        self.upper.insert(id.into(), upper);
        self
    }

    /// Sets `a_q` and `b_q` (b-general).
    pub fn load_bounds(mut self, id: &str, lower: u32, upper: u32) -> Self {
        self.lower.insert(id.into(), lower);
        self.upper.insert(id.into(), upper);
        self
    }

    /// Constant `b_c` of a b-uniform game.
    pub fn uniform(mut self, b: u32) -> Self {
        self.uniform_b = Some(b);
        self
    }

    /// Resolves ids and applies variant defaults without validating.
    pub fn build_unchecked(self) -> Result<GameInstance> {
        let variant = self.variant;
        let mut vertices = Vec::with_capacity(self.left.len() + self.right.len());
        let mut seen = BTreeSet::new();
        let sides = self.left.iter().map(|id| (id, Side::U)).chain(self.right.iter().map(|id| (id, Side::V)));
        for (id, side) in sides {
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateVertex(id.clone()));
            }
            let default_upper = match variant {
                Variant::BUniform => self.uniform_b.unwrap_or(1),
                _ => 1,
            };
            vertices.push(Vertex {
                id: id.clone(),
                side,
                lower: self.lower.get(id).copied().unwrap_or(0),
                upper: self.upper.get(id).copied().unwrap_or(default_upper),
            });
        }
        for id in self.lower.keys().chain(self.upper.keys()) {
            if !seen.contains(id) {
                return Err(Error::UnknownVertex(id.clone()));
            }
        }
        let index =
            |id: &str| vertices.iter().position(|v| v.id == id).ok_or_else(|| Error::UnknownVertex(id.to_string()));
        let mut edges = Vec::with_capacity(self.edges.len());
        for (a, b, weight, lower, upper) in self.edges {
            let (mut i, mut j) = (index(&a)?, index(&b)?);
            if variant.is_bipartite() && vertices[i].side == Side::V && vertices[j].side == Side::U {
                std::mem::swap(&mut i, &mut j);
            }
            let upper = match variant {
                Variant::BConstrained => Some(upper.unwrap_or(1)),
                Variant::BGeneral => Some(upper.unwrap_or(1)),
                _ => upper,
            };
            edges.push(Edge { ends: [i, j], weight, lower: lower.unwrap_or(0), upper });
        }
        Ok(GameInstance {
            variant,
            vertices,
            edges,
            uniform_b: if variant == Variant::BUniform { Some(self.uniform_b.unwrap_or(1)) } else { self.uniform_b },
            name: self.name,
            provenance: self.provenance,
        })
    }

    /// Builds and validates.
    pub fn build(self) -> Result<GameInstance> {
        let game = self.build_unchecked()?;
        let report = game.validate();
        if report.is_ok() {
            Ok(game)
        } else {
            Err(Error::Invalid(report.violations))
        }
    }
}

/// One failed structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveWeight { edge: String, weight: Rational },
    SelfLoop { edge: String },
    ParallelEdge { edge: String },
    NotBipartite { edge: String },
    ZeroCapacity { vertex: String },
    VertexBoundOrder { vertex: String, lower: u32, upper: u32 },
    EdgeBoundOrder { edge: String, lower: u32, upper: u32 },
    BoundNotAllowed { what: String },
    NonUniformCapacity { vertex: String, expected: u32, found: u32 },
    TooManyVertices { count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveWeight { edge, weight } => {
                write!(f, "non-positive weight {weight} on edge {edge}")
            }
            Violation::SelfLoop { edge } => write!(f, "self-loop {edge}"),
            Violation::ParallelEdge { edge } => write!(f, "parallel edge {edge}"),
            Violation::NotBipartite { edge } => write!(f, "edge {edge} joins two vertices on the same side"),
            Violation::ZeroCapacity { vertex } => write!(f, "vertex {vertex} has capacity 0"),
            Violation::VertexBoundOrder { vertex, lower, upper } => {
                write!(f, "vertex bound order: {vertex} has a={lower} > b={upper}")
            }
            Violation::EdgeBoundOrder { edge, lower, upper } => {
                write!(f, "edge bound order: {edge} has c={lower} > d={upper}")
            }
            Violation::BoundNotAllowed { what } => write!(f, "bound not allowed for this variant: {what}"),
            Violation::NonUniformCapacity { vertex, expected, found } => {
                write!(f, "vertex {vertex} has capacity {found}, uniform game expects {expected}")
            }
            Violation::TooManyVertices { count } => write!(f, "{count} vertices exceeds the 63-vertex limit"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_game(g: &GameInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let variant = g.variant;
    if g.vertices.len() > 63 {
        violations.push(Violation::TooManyVertices { count: g.vertices.len() });
    }
    let mut endpoints = BTreeSet::new();
    for (k, e) in g.edges.iter().enumerate() {
        let label = g.edge_label(k);
        if !e.weight.is_positive() {
            violations.push(Violation::NonPositiveWeight { edge: label.clone(), weight: e.weight.clone() });
        }
        let [a, b] = e.ends;
        if a == b {
            violations.push(Violation::SelfLoop { edge: label.clone() });
        }
        if !endpoints.insert((a.min(b), a.max(b))) {
            violations.push(Violation::ParallelEdge { edge: label.clone() });
        }
        if variant.is_bipartite() && g.vertices[a].side == g.vertices[b].side {
            violations.push(Violation::NotBipartite { edge: label.clone() });
        }
        if variant == Variant::BGeneral {
            if let Some(upper) = e.upper {
                if e.lower > upper {
                    violations.push(Violation::EdgeBoundOrder { edge: label.clone(), lower: e.lower, upper });
                }
            }
        } else if e.lower != 0 {
            violations.push(Violation::BoundNotAllowed { what: format!("c on edge {label}") });
        }
        match variant {
            Variant::Assignment | Variant::GeneralMatching | Variant::BUniform | Variant::BUnconstrained => {
                if e.upper.is_some() {
                    violations.push(Violation::BoundNotAllowed { what: format!("d on edge {label}") });
                }
            }
            Variant::BConstrained => {
                if e.upper != Some(1) {
                    violations.push(Violation::BoundNotAllowed { what: format!("d != 1 on edge {label}") });
                }
            }
            Variant::BGeneral => {}
        }
    }
    if variant == Variant::GeneralMatching && g.vertices.iter().any(|v| v.side == Side::U) {
        violations.push(Violation::BoundNotAllowed { what: "U side in a general-matching game".into() });
    }
    for v in &g.vertices {
        if v.upper == 0 {
            violations.push(Violation::ZeroCapacity { vertex: v.id.clone() });
        }
        if variant == Variant::BGeneral {
            if v.lower > v.upper {
                violations.push(Violation::VertexBoundOrder { vertex: v.id.clone(), lower: v.lower, upper: v.upper });
            }
        } else if v.lower != 0 {
            violations.push(Violation::BoundNotAllowed { what: format!("a on vertex {}", v.id) });
        }
        match variant {
            Variant::Assignment | Variant::GeneralMatching if v.upper != 1 => {
                violations.push(Violation::BoundNotAllowed { what: format!("b != 1 on vertex {}", v.id) });
            }
            Variant::BUniform => {
                let expected = g.uniform_b.unwrap_or(1);
                if v.upper != expected {
                    violations.push(Violation::NonUniformCapacity { vertex: v.id.clone(), expected, found: v.upper });
                }
            }
            _ => {}
        }
    }
    ValidationReport { violations }
}

/// A set of players, stored as sorted vertex indices of the owning game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition {
    members: Vec<usize>,
}

impl Coalition {
    pub fn empty() -> Self {
        Coalition { members: Vec::new() }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let members: BTreeSet<usize> = indices.into_iter().collect();
        Coalition { members: members.into_iter().collect() }
    }

    pub fn from_mask(mask: u64) -> Self {
        Coalition::from_indices((0..64).filter(|i| mask >> i & 1 == 1))
    }

    pub fn from_ids<S: AsRef<str>>(g: &GameInstance, ids: impl IntoIterator<Item = S>) -> Result<Self> {
        let indices = ids
            .into_iter()
            .map(|id| {
                let id = id.as_ref();
                g.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Coalition::from_indices(indices))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.members.binary_search(&vertex).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    /// Member ids, sorted.
    pub fn ids<'g>(&self, g: &'g GameInstance) -> Vec<&'g str> {
        let mut ids: Vec<&str> = self.members.iter().map(|&i| g.vertices[i].id.as_str()).collect();
        ids.sort_unstable();
        ids
    }

    /// `{u1,v1}` style label.
    pub fn label(&self, g: &GameInstance) -> String {
        format!("{{{}}}", self.ids(g).join(","))
    }
}

pub fn induce_subgame(g: &GameInstance, s: &Coalition) -> Result<GameInstance> {
    if let Some(&bad) = s.members.iter().find(|&&i| i >= g.vertices.len()) {
        return Err(Error::UnknownVertex(format!("#{bad}")));
    }
    let mut remap = vec![usize::MAX; g.vertices.len()];
    let mut vertices = Vec::with_capacity(s.len());
    for (old, v) in g.vertices.iter().enumerate() {
        if s.contains(old) {
            remap[old] = vertices.len();
            vertices.push(v.clone());
        }
    }
    let edges = g
        .edges
        .iter()
        .filter(|e| s.contains(e.ends[0]) && s.contains(e.ends[1]))
        .map(|e| Edge { ends: [remap[e.ends[0]], remap[e.ends[1]]], ..e.clone() })
        .collect();
    Ok(GameInstance {
        variant: g.variant,
        vertices,
        edges,
        uniform_b: g.uniform_b,
        name: g.name.clone(),
        provenance: g.provenance.clone(),
    })
}

/// Whether the subgraph induced by `mask` is connected (false for the empty mask).
pub fn is_connected_mask(adjacency: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adjacency[v] & mask & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == mask
}

/// Splits `mask` into the vertex masks of its connected components.
pub fn components_of_mask(adjacency: &[u64], mask: u64) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adjacency[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        out.push(seen);
        rest &= !seen;
    }
    out
}

/// Orders masks lexicographically by their sorted member ids.
pub(crate) fn sort_by_ids(g: &GameInstance, masks: &mut [u64]) {
    let mut order: Vec<usize> = (0..g.vertices.len()).collect();
    order.sort_by(|&a, &b| g.vertices[a].id.cmp(&g.vertices[b].id));
    let key = |mask: u64| -> Vec<usize> { (0..order.len()).filter(|&rank| mask >> order[rank] & 1 == 1).collect() };
    masks.sort_by_cached_key(|&m| key(m));
}

/// All vertex subsets of `g` as masks, in id-lexicographic order.
pub(crate) fn all_coalition_masks(g: &GameInstance, cap: usize) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { what: "vertex count", value: n as u64, cap: cap as u64 });
    }
    let mut masks: Vec<u64> = (1..(1u64 << n)).collect();
    sort_by_ids(g, &mut masks);
    Ok(masks)
}

/// Masks of the connected coalitions of `g`, in id-lexicographic order.
pub(crate) fn connected_coalition_masks(g: &GameInstance, cap: usize) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { what: "vertex count", value: n as u64, cap: cap as u64 });
    }
    let adjacency = g.adjacency_masks();
    let mut masks: Vec<u64> = (1..(1u64 << n)).filter(|&m| is_connected_mask(&adjacency, m)).collect();
    sort_by_ids(g, &mut masks);
    Ok(masks)
}

/// Every nonempty vertex subset whose induced subgraph is connected, singletons
/// included, ordered lexicographically by sorted member ids.
pub fn connected_coalitions(g: &GameInstance, cap: usize) -> Result<Vec<Coalition>> {
    Ok(connected_coalition_masks(g, cap)?.into_iter().map(Coalition::from_mask).collect())
}
