//! The TOML game file.
//!
//! ```toml
//! name = "fig7-constrained"
//! note = "two-by-two b-matching game with capacities 2 on u1 and v1"
//! variant = "b-constrained"
//! left = ["u1", "u2"]
//! right = ["v1", "v2"]
//! b = { u1 = 2, v1 = 2 }
//! edges = [
//!     { ends = ["u1", "v1"], weight = "1" },
//!     { ends = ["u1", "v2"], weight = "3" },
//!     { ends = ["u2", "v2"], weight = "1" },
//! ]
//! ```
//!
//! General-matching games list `vertices` instead of `left`/`right`. A
//! b-uniform game writes its constant as `b = 2`. Per-vertex `a` and per-edge
//! `c`/`d` are for b-general games; `d` defaults to 1 there.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::game::{GameBuilder, GameInstance, Side, Variant};
use crate::numeric::Rational;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    name: Option<String>,
    note: Option<String>,
    variant: Spanned<String>,
    left: Option<Vec<String>>,
    right: Option<Vec<String>>,
    vertices: Option<Vec<String>>,
    b: Option<RawCapacity>,
    a: Option<BTreeMap<String, u32>>,
    #[serde(default)]
    edges: Vec<Spanned<RawEdge>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCapacity {
    Uniform(u32),
    PerVertex(BTreeMap<String, u32>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    ends: [String; 2],
    weight: RawWeight,
    c: Option<u32>,
    d: Option<u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Integer(i64),
    Text(String),
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

fn located(text: &str, offset: usize, what: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: format!("line {}, {what}", line_of(text, offset)), message: message.into() }
}

/// Reads and validates a game file.
pub fn parse_game(text: &str) -> Result<GameInstance> {
    let raw: RawGame = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => format!("line {}", line_of(text, span.start)),
            None => "document".to_string(),
        };
        Error::Parse { location, message: e.message().to_string() }
    })?;

    let variant_at = raw.variant.span().start;
    let variant = Variant::from_tag(raw.variant.get_ref())
        .ok_or_else(|| located(text, variant_at, "variant", format!("unknown variant `{}`", raw.variant.get_ref())))?;

    let mut builder = GameBuilder::new(variant);
    if variant == Variant::GeneralMatching {
        if raw.left.is_some() || raw.right.is_some() {
            return Err(located(
                text,
                variant_at,
                "variant",
                "general-matching games list `vertices`, not `left`/`right`",
            ));
        }
        let vertices = raw.vertices.ok_or_else(|| located(text, variant_at, "vertices", "missing vertex list"))?;
        builder = builder.vertices(vertices);
    } else {
        if raw.vertices.is_some() {
            return Err(located(
                text,
                variant_at,
                "variant",
                "bipartite games list `left` and `right`, not `vertices`",
            ));
        }
        let left = raw.left.ok_or_else(|| located(text, variant_at, "left", "missing left side"))?;
        let right = raw.right.ok_or_else(|| located(text, variant_at, "right", "missing right side"))?;
        builder = builder.left(left).right(right);
    }
    if let Some(name) = raw.name {
        builder = builder.name(name);
    }
    if let Some(note) = raw.note {
        builder = builder.provenance(note);
    }

    match raw.b {
        Some(RawCapacity::Uniform(b)) if variant == Variant::BUniform => builder = builder.uniform(b),
        Some(RawCapacity::Uniform(_)) => {
            return Err(located(text, variant_at, "b", "a single `b` value is only for b-uniform games"))
        }
        Some(RawCapacity::PerVertex(_)) if variant == Variant::BUniform => {
            return Err(located(text, variant_at, "b", "b-uniform games take a single `b` value"))
        }
        Some(RawCapacity::PerVertex(caps)) => {
            for (id, b) in caps {
                builder = builder.capacity(&id, b);
            }
        }
        None => {}
    }
    // `a` after `b` so that load_bounds sees the final upper bound
    if let Some(lower) = raw.a {
        let game = builder.clone().build_unchecked()?;
        for (id, a) in lower {
            let upper = game.vertex_index(&id).map_or(1, |q| game.vertex(q).upper);
            builder = builder.load_bounds(&id, a, upper);
        }
    }

    let known: BTreeSet<String> = builder.clone().build_unchecked()?.vertices().iter().map(|v| v.id.clone()).collect();
    let mut seen = BTreeSet::new();
    for (k, edge) in raw.edges.iter().enumerate() {
        let at = edge.span().start;
        let what = format!("edge {}", k + 1);
        let RawEdge { ends: [a, b], weight, c, d } = edge.get_ref();
        for id in [a, b] {
            if !known.contains(id) {
                return Err(located(text, at, &what, format!("unknown vertex `{id}`")));
            }
        }
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if !seen.insert(key) {
            return Err(located(text, at, &what, format!("duplicate edge {a}-{b}")));
        }
        let weight = match weight {
            RawWeight::Integer(w) => Rational::from_integer(*w),
            RawWeight::Text(w) => {
                w.parse().map_err(|e| located(text, at, &format!("{what} weight"), format!("{e}")))?
            }
        };
        builder = if c.is_some() || d.is_some() {
            builder.bounded_edge(a, b, weight, c.unwrap_or(0), d.unwrap_or(1))
        } else {
            builder.edge(a, b, weight)
        };
    }
    builder.build()
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn key(s: &str) -> String {
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-') {
        s.to_string()
    } else {
        quoted(s)
    }
}

fn list<'a>(ids: impl IntoIterator<Item = &'a str>) -> String {
    let items: Vec<String> = ids.into_iter().map(quoted).collect();
    format!("[{}]", items.join(", "))
}

fn inline<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> String {
    let items: Vec<String> = pairs.into_iter().map(|(id, n)| format!("{} = {n}", key(id))).collect();
    format!("{{ {} }}", items.join(", "))
}

/// Writes `g` in the file format; `parse_game(&render_game(g))` gives back `g`.
pub fn render_game(g: &GameInstance) -> String {
    let variant = g.variant();
    let mut out = String::new();
    if let Some(name) = &g.name {
        let _ = writeln!(out, "name = {}", quoted(name));
    }
    if let Some(note) = &g.provenance {
        let _ = writeln!(out, "note = {}", quoted(note));
    }
    let _ = writeln!(out, "variant = {}", quoted(variant.tag()));
    let ids = |side: Side| g.vertices().iter().filter(move |v| v.side == side).map(|v| v.id.as_str());
    if variant == Variant::GeneralMatching {
        let _ = writeln!(out, "vertices = {}", list(g.vertices().iter().map(|v| v.id.as_str())));
    } else {
        let _ = writeln!(out, "left = {}", list(ids(Side::U)));
        let _ = writeln!(out, "right = {}", list(ids(Side::V)));
    }
    if variant == Variant::BUniform {
        let _ = writeln!(out, "b = {}", g.uniform_b().unwrap_or(1));
    } else {
        let caps: Vec<_> = g.vertices().iter().filter(|v| v.upper != 1).map(|v| (v.id.as_str(), v.upper)).collect();
        if !caps.is_empty() {
            let _ = writeln!(out, "b = {}", inline(caps));
        }
    }
    let lower: Vec<_> = g.vertices().iter().filter(|v| v.lower != 0).map(|v| (v.id.as_str(), v.lower)).collect();
    if !lower.is_empty() {
        let _ = writeln!(out, "a = {}", inline(lower));
    }

    let default_upper = matches!(variant, Variant::BConstrained | Variant::BGeneral).then_some(1);
    out.push_str("edges = [\n");
    for e in g.edges() {
        let [i, j] = e.ends;
        let _ = write!(
            out,
            "    {{ ends = {}, weight = {}",
            list([g.vertex(i).id.as_str(), g.vertex(j).id.as_str()]),
            quoted(&e.weight.to_string())
        );
        if e.lower != 0 || e.upper != default_upper {
            let _ = write!(out, ", c = {}", e.lower);
            if let Some(d) = e.upper {
                let _ = write!(out, ", d = {d}");
            }
        }
        out.push_str(" },\n");
    }
    out.push_str("]\n");
    out
}
