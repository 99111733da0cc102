//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use coregame::analysis::Imputation;
use coregame::game::{GameBuilder, GameInstance, Variant};
use coregame::Rational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// A runner with a fixed seed, so every run sees the same instances.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, max_global_rejects: 100_000, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Weights drawn either from 1..=9 or from {1, 2, 5}.
fn weight() -> impl Strategy<Value = i64> {
    prop_oneof![1..=9i64, prop::sample::select(vec![1i64, 2, 5])]
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// Bipartite assignment games with up to 4 + 4 vertices.
pub fn assignment_game() -> impl Strategy<Value = GameInstance> {
    (1..=4usize, 1..=4usize)
        .prop_flat_map(|(nu, nv)| {
            (Just(nu), Just(nv), prop::collection::vec(prop::option::weighted(0.6, weight()), nu * nv))
        })
        .prop_map(|(nu, nv, cells)| {
            let (left, right) = (ids("u", nu), ids("v", nv));
            let mut b = GameBuilder::new(Variant::Assignment).left(left.clone()).right(right.clone());
            for (k, w) in cells.into_iter().enumerate() {
                if let Some(w) = w {
                    b = b.edge(&left[k / nv], &right[k % nv], Rational::from_integer(w));
                }
            }
            b.build().unwrap()
        })
}

/// General graphs with 2 to 7 vertices.
pub fn general_game() -> impl Strategy<Value = GameInstance> {
    (2..=7usize)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::option::weighted(0.5, weight()), n * (n - 1) / 2)))
        .prop_map(|(n, cells)| {
            let vertices = ids("v", n);
            let mut b = GameBuilder::new(Variant::GeneralMatching).vertices(vertices.clone());
            let mut cells = cells.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if let Some(w) = cells.next().unwrap() {
                        b = b.edge(&vertices[i], &vertices[j], Rational::from_integer(w));
                    }
                }
            }
            b.build().unwrap()
        })
}

#[derive(Debug, Clone)]
struct BEdge {
    weight: Option<i64>,
    c: u32,
    d: u32,
}

fn b_edge() -> impl Strategy<Value = BEdge> {
    (prop::option::weighted(0.6, weight()), prop::sample::select(vec![0u32, 0, 0, 1]), 1..=3u32)
        .prop_map(|(weight, c, d)| BEdge { weight, c, d: d.max(c) })
}

/// Bipartite b-matching games with up to 3 + 3 vertices and capacities up to 3.
/// b-general instances get occasional unit lower bounds and are kept only
/// when the grand coalition has a feasible b-matching.
pub fn b_game(variant: Variant) -> BoxedStrategy<GameInstance> {
    (1..=3usize, 1..=3usize, 1..=3u32)
        .prop_flat_map(move |(nu, nv, uniform)| {
            let n = nu + nv;
            (
                Just((nu, nv, uniform)),
                prop::collection::vec(1..=3u32, n),
                prop::collection::vec(prop::sample::select(vec![0u32, 0, 0, 1]), n),
                prop::collection::vec(b_edge(), nu * nv),
            )
        })
        .prop_filter_map("grand coalition infeasible", move |((nu, nv, uniform), caps, lower, edges)| {
            let (left, right) = (ids("u", nu), ids("v", nv));
            let all: Vec<String> = left.iter().chain(&right).cloned().collect();
            let mut b = GameBuilder::new(variant).left(left.clone()).right(right.clone());
            match variant {
                Variant::BUniform => b = b.uniform(uniform),
                Variant::BGeneral => {
                    for (k, id) in all.iter().enumerate() {
                        b = b.load_bounds(id, lower[k].min(caps[k]), caps[k]);
                    }
                }
                _ => {
                    for (k, id) in all.iter().enumerate() {
                        b = b.capacity(id, caps[k]);
                    }
                }
            }
            for (k, e) in edges.into_iter().enumerate() {
                if let Some(w) = e.weight {
                    let (u, v) = (&left[k / nv], &right[k % nv]);
                    b = if variant == Variant::BGeneral {
                        b.bounded_edge(u, v, Rational::from_integer(w), e.c, e.d)
                    } else {
                        b.edge(u, v, Rational::from_integer(w))
                    };
                }
            }
            let g = b.build().ok()?;
            max_weight(&g, full_mask(&g)).map(|_| g)
        })
        .boxed()
}

pub fn full_mask(g: &GameInstance) -> u64 {
    (1u64 << g.vertex_count()) - 1
}

/// Largest multiplicity of an edge: its own bound, the endpoint capacities,
/// and 1 for plain matching games.
fn edge_cap(g: &GameInstance, e: usize) -> u32 {
    let edge = &g.edges()[e];
    let [i, j] = edge.ends;
    let by_vertices = g.vertex(i).upper.min(g.vertex(j).upper);
    edge.upper.map_or(by_vertices, |d| d.min(by_vertices))
}

/// Best b-matching inside `mask` by plain exhaustive search, `None` when no
/// b-matching meets the lower bounds. Written independently of the library's
/// branch-and-bound enumeration.
pub fn max_weight(g: &GameInstance, mask: u64) -> Option<Rational> {
    let inside = |q: usize| mask >> q & 1 == 1;
    let edges: Vec<usize> = (0..g.edge_count()).filter(|&e| g.edges()[e].ends.iter().all(|&q| inside(q))).collect();
    let mut load = vec![0u32; g.vertex_count()];
    let mut best: Option<Rational> = None;
    fn walk(
        g: &GameInstance,
        edges: &[usize],
        k: usize,
        load: &mut [u32],
        weight: Rational,
        mask: u64,
        best: &mut Option<Rational>,
    ) {
        if k == edges.len() {
            let meets_lower = (0..g.vertex_count()).all(|q| mask >> q & 1 == 0 || load[q] >= g.vertex(q).lower);
            if meets_lower && best.as_ref().is_none_or(|b| weight > *b) {
                *best = Some(weight);
            }
            return;
        }
        let e = edges[k];
        let edge = &g.edges()[e];
        let [i, j] = edge.ends;
        for m in edge.lower..=edge_cap(g, e) {
            if load[i] + m > g.vertex(i).upper || load[j] + m > g.vertex(j).upper {
                break;
            }
            load[i] += m;
            load[j] += m;
            let w = &weight + &(&edge.weight * &Rational::from(m));
            walk(g, edges, k + 1, load, w, mask, best);
            load[i] -= m;
            load[j] -= m;
        }
    }
    walk(g, &edges, 0, &mut load, Rational::zero(), mask, &mut best);
    best
}

/// Worth of every nonempty coalition (`None` for infeasible ones), indexed by mask.
pub struct CoreOracle {
    worths: Vec<Option<Rational>>,
}

impl CoreOracle {
    pub fn new(g: &GameInstance) -> Self {
        let worths = (0..=full_mask(g)).map(|mask| if mask == 0 { None } else { max_weight(g, mask) }).collect();
        CoreOracle { worths }
    }

    pub fn grand(&self) -> &Rational {
        self.worths.last().unwrap().as_ref().expect("grand coalition feasible")
    }

    pub fn worth(&self, mask: u64) -> Option<&Rational> {
        self.worths[mask as usize].as_ref()
    }

    /// Core membership against every coalition, connected or not.
    pub fn in_core(&self, imp: &Imputation) -> bool {
        if imp.profits.iter().any(Rational::is_negative) || imp.total() != *self.grand() {
            return false;
        }
        self.worths.iter().enumerate().all(|(mask, w)| w.as_ref().is_none_or(|w| imp.allocated(mask as u64) >= *w))
    }
}

/// Moves `delta` of profit from vertex 0 to each other vertex in turn.
pub fn perturbations(imp: &Imputation, delta: &Rational) -> Vec<Imputation> {
    let mut out = Vec::new();
    for q in 1..imp.profits.len() {
        for sign in [delta.clone(), -delta] {
            let mut p = imp.clone();
            p.profits[0] -= &sign;
            p.profits[q] += &sign;
            out.push(p);
        }
    }
    out
}

pub fn rats(v: &[&str]) -> Vec<Rational> {
    v.iter().map(|s| coregame::rat(s)).collect()
}

pub fn imp(v: &[&str]) -> Imputation {
    Imputation::new(rats(v))
}
