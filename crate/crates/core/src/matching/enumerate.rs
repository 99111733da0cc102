//! Exhaustive enumeration of integral b-matchings.
//!
//! Weights are scaled to integers by their common denominator so the search
//! runs on `i128`; results are converted back to [`Rational`].

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::MatchingVector;
use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::numeric::Rational;

/// Default limit on `∑ b_q` for exhaustive enumeration.
pub const DEFAULT_MULTIPLICITY_CAP: u64 = 24;

/// Maximum weight and every integral b-matching attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optima {
    pub max_weight: Rational,
    pub matchings: Vec<MatchingVector>,
}

impl Optima {
    pub fn count(&self) -> usize {
        self.matchings.len()
    }
}

struct Search<'g> {
    g: &'g GameInstance,
    mask: u64,
    edges: Vec<usize>,
    weights: Vec<i128>,
    /// Upper bound on the weight still obtainable from `edges[k..]`.
    suffix_bound: Vec<i128>,
    remaining: Vec<u32>,
    counts: Vec<u32>,
    best: Option<i128>,
    collect_all: bool,
    found: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, weight: i128) {
        if let Some(best) = self.best {
            let bound = weight + self.suffix_bound[k];
            if bound < best || (!self.collect_all && bound <= best) {
                return;
            }
        }
        if k == self.edges.len() {
            if !self.lower_bounds_met() {
                return;
            }
            match self.best {
                Some(best) if weight < best => {}
                Some(best) if weight == best => {
                    if self.collect_all {
                        self.found.push(self.counts.clone());
                    }
                }
                _ => {
                    self.best = Some(weight);
                    self.found.clear();
                    self.found.push(self.counts.clone());
                }
            }
            return;
        }
        let e = self.edges[k];
        let edge = &self.g.edges()[e];
        let [i, j] = edge.ends;
        let top = self.g.edge_capacity(e).min(self.remaining[i]).min(self.remaining[j]);
        if edge.lower > top {
            return;
        }
        for mult in (edge.lower..=top).rev() {
            self.remaining[i] -= mult;
            self.remaining[j] -= mult;
            self.counts[e] = mult;
            self.run(k + 1, weight + self.weights[k] * i128::from(mult));
            self.remaining[i] += mult;
            self.remaining[j] += mult;
        }
        self.counts[e] = 0;
    }

    fn lower_bounds_met(&self) -> bool {
        self.g
            .vertices()
            .iter()
            .enumerate()
            .all(|(q, v)| self.mask >> q & 1 == 0 || v.upper - self.remaining[q] >= v.lower)
    }
}

fn search(g: &GameInstance, mask: u64, collect_all: bool) -> Result<Option<(Rational, Vec<Vec<u32>>)>> {
    let edges: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let [a, b] = g.edges()[e].ends;
            mask >> a & 1 == 1 && mask >> b & 1 == 1
        })
        .collect();
    let scale = Rational::common_denominator(edges.iter().map(|&e| &g.edges()[e].weight));
    let to_i128 = |v: BigInt| {
        v.to_i128().ok_or(Error::CapExceeded { what: "scaled weight", value: u64::MAX, cap: i64::MAX as u64 })
    };
    let weights = edges
        .iter()
        .map(|&e| to_i128(g.edges()[e].weight.scaled_integer(&scale).expect("common denominator")))
        .collect::<Result<Vec<i128>>>()?;
    let mut suffix_bound = vec![0i128; edges.len() + 1];
    for k in (0..edges.len()).rev() {
        suffix_bound[k] = suffix_bound[k + 1] + weights[k] * i128::from(g.edge_capacity(edges[k]));
    }
    let mut s = Search {
        g,
        mask,
        edges,
        weights,
        suffix_bound,
        remaining: g.vertices().iter().map(|v| v.upper).collect(),
        counts: vec![0; g.edge_count()],
        best: None,
        collect_all,
        found: Vec::new(),
    };
    s.run(0, 0);
    Ok(s.best.map(|best| {
        let max = Rational::from(BigInt::from(best)) / Rational::from(scale);
        (max, s.found)
    }))
}

/// Maximum weight and all optimal integral b-matchings of `g`, respecting its
/// vertex and edge bounds (exhaustive, deduplicated, deterministic order).
pub fn brute_force_optima(g: &GameInstance, cap: u64) -> Result<Optima> {
    let budget = g.multiplicity_budget();
    if budget > cap {
        return Err(Error::CapExceeded { what: "multiplicity budget", value: budget, cap });
    }
    let all = if g.vertex_count() == 64 { u64::MAX } else { (1u64 << g.vertex_count()) - 1 };
    let (max_weight, found) = search(g, all, true)?.ok_or(Error::InfeasibleGame)?;
    Ok(Optima { max_weight, matchings: found.iter().map(|c| MatchingVector::from_counts(g, c)).collect() })
}

/// Worth of the coalition `mask`; `None` when lower bounds make it infeasible.
pub(crate) fn max_weight_within(g: &GameInstance, mask: u64) -> Result<Option<Rational>> {
    Ok(search(g, mask, false)?.map(|(w, _)| w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Variant};
    use crate::numeric::rat;

    fn example5() -> GameInstance {
        let mut b = GameBuilder::new(Variant::GeneralMatching).vertices(["v1", "v2", "v3", "v4", "v5", "v6", "v7"]);
        for (a, c) in [
            ("v1", "v2"),
            ("v2", "v7"),
            ("v3", "v7"),
            ("v2", "v3"),
            ("v1", "v7"),
            ("v3", "v4"),
            ("v4", "v5"),
            ("v5", "v6"),
            ("v1", "v6"),
            ("v4", "v7"),
        ] {
            let w = if (a, c) == ("v2", "v7") { "2" } else { "1" };
            b = b.edge(a, c, rat(w));
        }
        b.build().unwrap()
    }

    #[test]
    fn example5_has_three_optima_through_v2_v7() {
        let g = example5();
        let optima = brute_force_optima(&g, DEFAULT_MULTIPLICITY_CAP).unwrap();
        assert_eq!(optima.max_weight, rat("4"));
        assert_eq!(optima.count(), 3);
        let e27 = g.edge_index("v2", "v7").unwrap();
        assert!(optima.matchings.iter().all(|m| m.multiplicities[e27] == rat("1")));
        let mut labels: Vec<String> = optima.matchings.iter().map(|m| m.label(&g)).collect();
        labels.sort();
        assert_eq!(labels, ["{v2-v7, v3-v4, v1-v6}", "{v2-v7, v3-v4, v5-v6}", "{v2-v7, v4-v5, v1-v6}"]);
    }

    #[test]
    fn example2_has_two_optima() {
        let g = GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2"])
            .right(["v1", "v2", "v3"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("1.1"))
            .edge("u2", "v2", rat("1.1"))
            .edge("u2", "v3", rat("1"))
            .build()
            .unwrap();
        let optima = brute_force_optima(&g, DEFAULT_MULTIPLICITY_CAP).unwrap();
        assert_eq!(optima.max_weight, rat("21/10"));
        assert_eq!(optima.count(), 2);
    }

    #[test]
    fn fig7_unconstrained_optimum() {
        let g = GameBuilder::new(Variant::BUnconstrained)
            .left(["u1", "u2"])
            .right(["v1", "v2"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("3"))
            .edge("u2", "v2", rat("1"))
            .capacity("u1", 2)
            .capacity("v1", 2)
            .build()
            .unwrap();
        let optima = brute_force_optima(&g, DEFAULT_MULTIPLICITY_CAP).unwrap();
        assert_eq!(optima.max_weight, rat("4"));
        assert_eq!(optima.count(), 1);
        assert_eq!(optima.matchings[0].multiplicities, vec![rat("1"), rat("1"), rat("0")]);
    }

    #[test]
    fn budget_cap_and_infeasibility() {
        let g = GameBuilder::new(Variant::BUniform)
            .left(["u"])
            .right(["v"])
            .edge("u", "v", rat("1"))
            .uniform(3)
            .build()
            .unwrap();
        assert!(matches!(brute_force_optima(&g, 5), Err(Error::CapExceeded { .. })));
        assert_eq!(brute_force_optima(&g, 6).unwrap().max_weight, rat("3"));

        // vertex needs load 2 but its only edge allows 1
        let g = GameBuilder::new(Variant::BGeneral)
            .left(["u"])
            .right(["v"])
            .bounded_edge("u", "v", rat("1"), 0, 1)
            .load_bounds("u", 2, 2)
            .load_bounds("v", 0, 2)
            .build()
            .unwrap();
        assert!(matches!(brute_force_optima(&g, 24), Err(Error::InfeasibleGame)));
    }

    #[test]
    fn empty_coalition_is_worth_zero() {
        let g = example5();
        assert_eq!(max_weight_within(&g, 0).unwrap(), Some(Rational::zero()));
    }
}
