//! Matching oracles that do not go through the LP path, plus structural
//! checks on fractional matchings.

mod birkhoff;
mod classify;
mod enumerate;
mod structure;

pub use birkhoff::birkhoff_decompose;
pub use classify::{classify, classify_edge, classify_vertex, Classification, Label};
pub(crate) use enumerate::max_weight_within;
pub use enumerate::{brute_force_optima, Optima, DEFAULT_MULTIPLICITY_CAP};
pub use structure::{check_half_integral, HalfIntegralReport};

use crate::error::{Error, Result};
use crate::game::{GameInstance, Variant};
use crate::lp::{build_primal_lp, solve_lp, LpStatus};
use crate::numeric::Rational;

/// Edge multiplicities of a (possibly fractional) b-matching.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchingVector {
    /// One entry per edge of the owning game.
    pub multiplicities: Vec<Rational>,
    /// Inner product with the edge weights.
    pub weight: Rational,
}

impl MatchingVector {
    pub fn new(g: &GameInstance, multiplicities: Vec<Rational>) -> Self {
        assert_eq!(multiplicities.len(), g.edge_count(), "one multiplicity per edge");
        let weight =
            g.edges().iter().zip(&multiplicities).filter(|(_, x)| !x.is_zero()).map(|(e, x)| &e.weight * x).sum();
        MatchingVector { multiplicities, weight }
    }

    pub fn from_counts(g: &GameInstance, counts: &[u32]) -> Self {
        MatchingVector::new(g, counts.iter().map(|&c| Rational::from(c)).collect())
    }

    /// The 0/1 vector of an edge set.
    pub fn from_edges(g: &GameInstance, edges: &[usize]) -> Self {
        let mut counts = vec![0; g.edge_count()];
        for &e in edges {
            counts[e] += 1;
        }
        MatchingVector::from_counts(g, &counts)
    }

    pub fn load(&self, g: &GameInstance, vertex: usize) -> Rational {
        g.incident_edges(vertex).map(|e| &self.multiplicities[e]).sum()
    }

    pub fn covers(&self, g: &GameInstance, vertex: usize) -> bool {
        self.load(g, vertex).is_positive()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.multiplicities.len()).filter(|&e| !self.multiplicities[e].is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.multiplicities.iter().all(Rational::is_integer)
    }

    /// Whether every vertex and edge bound of `g` holds.
    pub fn is_feasible(&self, g: &GameInstance) -> bool {
        let edges_ok = g.edges().iter().zip(&self.multiplicities).enumerate().all(|(k, (e, x))| {
            !x.is_negative()
                && *x >= Rational::from(e.lower)
                && e.upper.is_none_or(|d| *x <= Rational::from(d))
                && *x <= Rational::from(g.edge_capacity(k))
        });
        edges_ok
            && g.vertices().iter().enumerate().all(|(q, v)| {
                let load = self.load(g, q);
                load >= Rational::from(v.lower) && load <= Rational::from(v.upper)
            })
    }

    /// `{u1-v2, u2-v3}`; multiplicities other than 1 follow as `u1-v1 (2)`, `i-j (1/2)`.
    pub fn label(&self, g: &GameInstance) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|e| {
                let m = &self.multiplicities[e];
                if *m == Rational::one() {
                    g.edge_label(e)
                } else {
                    format!("{} ({})", g.edge_label(e), m)
                }
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// An optimal vertex of the game's LP relaxation.
///
/// The vertex is checked against the polytope's known structure: integral for
/// every bipartite variant, half-integral with odd half-cycles for general graphs.
pub fn fractional_optimum(g: &GameInstance) -> Result<MatchingVector> {
    let solution = solve_lp(&build_primal_lp(g));
    match solution.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::InfeasibleGame),
        LpStatus::Unbounded => return Err(Error::Lp("matching relaxation is unbounded".into())),
    }
    let x = MatchingVector::new(g, solution.values);
    check_vertex_structure(g, &x)?;
    Ok(x)
}

pub(crate) fn check_vertex_structure(g: &GameInstance, x: &MatchingVector) -> Result<()> {
    if g.variant() == Variant::GeneralMatching {
        let report = check_half_integral(g, x);
        if !report.is_half_integral {
            return Err(Error::Integrality(format!("{} is not half-integral", x.label(g))));
        }
    } else if !x.is_integral() {
        return Err(Error::Integrality(format!("{} is not integral", x.label(g))));
    }
    Ok(())
}
