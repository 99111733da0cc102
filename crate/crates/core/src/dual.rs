//! Dual solutions of the game LPs in a variant-independent shape.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{GameInstance, Variant};
use crate::lp::{build_dual_lp, solve_lp, LpStatus};
use crate::numeric::Rational;

/// Vertex prices plus the optional edge terms of the variant's dual.
///
/// Vectors that the variant does not use are empty: `vertex_lower` and
/// `edge_lower` exist only for b-general games, `edge_upper` for b-constrained
/// (`z`) and b-general (`delta`) games.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DualSolution {
    pub vertex_upper: Vec<Rational>,
    pub vertex_lower: Vec<Rational>,
    pub edge_upper: Vec<Rational>,
    pub edge_lower: Vec<Rational>,
}

impl DualSolution {
    /// Vertex prices only.
    pub fn vertex(prices: Vec<Rational>) -> Self {
        DualSolution { vertex_upper: prices, vertex_lower: Vec::new(), edge_upper: Vec::new(), edge_lower: Vec::new() }
    }

    /// Vertex prices and per-edge `z` terms of the constrained dual.
    pub fn constrained(prices: Vec<Rational>, z: Vec<Rational>) -> Self {
        DualSolution { vertex_upper: prices, vertex_lower: Vec::new(), edge_upper: z, edge_lower: Vec::new() }
    }

    pub fn general(alpha: Vec<Rational>, beta: Vec<Rational>, gamma: Vec<Rational>, delta: Vec<Rational>) -> Self {
        DualSolution { vertex_upper: beta, vertex_lower: alpha, edge_upper: delta, edge_lower: gamma }
    }

    /// Reads the variable vector of [`build_dual_lp`].
    pub fn from_lp_values(g: &GameInstance, values: &[Rational]) -> Result<Self> {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let expected = lp_width(g);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: values.len() });
        }
        Ok(match g.variant() {
            Variant::BGeneral => DualSolution::general(
                values[..n].to_vec(),
                values[n..2 * n].to_vec(),
                values[2 * n..2 * n + m].to_vec(),
                values[2 * n + m..].to_vec(),
            ),
            Variant::BConstrained => DualSolution::constrained(values[..n].to_vec(), values[n..].to_vec()),
            _ => DualSolution::vertex(values.to_vec()),
        })
    }

    /// The variable vector of [`build_dual_lp`].
    pub fn to_lp_values(&self, g: &GameInstance) -> Result<Vec<Rational>> {
        self.check_shape(g)?;
        let mut out = Vec::with_capacity(lp_width(g));
        if g.variant() == Variant::BGeneral {
            out.extend(self.vertex_lower.iter().cloned());
            out.extend(self.vertex_upper.iter().cloned());
            out.extend(self.edge_lower.iter().cloned());
            out.extend(self.edge_upper.iter().cloned());
        } else {
            out.extend(self.vertex_upper.iter().cloned());
            out.extend(self.edge_upper.iter().cloned());
        }
        Ok(out)
    }

    pub fn check_shape(&self, g: &GameInstance) -> Result<()> {
        let (n, m) = (g.vertex_count(), g.edge_count());
        let general = g.variant() == Variant::BGeneral;
        let with_edges = general || g.variant() == Variant::BConstrained;
        let expect = |v: &[Rational], len: usize| {
            if v.len() == len {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: len, found: v.len() })
            }
        };
        expect(&self.vertex_upper, n)?;
        expect(&self.vertex_lower, if general { n } else { 0 })?;
        expect(&self.edge_upper, if with_edges { m } else { 0 })?;
        expect(&self.edge_lower, if general { m } else { 0 })
    }

    /// Objective value of the variant's dual LP.
    pub fn objective(&self, g: &GameInstance) -> Result<Rational> {
        let values = self.to_lp_values(g)?;
        Ok(build_dual_lp(g).objective_value(&values))
    }

    /// Nonnegativity and every covering row.
    pub fn is_feasible(&self, g: &GameInstance) -> Result<bool> {
        let values = self.to_lp_values(g)?;
        Ok(build_dual_lp(g).is_feasible(&values))
    }

    /// Feasible with objective equal to `optimum`; `NotOptimal` otherwise.
    pub fn ensure_optimal(&self, g: &GameInstance, optimum: &Rational) -> Result<()> {
        if !self.is_feasible(g)? {
            return Err(Error::NotOptimal("dual is infeasible".into()));
        }
        let objective = self.objective(g)?;
        if objective != *optimum {
            return Err(Error::NotOptimal(format!("dual objective {objective} differs from {optimum}")));
        }
        Ok(())
    }

    pub fn vertex_price(&self, g: &GameInstance, id: &str) -> Option<&Rational> {
        g.vertex_index(id).map(|q| &self.vertex_upper[q])
    }
}

fn lp_width(g: &GameInstance) -> usize {
    let (n, m) = (g.vertex_count(), g.edge_count());
    match g.variant() {
        Variant::BGeneral => 2 * n + 2 * m,
        Variant::BConstrained => n + m,
        _ => n,
    }
}

/// An optimal vertex of the variant's dual LP and its objective value.
pub fn optimal_dual(g: &GameInstance) -> Result<(DualSolution, Rational)> {
    let solution = solve_lp(&build_dual_lp(g));
    match solution.status {
        LpStatus::Optimal => Ok((DualSolution::from_lp_values(g, &solution.values)?, solution.objective_value)),
        // the primal always has x = 0 unless lower bounds bite, so an unbounded dual means an empty primal
        LpStatus::Unbounded => Err(Error::InfeasibleGame),
        LpStatus::Infeasible => Err(Error::Lp("dual program is infeasible".into())),
    }
}
