use serde::Serialize;

use super::{check_concurrency, coalition_system, core_membership_via_system, Caps, Imputation};
use crate::error::{Error, Result};
use crate::game::{GameInstance, Side, Variant};
use crate::lp::{build_dual_lp, solve_lp, solve_over_optimal_face, LinearProgram, Sense};
use crate::matching::{classify, Label};
use crate::numeric::Rational;

/// The set of optimal duals of an assignment or concurrent general matching
/// game, which is exactly its core.
#[derive(Debug, Clone)]
pub struct DualFace {
    lp: LinearProgram,
    optimum: Rational,
}

impl DualFace {
    /// Fails with `CoreEmpty` for a general matching game whose fractional and
    /// integral optima differ.
    pub fn new(g: &GameInstance, caps: &Caps) -> Result<Self> {
        match g.variant() {
            Variant::Assignment => {}
            Variant::GeneralMatching => {
                let report = check_concurrency(g, caps)?;
                if !report.concurrent {
                    return Err(Error::CoreEmpty(Box::new(report)));
                }
            }
            found => return Err(Error::WrongVariant { expected: "assignment or general-matching", found }),
        }
        let lp = build_dual_lp(g);
        let optimum = solve_lp(&lp).objective_value;
        Ok(DualFace { lp, optimum })
    }

    pub fn optimum(&self) -> &Rational {
        &self.optimum
    }

    /// Optimal value of `objective` (one coefficient per vertex) over the
    /// face, and a vertex of the face attaining it.
    pub fn optimize(&self, objective: &[Rational], sense: Sense) -> Result<(Rational, Imputation)> {
        let solution = solve_over_optimal_face(&self.lp, &self.optimum, objective, sense)?;
        let value = crate::lp::dot(objective, &solution.values);
        Ok((value, Imputation::new(solution.values)))
    }

    fn unit(&self, q: usize) -> Vec<Rational> {
        let mut objective = vec![Rational::zero(); self.lp.variables.len()];
        objective[q] = Rational::one();
        objective
    }
}

/// Largest profit a vertex gets over the core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexPayment {
    pub vertex: String,
    pub paid_sometimes: bool,
    pub max_profit: Rational,
}

/// Largest overpayment `y_u + y_v - w_e` of an edge over the core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePayment {
    pub edge: String,
    pub always_fairly_paid: bool,
    pub max_slack: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaymentReport {
    pub vertices: Vec<VertexPayment>,
    pub edges: Vec<EdgePayment>,
}

fn vertex_payment(g: &GameInstance, face: &DualFace, q: usize) -> Result<VertexPayment> {
    let (max_profit, _) = face.optimize(&face.unit(q), Sense::Maximize)?;
    Ok(VertexPayment { vertex: g.vertex(q).id.clone(), paid_sometimes: max_profit.is_positive(), max_profit })
}

fn edge_payment(g: &GameInstance, face: &DualFace, e: usize) -> Result<EdgePayment> {
    let [a, b] = g.edges()[e].ends;
    let mut objective = face.unit(a);
    objective[b] = Rational::one();
    let (sum, _) = face.optimize(&objective, Sense::Maximize)?;
    let max_slack = sum - &g.edges()[e].weight;
    Ok(EdgePayment { edge: g.edge_label(e), always_fairly_paid: max_slack.is_zero(), max_slack })
}

pub fn paid_sometimes(g: &GameInstance, id: &str, caps: &Caps) -> Result<VertexPayment> {
    let q = g.vertex_index(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
    vertex_payment(g, &DualFace::new(g, caps)?, q)
}

pub fn always_fairly_paid(g: &GameInstance, a: &str, b: &str, caps: &Caps) -> Result<EdgePayment> {
    let e = g.edge_index(a, b).ok_or_else(|| Error::UnknownEdge(format!("{a}-{b}")))?;
    edge_payment(g, &DualFace::new(g, caps)?, e)
}

pub fn payment_report(g: &GameInstance, caps: &Caps) -> Result<PaymentReport> {
    let face = DualFace::new(g, caps)?;
    Ok(PaymentReport {
        vertices: (0..g.vertex_count()).map(|q| vertex_payment(g, &face, q)).collect::<Result<_>>()?,
        edges: (0..g.edge_count()).map(|e| edge_payment(g, &face, e)).collect::<Result<_>>()?,
    })
}

/// `(min, max)` profit of every vertex over the core.
pub fn profit_ranges(g: &GameInstance, caps: &Caps) -> Result<Vec<(Rational, Rational)>> {
    let face = DualFace::new(g, caps)?;
    (0..g.vertex_count())
        .map(|q| {
            let (lo, _) = face.optimize(&face.unit(q), Sense::Minimize)?;
            let (hi, _) = face.optimize(&face.unit(q), Sense::Maximize)?;
            Ok((lo, hi))
        })
        .collect()
}

/// The core points favouring each side as much as possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Antipodal {
    /// Maximizes the total profit of U.
    pub u_optimal: Imputation,
    /// Maximizes the total profit of V.
    pub v_optimal: Imputation,
}

pub fn antipodal_imputations(g: &GameInstance, caps: &Caps) -> Result<Antipodal> {
    if g.variant() != Variant::Assignment {
        return Err(Error::WrongVariant { expected: "assignment", found: g.variant() });
    }
    let face = DualFace::new(g, caps)?;
    let side_sum = |side: Side| -> Vec<Rational> {
        g.vertices().iter().map(|v| if v.side == side { Rational::one() } else { Rational::zero() }).collect()
    };
    let (_, u_optimal) = face.optimize(&side_sum(Side::U), Sense::Maximize)?;
    let (_, v_optimal) = face.optimize(&side_sum(Side::V), Sense::Maximize)?;
    Ok(Antipodal { u_optimal, v_optimal })
}

/// Coordinate-wise meet (min on U, max on V) and join (max on U, min on V) of
/// two core imputations of a bipartite game; both results are checked.
pub fn meet_join(g: &GameInstance, p: &Imputation, q: &Imputation, caps: &Caps) -> Result<(Imputation, Imputation)> {
    if !g.variant().is_bipartite() {
        return Err(Error::WrongVariant { expected: "a bipartite game", found: g.variant() });
    }
    let sys = coalition_system(g, caps)?;
    for (name, imp) in [("first", p), ("second", q)] {
        if !core_membership_via_system(&sys, imp)?.in_core {
            return Err(Error::NotInCore(format!("{name} input {imp}")));
        }
    }
    let combine = |u_side_max: bool| -> Imputation {
        let profits = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let (a, b) = (p.profits[k].clone(), q.profits[k].clone());
                if (v.side == Side::U) == u_side_max {
                    a.max(b)
                } else {
                    a.min(b)
                }
            })
            .collect();
        Imputation::new(profits)
    };
    let (meet, join) = (combine(false), combine(true));
    for (name, imp) in [("meet", &meet), ("join", &join)] {
        if !core_membership_via_system(&sys, imp)?.in_core {
            return Err(Error::NotInCore(format!("{name} {imp}")));
        }
    }
    Ok((meet, join))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRow {
    pub vertex: String,
    pub label: Label,
    pub paid_sometimes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeRow {
    pub edge: String,
    pub label: Label,
    pub always_fairly_paid: bool,
}

/// Classification labels next to payment facts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    pub degenerate: bool,
    pub optimum_count: usize,
    pub viable_vertices: Vec<String>,
    pub viable_edges: Vec<String>,
    pub never_paid_vertices: Vec<String>,
    pub always_fair_edges: Vec<String>,
    pub vertices: Vec<VertexRow>,
    pub edges: Vec<EdgeRow>,
}

pub fn degeneracy_report(g: &GameInstance, caps: &Caps) -> Result<DegeneracyReport> {
    let classes = classify(g, caps.multiplicity)?;
    let payments = payment_report(g, caps)?;
    let vertices: Vec<VertexRow> = payments
        .vertices
        .into_iter()
        .zip(&classes.vertices)
        .map(|(p, &label)| VertexRow { vertex: p.vertex, label, paid_sometimes: p.paid_sometimes })
        .collect();
    let edges: Vec<EdgeRow> = payments
        .edges
        .into_iter()
        .zip(&classes.edges)
        .map(|(p, &label)| EdgeRow { edge: p.edge, label, always_fairly_paid: p.always_fairly_paid })
        .collect();
    Ok(DegeneracyReport {
        degenerate: classes.optima.count() > 1,
        optimum_count: classes.optima.count(),
        viable_vertices: vertices.iter().filter(|r| r.label == Label::Viable).map(|r| r.vertex.clone()).collect(),
        viable_edges: edges.iter().filter(|r| r.label == Label::Viable).map(|r| r.edge.clone()).collect(),
        never_paid_vertices: vertices.iter().filter(|r| !r.paid_sometimes).map(|r| r.vertex.clone()).collect(),
        always_fair_edges: edges.iter().filter(|r| r.always_fairly_paid).map(|r| r.edge.clone()).collect(),
        vertices,
        edges,
    })
}
