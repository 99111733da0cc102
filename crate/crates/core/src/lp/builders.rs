use super::{LinearProgram, Relation, Sense};
use crate::game::{GameInstance, Variant};
use crate::numeric::Rational;

/// The LP relaxation of the game's matching problem: one `x[e]` per edge,
/// vertex rows in vertex order (U before V), then edge rows.
pub fn build_primal_lp(g: &GameInstance) -> LinearProgram {
    let mut lp = LinearProgram::new(Sense::Maximize);
    for e in 0..g.edge_count() {
        let x = lp.add_variable(format!("x[{}]", g.edge_label(e)), true);
        lp.set_objective_coefficient(x, g.edges()[e].weight.clone());
    }
    for (q, vertex) in g.vertices().iter().enumerate() {
        let terms: Vec<(usize, Rational)> = g.incident_edges(q).map(|e| (e, Rational::one())).collect();
        if g.variant() == Variant::BGeneral {
            lp.add_constraint(
                format!("lower[{}]", vertex.id),
                terms.clone(),
                Relation::Ge,
                Rational::from(vertex.lower),
            );
        }
        lp.add_constraint(format!("upper[{}]", vertex.id), terms, Relation::Le, Rational::from(vertex.upper));
    }
    match g.variant() {
        Variant::BConstrained => {
            for e in 0..g.edge_count() {
                lp.add_constraint(
                    format!("edge[{}]", g.edge_label(e)),
                    [(e, Rational::one())],
                    Relation::Le,
                    Rational::one(),
                );
            }
        }
        Variant::BGeneral => {
            for (e, edge) in g.edges().iter().enumerate() {
                let label = g.edge_label(e);
                lp.add_constraint(
                    format!("edge-lower[{label}]"),
                    [(e, Rational::one())],
                    Relation::Ge,
                    Rational::from(edge.lower),
                );
                if let Some(upper) = edge.upper {
                    lp.add_constraint(
                        format!("edge-upper[{label}]"),
                        [(e, Rational::one())],
                        Relation::Le,
                        Rational::from(upper),
                    );
                }
            }
        }
        _ => {}
    }
    lp
}

/// The dual of [`build_primal_lp`].
///
/// Variables: `y[q]` per vertex for the matching and uniform/unconstrained
/// games, plus `z[e]` per edge for the constrained game; `alpha[q]`, `beta[q]`,
/// `gamma[e]`, `delta[e]` for the general b-matching game.
pub fn build_dual_lp(g: &GameInstance) -> LinearProgram {
    let mut lp = LinearProgram::new(Sense::Minimize);
    let n = g.vertex_count();
    match g.variant() {
        Variant::BGeneral => {
            for v in g.vertices() {
                let alpha = lp.add_variable(format!("alpha[{}]", v.id), true);
                lp.set_objective_coefficient(alpha, -Rational::from(v.lower));
            }
            for v in g.vertices() {
                let beta = lp.add_variable(format!("beta[{}]", v.id), true);
                lp.set_objective_coefficient(beta, Rational::from(v.upper));
            }
            for (e, edge) in g.edges().iter().enumerate() {
                let gamma = lp.add_variable(format!("gamma[{}]", g.edge_label(e)), true);
                lp.set_objective_coefficient(gamma, -Rational::from(edge.lower));
            }
            let m = g.edge_count();
            for (e, edge) in g.edges().iter().enumerate() {
                let delta = lp.add_variable(format!("delta[{}]", g.edge_label(e)), true);
                let cap = edge.upper.unwrap_or_else(|| g.edge_capacity(e));
                lp.set_objective_coefficient(delta, Rational::from(cap));
            }
            for (e, edge) in g.edges().iter().enumerate() {
                let [i, j] = edge.ends;
                let one = Rational::one;
                lp.add_constraint(
                    format!("cover[{}]", g.edge_label(e)),
                    [
                        (n + i, one()),
                        (i, -one()),
                        (n + j, one()),
                        (j, -one()),
                        (2 * n + m + e, one()),
                        (2 * n + e, -one()),
                    ],
                    Relation::Ge,
                    edge.weight.clone(),
                );
            }
        }
        variant => {
            for v in g.vertices() {
                let y = lp.add_variable(format!("y[{}]", v.id), true);
                lp.set_objective_coefficient(y, Rational::from(v.upper));
            }
            let with_z = variant == Variant::BConstrained;
            if with_z {
                for e in 0..g.edge_count() {
                    let z = lp.add_variable(format!("z[{}]", g.edge_label(e)), true);
                    lp.set_objective_coefficient(z, Rational::one());
                }
            }
            for (e, edge) in g.edges().iter().enumerate() {
                let [i, j] = edge.ends;
                let mut terms = vec![(i, Rational::one()), (j, Rational::one())];
                if with_z {
                    terms.push((n + e, Rational::one()));
                }
                lp.add_constraint(format!("cover[{}]", g.edge_label(e)), terms, Relation::Ge, edge.weight.clone());
            }
        }
    }
    lp
}
