use num_bigint::BigInt;

use super::MatchingVector;
use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation, Sense};
use crate::numeric::Rational;

/// Writes a fractional matching of a bipartite graph as a convex combination
/// of matchings. Unused weight goes to the empty matching, listed last.
///
/// Each round takes a matching inside the current support that covers every
/// vertex whose load equals the remaining coefficient budget, and subtracts it
/// with the largest coefficient keeping all loads within the new budget.
pub fn birkhoff_decompose(g: &GameInstance, x: &MatchingVector) -> Result<Vec<(Rational, MatchingVector)>> {
    if !g.variant().is_bipartite() {
        return Err(Error::WrongVariant { expected: "a bipartite game", found: g.variant() });
    }
    if x.multiplicities.len() != g.edge_count() {
        return Err(Error::DimensionMismatch { expected: g.edge_count(), found: x.multiplicities.len() });
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| x.multiplicities[e].is_negative()) {
        return Err(Error::Decomposition(format!("negative entry on {}", g.edge_label(e))));
    }
    if let Some(q) = (0..g.vertex_count()).find(|&q| x.load(g, q) > Rational::one()) {
        return Err(Error::Decomposition(format!("load of {} exceeds 1", g.vertex(q).id)));
    }

    let mut rest = x.multiplicities.clone();
    let mut budget = Rational::one();
    let mut terms = Vec::new();
    while rest.iter().any(|v| !v.is_zero()) {
        let loads: Vec<Rational> = (0..g.vertex_count()).map(|q| g.incident_edges(q).map(|e| &rest[e]).sum()).collect();
        let tight: Vec<bool> = loads.iter().map(|l| *l == budget).collect();
        let chosen = covering_matching(g, &rest, &tight)?;

        let mut covered = vec![false; g.vertex_count()];
        for &e in &chosen {
            for q in g.edges()[e].ends {
                covered[q] = true;
            }
        }
        let mut theta = chosen.iter().map(|&e| rest[e].clone()).min().expect("support is nonempty");
        for q in 0..g.vertex_count() {
            if !covered[q] && loads[q].is_positive() {
                theta = theta.min(&budget - &loads[q]);
            }
        }
        theta = theta.min(budget.clone());
        if !theta.is_positive() {
            return Err(Error::Decomposition("no progress possible".into()));
        }
        for &e in &chosen {
            rest[e] -= &theta;
        }
        budget -= &theta;
        terms.push((theta, MatchingVector::from_edges(g, &chosen)));
    }
    if budget.is_positive() {
        terms.push((budget, MatchingVector::from_edges(g, &[])));
    }
    Ok(terms)
}

/// A matching inside the support of `rest` covering every tight vertex,
/// preferring lower edge indices among equally good choices.
fn covering_matching(g: &GameInstance, rest: &[Rational], tight: &[bool]) -> Result<Vec<usize>> {
    let support: Vec<usize> = (0..g.edge_count()).filter(|&e| rest[e].is_positive()).collect();
    let m = support.len();
    // index preference weights sum below one unit of the coverage weight
    let unit = Rational::from(BigInt::from(1u8) << (m + 1));
    let mut lp = LinearProgram::new(Sense::Maximize);
    for (k, &e) in support.iter().enumerate() {
        let var = lp.add_variable(format!("m[{}]", g.edge_label(e)), true);
        let [a, b] = g.edges()[e].ends;
        let tight_ends = i64::from(tight[a]) + i64::from(tight[b]);
        let preference = Rational::from(BigInt::from(1u8) << (m - k));
        lp.set_objective_coefficient(var, &unit * &Rational::from_integer(tight_ends) + preference);
    }
    for q in 0..g.vertex_count() {
        let terms: Vec<(usize, Rational)> = support
            .iter()
            .enumerate()
            .filter(|(_, &e)| g.edges()[e].touches(q))
            .map(|(k, _)| (k, Rational::one()))
            .collect();
        if !terms.is_empty() {
            lp.add_constraint(format!("vertex[{}]", g.vertex(q).id), terms, Relation::Le, Rational::one());
        }
    }
    let solution = solve_lp(&lp);
    if solution.status != LpStatus::Optimal || !solution.values.iter().all(Rational::is_integer) {
        return Err(Error::Decomposition("support has no integral matching".into()));
    }
    let chosen: Vec<usize> =
        support.iter().zip(&solution.values).filter(|(_, v)| !v.is_zero()).map(|(&e, _)| e).collect();
    let mut covered = vec![false; g.vertex_count()];
    for &e in &chosen {
        for q in g.edges()[e].ends {
            covered[q] = true;
        }
    }
    if let Some(q) = (0..g.vertex_count()).find(|&q| tight[q] && !covered[q]) {
        return Err(Error::Decomposition(format!("tight vertex {} cannot be covered", g.vertex(q).id)));
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Variant};
    use crate::matching::{brute_force_optima, DEFAULT_MULTIPLICITY_CAP};
    use crate::numeric::rat;

    fn resum(g: &GameInstance, terms: &[(Rational, MatchingVector)]) -> Vec<Rational> {
        let mut total = vec![Rational::zero(); g.edge_count()];
        for (c, m) in terms {
            for (t, v) in total.iter_mut().zip(&m.multiplicities) {
                *t += c * v;
            }
        }
        total
    }

    #[test]
    fn four_cycle_halves() {
        let g = GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2"])
            .right(["v1", "v2"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("1"))
            .edge("u2", "v1", rat("1"))
            .edge("u2", "v2", rat("1"))
            .build()
            .unwrap();
        let x = MatchingVector::new(&g, vec![rat("1/2"); 4]);
        let terms = birkhoff_decompose(&g, &x).unwrap();
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|(c, m)| *c == rat("1/2") && m.support().count() == 2));
        assert_eq!(resum(&g, &terms), x.multiplicities);
    }

    #[test]
    fn example2_halves_split_into_the_two_optima() {
        let g = GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2"])
            .right(["v1", "v2", "v3"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("1.1"))
            .edge("u2", "v2", rat("1.1"))
            .edge("u2", "v3", rat("1"))
            .build()
            .unwrap();
        let x = MatchingVector::new(&g, vec![rat("1/2"); 4]);
        let terms = birkhoff_decompose(&g, &x).unwrap();
        assert_eq!(resum(&g, &terms), x.multiplicities);
        let mut parts: Vec<MatchingVector> = terms.iter().map(|(_, m)| m.clone()).collect();
        parts.sort();
        let mut optima = brute_force_optima(&g, DEFAULT_MULTIPLICITY_CAP).unwrap().matchings;
        optima.sort();
        assert_eq!(parts, optima);
        assert!(terms.iter().all(|(c, _)| *c == rat("1/2")));
    }

    #[test]
    fn integral_input_is_one_term() {
        let g = GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2"])
            .right(["v1", "v2"])
            .edge("u1", "v1", rat("3"))
            .edge("u2", "v2", rat("1"))
            .edge("u1", "v2", rat("1"))
            .build()
            .unwrap();
        let x = MatchingVector::from_edges(&g, &[0, 1]);
        let terms = birkhoff_decompose(&g, &x).unwrap();
        assert_eq!(terms, vec![(rat("1"), x)]);
    }

    #[test]
    fn slack_goes_to_the_empty_matching() {
        let g =
            GameBuilder::new(Variant::Assignment).left(["u"]).right(["v"]).edge("u", "v", rat("1")).build().unwrap();
        let terms = birkhoff_decompose(&g, &MatchingVector::new(&g, vec![rat("1/3")])).unwrap();
        assert_eq!(
            terms,
            vec![(rat("1/3"), MatchingVector::from_edges(&g, &[0])), (rat("2/3"), MatchingVector::from_edges(&g, &[]))]
        );
        assert_eq!(birkhoff_decompose(&g, &MatchingVector::new(&g, vec![rat("0")])).unwrap().len(), 1);
    }

    #[test]
    fn overloaded_input_is_rejected() {
        let g = GameBuilder::new(Variant::Assignment)
            .left(["u1"])
            .right(["v1", "v2"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("1"))
            .build()
            .unwrap();
        let x = MatchingVector::new(&g, vec![rat("2/3"), rat("2/3")]);
        assert!(matches!(birkhoff_decompose(&g, &x), Err(Error::Decomposition(_))));
    }
}
