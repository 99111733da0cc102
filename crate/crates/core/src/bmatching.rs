//! Imputations built from optimal duals of b-matching games, the question of
//! which core imputations arise that way, and sampling of the full core.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{coalition_system, core_membership_via_system, grand_worth, Caps, CoalitionSystem, Imputation};
use crate::dual::{optimal_dual, DualSolution};
use crate::error::{Error, Result};
use crate::game::{GameInstance, Side, Variant};
use crate::lp::{build_dual_lp, solve_lp, solve_over_optimal_face, LinearProgram, LpStatus, Relation, Sense};
use crate::numeric::Rational;

/// How each edge's dual term is shared between its two endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitScheme {
    /// Everything to the U endpoint.
    AllLeft,
    /// Everything to the V endpoint.
    AllRight,
    /// Half each.
    Balanced,
    /// Explicit `(to_left, to_right)` parts per edge for the upper-bound
    /// duals (`z` or `delta`) and for the lower-bound duals (`gamma`; empty
    /// unless the game is b-general).
    Custom { upper: Vec<(Rational, Rational)>, lower: Vec<(Rational, Rational)> },
}

/// `(split_to_left, split_to_right)` per edge.
type Parts = Vec<(Rational, Rational)>;

impl SplitScheme {
    fn parts(&self, totals: &[Rational], custom: impl FnOnce() -> Parts, what: &str) -> Result<Parts> {
        let half = Rational::new(1, 2);
        let parts: Parts = match self {
            SplitScheme::AllLeft => totals.iter().map(|t| (t.clone(), Rational::zero())).collect(),
            SplitScheme::AllRight => totals.iter().map(|t| (Rational::zero(), t.clone())).collect(),
            SplitScheme::Balanced => totals.iter().map(|t| (t * &half, t * &half)).collect(),
            SplitScheme::Custom { .. } => custom(),
        };
        if parts.len() != totals.len() {
            return Err(Error::SplitMismatch(format!("{what}: {} parts for {} edges", parts.len(), totals.len())));
        }
        for (k, ((left, right), total)) in parts.iter().zip(totals).enumerate() {
            if left.is_negative() || right.is_negative() || &(left + right) != total {
                return Err(Error::SplitMismatch(format!("{what} of edge #{k}: {left} + {right} != {total}")));
            }
        }
        Ok(parts)
    }

    fn upper_parts(&self, totals: &[Rational]) -> Result<Parts> {
        self.parts(
            totals,
            || match self {
                SplitScheme::Custom { upper, .. } => upper.clone(),
                _ => unreachable!(),
            },
            "upper split",
        )
    }

    fn lower_parts(&self, totals: &[Rational]) -> Result<Parts> {
        self.parts(
            totals,
            || match self {
                SplitScheme::Custom { lower, .. } => lower.clone(),
                _ => unreachable!(),
            },
            "lower split",
        )
    }
}

fn expect_variant(g: &GameInstance, allowed: &[Variant], expected: &'static str) -> Result<()> {
    if allowed.contains(&g.variant()) {
        Ok(())
    } else {
        Err(Error::WrongVariant { expected, found: g.variant() })
    }
}

fn ensure_in_core(sys: &CoalitionSystem, imp: &Imputation) -> Result<()> {
    let check = core_membership_via_system(sys, imp)?;
    if check.in_core {
        return Ok(());
    }
    let reason = match (&check.negative, &check.witness) {
        (Some(q), _) => format!("{imp}: negative profit for {}", sys.vertex_ids[*q]),
        (_, Some(w)) => format!("{imp}: coalition receives {} < worth {}", w.allocated, w.worth),
        _ => format!("{imp}: total {} differs from worth {}", check.total, check.grand_worth),
    };
    Err(Error::NotInCore(reason))
}

fn scaled(g: &GameInstance, prices: &[Rational]) -> Imputation {
    Imputation::new(g.vertices().iter().zip(prices).map(|(v, y)| y * &Rational::from(v.upper)).collect())
}

/// Profit `b_c · y_q` for a b-uniform game.
pub fn uniform_core_bijection(g: &GameInstance, y: &DualSolution, caps: &Caps) -> Result<Imputation> {
    expect_variant(g, &[Variant::BUniform], "b-uniform")?;
    y.ensure_optimal(g, &grand_worth(g, caps)?)?;
    Ok(scaled(g, &y.vertex_upper))
}

/// Inverse of [`uniform_core_bijection`]; `imp` must be a core imputation.
pub fn uniform_core_inverse(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<DualSolution> {
    expect_variant(g, &[Variant::BUniform], "b-uniform")?;
    let sys = coalition_system(g, caps)?;
    ensure_in_core(&sys, imp)?;
    let y = unscaled(g, imp);
    y.ensure_optimal(g, &sys.grand_worth)?;
    Ok(y)
}

fn unscaled(g: &GameInstance, imp: &Imputation) -> DualSolution {
    DualSolution::vertex(g.vertices().iter().zip(&imp.profits).map(|(v, p)| p / &Rational::from(v.upper)).collect())
}

/// Profit `b_q · y_q` for a b-unconstrained (or b-uniform) game; the result
/// is checked against the connected-coalition system.
pub fn uncon_imputation_from_dual(g: &GameInstance, y: &DualSolution, caps: &Caps) -> Result<Imputation> {
    expect_variant(g, &[Variant::BUnconstrained, Variant::BUniform], "b-unconstrained")?;
    let sys = coalition_system(g, caps)?;
    y.ensure_optimal(g, &sys.grand_worth)?;
    let imp = scaled(g, &y.vertex_upper);
    ensure_in_core(&sys, &imp)?;
    Ok(imp)
}

/// Whether `(profit_q / b_q)` is an optimal dual.
pub fn in_dual_image_uncon(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<bool> {
    expect_variant(g, &[Variant::BUnconstrained, Variant::BUniform], "b-unconstrained")?;
    check_len(g, imp)?;
    let y = unscaled(g, imp);
    Ok(y.is_feasible(g)? && y.objective(g)? == grand_worth(g, caps)?)
}

fn check_len(g: &GameInstance, imp: &Imputation) -> Result<()> {
    if imp.profits.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch { expected: g.vertex_count(), found: imp.profits.len() });
    }
    Ok(())
}

/// Adds each edge's parts to its endpoints: the left part to the U end.
fn add_edge_parts(g: &GameInstance, profits: &mut [Rational], parts: &Parts, scale: impl Fn(usize) -> Rational) {
    for (e, (left, right)) in parts.iter().enumerate() {
        let [u, v] = g.edges()[e].ends;
        let factor = scale(e);
        profits[u] += left * &factor;
        profits[v] += right * &factor;
    }
}

/// `b_i·u_i + ∑ split_to_left` on U and `b_j·v_j + ∑ split_to_right` on V.
pub fn con_imputation_from_dual(
    g: &GameInstance,
    y: &DualSolution,
    split: &SplitScheme,
    caps: &Caps,
) -> Result<Imputation> {
    expect_variant(g, &[Variant::BConstrained], "b-constrained")?;
    let sys = coalition_system(g, caps)?;
    y.ensure_optimal(g, &sys.grand_worth)?;
    let parts = split.upper_parts(&y.edge_upper)?;
    let mut profits = scaled(g, &y.vertex_upper).profits;
    add_edge_parts(g, &mut profits, &parts, |_| Rational::one());
    let imp = Imputation::new(profits);
    ensure_in_core(&sys, &imp)?;
    Ok(imp)
}

fn edge_upper_bound(g: &GameInstance, e: usize) -> Rational {
    Rational::from(g.edges()[e].upper.unwrap_or_else(|| g.edge_capacity(e)))
}

/// `μ_q = b_q β_q − a_q α_q + ∑_e (d_e δ^q_e − c_e γ^q_e)` for a b-general game.
///
/// Negative entries are reported as [`Error::NegativeProfit`]; otherwise the
/// result is checked against the coalition system, where coalitions without
/// a feasible b-matching impose nothing.
pub fn gen_imputation_from_dual(
    g: &GameInstance,
    y: &DualSolution,
    split: &SplitScheme,
    caps: &Caps,
) -> Result<Imputation> {
    let imp = gen_imputation_unchecked(g, y, split, caps)?;
    if let Some(q) = imp.profits.iter().position(Rational::is_negative) {
        return Err(Error::NegativeProfit { vertex: g.vertex(q).id.clone(), value: imp.profits[q].clone() });
    }
    ensure_in_core(&coalition_system(g, caps)?, &imp)?;
    Ok(imp)
}

/// The b-general construction without the sign and core checks.
pub fn gen_imputation_unchecked(
    g: &GameInstance,
    y: &DualSolution,
    split: &SplitScheme,
    caps: &Caps,
) -> Result<Imputation> {
    expect_variant(g, &[Variant::BGeneral], "b-general")?;
    y.ensure_optimal(g, &grand_worth(g, caps)?)?;
    let upper = split.upper_parts(&y.edge_upper)?;
    let lower = split.lower_parts(&y.edge_lower)?;
    let mut profits: Vec<Rational> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(q, v)| &y.vertex_upper[q] * &Rational::from(v.upper) - &y.vertex_lower[q] * &Rational::from(v.lower))
        .collect();
    add_edge_parts(g, &mut profits, &upper, |e| edge_upper_bound(g, e));
    add_edge_parts(g, &mut profits, &lower, |e| -Rational::from(g.edges()[e].lower));
    Ok(Imputation::new(profits))
}

/// Profits from an optimal dual and a split, whatever the variant.
pub fn imputation_from_dual(
    g: &GameInstance,
    y: &DualSolution,
    split: &SplitScheme,
    caps: &Caps,
) -> Result<Imputation> {
    match g.variant() {
        Variant::Assignment | Variant::GeneralMatching => crate::analysis::core_imputation_from_dual(g, y, caps),
        Variant::BUniform => uniform_core_bijection(g, y, caps),
        Variant::BUnconstrained => uncon_imputation_from_dual(g, y, caps),
        Variant::BConstrained => con_imputation_from_dual(g, y, split, caps),
        Variant::BGeneral => gen_imputation_from_dual(g, y, split, caps),
    }
}

/// Whether some optimal dual and split produce `imp` for a b-constrained game,
/// decided as one LP feasibility problem.
pub fn in_dual_image_con(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<bool> {
    expect_variant(g, &[Variant::BConstrained], "b-constrained")?;
    dual_image_feasible(g, imp, caps)
}

/// Same question for a b-general game.
pub fn in_dual_image_gen(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<bool> {
    expect_variant(g, &[Variant::BGeneral], "b-general")?;
    dual_image_feasible(g, imp, caps)
}

/// Whether `imp` arises from some optimal dual, for any variant.
pub fn in_dual_image(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<bool> {
    match g.variant() {
        Variant::BConstrained | Variant::BGeneral => dual_image_feasible(g, imp, caps),
        _ => {
            check_len(g, imp)?;
            let y = unscaled(g, imp);
            Ok(y.is_feasible(g)? && y.objective(g)? == grand_worth(g, caps)?)
        }
    }
}

/// Dual feasibility, optimality, split variables and the per-vertex
/// reconstruction equalities, all in one system.
fn dual_image_feasible(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<bool> {
    check_len(g, imp)?;
    let worth = grand_worth(g, caps)?;
    let mut lp: LinearProgram = build_dual_lp(g);
    let dual_width = lp.variables.len();
    lp.add_constraint("optimal", lp.objective.iter().cloned().enumerate().collect::<Vec<_>>(), Relation::Eq, worth);
    lp.objective = vec![Rational::zero(); dual_width];

    let (n, m) = (g.vertex_count(), g.edge_count());
    let general = g.variant() == Variant::BGeneral;
    // dual column of each split edge term, and the factor applied to it in the profits
    let mut split_terms: Vec<(usize, Rational)> = Vec::new();
    for e in 0..m {
        if general {
            split_terms.push((2 * n + m + e, edge_upper_bound(g, e)));
        } else {
            split_terms.push((n + e, Rational::one()));
        }
    }
    if general {
        for e in 0..m {
            split_terms.push((2 * n + e, -Rational::from(g.edges()[e].lower)));
        }
    }

    // profit rows collect b_q·(upper dual) − a_q·(lower dual) plus the left/right parts
    let mut rows: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|q| {
            let v = g.vertex(q);
            if general {
                vec![(n + q, Rational::from(v.upper)), (q, -Rational::from(v.lower))]
            } else {
                vec![(q, Rational::from(v.upper))]
            }
        })
        .collect();
    for (k, (column, factor)) in split_terms.iter().enumerate() {
        let e = k % m;
        let [u, v] = g.edges()[e].ends;
        let left = lp.add_variable(format!("left[{k}]"), true);
        let right = lp.add_variable(format!("right[{k}]"), true);
        lp.add_constraint(
            format!("split[{k}]"),
            [(left, Rational::one()), (right, Rational::one()), (*column, -Rational::one())],
            Relation::Eq,
            Rational::zero(),
        );
        if !factor.is_zero() {
            rows[u].push((left, factor.clone()));
            rows[v].push((right, factor.clone()));
        }
    }
    for (q, terms) in rows.into_iter().enumerate() {
        lp.add_constraint(format!("profit[{}]", g.vertex(q).id), terms, Relation::Eq, imp.profits[q].clone());
    }
    lp.objective.resize(lp.variables.len(), Rational::zero());
    Ok(solve_lp(&lp).status == LpStatus::Optimal)
}

/// Up to `count` distinct vertices of the core polytope (the coalition
/// system), found by maximizing random small-integer objectives.
pub fn sample_core_vertices(g: &GameInstance, caps: &Caps, seed: u64, count: usize) -> Result<Vec<Imputation>> {
    let sys = coalition_system(g, caps)?;
    let n = g.vertex_count();
    let mut lp = LinearProgram::new(Sense::Maximize);
    for id in &sys.vertex_ids {
        lp.add_variable(format!("p[{id}]"), true);
    }
    for inequality in &sys.inequalities {
        let terms: Vec<(usize, Rational)> =
            inequality.coalition.members().iter().map(|&q| (q, Rational::one())).collect();
        lp.add_constraint(
            format!("coalition{}", inequality.coalition.label(g)),
            terms,
            Relation::Ge,
            inequality.rhs.clone(),
        );
    }
    lp.add_constraint(
        "grand",
        (0..n).map(|q| (q, Rational::one())).collect::<Vec<_>>(),
        Relation::Eq,
        sys.grand_worth.clone(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Imputation> = Vec::new();
    for _ in 0..count * 4 {
        if found.len() == count {
            break;
        }
        lp.objective = (0..n).map(|_| Rational::from_integer(rng.gen_range(-5..=5))).collect();
        let solution = solve_lp(&lp);
        if solution.status != LpStatus::Optimal {
            // an empty system means an empty core; sampling cannot help
            return Ok(found);
        }
        let imp = Imputation::new(solution.values);
        if !found.contains(&imp) {
            found.push(imp);
        }
    }
    Ok(found)
}

/// Up to `count` distinct optimal dual vertices, found by optimizing random
/// small-integer objectives over the optimal face of the dual LP.
pub fn sample_optimal_duals(g: &GameInstance, seed: u64, count: usize) -> Result<Vec<DualSolution>> {
    let (first, optimum) = optimal_dual(g)?;
    let lp = build_dual_lp(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = vec![first];
    for _ in 0..count * 4 {
        if found.len() >= count {
            break;
        }
        let objective: Vec<Rational> =
            (0..lp.variables.len()).map(|_| Rational::from_integer(rng.gen_range(-5..=5))).collect();
        let solution = solve_over_optimal_face(&lp, &optimum, &objective, Sense::Maximize)?;
        if solution.status != LpStatus::Optimal {
            continue;
        }
        let y = DualSolution::from_lp_values(g, &solution.values)?;
        if !found.contains(&y) {
            found.push(y);
        }
    }
    Ok(found)
}

/// Total profit of each side.
pub fn side_totals(g: &GameInstance, imp: &Imputation) -> (Rational, Rational) {
    let mut u = Rational::zero();
    let mut v = Rational::zero();
    for (vertex, p) in g.vertices().iter().zip(&imp.profits) {
        match vertex.side {
            Side::U => u += p,
            Side::V => v += p,
        }
    }
    (u, v)
}
