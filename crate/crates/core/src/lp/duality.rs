use super::{build_dual_lp, build_primal_lp, LinearProgram, LpSolution};
use crate::error::{Error, Result};
use crate::game::GameInstance;
use crate::numeric::Rational;

/// Exact feasibility, objective and tightness facts about a primal/dual pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub primal_objective: Rational,
    pub dual_objective: Rational,
    pub objectives_equal: bool,
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    /// Names of primal rows holding with equality.
    pub tight_primal_rows: Vec<String>,
    /// Names of dual rows holding with equality.
    pub tight_dual_rows: Vec<String>,
    /// `lhs - rhs` of every dual covering row, in row order.
    pub dual_row_slacks: Vec<(String, Rational)>,
}

/// Checks `x` against the primal of `g` and `y` against its dual.
pub fn verify_duality(g: &GameInstance, x: &LpSolution, y: &LpSolution) -> Result<DualityReport> {
    let primal = build_primal_lp(g);
    let dual = build_dual_lp(g);
    check_len(&primal, x)?;
    check_len(&dual, y)?;
    let tight = |lp: &LinearProgram, values: &[Rational]| -> Vec<String> {
        lp.constraints.iter().filter(|c| c.slack(values).is_zero()).map(|c| c.name.clone()).collect()
    };
    let primal_objective = primal.objective_value(&x.values);
    let dual_objective = dual.objective_value(&y.values);
    Ok(DualityReport {
        objectives_equal: primal_objective == dual_objective,
        primal_objective,
        dual_objective,
        primal_feasible: primal.is_feasible(&x.values),
        dual_feasible: dual.is_feasible(&y.values),
        tight_primal_rows: tight(&primal, &x.values),
        tight_dual_rows: tight(&dual, &y.values),
        dual_row_slacks: dual.constraints.iter().map(|c| (c.name.clone(), c.activity(&y.values) - &c.rhs)).collect(),
    })
}

fn check_len(lp: &LinearProgram, s: &LpSolution) -> Result<()> {
    if s.values.len() != lp.variables.len() {
        return Err(Error::DimensionMismatch { expected: lp.variables.len(), found: s.values.len() });
    }
    Ok(())
}
