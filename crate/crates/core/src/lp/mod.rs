//! Exact linear programming: a small LP model, a two-phase simplex over
//! [`Rational`], LP builders for every game variant, and re-optimization
//! over the optimal face of a solved program.

mod builders;
mod duality;
mod simplex;

pub use builders::{build_dual_lp, build_primal_lp};
pub use duality::{verify_duality, DualityReport};

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    /// One slot per variable.
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn activity(&self, values: &[Rational]) -> Rational {
        dot(&self.coefficients, values)
    }

    pub fn is_satisfied(&self, values: &[Rational]) -> bool {
        let lhs = self.activity(values);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    /// `|lhs - rhs|`; zero iff the row is tight.
    pub fn slack(&self, values: &[Rational]) -> Rational {
        (self.activity(values) - &self.rhs).abs()
    }
}

/// A dense linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: Vec<String>,
    pub nonnegative: Vec<bool>,
    pub objective: Vec<Rational>,
    pub sense: Sense,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            variables: Vec::new(),
            nonnegative: Vec::new(),
            objective: Vec::new(),
            sense,
            constraints: Vec::new(),
        }
    }

    /// Appends a variable with objective coefficient zero. Existing rows are padded.
    pub fn add_variable(&mut self, name: impl Into<String>, nonnegative: bool) -> usize {
        self.variables.push(name.into());
        self.nonnegative.push(nonnegative);
        self.objective.push(Rational::zero());
        for c in &mut self.constraints {
            c.coefficients.push(Rational::zero());
        }
        self.variables.len() - 1
    }

    pub fn set_objective_coefficient(&mut self, var: usize, value: Rational) {
        self.objective[var] = value;
    }

    /// Adds a row given sparse `(variable, coefficient)` terms; repeated variables accumulate.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> usize {
        let mut coefficients = vec![Rational::zero(); self.variables.len()];
        for (var, coef) in terms {
            coefficients[var] += coef;
        }
        self.constraints.push(Constraint { name: name.into(), coefficients, relation, rhs });
        self.constraints.len() - 1
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn objective_value(&self, values: &[Rational]) -> Rational {
        dot(&self.objective, values)
    }

    /// Exact feasibility of `values`, including sign restrictions.
    pub fn is_feasible(&self, values: &[Rational]) -> bool {
        values.len() == self.variables.len()
            && values.iter().zip(&self.nonnegative).all(|(v, &nonneg)| !nonneg || !v.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied(values))
    }

    pub fn check_well_formed(&self) -> Result<()> {
        let n = self.variables.len();
        if self.nonnegative.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.nonnegative.len() });
        }
        if self.objective.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.objective.len() });
        }
        if let Some(c) = self.constraints.iter().find(|c| c.coefficients.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.coefficients.len() });
        }
        let mut names: Vec<&String> = self.variables.iter().collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Lp(format!("duplicate variable name `{}`", w[0])));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub variables: Vec<String>,
    /// Aligned with `variables`; empty unless optimal.
    pub values: Vec<Rational>,
    pub objective_value: Rational,
    /// Simplex answers are basic solutions, i.e. vertices.
    pub is_vertex: bool,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn value(&self, name: &str) -> Option<&Rational> {
        let i = self.variables.iter().position(|v| v == name)?;
        self.values.get(i)
    }

    fn without_values(lp: &LinearProgram, status: LpStatus) -> Self {
        LpSolution {
            status,
            variables: lp.variables.clone(),
            values: Vec::new(),
            objective_value: Rational::zero(),
            is_vertex: false,
        }
    }
}

/// Solves `lp` exactly; returns an optimal basic solution or the infeasible /
/// unbounded status. Deterministic for a fixed input.
///
/// # Panics
/// If `lp` is not well formed (see [`LinearProgram::check_well_formed`]).
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    if let Err(e) = lp.check_well_formed() {
        panic!("malformed linear program: {e}");
    }
    match simplex::solve(lp) {
        simplex::Outcome::Optimal(values) => {
            let objective_value = lp.objective_value(&values);
            LpSolution {
                status: LpStatus::Optimal,
                variables: lp.variables.clone(),
                values,
                objective_value,
                is_vertex: true,
            }
        }
        simplex::Outcome::Infeasible => LpSolution::without_values(lp, LpStatus::Infeasible),
        simplex::Outcome::Unbounded => LpSolution::without_values(lp, LpStatus::Unbounded),
    }
}

/// Optimizes `secondary` over the optimal face `{x feasible : objective(x) == optimal_value}` of `lp`.
///
/// Infeasibility means `optimal_value` was not attainable and is reported as an error.
pub fn solve_over_optimal_face(
    lp: &LinearProgram,
    optimal_value: &Rational,
    secondary: &[Rational],
    sense: Sense,
) -> Result<LpSolution> {
    if secondary.len() != lp.variables.len() {
        return Err(Error::DimensionMismatch { expected: lp.variables.len(), found: secondary.len() });
    }
    let mut face = lp.clone();
    face.constraints.push(Constraint {
        name: "optimal-face".into(),
        coefficients: lp.objective.clone(),
        relation: Relation::Eq,
        rhs: optimal_value.clone(),
    });
    face.objective = secondary.to_vec();
    face.sense = sense;
    let solution = solve_lp(&face);
    match solution.status {
        LpStatus::Infeasible => Err(Error::Lp(format!("optimal face is empty: {optimal_value} is not the optimum"))),
        _ => Ok(solution),
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}
