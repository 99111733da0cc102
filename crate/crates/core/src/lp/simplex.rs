//! Dense two-phase tableau simplex with Bland's rule.

use super::{LinearProgram, Relation, Sense};
use crate::numeric::Rational;

pub(super) enum Outcome {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

enum Step {
    Optimal,
    Unbounded,
}

/// Columns map to `lp` variables as `x_j = pos_j - neg_j`; `neg_j` exists only for free variables.
struct Tableau {
    /// Each row holds `width` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `d_j` (enter while some `d_j < 0`), objective value in the last slot.
    costs: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
    /// Columns allowed to enter the basis.
    enterable: Vec<bool>,
}

impl Tableau {
    fn rhs(&self, row: usize) -> &Rational {
        &self.rows[row][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let support: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[row][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[row]);
        for (i, other) in self.rows.iter_mut().enumerate() {
            if i == row || other.is_empty() {
                continue;
            }
            eliminate(other, &pivot_row, &support, col);
        }
        eliminate(&mut self.costs, &pivot_row, &support, col);
        self.rows[row] = pivot_row;
        self.basis[row] = col;
    }

    /// Runs Bland's rule until optimal or unbounded.
    fn optimize(&mut self) -> Step {
        loop {
            let entering = (0..self.width).find(|&j| self.enterable[j] && self.costs[j].is_negative());
            let Some(col) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[col];
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Step::Unbounded,
            }
        }
    }

    /// Sets `costs` for maximizing `objective · x` given the current basis.
    fn load_objective(&mut self, objective: &[Rational]) {
        self.costs = vec![Rational::zero(); self.width + 1];
        for (j, c) in objective.iter().enumerate() {
            if !c.is_zero() {
                self.costs[j] = -c;
            }
        }
        for (i, &b) in self.basis.iter().enumerate() {
            if self.costs[b].is_zero() {
                continue;
            }
            let factor = self.costs[b].clone();
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    let delta = &factor * v;
                    self.costs[j] -= delta;
                }
            }
        }
    }
}

fn eliminate(target: &mut [Rational], pivot_row: &[Rational], support: &[usize], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let factor = target[col].clone();
    for &j in support {
        let delta = &factor * &pivot_row[j];
        target[j] -= delta;
    }
}

pub(super) fn solve(lp: &LinearProgram) -> Outcome {
    let n = lp.variables.len();
    // structural columns
    let mut column_of = Vec::with_capacity(n);
    let mut structural = 0;
    for &nonneg in &lp.nonnegative {
        column_of.push((structural, (!nonneg).then_some(structural + 1)));
        structural += if nonneg { 1 } else { 2 };
    }

    // orient rows so every rhs is nonnegative
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); structural];
        for (var, a) in c.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (pos, neg) = column_of[var];
            coeffs[pos] = a.clone();
            if let Some(neg) = neg {
                coeffs[neg] = -a;
            }
        }
        let (coeffs, relation, rhs) = if c.rhs.is_negative() {
            let flipped = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            (coeffs.into_iter().map(|v| -v).collect(), flipped, -&c.rhs)
        } else {
            (coeffs, c.relation, c.rhs.clone())
        };
        rows.push((coeffs, relation, rhs));
    }

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificial_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let width = structural + slack_count + artificial_count;
    let first_artificial = structural + slack_count;

    let mut tableau = Tableau {
        rows: Vec::with_capacity(rows.len()),
        costs: Vec::new(),
        basis: Vec::with_capacity(rows.len()),
        width,
        enterable: vec![true; width],
    };
    let (mut next_slack, mut next_artificial) = (structural, first_artificial);
    for (coeffs, relation, rhs) in rows {
        let mut row = coeffs;
        row.resize(width + 1, Rational::zero());
        row[width] = rhs;
        match relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                tableau.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_artificial] = Rational::one();
                tableau.basis.push(next_artificial);
                next_artificial += 1;
            }
            Relation::Eq => {
                row[next_artificial] = Rational::one();
                tableau.basis.push(next_artificial);
                next_artificial += 1;
            }
        }
        tableau.rows.push(row);
    }

    // phase 1: maximize -(sum of artificials)
    if artificial_count > 0 {
        let mut phase1 = vec![Rational::zero(); width];
        for c in phase1.iter_mut().skip(first_artificial) {
            *c = -Rational::one();
        }
        tableau.load_objective(&phase1);
        if let Step::Unbounded = tableau.optimize() {
            unreachable!("phase 1 objective is bounded by zero");
        }
        if !tableau.costs[width].is_zero() {
            return Outcome::Infeasible;
        }
        // drive zero-level artificials out; rows where that is impossible are redundant
        let mut row = 0;
        while row < tableau.rows.len() {
            if tableau.basis[row] < first_artificial {
                row += 1;
                continue;
            }
            match (0..first_artificial).find(|&j| !tableau.rows[row][j].is_zero()) {
                Some(col) => {
                    tableau.pivot(row, col);
                    row += 1;
                }
                None => {
                    tableau.rows.remove(row);
                    tableau.basis.remove(row);
                }
            }
        }
        for e in tableau.enterable.iter_mut().skip(first_artificial) {
            *e = false;
        }
    }

    // phase 2
    let mut objective = vec![Rational::zero(); width];
    for (var, c) in lp.objective.iter().enumerate() {
        let c = match lp.sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c,
        };
        let (pos, neg) = column_of[var];
        if let Some(neg) = neg {
            objective[neg] = -&c;
        }
        objective[pos] = c;
    }
    tableau.load_objective(&objective);
    if let Step::Unbounded = tableau.optimize() {
        return Outcome::Unbounded;
    }

    let mut columns = vec![Rational::zero(); width];
    for (i, &b) in tableau.basis.iter().enumerate() {
        columns[b] = tableau.rhs(i).clone();
    }
    let values = column_of
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => &columns[pos] - &columns[neg],
            None => columns[pos].clone(),
        })
        .collect();
    Outcome::Optimal(values)
}
