use super::{grand_worth, Caps, CoreCheck, Imputation, Shortfall};
use crate::error::{Error, Result};
use crate::game::{all_coalition_masks, connected_coalition_masks, Coalition, GameInstance};
use crate::matching::max_weight_within;
use crate::numeric::Rational;

/// `∑_{q ∈ S} profit_q ≥ worth(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coalition: Coalition,
    pub rhs: Rational,
}

/// The linear system whose solutions are exactly the core imputations: one
/// inequality per connected coalition, the grand-coalition equality and
/// nonnegativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionSystem {
    pub vertex_ids: Vec<String>,
    pub inequalities: Vec<Inequality>,
    pub grand_worth: Rational,
    /// Coalitions without a feasible b-matching; they impose nothing.
    pub skipped_infeasible: Vec<Coalition>,
}

impl CoalitionSystem {
    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn inequality(&self, coalition: &Coalition) -> Option<&Inequality> {
        self.inequalities.iter().find(|i| i.coalition == *coalition)
    }
}

pub fn coalition_system(g: &GameInstance, caps: &Caps) -> Result<CoalitionSystem> {
    build(g, caps, connected_coalition_masks(g, caps.vertices)?)
}

pub(crate) fn all_coalitions_system(g: &GameInstance, caps: &Caps) -> Result<CoalitionSystem> {
    build(g, caps, all_coalition_masks(g, caps.vertices)?)
}

fn build(g: &GameInstance, caps: &Caps, masks: Vec<u64>) -> Result<CoalitionSystem> {
    caps.check_budget(g)?;
    let grand_worth = grand_worth(g, caps)?;
    let mut inequalities = Vec::with_capacity(masks.len());
    let mut skipped_infeasible = Vec::new();
    for mask in masks {
        match max_weight_within(g, mask)? {
            Some(rhs) => inequalities.push(Inequality { coalition: Coalition::from_mask(mask), rhs }),
            None => skipped_infeasible.push(Coalition::from_mask(mask)),
        }
    }
    Ok(CoalitionSystem {
        vertex_ids: g.vertices().iter().map(|v| v.id.clone()).collect(),
        inequalities,
        grand_worth,
        skipped_infeasible,
    })
}

/// Exact check of `imp` against `sys`; the first violated inequality is the witness.
pub fn core_membership_via_system(sys: &CoalitionSystem, imp: &Imputation) -> Result<CoreCheck> {
    if imp.profits.len() != sys.vertex_count() {
        return Err(Error::DimensionMismatch { expected: sys.vertex_count(), found: imp.profits.len() });
    }
    let total = imp.total();
    let negative = imp.profits.iter().position(Rational::is_negative);
    let mut witness = None;
    let mut coalitions_checked = 0;
    if negative.is_none() && total == sys.grand_worth {
        for inequality in &sys.inequalities {
            coalitions_checked += 1;
            let allocated = imp.allocated(inequality.coalition.mask());
            if allocated < inequality.rhs {
                witness = Some(Shortfall {
                    coalition: inequality.coalition.clone(),
                    worth: inequality.rhs.clone(),
                    allocated,
                });
                break;
            }
        }
    }
    Ok(CoreCheck {
        in_core: negative.is_none() && total == sys.grand_worth && witness.is_none(),
        total,
        grand_worth: sys.grand_worth.clone(),
        negative,
        witness,
        coalitions_checked,
        skipped_infeasible: sys.skipped_infeasible.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::fig7;
    use super::*;
    use crate::game::Variant;
    use crate::numeric::rat;

    fn imp(v: &[&str]) -> Imputation {
        Imputation::new(v.iter().map(|s| rat(s)).collect())
    }

    #[test]
    fn fig7_systems() {
        let caps = Caps::default();
        let g = fig7(Variant::BUnconstrained);
        let sys = coalition_system(&g, &caps).unwrap();
        let u1v1 = Coalition::from_ids(&g, ["u1", "v1"]).unwrap();
        assert_eq!(sys.inequality(&u1v1).unwrap().rhs, rat("2"));
        assert_eq!(sys.grand_worth, rat("4"));
        assert_eq!(sys.inequalities.len(), 10);
        assert!(core_membership_via_system(&sys, &imp(&["3", "0", "0", "1"])).unwrap().in_core);
        let check = core_membership_via_system(&sys, &imp(&["1", "0", "0", "3"])).unwrap();
        let witness = check.witness.unwrap();
        assert_eq!(witness.coalition, u1v1);
        assert_eq!((witness.worth, witness.allocated), (rat("2"), rat("1")));

        let g = fig7(Variant::BConstrained);
        let sys = coalition_system(&g, &caps).unwrap();
        assert_eq!(sys.inequality(&u1v1).unwrap().rhs, rat("1"));
        assert!(core_membership_via_system(&sys, &imp(&["1", "0", "0", "3"])).unwrap().in_core);
    }

    #[test]
    fn sum_and_sign_failures() {
        let sys = coalition_system(&fig7(Variant::BUnconstrained), &Caps::default()).unwrap();
        let check = core_membership_via_system(&sys, &imp(&["2", "0", "0", "1"])).unwrap();
        assert!(!check.in_core && check.witness.is_none() && check.total == rat("3"));
        let check = core_membership_via_system(&sys, &imp(&["5", "-1", "0", "0"])).unwrap();
        assert_eq!(check.negative, Some(1));
        assert!(core_membership_via_system(&sys, &imp(&["4"])).is_err());
    }
}
