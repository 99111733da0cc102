//! Worths, imputations and core membership; payment questions answered over
//! the optimal dual face.

mod payments;
mod system;

pub use payments::{
    always_fairly_paid, antipodal_imputations, degeneracy_report, meet_join, paid_sometimes, payment_report,
    profit_ranges, Antipodal, DegeneracyReport, DualFace, EdgePayment, EdgeRow, PaymentReport, VertexPayment,
    VertexRow,
};
pub use system::{coalition_system, core_membership_via_system, CoalitionSystem, Inequality};

use std::fmt;

use serde::Serialize;

use crate::dual::DualSolution;
use crate::error::{Error, Result};
use crate::game::{Coalition, GameInstance, Variant, DEFAULT_VERTEX_CAP};
use crate::matching::{fractional_optimum, max_weight_within, DEFAULT_MULTIPLICITY_CAP};
use crate::numeric::Rational;

/// Enumeration limits. Verdicts that depend on them echo them in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest vertex count for coalition enumeration.
    pub vertices: usize,
    /// Largest `∑ b_q` for exhaustive b-matching enumeration.
    pub multiplicity: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { vertices: DEFAULT_VERTEX_CAP, multiplicity: DEFAULT_MULTIPLICITY_CAP }
    }
}

impl Caps {
    pub(crate) fn check_budget(&self, g: &GameInstance) -> Result<()> {
        let budget = g.multiplicity_budget();
        if budget > self.multiplicity {
            return Err(Error::CapExceeded { what: "multiplicity budget", value: budget, cap: self.multiplicity });
        }
        Ok(())
    }
}

/// Profit per vertex, in game vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Imputation {
    pub profits: Vec<Rational>,
}

impl Imputation {
    pub fn new(profits: Vec<Rational>) -> Self {
        Imputation { profits }
    }

    /// Parses a comma separated vector such as `1,0,0,3` or `1/2, 3/2`.
    pub fn parse(g: &GameInstance, text: &str) -> Result<Self> {
        let profits = text
            .split(',')
            .enumerate()
            .map(|(k, part)| {
                part.trim().parse::<Rational>().map_err(|e| Error::Parse {
                    location: format!("imputation entry {}", k + 1),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if profits.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch { expected: g.vertex_count(), found: profits.len() });
        }
        Ok(Imputation { profits })
    }

    pub fn total(&self) -> Rational {
        self.profits.iter().sum()
    }

    pub fn profit(&self, g: &GameInstance, id: &str) -> Option<&Rational> {
        g.vertex_index(id).map(|q| &self.profits[q])
    }

    /// Total profit of the members of `mask`.
    pub fn allocated(&self, mask: u64) -> Rational {
        self.profits.iter().enumerate().filter(|(q, _)| mask >> q & 1 == 1).map(|(_, p)| p).sum()
    }
}

impl fmt::Display for Imputation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.profits.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Worth of a coalition: the best b-matching inside it.
///
/// `None` when the coalition has no feasible b-matching, which only happens
/// when b-general lower bounds cannot be met inside it.
pub fn worth(g: &GameInstance, s: &Coalition, caps: &Caps) -> Result<Option<Rational>> {
    if let Some(&q) = s.members().iter().find(|&&q| q >= g.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{q}")));
    }
    let budget: u64 = s.members().iter().map(|&q| u64::from(g.vertex(q).upper)).sum();
    if budget > caps.multiplicity {
        return Err(Error::CapExceeded { what: "multiplicity budget", value: budget, cap: caps.multiplicity });
    }
    max_weight_within(g, s.mask())
}

/// Worth of the grand coalition.
pub fn grand_worth(g: &GameInstance, caps: &Caps) -> Result<Rational> {
    worth(g, &g.grand_coalition(), caps)?.ok_or(Error::InfeasibleGame)
}

/// A coalition that receives less than its worth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortfall {
    pub coalition: Coalition,
    pub worth: Rational,
    pub allocated: Rational,
}

/// Outcome of a core membership check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreCheck {
    pub in_core: bool,
    pub total: Rational,
    pub grand_worth: Rational,
    /// First vertex with a negative profit.
    pub negative: Option<usize>,
    /// First violated coalition in enumeration order.
    pub witness: Option<Shortfall>,
    pub coalitions_checked: usize,
    /// Coalitions without a feasible b-matching, left out of the check.
    pub skipped_infeasible: Vec<Coalition>,
}

/// Checks `imp` against every connected coalition of `g`.
pub fn is_core_imputation(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<CoreCheck> {
    core_membership_via_system(&coalition_system(g, caps)?, imp)
}

/// Checks `imp` against every nonempty coalition, connected or not.
pub fn is_core_imputation_exhaustive(g: &GameInstance, imp: &Imputation, caps: &Caps) -> Result<CoreCheck> {
    core_membership_via_system(&system::all_coalitions_system(g, caps)?, imp)
}

/// The imputation read off an optimal dual of an assignment or general
/// matching game: the vertex prices themselves.
pub fn core_imputation_from_dual(g: &GameInstance, y: &DualSolution, caps: &Caps) -> Result<Imputation> {
    if !matches!(g.variant(), Variant::Assignment | Variant::GeneralMatching) {
        return Err(Error::WrongVariant { expected: "assignment or general-matching", found: g.variant() });
    }
    y.ensure_optimal(g, &grand_worth(g, caps)?)?;
    Ok(Imputation::new(y.vertex_upper.clone()))
}

/// Integral and fractional optimum of a game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorthReport {
    pub q_integral: Rational,
    pub q_fractional: Rational,
    pub concurrent: bool,
}

pub fn check_concurrency(g: &GameInstance, caps: &Caps) -> Result<WorthReport> {
    let q_integral = grand_worth(g, caps)?;
    let q_fractional = fractional_optimum(g)?.weight;
    Ok(WorthReport { concurrent: q_integral == q_fractional, q_integral, q_fractional })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::game::{GameBuilder, GameInstance, Variant};
    use crate::numeric::rat;

    pub fn example2() -> GameInstance {
        GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2"])
            .right(["v1", "v2", "v3"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("1.1"))
            .edge("u2", "v2", rat("1.1"))
            .edge("u2", "v3", rat("1"))
            .build()
            .unwrap()
    }

    pub fn example3() -> GameInstance {
        GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2", "u3"])
            .right(["v1", "v2"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("1"))
            .edge("u2", "v1", rat("1"))
            .edge("u2", "v2", rat("0.4"))
            .edge("u3", "v2", rat("0.9"))
            .build()
            .unwrap()
    }

    pub fn example4() -> GameInstance {
        GameBuilder::new(Variant::Assignment)
            .left(["u1", "u2", "u3", "u4"])
            .right(["v1", "v2", "v3", "v4"])
            .edge("u1", "v1", rat("100"))
            .edge("u2", "v2", rat("100"))
            .edge("u1", "v3", rat("51"))
            .edge("u2", "v4", rat("51"))
            .edge("u3", "v2", rat("50"))
            .edge("u4", "v1", rat("50"))
            .build()
            .unwrap()
    }

    pub fn example5() -> GameInstance {
        let mut b = GameBuilder::new(Variant::GeneralMatching).vertices(["v1", "v2", "v3", "v4", "v5", "v6", "v7"]);
        for (a, c) in [
            ("v1", "v2"),
            ("v2", "v7"),
            ("v3", "v7"),
            ("v2", "v3"),
            ("v1", "v7"),
            ("v3", "v4"),
            ("v4", "v5"),
            ("v5", "v6"),
            ("v1", "v6"),
            ("v4", "v7"),
        ] {
            let w = if (a, c) == ("v2", "v7") { "2" } else { "1" };
            b = b.edge(a, c, rat(w));
        }
        b.build().unwrap()
    }

    pub fn example6() -> GameInstance {
        GameBuilder::new(Variant::GeneralMatching)
            .vertices(["v1", "v2", "v3", "v4"])
            .edge("v1", "v2", rat("1.5"))
            .edge("v2", "v3", rat("1"))
            .edge("v3", "v1", rat("1.5"))
            .edge("v1", "v4", rat("1"))
            .build()
            .unwrap()
    }

    pub fn k3() -> GameInstance {
        GameBuilder::new(Variant::GeneralMatching)
            .vertices(["i", "j", "k"])
            .edge("i", "j", rat("1"))
            .edge("j", "k", rat("1"))
            .edge("i", "k", rat("1"))
            .build()
            .unwrap()
    }

    pub fn fig7(variant: Variant) -> GameInstance {
        GameBuilder::new(variant)
            .left(["u1", "u2"])
            .right(["v1", "v2"])
            .edge("u1", "v1", rat("1"))
            .edge("u1", "v2", rat("3"))
            .edge("u2", "v2", rat("1"))
            .capacity("u1", 2)
            .capacity("v1", 2)
            .build()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::numeric::rat;

    fn imp(v: &[&str]) -> Imputation {
        Imputation::new(v.iter().map(|s| rat(s)).collect())
    }

    #[test]
    fn example4_worths() {
        let g = example4();
        let caps = Caps::default();
        assert_eq!(grand_worth(&g, &caps).unwrap(), rat("202"));
        let top = Coalition::from_ids(&g, ["u1", "u2", "v1", "v2"]).unwrap();
        assert_eq!(worth(&g, &top, &caps).unwrap(), Some(rat("200")));
        assert_eq!(worth(&g, &Coalition::empty(), &caps).unwrap(), Some(rat("0")));
    }

    #[test]
    fn example4_membership() {
        let g = example4();
        let caps = Caps::default();
        let woman = imp(&["51", "51", "0", "0", "50", "50", "0", "0"]);
        assert!(is_core_imputation(&g, &woman, &caps).unwrap().in_core);
        let halves = imp(&["101/2", "101/2", "0", "0", "101/2", "101/2", "0", "0"]);
        let check = is_core_imputation(&g, &halves, &caps).unwrap();
        assert!(!check.in_core);
        let witness = check.witness.unwrap();
        assert_eq!(witness.coalition.label(&g), "{u1,v3}");
        assert_eq!((witness.worth, witness.allocated), (rat("51"), rat("101/2")));
    }

    #[test]
    fn k3_thirds_fail_on_a_pair() {
        let g = k3();
        let check = is_core_imputation(&g, &imp(&["1/3", "1/3", "1/3"]), &Caps::default()).unwrap();
        assert!(!check.in_core);
        let witness = check.witness.unwrap();
        assert_eq!(witness.coalition.len(), 2);
        assert_eq!((witness.worth, witness.allocated), (rat("1"), rat("2/3")));
    }

    #[test]
    fn dual_imputations() {
        let caps = Caps::default();
        let g = example2();
        let y = DualSolution::vertex(imp(&["1", "1", "0", "1/10", "0"]).profits);
        assert_eq!(core_imputation_from_dual(&g, &y, &caps).unwrap(), imp(&["1", "1", "0", "1/10", "0"]));

        let g = example6();
        let y = DualSolution::vertex(imp(&["1", "1/2", "1/2", "0"]).profits);
        assert_eq!(core_imputation_from_dual(&g, &y, &caps).unwrap().profits, y.vertex_upper);

        let g = example5();
        let y = DualSolution::vertex(imp(&["0", "1", "0", "1", "0", "1", "1"]).profits);
        assert!(core_imputation_from_dual(&g, &y, &caps).is_ok());

        // K3's dual optimum is 3/2 but the worth is 1
        let g = k3();
        let y = DualSolution::vertex(imp(&["1/2", "1/2", "1/2"]).profits);
        assert!(matches!(core_imputation_from_dual(&g, &y, &caps), Err(Error::NotOptimal(_))));
    }

    #[test]
    fn concurrency() {
        let caps = Caps::default();
        let r = check_concurrency(&k3(), &caps).unwrap();
        assert_eq!((r.q_integral, r.q_fractional, r.concurrent), (rat("1"), rat("3/2"), false));
        let r = check_concurrency(&example6(), &caps).unwrap();
        assert_eq!((r.q_integral, r.q_fractional, r.concurrent), (rat("2"), rat("2"), true));
        let r = check_concurrency(&example5(), &caps).unwrap();
        assert_eq!((r.q_integral, r.q_fractional, r.concurrent), (rat("4"), rat("4"), true));
    }

    #[test]
    fn imputation_parsing() {
        let g = example2();
        assert_eq!(Imputation::parse(&g, "1, 1,0,0.1,0").unwrap(), imp(&["1", "1", "0", "1/10", "0"]));
        assert!(matches!(Imputation::parse(&g, "1,1"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(Imputation::parse(&g, "1,x,0,0,0"), Err(Error::Parse { .. })));
        assert_eq!(imp(&["1", "1/2"]).to_string(), "(1, 1/2)");
    }
}
