//! Core of a small assignment game: worth, an optimal dual, the range of each
//! player's profit over the core, and the two side-optimal imputations.
//!
//! cargo run --example assignment_core

use coregame::analysis::{
    antipodal_imputations, core_imputation_from_dual, grand_worth, is_core_imputation, profit_ranges,
};
use coregame::dual::optimal_dual;
use coregame::{rat, Caps, GameBuilder, Imputation, Variant};

fn main() -> coregame::Result<()> {
    let g = GameBuilder::new(Variant::Assignment)
        .left(["u1", "u2", "u3"])
        .right(["v1", "v2"])
        .edge("u1", "v1", rat("3"))
        .edge("u1", "v2", rat("2"))
        .edge("u2", "v1", rat("2"))
        .edge("u2", "v2", rat("2"))
        .edge("u3", "v2", rat("1/2"))
        .build()?;
    let caps = Caps::default();

    let worth = grand_worth(&g, &caps)?;
    println!("worth of the grand coalition: {worth}");

    let (y, value) = optimal_dual(&g)?;
    let imp = core_imputation_from_dual(&g, &y, &caps)?;
    println!("optimal dual (objective {value}) read as an imputation: {imp}");

    println!("profit ranges over the core:");
    for (v, (lo, hi)) in g.vertices().iter().zip(profit_ranges(&g, &caps)?) {
        println!("  {:<3} [{lo}, {hi}]", v.id);
    }

    let sides = antipodal_imputations(&g, &caps)?;
    println!("best for U: {}", sides.u_optimal);
    println!("best for V: {}", sides.v_optimal);

    // u1 keeps all of its edge to v1, so u2 and v1 do better on their own
    let greedy = Imputation::new(vec![rat("3"), rat("1"), rat("0"), rat("0"), rat("1")]);
    let check = is_core_imputation(&g, &greedy, &caps)?;
    match check.witness {
        Some(w) => println!("{greedy} is blocked by {} ({} < {})", w.coalition.label(&g), w.allocated, w.worth),
        None => println!("{greedy} is in the core: {}", check.in_core),
    }
    Ok(())
}
