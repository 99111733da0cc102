//! b-matching games: players with capacities, imputations built from optimal
//! duals under different splitting schemes, and core points that no dual
//! produces.
//!
//! cargo run --example b_matching

use coregame::analysis::{coalition_system, grand_worth, is_core_imputation};
use coregame::bmatching::{
    imputation_from_dual, in_dual_image, sample_core_vertices, sample_optimal_duals, uniform_core_inverse, SplitScheme,
};
use coregame::io::bundled_game;
use coregame::{rat, Caps, GameBuilder, Variant};

fn main() -> coregame::Result<()> {
    let caps = Caps::default();

    // every player can take two partners
    let uniform = GameBuilder::new(Variant::BUniform)
        .left(["u1", "u2"])
        .right(["v1", "v2", "v3"])
        .uniform(2)
        .edge("u1", "v1", rat("3"))
        .edge("u1", "v2", rat("2"))
        .edge("u2", "v2", rat("2"))
        .edge("u2", "v3", rat("1"))
        .build()?;
    println!("b-uniform worth {}", grand_worth(&uniform, &caps)?);
    for y in sample_optimal_duals(&uniform, 1, 3)? {
        let imp = imputation_from_dual(&uniform, &y, &SplitScheme::Balanced, &caps)?;
        let back = uniform_core_inverse(&uniform, &imp, &caps)?;
        println!("  dual prices {:?} -> {imp} -> prices {:?}", y.vertex_upper, back.vertex_upper);
    }

    let g = bundled_game("fig7-constrained")?;
    println!("fig7-constrained ({}), worth {}", g.variant(), grand_worth(&g, &caps)?);
    let y = &sample_optimal_duals(&g, 7, 1)?[0];
    for split in [SplitScheme::AllLeft, SplitScheme::AllRight, SplitScheme::Balanced] {
        println!("  {split:?}: {}", imputation_from_dual(&g, y, &split, &caps)?);
    }

    let system = coalition_system(&g, &caps)?;
    println!("core inequalities (sum of profits >= worth):");
    for inequality in &system.inequalities {
        println!("  {} >= {}", inequality.coalition.label(&g), inequality.rhs);
    }

    let unconstrained = bundled_game("fig7-unconstrained")?;
    println!("core vertices of fig7-unconstrained:");
    for imp in sample_core_vertices(&unconstrained, &caps, 7, 6)? {
        let reached = in_dual_image(&unconstrained, &imp, &caps)?;
        println!("  {imp}  {}", if reached { "from a dual" } else { "no dual gives this" });
    }

    let check = is_core_imputation(&unconstrained, &coregame::Imputation::parse(&unconstrained, "1,0,0,3")?, &caps)?;
    if let Some(w) = check.witness {
        println!("(1, 0, 0, 3) is blocked by {}: {} < {}", w.coalition.label(&unconstrained), w.allocated, w.worth);
    }
    Ok(())
}
