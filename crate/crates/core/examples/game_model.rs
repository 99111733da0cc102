//! Building and validating games, listing connected coalitions, and
//! restricting a game to a coalition.
//!
//! cargo run --example game_model

use coregame::analysis::worth;
use coregame::game::{connected_coalitions, validate_game};
use coregame::{rat, Caps, Coalition, GameBuilder, Variant};

fn main() -> coregame::Result<()> {
    // build_unchecked keeps a broken game around so it can be inspected
    let broken = GameBuilder::new(Variant::Assignment)
        .left(["u1", "u2"])
        .right(["v1"])
        .edge("u1", "v1", rat("0"))
        .edge("u1", "u2", rat("1"))
        .build_unchecked()?;
    for violation in validate_game(&broken).violations {
        println!("invalid: {violation}");
    }

    let g = GameBuilder::new(Variant::BConstrained)
        .left(["u1", "u2"])
        .right(["v1", "v2"])
        .capacity("u1", 2)
        .edge("u1", "v1", rat("2"))
        .edge("u1", "v2", rat("1"))
        .edge("u2", "v2", rat("3/2"))
        .build()?;
    let caps = Caps::default();
    println!("connected coalitions and their worths:");
    for s in connected_coalitions(&g, caps.vertices)? {
        println!("  {:<16} {}", s.label(&g), worth(&g, &s, &caps)?.expect("feasible"));
    }

    let trio = Coalition::from_ids(&g, ["u1", "v2", "v1"])?;
    let sub = g.induce(&trio)?;
    println!("restricted to {}: {} vertices, {} edges", trio.label(&g), sub.vertex_count(), sub.edge_count());
    Ok(())
}
