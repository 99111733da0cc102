//! Who can ever get paid, and which edges are always paid exactly their
//! weight, next to the essential/viable/subpar labels of the optimal
//! assignments.
//!
//! cargo run --example payments

use coregame::analysis::degeneracy_report;
use coregame::{rat, Caps, GameBuilder, Variant};

fn main() -> coregame::Result<()> {
    // two optimal assignments, so the game is degenerate
    let g = GameBuilder::new(Variant::Assignment)
        .left(["u1", "u2", "u3", "u4"])
        .right(["v1", "v2", "v3"])
        .edge("u1", "v1", rat("4"))
        .edge("u1", "v2", rat("3"))
        .edge("u2", "v1", rat("3"))
        .edge("u2", "v2", rat("2"))
        .edge("u3", "v3", rat("1"))
        .edge("u2", "v3", rat("1/2"))
        .edge("u4", "v3", rat("1/4"))
        .build()?;

    let report = degeneracy_report(&g, &Caps::default())?;
    println!("{} optimal assignments, degenerate: {}", report.optimum_count, report.degenerate);
    println!("{:<6} {:<10} paid sometimes", "vertex", "label");
    for row in &report.vertices {
        println!("{:<6} {:<10} {}", row.vertex, row.label.to_string(), row.paid_sometimes);
    }
    println!("{:<6} {:<10} always fairly paid", "edge", "label");
    for row in &report.edges {
        println!("{:<6} {:<10} {}", row.edge, row.label.to_string(), row.always_fairly_paid);
    }
    Ok(())
}
