//! Matching games on general graphs: the core is nonempty exactly when the
//! integral and fractional optima agree. Shows an odd cycle with an empty
//! core and a bundled seven-vertex game whose core is a single point.
//!
//! cargo run --example general_games

use coregame::analysis::{check_concurrency, payment_report, profit_ranges};
use coregame::io::bundled_game;
use coregame::{rat, Caps, GameBuilder, Variant};

fn main() -> coregame::Result<()> {
    let caps = Caps::default();

    let pentagon = GameBuilder::new(Variant::GeneralMatching)
        .vertices(["a", "b", "c", "d", "e"])
        .edge("a", "b", rat("1"))
        .edge("b", "c", rat("1"))
        .edge("c", "d", rat("1"))
        .edge("d", "e", rat("1"))
        .edge("e", "a", rat("1"))
        .build()?;
    let worths = check_concurrency(&pentagon, &caps)?;
    println!(
        "pentagon: integral {} vs fractional {}, core nonempty: {}",
        worths.q_integral, worths.q_fractional, worths.concurrent
    );

    let g = bundled_game("example5")?;
    let worths = check_concurrency(&g, &caps)?;
    println!("example5: integral {} vs fractional {}", worths.q_integral, worths.q_fractional);
    for (v, (lo, hi)) in g.vertices().iter().zip(profit_ranges(&g, &caps)?) {
        println!("  {} gets {}", v.id, if lo == hi { lo.to_string() } else { format!("[{lo}, {hi}]") });
    }
    let payments = payment_report(&g, &caps)?;
    let overpaid: Vec<_> = payments.edges.iter().filter(|e| !e.always_fairly_paid).map(|e| e.edge.as_str()).collect();
    println!("edges that can be overpaid: {}", overpaid.join(", "));
    Ok(())
}
