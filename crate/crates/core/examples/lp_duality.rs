//! The primal and dual matching LPs, solved exactly, checked for strong
//! duality, then re-optimized over the optimal face.
//!
//! cargo run --example lp_duality

use coregame::io::bundled_game;
use coregame::lp::{build_dual_lp, build_primal_lp, solve_lp, solve_over_optimal_face, verify_duality, Sense};
use coregame::Rational;

fn main() -> coregame::Result<()> {
    let g = bundled_game("example2")?;
    let primal_lp = build_primal_lp(&g);
    let dual_lp = build_dual_lp(&g);
    let x = solve_lp(&primal_lp);
    let y = solve_lp(&dual_lp);

    println!("primal optimum {}", x.objective_value);
    for (name, value) in x.variables.iter().zip(&x.values) {
        println!("  {name} = {value}");
    }
    println!("dual optimum {}", y.objective_value);
    for (name, value) in y.variables.iter().zip(&y.values) {
        println!("  {name} = {value}");
    }

    let report = verify_duality(&g, &x, &y)?;
    println!("objectives equal: {}", report.objectives_equal);
    println!("tight dual rows: {}", report.tight_dual_rows.join(", "));

    // how low can the first price go among optimal duals?
    let mut first = vec![Rational::zero(); dual_lp.variables.len()];
    first[0] = Rational::one();
    let low = solve_over_optimal_face(&dual_lp, &y.objective_value, &first, Sense::Minimize)?;
    println!("smallest {} on the optimal face: {}", dual_lp.variables[0], low.objective_value);
    Ok(())
}
