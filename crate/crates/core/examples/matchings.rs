//! Integral optima by enumeration, the essential/viable/subpar labels, the
//! fractional optimum and its half-integral structure, and a Birkhoff
//! decomposition of a fractional bipartite matching.
//!
//! cargo run --example matchings

use coregame::matching::{
    birkhoff_decompose, brute_force_optima, check_half_integral, classify, fractional_optimum, MatchingVector,
};
use coregame::{rat, Caps, GameBuilder, Variant};

fn main() -> coregame::Result<()> {
    let cap = Caps::default().multiplicity;

    // a 5-cycle with one chord
    let g = GameBuilder::new(Variant::GeneralMatching)
        .vertices(["a", "b", "c", "d", "e"])
        .edge("a", "b", rat("2"))
        .edge("b", "c", rat("2"))
        .edge("c", "d", rat("2"))
        .edge("d", "e", rat("2"))
        .edge("e", "a", rat("2"))
        .edge("a", "c", rat("1"))
        .build()?;

    let optima = brute_force_optima(&g, cap)?;
    println!("{} optimal matchings of weight {}:", optima.count(), optima.max_weight);
    for m in &optima.matchings {
        println!("  {}", m.label(&g));
    }

    let labels = classify(&g, cap)?;
    for (v, label) in g.vertices().iter().zip(&labels.vertices) {
        println!("vertex {} is {label}", v.id);
    }
    for (e, label) in labels.edges.iter().enumerate() {
        println!("edge {} is {label}", g.edge_label(e));
    }

    let x = fractional_optimum(&g)?;
    let shape = check_half_integral(&g, &x);
    println!("fractional optimum {} has weight {}", x.label(&g), x.weight);
    println!("half-integral: {}, odd half cycles: {}", shape.is_half_integral, shape.half_cycles.len());

    // a doubly substochastic point on K(2,2) splits into matchings
    let square = GameBuilder::new(Variant::Assignment)
        .left(["u1", "u2"])
        .right(["v1", "v2"])
        .edge("u1", "v1", rat("1"))
        .edge("u1", "v2", rat("1"))
        .edge("u2", "v1", rat("1"))
        .edge("u2", "v2", rat("1"))
        .build()?;
    let point = MatchingVector::new(&square, vec![rat("1/3"), rat("1/2"), rat("1/2"), rat("1/3")]);
    println!("decomposing {}:", point.label(&square));
    for (coefficient, m) in birkhoff_decompose(&square, &point)? {
        println!("  {coefficient} x {}", if m.weight.is_zero() { "empty matching".into() } else { m.label(&square) });
    }
    Ok(())
}
