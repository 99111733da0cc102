//! Exact rationals: parsing decimals and fractions, arithmetic without
//! rounding, and the canonical printed form.
//!
//! cargo run --example exact_numbers

use coregame::Rational;

fn main() {
    let tenth: Rational = "0.1".parse().unwrap();
    let sum: Rational = (0..10).map(|_| tenth.clone()).sum();
    println!("ten times 0.1 = {sum}");
    assert_eq!(sum, Rational::one());

    let a = Rational::new(22, 7);
    let b: Rational = "-3/14".parse().unwrap();
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} * {b} = {}", &a * &b);
    println!("{a} / {b} = {}", &a / &b);
    println!("({a} * {b}) / {b} == {a}: {}", &(&a * &b) / &b == a);

    for text in ["6/4", "-0.25", "7", "1/0", "x"] {
        match Rational::parse(text) {
            Ok(r) => println!("{text:>5} reads as {r}"),
            Err(e) => println!("{text:>5} is rejected: {e}"),
        }
    }
}
