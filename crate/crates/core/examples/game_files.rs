//! Reading a game from TOML, writing it back, and producing the same reports
//! as the command-line tool, as text or JSON.
//!
//! cargo run --example game_files

use coregame::io::{run_command, Command, Options};
use coregame::{parse_game, render_game, Caps};

const GAME: &str = r#"
name = "tennis"
note = "three coaches, three players, a fractional weight"
variant = "assignment"
left = ["ana", "ben", "cas"]
right = ["xi", "yu", "zo"]
edges = [
    { ends = ["ana", "xi"], weight = 5 },
    { ends = ["ana", "yu"], weight = 4 },
    { ends = ["ben", "yu"], weight = "7/2" },
    { ends = ["cas", "zo"], weight = 2 },
    { ends = ["ben", "zo"], weight = 1 },
]
"#;

fn main() -> coregame::Result<()> {
    let g = parse_game(GAME)?;
    println!("{}", render_game(&g));

    let options = Options { caps: Caps::default(), seed: 1 };
    print!("{}", run_command(Command::Antipodal, Some(&g), None, &options)?.to_text());

    let check = run_command(Command::Check, Some(&g), Some("5,0,2,0,7/2,0"), &options)?;
    println!("{}", check.to_json());

    match parse_game(
        "variant = \"assignment\"\nleft = [\"a\"]\nright = [\"b\"]\nedges = [{ ends = [\"a\", \"c\"], weight = 1 }]\n",
    ) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
