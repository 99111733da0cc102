//! Cooperative matching games with exact rational arithmetic.
//!
//! Build a [`GameInstance`] with [`GameBuilder`] (or load one with
//! [`io::parse_game`]), then ask for the worth of coalitions, core
//! imputations, dual solutions and their correspondences, vertex and edge
//! classifications, and payment facts. Every number is a [`Rational`].
//!
//! ```
//! use coregame::analysis::{grand_worth, is_core_imputation};
//! use coregame::{rat, Caps, GameBuilder, Imputation, Variant};
//!
//! let g = GameBuilder::new(Variant::Assignment)
//!     .left(["u1", "u2"])
//!     .right(["v1", "v2"])
//!     .edge("u1", "v1", rat("3"))
//!     .edge("u2", "v1", rat("2"))
//!     .edge("u2", "v2", rat("1/2"))
//!     .build()?;
//! let caps = Caps::default();
//! assert_eq!(grand_worth(&g, &caps)?, rat("7/2"));
//! let check = is_core_imputation(&g, &Imputation::parse(&g, "1,1/2,2,0")?, &caps)?;
//! assert!(check.in_core);
//! # Ok::<(), coregame::Error>(())
//! ```

pub mod analysis;
pub mod bmatching;
pub mod dual;
pub mod error;
pub mod game;
pub mod io;
pub mod lp;
pub mod matching;
pub mod numeric;

pub use analysis::{Caps, Imputation};
pub use dual::DualSolution;
pub use error::{Error, Result};
pub use game::{Coalition, GameBuilder, GameInstance, Side, Variant};
pub use io::{parse_game, render_game};
pub use numeric::{rat, Rational};
