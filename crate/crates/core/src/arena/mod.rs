//! Games, adversaries and the exact oracles they are scored against.

pub mod adversary;
pub mod corpus;
pub mod enumerate;
pub mod game;
pub mod opt;
pub mod report;
pub mod rho;

pub use adversary::{adversary_collinear_discs, adversary_parabola, NestedIntervals};
pub use game::{run_game, Adversary, Event, FixedSequence, Transcript};
pub use opt::opt_hitting_set;
pub use report::{floor_log2, ratio_report, Bound, BoundCheck, RatioReport};
pub use rho::exact_rho;
