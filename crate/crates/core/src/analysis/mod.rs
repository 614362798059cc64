//! Analyses built on the kernel: belief trajectories, likelihood tables,
//! odds matrices, closed-form accuracy, and the Gaussian rounding demo.

mod anatomy;
mod approximation;
mod gaussian;
mod trajectory;

pub use anatomy::{anatomy, odds_table, AnatomyRow, LikelihoodAnatomy, OddsTable};
pub use approximation::{approximation_report, ApproxCell, ApproxRow, ApproximationReport};
pub use gaussian::{gaussian_tiny_chance, MAX_DECIMALS};
pub use trajectory::{final_state, trajectory, FinalState, TrajectoryPoint, POSTERIOR_FLOOR};
