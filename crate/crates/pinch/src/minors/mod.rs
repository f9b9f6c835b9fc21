//! Rooted minor search and the parameters derived from it.

pub mod exact;
pub mod heuristic;
pub mod measures;
pub mod model;

pub use exact::find_minor_model;
pub use heuristic::{find_minor_heuristic, RootRule};
pub use measures::{bidim, hadwiger, rooted_grid_in_grid, Measured};
pub use model::{verify_model, MinorModel, ModelDefect};
