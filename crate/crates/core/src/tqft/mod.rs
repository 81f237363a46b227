//! The Bessel-kernel computation of periods, boundary states of graphs with
//! leaves, gluing, and the WDVV symmetry check.

mod kernel;
mod state;
mod wdvv;

pub use kernel::{
    bessel, flip_exponent, kernel_compose, trace_formula, trace_table, KernelMatrix,
};
pub use state::{glue, k_state, k_state_with, necklace_state, BoundaryState};
pub use wdvv::{four_point, wdvv_check, wdvv_check_with};
