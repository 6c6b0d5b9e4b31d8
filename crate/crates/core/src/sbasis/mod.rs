//! Grid-sampled `L^p` functions, the trigonometric basis and the duality map.

mod basis;
mod grid;
pub mod grid_io;

pub use basis::{coefficients, fourier_sbasis, project, reconstruct, trig_frequency, SchauderBasis};
pub use grid::{duality_map, lp_norm, pairing, GridFunction, Interval};
