//! Delay-Doppler domain fundamentals: the lattice, quasi-periodic signals,
//! the discrete Zak transform and twisted convolution.

mod grid;
mod papr;
mod signal;
mod twisted;
mod zak;

pub use grid::DDGrid;
pub use papr::{papr, papr_of};
pub use signal::{phase_aligned_max_diff, DDSignal, TDSignal};
pub use twisted::{twisted_convolve, twisted_convolve_at, FilterTaps, Tap};
pub use zak::{inverse_zak_samples, inverse_zak_transform, zak_from_samples, zak_transform};
