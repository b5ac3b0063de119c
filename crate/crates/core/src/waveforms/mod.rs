//! Pilot waveforms, data frames, ambiguity functions and TD synthesis.

mod ambiguity;
mod frame;
mod gauss;
mod pilots;
mod synthesis;

pub(crate) use ambiguity::RowEngine;
pub use ambiguity::{ambiguity_at, ambiguity_rows, cross_ambiguity, self_ambiguity, AmbiguityMap};
pub use frame::{data_frame_signal, qam4_decide, qam4_symbol, random_qam4};
pub use gauss::gauss_sum_magnitude;
pub use pilots::{
    zc_dd_from_sequence, zc_sequence, ChirpPilot, Pilot, PilotKind, PointPilot, ZcPilot,
};
pub use synthesis::{td_realization, upsample};
