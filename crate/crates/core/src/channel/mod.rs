//! Doubly-dispersive channel simulation: Veh-A draws, pulse shaping, the
//! effective lattice channel and the noisy I/O relation.

mod crystal;
mod effective;
mod io;
mod pulse;
mod veh_a;

pub use crystal::{check_crystallization, doppler_reach, Crystallization};
pub(crate) use effective::PathResponder;
pub use effective::{
    discarded_energy_fraction, effective_channel, effective_taps, EffectiveChannel, TapWindow,
    TAP_MARGIN,
};
pub use io::{add_noise, apply_channel, apply_channel_with, build_io_matrix, TdChannelOperator};
pub use pulse::{rrc, rrc_correlation, rrc_support, FilterKind, PulseShapingFilter, TAIL_FLOOR};
pub use veh_a::{
    draw_veh_a, draw_veh_a_jittered, draw_veh_a_with, veh_a_powers, ChannelPath, PhysicalChannel,
    VEH_A_DELAYS_US, VEH_A_MAX_DELAY, VEH_A_POWERS_DB,
};
