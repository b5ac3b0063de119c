//! Joint sensing and data recovery within one subframe.

mod detect;
mod estimate;
mod metrics;
mod turbo;

pub use detect::{lmmse_detect, lmmse_detect_with, Detection, LmmseMethod};
pub use estimate::{
    cancel_pilot, check_readoff, estimate_channel, ChannelEstimate, ChannelEstimator,
    ReadoffRegion, TAP_FLOOR,
};
pub use metrics::{ber, bit_errors, from_db, nmse, to_db};
pub use turbo::{
    interference_variance, pilot_energy_for_pdr, separate_subframe_detect, turbo_iterate,
    FramePlan, TurboResult, SYMBOL_ENERGY,
};
