//! Configuration-driven Monte Carlo runs producing the tables behind the
//! ambiguity, PAPR, NMSE, BER and access-detection studies.

mod config;
mod run;
mod stats;

pub use config::{
    AmbiguityConfig, ChannelConfig, ChannelModel, ExperimentConfig, FilterConfig, GridConfig,
    PaprConfig, PilotConfig, Preset, RachConfig, ReceiverConfig,
};
pub use run::{
    preamble_roots, run_ambiguity, run_ber, run_nmse, run_papr, run_rach, AmbiguityRow, BerRow,
    BerScheme, Detector, NmseRow, PaprRow, Progress, RachRow,
};
pub use stats::Estimate;
