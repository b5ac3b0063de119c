//! Experiment configuration, read from TOML. Every section is optional and
//! unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::channel::{PulseShapingFilter, TAP_MARGIN, VEH_A_MAX_DELAY};
use crate::dd::DDGrid;
use crate::error::{Error, Result};
use crate::receiver::{LmmseMethod, TAP_FLOOR};
use crate::waveforms::{ChirpPilot, Pilot, PilotKind, PointPilot, ZcPilot};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: usize,
    pub grid: GridConfig,
    pub filter: FilterConfig,
    pub channel: ChannelConfig,
    pub pilot: PilotConfig,
    pub receiver: ReceiverConfig,
    pub rach: RachConfig,
    pub ambiguity: AmbiguityConfig,
    pub papr: PaprConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 200,
            grid: GridConfig::default(),
            filter: FilterConfig::default(),
            channel: ChannelConfig::default(),
            pilot: PilotConfig::default(),
            receiver: ReceiverConfig::default(),
            rach: RachConfig::default(),
            ambiguity: AmbiguityConfig::default(),
            papr: PaprConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub m: usize,
    pub n: usize,
    /// Hz
    pub doppler_period: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            m: 31,
            n: 37,
            doppler_period: 30e3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub beta_delay: f64,
    pub beta_doppler: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            beta_delay: 0.6,
            beta_doppler: 0.6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelModel {
    VehA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelConfig {
    pub model: ChannelModel,
    /// Hz
    pub nu_max: f64,
    /// seconds of extra per-path delay, rach only
    pub delay_jitter: f64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            model: ChannelModel::VehA,
            nu_max: 815.0,
            delay_jitter: 0.0,
        }
    }
}

impl ChannelConfig {
    pub fn tau_max(&self) -> f64 {
        VEH_A_MAX_DELAY + self.delay_jitter
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PilotConfig {
    /// pilots compared by the nmse and ber runs
    pub kinds: Vec<PilotKind>,
    pub root: i64,
    pub slope: i64,
    /// point-pilot location; defaults to ((M+1)/2, (N+1)/2)
    pub location: Option<[usize; 2]>,
}

impl Default for PilotConfig {
    fn default() -> Self {
        Self {
            kinds: vec![PilotKind::Zc, PilotKind::Chirp],
            root: 11,
            slope: 3,
            location: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReceiverConfig {
    pub pdr_db: Vec<f64>,
    pub data_snr_db: f64,
    /// turbo iteration counts reported by the ber run; the largest is run
    pub turbo_iterations: Vec<usize>,
    pub detector: LmmseMethod,
    pub tap_floor: f64,
    /// taps kept around the nominal spread by the read-off; the channel is
    /// always simulated with the full default margin
    pub readoff_margin: i64,
    /// also run the separate pilot/data subframe baseline
    pub separate_baseline: bool,
}

impl Default for ReceiverConfig {
    fn default() -> Self {
        Self {
            pdr_db: (0..=8).map(|i| 5.0 * i as f64).collect(),
            data_snr_db: 25.0,
            turbo_iterations: vec![1, 3, 5],
            detector: LmmseMethod::ConjugateGradient,
            tap_floor: TAP_FLOOR,
            readoff_margin: TAP_MARGIN,
            separate_baseline: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RachConfig {
    pub active_users: usize,
    pub preambles: usize,
    pub snr_db: Vec<f64>,
    /// seed for the preamble root draw
    pub root_seed: u64,
    /// explicit roots; overrides the draw when non-empty
    pub roots: Vec<i64>,
}

impl Default for RachConfig {
    fn default() -> Self {
        Self {
            active_users: 3,
            preambles: 16,
            snr_db: (0..=8).map(|i| -27.0 + 3.0 * i as f64).collect(),
            root_seed: 7,
            roots: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AmbiguityConfig {
    /// one root: self-ambiguity; two roots: cross-ambiguity
    pub roots: Vec<i64>,
    /// write only shifts with `|A| > threshold`
    pub nonzero_only: bool,
    pub threshold: f64,
    /// build the ZC DD signals from the raw sequences, skipping the root and
    /// grid checks (for grids that are not odd and coprime)
    pub from_sequence: bool,
}

impl Default for AmbiguityConfig {
    fn default() -> Self {
        Self {
            roots: vec![11],
            nonzero_only: true,
            threshold: 1e-6,
            from_sequence: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PaprConfig {
    pub oversampling: usize,
    pub kinds: Vec<PilotKind>,
    pub root: i64,
}

impl Default for PaprConfig {
    fn default() -> Self {
        Self {
            oversampling: 4,
            kinds: vec![PilotKind::Point, PilotKind::Chirp, PilotKind::Zc],
            root: 23,
        }
    }
}

/// Which experiment a preset is tuned for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Ambiguity,
    Papr,
    Nmse,
    Ber,
    Rach,
}

impl ExperimentConfig {
    /// Defaults for each study: the NMSE run compares ZC (u=11) and chirp
    /// (q=3) pilots at 815 Hz; the BER run uses the u=23 ZC pilot at 6000 Hz,
    /// where the u=11 line would alias inside the read-off window, and a
    /// read-off margin of 2 (with 4 the first cancellation removes 300 of the
    /// 1147 data dimensions and the turbo loop stalls).
    pub fn preset(p: Preset) -> Self {
        let mut c = Self::default();
        match p {
            Preset::Ambiguity | Preset::Papr => {}
            Preset::Nmse => c.trials = 500,
            Preset::Ber => {
                c.channel.nu_max = 6000.0;
                c.pilot.kinds = vec![PilotKind::Zc];
                c.pilot.root = 23;
                c.receiver.readoff_margin = 2;
            }
            Preset::Rach => c.trials = 1000,
        }
        c
    }

    /// Parses `text` as overrides on top of `base`; keys absent from `text`
    /// keep the base values.
    pub fn from_toml_over(text: &str, base: &Self) -> Result<Self> {
        let over: toml::Table =
            toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        let mut merged = toml::Table::try_from(base).map_err(|e| Error::Config(e.to_string()))?;
        merge(&mut merged, over);
        let cfg: Self = toml::Value::Table(merged)
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        self.filter()?;
        if self.channel.nu_max < 0.0 || self.channel.delay_jitter < 0.0 {
            return Err(Error::Config(
                "nu_max and delay_jitter must be nonnegative".into(),
            ));
        }
        if self.receiver.turbo_iterations.contains(&0) {
            return Err(Error::Config("turbo iteration counts must be >= 1".into()));
        }
        if !(0..=TAP_MARGIN).contains(&self.receiver.readoff_margin) {
            return Err(Error::Config(format!(
                "receiver.readoff_margin must be in [0, {TAP_MARGIN}]"
            )));
        }
        if self.papr.oversampling == 0 {
            return Err(Error::Config("papr.oversampling must be >= 1".into()));
        }
        if self.rach.active_users > self.rach.preambles {
            return Err(Error::Config(format!(
                "rach.active_users ({}) exceeds rach.preambles ({})",
                self.rach.active_users, self.rach.preambles
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<DDGrid> {
        DDGrid::new(self.grid.m, self.grid.n, self.grid.doppler_period)
    }

    pub fn filter(&self) -> Result<PulseShapingFilter> {
        PulseShapingFilter::rrc(self.filter.beta_delay, self.filter.beta_doppler)
    }

    pub fn pilot(&self, kind: PilotKind) -> Result<Pilot> {
        let g = self.grid()?;
        Ok(match kind {
            PilotKind::Zc => Pilot::Zc(ZcPilot::new(g, self.pilot.root)?),
            PilotKind::Chirp => Pilot::Chirp(ChirpPilot::new(g, self.pilot.slope)?),
            PilotKind::Point => {
                let [k, l] = self
                    .pilot
                    .location
                    .unwrap_or([g.m().div_ceil(2), g.n().div_ceil(2)]);
                Pilot::Point(PointPilot::new(g, k, l, 1.0)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let cfg = ExperimentConfig::default();
        let back = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn partial_config_fills_defaults() {
        let cfg = ExperimentConfig::from_toml("trials = 5\n[channel]\nnu_max = 6000.0\n").unwrap();
        assert_eq!(cfg.trials, 5);
        assert_eq!(cfg.channel.nu_max, 6000.0);
        assert_eq!(cfg.grid.m, 31);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ExperimentConfig::from_toml("trails = 5\n").is_err());
        assert!(ExperimentConfig::from_toml("[grid]\nk = 3\n").is_err());
    }

    #[test]
    fn overrides_keep_preset_values() {
        let base = ExperimentConfig::preset(Preset::Ber);
        let cfg =
            ExperimentConfig::from_toml_over("trials = 3\n[receiver]\ndata_snr_db = 20.0\n", &base)
                .unwrap();
        assert_eq!(cfg.trials, 3);
        assert_eq!(cfg.channel.nu_max, 6000.0);
        assert_eq!(cfg.pilot.root, 23);
        assert_eq!(cfg.receiver.data_snr_db, 20.0);
        assert_eq!(cfg.receiver.turbo_iterations, vec![1, 3, 5]);
        assert!(ExperimentConfig::from_toml_over("[pilot]\nslop = 3\n", &base).is_err());
    }

    #[test]
    fn invalid_values_rejected() {
        assert!(ExperimentConfig::from_toml("[grid]\nm = 0\n").is_err());
        assert!(ExperimentConfig::from_toml("[filter]\nbeta_delay = 2.0\n").is_err());
        assert!(ExperimentConfig::from_toml("[rach]\nactive_users = 9\npreambles = 4\n").is_err());
    }
}
