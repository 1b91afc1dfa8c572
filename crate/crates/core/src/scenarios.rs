//! Data-generation models for the seismic applications of interest:
//! per-stream bit-rates, yearly volumes, and per-trigger payloads for
//! continuous and intermittent recordings.
//!
//! Byte multiples are SI decimal throughout (1 kB = 1000 B, 1 MB = 10^6 B)
//! and a year is exactly 365 days.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SECONDS_PER_YEAR: f64 = 365.0 * 24.0 * 3600.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("operation needs an intermittent stream, got a continuous one")]
    NotIntermittent,
    #[error("profile has no streams")]
    NoStreams,
    #[error("sensor {field} out of range: {value}")]
    InvalidSensor { field: &'static str, value: f64 },
    #[error("intermittent stream {field} must be positive, got {value}")]
    InvalidTrigger { field: &'static str, value: f64 },
}

/// Digitizer geometry of one sensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensorSpec {
    /// Recorded components, 1 to 3.
    pub components: u8,
    /// Sample resolution, 1 to 32 bits.
    pub bits_per_sample: u8,
    pub sample_rate_sps: f64,
}

impl SensorSpec {
    pub fn new(components: u8, bits_per_sample: u8, sample_rate_sps: f64) -> Self {
        Self {
            components,
            bits_per_sample,
            sample_rate_sps,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(1..=3).contains(&self.components) {
            return Err(ScenarioError::InvalidSensor {
                field: "components",
                value: self.components as f64,
            });
        }
        if !(1..=32).contains(&self.bits_per_sample) {
            return Err(ScenarioError::InvalidSensor {
                field: "bits_per_sample",
                value: self.bits_per_sample as f64,
            });
        }
        if !(self.sample_rate_sps > 0.0) {
            return Err(ScenarioError::InvalidSensor {
                field: "sample_rate_sps",
                value: self.sample_rate_sps,
            });
        }
        Ok(())
    }
}

/// Recording schedule of a stream: always on, or trigger-driven bursts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamKind {
    Continuous,
    Intermittent {
        triggers_per_year: f64,
        record_secs_per_trigger: f64,
    },
}

/// One data stream produced by a sensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamModel {
    pub label: String,
    pub sensor: SensorSpec,
    pub kind: StreamKind,
}

impl StreamModel {
    pub fn continuous(label: &str, sensor: SensorSpec) -> Self {
        Self {
            label: label.to_string(),
            sensor,
            kind: StreamKind::Continuous,
        }
    }

    pub fn intermittent(
        label: &str,
        sensor: SensorSpec,
        triggers_per_year: f64,
        record_secs_per_trigger: f64,
    ) -> Self {
        Self {
            label: label.to_string(),
            sensor,
            kind: StreamKind::Intermittent {
                triggers_per_year,
                record_secs_per_trigger,
            },
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.sensor.validate()?;
        if let StreamKind::Intermittent {
            triggers_per_year,
            record_secs_per_trigger,
        } = self.kind
        {
            if !(triggers_per_year > 0.0) {
                return Err(ScenarioError::InvalidTrigger {
                    field: "triggers_per_year",
                    value: triggers_per_year,
                });
            }
            if !(record_secs_per_trigger > 0.0) {
                return Err(ScenarioError::InvalidTrigger {
                    field: "record_secs_per_trigger",
                    value: record_secs_per_trigger,
                });
            }
        }
        Ok(())
    }

    /// Instantaneous generation rate while recording, in bits/second:
    /// bits per sample x components x sample rate.
    pub fn bitrate_bps(&self) -> f64 {
        self.sensor.bits_per_sample as f64
            * self.sensor.components as f64
            * self.sensor.sample_rate_sps
    }

    /// Bytes queued by one trigger: recording seconds times the byte rate.
    /// Continuous streams have no trigger payload.
    pub fn trigger_payload_bytes(&self) -> Result<f64, ScenarioError> {
        match self.kind {
            StreamKind::Intermittent {
                record_secs_per_trigger,
                ..
            } => Ok(record_secs_per_trigger * self.bitrate_bps() / 8.0),
            StreamKind::Continuous => Err(ScenarioError::NotIntermittent),
        }
    }

    /// Bytes generated per sensor over one 365-day year.
    pub fn yearly_volume_bytes(&self) -> f64 {
        match self.kind {
            StreamKind::Continuous => SECONDS_PER_YEAR * self.bitrate_bps() / 8.0,
            StreamKind::Intermittent {
                triggers_per_year, ..
            } => {
                // written as payload x triggers so the per-trigger identity
                // holds exactly in floating point as well
                self.trigger_payload_bytes().expect("intermittent") * triggers_per_year
            }
        }
    }
}

/// How a deployment operates overall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperationMode {
    OnDemand,
    Continuous,
    Both,
}

/// A deployment scenario: fleet size, geometry envelope, and the streams
/// each sensor produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioProfile {
    pub name: String,
    /// Working fleet size used in network totals.
    pub node_count: u64,
    /// Typical fleet-size envelope for this class of deployment.
    pub node_range: (u64, u64),
    pub spacing_m: (f64, f64),
    pub area_km2: (f64, f64),
    pub operation: OperationMode,
    pub streams: Vec<StreamModel>,
}

impl ScenarioProfile {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.streams.is_empty() {
            return Err(ScenarioError::NoStreams);
        }
        for s in &self.streams {
            s.validate()?;
        }
        Ok(())
    }

    /// Bytes generated by the whole fleet over one year: node count times
    /// the sum of per-sensor stream volumes.
    pub fn network_yearly_volume_bytes(&self) -> Result<f64, ScenarioError> {
        if self.streams.is_empty() {
            return Err(ScenarioError::NoStreams);
        }
        let per_sensor: f64 = self.streams.iter().map(|s| s.yearly_volume_bytes()).sum();
        Ok(self.node_count as f64 * per_sensor)
    }

    /// Sum of continuous stream rates, the `r_c` input to the feasibility
    /// checks.
    pub fn continuous_rate_bps(&self) -> f64 {
        self.streams
            .iter()
            .filter(|s| matches!(s.kind, StreamKind::Continuous))
            .map(|s| s.bitrate_bps())
            .sum()
    }

    /// Combined trigger arrival rate of all intermittent streams, in
    /// triggers/second (per sensor).
    pub fn trigger_rate_per_sec(&self) -> f64 {
        self.streams
            .iter()
            .filter_map(|s| match s.kind {
                StreamKind::Intermittent {
                    triggers_per_year, ..
                } => Some(triggers_per_year / SECONDS_PER_YEAR),
                StreamKind::Continuous => None,
            })
            .sum()
    }
}

/// The four built-in scenario rows.
///
/// Working node counts default to the top of each envelope (worst case).
/// Defaults with no firm source are deliberately conservative and meant to
/// be overridden from config: the fracture-monitoring profile records one
/// 4-hour full-trace campaign per year, and the survey-QC profile sends a
/// daily 8-byte report (encoded as a 1 s burst at 64 bps).
pub fn builtin_profiles() -> Vec<ScenarioProfile> {
    vec![
        ScenarioProfile {
            name: "GMM".to_string(),
            node_count: 100,
            node_range: (10, 100),
            spacing_m: (1000.0, 20_000.0),
            area_km2: (100.0, 1000.0),
            operation: OperationMode::OnDemand,
            streams: vec![StreamModel::intermittent(
                "ground-motion events",
                SensorSpec::new(3, 24, 150.0),
                500.0,
                120.0,
            )],
        },
        ScenarioProfile {
            name: "ANSI".to_string(),
            node_count: 10_000,
            node_range: (1000, 10_000),
            spacing_m: (100.0, 1000.0),
            area_km2: (1.0, 100.0),
            operation: OperationMode::Continuous,
            streams: vec![StreamModel::continuous(
                "ambient noise",
                SensorSpec::new(1, 4, 100.0),
            )],
        },
        ScenarioProfile {
            name: "MFM".to_string(),
            node_count: 500,
            node_range: (100, 500),
            spacing_m: (50.0, 100.0),
            area_km2: (1.0, 1.0),
            operation: OperationMode::Both,
            streams: vec![StreamModel::intermittent(
                "fracture campaign full trace",
                SensorSpec::new(3, 24, 200.0),
                1.0,
                4.0 * 3600.0,
            )],
        },
        ScenarioProfile {
            name: "QCLS".to_string(),
            node_count: 500_000,
            node_range: (100_000, 500_000),
            spacing_m: (10.0, 200.0),
            area_km2: (100.0, 100.0),
            operation: OperationMode::Both,
            streams: vec![StreamModel::intermittent(
                "survey QC report",
                SensorSpec::new(1, 8, 8.0),
                365.0,
                1.0,
            )],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ansi(sps: f64) -> StreamModel {
        StreamModel::continuous("ansi", SensorSpec::new(1, 4, sps))
    }

    fn gmm(sps: f64) -> StreamModel {
        StreamModel::intermittent("gmm", SensorSpec::new(3, 24, sps), 500.0, 120.0)
    }

    #[test]
    fn continuous_rates() {
        assert_eq!(ansi(50.0).bitrate_bps(), 200.0);
        assert_eq!(ansi(100.0).bitrate_bps(), 400.0);
        assert_eq!(ansi(200.0).bitrate_bps(), 800.0);
    }

    #[test]
    fn intermittent_rates() {
        assert_eq!(gmm(100.0).bitrate_bps(), 7200.0);
        assert_eq!(gmm(150.0).bitrate_bps(), 10_800.0);
        assert_eq!(gmm(200.0).bitrate_bps(), 14_400.0);
    }

    #[test]
    fn unit_rate() {
        let s = StreamModel::continuous("unit", SensorSpec::new(1, 1, 1.0));
        assert_eq!(s.bitrate_bps(), 1.0);
    }

    fn sig4(x: f64) -> f64 {
        let mag = 10f64.powf(x.abs().log10().floor() - 3.0);
        (x / mag).round() * mag
    }

    #[test]
    fn continuous_yearly_volumes() {
        assert_eq!(sig4(ansi(50.0).yearly_volume_bytes()), 788.4e6);
        assert_eq!(sig4(ansi(100.0).yearly_volume_bytes()), 1.577e9);
        assert_eq!(sig4(ansi(200.0).yearly_volume_bytes()), 3.154e9);
    }

    #[test]
    fn intermittent_yearly_volumes() {
        assert_eq!(sig4(gmm(100.0).yearly_volume_bytes()), 54.0e6);
        assert_eq!(sig4(gmm(150.0).yearly_volume_bytes()), 81.0e6);
        assert_eq!(sig4(gmm(200.0).yearly_volume_bytes()), 108.0e6);
    }

    #[test]
    fn one_byte_per_second_volume() {
        let s = StreamModel::continuous("slow", SensorSpec::new(1, 8, 1.0));
        assert_eq!(s.yearly_volume_bytes(), 31_536_000.0);
    }

    #[test]
    fn trigger_payloads_feed_design_grid() {
        assert_eq!(gmm(200.0).trigger_payload_bytes().unwrap(), 216_000.0);
        assert_eq!(gmm(150.0).trigger_payload_bytes().unwrap(), 162_000.0);
        assert_eq!(gmm(100.0).trigger_payload_bytes().unwrap(), 108_000.0);
        let tiny = StreamModel::intermittent("tiny", SensorSpec::new(1, 8, 1.0), 1.0, 1.0);
        assert_eq!(tiny.trigger_payload_bytes().unwrap(), 1.0);
    }

    #[test]
    fn trigger_payload_rejects_continuous() {
        assert_eq!(
            ansi(100.0).trigger_payload_bytes(),
            Err(ScenarioError::NotIntermittent)
        );
    }

    #[test]
    fn network_total_matches_design_study() {
        let profile = ScenarioProfile {
            name: "groningen".to_string(),
            node_count: 1600,
            node_range: (1600, 1600),
            spacing_m: (1000.0, 1000.0),
            area_km2: (1600.0, 1600.0),
            operation: OperationMode::Both,
            streams: vec![ansi(100.0), gmm(150.0)],
        };
        let total = profile.network_yearly_volume_bytes().unwrap();
        assert!((total / 2.66e12 - 1.0).abs() < 0.01, "got {total}");
        assert_eq!(profile.continuous_rate_bps(), 400.0);
        let per_year = profile.trigger_rate_per_sec() * SECONDS_PER_YEAR;
        assert!((per_year - 500.0).abs() < 1e-9);
    }

    #[test]
    fn single_node_single_stream_total() {
        let profile = ScenarioProfile {
            name: "one".to_string(),
            node_count: 1,
            node_range: (1, 1),
            spacing_m: (1.0, 1.0),
            area_km2: (1.0, 1.0),
            operation: OperationMode::Continuous,
            streams: vec![ansi(50.0)],
        };
        assert_eq!(
            sig4(profile.network_yearly_volume_bytes().unwrap()),
            788.4e6
        );
    }

    #[test]
    fn empty_profile_is_rejected() {
        let profile = ScenarioProfile {
            name: "empty".to_string(),
            node_count: 1,
            node_range: (1, 1),
            spacing_m: (1.0, 1.0),
            area_km2: (1.0, 1.0),
            operation: OperationMode::Continuous,
            streams: vec![],
        };
        assert_eq!(
            profile.network_yearly_volume_bytes(),
            Err(ScenarioError::NoStreams)
        );
        assert_eq!(profile.validate(), Err(ScenarioError::NoStreams));
    }

    #[test]
    fn builtin_rows_match_survey_table() {
        let profiles = builtin_profiles();
        let by_name = |n: &str| profiles.iter().find(|p| p.name == n).unwrap();

        let gmm = by_name("GMM");
        assert_eq!(gmm.node_range, (10, 100));
        assert_eq!(gmm.spacing_m, (1000.0, 20_000.0));
        assert_eq!(gmm.area_km2, (100.0, 1000.0));
        assert_eq!(gmm.operation, OperationMode::OnDemand);

        let qcls = by_name("QCLS");
        assert_eq!(qcls.node_range, (100_000, 500_000));
        // 8-byte QC report per shot
        assert_eq!(qcls.streams[0].trigger_payload_bytes().unwrap(), 8.0);

        let ansi = by_name("ANSI");
        assert_eq!(ansi.operation, OperationMode::Continuous);
        assert_eq!(ansi.node_range, (1000, 10_000));

        for p in &profiles {
            p.validate().unwrap();
        }
    }

    #[test]
    fn invalid_sensor_is_rejected() {
        let s = StreamModel::continuous("bad", SensorSpec::new(4, 24, 100.0));
        assert!(matches!(
            s.validate(),
            Err(ScenarioError::InvalidSensor { field: "components", .. })
        ));
        let s = StreamModel::continuous("bad", SensorSpec::new(1, 33, 100.0));
        assert!(s.validate().is_err());
        let s = StreamModel::intermittent("bad", SensorSpec::new(1, 8, 1.0), 0.0, 1.0);
        assert!(s.validate().is_err());
    }

    proptest! {
        #[test]
        fn yearly_volume_linear_in_trigger_stats(
            sps in 1.0f64..500.0,
            triggers in 1.0f64..1e4,
            record in 1.0f64..1e4,
            k in 1u32..20,
        ) {
            let base = StreamModel::intermittent(
                "s", SensorSpec::new(3, 24, sps), triggers, record);
            let scaled = StreamModel::intermittent(
                "s", SensorSpec::new(3, 24, sps), triggers * k as f64, record);
            let rel = scaled.yearly_volume_bytes()
                / (base.yearly_volume_bytes() * k as f64);
            prop_assert!((rel - 1.0).abs() < 1e-12);
        }

        #[test]
        fn payload_times_triggers_is_yearly_volume(
            sps in 1.0f64..500.0,
            triggers in 1.0f64..1e4,
            record in 1.0f64..1e4,
        ) {
            let s = StreamModel::intermittent(
                "s", SensorSpec::new(3, 24, sps), triggers, record);
            prop_assert_eq!(
                s.trigger_payload_bytes().unwrap() * triggers,
                s.yearly_volume_bytes()
            );
        }

        #[test]
        fn network_volume_linear_in_node_count(
            sps in 1.0f64..500.0,
            nodes in 1u64..10_000,
            k in 2u64..10,
        ) {
            let mk = |n: u64| ScenarioProfile {
                name: "p".to_string(),
                node_count: n,
                node_range: (n, n),
                spacing_m: (1.0, 1.0),
                area_km2: (1.0, 1.0),
                operation: OperationMode::Continuous,
                streams: vec![StreamModel::continuous(
                    "c", SensorSpec::new(1, 4, sps))],
            };
            let v1 = mk(nodes).network_yearly_volume_bytes().unwrap();
            let vk = mk(nodes * k).network_yearly_volume_bytes().unwrap();
            prop_assert!((vk / (v1 * k as f64) - 1.0).abs() < 1e-12);
        }
    }
}
