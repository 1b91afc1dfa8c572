//! Project configuration: one JSON document driving every subcommand,
//! validated against module preconditions at load time, plus the bundled
//! Groningen design-study preset.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;
use thiserror::Error;

use crate::cost::CostModel;
use crate::crosslayer::{DesignParams, Objective, ParamRanges, TechnologyEntry};
use crate::frames::split_payload;
use crate::scenarios::{ScenarioProfile, SensorSpec, StreamModel};
use crate::simulator::RetransmissionMode;
use crate::topology::{Architecture, Point, Region};

/// A config problem, pointing at the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("config error at {path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn new(path: impl Into<String>, message: impl ToString) -> Self {
        Self {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

/// Design-search settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignConfig {
    pub ranges: ParamRanges,
    pub objective: Objective,
}

/// Topology-planning settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanConfig {
    pub region: Region,
    pub node_spacing_km: f64,
    pub architecture: Architecture,
    pub gateway_spacing_km: f64,
    pub per_node_uplink_bps: f64,
    pub max_link_distance_km: f64,
    pub gateway_capacity_bps: f64,
    /// Wired sites (e.g. well-sites with existing backhaul) that host the
    /// gateways instead of a grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit_gateways: Option<Vec<Point>>,
}

/// Cost co-factors of one deployment option. Counts that depend on the
/// plan (nodes, gateways) are filled from the plan; only unit prices and
/// fixed extras live here. Prices in cents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostInputs {
    pub label: String,
    pub node_unit_price_cents: u64,
    /// Present when this option buys its own gateways (priced at the
    /// area-formula count).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gateway_unit_price_cents: Option<u64>,
    #[serde(default)]
    pub extra_mast_count: u64,
    #[serde(default)]
    pub mast_unit_price_cents: u64,
    #[serde(default)]
    pub subscription_cents_per_node_year: u64,
    pub years: u64,
}

impl CostInputs {
    /// Concrete cost model for a plan with `node_count` nodes and
    /// `formula_gateway_count` gateways.
    pub fn to_model(&self, node_count: u64, formula_gateway_count: u64) -> CostModel {
        CostModel {
            node_count,
            node_unit_price_cents: self.node_unit_price_cents,
            gateway_count: if self.gateway_unit_price_cents.is_some() {
                formula_gateway_count
            } else {
                0
            },
            gateway_unit_price_cents: self.gateway_unit_price_cents.unwrap_or(0),
            extra_mast_count: self.extra_mast_count,
            mast_unit_price_cents: self.mast_unit_price_cents,
            subscription_cents_per_node_year: self.subscription_cents_per_node_year,
            years: self.years,
        }
    }
}

/// Simulation settings: the design point to exercise plus runtime knobs.
/// The continuous rate and trigger statistics come from the scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSettings {
    pub design: DesignParams,
    pub bitrate_bps: f64,
    pub duration_secs: f64,
    pub node_count: usize,
    pub rng_seed: u64,
    pub retransmission: RetransmissionMode,
    #[serde(default)]
    pub injected_triggers: Vec<f64>,
    #[serde(default)]
    pub record_trace: bool,
    /// Where the per-frame CSV trace goes when recording is on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub currency_symbol: String,
}

/// The whole project configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectConfig {
    pub scenario: ScenarioProfile,
    pub design: DesignConfig,
    pub technologies: Vec<TechnologyEntry>,
    pub plan: PlanConfig,
    pub costs: Vec<CostInputs>,
    pub sim: SimSettings,
    pub output: OutputConfig,
}

impl ProjectConfig {
    /// The bundled design-study preset: a 40 km x 40 km field, 1600
    /// sensors on a 1 km grid, a continuous interferometry stream plus a
    /// triggered ground-motion stream, and the ten-hour working point of
    /// the cross-layer design.
    pub fn groningen() -> Self {
        let design_point = DesignParams {
            frame_efficiency: 0.9,
            frame_len_bytes: 128.0,
            trigger_payload_bytes: 216_000.0,
            delivery_deadline_secs: 36_000.0,
            duty_cycle: 0.01,
            split_ratio: 1.0,
            damaged_frame_rate: 0.01,
        };
        Self {
            scenario: ScenarioProfile {
                name: "groningen".to_string(),
                node_count: 1600,
                node_range: (1600, 1600),
                spacing_m: (1000.0, 1000.0),
                area_km2: (1600.0, 1600.0),
                operation: crate::scenarios::OperationMode::Both,
                streams: vec![
                    StreamModel::continuous(
                        "interferometry (continuous)",
                        SensorSpec::new(1, 4, 100.0),
                    ),
                    StreamModel::intermittent(
                        "ground motion (triggered)",
                        SensorSpec::new(3, 24, 150.0),
                        500.0,
                        120.0,
                    ),
                ],
            },
            design: DesignConfig {
                ranges: ParamRanges::singleton(&design_point),
                objective: Objective::MinBitrate,
            },
            technologies: crate::crosslayer::standard_catalog(),
            plan: PlanConfig {
                region: Region {
                    width_km: 40.0,
                    height_km: 40.0,
                },
                node_spacing_km: 1.0,
                architecture: Architecture::Hybrid,
                gateway_spacing_km: 6.0,
                per_node_uplink_bps: 10_770.0,
                max_link_distance_km: 5.0,
                // no vendor figure exists for gateway capacity; 1 Mbps
                // comfortably clears the ~383 kbps mean load
                gateway_capacity_bps: 1_000_000.0,
                explicit_gateways: None,
            },
            costs: vec![
                CostInputs {
                    label: "LoRa".to_string(),
                    node_unit_price_cents: 1000,
                    gateway_unit_price_cents: Some(100_000),
                    extra_mast_count: 0,
                    mast_unit_price_cents: 0,
                    subscription_cents_per_node_year: 0,
                    years: 1,
                },
                CostInputs {
                    label: "NB-IoT".to_string(),
                    node_unit_price_cents: 500,
                    gateway_unit_price_cents: None,
                    extra_mast_count: 5,
                    mast_unit_price_cents: 2_000_000,
                    subscription_cents_per_node_year: 3000,
                    years: 1,
                },
            ],
            sim: SimSettings {
                design: design_point,
                bitrate_bps: 10_770.0,
                duration_secs: 86_400.0,
                node_count: 16,
                rng_seed: 42,
                retransmission: RetransmissionMode::SingleRetry,
                injected_triggers: Vec::new(),
                record_trace: false,
                trace_path: None,
            },
            output: OutputConfig {
                currency_symbol: "$".to_string(),
            },
        }
    }

    /// Look up a bundled preset by name.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "groningen" => Some(Self::groningen()),
            _ => None,
        }
    }

    pub fn from_json_str(json: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(json).map_err(|e| ConfigError::new("<config>", e))
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| ConfigError::new(path.display().to_string(), e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Hash of the canonical JSON form, embedded in reports so any result
    /// can be traced back to the exact configuration.
    pub fn sha256(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    /// Check every module precondition up front, reporting the offending
    /// field path.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.scenario.streams.is_empty() {
            return Err(ConfigError::new(
                "scenario.streams",
                "profile must define at least one stream",
            ));
        }
        for (i, s) in self.scenario.streams.iter().enumerate() {
            s.validate()
                .map_err(|e| ConfigError::new(format!("scenario.streams[{i}]"), e))?;
        }
        if self.scenario.node_count == 0 {
            return Err(ConfigError::new(
                "scenario.node_count",
                "must be at least 1",
            ));
        }

        self.design
            .ranges
            .validate()
            .map_err(|e| ConfigError::new("design.ranges", e))?;
        validate_axis_values(&self.design.ranges)?;

        if self.technologies.is_empty() {
            return Err(ConfigError::new(
                "technologies",
                "catalog must list at least one technology",
            ));
        }
        for (i, t) in self.technologies.iter().enumerate() {
            if !(t.max_bitrate_bps > 0.0) {
                return Err(ConfigError::new(
                    format!("technologies[{i}].max_bitrate_bps"),
                    "must be positive",
                ));
            }
            if !(t.max_duty_cycle > 0.0 && t.max_duty_cycle <= 1.0) {
                return Err(ConfigError::new(
                    format!("technologies[{i}].max_duty_cycle"),
                    "must be in (0, 1]",
                ));
            }
        }

        let p = &self.plan;
        Region::new(p.region.width_km, p.region.height_km)
            .map_err(|e| ConfigError::new("plan.region", e))?;
        if !(p.node_spacing_km > 0.0)
            || p.node_spacing_km > p.region.width_km.min(p.region.height_km)
        {
            return Err(ConfigError::new(
                "plan.node_spacing_km",
                "must be positive and no larger than the region's short side",
            ));
        }
        if p.explicit_gateways.is_none() && !(p.gateway_spacing_km > 0.0) {
            return Err(ConfigError::new(
                "plan.gateway_spacing_km",
                "must be positive",
            ));
        }
        if let Some(gws) = &p.explicit_gateways {
            if gws.is_empty() {
                return Err(ConfigError::new(
                    "plan.explicit_gateways",
                    "must list at least one site when present",
                ));
            }
        }
        if !(p.per_node_uplink_bps > 0.0) {
            return Err(ConfigError::new(
                "plan.per_node_uplink_bps",
                "must be positive",
            ));
        }
        if !(p.max_link_distance_km > 0.0) {
            return Err(ConfigError::new(
                "plan.max_link_distance_km",
                "must be positive",
            ));
        }
        if !(p.gateway_capacity_bps > 0.0) {
            return Err(ConfigError::new(
                "plan.gateway_capacity_bps",
                "must be positive",
            ));
        }

        for (i, c) in self.costs.iter().enumerate() {
            if c.years == 0 {
                return Err(ConfigError::new(
                    format!("costs[{i}].years"),
                    "must be at least 1",
                ));
            }
        }

        let s = &self.sim;
        s.design
            .validate()
            .map_err(|e| ConfigError::new("sim.design", e))?;
        split_payload(
            s.design.frame_len_bytes.round() as u32,
            s.design.frame_efficiency,
            s.design.split_ratio,
        )
        .map_err(|e| ConfigError::new("sim.design", e))?;
        if !(s.bitrate_bps > 0.0) {
            return Err(ConfigError::new("sim.bitrate_bps", "must be positive"));
        }
        if !(s.duration_secs >= 0.0) {
            return Err(ConfigError::new("sim.duration_secs", "must be nonnegative"));
        }
        if s.node_count == 0 {
            return Err(ConfigError::new("sim.node_count", "must be at least 1"));
        }
        for (i, t) in s.injected_triggers.iter().enumerate() {
            if !(*t >= 0.0) {
                return Err(ConfigError::new(
                    format!("sim.injected_triggers[{i}]"),
                    "must be nonnegative",
                ));
            }
        }

        Ok(())
    }
}

type AxisCheck<'a> = (&'a str, &'a crate::crosslayer::Axis, fn(f64) -> bool, &'a str);

fn validate_axis_values(ranges: &ParamRanges) -> Result<(), ConfigError> {
    let checks: [AxisCheck; 7] = [
        (
            "design.ranges.frame_efficiency",
            &ranges.frame_efficiency,
            |v| v > 0.0 && v <= 1.0,
            "values must be in (0, 1]",
        ),
        (
            "design.ranges.frame_len_bytes",
            &ranges.frame_len_bytes,
            |v| v > 0.0,
            "values must be positive",
        ),
        (
            "design.ranges.trigger_payload_bytes",
            &ranges.trigger_payload_bytes,
            |v| v >= 1.0,
            "values must be at least 1",
        ),
        (
            "design.ranges.delivery_deadline_secs",
            &ranges.delivery_deadline_secs,
            |v| v > 0.0,
            "values must be positive",
        ),
        (
            "design.ranges.duty_cycle",
            &ranges.duty_cycle,
            |v| v > 0.0 && v <= 1.0,
            "values must be in (0, 1]",
        ),
        (
            "design.ranges.split_ratio",
            &ranges.split_ratio,
            |v| v > 0.0,
            "values must be positive",
        ),
        (
            "design.ranges.damaged_frame_rate",
            &ranges.damaged_frame_rate,
            |v| (0.0..1.0).contains(&v),
            "values must be in [0, 1)",
        ),
    ];
    for (path, axis, ok, msg) in checks {
        if !axis.values().iter().all(|v| ok(*v)) {
            return Err(ConfigError::new(path, msg));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_validates() {
        let cfg = ProjectConfig::groningen();
        cfg.validate().unwrap();
        assert!(ProjectConfig::preset("groningen").is_some());
        assert!(ProjectConfig::preset("nowhere").is_none());
    }

    #[test]
    fn json_round_trip_is_identity() {
        let cfg = ProjectConfig::groningen();
        let json = cfg.to_json();
        let reloaded = ProjectConfig::from_json_str(&json).unwrap();
        assert_eq!(cfg, reloaded);
        assert_eq!(json, reloaded.to_json());
        assert_eq!(cfg.sha256(), reloaded.sha256());
    }

    #[test]
    fn validation_reports_field_paths() {
        let mut cfg = ProjectConfig::groningen();
        cfg.scenario.streams.clear();
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.path, "scenario.streams");

        let mut cfg = ProjectConfig::groningen();
        cfg.sim.bitrate_bps = 0.0;
        assert_eq!(cfg.validate().unwrap_err().path, "sim.bitrate_bps");

        let mut cfg = ProjectConfig::groningen();
        cfg.design.ranges.duty_cycle = crate::crosslayer::Axis::single(1.5);
        assert_eq!(
            cfg.validate().unwrap_err().path,
            "design.ranges.duty_cycle"
        );

        let mut cfg = ProjectConfig::groningen();
        cfg.plan.gateway_capacity_bps = -1.0;
        assert_eq!(
            cfg.validate().unwrap_err().path,
            "plan.gateway_capacity_bps"
        );
    }

    #[test]
    fn bad_json_is_a_config_error() {
        let err = ProjectConfig::from_json_str("{not json").unwrap_err();
        assert_eq!(err.path, "<config>");
    }

    #[test]
    fn hash_changes_with_content() {
        let a = ProjectConfig::groningen();
        let mut b = ProjectConfig::groningen();
        b.sim.rng_seed = 43;
        assert_ne!(a.sha256(), b.sha256());
    }
}
