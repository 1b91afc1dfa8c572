//! The four workflows behind the CLI subcommands: data-generation rates,
//! cross-layer design search, topology/cost planning, and protocol
//! simulation. Each takes a validated [`ProjectConfig`] and produces a
//! [`Report`].

use thiserror::Error;

use crate::config::{ConfigError, ProjectConfig};
use crate::cost::{format_money, total_opex_cents, COST_DISCLAIMER};
use crate::crosslayer::design_search;
use crate::report::{
    CostRow, DesignSection, PlanSection, Provenance, RatesSection, Report, SimulationSection,
    StreamRow,
};
use crate::scenarios::StreamKind;
use crate::simulator::{compare_to_analytical, required_buffer_secs, run, SimConfig, SimError};
use crate::topology::{grid_nodes, plan_network, PlanInputs};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CommandError {
    #[error(transparent)]
    Validation(#[from] ConfigError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CommandError {
    /// Process exit code: 2 for configuration problems, 3 for internal
    /// failures. (Exit 1 is reserved for an infeasible design, which is a
    /// report, not an error.)
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Validation(_) => 2,
            CommandError::Internal(_) => 3,
        }
    }
}

fn provenance(cfg: &ProjectConfig) -> Provenance {
    Provenance {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config_sha256: cfg.sha256(),
        rng_seed: cfg.sim.rng_seed,
    }
}

fn empty_report(cfg: &ProjectConfig) -> Report {
    Report {
        provenance: provenance(cfg),
        rates: None,
        design: None,
        plan: None,
        simulation: None,
    }
}

/// Per-stream bit-rates and yearly volumes for the configured scenario,
/// plus the whole-network total.
pub fn cmd_rates(cfg: &ProjectConfig) -> Result<Report, CommandError> {
    cfg.validate()?;
    let scenario = &cfg.scenario;
    let rows: Vec<StreamRow> = scenario
        .streams
        .iter()
        .map(|s| StreamRow {
            label: s.label.clone(),
            kind: match s.kind {
                StreamKind::Continuous => "continuous".to_string(),
                StreamKind::Intermittent { .. } => "intermittent".to_string(),
            },
            bitrate_bps: s.bitrate_bps(),
            yearly_bytes_per_sensor: s.yearly_volume_bytes(),
            trigger_payload_bytes: s.trigger_payload_bytes().ok(),
        })
        .collect();
    let network_yearly_bytes = scenario
        .network_yearly_volume_bytes()
        .map_err(|e| ConfigError {
            path: "scenario.streams".to_string(),
            message: e.to_string(),
        })?;
    let mut report = empty_report(cfg);
    report.rates = Some(RatesSection {
        scenario: scenario.name.clone(),
        node_count: scenario.node_count,
        rows,
        network_yearly_bytes,
    });
    Ok(report)
}

/// Run the exhaustive design search. An empty feasible set is reported
/// with per-candidate diagnosis (the CLI maps it to a distinct exit
/// status), not raised as an error.
pub fn cmd_design(cfg: &ProjectConfig) -> Result<Report, CommandError> {
    cfg.validate()?;
    let continuous_rate = cfg.scenario.continuous_rate_bps();
    let trigger_rate = cfg.scenario.trigger_rate_per_sec();
    let survey = design_search(
        &cfg.design.ranges,
        cfg.design.objective,
        continuous_rate,
        trigger_rate,
        &cfg.technologies,
    )
    .map_err(|e| CommandError::Internal(e.to_string()))?;
    let mut report = empty_report(cfg);
    report.design = Some(DesignSection {
        objective: cfg.design.objective,
        evaluated: survey.evaluated,
        feasible_count: survey.feasible.len(),
        chosen: survey.feasible.first().cloned(),
        feasible: survey.feasible,
        pareto_front: survey.pareto_front,
        rejected: survey.infeasible,
    });
    Ok(report)
}

/// Plan the node/gateway topology and cost out each deployment option.
pub fn cmd_plan(cfg: &ProjectConfig) -> Result<Report, CommandError> {
    cfg.validate()?;
    let layout = grid_nodes(&cfg.plan.region, cfg.plan.node_spacing_km)
        .map_err(|e| CommandError::Internal(e.to_string()))?;
    let plan = plan_network(
        &layout,
        &PlanInputs {
            architecture: cfg.plan.architecture,
            gateway_spacing_km: cfg.plan.gateway_spacing_km,
            per_node_uplink_bps: cfg.plan.per_node_uplink_bps,
            max_link_distance_km: cfg.plan.max_link_distance_km,
            gateway_capacity_bps: cfg.plan.gateway_capacity_bps,
            explicit_gateways: cfg.plan.explicit_gateways.clone(),
        },
    )
    .map_err(|e| CommandError::Internal(e.to_string()))?;

    let node_count = layout.positions.len();
    let cost_rows: Vec<CostRow> = cfg
        .costs
        .iter()
        .map(|ci| {
            let model = ci.to_model(node_count as u64, plan.formula_gateway_count);
            let total = total_opex_cents(&model);
            CostRow {
                label: ci.label.clone(),
                total_cents: total,
                formatted: format_money(total, &cfg.output.currency_symbol),
                model,
            }
        })
        .collect();

    let total_load = plan.total_load_bps();
    let mut report = empty_report(cfg);
    report.plan = Some(PlanSection {
        architecture: plan.architecture,
        node_count,
        formula_gateway_count: plan.formula_gateway_count,
        placed_gateway_count: plan.gateways.len(),
        covered_count: plan.covered_count(),
        uncovered_nodes: plan.uncovered_nodes.clone(),
        overloaded_gateways: plan.overloaded_gateways.clone(),
        max_assigned_distance_km: plan.max_assigned_distance_km,
        mean_load_formula_bps: total_load / plan.formula_gateway_count as f64,
        mean_load_placed_bps: total_load / plan.gateways.len() as f64,
        per_gateway_load_bps: plan.per_gateway_load_bps.clone(),
        notes: plan.notes.clone(),
        cost_rows,
        cost_disclaimer: COST_DISCLAIMER.to_string(),
    });
    Ok(report)
}

/// Simulate the configured design point and compare the measured delays
/// against the closed-form prediction.
pub fn cmd_simulate(cfg: &ProjectConfig) -> Result<Report, CommandError> {
    cfg.validate()?;
    let s = &cfg.sim;
    let mut sim_cfg = SimConfig::from_design(&s.design, s.bitrate_bps).map_err(map_sim_err)?;
    sim_cfg.continuous_rate_bps = cfg.scenario.continuous_rate_bps();
    sim_cfg.trigger_rate_per_sec = cfg.scenario.trigger_rate_per_sec();
    sim_cfg.retransmission = s.retransmission;
    sim_cfg.duration_secs = s.duration_secs;
    sim_cfg.node_count = s.node_count;
    sim_cfg.rng_seed = s.rng_seed;
    sim_cfg.injected_triggers = s.injected_triggers.clone();
    sim_cfg.record_trace = s.record_trace;

    let sim_report = run(&sim_cfg).map_err(map_sim_err)?;
    let comparison = compare_to_analytical(&sim_report, &s.design, s.bitrate_bps)
        .map_err(|e| CommandError::Internal(e.to_string()))?;
    let required = required_buffer_secs(&sim_report);

    let mut report = empty_report(cfg);
    report.simulation = Some(SimulationSection {
        report: sim_report,
        comparison,
        required_buffer_secs: required,
    });
    Ok(report)
}

fn map_sim_err(e: SimError) -> CommandError {
    match e {
        SimError::EmptyPayload | SimError::InvalidConfig(_) => {
            CommandError::Validation(ConfigError {
                path: "sim".to_string(),
                message: e.to_string(),
            })
        }
        SimError::ParameterMismatch(_) => CommandError::Internal(e.to_string()),
    }
}
