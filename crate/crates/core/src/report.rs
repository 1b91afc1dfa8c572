//! Structured result documents and their machine (JSON) and human
//! (aligned text) renderings. Both renderings come from the same values;
//! the text adds rounded unit-scaled figures in parentheses.

use serde::{Deserialize, Serialize};

use crate::cost::CostModel;
use crate::crosslayer::{DesignOutcome, Objective};
use crate::simulator::{AnalyticalComparison, SimReport};
use crate::topology::Architecture;

/// Enough to reproduce a report: tool version, config hash, seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub config_sha256: String,
    pub rng_seed: u64,
}

/// One stream's rate/volume row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamRow {
    pub label: String,
    pub kind: String,
    pub bitrate_bps: f64,
    pub yearly_bytes_per_sensor: f64,
    pub trigger_payload_bytes: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatesSection {
    pub scenario: String,
    pub node_count: u64,
    pub rows: Vec<StreamRow>,
    pub network_yearly_bytes: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSection {
    pub objective: Objective,
    pub evaluated: usize,
    pub feasible_count: usize,
    /// Best feasible outcome under the objective, when any exists.
    pub chosen: Option<DesignOutcome>,
    pub feasible: Vec<DesignOutcome>,
    pub pareto_front: Vec<DesignOutcome>,
    /// Candidates that failed, with per-criterion reasons retained.
    pub rejected: Vec<DesignOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostRow {
    pub label: String,
    pub model: CostModel,
    pub total_cents: u64,
    pub formatted: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSection {
    pub architecture: Architecture,
    pub node_count: usize,
    /// Gateway count by the area formula (drives the cost rows).
    pub formula_gateway_count: u64,
    /// Gateways actually placed on the grid.
    pub placed_gateway_count: usize,
    pub covered_count: usize,
    pub uncovered_nodes: Vec<usize>,
    pub overloaded_gateways: Vec<usize>,
    pub max_assigned_distance_km: f64,
    pub mean_load_formula_bps: f64,
    pub mean_load_placed_bps: f64,
    pub per_gateway_load_bps: Vec<f64>,
    pub notes: Vec<String>,
    pub cost_rows: Vec<CostRow>,
    pub cost_disclaimer: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSection {
    pub report: SimReport,
    pub comparison: AnalyticalComparison,
    pub required_buffer_secs: Option<f64>,
}

/// The result document emitted by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub provenance: Provenance,
    pub rates: Option<RatesSection>,
    pub design: Option<DesignSection>,
    pub plan: Option<PlanSection>,
    pub simulation: Option<SimulationSection>,
}

/// Human-scale SI rendering of a byte count.
pub fn human_bytes(bytes: f64) -> String {
    const UNITS: [(f64, &str); 4] = [(1e12, "TB"), (1e9, "GB"), (1e6, "MB"), (1e3, "kB")];
    for (scale, unit) in UNITS {
        if bytes.abs() >= scale {
            return format!("{:.3} {unit}", bytes / scale);
        }
    }
    format!("{bytes:.0} B")
}

/// Human-scale rendering of a bit-rate.
pub fn human_bps(bps: f64) -> String {
    if bps.abs() >= 1e6 {
        format!("{:.2} Mbps", bps / 1e6)
    } else if bps.abs() >= 1e3 {
        format!("{:.2} kbps", bps / 1e3)
    } else {
        format!("{bps:.1} bps")
    }
}

fn outcome_lines(out: &DesignOutcome, indent: &str, buf: &mut String) {
    let p = &out.params;
    buf.push_str(&format!(
        "{indent}efficiency {} | frame {} B | payload {} B | deadline {} s | duty {} | split {} | loss {}\n",
        p.frame_efficiency,
        p.frame_len_bytes,
        p.trigger_payload_bytes,
        p.delivery_deadline_secs,
        p.duty_cycle,
        p.split_ratio,
        p.damaged_frame_rate,
    ));
    buf.push_str(&format!(
        "{indent}required bitrate {} bps ({}) | frames/trigger {} | delay {} s\n",
        out.required_bitrate_bps,
        human_bps(out.required_bitrate_bps),
        out.frames_needed,
        out.delivery_delay_secs,
    ));
    for (name, c) in [
        ("delivery", &out.feasibility.delivery_before_next_trigger),
        ("buffer", &out.feasibility.buffer_sustainability),
        ("technology", &out.feasibility.technology_match),
    ] {
        buf.push_str(&format!(
            "{indent}  [{}] {}: {}\n",
            if c.passed { "pass" } else { "FAIL" },
            name,
            c.detail
        ));
    }
    if let Some(w) = &out.feasibility.buffer_warning {
        buf.push_str(&format!("{indent}  [warn] {w}\n"));
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "seisplan v{} | config {} | seed {}\n",
            self.provenance.tool_version,
            &self.provenance.config_sha256[..16.min(self.provenance.config_sha256.len())],
            self.provenance.rng_seed
        ));

        if let Some(r) = &self.rates {
            out.push_str(&format!(
                "\n== Data generation: {} ({} nodes) ==\n",
                r.scenario, r.node_count
            ));
            out.push_str(&format!(
                "{:<34} {:<13} {:>14} {:>22} {:>16}\n",
                "stream", "kind", "bitrate [bps]", "yearly/sensor [B]", "trigger [B]"
            ));
            for row in &r.rows {
                out.push_str(&format!(
                    "{:<34} {:<13} {:>14} {:>22} {:>16}\n",
                    row.label,
                    row.kind,
                    row.bitrate_bps,
                    row.yearly_bytes_per_sensor,
                    row.trigger_payload_bytes
                        .map(|b| b.to_string())
                        .unwrap_or_else(|| "-".to_string()),
                ));
            }
            out.push_str(&format!(
                "network yearly volume: {} B ({})\n",
                r.network_yearly_bytes,
                human_bytes(r.network_yearly_bytes)
            ));
        }

        if let Some(d) = &self.design {
            out.push_str(&format!(
                "\n== Design search: {:?}, {} candidates, {} feasible ==\n",
                d.objective, d.evaluated, d.feasible_count
            ));
            match &d.chosen {
                Some(c) => {
                    out.push_str("chosen design:\n");
                    outcome_lines(c, "  ", &mut out);
                }
                None => out.push_str(
                    "no feasible design; per-candidate diagnosis follows\n",
                ),
            }
            if !d.pareto_front.is_empty() {
                out.push_str(&format!(
                    "pareto front over (bitrate, deadline): {} designs\n",
                    d.pareto_front.len()
                ));
                for c in &d.pareto_front {
                    out.push_str(&format!(
                        "  {} bps ({}) at deadline {} s\n",
                        c.required_bitrate_bps,
                        human_bps(c.required_bitrate_bps),
                        c.params.delivery_deadline_secs
                    ));
                }
            }
            for c in &d.rejected {
                out.push_str("rejected candidate:\n");
                outcome_lines(c, "  ", &mut out);
            }
        }

        if let Some(p) = &self.plan {
            out.push_str(&format!(
                "\n== Network plan: {:?} ==\n",
                p.architecture
            ));
            out.push_str(&format!(
                "nodes {} | gateways {} (formula) / {} (placed) | covered {} | max link {} km\n",
                p.node_count,
                p.formula_gateway_count,
                p.placed_gateway_count,
                p.covered_count,
                p.max_assigned_distance_km
            ));
            out.push_str(&format!(
                "mean gateway load {} bps ({}) over the formula count, {} bps over the placed grid\n",
                p.mean_load_formula_bps,
                human_bps(p.mean_load_formula_bps),
                p.mean_load_placed_bps
            ));
            if !p.uncovered_nodes.is_empty() {
                out.push_str(&format!(
                    "UNCOVERED: {} nodes beyond link range\n",
                    p.uncovered_nodes.len()
                ));
            }
            if !p.overloaded_gateways.is_empty() {
                out.push_str(&format!(
                    "OVERLOADED: {} gateways above capacity\n",
                    p.overloaded_gateways.len()
                ));
            }
            for n in &p.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out.push_str(&format!(
                "{:<12} {:>8} {:>10} {:>8} {:>12} {:>7} {:>14}\n",
                "option", "nodes", "gateways", "masts", "subscription", "years", "total opex"
            ));
            for row in &p.cost_rows {
                out.push_str(&format!(
                    "{:<12} {:>8} {:>10} {:>8} {:>12} {:>7} {:>14}\n",
                    row.label,
                    row.model.node_count,
                    row.model.gateway_count,
                    row.model.extra_mast_count,
                    row.model.subscription_cents_per_node_year,
                    row.model.years,
                    row.formatted
                ));
            }
            out.push_str(&format!("{}\n", p.cost_disclaimer));
        }

        if let Some(s) = &self.simulation {
            let r = &s.report;
            out.push_str(&format!(
                "\n== Simulation: {} node(s), {} cycles of {} s ==\n",
                r.config.node_count, r.cycles_per_node, r.cycle_secs
            ));
            for w in &r.warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            if r.per_node.iter().any(|n| n.backlog_unstable) {
                out.push_str(
                    "warning: continuous generation outpaces the frame payload per cycle; the buffer grows with run duration\n",
                );
            }
            out.push_str(&format!(
                "triggers delivered {} | frames sent {} | FER {} | throughput {} bps ({})\n",
                r.delivery_delays_secs.len(),
                r.per_node.iter().map(|n| n.frames_sent).sum::<u64>(),
                r.empirical_fer,
                r.aggregate_throughput_bps,
                human_bps(r.aggregate_throughput_bps)
            ));
            let c = &s.comparison;
            out.push_str(&format!(
                "predicted delay {} s | samples {}\n",
                c.predicted_delay_secs, c.sample_count
            ));
            if let (Some(mean), Some(rel)) = (c.mean_delay_secs, c.relative_error) {
                out.push_str(&format!(
                    "mean delay {} s (cycle convention) | relative error {}\n",
                    mean, rel
                ));
            }
            if let Some(m) = c.median_delay_secs {
                out.push_str(&format!("median {} s | p95 {} s\n", m, c.p95_delay_secs.unwrap()));
            }
            out.push_str(&format!(
                "single-retransmission assumption held: {} (shortfall {})\n",
                c.single_retry_assumption_held, c.single_retry_shortfall
            ));
            out.push_str(&format!(
                "buffer: max {} B, mean {} B",
                r.max_buffer_bytes, r.mean_buffer_bytes
            ));
            match s.required_buffer_secs {
                Some(t) => out.push_str(&format!(", required {} s of generation\n", t)),
                None => out.push_str(", required duration undefined (no continuous stream)\n"),
            }
            let l = &r.conservation;
            out.push_str(&format!(
                "ledger (continuous): generated {} = delivered {} + buffered {} + in-flight {} [{}]\n",
                l.generated_continuous_bytes,
                l.delivered_continuous_bytes,
                l.buffered_continuous_bytes,
                l.in_flight_continuous_bytes,
                if l.continuous_balanced() { "balanced" } else { "IMBALANCED" }
            ));
            out.push_str(&format!(
                "ledger (intermittent): generated {} = delivered {} + queued {} + in-flight {} [{}]\n",
                l.generated_intermittent_bytes,
                l.delivered_intermittent_bytes,
                l.queued_intermittent_bytes,
                l.in_flight_intermittent_bytes,
                if l.intermittent_balanced() { "balanced" } else { "IMBALANCED" }
            ));
        }

        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_units() {
        assert_eq!(human_bytes(2.65248e12), "2.652 TB");
        assert_eq!(human_bytes(788.4e6), "788.400 MB");
        assert_eq!(human_bytes(42.0), "42 B");
        assert_eq!(human_bps(10_770.0), "10.77 kbps");
        assert_eq!(human_bps(400.0), "400.0 bps");
        assert_eq!(human_bps(1.5e6), "1.50 Mbps");
    }
}
