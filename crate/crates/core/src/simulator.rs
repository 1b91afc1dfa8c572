//! Seedable, cycle-quantized simulation of the duty-cycled dual-stream
//! transmission protocol.
//!
//! Time advances in duty-cycle periods. At each transmission opportunity a
//! node sends exactly one frame: a pending damaged frame is retransmitted
//! first, otherwise a fresh frame is filled according to the trigger flag
//! (queued intermittent data goes into d2, the continuous buffer drains
//! into d1 and any d2 leftover). Frames are damaged independently with the
//! configured probability from a per-node RNG stream, so multi-node runs
//! can execute concurrently without changing any result.
//!
//! Byte accounting is integral end to end: conservation checks hold
//! exactly, not within a tolerance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crosslayer::{total_trigger_delay, DesignParams};
use crate::frames::{frame_airtime, split_payload, DutyCycle, FrameSpec, TriggerFlag};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("frame payload is zero; nothing can be transmitted")]
    EmptyPayload,
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("report does not match the analytical parameters: {0}")]
    ParameterMismatch(String),
}

/// How damaged frames are retried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetransmissionMode {
    /// One retransmission always recovers the frame (the analytical
    /// assumption). Retransmissions that would have been damaged again are
    /// counted, not retried.
    SingleRetry,
    /// Retry until the frame goes through.
    Persistent,
}

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub frame: FrameSpec,
    pub duty: DutyCycle,
    pub bitrate_bps: f64,
    /// Continuous stream generation rate; zero disables the stream.
    pub continuous_rate_bps: f64,
    /// Poisson trigger arrival rate per node, in triggers/second. Ignored
    /// when `injected_triggers` is non-empty.
    pub trigger_rate_per_sec: f64,
    /// Intermittent bytes released by each trigger.
    pub trigger_payload_bytes: u64,
    pub damaged_frame_rate: f64,
    pub retransmission: RetransmissionMode,
    pub duration_secs: f64,
    pub node_count: usize,
    pub rng_seed: u64,
    /// Explicit trigger arrival times applied to every node, for
    /// reproducible runs. Empty means Poisson arrivals.
    #[serde(default)]
    pub injected_triggers: Vec<f64>,
    #[serde(default)]
    pub record_trace: bool,
}

impl SimConfig {
    /// Build a protocol-consistent config from a design point: the frame
    /// is the integral payload split and the cycle's on-time is exactly
    /// one frame airtime at `bitrate_bps`. Runtime knobs get neutral
    /// defaults meant to be overridden by struct update.
    pub fn from_design(p: &DesignParams, bitrate_bps: f64) -> Result<Self, SimError> {
        let frame_len = p.frame_len_bytes.round() as u32;
        let frame = split_payload(frame_len, p.frame_efficiency, p.split_ratio)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        let airtime = frame_airtime(frame_len, bitrate_bps)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        let duty = DutyCycle::from_frame_time(airtime, p.duty_cycle)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        Ok(Self {
            frame,
            duty,
            bitrate_bps,
            continuous_rate_bps: 0.0,
            trigger_rate_per_sec: 0.0,
            trigger_payload_bytes: p.trigger_payload_bytes.round() as u64,
            damaged_frame_rate: p.damaged_frame_rate,
            retransmission: RetransmissionMode::SingleRetry,
            duration_secs: 86_400.0,
            node_count: 1,
            rng_seed: 0,
            injected_triggers: Vec::new(),
            record_trace: false,
        })
    }

    fn validate(&self) -> Result<(), SimError> {
        if self.frame.payload_len() == 0 {
            return Err(SimError::EmptyPayload);
        }
        if !(self.bitrate_bps > 0.0) {
            return Err(SimError::InvalidConfig(format!(
                "bitrate_bps must be positive, got {}",
                self.bitrate_bps
            )));
        }
        if !(self.continuous_rate_bps >= 0.0) {
            return Err(SimError::InvalidConfig(
                "continuous_rate_bps must be nonnegative".to_string(),
            ));
        }
        if !(self.trigger_rate_per_sec >= 0.0) {
            return Err(SimError::InvalidConfig(
                "trigger_rate_per_sec must be nonnegative".to_string(),
            ));
        }
        if !(self.damaged_frame_rate >= 0.0 && self.damaged_frame_rate < 1.0) {
            return Err(SimError::InvalidConfig(format!(
                "damaged_frame_rate must be in [0, 1), got {}",
                self.damaged_frame_rate
            )));
        }
        if !(self.duration_secs >= 0.0) {
            return Err(SimError::InvalidConfig(
                "duration_secs must be nonnegative".to_string(),
            ));
        }
        if self.node_count == 0 {
            return Err(SimError::InvalidConfig(
                "node_count must be at least 1".to_string(),
            ));
        }
        let triggers_possible = self.trigger_rate_per_sec > 0.0 || !self.injected_triggers.is_empty();
        if triggers_possible && self.frame.d2_len == 0 {
            return Err(SimError::InvalidConfig(
                "intermittent data expected but the frame has no d2 section".to_string(),
            ));
        }
        if triggers_possible && self.trigger_payload_bytes == 0 {
            return Err(SimError::InvalidConfig(
                "triggers expected but trigger_payload_bytes is zero".to_string(),
            ));
        }
        Ok(())
    }
}

/// One transmission attempt, for the optional per-frame trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub time_secs: f64,
    pub node: usize,
    pub frame_no: u64,
    /// Trigger-flag bit: 1 when d2 carries intermittent data.
    pub flag: u8,
    /// Data bytes in the d1 section.
    pub d1_bytes: u64,
    /// Data bytes in the d2 section (intermittent plus continuous
    /// backfill).
    pub d2_bytes: u64,
    pub damaged: bool,
    pub retry: bool,
}

impl TraceRow {
    pub const CSV_HEADER: &'static str = "time,node,frame_no,flag,d1_bytes,d2_bytes,damaged,retry";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.time_secs,
            self.node,
            self.frame_no,
            self.flag,
            self.d1_bytes,
            self.d2_bytes,
            self.damaged as u8,
            self.retry as u8
        )
    }
}

/// Per-node counters and ledgers at the end of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeStats {
    pub node: usize,
    /// Transmission attempts, retransmissions included.
    pub frames_sent: u64,
    pub frames_damaged: u64,
    pub frames_retransmitted: u64,
    /// Retransmissions damaged again while in single-retry mode: each one
    /// is a frame the analytical single-retransmission assumption missed.
    pub retry_shortfall: u64,
    pub triggers_enqueued: u64,
    pub triggers_delivered: u64,
    pub generated_continuous_bytes: u64,
    pub delivered_continuous_bytes: u64,
    pub buffered_continuous_bytes: u64,
    pub in_flight_continuous_bytes: u64,
    pub generated_intermittent_bytes: u64,
    pub delivered_intermittent_bytes: u64,
    pub queued_intermittent_bytes: u64,
    pub in_flight_intermittent_bytes: u64,
    /// Peak continuous-buffer occupancy, sampled at each opportunity after
    /// accrual and before service.
    pub max_buffer_bytes: u64,
    pub mean_buffer_bytes: f64,
    pub throughput_bps: f64,
    /// Continuous generation outpaces the frame payload per cycle: the
    /// buffer grows with run duration.
    pub backlog_unstable: bool,
}

/// Aggregate byte ledger; both balances hold exactly for every run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConservationLedger {
    pub generated_continuous_bytes: u64,
    pub delivered_continuous_bytes: u64,
    pub buffered_continuous_bytes: u64,
    pub in_flight_continuous_bytes: u64,
    pub generated_intermittent_bytes: u64,
    pub delivered_intermittent_bytes: u64,
    pub queued_intermittent_bytes: u64,
    pub in_flight_intermittent_bytes: u64,
}

impl ConservationLedger {
    pub fn continuous_balanced(&self) -> bool {
        self.generated_continuous_bytes
            == self.delivered_continuous_bytes
                + self.buffered_continuous_bytes
                + self.in_flight_continuous_bytes
    }

    pub fn intermittent_balanced(&self) -> bool {
        self.generated_intermittent_bytes
            == self.delivered_intermittent_bytes
                + self.queued_intermittent_bytes
                + self.in_flight_intermittent_bytes
    }
}

/// Everything measured by one simulation run. Identical configs (seed
/// included) produce bit-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub cycle_secs: f64,
    pub cycles_per_node: u64,
    pub warnings: Vec<String>,
    pub per_node: Vec<NodeStats>,
    /// Per-trigger delivery delay, measured to the end of the duty cycle
    /// that carried the trigger's last byte. Node-major order.
    pub delivery_delays_secs: Vec<f64>,
    /// Same deliveries, measured to the end of the final frame airtime
    /// (trailing off-time excluded).
    pub delivery_delays_last_byte_secs: Vec<f64>,
    pub empirical_fer: f64,
    pub max_buffer_bytes: u64,
    pub mean_buffer_bytes: f64,
    /// Peak buffer occupancy expressed as seconds of continuous
    /// generation; undefined without a continuous stream.
    pub required_buffer_secs: Option<f64>,
    pub conservation: ConservationLedger,
    pub aggregate_throughput_bps: f64,
    pub trace: Vec<TraceRow>,
}

impl SimReport {
    pub fn mean_delay_secs(&self) -> Option<f64> {
        if self.delivery_delays_secs.is_empty() {
            None
        } else {
            Some(self.delivery_delays_secs.iter().sum::<f64>() / self.delivery_delays_secs.len() as f64)
        }
    }
}

/// Peak buffer occupancy as seconds of continuous generation (the buffer
/// duration a node must sustain). None when the generating run had no
/// continuous stream.
pub fn required_buffer_secs(report: &SimReport) -> Option<f64> {
    if report.config.continuous_rate_bps > 0.0 {
        Some(report.max_buffer_bytes as f64 * 8.0 / report.config.continuous_rate_bps)
    } else {
        None
    }
}

struct PendingFrame {
    cont_bytes: u64,
    int_bytes: u64,
    d1_section: u64,
    d2_section: u64,
    flag: TriggerFlag,
    completes: Option<(u64, f64)>,
    retries: u32,
}

struct NodeOutcome {
    stats: NodeStats,
    delays: Vec<f64>,
    delays_last_byte: Vec<f64>,
    trace: Vec<TraceRow>,
}

fn node_rng(seed: u64, node: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(node);
    rng
}

fn poisson_arrivals(rng: &mut ChaCha8Rng, rate_per_sec: f64, duration_secs: f64) -> Vec<f64> {
    let mut arrivals = Vec::new();
    if rate_per_sec <= 0.0 {
        return arrivals;
    }
    let mut t = 0.0;
    loop {
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / rate_per_sec;
        if t >= duration_secs {
            break;
        }
        arrivals.push(t);
    }
    arrivals
}

fn simulate_node(cfg: &SimConfig, node: usize, cycles: u64) -> NodeOutcome {
    let t_o = cfg.duty.cycle_secs();
    let t_f = cfg.duty.on_secs();
    let d1_cap = cfg.frame.d1_len as u64;
    let d2_cap = cfg.frame.d2_len as u64;
    let payload_cap = d1_cap + d2_cap;

    let mut rng = node_rng(cfg.rng_seed, node as u64);
    let arrivals: Vec<f64> = if cfg.injected_triggers.is_empty() {
        poisson_arrivals(&mut rng, cfg.trigger_rate_per_sec, cfg.duration_secs)
    } else {
        let mut a: Vec<f64> = cfg
            .injected_triggers
            .iter()
            .copied()
            .filter(|t| *t >= 0.0 && *t < cfg.duration_secs)
            .collect();
        a.sort_by(f64::total_cmp);
        a
    };

    // cumulative continuous generation, quantized to whole bytes so the
    // ledger stays integral
    let cum_generated = |t: f64| -> u64 { (cfg.continuous_rate_bps * t / 8.0).floor() as u64 };

    let mut buffer: u64 = 0;
    let mut generated_prev: u64 = 0;
    let mut queue: std::collections::VecDeque<(u64, f64, u64)> = std::collections::VecDeque::new();
    let mut next_arrival = 0usize;
    let mut pending: Option<PendingFrame> = None;

    let mut stats = NodeStats {
        node,
        frames_sent: 0,
        frames_damaged: 0,
        frames_retransmitted: 0,
        retry_shortfall: 0,
        triggers_enqueued: 0,
        triggers_delivered: 0,
        generated_continuous_bytes: 0,
        delivered_continuous_bytes: 0,
        buffered_continuous_bytes: 0,
        in_flight_continuous_bytes: 0,
        generated_intermittent_bytes: 0,
        delivered_intermittent_bytes: 0,
        queued_intermittent_bytes: 0,
        in_flight_intermittent_bytes: 0,
        max_buffer_bytes: 0,
        mean_buffer_bytes: 0.0,
        throughput_bps: 0.0,
        backlog_unstable: false,
    };
    let mut delays = Vec::new();
    let mut delays_last_byte = Vec::new();
    let mut trace = Vec::new();
    let mut buffer_sample_sum: u128 = 0;

    for k in 0..cycles {
        let now = k as f64 * t_o;

        let generated_now = cum_generated(now);
        buffer += generated_now - generated_prev;
        generated_prev = generated_now;

        while next_arrival < arrivals.len() && arrivals[next_arrival] <= now {
            queue.push_back((
                next_arrival as u64,
                arrivals[next_arrival],
                cfg.trigger_payload_bytes,
            ));
            stats.triggers_enqueued += 1;
            stats.generated_intermittent_bytes += cfg.trigger_payload_bytes;
            next_arrival += 1;
        }

        // peak occupancy is what the buffer must hold between opportunities
        stats.max_buffer_bytes = stats.max_buffer_bytes.max(buffer);
        buffer_sample_sum += buffer as u128;

        let frame = match pending.take() {
            Some(mut p) => {
                p.retries += 1;
                stats.frames_retransmitted += 1;
                p
            }
            None => {
                if let Some(head) = queue.front_mut() {
                    let take_int = head.2.min(d2_cap);
                    head.2 -= take_int;
                    let completes = if head.2 == 0 {
                        let (id, arrival, _) = queue.pop_front().expect("head exists");
                        Some((id, arrival))
                    } else {
                        None
                    };
                    let take_d1 = buffer.min(d1_cap);
                    buffer -= take_d1;
                    let backfill = buffer.min(d2_cap - take_int);
                    buffer -= backfill;
                    PendingFrame {
                        cont_bytes: take_d1 + backfill,
                        int_bytes: take_int,
                        d1_section: take_d1,
                        d2_section: take_int + backfill,
                        flag: TriggerFlag::Triggered,
                        completes,
                        retries: 0,
                    }
                } else {
                    let take = buffer.min(payload_cap);
                    buffer -= take;
                    let d1_section = take.min(d1_cap);
                    PendingFrame {
                        cont_bytes: take,
                        int_bytes: 0,
                        d1_section,
                        d2_section: take - d1_section,
                        flag: TriggerFlag::Continuous,
                        completes: None,
                        retries: 0,
                    }
                }
            }
        };

        stats.frames_sent += 1;
        let damaged = rng.random::<f64>() < cfg.damaged_frame_rate;
        if damaged {
            stats.frames_damaged += 1;
        }
        let is_retry = frame.retries > 0;
        if cfg.record_trace {
            trace.push(TraceRow {
                time_secs: now,
                node,
                frame_no: k,
                flag: frame.flag.bit(),
                d1_bytes: frame.d1_section,
                d2_bytes: frame.d2_section,
                damaged,
                retry: is_retry,
            });
        }

        let delivered = if !damaged {
            true
        } else {
            match cfg.retransmission {
                // the single allowed retransmission always goes through;
                // count how often it would have been damaged again
                RetransmissionMode::SingleRetry if is_retry => {
                    stats.retry_shortfall += 1;
                    true
                }
                _ => false,
            }
        };

        if delivered {
            stats.delivered_continuous_bytes += frame.cont_bytes;
            stats.delivered_intermittent_bytes += frame.int_bytes;
            if let Some((_, arrival)) = frame.completes {
                delays.push((k + 1) as f64 * t_o - arrival);
                delays_last_byte.push(now + t_f - arrival);
                stats.triggers_delivered += 1;
            }
        } else {
            pending = Some(frame);
        }
    }

    stats.generated_continuous_bytes = generated_prev;
    stats.buffered_continuous_bytes = buffer;
    if let Some(p) = &pending {
        stats.in_flight_continuous_bytes = p.cont_bytes;
        stats.in_flight_intermittent_bytes = p.int_bytes;
    }
    stats.queued_intermittent_bytes = queue.iter().map(|(_, _, rem)| rem).sum();
    if cycles > 0 {
        stats.mean_buffer_bytes = buffer_sample_sum as f64 / cycles as f64;
    }
    if cfg.duration_secs > 0.0 {
        stats.throughput_bps = (stats.delivered_continuous_bytes
            + stats.delivered_intermittent_bytes) as f64
            * 8.0
            / cfg.duration_secs;
    }
    stats.backlog_unstable = cfg.continuous_rate_bps * t_o / 8.0 > payload_cap as f64;

    NodeOutcome {
        stats,
        delays,
        delays_last_byte,
        trace,
    }
}

/// Run the simulation described by `config` and assemble the report.
/// Nodes are independent and simulated in parallel; per-node RNG streams
/// are derived from (seed, node index), so the result does not depend on
/// scheduling.
pub fn run(config: &SimConfig) -> Result<SimReport, SimError> {
    config.validate()?;
    let t_o = config.duty.cycle_secs();
    let cycles = (config.duration_secs / t_o).floor() as u64;

    let mut warnings = Vec::new();
    if cycles == 0 {
        warnings.push("duration is shorter than one duty cycle; no transmission opportunities".to_string());
    }
    if config.injected_triggers.is_empty() && config.trigger_rate_per_sec > 0.0 {
        let expected = config.trigger_rate_per_sec * config.duration_secs;
        if expected < 1.0 {
            warnings.push(format!(
                "duration covers only {expected:.2} expected triggers per node; delay statistics may be empty"
            ));
        }
    }

    let outcomes: Vec<NodeOutcome> = (0..config.node_count)
        .into_par_iter()
        .map(|node| simulate_node(config, node, cycles))
        .collect();

    let mut per_node = Vec::with_capacity(outcomes.len());
    let mut delays = Vec::new();
    let mut delays_last_byte = Vec::new();
    let mut trace = Vec::new();
    let mut ledger = ConservationLedger {
        generated_continuous_bytes: 0,
        delivered_continuous_bytes: 0,
        buffered_continuous_bytes: 0,
        in_flight_continuous_bytes: 0,
        generated_intermittent_bytes: 0,
        delivered_intermittent_bytes: 0,
        queued_intermittent_bytes: 0,
        in_flight_intermittent_bytes: 0,
    };
    let mut frames_sent = 0u64;
    let mut frames_damaged = 0u64;
    let mut max_buffer = 0u64;
    let mut mean_buffer_sum = 0.0f64;
    let mut throughput = 0.0f64;
    for o in outcomes {
        ledger.generated_continuous_bytes += o.stats.generated_continuous_bytes;
        ledger.delivered_continuous_bytes += o.stats.delivered_continuous_bytes;
        ledger.buffered_continuous_bytes += o.stats.buffered_continuous_bytes;
        ledger.in_flight_continuous_bytes += o.stats.in_flight_continuous_bytes;
        ledger.generated_intermittent_bytes += o.stats.generated_intermittent_bytes;
        ledger.delivered_intermittent_bytes += o.stats.delivered_intermittent_bytes;
        ledger.queued_intermittent_bytes += o.stats.queued_intermittent_bytes;
        ledger.in_flight_intermittent_bytes += o.stats.in_flight_intermittent_bytes;
        frames_sent += o.stats.frames_sent;
        frames_damaged += o.stats.frames_damaged;
        max_buffer = max_buffer.max(o.stats.max_buffer_bytes);
        mean_buffer_sum += o.stats.mean_buffer_bytes;
        throughput += o.stats.throughput_bps;
        delays.extend(o.delays);
        delays_last_byte.extend(o.delays_last_byte);
        trace.extend(o.trace);
        per_node.push(o.stats);
    }

    let empirical_fer = if frames_sent > 0 {
        frames_damaged as f64 / frames_sent as f64
    } else {
        0.0
    };
    let mean_buffer = if per_node.is_empty() {
        0.0
    } else {
        mean_buffer_sum / per_node.len() as f64
    };

    let mut report = SimReport {
        config: config.clone(),
        cycle_secs: t_o,
        cycles_per_node: cycles,
        warnings,
        per_node,
        delivery_delays_secs: delays,
        delivery_delays_last_byte_secs: delays_last_byte,
        empirical_fer,
        max_buffer_bytes: max_buffer,
        mean_buffer_bytes: mean_buffer,
        required_buffer_secs: None,
        conservation: ledger,
        aggregate_throughput_bps: throughput,
        trace,
    };
    report.required_buffer_secs = required_buffer_secs(&report);
    Ok(report)
}

/// Empirical delivery delays set against the analytical prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticalComparison {
    pub predicted_delay_secs: f64,
    pub sample_count: usize,
    pub mean_delay_secs: Option<f64>,
    pub median_delay_secs: Option<f64>,
    pub p95_delay_secs: Option<f64>,
    pub relative_error: Option<f64>,
    /// Frames that needed a second retransmission while the run assumed
    /// one always suffices.
    pub single_retry_shortfall: u64,
    pub single_retry_assumption_held: bool,
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    let idx = ((sorted.len() as f64 - 1.0) * q).round() as usize;
    sorted[idx]
}

/// Compare a run's empirical delivery delays against the closed-form
/// delay prediction for `params` at `bitrate_bps`. The run must have been
/// produced with matching parameters; a run with no delivered triggers
/// yields an empty comparison, not an error.
pub fn compare_to_analytical(
    report: &SimReport,
    params: &DesignParams,
    bitrate_bps: f64,
) -> Result<AnalyticalComparison, SimError> {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0);
    if !close(report.config.bitrate_bps, bitrate_bps) {
        return Err(SimError::ParameterMismatch(format!(
            "bitrate {} bps vs {} bps",
            report.config.bitrate_bps, bitrate_bps
        )));
    }
    let expected_frame = split_payload(
        params.frame_len_bytes.round() as u32,
        params.frame_efficiency,
        params.split_ratio,
    )
    .map_err(|e| SimError::ParameterMismatch(e.to_string()))?;
    if expected_frame != report.config.frame {
        return Err(SimError::ParameterMismatch(format!(
            "frame split {:?} vs {:?}",
            report.config.frame, expected_frame
        )));
    }
    if !close(report.config.duty.ratio(), params.duty_cycle) {
        return Err(SimError::ParameterMismatch(format!(
            "duty cycle {} vs {}",
            report.config.duty.ratio(),
            params.duty_cycle
        )));
    }
    if !close(report.config.damaged_frame_rate, params.damaged_frame_rate) {
        return Err(SimError::ParameterMismatch(format!(
            "damaged frame rate {} vs {}",
            report.config.damaged_frame_rate, params.damaged_frame_rate
        )));
    }
    if !close(
        report.config.trigger_payload_bytes as f64,
        params.trigger_payload_bytes,
    ) {
        return Err(SimError::ParameterMismatch(format!(
            "trigger payload {} B vs {} B",
            report.config.trigger_payload_bytes, params.trigger_payload_bytes
        )));
    }

    let predicted = total_trigger_delay(params, bitrate_bps)
        .map_err(|e| SimError::ParameterMismatch(e.to_string()))?;
    let shortfall: u64 = report.per_node.iter().map(|n| n.retry_shortfall).sum();

    let mut sorted = report.delivery_delays_secs.clone();
    sorted.sort_by(f64::total_cmp);
    let (mean, median, p95, rel) = if sorted.is_empty() {
        (None, None, None, None)
    } else {
        let mean = sorted.iter().sum::<f64>() / sorted.len() as f64;
        (
            Some(mean),
            Some(percentile(&sorted, 0.5)),
            Some(percentile(&sorted, 0.95)),
            Some((mean - predicted).abs() / predicted),
        )
    };

    Ok(AnalyticalComparison {
        predicted_delay_secs: predicted,
        sample_count: sorted.len(),
        mean_delay_secs: mean,
        median_delay_secs: median,
        p95_delay_secs: p95,
        relative_error: rel,
        single_retry_shortfall: shortfall,
        single_retry_assumption_held: shortfall == 0,
    })
}
