//! Bit-rate vs. delivery-delay design mathematics for duty-cycled
//! dual-stream transmission, the three feasibility criteria, and the
//! exhaustive design search over candidate parameter grids.
//!
//! Everything here is real-valued: lengths are treated as continuous byte
//! quantities so closed-form results come out exact. The integral frame
//! construction used by the simulator lives in [`crate::frames`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from design-parameter validation and the design search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error("{name} must satisfy {constraint}, got {value}")]
    InvalidParam {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error("bit-rate must be positive, got {0} bps")]
    InvalidRate(f64),
    #[error("parameter axis {name} is empty")]
    EmptyAxis { name: &'static str },
    #[error("parameter axis {name} is not ordered: low {low} > mid {mid} or mid > high {high}")]
    UnorderedAxis {
        name: &'static str,
        low: f64,
        mid: f64,
        high: f64,
    },
}

/// The cross-layer tuning tuple.
///
/// * `frame_efficiency` — payload share of the frame, in (0, 1].
/// * `frame_len_bytes` — total frame length (real-valued here).
/// * `trigger_payload_bytes` — full intermittent payload released by one
///   trigger, to be delivered across many frames.
/// * `delivery_deadline_secs` — tolerable delay for delivering one full
///   trigger payload.
/// * `duty_cycle` — transmit-time fraction, in (0, 1].
/// * `split_ratio` — d1/d2 payload split between the continuous stream and
///   the intermittent data.
/// * `damaged_frame_rate` — fraction of frames damaged in transit, each
///   recovered by a single retransmission.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignParams {
    pub frame_efficiency: f64,
    pub frame_len_bytes: f64,
    pub trigger_payload_bytes: f64,
    pub delivery_deadline_secs: f64,
    pub duty_cycle: f64,
    pub split_ratio: f64,
    pub damaged_frame_rate: f64,
}

impl DesignParams {
    pub fn validate(&self) -> Result<(), DesignError> {
        let checks: [(&'static str, f64, &'static str, bool); 7] = [
            (
                "frame_efficiency",
                self.frame_efficiency,
                "0 < value <= 1",
                self.frame_efficiency > 0.0 && self.frame_efficiency <= 1.0,
            ),
            (
                "frame_len_bytes",
                self.frame_len_bytes,
                "value > 0",
                self.frame_len_bytes > 0.0,
            ),
            (
                "trigger_payload_bytes",
                self.trigger_payload_bytes,
                "value >= 1",
                self.trigger_payload_bytes >= 1.0,
            ),
            (
                "delivery_deadline_secs",
                self.delivery_deadline_secs,
                "value > 0",
                self.delivery_deadline_secs > 0.0,
            ),
            (
                "duty_cycle",
                self.duty_cycle,
                "0 < value <= 1",
                self.duty_cycle > 0.0 && self.duty_cycle <= 1.0,
            ),
            (
                "split_ratio",
                self.split_ratio,
                "value > 0",
                self.split_ratio > 0.0,
            ),
            (
                "damaged_frame_rate",
                self.damaged_frame_rate,
                "0 <= value < 1",
                self.damaged_frame_rate >= 0.0 && self.damaged_frame_rate < 1.0,
            ),
        ];
        for (name, value, constraint, ok) in checks {
            if !ok {
                return Err(DesignError::InvalidParam {
                    name,
                    constraint,
                    value,
                });
            }
        }
        Ok(())
    }
}

/// Full frames needed to deliver one trigger payload.
///
/// The d2 share of each frame is `frame_efficiency * frame_len / (1 +
/// split_ratio)` bytes, so the count is the ceiling of `payload * (1 +
/// split_ratio) / (frame_efficiency * frame_len)`. With `with_loss` the
/// product also carries the retransmission allowance `(1 +
/// damaged_frame_rate)`; the ceiling is applied once to the whole
/// real-valued product.
pub fn frames_per_trigger(p: &DesignParams, with_loss: bool) -> Result<u64, DesignError> {
    p.validate()?;
    let loss = if with_loss {
        1.0 + p.damaged_frame_rate
    } else {
        1.0
    };
    let raw = p.trigger_payload_bytes * (1.0 + p.split_ratio) * loss
        / (p.frame_efficiency * p.frame_len_bytes);
    // absorb float rounding at integer boundaries before the ceiling
    let frames = (raw - raw * 1e-12).ceil();
    Ok(frames as u64)
}

/// Total delay to deliver one trigger payload at `bitrate_bps`: the frame
/// count (with retransmission allowance) times the duty-cycle period
/// `8 * frame_len / (bitrate * duty_cycle)`.
pub fn total_trigger_delay(p: &DesignParams, bitrate_bps: f64) -> Result<f64, DesignError> {
    if !(bitrate_bps > 0.0) {
        return Err(DesignError::InvalidRate(bitrate_bps));
    }
    let frames = frames_per_trigger(p, true)? as f64;
    Ok(frames * 8.0 * p.frame_len_bytes / (bitrate_bps * p.duty_cycle))
}

/// Bit-rate required to deliver one trigger payload within the deadline:
/// the delay equation solved for the rate.
pub fn required_bitrate(p: &DesignParams) -> Result<f64, DesignError> {
    let frames = frames_per_trigger(p, true)? as f64;
    Ok(8.0 * p.frame_len_bytes / (p.duty_cycle * p.delivery_deadline_secs) * frames)
}

/// Frequency-band class a technology operates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    Licensed,
    Unlicensed,
}

/// One row of the wireless technology catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TechnologyEntry {
    pub name: String,
    pub max_bitrate_bps: f64,
    /// Largest duty cycle the technology (or its regulation) permits.
    pub max_duty_cycle: f64,
    pub band: Band,
    pub subscription_required: bool,
}

impl TechnologyEntry {
    /// Private LPWA entry: 50 kbps peak, 12.1% duty cycle when all
    /// European sub-bands are combined, unlicensed, subscription-free.
    pub fn lora() -> Self {
        Self {
            name: "LoRa".to_string(),
            max_bitrate_bps: 50_000.0,
            max_duty_cycle: 0.121,
            band: Band::Unlicensed,
            subscription_required: false,
        }
    }

    /// Cellular LPWA entry: 200 kbps peak, no duty-cycle restriction,
    /// licensed band with subscription.
    pub fn nbiot() -> Self {
        Self {
            name: "NB-IoT".to_string(),
            max_bitrate_bps: 200_000.0,
            max_duty_cycle: 1.0,
            band: Band::Licensed,
            subscription_required: true,
        }
    }
}

/// The two catalog rows used throughout the bundled presets.
pub fn standard_catalog() -> Vec<TechnologyEntry> {
    vec![TechnologyEntry::lora(), TechnologyEntry::nbiot()]
}

/// Verdict for one feasibility criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn pass(detail: String) -> Self {
        Self {
            passed: true,
            detail,
        }
    }

    fn fail(detail: String) -> Self {
        Self {
            passed: false,
            detail,
        }
    }
}

/// The three feasibility criteria a candidate bit-rate must meet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// A trigger payload must be fully delivered before the next trigger is
    /// expected (mean inter-arrival time).
    pub delivery_before_next_trigger: CriterionResult,
    /// The average delivered payload throughput `duty_cycle * bitrate *
    /// frame_efficiency` must cover the continuous generation rate, or the
    /// buffer grows without bound.
    pub buffer_sustainability: CriterionResult,
    /// Soft variant of the buffer check: while a trigger is being drained
    /// only the d1 share carries continuous data. Reported as a warning,
    /// not a failure, since triggers are sparse.
    pub buffer_warning: Option<String>,
    /// Some catalog technology must offer the bit-rate and permit the duty
    /// cycle.
    pub technology_match: CriterionResult,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.delivery_before_next_trigger.passed
            && self.buffer_sustainability.passed
            && self.technology_match.passed
    }

    /// Reasons for every failed criterion, for diagnosis reports.
    pub fn failure_reasons(&self) -> Vec<String> {
        let mut reasons = Vec::new();
        for c in [
            &self.delivery_before_next_trigger,
            &self.buffer_sustainability,
            &self.technology_match,
        ] {
            if !c.passed {
                reasons.push(c.detail.clone());
            }
        }
        reasons
    }
}

/// One evaluated design point: parameters, required bit-rate, frame count,
/// predicted delay, and the feasibility verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignOutcome {
    pub params: DesignParams,
    pub required_bitrate_bps: f64,
    /// Frames per trigger including the retransmission allowance.
    pub frames_needed: u64,
    pub delivery_delay_secs: f64,
    pub feasibility: FeasibilityReport,
    pub matched_technologies: Vec<TechnologyEntry>,
}

/// Evaluate the three feasibility criteria for a candidate design at
/// `bitrate_bps`, against a continuous generation rate, an expected trigger
/// rate, and a technology catalog. An empty catalog fails the technology
/// criterion; it is not an error.
pub fn check_feasibility(
    p: &DesignParams,
    bitrate_bps: f64,
    continuous_rate_bps: f64,
    trigger_rate_per_sec: f64,
    catalog: &[TechnologyEntry],
) -> Result<DesignOutcome, DesignError> {
    let frames = frames_per_trigger(p, true)?;
    let delay = total_trigger_delay(p, bitrate_bps)?;

    let delivery = if trigger_rate_per_sec <= 0.0 {
        CriterionResult::pass("no triggers expected; any delay acceptable".to_string())
    } else {
        let inter_arrival = 1.0 / trigger_rate_per_sec;
        if delay <= inter_arrival {
            CriterionResult::pass(format!(
                "delivery delay {delay:.1} s fits the mean trigger inter-arrival {inter_arrival:.1} s"
            ))
        } else {
            CriterionResult::fail(format!(
                "delivery delay {delay:.1} s exceeds the mean trigger inter-arrival {inter_arrival:.1} s"
            ))
        }
    };

    let payload_throughput = p.duty_cycle * bitrate_bps * p.frame_efficiency;
    let buffer = if payload_throughput >= continuous_rate_bps {
        CriterionResult::pass(format!(
            "delivered payload throughput {payload_throughput:.1} bps covers continuous generation {continuous_rate_bps:.1} bps"
        ))
    } else {
        CriterionResult::fail(format!(
            "delivered payload throughput {payload_throughput:.1} bps is below continuous generation {continuous_rate_bps:.1} bps; buffer grows without bound"
        ))
    };
    let d1_throughput = payload_throughput * p.split_ratio / (1.0 + p.split_ratio);
    let buffer_warning = if d1_throughput < continuous_rate_bps {
        Some(format!(
            "while draining a trigger the d1-only throughput {d1_throughput:.1} bps is below continuous generation {continuous_rate_bps:.1} bps; buffering is needed during trigger delivery"
        ))
    } else {
        None
    };

    let matched: Vec<TechnologyEntry> = catalog
        .iter()
        .filter(|t| t.max_bitrate_bps >= bitrate_bps && t.max_duty_cycle >= p.duty_cycle)
        .cloned()
        .collect();
    let technology = if matched.is_empty() {
        let detail = if catalog.is_empty() {
            "technology catalog is empty; no match possible".to_string()
        } else {
            format!(
                "no catalog technology offers {bitrate_bps:.1} bps at duty cycle {}",
                p.duty_cycle
            )
        };
        CriterionResult::fail(detail)
    } else {
        let names: Vec<&str> = matched.iter().map(|t| t.name.as_str()).collect();
        CriterionResult::pass(format!("matched: {}", names.join(", ")))
    };

    Ok(DesignOutcome {
        params: *p,
        required_bitrate_bps: bitrate_bps,
        frames_needed: frames,
        delivery_delay_secs: delay,
        feasibility: FeasibilityReport {
            delivery_before_next_trigger: delivery,
            buffer_sustainability: buffer,
            buffer_warning,
            technology_match: technology,
        },
        matched_technologies: matched,
    })
}

/// Candidate values for one design parameter: a low/mid/high spread, or an
/// explicit grid overriding it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub low: f64,
    pub mid: f64,
    pub high: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
}

impl Axis {
    pub fn spread(low: f64, mid: f64, high: f64) -> Self {
        Self {
            low,
            mid,
            high,
            grid: None,
        }
    }

    /// A degenerate axis pinning the parameter to one value.
    pub fn single(value: f64) -> Self {
        Self::spread(value, value, value)
    }

    /// Candidate values in evaluation order, duplicates removed.
    pub fn values(&self) -> Vec<f64> {
        match &self.grid {
            Some(g) => g.clone(),
            None => {
                let mut v = vec![self.low];
                if self.mid != self.low {
                    v.push(self.mid);
                }
                if self.high != self.mid && self.high != self.low {
                    v.push(self.high);
                }
                v
            }
        }
    }

    fn validate(&self, name: &'static str) -> Result<(), DesignError> {
        if let Some(g) = &self.grid {
            if g.is_empty() {
                return Err(DesignError::EmptyAxis { name });
            }
        }
        if !(self.low <= self.mid && self.mid <= self.high) {
            return Err(DesignError::UnorderedAxis {
                name,
                low: self.low,
                mid: self.mid,
                high: self.high,
            });
        }
        Ok(())
    }
}

/// Per-parameter candidate grids for the design search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    pub frame_efficiency: Axis,
    pub frame_len_bytes: Axis,
    pub trigger_payload_bytes: Axis,
    pub delivery_deadline_secs: Axis,
    pub duty_cycle: Axis,
    pub split_ratio: Axis,
    pub damaged_frame_rate: Axis,
}

impl ParamRanges {
    /// The standard low/mid/high tuning spreads for duty-cycled LPWA
    /// designs carrying a triggered high-precision stream.
    pub fn standard() -> Self {
        Self {
            frame_efficiency: Axis::spread(0.9, 0.95, 0.98),
            frame_len_bytes: Axis::spread(64.0, 128.0, 256.0),
            trigger_payload_bytes: Axis::spread(108_000.0, 162_000.0, 216_000.0),
            delivery_deadline_secs: Axis::spread(3600.0, 36_000.0, 86_400.0),
            duty_cycle: Axis::spread(0.01, 0.05, 0.1),
            split_ratio: Axis::spread(1.0, 3.0, 5.0),
            damaged_frame_rate: Axis::spread(0.01, 0.05, 0.1),
        }
    }

    /// Ranges pinned to a single design point.
    pub fn singleton(p: &DesignParams) -> Self {
        Self {
            frame_efficiency: Axis::single(p.frame_efficiency),
            frame_len_bytes: Axis::single(p.frame_len_bytes),
            trigger_payload_bytes: Axis::single(p.trigger_payload_bytes),
            delivery_deadline_secs: Axis::single(p.delivery_deadline_secs),
            duty_cycle: Axis::single(p.duty_cycle),
            split_ratio: Axis::single(p.split_ratio),
            damaged_frame_rate: Axis::single(p.damaged_frame_rate),
        }
    }

    pub fn validate(&self) -> Result<(), DesignError> {
        self.frame_efficiency.validate("frame_efficiency")?;
        self.frame_len_bytes.validate("frame_len_bytes")?;
        self.trigger_payload_bytes
            .validate("trigger_payload_bytes")?;
        self.delivery_deadline_secs
            .validate("delivery_deadline_secs")?;
        self.duty_cycle.validate("duty_cycle")?;
        self.split_ratio.validate("split_ratio")?;
        self.damaged_frame_rate.validate("damaged_frame_rate")?;
        Ok(())
    }
}

/// Ordering objective for the design search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MinBitrate,
    MinDelay,
}

/// Result of an exhaustive design search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSurvey {
    /// Number of grid points evaluated.
    pub evaluated: usize,
    /// Feasible outcomes, sorted by the objective (ties: smaller duty
    /// cycle, then smaller split ratio).
    pub feasible: Vec<DesignOutcome>,
    /// Non-dominated feasible outcomes over (required bit-rate, delivery
    /// deadline), sorted by bit-rate.
    pub pareto_front: Vec<DesignOutcome>,
    /// Infeasible candidates with their failure reasons retained.
    pub infeasible: Vec<DesignOutcome>,
}

fn objective_key(o: &DesignOutcome, objective: Objective) -> f64 {
    match objective {
        Objective::MinBitrate => o.required_bitrate_bps,
        Objective::MinDelay => o.delivery_delay_secs,
    }
}

fn outcome_order(a: &DesignOutcome, b: &DesignOutcome, objective: Objective) -> std::cmp::Ordering {
    objective_key(a, objective)
        .total_cmp(&objective_key(b, objective))
        .then(a.params.duty_cycle.total_cmp(&b.params.duty_cycle))
        .then(a.params.split_ratio.total_cmp(&b.params.split_ratio))
        .then(
            a.params
                .frame_efficiency
                .total_cmp(&b.params.frame_efficiency),
        )
        .then(a.params.frame_len_bytes.total_cmp(&b.params.frame_len_bytes))
        .then(
            a.params
                .trigger_payload_bytes
                .total_cmp(&b.params.trigger_payload_bytes),
        )
        .then(
            a.params
                .delivery_deadline_secs
                .total_cmp(&b.params.delivery_deadline_secs),
        )
        .then(
            a.params
                .damaged_frame_rate
                .total_cmp(&b.params.damaged_frame_rate),
        )
}

/// Exhaustively evaluate the Cartesian grid of candidate parameters and
/// report every outcome: the feasible set sorted by the objective, its
/// Pareto front over (bit-rate, deadline), and the rejected candidates with
/// reasons. The grid order and tie-breaking are fixed, so the result is
/// deterministic.
pub fn design_search(
    ranges: &ParamRanges,
    objective: Objective,
    continuous_rate_bps: f64,
    trigger_rate_per_sec: f64,
    catalog: &[TechnologyEntry],
) -> Result<DesignSurvey, DesignError> {
    ranges.validate()?;

    let mut feasible = Vec::new();
    let mut infeasible = Vec::new();
    let mut evaluated = 0usize;
    for &eta in &ranges.frame_efficiency.values() {
        for &frame_len in &ranges.frame_len_bytes.values() {
            for &payload in &ranges.trigger_payload_bytes.values() {
                for &deadline in &ranges.delivery_deadline_secs.values() {
                    for &duty in &ranges.duty_cycle.values() {
                        for &split in &ranges.split_ratio.values() {
                            for &loss in &ranges.damaged_frame_rate.values() {
                                let p = DesignParams {
                                    frame_efficiency: eta,
                                    frame_len_bytes: frame_len,
                                    trigger_payload_bytes: payload,
                                    delivery_deadline_secs: deadline,
                                    duty_cycle: duty,
                                    split_ratio: split,
                                    damaged_frame_rate: loss,
                                };
                                let bitrate = required_bitrate(&p)?;
                                let outcome = check_feasibility(
                                    &p,
                                    bitrate,
                                    continuous_rate_bps,
                                    trigger_rate_per_sec,
                                    catalog,
                                )?;
                                evaluated += 1;
                                if outcome.feasibility.is_feasible() {
                                    feasible.push(outcome);
                                } else {
                                    infeasible.push(outcome);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    feasible.sort_by(|a, b| outcome_order(a, b, objective));

    let pareto_front: Vec<DesignOutcome> = feasible
        .iter()
        .filter(|c| {
            !feasible.iter().any(|o| {
                o.required_bitrate_bps <= c.required_bitrate_bps
                    && o.params.delivery_deadline_secs <= c.params.delivery_deadline_secs
                    && (o.required_bitrate_bps < c.required_bitrate_bps
                        || o.params.delivery_deadline_secs < c.params.delivery_deadline_secs)
            })
        })
        .cloned()
        .collect();
    let mut pareto_front = pareto_front;
    pareto_front.sort_by(|a, b| outcome_order(a, b, Objective::MinBitrate));
    pareto_front.dedup();

    Ok(DesignSurvey {
        evaluated,
        feasible,
        pareto_front,
        infeasible,
    })
}

/// Raw bytes a node can push through the channel per day at `bitrate_bps`
/// under `duty_cycle`.
pub fn daily_deliverable_bytes(bitrate_bps: f64, duty_cycle: f64) -> f64 {
    bitrate_bps * duty_cycle * 86_400.0 / 8.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn mid_case() -> DesignParams {
        DesignParams {
            frame_efficiency: 0.9,
            frame_len_bytes: 128.0,
            trigger_payload_bytes: 216_000.0,
            delivery_deadline_secs: 36_000.0,
            duty_cycle: 0.01,
            split_ratio: 1.0,
            damaged_frame_rate: 0.01,
        }
    }

    #[test]
    fn frames_per_trigger_mid_case() {
        assert_eq!(frames_per_trigger(&mid_case(), true).unwrap(), 3788);
        assert_eq!(frames_per_trigger(&mid_case(), false).unwrap(), 3750);
    }

    #[test]
    fn frames_per_trigger_single_frame_payload() {
        // a payload of exactly one frame's worth of data still takes two
        // frames when d2 carries half of each payload
        let p = DesignParams {
            trigger_payload_bytes: 115.2,
            damaged_frame_rate: 0.0,
            ..mid_case()
        };
        assert_eq!(frames_per_trigger(&p, false).unwrap(), 2);
    }

    #[test]
    fn ceiling_absorbs_small_loss_factor() {
        let lossless = DesignParams {
            trigger_payload_bytes: 100.0,
            damaged_frame_rate: 0.0,
            ..mid_case()
        };
        let lossy = DesignParams {
            damaged_frame_rate: 0.01,
            ..lossless
        };
        assert_eq!(frames_per_trigger(&lossless, true).unwrap(), 2);
        assert_eq!(frames_per_trigger(&lossy, true).unwrap(), 2);
    }

    #[test]
    fn required_bitrate_ten_hour_deadline() {
        let rb = required_bitrate(&mid_case()).unwrap();
        assert!((rb - 10_770.0).abs() < 10.0, "got {rb}");
    }

    #[test]
    fn required_bitrate_one_hour_deadline() {
        let p = DesignParams {
            delivery_deadline_secs: 3600.0,
            ..mid_case()
        };
        let rb = required_bitrate(&p).unwrap();
        assert!((rb - 107_700.0).abs() < 100.0, "got {rb}");
    }

    #[test]
    fn required_bitrate_single_frame_delivery() {
        // payload exactly half a frame's worth of data in d2: one frame,
        // so the rate is the bare prefactor
        let p = DesignParams {
            trigger_payload_bytes: 0.9 * 128.0 / 2.0,
            damaged_frame_rate: 0.0,
            delivery_deadline_secs: 4.0,
            duty_cycle: 0.5,
            ..mid_case()
        };
        assert_eq!(frames_per_trigger(&p, true).unwrap(), 1);
        assert_eq!(required_bitrate(&p).unwrap(), 8.0 * 128.0 / (0.5 * 4.0));
    }

    #[test]
    fn total_delay_mid_case() {
        let delay = total_trigger_delay(&mid_case(), 10_770.0).unwrap();
        assert!((delay / 36_000.0 - 1.0).abs() < 2e-3, "got {delay}");
    }

    #[test]
    fn total_delay_single_always_on_frame() {
        let p = DesignParams {
            frame_efficiency: 1.0,
            trigger_payload_bytes: 64.0,
            duty_cycle: 1.0,
            split_ratio: 1.0,
            damaged_frame_rate: 0.0,
            delivery_deadline_secs: 1.0,
            frame_len_bytes: 128.0,
        };
        assert_eq!(frames_per_trigger(&p, true).unwrap(), 1);
        assert_eq!(total_trigger_delay(&p, 1024.0).unwrap(), 1.0);
    }

    #[test]
    fn doubling_duty_cycle_halves_delay() {
        let p = mid_case();
        let doubled = DesignParams {
            duty_cycle: 0.02,
            ..p
        };
        let d1 = total_trigger_delay(&p, 10_770.0).unwrap();
        let d2 = total_trigger_delay(&doubled, 10_770.0).unwrap();
        assert_relative_eq!(d1 / 2.0, d2, max_relative = 1e-12);
    }

    #[test]
    fn delay_rejects_nonpositive_rate() {
        assert!(matches!(
            total_trigger_delay(&mid_case(), 0.0),
            Err(DesignError::InvalidRate(_))
        ));
    }

    #[test]
    fn invalid_params_are_rejected() {
        let p = DesignParams {
            frame_efficiency: 1.5,
            ..mid_case()
        };
        assert!(matches!(
            required_bitrate(&p),
            Err(DesignError::InvalidParam { name: "frame_efficiency", .. })
        ));
    }

    #[test]
    fn mid_case_feasibility_verdicts() {
        // delivered payload throughput at duty cycle 0.01 is ~97 bps, well
        // below the 400 bps continuous stream: the buffer criterion fails
        // even though the delay and technology criteria hold
        let p = mid_case();
        let rb = required_bitrate(&p).unwrap();
        let trigger_rate = 500.0 / (365.0 * 86_400.0);
        let outcome = check_feasibility(&p, rb, 400.0, trigger_rate, &standard_catalog()).unwrap();
        assert!(outcome.feasibility.delivery_before_next_trigger.passed);
        assert!(!outcome.feasibility.buffer_sustainability.passed);
        assert!(outcome.feasibility.buffer_warning.is_some());
        assert!(outcome.feasibility.technology_match.passed);
        assert_eq!(outcome.matched_technologies.len(), 2);
        assert!(!outcome.feasibility.is_feasible());
    }

    #[test]
    fn one_hour_deadline_matches_nbiot_only() {
        let p = DesignParams {
            delivery_deadline_secs: 3600.0,
            ..mid_case()
        };
        let rb = required_bitrate(&p).unwrap();
        let trigger_rate = 500.0 / (365.0 * 86_400.0);
        let outcome = check_feasibility(&p, rb, 400.0, trigger_rate, &standard_catalog()).unwrap();
        let names: Vec<&str> = outcome
            .matched_technologies
            .iter()
            .map(|t| t.name.as_str())
            .collect();
        assert_eq!(names, vec!["NB-IoT"]);
        assert!(outcome.feasibility.is_feasible());
    }

    #[test]
    fn starvation_fails_buffer_criterion() {
        let p = mid_case();
        let rb = required_bitrate(&p).unwrap();
        let starving_rate = p.duty_cycle * rb * p.frame_efficiency + 1.0;
        let outcome = check_feasibility(&p, rb, starving_rate, 0.0, &standard_catalog()).unwrap();
        assert!(!outcome.feasibility.buffer_sustainability.passed);
    }

    #[test]
    fn empty_catalog_fails_technology_criterion() {
        let p = mid_case();
        let outcome = check_feasibility(&p, 10_770.0, 0.0, 0.0, &[]).unwrap();
        assert!(!outcome.feasibility.technology_match.passed);
        assert!(outcome.matched_technologies.is_empty());
    }

    #[test]
    fn singleton_search_reduces_to_direct_evaluation() {
        let p = mid_case();
        let trigger_rate = 500.0 / (365.0 * 86_400.0);
        let survey = design_search(
            &ParamRanges::singleton(&p),
            Objective::MinBitrate,
            400.0,
            trigger_rate,
            &standard_catalog(),
        )
        .unwrap();
        assert_eq!(survey.evaluated, 1);
        let rb = required_bitrate(&p).unwrap();
        let direct = check_feasibility(&p, rb, 400.0, trigger_rate, &standard_catalog()).unwrap();
        let candidate = survey
            .feasible
            .first()
            .or_else(|| survey.infeasible.first())
            .unwrap();
        assert_eq!(candidate, &direct);
        assert!((candidate.required_bitrate_bps - 10_770.0).abs() < 10.0);
    }

    #[test]
    fn standard_grid_search_finds_feasible_designs() {
        let trigger_rate = 500.0 / (365.0 * 86_400.0);
        let survey = design_search(
            &ParamRanges::standard(),
            Objective::MinBitrate,
            400.0,
            trigger_rate,
            &standard_catalog(),
        )
        .unwrap();
        assert_eq!(survey.evaluated, 3usize.pow(7));
        assert!(!survey.feasible.is_empty());
        assert!(!survey.pareto_front.is_empty());
        // the ten-hour working point is on the grid, with its known rate
        let mid_rb = required_bitrate(&mid_case()).unwrap();
        let found = survey
            .feasible
            .iter()
            .chain(survey.infeasible.iter())
            .any(|o| o.params == mid_case() && o.required_bitrate_bps == mid_rb);
        assert!(found);
        // feasible set is sorted by the objective
        for w in survey.feasible.windows(2) {
            assert!(w[0].required_bitrate_bps <= w[1].required_bitrate_bps);
        }
    }

    #[test]
    fn min_delay_objective_sorts_by_delay() {
        let trigger_rate = 500.0 / (365.0 * 86_400.0);
        let survey = design_search(
            &ParamRanges::standard(),
            Objective::MinDelay,
            400.0,
            trigger_rate,
            &standard_catalog(),
        )
        .unwrap();
        assert!(!survey.feasible.is_empty());
        for w in survey.feasible.windows(2) {
            assert!(w[0].delivery_delay_secs <= w[1].delivery_delay_secs);
        }
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        let mut ranges = ParamRanges::standard();
        ranges.duty_cycle = Axis::spread(0.1, 0.05, 0.01);
        assert!(matches!(
            design_search(
                &ranges,
                Objective::MinBitrate,
                400.0,
                0.0,
                &standard_catalog()
            ),
            Err(DesignError::UnorderedAxis { .. })
        ));
        let mut ranges = ParamRanges::standard();
        ranges.split_ratio = Axis {
            grid: Some(vec![]),
            ..Axis::single(1.0)
        };
        assert!(matches!(
            design_search(
                &ranges,
                Objective::MinBitrate,
                400.0,
                0.0,
                &standard_catalog()
            ),
            Err(DesignError::EmptyAxis { .. })
        ));
    }

    #[test]
    fn daily_volume_at_combined_lora_duty() {
        let daily = daily_deliverable_bytes(TechnologyEntry::lora().max_bitrate_bps, 0.121);
        assert!(daily >= 6e6);
    }

    fn arb_params() -> impl Strategy<Value = DesignParams> {
        (
            0.5f64..=1.0,
            16.0f64..512.0,
            100.0f64..1e6,
            60.0f64..1e6,
            0.001f64..=1.0,
            0.1f64..10.0,
            0.0f64..0.5,
        )
            .prop_map(
                |(eta, len, payload, deadline, duty, split, loss)| DesignParams {
                    frame_efficiency: eta,
                    frame_len_bytes: len,
                    trigger_payload_bytes: payload,
                    delivery_deadline_secs: deadline,
                    duty_cycle: duty,
                    split_ratio: split,
                    damaged_frame_rate: loss,
                },
            )
    }

    proptest! {
        #[test]
        fn frame_counts_ordered(p in arb_params()) {
            let lossless = frames_per_trigger(&p, false).unwrap();
            let lossy = frames_per_trigger(&p, true).unwrap();
            prop_assert!(lossy >= lossless);
            prop_assert!(lossless >= 1);
        }

        #[test]
        fn delay_round_trip_hits_deadline(p in arb_params()) {
            let rb = required_bitrate(&p).unwrap();
            let delay = total_trigger_delay(&p, rb).unwrap();
            prop_assert!((delay - p.delivery_deadline_secs).abs()
                <= 1e-9 * p.delivery_deadline_secs);
            // delay exceeds the un-ceiled value by at most one cycle period
            let frames = frames_per_trigger(&p, true).unwrap() as f64;
            let raw = p.trigger_payload_bytes * (1.0 + p.split_ratio)
                * (1.0 + p.damaged_frame_rate)
                / (p.frame_efficiency * p.frame_len_bytes);
            let cycle = 8.0 * p.frame_len_bytes / (rb * p.duty_cycle);
            prop_assert!(frames * cycle >= raw * cycle - 1e-9 * delay);
            prop_assert!(frames * cycle <= raw * cycle + cycle * (1.0 + 1e-9));
        }
    }
}
