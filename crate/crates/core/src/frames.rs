//! Frame geometry and the static time/size arithmetic of duty-cycled
//! transmission.
//!
//! A frame of `total_len` bytes carries a header plus a payload split into
//! two sections: `d1` for the continuous stream and `d2` for intermittent
//! (triggered) data. Frame efficiency is payload bytes over total bytes;
//! the data-splitting ratio is `d1/d2`. All values here are integral bytes
//! with an explicit rounding policy, so a constructed frame is physically
//! transmittable; the real-valued counterparts live in [`crate::crosslayer`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from frame construction and timing arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("frame must have a nonzero total length")]
    ZeroLength,
    #[error("frame carries no payload bytes")]
    EmptyPayload,
    #[error("frame of {total_len} B is too short to split (need at least 2 B)")]
    FrameTooShort { total_len: u32 },
    #[error("frame efficiency must be in (0, 1], got {0}")]
    InvalidEfficiency(f64),
    #[error("data-splitting ratio must be positive, got {0}")]
    InvalidSplitRatio(f64),
    #[error("split of {total_len} B at efficiency {efficiency} with ratio {split_ratio} leaves no room for intermittent data (d2 = 0)")]
    UnsatisfiableSplit {
        total_len: u32,
        efficiency: f64,
        split_ratio: f64,
    },
    #[error("bit-rate must be positive, got {0} bps")]
    InvalidRate(f64),
    #[error("duty cycle must be in (0, 1], got {0}")]
    InvalidDutyCycle(f64),
    #[error("on-time must be positive, got {0} s")]
    InvalidOnTime(f64),
    #[error("off-time must be nonnegative, got {0} s")]
    InvalidOffTime(f64),
}

/// Byte-level geometry of one transmission frame.
///
/// The total length and payload length are derived, so the identity
/// `total = header + d1 + d2` holds for every value of this type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    /// Header bytes: addressing, sync flags, error-detection. Opaque here;
    /// only its length matters.
    pub header_len: u32,
    /// Payload bytes reserved for the continuous stream.
    pub d1_len: u32,
    /// Payload bytes reserved for intermittent (triggered) data.
    pub d2_len: u32,
}

impl FrameSpec {
    pub fn new(header_len: u32, d1_len: u32, d2_len: u32) -> Self {
        Self {
            header_len,
            d1_len,
            d2_len,
        }
    }

    /// Total frame length in bytes.
    pub fn total_len(&self) -> u32 {
        self.header_len + self.d1_len + self.d2_len
    }

    /// Payload length in bytes (both data sections).
    pub fn payload_len(&self) -> u32 {
        self.d1_len + self.d2_len
    }

    /// Achieved data-splitting ratio `d1/d2`.
    pub fn split_ratio(&self) -> f64 {
        self.d1_len as f64 / self.d2_len as f64
    }
}

/// Frame efficiency: payload bytes over total frame bytes.
///
/// Errors on a zero-length frame and on a frame with no payload, since an
/// efficiency outside (0, 1] is not meaningful.
pub fn frame_efficiency(spec: &FrameSpec) -> Result<f64, FrameError> {
    if spec.total_len() == 0 {
        return Err(FrameError::ZeroLength);
    }
    if spec.payload_len() == 0 {
        return Err(FrameError::EmptyPayload);
    }
    Ok(spec.payload_len() as f64 / spec.total_len() as f64)
}

/// Split a frame of `total_len` bytes into header, d1 and d2 sections.
///
/// Rounding policy: payload = round(efficiency × total), d2 = floor(payload
/// / (1 + split_ratio)), d1 takes the remainder. d2 gets the floor so the
/// continuous stream keeps the larger share; buffer stability is the harder
/// constraint.
pub fn split_payload(
    total_len: u32,
    efficiency: f64,
    split_ratio: f64,
) -> Result<FrameSpec, FrameError> {
    if total_len < 2 {
        return Err(FrameError::FrameTooShort { total_len });
    }
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(FrameError::InvalidEfficiency(efficiency));
    }
    if !(split_ratio > 0.0) {
        return Err(FrameError::InvalidSplitRatio(split_ratio));
    }
    let payload = (efficiency * total_len as f64).round() as u32;
    let payload = payload.min(total_len);
    let d2 = (payload as f64 / (1.0 + split_ratio)).floor() as u32;
    if d2 == 0 {
        return Err(FrameError::UnsatisfiableSplit {
            total_len,
            efficiency,
            split_ratio,
        });
    }
    let d1 = payload - d2;
    let header = total_len - payload;
    Ok(FrameSpec::new(header, d1, d2))
}

/// Time on air of `len` bytes at `bitrate_bps`, in seconds.
///
/// The factor 8 converts bytes to bits. Applied to the d1/d2 section
/// lengths this yields the per-section transmit times.
pub fn frame_airtime(len: u32, bitrate_bps: f64) -> Result<f64, FrameError> {
    if !(bitrate_bps > 0.0) {
        return Err(FrameError::InvalidRate(bitrate_bps));
    }
    Ok(8.0 * len as f64 / bitrate_bps)
}

/// Transmit/standby timing of one duty cycle.
///
/// The transmitter is on for `on_secs` (one frame airtime) and off for
/// `off_secs`; the duty-cycle ratio is `on / (on + off)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DutyCycle {
    on_secs: f64,
    off_secs: f64,
}

impl DutyCycle {
    /// Build from explicit on/off durations.
    pub fn from_on_off(on_secs: f64, off_secs: f64) -> Result<Self, FrameError> {
        if !(on_secs > 0.0) {
            return Err(FrameError::InvalidOnTime(on_secs));
        }
        if !(off_secs >= 0.0) {
            return Err(FrameError::InvalidOffTime(off_secs));
        }
        Ok(Self { on_secs, off_secs })
    }

    /// Build from a frame airtime and a target duty-cycle ratio in (0, 1].
    pub fn from_frame_time(frame_secs: f64, ratio: f64) -> Result<Self, FrameError> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(FrameError::InvalidDutyCycle(ratio));
        }
        if !(frame_secs > 0.0) {
            return Err(FrameError::InvalidOnTime(frame_secs));
        }
        let off = frame_secs * (1.0 - ratio) / ratio;
        Ok(Self {
            on_secs: frame_secs,
            off_secs: off,
        })
    }

    /// Transmit time per cycle (the frame airtime).
    pub fn on_secs(&self) -> f64 {
        self.on_secs
    }

    /// Standby time per cycle.
    pub fn off_secs(&self) -> f64 {
        self.off_secs
    }

    /// Full cycle period `t_on + t_off`.
    pub fn cycle_secs(&self) -> f64 {
        self.on_secs + self.off_secs
    }

    /// Duty-cycle ratio `t_on / (t_on + t_off)`.
    pub fn ratio(&self) -> f64 {
        self.on_secs / self.cycle_secs()
    }
}

/// Per-frame flag announcing whether the d2 section carries intermittent
/// data (`Triggered`) or continuous data (`Continuous`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriggerFlag {
    Continuous,
    Triggered,
}

impl TriggerFlag {
    pub fn is_triggered(&self) -> bool {
        matches!(self, TriggerFlag::Triggered)
    }

    /// Wire representation: 1 = intermittent data present.
    pub fn bit(&self) -> u8 {
        match self {
            TriggerFlag::Continuous => 0,
            TriggerFlag::Triggered => 1,
        }
    }
}
