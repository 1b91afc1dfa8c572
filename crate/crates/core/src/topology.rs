//! Node/gateway layout planning and per-gateway load accounting for the
//! two deployment architectures: cellular (every node talks straight to a
//! tower) and hybrid private-cellular (nodes cluster around concentrators).
//!
//! Propagation is range-threshold only: a node is covered when its nearest
//! gateway lies within the configured maximum link distance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("region dimensions must be positive, got {width_km} x {height_km} km")]
    InvalidRegion { width_km: f64, height_km: f64 },
    #[error("spacing {spacing_km} km must be positive and no larger than the region's short side")]
    InvalidSpacing { spacing_km: f64 },
    #[error("{name} must be positive, got {value}")]
    InvalidInput { name: &'static str, value: f64 },
    #[error("plan needs at least one gateway")]
    NoGateways,
}

/// Rectangular deployment region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub width_km: f64,
    pub height_km: f64,
}

impl Region {
    pub fn new(width_km: f64, height_km: f64) -> Result<Self, TopologyError> {
        if !(width_km > 0.0 && height_km > 0.0) {
            return Err(TopologyError::InvalidRegion {
                width_km,
                height_km,
            });
        }
        Ok(Self {
            width_km,
            height_km,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x_km: f64,
    pub y_km: f64,
}

impl Point {
    pub fn new(x_km: f64, y_km: f64) -> Self {
        Self { x_km, y_km }
    }

    pub fn distance_km(&self, other: &Point) -> f64 {
        ((self.x_km - other.x_km).powi(2) + (self.y_km - other.y_km).powi(2)).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutSource {
    Grid,
    Explicit,
}

/// Sensor positions within a region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeLayout {
    pub region: Region,
    pub spacing_km: Option<f64>,
    pub positions: Vec<Point>,
    pub source: LayoutSource,
}

impl NodeLayout {
    pub fn explicit(region: Region, positions: Vec<Point>) -> Self {
        Self {
            region,
            spacing_km: None,
            positions,
            source: LayoutSource::Explicit,
        }
    }
}

/// Centered grid positions at `spacing` over one dimension of length
/// `extent`: ceil(extent/spacing) points, with the leftover slack split
/// evenly between the two edges. When spacing divides the extent the first
/// point sits at spacing/2.
fn grid_axis(extent: f64, spacing: f64) -> Vec<f64> {
    let n = (extent / spacing).ceil() as usize;
    // max(0): division rounding can overshoot the point count by one at
    // exact-ratio boundaries, which would push the margin negative
    let margin = ((extent - (n - 1) as f64 * spacing) / 2.0).max(0.0);
    (0..n).map(|i| margin + i as f64 * spacing).collect()
}

/// Lay sensors out on a regular grid, row-major from the corner nearest
/// the origin.
pub fn grid_nodes(region: &Region, spacing_km: f64) -> Result<NodeLayout, TopologyError> {
    Region::new(region.width_km, region.height_km)?;
    if !(spacing_km > 0.0) || spacing_km > region.width_km.min(region.height_km) {
        return Err(TopologyError::InvalidSpacing { spacing_km });
    }
    let xs = grid_axis(region.width_km, spacing_km);
    let ys = grid_axis(region.height_km, spacing_km);
    let mut positions = Vec::with_capacity(xs.len() * ys.len());
    for &y in &ys {
        for &x in &xs {
            positions.push(Point::new(x, y));
        }
    }
    Ok(NodeLayout {
        region: *region,
        spacing_km: Some(spacing_km),
        positions,
        source: LayoutSource::Grid,
    })
}

/// Gateways needed to cover a region at `gateway_spacing`: the ceiling of
/// the product (width/spacing) x (height/spacing), taken once over the
/// whole product. A physically placeable grid needs ceil x ceil instead,
/// which can come out larger; [`plan_network`] places that grid and notes
/// the difference.
pub fn gateway_count(region: &Region, gateway_spacing_km: f64) -> Result<u64, TopologyError> {
    Region::new(region.width_km, region.height_km)?;
    if !(gateway_spacing_km > 0.0) {
        return Err(TopologyError::InvalidSpacing {
            spacing_km: gateway_spacing_km,
        });
    }
    let product =
        (region.width_km / gateway_spacing_km) * (region.height_km / gateway_spacing_km);
    Ok(product.ceil() as u64)
}

/// The two deployment architectures. Cellular gateways are wireless
/// towers; hybrid gateways are data-gathering concentrators (cluster
/// heads). Planning geometry is identical, the roles differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Architecture {
    Cellular,
    Hybrid,
}

/// Inputs for [`plan_network`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanInputs {
    pub architecture: Architecture,
    pub gateway_spacing_km: f64,
    pub per_node_uplink_bps: f64,
    pub max_link_distance_km: f64,
    pub gateway_capacity_bps: f64,
    /// Explicit gateway sites (e.g. wired well-sites) replacing the grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit_gateways: Option<Vec<Point>>,
}

/// A planned network: gateway sites, node-to-gateway assignment, loads,
/// and any coverage or capacity violations. Violations are reported, not
/// raised as errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkPlan {
    pub architecture: Architecture,
    pub nodes: NodeLayout,
    pub gateways: Vec<Point>,
    /// Gateway count by the area formula (used for costing); the placed
    /// grid may be larger.
    pub formula_gateway_count: u64,
    /// Per node: index of the assigned gateway, or None when no gateway is
    /// within the maximum link distance.
    pub assignment: Vec<Option<usize>>,
    pub per_gateway_load_bps: Vec<f64>,
    pub uncovered_nodes: Vec<usize>,
    pub overloaded_gateways: Vec<usize>,
    /// Link-range constraint the assignment was made under.
    pub max_link_distance_km: f64,
    /// Longest assigned node-gateway link.
    pub max_assigned_distance_km: f64,
    pub per_node_uplink_bps: f64,
    pub gateway_capacity_bps: f64,
    pub notes: Vec<String>,
}

impl NetworkPlan {
    pub fn covered_count(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }

    pub fn total_load_bps(&self) -> f64 {
        self.per_gateway_load_bps.iter().sum()
    }
}

/// Assign every node to its nearest gateway (ties to the lower gateway
/// index), accumulate per-gateway loads, and flag uncovered nodes and
/// overloaded gateways.
pub fn plan_network(layout: &NodeLayout, inputs: &PlanInputs) -> Result<NetworkPlan, TopologyError> {
    if !(inputs.per_node_uplink_bps > 0.0) {
        return Err(TopologyError::InvalidInput {
            name: "per_node_uplink_bps",
            value: inputs.per_node_uplink_bps,
        });
    }
    if !(inputs.max_link_distance_km > 0.0) {
        return Err(TopologyError::InvalidInput {
            name: "max_link_distance_km",
            value: inputs.max_link_distance_km,
        });
    }
    if !(inputs.gateway_capacity_bps > 0.0) {
        return Err(TopologyError::InvalidInput {
            name: "gateway_capacity_bps",
            value: inputs.gateway_capacity_bps,
        });
    }

    let mut notes = Vec::new();
    let (gateways, formula_count) = match &inputs.explicit_gateways {
        Some(sites) => {
            if sites.is_empty() {
                return Err(TopologyError::NoGateways);
            }
            notes.push(format!(
                "{} explicit gateway sites supplied; grid placement skipped",
                sites.len()
            ));
            (sites.clone(), sites.len() as u64)
        }
        None => {
            let region = &layout.region;
            if !(inputs.gateway_spacing_km > 0.0) {
                return Err(TopologyError::InvalidSpacing {
                    spacing_km: inputs.gateway_spacing_km,
                });
            }
            let xs = grid_axis(region.width_km, inputs.gateway_spacing_km);
            let ys = grid_axis(region.height_km, inputs.gateway_spacing_km);
            let mut sites = Vec::with_capacity(xs.len() * ys.len());
            for &y in &ys {
                for &x in &xs {
                    sites.push(Point::new(x, y));
                }
            }
            let formula = gateway_count(region, inputs.gateway_spacing_km)?;
            if formula != sites.len() as u64 {
                notes.push(format!(
                    "area formula calls for {} gateways; the placed grid needs {}",
                    formula,
                    sites.len()
                ));
            }
            (sites, formula)
        }
    };

    let mut assignment = Vec::with_capacity(layout.positions.len());
    let mut loads = vec![0.0f64; gateways.len()];
    let mut uncovered = Vec::new();
    let mut max_dist = 0.0f64;
    for (ni, node) in layout.positions.iter().enumerate() {
        let mut best: usize = 0;
        let mut best_dist = f64::INFINITY;
        for (gi, gw) in gateways.iter().enumerate() {
            let d = node.distance_km(gw);
            if d < best_dist {
                best_dist = d;
                best = gi;
            }
        }
        if best_dist <= inputs.max_link_distance_km {
            assignment.push(Some(best));
            loads[best] += inputs.per_node_uplink_bps;
            max_dist = max_dist.max(best_dist);
        } else {
            assignment.push(None);
            uncovered.push(ni);
        }
    }

    let overloaded: Vec<usize> = loads
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > inputs.gateway_capacity_bps)
        .map(|(i, _)| i)
        .collect();

    Ok(NetworkPlan {
        architecture: inputs.architecture,
        nodes: layout.clone(),
        gateways,
        formula_gateway_count: formula_count,
        assignment,
        per_gateway_load_bps: loads,
        uncovered_nodes: uncovered,
        overloaded_gateways: overloaded,
        max_link_distance_km: inputs.max_link_distance_km,
        max_assigned_distance_km: max_dist,
        per_node_uplink_bps: inputs.per_node_uplink_bps,
        gateway_capacity_bps: inputs.gateway_capacity_bps,
        notes,
    })
}
