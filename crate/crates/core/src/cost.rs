//! Operational-expenditure model for private (gateway-based) and cellular
//! (mast/subscription-based) deployments. Currency is integer minor units
//! (cents) throughout; rendering decides the symbol and grouping.

use serde::{Deserialize, Serialize};

/// Echoed in every cost report: day-to-day maintenance applies equally to
/// all options and is left out of the comparison.
pub const COST_DISCLAIMER: &str =
    "Rough estimates; maintenance costs (personnel, vehicles) are omitted as they apply to every option.";

/// One deployment option's cost co-factors. All prices in cents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub node_count: u64,
    pub node_unit_price_cents: u64,
    pub gateway_count: u64,
    pub gateway_unit_price_cents: u64,
    pub extra_mast_count: u64,
    pub mast_unit_price_cents: u64,
    /// Yearly subscription per node; zero when the network is
    /// subscription-free.
    pub subscription_cents_per_node_year: u64,
    pub years: u64,
}

impl CostModel {
    /// Private-network option: cheap gateways owned outright, no
    /// subscription.
    pub fn lora_reference(node_count: u64, gateway_count: u64) -> Self {
        Self {
            node_count,
            node_unit_price_cents: 1000,
            gateway_count,
            gateway_unit_price_cents: 100_000,
            extra_mast_count: 0,
            mast_unit_price_cents: 0,
            subscription_cents_per_node_year: 0,
            years: 1,
        }
    }

    /// Cellular option: cheaper nodes, a few extra masts where coverage is
    /// thin, yearly subscription per node.
    pub fn nbiot_reference(node_count: u64, extra_mast_count: u64) -> Self {
        Self {
            node_count,
            node_unit_price_cents: 500,
            gateway_count: 0,
            gateway_unit_price_cents: 0,
            extra_mast_count,
            mast_unit_price_cents: 2_000_000,
            subscription_cents_per_node_year: 3000,
            years: 1,
        }
    }
}

/// Total operational expenditure in cents: hardware plus `years` of
/// subscription.
pub fn total_opex_cents(m: &CostModel) -> u64 {
    m.node_count * m.node_unit_price_cents
        + m.gateway_count * m.gateway_unit_price_cents
        + m.extra_mast_count * m.mast_unit_price_cents
        + m.years * m.node_count * m.subscription_cents_per_node_year
}

/// Render cents as a currency string with thousands grouping; cents are
/// shown only when nonzero.
pub fn format_money(cents: u64, symbol: &str) -> String {
    let whole = cents / 100;
    let frac = cents % 100;
    let digits = whole.to_string();
    let mut grouped = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            grouped.push(',');
        }
        grouped.push(c);
    }
    if frac == 0 {
        format!("{symbol}{grouped}")
    } else {
        format!("{symbol}{grouped}.{frac:02}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lora_row_golden() {
        let m = CostModel::lora_reference(1600, 45);
        assert_eq!(total_opex_cents(&m), 6_100_000);
        assert_eq!(format_money(total_opex_cents(&m), "$"), "$61,000");
    }

    #[test]
    fn nbiot_row_golden() {
        let m = CostModel::nbiot_reference(1600, 5);
        assert_eq!(total_opex_cents(&m), 15_600_000);
        assert_eq!(format_money(total_opex_cents(&m), "$"), "$156,000");
    }

    #[test]
    fn all_zero_model() {
        let m = CostModel {
            node_count: 0,
            node_unit_price_cents: 0,
            gateway_count: 0,
            gateway_unit_price_cents: 0,
            extra_mast_count: 0,
            mast_unit_price_cents: 0,
            subscription_cents_per_node_year: 0,
            years: 1,
        };
        assert_eq!(total_opex_cents(&m), 0);
        assert_eq!(format_money(0, "$"), "$0");
    }

    #[test]
    fn money_formatting() {
        assert_eq!(format_money(123_456_789, "$"), "$1,234,567.89");
        assert_eq!(format_money(500, "EUR "), "EUR 5");
        assert_eq!(format_money(501, "$"), "$5.01");
    }

    proptest! {
        #[test]
        fn multi_year_total_adds_subscription_only(
            nodes in 0u64..10_000,
            node_price in 0u64..100_000,
            gws in 0u64..1_000,
            gw_price in 0u64..1_000_000,
            sub in 0u64..10_000,
            years in 1u64..30,
        ) {
            let one = CostModel {
                node_count: nodes,
                node_unit_price_cents: node_price,
                gateway_count: gws,
                gateway_unit_price_cents: gw_price,
                extra_mast_count: 0,
                mast_unit_price_cents: 0,
                subscription_cents_per_node_year: sub,
                years: 1,
            };
            let many = CostModel { years, ..one.clone() };
            prop_assert_eq!(
                total_opex_cents(&many),
                total_opex_cents(&one) + (years - 1) * nodes * sub
            );
        }

        #[test]
        fn linear_in_node_count(
            nodes in 1u64..10_000,
            node_price in 0u64..100_000,
            sub in 0u64..10_000,
            k in 2u64..5,
        ) {
            let base = CostModel {
                node_count: nodes,
                node_unit_price_cents: node_price,
                gateway_count: 0,
                gateway_unit_price_cents: 0,
                extra_mast_count: 0,
                mast_unit_price_cents: 0,
                subscription_cents_per_node_year: sub,
                years: 1,
            };
            let scaled = CostModel { node_count: nodes * k, ..base.clone() };
            prop_assert_eq!(total_opex_cents(&scaled), k * total_opex_cents(&base));
        }
    }
}
