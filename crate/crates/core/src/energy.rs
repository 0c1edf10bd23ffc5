//! UAV energy model.
//!
//! The model turns battery and power figures into the two radii that
//! drive everything else: `d_max`, how far the UAV can fly on a full
//! battery, and `d_cover`, how far from a charging station it can serve a
//! node and still make it back.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EnergyError {
    #[error("invalid UAV parameters: {0}")]
    InvalidParams(String),
    /// The battery cannot fund one hover plus one node charge, so the
    /// coverage radius would be non-positive.
    #[error("infeasible UAV parameters: d_cover would be {0} m")]
    InfeasibleParams(f64),
}

/// UAV configuration.
///
/// The default values are *calibrated*, not measured: the battery capacity
/// matches the standard configuration (7.8e4 J), and the remaining figures
/// were chosen so that the default coverage radius lands at 2828.0 m,
/// which makes the grid baseline's cell side 4000 m on the default
/// 16000 m region. See `defaults.json` at the repository root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UavParams {
    /// Battery capacity, joules.
    pub e_max: f64,
    /// Cruise speed, m/s.
    pub v_u: f64,
    /// Power draw while moving, watts.
    pub p_mov: f64,
    /// Blade-profile component of hover power, watts.
    pub p_blade: f64,
    /// Induced component of hover power, watts.
    pub p_induced: f64,
    /// Time to fully charge one node, seconds.
    pub delta: f64,
    /// Node battery capacity, joules.
    pub e_node: f64,
    /// Wireless transfer efficiency, in (0, 1].
    pub eta: f64,
}

impl Default for UavParams {
    fn default() -> Self {
        Self {
            e_max: 78_000.0,
            v_u: 10.0,
            p_mov: 120.0,
            p_blade: 80.0,
            p_induced: 70.0,
            delta: 60.0,
            e_node: 338.4,
            eta: 0.3,
        }
    }
}

/// Per-flight energy breakdown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightEnergy {
    /// Energy spent moving between targets.
    pub e_mov: f64,
    /// Energy spent hovering over nodes while charging them.
    pub e_hov: f64,
    /// Energy transferred to nodes, inflated by transfer losses.
    pub e_charge: f64,
    /// Total: `e_mov + e_hov + e_charge`, accumulated in that order.
    pub e_consume: f64,
}

impl UavParams {
    pub fn validate(&self) -> Result<(), EnergyError> {
        let fields = [
            ("e_max", self.e_max),
            ("v_u", self.v_u),
            ("p_mov", self.p_mov),
            ("p_blade", self.p_blade),
            ("p_induced", self.p_induced),
            ("delta", self.delta),
            ("e_node", self.e_node),
            ("eta", self.eta),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(EnergyError::InvalidParams(format!(
                    "{name} must be finite and strictly positive, got {value}"
                )));
            }
        }
        if self.eta > 1.0 {
            return Err(EnergyError::InvalidParams(format!(
                "eta must be at most 1, got {}",
                self.eta
            )));
        }
        self.d_cover().map(|_| ())
    }

    /// Power draw while hovering: blade-profile plus induced.
    pub fn hover_power(&self) -> f64 {
        self.p_blade + self.p_induced
    }

    /// Energy breakdown for one charging flight: `t_m` seconds of travel,
    /// `n_charged` nodes each hovered over for `delta` seconds, and
    /// `e_rec` joules delivered into node batteries.
    pub fn flight_energy(&self, t_m: f64, n_charged: u32, e_rec: f64) -> FlightEnergy {
        debug_assert!(t_m >= 0.0 && e_rec >= 0.0);
        let e_mov = self.p_mov * t_m;
        let e_hov = self.hover_power() * (n_charged as f64) * self.delta;
        let e_charge = e_rec / self.eta;
        FlightEnergy {
            e_mov,
            e_hov,
            e_charge,
            e_consume: e_mov + e_hov + e_charge,
        }
    }

    /// Maximum flight distance on a full battery, meters.
    pub fn d_max(&self) -> f64 {
        self.e_max / self.p_mov * self.v_u
    }

    /// Charging coverage radius, meters: after one hover and one full node
    /// charge, the UAV must still reach a station, so half the remaining
    /// range bounds the node-to-station distance.
    pub fn d_cover(&self) -> Result<f64, EnergyError> {
        let budget = self.e_max - self.hover_power() * self.delta - self.e_node / self.eta;
        let d = 0.5 * budget / self.p_mov * self.v_u;
        if d <= 0.0 {
            return Err(EnergyError::InfeasibleParams(d));
        }
        debug_assert!(d < self.d_max() / 2.0);
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn hover_power_is_the_sum_of_components() {
        let p = UavParams {
            p_blade: 80.0,
            p_induced: 70.0,
            ..UavParams::default()
        };
        assert_eq!(p.hover_power(), 150.0);
        assert_eq!(UavParams::default().hover_power(), 150.0);
    }

    #[test]
    fn flight_energy_worked_example() {
        let p = UavParams {
            p_mov: 120.0,
            p_blade: 80.0,
            p_induced: 70.0,
            delta: 60.0,
            eta: 0.3,
            ..UavParams::default()
        };
        let e = p.flight_energy(100.0, 1, 300.0);
        assert!(rel_eq(e.e_mov, 12_000.0, 1e-12));
        assert!(rel_eq(e.e_hov, 9_000.0, 1e-12));
        assert!(rel_eq(e.e_charge, 1_000.0, 1e-12));
        assert!(rel_eq(e.e_consume, 22_000.0, 1e-12));

        let zero = p.flight_energy(0.0, 0, 0.0);
        assert_eq!(zero.e_consume, 0.0);

        let lossless = UavParams {
            eta: 1.0,
            ..UavParams::default()
        };
        assert_eq!(lossless.flight_energy(0.0, 0, 500.0).e_charge, 500.0);
    }

    #[test]
    fn d_max_default_and_linearity() {
        let p = UavParams::default();
        assert!(rel_eq(p.d_max(), 6_500.0, 1e-9));

        let doubled = UavParams {
            e_max: p.e_max * 2.0,
            ..p
        };
        assert!(rel_eq(doubled.d_max(), 2.0 * p.d_max(), 1e-12));

        let drained = UavParams { e_max: 1e-9, ..p };
        assert!(drained.d_max() < 1e-10);
    }

    #[test]
    fn d_cover_default_and_boundary() {
        let p = UavParams::default();
        assert!(rel_eq(p.d_cover().unwrap(), 2_828.0, 1e-9));

        // Battery exactly funds the hover plus the node charge: nothing
        // left to fly with.
        let boundary = UavParams {
            e_max: p.hover_power() * p.delta + p.e_node / p.eta,
            ..p
        };
        assert!(matches!(
            boundary.d_cover(),
            Err(EnergyError::InfeasibleParams(_))
        ));
    }

    #[test]
    fn validate_rejects_nonpositive_and_eta_above_one() {
        let ok = UavParams::default();
        assert!(ok.validate().is_ok());
        assert!(UavParams { e_max: 0.0, ..ok }.validate().is_err());
        assert!(UavParams { eta: 1.5, ..ok }.validate().is_err());
        assert!(UavParams {
            e_max: 9_000.0,
            ..ok
        }
        .validate()
        .is_err());
    }

    fn arb_valid_params() -> impl Strategy<Value = UavParams> {
        (
            2.0e4..2.0e5f64, // e_max
            1.0..30.0f64,    // v_u
            50.0..500.0f64,  // p_mov
            10.0..200.0f64,  // p_blade
            10.0..200.0f64,  // p_induced
            10.0..300.0f64,  // delta
            50.0..2000.0f64, // e_node
            0.05..1.0f64,    // eta
        )
            .prop_map(
                |(e_max, v_u, p_mov, p_blade, p_induced, delta, e_node, eta)| UavParams {
                    e_max,
                    v_u,
                    p_mov,
                    p_blade,
                    p_induced,
                    delta,
                    e_node,
                    eta,
                },
            )
            .prop_filter("feasible", |p| p.validate().is_ok())
    }

    proptest! {
        #[test]
        fn d_cover_below_half_d_max(p in arb_valid_params()) {
            prop_assert!(p.d_cover().unwrap() < p.d_max() / 2.0);
        }

        #[test]
        fn radii_monotone_in_e_max_and_p_mov(p in arb_valid_params(), bump in 1.01..3.0f64) {
            let more_battery = UavParams { e_max: p.e_max * bump, ..p };
            prop_assert!(more_battery.d_max() > p.d_max());
            prop_assert!(more_battery.d_cover().unwrap() > p.d_cover().unwrap());

            let thirstier = UavParams { p_mov: p.p_mov * bump, ..p };
            prop_assert!(thirstier.d_max() < p.d_max());
            prop_assert!(thirstier.d_cover().unwrap() < p.d_cover().unwrap());
        }
    }
}
