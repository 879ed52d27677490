//! Numerical invariants of the double octic construction as functions of
//! `gamma = deg(c1^2 - 4 c2)` of the rank-two bundle.

use serde::{Deserialize, Serialize};

/// Smallest `gamma` the construction can reach; it gives 160 nodes.
pub const METHOD_GAMMA_FLOOR: i64 = -24;
pub const METHOD_NODE_BOUND: i64 = 160;
/// Upper bound on the number of nodes of an octic surface.
pub const MIYAOKA_NODE_BOUND: i64 = 174;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleInvariants {
    pub gamma: i64,
    pub c3_x: i64,
    pub predicted_nodes: i64,
    pub minus_k_fourth: i64,
    /// `gamma mod 8` lies in `{0, 1, 4}`.
    pub admissible: bool,
    /// `gamma >= -24`, so the node count stays within the method's 160.
    pub within_method_bound: bool,
    /// The predicted node count exceeds 174.
    pub exceeds_miyaoka: bool,
}

pub fn bundle_invariants(gamma: i64) -> BundleInvariants {
    let predicted_nodes = 64 - 4 * gamma;
    BundleInvariants {
        gamma,
        c3_x: -8 * gamma - 168,
        predicted_nodes,
        minus_k_fourth: 32 * gamma + 512,
        admissible: matches!(gamma.rem_euclid(8), 0 | 1 | 4),
        within_method_bound: gamma >= METHOD_GAMMA_FLOOR,
        exceeds_miyaoka: predicted_nodes > MIYAOKA_NODE_BOUND,
    }
}

/// Serre-construction numbers for an elliptic curve of degree `d` in P^3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub degree: i64,
    pub gamma: i64,
    pub minus_k_fourth: i64,
    /// `(-K)^4 < 0`, so the fourfold cannot be Fano.
    pub obstructed: bool,
}

/// The bundle attached to an elliptic curve of degree `d` has `gamma = 16 - 4d`.
pub fn serre_gamma(degree: i64) -> i64 {
    16 - 4 * degree
}

pub fn degree_nine_obstruction(degree: i64) -> Obstruction {
    let gamma = serre_gamma(degree);
    let minus_k_fourth = 32 * gamma + 512;
    Obstruction { degree, gamma, minus_k_fourth, obstructed: minus_k_fourth < 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tabulated_values() {
        let b = bundle_invariants(-16);
        assert_eq!((b.predicted_nodes, b.c3_x, b.admissible), (128, -40, true));
        assert!(!bundle_invariants(5).admissible);
        assert!(!bundle_invariants(-3).admissible);
        assert!(!bundle_invariants(13).admissible);
        assert_eq!(bundle_invariants(-24).predicted_nodes, 160);
        assert!(bundle_invariants(-24).within_method_bound);
        assert_eq!(bundle_invariants(-20).minus_k_fourth, -128);
        let split: Vec<i64> = (0..5).map(|a| bundle_invariants(a * a).predicted_nodes).collect();
        assert_eq!(split, [64, 60, 48, 28, 0]);
    }

    #[test]
    fn obstruction_values() {
        let o = degree_nine_obstruction(9);
        assert_eq!((o.gamma, o.minus_k_fourth, o.obstructed), (-20, -128, true));
        let o = degree_nine_obstruction(8);
        assert_eq!((o.gamma, o.minus_k_fourth, o.obstructed), (-16, 0, false));
        let o = degree_nine_obstruction(4);
        assert_eq!((o.gamma, o.minus_k_fourth, o.obstructed), (0, 512, false));
    }

    #[test]
    fn miyaoka_flag() {
        assert!(!bundle_invariants(-27).exceeds_miyaoka);
        assert!(bundle_invariants(-28).exceeds_miyaoka);
        assert!(!bundle_invariants(-28).within_method_bound);
    }

    proptest! {
        #[test]
        fn identities(gamma in -1000i64..1000) {
            let b = bundle_invariants(gamma);
            prop_assert_eq!(b.predicted_nodes.rem_euclid(4), 0);
            prop_assert_eq!(b.c3_x, 2 * b.predicted_nodes - 296);
            prop_assert_eq!(b.minus_k_fourth, 8 * (128 - b.predicted_nodes));
        }
    }
}
