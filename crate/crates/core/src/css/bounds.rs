//! Distance bounds for product codes in terms of the four factor cycle
//! codes `Z(H1)`, `Z(H2)`, `Z(H1ᵀ)`, `Z(H2ᵀ)`:
//!
//! * `D ≥ min(d1, d2, d1ᵀ, d2ᵀ)`;
//! * `D ≤ d1` whenever `d1 < ∞` and `d2ᵀ < ∞`;
//! * `D ≤ d2` whenever `d2 < ∞` and `d1ᵀ < ∞`.

use super::distance::{classical_min_distance, Distance, DistanceResult, SearchBudget};
use super::CodeParams;
use crate::hypergraph::ProductHypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundStatus {
    Holds,
    Violated,
    /// Some quantity is only known as a lower bound.
    Inconclusive,
    /// The hypotheses of the bound are not met.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub label: &'static str,
    pub status: BoundStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalDistances {
    pub d1: DistanceResult,
    pub d2: DistanceResult,
    pub d1_t: DistanceResult,
    pub d2_t: DistanceResult,
}

impl ClassicalDistances {
    pub fn compute(p: &ProductHypergraph, budget: &SearchBudget) -> Self {
        let h1 = p.left().incidence();
        let h2 = p.right().incidence();
        Self {
            d1: classical_min_distance(h1, budget),
            d2: classical_min_distance(h2, budget),
            d1_t: classical_min_distance(&h1.transpose(), budget),
            d2_t: classical_min_distance(&h2.transpose(), budget),
        }
    }

    /// Interval for `min(d1, d2, d1ᵀ, d2ᵀ)`.
    pub fn min_interval(&self) -> (u64, u64) {
        [&self.d1, &self.d2, &self.d1_t, &self.d2_t]
            .iter()
            .map(|r| r.distance.interval())
            .fold((u64::MAX, u64::MAX), |(lo, hi), (l, h)| (lo.min(l), hi.min(h)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub classical: ClassicalDistances,
    pub code_distance: Distance,
    pub lower: BoundCheck,
    pub upper: Vec<BoundCheck>,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn checks(&self) -> impl Iterator<Item = &BoundCheck> {
        std::iter::once(&self.lower).chain(&self.upper)
    }

    pub fn has_violation(&self) -> bool {
        self.checks().any(|c| c.status == BoundStatus::Violated)
    }

    /// True when no check is violated or inconclusive.
    pub fn is_conclusive(&self) -> bool {
        self.checks().all(|c| c.status != BoundStatus::Inconclusive)
    }
}

/// Decides `a ≥ b` from known intervals.
fn at_least(a: (u64, u64), b: (u64, u64)) -> BoundStatus {
    if a.0 >= b.1 {
        BoundStatus::Holds
    } else if a.1 < b.0 {
        BoundStatus::Violated
    } else {
        BoundStatus::Inconclusive
    }
}

fn upper_check(label: &'static str, code: Distance, bound: &DistanceResult, other: &DistanceResult) -> BoundCheck {
    let applicable = bound.distance.is_finite() && other.distance.is_finite();
    let status = if applicable {
        at_least(bound.distance.interval(), code.interval())
    } else {
        BoundStatus::NotApplicable
    };
    BoundCheck { label, status }
}

/// Checks the product-code distance against the classical factor distances.
/// A violation can only mean an implementation bug.
pub fn check_distance_bounds(p: &ProductHypergraph, params: &CodeParams, budget: &SearchBudget) -> BoundReport {
    let classical = ClassicalDistances::compute(p, budget);
    let code = params.d.distance;
    let lower = BoundCheck {
        label: "D >= min(d1, d2, d1T, d2T)",
        status: at_least(code.interval(), classical.min_interval()),
    };
    let upper = vec![
        upper_check("D <= d1 (d1, d2T finite)", code, &classical.d1, &classical.d2_t),
        upper_check("D <= d2 (d2, d1T finite)", code, &classical.d2, &classical.d1_t),
    ];
    let note = (params.k == 0).then(|| "no logical operators; D = ∞ by convention".to_string());
    BoundReport {
        classical,
        code_distance: code,
        lower,
        upper,
        note,
    }
}
