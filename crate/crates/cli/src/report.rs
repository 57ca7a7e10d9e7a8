//! Versioned JSON reports.
//!
//! Every number that is a claim about the code carries a [`Method`] tag
//! saying how it was obtained. Timings are the only nondeterministic
//! fields and are zeroed when a report is built in deterministic mode.

use std::collections::BTreeMap;
use std::time::Instant;

use qhgp_core::css::{
    self, BoundReport, BoundStatus, CodeParams, Distance, DistanceResult, SearchBudget, SearchMethod,
};
use qhgp_core::hypergraph::ProductHypergraph;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Column order of every serialized `H_X`/`H_Z`.
pub const INDEX_CONVENTION: &str = "qubit columns: E_L edges (a, beta) at a*|E2| + beta, then E_R edges (b, alpha) \
     at |V1|*|E2| + b*|E1| + alpha; H_X rows: vertex (x, y) at x*|V2| + y; H_Z rows: chamber (alpha, beta) at \
     alpha*|E2| + beta";

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Computed from matrix ranks or direct counts.
    RankFormula,
    /// Evaluated from a closed-form identity on the factors.
    TheoremFormula,
    /// Certified by exhaustive search.
    Enumeration,
    /// The search stopped early; only a lower bound is known.
    BoundOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub value: u64,
    pub method: Method,
}

impl Claim {
    fn rank(value: usize) -> Self {
        Claim {
            value: value as u64,
            method: Method::RankFormula,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceKind {
    Exact,
    LowerBound,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Trivial,
    KernelEnumeration,
    WeightSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceClaim {
    pub kind: DistanceKind,
    /// Absent for `infinite`; a lower bound for `lower-bound`.
    pub value: Option<u64>,
    pub method: Method,
    pub strategy: Strategy,
    pub search_budget_used: u64,
}

impl DistanceClaim {
    pub fn of(r: &DistanceResult) -> Self {
        let (kind, value, method) = match r.distance {
            Distance::Exact(w) => (DistanceKind::Exact, Some(w as u64), Method::Enumeration),
            Distance::LowerBoundOnly(w) => (DistanceKind::LowerBound, Some(w as u64), Method::BoundOnly),
            Distance::Infinite => (DistanceKind::Infinite, None, Method::RankFormula),
        };
        let strategy = match r.method {
            SearchMethod::Trivial => Strategy::Trivial,
            SearchMethod::KernelEnumeration => Strategy::KernelEnumeration,
            SearchMethod::WeightSearch => Strategy::WeightSearch,
        };
        DistanceClaim {
            kind,
            value,
            method,
            strategy,
            search_budget_used: r.search_budget_used,
        }
    }

    pub fn distance(&self) -> Distance {
        match (self.kind, self.value) {
            (DistanceKind::Exact, Some(w)) => Distance::Exact(w as usize),
            (DistanceKind::LowerBound, Some(w)) => Distance::LowerBoundOnly(w as usize),
            _ => Distance::Infinite,
        }
    }
}

/// Both printed forms of the dimension formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaClaim {
    pub transpose_form: i64,
    pub cycle_form: i64,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub triple: String,
    pub n: Claim,
    pub k: Claim,
    pub rank_x: Claim,
    pub rank_z: Claim,
    pub k_formula: Option<FormulaClaim>,
    pub d: DistanceClaim,
    pub d_x: DistanceClaim,
    pub d_z: DistanceClaim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub row_weights_x: BTreeMap<usize, usize>,
    pub col_weights_x: BTreeMap<usize, usize>,
    pub row_weights_z: BTreeMap<usize, usize>,
    pub col_weights_z: BTreeMap<usize, usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Holds,
    Violated,
    Inconclusive,
    NotApplicable,
}

impl From<BoundStatus> for CheckStatus {
    fn from(s: BoundStatus) -> Self {
        match s {
            BoundStatus::Holds => CheckStatus::Holds,
            BoundStatus::Violated => CheckStatus::Violated,
            BoundStatus::Inconclusive => CheckStatus::Inconclusive,
            BoundStatus::NotApplicable => CheckStatus::NotApplicable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub label: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub d1: DistanceClaim,
    pub d2: DistanceClaim,
    pub d1_t: DistanceClaim,
    pub d2_t: DistanceClaim,
    pub checks: Vec<CheckRecord>,
    pub note: Option<String>,
}

impl Bounds {
    pub fn of(b: &BoundReport) -> Self {
        Bounds {
            d1: DistanceClaim::of(&b.classical.d1),
            d2: DistanceClaim::of(&b.classical.d2),
            d1_t: DistanceClaim::of(&b.classical.d1_t),
            d2_t: DistanceClaim::of(&b.classical.d2_t),
            checks: b
                .checks()
                .map(|c| CheckRecord {
                    label: c.label.to_string(),
                    status: c.status.into(),
                })
                .collect(),
            note: b.note.clone(),
        }
    }
}

/// Supports of minimum-weight logical operators, as column indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub x: Option<Vec<usize>>,
    pub z: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub full_enum_dim: usize,
    pub max_weight: usize,
    pub max_candidates: u64,
}

impl From<&SearchBudget> for Budget {
    fn from(b: &SearchBudget) -> Self {
        Budget {
            full_enum_dim: b.full_enum_dim,
            max_weight: b.max_weight,
            max_candidates: b.max_candidates,
        }
    }
}

/// Where a code came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    /// `toric`, `hgp-single`, `hgp` or `css` for a bare matrix pair.
    pub kind: String,
    pub spec: String,
    pub seed: Option<u64>,
    pub index_convention: String,
    pub tool_version: String,
}

impl Construction {
    pub fn new(kind: &str, spec: String, seed: Option<u64>) -> Self {
        Construction {
            kind: kind.to_string(),
            spec,
            seed,
            index_convention: INDEX_CONVENTION.to_string(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    /// Placeholder for a directory without `construction.json`.
    pub fn unknown() -> Self {
        Construction::new("css", "unknown".to_string(), None)
    }
}

/// Wall-clock microseconds per phase.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub deterministic: bool,
    pub phases_us: BTreeMap<String, u64>,
}

/// Records phase durations, or zeros in deterministic mode.
#[derive(Debug)]
pub struct Timer {
    timing: Timing,
}

impl Timer {
    pub fn new(deterministic: bool) -> Self {
        Timer {
            timing: Timing {
                deterministic,
                phases_us: BTreeMap::new(),
            },
        }
    }

    pub fn phase<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let us = if self.timing.deterministic {
            0
        } else {
            start.elapsed().as_micros() as u64
        };
        *self.timing.phases_us.entry(name.to_string()).or_insert(0) += us;
        out
    }

    pub fn finish(self) -> Timing {
        self.timing
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub construction: Construction,
    pub params: Params,
    pub weights: Weights,
    pub bounds: Option<Bounds>,
    pub witnesses: Witnesses,
    pub budget: Budget,
    pub timing: Timing,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unsupported report schema version {found}, expected {SCHEMA_VERSION}")]
    Version { found: u64 },
}

impl Report {
    pub fn new(
        construction: Construction,
        params: &CodeParams,
        product: Option<&ProductHypergraph>,
        bounds: Option<&BoundReport>,
        budget: &SearchBudget,
        timing: Timing,
    ) -> Self {
        let n_method = match product {
            Some(p) if p.edge_count() == params.n => Method::TheoremFormula,
            _ => Method::RankFormula,
        };
        let k_formula = product.map(|p| {
            let f = css::dimension_forms(p);
            FormulaClaim {
                transpose_form: f.transpose_form,
                cycle_form: f.cycle_form,
                method: Method::TheoremFormula,
            }
        });
        let support = |r: &DistanceResult| r.witness.as_ref().map(|v| v.support());
        Report {
            schema_version: SCHEMA_VERSION,
            construction,
            params: Params {
                triple: params.triple(),
                n: Claim {
                    value: params.n as u64,
                    method: n_method,
                },
                k: Claim::rank(params.k),
                rank_x: Claim::rank(params.rank_x),
                rank_z: Claim::rank(params.rank_z),
                k_formula,
                d: DistanceClaim::of(&params.d),
                d_x: DistanceClaim::of(&params.d_x),
                d_z: DistanceClaim::of(&params.d_z),
            },
            weights: Weights {
                row_weights_x: params.weights.row_weights_x.clone(),
                col_weights_x: params.weights.col_weights_x.clone(),
                row_weights_z: params.weights.row_weights_z.clone(),
                col_weights_z: params.weights.col_weights_z.clone(),
            },
            bounds: bounds.map(Bounds::of),
            witnesses: Witnesses {
                x: support(&params.d_x),
                z: support(&params.d_z),
            },
            budget: budget.into(),
            timing,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Parses a report, rejecting other schema versions before decoding the
    /// rest.
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value.get("schema_version").and_then(|v| v.as_u64()).unwrap_or(0);
        if found != SCHEMA_VERSION as u64 {
            return Err(ReportError::Version { found });
        }
        Ok(serde_json::from_value(value)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qhgp_core::constructions::{hgp_from_single, repetition};
    use qhgp_core::css::{check_distance_bounds, full_params};

    fn sample(deterministic: bool) -> Report {
        let (p, code) = hgp_from_single(&repetition(3).unwrap()).unwrap();
        let budget = SearchBudget::default();
        let mut timer = Timer::new(deterministic);
        let params = timer.phase("params", || full_params(&code, &budget));
        let bounds = timer.phase("bounds", || check_distance_bounds(&p, &params, &budget));
        Report::new(
            Construction::new("hgp-single", "repetition:3".into(), None),
            &params,
            Some(&p),
            Some(&bounds),
            &budget,
            timer.finish(),
        )
    }

    #[test]
    fn claims_carry_methods() {
        let r = sample(true);
        assert_eq!(r.params.triple, "[[13,1,3]]");
        assert_eq!(r.params.n.method, Method::TheoremFormula);
        assert_eq!(
            r.params.k,
            Claim {
                value: 1,
                method: Method::RankFormula
            }
        );
        assert_eq!(r.params.k_formula.unwrap().transpose_form, 1);
        assert_eq!(r.params.d.method, Method::Enumeration);
        assert_eq!(r.params.d.strategy, Strategy::KernelEnumeration);
        assert_eq!(r.witnesses.x.as_ref().unwrap().len(), 3);
        assert!(r.timing.phases_us.values().all(|&t| t == 0));
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let r = sample(false);
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        assert!(text.contains("\"method\": \"rank-formula\""));
    }

    #[test]
    fn deterministic_reports_are_identical() {
        assert_eq!(sample(true).to_json(), sample(true).to_json());
    }

    #[test]
    fn other_schema_versions_are_rejected() {
        let text = sample(true)
            .to_json()
            .replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(matches!(
            Report::from_json(&text),
            Err(ReportError::Version { found: 2 })
        ));
    }

    #[test]
    fn lower_bound_claims_are_bound_only() {
        let r = DistanceResult {
            distance: Distance::LowerBoundOnly(5),
            search_budget_used: 10,
            method: SearchMethod::WeightSearch,
            witness: None,
        };
        let c = DistanceClaim::of(&r);
        assert_eq!(
            (c.kind, c.value, c.method),
            (DistanceKind::LowerBound, Some(5), Method::BoundOnly)
        );
        assert_eq!(c.distance(), Distance::LowerBoundOnly(5));
    }
}
