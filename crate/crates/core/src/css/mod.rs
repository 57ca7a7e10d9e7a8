//! CSS codes as pairs of orthogonal parity-check matrices, their parameters
//! `[[N, K, D]]`, and checks of the product-code dimension and distance
//! bounds.

mod bounds;
mod distance;

use std::collections::BTreeMap;

pub use bounds::{check_distance_bounds, BoundCheck, BoundReport, BoundStatus, ClassicalDistances};
pub use distance::{
    binomial, classical_min_distance, min_weight_coset, Distance, DistanceResult, SearchBudget, SearchMethod,
};

use crate::error::{Error, Result};
use crate::gf2::{self, BinaryMatrix};
use crate::hypergraph::ProductHypergraph;

/// A CSS code. `h_x · h_zᵀ = 0` holds for every value of this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    h_x: BinaryMatrix,
    h_z: BinaryMatrix,
}

impl CssCode {
    pub fn new(h_x: BinaryMatrix, h_z: BinaryMatrix) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(Error::Shape(format!(
                "H_X has {} columns but H_Z has {}",
                h_x.cols(),
                h_z.cols()
            )));
        }
        if let Some((row_x, row_z)) = first_non_orthogonal(&h_x, &h_z) {
            return Err(Error::Orthogonality { row_x, row_z });
        }
        Ok(Self { h_x, h_z })
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.h_z
    }

    /// Blocklength `N`.
    pub fn n(&self) -> usize {
        self.h_x.cols()
    }

    pub fn quantum_dimension(&self) -> usize {
        quantum_dimension(self)
    }
}

/// First `(row_x, row_z)` pair with odd overlap, scanning row-major.
pub fn first_non_orthogonal(h_x: &BinaryMatrix, h_z: &BinaryMatrix) -> Option<(usize, usize)> {
    assert_eq!(h_x.cols(), h_z.cols(), "column mismatch");
    h_x.row_vectors()
        .iter()
        .enumerate()
        .find_map(|(i, rx)| h_z.row_vectors().iter().position(|rz| rx.dot(rz)).map(|j| (i, j)))
}

pub fn new_css(h_x: BinaryMatrix, h_z: BinaryMatrix) -> Result<CssCode> {
    CssCode::new(h_x, h_z)
}

/// `K = N − rank H_X − rank H_Z`.
pub fn quantum_dimension(c: &CssCode) -> usize {
    let (rx, rz) = (gf2::rank(&c.h_x), gf2::rank(&c.h_z));
    // Orthogonality puts rowspace(H_Z) inside ker(H_X), so this cannot underflow.
    assert!(rx + rz <= c.n(), "rank sum exceeds blocklength on an orthogonal pair");
    c.n() - rx - rz
}

/// Both closed forms of the product-code dimension together with the
/// factor data they are computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionForms {
    /// `dim Z(H1)`.
    pub k: i64,
    /// `dim Z(H2)`.
    pub h: i64,
    /// `dim Z(H1ᵀ)`.
    pub r: i64,
    /// `dim Z(H2ᵀ)`.
    pub s: i64,
    /// `2rs + r(|E2| − |V2|) + s(|E1| − |V1|)`.
    pub transpose_form: i64,
    /// `2kh + k(|V2| − |E2|) + h(|V1| − |E1|)`.
    pub cycle_form: i64,
}

pub fn dimension_forms(p: &ProductHypergraph) -> DimensionForms {
    let (h1, h2) = (p.left(), p.right());
    let (v1, e1) = (h1.vertex_count() as i64, h1.edge_count() as i64);
    let (v2, e2) = (h2.vertex_count() as i64, h2.edge_count() as i64);
    let k = h1.cycle_code_dim() as i64;
    let h = h2.cycle_code_dim() as i64;
    let r = h1.transpose().cycle_code_dim() as i64;
    let s = h2.transpose().cycle_code_dim() as i64;
    DimensionForms {
        k,
        h,
        r,
        s,
        transpose_form: 2 * r * s + r * (e2 - v2) + s * (e1 - v1),
        cycle_form: 2 * k * h + k * (v2 - e2) + h * (v1 - e1),
    }
}

/// Dimension of the product code from the factor cycle-code dimensions alone.
pub fn dimension_by_formula(p: &ProductHypergraph) -> i64 {
    let f = dimension_forms(p);
    assert_eq!(
        f.transpose_form, f.cycle_form,
        "the two dimension forms disagree: {f:?}"
    );
    f.transpose_form
}

/// Histogram `weight → count`.
pub type WeightHistogram = BTreeMap<usize, usize>;

pub fn histogram(weights: &[usize]) -> WeightHistogram {
    let mut h = WeightHistogram::new();
    for &w in weights {
        *h.entry(w).or_default() += 1;
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub row_weights_x: WeightHistogram,
    pub col_weights_x: WeightHistogram,
    pub row_weights_z: WeightHistogram,
    pub col_weights_z: WeightHistogram,
}

impl WeightProfile {
    pub fn of(c: &CssCode) -> Self {
        Self {
            row_weights_x: histogram(&c.h_x.row_weights()),
            col_weights_x: histogram(&c.h_x.col_weights()),
            row_weights_z: histogram(&c.h_z.row_weights()),
            col_weights_z: histogram(&c.h_z.col_weights()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub rank_x: usize,
    pub rank_z: usize,
    /// `min(d_x, d_z)`.
    pub d: DistanceResult,
    /// Minimum weight in `C_X \ C_Z^⊥`.
    pub d_x: DistanceResult,
    /// Minimum weight in `C_Z \ C_X^⊥`.
    pub d_z: DistanceResult,
    pub weights: WeightProfile,
}

impl CodeParams {
    pub fn triple(&self) -> String {
        let d = match self.d.distance {
            Distance::Exact(w) => w.to_string(),
            Distance::LowerBoundOnly(w) => format!(">={w}"),
            Distance::Infinite => "∞".to_string(),
        };
        format!("[[{},{},{}]]", self.n, self.k, d)
    }
}

/// Combines the two sides into the code distance.
pub fn combine_distances(d_x: &DistanceResult, d_z: &DistanceResult) -> DistanceResult {
    use Distance::*;
    let used = d_x.search_budget_used + d_z.search_budget_used;
    let pick = |r: &DistanceResult| DistanceResult {
        search_budget_used: used,
        ..r.clone()
    };
    match (d_x.distance, d_z.distance) {
        (Infinite, _) => pick(d_z),
        (_, Infinite) => pick(d_x),
        (Exact(a), Exact(b)) => pick(if a <= b { d_x } else { d_z }),
        (Exact(a), LowerBoundOnly(b)) if a <= b => pick(d_x),
        (LowerBoundOnly(a), Exact(b)) if b <= a => pick(d_z),
        (a, b) => {
            let lo = a.interval().0.min(b.interval().0) as usize;
            DistanceResult {
                distance: LowerBoundOnly(lo),
                search_budget_used: used,
                method: SearchMethod::WeightSearch,
                witness: None,
            }
        }
    }
}

/// `K`, both one-sided distances, `D` and the weight histograms.
pub fn full_params(c: &CssCode, budget: &SearchBudget) -> CodeParams {
    let rank_x = gf2::rank(&c.h_x);
    let rank_z = gf2::rank(&c.h_z);
    let k = quantum_dimension(c);
    let d_x = min_weight_coset(&c.h_x, &c.h_z, budget);
    let d_z = min_weight_coset(&c.h_z, &c.h_x, budget);
    let d = combine_distances(&d_x, &d_z);
    debug_assert_eq!(k == 0, d.distance == Distance::Infinite);
    CodeParams {
        n: c.n(),
        k,
        rank_x,
        rank_z,
        d,
        d_x,
        d_z,
        weights: WeightProfile::of(c),
    }
}
