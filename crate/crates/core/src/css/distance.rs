//! Exact minimum-weight search for nonzero vectors of `ker A` that are not
//! in `rowspace B`.
//!
//! Membership in `rowspace B` is tested through a detector basis `L` of
//! `ker B`: since `rowspace B = (ker B)^⊥`, a vector `v` lies in the row space
//! iff `L·v = 0`. Both strategies below therefore track a syndrome pair
//! `(A·v, L·v)` incrementally and accept `v` iff the first half is zero and
//! the second is not.
//!
//! Work is split into a fixed number of prefix chunks that does not depend
//! on the thread count, and chunk results are merged by `(weight, chunk,
//! step)`. The result, witness included, is identical for any pool size.

use rayon::prelude::*;

use crate::gf2::{self, BinaryMatrix, BinaryVector};

/// Limits for the distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Enumerate the whole kernel when its dimension is at most this.
    pub full_enum_dim: usize,
    /// Largest weight tried by the increasing-weight search.
    pub max_weight: usize,
    /// Cap on the number of candidate vectors examined by the
    /// increasing-weight search, summed over all weights.
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            full_enum_dim: 28,
            max_weight: 32,
            max_candidates: 4_000_000_000,
        }
    }
}

/// Kernel dimensions above this are never fully enumerated.
const MAX_ENUM_DIM: usize = 40;
/// Number of top kernel-basis bits used to split Gray-code enumeration.
const PREFIX_BITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Exact(usize),
    /// The true distance is at least this value; every smaller weight was
    /// exhausted before the budget ran out.
    LowerBoundOnly(usize),
    /// The quotient is trivial, so no qualifying vector exists.
    Infinite,
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Distance::Exact(_))
    }

    pub fn is_finite(self) -> bool {
        !matches!(self, Distance::Infinite)
    }

    /// Known interval `[lo, hi]` for the true value, `u64::MAX` standing in
    /// for infinity.
    pub fn interval(self) -> (u64, u64) {
        match self {
            Distance::Exact(w) => (w as u64, w as u64),
            Distance::LowerBoundOnly(w) => (w as u64, u64::MAX),
            Distance::Infinite => (u64::MAX, u64::MAX),
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Exact(w) => write!(f, "Exact({w})"),
            Distance::LowerBoundOnly(w) => write!(f, ">={w}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    /// Nothing to search: the quotient is trivial.
    Trivial,
    /// Every kernel vector was visited in Gray-code order.
    KernelEnumeration,
    /// Vectors of weight 1, 2, ... were tried in turn.
    WeightSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: Distance,
    /// Number of candidate vectors examined.
    pub search_budget_used: u64,
    pub method: SearchMethod,
    /// A qualifying vector of the reported weight, present iff `Exact`.
    pub witness: Option<BinaryVector>,
}

impl DistanceResult {
    fn infinite() -> Self {
        Self {
            distance: Distance::Infinite,
            search_budget_used: 0,
            method: SearchMethod::Trivial,
            witness: None,
        }
    }

    /// Re-checks the witness from scratch: correct weight, in `ker code_checks`,
    /// outside `rowspace excluded`.
    pub fn verify_witness(&self, code_checks: &BinaryMatrix, excluded: &BinaryMatrix) -> bool {
        match (self.distance, &self.witness) {
            (Distance::Exact(w), Some(v)) => {
                v.weight() == w && code_checks.mul_vec(v).is_zero() && !gf2::in_row_space(excluded, v)
            }
            (Distance::Exact(_), None) => false,
            (_, None) => true,
            (_, Some(_)) => false,
        }
    }
}

/// Minimum weight of `v ≠ 0` with `code_checks·v = 0` and
/// `v ∉ rowspace(excluded_rowspace)`.
pub fn min_weight_coset(
    code_checks: &BinaryMatrix,
    excluded_rowspace: &BinaryMatrix,
    budget: &SearchBudget,
) -> DistanceResult {
    assert_eq!(
        code_checks.cols(),
        excluded_rowspace.cols(),
        "code checks and excluded row space have different column counts"
    );
    let n = code_checks.cols();
    let code = code_checks.echelon();
    let detectors = gf2::kernel_basis(excluded_rowspace);
    let kernel = code.kernel_basis();

    let logical_dim = {
        let syndromes: Vec<BinaryVector> = kernel
            .iter()
            .map(|v| BinaryVector::from_bools(&detectors.iter().map(|d| d.dot(v)).collect::<Vec<_>>()))
            .collect();
        gf2::rank(&BinaryMatrix::from_rows(detectors.len(), syndromes))
    };
    if logical_dim == 0 {
        return DistanceResult::infinite();
    }

    if kernel.len() <= budget.full_enum_dim.min(MAX_ENUM_DIM) {
        enumerate_kernel(n, &kernel, &detectors)
    } else {
        weight_search(n, code.rows(), &detectors, budget)
    }
}

/// Minimum weight of a nonzero vector in `ker checks`.
pub fn classical_min_distance(checks: &BinaryMatrix, budget: &SearchBudget) -> DistanceResult {
    min_weight_coset(checks, &BinaryMatrix::zeros(0, checks.cols()), budget)
}

/// Packs each vector's bits, followed by its detector syndrome, into words.
struct Packed {
    vec_words: usize,
    syn_words: usize,
    data: Vec<u64>,
}

impl Packed {
    fn stride(&self) -> usize {
        self.vec_words + self.syn_words
    }

    fn item(&self, i: usize) -> &[u64] {
        let s = self.stride();
        &self.data[i * s..(i + 1) * s]
    }
}

fn syndrome(detectors: &[BinaryVector], v: &BinaryVector) -> BinaryVector {
    BinaryVector::from_bools(&detectors.iter().map(|d| d.dot(v)).collect::<Vec<_>>())
}

fn enumerate_kernel(n: usize, kernel: &[BinaryVector], detectors: &[BinaryVector]) -> DistanceResult {
    let dim = kernel.len();
    let vec_words = n.div_ceil(64);
    let syn_words = detectors.len().div_ceil(64);
    let mut data = Vec::with_capacity(dim * (vec_words + syn_words));
    for b in kernel {
        data.extend_from_slice(b.words());
        data.extend_from_slice(syndrome(detectors, b).words());
    }
    let packed = Packed {
        vec_words,
        syn_words,
        data,
    };

    let prefix = dim.min(PREFIX_BITS);
    let low = dim - prefix;
    let steps: u64 = 1 << low;

    let best = (0u64..1 << prefix)
        .into_par_iter()
        .filter_map(|chunk| {
            let mut state = vec![0u64; packed.stride()];
            for t in 0..prefix {
                if chunk >> t & 1 == 1 {
                    xor_into(&mut state, packed.item(low + t));
                }
            }
            let mut best: Option<(usize, u64, u64)> = None;
            for step in 0..steps {
                if step > 0 {
                    xor_into(&mut state, packed.item(step.trailing_zeros() as usize));
                }
                let (vec_part, syn_part) = state.split_at(vec_words);
                if syn_part.iter().all(|&w| w == 0) {
                    continue;
                }
                let w: usize = vec_part.iter().map(|x| x.count_ones() as usize).sum();
                if best.is_none_or(|(bw, _, _)| w < bw) {
                    best = Some((w, chunk, step));
                }
            }
            best
        })
        .min();

    let (weight, chunk, step) = best.expect("nontrivial quotient has a logical vector");
    let mut witness = BinaryVector::zeros(n);
    for t in 0..prefix {
        if chunk >> t & 1 == 1 {
            witness.xor_assign(&kernel[low + t]);
        }
    }
    let gray = step ^ (step >> 1);
    for (i, b) in kernel.iter().enumerate().take(low) {
        if gray >> i & 1 == 1 {
            witness.xor_assign(b);
        }
    }
    debug_assert_eq!(witness.weight(), weight);
    DistanceResult {
        distance: Distance::Exact(weight),
        search_budget_used: 1u64 << dim,
        method: SearchMethod::KernelEnumeration,
        witness: Some(witness),
    }
}

#[inline]
fn xor_into(acc: &mut [u64], x: &[u64]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a ^= b;
    }
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

fn weight_search(
    n: usize,
    code_rows: &[BinaryVector],
    detectors: &[BinaryVector],
    budget: &SearchBudget,
) -> DistanceResult {
    // Column j's syndrome pair: (reduced checks restricted to j, detectors at j).
    let vec_words = code_rows.len().div_ceil(64);
    let syn_words = detectors.len().div_ceil(64);
    let mut data = Vec::with_capacity(n * (vec_words + syn_words));
    for j in 0..n {
        let c = BinaryVector::from_bools(&code_rows.iter().map(|r| r.get(j)).collect::<Vec<_>>());
        let d = BinaryVector::from_bools(&detectors.iter().map(|r| r.get(j)).collect::<Vec<_>>());
        data.extend_from_slice(c.words());
        data.extend_from_slice(d.words());
    }
    let columns = Packed {
        vec_words,
        syn_words,
        data,
    };

    let mut used: u64 = 0;
    for weight in 1..=budget.max_weight.min(n) {
        let cost = binomial(n, weight);
        if used.saturating_add(cost) > budget.max_candidates {
            return DistanceResult {
                distance: Distance::LowerBoundOnly(weight),
                search_budget_used: used,
                method: SearchMethod::WeightSearch,
                witness: None,
            };
        }
        used += cost;
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut stack = vec![0u64; columns.stride() * weight];
            let mut chosen = vec![0usize; weight];
            chosen[0] = first;
            stack[..columns.stride()].copy_from_slice(columns.item(first));
            search_from(&columns, n, weight, 1, &mut chosen, &mut stack).then_some(chosen)
        });
        if let Some(support) = hit {
            return DistanceResult {
                distance: Distance::Exact(weight),
                search_budget_used: used,
                method: SearchMethod::WeightSearch,
                witness: Some(BinaryVector::from_indices(n, &support)),
            };
        }
    }
    if budget.max_weight >= n {
        // Unreachable for a nontrivial quotient; every vector was tried.
        return DistanceResult {
            search_budget_used: used,
            method: SearchMethod::WeightSearch,
            ..DistanceResult::infinite()
        };
    }
    DistanceResult {
        distance: Distance::LowerBoundOnly(budget.max_weight + 1),
        search_budget_used: used,
        method: SearchMethod::WeightSearch,
        witness: None,
    }
}

/// Depth-first extension of `chosen[..depth]` in lexicographic order.
/// `stack` holds the running syndrome after each depth.
fn search_from(
    columns: &Packed,
    n: usize,
    weight: usize,
    depth: usize,
    chosen: &mut [usize],
    stack: &mut [u64],
) -> bool {
    let stride = columns.stride();
    if depth == weight {
        let acc = &stack[(depth - 1) * stride..depth * stride];
        let (vec_part, syn_part) = acc.split_at(columns.vec_words);
        return vec_part.iter().all(|&w| w == 0) && syn_part.iter().any(|&w| w != 0);
    }
    let remaining = weight - depth;
    for j in chosen[depth - 1] + 1..=n - remaining {
        chosen[depth] = j;
        let (prev, next) = stack.split_at_mut(depth * stride);
        let prev = &prev[(depth - 1) * stride..];
        let next = &mut next[..stride];
        for ((o, a), b) in next.iter_mut().zip(prev).zip(columns.item(j)) {
            *o = a ^ b;
        }
        if search_from(columns, n, weight, depth + 1, chosen, stack) {
            return true;
        }
    }
    false
}
