//! Named code builders: classical check matrices, toric codes and
//! hypergraph-product codes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::css::{self, CssCode, Distance, SearchBudget};
use crate::error::{Error, Result};
use crate::gf2::{self, BinaryMatrix};
use crate::hypergraph::{Hypergraph, ProductHypergraph};

/// Retry cap for the configuration-model generator.
pub const MAX_GENERATION_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    /// `(n−1)×n` checks `x_i + x_{i+1}`.
    Repetition(usize),
    /// `r×(2^r − 1)` matrix whose columns are all nonzero `r`-bit words.
    Hamming(usize),
    /// Vertex-edge incidence of the `m`-cycle.
    CycleGraph(usize),
    /// Column weight `t`, row weight `delta`, `n` columns, no repeated
    /// incidences.
    RandomRegular {
        n: usize,
        t: usize,
        delta: usize,
        seed: u64,
    },
    Explicit(BinaryMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCodeSpec {
    pub kind: ClassicalKind,
    /// Expected `[n, k, d]`, checked after generation when present.
    pub expected: Option<(usize, usize, usize)>,
}

impl From<ClassicalKind> for ClassicalCodeSpec {
    fn from(kind: ClassicalKind) -> Self {
        Self { kind, expected: None }
    }
}

pub fn repetition(n: usize) -> Result<BinaryMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "repetition length must be at least 2, got {n}"
        )));
    }
    let supports: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
    Ok(BinaryMatrix::from_row_indices(n - 1, n, &supports))
}

pub fn hamming(r: usize) -> Result<BinaryMatrix> {
    if !(2..=16).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "Hamming redundancy must be in 2..=16, got {r}"
        )));
    }
    let n = (1 << r) - 1;
    let mut m = BinaryMatrix::zeros(r, n);
    for j in 0..n {
        for i in 0..r {
            if (j + 1) >> i & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// Incidence of the cycle `Z/mZ` with edges `{i, i+1}`. For `m = 2` the two
/// edges are parallel and both kept.
pub fn cycle_graph(m: usize) -> BinaryMatrix {
    assert!(m >= 2, "cycle graph needs at least 2 vertices");
    let mut inc = BinaryMatrix::zeros(m, m);
    for e in 0..m {
        inc.set(e, e, true);
        inc.set((e + 1) % m, e, true);
    }
    inc
}

/// Regular check matrix from the configuration model: `n·t` column sockets
/// are matched to a shuffled list of `n·t/delta · delta` row sockets, and
/// the matching is redrawn until no (row, column) pair repeats.
pub fn random_regular(n: usize, t: usize, delta: usize, seed: u64) -> Result<BinaryMatrix> {
    if n == 0 || t == 0 || delta == 0 {
        return Err(Error::InvalidParameter("n, t and delta must be positive".into()));
    }
    if !(n * t).is_multiple_of(delta) {
        return Err(Error::InvalidParameter(format!(
            "n·t = {} is not divisible by delta = {delta}",
            n * t
        )));
    }
    let rows = n * t / delta;
    if delta > n || t > rows {
        return Err(Error::InvalidParameter(format!(
            "no simple {rows}x{n} matrix has row weight {delta} and column weight {t}"
        )));
    }
    configuration_model(n, t, delta, seed, MAX_GENERATION_ATTEMPTS)
}

fn configuration_model(n: usize, t: usize, delta: usize, seed: u64, attempts: usize) -> Result<BinaryMatrix> {
    let rows = n * t / delta;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sockets: Vec<usize> = (0..rows).flat_map(|r| std::iter::repeat_n(r, delta)).collect();
    for _ in 0..attempts {
        sockets.shuffle(&mut rng);
        let mut m = BinaryMatrix::zeros(rows, n);
        let simple = sockets.iter().enumerate().all(|(slot, &row)| {
            let col = slot / t;
            if m.get(row, col) {
                false
            } else {
                m.set(row, col, true);
                true
            }
        });
        if simple {
            return Ok(m);
        }
    }
    Err(Error::GenerationFailed { seed, attempts })
}

pub fn build_classical(spec: &ClassicalCodeSpec) -> Result<BinaryMatrix> {
    let m = match &spec.kind {
        ClassicalKind::Repetition(n) => repetition(*n)?,
        ClassicalKind::Hamming(r) => hamming(*r)?,
        ClassicalKind::CycleGraph(m) => {
            if *m < 2 {
                return Err(Error::InvalidParameter(format!(
                    "cycle length must be at least 2, got {m}"
                )));
            }
            cycle_graph(*m)
        }
        ClassicalKind::RandomRegular { n, t, delta, seed } => random_regular(*n, *t, *delta, *seed)?,
        ClassicalKind::Explicit(m) => m.clone(),
    };
    if let Some((n, k, d)) = spec.expected {
        let actual_k = m.cols() - gf2::rank(&m);
        let actual_d = css::classical_min_distance(&m, &SearchBudget::default()).distance;
        if m.cols() != n || actual_k != k || actual_d != Distance::Exact(d) {
            return Err(Error::InvalidParameter(format!(
                "expected [{n},{k},{d}] but built [{},{actual_k},{actual_d}]",
                m.cols()
            )));
        }
    }
    Ok(m)
}

/// General product code: `H_X` is the vertex-edge incidence of `H1·H2`,
/// `H_Z` its chamber-edge incidence.
pub fn hgp(h1: &BinaryMatrix, h2: &BinaryMatrix) -> (ProductHypergraph, CssCode) {
    let p = ProductHypergraph::new(
        Hypergraph::from_incidence(h1.clone()),
        Hypergraph::from_incidence(h2.clone()),
    );
    let code = CssCode::new(p.vertex_edge_incidence().clone(), p.chamber_edge_incidence())
        .expect("product construction is orthogonal");
    (p, code)
}

/// Product of `H` with its transpose, for a full-rank `(n−k)×n` matrix `H`.
/// The result has length `n² + (n−k)²` and dimension `k²`.
pub fn hgp_from_single(h: &BinaryMatrix) -> Result<(ProductHypergraph, CssCode)> {
    let rank = gf2::rank(h);
    if rank != h.rows() {
        return Err(Error::RankDeficient { rank, rows: h.rows() });
    }
    let n = h.cols();
    let k = n - h.rows();
    let (p, code) = hgp(h, &h.transpose());
    assert_eq!(code.n(), n * n + (n - k) * (n - k));
    assert_eq!(code.quantum_dimension(), k * k);
    Ok((p, code))
}

pub fn toric_product(m: usize) -> Result<ProductHypergraph> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("toric code needs m >= 2, got {m}")));
    }
    Ok(hgp(&cycle_graph(m), &cycle_graph(m)).0)
}

/// Toric code on the `m×m` torus, `[[2m², 2, m]]`.
pub fn toric(m: usize) -> Result<CssCode> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("toric code needs m >= 2, got {m}")));
    }
    Ok(hgp(&cycle_graph(m), &cycle_graph(m)).1)
}
