use std::collections::HashSet;

use proptest::prelude::*;
use qhgp_core::constructions::{cycle_graph, hamming, hgp, hgp_from_single, repetition, toric};
use qhgp_core::css::{
    check_distance_bounds, classical_min_distance, full_params, min_weight_coset, BoundStatus, CssCode, Distance,
    SearchBudget, SearchMethod,
};
use qhgp_core::gf2::{self, BinaryMatrix, BinaryVector};
use qhgp_core::hypergraph::ProductEdge;

/// Minimum weight over all `2^n` vectors, checking kernel membership by
/// direct products and row-space membership against an explicit span.
fn brute_force(code: &BinaryMatrix, excluded: &BinaryMatrix) -> Option<usize> {
    let n = code.cols();
    let mut span = HashSet::new();
    for mask in 0u32..1 << excluded.rows() {
        let mut v = BinaryVector::zeros(n);
        for i in 0..excluded.rows() {
            if mask >> i & 1 == 1 {
                v.xor_assign(excluded.row(i));
            }
        }
        span.insert(v);
    }
    (1u32..1 << n)
        .map(|mask| BinaryVector::from_bools(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .filter(|v| (0..code.rows()).all(|i| !code.row(i).dot(v)) && !span.contains(v))
        .map(|v| v.weight())
        .min()
}

fn as_distance(w: Option<usize>) -> Distance {
    w.map_or(Distance::Infinite, Distance::Exact)
}

/// Random orthogonal pair: `H_Z` rows are random combinations of a basis
/// of `ker H_X`.
fn css_pair() -> impl Strategy<Value = (BinaryMatrix, BinaryMatrix)> {
    (2usize..=12, 0usize..=5, 0usize..=5, any::<u64>()).prop_map(|(n, rx, rz, seed)| {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let h_x = BinaryMatrix::from_rows(
            n,
            (0..rx)
                .map(|_| BinaryVector::from_bools(&(0..n).map(|_| next() & 1 == 1).collect::<Vec<_>>()))
                .collect(),
        );
        let kernel = gf2::kernel_basis(&h_x);
        let h_z = BinaryMatrix::from_rows(
            n,
            (0..rz)
                .map(|_| {
                    let mut v = BinaryVector::zeros(n);
                    for b in &kernel {
                        if next() & 1 == 1 {
                            v.xor_assign(b);
                        }
                    }
                    v
                })
                .collect(),
        );
        (h_x, h_z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coset_search_matches_brute_force((h_x, h_z) in css_pair()) {
        for budget in [SearchBudget::default(), SearchBudget { full_enum_dim: 0, ..SearchBudget::default() }] {
            let r = min_weight_coset(&h_x, &h_z, &budget);
            prop_assert_eq!(r.distance, as_distance(brute_force(&h_x, &h_z)));
            prop_assert!(r.verify_witness(&h_x, &h_z));
            let r = min_weight_coset(&h_z, &h_x, &budget);
            prop_assert_eq!(r.distance, as_distance(brute_force(&h_z, &h_x)));
            prop_assert!(r.verify_witness(&h_z, &h_x));
        }
    }
}

#[test]
fn toric_parameters() {
    for m in 2..=5 {
        let code = toric(m).unwrap();
        let params = full_params(&code, &SearchBudget::default());
        assert_eq!(
            (params.n, params.k, params.d.distance),
            (2 * m * m, 2, Distance::Exact(m)),
            "m = {m}"
        );
        assert!(params.d_x.verify_witness(code.h_x(), code.h_z()));
        assert!(params.d_z.verify_witness(code.h_z(), code.h_x()));
    }
}

#[test]
fn toric_logical_is_a_straight_line() {
    let p = qhgp_core::constructions::toric_product(3).unwrap();
    let code = toric(3).unwrap();
    let r = min_weight_coset(code.h_x(), code.h_z(), &SearchBudget::default());
    assert_eq!(r.distance, Distance::Exact(3));
    let labels: Vec<ProductEdge> = r.witness.unwrap().iter_ones().map(|e| p.edge_label(e)).collect();
    let same_line = labels.windows(2).all(|w| match (w[0], w[1]) {
        (ProductEdge::Left { vertex: a, .. }, ProductEdge::Left { vertex: b, .. }) => a == b,
        (ProductEdge::Right { vertex: a, .. }, ProductEdge::Right { vertex: b, .. }) => a == b,
        _ => false,
    });
    assert!(same_line, "{labels:?}");
}

#[test]
fn repetition_and_hamming_single_products() {
    let (p, code) = hgp_from_single(&repetition(3).unwrap()).unwrap();
    let params = full_params(&code, &SearchBudget::default());
    assert_eq!(params.triple(), "[[13,1,3]]");
    let bounds = check_distance_bounds(&p, &params, &SearchBudget::default());
    assert_eq!(bounds.lower.status, BoundStatus::Holds);
    assert_eq!(bounds.upper[0].status, BoundStatus::Holds);
    assert_eq!(bounds.upper[1].status, BoundStatus::NotApplicable);

    let (p, code) = hgp_from_single(&hamming(3).unwrap()).unwrap();
    let params = full_params(&code, &SearchBudget::default());
    assert_eq!(params.triple(), "[[58,16,3]]");
    assert_eq!(params.d_x.method, SearchMethod::WeightSearch);
    let bounds = check_distance_bounds(&p, &params, &SearchBudget::default());
    assert_eq!(bounds.classical.d1.distance, Distance::Exact(3));
    assert_eq!(bounds.classical.d2.distance, Distance::Infinite);
    assert_eq!(bounds.classical.d1_t.distance, Distance::Infinite);
    assert_eq!(bounds.classical.d2_t.distance, Distance::Exact(3));
    assert_eq!(bounds.lower.status, BoundStatus::Holds);
    assert_eq!(bounds.upper[0].status, BoundStatus::Holds);
    assert_eq!(bounds.upper[1].status, BoundStatus::NotApplicable);
}

#[test]
fn toric_bounds_are_tight() {
    for m in 2..=4 {
        let c = cycle_graph(m);
        let (p, code) = hgp(&c, &c);
        let params = full_params(&code, &SearchBudget::default());
        let b = check_distance_bounds(&p, &params, &SearchBudget::default());
        for d in [&b.classical.d1, &b.classical.d2, &b.classical.d1_t, &b.classical.d2_t] {
            assert_eq!(d.distance, Distance::Exact(m));
        }
        assert!(b.checks().all(|c| c.status == BoundStatus::Holds));
    }
}

#[test]
fn zero_dimension_report_carries_note() {
    let (p, code) = hgp_from_single(&BinaryMatrix::identity(3)).unwrap();
    let params = full_params(&code, &SearchBudget::default());
    let b = check_distance_bounds(&p, &params, &SearchBudget::default());
    assert_eq!(params.d.distance, Distance::Infinite);
    assert!(b.note.as_deref().unwrap().contains("D = ∞"));
    assert!(!b.has_violation());
}

#[test]
fn weight_search_lower_bound_on_budget() {
    let code = toric(6).unwrap();
    let budget = SearchBudget {
        full_enum_dim: 28,
        max_weight: 4,
        max_candidates: u64::MAX,
    };
    let r = min_weight_coset(code.h_x(), code.h_z(), &budget);
    assert_eq!(r.distance, Distance::LowerBoundOnly(5));
    assert!(r.witness.is_none());
}

#[test]
fn search_is_independent_of_thread_count() {
    let code = toric(4).unwrap();
    let (_, hamming_code) = hgp_from_single(&hamming(3).unwrap()).unwrap();
    let run = |threads: usize, c: &CssCode, budget: SearchBudget| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    min_weight_coset(c.h_x(), c.h_z(), &budget),
                    min_weight_coset(c.h_z(), c.h_x(), &budget),
                )
            })
    };
    for (c, budget) in [
        (&code, SearchBudget::default()),
        (
            &code,
            SearchBudget {
                full_enum_dim: 0,
                ..SearchBudget::default()
            },
        ),
        (&hamming_code, SearchBudget::default()),
    ] {
        let single = run(1, c, budget);
        for threads in [2, 3, 8] {
            assert_eq!(run(threads, c, budget), single);
        }
    }
}

#[test]
fn classical_distance_examples() {
    let b = SearchBudget::default();
    assert_eq!(
        classical_min_distance(&repetition(3).unwrap(), &b).distance,
        Distance::Exact(3)
    );
    assert_eq!(
        classical_min_distance(&hamming(3).unwrap(), &b).distance,
        Distance::Exact(3)
    );
    assert_eq!(
        classical_min_distance(&hamming(4).unwrap(), &b).distance,
        Distance::Exact(3)
    );
    assert_eq!(classical_min_distance(&cycle_graph(7), &b).distance, Distance::Exact(7));
}
