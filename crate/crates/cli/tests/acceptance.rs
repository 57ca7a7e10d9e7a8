//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use qhgp_core::constructions::{cycle_graph, hamming, hgp, hgp_from_single, random_regular, repetition};
use qhgp_core::css::{
    self, check_distance_bounds, full_params, histogram, min_weight_coset, BoundStatus, CssCode, Distance,
    SearchBudget, SearchMethod,
};
use qhgp_core::gf2::{self, BinaryMatrix, BinaryVector};
use qhgp_core::hypergraph::ProductHypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BinaryMatrix {
    let p: f64 = rng.gen_range(0.15..0.7);
    let bits: Vec<Vec<bool>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_bool(p)).collect())
        .collect();
    BinaryMatrix::from_rows(cols, bits.iter().map(|b| BinaryVector::from_bools(b)).collect())
}

/// Random factor pairs whose product has at most `max_n` edges.
fn random_pairs(seed: u64, count: usize, max_n: usize) -> Vec<(BinaryMatrix, BinaryMatrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let (v1, e1, v2, e2) = (
            rng.gen_range(1..=5),
            rng.gen_range(1..=7),
            rng.gen_range(1..=5),
            rng.gen_range(1..=7),
        );
        if v1 * e2 + v2 * e1 > max_n {
            continue;
        }
        out.push((random_matrix(&mut rng, v1, e1), random_matrix(&mut rng, v2, e2)));
    }
    out
}

fn qhgp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qhgp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn toric_via_cli() -> Outcome {
    let tmp = TempDir::new().unwrap();
    let start = Instant::now();
    let mut seen = Vec::new();
    let mut ok = true;
    for m in 2..=6usize {
        let dir = tmp.path().join(format!("t{m}"));
        let dir = dir.to_str().unwrap();
        let m_arg = m.to_string();
        let built = qhgp(&["build", "toric", "--m", &m_arg, "--out", dir, "--deterministic"]);
        let params = qhgp(&["params", dir, "--deterministic"]);
        let head = String::from_utf8_lossy(&params.stdout)
            .lines()
            .next()
            .unwrap_or("")
            .to_string();
        let want = format!("[[{},2,{m}]] D=Exact({m})", 2 * m * m);
        ok &= built.status.success() && params.status.success() && head == want;
        seen.push(head);
    }
    let t = start.elapsed();
    ok &= t < Duration::from_secs(10);
    outcome(ok, format!("{} in {} (limit 10 s)", seen.join(", "), secs(t)))
}

fn repetition_instance() -> Outcome {
    let start = Instant::now();
    let (_, code) = hgp_from_single(&repetition(3).unwrap()).unwrap();
    let p = full_params(&code, &SearchBudget::default());
    let t = start.elapsed();
    let kx = code.n() - p.rank_x;
    let kz = code.n() - p.rank_z;
    let enumerated = p.d_x.method == SearchMethod::KernelEnumeration && p.d_z.method == SearchMethod::KernelEnumeration;
    let ok = p.triple() == "[[13,1,3]]"
        && p.d.distance == Distance::Exact(3)
        && enumerated
        && kx == 7
        && kz == 7
        && p.d_x.search_budget_used == 1 << 7
        && p.d_z.search_budget_used == 1 << 7
        && t < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "{} D={}, kernel enumeration over 2^{kx} and 2^{kz} vectors ({} + {} visited) in {} (limit 1 s)",
            p.triple(),
            p.d.distance,
            p.d_x.search_budget_used,
            p.d_z.search_budget_used,
            secs(t)
        ),
    )
}

fn hamming_instance() -> Outcome {
    let start = Instant::now();
    let (prod, code) = hgp_from_single(&hamming(3).unwrap()).unwrap();
    let p = full_params(&code, &SearchBudget::default());
    let t = start.elapsed();
    let f = css::dimension_forms(&prod);
    let k = p.k as i64;
    let ok = p.triple() == "[[58,16,3]]"
        && k == 16
        && k == 4 * 4
        && k == f.transpose_form
        && k == f.cycle_form
        && p.d.distance == Distance::Exact(3)
        && t < Duration::from_secs(60);
    outcome(
        ok,
        format!(
            "{} K(rank)={k}, k^2=16, formula forms {} / {}, D={} in {} (limit 60 s)",
            p.triple(),
            f.transpose_form,
            f.cycle_form,
            p.d.distance,
            secs(t)
        ),
    )
}

fn dimension_formula() -> Outcome {
    let pairs = random_pairs(0xD1, 200, 40);
    let mut bad = 0;
    let mut nonzero = 0;
    for (h1, h2) in &pairs {
        let (p, code) = hgp(h1, h2);
        let f = css::dimension_forms(&p);
        let k = code.quantum_dimension() as i64;
        if k != f.transpose_form || k != f.cycle_form {
            bad += 1;
        }
        if k > 0 {
            nonzero += 1;
        }
    }
    outcome(
        bad == 0 && pairs.len() >= 100,
        format!(
            "{} pairs with N <= 40 ({nonzero} with K > 0), {bad} discrepancies",
            pairs.len()
        ),
    )
}

fn mismatches(a: &BinaryMatrix, b: &BinaryMatrix) -> usize {
    if a.shape() != b.shape() {
        return a.rows() * a.cols() + b.rows() * b.cols();
    }
    (0..a.rows())
        .map(|i| (0..a.cols()).filter(|&j| a.get(i, j) != b.get(i, j)).count())
        .sum()
}

fn duality() -> Outcome {
    let pairs = random_pairs(0xD2, 80, 60);
    let mut bad = 0;
    for (h1, h2) in &pairs {
        let (p, _) = hgp(h1, h2);
        let d = p.poincare_dual();
        bad += mismatches(
            &d.matrix_from_dual(&d.product().chamber_edge_incidence()),
            p.vertex_edge_incidence(),
        );
        bad += mismatches(
            &d.matrix_from_dual(d.product().vertex_edge_incidence()),
            &p.chamber_edge_incidence(),
        );
    }
    outcome(
        bad == 0 && pairs.len() >= 50,
        format!("{} products, both directions, {bad} mismatched entries", pairs.len()),
    )
}

fn chamber_sums() -> Outcome {
    let pairs = random_pairs(0xD3, 80, 60);
    let (mut tested, mut bad) = (0, 0);
    for (h1, h2) in &pairs {
        let (p, _) = hgp(h1, h2);
        for z1 in p.left().cycle_basis() {
            for z2 in p.right().cycle_basis() {
                tested += 1;
                if !p.chamber_sum(&z1, &z2).is_zero() {
                    bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0 && pairs.len() >= 50 && tested > 0,
        format!("{} products, {tested} cycle pairs, {bad} nonzero sums", pairs.len()),
    )
}

fn bound_instances() -> Vec<(String, ProductHypergraph, CssCode)> {
    let mut out = Vec::new();
    for m in 2..=5 {
        let c = cycle_graph(m);
        let (p, code) = hgp(&c, &c);
        out.push((format!("toric {m}"), p, code));
    }
    for (name, h) in [
        ("repetition 3", repetition(3).unwrap()),
        ("hamming 3", hamming(3).unwrap()),
    ] {
        let (p, code) = hgp_from_single(&h).unwrap();
        out.push((name.to_string(), p, code));
    }
    for (n, t, delta, seed) in [(6, 2, 3, 1), (4, 2, 2, 5)] {
        let h = random_regular(n, t, delta, seed).unwrap();
        let (p, code) = hgp(&h, &h.transpose());
        out.push((format!("regular({n},{t},{delta})"), p, code));
    }
    for (i, (h1, h2)) in random_pairs(0xD4, 60, 60).into_iter().enumerate() {
        let (p, code) = hgp(&h1, &h2);
        out.push((format!("random {i}"), p, code));
    }
    out
}

fn distance_bounds() -> Outcome {
    let budget = SearchBudget::default();
    let (mut instances, mut checks, mut violations) = (0, 0, 0);
    let mut violated = Vec::new();
    for (name, p, code) in bound_instances() {
        if code.n() > 60 {
            continue;
        }
        let params = full_params(&code, &budget);
        let report = check_distance_bounds(&p, &params, &budget);
        let c = &report.classical;
        let all = [&params.d, &c.d1, &c.d2, &c.d1_t, &c.d2_t];
        if all.iter().any(|r| matches!(r.distance, Distance::LowerBoundOnly(_))) {
            continue;
        }
        instances += 1;
        for check in report.checks() {
            match check.status {
                BoundStatus::Holds => checks += 1,
                BoundStatus::Violated => {
                    violations += 1;
                    violated.push(format!("{name}: {}", check.label));
                }
                _ => {}
            }
        }
    }
    outcome(
        violations == 0 && instances > 0,
        format!("{instances} instances with all distances exact, {checks} bounds hold, {violations} violations {violated:?}"),
    )
}

/// Minimum weight over all `2^n` vectors of `ker a` outside the explicit
/// span of the rows of `b`.
fn brute_force(a: &BinaryMatrix, b: &BinaryMatrix) -> Distance {
    let n = a.cols();
    let mut span = HashSet::new();
    for mask in 0u32..1 << b.rows() {
        let mut v = BinaryVector::zeros(n);
        for i in 0..b.rows() {
            if mask >> i & 1 == 1 {
                v.xor_assign(b.row(i));
            }
        }
        span.insert(v);
    }
    (1u32..1 << n)
        .map(|mask| BinaryVector::from_bools(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .filter(|v| (0..a.rows()).all(|i| !a.row(i).dot(v)) && !span.contains(v))
        .map(|v| v.weight())
        .min()
        .map_or(Distance::Infinite, Distance::Exact)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD5);
    let (mut pairs, mut bad, mut finite) = (0, 0, 0);
    while pairs < 30 {
        let n = rng.gen_range(6..=16);
        let rx = rng.gen_range(1..=n / 2);
        let h_x = random_matrix(&mut rng, rx, n);
        let kernel = gf2::kernel_basis(&h_x);
        let rz = rng.gen_range(0..=kernel.len().min(6));
        let h_z = BinaryMatrix::from_rows(
            n,
            (0..rz)
                .map(|_| {
                    let mut v = BinaryVector::zeros(n);
                    for b in &kernel {
                        if rng.gen_bool(0.5) {
                            v.xor_assign(b);
                        }
                    }
                    v
                })
                .collect(),
        );
        pairs += 1;
        for (a, b) in [(&h_x, &h_z), (&h_z, &h_x)] {
            let expected = brute_force(a, b);
            finite += usize::from(expected.is_finite());
            for budget in [
                SearchBudget::default(),
                SearchBudget {
                    full_enum_dim: 0,
                    ..SearchBudget::default()
                },
            ] {
                if min_weight_coset(a, b, &budget).distance != expected {
                    bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!("{pairs} pairs with N <= 16, both sides, both strategies ({finite} finite), {bad} mismatches"),
    )
}

fn weight_profile() -> Outcome {
    let h = random_regular(12, 3, 4, 7).unwrap();
    let (_, code) = hgp(&h, &h.transpose());
    // Degrees: rows of H have weight 4, columns 3; the transpose swaps them.
    let (t, delta) = (3, 4);
    let (v1, e1) = h.shape();
    let expect_rows = BTreeMap::from([(t + delta, v1 * e1)]);
    let expect_cols = BTreeMap::from([(t, e1 * e1), (delta, v1 * v1)]);
    let got = [
        histogram(&code.h_x().row_weights()),
        histogram(&code.h_x().col_weights()),
        histogram(&code.h_z().row_weights()),
        histogram(&code.h_z().col_weights()),
    ];
    let literal = [
        BTreeMap::from([(7, 108)]),
        BTreeMap::from([(3, 144), (4, 81)]),
        BTreeMap::from([(7, 108)]),
        BTreeMap::from([(3, 144), (4, 81)]),
    ];
    let ok = got[0] == expect_rows
        && got[2] == expect_rows
        && got[1] == expect_cols
        && got[3] == expect_cols
        && got == literal;
    outcome(
        ok,
        format!(
            "H_X rows {:?} cols {:?}; H_Z rows {:?} cols {:?}",
            got[0], got[1], got[2], got[3]
        ),
    )
}

fn scaling_table() -> Outcome {
    let budget = SearchBudget {
        max_candidates: 200_000_000,
        ..SearchBudget::default()
    };
    let mut rows = Vec::new();
    for m in 2..=6 {
        let c = cycle_graph(m);
        rows.push((format!("toric m={m}"), hgp(&c, &c).1));
    }
    for (n, t, delta, seed) in [(6, 2, 3, 1), (8, 2, 4, 2), (8, 3, 4, 3)] {
        let h = random_regular(n, t, delta, seed).unwrap();
        rows.push((
            format!("hgp(H, H^T), H=regular({n},{t},{delta})"),
            hgp(&h, &h.transpose()).1,
        ));
    }
    println!(
        "        {:<36} {:>5} {:>4} {:>6} {:>8}",
        "instance", "N", "K", "D", "D/sqrt(N)"
    );
    let mut toric_ok = true;
    for (name, code) in &rows {
        let p = full_params(code, &budget);
        let (d, ratio) = match p.d.distance {
            Distance::Exact(w) => (w.to_string(), format!("{:.4}", w as f64 / (p.n as f64).sqrt())),
            Distance::LowerBoundOnly(w) => (format!(">={w}"), format!(">={:.4}", w as f64 / (p.n as f64).sqrt())),
            Distance::Infinite => ("inf".to_string(), "-".to_string()),
        };
        if name.starts_with("toric") {
            toric_ok &= p.d.distance.is_exact() && p.k == 2;
        }
        println!("        {name:<36} {:>5} {:>4} {d:>6} {ratio:>8}", p.n, p.k);
    }
    outcome(
        toric_ok,
        "table above; toric D/sqrt(N) = 1/sqrt(2) throughout; informational, no tolerance",
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("toric family via CLI", toric_via_cli),
        ("repetition product [[13,1,3]]", repetition_instance),
        ("Hamming product [[58,16,3]]", hamming_instance),
        ("dimension formula equivalence", dimension_formula),
        ("Poincare duality", duality),
        ("chamber sums vanish", chamber_sums),
        ("distance bounds", distance_bounds),
        ("search matches 2^N oracle", oracle_equivalence),
        ("regular weight profile", weight_profile),
        ("D/sqrt(N) scaling table", scaling_table),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "{} criterion {:>2}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
