use std::fmt;
use std::io::Write;

use qhgp_core::constructions::{cycle_graph, hgp, hgp_from_single};
use qhgp_core::css::{
    self, check_distance_bounds, first_non_orthogonal, full_params, BoundStatus, CssCode, Distance, SearchBudget,
};
use qhgp_core::gf2;
use qhgp_core::hypergraph::ProductHypergraph;
use qhgp_core::BinaryMatrix;
use serde::{Deserialize, Serialize};

use crate::args::{BuildTarget, ExportArgs, ExportFormat, ParamsArgs, ParamsFormat, SearchArgs, VerifyArgs};
use crate::codedir::{self, read_dir, read_matrix, read_report, write_dir, write_report, write_text, CodeDir};
use crate::codespec::CodeSpec;
use crate::error::{CliError, CliResult};
use crate::report::{Construction, DistanceClaim, DistanceKind, Report, Timer, SCHEMA_VERSION};

pub type Out<'a> = &'a mut (dyn Write + Send);

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io("<output>", e)
}

fn usage(e: qhgp_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// The product hypergraph of a directory, if its factors reproduce the
/// stored matrices exactly.
fn consistent_product(code: &CodeDir) -> Option<ProductHypergraph> {
    code.product()
        .filter(|p| p.vertex_edge_incidence() == &code.h_x && p.chamber_edge_incidence() == code.h_z)
}

/// Computes the full report for a code directory.
pub fn analyze(code: &CodeDir, budget: &SearchBudget, deterministic: bool) -> CliResult<Report> {
    let mut timer = Timer::new(deterministic);
    let css = CssCode::new(code.h_x.clone(), code.h_z.clone())?;
    let product = consistent_product(code);
    let params = timer.phase("params", || full_params(&css, budget));
    let bounds = product
        .as_ref()
        .map(|p| timer.phase("bounds", || check_distance_bounds(p, &params, budget)));
    let construction = code.construction.clone().unwrap_or_else(Construction::unknown);
    Ok(Report::new(
        construction,
        &params,
        product.as_ref(),
        bounds.as_ref(),
        budget,
        timer.finish(),
    ))
}

fn require_exact(report: &Report, search: &SearchArgs) -> CliResult<()> {
    if !search.require_exact {
        return Ok(());
    }
    let p = &report.params;
    for (name, d) in [("D", &p.d), ("D_X", &p.d_x), ("D_Z", &p.d_z)] {
        if d.kind == DistanceKind::LowerBound {
            return Err(CliError::BudgetExhausted(format!("{name} {}", distance_label(d))));
        }
    }
    Ok(())
}

fn distance_label(d: &DistanceClaim) -> String {
    match d.distance() {
        Distance::Exact(w) => format!("Exact({w})"),
        Distance::LowerBoundOnly(w) => format!("≥ {w}"),
        Distance::Infinite => "∞".to_string(),
    }
}

fn method_tag<T: Serialize>(m: &T) -> String {
    serde_json::to_value(m)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// One-line summary, e.g. `[[18,2,3]] D=Exact(3)`.
pub fn headline(report: &Report) -> String {
    let p = &report.params;
    match p.d.distance() {
        Distance::Exact(w) => format!("{} D=Exact({w})", p.triple),
        Distance::LowerBoundOnly(w) => format!("{} D ≥ {w} (budget exhausted)", p.triple),
        Distance::Infinite => format!("{} D=∞ (no logical operators)", p.triple),
    }
}

struct Table(Vec<[String; 3]>);

impl Table {
    fn row(&mut self, a: impl Into<String>, b: impl Into<String>, c: impl Into<String>) {
        self.0.push([a.into(), b.into(), c.into()]);
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = |i: usize| self.0.iter().map(|r| r[i].chars().count()).max().unwrap_or(0);
        let (w0, w1) = (width(0), width(1));
        for [a, b, c] in &self.0 {
            let line = format!("  {a:<w0$}  {b:<w1$}  {c}");
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

pub fn params_table(report: &Report) -> String {
    let p = &report.params;
    let mut t = Table(Vec::new());
    t.row("N", p.n.value.to_string(), method_tag(&p.n.method));
    t.row("K", p.k.value.to_string(), method_tag(&p.k.method));
    if let Some(f) = &p.k_formula {
        t.row(
            "K (formula)",
            format!("{} = {}", f.transpose_form, f.cycle_form),
            method_tag(&f.method),
        );
    }
    t.row("rank H_X", p.rank_x.value.to_string(), method_tag(&p.rank_x.method));
    t.row("rank H_Z", p.rank_z.value.to_string(), method_tag(&p.rank_z.method));
    let search = |d: &DistanceClaim| {
        format!(
            "{} ({}, {} candidates)",
            method_tag(&d.method),
            method_tag(&d.strategy),
            d.search_budget_used
        )
    };
    for (name, d) in [("D_X", &p.d_x), ("D_Z", &p.d_z), ("D", &p.d)] {
        t.row(name, distance_label(d), search(d));
    }
    if let Some(b) = &report.bounds {
        for (name, d) in [("d1", &b.d1), ("d2", &b.d2), ("d1T", &b.d1_t), ("d2T", &b.d2_t)] {
            t.row(name, distance_label(d), search(d));
        }
        for c in &b.checks {
            t.row("bound", c.label.clone(), method_tag(&c.status));
        }
        if let Some(note) = &b.note {
            t.row("note", note.clone(), "");
        }
    }
    format!("{}\n{t}", headline(report))
}

fn load_factor(
    path: &Option<std::path::PathBuf>,
    spec: &Option<CodeSpec>,
    seed: u64,
) -> CliResult<(BinaryMatrix, String, Option<u64>)> {
    match (path, spec) {
        (Some(p), _) => Ok((read_matrix(p)?, format!("file:{}", p.display()), None)),
        (None, Some(s)) => {
            let s = s.with_default_seed(seed);
            Ok((s.build()?, s.to_string(), s.seed()))
        }
        (None, None) => Err(CliError::Usage("no input matrix given".into())),
    }
}

pub fn cmd_build(target: &BuildTarget, out: Out<'_>) -> CliResult<()> {
    let (code, common) = match target {
        BuildTarget::Toric { m, common } => {
            if *m < 2 {
                return Err(CliError::Usage(format!("toric code needs --m >= 2, got {m}")));
            }
            let c = cycle_graph(*m);
            let (_, css) = hgp(&c, &c);
            let code = CodeDir {
                h_x: css.h_x().clone(),
                h_z: css.h_z().clone(),
                factors: Some((c.clone(), c)),
                construction: Some(Construction::new("toric", format!("m={m}"), None)),
            };
            (code, common)
        }
        BuildTarget::HgpSingle { source, common } => {
            let (h, spec, seed) = load_factor(&source.input, &source.code, common.seed)?;
            let (_, css) = hgp_from_single(&h).map_err(usage)?;
            let code = CodeDir {
                h_x: css.h_x().clone(),
                h_z: css.h_z().clone(),
                factors: Some((h.clone(), h.transpose())),
                construction: Some(Construction::new("hgp-single", spec, seed)),
            };
            (code, common)
        }
        BuildTarget::Hgp { left, right, common } => {
            let (h1, s1, seed1) = load_factor(&left.left, &left.left_code, common.seed)?;
            let (h2, s2, seed2) = load_factor(&right.right, &right.right_code, common.seed)?;
            let (_, css) = hgp(&h1, &h2);
            let code = CodeDir {
                h_x: css.h_x().clone(),
                h_z: css.h_z().clone(),
                factors: Some((h1, h2)),
                construction: Some(Construction::new(
                    "hgp",
                    format!("left={s1};right={s2}"),
                    seed1.or(seed2),
                )),
            };
            (code, common)
        }
    };
    write_dir(&common.out, &code)?;
    let report = analyze(&code, &common.search.budget(), common.search.deterministic)?;
    let path = write_report(&common.out, &report)?;
    write!(out, "{}", params_table(&report)).map_err(stdout_err)?;
    writeln!(out, "wrote {}", path.display()).map_err(stdout_err)?;
    require_exact(&report, &common.search)
}

pub fn cmd_params(args: &ParamsArgs, out: Out<'_>) -> CliResult<()> {
    let code = read_dir(&args.dir)?;
    let report = analyze(&code, &args.search.budget(), args.search.deterministic)?;
    match args.format {
        ParamsFormat::Text => write!(out, "{}", params_table(&report)),
        ParamsFormat::Json => write!(out, "{}", report.to_json()),
    }
    .map_err(stdout_err)?;
    if let Some(path) = &args.out {
        write_text(path, &report.to_json())?;
    }
    require_exact(&report, &args.search)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub outcome: Outcome,
    pub name: &'static str,
    pub detail: String,
}

fn line(pass: bool, name: &'static str, detail: String) -> CheckLine {
    CheckLine {
        outcome: if pass { Outcome::Pass } else { Outcome::Fail },
        name,
        detail,
    }
}

fn skip(name: &'static str, detail: impl Into<String>) -> CheckLine {
    CheckLine {
        outcome: Outcome::Skip,
        name,
        detail: detail.into(),
    }
}

/// Structural identities of the product `H1·H2` checked against the
/// stored pair, with `k_rank` the dimension computed from the files.
fn product_checks(code: &CodeDir, p: &ProductHypergraph, k_rank: i64) -> Vec<CheckLine> {
    let (h1, h2) = (p.left(), p.right());
    let (v1, e1, v2, e2) = (h1.vertex_count(), h1.edge_count(), h2.vertex_count(), h2.edge_count());
    let forms = css::dimension_forms(p);
    let mut lines = Vec::new();

    let hx_ok = p.vertex_edge_incidence() == &code.h_x;
    let hz_ok = p.chamber_edge_incidence() == code.h_z;
    let which = match (hx_ok, hz_ok) {
        (true, true) => "H_X and H_Z match the product of h1, h2".to_string(),
        (false, true) => "H_X differs from the vertex-edge incidence of h1·h2".to_string(),
        (true, false) => "H_Z differs from the chamber-edge incidence of h1·h2".to_string(),
        (false, false) => "H_X and H_Z both differ from the product of h1, h2".to_string(),
    };
    lines.push(line(hx_ok && hz_ok, "structure", which));

    let expected = v1 * e2 + v2 * e1;
    lines.push(line(
        code.h_x.cols() == expected,
        "edge count",
        format!("N = {} vs |V1||E2| + |V2||E1| = {expected}", code.h_x.cols()),
    ));

    let (z1, z2) = (h1.cycle_basis(), h2.cycle_basis());
    let bad = z1
        .iter()
        .flat_map(|a| z2.iter().map(move |b| (a, b)))
        .filter(|(a, b)| !p.chamber_sum(a, b).is_zero())
        .count();
    lines.push(line(
        bad == 0,
        "chamber sum",
        format!("{} cycle pairs, {bad} nonzero sums", z1.len() * z2.len()),
    ));

    let dual = p.poincare_dual();
    let fwd = dual.matrix_from_dual(&dual.product().chamber_edge_incidence()) == *p.vertex_edge_incidence();
    let back = dual.matrix_from_dual(dual.product().vertex_edge_incidence()) == p.chamber_edge_incidence();
    lines.push(line(
        fwd && back,
        "duality",
        format!("chambers of dual = vertices: {fwd}; vertices of dual = chambers: {back}"),
    ));

    let (k, h, r, s) = (forms.k as usize, forms.h as usize, forms.r as usize, forms.s as usize);
    let chamber_rank = gf2::rank(&p.chamber_edge_incidence());
    lines.push(line(
        chamber_rank == e1 * e2 - k * h,
        "chamber-code dimension",
        format!("rank = {chamber_rank}, |E1||E2| - kh = {}", e1 * e2 - k * h),
    ));
    let vertex_rank = gf2::rank(p.vertex_edge_incidence());
    lines.push(line(
        vertex_rank == v1 * v2 - r * s,
        "cocycle-code dimension",
        format!("rank = {vertex_rank}, |V1||V2| - rs = {}", v1 * v2 - r * s),
    ));

    lines.push(line(
        k_rank == forms.transpose_form && k_rank == forms.cycle_form,
        "dimension formula",
        format!(
            "K = {k_rank}, 2rs + r(|E2|-|V2|) + s(|E1|-|V1|) = {}, 2kh + k(|V2|-|E2|) + h(|V1|-|E1|) = {}",
            forms.transpose_form, forms.cycle_form
        ),
    ));

    if (r == 0 && s == 0) || (k == 0 && h == 0) {
        lines.push(line(
            k_rank == 0,
            "zero-dimension corollary",
            format!("k={k} h={h} r={r} s={s} forces K = 0; K = {k_rank}"),
        ));
    } else {
        lines.push(skip("zero-dimension corollary", "hypotheses not met"));
    }
    lines
}

fn bound_lines(code: &CodeDir, p: &ProductHypergraph, budget: &SearchBudget) -> (Vec<CheckLine>, Vec<Distance>) {
    let css = CssCode::new(code.h_x.clone(), code.h_z.clone()).expect("checked orthogonal");
    let params = full_params(&css, budget);
    let report = check_distance_bounds(p, &params, budget);
    let mut lines = vec![line(
        params.d_x.verify_witness(css.h_x(), css.h_z()) && params.d_z.verify_witness(css.h_z(), css.h_x()),
        "distance witnesses",
        format!("D_X {}, D_Z {}", params.d_x.distance, params.d_z.distance),
    )];
    let names = ["lower bound", "upper bound d1", "upper bound d2"];
    for (c, name) in report.checks().zip(names) {
        let detail = format!("{}; D {}", c.label, params.d.distance);
        lines.push(match c.status {
            BoundStatus::Holds => line(true, name, detail),
            BoundStatus::Violated => line(false, name, detail),
            BoundStatus::Inconclusive => skip(name, format!("{detail}; inconclusive, budget exhausted")),
            BoundStatus::NotApplicable => skip(name, format!("{detail}; hypotheses not met")),
        });
    }
    let c = &report.classical;
    let all = vec![
        params.d_x.distance,
        params.d_z.distance,
        c.d1.distance,
        c.d2.distance,
        c.d1_t.distance,
        c.d2_t.distance,
    ];
    (lines, all)
}

/// Runs every applicable check, printing one line each.
pub fn cmd_verify(args: &VerifyArgs, out: Out<'_>, err: Out<'_>) -> CliResult<()> {
    let code = read_dir(&args.dir)?;
    let recorded = read_report(&args.dir)?;
    let lines = verify_lines(&code, recorded.as_ref(), &args.search.budget(), err)?;
    let failed = lines.0.iter().filter(|l| l.outcome == Outcome::Fail).count();
    let width = lines.0.iter().map(|l| l.name.len()).max().unwrap_or(0);
    for l in &lines.0 {
        writeln!(out, "{}  {:<width$}  {}", l.outcome, l.name, l.detail).map_err(stdout_err)?;
    }
    let count = |o| lines.0.iter().filter(|l| l.outcome == o).count();
    writeln!(
        out,
        "{} passed, {failed} failed, {} skipped",
        count(Outcome::Pass),
        count(Outcome::Skip)
    )
    .map_err(stdout_err)?;
    if failed > 0 {
        return Err(CliError::Verification { failed });
    }
    if args.search.require_exact && lines.1.iter().any(|d| matches!(d, Distance::LowerBoundOnly(_))) {
        return Err(CliError::BudgetExhausted("a distance is only bounded".into()));
    }
    Ok(())
}

/// The check lines and every distance computed along the way.
pub fn verify_lines(
    code: &CodeDir,
    recorded: Option<&Report>,
    budget: &SearchBudget,
    err: Out<'_>,
) -> CliResult<(Vec<CheckLine>, Vec<Distance>)> {
    let mut lines = Vec::new();
    let n = code.h_x.cols();
    if code.h_z.cols() != n {
        lines.push(line(
            false,
            "shape",
            format!("H_X has {n} columns, H_Z has {}", code.h_z.cols()),
        ));
        return Ok((lines, Vec::new()));
    }
    lines.push(line(
        true,
        "shape",
        format!("H_X {}x{n}, H_Z {}x{n}", code.h_x.rows(), code.h_z.rows()),
    ));

    let bad = first_non_orthogonal(&code.h_x, &code.h_z);
    let orthogonal = bad.is_none();
    lines.push(line(
        orthogonal,
        "orthogonality",
        match bad {
            None => "H_X·H_Zᵀ = 0".to_string(),
            Some((i, j)) => format!("H_X row {i} and H_Z row {j} overlap in an odd number of positions"),
        },
    ));

    let (rx, rz) = (gf2::rank(&code.h_x), gf2::rank(&code.h_z));
    let k_rank = n as i64 - rx as i64 - rz as i64;
    let rank_ok = k_rank >= 0;
    let mut detail = format!("rank H_X = {rx}, rank H_Z = {rz}, K = {k_rank}");
    let mut matches_report = true;
    if let Some(r) = recorded {
        matches_report = r.params.n.value == n as u64 && r.params.k.value as i64 == k_rank;
        detail.push_str(if matches_report {
            " (matches report.json)"
        } else {
            " (report.json disagrees)"
        });
    }
    lines.push(line(rank_ok && matches_report, "rank", detail));

    let Some(p) = code.product() else {
        writeln!(
            err,
            "warning: no product metadata ({} and {}); only shape, orthogonality and rank were checked",
            codedir::H1_FILE,
            codedir::H2_FILE
        )
        .map_err(stdout_err)?;
        return Ok((lines, Vec::new()));
    };
    lines.extend(product_checks(code, &p, k_rank));

    let structure_ok = lines
        .iter()
        .any(|l| l.name == "structure" && l.outcome == Outcome::Pass);
    let mut distances = Vec::new();
    if orthogonal && structure_ok {
        let (b, d) = bound_lines(code, &p, budget);
        lines.extend(b);
        distances = d;
    } else {
        let why = "code is not the orthogonal product of h1, h2";
        for name in ["distance witnesses", "lower bound", "upper bound d1", "upper bound d2"] {
            lines.push(skip(name, why));
        }
    }
    Ok((lines, distances))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub row_supports: Vec<Vec<usize>>,
}

impl MatrixDoc {
    pub fn of(m: &BinaryMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            row_supports: m.row_supports(),
        }
    }

    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_row_indices(self.rows, self.cols, &self.row_supports)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDoc {
    pub schema_version: u32,
    pub construction: Construction,
    pub h_x: MatrixDoc,
    pub h_z: MatrixDoc,
    pub h1: Option<MatrixDoc>,
    pub h2: Option<MatrixDoc>,
}

pub fn cmd_export(args: &ExportArgs, out: Out<'_>) -> CliResult<()> {
    let code = read_dir(&args.dir)?;
    match args.format {
        ExportFormat::Alist => {
            let dir = args
                .out
                .as_deref()
                .ok_or_else(|| CliError::Usage("--format alist needs --out <dir>".into()))?;
            let bare = CodeDir {
                construction: None,
                ..code
            };
            write_dir(dir, &bare)?;
            writeln!(out, "wrote {}", dir.display()).map_err(stdout_err)?;
        }
        ExportFormat::Json => {
            let doc = ExportDoc {
                schema_version: SCHEMA_VERSION,
                construction: code.construction.clone().unwrap_or_else(Construction::unknown),
                h_x: MatrixDoc::of(&code.h_x),
                h_z: MatrixDoc::of(&code.h_z),
                h1: code.factors.as_ref().map(|f| MatrixDoc::of(&f.0)),
                h2: code.factors.as_ref().map(|f| MatrixDoc::of(&f.1)),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("export serializes");
            text.push('\n');
            match &args.out {
                Some(path) => write_text(path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(stdout_err)?,
            }
        }
    }
    Ok(())
}
