//! Verification batteries shared by the `suite` subcommand and the acceptance tests.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extnum::{binomial_q, rat, ExtValue, Rational};
use crate::graph::{nat_graph, pascal_graph, GradedGraph, VertexId};
use crate::harmonic::{boyer_check, extend_from_ideal, harmonicity_residuals, power, HarmonicFn, ResidualStatus};
use crate::ideals::{SetKind, VertexSet};
use crate::products::{direct_product, make_product_fn, product_dim_identity_check, recover_factor, recover_factor_partial_sums, recover_weights, ProductSpec, Side};
use crate::slow::{classify_slow_spec, make_slow_fn, slow_graph, Classified, SlowSpec};
use crate::young::{partition_of, young_graph, young_graph_where, FlangeSpec, Partition, ThomaParams};

/// Which battery to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Dims,
    Recovery,
    Boyer,
    Slow,
    All,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Dims => "dims",
            SuiteName::Recovery => "recovery",
            SuiteName::Boyer => "boyer",
            SuiteName::Slow => "slow",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dims" => SuiteName::Dims,
            "recovery" => SuiteName::Recovery,
            "boyer" => SuiteName::Boyer,
            "slow" => SuiteName::Slow,
            "all" => SuiteName::All,
            other => return Err(Error::InvalidParams(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub suite: &'static str,
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub horizon: usize,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tproperty\tstatus\tdetail\n");
        for r in &self.rows {
            let status = if r.passed { "pass" } else { "fail" };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.suite, r.property, status, r.detail));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

struct Rows {
    suite: &'static str,
    rows: Vec<SuiteRow>,
}

impl Rows {
    fn new(suite: &'static str) -> Self {
        Rows { suite, rows: Vec::new() }
    }

    fn push(&mut self, property: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.rows.push(SuiteRow { suite: self.suite, property: property.into(), passed, detail: detail.into() });
    }
}

/// Runs one battery, or all of them in a fixed order.
pub fn run_suite(name: SuiteName, seed: u64, horizon: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let names = match name {
        SuiteName::All => vec![SuiteName::Dims, SuiteName::Recovery, SuiteName::Boyer, SuiteName::Slow],
        one => vec![one],
    };
    for n in names {
        rows.extend(match n {
            SuiteName::Dims => dims_suite(&mut rng, horizon)?,
            SuiteName::Recovery => recovery_suite(horizon)?,
            SuiteName::Boyer => boyer_suite(horizon)?,
            SuiteName::Slow => slow_suite(horizon)?,
            SuiteName::All => unreachable!(),
        });
    }
    Ok(SuiteReport { seed, horizon, rows })
}

/// Draws `count` pairs `(μ, ν)` with `|μ| ≤ |ν|`, most of them comparable.
pub fn random_pairs(graph: &GradedGraph, count: usize, rng: &mut impl Rng) -> Vec<(VertexId, VertexId)> {
    let all: Vec<VertexId> = graph.vertices().collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let nu = *all.choose(rng).expect("graph has vertices");
        let mu = if rng.gen_bool(0.75) {
            let mut mu = nu;
            for _ in 0..rng.gen_range(0..=nu.level) {
                let preds: Vec<VertexId> = graph.predecessors(mu).map(|(p, _)| p).collect();
                match preds.choose(rng) {
                    Some(&p) => mu = p,
                    None => break,
                }
            }
            mu
        } else {
            let lower: Vec<VertexId> = all.iter().copied().filter(|v| v.level <= nu.level).collect();
            *lower.choose(rng).expect("nu itself qualifies")
        };
        out.push((mu, nu));
    }
    out
}

/// Compares the dimension table with path enumeration; returns the mismatching pairs.
pub fn dim_mismatches(graph: &GradedGraph, pairs: &[(VertexId, VertexId)]) -> Result<Vec<(VertexId, VertexId)>> {
    let mut bad = Vec::new();
    for &(mu, nu) in pairs {
        let brute: Rational = graph.enumerate_paths(mu, nu, 1_000_000)?.into_iter().map(|p| p.weight).sum();
        if graph.shifted_dim(mu, nu)? != brute {
            bad.push((mu, nu));
        }
    }
    Ok(bad)
}

/// All pairs `(μ, ν)` of vertices of a graph.
pub fn all_pairs(graph: &GradedGraph) -> Vec<(VertexId, VertexId)> {
    let all: Vec<VertexId> = graph.vertices().collect();
    all.iter().flat_map(|&a| all.iter().map(move |&b| (a, b))).collect()
}

fn describe(graph: &GradedGraph, bad: &[(VertexId, VertexId)], checked: usize) -> String {
    match bad.first() {
        None => format!("{checked} checked"),
        Some(&(a, b)) => format!("{} of {checked} differ, first ({},{})", bad.len(), graph.label(a), graph.label(b)),
    }
}

fn dims_suite(rng: &mut ChaCha8Rng, horizon: usize) -> Result<Vec<SuiteRow>> {
    let mut rows = Rows::new("dims");
    let y = Arc::new(young_graph(horizon));
    let p = pascal_graph(8);
    let yy = direct_product(y.clone(), y.clone(), 5.min(horizon))?;
    for (name, g) in [(format!("young<={horizon}"), y.as_ref()), ("pascal<=8".into(), &p), (format!("young*young<={}", 5.min(horizon)), &yy)] {
        let pairs = random_pairs(g, 300, rng);
        let bad = dim_mismatches(g, &pairs)?;
        rows.push(format!("paths-vs-table {name}"), bad.is_empty(), describe(g, &bad, pairs.len()));
    }

    let p12 = pascal_graph(12);
    let mut checked = 0;
    let mut bad = Vec::new();
    for v in p12.vertices() {
        let (i, j) = pascal_coords(&p12, v);
        checked += 1;
        if p12.dim(v)? != binomial_q((i + j) as u64, i as u64) {
            bad.push((p12.root().expect("root"), v));
        }
    }
    rows.push("pascal-binomial i+j<=12", bad.is_empty(), describe(&p12, &bad, checked));

    let y8 = young_graph(8);
    let mut bad = Vec::new();
    for v in y8.vertices() {
        if y8.dim(v)? != Rational::from_integer(partition_of(&y8, v).hook_dimension().into()) {
            bad.push((y8.root().expect("root"), v));
        }
    }
    rows.push("hook-length |l|<=8", bad.is_empty(), describe(&y8, &bad, y8.vertex_count()));

    let ny = direct_product(Arc::new(nat_graph(6)), Arc::new(young_graph(6)), 6)?;
    for (name, g) in [("young*young<=5", &yy), ("nat*young<=6", &ny)] {
        let report = product_dim_identity_check(g, all_pairs(g))?;
        rows.push(format!("product-dim {name}"), report.mismatches.is_empty(), describe(g, &report.mismatches, report.checked));
    }
    Ok(rows.rows)
}

/// Coordinates `(i, j)` of a Pascal vertex labelled `"i,j"`.
pub fn pascal_coords(graph: &GradedGraph, v: VertexId) -> (usize, usize) {
    let (i, j) = graph.label(v).split_once(',').expect("pascal labels are pairs");
    (i.parse().expect("integer"), j.parse().expect("integer"))
}

/// Ten Thoma parameter points covering pure `α`, pure `β`, mixed and `γ > 0`.
pub fn thoma_panel() -> Vec<ThomaParams> {
    let points: [(&[(i64, i64)], &[(i64, i64)]); 10] = [
        (&[(1, 1)], &[]),
        (&[], &[(1, 1)]),
        (&[(1, 2), (1, 2)], &[]),
        (&[(1, 2)], &[(1, 2)]),
        (&[(1, 2), (1, 3)], &[(1, 6)]),
        (&[(1, 3)], &[(1, 4), (1, 4)]),
        (&[], &[]),
        (&[(1, 4)], &[]),
        (&[(2, 5), (1, 5)], &[(1, 10)]),
        (&[(1, 6), (1, 6), (1, 6)], &[(1, 7), (1, 7)]),
    ];
    points
        .iter()
        .map(|(a, b)| {
            let list = |xs: &[(i64, i64)]| xs.iter().map(|&(p, q)| rat(p, q)).collect();
            ThomaParams::new(list(a), list(b)).expect("panel points are valid")
        })
        .collect()
}

/// Weighted product of two Thoma functions on `Γ₁ × Γ₂` truncated at `max_level`.
pub fn weighted_thoma_product(
    g1: Arc<GradedGraph>,
    g2: Arc<GradedGraph>,
    max_level: usize,
    w1: Rational,
    p1: ThomaParams,
    p2: ThomaParams,
) -> Result<HarmonicFn> {
    let f1 = factor_fn(&g1, p1)?;
    let f2 = factor_fn(&g2, p2)?;
    let product = Arc::new(direct_product(g1, g2, max_level)?);
    make_product_fn(ProductSpec::weighted(w1, f1, f2)?, product)
}

/// Thoma function on a Young graph, or the constant normalized function on `ℕ`.
fn factor_fn(graph: &Arc<GradedGraph>, params: ThomaParams) -> Result<Arc<HarmonicFn>> {
    if graph.level_sizes().iter().all(|&s| s == 1) && !matches!(graph.kind(), crate::graph::GraphKind::Young) {
        let ones = vec![ExtValue::one(); graph.vertex_count()];
        return Ok(Arc::new(HarmonicFn::table(graph.clone(), ones)?));
    }
    Ok(Arc::new(HarmonicFn::thoma(graph.clone(), params)?))
}

fn recovery_suite(horizon: usize) -> Result<Vec<SuiteRow>> {
    let mut rows = Rows::new("recovery");
    let y = Arc::new(young_graph(horizon));
    for w1 in [rat(1, 3), rat(1, 2), rat(2, 5)] {
        let p1 = ThomaParams::new(vec![rat(1, 2)], vec![rat(1, 2)])?;
        let p2 = ThomaParams::new(vec![rat(1, 1)], vec![])?;
        let f = weighted_thoma_product(y.clone(), y.clone(), horizon, w1.clone(), p1, p2)?;
        let w2 = Rational::one() - &w1;
        let mut bad = Vec::new();
        let mut checked = 0;
        for k1 in 0..=horizon {
            for k2 in 0..=horizon - k1 {
                checked += 1;
                if recover_weights(&f, k1, k2)? != power(&w1, k1) * power(&w2, k2) {
                    bad.push(format!("({k1},{k2})"));
                }
            }
        }
        let detail = if bad.is_empty() { format!("{checked} checked") } else { format!("differs at {}", bad.join(" ")) };
        rows.push(format!("weights w1={w1} k1+k2<={horizon}"), bad.is_empty(), detail);
    }

    for (w1, side) in [(rat(1, 2), Side::Right), (rat(1, 3), Side::Right), (rat(2, 5), Side::Left)] {
        let (ok, detail) = tail_enclosure(&w1, side, 40)?;
        let side_name = match side {
            Side::Left => "left",
            Side::Right => "right",
        };
        rows.push(format!("tail-enclosure {side_name} w1={w1} M=40"), ok, detail);
    }

    let depth = 20;
    let sums = worked_series(depth)?;
    let bad: Vec<usize> = (0..=depth).filter(|&m| sums[m] != Rational::one() - power(&rat(1, 2), m + 1)).collect();
    rows.push(format!("worked-series M<={depth}"), bad.is_empty(), format!("{} partial sums, last {}", sums.len(), sums[depth]));
    Ok(rows.rows)
}

/// Checks `S_M ≤ φ(v) ≤ S_M + tail` for every factor vertex up to level 3,
/// with `ℕ` as the summed factor built `M + 1` deep.
pub fn tail_enclosure(w1: &Rational, side: Side, m: usize) -> Result<(bool, String)> {
    let y = Arc::new(young_graph(3));
    let n = Arc::new(nat_graph(m + 1));
    let params = ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![])?;
    let (g1, g2) = match side {
        Side::Right => (n, y.clone()),
        Side::Left => (y.clone(), n),
    };
    let f = weighted_thoma_product(g1, g2, 3, w1.clone(), params.clone(), params.clone())?;
    let truth = HarmonicFn::thoma(y.clone(), params)?;
    let mut widest = Rational::zero();
    for v in y.vertices().filter(|v| v.level > 0) {
        let rec = recover_factor(&f, side, v, m)?;
        let ExtValue::Finite(tail) = rec.tail_bound else {
            return Ok((false, format!("infinite tail bound at {}", y.label(v))));
        };
        let exact = truth.value(v).as_finite().cloned().expect("thoma values are finite");
        if rec.partial_sum > exact || exact > &rec.partial_sum + &tail {
            return Ok((false, format!("{} escapes {} + {}", y.label(v), rec.partial_sum, tail)));
        }
        widest = widest.max(tail);
    }
    Ok((true, format!("widest tail bound {widest}")))
}

/// Partial sums for `w = 1/2`, `α = (1)` on both factors of `𝕐 × 𝕐`, at vertex `(1)`.
pub fn worked_series(depth: usize) -> Result<Vec<Rational>> {
    let y = Arc::new(young_graph(depth));
    let p = ThomaParams::new(vec![rat(1, 1)], vec![])?;
    let f = weighted_thoma_product(y.clone(), y.clone(), 1, rat(1, 2), p.clone(), p)?;
    let v = y.vertex("1")?;
    recover_factor_partial_sums(&f, Side::Left, v, depth)
}

/// Ideal `I = J₁ × {(1)}` inside `J₁ × {∅, (1)}` with the two comparison vertices.
pub struct BoyerInstance {
    pub ideal: VertexSet,
    pub lambda: VertexId,
    pub lambda_prime: VertexId,
    pub beta: Rational,
}

/// `J₁ × J₂` where `J₂ = {∅, (1)}`, truncated at `max_level`.
pub fn two_row_product(j1: GradedGraph, max_level: usize) -> Result<Arc<GradedGraph>> {
    let j2 = young_graph_where(max_level, "young<=1", |p| p.size() <= 1);
    Ok(Arc::new(direct_product(Arc::new(j1), Arc::new(j2), max_level)?))
}

/// The ideal of pairs whose second coordinate is `(1)`.
pub fn pinned_ideal(graph: &Arc<GradedGraph>) -> Result<VertexSet> {
    let info = graph.product().expect("built as a product");
    VertexSet::from_predicate(graph.clone(), SetKind::Ideal, graph.max_level(), |v| info.coords(graph, v).1.level == 1)
}

/// Instance where the dimension inequality is an equality: `J₁ = 𝕐`, `λ = ((1), ∅)`, `λ′ = ((1), (1))`.
pub fn boyer_equality_instance(max_level: usize) -> Result<BoyerInstance> {
    let graph = two_row_product(young_graph(max_level), max_level)?;
    boyer_instance(graph, "1")
}

fn boyer_instance(graph: Arc<GradedGraph>, first: &str) -> Result<BoyerInstance> {
    let ideal = pinned_ideal(&graph)?;
    let lambda = graph.resolve(&format!("{first}⊗"))?;
    let lambda_prime = graph.resolve(&format!("{first}⊗1"))?;
    Ok(BoyerInstance { ideal, lambda, lambda_prime, beta: Rational::one() })
}

/// One-row diagrams `J₁ = {(n)}` times `{∅, (1)}` with the constant inner function on the ideal.
pub struct DivergenceInstance {
    pub ideal: VertexSet,
    pub inner: HarmonicFn,
    pub target: VertexId,
}

pub fn boyer_divergence_instance(max_level: usize) -> Result<DivergenceInstance> {
    let rows = young_graph_where(max_level, "rows", |p| p.len() <= 1);
    let graph = two_row_product(rows, max_level)?;
    let ideal = pinned_ideal(&graph)?;
    let values = graph.vertices().map(|v| if ideal.contains(v) { ExtValue::one() } else { ExtValue::zero() }).collect();
    let inner = HarmonicFn::table(graph.clone(), values)?;
    let target = graph.resolve("1⊗")?;
    Ok(DivergenceInstance { ideal, inner, target })
}

/// First level at which the extension sequence exceeds `bound`, with the sequence up to there.
pub fn first_exceeding(inst: &DivergenceInstance, bound: &Rational) -> Result<(Option<usize>, Vec<ExtValue>)> {
    let mut seq = Vec::new();
    for level in inst.target.level..=inst.ideal.horizon() {
        let x = extend_from_ideal(&inst.ideal, &inst.inner, inst.target, level)?;
        let over = match &x {
            ExtValue::Finite(r) => r > bound,
            ExtValue::Infinite => true,
        };
        seq.push(x);
        if over {
            return Ok((Some(level), seq));
        }
    }
    Ok((None, seq))
}

fn boyer_suite(horizon: usize) -> Result<Vec<SuiteRow>> {
    let mut rows = Rows::new("boyer");
    let inst = boyer_equality_instance(horizon + 1)?;
    let report = boyer_check(&inst.ideal, inst.lambda, inst.lambda_prime, &inst.beta, 0..=horizon)?;
    let zero = report.all_equal() && report.min_slack == Some(Rational::zero());
    rows.push(format!("equality-instance levels<={horizon}"), zero, format!("{} rows, {} violations", report.rows.len(), report.violations));

    let doubled = boyer_check(&inst.ideal, inst.lambda, inst.lambda_prime, &rat(2, 1), 0..=horizon)?;
    let reachable = doubled.rows.iter().filter(|r| r.rhs > Rational::zero()).count();
    rows.push(
        "doubled-beta violates",
        reachable > 0 && doubled.violations == reachable,
        format!("{} of {reachable} rows above the source violated", doubled.violations),
    );

    let bound = Rational::from_integer(1000.into());
    let div = boyer_divergence_instance(1010)?;
    let (level, seq) = first_exceeding(&div, &bound)?;
    let monotone = seq.windows(2).all(|w| w[0] <= w[1]);
    let detail = match level {
        Some(n) => format!("exceeds bound {bound} by level {n}"),
        None => format!("stays below {bound} through level {}", div.ideal.horizon()),
    };
    rows.push("extension-divergence", level.is_some() && monotone, detail);
    Ok(rows.rows)
}

/// A named slow spec bound to its graph, with the classification it should receive.
pub struct SlowCase {
    pub name: String,
    pub function: HarmonicFn,
    pub expected: Classified,
}

/// Panel covering every classified family on `ℕ × 𝕐`, truncated at `max_level`.
///
/// `horizon` is where the expected classification is tabulated.
pub fn slow_panel(max_level: usize, horizon: usize) -> Result<Vec<SlowCase>> {
    let y = Arc::new(young_graph(max_level));
    let graph = Arc::new(slow_graph(y.clone(), max_level)?);
    let half = ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![])?;
    let mixed = ThomaParams::new(vec![rat(1, 2)], vec![rat(1, 3)])?;
    let row = ThomaParams::new(vec![rat(1, 1)], vec![])?;
    let plancherel = ThomaParams::new(vec![], vec![])?;
    let flange = Arc::new(HarmonicFn::flange(
        y.clone(),
        FlangeSpec::new(1, 0, Partition::new(vec![1])?, ThomaParams::new(vec![rat(1, 1)], vec![])?)?,
        Rational::one(),
    )?);
    let f = |p: &ThomaParams| -> Result<Arc<HarmonicFn>> { Ok(Arc::new(HarmonicFn::thoma(y.clone(), p.clone())?)) };

    let mut specs: Vec<(String, SlowSpec)> = Vec::new();
    for (w, p, pname) in [
        (rat(1, 2), &half, "half"),
        (rat(1, 3), &mixed, "mixed"),
        (rat(1, 1), &row, "row"),
        (rat(2, 5), &plancherel, "plancherel"),
    ] {
        specs.push((format!("weighted w={w} {pname}"), SlowSpec::weighted(w, f(p)?)?));
    }
    specs.push(("weighted w=1/2 flange".into(), SlowSpec::weighted(rat(1, 2), flange.clone())?));
    specs.push(("root-only".into(), SlowSpec::root_only(y.clone())?));
    for (label, c) in [("1", rat(1, 1)), ("2,1", rat(3, 2)), ("1,1", rat(2, 1))] {
        specs.push((format!("pinned-vertex nu={label} c={c}"), SlowSpec::pinned_vertex(y.clone(), y.vertex(label)?, c)?));
    }
    for (m, p, pname) in [(1, &half, "half"), (2, &mixed, "mixed"), (3, &row, "row")] {
        specs.push((format!("pinned-level m={m} {pname}"), SlowSpec::pinned_level(m, f(p)?)?));
    }
    specs.push(("pinned-level m=1 flange".into(), SlowSpec::pinned_level(1, flange)?));

    let mut out = Vec::new();
    for (name, spec) in specs {
        let expected = expected_classification(&spec, horizon);
        out.push(SlowCase { name, function: make_slow_fn(spec, graph.clone())?, expected });
    }
    Ok(out)
}

/// The classification a slow spec should receive when tabulated up to `horizon`.
pub fn expected_classification(spec: &SlowSpec, horizon: usize) -> Classified {
    let gamma = spec.gamma();
    let upto = |max: usize, f: &HarmonicFn| -> Vec<(VertexId, ExtValue)> {
        gamma.vertices().take_while(|v| v.level <= max).map(|v| (v, f.value(v))).collect()
    };
    match spec {
        SlowSpec::Weighted { w, f } => Classified::Weighted { w: w.clone(), factor: upto(horizon, f) },
        SlowSpec::RootOnly { .. } => Classified::RootOnly,
        SlowSpec::PinnedVertex { nu, c, .. } => Classified::PinnedVertex { nu: *nu, c: c.clone() },
        SlowSpec::PinnedLevel { m, f } => Classified::PinnedLevel { m: *m, factor: upto(horizon.saturating_sub(*m), f) },
    }
}

/// Counts residual statuses up to `level`: `(exact, infinite-consistent, violated)`.
pub fn residual_counts(f: &HarmonicFn, level: usize) -> Result<(usize, usize, usize)> {
    let mut counts = (0, 0, 0);
    for r in harmonicity_residuals(f, level)? {
        match r.status {
            ResidualStatus::Exact => counts.0 += 1,
            ResidualStatus::InfiniteConsistent => counts.1 += 1,
            ResidualStatus::Violated => counts.2 += 1,
        }
    }
    Ok(counts)
}

fn slow_suite(horizon: usize) -> Result<Vec<SuiteRow>> {
    let mut rows = Rows::new("slow");
    for case in slow_panel(horizon + 1, horizon)? {
        let (exact, inf, violated) = residual_counts(&case.function, horizon)?;
        rows.push(format!("harmonic {}", case.name), violated == 0, format!("{exact} exact, {inf} infinite-consistent, {violated} violated"));
        let got = classify_slow_spec(&case.function, horizon)?;
        rows.push(format!("round-trip {}", case.name), got == case.expected, format!("classified as {}", got.name()));
    }
    Ok(rows.rows)
}
