//! Harmonic functions with values in `ℚ≥0 ∪ {∞}` and the checks built on them.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extnum::{ExtValue, Rational};
use crate::graph::{GradedGraph, GraphKind, VertexId};
use crate::ideals::{SetKind, VertexSet};
use crate::products::ProductSpec;
use crate::slow::SlowSpec;
use crate::young::{partition_of, FlangeSpec, ThomaParams};

/// The formula behind a [`HarmonicFn`].
pub enum Family {
    /// Explicit values, indexed by flat vertex position.
    Table(Vec<ExtValue>),
    Thoma(ThomaParams),
    Flange { spec: FlangeSpec, scale: Rational },
    Product(ProductSpec),
    Slow(SlowSpec),
    /// The level-`level` truncation of the extension of `inner` from `ideal`.
    Extension { ideal: VertexSet, inner: Arc<HarmonicFn>, level: usize },
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Table(v) => write!(f, "Table({} values)", v.len()),
            Family::Thoma(p) => write!(f, "Thoma({p:?})"),
            Family::Flange { spec, scale } => write!(f, "Flange({spec:?}, scale {scale})"),
            Family::Product(p) => write!(f, "Product({p:?})"),
            Family::Slow(s) => write!(f, "Slow({s:?})"),
            Family::Extension { level, .. } => write!(f, "Extension(level {level})"),
        }
    }
}

/// A function on the vertices of a truncated graph, evaluated lazily and memoized.
pub struct HarmonicFn {
    graph: Arc<GradedGraph>,
    family: Family,
    memo: Vec<OnceLock<ExtValue>>,
}

impl fmt::Debug for HarmonicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HarmonicFn").field("graph", &self.graph.name()).field("family", &self.family).finish()
    }
}

fn require_young(graph: &GradedGraph) -> Result<()> {
    match graph.kind() {
        GraphKind::Young => Ok(()),
        _ => Err(Error::InvalidParams(format!("{} is not a Young graph", graph.name()))),
    }
}

impl HarmonicFn {
    pub(crate) fn with_family(graph: Arc<GradedGraph>, family: Family) -> Self {
        let memo = (0..graph.vertex_count()).map(|_| OnceLock::new()).collect();
        HarmonicFn { graph, family, memo }
    }

    /// Values listed in level order.
    pub fn table(graph: Arc<GradedGraph>, values: Vec<ExtValue>) -> Result<Self> {
        if values.len() != graph.vertex_count() {
            return Err(Error::InvalidParams(format!(
                "table has {} values for {} vertices",
                values.len(),
                graph.vertex_count()
            )));
        }
        Ok(Self::with_family(graph, Family::Table(values)))
    }

    /// Values given by label; every vertex must appear exactly once.
    pub fn from_labels<S: AsRef<str>>(graph: Arc<GradedGraph>, rows: &[(S, ExtValue)]) -> Result<Self> {
        let mut values: Vec<Option<ExtValue>> = vec![None; graph.vertex_count()];
        for (label, value) in rows {
            let v = graph.resolve(label.as_ref())?;
            let slot = &mut values[graph.flat(v)];
            if slot.is_some() {
                return Err(Error::InvalidParams(format!("vertex {:?} listed twice", label.as_ref())));
            }
            *slot = Some(value.clone());
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnknownVertex(format!("no value for {:?}", graph.label(graph.from_flat(i))))))
            .collect::<Result<Vec<_>>>()?;
        Self::table(graph, values)
    }

    /// The unique function harmonic below the top level with the given top values.
    pub fn from_top_level(graph: Arc<GradedGraph>, top: Vec<ExtValue>) -> Result<Self> {
        let n = graph.max_level();
        if top.len() != graph.level_labels(n).len() {
            return Err(Error::InvalidParams("one value per top-level vertex is required".into()));
        }
        let mut values = vec![ExtValue::zero(); graph.vertex_count()];
        for (i, value) in top.into_iter().enumerate() {
            values[graph.flat(VertexId::new(n, i))] = value;
        }
        for level in (0..n).rev() {
            for v in graph.level(level) {
                let s: ExtValue = graph.successors(v).map(|(w, k)| values[graph.flat(w)].scale(k)).sum();
                values[graph.flat(v)] = s;
            }
        }
        Self::table(graph, values)
    }

    pub fn thoma(graph: Arc<GradedGraph>, params: ThomaParams) -> Result<Self> {
        require_young(&graph)?;
        Ok(Self::with_family(graph, Family::Thoma(params)))
    }

    pub fn flange(graph: Arc<GradedGraph>, spec: FlangeSpec, scale: Rational) -> Result<Self> {
        require_young(&graph)?;
        if !scale.is_positive() {
            return Err(Error::InvalidParams("flange scale must be positive".into()));
        }
        Ok(Self::with_family(graph, Family::Flange { spec, scale }))
    }

    pub fn graph(&self) -> &Arc<GradedGraph> {
        &self.graph
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Value at a vertex known to belong to the graph.
    pub fn value(&self, v: VertexId) -> ExtValue {
        self.memo[self.graph.flat(v)].get_or_init(|| self.compute(v)).clone()
    }

    pub fn eval(&self, v: VertexId) -> Result<ExtValue> {
        self.graph.check(v)?;
        Ok(self.value(v))
    }

    pub fn eval_label(&self, label: &str) -> Result<ExtValue> {
        self.eval(self.graph.resolve(label)?)
    }

    fn compute(&self, v: VertexId) -> ExtValue {
        match &self.family {
            Family::Table(values) => values[self.graph.flat(v)].clone(),
            Family::Thoma(params) => ExtValue::Finite(crate::young::thoma_eval(params, &partition_of(&self.graph, v))),
            Family::Flange { spec, scale } => spec.eval(&partition_of(&self.graph, v)).scale(scale),
            Family::Product(spec) => spec.eval_vertex(&self.graph, v),
            Family::Slow(spec) => spec.eval_vertex(&self.graph, v),
            Family::Extension { ideal, inner, level } => {
                extension_sum(&self.graph, ideal, inner, v, *level).expect("level checked at construction")
            }
        }
    }

    /// Value at the product vertex with factor coordinates `(a, b)`.
    ///
    /// Product and slow families are evaluated from their factors, so `a` and
    /// `b` may lie beyond the truncation of the product graph itself.
    pub fn value_at_pair(&self, a: VertexId, b: VertexId) -> Result<ExtValue> {
        let info = self
            .graph
            .product()
            .ok_or_else(|| Error::InvalidParams(format!("{} is not a product graph", self.graph.name())))?;
        info.left.check(a)?;
        info.right.check(b)?;
        match &self.family {
            Family::Product(spec) => spec.eval_pair(&info.left, a, &info.right, b),
            Family::Slow(spec) => spec.eval_pair(&info.right, a.level, b),
            _ => {
                let v = info.vertex(a, b).ok_or(Error::BeyondTruncation {
                    requested: a.level + b.level,
                    max: self.graph.max_level(),
                })?;
                Ok(self.value(v))
            }
        }
    }

    /// `Σ_{|λ|=n} dim(λ)·φ(λ)`.
    pub fn level_mass(&self, n: usize) -> Result<ExtValue> {
        let root = self
            .graph
            .root()
            .ok_or_else(|| Error::InvalidGraph("mass needs a single root".into()))?;
        let dims = self.graph.dim_table(root)?;
        Ok(self.graph.level(n).map(|v| self.value(v).scale(dims.get(v))).sum())
    }

    /// Values on all vertices up to `level`, in level order.
    pub fn values_up_to(&self, level: usize) -> Vec<(VertexId, ExtValue)> {
        self.graph.vertices().take_while(|v| v.level <= level).map(|v| (v, self.value(v))).collect()
    }

    /// A table copy of this function on the same graph.
    pub fn to_table(&self) -> HarmonicFn {
        let values = self.graph.vertices().map(|v| self.value(v)).collect();
        HarmonicFn::table(self.graph.clone(), values).expect("sizes match")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualStatus {
    Exact,
    InfiniteConsistent,
    Violated,
}

impl fmt::Display for ResidualStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualStatus::Exact => "exact",
            ResidualStatus::InfiniteConsistent => "infinite-consistent",
            ResidualStatus::Violated => "violated",
        })
    }
}

/// Both sides of the harmonicity equation at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub vertex: VertexId,
    pub lhs: ExtValue,
    pub rhs: ExtValue,
    pub status: ResidualStatus,
}

/// Compares `φ(λ)` with `Σ κ(λ,μ) φ(μ)` on every vertex up to `up_to_level`.
pub fn harmonicity_residuals(f: &HarmonicFn, up_to_level: usize) -> Result<Vec<Residual>> {
    let g = f.graph();
    if up_to_level >= g.max_level() {
        return Err(Error::BeyondTruncation { requested: up_to_level + 1, max: g.max_level() });
    }
    let mut out = Vec::new();
    for v in g.vertices().take_while(|v| v.level <= up_to_level) {
        let lhs = f.value(v);
        let rhs: ExtValue = g.successors(v).map(|(w, k)| f.value(w).scale(k)).sum();
        let status = match (&lhs, &rhs) {
            (ExtValue::Infinite, ExtValue::Infinite) => ResidualStatus::InfiniteConsistent,
            (ExtValue::Finite(a), ExtValue::Finite(b)) if a == b => ResidualStatus::Exact,
            _ => ResidualStatus::Violated,
        };
        out.push(Residual { vertex: v, lhs, rhs, status });
    }
    Ok(out)
}

fn level_set(f: &HarmonicFn, up_to_level: usize, kind: SetKind, pred: impl Fn(&ExtValue) -> bool) -> Result<VertexSet> {
    let horizon = up_to_level.min(f.graph().max_level());
    VertexSet::from_predicate(f.graph().clone(), kind, horizon, |v| pred(&f.value(v)))
}

/// `{λ : φ(λ) < ∞}`.
pub fn finiteness_ideal(f: &HarmonicFn, up_to_level: usize) -> Result<VertexSet> {
    level_set(f, up_to_level, SetKind::Ideal, ExtValue::is_finite)
}

/// `{λ : φ(λ) = 0}`.
pub fn kernel(f: &HarmonicFn, up_to_level: usize) -> Result<VertexSet> {
    level_set(f, up_to_level, SetKind::Ideal, ExtValue::is_zero)
}

/// `{λ : φ(λ) > 0}`.
pub fn support(f: &HarmonicFn, up_to_level: usize) -> Result<VertexSet> {
    level_set(f, up_to_level, SetKind::Coideal, |x| !x.is_zero())
}

fn extension_sum(graph: &GradedGraph, ideal: &VertexSet, inner: &HarmonicFn, target: VertexId, level: usize) -> Result<ExtValue> {
    let dims = graph.dim_table(target)?;
    Ok(graph
        .level(level)
        .filter(|&mu| ideal.contains(mu))
        .map(|mu| {
            let d = dims.get(mu);
            if d.is_zero() {
                ExtValue::zero()
            } else {
                inner.value(mu).scale(d)
            }
        })
        .sum())
}

fn check_ideal_inputs(graph: &GradedGraph, ideal: &VertexSet, inner: &HarmonicFn, level: usize) -> Result<()> {
    if ideal.kind() != SetKind::Ideal {
        return Err(Error::VertexSet("extension needs an ideal".into()));
    }
    if !Arc::ptr_eq(ideal.graph(), inner.graph()) || !std::ptr::eq(ideal.graph().as_ref(), graph) {
        return Err(Error::InvalidParams("ideal and inner function live on different graphs".into()));
    }
    if level > ideal.horizon() {
        return Err(Error::BeyondTruncation { requested: level, max: ideal.horizon() });
    }
    Ok(())
}

/// `Σ_{μ∈I, |μ|=N} dim(target, μ)·inner(μ)`, the `N`-th term of the extension sequence.
pub fn extend_from_ideal(ideal: &VertexSet, inner: &HarmonicFn, target: VertexId, level: usize) -> Result<ExtValue> {
    let graph = ideal.graph();
    check_ideal_inputs(graph, ideal, inner, level)?;
    graph.check(target)?;
    extension_sum(graph, ideal, inner, target, level)
}

/// The extension truncated at `level`, as a function on the whole graph.
pub fn extension_fn(ideal: VertexSet, inner: Arc<HarmonicFn>, level: usize) -> Result<HarmonicFn> {
    let graph = ideal.graph().clone();
    check_ideal_inputs(&graph, &ideal, &inner, level)?;
    Ok(HarmonicFn::with_family(graph, Family::Extension { ideal, inner, level }))
}

/// One row of a dimension-inequality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoyerRow {
    pub eta: VertexId,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl BoyerRow {
    /// `lhs − rhs`, possibly negative.
    pub fn slack(&self) -> Rational {
        &self.lhs - &self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoyerReport {
    pub rows: Vec<BoyerRow>,
    pub min_slack: Option<Rational>,
    pub violations: usize,
    /// Set when the inequality holds everywhere: semifiniteness at `λ′` would then carry over to `λ`.
    /// Recorded only; this crate does not verify the transfer.
    pub semifinite_transfer_unverified: bool,
}

impl BoyerReport {
    pub fn all_equal(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.lhs == r.rhs)
    }
}

/// Checks `Σ_{μ∉I} dim(λ,μ)κ(μ,η) ≥ β·dim(λ′,η)` for every `η ∈ I` on the given levels.
pub fn boyer_check(
    ideal: &VertexSet,
    lambda: VertexId,
    lambda_prime: VertexId,
    beta: &Rational,
    levels: RangeInclusive<usize>,
) -> Result<BoyerReport> {
    if ideal.kind() != SetKind::Ideal {
        return Err(Error::VertexSet("the dimension inequality needs an ideal".into()));
    }
    if !beta.is_positive() {
        return Err(Error::InvalidParams("beta must be positive".into()));
    }
    let g = ideal.graph();
    g.check(lambda)?;
    g.check(lambda_prime)?;
    if ideal.contains(lambda) {
        return Err(Error::InvalidParams(format!("{:?} lies in the ideal", g.label(lambda))));
    }
    if !ideal.contains(lambda_prime) {
        return Err(Error::InvalidParams(format!("{:?} lies outside the ideal", g.label(lambda_prime))));
    }
    let from = g.dim_table(lambda)?;
    let from_prime = g.dim_table(lambda_prime)?;
    let mut rows = Vec::new();
    for level in levels.filter(|&l| l <= ideal.horizon()) {
        for eta in g.level(level).filter(|&eta| ideal.contains(eta)) {
            let lhs: Rational = g
                .predecessors(eta)
                .filter(|(mu, _)| !ideal.contains(*mu))
                .map(|(mu, k)| from.get(mu) * k)
                .sum();
            let rhs = from_prime.get(eta) * beta;
            rows.push(BoyerRow { eta, lhs, rhs });
        }
    }
    let min_slack = rows.iter().map(BoyerRow::slack).min();
    let violations = rows.iter().filter(|r| r.lhs < r.rhs).count();
    Ok(BoyerReport { rows, min_slack, violations, semifinite_transfer_unverified: violations == 0 })
}

/// `Σ dim(λ,μ)·φ(μ)` over `μ ≥ λ` on level `N` with `0 < φ(μ) < ∞`, for each `N`.
pub fn semifinite_proxy_sequence(f: &HarmonicFn, lambda: VertexId, levels: RangeInclusive<usize>) -> Result<Vec<Rational>> {
    let g = f.graph();
    let dims = g.dim_table(lambda)?;
    let mut out = Vec::new();
    for level in levels {
        if level > g.max_level() {
            return Err(Error::BeyondTruncation { requested: level, max: g.max_level() });
        }
        let s: Rational = g
            .level(level)
            .filter(|&mu| !dims.get(mu).is_zero())
            .filter_map(|mu| match f.value(mu) {
                ExtValue::Finite(x) if x.is_positive() => Some(x * dims.get(mu)),
                _ => None,
            })
            .sum();
        out.push(s);
    }
    Ok(out)
}

/// Signed rational rendered in the wire format with an optional leading minus.
pub fn signed_to_string(r: &Rational) -> String {
    if r.is_negative() {
        format!("-{}", -r)
    } else {
        r.to_string()
    }
}

pub(crate) fn power(base: &Rational, exp: usize) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    base.pow(i32::try_from(exp).expect("exponent fits"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extnum::{int, rat};
    use crate::graph::pascal_graph;
    use crate::ideals::principal_ideal;
    use crate::young::young_graph;

    fn young(n: usize) -> Arc<GradedGraph> {
        Arc::new(young_graph(n))
    }

    fn thoma(g: &Arc<GradedGraph>, a: &[Rational], b: &[Rational]) -> HarmonicFn {
        HarmonicFn::thoma(g.clone(), ThomaParams::new(a.to_vec(), b.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn thoma_evaluation() {
        let y = young(6);
        let f = thoma(&y, &[int(1)], &[]);
        assert_eq!(f.eval_label("2").unwrap(), ExtValue::one());
        assert_eq!(f.eval_label("1,1").unwrap(), ExtValue::zero());
        assert_eq!(f.eval_label("").unwrap(), ExtValue::one());
        assert!(f.eval_label("7").is_err());
        assert!(HarmonicFn::thoma(Arc::new(pascal_graph(3)), ThomaParams::new(vec![], vec![]).unwrap()).is_err());
    }

    #[test]
    fn thoma_residuals_are_exact() {
        let y = young(6);
        let f = thoma(&y, &[rat(1, 2), rat(1, 2)], &[]);
        let report = harmonicity_residuals(&f, 5).unwrap();
        assert_eq!(report.len(), y.vertex_count() - y.level_sizes()[6]);
        assert!(report.iter().all(|r| r.status == ResidualStatus::Exact));
        assert!(harmonicity_residuals(&f, 6).is_err());
    }

    fn violated(f: &HarmonicFn, level: usize) -> Vec<VertexId> {
        harmonicity_residuals(f, level)
            .unwrap()
            .into_iter()
            .filter(|r| r.status == ResidualStatus::Violated)
            .map(|r| r.vertex)
            .collect()
    }

    fn perturbed(f: &HarmonicFn, target: VertexId) -> HarmonicFn {
        let g = f.graph();
        let mut values: Vec<ExtValue> = g.vertices().map(|v| f.value(v)).collect();
        values[g.flat(target)] = &values[g.flat(target)] + &ExtValue::Finite(rat(1, 100));
        HarmonicFn::table(g.clone(), values).unwrap()
    }

    #[test]
    fn perturbation_flags_one_vertex() {
        let y = young(5);
        let f = thoma(&y, &[rat(1, 3)], &[rat(1, 4)]);
        let root = y.root().unwrap();
        assert_eq!(violated(&perturbed(&f, root), 4), vec![root]);

        // an interior change also breaks the equations of its predecessors
        let target = y.vertex("2,1").unwrap();
        let mut expected: Vec<VertexId> = y.predecessors(target).map(|(v, _)| v).collect();
        expected.push(target);
        expected.sort();
        assert_eq!(violated(&perturbed(&f, target), 4), expected);
    }

    #[test]
    fn infinite_lhs_needs_infinite_term() {
        let y = young(3);
        let mut values = vec![ExtValue::zero(); y.vertex_count()];
        values[0] = ExtValue::Infinite;
        let t = HarmonicFn::table(y, values).unwrap();
        let r = &harmonicity_residuals(&t, 0).unwrap()[0];
        assert_eq!(r.status, ResidualStatus::Violated);
    }

    #[test]
    fn kernel_and_support() {
        let y = young(6);
        let f = thoma(&y, &[int(1)], &[]);
        let supp = support(&f, 6).unwrap();
        assert_eq!(supp.level_counts(), vec![1; 7]);
        assert!(supp.is_saturated(6).unwrap() && supp.is_primitive_coideal(6).unwrap());
        let fin = finiteness_ideal(&f, 6).unwrap();
        assert_eq!(fin.len(), y.vertex_count());
        let positive = thoma(&y, &[rat(1, 3)], &[rat(1, 3)]);
        assert!(kernel(&positive, 6).unwrap().is_empty());
        assert_eq!(kernel(&f, 6).unwrap().len(), y.vertex_count() - 7);
    }

    #[test]
    fn normalization_of_thoma() {
        let y = young(6);
        let f = thoma(&y, &[rat(1, 2)], &[rat(1, 3)]);
        for n in 0..=6 {
            assert_eq!(f.level_mass(n).unwrap(), ExtValue::one());
        }
    }

    #[test]
    fn extension_inside_ideal_is_constant() {
        let y = young(7);
        let f = Arc::new(thoma(&y, &[rat(1, 2)], &[rat(1, 4)]));
        let ideal = principal_ideal(y.clone(), y.vertex("1,1").unwrap()).unwrap();
        let target = y.vertex("2,1").unwrap();
        for n in 3..=7 {
            assert_eq!(extend_from_ideal(&ideal, &f, target, n).unwrap(), f.value(target));
        }
        assert!(extend_from_ideal(&ideal, &f, target, 8).is_err());
        let zero = HarmonicFn::table(y.clone(), vec![ExtValue::zero(); y.vertex_count()]).unwrap();
        assert!(extend_from_ideal(&ideal, &zero, y.root().unwrap(), 5).unwrap().is_zero());
        let ext = extension_fn(ideal, f.clone(), 7).unwrap();
        assert_eq!(ext.value(target), f.value(target));
    }

    #[test]
    fn proxy_sequences() {
        let y = young(6);
        let f = thoma(&y, &[rat(1, 2), rat(1, 2)], &[]);
        let v = y.vertex("2,1").unwrap();
        let seq = semifinite_proxy_sequence(&f, v, 3..=6).unwrap();
        assert!(seq.iter().all(|x| ExtValue::Finite(x.clone()) == f.value(v)));
        let zero = HarmonicFn::table(y.clone(), vec![ExtValue::zero(); y.vertex_count()]).unwrap();
        assert!(semifinite_proxy_sequence(&zero, v, 3..=6).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn boyer_preconditions() {
        let y = young(5);
        let ideal = principal_ideal(y.clone(), y.vertex("1").unwrap()).unwrap();
        let root = y.root().unwrap();
        let one = y.vertex("1").unwrap();
        assert!(boyer_check(&ideal, root, one, &int(0), 0..=5).is_err());
        assert!(boyer_check(&ideal, one, one, &int(1), 0..=5).is_err());
        assert!(boyer_check(&ideal, root, root, &int(1), 0..=5).is_err());
        let r = boyer_check(&ideal, root, one, &int(1), 0..=5).unwrap();
        // only ∅ lies outside, so the left side is κ(∅,(1)) at η=(1) and zero above
        assert_eq!(r.rows[0].lhs, int(1));
        assert!(r.violations > 0);
        assert!(!r.semifinite_transfer_unverified);
    }

    #[test]
    fn top_level_tables_are_harmonic() {
        let p = Arc::new(pascal_graph(5));
        let top = (0..6).map(|i| ExtValue::Finite(int(i))).collect();
        let f = HarmonicFn::from_top_level(p, top).unwrap();
        assert!(harmonicity_residuals(&f, 4).unwrap().iter().all(|r| r.status == ResidualStatus::Exact));
    }

    #[test]
    fn labelled_tables() {
        let y = young(1);
        let f = HarmonicFn::from_labels(y.clone(), &[("", ExtValue::one()), ("1", ExtValue::one())]).unwrap();
        assert_eq!(f.eval_label("1").unwrap(), ExtValue::one());
        assert!(HarmonicFn::from_labels(y.clone(), &[("", ExtValue::one())]).is_err());
        assert!(HarmonicFn::from_labels(y, &[("", ExtValue::one()), ("", ExtValue::one())]).is_err());
    }

    #[test]
    fn signed_rendering() {
        assert_eq!(signed_to_string(&rat(-1, 2)), "-1/2");
        assert_eq!(signed_to_string(&int(3)), "3");
    }
}
