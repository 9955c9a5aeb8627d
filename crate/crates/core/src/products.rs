//! Direct products of graded graphs and the harmonic functions living on them.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extnum::{binomial_q, ExtValue, Rational};
use crate::graph::{product_label, GradedGraph, GraphBuilder, GraphKind, ProductInfo, VertexId};
use crate::harmonic::{power, Family, HarmonicFn};
use crate::ideals::principal_coideal;

/// `Γ₁ × Γ₂` truncated at `max_level`.
///
/// Level `k` lists the pairs `(a, b)` with `|a| + |b| = k`, ordered by the level
/// of `a` and then by position. Labels are `a⊗b` with escaped components.
pub fn direct_product(g1: Arc<GradedGraph>, g2: Arc<GradedGraph>, max_level: usize) -> Result<GradedGraph> {
    for g in [&g1, &g2] {
        if g.max_level() < max_level {
            return Err(Error::BeyondTruncation { requested: max_level, max: g.max_level() });
        }
    }
    let name = format!("{}*{}", g1.name(), g2.name());
    let mut b = GraphBuilder::new(name, g1.is_branching() && g2.is_branching());
    b.ensure_levels(max_level);
    let mut coords = Vec::new();
    let mut order = Vec::new();
    let mut index = std::collections::HashMap::new();
    for k in 0..=max_level {
        for i in 0..=k {
            for a in g1.level(i) {
                for c in g2.level(k - i) {
                    let v = b.add_vertex(k, product_label(g1.label(a), g2.label(c)))?;
                    coords.push((a, c));
                    order.push(v);
                    index.insert((a, c), v);
                }
            }
        }
    }
    for (&(a, c), &v) in coords.iter().zip(&order) {
        if v.level == max_level {
            continue;
        }
        for (a2, k) in g1.successors(a) {
            b.add_edge(v, index[&(a2, c)], k.clone())?;
        }
        for (c2, k) in g2.successors(c) {
            b.add_edge(v, index[&(a, c2)], k.clone())?;
        }
    }
    let info = ProductInfo::new(g1, g2, coords);
    Ok(b.kind(GraphKind::Product(info)).build())
}

/// Outcome of comparing product dimensions with the factorized formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimIdentityReport {
    pub checked: usize,
    pub mismatches: Vec<(VertexId, VertexId)>,
}

/// `dim(μ,λ) = C(d₁+d₂, d₁)·dim₁(μ₁,λ₁)·dim₂(μ₂,λ₂)` with `dᵢ` the level gaps.
pub fn product_dim_identity_check(
    graph: &GradedGraph,
    pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> Result<DimIdentityReport> {
    let info = graph
        .product()
        .ok_or_else(|| Error::InvalidParams(format!("{} is not a product graph", graph.name())))?;
    let mut report = DimIdentityReport::default();
    for (mu, lambda) in pairs {
        let (m1, m2) = info.coords(graph, mu);
        let (l1, l2) = info.coords(graph, lambda);
        let expected = if l1.level < m1.level || l2.level < m2.level {
            Rational::zero()
        } else {
            let (d1, d2) = ((l1.level - m1.level) as u64, (l2.level - m2.level) as u64);
            binomial_q(d1 + d2, d1) * info.left.shifted_dim(m1, l1)? * info.right.shifted_dim(m2, l2)?
        };
        report.checked += 1;
        if graph.shifted_dim(mu, lambda)? != expected {
            report.mismatches.push((mu, lambda));
        }
    }
    Ok(report)
}

/// The three shapes of product functions.
pub enum ProductSpec {
    /// `(λ,μ) ↦ w₁^{|λ|} w₂^{|μ|} f₁(λ) f₂(μ)` with `w₂ = 1 − w₁`.
    Weighted { w1: Rational, f1: Arc<HarmonicFn>, f2: Arc<HarmonicFn> },
    /// `f₁(λ)` on `μ = ν₂`, `∞·f₁(λ)` below `ν₂`, zero elsewhere.
    PinnedRight { f1: Arc<HarmonicFn>, right: Arc<GradedGraph>, nu2: VertexId, below: FixedBitSet },
    /// `f₂(μ)` on `λ = ν₁`, `∞·f₂(μ)` below `ν₁`, zero elsewhere.
    PinnedLeft { left: Arc<GradedGraph>, nu1: VertexId, below: FixedBitSet, f2: Arc<HarmonicFn> },
}

impl fmt::Debug for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductSpec::Weighted { w1, f1, f2 } => write!(f, "Weighted(w1={w1}, {f1:?}, {f2:?})"),
            ProductSpec::PinnedRight { f1, right, nu2, .. } => write!(f, "PinnedRight({f1:?}, {:?})", right.label(*nu2)),
            ProductSpec::PinnedLeft { left, nu1, f2, .. } => write!(f, "PinnedLeft({:?}, {f2:?})", left.label(*nu1)),
        }
    }
}

/// Vertices strictly below `v`.
fn strictly_below(graph: &Arc<GradedGraph>, v: VertexId) -> Result<FixedBitSet> {
    let mut bits = principal_coideal(graph.clone(), v)?.bits().clone();
    bits.set(graph.flat(v), false);
    Ok(bits)
}

fn translate(from: &Arc<GradedGraph>, v: VertexId, to: &Arc<GradedGraph>) -> Result<VertexId> {
    if Arc::ptr_eq(from, to) {
        Ok(v)
    } else {
        to.vertex(from.label(v))
    }
}

impl ProductSpec {
    pub fn weighted(w1: Rational, f1: Arc<HarmonicFn>, f2: Arc<HarmonicFn>) -> Result<Self> {
        if !w1.is_positive() || w1 >= Rational::one() {
            return Err(Error::InvalidParams(format!("weight {w1} is not in (0,1)")));
        }
        Ok(ProductSpec::Weighted { w1, f1, f2 })
    }

    pub fn pinned_right(f1: Arc<HarmonicFn>, right: Arc<GradedGraph>, nu2: VertexId) -> Result<Self> {
        right.check(nu2)?;
        let below = strictly_below(&right, nu2)?;
        Ok(ProductSpec::PinnedRight { f1, right, nu2, below })
    }

    pub fn pinned_left(left: Arc<GradedGraph>, nu1: VertexId, f2: Arc<HarmonicFn>) -> Result<Self> {
        left.check(nu1)?;
        let below = strictly_below(&left, nu1)?;
        Ok(ProductSpec::PinnedLeft { left, nu1, below, f2 })
    }

    /// The factor graphs the spec evaluates on.
    pub fn factors(&self) -> (&Arc<GradedGraph>, &Arc<GradedGraph>) {
        match self {
            ProductSpec::Weighted { f1, f2, .. } => (f1.graph(), f2.graph()),
            ProductSpec::PinnedRight { f1, right, .. } => (f1.graph(), right),
            ProductSpec::PinnedLeft { left, f2, .. } => (left, f2.graph()),
        }
    }

    /// Value at `(a, b)` with `a` in `g1` and `b` in `g2`, matched to the factors by label.
    pub fn eval_pair(&self, g1: &Arc<GradedGraph>, a: VertexId, g2: &Arc<GradedGraph>, b: VertexId) -> Result<ExtValue> {
        let (h1, h2) = self.factors();
        let a = translate(g1, a, h1)?;
        let b = translate(g2, b, h2)?;
        Ok(match self {
            ProductSpec::Weighted { w1, f1, f2 } => {
                let first = f1.value(a);
                if first.is_zero() {
                    return Ok(ExtValue::zero());
                }
                let w2 = Rational::one() - w1;
                let weight = power(w1, a.level) * power(&w2, b.level);
                (&first * &f2.value(b)).scale(&weight)
            }
            ProductSpec::PinnedRight { f1, right, nu2, below } => {
                if b == *nu2 {
                    f1.value(a)
                } else if below.contains(right.flat(b)) {
                    &ExtValue::Infinite * &f1.value(a)
                } else {
                    ExtValue::zero()
                }
            }
            ProductSpec::PinnedLeft { left, nu1, below, f2 } => {
                if a == *nu1 {
                    f2.value(b)
                } else if below.contains(left.flat(a)) {
                    &ExtValue::Infinite * &f2.value(b)
                } else {
                    ExtValue::zero()
                }
            }
        })
    }

    pub(crate) fn eval_vertex(&self, graph: &GradedGraph, v: VertexId) -> ExtValue {
        let info = graph.product().expect("checked at construction");
        let (a, b) = info.coords(graph, v);
        self.eval_pair(&info.left, a, &info.right, b).expect("checked at construction")
    }
}

/// Binds a product spec to a product graph; every vertex must be known to both factors.
pub fn make_product_fn(spec: ProductSpec, graph: Arc<GradedGraph>) -> Result<HarmonicFn> {
    let info = graph
        .product()
        .ok_or_else(|| Error::InvalidParams(format!("{} is not a product graph", graph.name())))?;
    let (h1, h2) = spec.factors();
    for v in graph.vertices() {
        let (a, b) = info.coords(&graph, v);
        translate(&info.left, a, h1)?;
        translate(&info.right, b, h2)?;
    }
    Ok(HarmonicFn::with_family(graph, Family::Product(spec)))
}

/// One of the two factors of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn finite(value: ExtValue, what: impl FnOnce() -> String) -> Result<Rational> {
    match value {
        ExtValue::Finite(x) => Ok(x),
        ExtValue::Infinite => Err(Error::InfiniteValue(what())),
    }
}

fn product_info(f: &HarmonicFn) -> Result<&ProductInfo> {
    f.graph()
        .product()
        .ok_or_else(|| Error::InvalidParams(format!("{} is not a product graph", f.graph().name())))
}

/// `Σ dim₁(ν₁,λ₁) dim₂(ν₂,λ₂) φ(λ₁,λ₂)` over `|λᵢ| = |νᵢ| + kᵢ`.
pub fn pascal_projection(f: &HarmonicFn, nu1: VertexId, nu2: VertexId, k1: usize, k2: usize) -> Result<Rational> {
    let info = product_info(f)?;
    let (g1, g2) = (&info.left, &info.right);
    let (l1, l2) = (nu1.level + k1, nu2.level + k2);
    if l1 > g1.max_level() || l2 > g2.max_level() {
        return Err(Error::BeyondTruncation { requested: l1.max(l2), max: g1.max_level().min(g2.max_level()) });
    }
    let d1 = g1.dim_table(nu1)?;
    let d2 = g2.dim_table(nu2)?;
    let mut total = Rational::zero();
    for a in g1.level(l1).filter(|&a| !d1.get(a).is_zero()) {
        for b in g2.level(l2).filter(|&b| !d2.get(b).is_zero()) {
            let value = f.value_at_pair(a, b)?;
            if value.is_zero() {
                continue;
            }
            let x = finite(value, || format!("{}⊗{}", g1.label(a), g2.label(b)))?;
            total += x * d1.get(a) * d2.get(b);
        }
    }
    Ok(total)
}

fn roots(info: &ProductInfo) -> Result<(VertexId, VertexId)> {
    let r1 = info.left.root().ok_or_else(|| Error::InvalidGraph("left factor has no single root".into()))?;
    let r2 = info.right.root().ok_or_else(|| Error::InvalidGraph("right factor has no single root".into()))?;
    Ok((r1, r2))
}

/// `Σ_{|λ₁|=k₁,|λ₂|=k₂} dim₁(λ₁) dim₂(λ₂) φ(λ₁,λ₂)`; equals `w₁^{k₁} w₂^{k₂}` for weighted products.
pub fn recover_weights(f: &HarmonicFn, k1: usize, k2: usize) -> Result<Rational> {
    let (r1, r2) = roots(product_info(f)?)?;
    pascal_projection(f, r1, r2, k1, k2)
}

/// Result of summing the factor-recovery series up to a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovery {
    pub partial_sum: Rational,
    /// Upper bound on the omitted tail, valid for weighted products.
    pub tail_bound: ExtValue,
}

fn rising(n: usize, k: usize) -> Rational {
    if k == 0 {
        return if n == 0 { Rational::one() } else { Rational::zero() };
    }
    binomial_q((n + k - 1) as u64, n as u64)
}

/// Partial sums `S_0, …, S_M` of `Σ_n C(n+|v|−1, n)·Σ_{|o|=n} dim(o)·φ(v, o)`.
pub fn recover_factor_partial_sums(f: &HarmonicFn, side: Side, v: VertexId, m: usize) -> Result<Vec<Rational>> {
    let info = product_info(f)?;
    let (own, other) = match side {
        Side::Left => (&info.left, &info.right),
        Side::Right => (&info.right, &info.left),
    };
    own.check(v)?;
    if m > other.max_level() {
        return Err(Error::BeyondTruncation { requested: m, max: other.max_level() });
    }
    let root = other.root().ok_or_else(|| Error::InvalidGraph("factor has no single root".into()))?;
    let dims = other.dim_table(root)?;
    let k = v.level;
    let mut sums = Vec::with_capacity(m + 1);
    let mut acc = Rational::zero();
    for n in 0..=m {
        let c = rising(n, k);
        if !c.is_zero() {
            for o in other.level(n) {
                let value = match side {
                    Side::Left => f.value_at_pair(v, o)?,
                    Side::Right => f.value_at_pair(o, v)?,
                };
                if value.is_zero() {
                    continue;
                }
                let x = finite(value, || other.label(o).to_string())?;
                acc += x * dims.get(o) * &c;
            }
        }
        sums.push(acc.clone());
    }
    Ok(sums)
}

/// Partial sum up to `M` together with a geometric bound on the remaining tail.
///
/// With `k = |v|`, `S = φ(v, ∅)` and `w` the weight of the other factor, the
/// terms are `S·C(n+k−1,n)·wⁿ`; their ratios are at most
/// `ρ = w(M+1+k)/(M+2)` beyond `M`, so the tail is at most
/// `S·C(M+k, M+1)·w^{M+1}/(1−ρ)` when `ρ < 1`.
pub fn recover_factor(f: &HarmonicFn, side: Side, v: VertexId, m: usize) -> Result<Recovery> {
    let partial_sum = recover_factor_partial_sums(f, side, v, m)?.pop().expect("nonempty");
    let info = product_info(f)?;
    let (r1, r2) = roots(info)?;
    let k = v.level;
    let tail_bound = if k == 0 {
        ExtValue::zero()
    } else {
        let base = recover_weights(f, 0, 0)?;
        if base.is_zero() {
            return Err(Error::InvalidParams("function vanishes at the root".into()));
        }
        let (first, w) = match side {
            Side::Left => (f.value_at_pair(v, r2)?, recover_weights(f, 0, 1)? / &base),
            Side::Right => (f.value_at_pair(r1, v)?, recover_weights(f, 1, 0)? / &base),
        };
        let first = finite(first, || "recovery base point".into())?;
        let rho = &w * Rational::from_integer((m + 1 + k).into()) / Rational::from_integer((m + 2).into());
        if rho >= Rational::one() {
            ExtValue::Infinite
        } else {
            let head = first * binomial_q((m + k) as u64, (m + 1) as u64) * power(&w, m + 1);
            ExtValue::Finite(head / (Rational::one() - rho))
        }
    };
    Ok(Recovery { partial_sum, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extnum::{int, rat};
    use crate::graph::{nat_graph, pascal_graph};
    use crate::harmonic::{harmonicity_residuals, support, ResidualStatus};
    use crate::young::{young_graph, FlangeSpec, Partition, ThomaParams};

    fn young(n: usize) -> Arc<GradedGraph> {
        Arc::new(young_graph(n))
    }

    fn thoma_one(g: &Arc<GradedGraph>) -> Arc<HarmonicFn> {
        Arc::new(HarmonicFn::thoma(g.clone(), ThomaParams::new(vec![int(1)], vec![]).unwrap()).unwrap())
    }

    #[test]
    fn product_shapes() {
        let y = young(5);
        let yy = direct_product(y.clone(), y.clone(), 5).unwrap();
        assert_eq!(yy.level_sizes()[2], 5);
        assert_eq!(yy.level_labels(2), ["⊗2", "⊗1%2C1", "1⊗1", "2⊗", "1%2C1⊗"]);
        assert!(yy.validate().is_empty());
        let ny = direct_product(Arc::new(nat_graph(6)), young(6), 6).unwrap();
        assert_eq!(ny.level_sizes(), vec![1, 2, 4, 7, 12, 19, 30]);
        let a = yy.resolve("1⊗").unwrap();
        let b = yy.resolve("1⊗1").unwrap();
        assert_eq!(yy.kappa(a, b), Some(&int(1)));
        assert!(direct_product(y.clone(), y, 6).is_err());
        let nn = direct_product(Arc::new(nat_graph(4)), Arc::new(nat_graph(4)), 4).unwrap();
        let p = pascal_graph(4);
        assert_eq!(nn.level_sizes(), p.level_sizes());
    }

    #[test]
    fn label_escaping() {
        assert_eq!(product_label("a,b", "x%⊗"), "a%2Cb⊗x%25%E2%8A%97");
        let y = young(4);
        let yy = direct_product(y.clone(), y, 4).unwrap();
        assert_eq!(yy.resolve("2,1⊗1").unwrap(), yy.vertex("2%2C1⊗1").unwrap());
    }

    #[test]
    fn product_dims_factorize() {
        let y = young(5);
        let yy = direct_product(y.clone(), y.clone(), 5).unwrap();
        let root = yy.root().unwrap();
        assert_eq!(yy.shifted_dim(root, yy.resolve("1⊗1").unwrap()).unwrap(), int(2));
        let pairs: Vec<_> = yy.vertices().flat_map(|a| yy.vertices().map(move |b| (a, b))).collect();
        let report = product_dim_identity_check(&yy, pairs).unwrap();
        assert!(report.mismatches.is_empty());
        assert_eq!(report.checked, yy.vertex_count().pow(2));
    }

    #[test]
    fn weighted_values() {
        let y = young(4);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 4).unwrap());
        let f = thoma_one(&y);
        let spec = ProductSpec::weighted(rat(1, 3), f.clone(), f.clone()).unwrap();
        let phi = make_product_fn(spec, yy.clone()).unwrap();
        assert_eq!(phi.eval_label("1⊗1").unwrap(), ExtValue::Finite(rat(2, 9)));
        assert!(ProductSpec::weighted(int(1), f.clone(), f.clone()).is_err());
        assert!(ProductSpec::weighted(int(0), f.clone(), f).is_err());
    }

    #[test]
    fn pinned_values() {
        let y = young(5);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 5).unwrap());
        let spec = ProductSpec::pinned_right(thoma_one(&y), y.clone(), y.vertex("1").unwrap()).unwrap();
        let phi = make_product_fn(spec, yy.clone()).unwrap();
        assert_eq!(phi.eval_label("2⊗").unwrap(), ExtValue::Infinite);
        assert_eq!(phi.eval_label("2⊗1").unwrap(), ExtValue::one());
        assert_eq!(phi.eval_label("2⊗2").unwrap(), ExtValue::zero());
        // outside the factor's support the pinned function vanishes below ν₂ too
        assert_eq!(phi.eval_label("1,1⊗").unwrap(), ExtValue::zero());
        let report = harmonicity_residuals(&phi, 4).unwrap();
        assert!(report.iter().all(|r| r.status != ResidualStatus::Violated));
        assert!(support(&phi, 4).unwrap().is_primitive_coideal(4).unwrap());
    }

    #[test]
    fn zero_times_infinity_in_weighted_products() {
        let y = young(6);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 6).unwrap());
        let params = ThomaParams::new(vec![rat(1, 2)], vec![rat(1, 2)]).unwrap();
        let flange = FlangeSpec::new(1, 1, Partition::row(1), params).unwrap();
        let semi = Arc::new(HarmonicFn::flange(y.clone(), flange, int(1)).unwrap());
        let phi = make_product_fn(ProductSpec::weighted(rat(1, 2), semi.clone(), semi.clone()).unwrap(), yy.clone()).unwrap();
        // (2,2,2) lies outside the hook, (1) is inside but not covering
        assert_eq!(semi.eval_label("2,2,2").unwrap(), ExtValue::zero());
        assert_eq!(semi.eval_label("1").unwrap(), ExtValue::Infinite);
        assert_eq!(phi.eval_label("2,2,2⊗").unwrap(), ExtValue::zero());
        assert_eq!(phi.eval_label("⊗2,2,2").unwrap(), ExtValue::zero());
        let report = harmonicity_residuals(&phi, 5).unwrap();
        assert!(report.iter().all(|r| r.status != ResidualStatus::Violated));
    }

    #[test]
    fn weights_are_recovered() {
        let y = young(6);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 6).unwrap());
        let f1 = Arc::new(HarmonicFn::thoma(y.clone(), ThomaParams::new(vec![rat(1, 2)], vec![rat(1, 3)]).unwrap()).unwrap());
        let f2 = thoma_one(&y);
        let phi = make_product_fn(ProductSpec::weighted(rat(1, 3), f1, f2).unwrap(), yy).unwrap();
        assert_eq!(recover_weights(&phi, 1, 1).unwrap(), rat(2, 9));
        assert_eq!(recover_weights(&phi, 0, 0).unwrap(), int(1));
        assert_eq!(recover_weights(&phi, 2, 3).unwrap(), rat(1, 9) * rat(8, 27));
    }

    #[test]
    fn worked_recovery_series() {
        let y = young(12);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 3).unwrap());
        let f = thoma_one(&y);
        let phi = make_product_fn(ProductSpec::weighted(rat(1, 2), f.clone(), f).unwrap(), yy).unwrap();
        let v = y.vertex("1").unwrap();
        let sums = recover_factor_partial_sums(&phi, Side::Left, v, 12).unwrap();
        for (m, s) in sums.iter().enumerate() {
            assert_eq!(*s, int(1) - power(&rat(1, 2), m + 1));
        }
        let r = recover_factor(&phi, Side::Left, v, 12).unwrap();
        let gap = int(1) - &r.partial_sum;
        assert!(ExtValue::Finite(gap) <= r.tail_bound);
        let root = y.root().unwrap();
        assert_eq!(recover_factor(&phi, Side::Left, root, 0).unwrap().partial_sum, int(1));
    }

    #[test]
    fn projections_are_pascal_harmonic() {
        let y = young(6);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 6).unwrap());
        let top: Vec<ExtValue> = (0..yy.level_sizes()[6]).map(|i| ExtValue::Finite(rat(i as i64 % 5, 7))).collect();
        let phi = HarmonicFn::from_top_level(yy.clone(), top).unwrap();
        let p = Arc::new(pascal_graph(4));
        let nu1 = y.vertex("1").unwrap();
        let nu2 = y.vertex("").unwrap();
        let values = p
            .vertices()
            .map(|v| {
                let (i, j) = p.label(v).split_once(',').unwrap();
                let (i, j) = (i.parse().unwrap(), j.parse().unwrap());
                ExtValue::Finite(pascal_projection(&phi, nu1, nu2, i, j).unwrap())
            })
            .collect();
        let pi = HarmonicFn::table(p, values).unwrap();
        assert!(harmonicity_residuals(&pi, 3).unwrap().iter().all(|r| r.status == ResidualStatus::Exact));
    }

    #[test]
    fn supports_factorize() {
        let y = young(5);
        let yy = Arc::new(direct_product(y.clone(), y.clone(), 5).unwrap());
        let f1 = thoma_one(&y);
        let f2 = Arc::new(HarmonicFn::thoma(y.clone(), ThomaParams::new(vec![], vec![int(1)]).unwrap()).unwrap());
        let phi = make_product_fn(ProductSpec::weighted(rat(2, 5), f1.clone(), f2.clone()).unwrap(), yy.clone()).unwrap();
        let s = support(&phi, 5).unwrap();
        let info = yy.product().unwrap();
        let s1 = support(&f1, 5).unwrap();
        let s2 = support(&f2, 5).unwrap();
        for v in yy.vertices() {
            let (a, b) = info.coords(&yy, v);
            assert_eq!(s.contains(v), s1.contains(a) && s2.contains(b));
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn projections_of_random_tables_are_pascal_harmonic(top in proptest::collection::vec(0i64..9, 19)) {
            let y = young(4);
            let yy = Arc::new(direct_product(y.clone(), y.clone(), 4).unwrap());
            let cells = yy.level_sizes()[4];
            let top: Vec<ExtValue> = (0..cells).map(|i| ExtValue::Finite(int(top[i % top.len()]))).collect();
            let phi = HarmonicFn::from_top_level(yy, top).unwrap();
            for k1 in 0..3 {
                for k2 in 0..3 - k1 {
                    let here = recover_weights(&phi, k1, k2).unwrap();
                    let next = recover_weights(&phi, k1 + 1, k2).unwrap() + recover_weights(&phi, k1, k2 + 1).unwrap();
                    proptest::prop_assert_eq!(here, next);
                }
            }
        }

        #[test]
        fn weighted_products_are_harmonic(p in 1i64..9, a in 0usize..3, b in 0usize..3) {
            let y = young(5);
            let yy = Arc::new(direct_product(y.clone(), y.clone(), 5).unwrap());
            let params = [
                ThomaParams::new(vec![int(1)], vec![]).unwrap(),
                ThomaParams::new(vec![rat(1, 2)], vec![rat(1, 3)]).unwrap(),
                ThomaParams::new(vec![], vec![]).unwrap(),
            ];
            let f1 = Arc::new(HarmonicFn::thoma(y.clone(), params[a].clone()).unwrap());
            let f2 = Arc::new(HarmonicFn::thoma(y.clone(), params[b].clone()).unwrap());
            let phi = make_product_fn(ProductSpec::weighted(rat(p, 10), f1, f2).unwrap(), yy).unwrap();
            let report = harmonicity_residuals(&phi, 4).unwrap();
            proptest::prop_assert!(report.iter().all(|r| r.status == ResidualStatus::Exact));
            proptest::prop_assert_eq!(recover_weights(&phi, 0, 0).unwrap(), int(1));
        }
    }
}
