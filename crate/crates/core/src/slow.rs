//! Slow graphs `ℕ × Γ`: lifted paths and the classified families of harmonic functions.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extnum::{ExtValue, Rational};
use crate::graph::{nat_graph, GradedGraph, VertexId};
use crate::harmonic::{harmonicity_residuals, power, Family, HarmonicFn, ResidualStatus};
use crate::ideals::principal_coideal;
use crate::products::{direct_product, recover_weights};

/// `ℕ × Γ` truncated at `max_level`; vertex labels are `n⊗λ`.
pub fn slow_graph(gamma: Arc<GradedGraph>, max_level: usize) -> Result<GradedGraph> {
    direct_product(Arc::new(nat_graph(max_level)), gamma, max_level)
}

fn slow_factor(graph: &GradedGraph) -> Result<&Arc<GradedGraph>> {
    let info = graph
        .product()
        .ok_or_else(|| Error::InvalidParams(format!("{} is not a slow graph", graph.name())))?;
    if info.left.level_sizes().iter().any(|&s| s != 1) {
        return Err(Error::InvalidParams(format!("{} is not a slow graph", graph.name())));
    }
    Ok(&info.right)
}

/// Interleaves a path of `Γ` with waiting steps along `ℕ`.
///
/// The `j`-th edge of `path` is taken at time `times[j]`, after walking the
/// first coordinate up to that time. Times must be strictly increasing and
/// positive, one per edge.
pub fn lift_path(slow: &GradedGraph, path: &[VertexId], times: &[usize]) -> Result<Vec<VertexId>> {
    let gamma = slow_factor(slow)?;
    let info = slow.product().expect("checked");
    let Some(&start) = path.first() else {
        return Err(Error::InvalidParams("empty path".into()));
    };
    if !gamma.is_path(path) {
        return Err(Error::InvalidParams("input is not a path".into()));
    }
    if times.len() + 1 != path.len() {
        return Err(Error::InvalidParams(format!("{} edges but {} times", path.len() - 1, times.len())));
    }
    if times.first() == Some(&0) || times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("times must be strictly increasing and positive".into()));
    }
    let locate = |n: usize, v: VertexId| {
        info.vertex(VertexId::new(n, 0), v)
            .ok_or(Error::BeyondTruncation { requested: n + v.level, max: slow.max_level() })
    };
    let mut out = vec![locate(0, start)?];
    let mut n = 0;
    for (step, &t) in path.windows(2).zip(times) {
        while n < t {
            n += 1;
            out.push(locate(n, step[0])?);
        }
        out.push(locate(n, step[1])?);
    }
    Ok(out)
}

/// The `Γ` coordinates of a slow-graph path with repetitions dropped.
pub fn project_path(slow: &GradedGraph, path: &[VertexId]) -> Result<Vec<VertexId>> {
    let info = slow
        .product()
        .ok_or_else(|| Error::InvalidParams(format!("{} is not a slow graph", slow.name())))?;
    let mut out: Vec<VertexId> = Vec::new();
    for &v in path {
        let (_, b) = info.coords(slow, v);
        if out.last() != Some(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

/// The classified harmonic functions on `ℕ × Γ`.
pub enum SlowSpec {
    /// `(n, μ) ↦ (1−w)ⁿ w^{|μ|} f(μ)` with `w ∈ (0, 1]` and `0⁰ = 1`.
    Weighted { w: Rational, f: Arc<HarmonicFn> },
    /// The indicator of `μ = ∅`.
    RootOnly { gamma: Arc<GradedGraph> },
    /// `c` on `μ = ν`, `∞` below `ν`, zero elsewhere.
    PinnedVertex { gamma: Arc<GradedGraph>, nu: VertexId, c: Rational, below: FixedBitSet },
    /// `f(μ)` on `n = m`, `∞·f(μ)` for `n < m`, zero for `n > m`.
    PinnedLevel { m: usize, f: Arc<HarmonicFn> },
}

impl fmt::Debug for SlowSpec {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlowSpec::Weighted { w, f } => write!(fm, "Weighted(w={w}, {f:?})"),
            SlowSpec::RootOnly { gamma } => write!(fm, "RootOnly({})", gamma.name()),
            SlowSpec::PinnedVertex { gamma, nu, c, .. } => write!(fm, "PinnedVertex({:?}, c={c})", gamma.label(*nu)),
            SlowSpec::PinnedLevel { m, f } => write!(fm, "PinnedLevel(m={m}, {f:?})"),
        }
    }
}

/// `(1−w)ⁿ w^{|μ|} f(μ)`, also meaningful at `w = 0`.
pub fn weighted_value(w: &Rational, n: usize, level: usize, value: &ExtValue) -> ExtValue {
    let weight = power(&(Rational::one() - w), n) * power(w, level);
    value.scale(&weight)
}

impl SlowSpec {
    pub fn weighted(w: Rational, f: Arc<HarmonicFn>) -> Result<Self> {
        if !w.is_positive() || w > Rational::one() {
            return Err(Error::InvalidParams(format!("weight {w} is not in (0,1]")));
        }
        Ok(SlowSpec::Weighted { w, f })
    }

    pub fn root_only(gamma: Arc<GradedGraph>) -> Result<Self> {
        gamma.root().ok_or_else(|| Error::InvalidGraph("factor has no single root".into()))?;
        Ok(SlowSpec::RootOnly { gamma })
    }

    pub fn pinned_vertex(gamma: Arc<GradedGraph>, nu: VertexId, c: Rational) -> Result<Self> {
        gamma.check(nu)?;
        if nu.level == 0 {
            return Err(Error::InvalidParams("the pinned vertex must differ from the root".into()));
        }
        if !c.is_positive() {
            return Err(Error::InvalidParams("the constant must be positive".into()));
        }
        let mut below = principal_coideal(gamma.clone(), nu)?.bits().clone();
        below.set(gamma.flat(nu), false);
        Ok(SlowSpec::PinnedVertex { gamma, nu, c, below })
    }

    pub fn pinned_level(m: usize, f: Arc<HarmonicFn>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("the pinned level must be positive".into()));
        }
        Ok(SlowSpec::PinnedLevel { m, f })
    }

    pub fn gamma(&self) -> &Arc<GradedGraph> {
        match self {
            SlowSpec::Weighted { f, .. } | SlowSpec::PinnedLevel { f, .. } => f.graph(),
            SlowSpec::RootOnly { gamma } | SlowSpec::PinnedVertex { gamma, .. } => gamma,
        }
    }

    /// Value at `(n, b)` with `b` a vertex of `g`, matched to the factor by label.
    pub fn eval_pair(&self, g: &Arc<GradedGraph>, n: usize, b: VertexId) -> Result<ExtValue> {
        let gamma = self.gamma();
        let b = if Arc::ptr_eq(g, gamma) { b } else { gamma.vertex(g.label(b))? };
        Ok(match self {
            SlowSpec::Weighted { w, f } => {
                let value = f.value(b);
                if value.is_zero() {
                    return Ok(value);
                }
                weighted_value(w, n, b.level, &value)
            }
            SlowSpec::RootOnly { .. } => {
                if b.level == 0 {
                    ExtValue::one()
                } else {
                    ExtValue::zero()
                }
            }
            SlowSpec::PinnedVertex { gamma, nu, c, below } => {
                if b == *nu {
                    ExtValue::Finite(c.clone())
                } else if below.contains(gamma.flat(b)) {
                    ExtValue::Infinite
                } else {
                    ExtValue::zero()
                }
            }
            SlowSpec::PinnedLevel { m, f } => match n.cmp(m) {
                std::cmp::Ordering::Less => &ExtValue::Infinite * &f.value(b),
                std::cmp::Ordering::Equal => f.value(b),
                std::cmp::Ordering::Greater => ExtValue::zero(),
            },
        })
    }

    pub(crate) fn eval_vertex(&self, graph: &GradedGraph, v: VertexId) -> ExtValue {
        let info = graph.product().expect("checked at construction");
        let (a, b) = info.coords(graph, v);
        self.eval_pair(&info.right, a.level, b).expect("checked at construction")
    }
}

/// Binds a slow spec to a slow graph whose `Γ` labels are known to the spec.
pub fn make_slow_fn(spec: SlowSpec, graph: Arc<GradedGraph>) -> Result<HarmonicFn> {
    let gamma = slow_factor(&graph)?.clone();
    let own = spec.gamma();
    if !Arc::ptr_eq(&gamma, own) {
        for v in gamma.vertices().take_while(|v| v.level <= graph.max_level()) {
            own.vertex(gamma.label(v))?;
        }
    }
    Ok(HarmonicFn::with_family(graph, Family::Slow(spec)))
}

/// What [`classify_slow_spec`] found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classified {
    /// Weight and the factor values `f(μ)`, in level order of `Γ`.
    Weighted { w: Rational, factor: Vec<(VertexId, ExtValue)> },
    RootOnly,
    PinnedVertex { nu: VertexId, c: Rational },
    /// Level and the factor values on that level's row.
    PinnedLevel { m: usize, factor: Vec<(VertexId, ExtValue)> },
    Unclassified,
}

impl Classified {
    pub fn name(&self) -> &'static str {
        match self {
            Classified::Weighted { .. } => "weighted",
            Classified::RootOnly => "root-only",
            Classified::PinnedVertex { .. } => "pinned-vertex",
            Classified::PinnedLevel { .. } => "pinned-level",
            Classified::Unclassified => "unclassified",
        }
    }
}

/// Tabulated values `Φ(n, μ)` for `n + |μ| ≤ horizon`.
struct Grid {
    cells: Vec<(usize, VertexId, ExtValue)>,
}

impl Grid {
    fn get(&self, n: usize, b: VertexId) -> Option<&ExtValue> {
        self.cells.iter().find(|(m, c, _)| *m == n && *c == b).map(|(_, _, v)| v)
    }
}

/// Recognizes which classified family a function on `ℕ × Γ` belongs to.
///
/// Matching is exact on all vertices up to `horizon`; harmonicity is checked
/// first and any violation yields [`Classified::Unclassified`].
pub fn classify_slow_spec(f: &HarmonicFn, horizon: usize) -> Result<Classified> {
    let graph = f.graph();
    let gamma = slow_factor(graph)?;
    let info = graph.product().expect("checked");
    if horizon == 0 || horizon > graph.max_level() {
        return Err(Error::BeyondTruncation { requested: horizon, max: graph.max_level() });
    }
    let report = harmonicity_residuals(f, horizon - 1)?;
    if report.iter().any(|r| r.status == ResidualStatus::Violated) {
        return Ok(Classified::Unclassified);
    }
    let grid = Grid {
        cells: graph
            .vertices()
            .take_while(|v| v.level <= horizon)
            .map(|v| {
                let (a, b) = info.coords(graph, v);
                (a.level, b, f.value(v))
            })
            .collect(),
    };

    let root_only = grid.cells.iter().all(|(_, b, v)| if b.level == 0 { v.is_one() } else { v.is_zero() });
    if root_only {
        return Ok(Classified::RootOnly);
    }

    let positive: Vec<&(usize, VertexId, ExtValue)> = grid.cells.iter().filter(|c| c.2.is_finite_positive()).collect();
    if let Some(&&(_, nu, ref c)) = positive.first() {
        if nu.level > 0 && positive.iter().all(|p| p.1 == nu && p.2 == *c) {
            let below = principal_coideal(gamma.clone(), nu)?;
            let ok = grid.cells.iter().all(|(_, b, v)| {
                if *b == nu {
                    v == c
                } else if below.contains(*b) {
                    v.is_infinite()
                } else {
                    v.is_zero()
                }
            });
            if ok {
                let c = c.as_finite().expect("finite").clone();
                return Ok(Classified::PinnedVertex { nu, c });
            }
        }
    }

    if let Some(m) = grid.cells.iter().filter(|c| !c.2.is_zero()).map(|c| c.0).max() {
        if m >= 1 {
            let row = |b: VertexId| grid.get(m, b);
            let ok = grid.cells.iter().all(|(n, b, v)| match n.cmp(&m) {
                std::cmp::Ordering::Less => match row(*b) {
                    Some(x) => v.is_infinite() != x.is_zero(),
                    None => v.is_infinite() || v.is_zero(),
                },
                std::cmp::Ordering::Greater => v.is_zero(),
                std::cmp::Ordering::Equal => true,
            });
            if ok {
                let factor = grid.cells.iter().filter(|c| c.0 == m).map(|c| (c.1, c.2.clone())).collect();
                return Ok(Classified::PinnedLevel { m, factor });
            }
        }
    }

    let w = if grid.cells.iter().all(|c| c.2.is_finite()) {
        let base = recover_weights(f, 0, 0)?;
        if base.is_zero() {
            return Ok(Classified::Unclassified);
        }
        recover_weights(f, 0, 1)? / base
    } else {
        let witness = grid.cells.iter().find(|(n, b, v)| {
            *n == 0 && v.is_finite_positive() && b.level < horizon && grid.get(1, *b).is_some_and(ExtValue::is_finite)
        });
        let Some((_, b, v)) = witness else {
            return Ok(Classified::Unclassified);
        };
        let next = grid.get(1, *b).and_then(ExtValue::as_finite).expect("witness");
        Rational::one() - next / v.as_finite().expect("witness")
    };
    if !w.is_positive() || w > Rational::one() {
        return Ok(Classified::Unclassified);
    }
    let mut factor = Vec::new();
    for (n, b, v) in &grid.cells {
        if *n == 0 {
            factor.push((*b, v.div_positive(&power(&w, b.level))));
        }
    }
    let ok = grid.cells.iter().all(|(n, b, v)| {
        let fv = &factor.iter().find(|(c, _)| c == b).expect("row zero covers every vertex").1;
        weighted_value(&w, *n, b.level, fv) == *v
    });
    if ok {
        Ok(Classified::Weighted { w, factor })
    } else {
        Ok(Classified::Unclassified)
    }
}
