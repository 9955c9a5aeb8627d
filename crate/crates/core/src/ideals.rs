//! Ideals and coideals of truncated graded graphs.
//!
//! A [`VertexSet`] only speaks about levels `0..=horizon`. Closure is checked
//! within those levels, and saturation and primitivity are certified only up
//! to the horizon.

use std::collections::VecDeque;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GradedGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Ideal,
    Coideal,
    Plain,
}

/// A set of vertices of one graph, tagged by its closure type.
#[derive(Clone)]
pub struct VertexSet {
    graph: Arc<GradedGraph>,
    members: FixedBitSet,
    kind: SetKind,
    horizon: usize,
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VertexSet")
            .field("graph", &self.graph.name())
            .field("kind", &self.kind)
            .field("horizon", &self.horizon)
            .field("members", &self.labels())
            .finish()
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph)
            && self.kind == other.kind
            && self.horizon == other.horizon
            && self.members == other.members
    }
}

#[derive(Serialize, Deserialize)]
struct SetFile {
    graph: String,
    kind: SetKind,
    members: Vec<String>,
}

/// How a projection of a product coideal looks in its factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorShape {
    /// Saturated and primitive up to the horizon.
    SaturatedPrimitive,
    /// All vertices below the given one.
    Principal(VertexId),
    Neither,
}

/// The two projections of a product coideal `J = J₁ × J₂`.
#[derive(Debug)]
pub struct CoidealFactors {
    pub left: VertexSet,
    pub right: VertexSet,
    pub left_shape: FactorShape,
    pub right_shape: FactorShape,
}

impl VertexSet {
    /// Checks the closure property of `kind` within levels `0..=horizon`.
    pub fn new(graph: Arc<GradedGraph>, members: FixedBitSet, kind: SetKind, horizon: usize) -> Result<Self> {
        if horizon > graph.max_level() {
            return Err(Error::BeyondTruncation { requested: horizon, max: graph.max_level() });
        }
        if members.len() != graph.vertex_count() {
            return Err(Error::VertexSet("membership vector has the wrong length".into()));
        }
        let set = VertexSet { graph, members, kind, horizon };
        if let Some(v) = set.members().find(|v| v.level > horizon) {
            return Err(Error::VertexSet(format!("{:?} lies above the horizon", set.graph.label(v))));
        }
        if let Some((a, b)) = set.closure_violation() {
            return Err(Error::VertexSet(format!(
                "not {}: contains {:?} but not {:?}",
                if kind == SetKind::Ideal { "upward closed" } else { "downward closed" },
                set.graph.label(a),
                set.graph.label(b)
            )));
        }
        Ok(set)
    }

    fn closure_violation(&self) -> Option<(VertexId, VertexId)> {
        let g = &self.graph;
        for v in self.members() {
            match self.kind {
                SetKind::Ideal if v.level < self.horizon => {
                    if let Some((w, _)) = g.successors(v).find(|(w, _)| !self.contains(*w)) {
                        return Some((v, w));
                    }
                }
                SetKind::Coideal => {
                    if let Some((w, _)) = g.predecessors(v).find(|(w, _)| !self.contains(*w)) {
                        return Some((v, w));
                    }
                }
                _ => {}
            }
        }
        None
    }

    pub fn from_vertices(
        graph: Arc<GradedGraph>,
        vertices: impl IntoIterator<Item = VertexId>,
        kind: SetKind,
        horizon: usize,
    ) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(graph.vertex_count());
        for v in vertices {
            graph.check(v)?;
            members.insert(graph.flat(v));
        }
        Self::new(graph, members, kind, horizon)
    }

    pub fn from_labels<S: AsRef<str>>(graph: Arc<GradedGraph>, labels: &[S], kind: SetKind, horizon: usize) -> Result<Self> {
        let vertices = labels.iter().map(|l| graph.resolve(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::from_vertices(graph, vertices, kind, horizon)
    }

    /// All vertices satisfying `pred` up to the horizon.
    pub fn from_predicate(
        graph: Arc<GradedGraph>,
        kind: SetKind,
        horizon: usize,
        mut pred: impl FnMut(VertexId) -> bool,
    ) -> Result<Self> {
        let vertices: Vec<VertexId> = graph.vertices().filter(|v| v.level <= horizon && pred(*v)).collect();
        Self::from_vertices(graph, vertices, kind, horizon)
    }

    pub fn whole(graph: Arc<GradedGraph>, kind: SetKind) -> Self {
        let horizon = graph.max_level();
        Self::from_predicate(graph, kind, horizon, |_| true).expect("the whole graph is closed")
    }

    pub fn empty(graph: Arc<GradedGraph>, kind: SetKind) -> Self {
        let horizon = graph.max_level();
        Self::from_predicate(graph, kind, horizon, |_| false).expect("the empty set is closed")
    }

    pub fn graph(&self) -> &Arc<GradedGraph> {
        &self.graph
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.graph.contains(v) && self.members.contains(self.graph.flat(v))
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.ones().map(|i| self.graph.from_flat(i))
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members().map(|v| self.graph.label(v)).collect()
    }

    /// Number of members on each level up to the horizon.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.horizon + 1];
        for v in self.members() {
            counts[v.level] += 1;
        }
        counts
    }

    /// The complementary set within the horizon, with the kind flipped.
    pub fn complement(&self) -> Result<VertexSet> {
        let kind = match self.kind {
            SetKind::Ideal => SetKind::Coideal,
            SetKind::Coideal => SetKind::Ideal,
            SetKind::Plain => return Err(Error::VertexSet("complement of an untyped set".into())),
        };
        let graph = self.graph.clone();
        let horizon = self.horizon;
        VertexSet::from_predicate(graph, kind, horizon, |v| !self.contains(v))
    }

    /// Saturation, checked for vertices strictly below `horizon`.
    ///
    /// Coideals: every member has a successor inside. Ideals: a vertex whose
    /// successors all lie in the ideal belongs to it.
    pub fn is_saturated(&self, horizon: usize) -> Result<bool> {
        if horizon > self.horizon {
            return Err(Error::BeyondTruncation { requested: horizon, max: self.horizon });
        }
        let g = &self.graph;
        match self.kind {
            SetKind::Coideal => Ok(self
                .members()
                .filter(|v| v.level < horizon)
                .all(|v| g.successors(v).any(|(w, _)| self.contains(w)))),
            SetKind::Ideal => Ok(g
                .vertices()
                .filter(|v| v.level < horizon && !self.contains(*v))
                .all(|v| g.successors(v).any(|(w, _)| !self.contains(w)))),
            SetKind::Plain => Err(Error::VertexSet("saturation of an untyped set".into())),
        }
    }

    /// For every member, the members reachable from it (itself included).
    fn upward_reach(&self) -> Vec<Option<FixedBitSet>> {
        let g = &self.graph;
        let n = g.vertex_count();
        let mut reach: Vec<Option<FixedBitSet>> = vec![None; n];
        for level in (0..=self.horizon).rev() {
            for v in g.level(level) {
                if !self.contains(v) {
                    continue;
                }
                let mut bits = FixedBitSet::with_capacity(n);
                bits.insert(g.flat(v));
                if level < self.horizon {
                    for (w, _) in g.successors(v) {
                        if let Some(r) = &reach[g.flat(w)] {
                            bits.union_with(r);
                        }
                    }
                }
                reach[g.flat(v)] = Some(bits);
            }
        }
        reach
    }

    /// Primitivity of a saturated coideal, up to `horizon`.
    ///
    /// Every pair of members on levels at most `horizon / 2` must have a common
    /// upper bound inside the set on a level at most `horizon`.
    pub fn is_primitive_coideal(&self, horizon: usize) -> Result<bool> {
        if self.kind != SetKind::Coideal {
            return Err(Error::VertexSet("primitivity is defined for coideals".into()));
        }
        if !self.is_saturated(horizon)? {
            return Err(Error::VertexSet("coideal is not saturated".into()));
        }
        let reach = self.upward_reach();
        let low: Vec<usize> = self
            .members()
            .filter(|v| v.level <= horizon / 2)
            .map(|v| self.graph.flat(v))
            .collect();
        let cap = self.graph.vertex_count();
        let within = |bits: &FixedBitSet| {
            let mut b = bits.clone();
            b.grow(cap);
            b.ones().any(|i| self.graph.from_flat(i).level <= horizon)
        };
        for (a, &x) in low.iter().enumerate() {
            for &y in &low[a + 1..] {
                let rx = reach[x].as_ref().expect("member");
                let ry = reach[y].as_ref().expect("member");
                let mut common = rx.clone();
                common.intersect_with(ry);
                if !within(&common) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Splits a coideal of a direct product into its two projections.
    pub fn product_coideal_factor(&self) -> Result<CoidealFactors> {
        let info = self
            .graph
            .product()
            .ok_or_else(|| Error::VertexSet("not a set on a product graph".into()))?;
        if self.kind != SetKind::Coideal {
            return Err(Error::VertexSet("factorization needs a coideal".into()));
        }
        let (g1, g2) = (info.left.clone(), info.right.clone());
        let mut side1 = FixedBitSet::with_capacity(g1.vertex_count());
        let mut side2 = FixedBitSet::with_capacity(g2.vertex_count());
        for v in self.members() {
            let (a, b) = info.coords(&self.graph, v);
            side1.insert(g1.flat(a));
            side2.insert(g2.flat(b));
        }
        for v in self.graph.vertices().filter(|v| v.level <= self.horizon) {
            let (a, b) = info.coords(&self.graph, v);
            if side1.contains(g1.flat(a)) && side2.contains(g2.flat(b)) && !self.contains(v) {
                return Err(Error::VertexSet(format!(
                    "not a product of its projections: {:?} is missing",
                    self.graph.label(v)
                )));
            }
        }
        let h = self.horizon;
        let left = VertexSet::new(g1.clone(), side1, SetKind::Coideal, h.min(g1.max_level()))?;
        let right = VertexSet::new(g2.clone(), side2, SetKind::Coideal, h.min(g2.max_level()))?;
        let left_shape = left.shape(h)?;
        let right_shape = right.shape(h)?;
        Ok(CoidealFactors { left, right, left_shape, right_shape })
    }

    fn shape(&self, horizon: usize) -> Result<FactorShape> {
        let tops: Vec<VertexId> = self
            .members()
            .filter(|&v| !self.graph.successors(v).any(|(w, _)| self.contains(w)))
            .collect();
        if let [top] = tops[..] {
            if top.level < self.horizon && principal_coideal(self.graph.clone(), top)?.members == self.members {
                return Ok(FactorShape::Principal(top));
            }
        }
        let h = horizon.min(self.horizon);
        if self.is_saturated(h)? && self.is_primitive_coideal(h)? {
            return Ok(FactorShape::SaturatedPrimitive);
        }
        Ok(FactorShape::Neither)
    }

    pub fn to_json(&self) -> String {
        let file = SetFile {
            graph: self.graph.name().to_string(),
            kind: self.kind,
            members: self.labels().into_iter().map(String::from).collect(),
        };
        serde_json::to_string_pretty(&file).expect("set serializes") + "\n"
    }

    pub fn from_json(graph: Arc<GradedGraph>, text: &str) -> Result<Self> {
        let file: SetFile = serde_json::from_str(text)?;
        if file.graph != graph.name() {
            return Err(Error::VertexSet(format!("set belongs to graph {:?}", file.graph)));
        }
        let horizon = graph.max_level();
        Self::from_labels(graph, &file.members, file.kind, horizon)
    }
}

fn search(graph: &GradedGraph, start: VertexId, up: bool) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(graph.vertex_count());
    seen.insert(graph.flat(start));
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let next: Vec<VertexId> = if up {
            graph.successors(v).map(|(w, _)| w).collect()
        } else {
            graph.predecessors(v).map(|(w, _)| w).collect()
        };
        for w in next {
            if !seen.put(graph.flat(w)) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// `{μ : μ ≥ λ}` within the truncation.
pub fn principal_ideal(graph: Arc<GradedGraph>, lambda: VertexId) -> Result<VertexSet> {
    graph.check(lambda)?;
    let members = search(&graph, lambda, true);
    let horizon = graph.max_level();
    VertexSet::new(graph, members, SetKind::Ideal, horizon)
}

/// `{λ : λ ≤ μ}`.
pub fn principal_coideal(graph: Arc<GradedGraph>, mu: VertexId) -> Result<VertexSet> {
    graph.check(mu)?;
    let members = search(&graph, mu, false);
    let horizon = graph.max_level();
    VertexSet::new(graph, members, SetKind::Coideal, horizon)
}
