//! Finite truncations of graded graphs.
//!
//! A [`GradedGraph`] holds levels `0..=max_level` of vertex labels and a positive
//! rational multiplicity on every edge. Edges normally join adjacent levels; an
//! edge that does not is kept only so that [`GradedGraph::validate`] can report
//! it. Shifted dimensions are computed by a forward dynamic program over levels
//! and cached per source vertex.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extnum::{rational_str, Rational};

/// Address of a vertex: its level and its position within the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub level: usize,
    pub index: usize,
}

impl VertexId {
    pub const fn new(level: usize, index: usize) -> Self {
        VertexId { level, index }
    }
}

/// Structural knowledge about how a graph was built.
pub enum GraphKind {
    /// Loaded from a file or assembled by hand.
    Custom,
    /// Labels are partitions written as comma lists.
    Young,
    /// Labels are `i,j` pairs.
    Pascal,
    /// One vertex per level, labelled by the level.
    Nat,
    Product(ProductInfo),
}

/// Coordinates of the vertices of a direct product.
pub struct ProductInfo {
    pub left: Arc<GradedGraph>,
    pub right: Arc<GradedGraph>,
    coords: Vec<(VertexId, VertexId)>,
    lookup: HashMap<(VertexId, VertexId), VertexId>,
}

impl ProductInfo {
    pub(crate) fn new(left: Arc<GradedGraph>, right: Arc<GradedGraph>, coords: Vec<(VertexId, VertexId)>) -> Self {
        let lookup = coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect::<HashMap<_, _>>();
        // flat indices are resolved to ids once the graph exists; see `GradedGraph::finish_product`
        let lookup = lookup.into_iter().map(|(c, i)| (c, VertexId::new(usize::MAX, i))).collect();
        ProductInfo { left, right, coords, lookup }
    }

    /// Factor coordinates of a product vertex.
    pub fn coords(&self, graph: &GradedGraph, v: VertexId) -> (VertexId, VertexId) {
        self.coords[graph.flat(v)]
    }

    /// The product vertex with the given coordinates, if it lies in the truncation.
    pub fn vertex(&self, a: VertexId, b: VertexId) -> Option<VertexId> {
        self.lookup.get(&(a, b)).copied()
    }
}

#[derive(Clone, Copy, Debug)]
struct Adj {
    target: u32,
    kappa: u32,
}

/// Violation of the graded-graph axioms found by [`GradedGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// An edge joining levels that are not adjacent.
    NonAdjacentEdge { from: String, to: String },
    /// A vertex below the truncation level without outgoing edges.
    DeadEnd { vertex: String },
    /// A vertex of a branching graph above level 0 without incoming edges.
    Orphan { vertex: String },
    /// Level 0 of a branching graph is not a single vertex.
    RootNotSingleton { count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonAdjacentEdge { from, to } => write!(f, "edge {from:?} -> {to:?} skips levels"),
            Violation::DeadEnd { vertex } => write!(f, "vertex {vertex:?} has no successor"),
            Violation::Orphan { vertex } => write!(f, "vertex {vertex:?} has no predecessor"),
            Violation::RootNotSingleton { count } => write!(f, "level 0 has {count} vertices"),
        }
    }
}

/// Weighted path counts `dim(source, ·)`.
pub struct DimTable {
    source: VertexId,
    values: Vec<Vec<Rational>>,
    zero: Rational,
}

impl DimTable {
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// `dim(source, v)`; zero below the source level.
    pub fn get(&self, v: VertexId) -> &Rational {
        if v.level < self.source.level {
            return &self.zero;
        }
        &self.values[v.level - self.source.level][v.index]
    }

    /// All values on level `level` (empty below the source).
    pub fn level(&self, level: usize) -> &[Rational] {
        if level < self.source.level {
            return &[];
        }
        &self.values[level - self.source.level]
    }
}

/// A monotone path together with the product of multiplicities along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPath {
    pub vertices: Vec<VertexId>,
    pub weight: Rational,
}

/// Finite truncation of a graded graph.
pub struct GradedGraph {
    name: String,
    branching: bool,
    levels: Vec<Vec<String>>,
    offsets: Vec<usize>,
    labels: HashMap<String, VertexId>,
    kappas: Vec<Rational>,
    out: Vec<Vec<Adj>>,
    inc: Vec<Vec<Adj>>,
    stray: Vec<(VertexId, VertexId, Rational)>,
    kind: GraphKind,
    dims: Vec<OnceLock<Arc<DimTable>>>,
}

impl fmt::Debug for GradedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedGraph")
            .field("name", &self.name)
            .field("branching", &self.branching)
            .field("level_sizes", &self.level_sizes())
            .finish()
    }
}

/// Incremental constructor for [`GradedGraph`].
pub struct GraphBuilder {
    name: String,
    branching: bool,
    levels: Vec<Vec<String>>,
    labels: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId, Rational)>,
    seen: HashMap<(VertexId, VertexId), ()>,
    kind: GraphKind,
}

impl GraphBuilder {
    pub fn new(name: impl Into<String>, branching: bool) -> Self {
        GraphBuilder {
            name: name.into(),
            branching,
            levels: Vec::new(),
            labels: HashMap::new(),
            edges: Vec::new(),
            seen: HashMap::new(),
            kind: GraphKind::Custom,
        }
    }

    pub fn kind(mut self, kind: GraphKind) -> Self {
        self.kind = kind;
        self
    }

    /// Makes sure levels `0..=max_level` exist, possibly empty.
    pub fn ensure_levels(&mut self, max_level: usize) {
        while self.levels.len() <= max_level {
            self.levels.push(Vec::new());
        }
    }

    pub fn add_vertex(&mut self, level: usize, label: impl Into<String>) -> Result<VertexId> {
        let label = label.into();
        if self.labels.contains_key(&label) {
            return Err(Error::InvalidGraph(format!("duplicate label {label:?}")));
        }
        self.ensure_levels(level);
        let id = VertexId::new(level, self.levels[level].len());
        self.levels[level].push(label.clone());
        self.labels.insert(label, id);
        Ok(id)
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.labels
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId, kappa: Rational) -> Result<()> {
        if kappa <= Rational::zero() {
            return Err(Error::InvalidGraph(format!("non-positive multiplicity {kappa}")));
        }
        if self.seen.insert((from, to), ()).is_some() {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {:?} -> {:?}",
                self.levels[from.level][from.index], self.levels[to.level][to.index]
            )));
        }
        self.edges.push((from, to, kappa));
        Ok(())
    }

    pub fn build(self) -> GradedGraph {
        let mut offsets = Vec::with_capacity(self.levels.len() + 1);
        let mut total = 0;
        for level in &self.levels {
            offsets.push(total);
            total += level.len();
        }
        offsets.push(total);
        let flat = |v: VertexId| offsets[v.level] + v.index;

        let mut kappas: Vec<Rational> = Vec::new();
        let mut interned: HashMap<Rational, u32> = HashMap::new();
        let mut out = vec![Vec::new(); total];
        let mut inc = vec![Vec::new(); total];
        let mut stray = Vec::new();
        for (from, to, kappa) in self.edges {
            if to.level != from.level + 1 {
                stray.push((from, to, kappa));
                continue;
            }
            let k = *interned.entry(kappa.clone()).or_insert_with(|| {
                kappas.push(kappa);
                (kappas.len() - 1) as u32
            });
            out[flat(from)].push(Adj { target: to.index as u32, kappa: k });
            inc[flat(to)].push(Adj { target: from.index as u32, kappa: k });
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_by_key(|a| a.target);
        }
        let dims = (0..total).map(|_| OnceLock::new()).collect();
        let mut graph = GradedGraph {
            name: self.name,
            branching: self.branching,
            levels: self.levels,
            offsets,
            labels: self.labels,
            kappas,
            out,
            inc,
            stray,
            kind: self.kind,
            dims,
        };
        graph.finish_product();
        graph
    }
}

/// Escapes a factor label for use inside a product label.
pub fn escape_component(label: &str) -> String {
    let mut s = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '%' => s.push_str("%25"),
            ',' => s.push_str("%2C"),
            '⊗' => s.push_str("%E2%8A%97"),
            c => s.push(c),
        }
    }
    s
}

/// Label `a⊗b` of a product vertex.
pub fn product_label(a: &str, b: &str) -> String {
    format!("{}⊗{}", escape_component(a), escape_component(b))
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    name: String,
    branching: bool,
    levels: Vec<Vec<String>>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    from: String,
    to: String,
    #[serde(with = "rational_str")]
    kappa: Rational,
}

impl GradedGraph {
    fn finish_product(&mut self) {
        let offsets = self.offsets.clone();
        let unflat = |i: usize| {
            let level = offsets.partition_point(|&o| o <= i) - 1;
            VertexId::new(level, i - offsets[level])
        };
        if let GraphKind::Product(info) = &mut self.kind {
            for v in info.lookup.values_mut() {
                *v = unflat(v.index);
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_branching(&self) -> bool {
        self.branching
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn product(&self) -> Option<&ProductInfo> {
        match &self.kind {
            GraphKind::Product(p) => Some(p),
            _ => None,
        }
    }

    /// Truncation level `N_max`.
    pub fn max_level(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn level_labels(&self, level: usize) -> &[String] {
        self.levels.get(level).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn level(&self, level: usize) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.level_labels(level).len()).map(move |i| VertexId::new(level, i))
    }

    /// All vertices in level order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.levels.len()).flat_map(move |l| self.level(l))
    }

    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Position of `v` in the level-order enumeration.
    pub fn flat(&self, v: VertexId) -> usize {
        self.offsets[v.level] + v.index
    }

    pub fn from_flat(&self, i: usize) -> VertexId {
        let level = self.offsets.partition_point(|&o| o <= i) - 1;
        VertexId::new(level, i - self.offsets[level])
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.level < self.levels.len() && v.index < self.levels[v.level].len()
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("{}:{}", v.level, v.index)))
        }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.levels[v.level][v.index]
    }

    /// Looks up a vertex by its exact label.
    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.labels
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Like [`GradedGraph::vertex`], but also accepts unescaped product labels `a⊗b`.
    pub fn resolve(&self, label: &str) -> Result<VertexId> {
        if let Ok(v) = self.vertex(label) {
            return Ok(v);
        }
        if self.product().is_some() {
            let parts: Vec<&str> = label.split('⊗').collect();
            if parts.len() == 2 {
                if let Ok(v) = self.vertex(&product_label(parts[0], parts[1])) {
                    return Ok(v);
                }
            }
        }
        Err(Error::UnknownVertex(label.to_string()))
    }

    /// The unique vertex of level 0, if there is exactly one.
    pub fn root(&self) -> Option<VertexId> {
        (self.level_labels(0).len() == 1).then(|| VertexId::new(0, 0))
    }

    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, &Rational)> + '_ {
        self.out[self.flat(v)]
            .iter()
            .map(move |a| (VertexId::new(v.level + 1, a.target as usize), &self.kappas[a.kappa as usize]))
    }

    pub fn predecessors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, &Rational)> + '_ {
        self.inc[self.flat(v)]
            .iter()
            .map(move |a| (VertexId::new(v.level - 1, a.target as usize), &self.kappas[a.kappa as usize]))
    }

    /// `κ(from, to)` for an edge between adjacent levels.
    pub fn kappa(&self, from: VertexId, to: VertexId) -> Option<&Rational> {
        if to.level != from.level + 1 {
            return None;
        }
        let list = &self.out[self.flat(from)];
        list.binary_search_by_key(&(to.index as u32), |a| a.target)
            .ok()
            .map(|i| &self.kappas[list[i].kappa as usize])
    }

    /// Checks the graded-graph axioms; the result is empty iff the graph is valid.
    ///
    /// The successor condition is only checked below the truncation level.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        for (from, to, _) in &self.stray {
            report.push(Violation::NonAdjacentEdge {
                from: self.label(*from).to_string(),
                to: self.label(*to).to_string(),
            });
        }
        let top = self.max_level();
        for v in self.vertices() {
            if v.level < top && self.out[self.flat(v)].is_empty() {
                report.push(Violation::DeadEnd { vertex: self.label(v).to_string() });
            }
        }
        if self.branching {
            let count = self.level_labels(0).len();
            if count != 1 {
                report.push(Violation::RootNotSingleton { count });
            }
            for v in self.vertices().filter(|v| v.level > 0) {
                if self.inc[self.flat(v)].is_empty() {
                    report.push(Violation::Orphan { vertex: self.label(v).to_string() });
                }
            }
        }
        report
    }

    /// The cached table `dim(source, ·)`.
    pub fn dim_table(&self, source: VertexId) -> Result<Arc<DimTable>> {
        self.check(source)?;
        let slot = &self.dims[self.flat(source)];
        Ok(slot.get_or_init(|| Arc::new(self.compute_dims(source))).clone())
    }

    fn compute_dims(&self, source: VertexId) -> DimTable {
        let mut values = Vec::with_capacity(self.levels.len() - source.level);
        let mut current = vec![Rational::zero(); self.levels[source.level].len()];
        current[source.index] = Rational::one();
        for level in source.level..self.levels.len() {
            let next_len = self.level_labels(level + 1).len();
            let mut next = vec![Rational::zero(); next_len];
            if next_len > 0 {
                for (i, value) in current.iter().enumerate() {
                    if value.is_zero() {
                        continue;
                    }
                    for a in &self.out[self.offsets[level] + i] {
                        let k = &self.kappas[a.kappa as usize];
                        let slot = &mut next[a.target as usize];
                        if k.is_one() {
                            *slot += value;
                        } else {
                            *slot += value * k;
                        }
                    }
                }
            }
            values.push(std::mem::replace(&mut current, next));
        }
        DimTable { source, values, zero: Rational::zero() }
    }

    /// Shifted dimension `dim(mu, nu)`: weighted number of paths from `mu` to `nu`.
    pub fn shifted_dim(&self, mu: VertexId, nu: VertexId) -> Result<Rational> {
        self.check(nu)?;
        Ok(self.dim_table(mu)?.get(nu).clone())
    }

    /// `dim(∅, v)` for a graph with a single root.
    pub fn dim(&self, v: VertexId) -> Result<Rational> {
        let root = self
            .root()
            .ok_or_else(|| Error::InvalidGraph(format!("{} has no single root", self.name)))?;
        self.shifted_dim(root, v)
    }

    /// Lists every monotone path from `mu` to `nu` by depth-first search.
    pub fn enumerate_paths(&self, mu: VertexId, nu: VertexId, cap: usize) -> Result<Vec<WeightedPath>> {
        self.check(mu)?;
        self.check(nu)?;
        let mut found = Vec::new();
        if nu.level < mu.level {
            return Ok(found);
        }
        let mut stack = vec![mu];
        self.paths_from(mu, nu, Rational::one(), &mut stack, &mut found, cap)?;
        Ok(found)
    }

    fn paths_from(
        &self,
        at: VertexId,
        goal: VertexId,
        weight: Rational,
        stack: &mut Vec<VertexId>,
        found: &mut Vec<WeightedPath>,
        cap: usize,
    ) -> Result<()> {
        if at.level == goal.level {
            if at == goal {
                if found.len() == cap {
                    return Err(Error::PathCapExceeded { cap });
                }
                found.push(WeightedPath { vertices: stack.clone(), weight });
            }
            return Ok(());
        }
        for (next, k) in self.successors(at) {
            stack.push(next);
            self.paths_from(next, goal, &weight * k, stack, found, cap)?;
            stack.pop();
        }
        Ok(())
    }

    /// `mu ≤ nu` in the path order.
    pub fn leq(&self, mu: VertexId, nu: VertexId) -> Result<bool> {
        self.check(mu)?;
        self.check(nu)?;
        if mu == nu {
            return Ok(true);
        }
        Ok(nu.level > mu.level && !self.dim_table(mu)?.get(nu).is_zero())
    }

    /// Whether consecutive vertices are always joined by an edge.
    pub fn is_path(&self, vertices: &[VertexId]) -> bool {
        vertices.iter().all(|&v| self.contains(v))
            && vertices.windows(2).all(|w| self.kappa(w[0], w[1]).is_some())
    }

    /// Subgraph induced on `keep`, with all levels (possibly empty) retained.
    pub fn induced(&self, keep: &FixedBitSet, name: impl Into<String>) -> GradedGraph {
        let mut b = GraphBuilder::new(name, self.branching);
        b.ensure_levels(self.max_level());
        let mut map = HashMap::new();
        for v in self.vertices().filter(|&v| keep.contains(self.flat(v))) {
            map.insert(v, b.add_vertex(v.level, self.label(v)).expect("labels are unique"));
        }
        for (&v, &nv) in &map {
            for (w, k) in self.successors(v) {
                if let Some(&nw) = map.get(&w) {
                    b.add_edge(nv, nw, k.clone()).expect("edges are unique");
                }
            }
        }
        let kind = match self.kind {
            GraphKind::Young => GraphKind::Young,
            GraphKind::Pascal => GraphKind::Pascal,
            GraphKind::Nat => GraphKind::Nat,
            _ => GraphKind::Custom,
        };
        b.kind(kind).build()
    }

    /// JSON encoding; edges appear in level order of their source.
    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for v in self.vertices() {
            for (w, k) in self.successors(v) {
                edges.push(EdgeFile { from: self.label(v).to_string(), to: self.label(w).to_string(), kappa: k.clone() });
            }
        }
        for (from, to, k) in &self.stray {
            edges.push(EdgeFile { from: self.label(*from).to_string(), to: self.label(*to).to_string(), kappa: k.clone() });
        }
        let file = GraphFile { name: self.name.clone(), branching: self.branching, levels: self.levels.clone(), edges };
        serde_json::to_string_pretty(&file).expect("graph serializes") + "\n"
    }

    /// Parses the JSON encoding without validating the axioms.
    pub fn from_json_unchecked(text: &str) -> Result<GradedGraph> {
        let file: GraphFile = serde_json::from_str(text)?;
        let mut b = GraphBuilder::new(file.name, file.branching);
        b.ensure_levels(file.levels.len().saturating_sub(1));
        for (level, labels) in file.levels.into_iter().enumerate() {
            for label in labels {
                b.add_vertex(level, label)?;
            }
        }
        for e in file.edges {
            let from = b.vertex(&e.from)?;
            let to = b.vertex(&e.to)?;
            b.add_edge(from, to, e.kappa)?;
        }
        Ok(b.build())
    }

    /// Parses the JSON encoding, rejecting graphs that fail [`GradedGraph::validate`].
    pub fn from_json(text: &str) -> Result<GradedGraph> {
        let g = Self::from_json_unchecked(text)?;
        let report = g.validate();
        if let Some(first) = report.first() {
            return Err(Error::InvalidGraph(format!("{first} ({} violations)", report.len())));
        }
        Ok(g)
    }
}

/// Graphs with a built-in construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    Young,
    Pascal,
    Nat,
}

impl std::str::FromStr for BuiltinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "young" => Ok(BuiltinKind::Young),
            "pascal" => Ok(BuiltinKind::Pascal),
            "nat" => Ok(BuiltinKind::Nat),
            other => Err(Error::Unsupported(format!("unknown graph kind {other:?}"))),
        }
    }
}

pub fn builtin_graph(kind: BuiltinKind, max_level: usize) -> GradedGraph {
    match kind {
        BuiltinKind::Young => crate::young::young_graph(max_level),
        BuiltinKind::Pascal => pascal_graph(max_level),
        BuiltinKind::Nat => nat_graph(max_level),
    }
}

/// Pascal graph: vertices `(i, j)` with `i + j = n`, listed with `i` descending.
pub fn pascal_graph(max_level: usize) -> GradedGraph {
    let mut b = GraphBuilder::new("pascal", true).kind(GraphKind::Pascal);
    b.ensure_levels(max_level);
    for n in 0..=max_level {
        for i in (0..=n).rev() {
            b.add_vertex(n, format!("{},{}", i, n - i)).expect("fresh label");
        }
    }
    // vertex (i, n-i) sits at index n-i on level n
    for n in 0..max_level {
        for j in 0..=n {
            let from = VertexId::new(n, j);
            b.add_edge(from, VertexId::new(n + 1, j), Rational::one()).expect("fresh edge");
            b.add_edge(from, VertexId::new(n + 1, j + 1), Rational::one()).expect("fresh edge");
        }
    }
    b.build()
}

/// The half-line: one vertex per level, one edge between adjacent levels.
pub fn nat_graph(max_level: usize) -> GradedGraph {
    let mut b = GraphBuilder::new("nat", true).kind(GraphKind::Nat);
    for n in 0..=max_level {
        b.add_vertex(n, n.to_string()).expect("fresh label");
    }
    for n in 0..max_level {
        b.add_edge(VertexId::new(n, 0), VertexId::new(n + 1, 0), Rational::one()).expect("fresh edge");
    }
    b.build()
}
