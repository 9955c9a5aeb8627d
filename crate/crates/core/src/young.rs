//! Partitions, the Young graph, symmetric-group characters, Thoma
//! specializations of Schur functions and the hook-with-flange functions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extnum::{ExtValue, Rational};
use crate::graph::{GradedGraph, GraphBuilder, GraphKind, VertexId};

/// Integer partition; parts are positive and weakly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (zero-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition { parts: (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect() }
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Diagrams obtained by adding one box, top row first.
    pub fn add_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.len() {
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// Number of standard tableaux by the hook-length formula.
    pub fn hook_dimension(&self) -> BigUint {
        let conj = self.conjugate();
        let mut num = BigUint::one();
        for k in 2..=self.size() {
            num *= k;
        }
        let mut den = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                den *= (row - j) + (conj.part(j) - i) - 1;
            }
        }
        num / den
    }

    /// Size of the centralizer of a permutation of this cycle type.
    pub fn centralizer(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_default() += 1;
            z *= p;
        }
        for &m in counts.values() {
            for k in 2..=m {
                z *= k;
            }
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::InvalidParams(format!("bad partition {s:?}")));
                }
                t.parse::<usize>().map_err(|_| Error::InvalidParams(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The Young graph up to level `max_level`.
pub fn young_graph(max_level: usize) -> GradedGraph {
    young_graph_where(max_level, "young", |_| true)
}

/// The subgraph of the Young graph on diagrams satisfying `keep`.
///
/// Vertices are discovered upward from ∅, so only diagrams reachable through
/// kept diagrams appear. Levels without vertices are retained.
pub fn young_graph_where(max_level: usize, name: &str, keep: impl Fn(&Partition) -> bool) -> GradedGraph {
    let mut b = GraphBuilder::new(name, true).kind(GraphKind::Young);
    b.ensure_levels(max_level);
    let mut levels: Vec<Vec<Partition>> = vec![Vec::new(); max_level + 1];
    if keep(&Partition::empty()) {
        levels[0].push(Partition::empty());
    }
    for n in 0..max_level {
        let mut next: Vec<Partition> = levels[n].iter().flat_map(Partition::add_box).filter(|p| keep(p)).collect();
        next.sort_unstable_by(|a, b| b.cmp(a));
        next.dedup();
        levels[n + 1] = next;
    }
    let mut ids: HashMap<Partition, VertexId> = HashMap::new();
    for (n, level) in levels.iter().enumerate() {
        for p in level {
            ids.insert(p.clone(), b.add_vertex(n, p.to_string()).expect("fresh label"));
        }
    }
    for level in levels.iter().take(max_level) {
        for p in level {
            for q in p.add_box() {
                if let Some(&to) = ids.get(&q) {
                    b.add_edge(ids[p], to, Rational::one()).expect("fresh edge");
                }
            }
        }
    }
    b.build()
}

/// Partition named by a Young-graph vertex label.
pub fn partition_of(graph: &GradedGraph, v: VertexId) -> Partition {
    graph.label(v).parse().expect("young graph labels are partitions")
}

type CharKey = (Vec<usize>, Vec<usize>);

fn char_cache() -> &'static Mutex<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Removes every rim hook of length `r`, returning the remaining shape and the sign.
fn rim_hooks(lambda: &[usize], r: usize) -> Vec<(Vec<usize>, i64)> {
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (len - 1 - i)).collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &c)| c - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        out.push((shape, if height % 2 == 0 { 1 } else { -1 }));
    }
    out
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = char_cache().lock().expect("character cache").get(&key) {
        return v;
    }
    let value = rim_hooks(lambda, mu[0])
        .into_iter()
        .map(|(shape, sign)| sign * mn(&shape, &mu[1..]))
        .sum();
    char_cache().lock().expect("character cache").insert(key, value);
    value
}

/// Character `χ^λ` at the class of cycle type `μ`, by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidParams(format!(
            "character of a partition of {} at a class of {}",
            lambda.size(),
            mu.size()
        )));
    }
    Ok(mn(&lambda.parts, &mu.parts))
}

/// Point of the Thoma simplex with finitely many nonzero coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomaParams {
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

impl ThomaParams {
    /// Sorts both sequences decreasingly; entries must be positive with total at most 1.
    pub fn new(mut alpha: Vec<Rational>, mut beta: Vec<Rational>) -> Result<Self> {
        if alpha.iter().chain(&beta).any(|x| !x.is_positive()) {
            return Err(Error::InvalidParams("parameters must be positive".into()));
        }
        alpha.sort_unstable_by(|a, b| b.cmp(a));
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let sa: Rational = alpha.iter().sum();
        let sb: Rational = beta.iter().sum();
        if sa > Rational::one() {
            return Err(Error::InvalidParams("alpha sum exceeds 1".into()));
        }
        if &sa + &sb > Rational::one() {
            return Err(Error::InvalidParams("alpha and beta sum exceeds 1".into()));
        }
        Ok(ThomaParams { alpha, beta })
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    /// `1 − Σα − Σβ`.
    pub fn gamma(&self) -> Rational {
        Rational::one() - self.alpha.iter().sum::<Rational>() - self.beta.iter().sum::<Rational>()
    }

    /// Image of the power sum `p_r`; `p_1 = 1`, higher ones may be negative.
    pub fn power_sum(&self, r: usize) -> Rational {
        if r == 1 {
            return Rational::one();
        }
        let e = r as i32;
        let a: Rational = self.alpha.iter().map(|x| x.pow(e)).sum();
        let b: Rational = self.beta.iter().map(|x| x.pow(e)).sum();
        if r % 2 == 1 {
            a + b
        } else {
            a - b
        }
    }

    /// Whether `λ_{k+1} ≤ l` for `k` alpha and `l` beta entries; Schur values vanish outside.
    fn fits_hook(&self, lambda: &Partition) -> bool {
        lambda.part(self.alpha.len()) <= self.beta.len()
    }
}

/// `s_λ(α|β)` through the power-sum expansion `Σ_μ χ^λ_μ p_μ / z_μ`.
pub fn thoma_eval(params: &ThomaParams, lambda: &Partition) -> Rational {
    if params.gamma().is_zero() && !params.fits_hook(lambda) {
        return Rational::zero();
    }
    let n = lambda.size();
    let powers: Vec<Rational> = (0..=n).map(|r| if r == 0 { Rational::one() } else { params.power_sum(r) }).collect();
    let mut total = Rational::zero();
    for mu in partitions_of(n) {
        let chi = mn(&lambda.parts, &mu.parts);
        if chi == 0 {
            continue;
        }
        let mut term: Rational = mu.parts.iter().map(|&r| powers[r].clone()).product();
        if term.is_zero() {
            continue;
        }
        term *= Rational::from_integer(BigInt::from(chi));
        term /= Rational::from_integer(BigInt::from(mu.centralizer()));
        total += term;
    }
    debug_assert!(!total.is_negative(), "negative Schur value at {lambda}");
    total
}

/// Position of a diagram relative to a hook with flange.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlangePosition {
    Outside,
    InsideNotCovering,
    Covering,
}

/// Hook with `k` infinite rows, `l` infinite columns and the flange `ν` in the corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlangeSpec {
    k: usize,
    l: usize,
    nu: Partition,
    params: ThomaParams,
}

impl FlangeSpec {
    pub fn new(k: usize, l: usize, nu: Partition, params: ThomaParams) -> Result<Self> {
        if nu.is_empty() {
            return Err(Error::InvalidParams("flange must be non-empty".into()));
        }
        if params.alpha.len() != k || params.beta.len() != l {
            return Err(Error::InvalidParams(format!(
                "need {k} alpha and {l} beta entries, got {} and {}",
                params.alpha.len(),
                params.beta.len()
            )));
        }
        if !params.gamma().is_zero() {
            return Err(Error::InvalidParams("flange parameters must sum to 1".into()));
        }
        Ok(FlangeSpec { k, l, nu, params })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn nu(&self) -> &Partition {
        &self.nu
    }

    pub fn params(&self) -> &ThomaParams {
        &self.params
    }

    pub fn membership(&self, lambda: &Partition) -> FlangePosition {
        let rows = lambda.len().saturating_sub(self.k).max(self.nu.len());
        let inside = (0..rows).all(|i| lambda.part(self.k + i) <= self.l + self.nu.part(i));
        if !inside {
            return FlangePosition::Outside;
        }
        let covers = (0..self.nu.len()).all(|i| lambda.part(self.k + i) >= self.l + self.nu.part(i));
        if covers {
            FlangePosition::Covering
        } else {
            FlangePosition::InsideNotCovering
        }
    }

    /// `λ` with the flange cut away.
    pub fn remove(&self, lambda: &Partition) -> Result<Partition> {
        if self.membership(lambda) != FlangePosition::Covering {
            return Err(Error::InvalidParams(format!("{lambda:?} does not cover the flange")));
        }
        // covering forces rows k+1..k+len(nu) to have length exactly l + nu_i
        let mut parts = lambda.parts.clone();
        for row in parts.iter_mut().skip(self.k).take(self.nu.len()) {
            *row = self.l;
        }
        Ok(Partition::from_unsorted(parts))
    }

    /// Value of the unnormalized semifinite function at `λ`.
    pub fn eval(&self, lambda: &Partition) -> ExtValue {
        match self.membership(lambda) {
            FlangePosition::Outside => ExtValue::zero(),
            FlangePosition::InsideNotCovering => ExtValue::Infinite,
            FlangePosition::Covering => {
                let rest = self.remove(lambda).expect("covering");
                ExtValue::Finite(thoma_eval(&self.params, &rest))
            }
        }
    }
}
