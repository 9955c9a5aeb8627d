//! Parser and builder for the textual function specifications.
//!
//! ```text
//! thoma:a=1/2,1/2;b=1/3
//! flange:k=1,l=1,nu=1;a=1/2;b=1/2;c=1
//! product:w1=1/3;f1=thoma:a=1;f2=(thoma:a=1/2;b=1/2)
//! prod-case2:f1=thoma:a=1;nu2=1
//! slow:w=1/2;f=thoma:a=1
//! slow-case2:nu=1;c=1
//! slow-case3:m=2;f=thoma:a=1
//! slow-fin2
//! table:values.tsv
//! ```
//!
//! A segment whose key the enclosing family does not know is appended to the
//! nested specification before it, so `f2=thoma:a=1/2;b=1/2` keeps `b` inside
//! the Thoma parameters. Parentheses make the grouping explicit.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extnum::{parse_rational, ExtValue, Rational};
use crate::graph::GradedGraph;
use crate::harmonic::HarmonicFn;
use crate::products::{make_product_fn, ProductSpec};
use crate::slow::{make_slow_fn, SlowSpec};
use crate::young::{FlangeSpec, Partition, ThomaParams};

/// Parsed function specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnSpec {
    Table { path: String },
    Thoma { alpha: Vec<Rational>, beta: Vec<Rational> },
    Flange { k: usize, l: usize, nu: Partition, alpha: Vec<Rational>, beta: Vec<Rational>, scale: Rational },
    Product { w1: Rational, f1: Box<FnSpec>, f2: Box<FnSpec> },
    PinnedRight { f1: Box<FnSpec>, nu2: String },
    PinnedLeft { nu1: String, f2: Box<FnSpec> },
    Slow { w: Rational, f: Box<FnSpec> },
    SlowRootOnly,
    SlowPinnedVertex { nu: String, c: Rational },
    SlowPinnedLevel { m: usize, f: Box<FnSpec> },
}

/// Graph a specification is meant for when none is given.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefaultGraph {
    Young,
    YoungSquared,
    Slow,
    None,
}

impl FnSpec {
    pub fn default_graph(&self) -> DefaultGraph {
        match self {
            FnSpec::Table { .. } => DefaultGraph::None,
            FnSpec::Thoma { .. } | FnSpec::Flange { .. } => DefaultGraph::Young,
            FnSpec::Product { .. } | FnSpec::PinnedRight { .. } | FnSpec::PinnedLeft { .. } => DefaultGraph::YoungSquared,
            FnSpec::Slow { .. } | FnSpec::SlowRootOnly | FnSpec::SlowPinnedVertex { .. } | FnSpec::SlowPinnedLevel { .. } => {
                DefaultGraph::Slow
            }
        }
    }
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// A `key=value` piece with the byte offset of its value.
struct Segment<'a> {
    key: &'a str,
    value: String,
    pos: usize,
}

/// Splits at `;` outside parentheses, returning pieces with their offsets.
fn split_top(s: &str, base: usize) -> Result<Vec<(&str, usize)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(perr(base + i, "unbalanced ')'"));
                }
            }
            ';' if depth == 0 => {
                out.push((&s[start..i], base + start));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(perr(base + s.len(), "unbalanced '('"));
    }
    out.push((&s[start..], base + start));
    Ok(out)
}

fn strip_parens(s: &str) -> (&str, usize) {
    if s.starts_with('(') && s.ends_with(')') && s.len() >= 2 {
        (&s[1..s.len() - 1], 1)
    } else {
        (s, 0)
    }
}

/// Groups segments by the keys used by `family`; `nested` keys absorb unknown segments.
fn segments<'a>(body: &'a str, base: usize, keys: &[&str], nested: &[&str]) -> Result<Vec<Segment<'a>>> {
    let mut out: Vec<Segment<'a>> = Vec::new();
    if body.is_empty() {
        return Ok(out);
    }
    for (piece, pos) in split_top(body, base)? {
        let key = piece.split_once('=').map(|(k, _)| k);
        match key {
            Some(k) if keys.contains(&k) && !out.iter().any(|s| s.key == k) => {
                out.push(Segment { key: k, value: piece[k.len() + 1..].to_string(), pos: pos + k.len() + 1 });
            }
            _ => match out.last_mut() {
                Some(last) if nested.contains(&last.key) && !last.value.starts_with('(') => {
                    last.value.push(';');
                    last.value.push_str(piece);
                }
                _ => return Err(perr(pos, format!("unexpected segment {piece:?}"))),
            },
        }
    }
    Ok(out)
}

fn take<'s, 'a>(segs: &'s [Segment<'a>], key: &str, end: usize) -> Result<&'s Segment<'a>> {
    segs.iter().find(|s| s.key == key).ok_or_else(|| perr(end, format!("missing {key}=")))
}

fn rational(s: &str, pos: usize) -> Result<Rational> {
    parse_rational(s).map_err(|_| perr(pos, format!("bad number {s:?}")))
}

fn rational_list(s: &str, pos: usize) -> Result<Vec<Rational>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for item in s.split(',') {
        out.push(rational(item, pos + offset)?);
        offset += item.len() + 1;
    }
    Ok(out)
}

fn integer(s: &str, pos: usize) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(perr(pos, format!("bad integer {s:?}")));
    }
    s.parse().map_err(|_| perr(pos, format!("bad integer {s:?}")))
}

fn nested(seg: &Segment<'_>) -> Result<Box<FnSpec>> {
    let (inner, shift) = strip_parens(&seg.value);
    Ok(Box::new(parse_at(inner, seg.pos + shift)?))
}

/// Parses a specification; errors carry the byte offset of the problem.
pub fn parse(input: &str) -> Result<FnSpec> {
    parse_at(input, 0)
}

fn parse_at(input: &str, base: usize) -> Result<FnSpec> {
    let (family, body, body_pos) = match input.split_once(':') {
        Some((f, b)) => (f, b, base + f.len() + 1),
        None => (input, "", base + input.len()),
    };
    let end = base + input.len();
    match family {
        "table" => {
            if body.is_empty() {
                return Err(perr(body_pos, "missing file name"));
            }
            Ok(FnSpec::Table { path: body.to_string() })
        }
        "thoma" => {
            let segs = segments(body, body_pos, &["a", "b"], &[])?;
            let list = |key| match segs.iter().find(|s| s.key == key) {
                Some(s) => rational_list(&s.value, s.pos),
                None => Ok(Vec::new()),
            };
            Ok(FnSpec::Thoma { alpha: list("a")?, beta: list("b")? })
        }
        "flange" => parse_flange(body, body_pos, end),
        "product" => {
            let segs = segments(body, body_pos, &["w1", "f1", "f2"], &["f1", "f2"])?;
            let w = take(&segs, "w1", end)?;
            Ok(FnSpec::Product {
                w1: rational(&w.value, w.pos)?,
                f1: nested(take(&segs, "f1", end)?)?,
                f2: nested(take(&segs, "f2", end)?)?,
            })
        }
        "prod-case2" => {
            let segs = segments(body, body_pos, &["f1", "nu2"], &["f1"])?;
            Ok(FnSpec::PinnedRight { f1: nested(take(&segs, "f1", end)?)?, nu2: take(&segs, "nu2", end)?.value.clone() })
        }
        "prod-case3" => {
            let segs = segments(body, body_pos, &["nu1", "f2"], &["f2"])?;
            Ok(FnSpec::PinnedLeft { nu1: take(&segs, "nu1", end)?.value.clone(), f2: nested(take(&segs, "f2", end)?)? })
        }
        "slow" => {
            let segs = segments(body, body_pos, &["w", "f"], &["f"])?;
            let w = take(&segs, "w", end)?;
            Ok(FnSpec::Slow { w: rational(&w.value, w.pos)?, f: nested(take(&segs, "f", end)?)? })
        }
        "slow-fin2" => {
            if !body.is_empty() {
                return Err(perr(body_pos, "slow-fin2 takes no parameters"));
            }
            Ok(FnSpec::SlowRootOnly)
        }
        "slow-case2" => {
            let segs = segments(body, body_pos, &["nu", "c"], &[])?;
            let c = match segs.iter().find(|s| s.key == "c") {
                Some(s) => rational(&s.value, s.pos)?,
                None => Rational::from_integer(1.into()),
            };
            Ok(FnSpec::SlowPinnedVertex { nu: take(&segs, "nu", end)?.value.clone(), c })
        }
        "slow-case3" => {
            let segs = segments(body, body_pos, &["m", "f"], &["f"])?;
            let m = take(&segs, "m", end)?;
            Ok(FnSpec::SlowPinnedLevel { m: integer(&m.value, m.pos)?, f: nested(take(&segs, "f", end)?)? })
        }
        other => Err(perr(base, format!("unknown family {other:?}"))),
    }
}

fn parse_flange(body: &str, body_pos: usize, end: usize) -> Result<FnSpec> {
    let pieces = split_top(body, body_pos)?;
    let (shape, shape_pos) = pieces[0];
    let mut k = None;
    let mut l = None;
    let mut nu = None;
    let mut rest = shape;
    let mut pos = shape_pos;
    while !rest.is_empty() {
        if let Some(v) = rest.strip_prefix("nu=") {
            nu = Some(v.parse::<Partition>().map_err(|_| perr(pos + 3, format!("bad partition {v:?}")))?);
            break;
        }
        let (item, tail) = rest.split_once(',').unwrap_or((rest, ""));
        let (key, value) = item.split_once('=').ok_or_else(|| perr(pos, format!("expected key=value, got {item:?}")))?;
        let n = integer(value, pos + key.len() + 1)?;
        match key {
            "k" => k = Some(n),
            "l" => l = Some(n),
            _ => return Err(perr(pos, format!("unknown flange key {key:?}"))),
        }
        pos += item.len() + 1;
        rest = tail;
    }
    let segs = segments_from(&pieces[1..], &["a", "b", "c"])?;
    let list = |key| match segs.iter().find(|s| s.key == key) {
        Some(s) => rational_list(&s.value, s.pos),
        None => Ok(Vec::new()),
    };
    let scale = match segs.iter().find(|s| s.key == "c") {
        Some(s) => rational(&s.value, s.pos)?,
        None => Rational::from_integer(1.into()),
    };
    Ok(FnSpec::Flange {
        k: k.ok_or_else(|| perr(end, "missing k="))?,
        l: l.ok_or_else(|| perr(end, "missing l="))?,
        nu: nu.ok_or_else(|| perr(end, "missing nu="))?,
        alpha: list("a")?,
        beta: list("b")?,
        scale,
    })
}

fn segments_from<'a>(pieces: &[(&'a str, usize)], keys: &[&str]) -> Result<Vec<Segment<'a>>> {
    let mut out: Vec<Segment<'a>> = Vec::new();
    for &(piece, pos) in pieces {
        match piece.split_once('=') {
            Some((k, v)) if keys.contains(&k) && !out.iter().any(|s| s.key == k) => {
                out.push(Segment { key: k, value: v.to_string(), pos: pos + k.len() + 1 });
            }
            _ => return Err(perr(pos, format!("unexpected segment {piece:?}"))),
        }
    }
    Ok(out)
}

/// Reads `label<TAB>value` lines; a `vertex<TAB>value` header and blank lines are skipped.
pub fn read_table(graph: Arc<GradedGraph>, path: &Path) -> Result<HarmonicFn> {
    let text = std::fs::read_to_string(path)?;
    parse_table(graph, &text)
}

pub fn parse_table(graph: Arc<GradedGraph>, text: &str) -> Result<HarmonicFn> {
    let mut rows = Vec::new();
    let mut pos = 0;
    for (i, line) in text.lines().enumerate() {
        let here = pos;
        pos += line.len() + 1;
        if line.trim().is_empty() || (i == 0 && line == "vertex\tvalue") {
            continue;
        }
        let (label, value) = line.split_once('\t').ok_or_else(|| perr(here, "expected label<TAB>value"))?;
        let value: ExtValue = value.parse().map_err(|_| perr(here + label.len() + 1, format!("bad value {value:?}")))?;
        rows.push((label.to_string(), value));
    }
    HarmonicFn::from_labels(graph, &rows)
}

/// Builds the function on `graph`; product and slow families use its factors.
pub fn build(spec: &FnSpec, graph: Arc<GradedGraph>) -> Result<HarmonicFn> {
    let factors = || {
        graph
            .product()
            .map(|p| (p.left.clone(), p.right.clone()))
            .ok_or_else(|| Error::InvalidParams(format!("{} is not a product graph", graph.name())))
    };
    match spec {
        FnSpec::Table { path } => read_table(graph, Path::new(path)),
        FnSpec::Thoma { alpha, beta } => HarmonicFn::thoma(graph, ThomaParams::new(alpha.clone(), beta.clone())?),
        FnSpec::Flange { k, l, nu, alpha, beta, scale } => {
            let params = ThomaParams::new(alpha.clone(), beta.clone())?;
            HarmonicFn::flange(graph, FlangeSpec::new(*k, *l, nu.clone(), params)?, scale.clone())
        }
        FnSpec::Product { w1, f1, f2 } => {
            let (g1, g2) = factors()?;
            let spec = ProductSpec::weighted(w1.clone(), Arc::new(build(f1, g1)?), Arc::new(build(f2, g2)?))?;
            make_product_fn(spec, graph)
        }
        FnSpec::PinnedRight { f1, nu2 } => {
            let (g1, g2) = factors()?;
            let nu = g2.resolve(nu2)?;
            make_product_fn(ProductSpec::pinned_right(Arc::new(build(f1, g1)?), g2, nu)?, graph)
        }
        FnSpec::PinnedLeft { nu1, f2 } => {
            let (g1, g2) = factors()?;
            let nu = g1.resolve(nu1)?;
            make_product_fn(ProductSpec::pinned_left(g1, nu, Arc::new(build(f2, g2)?))?, graph)
        }
        FnSpec::Slow { w, f } => {
            let (_, gamma) = factors()?;
            make_slow_fn(SlowSpec::weighted(w.clone(), Arc::new(build(f, gamma)?))?, graph)
        }
        FnSpec::SlowRootOnly => {
            let (_, gamma) = factors()?;
            make_slow_fn(SlowSpec::root_only(gamma)?, graph)
        }
        FnSpec::SlowPinnedVertex { nu, c } => {
            let (_, gamma) = factors()?;
            let v = gamma.resolve(nu)?;
            make_slow_fn(SlowSpec::pinned_vertex(gamma, v, c.clone())?, graph)
        }
        FnSpec::SlowPinnedLevel { m, f } => {
            let (_, gamma) = factors()?;
            make_slow_fn(SlowSpec::pinned_level(*m, Arc::new(build(f, gamma)?))?, graph)
        }
    }
}
