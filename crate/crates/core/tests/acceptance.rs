//! Acceptance criteria, one pass/fail line each.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use bratteli::extnum::{rat, ExtValue, Rational};
use bratteli::graph::{nat_graph, pascal_graph, GradedGraph, VertexId};
use bratteli::harmonic::{boyer_check, extend_from_ideal, harmonicity_residuals, kernel, support, HarmonicFn, ResidualStatus};
use bratteli::ideals::{principal_ideal, SetKind, VertexSet};
use bratteli::products::{direct_product, make_product_fn, recover_weights, ProductSpec, Side};
use bratteli::slow::classify_slow_spec;
use bratteli::suite::{
    boyer_divergence_instance, boyer_equality_instance, first_exceeding, pascal_coords, random_pairs, slow_panel,
    tail_enclosure, thoma_panel, weighted_thoma_product, worked_series,
};
use bratteli::young::{partition_of, young_graph, FlangeSpec, Partition, ThomaParams};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn young(n: usize) -> Arc<GradedGraph> {
    Arc::new(young_graph(n))
}

fn int(n: u128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `C(n, k)` by the multiplicative formula in machine integers.
fn choose(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `n! / ∏ hooks` from the diagram itself.
fn hook_formula(parts: &[usize]) -> u128 {
    let n: usize = parts.iter().sum();
    let conj: Vec<usize> = (0..parts.first().copied().unwrap_or(0)).map(|j| parts.iter().filter(|&&p| p > j).count()).collect();
    let mut hooks: u128 = 1;
    for (i, &row) in parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            hooks *= (row - j + col - i - 1) as u128;
        }
    }
    (1..=n as u128).product::<u128>() / hooks
}

fn path_count(g: &GradedGraph, a: VertexId, b: VertexId) -> Result<Rational, String> {
    Ok(g.enumerate_paths(a, b, 10_000_000).map_err(e)?.into_iter().map(|p| p.weight).sum())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let y6 = young(6);
    let p8 = pascal_graph(8);
    let yy = direct_product(young(5), young(5), 5).map_err(e)?;
    for (name, g) in [("young<=6", y6.as_ref()), ("pascal<=8", &p8), ("young*young<=5", &yy)] {
        for (mu, nu) in random_pairs(g, 300, &mut rng) {
            let dp = g.shifted_dim(mu, nu).map_err(e)?;
            let brute = path_count(g, mu, nu)?;
            ensure(dp == brute, || format!("{name}: dim({},{}) = {dp}, paths give {brute}", g.label(mu), g.label(nu)))?;
        }
    }
    let p12 = pascal_graph(12);
    for v in p12.vertices() {
        let (i, j) = pascal_coords(&p12, v);
        let expected = int(choose((i + j) as u128, i as u128));
        ensure(p12.dim(v).map_err(e)? == expected, || format!("pascal dim at {}", p12.label(v)))?;
    }
    let y8 = young(8);
    for v in y8.vertices() {
        let expected = int(hook_formula(partition_of(&y8, v).parts()));
        ensure(y8.dim(v).map_err(e)? == expected, || format!("young dim at {}", y8.label(v)))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("900 random pairs, {} pascal and {} young vertices in {took:.2?}", p12.vertex_count(), y8.vertex_count()))
}

fn criterion_2() -> Outcome {
    let yy = direct_product(young(5), young(5), 5).map_err(e)?;
    let ny = direct_product(Arc::new(nat_graph(6)), young(6), 6).map_err(e)?;
    let mut checked = 0;
    for g in [&yy, &ny] {
        let info = g.product().expect("product");
        let mut memo: HashMap<(bool, VertexId, VertexId), Rational> = HashMap::new();
        let mut factor_dim = |left: bool, a: VertexId, b: VertexId| -> Result<Rational, String> {
            if let Some(x) = memo.get(&(left, a, b)) {
                return Ok(x.clone());
            }
            let f = if left { &info.left } else { &info.right };
            let x = path_count(f, a, b)?;
            memo.insert((left, a, b), x.clone());
            Ok(x)
        };
        let all: Vec<VertexId> = g.vertices().collect();
        for &mu in &all {
            for &lambda in &all {
                let (m1, m2) = info.coords(g, mu);
                let (l1, l2) = info.coords(g, lambda);
                let expected = if l1.level < m1.level || l2.level < m2.level {
                    Rational::zero()
                } else {
                    let (d1, d2) = (l1.level - m1.level, l2.level - m2.level);
                    int(choose((d1 + d2) as u128, d1 as u128)) * factor_dim(true, m1, l1)? * factor_dim(false, m2, l2)?
                };
                let got = g.shifted_dim(mu, lambda).map_err(e)?;
                ensure(got == expected, || format!("{}: dim({},{}) = {got}, expected {expected}", g.name(), g.label(mu), g.label(lambda)))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs factorize"))
}

fn no_violations(name: &str, f: &HarmonicFn, level: usize, infinite: &mut usize) -> Result<(), String> {
    for r in harmonicity_residuals(f, level).map_err(e)? {
        ensure(r.status != ResidualStatus::Violated, || {
            format!("{name}: violated at {} ({} vs {})", f.graph().label(r.vertex), r.lhs, r.rhs)
        })?;
        if r.lhs.is_infinite() {
            ensure(r.status == ResidualStatus::InfiniteConsistent, || format!("{name}: infinite value not consistent"))?;
            *infinite += 1;
        }
    }
    Ok(())
}

fn flange_panel(y: &Arc<GradedGraph>) -> Result<Vec<(String, Arc<HarmonicFn>)>, String> {
    let cases: [(usize, usize, Vec<usize>, Vec<Rational>, Vec<Rational>); 4] = [
        (1, 1, vec![1], vec![rat(1, 2)], vec![rat(1, 2)]),
        (2, 0, vec![2, 1], vec![rat(1, 2), rat(1, 2)], vec![]),
        (0, 1, vec![1, 1], vec![], vec![rat(1, 1)]),
        (4, 3, vec![5, 5, 2, 2, 1], vec![rat(1, 8); 4], vec![rat(1, 6); 3]),
    ];
    let mut out = Vec::new();
    for (k, l, nu, a, b) in cases {
        let name = format!("flange k={k} l={l} nu={nu:?}");
        let spec = FlangeSpec::new(k, l, Partition::new(nu).map_err(e)?, ThomaParams::new(a, b).map_err(e)?).map_err(e)?;
        out.push((name, Arc::new(HarmonicFn::flange(y.clone(), spec, Rational::one()).map_err(e)?)));
    }
    Ok(out)
}

fn ones(g: &Arc<GradedGraph>) -> Result<Arc<HarmonicFn>, String> {
    Ok(Arc::new(HarmonicFn::table(g.clone(), vec![ExtValue::one(); g.vertex_count()]).map_err(e)?))
}

/// Product functions of all three shapes, with finite and semifinite factors.
fn product_panel(level: usize) -> Result<Vec<(String, HarmonicFn)>, String> {
    let y = young(level);
    let n = Arc::new(nat_graph(level));
    let thoma = |p: ThomaParams| -> Result<Arc<HarmonicFn>, String> { Ok(Arc::new(HarmonicFn::thoma(y.clone(), p).map_err(e)?)) };
    let t1 = thoma(ThomaParams::new(vec![rat(1, 2)], vec![rat(1, 3)]).map_err(e)?)?;
    let t2 = thoma(ThomaParams::new(vec![rat(1, 1)], vec![]).map_err(e)?)?;
    let fl = flange_panel(&y)?.remove(0).1;
    let yy = Arc::new(direct_product(y.clone(), y.clone(), level).map_err(e)?);
    let ny = Arc::new(direct_product(n.clone(), y.clone(), level).map_err(e)?);
    let one = ones(&n)?;
    let specs: Vec<(&str, ProductSpec, &Arc<GradedGraph>)> = vec![
        ("yy weighted thoma", ProductSpec::weighted(rat(1, 3), t1.clone(), t2.clone()).map_err(e)?, &yy),
        ("yy weighted flange", ProductSpec::weighted(rat(1, 2), fl.clone(), t1.clone()).map_err(e)?, &yy),
        ("yy weighted flange^2", ProductSpec::weighted(rat(2, 5), fl.clone(), fl.clone()).map_err(e)?, &yy),
        ("yy pinned-right", ProductSpec::pinned_right(t2.clone(), y.clone(), y.vertex("1").map_err(e)?).map_err(e)?, &yy),
        ("yy pinned-right flange", ProductSpec::pinned_right(fl.clone(), y.clone(), y.vertex("2,1").map_err(e)?).map_err(e)?, &yy),
        ("yy pinned-left", ProductSpec::pinned_left(y.clone(), y.vertex("1,1").map_err(e)?, t1.clone()).map_err(e)?, &yy),
        ("yy pinned-left root", ProductSpec::pinned_left(y.clone(), y.vertex("").map_err(e)?, t1.clone()).map_err(e)?, &yy),
        ("ny weighted thoma", ProductSpec::weighted(rat(1, 2), one.clone(), t1.clone()).map_err(e)?, &ny),
        ("ny weighted flange", ProductSpec::weighted(rat(1, 3), one.clone(), fl.clone()).map_err(e)?, &ny),
        ("ny pinned-right", ProductSpec::pinned_right(one.clone(), y.clone(), y.vertex("1").map_err(e)?).map_err(e)?, &ny),
        ("ny pinned-left", ProductSpec::pinned_left(n.clone(), n.vertex("2").map_err(e)?, t2.clone()).map_err(e)?, &ny),
    ];
    specs
        .into_iter()
        .map(|(name, spec, g)| Ok((name.to_string(), make_product_fn(spec, g.clone()).map_err(e)?)))
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let y = young(7);
    let mut infinite = 0;
    let mut count = 0;
    for (i, p) in thoma_panel().into_iter().enumerate() {
        no_violations(&format!("thoma #{i}"), &HarmonicFn::thoma(y.clone(), p).map_err(e)?, 6, &mut infinite)?;
        count += 1;
    }
    for (name, f) in product_panel(7)? {
        no_violations(&name, &f, 6, &mut infinite)?;
        count += 1;
    }
    for (name, f) in flange_panel(&y)? {
        no_violations(&name, &f, 6, &mut infinite)?;
        count += 1;
    }
    let panel = slow_panel(7, 6).map_err(e)?;
    let families: std::collections::BTreeSet<&str> = panel.iter().map(|c| c.expected.name()).collect();
    ensure(families.len() == 4, || format!("slow panel covers {families:?}"))?;
    for case in &panel {
        no_violations(&case.name, &case.function, 6, &mut infinite)?;
        count += 1;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{count} functions, {infinite} infinite-consistent rows, no violations, {took:.2?}"))
}

fn criterion_4() -> Outcome {
    let y = young(7);
    for (i, p) in thoma_panel().into_iter().enumerate() {
        let f = HarmonicFn::thoma(y.clone(), p).map_err(e)?;
        for n in 0..=7 {
            let mass: Rational = y
                .level(n)
                .map(|v| int(hook_formula(partition_of(&y, v).parts())) * f.value(v).as_finite().expect("finite").clone())
                .sum();
            ensure(mass.is_one(), || format!("panel point {i}: level {n} mass {mass}"))?;
        }
    }
    let p = ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![]).map_err(e)?;
    let f = HarmonicFn::thoma(y.clone(), p).map_err(e)?;
    let worked = [("2,1", rat(1, 4)), ("3", rat(1, 2)), ("1,1,1", rat(0, 1))];
    let mut total = Rational::zero();
    for (label, expected) in worked {
        let got = f.eval_label(label).map_err(e)?;
        ensure(got == ExtValue::Finite(expected.clone()), || format!("s_({label}) = {got}"))?;
        total += int(hook_formula(&label.split(',').map(|s| s.parse().unwrap()).collect::<Vec<_>>())) * expected;
    }
    ensure(total.is_one(), || format!("worked level sums to {total}"))?;
    Ok("10 panel points normalized on levels 0..=7; worked level 3 sums to 1".into())
}

fn criterion_5() -> Outcome {
    let y = young(6);
    let n = Arc::new(nat_graph(6));
    let p1 = ThomaParams::new(vec![rat(1, 3)], vec![rat(1, 4), rat(1, 4)]).map_err(e)?;
    let p2 = ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![]).map_err(e)?;
    let mut checked = 0;
    for w1 in [rat(1, 3), rat(1, 2), rat(2, 5)] {
        let w2 = Rational::one() - &w1;
        for (g1, g2) in [(y.clone(), y.clone()), (n.clone(), y.clone())] {
            let f = weighted_thoma_product(g1, g2, 6, w1.clone(), p1.clone(), p2.clone()).map_err(e)?;
            for k1 in 0..=6 {
                for k2 in 0..=6 - k1 {
                    let mut expected = Rational::one();
                    for _ in 0..k1 {
                        expected *= &w1;
                    }
                    for _ in 0..k2 {
                        expected *= &w2;
                    }
                    let got = recover_weights(&f, k1, k2).map_err(e)?;
                    ensure(got == expected, || format!("w1={w1} ({k1},{k2}): {got} vs {expected}"))?;
                    checked += 1;
                }
            }
        }
        for side in [Side::Left, Side::Right] {
            let (ok, detail) = tail_enclosure(&w1, side, 40).map_err(e)?;
            ensure(ok, || format!("w1={w1} {side:?}: {detail}"))?;
        }
    }
    let depth = 20;
    let sums = worked_series(depth).map_err(e)?;
    for (m, s) in sums.iter().enumerate() {
        let expected = Rational::one() - Rational::new(BigInt::one(), BigInt::from(2u8).pow(m as u32 + 1));
        ensure(*s == expected, || format!("worked series M={m}: {s}"))?;
    }
    Ok(format!("{checked} weights exact; M=40 enclosures hold for both sides; worked series exact to M={depth}"))
}

fn criterion_6() -> Outcome {
    let inst = boyer_equality_instance(7).map_err(e)?;
    let report = boyer_check(&inst.ideal, inst.lambda, inst.lambda_prime, &inst.beta, 0..=6).map_err(e)?;
    ensure(!report.rows.is_empty(), || "no rows".into())?;
    for row in &report.rows {
        ensure(row.slack().is_zero(), || format!("slack {} at {}", row.slack(), inst.ideal.graph().label(row.eta)))?;
    }
    let bound = int(1000);
    let div = boyer_divergence_instance(1010).map_err(e)?;
    let (level, seq) = first_exceeding(&div, &bound).map_err(e)?;
    let level = level.ok_or_else(|| format!("stays below {bound} through level {}", div.ideal.horizon()))?;
    ensure(seq.windows(2).all(|w| w[0] <= w[1]), || "sequence decreases".into())?;
    Ok(format!("{} rows with zero slack; extension exceeds {bound} by level {level}", report.rows.len()))
}

/// `Σ_{μ∈I, |μ|=N}` of path counts times `inner`, read straight off path enumeration.
fn extension_by_paths(ideal: &VertexSet, inner: &HarmonicFn, target: VertexId, level: usize) -> Result<Rational, String> {
    let g = ideal.graph();
    let mut total = Rational::zero();
    for mu in g.level(level).filter(|&mu| ideal.contains(mu)) {
        let d = path_count(g, target, mu)?;
        if !d.is_zero() {
            total += d * inner.value(mu).as_finite().expect("finite inner").clone();
        }
    }
    Ok(total)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let y = young(8);
    let p = Arc::new(pascal_graph(8));
    let panel = thoma_panel();
    let mut inside = 0;
    for trial in 0..100 {
        let g = if trial % 4 == 3 { p.clone() } else { y.clone() };
        let gens: Vec<VertexId> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let level = rng.gen_range(1..=4);
                VertexId::new(level, rng.gen_range(0..g.level_sizes()[level]))
            })
            .collect();
        let mut bits = fixedbitset::FixedBitSet::with_capacity(g.vertex_count());
        for &v in &gens {
            bits.union_with(principal_ideal(g.clone(), v).map_err(e)?.bits());
        }
        let ideal = VertexSet::new(g.clone(), bits, SetKind::Ideal, g.max_level()).map_err(e)?;
        let inner = if Arc::ptr_eq(&g, &y) {
            HarmonicFn::thoma(g.clone(), panel[rng.gen_range(0..panel.len())].clone()).map_err(e)?
        } else {
            // (i, j) ↦ a^i b^j with a + b = 1 is harmonic on the Pascal graph
            let a = rat(rng.gen_range(1..=4), 5);
            let b = Rational::one() - &a;
            let values = g
                .vertices()
                .map(|v| {
                    let (i, j) = pascal_coords(&g, v);
                    let mut x = Rational::one();
                    for _ in 0..i {
                        x *= &a;
                    }
                    for _ in 0..j {
                        x *= &b;
                    }
                    ExtValue::Finite(x)
                })
                .collect();
            HarmonicFn::table(g.clone(), values).map_err(e)?
        };
        let level = rng.gen_range(0..=5);
        let target = VertexId::new(level, rng.gen_range(0..g.level_sizes()[level]));
        let seq: Vec<ExtValue> = (target.level..=8)
            .map(|n| extend_from_ideal(&ideal, &inner, target, n))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        ensure(seq.windows(2).all(|w| w[0] <= w[1]), || format!("trial {trial}: not monotone {seq:?}"))?;
        if ideal.contains(target) {
            inside += 1;
            ensure(seq.iter().all(|x| *x == inner.value(target)), || format!("trial {trial}: not constant inside the ideal"))?;
        }
        if trial % 10 == 0 {
            for (i, n) in (target.level..=8).enumerate() {
                let brute = ExtValue::Finite(extension_by_paths(&ideal, &inner, target, n)?);
                ensure(seq[i] == brute, || format!("trial {trial}: level {n} gives {} vs {brute}", seq[i]))?;
            }
        }
    }
    Ok(format!("100 instances monotone, {inside} with target inside the ideal constant"))
}

fn criterion_8() -> Outcome {
    let panel = slow_panel(7, 6).map_err(e)?;
    ensure(panel.len() >= 12, || format!("only {} specs", panel.len()))?;
    for case in &panel {
        let got = classify_slow_spec(&case.function, 6).map_err(e)?;
        ensure(got == case.expected, || format!("{} classified as {}", case.name, got.name()))?;
    }
    Ok(format!("{} specs round-trip", panel.len()))
}

fn closure_ok(set: &VertexSet, h: usize) -> bool {
    let g = set.graph();
    match set.kind() {
        SetKind::Ideal => set.members().filter(|v| v.level < h).all(|v| g.successors(v).all(|(w, _)| set.contains(w))),
        SetKind::Coideal => set.members().all(|v| g.predecessors(v).all(|(w, _)| set.contains(w))),
        SetKind::Plain => false,
    }
}

fn structure_ok(name: &str, f: &HarmonicFn, h: usize) -> Result<(), String> {
    let k = kernel(f, h).map_err(e)?;
    let s = support(f, h).map_err(e)?;
    ensure(k.kind() == SetKind::Ideal && closure_ok(&k, h), || format!("{name}: kernel is not an ideal"))?;
    ensure(s.kind() == SetKind::Coideal && closure_ok(&s, h), || format!("{name}: support is not a coideal"))?;
    ensure(s.is_saturated(h).map_err(e)?, || format!("{name}: support is not saturated"))?;
    ensure(s.is_primitive_coideal(h).map_err(e)?, || format!("{name}: support is not primitive"))?;
    Ok(())
}

fn criterion_9() -> Outcome {
    let h = 6;
    let y = young(7);
    let mut count = 0;
    for (i, p) in thoma_panel().into_iter().enumerate() {
        structure_ok(&format!("thoma #{i}"), &HarmonicFn::thoma(y.clone(), p).map_err(e)?, h)?;
        count += 1;
    }
    for (name, f) in flange_panel(&y)? {
        structure_ok(&name, &f, h)?;
        count += 1;
    }
    for (name, f) in product_panel(7)? {
        structure_ok(&name, &f, h)?;
        count += 1;
    }
    for case in slow_panel(7, h).map_err(e)? {
        structure_ok(&case.name, &case.function, h)?;
        count += 1;
    }

    let f1 = Arc::new(HarmonicFn::thoma(y.clone(), ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![]).map_err(e)?).map_err(e)?);
    let spec = FlangeSpec::new(2, 0, Partition::new(vec![2, 1]).map_err(e)?, ThomaParams::new(vec![rat(1, 2), rat(1, 2)], vec![]).map_err(e)?)
        .map_err(e)?;
    let f2 = Arc::new(HarmonicFn::flange(y.clone(), spec, Rational::one()).map_err(e)?);
    let yy = Arc::new(direct_product(y.clone(), y.clone(), 7).map_err(e)?);
    let f = make_product_fn(ProductSpec::weighted(rat(1, 3), f1.clone(), f2.clone()).map_err(e)?, yy.clone()).map_err(e)?;
    let (s, s1, s2) = (support(&f, h).map_err(e)?, support(&f1, 7).map_err(e)?, support(&f2, 7).map_err(e)?);
    let info = yy.product().expect("product");
    for v in yy.vertices().take_while(|v| v.level <= h) {
        let (a, b) = info.coords(&yy, v);
        ensure(s.contains(v) == (s1.contains(a) && s2.contains(b)), || format!("support differs at {}", yy.label(v)))?;
    }
    Ok(format!("{count} families structurally sound; weighted support factorizes"))
}

fn criterion_10() -> Outcome {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_bratteli")).args(["suite", "all", "--seed", "7"]).output().map_err(e)?;
        ensure(out.status.code() == Some(0), || format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stdout)))?;
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("dimension correctness", criterion_1),
        ("product dimension factorization", criterion_2),
        ("harmonicity suites", criterion_3),
        ("normalization", criterion_4),
        ("recovery round trip", criterion_5),
        ("dimension inequality equality instance", criterion_6),
        ("extension monotonicity", criterion_7),
        ("slow classification round trip", criterion_8),
        ("structural invariants", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
