use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Check, Mutation, Outcome, SuiteConfig};
use crate::auto::{
    base_independence_check, build_example_one, check_covering_preservation, check_intersection_preservation,
    check_order_preserving_on_samples, classify_case, order_sigma, reconstruct_component_map,
    reconstruct_order_preserving, verify_certificate, verify_restriction, AutomorphismOracle, CaseTag, OrderVerdict,
    SharedAutomorphism,
};
use crate::error::{Error, Result};
use crate::graph::{as_vertex, distance_johnson, kneser_distance, kneser_lower_bound, same_component, Vertex};
use crate::oracle::{
    aut_group_order, bfs_all, build_johnson_finite, build_kneser_finite, build_truncated_component,
    induced_permutation_finite, maximal_cliques, permutation_action, Budget, FiniteCliqueKind, FiniteGraph,
};
use crate::perm::{random_permutation_with, validate, ComputablePermutation, RandomPermConfig};
use crate::sample::{random_balanced, random_other_member, random_regular};
use crate::setalg::{canonicalize, PeriodicSet, RawPeriodicSet};

fn rng_for(config: &SuiteConfig, name: &str) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(config.seed ^ salt)
}

const PERM_BOUNDS: RandomPermConfig = RandomPermConfig {
    max_modulus: 6,
    max_offset: 3,
    max_patch: 8,
    seed: 0,
};

/// Runs `f` as an opaque map so the checks only see point queries.
fn opaque(f: SharedAutomorphism) -> SharedAutomorphism {
    Arc::new(AutomorphismOracle::black_box(f))
}

fn first_mismatch(
    q: impl Fn(u64) -> Result<u64>,
    expected: impl Fn(u64) -> u64,
    upto: u64,
) -> Result<Option<(u64, u64, u64)>> {
    for n in 1..=upto {
        let got = q(n)?;
        if got != expected(n) {
            return Ok(Some((n, expected(n), got)));
        }
    }
    Ok(None)
}

pub struct RoundTrip;

impl Check for RoundTrip {
    fn name(&self) -> &str {
        "theorem1.round_trip"
    }

    fn criterion(&self) -> &str {
        "random regular automorphisms: case matches the flip and σ equals the permutation on [1,128]"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mut rng = rng_for(config, self.name());
        for i in 0..100 {
            let flip = rng.gen_bool(0.5);
            let f = random_regular(&mut rng, &PERM_BOUNDS, flip)?;
            let a = random_balanced(&mut rng, 8, 6);
            let black_box = opaque(Arc::new(f.clone()));
            let witness = |extra: serde_json::Value| json!({"iteration": i, "perm": f.perm.spec(), "flip": flip, "base": a, "detail": extra});
            let case = classify_case(black_box.as_ref(), &a)?;
            if case != if flip { CaseTag::CaseB } else { CaseTag::CaseA } {
                return Ok(Outcome::fail(
                    "case does not match the flip",
                    witness(json!({"case": case})),
                ));
            }
            let (q, got_flip) = reconstruct_component_map(black_box, &a)?;
            if got_flip != flip {
                return Ok(Outcome::fail(
                    "reconstructed flip differs",
                    witness(json!({"got_flip": got_flip})),
                ));
            }
            if let Some((n, expected, got)) = first_mismatch(|n| q.apply(n), |n| f.perm.apply(n), 128)? {
                return Ok(Outcome::fail(
                    "σ differs from the generating permutation",
                    witness(json!({"n": n, "expected": expected, "got": got})),
                ));
            }
        }
        Ok(Outcome::pass("100 automorphisms reconstructed exactly on [1,128]"))
    }
}

pub struct ExampleOne;

impl Check for ExampleOne {
    fn name(&self) -> &str {
        "theorem1.non_regular"
    }

    fn criterion(&self) -> &str {
        "the piecewise automorphism is regular on J(A), the identity elsewhere, certified non-regular, and not order preserving"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mut rng = rng_for(config, self.name());
        let a = as_vertex(PeriodicSet::evens())?;
        let b = a.edit(&[2], &[1])?;
        let (f, cert) = build_example_one(&a, &b)?;
        let s = f.pieces()[0].1.clone();
        let f: SharedAutomorphism = Arc::new(f);

        let (q, flip) = reconstruct_component_map(opaque(f.clone()), &a)?;
        if flip {
            return Ok(Outcome::fail(
                "J(A) reconstructed as order reversing",
                json!({"base": a}),
            ));
        }
        if let Some((n, expected, got)) = first_mismatch(|n| q.apply(n), |n| s.apply(n), 128)? {
            return Ok(Outcome::fail(
                "σ on J(A) differs from s",
                json!({"base": a, "n": n, "expected": expected, "got": got}),
            ));
        }
        let inside: Vec<Vertex> = (0..8)
            .map(|_| random_other_member(&mut rng, &a, 4, 32))
            .collect::<Result<_>>()?;
        let report = verify_restriction(f.as_ref(), &q, false, &inside);
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Ok(Outcome::fail("f(U) differs from σ(U) inside J(A)", json!(bad)));
        }

        let mut others = 0;
        while others < 5 {
            let x = random_balanced(&mut rng, 8, 6);
            if same_component(&x, &a) {
                continue;
            }
            others += 1;
            let (q, flip) = reconstruct_component_map(opaque(f.clone()), &x)?;
            let mismatch = first_mismatch(|n| q.apply(n), |n| n, 128)?;
            if flip || mismatch.is_some() {
                return Ok(Outcome::fail(
                    "another component is not reconstructed as the identity",
                    json!({"base": x, "flip": flip, "mismatch": mismatch}),
                ));
            }
        }

        if !verify_certificate(f.as_ref(), &cert) {
            return Ok(Outcome::fail("certificate rejected", json!(cert)));
        }
        match check_order_preserving_on_samples(f.as_ref(), &[(cert.y.clone(), cert.a.clone())])? {
            OrderVerdict::AllPass => Ok(Outcome::fail("no order violation found", json!(cert))),
            OrderVerdict::Violation { .. } => Ok(Outcome::pass(
                "σ = s on J(A), identity on 5 other components, certificate verified, order violation found",
            )),
        }
    }
}

pub struct BaseIndependence;

impl Check for BaseIndependence {
    fn name(&self) -> &str {
        "lemma3.base_independence"
    }

    fn criterion(&self) -> &str {
        "σ does not depend on the base vertex within a component, on [1,64]"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mut rng = rng_for(config, self.name());
        let ns: Vec<u64> = (1..=64).collect();
        for i in 0..20 {
            let flip = rng.gen_bool(0.5);
            let f = random_regular(&mut rng, &PERM_BOUNDS, flip)?;
            let shared = opaque(Arc::new(f.clone()));
            for _ in 0..2 {
                let a = random_balanced(&mut rng, 8, 6);
                let x = random_other_member(&mut rng, &a, 4, 32)?;
                if !base_independence_check(&shared, &a, &x, &ns)? {
                    return Ok(Outcome::fail(
                        "bases disagree",
                        json!({"iteration": i, "perm": f.perm.spec(), "flip": flip, "a": a, "x": x}),
                    ));
                }
            }
        }
        Ok(Outcome::pass(
            "20 automorphisms, 2 components each, bases agree on [1,64]",
        ))
    }
}

pub struct OrderPreserving;

impl OrderPreserving {
    fn admissible_family<R: Rng>(rng: &mut R) -> Vec<Vertex> {
        loop {
            let core = random_balanced(rng, 6, 6);
            let size = rng.gen_range(2..=3);
            let family: Option<Vec<Vertex>> = (0..size)
                .map(|_| {
                    let extra = random_balanced(rng, 6, 6);
                    core.set().union(extra.set()).ok().and_then(|u| as_vertex(u).ok())
                })
                .collect();
            if let Some(family) = family {
                return family;
            }
        }
    }
}

impl Check for OrderPreserving {
    fn name(&self) -> &str {
        "theorem2.order_preserving"
    }

    fn criterion(&self) -> &str {
        "order-preserving reconstruction recovers s; flips have no order σ; regular maps preserve meets and coverings"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mut rng = rng_for(config, self.name());
        for i in 0..50 {
            let f = random_regular(&mut rng, &PERM_BOUNDS, false)?;
            let q = reconstruct_order_preserving(opaque(Arc::new(f.clone())), 128)?;
            if let Some((n, expected, got)) = first_mismatch(|n| q.apply(n), |n| f.perm.apply(n), 128)? {
                return Ok(Outcome::fail(
                    "order σ differs from s",
                    json!({"iteration": i, "perm": f.perm.spec(), "n": n, "expected": expected, "got": got}),
                ));
            }
        }
        for i in 0..50 {
            let f = random_regular(&mut rng, &PERM_BOUNDS, true)?;
            let caught = (1..=8).any(|n| matches!(order_sigma(&f, n), Err(Error::NotSingletonIntersection { .. })));
            if !caught {
                return Ok(Outcome::fail(
                    "flip automorphism yields singleton intersections for n <= 8",
                    json!({"iteration": i, "perm": f.perm.spec()}),
                ));
            }
        }
        let mut f = random_regular(&mut rng, &PERM_BOUNDS, false)?;
        for i in 0..200 {
            if i % 10 == 0 {
                f = random_regular(&mut rng, &PERM_BOUNDS, false)?;
            }
            let family = Self::admissible_family(&mut rng);
            if !check_intersection_preservation(&f, &family)? {
                return Ok(Outcome::fail(
                    "f(∩ X_i) differs from ∩ f(X_i)",
                    json!({"perm": f.perm.spec(), "family": family}),
                ));
            }
            let x = random_balanced(&mut rng, 8, 6);
            let pool = x.set().elements_upto(48);
            let dropped = *pool.choose(&mut rng).unwrap_or(&x.min_element());
            let y = x.edit(&[dropped], &[])?;
            if !check_covering_preservation(&f, &x, &y)? {
                return Ok(Outcome::fail(
                    "covering pair not preserved",
                    json!({"perm": f.perm.spec(), "x": x, "y": y}),
                ));
            }
        }
        Ok(Outcome::pass(
            "50 reconstructions exact on [1,128], 50 flips rejected, 200 meet and covering inputs preserved",
        ))
    }
}

pub struct FiniteOracles;

/// Per-item limit on oracle computations.
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(30);

fn all_permutations(n: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for x in 1..=n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, x);
                    q
                })
            })
            .collect();
    }
    out
}

impl Check for FiniteOracles {
    fn name(&self) -> &str {
        "oracle.finite_ground_truth"
    }

    fn criterion(&self) -> &str {
        "|Aut J(5,2)| = 120, |Aut J(6,3)| = 1440, |Aut K(5,2)| = 120; J(5,2) has 5 stars and 10 tops; S_5 round-trips"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mutate = |mut g: FiniteGraph| -> Result<FiniteGraph> {
            if config.mutation == Some(Mutation::FlipAdjacencyBit) {
                g.flip_edge(0, 1)?;
            }
            Ok(g)
        };
        let j52 = mutate(build_johnson_finite(5, 2)?)?;
        let cases = [
            ("J(5,2)", j52.clone(), 120),
            ("J(6,3)", mutate(build_johnson_finite(6, 3)?)?, 1440),
            ("K(5,2)", mutate(build_kneser_finite(5, 2)?)?, 120),
        ];
        for (label, g, expected) in &cases {
            let start = Instant::now();
            let order = aut_group_order(g, Budget::default())?;
            let elapsed = start.elapsed();
            if order != *expected || elapsed > ORACLE_TIME_LIMIT {
                return Ok(Outcome::fail(
                    format!("automorphism count of {label}"),
                    json!({"graph": label, "expected": expected, "got": order, "millis": elapsed.as_millis()}),
                ));
            }
        }

        let cliques = maximal_cliques(&j52)?;
        let stars = cliques
            .iter()
            .filter(|c| matches!(c.kind, FiniteCliqueKind::Star(_)) && c.members.len() == 4)
            .count();
        let tops = cliques
            .iter()
            .filter(|c| matches!(c.kind, FiniteCliqueKind::Top(_)) && c.members.len() == 3)
            .count();
        if (stars, tops, cliques.len()) != (5, 10, 15) {
            return Ok(Outcome::fail(
                "maximal cliques of J(5,2)",
                json!({"stars": stars, "tops": tops, "total": cliques.len(), "cliques": cliques}),
            ));
        }

        let start = Instant::now();
        for perm in all_permutations(5) {
            let phi = permutation_action(&j52, &perm)?;
            let recovered = induced_permutation_finite(&j52, &phi);
            match recovered {
                Ok(r) if r.perm == perm && !r.complemented => {}
                other => {
                    return Ok(Outcome::fail(
                        "induced permutation does not round-trip",
                        json!({"perm": perm, "recovered": format!("{other:?}")}),
                    ))
                }
            }
        }
        if start.elapsed() > ORACLE_TIME_LIMIT {
            return Ok(Outcome::fail(
                "S_5 round trip too slow",
                json!({"millis": start.elapsed().as_millis()}),
            ));
        }
        Ok(Outcome::pass(
            "automorphism counts 120/1440/120, 5 stars + 10 tops, 120 permutations recovered",
        ))
    }
}

pub struct DistanceLaw;

impl Check for DistanceLaw {
    fn name(&self) -> &str {
        "graph.distance_law"
    }

    fn criterion(&self) -> &str {
        "BFS distance equals |X \\ Y| for every pair in the radius-3 truncation of J(Evens) on [1,16]"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let evens = as_vertex(PeriodicSet::evens())?;
        let mut g = build_truncated_component(&evens, 16, 3)?;
        if config.mutation == Some(Mutation::FlipAdjacencyBit) {
            let far = bfs_all(&g, 0)?
                .iter()
                .position(|&d| d == Some(2))
                .expect("radius 3 has distance 2");
            g.flip_edge(0, far)?;
        }
        let vertices: Vec<Vertex> = (0..g.vertex_count()).map(|u| g.vertex(u)).collect::<Result<_>>()?;
        let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).min(16);
        let chunk = vertices.len().div_ceil(threads);
        let results: Vec<Result<Option<serde_json::Value>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let (g, vertices) = (&g, &vertices);
                    scope.spawn(move || -> Result<Option<serde_json::Value>> {
                        for u in t * chunk..((t + 1) * chunk).min(vertices.len()) {
                            let dist = bfs_all(g, u)?;
                            for (v, d) in dist.iter().enumerate() {
                                let formula = distance_johnson(&vertices[u], &vertices[v])?;
                                if *d != Some(formula) {
                                    return Ok(Some(json!({
                                        "x": vertices[u], "y": vertices[v], "bfs": d, "formula": formula
                                    })));
                                }
                            }
                        }
                        Ok(None)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("distance worker panicked"))
                .collect()
        });
        for r in results {
            if let Some(witness) = r? {
                return Ok(Outcome::fail("BFS distance differs from |X \\ Y|", witness));
            }
        }
        let n = vertices.len();
        Ok(Outcome::pass(format!("{n} vertices, {} ordered pairs agree", n * n)))
    }
}

pub struct KneserMetric;

impl KneserMetric {
    fn pair<R: Rng>(rng: &mut R) -> Result<(Vertex, Vertex)> {
        let x = random_balanced(rng, 8, 6);
        let y = match rng.gen_range(0..4) {
            0 => x.clone(),
            1 => {
                let (half, rest) = x.set().complement().split_infinite()?;
                as_vertex(if rng.gen() { half } else { rest })?
            }
            2 => random_balanced(rng, 8, 6),
            _ => {
                let pool = x.set().elements_upto(40);
                let take = rng.gen_range(1..=pool.len().clamp(1, 4));
                let extra: Vec<u64> = pool.choose_multiple(rng, take).copied().collect();
                as_vertex(x.set().complement().with(&extra)?)?
            }
        };
        Ok((x, y))
    }

    /// Lower bound from first principles: distinct sets need one step,
    /// intersecting sets two, and a common neighbour lives in `N \ (X ∪ Y)`.
    fn lower_bound(x: &Vertex, y: &Vertex) -> Result<usize> {
        Ok(if x == y {
            0
        } else if x.set().inter(y.set())?.is_empty() {
            1
        } else if x.set().union(y.set())?.complement().is_finite() {
            3
        } else {
            2
        })
    }
}

impl Check for KneserMetric {
    fn name(&self) -> &str {
        "kneser.metric"
    }

    fn criterion(&self) -> &str {
        "Kneser distances lie in {0..3}, come with valid paths, meet the lower bound, and 3 is attained"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mut rng = rng_for(config, self.name());
        let mut histogram = [0usize; 4];
        let evens = as_vertex(PeriodicSet::evens())?;
        let constructed = (evens.clone(), as_vertex(PeriodicSet::odds().with(&[2])?)?);
        let mut pairs = vec![constructed.clone()];
        for _ in 0..1000 {
            pairs.push(Self::pair(&mut rng)?);
        }
        for (i, (x, y)) in pairs.iter().enumerate() {
            let path = kneser_distance(x, y)?;
            let bound = Self::lower_bound(x, y)?;
            let ok = path.distance <= 3
                && path.is_valid()
                && path.vertices.first() == Some(x)
                && path.vertices.last() == Some(y)
                && path.distance == bound
                && kneser_lower_bound(x, y)? == bound;
            if !ok {
                return Ok(Outcome::fail(
                    "Kneser distance not certified",
                    json!({"pair": i, "x": x, "y": y, "path": path, "lower_bound": bound}),
                ));
            }
            histogram[path.distance] += 1;
        }
        if kneser_distance(&constructed.0, &constructed.1)?.distance != 3 {
            return Ok(Outcome::fail(
                "constructed pair is not at distance 3",
                json!(constructed),
            ));
        }
        Ok(Outcome::pass(format!(
            "1001 pairs certified, distances 0/1/2/3: {}/{}/{}/{}",
            histogram[0], histogram[1], histogram[2], histogram[3]
        )))
    }
}

pub struct CoreAlgebra;

fn random_raw<R: Rng>(rng: &mut R) -> RawPeriodicSet {
    let prefix: Vec<bool> = (0..rng.gen_range(0..=12)).map(|_| rng.gen()).collect();
    let period: Vec<bool> = (0..rng.gen_range(1..=8)).map(|_| rng.gen()).collect();
    RawPeriodicSet {
        prefix_len: prefix.len(),
        prefix_bits: prefix,
        period_len: period.len(),
        period_bits: period,
    }
}

/// Membership read straight off the bits.
fn raw_member(raw: &RawPeriodicSet, n: u64) -> bool {
    let i = n as usize - 1;
    if i < raw.prefix_len {
        raw.prefix_bits[i]
    } else {
        raw.period_bits[(i - raw.prefix_len) % raw.period_len]
    }
}

impl Check for CoreAlgebra {
    fn name(&self) -> &str {
        "core.algebra"
    }

    fn criterion(&self) -> &str {
        "10^4 randomized canonicalization, boolean-law and pushforward checks; permutation algebra on [1,1024]"
    }

    fn run(&self, config: &SuiteConfig) -> Result<Outcome> {
        let mut rng = rng_for(config, self.name());
        let perms: Vec<ComputablePermutation> = (0..64)
            .map(|_| random_permutation_with(&mut rng, &PERM_BOUNDS))
            .collect::<Result<_>>()?;

        for i in 0..10_000 {
            let (ra, rb) = (random_raw(&mut rng), random_raw(&mut rng));
            let (a, b) = (canonicalize(&ra)?, canonicalize(&rb)?);
            let window = rng.gen_range(1..=512);
            let s = perms.choose(&mut rng).expect("non-empty pool");
            let fail = |what: &str, n: u64| {
                Ok(Outcome::fail(
                    what.to_string(),
                    json!({"iteration": i, "a": ra, "b": rb, "n": n, "perm": s.spec()}),
                ))
            };
            if canonicalize(&a.to_raw())? != a {
                return fail("canonical form is not a fixed point", 0);
            }
            let (union, inter, diff, symdiff, comp) =
                (a.union(&b)?, a.inter(&b)?, a.diff(&b)?, a.symdiff(&b)?, a.complement());
            let image = crate::perm::pushforward(s, &a)?;
            for n in 1..=window {
                let (x, y) = (raw_member(&ra, n), raw_member(&rb, n));
                if a.contains(n) != x {
                    return fail("membership after canonicalization", n);
                }
                if union.contains(n) != (x || y)
                    || inter.contains(n) != (x && y)
                    || diff.contains(n) != (x && !y)
                    || symdiff.contains(n) != (x != y)
                    || comp.contains(n) != !x
                {
                    return fail("boolean operation", n);
                }
                if image.contains(s.apply(n)) != x || image.contains(n) != a.contains(s.apply_inverse(n)) {
                    return fail("pushforward membership", n);
                }
            }
            if comp.union(&b.complement())? != inter.complement() || a.symdiff(&symdiff)? != b {
                return fail("boolean identity", 0);
            }
        }

        for i in 0..perms.len() {
            let (s, t) = (&perms[i], &perms[(i * 7 + 3) % perms.len()]);
            let witness = |n: u64| json!({"s": s.spec(), "t": t.spec(), "n": n});
            if &validate(&s.spec())? != s {
                return Ok(Outcome::fail("description does not round-trip", witness(0)));
            }
            let inverse = s.invert()?;
            let composed = s.compose(t)?;
            let mut seen = std::collections::HashSet::new();
            for n in 1..=1024 {
                let m = s.apply(n);
                if !seen.insert(m)
                    || inverse.apply(m) != n
                    || s.apply_inverse(m) != n
                    || composed.apply(n) != s.apply(t.apply(n))
                {
                    return Ok(Outcome::fail("permutation algebra", witness(n)));
                }
            }
            if !s.compose(&inverse)?.is_identity() {
                return Ok(Outcome::fail("s ∘ s⁻¹ is not the identity", witness(0)));
            }
        }
        Ok(Outcome::pass("10000 set checks and 64 permutation checks exact"))
    }
}
