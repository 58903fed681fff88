//! Finite ground truth: explicit Johnson and Kneser graphs, finite balls of
//! a component of the infinite Johnson graph, and brute-force algorithms on
//! them (BFS, maximal cliques, automorphism counting, recovery of the
//! permutation behind an automorphism of `J(n,k)`).
//!
//! Truncated components only change elements inside `[1, W]`. A geodesic
//! between two such vertices swaps elements of `X \ Y` for elements of
//! `Y \ X` one at a time, so it never leaves the window.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Upper bound on vertices for explicit constructions.
pub const MAX_VERTICES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Family {
    Johnson {
        n: u64,
        k: u64,
    },
    /// `degenerate` marks `2k = n`, where the graph is a perfect matching.
    Kneser {
        n: u64,
        k: u64,
        degenerate: bool,
    },
    TruncatedComponent {
        base: Vertex,
        window: u64,
        radius: usize,
    },
    Imported,
}

/// Labels are ascending element lists. For truncated components a label is
/// the part of the vertex inside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    labels: Vec<Vec<u64>>,
    neighbors: Vec<Vec<usize>>,
    family: Family,
}

impl FiniteGraph {
    fn from_rule(labels: Vec<Vec<u64>>, family: Family, adjacent: impl Fn(&[u64], &[u64]) -> bool) -> Self {
        let mut neighbors = vec![Vec::new(); labels.len()];
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if adjacent(&labels[i], &labels[j]) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        FiniteGraph {
            labels,
            neighbors,
            family,
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, u: usize) -> Result<&[u64]> {
        self.labels.get(u).map(Vec::as_slice).ok_or(Error::UnknownVertex(u))
    }

    pub fn labels(&self) -> &[Vec<u64>] {
        &self.labels
    }

    pub fn index_of(&self, label: &[u64]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, u: usize) -> Result<&[usize]> {
        self.neighbors.get(u).map(Vec::as_slice).ok_or(Error::UnknownVertex(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// The full vertex of a truncated component.
    pub fn vertex(&self, u: usize) -> Result<Vertex> {
        let label = self.label(u)?;
        let Family::TruncatedComponent { base, window, .. } = &self.family else {
            return Err(Error::UnsupportedFamily(
                "only truncated components carry infinite vertices".into(),
            ));
        };
        let inside = base.set().elements_upto(*window);
        let removed: Vec<u64> = inside
            .iter()
            .copied()
            .filter(|n| label.binary_search(n).is_err())
            .collect();
        let added: Vec<u64> = label
            .iter()
            .copied()
            .filter(|n| inside.binary_search(n).is_err())
            .collect();
        base.edit(&removed, &added)
    }

    /// Toggles one adjacency bit. Used to plant faults in the oracles.
    pub fn flip_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::BadParameters("self-loops are not allowed".into()));
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = self.neighbors.get_mut(a).ok_or(Error::UnknownVertex(a))?;
            match list.binary_search(&b) {
                Ok(i) => {
                    list.remove(i);
                }
                Err(i) => list.insert(i, b),
            }
        }
        Ok(())
    }

    /// One line per vertex: `label: neighbour labels`.
    pub fn to_adjacency_text(&self) -> String {
        let render = |l: &[u64]| {
            let items: Vec<String> = l.iter().map(u64::to_string).collect();
            format!("{{{}}}", items.join(","))
        };
        let mut out = String::new();
        for (u, label) in self.labels.iter().enumerate() {
            let ns: Vec<String> = self.neighbors[u].iter().map(|&v| render(&self.labels[v])).collect();
            writeln!(out, "{}: {}", render(label), ns.join(" ")).unwrap();
        }
        out
    }

    pub fn parse_adjacency_text(text: &str) -> Result<FiniteGraph> {
        let mut labels = Vec::new();
        let mut raw_neighbors = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let parse_error = |col: usize, expected: &str| Error::Parse {
                line: i + 1,
                col,
                expected: expected.into(),
            };
            let (head, tail) = line.split_once(':').ok_or_else(|| parse_error(1, "':'"))?;
            labels.push(parse_label(head).ok_or_else(|| parse_error(1, "a label like {1,2}"))?);
            let mut ns = Vec::new();
            let mut rest = tail.trim_start();
            while !rest.is_empty() {
                let col = line.len() - rest.len() + 1;
                let end = rest.find('}').ok_or_else(|| parse_error(col, "'}'"))?;
                ns.push(parse_label(&rest[..=end]).ok_or_else(|| parse_error(col, "a label like {1,2}"))?);
                rest = rest[end + 1..].trim_start();
            }
            raw_neighbors.push(ns);
        }
        let index: HashMap<&[u64], usize> = labels.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();
        if index.len() != labels.len() {
            return Err(Error::Format("duplicate vertex labels".into()));
        }
        let mut neighbors = vec![Vec::new(); labels.len()];
        for (u, ns) in raw_neighbors.iter().enumerate() {
            for l in ns {
                let v = *index
                    .get(l.as_slice())
                    .ok_or_else(|| Error::Format(format!("neighbour {l:?} is not a vertex")))?;
                if v == u {
                    return Err(Error::Format(format!("self-loop at {l:?}")));
                }
                neighbors[u].push(v);
            }
            neighbors[u].sort_unstable();
            neighbors[u].dedup();
        }
        for (u, ns) in neighbors.iter().enumerate() {
            if let Some(&v) = ns.iter().find(|&&v| neighbors[v].binary_search(&u).is_err()) {
                return Err(Error::Format(format!(
                    "adjacency is not symmetric between {:?} and {:?}",
                    labels[u], labels[v]
                )));
            }
        }
        Ok(FiniteGraph {
            labels,
            neighbors,
            family: Family::Imported,
        })
    }
}

fn parse_label(text: &str) -> Option<Vec<u64>> {
    let inner = text.trim().strip_prefix('{')?.strip_suffix('}')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    let mut label: Vec<u64> = inner.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    label.sort_unstable();
    Some(label)
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
fn subsets(n: u64, k: u64) -> Vec<Vec<u64>> {
    fn go(start: u64, n: u64, k: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() as u64 == k {
            out.push(current.clone());
            return;
        }
        for x in start..=n {
            current.push(x);
            go(x + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn intersection_size(a: &[u64], b: &[u64]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn check_size(n: u64, k: u64) -> Result<()> {
    match binomial(n, k) {
        Some(c) if c as usize <= MAX_VERTICES => Ok(()),
        _ => Err(Error::BadParameters(format!(
            "C({n},{k}) exceeds {MAX_VERTICES} vertices"
        ))),
    }
}

/// `J(n,k)`: `k`-subsets of `{1..n}`, adjacent when they share `k - 1` elements.
pub fn build_johnson_finite(n: u64, k: u64) -> Result<FiniteGraph> {
    if k == 0 || k >= n {
        return Err(Error::BadParameters(format!("J({n},{k}) needs 1 <= k <= n - 1")));
    }
    check_size(n, k)?;
    let k_minus = k as usize - 1;
    Ok(FiniteGraph::from_rule(
        subsets(n, k),
        Family::Johnson { n, k },
        |a, b| intersection_size(a, b) == k_minus,
    ))
}

/// `K(n,k)`: `k`-subsets of `{1..n}`, adjacent when disjoint.
pub fn build_kneser_finite(n: u64, k: u64) -> Result<FiniteGraph> {
    if k == 0 || 2 * k > n {
        return Err(Error::BadParameters(format!("K({n},{k}) needs 1 <= k and 2k <= n")));
    }
    check_size(n, k)?;
    let family = Family::Kneser {
        n,
        k,
        degenerate: 2 * k == n,
    };
    Ok(FiniteGraph::from_rule(subsets(n, k), family, |a, b| {
        intersection_size(a, b) == 0
    }))
}

/// The ball of radius `r` around `A` in its component, restricted to swaps
/// inside `[1, W]`.
pub fn build_truncated_component(a: &Vertex, window: u64, radius: usize) -> Result<FiniteGraph> {
    let inside = a.set().elements_upto(window);
    let outside: Vec<u64> = (1..=window).filter(|n| !a.contains(*n)).collect();
    if inside.len() < radius || outside.len() < radius {
        return Err(Error::WindowTooSmall(format!(
            "[1,{window}] holds {} members and {} non-members of {a}, radius {radius} needs both",
            inside.len(),
            outside.len()
        )));
    }
    let count: u64 = (0..=radius as u64)
        .map(|j| binomial(inside.len() as u64, j).unwrap_or(u64::MAX).saturating_pow(2))
        .fold(0, u64::saturating_add);
    if count as usize > MAX_VERTICES {
        return Err(Error::BadParameters(format!("truncation would have {count} vertices")));
    }

    let pick = |pool: &[u64], j: usize| -> Vec<Vec<u64>> {
        subsets(pool.len() as u64, j as u64)
            .into_iter()
            .map(|idx| idx.iter().map(|&i| pool[i as usize - 1]).collect())
            .collect()
    };
    let mut labels = Vec::with_capacity(count as usize);
    for j in 0..=radius {
        for removed in pick(&inside, j) {
            for added in pick(&outside, j) {
                let mut label: Vec<u64> = inside
                    .iter()
                    .copied()
                    .filter(|n| removed.binary_search(n).is_err())
                    .chain(added.iter().copied())
                    .collect();
                label.sort_unstable();
                labels.push(label);
            }
        }
    }

    let index: HashMap<Vec<u64>, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let mut neighbors = vec![Vec::new(); labels.len()];
    for (u, label) in labels.iter().enumerate() {
        for pos in 0..label.len() {
            for y in (1..=window).filter(|y| label.binary_search(y).is_err()) {
                let mut swapped = label.clone();
                swapped.remove(pos);
                let at = swapped.binary_search(&y).unwrap_err();
                swapped.insert(at, y);
                if let Some(&v) = index.get(&swapped) {
                    neighbors[u].push(v);
                }
            }
        }
        neighbors[u].sort_unstable();
    }
    Ok(FiniteGraph {
        labels,
        neighbors,
        family: Family::TruncatedComponent {
            base: a.clone(),
            window,
            radius,
        },
    })
}

/// Distances from `u` to every vertex, `None` when unreachable.
pub fn bfs_all(g: &FiniteGraph, u: usize) -> Result<Vec<Option<usize>>> {
    g.label(u)?;
    let mut dist = vec![None; g.vertex_count()];
    dist[u] = Some(0);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].expect("queued vertices are reached");
        for &y in &g.neighbors[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    Ok(dist)
}

pub fn bfs_distance(g: &FiniteGraph, u: usize, v: usize) -> Result<Option<usize>> {
    g.label(v)?;
    Ok(bfs_all(g, u)?[v])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FiniteCliqueKind {
    /// All members contain the common core of size `k - 1`.
    Star(Vec<u64>),
    /// All members lie inside the common carrier of size `k + 1`.
    Top(Vec<u64>),
    /// A two-member clique is both.
    Pair {
        core: Vec<u64>,
        carrier: Vec<u64>,
    },
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledClique {
    pub members: Vec<usize>,
    pub kind: FiniteCliqueKind,
}

fn classify_finite_clique(g: &FiniteGraph, members: &[usize]) -> FiniteCliqueKind {
    let labels: Vec<&[u64]> = members.iter().map(|&u| g.labels[u].as_slice()).collect();
    let k = labels[0].len();
    let core: Vec<u64> = labels[0]
        .iter()
        .copied()
        .filter(|x| labels.iter().all(|l| l.binary_search(x).is_ok()))
        .collect();
    let mut carrier: Vec<u64> = labels.iter().flat_map(|l| l.iter().copied()).collect();
    carrier.sort_unstable();
    carrier.dedup();
    match (core.len() + 1 == k, carrier.len() == k + 1) {
        (true, true) => FiniteCliqueKind::Pair { core, carrier },
        (true, false) => FiniteCliqueKind::Star(core),
        (false, true) => FiniteCliqueKind::Top(carrier),
        (false, false) => FiniteCliqueKind::Other,
    }
}

/// Bron–Kerbosch with pivoting; cliques are labelled by their members' labels.
pub fn maximal_cliques(g: &FiniteGraph) -> Result<Vec<LabeledClique>> {
    if let Family::Kneser { .. } = g.family {
        return Err(Error::UnsupportedFamily(
            "maximal cliques are labelled only for Johnson-type graphs".into(),
        ));
    }
    fn expand(g: &FiniteGraph, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut clique = r.clone();
                clique.sort_unstable();
                out.push(clique);
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| g.adjacent(u, v)).count())
            .expect("p is non-empty");
        let mut p = p;
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.adjacent(pivot, v)).collect();
        for v in candidates {
            r.push(v);
            let p_next = p.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
            let x_next = x.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
            expand(g, r, p_next, x_next, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut found = Vec::new();
    expand(
        g,
        &mut Vec::new(),
        (0..g.vertex_count()).collect(),
        Vec::new(),
        &mut found,
    );
    found.sort();
    Ok(found
        .into_iter()
        .map(|members| LabeledClique {
            kind: classify_finite_clique(g, &members),
            members,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 40,
            max_nodes: 50_000_000,
        }
    }
}

/// Counts adjacency-preserving bijections by backtracking. Candidates for a
/// vertex must share its refined signature (degree, then the multiset of
/// neighbour degrees) and agree on adjacency with everything mapped so far.
pub fn aut_group_order(g: &FiniteGraph, budget: Budget) -> Result<u64> {
    let n = g.vertex_count();
    if n > budget.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{n} vertices, budget allows {}",
            budget.max_vertices
        )));
    }
    if n == 0 {
        return Ok(1);
    }
    let signature: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|u| {
            let mut ds: Vec<usize> = g.neighbors[u].iter().map(|&v| g.degree(v)).collect();
            ds.sort_unstable();
            (g.degree(u), ds)
        })
        .collect();
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.adjacent(u, v)).collect()).collect();

    // BFS order so each vertex after the first in a component has a mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &g.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }

    struct Search<'a> {
        order: &'a [usize],
        adj: &'a [Vec<bool>],
        signature: &'a [(usize, Vec<usize>)],
        image: Vec<usize>,
        used: Vec<bool>,
        nodes: u64,
        max_nodes: u64,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize) -> Result<u64> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} search nodes",
                    self.max_nodes
                )));
            }
            if depth == self.order.len() {
                return Ok(1);
            }
            let u = self.order[depth];
            let mut total = 0;
            for c in 0..self.order.len() {
                if self.used[c] || self.signature[c] != self.signature[u] {
                    continue;
                }
                let consistent = self.order[..depth]
                    .iter()
                    .all(|&w| self.adj[u][w] == self.adj[c][self.image[w]]);
                if !consistent {
                    continue;
                }
                self.image[u] = c;
                self.used[c] = true;
                total += self.go(depth + 1)?;
                self.used[c] = false;
            }
            Ok(total)
        }
    }

    Search {
        order: &order,
        adj: &adj,
        signature: &signature,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        nodes: 0,
        max_nodes: budget.max_nodes,
    }
    .go(0)
}

/// Automorphism of `J(n,k)` induced by a permutation of `{1..n}`, given as
/// `perm[i - 1] = π(i)`, as a vertex index map.
pub fn permutation_action(g: &FiniteGraph, perm: &[u64]) -> Result<Vec<usize>> {
    let Family::Johnson { n, .. } = g.family else {
        return Err(Error::UnsupportedFamily("needs a Johnson graph".into()));
    };
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(Error::BadParameters(format!("{perm:?} is not a permutation of 1..{n}")));
    }
    let index = label_index(g);
    Ok(g.labels
        .iter()
        .map(|l| {
            let mut image: Vec<u64> = l.iter().map(|&x| perm[x as usize - 1]).collect();
            image.sort_unstable();
            index[&image]
        })
        .collect())
}

/// `X ↦ {1..n} \ X` on `J(2k,k)`.
pub fn complement_action(g: &FiniteGraph) -> Result<Vec<usize>> {
    let Family::Johnson { n, k } = g.family else {
        return Err(Error::UnsupportedFamily("needs a Johnson graph".into()));
    };
    if n != 2 * k {
        return Err(Error::BadParameters(format!(
            "complementation does not act on J({n},{k})"
        )));
    }
    let index = label_index(g);
    Ok(g.labels
        .iter()
        .map(|l| {
            let image: Vec<u64> = (1..=n).filter(|x| l.binary_search(x).is_err()).collect();
            index[&image]
        })
        .collect())
}

fn label_index(g: &FiniteGraph) -> HashMap<Vec<u64>, usize> {
    g.labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()
}

fn check_automorphism(g: &FiniteGraph, phi: &[usize]) -> Result<()> {
    let n = g.vertex_count();
    if phi.len() != n {
        return Err(Error::NotAutomorphism(format!(
            "map has {} entries for {n} vertices",
            phi.len()
        )));
    }
    let mut hit = vec![false; n];
    for &v in phi {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return Err(Error::NotAutomorphism(format!("not a bijection at image {v}")));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.adjacent(u, v) != g.adjacent(phi[u], phi[v]) {
                return Err(Error::NotAutomorphism(format!(
                    "{:?} ~ {:?} is {} but their images give {}",
                    g.labels[u],
                    g.labels[v],
                    g.adjacent(u, v),
                    g.adjacent(phi[u], phi[v])
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedPermutation {
    /// `perm[i - 1] = π(i)`.
    pub perm: Vec<u64>,
    /// Set when the automorphism is `* ∘ π` rather than `π` (only for `n = 2k`).
    pub complemented: bool,
}

/// The permutation of `{1..n}` inducing an automorphism `phi` of `J(n,k)`.
/// Stars `{X ⊇ C}` for `|C| = k - 1` go to stars, which defines a map on
/// `(k-1)`-subsets, and so on down to singletons. When `n = 2k` and stars go
/// to tops, the result describes `* ∘ phi` and is flagged.
pub fn induced_permutation_finite(g: &FiniteGraph, phi: &[usize]) -> Result<InducedPermutation> {
    let Family::Johnson { n, k } = g.family else {
        return Err(Error::UnsupportedFamily("needs a Johnson graph".into()));
    };
    check_automorphism(g, phi)?;
    if k == 1 {
        let perm = phi.iter().map(|&v| g.labels[v][0]).collect();
        return Ok(InducedPermutation {
            perm,
            complemented: false,
        });
    }

    let index = label_index(g);
    let complement = |l: &[u64]| -> Vec<u64> { (1..=n).filter(|x| l.binary_search(x).is_err()).collect() };
    let star = |core: &[u64]| -> Vec<usize> {
        (1..=n)
            .filter(|x| core.binary_search(x).is_err())
            .map(|x| {
                let mut l = core.to_vec();
                l.insert(l.binary_search(&x).unwrap_err(), x);
                index[&l]
            })
            .collect()
    };

    let smaller = build_johnson_finite(n, k - 1)?;
    let first_image: Vec<usize> = star(&smaller.labels[0]).iter().map(|&u| phi[u]).collect();
    let complemented = n == 2 * k
        && !matches!(
            classify_finite_clique(g, &sorted(first_image)),
            FiniteCliqueKind::Star(_)
        );
    let phi: Vec<usize> = if complemented {
        phi.iter().map(|&v| index[&complement(&g.labels[v])]).collect()
    } else {
        phi.to_vec()
    };

    let smaller_index = label_index(&smaller);
    let mut psi = Vec::with_capacity(smaller.vertex_count());
    for core in &smaller.labels {
        let image = sorted(star(core).iter().map(|&u| phi[u]).collect());
        match classify_finite_clique(g, &image) {
            FiniteCliqueKind::Star(c) | FiniteCliqueKind::Pair { core: c, .. } => psi.push(smaller_index[&c]),
            _ => {
                return Err(Error::NotAutomorphism(format!(
                    "the star around {core:?} is not sent to a star"
                )))
            }
        }
    }
    let inner = induced_permutation_finite(&smaller, &psi)?;
    if inner.complemented {
        return Err(Error::NotAutomorphism(
            "induced map on smaller subsets is complemented".into(),
        ));
    }
    if permutation_action(g, &inner.perm)? != phi {
        return Err(Error::NotAutomorphism(
            "recovered permutation does not induce the map".into(),
        ));
    }
    Ok(InducedPermutation {
        perm: inner.perm,
        complemented,
    })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
