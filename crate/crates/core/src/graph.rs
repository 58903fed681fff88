//! The infinite Johnson graph and the infinite Kneser graph.
//!
//! Both graphs share the vertex set of balanced subsets of N. Johnson
//! adjacency swaps exactly one element; Kneser adjacency is disjointness.
//! Stars and tops are infinite, so they are exposed through deterministic
//! samplers and symbolic centers and carriers.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setalg::PeriodicSet;

/// A balanced subset of N: infinite with infinite complement.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(PeriodicSet);

impl Vertex {
    pub fn new(set: PeriodicSet) -> Result<Self> {
        as_vertex(set)
    }

    pub fn set(&self) -> &PeriodicSet {
        &self.0
    }

    pub fn into_set(self) -> PeriodicSet {
        self.0
    }

    /// The complement of a vertex is again a vertex.
    pub fn complement(&self) -> Vertex {
        Vertex(self.0.complement())
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.contains(n)
    }

    /// Smallest element.
    pub fn min_element(&self) -> u64 {
        self.0.min_element().expect("vertices are infinite")
    }

    /// Smallest element of the complement.
    pub fn min_absent(&self) -> u64 {
        self.0.min_absent().expect("vertices are co-infinite")
    }

    /// `(self \ remove) ∪ add`, which stays balanced for finite edits.
    pub fn edit(&self, remove: &[u64], add: &[u64]) -> Result<Vertex> {
        Ok(Vertex(self.0.without(remove)?.with(add)?))
    }
}

impl TryFrom<PeriodicSet> for Vertex {
    type Error = Error;

    fn try_from(set: PeriodicSet) -> Result<Self> {
        as_vertex(set)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({})", self.0)
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

pub fn as_vertex(set: PeriodicSet) -> Result<Vertex> {
    if set.is_balanced() {
        Ok(Vertex(set))
    } else {
        Err(Error::NotBalanced(set.classify_orbit().ok()))
    }
}

pub fn adjacent_johnson(x: &Vertex, y: &Vertex) -> bool {
    x.0.diff_cardinality(&y.0) == Some(1) && y.0.diff_cardinality(&x.0) == Some(1)
}

pub fn same_component(x: &Vertex, y: &Vertex) -> bool {
    match (x.0.diff_cardinality(&y.0), y.0.diff_cardinality(&x.0)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Distance inside a component: `|X \ Y|`.
pub fn distance_johnson(x: &Vertex, y: &Vertex) -> Result<usize> {
    match (x.0.diff_cardinality(&y.0), y.0.diff_cardinality(&x.0)) {
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => Err(Error::DifferentComponents),
    }
}

/// Shortest path that swaps the elements of `X \ Y` for those of `Y \ X`,
/// pairing both lists in ascending order.
pub fn geodesic(x: &Vertex, y: &Vertex) -> Result<Vec<Vertex>> {
    if !same_component(x, y) {
        return Err(Error::DifferentComponents);
    }
    let leaving = x.0.diff(&y.0)?;
    let entering = y.0.diff(&x.0)?;
    let mut path = vec![x.clone()];
    let mut current = x.clone();
    for (out, inn) in leaving.iter().zip(entering.iter()) {
        current = current.edit(&[out], &[inn])?;
        path.push(current.clone());
    }
    Ok(path)
}

/// `X ∪ {n}` for the `count` smallest `n ∉ X` not listed in `excluding`.
pub fn star_sample(x: &Vertex, count: usize, excluding: &[u64]) -> Result<Vec<Vertex>> {
    x.0.complement()
        .iter()
        .filter(|n| !excluding.contains(n))
        .take(count)
        .map(|n| x.edit(&[], &[n]))
        .collect()
}

/// `X \ {n}` for the `count` smallest `n ∈ X` not listed in `excluding`.
pub fn top_sample(x: &Vertex, count: usize, excluding: &[u64]) -> Result<Vec<Vertex>> {
    x.0.iter()
        .filter(|n| !excluding.contains(n))
        .take(count)
        .map(|n| x.edit(&[n], &[]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CliqueKind {
    Star(Vertex),
    Top(Vertex),
    /// Two adjacent vertices lie in exactly one star and one top.
    PairAmbiguous {
        star_center: Vertex,
        top_carrier: Vertex,
    },
    NotClique(Vertex, Vertex),
}

pub fn classify_clique(vs: &[Vertex]) -> Result<CliqueKind> {
    if vs.len() < 2 {
        return Err(Error::PreconditionViolated(
            "a clique candidate needs at least two vertices".into(),
        ));
    }
    for (i, a) in vs.iter().enumerate() {
        if vs[i + 1..].contains(a) {
            return Err(Error::DuplicateVertices);
        }
    }
    for (i, a) in vs.iter().enumerate() {
        if let Some(b) = vs[i + 1..].iter().find(|b| !adjacent_johnson(a, b)) {
            return Ok(CliqueKind::NotClique(a.clone(), b.clone()));
        }
    }
    if vs.len() == 2 {
        return Ok(CliqueKind::PairAmbiguous {
            star_center: as_vertex(vs[0].0.inter(&vs[1].0)?)?,
            top_carrier: as_vertex(vs[0].0.union(&vs[1].0)?)?,
        });
    }
    let mut meets = Vec::new();
    let mut joins = Vec::new();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            meets.push(a.0.inter(&b.0)?);
            joins.push(a.0.union(&b.0)?);
        }
    }
    if meets.iter().all(|m| *m == meets[0]) {
        return Ok(CliqueKind::Star(as_vertex(meets.swap_remove(0))?));
    }
    if joins.iter().all(|j| *j == joins[0]) {
        return Ok(CliqueKind::Top(as_vertex(joins.swap_remove(0))?));
    }
    Err(Error::PreconditionViolated(
        "pairwise adjacent vertices share neither a star nor a top".into(),
    ))
}

/// `X ⊆ Y` or `Y ⊆ X`.
pub fn incident(x: &Vertex, y: &Vertex) -> bool {
    x.0.is_subset(&y.0) || y.0.is_subset(&x.0)
}

/// `St(X) ∩ T(Y)`: two vertices when `X ⊂ Y` with `|Y \ X| = 2`, else none.
pub fn star_top_meet(x: &Vertex, y: &Vertex) -> Result<Vec<Vertex>> {
    if !x.0.is_subset(&y.0) || y.0.diff_cardinality(&x.0) != Some(2) {
        return Ok(Vec::new());
    }
    y.0.diff(&x.0)?.iter().map(|n| x.edit(&[], &[n])).collect()
}

/// `St(U) ∩ St(V)` for distinct `U`, `V`: the single vertex `U ∪ V` when they
/// are adjacent, else nothing.
pub fn star_meet(u: &Vertex, v: &Vertex) -> Result<Option<Vertex>> {
    if u == v {
        return Err(Error::EqualVertices);
    }
    if !adjacent_johnson(u, v) {
        return Ok(None);
    }
    Ok(Some(as_vertex(u.0.union(&v.0)?)?))
}

pub fn adjacent_kneser(x: &Vertex, y: &Vertex) -> bool {
    x != y && x.0.is_disjoint(&y.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KneserPath {
    pub distance: usize,
    pub vertices: Vec<Vertex>,
}

impl KneserPath {
    /// Endpoint count matches the distance and consecutive vertices are disjoint.
    pub fn is_valid(&self) -> bool {
        self.vertices.len() == self.distance + 1 && self.vertices.windows(2).all(|w| adjacent_kneser(&w[0], &w[1]))
    }
}

/// Smallest possible Kneser distance, decided from the sets alone: a path of
/// length 2 needs a common neighbour, which must be a balanced subset of
/// `N \ (X ∪ Y)`, so it exists exactly when that complement is infinite.
pub fn kneser_lower_bound(x: &Vertex, y: &Vertex) -> Result<usize> {
    if x == y {
        return Ok(0);
    }
    if x.0.is_disjoint(&y.0) {
        return Ok(1);
    }
    if x.0.union(&y.0)?.is_cofinite() {
        Ok(3)
    } else {
        Ok(2)
    }
}

pub fn kneser_distance(x: &Vertex, y: &Vertex) -> Result<KneserPath> {
    let vertices = if x == y {
        vec![x.clone()]
    } else if x.0.is_disjoint(&y.0) {
        vec![x.clone(), y.clone()]
    } else {
        let outside = x.0.union(&y.0)?.complement();
        if !outside.is_finite() {
            vec![x.clone(), as_vertex(outside)?, y.clone()]
        } else {
            // N \ Y = (X \ Y) ∪ outside with `outside` finite, so X \ Y is infinite.
            vec![x.clone(), x.complement(), as_vertex(x.0.diff(&y.0)?)?, y.clone()]
        }
    };
    Ok(KneserPath {
        distance: vertices.len() - 1,
        vertices,
    })
}

/// A vertex adjacent to `Y` but not to `X` in the Kneser graph, witnessing
/// that `Y°` is not contained in `X°` when `X ⊄ Y`.
pub fn kneser_separation_witness(x: &Vertex, y: &Vertex) -> Result<Vertex> {
    let z = x.0.min_diff(&y.0).ok_or(Error::IsSubset)?;
    let outside = x.0.union(&y.0)?.complement();
    let pool = if outside.is_finite() {
        x.0.diff(&y.0)?.without(&[z])?
    } else {
        outside
    };
    let (half, _) = pool.split_infinite()?;
    as_vertex(half.with(&[z])?)
}
