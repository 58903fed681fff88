//! Order-preserving maps: recovery of the underlying permutation from
//! intersections of images, plus the inclusion, intersection and covering
//! checkers.

use std::sync::Arc;

use serde::Serialize;

use super::{Automorphism, SharedAutomorphism};
use crate::error::{Error, Result};
use crate::graph::{as_vertex, Vertex};
use crate::perm::QueryBackedPermutation;
use crate::setalg::{Finiteness, PeriodicSet};

/// `{n} ∪ {m > n : m ≡ residue (mod 3)}`.
fn thread(n: u64, residue: u64) -> Result<Vertex> {
    let tail = PeriodicSet::residue_class(3, residue)?;
    let lower: Vec<u64> = (1..=n).collect();
    as_vertex(tail.without(&lower)?.with(&[n])?)
}

/// The unique element of `f(Y1) ∩ f(Y2)`, where `Y1 ∩ Y2 = {n}` and
/// `Y1 ∪ Y2` is still a vertex.
pub fn order_sigma(f: &dyn Automorphism, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::DomainError(0));
    }
    let y1 = f.apply(&thread(n, 0)?)?;
    let y2 = f.apply(&thread(n, 1)?)?;
    match y1.set().inter(y2.set())?.finiteness() {
        Finiteness::Finite(elements) if elements.len() == 1 => Ok(elements[0]),
        Finiteness::Finite(elements) => Err(Error::NotSingletonIntersection {
            n,
            size: Some(elements.len()),
        }),
        Finiteness::Infinite => Err(Error::NotSingletonIntersection { n, size: None }),
    }
}

/// Memoized [`order_sigma`] on `[1, window]`.
pub fn reconstruct_order_preserving(f: SharedAutomorphism, window: u64) -> Result<QueryBackedPermutation> {
    if window == 0 {
        return Err(Error::BadParameters("window must be at least 1".into()));
    }
    let g = Arc::clone(&f);
    Ok(QueryBackedPermutation::new(move |n| order_sigma(g.as_ref(), n)).with_window(window))
}

/// `f(∩ family) = ∩ f(X_i)`.
pub fn check_intersection_preservation(f: &dyn Automorphism, family: &[Vertex]) -> Result<bool> {
    let Some((first, rest)) = family.split_first() else {
        return Err(Error::IntersectionNotVertex);
    };
    let mut meet = first.set().clone();
    for x in rest {
        meet = meet.inter(x.set())?;
    }
    let meet = as_vertex(meet).map_err(|_| Error::IntersectionNotVertex)?;
    let mut image_meet = f.apply(first)?.into_set();
    for x in rest {
        image_meet = image_meet.inter(f.apply(x)?.set())?;
    }
    Ok(f.apply(&meet)?.set() == &image_meet)
}

/// For `Y ⊂ X` with `|X \ Y| = 1`: `f(Y) ⊂ f(X)` and `|f(X) \ f(Y)| = 1`.
pub fn check_covering_preservation(f: &dyn Automorphism, x: &Vertex, y: &Vertex) -> Result<bool> {
    if !y.set().is_subset(x.set()) || x.set().diff_cardinality(y.set()) != Some(1) {
        return Err(Error::PreconditionViolated(format!("{y} is not {x} minus one element")));
    }
    let (fx, fy) = (f.apply(x)?, f.apply(y)?);
    Ok(fy.set().is_subset(fx.set()) && fx.set().diff_cardinality(fy.set()) == Some(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum OrderVerdict {
    AllPass,
    Violation {
        x: Vertex,
        y: Vertex,
        fx: Vertex,
        fy: Vertex,
    },
}

/// Tests `X ⊂ Y ⟺ f(X) ⊂ f(Y)` and the same with the roles swapped.
pub fn check_order_preserving_on_samples(f: &dyn Automorphism, pairs: &[(Vertex, Vertex)]) -> Result<OrderVerdict> {
    for (x, y) in pairs {
        let (fx, fy) = (f.apply(x)?, f.apply(y)?);
        let forward = x.set().is_subset(y.set()) == fx.set().is_subset(fy.set());
        let backward = y.set().is_subset(x.set()) == fy.set().is_subset(fx.set());
        if !(forward && backward) {
            return Ok(OrderVerdict::Violation {
                x: x.clone(),
                y: y.clone(),
                fx,
                fy,
            });
        }
    }
    Ok(OrderVerdict::AllPass)
}
