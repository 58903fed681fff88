//! Pointwise recovery of the permutation behind an automorphism restricted
//! to one component.
//!
//! The images of a base vertex `A` and of its neighbours determine the
//! permutation one point at a time: a neighbour that swaps `min A` for a
//! fresh `n` is sent to a neighbour of `f(A)` whose extra element is `σ(n)`,
//! and a neighbour that swaps `n ∈ A` for `min(N \ A)` loses exactly `σ(n)`.
//! No normalization `f(A) = A` is needed, so every step is a finite set
//! computation on the images.

use std::sync::Arc;

use serde::Serialize;

use super::{Automorphism, CaseTag, Complemented, SharedAutomorphism};
use crate::error::{Error, Result};
use crate::graph::{classify_clique, same_component, CliqueKind, Vertex};
use crate::perm::{validate, ClassMap, ComputablePermutation, PermSpec, QueryBackedPermutation};

pub fn classify_case(f: &dyn Automorphism, a: &Vertex) -> Result<CaseTag> {
    let anchor = a.min_element();
    let fresh: Vec<u64> = a.set().complement().iter().take(2).collect();
    let star = [
        a.clone(),
        a.edit(&[anchor], &[fresh[0]])?,
        a.edit(&[anchor], &[fresh[1]])?,
    ];
    let images = star.iter().map(|x| f.apply(x)).collect::<Result<Vec<_>>>()?;
    match classify_clique(&images) {
        Ok(CliqueKind::Star(_)) => Ok(CaseTag::CaseA),
        Ok(CliqueKind::Top(_)) => Ok(CaseTag::CaseB),
        Ok(CliqueKind::NotClique(x, y)) => Err(Error::NotCliquePreserving(format!(
            "images {x} and {y} of the star around {} are not adjacent",
            star[0].set().without(&[anchor])?
        ))),
        Ok(CliqueKind::PairAmbiguous { .. }) => unreachable!("three images"),
        Err(Error::DuplicateVertices) => Err(Error::NotCliquePreserving(format!(
            "two members of the star around {} share an image",
            star[0].set().without(&[anchor])?
        ))),
        Err(e) => Err(Error::NotCliquePreserving(e.to_string())),
    }
}

/// Everything needed to answer `σ(n)` for one base vertex.
struct SigmaProbe {
    f: SharedAutomorphism,
    base: Vertex,
    base_image: Vertex,
    anchor: u64,
    fresh: u64,
}

impl SigmaProbe {
    fn new(f: SharedAutomorphism, base: &Vertex) -> Result<Self> {
        let base_image = f.apply(base)?;
        Ok(SigmaProbe {
            f,
            base: base.clone(),
            base_image,
            anchor: base.min_element(),
            fresh: base.min_absent(),
        })
    }

    fn sigma(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::DomainError(0));
        }
        let difference = if self.base.contains(n) {
            let y = self.base.edit(&[n], &[self.fresh])?;
            self.base_image.set().diff(self.f.apply(&y)?.set())?
        } else {
            let y = self.base.edit(&[self.anchor], &[n])?;
            self.f.apply(&y)?.set().diff(self.base_image.set())?
        };
        if difference.is_finite() {
            let elements: Vec<u64> = difference.iter().collect();
            if let [single] = elements[..] {
                return Ok(single);
            }
            return Err(Error::NotSingleton {
                n,
                size: Some(elements.len()),
            });
        }
        Err(Error::NotSingleton { n, size: None })
    }
}

/// `σ(n)` for an automorphism in case A on the component of `a`.
pub fn reconstruct_sigma(f: &SharedAutomorphism, a: &Vertex, n: u64) -> Result<u64> {
    SigmaProbe::new(f.clone(), a)?.sigma(n)
}

/// Memoized `σ` for the component of `a`, and whether the map reverses
/// inclusion there (case B, handled by reconstructing `* ∘ f`).
pub fn reconstruct_component_map(f: SharedAutomorphism, a: &Vertex) -> Result<(QueryBackedPermutation, bool)> {
    let case = classify_case(f.as_ref(), a)?;
    let (g, flip): (SharedAutomorphism, bool) = match case {
        CaseTag::CaseA => (f, false),
        CaseTag::CaseB => (Arc::new(Complemented(f)), true),
    };
    let probe = SigmaProbe::new(g, a)?;
    Ok((QueryBackedPermutation::new(move |n| probe.sigma(n)), flip))
}

/// Agreement of the reconstructions from two bases of one component.
pub fn base_independence_check(f: &SharedAutomorphism, a: &Vertex, x: &Vertex, ns: &[u64]) -> Result<bool> {
    if !same_component(a, x) {
        return Err(Error::NotSameComponent);
    }
    let case_a = classify_case(f.as_ref(), a)?;
    if classify_case(f.as_ref(), x)? != case_a {
        return Ok(false);
    }
    let g: SharedAutomorphism = match case_a {
        CaseTag::CaseA => f.clone(),
        CaseTag::CaseB => Arc::new(Complemented(f.clone())),
    };
    let from_a = SigmaProbe::new(g.clone(), a)?;
    let from_x = SigmaProbe::new(g, x)?;
    for &n in ns {
        if from_a.sigma(n)? != from_x.sigma(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionCheck {
    pub vertex: Vertex,
    pub passed: bool,
    /// `(n, σ(n))` where membership disagreed, or the error hit while checking.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub checks: Vec<RestrictionCheck>,
}

impl RestrictionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Smallest window checked for each sample.
const RESTRICTION_WINDOW: u64 = 64;

/// Checks `f(U) = σ(U)` (or its complement when `flip`) on every sample by
/// comparing membership of `n ∈ U` with `σ(n) ∈ f(U)` over a window covering
/// the sample's description and every memoized argument.
pub fn verify_restriction(
    f: &dyn Automorphism,
    sigma: &QueryBackedPermutation,
    flip: bool,
    samples: &[Vertex],
) -> RestrictionReport {
    let checks = samples
        .iter()
        .map(|u| {
            let witness = restriction_witness(f, sigma, flip, u);
            RestrictionCheck {
                vertex: u.clone(),
                passed: witness.is_none(),
                witness,
            }
        })
        .collect();
    RestrictionReport { checks }
}

fn restriction_witness(f: &dyn Automorphism, sigma: &QueryBackedPermutation, flip: bool, u: &Vertex) -> Option<String> {
    let image = match f.apply(u) {
        Ok(image) => image,
        Err(e) => return Some(format!("f({u}) failed: {e}")),
    };
    let described = 3 * (u.set().prefix_len() + u.set().period_len()) as u64;
    let mut bound = RESTRICTION_WINDOW.max(described);
    if let Some(w) = sigma.window() {
        bound = bound.min(w);
    }
    let memo_args = sigma.memoized().into_iter().map(|(n, _)| n);
    let mut args: Vec<u64> = (1..=bound).chain(memo_args).collect();
    args.sort_unstable();
    args.dedup();
    for n in args {
        let s = match sigma.apply(n) {
            Ok(s) => s,
            Err(e) => return Some(format!("σ({n}) failed: {e}")),
        };
        if image.contains(s) != (u.contains(n) != flip) {
            return Some(format!(
                "n = {n}, σ(n) = {s}: {n} ∈ U is {} but {s} ∈ f(U) is {}",
                u.contains(n),
                image.contains(s)
            ));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_modulus: u64,
    pub max_threshold: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_modulus: 12,
            max_threshold: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exactified {
    Exact(ComputablePermutation),
    Inconclusive,
}

/// Points probed per candidate never exceed this.
const MAX_PROBE: u64 = 1 << 14;

/// Searches for a residue-affine description that agrees with `q`.
pub fn exactify_permutation(q: &QueryBackedPermutation, bounds: SearchBounds) -> Result<Exactified> {
    let probe = |n: u64| -> Result<Option<u64>> {
        match q.apply(n) {
            Ok(m) => Ok(Some(m)),
            Err(Error::PreconditionViolated(_)) => Ok(None),
            Err(Error::NotInjective { first, second, image }) => Err(Error::InconsistentOracle(format!(
                "{first} and {second} both map to {image}"
            ))),
            Err(e) => Err(e),
        }
    };
    for p in 1..=bounds.max_modulus {
        'threshold: for threshold in 0..=bounds.max_threshold {
            let mut shifts = Vec::with_capacity(p as usize);
            for r in 0..p {
                let start = threshold + 1;
                let rep = start + (r + p - start % p) % p;
                let Some(m) = probe(rep)? else { continue 'threshold };
                shifts.push(m as i64 - rep as i64);
            }
            let classes: Vec<ClassMap> = shifts
                .iter()
                .enumerate()
                .map(|(r, &d)| {
                    let r = r as i64;
                    let to = (r + d).rem_euclid(p as i64);
                    ClassMap {
                        from: r as u64,
                        to: to as u64,
                        offset: (d - (to - r)) / p as i64,
                    }
                })
                .collect();
            let k = classes.iter().map(|c| c.offset.unsigned_abs()).max().unwrap_or(0);
            let fit_end = threshold + 4 * p * (k + 1);
            if 2 * fit_end > MAX_PROBE {
                continue;
            }
            for n in threshold + 1..=fit_end {
                match probe(n)? {
                    Some(m) if m as i64 == n as i64 + shifts[(n % p) as usize] => {}
                    _ => continue 'threshold,
                }
            }
            let mut patch = std::collections::BTreeMap::new();
            for n in 1..=threshold {
                let Some(m) = probe(n)? else { continue 'threshold };
                patch.insert(n, m);
            }
            let Ok(candidate) = validate(&PermSpec {
                modulus: p,
                threshold,
                classes,
                patch,
            }) else {
                continue;
            };
            for n in 1..=2 * fit_end {
                match probe(n)? {
                    Some(m) if m == candidate.apply(n) => {}
                    _ => continue 'threshold,
                }
            }
            return Ok(Exactified::Exact(candidate));
        }
    }
    Ok(Exactified::Inconclusive)
}
