use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Automorphism, AutomorphismRegistry, SharedAutomorphism};
use crate::error::{Error, Result};
use crate::graph::{as_vertex, incident, same_component, Vertex};
use crate::lang;
use crate::perm::{pushforward, validate, ComputablePermutation, PermSpec};

/// `X ↦ s(X)`, followed by complementation when `flip` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularAutomorphism {
    pub perm: ComputablePermutation,
    pub flip: bool,
}

impl RegularAutomorphism {
    pub fn new(perm: ComputablePermutation, flip: bool) -> Self {
        RegularAutomorphism { perm, flip }
    }

    pub fn identity() -> Self {
        RegularAutomorphism::new(ComputablePermutation::identity(), false)
    }

    pub fn complement_map() -> Self {
        RegularAutomorphism::new(ComputablePermutation::identity(), true)
    }

    pub fn is_order_preserving(&self) -> bool {
        !self.flip
    }
}

impl Automorphism for RegularAutomorphism {
    fn kind(&self) -> &str {
        "regular"
    }

    fn apply(&self, x: &Vertex) -> Result<Vertex> {
        let image = pushforward(&self.perm, x.set())?;
        let image = if self.flip { image.complement() } else { image };
        as_vertex(image)
    }

    fn to_spec(&self) -> Option<Value> {
        Some(json!({
            "kind": "regular",
            "flip": self.flip,
            "perm": self.perm.spec(),
        }))
    }
}

/// Applies the permutation of the first piece whose component contains the
/// argument and fixes every other vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAutomorphism {
    pieces: Vec<(Vertex, ComputablePermutation)>,
}

impl PiecewiseAutomorphism {
    /// Pieces must sit in distinct components and each permutation must keep
    /// its component in place.
    pub fn new(pieces: Vec<(Vertex, ComputablePermutation)>) -> Result<Self> {
        for (i, (rep, perm)) in pieces.iter().enumerate() {
            if let Some((other, _)) = pieces[i + 1..].iter().find(|(o, _)| same_component(rep, o)) {
                return Err(Error::InvalidPieces(format!(
                    "{rep} and {other} lie in the same component"
                )));
            }
            let moved = as_vertex(pushforward(perm, rep.set())?)?;
            if !same_component(&moved, rep) {
                return Err(Error::InvalidPieces(format!(
                    "permutation moves {rep} to another component"
                )));
            }
        }
        Ok(PiecewiseAutomorphism { pieces })
    }

    pub fn pieces(&self) -> &[(Vertex, ComputablePermutation)] {
        &self.pieces
    }
}

impl Automorphism for PiecewiseAutomorphism {
    fn kind(&self) -> &str {
        "piecewise"
    }

    fn apply(&self, x: &Vertex) -> Result<Vertex> {
        match self.pieces.iter().find(|(rep, _)| same_component(x, rep)) {
            Some((_, perm)) => as_vertex(pushforward(perm, x.set())?),
            None => Ok(x.clone()),
        }
    }

    fn to_spec(&self) -> Option<Value> {
        let pieces: Vec<Value> = self
            .pieces
            .iter()
            .map(|(rep, perm)| json!({"rep": rep.to_string(), "perm": perm.spec()}))
            .collect();
        Some(json!({"kind": "piecewise", "pieces": pieces}))
    }
}

#[derive(Deserialize)]
struct RegularDescription {
    #[serde(default)]
    flip: bool,
    perm: PermSpec,
}

#[derive(Deserialize)]
struct PieceDescription {
    rep: String,
    perm: PermSpec,
}

#[derive(Deserialize)]
struct PiecewiseDescription {
    pieces: Vec<PieceDescription>,
}

pub(super) fn build_regular(_: &AutomorphismRegistry, spec: &Value) -> Result<SharedAutomorphism> {
    let d: RegularDescription = serde_json::from_value(spec.clone()).map_err(|e| Error::Format(e.to_string()))?;
    Ok(Arc::new(RegularAutomorphism::new(validate(&d.perm)?, d.flip)))
}

pub(super) fn build_piecewise(_: &AutomorphismRegistry, spec: &Value) -> Result<SharedAutomorphism> {
    let d: PiecewiseDescription = serde_json::from_value(spec.clone()).map_err(|e| Error::Format(e.to_string()))?;
    let pieces = d
        .pieces
        .iter()
        .map(|p| Ok((as_vertex(lang::eval_set_text(&p.rep)?)?, validate(&p.perm)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(PiecewiseAutomorphism::new(pieces)?))
}

/// Witness that an automorphism breaks incidence: `Y ⊂ A` but `f(A)` and
/// `f(Y)` are not incident.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonRegularityCertificate {
    pub a: Vertex,
    pub y: Vertex,
    pub fa: Vertex,
    pub fy: Vertex,
}

/// Moves the component of `A` by a finite permutation sending `A` to `B` and
/// fixes everything else. Returns the map with a certificate that it is not
/// regular.
pub fn build_example_one(a: &Vertex, b: &Vertex) -> Result<(PiecewiseAutomorphism, NonRegularityCertificate)> {
    if a == b {
        return Err(Error::EqualVertices);
    }
    if !same_component(a, b) {
        return Err(Error::NotSameComponent);
    }
    let leaving = a.set().diff(b.set())?;
    let entering = b.set().diff(a.set())?;
    let mut swaps = BTreeMap::new();
    for (x, y) in leaving.iter().zip(entering.iter()) {
        swaps.insert(x, y);
        swaps.insert(y, x);
    }
    let s = ComputablePermutation::from_finite_map(&swaps)?;
    let f = PiecewiseAutomorphism::new(vec![(a.clone(), s)])?;

    let anchor = leaving.min_element().expect("A != B in one component");
    let (half, _) = a.set().inter(b.set())?.split_infinite()?;
    let y = as_vertex(half.with(&[anchor])?)?;
    let cert = NonRegularityCertificate {
        fa: f.apply(a)?,
        fy: f.apply(&y)?,
        a: a.clone(),
        y,
    };
    Ok((f, cert))
}

/// Recomputes both images and checks `Y ⊊ A` while `f(A)`, `f(Y)` are not incident.
pub fn verify_certificate(f: &dyn Automorphism, cert: &NonRegularityCertificate) -> bool {
    let (Ok(fa), Ok(fy)) = (f.apply(&cert.a), f.apply(&cert.y)) else {
        return false;
    };
    fa == cert.fa && fy == cert.fy && cert.y != cert.a && cert.y.set().is_subset(cert.a.set()) && !incident(&fa, &fy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::validate;
    use crate::setalg::PeriodicSet;

    fn evens() -> Vertex {
        as_vertex(PeriodicSet::evens()).unwrap()
    }

    fn swapped() -> Vertex {
        evens().edit(&[2], &[1]).unwrap()
    }

    fn pair_swap() -> ComputablePermutation {
        validate(
            &serde_json::from_value(json!({
                "modulus": 2, "threshold": 0,
                "classes": [{"from": 0, "to": 1, "offset": -1}, {"from": 1, "to": 0, "offset": 1}]
            }))
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn regular_actions() {
        let odds = as_vertex(PeriodicSet::odds()).unwrap();
        assert_eq!(RegularAutomorphism::complement_map().apply(&evens()), Ok(odds.clone()));
        assert_eq!(RegularAutomorphism::new(pair_swap(), false).apply(&evens()), Ok(odds));
    }

    #[test]
    fn example_one_construction() {
        let (f, cert) = build_example_one(&evens(), &swapped()).unwrap();
        assert_eq!(f.pieces()[0].1, ComputablePermutation::transposition(1, 2).unwrap());
        // Y = {2} ∪ first alternation half of Evens \ {2} = {2, 4, 8, 12, ...}
        let expected_y = PeriodicSet::residue_class(4, 0).unwrap().with(&[2]).unwrap();
        assert_eq!(cert.y.set(), &expected_y);
        assert_eq!(cert.fa, swapped());
        assert_eq!(cert.fy, cert.y);
        assert!(verify_certificate(&f, &cert));

        let outside = as_vertex(PeriodicSet::odds()).unwrap();
        assert_eq!(f.apply(&outside), Ok(outside));
    }

    #[test]
    fn example_one_errors() {
        assert_eq!(build_example_one(&evens(), &evens()).unwrap_err(), Error::EqualVertices);
        let other = evens().edit(&[], &[1]).unwrap();
        assert_eq!(
            build_example_one(&evens(), &other).unwrap_err(),
            Error::NotSameComponent
        );
    }

    #[test]
    fn certificate_rejections() {
        let (f, cert) = build_example_one(&evens(), &swapped()).unwrap();
        let mut not_subset = cert.clone();
        not_subset.y = as_vertex(PeriodicSet::odds()).unwrap();
        not_subset.fy = not_subset.y.clone();
        assert!(!verify_certificate(&f, &not_subset));

        let regular = RegularAutomorphism::new(pair_swap(), true);
        let regular_cert = NonRegularityCertificate {
            a: cert.a.clone(),
            y: cert.y.clone(),
            fa: regular.apply(&cert.a).unwrap(),
            fy: regular.apply(&cert.y).unwrap(),
        };
        assert!(!verify_certificate(&regular, &regular_cert));
    }

    #[test]
    fn piece_validation() {
        let t = ComputablePermutation::transposition(1, 2).unwrap();
        let dup = PiecewiseAutomorphism::new(vec![(evens(), t.clone()), (swapped(), t.clone())]);
        assert!(matches!(dup, Err(Error::InvalidPieces(_))));
        let leaves = PiecewiseAutomorphism::new(vec![(evens(), pair_swap())]);
        assert!(matches!(leaves, Err(Error::InvalidPieces(_))));
    }

    #[test]
    fn descriptions_round_trip_through_registry() {
        let registry = AutomorphismRegistry::default();
        let (f, _) = build_example_one(&evens(), &swapped()).unwrap();
        let spec = f.to_spec().unwrap();
        let rebuilt = registry.build(&spec).unwrap();
        assert_eq!(rebuilt.to_spec().unwrap(), spec);

        let g = RegularAutomorphism::new(pair_swap(), true);
        let rebuilt = registry.build(&g.to_spec().unwrap()).unwrap();
        assert_eq!(rebuilt.apply(&evens()), g.apply(&evens()));
    }
}
