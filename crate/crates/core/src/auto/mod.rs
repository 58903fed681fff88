//! Automorphisms of the infinite Johnson graph.
//!
//! Every kind of map (regular, piecewise, black box) implements
//! [`Automorphism`]. Classifiers and reconstructors only ever call
//! [`Automorphism::apply`], so they treat all kinds as untrusted black boxes
//! and report typed errors instead of assuming automorphism-hood.
//! Descriptions are built by name through an [`AutomorphismRegistry`].

mod order;
mod reconstruct;
mod regular;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{as_vertex, same_component, Vertex};
use crate::setalg::PeriodicSet;

pub use order::{
    check_covering_preservation, check_intersection_preservation, check_order_preserving_on_samples, order_sigma,
    reconstruct_order_preserving, OrderVerdict,
};
pub use reconstruct::{
    base_independence_check, classify_case, exactify_permutation, reconstruct_component_map, reconstruct_sigma,
    verify_restriction, Exactified, RestrictionCheck, RestrictionReport, SearchBounds,
};
pub use regular::{
    build_example_one, verify_certificate, NonRegularityCertificate, PiecewiseAutomorphism, RegularAutomorphism,
};

pub trait Automorphism: Send + Sync {
    /// Registry name of the description kind.
    fn kind(&self) -> &str;

    fn apply(&self, x: &Vertex) -> Result<Vertex>;

    /// Exchange-form description, when the map has one.
    fn to_spec(&self) -> Option<Value> {
        None
    }
}

pub type SharedAutomorphism = Arc<dyn Automorphism>;

pub fn apply_auto(f: &dyn Automorphism, x: &Vertex) -> Result<Vertex> {
    f.apply(x)
}

/// Stars go to stars (A) or stars go to tops (B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    CaseA,
    CaseB,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::CaseA => f.write_str("A (stars to stars)"),
            CaseTag::CaseB => f.write_str("B (stars to tops)"),
        }
    }
}

type VertexMap = dyn Fn(&Vertex) -> Result<PeriodicSet> + Send + Sync;

/// A caller-supplied map. Its outputs are checked to be vertices and nothing
/// else is assumed.
pub struct AutomorphismOracle {
    map: Box<VertexMap>,
    domain: Option<Vertex>,
}

impl AutomorphismOracle {
    pub fn new(map: impl Fn(&Vertex) -> Result<PeriodicSet> + Send + Sync + 'static) -> Self {
        AutomorphismOracle {
            map: Box::new(map),
            domain: None,
        }
    }

    /// Hides the description of `f`, leaving only point queries.
    pub fn black_box(f: SharedAutomorphism) -> Self {
        AutomorphismOracle::new(move |x| f.apply(x).map(Vertex::into_set))
    }

    /// Declares that the oracle is only defined on the component of `rep`.
    pub fn with_domain(mut self, rep: Vertex) -> Self {
        self.domain = Some(rep);
        self
    }
}

impl Automorphism for AutomorphismOracle {
    fn kind(&self) -> &str {
        "oracle"
    }

    fn apply(&self, x: &Vertex) -> Result<Vertex> {
        if let Some(rep) = &self.domain {
            if !same_component(x, rep) {
                return Err(Error::OracleFailure(format!(
                    "{x} lies outside the declared component of {rep}"
                )));
            }
        }
        let image = (self.map)(x)?;
        as_vertex(image).map_err(|e| Error::OracleFailure(format!("image of {x}: {e}")))
    }
}

/// `X ↦ N \ f(X)`.
pub struct Complemented(pub SharedAutomorphism);

impl Automorphism for Complemented {
    fn kind(&self) -> &str {
        "complemented"
    }

    fn apply(&self, x: &Vertex) -> Result<Vertex> {
        Ok(self.0.apply(x)?.complement())
    }
}

pub type AutomorphismBuilder = fn(&AutomorphismRegistry, &Value) -> Result<SharedAutomorphism>;

/// Builders for automorphism descriptions, keyed by their `kind` field.
pub struct AutomorphismRegistry {
    builders: BTreeMap<String, AutomorphismBuilder>,
}

impl AutomorphismRegistry {
    pub fn empty() -> Self {
        AutomorphismRegistry {
            builders: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, kind: &str, builder: AutomorphismBuilder) {
        self.builders.insert(kind.to_lowercase(), builder);
    }

    pub fn kinds(&self) -> impl Iterator<Item = &str> {
        self.builders.keys().map(String::as_str)
    }

    pub fn build(&self, spec: &Value) -> Result<SharedAutomorphism> {
        let kind = spec
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Format("automorphism description needs a string field `kind`".into()))?;
        let builder = self.builders.get(&kind.to_lowercase()).ok_or_else(|| {
            Error::Format(format!(
                "unknown automorphism kind `{kind}` (known: {})",
                self.kinds().collect::<Vec<_>>().join(", ")
            ))
        })?;
        builder(self, spec)
    }
}

impl Default for AutomorphismRegistry {
    fn default() -> Self {
        let mut registry = AutomorphismRegistry::empty();
        registry.register("regular", regular::build_regular);
        registry.register("piecewise", regular::build_piecewise);
        registry.register("identity", |_, _| Ok(Arc::new(RegularAutomorphism::identity())));
        registry.register("complement", |_, _| Ok(Arc::new(RegularAutomorphism::complement_map())));
        registry
    }
}
