//! Property checks over the whole library, run by name from a registry.
//!
//! Every check owns its random source, seeded from the suite seed and the
//! check's name, so a report is reproducible from the seed alone. Checks run
//! concurrently and their records are sorted by name.

mod checks;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;

pub use checks::{
    BaseIndependence, CoreAlgebra, DistanceLaw, ExampleOne, FiniteOracles, KneserMetric, OrderPreserving, RoundTrip,
};

pub const DEFAULT_SEED: u64 = 20_260_101;

/// Faults planted on purpose to show the suite notices them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Toggle one adjacency bit in the finite graphs the oracles build.
    FlipAdjacencyBit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub filter: Option<String>,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            filter: None,
            mutation: None,
        }
    }
}

impl SuiteConfig {
    pub fn with_seed(seed: u64) -> Self {
        SuiteConfig {
            seed,
            ..SuiteConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub detail: String,
    pub witness: Option<Value>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(detail: impl Into<String>, witness: Value) -> Self {
        Outcome {
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            status: Status::Error,
            detail: e.to_string(),
            witness: Some(json!({ "error": format!("{e:?}") })),
        }
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &str;

    /// One-line statement of the property.
    fn criterion(&self) -> &str;

    fn run(&self, config: &SuiteConfig) -> crate::Result<Outcome>;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub criterion: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.outcome.status == Status::Pass)
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.records,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            writeln!(
                out,
                "{} {} ({} ms): {}",
                r.outcome.status.label(),
                r.name,
                r.millis,
                r.outcome.detail
            )
            .unwrap();
            if let Some(w) = &r.outcome.witness {
                writeln!(out, "    witness: {w}").unwrap();
            }
        }
        let failed = self.records.iter().filter(|r| r.outcome.status != Status::Pass).count();
        writeln!(
            out,
            "{} checks, {} failed, seed {}",
            self.records.len(),
            failed,
            self.seed
        )
        .unwrap();
        out
    }

    /// Records without timings, for comparing runs.
    pub fn content(&self) -> Vec<(String, Outcome)> {
        self.records
            .iter()
            .map(|r| (r.name.clone(), r.outcome.clone()))
            .collect()
    }
}

pub struct SuiteRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        SuiteRegistry { checks: Vec::new() }
    }

    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.push(check);
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.checks.iter().map(|c| c.name()).collect();
        names.sort_unstable();
        names
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn run(&self, config: &SuiteConfig) -> SuiteReport {
        let selected: Vec<&dyn Check> = self
            .checks
            .iter()
            .map(|c| c.as_ref())
            .filter(|c| config.filter.as_deref().is_none_or(|f| c.name().contains(f)))
            .collect();
        let mut records: Vec<CheckRecord> = std::thread::scope(|scope| {
            let handles: Vec<_> = selected
                .iter()
                .map(|&check| scope.spawn(move || run_check(check, config)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
        });
        records.sort_by(|a, b| a.name.cmp(&b.name));
        SuiteReport {
            seed: config.seed,
            records,
        }
    }
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut registry = SuiteRegistry::empty();
        registry.register(Box::new(RoundTrip));
        registry.register(Box::new(ExampleOne));
        registry.register(Box::new(BaseIndependence));
        registry.register(Box::new(OrderPreserving));
        registry.register(Box::new(FiniteOracles));
        registry.register(Box::new(DistanceLaw));
        registry.register(Box::new(KneserMetric));
        registry.register(Box::new(CoreAlgebra));
        registry
    }
}

pub fn run_check(check: &dyn Check, config: &SuiteConfig) -> CheckRecord {
    let start = Instant::now();
    let outcome = check.run(config).unwrap_or_else(|e| Outcome::error(&e));
    CheckRecord {
        name: check.name().to_string(),
        criterion: check.criterion().to_string(),
        outcome,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    SuiteRegistry::default().run(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_by_name() {
        let config = SuiteConfig {
            filter: Some("theorem2".into()),
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].name, "theorem2.order_preserving");
        assert!(report.passed(), "{}", report.to_text());
    }

    #[test]
    fn same_seed_same_content() {
        let config = SuiteConfig {
            filter: Some("kneser".into()),
            ..SuiteConfig::with_seed(5)
        };
        assert_eq!(run_suite(&config).content(), run_suite(&config).content());
    }

    #[test]
    fn planted_fault_is_reported_with_witness() {
        let config = SuiteConfig {
            filter: Some("oracle.".into()),
            mutation: Some(Mutation::FlipAdjacencyBit),
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        assert!(!report.passed());
        assert!(report.records.iter().all(|r| r.outcome.witness.is_some()));
        assert!(report.to_json()["checks"][0]["witness"].is_object());
    }

    #[test]
    fn registry_lists_every_check() {
        assert_eq!(
            SuiteRegistry::default().names(),
            vec![
                "core.algebra",
                "graph.distance_law",
                "kneser.metric",
                "lemma3.base_independence",
                "oracle.finite_ground_truth",
                "theorem1.non_regular",
                "theorem1.round_trip",
                "theorem2.order_preserving",
            ]
        );
    }
}
