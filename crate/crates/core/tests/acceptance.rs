//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use jinf::oracle::{aut_group_order, build_johnson_finite, build_kneser_finite, Budget, FiniteGraph};
use jinf::suite::{run_check, Status, SuiteConfig, SuiteRegistry};

const CRITERIA: [(usize, &str); 8] = [
    (1, "theorem1.round_trip"),
    (2, "theorem1.non_regular"),
    (3, "lemma3.base_independence"),
    (4, "theorem2.order_preserving"),
    (5, "oracle.finite_ground_truth"),
    (6, "graph.distance_law"),
    (7, "kneser.metric"),
    (8, "core.algebra"),
];

/// Counts automorphisms by extending partial maps in index order, with no
/// refinement at all.
fn naive_aut_count(g: &FiniteGraph) -> u64 {
    fn extend(g: &FiniteGraph, image: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        let u = image.len();
        if u == g.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for c in 0..g.vertex_count() {
            if used[c] || (0..u).any(|w| g.adjacent(u, w) != g.adjacent(c, image[w])) {
                continue;
            }
            used[c] = true;
            image.push(c);
            total += extend(g, image, used);
            image.pop();
            used[c] = false;
        }
        total
    }
    extend(g, &mut Vec::new(), &mut vec![false; g.vertex_count()])
}

/// The constants pinned in criterion 5, recomputed by a second search.
fn independent_counts() -> Result<(), String> {
    let graphs = [
        ("J(5,2)", build_johnson_finite(5, 2), 120),
        ("J(6,3)", build_johnson_finite(6, 3), 1440),
        ("K(5,2)", build_kneser_finite(5, 2), 120),
    ];
    for (label, g, pinned) in graphs {
        let g = g.map_err(|e| e.to_string())?;
        let naive = naive_aut_count(&g);
        let refined = aut_group_order(&g, Budget::default()).map_err(|e| e.to_string())?;
        if naive != pinned || refined != pinned {
            return Err(format!("{label}: pinned {pinned}, naive {naive}, refined {refined}"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let registry = SuiteRegistry::default();
    let config = SuiteConfig::default();
    let mut failures = 0;
    for (number, name) in CRITERIA {
        let check = registry.get(name).expect("every criterion has a registered check");
        let record = run_check(check, &config);
        let mut status = record.outcome.status;
        let mut detail = record.outcome.detail.clone();
        if number == 5 {
            let start = Instant::now();
            match independent_counts() {
                Ok(()) => detail.push_str(&format!("; naive recount agrees ({} ms)", start.elapsed().as_millis())),
                Err(e) => {
                    status = Status::Fail;
                    detail.push_str(&format!("; naive recount disagrees: {e}"));
                }
            }
        }
        println!(
            "criterion {number} {} {name} ({} ms): {detail}",
            status.label(),
            record.millis
        );
        if let Some(w) = &record.outcome.witness {
            println!("    witness: {w}");
        }
        if status != Status::Pass {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
