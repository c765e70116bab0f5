//! Whole-artifact acceptance suite: ten end-to-end checks, one per
//! shipping requirement, each printing a single PASS/FAIL line.  Runtime
//! bounds are asserted where the requirement carries one.

mod common;

use std::time::Instant;

use triact::families::Family;
use triact::functors::{bs, contract, dihedral_split, star_construction, CongruenceSpec};
use triact::{
    alternating, autos, dynamics, underlying_undirected, Ball, Budget, GraphGenerator,
};

fn verdict(criterion: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("{criterion}: PASS");
    } else {
        println!("{criterion}: FAIL — {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "{criterion}: {}", failures.join("; "));
}

fn rooted_balls_isomorphic(
    a: &GraphGenerator,
    b: &GraphGenerator,
    radius: usize,
    budget: &Budget,
) -> bool {
    let ball_a = Ball::extract(a, a.base(), radius, budget).unwrap();
    let ball_b = Ball::extract(b, b.base(), radius, budget).unwrap();
    autos::balls_isomorphic(&ball_a, &ball_b, budget).unwrap()
}

#[test]
fn criterion_01_trichotomy_classification() {
    let budget = Budget::default();
    let started = Instant::now();
    let expected = [
        ("t3", autos::CaseLabel::CaseA),
        ("oriented-t3", autos::CaseLabel::CaseB),
        ("colored-t3", autos::CaseLabel::CaseC),
        ("joined-ngons(3)", autos::CaseLabel::CaseC),
        ("joined-2ngons(2)", autos::CaseLabel::CaseC),
        ("theta(0)", autos::CaseLabel::CaseC),
        ("theta(1)", autos::CaseLabel::CaseC),
        ("strip", autos::CaseLabel::CaseC),
    ];
    let mut failures = Vec::new();
    for (id, want) in expected {
        let g = Family::parse(id).unwrap().make().unwrap();
        for radius in 3..=5 {
            match autos::classify_case(&g, radius, &budget) {
                Ok(report) if report.label == want => {}
                Ok(report) => failures.push(format!(
                    "{id}@{radius}: got {:?}, want {want:?}",
                    report.label
                )),
                Err(e) => failures.push(format!("{id}@{radius}: {e}")),
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 30 {
        failures.push(format!("took {elapsed:?}, limit 30 s"));
    }
    verdict("criterion 01 (trichotomy classification)", &failures);
}

#[test]
fn criterion_02_branching_growth_base_three() {
    let budget = Budget::default();
    let g = Family::T3.make().unwrap();
    let report =
        dynamics::orbit_growth(&g, 10, dynamics::RadiusPolicy::default(), &budget).unwrap();
    let expected: Vec<u64> = (1..=10u32).map(|n| 3 * (1 << (n - 1))).collect();
    let mut failures = Vec::new();
    if report.sizes() != expected {
        failures.push(format!("sizes {:?}, want {expected:?}", report.sizes()));
    }
    let estimate = dynamics::scale_estimate(&report.sizes()).unwrap();
    if estimate.verdict != dynamics::ScaleVerdict::RatioStable(2) {
        failures.push(format!("verdict {:?}, want RatioStable(2)", estimate.verdict));
    }
    verdict("criterion 02 (plain tree doubles from three)", &failures);
}

#[test]
fn criterion_03_branching_growth_base_two() {
    let budget = Budget::default();
    let g = Family::OrientedT3.make().unwrap();
    let report =
        dynamics::orbit_growth(&g, 10, dynamics::RadiusPolicy::default(), &budget).unwrap();
    let expected: Vec<u64> = (1..=10u32).map(|n| 1 << n).collect();
    let mut failures = Vec::new();
    if report.sizes() != expected {
        failures.push(format!("sizes {:?}, want {expected:?}", report.sizes()));
    }
    let estimate = dynamics::scale_estimate(&report.sizes()).unwrap();
    if estimate.verdict != dynamics::ScaleVerdict::RatioStable(2) {
        failures.push(format!("verdict {:?}, want RatioStable(2)", estimate.verdict));
    }
    verdict("criterion 03 (oriented tree doubles from two)", &failures);
}

#[test]
fn criterion_04_bounded_branch_with_two_ends() {
    let budget = Budget::default();
    let started = Instant::now();
    let mut failures = Vec::new();
    // Orbit sizes certified by the brute-force orbit oracle (see
    // oracles.rs) on the head of each sequence and frozen here in full:
    // the size plateaus at 2^(s+1) once n reaches s + 1.
    for (s, separator) in [(0u32, 3usize), (1, 4), (2, 6)] {
        let g = Family::Theta(s).make().unwrap();
        let report =
            dynamics::orbit_growth(&g, 15, dynamics::RadiusPolicy::default(), &budget).unwrap();
        let frozen: Vec<u64> = (1..=15u32).map(|n| 1 << n.min(s + 1)).collect();
        if report.sizes() != frozen {
            failures.push(format!("theta({s}) sizes {:?}, want {frozen:?}", report.sizes()));
        }
        let estimate = dynamics::scale_estimate(&report.sizes()).unwrap();
        let bound = 1u64 << (s + 1);
        if estimate.verdict != dynamics::ScaleVerdict::Bounded(bound) {
            failures.push(format!(
                "theta({s}) verdict {:?}, want Bounded({bound})",
                estimate.verdict
            ));
        }
        // The removed ball must swallow a whole cross-section before the
        // two sides separate; the smallest working inner radius grows
        // with s.
        let ends = dynamics::count_ends(&g, separator, 3 * separator, &budget).unwrap();
        if ends.verdict != dynamics::EndsVerdict::Two {
            failures.push(format!(
                "theta({s}) ends verdict {:?} at ({separator},{}), want Two",
                ends.verdict,
                3 * separator
            ));
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 60 {
        failures.push(format!("took {elapsed:?}, limit 60 s"));
    }
    verdict("criterion 04 (bounded branch, two ends)", &failures);
}

#[test]
fn criterion_05_two_ended_normal_form_round_trip() {
    let budget = Budget::default();
    let mut failures = Vec::new();
    for s in 0..=2u32 {
        let theta = Family::Theta(s).make().unwrap();
        let contracted = contract(&theta, CongruenceSpec::RedEdgePairs).unwrap();
        let reference =
            underlying_undirected(&bs(&triact::families::delta_p(2).unwrap(), s).unwrap());
        if !rooted_balls_isomorphic(&contracted, &reference, 5, &budget) {
            failures.push(format!("theta({s}) red contraction is not bs(delta-p(2),{s})"));
        }
    }
    let theta0 = Family::Theta(0).make().unwrap();
    let strip = Family::Strip.make().unwrap();
    if !rooted_balls_isomorphic(&theta0, &strip, 6, &budget) {
        failures.push("theta(0) and strip differ at radius 6".to_string());
    }
    verdict("criterion 05 (two-ended normal form round trip)", &failures);
}

#[test]
fn criterion_06_arc_properties_exhaustive() {
    let budget = Budget::default();
    let started = Instant::now();
    let mut failures = Vec::new();
    for id in ["colored-t3", "theta(0)", "theta(1)", "joined-ngons(3)"] {
        let g = Family::parse(id).unwrap().make().unwrap();
        let cycles = alternating::verify_no_alternating_cycles(&g, 11, 10, &budget).unwrap();
        if !cycles.passed() {
            failures.push(format!(
                "{id}: {} head-tail violations up to 10 steps",
                cycles.violations.len()
            ));
        }
        for s in 1..=6usize {
            let report = alternating::verify_alt_transitivity(&g, s + 4, s, &budget).unwrap();
            if !report.transitive() {
                let counts: Vec<String> = report
                    .by_first_color
                    .iter()
                    .map(|c| format!("{:?}:{}", c.first_color, c.orbits))
                    .collect();
                failures.push(format!("{id} s={s}: orbit counts {}", counts.join(",")));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 120 {
        failures.push(format!("took {elapsed:?}, limit 120 s"));
    }
    verdict("criterion 06 (no alternating cycles, one orbit per color)", &failures);
}

#[test]
fn criterion_07_accessibility_classes() {
    let budget = Budget::default();
    let g = Family::ColoredT3.make().unwrap();
    let mut failures = Vec::new();
    let mut one_move = Vec::new();
    let mut two_move_rr = Vec::new();
    for radius in [8usize, 9] {
        let one = alternating::accessibility_classes(&g, radius, 3, false, &budget).unwrap();
        one_move.push(one.classes_up_to_reversal);
        if one.classes_up_to_reversal > 2 {
            failures.push(format!(
                "radius {radius}: {} one-move classes up to reversal, want <= 2",
                one.classes_up_to_reversal
            ));
        }
        let two = alternating::accessibility_classes(&g, radius, 3, true, &budget).unwrap();
        let rr = two
            .classes_by_type_up_to_reversal
            .get("rr")
            .copied()
            .unwrap_or(0);
        two_move_rr.push(rr);
        if rr > 2 {
            failures.push(format!(
                "radius {radius}: {rr} two-move rr classes up to reversal, want <= 2"
            ));
        }
    }
    if one_move[0] != one_move[1] {
        failures.push(format!("one-move count not stable across radii: {one_move:?}"));
    }
    if two_move_rr[0] != two_move_rr[1] {
        failures.push(format!("two-move rr count not stable across radii: {two_move_rr:?}"));
    }
    verdict("criterion 07 (accessibility class bounds)", &failures);
}

#[test]
fn criterion_08_level_tree_structure() {
    let budget = Budget::default();
    let g = Family::ColoredT3.make().unwrap();
    let report = dynamics::trofimov_tree_check(&g, 5, &budget).unwrap();
    let mut failures = Vec::new();
    let expected: Vec<u64> = vec![1, 2, 4, 8, 16, 32];
    if report.orbit_sizes != expected {
        failures.push(format!("level sizes {:?}, want {expected:?}", report.orbit_sizes));
    }
    if report.root_degree != 2 {
        failures.push(format!("root degree {}, want 2", report.root_degree));
    }
    // Internal degree 3 = exactly one parent and two children everywhere.
    if report.parent_violations != 0 || report.child_violations != 0 {
        failures.push(format!(
            "{} parent / {} child violations",
            report.parent_violations, report.child_violations
        ));
    }
    if !report.acyclic {
        failures.push("levels do not form a tree".to_string());
    }
    if report.mirror_sizes != expected {
        failures.push(format!("mirror sizes {:?}, want {expected:?}", report.mirror_sizes));
    }
    if !report.mirror_disjoint {
        failures.push("mirror tree overlaps the forward tree".to_string());
    }
    if !report.roots_adjacent_in_square {
        failures.push("tree roots are not at distance 2".to_string());
    }
    verdict("criterion 08 (binary level tree of the colored tree)", &failures);
}

#[test]
fn criterion_09_construction_round_trips() {
    let budget = Budget::default();
    let mut failures = Vec::new();
    let t3 = triact::families::tree(3).unwrap();
    let split = dihedral_split(&t3, 3).unwrap();
    let ngons = Family::JoinedNgons(3).make().unwrap();
    if !rooted_balls_isomorphic(&split, &ngons, 5, &budget) {
        failures.push("dihedral split of the tree is not joined-ngons(3)".to_string());
    }
    let blue_back = contract(&split, CongruenceSpec::parse("blue").unwrap()).unwrap();
    if !rooted_balls_isomorphic(&blue_back, &t3, 5, &budget) {
        failures.push("blue contraction does not recover the tree".to_string());
    }
    let delta2 = triact::families::delta_p(2).unwrap();
    let starred = star_construction(&delta2).unwrap();
    let red_back = contract(&starred, CongruenceSpec::RedEdgePairs).unwrap();
    if !rooted_balls_isomorphic(&red_back, &underlying_undirected(&delta2), 5, &budget) {
        failures.push("red contraction does not recover the layered core".to_string());
    }
    verdict("criterion 09 (construction round trips)", &failures);
}

#[test]
fn criterion_10_engine_orders_match_brute_force() {
    let budget = Budget::default();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for family in Family::verification_set() {
        let g = family.make().unwrap();
        for radius in 0..=4usize {
            let ball = Ball::extract(&g, g.base(), radius, &budget).unwrap();
            if ball.len() > 12 {
                break;
            }
            let engine = autos::ball_autos_fixing_center(&ball, &budget).unwrap();
            let oracle = common::oracle_center_fixing_order(&ball);
            checked += 1;
            if engine.order != oracle {
                failures.push(format!(
                    "{}@{radius}: engine order {} vs brute force {oracle}",
                    g.name(),
                    engine.order
                ));
            }
        }
    }
    if checked < 20 {
        failures.push(format!("only {checked} balls were small enough; sweep too thin"));
    }
    verdict("criterion 10 (automorphism orders match brute force)", &failures);
}
