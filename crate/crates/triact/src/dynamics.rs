//! Large-scale dynamics read off finite balls: orbit growth along the
//! declared line, scale estimation from the growth sequence, end counting
//! via annulus components, and the binary-tree detector in the distance-2
//! power graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::alternating::UnionFind;
use crate::autos::{local_orbit, orbit_of};
use crate::graph::LineKind;
use crate::{Ball, Budget, Error, GraphGenerator, Result, VertexToken};

/// Ball radius used for the orbit of the n-th line vertex: its line offset
/// plus a safety margin. The offset dominates the vertex's distance from the
/// base, so the target is always inside the ball.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RadiusPolicy {
    pub margin: usize,
}

impl Default for RadiusPolicy {
    fn default() -> Self {
        RadiusPolicy { margin: 2 }
    }
}

impl RadiusPolicy {
    pub fn radius(&self, line_offset: usize) -> usize {
        line_offset + self.margin
    }
}

/// Raw line index of the n-th alpha vertex.
fn alpha_offset(kind: LineKind, n: i64) -> i64 {
    match kind {
        LineKind::Alternating => 2 * n,
        LineKind::Directed | LineKind::Geodesic => n,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitGrowthEntry {
    pub n: usize,
    pub radius: usize,
    /// Actual graph distance from the base to the n-th alpha vertex.
    pub distance: usize,
    pub orbit_size: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitGrowthReport {
    pub margin: usize,
    pub entries: Vec<OrbitGrowthEntry>,
}

impl OrbitGrowthReport {
    pub fn sizes(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.orbit_size).collect()
    }
}

/// o_n = size of the orbit of the n-th alpha vertex under center-fixing
/// automorphisms of the ball prescribed by the radius policy, n = 1..=n_max.
pub fn orbit_growth(
    g: &GraphGenerator,
    n_max: usize,
    policy: RadiusPolicy,
    budget: &Budget,
) -> Result<OrbitGrowthReport> {
    let line = g.line()?;
    let mut entries = Vec::new();
    for n in 1..=n_max {
        let target = line.alpha(n as i64);
        let offset = alpha_offset(line.kind, n as i64).unsigned_abs() as usize;
        let radius = policy.radius(offset);
        let ball = Ball::extract(g, g.base(), radius, budget)?;
        let Some(ti) = ball.index_of(&target) else {
            return Err(Error::precondition(format!(
                "line vertex {target} missing from the radius-{radius} ball"
            )));
        };
        let orbit = orbit_of(&ball, ti, budget)?;
        entries.push(OrbitGrowthEntry {
            n,
            radius,
            distance: ball.depth_of(ti) as usize,
            orbit_size: orbit.len() as u64,
        });
    }
    Ok(OrbitGrowthReport {
        margin: policy.margin,
        entries,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum ScaleVerdict {
    /// The last three consecutive ratios are the same integer.
    RatioStable(u64),
    /// The sequence is constant at its maximum over its last third.
    Bounded(u64),
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScaleEstimate {
    pub sizes: Vec<u64>,
    pub ratios: Vec<f64>,
    pub nth_roots: Vec<f64>,
    pub verdict: ScaleVerdict,
    /// Scale implied by the verdict: the stable ratio, or 1 when bounded.
    pub scale: Option<u64>,
}

/// Estimate the growth rate of an orbit-size sequence. Ratios are preferred
/// over n-th roots because the roots converge slowly while the ratios are
/// exact integers on every shipped family.
pub fn scale_estimate(sizes: &[u64]) -> Result<ScaleEstimate> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::precondition(
            "scale estimation needs a nonempty positive sequence".to_string(),
        ));
    }
    let ratios: Vec<f64> = sizes.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let nth_roots: Vec<f64> = sizes
        .iter()
        .enumerate()
        .map(|(i, &o)| (o as f64).powf(1.0 / (i + 1) as f64))
        .collect();
    let max = *sizes.iter().max().unwrap();
    // A single trailing maximum is no evidence of a plateau; insist on at
    // least two constant entries when the sequence has them.
    let tail = sizes.len().div_ceil(3).max(2).min(sizes.len());
    let verdict = if sizes[sizes.len() - tail..].iter().all(|&o| o == max) {
        ScaleVerdict::Bounded(max)
    } else if sizes.len() >= 4 {
        let mut q = None;
        let mut stable = true;
        for w in sizes[sizes.len() - 4..].windows(2) {
            if w[1] % w[0] != 0 || *q.get_or_insert(w[1] / w[0]) != w[1] / w[0] {
                stable = false;
                break;
            }
        }
        match (stable, q) {
            (true, Some(v)) => ScaleVerdict::RatioStable(v),
            _ => ScaleVerdict::Inconclusive,
        }
    } else {
        ScaleVerdict::Inconclusive
    };
    let scale = match verdict {
        ScaleVerdict::RatioStable(v) => Some(v),
        ScaleVerdict::Bounded(_) => Some(1),
        ScaleVerdict::Inconclusive => None,
    };
    Ok(ScaleEstimate {
        sizes: sizes.to_vec(),
        ratios,
        nth_roots,
        verdict,
        scale,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum EndsVerdict {
    One,
    Two,
    Many(usize),
    Inconclusive,
}

/// Census of annulus components that reach the outer sphere.
#[derive(Clone, Debug, Serialize)]
pub struct EndsEstimate {
    pub inner_radius: usize,
    pub outer_radius: usize,
    /// Component counts after removing the open ball of radius 1, 2, …,
    /// inner_radius. Diagnostic; the verdict uses the last entry.
    pub counts: Vec<usize>,
    pub components: usize,
    pub verdict: EndsVerdict,
}

fn annulus_components(ball: &Ball, inner: u32, outer: usize) -> usize {
    let n = ball.len();
    let mut uf = UnionFind::new(n);
    for v in 0..n as u32 {
        if ball.depth_of(v) < inner {
            continue;
        }
        for &(u, _) in ball.neighbors(v) {
            if u > v && ball.depth_of(u) >= inner {
                uf.union(v as usize, u as usize);
            }
        }
    }
    let mut roots = BTreeSet::new();
    for v in ball.sphere(outer) {
        roots.insert(uf.find(v as usize));
    }
    roots.len()
}

/// Count the components of `B(base, R) minus the open ball of radius r` that
/// reach the depth-R sphere: the finite surrogate for the number of ends.
pub fn count_ends(
    g: &GraphGenerator,
    inner_radius: usize,
    outer_radius: usize,
    budget: &Budget,
) -> Result<EndsEstimate> {
    if inner_radius < 1 || outer_radius < 3 * inner_radius {
        return Err(Error::InvalidParameter {
            name: "outer_radius",
            value: outer_radius as i64,
            reason: format!(
                "end counting needs outer >= 3 * inner >= 3 (inner = {inner_radius})"
            ),
        });
    }
    let ball = Ball::extract(g, g.base(), outer_radius, budget)?;
    let counts: Vec<usize> = (1..=inner_radius)
        .map(|inner| annulus_components(&ball, inner as u32, outer_radius))
        .collect();
    let components = *counts.last().unwrap();
    let verdict = match components {
        0 => EndsVerdict::Inconclusive,
        1 => EndsVerdict::One,
        2 => EndsVerdict::Two,
        k => EndsVerdict::Many(k),
    };
    Ok(EndsEstimate {
        inner_radius,
        outer_radius,
        counts,
        components,
        verdict,
    })
}

/// Result of looking for the rooted binary tree spanned by line-vertex
/// orbits inside the distance-2 power graph.
#[derive(Clone, Debug, Serialize)]
pub struct TrofimovReport {
    pub depth: usize,
    pub margin: usize,
    pub orbit_sizes: Vec<u64>,
    pub expected_sizes: Vec<u64>,
    /// Set when some orbit size differs from 2^n; the tree is not built.
    pub hypothesis_failed: bool,
    pub root_degree: usize,
    /// Level vertices without exactly one distance-2 neighbor a level up.
    pub parent_violations: usize,
    /// Non-leaf level vertices without exactly two children a level down.
    pub child_violations: usize,
    pub acyclic: bool,
    pub mirror_sizes: Vec<u64>,
    pub mirror_disjoint: bool,
    pub roots_adjacent_in_square: bool,
}

impl TrofimovReport {
    pub fn passed(&self) -> bool {
        !self.hypothesis_failed
            && self.root_degree == 2
            && self.parent_violations == 0
            && self.child_violations == 0
            && self.acyclic
            && self.mirror_disjoint
            && self.roots_adjacent_in_square
    }
}

fn failed_hypothesis(depth: usize, margin: usize, orbit_sizes: Vec<u64>) -> TrofimovReport {
    TrofimovReport {
        depth,
        margin,
        orbit_sizes,
        expected_sizes: (0..=depth).map(|n| 1u64 << n).collect(),
        hypothesis_failed: true,
        root_degree: 0,
        parent_violations: 0,
        child_violations: 0,
        acyclic: false,
        mirror_sizes: Vec::new(),
        mirror_disjoint: false,
        roots_adjacent_in_square: false,
    }
}

/// Check that the orbits of the alpha vertices form levels of a rooted
/// binary tree in the distance-2 power graph (orbit sizes 2^n, one parent
/// per vertex, two children per internal vertex), and that the mirror tree
/// rooted at the previous alpha vertex is disjoint from it with the two
/// roots adjacent in the power graph — together a 3-regular tree.
pub fn trofimov_tree_check(
    g: &GraphGenerator,
    depth: usize,
    budget: &Budget,
) -> Result<TrofimovReport> {
    if depth < 1 {
        return Err(Error::InvalidParameter {
            name: "depth",
            value: depth as i64,
            reason: "the tree needs at least one level".to_string(),
        });
    }
    let policy = RadiusPolicy::default();
    let line = g.line()?;
    let root = line.alpha(0);
    let mirror_root = line.alpha(-1);

    let mut orbit_sizes = vec![1u64];
    let mut levels: Vec<Vec<VertexToken>> = vec![vec![root.clone()]];
    for n in 1..=depth {
        let target = line.alpha(n as i64);
        let offset = alpha_offset(line.kind, n as i64).unsigned_abs() as usize;
        let tokens = local_orbit(g, &root, &target, policy.radius(offset), budget)?;
        orbit_sizes.push(tokens.len() as u64);
        if tokens.len() as u64 != 1u64 << n {
            return Ok(failed_hypothesis(depth, policy.margin, orbit_sizes));
        }
        levels.push(tokens);
    }

    let big_offset = alpha_offset(line.kind, depth as i64).unsigned_abs() as usize;
    let ball = Ball::extract(g, &root, policy.radius(big_offset), budget)?;
    let mut level_sets: Vec<BTreeSet<u32>> = Vec::with_capacity(levels.len());
    for level in &levels {
        let mut set = BTreeSet::new();
        for t in level {
            let Some(i) = ball.index_of(t) else {
                return Err(Error::precondition(format!(
                    "orbit vertex {t} missing from the tree-check ball"
                )));
            };
            set.insert(i);
        }
        level_sets.push(set);
    }

    let mut root_degree = 0;
    let mut parent_violations = 0;
    let mut child_violations = 0;
    for n in 1..=depth {
        let mut child_count: BTreeMap<u32, usize> =
            level_sets[n - 1].iter().map(|&u| (u, 0)).collect();
        for &v in &level_sets[n] {
            let mut parents = BTreeSet::new();
            for &(w, _) in ball.neighbors(v) {
                for &(x, _) in ball.neighbors(w) {
                    if level_sets[n - 1].contains(&x) {
                        parents.insert(x);
                    }
                }
            }
            if parents.len() != 1 {
                parent_violations += 1;
            }
            for p in parents {
                *child_count.get_mut(&p).unwrap() += 1;
            }
        }
        if n == 1 {
            root_degree = child_count.values().sum();
        }
        child_violations += child_count.values().filter(|&&c| c != 2).count();
    }
    let acyclic = parent_violations == 0;

    let mut mirror_sizes = vec![1u64];
    let mut mirror_levels: Vec<Vec<VertexToken>> = vec![vec![mirror_root.clone()]];
    for n in 1..=depth {
        let target = line.alpha(-1 - n as i64);
        let offset = (alpha_offset(line.kind, -1 - n as i64) - alpha_offset(line.kind, -1))
            .unsigned_abs() as usize;
        let tokens = local_orbit(g, &mirror_root, &target, policy.radius(offset), budget)?;
        mirror_sizes.push(tokens.len() as u64);
        mirror_levels.push(tokens);
    }
    let forward: BTreeSet<&VertexToken> = levels.iter().flatten().collect();
    let backward: BTreeSet<&VertexToken> = mirror_levels.iter().flatten().collect();
    let mirror_disjoint = forward.is_disjoint(&backward);
    let roots_adjacent_in_square = ball
        .index_of(&mirror_root)
        .map(|i| ball.depth_of(i) == 2)
        .unwrap_or(false);

    Ok(TrofimovReport {
        depth,
        margin: policy.margin,
        orbit_sizes,
        expected_sizes: (0..=depth).map(|n| 1u64 << n).collect(),
        hypothesis_failed: false,
        root_degree,
        parent_violations,
        child_violations,
        acyclic,
        mirror_sizes,
        mirror_disjoint,
        roots_adjacent_in_square,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DichotomyBranch {
    /// Some orbit is strictly smaller than 2^n: the graph should have two
    /// ends.
    Inequality,
    /// Every tested orbit has size exactly 2^n: the power graph should
    /// contain the 3-regular tree.
    Equality,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub n_max: usize,
    pub orbit_sizes: Vec<u64>,
    pub branch: DichotomyBranch,
    pub ends: Option<EndsEstimate>,
    pub tree_check: Option<TrofimovReport>,
    pub cross_check_passed: bool,
}

/// Decide which side of the growth dichotomy the graph realizes at desk
/// scale and cross-check the structural consequence: two ends for the
/// inequality branch, the power-graph tree for the equality branch.
pub fn uniscalar_dichotomy(
    g: &GraphGenerator,
    n_max: usize,
    budget: &Budget,
) -> Result<DichotomyReport> {
    if n_max < 1 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: n_max as i64,
            reason: "the dichotomy needs at least one orbit".to_string(),
        });
    }
    let sizes = orbit_growth(g, n_max, RadiusPolicy::default(), budget)?.sizes();
    let branch = if sizes.iter().enumerate().any(|(i, &o)| o < 1u64 << (i + 1)) {
        DichotomyBranch::Inequality
    } else if sizes.iter().enumerate().all(|(i, &o)| o == 1u64 << (i + 1)) {
        DichotomyBranch::Equality
    } else {
        DichotomyBranch::Neither
    };
    let (ends, tree_check, cross_check_passed) = match branch {
        DichotomyBranch::Inequality => {
            // A small removed ball can fail to separate a two-ended graph
            // (the separator must swallow a whole cross-section), so grow
            // the inner radius until a two-sided cut shows up.
            let mut last = None;
            let mut ok = false;
            for inner in 3..=8 {
                let ends = count_ends(g, inner, 3 * inner, budget)?;
                ok = ends.verdict == EndsVerdict::Two;
                last = Some(ends);
                if ok {
                    break;
                }
            }
            (last, None, ok)
        }
        DichotomyBranch::Equality => {
            let report = trofimov_tree_check(g, n_max.min(5), budget)?;
            let ok = report.passed();
            (None, Some(report), ok)
        }
        DichotomyBranch::Neither => (None, None, false),
    };
    Ok(DichotomyReport {
        n_max,
        orbit_sizes: sizes,
        branch,
        ends,
        tree_check,
        cross_check_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn scale_estimates_match_the_worked_sequences() {
        let doubling = scale_estimate(&[3, 6, 12, 24, 48]).unwrap();
        assert_eq!(doubling.verdict, ScaleVerdict::RatioStable(2));
        assert_eq!(doubling.scale, Some(2));
        let powers = scale_estimate(&[2, 4, 8, 16]).unwrap();
        assert_eq!(powers.verdict, ScaleVerdict::RatioStable(2));
        let constant = scale_estimate(&[2, 2, 2, 2, 2, 2]).unwrap();
        assert_eq!(constant.verdict, ScaleVerdict::Bounded(2));
        assert_eq!(constant.scale, Some(1));
        let capped = scale_estimate(&[2, 4, 4, 4]).unwrap();
        assert_eq!(capped.verdict, ScaleVerdict::Bounded(4));
        let short = scale_estimate(&[2, 4, 8]).unwrap();
        assert_eq!(short.verdict, ScaleVerdict::Inconclusive);
        let ragged = scale_estimate(&[3, 5, 9, 11]).unwrap();
        assert_eq!(ragged.verdict, ScaleVerdict::Inconclusive);
        assert!(scale_estimate(&[]).is_err());
    }

    #[test]
    fn tree_orbit_growth_doubles_from_the_branching() {
        let g = families::tree(3).unwrap();
        let report = orbit_growth(&g, 4, RadiusPolicy::default(), &budget()).unwrap();
        assert_eq!(report.sizes(), [3, 6, 12, 24]);
        for entry in &report.entries {
            assert_eq!(entry.distance, entry.n);
        }
        let oriented = families::oriented_t3();
        let report = orbit_growth(&oriented, 4, RadiusPolicy::default(), &budget()).unwrap();
        assert_eq!(report.sizes(), [2, 4, 8, 16]);
        let colored = families::colored_t3();
        let report = orbit_growth(&colored, 3, RadiusPolicy::default(), &budget()).unwrap();
        assert_eq!(report.sizes(), [2, 4, 8]);
        for entry in &report.entries {
            assert_eq!(entry.distance, 2 * entry.n);
        }
    }

    #[test]
    fn narrow_families_have_bounded_orbit_growth() {
        let g = families::Family::parse("theta(0)").unwrap().make().unwrap();
        let sizes = orbit_growth(&g, 6, RadiusPolicy::default(), &budget())
            .unwrap()
            .sizes();
        assert_eq!(sizes, [2, 2, 2, 2, 2, 2]);
        let estimate = scale_estimate(&sizes).unwrap();
        assert_eq!(estimate.verdict, ScaleVerdict::Bounded(2));
    }

    #[test]
    fn end_census_separates_narrow_and_branching_families() {
        let theta = families::Family::parse("theta(0)").unwrap().make().unwrap();
        let ends = count_ends(&theta, 2, 8, &budget()).unwrap();
        assert_eq!(ends.verdict, EndsVerdict::Two);
        let tree = families::tree(3).unwrap();
        let ends = count_ends(&tree, 2, 6, &budget()).unwrap();
        assert_eq!(ends.verdict, EndsVerdict::Many(6));
        assert_eq!(ends.counts, [3, 6]);
        assert!(count_ends(&tree, 2, 5, &budget()).is_err());
    }

    #[test]
    fn colored_tree_levels_form_the_binary_tree() {
        let g = families::colored_t3();
        let report = trofimov_tree_check(&g, 3, &budget()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.orbit_sizes, [1, 2, 4, 8]);
        assert_eq!(report.root_degree, 2);
    }

    #[test]
    fn bounded_growth_fails_the_tree_hypothesis() {
        let g = families::Family::parse("theta(0)").unwrap().make().unwrap();
        let report = trofimov_tree_check(&g, 3, &budget()).unwrap();
        assert!(report.hypothesis_failed);
        assert!(!report.passed());
    }

    #[test]
    fn dichotomy_branches_are_cross_checked() {
        let theta = families::Family::parse("theta(1)").unwrap().make().unwrap();
        let report = uniscalar_dichotomy(&theta, 3, &budget()).unwrap();
        assert_eq!(report.branch, DichotomyBranch::Inequality);
        assert!(report.cross_check_passed, "{report:?}");
        let colored = families::colored_t3();
        let report = uniscalar_dichotomy(&colored, 3, &budget()).unwrap();
        assert_eq!(report.branch, DichotomyBranch::Equality);
        assert!(report.cross_check_passed, "{report:?}");
    }
}
