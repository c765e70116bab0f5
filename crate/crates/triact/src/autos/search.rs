//! Decorated rooted-ball isomorphism search.
//!
//! The searcher finds bijections between two balls that preserve adjacency,
//! edge colors, orientations, and any pinned vertex pairs. It is exact: a
//! `None` answer proves no such bijection exists. Pruning uses equitable
//! partition refinement, which is sound because refinement classes are
//! invariant under every pin-respecting isomorphism.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::EdgeDecoration;
use crate::{Ball, Budget, Error, Result};

const UNSET: u32 = u32::MAX;

/// Jointly refine both balls into matching vertex classes. Returns `None`
/// when the class profiles prove that no pin-respecting isomorphism exists.
pub(crate) fn joint_classes(
    a: &Ball,
    b: &Ball,
    pins: &[(u32, u32)],
) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let mut tag_a = vec![UNSET; n];
    let mut tag_b = vec![UNSET; n];
    for (k, &(pa, pb)) in pins.iter().enumerate() {
        let k = k as u32;
        let (pa, pb) = (pa as usize, pb as usize);
        if tag_a[pa] == UNSET && tag_b[pb] == UNSET {
            tag_a[pa] = k;
            tag_b[pb] = k;
        } else if tag_a[pa] != tag_b[pb] {
            // One endpoint already pinned elsewhere: contradictory pins.
            return None;
        }
    }

    let mut ids: BTreeMap<(u32, u32, Vec<EdgeDecoration>), u32> = BTreeMap::new();
    let mut class_a = vec![0u32; n];
    let mut class_b = vec![0u32; n];
    for (ball, tags, classes) in [(a, &tag_a, &mut class_a), (b, &tag_b, &mut class_b)] {
        for v in 0..n {
            let mut decs: Vec<EdgeDecoration> =
                ball.neighbors(v as u32).iter().map(|&(_, d)| d).collect();
            decs.sort();
            let key = (tags[v], ball.depth_of(v as u32), decs);
            let next = ids.len() as u32;
            classes[v] = *ids.entry(key).or_insert(next);
        }
    }
    let mut class_count = ids.len();

    loop {
        let mut ids: BTreeMap<(u32, Vec<(u32, EdgeDecoration)>), u32> = BTreeMap::new();
        let mut next_a = vec![0u32; n];
        let mut next_b = vec![0u32; n];
        for (ball, classes, next) in [(a, &class_a, &mut next_a), (b, &class_b, &mut next_b)] {
            for v in 0..n {
                let mut around: Vec<(u32, EdgeDecoration)> = ball
                    .neighbors(v as u32)
                    .iter()
                    .map(|&(u, d)| (classes[u as usize], d))
                    .collect();
                around.sort();
                let key = (classes[v], around);
                let fresh = ids.len() as u32;
                next[v] = *ids.entry(key).or_insert(fresh);
            }
        }
        if ids.len() == class_count {
            break;
        }
        class_count = ids.len();
        class_a = next_a;
        class_b = next_b;
    }

    let mut count_a = vec![0u32; class_count];
    let mut count_b = vec![0u32; class_count];
    for v in 0..n {
        count_a[class_a[v] as usize] += 1;
        count_b[class_b[v] as usize] += 1;
    }
    if count_a != count_b {
        return None;
    }
    Some((class_a, class_b))
}

/// Breadth-first processing order seeded at the pinned vertices, so that
/// pin constraints propagate outward and failures surface early.
fn multi_source_order(a: &Ball, pins: &[(u32, u32)]) -> Vec<u32> {
    let n = a.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &(pa, _) in pins {
        if !seen[pa as usize] {
            seen[pa as usize] = true;
            queue.push_back(pa);
        }
    }
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &(u, _) in a.neighbors(v) {
            if !seen[u as usize] {
                seen[u as usize] = true;
                queue.push_back(u);
            }
        }
    }
    for v in 0..n as u32 {
        if !seen[v as usize] {
            order.push(v);
        }
    }
    order
}

fn consistent(a: &Ball, b: &Ball, phi: &[u32], psi: &[u32], v: u32, w: u32) -> bool {
    if a.degree(v) != b.degree(w) {
        return false;
    }
    for &(u, dec) in a.neighbors(v) {
        let fu = phi[u as usize];
        if fu != UNSET && b.edge(w, fu) != Some(dec) {
            return false;
        }
    }
    for &(x, dec) in b.neighbors(w) {
        let px = psi[x as usize];
        if px != UNSET && a.edge(v, px) != Some(dec) {
            return false;
        }
    }
    true
}

fn candidates_for(
    a: &Ball,
    b: &Ball,
    class_a: &[u32],
    class_b: &[u32],
    phi: &[u32],
    psi: &[u32],
    pinned_to: &[u32],
    v: u32,
) -> Vec<u32> {
    let v_us = v as usize;
    if pinned_to[v_us] != UNSET {
        return vec![pinned_to[v_us]];
    }
    for &(u, dec) in a.neighbors(v) {
        let fu = phi[u as usize];
        if fu == UNSET {
            continue;
        }
        // Edge from u to v, seen from u's side, must match in the image.
        let want = dec.reversed();
        return b
            .neighbors(fu)
            .iter()
            .filter(|&&(w, d)| {
                d == want && class_b[w as usize] == class_a[v_us] && psi[w as usize] == UNSET
            })
            .map(|&(w, _)| w)
            .collect();
    }
    (0..b.len() as u32)
        .filter(|&w| class_b[w as usize] == class_a[v_us] && psi[w as usize] == UNSET)
        .collect()
}

/// Backtracking search given precomputed classes. Complete: explores every
/// class- and decoration-consistent assignment.
pub(crate) fn search(
    a: &Ball,
    b: &Ball,
    class_a: &[u32],
    class_b: &[u32],
    pins: &[(u32, u32)],
    budget: &Budget,
) -> Result<Option<Vec<u32>>> {
    let n = a.len();
    if b.len() != n {
        return Ok(None);
    }
    let mut pinned_to = vec![UNSET; n];
    let mut pin_hit = vec![false; n];
    for &(pa, pb) in pins {
        let (pa_us, pb_us) = (pa as usize, pb as usize);
        if class_a[pa_us] != class_b[pb_us] {
            return Ok(None);
        }
        if pinned_to[pa_us] == UNSET {
            if pin_hit[pb_us] {
                return Ok(None);
            }
            pinned_to[pa_us] = pb;
            pin_hit[pb_us] = true;
        } else if pinned_to[pa_us] != pb {
            return Ok(None);
        }
    }

    let order = multi_source_order(a, pins);
    let mut phi = vec![UNSET; n];
    let mut psi = vec![UNSET; n];
    let mut stack: Vec<(Vec<u32>, usize)> = Vec::with_capacity(n);
    let mut pos = 0usize;
    let mut nodes = 0u64;
    loop {
        if pos == n {
            return Ok(Some(phi));
        }
        if stack.len() == pos {
            let v = order[pos];
            let cands = candidates_for(a, b, class_a, class_b, &phi, &psi, &pinned_to, v);
            stack.push((cands, 0));
        }
        let v = order[pos];
        let (cands, next) = stack.last_mut().unwrap();
        if *next >= cands.len() {
            stack.pop();
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            let pv = order[pos] as usize;
            let w = phi[pv];
            phi[pv] = UNSET;
            psi[w as usize] = UNSET;
            continue;
        }
        let w = cands[*next];
        *next += 1;
        nodes += 1;
        if nodes > budget.search_nodes {
            return Err(Error::BudgetExceeded {
                what: "search node",
                limit: budget.search_nodes,
            });
        }
        if psi[w as usize] != UNSET {
            continue;
        }
        if consistent(a, b, &phi, &psi, v, w) {
            phi[v as usize] = w;
            psi[w as usize] = v;
            pos += 1;
        }
    }
}

/// Find a decorated isomorphism from `a` to `b` respecting the pinned pairs,
/// as a permutation `phi` with `phi[i]` the image of `a`'s vertex `i`.
pub fn find_iso(
    a: &Ball,
    b: &Ball,
    pins: &[(u32, u32)],
    budget: &Budget,
) -> Result<Option<Vec<u32>>> {
    for &(pa, pb) in pins {
        if pa as usize >= a.len() || pb as usize >= b.len() {
            return Err(Error::precondition("pin outside the ball".to_string()));
        }
    }
    let Some((class_a, class_b)) = joint_classes(a, b, pins) else {
        return Ok(None);
    };
    search(a, b, &class_a, &class_b, pins, budget)
}

/// Rooted decorated isomorphism test: centers map to each other.
pub fn balls_isomorphic(a: &Ball, b: &Ball, budget: &Budget) -> Result<bool> {
    Ok(find_iso(a, b, &[(0, 0)], budget)?.is_some())
}

fn close_orbit(orbit: &mut BTreeSet<u32>, gens: &[Vec<u32>]) {
    let mut frontier: Vec<u32> = orbit.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g[x as usize];
            if orbit.insert(y) {
                frontier.push(y);
            }
        }
    }
}

/// The orbit of one vertex under all center-fixing ball automorphisms,
/// as sorted ball indices.
///
/// Every vertex in the target's refinement class is either reached by closing
/// under automorphisms already found or tested with its own complete search,
/// so the result is the exact orbit.
pub fn orbit_of(ball: &Ball, target: u32, budget: &Budget) -> Result<Vec<u32>> {
    let n = ball.len();
    if target as usize >= n {
        return Err(Error::precondition("orbit target outside the ball".to_string()));
    }
    let Some((classes, _)) = joint_classes(ball, ball, &[(0, 0)]) else {
        return Err(Error::precondition("self-refinement failed".to_string()));
    };
    let mut orbit = BTreeSet::from([target]);
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let target_class = classes[target as usize];
    for w in 0..n as u32 {
        if classes[w as usize] != target_class || orbit.contains(&w) {
            continue;
        }
        // Re-refine with the candidate pinned: the refined classes encode
        // the distance to both pins, so the search is forced along the
        // pinned path instead of hitting its contradictions only after
        // deep free branching.
        let pins = [(0, 0), (target, w)];
        let Some((class_a, class_b)) = joint_classes(ball, ball, &pins) else {
            continue;
        };
        if let Some(f) = search(ball, ball, &class_a, &class_b, &pins, budget)? {
            gens.push(f);
            orbit.insert(w);
            close_orbit(&mut orbit, &gens);
        }
    }
    Ok(orbit.into_iter().collect())
}

/// Partition one distance sphere of the ball into center-fixing-orbit
/// classes. Each class is sorted; classes are ordered by smallest member.
pub fn orbit_partition_of_sphere(
    ball: &Ball,
    depth: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u32>>> {
    let mut remaining: BTreeSet<u32> = ball.sphere(depth).collect();
    let mut parts = Vec::new();
    while let Some(&v) = remaining.iter().next() {
        let orbit = orbit_of(ball, v, budget)?;
        for x in &orbit {
            remaining.remove(x);
        }
        parts.push(orbit);
    }
    Ok(parts)
}

/// The group of center-fixing decorated automorphisms of a ball, described by
/// a stabilizer chain.
#[derive(Clone, Debug)]
pub struct AutGroup {
    /// Exact group order, the product of the chain's orbit sizes.
    pub order: u128,
    /// Transversal generators found along the chain; they generate the group.
    pub generators: Vec<Vec<u32>>,
    /// Vertices pinned at successive chain levels.
    pub base_points: Vec<u32>,
}

/// Compute the full center-fixing automorphism group of a ball.
///
/// Levels repeatedly pin the first vertex lying in a non-singleton refinement
/// class and compute its orbit under the current stabilizer with complete
/// searches; the orbit-stabilizer theorem then gives the exact order. The
/// final stabilizer is trivial because its refinement is discrete.
pub fn ball_autos_fixing_center(ball: &Ball, budget: &Budget) -> Result<AutGroup> {
    let n = ball.len();
    let mut pins: Vec<(u32, u32)> = vec![(0, 0)];
    let mut order: u128 = 1;
    let mut generators: Vec<Vec<u32>> = Vec::new();
    let mut base_points: Vec<u32> = Vec::new();
    loop {
        let Some((classes, _)) = joint_classes(ball, ball, &pins) else {
            return Err(Error::precondition("self-refinement failed".to_string()));
        };
        let mut count: BTreeMap<u32, u32> = BTreeMap::new();
        for &c in &classes {
            *count.entry(c).or_default() += 1;
        }
        let Some(v) = (0..n as u32).find(|&v| count[&classes[v as usize]] >= 2) else {
            break;
        };
        let cell: Vec<u32> = (0..n as u32)
            .filter(|&w| classes[w as usize] == classes[v as usize])
            .collect();
        let mut orbit = BTreeSet::from([v]);
        let mut level_gens: Vec<Vec<u32>> = Vec::new();
        for &w in &cell {
            if orbit.contains(&w) {
                continue;
            }
            let mut pinned = pins.clone();
            pinned.push((v, w));
            if let Some(f) = search(ball, ball, &classes, &classes, &pinned, budget)? {
                level_gens.push(f);
                orbit.insert(w);
                close_orbit(&mut orbit, &level_gens);
            }
        }
        order = order
            .checked_mul(orbit.len() as u128)
            .ok_or_else(|| Error::precondition("group order overflows u128".to_string()))?;
        base_points.push(v);
        generators.extend(level_gens);
        pins.push((v, v));
    }
    Ok(AutGroup {
        order,
        generators,
        base_points,
    })
}
