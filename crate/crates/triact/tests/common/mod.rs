//! Brute-force reference implementations used to cross-check the search
//! engine.  Everything here trades speed for obviousness: plain permutation
//! enumeration for automorphism counts, plain backtracking for orbit
//! membership, an independent breadth-first ball builder, and a direct
//! recursive walk counter for alternating arcs.  None of it shares code
//! with the library's refinement-based search.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use triact::{Ball, EdgeColor, GraphGenerator, VertexToken};

/// Independent breadth-first exploration: token -> distance from center,
/// out to the given radius.
pub fn oracle_ball_depths(
    g: &GraphGenerator,
    center: &VertexToken,
    radius: usize,
) -> BTreeMap<String, usize> {
    let mut depths: BTreeMap<String, usize> = BTreeMap::new();
    let mut queue: VecDeque<(VertexToken, usize)> = VecDeque::new();
    depths.insert(center.render(), 0);
    queue.push_back((center.clone(), 0));
    while let Some((v, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for (w, _) in g.neighbors(&v).expect("neighbors inside the ball") {
            if !depths.contains_key(&w.render()) {
                depths.insert(w.render(), d + 1);
                queue.push_back((w, d + 1));
            }
        }
    }
    depths
}

/// Undirected decorated edge set of the subgraph induced on a ball,
/// rendered as sorted token pairs plus a decoration label, independent of
/// the `Ball` data structure.
pub fn oracle_ball_edges(
    g: &GraphGenerator,
    center: &VertexToken,
    radius: usize,
) -> BTreeSet<(String, String, String)> {
    let depths = oracle_ball_depths(g, center, radius);
    let mut edges = BTreeSet::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut queue: VecDeque<VertexToken> = VecDeque::new();
    seen.insert(center.render());
    queue.push_back(center.clone());
    while let Some(v) = queue.pop_front() {
        for (w, dec) in g.neighbors(&v).expect("neighbors inside the ball") {
            let (a, b) = (v.render(), w.render());
            if !depths.contains_key(&b) {
                continue;
            }
            let key = if a <= b {
                (a.clone(), b.clone(), format!("{dec:?}"))
            } else {
                // Store one canonical direction; flip the orientation so the
                // label does not depend on which endpoint reported the edge.
                let mut flipped = dec;
                flipped.orientation = dec.orientation.reversed();
                (b.clone(), a.clone(), format!("{flipped:?}"))
            };
            edges.insert(key);
            if !seen.contains(&b) {
                seen.insert(b);
                queue.push_back(w);
            }
        }
    }
    edges
}

fn edges_match(ball: &Ball, image: &[u32], k: usize, w: u32) -> bool {
    // The partial map sends vertex i to image[i] for i < k and k to w.
    // Check every pair (k, u) with u < k: edges must map to edges with the
    // same decoration and non-edges to non-edges.
    for u in 0..k {
        let fwd = ball.edge(k as u32, u as u32);
        let img = ball.edge(w, image[u]);
        let ok = match (fwd, img) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        };
        if !ok {
            return false;
        }
    }
    true
}

fn count_extensions(ball: &Ball, image: &mut Vec<u32>, used: &mut Vec<bool>, count: &mut u128) {
    let k = image.len();
    if k == ball.len() {
        *count += 1;
        return;
    }
    for w in 0..ball.len() as u32 {
        if used[w as usize] || !edges_match(ball, image, k, w) {
            continue;
        }
        image.push(w);
        used[w as usize] = true;
        count_extensions(ball, image, used, count);
        image.pop();
        used[w as usize] = false;
    }
}

/// Number of automorphisms of the ball fixing its center, by complete
/// backtracking over index assignments in breadth-first order.  Pruning
/// only discards partial maps that already violate an edge, so the total
/// equals full permutation enumeration.
pub fn oracle_center_fixing_order(ball: &Ball) -> u128 {
    if ball.is_empty() {
        return 0;
    }
    let mut image = vec![0u32];
    let mut used = vec![false; ball.len()];
    used[0] = true;
    let mut count = 0;
    count_extensions(ball, &mut image, &mut used, &mut count);
    count
}

fn is_full_automorphism(ball: &Ball, perm: &[u32]) -> bool {
    for u in 0..ball.len() as u32 {
        for &(v, dec) in ball.neighbors(u) {
            match ball.edge(perm[u as usize], perm[v as usize]) {
                Some(d) if d == dec => {}
                _ => return false,
            }
        }
    }
    true
}

fn enumerate_all(perm: &mut Vec<u32>, k: usize, ball: &Ball, count: &mut u128) {
    if k == perm.len() {
        if is_full_automorphism(ball, perm) {
            *count += 1;
        }
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        enumerate_all(perm, k + 1, ball, count);
        perm.swap(k, i);
    }
}

/// The same count by literally testing every permutation that fixes index
/// 0, with no pruning at all.  Only usable on very small balls; it exists
/// to certify `oracle_center_fixing_order` itself.
pub fn oracle_order_by_full_enumeration(ball: &Ball) -> u128 {
    assert!(ball.len() <= 9, "factorial enumeration needs a tiny ball");
    let mut perm: Vec<u32> = (0..ball.len() as u32).collect();
    let mut count = 0;
    enumerate_all(&mut perm, 1, ball, &mut count);
    count
}

fn find_root(parent: &mut Vec<u32>, mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn merge_orbits(ball: &Ball, image: &mut Vec<u32>, used: &mut Vec<bool>, parent: &mut Vec<u32>) {
    let k = image.len();
    if k == ball.len() {
        // A complete automorphism: its whole vertex mapping joins orbits.
        for (v, &w) in image.iter().enumerate() {
            let a = find_root(parent, v as u32);
            let b = find_root(parent, w);
            if a != b {
                parent[a as usize] = b;
            }
        }
        return;
    }
    for w in 0..ball.len() as u32 {
        if used[w as usize]
            || ball.depth_of(w) != ball.depth_of(k as u32)
            || ball.degree(w) != ball.degree(k as u32)
            || !edges_match(ball, image, k, w)
        {
            continue;
        }
        image.push(w);
        used[w as usize] = true;
        merge_orbits(ball, image, used, parent);
        image.pop();
        used[w as usize] = false;
    }
}

/// Orbit partition of the ball's vertices under the full group of
/// center-fixing automorphisms, computed by complete backtracking
/// enumeration of every automorphism and union-find merging of each one's
/// vertex mapping.  The depth and degree filters only discard images no
/// automorphism can use (distance from the fixed center and vertex degree
/// are always preserved), so the enumeration is exhaustive.
pub fn oracle_orbit_partition(ball: &Ball) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..ball.len() as u32).collect();
    let mut image = vec![0u32];
    let mut used = vec![false; ball.len()];
    used[0] = true;
    merge_orbits(ball, &mut image, &mut used, &mut parent);
    (0..ball.len() as u32)
        .map(|v| find_root(&mut parent, v))
        .collect()
}

/// Full orbit of `target` under center-fixing ball automorphisms.
pub fn oracle_orbit(ball: &Ball, target: u32) -> Vec<u32> {
    let roots = oracle_orbit_partition(ball);
    let class = roots[target as usize];
    (0..ball.len() as u32)
        .filter(|&w| roots[w as usize] == class)
        .collect()
}

fn alternating_walks(
    g: &GraphGenerator,
    previous: Option<&VertexToken>,
    at: &VertexToken,
    next_color: EdgeColor,
    remaining: usize,
) -> usize {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for (w, dec) in g.neighbors(at).expect("walk stays in the graph") {
        if dec.color != next_color {
            continue;
        }
        if previous == Some(&w) {
            continue; // an arc never immediately backtracks
        }
        let after = match next_color {
            EdgeColor::Red => EdgeColor::Blue,
            EdgeColor::Blue => EdgeColor::Red,
            EdgeColor::None => return 0,
        };
        total += alternating_walks(g, Some(at), &w, after, remaining - 1);
    }
    total
}

/// Number of alternating s-arcs with the given head and first edge color,
/// counted by direct recursion on the generator's neighbor lists.
pub fn oracle_alternating_count(
    g: &GraphGenerator,
    head: &VertexToken,
    s: usize,
    first_color: EdgeColor,
) -> usize {
    assert!(s >= 1);
    alternating_walks(g, None, head, first_color, s)
}
