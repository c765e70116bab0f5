//! Ball automorphisms, local actions, and the locally-C2 / locally-Sym(3)
//! classifier.
//!
//! Vertex stabilizers of an infinite graph are approximated by center-fixing
//! automorphism groups of finite balls. Orbits computed this way are exact on
//! trees and over-approximations in general; radius-stability tests quantify
//! the difference where it matters.

mod search;

pub use search::{
    ball_autos_fixing_center, balls_isomorphic, find_iso, orbit_of, orbit_partition_of_sphere,
    AutGroup,
};

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::EdgeColor;
use crate::{Ball, Budget, Error, GraphGenerator, Result, VertexToken};

/// The orbit of `target` under center-fixing automorphisms of the ball of
/// the given radius around `base`, as tokens in ball index order.
pub fn local_orbit(
    g: &GraphGenerator,
    base: &VertexToken,
    target: &VertexToken,
    radius: usize,
    budget: &Budget,
) -> Result<Vec<VertexToken>> {
    let ball = Ball::extract(g, base, radius, budget)?;
    let Some(ti) = ball.index_of(target) else {
        return Err(Error::precondition(format!(
            "target {target} lies outside the radius-{radius} ball around {base}"
        )));
    };
    let orbit = orbit_of(&ball, ti, budget)?;
    Ok(orbit.into_iter().map(|i| ball.token(i).clone()).collect())
}

/// The permutation group induced on a vertex's neighbors by center-fixing
/// ball automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct LocalActionReport {
    pub radius: usize,
    /// Order of the induced permutation group.
    pub order: usize,
    /// Neighbor tokens, in ball index order; permutations index into this.
    pub neighbors: Vec<String>,
    /// Neighbors fixed by every realized permutation.
    pub fixed: Vec<String>,
    /// Every realized permutation of the neighbor list.
    pub permutations: Vec<Vec<usize>>,
}

struct LocalActionData {
    report: LocalActionReport,
    neighbor_tokens: Vec<VertexToken>,
    fixed_indices: Vec<usize>,
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in 0..d {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(d, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut Vec::with_capacity(d), &mut vec![false; d], &mut out);
    out
}

fn local_action_data(
    g: &GraphGenerator,
    v: &VertexToken,
    radius: usize,
    budget: &Budget,
) -> Result<LocalActionData> {
    if radius < 1 {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: radius as i64,
            reason: "local action needs radius >= 1".to_string(),
        });
    }
    let ball = Ball::extract(g, v, radius, budget)?;
    let nbrs: Vec<u32> = ball.neighbors(0).iter().map(|&(u, _)| u).collect();
    let d = nbrs.len();
    if d > 5 {
        return Err(Error::Unsupported(format!(
            "local action on {d} neighbors is not enumerated"
        )));
    }
    let mut realized = Vec::new();
    for p in permutations(d) {
        let mut pins = vec![(0u32, 0u32)];
        for (i, &pi) in p.iter().enumerate() {
            pins.push((nbrs[i], nbrs[pi]));
        }
        if find_iso(&ball, &ball, &pins, budget)?.is_some() {
            realized.push(p);
        }
    }
    let fixed_indices: Vec<usize> = (0..d)
        .filter(|&i| realized.iter().all(|p| p[i] == i))
        .collect();
    let neighbor_tokens: Vec<VertexToken> =
        nbrs.iter().map(|&i| ball.token(i).clone()).collect();
    let report = LocalActionReport {
        radius,
        order: realized.len(),
        neighbors: neighbor_tokens.iter().map(|t| t.render()).collect(),
        fixed: fixed_indices
            .iter()
            .map(|&i| neighbor_tokens[i].render())
            .collect(),
        permutations: realized,
    };
    Ok(LocalActionData {
        report,
        neighbor_tokens,
        fixed_indices,
    })
}

/// Compute the local action at `v` using the ball of the given radius.
pub fn local_action(
    g: &GraphGenerator,
    v: &VertexToken,
    radius: usize,
    budget: &Budget,
) -> Result<LocalActionReport> {
    Ok(local_action_data(g, v, radius, budget)?.report)
}

/// Classification of a trivalent graph by the local action at a vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    /// Local action of order 1 or 3: the vertex stabilizer is finite.
    Discrete,
    /// Full symmetric local action on the three neighbors.
    CaseA,
    /// Order-2 local action whose distinguished neighbor is not distinguished
    /// back: an orientation-style asymmetry.
    CaseB,
    /// Order-2 local action with a mutually fixed pair: a red perfect
    /// matching plus blue edges.
    CaseC,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub label: CaseLabel,
    pub radius: usize,
    /// Order of the local action at the base vertex.
    pub local_order: usize,
    /// The neighbor fixed by the whole local action, when the order is 2.
    pub fixed_neighbor: Option<String>,
    /// Whether the fixed edge is fixed from both endpoints.
    pub mutual_fixed_pair: bool,
    /// Recovered red edge endpoint at the base vertex (mutual case only).
    pub red_neighbor: Option<String>,
    /// Recovered blue edge endpoints at the base vertex (mutual case only).
    pub blue_neighbors: Vec<String>,
}

/// Classify a trivalent graph by its local action at the base vertex.
pub fn classify_case(g: &GraphGenerator, radius: usize, budget: &Budget) -> Result<CaseReport> {
    if g.degree() != 3 {
        return Err(Error::Unsupported(format!(
            "case classification needs a trivalent graph; {} has degree {}",
            g.name(),
            g.degree()
        )));
    }
    if radius < 3 {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: radius as i64,
            reason: "classification needs radius >= 3".to_string(),
        });
    }
    let base = local_action_data(g, g.base(), radius, budget)?;
    match base.report.order {
        6 => Ok(CaseReport {
            label: CaseLabel::CaseA,
            radius,
            local_order: 6,
            fixed_neighbor: None,
            mutual_fixed_pair: false,
            red_neighbor: None,
            blue_neighbors: Vec::new(),
        }),
        1 | 3 => Ok(CaseReport {
            label: CaseLabel::Discrete,
            radius,
            local_order: base.report.order,
            fixed_neighbor: None,
            mutual_fixed_pair: false,
            red_neighbor: None,
            blue_neighbors: Vec::new(),
        }),
        2 => {
            let [fi] = base.fixed_indices[..] else {
                return Err(Error::precondition(
                    "an order-2 action on three neighbors must fix exactly one".to_string(),
                ));
            };
            let fixed_tok = base.neighbor_tokens[fi].clone();
            let at_fixed = local_action_data(g, &fixed_tok, radius, budget)?;
            let mutual = at_fixed.report.order == 2
                && at_fixed.fixed_indices.len() == 1
                && at_fixed.neighbor_tokens[at_fixed.fixed_indices[0]] == *g.base();
            let (label, red_neighbor, blue_neighbors) = if mutual {
                (
                    CaseLabel::CaseC,
                    Some(fixed_tok.render()),
                    base.neighbor_tokens
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != fi)
                        .map(|(_, t)| t.render())
                        .collect(),
                )
            } else {
                (CaseLabel::CaseB, None, Vec::new())
            };
            Ok(CaseReport {
                label,
                radius,
                local_order: 2,
                fixed_neighbor: Some(fixed_tok.render()),
                mutual_fixed_pair: mutual,
                red_neighbor,
                blue_neighbors,
            })
        }
        o => Err(Error::precondition(format!(
            "local action order {o} is impossible on three neighbors"
        ))),
    }
}

/// Radius used for the per-vertex fixed-neighbor computation during
/// coloring recovery.
const FIXED_NEIGHBOR_RADIUS: usize = 3;

/// An edge coloring reconstructed from local actions alone.
#[derive(Clone, Debug, Serialize)]
pub struct RecoveredColoring {
    pub radius: usize,
    pub vertices_checked: usize,
    /// Recovered red edges as rendered token pairs, lexicographically sorted.
    pub red_edges: Vec<(String, String)>,
    /// `Some(true)` when the graph declares colors and they all agree;
    /// `None` when the graph declares no colors.
    pub matches_declared: Option<bool>,
}

/// Recover the red/blue edge classes of a mutually-fixed-pair graph from
/// local actions, and cross-check them against declared colors when present.
///
/// Every vertex of depth at most `radius - 2` in the ball of radius
/// `radius - 1` is assigned the edge to its locally fixed neighbor as red.
pub fn recover_coloring(
    g: &GraphGenerator,
    radius: usize,
    budget: &Budget,
) -> Result<RecoveredColoring> {
    let case = classify_case(g, radius, budget)?;
    if case.label != CaseLabel::CaseC {
        return Err(Error::precondition(format!(
            "coloring recovery needs a mutually fixed neighbor pair, found {:?}",
            case.label
        )));
    }
    let ball = Ball::extract(g, g.base(), radius - 1, budget)?;
    let mut mate: BTreeMap<u32, VertexToken> = BTreeMap::new();
    for idx in 0..ball.len() as u32 {
        if ball.depth_of(idx) as usize > radius - 2 {
            continue;
        }
        let v_tok = ball.token(idx).clone();
        let data = local_action_data(g, &v_tok, FIXED_NEIGHBOR_RADIUS, budget)?;
        if data.report.order != 2 || data.fixed_indices.len() != 1 {
            return Err(Error::ColoringMismatch(format!(
                "{v_tok}: no unique locally fixed neighbor"
            )));
        }
        let m_tok = data.neighbor_tokens[data.fixed_indices[0]].clone();
        if g.signature().colored {
            for (u, dec) in g.neighbors(&v_tok)? {
                if (dec.color == EdgeColor::Red) != (u == m_tok) {
                    return Err(Error::ColoringMismatch(format!("edge {v_tok} -- {u}")));
                }
            }
        }
        mate.insert(idx, m_tok);
    }
    for (&idx, m_tok) in &mate {
        if let Some(midx) = ball.index_of(m_tok) {
            if let Some(back) = mate.get(&midx) {
                if back != ball.token(idx) {
                    return Err(Error::ColoringMismatch(format!(
                        "matching not mutual at {}",
                        ball.token(idx)
                    )));
                }
            }
        }
    }
    let mut red_edges: BTreeSet<(String, String)> = BTreeSet::new();
    for (&idx, m_tok) in &mate {
        let v = ball.token(idx).render();
        let m = m_tok.render();
        red_edges.insert(if v <= m { (v, m) } else { (m, v) });
    }
    Ok(RecoveredColoring {
        radius,
        vertices_checked: mate.len(),
        red_edges: red_edges.into_iter().collect(),
        matches_declared: g.signature().colored.then_some(true),
    })
}
