//! Graph-to-graph constructions.
//!
//! Every functor consumes a [`GraphGenerator`] and produces a new one whose
//! tokens wrap the input's tokens, so compositions stay lazy and never
//! enumerate the underlying infinite graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::graph::{DecorationSignature, EdgeColor, EdgeDecoration, LineKind, LineSpec, Orientation};
use crate::{Ball, Budget, Error, GraphGenerator, Result, VertexToken};

/// Heads of arcs leaving `v` (every neighbor when `g` is undirected).
fn arc_targets(g: &GraphGenerator, v: &VertexToken, forward: bool) -> Result<Vec<VertexToken>> {
    let oriented = g.signature().oriented;
    let wanted = if forward {
        Orientation::Forward
    } else {
        Orientation::Backward
    };
    Ok(g.neighbors(v)?
        .into_iter()
        .filter(|(_, d)| !oriented || d.orientation == wanted)
        .map(|(u, _)| u)
        .collect())
}

/// A canonical arc out of the base vertex, taken from the declared line when
/// one runs along the arrows.
fn base_arc(g: &GraphGenerator) -> Result<(VertexToken, VertexToken)> {
    if g.has_line() {
        let line = g.line()?;
        if line.kind == LineKind::Directed {
            return Ok((line.at(0), line.at(1)));
        }
    }
    let outs = arc_targets(g, g.base(), true)?;
    let head = outs.into_iter().next().ok_or_else(|| {
        Error::precondition(format!("no arc leaves the base vertex of {}", g.name()))
    })?;
    Ok((g.base().clone(), head))
}

/// The arc digraph: vertices are the arcs of `g`, and one arc follows another
/// when head meets tail without backtracking.
///
/// Undirected edges of `g` contribute both of their arcs.
pub fn arc_digraph(g: &GraphGenerator) -> Result<GraphGenerator> {
    let (tail, head) = base_arc(g)?;
    let base = VertexToken::seq(vec![tail, head]);
    let inner = g.clone();
    let neighbor_fn = move |v: &VertexToken| -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let parts = v.as_seq()?;
        let [alpha, beta] = parts else {
            return Err(Error::invalid_token(v, "expected an arc pair"));
        };
        if !arc_targets(&inner, alpha, true)?.contains(beta) {
            return Err(Error::invalid_token(v, "not an arc of the underlying graph"));
        }
        let mut out = Vec::new();
        for delta in arc_targets(&inner, beta, true)? {
            if delta != *alpha {
                out.push((
                    VertexToken::seq(vec![beta.clone(), delta]),
                    EdgeDecoration::arc_out(),
                ));
            }
        }
        for gamma in arc_targets(&inner, alpha, false)? {
            if gamma != *beta {
                out.push((
                    VertexToken::seq(vec![gamma, alpha.clone()]),
                    EdgeDecoration::arc_in(),
                ));
            }
        }
        Ok(out)
    };
    let degree = neighbor_fn(&base)?.len();
    let mut out = GraphGenerator::new(
        format!("arc-digraph({})", g.name()),
        degree,
        DecorationSignature::ORIENTED,
        base,
        neighbor_fn,
    );
    for (k, v) in g.params() {
        out = out.with_param(k, *v);
    }
    if g.has_line() && g.line()?.kind == LineKind::Directed {
        let inner_line = g.line()?.clone();
        out = out.with_line(LineSpec::new(LineKind::Directed, move |k| {
            VertexToken::seq(vec![inner_line.at(k), inner_line.at(k + 1)])
        }));
    }
    Ok(out)
}

/// The s-arc digraph: vertices are non-backtracking arc paths of length `s`,
/// adjacent when they overlap in an (s+1)-arc. `bs(g, 0)` is `g` itself and
/// `bs(g, 1)` coincides with [`arc_digraph`].
pub fn bs(g: &GraphGenerator, s: u32) -> Result<GraphGenerator> {
    if s == 0 {
        return Ok(g.clone());
    }
    let s = s as usize;
    let base = base_s_arc(g, s)?;
    let inner = g.clone();
    let neighbor_fn = move |v: &VertexToken| -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let parts = v.as_seq()?;
        if parts.len() != s + 1 {
            return Err(Error::invalid_token(v, "wrong arc-path length"));
        }
        for i in 0..s {
            if !arc_targets(&inner, &parts[i], true)?.contains(&parts[i + 1]) {
                return Err(Error::invalid_token(v, "consecutive entries are not an arc"));
            }
            if i >= 1 && parts[i - 1] == parts[i + 1] {
                return Err(Error::invalid_token(v, "arc path backtracks"));
            }
        }
        let mut out = Vec::new();
        for next in arc_targets(&inner, &parts[s], true)? {
            if next != parts[s - 1] {
                let mut items: Vec<VertexToken> = parts[1..].to_vec();
                items.push(next);
                out.push((VertexToken::seq(items), EdgeDecoration::arc_out()));
            }
        }
        for prev in arc_targets(&inner, &parts[0], false)? {
            if prev != parts[1] {
                let mut items = Vec::with_capacity(s + 1);
                items.push(prev);
                items.extend_from_slice(&parts[..s]);
                out.push((VertexToken::seq(items), EdgeDecoration::arc_in()));
            }
        }
        Ok(out)
    };
    let degree = neighbor_fn(&base)?.len();
    let mut out = GraphGenerator::new(
        format!("bs({},{})", g.name(), s),
        degree,
        DecorationSignature::ORIENTED,
        base,
        neighbor_fn,
    );
    for (k, v) in g.params() {
        out = out.with_param(k, *v);
    }
    if g.has_line() && g.line()?.kind == LineKind::Directed {
        let inner_line = g.line()?.clone();
        let span = s as i64;
        out = out.with_line(LineSpec::new(LineKind::Directed, move |k| {
            VertexToken::seq((k..=k + span).map(|i| inner_line.at(i)).collect())
        }));
    }
    Ok(out)
}

fn base_s_arc(g: &GraphGenerator, s: usize) -> Result<VertexToken> {
    if g.has_line() {
        let line = g.line()?;
        if line.kind == LineKind::Directed {
            return Ok(VertexToken::seq(line.window(0, s as i64)));
        }
    }
    let mut path = vec![g.base().clone()];
    for _ in 0..s {
        let last = path.last().unwrap().clone();
        let prev = path.len().checked_sub(2).map(|i| path[i].clone());
        let next = arc_targets(g, &last, true)?
            .into_iter()
            .find(|u| Some(u) != prev.as_ref())
            .ok_or_else(|| {
                Error::precondition(format!("no arc path of length {s} from the base of {}", g.name()))
            })?;
        path.push(next);
    }
    Ok(VertexToken::seq(path))
}

const MINUS: &str = "-";
const PLUS: &str = "+";

fn star_token(inner: &VertexToken, sign: &str) -> VertexToken {
    VertexToken::seq(vec![inner.clone(), VertexToken::atom(sign)])
}

/// The doubling of a digraph with in-degree 2 and out-degree 2 at every
/// vertex: each vertex splits into a red pair, and each arc becomes a blue
/// edge from the tail's plus half to the head's minus half. The output is
/// trivalent with colored undirected edges.
pub fn star_construction(g: &GraphGenerator) -> Result<GraphGenerator> {
    if !g.signature().oriented {
        return Err(Error::precondition(format!(
            "doubling expects an oriented input, got {}",
            g.name()
        )));
    }
    let inner = g.clone();
    let base = star_token(g.base(), MINUS);
    let neighbor_fn = move |v: &VertexToken| -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let parts = v.as_seq()?;
        let [vertex, sign] = parts else {
            return Err(Error::invalid_token(v, "expected a signed vertex"));
        };
        let sign = sign.as_atom()?;
        let outs = arc_targets(&inner, vertex, true)?;
        let ins = arc_targets(&inner, vertex, false)?;
        if outs.len() != 2 || ins.len() != 2 {
            return Err(Error::precondition(format!(
                "doubling needs in-degree 2 and out-degree 2, found ({}, {}) at {vertex}",
                ins.len(),
                outs.len()
            )));
        }
        let mut out = Vec::with_capacity(3);
        match sign {
            MINUS => {
                out.push((star_token(vertex, PLUS), EdgeDecoration::colored(EdgeColor::Red)));
                for u in ins {
                    out.push((star_token(&u, PLUS), EdgeDecoration::colored(EdgeColor::Blue)));
                }
            }
            PLUS => {
                out.push((star_token(vertex, MINUS), EdgeDecoration::colored(EdgeColor::Red)));
                for u in outs {
                    out.push((star_token(&u, MINUS), EdgeDecoration::colored(EdgeColor::Blue)));
                }
            }
            _ => return Err(Error::invalid_token(v, "sign must be + or -")),
        }
        Ok(out)
    };
    let mut out = GraphGenerator::new(
        format!("star({})", g.name()),
        3,
        DecorationSignature::COLORED,
        base,
        neighbor_fn,
    );
    for (k, v) in g.params() {
        out = out.with_param(k, *v);
    }
    if g.has_line() && g.line()?.kind == LineKind::Directed {
        let inner_line = g.line()?.clone();
        out = out.with_line(LineSpec::new(LineKind::Alternating, move |k| {
            let sign = if k.rem_euclid(2) == 0 { MINUS } else { PLUS };
            star_token(&inner_line.at(k.div_euclid(2)), sign)
        }));
    }
    Ok(out)
}

/// The dihedral splitting of a `d`-regular undirected graph with a rotation
/// system: each vertex is replaced by a blue `d`-cycle over its arcs, in the
/// cyclic order of its neighbor list, and reverse arc pairs are joined by red
/// edges. The output is trivalent with colored undirected edges.
pub fn dihedral_split(g: &GraphGenerator, d: usize) -> Result<GraphGenerator> {
    if g.signature() != DecorationSignature::PLAIN {
        return Err(Error::precondition(format!(
            "dihedral splitting expects a plain undirected input, got {}",
            g.name()
        )));
    }
    if d < 3 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d as i64,
            reason: "dihedral splitting needs degree >= 3".to_string(),
        });
    }
    if g.degree() != d {
        return Err(Error::precondition(format!(
            "{} is {}-regular, not {d}-regular",
            g.name(),
            g.degree()
        )));
    }
    let inner = g.clone();
    let first = g
        .neighbors(g.base())?
        .into_iter()
        .next()
        .ok_or_else(|| Error::precondition("base vertex has no neighbors".to_string()))?
        .0;
    let base = VertexToken::seq(vec![g.base().clone(), first]);
    let neighbor_fn = move |v: &VertexToken| -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let parts = v.as_seq()?;
        let [alpha, beta] = parts else {
            return Err(Error::invalid_token(v, "expected an arc pair"));
        };
        let rotation: Vec<VertexToken> = inner.neighbors(alpha)?.into_iter().map(|(u, _)| u).collect();
        if rotation.len() != d {
            return Err(Error::precondition(format!(
                "vertex {alpha} has degree {}, expected {d}",
                rotation.len()
            )));
        }
        let pos = rotation
            .iter()
            .position(|u| u == beta)
            .ok_or_else(|| Error::invalid_token(v, "not an arc of the underlying graph"))?;
        let succ = rotation[(pos + 1) % d].clone();
        let pred = rotation[(pos + d - 1) % d].clone();
        Ok(vec![
            (
                VertexToken::seq(vec![beta.clone(), alpha.clone()]),
                EdgeDecoration::colored(EdgeColor::Red),
            ),
            (
                VertexToken::seq(vec![alpha.clone(), succ]),
                EdgeDecoration::colored(EdgeColor::Blue),
            ),
            (
                VertexToken::seq(vec![alpha.clone(), pred]),
                EdgeDecoration::colored(EdgeColor::Blue),
            ),
        ])
    };
    let mut out = GraphGenerator::new(
        format!("dihedral-split({})", g.name()),
        3,
        DecorationSignature::COLORED,
        base,
        neighbor_fn,
    );
    for (k, v) in g.params() {
        out = out.with_param(k, *v);
    }
    Ok(out)
}

/// How vertices of a graph are grouped into congruence blocks for
/// [`contract`].
#[derive(Clone)]
pub enum CongruenceSpec {
    /// Each red edge is one block; requires the red edges to form a perfect
    /// matching.
    RedEdgePairs,
    /// Connected components of the blue subgraph, each of size at most
    /// `max_block`.
    BlueComponents { max_block: usize },
    /// Caller-supplied congruence: a class oracle together with a member
    /// enumerator for class representatives.
    Explicit {
        class_of: Arc<dyn Fn(&VertexToken) -> Result<VertexToken> + Send + Sync>,
        members: Arc<dyn Fn(&VertexToken) -> Result<Vec<VertexToken>> + Send + Sync>,
    },
}

impl CongruenceSpec {
    pub const DEFAULT_MAX_BLOCK: usize = 4096;

    /// Parse a CLI-facing kind label.
    pub fn parse(kind: &str) -> Result<CongruenceSpec> {
        match kind {
            "red" | "red-edge-pairs" => Ok(CongruenceSpec::RedEdgePairs),
            "blue" | "blue-components" => Ok(CongruenceSpec::BlueComponents {
                max_block: Self::DEFAULT_MAX_BLOCK,
            }),
            _ => Err(Error::Unsupported(format!(
                "unknown congruence kind {kind:?} (expected red or blue)"
            ))),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            CongruenceSpec::RedEdgePairs => "red",
            CongruenceSpec::BlueComponents { .. } => "blue",
            CongruenceSpec::Explicit { .. } => "explicit",
        }
    }

    /// All vertices of the block containing `v`, sorted; the first entry is
    /// the block's representative token.
    pub fn block(&self, g: &GraphGenerator, v: &VertexToken) -> Result<Vec<VertexToken>> {
        match self {
            CongruenceSpec::RedEdgePairs => {
                let reds: Vec<VertexToken> = g
                    .neighbors(v)?
                    .into_iter()
                    .filter(|(_, d)| d.color == EdgeColor::Red)
                    .map(|(u, _)| u)
                    .collect();
                let [mate] = reds.as_slice() else {
                    return Err(Error::precondition(format!(
                        "red edges are not a perfect matching: {} red edges at {v}",
                        reds.len()
                    )));
                };
                let mut block = vec![v.clone(), mate.clone()];
                block.sort();
                Ok(block)
            }
            CongruenceSpec::BlueComponents { max_block } => {
                let mut seen = BTreeSet::new();
                seen.insert(v.clone());
                let mut queue = VecDeque::from([v.clone()]);
                while let Some(w) = queue.pop_front() {
                    for (u, d) in g.neighbors(&w)? {
                        if d.color == EdgeColor::Blue && seen.insert(u.clone()) {
                            if seen.len() > *max_block {
                                return Err(Error::BudgetExceeded {
                                    what: "contraction block size",
                                    limit: *max_block as u64,
                                });
                            }
                            queue.push_back(u);
                        }
                    }
                }
                Ok(seen.into_iter().collect())
            }
            CongruenceSpec::Explicit { class_of, members } => {
                let rep = class_of(v)?;
                let mut block = members(&rep)?;
                block.sort();
                block.dedup();
                if !block.contains(v) {
                    return Err(Error::precondition(format!(
                        "explicit congruence: {v} missing from its own block"
                    )));
                }
                Ok(block)
            }
        }
    }

    /// Representative token of the block containing `v`.
    pub fn class_of(&self, g: &GraphGenerator, v: &VertexToken) -> Result<VertexToken> {
        Ok(self.block(g, v)?.remove(0))
    }
}

/// Contract each congruence block to a single vertex named by the block's
/// representative token. Loops are dropped and parallel edges collapsed, so
/// the quotient is again a simple graph; the output carries no decorations.
pub fn contract(g: &GraphGenerator, spec: CongruenceSpec) -> Result<GraphGenerator> {
    let base = spec.class_of(g, g.base())?;
    let inner = g.clone();
    let inner_spec = spec.clone();
    let neighbor_fn = move |v: &VertexToken| -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let block = inner_spec.block(&inner, v)?;
        if block[0] != *v {
            return Err(Error::invalid_token(v, "not a block representative"));
        }
        let mut targets = BTreeSet::new();
        for member in &block {
            for (u, _) in inner.neighbors(member)? {
                if !block.contains(&u) {
                    targets.insert(inner_spec.class_of(&inner, &u)?);
                }
            }
        }
        Ok(targets
            .into_iter()
            .map(|t| (t, EdgeDecoration::PLAIN))
            .collect())
    };
    let degree = neighbor_fn(&base)?.len();
    let mut out = GraphGenerator::new(
        format!("contract({},{})", g.name(), spec.label()),
        degree,
        DecorationSignature::PLAIN,
        base,
        neighbor_fn,
    );
    for (k, v) in g.params() {
        out = out.with_param(k, *v);
    }
    Ok(out)
}

/// What simplification a contraction performed over one ball.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContractionStats {
    pub ball_vertices: usize,
    pub blocks: usize,
    pub loop_edges_dropped: usize,
    pub parallel_edges_collapsed: usize,
}

/// Diagnose a contraction over `B(base, radius)` of the input graph: how many
/// blocks it meets and how many loops and parallel edges the simple-graph
/// convention removes.
pub fn contraction_stats(
    g: &GraphGenerator,
    spec: &CongruenceSpec,
    radius: usize,
    budget: &Budget,
) -> Result<ContractionStats> {
    let ball = Ball::extract(g, g.base(), radius, budget)?;
    let mut class: Vec<VertexToken> = Vec::with_capacity(ball.len());
    for i in 0..ball.len() {
        class.push(spec.class_of(g, ball.token(i as u32))?);
    }
    let blocks: BTreeSet<&VertexToken> = class.iter().collect();
    let mut cross: BTreeMap<(&VertexToken, &VertexToken), usize> = BTreeMap::new();
    let mut loops = 0usize;
    for (u, v, _) in ball.edges() {
        let (cu, cv) = (&class[u as usize], &class[v as usize]);
        if cu == cv {
            loops += 1;
        } else {
            let key = if cu < cv { (cu, cv) } else { (cv, cu) };
            *cross.entry(key).or_default() += 1;
        }
    }
    Ok(ContractionStats {
        ball_vertices: ball.len(),
        blocks: blocks.len(),
        loop_edges_dropped: loops,
        parallel_edges_collapsed: cross.values().map(|c| c - 1).sum(),
    })
}

/// The distance-power graph: same vertices, with two distinct vertices
/// adjacent when their distance in `g` is at most `n`. Decorations are
/// dropped.
pub fn power_graph(g: &GraphGenerator, n: u32) -> Result<GraphGenerator> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as i64,
            reason: "power graph needs n >= 1".to_string(),
        });
    }
    let inner = g.clone();
    let neighbor_fn = move |v: &VertexToken| -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let mut seen = BTreeSet::from([v.clone()]);
        let mut frontier = vec![v.clone()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &frontier {
                for (u, _) in inner.neighbors(w)? {
                    if seen.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        seen.remove(v);
        Ok(seen
            .into_iter()
            .map(|u| (u, EdgeDecoration::PLAIN))
            .collect())
    };
    let degree = neighbor_fn(g.base())?.len();
    let mut out = GraphGenerator::new(
        format!("power({},{})", g.name(), n),
        degree,
        DecorationSignature::PLAIN,
        g.base().clone(),
        neighbor_fn,
    );
    for (k, v) in g.params() {
        out = out.with_param(k, *v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn arc_digraph_of_layered_graph_has_in_and_out_degree_two() {
        let b1 = arc_digraph(&families::delta_p(2).unwrap()).unwrap();
        assert_eq!(b1.degree(), 4);
        let ns = b1.neighbors(b1.base()).unwrap();
        let outs = ns
            .iter()
            .filter(|(_, d)| d.orientation == Orientation::Forward)
            .count();
        assert_eq!(outs, 2);
        assert_eq!(ns.len() - outs, 2);
    }

    #[test]
    fn arc_paths_validate() {
        let g = families::delta_p(2).unwrap();
        let b2 = bs(&g, 2).unwrap();
        let bad = VertexToken::seq(vec![
            VertexToken::atom("(0,1)"),
            VertexToken::atom("(5,1)"),
            VertexToken::atom("(6,1)"),
        ]);
        assert!(b2.neighbors(&bad).is_err());
        assert!(b2.neighbors(b2.base()).is_ok());
    }

    #[test]
    fn doubling_produces_one_red_and_two_blue_edges() {
        let g = star_construction(&families::delta_p(2).unwrap()).unwrap();
        let ns = g.neighbors(g.base()).unwrap();
        let reds = ns.iter().filter(|(_, d)| d.color == EdgeColor::Red).count();
        assert_eq!(ns.len(), 3);
        assert_eq!(reds, 1);
    }

    #[test]
    fn doubling_rejects_wrong_degrees() {
        let g = families::delta_p(3).unwrap();
        let doubled = star_construction(&g).unwrap();
        assert!(doubled.neighbors(doubled.base()).is_err());
    }

    #[test]
    fn dihedral_split_blue_subgraph_is_a_cycle() {
        let g = dihedral_split(&families::tree(3).unwrap(), 3).unwrap();
        let mut current = g.base().clone();
        let start = current.clone();
        // Follow the first blue edge seen from each arc; must return to the
        // start in exactly three steps.
        for step in 1..=3 {
            let ns = g.neighbors(&current).unwrap();
            let (next, _) = ns
                .into_iter()
                .find(|(_, d)| d.color == EdgeColor::Blue)
                .unwrap();
            current = next;
            if step < 3 {
                assert_ne!(current, start);
            }
        }
        assert_eq!(current, start);
    }

    #[test]
    fn red_contraction_of_doubling_recovers_the_layered_graph() {
        let doubled = star_construction(&families::delta_p(2).unwrap()).unwrap();
        let q = contract(&doubled, CongruenceSpec::RedEdgePairs).unwrap();
        assert_eq!(q.degree(), 4);
        let stats =
            contraction_stats(&doubled, &CongruenceSpec::RedEdgePairs, 4, &Budget::default())
                .unwrap();
        // Every dropped loop is one contracted red edge; blocks on the ball
        // boundary may have their red edge outside the ball.
        assert!(stats.loop_edges_dropped > 0);
        assert!(stats.loop_edges_dropped <= stats.blocks);
        assert_eq!(stats.parallel_edges_collapsed, 0);
    }

    #[test]
    fn singleton_contraction_is_the_identity() {
        let g = families::tree(3).unwrap();
        let spec = CongruenceSpec::Explicit {
            class_of: Arc::new(|v| Ok(v.clone())),
            members: Arc::new(|v| Ok(vec![v.clone()])),
        };
        let q = contract(&g, spec).unwrap();
        let originals: BTreeSet<VertexToken> = g
            .neighbors(g.base())
            .unwrap()
            .into_iter()
            .map(|(u, _)| u)
            .collect();
        let contracted: BTreeSet<VertexToken> = q
            .neighbors(q.base())
            .unwrap()
            .into_iter()
            .map(|(u, _)| u)
            .collect();
        assert_eq!(originals, contracted);
    }

    #[test]
    fn second_power_of_trivalent_tree_is_nine_regular() {
        let p = power_graph(&families::tree(3).unwrap(), 2).unwrap();
        assert_eq!(p.degree(), 9);
        assert_eq!(p.neighbors(p.base()).unwrap().len(), 9);
    }
}
