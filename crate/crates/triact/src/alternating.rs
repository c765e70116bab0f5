//! Alternating arcs in red/blue-colored graphs.
//!
//! An alternating s-arc is a walk of s edges whose colors alternate between
//! red and blue and which never immediately backtracks. The module
//! enumerates them, shifts them along extensions (the accessibility moves),
//! partitions in-ball arcs into accessibility classes, and verifies the
//! cycle-freeness and transitivity properties that characterize graphs with
//! a mutually fixed neighbor pair.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::autos::find_iso;
use crate::graph::{EdgeColor, LineKind};
use crate::{Ball, Budget, Error, GraphGenerator, Result, VertexToken};

fn opposite(c: EdgeColor) -> Result<EdgeColor> {
    match c {
        EdgeColor::Red => Ok(EdgeColor::Blue),
        EdgeColor::Blue => Ok(EdgeColor::Red),
        EdgeColor::None => Err(Error::precondition(
            "alternating walks need red/blue edge colors".to_string(),
        )),
    }
}

fn color_letter(c: EdgeColor) -> char {
    match c {
        EdgeColor::Red => 'r',
        EdgeColor::Blue => 'b',
        EdgeColor::None => '-',
    }
}

fn require_colored(g: &GraphGenerator) -> Result<()> {
    if g.signature().colored {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{} carries no red/blue coloring",
            g.name()
        )))
    }
}

/// An alternating s-arc: vertices α_0, …, α_s with alternating edge colors.
/// α_0 is the head, α_s the tail.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AltArc {
    vertices: Vec<VertexToken>,
    colors: Vec<EdgeColor>,
}

impl AltArc {
    /// Build an arc from explicit data, checking the arc invariants that do
    /// not need graph access (lengths, color alternation, no backtracking).
    pub fn new(vertices: Vec<VertexToken>, colors: Vec<EdgeColor>) -> Result<AltArc> {
        if vertices.len() < 2 || colors.len() + 1 != vertices.len() {
            return Err(Error::precondition(
                "an s-arc needs s >= 1 edges and s + 1 vertices".to_string(),
            ));
        }
        for w in colors.windows(2) {
            if w[1] != opposite(w[0])? {
                return Err(Error::precondition(
                    "consecutive arc colors must alternate".to_string(),
                ));
            }
        }
        opposite(*colors.last().unwrap())?;
        for w in vertices.windows(3) {
            if w[0] == w[2] {
                return Err(Error::precondition(format!("arc backtracks at {}", w[1])));
            }
        }
        Ok(AltArc { vertices, colors })
    }

    fn assemble(vertices: Vec<VertexToken>, colors: Vec<EdgeColor>) -> AltArc {
        debug_assert!(AltArc::new(vertices.clone(), colors.clone()).is_ok());
        AltArc { vertices, colors }
    }

    pub fn vertices(&self) -> &[VertexToken] {
        &self.vertices
    }

    pub fn colors(&self) -> &[EdgeColor] {
        &self.colors
    }

    /// Number of edges s.
    pub fn steps(&self) -> usize {
        self.colors.len()
    }

    pub fn head(&self) -> &VertexToken {
        &self.vertices[0]
    }

    pub fn tail(&self) -> &VertexToken {
        self.vertices.last().unwrap()
    }

    pub fn first_color(&self) -> EdgeColor {
        self.colors[0]
    }

    pub fn last_color(&self) -> EdgeColor {
        *self.colors.last().unwrap()
    }

    /// Two-letter type by first and last edge color: rr, rb, br or bb.
    pub fn type_label(&self) -> &'static str {
        match (self.first_color(), self.last_color()) {
            (EdgeColor::Red, EdgeColor::Red) => "rr",
            (EdgeColor::Red, EdgeColor::Blue) => "rb",
            (EdgeColor::Blue, EdgeColor::Red) => "br",
            (EdgeColor::Blue, EdgeColor::Blue) => "bb",
            _ => "--",
        }
    }

    /// The same walk traversed tail to head. An involution; swaps rb and br.
    pub fn reversed(&self) -> AltArc {
        let mut vertices = self.vertices.clone();
        let mut colors = self.colors.clone();
        vertices.reverse();
        colors.reverse();
        AltArc::assemble(vertices, colors)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|t| t.render()).collect::<Vec<_>>(),
            "colors": self.colors,
            "type": self.type_label(),
        })
    }
}

impl fmt::Display for AltArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " -{}- ", color_letter(self.colors[i - 1]))?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Walk every alternating arc of the ball with up to `max_steps` edges,
/// calling `visit` once per arc (of every intermediate length >= 1).
///
/// `first` restricts the color of the first edge; `max_depth` restricts
/// every vertex of the walk to the given ball depth.
fn walk_ball_arcs(
    ball: &Ball,
    start: u32,
    max_steps: usize,
    first: Option<EdgeColor>,
    max_depth: Option<u32>,
    nodes: &mut u64,
    node_limit: u64,
    visit: &mut impl FnMut(&[u32], &[EdgeColor]),
) -> Result<()> {
    fn rec(
        ball: &Ball,
        path: &mut Vec<u32>,
        colors: &mut Vec<EdgeColor>,
        max_steps: usize,
        first: Option<EdgeColor>,
        max_depth: Option<u32>,
        nodes: &mut u64,
        node_limit: u64,
        visit: &mut impl FnMut(&[u32], &[EdgeColor]),
    ) -> Result<()> {
        if colors.len() == max_steps {
            return Ok(());
        }
        let last = *path.last().unwrap();
        let want = match colors.last() {
            Some(&c) => Some(opposite(c)?),
            None => first,
        };
        let prev = path.len().checked_sub(2).map(|i| path[i]);
        for &(u, dec) in ball.neighbors(last) {
            match want {
                Some(c) if dec.color != c => continue,
                None if dec.color == EdgeColor::None => continue,
                _ => {}
            }
            if prev == Some(u) {
                continue;
            }
            if let Some(d) = max_depth {
                if ball.depth_of(u) > d {
                    continue;
                }
            }
            *nodes += 1;
            if *nodes > node_limit {
                return Err(Error::BudgetExceeded {
                    what: "alternating arc enumeration",
                    limit: node_limit,
                });
            }
            path.push(u);
            colors.push(dec.color);
            visit(path, colors);
            rec(
                ball, path, colors, max_steps, first, max_depth, nodes, node_limit, visit,
            )?;
            path.pop();
            colors.pop();
        }
        Ok(())
    }
    if let Some(d) = max_depth {
        if ball.depth_of(start) > d {
            return Ok(());
        }
    }
    let mut path = vec![start];
    let mut colors = Vec::new();
    rec(
        ball,
        &mut path,
        &mut colors,
        max_steps,
        first,
        max_depth,
        nodes,
        node_limit,
        visit,
    )
}

/// All alternating s-arcs with head `head` whose first edge has the given
/// color, in canonical (token sequence) order.
pub fn enumerate_alternating(
    g: &GraphGenerator,
    head: &VertexToken,
    s: usize,
    first_color: EdgeColor,
    budget: &Budget,
) -> Result<Vec<AltArc>> {
    require_colored(g)?;
    if s < 1 {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s as i64,
            reason: "an arc has at least one edge".to_string(),
        });
    }
    let ball = Ball::extract(g, head, s, budget)?;
    let mut out = Vec::new();
    let mut nodes = 0u64;
    walk_ball_arcs(
        &ball,
        0,
        s,
        Some(first_color),
        None,
        &mut nodes,
        budget.search_nodes,
        &mut |path, colors| {
            if colors.len() == s {
                let vertices = path.iter().map(|&i| ball.token(i).clone()).collect();
                out.push(AltArc::assemble(vertices, colors.to_vec()));
            }
        },
    )?;
    out.sort();
    Ok(out)
}

fn step_candidates(
    g: &GraphGenerator,
    at: &VertexToken,
    want: EdgeColor,
    forbid: &VertexToken,
) -> Result<Vec<VertexToken>> {
    Ok(g.neighbors(at)?
        .into_iter()
        .filter(|(u, dec)| dec.color == want && u != forbid)
        .map(|(u, _)| u)
        .collect())
}

/// Arcs extending `arc` by one edge at the tail.
pub fn tail_extensions(g: &GraphGenerator, arc: &AltArc) -> Result<Vec<AltArc>> {
    let want = opposite(arc.last_color())?;
    let before_tail = &arc.vertices[arc.vertices.len() - 2];
    Ok(step_candidates(g, arc.tail(), want, before_tail)?
        .into_iter()
        .map(|w| {
            let mut vertices = arc.vertices.clone();
            let mut colors = arc.colors.clone();
            vertices.push(w);
            colors.push(want);
            AltArc::assemble(vertices, colors)
        })
        .collect())
}

/// Arcs extending `arc` by one edge at the head.
pub fn head_extensions(g: &GraphGenerator, arc: &AltArc) -> Result<Vec<AltArc>> {
    let want = opposite(arc.first_color())?;
    Ok(step_candidates(g, arc.head(), want, &arc.vertices[1])?
        .into_iter()
        .map(|w| {
            let mut vertices = Vec::with_capacity(arc.vertices.len() + 1);
            let mut colors = Vec::with_capacity(arc.colors.len() + 1);
            vertices.push(w);
            vertices.extend_from_slice(&arc.vertices);
            colors.push(want);
            colors.extend_from_slice(&arc.colors);
            AltArc::assemble(vertices, colors)
        })
        .collect())
}

/// One-step shifts away from the head: extend at the tail, drop the head.
pub fn successors(g: &GraphGenerator, arc: &AltArc) -> Result<Vec<AltArc>> {
    Ok(tail_extensions(g, arc)?
        .into_iter()
        .map(|e| AltArc::assemble(e.vertices[1..].to_vec(), e.colors[1..].to_vec()))
        .collect())
}

/// One-step shifts toward the head: extend at the head, drop the tail.
pub fn predecessors(g: &GraphGenerator, arc: &AltArc) -> Result<Vec<AltArc>> {
    Ok(head_extensions(g, arc)?
        .into_iter()
        .map(|e| {
            let s = e.colors.len();
            AltArc::assemble(e.vertices[..s].to_vec(), e.colors[..s - 1].to_vec())
        })
        .collect())
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Accessibility partition of the alternating s-arcs confined to the region
/// `B(base, R - s - 1)` of the radius-R ball, under one-step shifts (or
/// same-direction two-step shifts when `two_step`). Moves run through every
/// arc of the whole ball, so two region arcs merge whenever a chain of
/// shifts connects them without leaving the ball; only the counting is
/// restricted to region arcs. The region margin keeps every single move
/// from a region arc inside the ball, but chains that reconnect outside the
/// ball are invisible, so class counts are upper bounds that should be
/// checked for stability across consecutive radii.
#[derive(Clone, Debug, Serialize)]
pub struct AccessibilityReport {
    pub ball_radius: usize,
    pub region_depth: usize,
    pub steps: usize,
    pub two_step: bool,
    pub arcs: usize,
    pub arcs_by_type: BTreeMap<String, usize>,
    pub classes: usize,
    pub classes_up_to_reversal: usize,
    /// Number of distinct classes containing at least one arc of each type.
    pub classes_by_type: BTreeMap<String, usize>,
    pub classes_by_type_up_to_reversal: BTreeMap<String, usize>,
}

pub fn accessibility_classes(
    g: &GraphGenerator,
    ball_radius: usize,
    s: usize,
    two_step: bool,
    budget: &Budget,
) -> Result<AccessibilityReport> {
    require_colored(g)?;
    if s < 1 {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s as i64,
            reason: "an arc has at least one edge".to_string(),
        });
    }
    if ball_radius < s + 2 {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: ball_radius as i64,
            reason: format!("must be at least s + 2 = {} so the region is nonempty", s + 2),
        });
    }
    let region_depth = (ball_radius - s - 1) as u32;
    let ball = Ball::extract(g, g.base(), ball_radius, budget)?;

    // Enumerate every arc of the ball; the region only filters the counts.
    let mut ids: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut arcs: Vec<(Vec<u32>, Vec<EdgeColor>)> = Vec::new();
    let mut nodes = 0u64;
    for start in 0..ball.len() as u32 {
        walk_ball_arcs(
            &ball,
            start,
            s,
            None,
            None,
            &mut nodes,
            budget.search_nodes,
            &mut |path, colors| {
                if colors.len() == s {
                    ids.insert(path.to_vec(), arcs.len());
                    arcs.push((path.to_vec(), colors.to_vec()));
                }
            },
        )?;
    }

    // Shift an in-ball arc one step; `forward` extends at the tail.
    let one_shifts = |verts: &[u32], colors: &[EdgeColor], forward: bool| -> Result<Vec<(Vec<u32>, Vec<EdgeColor>)>> {
        let mut out = Vec::new();
        let (end, before, want) = if forward {
            (
                verts[verts.len() - 1],
                verts[verts.len() - 2],
                opposite(colors[colors.len() - 1])?,
            )
        } else {
            (verts[0], verts[1], opposite(colors[0])?)
        };
        for &(u, dec) in ball.neighbors(end) {
            if dec.color != want || u == before {
                continue;
            }
            let (mut nv, mut nc) = (Vec::with_capacity(verts.len()), Vec::with_capacity(colors.len()));
            if forward {
                nv.extend_from_slice(&verts[1..]);
                nv.push(u);
                nc.extend_from_slice(&colors[1..]);
                nc.push(want);
            } else {
                nv.push(u);
                nv.extend_from_slice(&verts[..verts.len() - 1]);
                nc.push(want);
                nc.extend_from_slice(&colors[..colors.len() - 1]);
            }
            out.push((nv, nc));
        }
        Ok(out)
    };
    let in_region =
        |verts: &[u32]| verts.iter().all(|&v| ball.depth_of(v) <= region_depth);

    let mut uf = UnionFind::new(arcs.len());
    let mut uf_rev = UnionFind::new(arcs.len());
    for i in 0..arcs.len() {
        let (verts, colors) = arcs[i].clone();
        for forward in [true, false] {
            for (sv, sc) in one_shifts(&verts, &colors, forward)? {
                if two_step {
                    for (tv, _) in one_shifts(&sv, &sc, forward)? {
                        let j = ids[&tv];
                        uf.union(i, j);
                        uf_rev.union(i, j);
                    }
                } else {
                    let j = ids[&sv];
                    uf.union(i, j);
                    uf_rev.union(i, j);
                }
            }
        }
        let mut rev = verts.clone();
        rev.reverse();
        uf_rev.union(i, ids[&rev]);
    }

    let type_of = |colors: &[EdgeColor]| {
        format!(
            "{}{}",
            color_letter(colors[0]),
            color_letter(colors[colors.len() - 1])
        )
    };
    let mut arcs_by_type: BTreeMap<String, usize> = BTreeMap::new();
    let mut roots: BTreeMap<usize, ()> = BTreeMap::new();
    let mut roots_rev: BTreeMap<usize, ()> = BTreeMap::new();
    let mut by_type: BTreeMap<String, BTreeMap<usize, ()>> = BTreeMap::new();
    let mut by_type_rev: BTreeMap<String, BTreeMap<usize, ()>> = BTreeMap::new();
    let mut region_arcs = 0usize;
    for i in 0..arcs.len() {
        if !in_region(&arcs[i].0) {
            continue;
        }
        region_arcs += 1;
        let t = type_of(&arcs[i].1);
        *arcs_by_type.entry(t.clone()).or_default() += 1;
        roots.insert(uf.find(i), ());
        roots_rev.insert(uf_rev.find(i), ());
        by_type.entry(t.clone()).or_default().insert(uf.find(i), ());
        by_type_rev.entry(t).or_default().insert(uf_rev.find(i), ());
    }
    Ok(AccessibilityReport {
        ball_radius,
        region_depth: region_depth as usize,
        steps: s,
        two_step,
        arcs: region_arcs,
        arcs_by_type,
        classes: roots.len(),
        classes_up_to_reversal: roots_rev.len(),
        classes_by_type: by_type.into_iter().map(|(k, v)| (k, v.len())).collect(),
        classes_by_type_up_to_reversal: by_type_rev
            .into_iter()
            .map(|(k, v)| (k, v.len()))
            .collect(),
    })
}

/// Result of scanning a ball for closed or nearly closed alternating arcs.
#[derive(Clone, Debug, Serialize)]
pub struct CycleCheckReport {
    pub ball_radius: usize,
    pub max_steps: usize,
    pub arcs_checked: u64,
    /// Rendered arcs whose head meets or touches their tail.
    pub violations: Vec<String>,
}

impl CycleCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that no alternating s-arc (2 <= s <= max_steps) inside the ball is
/// closed or has adjacent endpoints. Violations are reported, not errors.
pub fn verify_no_alternating_cycles(
    g: &GraphGenerator,
    ball_radius: usize,
    max_steps: usize,
    budget: &Budget,
) -> Result<CycleCheckReport> {
    require_colored(g)?;
    if max_steps < 2 {
        return Err(Error::InvalidParameter {
            name: "max_steps",
            value: max_steps as i64,
            reason: "endpoint checks start at 2-arcs".to_string(),
        });
    }
    let ball = Ball::extract(g, g.base(), ball_radius, budget)?;
    let mut arcs_checked = 0u64;
    let mut violations = Vec::new();
    let mut nodes = 0u64;
    for start in 0..ball.len() as u32 {
        walk_ball_arcs(
            &ball,
            start,
            max_steps,
            None,
            None,
            &mut nodes,
            budget.search_nodes,
            &mut |path, colors| {
                if colors.len() < 2 {
                    return;
                }
                arcs_checked += 1;
                let (head, tail) = (path[0], *path.last().unwrap());
                if head == tail || ball.edge(head, tail).is_some() {
                    let vertices = path.iter().map(|&i| ball.token(i).clone()).collect();
                    violations
                        .push(AltArc::assemble(vertices, colors.to_vec()).to_string());
                }
            },
        )?;
    }
    Ok(CycleCheckReport {
        ball_radius,
        max_steps,
        arcs_checked,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcOrbitCount {
    pub first_color: EdgeColor,
    pub arcs: usize,
    pub orbits: usize,
}

/// Orbit census of the alternating s-arcs headed at the base vertex under
/// center-fixing ball automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct TransitivityReport {
    pub ball_radius: usize,
    pub steps: usize,
    pub by_first_color: Vec<ArcOrbitCount>,
}

impl TransitivityReport {
    /// True when each first color admits exactly one orbit.
    pub fn transitive(&self) -> bool {
        self.by_first_color.iter().all(|c| c.orbits == 1)
    }
}

/// Count orbits of base-headed alternating s-arcs per first color, where two
/// arcs are equivalent when a center-fixing automorphism of the radius-R
/// ball maps one onto the other pointwise.
pub fn verify_alt_transitivity(
    g: &GraphGenerator,
    ball_radius: usize,
    s: usize,
    budget: &Budget,
) -> Result<TransitivityReport> {
    require_colored(g)?;
    if ball_radius < s + 4 {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: ball_radius as i64,
            reason: format!("transitivity check needs radius >= s + 4 = {}", s + 4),
        });
    }
    let ball = Ball::extract(g, g.base(), ball_radius, budget)?;
    let mut by_first_color = Vec::new();
    for color in [EdgeColor::Red, EdgeColor::Blue] {
        let mut arcs: Vec<Vec<u32>> = Vec::new();
        let mut nodes = 0u64;
        walk_ball_arcs(
            &ball,
            0,
            s,
            Some(color),
            None,
            &mut nodes,
            budget.search_nodes,
            &mut |path, colors| {
                if colors.len() == s {
                    arcs.push(path.to_vec());
                }
            },
        )?;
        let mut reps: Vec<&Vec<u32>> = Vec::new();
        'arcs: for arc in &arcs {
            for rep in &reps {
                let pins: Vec<(u32, u32)> =
                    rep.iter().copied().zip(arc.iter().copied()).collect();
                if find_iso(&ball, &ball, &pins, budget)?.is_some() {
                    continue 'arcs;
                }
            }
            reps.push(arc);
        }
        by_first_color.push(ArcOrbitCount {
            first_color: color,
            arcs: arcs.len(),
            orbits: reps.len(),
        });
    }
    Ok(TransitivityReport {
        ball_radius,
        steps: s,
        by_first_color,
    })
}

/// Surrogate for translation along the declared alternating line: check that
/// some isomorphism of rooted balls carries the window `at(0..=2k)` onto
/// `at(2..=2k+2)` vertexwise. The offset of two keeps first colors matching.
pub fn verify_line_translation(g: &GraphGenerator, k: usize, budget: &Budget) -> Result<bool> {
    require_colored(g)?;
    let line = g.line()?;
    if line.kind != LineKind::Alternating {
        return Err(Error::precondition(format!(
            "{} declares no alternating line",
            g.name()
        )));
    }
    let span = 2 * k as i64;
    let radius = 2 * k + 2;
    let b1 = Ball::extract(g, &line.at(0), radius, budget)?;
    let b2 = Ball::extract(g, &line.at(2), radius, budget)?;
    let mut pins = Vec::new();
    for m in 0..=span {
        let (a, b) = (line.at(m), line.at(m + 2));
        let (Some(ia), Some(ib)) = (b1.index_of(&a), b2.index_of(&b)) else {
            return Err(Error::precondition(format!(
                "line vertex {a} or {b} lies outside its window ball"
            )));
        };
        pins.push((ia, ib));
    }
    Ok(find_iso(&b1, &b2, &pins, budget)?.is_some())
}
