//! Finite balls extracted from lazy generators.
//!
//! A [`Ball`] is the induced decorated subgraph on all vertices within a
//! given distance of a center. Vertex indices are assigned level by level in
//! breadth-first order, ties broken by token order, so index 0 is always the
//! center, every depth class occupies a contiguous index range, and repeated
//! extraction is byte-stable.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::graph::{DecorationSignature, EdgeColor, EdgeDecoration, GraphGenerator, Orientation};
use crate::{Budget, Error, Result, VertexToken};

#[derive(Clone, Debug)]
pub struct Ball {
    name: String,
    params: BTreeMap<String, i64>,
    signature: DecorationSignature,
    center: VertexToken,
    radius: usize,
    tokens: Vec<VertexToken>,
    index: HashMap<VertexToken, u32>,
    depth: Vec<u32>,
    /// First index of each depth class; `level_start[d]..level_start[d+1]`.
    level_start: Vec<u32>,
    adj: Vec<Vec<(u32, EdgeDecoration)>>,
}

impl Ball {
    /// Extract the ball of the given radius around `center`.
    pub fn extract(
        g: &GraphGenerator,
        center: &VertexToken,
        radius: usize,
        budget: &Budget,
    ) -> Result<Ball> {
        let mut tokens: Vec<VertexToken> = vec![center.clone()];
        let mut index: HashMap<VertexToken, u32> = HashMap::new();
        index.insert(center.clone(), 0);
        let mut depth: Vec<u32> = vec![0];
        let mut level_start: Vec<u32> = vec![0, 1];
        let mut raw_edges: Vec<(u32, VertexToken, EdgeDecoration)> = Vec::new();

        let mut level: Vec<u32> = vec![0];
        for d in 0..=radius {
            let mut next: BTreeSet<VertexToken> = BTreeSet::new();
            for &ui in &level {
                let u = tokens[ui as usize].clone();
                let ns = g.neighbors(&u)?;
                let mut seen_here: BTreeSet<VertexToken> = BTreeSet::new();
                for (v, dec) in ns {
                    if !seen_here.insert(v.clone()) {
                        return Err(Error::precondition(format!("parallel edges at {u} -- {v}")));
                    }
                    if !index.contains_key(&v) && d < radius {
                        next.insert(v.clone());
                    }
                    raw_edges.push((ui, v, dec));
                }
            }
            if d == radius || next.is_empty() {
                break;
            }
            for v in next {
                let i = tokens.len() as u32;
                if tokens.len() as u64 >= budget.ball_vertices {
                    return Err(Error::BudgetExceeded {
                        what: "ball vertex",
                        limit: budget.ball_vertices,
                    });
                }
                index.insert(v.clone(), i);
                tokens.push(v);
                depth.push(d as u32 + 1);
            }
            level = (level_start[d + 1]..tokens.len() as u32).collect();
            level_start.push(tokens.len() as u32);
        }
        while level_start.len() < radius + 2 {
            let end = tokens.len() as u32;
            level_start.push(end);
        }

        let n = tokens.len();
        let mut adj: Vec<Vec<(u32, EdgeDecoration)>> = vec![Vec::new(); n];
        let mut decor_of: HashMap<(u32, u32), EdgeDecoration> = HashMap::new();
        for (ui, v, dec) in raw_edges {
            let Some(&vi) = index.get(&v) else { continue };
            if let Some(prev) = decor_of.insert((ui, vi), dec) {
                if prev != dec {
                    return Err(Error::precondition(format!(
                        "inconsistent decorations on {} -- {}",
                        tokens[ui as usize], tokens[vi as usize],
                    )));
                }
            }
        }
        for (&(ui, vi), &dec) in &decor_of {
            match decor_of.get(&(vi, ui)) {
                Some(&back) if back == dec.reversed() => {}
                _ => {
                    return Err(Error::precondition(format!(
                        "asymmetric edge {} -- {}",
                        tokens[ui as usize], tokens[vi as usize],
                    )))
                }
            }
            adj[ui as usize].push((vi, dec));
        }
        for list in &mut adj {
            list.sort();
        }

        Ok(Ball {
            name: g.name().to_string(),
            params: g.params().clone(),
            signature: g.signature(),
            center: center.clone(),
            radius,
            tokens,
            index,
            depth,
            level_start,
            adj,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> DecorationSignature {
        self.signature
    }

    pub fn center(&self) -> &VertexToken {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, i: u32) -> &VertexToken {
        &self.tokens[i as usize]
    }

    pub fn index_of(&self, t: &VertexToken) -> Option<u32> {
        self.index.get(t).copied()
    }

    pub fn depth_of(&self, i: u32) -> u32 {
        self.depth[i as usize]
    }

    pub fn neighbors(&self, i: u32) -> &[(u32, EdgeDecoration)] {
        &self.adj[i as usize]
    }

    pub fn degree(&self, i: u32) -> usize {
        self.adj[i as usize].len()
    }

    /// Decoration of the edge `u -- v` from `u`'s perspective, if present.
    pub fn edge(&self, u: u32, v: u32) -> Option<EdgeDecoration> {
        let list = &self.adj[u as usize];
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|k| list[k].1)
    }

    /// Indices of the vertices at exactly depth `d` (contiguous).
    pub fn sphere(&self, d: usize) -> std::ops::Range<u32> {
        if d + 1 >= self.level_start.len() {
            let end = self.tokens.len() as u32;
            return end..end;
        }
        self.level_start[d]..self.level_start[d + 1]
    }

    /// All edges as `(u, v, decoration-from-u)` with `u < v`.
    pub fn edges(&self) -> Vec<(u32, u32, EdgeDecoration)> {
        let mut out = Vec::new();
        for u in 0..self.tokens.len() as u32 {
            for &(v, dec) in &self.adj[u as usize] {
                if u < v {
                    out.push((u, v, dec));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct VertexRow {
            index: u32,
            token: String,
            depth: u32,
        }
        #[derive(Serialize)]
        struct EdgeRow {
            u: u32,
            v: u32,
            color: Option<EdgeColor>,
        }
        #[derive(Serialize)]
        struct ArcRow {
            from: u32,
            to: u32,
        }

        let vertices: Vec<VertexRow> = (0..self.tokens.len() as u32)
            .map(|i| VertexRow {
                index: i,
                token: self.tokens[i as usize].render(),
                depth: self.depth[i as usize],
            })
            .collect();
        let mut edges = Vec::new();
        let mut arcs = Vec::new();
        for (u, v, dec) in self.edges() {
            edges.push(EdgeRow {
                u,
                v,
                color: match dec.color {
                    EdgeColor::None => None,
                    c => Some(c),
                },
            });
            match dec.orientation {
                Orientation::Forward => arcs.push(ArcRow { from: u, to: v }),
                Orientation::Backward => arcs.push(ArcRow { from: v, to: u }),
                Orientation::Undirected => {}
            }
        }

        let mut obj = serde_json::json!({
            "family": self.name,
            "params": self.params,
            "center": self.center.render(),
            "radius": self.radius,
            "vertices": vertices,
            "edges": edges,
        });
        if self.signature.oriented {
            obj["arcs"] = serde_json::to_value(arcs).expect("arc rows serialize");
        }
        obj
    }

    /// Undirected DOT rendering; red and blue edges carry color attributes.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let graph_name: String = self
            .name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        out.push_str(&format!("graph {graph_name} {{\n"));
        for i in 0..self.tokens.len() as u32 {
            out.push_str(&format!(
                "  \"{}\" [depth={}];\n",
                self.tokens[i as usize].render(),
                self.depth[i as usize]
            ));
        }
        for (u, v, dec) in self.edges() {
            let attr = match dec.color {
                EdgeColor::Red => " [color=\"red\"]",
                EdgeColor::Blue => " [color=\"blue\"]",
                EdgeColor::None => "",
            };
            out.push_str(&format!(
                "  \"{}\" -- \"{}\"{};\n",
                self.tokens[u as usize].render(),
                self.tokens[v as usize].render(),
                attr
            ));
        }
        out.push_str("}\n");
        out
    }
}
