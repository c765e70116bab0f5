//! Lazy graph generators.
//!
//! A [`GraphGenerator`] describes a connected, usually infinite graph by a
//! pure neighbor oracle over canonical tokens. All analyses work on finite
//! balls extracted from the oracle; nothing ever materializes the whole graph.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, VertexToken};

/// Edge color class. Case C graphs carry a red perfect matching plus blue
/// edges; uncolored graphs use `None` throughout.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Red,
    Blue,
    None,
}

/// Orientation of an edge relative to the queried vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Undirected,
    /// Arc from the queried vertex to the neighbor.
    Forward,
    /// Arc from the neighbor to the queried vertex.
    Backward,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Undirected => Orientation::Undirected,
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// Decoration attached to one edge endpoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct EdgeDecoration {
    pub color: EdgeColor,
    pub orientation: Orientation,
}

impl EdgeDecoration {
    pub const PLAIN: EdgeDecoration = EdgeDecoration {
        color: EdgeColor::None,
        orientation: Orientation::Undirected,
    };

    pub fn colored(color: EdgeColor) -> Self {
        EdgeDecoration {
            color,
            orientation: Orientation::Undirected,
        }
    }

    pub fn arc_out() -> Self {
        EdgeDecoration {
            color: EdgeColor::None,
            orientation: Orientation::Forward,
        }
    }

    pub fn arc_in() -> Self {
        EdgeDecoration {
            color: EdgeColor::None,
            orientation: Orientation::Backward,
        }
    }

    /// The same edge as seen from the other endpoint.
    pub fn reversed(self) -> Self {
        EdgeDecoration {
            color: self.color,
            orientation: self.orientation.reversed(),
        }
    }
}

/// Which decorations a graph uses. A graph uses colors on all edges or none,
/// and orientations on all edges or none.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub struct DecorationSignature {
    pub colored: bool,
    pub oriented: bool,
}

impl DecorationSignature {
    pub const PLAIN: DecorationSignature = DecorationSignature {
        colored: false,
        oriented: false,
    };
    pub const COLORED: DecorationSignature = DecorationSignature {
        colored: true,
        oriented: false,
    };
    pub const ORIENTED: DecorationSignature = DecorationSignature {
        colored: false,
        oriented: true,
    };

    pub fn admits(&self, d: EdgeDecoration) -> bool {
        (self.colored != (d.color == EdgeColor::None))
            && (self.oriented != (d.orientation == Orientation::Undirected))
    }
}

/// How a declared two-sided line threads through its graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    /// Colored line alternating red/blue: even indices are the alpha
    /// vertices, odd indices the beta vertices; `{line(2i), line(2i+1)}` is
    /// red and `{line(2i+1), line(2i+2)}` is blue.
    Alternating,
    /// `(line(k), line(k+1))` is an arc for every k.
    Directed,
    /// Plain geodesic: `dist(line(0), line(k)) = |k|`.
    Geodesic,
}

/// A declared two-sided line, given as an index oracle.
#[derive(Clone)]
pub struct LineSpec {
    pub kind: LineKind,
    at: Arc<dyn Fn(i64) -> VertexToken + Send + Sync>,
}

impl LineSpec {
    pub fn new(kind: LineKind, at: impl Fn(i64) -> VertexToken + Send + Sync + 'static) -> Self {
        LineSpec { kind, at: Arc::new(at) }
    }

    pub fn at(&self, k: i64) -> VertexToken {
        (self.at)(k)
    }

    /// Token of the n-th alpha vertex (n may be negative).
    ///
    /// On alternating lines the alpha vertices sit at the even indices; on
    /// directed and geodesic lines every index is an alpha vertex.
    pub fn alpha(&self, n: i64) -> VertexToken {
        match self.kind {
            LineKind::Alternating => self.at(2 * n),
            LineKind::Directed | LineKind::Geodesic => self.at(n),
        }
    }

    /// Window of consecutive line vertices `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<VertexToken> {
        (lo..=hi).map(|k| self.at(k)).collect()
    }
}

type NeighborFn = dyn Fn(&VertexToken) -> Result<Vec<(VertexToken, EdgeDecoration)>> + Send + Sync;

/// A lazily generated connected graph.
#[derive(Clone)]
pub struct GraphGenerator {
    name: String,
    params: BTreeMap<String, i64>,
    degree: usize,
    signature: DecorationSignature,
    base: VertexToken,
    line: Option<LineSpec>,
    neighbors: Arc<NeighborFn>,
}

impl GraphGenerator {
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        signature: DecorationSignature,
        base: VertexToken,
        neighbors: impl Fn(&VertexToken) -> Result<Vec<(VertexToken, EdgeDecoration)>> + Send + Sync + 'static,
    ) -> Self {
        GraphGenerator {
            name: name.into(),
            params: BTreeMap::new(),
            degree,
            signature,
            base,
            line: None,
            neighbors: Arc::new(neighbors),
        }
    }

    pub fn with_param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_line(mut self, line: LineSpec) -> Self {
        self.line = Some(line);
        self
    }

    /// Replace the display name and parameters. Used when a composite
    /// construction is exposed as a family in its own right.
    pub fn renamed(mut self, name: impl Into<String>, params: &[(&str, i64)]) -> Self {
        self.name = name.into();
        self.params = params
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, i64> {
        &self.params
    }

    /// Declared degree of every vertex.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn signature(&self) -> DecorationSignature {
        self.signature
    }

    pub fn base(&self) -> &VertexToken {
        &self.base
    }

    /// The declared line, or an unsupported error.
    pub fn line(&self) -> Result<&LineSpec> {
        self.line
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} declares no line", self.name)))
    }

    pub fn has_line(&self) -> bool {
        self.line.is_some()
    }

    /// Neighbors of `v` with the decoration seen from `v`.
    ///
    /// The returned order is deterministic and part of the generator contract
    /// (it doubles as the rotation system for dihedral splitting), but no
    /// analysis depends on it for correctness.
    pub fn neighbors(&self, v: &VertexToken) -> Result<Vec<(VertexToken, EdgeDecoration)>> {
        let ns = (self.neighbors)(v)?;
        for (u, d) in &ns {
            if u == v {
                return Err(Error::precondition(format!("loop at {v}")));
            }
            if !self.signature.admits(*d) {
                return Err(Error::precondition(format!(
                    "edge {v} -- {u} violates the decoration signature"
                )));
            }
        }
        Ok(ns)
    }
}

/// Forget orientations, keeping colors. Opposite arc pairs collapse to one
/// undirected edge.
pub fn underlying_undirected(g: &GraphGenerator) -> GraphGenerator {
    let inner = g.clone();
    let signature = DecorationSignature {
        colored: g.signature().colored,
        oriented: false,
    };
    let mut degree = g.degree();
    if let Ok(ns) = g.neighbors(g.base()) {
        let mut tokens: Vec<&VertexToken> = ns.iter().map(|(u, _)| u).collect();
        tokens.sort();
        tokens.dedup();
        degree = tokens.len();
    }
    let mut out = GraphGenerator::new(
        format!("underlying({})", g.name()),
        degree,
        signature,
        g.base().clone(),
        move |v| {
            let mut seen: BTreeMap<VertexToken, EdgeDecoration> = BTreeMap::new();
            for (u, d) in inner.neighbors(v)? {
                let flat = EdgeDecoration {
                    color: d.color,
                    orientation: Orientation::Undirected,
                };
                if let Some(prev) = seen.insert(u.clone(), flat) {
                    if prev.color != flat.color {
                        return Err(Error::precondition(format!(
                            "conflicting colors between {v} and {u}"
                        )));
                    }
                }
            }
            Ok(seen.into_iter().collect())
        },
    );
    out.params = g.params().clone();
    if let Some(line) = &g.line {
        let kind = match line.kind {
            LineKind::Alternating => LineKind::Alternating,
            LineKind::Directed | LineKind::Geodesic => LineKind::Geodesic,
        };
        let inner_line = line.clone();
        out = out.with_line(LineSpec::new(kind, move |k| inner_line.at(k)));
    }
    out
}

/// Flip every arc. Colors are kept; the declared line is re-indexed so that
/// it still runs along the arrows.
pub fn reverse(g: &GraphGenerator) -> GraphGenerator {
    let inner = g.clone();
    let mut out = GraphGenerator::new(
        format!("reverse({})", g.name()),
        g.degree(),
        g.signature(),
        g.base().clone(),
        move |v| {
            Ok(inner
                .neighbors(v)?
                .into_iter()
                .map(|(u, d)| {
                    (
                        u,
                        EdgeDecoration {
                            color: d.color,
                            orientation: d.orientation.reversed(),
                        },
                    )
                })
                .collect())
        },
    );
    out.params = g.params().clone();
    if let Some(line) = &g.line {
        let kind = line.kind;
        let inner_line = line.clone();
        out = out.with_line(LineSpec::new(kind, move |k| inner_line.at(-k)));
    }
    out
}
