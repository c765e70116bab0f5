//! Built-in graph families.
//!
//! Each family is a [`GraphGenerator`] over a documented token scheme. The
//! composite families (`strip`, `theta`, `rotation-tree`) are assembled from
//! the base families via the functors in [`crate::functors`].

mod delta;
mod gons;
mod trees;

pub use delta::{delta_p, strip_core};
pub use gons::{joined_2ngons, joined_ngons};
pub use trees::{colored_t3, oriented_t3, tree};

use crate::functors::{bs, dihedral_split, star_construction};
use crate::{Error, GraphGenerator, Result};

/// A parsed family identifier.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// Trivalent tree, plain.
    T3,
    /// Trivalent tree with the red/blue edge coloring whose blue subgraph is
    /// a disjoint union of lines.
    ColoredT3,
    /// Trivalent tree oriented with in-degree 1 and out-degree 2.
    OrientedT3,
    /// n-gons joined at every vertex, n >= 3.
    JoinedNgons(u32),
    /// 2n-gons joined along antipodal vertex pairs, n >= 2.
    Joined2Ngons(u32),
    /// Complete layered digraph over Z with p columns, p >= 2.
    DeltaP(u32),
    /// Doubling of the two-column layered digraph.
    Strip,
    /// Doubling of the s-arc digraph of delta-p(2), s >= 0.
    Theta(u32),
    /// Dihedral splitting of the d-regular tree, 3 <= d <= 9.
    RotationTree(u32),
}

impl Family {
    /// Parse a compact identifier such as `"t3"` or `"theta(2)"`.
    pub fn parse(s: &str) -> Result<Family> {
        let s = s.trim();
        if let Some((head, rest)) = s.split_once('(') {
            let Some(arg) = rest.strip_suffix(')') else {
                return Err(Error::InvalidParameter {
                    name: "family",
                    value: 0,
                    reason: format!("unbalanced parentheses in {s:?}"),
                });
            };
            let value: i64 = arg.trim().parse().map_err(|_| Error::InvalidParameter {
                name: "family",
                value: 0,
                reason: format!("malformed argument in {s:?}"),
            })?;
            Family::from_parts(head.trim(), Some(value))
        } else {
            Family::from_parts(s, None)
        }
    }

    /// Assemble a family from its name and optional integer argument.
    pub fn from_parts(name: &str, arg: Option<i64>) -> Result<Family> {
        let bare = |family: Family| -> Result<Family> {
            match arg {
                None => Ok(family),
                Some(v) => Err(Error::InvalidParameter {
                    name: "family",
                    value: v,
                    reason: format!("{name} takes no parameter"),
                }),
            }
        };
        let with = |label: &'static str, f: fn(u32) -> Family| -> Result<Family> {
            let v = arg.ok_or_else(|| Error::InvalidParameter {
                name: label,
                value: 0,
                reason: format!("{name} requires a parameter"),
            })?;
            let v = u32::try_from(v).map_err(|_| Error::InvalidParameter {
                name: label,
                value: v,
                reason: "parameter must be non-negative".to_string(),
            })?;
            Ok(f(v))
        };
        match name {
            "t3" => bare(Family::T3),
            "colored-t3" => bare(Family::ColoredT3),
            "oriented-t3" => bare(Family::OrientedT3),
            "strip" => bare(Family::Strip),
            "joined-ngons" => with("n", Family::JoinedNgons),
            "joined-2ngons" => with("n", Family::Joined2Ngons),
            "delta-p" => with("p", Family::DeltaP),
            "theta" => with("s", Family::Theta),
            "rotation-tree" => with("d", Family::RotationTree),
            _ => Err(Error::InvalidParameter {
                name: "family",
                value: arg.unwrap_or(0),
                reason: format!("unknown family {name:?}"),
            }),
        }
    }

    /// Instantiate the generator.
    pub fn make(&self) -> Result<GraphGenerator> {
        match *self {
            Family::T3 => tree(3),
            Family::ColoredT3 => Ok(colored_t3()),
            Family::OrientedT3 => Ok(oriented_t3()),
            Family::JoinedNgons(n) => joined_ngons(n),
            Family::Joined2Ngons(n) => joined_2ngons(n),
            Family::DeltaP(p) => delta_p(p),
            Family::Strip => {
                Ok(star_construction(&strip_core())?.renamed("strip", &[]))
            }
            Family::Theta(s) => {
                let base = bs(&delta_p(2)?, s)?;
                Ok(star_construction(&base)?.renamed("theta", &[("s", s as i64)]))
            }
            Family::RotationTree(d) => {
                let split = dihedral_split(&tree(d as usize)?, d as usize)?;
                Ok(split.renamed("rotation-tree", &[("d", d as i64)]))
            }
        }
    }

    /// All families exercised by the whole-suite verification command, with
    /// small default parameters.
    pub fn verification_set() -> Vec<Family> {
        vec![
            Family::T3,
            Family::ColoredT3,
            Family::OrientedT3,
            Family::JoinedNgons(3),
            Family::Joined2Ngons(2),
            Family::DeltaP(2),
            Family::Strip,
            Family::Theta(0),
            Family::Theta(1),
            Family::RotationTree(3),
        ]
    }
}
