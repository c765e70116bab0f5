//! Canonical vertex identities.
//!
//! Every vertex of a lazily generated graph is named by a [`VertexToken`].
//! Tokens are canonical: two tokens are equal if and only if they name the
//! same vertex, and the derived total order is used everywhere ties must be
//! broken deterministically. Family generators mint flat [`VertexToken::Atom`]
//! tokens; functors wrap the tokens of their input graph in
//! [`VertexToken::Seq`] without ever needing to parse them.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Canonical, totally ordered vertex identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum VertexToken {
    /// Leaf token in a family-specific canonical format.
    Atom(String),
    /// Composite token built by a functor from input-graph tokens.
    Seq(Vec<VertexToken>),
}

impl VertexToken {
    pub fn atom(s: impl Into<String>) -> Self {
        VertexToken::Atom(s.into())
    }

    pub fn seq(items: Vec<VertexToken>) -> Self {
        VertexToken::Seq(items)
    }

    /// Flat rendering used in exports: atoms verbatim, sequences in parentheses.
    pub fn render(&self) -> String {
        match self {
            VertexToken::Atom(s) => s.clone(),
            VertexToken::Seq(items) => {
                let inner: Vec<String> = items.iter().map(|t| t.render()).collect();
                format!("({})", inner.join(","))
            }
        }
    }

    /// The items of a `Seq` token, or an invalid-token error.
    pub fn as_seq(&self) -> Result<&[VertexToken], crate::Error> {
        match self {
            VertexToken::Seq(items) => Ok(items),
            VertexToken::Atom(_) => Err(crate::Error::invalid_token(self, "expected composite token")),
        }
    }

    /// The string of an `Atom` token, or an invalid-token error.
    pub fn as_atom(&self) -> Result<&str, crate::Error> {
        match self {
            VertexToken::Atom(s) => Ok(s),
            VertexToken::Seq(_) => Err(crate::Error::invalid_token(self, "expected atomic token")),
        }
    }
}

impl fmt::Display for VertexToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_total_and_deterministic() {
        let a = VertexToken::atom("a");
        let b = VertexToken::atom("b");
        let s = VertexToken::seq(vec![a.clone(), b.clone()]);
        assert!(a < b);
        assert!(a < s, "atoms order before sequences");
        assert_eq!(a.cmp(&a), std::cmp::Ordering::Equal);
    }

    #[test]
    fn render_nests() {
        let t = VertexToken::seq(vec![
            VertexToken::seq(vec![VertexToken::atom("x"), VertexToken::atom("y")]),
            VertexToken::atom("+"),
        ]);
        assert_eq!(t.render(), "((x,y),+)");
    }
}
