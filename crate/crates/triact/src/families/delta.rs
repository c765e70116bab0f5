//! Layered digraphs over the integers: level i is joined completely to level
//! i+1 by arcs.

use crate::graph::{DecorationSignature, EdgeDecoration, LineKind, LineSpec};
use crate::{Error, GraphGenerator, Result, VertexToken};

fn parse_pair(token: &VertexToken, open: char, sep: char, close: char) -> Result<(i64, u32)> {
    let s = token.as_atom()?;
    let body = s
        .strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(|| Error::invalid_token(token, "expected delimited pair"))?;
    let Some((i_s, j_s)) = body.split_once(sep) else {
        return Err(Error::invalid_token(token, "expected two components"));
    };
    let i: i64 = i_s
        .parse()
        .map_err(|_| Error::invalid_token(token, "malformed level"))?;
    let j: u32 = j_s
        .parse()
        .map_err(|_| Error::invalid_token(token, "malformed column"))?;
    Ok((i, j))
}

fn delta_token(i: i64, j: u32) -> VertexToken {
    VertexToken::atom(format!("({i},{j})"))
}

/// The digraph with vertex set Z x {1..p} and all arcs from level i to level
/// i+1.
pub fn delta_p(p: u32) -> Result<GraphGenerator> {
    if p < 2 {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p as i64,
            reason: "delta-p needs p >= 2".to_string(),
        });
    }
    let line = LineSpec::new(LineKind::Directed, |k| delta_token(k, 1));
    Ok(GraphGenerator::new(
        "delta-p",
        2 * p as usize,
        DecorationSignature::ORIENTED,
        delta_token(0, 1),
        move |v| {
            let (i, j) = parse_pair(v, '(', ',', ')')?;
            if !(1..=p).contains(&j) {
                return Err(Error::invalid_token(v, "column out of range"));
            }
            let mut out = Vec::with_capacity(2 * p as usize);
            for j2 in 1..=p {
                out.push((delta_token(i + 1, j2), EdgeDecoration::arc_out()));
            }
            for j2 in 1..=p {
                out.push((delta_token(i - 1, j2), EdgeDecoration::arc_in()));
            }
            Ok(out)
        },
    )
    .with_param("p", p as i64)
    .with_line(line))
}

/// The two-column layered digraph underlying the two-ended strip, with its
/// own token scheme (levels paired with columns 0/1).
pub fn strip_core() -> GraphGenerator {
    let token = |i: i64, j: u32| VertexToken::atom(format!("({i};{j})"));
    let line = LineSpec::new(LineKind::Directed, move |k| token(k, 0));
    GraphGenerator::new(
        "strip-core",
        4,
        DecorationSignature::ORIENTED,
        token(0, 0),
        move |v| {
            let (i, j) = parse_pair(v, '(', ';', ')')?;
            if j > 1 {
                return Err(Error::invalid_token(v, "column out of range"));
            }
            Ok(vec![
                (token(i + 1, 0), EdgeDecoration::arc_out()),
                (token(i + 1, 1), EdgeDecoration::arc_out()),
                (token(i - 1, 0), EdgeDecoration::arc_in()),
                (token(i - 1, 1), EdgeDecoration::arc_in()),
            ])
        },
    )
    .with_line(line)
}
