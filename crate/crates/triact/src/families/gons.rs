//! Polygon-based Case C families: blue n-gons joined by a red matching, and
//! the 2n-gon tree joined along opposite vertex pairs.

use crate::graph::{DecorationSignature, EdgeColor, EdgeDecoration, LineKind, LineSpec};
use crate::{Error, GraphGenerator, Result, VertexToken};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Syl {
    R,
    C(u32),
}

fn parse_rc_word(n: u32, token: &VertexToken) -> Result<Vec<Syl>> {
    let s = token.as_atom()?;
    if s == "e" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for part in s.split('.') {
        let syl = if part == "r" {
            Syl::R
        } else if let Some(k) = part.strip_prefix('c') {
            let k: u32 = k
                .parse()
                .map_err(|_| Error::invalid_token(token, "malformed c-syllable"))?;
            if k == 0 || k >= n {
                return Err(Error::invalid_token(token, "c-exponent out of range"));
            }
            Syl::C(k)
        } else {
            return Err(Error::invalid_token(token, "unknown syllable"));
        };
        match (word.last(), syl) {
            (Some(Syl::R), Syl::R) | (Some(Syl::C(_)), Syl::C(_)) => {
                return Err(Error::invalid_token(token, "word not in normal form"));
            }
            _ => word.push(syl),
        }
    }
    Ok(word)
}

fn render_rc_word(word: &[Syl]) -> VertexToken {
    if word.is_empty() {
        return VertexToken::atom("e");
    }
    let parts: Vec<String> = word
        .iter()
        .map(|syl| match syl {
            Syl::R => "r".to_string(),
            Syl::C(k) => format!("c{k}"),
        })
        .collect();
    VertexToken::atom(parts.join("."))
}

fn rc_mul_r(word: &[Syl]) -> Vec<Syl> {
    let mut w = word.to_vec();
    if w.last() == Some(&Syl::R) {
        w.pop();
    } else {
        w.push(Syl::R);
    }
    w
}

fn rc_mul_c(n: u32, word: &[Syl], delta: u32) -> Vec<Syl> {
    let mut w = word.to_vec();
    match w.last().copied() {
        Some(Syl::C(k)) => {
            let k2 = (k + delta) % n;
            if k2 == 0 {
                w.pop();
            } else {
                let last = w.last_mut().expect("nonempty");
                *last = Syl::C(k2);
            }
        }
        _ => w.push(Syl::C(delta % n)),
    }
    w
}

/// Blue n-gons joined by red edges: the Cayley graph of the free product of
/// a two-element group (red) and a cyclic group of order n (blue).
pub fn joined_ngons(n: u32) -> Result<GraphGenerator> {
    if n < 3 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as i64,
            reason: "joined-ngons needs n >= 3".to_string(),
        });
    }
    let line = LineSpec::new(LineKind::Alternating, move |k| {
        let mut word = Vec::new();
        if k >= 0 {
            for _ in 0..k / 2 {
                word.push(Syl::R);
                word.push(Syl::C(1));
            }
            if k % 2 == 1 {
                word.push(Syl::R);
            }
        } else {
            for _ in 0..(-k) / 2 {
                word.push(Syl::C(n - 1));
                word.push(Syl::R);
            }
            if (-k) % 2 == 1 {
                word.push(Syl::C(n - 1));
            }
        }
        render_rc_word(&word)
    });
    Ok(GraphGenerator::new(
        "joined-ngons",
        3,
        DecorationSignature::COLORED,
        VertexToken::atom("e"),
        move |v| {
            let word = parse_rc_word(n, v)?;
            Ok(vec![
                (render_rc_word(&rc_mul_r(&word)), EdgeDecoration::colored(EdgeColor::Red)),
                (render_rc_word(&rc_mul_c(n, &word, 1)), EdgeDecoration::colored(EdgeColor::Blue)),
                (render_rc_word(&rc_mul_c(n, &word, n - 1)), EdgeDecoration::colored(EdgeColor::Blue)),
            ])
        },
    )
    .with_param("n", n as i64)
    .with_line(line))
}

/// Gon-tree token: address of the gon in the tree of 2n-gons plus a position
/// on its cycle.
fn parse_gon_token(n: u32, token: &VertexToken) -> Result<(Vec<u32>, u32)> {
    let s = token.as_atom()?;
    let Some((addr_s, pos_s)) = s.rsplit_once(':') else {
        return Err(Error::invalid_token(token, "missing position separator"));
    };
    let pos: u32 = pos_s
        .parse()
        .map_err(|_| Error::invalid_token(token, "malformed position"))?;
    if pos >= 2 * n {
        return Err(Error::invalid_token(token, "position out of range"));
    }
    let mut addr = Vec::new();
    if !addr_s.is_empty() {
        for part in addr_s.split('.') {
            let a: u32 = part
                .parse()
                .map_err(|_| Error::invalid_token(token, "malformed address"))?;
            let limit_ok = if addr.is_empty() { a < n } else { (1..n).contains(&a) };
            if !limit_ok {
                return Err(Error::invalid_token(token, "address entry out of range"));
            }
            addr.push(a);
        }
    }
    Ok((addr, pos))
}

fn gon_token(addr: &[u32], pos: u32) -> VertexToken {
    let addr_s: Vec<String> = addr.iter().map(|a| a.to_string()).collect();
    VertexToken::atom(format!("{}:{pos}", addr_s.join(".")))
}

/// 2n-gons with opposite vertex pairs joined pairwise to fresh 2n-gons,
/// recursively. Blue edges are the cycle edges, red edges the joins; a child
/// gon is always entered at its opposite pair {0, n}.
pub fn joined_2ngons(n: u32) -> Result<GraphGenerator> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as i64,
            reason: "joined-2ngons needs n >= 2".to_string(),
        });
    }
    let line = LineSpec::new(LineKind::Alternating, move |k| {
        // Positive side alternates red joins and one blue step per gon down
        // the 0,1,1,... subtree; negative side mirrors through the n-1 pair.
        if k >= 0 {
            let i = k / 2;
            if k % 2 == 0 {
                if i == 0 {
                    gon_token(&[], 0)
                } else {
                    let mut addr = vec![0];
                    addr.extend(std::iter::repeat(1).take(i as usize - 1));
                    gon_token(&addr, 1)
                }
            } else {
                let mut addr = vec![0];
                addr.extend(std::iter::repeat(1).take(i as usize));
                gon_token(&addr, 0)
            }
        } else {
            let j = (-k) / 2;
            if k % 2 == 0 {
                // alpha_{-j}, j >= 1
                let mut addr = vec![n - 1];
                addr.extend(std::iter::repeat(1).take(j as usize - 1));
                gon_token(&addr, n)
            } else {
                // beta_{-j-1} for k = -(2j+1)
                if j == 0 {
                    gon_token(&[], 2 * n - 1)
                } else {
                    let mut addr = vec![n - 1];
                    addr.extend(std::iter::repeat(1).take(j as usize - 1));
                    gon_token(&addr, n + 1)
                }
            }
        }
    });
    Ok(GraphGenerator::new(
        "joined-2ngons",
        3,
        DecorationSignature::COLORED,
        gon_token(&[], 0),
        move |v| {
            let (addr, pos) = parse_gon_token(n, v)?;
            let m = 2 * n;
            let blue1 = gon_token(&addr, (pos + 1) % m);
            let blue2 = gon_token(&addr, (pos + m - 1) % m);
            let red = if !addr.is_empty() && (pos == 0 || pos == n) {
                let p = *addr.last().expect("nonempty address");
                let parent = &addr[..addr.len() - 1];
                gon_token(parent, if pos == 0 { p } else { p + n })
            } else {
                let p = pos % n;
                let mut child = addr.clone();
                child.push(p);
                gon_token(&child, if pos < n { 0 } else { n })
            };
            Ok(vec![
                (red, EdgeDecoration::colored(EdgeColor::Red)),
                (blue1, EdgeDecoration::colored(EdgeColor::Blue)),
                (blue2, EdgeDecoration::colored(EdgeColor::Blue)),
            ])
        },
    )
    .with_param("n", n as i64)
    .with_line(line))
}
