//! Tree families: the d-regular tree over involutive letters, its red/blue
//! colored trivalent variant, and the trivalent tree oriented with in-degree
//! one and out-degree two.

use crate::graph::{DecorationSignature, EdgeColor, EdgeDecoration, LineKind, LineSpec};
use crate::{Error, GraphGenerator, Result, VertexToken};

const TREE_LETTERS: &[u8] = b"abcdefghi";

fn parse_tree_word(d: usize, token: &VertexToken) -> Result<Vec<u8>> {
    let s = token.as_atom()?;
    if s == "e" {
        return Ok(Vec::new());
    }
    let mut word = Vec::with_capacity(s.len());
    for ch in s.bytes() {
        let Some(i) = TREE_LETTERS[..d].iter().position(|&l| l == ch) else {
            return Err(Error::invalid_token(token, "letter outside alphabet"));
        };
        if word.last() == Some(&(i as u8)) {
            return Err(Error::invalid_token(token, "word not reduced"));
        }
        word.push(i as u8);
    }
    Ok(word)
}

fn render_tree_word(word: &[u8]) -> VertexToken {
    if word.is_empty() {
        return VertexToken::atom("e");
    }
    VertexToken::atom(word.iter().map(|&i| TREE_LETTERS[i as usize] as char).collect::<String>())
}

/// The d-regular tree: vertices are reduced words over d involutive letters.
pub fn tree(d: usize) -> Result<GraphGenerator> {
    if !(3..=TREE_LETTERS.len()).contains(&d) {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d as i64,
            reason: format!("tree degree must be in 3..={}", TREE_LETTERS.len()),
        });
    }
    let name = if d == 3 { "t3".to_string() } else { format!("tree({d})") };
    let line = LineSpec::new(LineKind::Geodesic, |k| {
        // Geodesic line through the base: words alternating between the
        // first two letters, starting with `a` rightward and `b` leftward.
        let len = k.unsigned_abs() as usize;
        let first = if k >= 0 { 0u8 } else { 1u8 };
        let word: Vec<u8> = (0..len).map(|i| (first + (i as u8 & 1)) % 2).collect();
        render_tree_word(&word)
    });
    Ok(GraphGenerator::new(
        name,
        d,
        DecorationSignature::PLAIN,
        VertexToken::atom("e"),
        move |v| {
            let word = parse_tree_word(d, v)?;
            let mut out = Vec::with_capacity(d);
            for i in 0..d as u8 {
                let mut w = word.clone();
                if w.last() == Some(&i) {
                    w.pop();
                } else {
                    w.push(i);
                }
                out.push((render_tree_word(&w), EdgeDecoration::PLAIN));
            }
            Ok(out)
        },
    )
    .with_param("d", d as i64)
    .with_line(line))
}

/// Syllables of a normal-form word in the free product of an involution `r`
/// with an infinite-order generator `t`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Syl {
    R,
    T(i64),
}

fn parse_rt_word(token: &VertexToken) -> Result<Vec<Syl>> {
    let s = token.as_atom()?;
    if s == "e" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for part in s.split('.') {
        let syl = if part == "r" {
            Syl::R
        } else if let Some(k) = part.strip_prefix('t') {
            let k: i64 = k
                .parse()
                .map_err(|_| Error::invalid_token(token, "malformed t-syllable"))?;
            if k == 0 {
                return Err(Error::invalid_token(token, "zero t-exponent"));
            }
            Syl::T(k)
        } else {
            return Err(Error::invalid_token(token, "unknown syllable"));
        };
        match (word.last(), syl) {
            (Some(Syl::R), Syl::R) | (Some(Syl::T(_)), Syl::T(_)) => {
                return Err(Error::invalid_token(token, "word not in normal form"));
            }
            _ => word.push(syl),
        }
    }
    Ok(word)
}

fn render_rt_word(word: &[Syl]) -> VertexToken {
    if word.is_empty() {
        return VertexToken::atom("e");
    }
    let parts: Vec<String> = word
        .iter()
        .map(|syl| match syl {
            Syl::R => "r".to_string(),
            Syl::T(k) => format!("t{k}"),
        })
        .collect();
    VertexToken::atom(parts.join("."))
}

fn rt_mul_r(word: &[Syl]) -> Vec<Syl> {
    let mut w = word.to_vec();
    if w.last() == Some(&Syl::R) {
        w.pop();
    } else {
        w.push(Syl::R);
    }
    w
}

fn rt_mul_t(word: &[Syl], delta: i64) -> Vec<Syl> {
    let mut w = word.to_vec();
    match w.last().copied() {
        Some(Syl::T(k)) => {
            if k + delta == 0 {
                w.pop();
            } else {
                let last = w.last_mut().expect("nonempty");
                *last = Syl::T(k + delta);
            }
        }
        _ => w.push(Syl::T(delta)),
    }
    w
}

/// The trivalent tree with a red perfect matching and blue lines: the Cayley
/// graph of the free product of a two-element group (red generator) and the
/// integers (blue generator and its inverse).
pub fn colored_t3() -> GraphGenerator {
    let line = LineSpec::new(LineKind::Alternating, |k| {
        // line(2i) is the i-th alpha vertex, line(2i+1) the i-th beta vertex.
        let mut word = Vec::new();
        if k >= 0 {
            let i = (k / 2) as usize;
            for _ in 0..i {
                word.push(Syl::R);
                word.push(Syl::T(1));
            }
            if k % 2 == 1 {
                word.push(Syl::R);
            }
        } else {
            let steps = ((-k) / 2) as usize;
            for _ in 0..steps {
                word.push(Syl::T(-1));
                word.push(Syl::R);
            }
            if (-k) % 2 == 1 {
                word.push(Syl::T(-1));
            }
        }
        render_rt_word(&word)
    });
    GraphGenerator::new(
        "colored-t3",
        3,
        DecorationSignature::COLORED,
        VertexToken::atom("e"),
        |v| {
            let word = parse_rt_word(v)?;
            Ok(vec![
                (render_rt_word(&rt_mul_r(&word)), EdgeDecoration::colored(EdgeColor::Red)),
                (render_rt_word(&rt_mul_t(&word, 1)), EdgeDecoration::colored(EdgeColor::Blue)),
                (render_rt_word(&rt_mul_t(&word, -1)), EdgeDecoration::colored(EdgeColor::Blue)),
            ])
        },
    )
    .with_line(line)
}

fn parse_spine_token(token: &VertexToken) -> Result<(i64, String)> {
    let s = token.as_atom()?;
    let Some((anchor, word)) = s.split_once('|') else {
        return Err(Error::invalid_token(token, "missing anchor separator"));
    };
    let j: i64 = anchor
        .parse()
        .map_err(|_| Error::invalid_token(token, "malformed anchor index"))?;
    if !word.is_empty() {
        if !word.starts_with('1') {
            return Err(Error::invalid_token(token, "descent word may not start on the spine"));
        }
        if word.bytes().any(|b| b != b'0' && b != b'1') {
            return Err(Error::invalid_token(token, "descent word must be binary"));
        }
    }
    Ok((j, word.to_string()))
}

fn spine_token(j: i64, word: &str) -> VertexToken {
    VertexToken::atom(format!("{j}|{word}"))
}

/// The trivalent tree oriented so every vertex has in-degree one and
/// out-degree two. Tokens anchor each vertex to a spine line at its unique
/// ancestor and record the binary descent word below it.
pub fn oriented_t3() -> GraphGenerator {
    let line = LineSpec::new(LineKind::Directed, |k| spine_token(k, ""));
    GraphGenerator::new(
        "oriented-t3",
        3,
        DecorationSignature::ORIENTED,
        spine_token(0, ""),
        |v| {
            let (j, word) = parse_spine_token(v)?;
            let parent = if word.is_empty() {
                spine_token(j - 1, "")
            } else {
                spine_token(j, &word[..word.len() - 1])
            };
            let (child0, child1) = if word.is_empty() {
                (spine_token(j + 1, ""), spine_token(j, "1"))
            } else {
                (spine_token(j, &format!("{word}0")), spine_token(j, &format!("{word}1")))
            };
            Ok(vec![
                (parent, EdgeDecoration::arc_in()),
                (child0, EdgeDecoration::arc_out()),
                (child1, EdgeDecoration::arc_out()),
            ])
        },
    )
    .with_line(line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t3_neighbors_reduce() {
        let g = tree(3).unwrap();
        let ns = g.neighbors(&VertexToken::atom("ab")).unwrap();
        let tokens: Vec<String> = ns.iter().map(|(t, _)| t.render()).collect();
        assert_eq!(tokens, ["aba", "a", "abc"]);
    }

    #[test]
    fn t3_line_is_geodesic_walk() {
        let g = tree(3).unwrap();
        let line = g.line().unwrap();
        assert_eq!(line.at(0).render(), "e");
        assert_eq!(line.at(3).render(), "aba");
        assert_eq!(line.at(-2).render(), "ba");
        for k in -4..4 {
            let here = line.at(k);
            let next = line.at(k + 1);
            assert!(
                g.neighbors(&here).unwrap().iter().any(|(t, _)| *t == next),
                "line breaks between {here} and {next}"
            );
        }
    }

    #[test]
    fn colored_t3_base_has_one_red_two_blue() {
        let g = colored_t3();
        let ns = g.neighbors(g.base()).unwrap();
        let reds: Vec<_> = ns.iter().filter(|(_, d)| d.color == EdgeColor::Red).collect();
        let blues: Vec<_> = ns.iter().filter(|(_, d)| d.color == EdgeColor::Blue).collect();
        assert_eq!(reds.len(), 1);
        assert_eq!(blues.len(), 2);
        assert_eq!(reds[0].0.render(), "r");
    }

    #[test]
    fn colored_t3_normal_form_cancellation() {
        let g = colored_t3();
        // r.t2 * t^{-1} = r.t1, and r.t1 * t^{-1} = r.
        let ns = g.neighbors(&VertexToken::atom("r.t1")).unwrap();
        let tokens: Vec<String> = ns.iter().map(|(t, _)| t.render()).collect();
        assert_eq!(tokens, ["r.t1.r", "r.t2", "r"]);
    }

    #[test]
    fn colored_t3_line_alternates() {
        let g = colored_t3();
        let line = g.line().unwrap();
        assert_eq!(line.at(0).render(), "e");
        assert_eq!(line.at(1).render(), "r");
        assert_eq!(line.at(2).render(), "r.t1");
        assert_eq!(line.at(-1).render(), "t-1");
        assert_eq!(line.at(-2).render(), "t-1.r");
        for k in -6..6 {
            let here = line.at(k);
            let next = line.at(k + 1);
            let ns = g.neighbors(&here).unwrap();
            let hit = ns.iter().find(|(t, _)| *t == next).expect("line edge exists");
            let want = if k.rem_euclid(2) == 0 { EdgeColor::Red } else { EdgeColor::Blue };
            assert_eq!(hit.1.color, want, "edge {here} -- {next}");
        }
    }

    #[test]
    fn oriented_t3_degrees() {
        let g = oriented_t3();
        let ns = g.neighbors(g.base()).unwrap();
        let ins = ns.iter().filter(|(_, d)| d.orientation == crate::Orientation::Backward).count();
        let outs = ns.iter().filter(|(_, d)| d.orientation == crate::Orientation::Forward).count();
        assert_eq!((ins, outs), (1, 2));
    }

    #[test]
    fn oriented_t3_descent_parents() {
        let g = oriented_t3();
        let ns = g.neighbors(&VertexToken::atom("2|10")).unwrap();
        let parent: Vec<String> = ns
            .iter()
            .filter(|(_, d)| d.orientation == crate::Orientation::Backward)
            .map(|(t, _)| t.render())
            .collect();
        assert_eq!(parent, ["2|1"]);
        assert!(parse_spine_token(&VertexToken::atom("2|01")).is_err());
    }
}
