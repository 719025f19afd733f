//! Line-oriented problem and point files.
//!
//! Problem file:
//!
//! ```text
//! bipartite 3 2
//! special u1 w1 u2 w2
//! b u3=2
//! cap e(u3,w1)=2
//! ```
//!
//! Point file: one `e(u,w)=p/q` per line plus `y=p/q`; omitted values are 0.
//! `#` starts a comment.

use std::fmt::Write as _;

use qmatch_core::rational::format_rational;
use qmatch_core::{parse_rational, BMatchingProblem, BiEdge, QPoint, QProblem, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub problem: QProblem,
    /// Degree bounds by node id, present when a `b` line was given.
    pub b: Option<Vec<i64>>,
    /// Capacities by edge id, present when a `cap` line was given.
    pub cap: Option<Vec<i64>>,
}

impl ProblemFile {
    pub fn plain(problem: QProblem) -> Self {
        ProblemFile {
            problem,
            b: None,
            cap: None,
        }
    }

    /// b-matching view; b defaults to all ones.
    pub fn bmatching(&self) -> qmatch_core::Result<BMatchingProblem> {
        let b = self
            .b
            .clone()
            .unwrap_or_else(|| vec![1; self.problem.node_count()]);
        BMatchingProblem::from_qproblem(&self.problem, b, self.cap.clone())
    }
}

/// `u3` or `w2` to a 0-based (side is u, index).
fn parse_node(tok: &str, m: usize, n: usize) -> Option<(bool, usize)> {
    let (is_u, rest) = match tok.as_bytes().first()? {
        b'u' => (true, &tok[1..]),
        b'w' => (false, &tok[1..]),
        _ => return None,
    };
    let i: usize = rest.parse().ok()?;
    let bound = if is_u { m } else { n };
    (1..=bound).contains(&i).then_some((is_u, i - 1))
}

fn node_id(p: &QProblem, is_u: bool, i: usize) -> usize {
    if is_u {
        p.u_node(i)
    } else {
        p.w_node(i)
    }
}

/// `e(u1,w2)` to a bipartite edge.
fn parse_edge(tok: &str, m: usize, n: usize) -> Option<BiEdge> {
    let inner = tok.strip_prefix("e(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let (au, ai) = parse_node(a.trim(), m, n)?;
    let (bu, bi) = parse_node(b.trim(), m, n)?;
    match (au, bu) {
        (true, false) => Some(BiEdge::new(ai, bi)),
        (false, true) => Some(BiEdge::new(bi, ai)),
        _ => None,
    }
}

fn parse_int(line: usize, s: &str) -> Result<i64, ParseError> {
    s.parse()
        .or_else(|_| err(line, format!("expected an integer, found `{s}`")))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut it = lines(text).peekable();
    let (l, first) = match it.next() {
        Some(x) => x,
        None => return err(1, "empty problem file"),
    };
    let toks: Vec<&str> = first.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "bipartite" {
        return err(l, "expected `bipartite m n`");
    }
    let m = parse_int(l, toks[1])? as usize;
    let n = parse_int(l, toks[2])? as usize;
    let (l, second) = match it.next() {
        Some(x) => x,
        None => return err(l + 1, "expected `special u<i> w<j> u<k> w<l>`"),
    };
    let toks: Vec<&str> = second.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "special" {
        return err(l, "expected `special u<i> w<j> u<k> w<l>`");
    }
    let mut ends = Vec::new();
    for (k, t) in toks[1..].iter().enumerate() {
        match parse_node(t, m, n) {
            Some((is_u, i)) if is_u == (k % 2 == 0) => ends.push(i),
            _ => return err(l, format!("bad special node `{t}`")),
        }
    }
    let problem = QProblem::new(
        m,
        n,
        BiEdge::new(ends[0], ends[1]),
        BiEdge::new(ends[2], ends[3]),
    )
    .or_else(|e| err(l, e.to_string()))?;
    let mut b: Option<Vec<i64>> = None;
    let mut cap: Option<Vec<i64>> = None;
    for (l, line) in it {
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or_default();
        for tok in toks {
            let (key, val) = match tok.split_once('=') {
                Some(kv) => kv,
                None => return err(l, format!("expected key=value, found `{tok}`")),
            };
            let val = parse_int(l, val)?;
            match head {
                "b" => {
                    let (is_u, i) = parse_node(key, m, n)
                        .map_or_else(|| err(l, format!("unknown node `{key}`")), Ok)?;
                    let v = node_id(&problem, is_u, i);
                    b.get_or_insert_with(|| vec![1; m + n])[v] = val;
                }
                "cap" => {
                    let e = parse_edge(key, m, n)
                        .map_or_else(|| err(l, format!("unknown edge `{key}`")), Ok)?;
                    let id = problem.edge_id(e);
                    cap.get_or_insert_with(|| vec![1; m * n])[id] = val;
                }
                _ => return err(l, format!("unknown directive `{head}`")),
            }
        }
        if head != "b" && head != "cap" {
            return err(l, format!("unknown directive `{head}`"));
        }
    }
    Ok(ProblemFile { problem, b, cap })
}

pub fn write_problem(f: &ProblemFile) -> String {
    let p = &f.problem;
    let (e1, e2) = p.special_bi_edges();
    let mut s = format!(
        "bipartite {} {}\nspecial u{} w{} u{} w{}\n",
        p.m(),
        p.n(),
        e1.u + 1,
        e1.w + 1,
        e2.u + 1,
        e2.w + 1
    );
    if let Some(b) = &f.b {
        let parts: Vec<String> = (0..p.node_count())
            .map(|v| format!("{}={}", p.label(v), b[v]))
            .collect();
        let _ = writeln!(s, "b {}", parts.join(" "));
    }
    if let Some(c) = &f.cap {
        let parts: Vec<String> = (0..p.edge_count())
            .map(|e| format!("{}={}", p.format_edge(e), c[e]))
            .collect();
        let _ = writeln!(s, "cap {}", parts.join(" "));
    }
    s
}

pub fn parse_point(p: &QProblem, text: &str) -> Result<QPoint, ParseError> {
    let mut pt = QPoint::zero(p.edge_count());
    let mut seen = vec![false; p.edge_count() + 1];
    for (l, line) in lines(text) {
        let (key, val) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => {
                return err(
                    l,
                    format!("expected `e(u,w)=p/q` or `y=p/q`, found `{line}`"),
                )
            }
        };
        let val: Rational = parse_rational(val).or_else(|e| err(l, e.to_string()))?;
        let slot = if key == "y" {
            p.edge_count()
        } else {
            let e = parse_edge(key, p.m(), p.n())
                .map_or_else(|| err(l, format!("unknown edge `{key}`")), Ok)?;
            p.edge_id(e)
        };
        if seen[slot] {
            return err(l, format!("`{key}` given twice"));
        }
        seen[slot] = true;
        if slot == p.edge_count() {
            pt.y = val;
        } else {
            pt.x[slot] = val;
        }
    }
    Ok(pt)
}

/// Nonzero edge values in edge order, then y.
pub fn write_point(p: &QProblem, pt: &QPoint) -> String {
    let mut s = String::new();
    for (e, v) in pt.x.iter().enumerate() {
        if *v != Rational::default() {
            let _ = writeln!(s, "{}={}", p.format_edge(e), format_rational(v));
        }
    }
    let _ = writeln!(s, "y={}", format_rational(&pt.y));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmatch_core::rational::ratio;

    #[test]
    fn problem_roundtrip() {
        let text = "# K32\nbipartite 3 2\nspecial u1 w1 u2 w2\nb u3=2\ncap e(u3,w1)=2\n";
        let f = parse_problem(text).unwrap();
        assert_eq!(f.b.as_ref().unwrap()[2], 2);
        assert_eq!(f.cap.as_ref().unwrap()[4], 2);
        assert_eq!(parse_problem(&write_problem(&f)).unwrap(), f);
    }

    #[test]
    fn problem_errors_carry_lines() {
        let e = parse_problem("bipartite 2 2\nspecial u1 w1 u1 w2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_problem("bipartite 2 2\n\nspecial u1 w1 u2 w2\nb u9=1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_problem("bipartite 2\n").is_err());
        assert!(parse_problem("").is_err());
    }

    #[test]
    fn point_roundtrip() {
        let p = QProblem::standard(3, 2).unwrap();
        let pt = parse_point(&p, "e(u1,w1)=1/2\ne(w2,u3)=2/4\ny=1/2\n").unwrap();
        assert_eq!(pt.x[0], ratio(1, 2));
        assert_eq!(pt.x[5], ratio(1, 2));
        assert_eq!(parse_point(&p, &write_point(&p, &pt)).unwrap(), pt);
    }

    #[test]
    fn point_errors() {
        let p = QProblem::standard(2, 2).unwrap();
        let e = parse_point(&p, "e(u1,w1)=1\ny=1/0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_point(&p, "e(u1,u2)=1\n").is_err());
        assert!(parse_point(&p, "y=1\ny=0\n").is_err());
        assert!(parse_point(&p, "e(u3,w1)=1\n").is_err());
    }
}
