use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{enumerate_matchings, EdgeId, GeneralGraph, Matching, NodeId, NodeSet};
use crate::rational::{one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    U,
    W,
}

/// Edge of K_{m,n} given by zero-based side indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiEdge {
    pub u: usize,
    pub w: usize,
}

impl BiEdge {
    pub fn new(u: usize, w: usize) -> Self {
        BiEdge { u, w }
    }
}

/// Enumeration and conversion guards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum edge count of a graph whose matchings are enumerated.
    pub max_edges: usize,
    /// Maximum ambient dimension for vertex enumeration.
    pub max_dim: usize,
    /// Maximum number of inequality rows fed to vertex enumeration.
    pub max_rows: usize,
    /// Maximum size of the box searched when enumerating b-matchings.
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 24,
            max_dim: 12,
            max_rows: 4096,
            max_points: 1 << 20,
        }
    }
}

/// K_{m,n} with two node-disjoint distinguished edges e1 = {u1,w1}, e2 = {u2,w2}.
///
/// Node `i < m` is u_{i+1}, node `m + j` is w_{j+1}; edge {u_i, w_j} has id `i*n + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QProblem {
    m: usize,
    n: usize,
    e1: BiEdge,
    e2: BiEdge,
    graph: GeneralGraph,
}

impl QProblem {
    pub fn new(m: usize, n: usize, e1: BiEdge, e2: BiEdge) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidInstance(format!(
                "K_{{{m},{n}}} needs at least two nodes per side"
            )));
        }
        for e in [e1, e2] {
            if e.u >= m || e.w >= n {
                return Err(Error::InvalidInstance(format!(
                    "special edge (u{},w{}) outside K_{{{m},{n}}}",
                    e.u + 1,
                    e.w + 1
                )));
            }
        }
        if e1.u == e2.u || e1.w == e2.w {
            return Err(Error::InvalidInstance(
                "special edges must be node-disjoint".into(),
            ));
        }
        let labels = (1..=m)
            .map(|i| format!("u{i}"))
            .chain((1..=n).map(|j| format!("w{j}")))
            .collect();
        let edges = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j)));
        let graph = GeneralGraph::new(labels, edges)?;
        Ok(QProblem {
            m,
            n,
            e1,
            e2,
            graph,
        })
    }

    /// K_{m,n} with e1 = {u1,w1}, e2 = {u2,w2}.
    pub fn standard(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, BiEdge::new(0, 0), BiEdge::new(1, 1))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &GeneralGraph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.m * self.n
    }

    pub fn node_count(&self) -> usize {
        self.m + self.n
    }

    pub fn u_node(&self, i: usize) -> NodeId {
        i
    }

    pub fn w_node(&self, j: usize) -> NodeId {
        self.m + j
    }

    pub fn side(&self, v: NodeId) -> Side {
        if v < self.m {
            Side::U
        } else {
            Side::W
        }
    }

    pub fn edge_id(&self, e: BiEdge) -> EdgeId {
        e.u * self.n + e.w
    }

    pub fn bi_edge(&self, e: EdgeId) -> BiEdge {
        BiEdge::new(e / self.n, e % self.n)
    }

    pub fn special_bi_edges(&self) -> (BiEdge, BiEdge) {
        (self.e1, self.e2)
    }

    pub fn e1(&self) -> EdgeId {
        self.edge_id(self.e1)
    }

    pub fn e2(&self) -> EdgeId {
        self.edge_id(self.e2)
    }

    /// Node ids of u1, u2, w1, w2 in that order.
    pub fn special_nodes(&self) -> [NodeId; 4] {
        [
            self.u_node(self.e1.u),
            self.u_node(self.e2.u),
            self.w_node(self.e1.w),
            self.w_node(self.e2.w),
        ]
    }

    pub fn is_special(&self, v: NodeId) -> bool {
        self.special_nodes().contains(&v)
    }

    pub fn label(&self, v: NodeId) -> &str {
        self.graph.label(v)
    }

    /// Renders S with special nodes first (u1, u2, w1, w2), then the rest by index.
    pub fn format_set(&self, s: &NodeSet) -> String {
        let special = self.special_nodes();
        let mut names: Vec<&str> = special
            .iter()
            .filter(|v| s.contains(v))
            .map(|&v| self.label(v))
            .collect();
        names.extend(
            s.iter()
                .filter(|v| !special.contains(v))
                .map(|&v| self.label(v)),
        );
        format!("{{{}}}", names.join(","))
    }

    pub fn format_edge(&self, e: EdgeId) -> String {
        let b = self.bi_edge(e);
        format!("e(u{},w{})", b.u + 1, b.w + 1)
    }
}

/// A point (x, y) with x indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub x: Vec<Rational>,
    pub y: Rational,
}

pub type BPoint = QPoint;

impl QPoint {
    pub fn zero(edges: usize) -> Self {
        QPoint {
            x: vec![zero(); edges],
            y: zero(),
        }
    }

    pub fn from_matching(edges: usize, m: &Matching, y: bool) -> Self {
        let mut pt = Self::zero(edges);
        for &e in m.edges() {
            pt.x[e] = one();
        }
        if y {
            pt.y = one();
        }
        pt
    }

    /// Coordinates as a flat vector (x first, y last).
    pub fn coords(&self) -> Vec<Rational> {
        let mut v = self.x.clone();
        v.push(self.y.clone());
        v
    }

    pub fn from_coords(mut v: Vec<Rational>) -> Self {
        let y = v.pop().expect("at least the y coordinate");
        QPoint { x: v, y }
    }

    pub fn is_integral(&self) -> bool {
        self.x
            .iter()
            .chain(std::iter::once(&self.y))
            .all(crate::rational::is_integral)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Exact,
    Down,
    Up,
    PerfectExact,
    PerfectDown,
    PerfectUp,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Exact,
        Variant::Down,
        Variant::Up,
        Variant::PerfectExact,
        Variant::PerfectDown,
        Variant::PerfectUp,
    ];

    pub fn is_perfect(self) -> bool {
        matches!(
            self,
            Variant::PerfectExact | Variant::PerfectDown | Variant::PerfectUp
        )
    }

    /// The non-perfect variant with the same y coupling.
    pub fn coupling(self) -> Variant {
        match self {
            Variant::Exact | Variant::PerfectExact => Variant::Exact,
            Variant::Down | Variant::PerfectDown => Variant::Down,
            Variant::Up | Variant::PerfectUp => Variant::Up,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Exact => "exact",
            Variant::Down => "down",
            Variant::Up => "up",
            Variant::PerfectExact => "perfect_exact",
            Variant::PerfectDown => "perfect_down",
            Variant::PerfectUp => "perfect_up",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant `{s}`"))
    }
}

/// 1 iff both e1 and e2 are in `m`.
pub fn y_of(m: &Matching, p: &QProblem) -> bool {
    m.contains(p.e1()) && m.contains(p.e2())
}

/// The 0/1 vertices of the chosen polytope as (matching, y) pairs.
pub fn vertex_pairs(
    p: &QProblem,
    variant: Variant,
    limits: &Limits,
) -> Result<Vec<(Matching, bool)>> {
    if variant.is_perfect() && p.m() != p.n() {
        return Err(Error::Precondition(format!(
            "perfect variants need m = n, got K_{{{},{}}}",
            p.m(),
            p.n()
        )));
    }
    let mut out = Vec::new();
    for m in enumerate_matchings(p.graph(), limits.max_edges)? {
        if variant.is_perfect() && !m.is_perfect(p.graph()) {
            continue;
        }
        let forced = y_of(&m, p);
        let ys: &[bool] = match (variant.coupling(), forced) {
            (Variant::Exact, f) => {
                if f {
                    &[true]
                } else {
                    &[false]
                }
            }
            (Variant::Down, true) => &[false, true],
            (Variant::Down, false) => &[false],
            (_, true) => &[true],
            (_, false) => &[false, true],
        };
        for &y in ys {
            out.push((m.clone(), y));
        }
    }
    Ok(out)
}

pub fn vertex_set(p: &QProblem, variant: Variant, limits: &Limits) -> Result<Vec<QPoint>> {
    Ok(vertex_pairs(p, variant, limits)?
        .iter()
        .map(|(m, y)| QPoint::from_matching(p.edge_count(), m, *y))
        .collect())
}

/// Whether (M, y) satisfies the y-rule of `variant`.
pub fn is_vertex_of(p: &QProblem, variant: Variant, m: &Matching, y: bool) -> bool {
    if variant.is_perfect() && !m.is_perfect(p.graph()) {
        return false;
    }
    let forced = y_of(m, p);
    match variant.coupling() {
        Variant::Exact => y == forced,
        Variant::Down => !y || forced,
        _ => y || !forced,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub matching: Matching,
    pub y: bool,
    pub weight: Rational,
}

/// Positive multipliers summing to one over (matching, y) vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConvexCombination {
    pub terms: Vec<Term>,
}

impl ConvexCombination {
    pub fn point(&self, edges: usize) -> QPoint {
        let mut pt = QPoint::zero(edges);
        for t in &self.terms {
            for &e in t.matching.edges() {
                pt.x[e] += &t.weight;
            }
            if t.y {
                pt.y += &t.weight;
            }
        }
        pt
    }

    /// Checks positivity, unit sum, the target point, and the vertex rule of `variant`.
    pub fn validate(&self, p: &QProblem, target: &QPoint, variant: Variant) -> Result<()> {
        let mut total = zero();
        for t in &self.terms {
            if t.weight <= zero() {
                return Err(Error::Internal("non-positive multiplier".into()));
            }
            Matching::new(p.graph(), t.matching.edges().iter().copied())?;
            if !is_vertex_of(p, variant, &t.matching, t.y) {
                return Err(Error::Internal(format!(
                    "term {} with y={} is not a {variant} vertex",
                    t.matching,
                    u8::from(t.y)
                )));
            }
            total += &t.weight;
        }
        if total != one() {
            return Err(Error::Internal(format!("multipliers sum to {total}")));
        }
        if &self.point(p.edge_count()) != target {
            return Err(Error::Internal(
                "combination does not reproduce the point".into(),
            ));
        }
        Ok(())
    }

    /// Merges equal (matching, y) terms and sorts them.
    pub fn normalized(&self) -> Self {
        let mut map: std::collections::BTreeMap<(Matching, bool), Rational> = Default::default();
        for t in &self.terms {
            *map.entry((t.matching.clone(), t.y)).or_insert_with(zero) += &t.weight;
        }
        ConvexCombination {
            terms: map
                .into_iter()
                .map(|((matching, y), weight)| Term {
                    matching,
                    y,
                    weight,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k22_layout() {
        let p = QProblem::standard(2, 2).unwrap();
        assert_eq!(p.e1(), 0);
        assert_eq!(p.e2(), 3);
        assert_eq!(p.special_nodes(), [0, 1, 2, 3]);
        assert_eq!(p.graph().endpoints(p.edge_id(BiEdge::new(1, 0))), (1, 2));
    }

    #[test]
    fn rejects_bad_specials() {
        assert!(QProblem::new(2, 2, BiEdge::new(0, 0), BiEdge::new(0, 1)).is_err());
        assert!(QProblem::new(2, 2, BiEdge::new(0, 0), BiEdge::new(1, 2)).is_err());
        assert!(QProblem::new(1, 2, BiEdge::new(0, 0), BiEdge::new(0, 1)).is_err());
    }

    #[test]
    fn y_of_examples() {
        let p = QProblem::standard(2, 2).unwrap();
        let g = p.graph();
        assert!(y_of(&Matching::new(g, [p.e1(), p.e2()]).unwrap(), &p));
        assert!(!y_of(&Matching::new(g, [p.e1()]).unwrap(), &p));
        assert!(!y_of(&Matching::empty(), &p));
    }

    #[test]
    fn k22_vertex_counts() {
        let p = QProblem::standard(2, 2).unwrap();
        let l = Limits::default();
        assert_eq!(vertex_set(&p, Variant::Exact, &l).unwrap().len(), 7);
        assert_eq!(vertex_set(&p, Variant::Down, &l).unwrap().len(), 8);
        assert_eq!(vertex_set(&p, Variant::Up, &l).unwrap().len(), 13);
        assert_eq!(vertex_set(&p, Variant::PerfectExact, &l).unwrap().len(), 2);
    }

    #[test]
    fn perfect_needs_square() {
        let p = QProblem::standard(3, 2).unwrap();
        assert!(vertex_set(&p, Variant::PerfectExact, &Limits::default()).is_err());
    }

    #[test]
    fn format_set_puts_specials_first() {
        let p = QProblem::standard(3, 2).unwrap();
        let s: NodeSet = [2, 3, 4].into_iter().collect();
        assert_eq!(p.format_set(&s), "{w1,w2,u3}");
    }
}
