//! Inequality families of the one-term matching polytopes and their b-matching
//! generalizations, plus membership predicates for the index families.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GeneralGraph, NodeId, NodeSet};
use crate::problem::{QPoint, QProblem, Side, Variant};
use crate::rational::{int, one, ratio, zero, Fraction, Rational};

/// Everything the inequality builders need to know about an instance.
pub trait Host {
    fn graph(&self) -> &GeneralGraph;
    fn e1(&self) -> EdgeId;
    fn e2(&self) -> EdgeId;
    fn side(&self, v: NodeId) -> Side;

    fn b(&self, _v: NodeId) -> i64 {
        1
    }

    fn capacity(&self, _e: EdgeId) -> Option<i64> {
        None
    }

    /// u1, u2, w1, w2.
    fn special_nodes(&self) -> [NodeId; 4] {
        let g = self.graph();
        let split = |e: EdgeId| {
            let (a, b) = g.endpoints(e);
            if self.side(a) == Side::U {
                (a, b)
            } else {
                (b, a)
            }
        };
        let (u1, w1) = split(self.e1());
        let (u2, w2) = split(self.e2());
        [u1, u2, w1, w2]
    }

    fn b_of(&self, s: &NodeSet) -> i64 {
        s.iter().map(|&v| self.b(v)).sum()
    }
}

impl Host for QProblem {
    fn graph(&self) -> &GeneralGraph {
        QProblem::graph(self)
    }
    fn e1(&self) -> EdgeId {
        QProblem::e1(self)
    }
    fn e2(&self) -> EdgeId {
        QProblem::e2(self)
    }
    fn side(&self, v: NodeId) -> Side {
        QProblem::side(self, v)
    }
    fn special_nodes(&self) -> [NodeId; 4] {
        QProblem::special_nodes(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sense {
    Le,
    Eq,
}

/// The four redundant forms valid for uncapacitated b-matchings on sets S
/// with e_i outside δ(S) and e_j in δ(S).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MixedForm {
    /// x(E[S]) − x_{e_i} + y ≤ ⌊b(S)/2⌋
    MinusI,
    /// x(E[S]) + x_{e_j} − y ≤ ⌊(b(S)+1)/2⌋
    PlusJ,
    /// x(E[S]) + y ≤ ⌊(b(S)+1)/2⌋
    PlainY,
    /// x(E[S]) + x_{e1} + x_{e2} − y ≤ ⌊(b(S)+2)/2⌋
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyInstance {
    NonNeg(EdgeId),
    Degree(NodeId),
    PerfectDegree(NodeId),
    YLower,
    YUpper,
    /// y − x_{e_i} ≤ 0, i ∈ {1,2}.
    StdLin(u8),
    Down(NodeSet),
    Up(NodeSet),
    Blossom(NodeSet),
    BDegree(NodeId),
    Capacity(EdgeId),
    BDown(NodeSet),
    BUp(NodeSet),
    CapBDown(NodeSet, BTreeSet<EdgeId>),
    CapBUp(NodeSet, BTreeSet<EdgeId>),
    /// x_{e1} + x_{e2} − y ≤ 1.
    UpPair,
    /// x(E[S]) + x_{e_i} − y/2 ≤ |S|/2 for even S with e_i ∈ δ(S).
    HalfUp(u8, NodeSet),
    /// Lemma-style redundant form; `u8` is the index i with e_i ∉ δ(S).
    Mixed(MixedForm, u8, NodeSet),
}

impl FamilyInstance {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyInstance::NonNeg(_) => "NONNEG",
            FamilyInstance::Degree(_) => "DEGREE",
            FamilyInstance::PerfectDegree(_) => "PERFECT_DEGREE",
            FamilyInstance::YLower => "Y_LOWER",
            FamilyInstance::YUpper => "Y_UPPER",
            FamilyInstance::StdLin(_) => "STDLIN",
            FamilyInstance::Down(_) => "DOWN",
            FamilyInstance::Up(_) => "UP",
            FamilyInstance::Blossom(_) => "BLOSSOM",
            FamilyInstance::BDegree(_) => "BDEGREE",
            FamilyInstance::Capacity(_) => "CAPACITY",
            FamilyInstance::BDown(_) => "BDOWN",
            FamilyInstance::BUp(_) => "BUP",
            FamilyInstance::CapBDown(..) => "CAPBDOWN",
            FamilyInstance::CapBUp(..) => "CAPBUP",
            FamilyInstance::UpPair => "UP_PAIR",
            FamilyInstance::HalfUp(..) => "HALF_UP",
            FamilyInstance::Mixed(..) => "MIXED",
        }
    }

    pub fn node_set(&self) -> Option<&NodeSet> {
        match self {
            FamilyInstance::Down(s)
            | FamilyInstance::Up(s)
            | FamilyInstance::Blossom(s)
            | FamilyInstance::BDown(s)
            | FamilyInstance::BUp(s)
            | FamilyInstance::CapBDown(s, _)
            | FamilyInstance::CapBUp(s, _)
            | FamilyInstance::HalfUp(_, s)
            | FamilyInstance::Mixed(_, _, s) => Some(s),
            _ => None,
        }
    }

    /// Short human-readable rendering against a bipartite instance.
    pub fn describe(&self, p: &QProblem) -> String {
        match self {
            FamilyInstance::NonNeg(e) | FamilyInstance::Capacity(e) => {
                format!("{} {}", self.name(), p.format_edge(*e))
            }
            FamilyInstance::Degree(v)
            | FamilyInstance::PerfectDegree(v)
            | FamilyInstance::BDegree(v) => {
                format!("{} v={}", self.name(), p.label(*v))
            }
            FamilyInstance::StdLin(i) => format!("{} i={i}", self.name()),
            FamilyInstance::HalfUp(i, s) => format!("{} i={i} S={}", self.name(), p.format_set(s)),
            FamilyInstance::Mixed(f, i, s) => {
                format!("{} {f:?} i={i} S={}", self.name(), p.format_set(s))
            }
            FamilyInstance::CapBDown(s, f) | FamilyInstance::CapBUp(s, f) => {
                let fs: Vec<_> = f.iter().map(|&e| p.format_edge(e)).collect();
                format!(
                    "{} S={} F={{{}}}",
                    self.name(),
                    p.format_set(s),
                    fs.join(",")
                )
            }
            _ => match self.node_set() {
                Some(s) => format!("{} S={}", self.name(), p.format_set(s)),
                None => self.name().to_string(),
            },
        }
    }
}

/// Σ xcoef·x + ycoef·y (sense) rhs, with only nonzero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearInequality {
    pub xcoef: BTreeMap<EdgeId, Rational>,
    pub ycoef: Rational,
    pub sense: Sense,
    pub rhs: Rational,
    pub tag: FamilyInstance,
}

impl LinearInequality {
    fn new(tag: FamilyInstance, sense: Sense, rhs: Rational) -> Self {
        LinearInequality {
            xcoef: BTreeMap::new(),
            ycoef: zero(),
            sense,
            rhs,
            tag,
        }
    }

    fn add_x(&mut self, e: EdgeId, c: Rational) {
        let entry = self.xcoef.entry(e).or_insert_with(zero);
        *entry += c;
        if entry.is_zero() {
            self.xcoef.remove(&e);
        }
    }

    fn add_xs(&mut self, edges: &[EdgeId], c: &Rational) {
        for &e in edges {
            self.add_x(e, c.clone());
        }
    }

    pub fn lhs(&self, pt: &QPoint) -> Rational {
        let mut v = &self.ycoef * &pt.y;
        for (&e, c) in &self.xcoef {
            v += c * &pt.x[e];
        }
        v
    }

    /// Dense row over `edges` x-coordinates followed by y.
    pub fn dense(&self, edges: usize) -> Vec<Rational> {
        let mut row = vec![zero(); edges + 1];
        for (&e, c) in &self.xcoef {
            row[e] = c.clone();
        }
        row[edges] = self.ycoef.clone();
        row
    }

    pub fn with_rhs(&self, rhs: Rational) -> Self {
        LinearInequality {
            rhs,
            ..self.clone()
        }
    }

    /// Human-readable form with edges named by `g`'s labels.
    pub fn render(&self, g: &GeneralGraph) -> String {
        let mut parts = Vec::new();
        let term = |c: &Rational, name: String| {
            if c == &one() {
                format!("+ {name}")
            } else if c == &(-one()) {
                format!("- {name}")
            } else if c.is_negative() {
                format!("- {} {name}", Fraction(&-c))
            } else {
                format!("+ {} {name}", Fraction(c))
            }
        };
        for (&e, c) in &self.xcoef {
            let (a, b) = g.endpoints(e);
            parts.push(term(c, format!("x[{},{}]", g.label(a), g.label(b))));
        }
        if !self.ycoef.is_zero() {
            parts.push(term(&self.ycoef, "y".into()));
        }
        let mut s = parts.join(" ");
        if let Some(rest) = s.strip_prefix("+ ") {
            s = rest.to_string();
        }
        if s.is_empty() {
            s = "0".into();
        }
        let op = match self.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
        };
        format!("{s} {op} {}", Fraction(&self.rhs))
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .xcoef
            .iter()
            .map(|(e, c)| format!("{}*x{e}", Fraction(c)))
            .collect();
        if !self.ycoef.is_zero() {
            parts.push(format!("{}*y", Fraction(&self.ycoef)));
        }
        let op = match self.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
        };
        write!(
            f,
            "{} [{}] {op} {}",
            self.tag.name(),
            parts.join(" + "),
            Fraction(&self.rhs)
        )
    }
}

/// lhs − rhs for `≤` rows (positive means violated), |lhs − rhs| for equations.
pub fn violation(ineq: &LinearInequality, pt: &QPoint) -> Rational {
    let d = ineq.lhs(pt) - &ineq.rhs;
    match ineq.sense {
        Sense::Le => d,
        Sense::Eq => d.abs(),
    }
}

fn special_meet<H: Host + ?Sized>(h: &H, s: &NodeSet) -> NodeSet {
    h.special_nodes()
        .into_iter()
        .filter(|v| s.contains(v))
        .collect()
}

fn set_of(v: &[NodeId]) -> NodeSet {
    v.iter().copied().collect()
}

fn side_counts<H: Host + ?Sized>(h: &H, s: &NodeSet) -> (usize, usize) {
    let u = s.iter().filter(|&&v| h.side(v) == Side::U).count();
    (u, s.len() - u)
}

/// S ∈ D̃: |S| odd and S ∩ Vspecial ∈ {{u1,u2},{w1,w2}}.
pub fn in_d_tilde<H: Host + ?Sized>(h: &H, s: &NodeSet) -> bool {
    let [u1, u2, w1, w2] = h.special_nodes();
    let meet = special_meet(h, s);
    s.len() % 2 == 1 && (meet == set_of(&[u1, u2]) || meet == set_of(&[w1, w2]))
}

/// S ∈ D: S ∈ D̃ and the side with both special nodes has exactly one more node.
pub fn in_d<H: Host + ?Sized>(h: &H, s: &NodeSet) -> bool {
    if !in_d_tilde(h, s) {
        return false;
    }
    let [u1, ..] = h.special_nodes();
    let (cu, cw) = side_counts(h, s);
    if s.contains(&u1) {
        cu == cw + 1
    } else {
        cw == cu + 1
    }
}

/// S ∈ Ũ: |S| even and S ∩ Vspecial ∈ {{u1,w2},{u2,w1}}.
pub fn in_u_tilde<H: Host + ?Sized>(h: &H, s: &NodeSet) -> bool {
    let [u1, u2, w1, w2] = h.special_nodes();
    let meet = special_meet(h, s);
    s.len().is_multiple_of(2) && (meet == set_of(&[u1, w2]) || meet == set_of(&[u2, w1]))
}

/// S ∈ U: S ∈ Ũ with |S ∩ U| = |S ∩ W|.
pub fn in_u<H: Host + ?Sized>(h: &H, s: &NodeSet) -> bool {
    let (cu, cw) = side_counts(h, s);
    in_u_tilde(h, s) && cu == cw
}

fn crosses(g: &GeneralGraph, e: EdgeId, s: &NodeSet) -> bool {
    let (a, b) = g.endpoints(e);
    s.contains(&a) != s.contains(&b)
}

/// S ∈ 𝒮: both special edges cross S.
pub fn in_s_cut<H: Host + ?Sized>(h: &H, s: &NodeSet) -> bool {
    crosses(h.graph(), h.e1(), s) && crosses(h.graph(), h.e2(), s)
}

fn check_nodes<H: Host + ?Sized>(h: &H, s: &NodeSet) -> Result<()> {
    match s.iter().find(|&&v| v >= h.graph().node_count()) {
        Some(v) => Err(Error::InvalidFamily(format!(
            "node {v} is not in the graph"
        ))),
        None => Ok(()),
    }
}

fn check_edge<H: Host + ?Sized>(h: &H, e: EdgeId) -> Result<()> {
    if e >= h.graph().edge_count() {
        return Err(Error::EdgeNotInGraph(e));
    }
    Ok(())
}

fn special_index(i: u8) -> Result<()> {
    if i == 1 || i == 2 {
        Ok(())
    } else {
        Err(Error::InvalidFamily(format!(
            "special edge index {i} is not 1 or 2"
        )))
    }
}

fn floor_div2(v: i64) -> Rational {
    int(v.div_euclid(2))
}

/// Coefficients of `inst` on host `h`. Rejects instances whose index data do
/// not satisfy the minimal membership rule of their family.
pub fn build<H: Host + ?Sized>(inst: &FamilyInstance, h: &H) -> Result<LinearInequality> {
    use FamilyInstance as F;
    let g = h.graph();
    let (e1, e2) = (h.e1(), h.e2());
    let ei = |i: u8| if i == 1 { e1 } else { e2 };
    let mut ineq;
    match inst {
        F::NonNeg(e) => {
            check_edge(h, *e)?;
            ineq = LinearInequality::new(inst.clone(), Sense::Le, zero());
            ineq.add_x(*e, -one());
        }
        F::Degree(v) | F::PerfectDegree(v) | F::BDegree(v) => {
            if *v >= g.node_count() {
                return Err(Error::InvalidFamily(format!(
                    "node {v} is not in the graph"
                )));
            }
            let (sense, rhs) = match inst {
                F::Degree(_) => (Sense::Le, one()),
                F::PerfectDegree(_) => (Sense::Eq, one()),
                _ => (Sense::Le, int(h.b(*v))),
            };
            ineq = LinearInequality::new(inst.clone(), sense, rhs);
            ineq.add_xs(g.incident(*v), &one());
        }
        F::YLower => {
            ineq = LinearInequality::new(inst.clone(), Sense::Le, zero());
            ineq.ycoef = -one();
        }
        F::YUpper => {
            ineq = LinearInequality::new(inst.clone(), Sense::Le, one());
            ineq.ycoef = one();
        }
        F::StdLin(i) => {
            special_index(*i)?;
            ineq = LinearInequality::new(inst.clone(), Sense::Le, zero());
            ineq.ycoef = one();
            ineq.add_x(ei(*i), -one());
        }
        F::Down(s) => {
            check_nodes(h, s)?;
            if !in_d_tilde(h, s) {
                return Err(Error::InvalidFamily(format!(
                    "Down({}) needs |S| odd and S meeting the special nodes in exactly {{u1,u2}} or {{w1,w2}}",
                    g.format_nodes(s)
                )));
            }
            ineq = LinearInequality::new(inst.clone(), Sense::Le, ratio(s.len() as i64 - 1, 2));
            ineq.add_xs(&g.induced_edges(s), &one());
            ineq.ycoef = one();
        }
        F::Up(s) => {
            check_nodes(h, s)?;
            if !in_u_tilde(h, s) {
                return Err(Error::InvalidFamily(format!(
                    "Up({}) needs |S| even and S meeting the special nodes in exactly {{u1,w2}} or {{u2,w1}}",
                    g.format_nodes(s)
                )));
            }
            ineq = LinearInequality::new(inst.clone(), Sense::Le, ratio(s.len() as i64, 2));
            ineq.add_xs(&g.induced_edges(s), &one());
            ineq.add_x(e1, one());
            ineq.add_x(e2, one());
            ineq.ycoef = -one();
        }
        F::Blossom(s) => {
            check_nodes(h, s)?;
            return blossom_inequality(g, s);
        }
        F::Capacity(e) => {
            check_edge(h, *e)?;
            let c = h.capacity(*e).ok_or_else(|| {
                Error::InvalidFamily("Capacity needs a capacitated instance".into())
            })?;
            ineq = LinearInequality::new(inst.clone(), Sense::Le, int(c));
            ineq.add_x(*e, one());
        }
        F::BDown(s) | F::BUp(s) | F::CapBDown(s, _) | F::CapBUp(s, _) => {
            check_nodes(h, s)?;
            if !in_s_cut(h, s) {
                return Err(Error::InvalidFamily(format!(
                    "{}({}) needs both special edges in the cut of S",
                    inst.name(),
                    g.format_nodes(s)
                )));
            }
            let mut total = h.b_of(s);
            let empty = BTreeSet::new();
            let f = match inst {
                F::CapBDown(_, f) | F::CapBUp(_, f) => f,
                _ => &empty,
            };
            for &e in f {
                check_edge(h, e)?;
                if e == e1 || e == e2 || !crosses(g, e, s) {
                    return Err(Error::InvalidFamily(format!(
                        "F must lie in the cut of S without the special edges; edge {} does not",
                        g.format_edge(e)
                    )));
                }
                total += h
                    .capacity(e)
                    .ok_or_else(|| Error::InvalidFamily("F needs edge capacities".into()))?;
            }
            let down = matches!(inst, F::BDown(_) | F::CapBDown(..));
            let rhs = if down {
                floor_div2(total)
            } else {
                floor_div2(total + 1)
            };
            ineq = LinearInequality::new(inst.clone(), Sense::Le, rhs);
            ineq.add_xs(&g.induced_edges(s), &one());
            for &e in f {
                ineq.add_x(e, one());
            }
            if down {
                ineq.ycoef = one();
            } else {
                ineq.add_x(e1, one());
                ineq.add_x(e2, one());
                ineq.ycoef = -one();
            }
        }
        F::UpPair => {
            ineq = LinearInequality::new(inst.clone(), Sense::Le, one());
            ineq.add_x(e1, one());
            ineq.add_x(e2, one());
            ineq.ycoef = -one();
        }
        F::HalfUp(i, s) => {
            special_index(*i)?;
            check_nodes(h, s)?;
            if s.len() % 2 != 0 || !crosses(g, ei(*i), s) {
                return Err(Error::InvalidFamily(format!(
                    "HalfUp needs |S| even and e{i} in the cut of {}",
                    g.format_nodes(s)
                )));
            }
            ineq = LinearInequality::new(inst.clone(), Sense::Le, ratio(s.len() as i64, 2));
            ineq.add_xs(&g.induced_edges(s), &one());
            ineq.add_x(ei(*i), one());
            ineq.ycoef = ratio(-1, 2);
        }
        F::Mixed(form, i, s) => {
            special_index(*i)?;
            check_nodes(h, s)?;
            let j = 3 - *i;
            if crosses(g, ei(*i), s) || !crosses(g, ei(j), s) {
                return Err(Error::InvalidFamily(format!(
                    "Mixed needs e{i} outside and e{j} inside the cut of {}",
                    g.format_nodes(s)
                )));
            }
            let b = h.b_of(s);
            let rhs = match form {
                MixedForm::MinusI => floor_div2(b),
                MixedForm::PlusJ | MixedForm::PlainY => floor_div2(b + 1),
                MixedForm::Both => floor_div2(b + 2),
            };
            ineq = LinearInequality::new(inst.clone(), Sense::Le, rhs);
            ineq.add_xs(&g.induced_edges(s), &one());
            match form {
                MixedForm::MinusI => {
                    ineq.add_x(ei(*i), -one());
                    ineq.ycoef = one();
                }
                MixedForm::PlusJ => {
                    ineq.add_x(ei(j), one());
                    ineq.ycoef = -one();
                }
                MixedForm::PlainY => ineq.ycoef = one(),
                MixedForm::Both => {
                    ineq.add_x(e1, one());
                    ineq.add_x(e2, one());
                    ineq.ycoef = -one();
                }
            }
        }
    }
    Ok(ineq)
}

/// x(E[S]) ≤ (|S|−1)/2 on an arbitrary graph.
pub fn blossom_inequality(g: &GeneralGraph, s: &NodeSet) -> Result<LinearInequality> {
    if s.len().is_multiple_of(2) {
        return Err(Error::InvalidFamily(format!(
            "Blossom({}) needs |S| odd",
            g.format_nodes(s)
        )));
    }
    let tag = FamilyInstance::Blossom(s.clone());
    let mut ineq = LinearInequality::new(tag, Sense::Le, ratio(s.len() as i64 - 1, 2));
    ineq.add_xs(&g.induced_edges(s), &one());
    Ok(ineq)
}

/// x ≥ 0 and x(δ(v)) ≤ 1 on an arbitrary graph.
pub fn matching_base_rows(g: &GeneralGraph) -> Vec<LinearInequality> {
    let mut rows = Vec::new();
    for e in 0..g.edge_count() {
        let mut r = LinearInequality::new(FamilyInstance::NonNeg(e), Sense::Le, zero());
        r.add_x(e, -one());
        rows.push(r);
    }
    for v in 0..g.node_count() {
        let mut r = LinearInequality::new(FamilyInstance::Degree(v), Sense::Le, one());
        r.add_xs(g.incident(v), &one());
        rows.push(r);
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    D,
    U,
    DTilde,
    UTilde,
    BlossomOdd,
}

/// All node subsets of size 1..=max_size in lexicographic order of their
/// sorted elements.
pub fn subsets_up_to(nodes: usize, max_size: usize) -> Vec<NodeSet> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, nodes: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<NodeSet>) {
        for v in start..nodes {
            cur.push(v);
            out.push(cur.iter().copied().collect());
            if cur.len() < max {
                rec(v + 1, nodes, max, cur, out);
            }
            cur.pop();
        }
    }
    if max_size > 0 {
        rec(0, nodes, max_size, &mut cur, &mut out);
    }
    out
}

pub fn enumerate_family<H: Host + ?Sized>(
    h: &H,
    family: Family,
    max_size: usize,
) -> Vec<FamilyInstance> {
    let n = h.graph().node_count();
    subsets_up_to(n, max_size.min(n))
        .into_iter()
        .filter_map(|s| {
            let keep = match family {
                Family::D => in_d(h, &s),
                Family::U => in_u(h, &s),
                Family::DTilde => in_d_tilde(h, &s),
                Family::UTilde => in_u_tilde(h, &s),
                Family::BlossomOdd => s.len() % 2 == 1,
            };
            keep.then_some(match family {
                Family::D | Family::DTilde => FamilyInstance::Down(s),
                Family::U | Family::UTilde => FamilyInstance::Up(s),
                Family::BlossomOdd => FamilyInstance::Blossom(s),
            })
        })
        .collect()
}

/// Whether some Up(S), S ∈ U, is tight or violated at `pt`.
pub fn up_premise(p: &QProblem, pt: &QPoint) -> bool {
    enumerate_family(p, Family::U, p.node_count())
        .iter()
        .any(|inst| {
            let ineq = build(inst, p).expect("enumerated instances are valid");
            violation(&ineq, pt) >= zero()
        })
}

/// The consequence inequalities used to show the up gadget vector is a
/// matching-polytope point: the pair bound, the half-up family, the Ũ \ U
/// up inequalities, and y ≤ x_{e_i} when some Up(S), S ∈ U, is tight or violated.
pub fn derived_up_inequalities(p: &QProblem, pt: &QPoint) -> Vec<(LinearInequality, Rational)> {
    let mut insts = vec![FamilyInstance::UpPair];
    let g = p.graph();
    for s in subsets_up_to(p.node_count(), p.node_count()) {
        if s.len() % 2 != 0 {
            continue;
        }
        for i in [1u8, 2] {
            let e = if i == 1 { p.e1() } else { p.e2() };
            if crosses(g, e, &s) {
                insts.push(FamilyInstance::HalfUp(i, s.clone()));
            }
        }
        if in_u_tilde(p, &s) && !in_u(p, &s) {
            insts.push(FamilyInstance::Up(s));
        }
    }
    if up_premise(p, pt) {
        insts.push(FamilyInstance::StdLin(1));
        insts.push(FamilyInstance::StdLin(2));
    }
    insts
        .into_iter()
        .map(|inst| {
            let ineq = build(&inst, p).expect("constructed instances are valid");
            let v = violation(&ineq, pt);
            (ineq, v)
        })
        .collect()
}

/// Rows (1)–(4) in canonical order: NonNeg by edge, Degree by node, YLower,
/// YUpper, StdLin(1), StdLin(2).
pub fn base_instances(p: &QProblem, perfect: bool, with_stdlin: bool) -> Vec<FamilyInstance> {
    let mut v: Vec<_> = (0..p.edge_count()).map(FamilyInstance::NonNeg).collect();
    v.extend((0..p.node_count()).map(|n| {
        if perfect {
            FamilyInstance::PerfectDegree(n)
        } else {
            FamilyInstance::Degree(n)
        }
    }));
    v.push(FamilyInstance::YLower);
    v.push(FamilyInstance::YUpper);
    if with_stdlin {
        v.push(FamilyInstance::StdLin(1));
        v.push(FamilyInstance::StdLin(2));
    }
    v
}

/// Family instances of the complete description of `variant`.
pub fn system_instances(p: &QProblem, variant: Variant) -> Vec<FamilyInstance> {
    let coupling = variant.coupling();
    let mut v = base_instances(p, variant.is_perfect(), coupling != Variant::Up);
    if coupling != Variant::Up {
        v.extend(enumerate_family(p, Family::D, p.node_count()));
    }
    if coupling != Variant::Down {
        v.extend(enumerate_family(p, Family::U, p.node_count()));
    }
    v
}

pub fn system(p: &QProblem, variant: Variant) -> Vec<LinearInequality> {
    system_instances(p, variant)
        .iter()
        .map(|inst| build(inst, p).expect("system instances are valid"))
        .collect()
}

/// Most violated row (ties to the earliest) among rows with positive violation.
pub fn most_violated<'a>(
    rows: impl IntoIterator<Item = &'a LinearInequality>,
    pt: &QPoint,
) -> Option<(&'a LinearInequality, Rational)> {
    let mut best: Option<(&LinearInequality, Rational)> = None;
    for r in rows {
        let v = violation(r, pt);
        if v > zero() && best.as_ref().is_none_or(|(_, b)| &v > b) {
            best = Some((r, v));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{vertex_set, Limits};

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn up_u1w2_coefficients() {
        let p = QProblem::standard(3, 3).unwrap();
        let s = set(&[0, 4]);
        let ineq = build(&FamilyInstance::Up(s), &p).unwrap();
        assert_eq!(ineq.rhs, one());
        assert_eq!(ineq.ycoef, -one());
        let keys: Vec<_> = ineq.xcoef.keys().copied().collect();
        assert_eq!(keys, vec![p.e1(), 1, p.e2()]);
    }

    #[test]
    fn down_k32_coefficients() {
        let p = QProblem::standard(3, 2).unwrap();
        let ineq = build(&FamilyInstance::Down(set(&[2, 3, 4])), &p).unwrap();
        assert_eq!(ineq.rhs, one());
        assert_eq!(ineq.ycoef, one());
        assert_eq!(ineq.xcoef.keys().copied().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(ineq.render(p.graph()), "x[u3,w1] + x[u3,w2] + y <= 1/1");
    }

    #[test]
    fn stdlin_shape() {
        let p = QProblem::standard(2, 2).unwrap();
        let ineq = build(&FamilyInstance::StdLin(1), &p).unwrap();
        assert_eq!(ineq.render(p.graph()), "- x[u1,w1] + y <= 0/1");
    }

    #[test]
    fn invalid_down_names_rule() {
        let p = QProblem::standard(2, 2).unwrap();
        let err = build(&FamilyInstance::Down(set(&[0, 2, 1])), &p).unwrap_err();
        assert!(err.to_string().contains("Down"));
    }

    #[test]
    fn family_sizes() {
        let k22 = QProblem::standard(2, 2).unwrap();
        assert!(enumerate_family(&k22, Family::D, 4).is_empty());
        assert_eq!(
            enumerate_family(&k22, Family::U, 4),
            vec![
                FamilyInstance::Up(set(&[0, 3])),
                FamilyInstance::Up(set(&[1, 2]))
            ]
        );
        let k32 = QProblem::standard(3, 2).unwrap();
        assert_eq!(
            enumerate_family(&k32, Family::D, 5),
            vec![FamilyInstance::Down(set(&[2, 3, 4]))]
        );
        let k33 = QProblem::standard(3, 3).unwrap();
        assert_eq!(enumerate_family(&k33, Family::D, 6).len(), 2);
        assert_eq!(enumerate_family(&k33, Family::U, 6).len(), 4);
    }

    #[test]
    fn violation_examples() {
        let p = QProblem::standard(2, 2).unwrap();
        let up = build(&FamilyInstance::Up(set(&[0, 3])), &p).unwrap();
        let mut pt = QPoint::zero(4);
        pt.x[p.e1()] = one();
        pt.x[p.e2()] = one();
        assert_eq!(violation(&up, &pt), one());

        let q = QProblem::standard(3, 2).unwrap();
        let down = build(&FamilyInstance::Down(set(&[2, 3, 4])), &q).unwrap();
        let mut pt = QPoint::zero(6);
        for e in [q.e1(), q.e2(), 4, 5] {
            pt.x[e] = ratio(1, 2);
        }
        pt.y = ratio(1, 2);
        assert_eq!(violation(&down, &pt), ratio(1, 2));
    }

    #[test]
    fn derived_examples() {
        let p = QProblem::standard(2, 2).unwrap();
        let mut pt = QPoint::zero(4);
        pt.x[p.e1()] = ratio(3, 4);
        pt.x[p.e2()] = ratio(3, 4);
        pt.y = ratio(3, 4);
        let d = derived_up_inequalities(&p, &pt);
        assert_eq!(d[0].0.tag, FamilyInstance::UpPair);
        assert_eq!(d[0].1, ratio(-1, 4));

        pt.y = zero();
        pt.x[p.e1()] = one();
        pt.x[p.e2()] = one();
        let d = derived_up_inequalities(&p, &pt);
        assert_eq!(d[0].1, one());
    }

    #[test]
    fn system_is_valid_on_k22_vertices() {
        let p = QProblem::standard(2, 2).unwrap();
        for variant in [Variant::Exact, Variant::Down, Variant::Up] {
            let rows = system(&p, variant);
            for v in vertex_set(&p, variant, &Limits::default()).unwrap() {
                assert!(rows.iter().all(|r| violation(r, &v) <= zero()), "{variant}");
            }
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = subsets_up_to(3, 3);
        let mut sorted = s.clone();
        sorted.sort();
        assert_eq!(s, sorted);
        assert_eq!(s.len(), 7);
    }
}
