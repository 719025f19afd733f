//! Uncapacitated and capacitated b-matchings with one quadratic term: the
//! parity families, exhaustive enumeration, the node-splitting and
//! 3-path-subdivision lifts, and desk-scale verification.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GeneralGraph, NodeId, NodeSet};
use crate::inequalities::{
    build, in_s_cut, subsets_up_to, FamilyInstance, Host, LinearInequality, MixedForm,
};
use crate::problem::{BPoint, Limits, QPoint, QProblem, Side};
use crate::rational::{int, one, zero, Rational};
use crate::verify::{
    completeness_of_rows, extreme_points, facet_of_row, validity_of_rows, CompletenessReport,
    FacetReport, ValidityReport,
};

/// Bipartite graph with degree bounds b and optional edge capacities c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatchingProblem {
    graph: GeneralGraph,
    sides: Vec<Side>,
    e1: EdgeId,
    e2: EdgeId,
    b: Vec<i64>,
    cap: Option<Vec<i64>>,
}

impl BMatchingProblem {
    pub fn new(
        graph: GeneralGraph,
        sides: Vec<Side>,
        e1: EdgeId,
        e2: EdgeId,
        b: Vec<i64>,
        cap: Option<Vec<i64>>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if sides.len() != graph.node_count() || b.len() != graph.node_count() {
            return bad("one side and one b value per node required".into());
        }
        for &(a, c) in graph.edges() {
            if sides[a] == sides[c] {
                return bad(format!(
                    "edge {{{},{}}} does not cross the bipartition",
                    graph.label(a),
                    graph.label(c)
                ));
            }
        }
        if e1 >= graph.edge_count() || e2 >= graph.edge_count() {
            return bad("special edge out of range".into());
        }
        let (a1, b1) = graph.endpoints(e1);
        let (a2, b2) = graph.endpoints(e2);
        if [a1, b1].iter().any(|v| *v == a2 || *v == b2) {
            return bad("e1 and e2 must be node-disjoint".into());
        }
        if let Some(v) = b.iter().position(|&x| x < 1) {
            return bad(format!(
                "b must be positive, b({}) = {}",
                graph.label(v),
                b[v]
            ));
        }
        // also needed with capacities: b = 2 on both ends of e1 leaves
        // x_e1 = x_e2 = 1, y = 0 uncut on K_{2,2}
        for (i, (x, y)) in [(a1, b1), (a2, b2)].into_iter().enumerate() {
            if b[x] != 1 && b[y] != 1 {
                return bad(format!("e{} needs an endpoint with b = 1", i + 1));
            }
        }
        match &cap {
            None => {}
            Some(c) => {
                if c.len() != graph.edge_count() {
                    return bad("one capacity per edge required".into());
                }
                if let Some(e) = c.iter().position(|&x| x < 1) {
                    return bad(format!(
                        "capacity of {} must be positive",
                        graph.format_edge(e)
                    ));
                }
                if c[e1] != 1 || c[e2] != 1 {
                    return bad("special edges need capacity 1".into());
                }
            }
        }
        Ok(BMatchingProblem {
            graph,
            sides,
            e1,
            e2,
            b,
            cap,
        })
    }

    pub fn from_qproblem(p: &QProblem, b: Vec<i64>, cap: Option<Vec<i64>>) -> Result<Self> {
        let sides = (0..p.node_count()).map(|v| p.side(v)).collect();
        Self::new(p.graph().clone(), sides, p.e1(), p.e2(), b, cap)
    }

    pub fn graph(&self) -> &GeneralGraph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn b_values(&self) -> &[i64] {
        &self.b
    }

    pub fn capacities(&self) -> Option<&[i64]> {
        self.cap.as_deref()
    }

    pub fn is_capacitated(&self) -> bool {
        self.cap.is_some()
    }

    /// Largest value x_e can take in an integer point.
    pub fn edge_bound(&self, e: EdgeId) -> i64 {
        let (a, c) = self.graph.endpoints(e);
        let mut ub = self.b[a].min(self.b[c]);
        if let Some(cap) = &self.cap {
            ub = ub.min(cap[e]);
        }
        ub
    }
}

impl Host for BMatchingProblem {
    fn graph(&self) -> &GeneralGraph {
        &self.graph
    }
    fn e1(&self) -> EdgeId {
        self.e1
    }
    fn e2(&self) -> EdgeId {
        self.e2
    }
    fn side(&self, v: NodeId) -> Side {
        self.sides[v]
    }
    fn b(&self, v: NodeId) -> i64 {
        self.b[v]
    }
    fn capacity(&self, e: EdgeId) -> Option<i64> {
        self.cap.as_ref().map(|c| c[e])
    }
}

/// All integer points: x within degree and capacity bounds, y = 1 iff x_{e1} = x_{e2} = 1.
pub fn enumerate_bmatchings(p: &BMatchingProblem, limits: &Limits) -> Result<Vec<BPoint>> {
    let ne = p.edge_count();
    let bounds: Vec<i64> = (0..ne).map(|e| p.edge_bound(e)).collect();
    let size = bounds
        .iter()
        .try_fold(1usize, |acc, &u| acc.checked_mul(u as usize + 1))
        .unwrap_or(usize::MAX);
    if size > limits.max_points {
        return Err(Error::TooLarge {
            what: "b-matching search box",
            size,
            limit: limits.max_points,
        });
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; ne];
    let mut residual = p.b.clone();
    fn rec(
        p: &BMatchingProblem,
        e: usize,
        bounds: &[i64],
        x: &mut Vec<i64>,
        residual: &mut Vec<i64>,
        out: &mut Vec<BPoint>,
    ) {
        if e == bounds.len() {
            let y = x[p.e1] == 1 && x[p.e2] == 1;
            out.push(QPoint {
                x: x.iter().map(|&v| int(v)).collect(),
                y: if y { one() } else { zero() },
            });
            return;
        }
        let (a, c) = p.graph.endpoints(e);
        let top = bounds[e].min(residual[a]).min(residual[c]);
        for v in 0..=top {
            x[e] = v;
            residual[a] -= v;
            residual[c] -= v;
            rec(p, e + 1, bounds, x, residual, out);
            residual[a] += v;
            residual[c] += v;
        }
        x[e] = 0;
    }
    rec(p, 0, &bounds, &mut x, &mut residual, &mut out);
    out.sort();
    Ok(out)
}

/// Point shape and sign checks shared by the lifts.
fn check_point(p: &BMatchingProblem, pt: &BPoint) -> Result<()> {
    if pt.x.len() != p.edge_count() {
        return Err(Error::Precondition(format!(
            "point has {} edge values, graph has {} edges",
            pt.x.len(),
            p.edge_count()
        )));
    }
    if let Some(e) = pt.x.iter().position(|v| v.is_negative()) {
        return Err(Error::Precondition(format!(
            "x is negative on {}",
            p.graph.format_edge(e)
        )));
    }
    Ok(())
}

/// Result of splitting every node v into b_v copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitLift {
    /// Instance on the split graph with b ≡ 1.
    pub problem: BMatchingProblem,
    /// Lifted node ids of each original node; copy 0 keeps the original id.
    pub copies: Vec<Vec<NodeId>>,
    /// Original edge of each lifted edge.
    pub edge_origin: Vec<EdgeId>,
}

/// Splits nodes into b_v copies. The special nodes must have b = 1 so that
/// the special edges keep a single representative.
pub fn split_nodes(p: &BMatchingProblem) -> Result<SplitLift> {
    if p.is_capacitated() {
        return Err(Error::Precondition(
            "node splitting needs an uncapacitated instance".into(),
        ));
    }
    for v in p.special_nodes() {
        if p.b[v] != 1 {
            return Err(Error::Precondition(format!(
                "special node {} has b = {}; splitting needs b = 1 on all special nodes",
                p.graph.label(v),
                p.b[v]
            )));
        }
    }
    let n = p.node_count();
    let mut labels: Vec<String> = p.graph.labels().to_vec();
    let mut sides = p.sides.clone();
    let mut copies: Vec<Vec<NodeId>> = (0..n).map(|v| vec![v]).collect();
    for v in 0..n {
        for k in 1..p.b[v] {
            copies[v].push(labels.len());
            labels.push(format!("{}#{}", p.graph.label(v), k + 1));
            sides.push(p.sides[v]);
        }
    }
    let mut pairs = Vec::new();
    for &(a, c) in p.graph.edges() {
        for &ca in &copies[a] {
            for &cc in &copies[c] {
                pairs.push((ca, cc));
            }
        }
    }
    let graph = GeneralGraph::new(labels, pairs)?;
    let node_origin: Vec<NodeId> = {
        let mut o = vec![0; graph.node_count()];
        for (v, cs) in copies.iter().enumerate() {
            for &c in cs {
                o[c] = v;
            }
        }
        o
    };
    let edge_origin = graph
        .edges()
        .iter()
        .map(|&(a, c)| {
            p.graph
                .edge_between(node_origin[a], node_origin[c])
                .expect("copy of an edge")
        })
        .collect();
    let (u1, w1) = p.graph.endpoints(p.e1);
    let (u2, w2) = p.graph.endpoints(p.e2);
    let e1 = graph.edge_between(u1, w1).expect("special edge kept");
    let e2 = graph.edge_between(u2, w2).expect("special edge kept");
    let b = vec![1; graph.node_count()];
    let problem = BMatchingProblem::new(graph, sides, e1, e2, b, None)?;
    Ok(SplitLift {
        problem,
        copies,
        edge_origin,
    })
}

impl SplitLift {
    /// x̄ on a copy of e = {u,w} is x_e / (b_u · b_w); ȳ = y.
    pub fn lift(&self, p: &BMatchingProblem, pt: &BPoint) -> Result<QPoint> {
        check_point(p, pt)?;
        let g = self.problem.graph();
        let x = (0..g.edge_count())
            .map(|e| {
                let o = self.edge_origin[e];
                let (a, c) = p.graph.endpoints(o);
                &pt.x[o] / int(p.b[a] * p.b[c])
            })
            .collect();
        Ok(QPoint { x, y: pt.y.clone() })
    }

    /// Sums the lifted values over all copies of each original edge.
    pub fn project(&self, original_edges: usize, lifted: &QPoint) -> Result<BPoint> {
        if lifted.x.len() != self.edge_origin.len() {
            return Err(Error::Precondition(
                "lifted point does not match the split graph".into(),
            ));
        }
        let mut x = vec![zero(); original_edges];
        for (e, v) in lifted.x.iter().enumerate() {
            x[self.edge_origin[e]] += v;
        }
        Ok(QPoint {
            x,
            y: lifted.y.clone(),
        })
    }
}

pub fn split_nodes_lift(p: &BMatchingProblem, pt: &BPoint) -> Result<(SplitLift, QPoint)> {
    let s = split_nodes(p)?;
    let lifted = s.lift(p, pt)?;
    Ok((s, lifted))
}

pub fn project_split(s: &SplitLift, original_edges: usize, lifted: &QPoint) -> Result<BPoint> {
    s.project(original_edges, lifted)
}

/// Result of replacing every edge {u,w} by the path u, (u,e), (w,e), w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionLift {
    /// Uncapacitated instance with b = c_e on the interior nodes of each path.
    pub problem: BMatchingProblem,
    /// Lifted edges {u,(u,e)}, {(u,e),(w,e)}, {(w,e),w} of every original edge.
    pub paths: Vec<[EdgeId; 3]>,
    pub capacities: Vec<i64>,
}

pub fn subdivide_edges(p: &BMatchingProblem) -> Result<SubdivisionLift> {
    let cap = p
        .cap
        .clone()
        .ok_or_else(|| Error::Precondition("subdivision needs a capacitated instance".into()))?;
    let g = &p.graph;
    let n = g.node_count();
    let mut labels = g.labels().to_vec();
    let mut sides = p.sides.clone();
    let mut b = p.b.clone();
    let mut triples = Vec::new();
    for (e, &(a, c)) in g.edges().iter().enumerate() {
        let (u, w) = if p.sides[a] == Side::U {
            (a, c)
        } else {
            (c, a)
        };
        let name = format!("{}{}", g.label(u), g.label(w));
        let ue = n + 2 * e;
        let we = ue + 1;
        labels.push(format!("({},{})", g.label(u), name));
        labels.push(format!("({},{})", g.label(w), name));
        sides.push(Side::W);
        sides.push(Side::U);
        b.push(cap[e]);
        b.push(cap[e]);
        triples.push((u, ue, we, w));
    }
    let graph = GeneralGraph::new(
        labels,
        triples
            .iter()
            .flat_map(|&(u, ue, we, w)| [(u, ue), (ue, we), (we, w)]),
    )?;
    let paths: Vec<[EdgeId; 3]> = triples
        .iter()
        .map(|&(u, ue, we, w)| {
            [
                graph.edge_between(u, ue).expect("path edge"),
                graph.edge_between(ue, we).expect("path edge"),
                graph.edge_between(we, w).expect("path edge"),
            ]
        })
        .collect();
    let (e1, e2) = (paths[p.e1][0], paths[p.e2][0]);
    let problem = BMatchingProblem::new(graph, sides, e1, e2, b, None)?;
    Ok(SubdivisionLift {
        problem,
        paths,
        capacities: cap,
    })
}

impl SubdivisionLift {
    /// Path values (x_e, c_e − x_e, x_e); ȳ = y.
    pub fn lift(&self, p: &BMatchingProblem, pt: &BPoint) -> Result<BPoint> {
        check_point(p, pt)?;
        let mut x = vec![zero(); self.problem.edge_count()];
        for (e, path) in self.paths.iter().enumerate() {
            let c = int(self.capacities[e]);
            if pt.x[e] > c {
                return Err(Error::Precondition(format!(
                    "x on {} exceeds its capacity {}",
                    p.graph.format_edge(e),
                    c
                )));
            }
            x[path[0]] = pt.x[e].clone();
            x[path[1]] = &c - &pt.x[e];
            x[path[2]] = pt.x[e].clone();
        }
        Ok(QPoint { x, y: pt.y.clone() })
    }

    /// Reads the first edge of each path.
    pub fn project(&self, lifted: &BPoint) -> Result<BPoint> {
        if lifted.x.len() != self.problem.edge_count() {
            return Err(Error::Precondition(
                "lifted point does not match the subdivided graph".into(),
            ));
        }
        Ok(QPoint {
            x: self.paths.iter().map(|p| lifted.x[p[0]].clone()).collect(),
            y: lifted.y.clone(),
        })
    }
}

pub fn subdivide_edges_lift(
    p: &BMatchingProblem,
    pt: &BPoint,
) -> Result<(SubdivisionLift, BPoint)> {
    let s = subdivide_edges(p)?;
    let lifted = s.lift(p, pt)?;
    Ok((s, lifted))
}

pub fn project_subdivision(s: &SubdivisionLift, lifted: &BPoint) -> Result<BPoint> {
    s.project(lifted)
}

fn subsets_of(edges: &[EdgeId], max: usize) -> Vec<BTreeSet<EdgeId>> {
    let mut out = vec![BTreeSet::new()];
    for &e in edges {
        let grown: Vec<_> = out
            .iter()
            .filter(|f| f.len() < max)
            .map(|f| {
                let mut g = f.clone();
                g.insert(e);
                g
            })
            .collect();
        out.extend(grown);
    }
    out.sort();
    out
}

/// Down/up family instances over S ∈ 𝒮 with |S| ≤ `max_s` and, when
/// capacitated, F ⊆ δ(S) \ {e1,e2} with |F| ≤ `max_f`. With `parity` set
/// only the instance matching the parity of b(S) + c(F) is produced,
/// otherwise both.
pub fn bmatching_family_instances(
    p: &BMatchingProblem,
    max_s: usize,
    max_f: usize,
    parity: bool,
) -> Vec<FamilyInstance> {
    let mut out = Vec::new();
    let n = p.node_count();
    for s in subsets_up_to(n, max_s.min(n)) {
        if !in_s_cut(p, &s) {
            continue;
        }
        let b = p.b_of(&s);
        match &p.cap {
            None => {
                if !parity || b % 2 == 1 {
                    out.push(FamilyInstance::BDown(s.clone()));
                }
                if !parity || b % 2 == 0 {
                    out.push(FamilyInstance::BUp(s));
                }
            }
            Some(cap) => {
                let cut: Vec<EdgeId> = p
                    .graph
                    .cut_edges(&s)
                    .into_iter()
                    .filter(|&e| e != p.e1 && e != p.e2)
                    .collect();
                for f in subsets_of(&cut, max_f) {
                    let total = b + f.iter().map(|&e| cap[e]).sum::<i64>();
                    if !parity || total % 2 == 1 {
                        out.push(FamilyInstance::CapBDown(s.clone(), f.clone()));
                    }
                    if !parity || total % 2 == 0 {
                        out.push(FamilyInstance::CapBUp(s.clone(), f));
                    }
                }
            }
        }
    }
    out
}

pub fn bmatching_families(p: &BMatchingProblem, max_s: usize, max_f: usize) -> Vec<FamilyInstance> {
    bmatching_family_instances(p, max_s, max_f, true)
}

/// Bounds, generalized degree, capacity and the parity-filtered families.
pub fn bmatching_system_instances(
    p: &BMatchingProblem,
    max_s: usize,
    max_f: usize,
) -> Vec<FamilyInstance> {
    let mut v: Vec<_> = (0..p.edge_count()).map(FamilyInstance::NonNeg).collect();
    v.extend((0..p.node_count()).map(FamilyInstance::BDegree));
    v.push(FamilyInstance::YLower);
    v.push(FamilyInstance::YUpper);
    v.push(FamilyInstance::StdLin(1));
    v.push(FamilyInstance::StdLin(2));
    if p.is_capacitated() {
        v.extend((0..p.edge_count()).map(FamilyInstance::Capacity));
    }
    v.extend(bmatching_families(p, max_s, max_f));
    v
}

pub fn bmatching_system(
    p: &BMatchingProblem,
    max_s: usize,
    max_f: usize,
) -> Result<Vec<LinearInequality>> {
    bmatching_system_instances(p, max_s, max_f)
        .iter()
        .map(|i| build(i, p))
        .collect()
}

/// The four mixed inequalities for every S with e_i outside and e_j inside δ(S).
pub fn mixed_instances(p: &BMatchingProblem, max_s: usize) -> Vec<FamilyInstance> {
    let g = &p.graph;
    let crosses = |e: EdgeId, s: &NodeSet| {
        let (a, c) = g.endpoints(e);
        s.contains(&a) != s.contains(&c)
    };
    let mut out = Vec::new();
    let n = p.node_count();
    for s in subsets_up_to(n, max_s.min(n)) {
        for i in [1u8, 2] {
            let (ei, ej) = if i == 1 { (p.e1, p.e2) } else { (p.e2, p.e1) };
            if crosses(ei, &s) || !crosses(ej, &s) {
                continue;
            }
            for form in [
                MixedForm::MinusI,
                MixedForm::PlusJ,
                MixedForm::PlainY,
                MixedForm::Both,
            ] {
                out.push(FamilyInstance::Mixed(form, i, s.clone()));
            }
        }
    }
    out
}

/// Row scaled so that its first nonzero entry has absolute value one.
fn normalized(row: &LinearInequality, edges: usize) -> Vec<Rational> {
    let mut v = row.dense(edges);
    v.push(row.rhs.clone());
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
        for c in v.iter_mut() {
            *c /= &lead;
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatchingReport {
    /// Integer points; completeness compares against their extreme points.
    pub points: usize,
    /// All families regardless of parity, plus the bound rows, on the integer points.
    pub validity: ValidityReport,
    pub completeness: CompletenessReport,
    /// Mixed inequalities on the integer points.
    pub mixed_validity: ValidityReport,
    /// Mixed inequalities that define facets without coinciding with a system row.
    pub mixed_facets: Vec<FacetReport>,
}

impl BMatchingReport {
    pub fn passed(&self) -> bool {
        self.validity.passed()
            && self.completeness.passed()
            && self.mixed_validity.passed()
            && self.mixed_facets.is_empty()
    }
}

pub fn verify_bmatching_description(
    p: &BMatchingProblem,
    max_f: usize,
    limits: &Limits,
) -> Result<BMatchingReport> {
    let n = p.node_count();
    let points = enumerate_bmatchings(p, limits)?;
    let ne = p.edge_count();

    let system = bmatching_system(p, n, max_f)?;
    let mut rows = system.clone();
    let kept: BTreeSet<FamilyInstance> = rows.iter().map(|r| r.tag.clone()).collect();
    for inst in bmatching_family_instances(p, n, max_f, false) {
        if !kept.contains(&inst) {
            rows.push(build(&inst, p)?);
        }
    }
    let mut pair = build(&FamilyInstance::UpPair, p)?;
    pair.ycoef = int(-2);
    rows.push(pair);
    let validity = validity_of_rows(&rows, &points);

    let completeness = completeness_of_rows(ne, &system, &extreme_points(&points), limits)?;

    let mixed: Vec<LinearInequality> = mixed_instances(p, n)
        .iter()
        .map(|i| build(i, p))
        .collect::<Result<_>>()?;
    let mixed_validity = validity_of_rows(&mixed, &points);
    let known: BTreeSet<Vec<Rational>> = system.iter().map(|r| normalized(r, ne)).collect();
    let mixed_facets = mixed
        .iter()
        .filter(|r| !known.contains(&normalized(r, ne)))
        .map(|r| facet_of_row(r, &points))
        .filter(|f| f.is_facet())
        .collect();

    Ok(BMatchingReport {
        points: points.len(),
        validity,
        completeness,
        mixed_validity,
        mixed_facets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::{enumerate_family, violation, Family};
    use crate::problem::{vertex_set, Variant};
    use crate::rational::ratio;

    fn k22() -> QProblem {
        QProblem::standard(2, 2).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn invariants_checked() {
        let p = k22();
        // b = (u1,u2,w1,w2)
        assert!(BMatchingProblem::from_qproblem(&p, vec![2, 1, 2, 1], None).is_err());
        assert!(BMatchingProblem::from_qproblem(&p, vec![2, 1, 1, 2], None).is_ok());
        assert!(BMatchingProblem::from_qproblem(&p, vec![0, 1, 1, 1], None).is_err());
        assert!(
            BMatchingProblem::from_qproblem(&p, vec![1, 2, 2, 1], Some(vec![1, 2, 2, 1])).is_ok()
        );
        assert!(BMatchingProblem::from_qproblem(&p, vec![2; 4], Some(vec![1, 2, 2, 1])).is_err());
        assert!(
            BMatchingProblem::from_qproblem(&p, vec![1, 2, 2, 1], Some(vec![2, 1, 1, 1])).is_err()
        );
    }

    #[test]
    fn unit_b_matches_vertex_set() {
        for (m, n) in [(2, 2), (3, 2), (2, 3)] {
            let q = QProblem::standard(m, n).unwrap();
            let p = BMatchingProblem::from_qproblem(&q, vec![1; m + n], None).unwrap();
            let mut want = vertex_set(&q, Variant::Exact, &lim()).unwrap();
            want.sort();
            assert_eq!(enumerate_bmatchings(&p, &lim()).unwrap(), want);
        }
    }

    #[test]
    fn k22_c1_has_ten_points() {
        // b(u1) = b(w2) = 1: x_{u1w2} = 1 leaves only x_{u2w1} free
        let p =
            BMatchingProblem::from_qproblem(&k22(), vec![1, 2, 2, 1], Some(vec![1; 4])).unwrap();
        let pts = enumerate_bmatchings(&p, &lim()).unwrap();
        assert_eq!(pts.len(), 10);
        for pt in &pts {
            let y = pt.x[0] == one() && pt.x[3] == one();
            assert_eq!(pt.y, if y { one() } else { zero() });
        }
    }

    #[test]
    fn enumeration_respects_bounds() {
        let p = BMatchingProblem::from_qproblem(&k22(), vec![1, 2, 2, 1], Some(vec![1, 1, 2, 1]))
            .unwrap();
        let pts = enumerate_bmatchings(&p, &lim()).unwrap();
        assert!(pts.iter().all(|pt| pt.x[0] <= one() && pt.x[2] <= int(2)));
        assert!(pts.iter().any(|pt| pt.x[2] == int(2)));
        let small = Limits {
            max_points: 10,
            ..lim()
        };
        assert!(matches!(
            enumerate_bmatchings(&p, &small),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn split_identity_for_unit_b() {
        let q = QProblem::standard(2, 3).unwrap();
        let p = BMatchingProblem::from_qproblem(&q, vec![1; 5], None).unwrap();
        let pt = QPoint {
            x: (0..6).map(|i| ratio(i, 7)).collect(),
            y: ratio(1, 7),
        };
        let (s, lifted) = split_nodes_lift(&p, &pt).unwrap();
        assert_eq!(lifted, pt);
        assert_eq!(project_split(&s, 6, &lifted).unwrap(), pt);
    }

    #[test]
    fn split_divides_by_copy_count() {
        // K_{3,2} with b(u3) = 2: u3 is not special
        let q = QProblem::standard(3, 2).unwrap();
        let p = BMatchingProblem::from_qproblem(&q, vec![1, 1, 2, 1, 1], None).unwrap();
        let mut pt = QPoint::zero(6);
        pt.x[q.edge_id(crate::problem::BiEdge::new(2, 1))] = one();
        let (s, lifted) = split_nodes_lift(&p, &pt).unwrap();
        assert_eq!(s.copies[2].len(), 2);
        let g = s.problem.graph();
        let w2 = q.w_node(1);
        for &c in &s.copies[2] {
            assert_eq!(lifted.x[g.edge_between(c, w2).unwrap()], ratio(1, 2));
        }
        for v in 0..g.node_count() {
            let d: Rational = g.incident(v).iter().map(|&e| lifted.x[e].clone()).sum();
            assert!(d <= one());
        }
        assert_eq!(project_split(&s, 6, &lifted).unwrap(), pt);
    }

    #[test]
    fn split_rejects_special_b() {
        let p = BMatchingProblem::from_qproblem(&k22(), vec![2, 1, 1, 2], None).unwrap();
        assert!(split_nodes(&p).is_err());
    }

    #[test]
    fn split_keeps_y_compatibility() {
        let q = QProblem::standard(3, 3).unwrap();
        let p = BMatchingProblem::from_qproblem(&q, vec![1, 1, 2, 1, 1, 2], None).unwrap();
        let s = split_nodes(&p).unwrap();
        let ne = s.problem.edge_count();
        // the lifted special edges project onto e1 and e2
        assert_eq!(s.edge_origin[s.problem.e1()], q.e1());
        assert_eq!(s.edge_origin[s.problem.e2()], q.e2());
        let mut lifted = QPoint::zero(ne);
        lifted.x[s.problem.e1()] = one();
        lifted.x[s.problem.e2()] = one();
        lifted.y = one();
        let back = project_split(&s, 9, &lifted).unwrap();
        assert_eq!(
            (back.x[q.e1()].clone(), back.x[q.e2()].clone()),
            (one(), one())
        );
    }

    fn cap_k22() -> BMatchingProblem {
        BMatchingProblem::from_qproblem(&k22(), vec![1, 2, 2, 1], Some(vec![1, 3, 2, 1])).unwrap()
    }

    #[test]
    fn subdivision_values() {
        let p = cap_k22();
        let mut pt = QPoint::zero(4);
        pt.x[0] = one();
        pt.x[1] = ratio(3, 2);
        let (s, lifted) = subdivide_edges_lift(&p, &pt).unwrap();
        let vals = |e: usize| s.paths[e].map(|f| lifted.x[f].clone());
        assert_eq!(vals(0), [one(), zero(), one()]);
        assert_eq!(vals(1), [ratio(3, 2), ratio(3, 2), ratio(3, 2)]);
        let g = s.problem.graph();
        for e in 0..4 {
            let interior = g.endpoints(s.paths[e][1]);
            for v in [interior.0, interior.1] {
                let d: Rational = g.incident(v).iter().map(|&f| lifted.x[f].clone()).sum();
                assert_eq!(d, int(s.capacities[e]));
                assert_eq!(s.problem.b(v), s.capacities[e]);
            }
        }
        assert_eq!(project_subdivision(&s, &lifted).unwrap(), pt);
        assert_eq!(g.label(g.endpoints(s.problem.e1()).1), "(u1,u1w1)");
    }

    #[test]
    fn subdivision_rejects_over_capacity() {
        let mut pt = QPoint::zero(4);
        pt.x[2] = int(3);
        assert!(subdivide_edges_lift(&cap_k22(), &pt).is_err());
        let uncap = BMatchingProblem::from_qproblem(&k22(), vec![1; 4], None).unwrap();
        assert!(subdivide_edges(&uncap).is_err());
    }

    #[test]
    fn subdivision_of_integral_points() {
        let p = cap_k22();
        let s = subdivide_edges(&p).unwrap();
        for pt in enumerate_bmatchings(&p, &lim()).unwrap() {
            let lifted = s.lift(&p, &pt).unwrap();
            assert!(lifted.is_integral());
            for v in 0..s.problem.node_count() {
                let d: Rational = s
                    .problem
                    .graph()
                    .incident(v)
                    .iter()
                    .map(|&f| lifted.x[f].clone())
                    .sum();
                assert!(d <= int(s.problem.b(v)));
            }
            assert_eq!(s.project(&lifted).unwrap(), pt);
        }
    }

    #[test]
    fn unit_b_down_sets_are_odd_cut_sets() {
        let q = QProblem::standard(3, 3).unwrap();
        let p = BMatchingProblem::from_qproblem(&q, vec![1; 6], None).unwrap();
        let down: BTreeSet<NodeSet> = bmatching_families(&p, 6, 0)
            .into_iter()
            .filter_map(|f| match f {
                FamilyInstance::BDown(s) => Some(s),
                _ => None,
            })
            .collect();
        let dt: BTreeSet<NodeSet> = enumerate_family(&q, Family::DTilde, 6)
            .into_iter()
            .map(|f| f.node_set().unwrap().clone())
            .collect();
        assert!(dt.is_subset(&down));
        assert!(down.iter().all(|s| s.len() % 2 == 1 && in_s_cut(&p, s)));
    }

    #[test]
    fn parity_filter() {
        let p = BMatchingProblem::from_qproblem(&k22(), vec![2, 1, 1, 2], None).unwrap();
        for f in bmatching_families(&p, 4, 0) {
            match f {
                FamilyInstance::BDown(s) => assert_eq!(p.b_of(&s) % 2, 1),
                FamilyInstance::BUp(s) => assert_eq!(p.b_of(&s) % 2, 0),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn empty_f_matches_uncapacitated_rows() {
        let q = k22();
        let b = vec![1, 2, 2, 1];
        let unc = BMatchingProblem::from_qproblem(&q, b.clone(), None).unwrap();
        let cap = BMatchingProblem::from_qproblem(&q, b, Some(vec![1, 2, 2, 1])).unwrap();
        let a: Vec<_> = bmatching_families(&unc, 4, 0)
            .iter()
            .map(|i| normalized(&build(i, &unc).unwrap(), 4))
            .collect();
        let c: Vec<_> = bmatching_families(&cap, 4, 0)
            .iter()
            .map(|i| normalized(&build(i, &cap).unwrap(), 4))
            .collect();
        assert_eq!(a, c);
    }

    #[test]
    fn pair_bound_on_integer_points() {
        let p = cap_k22();
        let mut row = build(&FamilyInstance::UpPair, &p).unwrap();
        row.ycoef = int(-2);
        for pt in enumerate_bmatchings(&p, &lim()).unwrap() {
            assert!(violation(&row, &pt) <= zero());
        }
    }

    #[test]
    fn verify_unit_b_k22() {
        let p = BMatchingProblem::from_qproblem(&k22(), vec![1; 4], None).unwrap();
        let r = verify_bmatching_description(&p, 0, &lim()).unwrap();
        assert_eq!(r.points, 7);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn verify_mixed_b_k22() {
        let p = BMatchingProblem::from_qproblem(&k22(), vec![2, 1, 1, 2], None).unwrap();
        let r = verify_bmatching_description(&p, 0, &lim()).unwrap();
        assert!(r.validity.passed());
        assert!(r.mixed_validity.passed());
        assert!(r.completeness.passed(), "{:?}", r.completeness);
        assert!(r.mixed_facets.is_empty(), "{:?}", r.mixed_facets);
    }

    #[test]
    fn verify_capacitated_k22() {
        let p = BMatchingProblem::from_qproblem(&k22(), vec![1, 2, 2, 1], Some(vec![1, 2, 1, 1]))
            .unwrap();
        let r = verify_bmatching_description(&p, 3, &lim()).unwrap();
        assert!(r.validity.passed());
        assert!(r.completeness.passed(), "{:?}", r.completeness);
    }
}
