//! The two auxiliary graphs whose matching polytopes encode P↓ and P↑.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GeneralGraph, NodeId};
use crate::problem::{QPoint, QProblem};
use crate::rational::{format_rational, one, ratio, Rational};

/// K_{m,n} plus e_u = {u1,u2} and e_w = {w1,w2}.
#[derive(Debug, Clone)]
pub struct DownGadget {
    pub graph: GeneralGraph,
    pub xbar: Vec<Rational>,
    /// Gadget edge id of each original edge.
    pub edge_map: Vec<EdgeId>,
    pub eu: EdgeId,
    pub ew: EdgeId,
    pub e1: EdgeId,
    pub e2: EdgeId,
}

/// K_{m,n} plus nodes a, b and edges {a,b}, {u1,a}, {u2,b}, {w1,b}, {w2,a}.
#[derive(Debug, Clone)]
pub struct UpGadget {
    pub graph: GeneralGraph,
    pub xbar: Vec<Rational>,
    pub xtilde: Vec<Rational>,
    pub edge_map: Vec<EdgeId>,
    pub a: NodeId,
    pub b: NodeId,
    pub ab: EdgeId,
    pub u1a: EdgeId,
    pub u2b: EdgeId,
    pub w1b: EdgeId,
    pub w2a: EdgeId,
    pub e1: EdgeId,
    pub e2: EdgeId,
}

impl DownGadget {
    /// Graph only, for callers that need the edge layout without a point.
    pub fn layout(p: &QProblem) -> Self {
        let [u1, u2, w1, w2] = p.special_nodes();
        let g = p.graph();
        let graph = GeneralGraph::new(
            g.labels().to_vec(),
            g.edges().iter().copied().chain([(u1, u2), (w1, w2)]),
        )
        .expect("special nodes are distinct");
        let edge_map: Vec<EdgeId> = g
            .edges()
            .iter()
            .map(|&(a, b)| graph.edge_between(a, b).expect("original edge"))
            .collect();
        let eu = graph.edge_between(u1, u2).expect("e_u");
        let ew = graph.edge_between(w1, w2).expect("e_w");
        let (e1, e2) = (edge_map[p.e1()], edge_map[p.e2()]);
        let xbar = vec![crate::rational::zero(); graph.edge_count()];
        DownGadget {
            graph,
            xbar,
            edge_map,
            eu,
            ew,
            e1,
            e2,
        }
    }

    /// Back to original edge ids; gadget edges map to `None`.
    pub fn original_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.edge_map.iter().position(|&f| f == e)
    }
}

impl UpGadget {
    pub fn layout(p: &QProblem) -> Self {
        let [u1, u2, w1, w2] = p.special_nodes();
        let g = p.graph();
        let a = g.node_count();
        let b = a + 1;
        let mut labels = g.labels().to_vec();
        labels.push("a".into());
        labels.push("b".into());
        let graph = GeneralGraph::new(
            labels,
            g.edges()
                .iter()
                .copied()
                .chain([(a, b), (u1, a), (u2, b), (w1, b), (w2, a)]),
        )
        .expect("gadget nodes are fresh");
        let edge_map: Vec<EdgeId> = g
            .edges()
            .iter()
            .map(|&(x, y)| graph.edge_between(x, y).expect("original edge"))
            .collect();
        let id = |x, y| graph.edge_between(x, y).expect("gadget edge");
        let (ab, u1a, u2b, w1b, w2a) = (id(a, b), id(u1, a), id(u2, b), id(w1, b), id(w2, a));
        let (e1, e2) = (edge_map[p.e1()], edge_map[p.e2()]);
        let zeros = vec![crate::rational::zero(); graph.edge_count()];
        UpGadget {
            graph,
            xbar: zeros.clone(),
            xtilde: zeros,
            edge_map,
            a,
            b,
            ab,
            u1a,
            u2b,
            w1b,
            w2a,
            e1,
            e2,
        }
    }

    pub fn original_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.edge_map.iter().position(|&f| f == e)
    }

    /// C1 = {u1a, ab, bw1, w1u1}.
    pub fn cycle1(&self) -> [EdgeId; 4] {
        [self.u1a, self.ab, self.w1b, self.e1]
    }

    /// C2 = {u2b, ba, aw2, w2u2}.
    pub fn cycle2(&self) -> [EdgeId; 4] {
        [self.u2b, self.ab, self.w2a, self.e2]
    }
}

fn check_len(p: &QProblem, pt: &QPoint) -> Result<()> {
    if pt.x.len() != p.edge_count() {
        return Err(Error::Precondition(format!(
            "point has {} edge entries, instance has {}",
            pt.x.len(),
            p.edge_count()
        )));
    }
    Ok(())
}

/// x̄ = x̂ off the special edges, x̄_{e_i} = x̂_{e_i} − ŷ, x̄_{e_u} = x̄_{e_w} = ŷ.
pub fn build_down_gadget(p: &QProblem, pt: &QPoint) -> Result<DownGadget> {
    check_len(p, pt)?;
    let mut gd = DownGadget::layout(p);
    for (e, &f) in gd.edge_map.iter().enumerate() {
        gd.xbar[f] = pt.x[e].clone();
    }
    gd.xbar[gd.e1] = &pt.x[p.e1()] - &pt.y;
    gd.xbar[gd.e2] = &pt.x[p.e2()] - &pt.y;
    gd.xbar[gd.eu] = pt.y.clone();
    gd.xbar[gd.ew] = pt.y.clone();
    if let Some(e) = (0..gd.graph.edge_count()).find(|&e| gd.xbar[e].is_negative()) {
        return Err(Error::BaseConstraintViolated(format!(
            "down gadget value {} on edge {} is negative",
            format_rational(&gd.xbar[e]),
            gd.graph.format_edge(e)
        )));
    }
    Ok(gd)
}

/// x̄_{e_i} = ŷ/2, x̄_{ab} = 1 − x̂_{e1} − x̂_{e2} + ŷ, x̄_{u1a} = x̄_{w1b} = x̂_{e1} − ŷ/2,
/// x̄_{u2b} = x̄_{w2a} = x̂_{e2} − ŷ/2; x̃ puts 1 on {a,b} and 0 on the other new edges.
pub fn build_up_gadget(p: &QProblem, pt: &QPoint) -> Result<UpGadget> {
    check_len(p, pt)?;
    let mut gd = UpGadget::layout(p);
    for (e, &f) in gd.edge_map.iter().enumerate() {
        gd.xbar[f] = pt.x[e].clone();
        gd.xtilde[f] = pt.x[e].clone();
    }
    let half_y = &pt.y * ratio(1, 2);
    let (x1, x2) = (&pt.x[p.e1()], &pt.x[p.e2()]);
    gd.xtilde[gd.ab] = one();
    gd.xbar[gd.e1] = half_y.clone();
    gd.xbar[gd.e2] = half_y.clone();
    gd.xbar[gd.ab] = one() - x1 - x2 + &pt.y;
    gd.xbar[gd.u1a] = x1 - &half_y;
    gd.xbar[gd.w1b] = x1 - &half_y;
    gd.xbar[gd.u2b] = x2 - &half_y;
    gd.xbar[gd.w2a] = x2 - &half_y;
    if gd.xbar[gd.ab].is_negative() {
        return Err(Error::BaseConstraintViolated(format!(
            "x_e1 + x_e2 - y <= 1 fails by {}, so Up({{u1,w2}}) is violated",
            format_rational(&-&gd.xbar[gd.ab])
        )));
    }
    for (i, e) in [(1, gd.u1a), (2, gd.u2b)] {
        if gd.xbar[e].is_negative() {
            return Err(Error::BaseConstraintViolated(format!(
                "y/2 <= x_e{i} fails; y <= x_e{i} is not implied here"
            )));
        }
    }
    if let Some(e) = (0..gd.graph.edge_count()).find(|&e| gd.xbar[e].is_negative()) {
        return Err(Error::BaseConstraintViolated(format!(
            "up gadget value on edge {} is negative",
            gd.graph.format_edge(e)
        )));
    }
    Ok(gd)
}
