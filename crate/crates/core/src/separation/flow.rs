//! Exact max flow, Gomory–Hu cut trees and minimum T-odd cuts.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{GeneralGraph, NodeId, NodeSet};
use crate::rational::{zero, Rational};

/// Symmetric capacity matrix of an undirected graph.
fn capacity_matrix(g: &GeneralGraph, cap: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if cap.len() != g.edge_count() {
        return Err(Error::Precondition("one capacity per edge required".into()));
    }
    let n = g.node_count();
    let mut m = vec![vec![zero(); n]; n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if cap[e].is_negative() {
            return Err(Error::Precondition(format!(
                "negative capacity on edge {}",
                g.format_edge(e)
            )));
        }
        m[a][b] = cap[e].clone();
        m[b][a] = cap[e].clone();
    }
    Ok(m)
}

/// Edmonds–Karp. Returns the flow value and the source side of a minimum cut.
pub fn max_flow(cap: &[Vec<Rational>], s: NodeId, t: NodeId) -> (Rational, Vec<bool>) {
    let n = cap.len();
    let mut res: Vec<Vec<Rational>> = cap.to_vec();
    let mut value = zero();
    loop {
        let mut pred = vec![usize::MAX; n];
        pred[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for w in 0..n {
                if pred[w] == usize::MAX && res[v][w].is_positive() {
                    pred[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if pred[t] == usize::MAX {
            let side = pred.iter().map(|&p| p != usize::MAX).collect();
            return (value, side);
        }
        let mut bottleneck = None::<Rational>;
        let mut v = t;
        while v != s {
            let u = pred[v];
            if bottleneck.as_ref().is_none_or(|b| res[u][v] < *b) {
                bottleneck = Some(res[u][v].clone());
            }
            v = u;
        }
        let f = bottleneck.expect("path has an edge");
        let mut v = t;
        while v != s {
            let u = pred[v];
            res[u][v] -= &f;
            res[v][u] += &f;
            v = u;
        }
        value += f;
    }
}

fn cut_value(cap: &[Vec<Rational>], side: &[bool]) -> Rational {
    let n = cap.len();
    let mut v = zero();
    for a in 0..n {
        for b in 0..n {
            if side[a] && !side[b] && !cap[a][b].is_zero() {
                v += &cap[a][b];
            }
        }
    }
    v
}

/// Tree on the node set where node `v > 0` hangs below `parent[v]` with an
/// edge of weight `value[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GomoryHuTree {
    pub parent: Vec<NodeId>,
    pub value: Vec<Rational>,
}

impl GomoryHuTree {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// (child, parent, value) for every tree edge.
    pub fn edges(&self) -> Vec<(NodeId, NodeId, Rational)> {
        (1..self.parent.len())
            .map(|v| (v, self.parent[v], self.value[v].clone()))
            .collect()
    }

    /// Nodes on the `child` side after deleting the edge above `child`.
    pub fn shore(&self, child: NodeId) -> NodeSet {
        let n = self.parent.len();
        (0..n)
            .filter(|&v| {
                let mut x = v;
                loop {
                    if x == child {
                        return true;
                    }
                    if x == 0 {
                        return false;
                    }
                    x = self.parent[x];
                }
            })
            .collect()
    }

    fn path_to_root(&self, mut v: NodeId) -> Vec<NodeId> {
        let mut p = vec![v];
        while v != 0 {
            v = self.parent[v];
            p.push(v);
        }
        p
    }

    /// Minimum edge value on the tree path between `a` and `b`.
    pub fn min_cut_value(&self, a: NodeId, b: NodeId) -> Option<Rational> {
        if a == b {
            return None;
        }
        let pa = self.path_to_root(a);
        let pb = self.path_to_root(b);
        let lca = *pa.iter().find(|v| pb.contains(v)).expect("common root");
        pa.iter()
            .take_while(|&&v| v != lca)
            .chain(pb.iter().take_while(|&&v| v != lca))
            .map(|&v| self.value[v].clone())
            .min()
    }
}

fn gomory_hu_dense(cap: &[Vec<Rational>]) -> GomoryHuTree {
    let n = cap.len();
    let mut parent = vec![0; n];
    let mut value = vec![zero(); n];
    for s in 1..n {
        let t = parent[s];
        let (f, side) = max_flow(cap, s, t);
        value[s] = f.clone();
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if t != 0 && side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            value[s] = value[t].clone();
            value[t] = f;
        }
    }
    GomoryHuTree { parent, value }
}

/// Gusfield's construction with exact max flows.
pub fn gomory_hu(g: &GeneralGraph, cap: &[Rational]) -> Result<GomoryHuTree> {
    Ok(gomory_hu_dense(&capacity_matrix(g, cap)?))
}

/// Minimum-capacity cut δ(S) with |S ∩ T| odd, taken among the fundamental
/// cuts of a Gomory–Hu tree. S is the shore without the highest-indexed node;
/// ties go to the lexicographically smallest S.
pub fn min_odd_cut(g: &GeneralGraph, cap: &[Rational], t: &NodeSet) -> Result<(NodeSet, Rational)> {
    if t.is_empty() {
        return Err(Error::Precondition("T must be nonempty".into()));
    }
    if t.len() % 2 == 1 {
        return Err(Error::Precondition("|T| must be even".into()));
    }
    if let Some(v) = t.iter().find(|&&v| v >= g.node_count()) {
        return Err(Error::Precondition(format!("T names missing node {v}")));
    }
    let m = capacity_matrix(g, cap)?;
    let tree = gomory_hu_dense(&m);
    let n = g.node_count();
    let last = n - 1;
    let mut best: Option<(NodeSet, Rational)> = None;
    for (child, _, _) in tree.edges() {
        let mut s = tree.shore(child);
        if s.intersection(t).count().is_multiple_of(2) {
            continue;
        }
        if s.contains(&last) {
            s = (0..n).filter(|v| !s.contains(v)).collect();
        }
        let side: Vec<bool> = (0..n).map(|v| s.contains(&v)).collect();
        let val = cut_value(&m, &side);
        let better = match &best {
            None => true,
            Some((bs, bv)) => val < *bv || (val == *bv && s < *bs),
        };
        if better {
            best = Some((s, val));
        }
    }
    best.ok_or_else(|| Error::Internal("no T-odd fundamental cut".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn two_nodes() {
        let g = GeneralGraph::unlabelled(2, [(0, 1)]).unwrap();
        let t = gomory_hu(&g, &[ratio(5, 3)]).unwrap();
        assert_eq!(t.edges(), vec![(1, 0, ratio(5, 3))]);
        let tset: NodeSet = [0, 1].into_iter().collect();
        let (s, v) = min_odd_cut(&g, &[ratio(1, 3)], &tset).unwrap();
        assert_eq!(v, ratio(1, 3));
        assert_eq!(s, [0].into_iter().collect());
    }

    #[test]
    fn triangle_cuts() {
        let g = GeneralGraph::unlabelled(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = gomory_hu(&g, &[int(1), int(1), int(1)]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert_eq!(t.min_cut_value(a, b), Some(int(2)));
                }
            }
        }
    }

    #[test]
    fn path_cut() {
        let g = GeneralGraph::unlabelled(3, [(0, 1), (1, 2)]).unwrap();
        let t = gomory_hu(&g, &[int(1), int(2)]).unwrap();
        assert_eq!(t.min_cut_value(0, 2), Some(int(1)));
        assert_eq!(t.min_cut_value(1, 2), Some(int(2)));
    }

    #[test]
    fn four_cycle_odd_cut() {
        let g = GeneralGraph::unlabelled(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let tset: NodeSet = (0..4).collect();
        let (s, v) = min_odd_cut(&g, &vec![int(1); 4], &tset).unwrap();
        assert_eq!(v, int(2));
        assert_eq!(s.len() % 2, 1);
    }

    #[test]
    fn odd_cut_errors() {
        let g = GeneralGraph::unlabelled(2, [(0, 1)]).unwrap();
        assert!(min_odd_cut(&g, &[int(1)], &NodeSet::new()).is_err());
        assert!(min_odd_cut(&g, &[int(1)], &[0].into_iter().collect()).is_err());
    }
}
