use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{one, zero, Rational};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Node sets compare lexicographically on their sorted elements.
pub type NodeSet = BTreeSet<NodeId>;

/// Simple undirected graph. Edges are stored as sorted node pairs, and the
/// id of an edge is its position in the sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralGraph {
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
    index: BTreeMap<(NodeId, NodeId), EdgeId>,
    incident: Vec<Vec<EdgeId>>,
}

impl GeneralGraph {
    pub fn new(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut sorted = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a},{b}) names a missing node"
                )));
            }
            if a == b {
                return Err(Error::InvalidInstance(format!("loop at node {a}")));
            }
            if !sorted.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInstance(format!("parallel edge ({a},{b})")));
            }
        }
        let edges: Vec<_> = sorted.into_iter().collect();
        let mut incident = vec![Vec::new(); n];
        let mut index = BTreeMap::new();
        for (id, &(a, b)) in edges.iter().enumerate() {
            incident[a].push(id);
            incident[b].push(id);
            index.insert((a, b), id);
        }
        Ok(GeneralGraph {
            labels,
            edges,
            index,
            incident,
        })
    }

    /// Unlabelled graph; nodes are printed by index.
    pub fn unlabelled(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge_between(&self, a: NodeId, b: NodeId) -> Option<EdgeId> {
        self.index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn incident(&self, v: NodeId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn other_end(&self, e: EdgeId, v: NodeId) -> NodeId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// E[S]: edges with both ends in `s`.
    pub fn induced_edges(&self, s: &NodeSet) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                s.contains(&a) && s.contains(&b)
            })
            .collect()
    }

    /// δ(S): edges with exactly one end in `s`.
    pub fn cut_edges(&self, s: &NodeSet) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                s.contains(&a) != s.contains(&b)
            })
            .collect()
    }

    pub fn format_edge(&self, e: EdgeId) -> String {
        let (a, b) = self.edges[e];
        format!("{{{},{}}}", self.labels[a], self.labels[b])
    }

    pub fn format_nodes(&self, s: &NodeSet) -> String {
        let names: Vec<_> = s.iter().map(|&v| self.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A set of pairwise node-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks that every edge exists in `g` and no two edges share a node.
    pub fn new(g: &GeneralGraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        let mut owner: BTreeMap<NodeId, EdgeId> = BTreeMap::new();
        for &e in &edges {
            if e >= g.edge_count() {
                return Err(Error::EdgeNotInGraph(e));
            }
            let (a, b) = g.endpoints(e);
            for v in [a, b] {
                if let Some(&f) = owner.get(&v) {
                    return Err(Error::NotAMatching(f, e));
                }
                owner.insert(v, e);
            }
        }
        Ok(Matching { edges })
    }

    pub(crate) fn from_set_unchecked(edges: BTreeSet<EdgeId>) -> Self {
        Matching { edges }
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covers(&self, g: &GeneralGraph, v: NodeId) -> bool {
        g.incident(v).iter().any(|e| self.edges.contains(e))
    }

    pub fn is_perfect(&self, g: &GeneralGraph) -> bool {
        2 * self.edges.len() == g.node_count()
    }

    pub fn symmetric_difference(&self, other: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        self.edges.symmetric_difference(other).copied().collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<_> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", ids.join(","))
    }
}

/// All matchings of `g`, including the empty one. Fails when `g` has more than
/// `max_edges` edges.
pub fn enumerate_matchings(g: &GeneralGraph, max_edges: usize) -> Result<Vec<Matching>> {
    if g.edge_count() > max_edges {
        return Err(Error::TooLarge {
            what: "edge count",
            size: g.edge_count(),
            limit: max_edges,
        });
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.node_count()];
    let mut chosen = Vec::new();
    extend(g, 0, &mut used, &mut chosen, &mut out);
    Ok(out)
}

fn extend(
    g: &GeneralGraph,
    next: EdgeId,
    used: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<Matching>,
) {
    if next == g.edge_count() {
        out.push(Matching::from_set_unchecked(
            chosen.iter().copied().collect(),
        ));
        return;
    }
    extend(g, next + 1, used, chosen, out);
    let (a, b) = g.endpoints(next);
    if !used[a] && !used[b] {
        used[a] = true;
        used[b] = true;
        chosen.push(next);
        extend(g, next + 1, used, chosen, out);
        chosen.pop();
        used[a] = false;
        used[b] = false;
    }
}

/// Characteristic vector of `m` over the edges of `g`.
pub fn chi(m: &Matching, g: &GeneralGraph) -> Result<Vec<Rational>> {
    if let Some(&e) = m.edges().iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::EdgeNotInGraph(e));
    }
    Ok((0..g.edge_count())
        .map(|e| if m.contains(e) { one() } else { zero() })
        .collect())
}

/// x(F) for an edge list F.
pub fn sum_over(x: &[Rational], edges: &[EdgeId]) -> Rational {
    edges.iter().fold(zero(), |acc, &e| acc + &x[e])
}

/// x(δ(v)).
pub fn degree_value(g: &GeneralGraph, x: &[Rational], v: NodeId) -> Rational {
    sum_over(x, g.incident(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> GeneralGraph {
        GeneralGraph::unlabelled(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn edges_are_sorted_pairs() {
        let g = triangle();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.edge_between(2, 0), Some(1));
        assert_eq!(g.edge_between(0, 0), None);
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(GeneralGraph::unlabelled(2, [(0, 0)]).is_err());
        assert!(GeneralGraph::unlabelled(2, [(0, 1), (1, 0)]).is_err());
        assert!(GeneralGraph::unlabelled(2, [(0, 2)]).is_err());
    }

    #[test]
    fn matching_validation() {
        let g = triangle();
        assert!(Matching::new(&g, [0]).is_ok());
        assert!(matches!(
            Matching::new(&g, [0, 1]),
            Err(Error::NotAMatching(0, 1))
        ));
        assert!(matches!(
            Matching::new(&g, [7]),
            Err(Error::EdgeNotInGraph(7))
        ));
    }

    #[test]
    fn triangle_has_four_matchings() {
        let ms = enumerate_matchings(&triangle(), 24).unwrap();
        assert_eq!(ms.len(), 4);
        assert!(ms.contains(&Matching::empty()));
    }

    #[test]
    fn edgeless_graph_has_only_empty_matching() {
        let g = GeneralGraph::unlabelled(4, []).unwrap();
        assert_eq!(
            enumerate_matchings(&g, 24).unwrap(),
            vec![Matching::empty()]
        );
    }

    #[test]
    fn guard_triggers() {
        let g = triangle();
        assert!(matches!(
            enumerate_matchings(&g, 2),
            Err(Error::TooLarge {
                size: 3,
                limit: 2,
                ..
            })
        ));
    }

    #[test]
    fn induced_and_cut() {
        let g = triangle();
        let s: NodeSet = [0, 1].into_iter().collect();
        assert_eq!(g.induced_edges(&s), vec![0]);
        assert_eq!(g.cut_edges(&s), vec![1, 2]);
    }
}
