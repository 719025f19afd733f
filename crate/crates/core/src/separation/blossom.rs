use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::{degree_value, GeneralGraph, NodeSet};
use crate::rational::{format_rational, one, ratio, Rational};

use super::flow::min_odd_cut;

/// Checks x ≥ 0 and x(δ(v)) ≤ 1.
pub fn check_degree_bounds(g: &GeneralGraph, x: &[Rational]) -> Result<()> {
    if x.len() != g.edge_count() {
        return Err(Error::Precondition("one value per edge required".into()));
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| x[e].is_negative()) {
        return Err(Error::Precondition(format!(
            "negative value {} on edge {}",
            format_rational(&x[e]),
            g.format_edge(e)
        )));
    }
    for v in 0..g.node_count() {
        let d = degree_value(g, x, v);
        if d > one() {
            return Err(Error::Precondition(format!(
                "degree of {} is {} > 1",
                g.label(v),
                format_rational(&d)
            )));
        }
    }
    Ok(())
}

/// Most violated blossom inequality x(E[S]) ≤ (|S|−1)/2, if any.
///
/// An apex z joined to every node v with capacity 1 − x(δ(v)) turns the
/// blossom slack of S into (cut(S) − 1)/2, so a minimum T-odd cut finds it.
pub fn separate_blossom(g: &GeneralGraph, x: &[Rational]) -> Result<Option<(NodeSet, Rational)>> {
    check_degree_bounds(g, x)?;
    let n = g.node_count();
    if n == 0 {
        return Ok(None);
    }
    let z = n;
    let mut labels = g.labels().to_vec();
    labels.push("z".into());
    let apex = GeneralGraph::new(
        labels,
        g.edges().iter().copied().chain((0..n).map(|v| (v, z))),
    )?;
    let mut cap = vec![crate::rational::zero(); apex.edge_count()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        cap[apex.edge_between(a, b).expect("copied edge")] = x[e].clone();
    }
    for v in 0..n {
        cap[apex.edge_between(v, z).expect("apex edge")] = one() - degree_value(g, x, v);
    }
    let mut t: NodeSet = (0..n).collect();
    if n % 2 == 1 {
        t.insert(z);
    }
    let (s, value) = min_odd_cut(&apex, &cap, &t)?;
    debug_assert!(!s.contains(&z));
    let viol = (one() - value) * ratio(1, 2);
    Ok(viol.is_positive().then_some((s, viol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, zero};

    fn cycle(n: usize) -> GeneralGraph {
        GeneralGraph::unlabelled(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn triangle_half() {
        let g = cycle(3);
        let (s, v) = separate_blossom(&g, &vec![ratio(1, 2); 3])
            .unwrap()
            .unwrap();
        assert_eq!(s, (0..3).collect());
        assert_eq!(v, ratio(1, 2));
    }

    #[test]
    fn five_cycle_half() {
        let g = cycle(5);
        let (s, v) = separate_blossom(&g, &vec![ratio(1, 2); 5])
            .unwrap()
            .unwrap();
        assert_eq!(s, (0..5).collect());
        assert_eq!(v, ratio(1, 2));
    }

    #[test]
    fn integral_matching_is_inside() {
        let g = cycle(5);
        let mut x = vec![zero(); 5];
        x[g.edge_between(0, 1).unwrap()] = int(1);
        x[g.edge_between(2, 3).unwrap()] = int(1);
        assert!(separate_blossom(&g, &x).unwrap().is_none());
    }

    #[test]
    fn rejects_degree_violation() {
        let g = cycle(3);
        assert!(separate_blossom(&g, &vec![int(1); 3]).is_err());
        assert!(separate_blossom(&g, &[int(-1), zero(), zero()]).is_err());
    }
}
