//! Constructive convex decompositions of points on tight faces of P↓ and P↑
//! into vertices of P^1Q, following the gadget-graph constructions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlp::{feasibility_combination, Feasibility};
use crate::graph::{chi, enumerate_matchings, EdgeId, GeneralGraph, Matching};
use crate::inequalities::{
    base_instances, blossom_inequality, build, enumerate_family, matching_base_rows, most_violated,
    violation, Family, FamilyInstance, LinearInequality,
};
use crate::problem::{ConvexCombination, Limits, QPoint, QProblem, Term, Variant};
use crate::rational::{format_rational, lcm_of_denominators, zero, Rational};
use crate::separation::{
    build_down_gadget, build_up_gadget, separate_blossom, DownGadget, UpGadget,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMatching {
    pub matching: Matching,
    pub weight: Rational,
}

/// Σ weight·χ(M) over matchings of a single graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingCombination {
    pub terms: Vec<WeightedMatching>,
}

impl MatchingCombination {
    pub fn point(&self, edges: usize) -> Vec<Rational> {
        let mut x = vec![zero(); edges];
        for t in &self.terms {
            for &e in t.matching.edges() {
                x[e] += &t.weight;
            }
        }
        x
    }

    pub fn total_weight(&self) -> Rational {
        self.terms.iter().map(|t| &t.weight).sum()
    }

    /// Least common denominator of the multipliers.
    pub fn k(&self) -> BigInt {
        lcm_of_denominators(self.terms.iter().map(|t| &t.weight))
    }

    /// k together with the multiplicity of each matching in k·x̄ = Σ_j χ(M̄_j).
    pub fn multiset(&self) -> (BigInt, Vec<(Matching, BigInt)>) {
        let k = self.k();
        let kr = Rational::from_integer(k.clone());
        let counts = self
            .normalized()
            .terms
            .into_iter()
            .map(|t| (t.matching, (t.weight * &kr).to_integer()))
            .collect();
        (k, counts)
    }

    /// Merges repeated matchings and sorts by matching.
    pub fn normalized(&self) -> Self {
        let mut map: BTreeMap<Matching, Rational> = BTreeMap::new();
        for t in &self.terms {
            *map.entry(t.matching.clone()).or_insert_with(zero) += &t.weight;
        }
        MatchingCombination {
            terms: map
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(matching, weight)| WeightedMatching { matching, weight })
                .collect(),
        }
    }
}

fn not_in_polytope(ineq: &LinearInequality, v: Rational) -> Error {
    Error::NotInMatchingPolytope {
        inequality: Box::new(ineq.clone()),
        violation: format_rational(&v),
    }
}

/// Writes `xbar` as a convex combination of matchings of `g` by an exact LP
/// over all matchings. Membership is checked first, so a point outside the
/// matching polytope is reported with a violated inequality.
pub fn decompose_matching(
    g: &GeneralGraph,
    xbar: &[Rational],
    limits: &Limits,
) -> Result<MatchingCombination> {
    if xbar.len() != g.edge_count() {
        return Err(Error::Precondition("one value per edge required".into()));
    }
    let pt = QPoint {
        x: xbar.to_vec(),
        y: zero(),
    };
    let rows = matching_base_rows(g);
    if let Some((r, v)) = most_violated(&rows, &pt) {
        return Err(not_in_polytope(r, v));
    }
    if let Some((s, v)) = separate_blossom(g, xbar)? {
        return Err(not_in_polytope(&blossom_inequality(g, &s)?, v));
    }
    let matchings = enumerate_matchings(g, limits.max_edges)?;
    let gens = matchings
        .iter()
        .map(|m| chi(m, g))
        .collect::<Result<Vec<_>>>()?;
    match feasibility_combination(xbar, &gens) {
        Feasibility::Inside(c) => Ok(MatchingCombination {
            terms: c
                .into_iter()
                .map(|(i, weight)| WeightedMatching {
                    matching: matchings[i].clone(),
                    weight,
                })
                .collect(),
        }),
        Feasibility::Outside { .. } => Err(Error::Internal(
            "point satisfies all blossom inequalities but no matching combination exists".into(),
        )),
    }
}

/// Edge set of the connected component of `d` that contains `start`.
fn component(g: &GeneralGraph, d: &BTreeSet<EdgeId>, start: EdgeId) -> BTreeSet<EdgeId> {
    let mut comp = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        let (a, b) = g.endpoints(e);
        for v in [a, b] {
            for &f in g.incident(v) {
                if d.contains(&f) && comp.insert(f) {
                    queue.push_back(f);
                }
            }
        }
    }
    comp
}

/// Result of an exchange surgery: the final combination and every
/// intermediate one, starting with the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryOutcome {
    pub result: MatchingCombination,
    pub history: Vec<MatchingCombination>,
}

impl SurgeryOutcome {
    pub fn steps(&self) -> usize {
        self.history.len() - 1
    }
}

/// Moves weight min(w_i, w_j) of terms i and j to M_i Δ C and M_j Δ C.
fn exchange(
    g: &GeneralGraph,
    comb: &mut MatchingCombination,
    i: usize,
    j: usize,
    c: &BTreeSet<EdgeId>,
) -> Result<()> {
    let before = comb.point(g.edge_count());
    let (ti, tj) = (comb.terms[i].clone(), comb.terms[j].clone());
    let d = ti.weight.clone().min(tj.weight.clone());
    comb.terms[i] = WeightedMatching {
        matching: Matching::new(g, ti.matching.symmetric_difference(c))?,
        weight: d.clone(),
    };
    comb.terms[j] = WeightedMatching {
        matching: Matching::new(g, tj.matching.symmetric_difference(c))?,
        weight: d.clone(),
    };
    for t in [ti, tj] {
        let rest = &t.weight - &d;
        if rest.is_positive() {
            comb.terms.push(WeightedMatching {
                matching: t.matching,
                weight: rest,
            });
        }
    }
    if comb.point(g.edge_count()) != before {
        return Err(Error::Internal("exchange changed the weighted sum".into()));
    }
    Ok(())
}

/// Exchanges components until every term holds both or neither of e_u, e_w.
pub fn surgery_down(gd: &DownGadget, comb: &MatchingCombination) -> Result<SurgeryOutcome> {
    let g = &gd.graph;
    let x = comb.point(g.edge_count());
    if x[gd.eu] != x[gd.ew] {
        return Err(Error::Precondition(
            "e_u and e_w carry different weight".into(),
        ));
    }
    let mut cur = comb.clone();
    let mut history = vec![cur.clone()];
    loop {
        let has = |t: &WeightedMatching, e| t.matching.contains(e);
        let ju = cur
            .terms
            .iter()
            .position(|t| has(t, gd.eu) && !has(t, gd.ew));
        let jw = cur
            .terms
            .iter()
            .position(|t| has(t, gd.ew) && !has(t, gd.eu));
        let (i, j) = match (ju, jw) {
            (None, None) => break,
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::Internal("unbalanced J_u and J_w".into())),
        };
        let d = cur.terms[i]
            .matching
            .symmetric_difference(cur.terms[j].matching.edges());
        let c = component(g, &d, gd.eu);
        if c.contains(&gd.ew) {
            return Err(Error::Internal(
                "e_u and e_w in one alternating component".into(),
            ));
        }
        exchange(g, &mut cur, i, j, &c)?;
        history.push(cur.clone());
    }
    Ok(SurgeryOutcome {
        result: cur,
        history,
    })
}

/// Every matching covers a and b and holds at most one of e1, e2, {a,b}.
fn check_up_shape(gd: &UpGadget, comb: &MatchingCombination) -> Result<()> {
    for t in &comb.terms {
        let m = &t.matching;
        if !m.covers(&gd.graph, gd.a) || !m.covers(&gd.graph, gd.b) {
            return Err(Error::Precondition(format!(
                "gadget matching {m} leaves a or b exposed; no Up(S), S in U, is tight"
            )));
        }
        if [gd.e1, gd.e2, gd.ab]
            .iter()
            .filter(|&&e| m.contains(e))
            .count()
            > 1
        {
            return Err(Error::Precondition(format!(
                "gadget matching {m} holds two of e1, e2, ab; no Up(S), S in U, is tight"
            )));
        }
    }
    Ok(())
}

/// Exchanges components until no term holds {u1,a},{u2,b} or {w1,b},{w2,a}.
pub fn surgery_up(gd: &UpGadget, comb: &MatchingCombination) -> Result<SurgeryOutcome> {
    check_up_shape(gd, comb)?;
    let g = &gd.graph;
    let x = comb.point(g.edge_count());
    if x[gd.u1a] != x[gd.w1b] {
        return Err(Error::Precondition(
            "{u1,a} and {w1,b} carry different weight".into(),
        ));
    }
    let mut cur = comb.clone();
    let mut history = vec![cur.clone()];
    loop {
        let has = |t: &WeightedMatching, e, f| t.matching.contains(e) && t.matching.contains(f);
        let ju = cur.terms.iter().position(|t| has(t, gd.u1a, gd.u2b));
        let jw = cur.terms.iter().position(|t| has(t, gd.w1b, gd.w2a));
        let (i, j) = match (ju, jw) {
            (None, None) => break,
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::Internal("unbalanced J_u and J_w".into())),
        };
        let d = cur.terms[i]
            .matching
            .symmetric_difference(cur.terms[j].matching.edges());
        let c = component(g, &d, gd.u2b);
        if c.contains(&gd.u1a) {
            return Err(Error::Internal(
                "{u1,a} and {u2,b} in one alternating component".into(),
            ));
        }
        exchange(g, &mut cur, i, j, &c)?;
        history.push(cur.clone());
    }
    Ok(SurgeryOutcome {
        result: cur,
        history,
    })
}

/// A decomposition together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaDecomposition {
    pub combination: ConvexCombination,
    /// The tight inequalities the construction relies on; the first is the
    /// one reported.
    pub certificates: Vec<FamilyInstance>,
    /// Matching combination of the gadget vector before surgery.
    pub gadget: MatchingCombination,
    pub surgery: SurgeryOutcome,
}

fn check_rows(
    p: &QProblem,
    pt: &QPoint,
    insts: &[FamilyInstance],
) -> Result<Vec<LinearInequality>> {
    if pt.x.len() != p.edge_count() {
        return Err(Error::Precondition(format!(
            "point has {} edge entries, instance has {}",
            pt.x.len(),
            p.edge_count()
        )));
    }
    let rows: Vec<LinearInequality> = insts.iter().map(|i| build(i, p)).collect::<Result<_>>()?;
    if let Some((r, v)) = most_violated(&rows, pt) {
        return Err(Error::BaseConstraintViolated(format!(
            "{} is violated by {}",
            r.tag.describe(p),
            format_rational(&v)
        )));
    }
    Ok(rows)
}

fn tight(
    rows: &[LinearInequality],
    pt: &QPoint,
    accept: impl Fn(&FamilyInstance) -> bool,
) -> Vec<FamilyInstance> {
    rows.iter()
        .filter(|r| accept(&r.tag) && violation(r, pt).is_zero())
        .map(|r| r.tag.clone())
        .collect()
}

fn to_original(p: &QProblem, edges: impl IntoIterator<Item = Option<EdgeId>>) -> Result<Matching> {
    let edges: Option<Vec<EdgeId>> = edges.into_iter().collect();
    let edges =
        edges.ok_or_else(|| Error::Internal("gadget edge left in a final matching".into()))?;
    Matching::new(p.graph(), edges)
}

/// Decomposes a point of P↓ that is tight in StdLin(i) or in Down(S) for
/// some S ∈ D into vertices of P^1Q.
pub fn lemma_down_decompose(
    p: &QProblem,
    pt: &QPoint,
    limits: &Limits,
) -> Result<LemmaDecomposition> {
    let mut insts = base_instances(p, false, true);
    insts.extend(enumerate_family(p, Family::D, p.node_count()));
    let rows = check_rows(p, pt, &insts)?;
    let certificates = tight(&rows, pt, |t| {
        matches!(t, FamilyInstance::StdLin(_) | FamilyInstance::Down(_))
    });
    if certificates.is_empty() {
        return Err(Error::NoTightCertificate(
            "neither StdLin(1), StdLin(2) nor any Down(S) with S in D is tight".into(),
        ));
    }

    let gd = build_down_gadget(p, pt)?;
    let gadget = decompose_matching(&gd.graph, &gd.xbar, limits)?;
    let surgery = surgery_down(&gd, &gadget)?;

    for (t, certificate) in surgery
        .result
        .terms
        .iter()
        .flat_map(|t| certificates.iter().map(move |c| (t, c)))
    {
        let m = &t.matching;
        let ok = match certificate {
            FamilyInstance::StdLin(i) => !m.contains(if *i == 1 { gd.e1 } else { gd.e2 }),
            FamilyInstance::Down(s) => {
                gd.graph
                    .cut_edges(s)
                    .iter()
                    .filter(|&&e| m.contains(e))
                    .count()
                    <= 1
            }
            _ => true,
        };
        if !ok {
            return Err(Error::Internal(format!(
                "gadget matching {m} contradicts the tight {}",
                certificate.describe(p)
            )));
        }
    }

    let flip: BTreeSet<EdgeId> = [gd.e1, gd.e2, gd.eu, gd.ew].into_iter().collect();
    let mut terms = Vec::new();
    for t in &surgery.result.terms {
        let in_j = t.matching.contains(gd.eu);
        let edges = if in_j {
            t.matching.symmetric_difference(&flip)
        } else {
            t.matching.edges().clone()
        };
        terms.push(Term {
            matching: to_original(p, edges.into_iter().map(|e| gd.original_edge(e)))?,
            y: in_j,
            weight: t.weight.clone(),
        });
    }
    let combination = ConvexCombination { terms }.normalized();
    combination.validate(p, pt, Variant::Exact)?;
    Ok(LemmaDecomposition {
        combination,
        certificates,
        gadget,
        surgery,
    })
}

/// Decomposes a point of P↑ that is tight in Up(S*) for some S* ∈ U into
/// vertices of P^1Q.
pub fn lemma_up_decompose(
    p: &QProblem,
    pt: &QPoint,
    limits: &Limits,
) -> Result<LemmaDecomposition> {
    let mut insts = base_instances(p, false, false);
    insts.extend(enumerate_family(p, Family::U, p.node_count()));
    let rows = check_rows(p, pt, &insts)?;
    let certificates = tight(&rows, pt, |t| matches!(t, FamilyInstance::Up(_)));
    if certificates.is_empty() {
        return Err(Error::NoTightCertificate(
            "no Up(S) with S in U is tight".into(),
        ));
    }

    let gd = build_up_gadget(p, pt)?;
    let gadget = decompose_matching(&gd.graph, &gd.xbar, limits)?;
    let surgery = surgery_up(&gd, &gadget)?;

    let c1: BTreeSet<EdgeId> = gd.cycle1().into_iter().collect();
    let c2: BTreeSet<EdgeId> = gd.cycle2().into_iter().collect();
    let mut terms = Vec::new();
    for t in &surgery.result.terms {
        let m = &t.matching;
        let in_j1 = m.contains(gd.u1a) && m.contains(gd.w1b);
        let in_j2 = m.contains(gd.u2b) && m.contains(gd.w2a);
        let edges = if in_j1 {
            m.symmetric_difference(&c1)
        } else if in_j2 {
            m.symmetric_difference(&c2)
        } else if m.contains(gd.ab) {
            m.edges().clone()
        } else {
            return Err(Error::Internal(format!(
                "gadget matching {m} is in none of J_1, J_2, N"
            )));
        };
        if !edges.contains(&gd.ab) {
            return Err(Error::Internal(format!(
                "{{a,b}} missing after undoing cycles on {m}"
            )));
        }
        let y = m.contains(gd.e1) || m.contains(gd.e2);
        let matching = to_original(
            p,
            edges
                .into_iter()
                .filter(|&e| e != gd.ab)
                .map(|e| gd.original_edge(e)),
        )?;
        if y && !(in_j1 || in_j2) {
            return Err(Error::Internal(format!(
                "gadget matching {m} has y = 1 outside J_1"
            )));
        }
        terms.push(Term {
            matching,
            y,
            weight: t.weight.clone(),
        });
    }
    let combination = ConvexCombination { terms }.normalized();
    combination.validate(p, pt, Variant::Exact)?;
    Ok(LemmaDecomposition {
        combination,
        certificates,
        gadget,
        surgery,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeSet;
    use crate::rational::{int, one, ratio};

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    fn m(g: &GeneralGraph, pairs: &[(usize, usize)]) -> Matching {
        Matching::new(g, pairs.iter().map(|&(a, b)| g.edge_between(a, b).unwrap())).unwrap()
    }

    #[test]
    fn integral_point_is_single_term() {
        let p = QProblem::standard(2, 2).unwrap();
        let x = chi(&m(p.graph(), &[(0, 2), (1, 3)]), p.graph()).unwrap();
        let c = decompose_matching(p.graph(), &x, &Limits::default()).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert_eq!(c.terms[0].weight, one());
        assert_eq!(c.k(), BigInt::from(1));
    }

    #[test]
    fn half_k22() {
        let p = QProblem::standard(2, 2).unwrap();
        let x = vec![ratio(1, 2); 4];
        let c = decompose_matching(p.graph(), &x, &Limits::default()).unwrap();
        assert_eq!(c.point(4), x);
        assert_eq!(c.total_weight(), one());
        assert!(c.terms.len() >= 2 && c.terms.len() <= 5);
        let (k, counts) = c.multiset();
        assert_eq!(k, BigInt::from(2));
        let total: BigInt = counts.iter().map(|(_, n)| n.clone()).sum();
        assert_eq!(total, k);
    }

    #[test]
    fn triangle_is_rejected_with_blossom() {
        let g = GeneralGraph::unlabelled(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let err = decompose_matching(
            &g,
            &[ratio(1, 2), ratio(1, 2), ratio(1, 2)],
            &Limits::default(),
        )
        .unwrap_err();
        match err {
            Error::NotInMatchingPolytope {
                inequality,
                violation,
            } => {
                assert_eq!(inequality.tag, FamilyInstance::Blossom(set(&[0, 1, 2])));
                assert_eq!(violation, "1/2");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn surgery_down_swaps_once() {
        // Six-node gadget on K_{3,3}: one matching holds e_u only, the other e_w only.
        let p = QProblem::standard(3, 3).unwrap();
        let gd = DownGadget::layout(&p);
        let g = &gd.graph;
        let u3w3 = g.edge_between(2, 5).unwrap();
        let mu_only = Matching::new(g, [gd.eu, g.edge_between(2, 3).unwrap()]).unwrap();
        let mw = Matching::new(g, [gd.ew, u3w3]).unwrap();
        let comb = MatchingCombination {
            terms: vec![
                WeightedMatching {
                    matching: mu_only,
                    weight: ratio(1, 2),
                },
                WeightedMatching {
                    matching: mw,
                    weight: ratio(1, 2),
                },
            ],
        };
        let out = surgery_down(&gd, &comb).unwrap();
        assert_eq!(out.steps(), 1);
        assert_eq!(out.result.point(g.edge_count()), comb.point(g.edge_count()));
        let both = out
            .result
            .terms
            .iter()
            .filter(|t| t.matching.contains(gd.eu) && t.matching.contains(gd.ew))
            .count();
        let neither = out
            .result
            .terms
            .iter()
            .filter(|t| !t.matching.contains(gd.eu) && !t.matching.contains(gd.ew))
            .count();
        assert_eq!((both, neither), (1, 1));
    }

    #[test]
    fn surgery_down_keeps_balanced_input() {
        let p = QProblem::standard(2, 2).unwrap();
        let gd = DownGadget::layout(&p);
        let comb = MatchingCombination {
            terms: vec![WeightedMatching {
                matching: Matching::new(&gd.graph, [gd.eu, gd.ew]).unwrap(),
                weight: one(),
            }],
        };
        let out = surgery_down(&gd, &comb).unwrap();
        assert_eq!(out.steps(), 0);
        assert_eq!(out.result, comb);
    }

    #[test]
    fn surgery_up_exchanges_along_u2b() {
        let p = QProblem::standard(3, 3).unwrap();
        let gd = UpGadget::layout(&p);
        let g = &gd.graph;
        let j = Matching::new(g, [gd.u1a, gd.u2b, g.edge_between(2, 3).unwrap()]).unwrap();
        let jp = Matching::new(g, [gd.w1b, gd.w2a, g.edge_between(1, 5).unwrap()]).unwrap();
        let comb = MatchingCombination {
            terms: vec![
                WeightedMatching {
                    matching: j,
                    weight: ratio(1, 2),
                },
                WeightedMatching {
                    matching: jp,
                    weight: ratio(1, 2),
                },
            ],
        };
        let out = surgery_up(&gd, &comb).unwrap();
        assert_eq!(out.steps(), 1);
        assert_eq!(out.result.point(g.edge_count()), comb.point(g.edge_count()));
        for t in &out.result.terms {
            let mm = &t.matching;
            assert!(!(mm.contains(gd.u1a) && mm.contains(gd.u2b)));
            assert!(!(mm.contains(gd.w1b) && mm.contains(gd.w2a)));
        }
        assert!(out
            .result
            .terms
            .iter()
            .any(|t| t.matching.contains(gd.u1a) && t.matching.contains(gd.w1b)));
        assert!(out
            .result
            .terms
            .iter()
            .any(|t| t.matching.contains(gd.u2b) && t.matching.contains(gd.w2a)));
    }

    #[test]
    fn surgery_up_rejects_exposed_apex() {
        let p = QProblem::standard(2, 2).unwrap();
        let gd = UpGadget::layout(&p);
        let comb = MatchingCombination {
            terms: vec![WeightedMatching {
                matching: Matching::empty(),
                weight: one(),
            }],
        };
        assert!(matches!(
            surgery_up(&gd, &comb),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn down_vertex_is_itself() {
        let p = QProblem::standard(2, 2).unwrap();
        let mm = Matching::new(p.graph(), [p.e1(), p.e2()]).unwrap();
        let pt = QPoint::from_matching(4, &mm, true);
        let d = lemma_down_decompose(&p, &pt, &Limits::default()).unwrap();
        assert_eq!(d.combination.terms.len(), 1);
        assert_eq!(d.combination.terms[0].matching, mm);
        assert!(d.combination.terms[0].y);
        assert!(matches!(d.certificates[0], FamilyInstance::StdLin(_)));
    }

    #[test]
    fn down_k32_stdlin() {
        let p = QProblem::standard(3, 2).unwrap();
        let mut pt = QPoint::zero(6);
        pt.x[p.e1()] = ratio(1, 2);
        pt.x[p.e2()] = ratio(1, 2);
        pt.x[4] = ratio(1, 4);
        pt.x[5] = ratio(1, 4);
        pt.y = ratio(1, 2);
        let d = lemma_down_decompose(&p, &pt, &Limits::default()).unwrap();
        assert_eq!(d.certificates[0], FamilyInstance::StdLin(1));
        assert_eq!(d.combination.point(6), pt);
    }

    #[test]
    fn down_k32_tight_down_set() {
        let p = QProblem::standard(3, 2).unwrap();
        let mut pt = QPoint::zero(6);
        pt.x[4] = ratio(1, 2);
        pt.x[5] = ratio(1, 2);
        let d = lemma_down_decompose(&p, &pt, &Limits::default()).unwrap();
        assert!(d
            .certificates
            .contains(&FamilyInstance::Down(set(&[2, 3, 4]))));
        for t in &d.combination.terms {
            assert_eq!(
                t.matching
                    .edges()
                    .iter()
                    .filter(|&&e| e == 4 || e == 5)
                    .count(),
                1
            );
        }
    }

    #[test]
    fn down_rejects_untight_point() {
        let p = QProblem::standard(3, 3).unwrap();
        let mut pt = QPoint::zero(9);
        pt.x[p.e1()] = ratio(1, 2);
        pt.x[p.e2()] = ratio(1, 2);
        pt.y = ratio(1, 4);
        assert!(matches!(
            lemma_down_decompose(&p, &pt, &Limits::default()),
            Err(Error::NoTightCertificate(_))
        ));
    }

    #[test]
    fn up_vertex_is_itself() {
        let p = QProblem::standard(2, 2).unwrap();
        let mm = Matching::new(p.graph(), [p.e1(), p.e2()]).unwrap();
        let pt = QPoint::from_matching(4, &mm, true);
        let d = lemma_up_decompose(&p, &pt, &Limits::default()).unwrap();
        assert_eq!(d.certificates[0], FamilyInstance::Up(set(&[0, 3])));
        assert_eq!(d.combination.terms.len(), 1);
        assert_eq!(d.combination.terms[0].matching, mm);
    }

    #[test]
    fn up_k22_two_terms() {
        let p = QProblem::standard(2, 2).unwrap();
        let pt = QPoint {
            x: vec![ratio(1, 2); 4],
            y: ratio(1, 2),
        };
        let d = lemma_up_decompose(&p, &pt, &Limits::default()).unwrap();
        let expect = ConvexCombination {
            terms: vec![
                Term {
                    matching: Matching::new(p.graph(), [p.e1(), p.e2()]).unwrap(),
                    y: true,
                    weight: ratio(1, 2),
                },
                Term {
                    matching: Matching::new(p.graph(), [1, 2]).unwrap(),
                    y: false,
                    weight: ratio(1, 2),
                },
            ],
        }
        .normalized();
        assert_eq!(d.combination, expect);
    }

    #[test]
    fn up_rejects_untight_point() {
        let p = QProblem::standard(2, 2).unwrap();
        let pt = QPoint {
            x: vec![ratio(1, 4); 4],
            y: zero(),
        };
        assert!(matches!(
            lemma_up_decompose(&p, &pt, &Limits::default()),
            Err(Error::NoTightCertificate(_))
        ));
        let bad = QPoint {
            x: vec![int(1); 4],
            y: zero(),
        };
        assert!(matches!(
            lemma_up_decompose(&p, &bad, &Limits::default()),
            Err(Error::BaseConstraintViolated(_))
        ));
    }
}
