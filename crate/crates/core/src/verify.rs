//! Desk-scale certification of descriptions: validity on enumerated
//! vertices, facetness by affine rank, completeness by vertex enumeration,
//! and the monotonization identity.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlp::{
    affine_rank, facet_enumeration, feasibility_combination, vertex_enumeration, Feasibility,
    HPolytope,
};
use crate::inequalities::{build, system, violation, FamilyInstance, LinearInequality, Sense};
use crate::problem::{vertex_set, Limits, QPoint, QProblem, Variant};
use crate::rational::{int, one, zero, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub inequality: LinearInequality,
    pub point: QPoint,
    pub amount: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub rows: usize,
    pub points: usize,
    pub violations: Vec<Witness>,
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every row on every point.
pub fn validity_of_rows(rows: &[LinearInequality], points: &[QPoint]) -> ValidityReport {
    let mut violations = Vec::new();
    for r in rows {
        for pt in points {
            let v = violation(r, pt);
            if v > zero() {
                violations.push(Witness {
                    inequality: r.clone(),
                    point: pt.clone(),
                    amount: v,
                });
            }
        }
    }
    ValidityReport {
        rows: rows.len(),
        points: points.len(),
        violations,
    }
}

/// Every vertex of the variant satisfies every row of its description.
pub fn check_validity(p: &QProblem, variant: Variant, limits: &Limits) -> Result<ValidityReport> {
    Ok(validity_of_rows(
        &system(p, variant),
        &vertex_set(p, variant, limits)?,
    ))
}

/// Copy of `rows` with the right-hand side of row `index` lowered by one.
pub fn corrupt_rhs(rows: &[LinearInequality], index: usize) -> Vec<LinearInequality> {
    let mut out = rows.to_vec();
    out[index] = out[index].with_rhs(&out[index].rhs - one());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FacetVerdict {
    Facet,
    NotFacet(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReport {
    pub instance: FamilyInstance,
    /// Affine dimension of the polytope.
    pub dim: usize,
    pub tight: usize,
    /// Affine dimension spanned by the tight vertices.
    pub tight_dim: Option<usize>,
    pub verdict: FacetVerdict,
}

impl FacetReport {
    pub fn is_facet(&self) -> bool {
        self.verdict == FacetVerdict::Facet
    }
}

/// Facet test of one row against an explicit vertex list.
pub fn facet_of_row(row: &LinearInequality, points: &[QPoint]) -> FacetReport {
    let coords: Vec<Vec<Rational>> = points.iter().map(QPoint::coords).collect();
    let dim = affine_rank(&coords).unwrap_or(0);
    let mut tight = Vec::new();
    let mut verdict = None;
    for (pt, c) in points.iter().zip(&coords) {
        let v = violation(row, pt);
        if v > zero() {
            verdict = Some(FacetVerdict::NotFacet(format!(
                "invalid: violated by {}",
                v
            )));
            break;
        }
        if v.is_zero() {
            tight.push(c.clone());
        }
    }
    let tight_dim = affine_rank(&tight);
    let verdict = verdict.unwrap_or_else(|| {
        if row.sense == Sense::Eq {
            FacetVerdict::NotFacet("equation".into())
        } else if tight.is_empty() {
            FacetVerdict::NotFacet("no tight vertex".into())
        } else if tight.len() == points.len() {
            FacetVerdict::NotFacet("tight on every vertex".into())
        } else if dim == 0 || tight_dim != Some(dim - 1) {
            FacetVerdict::NotFacet(format!(
                "tight vertices span dimension {}, facets need {}",
                tight_dim.unwrap_or(0),
                dim.saturating_sub(1)
            ))
        } else {
            FacetVerdict::Facet
        }
    });
    FacetReport {
        instance: row.tag.clone(),
        dim,
        tight: tight.len(),
        tight_dim,
        verdict,
    }
}

pub fn check_facet(
    p: &QProblem,
    inst: &FamilyInstance,
    variant: Variant,
    limits: &Limits,
) -> Result<FacetReport> {
    let row = build(inst, p)?;
    Ok(facet_of_row(&row, &vertex_set(p, variant, limits)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub expected: usize,
    pub found: usize,
    /// Expected points that are not vertices of the H-description.
    pub missing: Vec<QPoint>,
    /// Vertices of the H-description that are not expected.
    pub extra: Vec<QPoint>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn fractional_extra(&self) -> Vec<&QPoint> {
        self.extra.iter().filter(|p| !p.is_integral()).collect()
    }
}

/// Compares the vertices of `rows` (over `edges` x-variables and y) with `expected`.
pub fn completeness_of_rows(
    edges: usize,
    rows: &[LinearInequality],
    expected: &[QPoint],
    limits: &Limits,
) -> Result<CompletenessReport> {
    let h = HPolytope::from_inequalities(edges, rows);
    compare_vertices(&h, expected, limits)
}

fn compare_vertices(
    h: &HPolytope,
    expected: &[QPoint],
    limits: &Limits,
) -> Result<CompletenessReport> {
    let found: BTreeSet<Vec<Rational>> =
        vertex_enumeration(h, limits)?.points.into_iter().collect();
    let want: BTreeSet<Vec<Rational>> = expected.iter().map(QPoint::coords).collect();
    Ok(CompletenessReport {
        expected: want.len(),
        found: found.len(),
        missing: want
            .difference(&found)
            .cloned()
            .map(QPoint::from_coords)
            .collect(),
        extra: found
            .difference(&want)
            .cloned()
            .map(QPoint::from_coords)
            .collect(),
    })
}

/// Points of `points` that are not convex combinations of the others.
pub fn extreme_points(points: &[QPoint]) -> Vec<QPoint> {
    let coords: Vec<Vec<Rational>> = points.iter().map(QPoint::coords).collect();
    points
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let others: Vec<Vec<Rational>> = coords
                .iter()
                .enumerate()
                .filter(|&(j, c)| j != i && *c != coords[i])
                .map(|(_, c)| c.clone())
                .collect();
            others.is_empty()
                || matches!(
                    feasibility_combination(&coords[i], &others),
                    Feasibility::Outside { .. }
                )
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// The H-description of `variant` has exactly the enumerated vertices.
pub fn check_completeness(
    p: &QProblem,
    variant: Variant,
    limits: &Limits,
) -> Result<CompletenessReport> {
    completeness_of_rows(
        p.edge_count(),
        &system(p, variant),
        &vertex_set(p, variant, limits)?,
        limits,
    )
}

/// The rows of `variant` without the instances selected by `drop`.
pub fn weakened_system(
    p: &QProblem,
    variant: Variant,
    drop: impl Fn(&FamilyInstance) -> bool,
) -> Vec<LinearInequality> {
    system(p, variant)
        .into_iter()
        .filter(|r| !drop(&r.tag))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub hull: Vec<Vec<Rational>>,
    /// Vertices of the intersection when both coordinates are monotonized.
    pub both: Vec<Vec<Rational>>,
    /// Vertices of the intersection when only the first coordinate is.
    pub first_only: Vec<Vec<Rational>>,
}

impl CounterexampleReport {
    /// Both-coordinate intersection is strictly larger while the
    /// single-coordinate one gives the hull back.
    pub fn behaves_as_stated(&self) -> bool {
        let hull: BTreeSet<_> = self.hull.iter().collect();
        let both: BTreeSet<_> = self.both.iter().collect();
        let first: BTreeSet<_> = self.first_only.iter().collect();
        hull.is_subset(&both) && both.len() > hull.len() && first == hull
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonizationReport {
    /// Vertices of the down rows together with the up rows versus P^1Q.
    pub descriptions: CompletenessReport,
    /// Vertices of conv(V) + cone(e_y) intersected with conv(V) + cone(−e_y) versus V.
    pub hulls: CompletenessReport,
    pub counterexample: CounterexampleReport,
}

impl MonotonizationReport {
    pub fn passed(&self) -> bool {
        self.descriptions.passed() && self.hulls.passed() && self.counterexample.behaves_as_stated()
    }
}

fn unit(d: usize, i: usize, sign: i64) -> Vec<Rational> {
    let mut v = vec![zero(); d];
    v[i] = int(sign);
    v
}

/// Vertices of (conv(points) + cone(up)) ∩ (conv(points) + cone(down)).
fn monotonized_intersection(
    points: &[Vec<Rational>],
    up: &[Vec<Rational>],
    down: &[Vec<Rational>],
    limits: &Limits,
) -> Result<Vec<Vec<Rational>>> {
    let a = facet_enumeration(points, up)?;
    let b = facet_enumeration(points, down)?;
    let mut h = a;
    h.rows.extend(b.rows);
    Ok(vertex_enumeration(&h, limits)?.points)
}

/// conv{(0,0),(1,1)} monotonized in both coordinates, and in the first only.
pub fn two_variable_counterexample(limits: &Limits) -> Result<CounterexampleReport> {
    let hull = vec![vec![zero(), zero()], vec![one(), one()]];
    let both = monotonized_intersection(
        &hull,
        &[unit(2, 0, 1), unit(2, 1, 1)],
        &[unit(2, 0, -1), unit(2, 1, -1)],
        limits,
    )?;
    let first_only = monotonized_intersection(&hull, &[unit(2, 0, 1)], &[unit(2, 0, -1)], limits)?;
    Ok(CounterexampleReport {
        hull,
        both,
        first_only,
    })
}

pub fn check_monotonization_identity(
    p: &QProblem,
    limits: &Limits,
) -> Result<MonotonizationReport> {
    if p.edge_count() + 1 > limits.max_dim {
        return Err(Error::TooLarge {
            what: "dimension",
            size: p.edge_count() + 1,
            limit: limits.max_dim,
        });
    }
    let exact = vertex_set(p, Variant::Exact, limits)?;
    let mut rows = system(p, Variant::Down);
    let seen: BTreeSet<FamilyInstance> = rows.iter().map(|r| r.tag.clone()).collect();
    rows.extend(
        system(p, Variant::Up)
            .into_iter()
            .filter(|r| !seen.contains(&r.tag)),
    );
    let descriptions = completeness_of_rows(p.edge_count(), &rows, &exact, limits)?;

    let coords: Vec<Vec<Rational>> = exact.iter().map(QPoint::coords).collect();
    let d = p.edge_count() + 1;
    let y = p.edge_count();
    let verts = monotonized_intersection(&coords, &[unit(d, y, 1)], &[unit(d, y, -1)], limits)?;
    let want: BTreeSet<Vec<Rational>> = coords.iter().cloned().collect();
    let got: BTreeSet<Vec<Rational>> = verts.into_iter().collect();
    let hulls = CompletenessReport {
        expected: want.len(),
        found: got.len(),
        missing: want
            .difference(&got)
            .cloned()
            .map(QPoint::from_coords)
            .collect(),
        extra: got
            .difference(&want)
            .cloned()
            .map(QPoint::from_coords)
            .collect(),
    };
    Ok(MonotonizationReport {
        descriptions,
        hulls,
        counterexample: two_variable_counterexample(limits)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::enumerate_family;
    use crate::inequalities::Family;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn validity_k22_exact_and_k32_down() {
        let p = QProblem::standard(2, 2).unwrap();
        assert!(check_validity(&p, Variant::Exact, &lim()).unwrap().passed());
        let q = QProblem::standard(3, 2).unwrap();
        assert!(check_validity(&q, Variant::Down, &lim()).unwrap().passed());
    }

    #[test]
    fn corrupted_rhs_fails() {
        let p = QProblem::standard(2, 2).unwrap();
        let rows = system(&p, Variant::Exact);
        let pts = vertex_set(&p, Variant::Exact, &lim()).unwrap();
        for i in 0..rows.len() {
            let r = validity_of_rows(&corrupt_rhs(&rows, i), &pts);
            assert!(!r.passed(), "row {i}");
        }
    }

    #[test]
    fn facet_examples() {
        let p = QProblem::standard(2, 2).unwrap();
        let y_up = check_facet(&p, &FamilyInstance::YUpper, Variant::Down, &lim()).unwrap();
        assert!(!y_up.is_facet());
        assert_eq!(y_up.dim, 5);
        let e1 = FamilyInstance::NonNeg(p.e1());
        assert!(!check_facet(&p, &e1, Variant::Exact, &lim())
            .unwrap()
            .is_facet());
        assert!(check_facet(&p, &e1, Variant::Up, &lim())
            .unwrap()
            .is_facet());
        let q = QProblem::standard(3, 3).unwrap();
        for v in 0..6 {
            assert!(
                check_facet(&q, &FamilyInstance::Degree(v), Variant::Exact, &lim())
                    .unwrap()
                    .is_facet()
            );
        }
    }

    #[test]
    fn completeness_k22() {
        let p = QProblem::standard(2, 2).unwrap();
        let r = check_completeness(&p, Variant::Exact, &lim()).unwrap();
        assert!(r.passed());
        assert_eq!((r.expected, r.found), (7, 7));
    }

    #[test]
    fn dropping_up_family_leaves_fractional_vertex() {
        let p = QProblem::standard(2, 2).unwrap();
        let rows = weakened_system(&p, Variant::Exact, |t| matches!(t, FamilyInstance::Up(_)));
        let pts = vertex_set(&p, Variant::Exact, &lim()).unwrap();
        let r = completeness_of_rows(4, &rows, &pts, &lim()).unwrap();
        // x = chi({e1, e2}) with y = 0 becomes a vertex
        let bad = QPoint::from_coords(vec![int(1), int(0), int(0), int(1), int(0)]);
        assert_eq!(r.extra, vec![bad]);
        assert!(r.missing.is_empty());
        assert_eq!(enumerate_family(&p, Family::U, 4).len(), 2);
    }

    #[test]
    fn dropping_down_family_k32() {
        let p = QProblem::standard(3, 2).unwrap();
        let rows = weakened_system(&p, Variant::Exact, |t| matches!(t, FamilyInstance::Down(_)));
        let pts = vertex_set(&p, Variant::Exact, &lim()).unwrap();
        let r = completeness_of_rows(6, &rows, &pts, &lim()).unwrap();
        assert!(!r.fractional_extra().is_empty());
    }

    #[test]
    fn extreme_points_of_segment() {
        let pts: Vec<QPoint> = (0..3)
            .map(|k| QPoint {
                x: vec![int(k)],
                y: zero(),
            })
            .collect();
        assert_eq!(extreme_points(&pts), vec![pts[0].clone(), pts[2].clone()]);
    }

    #[test]
    fn monotonization_k22() {
        let p = QProblem::standard(2, 2).unwrap();
        let r = check_monotonization_identity(&p, &lim()).unwrap();
        assert!(r.descriptions.passed());
        assert!(r.hulls.passed());
        assert!(r.passed());
    }

    #[test]
    fn counterexample_square() {
        let r = two_variable_counterexample(&lim()).unwrap();
        assert_eq!(r.both.len(), 4);
        assert_eq!(r.first_only.len(), 2);
        assert!(r.behaves_as_stated());
    }
}
