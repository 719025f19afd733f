//! Exact rational LP and polytope conversion.

mod dd;
mod linalg;
mod simplex;

pub use dd::{facet_enumeration, vertex_enumeration};
pub use linalg::{affine_rank, rank};
pub use simplex::{feasibility_combination, lp_solve, Feasibility, LpOutcome, Objective};

use crate::inequalities::{LinearInequality, Sense};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRow {
    pub a: Vec<Rational>,
    pub sense: Sense,
    pub b: Rational,
}

/// { z : a·z (≤ or =) b for every row }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub rows: Vec<HRow>,
}

impl HPolytope {
    pub fn new(dim: usize) -> Self {
        HPolytope {
            dim,
            rows: Vec::new(),
        }
    }

    /// Dense rows over (x, y) for inequalities on `edges` edge variables.
    pub fn from_inequalities<'a>(
        edges: usize,
        ineqs: impl IntoIterator<Item = &'a LinearInequality>,
    ) -> Self {
        let rows = ineqs
            .into_iter()
            .map(|i| HRow {
                a: i.dense(edges),
                sense: i.sense,
                b: i.rhs.clone(),
            })
            .collect();
        HPolytope {
            dim: edges + 1,
            rows,
        }
    }

    pub fn push(&mut self, a: Vec<Rational>, sense: Sense, b: Rational) {
        debug_assert_eq!(a.len(), self.dim);
        self.rows.push(HRow { a, sense, b });
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: Rational = r.a.iter().zip(z).map(|(a, x)| a * x).sum();
            match r.sense {
                Sense::Le => lhs <= r.b,
                Sense::Eq => lhs == r.b,
            }
        })
    }

    /// Indices of rows satisfied with equality at `z`.
    pub fn tight_rows(&self, z: &[Rational]) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| {
                let r = &self.rows[i];
                let lhs: Rational = r.a.iter().zip(z).map(|(a, x)| a * x).sum();
                lhs == r.b
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VPolytope {
    pub points: Vec<Vec<Rational>>,
}
