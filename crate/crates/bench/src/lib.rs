//! Shared inputs for the criterion benches.

use qmatch_core::rational::ratio;
use qmatch_core::{QPoint, QProblem};

pub fn instance(m: usize, n: usize) -> QProblem {
    QProblem::standard(m, n).expect("m, n >= 2")
}

/// Uniform fractional point x_e = 1/max(m,n), y = x_{e1}/2: inside the
/// matching polytope, usually cut by some quadratic inequality.
pub fn uniform_point(p: &QProblem) -> QPoint {
    let d = p.m().max(p.n()) as i64;
    QPoint {
        x: vec![ratio(1, d); p.edge_count()],
        y: ratio(1, 2 * d),
    }
}
