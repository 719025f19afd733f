//! Dense two-phase tableau simplex over exact rationals with Bland's rule.

use num_traits::{Signed, Zero};

use super::HPolytope;
use crate::inequalities::Sense;
use crate::rational::{one, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `duals` has one entry per row, is nonnegative on `≤` rows and satisfies
    /// dualsᵀA = s·c and dualsᵀb = s·value with s = +1 (max) or −1 (min).
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        duals: Vec<Rational>,
    },
    /// `farkas` is nonnegative on `≤` rows with farkasᵀA = 0 and farkasᵀb < 0.
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded,
}

impl LpOutcome {
    /// Re-checks the attached certificate against the problem data.
    pub fn certificate_holds(&self, c: &[Rational], h: &HPolytope, sense: Objective) -> bool {
        let combine = |w: &[Rational]| -> Vec<Rational> {
            (0..h.dim)
                .map(|j| h.rows.iter().zip(w).map(|(r, wi)| &r.a[j] * wi).sum())
                .collect()
        };
        let signs_ok = |w: &[Rational]| {
            w.len() == h.rows.len()
                && h.rows
                    .iter()
                    .zip(w)
                    .all(|(r, wi)| r.sense == Sense::Eq || !wi.is_negative())
        };
        match self {
            LpOutcome::Optimal { x, value, duals } => {
                let s = if sense == Objective::Maximize {
                    one()
                } else {
                    -one()
                };
                let target: Vec<Rational> = c.iter().map(|ci| ci * &s).collect();
                let obj: Rational = c.iter().zip(x).map(|(a, b)| a * b).sum();
                let wb: Rational = h.rows.iter().zip(duals).map(|(r, w)| &r.b * w).sum();
                h.contains(x)
                    && &obj == value
                    && signs_ok(duals)
                    && combine(duals) == target
                    && wb == value * &s
            }
            LpOutcome::Infeasible { farkas } => {
                let fb: Rational = h.rows.iter().zip(farkas).map(|(r, f)| &r.b * f).sum();
                signs_ok(farkas) && combine(farkas).iter().all(Zero::is_zero) && fb.is_negative()
            }
            LpOutcome::Unbounded => true,
        }
    }
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        if p != one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (v, pv) in self.t[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over columns where `allowed` holds. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: impl Fn(usize) -> bool) -> bool {
        let cols = cost.len();
        loop {
            let mut entering = None;
            for j in 0..cols {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                        r -= &cost[b] * &self.t[i][j];
                    }
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .sum()
    }

    /// c_B B⁻¹, read off the artificial columns starting at `art`.
    fn prices(&self, cost: &[Rational], art: usize) -> Vec<Rational> {
        (0..self.t.len())
            .map(|i| {
                self.basis
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| &cost[b] * &self.t[k][art + i])
                    .sum()
            })
            .collect()
    }
}

pub(crate) enum StdOutcome {
    Optimal { z: Vec<Rational>, y: Vec<Rational> },
    Infeasible { y: Vec<Rational> },
    Unbounded,
}

/// max c·z s.t. A z = b, z ≥ 0.
pub(crate) fn solve_standard(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> StdOutcome {
    let m = a.len();
    let n = c.len();
    let sigma: Vec<bool> = b.iter().map(|v| v.is_negative()).collect();
    let mut t = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rational> = a[i]
            .iter()
            .map(|v| if sigma[i] { -v } else { v.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { one() } else { zero() }));
        t.push(row);
        rhs.push(if sigma[i] { -&b[i] } else { b[i].clone() });
    }
    let mut tab = Tableau {
        t,
        rhs,
        basis: (n..n + m).collect(),
    };
    let flip = |y: Vec<Rational>| -> Vec<Rational> {
        y.into_iter()
            .zip(&sigma)
            .map(|(v, &s)| if s { -v } else { v })
            .collect()
    };

    let mut cost1 = vec![zero(); n];
    cost1.extend(std::iter::repeat_n(-one(), m));
    tab.optimize(&cost1, |_| true);
    if tab.objective(&cost1).is_negative() {
        return StdOutcome::Infeasible {
            y: flip(tab.prices(&cost1, n)),
        };
    }
    for r in 0..m {
        if tab.basis[r] < n {
            continue;
        }
        if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
            tab.pivot(r, j);
        }
    }

    let mut cost2 = c.to_vec();
    cost2.extend(std::iter::repeat_n(zero(), m));
    if !tab.optimize(&cost2, |j| j < n) {
        return StdOutcome::Unbounded;
    }
    let mut z = vec![zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            z[bv] = tab.rhs[i].clone();
        }
    }
    StdOutcome::Optimal {
        z,
        y: flip(tab.prices(&cost2, n)),
    }
}

/// Optimizes `c·x` over `h` with free variables.
pub fn lp_solve(c: &[Rational], h: &HPolytope, sense: Objective) -> LpOutcome {
    let d = h.dim;
    assert_eq!(c.len(), d, "objective length must match the dimension");
    let le_rows: Vec<usize> = (0..h.rows.len())
        .filter(|&i| h.rows[i].sense == Sense::Le)
        .collect();
    let n = 2 * d + le_rows.len();
    let mut a = Vec::with_capacity(h.rows.len());
    let mut b = Vec::with_capacity(h.rows.len());
    for (i, r) in h.rows.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        row.extend(r.a.iter().cloned());
        row.extend(r.a.iter().map(|v| -v));
        row.extend(le_rows.iter().map(|&k| if k == i { one() } else { zero() }));
        a.push(row);
        b.push(r.b.clone());
    }
    let signed: Vec<Rational> = match sense {
        Objective::Maximize => c.to_vec(),
        Objective::Minimize => c.iter().map(|v| -v).collect(),
    };
    let mut cost = signed.clone();
    cost.extend(signed.iter().map(|v| -v));
    cost.extend(std::iter::repeat_n(zero(), le_rows.len()));
    match solve_standard(&a, &b, &cost) {
        StdOutcome::Optimal { z, y } => {
            let x: Vec<Rational> = (0..d).map(|j| &z[j] - &z[d + j]).collect();
            let value = c.iter().zip(&x).map(|(a, b)| a * b).sum();
            LpOutcome::Optimal { x, value, duals: y }
        }
        StdOutcome::Infeasible { y } => LpOutcome::Infeasible { farkas: y },
        StdOutcome::Unbounded => LpOutcome::Unbounded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// (generator index, positive multiplier) pairs summing to one.
    Inside(Vec<(usize, Rational)>),
    /// h·g + h0 ≥ 0 for every generator g while h·target + h0 < 0.
    Outside { h: Vec<Rational>, h0: Rational },
}

/// Writes `target` as a convex combination of `generators` if possible.
pub fn feasibility_combination(target: &[Rational], generators: &[Vec<Rational>]) -> Feasibility {
    let d = target.len();
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|k| generators.iter().map(|g| g[k].clone()).collect())
        .collect();
    a.push(vec![one(); generators.len()]);
    let mut b = target.to_vec();
    b.push(one());
    match solve_standard(&a, &b, &vec![zero(); generators.len()]) {
        StdOutcome::Optimal { z, .. } => Feasibility::Inside(
            z.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        ),
        StdOutcome::Infeasible { mut y } => {
            let h0 = y.pop().expect("normalization row");
            Feasibility::Outside { h: y, h0 }
        }
        StdOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}
