//! Separation oracles for P↓, P↑ and P^1Q through blossom separation in the
//! gadget graphs.

mod blossom;
mod flow;
mod gadget;

pub use blossom::{check_degree_bounds, separate_blossom};
pub use flow::{gomory_hu, max_flow, min_odd_cut, GomoryHuTree};
pub use gadget::{build_down_gadget, build_up_gadget, DownGadget, UpGadget};

use crate::graph::NodeSet;
use crate::inequalities::{
    base_instances, build, enumerate_family, in_d_tilde, in_u_tilde, most_violated, violation,
    Family, FamilyInstance, LinearInequality,
};
use crate::problem::{QPoint, QProblem};
use crate::rational::Rational;

/// A violated inequality and its (positive) violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub instance: FamilyInstance,
    pub violation: Rational,
}

fn rows(p: &QProblem, insts: &[FamilyInstance]) -> Vec<LinearInequality> {
    insts
        .iter()
        .map(|i| build(i, p).expect("base instances are valid"))
        .collect()
}

fn most_violated_cut(p: &QProblem, insts: &[FamilyInstance], pt: &QPoint) -> Option<Cut> {
    let rs = rows(p, insts);
    most_violated(&rs, pt).map(|(r, v)| Cut {
        instance: r.tag.clone(),
        violation: v,
    })
}

fn up_u1w2(p: &QProblem) -> FamilyInstance {
    let [u1, _, _, w2] = p.special_nodes();
    FamilyInstance::Up([u1, w2].into_iter().collect())
}

/// Constraints (1)–(4) first, then the down gadget.
pub fn separate_down(p: &QProblem, pt: &QPoint) -> Option<Cut> {
    if let Some(c) = most_violated_cut(p, &base_instances(p, false, true), pt) {
        return Some(c);
    }
    let gd = build_down_gadget(p, pt).expect("(1)-(4) hold, so the gadget is nonnegative");
    let (s, v) = separate_blossom(&gd.graph, &gd.xbar).expect("(1)-(4) imply the degree bounds")?;
    assert!(
        in_d_tilde(p, &s),
        "violated gadget blossom outside the down family"
    );
    Some(Cut {
        instance: FamilyInstance::Down(s),
        violation: v,
    })
}

/// Constraints (1)–(3) and Up({u1,w2}) first, then the up gadget.
pub fn separate_up(p: &QProblem, pt: &QPoint) -> Option<Cut> {
    if let Some(c) = most_violated_cut(p, &base_instances(p, false, false), pt) {
        return Some(c);
    }
    if let Some(c) = most_violated_cut(p, &[up_u1w2(p)], pt) {
        return Some(c);
    }
    // If some up inequality were tight or violated then y ≤ x_{e_i} would hold,
    // so a larger y certifies that every up inequality is strict.
    if pt.y > pt.x[p.e1()] || pt.y > pt.x[p.e2()] {
        return None;
    }
    let gd = build_up_gadget(p, pt).expect("premises of the up gadget hold");
    let (sbar, v) = separate_blossom(&gd.graph, &gd.xbar).expect("gadget degrees are bounded")?;
    assert!(
        sbar.contains(&gd.a) != sbar.contains(&gd.b),
        "violated gadget blossom must contain exactly one of a, b"
    );
    let s: NodeSet = sbar
        .into_iter()
        .filter(|&v| v != gd.a && v != gd.b)
        .collect();
    assert!(
        in_u_tilde(p, &s),
        "violated gadget blossom outside the up family"
    );
    Some(Cut {
        instance: FamilyInstance::Up(s),
        violation: v,
    })
}

/// Down oracle, then up oracle.
pub fn separate_exact(p: &QProblem, pt: &QPoint) -> Option<Cut> {
    separate_down(p, pt).or_else(|| separate_up(p, pt))
}

/// Exhaustive counterparts of the staged oracles, used as test oracles.
pub mod brute_force {
    use super::*;

    fn best_in_family(p: &QProblem, family: Family, pt: &QPoint) -> Option<Cut> {
        most_violated_cut(p, &enumerate_family(p, family, p.node_count()), pt)
    }

    /// Base rows (1)–(4), else the most violated Down(S) over all of D̃.
    pub fn down(p: &QProblem, pt: &QPoint) -> Option<Cut> {
        most_violated_cut(p, &base_instances(p, false, true), pt)
            .or_else(|| best_in_family(p, Family::DTilde, pt))
    }

    /// Base rows (1)–(3), then Up({u1,w2}), else the most violated Up(S) over Ũ.
    pub fn up(p: &QProblem, pt: &QPoint) -> Option<Cut> {
        most_violated_cut(p, &base_instances(p, false, false), pt)
            .or_else(|| most_violated_cut(p, &[up_u1w2(p)], pt))
            .or_else(|| best_in_family(p, Family::UTilde, pt))
    }

    pub fn exact(p: &QProblem, pt: &QPoint) -> Option<Cut> {
        down(p, pt).or_else(|| up(p, pt))
    }

    /// Largest violation of the instance's own family (for cross-checks).
    pub fn family_max(p: &QProblem, inst: &FamilyInstance, pt: &QPoint) -> Option<Rational> {
        let family = match inst {
            FamilyInstance::Down(_) => Family::DTilde,
            FamilyInstance::Up(_) => Family::UTilde,
            _ => return Some(violation(&build(inst, p).ok()?, pt)),
        };
        enumerate_family(p, family, p.node_count())
            .iter()
            .map(|i| violation(&build(i, p).expect("enumerated"), pt))
            .max()
    }
}
