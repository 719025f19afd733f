//! Double description method on primitive integer vectors.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{dot_int, make_primitive, sign, to_primitive_integers};
use super::{HPolytope, VPolytope};
use crate::error::{Error, Result};
use crate::inequalities::Sense;
use crate::problem::Limits;
use crate::rational::Rational;

struct Constraint {
    h: Vec<BigInt>,
    eq: bool,
}

struct Ray {
    v: Vec<BigInt>,
    zero: FixedBitSet,
}

struct Cone {
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    make_primitive(u.iter().zip(w).map(|(x, y)| a * x + b * y).collect())
}

/// Generators of { v : h·v ≥ 0 (or = 0) for each constraint }.
fn double_description(dim: usize, cons: &[Constraint]) -> Cone {
    let total = cons.len();
    let mut lin: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, c) in cons.iter().enumerate() {
        let h = &c.h;
        if let Some(pos) = lin.iter().position(|l| !dot_int(h, l).is_zero()) {
            let mut lstar = lin.remove(pos);
            let mut hl = dot_int(h, &lstar);
            if hl.is_negative() {
                lstar.iter_mut().for_each(|x| *x = -&*x);
                hl = -hl;
            }
            for l in lin.iter_mut() {
                let hv = dot_int(h, l);
                if !hv.is_zero() {
                    *l = combine(&hl, l, &-hv, &lstar);
                }
            }
            for r in rays.iter_mut() {
                let hv = dot_int(h, &r.v);
                if !hv.is_zero() {
                    r.v = combine(&hl, &r.v, &-hv, &lstar);
                }
                r.zero.insert(k);
            }
            if !c.eq {
                let mut zero = FixedBitSet::with_capacity(total);
                zero.insert_range(..k);
                rays.push(Ray { v: lstar, zero });
            }
            continue;
        }

        let signs: Vec<i8> = rays.iter().map(|r| sign(&dot_int(h, &r.v))).collect();
        let need = dim.saturating_sub(lin.len()).saturating_sub(2);
        let mut fresh = Vec::new();
        for (p, rp) in rays.iter().enumerate() {
            if signs[p] <= 0 {
                continue;
            }
            for (n, rn) in rays.iter().enumerate() {
                if signs[n] >= 0 {
                    continue;
                }
                let mut common = rp.zero.clone();
                common.intersect_with(&rn.zero);
                if common.count_ones(..) < need {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(o, ro)| o != p && o != n && common.is_subset(&ro.zero));
                if blocked {
                    continue;
                }
                let hp = dot_int(h, &rp.v);
                let hn = dot_int(h, &rn.v);
                let v = combine(&hp, &rn.v, &-hn, &rp.v);
                let mut zero = common;
                zero.insert(k);
                fresh.push(Ray { v, zero });
            }
        }
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, s) in rays.into_iter().zip(signs) {
            match s {
                0 => {
                    r.zero.insert(k);
                    next.push(r);
                }
                1 if !c.eq => next.push(r),
                _ => {}
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Cone {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality: lin,
    }
}

/// All vertices of a bounded polyhedron, sorted lexicographically.
pub fn vertex_enumeration(h: &HPolytope, limits: &Limits) -> Result<VPolytope> {
    if h.dim > limits.max_dim {
        return Err(Error::TooLarge {
            what: "dimension",
            size: h.dim,
            limit: limits.max_dim,
        });
    }
    if h.rows.len() > limits.max_rows {
        return Err(Error::TooLarge {
            what: "row count",
            size: h.rows.len(),
            limit: limits.max_rows,
        });
    }
    let dim = h.dim + 1;
    let mut cons = Vec::with_capacity(h.rows.len() + 1);
    let mut z0 = vec![BigInt::zero(); dim];
    z0[0] = BigInt::from(1);
    cons.push(Constraint { h: z0, eq: false });
    for r in &h.rows {
        let mut v = Vec::with_capacity(dim);
        v.push(r.b.clone());
        v.extend(r.a.iter().map(|x| -x));
        cons.push(Constraint {
            h: to_primitive_integers(&v),
            eq: r.sense == Sense::Eq,
        });
    }
    let cone = double_description(dim, &cons);
    let finite: Vec<&Vec<BigInt>> = cone.rays.iter().filter(|r| r[0].is_positive()).collect();
    if finite.is_empty() {
        return Ok(VPolytope::default());
    }
    if !cone.lineality.is_empty() || finite.len() != cone.rays.len() {
        return Err(Error::Unbounded);
    }
    let mut points: Vec<Vec<Rational>> = finite
        .into_iter()
        .map(|r| {
            r[1..]
                .iter()
                .map(|x| Rational::new(x.clone(), r[0].clone()))
                .collect()
        })
        .collect();
    points.sort();
    points.dedup();
    Ok(VPolytope { points })
}

/// Irredundant description of conv(points) + cone(rays): one `≤` row per
/// facet plus `=` rows spanning the affine hull. Trivial rows are dropped.
pub fn facet_enumeration(points: &[Vec<Rational>], rays: &[Vec<Rational>]) -> Result<HPolytope> {
    let Some(d) = points.first().map(Vec::len) else {
        return Err(Error::Precondition(
            "facet enumeration needs at least one point".into(),
        ));
    };
    let mut cons = Vec::new();
    for p in points {
        let mut v = Vec::with_capacity(d + 1);
        v.push(crate::rational::one());
        v.extend(p.iter().map(|x| -x));
        cons.push(Constraint {
            h: to_primitive_integers(&v),
            eq: false,
        });
    }
    for r in rays {
        let mut v = Vec::with_capacity(d + 1);
        v.push(crate::rational::zero());
        v.extend(r.iter().map(|x| -x));
        cons.push(Constraint {
            h: to_primitive_integers(&v),
            eq: false,
        });
    }
    let cone = double_description(d + 1, &cons);
    let mut out = HPolytope::new(d);
    let to_row = |v: &Vec<BigInt>| -> (Vec<Rational>, Rational) {
        (
            v[1..]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
            Rational::from_integer(v[0].clone()),
        )
    };
    let mut le: Vec<(Vec<Rational>, Rational)> = cone
        .rays
        .iter()
        .filter(|v| v[1..].iter().any(|x| !x.is_zero()))
        .map(to_row)
        .collect();
    le.sort();
    for (a, b) in le {
        out.push(a, Sense::Le, b);
    }
    for l in &cone.lineality {
        let (a, b) = to_row(l);
        out.push(a, Sense::Eq, b);
    }
    Ok(out)
}
