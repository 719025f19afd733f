use std::fmt::Write as _;

use qmatch_core::bmatching::verify_bmatching_description;
use qmatch_core::inequalities::system;
use qmatch_core::rational::{format_rational, zero};
use qmatch_core::separation::{separate_down, separate_exact, separate_up};
use qmatch_core::verify::{
    corrupt_rhs, facet_of_row, validity_of_rows, CompletenessReport, ValidityReport,
};
use qmatch_core::{
    check_completeness, check_monotonization_identity, lemma_down_decompose, lemma_up_decompose,
    vertex_set, Error, Limits, QPoint, QProblem, Variant,
};
use thiserror::Error as ThisError;

use crate::format::{parse_point, parse_problem, ProblemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Failed(_) => EXIT_FAIL,
            CliError::Guard(_) => EXIT_GUARD,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => CliError::Guard(e.to_string()),
            Error::InvalidInstance(_) | Error::EdgeNotInGraph(_) => CliError::Input(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Text to print and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn load_problem(text: &str) -> Result<ProblemFile, CliError> {
    parse_problem(text).map_err(|e| CliError::Input(format!("problem file: {e}")))
}

pub fn load_point(p: &QProblem, text: &str) -> Result<QPoint, CliError> {
    parse_point(p, text).map_err(|e| CliError::Input(format!("point file: {e}")))
}

pub fn separate(problem: &str, point: &str, variant: Variant) -> Result<Outcome, CliError> {
    let f = load_problem(problem)?;
    let p = &f.problem;
    let pt = load_point(p, point)?;
    let cut = match variant.coupling() {
        Variant::Down => separate_down(p, &pt),
        Variant::Up => separate_up(p, &pt),
        _ => separate_exact(p, &pt),
    };
    Ok(match cut {
        None => Outcome {
            output: "inside\n".into(),
            code: EXIT_OK,
        },
        Some(c) => Outcome {
            output: format!(
                "{} violation={}\n",
                c.instance.describe(p),
                format_rational(&c.violation)
            ),
            code: EXIT_FAIL,
        },
    })
}

/// One line per term: `mult p/q ; {edges} ; y`.
pub fn decompose(
    problem: &str,
    point: &str,
    up: bool,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let f = load_problem(problem)?;
    let p = &f.problem;
    let pt = load_point(p, point)?;
    let d = if up {
        lemma_up_decompose(p, &pt, limits)?
    } else {
        lemma_down_decompose(p, &pt, limits)?
    };
    d.combination.validate(p, &pt, Variant::Exact)?;
    let mut out = String::new();
    if let Some(c) = d.certificates.first() {
        let _ = writeln!(out, "# tight {}", c.describe(p));
    }
    for t in &d.combination.normalized().terms {
        let edges: Vec<String> = t
            .matching
            .edges()
            .iter()
            .map(|&e| p.format_edge(e))
            .collect();
        let _ = writeln!(
            out,
            "mult {} ; {{{}}} ; {}",
            format_rational(&t.weight),
            edges.join(","),
            u8::from(t.y)
        );
    }
    Ok(Outcome {
        output: out,
        code: EXIT_OK,
    })
}

pub fn vertices(problem: &str, variant: Variant, limits: &Limits) -> Result<Outcome, CliError> {
    let f = load_problem(problem)?;
    let p = &f.problem;
    let mut out = String::new();
    for v in vertex_set(p, variant, limits)? {
        let edges: Vec<String> = (0..p.edge_count())
            .filter(|&e| v.x[e] != zero())
            .map(|e| p.format_edge(e))
            .collect();
        let _ = writeln!(out, "{{{}}} ; {}", edges.join(","), format_rational(&v.y));
    }
    Ok(Outcome {
        output: out,
        code: EXIT_OK,
    })
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub validity: bool,
    pub facets: bool,
    pub completeness: bool,
    pub monotonization: bool,
    pub bmatching: bool,
    /// Cap on |F| in the capacitated families.
    pub max_f: usize,
    /// Lower the rhs of this system row by one before the validity check.
    pub corrupt_row: Option<usize>,
}

fn render_validity(out: &mut String, p: &QProblem, label: &str, r: &ValidityReport) -> bool {
    if r.passed() {
        let _ = writeln!(out, "{label}: pass ({} rows, {} points)", r.rows, r.points);
    } else {
        let _ = writeln!(out, "{label}: FAIL ({} violations)", r.violations.len());
        for w in r.violations.iter().take(5) {
            let edges: Vec<String> = (0..w.point.x.len())
                .filter(|&e| w.point.x[e] != zero())
                .map(|e| format!("{}={}", p.format_edge(e), format_rational(&w.point.x[e])))
                .collect();
            let _ = writeln!(
                out,
                "  {} violated by {} at {{{}}} y={}",
                w.inequality.tag.describe(p),
                format_rational(&w.amount),
                edges.join(","),
                format_rational(&w.point.y)
            );
        }
    }
    r.passed()
}

fn render_completeness(out: &mut String, label: &str, r: &CompletenessReport) -> bool {
    if r.passed() {
        let _ = writeln!(out, "{label}: pass ({} = {} vertices)", r.found, r.expected);
    } else {
        let _ = writeln!(
            out,
            "{label}: FAIL (found {}, expected {}, missing {}, extra {})",
            r.found,
            r.expected,
            r.missing.len(),
            r.extra.len()
        );
        for v in r.extra.iter().take(5) {
            let coords: Vec<String> = v.coords().iter().map(format_rational).collect();
            let _ = writeln!(out, "  extra vertex ({})", coords.join(","));
        }
    }
    r.passed()
}

pub fn verify(
    problem: &str,
    variant: Variant,
    opts: &VerifyOptions,
    limits: &Limits,
) -> Result<Outcome, CliError> {
    let f = load_problem(problem)?;
    let p = &f.problem;
    let mut out = String::new();
    let mut ok = true;
    let any =
        opts.validity || opts.facets || opts.completeness || opts.monotonization || opts.bmatching;
    let _ = writeln!(out, "instance K{},{} variant {}", p.m(), p.n(), variant);

    if opts.validity || !any || opts.corrupt_row.is_some() {
        let mut rows = system(p, variant);
        let label = match opts.corrupt_row {
            Some(k) if k < rows.len() => {
                rows = corrupt_rhs(&rows, k);
                format!("validity (row {k} rhs lowered)")
            }
            Some(k) => {
                return Err(CliError::Input(format!(
                    "row {k} out of range ({} rows)",
                    rows.len()
                )))
            }
            None => "validity".to_string(),
        };
        let pts = vertex_set(p, variant, limits)?;
        ok &= render_validity(&mut out, p, &label, &validity_of_rows(&rows, &pts));
    }
    if opts.facets {
        let pts = vertex_set(p, variant, limits)?;
        let _ = writeln!(out, "facets:");
        for row in system(p, variant) {
            let r = facet_of_row(&row, &pts);
            let verdict = match &r.verdict {
                qmatch_core::FacetVerdict::Facet => "facet".to_string(),
                qmatch_core::FacetVerdict::NotFacet(why) => {
                    if why.starts_with("invalid") {
                        ok = false;
                    }
                    format!("not facet: {why}")
                }
            };
            let _ = writeln!(out, "  {} : {verdict}", row.tag.describe(p));
        }
    }
    if opts.completeness || !any {
        ok &= render_completeness(
            &mut out,
            "completeness",
            &check_completeness(p, variant, limits)?,
        );
    }
    if opts.monotonization {
        let r = check_monotonization_identity(p, limits)?;
        ok &= render_completeness(
            &mut out,
            "monotonization (description union)",
            &r.descriptions,
        );
        ok &= render_completeness(&mut out, "monotonization (hull intersection)", &r.hulls);
        let c = &r.counterexample;
        let good = c.behaves_as_stated();
        let _ = writeln!(
            out,
            "monotonization (two-variable example): {} ({} vs {} vertices)",
            if good { "pass" } else { "FAIL" },
            c.both.len(),
            c.hull.len()
        );
        ok &= good;
    }
    if opts.bmatching {
        let bp = f.bmatching()?;
        let r = verify_bmatching_description(&bp, opts.max_f, limits)?;
        let _ = writeln!(out, "b-matching: {} integer points", r.points);
        ok &= render_validity(&mut out, p, "b-matching validity", &r.validity);
        ok &= render_completeness(&mut out, "b-matching completeness", &r.completeness);
        ok &= render_validity(&mut out, p, "b-matching mixed validity", &r.mixed_validity);
        if r.mixed_facets.is_empty() {
            let _ = writeln!(out, "b-matching mixed rows: no new facets");
        } else {
            ok = false;
            for fr in &r.mixed_facets {
                let _ = writeln!(
                    out,
                    "b-matching mixed rows: FAIL {} is a facet",
                    fr.instance.describe(p)
                );
            }
        }
    }
    let _ = writeln!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(Outcome {
        output: out,
        code: if ok { EXIT_OK } else { EXIT_FAIL },
    })
}

/// Limits with the enumeration guard applied: instances with more than
/// `guard` edges are refused.
pub fn limits_with_guard(guard: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(g) = guard {
        l.max_edges = g;
        l.max_dim = g + 1;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    const K22: &str = "bipartite 2 2\nspecial u1 w1 u2 w2\n";
    const K32: &str = "bipartite 3 2\nspecial u1 w1 u2 w2\n";

    #[test]
    fn separate_k32_down_point() {
        let pt = "e(u1,w1)=1/2\ne(u2,w2)=1/2\ne(u3,w1)=1/2\ne(u3,w2)=1/2\ny=1/2\n";
        let o = separate(K32, pt, Variant::Down).unwrap();
        assert_eq!(o.output, "DOWN S={w1,w2,u3} violation=1/2\n");
        assert_eq!(o.code, EXIT_FAIL);
    }

    #[test]
    fn separate_vertex_inside() {
        let o = separate(K22, "e(u1,w1)=1\ne(u2,w2)=1\ny=1\n", Variant::Exact).unwrap();
        assert_eq!((o.output.as_str(), o.code), ("inside\n", EXIT_OK));
    }

    #[test]
    fn bad_rational_is_input_error() {
        let e = separate(K22, "y=1/0\n", Variant::Exact).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_INPUT);
    }

    #[test]
    fn guard_exceeded() {
        let k33 = "bipartite 3 3\nspecial u1 w1 u2 w2\n";
        let e = verify(
            k33,
            Variant::Exact,
            &VerifyOptions::default(),
            &limits_with_guard(Some(4)),
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), EXIT_GUARD);
    }
}
