//! Per-case verification: projective tables, covering push-down, the subalgebra chain, form
//! certification of the case's figures and a mutation probe.

use crate::catalog::{Catalog, LambdaChoice, FIGURES, TAME_CONCEALED, TUBULAR};
use crate::chain::verify_chain;
use crate::covering::CoveringWindow;
use crate::forms::FormData;
use crate::mutation::{fingerprint, mutate, probe_nondegeneracy};
use crate::qp::Qp;
use crate::report::{Origin, Report};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub lambda: LambdaChoice,
    pub window: usize,
    pub trials: usize,
    pub depth: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { lambda: LambdaChoice::default(), window: 3, trials: 100, depth: 5, seed: 0 }
    }
}

fn projectives(cat: &Catalog, case: &str, lambda: &LambdaChoice) -> Report {
    let mut r = Report::new("projectives");
    match cat.case(case).and_then(|rec| rec.jacobian(lambda).map(|a| (rec, a))) {
        Ok((rec, a)) => {
            let rows = a.projective_dim_vectors();
            for (i, expected) in rec.projectives.iter().enumerate() {
                r.compare(format!("P{}", i + 1), expected, &rows[i], Origin::Published);
            }
            let total: i64 = rec.projectives.iter().flatten().sum();
            r.compare("total dimension", &(total as usize), &a.dimension(), Origin::Published);
        }
        Err(e) => r.error("Jacobian algebra", e),
    }
    r
}

/// Push-down of every interior projective, acyclicity and support width.
pub fn covering_report(qp: &Qp, window: usize) -> Report {
    let mut r = Report::new(format!("covering window {window}"));
    let cw = match CoveringWindow::build(qp, window) {
        Ok(cw) => cw,
        Err(e) => {
            r.error("construction", e);
            return r;
        }
    };
    r.push("acyclic", cw.is_acyclic(), Origin::Structural);
    r.push("translation equivariant", cw.translation_equivariant(), Origin::Structural);
    match cw.push_down_check() {
        Ok(rows) => {
            for row in rows {
                r.compare(format!("push-down P{}@{}", row.vertex + 1, row.level), &row.expected, &row.actual, Origin::Computed);
            }
        }
        Err(e) => r.error("push-down", e),
    }
    let n = cw.base_vertex_count();
    let mut widest = vec![0usize; n];
    for (idx, p) in cw.projectives().iter().enumerate().filter(|(_, p)| p.interior) {
        widest[p.vertex] = widest[p.vertex].max(cw.support_width(idx));
    }
    for (v, &w) in widest.iter().enumerate().filter(|(_, &w)| w > 0) {
        r.compare(format!("P{} spans at most 2 levels", v + 1), &true, &(w <= 2), Origin::Structural);
    }
    r
}

fn forms(cat: &Catalog, case: &str, lambda: &LambdaChoice) -> Report {
    let mut r = Report::new("forms");
    for id in FIGURES {
        let fig = match cat.figure(id) {
            Ok(f) if f.case == case => f,
            Ok(_) => continue,
            Err(e) => {
                r.error(id, e);
                continue;
            }
        };
        let expected = if TAME_CONCEALED.contains(&id) {
            1
        } else if TUBULAR.contains(&id) {
            2
        } else {
            continue;
        };
        let fd = fig.algebra(lambda).and_then(|a| a.cartan_matrix()).and_then(|c| FormData::new(&c));
        match fd {
            Ok(fd) => {
                r.push(format!("{id}: non-negative"), fd.is_non_negative(), Origin::Structural);
                r.compare(format!("{id}: corank"), &expected, &fd.corank(), Origin::Published);
                if expected == 1 {
                    match fd.radical_generator() {
                        Ok(_) => r.push(format!("{id}: sincere positive radical"), true, Origin::Structural),
                        Err(e) => r.error(format!("{id}: radical"), e),
                    }
                }
            }
            Err(e) => r.error(id, e),
        }
    }
    r
}

/// Every single mutation is non-degenerate and an involution up to fingerprint; then a random probe.
pub fn mutation_report(qp: &Qp, trials: usize, depth: usize, seed: u64) -> Report {
    let mut r = Report::new("mutation");
    let original = match fingerprint(qp) {
        Ok(f) => f,
        Err(e) => {
            r.error("fingerprint", e);
            return r;
        }
    };
    for k in 0..qp.quiver.vertex_count() {
        let twice = mutate(qp, k).and_then(|m| mutate(&m, k)).and_then(|t| fingerprint(&t)).and_then(|f| f.matches(&original));
        match twice {
            Ok(ok) => r.push(format!("mu{0} mu{0} = id", k + 1), ok, Origin::Structural),
            Err(e) => r.error(format!("mu{}", k + 1), e),
        }
    }
    let probe = probe_nondegeneracy(qp, depth, trials, seed);
    r.push(format!("{trials} random sequences of depth {depth} (seed {seed})"), probe.failures.is_empty(), Origin::Structural);
    for f in probe.failures {
        r.error(format!("trial {} {:?} step {}", f.trial, f.sequence, f.step), f.error);
    }
    r
}

pub fn verify_case(cat: &Catalog, case: &str, opts: &VerifyOptions) -> Report {
    let mut report = Report::new(format!("case {case} (lambda={})", opts.lambda));
    let qp = match cat.case(case).and_then(|rec| rec.qp_at(&opts.lambda)) {
        Ok(qp) => qp,
        Err(e) => {
            report.error("load", e);
            return report;
        }
    };
    report.section(projectives(cat, case, &opts.lambda));
    report.section(covering_report(&qp, opts.window));
    match cat.chain(case) {
        Ok(cd) => report.section(verify_chain(&cd, cat, &opts.lambda, opts.window)),
        Err(e) => report.error("chain", e),
    }
    report.section(forms(cat, case, &opts.lambda));
    if opts.trials > 0 {
        report.section(mutation_report(&qp, opts.trials, opts.depth, opts.seed));
    } else {
        report.skip("mutation", "no trials requested");
    }
    report
}
