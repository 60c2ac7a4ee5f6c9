//! Chains of tame concealed and tubular subalgebras inside a covering window, and their
//! verification.
//!
//! ```text
//! chain <name>
//! case <case>
//! concealed <figure>                       # A_i
//!   h <vec>                                # optional expected radical generator
//!   phi <vec> -> <vec>                     # optional expected Coxeter images
//! tubular <figure>                         # Lambda_i, containing A_i
//!   ext <v@z> <vec> period <p>             # rad P_w over A_i and its tau-period
//! close <figure> at <v@z>,<v@z>,...        # final subalgebra, isomorphic to <figure>
//! ```

use serde::Serialize;

use crate::catalog::{Catalog, Figure, LambdaChoice};
use crate::covering::CoveringWindow;
use crate::error::{Error, Result};
use crate::forms::FormData;
use crate::isomorphism::quiver_isomorphic;
use crate::jacobian::restricted_dim_vectors;
use crate::linalg::{DimVector, IntMatrix};
use crate::quiver::Quiver;
use crate::report::{Origin, Report};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub vertex: String,
    pub dims: DimVector,
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Link {
    pub concealed: String,
    pub h: Option<DimVector>,
    pub phi: Vec<(DimVector, DimVector)>,
    pub tubular: Option<String>,
    pub extensions: Vec<Extension>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closing {
    pub figure: String,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDescriptor {
    pub name: String,
    pub case: String,
    pub links: Vec<Link>,
    pub closing: Option<Closing>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::ParseError { line, column, message: message.into() }
}

fn parse_vec(text: &str, line: usize, column: usize) -> Result<DimVector> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| perr(line, column, format!("bad vector `{text}`")))
}

pub fn parse_chain(text: &str) -> Result<ChainDescriptor> {
    let mut name = None;
    let mut case = None;
    let mut links: Vec<Link> = Vec::new();
    let mut closing = None;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<(usize, &str)> = line
            .split_whitespace()
            .map(|t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
            .collect();
        let Some(&(col, head)) = toks.first() else { continue };
        let arg = |i: usize| -> Result<(usize, &str)> {
            toks.get(i).copied().ok_or_else(|| perr(ln, raw.len() + 1, format!("`{head}` is missing a field")))
        };
        let last_link = |links: &mut Vec<Link>| -> Result<usize> {
            if links.is_empty() {
                Err(perr(ln, col, format!("`{head}` before any `concealed`")))
            } else {
                Ok(links.len() - 1)
            }
        };
        match head {
            "chain" => name = Some(arg(1)?.1.to_string()),
            "case" => case = Some(arg(1)?.1.to_string()),
            "concealed" => links.push(Link {
                concealed: arg(1)?.1.to_string(),
                h: None,
                phi: Vec::new(),
                tubular: None,
                extensions: Vec::new(),
            }),
            "h" => {
                let i = last_link(&mut links)?;
                let (c, t) = arg(1)?;
                links[i].h = Some(parse_vec(t, ln, c)?);
            }
            "phi" => {
                let i = last_link(&mut links)?;
                let (c1, from) = arg(1)?;
                let (c2, arrow) = arg(2)?;
                if arrow != "->" {
                    return Err(perr(ln, c2, "expected `->`"));
                }
                let (c3, to) = arg(3)?;
                links[i].phi.push((parse_vec(from, ln, c1)?, parse_vec(to, ln, c3)?));
            }
            "tubular" => {
                let i = last_link(&mut links)?;
                links[i].tubular = Some(arg(1)?.1.to_string());
            }
            "ext" => {
                let i = last_link(&mut links)?;
                let vertex = arg(1)?.1.to_string();
                let (c, v) = arg(2)?;
                let (c3, kw) = arg(3)?;
                if kw != "period" {
                    return Err(perr(ln, c3, "expected `period`"));
                }
                let (c4, p) = arg(4)?;
                let period = p.parse().map_err(|_| perr(ln, c4, format!("bad period `{p}`")))?;
                links[i].extensions.push(Extension { vertex, dims: parse_vec(v, ln, c)?, period });
            }
            "close" => {
                let figure = arg(1)?.1.to_string();
                let (c, kw) = arg(2)?;
                if kw != "at" {
                    return Err(perr(ln, c, "expected `at`"));
                }
                let vertices = arg(3)?.1.split(',').map(str::to_string).collect();
                closing = Some(Closing { figure, vertices });
            }
            other => return Err(perr(ln, col, format!("unknown directive `{other}`"))),
        }
    }
    Ok(ChainDescriptor {
        name: name.ok_or_else(|| perr(1, 1, "missing `chain` line"))?,
        case: case.ok_or_else(|| perr(1, 1, "missing `case` line"))?,
        links,
        closing,
    })
}

impl Catalog {
    pub fn chain(&self, case: &str) -> Result<ChainDescriptor> {
        if !crate::catalog::CASES.contains(&case) {
            return Err(Error::UnknownCase(case.to_string()));
        }
        parse_chain(&self.text(&format!("{case}.chain"))?)
    }
}

fn indices(cw: &CoveringWindow, labels: &[String]) -> Option<Vec<usize>> {
    labels.iter().map(|l| cw.vertex_by_label(l)).collect()
}

fn positions_in(sub: &[String], sup: &[String]) -> Option<Vec<usize>> {
    sub.iter().map(|l| sup.iter().position(|m| m == l)).collect()
}

/// Non-negativity, corank 1 and a positive radical generator.
fn certify(r: &mut Report, name: &str, cartan: &IntMatrix, expected_h: Option<&DimVector>) -> Option<FormData> {
    let fd = match FormData::new(cartan) {
        Ok(fd) => fd,
        Err(e) => {
            r.error(format!("{name}: forms"), e);
            return None;
        }
    };
    r.push(format!("{name}: form non-negative"), fd.is_non_negative(), Origin::Computed);
    r.compare(format!("{name}: corank"), &1, &fd.corank(), Origin::Computed);
    match fd.radical_generator() {
        Ok(h) => {
            r.push(format!("{name}: h positive"), h.iter().all(|&x| x > 0), Origin::Computed);
            if let Some(e) = expected_h {
                r.compare(format!("{name}: h"), e, &h, Origin::Published);
            }
        }
        Err(e) => r.error(format!("{name}: h"), e),
    }
    Some(fd)
}

/// Cartan matrix of a figure, cross-checked against the covering restriction.
fn figure_cartan(
    r: &mut Report,
    fig: &Figure,
    cw: &CoveringWindow,
    lambda: &LambdaChoice,
) -> Option<(IntMatrix, Vec<usize>)> {
    let labels = fig.quiver.labels().to_vec();
    let Some(idx) = indices(cw, &labels) else {
        r.push(format!("{}: vertices lie in the window", fig.id), false, Origin::Structural);
        return None;
    };
    let sub = cw.quiver().full_subquiver(&idx).0;
    let mut fig_arrows: Vec<&str> = fig.quiver.arrows().iter().map(|a| a.name.as_str()).collect();
    let mut cov_arrows: Vec<&str> = sub.arrows().iter().map(|a| a.name.as_str()).collect();
    fig_arrows.sort_unstable();
    cov_arrows.sort_unstable();
    r.compare(format!("{}: arrows are those of the covering", fig.id), &cov_arrows, &fig_arrows, Origin::Structural);
    r.push(format!("{}: convex in the covering", fig.id), cw.quiver().is_convex(&idx), Origin::Structural);
    let c = match fig.algebra(lambda).and_then(|a| a.cartan_matrix()) {
        Ok(c) => c,
        Err(e) => {
            r.error(format!("{}: algebra", fig.id), e);
            return None;
        }
    };
    let restricted = restricted_dim_vectors(cw.cartan(), &idx);
    r.compare(format!("{}: projectives agree with the covering", fig.id), &restricted, &c, Origin::Computed);
    Some((c, idx))
}

/// Check every link of a chain; see the module docs for the file format.
pub fn verify_chain(cd: &ChainDescriptor, catalog: &Catalog, lambda: &LambdaChoice, window: usize) -> Report {
    let mut report = Report::new(format!("chain {}", cd.name));
    let cw = match catalog
        .case(&cd.case)
        .and_then(|rec| rec.qp_at(lambda))
        .and_then(|qp| CoveringWindow::build(&qp, window))
    {
        Ok(cw) => cw,
        Err(e) => {
            report.error("covering window", e);
            return report;
        }
    };
    let mut previous_tubular: Option<Vec<String>> = None;
    for link in &cd.links {
        let mut r = Report::new(format!("{} / {}", link.concealed, link.tubular.as_deref().unwrap_or("-")));
        let a = match catalog.figure(&link.concealed) {
            Ok(f) => f,
            Err(e) => {
                r.error("load", e);
                report.section(r);
                continue;
            }
        };
        let a_labels = a.quiver.labels().to_vec();
        if let Some(prev) = &previous_tubular {
            r.push(format!("{} lies in the previous tubular algebra", a.id), positions_in(&a_labels, prev).is_some(), Origin::Structural);
        }
        let Some((ca, _)) = figure_cartan(&mut r, &a, &cw, lambda) else {
            report.section(r);
            continue;
        };
        let Some(fd) = certify(&mut r, &a.id, &ca, link.h.as_ref()) else {
            report.section(r);
            continue;
        };
        for (from, to) in &link.phi {
            match fd.coxeter_apply(from) {
                Ok(got) => r.compare(format!("{}: {:?} Phi", a.id, from), to, &got, Origin::Published),
                Err(e) => r.error(format!("{}: {:?} Phi", a.id, from), e),
            }
        }
        if let Some(t) = &link.tubular {
            verify_extension(&mut r, catalog, &cw, lambda, &a, &ca, &fd, t, &link.extensions);
            previous_tubular = catalog.figure(t).ok().map(|f| f.quiver.labels().to_vec());
        }
        report.section(r);
    }
    if let Some(close) = &cd.closing {
        let mut r = Report::new(format!("close at {}", close.figure));
        verify_closing(&mut r, catalog, &cw, lambda, close, previous_tubular.as_deref());
        report.section(r);
    }
    report
}

#[allow(clippy::too_many_arguments)]
fn verify_extension(
    r: &mut Report,
    catalog: &Catalog,
    cw: &CoveringWindow,
    lambda: &LambdaChoice,
    a: &Figure,
    ca: &IntMatrix,
    fd: &FormData,
    tubular: &str,
    exts: &[Extension],
) {
    let t = match catalog.figure(tubular) {
        Ok(t) => t,
        Err(e) => return r.error("load tubular", e),
    };
    let a_labels = a.quiver.labels().to_vec();
    let t_labels = t.quiver.labels().to_vec();
    let Some(a_in_t) = positions_in(&a_labels, &t_labels) else {
        r.push(format!("{} contains {}", t.id, a.id), false, Origin::Structural);
        return;
    };
    r.push(format!("{} convex in {}", a.id, t.id), t.quiver.is_convex(&a_in_t), Origin::Structural);
    let mut ext_labels: Vec<&str> = t_labels.iter().filter(|l| !a_labels.contains(l)).map(String::as_str).collect();
    let mut declared: Vec<&str> = exts.iter().map(|e| e.vertex.as_str()).collect();
    ext_labels.sort_unstable();
    declared.sort_unstable();
    r.compare(format!("{}: extension vertices", t.id), &ext_labels, &declared, Origin::Published);
    let Some((ct, _)) = figure_cartan(r, &t, cw, lambda) else { return };
    r.compare(format!("{}: restricts to {}", t.id, a.id), ca, &restricted_dim_vectors(&ct, &a_in_t), Origin::Computed);
    match FormData::new(&ct) {
        Ok(tf) => {
            r.push(format!("{}: form non-negative", t.id), tf.is_non_negative(), Origin::Computed);
            r.compare(format!("{}: corank", t.id), &2, &tf.corank(), Origin::Computed);
        }
        Err(e) => r.error(format!("{}: forms", t.id), e),
    }
    let h = fd.radical_generator().ok();
    for e in exts {
        let name = format!("{} {}", t.id, e.vertex);
        let Some(w) = t_labels.iter().position(|l| *l == e.vertex) else {
            r.push(format!("{name}: vertex exists"), false, Origin::Published);
            continue;
        };
        let rad: DimVector = ct[w].iter().enumerate().map(|(j, &d)| if j == w { d - 1 } else { d }).collect();
        let on_a: DimVector = a_in_t.iter().map(|&j| rad[j]).collect();
        let off_a = (0..rad.len()).filter(|j| !a_in_t.contains(j)).all(|j| rad[j] == 0);
        r.push(format!("{name}: rad P supported on {}", a.id), off_a, Origin::Structural);
        r.compare(format!("{name}: rad P"), &e.dims, &on_a, Origin::Published);
        match fd.is_regular(&e.dims) {
            Ok(ok) => r.push(format!("{name}: regular"), ok, Origin::Published),
            Err(err) => return r.error(format!("{name}: regular"), err),
        };
        match fd.tau_orbit(&e.dims, 12) {
            Ok((orbit, period)) => {
                r.compare(format!("{name}: tau-period"), &e.period, &period, Origin::Published);
                let non_negative = orbit.iter().all(|d| d.iter().all(|&x| x >= 0));
                r.push(format!("{name}: orbit non-negative"), non_negative, Origin::Structural);
                let sum: DimVector = (0..e.dims.len()).map(|j| orbit.iter().map(|d| d[j]).sum()).collect();
                if let Some(h) = &h {
                    r.compare(format!("{name}: orbit sums to h"), h, &sum, Origin::Published);
                }
            }
            Err(err) => r.error(format!("{name}: tau-period"), err),
        }
        match fd.is_simple_regular(&e.dims, 12) {
            Ok(ok) => r.push(format!("{name}: simple regular"), ok, Origin::Published),
            Err(err) => r.error(format!("{name}: simple regular"), err),
        };
    }
}

fn verify_closing(
    r: &mut Report,
    catalog: &Catalog,
    cw: &CoveringWindow,
    lambda: &LambdaChoice,
    close: &Closing,
    last_tubular: Option<&[String]>,
) {
    let target = match catalog.figure(&close.figure) {
        Ok(f) => f,
        Err(e) => return r.error("load", e),
    };
    let Some(idx) = indices(cw, &close.vertices) else {
        r.push("closing vertices lie in the window", false, Origin::Structural);
        return;
    };
    if let Some(t) = last_tubular {
        r.push("closing subalgebra lies in the last tubular algebra", positions_in(&close.vertices, t).is_some(), Origin::Structural);
    }
    r.push("closing subalgebra convex in the covering", cw.quiver().is_convex(&idx), Origin::Structural);
    let sub: Quiver = cw.quiver().full_subquiver(&idx).0;
    let c_sub = restricted_dim_vectors(cw.cartan(), &idx);
    certify(r, "closing subalgebra", &c_sub, None);
    let c_fig = match target.algebra(lambda).and_then(|a| a.cartan_matrix()) {
        Ok(c) => c,
        Err(e) => return r.error(format!("{}: algebra", target.id), e),
    };
    match quiver_isomorphic(&target.quiver, &sub) {
        Ok(Some(w)) => {
            r.push(format!("quiver isomorphic to {}", target.id), true, Origin::Published);
            let n = w.len();
            let permuted: IntMatrix = (0..n).map(|i| (0..n).map(|j| c_sub[w[i]][w[j]]).collect()).collect();
            r.compare(format!("projectives agree with {} under the isomorphism", target.id), &c_fig, &permuted, Origin::Published);
        }
        Ok(None) => {
            r.push(format!("quiver isomorphic to {}", target.id), false, Origin::Published);
        }
        Err(e) => r.error("isomorphism", e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "chain x\ncase 333\nh 1,1\n";
        assert!(matches!(parse_chain(bad), Err(Error::ParseError { line: 3, column: 1, .. })));
        let bad = "chain x\ncase 333\nconcealed f1\n  phi 1,0 => 0,1\n";
        assert!(matches!(parse_chain(bad), Err(Error::ParseError { line: 4, column: 11, .. })));
    }

    #[test]
    fn embedded_chains_parse() {
        let cat = Catalog::embedded();
        for c in crate::catalog::CASES {
            let cd = cat.chain(c).unwrap();
            assert_eq!(cd.case, c);
        }
    }
}
