//! The four tubular QPs with their gradings and projective tables, the subalgebra figures,
//! and the subalgebra chains. Data ships embedded; `QPFORGE_DATA` points at a directory
//! that replaces it.

use std::borrow::Cow;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::format::{parse_qp, QpFile};
use crate::jacobian::{PresentedAlgebra, DEFAULT_L_MAX};
use crate::linalg::IntMatrix;
use crate::potential::{FreeElement, Homogeneity};
use crate::qp::Qp;
use crate::quiver::Quiver;

pub const CASES: [&str; 4] = ["333", "2222", "442", "632"];

pub const FIGURES: [&str; 26] = [
    "f1", "t333a", "f2", "t333b", "f3", "t333c", "f4", "t333d", "f5", "t2222a", "f7", "t442a", "f8", "t442b",
    "f9", "t442c", "f10", "t442d", "f12", "f13", "f14", "f15", "f16", "f17", "f18", "f19",
];

/// Figures certified as tame concealed (corank 1).
pub const TAME_CONCEALED: [&str; 13] =
    ["f1", "f2", "f3", "f4", "f5", "f7", "f8", "f9", "f10", "f12", "f14", "f16", "f18"];

/// Figures that are tubular algebras (corank 2).
pub const TUBULAR: [&str; 13] =
    ["t333a", "t333b", "t333c", "t333d", "t2222a", "t442a", "t442b", "t442c", "t442d", "f13", "f15", "f17", "f19"];

const EMBEDDED: &[(&str, &str)] = &[
    ("case333.qp", include_str!("../data/case333.qp")),
    ("case2222.qp", include_str!("../data/case2222.qp")),
    ("case442.qp", include_str!("../data/case442.qp")),
    ("case632.qp", include_str!("../data/case632.qp")),
    ("f1.qp", include_str!("../data/f1.qp")),
    ("t333a.qp", include_str!("../data/t333a.qp")),
    ("f2.qp", include_str!("../data/f2.qp")),
    ("t333b.qp", include_str!("../data/t333b.qp")),
    ("f3.qp", include_str!("../data/f3.qp")),
    ("t333c.qp", include_str!("../data/t333c.qp")),
    ("f4.qp", include_str!("../data/f4.qp")),
    ("t333d.qp", include_str!("../data/t333d.qp")),
    ("f5.qp", include_str!("../data/f5.qp")),
    ("t2222a.qp", include_str!("../data/t2222a.qp")),
    ("f7.qp", include_str!("../data/f7.qp")),
    ("t442a.qp", include_str!("../data/t442a.qp")),
    ("f8.qp", include_str!("../data/f8.qp")),
    ("t442b.qp", include_str!("../data/t442b.qp")),
    ("f9.qp", include_str!("../data/f9.qp")),
    ("t442c.qp", include_str!("../data/t442c.qp")),
    ("f10.qp", include_str!("../data/f10.qp")),
    ("t442d.qp", include_str!("../data/t442d.qp")),
    ("f12.qp", include_str!("../data/f12.qp")),
    ("f13.qp", include_str!("../data/f13.qp")),
    ("f14.qp", include_str!("../data/f14.qp")),
    ("f15.qp", include_str!("../data/f15.qp")),
    ("f16.qp", include_str!("../data/f16.qp")),
    ("f17.qp", include_str!("../data/f17.qp")),
    ("f18.qp", include_str!("../data/f18.qp")),
    ("f19.qp", include_str!("../data/f19.qp")),
    ("333.chain", include_str!("../data/333.chain")),
    ("2222.chain", include_str!("../data/2222.chain")),
    ("442.chain", include_str!("../data/442.chain")),
    ("632.chain", include_str!("../data/632.chain")),
];

/// How to treat the parameter of the (2,2,2,2) family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaChoice {
    Value(BigRational),
    Symbolic,
}

impl Default for LambdaChoice {
    fn default() -> Self {
        LambdaChoice::Value(BigRational::from_integer(BigInt::from(2)))
    }
}

impl LambdaChoice {
    pub fn int(n: i64) -> LambdaChoice {
        LambdaChoice::Value(BigRational::from_integer(BigInt::from(n)))
    }

    /// Accepts `symbolic`, an integer or `p/q`; rejects 0 and 1.
    pub fn parse(text: &str) -> Result<LambdaChoice> {
        if text == "symbolic" {
            return Ok(LambdaChoice::Symbolic);
        }
        let bad = || Error::ParseError { line: 0, column: 0, message: format!("bad lambda `{text}`") };
        let value = match text.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.parse().map_err(|_| bad())?;
                let q: BigInt = q.parse().map_err(|_| bad())?;
                if q == BigInt::from(0) {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
        };
        let choice = LambdaChoice::Value(value);
        choice.check()?;
        Ok(choice)
    }

    pub fn check(&self) -> Result<()> {
        if let LambdaChoice::Value(v) = self {
            if *v == BigRational::from_integer(0.into()) || *v == BigRational::from_integer(1.into()) {
                return Err(Error::ForbiddenValue(v.to_string()));
            }
        }
        Ok(())
    }

    pub fn apply_qp(&self, qp: &Qp) -> Result<Qp> {
        match self {
            LambdaChoice::Value(v) if !qp.is_rational() => qp.specialize(v),
            LambdaChoice::Value(_) => {
                self.check()?;
                Ok(qp.clone())
            }
            LambdaChoice::Symbolic => Ok(qp.clone()),
        }
    }

    pub fn apply_relations(&self, rels: &[FreeElement]) -> Result<Vec<FreeElement>> {
        self.check()?;
        match self {
            LambdaChoice::Value(v) => rels.iter().map(|r| r.specialize(v)).collect(),
            LambdaChoice::Symbolic => Ok(rels.to_vec()),
        }
    }
}

impl std::fmt::Display for LambdaChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LambdaChoice::Value(v) => write!(f, "{v}"),
            LambdaChoice::Symbolic => f.write_str("symbolic"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseRecord {
    pub name: String,
    /// The QP as written, with `lambda` left symbolic.
    pub qp: Qp,
    pub degrees: Vec<i64>,
    /// Expected projective dimension vectors, row `i` is `P_{i+1}`.
    pub projectives: IntMatrix,
}

impl CaseRecord {
    pub fn qp_at(&self, lambda: &LambdaChoice) -> Result<Qp> {
        lambda.apply_qp(&self.qp)
    }

    pub fn jacobian(&self, lambda: &LambdaChoice) -> Result<PresentedAlgebra> {
        self.qp_at(lambda)?.jacobian(DEFAULT_L_MAX)
    }

    pub fn vertex_count(&self) -> usize {
        self.qp.quiver.vertex_count()
    }
}

/// A subalgebra presentation: quiver with relations, vertices labelled `v@z` by base vertex
/// and covering level.
#[derive(Clone, Debug)]
pub struct Figure {
    pub id: String,
    pub case: String,
    pub caption: String,
    pub quiver: Quiver,
    pub relations: Vec<FreeElement>,
}

impl Figure {
    pub fn algebra(&self, lambda: &LambdaChoice) -> Result<PresentedAlgebra> {
        let rels = lambda.apply_relations(&self.relations)?;
        PresentedAlgebra::compute(self.quiver.clone(), rels, DEFAULT_L_MAX)
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// `(base vertex, level)` of each vertex, base vertices numbered from 0.
    pub fn positions(&self) -> Vec<(usize, i64)> {
        self.quiver.labels().iter().map(|l| parse_position(l).expect("validated at load")).collect()
    }
}

/// Parse a `v@z` label into a 0-based base vertex and a level.
pub fn parse_position(label: &str) -> Option<(usize, i64)> {
    let (v, z) = label.split_once('@')?;
    let v: usize = v.parse().ok()?;
    Some((v.checked_sub(1)?, z.parse().ok()?))
}

pub fn position_label(v: usize, z: i64) -> String {
    format!("{}@{}", v + 1, z)
}

/// Where catalog files are read from.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    dir: Option<PathBuf>,
}

impl Catalog {
    pub fn embedded() -> Catalog {
        Catalog { dir: None }
    }

    pub fn from_dir(dir: impl Into<PathBuf>) -> Catalog {
        Catalog { dir: Some(dir.into()) }
    }

    /// Embedded data unless `QPFORGE_DATA` is set.
    pub fn from_env() -> Catalog {
        match std::env::var_os("QPFORGE_DATA") {
            Some(d) if !d.is_empty() => Catalog::from_dir(d),
            _ => Catalog::embedded(),
        }
    }

    pub fn text(&self, file: &str) -> Result<Cow<'static, str>> {
        match &self.dir {
            Some(dir) => {
                let path = dir.join(file);
                std::fs::read_to_string(&path)
                    .map(Cow::Owned)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            }
            None => EMBEDDED
                .iter()
                .find(|(name, _)| *name == file)
                .map(|(_, text)| Cow::Borrowed(*text))
                .ok_or_else(|| Error::Io(format!("no embedded file {file}"))),
        }
    }

    pub fn case(&self, name: &str) -> Result<CaseRecord> {
        if !CASES.contains(&name) {
            return Err(Error::UnknownCase(name.to_string()));
        }
        let file = parse_qp(&self.text(&format!("case{name}.qp"))?)?;
        validate_case(name, file)
    }

    pub fn figure(&self, id: &str) -> Result<Figure> {
        if !FIGURES.contains(&id) {
            return Err(Error::UnknownFigure(id.to_string()));
        }
        let text = self.text(&format!("{id}.qp"))?;
        let caption = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .map(|l| l.trim().to_string())
            .unwrap_or_default();
        let file = parse_qp(&text)?;
        let case = caption
            .rsplit_once("case ")
            .map(|(_, c)| c.trim().to_string())
            .filter(|c| CASES.contains(&c.as_str()))
            .ok_or_else(|| Error::TranscriptionError(format!("figure {id} names no base case")))?;
        validate_figure(id, &file)?;
        Ok(Figure { id: id.to_string(), case, caption, quiver: file.quiver, relations: file.relations })
    }
}

fn validate_case(name: &str, file: QpFile) -> Result<CaseRecord> {
    let bad = |msg: String| Error::TranscriptionError(format!("case {name}: {msg}"));
    let q = &file.quiver;
    let n = q.vertex_count();
    if q.has_loops() || q.has_two_cycles() {
        return Err(bad("quiver has loops or 2-cycles".into()));
    }
    if file.degrees.iter().any(|&d| d != 0 && d != 1) {
        return Err(bad("arrow degrees must be 0 or 1".into()));
    }
    let qp = file.qp();
    match qp.homogeneity() {
        Some(Homogeneity::Degree(1)) => {}
        other => return Err(bad(format!("potential is not homogeneous of degree 1: {other:?}"))),
    }
    let drop: Vec<usize> = (0..q.arrow_count()).filter(|&a| file.degrees[a] != 0).collect();
    if !q.without_arrows(&drop).is_acyclic() {
        return Err(bad("degree-0 arrows contain an oriented cycle".into()));
    }
    let mut table = vec![None; n];
    for (v, row) in &file.projectives {
        if table[*v].replace(row.clone()).is_some() {
            return Err(bad(format!("projective {} listed twice", v + 1)));
        }
    }
    let projectives = table
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| bad(format!("projective {} missing", v + 1))))
        .collect::<Result<IntMatrix>>()?;
    Ok(CaseRecord { name: name.to_string(), degrees: file.degrees.clone(), qp, projectives })
}

fn validate_figure(id: &str, file: &QpFile) -> Result<()> {
    let bad = |msg: String| Error::TranscriptionError(format!("figure {id}: {msg}"));
    for l in file.quiver.labels() {
        if parse_position(l).is_none() {
            return Err(bad(format!("vertex label `{l}` is not of the form v@z")));
        }
    }
    if !file.potential.is_zero() {
        return Err(bad("figures carry relations, not a potential".into()));
    }
    for r in &file.relations {
        let mut ends = r.terms().map(|(p, _)| (p.source, p.target));
        let first = ends.next().ok_or_else(|| bad("empty relation".into()))?;
        if ends.any(|e| e != first) {
            return Err(bad(format!("relation {} mixes endpoints", r.display(&file.quiver))));
        }
    }
    Ok(())
}

pub fn get_case(name: &str) -> Result<CaseRecord> {
    Catalog::from_env().case(name)
}

pub fn get_subalgebra(id: &str) -> Result<Figure> {
    Catalog::from_env().figure(id)
}
