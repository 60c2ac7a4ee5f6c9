//! Line-oriented text format for quivers with potentials and presented algebras.
//!
//! ```text
//! quiver <name>
//! vertices <n>
//! label <i> <text>                         # optional vertex label
//! arrow <name> <src> <tgt> [deg=<0|1>]
//! term <coeff> <arrow> <arrow> ...         # potential term, rightmost arrow applied first
//! rel <coeff> <arrow> ... [; <coeff> <arrow> ...]   # relation generator
//! projective <i> <d1>,<d2>,...             # expected dimension vector of P_i
//! ```
//! Vertices are numbered from 1; `#` starts a comment.

use crate::error::{Error, Result};
use crate::linalg::DimVector;
use crate::potential::{FreeElement, Potential};
use crate::qp::Qp;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct QpFile {
    pub name: String,
    pub quiver: Quiver,
    pub degrees: Vec<i64>,
    pub potential: Potential,
    pub relations: Vec<FreeElement>,
    pub projectives: Vec<(usize, DimVector)>,
}

impl QpFile {
    pub fn qp(&self) -> Qp {
        Qp { quiver: self.quiver.clone(), potential: self.potential.clone(), degrees: Some(self.degrees.clone()) }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: s + 1 });
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::ParseError { line, column, message: message.into() }
}

struct PendingWord {
    line: usize,
    column: usize,
    coeff: Scalar,
    arrows: Vec<String>,
}

pub fn parse_qp(text: &str) -> Result<QpFile> {
    let mut name = None;
    let mut count: Option<usize> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut degrees = Vec::new();
    let mut terms: Vec<PendingWord> = Vec::new();
    let mut rels: Vec<Vec<PendingWord>> = Vec::new();
    let mut projectives = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        let need = |k: usize| -> Result<()> {
            if toks.len() < k {
                Err(perr(ln, raw.len() + 1, format!("`{}` needs {} fields", head.text, k - 1)))
            } else {
                Ok(())
            }
        };
        let vertex = |t: &Token| -> Result<usize> {
            let n = count.ok_or_else(|| perr(ln, t.column, "`vertices` must come first"))?;
            match t.text.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(perr(ln, t.column, format!("bad vertex `{}`", t.text))),
            }
        };
        match head.text {
            "quiver" => {
                need(2)?;
                name = Some(toks[1].text.to_string());
            }
            "vertices" => {
                need(2)?;
                let n = toks[1].text.parse::<usize>().map_err(|_| perr(ln, toks[1].column, "bad vertex count"))?;
                count = Some(n);
                labels = vec![None; n];
            }
            "label" => {
                need(3)?;
                let v = vertex(&toks[1])?;
                labels[v] = Some(toks[2].text.to_string());
            }
            "arrow" => {
                need(4)?;
                let s = vertex(&toks[2])?;
                let t = vertex(&toks[3])?;
                let mut deg = 0;
                if let Some(tok) = toks.get(4) {
                    deg = tok
                        .text
                        .strip_prefix("deg=")
                        .and_then(|d| d.parse::<i64>().ok())
                        .ok_or_else(|| perr(ln, tok.column, format!("expected deg=<int>, found `{}`", tok.text)))?;
                }
                if toks.len() > 5 {
                    return Err(perr(ln, toks[5].column, "unexpected field"));
                }
                if arrows.iter().any(|(n, _, _)| n == toks[1].text) {
                    return Err(perr(ln, toks[1].column, format!("duplicate arrow name `{}`", toks[1].text)));
                }
                arrows.push((toks[1].text.to_string(), s, t));
                degrees.push(deg);
            }
            "term" => {
                need(3)?;
                terms.push(parse_word(ln, &toks[1..])?);
            }
            "rel" => {
                let mut parts = Vec::new();
                let mut current: Vec<&Token> = Vec::new();
                for t in &toks[1..] {
                    if t.text == ";" {
                        parts.push(std::mem::take(&mut current));
                    } else {
                        current.push(t);
                    }
                }
                parts.push(current);
                let mut words = Vec::new();
                for part in parts {
                    if part.len() < 2 {
                        return Err(perr(ln, head.column, "relation part needs a coefficient and a word"));
                    }
                    let owned: Vec<Token> = part.iter().map(|t| Token { text: t.text, column: t.column }).collect();
                    words.push(parse_word(ln, &owned)?);
                }
                rels.push(words);
            }
            "projective" => {
                need(3)?;
                let v = vertex(&toks[1])?;
                let vec = toks[2]
                    .text
                    .split(',')
                    .map(|x| x.parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| perr(ln, toks[2].column, "bad dimension vector"))?;
                projectives.push((v, vec));
            }
            other => return Err(perr(ln, head.column, format!("unknown directive `{other}`"))),
        }
    }

    let n = count.ok_or_else(|| perr(1, 1, "missing `vertices` line"))?;
    let labels: Vec<String> =
        labels.into_iter().enumerate().map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string())).collect();
    let quiver = Quiver::with_labels(labels, arrows)?;

    let resolve = |w: &PendingWord| -> Result<FreeElement> {
        let path = quiver.path_from_word(&w.arrows).map_err(|e| perr(w.line, w.column, e.to_string()))?;
        Ok(FreeElement::from_path(path, w.coeff.clone()))
    };
    let mut pot = FreeElement::zero();
    for w in &terms {
        let e = resolve(w)?;
        if !e.terms().all(|(p, _)| p.is_cycle()) {
            return Err(perr(w.line, w.column, format!("term `{}` is not a cycle", w.arrows.join(" "))));
        }
        pot = pot.add(&e);
    }
    let potential = Potential::from_element(&quiver, &pot)?;
    let mut relations = Vec::new();
    for words in &rels {
        let mut r = FreeElement::zero();
        for w in words {
            r = r.add(&resolve(w)?);
        }
        relations.push(r);
    }
    for (v, vec) in &projectives {
        if vec.len() != n {
            return Err(Error::TranscriptionError(format!(
                "projective {} has {} entries, expected {}",
                v + 1,
                vec.len(),
                n
            )));
        }
    }
    Ok(QpFile {
        name: name.unwrap_or_default(),
        quiver,
        degrees,
        potential,
        relations,
        projectives,
    })
}

fn parse_word(line: usize, toks: &[Token]) -> Result<PendingWord> {
    let coeff = Scalar::parse(toks[0].text).map_err(|e| perr(line, toks[0].column, e.to_string()))?;
    Ok(PendingWord {
        line,
        column: toks[0].column,
        coeff,
        arrows: toks[1..].iter().map(|t| t.text.to_string()).collect(),
    })
}

/// Coefficient text accepted by the grammar, if the scalar is expressible in it.
fn coefficient_text(c: &Scalar) -> Result<String> {
    let text = c.to_string();
    match Scalar::parse(&text) {
        Ok(back) if &back == c => Ok(text),
        _ => Err(Error::BadCoefficient(text)),
    }
}

/// Serialize a QP (and optionally relations) in the text format.
pub fn write_qp(name: &str, qp: &Qp) -> Result<String> {
    let q = &qp.quiver;
    let mut out = format!("quiver {}\nvertices {}\n", name, q.vertex_count());
    for (i, l) in q.labels().iter().enumerate() {
        if l != &(i + 1).to_string() {
            out.push_str(&format!("label {} {}\n", i + 1, l));
        }
    }
    for (i, a) in q.arrows().iter().enumerate() {
        out.push_str(&format!("arrow {} {} {}", a.name, a.source + 1, a.target + 1));
        if let Some(d) = &qp.degrees {
            out.push_str(&format!(" deg={}", d[i]));
        }
        out.push('\n');
    }
    for (p, c) in qp.potential.terms() {
        out.push_str(&format!("term {} {}\n", coefficient_text(c)?, q.word(p)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "\
quiver tri
vertices 3
arrow a 1 2 deg=1
arrow b 2 3
arrow c 3 1   # closing arrow
term -2 c b a
";

    #[test]
    fn parse_and_write_round_trip() {
        let f = parse_qp(TRIANGLE).unwrap();
        assert_eq!(f.name, "tri");
        assert_eq!(f.quiver.arrow_count(), 3);
        assert_eq!(f.degrees, vec![1, 0, 0]);
        assert_eq!(f.potential.term_count(), 1);
        let text = write_qp("tri", &f.qp()).unwrap();
        let g = parse_qp(&text).unwrap();
        assert_eq!(g.potential, f.potential);
        assert_eq!(g.degrees, f.degrees);
    }

    #[test]
    fn parse_error_positions() {
        let bad = "quiver x\nvertices 2\narrow a 1 3\n";
        match parse_qp(bad) {
            Err(Error::ParseError { line, column, .. }) => assert_eq!((line, column), (3, 11)),
            other => panic!("{other:?}"),
        }
        let bad = "vertices 2\narrow a 1 2\narrow b 2 1\nterm 1 a b c\n";
        assert!(matches!(parse_qp(bad), Err(Error::ParseError { line: 4, .. })));
        let not_cycle = "vertices 3\narrow a 1 2\narrow b 2 3\nterm 1 b a\n";
        assert!(matches!(parse_qp(not_cycle), Err(Error::ParseError { line: 4, .. })));
        assert!(matches!(parse_qp("vertices 1\nfrobnicate\n"), Err(Error::ParseError { line: 2, column: 1, .. })));
    }

    #[test]
    fn relations_and_labels() {
        let text = "vertices 3\nlabel 1 1@0\narrow x 1 2\narrow y 2 3\narrow z 1 3\nrel 1 y x ; -1 z\n";
        let f = parse_qp(text).unwrap();
        assert_eq!(f.quiver.label(0), "1@0");
        assert_eq!(f.relations.len(), 1);
        assert_eq!(f.relations[0].len(), 2);
    }
}
