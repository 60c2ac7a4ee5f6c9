//! Linear combinations of paths, potentials and cyclic derivatives.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};
use crate::scalar::Scalar;

/// Finite linear combination of paths. Paths longer than `truncation` (when set) are dropped
/// and `truncated` records that this happened.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Path, Scalar>,
    truncation: Option<usize>,
    truncated: bool,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn with_truncation(truncation: Option<usize>) -> Self {
        FreeElement { truncation, ..FreeElement::default() }
    }

    pub fn from_path(p: Path, c: Scalar) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(p, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, Scalar)>) -> Self {
        let mut e = FreeElement::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn was_truncated(&self) -> bool {
        self.truncated
    }

    pub fn truncate(&mut self, l: usize) {
        self.truncation = Some(self.truncation.map_or(l, |t| t.min(l)));
        let before = self.terms.len();
        self.terms.retain(|p, _| p.len() <= l);
        if self.terms.len() != before {
            self.truncated = true;
        }
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if self.truncation.is_some_and(|l| p.len() > l) {
            self.truncated = true;
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    pub fn remove(&mut self, p: &Path) -> Option<Scalar> {
        self.terms.remove(p)
    }

    fn merged_truncation(&self, other: &FreeElement) -> Option<usize> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.truncation = self.merged_truncation(other);
        out.truncated |= other.truncated;
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &FreeElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (p, d) in &other.terms {
            self.add_term(p.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        let mut out = FreeElement::with_truncation(self.truncation);
        out.truncated = self.truncated;
        for (p, d) in &self.terms {
            out.add_term(p.clone(), c * d);
        }
        out
    }

    pub fn neg(&self) -> FreeElement {
        self.scale(&Scalar::int(-1))
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        self.add(&other.neg())
    }

    /// Product `self * other` in word notation (terms of `other` are applied first).
    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::with_truncation(self.merged_truncation(other));
        out.truncated = self.truncated || other.truncated;
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(r) = Path::compose(p, q) {
                    out.add_term(r, c * d);
                }
            }
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<FreeElement> {
        let mut out = FreeElement::with_truncation(self.truncation);
        out.truncated = self.truncated;
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn specialize(&self, value: &BigRational) -> Result<FreeElement> {
        self.map_coefficients(|c| c.specialize(value))
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_rational)
    }

    /// Render as `c1*word1 + c2*word2 ...` using arrow names from `q`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let coeff = c.to_string();
            let (neg, coeff) = match coeff.strip_prefix('-') {
                Some(rest) if c.is_rational() => (true, rest.to_string()),
                _ => (false, coeff),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = q.word(p);
            if coeff == "1" {
                out.push_str(&word);
            } else if c.is_rational() {
                out.push_str(&format!("{}*{}", coeff, word));
            } else {
                out.push_str(&format!("({})*{}", coeff, word));
            }
        }
        out
    }
}

/// Rotation of a cycle that is least in the arrow-index order.
pub fn cyclic_normal_form(q: &Quiver, cycle: &Path) -> Path {
    let n = cycle.len();
    let mut best = 0;
    for k in 1..n {
        let better = (0..n)
            .map(|i| cycle.arrows[(k + i) % n])
            .cmp((0..n).map(|i| cycle.arrows[(best + i) % n]))
            .is_lt();
        if better {
            best = k;
        }
    }
    q.rotate_cycle(cycle, best)
}

/// A potential: linear combination of cycles, each stored as its least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Potential {
    element: FreeElement,
}

impl Potential {
    pub fn zero() -> Self {
        Potential::default()
    }

    /// Normalize a combination of cycles.
    pub fn from_element(q: &Quiver, e: &FreeElement) -> Result<Potential> {
        let mut out = FreeElement::with_truncation(e.truncation());
        for (p, c) in e.terms() {
            if !p.is_cycle() {
                return Err(Error::NotACycle(q.word(p)));
            }
            out.add_term(cyclic_normal_form(q, p), c.clone());
        }
        Ok(Potential { element: out })
    }

    /// Build from `(coefficient, word)` pairs; words read right-to-left.
    pub fn from_words<S: AsRef<str>>(q: &Quiver, terms: &[(Scalar, Vec<S>)]) -> Result<Potential> {
        let mut e = FreeElement::zero();
        for (c, w) in terms {
            let p = q.path_from_word(w)?;
            if !p.is_cycle() {
                return Err(Error::NotACycle(q.word(&p)));
            }
            e.add_term(p, c.clone());
        }
        Potential::from_element(q, &e)
    }

    pub fn element(&self) -> &FreeElement {
        &self.element
    }

    pub fn term_count(&self) -> usize {
        self.element.len()
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.element.terms()
    }

    pub fn max_term_length(&self) -> usize {
        self.element.max_length().unwrap_or(0)
    }

    pub fn specialize(&self, value: &BigRational) -> Result<Potential> {
        Ok(Potential { element: self.element.specialize(value)? })
    }

    pub fn is_rational(&self) -> bool {
        self.element.is_rational()
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.element.display(q)
    }
}

/// `∂_a W`: for each occurrence of `a` in a cycle, the path that continues after `a` around the
/// cycle back to the start of `a`. Supported on paths from target(a) to source(a).
pub fn cyclic_derivative(q: &Quiver, w: &Potential, a: usize) -> Result<FreeElement> {
    if a >= q.arrow_count() {
        return Err(Error::UnknownArrow(format!("#{a}")));
    }
    let mut out = FreeElement::with_truncation(w.element.truncation());
    let arrow = q.arrow(a);
    for (cycle, c) in w.terms() {
        let n = cycle.len();
        for p in 0..n {
            if cycle.arrows[p] != a {
                continue;
            }
            let arrows: Vec<usize> = (1..n).map(|i| cycle.arrows[(p + i) % n]).collect();
            let path = if arrows.is_empty() {
                Path::trivial(arrow.target)
            } else {
                q.path_from_arrows(arrows)?
            };
            out.add_term(path, c.clone());
        }
    }
    Ok(out)
}

/// Apply the algebra map sending arrow `x` to `images[x]` (or to itself when `None`),
/// truncating at path length `l`.
pub fn substitute(q: &Quiver, e: &FreeElement, images: &[Option<FreeElement>], l: usize) -> Result<FreeElement> {
    for (x, img) in images.iter().enumerate() {
        if let Some(img) = img {
            let arrow = q.arrow(x);
            if img.terms().any(|(p, _)| p.source != arrow.source || p.target != arrow.target) {
                return Err(Error::EndpointMismatch(arrow.name.clone()));
            }
        }
    }
    let mut out = FreeElement::with_truncation(Some(l));
    out.truncated = e.was_truncated();
    for (p, c) in e.terms() {
        if p.is_empty() {
            out.add_term(p.clone(), c.clone());
            continue;
        }
        let mut acc = FreeElement::with_truncation(Some(l));
        acc.add_term(Path::trivial(p.source), c.clone());
        for &x in &p.arrows {
            let img = match images.get(x).and_then(Option::as_ref) {
                Some(img) => img.clone(),
                None => FreeElement::from_path(q.arrow_path(x), Scalar::one()),
            };
            acc = img.mul(&acc);
            acc.truncate(l);
            if acc.is_zero() {
                break;
            }
        }
        out.truncated |= acc.was_truncated();
        out.add_scaled(&acc, &Scalar::one());
    }
    Ok(out)
}

/// Outcome of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero potential is homogeneous of every degree.
    Any,
    Degree(i64),
    NotHomogeneous,
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homogeneity::Any => write!(f, "any"),
            Homogeneity::Degree(d) => write!(f, "{d}"),
            Homogeneity::NotHomogeneous => write!(f, "not homogeneous"),
        }
    }
}

pub fn homogeneous_degree(w: &Potential, degrees: &[i64]) -> Homogeneity {
    let mut found = None;
    for (p, _) in w.terms() {
        let d = p.degree(degrees);
        match found {
            None => found = Some(d),
            Some(e) if e != d => return Homogeneity::NotHomogeneous,
            _ => {}
        }
    }
    found.map_or(Homogeneity::Any, Homogeneity::Degree)
}
