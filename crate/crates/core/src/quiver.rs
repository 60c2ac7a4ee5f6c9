//! Quivers, paths and gradings.
//!
//! Vertices and arrows are indexed from 0 internally; text formats number vertices from 1.
//! A path stores its arrows in the order they are applied. Written as a word it reads
//! right-to-left, so the word `c b a` means: first `a`, then `b`, then `c`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
    index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl Quiver {
    /// Build and validate a quiver on `vertex_count` vertices (endpoints 0-based).
    pub fn new<S: Into<String>>(vertex_count: usize, arrows: Vec<(S, usize, usize)>) -> Result<Quiver> {
        let labels = (1..=vertex_count).map(|i| i.to_string()).collect();
        Quiver::with_labels(labels, arrows)
    }

    pub fn with_labels<S: Into<String>>(labels: Vec<String>, arrows: Vec<(S, usize, usize)>) -> Result<Quiver> {
        let n = labels.len();
        let mut index = HashMap::new();
        let mut list = Vec::with_capacity(arrows.len());
        let mut out_arrows = vec![Vec::new(); n];
        let mut in_arrows = vec![Vec::new(); n];
        for (name, s, t) in arrows {
            let name = name.into();
            for v in [s, t] {
                if v >= n {
                    return Err(Error::BadEndpoint { name, vertex: v + 1, count: n });
                }
            }
            if index.insert(name.clone(), list.len()).is_some() {
                return Err(Error::DuplicateArrowName(name));
            }
            out_arrows[s].push(list.len());
            in_arrows[t].push(list.len());
            list.push(Arrow { name, source: s, target: t });
        }
        Ok(Quiver { labels, arrows: list, index, out_arrows, in_arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.source == a.target)
    }

    /// Pairs of arrows `x -> y`, `y -> x` (loops excluded).
    pub fn two_cycles(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source == a.target {
                continue;
            }
            for &j in &self.out_arrows[a.target] {
                if j > i && self.arrows[j].target == a.source {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn has_two_cycles(&self) -> bool {
        !self.two_cycles().is_empty()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_arrows[v].len()).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Quiver with the given arrows removed (vertices kept).
    pub fn without_arrows(&self, drop: &[usize]) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, a)| (a.name.clone(), a.source, a.target))
            .collect();
        Quiver::with_labels(self.labels.clone(), arrows).expect("subquiver of a valid quiver")
    }

    /// Full subquiver on `vertices` (in the given order). Returns the subquiver and, for each of
    /// its arrows, the index of the arrow in `self`.
    pub fn full_subquiver(&self, vertices: &[usize]) -> (Quiver, Vec<usize>) {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut arrows = Vec::new();
        let mut origin = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (pos.get(&a.source), pos.get(&a.target)) {
                arrows.push((a.name.clone(), s, t));
                origin.push(i);
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        (Quiver::with_labels(labels, arrows).expect("subquiver of a valid quiver"), origin)
    }

    /// Vertices reachable from `start` by a path of length >= 0.
    pub fn reachable_from(&self, start: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack: Vec<usize> = start.to_vec();
        for &v in start {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// A vertex set is convex when every path between two of its vertices stays inside it.
    pub fn is_convex(&self, subset: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        for &v in subset {
            inside[v] = true;
        }
        let down = self.reachable_from(subset);
        let mut up = vec![false; n];
        let mut stack: Vec<usize> = subset.to_vec();
        for &v in subset {
            up[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &a in &self.in_arrows[v] {
                let s = self.arrows[a].source;
                if !up[s] {
                    up[s] = true;
                    stack.push(s);
                }
            }
        }
        (0..n).all(|v| inside[v] || !(down[v] && up[v]))
    }

    pub fn trivial_path(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arrow = &self.arrows[a];
        Path { source: arrow.source, target: arrow.target, arrows: vec![a] }
    }

    /// Parse a word (right-to-left) of arrow names into a path.
    pub fn path_from_word<S: AsRef<str>>(&self, word: &[S]) -> Result<Path> {
        if word.is_empty() {
            return Err(Error::NotAPath("empty word".into()));
        }
        let mut arrows = Vec::with_capacity(word.len());
        for name in word.iter().rev() {
            let name = name.as_ref();
            arrows.push(self.arrow_index(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))?);
        }
        self.path_from_arrows(arrows)
    }

    /// Path from arrow indices in application order.
    pub fn path_from_arrows(&self, arrows: Vec<usize>) -> Result<Path> {
        let first = *arrows.first().ok_or_else(|| Error::NotAPath("empty arrow list".into()))?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NotAPath(format!(
                    "`{}` cannot follow `{}`",
                    self.arrows[w[1]].name, self.arrows[w[0]].name
                )));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(Path { source: self.arrows[first].source, target: self.arrows[last].target, arrows })
    }

    /// All paths of exactly `len` arrows, in path order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut current: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &current {
                for &a in &self.out_arrows[p.target] {
                    next.push(p.then_arrow(a, self.arrows[a].target));
                }
            }
            current = next;
        }
        current.sort();
        current
    }

    /// Rotation of a cycle so that the arrow at position `k` (application order) comes first.
    pub fn rotate_cycle(&self, p: &Path, k: usize) -> Path {
        let mut arrows = p.arrows[k..].to_vec();
        arrows.extend_from_slice(&p.arrows[..k]);
        let base = self.arrows[arrows[0]].source;
        Path { source: base, target: base, arrows }
    }

    pub fn word(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.labels[p.source]);
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// A path: arrows in application order plus endpoints (needed for the trivial paths).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        !self.arrows.is_empty() && self.source == self.target
    }

    pub fn then_arrow(&self, a: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path { source: self.source, target, arrows }
    }

    /// The product `p q` in word notation: `q` first, then `p`. `None` is the zero path.
    pub fn compose(p: &Path, q: &Path) -> Option<Path> {
        if q.target != p.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(p.len() + q.len());
        arrows.extend_from_slice(&q.arrows);
        arrows.extend_from_slice(&p.arrows);
        Some(Path { source: q.source, target: p.target, arrows })
    }

    pub fn degree(&self, degrees: &[i64]) -> i64 {
        self.arrows.iter().map(|&a| degrees[a]).sum()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A quiver together with an integer degree on every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuiver {
    pub quiver: Quiver,
    pub degrees: Vec<i64>,
}

impl GradedQuiver {
    pub fn new(quiver: Quiver, degrees: Vec<i64>) -> Result<GradedQuiver> {
        if degrees.len() != quiver.arrow_count() {
            return Err(Error::DimensionMismatch { expected: quiver.arrow_count(), got: degrees.len() });
        }
        Ok(GradedQuiver { quiver, degrees })
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.degree(&self.degrees)
    }

    /// The quiver with all arrows of nonzero degree deleted.
    pub fn degree_zero_part(&self) -> Quiver {
        let drop: Vec<usize> = (0..self.degrees.len()).filter(|&i| self.degrees[i] != 0).collect();
        self.quiver.without_arrows(&drop)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} vertices, {} arrows", self.vertex_count(), self.arrow_count())?;
        for a in &self.arrows {
            writeln!(f, "  {}: {} -> {}", a.name, self.labels[a.source], self.labels[a.target])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic3() -> Quiver {
        // a: 1 -> 2, b: 2 -> 3, c: 3 -> 1
        Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap()
    }

    #[test]
    fn loops_and_two_cycles() {
        let q = Quiver::new(1, vec![("x", 0, 0)]).unwrap();
        assert!(q.has_loops());
        let q = Quiver::new(2, vec![("u", 0, 1), ("v", 1, 0)]).unwrap();
        assert!(q.has_two_cycles());
        assert!(!q.has_loops());
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Quiver::new(2, vec![("u", 0, 1), ("u", 1, 0)]),
            Err(Error::DuplicateArrowName(_))
        ));
        assert!(matches!(Quiver::new(2, vec![("u", 0, 2)]), Err(Error::BadEndpoint { .. })));
    }

    #[test]
    fn word_cba_is_a_cycle() {
        let q = cyclic3();
        let p = q.path_from_word(&["c", "b", "a"]).unwrap();
        assert!(p.is_cycle());
        assert_eq!(p.source, 0);
        assert_eq!(q.word(&p), "c b a");
        assert!(q.path_from_word(&["a", "b", "c"]).is_err());
    }

    #[test]
    fn composition() {
        let q = cyclic3();
        let a = q.arrow_path(0);
        let b = q.arrow_path(1);
        let c = q.arrow_path(2);
        let ba = Path::compose(&b, &a).unwrap();
        let cba = Path::compose(&c, &ba).unwrap();
        assert_eq!(cba, q.path_from_word(&["c", "b", "a"]).unwrap());
        assert_eq!(Path::compose(&Path::trivial(1), &a).unwrap(), a);
        assert!(Path::compose(&a, &b).is_none());
    }

    #[test]
    fn acyclicity() {
        assert!(!cyclic3().is_acyclic());
        assert!(Quiver::new(1, Vec::<(&str, usize, usize)>::new()).unwrap().is_acyclic());
        assert!(cyclic3().without_arrows(&[2]).is_acyclic());
    }

    #[test]
    fn convexity() {
        // 1 -> 2 -> 3 and 1 -> 3
        let q = Quiver::new(3, vec![("x", 0, 1), ("y", 1, 2), ("z", 0, 2)]).unwrap();
        assert!(!q.is_convex(&[0, 2]));
        assert!(q.is_convex(&[0, 1]));
        assert!(q.is_convex(&[0, 1, 2]));
    }

    #[test]
    fn path_counts() {
        let q = cyclic3();
        assert_eq!(q.paths_of_length(0).len(), 3);
        assert_eq!(q.paths_of_length(4).len(), 3);
    }
}
