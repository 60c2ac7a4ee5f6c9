//! Finite-dimensional quotients of path algebras: path bases, normal forms, projectives.
//!
//! The ideal generated by the relations is computed modulo `J^N` (paths of length at least
//! `N` are zero) as a subspace in echelon form whose leading terms are the largest paths
//! (longer first, then lexicographic). `N` grows until every path of length `N - 1` lies in
//! the ideal; at that point the truncated quotient equals the complete one.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{DimVector, IntMatrix, Matrix};
use crate::potential::{cyclic_derivative, FreeElement, Potential};
use crate::quiver::{Path, Quiver};
use crate::scalar::Scalar;

pub const DEFAULT_L_MAX: usize = 12;

/// One relation per arrow: `∂_a W`.
pub fn jacobian_relations(q: &Quiver, w: &Potential) -> Result<Vec<FreeElement>> {
    if q.has_loops() || q.has_two_cycles() {
        return Err(Error::MalformedQp("quiver has loops or 2-cycles".into()));
    }
    (0..q.arrow_count()).map(|a| cyclic_derivative(q, w, a)).collect()
}

#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    quiver: Quiver,
    relations: Vec<FreeElement>,
    truncation: usize,
    pivots: HashMap<Path, FreeElement>,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    nilpotency: usize,
}

fn split_by_block(r: &FreeElement) -> Vec<FreeElement> {
    let mut blocks: BTreeMap<(usize, usize), FreeElement> = BTreeMap::new();
    for (p, c) in r.terms() {
        blocks.entry((p.source, p.target)).or_default().add_term(p.clone(), c.clone());
    }
    blocks.into_values().collect()
}

struct Closure<'a> {
    quiver: &'a Quiver,
    n: usize,
    pivots: HashMap<Path, FreeElement>,
}

impl Closure<'_> {
    fn reduce(&self, v: &mut FreeElement) {
        loop {
            let hit = v
                .terms()
                .rev()
                .find(|(p, _)| self.pivots.contains_key(*p))
                .map(|(p, c)| (p.clone(), c.clone()));
            match hit {
                Some((p, c)) => v.add_scaled(&self.pivots[&p], &-c),
                None => break,
            }
        }
    }

    fn insert_closure(&mut self, start: Vec<FreeElement>) {
        let mut work = start;
        while let Some(mut v) = work.pop() {
            v.truncate(self.n - 1);
            self.reduce(&mut v);
            let Some((lead, c)) = v.leading().map(|(p, c)| (p.clone(), c.clone())) else {
                continue;
            };
            let v = v.scale(&c.invert().expect("nonzero leading coefficient"));
            for &x in self.quiver.out_arrows(lead.target) {
                work.push(self.left_arrow(x, &v));
            }
            for &x in self.quiver.in_arrows(lead.source) {
                work.push(self.right_arrow(x, &v));
            }
            self.pivots.insert(lead, v);
        }
    }

    /// `x * v`: arrow `x` applied after every path of `v`.
    fn left_arrow(&self, x: usize, v: &FreeElement) -> FreeElement {
        let t = self.quiver.arrow(x).target;
        let mut out = FreeElement::zero();
        for (p, c) in v.terms() {
            if p.len() + 1 < self.n {
                out.add_term(p.then_arrow(x, t), c.clone());
            }
        }
        out
    }

    /// `v * x`: arrow `x` applied before every path of `v`.
    fn right_arrow(&self, x: usize, v: &FreeElement) -> FreeElement {
        let s = self.quiver.arrow(x).source;
        let mut out = FreeElement::zero();
        for (p, c) in v.terms() {
            if p.len() + 1 < self.n {
                let mut arrows = Vec::with_capacity(p.len() + 1);
                arrows.push(x);
                arrows.extend_from_slice(&p.arrows);
                out.add_term(Path { source: s, target: p.target, arrows }, c.clone());
            }
        }
        out
    }
}

impl PresentedAlgebra {
    /// Compute a path basis of `KQ / (rels)`; fails if the quotient does not become nilpotent
    /// below path length `l_max + 1`.
    pub fn compute(quiver: Quiver, relations: Vec<FreeElement>, l_max: usize) -> Result<PresentedAlgebra> {
        for r in &relations {
            if let Some((p, _)) = r.terms().find(|(p, _)| p.len() < 2) {
                return Err(Error::InconsistentRelation(format!("{} (term {})", r.display(&quiver), quiver.word(p))));
            }
        }
        let blocks: Vec<FreeElement> = relations.iter().flat_map(split_by_block).collect();
        let mut n = 2;
        loop {
            let mut closure = Closure { quiver: &quiver, n, pivots: HashMap::new() };
            closure.insert_closure(blocks.clone());
            let top = quiver.paths_of_length(n - 1);
            if top.iter().all(|p| closure.pivots.contains_key(p)) {
                let pivots = closure.pivots;
                let mut basis = Vec::new();
                for len in 0..n - 1 {
                    for p in quiver.paths_of_length(len) {
                        if !pivots.contains_key(&p) {
                            basis.push(p);
                        }
                    }
                }
                basis.sort_by(|a, b| (a.source, a.target).cmp(&(b.source, b.target)).then_with(|| a.cmp(b)));
                let basis_index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
                let nilpotency = basis.iter().map(Path::len).max().unwrap_or(0);
                return Ok(PresentedAlgebra { quiver, relations, truncation: n, pivots, basis, basis_index, nilpotency });
            }
            if n > l_max {
                return Err(Error::NotAdmissibleUpTo(l_max));
            }
            n += 1;
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Least `m` such that every path longer than `m` is zero.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// Paths of length at least this are zero by construction.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_position(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Basis paths from `i` to `j`.
    pub fn basis_between(&self, i: usize, j: usize) -> impl Iterator<Item = &Path> {
        self.basis.iter().filter(move |p| p.source == i && p.target == j)
    }

    pub fn basis_from(&self, i: usize) -> impl Iterator<Item = &Path> {
        self.basis.iter().filter(move |p| p.source == i)
    }

    /// Normal form of a linear combination of paths: a combination of basis paths.
    pub fn normal_form(&self, e: &FreeElement) -> FreeElement {
        let mut v = FreeElement::zero();
        for (p, c) in e.terms() {
            if p.len() < self.truncation {
                v.add_term(p.clone(), c.clone());
            }
        }
        loop {
            let hit = v
                .terms()
                .rev()
                .find(|(p, _)| self.pivots.contains_key(*p))
                .map(|(p, c)| (p.clone(), c.clone()));
            match hit {
                Some((p, c)) => v.add_scaled(&self.pivots[&p], &-c),
                None => break,
            }
        }
        v
    }

    pub fn normal_form_path(&self, p: &Path) -> FreeElement {
        self.normal_form(&FreeElement::from_path(p.clone(), Scalar::one()))
    }

    pub fn multiply(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        self.normal_form(&x.mul(y))
    }

    /// Row `i` is the dimension vector of the projective at `i` (paths starting at `i`).
    pub fn projective_dim_vectors(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut c = vec![vec![0i64; n]; n];
        for p in &self.basis {
            c[p.source][p.target] += 1;
        }
        c
    }

    pub fn cartan_matrix(&self) -> Result<IntMatrix> {
        let c = self.projective_dim_vectors();
        let det = Matrix::from_int(&c).determinant();
        if det.to_i64().map_or(true, |d| d.abs() != 1) {
            return Err(Error::NonInvertibleCartan(det.to_string()));
        }
        Ok(c)
    }

    pub fn radical_of_projective(&self, i: usize) -> DimVector {
        let mut row = self.projective_dim_vectors().swap_remove(i);
        row[i] -= 1;
        row
    }

    pub fn is_rational(&self) -> bool {
        self.pivots.values().all(FreeElement::is_rational)
    }

    /// Coordinates of a normal form in the basis.
    pub fn coordinates(&self, e: &FreeElement) -> Vec<(usize, Scalar)> {
        self.normal_form(e)
            .terms()
            .map(|(p, c)| (self.basis_index[p], c.clone()))
            .collect()
    }

    pub fn specialize(&self, value: &BigRational, l_max: usize) -> Result<PresentedAlgebra> {
        let rels = self.relations.iter().map(|r| r.specialize(value)).collect::<Result<Vec<_>>>()?;
        PresentedAlgebra::compute(self.quiver.clone(), rels, l_max)
    }

    /// Matrix of left multiplication by arrow `x` from `e_{s(x)} A e_i` to `e_{t(x)} A e_i`,
    /// in the basis order of [`Self::basis_between`]. Rows index the target paths.
    pub fn arrow_action(&self, x: usize, i: usize) -> Matrix {
        let arrow = self.quiver.arrow(x);
        let from: Vec<&Path> = self.basis_between(i, arrow.source).collect();
        let to: Vec<&Path> = self.basis_between(i, arrow.target).collect();
        let pos: HashMap<&Path, usize> = to.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let mut m = Matrix::zeros(to.len(), from.len());
        for (col, p) in from.iter().enumerate() {
            if p.len() + 1 >= self.truncation {
                continue;
            }
            let nf = self.normal_form_path(&p.then_arrow(x, arrow.target));
            for (q, c) in nf.terms() {
                m.set(pos[q], col, c.clone());
            }
        }
        m
    }
}

/// Cartan rows of `a` restricted to a vertex subset (in the subset's order).
pub fn restricted_dim_vectors(c: &IntMatrix, vertices: &[usize]) -> IntMatrix {
    vertices.iter().map(|&i| vertices.iter().map(|&j| c[i][j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semisimple_algebra() {
        let q = Quiver::new(3, Vec::<(&str, usize, usize)>::new()).unwrap();
        let a = PresentedAlgebra::compute(q, vec![], DEFAULT_L_MAX).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.cartan_matrix().unwrap(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.radical_of_projective(1), vec![0, 0, 0]);
    }

    #[test]
    fn a2_path_algebra() {
        let q = Quiver::new(2, vec![("x", 0, 1)]).unwrap();
        let a = PresentedAlgebra::compute(q, vec![], DEFAULT_L_MAX).unwrap();
        assert_eq!(a.cartan_matrix().unwrap(), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(a.nilpotency(), 1);
    }

    #[test]
    fn acyclic_without_relations_has_all_paths() {
        let q = Quiver::new(4, vec![("x", 0, 1), ("y", 1, 2), ("z", 2, 3), ("w", 0, 2)]).unwrap();
        let a = PresentedAlgebra::compute(q, vec![], DEFAULT_L_MAX).unwrap();
        // 4 trivial, 4 arrows, paths yx, zy, zw, zyx
        assert_eq!(a.dimension(), 12);
        assert_eq!(a.nilpotency(), 3);
    }

    #[test]
    fn commutative_square() {
        // 1 -> 2 -> 4 and 1 -> 3 -> 4 with the two paths equal
        let q = Quiver::new(4, vec![("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)]).unwrap();
        let r = FreeElement::from_path(q.path_from_word(&["b", "a"]).unwrap(), Scalar::one())
            .sub(&FreeElement::from_path(q.path_from_word(&["d", "c"]).unwrap(), Scalar::one()));
        let a = PresentedAlgebra::compute(q, vec![r], DEFAULT_L_MAX).unwrap();
        assert_eq!(a.projective_dim_vectors()[0], vec![1, 1, 1, 1]);
    }

    #[test]
    fn cyclic_with_zero_relations() {
        // oriented triangle with all length-2 paths zero
        let q = Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap();
        let rels = [["b", "a"], ["c", "b"], ["a", "c"]]
            .iter()
            .map(|w| FreeElement::from_path(q.path_from_word(w).unwrap(), Scalar::one()))
            .collect();
        let a = PresentedAlgebra::compute(q, rels, DEFAULT_L_MAX).unwrap();
        assert_eq!(a.dimension(), 6);
        assert_eq!(a.nilpotency(), 1);
    }

    #[test]
    fn non_admissible_is_reported() {
        let q = Quiver::new(2, vec![("a", 0, 1), ("b", 1, 0)]).unwrap();
        assert!(matches!(PresentedAlgebra::compute(q, vec![], 6), Err(Error::NotAdmissibleUpTo(6))));
    }

    #[test]
    fn short_relation_is_rejected() {
        let q = Quiver::new(2, vec![("a", 0, 1)]).unwrap();
        let r = FreeElement::from_path(q.arrow_path(0), Scalar::one());
        assert!(matches!(PresentedAlgebra::compute(q, vec![r], 6), Err(Error::InconsistentRelation(_))));
    }
}
