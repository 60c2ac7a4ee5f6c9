//! Finite windows `[-w, w]` of the Z-covering of a graded QP whose potential is homogeneous
//! of degree 1.

use serde::Serialize;

use crate::catalog::position_label;
use crate::error::{Error, Result};
use crate::jacobian::{jacobian_relations, PresentedAlgebra, DEFAULT_L_MAX};
use crate::linalg::{DimVector, IntMatrix};
use crate::potential::{FreeElement, Homogeneity};
use crate::qp::Qp;
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug)]
pub struct CoveringWindow {
    window: i64,
    base_vertices: usize,
    base: PresentedAlgebra,
    /// Largest degree of a basis path of the base algebra.
    spread: i64,
    quiver: Quiver,
    arrow_origin: Vec<(usize, i64)>,
    dropped_relations: usize,
    algebra: PresentedAlgebra,
    cartan: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringProjective {
    pub vertex: usize,
    pub level: i64,
    pub interior: bool,
    pub dims: DimVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushDown {
    pub vertex: usize,
    pub level: i64,
    pub expected: DimVector,
    pub actual: DimVector,
    pub ok: bool,
}

fn lift(q: &Quiver, base: &Quiver, degrees: &[i64], p: &Path, level: i64, w: i64) -> Option<Path> {
    let n = base.vertex_count();
    let index = |v: usize, z: i64| -> Option<usize> { (z.abs() <= w).then(|| (z + w) as usize * n + v) };
    let mut z = level;
    let mut arrows = Vec::with_capacity(p.len());
    for &a in &p.arrows {
        let name = format!("{}@{}", base.arrow(a).name, z);
        arrows.push(q.arrow_index(&name)?);
        z += degrees[a];
    }
    if arrows.is_empty() {
        return Some(Path::trivial(index(p.source, level)?));
    }
    q.path_from_arrows(arrows).ok()
}

impl CoveringWindow {
    /// Build the window `[-w, w]`. The QP must carry degrees in `{0, 1}` making the potential
    /// homogeneous of degree 1.
    pub fn build(qp: &Qp, w: usize) -> Result<CoveringWindow> {
        let degrees = qp.degrees.clone().ok_or_else(|| Error::BadDegrees("QP carries no grading".into()))?;
        if let Some(d) = degrees.iter().find(|&&d| d != 0 && d != 1) {
            return Err(Error::BadDegrees(format!("degree {d}")));
        }
        match qp.homogeneity() {
            Some(Homogeneity::Degree(1)) | Some(Homogeneity::Any) => {}
            _ => return Err(Error::NotHomogeneous),
        }
        let w = w as i64;
        let bq = &qp.quiver;
        let n = bq.vertex_count();
        let base = qp.jacobian(DEFAULT_L_MAX)?;
        let spread = base.basis().iter().map(|p| p.degree(&degrees)).max().unwrap_or(0);

        let mut labels = Vec::new();
        for z in -w..=w {
            for v in 0..n {
                labels.push(position_label(v, z));
            }
        }
        let mut arrows = Vec::new();
        let mut arrow_origin = Vec::new();
        for z in -w..=w {
            for (i, a) in bq.arrows().iter().enumerate() {
                let zt = z + degrees[i];
                if zt <= w {
                    let s = (z + w) as usize * n + a.source;
                    let t = (zt + w) as usize * n + a.target;
                    arrows.push((format!("{}@{}", a.name, z), s, t));
                    arrow_origin.push((i, z));
                }
            }
        }
        let quiver = Quiver::with_labels(labels, arrows)?;

        let mut relations = Vec::new();
        let mut dropped = 0;
        for r in jacobian_relations(bq, &qp.potential)? {
            if r.is_zero() {
                continue;
            }
            for z in -w..=w {
                let mut lifted = FreeElement::zero();
                let mut fits = true;
                for (p, c) in r.terms() {
                    match lift(&quiver, bq, &degrees, p, z, w) {
                        Some(lp) => lifted.add_term(lp, c.clone()),
                        None => fits = false,
                    }
                }
                if fits {
                    relations.push(lifted);
                } else {
                    dropped += 1;
                }
            }
        }
        let algebra = PresentedAlgebra::compute(quiver.clone(), relations, DEFAULT_L_MAX)?;
        let cartan = algebra.projective_dim_vectors();
        Ok(CoveringWindow {
            window: w,
            base_vertices: n,
            base,
            spread,
            quiver,
            arrow_origin,
            dropped_relations: dropped,
            algebra,
            cartan,
        })
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &PresentedAlgebra {
        &self.base
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base_vertices
    }

    /// Base arrow and source level of each covering arrow.
    pub fn arrow_origin(&self) -> &[(usize, i64)] {
        &self.arrow_origin
    }

    /// Lifted relations that would leave the window.
    pub fn dropped_relations(&self) -> usize {
        self.dropped_relations
    }

    pub fn spread(&self) -> i64 {
        self.spread
    }

    pub fn is_acyclic(&self) -> bool {
        self.quiver.is_acyclic()
    }

    pub fn vertex(&self, v: usize, z: i64) -> Option<usize> {
        (z.abs() <= self.window && v < self.base_vertices).then(|| (z + self.window) as usize * self.base_vertices + v)
    }

    pub fn position(&self, idx: usize) -> (usize, i64) {
        (idx % self.base_vertices, (idx / self.base_vertices) as i64 - self.window)
    }

    /// Covering vertex for a `v@z` label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.quiver.vertex_by_label(label)
    }

    /// A projective at level `z` is untouched by the window edge iff its support, which spans
    /// levels `z..=z + spread`, fits.
    pub fn is_interior(&self, z: i64) -> bool {
        z >= -self.window && z + self.spread <= self.window
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn projectives(&self) -> Vec<CoveringProjective> {
        (0..self.quiver.vertex_count())
            .map(|i| {
                let (vertex, level) = self.position(i);
                CoveringProjective { vertex, level, interior: self.is_interior(level), dims: self.cartan[i].clone() }
            })
            .collect()
    }

    /// Dimension of `P` at each level of the window.
    fn level_sums(&self, idx: usize) -> Vec<(i64, i64)> {
        (-self.window..=self.window)
            .map(|z| {
                let total = (0..self.base_vertices).map(|v| self.cartan[idx][self.vertex(v, z).unwrap()]).sum();
                (z, total)
            })
            .collect()
    }

    pub fn support_width(&self, idx: usize) -> usize {
        self.level_sums(idx).iter().filter(|(_, t)| *t > 0).count()
    }

    /// Sum the interior covering projective at `v` over the fibres of each base vertex.
    pub fn push_down(&self, idx: usize) -> DimVector {
        let mut out = vec![0; self.base_vertices];
        for (j, &d) in self.cartan[idx].iter().enumerate() {
            out[j % self.base_vertices] += d;
        }
        out
    }

    /// For every base vertex, compare the push-down of the lowest interior projective with the
    /// base projective.
    pub fn push_down_check(&self) -> Result<Vec<PushDown>> {
        let z = -self.window;
        if !self.is_interior(z) {
            return Err(Error::WindowTooSmall(format!(
                "window {} but projectives span {} levels",
                self.window,
                self.spread + 1
            )));
        }
        let expected = self.base.projective_dim_vectors();
        Ok((0..self.base_vertices)
            .map(|v| {
                let actual = self.push_down(self.vertex(v, z).unwrap());
                PushDown { vertex: v, level: z, ok: actual == expected[v], expected: expected[v].clone(), actual }
            })
            .collect())
    }

    /// Projectives at `(v, z)` and `(v, z + 1)` agree up to the level shift, for all interior
    /// pairs.
    pub fn translation_equivariant(&self) -> bool {
        let n = self.base_vertices;
        for z in -self.window..self.window {
            if !self.is_interior(z + 1) {
                continue;
            }
            for v in 0..n {
                let a = &self.cartan[self.vertex(v, z).unwrap()];
                let b = &self.cartan[self.vertex(v, z + 1).unwrap()];
                for zz in -self.window..self.window {
                    for u in 0..n {
                        if a[self.vertex(u, zz).unwrap()] != b[self.vertex(u, zz + 1).unwrap()] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub fn build_window(qp: &Qp, w: usize) -> Result<CoveringWindow> {
    CoveringWindow::build(qp, w)
}
