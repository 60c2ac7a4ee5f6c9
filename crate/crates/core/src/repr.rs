//! Representations of presented algebras: Hom spaces, minimal projective resolutions,
//! Ext dimensions and one-point extensions.
//!
//! A representation assigns a column space `K^{d_v}` to each vertex and to each arrow
//! `x: s -> t` a `d_t x d_s` matrix.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::jacobian::PresentedAlgebra;
use crate::linalg::{DimVector, Matrix};
use crate::potential::FreeElement;
use crate::quiver::{Path, Quiver};
use crate::scalar::Scalar;

type Vector = Vec<Scalar>;

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<PresentedAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

fn same_ambient(a: &Arc<PresentedAlgebra>, b: &Arc<PresentedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || (a.quiver() == b.quiver() && a.relations() == b.relations())
}

fn apply(m: &Matrix, v: &[Scalar]) -> Vector {
    (0..m.rows())
        .map(|i| {
            let mut s = Scalar::zero();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() && !m.get(i, j).is_zero() {
                    s = &s + &(m.get(i, j) * x);
                }
            }
            s
        })
        .collect()
}

/// Matrix with the given vectors as columns.
fn columns(vs: &[Vector], dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, vs.len());
    for (j, v) in vs.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// A basis of the span of `vs` (reduced echelon rows).
fn span(vs: &[Vector], dim: usize) -> Vec<Vector> {
    if vs.is_empty() || dim == 0 {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vs.to_vec());
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Standard basis vectors completing a basis of `sub` to the whole space.
fn complement(sub: &[Vector], dim: usize) -> Vec<Vector> {
    let mut have = span(sub, dim);
    let mut out = Vec::new();
    for i in 0..dim {
        if have.len() == dim {
            break;
        }
        let mut trial = have.clone();
        trial.push(unit(dim, i));
        let s = span(&trial, dim);
        if s.len() > have.len() {
            out.push(unit(dim, i));
            have = s;
        }
    }
    out
}

fn coordinates(basis: &Matrix, v: &[Scalar]) -> Option<Vector> {
    if basis.cols() == 0 {
        return v.iter().all(Scalar::is_zero).then(Vec::new);
    }
    basis.solve(v)
}

fn mismatch(what: String) -> Error {
    Error::ShapeMismatch(what)
}

/// A direct sum of indecomposable projectives with the meaning of every coordinate.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    /// Top vertex of each summand.
    pub summands: Vec<usize>,
    pub module: Representation,
    /// Per vertex, `(summand, basis path)` for each coordinate.
    pub coordinates: Vec<Vec<(usize, Path)>>,
}

impl ProjectiveSum {
    pub fn new(algebra: &Arc<PresentedAlgebra>, summands: Vec<usize>) -> ProjectiveSum {
        let n = algebra.vertex_count();
        let mut coords = vec![Vec::new(); n];
        for (g, &u) in summands.iter().enumerate() {
            for v in 0..n {
                coords[v].extend(algebra.basis_between(u, v).map(|p| (g, p.clone())));
            }
        }
        let dims: Vec<usize> = coords.iter().map(Vec::len).collect();
        let q = algebra.quiver();
        let mut maps = Vec::with_capacity(q.arrow_count());
        for x in 0..q.arrow_count() {
            let a = q.arrow(x);
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            let (mut row0, mut col0) = (0, 0);
            for &u in &summands {
                let block = algebra.arrow_action(x, u);
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(row0 + i, col0 + j, block.get(i, j).clone());
                    }
                }
                row0 += block.rows();
                col0 += block.cols();
            }
            maps.push(m);
        }
        ProjectiveSum {
            summands,
            module: Representation { algebra: algebra.clone(), dims, maps },
            coordinates: coords,
        }
    }

    /// Coordinate of the top generator of summand `g`.
    pub fn generator(&self, g: usize) -> Vector {
        let u = self.summands[g];
        let pos = self.coordinates[u]
            .iter()
            .position(|(h, p)| *h == g && p.is_empty())
            .expect("trivial path is a basis element");
        unit(self.coordinates[u].len(), pos)
    }

    /// Multiplicity of each indecomposable projective.
    pub fn multiplicities(&self) -> DimVector {
        let mut t = vec![0; self.module.dims.len()];
        for &u in &self.summands {
            t[u] += 1;
        }
        t
    }
}

/// One step of a minimal resolution: the cover `P -> M` and its kernel.
#[derive(Clone, Debug)]
pub struct CoverStep {
    pub cover: ProjectiveSum,
    /// Per vertex, the cover map `P_v -> M_v`.
    pub map: Vec<Matrix>,
    /// The kernel as a representation, with per-vertex inclusion matrices into the cover.
    pub kernel: Representation,
    pub inclusion: Vec<Matrix>,
}

/// A minimal projective resolution `0 -> P2 -> P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub terms: Vec<ProjectiveSum>,
    /// `differentials[i]` maps `terms[i + 1]` to `terms[i]`, per vertex.
    pub differentials: Vec<Vec<Matrix>>,
}

impl Resolution {
    pub fn multiplicities(&self) -> Vec<DimVector> {
        self.terms.iter().map(ProjectiveSum::multiplicities).collect()
    }

    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.summands.is_empty()).unwrap_or(0)
    }
}

impl Representation {
    pub fn new(algebra: Arc<PresentedAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Representation> {
        let r = Representation { algebra, dims, maps };
        r.check_shapes()?;
        Ok(r)
    }

    pub fn zero(algebra: Arc<PresentedAlgebra>) -> Representation {
        let dims = vec![0; algebra.vertex_count()];
        Representation::with_zero_maps(algebra, dims)
    }

    fn with_zero_maps(algebra: Arc<PresentedAlgebra>, dims: Vec<usize>) -> Representation {
        let maps = algebra.quiver().arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        Representation { algebra, dims, maps }
    }

    pub fn simple(algebra: Arc<PresentedAlgebra>, i: usize) -> Representation {
        let mut dims = vec![0; algebra.vertex_count()];
        dims[i] = 1;
        Representation::with_zero_maps(algebra, dims)
    }

    pub fn projective(algebra: &Arc<PresentedAlgebra>, i: usize) -> Representation {
        ProjectiveSum::new(algebra, vec![i]).module
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    fn check_shapes(&self) -> Result<()> {
        let q = self.algebra.quiver();
        if self.dims.len() != q.vertex_count() {
            return Err(mismatch(format!("{} vertex spaces for {} vertices", self.dims.len(), q.vertex_count())));
        }
        if self.maps.len() != q.arrow_count() {
            return Err(mismatch(format!("{} matrices for {} arrows", self.maps.len(), q.arrow_count())));
        }
        for (m, a) in self.maps.iter().zip(q.arrows()) {
            let want = (self.dims[a.target], self.dims[a.source]);
            if (m.rows(), m.cols()) != want {
                return Err(mismatch(format!("arrow {} is {}x{}, expected {}x{}", a.name, m.rows(), m.cols(), want.0, want.1)));
            }
        }
        Ok(())
    }

    /// Matrix of a path (arrows applied in order).
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn evaluate(&self, e: &FreeElement) -> Option<Matrix> {
        let mut acc: Option<Matrix> = None;
        for (p, c) in e.terms() {
            let term = self.path_matrix(p).scale(c);
            acc = Some(match acc {
                None => term,
                Some(m) if m.rows() == term.rows() && m.cols() == term.cols() => m.add(&term),
                Some(_) => return None,
            });
        }
        acc
    }

    /// Whether every relation generator acts as zero.
    pub fn check_relations(&self) -> Result<bool> {
        self.check_shapes()?;
        for r in self.algebra.relations() {
            match self.evaluate(r) {
                Some(m) if !m.is_zero() => return Ok(false),
                None => return Err(mismatch("relation with mixed endpoints".into())),
                _ => {}
            }
        }
        Ok(true)
    }

    fn apply_path(&self, p: &Path, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for &a in &p.arrows {
            w = apply(&self.maps[a], &w);
        }
        w
    }

    /// Radical subspaces: images of all arrows into each vertex.
    pub fn radical_spaces(&self) -> Vec<Vec<Vector>> {
        let q = self.algebra.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut vs = Vec::new();
                for &x in q.in_arrows(v) {
                    let m = &self.maps[x];
                    for j in 0..m.cols() {
                        vs.push((0..m.rows()).map(|i| m.get(i, j).clone()).collect());
                    }
                }
                span(&vs, self.dims[v])
            })
            .collect()
    }

    /// Elements whose classes form a basis of the top, as `(vertex, vector)`.
    pub fn top_generators(&self) -> Vec<(usize, Vector)> {
        let rad = self.radical_spaces();
        let mut out = Vec::new();
        for (v, r) in rad.iter().enumerate() {
            for c in complement(r, self.dims[v]) {
                out.push((v, c));
            }
        }
        out
    }

    pub fn top(&self) -> DimVector {
        let rad = self.radical_spaces();
        self.dims.iter().zip(&rad).map(|(&d, r)| (d - r.len()) as i64).collect()
    }

    /// Submodule generated by the given elements.
    pub fn generated(&self, gens: &[(usize, Vector)]) -> Vec<Vec<Vector>> {
        let n = self.dims.len();
        let mut spaces: Vec<Vec<Vector>> = vec![Vec::new(); n];
        let mut queue: Vec<(usize, Vector)> = gens.to_vec();
        while let Some((v, x)) = queue.pop() {
            let mut trial = spaces[v].clone();
            trial.push(x.clone());
            let s = span(&trial, self.dims[v]);
            if s.len() == spaces[v].len() {
                continue;
            }
            spaces[v] = s;
            for &a in self.algebra.quiver().out_arrows(v) {
                let t = self.algebra.quiver().arrow(a).target;
                queue.push((t, apply(&self.maps[a], &x)));
            }
        }
        spaces
    }

    /// The submodule with the given per-vertex bases (which must be closed under the arrows).
    pub fn submodule(&self, bases: &[Vec<Vector>]) -> Result<Representation> {
        let q = self.algebra.quiver();
        let cols: Vec<Matrix> = bases.iter().zip(&self.dims).map(|(b, &d)| columns(b, d)).collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(q.arrow_count());
        for (x, a) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for (j, b) in bases[a.source].iter().enumerate() {
                let img = apply(&self.maps[x], b);
                let y = coordinates(&cols[a.target], &img)
                    .ok_or_else(|| mismatch(format!("subspaces are not closed under arrow {}", a.name)))?;
                for (i, c) in y.into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            maps.push(m);
        }
        Ok(Representation { algebra: self.algebra.clone(), dims, maps })
    }

    /// The quotient by the submodule with the given per-vertex bases.
    pub fn quotient(&self, bases: &[Vec<Vector>]) -> Result<Representation> {
        let q = self.algebra.quiver();
        // rows of proj[v] span the annihilator of the subspace, so ker proj[v] = subspace
        let proj: Vec<Matrix> = bases
            .iter()
            .zip(&self.dims)
            .map(|(b, &d)| {
                let ann = if b.is_empty() { (0..d).map(|i| unit(d, i)).collect() } else { Matrix::from_rows(b.clone()).kernel() };
                let mut m = Matrix::zeros(ann.len(), d);
                for (i, r) in ann.iter().enumerate() {
                    for (j, c) in r.iter().enumerate() {
                        m.set(i, j, c.clone());
                    }
                }
                m
            })
            .collect();
        let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
        let mut maps = Vec::with_capacity(q.arrow_count());
        for (x, a) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(dims[a.target], dims[a.source]);
            for j in 0..dims[a.source] {
                let lift = proj[a.source].solve(&unit(dims[a.source], j)).expect("full row rank");
                let img = apply(&proj[a.target], &apply(&self.maps[x], &lift));
                for (i, c) in img.into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            maps.push(m);
        }
        let r = Representation { algebra: self.algebra.clone(), dims, maps };
        let closed = q.arrows().iter().enumerate().all(|(x, a)| {
            bases[a.source].iter().all(|b| apply(&proj[a.target], &apply(&self.maps[x], b)).iter().all(Scalar::is_zero))
        });
        if !closed {
            return Err(mismatch("subspaces are not closed under the arrows".into()));
        }
        Ok(r)
    }

    /// Radical as a submodule.
    pub fn radical(&self) -> Result<Representation> {
        self.submodule(&self.radical_spaces())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !same_ambient(&self.algebra, &other.algebra) {
            return Err(Error::AmbientMismatch);
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        Ok(Representation { algebra: self.algebra.clone(), dims, maps })
    }

    /// Move the representation to `target`, whose vertex `u` corresponds to `map[u]` here
    /// (`None`: zero space). Arrows are matched by name.
    pub fn transfer(&self, target: Arc<PresentedAlgebra>, map: &[Option<usize>]) -> Result<Representation> {
        let tq = target.quiver();
        if map.len() != tq.vertex_count() {
            return Err(mismatch(format!("vertex map has {} entries for {} vertices", map.len(), tq.vertex_count())));
        }
        let q = self.algebra.quiver();
        let dims: Vec<usize> = map.iter().map(|m| m.map_or(0, |v| self.dims[v])).collect();
        let mut maps = Vec::with_capacity(tq.arrow_count());
        for a in tq.arrows() {
            let m = match (map[a.source], map[a.target]) {
                (Some(s), Some(t)) => {
                    let x = q
                        .arrow_index(&a.name)
                        .filter(|&x| q.arrow(x).source == s && q.arrow(x).target == t)
                        .ok_or_else(|| mismatch(format!("no arrow {} between the mapped vertices", a.name)))?;
                    self.maps[x].clone()
                }
                _ => Matrix::zeros(dims[a.target], dims[a.source]),
            };
            maps.push(m);
        }
        Ok(Representation { algebra: target, dims, maps })
    }

    /// A random module with every vertex space of dimension at most `max_dim`: a quotient or
    /// a submodule of a small sum of projectives cut by random elements. Falls back to a
    /// random simple after repeated oversize draws.
    pub fn random<R: Rng>(algebra: &Arc<PresentedAlgebra>, max_dim: usize, rng: &mut R) -> Representation {
        let n = algebra.vertex_count();
        for _ in 0..64 {
            let k = rng.gen_range(1..=2);
            let summands: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            let p = ProjectiveSum::new(algebra, summands).module;
            let gens: Vec<(usize, Vector)> = (0..rng.gen_range(0..=2))
                .filter_map(|_| {
                    let v = rng.gen_range(0..n);
                    (p.dims[v] > 0).then(|| (v, (0..p.dims[v]).map(|_| Scalar::int(rng.gen_range(-2..=2))).collect()))
                })
                .collect();
            let sub = p.generated(&gens);
            let m = if rng.gen_bool(0.5) { p.quotient(&sub) } else { p.submodule(&sub) }.expect("generated submodule");
            if !m.is_zero() && m.dims.iter().all(|&d| d <= max_dim) {
                return m;
            }
        }
        Representation::simple(algebra.clone(), rng.gen_range(0..n))
    }
}

/// Intertwiners `M -> N`: dimension and a basis, each element given by per-vertex matrices.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<(usize, Vec<Vec<Matrix>>)> {
    if !same_ambient(&m.algebra, &n.algebra) {
        return Err(Error::AmbientMismatch);
    }
    let q = m.algebra.quiver();
    let mut offset = Vec::with_capacity(m.dims.len());
    let mut unknowns = 0;
    for v in 0..m.dims.len() {
        offset.push(unknowns);
        unknowns += m.dims[v] * n.dims[v];
    }
    // f_v is n_v x m_v, entry (i, j) at offset[v] + i * m_v + j
    let mut rows: Vec<Vector> = Vec::new();
    for (x, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (mx, nx) = (&m.maps[x], &n.maps[x]);
        // (N_x f_s - f_t M_x)(i, j) = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..n.dims[s] {
                    let c = nx.get(i, k);
                    if !c.is_zero() {
                        let idx = offset[s] + k * m.dims[s] + j;
                        row[idx] = &row[idx] + c;
                    }
                }
                for k in 0..m.dims[t] {
                    let c = mx.get(k, j);
                    if !c.is_zero() {
                        let idx = offset[t] + i * m.dims[t] + k;
                        row[idx] = &row[idx] - c;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|i| unit(unknowns, i)).collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let basis = kernel
        .iter()
        .map(|vec| {
            (0..m.dims.len())
                .map(|v| {
                    let mut f = Matrix::zeros(n.dims[v], m.dims[v]);
                    for i in 0..n.dims[v] {
                        for j in 0..m.dims[v] {
                            f.set(i, j, vec[offset[v] + i * m.dims[v] + j].clone());
                        }
                    }
                    f
                })
                .collect()
        })
        .collect();
    Ok((kernel.len(), basis))
}

/// Projective cover of `m` and its kernel.
pub fn projective_cover(m: &Representation) -> Result<CoverStep> {
    let gens = m.top_generators();
    let cover = ProjectiveSum::new(&m.algebra, gens.iter().map(|(v, _)| *v).collect());
    let n = m.dims.len();
    let mut map = Vec::with_capacity(n);
    let mut kernel_bases = Vec::with_capacity(n);
    for v in 0..n {
        let images: Vec<Vector> =
            cover.coordinates[v].iter().map(|(g, p)| m.apply_path(p, &gens[*g].1)).collect();
        let phi = columns(&images, m.dims[v]);
        if m.dims[v] > 0 && phi.rank() != m.dims[v] {
            return Err(mismatch("top generators do not generate".into()));
        }
        kernel_bases.push(if m.dims[v] == 0 { (0..images.len()).map(|i| unit(images.len(), i)).collect() } else { phi.kernel() });
        map.push(phi);
    }
    let inclusion = kernel_bases.iter().zip(&cover.module.dims).map(|(b, &d)| columns(b, d)).collect();
    let kernel = cover.module.submodule(&kernel_bases)?;
    Ok(CoverStep { cover, map, kernel, inclusion })
}

/// Minimal projective resolution of length at most 2.
pub fn min_projective_resolution(m: &Representation) -> Result<Resolution> {
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut current = m.clone();
    let mut prev_inclusion: Option<Vec<Matrix>> = None;
    for _ in 0..3 {
        let step = projective_cover(&current)?;
        if let Some(inc) = prev_inclusion.take() {
            differentials.push(inc.iter().zip(&step.map).map(|(i, f)| i.mul(f)).collect());
        }
        terms.push(step.cover);
        prev_inclusion = Some(step.inclusion);
        current = step.kernel;
    }
    if !current.is_zero() {
        return Err(Error::ResolutionTooLong);
    }
    Ok(Resolution { terms, differentials })
}

/// Matrix of `Hom(P, N) -> Hom(P', N)` induced by `d: P' -> P`, in the coordinates
/// `Hom(P, N) = sum over summands g of N at the top of g`.
fn induced_hom(src: &ProjectiveSum, dst: &ProjectiveSum, d: &[Matrix], n: &Representation) -> Matrix {
    let offsets = |ps: &ProjectiveSum| {
        let mut o = Vec::new();
        let mut acc = 0;
        for &u in &ps.summands {
            o.push(acc);
            acc += n.dims[u];
        }
        (o, acc)
    };
    let (col_off, cols) = offsets(src);
    let (row_off, rows) = offsets(dst);
    let mut out = Matrix::zeros(rows, cols);
    for (h, &u) in dst.summands.iter().enumerate() {
        // d(generator of h) lies in src at vertex u
        let image = apply(&d[u], &dst.generator(h));
        for (k, c) in image.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, p) = &src.coordinates[u][k];
            let np = n.path_matrix(p).scale(c);
            for i in 0..np.rows() {
                for j in 0..np.cols() {
                    let (r, cc) = (row_off[h] + i, col_off[*g] + j);
                    let v = out.get(r, cc) + np.get(i, j);
                    out.set(r, cc, v);
                }
            }
        }
    }
    out
}

/// `(dim Ext^0, dim Ext^1, dim Ext^2)` from the Hom complex of the minimal resolution of `m`.
pub fn ext_dims(m: &Representation, n: &Representation) -> Result<[usize; 3]> {
    if !same_ambient(&m.algebra, &n.algebra) {
        return Err(Error::AmbientMismatch);
    }
    let res = min_projective_resolution(m)?;
    ext_dims_from(&res, n)
}

pub fn ext_dims_from(res: &Resolution, n: &Representation) -> Result<[usize; 3]> {
    let hom_dim = |ps: &ProjectiveSum| ps.summands.iter().map(|&u| n.dims[u]).sum::<usize>();
    let d0 = induced_hom(&res.terms[0], &res.terms[1], &res.differentials[0], n);
    let d1 = induced_hom(&res.terms[1], &res.terms[2], &res.differentials[1], n);
    let (r0, r1) = (d0.rank(), d1.rank());
    let h = [hom_dim(&res.terms[0]), hom_dim(&res.terms[1]), hom_dim(&res.terms[2])];
    Ok([h[0] - r0, h[1] - r1 - r0, h[2] - r1])
}

/// One-point extension `A[M]`: a new vertex `label` with arrows from it to the top of `M`
/// and relations lifted from generators of the first syzygy.
pub fn one_point_extension(a: &Arc<PresentedAlgebra>, m: &Representation, label: &str, l_max: usize) -> Result<PresentedAlgebra> {
    if !same_ambient(a, &m.algebra) {
        return Err(Error::AmbientMismatch);
    }
    let step = projective_cover(m)?;
    let q = a.quiver();
    let omega = q.vertex_count();
    let mut labels = q.labels().to_vec();
    labels.push(label.to_string());
    let mut arrows: Vec<(String, usize, usize)> = q.arrows().iter().map(|x| (x.name.clone(), x.source, x.target)).collect();
    let mut new_arrows = Vec::new();
    for (g, &u) in step.cover.summands.iter().enumerate() {
        let mut name = format!("{label}>{}", q.label(u));
        if step.cover.summands.iter().filter(|&&w| w == u).count() > 1 {
            name = format!("{name}.{}", g + 1);
        }
        new_arrows.push(arrows.len());
        arrows.push((name, omega, u));
    }
    let quiver = Quiver::with_labels(labels, arrows)?;
    let lift = |v: usize, x: &[Scalar]| -> FreeElement {
        let mut e = FreeElement::zero();
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, p) = &step.cover.coordinates[v][k];
            let mut arrows = vec![new_arrows[*g]];
            arrows.extend_from_slice(&p.arrows);
            e.add_term(Path { source: omega, target: v, arrows }, c.clone());
        }
        e
    };
    let mut relations = a.relations().to_vec();
    for (v, y) in step.kernel.top_generators() {
        let x = apply(&step.inclusion[v], &y);
        let r = lift(v, &x);
        if r.terms().any(|(p, _)| p.len() < 2) {
            return Err(Error::SyzygyLiftFailed(format!("generator at {} is not in the radical", q.label(v))));
        }
        relations.push(r);
    }
    let ext = PresentedAlgebra::compute(quiver, relations, l_max)?;
    let mut rad = ext.radical_of_projective(omega);
    rad.pop();
    if rad != m.dim_vector() {
        return Err(Error::SyzygyLiftFailed(format!("rad P has dimension vector {rad:?}, expected {:?}", m.dim_vector())));
    }
    Ok(ext)
}

/// Remove a vertex together with its arrows and every relation that touches it.
pub fn delete_vertex(a: &PresentedAlgebra, vertex: usize, l_max: usize) -> Result<PresentedAlgebra> {
    let q = a.quiver();
    let keep: Vec<usize> = (0..q.vertex_count()).filter(|&v| v != vertex).collect();
    let (sub, origin) = q.full_subquiver(&keep);
    let vmap = |v: usize| if v > vertex { v - 1 } else { v };
    let mut amap = vec![None; q.arrow_count()];
    for (i, &o) in origin.iter().enumerate() {
        amap[o] = Some(i);
    }
    let mut relations = Vec::new();
    'rel: for r in a.relations() {
        let mut e = FreeElement::zero();
        for (p, c) in r.terms() {
            let Some(arrows) = p.arrows.iter().map(|&x| amap[x]).collect::<Option<Vec<_>>>() else { continue 'rel };
            if p.source == vertex || p.target == vertex {
                continue 'rel;
            }
            e.add_term(Path { source: vmap(p.source), target: vmap(p.target), arrows }, c.clone());
        }
        relations.push(e);
    }
    PresentedAlgebra::compute(sub, relations, l_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_with_zero_relation() -> Arc<PresentedAlgebra> {
        let q = Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2)]).unwrap();
        let ba = FreeElement::from_path(q.path_from_arrows(vec![0, 1]).unwrap(), Scalar::one());
        Arc::new(PresentedAlgebra::compute(q, vec![ba], 8).unwrap())
    }

    #[test]
    fn projectives_satisfy_relations() {
        let a = a3_with_zero_relation();
        for i in 0..3 {
            let p = Representation::projective(&a, i);
            assert!(p.check_relations().unwrap());
            for j in 0..3 {
                let s = Representation::simple(a.clone(), j);
                assert_eq!(hom_space(&p, &s).unwrap().0, usize::from(i == j));
            }
        }
        let bad = Representation::new(a.clone(), vec![1, 1, 1], vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        assert!(!bad.check_relations().unwrap());
    }

    #[test]
    fn simple_resolution_has_length_two() {
        let a = a3_with_zero_relation();
        let s = Representation::simple(a.clone(), 0);
        let res = min_projective_resolution(&s).unwrap();
        assert_eq!(res.multiplicities(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let s2 = Representation::simple(a.clone(), 2);
        assert_eq!(ext_dims(&s, &s2).unwrap(), [0, 0, 1]);
    }

    #[test]
    fn extension_by_a_simple_and_back() {
        let a = a3_with_zero_relation();
        let s = Representation::simple(a.clone(), 0);
        let ext = one_point_extension(&a, &s, "w", 8).unwrap();
        assert_eq!(ext.quiver().arrow_count(), 3);
        assert_eq!(ext.relations().len(), 2);
        let back = delete_vertex(&ext, 3, 8).unwrap();
        assert_eq!(back.basis(), a.basis());
    }
}
