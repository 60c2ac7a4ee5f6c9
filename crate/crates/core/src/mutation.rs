//! QP mutation: premutation at a vertex, reduction by splitting off the trivial part,
//! random non-degeneracy probes and a practical fingerprint for comparing results.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isomorphism::quiver_isomorphic;
use crate::jacobian::DEFAULT_L_MAX;
use crate::linalg::{DimVector, IntMatrix};
use crate::potential::{cyclic_derivative, substitute, FreeElement, Potential};
use crate::qp::Qp;
use crate::quiver::Quiver;
use crate::scalar::Scalar;

fn reversed_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// Rebuild a potential on a quiver whose arrows are a renumbering of the old ones.
fn transport(old_to_new: &[Option<usize>], q: &Quiver, e: &FreeElement) -> Result<Potential> {
    let mut out = FreeElement::with_truncation(e.truncation());
    for (p, c) in e.terms() {
        let arrows: Option<Vec<usize>> = p.arrows.iter().map(|&a| old_to_new[a]).collect();
        let arrows = arrows.ok_or_else(|| Error::MalformedQp("term uses a deleted arrow".into()))?;
        out.add_term(q.path_from_arrows(arrows)?, c.clone());
    }
    Potential::from_element(q, &out)
}

/// Premutation at `k`: reverse the arrows at `k`, add a composite `[a.b]` for every path
/// `b` then `a` through `k`, replace those paths in `W` and add `sum [a.b] b* a*`.
pub fn premutate(qp: &Qp, k: usize) -> Result<Qp> {
    let q = &qp.quiver;
    if k >= q.vertex_count() {
        return Err(Error::UnknownVertex((k + 1).to_string()));
    }
    if let Some(a) = q.arrows().iter().find(|a| a.source == a.target) {
        return Err(Error::LoopAtVertex(a.source + 1));
    }
    if q.two_cycles().iter().any(|&(x, _)| {
        let a = q.arrow(x);
        a.source == k || a.target == k
    }) {
        return Err(Error::TwoCycleThroughK(k + 1));
    }
    let ins: Vec<usize> = q.in_arrows(k).to_vec();
    let outs: Vec<usize> = q.out_arrows(k).to_vec();

    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut old_to_new = vec![None; q.arrow_count()];
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source != k && a.target != k {
            old_to_new[i] = Some(arrows.len());
            arrows.push((a.name.clone(), a.source, a.target));
        }
    }
    let mut star = vec![0; q.arrow_count()];
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source == k || a.target == k {
            star[i] = arrows.len();
            arrows.push((reversed_name(&a.name), a.target, a.source));
        }
    }
    let mut composite = std::collections::HashMap::new();
    for &b in &ins {
        for &a in &outs {
            composite.insert((b, a), arrows.len());
            let (ab, bb) = (q.arrow(a), q.arrow(b));
            arrows.push((format!("[{}.{}]", ab.name, bb.name), bb.source, ab.target));
        }
    }
    let nq = Quiver::with_labels(q.labels().to_vec(), arrows)?;

    let mut w = FreeElement::zero();
    for (cycle, c) in qp.potential.terms() {
        let start = (0..cycle.len()).find(|&i| q.arrow(cycle.arrows[i]).source != k).expect("no loops at k");
        let rotated = q.rotate_cycle(cycle, start);
        let mut out = Vec::new();
        let mut i = 0;
        while i < rotated.len() {
            let x = rotated.arrows[i];
            if q.arrow(x).target == k {
                let y = rotated.arrows[i + 1];
                out.push(composite[&(x, y)]);
                i += 2;
            } else {
                out.push(old_to_new[x].expect("arrow away from k"));
                i += 1;
            }
        }
        w.add_term(nq.path_from_arrows(out)?, c.clone());
    }
    for &b in &ins {
        for &a in &outs {
            // a* first, then b*, then [a.b]
            let p = nq.path_from_arrows(vec![star[a], star[b], composite[&(b, a)]])?;
            w.add_term(p, Scalar::one());
        }
    }
    Ok(Qp { quiver: nq.clone(), potential: Potential::from_element(&nq, &w)?, degrees: None })
}

fn find_quadratic(w: &Potential) -> Option<(usize, usize, Scalar)> {
    w.terms().find(|(p, _)| p.len() == 2).map(|(p, c)| (p.arrows[0], p.arrows[1], c.clone()))
}

/// Split off the trivial part: while `W` has a 2-cycle term `c x y`, change variables until
/// `∂_x W = c y` and `∂_y W = c x`, then delete `x`, `y` and that term. Paths longer than `l`
/// are dropped.
pub fn reduce(qp: &Qp, l: usize) -> Result<Qp> {
    let mut q = qp.quiver.clone();
    let mut w = {
        let mut e = qp.potential.element().clone();
        e.truncate(l);
        Potential::from_element(&q, &e)?
    };
    let cap = 4 * l + 8;
    while let Some((x, y, _)) = find_quadratic(&w) {
        let mut done = false;
        for _ in 0..cap {
            let pair = w.terms().find(|(p, _)| p.len() == 2 && p.arrows.contains(&x) && p.arrows.contains(&y));
            let Some((_, c)) = pair.map(|(p, c)| (p.clone(), c.clone())) else {
                return Err(Error::ReductionDiverged(l));
            };
            let c_inv = c.invert()?;
            let ypath = FreeElement::from_path(q.arrow_path(y), c.clone());
            let f = cyclic_derivative(&q, &w, x)?.sub(&ypath);
            let xpath = FreeElement::from_path(q.arrow_path(x), c.clone());
            let g = cyclic_derivative(&q, &w, y)?.sub(&xpath);
            if f.is_zero() && g.is_zero() {
                done = true;
                break;
            }
            let mut images: Vec<Option<FreeElement>> = vec![None; q.arrow_count()];
            if !f.is_zero() {
                images[y] = Some(FreeElement::from_path(q.arrow_path(y), Scalar::one()).sub(&f.scale(&c_inv)));
            } else {
                images[x] = Some(FreeElement::from_path(q.arrow_path(x), Scalar::one()).sub(&g.scale(&c_inv)));
            }
            let e = substitute(&q, w.element(), &images, l)?;
            w = Potential::from_element(&q, &e)?;
        }
        if !done {
            return Err(Error::ReductionDiverged(l));
        }
        let mut rest = w.element().clone();
        let key = w.terms().find(|(p, _)| p.len() == 2 && p.arrows.contains(&x)).map(|(p, _)| p.clone());
        if let Some(p) = key {
            rest.remove(&p);
        }
        let mut old_to_new = vec![None; q.arrow_count()];
        let mut next = 0;
        for (i, slot) in old_to_new.iter_mut().enumerate() {
            if i != x && i != y {
                *slot = Some(next);
                next += 1;
            }
        }
        let nq = q.without_arrows(&[x, y]);
        w = transport(&old_to_new, &nq, &rest)?;
        q = nq;
    }
    Ok(Qp { quiver: q, potential: w, degrees: None })
}

/// Truncation used when reducing the premutation of `qp`.
pub fn reduction_bound(qp: &Qp) -> usize {
    match qp.jacobian(DEFAULT_L_MAX) {
        Ok(a) => a.nilpotency() + 4,
        Err(_) => qp.potential.max_term_length().max(3) + 4,
    }
}

/// `mu_k`: premutation followed by reduction; fails with `Degenerate` if 2-cycles survive.
pub fn mutate(qp: &Qp, k: usize) -> Result<Qp> {
    mutate_with_bound(qp, k, reduction_bound(qp))
}

pub fn mutate_with_bound(qp: &Qp, k: usize, l: usize) -> Result<Qp> {
    let pre = premutate(qp, k)?;
    let out = reduce(&pre, l)?;
    if let Some(&(x, y)) = out.quiver.two_cycles().first() {
        return Err(Error::Degenerate(format!(
            "2-cycle {} / {} after mutation at {}",
            out.quiver.arrow(x).name,
            out.quiver.arrow(y).name,
            k + 1
        )));
    }
    if out.quiver.has_loops() {
        return Err(Error::Degenerate(format!("loop after mutation at {}", k + 1)));
    }
    Ok(out)
}

pub fn mutate_sequence(qp: &Qp, seq: &[usize]) -> Result<Qp> {
    let mut cur = qp.clone();
    for &k in seq {
        cur = mutate(&cur, k)?;
    }
    Ok(cur)
}

/// Invariants used to compare QPs up to right-equivalence in practice.
#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    #[serde(skip)]
    pub quiver: Quiver,
    pub vertices: usize,
    pub arrows: usize,
    pub jacobian_dimension: usize,
    /// Projective dimension vectors, sorted.
    pub projectives: IntMatrix,
}

impl Fingerprint {
    pub fn of(qp: &Qp) -> Result<Fingerprint> {
        let a = qp.jacobian(DEFAULT_L_MAX)?;
        let mut projectives: Vec<DimVector> = a.projective_dim_vectors();
        projectives.sort();
        Ok(Fingerprint {
            quiver: qp.quiver.clone(),
            vertices: qp.quiver.vertex_count(),
            arrows: qp.quiver.arrow_count(),
            jacobian_dimension: a.dimension(),
            projectives,
        })
    }

    pub fn matches(&self, other: &Fingerprint) -> Result<bool> {
        if self.jacobian_dimension != other.jacobian_dimension || self.projectives != other.projectives {
            return Ok(false);
        }
        Ok(quiver_isomorphic(&self.quiver, &other.quiver)?.is_some())
    }
}

pub fn fingerprint(qp: &Qp) -> Result<Fingerprint> {
    Fingerprint::of(qp)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeFailure {
    pub trial: usize,
    /// Vertices, numbered from 1.
    pub sequence: Vec<usize>,
    pub step: usize,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub depth: usize,
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<ProbeFailure>,
}

/// Random mutation sequence of length `depth` that never repeats a vertex twice in a row.
pub fn random_sequence(n: usize, depth: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut seq: Vec<usize> = Vec::with_capacity(depth);
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..depth {
        let choices: Vec<usize> = all.iter().copied().filter(|&v| seq.last() != Some(&v)).collect();
        seq.push(*choices.choose(rng).expect("at least two vertices"));
    }
    seq
}

/// Run `trials` random sequences of length `depth`; trial `t` uses seed `seed + t`.
pub fn probe_nondegeneracy(qp: &Qp, depth: usize, trials: usize, seed: u64) -> ProbeReport {
    let n = qp.quiver.vertex_count();
    let mut failures: Vec<ProbeFailure> = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
            let seq = random_sequence(n, depth, &mut rng);
            let mut cur = qp.clone();
            for (step, &k) in seq.iter().enumerate() {
                match mutate(&cur, k) {
                    Ok(next) => cur = next,
                    Err(e) => {
                        return Some(ProbeFailure {
                            trial: t,
                            sequence: seq.iter().map(|v| v + 1).collect(),
                            step,
                            error: e.to_string(),
                        })
                    }
                }
            }
            None
        })
        .collect();
    failures.sort_by_key(|f| f.trial);
    ProbeReport { depth, trials, seed, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(w: &[(i64, &[&str])]) -> Qp {
        let q = Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap();
        let terms: Vec<(Scalar, Vec<&str>)> = w.iter().map(|(c, t)| (Scalar::int(*c), t.to_vec())).collect();
        let p = Potential::from_words(&q, &terms).unwrap();
        Qp::new(q, p)
    }

    #[test]
    fn oriented_triangle_mutates_to_itself() {
        let qp = triangle(&[(1, &["c", "b", "a"])]);
        let m = mutate(&qp, 1).unwrap();
        assert_eq!(m.quiver.arrow_count(), 2);
        assert!(m.potential.is_zero());
        let back = mutate(&m, 1).unwrap();
        assert!(quiver_isomorphic(&back.quiver, &qp.quiver).unwrap().is_some());
    }

    #[test]
    fn zero_potential_is_degenerate() {
        let qp = triangle(&[]);
        assert!(matches!(mutate(&qp, 1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn premutation_names() {
        let qp = triangle(&[(1, &["c", "b", "a"])]);
        let pre = premutate(&qp, 1).unwrap();
        let names: Vec<&str> = pre.quiver.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["c", "a*", "b*", "[b.a]"]);
        assert_eq!(pre.potential.term_count(), 2);
    }

    #[test]
    fn sources_only_reverse() {
        let q = Quiver::new(3, vec![("a", 0, 1), ("b", 0, 2)]).unwrap();
        let qp = Qp::new(q, Potential::zero());
        let m = mutate(&qp, 0).unwrap();
        assert_eq!(m.quiver.arrow_count(), 2);
        assert!(m.quiver.arrows().iter().all(|a| a.target == 0));
    }
}
