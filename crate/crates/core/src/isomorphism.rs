//! Quiver isomorphism by backtracking over vertex bijections.

use crate::error::{Error, Result};
use crate::quiver::Quiver;

pub const MAX_VERTICES: usize = 16;

fn multiplicities(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for a in q.arrows() {
        m[a.source][a.target] += 1;
    }
    m
}

fn signature(m: &[Vec<usize>], v: usize) -> (usize, usize, usize, Vec<usize>, Vec<usize>) {
    let mut out: Vec<usize> = m[v].iter().copied().filter(|&x| x > 0).collect();
    let mut inn: Vec<usize> = m.iter().map(|r| r[v]).filter(|&x| x > 0).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (m[v].iter().sum(), m.iter().map(|r| r[v]).sum(), m[v][v], out, inn)
}

/// A bijection `w` with `w[v]` the image in `q2` of vertex `v` of `q1`, preserving arrow
/// multiplicities, if one exists.
pub fn quiver_isomorphic(q1: &Quiver, q2: &Quiver) -> Result<Option<Vec<usize>>> {
    for q in [q1, q2] {
        if q.vertex_count() > MAX_VERTICES {
            return Err(Error::TooLarge(q.vertex_count()));
        }
    }
    let n = q1.vertex_count();
    if n != q2.vertex_count() || q1.arrow_count() != q2.arrow_count() {
        return Ok(None);
    }
    let m1 = multiplicities(q1);
    let m2 = multiplicities(q2);
    let s1: Vec<_> = (0..n).map(|v| signature(&m1, v)).collect();
    let s2: Vec<_> = (0..n).map(|v| signature(&m2, v)).collect();
    let mut a = s1.clone();
    let mut b = s2.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    // most constrained vertices first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(s1[v].0 + s1[v].1));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(0, &order, &m1, &m2, &s1, &s2, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    m1: &[Vec<usize>],
    m2: &[Vec<usize>],
    s1: &[(usize, usize, usize, Vec<usize>, Vec<usize>)],
    s2: &[(usize, usize, usize, Vec<usize>, Vec<usize>)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else { return true };
    for u in 0..m2.len() {
        if used[u] || s1[v] != s2[u] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x| m1[v][x] == m2[u][map[x]] && m1[x][v] == m2[map[x]][u]);
        if !consistent {
            continue;
        }
        map[v] = u;
        used[u] = true;
        if search(depth + 1, order, m1, m2, s1, s2, map, used) {
            return true;
        }
        used[u] = false;
        map[v] = usize::MAX;
    }
    false
}
