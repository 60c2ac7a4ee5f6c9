//! Euler form, quadratic form, radical and Coxeter transformation on the Grothendieck group.
//!
//! The Cartan matrix `C` has the projective dimension vectors as rows, so `C E = I` for the
//! Euler matrix `E` and `<dim P_i, y> = y_i`. In this orientation the Coxeter matrix is
//! `Phi = -C^{-1} C^T`, which sends `dim P_i` to `-dim I_i`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{int_to_scalars, DimVector, IntMatrix, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct FormData {
    cartan: IntMatrix,
    euler: Matrix,
    gram: Matrix,
    coxeter: IntMatrix,
    pivots: Vec<BigRational>,
    non_negative: bool,
    radical: Vec<DimVector>,
}

/// Pivots of an `LDL^T` factorization with symmetric pivoting. `None` if the form is not
/// positive semidefinite.
pub fn ldl_pivots(g: &Matrix) -> Option<Vec<BigRational>> {
    let n = g.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| g.get(i, j).as_rational().expect("rational Gram matrix").clone()).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    while !active.is_empty() {
        let pick = active.iter().position(|&i| !a[i][i].is_zero());
        let Some(pos) = pick else {
            // all remaining diagonal entries vanish; semidefinite only if the block is zero
            if active.iter().any(|&i| active.iter().any(|&j| !a[i][j].is_zero())) {
                return None;
            }
            pivots.extend(active.iter().map(|_| BigRational::zero()));
            break;
        };
        let p = active.remove(pos);
        let d = a[p][p].clone();
        if d.is_negative() {
            return None;
        }
        for &i in &active {
            let f = &a[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = &a[i][j] - &f * &a[p][j];
                a[i][j] = v;
            }
        }
        pivots.push(d);
    }
    Some(pivots)
}

/// Scale a rational vector to a primitive integer vector with positive first nonzero entry.
pub fn primitive_integer(v: &[Scalar]) -> Result<DimVector> {
    let rats: Vec<BigRational> = v.iter().map(|x| x.as_rational().expect("rational vector").clone()).collect();
    let lcm = rats.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Ok(vec![0; v.len()]);
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    ints.iter()
        .map(|x| {
            let y: BigInt = x / &g * sign;
            i64::try_from(y).map_err(|_| Error::Overflow("radical vector"))
        })
        .collect()
}

impl FormData {
    pub fn new(cartan: &IntMatrix) -> Result<FormData> {
        let c = Matrix::from_int(cartan);
        let det = c.determinant();
        if det.to_i64().map_or(true, |d| d.abs() != 1) {
            return Err(Error::NonInvertibleCartan(det.to_string()));
        }
        let cinv = c.inverse().expect("unimodular matrix is invertible");
        let euler = cinv.clone();
        let gram = euler.add(&euler.transpose()).scale(&Scalar::ratio(1, 2));
        let phi = cinv.mul(&c.transpose()).scale(&Scalar::int(-1));
        let coxeter = phi.to_int().ok_or(Error::Overflow("Coxeter matrix"))?;
        let (pivots, non_negative) = match ldl_pivots(&gram) {
            Some(p) => (p, true),
            None => (Vec::new(), false),
        };
        let radical = gram.kernel().iter().map(|v| primitive_integer(v)).collect::<Result<Vec<_>>>()?;
        Ok(FormData { cartan: cartan.clone(), euler, gram, coxeter, pivots, non_negative, radical })
    }

    pub fn vertex_count(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn euler_matrix(&self) -> &Matrix {
        &self.euler
    }

    pub fn gram_matrix(&self) -> &Matrix {
        &self.gram
    }

    pub fn coxeter_matrix(&self) -> &IntMatrix {
        &self.coxeter
    }

    pub fn ldl_pivots(&self) -> &[BigRational] {
        &self.pivots
    }

    pub fn is_non_negative(&self) -> bool {
        self.non_negative
    }

    pub fn corank(&self) -> usize {
        self.radical.len()
    }

    /// Integer basis of the radical of the symmetrized form.
    pub fn radical_basis(&self) -> &[DimVector] {
        &self.radical
    }

    fn check(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.vertex_count() {
            return Err(Error::DimensionMismatch { expected: self.vertex_count(), got: x.len() });
        }
        Ok(())
    }

    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        let xe = self.euler.left_apply(&int_to_scalars(x));
        let v = xe.iter().zip(y).fold(Scalar::zero(), |acc, (a, &b)| acc + a * Scalar::int(b));
        v.to_i64().ok_or(Error::Overflow("Euler form"))
    }

    pub fn chi(&self, x: &[i64]) -> Result<i64> {
        self.euler_form(x, x)
    }

    /// Positive primitive generator of a corank-1 radical.
    pub fn radical_generator(&self) -> Result<DimVector> {
        if !self.non_negative {
            return Err(Error::NotNonNegative);
        }
        if self.radical.len() != 1 {
            return Err(Error::WrongCorank(self.radical.len()));
        }
        let h = &self.radical[0];
        if h.iter().all(|&x| x > 0) {
            Ok(h.clone())
        } else if h.iter().all(|&x| x < 0) {
            Ok(h.iter().map(|x| -x).collect())
        } else {
            Err(Error::MixedSigns)
        }
    }

    /// `d Phi`.
    pub fn coxeter_apply(&self, d: &[i64]) -> Result<DimVector> {
        self.check(d)?;
        let n = self.vertex_count();
        (0..n)
            .map(|j| {
                let s: i128 = (0..n).map(|i| d[i] as i128 * self.coxeter[i][j] as i128).sum();
                i64::try_from(s).map_err(|_| Error::Overflow("Coxeter transformation"))
            })
            .collect()
    }

    /// The orbit `d, d Phi, d Phi^2, ...` up to the first return to `d`.
    pub fn tau_orbit(&self, d: &[i64], max_period: usize) -> Result<(Vec<DimVector>, usize)> {
        self.check(d)?;
        let mut orbit = vec![d.to_vec()];
        let mut cur = d.to_vec();
        for step in 1..=max_period {
            cur = self.coxeter_apply(&cur)?;
            if cur == d {
                return Ok((orbit, step));
            }
            orbit.push(cur.clone());
        }
        Err(Error::NoPeriod(max_period))
    }

    pub fn is_regular(&self, d: &[i64]) -> Result<bool> {
        let h = self.radical_generator()?;
        Ok(self.euler_form(&h, d)? == 0)
    }

    /// Regular, with a `tau`-orbit of non-negative vectors summing to `h`.
    pub fn is_simple_regular(&self, d: &[i64], max_period: usize) -> Result<bool> {
        if !self.is_regular(d)? {
            return Ok(false);
        }
        let h = self.radical_generator()?;
        let (orbit, _) = match self.tau_orbit(d, max_period) {
            Ok(o) => o,
            Err(Error::NoPeriod(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if orbit.iter().any(|v| v.iter().any(|&x| x < 0)) {
            return Ok(false);
        }
        let mut sum = vec![0i64; d.len()];
        for v in &orbit {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
        }
        Ok(sum == h)
    }

    /// `-<h0, d> / <h_inf, d>`, with both radical vectors already placed in this algebra's
    /// vertex order.
    pub fn tubular_index(&self, h0: &[i64], h_inf: &[i64], d: &[i64]) -> Result<TubularIndex> {
        let num = -self.euler_form(h0, d)?;
        let den = self.euler_form(h_inf, d)?;
        match (num, den) {
            (0, 0) => Err(Error::Indeterminate),
            (_, 0) => Ok(TubularIndex::Infinity),
            _ => Ok(TubularIndex::Finite(BigRational::new(num.into(), den.into()))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TubularIndex {
    Finite(#[serde(serialize_with = "ser_rational")] BigRational),
    Infinity,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl fmt::Display for TubularIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TubularIndex::Finite(r) => write!(f, "{r}"),
            TubularIndex::Infinity => write!(f, "inf"),
        }
    }
}

/// Place a vector given on `sub` (vertex indices into the ambient algebra) into ambient order.
pub fn pad(v: &[i64], sub: &[usize], ambient: usize) -> DimVector {
    let mut out = vec![0; ambient];
    for (x, &i) in v.iter().zip(sub) {
        out[i] = *x;
    }
    out
}
