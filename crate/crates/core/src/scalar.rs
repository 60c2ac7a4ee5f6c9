//! Exact coefficients: rationals and rational functions in one parameter `lambda`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial in `lambda` with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn lambda() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= &c * b;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff_shown = i == 0 || !abs.is_one();
            if coeff_shown {
                write!(f, "{}", abs)?;
            }
            match i {
                0 => {}
                1 if coeff_shown => write!(f, "*lambda")?,
                1 => write!(f, "lambda")?,
                _ if coeff_shown => write!(f, "*lambda^{}", i)?,
                _ => write!(f, "lambda^{}", i)?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
/// Values that reduce to constants are never stored here; see [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }
}

/// An exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Func(RatFunc),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn lambda() -> Self {
        Scalar::from_fraction(Poly::lambda(), Poly::constant(BigRational::one()))
    }

    /// Canonical scalar for `num/den`; `den` must be nonzero.
    pub fn from_fraction(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        match (num.as_constant(), den.degree()) {
            (Some(c), Some(0)) => Scalar::Rat(c),
            _ => Scalar::Func(RatFunc { num, den }),
        }
    }

    fn parts(&self) -> (Poly, Poly) {
        match self {
            Scalar::Rat(r) => (Poly::constant(r.clone()), Poly::constant(BigRational::one())),
            Scalar::Func(f) => (f.num.clone(), f.den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Func(_) => None,
        }
    }

    pub fn canonical(&self) -> Scalar {
        let (n, d) = self.parts();
        Scalar::from_fraction(n, d)
    }

    pub fn invert(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::ZeroInverse),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Func(f) => Ok(Scalar::from_fraction(f.den.clone(), f.num.clone())),
        }
    }

    /// Substitute `lambda := value`. The values 0 and 1 are excluded from the parameter domain.
    pub fn specialize(&self, value: &BigRational) -> Result<Scalar> {
        if value.is_zero() || value.is_one() {
            return Err(Error::ForbiddenValue(value.to_string()));
        }
        match self {
            Scalar::Rat(_) => Ok(self.clone()),
            Scalar::Func(f) => {
                let d = f.den.eval(value);
                if d.is_zero() {
                    return Err(Error::PoleAtValue(value.to_string()));
                }
                Ok(Scalar::Rat(f.num.eval(value) / d))
            }
        }
    }

    /// Exact integer value, if this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            _ => None,
        }
    }

    pub fn is_negative_constant(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }

    /// Parse the coefficient grammar `['-'] (INT ['/' INT] | 'lambda' | INT '*' 'lambda')`.
    pub fn parse(text: &str) -> Result<Scalar> {
        let bad = || Error::BadCoefficient(text.to_string());
        let t = text.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let int = |s: &str| -> Result<BigInt> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let value = if body == "lambda" {
            Scalar::lambda()
        } else if let Some(k) = body.strip_suffix("*lambda") {
            Scalar::Rat(BigRational::from_integer(int(k)?)) * Scalar::lambda()
        } else if let Some((n, d)) = body.split_once('/') {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Scalar::Rat(BigRational::new(int(n)?, d))
        } else {
            Scalar::Rat(BigRational::from_integer(int(body)?))
        };
        Ok(if neg { -value } else { value })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Func(rf) => {
                let den_one = rf.den.degree() == Some(0);
                let wrap = |p: &Poly| {
                    if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                        format!("({})", p)
                    } else {
                        p.to_string()
                    }
                };
                if den_one {
                    write!(f, "{}", rf.num)
                } else {
                    write!(f, "{}/{}", wrap(&rf.num), wrap(&rf.den))
                }
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
        _ => {
            let (an, ad) = a.parts();
            let (bn, bd) = b.parts();
            if ad == bd {
                return Scalar::from_fraction(an.add(&bn), ad);
            }
            Scalar::from_fraction(an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
        }
    }
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
        (Scalar::Rat(x), Scalar::Func(_)) | (Scalar::Func(_), Scalar::Rat(x)) if x.is_zero() => {
            Scalar::zero()
        }
        _ => {
            let (an, ad) = a.parts();
            let (bn, bd) = b.parts();
            Scalar::from_fraction(an.mul(&bn), ad.mul(&bd))
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Func(f) => Scalar::Func(RatFunc { num: f.num.neg(), den: f.den.clone() }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| add_ref(a, &-b));
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| mul_ref(
    a,
    &b.invert().expect("division by zero scalar")
));

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}
