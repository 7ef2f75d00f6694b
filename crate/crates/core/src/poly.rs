//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored in ascending order of degree; the zero polynomial is
//! the empty vector, so the leading coefficient of any nonzero value is nonzero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("polynomial must be nonzero of degree at least 1")]
    DegreeTooSmall,
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: &BigInt) -> Sign {
        match v.cmp(&BigInt::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending `i64` coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar(&c)
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let pp = self.primitive_part();
        match pp.leading_coeff() {
            Some(lc) if lc.is_negative() => -pp,
            _ => pp,
        }
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg self - deg d + 1) * self = q*d + r`
    /// and `deg r < deg d`. When `d` is monic this is ordinary Euclidean division.
    pub fn pseudo_divrem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        let dlc = d.leading_coeff().ok_or(PolyError::DivisionByZero)?.clone();
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let n = self.deg();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        let monic = dlc.is_one();
        for i in (0..=n - dd).rev() {
            let top = rem[i + dd].clone();
            if !monic {
                for c in quot.iter_mut() {
                    *c *= &dlc;
                }
                for c in rem.iter_mut().take(i + dd) {
                    *c *= &dlc;
                }
            }
            quot[i] = top.clone();
            rem[i + dd] = BigInt::zero();
            if !top.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                    rem[i + j] -= &top * dc;
                }
            }
        }
        rem.truncate(dd);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact division over the integers; `None` when `d` does not divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dlc = d.leading_coeff()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let n = self.deg();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let (q, r) = rem[i + dd].div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        !self.is_zero() && other.div_exact(self).is_some()
    }

    /// Greatest common divisor over the rationals, returned primitive with a
    /// positive leading coefficient. Computed with the subresultant remainder
    /// sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg() - b.deg();
            let (_, r) = a.pseudo_divrem(&b).expect("nonzero divisor");
            if r.is_zero() {
                return b.normalized();
            }
            if r.deg() == 0 {
                return IntPoly::one();
            }
            a = b;
            let denom = &g * pow_big(&h, delta);
            b = r.div_scalar(&denom);
            g = a.leading_coeff().expect("nonzero").clone();
            // h <- g^delta / h^(delta-1)
            h = if delta == 0 {
                h
            } else {
                pow_big(&g, delta) / pow_big(&h, delta - 1)
            };
        }
    }

    /// `p / gcd(p, p')`, normalized.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.deg() == 0 || self.is_zero() {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .normalized()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `den^deg * p(num/den)`, an integer with the sign of `p(num/den)` when `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        acc
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of `p(t)`.
    pub fn sign_at(&self, t: &BigRational) -> Sign {
        // BigRational keeps a positive denominator.
        Sign::of(&self.eval_homogeneous(t.numer(), t.denom()))
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// `p(-x)`
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`
    pub fn inflate(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// `x^deg(p) * p(1/x)`.
    pub fn reciprocal(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Largest absolute coefficient.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Sum of squares of the coefficients.
    pub fn norm_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

fn pow_big(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then lexicographically on the ascending coefficients.
impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Canonical text form: descending powers, explicit signs, no spaces, `0` for zero.
impl fmt::Display for IntPoly {
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
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            if i == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// `x^s * g(x + 1/x)` for `g` of degree `s`, expanded as `sum c_j x^(s-j) (x^2+1)^j`.
pub fn trace_lift(g: &IntPoly) -> Result<IntPoly, PolyError> {
    let s = match g.degree() {
        Some(s) if s >= 1 => s,
        _ => return Err(PolyError::DegreeTooSmall),
    };
    let x2p1 = IntPoly::from_coeffs(&[1, 0, 1]);
    let mut acc = IntPoly::zero();
    let mut power = IntPoly::one();
    for (j, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &power.scale(c).shift(s - j);
        }
        if j < s {
            power = &power * &x2p1;
        }
    }
    Ok(acc)
}

/// Inverse of [`trace_lift`]: the unique `g` with `f(x) = x^s g(x + 1/x)`.
pub fn trace_project(f: &IntPoly) -> Result<IntPoly, PolyError> {
    let d = f.degree().ok_or(PolyError::DegreeTooSmall)?;
    if d % 2 == 1 {
        return Err(PolyError::OddDegree(d));
    }
    if !f.is_reciprocal() {
        return Err(PolyError::NotReciprocal);
    }
    let s = d / 2;
    let x2p1 = IntPoly::from_coeffs(&[1, 0, 1]);
    let powers = power_table(&x2p1, s);
    // Peel off c_j x^(s-j) (x^2+1)^j from the top; term j has degree s + j.
    let mut rest = f.clone();
    let mut g = vec![BigInt::zero(); s + 1];
    for j in (0..=s).rev() {
        let c = rest.coeff(s + j);
        if !c.is_zero() {
            rest = &rest - &powers[j].scale(&c).shift(s - j);
        }
        g[j] = c;
    }
    if !rest.is_zero() {
        return Err(PolyError::NotReciprocal);
    }
    Ok(IntPoly::new(g))
}

fn power_table(base: &IntPoly, n: usize) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = IntPoly::one();
    for i in 0..=n {
        out.push(p.clone());
        if i < n {
            p = &p * base;
        }
    }
    out
}

/// `(-1)^k h(x(1-x))` for `h` of degree `k`.
pub fn quadratic_pullback(h: &IntPoly) -> IntPoly {
    let u = IntPoly::from_coeffs(&[0, 1, -1]);
    let r = h.compose(&u);
    if h.deg() % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Recovers `h` from `g = (-1)^k h(x(1-x))`, or `None` when `g` is not of that form.
pub fn quadratic_pushforward(g: &IntPoly) -> Option<IntPoly> {
    let d = g.degree()?;
    if d % 2 == 1 || d == 0 {
        return None;
    }
    let k = d / 2;
    let u = IntPoly::from_coeffs(&[0, 1, -1]);
    let powers = power_table(&u, k);
    let mut rest = if k % 2 == 1 { -g } else { g.clone() };
    let mut h = vec![BigInt::zero(); k + 1];
    for i in (0..=k).rev() {
        // u^i has leading coefficient (-1)^i at degree 2i.
        let top = rest.coeff(2 * i);
        let c = if i % 2 == 1 { -top } else { top };
        if !c.is_zero() {
            rest = &rest - &powers[i].scale(&c);
        }
        h[i] = c;
    }
    if !rest.is_zero() {
        return None;
    }
    Some(IntPoly::new(h))
}

/// The degree-`4k` reciprocal polynomial `(-1)^k x^(2k) h((x+1/x)(1-x-1/x))`,
/// expanded directly as `(-1)^k sum h_i x^(2k-2i) (x^2+1)^i (-x^2+x-1)^i`.
pub fn lemma4_lift(h: &IntPoly) -> Result<IntPoly, PolyError> {
    let k = match h.degree() {
        Some(k) if k >= 1 => k,
        _ => return Err(PolyError::DegreeTooSmall),
    };
    // x * (x + 1/x)(1 - x - 1/x) = (x^2 + 1)(-x^2 + x - 1) / x, so one factor of x^2 per power.
    let base = &IntPoly::from_coeffs(&[1, 0, 1]) * &IntPoly::from_coeffs(&[-1, 1, -1]);
    let mut acc = IntPoly::zero();
    let mut power = IntPoly::one();
    for (i, c) in h.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &power.scale(c).shift(2 * (k - i));
        }
        if i < k {
            power = &power * &base;
        }
    }
    Ok(if k % 2 == 1 { -acc } else { acc })
}

/// `p^2 - m q^2`, the norm of `p + sqrt(m) q`.
pub fn norm_form(p: &IntPoly, q: &IntPoly, m: &BigInt) -> IntPoly {
    &(p * p) - &(q * q).scale(m)
}
