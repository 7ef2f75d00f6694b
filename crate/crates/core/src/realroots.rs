//! Sturm-chain root counting and isolation with exact rational endpoints.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{IntPoly, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("cannot count roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(BigRational),
    #[error("empty interval: lower bound is not below the upper bound")]
    EmptyInterval,
}

/// An interval endpoint, possibly infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(v: i64) -> Bound {
        Bound::At(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Bound {
        Bound::At(BigRational::new(num.into(), den.into()))
    }

    fn less_than(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) => false,
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (Bound::At(_), Bound::NegInf) => false,
            (Bound::At(a), Bound::At(b)) => a < b,
        }
    }
}

impl From<BigRational> for Bound {
    fn from(q: BigRational) -> Self {
        Bound::At(q)
    }
}

/// Signed remainder sequence of the squarefree part of a polynomial and its derivative.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self, RootError> {
        if p.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let p0 = p.squarefree_part();
        let mut polys = vec![p0.clone()];
        if p0.deg() == 0 {
            return Ok(SturmChain { polys });
        }
        let mut a = p0;
        let mut b = a.derivative().primitive_part();
        while !b.is_zero() {
            polys.push(b.clone());
            let (_, r) = a.pseudo_divrem(&b).expect("nonzero divisor");
            // prem multiplies by lc(b)^e; undo a negative factor so signs stay Sturm-correct.
            let e = a.deg() + 1 - b.deg();
            let flip = b.leading_coeff().expect("nonzero").is_negative() && e % 2 == 1;
            let r = if flip { r } else { -r };
            a = b;
            b = r.primitive_part();
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// The squarefree polynomial the chain was built from.
    pub fn base(&self) -> &IntPoly {
        &self.polys[0]
    }

    fn signs_at(&self, x: &Bound) -> impl Iterator<Item = Sign> + '_ {
        let x = x.clone();
        self.polys.iter().map(move |p| match &x {
            Bound::At(t) => p.sign_at(t),
            Bound::PosInf => Sign::of(p.leading_coeff().expect("nonzero")),
            Bound::NegInf => {
                let s = Sign::of(p.leading_coeff().expect("nonzero"));
                if p.deg() % 2 == 1 {
                    s.flip()
                } else {
                    s
                }
            }
        })
    }

    pub fn variations(&self, x: &Bound) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for s in self.signs_at(x) {
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize, RootError> {
        if !lo.less_than(hi) {
            return Err(RootError::EmptyInterval);
        }
        for b in [lo, hi] {
            if let Bound::At(t) = b {
                if self.base().sign_at(t) == Sign::Zero {
                    return Err(RootError::EndpointIsRoot(t.clone()));
                }
            }
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Number of distinct real roots of `p` strictly between `lo` and `hi`.
pub fn count_roots(p: &IntPoly, lo: &Bound, hi: &Bound) -> Result<usize, RootError> {
    SturmChain::new(p)?.count(lo, hi)
}

/// A rational interval isolating exactly one real root of a squarefree polynomial.
///
/// Either `lo < hi` with the root in the open interval and no root at the endpoints,
/// or `lo == hi` when the root itself is rational and was hit exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBox {
    pub lo: BigRational,
    pub hi: BigRational,
    pub poly: IntPoly,
}

impl RootBox {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Whether the bracketed root is certainly greater than `t`.
    pub fn is_above(&self, t: &BigRational) -> bool {
        &self.lo >= t && !(self.is_exact() && &self.lo == t)
    }

    /// Bisects once, keeping the half with the sign change.
    pub fn bisect(&self) -> RootBox {
        if self.is_exact() {
            return self.clone();
        }
        let mid = self.midpoint();
        let sm = self.poly.sign_at(&mid);
        if sm == Sign::Zero {
            return RootBox {
                lo: mid.clone(),
                hi: mid,
                poly: self.poly.clone(),
            };
        }
        let slo = self.poly.sign_at(&self.lo);
        if slo != sm {
            RootBox {
                lo: self.lo.clone(),
                hi: mid,
                poly: self.poly.clone(),
            }
        } else {
            RootBox {
                lo: mid,
                hi: self.hi.clone(),
                poly: self.poly.clone(),
            }
        }
    }

    /// Decimal approximation of the midpoint with `digits` significant digits.
    pub fn approx(&self, digits: usize) -> String {
        decimal_string(&self.midpoint(), digits)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

impl fmt::Display for RootBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) ~ {}", self.lo, self.hi, self.approx(12))
    }
}

impl Serialize for RootBox {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootBox", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("approx", &self.approx(12))?;
        st.end()
    }
}

/// Renders `q` in scientific-free decimal form with `digits` significant digits (truncated).
pub fn decimal_string(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // Find e with 10^e <= a < 10^(e+1).
    let ten = BigRational::from_integer(10.into());
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < BigRational::one() {
        scaled *= &ten;
        e -= 1;
    }
    let shift = digits as i64 - 1 - e;
    let factor = num_traits::pow(BigInt::from(10), shift.unsigned_abs() as usize);
    let n = if shift >= 0 {
        (a * BigRational::from_integer(factor)).round().to_integer()
    } else {
        (a / BigRational::from_integer(factor)).round().to_integer()
    };
    let mut digits_str = n.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if shift <= 0 {
        out.push_str(&digits_str);
        out.push_str(&"0".repeat((-shift) as usize));
        return out;
    }
    let shift = shift as usize;
    if digits_str.len() <= shift {
        let pad = shift - digits_str.len() + 1;
        digits_str = "0".repeat(pad) + &digits_str;
    }
    let split = digits_str.len() - shift;
    out.push_str(&digits_str[..split]);
    out.push('.');
    out.push_str(&digits_str[split..]);
    out
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn cauchy_bound(p: &IntPoly) -> BigRational {
    // 1 + max |a_i / a_n|, rounded up to a power of two.
    let lc = p.leading_coeff().expect("nonzero").abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.deg())
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let bound = BigRational::one() + BigRational::new(m, lc);
    let mut b = BigRational::one();
    while b < bound {
        b *= BigRational::from_integer(2.into());
    }
    b
}

/// Isolating boxes for all distinct real roots of `p`, sorted ascending.
pub fn isolate_roots(p: &IntPoly) -> Vec<RootBox> {
    if p.is_zero() || p.deg() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p).expect("nonzero");
    let base = chain.base().clone();
    if base.deg() == 0 {
        return Vec::new();
    }
    let b = cauchy_bound(&base);
    let mut out = Vec::new();
    isolate_in(&chain, -b.clone(), b, &mut out);
    out
}

/// Isolating boxes for the roots of `p` strictly inside `(lo, hi)`; the endpoints
/// must not be roots.
pub fn isolate_between(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<Vec<RootBox>, RootError> {
    let chain = SturmChain::new(p)?;
    chain.count(&Bound::At(lo.clone()), &Bound::At(hi.clone()))?;
    let mut out = Vec::new();
    isolate_in(&chain, lo.clone(), hi.clone(), &mut out);
    Ok(out)
}

fn isolate_in(chain: &SturmChain, lo: BigRational, hi: BigRational, out: &mut Vec<RootBox>) {
    let base = chain.base();
    let n = chain.variations(&Bound::At(lo.clone())) - chain.variations(&Bound::At(hi.clone()));
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RootBox {
            lo,
            hi,
            poly: base.clone(),
        });
        return;
    }
    // Split at the midpoint, nudging off any root we land on.
    let two = BigRational::from_integer(2.into());
    let mut mid = (&lo + &hi) / &two;
    let mut step = (&hi - &lo) / BigRational::from_integer(8.into());
    while base.sign_at(&mid) == Sign::Zero {
        mid += &step;
        if mid >= hi {
            step /= &two;
            mid = (&lo + &hi) / &two + &step;
        }
    }
    isolate_in(chain, lo, mid.clone(), out);
    isolate_in(chain, mid, hi, out);
}

/// Narrows `b` by bisection until its width is below `eps` (or it becomes exact).
pub fn refine(b: &RootBox, eps: &BigRational) -> RootBox {
    let mut cur = b.clone();
    while !cur.is_exact() && &cur.width() >= eps {
        cur = cur.bisect();
    }
    cur
}

/// Refines to width at most `2^-bits`.
pub fn refine_bits(b: &RootBox, bits: u32) -> RootBox {
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    refine(b, &eps)
}

/// `b < L` where `L = 2 a sqrt(a) / (3 sqrt 3)`, decided exactly for `a > 0`.
fn below_cubic_bound(a: i64, b: i64) -> bool {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    b <= BigInt::zero() || BigInt::from(27) * &b * &b < BigInt::from(4) * &a * &a * &a
}

/// `-L < b` for the same `L`.
fn above_neg_cubic_bound(a: i64, b: i64) -> bool {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    b >= BigInt::zero() || BigInt::from(27) * &b * &b < BigInt::from(4) * &a * &a * &a
}

/// `x^3 - a x + b` has three distinct roots in `(-2, 2)`.
pub fn lemma3_window1(a: i64, b: i64) -> bool {
    0 < a
        && a < 4
        && 2 * a - 8 < b
        && above_neg_cubic_bound(a, b)
        && b < 8 - 2 * a
        && below_cubic_bound(a, b)
}

/// `x^3 - a x + b` has two distinct roots in `(-2, 2)` and one in `(2, +inf)`.
pub fn lemma3_window2(a: i64, b: i64) -> bool {
    3 < a && a < 12 && above_neg_cubic_bound(a, b) && b < -(2 * a - 8).abs()
}
