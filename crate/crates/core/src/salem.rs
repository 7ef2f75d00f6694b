//! Salem-number certificates and the constructions that produce them.
//!
//! A monic reciprocal irreducible `f` of degree `2s >= 4` is the minimal
//! polynomial of a Salem number exactly when its trace polynomial `g`
//! (`f(x) = x^s g(x + 1/x)`) has one root in `(2, inf)` and its other `s - 1`
//! roots in `(-2, 2)`. Everything here is decided through that equivalence, so no
//! complex arithmetic is involved.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{seq_poly, SalemSeq};
use crate::factor::is_irreducible;
use crate::poly::{lemma4_lift, quadratic_pullback, trace_lift, trace_project, IntPoly};
use crate::realroots::{
    count_roots, isolate_between, isolate_roots, lemma3_window2, refine_bits, rational_to_f64,
    Bound, RootBox, RootError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    NotMonic,
    NotReciprocal,
    OddDegree,
    DegreeTooSmall,
    Reducible,
    RootWindowViolation,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rejection::NotMonic => "not monic",
            Rejection::NotReciprocal => "not reciprocal",
            Rejection::OddDegree => "odd degree",
            Rejection::DegreeTooSmall => "degree below 4",
            Rejection::Reducible => "reducible over the rationals",
            Rejection::RootWindowViolation => {
                "trace polynomial roots are not one in (2,inf) and the rest in (-2,2)"
            }
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SalemError {
    #[error("no trace-zero construction succeeded for degree {0}")]
    ConstructionFailed(usize),
    #[error("degree {0} is not an even number >= 6")]
    BadDegree(usize),
    #[error("lemma4 enumeration needs k >= 2, got {0}")]
    BadK(usize),
}

/// Evidence that `minpoly` is the minimal polynomial of a Salem number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SalemCertificate {
    pub minpoly: IntPoly,
    pub degree: usize,
    #[serde(serialize_with = "crate::json::big_str")]
    pub trace: BigInt,
    /// The Salem number itself, isolated as a root of `minpoly`.
    pub alpha: RootBox,
    pub trace_poly: IntPoly,
    /// Roots of `trace_poly`, descending; the first is `alpha + 1/alpha > 2`.
    pub beta_boxes: Vec<RootBox>,
}

impl SalemCertificate {
    pub fn s(&self) -> usize {
        self.degree / 2
    }

    pub fn alpha_f64(&self) -> f64 {
        self.alpha.to_f64()
    }
}

/// Negated second-highest coefficient of a monic polynomial.
pub fn trace(f: &IntPoly) -> BigInt {
    match f.degree() {
        Some(d) if d >= 1 => -f.coeff(d - 1),
        _ => BigInt::zero(),
    }
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

/// Checks the trace-polynomial root placement: one root above 2, the rest in (-2, 2).
fn trace_poly_windows_ok(g: &IntPoly) -> bool {
    let s = g.deg();
    let above = count_roots(g, &Bound::int(2), &Bound::PosInf);
    let inside = count_roots(g, &Bound::int(-2), &Bound::int(2));
    matches!((above, inside), (Ok(1), Ok(n)) if n + 1 == s)
}

/// Decides whether `f` is the minimal polynomial of a Salem number.
pub fn salem_check(f: &IntPoly) -> Result<SalemCertificate, Rejection> {
    if !f.is_monic() {
        return Err(Rejection::NotMonic);
    }
    let d = f.deg();
    if d % 2 == 1 {
        return Err(Rejection::OddDegree);
    }
    if d < 4 {
        return Err(Rejection::DegreeTooSmall);
    }
    if !f.is_reciprocal() {
        return Err(Rejection::NotReciprocal);
    }
    let g = trace_project(f).map_err(|_| Rejection::NotReciprocal)?;
    if !trace_poly_windows_ok(&g) {
        return Err(Rejection::RootWindowViolation);
    }
    if !is_irreducible(f) {
        return Err(Rejection::Reducible);
    }
    Ok(certificate_parts(f.clone(), g))
}

fn certificate_parts(f: IntPoly, g: IntPoly) -> SalemCertificate {
    let mut beta_boxes: Vec<RootBox> = isolate_roots(&g)
        .iter()
        .rev()
        .map(|b| refine_bits(b, 64))
        .collect();
    while !beta_boxes[0].is_above(&two()) {
        beta_boxes[0] = beta_boxes[0].bisect();
    }
    let alpha = alpha_box(&f, &beta_boxes[0]);
    SalemCertificate {
        degree: f.deg(),
        trace: trace(&f),
        minpoly: f,
        alpha,
        trace_poly: g,
        beta_boxes,
    }
}

/// Rational bounds `lo <= sqrt(q) <= hi` accurate to `2^-bits`; `q >= 0`.
pub fn sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * BigRational::from_integer(scale)).floor().to_integer();
    let root = scaled.sqrt();
    let den = BigInt::one() << bits;
    let lo = BigRational::new(root.clone(), den.clone());
    let hi = BigRational::new(root + 1, den);
    (lo, hi)
}

/// Box for `alpha = (b + sqrt(b^2 - 4)) / 2` where `b` is the trace-polynomial root above 2.
/// `alpha` is the only root of `f` above 1, and increasing in `b`.
fn alpha_box(f: &IntPoly, beta1: &RootBox) -> RootBox {
    let b = refine_bits(beta1, 64);
    let four = BigRational::from_integer(4.into());
    let (lo_sqrt, _) = sqrt_bounds(&(&b.lo * &b.lo - &four), 64);
    let (_, hi_sqrt) = sqrt_bounds(&(&b.hi * &b.hi - &four), 64);
    let lo = (&b.lo + lo_sqrt) / two();
    let hi = (&b.hi + hi_sqrt) / two();
    RootBox {
        lo,
        hi,
        poly: f.clone(),
    }
}

/// Checks the root windows on `g`, lifts, and certifies the lift.
pub fn build_salem_from_trace_poly(g: &IntPoly) -> Result<SalemCertificate, Rejection> {
    if !g.is_monic() {
        return Err(Rejection::NotMonic);
    }
    if g.deg() < 2 {
        return Err(Rejection::DegreeTooSmall);
    }
    if !trace_poly_windows_ok(g) {
        return Err(Rejection::RootWindowViolation);
    }
    let f = trace_lift(g).map_err(|_| Rejection::DegreeTooSmall)?;
    salem_check(&f)
}

/// The sextic trace-zero sweep: window pairs, discarded reducible cubics, and certificates.
#[derive(Debug, Clone, Serialize)]
pub struct Deg6Enumeration {
    pub pairs: Vec<(i64, i64)>,
    pub discarded: Vec<IntPoly>,
    pub certificates: Vec<SalemCertificate>,
}

/// All Salem numbers of degree 6 and trace 0, via the cubic trace polynomials
/// `x^3 - a x + b` with two roots in `(-2, 2)` and one above 2.
pub fn enum_deg6_trace0() -> Deg6Enumeration {
    let mut pairs = Vec::new();
    let mut discarded = Vec::new();
    let mut certificates = Vec::new();
    for a in 4..12i64 {
        for b in (-4 * a..0).rev() {
            if !lemma3_window2(a, b) {
                continue;
            }
            pairs.push((a, b));
            let cubic = IntPoly::from_coeffs(&[b, -a, 0, 1]);
            if !is_irreducible(&cubic) {
                discarded.push(cubic);
                continue;
            }
            let f = trace_lift(&cubic).expect("cubic");
            if let Ok(cert) = salem_check(&f) {
                certificates.push(cert);
            }
        }
    }
    Deg6Enumeration {
        pairs,
        discarded,
        certificates,
    }
}

/// One Salem number produced from a monic `h` through the quartic lift.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma4Salem {
    pub h: IntPoly,
    pub certificate: SalemCertificate,
    /// `trace_poly = (-1)^k h(x(1-x))` re-expanded and compared exactly, which
    /// forces every consecutive conjugate 4-sum to equal 1.
    pub pair_sums_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma4Enumeration {
    pub k: usize,
    /// Every monic `h` meeting the root conditions.
    pub satisfying: Vec<IntPoly>,
    /// Those whose lift is irreducible, hence Salem.
    pub salem: Vec<Lemma4Salem>,
}

/// Bound on `|e_i|` for `k - 1` roots of modulus below 2 and one below 6.
pub fn lemma4_symmetric_bound(k: usize, i: usize) -> BigInt {
    let binom = |n: usize, r: usize| -> BigInt {
        if r > n {
            return BigInt::zero();
        }
        (0..r).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
    };
    let pow2 = |e: usize| BigInt::one() << e;
    let small = binom(k - 1, i) * pow2(i);
    let big = if i >= 1 {
        binom(k - 1, i - 1) * pow2(i - 1) * 6
    } else {
        BigInt::zero()
    };
    small + big
}

/// Enumerates monic integer `h` of degree `k` with `k - 1` roots in `(-2, 1/4)` and
/// one in `(-6, -2)`, and the Salem numbers their lifts define.
pub fn lemma4_enum(k: usize) -> Result<Lemma4Enumeration, SalemError> {
    if k < 2 {
        return Err(SalemError::BadK(k));
    }
    let lo = BigRational::from_integer((-6).into());
    let hi = BigRational::new(1.into(), 4.into());
    // Exactly one root below -2 fixes the sign of h(-2).
    let leaf_signs = [(-2.0, k % 2 == 1)];
    let mut satisfying = Vec::new();
    let mut top = vec![BigInt::zero(); k + 1];
    top[k] = BigInt::one();
    descend(
        &Search {
            k,
            lo: &lo,
            hi: &hi,
            leaf_signs: &leaf_signs,
            accept: &lemma4_root_conditions,
        },
        k - 1,
        &mut top,
        &[],
        &mut satisfying,
    );
    let mut salem: Vec<Lemma4Salem> = satisfying
        .par_iter()
        .filter_map(|h| {
            let f = lemma4_lift(h).expect("degree >= 2");
            let certificate = salem_check(&f).ok()?;
            let pair_sums_verified = certificate.trace_poly == quadratic_pullback(h);
            Some(Lemma4Salem {
                h: h.clone(),
                certificate,
                pair_sums_verified,
            })
        })
        .collect();
    satisfying.sort();
    salem.sort_by(|a, b| a.h.cmp(&b.h));
    Ok(Lemma4Enumeration {
        k,
        satisfying,
        salem,
    })
}

/// `k - 1` roots in `(-2, 1/4)` and one in `(-6, -2)`.
pub fn lemma4_root_conditions(h: &IntPoly) -> bool {
    let k = h.deg();
    let inner = count_roots(h, &Bound::int(-2), &Bound::ratio(1, 4));
    let outer = count_roots(h, &Bound::int(-6), &Bound::int(-2));
    matches!((inner, outer), (Ok(a), Ok(1)) if a + 1 == k)
}

/// All monic integer polynomials of degree `k` with `k` distinct roots in the open
/// interval `(lo, hi)`.
///
/// Coefficients are fixed from the top down. By Rolle's theorem every derivative
/// `h^(j)` is then also real-rooted in `(lo, hi)`, and with `h^(j+1)` known the
/// constant term of `h^(j)` is confined to an interval read off the values at the
/// critical points and the endpoints. Each partial choice is checked exactly with
/// Sturm counts; floating point only sizes the search window (with slack).
pub fn real_rooted_in_interval(k: usize, lo: &BigRational, hi: &BigRational) -> Vec<IntPoly> {
    let accept = |p: &IntPoly| {
        matches!(
            count_roots(p, &Bound::At(lo.clone()), &Bound::At(hi.clone())),
            Ok(n) if n == p.deg()
        )
    };
    let mut out = Vec::new();
    let mut top = vec![BigInt::zero(); k + 1];
    top[k] = BigInt::one();
    descend(
        &Search {
            k,
            lo,
            hi,
            leaf_signs: &[],
            accept: &accept,
        },
        k - 1,
        &mut top,
        &[],
        &mut out,
    );
    out.sort();
    out
}

struct Search<'a> {
    k: usize,
    lo: &'a BigRational,
    hi: &'a BigRational,
    /// Extra `(x, h(x) > 0)` requirements on the final polynomial.
    leaf_signs: &'a [(f64, bool)],
    /// Exact test for the final polynomial.
    accept: &'a (dyn Fn(&IntPoly) -> bool + Sync),
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `h^(j)` from the coefficients `c_j..c_k` (lower ones ignored).
fn derivative_poly(coeffs: &[BigInt], j: usize) -> IntPoly {
    let k = coeffs.len() - 1;
    IntPoly::new(
        (j..=k)
            .map(|i| &coeffs[i] * factorial(i) / factorial(i - j))
            .collect(),
    )
}

fn eval_f64(p: &IntPoly, x: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

/// f64 bisection inside an exact isolating box.
fn float_root_in(p: &IntPoly, b: &RootBox) -> f64 {
    let (mut lo, mut hi) = (rational_to_f64(&b.lo), rational_to_f64(&b.hi));
    let neg_at_lo = eval_f64(p, lo) < 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (eval_f64(p, mid) < 0.0) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn descend(
    search: &Search<'_>,
    j: usize,
    coeffs: &mut Vec<BigInt>,
    crit: &[f64],
    out: &mut Vec<IntPoly>,
) {
    let (k, lo, hi) = (search.k, search.lo, search.hi);
    // P = h^(j) = Q + C with C = j! c_j; P' = h^(j+1) has roots `crit`.
    coeffs[j] = BigInt::zero();
    let q = derivative_poly(coeffs, j);
    let m = crit.len();
    let (lo_f, hi_f) = (rational_to_f64(lo), rational_to_f64(hi));
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    // Sign pattern of P at lo, r_1, ..., r_m, hi is (-1)^(m+1), ..., -, +.
    let mut points = vec![lo_f];
    points.extend_from_slice(crit);
    points.push(hi_f);
    for (idx, &x) in points.iter().enumerate() {
        let positive = (m + 1 - idx).is_multiple_of(2);
        let v = -eval_f64(&q, x);
        if positive {
            lower = lower.max(v);
        } else {
            upper = upper.min(v);
        }
    }
    if j == 0 {
        for &(x, positive) in search.leaf_signs {
            let v = -eval_f64(&q, x);
            if positive {
                lower = lower.max(v);
            } else {
                upper = upper.min(v);
            }
        }
    }
    if lower >= upper + 1.0 {
        return;
    }
    let jf = factorial(j).to_f64().expect("small factorial");
    let slack = 1.0 + 1e-9 * (lower.abs() + upper.abs());
    let mut c_lo = BigInt::from(((lower - slack) / jf).floor() as i64);
    let mut c_hi = BigInt::from(((upper + slack) / jf).ceil() as i64);
    let i = k - j;
    let bound = lemma4_symmetric_bound_generic(k, i, lo, hi);
    if let Some(b) = bound {
        c_lo = c_lo.max(-b.clone());
        c_hi = c_hi.min(b);
    }
    let mut c = c_lo;
    while c <= c_hi {
        coeffs[j] = c.clone();
        let p = derivative_poly(coeffs, j);
        if j == 0 {
            if (search.accept)(&p) {
                out.push(p);
            }
        } else {
            let ok = matches!(
                count_roots(&p, &Bound::At(lo.clone()), &Bound::At(hi.clone())),
                Ok(n) if n == m + 1
            );
            if ok {
                let roots: Vec<f64> = isolate_between(&p, lo, hi)
                    .unwrap_or_default()
                    .iter()
                    .map(|b| float_root_in(&p, b))
                    .collect();
                descend(search, j - 1, coeffs, &roots, out);
            }
        }
        c += 1;
    }
    coeffs[j] = BigInt::zero();
}

/// `|e_i| <= C(k, i) max(|lo|, |hi|)^i` for roots in `(lo, hi)`.
fn lemma4_symmetric_bound_generic(
    k: usize,
    i: usize,
    lo: &BigRational,
    hi: &BigRational,
) -> Option<BigInt> {
    let r = lo.abs().max(hi.abs()).ceil().to_integer();
    let binom = (0..i).fold(BigInt::one(), |acc, t| acc * (k - t) / (t + 1));
    Some(binom * num_traits::pow(r, i))
}

/// Which sequence produced a trace-zero Salem number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trace0Source {
    /// Degree 6, taken from the sextic enumeration.
    Sextic,
    Family(u8),
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyAttempt {
    pub family: u8,
    pub n: u64,
    pub outcome: Option<Rejection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trace0Construction {
    pub source: Trace0Source,
    pub n: Option<u64>,
    pub attempts: Vec<FamilyAttempt>,
    pub certificate: SalemCertificate,
}

/// Per-family index shift: member `n` has degree `n + shift`.
pub fn family_degree_shift(family: u8) -> u64 {
    match family {
        1 => 3,
        2 => 1,
        3 => 2,
        _ => panic!("unknown family {family}"),
    }
}

/// A Salem number of even degree `d >= 6` with trace zero.
pub fn trace0_salem(d: usize) -> Result<Trace0Construction, SalemError> {
    if d < 6 || d % 2 == 1 {
        return Err(SalemError::BadDegree(d));
    }
    if d == 6 {
        let e = enum_deg6_trace0();
        let certificate = e.certificates.into_iter().next().ok_or(SalemError::ConstructionFailed(6))?;
        return Ok(Trace0Construction {
            source: Trace0Source::Sextic,
            n: None,
            attempts: Vec::new(),
            certificate,
        });
    }
    let mut attempts = Vec::new();
    for family in 1..=3u8 {
        let seq = SalemSeq::family(family).expect("known family");
        let n = d as u64 - family_degree_shift(family);
        let poly = seq_poly(&seq, n).map_err(|_| SalemError::ConstructionFailed(d))?;
        match salem_check(&poly) {
            Ok(cert) if cert.trace.is_zero() => {
                attempts.push(FamilyAttempt {
                    family,
                    n,
                    outcome: None,
                });
                return Ok(Trace0Construction {
                    source: Trace0Source::Family(family),
                    n: Some(n),
                    attempts,
                    certificate: cert,
                });
            }
            Ok(_) => return Err(SalemError::ConstructionFailed(d)),
            Err(r) => attempts.push(FamilyAttempt {
                family,
                n,
                outcome: Some(r),
            }),
        }
    }
    Err(SalemError::ConstructionFailed(d))
}

/// Error adapter for callers that want `count_roots` failures as rejections.
impl From<RootError> for Rejection {
    fn from(_: RootError) -> Self {
        Rejection::RootWindowViolation
    }
}
