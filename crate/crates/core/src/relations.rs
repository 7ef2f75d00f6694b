//! Additive relations `k_1 a_1 + ... + k_d a_d = 0` among the conjugates of a Salem number.
//!
//! Conjugates are labelled from a certificate: `a_{2j-1}, a_{2j}` are the two roots of
//! `x^2 - b_j x + 1`, where `b_1 > b_2 > ... > b_s` are the roots of the trace polynomial.
//! A relation must take equal values on each such pair, so the search runs over the
//! reduced vectors `(m_1, ..., m_s)` acting on the `b_j`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{norm_form, quadratic_pullback, quadratic_pushforward, IntPoly, Sign};
use crate::realroots::{count_roots, rational_to_f64, refine_bits, Bound, RootBox};
use crate::salem::{sqrt_bounds, SalemCertificate};

/// Longest alpha-level relation the search accepts.
pub const MAX_SEARCH_LENGTH: u32 = 24;

/// Squarefree `m` tried when splitting the trace polynomial over a real quadratic field.
pub const QUADSPLIT_M: [u32; 6] = [2, 3, 5, 6, 7, 10];
pub const QUADSPLIT_COEFF_BOUND: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("coefficient vector has odd length {0}")]
    OddLength(usize),
    #[error("k_{} = {} differs from k_{} = {}; conjugates of a Salem number admit no such relation", .index * 2 + 1, .left, .index * 2 + 2, .right)]
    PairingViolation { index: usize, left: i64, right: i64 },
    #[error("max length {0} exceeds the search bound {MAX_SEARCH_LENGTH}")]
    LengthTooLarge(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationVector {
    pub coeffs: Vec<i64>,
    pub length: u64,
}

impl RelationVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let length = coeffs.iter().map(|c| c.unsigned_abs()).sum();
        RelationVector { coeffs, length }
    }

    /// The alpha-level vector `(m_1, m_1, m_2, m_2, ...)`.
    pub fn from_reduced(reduced: &[i64]) -> Self {
        Self::new(reduced.iter().flat_map(|&m| [m, m]).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    CertifiedTrace,
    CertifiedPairsum,
    CertifiedQuadsplit,
    /// Passed the interval screen only; not a proof.
    NumericOnly,
}

impl Status {
    pub fn is_certified(self) -> bool {
        self != Status::NumericOnly
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::CertifiedTrace => "certified_trace",
            Status::CertifiedPairsum => "certified_pairsum",
            Status::CertifiedQuadsplit => "certified_quadsplit",
            Status::NumericOnly => "numeric_only",
        }
    }
}

/// The exact data behind a certified status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `trace_poly = (-1)^k h(x(1-x))`; `pairs[i]` are the 0-based indices of `b`'s with sum 1.
    Pairsum { h: IntPoly, pairs: Vec<(usize, usize)> },
    /// `trace_poly = p^2 - m q^2`; `groups` are the `b`-indices of each conjugate factor.
    Quadsplit {
        p: IntPoly,
        q: IntPoly,
        m: u32,
        groups: [Vec<usize>; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub vector: RelationVector,
    pub reduced: Vec<i64>,
    pub nontrivial: bool,
    pub status: Status,
    pub evidence: Option<Evidence>,
    /// Precision at which the screen accepted the vector (after any escalation).
    pub precision_bits: u32,
}

/// `(k_1, k_3, ..., k_{2s-1})` when `k_{2j-1} = k_{2j}` for all `j`.
pub fn pair_reduce(coeffs: &[i64]) -> Result<Vec<i64>, RelationError> {
    if coeffs.len() % 2 == 1 {
        return Err(RelationError::OddLength(coeffs.len()));
    }
    coeffs
        .chunks(2)
        .enumerate()
        .map(|(index, w)| {
            if w[0] == w[1] {
                Ok(w[0])
            } else {
                Err(RelationError::PairingViolation {
                    index,
                    left: w[0],
                    right: w[1],
                })
            }
        })
        .collect()
}

/// The `b_j` boxes at a fixed precision, cached by width.
struct BetaTable {
    boxes: Vec<RootBox>,
    bits: u32,
}

impl BetaTable {
    fn new(cert: &SalemCertificate, bits: u32) -> Self {
        BetaTable {
            boxes: cert.beta_boxes.iter().map(|b| refine_bits(b, bits)).collect(),
            bits,
        }
    }

    /// Exact enclosure of `sum m_j b_j`.
    fn interval(&self, m: &[i64]) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (b, &c) in self.boxes.iter().zip(m) {
            if c == 0 {
                continue;
            }
            let c = BigRational::from_integer(c.into());
            let (x, y) = (&c * &b.lo, &c * &b.hi);
            if x <= y {
                lo += x;
                hi += y;
            } else {
                lo += y;
                hi += x;
            }
        }
        (lo, hi)
    }
}

fn pow2_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Distance from 0 to `[lo, hi]`, zero when it contains 0.
fn distance_to_zero(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.is_positive() {
        lo.clone()
    } else if hi.is_negative() {
        -hi.clone()
    } else {
        BigRational::zero()
    }
}

enum Screen {
    Pass(u32),
    Reject,
}

/// Interval screen: pass when the enclosure at `2P` bits contains 0; a near miss within
/// `2^(-P/2)` is retried once at `4P` bits.
struct Screener {
    precision: u32,
    base: BetaTable,
    escalated: std::sync::OnceLock<BetaTable>,
    cert: SalemCertificate,
    approx: Vec<f64>,
}

impl Screener {
    fn new(cert: &SalemCertificate, precision: u32) -> Self {
        let approx = cert
            .beta_boxes
            .iter()
            .map(|b| refine_bits(b, 60).to_f64())
            .collect();
        Screener {
            precision,
            base: BetaTable::new(cert, 2 * precision),
            escalated: std::sync::OnceLock::new(),
            cert: cert.clone(),
            approx,
        }
    }

    /// True when the float sum is so far from 0 that the exact screen must reject.
    fn float_reject(&self, m: &[i64]) -> bool {
        let mut sum = 0.0;
        let mut scale = 0.0;
        for (&b, &c) in self.approx.iter().zip(m) {
            sum += c as f64 * b;
            scale += c.unsigned_abs() as f64 * (b.abs() + 1.0);
        }
        let margin = scale * 2f64.powi(-45)
            + 2f64.powf(-(self.precision as f64) / 2.0)
            + scale * 2f64.powi(-2 * self.precision.min(500) as i32);
        sum.abs() > margin
    }

    fn screen(&self, m: &[i64]) -> Screen {
        let (lo, hi) = self.base.interval(m);
        let dist = distance_to_zero(&lo, &hi);
        if dist.is_zero() {
            return Screen::Pass(self.precision);
        }
        if dist >= pow2_neg(self.precision / 2) {
            return Screen::Reject;
        }
        let table = self
            .escalated
            .get_or_init(|| BetaTable::new(&self.cert, 2 * self.base.bits));
        let (lo, hi) = table.interval(m);
        if distance_to_zero(&lo, &hi).is_zero() {
            Screen::Pass(2 * self.precision)
        } else {
            Screen::Reject
        }
    }
}

/// All sign-canonical primitive reduced vectors with `sum |m_j| <= budget`.
fn enumerate_reduced<F>(s: usize, budget: u32, keep: F) -> Vec<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let b = budget as i64;
    let mut out: Vec<Vec<i64>> = (0..=b)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut cur = vec![0i64; s];
            cur[0] = first;
            walk(&mut cur, 1, budget - first as u32, first != 0, &keep, &mut found);
            found
        })
        .collect();
    out.sort();
    out
}

fn walk<F>(cur: &mut Vec<i64>, pos: usize, left: u32, signed: bool, keep: &F, out: &mut Vec<Vec<i64>>)
where
    F: Fn(&[i64]) -> bool,
{
    if pos == cur.len() {
        if signed && cur.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1 && keep(cur) {
            out.push(cur.clone());
        }
        return;
    }
    let l = left as i64;
    let lo = if signed { -l } else { 0 };
    for c in lo..=l {
        cur[pos] = c;
        walk(cur, pos + 1, left - c.unsigned_abs() as u32, signed || c != 0, keep, out);
    }
    cur[pos] = 0;
}

/// Screens every reduced vector of alpha-length at most `max_length` and certifies survivors.
pub fn find_relations(
    cert: &SalemCertificate,
    max_length: u32,
    precision_bits: u32,
) -> Result<Vec<RelationReport>, RelationError> {
    if max_length > MAX_SEARCH_LENGTH {
        return Err(RelationError::LengthTooLarge(max_length));
    }
    let precision_bits = precision_bits.max(1);
    let screener = Screener::new(cert, precision_bits);
    let candidates = enumerate_reduced(cert.s(), max_length / 2, |m| !screener.float_reject(m));
    let certifier = Certifier::new(cert);
    let mut reports: Vec<RelationReport> = candidates
        .into_iter()
        .filter_map(|m| match screener.screen(&m) {
            Screen::Reject => None,
            Screen::Pass(bits) => {
                let (status, evidence) = certifier.certify(&m);
                let vector = RelationVector::from_reduced(&m);
                Some(RelationReport {
                    nontrivial: !vector.is_trivial(),
                    vector,
                    reduced: m,
                    status,
                    evidence,
                    precision_bits: bits,
                })
            }
        })
        .collect();
    reports.sort_by(report_order);
    Ok(reports)
}

/// True when no nontrivial relation of alpha-length below `bound` passes a 128-bit screen.
pub fn min_length_scan(cert: &SalemCertificate, bound: u32) -> Result<bool, RelationError> {
    if bound > MAX_SEARCH_LENGTH {
        return Err(RelationError::LengthTooLarge(bound));
    }
    if bound <= 1 {
        return Ok(true);
    }
    let reports = find_relations(cert, bound - 1, 128)?;
    Ok(reports.iter().all(|r| !r.nontrivial))
}

/// First applicable exact certificate for a screened reduced vector.
pub fn certify(cert: &SalemCertificate, reduced: &[i64]) -> Status {
    Certifier::new(cert).certify(reduced).0
}

/// Precomputed structure of one certificate used by the exact certification patterns.
pub struct Certifier {
    trace_zero: bool,
    pairsum: Option<Evidence>,
    quadsplit: Option<Evidence>,
}

impl Certifier {
    pub fn new(cert: &SalemCertificate) -> Self {
        Certifier {
            trace_zero: cert.trace.is_zero(),
            pairsum: pairsum_structure(cert),
            quadsplit: quadsplit_structure(cert),
        }
    }

    pub fn certify(&self, m: &[i64]) -> (Status, Option<Evidence>) {
        if self.trace_zero && m.windows(2).all(|w| w[0] == w[1]) {
            return (Status::CertifiedTrace, None);
        }
        if let Some(ev @ Evidence::Pairsum { pairs, .. }) = &self.pairsum {
            let constant = pairs.iter().all(|&(a, b)| m[a] == m[b]);
            let total: i64 = pairs.iter().map(|&(a, _)| m[a]).sum();
            if constant && total == 0 {
                return (Status::CertifiedPairsum, Some(ev.clone()));
            }
        }
        if let Some(ev @ Evidence::Quadsplit { groups, .. }) = &self.quadsplit {
            let constant = groups
                .iter()
                .all(|g| g.windows(2).all(|w| m[w[0]] == m[w[1]]));
            if constant {
                return (Status::CertifiedQuadsplit, Some(ev.clone()));
            }
        }
        (Status::NumericOnly, None)
    }

    pub fn pairsum(&self) -> Option<&Evidence> {
        self.pairsum.as_ref()
    }

    pub fn quadsplit(&self) -> Option<&Evidence> {
        self.quadsplit.as_ref()
    }
}

/// Recovers `h` with `g = (-1)^k h(x(1-x))` and matches each `b` with its partner `1 - b`.
fn pairsum_structure(cert: &SalemCertificate) -> Option<Evidence> {
    let g = &cert.trace_poly;
    let h = quadratic_pushforward(g)?;
    if quadratic_pullback(&h) != *g {
        return None;
    }
    let one = BigRational::one();
    let n = cert.beta_boxes.len();
    for bits in [16u32, 32, 64, 128, 256, 512, 1024] {
        let boxes: Vec<RootBox> = cert.beta_boxes.iter().map(|b| refine_bits(b, bits)).collect();
        let mut partner = vec![None; n];
        let mut ambiguous = false;
        for i in 0..n {
            let (lo, hi) = (&one - &boxes[i].hi, &one - &boxes[i].lo);
            let hits: Vec<usize> = (0..n)
                .filter(|&j| boxes[j].lo <= hi && lo <= boxes[j].hi)
                .collect();
            match hits.as_slice() {
                [j] if *j != i => partner[i] = Some(*j),
                _ => ambiguous = true,
            }
        }
        if ambiguous {
            continue;
        }
        let mut pairs = Vec::new();
        for (i, p) in partner.iter().enumerate() {
            let j = (*p)?;
            if partner[j] != Some(i) {
                return None;
            }
            if i < j {
                pairs.push((i, j));
            }
        }
        return Some(Evidence::Pairsum { h, pairs });
    }
    None
}

/// The polynomial part of `sqrt(r)`: the unique `p` with positive leading coefficient and
/// `deg(r - p^2) < deg(r) / 2`, if it has integer coefficients.
pub fn sqrt_polynomial_part(r: &IntPoly) -> Option<IntPoly> {
    let d = r.degree()?;
    if d % 2 == 1 {
        return None;
    }
    let n = d / 2;
    let lc = r.coeff(d);
    if !lc.is_positive() {
        return None;
    }
    let top = lc.sqrt();
    if &top * &top != lc {
        return None;
    }
    let mut p = vec![BigInt::zero(); n + 1];
    p[n] = top.clone();
    let two_top = &top * 2;
    for i in (0..n).rev() {
        // Coefficient of x^(n+i) in r - p^2 with p known above i.
        let mut c = r.coeff(n + i);
        for a in (i + 1)..=n {
            let b = n + i - a;
            if b > i && b <= n {
                c -= &p[a] * &p[b];
            }
        }
        let (q, rem) = c.div_rem(&two_top);
        if !rem.is_zero() {
            return None;
        }
        p[i] = q;
    }
    Some(IntPoly::new(p))
}

/// Exact square root of an integer polynomial with positive leading coefficient.
pub fn exact_sqrt(r: &IntPoly) -> Option<IntPoly> {
    let p = sqrt_polynomial_part(r)?;
    (&p * &p == *r).then_some(p)
}

/// Searches `g = p^2 - m q^2` with `deg p = s/2`, zero subleading coefficient in `p`,
/// `m` squarefree in [`QUADSPLIT_M`] and coefficients of `p, q` bounded by
/// [`QUADSPLIT_COEFF_BOUND`]; then splits the `b`'s between the two conjugate factors.
fn quadsplit_structure(cert: &SalemCertificate) -> Option<Evidence> {
    let g = &cert.trace_poly;
    let s = g.deg();
    if s % 2 == 1 || s < 4 {
        return None;
    }
    let p = sqrt_polynomial_part(g)?;
    if !p.coeff(s / 2 - 1).is_zero() {
        return None;
    }
    let within = |f: &IntPoly| {
        f.coeffs()
            .iter()
            .all(|c| c.abs() <= BigInt::from(QUADSPLIT_COEFF_BOUND))
    };
    if !within(&p) {
        return None;
    }
    let diff = &(&p * &p) - g;
    if diff.is_zero() || diff.deg() > s - 4 {
        return None;
    }
    for m in QUADSPLIT_M {
        let mb = BigInt::from(m);
        let scaled = diff.div_scalar(&mb);
        if scaled.scale(&mb) != diff {
            continue;
        }
        let Some(q) = exact_sqrt(&scaled) else { continue };
        if !within(&q) || norm_form(&p, &q, &mb) != *g {
            continue;
        }
        let groups = split_by_factor(cert, &p, &q)?;
        return Some(Evidence::Quadsplit { p, q, m, groups });
    }
    None
}

/// `b` is a root of `p - sqrt(m) q` exactly when `p(b)` and `q(b)` share a sign.
fn split_by_factor(cert: &SalemCertificate, p: &IntPoly, q: &IntPoly) -> Option<[Vec<usize>; 2]> {
    let pq = p * q;
    let mut same = Vec::new();
    let mut opposite = Vec::new();
    for (i, b) in cert.beta_boxes.iter().enumerate() {
        let mut cur = b.clone();
        let mut clear = false;
        for _ in 0..2048 {
            if cur.is_exact() {
                return None;
            }
            let free = matches!(
                count_roots(&pq, &Bound::At(cur.lo.clone()), &Bound::At(cur.hi.clone())),
                Ok(0)
            );
            if free {
                clear = true;
                break;
            }
            cur = cur.bisect();
        }
        if !clear {
            return None;
        }
        let mid = cur.midpoint();
        let (sp, sq) = (p.sign_at(&mid), q.sign_at(&mid));
        if sp == Sign::Zero || sq == Sign::Zero {
            return None;
        }
        if sp == sq {
            same.push(i);
        } else {
            opposite.push(i);
        }
    }
    let half = cert.s() / 2;
    (same.len() == half && opposite.len() == half).then_some([same, opposite])
}

/// Interval `[lo, hi]` with exact rational ends.
#[derive(Debug, Clone)]
struct Iv {
    lo: BigRational,
    hi: BigRational,
}

impl Iv {
    fn add(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn scale(&self, c: i64) -> Iv {
        let c = BigRational::from_integer(c.into());
        let (a, b) = (&c * &self.lo, &c * &self.hi);
        if a <= b {
            Iv { lo: a, hi: b }
        } else {
            Iv { lo: b, hi: a }
        }
    }

    fn square(&self) -> Iv {
        let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
        let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
        if self.lo.is_negative() && self.hi.is_positive() {
            Iv {
                lo: BigRational::zero(),
                hi: mx,
            }
        } else {
            Iv { lo: mn, hi: mx }
        }
    }

    fn sqrt(&self, bits: u32) -> Iv {
        let zero = BigRational::zero();
        let lo = sqrt_bounds(&self.lo.clone().max(zero.clone()), bits).0;
        let hi = sqrt_bounds(&self.hi.clone().max(zero), bits).1;
        Iv { lo, hi }
    }

    fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

/// Test harness: screens every sign-canonical primitive alpha-level vector with
/// `sum |k_i| <= max_length` (paired or not) and returns those whose value encloses 0.
///
/// With `a_{2j-1,2j} = e^(+-i t_j)` and `b_j = 2 cos t_j` for `j >= 2`, and
/// `a_{1,2} = (b_1 +- sqrt(b_1^2 - 4)) / 2`, the real and imaginary parts are
/// `sum (k_a + k_b) b_j / 2 + (k_1 - k_2) sqrt(b_1^2 - 4) / 2` and
/// `sum_{j >= 2} (k_a - k_b) sqrt(4 - b_j^2) / 2`.
pub fn alpha_screen(cert: &SalemCertificate, max_length: u32, precision_bits: u32) -> Vec<Vec<i64>> {
    let s = cert.s();
    let bits = 2 * precision_bits;
    let four = BigRational::from_integer(4.into());
    let betas: Vec<Iv> = cert
        .beta_boxes
        .iter()
        .map(|b| {
            let r = refine_bits(b, bits);
            Iv { lo: r.lo, hi: r.hi }
        })
        .collect();
    let radicals: Vec<Iv> = betas
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let sq = b.square();
            let inner = if j == 0 {
                Iv {
                    lo: &sq.lo - &four,
                    hi: &sq.hi - &four,
                }
            } else {
                Iv {
                    lo: &four - &sq.hi,
                    hi: &four - &sq.lo,
                }
            };
            inner.sqrt(bits)
        })
        .collect();
    let bf: Vec<f64> = betas.iter().map(|b| rational_to_f64(&b.lo)).collect();
    let rf: Vec<f64> = radicals.iter().map(|r| rational_to_f64(&r.lo)).collect();
    let float_parts = |k: &[i64]| -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for j in 0..s {
            let (a, b) = (k[2 * j], k[2 * j + 1]);
            re += (a + b) as f64 * bf[j] / 2.0;
            if j == 0 {
                re += (a - b) as f64 * rf[0] / 2.0;
            } else {
                im += (a - b) as f64 * rf[j] / 2.0;
            }
        }
        (re, im)
    };
    let tol = 1e-8;
    let candidates = enumerate_reduced(2 * s, max_length, |k| {
        let (re, im) = float_parts(k);
        re.abs() <= tol && im.abs() <= tol
    });
    candidates
        .into_iter()
        .filter(|k| {
            let zero = Iv {
                lo: BigRational::zero(),
                hi: BigRational::zero(),
            };
            let mut re = zero.clone();
            let mut im = zero;
            for j in 0..s {
                let (a, b) = (k[2 * j], k[2 * j + 1]);
                re = re.add(&betas[j].scale(a + b));
                let rad = radicals[j].scale(a - b);
                if j == 0 {
                    re = re.add(&rad);
                } else {
                    im = im.add(&rad);
                }
            }
            re.contains_zero() && im.contains_zero()
        })
        .collect()
}

/// Orders reports by alpha-length, then coefficients.
pub fn report_order(a: &RelationReport, b: &RelationReport) -> Ordering {
    a.vector
        .length
        .cmp(&b.vector.length)
        .then_with(|| a.vector.coeffs.cmp(&b.vector.coeffs))
}

/// Value of `sum m_j b_j` at double precision, for display.
pub fn approx_value(cert: &SalemCertificate, reduced: &[i64]) -> f64 {
    cert.beta_boxes
        .iter()
        .zip(reduced)
        .map(|(b, &m)| m as f64 * refine_bits(b, 60).to_f64())
        .sum()
}
