//! Cyclotomic polynomials and cyclotomic factors of Salem sequences
//! `x^n f(x) + eps f*(x)`.
//!
//! The candidate roots of unity for a sequence are read off five auxiliary
//! polynomials built from `f` and its reciprocal; each candidate order `l` with
//! `f(zeta) != 0` then divides the sequence exactly along one residue class of
//! `n` modulo `l`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("seq member n={0} is not divisible by x-1")]
    NotDivisible(u64),
    #[error("sequence index must be at least 2, got {0}")]
    IndexTooSmall(u64),
    #[error("f* = ±f, the sequence hypothesis fails")]
    SelfReciprocal,
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let large: Vec<u64> = v.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    v.extend(large);
    v
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Phi_d` for every
/// proper divisor `d`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut table: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for d in divisors(n) {
        let mut acc = x_pow_minus_one(d as usize);
        for e in divisors(d) {
            if e < d {
                acc = acc.div_exact(&table[&e]).expect("Phi_e divides x^d - 1");
            }
        }
        table.insert(d, acc);
    }
    table.remove(&n).expect("n divides itself")
}

fn x_pow_minus_one(d: usize) -> IntPoly {
    &IntPoly::monomial(BigInt::from(1), d) - &IntPoly::one()
}

/// `Phi_order` divides the target exactly `multiplicity` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CyclotomicHit {
    pub order: u64,
    pub multiplicity: u32,
}

/// All orders `l` with `phi(l) <= max_totient`, ascending.
fn orders_up_to_totient(max_totient: u64) -> Vec<u64> {
    // phi(l) >= sqrt(l / 2), so l <= 2 t^2.
    let limit = (2 * max_totient * max_totient + 2) as usize;
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    (1..=limit as u64).filter(|&l| phi[l as usize] <= max_totient).collect()
}

/// Floating-point screen: `false` only when `p(e^(2 pi i / l))` is certainly nonzero.
fn may_vanish_at_root_of_unity(p: &IntPoly, l: u64) -> bool {
    let coeffs: Option<Vec<f64>> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    let Some(coeffs) = coeffs else {
        return true;
    };
    let scale: f64 = coeffs.iter().map(|c| c.abs()).sum();
    if !scale.is_finite() || coeffs.iter().any(|c| c.abs() > 2f64.powi(52)) {
        return true;
    }
    let theta = 2.0 * std::f64::consts::PI / l as f64;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let (zr, zi) = (theta.cos(), theta.sin());
    for &c in coeffs.iter().rev() {
        let nr = re * zr - im * zi + c;
        let ni = re * zi + im * zr;
        re = nr;
        im = ni;
    }
    // Rounding error is far below this for any degree we handle.
    (re * re + im * im).sqrt() <= 1e-6 * scale.max(1.0)
}

/// Every cyclotomic factor of `p`, by testing each order whose totient is at most `deg p`.
pub fn cyclotomic_part(p: &IntPoly) -> Vec<CyclotomicHit> {
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let mut hits: Vec<CyclotomicHit> = orders_up_to_totient(n as u64)
        .into_par_iter()
        .filter(|&l| may_vanish_at_root_of_unity(p, l))
        .filter_map(|l| {
            let phi = cyclotomic(l);
            let mut rest = p.clone();
            let mut mult = 0;
            while let Some(q) = rest.div_exact(&phi) {
                rest = q;
                mult += 1;
            }
            (mult > 0).then_some(CyclotomicHit {
                order: l,
                multiplicity: mult,
            })
        })
        .collect();
    hits.sort();
    hits
}

/// The sequence `x^n f(x) + eps f*(x)`, optionally divided by `x - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SalemSeq {
    pub f: IntPoly,
    pub eps: i8,
    pub divide_by_x_minus_1: bool,
}

impl SalemSeq {
    pub fn new(f: IntPoly, eps: i8, divide_by_x_minus_1: bool) -> Result<Self, CycloError> {
        assert!(eps == 1 || eps == -1, "eps must be ±1");
        let r = f.reciprocal();
        if r == f || r == -&f {
            return Err(CycloError::SelfReciprocal);
        }
        Ok(SalemSeq {
            f,
            eps,
            divide_by_x_minus_1,
        })
    }

    /// The three sequences of the trace-zero construction.
    pub fn family(k: u8) -> Option<SalemSeq> {
        let (f, eps, div) = match k {
            1 => (IntPoly::from_coeffs(&[-1, -1, 0, 1]), 1, false),
            2 => (IntPoly::from_coeffs(&[-1, -1, 1]), -1, true),
            3 => (IntPoly::from_coeffs(&[-1, 0, -1, 1]), -1, true),
            _ => return None,
        };
        Some(SalemSeq::new(f, eps, div).expect("families are not self-reciprocal"))
    }

    fn eps_poly(&self, p: &IntPoly) -> IntPoly {
        if self.eps < 0 {
            -p
        } else {
            p.clone()
        }
    }

    /// `x^n f + eps f*` before any division.
    pub fn raw(&self, n: u64) -> IntPoly {
        &self.f.shift(n as usize) + &self.eps_poly(&self.f.reciprocal())
    }
}

/// Auxiliary polynomials and the candidate orders they carry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidates {
    pub aux: Vec<IntPoly>,
    pub orders: BTreeSet<u64>,
    /// Some auxiliary polynomial vanished identically; `orders` is then not exhaustive.
    pub identically_zero: bool,
}

pub fn bs_candidates(seq: &SalemSeq) -> Candidates {
    let f = &seq.f;
    let fs = f.reciprocal();
    let f2 = f * f;
    let fs2 = &fs * &fs;
    let f_sq_arg = f.inflate(2);
    let fs_sq_arg = fs.inflate(2);
    let f_negsq = f.negate_var().inflate(2);
    let fs_negsq = fs.negate_var().inflate(2);
    let a1 = &(&f_sq_arg * &fs2) + &seq.eps_poly(&(&f2 * &fs_sq_arg));
    let b = &f2 * &fs_negsq;
    let c = &f_negsq * &fs2;
    let d = f * &fs.negate_var();
    let e = &f.negate_var() * &fs;
    let aux = vec![a1, &b + &c, &b - &c, &d + &e, &d - &e];
    let identically_zero = aux.iter().any(|a| a.is_zero());
    let orders = aux
        .iter()
        .filter(|a| !a.is_zero())
        .flat_map(|a| cyclotomic_part(a).into_iter().map(|h| h.order))
        .collect();
    Candidates {
        aux,
        orders,
        identically_zero,
    }
}

/// The `n`-th member of the sequence.
pub fn seq_poly(seq: &SalemSeq, n: u64) -> Result<IntPoly, CycloError> {
    if n < 2 {
        return Err(CycloError::IndexTooSmall(n));
    }
    let raw = seq.raw(n);
    if seq.divide_by_x_minus_1 {
        raw.div_exact(&IntPoly::from_coeffs(&[-1, 1]))
            .ok_or(CycloError::NotDivisible(n))
    } else {
        Ok(raw)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgressionEntry {
    pub order: u64,
    /// `n mod order` values for which `Phi_order` divides the member.
    pub residues: BTreeSet<u64>,
    /// Isolated indices outside the periodic pattern (the `x - 1` factor left
    /// after dividing, which vanishes for at most one `n`).
    pub sporadic: Vec<u64>,
    /// `f(zeta) = 0` for this order, so periodicity is unproven and `residues`
    /// was read off the bounded range `2..=FLAGGED_RANGE_END` only.
    pub f_zero_at_root: bool,
}

impl ProgressionEntry {
    pub fn contains(&self, n: u64) -> bool {
        self.residues.contains(&(n % self.order)) || self.sporadic.contains(&n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgressionSet {
    pub entries: Vec<ProgressionEntry>,
}

impl ProgressionSet {
    /// Whether some candidate cyclotomic factor divides member `n`.
    pub fn is_bad(&self, n: u64) -> bool {
        self.entries.iter().any(|e| e.contains(n))
    }

    /// Arithmetic progressions `(modulus, residue)` in the shifted index `n + shift`.
    pub fn shifted(&self, shift: u64) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .entries
            .iter()
            .flat_map(|e| e.residues.iter().map(move |&r| (e.order, (r + shift) % e.order)))
            .collect();
        out.sort();
        out
    }
}

const FIRST_INDEX: u64 = 2;
pub const FLAGGED_RANGE_END: u64 = 200;

/// Residue classes of `n` where each candidate cyclotomic factor divides the member.
pub fn gn_progressions(seq: &SalemSeq) -> Result<ProgressionSet, CycloError> {
    let cands = bs_candidates(seq);
    let entries: Result<Vec<ProgressionEntry>, CycloError> = cands
        .orders
        .par_iter()
        .map(|&l| progression_for(seq, l))
        .collect();
    let mut entries = entries?;
    entries.sort_by_key(|e| e.order);
    Ok(ProgressionSet { entries })
}

fn progression_for(seq: &SalemSeq, l: u64) -> Result<ProgressionEntry, CycloError> {
    let phi = cyclotomic(l);
    let divides = |n: u64| -> Result<bool, CycloError> { Ok(phi.divides(&seq_poly(seq, n)?)) };
    if l == 1 && seq.divide_by_x_minus_1 {
        return Ok(ProgressionEntry {
            order: 1,
            residues: BTreeSet::new(),
            sporadic: x_minus_one_index(seq).into_iter().collect(),
            f_zero_at_root: false,
        });
    }
    let f_zero = !seq.f.gcd(&phi).is_constant();
    let mut residues = BTreeSet::new();
    let end = if f_zero {
        FLAGGED_RANGE_END
    } else {
        FIRST_INDEX + l - 1
    };
    for n in FIRST_INDEX..=end {
        if divides(n)? {
            residues.insert(n % l);
        }
    }
    Ok(ProgressionEntry {
        order: l,
        residues,
        sporadic: Vec::new(),
        f_zero_at_root: f_zero,
    })
}

/// The unique `n >= 2` (if any) where `(x^n f + eps f*) / (x - 1)` still vanishes at 1.
///
/// That quotient at 1 is the derivative of the raw member at 1, which is
/// `n f(1) + f'(1) + eps f*'(1)`, linear in `n`.
fn x_minus_one_index(seq: &SalemSeq) -> Option<u64> {
    let one = BigInt::from(1);
    let f1 = seq.f.eval(&one);
    let rest = &seq.f.derivative().eval(&one)
        + &seq.eps_poly(&seq.f.reciprocal().derivative()).eval(&one);
    if f1.is_zero() {
        return None;
    }
    let neg = -rest;
    if !(&neg % &f1).is_zero() {
        return None;
    }
    let n = (neg / f1).to_i64()?;
    (n >= FIRST_INDEX as i64).then_some(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30), p(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        assert_eq!(totient(30), 8);
    }

    #[test]
    fn cyclotomic_part_examples() {
        assert_eq!(
            cyclotomic_part(&p(&[1, 1, 1])),
            vec![CyclotomicHit { order: 3, multiplicity: 1 }]
        );
        assert!(cyclotomic_part(&p(&[-1, -1, 0, 1])).is_empty());
        let q = &p(&[-1, 1]).pow(2) * &p(&[1, 0, 1]);
        assert_eq!(
            cyclotomic_part(&q),
            vec![
                CyclotomicHit { order: 1, multiplicity: 2 },
                CyclotomicHit { order: 4, multiplicity: 1 }
            ]
        );
    }

    #[test]
    fn seq_poly_examples() {
        let s1 = SalemSeq::family(1).unwrap();
        // x^3 (x^3 - x - 1) + (-x^3 - x^2 + 1)
        assert_eq!(seq_poly(&s1, 3).unwrap(), p(&[1, 0, -1, -2, -1, 0, 1]));
        assert_eq!(seq_poly(&s1, 2).unwrap(), p(&[1, 0, -2, -2, 0, 1]));
        let s2 = SalemSeq::family(2).unwrap();
        // (x^4 - x^3 - x^2 + x^2 + x - 1) / (x - 1) = x^3 + 1 ... check by multiplication
        let q = seq_poly(&s2, 2).unwrap();
        assert_eq!(&q * &p(&[-1, 1]), s2.raw(2));
        assert_eq!(seq_poly(&s1, 1), Err(CycloError::IndexTooSmall(1)));
        let bad = SalemSeq::new(p(&[-1, -1, 0, 1]), 1, true).unwrap();
        assert_eq!(seq_poly(&bad, 3), Err(CycloError::NotDivisible(3)));
    }

    #[test]
    fn self_reciprocal_rejected() {
        assert_eq!(
            SalemSeq::new(p(&[1, 3, 1]), 1, false),
            Err(CycloError::SelfReciprocal)
        );
        assert_eq!(
            SalemSeq::new(p(&[1, 0, -1]), 1, false),
            Err(CycloError::SelfReciprocal)
        );
    }

    #[test]
    fn sporadic_x_minus_one_indices() {
        assert_eq!(x_minus_one_index(&SalemSeq::family(2).unwrap()), Some(4));
        assert_eq!(x_minus_one_index(&SalemSeq::family(3).unwrap()), Some(5));
    }
}
