//! Factorization of integer polynomials into irreducibles over the rationals.
//!
//! The pipeline is the classical one: squarefree decomposition, Berlekamp
//! factorization modulo a small prime, Hensel lifting past a coefficient bound,
//! and exhaustive recombination of the lifted factors.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::modp::{Field, ModPoly};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("degree {0} exceeds the oracle limit of 8")]
    DegreeTooLarge(usize),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// `content * prod(factor^multiplicity)`, factors primitive and irreducible with
/// positive leading coefficient, sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::json::big_str")]
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.content.abs().is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }

    fn finish(content: BigInt, mut factors: Vec<(IntPoly, u32)>) -> Self {
        factors.sort();
        Factorization { content, factors }
    }
}

/// Squarefree decomposition `p = c * prod(a_i^i)` with each `a_i` squarefree,
/// pairwise coprime, primitive and with positive leading coefficient.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    if p.is_zero() || p.deg() == 0 {
        return Vec::new();
    }
    let p = p.normalized();
    let mut out = Vec::new();
    let mut g = p.gcd(&p.derivative());
    let mut w = p.div_exact(&g).expect("gcd divides").normalized();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&g);
        let z = w.div_exact(&y).expect("gcd divides").normalized();
        if z.deg() > 0 {
            out.push((z, i));
        }
        g = g.div_exact(&y).expect("gcd divides").normalized();
        w = y;
        i += 1;
    }
    out
}

/// Signed content making every factor's leading coefficient positive.
fn signed_content(p: &IntPoly) -> BigInt {
    let c = p.content();
    if p.leading_coeff().is_some_and(|lc| lc.is_negative()) {
        -c
    } else {
        c
    }
}

/// Complete factorization over the rationals.
pub fn factor(p: &IntPoly) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let content = signed_content(p);
    let mut factors = Vec::new();
    for (sq, m) in squarefree_decomposition(p) {
        for f in factor_squarefree(&sq) {
            factors.push((f, m));
        }
    }
    Ok(Factorization::finish(content, factors))
}

pub fn is_irreducible(p: &IntPoly) -> bool {
    p.deg() >= 1 && factor(p).map(|f| f.is_irreducible()).unwrap_or(false)
}

/// Factors a primitive squarefree polynomial with positive leading coefficient.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Pull out x first so the modular image keeps a nonzero constant term.
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&IntPoly::x()).expect("x divides");
        let mut out = vec![IntPoly::x()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let Some(choice) = choose_prime(f) else {
        unreachable!("squarefree polynomial has a good prime")
    };
    if choice.factors.len() == 1 || choice.irreducible_by_degrees {
        return vec![f.clone()];
    }
    let lifted = hensel_lift(f, &choice.field, &choice.factors);
    recombine(f, lifted, &choice.allowed_degrees)
}

struct PrimeChoice {
    field: Field,
    factors: Vec<ModPoly>,
    allowed_degrees: BTreeSet<usize>,
    irreducible_by_degrees: bool,
}

const PRIME_CANDIDATES: usize = 5;

/// Tries the first few good primes (at least 5, not dividing the leading
/// coefficient, keeping the image squarefree) and keeps the one with the fewest
/// modular factors. Degree patterns from all tried primes are intersected.
fn choose_prime(f: &IntPoly) -> Option<PrimeChoice> {
    let n = f.deg();
    let mut best: Option<(Field, Vec<ModPoly>)> = None;
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut tried = 0;
    for p in primes_from(5).take(400) {
        let field = Field::new(p);
        let fp = field.reduce_poly(f);
        if fp.len() != n + 1 {
            continue;
        }
        let d = field.derivative(&fp);
        if field.gcd(&fp, &d).len() != 1 {
            continue;
        }
        let facs = field.berlekamp(&field.monic(&fp));
        let sums = subset_degree_sums(&facs);
        allowed = allowed.intersection(&sums).copied().collect();
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((field, facs));
        }
        tried += 1;
        if tried >= PRIME_CANDIDATES || allowed.len() <= 2 {
            break;
        }
    }
    let (field, factors) = best?;
    let irreducible_by_degrees = allowed.iter().all(|&d| d == 0 || d == n);
    Some(PrimeChoice {
        field,
        factors,
        allowed_degrees: allowed,
        irreducible_by_degrees,
    })
}

fn subset_degree_sums(facs: &[ModPoly]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for g in facs {
        let d = g.len() - 1;
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Polynomials with coefficients reduced into `[0, m)`.
fn reduce_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric residues in `(-m/2, m/2]`.
fn symmetric_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let (q, r) = a.pseudo_divrem(b).expect("nonzero divisor");
    (reduce_mod(&q, m), reduce_mod(&r, m))
}

fn lift_to_int(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` mod `m` to the same mod `m^2`.
/// `g` and `h` are monic.
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = reduce_mod(&(f - &(g * h)), &m2);
    let (q, r) = divrem_monic_mod(&(s * &e), h, &m2);
    let g2 = reduce_mod(&(&(g + &(t * &e)) + &(&q * g)), &m2);
    let h2 = reduce_mod(&(h + &r), &m2);
    let b = reduce_mod(&(&(&(s * &g2) + &(t * &h2)) - &IntPoly::one()), &m2);
    let (c, d) = divrem_monic_mod(&(s * &b), &h2, &m2);
    let s2 = reduce_mod(&(s - &d), &m2);
    let t2 = reduce_mod(&(&(t - &(t * &b)) - &(&c * &g2)), &m2);
    (g2, h2, s2, t2)
}

struct Lifted {
    modulus: BigInt,
    factors: Vec<IntPoly>,
}

/// Lifts the monic modular factorization of `lc^-1 f` to a modulus exceeding
/// twice the factor coefficient bound times the leading coefficient.
fn hensel_lift(f: &IntPoly, field: &Field, factors: &[ModPoly]) -> Lifted {
    let n = f.deg();
    let lc = f.leading_coeff().expect("nonzero").clone();
    // Mignotte-style: every factor of f has coefficients below 2^n ||f||_2.
    let norm = f.norm_sq().sqrt() + BigInt::one();
    let bound: BigInt = (BigInt::one() << n) * norm * lc.abs() * 2;
    let p = BigInt::from(field.p);
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lc_inv = lc
        .extended_gcd(&modulus)
        .x
        .mod_floor(&modulus);
    let mut remaining = reduce_mod(&f.scale(&lc_inv), &modulus);
    let mut out = Vec::with_capacity(factors.len());
    for (i, g0) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(remaining.clone());
            break;
        }
        let h0 = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, g| field.poly_mul(&acc, g));
        let (_, s0, t0) = field.xgcd(g0, &h0);
        let (mut g, mut h, mut s, mut t) =
            (lift_to_int(g0), lift_to_int(&h0), lift_to_int(&s0), lift_to_int(&t0));
        let mut m = p.clone();
        while m < modulus {
            let target = reduce_mod(&remaining, &(&m * &m));
            (g, h, s, t) = hensel_step(&target, &g, &h, &s, &t, &m);
            m = &m * &m;
        }
        let g = reduce_mod(&g, &modulus);
        let h = reduce_mod(&h, &modulus);
        out.push(g);
        remaining = h;
    }
    Lifted {
        modulus,
        factors: out,
    }
}

/// Combines lifted modular factors into true factors by subset search.
fn recombine(f: &IntPoly, lifted: Lifted, allowed: &BTreeSet<usize>) -> Vec<IntPoly> {
    let m = lifted.modulus;
    let mut remaining = lifted.factors;
    let mut f = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let lc = f.leading_coeff().expect("nonzero").clone();
        let mut hit = None;
        for subset in (0..remaining.len()).combinations(size) {
            let deg: usize = subset.iter().map(|&i| remaining[i].deg()).sum();
            if !allowed.contains(&deg) {
                continue;
            }
            // Cheap constant-term test before forming the product.
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * remaining[i].coeff(0)).mod_floor(&m));
            let c0 = sym(&c0, &m);
            if c0.is_zero() || !(lc.clone() * f.coeff(0)).is_multiple_of(&c0) {
                continue;
            }
            let prod = subset.iter().fold(IntPoly::constant(lc.clone()), |acc, &i| {
                reduce_mod(&(&acc * &remaining[i]), &m)
            });
            let cand = symmetric_mod(&prod, &m).normalized();
            if let Some(q) = f.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q.normalized();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if f.deg() > 0 {
        found.push(f);
    }
    found
}

fn sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if r > (m >> 1) {
        r - m
    } else {
        r
    }
}

/// Factorization by Kronecker's interpolation method. Exponential; restricted to
/// degree at most 8 and intended as an independent check of [`factor`].
pub fn kronecker_factor_oracle(p: &IntPoly) -> Result<Factorization, FactorError> {
    let n = p.degree().ok_or(FactorError::ZeroPolynomial)?;
    if n > 8 {
        return Err(FactorError::DegreeTooLarge(n));
    }
    let content = signed_content(p);
    let mut stack = vec![p.normalized()];
    let mut irreducibles: Vec<IntPoly> = Vec::new();
    while let Some(f) = stack.pop() {
        if f.deg() == 0 {
            continue;
        }
        match kronecker_split(&f) {
            Some(g) => {
                let q = f.div_exact(&g).expect("found factor divides").normalized();
                stack.push(g);
                stack.push(q);
            }
            None => irreducibles.push(f),
        }
    }
    irreducibles.sort();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for f in irreducibles {
        match factors.last_mut() {
            Some((g, m)) if *g == f => *m += 1,
            _ => factors.push((f, 1)),
        }
    }
    Ok(Factorization::finish(content, factors))
}

/// A nontrivial factor of degree at most `deg f / 2`, if any.
fn kronecker_split(f: &IntPoly) -> Option<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return None;
    }
    // Integer roots first; they also make value-at-point zero, which the
    // divisor search cannot use.
    let mut values = Vec::new();
    for a in -16i64..=16 {
        let v = f.eval(&BigInt::from(a));
        if v.is_zero() {
            return Some(IntPoly::from_coeffs(&[-a, 1]));
        }
        if let Some(u) = v.abs().to_u64() {
            values.push((a, u));
        }
    }
    let mut scored: Vec<(usize, i64, u64)> = values
        .iter()
        .map(|&(a, u)| (divisors(u).len(), a, u))
        .collect();
    scored.sort();
    for deg in 1..=n / 2 {
        let pts: Vec<(i64, Vec<i64>)> = scored
            .iter()
            .take(deg + 1)
            .enumerate()
            .map(|(idx, &(_, a, u))| {
                let ds = divisors(u);
                let mut vals: Vec<i64> = ds.iter().map(|&d| d as i64).collect();
                // Fix the sign at the first point: g and -g are the same factor.
                if idx > 0 {
                    vals.extend(ds.iter().map(|&d| -(d as i64)));
                }
                (a, vals)
            })
            .collect();
        let xs: Vec<i64> = pts.iter().map(|(a, _)| *a).collect();
        for choice in pts.iter().map(|(_, v)| v.iter()).multi_cartesian_product() {
            let ys: Vec<i64> = choice.into_iter().copied().collect();
            let Some(g) = interpolate(&xs, &ys) else {
                continue;
            };
            if g.deg() >= 1 && g.deg() <= n / 2 && f.div_exact(&g).is_some() {
                return Some(g.normalized());
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Lagrange interpolation; `None` unless the result has integer coefficients.
fn interpolate(xs: &[i64], ys: &[i64]) -> Option<IntPoly> {
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); xs.len()];
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis: Vec<BigRational> = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.into());
            }
            basis = next;
            denom *= BigInt::from(xi - xj);
        }
        let scale = BigRational::new(yi.into(), denom);
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(IntPoly::new(coeffs))
}
