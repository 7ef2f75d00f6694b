//! Independent re-derivations run under `--verify`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use salemrel_core::cyclo::{cyclotomic, cyclotomic_part, seq_poly, totient, CyclotomicHit, SalemSeq};
use salemrel_core::factor::{factor, kronecker_factor_oracle};
use salemrel_core::poly::{norm_form, quadratic_pullback, trace_lift, trace_project};
use salemrel_core::realroots::{count_roots, refine_bits};
use salemrel_core::relations::{Evidence, RelationReport, Status};
use salemrel_core::salem::{trace, Rejection};
use salemrel_core::{Bound, IntPoly, ProgressionSet, SalemCertificate, Sign};

type Checks = Vec<(String, bool)>;

fn irreducible_by_oracle(f: &IntPoly) -> (String, bool) {
    if f.deg() <= 8 {
        let ok = kronecker_factor_oracle(f)
            .map(|k| k.is_irreducible())
            .unwrap_or(false);
        ("minimal polynomial irreducible (Kronecker)".into(), ok)
    } else {
        let ok = factor(f).map(|k| k.is_irreducible()).unwrap_or(false);
        ("minimal polynomial irreducible (factor)".into(), ok)
    }
}

pub fn certificate_checks(c: &SalemCertificate) -> Checks {
    let f = &c.minpoly;
    let g = &c.trace_poly;
    let s = c.degree / 2;
    let mut v = vec![
        ("minimal polynomial monic".into(), f.is_monic()),
        ("minimal polynomial reciprocal".into(), f.is_reciprocal()),
        ("trace_lift(trace polynomial) = minimal polynomial".into(), trace_lift(g).ok().as_ref() == Some(f)),
        ("trace(minpoly) = trace(trace polynomial)".into(), trace(f) == trace(g) && trace(f) == c.trace),
        (
            "one trace-polynomial root above 2".into(),
            count_roots(g, &Bound::int(2), &Bound::PosInf) == Ok(1),
        ),
        (
            "remaining roots in (-2, 2)".into(),
            count_roots(g, &Bound::int(-2), &Bound::int(2)) == Ok(s.saturating_sub(1)),
        ),
        ("one beta box per root".into(), c.beta_boxes.len() == s),
    ];
    v.push(irreducible_by_oracle(f));
    let two = BigRational::from_integer(2.into());
    v.push(("beta_1 box above 2".into(), c.beta_boxes.first().is_some_and(|b| b.lo >= two)));
    let one = BigRational::one();
    let alpha_ok = c.alpha.lo > one
        && c.alpha.poly == *f
        && f.sign_at(&c.alpha.lo) != f.sign_at(&c.alpha.hi)
        && f.sign_at(&c.alpha.lo) != Sign::Zero;
    v.push(("alpha box brackets a sign change of f above 1".into(), alpha_ok));
    let a = c.alpha.to_f64();
    let b1 = c.beta_boxes.first().map(|b| refine_bits(b, 60).to_f64()).unwrap_or(f64::NAN);
    v.push(("alpha + 1/alpha ~ beta_1".into(), (a + 1.0 / a - b1).abs() < 1e-9 * b1.abs().max(1.0)));
    v
}

pub fn rejection_checks(f: &IntPoly, r: Rejection) -> Checks {
    let ok = match r {
        Rejection::NotMonic => !f.is_monic(),
        Rejection::OddDegree => f.degree().is_some_and(|d| d % 2 == 1),
        Rejection::DegreeTooSmall => f.degree().is_some_and(|d| d < 4),
        Rejection::NotReciprocal => !f.is_reciprocal(),
        Rejection::Reducible => {
            if f.deg() <= 8 {
                kronecker_factor_oracle(f).map(|k| !k.is_irreducible()).unwrap_or(false)
            } else {
                factor(f).map(|k| !k.is_irreducible()).unwrap_or(false)
            }
        }
        Rejection::RootWindowViolation => match trace_project(f) {
            Ok(g) => {
                let s = g.deg();
                let above = count_roots(&g, &Bound::int(2), &Bound::PosInf);
                let inside = count_roots(&g, &Bound::int(-2), &Bound::int(2));
                !(above == Ok(1) && inside == Ok(s - 1))
            }
            Err(_) => false,
        },
    };
    vec![(format!("rejection reason holds: {r}"), ok)]
}

/// Compares with `(-1)^k x^(2k) h((x+1/x)(1-x-1/x))` at a few rationals.
pub fn lemma4_lift_checks(h: &IntPoly, f: &IntPoly) -> Checks {
    let k = h.deg();
    [(2, 1), (3, 1), (-1, 2), (5, 3), (-7, 4)]
        .iter()
        .map(|&(n, d)| {
            let x = BigRational::new(BigInt::from(n), BigInt::from(d));
            let one = BigRational::one();
            let y = &x + one.clone() / &x;
            let t = &y * (&one - &y);
            let mut val = h.eval_rational(&t) * num_traits::pow(x.clone(), 2 * k);
            if k % 2 == 1 {
                val = -val;
            }
            (format!("lift agrees with direct evaluation at {n}/{d}"), f.eval_rational(&x) == val)
        })
        .collect()
}

pub fn cyclotomic_checks(p: &IntPoly, hits: &[CyclotomicHit]) -> Checks {
    let mut v = Checks::new();
    for h in hits {
        let phi = cyclotomic(h.order);
        let exact = phi.pow(h.multiplicity).divides(p) && !phi.pow(h.multiplicity + 1).divides(p);
        v.push((format!("Phi_{} has multiplicity {}", h.order, h.multiplicity), exact));
    }
    // Brute force over every order whose cyclotomic polynomial could fit.
    let d = p.deg() as u64;
    let listed: BTreeSet<u64> = hits.iter().map(|h| h.order).collect();
    let mut missed = Vec::new();
    let mut l = 1;
    while l <= 2 * d * d + 2 {
        if totient(l) <= d && !listed.contains(&l) && cyclotomic(l).divides(p) {
            missed.push(l);
        }
        l += 1;
    }
    v.push(("no unlisted cyclotomic factor".into(), missed.is_empty()));
    v
}

/// Checks predicted residues against exact division for every index up to `max_n`,
/// and that no other cyclotomic factor appears for small indices.
pub fn progression_checks(seq: &SalemSeq, prog: &ProgressionSet, orders: &BTreeSet<u64>, max_n: u64) -> Checks {
    let mut v = Checks::new();
    let mut mismatches = Vec::new();
    let mut strays = Vec::new();
    for n in 2..=max_n.max(2) {
        let Ok(g) = seq_poly(seq, n) else {
            mismatches.push(n);
            continue;
        };
        for e in &prog.entries {
            if cyclotomic(e.order).divides(&g) != e.contains(n) {
                mismatches.push(n);
            }
        }
        if n <= 60 {
            let found: BTreeSet<u64> = cyclotomic_part(&g).iter().map(|h| h.order).collect();
            if !found.is_subset(orders) {
                strays.push(n);
            }
        }
    }
    v.push(("predicted residues match exact division".into(), mismatches.is_empty()));
    v.push(("every cyclotomic factor is a candidate (n <= 60)".into(), strays.is_empty()));
    v
}

pub fn report_checks(c: &SalemCertificate, r: &RelationReport) -> Checks {
    let label = format!("{:?}", r.reduced);
    match (&r.status, &r.evidence) {
        (Status::CertifiedTrace, _) => vec![(
            format!("{label}: trace 0 and all entries equal"),
            c.trace.is_zero() && r.reduced.windows(2).all(|w| w[0] == w[1]),
        )],
        (Status::CertifiedPairsum, Some(Evidence::Pairsum { h, pairs })) => {
            let identity = quadratic_pullback(h) == c.trace_poly;
            let shape = pairs.iter().all(|&(a, b)| r.reduced[a] == r.reduced[b])
                && pairs.iter().map(|&(a, _)| r.reduced[a]).sum::<i64>() == 0;
            vec![
                (format!("{label}: trace polynomial = (-1)^k h(x(1-x))"), identity),
                (format!("{label}: constant on pairs, pair values sum to 0"), shape),
            ]
        }
        (Status::CertifiedQuadsplit, Some(Evidence::Quadsplit { p, q, m, groups })) => {
            let s = c.degree / 2;
            let identity = norm_form(p, q, &BigInt::from(*m)) == c.trace_poly;
            let subleading = p.deg() == s / 2 && p.coeff(s / 2 - 1).is_zero();
            let shape = groups
                .iter()
                .all(|g| g.windows(2).all(|w| r.reduced[w[0]] == r.reduced[w[1]]));
            vec![
                (format!("{label}: trace polynomial = p^2 - m q^2"), identity),
                (format!("{label}: p has zero subleading coefficient"), subleading),
                (format!("{label}: constant on each conjugate factor"), shape),
            ]
        }
        (Status::NumericOnly, _) => Vec::new(),
        _ => vec![(format!("{label}: evidence matches status"), false)],
    }
}
