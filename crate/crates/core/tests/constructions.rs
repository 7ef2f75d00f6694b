//! Salem constructions, the cyclotomic sweeps behind them, and their relations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use salemrel_core::cyclo::{bs_candidates, cyclotomic, cyclotomic_part, gn_progressions, seq_poly, SalemSeq};
use salemrel_core::factor::{factor, is_irreducible};
use salemrel_core::poly::{lemma4_lift, norm_form, quadratic_pullback, trace_lift};
use salemrel_core::realroots::count_roots;
use salemrel_core::relations::{
    alpha_screen, certify, find_relations, min_length_scan, pair_reduce, Evidence, Status,
};
use salemrel_core::salem::{
    build_salem_from_trace_poly, enum_deg6_trace0, family_degree_shift, lemma4_enum,
    lemma4_root_conditions, lemma4_symmetric_bound, salem_check, trace, trace0_salem, Rejection,
    Trace0Source,
};
use salemrel_core::{parse_poly, Bound, IntPoly, SalemCertificate};

fn p(s: &str) -> IntPoly {
    parse_poly(s).unwrap()
}

fn check_invariants(c: &SalemCertificate) {
    assert!(is_irreducible(&c.minpoly));
    assert!(c.minpoly.is_reciprocal());
    assert_eq!(trace(&c.minpoly), trace(&c.trace_poly));
    assert_eq!(trace_lift(&c.trace_poly).unwrap(), c.minpoly);
    let two = BigRational::from_integer(2.into());
    assert!(c.beta_boxes[0].is_above(&two));
    for b in &c.beta_boxes[1..] {
        assert!(b.lo > -two.clone() && b.hi < two);
    }
    for w in c.beta_boxes.windows(2) {
        assert!(w[0].lo > w[1].hi, "beta boxes descending and disjoint");
    }
}

fn degree8() -> SalemCertificate {
    salem_check(&p("x^8-2x^7+x^6-2x^5+x^4-2x^3+x^2-2x+1")).unwrap()
}

fn degree12() -> SalemCertificate {
    let g = norm_form(&p("x^3-5x-3"), &p("x+2"), &BigInt::from(2));
    build_salem_from_trace_poly(&g).unwrap()
}

#[test]
fn sextic_trace_zero_enumeration() {
    let e = enum_deg6_trace0();
    assert_eq!(
        e.pairs,
        vec![(4, -1), (4, -2), (4, -3), (5, -3), (5, -4), (6, -5), (7, -7)]
    );
    let discarded: Vec<String> = e.discarded.iter().map(|d| d.to_string()).collect();
    assert_eq!(discarded, ["x^3-4x-3", "x^3-5x-4", "x^3-6x-5"]);
    let minpolys: Vec<String> = e.certificates.iter().map(|c| c.minpoly.to_string()).collect();
    assert_eq!(
        minpolys,
        [
            "x^6-x^4-x^3-x^2+1",
            "x^6-x^4-2x^3-x^2+1",
            "x^6-2x^4-3x^3-2x^2+1",
            "x^6-4x^4-7x^3-4x^2+1"
        ]
    );
    for c in &e.certificates {
        assert!(c.trace.is_zero());
        check_invariants(c);
    }
}

#[test]
fn no_trace_zero_quartic_salem() {
    for a in -50..=50 {
        let f = IntPoly::from_coeffs(&[1, 0, a, 0, 1]);
        assert!(salem_check(&f).is_err(), "a = {a}");
    }
    // Every trace-zero quartic reciprocal polynomial is the lift of some x^2 + c.
    for c in -50..=50 {
        let f = trace_lift(&IntPoly::from_coeffs(&[c, 0, 1])).unwrap();
        assert!(salem_check(&f).is_err(), "c = {c}");
    }
}

/// All monic `h` inside the symmetric-function box, filtered by the root conditions.
fn lemma4_box_sweep(k: usize) -> Vec<IntPoly> {
    let bounds: Vec<i64> = (1..=k)
        .map(|i| lemma4_symmetric_bound(k, i).try_into().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; k + 1];
    coeffs[k] = 1;
    fn rec(i: usize, k: usize, bounds: &[i64], coeffs: &mut Vec<i64>, out: &mut Vec<IntPoly>) {
        if i == k {
            let h = IntPoly::from_coeffs(coeffs);
            if lemma4_root_conditions(&h) {
                out.push(h);
            }
            return;
        }
        // coeffs[k - 1 - i] = (-1)^(i+1) e_(i+1); the box is symmetric.
        let b = bounds[i];
        for c in -b..=b {
            coeffs[k - 1 - i] = c;
            rec(i + 1, k, bounds, coeffs, out);
        }
    }
    rec(0, k, &bounds, &mut coeffs, &mut out);
    out.sort();
    out
}

#[test]
fn lemma4_pruned_search_matches_box_sweep() {
    for k in 2..=3 {
        let e = lemma4_enum(k).unwrap();
        assert_eq!(e.satisfying, lemma4_box_sweep(k), "k = {k}");
    }
}

#[test]
fn lemma4_counts_small_k() {
    for (k, want) in [(2, 15), (3, 30), (4, 20)] {
        let e = lemma4_enum(k).unwrap();
        assert_eq!(e.salem.len(), want, "k = {k}");
        for s in &e.salem {
            assert!(s.pair_sums_verified);
            assert_eq!(s.certificate.trace_poly, quadratic_pullback(&s.h));
            assert_eq!(s.certificate.degree, 4 * k);
            check_invariants(&s.certificate);
        }
        // Satisfying but not Salem means the lift factors.
        for h in &e.satisfying {
            let salem = e.salem.iter().any(|s| &s.h == h);
            assert_eq!(is_irreducible(&lemma4_lift(h).unwrap()), salem, "h = {h}");
        }
    }
    let e = lemma4_enum(2).unwrap();
    let hit = e.salem.iter().find(|s| s.h == p("x^2+4x+1")).unwrap();
    assert_eq!(
        hit.certificate.minpoly.to_string(),
        "x^8-2x^7+x^6-2x^5+x^4-2x^3+x^2-2x+1"
    );
    assert!(e.satisfying.contains(&p("x^2+4x+2")));
    assert!(!e.salem.iter().any(|s| s.h == p("x^2+4x+2")));
}

#[test]
fn norm_form_constructions() {
    let c = degree12();
    assert_eq!(
        c.minpoly.to_string(),
        "x^12-4x^10-6x^9-2x^8+4x^7+7x^6+4x^5-2x^4-6x^3-4x^2+1"
    );
    assert_eq!(c.trace_poly.to_string(), "x^6-10x^4-6x^3+23x^2+22x+1");
    assert!((c.alpha_f64() - 2.502568).abs() < 1e-6);
    check_invariants(&c);

    let base = (p("x^3-5x-3"), p("x+2"));
    for (m, g_text, parts) in [
        (3, "x^6-10x^4-6x^3+22x^2+18x-3", ["x^2-3", "x^4-7x^2-6x+1"]),
        (5, "x^6-10x^4-6x^3+20x^2+10x-11", ["x^2+x-1", "x^4-x^3-8x^2+x+11"]),
    ] {
        let g = norm_form(&base.0, &base.1, &BigInt::from(m));
        assert_eq!(g.to_string(), g_text);
        assert_eq!(count_roots(&g, &Bound::int(-2), &Bound::int(2)), Ok(5));
        assert_eq!(count_roots(&g, &Bound::int(2), &Bound::PosInf), Ok(1));
        assert_eq!(build_salem_from_trace_poly(&g), Err(Rejection::Reducible));
        let f = factor(&g).unwrap();
        let got: BTreeSet<String> = f.factors.iter().map(|(q, _)| q.to_string()).collect();
        assert_eq!(got, parts.iter().map(|s| s.to_string()).collect());
    }

    let f = lemma4_lift(&p("x^2+4x+2")).unwrap();
    assert_eq!(f.to_string(), "x^8-2x^7+x^6-2x^5+2x^4-2x^3+x^2-2x+1");
    let got: BTreeSet<String> = factor(&f).unwrap().factors.iter().map(|(q, _)| q.to_string()).collect();
    assert_eq!(got, ["x^4+1", "x^4-2x^3+x^2-2x+1"].map(String::from).into());
    assert_eq!(cyclotomic_part(&f).iter().map(|h| (h.order, h.multiplicity)).collect::<Vec<_>>(), [(8, 1)]);

    let c8 = degree8();
    assert!((c8.alpha_f64() - 1.994004).abs() < 1e-6);
    assert_eq!(c8.trace, BigInt::from(2));
}

#[test]
fn family_candidates_and_progressions() {
    let expected_orders: [&[u64]; 3] = [&[1, 2, 8, 12, 18, 30], &[1, 2, 3, 6, 12], &[1, 2, 3, 4, 6, 10, 18]];
    let expected_d: [&[(u64, u64)]; 3] = [
        &[(2, 1), (8, 2), (12, 1), (18, 17), (30, 24)],
        &[(2, 1), (3, 2), (6, 3), (12, 4)],
        &[(2, 1), (3, 1), (4, 3), (6, 4), (10, 5), (18, 6)],
    ];
    for family in 1..=3u8 {
        let seq = SalemSeq::family(family).unwrap();
        let cands = bs_candidates(&seq);
        let orders: Vec<u64> = cands.orders.iter().copied().collect();
        assert_eq!(orders, expected_orders[family as usize - 1]);
        let prog = gn_progressions(&seq).unwrap();
        let shift = family_degree_shift(family);
        assert_eq!(prog.shifted(shift), expected_d[family as usize - 1]);
        for e in &prog.entries {
            let phi = cyclotomic(e.order);
            for n in 2..=200 {
                let g = seq_poly(&seq, n).unwrap();
                assert_eq!(phi.divides(&g), e.contains(n), "family {family}, Phi_{}, n = {n}", e.order);
            }
        }
    }
}

#[test]
fn candidate_orders_cover_every_cyclotomic_factor() {
    for family in 1..=3u8 {
        let seq = SalemSeq::family(family).unwrap();
        let orders: BTreeSet<u64> = bs_candidates(&seq).orders;
        let prog = gn_progressions(&seq).unwrap();
        for n in 2..=60 {
            let g = seq_poly(&seq, n).unwrap();
            let found = cyclotomic_part(&g);
            for h in &found {
                assert!(orders.contains(&h.order), "family {family}, n = {n}, Phi_{}", h.order);
            }
            assert_eq!(!found.is_empty(), prog.is_bad(n), "family {family}, n = {n}");
        }
    }
}

#[test]
fn good_members_are_salem() {
    // For even degree, a member is Salem exactly when no predicted cyclotomic factor occurs.
    for family in 1..=3u8 {
        let seq = SalemSeq::family(family).unwrap();
        let prog = gn_progressions(&seq).unwrap();
        let shift = family_degree_shift(family);
        for n in 2..=60u64 {
            if (n + shift) % 2 == 1 || n + shift < 4 {
                continue;
            }
            let g = seq_poly(&seq, n).unwrap();
            let salem = salem_check(&g).is_ok();
            assert_eq!(salem, !prog.is_bad(n), "family {family}, n = {n}: {g}");
        }
    }
}

#[test]
fn trace_zero_in_every_even_degree() {
    for d in (6..=60).step_by(2) {
        let c = trace0_salem(d).unwrap();
        assert_eq!(c.certificate.degree, d);
        assert!(c.certificate.trace.is_zero());
        check_invariants(&c.certificate);
    }
    assert_eq!(trace0_salem(6).unwrap().source, Trace0Source::Sextic);
    let d10 = trace0_salem(10).unwrap();
    assert_eq!(d10.source, Trace0Source::Family(2));
    assert_eq!(d10.attempts[0].outcome, Some(Rejection::Reducible));
    let d26 = trace0_salem(26).unwrap();
    assert_eq!(d26.source, Trace0Source::Family(3));
    assert_eq!(d26.attempts.len(), 3);
    assert!(trace0_salem(7).is_err());
    assert!(trace0_salem(4).is_err());
}

#[test]
fn pairsum_relation_on_degree_eight() {
    let c = degree8();
    let reports = find_relations(&c, 8, 128).unwrap();
    assert_eq!(reports.len(), 1);
    let r = &reports[0];
    assert!(r.nontrivial);
    assert_eq!(r.status, Status::CertifiedPairsum);
    assert_eq!(r.vector.length, 8);
    // The partner of b_1 > 2 is the smallest root, so the pattern is (1, -1, -1, 1).
    assert_eq!(r.reduced, vec![1, -1, -1, 1]);
    assert_eq!(pair_reduce(&r.vector.coeffs).unwrap(), r.reduced);
    match &r.evidence {
        Some(Evidence::Pairsum { h, .. }) => assert_eq!(*h, p("x^2+4x+1")),
        other => panic!("unexpected evidence {other:?}"),
    }
    assert!(min_length_scan(&c, 6).unwrap());
    assert!(min_length_scan(&c, 1).unwrap());
}

#[test]
fn quadsplit_relation_on_degree_twelve() {
    let c = degree12();
    let reports = find_relations(&c, 6, 128).unwrap();
    assert!(!reports.is_empty());
    for r in &reports {
        assert_eq!(r.vector.length, 6);
        assert_eq!(r.status, Status::CertifiedQuadsplit);
        assert_eq!(r.reduced.iter().filter(|&&m| m == 1).count(), 3);
        match &r.evidence {
            Some(Evidence::Quadsplit { p: pp, q, m, .. }) => {
                assert_eq!((pp.to_string(), q.to_string(), *m), ("x^3-5x-3".into(), "x+2".into(), 2));
            }
            other => panic!("unexpected evidence {other:?}"),
        }
    }
    assert!(min_length_scan(&c, 6).unwrap());
    assert!(!min_length_scan(&c, 7).unwrap());
}

#[test]
fn sextics_have_only_the_trace_relation() {
    for c in enum_deg6_trace0().certificates {
        let reports = find_relations(&c, 10, 128).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(!reports[0].nontrivial);
        assert_eq!(reports[0].reduced, vec![1, 1, 1]);
        assert_eq!(reports[0].status, Status::CertifiedTrace);
        assert_eq!(certify(&c, &[1, 1, 1]), Status::CertifiedTrace);
    }
}

#[test]
fn alpha_level_screen_finds_only_paired_vectors() {
    let c = degree8();
    let hits = alpha_screen(&c, 8, 128);
    assert!(!hits.is_empty());
    for k in &hits {
        assert!(pair_reduce(k).is_ok(), "{k:?}");
    }
}

#[test]
fn certified_relations_pass_screening_at_any_precision() {
    let c = degree12();
    for bits in [16, 64, 256] {
        let reports = find_relations(&c, 6, bits).unwrap();
        assert_eq!(reports.len(), 2, "precision {bits}");
    }
}
