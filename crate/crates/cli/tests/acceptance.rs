//! End-to-end acceptance run. One PASS/FAIL line per criterion; exits nonzero on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use salemrel_cli::run;
use salemrel_core::cyclo::{bs_candidates, cyclotomic, gn_progressions, seq_poly, SalemSeq};
use salemrel_core::factor::{factor, is_irreducible, kronecker_factor_oracle};
use salemrel_core::poly::{lemma4_lift, norm_form, trace_lift, trace_project};
use salemrel_core::realroots::{count_roots, lemma3_window1, lemma3_window2};
use salemrel_core::relations::{find_relations, min_length_scan, Status};
use salemrel_core::salem::{
    build_salem_from_trace_poly, family_degree_shift, lemma4_enum, salem_check, trace0_salem,
    Trace0Source,
};
use salemrel_core::{parse_poly, Bound, IntPoly, SalemCertificate};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn p(s: &str) -> IntPoly {
    parse_poly(s).unwrap()
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:.2?}, limit {limit:?}");
    Ok(format!("{t:.2?}"))
}

fn factor_set(f: &IntPoly) -> BTreeSet<String> {
    factor(f).unwrap().factors.iter().map(|(q, _)| q.to_string()).collect()
}

fn strings(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

const DEG8: &str = "x^8-2x^7+x^6-2x^5+x^4-2x^3+x^2-2x+1";
const DEG12: &str = "x^12-4x^10-6x^9-2x^8+4x^7+7x^6+4x^5-2x^4-6x^3-4x^2+1";
const DEG20: &str = "x^20-5x^19+11x^18-19x^17+26x^16-29x^15+27x^14-19x^13+8x^12+x^11-5x^10+x^9+8x^8-19x^7+27x^6-29x^5+26x^4-19x^3+11x^2-5x+1";

fn sextics() -> Outcome {
    let start = Instant::now();
    let out = run(["salemrel", "enum", "--deg6-trace0", "--json"], &mut std::io::empty());
    let elapsed = within(start, Duration::from_secs(1))?;
    ensure!(out.code == 0, "exit {}: {}", out.code, out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;

    let pairs: Vec<(i64, i64)> = serde_json::from_value(v["result"]["pairs"].clone()).map_err(|e| e.to_string())?;
    ensure!(
        pairs == [(4, -1), (4, -2), (4, -3), (5, -3), (5, -4), (6, -5), (7, -7)],
        "pairs {pairs:?}"
    );
    let discarded: Vec<&str> = v["result"]["discarded"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["text"].as_str().unwrap())
        .collect();
    ensure!(discarded == ["x^3-4x-3", "x^3-5x-4", "x^3-6x-5"], "discarded {discarded:?}");

    let expected = [
        "x^6-x^4-x^3-x^2+1",
        "x^6-x^4-2x^3-x^2+1",
        "x^6-2x^4-3x^3-2x^2+1",
        "x^6-4x^4-7x^3-4x^2+1",
    ];
    let certs = v["certificates"].as_array().unwrap();
    ensure!(certs.len() == 4, "{} certificates", certs.len());
    for (c, want) in certs.iter().zip(expected) {
        let coeffs: Vec<String> = serde_json::from_value(c["minpoly"].clone()).unwrap();
        let got = IntPoly::new(coeffs.iter().map(|s| s.parse::<BigInt>().unwrap()).collect());
        ensure!(got == p(want), "got {got}, want {want}");
        ensure!(c["trace"] == "0", "trace {}", c["trace"]);
    }
    Ok(elapsed)
}

fn lemma4_counts() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for k in 2..=5 {
        let e = lemma4_enum(k).map_err(|e| format!("{e:?}"))?;
        counts.push(e.salem.len());
        let find = |h: &str| e.salem.iter().find(|s| s.h == p(h)).map(|s| s.certificate.minpoly.clone());
        if k == 2 {
            ensure!(find("x^2+4x+1") == Some(p(DEG8)), "x^2+4x+1 does not give the degree-8 polynomial");
        }
        if k == 5 {
            ensure!(
                find("x^5+9x^4+22x^3+16x^2-x-1") == Some(p(DEG20)),
                "quintic does not give the degree-20 polynomial"
            );
        }
    }
    ensure!(counts == [15, 30, 20, 4], "counts {counts:?}");
    Ok(format!("counts {counts:?}, {}", within(start, Duration::from_secs(300))?))
}

fn cyclotomic_machinery() -> Outcome {
    let start = Instant::now();
    let orders: [&[u64]; 3] = [&[1, 2, 8, 12, 18, 30], &[1, 2, 3, 6, 12], &[1, 2, 3, 4, 6, 10, 18]];
    let degrees: [&[(u64, u64)]; 3] = [
        &[(2, 1), (8, 2), (12, 1), (18, 17), (30, 24)],
        &[(2, 1), (3, 2), (6, 3), (12, 4)],
        &[(2, 1), (3, 1), (4, 3), (6, 4), (10, 5), (18, 6)],
    ];
    for family in 1..=3u8 {
        let i = family as usize - 1;
        let seq = SalemSeq::family(family).unwrap();
        let got: Vec<u64> = bs_candidates(&seq).orders.into_iter().collect();
        ensure!(got == orders[i], "family {family}: orders {got:?}");
        let prog = gn_progressions(&seq).map_err(|e| format!("{e:?}"))?;
        let shifted = prog.shifted(family_degree_shift(family));
        ensure!(shifted == degrees[i], "family {family}: degree progressions {shifted:?}");
        for n in 2..=200 {
            let g = seq_poly(&seq, n).map_err(|e| format!("{e:?}"))?;
            for e in &prog.entries {
                let hit = !g.gcd(&cyclotomic(e.order)).is_constant();
                ensure!(hit == e.contains(n), "family {family}, n = {n}, Phi_{}", e.order);
            }
        }
    }
    within(start, Duration::from_secs(120))
}

fn verified_trace_zero(c: &SalemCertificate, d: usize) -> bool {
    let f = &c.minpoly;
    let g = trace_project(f).ok();
    c.degree == d
        && f.deg() == d
        && c.trace.is_zero()
        && f.coeff(d - 1).is_zero()
        && g.as_ref().is_some_and(|g| {
            count_roots(g, &Bound::int(2), &Bound::PosInf) == Ok(1)
                && count_roots(g, &Bound::int(-2), &Bound::int(2)) == Ok(d / 2 - 1)
        })
        && is_irreducible(f)
}

fn trace_zero_all_degrees() -> Outcome {
    let start = Instant::now();
    for d in (6..=100).step_by(2) {
        let c = trace0_salem(d).map_err(|e| format!("d = {d}: {e:?}"))?;
        ensure!(verified_trace_zero(&c.certificate, d), "d = {d}: certificate does not verify");
    }
    let d10 = trace0_salem(10).unwrap();
    ensure!(
        d10.source == Trace0Source::Family(2) && d10.attempts.len() == 2,
        "d = 10 via {:?}",
        d10.source
    );
    let d26 = trace0_salem(26).unwrap();
    ensure!(
        d26.source == Trace0Source::Family(3) && d26.attempts.len() == 3,
        "d = 26 via {:?}",
        d26.source
    );
    within(start, Duration::from_secs(120))
}

fn norm_form_constructions() -> Outcome {
    let (base_p, base_q) = (p("x^3-5x-3"), p("x+2"));
    let g = norm_form(&base_p, &base_q, &BigInt::from(2));
    let c = build_salem_from_trace_poly(&g).map_err(|e| format!("m = 2: {e}"))?;
    ensure!(c.minpoly == p(DEG12), "degree-12 minpoly {}", c.minpoly);
    let a12 = c.alpha_f64();
    ensure!((a12 - 2.502568).abs() < 1e-6, "alpha {a12}");

    for (m, parts) in [(3, ["x^2-3", "x^4-7x^2-6x+1"]), (5, ["x^2+x-1", "x^4-x^3-8x^2+x+11"])] {
        let g = norm_form(&base_p, &base_q, &BigInt::from(m));
        let got = factor_set(&g);
        ensure!(got == strings(&parts), "m = {m}: {got:?}");
    }
    let lift = lemma4_lift(&p("x^2+4x+2")).unwrap();
    ensure!(lift == p("x^8-2x^7+x^6-2x^5+2x^4-2x^3+x^2-2x+1"), "lift {lift}");
    let got = factor_set(&lift);
    ensure!(got == strings(&["x^4+1", "x^4-2x^3+x^2-2x+1"]), "lift factors {got:?}");

    let c8 = salem_check(&p(DEG8)).map_err(|e| e.to_string())?;
    let a8 = c8.alpha_f64();
    ensure!((a8 - 1.994004).abs() < 1e-6, "alpha {a8}");
    Ok(format!("alpha {a12:.9}, {a8:.9}"))
}

fn relations() -> Outcome {
    let c8 = salem_check(&p(DEG8)).map_err(|e| e.to_string())?;
    let r8 = find_relations(&c8, 8, 128).map_err(|e| format!("{e:?}"))?;
    ensure!(
        r8.iter().any(|r| r.nontrivial && r.reduced == [1, -1, -1, 1] && r.status == Status::CertifiedPairsum),
        "degree 8: {:?}",
        r8.iter().map(|r| (&r.reduced, r.status)).collect::<Vec<_>>()
    );
    let c12 = salem_check(&p(DEG12)).map_err(|e| e.to_string())?;
    let r12 = find_relations(&c12, 6, 128).map_err(|e| format!("{e:?}"))?;
    ensure!(
        r12.iter().any(|r| r.vector.length == 6 && r.status == Status::CertifiedQuadsplit),
        "degree 12: {:?}",
        r12.iter().map(|r| (&r.reduced, r.status)).collect::<Vec<_>>()
    );
    for c in [&c8, &c12] {
        ensure!(min_length_scan(c, 6) == Ok(true), "min_length_scan false for {}", c.minpoly);
    }
    for f in ["x^6-x^4-x^3-x^2+1", "x^6-x^4-2x^3-x^2+1", "x^6-2x^4-3x^3-2x^2+1", "x^6-4x^4-7x^3-4x^2+1"] {
        let c = salem_check(&p(f)).map_err(|e| e.to_string())?;
        let r = find_relations(&c, 12, 128).map_err(|e| format!("{e:?}"))?;
        ensure!(
            r.iter().all(|r| !r.nontrivial && r.status == Status::CertifiedTrace),
            "{f}: nontrivial relation"
        );
    }
    Ok(format!("{} + {} reports", r8.len(), r12.len()))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut n = 0;
    while n < 500 {
        let d = rng.gen_range(1..=6);
        let f = common::rand_poly(&mut rng, d, 6);
        // Multiply pairs often enough to exercise recombination.
        let f = if rng.gen_bool(0.5) && d <= 3 { &f * &common::rand_poly(&mut rng, 6 - d, 4) } else { f };
        let fast = factor(&f).map_err(|e| format!("{e:?}"))?;
        let slow = kronecker_factor_oracle(&f).map_err(|e| format!("{e:?}"))?;
        ensure!(fast == slow, "factor disagrees on {f}");
        n += 1;
    }
    ensure!(factor(&p("x^4+1")).unwrap().is_irreducible(), "x^4+1 reported reducible");

    let mut n = 0;
    while n < 500 {
        let d = rng.gen_range(1..=8);
        let f = common::rand_poly(&mut rng, d, 12);
        let lo = BigRational::new(rng.gen_range(-40..=40).into(), rng.gen_range(1..=8).into());
        let hi = &lo + BigRational::new(rng.gen_range(1..=60).into(), rng.gen_range(1..=8).into());
        let Some(want) = common::float_real_root_count(&f, &lo, &hi) else {
            continue;
        };
        let got = count_roots(&f, &Bound::At(lo.clone()), &Bound::At(hi.clone()));
        ensure!(got == Ok(want), "Sturm count on {f} over ({lo}, {hi}): {got:?} vs {want}");
        n += 1;
    }

    for a in -15..=15i64 {
        for b in -15..=15i64 {
            let cubic = IntPoly::from_coeffs(&[b, -a, 0, 1]);
            let sqf = cubic.squarefree_part().deg() == 3;
            let inside = count_roots(&cubic, &Bound::int(-2), &Bound::int(2)).ok();
            let above = count_roots(&cubic, &Bound::int(2), &Bound::PosInf).ok();
            ensure!(lemma3_window1(a, b) == (inside == Some(3) && sqf), "window 1 at ({a}, {b})");
            ensure!(
                lemma3_window2(a, b) == (inside == Some(2) && above == Some(1) && sqf),
                "window 2 at ({a}, {b})"
            );
        }
    }

    for _ in 0..1000 {
        let s = rng.gen_range(1..=8);
        let mut c: Vec<i64> = (0..s).map(|_| rng.gen_range(-20..=20)).collect();
        c.push(1);
        let g = IntPoly::from_coeffs(&c);
        let back = trace_lift(&g).and_then(|f| trace_project(&f));
        ensure!(back.as_ref().ok() == Some(&g), "round trip fails on {g}");
    }

    for n in 1..=60u64 {
        let prod = (1..=n).filter(|d| n % d == 0).fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = BigInt::from(-1);
        c[n as usize] = BigInt::one();
        ensure!(prod == IntPoly::new(c), "product of Phi_d for d | {n}");
    }
    Ok("all suites".into())
}

fn quartic_impossibility() -> Outcome {
    for a in -50..=50 {
        let f = IntPoly::from_coeffs(&[1, 0, a, 0, 1]);
        ensure!(salem_check(&f).is_err(), "x^4+{a}x^2+1 accepted");
    }
    Ok("101 quartics rejected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 trace-zero sextics", sextics),
        ("2 lemma4 counts", lemma4_counts),
        ("3 cyclotomic machinery", cyclotomic_machinery),
        ("4 trace zero in degrees 6..100", trace_zero_all_degrees),
        ("5 norm-form constructions", norm_form_constructions),
        ("6 relations", relations),
        ("7 property suites", property_suites),
        ("8 no trace-zero quartics", quartic_impossibility),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
