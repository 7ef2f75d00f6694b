//! Shared generators and a floating-point root oracle.
#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use salemrel_core::IntPoly;

/// Random polynomial of exact degree `deg` with coefficients in `[-bound, bound]`.
pub fn rand_poly<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-bound..=bound);
    }
    IntPoly::from_coeffs(&c)
}

/// All complex roots by Aberth-Ehrlich iteration.
pub fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let n = c.len() - 1;
    let lc = c[n];
    let c: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Distinct real roots in `(lo, hi)` by floating point, or `None` when a root is too
/// close to an endpoint or too close to the real axis to classify.
pub fn float_real_root_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Option<usize> {
    let sqf = p.squarefree_part();
    if sqf.deg() == 0 {
        return Some(0);
    }
    let (lo, hi) = (lo.to_f64()?, hi.to_f64()?);
    let mut count = 0;
    for r in complex_roots(&sqf) {
        let scale = 1.0 + r.re.abs();
        if r.im.abs() > 1e-4 * scale {
            continue;
        }
        if r.im.abs() > 1e-9 * scale {
            return None;
        }
        if (r.re - lo).abs() < 1e-6 * scale || (r.re - hi).abs() < 1e-6 * scale {
            return None;
        }
        if lo < r.re && r.re < hi {
            count += 1;
        }
    }
    Some(count)
}
