//! Polynomials over a small prime field, just enough for modular factorization.
//!
//! Elements are `u64` residues in `[0, p)`; polynomials are ascending and trimmed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

pub type ModPoly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    pub fn reduce_big(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    pub fn reduce_poly(&self, f: &IntPoly) -> ModPoly {
        let mut out: ModPoly = f.coeffs().iter().map(|c| self.reduce_big(c)).collect();
        trim(&mut out);
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    #[cfg(test)]
    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> ModPoly {
        let mut out: ModPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut out);
        out
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - db];
        for i in (0..quot.len()).rev() {
            let c = self.mul(rem[i + db], inv);
            quot[i] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    rem[i + j] = self.sub(rem[i + j], self.mul(c, bj));
                }
            }
        }
        rem.truncate(db);
        trim(&mut rem);
        trim(&mut quot);
        (quot, rem)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> ModPoly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.poly_scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> ModPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g` monic.
    pub fn xgcd(&self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = *r0.last().expect("not both zero");
        let inv = self.inv(lc);
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &[u64]) -> ModPoly {
        let mut out: ModPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    /// `base^e mod m`
    pub fn powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> ModPoly {
        let mut acc: ModPoly = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.poly_mul(&acc, &b), m);
            }
            b = self.rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    /// Complete factorization of a monic squarefree polynomial by Berlekamp's algorithm.
    pub fn berlekamp(&self, f: &[u64]) -> Vec<ModPoly> {
        let n = f.len() - 1;
        if n <= 1 {
            return vec![f.to_vec()];
        }
        // Rows of Q: x^(p i) mod f.
        let xp = self.powmod(&[0, 1], self.p, f);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut cur: ModPoly = vec![1];
        for _ in 0..n {
            let mut row = cur.clone();
            row.resize(n, 0);
            rows.push(row);
            cur = self.rem(&self.poly_mul(&cur, &xp), f);
        }
        // Kernel of (Q - I)^T acting on coefficient vectors: v Q = v.
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = self.sub(row[i], 1);
        }
        let basis = self.left_kernel(&rows, n);
        let k = basis.len();
        if k == 1 {
            return vec![f.to_vec()];
        }
        let mut factors: Vec<ModPoly> = vec![f.to_vec()];
        for v in basis.iter().skip(1) {
            if factors.len() == k {
                break;
            }
            let mut v = v.clone();
            trim(&mut v);
            let mut next = Vec::new();
            for g in factors {
                if g.len() <= 2 {
                    next.push(g);
                    continue;
                }
                let mut rest = g.clone();
                for s in 0..self.p {
                    if rest.len() <= 2 {
                        break;
                    }
                    let shifted = self.poly_sub(&v, &[s]);
                    let d = self.gcd(&rest, &shifted);
                    if d.len() > 1 && d.len() < rest.len() {
                        rest = self.divrem(&rest, &d).0;
                        next.push(d);
                    }
                }
                next.push(self.monic(&rest));
            }
            factors = next;
        }
        factors.sort();
        factors
    }

    /// Basis of `{v : v M = 0}` for an `n x n` matrix given by rows.
    fn left_kernel(&self, rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        // Transpose so the problem becomes M^T v = 0, then row-reduce.
        let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..n {
                if i != r && m[i][c] != 0 {
                    let factor = m[i][c];
                    for j in 0..n {
                        let sub = self.mul(factor, m[r][j]);
                        m[i][j] = self.sub(m[i][j], sub);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = self.sub(0, m[row][fc]);
            }
            basis.push(v);
        }
        // Put the constant vector (always in the kernel) first.
        basis.sort_by_key(|v| v.iter().rposition(|&x| x != 0).unwrap_or(0));
        basis
    }
}

pub fn trim(v: &mut ModPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}
