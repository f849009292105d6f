//! Dense polynomials over a prime field `F_p`, just enough to find roots.

use crate::arith::{inv_mod, mul_mod, pow_mod};

/// Coefficients from the constant term upwards, without trailing zeros.
pub type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn sub(f: &Poly, g: &Poly, p: u64) -> Poly {
    let n = f.len().max(g.len());
    trim((0..n)
        .map(|i| (f.get(i).copied().unwrap_or(0) + p - g.get(i).copied().unwrap_or(0) % p) % p)
        .collect())
}

pub fn mul(f: &Poly, g: &Poly, p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
        }
    }
    trim(out)
}

/// `(q, r)` with `f = q g + r`; `g` nonzero.
pub fn divrem(f: &Poly, g: &Poly, p: u64) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let inv = inv_mod(g[dg], p);
    let mut r = f.clone();
    let mut q = vec![0u64; f.len().saturating_sub(dg)];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = mul_mod(r[dr], inv, p);
        q[dr - dg] = c;
        for (i, &gi) in g.iter().enumerate() {
            let k = dr - dg + i;
            r[k] = (r[k] + p - mul_mod(c, gi, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(f: &Poly, p: u64) -> Poly {
    match f.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = inv_mod(lead, p);
            f.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub fn gcd(f: &Poly, g: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(f.clone()), trim(g.clone()));
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `base^e mod m`.
pub fn powmod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut acc: Poly = divrem(&vec![1], m, p).1;
    let mut b = divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(&mul(&acc, &b, p), m, p).1;
        }
        e >>= 1;
        if e > 0 {
            b = divrem(&mul(&b, &b, p), m, p).1;
        }
    }
    acc
}

pub fn eval(f: &Poly, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Distinct roots of `f` in `F_p`, ascending.
pub fn roots(f: &Poly, p: u64) -> Vec<u64> {
    let f = trim(f.iter().map(|c| c % p).collect());
    if f.is_empty() {
        panic!("roots of the zero polynomial");
    }
    let mut out = if p < 64 {
        (0..p).filter(|&x| eval(&f, x, p) == 0).collect()
    } else {
        // the squarefree product of the linear factors
        let xp = powmod(&vec![0, 1], p, &f, p);
        let split = gcd(&f, &sub(&xp, &vec![0, 1], p), p);
        let mut found = Vec::new();
        split_linear(&split, p, 1, &mut found);
        found
    };
    out.sort_unstable();
    out
}

/// Cantor-Zassenhaus equal-degree splitting into linear factors, with
/// deterministic shifts `x + a`.
fn split_linear(f: &Poly, p: u64, mut a: u64, out: &mut Vec<u64>) {
    match degree(f) {
        None | Some(0) => {}
        Some(1) => out.push((p - mul_mod(f[0], inv_mod(f[1], p), p)) % p),
        Some(n) => loop {
            let h = powmod(&vec![a % p, 1], (p - 1) / 2, f, p);
            let g = gcd(f, &sub(&h, &vec![1], p), p);
            a += 1;
            if let Some(dg) = degree(&g) {
                if dg > 0 && dg < n {
                    split_linear(&g, p, a, out);
                    split_linear(&divrem(f, &g, p).0, p, a, out);
                    return;
                }
            }
        },
    }
}

/// Multiplicity of the root `r` of `f`.
pub fn root_multiplicity(f: &Poly, r: u64, p: u64) -> u32 {
    let lin = vec![(p - r % p) % p, 1];
    let mut g = trim(f.clone());
    let mut m = 0;
    while !g.is_empty() {
        let (q, rem) = divrem(&g, &lin, p);
        if !rem.is_empty() {
            break;
        }
        g = q;
        m += 1;
    }
    m
}

/// Cube roots of `d` modulo `p`.
pub fn cube_roots(d: u64, p: u64) -> Vec<u64> {
    let d = d % p;
    if d == 0 {
        return vec![0];
    }
    if p % 3 == 2 {
        // cubing is a bijection; its inverse is x^((2p-1)/3)
        return vec![pow_mod(d, (2 * p - 1) / 3, p)];
    }
    roots(&vec![(p - d) % p, 0, 0, 1], p)
}
