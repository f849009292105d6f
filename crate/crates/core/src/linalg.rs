//! Integer and modular linear algebra for small dimensions, plus
//! floating-point LLL and Fincke-Pohst enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mul_mod};

/// Column-style Hermite normal form.
///
/// `cols` are integer column vectors of length `n` spanning a rank-`n`
/// lattice. Returns the `n` columns of the upper-triangular basis with
/// positive diagonal and `0 <= H[i][j] < H[i][i]` for `j > i`; `None` when
/// the columns do not have full rank.
pub fn hnf_columns(n: usize, cols: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let mut work: Vec<Vec<BigInt>> =
        cols.iter().filter(|c| c.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut h: Vec<Option<Vec<BigInt>>> = vec![None; n];
    for i in (0..n).rev() {
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for c in work.drain(..) {
            if c[i].is_zero() {
                rest.push(c);
                continue;
            }
            pivot = Some(match pivot {
                None => c,
                Some(p) => {
                    let e = p[i].extended_gcd(&c[i]);
                    let g = e.gcd;
                    let (pi, ci) = (&p[i] / &g, &c[i] / &g);
                    let new_p: Vec<BigInt> =
                        p.iter().zip(&c).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let new_c: Vec<BigInt> =
                        p.iter().zip(&c).map(|(x, y)| &ci * x - &pi * y).collect();
                    debug_assert!(new_c[i].is_zero());
                    if new_c.iter().any(|x| !x.is_zero()) {
                        rest.push(new_c);
                    }
                    new_p
                }
            });
        }
        let mut p = pivot?;
        if p[i].is_negative() {
            p.iter_mut().for_each(|x| *x = -&*x);
        }
        h[i] = Some(p);
        work = rest;
    }
    let mut h: Vec<Vec<BigInt>> = h.into_iter().map(Option::unwrap).collect();
    for j in 1..n {
        for i in (0..j).rev() {
            let q = h[j][i].div_floor(&h[i][i]);
            if !q.is_zero() {
                let ci = h[i].clone();
                for (x, y) in h[j].iter_mut().zip(&ci) {
                    *x -= &q * y;
                }
            }
        }
    }
    Some(h)
}

/// Solve `H c = v` for an upper-triangular column basis `H`; `None` if the
/// solution is not integral.
pub fn solve_upper(h: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut r = v.to_vec();
    let mut c = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let (q, rem) = r[i].div_rem(&h[i][i]);
        if !rem.is_zero() {
            return None;
        }
        for k in 0..=i {
            r[k] -= &q * &h[i][k];
        }
        c[i] = q;
    }
    Some(c)
}

/// Elementary divisors of a nonsingular square integer matrix (rows given),
/// in divisibility order, all positive.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // move a smallest nonzero entry to (t, t)
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                diag.push(BigInt::zero());
                break;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let rt = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&rt) {
                        *x -= &q * y;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let mut bad = None;
            'scan: for i in t + 1..n {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                }
                None => {
                    diag.push(a[t][t].abs());
                    break;
                }
            }
        }
    }
    diag
}

/// Determinant of a small square integer matrix (Bareiss).
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Basis of the right kernel of `rows` (each of length `ncols`) over F_p.
pub fn kernel_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let rr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&rr) {
                    *x = (*x + p - mul_mod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Rank over F_p.
pub fn rank_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    // rank of A equals ncols minus the nullity of A
    ncols - kernel_mod(rows, ncols, p).len()
}

/// LLL reduction (delta = 0.99) of real basis vectors. Returns the reduced
/// vectors and the integer transform `T` with `reduced[i] = sum_j T[i][j] basis[j]`.
pub fn lll(basis: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<i64>>) {
    let n = basis.len();
    let mut b: Vec<Vec<f64>> = basis.to_vec();
    let mut t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let gso = |b: &Vec<Vec<f64>>| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / dot(&bs[j], &bs[j]);
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= mu[i][j] * y;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        for j in (0..k).rev() {
            let (_, mu) = gso(&b);
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
                let tj = t[j].clone();
                for (x, y) in t[k].iter_mut().zip(&tj) {
                    *x -= q as i64 * y;
                }
            }
        }
        let (bs, mu) = gso(&b);
        let lhs = dot(&bs[k], &bs[k]);
        let rhs = (0.99 - mu[k][k - 1] * mu[k][k - 1]) * dot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (b, t)
}

/// All nonzero integer vectors `x` with `|sum x_i b_i|^2 <= bound`
/// (Fincke-Pohst). Returns `None` if more than `cap` points qualify.
pub fn short_vectors(basis: &[Vec<f64>], bound: f64, cap: usize) -> Option<Vec<Vec<i64>>> {
    let n = basis.len();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = dot(&basis[i], &basis[j]);
        }
    }
    // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    for i in 0..n {
        for j in i + 1..n {
            let v = q[i][j];
            q[j][i] = v;
            q[i][j] = v / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    enumerate_level(&q, n, n - 1, bound, &mut x, &mut out, cap)?;
    Some(out)
}

fn enumerate_level(
    q: &[Vec<f64>],
    n: usize,
    i: usize,
    remaining: f64,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    cap: usize,
) -> Option<()> {
    let center: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let half = (remaining.max(0.0) / q[i][i]).sqrt();
    let lo = (center - half).ceil() as i64;
    let hi = (center + half).floor() as i64;
    for v in lo..=hi {
        x[i] = v;
        let t = v as f64 - center;
        let rest = remaining - q[i][i] * t * t;
        if rest < 0.0 {
            continue;
        }
        if i == 0 {
            if x.iter().any(|&c| c != 0) {
                out.push(x.clone());
                if out.len() > cap {
                    return None;
                }
            }
        } else {
            enumerate_level(q, n, i - 1, rest, x, out, cap)?;
        }
    }
    x[i] = 0;
    Some(())
}

/// Reduced row-echelon basis of the span of `rows` over F_p.
pub fn span_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let rr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&rr) {
                    *x = (*x + p - mul_mod(f, *y, p)) % p;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}
