//! Machine-word number theory: primality, factorization, modular powers
//! and multiplicative orders.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes: all primes `< limit`.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Floor of the `k`-th root of `n`.
pub fn iroot(n: u64, k: u32) -> u64 {
    if n < 2 || k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    // float guess is within one of the answer for u64 inputs
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Effort limits for [`factorize`].
#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    pub trial_bound: u64,
    /// Iteration cap per Pollard rho attempt.
    pub rho_iterations: u64,
    pub rho_attempts: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 22,
            rho_attempts: 16,
        }
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u64, cfg: &FactorConfig) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let push = |q: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(p, _)| *p == q) {
        Some(e) => e.1 += 1,
        None => out.push((q, 1)),
    };
    let mut q = 2u64;
    while q <= cfg.trial_bound && q.saturating_mul(q) <= m {
        while m.is_multiple_of(q) {
            push(q, &mut out);
            m /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime(x) {
            push(x, &mut out);
            continue;
        }
        let f = (0..cfg.rho_attempts)
            .find_map(|c| pollard_brent(x, c as u64 + 1, cfg.rho_iterations))
            .ok_or(Error::FactorizationIncomplete(n))?;
        stack.push(f);
        stack.push(x / f);
    }
    out.sort_unstable();
    Ok(out)
}

fn pollard_brent(n: u64, c: u64, max_iter: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut g, mut q) = (2u64, 2u64, 1u64, 1u64);
    let mut ys = y;
    let mut r = 1u64;
    let mut iters = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..(128.min(r - k)) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += 128;
            iters += 128;
            if iters > max_iter {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Smallest `f >= 1` with `a^f = 1 (mod m)`, for `m` prime and `a` a unit mod `m`.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(m));
    let group = m - 1;
    let mut order = group;
    // m - 1 is tiny in every use here, but factor properly anyway
    let fs = factorize(group.max(1), &FactorConfig::default()).unwrap_or_default();
    for (q, _) in fs {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let brute: Vec<u64> = (0..2000).filter(|&n| n >= 2 && (2..n).all(|q| n % q != 0)).collect();
        let mr: Vec<u64> = (0..2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(brute, mr);
        assert_eq!(primes_below(2000), brute);
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factor_round_trip() {
        let cfg = FactorConfig::default();
        for n in [2u64, 250, 1_000_000_007 * 998_244_353, 600_851_475_143, 1 << 40, 3 * 3 * 3 * 7] {
            let fs = factorize(n, &cfg).unwrap();
            assert!(fs.iter().all(|&(p, _)| is_prime(p)));
            assert_eq!(fs.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        }
    }

    #[test]
    fn factor_effort_bound() {
        let cfg = FactorConfig { trial_bound: 10, rho_iterations: 0, rho_attempts: 1 };
        assert_eq!(
            factorize(1_000_000_007 * 998_244_353, &cfg),
            Err(Error::FactorizationIncomplete(1_000_000_007 * 998_244_353))
        );
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(29, 7), 1);
        assert_eq!(multiplicative_order(19, 5), 2);
        assert_eq!(multiplicative_order(3, 7), 6);
    }

    #[test]
    fn roots() {
        assert_eq!(iroot(26, 3), 2);
        assert_eq!(iroot(27, 3), 3);
        assert_eq!(iroot(u64::MAX, 3), 2_642_245);
        assert_eq!(iroot(128, 7), 2);
    }
}
