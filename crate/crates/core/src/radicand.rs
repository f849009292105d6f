//! Radicand normalization for pure fields `Q(D^(1/p))`.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, FactorConfig};
use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u32; 3] = [3, 5, 7];

/// Dedekind species of a pure cubic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Species {
    /// `d^2 = 1 (mod 9)`
    TypeI,
    TypeII,
}

impl Species {
    pub fn of(d: u64) -> Species {
        if (d % 9) * (d % 9) % 9 == 1 {
            Species::TypeI
        } else {
            Species::TypeII
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Species::TypeI => "I",
            Species::TypeII => "II",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Radicand {
    pub p: u32,
    pub d_raw: u64,
    /// Canonical `p`-th-power-free representative of the field.
    pub d: u64,
    /// `p`-th-power-free part of `d_raw` before choosing among conjugates.
    pub stripped: u64,
    /// Prime factorization of `d`.
    pub factors: Vec<(u64, u32)>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub species: Option<Species>,
}

pub fn check_prime(p: u32) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

fn product(fs: &[(u64, u32)]) -> Option<u64> {
    fs.iter().try_fold(1u64, |acc, &(q, e)| acc.checked_mul(q.checked_pow(e)?))
}

/// Normalize with the default factoring effort.
pub fn normalize(d_raw: u64, p: u32) -> Result<Radicand> {
    normalize_with(d_raw, p, &FactorConfig::default())
}

pub fn normalize_with(d_raw: u64, p: u32, cfg: &FactorConfig) -> Result<Radicand> {
    check_prime(p)?;
    if d_raw < 2 {
        return Err(Error::InvalidInput(format!("radicand {d_raw} must be at least 2")));
    }
    let reduced: Vec<(u64, u32)> = factorize(d_raw, cfg)?
        .into_iter()
        .map(|(q, e)| (q, e % p))
        .filter(|&(_, e)| e > 0)
        .collect();
    if reduced.is_empty() {
        return Err(Error::DegenerateRadicand { d_raw, p });
    }
    let stripped = product(&reduced).expect("divides d_raw");
    let mut best = (stripped, reduced.clone());
    for k in 2..p {
        let conj: Vec<(u64, u32)> = reduced.iter().map(|&(q, e)| (q, e * k % p)).collect();
        if let Some(v) = product(&conj) {
            if v < best.0 {
                best = (v, conj);
            }
        }
    }
    let (d, factors) = best;
    let (a, b, species) = if p == 3 {
        let a: u64 = factors.iter().filter(|f| f.1 == 1).map(|f| f.0).product();
        let b: u64 = factors.iter().filter(|f| f.1 == 2).map(|f| f.0).product();
        (Some(a), Some(b), Some(Species::of(d)))
    } else {
        (None, None, None)
    };
    Ok(Radicand { p, d_raw, d, stripped, factors, a, b, species })
}

impl Radicand {
    /// Whether the given radicand was already the canonical representative.
    pub fn is_canonical(&self) -> bool {
        self.stripped == self.d
    }

    /// `(a, b)` with `d = a b^2`; only for `p = 3`.
    pub fn ab(&self) -> Result<(u64, u64)> {
        match (self.a, self.b) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::InvalidPrime(self.p)),
        }
    }

    pub fn species3(&self) -> Result<Species> {
        self.species.ok_or(Error::InvalidPrime(self.p))
    }

    pub fn prime_divisors(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.0).collect()
    }
}

/// The co-radicand `a^2 b` of a pure cubic radicand `a b^2`.
///
/// Both radicands define the same cubic field. The value returned is the
/// cube-free integer `a^2 b` itself, not its canonical representative
/// (which would just be `d` again).
pub fn conjugate_radicand(r: &Radicand) -> Result<u64> {
    let (a, b) = r.ab()?;
    a.checked_mul(a)
        .and_then(|x| x.checked_mul(b))
        .ok_or_else(|| Error::InvalidInput(format!("co-radicand of {} overflows", r.d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = normalize(250, 3).unwrap();
        assert_eq!((r.d, r.a, r.b, r.species), (2, Some(2), Some(1), Some(Species::TypeII)));
        assert_eq!(normalize(8, 3), Err(Error::DegenerateRadicand { d_raw: 8, p: 3 }));
        let r = normalize(12, 3).unwrap();
        assert_eq!((r.d, r.a, r.b, r.species), (12, Some(3), Some(2), Some(Species::TypeII)));
        let r = normalize(10, 3).unwrap();
        assert_eq!((r.d, r.a, r.b, r.species), (10, Some(10), Some(1), Some(Species::TypeI)));
        assert_eq!(normalize(10, 4), Err(Error::InvalidPrime(4)));
    }

    #[test]
    fn canonical_choice() {
        let r = normalize(18, 3).unwrap();
        assert_eq!(r.d, 12);
        assert!(!r.is_canonical());
        assert_eq!(normalize(4, 3).unwrap().d, 2);
        // 2^3 is the smallest of 2^k mod 7th powers for k = 1..6 except 2 itself
        assert_eq!(normalize(8, 7).unwrap().d, 2);
        assert_eq!(normalize(128, 7), Err(Error::DegenerateRadicand { d_raw: 128, p: 7 }));
    }

    #[test]
    fn conjugates() {
        let c = |d| conjugate_radicand(&normalize(d, 3).unwrap()).unwrap();
        assert_eq!(c(12), 18);
        assert_eq!(c(20), 50);
        assert_eq!(c(2), 4);
        assert!(conjugate_radicand(&normalize(2, 5).unwrap()).is_err());
    }
}
