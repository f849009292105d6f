//! Decomposition of rational primes in `Q(zeta_p)`, the conductor of the
//! Kummer extension for `p = 3`, and the septic radicand list.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, multiplicative_order, primes_below, FactorConfig};
use crate::error::{Error, Result};
use crate::radicand::{check_prime, Radicand, Species};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub ell: u64,
    pub p: u32,
    pub e: u32,
    pub f: u32,
    pub g: u32,
    /// `ell = 1 (mod p)`
    pub ishida: bool,
    /// `p = 5` and `ell = -1 (mod 5)`
    pub kobayashi: bool,
    /// `p = 7` and `ell = 2, 4 (mod 7)`
    pub septic_two_split: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conductor {
    pub value: u64,
    pub prime_divisors: Vec<(u64, SplittingReport)>,
}

/// Order of `ell` modulo `p`.
pub fn mult_order(ell: u64, p: u32) -> Result<u32> {
    if ell.is_multiple_of(p as u64) {
        return Err(Error::InvalidInput(format!("{ell} is not a unit modulo {p}")));
    }
    Ok(multiplicative_order(ell % p as u64, p as u64) as u32)
}

pub fn split_in_cyclotomic(ell: u64, p: u32) -> Result<SplittingReport> {
    check_prime(p)?;
    if !is_prime(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    let pm1 = p - 1;
    let (e, f) = if ell == p as u64 { (pm1, 1) } else { (1, mult_order(ell, p)?) };
    let r = ell % p as u64;
    Ok(SplittingReport {
        ell,
        p,
        e,
        f,
        g: pm1 / (e * f),
        ishida: r == 1,
        kobayashi: p == 5 && r == 4,
        septic_two_split: p == 7 && (r == 2 || r == 4),
    })
}

/// Conductor of `Q(zeta_3, D^(1/3)) / Q(zeta_3)`: `ab` for species I, `3ab` otherwise.
pub fn conductor_p3(r: &Radicand) -> Result<Conductor> {
    let (a, b) = r.ab()?;
    let value = match r.species3()? {
        Species::TypeI => a * b,
        Species::TypeII => 3 * a * b,
    };
    let prime_divisors = factorize(value, &FactorConfig::default())?
        .into_iter()
        .map(|(q, _)| split_in_cyclotomic(q, 3).map(|s| (q, s)))
        .collect::<Result<_>>()?;
    Ok(Conductor { value, prime_divisors })
}

/// Primes `ell < limit` with `ell = 2` or `4 (mod 7)`, ascending.
pub fn theorem1_radicands(limit: u64) -> Vec<u64> {
    primes_below(limit).into_iter().filter(|q| matches!(q % 7, 2 | 4)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radicand::normalize;

    #[test]
    fn orders() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(29, 7).unwrap(), 1);
        assert_eq!(mult_order(19, 5).unwrap(), 2);
        assert!(mult_order(14, 7).is_err());
    }

    #[test]
    fn reports() {
        let s = split_in_cyclotomic(2, 7).unwrap();
        assert_eq!((s.e, s.f, s.g, s.septic_two_split), (1, 3, 2, true));
        let s = split_in_cyclotomic(29, 7).unwrap();
        assert_eq!((s.g, s.ishida), (6, true));
        let s = split_in_cyclotomic(19, 5).unwrap();
        assert_eq!((s.g, s.kobayashi), (2, true));
        let s = split_in_cyclotomic(7, 7).unwrap();
        assert_eq!((s.e, s.f, s.g), (6, 1, 1));
    }

    #[test]
    fn conductors() {
        let c = |d| conductor_p3(&normalize(d, 3).unwrap()).unwrap().value;
        assert_eq!(c(10), 10);
        assert_eq!(c(2), 6);
        assert_eq!(c(12), 18);
        let full = conductor_p3(&normalize(10, 3).unwrap()).unwrap();
        assert_eq!(full.prime_divisors.iter().map(|x| x.0).collect::<Vec<_>>(), vec![2, 5]);
        assert!(conductor_p3(&normalize(2, 7).unwrap()).is_err());
    }

    #[test]
    fn septic_list() {
        assert_eq!(
            theorem1_radicands(200),
            vec![2, 11, 23, 37, 53, 67, 79, 107, 109, 137, 149, 151, 163, 179, 191, 193]
        );
        assert_eq!(theorem1_radicands(3), vec![2]);
        assert_eq!(theorem1_radicands(11), vec![2]);
        assert_eq!(theorem1_radicands(100).len(), 7);
    }
}
