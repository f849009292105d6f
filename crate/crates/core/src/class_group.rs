//! Ideal class group of a pure cubic field.
//!
//! Every class contains reduced lattices, and the reduced lattices of one
//! class form a single cycle under the adjacent-minimum step. The group is
//! built one prime at a time: with the subgroup `G` generated by earlier
//! primes fully tabulated (every reduced lattice of every class, mapped to
//! its class), the powers of the next prime `P` are walked until one lands
//! in `G`. The first such exponent `m` is the index of `G` in `<G, P>`, and
//! the cosets `P^i G` for `0 < i < m` are new classes whose cycles are then
//! added to the table.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::primes_below;
use crate::error::{Error, Result};
use crate::field::CubicField;
use crate::ideal::{ideal_mul, FracIdeal};
use crate::linalg::smith_invariants;
use crate::minima::{cycle_of, reduce, Infrastructure};
use crate::polymod::cube_roots;
use crate::primes::{factor_prime, PrimeIdeal};
use crate::radicand::Species;
use crate::units::regulator;

/// Primes used for the analytic estimate of `h`.
const EULER_PRIMES: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassGroupResult {
    pub h: u64,
    pub three_rank: u32,
    /// Elementary divisors `d_1 | d_2 | ...`, all greater than 1.
    pub invariants: Vec<u64>,
    /// Primes whose classes generate the group, with their class orders.
    pub generators: Vec<(PrimeIdeal, u64)>,
    pub minkowski_bound: u64,
    /// Analytic estimate of `h` from a truncated Euler product.
    pub analytic_estimate: f64,
}

/// `ceil((4/π) (2/9) sqrt|D|)`, the Minkowski bound for a complex cubic field.
pub fn minkowski_bound(f: &CubicField) -> u64 {
    let d = f.discriminant.abs().to_f64().unwrap_or(f64::INFINITY);
    (4.0 / std::f64::consts::PI * 2.0 / 9.0 * d.sqrt()).ceil() as u64
}

/// Prime ideals of norm at most the Minkowski bound, inert primes excluded.
pub fn factor_base(f: &CubicField) -> Result<Vec<PrimeIdeal>> {
    let bound = minkowski_bound(f);
    let mut out = Vec::new();
    for ell in primes_below(bound + 1) {
        for p in factor_prime(ell, f)? {
            if p.f < 3 && p.ell.checked_pow(p.f).is_some_and(|n| n <= bound) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Residue of `ζ_L / ζ` at 1 from the Euler product over primes below `EULER_PRIMES`.
fn euler_residue(f: &CubicField) -> f64 {
    let d = f.d.to_u64();
    let mut kappa = 1.0;
    for p in primes_below(EULER_PRIMES) {
        let x = 1.0 / p as f64;
        // (1 - 1/p) / Π_P (1 - 1/N P)
        let factor = if p == 3 {
            match f.species {
                Species::TypeI => 1.0 / (1.0 - x),
                Species::TypeII => 1.0,
            }
        } else {
            let dm = match d {
                Some(d) => d % p,
                None => (&f.d % BigInt::from(p)).to_u64().unwrap_or(0),
            };
            if dm == 0 {
                1.0
            } else if p % 3 == 2 {
                1.0 / (1.0 - x * x)
            } else if cube_roots(dm, p).len() == 3 {
                1.0 / ((1.0 - x) * (1.0 - x))
            } else {
                (1.0 - x) / (1.0 - x * x * x)
            }
        };
        kappa *= factor;
    }
    kappa
}

/// `h ≈ κ sqrt|D| / (2π R)`.
pub fn analytic_class_number(f: &CubicField, reg: f64) -> f64 {
    let d = f.discriminant.abs().to_f64().unwrap_or(f64::INFINITY);
    euler_residue(f) * d.sqrt() / (2.0 * std::f64::consts::PI * reg)
}

pub fn class_group(f: &CubicField) -> Result<ClassGroupResult> {
    let infra = Infrastructure::build(f)?;
    class_group_from(f, &infra, factor_base(f)?)
}

/// Class group generated by `primes`, which must include every prime of
/// norm up to the Minkowski bound (inert primes may be omitted) for the
/// result to be the full group.
pub fn class_group_from(f: &CubicField, infra: &Infrastructure, primes: Vec<PrimeIdeal>) -> Result<ClassGroupResult> {
    let reg = regulator(f, &infra.epsilon);
    let estimate = analytic_class_number(f, reg);
    let ceiling = (8.0 * estimate + 16.0).ceil() as usize;

    let n = primes.len();
    let mut table: HashMap<FracIdeal, usize> = infra.cycle.iter().map(|m| (m.clone(), 0)).collect();
    let mut reps: Vec<FracIdeal> = vec![FracIdeal::unit()];
    let mut exps: Vec<Vec<i64>> = vec![vec![0; n]];
    let mut relations: Vec<Vec<i64>> = Vec::with_capacity(n);
    let mut generators = Vec::new();

    for (k, p) in primes.iter().enumerate() {
        let mut cur = FracIdeal::unit();
        let mut m = 0i64;
        let hit = loop {
            m += 1;
            cur = reduce(f, &ideal_mul(f, &cur, &p.ideal))?.1;
            if let Some(&c) = table.get(&cur) {
                break c;
            }
            if m as usize > ceiling {
                return Err(Error::RelationSearchIncomplete(format!(
                    "power of a prime above {} exceeds the analytic ceiling {ceiling}",
                    p.ell
                )));
            }
        };
        let mut rel: Vec<i64> = exps[hit].iter().map(|e| -e).collect();
        rel[k] += m;
        relations.push(rel);
        if m == 1 {
            continue;
        }
        let old = reps.len();
        let mut layer: Vec<FracIdeal> = reps.clone();
        for i in 1..m {
            let mut next = Vec::with_capacity(old);
            for (c, prev) in layer.iter().enumerate() {
                let start = reduce(f, &ideal_mul(f, prev, &p.ideal))?.1;
                let idx = reps.len();
                for lat in cycle_of(f, &start)? {
                    if table.insert(lat, idx).is_some() {
                        return Err(Error::InternalInconsistency("class cycles overlap".into()));
                    }
                }
                let mut e = exps[c].clone();
                e[k] = i;
                exps.push(e);
                reps.push(start.clone());
                next.push(start);
                if reps.len() > ceiling {
                    return Err(Error::RelationSearchIncomplete(format!(
                        "class count exceeds the analytic ceiling {ceiling}"
                    )));
                }
            }
            layer = next;
        }
        generators.push(k);
    }

    let h = reps.len() as u64;
    let invariants: Vec<u64> = if n == 0 {
        Vec::new()
    } else {
        let big: Vec<Vec<BigInt>> = relations.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        smith_invariants(&big)
            .into_iter()
            .filter_map(|x| x.abs().to_u64())
            .filter(|&x| x > 1)
            .collect()
    };
    if invariants.iter().product::<u64>() != h {
        return Err(Error::InternalInconsistency("relation lattice does not match the class count".into()));
    }
    let three_rank = invariants.iter().filter(|&&x| x % 3 == 0).count() as u32;

    let order_of = |k: usize| -> Result<u64> {
        let mut cur = FracIdeal::unit();
        for o in 1..=h {
            cur = reduce(f, &ideal_mul(f, &cur, &primes[k].ideal))?.1;
            if table.get(&cur) == Some(&0) {
                return Ok(o);
            }
        }
        Err(Error::InternalInconsistency("class order exceeds h".into()))
    };
    let generators = generators
        .into_iter()
        .map(|k| Ok((primes[k].clone(), order_of(k)?)))
        .collect::<Result<Vec<_>>>()?;

    Ok(ClassGroupResult {
        h,
        three_rank,
        invariants,
        generators,
        minkowski_bound: minkowski_bound(f),
        analytic_estimate: estimate,
    })
}

/// A generator of `ideal` when it is principal.
pub fn principal_test(f: &CubicField, infra: &Infrastructure, ideal: &FracIdeal) -> Result<Option<crate::field::FieldElement>> {
    infra.principal_test(f, ideal)
}
