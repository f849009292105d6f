//! Prime ideals of `O_L` above a rational prime.
//!
//! Away from the index `[O_L : Z[θ]]` the Dedekind-Kummer theorem applies to
//! `x^3 - d`. At index divisors the maximal ideals are read off the finite
//! algebra `O_L / ℓ O_L`: its radical is the kernel of a Frobenius power and
//! its idempotent part separates the primes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, FactorConfig};
use crate::error::{Error, Result};
use crate::field::{CubicField, FieldElement};
use crate::ideal::{ideal_mul, ideal_pow, FracIdeal};
use crate::linalg::{kernel_mod, span_mod};
use crate::polymod::{self, Poly};
use crate::radicand::Species;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub ell: u64,
    pub e: u32,
    pub f: u32,
    pub ideal: FracIdeal,
    pub uniformizer_hint: Option<FieldElement>,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.ell.pow(self.f)
    }

    fn sort_key(&self) -> (u32, u32, Vec<BigInt>) {
        (self.f, self.e, self.ideal.hnf.iter().flatten().cloned().collect())
    }
}

/// Rational primes dividing `[O_L : Z[θ]]`, which is `b` or `3b`.
pub fn index_primes(f: &CubicField) -> Vec<u64> {
    let b = f.b.to_u64().expect("b fits in u64");
    let index = match f.species {
        Species::TypeI => 3 * b,
        Species::TypeII => b,
    };
    factorize(index, &FactorConfig::default())
        .expect("index divides the radicand")
        .into_iter()
        .map(|(q, _)| q)
        .collect()
}

pub fn factor_prime(ell: u64, f: &CubicField) -> Result<Vec<PrimeIdeal>> {
    if !is_prime(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    let primes = match factor_prime_kummer(ell, f) {
        Some(ps) => ps,
        None => factor_prime_frobenius(ell, f),
    };
    let total: u32 = primes.iter().map(|p| p.e * p.f).sum();
    if total != 3 {
        return Err(Error::InternalInconsistency(format!("sum of e f above {ell} is {total}")));
    }
    Ok(primes)
}

fn theta_poly(f: &CubicField, g: &Poly) -> FieldElement {
    // g(θ) with θ^2 = b θ' and θ^3 = d
    let c = |i: usize| BigInt::from(g.get(i).copied().unwrap_or(0));
    f.from_aux(&[c(0) + c(3) * &f.d, c(1), c(2) * &f.b], &BigInt::from(1))
}

/// Dedekind-Kummer factorization; `None` when `ell` divides the index.
pub fn factor_prime_kummer(ell: u64, f: &CubicField) -> Option<Vec<PrimeIdeal>> {
    if index_primes(f).contains(&ell) {
        return None;
    }
    let d = (&f.d % BigInt::from(ell)).to_u64().unwrap();
    let cubic: Poly = vec![(ell - d) % ell, 0, 0, 1];
    let roots = polymod::cube_roots(d, ell);
    let mut factors: Vec<(Poly, u32)> = roots
        .iter()
        .map(|&r| (vec![(ell - r) % ell, 1], polymod::root_multiplicity(&cubic, r, ell)))
        .collect();
    let linear_degree: u32 = factors.iter().map(|x| x.1).sum();
    match linear_degree {
        0 => factors.push((cubic, 1)),
        1 => {
            let q = polymod::divrem(&cubic, &factors[0].0, ell).0;
            factors.push((q, 1));
        }
        _ => {}
    }
    let ell_elem = FieldElement::from_int(BigInt::from(ell));
    let mut out: Vec<PrimeIdeal> = factors
        .into_iter()
        .map(|(g, e)| {
            let gt = theta_poly(f, &g);
            let ideal = FracIdeal::from_generators(f, &[ell_elem.clone(), gt.clone()]).expect("nonzero");
            PrimeIdeal { ell, e, f: (g.len() - 1) as u32, ideal, uniformizer_hint: Some(gt) }
        })
        .collect();
    out.sort_by_key(PrimeIdeal::sort_key);
    Some(out)
}

/// `O_L / ℓ O_L` through the structure constants.
struct ResidueAlgebra<'a> {
    field: &'a CubicField,
    p: u64,
}

impl ResidueAlgebra<'_> {
    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let t = self.field.structure_constants();
        let p = self.p;
        let mut out = vec![0u64; 3];
        for i in 0..3 {
            for j in 0..3 {
                let xy = x[i] * y[j] % p;
                if xy == 0 {
                    continue;
                }
                for k in 0..3 {
                    let c = t[i][j][k].clone() % BigInt::from(p);
                    let c = ((c + BigInt::from(p)) % BigInt::from(p)).to_u64().unwrap();
                    out[k] = (out[k] + xy * c) % p;
                }
            }
        }
        out
    }

    fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = vec![1, 0, 0];
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    fn unit_vec(i: usize) -> Vec<u64> {
        let mut v = vec![0u64; 3];
        v[i] = 1;
        v
    }

    /// Ideal generated by `gens` plus the subspace `base`, as an echelon basis.
    fn ideal_span(&self, base: &[Vec<u64>], gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut rows = base.to_vec();
        for g in gens {
            for i in 0..3 {
                rows.push(self.mul(g, &Self::unit_vec(i)));
            }
        }
        span_mod(&rows, 3, self.p)
    }
}

/// Factorization through the residue algebra; valid for every prime.
pub fn factor_prime_frobenius(ell: u64, f: &CubicField) -> Vec<PrimeIdeal> {
    let alg = ResidueAlgebra { field: f, p: ell };
    let mut q = ell;
    while q < 3 {
        q *= ell;
    }
    // radical = kernel of x -> x^q, an F_ell-linear map
    let images: Vec<Vec<u64>> = (0..3).map(|i| alg.pow(&ResidueAlgebra::unit_vec(i), q)).collect();
    let frob_rows: Vec<Vec<u64>> = (0..3).map(|k| (0..3).map(|i| images[i][k]).collect()).collect();
    let rad = span_mod(&kernel_mod(&frob_rows, 3, ell), 3, ell);
    // B = {x : x^ell - x in rad}
    let annihilator = kernel_mod(&rad, 3, ell);
    let g_images: Vec<Vec<u64>> = (0..3)
        .map(|i| {
            let e = ResidueAlgebra::unit_vec(i);
            let xp = alg.pow(&e, ell);
            (0..3).map(|k| (xp[k] + ell - e[k]) % ell).collect()
        })
        .collect();
    let cond: Vec<Vec<u64>> = annihilator
        .iter()
        .map(|w| (0..3).map(|i| (0..3).map(|k| w[k] * g_images[i][k] % ell).sum::<u64>() % ell).collect())
        .collect();
    let b_space = kernel_mod(&cond, 3, ell);
    let g = b_space.len() - rad.len();

    let maximal: Vec<Vec<Vec<u64>>> = if g == 1 {
        vec![rad.clone()]
    } else {
        // basis of B modulo the radical
        let mut reps: Vec<Vec<u64>> = Vec::new();
        let mut acc = rad.clone();
        for v in &b_space {
            let mut trial = acc.clone();
            trial.push(v.clone());
            let s = span_mod(&trial, 3, ell);
            if s.len() > acc.len() {
                acc = s;
                reps.push(v.clone());
            }
        }
        let shift = |v: &Vec<u64>, c: u64| {
            let mut w = v.clone();
            w[0] = (w[0] + ell - c) % ell;
            w
        };
        let values: Vec<Vec<u64>> = reps
            .iter()
            .map(|v| (0..ell).filter(|&c| alg.ideal_span(&rad, &[shift(v, c)]).len() < 3).collect())
            .collect();
        let mut found: Vec<Vec<Vec<u64>>> = Vec::new();
        let mut idx = vec![0usize; reps.len()];
        'tuples: loop {
            if values.iter().any(Vec::is_empty) {
                break;
            }
            let gens: Vec<Vec<u64>> =
                reps.iter().enumerate().map(|(k, v)| shift(v, values[k][idx[k]])).collect();
            let j = alg.ideal_span(&rad, &gens);
            if j.len() < 3 && !found.contains(&j) {
                found.push(j);
            }
            for pos in 0..idx.len() {
                idx[pos] += 1;
                if idx[pos] < values[pos].len() {
                    continue 'tuples;
                }
                idx[pos] = 0;
            }
            break;
        }
        found
    };

    let ell_big = BigInt::from(ell);
    let mut out: Vec<PrimeIdeal> = maximal
        .into_iter()
        .map(|m| {
            let mut cols: Vec<Vec<BigInt>> = (0..3)
                .map(|i| ResidueAlgebra::unit_vec(i).iter().map(|&x| BigInt::from(x) * &ell_big).collect())
                .collect();
            cols.extend(m.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()));
            let ideal = FracIdeal::from_columns(&cols, BigInt::from(1)).expect("contains ell O_L");
            let fdeg = 3 - m.len() as u32;
            let mut e = 0;
            let mut power = FracIdeal::unit();
            loop {
                power = ideal_mul(f, &power, &ideal);
                if !power.contains(&FieldElement::from_int(ell_big.clone())) {
                    break;
                }
                e += 1;
            }
            PrimeIdeal { ell, e, f: fdeg, ideal, uniformizer_hint: None }
        })
        .collect();
    out.sort_by_key(PrimeIdeal::sort_key);
    out
}

/// `Π P^e` over the given primes.
pub fn product_of_powers(f: &CubicField, primes: &[PrimeIdeal]) -> FracIdeal {
    primes.iter().fold(FracIdeal::unit(), |acc, p| ideal_mul(f, &acc, &ideal_pow(f, &p.ideal, p.e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::radicand::normalize;

    fn field(d: u64) -> CubicField {
        build_field(&normalize(d, 3).unwrap()).unwrap()
    }

    fn ef(ps: &[PrimeIdeal]) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = ps.iter().map(|p| (p.e, p.f)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn examples_for_two() {
        let f = field(2);
        assert_eq!(ef(&factor_prime(5, &f).unwrap()), vec![(1, 1), (1, 2)]);
        assert_eq!(ef(&factor_prime(3, &f).unwrap()), vec![(3, 1)]);
        let two = factor_prime(2, &f).unwrap();
        assert_eq!(ef(&two), vec![(3, 1)]);
        assert_eq!(two[0].ideal, FracIdeal::principal(&f, &f.theta()).unwrap());
    }

    #[test]
    fn routes_agree() {
        for d in [2u64, 3, 5, 6, 10, 12, 17, 19, 20, 28, 44, 45] {
            let f = field(d);
            for ell in [2u64, 3, 5, 7, 11, 13, 19, 31, 37] {
                let fr = factor_prime_frobenius(ell, &f);
                assert_eq!(product_of_powers(&f, &fr), FracIdeal::from_int(&BigInt::from(ell)), "d={d} ell={ell}");
                if let Some(k) = factor_prime_kummer(ell, &f) {
                    let ki: Vec<_> = k.iter().map(|p| (&p.ideal, p.e, p.f)).collect();
                    let fi: Vec<_> = fr.iter().map(|p| (&p.ideal, p.e, p.f)).collect();
                    assert_eq!(ki, fi, "d={d} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn species_one_at_three() {
        // 3 = P^2 Q for d = ±1 mod 9
        let f = field(10);
        assert_eq!(index_primes(&f), vec![3]);
        assert_eq!(ef(&factor_prime(3, &f).unwrap()), vec![(1, 1), (2, 1)]);
    }
}
