//! Fundamental unit and regulator of a pure cubic field.
//!
//! The unit comes from the Voronoi cycle of `O_L` (see [`crate::minima`]).
//! Independently of that construction it is certified fundamental: with
//! `ε = η^k` for the true fundamental unit `η`, the lower bound
//! `η^3 > (|D| - 27) / 4` caps `k`, and for every prime `q` up to that cap
//! the candidate `q`-th roots of `ε` are ruled out exactly. When `ε` is
//! small the certificate also enumerates all integers of `O_L` in a region
//! containing every unit `1 < u < ε` and confirms there is none.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, mul_mod, pow_mod, primes_below};
use crate::ball::{Ball, CBall};
use crate::error::{Error, Result};
use crate::field::{decide_scaled, CubicField, FieldElement};
use crate::ideal::FracIdeal;
use crate::linalg::{lll, short_vectors};
use crate::polymod::cube_roots;
use crate::minima::{cmp_real, Infrastructure};

/// Units below this real embedding also get the exhaustive enumeration check.
pub const ENUMERATION_LIMIT: f64 = 1e5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitCertificate {
    /// Lower bound for the fundamental unit, `((|D| - 27) / 4)^(1/3)`.
    pub lower_bound: f64,
    /// Largest `k` with `ε = η^k` compatible with the lower bound.
    pub max_exponent: u32,
    /// Primes `q <= max_exponent` for which `ε` was shown not to be a `q`-th power.
    pub excluded_roots: Vec<u32>,
    /// Lattice points examined by the exhaustive check, when it ran.
    pub enumerated_points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitGroupL {
    /// Fundamental unit with real embedding above 1 and norm 1.
    pub fundamental: FieldElement,
    pub regulator: f64,
    /// Order of the torsion subgroup `{±1}`.
    pub torsion: u32,
    pub certificate: UnitCertificate,
}

pub fn fundamental_unit(f: &CubicField) -> Result<UnitGroupL> {
    fundamental_unit_from(f, &Infrastructure::build(f)?)
}

pub fn fundamental_unit_from(f: &CubicField, infra: &Infrastructure) -> Result<UnitGroupL> {
    let eps = infra.epsilon.clone();
    let certificate = certify(f, &eps)?;
    Ok(UnitGroupL { regulator: regulator(f, &eps), fundamental: eps, torsion: 2, certificate })
}

/// `log ε'` to double precision.
pub fn regulator(f: &CubicField, eps: &FieldElement) -> f64 {
    f.embed_real(eps, 128).log2_mid() * std::f64::consts::LN_2
}

/// Certify that `eps` is a fundamental unit with `ε' > 1`.
pub fn certify(f: &CubicField, eps: &FieldElement) -> Result<UnitCertificate> {
    if !eps.is_integral() || f.norm(eps) != BigRational::one() {
        return Err(Error::InternalInconsistency("candidate unit does not have norm 1".into()));
    }
    if eps == &FieldElement::one()
        || cmp_real_one(f, eps)? != Ordering::Greater
    {
        return Err(Error::InternalInconsistency("candidate unit is not above 1".into()));
    }
    let disc = f.discriminant.abs().to_f64().unwrap_or(f64::INFINITY);
    let lower_bound = ((disc - 27.0) / 4.0).cbrt();
    let log_eps = regulator(f, eps);
    // η^k = ε with η > lower_bound; a small safety factor guards rounding
    let max_exponent = if lower_bound > 1.0 {
        ((log_eps / lower_bound.ln()) * (1.0 + 1e-9)).floor() as u32
    } else {
        return Err(Error::InternalInconsistency("discriminant too small for the unit bound".into()));
    };
    let mut excluded_roots = Vec::new();
    for q in primes_below(max_exponent as u64 + 1) {
        if power_residue_excludes(f, eps, q) {
            excluded_roots.push(q as u32);
            continue;
        }
        if qth_root(f, eps, q as u32)?.is_some() {
            return Err(Error::InternalInconsistency(format!("unit is a {q}-th power")));
        }
        excluded_roots.push(q as u32);
    }
    let approx = f.embed_f64(eps)[0];
    let enumerated_points = if approx <= ENUMERATION_LIMIT { Some(enumerate_smaller_units(f, eps, approx)?) } else { None };
    Ok(UnitCertificate { lower_bound, max_exponent, excluded_roots, enumerated_points })
}

fn cmp_real_one(f: &CubicField, x: &FieldElement) -> Result<Ordering> {
    crate::minima::cmp_real_const(f, x, &BigRational::one())
}

/// Exhaustively confirms no unit `u` with `1 < u' < ε'`; returns the number
/// of lattice points examined.
fn enumerate_smaller_units(f: &CubicField, eps: &FieldElement, approx: f64) -> Result<usize> {
    // such u has |u''| = u'^(-1/2) < 1, so (u'/ε')^2 + |u''|^2 < 2
    let basis: Vec<Vec<f64>> = (0..3)
        .map(|i| {
            let e = f.embed_f64(&f.basis_element(i));
            vec![e[0] / approx, e[1], e[2]]
        })
        .collect();
    let (red, t) = lll(&basis);
    let pts = short_vectors(&red, 2.0 * (1.0 + 1e-6), 50_000_000)
        .ok_or_else(|| Error::PrecisionExhausted("unit enumeration too large".into()))?;
    for x in &pts {
        let c: Vec<i64> = (0..3).map(|j| (0..3).map(|i| x[i] * t[i][j]).sum()).collect();
        let u = FieldElement::integral(std::array::from_fn(|i| BigInt::from(c[i])));
        if !f.norm(&u).abs().is_one() || u == FieldElement::one() || u == FieldElement::one().neg() {
            continue;
        }
        if u == *eps || u == eps.neg() {
            continue;
        }
        let (pos, _) = f.embed(&u, 128);
        // real embedding strictly between 1 and ε' (up to sign) contradicts fundamentality
        let above_one = cmp_real_one(f, &u)? == Ordering::Greater;
        let below_eps = cmp_real(f, &u, eps)? == Ordering::Less;
        if above_one && below_eps {
            return Err(Error::InternalInconsistency(format!(
                "found a smaller unit with real embedding {}",
                pos.mid_f64()
            )));
        }
    }
    Ok(pts.len())
}

/// Rational primes tried by [`power_residue_excludes`] for each `q`.
const RESIDUE_PRIMES: usize = 24;

/// `true` when some degree-one prime `P` of norm `ℓ ≡ 1 (mod q)` has
/// `ε^((ℓ-1)/q) ≢ 1 (mod P)`, which rules out `ε` being a `q`-th power.
pub fn power_residue_excludes(f: &CubicField, eps: &FieldElement, q: u64) -> bool {
    let (nums, den) = f.to_aux(eps);
    let three_d = &f.d * 3u32;
    let mut tried = 0;
    let mut k = 2u64;
    while tried < RESIDUE_PRIMES {
        let Some(ell) = k.checked_mul(q).and_then(|x| x.checked_add(1)) else { return false };
        k += 2;
        if !is_prime(ell) || (&three_d % ell).is_zero() || (&den % ell).is_zero() {
            continue;
        }
        let d_mod = (&f.d % ell).to_u64().expect("reduced");
        let roots = cube_roots(d_mod, ell);
        if roots.is_empty() {
            continue;
        }
        tried += 1;
        let red = |x: &BigInt| x.mod_floor(&BigInt::from(ell)).to_u64().expect("reduced");
        let b_inv = inv_mod(red(&f.b), ell);
        let den_inv = inv_mod(red(&den), ell);
        for r in roots {
            // θ ↦ r, θ' = θ²/b ↦ r² / b
            let t2 = mul_mod(mul_mod(r, r, ell), b_inv, ell);
            let v = (red(&nums[0]) + mul_mod(red(&nums[1]), r, ell) + mul_mod(red(&nums[2]), t2, ell)) % ell;
            let v = mul_mod(v, den_inv, ell);
            if pow_mod(v, (ell - 1) / q, ell) != 1 {
                return true;
            }
        }
    }
    false
}

/// The `q`-th root of the unit `ε` in `O_L`, if one exists.
///
/// A root `η` has `η' = ε'^(1/q)` and `η''` among the `q`-th roots of
/// `ε''`. Each candidate is converted back to coordinates over
/// `(1, θ, θ')`; a coordinate ball without an integer refutes the
/// candidate, a unique integer is confirmed by exact powering.
pub fn qth_root(f: &CubicField, eps: &FieldElement, q: u32) -> Result<Option<FieldElement>> {
    let bits = eps.coords.iter().map(|c| c.bits()).max().unwrap_or(0);
    decide_scaled("testing a unit for a q-th root", bits, |prec| qth_root_at(f, eps, q, prec))
}

fn qth_root_at(f: &CubicField, eps: &FieldElement, q: u32, prec: u32) -> Option<Option<FieldElement>> {
    let (re, cx) = f.embed(eps, prec);
    let real_roots = CBall::kth_roots(&CBall::real(re), q)?;
    let eta1 = real_roots[0].re.clone();
    let t = BigInt::from(f.basis_denominator);
    let d = f.d.clone();
    let a2b = &f.a * &f.a * &f.b;
    let r1 = Ball::cbrt_int(&d, prec);
    let r2 = Ball::cbrt_int(&a2b, prec);
    let om = CBall::omega(prec);
    let three = BigInt::from(3);
    for eta2 in CBall::kth_roots(&cx, q)? {
        // inverse of (u, v ρ1, w ρ2) ↦ (x', x'')
        let two_re = |z: &CBall| z.re.mul_i64(2);
        let u = eta1.add(&two_re(&eta2)).div_int(&three);
        let vr = eta1.add(&two_re(&eta2.mul(&om.conj()))).div_int(&three);
        let wr = eta1.add(&two_re(&eta2.mul(&om))).div_int(&three);
        let coords = [u, vr.div(&r1)?, wr.div(&r2)?].map(|c| c.mul_int(&t));
        let mut ints = Vec::with_capacity(3);
        let mut refuted = false;
        for c in &coords {
            match c.unique_integer()? {
                Some(n) => ints.push(n),
                None => {
                    refuted = true;
                    break;
                }
            }
        }
        if refuted {
            continue;
        }
        let arr: [BigInt; 3] = [ints[0].clone(), ints[1].clone(), ints[2].clone()];
        let eta = f.from_aux(&arr, &t);
        if eta.is_integral() && f.pow(&eta, q) == *eps {
            return Some(Some(eta));
        }
    }
    Some(None)
}

/// Units are exactly the elements generating the unit ideal.
pub fn is_unit_ideal(f: &CubicField, x: &FieldElement) -> bool {
    FracIdeal::principal(f, x).is_some_and(|i| i == FracIdeal::unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::radicand::normalize;

    fn field(d: u64) -> CubicField {
        build_field(&normalize(d, 3).unwrap()).unwrap()
    }

    #[test]
    fn two_has_known_unit() {
        let f = field(2);
        let u = fundamental_unit(&f).unwrap();
        assert_eq!(u.fundamental, f.from_aux(&[1, 1, 1].map(BigInt::from), &BigInt::one()));
        assert!((f.embed_f64(&u.fundamental)[0] - 3.847_322).abs() < 1e-5);
        assert!((u.regulator - 1.347_377_348_329_384).abs() < 1e-12);
        assert!(u.certificate.enumerated_points.is_some());
        let inv = f.inv(&u.fundamental).unwrap();
        assert_eq!(f.mul(&u.fundamental, &inv), FieldElement::one());
    }

    #[test]
    fn square_is_detected() {
        let f = field(2);
        let u = fundamental_unit(&f).unwrap().fundamental;
        let sq = f.mul(&u, &u);
        assert_eq!(qth_root(&f, &sq, 2).unwrap(), Some(u.clone()));
        assert_eq!(qth_root(&f, &u, 2).unwrap(), None);
        assert!(certify(&f, &sq).is_err());
    }

    #[test]
    fn residue_sieve_is_sound() {
        let f = field(5);
        let u = fundamental_unit(&f).unwrap().fundamental;
        for q in [2u64, 3, 5, 7] {
            assert!(power_residue_excludes(&f, &u, q), "q={q}");
            let p = f.pow(&u, q as u32);
            assert!(!power_residue_excludes(&f, &p, q), "q={q}");
        }
    }

    #[test]
    fn regulator_for_three() {
        let u = fundamental_unit(&field(3)).unwrap();
        assert!((u.regulator - 2.524_681_404_706_315_7).abs() < 1e-9);
    }
}
