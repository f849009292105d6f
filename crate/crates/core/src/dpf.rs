//! Unit group cohomology of `N = L(ζ₃)` and the DPF type.
//!
//! `A` counts the principal ideals among power products of the totally
//! ramified primes of `L`. `U` is 0 exactly when `ζ₃` is the relative norm
//! `N_{N/K}` of a unit of `N`, which is decided after saturating the
//! subgroup `<ζ₆, ε, σ(ε)>` at the prime 3. The remaining invariants follow
//! from `P = U + 1` and `U + 1 = A + R`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, mul_mod, pow_mod};
use crate::ball::{Ball, CBall};
use crate::error::{Error, Result};
use crate::field::{decide_scaled, CubicField, FieldElement};
use crate::ideal::{ideal_mul, ideal_pow, FracIdeal};
use crate::linalg::rank_mod;
use crate::minima::Infrastructure;
use crate::polymod::cube_roots;
use crate::primes::{factor_prime, PrimeIdeal};
use crate::radicand::Radicand;

/// `x + y ω` with `ω² = -1 - ω`.
pub type ZOmega = [BigInt; 2];

fn zw_mul(p: &ZOmega, q: &ZOmega) -> ZOmega {
    let yy = &p[1] * &q[1];
    [&p[0] * &q[0] - &yy, &p[0] * &q[1] + &p[1] * &q[0] - yy]
}

fn zw_add(p: &ZOmega, q: &ZOmega) -> ZOmega {
    [&p[0] + &q[0], &p[1] + &q[1]]
}

fn zw_omega(p: &ZOmega) -> ZOmega {
    [-&p[1], &p[0] - &p[1]]
}

fn zw_conj(p: &ZOmega) -> ZOmega {
    [&p[0] - &p[1], -&p[1]]
}

fn zw(x: i64, y: i64) -> ZOmega {
    [BigInt::from(x), BigInt::from(y)]
}

/// Exponent `j` with `z = ζ₆^j`, where `ζ₆ = 1 + ω`.
pub fn mu6_index(z: &ZOmega) -> Option<u32> {
    const TABLE: [(i64, i64); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];
    TABLE.iter().position(|&(x, y)| z[0] == BigInt::from(x) && z[1] == BigInt::from(y)).map(|j| j as u32)
}

/// Element `(c0 + c1 θ + c2 θ') / denom` of `N` with `c_i ∈ Z[ω]`, `θ' = θ²/b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SexticElement {
    pub coeffs: [ZOmega; 3],
    pub denom: BigInt,
}

impl SexticElement {
    pub fn new(coeffs: [ZOmega; 3], denom: BigInt) -> Self {
        let mut g = denom.clone();
        for c in coeffs.iter().flatten() {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return Self { coeffs, denom: BigInt::one() };
        }
        if denom.is_negative() {
            g = -g;
        }
        Self { coeffs: coeffs.map(|c| c.map(|x| x / &g)), denom: denom / g }
    }

    pub fn one() -> Self {
        Self::from_k(zw(1, 0))
    }

    pub fn omega() -> Self {
        Self::from_k(zw(0, 1))
    }

    pub fn from_k(z: ZOmega) -> Self {
        Self { coeffs: [z, zw(0, 0), zw(0, 0)], denom: BigInt::one() }
    }

    pub fn from_field(f: &CubicField, x: &FieldElement) -> Self {
        let (nums, den) = f.to_aux(x);
        Self::new(nums.map(|n| [n, BigInt::zero()]), den)
    }

    /// The `K`-part when the `θ` and `θ'` coordinates vanish.
    pub fn as_k(&self) -> Option<(ZOmega, BigInt)> {
        self.coeffs[1..].iter().flatten().all(Zero::is_zero).then(|| (self.coeffs[0].clone(), self.denom.clone()))
    }

    /// The `k`-th embedding, `ω ↦ e^{2πi/3}` and `θ ↦ ω^k ∛d`.
    pub fn embed(&self, f: &CubicField, k: usize, prec: u32) -> CBall {
        let (r1, r2) = f.radical_balls(prec);
        let om = CBall::omega(prec);
        let pow = |e: usize| match e % 3 {
            0 => CBall::one(prec),
            1 => om.clone(),
            _ => om.conj(),
        };
        let coef = |c: &ZOmega| CBall::real(Ball::from_int(&c[0], prec)).add(&om.mul_int(&c[1]));
        coef(&self.coeffs[0])
            .add(&coef(&self.coeffs[1]).mul(&pow(k)).mul_real(&r1))
            .add(&coef(&self.coeffs[2]).mul(&pow(2 * k)).mul_real(&r2))
            .div_int(&self.denom)
    }
}

pub fn sextic_mul(f: &CubicField, x: &SexticElement, y: &SexticElement) -> SexticElement {
    let (c, e) = (&x.coeffs, &y.coeffs);
    let m = |i: usize, j: usize| zw_mul(&c[i], &e[j]);
    let scale = |z: ZOmega, k: &BigInt| z.map(|v| v * k);
    let ab = &f.a * &f.b;
    // θ² = b θ', θ θ' = a b, θ'² = a θ
    let c0 = zw_add(&m(0, 0), &scale(zw_add(&m(1, 2), &m(2, 1)), &ab));
    let c1 = zw_add(&zw_add(&m(0, 1), &m(1, 0)), &scale(m(2, 2), &f.a));
    let c2 = zw_add(&zw_add(&m(0, 2), &m(2, 0)), &scale(m(1, 1), &f.b));
    SexticElement::new([c0, c1, c2], &x.denom * &y.denom)
}

/// `σ(θ) = ω θ`, fixing `K`.
pub fn sextic_sigma(x: &SexticElement) -> SexticElement {
    let [c0, c1, c2] = &x.coeffs;
    SexticElement { coeffs: [c0.clone(), zw_omega(c1), zw_omega(&zw_omega(c2))], denom: x.denom.clone() }
}

pub fn sextic_pow(f: &CubicField, x: &SexticElement, mut n: u32) -> SexticElement {
    let mut acc = SexticElement::one();
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = sextic_mul(f, &acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = sextic_mul(f, &base, &base);
        }
    }
    acc
}

/// `N_{N/K}(z) = z σ(z) σ²(z)` as `(numerator, denominator)` over `Z[ω]`.
pub fn relative_norm(f: &CubicField, z: &SexticElement) -> Result<(ZOmega, BigInt)> {
    let s1 = sextic_sigma(z);
    let s2 = sextic_sigma(&s1);
    sextic_mul(f, &sextic_mul(f, z, &s1), &s2)
        .as_k()
        .ok_or_else(|| Error::InternalInconsistency("relative norm has nonzero θ-coordinates".into()))
}

/// Relative norm of a unit, as an exponent of `ζ₆`.
fn unit_norm_index(f: &CubicField, z: &SexticElement) -> Result<u32> {
    let (n, den) = relative_norm(f, z)?;
    if !den.is_one() {
        return Err(Error::InternalInconsistency("unit norm has a denominator".into()));
    }
    mu6_index(&n).ok_or_else(|| Error::InternalInconsistency("unit norm is not a root of unity".into()))
}

/// `z^{-1} = σ(z) σ²(z) / N(z)` for a unit `z`.
pub fn unit_inverse(f: &CubicField, z: &SexticElement) -> Result<SexticElement> {
    let (n, den) = relative_norm(f, z)?;
    if !den.is_one() || mu6_index(&n).is_none() {
        return Err(Error::InternalInconsistency("inverting a non-unit".into()));
    }
    let s1 = sextic_sigma(z);
    let s2 = sextic_sigma(&s1);
    Ok(sextic_mul(f, &sextic_mul(f, &s1, &s2), &SexticElement::from_k(zw_conj(&n))))
}

/// Denominator used when recognising cube roots over `(1, θ, θ')`.
pub const RECOGNITION_DENOMINATOR: i64 = 9;

/// Rational primes tried by [`cube_residue_excludes`].
const RESIDUE_PRIMES: usize = 16;

/// `true` when `x` is a non-cube modulo some degree-one prime of `N`, which
/// proves that `x` is not a cube in `N`.
pub fn cube_residue_excludes(f: &CubicField, x: &SexticElement) -> bool {
    let three_d = &f.d * 3u32;
    let mut tried = 0;
    for ell in (7u64..).step_by(6) {
        if tried >= RESIDUE_PRIMES {
            break;
        }
        if !is_prime(ell) || (&three_d % ell).is_zero() || (&x.denom % ell).is_zero() {
            continue;
        }
        let roots = cube_roots((&f.d % ell).to_u64().expect("reduced"), ell);
        if roots.is_empty() {
            continue;
        }
        tried += 1;
        let e = (ell - 1) / 3;
        let w = (2..ell).map(|g| pow_mod(g, e, ell)).find(|&w| w != 1).expect("ℓ ≡ 1 mod 3");
        let red = |v: &BigInt| v.mod_floor(&BigInt::from(ell)).to_u64().expect("reduced");
        let b_inv = inv_mod(red(&f.b), ell);
        let den_inv = inv_mod(red(&x.denom), ell);
        for om in [w, mul_mod(w, w, ell)] {
            let zw = |c: &ZOmega| (red(&c[0]) + mul_mod(red(&c[1]), om, ell)) % ell;
            for &r in &roots {
                let t2 = mul_mod(mul_mod(r, r, ell), b_inv, ell);
                let v = (zw(&x.coeffs[0]) + mul_mod(zw(&x.coeffs[1]), r, ell) + mul_mod(zw(&x.coeffs[2]), t2, ell)) % ell;
                let v = mul_mod(v, den_inv, ell);
                if v != 0 && pow_mod(v, e, ell) != 1 {
                    return true;
                }
            }
        }
    }
    false
}

/// A cube root of `x` in `N`, if one exists with coordinates in `(1/9) Z[ω]`.
pub fn cube_root(f: &CubicField, x: &SexticElement) -> Result<Option<SexticElement>> {
    if cube_residue_excludes(f, x) {
        return Ok(None);
    }
    // a unit with n-bit coordinates has an embedding near 2^(-2n), and its
    // cube root must be located to relative accuracy
    let bits = 2 * (x.coeffs.iter().flatten().map(|c| c.bits()).max().unwrap_or(0) + x.denom.bits());
    decide_scaled("recognising a cube root in the sextic field", bits, |prec| cube_root_at(f, x, prec))
        .map_err(|e| match e {
            Error::PrecisionExhausted(m) => Error::RecognitionFailed(m),
            other => other,
        })
}

fn cube_root_at(f: &CubicField, x: &SexticElement, prec: u32) -> Option<Option<SexticElement>> {
    let roots: Vec<Vec<CBall>> = (0..3).map(|k| CBall::kth_roots(&x.embed(f, k, prec), 3)).collect::<Option<_>>()?;
    let (r1, r2) = f.radical_balls(prec);
    let rho = [Ball::from_i64(1, prec), r1, r2];
    let om = CBall::omega(prec);
    let om_inv = [CBall::one(prec), om.conj(), om];
    let sqrt3 = Ball::sqrt_int(&BigInt::from(3), prec);
    let den = BigInt::from(RECOGNITION_DENOMINATOR);
    let scale = BigInt::from(RECOGNITION_DENOMINATOR / 3);
    let two = BigInt::from(2);
    let mut undecided = false;
    // multiplying a root by ω changes every embedding by the same factor,
    // so the branch at the first embedding can be fixed
    for z1 in &roots[1] {
        'candidate: for z2 in &roots[2] {
            let z = [&roots[0][0], z1, z2];
            let mut coeffs: Vec<ZOmega> = Vec::with_capacity(3);
            for (i, r) in rho.iter().enumerate() {
                let mut s = CBall::zero(prec);
                for (k, zk) in z.iter().enumerate() {
                    s = s.add(&zk.mul(&om_inv[(i * k) % 3]));
                }
                let s = s.mul_int(&scale).div_real(r)?;
                // s = X + Y ω  ⇒  Y = 2 Im s / √3, X = Re s + Y / 2
                let y = s.im.mul_i64(2).div(&sqrt3)?;
                let y_int = match y.unique_integer() {
                    None => {
                        undecided = true;
                        continue 'candidate;
                    }
                    Some(None) => continue 'candidate,
                    Some(Some(n)) => n,
                };
                let xb = s.re.mul_i64(2).add(&Ball::from_int(&y_int, prec)).div_int(&two);
                match xb.unique_integer() {
                    None => {
                        undecided = true;
                        continue 'candidate;
                    }
                    Some(None) => continue 'candidate,
                    Some(Some(n)) => coeffs.push([n, y_int]),
                }
            }
            let cand = SexticElement::new([coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()], den.clone());
            if sextic_pow(f, &cand, 3) == *x {
                return Some(Some(cand));
            }
        }
    }
    if undecided {
        None
    } else {
        Some(None)
    }
}

/// Class representative `ω^a u1^b u2^c` tested during saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub a: u32,
    pub b: i32,
    pub c: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationStep {
    pub representative: Representative,
    /// The representative as an exact element.
    pub target: SexticElement,
    /// The cube root that was adjoined.
    pub root: SexticElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatedUnits {
    /// Together with `ζ₆`, a basis of a subgroup of `U_N` of index prime to 3.
    pub basis: [SexticElement; 2],
    pub steps: Vec<SaturationStep>,
}

impl SaturatedUnits {
    /// Whether every adjoined root cubes to its target.
    pub fn verify(&self, f: &CubicField) -> bool {
        self.steps.iter().all(|s| sextic_pow(f, &s.root, 3) == s.target)
    }
}

fn signed_pow(f: &CubicField, u: &SexticElement, inv: &SexticElement, e: i32) -> SexticElement {
    match e {
        0 => SexticElement::one(),
        e if e > 0 => sextic_pow(f, u, e as u32),
        e => sextic_pow(f, inv, e.unsigned_abs()),
    }
}

/// Saturate `<ζ₆, ε, σ(ε)>` at 3.
pub fn cube_saturate_units(f: &CubicField, eps: &FieldElement) -> Result<SaturatedUnits> {
    let e = SexticElement::from_field(f, eps);
    let se = sextic_sigma(&e);
    saturate_from(f, [e, se])
}

/// Saturate `<ζ₆, u1, u2>` at 3, for units `u1, u2` independent modulo torsion.
pub fn saturate_from(f: &CubicField, basis: [SexticElement; 2]) -> Result<SaturatedUnits> {
    let mut basis = basis;
    let mut steps = Vec::new();
    // ω^a alone is never a cube: ζ₉ ∉ N
    'grow: loop {
        if steps.len() > 8 {
            return Err(Error::InternalInconsistency("cube saturation does not terminate".into()));
        }
        let invs = [unit_inverse(f, &basis[0])?, unit_inverse(f, &basis[1])?];
        for b in -1..=1 {
            for c in -1..=1 {
                if b == 0 && c == 0 {
                    continue;
                }
                for a in 0..3u32 {
                    let x = sextic_mul(
                        f,
                        &sextic_mul(f, &sextic_pow(f, &SexticElement::omega(), a), &signed_pow(f, &basis[0], &invs[0], b)),
                        &signed_pow(f, &basis[1], &invs[1], c),
                    );
                    if let Some(root) = cube_root(f, &x)? {
                        let slot = if b != 0 { 0 } else { 1 };
                        basis[slot] = root.clone();
                        steps.push(SaturationStep { representative: Representative { a, b, c }, target: x, root });
                        continue 'grow;
                    }
                }
            }
        }
        return Ok(SaturatedUnits { basis, steps });
    }
}

/// 0 when `ζ₃` is the relative norm of a unit, otherwise 1.
pub fn zeta_norm_invariant(f: &CubicField, sat: &SaturatedUnits) -> Result<u32> {
    // N(ζ₆) = -1 = ζ₆³
    let mut g = 3u32;
    for u in &sat.basis {
        g = g.gcd(&unit_norm_index(f, u)?);
    }
    g = g.gcd(&6);
    Ok(if 2 % g == 0 { 0 } else { 1 })
}

/// Primes of `L` with `e = 3`, one above each prime dividing the discriminant
/// that is totally ramified.
pub fn ambiguous_basis(f: &CubicField) -> Result<Vec<PrimeIdeal>> {
    let mut ells: Vec<u64> = f.radicand.prime_divisors();
    if !ells.contains(&3) {
        ells.push(3);
    }
    ells.sort_unstable();
    let mut out = Vec::new();
    for ell in ells {
        let ps = factor_prime(ell, f)?;
        if ps.len() == 1 && ps[0].e == 3 {
            out.push(ps.into_iter().next().expect("one prime"));
        }
    }
    Ok(out)
}

/// Vectors of `F₃^t` with first nonzero coordinate 1.
fn projective_points(t: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..3u64.pow(t as u32) {
        let v: Vec<u32> = (0..t).map(|i| ((n / 3u64.pow(i as u32)) % 3) as u32).collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

/// `F₃`-dimension of the principal classes among `Π l_i^{v_i}`.
pub fn absolute_dpf_dimension(f: &CubicField, infra: &Infrastructure) -> Result<(u32, usize)> {
    let basis = ambiguous_basis(f)?;
    let t = basis.len();
    let mut principal: Vec<Vec<u64>> = Vec::new();
    for v in projective_points(t) {
        let mut ideal = FracIdeal::unit();
        for (p, &e) in basis.iter().zip(&v) {
            if e > 0 {
                ideal = ideal_mul(f, &ideal, &ideal_pow(f, &p.ideal, e));
            }
        }
        if infra.principal_test(f, &ideal)?.is_some() {
            principal.push(v.iter().map(|&x| x as u64).collect());
        }
    }
    let a = if principal.is_empty() { 0 } else { rank_mod(&principal, t, 3) as u32 };
    if a == 0 {
        return Err(Error::InternalInconsistency("the radical does not give a principal ambiguous ideal".into()));
    }
    Ok((a, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyInvariants {
    #[serde(rename = "U")]
    pub u: u32,
    #[serde(rename = "P")]
    pub p: u32,
    #[serde(rename = "A")]
    pub a: u32,
    #[serde(rename = "R")]
    pub r: u32,
}

impl CohomologyInvariants {
    /// Fills in `P = U + 1` and `R = U + 1 - A`.
    pub fn from_ua(prime: u32, u: u32, a: u32) -> Result<Self> {
        if u > (prime - 1) / 2 || a == 0 || a > u + 1 {
            return Err(Error::InadmissiblePair { p: prime, u, a });
        }
        Ok(Self { u, p: u + 1, a, r: u + 1 - a })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoarseType {
    pub p: u32,
    pub label: String,
    pub u: u32,
    pub a: u32,
    /// Filled marker in the published lattice diagrams.
    pub fine_marker: bool,
    /// For `p = 5`, the other label sharing this `(U, A)` cell.
    pub partner: Option<String>,
}

pub fn type_lattice(p: u32) -> Result<Vec<CoarseType>> {
    type Row = (u32, u32, &'static str, bool, Option<&'static str>);
    let rows: &[Row] = match p {
        3 => &[(1, 1, "α", false, None), (1, 2, "β", false, None), (0, 1, "γ", false, None)],
        5 => &[
            (2, 1, "α", true, None),
            (2, 2, "β", true, None),
            (2, 3, "γ", false, None),
            (1, 1, "δ", true, Some("ζ")),
            (1, 2, "ε", false, Some("η")),
            (1, 1, "ζ", true, Some("δ")),
            (1, 2, "η", false, Some("ε")),
            (0, 1, "ϑ", false, None),
        ],
        7 => &[
            (3, 1, "α", true, None),
            (3, 2, "β", true, None),
            (3, 3, "γ", true, None),
            (3, 4, "δ", false, None),
            (2, 1, "ε", true, None),
            (2, 2, "ζ", true, None),
            (2, 3, "η", false, None),
            (1, 1, "ϑ", true, None),
            (1, 2, "ι", false, None),
            (0, 1, "κ", false, None),
        ],
        other => return Err(Error::InvalidPrime(other)),
    };
    Ok(rows
        .iter()
        .map(|&(u, a, label, fine_marker, partner)| CoarseType {
            p,
            label: label.to_string(),
            u,
            a,
            fine_marker,
            partner: partner.map(str::to_string),
        })
        .collect())
}

/// The `p = 3` lattice entry with the given `(U, A)`.
pub fn coarse_type_p3(u: u32, a: u32) -> Result<CoarseType> {
    type_lattice(3)?
        .into_iter()
        .find(|t| t.u == u && t.a == a)
        .ok_or(Error::InadmissiblePair { p: 3, u, a })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DpfReport {
    pub invariants: CohomologyInvariants,
    pub coarse: CoarseType,
    /// Number of totally ramified primes.
    pub t: usize,
    pub saturation: SaturatedUnits,
}

/// Full `p = 3` classification from an already computed principal cycle.
pub fn classify_field(f: &CubicField, infra: &Infrastructure) -> Result<DpfReport> {
    let (a, t) = absolute_dpf_dimension(f, infra)?;
    let saturation = cube_saturate_units(f, &infra.epsilon)?;
    if !saturation.verify(f) {
        return Err(Error::InternalInconsistency("adjoined cube root does not cube to its target".into()));
    }
    let u = zeta_norm_invariant(f, &saturation)?;
    let invariants = CohomologyInvariants::from_ua(3, u, a)?;
    let coarse = coarse_type_p3(u, a)?;
    Ok(DpfReport { invariants, coarse, t, saturation })
}

pub fn classify(r: &Radicand) -> Result<(CohomologyInvariants, CoarseType)> {
    if r.p != 3 {
        return Err(Error::InvalidPrime(r.p));
    }
    let f = crate::field::build_field(r)?;
    let infra = Infrastructure::build(&f)?;
    let rep = classify_field(&f, &infra)?;
    Ok((rep.invariants, rep.coarse))
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
    fn relative_norms_of_simple_elements() {
        let f = field(7);
        let theta = SexticElement::from_field(&f, &f.theta());
        assert_eq!(relative_norm(&f, &theta).unwrap(), (zw(7, 0), BigInt::one()));
        assert_eq!(relative_norm(&f, &SexticElement::omega()).unwrap(), (zw(1, 0), BigInt::one()));
        let x = f.from_aux(&[3, -1, 2].map(BigInt::from), &BigInt::one());
        let n = f.norm(&x);
        let (nk, den) = relative_norm(&f, &SexticElement::from_field(&f, &x)).unwrap();
        assert_eq!(nk[1], BigInt::zero());
        assert_eq!(num_rational::BigRational::new(nk[0].clone(), den), n);
    }

    #[test]
    fn sigma_has_order_three() {
        let f = field(12);
        let z = SexticElement::new([zw(1, 2), zw(-3, 1), zw(0, 5)], BigInt::from(3));
        assert_eq!(sextic_sigma(&sextic_sigma(&sextic_sigma(&z))), z);
        let w = SexticElement::new([zw(2, 0), zw(1, 1), zw(0, -1)], BigInt::one());
        assert_eq!(sextic_sigma(&sextic_mul(&f, &z, &w)), sextic_mul(&f, &sextic_sigma(&z), &sextic_sigma(&w)));
    }

    #[test]
    fn cube_roots_are_recovered() {
        let f = field(10);
        let z = SexticElement::new([zw(1, 2), zw(-1, 1), zw(0, 1)], BigInt::one());
        let c = sextic_pow(&f, &z, 3);
        let r = cube_root(&f, &c).unwrap().unwrap();
        assert_eq!(sextic_pow(&f, &r, 3), c);
        let theta = SexticElement::from_field(&f, &f.theta());
        assert_eq!(cube_root(&f, &theta).unwrap(), None);
        assert!(cube_residue_excludes(&f, &theta));
        assert!(!cube_residue_excludes(&f, &c));
    }

    #[test]
    fn numeric_recognition_of_a_large_cube() {
        // the saturation target here has coordinates of several hundred bits
        let f = field(467);
        let infra = crate::minima::Infrastructure::build(&f).unwrap();
        let sat = cube_saturate_units(&f, &infra.epsilon).unwrap();
        let step = sat.steps.first().expect("467 needs a saturation step");
        assert!(!cube_residue_excludes(&f, &step.target));
        let bits = 2 * step.target.coeffs.iter().flatten().map(|c| c.bits()).max().unwrap();
        let root = decide_scaled("test", bits, |prec| cube_root_at(&f, &step.target, prec)).unwrap();
        assert_eq!(root.map(|r| sextic_pow(&f, &r, 3)), Some(step.target.clone()));
        assert_eq!(zeta_norm_invariant(&f, &sat).unwrap(), 0);
    }

    #[test]
    fn lattices_have_expected_sizes() {
        assert_eq!(type_lattice(3).unwrap().len(), 3);
        assert_eq!(type_lattice(5).unwrap().len(), 8);
        assert_eq!(type_lattice(7).unwrap().len(), 10);
        assert!(type_lattice(11).is_err());
        // the cubic diagram draws every type with an open circle
        assert!(type_lattice(3).unwrap().iter().all(|t| !t.fine_marker));
        for p in [5, 7] {
            for t in type_lattice(p).unwrap() {
                assert_eq!(t.fine_marker, t.u + 1 > t.a);
            }
        }
    }

    #[test]
    fn classification_of_small_radicands() {
        let (inv, ty) = classify(&normalize(2, 3).unwrap()).unwrap();
        assert_eq!((inv.u, inv.a, ty.label.as_str()), (1, 2, "β"));
        let (inv, ty) = classify(&normalize(3, 3).unwrap()).unwrap();
        assert_eq!((inv.u, inv.a, inv.r, ty.label.as_str()), (0, 1, 0, "γ"));
        let (inv, ty) = classify(&normalize(7, 3).unwrap()).unwrap();
        assert_eq!((inv.u, inv.a, inv.r, ty.label.as_str()), (1, 1, 1, "α"));
    }
}
