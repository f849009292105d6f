//! Exact arithmetic in a pure cubic field `L = Q(θ)` with `θ^3 = a b^2`.
//!
//! Elements are stored over the integral basis `ω_0, ω_1, ω_2` of `O_L`.
//! The auxiliary basis `(1, θ, θ')` with `θ' = θ^2 / b` is used for
//! embeddings and for talking to the outside world.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ball::{Ball, CBall};
use crate::error::{Error, Result};
use crate::radicand::{Radicand, Species};

/// Working precisions (bits) tried in order by every numerical decision.
pub const PRECISION_LADDER: [u32; 5] = [128, 256, 512, 1024, 2048];

/// Run `f` at increasing precision until it returns an answer.
pub fn decide<T>(what: &str, mut f: impl FnMut(u32) -> Option<T>) -> Result<T> {
    PRECISION_LADDER
        .iter()
        .find_map(|&prec| f(prec))
        .ok_or_else(|| Error::PrecisionExhausted(what.to_string()))
}

/// Like [`decide`], with every rung raised by `extra` bits.
///
/// Embeddings of an element whose coordinates have `n` bits lose about `n`
/// bits to cancellation, so callers pass the coordinate size here.
pub fn decide_scaled<T>(what: &str, extra: u64, mut f: impl FnMut(u32) -> Option<T>) -> Result<T> {
    let extra = u32::try_from(extra).map_err(|_| Error::PrecisionExhausted(what.to_string()))?;
    PRECISION_LADDER
        .iter()
        .find_map(|&prec| f(prec.checked_add(extra)?))
        .ok_or_else(|| Error::PrecisionExhausted(what.to_string()))
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// An element of `L` as integral-basis coordinates over a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub coords: [BigInt; 3],
    pub denom: BigInt,
}

impl FieldElement {
    pub fn new(coords: [BigInt; 3], denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let mut g = denom.clone();
        for c in &coords {
            g = g.gcd(c);
        }
        if denom.is_negative() {
            g = -g;
        }
        let coords = coords.map(|c| c / &g);
        FieldElement { coords, denom: denom / g }
    }

    pub fn integral(coords: [BigInt; 3]) -> Self {
        FieldElement { coords, denom: BigInt::one() }
    }

    pub fn from_int(n: BigInt) -> Self {
        Self::integral([n, BigInt::zero(), BigInt::zero()])
    }

    pub fn zero() -> Self {
        Self::from_int(BigInt::zero())
    }

    pub fn one() -> Self {
        Self::from_int(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn neg(&self) -> Self {
        FieldElement { coords: self.coords.clone().map(|c| -c), denom: self.denom.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords = std::array::from_fn(|i| &self.coords[i] * &o.denom + &o.coords[i] * &self.denom);
        Self::new(coords, &self.denom * &o.denom)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(self.coords.clone().map(|c| c * k), self.denom.clone())
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        Self::new(self.coords.clone(), &self.denom * k)
    }

    /// Coordinates as decimal strings over the integral basis, then the denominator.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().chain(std::iter::once(&self.denom)).map(|c| c.to_string()).collect()
    }
}

/// The field `L = Q(∛d)` together with its ring of integers.
#[derive(Debug)]
pub struct CubicField {
    pub radicand: Radicand,
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
    pub species: Species,
    /// `t` in `ω_i = basis[i] / t`, with `basis[i]` given over `(1, θ, θ')`.
    pub basis_denominator: u32,
    pub basis: [[BigInt; 3]; 3],
    pub discriminant: BigInt,
    /// `(c0, c1)` in `ν = (c0 + c1 θ + θ') / 3` for species I.
    nu: (i64, i64),
    /// `ω_i ω_j = Σ_k table[i][j][k] ω_k`.
    table: [[[BigInt; 3]; 3]; 3],
    basis_f64: [[f64; 3]; 3],
    radicals: [OnceLock<(Ball, Ball)>; PRECISION_LADDER.len()],
}

/// Product in the auxiliary basis `(1, θ, θ')`.
fn mul_aux(a: &BigInt, b: &BigInt, x: &[BigInt; 3], y: &[BigInt; 3]) -> [BigInt; 3] {
    let ab = a * b;
    [
        &x[0] * &y[0] + &ab * (&x[1] * &y[2] + &x[2] * &y[1]),
        &x[0] * &y[1] + &x[1] * &y[0] + a * &x[2] * &y[2],
        &x[0] * &y[2] + &x[2] * &y[0] + b * &x[1] * &y[1],
    ]
}

/// Characteristic polynomial `x^3 - c2 x^2 + c1 x - c0` of `(u + v θ + w θ') / s`,
/// returned as `(c2, c1, c0)`.
fn char_poly_aux(a: &BigInt, b: &BigInt, x: &[BigInt; 3], s: &BigInt) -> [BigRational; 3] {
    let (u, v, w) = (&x[0], &x[1], &x[2]);
    let ab = a * b;
    // multiplication matrix over (1, θ, θ')
    let m = [[u.clone(), &ab * w, &ab * v], [v.clone(), u.clone(), a * w], [w.clone(), b * v, u.clone()]];
    let tr = &m[0][0] + &m[1][1] + &m[2][2];
    let minors = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] + &m[0][0] * &m[2][2] - &m[0][2] * &m[2][0]
        + &m[1][1] * &m[2][2]
        - &m[1][2] * &m[2][1];
    let det = crate::linalg::det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    [
        BigRational::new(tr, s.clone()),
        BigRational::new(minors, s * s),
        BigRational::new(det, s * s * s),
    ]
}

/// Build `L = Q(∛d)` for a cubic radicand.
pub fn build_field(r: &Radicand) -> Result<CubicField> {
    let (a_u, b_u) = r.ab()?;
    let species = r.species3()?;
    let (a, b) = (BigInt::from(a_u), BigInt::from(b_u));
    let d = &a * &b * &b;
    let three = big(3);
    let (t, nu, basis) = match species {
        Species::TypeII => (1u32, (0, 0), [[big(1), big(0), big(0)], [big(0), big(1), big(0)], [big(0), big(0), big(1)]]),
        Species::TypeI => {
            let nu = (0..3)
                .flat_map(|c0| (0..3).map(move |c1| (c0, c1)))
                .find(|&(c0, c1)| {
                    char_poly_aux(&a, &b, &[big(c0), big(c1), big(1)], &three)
                        .iter()
                        .all(|c| c.is_integer())
                })
                .ok_or_else(|| Error::InternalInconsistency(format!("no integral ν for d = {d}")))?;
            (3, nu, [[big(3), big(0), big(0)], [big(0), big(3), big(0)], [big(nu.0), big(nu.1), big(1)]])
        }
    };
    let ab = &a * &b;
    let discriminant = match species {
        Species::TypeI => -big(3) * &ab * &ab,
        Species::TypeII => -big(27) * &ab * &ab,
    };
    let mut field = CubicField {
        radicand: r.clone(),
        a,
        b,
        d,
        species,
        basis_denominator: t,
        basis,
        discriminant,
        nu,
        table: Default::default(),
        basis_f64: [[0.0; 3]; 3],
        radicals: Default::default(),
    };
    let tb = big(t as i64);
    for i in 0..3 {
        for j in 0..3 {
            let prod = mul_aux(&field.a, &field.b, &field.basis[i], &field.basis[j]);
            // prod = t^2 (ω_i ω_j) over the auxiliary basis
            let x = field.from_aux(&prod, &(&tb * &tb));
            if !x.is_integral() {
                return Err(Error::InternalInconsistency("basis is not a ring".into()));
            }
            field.table[i][j] = x.coords;
        }
    }
    let (r1, r2) = (field.d_f64().cbrt(), (field.a_f64().powi(2) * field.b_f64()).cbrt());
    let (c, s) = (-0.5f64, 3f64.sqrt() / 2.0);
    for i in 0..3 {
        let v: Vec<f64> = field.basis[i].iter().map(|x| crate::ball::big_to_f64(x) / t as f64).collect();
        // θ ↦ ω ρ1, θ' ↦ ω^2 ρ2 in the complex embedding
        field.basis_f64[i] = [v[0] + v[1] * r1 + v[2] * r2, v[0] + (v[1] * r1 + v[2] * r2) * c, (v[1] * r1 - v[2] * r2) * s];
    }
    // the discriminant of the computed basis must match the species formula
    let computed = field.basis_discriminant();
    if computed != field.discriminant {
        return Err(Error::InternalInconsistency(format!(
            "basis discriminant {computed} differs from {}",
            field.discriminant
        )));
    }
    Ok(field)
}

impl CubicField {
    fn d_f64(&self) -> f64 {
        crate::ball::big_to_f64(&self.d)
    }
    fn a_f64(&self) -> f64 {
        crate::ball::big_to_f64(&self.a)
    }
    fn b_f64(&self) -> f64 {
        crate::ball::big_to_f64(&self.b)
    }

    /// `det(Tr(ω_i ω_j))`.
    pub fn basis_discriminant(&self) -> BigInt {
        let m: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| self.trace_integral(&self.table[i][j])).collect())
            .collect();
        crate::linalg::det(&m)
    }

    fn trace_integral(&self, c: &[BigInt; 3]) -> BigInt {
        // Tr(ω_k) over the integral basis
        (0..3).map(|k| &c[k] * self.trace_of_basis(k)).sum()
    }

    fn trace_of_basis(&self, k: usize) -> BigInt {
        // Tr(u + vθ + wθ') = 3u
        big(3) * &self.basis[k][0] / big(self.basis_denominator as i64)
    }

    pub fn dim(&self) -> usize {
        3
    }

    pub fn theta(&self) -> FieldElement {
        self.from_aux(&[big(0), big(1), big(0)], &big(1))
    }

    pub fn theta_prime(&self) -> FieldElement {
        self.from_aux(&[big(0), big(0), big(1)], &big(1))
    }

    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut c = [big(0), big(0), big(0)];
        c[i] = big(1);
        FieldElement::integral(c)
    }

    /// The element `(x0 + x1 θ + x2 θ') / den`.
    pub fn from_aux(&self, x: &[BigInt; 3], den: &BigInt) -> FieldElement {
        match self.species {
            Species::TypeII => FieldElement::new(x.clone(), den.clone()),
            Species::TypeI => {
                // y2 = 3 x2, y1 = x1 - c1 x2, y0 = x0 - c0 x2
                let (c0, c1) = (big(self.nu.0), big(self.nu.1));
                FieldElement::new([&x[0] - &c0 * &x[2], &x[1] - &c1 * &x[2], big(3) * &x[2]], den.clone())
            }
        }
    }

    /// Numerators `X` and denominator `D` with `x = (X0 + X1 θ + X2 θ') / D`.
    pub fn to_aux(&self, x: &FieldElement) -> ([BigInt; 3], BigInt) {
        let t = self.basis_denominator as i64;
        let mut out = [big(0), big(0), big(0)];
        for i in 0..3 {
            for k in 0..3 {
                out[k] += &x.coords[i] * &self.basis[i][k];
            }
        }
        (out, &x.denom * big(t))
    }

    pub fn from_rationals(&self, x: &[BigRational; 3]) -> FieldElement {
        let den = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let nums = x.clone().map(|q| (q * BigRational::from(den.clone())).to_integer());
        self.from_aux(&nums, &den)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut out = [big(0), big(0), big(0)];
        for i in 0..3 {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y.coords[j].is_zero() {
                    continue;
                }
                let xy = &x.coords[i] * &y.coords[j];
                for k in 0..3 {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &xy * &self.table[i][j][k];
                    }
                }
            }
        }
        FieldElement::new(out, &x.denom * &y.denom)
    }

    pub fn pow(&self, x: &FieldElement, mut n: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = x.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer matrix `M` (rows = output coordinate) with `x ω_j = Σ_k M[k][j] ω_k / denom`.
    pub fn mul_matrix(&self, x: &FieldElement) -> [[BigInt; 3]; 3] {
        let mut m: [[BigInt; 3]; 3] = Default::default();
        for j in 0..3 {
            for i in 0..3 {
                for k in 0..3 {
                    m[k][j] += &x.coords[i] * &self.table[i][j][k];
                }
            }
        }
        m
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        let m = self.mul_matrix(x);
        let det = crate::linalg::det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        BigRational::new(det, x.denom.pow(3))
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        BigRational::new(self.trace_integral(&x.coords), x.denom.clone())
    }

    pub fn is_unit(&self, x: &FieldElement) -> bool {
        x.is_integral() && self.norm(x).abs().is_one()
    }

    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        let m = self.mul_matrix(x);
        let det = crate::linalg::det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        // first column of the adjugate solves M z = det e_0
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
        let z = [cof(1, 2, 1, 2), -cof(1, 2, 0, 2), cof(1, 2, 0, 1)];
        Some(FieldElement::new(z.map(|c| c * &x.denom), det))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(x, &self.inv(y)?))
    }

    /// Real embedding and one complex embedding as `f64` triples `(x', Re x'', Im x'')`.
    pub fn embed_f64(&self, x: &FieldElement) -> [f64; 3] {
        let den = crate::ball::big_to_f64(&x.denom);
        let mut out = [0.0; 3];
        for i in 0..3 {
            let c = crate::ball::big_to_f64(&x.coords[i]) / den;
            for k in 0..3 {
                out[k] += c * self.basis_f64[i][k];
            }
        }
        out
    }

    /// `(∛d, ∛(a²b))` as balls at `prec` bits.
    pub fn radical_balls(&self, prec: u32) -> (Ball, Ball) {
        let compute = || (Ball::cbrt_int(&self.d, prec), Ball::cbrt_int(&(&self.a * &self.a * &self.b), prec));
        match PRECISION_LADDER.iter().position(|&p| p == prec) {
            Some(i) => self.radicals[i].get_or_init(compute).clone(),
            None => compute(),
        }
    }

    /// `(x', x'')` under `θ ↦ ∛d` and `θ ↦ ω ∛d`, as rigorous balls.
    pub fn embed(&self, x: &FieldElement, prec: u32) -> (Ball, CBall) {
        let (num, den) = self.to_aux(x);
        let (r1, r2) = self.radical_balls(prec);
        let t1 = r1.mul_int(&num[1]);
        let t2 = r2.mul_int(&num[2]);
        let u = Ball::from_int(&num[0], prec);
        let real = u.add(&t1).add(&t2).div_int(&den);
        let om = CBall::omega(prec);
        let om2 = om.conj();
        let cx = CBall::real(u)
            .add(&om.mul_real(&t1))
            .add(&om2.mul_real(&t2))
            .div_int(&den);
        (real, cx)
    }

    /// The real embedding `x'` only.
    pub fn embed_real(&self, x: &FieldElement, prec: u32) -> Ball {
        let (num, den) = self.to_aux(x);
        let (r1, r2) = self.radical_balls(prec);
        Ball::from_int(&num[0], prec).add(&r1.mul_int(&num[1])).add(&r2.mul_int(&num[2])).div_int(&den)
    }

    pub fn structure_constants(&self) -> &[[[BigInt; 3]; 3]; 3] {
        &self.table
    }
}
