//! Relative minima of lattices in a complex cubic field (Voronoi).
//!
//! A lattice `M ⊂ L` containing 1 is *reduced* when no nonzero element
//! `x ∈ M` has both `|x'| < 1` and `|x''| < 1`. Reduced lattices of one
//! ideal class form a single cycle under `M ↦ φ^{-1} M`, where `φ` is the
//! adjacent minimum: the element of `M` with `|φ''| < 1` and the smallest
//! real embedding above 1. Walking the cycle of `O_L` produces the
//! fundamental unit, and membership in that cycle decides principality.
//!
//! Candidate generation uses floating-point LLL and Fincke-Pohst on a
//! region that provably contains every admissible element (with a safety
//! margin); every comparison that selects an answer is decided exactly with
//! ball arithmetic, using `|x''|^2 = |N(x)| / |x'|`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Signed;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::field::{decide, CubicField, FieldElement};
use crate::ideal::{ideal_mul_elem, FracIdeal};
use crate::linalg::{lll, short_vectors};

const MARGIN: f64 = 1e-6;
const ENUMERATION_CAP: usize = 2_000_000;
/// Upper limit on cycle length before giving up.
pub const MAX_CYCLE: usize = 1_000_000;

fn norm_ball(n: &BigRational, prec: u32) -> Ball {
    Ball::from_ratio(&n.numer().abs(), n.denom(), prec)
}

/// `|x'|` as a ball, once its sign is decided.
fn abs_real(f: &CubicField, x: &FieldElement, prec: u32) -> Option<Ball> {
    let b = f.embed_real(x, prec);
    match b.sign()? {
        Ordering::Less => Some(b.neg()),
        Ordering::Greater => Some(b),
        Ordering::Equal => None,
    }
}

/// Exact comparison of `|x'|` with `|y'|`; `x ≠ ±y` is required.
pub fn cmp_real(f: &CubicField, x: &FieldElement, y: &FieldElement) -> Result<Ordering> {
    decide("comparing real embeddings", |p| abs_real(f, x, p)?.cmp_ball(&abs_real(f, y, p)?))
}

/// Exact comparison of `|x'|` with the rational `c > 0`.
pub fn cmp_real_const(f: &CubicField, x: &FieldElement, c: &BigRational) -> Result<Ordering> {
    decide("comparing a real embedding", |p| abs_real(f, x, p)?.cmp_ball(&norm_ball(c, p)))
}

/// Exact comparison of `|x''|` with `|y''|`; `x ≠ ±y` is required.
pub fn cmp_complex(f: &CubicField, x: &FieldElement, y: &FieldElement) -> Result<Ordering> {
    let (nx, ny) = (f.norm(x), f.norm(y));
    // |x''|^2 / |y''|^2 = |N x| |y'| / (|N y| |x'|)
    decide("comparing complex embeddings", |p| {
        let lhs = norm_ball(&nx, p).mul(&abs_real(f, y, p)?);
        let rhs = norm_ball(&ny, p).mul(&abs_real(f, x, p)?);
        lhs.cmp_ball(&rhs)
    })
}

/// Exact comparison of `|x''|` with 1.
pub fn cmp_complex_one(f: &CubicField, x: &FieldElement) -> Result<Ordering> {
    let nx = f.norm(x);
    decide("comparing a complex embedding with 1", |p| norm_ball(&nx, p).cmp_ball(&abs_real(f, x, p)?))
}

fn lattice_vectors(f: &CubicField, m: &FracIdeal) -> [[f64; 3]; 3] {
    m.basis().map(|b| f.embed_f64(&b))
}

fn combination(m: &FracIdeal, c: &[i64]) -> FieldElement {
    let cols: [[num_bigint::BigInt; 3]; 3] = std::array::from_fn(|j| m.column(j));
    let coords = std::array::from_fn(|i| (0..3).map(|j| &cols[j][i] * c[j]).sum());
    FieldElement::new(coords, m.denom.clone())
}

/// Lattice points `x` with `(x'/s0)^2 + (|x''|/s1)^2 <= 2 (1 + margin)`,
/// one representative of each `±x` pair, with their `f64` embeddings.
fn points_in_box(f: &CubicField, m: &FracIdeal, s0: f64, s1: f64) -> Result<Vec<(FieldElement, [f64; 3])>> {
    let vecs = lattice_vectors(f, m);
    let scaled: Vec<Vec<f64>> = vecs.iter().map(|v| vec![v[0] / s0, v[1] / s1, v[2] / s1]).collect();
    let (red, t) = lll(&scaled);
    let pts = short_vectors(&red, 2.0 * (1.0 + MARGIN), ENUMERATION_CAP)
        .ok_or_else(|| Error::PrecisionExhausted("lattice enumeration exceeded its cap".into()))?;
    let mut out = Vec::with_capacity(pts.len() / 2);
    for x in pts {
        let c: Vec<i64> = (0..3).map(|j| (0..3).map(|i| x[i] * t[i][j]).sum()).collect();
        // keep the half with a positive leading coefficient
        if c.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
            continue;
        }
        let e: [f64; 3] = std::array::from_fn(|k| (0..3).map(|j| c[j] as f64 * vecs[j][k]).sum());
        out.push((combination(m, &c), e));
    }
    Ok(out)
}

fn positive(f: &CubicField, x: FieldElement) -> Result<FieldElement> {
    let s = decide("sign of a real embedding", |p| f.embed_real(&x, p).sign())?;
    Ok(if s == Ordering::Less { x.neg() } else { x })
}

/// Adjacent minimum of a reduced lattice `M`: the `φ ∈ M` with `|φ''| < 1`
/// and the least real embedding `φ' > 1`; returned with `φ' > 0`.
pub fn adjacent_minimum(f: &CubicField, m: &FracIdeal) -> Result<FieldElement> {
    let one = BigRational::from_integer(1.into());
    let mut x_bound = 2.0f64;
    loop {
        if x_bound > 1e150 {
            return Err(Error::InternalInconsistency("no adjacent minimum found".into()));
        }
        let mut best: Option<(FieldElement, f64)> = None;
        for (el, e) in points_in_box(f, m, x_bound, 1.0)? {
            let cabs = e[1].hypot(e[2]);
            if e[0].abs() < 1.0 - 1e-9 || cabs > 1.0 + 1e-9 {
                continue;
            }
            let el = positive(f, el)?;
            // ±1 is the only element with |x'| = 1 or |x''| = 1
            if el == FieldElement::one() {
                continue;
            }
            if cmp_real_const(f, &el, &one)? != Ordering::Greater || cmp_complex_one(f, &el)? != Ordering::Less {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, _)) => cmp_real(f, &el, b)? == Ordering::Less,
            };
            if better {
                best = Some((el, e[0].abs()));
            }
        }
        if let Some((b, approx)) = best {
            if approx <= x_bound * (1.0 - 1e-9) {
                return Ok(b);
            }
        }
        x_bound *= 2.0;
    }
}

/// `φ^{-1} M`.
pub fn step(f: &CubicField, m: &FracIdeal, phi: &FieldElement) -> FracIdeal {
    ideal_mul_elem(f, m, &f.inv(phi).expect("nonzero minimum"))
}

/// A relative minimum `α` of `J` and the reduced lattice `α^{-1} J`.
pub fn reduce(f: &CubicField, j: &FracIdeal) -> Result<(FieldElement, FracIdeal)> {
    let vecs = lattice_vectors(f, j);
    let mink: Vec<Vec<f64>> = vecs
        .iter()
        .map(|v| vec![v[0], v[1] * std::f64::consts::SQRT_2, v[2] * std::f64::consts::SQRT_2])
        .collect();
    let (_, t) = lll(&mink);
    let mut alpha = combination(j, &t[0]);
    'shrink: loop {
        let a = f.embed_f64(&alpha);
        let (ra, ca) = (a[0].abs(), a[1].hypot(a[2]));
        for (psi, e) in points_in_box(f, j, ra, ca)? {
            if psi == alpha || psi == alpha.neg() {
                continue;
            }
            if e[0].abs() > ra * (1.0 + 1e-9) || e[1].hypot(e[2]) > ca * (1.0 + 1e-9) {
                continue;
            }
            // ties are impossible for x ≠ ±α, so these comparisons are strict
            let r = cmp_real(f, &psi, &alpha)?;
            let c = cmp_complex(f, &psi, &alpha)?;
            if r == Ordering::Less && c == Ordering::Less {
                alpha = psi;
                continue 'shrink;
            }
        }
        break;
    }
    let alpha = positive(f, alpha)?;
    let m = ideal_mul_elem(f, j, &f.inv(&alpha).expect("nonzero"));
    Ok((alpha, m))
}

/// The reduced lattices of the class of a reduced `start`, in walking order.
pub fn cycle_of(f: &CubicField, start: &FracIdeal) -> Result<Vec<FracIdeal>> {
    let mut out = vec![start.clone()];
    let mut m = step(f, start, &adjacent_minimum(f, start)?);
    while &m != start {
        if out.len() >= MAX_CYCLE {
            return Err(Error::PrecisionExhausted("cycle of reduced lattices too long".into()));
        }
        out.push(m.clone());
        m = step(f, &m, &adjacent_minimum(f, &m)?);
    }
    Ok(out)
}

/// The cycle of `O_L` with its minima `θ_k` (`M_k = θ_k^{-1} O_L`) and the
/// fundamental unit, the first minimum beyond 1 that is a unit.
#[derive(Debug, Clone)]
pub struct Infrastructure {
    pub cycle: Vec<FracIdeal>,
    pub minima: Vec<FieldElement>,
    pub epsilon: FieldElement,
    index: HashMap<FracIdeal, usize>,
}

impl Infrastructure {
    pub fn build(f: &CubicField) -> Result<Infrastructure> {
        let unit = FracIdeal::unit();
        let mut cycle = vec![unit.clone()];
        let mut minima = vec![FieldElement::one()];
        let mut theta = FieldElement::one();
        let mut m = unit.clone();
        loop {
            let phi = adjacent_minimum(f, &m)?;
            theta = f.mul(&theta, &phi);
            m = step(f, &m, &phi);
            if m == unit {
                break;
            }
            if cycle.len() >= MAX_CYCLE {
                return Err(Error::PrecisionExhausted("principal cycle too long".into()));
            }
            cycle.push(m.clone());
            minima.push(theta.clone());
        }
        let index = cycle.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(Infrastructure { cycle, minima, epsilon: theta, index })
    }

    pub fn position(&self, m: &FracIdeal) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// A generator of `I` if it is principal.
    pub fn principal_test(&self, f: &CubicField, ideal: &FracIdeal) -> Result<Option<FieldElement>> {
        let (alpha, m) = reduce(f, ideal)?;
        let Some(k) = self.position(&m) else { return Ok(None) };
        let g = f.div(&alpha, &self.minima[k]).expect("nonzero minimum");
        if FracIdeal::principal(f, &g).as_ref() != Some(ideal) {
            return Err(Error::InternalInconsistency("generator does not generate the ideal".into()));
        }
        Ok(Some(g))
    }
}
