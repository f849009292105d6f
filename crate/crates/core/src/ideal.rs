//! Fractional ideals of `O_L` in column Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{CubicField, FieldElement};
use crate::linalg::{hnf_columns, solve_upper};

/// `I = H Z^3 / denom` over the integral basis.
///
/// `hnf[i][j]` is row `i`, column `j`; the matrix is upper triangular with
/// positive diagonal and each off-diagonal entry reduced modulo the
/// diagonal entry of its row. The representation is canonical:
/// `gcd(content(H), denom) = 1`, so derived equality is ideal equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FracIdeal {
    pub hnf: [[BigInt; 3]; 3],
    pub denom: BigInt,
}

impl FracIdeal {
    /// Canonical ideal spanned by the integer columns over `denom`; `None` if
    /// the columns do not span a full-rank lattice.
    pub fn from_columns(cols: &[Vec<BigInt>], denom: BigInt) -> Option<FracIdeal> {
        let h = hnf_columns(3, cols)?;
        let mut g = denom.abs();
        for c in &h {
            for x in c {
                g = g.gcd(x);
            }
        }
        let hnf = std::array::from_fn(|i| std::array::from_fn(|j| &h[j][i] / &g));
        Some(FracIdeal { hnf, denom: denom.abs() / g })
    }

    pub fn unit() -> FracIdeal {
        Self::from_int(&BigInt::one())
    }

    pub fn from_int(n: &BigInt) -> FracIdeal {
        let z = BigInt::zero;
        let n = n.abs();
        FracIdeal { hnf: [[n.clone(), z(), z()], [z(), n.clone(), z()], [z(), z(), n]], denom: BigInt::one() }
            .canonical()
    }

    fn canonical(self) -> FracIdeal {
        let cols: Vec<Vec<BigInt>> = (0..3).map(|j| (0..3).map(|i| self.hnf[i][j].clone()).collect()).collect();
        Self::from_columns(&cols, self.denom).expect("full rank")
    }

    /// The ideal generated by the given elements; `None` if all are zero.
    pub fn from_generators(f: &CubicField, gens: &[FieldElement]) -> Option<FracIdeal> {
        let den = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denom));
        let mut cols = Vec::with_capacity(3 * gens.len());
        for g in gens {
            let scaled = FieldElement::integral(g.coords.clone().map(|c| c * (&den / &g.denom)));
            let m = f.mul_matrix(&scaled);
            for j in 0..3 {
                cols.push((0..3).map(|k| m[k][j].clone()).collect());
            }
        }
        Self::from_columns(&cols, den)
    }

    pub fn principal(f: &CubicField, x: &FieldElement) -> Option<FracIdeal> {
        Self::from_generators(f, std::slice::from_ref(x))
    }

    /// Integral column `j` of `hnf` (the `j`-th basis vector times `denom`).
    pub fn column(&self, j: usize) -> [BigInt; 3] {
        std::array::from_fn(|i| self.hnf[i][j].clone())
    }

    /// Z-basis of the ideal as field elements.
    pub fn basis(&self) -> [FieldElement; 3] {
        std::array::from_fn(|j| FieldElement::new(self.column(j), self.denom.clone()))
    }

    pub fn norm(&self) -> BigRational {
        let diag: BigInt = (0..3).map(|i| &self.hnf[i][i]).product();
        BigRational::new(diag, self.denom.pow(3))
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let scaled: Vec<BigInt> = x.coords.iter().map(|c| c * &self.denom).collect();
        if scaled.iter().any(|c| !(c % &x.denom).is_zero()) {
            return false;
        }
        let v: Vec<BigInt> = scaled.iter().map(|c| c / &x.denom).collect();
        let cols: Vec<Vec<BigInt>> = (0..3).map(|j| self.column(j).to_vec()).collect();
        solve_upper(&cols, &v).is_some()
    }

    /// `I + J`.
    pub fn add(&self, o: &FracIdeal) -> FracIdeal {
        let den = self.denom.lcm(&o.denom);
        let (s1, s2) = (&den / &self.denom, &den / &o.denom);
        let mut cols = Vec::with_capacity(6);
        for j in 0..3 {
            cols.push(self.column(j).iter().map(|x| x * &s1).collect());
            cols.push(o.column(j).iter().map(|x| x * &s2).collect());
        }
        Self::from_columns(&cols, den).expect("sum of full-rank lattices")
    }
}

pub fn ideal_mul(f: &CubicField, x: &FracIdeal, y: &FracIdeal) -> FracIdeal {
    let mut cols = Vec::with_capacity(9);
    for i in 0..3 {
        let xi = FieldElement::integral(x.column(i));
        for j in 0..3 {
            let p = f.mul(&xi, &FieldElement::integral(y.column(j)));
            cols.push(p.coords.to_vec());
        }
    }
    FracIdeal::from_columns(&cols, &x.denom * &y.denom).expect("product of nonzero ideals")
}

/// `x I` for a nonzero element `x`.
pub fn ideal_mul_elem(f: &CubicField, ideal: &FracIdeal, x: &FieldElement) -> FracIdeal {
    let mut cols = Vec::with_capacity(3);
    let xi = FieldElement::integral(x.coords.clone());
    for j in 0..3 {
        let p = f.mul(&xi, &FieldElement::integral(ideal.column(j)));
        cols.push(p.coords.to_vec());
    }
    FracIdeal::from_columns(&cols, &ideal.denom * &x.denom).expect("nonzero element")
}

pub fn ideal_pow(f: &CubicField, x: &FracIdeal, mut n: u32) -> FracIdeal {
    let mut acc = FracIdeal::unit();
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = ideal_mul(f, &acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = ideal_mul(f, &base, &base);
        }
    }
    acc
}

pub fn ideal_norm(x: &FracIdeal) -> BigRational {
    x.norm()
}
