//! Fixed-point ball arithmetic over `BigInt`.
//!
//! A [`Ball`] stores `mid * 2^-prec` together with a radius measured in
//! units of `2^-prec`. Every operation widens the radius enough to contain
//! the exact result of the same operation applied to any points of the
//! input balls, so sign and integrality decisions taken from a ball are
//! sound. Radii are kept as `f64` and inflated slightly to absorb the
//! rounding of the radius computation itself.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const INFLATE: f64 = 1.0 + 1e-12;

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Nonnegative extended-range float `m * 2^e`, used for radii and
/// magnitude bounds so that nothing overflows at high precision.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Xf {
    m: f64,
    e: i64,
}

impl Xf {
    const ZERO: Xf = Xf { m: 0.0, e: 0 };

    fn norm(m: f64, e: i64) -> Xf {
        if m == 0.0 {
            return Xf::ZERO;
        }
        let (fm, fe) = frexp(m);
        Xf { m: fm, e: e + fe as i64 }
    }

    fn from_f64(x: f64) -> Xf {
        assert!(x >= 0.0 && x.is_finite(), "radius must be finite and nonnegative");
        Xf::norm(x, 0)
    }

    /// Upper bound on `|x|`.
    fn big_upper(x: &BigInt) -> Xf {
        Xf::big_approx(x).up()
    }

    /// Lower bound on `|x|`.
    fn big_lower(x: &BigInt) -> Xf {
        Xf::big_approx(x).down()
    }

    fn big_approx(x: &BigInt) -> Xf {
        let bits = x.bits();
        let shift = bits.saturating_sub(64);
        let top = big_to_f64(&(x.abs() >> shift));
        Xf::norm(top, shift as i64)
    }

    fn up(self) -> Xf {
        Xf::norm(self.m * INFLATE, self.e)
    }

    fn down(self) -> Xf {
        Xf::norm(self.m / INFLATE, self.e)
    }

    fn mul(self, o: Xf) -> Xf {
        Xf::norm(self.m * o.m, self.e + o.e)
    }

    fn div(self, o: Xf) -> Xf {
        assert!(o.m > 0.0);
        Xf::norm(self.m / o.m, self.e - o.e)
    }

    fn add(self, o: Xf) -> Xf {
        if self.m == 0.0 {
            return o;
        }
        if o.m == 0.0 {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = hi.e - lo.e;
        let tail = if gap > 1000 { f64::MIN_POSITIVE } else { lo.m * 2f64.powi(-(gap as i32)) };
        Xf::norm(hi.m + tail, hi.e)
    }

    /// Lower bound on `max(self - o, 0)`.
    fn sub_lower(self, o: Xf) -> Xf {
        if o.m == 0.0 {
            return self;
        }
        if self.e < o.e || (self.e == o.e && self.m <= o.m) {
            return Xf::ZERO;
        }
        let gap = self.e - o.e;
        let tail = if gap > 1000 { 0.0 } else { o.m * 2f64.powi(-(gap as i32)) };
        Xf::norm((self.m - tail).max(0.0), self.e).down()
    }

    fn shift(self, k: i64) -> Xf {
        if self.m == 0.0 {
            self
        } else {
            Xf { m: self.m, e: self.e + k }
        }
    }

    fn gt(self, o: Xf) -> bool {
        if self.m == 0.0 {
            return false;
        }
        if o.m == 0.0 {
            return true;
        }
        self.e > o.e || (self.e == o.e && self.m > o.m)
    }

    fn to_f64(self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else if self.e > 1100 {
            f64::INFINITY
        } else if self.e < -1100 {
            0.0
        } else {
            // two steps keep intermediate powers in range
            let h = self.e / 2;
            self.m * 2f64.powi(h as i32) * 2f64.powi((self.e - h) as i32)
        }
    }

    /// Smallest integer not below the value.
    fn ceil_big(self) -> BigInt {
        if self.m == 0.0 {
            return BigInt::zero();
        }
        if self.e <= 53 {
            return BigInt::from(self.to_f64().ceil() as u64);
        }
        let mant = (self.m * 2f64.powi(53)) as u64;
        (BigInt::from(mant) << (self.e - 53) as usize) + 1
    }
}

#[derive(Clone, Debug)]
pub struct Ball {
    mid: BigInt,
    /// Radius in units of `2^-prec`.
    rad: Xf,
    prec: u32,
}

fn one_ulp() -> Xf {
    Xf::from_f64(1.0)
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: Xf::ZERO, prec }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Ball { mid: n << prec, rad: Xf::ZERO, prec }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_int(&BigInt::from(n), prec)
    }

    /// `num / den` rounded to the grid.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero());
        Ball { mid: (num << prec) / den, rad: one_ulp(), prec }
    }

    /// Real cube root of a nonnegative integer.
    pub fn cbrt_int(n: &BigInt, prec: u32) -> Self {
        assert!(!n.is_negative());
        let shifted: BigInt = n << (3 * prec);
        Ball { mid: shifted.cbrt(), rad: one_ulp(), prec }
    }

    pub fn sqrt_int(n: &BigInt, prec: u32) -> Self {
        assert!(!n.is_negative());
        let shifted: BigInt = n << (2 * prec);
        Ball { mid: shifted.sqrt(), rad: one_ulp(), prec }
    }

    /// Point value from an `f64` (exact up to grid rounding).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite());
        let (m, e) = frexp(x);
        let mant = BigInt::from((m * (1u64 << 53) as f64) as i64);
        let shift = e as i64 - 53 + prec as i64;
        let mid = if shift >= 0 { mant << shift as usize } else { mant >> (-shift) as usize };
        Ball { mid, rad: one_ulp(), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_f64(&self) -> f64 {
        let v = Xf::big_approx(&self.mid).shift(-(self.prec as i64)).to_f64();
        if self.mid.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Absolute radius.
    pub fn rad_f64(&self) -> f64 {
        self.rad.shift(-(self.prec as i64)).to_f64()
    }

    pub fn abs_upper(&self) -> f64 {
        Xf::big_upper(&self.mid).add(self.rad).up().shift(-(self.prec as i64)).to_f64()
    }

    pub fn abs_lower(&self) -> f64 {
        Xf::big_lower(&self.mid).sub_lower(self.rad).shift(-(self.prec as i64)).to_f64()
    }

    /// Sign of every point of the ball, if it is uniform.
    pub fn sign(&self) -> Option<Ordering> {
        if self.mid.is_zero() && self.rad.m == 0.0 {
            return Some(Ordering::Equal);
        }
        if Xf::big_lower(&self.mid).gt(self.rad.up()) {
            Some(if self.mid.is_positive() { Ordering::Greater } else { Ordering::Less })
        } else {
            None
        }
    }

    /// `Some(Some(n))` when `n` is the only integer in the ball, `Some(None)`
    /// when the ball contains no integer, `None` when the ball is too wide
    /// to decide.
    pub fn unique_integer(&self) -> Option<Option<BigInt>> {
        let one: BigInt = BigInt::from(1) << self.prec;
        let r = self.rad.up().ceil_big() + 1;
        if &r * 2 >= one {
            return None;
        }
        let lo = &self.mid - &r;
        let hi = &self.mid + &r;
        let lo_int = ceil_div_pow2(&lo, self.prec);
        let hi_int = floor_div_pow2(&hi, self.prec);
        match lo_int.cmp(&hi_int) {
            Ordering::Greater => Some(None),
            Ordering::Equal => Some(Some(lo_int)),
            Ordering::Less => None,
        }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball { mid: &self.mid + &o.mid, rad: self.rad.add(o.rad).up(), prec: self.prec }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball { mid: &self.mid - &o.mid, rad: self.rad.add(o.rad).up(), prec: self.prec }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, rad: self.rad, prec: self.prec }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec as i64;
        let mid = (&self.mid * &o.mid) >> self.prec;
        let am = Xf::big_upper(&self.mid);
        let bm = Xf::big_upper(&o.mid);
        let cross = am.mul(o.rad).add(bm.mul(self.rad)).add(self.rad.mul(o.rad)).up();
        let rad = cross.shift(-p).add(one_ulp()).up();
        Ball { mid, rad, prec: self.prec }
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball { mid: &self.mid * k, rad: self.rad.mul(Xf::big_upper(k)).up(), prec: self.prec }
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        self.mul_int(&BigInt::from(k))
    }

    /// Division; `None` when the divisor ball may contain zero.
    pub fn div(&self, o: &Ball) -> Option<Ball> {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec as i64;
        let denom_low = Xf::big_lower(&o.mid).sub_lower(o.rad.up());
        if denom_low.m == 0.0 {
            return None;
        }
        let mid = (&self.mid << self.prec) / &o.mid;
        // |A/B - a/b| 2^p <= (r_a 2^p + (|q| + 1) r_b) / (|b| - r_b), plus truncation
        let q_abs = Xf::big_upper(&mid).add(one_ulp());
        let num = self.rad.shift(p).add(q_abs.mul(o.rad)).up();
        let rad = num.div(denom_low).up().add(one_ulp()).up();
        Some(Ball { mid, rad, prec: self.prec })
    }

    pub fn div_int(&self, k: &BigInt) -> Ball {
        assert!(!k.is_zero());
        let rad = self.rad.div(Xf::big_lower(k)).up().add(one_ulp()).up();
        Ball { mid: &self.mid / k, rad, prec: self.prec }
    }

    /// Same value with the radius replaced by `rad` absolute units.
    pub fn with_abs_radius(mut self, rad: f64) -> Ball {
        self.rad = Xf::from_f64(rad).shift(self.prec as i64).up().add(one_ulp()).up();
        self
    }

    /// `log2` of the midpoint, which must be positive.
    pub fn log2_mid(&self) -> f64 {
        let bits = self.mid.bits();
        let shift = bits.saturating_sub(60);
        let top = big_to_f64(&(&self.mid >> shift));
        top.log2() + shift as f64 - self.prec as f64
    }

    /// Sign of `self - other`, if decided.
    pub fn cmp_ball(&self, other: &Ball) -> Option<Ordering> {
        self.sub(other).sign()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.m == 0.0
    }

    /// `self * 2^e`.
    pub fn mul_pow2(&self, e: i64) -> Ball {
        if e >= 0 {
            Ball { mid: &self.mid << e as usize, rad: self.rad.shift(e), prec: self.prec }
        } else {
            let rad = self.rad.shift(e).add(one_ulp()).up();
            Ball { mid: floor_div_pow2(&self.mid, (-e) as u32), rad, prec: self.prec }
        }
    }

    /// The same value on the grid of `2^-prec`.
    pub fn with_prec(&self, prec: u32) -> Ball {
        let diff = prec as i64 - self.prec as i64;
        let b = Ball { mid: self.mid.clone(), rad: self.rad, prec };
        b.mul_pow2(diff)
    }

    /// `log2 |mid|`, or `None` for a zero midpoint.
    pub fn log2_abs_mid(&self) -> Option<f64> {
        if self.mid.is_zero() {
            return None;
        }
        let m = self.mid.abs();
        let shift = m.bits().saturating_sub(60);
        Some(big_to_f64(&(&m >> shift)).log2() + shift as f64 - self.prec as f64)
    }

    /// Drop the radius, keeping the midpoint as an exact value.
    fn strip_radius(&self) -> Ball {
        Ball { mid: self.mid.clone(), rad: Xf::ZERO, prec: self.prec }
    }
}

fn floor_div_pow2(x: &BigInt, k: u32) -> BigInt {
    // arithmetic shift rounds toward negative infinity
    x >> k
}

fn ceil_div_pow2(x: &BigInt, k: u32) -> BigInt {
    -((-x) >> k)
}

/// `x = m * 2^e` with `0.5 <= |m| < 1`.
fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 {
        return (0.0, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        // subnormal: scale into the normal range first
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = exp - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

/// Complex ball as a pair of real balls.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        let prec = re.prec;
        CBall { re, im: Ball::zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        CBall::real(Ball::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        CBall::real(Ball::from_i64(1, prec))
    }

    /// Primitive cube root of unity `(-1 + i sqrt 3) / 2`.
    pub fn omega(prec: u32) -> Self {
        let half_sqrt3 = Ball::sqrt_int(&BigInt::from(3), prec).div_int(&BigInt::from(2));
        CBall { re: Ball::from_ratio(&BigInt::from(-1), &BigInt::from(2), prec), im: half_sqrt3 }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        CBall { re: Ball::from_f64(re, prec), im: Ball::from_f64(im, prec) }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CBall {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBall { re, im }
    }

    pub fn mul_real(&self, r: &Ball) -> CBall {
        CBall { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn mul_int(&self, k: &BigInt) -> CBall {
        CBall { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn div_real(&self, r: &Ball) -> Option<CBall> {
        Some(CBall { re: self.re.div(r)?, im: self.im.div(r)? })
    }

    pub fn div_int(&self, k: &BigInt) -> CBall {
        CBall { re: self.re.div_int(k), im: self.im.div_int(k) }
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div(&self, o: &CBall) -> Option<CBall> {
        self.mul(&o.conj()).div_real(&o.norm_sqr())
    }

    pub fn pow(&self, mut k: u32) -> CBall {
        let mut base = self.clone();
        let mut acc = CBall::one(self.re.prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn abs_upper(&self) -> f64 {
        self.re.abs_upper().hypot(self.im.abs_upper())
    }

    pub fn abs_lower(&self) -> f64 {
        self.re.abs_lower().hypot(self.im.abs_lower())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    /// Largest absolute radius of the two parts.
    pub fn rad_f64(&self) -> f64 {
        self.re.rad_f64().max(self.im.rad_f64())
    }

    fn strip(&self) -> CBall {
        CBall { re: self.re.strip_radius(), im: self.im.strip_radius() }
    }

    /// All `k` complex `k`-th roots of `v`, each as a certified ball.
    ///
    /// Seeds come from `f64` polar form and are refined by Newton's method
    /// on the midpoints; the final radius is an a posteriori bound
    /// `2 |z^k - v| / (k |z|^(k-1))`, valid because the residual is checked
    /// to be tiny relative to `|z|`. Returns `None` if that check fails.
    pub fn kth_roots(v: &CBall, k: u32) -> Option<Vec<CBall>> {
        // rescale by 2^-s, s a multiple of k, so that |v| is near 1 while
        // keeping the absolute accuracy of v relative to its size
        let lg = match (v.re.log2_abs_mid(), v.im.log2_abs_mid()) {
            (None, None) => return None,
            (x, y) => x.unwrap_or(f64::MIN).max(y.unwrap_or(f64::MIN)),
        };
        let s = k as i64 * (lg / k as f64).floor() as i64;
        if s == 0 {
            return Self::kth_roots_near_one(v, k);
        }
        let prec = v.re.prec;
        let work = (prec as i64 + s.max(0)) as u32;
        let w = CBall { re: v.re.with_prec(work).mul_pow2(-s), im: v.im.with_prec(work).mul_pow2(-s) };
        let roots = Self::kth_roots_near_one(&w, k)?;
        let back = |b: &Ball| b.mul_pow2(s / k as i64).with_prec(prec);
        Some(roots.iter().map(|z| CBall { re: back(&z.re), im: back(&z.im) }).collect())
    }

    fn kth_roots_near_one(v: &CBall, k: u32) -> Option<Vec<CBall>> {
        let prec = v.re.prec;
        let (vr, vi) = v.to_f64();
        let mag = vr.hypot(vi);
        if !(mag.is_finite() && mag > 0.0) || v.abs_lower() == 0.0 {
            return None;
        }
        let arg = vi.atan2(vr);
        let root_mag = mag.powf(1.0 / k as f64);
        let kb = BigInt::from(k);
        let vmid = v.strip();
        let iterations = 2 + (prec as f64 / 40.0).log2().ceil().max(0.0) as usize + 2;
        let mut out = Vec::with_capacity(k as usize);
        for j in 0..k {
            let phi = (arg + 2.0 * std::f64::consts::PI * j as f64) / k as f64;
            let mut z = CBall::from_f64(root_mag * phi.cos(), root_mag * phi.sin(), prec);
            for _ in 0..iterations {
                // z <- ((k-1) z + v / z^(k-1)) / k
                let zk1 = z.pow(k - 1).strip();
                let q = vmid.div(&zk1)?.strip();
                z = z.mul_int(&BigInt::from(k - 1)).add(&q).div_int(&kb).strip();
            }
            let resid = z.pow(k).sub(&vmid).abs_upper() + v.rad_f64() * 2.0;
            let zabs = z.abs_lower();
            if zabs == 0.0 {
                return None;
            }
            let bound = 2.0 * resid / (k as f64 * zabs.powi(k as i32 - 1));
            if !(bound.is_finite() && bound <= zabs / (8.0 * k as f64)) {
                return None;
            }
            let re = z.re.clone().with_abs_radius(bound);
            let im = z.im.clone().with_abs_radius(bound);
            out.push(CBall { re, im });
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(b: &Ball, x: f64) -> bool {
        (b.mid_f64() - x).abs() <= b.rad_f64() + 4.0 * f64::EPSILON * x.abs()
    }

    #[test]
    fn roots_of_huge_and_tiny_values() {
        let big = CBall::real(Ball::from_int(&(BigInt::from(1) << 3000u32), 256));
        let r = CBall::kth_roots(&big, 3).unwrap();
        let expect = Ball::from_int(&(BigInt::from(1) << 1000u32), 256);
        assert!(r[0].re.sub(&expect).abs_upper() < 1e-40);
        let tiny = CBall::real(Ball::from_i64(1, 256).mul_pow2(-90));
        let r = CBall::kth_roots(&tiny, 3).unwrap();
        assert!((r[0].re.mid_f64() - 2f64.powi(-30)).abs() < 1e-40);
    }

    #[test]
    fn cube_root_of_two() {
        let r = Ball::cbrt_int(&BigInt::from(2), 128);
        assert!(contains(&r, 1.259_921_049_894_873));
        let cube = r.mul(&r).mul(&r);
        assert!(cube.sub(&Ball::from_i64(2, 128)).abs_upper() < 1e-30);
    }

    #[test]
    fn division_encloses() {
        let a = Ball::from_i64(1, 96);
        let b = Ball::from_i64(3, 96);
        let q = a.div(&b).unwrap();
        assert!(contains(&q, 1.0 / 3.0));
        assert!(q.rad_f64() < 1e-25);
    }

    #[test]
    fn unique_integer_decisions() {
        let x = Ball::from_ratio(&BigInt::from(7), &BigInt::from(2), 64);
        assert_eq!(x.unique_integer(), Some(None));
        let y = Ball::from_i64(-5, 64);
        assert_eq!(y.unique_integer(), Some(Some(BigInt::from(-5))));
        let wide = Ball::from_i64(0, 8).with_abs_radius(3.0);
        assert_eq!(wide.unique_integer(), None);
    }

    #[test]
    fn omega_cubes_to_one() {
        let w = CBall::omega(128);
        let w3 = w.pow(3);
        assert!(w3.sub(&CBall::one(128)).abs_upper() < 1e-30);
    }

    #[test]
    fn complex_cube_roots() {
        let v = CBall::from_f64(-3.0, 4.0, 160);
        let roots = CBall::kth_roots(&v, 3).unwrap();
        assert_eq!(roots.len(), 3);
        for z in roots {
            assert!(z.pow(3).sub(&v).abs_upper() < 1e-30);
        }
    }

    #[test]
    fn high_precision_large_values() {
        let prec = 2048;
        let huge = Ball::from_int(&(BigInt::from(1) << 900), prec);
        let r = Ball::cbrt_int(&BigInt::from(2), prec);
        let x = huge.mul(&r);
        assert_eq!(x.sign(), Some(Ordering::Greater));
        // relative accuracy survives far beyond the f64 exponent range
        let back = x.div(&r).unwrap().sub(&huge);
        assert!(back.abs_upper() < 1e-300);
        assert!((x.log2_mid() - 900.0 - 1.0 / 3.0).abs() < 1e-9);
    }
}
