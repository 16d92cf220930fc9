//! Dyadic floating values and complex midpoint-radius balls.
//!
//! Every ball operation returns a ball that contains the exact result of the
//! operation applied to any points of the operand balls. Midpoints are
//! rounded to the ball's working precision and the rounding error is folded
//! into the radius, which is itself rounded upward.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bits kept in radii. Radii only need a few significant bits.
const RAD_BITS: u64 = 30;

/// An exact value `mant * 2^exp`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1i64 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if exponent == 0 {
            (fraction as i64, -1074)
        } else {
            ((fraction | (1u64 << 52)) as i64, exponent - 1075)
        };
        Dyadic { mant: BigInt::from(sign * m), exp: e }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = bits - 60;
        let (m, e) = if shift > 0 {
            (&self.mant >> (shift as usize), self.exp + shift)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let half = (e / 2) as i32;
        mf * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    /// The largest dyadic `k * 2^exp` not exceeding `r`.
    pub fn floor_rational(r: &BigRational, exp: i64) -> Self {
        let (n, d) = (r.numer(), r.denom());
        let scaled = if exp <= 0 {
            let num = n << ((-exp) as usize);
            num_integer::Integer::div_floor(&num, d)
        } else {
            let den = d << (exp as usize);
            num_integer::Integer::div_floor(n, &den)
        };
        Dyadic { mant: scaled, exp }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as usize))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.mant.is_zero() {
            return other.clone();
        }
        if other.mant.is_zero() {
            return self.clone();
        }
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => Dyadic { mant: &self.mant + &other.mant, exp: self.exp },
            Ordering::Greater => {
                let m = &self.mant << ((self.exp - other.exp) as usize);
                Dyadic { mant: m + &other.mant, exp: other.exp }
            }
            Ordering::Less => {
                let m = &other.mant << ((other.exp - self.exp) as usize);
                Dyadic { mant: m + &self.mant, exp: self.exp }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Magnitude exponent: `|x| < 2^magnitude()`. Zero gives `i64::MIN`.
    pub fn magnitude(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    /// Round toward minus infinity to `prec` significant bits.
    /// Returns the rounded value and an upper bound on the error.
    pub fn round(&self, prec: u32) -> (Self, Self) {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return (self.clone(), Dyadic::zero());
        }
        let shift = bits - prec as u64;
        let m = &self.mant >> (shift as usize);
        let e = self.exp + shift as i64;
        (Dyadic { mant: m, exp: e }, Dyadic::pow2(e))
    }

    /// Round a nonnegative value upward to a few significant bits.
    pub fn round_up(&self) -> Self {
        debug_assert!(!self.is_negative());
        let bits = self.mant.bits();
        if bits <= RAD_BITS {
            return self.clone();
        }
        let shift = bits - RAD_BITS;
        let m = (&self.mant >> (shift as usize)) + 1;
        Dyadic { mant: m, exp: self.exp + shift as i64 }
    }

    /// Quotient rounded to about `prec` bits; returns (q, error bound).
    pub fn div(&self, other: &Self, prec: u32) -> (Self, Self) {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let k = (prec as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let num = &self.mant << (k as usize);
        let q = num_integer::Integer::div_floor(&num, &other.mant);
        let e = self.exp - other.exp - k;
        (Dyadic { mant: q, exp: e }, Dyadic::pow2(e))
    }

    /// Upper bound on the square root of a nonnegative value.
    pub fn sqrt_upper(&self) -> Self {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (m, e) = self.sqrt_prep();
        Dyadic { mant: m.sqrt() + 1, exp: e / 2 }
    }

    /// Lower bound on the square root of a nonnegative value.
    pub fn sqrt_lower(&self) -> Self {
        debug_assert!(!self.is_negative());
        if self.is_zero() {
            return Dyadic::zero();
        }
        let (m, e) = self.sqrt_prep();
        Dyadic { mant: m.sqrt(), exp: e / 2 }
    }

    fn sqrt_prep(&self) -> (BigInt, i64) {
        // widen to at least 128 bits with an even exponent
        let mut m = self.mant.clone();
        let mut e = self.exp;
        let widen = (128i64 - m.bits() as i64).max(0);
        m <<= widen as usize;
        e -= widen;
        if e.rem_euclid(2) != 0 {
            m <<= 1;
            e -= 1;
        }
        (m, e)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// A disc in the complex plane: midpoint `re + i*im` and radius `rad`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
    pub prec: u32,
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.17} {:+.17}i ± {:.3e})",
            self.re.to_f64(),
            self.im.to_f64(),
            self.rad.to_f64()
        )
    }
}

impl ComplexBall {
    pub fn exact(re: Dyadic, im: Dyadic, prec: u32) -> Self {
        ComplexBall { re, im, rad: Dyadic::zero(), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Dyadic::from_int(1), Dyadic::zero(), prec)
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        Self::exact(Dyadic::from_f64(z.re), Dyadic::from_f64(z.im), prec)
    }

    /// Ball around a rational value with radius at most `2^-prec` relative
    /// to the value, and never more than `2^-prec` absolute for |r| < 1.
    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let mag = r.numer().bits() as i64 - r.denom().bits() as i64;
        let exp = mag.min(0) - prec as i64 - 2;
        let d = Dyadic::floor_rational(r, exp);
        let rad = if d.to_rational() == *r { Dyadic::zero() } else { Dyadic::pow2(exp) };
        ComplexBall { re: d, im: Dyadic::zero(), rad, prec }
    }

    pub fn mid_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexBall { prec, ..self.clone() }
    }

    fn finish(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let (re, e1) = re.round(prec);
        let (im, e2) = im.round(prec);
        let rad = rad.add(&e1).add(&e2).round_up();
        ComplexBall { re, im, rad, prec }
    }

    /// Upper bound for |mid|.
    pub fn mid_abs_upper(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt_upper()
    }

    /// Lower bound for |mid|.
    pub fn mid_abs_lower(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt_lower()
    }

    /// `|re| + |im|`, a cheap upper bound for |mid|.
    pub fn mid_abs_cheap_upper(&self) -> Dyadic {
        self.re.abs().add(&self.im.abs())
    }

    /// `max(|re|, |im|)`, a cheap lower bound for |mid|.
    pub fn mid_abs_cheap_lower(&self) -> Dyadic {
        self.re.abs().max(self.im.abs())
    }

    /// Upper bound for |z| over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        self.mid_abs_upper().add(&self.rad).round_up()
    }

    /// Lower bound for |z| over the ball (zero if the ball contains 0).
    pub fn abs_lower(&self) -> Dyadic {
        let l = self.mid_abs_lower().sub(&self.rad);
        if l.is_negative() {
            Dyadic::zero()
        } else {
            l
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::finish(self.re.add(&o.re), self.im.add(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::finish(self.re.sub(&o.re), self.im.sub(&o.im), self.rad.add(&o.rad), prec)
    }

    pub fn neg(&self) -> Self {
        ComplexBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let rad = if self.rad.is_zero() && o.rad.is_zero() {
            Dyadic::zero()
        } else {
            self.mid_abs_cheap_upper()
                .mul(&o.rad)
                .add(&o.mid_abs_cheap_upper().mul(&self.rad))
                .add(&self.rad.mul(&o.rad))
        };
        Self::finish(re, im, rad, prec)
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        self.mul(&ComplexBall::from_rational(r, self.prec))
    }

    /// `None` when the ball contains zero.
    pub fn inv(&self) -> Option<Self> {
        let prec = self.prec;
        let mid_lower = self.mid_abs_cheap_lower();
        let lower = mid_lower.sub(&self.rad);
        if lower.is_negative() || lower.is_zero() {
            return None;
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let (qr, er) = self.re.div(&norm, prec + 4);
        let (qi, ei) = self.im.neg().div(&norm, prec + 4);
        // |1/(x+d) - 1/x| <= r / (|x| (|x| - r))
        let rad = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let denom = mid_lower.mul(&lower);
            let (q, e) = self.rad.div(&denom, 40);
            q.add(&e)
        };
        Some(Self::finish(qr, qi, rad.add(&er).add(&ei), prec))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|oi| self.mul(&oi))
    }

    /// Squared distance between midpoints, exact.
    pub fn mid_dist2(&self, o: &Self) -> Dyadic {
        let dr = self.re.sub(&o.re);
        let di = self.im.sub(&o.im);
        dr.mul(&dr).add(&di.mul(&di))
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        let r = self.rad.add(&o.rad);
        self.mid_dist2(o) <= r.mul(&r)
    }

    /// True when `o` lies entirely inside `self`.
    pub fn contains(&self, o: &Self) -> bool {
        if o.rad > self.rad {
            return false;
        }
        let r = self.rad.sub(&o.rad);
        self.mid_dist2(o) <= r.mul(&r)
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.contains(&ComplexBall::exact(re.clone(), im.clone(), self.prec))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexBall::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horner evaluation of `sum coeffs[i] z^i`.
    pub fn eval_poly(coeffs: &[ComplexBall], z: &ComplexBall) -> ComplexBall {
        let mut acc = ComplexBall::zero(z.prec);
        for c in coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }
}
