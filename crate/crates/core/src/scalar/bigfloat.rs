use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::quadext::QuadExt;
use super::rational::Rational;
use crate::error::{GeomError, Result};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 4096;

/// Three-valued comparison against zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign3 {
    Negative,
    Zero,
    Positive,
    Undecided,
}

/// Dyadic number `m·2^e`.
#[derive(Clone, PartialEq, Eq)]
struct Dyadic {
    m: BigInt,
    e: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

impl Dyadic {
    fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    fn round(mut self, prec: u32, dir: Round) -> Self {
        let bits = self.m.bits() as i64;
        let excess = bits - prec as i64;
        if excess > 0 {
            let div = BigInt::one() << (excess as usize);
            self.m = match dir {
                Round::Down => self.m.div_floor(&div),
                Round::Up => -((-&self.m).div_floor(&div)),
            };
            self.e += excess;
        }
        self
    }

    fn align(&self, o: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.e.min(o.e);
        let a = &self.m << ((self.e - e) as usize);
        let b = &o.m << ((o.e - e) as usize);
        (a, b, e)
    }

    fn add(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        if self.m.is_zero() {
            return o.clone().round(prec, dir);
        }
        if o.m.is_zero() {
            return self.clone().round(prec, dir);
        }
        let (a, b, e) = self.align(o);
        Dyadic { m: a + b, e }.round(prec, dir)
    }

    fn neg(&self) -> Dyadic {
        Dyadic { m: -&self.m, e: self.e }
    }

    fn mul(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        Dyadic { m: &self.m * &o.m, e: self.e + o.e }.round(prec, dir)
    }

    fn div(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        // shift numerator so the quotient carries at least prec bits
        let shift = (prec as i64 + o.m.bits() as i64 - self.m.bits() as i64 + 2).max(0);
        let num = &self.m << (shift as usize);
        let (q, r) = num.div_mod_floor(&o.m);
        let q = if dir == Round::Up && !r.is_zero() { q + 1 } else { q };
        Dyadic { m: q, e: self.e - o.e - shift }.round(prec, dir)
    }

    fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        if self.m.is_zero() {
            return Dyadic::zero();
        }
        let mut m = self.m.clone();
        let mut e = self.e;
        let want = 2 * prec as i64 + 2 - m.bits() as i64;
        let mut shift = want.max(0);
        if (e - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        m <<= shift as usize;
        e -= shift;
        let s = m.sqrt();
        let s = if dir == Round::Up && &s * &s != m { s + 1 } else { s };
        Dyadic { m: s, e: e / 2 }.round(prec, dir)
    }

    fn cmp(&self, o: &Dyadic) -> Ordering {
        let (a, b, _) = self.align(o);
        a.cmp(&b)
    }

    fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << (self.e as usize))
        } else {
            Rational::new(self.m.clone(), BigInt::one() << ((-self.e) as usize))
        }
    }

    fn from_rational(r: &Rational, prec: u32, dir: Round) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let n = r.numer();
        let d = r.denom();
        if d.is_one() {
            return Dyadic { m: n.clone(), e: 0 }.round(prec, dir);
        }
        Dyadic { m: n.clone(), e: 0 }.div(&Dyadic { m: d.clone(), e: 0 }, prec, dir)
    }

    fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        let cut = (bits - 60).max(0);
        let m = (&self.m >> (cut as usize)).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.e + cut).clamp(-2000, 2000) as i32)
    }
}

/// Certified real interval `[lo, hi]` with dyadic endpoints rounded outward
/// to a working precision in bits.
#[derive(Clone)]
pub struct BigFloat {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl BigFloat {
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        BigFloat {
            lo: Dyadic::from_rational(r, prec, Round::Down),
            hi: Dyadic::from_rational(r, prec, Round::Up),
            prec,
        }
    }

    /// Encloses the rational interval `[lo, hi]`.
    pub fn from_bounds(lo: &Rational, hi: &Rational, prec: u32) -> Self {
        assert!(lo <= hi, "empty interval");
        BigFloat { lo: Dyadic::from_rational(lo, prec, Round::Down), hi: Dyadic::from_rational(hi, prec, Round::Up), prec }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()), prec)
    }

    /// Encloses a real element of a quadratic extension.
    pub fn from_quad(q: &QuadExt, prec: u32) -> Self {
        let a = Self::from_rational(q.a(), prec);
        if q.is_rational() {
            return a;
        }
        let d = Self::from_rational(&Rational::from_integer(q.d().clone()), prec);
        let b = Self::from_rational(q.b(), prec);
        a.add(&b.mul(&d.sqrt().expect("real extension")))
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    /// Largest absolute value in the interval.
    pub fn magnitude(&self) -> Rational {
        let a = self.lo().abs();
        let b = self.hi().abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo() <= r && r <= &self.hi()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.m.sign() != Sign::Plus && self.hi.m.sign() != Sign::Minus
    }

    pub fn sign(&self) -> Sign3 {
        if self.lo.m.is_positive() {
            Sign3::Positive
        } else if self.hi.m.is_negative() {
            Sign3::Negative
        } else if self.lo.m.is_zero() && self.hi.m.is_zero() {
            Sign3::Zero
        } else {
            Sign3::Undecided
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        BigFloat { lo: self.lo.add(&o.lo, p, Round::Down), hi: self.hi.add(&o.hi, p, Round::Up), prec: p }
    }

    pub fn neg(&self) -> Self {
        BigFloat { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lows: Vec<Dyadic> = pairs.iter().map(|(a, b)| a.mul(b, p, Round::Down)).collect();
        let highs: Vec<Dyadic> = pairs.iter().map(|(a, b)| a.mul(b, p, Round::Up)).collect();
        let lo = lows.into_iter().min_by(|a, b| a.cmp(b)).unwrap();
        let hi = highs.into_iter().max_by(|a, b| a.cmp(b)).unwrap();
        BigFloat { lo, hi, prec: p }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.contains_zero() {
            BigFloat { lo: Dyadic::zero(), hi: m.hi, prec: m.prec }
        } else {
            m
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(GeomError::IntervalDivision);
        }
        let one = Dyadic { m: BigInt::one(), e: 0 };
        let p = self.prec;
        Ok(BigFloat { lo: one.div(&self.hi, p, Round::Down), hi: one.div(&self.lo, p, Round::Up), prec: p })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Square root; the negative part of an interval straddling zero is
    /// clipped, a wholly negative interval is an error.
    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.m.is_negative() {
            return Err(GeomError::Undecidable(self.prec));
        }
        let p = self.prec;
        let lo = if self.lo.m.is_positive() { self.lo.sqrt(p, Round::Down) } else { Dyadic::zero() };
        Ok(BigFloat { lo, hi: self.hi.sqrt(p, Round::Up), prec: p })
    }

    pub fn abs(&self) -> Self {
        match self.sign() {
            Sign3::Negative => self.neg(),
            Sign3::Positive | Sign3::Zero => self.clone(),
            Sign3::Undecided => {
                let hi = if self.hi.cmp(&self.lo.neg()) == Ordering::Less { self.lo.neg() } else { self.hi.clone() };
                BigFloat { lo: Dyadic::zero(), hi, prec: self.prec }
            }
        }
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    /// Sign of `self − o`.
    pub fn compare(&self, o: &Self) -> Sign3 {
        self.sub(o).sign()
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]@{}", self.lo.to_f64(), self.hi.to_f64(), self.prec)
    }
}

/// Runs `f` at increasing precision until it returns a decision, doubling
/// from `start` up to [`MAX_PRECISION`].
pub fn certify<T>(start: u32, mut f: impl FnMut(u32) -> Option<T>) -> Result<(T, u32)> {
    let mut prec = start.max(16);
    loop {
        if let Some(v) = f(prec) {
            return Ok((v, prec));
        }
        if prec >= MAX_PRECISION {
            return Err(GeomError::Undecidable(prec));
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

/// Three-way test of a list of enclosures against zero with the tolerance
/// `2^(−p/2)`: `Some(true)` when every value lies inside it, `Some(false)`
/// when some value is certified outside, `None` when undecided.
pub fn within_tolerance(vals: &[BigFloat], prec: u32) -> Option<bool> {
    let tol = BigFloat::from_rational(&Rational::new(BigInt::one(), BigInt::one() << (prec / 2) as usize), prec);
    let mut all_inside = true;
    for v in vals {
        match v.abs().compare(&tol) {
            Sign3::Negative => {}
            Sign3::Positive => return Some(false),
            _ => all_inside = false,
        }
    }
    all_inside.then_some(true)
}
