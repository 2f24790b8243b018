use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::field::Field;
use super::rational::{square_factor, Rational};

/// Element `a + b·√d` of a quadratic extension of the rationals.
///
/// `d` is an integer that is not a perfect square. Values with `b = 0` are
/// stored with `d = 0` so that rationals embed the same way into every
/// extension and compare equal across them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadExt {
    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: BigInt::zero() }
    }

    /// Builds `a + b·√d`, pulling square factors out of `d`.
    pub fn new(a: Rational, b: Rational, d: &Rational) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        let (k, m) = square_factor(d);
        let b = b * k;
        if m == BigInt::from(1) {
            return Self::rational(a + b);
        }
        QuadExt { a, b, d: m }
    }

    /// `√d` itself.
    pub fn sqrt_of(d: &Rational) -> Self {
        Self::new(Rational::zero(), Rational::from_integer(1.into()), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Radicand; zero when the value is rational.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_real(&self) -> bool {
        !self.d.is_negative()
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a² − b²d`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    fn common_d(&self, o: &Self) -> BigInt {
        match (self.d.is_zero(), o.d.is_zero()) {
            (true, _) => o.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, o.d, "mixing different quadratic extensions");
                self.d.clone()
            }
        }
    }

    fn make(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }

    /// Exact sign of a real element.
    pub fn signum(&self) -> Ordering {
        assert!(self.is_real(), "sign of a non-real element");
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let diff = self.fsub(o);
        diff.is_real().then(|| diff.signum())
    }
}

impl Field for QuadExt {
    fn fzero() -> Self {
        Self::rational(Rational::zero())
    }
    fn fone() -> Self {
        Self::rational(Rational::from_integer(1.into()))
    }
    fn fis_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn fadd(&self, o: &Self) -> Self {
        let d = self.common_d(o);
        Self::make(&self.a + &o.a, &self.b + &o.b, d)
    }
    fn fsub(&self, o: &Self) -> Self {
        let d = self.common_d(o);
        Self::make(&self.a - &o.a, &self.b - &o.b, d)
    }
    fn fmul(&self, o: &Self) -> Self {
        let d = self.common_d(o);
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::make(a, b, d)
    }
    fn fneg(&self) -> Self {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn finv(&self) -> Option<Self> {
        if self.fis_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self::make(c.a / &n, c.b / &n, c.d))
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            f.write_str(if self.b.is_negative() { " - " } else { " + " })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        let b = self.b.abs();
        if b != Rational::from_integer(1.into()) {
            write!(f, "{b}*")?;
        }
        write!(f, "sqrt({})", self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
