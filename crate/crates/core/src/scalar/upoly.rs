use std::fmt;

use num_traits::Zero;

use super::field::Field;
use super::poly::{Poly, Var};
use super::rational::Rational;

/// Dense univariate polynomial, coefficients from the constant term up.
/// The leading coefficient is never zero; the zero polynomial is empty.
#[derive(Clone, PartialEq)]
pub struct UPoly<F: Field> {
    c: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.fis_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn constant(a: F) -> Self {
        Self::new(vec![a])
    }

    pub fn one() -> Self {
        Self::constant(F::fone())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![F::fzero(), F::fone()])
    }

    pub fn monomial(a: F, k: usize) -> Self {
        let mut c = vec![F::fzero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| F::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::fzero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::fzero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).fadd(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).fsub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(F::fneg).collect() }
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.c.iter().map(|x| x.fmul(a)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::fzero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.fis_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].fadd(&a.fmul(b));
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &F) -> F {
        self.c.iter().rev().fold(F::fzero(), |acc, a| acc.fmul(x).fadd(a))
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.c.iter().rev().fold(Self::zero(), |acc, a| acc.mul(g).add(&Self::constant(a.clone())))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a.fmul(&F::from_i64(i as i64))).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lead().finv().expect("nonzero lead");
        self.scale(&inv)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().finv().expect("nonzero lead");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::fzero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = r[k + dd].fmul(&inv);
            if !f.fis_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].fsub(&f.fmul(dj));
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().finv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

impl UPoly<Rational> {
    /// Multiplies through by the common denominator and removes the content.
    pub fn primitive(&self) -> Self {
        use super::rational::{denom_lcm, numer_gcd};
        if self.is_zero() {
            return Self::zero();
        }
        let l = Rational::from_integer(denom_lcm(&self.c));
        let scaled: Vec<Rational> = self.c.iter().map(|a| a * &l).collect();
        let g = Rational::from_integer(numer_gcd(&scaled));
        let mut p = Self::new(scaled.into_iter().map(|a| a / &g).collect());
        if p.lead() < Rational::zero() {
            p = p.neg();
        }
        p
    }
}

/// Written in the variable `t`.
impl fmt::Display for UPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Poly> = self.c.iter().map(|a| Poly::constant(a.clone())).collect();
        write!(f, "{}", Poly::from_coeffs_in(Var::T, &cs))
    }
}

impl<F: Field + fmt::Debug> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.fis_zero())
            .map(|(i, a)| format!("({a:?})*t^{i}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
