use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{denom_lcm, numer_gcd, Rational};
use super::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    /// Auxiliary parameter used during elimination.
    T = 3,
}

impl Var {
    pub const XYZ: [Var; 3] = [Var::X, Var::Y, Var::Z];
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z', 't'][self as usize]
    }
}

/// Exponent vector over `(x, y, z, t)`.
pub type Monomial = [u32; 4];

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn mono_div(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let mut out = [0; 4];
    for i in 0..4 {
        out[i] = a[i].checked_sub(b[i])?;
    }
    Some(out)
}

fn mono_deg(a: &Monomial) -> u32 {
    a.iter().sum()
}

/// Graded order: total degree first, then lexicographic with x > y > z > t.
fn glex(a: &Monomial, b: &Monomial) -> Ordering {
    mono_deg(a).cmp(&mono_deg(b)).then_with(|| a.cmp(b))
}

/// Sparse polynomial in up to four variables with rational coefficients.
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0; 4])
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 4];
        m[v.index()] = 1;
        Self::term(Rational::one(), m)
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    /// Linear form `a·x + b·y + c·z`.
    pub fn linear(c: &[Rational; 3]) -> Self {
        let mut p = Poly::zero();
        for (v, a) in Var::XYZ.iter().zip(c) {
            p.add_term(a.clone(), {
                let mut m = [0; 4];
                m[v.index()] = 1;
                m
            });
        }
        p
    }

    /// Quadratic form `XᵀMX` of a symmetric matrix.
    pub fn quadratic_form(m: &[[Rational; 3]; 3]) -> Self {
        let mut p = Poly::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut mono = [0; 4];
                mono[i] += 1;
                mono[j] += 1;
                p.add_term(m[i][j].clone(), mono);
            }
        }
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(c, m);
        }
        p
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == [0; 4])
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(&[0; 4]))
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_deg).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m[v.index()]).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms.
    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m[v.index()]).min().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(mono_deg);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(m, a)| (mono_mul(m, mono), a.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Evaluates with `(x, y, z, t)` fixed.
    pub fn eval(&self, pt: &[Rational; 4]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for i in 0..4 {
                if m[i] > 0 {
                    v *= num_traits::pow(pt[i].clone(), m[i] as usize);
                }
            }
            s += v;
        }
        s
    }

    pub fn eval3(&self, pt: &[Rational; 3]) -> Rational {
        self.eval(&[pt[0].clone(), pt[1].clone(), pt[2].clone(), Rational::zero()])
    }

    /// Evaluation generic over any field, with `t` set to zero.
    pub fn eval3_in<F: super::Field>(&self, pt: &[F; 3]) -> F {
        let mut s = F::fzero();
        for (m, c) in &self.terms {
            let mut v = F::from_rational(c);
            for i in 0..3 {
                for _ in 0..m[i] {
                    v = v.fmul(&pt[i]);
                }
            }
            s = s.fadd(&v);
        }
        s
    }

    /// Replaces variable `v` by the rational `a`.
    pub fn subs_value(&self, v: Var, a: &Rational) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm[v.index()];
            mm[v.index()] = 0;
            out.add_term(c * num_traits::pow(a.clone(), e as usize), mm);
        }
        out
    }

    /// Simultaneous substitution of all four variables by polynomials.
    pub fn compose(&self, images: &[Poly; 4]) -> Self {
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one()]; 4];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for i in 0..4 {
                let e = m[i] as usize;
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][e];
            }
            out = &out + &term;
        }
        out
    }

    /// Substitutes `(x, y, z)` and leaves `t` alone.
    pub fn compose3(&self, images: &[Poly; 3]) -> Self {
        self.compose(&[images[0].clone(), images[1].clone(), images[2].clone(), Poly::t()])
    }

    /// Linear change of coordinates `X ↦ M·X`, i.e. returns `p(M·X)`.
    pub fn linear_change(&self, m: &[[Rational; 3]; 3]) -> Self {
        let rows = [Poly::linear(&m[0]), Poly::linear(&m[1]), Poly::linear(&m[2])];
        self.compose3(&rows)
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m[v.index()];
            if e > 0 {
                let mut mm = *m;
                mm[v.index()] -= 1;
                out.add_term(c * Rational::from_integer(e.into()), mm);
            }
        }
        out
    }

    /// Coefficients as a polynomial in `v`: entry `k` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm[v.index()] as usize;
            mm[v.index()] = 0;
            out[e].add_term(c.clone(), mm);
        }
        out
    }

    pub fn from_coeffs_in(v: Var, cs: &[Poly]) -> Self {
        let mut out = Poly::zero();
        for (k, c) in cs.iter().enumerate() {
            let mut mono = [0; 4];
            mono[v.index()] = k as u32;
            out = &out + &c.mul_monomial(&mono);
        }
        out
    }

    /// Leading coefficient with respect to `v` (a polynomial in the rest).
    pub fn lead_in(&self, v: Var) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    pub fn to_upoly(&self, v: Var) -> Option<UPoly<Rational>> {
        let cs = self.coeffs_in(v);
        cs.iter().map(|c| c.as_constant()).collect::<Option<Vec<_>>>().map(UPoly::new)
    }

    pub fn from_upoly(p: &UPoly<Rational>, v: Var) -> Self {
        let mut out = Poly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = [0; 4];
            m[v.index()] = k as u32;
            out.add_term(c.clone(), m);
        }
        out
    }

    /// Homogenizes a polynomial in `x, y` to degree `d` with `z`.
    pub fn homogenize_z(&self, d: u32) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            mm[2] = d - (m[0] + m[1]);
            (mm, c.clone())
        }))
    }

    /// Leading term in the lexicographic order used for exact division.
    fn lex_lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Largest term in graded order; this is the first term displayed.
    pub fn glex_lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| glex(a.0, b.0))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.lex_lead()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.lex_lead() {
            let m = mono_div(rm, &dm)?;
            let c = rc / &dc;
            let t = Poly::term(c.clone(), m);
            r = &r - &(d * &t);
            q.add_term(c, m);
        }
        Some(q)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let l = denom_lcm(self.terms.values());
        let scaled: Vec<Rational> = self.terms.values().map(|a| a * Rational::from_integer(l.clone())).collect();
        let g = numer_gcd(&scaled);
        Rational::new(g, l)
    }

    /// Canonical representative: integer coefficients with gcd 1 and a
    /// positive leading term in graded order.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.glex_lead().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Integer coefficients, provided the polynomial is primitive.
    pub fn integer_coeffs(&self) -> Vec<(Monomial, BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c.to_integer())).collect()
    }

    /// Greatest common divisor, primitive with positive leading term.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let v = match Var::ALL.iter().find(|v| self.involves(**v) || o.involves(**v)) {
            Some(v) => *v,
            None => return Poly::one(),
        };
        let (ca, pa) = self.split_content(v);
        let (cb, pb) = o.split_content(v);
        let c = ca.gcd(&cb);
        let g = prs_gcd(pa, pb, v);
        (&c * &g).primitive()
    }

    /// Splits off the content with respect to `v`: `self = c · pp`.
    fn split_content(&self, v: Var) -> (Poly, Poly) {
        let cs = self.coeffs_in(v);
        let mut c = Poly::zero();
        for k in cs.iter().filter(|k| !k.is_zero()) {
            c = c.gcd(k);
            if c.is_constant() {
                break;
            }
        }
        let c = c.primitive();
        let pp = self.exact_div(&c).expect("content divides");
        (c, pp)
    }

    /// Primitive part with respect to `v`.
    pub fn primitive_part_in(&self, v: Var) -> Poly {
        self.split_content(v).1.primitive()
    }

    /// Product of the distinct irreducible factors of a polynomial in
    /// `x, y, z, t`, computed as `p / gcd(p, ∂p/∂x, ∂p/∂y, ...)`.
    pub fn squarefree(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.clone();
        for v in Var::ALL {
            if self.involves(v) {
                g = g.gcd(&self.derivative(v));
            }
        }
        self.exact_div(&g).expect("gcd divides").primitive()
    }

    /// Pseudo-remainder of `self` by `b` with respect to `v`.
    pub fn prem(&self, b: &Poly, v: Var) -> Poly {
        let db = b.degree_in(v);
        let lb = b.lead_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lead_in(v);
            let mut mono = [0; 4];
            mono[v.index()] = dr - db;
            r = &(&r * &lb) - &(&(b * &lr).mul_monomial(&mono));
        }
        r
    }

    /// Divides out `x^a y^b z^c` for the largest exponents possible and
    /// returns them.
    pub fn strip_monomial(&self) -> (Poly, [u32; 3]) {
        let e = [self.min_degree_in(Var::X), self.min_degree_in(Var::Y), self.min_degree_in(Var::Z)];
        let q = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| ([m[0] - e[0], m[1] - e[1], m[2] - e[2], m[3]], c.clone()))
                .collect(),
        };
        (q, e)
    }

    /// Terms in display order (graded, descending).
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| glex(&b.0, &a.0));
        v
    }
}

fn prs_gcd(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return a.primitive_part_in(v);
        }
        if b.degree_in(v) == 0 {
            return Poly::one();
        }
        let r = a.prem(&b, v);
        a = b;
        b = if r.is_zero() { r } else { r.primitive_part_in(v) };
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(-c, *m);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ca * cb, mono_mul(ma, mb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors = vec![];
            if !a.is_one() || *m == [0; 4] {
                factors.push(fmt_rational(&a));
            }
            for v in Var::ALL {
                match m[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
