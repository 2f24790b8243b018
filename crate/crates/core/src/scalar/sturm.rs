use num_traits::{Signed, Zero};

use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{GeomError, Result};

/// Isolating interval: either the open interval `(lo, hi)` holding exactly
/// one root, or the exact root `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

pub fn sturm_sequence(p: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r.primitive_keep_sign());
    }
    seq.retain(|q| !q.is_zero());
    seq
}

impl UPoly<Rational> {
    fn primitive_keep_sign(&self) -> Self {
        let p = self.primitive();
        if (p.lead() < Rational::zero()) != (self.lead() < Rational::zero()) {
            p.neg()
        } else {
            p
        }
    }
}

pub fn sign_variations(seq: &[UPoly<Rational>], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots of `p` in the open interval `(a, b)`, one isolating interval each,
/// sorted ascending. `p` must be square-free.
pub fn isolate_real_roots(p: &UPoly<Rational>, a: &Rational, b: &Rational) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(GeomError::ZeroPolynomial);
    }
    if p.degree() == Some(0) || a >= b {
        return Ok(vec![]);
    }
    let seq = sturm_sequence(p);
    let mut out = vec![];
    isolate(p, &seq, a.clone(), b.clone(), &mut out);
    out.retain(|r| !(r.is_exact() && &r.lo == b));
    Ok(out)
}

/// All real roots of a square-free `p`.
pub fn all_real_roots(p: &UPoly<Rational>) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(GeomError::ZeroPolynomial);
    }
    let lead = p.lead().abs();
    let bound = p.coeffs().iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |m, c| if c > m { c } else { m })
        + Rational::from_integer(1.into());
    isolate_real_roots(p, &-bound.clone(), &bound)
}

fn isolate(p: &UPoly<Rational>, seq: &[UPoly<Rational>], l: Rational, r: Rational, out: &mut Vec<RootInterval>) {
    // roots in (l, r]
    let count = sign_variations(seq, &l) - sign_variations(seq, &r);
    if count == 0 {
        return;
    }
    if count == 1 {
        if p.eval(&r).is_zero() {
            out.push(RootInterval { lo: r.clone(), hi: r });
        } else {
            out.push(RootInterval { lo: l, hi: r });
        }
        return;
    }
    let mid = (&l + &r) / Rational::from_integer(2.into());
    isolate(p, seq, l, mid.clone(), out);
    isolate(p, seq, mid, r, out);
}

/// Shrinks an isolating interval until its width is at most `width`.
pub fn refine_root(p: &UPoly<Rational>, iv: &RootInterval, width: &Rational) -> RootInterval {
    let seq = sturm_sequence(p);
    let mut cur = iv.clone();
    while !cur.is_exact() && &(&cur.hi - &cur.lo) > width {
        let mid = cur.midpoint();
        if p.eval(&mid).is_zero() {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if sign_variations(&seq, &cur.lo) - sign_variations(&seq, &mid) == 1 {
            cur.hi = mid;
        } else {
            cur.lo = mid;
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    type P = UPoly<Rational>;

    #[test]
    fn sqrt_two_on_zero_two() {
        let p = P::from_i64s(&[-2, 0, 1]);
        let r = isolate_real_roots(&p, &int(0), &int(2)).unwrap();
        assert_eq!(r.len(), 1);
        let two = int(2);
        assert!(&r[0].lo * &r[0].lo < two && two < &r[0].hi * &r[0].hi);
    }

    #[test]
    fn no_real_roots() {
        let p = P::from_i64s(&[1, 0, 1]);
        assert!(isolate_real_roots(&p, &int(-10), &int(10)).unwrap().is_empty());
    }

    #[test]
    fn three_roots_of_cubic() {
        let p = P::from_i64s(&[0, -1, 0, 1]);
        let r = isolate_real_roots(&p, &int(-2), &int(2)).unwrap();
        assert_eq!(r.len(), 3);
        for (iv, root) in r.iter().zip([-1, 0, 1]) {
            let x = int(root);
            assert!(iv.lo <= x && x <= iv.hi);
        }
        assert!(isolate_real_roots(&P::zero(), &int(0), &int(1)).is_err());
    }
}
