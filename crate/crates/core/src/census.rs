//! Exact count of the singular points of a plane curve over the algebraic
//! closure, split into nodes, cusps and points of higher multiplicity.
//!
//! After a generic change of coordinates the singular points have distinct
//! `x`; their `x`-coordinates are the roots of an eliminant `h`, and the
//! matching `y` is found by a gcd computed over `Q[x]/(h)`, splitting `h`
//! whenever a zero divisor turns up.

use num_traits::Zero;

use crate::cremona::PlaneCurve;
use crate::error::{GeomError, Result};
use crate::scalar::{int, resultant, Poly, Rational, UPoly, Var};

type U = UPoly<Rational>;
/// Polynomial in `y` with coefficients in `Q[x]`, lowest degree first.
type Py = Vec<U>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Census {
    pub points: usize,
    /// Double points with distinct tangents.
    pub nodes: usize,
    /// Double points with a repeated tangent.
    pub cusps: usize,
    /// Points of multiplicity three or more.
    pub higher: usize,
}

const CHANGES: [[[i64; 3]; 3]; 6] = [
    [[1, 2, 3], [-2, 1, 5], [3, -1, 2]],
    [[2, -3, 1], [1, 4, -2], [5, 1, 3]],
    [[1, 5, -7], [3, -2, 4], [-4, 3, 1]],
    [[7, 1, 2], [-3, 5, 1], [2, -6, 5]],
    [[3, 11, -2], [-5, 2, 7], [1, 4, 9]],
    [[4, -1, 13], [6, 9, -5], [-8, 3, 2]],
];

pub fn singular_census(c: &PlaneCurve) -> Result<Census> {
    for m in CHANGES {
        let m = crate::scalar::linalg::mat_i64(m);
        if let Some(census) = try_census(&c.poly().linear_change(&m), c.degree())? {
            return Ok(census);
        }
    }
    Err(GeomError::NonGeneric("no generic coordinate change found".into()))
}

fn to_py(p: &Poly) -> Py {
    p.coeffs_in(Var::Y).iter().map(|c| c.to_upoly(Var::X).expect("polynomial in x")).collect()
}

fn rem_all(p: &Py, h: &U) -> Py {
    let mut out: Py = p.iter().map(|c| c.rem(h)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

enum Lead {
    Ok(Py),
    Split(U, U),
}

/// Drops leading coefficients that vanish modulo `h`; splits `h` if the
/// new leading coefficient is a zero divisor.
fn normalize(p: &Py, h: &U) -> Lead {
    let p = rem_all(p, h);
    if let Some(lc) = p.last() {
        let g = lc.gcd(h);
        if g.degree() != Some(0) {
            return Lead::Split(g.clone(), h.exact_div(&g).unwrap());
        }
    }
    Lead::Ok(p)
}

fn py_rem(a: &Py, b: &Py, h: &U) -> Py {
    let mut a = a.clone();
    let inv = b.last().unwrap().inverse_mod(h).expect("invertible leading coefficient");
    while a.len() >= b.len() && !a.is_empty() {
        let k = a.len() - b.len();
        let f = a.last().unwrap().mul(&inv).rem(h);
        for (i, c) in b.iter().enumerate() {
            a[k + i] = a[k + i].sub(&f.mul(c)).rem(h);
        }
        a.pop();
        a = rem_all(&a, h);
    }
    a
}

/// `gcd(a, b)` over `Q[x]/(h)`, as a list of branches `(h_i, g_i)` with
/// `h = Π h_i` and `g_i` having an invertible leading coefficient.
fn dynamic_gcd(a: &Py, b: &Py, h: &U) -> Vec<(U, Py)> {
    if h.degree() == Some(0) {
        return vec![];
    }
    let a = match normalize(a, h) {
        Lead::Ok(p) => p,
        Lead::Split(g1, g2) => return [dynamic_gcd(a, b, &g1), dynamic_gcd(a, b, &g2)].concat(),
    };
    let b = match normalize(b, h) {
        Lead::Ok(p) => p,
        Lead::Split(g1, g2) => return [dynamic_gcd(&a, b, &g1), dynamic_gcd(&a, b, &g2)].concat(),
    };
    if b.is_empty() {
        return vec![(h.clone(), a)];
    }
    if a.len() < b.len() {
        return dynamic_gcd(&b, &a, h);
    }
    let r = py_rem(&a, &b, h);
    dynamic_gcd(&b, &r, h)
}

fn eval_mod(p: &Poly, y: &U, h: &U) -> U {
    to_py(p).iter().rev().fold(U::zero(), |acc, c| acc.mul(y).add(c).rem(h))
}

fn try_census(g: &Poly, n: u32) -> Result<Option<Census>> {
    // (0:1:0) off the curve, so y-resultants do not lose roots
    if g.coeff(&[0, n, 0, 0]).is_zero() {
        return Ok(None);
    }
    let (gx, gy, gz) = (g.derivative(Var::X), g.derivative(Var::Y), g.derivative(Var::Z));
    // no singular point on z = 0
    let at_inf: Vec<U> = [&gx, &gy, &gz].iter().map(|p| p.subs_value(Var::Z, &int(0)).subs_value(Var::Y, &int(1)).to_upoly(Var::X).unwrap()).collect();
    let common = at_inf.iter().fold(U::zero(), |acc, p| acc.gcd(p));
    if common.degree() != Some(0) {
        return Ok(None);
    }
    if ![&gx, &gy, &gz].iter().any(|p| !p.eval3(&[int(1), int(0), int(0)]).is_zero()) {
        return Ok(None);
    }
    let one = Rational::from_integer(1.into());
    let aff = |p: &Poly| p.subs_value(Var::Z, &one);
    let (ga, ax, ay) = (aff(g), aff(&gx), aff(&gy));
    let r1 = resultant(&ax, &ay, Var::Y)?;
    let r2 = resultant(&ga, &ax, Var::Y)?;
    if r1.is_zero() {
        return Err(GeomError::NonGeneric("curve has a repeated component".into()));
    }
    let h = r1.to_upoly(Var::X).unwrap().gcd(&r2.to_upoly(Var::X).unwrap()).squarefree();
    let mut census = Census::default();
    if h.degree() == Some(0) {
        return Ok(Some(census));
    }
    let (hxx, hxy, hyy) = (ax.derivative(Var::X), ax.derivative(Var::Y), ay.derivative(Var::Y));
    for (hi, gi) in dynamic_gcd(&to_py(&ax), &to_py(&ay), &h) {
        let k = match gi.len() {
            0 => return Err(GeomError::NonGeneric("curve has a repeated component".into())),
            1 => continue,
            k => k - 1,
        };
        // a k-fold common root is the root of the (k−1)-th derivative
        let (c0, c1) = (gi[k - 1].clone(), gi[k].scale(&int(k as i64)));
        let y = c0.mul(&c1.inverse_mod(&hi).unwrap()).neg().rem(&hi);
        if k > 1 && !gi.iter().rev().fold(U::zero(), |acc, c| acc.mul(&y).add(c).rem(&hi)).is_zero() {
            return Ok(None);
        }
        let on_curve = hi.gcd(&eval_mod(&ga, &y, &hi));
        if on_curve.degree() == Some(0) || on_curve.is_zero() {
            continue;
        }
        let hs = on_curve;
        let e = |p: &Poly| eval_mod(p, &y, &hs);
        let delta = e(&hxy).mul(&e(&hxy)).sub(&e(&hxx).mul(&e(&hyy))).rem(&hs);
        let repeated = hs.gcd(&delta);
        let triple = [e(&hxx), e(&hxy), e(&hyy)].iter().fold(repeated.clone(), |acc, p| acc.gcd(p));
        let deg = |p: &U| p.degree().unwrap_or(0);
        census.points += deg(&hs);
        census.nodes += deg(&hs) - deg(&repeated);
        census.higher += deg(&triple);
        census.cusps += deg(&repeated) - deg(&triple);
    }
    Ok(Some(census))
}
