//! Conics as symmetric matrices up to scale.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{GeomError, Result};
use crate::plane::{canonical_slice, Chart, HLine, HPoint};
use crate::scalar::linalg::{self, adjugate, bilinear, cross, det3, mat_vec, null_space, Mat3, Vec3};
use crate::scalar::{int, BigFloat, Field, Poly, QuadExt, Rational, Sign3, UPoly, Var};

/// A conic `XᵀMX = 0`, `M` symmetric, stored canonically: the six upper
/// entries are coprime integers with the first nonzero one positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    m: Mat3<Rational>,
}

const UPPER: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl Conic {
    pub fn new(m: Mat3<Rational>) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(GeomError::NonGeneric("matrix not symmetric".into()));
                }
            }
        }
        let upper: Vec<Rational> = UPPER.iter().map(|&(i, j)| m[i][j].clone()).collect();
        let c = canonical_slice(&upper).ok_or(GeomError::ZeroVector)?;
        let mut out: Mat3<Rational> = Default::default();
        for (k, &(i, j)) in UPPER.iter().enumerate() {
            out[i][j] = c[k].clone();
            out[j][i] = c[k].clone();
        }
        Ok(Conic { m: out })
    }

    /// Conic from a homogeneous quadratic polynomial in `x, y, z`.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        if !p.is_homogeneous() || p.total_degree() != Some(2) || p.involves(Var::T) {
            return Err(GeomError::NotHomogeneous(2));
        }
        let mut m: Mat3<Rational> = Default::default();
        let half = crate::scalar::rat(1, 2);
        for (mono, c) in p.terms() {
            let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, mono[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m[i][i] = c.clone();
            } else {
                m[i][j] = c * &half;
                m[j][i] = c * &half;
            }
        }
        Self::new(m)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_poly(&s.parse()?)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::quadratic_form(&self.m).primitive()
    }

    /// Product of two lines.
    pub fn line_pair(l: &HLine, m: &HLine) -> Self {
        let (a, b) = (l.coords(), m.coords());
        let mat = std::array::from_fn(|i| std::array::from_fn(|j| &a[i] * &b[j] + &a[j] * &b[i]));
        Self::new(mat).expect("nonzero lines")
    }

    /// Circle with the given center and squared radius, standard chart.
    pub fn circle(cx: &Rational, cy: &Rational, r2: &Rational) -> Self {
        let o = int(0);
        let one = int(1);
        Self::new([
            [one.clone(), o.clone(), -cx.clone()],
            [o, one, -cy.clone()],
            [-cx.clone(), -cy.clone(), cx * cx + cy * cy - r2],
        ])
        .unwrap()
    }

    pub fn matrix(&self) -> &Mat3<Rational> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i][j]
    }

    pub fn det(&self) -> Rational {
        det3(&self.m)
    }

    pub fn rank(&self) -> usize {
        linalg::rank3(&self.m)
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn eval(&self, p: &HPoint) -> Rational {
        bilinear(&self.m, p.coords(), p.coords())
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn eval_q(&self, p: &Vec3<QuadExt>) -> QuadExt {
        let m = self.m_quad();
        bilinear(&m, p, p)
    }

    pub(crate) fn m_quad(&self) -> Mat3<QuadExt> {
        self.m.clone().map(|r| r.map(QuadExt::rational))
    }

    pub fn dual(&self) -> Result<DualConic> {
        if self.is_degenerate() {
            return Err(GeomError::DegenerateConic);
        }
        DualConic::new(adjugate(&self.m))
    }
}

impl fmt::Display for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for Conic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Conic({})", self.to_poly())
    }
}

/// Conic in line coordinates: `l` is tangent iff `lᵀNl = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DualConic {
    inner: Conic,
}

impl DualConic {
    pub fn new(n: Mat3<Rational>) -> Result<Self> {
        Ok(DualConic { inner: Conic::new(n)? })
    }

    /// Degenerate dual conic made of the lines through `p` or through `q`.
    pub fn point_pair(p: &HPoint, q: &HPoint) -> Self {
        let c = Conic::line_pair(&HLine::new(p.to_vec()).unwrap(), &HLine::new(q.to_vec()).unwrap());
        DualConic { inner: c }
    }

    pub fn matrix(&self) -> &Mat3<Rational> {
        self.inner.matrix()
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    pub fn is_tangent(&self, l: &HLine) -> bool {
        bilinear(self.matrix(), l.coords(), l.coords()).is_zero()
    }

    /// Point conic of a rank-3 dual conic.
    pub fn to_conic(&self) -> Result<Conic> {
        if self.inner.is_degenerate() {
            return Err(GeomError::DegenerateConic);
        }
        Conic::new(adjugate(self.matrix()))
    }
}

/// Conic through five points; rank below 3 marks a degenerate conic.
pub fn conic_through_five(pts: &[HPoint; 5]) -> Result<Conic> {
    conic_through(pts)
}

fn veronese(p: &Vec3<Rational>) -> Vec<Rational> {
    let [x, y, z] = p;
    vec![x * x, x * y, x * z, y * y, y * z, z * z]
}

fn conic_from_coeffs(c: &[Rational]) -> Result<Conic> {
    let h = crate::scalar::rat(1, 2);
    Conic::new([
        [c[0].clone(), &c[1] * &h, &c[2] * &h],
        [&c[1] * &h, c[3].clone(), &c[4] * &h],
        [&c[2] * &h, &c[4] * &h, c[5].clone()],
    ])
}

/// Unique conic through the given points (five or more); errors when the
/// incidence system leaves more than one conic or none.
pub fn conic_through(pts: &[HPoint]) -> Result<Conic> {
    conic_through_tangent(pts, &[])
}

/// Rows of `M·p` in terms of the six conic coefficients.
fn polar_rows(p: &Vec3<Rational>) -> [Vec<Rational>; 3] {
    let h = crate::scalar::rat(1, 2);
    let z = Rational::zero();
    let [x, y, w] = p;
    [
        vec![x.clone(), y * &h, w * &h, z.clone(), z.clone(), z.clone()],
        vec![z.clone(), x * &h, z.clone(), y.clone(), w * &h, z.clone()],
        vec![z.clone(), z.clone(), x * &h, z.clone(), y * &h, w.clone()],
    ]
}

/// Unique conic through `pts` that also touches each given line at the
/// given point.
pub fn conic_through_tangent(pts: &[HPoint], tangents: &[(HPoint, HLine)]) -> Result<Conic> {
    let mut rows: Vec<Vec<Rational>> = pts.iter().map(|p| veronese(p.coords())).collect();
    for (p, l) in tangents {
        let mp = polar_rows(p.coords());
        let lc = l.coords();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            rows.push((0..6).map(|k| &mp[i][k] * &lc[j] - &mp[j][k] * &lc[i]).collect());
        }
    }
    let ns = null_space(&rows, 6);
    match ns.len() {
        0 => Err(GeomError::VerificationFailed("no conic through the points".into())),
        1 => conic_from_coeffs(&ns[0]),
        k => Err(GeomError::Underdetermined(format!("{k}-dimensional family of conics"))),
    }
}

pub fn polar(c: &Conic, p: &HPoint) -> Result<HLine> {
    HLine::new(mat_vec(c.matrix(), p.coords())).map_err(|_| GeomError::SingularPoint)
}

pub fn pole(c: &Conic, l: &HLine) -> Result<HPoint> {
    if c.is_degenerate() {
        return Err(GeomError::DegenerateConic);
    }
    HPoint::new(mat_vec(&adjugate(c.matrix()), l.coords()))
}

/// Pole of the chart's infinity line. For a parabola this lands on the
/// infinity line and `at_infinity` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Center {
    pub point: HPoint,
    pub at_infinity: bool,
}

pub fn center(c: &Conic, chart: &Chart) -> Result<Center> {
    let point = pole(c, &chart.infinity)?;
    let at_infinity = !chart.is_finite(&point);
    Ok(Center { point, at_infinity })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Ellipse,
    Parabola,
    Hyperbola,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub rank: usize,
    /// Omitted for degenerate conics.
    pub kind: Option<ConicKind>,
    pub is_circle: bool,
    pub is_equilateral: bool,
    /// Nondegenerate conic without real points.
    pub imaginary: bool,
}

/// Restriction of the quadratic form to the line through `p0`, `p1`:
/// `a s² + 2b st + c t²` at `s·p0 + t·p1`.
pub(crate) fn restriction<F: Field>(m: &Mat3<F>, p0: &Vec3<F>, p1: &Vec3<F>) -> (F, F, F) {
    (bilinear(m, p0, p0), bilinear(m, p0, p1), bilinear(m, p1, p1))
}

/// Two points spanning a line.
pub(crate) fn line_basis(l: &HLine) -> (Vec3<Rational>, Vec3<Rational>) {
    let [u, v, w] = l.coords().clone();
    let o = int(0);
    if !w.is_zero() {
        ([w.clone(), o.clone(), -u], [o, w, -v])
    } else if !v.is_zero() {
        ([v.clone(), -u, o.clone()], [o.clone(), o, int(1)])
    } else {
        ([o.clone(), int(1), o.clone()], [o.clone(), o, int(1)])
    }
}

pub fn classify(c: &Conic, chart: &Chart) -> Classification {
    let rank = c.rank();
    let m = c.matrix();
    let is_circle = m[0][0] == m[1][1] && m[0][1].is_zero();
    let is_equilateral = (&m[0][0] + &m[1][1]).is_zero();
    let mut kind = None;
    let mut imaginary = false;
    if rank == 3 {
        let (p0, p1) = line_basis(&chart.infinity);
        let (a, b, cc) = restriction(m, &p0, &p1);
        let disc = &b * &b - &a * &cc;
        kind = Some(if disc.is_negative() {
            ConicKind::Ellipse
        } else if disc.is_zero() {
            ConicKind::Parabola
        } else {
            ConicKind::Hyperbola
        });
        imaginary = definite(m);
    }
    Classification { rank, kind, is_circle, is_equilateral, imaginary }
}

/// Whether the quadratic form is positive or negative definite.
fn definite(m: &Mat3<Rational>) -> bool {
    let d1 = m[0][0].clone();
    let d2 = &m[0][0] * &m[1][1] - &m[0][1] * &m[0][1];
    let d3 = det3(m);
    let pos = d1.is_positive() && d2.is_positive() && d3.is_positive();
    let neg = d1.is_negative() && d2.is_positive() && d3.is_negative();
    pos || neg
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineTangency {
    Secant,
    Tangent(HPoint),
    External,
}

pub fn line_tangency(c: &Conic, l: &HLine) -> Result<LineTangency> {
    let (p0, p1) = line_basis(l);
    let (a, b, cc) = restriction(c.matrix(), &p0, &p1);
    if a.is_zero() && b.is_zero() && cc.is_zero() {
        return Err(GeomError::LineOnConic);
    }
    let disc = &b * &b - &a * &cc;
    if disc.is_positive() {
        return Ok(LineTangency::Secant);
    }
    if disc.is_negative() {
        return Ok(LineTangency::External);
    }
    // double root (−b : a); when a = 0 then b = 0 and the root is (1 : 0)
    let (s, t) = if a.is_zero() { (int(1), int(0)) } else { (-b, a) };
    let p = HPoint::new(std::array::from_fn(|i| &s * &p0[i] + &t * &p1[i]))?;
    Ok(LineTangency::Tangent(p))
}

/// Intersection points of a conic with a line, exact over a quadratic
/// extension (one point for a tangent line).
pub fn intersect_line(c: &Conic, l: &HLine) -> Result<Vec<Vec3<QuadExt>>> {
    let (p0, p1) = line_basis(l);
    let (a, b, cc) = restriction(c.matrix(), &p0, &p1);
    if a.is_zero() && b.is_zero() && cc.is_zero() {
        return Err(GeomError::LineOnConic);
    }
    let roots = binary_quadratic_roots(&a, &b, &cc);
    Ok(roots
        .into_iter()
        .map(|(s, t)| {
            let p0q = p0.clone().map(QuadExt::rational);
            let p1q = p1.clone().map(QuadExt::rational);
            normalize_q(&std::array::from_fn(|i| s.fmul(&p0q[i]).fadd(&t.fmul(&p1q[i]))))
        })
        .collect())
}

/// Roots `(s:t)` of `a s² + 2b st + c t²` (not all zero), with multiplicity
/// collapsed.
pub(crate) fn binary_quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<(QuadExt, QuadExt)> {
    let q = QuadExt::rational;
    if a.is_zero() {
        // t (2b s + c t)
        let mut out = vec![(q(int(1)), q(int(0)))];
        if !b.is_zero() {
            out.push((q(-c.clone()), q(b * int(2))));
        }
        return out;
    }
    let disc = b * b - a * c;
    if disc.is_zero() {
        return vec![(q(-b.clone()), q(a.clone()))];
    }
    let r = QuadExt::sqrt_of(&disc);
    let mb = q(-b.clone());
    vec![(mb.fadd(&r), q(a.clone())), (mb.fsub(&r), q(a.clone()))]
}

/// Scales a triple over a quadratic extension so its first nonzero entry is 1.
pub fn normalize_q(v: &Vec3<QuadExt>) -> Vec3<QuadExt> {
    match v.iter().find(|c| !c.fis_zero()) {
        Some(f) => {
            let inv = f.finv().unwrap();
            std::array::from_fn(|i| v[i].fmul(&inv))
        }
        None => v.clone(),
    }
}

/// Binary cubic `c3 λ³ + c2 λ²μ + c1 λμ² + c0 μ³ = det(λA + μB)`;
/// returned as `[c3, c2, c1, c0]`.
pub fn pencil_cubic<F: Field>(a: &Mat3<F>, b: &Mat3<F>) -> [F; 4] {
    let tr = |x: &Mat3<F>, y: &Mat3<F>| linalg::trace(&linalg::mat_mul(x, y));
    [det3(a), tr(&adjugate(a), b), tr(a, &adjugate(b)), det3(b)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicTangency {
    Transversal,
    Tangent { real_contact: bool },
}

/// Tangency of two nondegenerate conics: the pencil they span has a
/// repeated degenerate member.
pub fn conic_tangency(c1: &Conic, c2: &Conic) -> Result<ConicTangency> {
    if c1 == c2 {
        return Err(GeomError::IdenticalConics);
    }
    if c1.is_degenerate() || c2.is_degenerate() {
        return Err(GeomError::DegenerateConic);
    }
    let [c3, c2c, c1c, c0] = pencil_cubic(c1.matrix(), c2.matrix());
    let p = UPoly::new(vec![c0, c1c, c2c, c3]);
    let sf = p.squarefree();
    if sf.degree() == p.degree() {
        return Ok(ConicTangency::Transversal);
    }
    // the repeated root is rational: −(sum of roots of the monic gcd) / its degree
    let g = p.gcd(&p.derivative());
    let k = g.degree().unwrap();
    let lambda = -g.coeff(k - 1) / int(k as i64);
    let d: Mat3<Rational> =
        std::array::from_fn(|i| std::array::from_fn(|j| &lambda * &c1.matrix()[i][j] + &c2.matrix()[i][j]));
    let deg = Conic::new(d)?;
    let real_contact = match deg.rank() {
        2 => true,
        _ => {
            let row = deg.matrix().iter().find(|r| r.iter().any(|v| !v.is_zero())).unwrap();
            let l = HLine::new(row.clone())?;
            !matches!(line_tangency(c1, &l)?, LineTangency::External)
        }
    };
    Ok(ConicTangency::Tangent { real_contact })
}

/// Discriminant of the binary cubic `c3 λ³ + c2 λ²μ + c1 λμ² + c0 μ³`.
pub fn cubic_discriminant<F: Field>(c: &[F; 4]) -> F {
    let [a, b, cc, d] = c;
    let k = |n: i64| F::from_i64(n);
    let t1 = b.fmul(b).fmul(cc).fmul(cc);
    let t2 = k(4).fmul(a).fmul(cc).fmul(cc).fmul(cc);
    let t3 = k(4).fmul(b).fmul(b).fmul(b).fmul(d);
    let t4 = k(27).fmul(a).fmul(a).fmul(d).fmul(d);
    let t5 = k(18).fmul(a).fmul(b).fmul(cc).fmul(d);
    t1.fsub(&t2).fsub(&t3).fsub(&t4).fadd(&t5)
}

/// Interval-valued conic matrix.
pub type BigMat = [[BigFloat; 3]; 3];

fn big_det(m: &BigMat) -> BigFloat {
    let minor = |a: usize, b: usize, c: usize, d: usize| m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]));
    m[0][0].mul(&minor(1, 2, 2, 1)).sub(&m[0][1].mul(&minor(0, 2, 2, 0))).add(&m[0][2].mul(&minor(0, 1, 1, 0)))
}

fn big_lin(a: &BigMat, b: &BigMat, s: &BigFloat, t: &BigFloat) -> BigMat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].mul(s).add(&b[i][j].mul(t))))
}

/// Outcome of the interval tangency test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedTangency {
    pub tangent: bool,
    pub precision: u32,
    /// Bound on |Δ| (normalized) used as the tolerance, as a decimal string.
    pub bound: String,
}

/// Tangency test for conics known only through interval enclosures.
///
/// The pencil cubic is recovered by interpolation, normalized by the size
/// of its coefficients, and its discriminant compared to zero. The conics
/// are declared tangent when the normalized discriminant is enclosed in
/// `[−2^(−p/2), 2^(−p/2)]`, transversal when it is certified to exceed
/// that bound, and otherwise the precision is doubled.
pub fn certified_tangency(mut build: impl FnMut(u32) -> Result<(BigMat, BigMat)>, start: u32) -> Result<CertifiedTangency> {
    let mut prec = start.max(32);
    loop {
        let (a, b) = build(prec)?;
        let one = BigFloat::from_i64(1, prec);
        let zero = BigFloat::from_i64(0, prec);
        let f = |s: i64| big_det(&big_lin(&a, &b, &BigFloat::from_i64(s, prec), &one));
        // det(λA + B) at λ = 0, 1, −1, and the leading coefficient det A
        let c3 = big_det(&big_lin(&a, &b, &one, &zero));
        let c0 = f(0);
        let p1 = f(1);
        let m1 = f(-1);
        let two = BigFloat::from_i64(2, prec);
        let even = p1.add(&m1).div(&two)?; // c2 + c0
        let odd = p1.sub(&m1).div(&two)?; // c3 + c1
        let c2 = even.sub(&c0);
        let c1 = odd.sub(&c3);
        let scale = [&c3, &c2, &c1, &c0].iter().map(|c| c.magnitude()).fold(Rational::zero(), |m, v| if v > m { v } else { m });
        if scale.is_zero() {
            return Err(GeomError::Undecidable(prec));
        }
        let s = BigFloat::from_rational(&scale, prec);
        let n = |c: &BigFloat| c.div(&s);
        let cs = [n(&c3)?, n(&c2)?, n(&c1)?, n(&c0)?];
        let disc = big_cubic_disc(&cs);
        let tol = Rational::new(1.into(), num_bigint::BigInt::from(1) << (prec / 2) as usize);
        let tolb = BigFloat::from_rational(&tol, prec);
        let bound = format!("2^-{}", prec / 2);
        if disc.abs().compare(&tolb) == Sign3::Negative {
            return Ok(CertifiedTangency { tangent: true, precision: prec, bound });
        }
        if disc.abs().compare(&tolb) == Sign3::Positive {
            return Ok(CertifiedTangency { tangent: false, precision: prec, bound });
        }
        if prec >= crate::scalar::MAX_PRECISION {
            return Err(GeomError::Undecidable(prec));
        }
        prec *= 2;
    }
}

fn big_cubic_disc(c: &[BigFloat; 4]) -> BigFloat {
    let [a, b, cc, d] = c;
    let p = a.precision();
    let k = |n: i64| BigFloat::from_i64(n, p);
    let t1 = b.mul(b).mul(cc).mul(cc);
    let t2 = k(4).mul(a).mul(cc).mul(cc).mul(cc);
    let t3 = k(4).mul(b).mul(b).mul(b).mul(d);
    let t4 = k(27).mul(a).mul(a).mul(d).mul(d);
    let t5 = k(18).mul(a).mul(b).mul(cc).mul(d);
    t1.sub(&t2).sub(&t3).sub(&t4).add(&t5)
}

/// Null vector of a rank-2 symmetric matrix.
pub(crate) fn singular_point(m: &Mat3<Rational>) -> Result<HPoint> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = cross(&m[i], &m[j]);
        if v.iter().any(|c| !c.is_zero()) {
            return HPoint::new(v);
        }
    }
    Err(GeomError::DegenerateConic)
}

/// The two lines of a degenerate conic, over a quadratic extension when
/// they are not rational (or not real). A double line is returned twice.
pub fn split_degenerate(c: &Conic) -> Result<(Vec3<QuadExt>, Vec3<QuadExt>)> {
    match c.rank() {
        3 => Err(GeomError::Nondegenerate),
        1 => {
            let row = c.matrix().iter().find(|r| r.iter().any(|v| !v.is_zero())).unwrap();
            let l = HLine::new(row.clone())?.to_vec().map(QuadExt::rational);
            Ok((l.clone(), l))
        }
        _ => {
            let s = singular_point(c.matrix())?;
            let k = (0..3).find(|&i| !s.coords()[i].is_zero()).unwrap();
            let mut lc = [int(0), int(0), int(0)];
            lc[k] = int(1);
            let m = HLine::new(lc)?;
            let pts = intersect_line(c, &m)?;
            let sq = s.to_vec().map(QuadExt::rational);
            let lines: Vec<Vec3<QuadExt>> = pts.iter().map(|p| normalize_q(&cross(&sq, p))).collect();
            if lines.len() == 1 {
                return Ok((lines[0].clone(), lines[0].clone()));
            }
            Ok((lines[0].clone(), lines[1].clone()))
        }
    }
}

/// Rational parameterization `t ↦ X(t)` of a conic by the lines through a
/// point on it; components are polynomials of degree at most 2.
#[derive(Debug, Clone)]
pub struct ConicParam {
    pub comps: [UPoly<Rational>; 3],
}

impl ConicParam {
    pub fn at(&self, t: &Rational) -> Result<HPoint> {
        HPoint::new(std::array::from_fn(|i| self.comps[i].eval(t)))
    }

    /// Limit point as `t → ∞`.
    pub fn at_infinity(&self) -> Result<HPoint> {
        HPoint::new(std::array::from_fn(|i| self.comps[i].coeff(2)))
    }

    /// Components as polynomials in the elimination variable `t`.
    pub fn as_polys(&self) -> [Poly; 3] {
        std::array::from_fn(|i| Poly::from_upoly(&self.comps[i], Var::T))
    }
}

/// Second intersection with the conic of the line through `p` (on the
/// conic) and another point `q` of that line.
pub fn second_intersection(c: &Conic, p: &HPoint, q: &HPoint) -> Result<HPoint> {
    if !c.contains(p) {
        return Err(GeomError::PointNotOnConic);
    }
    let m = c.matrix();
    let qq = bilinear(m, q.coords(), q.coords());
    let pq = bilinear(m, p.coords(), q.coords());
    let v: Vec3<Rational> = std::array::from_fn(|i| &qq * &p.coords()[i] - int(2) * &pq * &q.coords()[i]);
    if v.iter().all(|x| x.is_zero()) {
        return Err(GeomError::LineOnConic);
    }
    HPoint::new(v)
}

pub fn param_with_point(c: &Conic, p: &HPoint) -> Result<ConicParam> {
    if c.is_degenerate() {
        return Err(GeomError::DegenerateConic);
    }
    if !c.contains(p) {
        return Err(GeomError::PointNotOnConic);
    }
    let e = |i: usize| -> Vec3<Rational> { std::array::from_fn(|k| if k == i { int(1) } else { int(0) }) };
    let pc = p.coords();
    let (q0, q1) = if !pc[0].is_zero() {
        (e(2), e(1))
    } else if !pc[1].is_zero() {
        (e(2), e(0))
    } else {
        (e(0), e(1))
    };
    let m = c.matrix();
    // Q(t) = q0 + t q1; X = (QᵀMQ) P − 2 (PᵀMQ) Q
    let (a, b, cc) = restriction(m, &q0, &q1);
    let qmq = UPoly::new(vec![a, int(2) * b, cc]);
    let pmq = UPoly::new(vec![bilinear(m, pc, &q0), bilinear(m, pc, &q1)]);
    let comps = std::array::from_fn(|i| {
        let qi = UPoly::new(vec![q0[i].clone(), q1[i].clone()]);
        qmq.scale(&pc[i]).sub(&pmq.mul(&qi).scale(&int(2)))
    });
    Ok(ConicParam { comps })
}

/// Dehomogenized check that the parameterization lies on the conic.
pub fn param_on_conic(c: &Conic, par: &ConicParam) -> bool {
    let m = c.matrix();
    let mut total = UPoly::<Rational>::zero();
    for i in 0..3 {
        for j in 0..3 {
            total = total.add(&par.comps[i].mul(&par.comps[j]).scale(&m[i][j]));
        }
    }
    total.is_zero()
}

/// Join of two points given over a quadratic extension.
pub fn join_q(p: &Vec3<QuadExt>, q: &Vec3<QuadExt>) -> Vec3<QuadExt> {
    normalize_q(&cross(p, q))
}

/// Rational line if the triple is rational up to scale.
pub fn rational_line(v: &Vec3<QuadExt>) -> Option<HLine> {
    let n = normalize_q(v);
    let r: Option<Vec<Rational>> = n.iter().map(|c| c.as_rational().cloned()).collect();
    r.and_then(|r| HLine::new([r[0].clone(), r[1].clone(), r[2].clone()]).ok())
}

/// Rational point if the triple is rational up to scale.
pub fn rational_point(v: &Vec3<QuadExt>) -> Option<HPoint> {
    let n = normalize_q(v);
    let r: Option<Vec<Rational>> = n.iter().map(|c| c.as_rational().cloned()).collect();
    r.and_then(|r| HPoint::new([r[0].clone(), r[1].clone(), r[2].clone()]).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::linalg::dot;
    use crate::scalar::rat;

    fn c(s: &str) -> Conic {
        Conic::parse(s).unwrap()
    }

    fn p(a: i64, b: i64, cc: i64) -> HPoint {
        HPoint::from_ints(a, b, cc)
    }

    #[test]
    fn through_five() {
        let pts = [
            HPoint::affine_i(1, 0),
            HPoint::affine_i(-1, 0),
            HPoint::affine_i(0, 1),
            HPoint::affine_i(0, -1),
            HPoint::affine(rat(3, 5), rat(4, 5)),
        ];
        assert_eq!(conic_through_five(&pts).unwrap(), c("x^2 + y^2 - z^2"));
        let deg = [
            HPoint::affine_i(0, 1),
            HPoint::affine_i(0, 2),
            HPoint::affine_i(0, 3),
            HPoint::affine_i(1, 0),
            HPoint::affine_i(2, 0),
        ];
        let d = conic_through_five(&deg).unwrap();
        assert_eq!(d, c("x*y"));
        assert_eq!(d.rank(), 2);
        let under = [p(0, 1, 1), p(0, 2, 1), p(0, 3, 1), p(0, 4, 1), p(1, 0, 1)];
        assert!(matches!(conic_through_five(&under), Err(GeomError::Underdetermined(_))));
    }

    #[test]
    fn pole_and_polar() {
        let u = c("x^2 + y^2 - z^2");
        assert_eq!(polar(&u, &p(0, 0, 1)).unwrap(), HLine::infinity());
        assert_eq!(pole(&u, &HLine::infinity()).unwrap(), p(0, 0, 1));
        let g = c("y*z + z*x + x*y");
        assert_eq!(pole(&g, &HLine::from_ints(1, 1, 1)).unwrap(), p(1, 1, 1));
        assert_eq!(polar(&c("x*y"), &p(0, 0, 1)), Err(GeomError::SingularPoint));
        assert_eq!(pole(&c("x*y"), &HLine::infinity()), Err(GeomError::DegenerateConic));
    }

    #[test]
    fn centers() {
        let ch = Chart::default();
        assert_eq!(center(&c("x^2+y^2-z^2"), &ch).unwrap().point, p(0, 0, 1));
        let t = c("(x-2*z)^2 + (y-3*z)^2 - z^2");
        assert_eq!(center(&t, &ch).unwrap().point, p(2, 3, 1));
        let par = center(&c("y^2 - x*z"), &ch).unwrap();
        assert!(par.at_infinity);
        assert!(par.point.on(&HLine::infinity()));
    }

    #[test]
    fn classification() {
        let ch = Chart::default();
        let k = classify(&c("x^2 + y^2 - z^2"), &ch);
        assert_eq!((k.kind, k.is_circle, k.imaginary), (Some(ConicKind::Ellipse), true, false));
        let h = classify(&c("x^2 - y^2 - z^2"), &ch);
        assert_eq!((h.kind, h.is_equilateral), (Some(ConicKind::Hyperbola), true));
        assert_eq!(classify(&c("y^2 - x*z"), &ch).kind, Some(ConicKind::Parabola));
        assert_eq!(classify(&c("x*y"), &ch).kind, None);
        assert!(classify(&c("x^2 + y^2 + z^2"), &ch).imaginary);
    }

    #[test]
    fn line_tangencies() {
        let u = c("x^2 + y^2 - z^2");
        assert_eq!(line_tangency(&u, &HLine::from_ints(1, 0, -1)).unwrap(), LineTangency::Tangent(p(1, 0, 1)));
        assert_eq!(line_tangency(&u, &HLine::from_ints(1, 0, 0)).unwrap(), LineTangency::Secant);
        assert_eq!(line_tangency(&u, &HLine::from_ints(1, 0, -2)).unwrap(), LineTangency::External);
        assert_eq!(line_tangency(&c("x*y"), &HLine::from_ints(1, 0, 0)), Err(GeomError::LineOnConic));
        let t = line_tangency(&u, &HLine::from_ints(0, 1, -1)).unwrap();
        assert_eq!(t, LineTangency::Tangent(p(0, 1, 1)));
    }

    #[test]
    fn conic_tangencies() {
        let a = c("x^2 + y^2 - z^2");
        let b = Conic::circle(&int(2), &int(0), &int(1));
        assert_eq!(conic_tangency(&a, &b).unwrap(), ConicTangency::Tangent { real_contact: true });
        // concentric circles touch only at the circular points
        let cc = Conic::circle(&int(0), &int(0), &int(4));
        assert_eq!(conic_tangency(&a, &cc).unwrap(), ConicTangency::Tangent { real_contact: false });
        let d = Conic::circle(&int(1), &int(0), &int(1));
        assert_eq!(conic_tangency(&a, &d).unwrap(), ConicTangency::Transversal);
        // nine-point circle and incircle of the 3-4-5 triangle
        let npc = Conic::circle(&int(1), &rat(3, 4), &rat(25, 16));
        let inc = Conic::circle(&int(1), &int(1), &int(1));
        assert_eq!(conic_tangency(&npc, &inc).unwrap(), ConicTangency::Tangent { real_contact: true });
        assert_eq!(conic_tangency(&a, &a), Err(GeomError::IdenticalConics));
    }

    #[test]
    fn certified_matches_exact() {
        let npc = Conic::circle(&int(1), &rat(3, 4), &rat(25, 16));
        let inc = Conic::circle(&int(1), &int(1), &int(1));
        let far = Conic::circle(&int(5), &int(1), &int(1));
        let big = |m: &Mat3<Rational>, p: u32| m.clone().map(|r| r.map(|v| BigFloat::from_rational(&v, p)));
        let r = certified_tangency(|p| Ok((big(npc.matrix(), p), big(inc.matrix(), p))), 128).unwrap();
        assert!(r.tangent);
        let r = certified_tangency(|p| Ok((big(npc.matrix(), p), big(far.matrix(), p))), 128).unwrap();
        assert!(!r.tangent);
    }

    #[test]
    fn splitting() {
        let (l, m) = split_degenerate(&c("x*y")).unwrap();
        let mut got = vec![rational_line(&l).unwrap(), rational_line(&m).unwrap()];
        got.sort_by_key(|l| l.to_string());
        assert_eq!(got, vec![HLine::from_ints(0, 1, 0), HLine::from_ints(1, 0, 0)]);
        let (l, m) = split_degenerate(&c("x^2 - 2*y^2")).unwrap();
        assert!(rational_line(&l).is_none());
        // product of the two lines reproduces the conic up to scale
        let pt = [QuadExt::from_i64(3), QuadExt::from_i64(5), QuadExt::from_i64(7)];
        let prod = dot(&l, &pt).fmul(&dot(&m, &pt));
        assert_eq!(prod, QuadExt::from_i64(9 - 50));
        let (l, m) = split_degenerate(&c("(x + y - z)^2")).unwrap();
        assert_eq!(l, m);
        assert_eq!(split_degenerate(&c("x^2+y^2-z^2")), Err(GeomError::Nondegenerate));
    }

    #[test]
    fn parameterization() {
        let u = c("x^2 + y^2 - z^2");
        let par = param_with_point(&u, &p(-1, 0, 1)).unwrap();
        // ((1 − t²) : 2t : (1 + t²)) up to the sign fixed by canonical forms
        let neg = par.comps[2].lead() < int(0);
        let want = [UPoly::from_i64s(&[1, 0, -1]), UPoly::from_i64s(&[0, 2]), UPoly::from_i64s(&[1, 0, 1])];
        for i in 0..3 {
            assert_eq!(par.comps[i], if neg { want[i].neg() } else { want[i].clone() });
        }
        let g = c("y*z + z*x + x*y");
        let pg = param_with_point(&g, &p(1, 0, 0)).unwrap();
        assert!(param_on_conic(&g, &pg));
        assert_eq!(second_intersection(&u, &p(-1, 0, 1), &p(0, 1, 1)).unwrap(), p(0, 1, 1));
        assert_eq!(second_intersection(&u, &p(-1, 0, 1), &p(1, 2, 1)).unwrap(), p(0, 1, 1));
        assert_eq!(param_with_point(&u, &p(1, 1, 1)).unwrap_err(), GeomError::PointNotOnConic);
    }
}
