//! Area problems: conics inscribed in a quadrilateral and conics
//! circumscribed about a quadrangle.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::conic::{Conic, DualConic};
use crate::error::{GeomError, Result};
use crate::plane::{collinear, concurrent, join, meet, Chart, HLine, HPoint};
use crate::quadrangle::{npc_pole_locus, Quadrangle};
use crate::scalar::linalg::{adjugate, bilinear, det3, mat_add, mat_scale, mat_vec, Mat3, Vec3};
use crate::scalar::{
    all_real_roots, int, refine_root, BigFloat, Field, QuadExt, Rational, RootInterval, Sign3, UPoly, DEFAULT_PRECISION,
    MAX_PRECISION,
};

type U = UPoly<Rational>;

/// Four lines, no three concurrent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrilateral {
    lines: [HLine; 4],
}

/// Pairs of line indices whose meets are opposite vertices.
const OPPOSITE: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

impl Quadrilateral {
    pub fn new(lines: [HLine; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in i + 1..4 {
                if lines[i] == lines[j] {
                    return Err(GeomError::Coincident);
                }
            }
        }
        for skip in 0..4 {
            let t: Vec<&HLine> = (0..4).filter(|&i| i != skip).map(|i| &lines[i]).collect();
            if concurrent(t[0], t[1], t[2]) {
                return Err(GeomError::ConcurrentLines);
            }
        }
        Ok(Quadrilateral { lines })
    }

    pub fn lines(&self) -> &[HLine; 4] {
        &self.lines
    }

    pub fn vertex(&self, i: usize, j: usize) -> HPoint {
        meet(&self.lines[i], &self.lines[j]).unwrap()
    }

    /// The six vertices, `l0l1, l0l2, l0l3, l1l2, l1l3, l2l3`.
    pub fn vertices(&self) -> Vec<HPoint> {
        let mut v = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                v.push(self.vertex(i, j));
            }
        }
        v
    }

    /// The three diagonals as pairs of opposite vertices.
    pub fn diagonals(&self) -> [(HPoint, HPoint); 3] {
        OPPOSITE.map(|[(a, b), (c, d)]| (self.vertex(a, b), self.vertex(c, d)))
    }
}

/// Which centroid the midpoint of the two critical centers is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CentroidReading {
    /// All six vertices of the complete quadrilateral.
    #[default]
    SixVertices,
    /// The simple quadrilateral `l0 l1 l2 l3` taken in order.
    FourVertices,
}

pub fn quadrilateral_centroid(q: &Quadrilateral, chart: &Chart, reading: CentroidReading) -> Result<HPoint> {
    match reading {
        CentroidReading::SixVertices => chart.centroid(&q.vertices()),
        CentroidReading::FourVertices => {
            chart.centroid(&[q.vertex(0, 1), q.vertex(1, 2), q.vertex(2, 3), q.vertex(0, 3)])
        }
    }
}

/// Where the diagonal midpoints lie: a line, or one point when they
/// coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaussLocus {
    Line(HLine),
    Point(HPoint),
}

impl GaussLocus {
    pub fn contains(&self, p: &HPoint) -> bool {
        match self {
            GaussLocus::Line(l) => p.on(l),
            GaussLocus::Point(c) => p == c,
        }
    }
}

/// Line through the midpoints of the diagonals with two finite ends.
pub fn quadrilateral_gauss_line(q: &Quadrilateral, chart: &Chart) -> Result<GaussLocus> {
    let mut mids: Vec<HPoint> = vec![];
    for (a, b) in q.diagonals() {
        if chart.is_finite(&a) && chart.is_finite(&b) {
            let m = chart.midpoint(&a, &b)?;
            if !mids.contains(&m) {
                mids.push(m);
            }
        }
    }
    match mids.len() {
        0 => Err(GeomError::NonGeneric("no diagonal with finite ends".into())),
        1 => Ok(GaussLocus::Point(mids.pop().unwrap())),
        _ => {
            if mids.len() == 3 && !collinear(&mids[0], &mids[1], &mids[2]) {
                return Err(GeomError::VerificationFailed("diagonal midpoints not collinear".into()));
            }
            Ok(GaussLocus::Line(join(&mids[0], &mids[1])?))
        }
    }
}

/// Conics touching four lines, `D(t) = D₁ + t·D₂` in line coordinates,
/// with the point pairs on two diagonals as generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPencil {
    quad: Quadrilateral,
    d1: Mat3<Rational>,
    d2: Mat3<Rational>,
}

impl DualPencil {
    pub fn quadrilateral(&self) -> &Quadrilateral {
        &self.quad
    }

    pub fn generators(&self) -> (&Mat3<Rational>, &Mat3<Rational>) {
        (&self.d1, &self.d2)
    }

    pub fn member_matrix(&self, t: &Rational) -> Mat3<Rational> {
        mat_add(&self.d1, &mat_scale(&self.d2, t))
    }

    pub fn member(&self, t: &Rational) -> Result<DualConic> {
        DualConic::new(self.member_matrix(t))
    }

    fn member_q(&self, t: &QuadExt) -> Mat3<QuadExt> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                QuadExt::rational(self.d1[i][j].clone()).fadd(&t.fmul(&QuadExt::rational(self.d2[i][j].clone())))
            })
        })
    }

    fn entries(&self) -> [[U; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| U::new(vec![self.d1[i][j].clone(), self.d2[i][j].clone()])))
    }

    /// `det D(t)`.
    pub fn det_poly(&self) -> U {
        det_u(&self.entries())
    }

    /// `ℓᵀ D(t) ℓ` for a line `ℓ`.
    pub fn form_poly(&self, l: &HLine) -> U {
        let c = l.coords();
        U::new(vec![bilinear(&self.d1, c, c), bilinear(&self.d2, c, c)])
    }

    /// The three point pairs: the degenerate members.
    pub fn degenerate_members(&self) -> [DualConic; 3] {
        self.quad.diagonals().map(|(a, b)| DualConic::point_pair(&a, &b))
    }
}

fn det_u(m: &[[U; 3]; 3]) -> U {
    let minor = |a: usize, b: usize, c: usize, d: usize| m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]));
    m[0][0]
        .mul(&minor(1, 2, 2, 1))
        .sub(&m[0][1].mul(&minor(0, 2, 2, 0)))
        .add(&m[0][2].mul(&minor(0, 1, 1, 0)))
}

pub fn inscribed_family(lines: &[HLine; 4]) -> Result<DualPencil> {
    let quad = Quadrilateral::new(lines.clone())?;
    let [(a, b), (c, d), _] = quad.diagonals();
    let d1 = DualConic::point_pair(&a, &b).matrix().clone();
    let d2 = DualConic::point_pair(&c, &d).matrix().clone();
    let pencil = DualPencil { quad, d1, d2 };
    for t in 1..=5 {
        let m = pencil.member(&int(t))?;
        if !lines.iter().all(|l| m.is_tangent(l)) {
            return Err(GeomError::VerificationFailed(format!("member {t} not tangent to all four lines")));
        }
    }
    Ok(pencil)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussVerdict {
    pub locus: GaussLocus,
    pub members: usize,
    pub all_on: bool,
}

/// Centers (poles of the chart's infinity line) of 20 nondegenerate members
/// against the Gauss line.
pub fn inscribed_center_on_gauss(lines: &[HLine; 4], chart: &Chart) -> Result<GaussVerdict> {
    let pencil = inscribed_family(lines)?;
    let locus = quadrilateral_gauss_line(pencil.quadrilateral(), chart)?;
    let mut members = 0;
    let mut all_on = true;
    let mut k = 0i64;
    while members < 20 {
        k += 1;
        let t = Rational::new(int(k).to_integer(), 3.into()) - int(3);
        let m = pencil.member_matrix(&t);
        if det3(&m).is_zero() {
            continue;
        }
        let center = HPoint::new(mat_vec(&m, chart.infinity.coords()))?;
        all_on &= locus.contains(&center);
        members += 1;
    }
    Ok(GaussVerdict { locus, members, all_on })
}

/// Squared area over `π²` of the inscribed members in the chart,
/// `w²·det D(t) / (ℓᵀD(t)ℓ)³` with `ℓ = (u, v, w)` the infinity line.
/// Negative on hyperbolas, where it is minus the squared area of the
/// ellipse with the same axes.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaFunctional {
    pub num: U,
    pub den: U,
    pub power: usize,
}

impl AreaFunctional {
    pub fn inscribed(p: &DualPencil, chart: &Chart) -> Self {
        let w = chart.infinity.coords()[2].clone();
        AreaFunctional { num: p.det_poly().scale(&(&w * &w)), den: p.form_poly(&chart.infinity), power: 3 }
    }

    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / pow(&d, self.power))
    }

    pub fn eval_q(&self, t: &QuadExt) -> Option<QuadExt> {
        let d = eval_q(&self.den, t);
        let dp = (1..self.power).fold(d.clone(), |acc, _| acc.fmul(&d));
        Some(eval_q(&self.num, t).fmul(&dp.finv()?))
    }

    /// Numerator of the derivative: `num′·den − power·num·den′`.
    pub fn derivative_numerator(&self) -> U {
        self.num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()).scale(&int(self.power as i64)))
    }

    fn eval_big(&self, t: &BigFloat) -> Result<BigFloat> {
        let d = eval_big(&self.den, t);
        let dp = (1..self.power).fold(d.clone(), |acc, _| acc.mul(&d));
        eval_big(&self.num, t).div(&dp)
    }
}

fn pow(r: &Rational, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * r)
}

fn eval_q(p: &U, t: &QuadExt) -> QuadExt {
    p.coeffs().iter().rev().fold(QuadExt::fzero(), |acc, c| acc.fmul(t).fadd(&QuadExt::rational(c.clone())))
}

fn eval_big(p: &U, t: &BigFloat) -> BigFloat {
    let prec = t.precision();
    p.coeffs().iter().rev().fold(BigFloat::from_i64(0, prec), |acc, c| acc.mul(t).add(&BigFloat::from_rational(c, prec)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberKind {
    Ellipse,
    Hyperbola,
}

/// Local behavior of the (unsigned) area at a stationary member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalType {
    Max,
    Min,
    Inflection,
}

/// Stationary member `D(t)`; `t` is exact since the derivative numerator
/// is at most quadratic.
#[derive(Debug, Clone, PartialEq)]
pub struct Stationary {
    pub root: RootInterval,
    pub t: QuadExt,
    pub kind: MemberKind,
    pub local: LocalType,
    pub area2: QuadExt,
    pub center: (QuadExt, QuadExt),
    /// Point conic when `t` is rational.
    pub exact: Option<Conic>,
    pub approx: [[f64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct InscribedExtrema {
    pub stationary: Vec<Stationary>,
    /// Absent when a vertex used by the reading is at infinity.
    pub centroid: Option<(Rational, Rational)>,
    pub reading: CentroidReading,
    /// Midpoint of the ellipse and hyperbola centers, when both exist.
    pub midpoint: Option<(QuadExt, QuadExt)>,
    pub midpoint_is_centroid: Option<bool>,
}

impl InscribedExtrema {
    pub fn ellipse(&self) -> Option<&Stationary> {
        self.stationary.iter().find(|s| s.kind == MemberKind::Ellipse)
    }

    pub fn hyperbola(&self) -> Option<&Stationary> {
        self.stationary.iter().find(|s| s.kind == MemberKind::Hyperbola)
    }

    /// One ellipse and one hyperbola.
    pub fn is_generic(&self) -> bool {
        self.stationary.len() == 2 && self.ellipse().is_some() && self.hyperbola().is_some()
    }
}

/// Real roots of a polynomial of degree at most two, exactly.
fn quadratic_roots(p: &U) -> Vec<QuadExt> {
    match p.degree() {
        Some(1) => vec![QuadExt::rational(-p.coeff(0) / p.coeff(1))],
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - int(4) * &a * &c;
            if disc.is_negative() {
                return vec![];
            }
            let two_a = int(2) * &a;
            let base = -b / &two_a;
            let s = int(1) / &two_a;
            let mut r = vec![QuadExt::new(base.clone(), -s.clone(), &disc), QuadExt::new(base, s, &disc)];
            r.dedup();
            r
        }
        _ => vec![],
    }
}

fn inside(t: &QuadExt, iv: &RootInterval) -> bool {
    if iv.is_exact() {
        return t.as_rational() == Some(&iv.lo);
    }
    let lo = t.fsub(&QuadExt::rational(iv.lo.clone())).signum();
    let hi = QuadExt::rational(iv.hi.clone()).fsub(t).signum();
    lo == Ordering::Greater && hi == Ordering::Greater
}

fn affine_q(v: &Vec3<QuadExt>, chart: &Chart) -> Result<(QuadExt, QuadExt)> {
    let l = chart.infinity.coords();
    let s = (0..3).fold(QuadExt::fzero(), |acc, i| acc.fadd(&v[i].fmul(&QuadExt::rational(l[i].clone()))));
    let inv = s.finv().ok_or(GeomError::PointAtInfinity)?;
    Ok((v[0].fmul(&inv), v[1].fmul(&inv)))
}

pub fn max_area_inscribed(lines: &[HLine; 4], chart: &Chart, reading: CentroidReading) -> Result<InscribedExtrema> {
    let pencil = inscribed_family(lines)?;
    let area = AreaFunctional::inscribed(&pencil, chart);
    let n = area.derivative_numerator();
    if n.is_zero() {
        return Err(GeomError::NoCriticalPoint);
    }
    let intervals = all_real_roots(&n)?;
    let exact = quadratic_roots(&n);
    if exact.len() != intervals.len() {
        return Err(GeomError::VerificationFailed("root isolation disagrees with the exact roots".into()));
    }
    let dn = n.derivative();
    let ell: Vec3<QuadExt> = chart.infinity.coords().clone().map(QuadExt::rational);
    let mut stationary = vec![];
    for iv in intervals {
        let t = exact.iter().find(|t| inside(t, &iv)).cloned().ok_or_else(|| {
            GeomError::VerificationFailed("exact root outside its isolating interval".into())
        })?;
        let m = pencil.member_q(&t);
        if det3(&m).fis_zero() {
            continue;
        }
        let Some(area2) = area.eval_q(&t) else { continue };
        let kind = if area2.signum() == Ordering::Greater { MemberKind::Ellipse } else { MemberKind::Hyperbola };
        // the sign of the derivative of the signed functional follows n
        let slope = eval_q(&dn, &t).signum();
        let local = match (slope, kind) {
            (Ordering::Equal, _) => LocalType::Inflection,
            (Ordering::Less, MemberKind::Ellipse) | (Ordering::Greater, MemberKind::Hyperbola) => LocalType::Max,
            _ => LocalType::Min,
        };
        let center = affine_q(&mat_vec(&m, &ell), chart)?;
        let exact_conic = match t.as_rational() {
            Some(r) => Some(pencil.member(r)?.to_conic()?),
            None => None,
        };
        let adj = adjugate(&m);
        let scale = adj.iter().flatten().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        let approx = adj.map(|row| row.map(|c| c.to_f64() / scale));
        stationary.push(Stationary { root: iv, t, kind, local, area2, center, exact: exact_conic, approx });
    }
    if stationary.is_empty() {
        return Err(GeomError::NoCriticalPoint);
    }
    let centroid = quadrilateral_centroid(pencil.quadrilateral(), chart, reading).and_then(|g| chart.xy(&g)).ok();
    let mut out = InscribedExtrema { stationary, centroid: centroid.clone(), reading, midpoint: None, midpoint_is_centroid: None };
    if let (Some(e), Some(h), Some(centroid)) = (out.ellipse(), out.hyperbola(), centroid) {
        let half = QuadExt::rational(Rational::new(1.into(), 2.into()));
        let mx = e.center.0.fadd(&h.center.0).fmul(&half);
        let my = e.center.1.fadd(&h.center.1).fmul(&half);
        let ok = mx == QuadExt::rational(centroid.0.clone()) && my == QuadExt::rational(centroid.1.clone());
        out.midpoint = Some((mx, my));
        out.midpoint_is_centroid = Some(ok);
    }
    Ok(out)
}

/// Real algebraic number given by a squarefree polynomial and an
/// isolating interval.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicParam {
    pub poly: U,
    pub root: RootInterval,
    pub rational: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircumscribedMinimum {
    pub parameter: AlgebraicParam,
    /// `AB·CD + t·AC·BD`.
    pub generators: (Conic, Conic),
    pub exact: Option<Conic>,
    pub approx: [[f64; 3]; 3],
    pub center_on_gamma: bool,
    pub local_minima: usize,
    pub precision: u32,
}

/// Simplest rational in `[lo, hi]`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return lo.clone();
    }
    if fl.clone() + int(1) <= *hi {
        return fl + int(1);
    }
    let inner = simplest_between(&(int(1) / (hi - &fl)), &(int(1) / (lo - &fl)));
    fl + int(1) / inner
}

fn rational_root(p: &U, iv: &RootInterval) -> Option<Rational> {
    if iv.is_exact() {
        return Some(iv.lo.clone());
    }
    let fine = refine_root(p, iv, &Rational::new(1.into(), num_bigint::BigInt::from(1u64) << 80));
    let r = simplest_between(&fine.lo, &fine.hi);
    p.eval(&r).is_zero().then_some(r)
}

pub fn min_area_circumscribed(q: &Quadrangle, chart: &Chart) -> Result<CircumscribedMinimum> {
    let [a, b, c, d] = q.vertices().clone();
    let m1 = Conic::line_pair(&join(&a, &b)?, &join(&c, &d)?);
    let m2 = Conic::line_pair(&join(&a, &c)?, &join(&b, &d)?);
    let entries: [[U; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| U::new(vec![m1.matrix()[i][j].clone(), m2.matrix()[i][j].clone()]))
    });
    let det = det_u(&entries);
    let l = chart.infinity.coords();
    // ℓᵀ adj(M(t)) ℓ through the cofactors
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let s: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let v = entries[r[0]][s[0]].mul(&entries[r[1]][s[1]]).sub(&entries[r[0]][s[1]].mul(&entries[r[1]][s[0]]));
        if (i + j) % 2 == 1 { v.neg() } else { v }
    };
    let mut form = U::zero();
    for i in 0..3 {
        for j in 0..3 {
            form = form.add(&cof(j, i).scale(&(&l[i] * &l[j])));
        }
    }
    if form.is_zero() || (form.degree() == Some(0) && !form.coeff(0).is_positive()) {
        return Err(GeomError::NoEllipseMembers);
    }
    let w = l[2].clone();
    // squared area over π²: w²·det² / form³ on the ellipse members
    let area = AreaFunctional { num: det.mul(&det).scale(&(&w * &w)), den: form.clone(), power: 3 };
    // derivative numerator divided by det
    let g = det.derivative().mul(&form).scale(&int(2)).sub(&det.mul(&form.derivative()).scale(&int(3)));
    if g.is_zero() {
        return Err(GeomError::NoCriticalPoint);
    }
    let g = g.squarefree();
    let dg = g.derivative();
    let mut minima = vec![];
    let mut any_ellipse = false;
    for iv in all_real_roots(&g)? {
        let iv = separate(&g, &form, iv);
        let probe = iv.midpoint();
        if !form.eval(&probe).is_positive() || form.eval(&iv.lo).is_negative() || form.eval(&iv.hi).is_negative() {
            continue;
        }
        any_ellipse = true;
        // g changes sign from − to + at a minimum of det²/form³ when det > 0,
        // and the reverse when det < 0
        let s_det = det.eval(&probe).signum();
        let s_slope = if iv.is_exact() { dg.eval(&iv.lo).signum() } else { g.eval(&iv.hi).signum() - g.eval(&iv.lo).signum() };
        if (s_det * s_slope).is_positive() {
            minima.push(iv);
        }
    }
    if !any_ellipse && !has_ellipse_members(&form) {
        return Err(GeomError::NoEllipseMembers);
    }
    if minima.is_empty() {
        return Err(GeomError::NoCriticalPoint);
    }
    let (best, precision) = pick_minimum(&g, &area, &minima)?;
    let root = minima[best].clone();
    let rational = rational_root(&g, &root);
    let exact = match &rational {
        Some(t) => Some(Conic::new(mat_add(m1.matrix(), &mat_scale(m2.matrix(), t)))?),
        None => None,
    };
    let t_approx = BigFloat::from_bounds(&root.lo, &root.hi, 64).mid_f64();
    let approx = {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| m1.matrix()[i][j].to_f64() + t_approx * m2.matrix()[i][j].to_f64())
        });
        normalize_f64(m)
    };
    let center_on_gamma = centers_on_gamma(q, chart, &entries)?;
    Ok(CircumscribedMinimum {
        parameter: AlgebraicParam { poly: g, root, rational },
        generators: (m1, m2),
        exact,
        approx,
        center_on_gamma,
        local_minima: minima.len(),
        precision,
    })
}

trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for Rational {
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

fn normalize_f64(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let s = m.iter().flatten().map(|c| c.abs()).fold(0.0, f64::max);
    m.map(|r| r.map(|c| c / s))
}

/// Shrinks an isolating interval of `g` until `form` has no root inside.
fn separate(g: &U, form: &U, mut iv: RootInterval) -> RootInterval {
    for _ in 0..200 {
        if iv.is_exact() || form.eval(&iv.lo).signum() == form.eval(&iv.hi).signum() && !straddles(form, &iv) {
            return iv;
        }
        let w = (&iv.hi - &iv.lo) / int(2);
        iv = refine_root(g, &iv, &w);
    }
    iv
}

fn straddles(p: &U, iv: &RootInterval) -> bool {
    all_real_roots(p).map(|rs| rs.iter().any(|r| r.hi > iv.lo && r.lo < iv.hi)).unwrap_or(true)
}

fn has_ellipse_members(form: &U) -> bool {
    match form.degree() {
        None => false,
        Some(0) => form.coeff(0).is_positive(),
        Some(_) => {
            let deriv_roots = all_real_roots(&form.derivative()).unwrap_or_default();
            let mut probes: Vec<Rational> = deriv_roots.iter().map(|r| r.midpoint()).collect();
            probes.extend([int(-1_000_000), int(0), int(1_000_000)]);
            for r in all_real_roots(form).unwrap_or_default() {
                probes.push(&r.lo - int(1));
                probes.push(&r.hi + int(1));
            }
            probes.iter().any(|t| form.eval(t).is_positive()) || form.lead().is_positive()
        }
    }
}

/// Index of the smallest value of the functional among the local minima,
/// certified by interval evaluation with escalating precision.
fn pick_minimum(g: &U, area: &AreaFunctional, minima: &[RootInterval]) -> Result<(usize, u32)> {
    if minima.len() == 1 {
        return Ok((0, 0));
    }
    let mut prec = DEFAULT_PRECISION;
    while prec <= MAX_PRECISION {
        let width = Rational::new(1.into(), num_bigint::BigInt::from(1u8) << (prec as usize / 2));
        let vals: Result<Vec<BigFloat>> = minima
            .iter()
            .map(|iv| {
                let r = refine_root(g, iv, &width);
                area.eval_big(&BigFloat::from_bounds(&r.lo, &r.hi, prec))
            })
            .collect();
        if let Ok(vals) = vals {
            for i in 0..vals.len() {
                if (0..vals.len()).all(|j| j == i || vals[i].compare(&vals[j]) == Sign3::Negative) {
                    return Ok((i, prec));
                }
            }
        }
        prec *= 2;
    }
    Err(GeomError::Undecidable(MAX_PRECISION))
}

/// The center of every member lies on the nine-point conic of the chart's
/// infinity line: an identity in `t`.
fn centers_on_gamma(q: &Quadrangle, chart: &Chart, entries: &[[U; 3]; 3]) -> Result<bool> {
    let gamma = npc_pole_locus(q, &chart.infinity, true)?.conic;
    let l = chart.infinity.coords();
    // adj(M(t))·ℓ, the center up to scale
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let s: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let v = entries[r[0]][s[0]].mul(&entries[r[1]][s[1]]).sub(&entries[r[0]][s[1]].mul(&entries[r[1]][s[0]]));
        if (i + j) % 2 == 1 { v.neg() } else { v }
    };
    let c: [U; 3] = std::array::from_fn(|i| (0..3).fold(U::zero(), |acc, j| acc.add(&cof(j, i).scale(&l[j]))));
    let m = gamma.matrix();
    let mut val = U::zero();
    for i in 0..3 {
        for j in 0..3 {
            val = val.add(&c[i].mul(&c[j]).scale(&m[i][j]));
        }
    }
    Ok(val.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{linalg::mat_i64, rat};

    fn square_lines() -> [HLine; 4] {
        [HLine::from_ints(1, 0, -1), HLine::from_ints(1, 0, 1), HLine::from_ints(0, 1, -1), HLine::from_ints(0, 1, 1)]
    }

    fn generic_lines() -> [HLine; 4] {
        [HLine::from_ints(0, 1, 0), HLine::from_ints(1, 0, 0), HLine::from_ints(1, 1, -3), HLine::from_ints(2, -1, -4)]
    }

    #[test]
    fn concurrent_lines_rejected() {
        let l = [HLine::from_ints(1, 0, 0), HLine::from_ints(0, 1, 0), HLine::from_ints(1, 1, 0), HLine::from_ints(1, 2, 3)];
        assert_eq!(inscribed_family(&l).unwrap_err(), GeomError::ConcurrentLines);
    }

    #[test]
    fn square_family_contains_incircle() {
        let p = inscribed_family(&square_lines()).unwrap();
        let target = mat_i64([[1, 0, 0], [0, 1, 0], [0, 0, -1]]);
        let (d1, d2) = p.generators();
        // solve target = a·d1 + b·d2 on two entries, then check all
        let found = (-20..=20).flat_map(|n| (1..=4).map(move |d| rat(n, d))).any(|t| {
            let m = p.member_matrix(&t);
            let s = &m[0][0] / &target[0][0];
            !s.is_zero() && (0..3).all(|i| (0..3).all(|j| m[i][j] == &target[i][j] * &s))
        });
        assert!(found, "{d1:?} {d2:?}");
        for d in p.degenerate_members() {
            assert_eq!(d.rank(), 2);
            assert!(square_lines().iter().all(|l| d.is_tangent(l)));
        }
    }

    #[test]
    fn gauss_line_square_and_generic() {
        let chart = Chart::default();
        let v = inscribed_center_on_gauss(&square_lines(), &chart).unwrap();
        assert_eq!(v.locus, GaussLocus::Point(HPoint::from_ints(0, 0, 1)));
        assert!(v.all_on && v.members == 20);
        let v = inscribed_center_on_gauss(&generic_lines(), &chart).unwrap();
        assert!(matches!(v.locus, GaussLocus::Line(_)));
        assert!(v.all_on);
    }

    #[test]
    fn generic_stationary_members() {
        let chart = Chart::default();
        let r = max_area_inscribed(&generic_lines(), &chart, CentroidReading::SixVertices).unwrap();
        assert!(r.is_generic());
        assert_eq!(r.centroid, Some((rat(11, 9), rat(-1, 18))));
        assert_eq!(r.midpoint_is_centroid, Some(true));
        let e = r.ellipse().unwrap();
        assert!((e.center.0.to_f64() - 1.075236).abs() < 1e-5);
        assert!((e.area2.to_f64() - 0.736319).abs() < 1e-5);
        assert_eq!(e.local, LocalType::Max);
        let h = r.hyperbola().unwrap();
        assert!((h.center.1.to_f64() + 1.084459).abs() < 1e-5);
        let four = max_area_inscribed(&generic_lines(), &chart, CentroidReading::FourVertices).unwrap();
        assert_eq!(four.midpoint_is_centroid, Some(false));
    }

    #[test]
    fn square_incircle_is_stationary() {
        let r = max_area_inscribed(&square_lines(), &Chart::default(), CentroidReading::SixVertices).unwrap();
        let e = r.ellipse().unwrap();
        assert_eq!(e.exact.as_ref().unwrap(), &Conic::parse("x^2 + y^2 - z^2").unwrap());
        assert_eq!(e.local, LocalType::Max);
    }

    #[test]
    fn square_circumcircle() {
        let q = Quadrangle::new([
            HPoint::from_ints(1, 1, 1),
            HPoint::from_ints(-1, 1, 1),
            HPoint::from_ints(-1, -1, 1),
            HPoint::from_ints(1, -1, 1),
        ])
        .unwrap();
        let m = min_area_circumscribed(&q, &Chart::default()).unwrap();
        assert_eq!(m.exact.unwrap(), Conic::parse("x^2 + y^2 - 2*z^2").unwrap());
        assert!(m.center_on_gamma);
    }

    fn area_f64(m: &[[f64; 3]; 3]) -> Option<f64> {
        let d2 = m[0][0] * m[1][1] - m[0][1] * m[0][1];
        let d3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[1][2]) - m[0][1] * (m[0][1] * m[2][2] - m[1][2] * m[0][2])
            + m[0][2] * (m[0][1] * m[1][2] - m[1][1] * m[0][2]);
        (d2 > 0.0).then(|| std::f64::consts::PI * d3.abs() / d2.powf(1.5))
    }

    #[test]
    fn general_minimum_beats_scan() {
        let q = Quadrangle::new([
            HPoint::from_ints(0, 0, 1),
            HPoint::from_ints(4, 0, 1),
            HPoint::from_ints(5, 3, 1),
            HPoint::from_ints(1, 4, 1),
        ])
        .unwrap();
        let m = min_area_circumscribed(&q, &Chart::default()).unwrap();
        assert!(m.center_on_gamma);
        let best = area_f64(&m.approx).unwrap();
        let (g1, g2) = &m.generators;
        let f = |i: usize, j: usize, t: f64| g1.matrix()[i][j].to_f64() + t * g2.matrix()[i][j].to_f64();
        for k in -4000..4000 {
            let t = k as f64 / 100.0;
            let mm: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| f(i, j, t)));
            if let Some(a) = area_f64(&mm) {
                assert!(a >= best - 1e-9, "t = {t}: {a} < {best}");
            }
        }
    }
}
