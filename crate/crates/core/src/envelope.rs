//! The lines joining the points of a transversal to their images, their
//! envelope (a quartic of class three) and its dual cubic.

use crate::census::{singular_census, Census};
use crate::conic::{intersect_line, join_q, line_basis, line_tangency, rational_line, Conic, LineTangency};
use crate::cremona::{PlaneCurve, QuadraticMap};
use crate::error::{GeomError, Result};
use crate::pencil::{member_through, pencil_of_quadrangle};
use crate::plane::{HLine, HPoint};
use crate::scalar::linalg::{rank, Mat3, Vec3};
use crate::scalar::{int, resultant, Poly, QuadExt, Rational, UPoly, Var};

type U = UPoly<Rational>;

fn u_mat_vec(m: &Mat3<Rational>, v: &[U; 3]) -> [U; 3] {
    std::array::from_fn(|i| (0..3).fold(U::zero(), |acc, j| acc.add(&v[j].scale(&m[i][j]))))
}

fn u_cross(a: &[U; 3], b: &[U; 3]) -> [U; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

fn content_free(v: [U; 3]) -> [U; 3] {
    let g = v.iter().fold(U::zero(), |acc, c| acc.gcd(c));
    if g.degree().unwrap_or(0) == 0 {
        return v;
    }
    v.map(|c| c.exact_div(&g).unwrap())
}

fn eval_vec(v: &[U; 3], t: &Rational) -> Vec3<Rational> {
    std::array::from_fn(|i| v[i].eval(t))
}

/// The lines `P(t) f(P(t))` for `P(t)` running along a transversal.
#[derive(Debug, Clone)]
pub struct LineFamily {
    map: QuadraticMap,
    r: HLine,
    point: [U; 3],
    image: [U; 3],
    lines: [U; 3],
}

impl LineFamily {
    pub fn map(&self) -> &QuadraticMap {
        &self.map
    }

    pub fn transversal(&self) -> &HLine {
        &self.r
    }

    /// `P(t)`, `f(P(t))` and `L(t)` as polynomial triples.
    pub fn point(&self) -> &[U; 3] {
        &self.point
    }

    pub fn image(&self) -> &[U; 3] {
        &self.image
    }

    pub fn lines(&self) -> &[U; 3] {
        &self.lines
    }

    pub fn line_at(&self, t: &Rational) -> Result<HLine> {
        HLine::new(eval_vec(&self.lines, t))
    }

    pub fn point_at(&self, t: &Rational) -> Result<HPoint> {
        HPoint::new(eval_vec(&self.point, t))
    }

    /// `⟨L(t), X⟩` as a polynomial in `x, y, z, t`.
    pub fn incidence(&self) -> Poly {
        let xyz = [Poly::x(), Poly::y(), Poly::z()];
        (0..3).fold(Poly::zero(), |acc, i| &acc + &(&Poly::from_upoly(&self.lines[i], Var::T) * &xyz[i]))
    }
}

pub fn make_family(f: &QuadraticMap, r: &HLine) -> Result<LineFamily> {
    let (p0, p1) = line_basis(r);
    let point: [U; 3] = std::array::from_fn(|i| U::new(vec![p0[i].clone(), p1[i].clone()]));
    let y = u_mat_vec(f.normalizer(), &point);
    let sig = [y[1].mul(&y[2]), y[2].mul(&y[0]), y[0].mul(&y[1])];
    let image = u_mat_vec(f.denormalizer(), &sig);
    let lines = content_free(u_cross(&point, &image));
    // lines through a common point: the coefficient vectors span at most a plane
    let deg = lines.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let rows: Vec<Vec<Rational>> = (0..=deg).map(|k| lines.iter().map(|c| c.coeff(k)).collect()).collect();
    if rank(&rows) < 3 {
        return Err(GeomError::DegenerateFamily("all lines pass through one point".into()));
    }
    let q = f.base();
    if q.fundamental().iter().any(|p| p.on(r)) {
        return Err(GeomError::NonGeneric("transversal through a diagonal point".into()));
    }
    if q.vertices().iter().any(|p| p.on(r)) {
        return Err(GeomError::NonGeneric("transversal through a vertex".into()));
    }
    let fam = LineFamily { map: f.clone(), r: r.clone(), point, image, lines };
    check_tangency(&fam)?;
    Ok(fam)
}

/// Each line of the family touches the pencil member through its point.
fn check_tangency(fam: &LineFamily) -> Result<()> {
    let pencil = pencil_of_quadrangle(fam.map.base());
    let mut checked = 0;
    let mut t = 0i64;
    while checked < 10 {
        let tt = int(t);
        t += 1;
        if t > 100 {
            return Err(GeomError::VerificationFailed("too few generic sample points".into()));
        }
        let (Ok(p), Ok(l)) = (fam.point_at(&tt), fam.line_at(&tt)) else { continue };
        let Ok(member) = member_through(&pencil, &p) else { continue };
        if member.is_degenerate() {
            continue;
        }
        match line_tangency(&member, &l)? {
            LineTangency::Tangent(c) if c == p => checked += 1,
            _ => return Err(GeomError::VerificationFailed(format!("line at t = {tt} not tangent to the member through P"))),
        }
    }
    Ok(())
}

/// An implicit curve with the factors removed on the way to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub curve: PlaneCurve,
    pub stripped: Vec<String>,
}

fn divide_out(p: &mut Poly, f: &Poly, name: &str, log: &mut Vec<String>) {
    let mut k = 0;
    while let Some(q) = p.exact_div(f) {
        if q.is_zero() {
            break;
        }
        *p = q;
        k += 1;
    }
    if k > 0 {
        log.push(if k == 1 { format!("{name}: {f}") } else { format!("{name}: ({f})^{k}") });
    }
}

fn finish(mut p: Poly, extra: &[(Poly, &str)], target: u32, fam: &LineFamily) -> Result<Elimination> {
    let mut log = vec![];
    if p.is_zero() {
        return Err(GeomError::ZeroPolynomial);
    }
    let c = p.content();
    if c != int(1) {
        log.push(format!("content: {c}"));
    }
    p = p.primitive();
    for (f, name) in extra {
        if f.total_degree().unwrap_or(0) > 0 {
            divide_out(&mut p, &f.primitive(), name, &mut log);
        }
    }
    let q = fam.map.base();
    for k in 0..3 {
        divide_out(&mut p, &Poly::linear(q.fundamental_side(k).coords()), "diagonal side", &mut log);
    }
    divide_out(&mut p, &Poly::linear(fam.r.coords()), "transversal", &mut log);
    if p.total_degree().unwrap_or(0) > target {
        let s = p.squarefree().primitive();
        if s != p {
            log.push(format!("repeated factors: degree {} to {}", p.total_degree().unwrap(), s.total_degree().unwrap()));
            p = s;
        }
    }
    let degree = p.total_degree().unwrap_or(0);
    if degree != target {
        return Err(GeomError::ResidualDegree { degree: degree as usize, stripped: log });
    }
    Ok(Elimination { curve: PlaneCurve::new(p)?, stripped: log })
}

/// Eliminates `t` from `⟨L(t), X⟩ = 0` and its `t`-derivative.
pub fn envelope_quartic(fam: &LineFamily) -> Result<Elimination> {
    let f = fam.incidence();
    let ft = f.derivative(Var::T);
    let res = resultant(&f, &ft, Var::T)?;
    let lead = f.lead_in(Var::T);
    finish(res, &[(lead, "leading line")], 4, fam)
}

/// Implicit equation of a rational parameterization `t ↦ v(t)`.
fn implicitize(v: &[U; 3]) -> Result<(Poly, Vec<String>)> {
    let c: Vec<Poly> = v.iter().map(|p| Poly::from_upoly(p, Var::T)).collect();
    let (x, y, z) = (Poly::x(), Poly::y(), Poly::z());
    let a = &(&x * &c[1]) - &(&y * &c[0]);
    let b = &(&x * &c[2]) - &(&z * &c[0]);
    let res = resultant(&a, &b, Var::T)?;
    let (p, m) = res.strip_monomial();
    let names = ["x", "y", "z"];
    let log = (0..3).filter(|&i| m[i] > 0).map(|i| format!("monomial: {}^{}", names[i], m[i])).collect();
    Ok((p, log))
}

/// Curve traced by the lines in line coordinates `(x:y:z) = (u:v:w)`.
pub fn dual_cubic(fam: &LineFamily) -> Result<Elimination> {
    let (p, mut log) = implicitize(&fam.lines)?;
    if p.is_zero() {
        return Err(GeomError::ImplicitizationDegree("zero eliminant".into()));
    }
    let c = p.content();
    if c != int(1) {
        log.push(format!("content: {c}"));
    }
    let mut p = p.primitive();
    if p.total_degree().unwrap_or(0) > 3 {
        p = p.squarefree().primitive();
        log.push("repeated factors".into());
    }
    let degree = p.total_degree().unwrap_or(0);
    if degree != 3 {
        return Err(GeomError::ImplicitizationDegree(format!("degree {degree}; stripped: {}", log.join(", "))));
    }
    Ok(Elimination { curve: PlaneCurve::new(p)?, stripped: log })
}

/// The nine-point conic of the transversal, i.e. its image.
pub fn gamma(fam: &LineFamily) -> Result<Conic> {
    fam.map.apply_line(&fam.r)
}

/// Locus of the harmonic conjugate of the second point `P″` where `L(t)`
/// meets `Γ`, with respect to `P` and `P′`.
pub fn pointwise_quartic(fam: &LineFamily) -> Result<Elimination> {
    let g = gamma(fam)?;
    if g.is_degenerate() {
        return Err(GeomError::DegenerateConic);
    }
    let m = g.matrix();
    let (p, q) = (&fam.point, &fam.image);
    let form = |a: &[U; 3], b: &[U; 3]| -> U {
        let mb = u_mat_vec(m, b);
        (0..3).fold(U::zero(), |acc, i| acc.add(&a[i].mul(&mb[i])))
    };
    // P″ = Γ(P)·P′ − 2B(P′, P)·P; its conjugate flips the second sign
    let gp = form(p, p);
    let b2 = form(q, p).scale(&int(2));
    let x: [U; 3] = std::array::from_fn(|i| gp.mul(&q[i]).add(&b2.mul(&p[i])));
    if x.iter().all(|c| c.is_zero()) {
        return Err(GeomError::VerificationFailed("lines tangent to the conic for every t".into()));
    }
    let x = content_free(x);
    let (res, log0) = implicitize(&x)?;
    let mut out = finish(res, &[], 4, fam)?;
    out.stripped.splice(0..0, log0);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bitangent {
    pub line: HLine,
    /// Points where `Γ` meets the transversal; the contact points.
    pub contacts: Vec<Vec3<QuadExt>>,
    pub real_contact: bool,
}

/// The join of the two points of `Γ ∩ R`, checked to meet the quartic in
/// two double points.
pub fn bitangent(q: &PlaneCurve, fam: &LineFamily) -> Result<Bitangent> {
    let g = gamma(fam)?;
    let pts = intersect_line(&g, &fam.r)?;
    if pts.len() != 2 {
        return Err(GeomError::CoincidentDoublePoints);
    }
    let line = rational_line(&join_q(&pts[0], &pts[1]))
        .ok_or_else(|| GeomError::VerificationFailed("join of the intersection points is not rational".into()))?;
    let (p0, p1) = line_basis(&line);
    let param: [Poly; 3] = std::array::from_fn(|i| {
        &Poly::constant(p0[i].clone()) + &Poly::term(p1[i].clone(), [0, 0, 0, 1])
    });
    let restricted = q.poly().compose3(&param).to_upoly(Var::T).unwrap();
    if !is_square_binary(&restricted, q.degree() as usize) {
        return Err(GeomError::VerificationFailed(format!("restriction {restricted:?} is not a square")));
    }
    let real_contact = pts.iter().all(|p| p.iter().all(|c| c.is_real()));
    Ok(Bitangent { line, contacts: pts, real_contact })
}

/// Whether the binary form of degree `n` whose dehomogenization is `u` is a
/// nonzero constant times a square.
fn is_square_binary(u: &U, n: usize) -> bool {
    let Some(d) = u.degree() else { return false };
    if (n - d) % 2 != 0 {
        return false;
    }
    let s = u.squarefree().monic();
    match u.exact_div(&s.mul(&s)) {
        Some(c) => c.degree() == Some(0),
        None => false,
    }
}

/// `n(n − 1) − 2δ − 3κ`.
pub fn plucker_class(n: u32, c: &Census) -> i64 {
    (n * (n - 1)) as i64 - 2 * c.nodes as i64 - 3 * c.cusps as i64
}

/// Every check on one family: degrees, singularities, class, and the
/// agreement of the two routes to the quartic.
#[derive(Debug, Clone)]
pub struct EnvelopeReport {
    pub quartic: Elimination,
    pub dual: Elimination,
    pub pointwise: Elimination,
    pub quartic_census: Census,
    pub dual_census: Census,
    pub class: i64,
    pub routes_agree: bool,
    pub bitangent: Result<Bitangent>,
}

impl EnvelopeReport {
    pub fn passes(&self) -> bool {
        self.quartic.curve.degree() == 4
            && self.dual.curve.degree() == 3
            && self.dual_census == Census { points: 1, nodes: 1, cusps: 0, higher: 0 }
            && self.quartic_census == Census { points: 3, nodes: 0, cusps: 3, higher: 0 }
            && self.class == 3
            && self.routes_agree
    }
}

pub fn envelope_report(fam: &LineFamily) -> Result<EnvelopeReport> {
    let quartic = envelope_quartic(fam)?;
    let dual = dual_cubic(fam)?;
    let pointwise = pointwise_quartic(fam)?;
    let quartic_census = singular_census(&quartic.curve)?;
    let dual_census = singular_census(&dual.curve)?;
    let class = plucker_class(4, &quartic_census);
    let routes_agree = quartic.curve == pointwise.curve;
    let bitangent = bitangent(&quartic.curve, fam);
    Ok(EnvelopeReport { quartic, dual, pointwise, quartic_census, dual_census, class, routes_agree, bitangent })
}
