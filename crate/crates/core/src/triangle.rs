//! Triangle constructions: orthocenter, nine-point circle, tritangent
//! circles and the two concurrence/centroid theorems built on them.

use num_traits::{Signed, Zero};

use crate::conic::{certified_tangency, conic_tangency, BigMat, Conic, ConicTangency};
use crate::error::{GeomError, Result};
use crate::plane::{collinear, join, meet, Chart, HLine, HPoint};
use crate::scalar::linalg::null_space;
use crate::scalar::{int, rational_sqrt, within_tolerance, BigFloat, Rational, DEFAULT_PRECISION, MAX_PRECISION};

type Xy = (Rational, Rational);

/// Three affine, non-collinear vertices with positive orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    v: [HPoint; 3],
    xy: [Xy; 3],
}

impl Triangle {
    /// Vertices in the standard chart; `B` and `C` are swapped when the
    /// orientation is negative.
    pub fn new(a: HPoint, b: HPoint, c: HPoint) -> Result<Self> {
        let ch = Chart::default();
        if collinear(&a, &b, &c) {
            return Err(GeomError::CollinearVertices("A, B, C".into()));
        }
        let area = ch.signed_area2(&a, &b, &c)?;
        let v = if area.is_negative() { [a, c, b] } else { [a, b, c] };
        let xy = [ch.xy(&v[0])?, ch.xy(&v[1])?, ch.xy(&v[2])?];
        Ok(Triangle { v, xy })
    }

    pub fn from_xy(pts: [(i64, i64); 3]) -> Result<Self> {
        let [a, b, c] = pts.map(|(x, y)| HPoint::affine_i(x, y));
        Self::new(a, b, c)
    }

    pub fn vertices(&self) -> &[HPoint; 3] {
        &self.v
    }

    pub fn xy(&self) -> &[Xy; 3] {
        &self.xy
    }

    /// Squared lengths of the sides opposite `A`, `B`, `C`.
    pub fn side_squares(&self) -> [Rational; 3] {
        let d2 = |i: usize, j: usize| {
            let (dx, dy) = (&self.xy[i].0 - &self.xy[j].0, &self.xy[i].1 - &self.xy[j].1);
            &dx * &dx + &dy * &dy
        };
        [d2(1, 2), d2(2, 0), d2(0, 1)]
    }

    /// Side lengths when all three are rational.
    pub fn rational_sides(&self) -> Option<[Rational; 3]> {
        let [a, b, c] = self.side_squares();
        Some([rational_sqrt(&a)?, rational_sqrt(&b)?, rational_sqrt(&c)?])
    }

    pub fn area(&self) -> Rational {
        let [(ax, ay), (bx, by), (cx, cy)] = &self.xy;
        ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) / int(2)
    }

    pub fn side(&self, i: usize) -> HLine {
        join(&self.v[(i + 1) % 3], &self.v[(i + 2) % 3]).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub cx: Rational,
    pub cy: Rational,
    pub r2: Rational,
}

impl Circle {
    pub fn to_conic(&self) -> Conic {
        Conic::circle(&self.cx, &self.cy, &self.r2)
    }

    pub fn center(&self) -> HPoint {
        HPoint::affine(self.cx.clone(), self.cy.clone())
    }
}

/// Circle with interval center and radius.
#[derive(Clone)]
pub struct BigCircle {
    pub cx: BigFloat,
    pub cy: BigFloat,
    pub r: BigFloat,
}

impl BigCircle {
    pub fn matrix(&self) -> BigMat {
        let p = self.cx.precision();
        let (o, one) = (BigFloat::from_i64(0, p), BigFloat::from_i64(1, p));
        let k = self.cx.square().add(&self.cy.square()).sub(&self.r.square());
        [
            [one.clone(), o.clone(), self.cx.neg()],
            [o, one, self.cy.neg()],
            [self.cx.neg(), self.cy.neg(), k],
        ]
    }
}

fn circle_through(p: &[Xy; 3]) -> Result<Circle> {
    let [(ax, ay), (bx, by), (cx, cy)] = p;
    let d = int(2) * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if d.is_zero() {
        return Err(GeomError::NotCollinear);
    }
    let (a2, b2, c2) = (ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy);
    let ux = (&a2 * (by - cy) + &b2 * (cy - ay) + &c2 * (ay - by)) / &d;
    let uy = (&a2 * (cx - bx) + &b2 * (ax - cx) + &c2 * (bx - ax)) / &d;
    let r2 = (ax - &ux) * (ax - &ux) + (ay - &uy) * (ay - &uy);
    Ok(Circle { cx: ux, cy: uy, r2 })
}

pub fn circumcircle(t: &Triangle) -> Circle {
    circle_through(&t.xy).expect("non-collinear")
}

/// Meet of two altitudes; the third is checked to pass through it.
pub fn orthocenter(t: &Triangle) -> HPoint {
    let ch = Chart::default();
    let alt = |i: usize| ch.perpendicular(&t.v[i], &t.side(i)).unwrap();
    let h = meet(&alt(0), &alt(1)).unwrap();
    assert!(h.on(&alt(2)), "altitudes not concurrent");
    h
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NinePoints {
    pub circle: Circle,
    /// Side midpoints, feet of the altitudes, then midpoints of the
    /// segments from the vertices to the orthocenter.
    pub points: [HPoint; 9],
    /// Some of the nine points coincide (right triangles).
    pub coincident: bool,
}

pub fn nine_point_circle(t: &Triangle) -> Result<NinePoints> {
    let ch = Chart::default();
    let v = &t.v;
    let h = orthocenter(t);
    let mid = |i: usize| ch.midpoint(&v[(i + 1) % 3], &v[(i + 2) % 3]).unwrap();
    let foot = |i: usize| meet(&ch.perpendicular(&v[i], &t.side(i)).unwrap(), &t.side(i)).unwrap();
    let euler = |i: usize| ch.midpoint(&v[i], &h).unwrap();
    let points = [mid(0), mid(1), mid(2), foot(0), foot(1), foot(2), euler(0), euler(1), euler(2)];
    let m: [Xy; 3] = std::array::from_fn(|i| ch.xy(&points[i]).unwrap());
    let circle = circle_through(&m)?;
    let conic = circle.to_conic();
    if !points.iter().all(|p| conic.contains(p)) {
        return Err(GeomError::VerificationFailed("nine points not concyclic".into()));
    }
    let coincident = (0..9).any(|i| (i + 1..9).any(|j| points[i] == points[j]));
    Ok(NinePoints { circle, points, coincident })
}

/// Incircle, then the excircles opposite `A`, `B`, `C`, when the side
/// lengths are rational.
pub fn tritangent_exact(t: &Triangle) -> Option<[Circle; 4]> {
    let [a, b, c] = t.rational_sides()?;
    let area = t.area();
    let s = (&a + &b + &c) / int(2);
    let [(ax, ay), (bx, by), (cx, cy)] = &t.xy;
    let make = |wa: Rational, wb: Rational, wc: Rational, den: Rational| {
        let sum = &wa + &wb + &wc;
        let r = &area / &den;
        Circle { cx: (&wa * ax + &wb * bx + &wc * cx) / &sum, cy: (&wa * ay + &wb * by + &wc * cy) / &sum, r2: &r * &r }
    };
    Some([
        make(a.clone(), b.clone(), c.clone(), s.clone()),
        make(-a.clone(), b.clone(), c.clone(), &s - &a),
        make(a.clone(), -b.clone(), c.clone(), &s - &b),
        make(a.clone(), b.clone(), -c.clone(), &s - &c),
    ])
}

/// Interval version of [`tritangent_exact`] at the given precision.
pub fn tritangent_big(t: &Triangle, prec: u32) -> Result<[BigCircle; 4]> {
    let [a, b, c] = t.side_squares().map(|s| BigFloat::from_rational(&s, prec).sqrt());
    let (a, b, c) = (a?, b?, c?);
    let area = BigFloat::from_rational(&t.area(), prec);
    let two = BigFloat::from_i64(2, prec);
    let s = a.add(&b).add(&c).div(&two)?;
    let xy: Vec<(BigFloat, BigFloat)> =
        t.xy.iter().map(|(x, y)| (BigFloat::from_rational(x, prec), BigFloat::from_rational(y, prec))).collect();
    let make = |wa: BigFloat, wb: BigFloat, wc: BigFloat, den: BigFloat| -> Result<BigCircle> {
        let sum = wa.add(&wb).add(&wc);
        let cx = wa.mul(&xy[0].0).add(&wb.mul(&xy[1].0)).add(&wc.mul(&xy[2].0)).div(&sum)?;
        let cy = wa.mul(&xy[0].1).add(&wb.mul(&xy[1].1)).add(&wc.mul(&xy[2].1)).div(&sum)?;
        Ok(BigCircle { cx, cy, r: area.div(&den)? })
    };
    Ok([
        make(a.clone(), b.clone(), c.clone(), s.clone())?,
        make(a.neg(), b.clone(), c.clone(), s.sub(&a))?,
        make(a.clone(), b.neg(), c.clone(), s.sub(&b))?,
        make(a.clone(), b.clone(), c.neg(), s.sub(&c))?,
    ])
}

/// Exact outcome, or an interval outcome with the precision that settled it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Exact(bool),
    Certified { holds: bool, precision: u32 },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        match self {
            Verdict::Exact(h) => *h,
            Verdict::Certified { holds, .. } => *holds,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact(_))
    }
}

fn certified(start: u32, mut f: impl FnMut(u32) -> Result<Vec<BigFloat>>) -> Result<Verdict> {
    let mut prec = start;
    loop {
        if let Some(holds) = within_tolerance(&f(prec)?, prec) {
            return Ok(Verdict::Certified { holds, precision: prec });
        }
        if prec >= MAX_PRECISION {
            return Err(GeomError::Undecidable(prec));
        }
        prec *= 2;
    }
}

/// Tangency of the nine-point circle to the incircle and the three
/// excircles.
pub fn feuerbach(t: &Triangle) -> Result<[Verdict; 4]> {
    feuerbach_from(t, DEFAULT_PRECISION)
}

/// As [`feuerbach`], escalating from `start` bits when not exact.
pub fn feuerbach_from(t: &Triangle, start: u32) -> Result<[Verdict; 4]> {
    let npc = nine_point_circle(t)?.circle.to_conic();
    if let Some(circles) = tritangent_exact(t) {
        let mut out = [Verdict::Exact(false); 4];
        for (o, c) in out.iter_mut().zip(circles.iter()) {
            *o = Verdict::Exact(matches!(conic_tangency(&npc, &c.to_conic())?, ConicTangency::Tangent { .. }));
        }
        return Ok(out);
    }
    let npc_big = |prec: u32| -> BigMat { npc.matrix().clone().map(|r| r.map(|v| BigFloat::from_rational(&v, prec))) };
    let mut out = [Verdict::Exact(false); 4];
    for (k, o) in out.iter_mut().enumerate() {
        let res = certified_tangency(|prec| Ok((npc_big(prec), tritangent_big(t, prec)?[k].matrix())), start)?;
        *o = Verdict::Certified { holds: res.tangent, precision: res.precision };
    }
    Ok(out)
}

/// The circumcenter is the centroid of the four tritangent centers.
pub fn loria_i(t: &Triangle) -> Result<Verdict> {
    loria_i_from(t, DEFAULT_PRECISION)
}

pub fn loria_i_from(t: &Triangle, start: u32) -> Result<Verdict> {
    let o = circumcircle(t);
    if let Some(cs) = tritangent_exact(t) {
        let sx = cs.iter().fold(Rational::zero(), |a, c| a + &c.cx) / int(4);
        let sy = cs.iter().fold(Rational::zero(), |a, c| a + &c.cy) / int(4);
        return Ok(Verdict::Exact(sx == o.cx && sy == o.cy));
    }
    certified(start, |prec| {
        let cs = tritangent_big(t, prec)?;
        let four = BigFloat::from_i64(4, prec);
        let sx = cs.iter().skip(1).fold(cs[0].cx.clone(), |a, c| a.add(&c.cx)).div(&four)?;
        let sy = cs.iter().skip(1).fold(cs[0].cy.clone(), |a, c| a.add(&c.cy)).div(&four)?;
        Ok(vec![sx.sub(&BigFloat::from_rational(&o.cx, prec)), sy.sub(&BigFloat::from_rational(&o.cy, prec))])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bisector {
    Internal,
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoriaII {
    pub verdict: Verdict,
    /// Common point in homogeneous coordinates, exact when the side
    /// lengths are rational.
    pub point: Option<HPoint>,
    pub approx: [f64; 3],
}

/// Parallels through the vertices in direction `(dx, dy)`, each reflected
/// in the bisector at its vertex, are concurrent.
pub fn loria_ii(t: &Triangle, dx: &Rational, dy: &Rational, bisector: Bisector) -> Result<LoriaII> {
    loria_ii_from(t, dx, dy, bisector, DEFAULT_PRECISION)
}

pub fn loria_ii_from(t: &Triangle, dx: &Rational, dy: &Rational, bisector: Bisector, start: u32) -> Result<LoriaII> {
    if dx.is_zero() && dy.is_zero() {
        return Err(GeomError::NoDirection);
    }
    let sign = if bisector == Bisector::Internal { int(1) } else { int(-1) };
    if let Some(len) = t.rational_sides() {
        let lines: Vec<HLine> = (0..3)
            .map(|i| {
                let (p, q, r) = (&t.xy[i], &t.xy[(i + 1) % 3], &t.xy[(i + 2) % 3]);
                let (ux, uy) = (&q.0 - &p.0, &q.1 - &p.1);
                let (vx, vy) = (&r.0 - &p.0, &r.1 - &p.1);
                // |u| is the side opposite the third vertex
                let (lu, lv) = (&len[(i + 2) % 3], &len[(i + 1) % 3]);
                let wx = &ux * lv + &sign * &vx * lu;
                let wy = &uy * lv + &sign * &vy * lu;
                let dw = dx * &wx + dy * &wy;
                let ww = &wx * &wx + &wy * &wy;
                let ex = int(2) * &dw * &wx - &ww * dx;
                let ey = int(2) * &dw * &wy - &ww * dy;
                HLine::new([ey.clone(), -ex.clone(), &ex * &p.1 - &ey * &p.0]).unwrap()
            })
            .collect();
        let holds = crate::plane::concurrent(&lines[0], &lines[1], &lines[2]);
        let point = meet(&lines[0], &lines[1]).ok();
        let approx = point.as_ref().map_or([f64::NAN; 3], |p| p.coords().clone().map(|v| num_traits::ToPrimitive::to_f64(&v).unwrap()));
        return Ok(LoriaII { verdict: Verdict::Exact(holds), point, approx });
    }
    let mut approx = [f64::NAN; 3];
    let verdict = certified(start, |prec| {
        let bf = |r: &Rational| BigFloat::from_rational(r, prec);
        let sq = t.side_squares();
        let len: Vec<BigFloat> = sq.iter().map(|s| bf(s).sqrt()).collect::<Result<_>>()?;
        let (dxb, dyb) = (bf(dx), bf(dy));
        let dnorm = bf(&(dx * dx + dy * dy)).sqrt()?;
        let scale = t.xy.iter().flat_map(|(x, y)| [x.abs(), y.abs()]).fold(int(1), |m, v| if v > m { v } else { m });
        let norm = dnorm.mul(&bf(&(scale + int(1))));
        let mut lines = vec![];
        for i in 0..3 {
            let (p, q, r) = (&t.xy[i], &t.xy[(i + 1) % 3], &t.xy[(i + 2) % 3]);
            let (ux, uy) = (bf(&(&q.0 - &p.0)), bf(&(&q.1 - &p.1)));
            let (vx, vy) = (bf(&(&r.0 - &p.0)), bf(&(&r.1 - &p.1)));
            let (lu, lv) = (&len[(i + 2) % 3], &len[(i + 1) % 3]);
            let s = bf(&sign);
            let wx = ux.mul(lv).add(&s.mul(&vx).mul(lu));
            let wy = uy.mul(lv).add(&s.mul(&vy).mul(lu));
            let dw = dxb.mul(&wx).add(&dyb.mul(&wy));
            let ww = wx.square().add(&wy.square());
            let two = BigFloat::from_i64(2, prec);
            // reflected direction, divided by |w|² so that it has length |d|
            let ex = two.mul(&dw).mul(&wx).div(&ww)?.sub(&dxb);
            let ey = two.mul(&dw).mul(&wy).div(&ww)?.sub(&dyb);
            let (px, py) = (bf(&p.0), bf(&p.1));
            lines.push([ey.div(&norm)?, ex.neg().div(&norm)?, ex.mul(&py).sub(&ey.mul(&px)).div(&norm)?]);
        }
        let det = |a: &[BigFloat; 3], b: &[BigFloat; 3], c: &[BigFloat; 3]| {
            a[0].mul(&b[1].mul(&c[2]).sub(&b[2].mul(&c[1])))
                .sub(&a[1].mul(&b[0].mul(&c[2]).sub(&b[2].mul(&c[0]))))
                .add(&a[2].mul(&b[0].mul(&c[1]).sub(&b[1].mul(&c[0]))))
        };
        let (l0, l1) = (&lines[0], &lines[1]);
        approx = [
            l0[1].mul(&l1[2]).sub(&l0[2].mul(&l1[1])).mid_f64(),
            l0[2].mul(&l1[0]).sub(&l0[0].mul(&l1[2])).mid_f64(),
            l0[0].mul(&l1[1]).sub(&l0[1].mul(&l1[0])).mid_f64(),
        ];
        Ok(vec![det(&lines[0], &lines[1], &lines[2])])
    })?;
    Ok(LoriaII { verdict, point: None, approx })
}

/// Every conic through the vertices with zero trace (a rectangular
/// hyperbola) passes through the orthocenter.
pub fn rectangular_hyperbolas_through_orthocenter(t: &Triangle) -> Result<bool> {
    let mut rows: Vec<Vec<Rational>> = t
        .v
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords();
            vec![x * x, x * y, x * z, y * y, y * z, z * z]
        })
        .collect();
    // coefficient vector (a, b, c, d, e, f) of a x² + b xy + ... ; trace a + d
    rows.push(vec![int(1), int(0), int(0), int(1), int(0), int(0)]);
    let basis = null_space(&rows, 6);
    let h = orthocenter(t);
    let [x, y, z] = h.coords();
    let mono = [x * x, x * y, x * z, y * y, y * z, z * z];
    Ok(basis.len() == 2
        && basis.iter().all(|c| c.iter().zip(mono.iter()).fold(Rational::zero(), |s, (a, b)| s + a * b).is_zero()))
}

/// Nine-point circle radius squared is a quarter of the circumradius squared.
pub fn half_circumradius(t: &Triangle) -> Result<bool> {
    Ok(nine_point_circle(t)?.circle.r2 * int(4) == circumcircle(t).r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrangle::{npc_steiner, Quadrangle};
    use crate::scalar::rat;

    fn t345() -> Triangle {
        Triangle::from_xy([(0, 0), (4, 0), (0, 3)]).unwrap()
    }

    #[test]
    fn orthocenters() {
        assert_eq!(orthocenter(&t345()), HPoint::affine_i(0, 0));
        assert_eq!(orthocenter(&Triangle::from_xy([(0, 0), (4, 0), (1, 3)]).unwrap()), HPoint::affine_i(1, 1));
        let h = orthocenter(&Triangle::from_xy([(0, 0), (2, 0), (1, 5)]).unwrap());
        assert_eq!(Chart::default().xy(&h).unwrap().0, int(1));
    }

    #[test]
    fn nine_point_circle_of_345() {
        let n = nine_point_circle(&t345()).unwrap();
        assert_eq!(n.circle, Circle { cx: int(1), cy: rat(3, 4), r2: rat(25, 16) });
        assert!(n.coincident);
        let c = n.circle.to_conic();
        for (x, y) in [(int(2), int(0)), (int(0), rat(3, 2)), (int(2), rat(3, 2)), (rat(36, 25), rat(48, 25)), (int(0), int(0))] {
            assert!(c.contains(&HPoint::affine(x, y)));
        }
        assert!(half_circumradius(&t345()).unwrap());
    }

    #[test]
    fn nine_point_circle_matches_quadrangle_conic() {
        let t = Triangle::from_xy([(0, 0), (4, 0), (1, 3)]).unwrap();
        let [a, b, c] = t.vertices().clone();
        let q = Quadrangle::new([a, b, c, orthocenter(&t)]).unwrap();
        let g = npc_steiner(&q, &Chart::default()).unwrap();
        assert_eq!(g.conic, nine_point_circle(&t).unwrap().circle.to_conic());
    }

    #[test]
    fn tritangent_circles_345() {
        let cs = tritangent_exact(&t345()).unwrap();
        let expect = [((1, 1), 1), ((6, 6), 6), ((-2, 2), 2), ((3, -3), 3)];
        for (c, ((x, y), r)) in cs.iter().zip(expect) {
            assert_eq!((c.cx.clone(), c.cy.clone(), c.r2.clone()), (int(x), int(y), int(r * r)));
            for i in 0..3 {
                assert!(matches!(
                    crate::conic::line_tangency(&c.to_conic(), &t345().side(i)).unwrap(),
                    crate::conic::LineTangency::Tangent(_)
                ));
            }
        }
    }

    #[test]
    fn feuerbach_exact_and_certified() {
        assert!(feuerbach(&t345()).unwrap().iter().all(|v| v.is_exact() && v.holds()));
        let v = feuerbach(&Triangle::from_xy([(0, 0), (5, 1), (2, 4)]).unwrap()).unwrap();
        assert!(v.iter().all(|v| !v.is_exact() && v.holds()));
    }

    #[test]
    fn loria_first() {
        assert_eq!(loria_i(&t345()).unwrap(), Verdict::Exact(true));
        assert_eq!(circumcircle(&t345()).center(), HPoint::affine(int(2), rat(3, 2)));
        let t = Triangle::from_xy([(0, 0), (12, 0), (0, 5)]).unwrap();
        assert_eq!(loria_i(&t).unwrap(), Verdict::Exact(true));
        let v = loria_i(&Triangle::from_xy([(0, 0), (5, 1), (2, 4)]).unwrap()).unwrap();
        assert!(matches!(v, Verdict::Certified { holds: true, .. }));
    }

    #[test]
    fn loria_second() {
        let r = loria_ii(&t345(), &int(1), &int(0), Bisector::Internal).unwrap();
        assert_eq!(r.verdict, Verdict::Exact(true));
        let iso = Triangle::from_xy([(0, 0), (4, 0), (2, 5)]).unwrap();
        let r = loria_ii(&iso, &int(0), &int(1), Bisector::Internal).unwrap();
        assert!(r.verdict.holds());
        assert!((r.approx[0] / r.approx[2] - 2.0).abs() < 1e-9);
        let r = loria_ii(&Triangle::from_xy([(0, 0), (5, 1), (2, 4)]).unwrap(), &int(3), &int(-7), Bisector::Internal).unwrap();
        assert!(matches!(r.verdict, Verdict::Certified { holds: true, .. }));
    }

    #[test]
    fn rectangular_hyperbolas() {
        assert!(rectangular_hyperbolas_through_orthocenter(&Triangle::from_xy([(0, 0), (4, 0), (1, 3)]).unwrap()).unwrap());
        assert!(rectangular_hyperbolas_through_orthocenter(&Triangle::from_xy([(0, 0), (7, 2), (-1, 5)]).unwrap()).unwrap());
    }
}
