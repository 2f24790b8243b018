//! The complete quadrangle and its nine-point conic.

use num_traits::{Signed, Zero};

use crate::conic::{center, classify, conic_through_tangent, Conic, ConicKind};
use crate::cremona::QuadraticMap;
use crate::error::{GeomError, Result};
use crate::plane::{collinear, harmonic_conjugate, join, meet, Chart, HLine, HPoint};
use crate::scalar::linalg::{cross, mat_vec};
use crate::scalar::{Poly, Rational};

const NAMES: [&str; 4] = ["A", "B", "C", "D"];
const SIDE_INDEX: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Four points, no three collinear, with their six sides and the diagonal
/// points `E = AD∩BC`, `F = AB∩CD`, `G = AC∩BD`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quadrangle {
    v: [HPoint; 4],
    sides: [HLine; 6],
    fund: [HPoint; 3],
}

impl Quadrangle {
    pub fn new(v: [HPoint; 4]) -> Result<Self> {
        Self::named(v, NAMES)
    }

    /// Like [`Quadrangle::new`], with vertex names used in error messages.
    pub fn named(v: [HPoint; 4], names: [&str; 4]) -> Result<Self> {
        for (i, j) in SIDE_INDEX {
            if v[i] == v[j] {
                return Err(GeomError::DuplicateVertex(format!("{} = {}", names[i], names[j])));
            }
        }
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            if collinear(&v[i], &v[j], &v[k]) {
                return Err(GeomError::CollinearVertices(format!("{}, {}, {}", names[i], names[j], names[k])));
            }
        }
        let sides = SIDE_INDEX.map(|(i, j)| join(&v[i], &v[j]).unwrap());
        let s = |i: usize, j: usize| &sides[SIDE_INDEX.iter().position(|&p| p == (i, j)).unwrap()];
        let fund = [
            meet(s(0, 3), s(1, 2)).unwrap(),
            meet(s(0, 1), s(2, 3)).unwrap(),
            meet(s(0, 2), s(1, 3)).unwrap(),
        ];
        Ok(Quadrangle { v, sides, fund })
    }

    pub fn vertices(&self) -> &[HPoint; 4] {
        &self.v
    }

    /// Side through vertices `i < j`.
    pub fn side(&self, i: usize, j: usize) -> &HLine {
        let key = if i < j { (i, j) } else { (j, i) };
        &self.sides[SIDE_INDEX.iter().position(|&p| p == key).expect("distinct vertex indices")]
    }

    /// Sides in the order AB, AC, AD, BC, BD, CD, with their endpoints.
    pub fn sides(&self) -> Vec<(&HLine, &HPoint, &HPoint)> {
        SIDE_INDEX.iter().enumerate().map(|(k, &(i, j))| (&self.sides[k], &self.v[i], &self.v[j])).collect()
    }

    /// `[E, F, G]`.
    pub fn fundamental(&self) -> &[HPoint; 3] {
        &self.fund
    }

    /// Side of the fundamental triangle opposite its `k`-th vertex.
    pub fn fundamental_side(&self, k: usize) -> HLine {
        join(&self.fund[(k + 1) % 3], &self.fund[(k + 2) % 3]).unwrap()
    }

    /// The two quadrangle sides through the `k`-th diagonal point.
    pub fn sides_through_fundamental(&self, k: usize) -> (&HLine, &HLine) {
        match k {
            0 => (self.side(0, 3), self.side(1, 2)),
            1 => (self.side(0, 1), self.side(2, 3)),
            _ => (self.side(0, 2), self.side(1, 3)),
        }
    }

    pub fn is_fundamental_side(&self, r: &HLine) -> bool {
        (0..3).any(|k| self.fundamental_side(k) == *r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeciesInfo {
    pub species: Species,
    pub orthogonal: bool,
    pub cyclic: bool,
}

/// Convex position gives the first species; orthogonal when some vertex is
/// the orthocenter of the others; cyclic when the vertices are concyclic.
pub fn species(q: &Quadrangle, chart: &Chart) -> Result<SpeciesInfo> {
    let v = q.vertices();
    for p in v {
        if !chart.is_finite(p) {
            return Err(GeomError::PointAtInfinity);
        }
    }
    let area = |i: usize, j: usize, k: usize| chart.signed_area2(&v[i], &v[j], &v[k]).map(|a| a.is_positive());
    let mut inside = false;
    for d in 0..4 {
        let o: Vec<usize> = (0..4).filter(|&i| i != d).collect();
        let whole = area(o[0], o[1], o[2])?;
        if area(o[0], o[1], d)? == whole && area(o[1], o[2], d)? == whole && area(o[2], o[0], d)? == whole {
            inside = true;
        }
    }
    let species = if inside { Species::Second } else { Species::First };
    let mut orthogonal = true;
    for k in 0..3 {
        let (l, m) = q.sides_through_fundamental(k);
        if !chart.orthogonal(l, m)? {
            orthogonal = false;
        }
    }
    let rows: Vec<Vec<Rational>> = v
        .iter()
        .map(|p| {
            let (x, y) = chart.xy(p).unwrap();
            vec![&x * &x + &y * &y, x, y, Rational::from_integer(1.into())]
        })
        .collect();
    let cyclic = crate::scalar::linalg::rank(&rows) < 4;
    Ok(SpeciesInfo { species, orthogonal, cyclic })
}

/// Line through the midpoints of `AD`, `BC` and of the segment joining the
/// diagonal points `F`, `G`.
pub fn gauss_line(q: &Quadrangle, chart: &Chart) -> Result<HLine> {
    let v = q.vertices();
    let f = q.fundamental();
    let m1 = chart.midpoint(&v[0], &v[3])?;
    let m2 = chart.midpoint(&v[1], &v[2])?;
    let m3 = chart.midpoint(&f[1], &f[2])?;
    if !collinear(&m1, &m2, &m3) {
        return Err(GeomError::VerificationFailed("midpoints not collinear".into()));
    }
    join(&m1, &m2).or_else(|_| join(&m1, &m3)).or_else(|_| join(&m2, &m3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    PoleLocus,
    HarmonicSix,
    CremonaImage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NinePointConic {
    pub conic: Conic,
    pub transversal: HLine,
    pub provenance: Provenance,
    /// The conic is a line pair (the transversal is a fundamental side).
    pub degenerate: bool,
    /// Vertex where the conic touches the transversal, when it passes
    /// through one.
    pub tangent_at_vertex: Option<HPoint>,
}

fn finish(q: &Quadrangle, conic: Conic, r: &HLine, provenance: Provenance) -> NinePointConic {
    let degenerate = conic.is_degenerate();
    let tangent_at_vertex = q.vertices().iter().find(|v| v.on(r)).cloned();
    NinePointConic { conic, transversal: r.clone(), provenance, degenerate, tangent_at_vertex }
}

fn check_transversal(q: &Quadrangle, r: &HLine, allow_degenerate: bool) -> Result<()> {
    if q.vertices().iter().filter(|v| v.on(r)).count() >= 2 {
        return Err(GeomError::NonGeneric("transversal is a side of the quadrangle".into()));
    }
    if q.is_fundamental_side(r) && !allow_degenerate {
        return Err(GeomError::FundamentalTransversal);
    }
    Ok(())
}

/// Locus of the poles of `r` with respect to the pencil through the
/// vertices: the points `X` where `C1·X`, `C2·X` and `r` are dependent.
pub fn npc_pole_locus(q: &Quadrangle, r: &HLine, allow_degenerate: bool) -> Result<NinePointConic> {
    check_transversal(q, r, allow_degenerate)?;
    let p = crate::pencil::pencil_of_quadrangle(q);
    let (c1, c2) = p.generators();
    let lin = |m: &crate::scalar::linalg::Mat3<Rational>| -> [Poly; 3] { std::array::from_fn(|i| Poly::linear(&m[i])) };
    let (a, b) = (lin(c1.matrix()), lin(c2.matrix()));
    let rc = r.coords();
    // (C1 X × C2 X) · r
    let cr = [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]];
    let mut poly = Poly::zero();
    for i in 0..3 {
        poly = &poly + &cr[i].scale(&rc[i]);
    }
    if poly.is_zero() {
        return Err(GeomError::DegenerateRestriction);
    }
    Ok(finish(q, Conic::from_poly(&poly)?, r, Provenance::PoleLocus))
}

/// The six points where `r` meets the sides, and their harmonic conjugates
/// with respect to the side endpoints.
pub fn harmonic_points(q: &Quadrangle, r: &HLine) -> Result<Vec<(HPoint, HPoint)>> {
    let mut out = vec![];
    for (side, a, b) in q.sides() {
        let p = meet(side, r).map_err(|_| GeomError::NonGeneric("transversal is a side of the quadrangle".into()))?;
        let h = if p == *a || p == *b { p.clone() } else { harmonic_conjugate(&p, a, b)? };
        out.push((p, h));
    }
    Ok(out)
}

/// Conic through the diagonal points and the six harmonic conjugates of
/// `r`'s traces on the sides; the system must leave exactly one conic.
pub fn npc_harmonic_six(q: &Quadrangle, r: &HLine, allow_degenerate: bool) -> Result<NinePointConic> {
    check_transversal(q, r, allow_degenerate)?;
    let h = harmonic_points(q, r)?;
    let mut pts: Vec<HPoint> = q.fundamental().to_vec();
    for (_, x) in &h {
        if !pts.contains(x) {
            pts.push(x.clone());
        }
    }
    let tangents: Vec<(HPoint, HLine)> = q.vertices().iter().filter(|v| v.on(r)).map(|v| (v.clone(), r.clone())).collect();
    let conic = conic_through_tangent(&pts, &tangents)?;
    Ok(finish(q, conic, r, Provenance::HarmonicSix))
}

/// Image of `r` under the quadratic transformation of the quadrangle.
pub fn npc_cremona(q: &Quadrangle, r: &HLine) -> Result<NinePointConic> {
    check_transversal(q, r, false)?;
    let f = QuadraticMap::new(q)?;
    let conic = f.apply_line(r)?;
    Ok(finish(q, conic, r, Provenance::CremonaImage))
}

/// Whether a conic passes through all nine points attached to `r`.
pub fn nine_incidences(q: &Quadrangle, r: &HLine, c: &Conic) -> Result<bool> {
    let h = harmonic_points(q, r)?;
    Ok(q.fundamental().iter().all(|p| c.contains(p)) && h.iter().all(|(_, x)| c.contains(x)))
}

/// Steiner's conic: the nine-point conic of the line at infinity, whose
/// center is the centroid of the vertices.
pub fn npc_steiner(q: &Quadrangle, chart: &Chart) -> Result<NinePointConic> {
    let npc = npc_harmonic_six(q, &chart.infinity, true)?;
    if !npc.degenerate && classify(&npc.conic, chart).kind != Some(ConicKind::Parabola) {
        let c = center(&npc.conic, chart)?;
        if c.point != chart.centroid(q.vertices())? {
            return Err(GeomError::VerificationFailed("center differs from the vertex centroid".into()));
        }
    }
    Ok(npc)
}

/// The line `L` whose nine-point conic is `Ω`.
pub fn steiner_line(q: &Quadrangle, omega: &Conic) -> Result<HLine> {
    let f = QuadraticMap::new(q)?;
    let l = f.apply_conic_to_line(omega)?;
    let back = npc_pole_locus(q, &l, false)?;
    if back.conic != *omega {
        return Err(GeomError::VerificationFailed("pole locus of the recovered line differs".into()));
    }
    if !harmonic_points(q, &l)?.iter().all(|(_, x)| omega.contains(x)) {
        return Err(GeomError::VerificationFailed("harmonic points not on the conic".into()));
    }
    Ok(l)
}

/// Each diagonal point is the pole of the opposite side of the diagonal
/// triangle for the given conic.
pub fn self_polar(q: &Quadrangle, c: &Conic) -> bool {
    (0..3).all(|k| {
        let pl = mat_vec(c.matrix(), q.fundamental()[k].coords());
        cross(&pl, q.fundamental_side(k).coords()).iter().all(|v| v.is_zero())
    })
}

/// The three lines joining midpoints of opposite sides meet at the vertex
/// centroid, which bisects each of them, and they pass through the
/// midpoints of the diagonal triangle's sides.
pub fn midpoint_theorem(q: &Quadrangle, chart: &Chart) -> Result<bool> {
    let v = q.vertices();
    let g = chart.centroid(v)?;
    let pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
    for ((a, b), (c, d)) in pairs {
        let m1 = chart.midpoint(&v[a], &v[b])?;
        let m2 = chart.midpoint(&v[c], &v[d])?;
        if chart.midpoint(&m1, &m2)? != g {
            return Ok(false);
        }
    }
    let f = q.fundamental();
    for k in 0..3 {
        let (a, b) = (&f[(k + 1) % 3], &f[(k + 2) % 3]);
        if let Ok(m) = chart.midpoint(a, b) {
            let on_some = pairs.iter().any(|&((i, j), (s, t))| {
                let m1 = chart.midpoint(&v[i], &v[j]).unwrap();
                let m2 = chart.midpoint(&v[s], &v[t]).unwrap();
                collinear(&m1, &m2, &m)
            });
            if !on_some {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn quad(pts: [(i64, i64); 4]) -> Quadrangle {
        Quadrangle::new(pts.map(|(x, y)| HPoint::affine_i(x, y))).unwrap()
    }

    fn standard() -> Quadrangle {
        quad([(1, 1), (1, -1), (-1, -1), (-1, 1)])
    }

    fn orthogonal() -> Quadrangle {
        // orthocenter of (0,0),(4,0),(1,3) is (1,1)
        quad([(0, 0), (4, 0), (1, 3), (1, 1)])
    }

    #[test]
    fn square_fundamental_triangle() {
        let q = standard();
        assert_eq!(q.fundamental(), &[HPoint::from_ints(1, 0, 0), HPoint::from_ints(0, 1, 0), HPoint::from_ints(0, 0, 1)]);
    }

    #[test]
    fn invalid_quadrangles() {
        let e = Quadrangle::new([(0, 0), (4, 0), (0, 3), (0, 0)].map(|(x, y)| HPoint::affine_i(x, y)));
        assert!(matches!(e, Err(GeomError::DuplicateVertex(s)) if s == "A = D"));
        let e = Quadrangle::new([(0, 0), (1, 1), (2, 2), (0, 3)].map(|(x, y)| HPoint::affine_i(x, y)));
        assert!(matches!(e, Err(GeomError::CollinearVertices(s)) if s == "A, B, C"));
    }

    #[test]
    fn species_examples() {
        let ch = Chart::default();
        let s = species(&quad([(0, 0), (4, 0), (5, 3), (1, 4)]), &ch).unwrap();
        assert_eq!(s.species, Species::First);
        assert!(!s.orthogonal && !s.cyclic);
        let s = species(&quad([(0, 0), (4, 0), (0, 4), (1, 1)]), &ch).unwrap();
        assert_eq!(s.species, Species::Second);
        let s = species(&orthogonal(), &ch).unwrap();
        assert_eq!(s.species, Species::Second);
        assert!(s.orthogonal);
        let c = Quadrangle::new([
            HPoint::affine(rat(3, 5), rat(4, 5)),
            HPoint::affine(rat(-3, 5), rat(4, 5)),
            HPoint::affine_i(-1, 0),
            HPoint::affine_i(1, 0),
        ])
        .unwrap();
        assert!(species(&c, &ch).unwrap().cyclic);
    }

    #[test]
    fn gauss_line_collinear() {
        let q = quad([(0, 0), (4, 0), (5, 3), (1, 4)]);
        let g = gauss_line(&q, &Chart::default()).unwrap();
        let ch = Chart::default();
        assert!(ch.midpoint(&q.vertices()[0], &q.vertices()[3]).unwrap().on(&g));
        assert!(matches!(gauss_line(&standard(), &ch), Err(GeomError::PointAtInfinity)));
    }

    #[test]
    fn standard_frame_formula() {
        let q = standard();
        for (u, v, w) in [(1, 1, 1), (2, -3, 5), (0, 1, 7)] {
            let r = HLine::from_ints(u, v, w);
            let g = npc_pole_locus(&q, &r, false).unwrap();
            let expect = Conic::parse(&format!("{u}*y*z + {v}*x*z + {w}*x*y")).unwrap();
            assert_eq!(g.conic, expect);
            assert_eq!(npc_harmonic_six(&q, &r, false).unwrap().conic, expect);
            assert_eq!(npc_cremona(&q, &r).unwrap().conic, expect);
        }
    }

    #[test]
    fn square_at_infinity_is_axes() {
        let q = standard();
        let g = npc_pole_locus(&q, &HLine::infinity(), true).unwrap();
        assert!(g.degenerate);
        assert_eq!(g.conic, Conic::parse("x*y").unwrap());
        assert!(matches!(npc_pole_locus(&q, &HLine::infinity(), false), Err(GeomError::FundamentalTransversal)));
        assert_eq!(npc_harmonic_six(&q, &HLine::infinity(), true).unwrap().conic, g.conic);
    }

    #[test]
    fn square_with_vertical_transversal() {
        let q = standard();
        let r = HLine::from_ints(1, 0, -3);
        let g = npc_harmonic_six(&q, &r, false).unwrap();
        assert!(nine_incidences(&q, &r, &g.conic).unwrap());
        assert_eq!(g.conic, npc_pole_locus(&q, &r, false).unwrap().conic);
    }

    #[test]
    fn transversal_through_vertex_touches_there() {
        let q = standard();
        let r = HLine::from_ints(1, -2, 1);
        let g = npc_harmonic_six(&q, &r, false).unwrap();
        assert_eq!(g.tangent_at_vertex, Some(HPoint::from_ints(1, 1, 1)));
        assert_eq!(g.conic, npc_pole_locus(&q, &r, false).unwrap().conic);
        let t = crate::conic::line_tangency(&g.conic, &r).unwrap();
        assert_eq!(t, crate::conic::LineTangency::Tangent(HPoint::from_ints(1, 1, 1)));
    }

    #[test]
    fn steiner_conics() {
        let ch = Chart::default();
        let g = npc_steiner(&orthogonal(), &ch).unwrap();
        assert!(classify(&g.conic, &ch).is_circle);
        let g = npc_steiner(&quad([(0, 0), (4, 0), (5, 3), (1, 4)]), &ch).unwrap();
        assert_eq!(classify(&g.conic, &ch).kind, Some(ConicKind::Hyperbola));
        let c = Quadrangle::new([
            HPoint::affine(rat(3, 5), rat(4, 5)),
            HPoint::affine(rat(-3, 5), rat(4, 5)),
            HPoint::affine_i(-1, 0),
            HPoint::affine_i(1, 0),
        ])
        .unwrap();
        let g = npc_steiner(&c, &ch).unwrap();
        assert!(classify(&g.conic, &ch).is_equilateral);
    }

    #[test]
    fn steiner_line_inverts() {
        let q = standard();
        assert_eq!(steiner_line(&q, &Conic::parse("y*z + z*x + x*y").unwrap()).unwrap(), HLine::from_ints(1, 1, 1));
        let q = quad([(0, 0), (4, 0), (5, 3), (1, 4)]);
        let g = npc_steiner(&q, &Chart::default()).unwrap();
        assert_eq!(steiner_line(&q, &g.conic).unwrap(), HLine::infinity());
    }

    #[test]
    fn trudi_properties() {
        let q = quad([(0, 0), (4, 0), (5, 3), (1, 4)]);
        let p = crate::pencil::pencil_of_quadrangle(&q);
        for (l, m) in [(1, 0), (0, 1), (2, 3), (-5, 7)] {
            assert!(self_polar(&q, &p.member(&rat(l, 1), &rat(m, 1)).unwrap()));
        }
        assert!(midpoint_theorem(&q, &Chart::default()).unwrap());
    }
}
