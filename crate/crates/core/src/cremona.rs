//! The quadratic transformation attached to a complete quadrangle.

use std::fmt;

use num_traits::Zero;

use crate::conic::{param_with_point, Conic};
use crate::error::{GeomError, Result};
use crate::pencil::{pencil_of_quadrangle, Involution};
use crate::plane::{harmonic_conjugate_line, join, meet, HLine, HPoint};
use crate::quadrangle::Quadrangle;
use crate::scalar::linalg::{cross, dot, from_cols, inverse, mat_mul, mat_vec, transpose, Mat3, Vec3};
use crate::scalar::{int, Poly, Rational, Var};

/// Sends `E, F, G` to the reference triangle and the vertices to `(±1, ±1, 1)`;
/// in those coordinates the map is `(x:y:z) ↦ (yz:zx:xy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticMap {
    base: Quadrangle,
    /// Normalized → original coordinates.
    t: Mat3<Rational>,
    /// Original → normalized coordinates.
    n: Mat3<Rational>,
}

fn sigma(v: &Vec3<Rational>) -> Vec3<Rational> {
    [&v[1] * &v[2], &v[2] * &v[0], &v[0] * &v[1]]
}

impl QuadraticMap {
    pub fn new(q: &Quadrangle) -> Result<Self> {
        let [e, f, g] = q.fundamental().clone().map(|p| p.to_vec());
        let a = q.vertices()[0].coords();
        let basis = from_cols(&e, &f, &g);
        let inv = inverse(&basis).ok_or(GeomError::NonGeneric("fundamental triangle is degenerate".into()))?;
        let k = mat_vec(&inv, a);
        if k.iter().any(|c| c.is_zero()) {
            return Err(GeomError::NonGeneric("vertex on a fundamental side".into()));
        }
        let t = from_cols(&e.map(|c| &c * &k[0]), &f.map(|c| &c * &k[1]), &g.map(|c| &c * &k[2]));
        let n = inverse(&t).expect("invertible");
        let map = QuadraticMap { base: q.clone(), t, n };
        for v in q.vertices() {
            let w = map.normalize(v);
            if !w.iter().all(|c| c == &w[2] || c == &-w[2].clone()) {
                return Err(GeomError::VerificationFailed("vertex does not normalize to (±1, ±1, 1)".into()));
            }
        }
        Ok(map)
    }

    pub fn base(&self) -> &Quadrangle {
        &self.base
    }

    /// Matrix taking original coordinates to normalized ones.
    pub fn normalizer(&self) -> &Mat3<Rational> {
        &self.n
    }

    pub fn denormalizer(&self) -> &Mat3<Rational> {
        &self.t
    }

    pub fn normalize(&self, p: &HPoint) -> Vec3<Rational> {
        mat_vec(&self.n, p.coords())
    }

    fn fundamental_index(&self, p: &HPoint) -> Option<usize> {
        self.base.fundamental().iter().position(|e| e == p)
    }

    /// Reciprocal in normalized coordinates.
    pub fn apply_point(&self, h: &HPoint) -> Result<HPoint> {
        if self.fundamental_index(h).is_some() {
            return Err(GeomError::IndeterminateVertex);
        }
        HPoint::new(mat_vec(&self.t, &sigma(&self.normalize(h))))
    }

    /// Meet of the polars of `h` in the line pairs `AB·CD` and `AC·BD`.
    pub fn apply_point_polars(&self, h: &HPoint) -> Result<HPoint> {
        if let Some(v) = self.blow_down(h)? {
            return Ok(v);
        }
        let p = pencil_of_quadrangle(&self.base);
        let (c1, c2) = p.generators();
        let l1 = mat_vec(c1.matrix(), h.coords());
        let l2 = mat_vec(c2.matrix(), h.coords());
        HPoint::new(cross(&l1, &l2)).map_err(|_| GeomError::NonGeneric("polars coincide".into()))
    }

    /// At each diagonal point, the harmonic conjugate of the line towards `h`
    /// with respect to the two sides through it; the three lines concur.
    pub fn apply_point_harmonic(&self, h: &HPoint) -> Result<HPoint> {
        if let Some(v) = self.blow_down(h)? {
            return Ok(v);
        }
        let mut lines = vec![];
        for k in 0..3 {
            let v = &self.base.fundamental()[k];
            let (s1, s2) = self.base.sides_through_fundamental(k);
            let l = join(v, h)?;
            lines.push(if l == *s1 || l == *s2 { l } else { harmonic_conjugate_line(&l, s1, s2)? });
        }
        let p = meet(&lines[0], &lines[1])?;
        if !p.on(&lines[2]) {
            return Err(GeomError::VerificationFailed("harmonic lines not concurrent".into()));
        }
        Ok(p)
    }

    /// Opposite diagonal point when `h` lies on a side of the diagonal
    /// triangle.
    fn blow_down(&self, h: &HPoint) -> Result<Option<HPoint>> {
        if self.fundamental_index(h).is_some() {
            return Err(GeomError::IndeterminateVertex);
        }
        for k in 0..3 {
            if h.on(&self.base.fundamental_side(k)) {
                return Ok(Some(self.base.fundamental()[k].clone()));
            }
        }
        Ok(None)
    }

    /// The conic `{X : f(X) ∈ r}`.
    pub fn apply_line(&self, r: &HLine) -> Result<Conic> {
        if self.base.is_fundamental_side(r) {
            return Err(GeomError::SideBlowsDown);
        }
        let u = mat_vec(&transpose(&self.t), r.coords());
        let h = crate::scalar::rat(1, 2);
        let z = Rational::zero();
        let qy = [
            [z.clone(), &u[2] * &h, &u[1] * &h],
            [&u[2] * &h, z.clone(), &u[0] * &h],
            [&u[1] * &h, &u[0] * &h, z],
        ];
        Conic::new(mat_mul(&transpose(&self.n), &mat_mul(&qy, &self.n)))
    }

    /// Inverse of [`QuadraticMap::apply_line`] on conics through `E, F, G`.
    pub fn apply_conic_to_line(&self, omega: &Conic) -> Result<HLine> {
        if !self.base.fundamental().iter().all(|p| omega.contains(p)) {
            return Err(GeomError::NotThroughFundamental);
        }
        if omega.is_degenerate() {
            return Err(GeomError::DegenerateConic);
        }
        // two rational points of Ω off the diagonal triangle, mapped and joined
        let par = param_with_point(omega, &self.base.fundamental()[0])?;
        let mut images: Vec<HPoint> = vec![];
        let mut t = 1i64;
        while images.len() < 2 {
            let p = par.at(&int(t))?;
            t += 1;
            if self.fundamental_index(&p).is_some() || (0..3).any(|k| p.on(&self.base.fundamental_side(k))) {
                continue;
            }
            let img = self.apply_point(&p)?;
            if !images.contains(&img) {
                images.push(img);
            }
        }
        let l = join(&images[0], &images[1])?;
        if self.apply_line(&l)? != *omega {
            return Err(GeomError::VerificationFailed("line does not map back to the conic".into()));
        }
        Ok(l)
    }

    /// The curve `{X : c(f(X)) = 0}` with the diagonal-triangle sides removed.
    pub fn transform_curve(&self, c: &PlaneCurve) -> Result<PlaneCurve> {
        let g = c.poly.linear_change(&self.t);
        for v in [Var::X, Var::Y, Var::Z] {
            if g.min_degree_in(v) > 0 {
                return Err(GeomError::FundamentalComponent);
            }
        }
        let fund = self.base.fundamental();
        let mult: Vec<u32> = fund.iter().map(|p| multiplicity_at(c, p)).collect();
        let (x, y, z) = (Poly::x(), Poly::y(), Poly::z());
        let sub = g.compose3(&[&y * &z, &z * &x, &x * &y]);
        let mono = x.pow(mult[0]) * y.pow(mult[1]) * z.pow(mult[2]);
        let stripped = sub
            .exact_div(&mono)
            .ok_or_else(|| GeomError::VerificationFailed("vertex multiplicities do not divide the substitution".into()))?;
        let out = PlaneCurve::new(stripped.linear_change(&self.n))?;
        let expected = 2 * c.degree - mult.iter().sum::<u32>();
        if out.degree != expected || out.poly.strip_monomial().1 != [0, 0, 0] {
            return Err(GeomError::VerificationFailed(format!("image degree {} but expected {expected}", out.degree)));
        }
        Ok(out)
    }

    /// Involution on the lines through the `k`-th diagonal point pairing
    /// `VH` with `V f(H)`, parameterized by the opposite side.
    pub fn vertex_involution(&self, k: usize) -> Result<Involution> {
        let fund = self.base.fundamental();
        let v = fund[k].coords();
        let (p0, p1) = (fund[(k + 1) % 3].to_vec(), fund[(k + 2) % 3].to_vec());
        let side = self.base.fundamental_side(k);
        let w = cross(&p0, &p1);
        let ww = dot(&w, &w);
        let coords = |p: &HPoint| -> [Rational; 2] {
            let a = dot(&cross(p.coords(), &p1), &w) / &ww;
            let b = dot(&cross(&p0, p.coords()), &w) / &ww;
            [a, b]
        };
        let image = |s: i64, t: i64| -> Result<[Rational; 2]> {
            let on_side: Vec3<Rational> = std::array::from_fn(|i| int(s) * &p0[i] + int(t) * &p1[i]);
            let h = HPoint::new(std::array::from_fn(|i| &on_side[i] + &v[i]))?;
            let fh = self.apply_point(&h)?;
            Ok(coords(&meet(&join(&fund[k], &fh)?, &side)?))
        };
        let pairs = [([int(1), int(1)], image(1, 1)?), ([int(1), int(2)], image(1, 2)?)];
        Ok(Involution::from_pairs(&pairs)?.with_basis(p0, p1))
    }
}

/// Homogeneous curve in `x, y, z` with integer coprime coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    poly: Poly,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(GeomError::ZeroPolynomial);
        }
        if p.involves(Var::T) {
            return Err(GeomError::NotHomogeneous(0));
        }
        if !p.is_homogeneous() {
            return Err(GeomError::NotHomogeneous(p.total_degree().unwrap_or(0) as usize));
        }
        let degree = p.total_degree().unwrap();
        Ok(PlaneCurve { poly: p.primitive(), degree })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.poly.eval3(p.coords()).is_zero()
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Order of vanishing of the curve at `p` (zero off the curve).
pub fn multiplicity_at(c: &PlaneCurve, p: &HPoint) -> u32 {
    // complete p to a basis with two unit vectors, sending (0:0:1) to p
    let pc = p.coords();
    let j = (0..3).find(|&i| !pc[i].is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
    let unit = |i: usize| -> Vec3<Rational> { std::array::from_fn(|k| if k == i { int(1) } else { int(0) }) };
    let m = from_cols(&unit(others[0]), &unit(others[1]), pc);
    let moved = c.poly.linear_change(&m);
    c.degree - moved.degree_in(Var::Z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::linalg::identity;

    fn standard() -> QuadraticMap {
        let q = Quadrangle::new([(1, 1), (1, -1), (-1, -1), (-1, 1)].map(|(x, y)| HPoint::affine_i(x, y))).unwrap();
        QuadraticMap::new(&q).unwrap()
    }

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s).unwrap()
    }

    #[test]
    fn standard_normalizer_is_identity() {
        let f = standard();
        let n = f.normalizer();
        let k = n[0][0].clone();
        let id: Mat3<Rational> = identity();
        assert!((0..3).all(|i| (0..3).all(|j| n[i][j] == &id[i][j] * &k)));
    }

    #[test]
    fn point_images() {
        let f = standard();
        let p = HPoint::from_ints(1, 2, 3);
        let img = HPoint::from_ints(6, 3, 2);
        assert_eq!(f.apply_point(&p).unwrap(), img);
        assert_eq!(f.apply_point_polars(&p).unwrap(), img);
        assert_eq!(f.apply_point_harmonic(&p).unwrap(), img);
        assert_eq!(f.apply_point(&HPoint::from_ints(1, 1, 1)).unwrap(), HPoint::from_ints(1, 1, 1));
        let b = HPoint::from_ints(0, 2, 5);
        assert_eq!(f.apply_point(&b).unwrap(), HPoint::from_ints(1, 0, 0));
        assert_eq!(f.apply_point_polars(&b).unwrap(), HPoint::from_ints(1, 0, 0));
        assert!(matches!(f.apply_point(&HPoint::from_ints(0, 0, 1)), Err(GeomError::IndeterminateVertex)));
    }

    #[test]
    fn routes_agree_on_general_quadrangle() {
        let q = Quadrangle::new([(0, 0), (4, 0), (5, 3), (1, 4)].map(|(x, y)| HPoint::affine_i(x, y))).unwrap();
        let f = QuadraticMap::new(&q).unwrap();
        for (x, y, z) in [(1, 2, 3), (-7, 2, 5), (3, 3, 1), (11, -4, 2)] {
            let p = HPoint::from_ints(x, y, z);
            let a = f.apply_point(&p).unwrap();
            assert_eq!(a, f.apply_point_polars(&p).unwrap());
            assert_eq!(a, f.apply_point_harmonic(&p).unwrap());
            assert_eq!(f.apply_point(&a).unwrap(), p);
        }
    }

    #[test]
    fn lines_and_conics() {
        let f = standard();
        assert_eq!(f.apply_line(&HLine::from_ints(1, 1, 1)).unwrap(), Conic::parse("y*z + z*x + x*y").unwrap());
        assert_eq!(f.apply_line(&HLine::infinity()).unwrap_err(), GeomError::SideBlowsDown);
        assert_eq!(f.apply_conic_to_line(&Conic::parse("y*z + z*x + x*y").unwrap()).unwrap(), HLine::from_ints(1, 1, 1));
        assert_eq!(f.apply_conic_to_line(&Conic::parse("x^2 + y^2 - z^2").unwrap()).unwrap_err(), GeomError::NotThroughFundamental);
        let r = HLine::from_ints(1, -2, 1);
        let c = f.apply_line(&r).unwrap();
        assert_eq!(crate::conic::line_tangency(&c, &r).unwrap(), crate::conic::LineTangency::Tangent(HPoint::from_ints(1, 1, 1)));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_at(&curve("y^2*z - x^3"), &HPoint::from_ints(0, 0, 1)), 2);
        assert_eq!(multiplicity_at(&curve("x*y + y*z + z*x"), &HPoint::from_ints(1, 0, 0)), 1);
        assert_eq!(multiplicity_at(&curve("x^2 + y^2 - z^2"), &HPoint::from_ints(1, 0, 0)), 0);
        assert_eq!(multiplicity_at(&curve("(x - z)^2*y - (y - 2*z)^3"), &HPoint::from_ints(1, 2, 1)), 2);
    }

    #[test]
    fn curve_images() {
        let f = standard();
        let c = f.transform_curve(&curve("x^2 + y^2 - z^2")).unwrap();
        assert_eq!(c, curve("y^2*z^2 + z^2*x^2 - x^2*y^2"));
        assert_eq!(f.transform_curve(&c).unwrap(), curve("x^2 + y^2 - z^2"));
        assert_eq!(f.transform_curve(&curve("x*y + y*z + z*x")).unwrap(), curve("x + y + z"));
        // nodal cubic with its node at (0:0:1), through the other two vertices
        let nodal = curve("y^2*z + x^2*z - x*y*(x + 2*y)");
        let img = f.transform_curve(&nodal).unwrap();
        assert_eq!(img.degree(), 2);
        assert!(matches!(f.transform_curve(&curve("x*(x + y + z)")), Err(GeomError::FundamentalComponent)));
    }

    #[test]
    fn vertex_involutions() {
        let f = standard();
        let inv = f.vertex_involution(2).unwrap();
        let dp = crate::pencil::double_points(&inv).unwrap();
        assert!(dp.real);
        let g = HPoint::from_ints(0, 0, 1);
        let mut lines: Vec<HLine> =
            dp.elements.iter().map(|e| join(&g, &crate::conic::rational_point(e).unwrap()).unwrap()).collect();
        lines.sort_by_key(|l| l.to_string());
        assert_eq!(lines, vec![HLine::from_ints(1, -1, 0), HLine::from_ints(1, 1, 0)]);
        let q = Quadrangle::new([(0, 0), (4, 0), (5, 3), (1, 4)].map(|(x, y)| HPoint::affine_i(x, y))).unwrap();
        let f = QuadraticMap::new(&q).unwrap();
        for k in 0..3 {
            let dp = crate::pencil::double_points(&f.vertex_involution(k).unwrap()).unwrap();
            let (s1, s2) = q.sides_through_fundamental(k);
            for e in &dp.elements {
                let p = crate::conic::rational_point(e).unwrap();
                assert!(p.on(s1) || p.on(s2));
            }
        }
    }
}
