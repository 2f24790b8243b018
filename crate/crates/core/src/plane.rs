//! Points and lines of the projective plane over the rationals, and the
//! affine chart that supplies midpoints, centroids and perpendicularity.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{GeomError, Result};
use crate::scalar::linalg::{cross, det_cols, dot, Mat3, Vec3};
use crate::scalar::{int, parse_rational, Rational};

/// Scales a nonzero vector to coprime integers with the first nonzero
/// entry positive.
pub(crate) fn canonical_slice(v: &[Rational]) -> Option<Vec<Rational>> {
    let first = v.iter().find(|c| !c.is_zero())?;
    let l = v.iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let lr = Rational::from_integer(l);
    let scaled: Vec<Rational> = v.iter().map(|c| c * &lr).collect();
    let g = scaled.iter().fold(num_bigint::BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c.numer()));
    let mut g = Rational::from_integer(g);
    if first.is_negative() {
        g = -g;
    }
    Some(scaled.into_iter().map(|c| c / &g).collect())
}

pub(crate) fn canonical(v: &Vec3<Rational>) -> Option<Vec3<Rational>> {
    canonical_slice(v).map(|c| [c[0].clone(), c[1].clone(), c[2].clone()])
}

macro_rules! triple_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name(Vec3<Rational>);

        impl $name {
            pub fn new(v: Vec3<Rational>) -> Result<Self> {
                canonical(&v).map($name).ok_or(GeomError::ZeroVector)
            }

            pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
                Self::new([int(a), int(b), int(c)]).expect("nonzero triple")
            }

            /// Parses three numbers given as text (integers, `p/q`, or decimals).
            pub fn parse(parts: &[&str; 3]) -> Result<Self> {
                Self::new([parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?])
            }

            pub fn coords(&self) -> &Vec3<Rational> {
                &self.0
            }

            pub fn to_vec(&self) -> Vec3<Rational> {
                self.0.clone()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", stringify!($name), self)
            }
        }
    };
}

triple_type!(HPoint, "Point `(x:y:z)` of the projective plane, stored canonically.");
triple_type!(HLine, "Line `ux + vy + wz = 0`, stored canonically as `(u:v:w)`.");

impl HPoint {
    /// Affine point `(x, y)` in the standard chart.
    pub fn affine(x: Rational, y: Rational) -> Self {
        Self::new([x, y, int(1)]).unwrap()
    }

    pub fn affine_i(x: i64, y: i64) -> Self {
        Self::from_ints(x, y, 1)
    }

    pub fn on(&self, l: &HLine) -> bool {
        dot(&self.0, &l.0).is_zero()
    }
}

impl HLine {
    pub fn infinity() -> Self {
        Self::from_ints(0, 0, 1)
    }

    pub fn passes_through(&self, p: &HPoint) -> bool {
        p.on(self)
    }

    /// Evaluates the linear form at a point representative.
    pub fn eval(&self, p: &HPoint) -> Rational {
        dot(&self.0, &p.0)
    }
}

pub fn join(p: &HPoint, q: &HPoint) -> Result<HLine> {
    HLine::new(cross(&p.0, &q.0)).map_err(|_| GeomError::Coincident)
}

pub fn meet(l: &HLine, m: &HLine) -> Result<HPoint> {
    HPoint::new(cross(&l.0, &m.0)).map_err(|_| GeomError::Coincident)
}

pub fn collinear(a: &HPoint, b: &HPoint, c: &HPoint) -> bool {
    det_cols(&a.0, &b.0, &c.0).is_zero()
}

pub fn concurrent(a: &HLine, b: &HLine, c: &HLine) -> bool {
    det_cols(&a.0, &b.0, &c.0).is_zero()
}

/// Value of a cross ratio; the infinite value arises when the fourth
/// element coincides with the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossRatio {
    Finite(Rational),
    Infinity,
}

impl CrossRatio {
    pub fn is_harmonic(&self) -> bool {
        *self == CrossRatio::Finite(int(-1))
    }
}

/// Coefficients `(α, β)` with `c ∝ α·a + β·b`, for `c` in the span of
/// independent `a`, `b`.
fn span_coeffs(a: &Vec3<Rational>, b: &Vec3<Rational>, c: &Vec3<Rational>) -> (Rational, Rational) {
    let n = cross(a, b);
    (dot(&cross(c, b), &n), dot(&cross(a, c), &n))
}

fn cross_ratio_raw(a: &Vec3<Rational>, b: &Vec3<Rational>, c: &Vec3<Rational>, d: &Vec3<Rational>) -> Result<CrossRatio> {
    if cross(a, b).iter().all(|v| v.is_zero()) {
        return Err(GeomError::Coincident);
    }
    if !det_cols(a, b, c).is_zero() || !det_cols(a, b, d).is_zero() {
        return Err(GeomError::NotCollinear);
    }
    if cross(c, d).iter().all(|v| v.is_zero()) {
        return Ok(CrossRatio::Finite(int(1)));
    }
    let (ac, bc) = span_coeffs(a, b, c);
    let (ad, bd) = span_coeffs(a, b, d);
    let num = &bc * &ad;
    let den = &ac * &bd;
    if den.is_zero() {
        Ok(CrossRatio::Infinity)
    } else {
        Ok(CrossRatio::Finite(num / den))
    }
}

fn harmonic_raw(p: &Vec3<Rational>, a: &Vec3<Rational>, b: &Vec3<Rational>) -> Result<Vec3<Rational>> {
    if cross(a, b).iter().all(|v| v.is_zero()) {
        return Err(GeomError::Coincident);
    }
    if !det_cols(a, b, p).is_zero() {
        return Err(GeomError::NotCollinear);
    }
    let (al, be) = span_coeffs(a, b, p);
    Ok(std::array::from_fn(|i| &al * &a[i] - &be * &b[i]))
}

/// Cross ratio `(A, B; C, D)` of four collinear points.
pub fn cross_ratio(a: &HPoint, b: &HPoint, c: &HPoint, d: &HPoint) -> Result<CrossRatio> {
    cross_ratio_raw(&a.0, &b.0, &c.0, &d.0)
}

/// Cross ratio of four concurrent lines.
pub fn cross_ratio_lines(a: &HLine, b: &HLine, c: &HLine, d: &HLine) -> Result<CrossRatio> {
    cross_ratio_raw(&a.0, &b.0, &c.0, &d.0).map_err(|e| match e {
        GeomError::NotCollinear => GeomError::NotConcurrent,
        e => e,
    })
}

/// Fourth harmonic point of `P` with respect to `A`, `B`.
pub fn harmonic_conjugate(p: &HPoint, a: &HPoint, b: &HPoint) -> Result<HPoint> {
    HPoint::new(harmonic_raw(&p.0, &a.0, &b.0)?)
}

/// Fourth harmonic line of `l` with respect to `m`, `n`.
pub fn harmonic_conjugate_line(l: &HLine, m: &HLine, n: &HLine) -> Result<HLine> {
    if l == m || l == n {
        return Err(GeomError::Coincident);
    }
    let v = harmonic_raw(&l.0, &m.0, &n.0).map_err(|e| match e {
        GeomError::NotCollinear => GeomError::NotConcurrent,
        e => e,
    })?;
    HLine::new(v)
}

/// Affine chart: a distinguished line at infinity and the Euclidean dot
/// product on the first two coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub infinity: HLine,
}

impl Default for Chart {
    fn default() -> Self {
        Chart { infinity: HLine::infinity() }
    }
}

impl Chart {
    pub fn new(infinity: HLine) -> Self {
        Chart { infinity }
    }

    pub fn is_standard(&self) -> bool {
        self.infinity == HLine::infinity()
    }

    pub fn is_finite(&self, p: &HPoint) -> bool {
        !p.on(&self.infinity)
    }

    /// Representative of `p` scaled so that the infinity form equals 1.
    pub fn normalized(&self, p: &HPoint) -> Result<Vec3<Rational>> {
        let s = self.infinity.eval(p);
        if s.is_zero() {
            return Err(GeomError::PointAtInfinity);
        }
        Ok(p.0.clone().map(|c| c / &s))
    }

    /// Affine coordinates `(x, y)` of a finite point.
    pub fn xy(&self, p: &HPoint) -> Result<(Rational, Rational)> {
        let [x, y, _] = self.normalized(p)?;
        Ok((x, y))
    }

    /// Point with affine coordinates `(x, y)`: the finite point with these
    /// first coordinates and infinity form 1.
    pub fn point(&self, x: Rational, y: Rational) -> Result<HPoint> {
        let [u, v, w] = self.infinity.coords().clone();
        if w.is_zero() {
            return Err(GeomError::NonGeneric("chart infinity line passes through (0:0:1)".into()));
        }
        let z = (int(1) - &u * &x - &v * &y) / w;
        HPoint::new([x, y, z])
    }

    pub fn midpoint(&self, a: &HPoint, b: &HPoint) -> Result<HPoint> {
        let na = self.normalized(a)?;
        let nb = self.normalized(b)?;
        HPoint::new(std::array::from_fn(|i| &na[i] + &nb[i]))
    }

    pub fn centroid(&self, pts: &[HPoint]) -> Result<HPoint> {
        if pts.is_empty() {
            return Err(GeomError::Underdetermined("empty point list".into()));
        }
        let mut acc = [int(0), int(0), int(0)];
        for p in pts {
            let n = self.normalized(p)?;
            for i in 0..3 {
                acc[i] += &n[i];
            }
        }
        HPoint::new(acc)
    }

    /// Direction `(u, v)` of a line's normal; the infinity line has none.
    pub fn normal(&self, l: &HLine) -> Result<(Rational, Rational)> {
        if *l == self.infinity || (l.0[0].is_zero() && l.0[1].is_zero()) {
            return Err(GeomError::NoDirection);
        }
        Ok((l.0[0].clone(), l.0[1].clone()))
    }

    pub fn orthogonal(&self, l: &HLine, m: &HLine) -> Result<bool> {
        let (a, b) = self.normal(l)?;
        let (c, d) = self.normal(m)?;
        Ok((a * c + b * d).is_zero())
    }

    /// Squared Euclidean distance between finite points.
    pub fn dist2(&self, a: &HPoint, b: &HPoint) -> Result<Rational> {
        let (x1, y1) = self.xy(a)?;
        let (x2, y2) = self.xy(b)?;
        let dx = x1 - x2;
        let dy = y1 - y2;
        Ok(&dx * &dx + &dy * &dy)
    }

    /// Line through `p` perpendicular to `l`.
    pub fn perpendicular(&self, p: &HPoint, l: &HLine) -> Result<HLine> {
        let (u, v) = self.normal(l)?;
        // the infinite point in direction (u, v) lies on every perpendicular
        let dir = self.direction_point(u, v)?;
        join(p, &dir)
    }

    /// Line through `p` parallel to `l`.
    pub fn parallel(&self, p: &HPoint, l: &HLine) -> Result<HLine> {
        let dir = meet(l, &self.infinity)?;
        join(p, &dir)
    }

    /// Infinite point of the direction `(dx, dy)`.
    pub fn direction_point(&self, dx: Rational, dy: Rational) -> Result<HPoint> {
        let [u, v, w] = self.infinity.coords().clone();
        if w.is_zero() {
            return Err(GeomError::NonGeneric("chart infinity line passes through (0:0:1)".into()));
        }
        let z = -(&u * &dx + &v * &dy) / w;
        HPoint::new([dx, dy, z])
    }

    /// Signed doubled area of the affine triangle `abc`.
    pub fn signed_area2(&self, a: &HPoint, b: &HPoint, c: &HPoint) -> Result<Rational> {
        let (ax, ay) = self.xy(a)?;
        let (bx, by) = self.xy(b)?;
        let (cx, cy) = self.xy(c)?;
        Ok((&bx - &ax) * (&cy - &ay) - (&by - &ay) * (&cx - &ax))
    }
}

/// Applies a projectivity `X ↦ T·X` to a point.
pub fn transform_point(t: &Mat3<Rational>, p: &HPoint) -> Result<HPoint> {
    HPoint::new(crate::scalar::linalg::mat_vec(t, p.coords()))
}

/// Applies the projectivity `X ↦ T·X` to a line, i.e. `l ↦ T⁻ᵀ·l`.
pub fn transform_line(t: &Mat3<Rational>, l: &HLine) -> Result<HLine> {
    use crate::scalar::linalg::{adjugate, mat_vec, transpose};
    HLine::new(mat_vec(&transpose(&adjugate(t)), l.coords()))
}
