//! Pencils of conics through four points and the involutions they cut on
//! lines.

use num_traits::{Signed, Zero};

use crate::conic::{binary_quadratic_roots, line_basis, pencil_cubic, restriction, Conic};
use crate::error::{GeomError, Result};
use crate::plane::{Chart, HLine, HPoint};
use crate::quadrangle::Quadrangle;
use crate::scalar::linalg::{cross, Mat3, Vec3};
use crate::scalar::{int, Field, QuadExt, Rational, UPoly};

/// The conics `λ·C1 + μ·C2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    c1: Conic,
    c2: Conic,
    base: Option<[HPoint; 4]>,
}

impl Pencil {
    pub fn new(c1: Conic, c2: Conic) -> Result<Self> {
        if c1 == c2 {
            return Err(GeomError::IdenticalConics);
        }
        Ok(Pencil { c1, c2, base: None })
    }

    pub fn generators(&self) -> (&Conic, &Conic) {
        (&self.c1, &self.c2)
    }

    pub fn base_points(&self) -> Option<&[HPoint; 4]> {
        self.base.as_ref()
    }

    pub fn member_matrix(&self, lambda: &Rational, mu: &Rational) -> Mat3<Rational> {
        let (a, b) = (self.c1.matrix(), self.c2.matrix());
        std::array::from_fn(|i| std::array::from_fn(|j| lambda * &a[i][j] + mu * &b[i][j]))
    }

    pub fn member(&self, lambda: &Rational, mu: &Rational) -> Result<Conic> {
        Conic::new(self.member_matrix(lambda, mu))
    }

    /// Member over a quadratic extension.
    pub fn member_q(&self, lambda: &QuadExt, mu: &QuadExt) -> Mat3<QuadExt> {
        let (a, b) = (self.c1.m_quad(), self.c2.m_quad());
        std::array::from_fn(|i| std::array::from_fn(|j| lambda.fmul(&a[i][j]).fadd(&mu.fmul(&b[i][j]))))
    }

    /// `det(λC1 + μC2)` as `[c3, c2, c1, c0]` on `λ³, λ²μ, λμ², μ³`.
    pub fn cubic(&self) -> [Rational; 4] {
        pencil_cubic(self.c1.matrix(), self.c2.matrix())
    }
}

/// Pencil of conics through the vertices, spanned by the line pairs
/// `AB·CD` and `AC·BD`.
pub fn pencil_of_quadrangle(q: &Quadrangle) -> Pencil {
    let c1 = Conic::line_pair(q.side(0, 1), q.side(2, 3));
    let c2 = Conic::line_pair(q.side(0, 2), q.side(1, 3));
    Pencil { c1, c2, base: Some(q.vertices().clone()) }
}

/// The three line-pair members, ordered as the pairs through `E`, `F`, `G`.
pub fn degenerate_members(p: &Pencil) -> Result<[Conic; 3]> {
    let [c3, c2, c1, c0] = p.cubic();
    let cubic = UPoly::new(vec![c0, c1, c2, c3.clone()]);
    let distinct = if c3.is_zero() { cubic.is_squarefree() && cubic.degree() == Some(2) } else { cubic.is_squarefree() };
    if !distinct {
        return Err(GeomError::NonGeneric("determinant cubic has a repeated root".into()));
    }
    let Some(base) = &p.base else {
        return Err(GeomError::NonGeneric("pencil without base quadrangle".into()));
    };
    let q = Quadrangle::new(base.clone())?;
    let out = [
        Conic::line_pair(q.side(0, 3), q.side(1, 2)),
        Conic::line_pair(q.side(0, 1), q.side(2, 3)),
        Conic::line_pair(q.side(0, 2), q.side(1, 3)),
    ];
    for m in &out {
        if !in_span(p, m) || m.rank() != 2 {
            return Err(GeomError::VerificationFailed("degenerate member outside the pencil".into()));
        }
    }
    Ok(out)
}

fn in_span(p: &Pencil, c: &Conic) -> bool {
    let flat = |m: &Mat3<Rational>| -> Vec<Rational> { m.iter().flatten().cloned().collect() };
    let rows = vec![flat(p.c1.matrix()), flat(p.c2.matrix()), flat(c.matrix())];
    crate::scalar::linalg::rank(&rows) == 2
}

/// The member through a point that is not a base point.
pub fn member_through(p: &Pencil, x: &HPoint) -> Result<Conic> {
    let v1 = p.c1.eval(x);
    let v2 = p.c2.eval(x);
    if v1.is_zero() && v2.is_zero() {
        return Err(GeomError::BasePoint);
    }
    p.member(&v2, &-v1)
}

/// Members of a pencil tangent to a line.
#[derive(Debug, Clone, PartialEq)]
pub enum TangentMembers {
    /// Two distinct members `(λ:μ)` with their contact points on the line.
    Two { params: [(QuadExt, QuadExt); 2], contacts: [Vec3<QuadExt>; 2] },
    /// The two tangent members coincide: the contact points are equal.
    Coincident { member: Conic, contact: HPoint },
    /// The line passes through a base vertex; the single tangent member
    /// touches it there.
    AtBaseVertex { member: Conic, vertex: HPoint },
}

/// Coefficients `(A, B, C)` of the binary quadratic in `(λ, μ)` whose roots
/// are the members tangent to the line with basis `p0, p1`.
fn tangency_quadratic(p: &Pencil, p0: &Vec3<Rational>, p1: &Vec3<Rational>) -> (Rational, Rational, Rational) {
    let (a1, b1, c1) = restriction(p.c1.matrix(), p0, p1);
    let (a2, b2, c2) = restriction(p.c2.matrix(), p0, p1);
    let big_a = &b1 * &b1 - &a1 * &c1;
    let big_b = &b1 * &b2 - (&a1 * &c2 + &a2 * &c1) / int(2);
    let big_c = &b2 * &b2 - &a2 * &c2;
    (big_a, big_b, big_c)
}

pub fn members_tangent_to(p: &Pencil, r: &HLine) -> Result<TangentMembers> {
    if let Some(base) = &p.base {
        let on: Vec<&HPoint> = base.iter().filter(|v| v.on(r)).collect();
        match on.len() {
            0 => {}
            1 => {
                let v = on[0];
                // tangent at v: the polar of v is r
                let l1 = crate::scalar::linalg::mat_vec(p.c1.matrix(), v.coords());
                let l2 = crate::scalar::linalg::mat_vec(p.c2.matrix(), v.coords());
                let member = solve_polar_member(p, &l1, &l2, r)?;
                return Ok(TangentMembers::AtBaseVertex { member, vertex: v.clone() });
            }
            _ => return Err(GeomError::DegenerateRestriction),
        }
    }
    let (p0, p1) = line_basis(r);
    let (a, b, c) = tangency_quadratic(p, &p0, &p1);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(GeomError::DegenerateRestriction);
    }
    let roots = binary_quadratic_roots(&a, &b, &c);
    let contact = |lm: &(QuadExt, QuadExt)| -> Vec3<QuadExt> {
        let m = p.member_q(&lm.0, &lm.1);
        let p0q = p0.clone().map(QuadExt::rational);
        let p1q = p1.clone().map(QuadExt::rational);
        let (ra, rb, _) = restriction(&m, &p0q, &p1q);
        // double root (−b : a), or (1 : 0) when a vanishes
        let (s, t) = if ra.fis_zero() { (QuadExt::fone(), QuadExt::fzero()) } else { (rb.fneg(), ra) };
        crate::conic::normalize_q(&std::array::from_fn(|i| s.fmul(&p0q[i]).fadd(&t.fmul(&p1q[i]))))
    };
    if roots.len() == 1 {
        let lm = &roots[0];
        let l = lm.0.as_rational().unwrap();
        let m = lm.1.as_rational().unwrap();
        let member = p.member(l, m)?;
        let pt = crate::conic::rational_point(&contact(lm)).ok_or(GeomError::DegenerateRestriction)?;
        return Ok(TangentMembers::Coincident { member, contact: pt });
    }
    let contacts = [contact(&roots[0]), contact(&roots[1])];
    Ok(TangentMembers::Two { params: [roots[0].clone(), roots[1].clone()], contacts })
}

fn solve_polar_member(p: &Pencil, l1: &Vec3<Rational>, l2: &Vec3<Rational>, r: &HLine) -> Result<Conic> {
    // λ l1 + μ l2 ∝ r  ⇔  (λ l1 + μ l2) × r = 0
    let c1 = cross(l1, r.coords());
    let c2 = cross(l2, r.coords());
    for k in 0..3 {
        if !c1[k].is_zero() || !c2[k].is_zero() {
            let (lambda, mu) = (c2[k].clone(), -c1[k].clone());
            let m = p.member(&lambda, &mu)?;
            let check: Vec3<Rational> = std::array::from_fn(|i| &lambda * &c1[i] + &mu * &c2[i]);
            if check.iter().all(|v| v.is_zero()) {
                return Ok(m);
            }
            return Err(GeomError::DegenerateRestriction);
        }
    }
    Err(GeomError::DegenerateRestriction)
}

/// Projective involution on a parameterized line or line pencil, acting on
/// homogeneous parameters `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    m: [[Rational; 2]; 2],
    /// Basis elements `(e0, e1)` so that `(s, t)` stands for `s·e0 + t·e1`.
    basis: Option<(Vec3<Rational>, Vec3<Rational>)>,
}

impl Involution {
    /// Builds an involution from its matrix; it must square to a multiple
    /// of the identity without being one.
    pub fn from_matrix(m: [[Rational; 2]; 2]) -> Result<Self> {
        if !(&m[0][0] + &m[1][1]).is_zero() {
            if m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1] {
                return Err(GeomError::IdentityInvolution);
            }
            return Err(GeomError::NonGeneric("not an involution".into()));
        }
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(GeomError::DegenerateRestriction);
        }
        Ok(Involution { m, basis: None })
    }

    /// Involution whose double points are the roots of `A s² + 2B st + C t²`.
    pub fn from_fixed_form(a: &Rational, b: &Rational, c: &Rational) -> Result<Self> {
        Self::from_matrix([[b.clone(), c.clone()], [-a.clone(), -b.clone()]])
    }

    /// Involution determined by two pairs `u ↦ v`.
    pub fn from_pairs(pairs: &[([Rational; 2], [Rational; 2]); 2]) -> Result<Self> {
        // matrix [[p, q], [r, −p]]; v ∝ M u gives one linear condition each
        let row = |u: &[Rational; 2], v: &[Rational; 2]| -> Vec3<Rational> {
            [-(&v[0] * &u[1]) - &v[1] * &u[0], -(&v[1] * &u[1]), &v[0] * &u[0]]
        };
        let n = cross(&row(&pairs[0].0, &pairs[0].1), &row(&pairs[1].0, &pairs[1].1));
        let [p, q, r] = n;
        if p.is_zero() && q.is_zero() && r.is_zero() {
            return Err(GeomError::Underdetermined("pairs do not fix an involution".into()));
        }
        Self::from_matrix([[p.clone(), q], [r, -p]])
    }

    pub fn with_basis(mut self, e0: Vec3<Rational>, e1: Vec3<Rational>) -> Self {
        self.basis = Some((e0, e1));
        self
    }

    pub fn matrix(&self) -> &[[Rational; 2]; 2] {
        &self.m
    }

    pub fn basis(&self) -> Option<&(Vec3<Rational>, Vec3<Rational>)> {
        self.basis.as_ref()
    }

    pub fn apply(&self, u: &[Rational; 2]) -> [Rational; 2] {
        [&self.m[0][0] * &u[0] + &self.m[0][1] * &u[1], &self.m[1][0] * &u[0] + &self.m[1][1] * &u[1]]
    }

    /// `M²` is a nonzero multiple of the identity.
    pub fn is_involutive(&self) -> bool {
        let m = &self.m;
        let sq = |i: usize, j: usize| &m[i][0] * &m[0][j] + &m[i][1] * &m[1][j];
        sq(0, 1).is_zero() && sq(1, 0).is_zero() && sq(0, 0) == sq(1, 1) && !sq(0, 0).is_zero()
    }

    /// Whether `u ↦ v` is a pair of the involution.
    pub fn pairs(&self, u: &[Rational; 2], v: &[Rational; 2]) -> bool {
        let w = self.apply(u);
        (&w[0] * &v[1] - &w[1] * &v[0]).is_zero()
    }

    /// Fixed-point quadratic `a s² + b st + c t²` as `[a, b, c]`.
    pub fn fixed_quadratic(&self) -> [Rational; 3] {
        let m = &self.m;
        [m[1][0].clone(), &m[1][1] - &m[0][0], -m[0][1].clone()]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoublePoints {
    /// `[a, b, c]` for `a s² + b st + c t²`.
    pub quadratic: [Rational; 3],
    /// Roots `(s:t)`.
    pub params: Vec<(QuadExt, QuadExt)>,
    /// Corresponding elements when the involution carries a basis.
    pub elements: Vec<Vec3<QuadExt>>,
    pub real: bool,
}

pub fn double_points(inv: &Involution) -> Result<DoublePoints> {
    let q = inv.fixed_quadratic();
    if q.iter().all(|c| c.is_zero()) {
        return Err(GeomError::IdentityInvolution);
    }
    let half_b = &q[1] / int(2);
    let params = binary_quadratic_roots(&q[0], &half_b, &q[2]);
    let disc = &half_b * &half_b - &q[0] * &q[2];
    let elements = match &inv.basis {
        Some((e0, e1)) => params
            .iter()
            .map(|(s, t)| {
                crate::conic::normalize_q(&std::array::from_fn(|i| {
                    s.fmul(&QuadExt::rational(e0[i].clone())).fadd(&t.fmul(&QuadExt::rational(e1[i].clone())))
                }))
            })
            .collect(),
        None => vec![],
    };
    Ok(DoublePoints { quadratic: q, params, elements, real: !disc.is_negative() })
}

/// The involution cut on `r` by the members of the pencil.
pub fn involution_on_line(p: &Pencil, r: &HLine) -> Result<Involution> {
    let (p0, p1) = line_basis(r);
    let (a1, b1, c1) = restriction(p.c1.matrix(), &p0, &p1);
    let (a2, b2, c2) = restriction(p.c2.matrix(), &p0, &p1);
    let n = cross(&[c1, -int(2) * b1, a1], &[c2, -int(2) * b2, a2]);
    if n.iter().all(|v| v.is_zero()) {
        return Err(GeomError::DegenerateRestriction);
    }
    let [aa, bb, cc] = n;
    Ok(Involution::from_fixed_form(&aa, &bb, &cc)?.with_basis(p0, p1))
}

/// Restriction `q(s, t) = a s² + 2b st + c t²` of a conic to a line, in the
/// same parameterization as [`involution_on_line`], as `[a, 2b, c]`.
pub fn restriction_to_line(c: &Conic, r: &HLine) -> [Rational; 3] {
    let (p0, p1) = line_basis(r);
    let (a, b, cc) = restriction(c.matrix(), &p0, &p1);
    [a, int(2) * b, cc]
}

/// Whether two coefficient vectors are proportional.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.iter().all(|v| v.is_zero()) || b.iter().all(|v| v.is_zero()) {
        return false;
    }
    (0..a.len()).all(|i| (i..a.len()).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolaCount {
    /// Real parabolic members, degenerate ones included.
    pub count: usize,
    /// How many of those are line pairs (parallel lines).
    pub degenerate: usize,
    /// The two parabolic members coincide.
    pub double: bool,
}

/// Real members tangent to the chart's infinity line.
pub fn parabola_count(p: &Pencil, chart: &Chart) -> Result<ParabolaCount> {
    let (p0, p1) = line_basis(&chart.infinity);
    let (a, b, c) = tangency_quadratic(p, &p0, &p1);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(GeomError::NonGeneric("pencil of parabolas".into()));
    }
    let disc = &b * &b - &a * &c;
    if disc.is_negative() {
        return Ok(ParabolaCount { count: 0, degenerate: 0, double: false });
    }
    let roots = binary_quadratic_roots(&a, &b, &c);
    let mut degenerate = 0;
    for (l, m) in &roots {
        let mat = p.member_q(l, m);
        if crate::scalar::linalg::det3(&mat).fis_zero() {
            degenerate += 1;
        }
    }
    Ok(ParabolaCount { count: roots.len(), degenerate, double: roots.len() == 1 })
}
