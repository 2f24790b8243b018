//! Conics inscribed in the four triangles of a quadrangle and passing
//! through the double points on a transversal; each touches the
//! nine-point conic of that transversal.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::conic::{certified_tangency, BigMat, CertifiedTangency, Conic};
use crate::error::{GeomError, Result};
use crate::pencil::{double_points, involution_on_line, pencil_of_quadrangle};
use crate::plane::HLine;
use crate::quadrangle::{npc_pole_locus, Quadrangle};
use crate::scalar::linalg::{adjugate, from_cols, inverse, mat_mul, transpose, Mat3, Vec3};
use crate::scalar::rational::denom_lcm;
use crate::scalar::{
    all_real_roots, sign_variations, sturm_sequence, BigFloat, Field, QuadExt, Rational, RootInterval,
    UPoly, DEFAULT_PRECISION,
};

type P = UPoly<QuadExt>;

/// Vertex triples of the four triangles.
pub const TRIANGLES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// A real member of the solution set, with a numeric certificate of its
/// tangency to the nine-point conic.
#[derive(Debug, Clone)]
pub struct RealInscribed {
    /// Isolating interval for the parameter.
    pub root: RootInterval,
    /// Approximate matrix in the original coordinates.
    pub approx: [[f64; 3]; 3],
    pub certified: CertifiedTangency,
}

#[derive(Debug, Clone)]
pub struct TriangleConics {
    pub vertices: [usize; 3],
    /// Parameter polynomial; its roots are the solutions.
    pub quartic: P,
    /// Number of distinct solutions, all nondegenerate.
    pub count: usize,
    /// Tangency of every solution, proved by reducing the tangency
    /// discriminant modulo the parameter polynomial.
    pub exact_tangent: bool,
    pub real: Vec<RealInscribed>,
}

#[derive(Debug, Clone)]
pub struct SixteenConics {
    pub gamma: Conic,
    pub double_points: [Vec3<QuadExt>; 2],
    /// Whether the double points are real.
    pub real_contact: bool,
    pub triangles: Vec<TriangleConics>,
}

impl SixteenConics {
    pub fn total(&self) -> usize {
        self.triangles.iter().map(|t| t.count).sum()
    }

    pub fn all_tangent(&self) -> bool {
        self.triangles.iter().all(|t| t.exact_tangent && t.real.iter().all(|r| r.certified.tangent))
    }
}

#[derive(Debug, Clone)]
pub enum SixteenOutcome {
    Found(SixteenConics),
    /// The double points are imaginary; the search is not attempted.
    ComplexContact,
}

/// The sixteen conics for real double points.
pub fn sixteen_conics(q: &Quadrangle, r: &HLine) -> Result<SixteenOutcome> {
    let s = solve(q, r, false)?;
    Ok(s.map_or(SixteenOutcome::ComplexContact, SixteenOutcome::Found))
}

/// Same search carried out over the imaginary double points as well; only
/// the exact verdict is available then.
pub fn sixteen_conics_complex(q: &Quadrangle, r: &HLine) -> Result<SixteenConics> {
    Ok(solve(q, r, true)?.expect("complex case allowed"))
}

fn solve(q: &Quadrangle, r: &HLine, allow_complex: bool) -> Result<Option<SixteenConics>> {
    if q.vertices().iter().any(|v| v.on(r)) {
        return Err(GeomError::NonGeneric("transversal through a vertex".into()));
    }
    let gamma = npc_pole_locus(q, r, false)?.conic;
    if gamma.is_degenerate() {
        return Err(GeomError::DegenerateConic);
    }
    let inv = involution_on_line(&pencil_of_quadrangle(q), r)?;
    let dp = double_points(&inv)?;
    if dp.params.len() != 2 {
        return Err(GeomError::CoincidentDoublePoints);
    }
    if !dp.real && !allow_complex {
        return Ok(None);
    }
    let x = [dp.elements[0].clone(), dp.elements[1].clone()];
    let work = |tri: [usize; 3]| solve_triangle(q, &gamma, &x, tri, dp.real);
    let triangles: Vec<Result<TriangleConics>> = std::thread::scope(|s| {
        let handles: Vec<_> = TRIANGLES.iter().map(|&t| s.spawn(move || work(t))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let triangles = triangles.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Some(SixteenConics { gamma, double_points: x, real_contact: dp.real, triangles }))
}

fn quad_mat(m: &Mat3<Rational>) -> Mat3<QuadExt> {
    std::array::from_fn(|i| std::array::from_fn(|j| QuadExt::rational(m[i][j].clone())))
}

fn qvec(m: &Mat3<QuadExt>, v: &Vec3<QuadExt>) -> Vec3<QuadExt> {
    std::array::from_fn(|i| (0..3).fold(QuadExt::fzero(), |acc, j| acc.fadd(&m[i][j].fmul(&v[j]))))
}

fn det3p(m: &[[P; 3]; 3], modulus: &P) -> P {
    let mm = |a: &P, b: &P| a.mul(b).rem(modulus);
    let minor = |a: usize, b: usize| mm(&m[1][a], &m[2][b]).sub(&mm(&m[1][b], &m[2][a]));
    mm(&m[0][0], &minor(1, 2)).sub(&mm(&m[0][1], &minor(0, 2))).add(&mm(&m[0][2], &minor(0, 1)))
}

fn dual_family(x: &Vec3<QuadExt>) -> [P; 3] {
    // (a, b, c) = (p² x2 x3, x1 x3, (p+1)² x1 x2)
    let p = P::x();
    let one = P::one();
    let pp = p.mul(&p);
    let p1 = p.add(&one).pow(2);
    [pp.scale(&x[1].fmul(&x[2])), P::constant(x[0].fmul(&x[2])), p1.scale(&x[0].fmul(&x[1]))]
}

fn dual_matrix(abc: &[P; 3]) -> [[P; 3]; 3] {
    let [a, b, c] = abc;
    let z = P::zero();
    [[z.clone(), c.clone(), b.clone()], [c.clone(), z.clone(), a.clone()], [b.clone(), a.clone(), z]]
}

fn solve_triangle(
    q: &Quadrangle,
    gamma: &Conic,
    x: &[Vec3<QuadExt>; 2],
    tri: [usize; 3],
    real: bool,
) -> Result<TriangleConics> {
    let [i, j, k] = tri;
    let s = from_cols(q.side(j, k).coords(), q.side(i, k).coords(), q.side(i, j).coords());
    // triangle coordinates P' = Sᵀ P put the sides on the reference lines
    let st = quad_mat(&transpose(&s));
    let xt = qvec(&st, &x[0]);
    let yt = qvec(&st, &x[1]);
    if xt.iter().chain(yt.iter()).any(|c| c.fis_zero()) {
        return Err(GeomError::NonGeneric("double point on a side".into()));
    }
    let abc = dual_family(&xt);
    let [a, b, c] = &abc;
    let two = QuadExt::from_i64(2);
    let sq = |p: &P, y: &QuadExt| p.scale(y).pow(2);
    let cross_term = |p: &P, r: &P, u: &QuadExt, v: &QuadExt| p.mul(r).scale(&two.fmul(u).fmul(v));
    let g = sq(a, &yt[0])
        .add(&sq(b, &yt[1]))
        .add(&sq(c, &yt[2]))
        .sub(&cross_term(a, b, &yt[0], &yt[1]))
        .sub(&cross_term(a, c, &yt[0], &yt[2]))
        .sub(&cross_term(b, c, &yt[1], &yt[2]));
    let quartic = g.monic();
    if quartic.degree() != Some(4) {
        return Err(GeomError::NonGeneric("solution at the boundary of the family".into()));
    }
    let count = if quartic.is_squarefree() { 4 } else { quartic.squarefree().degree().unwrap_or(0) };
    let modulus = quartic.squarefree();
    let abc_prod = a.mul(b).mul(c).rem(&modulus);
    if abc_prod.gcd(&modulus).degree() != Some(0) {
        return Err(GeomError::NonGeneric("degenerate inscribed conic".into()));
    }
    // dual of Γ in triangle coordinates
    let s_inv = inverse(&s).ok_or(GeomError::NonGeneric("triangle sides concurrent".into()))?;
    let m_t = mat_mul(&s_inv, &mat_mul(gamma.matrix(), &transpose(&s_inv)));
    let dual_gamma: [[P; 3]; 3] = quad_mat(&adjugate(&m_t)).map(|r| r.map(P::constant));
    let n = dual_matrix(&abc);
    let with_col = |base: &[[P; 3]; 3], other: &[[P; 3]; 3], col: usize| -> [[P; 3]; 3] {
        std::array::from_fn(|r| std::array::from_fn(|cc| if cc == col { other[r][cc].clone() } else { base[r][cc].clone() }))
    };
    let c3 = det3p(&dual_gamma, &modulus);
    let c0 = det3p(&n, &modulus);
    let c2 = (0..3).fold(P::zero(), |acc, col| acc.add(&det3p(&with_col(&dual_gamma, &n, col), &modulus)));
    let c1 = (0..3).fold(P::zero(), |acc, col| acc.add(&det3p(&with_col(&n, &dual_gamma, col), &modulus)));
    let disc = cubic_disc_mod(&[c3, c2, c1, c0], &modulus);
    let exact_tangent = disc.is_zero();
    let real = if real { real_members(&modulus, &xt, &m_t, &s)? } else { vec![] };
    Ok(TriangleConics { vertices: tri, quartic, count, exact_tangent, real })
}

fn cubic_disc_mod(c: &[P; 4], m: &P) -> P {
    let [a, b, cc, d] = c;
    let mm = |u: &P, v: &P| u.mul(v).rem(m);
    let k = |n: i64| QuadExt::from_i64(n);
    let t1 = mm(&mm(b, b), &mm(cc, cc));
    let t2 = mm(&mm(a, cc), &mm(cc, cc)).scale(&k(4));
    let t3 = mm(&mm(b, b), &mm(b, d)).scale(&k(4));
    let t4 = mm(&mm(a, a), &mm(d, d)).scale(&k(27));
    let t5 = mm(&mm(a, b), &mm(cc, d)).scale(&k(18));
    t1.sub(&t2).sub(&t3).sub(&t4).add(&t5)
}

/// Integer form `Σ (A_i + B_i √d) x^i` of a polynomial over a real
/// quadratic field, for fast exact sign evaluation.
struct IntForm {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
    d: BigInt,
}

impl IntForm {
    fn new(p: &P) -> Self {
        let cs = p.coeffs();
        let d = cs.iter().map(|c| c.d().clone()).find(|d| !d.is_zero()).unwrap_or_default();
        let den = denom_lcm(cs.iter().flat_map(|c| [c.a(), c.b()]));
        let scale = |r: &Rational| (r * Rational::from_integer(den.clone())).to_integer();
        IntForm { a: cs.iter().map(|c| scale(c.a())).collect(), b: cs.iter().map(|c| scale(c.b())).collect(), d }
    }

    fn sign(&self, x: &Rational) -> Ordering {
        let (num, den) = (x.numer(), x.denom());
        let n = self.a.len();
        let (mut sa, mut sb) = (BigInt::zero(), BigInt::zero());
        let mut np = BigInt::one();
        let mut dp: Vec<BigInt> = vec![BigInt::one(); n];
        for i in 1..n {
            dp[i] = &dp[i - 1] * den;
        }
        for i in 0..n {
            let w = &np * &dp[n - 1 - i];
            sa += &self.a[i] * &w;
            sb += &self.b[i] * &w;
            np *= num;
        }
        let (ca, cb) = (sa.sign(), sb.sign());
        use num_bigint::Sign;
        let ord = |s: Sign| match s {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        };
        if cb == Sign::NoSign || self.d.is_zero() {
            return ord(ca);
        }
        if ca == Sign::NoSign || ca == cb {
            return ord(cb);
        }
        match (&sa * &sa).cmp(&(&sb * &sb * &self.d)) {
            Ordering::Greater => ord(ca),
            Ordering::Less => ord(cb),
            Ordering::Equal => Ordering::Equal,
        }
    }
}

/// Real roots of a polynomial over a real quadratic field, isolated by
/// Sturm sequences on its norm.
fn real_roots(p: &P) -> Result<Vec<RootInterval>> {
    let f = IntForm::new(p);
    let conj = p.map(|c| c.conj());
    let norm = p.mul(&conj).map(|c| c.as_rational().expect("norm is rational").clone()).squarefree();
    let seq = sturm_sequence(&norm);
    let mut out = vec![];
    for mut iv in all_real_roots(&norm)? {
        if iv.is_exact() {
            if p.eval(&QuadExt::rational(iv.lo.clone())).fis_zero() {
                out.push(iv);
            }
            continue;
        }
        // move endpoints off neighbouring roots before the sign test
        while f.sign(&iv.lo) == Ordering::Equal || f.sign(&iv.hi) == Ordering::Equal {
            let mid = iv.midpoint();
            if norm.eval(&mid).is_zero() {
                iv = RootInterval { lo: mid.clone(), hi: mid };
                break;
            }
            if sign_variations(&seq, &iv.lo) - sign_variations(&seq, &mid) == 1 {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
        if iv.is_exact() {
            if p.eval(&QuadExt::rational(iv.lo.clone())).fis_zero() {
                out.push(iv);
            }
        } else if f.sign(&iv.lo) != f.sign(&iv.hi) {
            out.push(iv);
        }
    }
    Ok(out)
}

fn big(q: &QuadExt, prec: u32) -> BigFloat {
    BigFloat::from_quad(q, prec)
}

/// Bisects a sign-changing interval of `p` down to the given width.
fn bisect(p: &P, iv: &RootInterval, width: &Rational) -> RootInterval {
    let f = IntForm::new(p);
    let mut cur = iv.clone();
    let lo_sign = f.sign(&cur.lo);
    while !cur.is_exact() && &(&cur.hi - &cur.lo) > width {
        let mid = cur.midpoint();
        match f.sign(&mid) {
            Ordering::Equal => return RootInterval { lo: mid.clone(), hi: mid },
            sg if sg == lo_sign => cur.lo = mid,
            _ => cur.hi = mid,
        }
    }
    cur
}

fn real_members(modulus: &P, xt: &Vec3<QuadExt>, m_t: &Mat3<Rational>, s: &Mat3<Rational>) -> Result<Vec<RealInscribed>> {
    let mut out = vec![];
    for iv in real_roots(modulus)? {
        let conic_at = |prec: u32| -> BigMat {
            let width = Rational::new(1.into(), num_bigint::BigInt::from(1) << (prec as usize + 8));
            let fine = bisect(modulus, &iv, &width);
            let p = BigFloat::from_bounds(&fine.lo, &fine.hi, prec);
            let one = BigFloat::from_i64(1, prec);
            let x: Vec<BigFloat> = xt.iter().map(|c| big(c, prec)).collect();
            let a = p.square().mul(&x[1]).mul(&x[2]);
            let b = x[0].mul(&x[2]);
            let c = p.add(&one).square().mul(&x[0]).mul(&x[1]);
            // adj of the dual matrix
            [
                [a.square().neg(), a.mul(&b), a.mul(&c)],
                [a.mul(&b), b.square().neg(), b.mul(&c)],
                [a.mul(&c), b.mul(&c), c.square().neg()],
            ]
        };
        let gamma_big = |prec: u32| -> BigMat { m_t.clone().map(|r| r.map(|v| BigFloat::from_rational(&v, prec))) };
        let certified = certified_tangency(|prec| Ok((gamma_big(prec), conic_at(prec))), DEFAULT_PRECISION)?;
        // back to the original coordinates: C = S C' Sᵀ
        let ct = conic_at(64);
        let sf: Vec<Vec<f64>> = s.iter().map(|r| r.iter().map(|v| num_traits::ToPrimitive::to_f64(v).unwrap()).collect()).collect();
        let cf: Vec<Vec<f64>> = ct.iter().map(|r| r.iter().map(|v| v.mid_f64()).collect()).collect();
        let mut approx = [[0.0; 3]; 3];
        for (r, row) in approx.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|u| (0..3).map(|v| sf[r][u] * cf[u][v] * sf[c][v]).sum::<f64>()).sum();
            }
        }
        out.push(RealInscribed { root: iv, approx, certified });
    }
    Ok(out)
}
