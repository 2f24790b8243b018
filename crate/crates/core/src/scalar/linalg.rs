//! Small dense linear algebra over any exact field.

use super::field::Field;
use super::rational::Rational;

pub type Vec3<F> = [F; 3];
pub type Mat3<F> = [[F; 3]; 3];

pub fn cross<F: Field>(a: &Vec3<F>, b: &Vec3<F>) -> Vec3<F> {
    [
        a[1].fmul(&b[2]).fsub(&a[2].fmul(&b[1])),
        a[2].fmul(&b[0]).fsub(&a[0].fmul(&b[2])),
        a[0].fmul(&b[1]).fsub(&a[1].fmul(&b[0])),
    ]
}

pub fn dot<F: Field>(a: &Vec3<F>, b: &Vec3<F>) -> F {
    a[0].fmul(&b[0]).fadd(&a[1].fmul(&b[1])).fadd(&a[2].fmul(&b[2]))
}

pub fn det3<F: Field>(m: &Mat3<F>) -> F {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Determinant of the matrix with the given columns.
pub fn det_cols<F: Field>(a: &Vec3<F>, b: &Vec3<F>, c: &Vec3<F>) -> F {
    dot(a, &cross(b, c))
}

pub fn transpose<F: Field>(m: &Mat3<F>) -> Mat3<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// Adjugate (transpose of the cofactor matrix), so `M·adj(M) = det(M)·I`.
pub fn adjugate<F: Field>(m: &Mat3<F>) -> Mat3<F> {
    let c0 = cross(&m[1], &m[2]);
    let c1 = cross(&m[2], &m[0]);
    let c2 = cross(&m[0], &m[1]);
    transpose(&[c0, c1, c2])
}

pub fn mat_mul<F: Field>(a: &Mat3<F>, b: &Mat3<F>) -> Mat3<F> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(F::fzero(), |s, k| s.fadd(&a[i][k].fmul(&b[k][j]))))
    })
}

pub fn mat_vec<F: Field>(a: &Mat3<F>, v: &Vec3<F>) -> Vec3<F> {
    std::array::from_fn(|i| dot(&a[i], v))
}

pub fn mat_add<F: Field>(a: &Mat3<F>, b: &Mat3<F>) -> Mat3<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].fadd(&b[i][j])))
}

pub fn mat_scale<F: Field>(a: &Mat3<F>, s: &F) -> Mat3<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].fmul(s)))
}

pub fn identity<F: Field>() -> Mat3<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { F::fone() } else { F::fzero() }))
}

pub fn from_cols<F: Field>(a: &Vec3<F>, b: &Vec3<F>, c: &Vec3<F>) -> Mat3<F> {
    transpose(&[a.clone(), b.clone(), c.clone()])
}

pub fn inverse<F: Field>(m: &Mat3<F>) -> Option<Mat3<F>> {
    let d = det3(m).finv()?;
    Some(mat_scale(&adjugate(m), &d))
}

/// `PᵀMQ`.
pub fn bilinear<F: Field>(m: &Mat3<F>, p: &Vec3<F>, q: &Vec3<F>) -> F {
    dot(p, &mat_vec(m, q))
}

pub fn trace<F: Field>(m: &Mat3<F>) -> F {
    m[0][0].fadd(&m[1][1]).fadd(&m[2][2])
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.fis_zero())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].fis_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].finv().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.fmul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].fis_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let v = rows[r][j].fmul(&f);
                    rows[i][j] = rows[i][j].fsub(&v);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the right null space of a matrix given by rows.
pub fn null_space<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::fzero(); ncols];
            v[f] = F::fone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][f].fneg();
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank3<F: Field>(m: &Mat3<F>) -> usize {
    rank(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// Integer matrix entries convenience constructor.
pub fn mat_i64(m: [[i64; 3]; 3]) -> Mat3<Rational> {
    m.map(|r| r.map(|v| Rational::from_integer(v.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_adjugate() {
        let m = mat_i64([[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity());
        let a = adjugate(&m);
        let d = det3(&m);
        assert_eq!(mat_mul(&m, &a), mat_scale(&identity(), &d));
    }

    #[test]
    fn null_space_of_rank_one() {
        let rows = vec![vec![Rational::from_integer(1.into()), Rational::from_integer(2.into()), Rational::from_integer(3.into())]];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(rows[0].iter().zip(&v).fold(Rational::from_integer(0.into()), |s, (a, b)| s + a * b) == Rational::from_integer(0.into()));
        }
    }
}
