use super::poly::{Poly, Var};
use crate::error::{GeomError, Result};

/// Sylvester resultant of `p` and `q` eliminating `v`.
///
/// The Sylvester matrix has the `deg q` shifted copies of `p` first, so
/// `res(p·r, q) = res(p, q)·res(r, q)` holds exactly.
pub fn resultant(p: &Poly, q: &Poly, v: Var) -> Result<Poly> {
    if p.is_zero() || q.is_zero() {
        return Err(GeomError::ZeroPolynomial);
    }
    let a = p.coeffs_in(v);
    let b = q.coeffs_in(v);
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Ok(Poly::one());
    }
    let mut rows = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    Ok(bareiss_det(rows))
}

/// Determinant by fraction-free elimination, every division exact.
pub fn bareiss_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}
