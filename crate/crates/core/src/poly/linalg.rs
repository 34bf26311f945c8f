use super::{Ring, UPoly};
use crate::error::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// `f` followed by m shifted rows of `g`, coefficients highest degree first.
pub fn sylvester_matrix<R: Ring>(
    ring: &R,
    f: &UPoly<R::Elem>,
    g: &UPoly<R::Elem>,
) -> Result<Vec<Vec<R::Elem>>> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(Error::BothZero),
    };
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, d, shifts) in [(f, m, n), (g, n, m)] {
        for s in 0..shifts {
            let mut row = vec![ring.zero(); size];
            for (k, c) in p.coeffs().iter().enumerate() {
                row[s + d - k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by fraction-free Gaussian elimination.
pub fn bareiss_determinant<R: Ring>(ring: &R, matrix: &[Vec<R::Elem>]) -> Result<R::Elem> {
    let n = matrix.len();
    let mut a: Vec<Vec<R::Elem>> = matrix.to_vec();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Invariant("determinant of a non-square matrix".into()));
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n {
        if ring.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !ring.is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = ring.sub(&ring.mul(&a[i][j], &a[k][k]), &ring.mul(&a[i][k], &a[k][j]));
                a[i][j] = ring
                    .div_exact(&t, &prev)
                    .ok_or(Error::Invariant("Bareiss step not exact".into()))?;
            }
            a[i][k] = ring.zero();
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { ring.one() } else { a[n - 1][n - 1].clone() };
    Ok(if negate { ring.neg(&det) } else { det })
}

/// `Res(f, g)` as the determinant of the Sylvester matrix. Slow, used as an
/// independent check on [`super::resultant`].
pub fn sylvester_resultant<R: Ring>(
    ring: &R,
    f: &UPoly<R::Elem>,
    g: &UPoly<R::Elem>,
) -> Result<R::Elem> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(ring.zero());
    }
    bareiss_determinant(ring, &sylvester_matrix(ring, f, g)?)
}
