use super::{PolyRing, Ring, UPoly};
use crate::error::{Error, Result};

/// Subresultant polynomial remainder sequence of `f` and `g`.
///
/// Returns `[A, B, S_1, S_2, …]` where `deg A ≥ deg B` and each later entry is
/// the pseudo-remainder of its two predecessors divided by the subresultant
/// normalizer; the sequence stops at the last nonzero entry.
pub fn subresultant_prs<R: Ring>(
    ring: &R,
    f: &UPoly<R::Elem>,
    g: &UPoly<R::Elem>,
) -> Result<Vec<UPoly<R::Elem>>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let (a, b) = if f.degree() >= g.degree() { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
    let mut seq = vec![a];
    if b.is_zero() {
        return Ok(seq);
    }
    seq.push(b);
    walk(ring, &mut seq, |_| {})?;
    Ok(seq)
}

/// Drive the subresultant recurrence on the last two entries of `seq`,
/// calling `on_step` with the degree pair of each division.
fn walk<R: Ring>(
    ring: &R,
    seq: &mut Vec<UPoly<R::Elem>>,
    mut on_step: impl FnMut((usize, usize)),
) -> Result<(R::Elem, R::Elem)> {
    let px = PolyRing::new(ring.clone());
    let mut g = ring.one();
    let mut h = ring.one();
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            return Ok((g, h));
        }
        on_step((da, db));
        let delta = (da - db) as u64;
        let r = px.prem(a, b)?;
        if r.is_zero() {
            return Ok((g, h));
        }
        let norm = ring.mul(&g, &ring.pow(&h, delta));
        let r = px.div_scalar(&r, &norm).ok_or(Error::Invariant("subresultant division not exact".into()))?;
        g = b.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = ring.pow(&g, delta);
            let den = ring.pow(&h, delta - 1);
            ring.div_exact(&num, &den).ok_or(Error::Invariant("subresultant h update not exact".into()))?
        };
        seq.push(r);
    }
}

/// `Res(f, g)` over an integral domain, via the subresultant PRS.
///
/// Agrees with the Sylvester determinant. A zero argument gives zero unless
/// both are zero, which is an error.
pub fn resultant<R: Ring>(ring: &R, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> Result<R::Elem> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(ring.zero());
    }
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    let (a, b, mut negate) = if df >= dg {
        (f.clone(), g.clone(), false)
    } else {
        (g.clone(), f.clone(), df % 2 == 1 && dg % 2 == 1)
    };
    let da = a.degree().unwrap() as u64;
    if b.degree() == Some(0) {
        let r = ring.pow(b.lc().unwrap(), da);
        return Ok(if negate { ring.neg(&r) } else { r });
    }
    let mut seq = vec![a, b];
    let (_, h) = walk(ring, &mut seq, |(x, y)| {
        if x % 2 == 1 && y % 2 == 1 {
            negate = !negate;
        }
    })?;
    let last = seq.last().unwrap();
    if last.degree() != Some(0) {
        return Ok(ring.zero());
    }
    let prev_deg = seq[seq.len() - 2].degree().unwrap() as u64;
    let num = ring.pow(last.lc().unwrap(), prev_deg);
    let den = ring.pow(&h, prev_deg - 1);
    let t = ring
        .div_exact(&num, &den)
        .ok_or(Error::Invariant("subresultant final division not exact".into()))?;
    Ok(if negate { ring.neg(&t) } else { t })
}

/// `disc(f) = (−1)^{d(d−1)/2} · Res(f, f′) / lc(f)` for `deg f = d ≥ 1`.
pub fn discriminant<R: Ring>(ring: &R, f: &UPoly<R::Elem>) -> Result<R::Elem> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    let px = PolyRing::new(ring.clone());
    let res = resultant(ring, f, &px.derivative(f))?;
    let q = ring
        .div_exact(&res, f.lc().unwrap())
        .ok_or(Error::Invariant("leading coefficient does not divide Res(f, f')".into()))?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { ring.neg(&q) } else { q })
}
