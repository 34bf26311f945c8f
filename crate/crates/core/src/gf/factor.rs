use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FieldTower, FqElem};
use crate::error::{Error, Result};
use crate::poly::{prime_factors, Int, PolyRing, Ring, UPoly};

type Poly = UPoly<FqElem>;

fn is_one_poly(px: &PolyRing<FieldTower>, f: &Poly) -> bool {
    f.degree() == Some(0) && px.base().is_one(f.lc().unwrap())
}

/// Squarefree decomposition `f = ∏ part_i^{m_i}` of a monic polynomial.
///
/// Parts are squarefree, pairwise coprime, nonconstant, and listed by
/// increasing multiplicity; each multiplicity occurs at most once.
pub fn squarefree_factorization(field: &FieldTower, f: &Poly) -> Vec<(Poly, usize)> {
    let mut raw = Vec::new();
    sff_rec(field, f, 1, &mut raw);
    let px = field.poly_ring();
    raw.sort_by_key(|(_, m)| *m);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in raw {
        match out.last_mut() {
            Some((h, k)) if *k == m => *h = px.mul(h, &g),
            _ => out.push((g, m)),
        }
    }
    out
}

fn sff_rec(field: &FieldTower, f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    let px = field.poly_ring();
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let mut c = px.gcd(f, &px.derivative(f));
    let mut w = px.div_rem(f, &c).unwrap().0;
    let mut i = 1;
    while !is_one_poly(&px, &w) {
        let y = px.gcd(&w, &c);
        let fac = px.div_rem(&w, &y).unwrap().0;
        if !is_one_poly(&px, &fac) {
            out.push((fac, i * scale));
        }
        c = px.div_rem(&c, &y).unwrap().0;
        w = y;
        i += 1;
    }
    if !is_one_poly(&px, &c) {
        let p = field.characteristic() as usize;
        let root: Vec<FqElem> =
            c.coeffs().iter().step_by(p).map(|a| field.pth_root(a)).collect();
        sff_rec(field, &UPoly::from_coeffs(root), scale * p, out);
    }
}

/// `X^{q^k} mod f` by repeated `q`-th powering.
fn frobenius_power(px: &PolyRing<FieldTower>, h: &Poly, f: &Poly, q: &BigUint) -> Poly {
    px.pow_mod(h, q, f)
}

/// Split a squarefree monic polynomial into the products of its irreducible
/// factors of each degree: entries `(product, d)` with `d` increasing.
pub fn distinct_degree_factorization(field: &FieldTower, f: &Poly) -> Vec<(Poly, usize)> {
    let px = field.poly_ring();
    let q = field.order();
    let x = px.x();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = px.rem(&x, &rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = frobenius_power(&px, &h, &rest, &q);
        let g = px.gcd(&rest, &px.sub(&h, &x));
        if !is_one_poly(&px, &g) {
            rest = px.div_rem(&rest, &g).unwrap().0;
            h = px.rem(&h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(k) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, k));
    }
    out
}

/// Cantor–Zassenhaus splitting of a squarefree monic `f` whose irreducible
/// factors all have degree `d`. Deterministic for a given seed.
///
/// In odd characteristic a random `a` is raised to `(q^d − 1)/2`; in
/// characteristic two the trace `a + a^2 + … + a^{2^{kd−1}}` (with `q = 2^k`)
/// plays the same role.
pub fn equal_degree_factorization(
    field: &FieldTower,
    f: &Poly,
    d: usize,
    seed: u64,
) -> Result<Vec<Poly>> {
    let n = f.degree().ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
    if d == 0 || n % d != 0 {
        return Err(Error::Precondition(format!("degree {n} is not a multiple of {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    edf_rec(field, f, d, &mut rng, &mut out);
    Ok(out)
}

fn edf_rec(field: &FieldTower, f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let px = field.poly_ring();
    let n = f.degree().unwrap();
    if n <= d {
        out.push(f.clone());
        return;
    }
    let q = field.order();
    let p = field.characteristic();
    loop {
        let a = UPoly::from_coeffs((0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let k = field.dimension() * d;
            let mut acc = px.rem(&a, f);
            let mut term = acc.clone();
            for _ in 1..k {
                term = px.rem(&px.mul(&term, &term), f);
                acc = px.add(&acc, &term);
            }
            acc
        } else {
            let e = (num_traits::pow(q.clone(), d) - 1u32) / 2u32;
            px.sub(&px.pow_mod(&a, &e, f), &px.one())
        };
        let g = px.gcd(f, &b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = px.div_rem(f, &g).unwrap().0;
            edf_rec(field, &g, d, rng, out);
            edf_rec(field, &h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization of a monic polynomial into monic irreducibles with
/// multiplicities, sorted by degree and then by coefficients from the top.
pub fn factor_fq(field: &FieldTower, f: &Poly, seed: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut sub_seed = seed;
    for (part, m) in squarefree_factorization(field, f) {
        for (block, d) in distinct_degree_factorization(field, &part) {
            sub_seed = sub_seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let pieces = equal_degree_factorization(field, &block, d, sub_seed)
                .expect("distinct-degree output has the right degree");
            out.extend(pieces.into_iter().map(|g| (g, m)));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| canonical_key(a).cmp(&canonical_key(b)).then(ma.cmp(mb)));
    out
}

fn canonical_key(f: &Poly) -> (usize, Vec<FqElem>) {
    (f.degree().unwrap_or(0), f.coeffs().iter().rev().cloned().collect())
}

/// Rabin's test: `f` of degree `n` is irreducible iff `f | X^{q^n} − X` and
/// `gcd(f, X^{q^{n/r}} − X) = 1` for every prime `r | n`.
pub fn is_irreducible_fq(field: &FieldTower, f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let px = field.poly_ring();
    let q = field.order();
    let x = px.x();
    let mut powers = vec![px.rem(&x, f)];
    for _ in 0..n {
        let next = frobenius_power(&px, powers.last().unwrap(), f, &q);
        powers.push(next);
    }
    if powers[n] != powers[0] {
        return false;
    }
    for r in prime_factors(&Int::from(n)) {
        let r: usize = r.try_into().unwrap();
        let g = px.gcd(f, &px.sub(&powers[n / r], &x));
        if !is_one_poly(&px, &g) {
            return false;
        }
    }
    true
}
