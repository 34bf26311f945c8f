use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::orders::{reduce_mod, TriangularIdeal};
use crate::gf::is_irreducible_fq;
use crate::poly::{Field, Int, MPoly, MPolyRing, PolyRing, Rat, Rationals, Ring, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// The witness is a root in `Z[t1..tn]`.
    Reducible(MPoly),
    Undecided,
}

/// Best-effort irreducibility over `Q(t1..tn)` for monic `f ∈ Z[t][X]`.
///
/// Roots in `Z[t]` are searched completely: a root `r` of a monic `f` has
/// total degree at most `max deg(a_i) / (d − i)`, so it is determined by
/// its values on a unisolvent grid, and each value is an integer root of the
/// specialization. For `deg_X ≤ 3` this decides irreducibility; higher
/// degrees fall back to a modular certificate.
pub fn classify(f: &UPoly<MPoly>) -> Irreducibility {
    let d = f.degree().expect("nonzero candidate");
    let n = f.coeffs()[0].nvars();
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    if f.coeffs()[0].is_zero() {
        return Irreducibility::Reducible(MPoly::zero(n));
    }
    if let Some(r) = find_root(f, n, d) {
        return Irreducibility::Reducible(r);
    }
    if d <= 3 || modular_certificate(f, n) {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Undecided
    }
}

fn root_degree_bound(f: &UPoly<MPoly>, d: usize) -> u32 {
    (0..d)
        .filter_map(|i| f.coeffs()[i].total_degree().map(|t| t / (d - i) as u32))
        .max()
        .unwrap_or(0)
}

fn grid(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, var: usize, left: u32) {
        if var == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            rec(out, cur, var + 1, left - e);
        }
        cur[var] = 0;
    }
    rec(&mut out, &mut cur, 0, bound);
    out
}

fn integer_roots(coeffs: &[Int]) -> Vec<Int> {
    let k = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = if k > 0 { vec![Int::zero()] } else { Vec::new() };
    let c = coeffs[k].abs();
    let eval = |x: &Int| coeffs.iter().rev().fold(Int::zero(), |acc, a| acc * x + a);
    let mut q = Int::from(1);
    while &q * &q <= c {
        if c.is_multiple_of(&q) {
            let other = &c / &q;
            for cand in [q.clone(), -q.clone(), other.clone(), -other] {
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
        q += 1;
    }
    roots.sort();
    roots
}

fn find_root(f: &UPoly<MPoly>, n: usize, d: usize) -> Option<MPoly> {
    let bound = root_degree_bound(f, d);
    let points = grid(n, bound);
    let monos = grid(n, bound);
    let mut root_sets = Vec::with_capacity(points.len());
    for pt in &points {
        let at: Vec<Int> = pt.iter().map(|&x| Int::from(x)).collect();
        let coeffs: Vec<Int> = f.coeffs().iter().map(|c| c.eval_int(&at)).collect();
        let roots = integer_roots(&coeffs);
        if roots.is_empty() {
            return None;
        }
        root_sets.push(roots);
    }
    // Interpolation matrix: row per point, column per monomial.
    let q = Rationals;
    let matrix: Vec<Vec<Rat>> = points
        .iter()
        .map(|pt| {
            monos
                .iter()
                .map(|m| {
                    let v: u64 = pt.iter().zip(m).map(|(&a, &e)| (a as u64).pow(e)).product();
                    q.from_int(&Int::from(v))
                })
                .collect()
        })
        .collect();
    let inverse = invert(&matrix)?;
    let r = MPolyRing::new(n);
    let px = PolyRing::new(r);
    let mut choice = vec![0usize; points.len()];
    loop {
        let values: Vec<Rat> = choice.iter().zip(&root_sets).map(|(&i, s)| q.from_int(&s[i])).collect();
        let coeffs: Vec<Rat> = inverse
            .iter()
            .map(|row| row.iter().zip(&values).fold(q.zero(), |acc, (a, b)| q.add(&acc, &q.mul(a, b))))
            .collect();
        if coeffs.iter().all(|c| c.is_integer()) {
            let cand = MPoly::from_terms(n, monos.iter().cloned().zip(coeffs.iter().map(|c| c.to_integer())));
            if px.eval(f, &cand).is_zero() {
                return Some(cand);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < root_sets[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let q = Rationals;
    let k = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { q.one() } else { q.zero() }));
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = q.inv(&a[col][col])?;
        for x in a[col].iter_mut() {
            *x = q.mul(x, &inv);
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = q.sub(x, &q.mul(&factor, p));
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[k..].to_vec()).collect())
}

fn modular_certificate(f: &UPoly<MPoly>, n: usize) -> bool {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let width = if (p as u128).pow(n as u32) <= 64 { p } else { 2 };
        for idx in 0..width.pow(n as u32) {
            let mut a = vec![0i64; n];
            let mut rest = idx;
            for slot in a.iter_mut().rev() {
                *slot = (rest % width) as i64;
                rest /= width;
            }
            let Ok(m) = TriangularIdeal::at_point(p, &a) else { continue };
            if let Ok(fb) = reduce_mod(f, &m) {
                if is_irreducible_fq(m.residue_field(), &fb) {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text::{format_mpoly, parse_upoly};

    fn cls(f: &str, n: usize) -> Irreducibility {
        classify(&parse_upoly(f, n).unwrap())
    }

    #[test]
    fn roots_and_decisions() {
        assert_eq!(cls("X^2 - X", 1), Irreducibility::Reducible(MPoly::zero(1)));
        assert!(matches!(cls("X^2 - 1", 1), Irreducibility::Reducible(_)));
        assert_eq!(cls("X^2 - t1", 1), Irreducibility::Irreducible);
        assert_eq!(cls("X^2 - X - t1", 1), Irreducibility::Irreducible);
        let r = cls("X^2 - t1^2 - 2*t1 - 1", 1);
        assert!(matches!(r, Irreducibility::Reducible(ref w) if format_mpoly(w).contains("t1")), "{r:?}");
        assert!(matches!(cls("X^3 - t1*t2*X", 2), Irreducibility::Reducible(_)));
        assert!(matches!(cls("X^3 + (t1 - t2)*X^2 - t1*t2*X", 2), Irreducibility::Reducible(_)));
        assert_eq!(cls("X^3 - t1*X - t2", 2), Irreducibility::Irreducible);
        assert_eq!(cls("X^2 + 1", 0), Irreducibility::Irreducible);
        assert_eq!(cls("X^3 - 8", 0), Irreducibility::Reducible(MPoly::constant(0, Int::from(2))));
        // Quartic: no root, certified modulo 2 at t = 0? X^4 + X + t1 at t1 = 1 is irreducible mod 2.
        assert_eq!(cls("X^4 + X + t1", 1), Irreducibility::Irreducible);
        // (X^2 + 1)^2 has no root and no modular certificate.
        assert_eq!(cls("X^4 + 2*X^2 + 1", 0), Irreducibility::Undecided);
    }

    #[test]
    fn integer_root_lists() {
        let c: Vec<Int> = [-6, 11, -6, 1].iter().map(|&x| Int::from(x)).collect();
        assert_eq!(integer_roots(&c), vec![Int::from(1), Int::from(2), Int::from(3)]);
    }
}
