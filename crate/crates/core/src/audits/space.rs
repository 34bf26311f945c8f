use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Int, MPoly, Monomial, UPoly};

/// Monic `f = X^d + a_{d−1} X^{d−1} + … + a_0` with `d = deg_x` and each
/// `a_i ∈ Z[t1..tn]` of total degree `≤ tdeg` with coefficients in
/// `[−height, height]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CandidateSpace {
    pub n: usize,
    pub deg_x: usize,
    pub tdeg: u32,
    pub height: u32,
}

impl CandidateSpace {
    pub fn new(n: usize, deg_x: usize, tdeg: u32, height: u32) -> Result<Self> {
        if deg_x < 1 || tdeg < 1 || height < 1 {
            return Err(Error::Precondition(format!(
                "bounds must be at least 1 (deg_x = {deg_x}, tdeg = {tdeg}, height = {height})"
            )));
        }
        Ok(CandidateSpace { n, deg_x, tdeg, height })
    }

    /// Monomials of total degree `≤ tdeg`, by degree then lexicographically.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for total in 0..=self.tdeg {
            let mut cur = vec![0u32; self.n];
            push_compositions(&mut out, &mut cur, 0, total);
        }
        out
    }

    /// Number of integer coefficients that vary.
    pub fn slots(&self) -> usize {
        self.deg_x * self.monomials().len()
    }

    pub fn cardinality(&self) -> BigUint {
        if self.deg_x < 2 {
            return BigUint::from(0u32);
        }
        BigUint::from(2 * self.height + 1).pow(self.slots() as u32)
    }

    pub fn cardinality_within(&self, cap: u64) -> Result<u64> {
        let c = self.cardinality();
        match c.to_u64() {
            Some(v) if v <= cap => Ok(v),
            _ => Err(Error::SpaceTooLarge { cardinality: c.to_string(), cap }),
        }
    }

    /// The candidate with the given index. Digit `k` of the index in base
    /// `2h + 1` is slot `k`, slots running over `a_0, a_1, …` and within each
    /// coefficient over [`Self::monomials`].
    pub fn candidate(&self, mut idx: u64) -> UPoly<MPoly> {
        let monos = self.monomials();
        let base = 2 * self.height as u64 + 1;
        let mut coeffs = Vec::with_capacity(self.deg_x + 1);
        for _ in 0..self.deg_x {
            let mut terms = Vec::new();
            for m in &monos {
                let digit = (idx % base) as i64 - self.height as i64;
                idx /= base;
                if digit != 0 {
                    terms.push((m.clone(), Int::from(digit)));
                }
            }
            coeffs.push(MPoly::from_terms(self.n, terms));
        }
        coeffs.push(MPoly::constant(self.n, Int::from(1)));
        UPoly::from_coeffs(coeffs)
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "deg_x": self.deg_x, "tdeg": self.tdeg, "height": self.height})
    }

    pub fn describe(&self) -> String {
        format!("n={}, deg_X={}, t-degree <= {}, height <= {}", self.n, self.deg_x, self.tdeg, self.height)
    }
}

fn push_compositions(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, var: usize, left: u32) {
    if var == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[var] = e;
        push_compositions(out, cur, var + 1, left - e);
    }
    cur[var] = 0;
}

/// Every candidate of the space in index order.
pub fn enumerate_candidates(space: &CandidateSpace, cap: u64) -> Result<impl Iterator<Item = UPoly<MPoly>> + '_> {
    let total = space.cardinality_within(cap)?;
    Ok((0..total).map(move |i| space.candidate(i)))
}
