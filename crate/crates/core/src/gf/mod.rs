//! Finite fields `F_q` presented as towers `F_p ⊆ F_p[z1]/(g1) ⊆ …`, and
//! factorization of univariate polynomials over them.

mod factor;

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Field, Int, MPoly, PolyRing, Ring, UPoly};

pub use factor::{
    distinct_degree_factorization, equal_degree_factorization, factor_fq, is_irreducible_fq,
    squarefree_factorization,
};

/// Largest accepted characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 63;

/// Element of a [`FieldTower`], stored as flat coordinates over `F_p`.
///
/// Coordinate `e1 + d1·(e2 + d2·(e3 + …))` is the coefficient of
/// `z1^e1·z2^e2·…`, where `d_i` is the degree of stage `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub Vec<u64>);

impl Coeff for FqElem {
    fn is_zero_coeff(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl FqElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Stage {
    degree: usize,
    /// Monic defining polynomial over the level below, coefficients low to high.
    poly: Vec<Vec<u64>>,
}

#[derive(Debug, PartialEq, Eq)]
struct TowerData {
    p: u64,
    stages: Vec<Stage>,
    /// `dims[k]` is the `F_p`-dimension of level `k`; `dims[0] = 1`.
    dims: Vec<usize>,
}

/// A finite field as a tower of simple extensions over `F_p`.
///
/// Cheap to clone; the stages are shared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    data: Arc<TowerData>,
}

/// Primality by trial division, adequate below `2^63` for the desk-scale
/// inputs this crate sees.
pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl FieldTower {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(FieldTower { data: Arc::new(TowerData { p, stages: Vec::new(), dims: vec![1] }) })
    }

    /// Build `F_p` extended by each stage in turn. Stage `i` is a monic
    /// polynomial in `X` whose coefficients may involve `t1..t_i`, read as the
    /// generators of the earlier stages.
    pub fn build(p: u64, stages: &[UPoly<MPoly>]) -> Result<Self> {
        let mut t = Self::prime(p)?;
        for (i, s) in stages.iter().enumerate() {
            let g = t.lift_mpoly_poly(s)?;
            t = t.extend(&g).map_err(|e| match e {
                Error::ReducibleStage { factor, .. } => Error::ReducibleStage { stage: i + 1, factor },
                e => e,
            })?;
        }
        Ok(t)
    }

    /// Adjoin a root of `g`, which must be monic and irreducible over this
    /// field.
    pub fn extend(&self, g: &UPoly<FqElem>) -> Result<Self> {
        let d = match g.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::Precondition("stage must have degree at least 1".into())),
        };
        if !self.is_one(g.lc().unwrap()) {
            return Err(Error::NotMonic(self.format_poly(g, "X")));
        }
        if !is_irreducible_fq(self, g) {
            let parts = factor_fq(self, g, 0);
            let factor = self.format_poly(&parts[0].0, "X");
            return Err(Error::ReducibleStage { stage: self.num_stages() + 1, factor });
        }
        let mut data = TowerData {
            p: self.data.p,
            stages: Vec::with_capacity(self.num_stages() + 1),
            dims: self.data.dims.clone(),
        };
        for s in &self.data.stages {
            data.stages.push(Stage { degree: s.degree, poly: s.poly.clone() });
        }
        data.stages.push(Stage { degree: d, poly: g.coeffs().iter().map(|c| c.0.clone()).collect() });
        data.dims.push(self.dimension() * d);
        Ok(FieldTower { data: Arc::new(data) })
    }

    pub fn characteristic(&self) -> u64 {
        self.data.p
    }

    pub fn num_stages(&self) -> usize {
        self.data.stages.len()
    }

    pub fn stage_degrees(&self) -> Vec<usize> {
        self.data.stages.iter().map(|s| s.degree).collect()
    }

    /// Degree over `F_p`.
    pub fn dimension(&self) -> usize {
        *self.data.dims.last().unwrap()
    }

    /// Field size `q = p^dimension`.
    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.data.p), self.dimension())
    }

    /// The sub-tower made of the first `k` stages.
    pub fn prefix(&self, k: usize) -> FieldTower {
        assert!(k <= self.num_stages());
        if k == self.num_stages() {
            return self.clone();
        }
        let data = TowerData {
            p: self.data.p,
            stages: self.data.stages[..k]
                .iter()
                .map(|s| Stage { degree: s.degree, poly: s.poly.clone() })
                .collect(),
            dims: self.data.dims[..=k].to_vec(),
        };
        FieldTower { data: Arc::new(data) }
    }

    /// Image of an element of a prefix tower.
    pub fn embed(&self, a: &FqElem) -> FqElem {
        assert!(a.0.len() <= self.dimension());
        let mut v = a.0.clone();
        v.resize(self.dimension(), 0);
        FqElem(v)
    }

    /// Image of an element of this tower in a prefix tower, if it lies there.
    pub fn restrict(&self, a: &FqElem, k: usize) -> Option<FqElem> {
        let d = self.data.dims[k];
        a.0[d..].iter().all(|&c| c == 0).then(|| FqElem(a.0[..d].to_vec()))
    }

    /// The root adjoined at stage `k` (0-based).
    pub fn generator(&self, k: usize) -> FqElem {
        let mut v = vec![0; self.dimension()];
        let below = self.data.dims[k];
        let stage = &self.data.stages[k];
        if stage.degree == 1 {
            // For a linear stage X + c the generator is −c, an element below.
            for (i, c) in stage.poly[0].iter().enumerate() {
                v[i] = (self.data.p - c) % self.data.p;
            }
        } else {
            v[below] = 1;
        }
        FqElem(v)
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut v = vec![0; self.dimension()];
        v[0] = c % self.data.p;
        FqElem(v)
    }

    /// Element with the given index in `[0, q)`: base-`p` digits as coordinates.
    pub fn element_from_index(&self, mut idx: u64) -> FqElem {
        let p = self.data.p;
        FqElem(
            (0..self.dimension())
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c
                })
                .collect(),
        )
    }

    /// All elements in index order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let q = self.order().to_u64().expect("field too large to enumerate");
        (0..q).map(move |i| self.element_from_index(i))
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FqElem {
        FqElem((0..self.dimension()).map(|_| rng.gen_range(0..self.data.p)).collect())
    }

    /// Image of an element of `Z[t1..tn]` under `t_j ↦ images[j]`.
    pub fn eval_mpoly(&self, a: &MPoly, images: &[FqElem]) -> FqElem {
        a.eval_in(self, images)
    }

    /// Reduce a polynomial with `Z[t1..tk]` coefficients, `t_j` read as the
    /// `j`-th generator. Variables beyond the tower height must not occur.
    pub fn lift_mpoly_poly(&self, g: &UPoly<MPoly>) -> Result<UPoly<FqElem>> {
        let k = self.num_stages();
        let nv = g.coeffs().first().map_or(0, |c| c.nvars());
        for c in g.coeffs() {
            if (k..nv).any(|v| c.degree_in(v).unwrap_or(0) > 0) {
                return Err(Error::Precondition(format!(
                    "stage {} may only involve t1..t{}",
                    k + 1,
                    k
                )));
            }
        }
        let images: Vec<FqElem> =
            (0..nv).map(|v| if v < k { self.generator(v) } else { self.zero() }).collect();
        Ok(UPoly::from_coeffs(g.coeffs().iter().map(|c| self.eval_mpoly(c, &images)).collect()))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.data.p)
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        let e = self.order() / BigUint::from(self.data.p);
        self.pow_big(a, &e)
    }

    pub fn pow_big(&self, a: &FqElem, e: &BigUint) -> FqElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn mul_level(&self, k: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.data.p;
        if k == 0 {
            return vec![mul_mod(a[0], b[0], p)];
        }
        let stage = &self.data.stages[k - 1];
        let (d, m) = (stage.degree, self.data.dims[k - 1]);
        if d == 1 {
            return self.mul_level(k - 1, a, b);
        }
        let mut prod = vec![vec![0u64; m]; 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * m..(i + 1) * m];
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * m..(j + 1) * m];
                if bj.iter().all(|&x| x == 0) {
                    continue;
                }
                let c = self.mul_level(k - 1, ai, bj);
                for (x, y) in prod[i + j].iter_mut().zip(c) {
                    *x = (*x + y) % p;
                }
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[i]);
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..d {
                let t = self.mul_level(k - 1, &c, &stage.poly[j]);
                for (x, y) in prod[i - d + j].iter_mut().zip(t) {
                    *x = (*x + p - y) % p;
                }
            }
        }
        prod.truncate(d);
        prod.concat()
    }

    /// Human-readable element: a polynomial in `z1, z2, …` with coefficients
    /// in `[0, p)`.
    pub fn format_elem(&self, a: &FqElem) -> String {
        let degs = self.stage_degrees();
        let mut terms = Vec::new();
        for (idx, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mut rest = idx;
            let mut parts = Vec::new();
            for (k, &d) in degs.iter().enumerate() {
                let e = rest % d;
                rest /= d;
                match e {
                    0 => {}
                    1 => parts.push(format!("z{}", k + 1)),
                    _ => parts.push(format!("z{}^{}", k + 1, e)),
                }
            }
            terms.push((c, parts.join("*")));
        }
        let mut out = String::new();
        for (c, mono) in &terms {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match (mono.is_empty(), *c) {
                (true, _) => write!(out, "{c}").unwrap(),
                (false, 1) => out.push_str(mono),
                (false, _) => write!(out, "{c}*{mono}").unwrap(),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Polynomial over this field, highest degree first, in the variable `var`.
    pub fn format_poly(&self, f: &UPoly<FqElem>, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in f.coeffs().iter().enumerate().rev() {
            if c.is_zero_coeff() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let cs = self.format_elem(c);
            let compound = cs.contains(' ');
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&cs);
            } else if self.is_one(c) {
                out.push_str(&mono);
            } else if compound {
                write!(out, "({cs})*{mono}").unwrap();
            } else {
                write!(out, "{cs}*{mono}").unwrap();
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Convenience for tests and examples: polynomial from `u64` coefficients
    /// in the prime field, lowest degree first.
    pub fn poly_from_u64s(&self, cs: &[u64]) -> UPoly<FqElem> {
        UPoly::from_coeffs(cs.iter().map(|&c| self.from_u64(c)).collect())
    }

    pub fn poly_ring(&self) -> PolyRing<FieldTower> {
        PolyRing::new(self.clone())
    }
}

impl Ring for FieldTower {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(vec![0; self.dimension()])
    }

    fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.data.p;
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| ((*x as u128 + *y as u128) % p as u128) as u64).collect())
    }

    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.data.p;
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| ((*x as u128 + (p - y) as u128) % p as u128) as u64).collect())
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.data.p;
        FqElem(a.0.iter().map(|x| (p - x) % p).collect())
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(self.mul_level(self.num_stages(), &a.0, &b.0))
    }

    fn from_int(&self, n: &Int) -> FqElem {
        let p = Int::from(self.data.p);
        let r = ((n % &p) + &p) % &p;
        self.from_u64(r.to_u64().unwrap())
    }

    fn div_exact(&self, a: &FqElem, b: &FqElem) -> Option<FqElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &FqElem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }
}

impl Field for FieldTower {
    /// Inverse as `a^(q−2)`.
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero_coeff() {
            return None;
        }
        let e = self.order() - BigUint::from(2u32);
        Some(self.pow_big(a, &e))
    }
}

/// `F_q`-inverse with the error required for zero.
pub fn fq_inverse(field: &FieldTower, a: &FqElem) -> Result<FqElem> {
    field.inv(a).ok_or(Error::ZeroInverse)
}

/// Tower over `F_p` with the given stages; see [`FieldTower::build`].
pub fn build_tower(p: u64, stages: &[UPoly<MPoly>]) -> Result<FieldTower> {
    FieldTower::build(p, stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text::parse_upoly;

    fn f4() -> FieldTower {
        build_tower(2, &[parse_upoly("X^2 + X + 1", 0).unwrap()]).unwrap()
    }

    #[test]
    fn prime_fields_and_rejections() {
        assert_eq!(build_tower(2, &[]).unwrap().order(), BigUint::from(2u32));
        assert!(matches!(FieldTower::prime(15), Err(Error::NotPrime(_))));
        assert!(matches!(FieldTower::prime(1), Err(Error::NotPrime(_))));
        assert!(FieldTower::prime(999_983).is_ok());
        match build_tower(5, &[parse_upoly("X^2 + 1", 0).unwrap()]) {
            Err(Error::ReducibleStage { stage: 1, factor }) => assert_eq!(factor, "X + 2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_extension_fields() {
        let f4 = f4();
        assert_eq!(f4.order(), BigUint::from(4u32));
        let f9 = build_tower(3, &[parse_upoly("X^2 + 1", 0).unwrap()]).unwrap();
        assert_eq!(f9.order(), BigUint::from(9u32));
        let z = f9.generator(0);
        assert_eq!(f9.mul(&z, &z), f9.from_u64(2));
    }

    #[test]
    fn inverses() {
        let f5 = FieldTower::prime(5).unwrap();
        assert_eq!(fq_inverse(&f5, &f5.one()).unwrap(), f5.one());
        assert_eq!(fq_inverse(&f5, &f5.from_u64(2)).unwrap(), f5.from_u64(3));
        assert!(matches!(fq_inverse(&f5, &f5.zero()), Err(Error::ZeroInverse)));
        let f4 = f4();
        let x = f4.generator(0);
        assert_eq!(fq_inverse(&f4, &x).unwrap(), f4.add(&x, &f4.one()));
        for a in f4.elements().skip(1) {
            assert_eq!(f4.mul(&a, &f4.inv(&a).unwrap()), f4.one());
        }
    }

    #[test]
    fn two_level_tower() {
        // F_9 = F_3[z1]/(z1^2 + 1), then F_81 via X^2 - z1 - 1 (z1 + 1 is a non-square)
        let t = build_tower(
            3,
            &[parse_upoly("X^2 + 1", 0).unwrap(), parse_upoly("X^2 - t1 - 1", 1).unwrap()],
        )
        .unwrap();
        assert_eq!(t.order(), BigUint::from(81u32));
        let z2 = t.generator(1);
        let z1 = t.generator(0);
        assert_eq!(t.mul(&z2, &z2), t.add(&z1, &t.one()));
        let mut seen = std::collections::HashSet::new();
        let mut x = t.one();
        let g = t.add(&z2, &t.from_u64(1));
        for _ in 0..80 {
            seen.insert(x.clone());
            x = t.mul(&x, &g);
        }
        assert_eq!(x, t.one());
        assert!(seen.len() > 1);
        for a in t.elements().skip(1) {
            assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
        }
        assert_eq!(t.format_elem(&t.add(&z2, &t.mul(&z1, &z2))), "z1*z2 + z2");
    }

    #[test]
    fn linear_stage_generator_is_root() {
        let t = build_tower(5, &[parse_upoly("X - 2", 0).unwrap()]).unwrap();
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.generator(0), t.from_u64(2));
    }

    #[test]
    fn primality_bounds() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1_000_001));
    }
}
