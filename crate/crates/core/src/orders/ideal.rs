use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldTower, FqElem};
use crate::poly::text::{format_mpoly, parse_mpoly};
use crate::poly::{Int, MPoly, MPolyRing, Ring, UPoly};

/// Maximal ideal `(p; g1(t1); g2(t1, t2); …; gn(t1..tn))` of `Z[t1..tn]`.
///
/// Each `g_i` is monic in `t_i` and involves only `t1..t_i`; its image over
/// the field built from the earlier stages is irreducible, so the residue
/// field is the finite tower those stages define.
#[derive(Clone, Debug)]
pub struct TriangularIdeal {
    p: u64,
    chain: Vec<MPoly>,
    residue: FieldTower,
}

impl PartialEq for TriangularIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.chain == other.chain
    }
}

impl Eq for TriangularIdeal {}

impl TriangularIdeal {
    /// Validate and build. `chain.len()` is the number of variables.
    pub fn new(p: u64, chain: Vec<MPoly>) -> Result<Self> {
        let n = chain.len();
        let mut stages = Vec::with_capacity(n);
        for (i, g) in chain.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::VariableCount { expected: n, found: g.nvars() });
            }
            if (i + 1..n).any(|v| g.degree_in(v).unwrap_or(0) > 0) {
                return Err(Error::Precondition(format!(
                    "stage {} ({}) may only involve t1..t{}",
                    i + 1,
                    format_mpoly(g),
                    i + 1
                )));
            }
            let u = g.to_univariate(i);
            let r = MPolyRing::new(n);
            if u.degree().unwrap_or(0) == 0 || !r.is_one(u.lc().unwrap()) {
                return Err(Error::NotMonic(format!("{} in t{}", format_mpoly(g), i + 1)));
            }
            stages.push(u);
        }
        let residue = FieldTower::build(p, &stages)?;
        Ok(TriangularIdeal { p, chain, residue })
    }

    /// `(p; t1; …; tn)`.
    pub fn origin(p: u64, n: usize) -> Result<Self> {
        Self::at_point(p, &vec![0; n])
    }

    /// `(p; t1 − a1; …; tn − an)`.
    pub fn at_point(p: u64, point: &[i64]) -> Result<Self> {
        let n = point.len();
        let r = MPolyRing::new(n);
        let chain = point.iter().enumerate().map(|(i, &a)| r.sub(&r.var(i), &r.from_i64(a))).collect();
        Self::new(p, chain)
    }

    /// Parse the literal `(p; g1; …; gn)`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let bad = |message: &str| Error::Parse { line: 1, column: 1, message: message.to_string() };
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| bad("ideal must be written (p; g1; ...; gn)"))?;
        let mut parts = inner.split(';').map(str::trim);
        let ps = parts.next().unwrap_or("");
        let p: u64 = ps.parse().map_err(|_| Error::Semantic {
            token: ps.to_string(),
            message: "expected a prime".into(),
        })?;
        let chain: Vec<MPoly> = parts.map(|g| parse_mpoly(g, nvars)).collect::<Result<_>>()?;
        if chain.len() != nvars {
            return Err(Error::VariableCount { expected: nvars, found: chain.len() });
        }
        Self::new(p, chain)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn chain(&self) -> &[MPoly] {
        &self.chain
    }

    pub fn nvars(&self) -> usize {
        self.chain.len()
    }

    pub fn residue_field(&self) -> &FieldTower {
        &self.residue
    }

    /// Images of `t1..tn` in the residue field.
    pub fn point(&self) -> Vec<FqElem> {
        (0..self.nvars()).map(|i| self.residue.generator(i)).collect()
    }

    pub fn reduce_mpoly(&self, a: &MPoly) -> FqElem {
        self.residue.eval_mpoly(a, &self.point())
    }

    /// Ideal membership: `a ∈ m` iff its residue class vanishes.
    pub fn contains(&self, a: &MPoly) -> bool {
        self.reduce_mpoly(a).0.iter().all(|&c| c == 0)
    }

    pub fn contains_int(&self, a: &Int) -> bool {
        self.contains(&MPoly::constant(self.nvars(), a.clone()))
    }
}

impl fmt::Display for TriangularIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.p)?;
        for g in &self.chain {
            write!(f, "; {}", format_mpoly(g))?;
        }
        write!(f, ")")
    }
}

/// Residue field of a triangular ideal.
pub fn residue_field(m: &TriangularIdeal) -> FieldTower {
    m.residue_field().clone()
}

/// Image of `f ∈ Z[t1..tn][X]` in `κ(m)[X]`.
pub fn reduce_mod(f: &UPoly<MPoly>, m: &TriangularIdeal) -> Result<UPoly<FqElem>> {
    if let Some(c) = f.coeffs().first() {
        if c.nvars() != m.nvars() {
            return Err(Error::VariableCount { expected: m.nvars(), found: c.nvars() });
        }
    }
    Ok(UPoly::from_coeffs(f.coeffs().iter().map(|c| m.reduce_mpoly(c)).collect()))
}
