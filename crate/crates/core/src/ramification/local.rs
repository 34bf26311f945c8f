use num_traits::{One, Signed, ToPrimitive};

use super::{IdealRecord, Level, RamificationReport, Verdict};
use crate::error::Result;
use crate::orders::{factor_ideal, Factorization, FunctionFieldExt, TriangularIdeal};
use crate::poly::text::{format_mpoly, integer_ring_name};
use crate::poly::{prime_factors, Int, MPoly};

/// Order-level verdict at one maximal ideal, with the fiber factorization
/// as evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVerdict {
    pub verdict: Verdict,
    pub factorization: Factorization,
}

/// `Z[t][μ]` is unramified over `m` iff `f mod m` is squarefree over `κ(m)`.
pub fn is_unramified_at(ext: &FunctionFieldExt, m: &TriangularIdeal, seed: u64) -> Result<LocalVerdict> {
    let factorization = factor_ideal(ext, m, seed)?;
    let e = factorization.e_list().into_iter().max().unwrap_or(1);
    let verdict = if e == 1 { Verdict::Unramified } else { Verdict::Ramified { e } };
    Ok(LocalVerdict { verdict, factorization })
}

/// `V(disc)`: the maximal ideals where the order ramifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedLocus {
    pub disc: MPoly,
    /// Prime divisors of the integer content of `disc`.
    pub content_primes: Vec<Int>,
}

impl RamifiedLocus {
    pub fn contains(&self, m: &TriangularIdeal) -> bool {
        m.contains(&self.disc)
    }

    pub fn is_empty(&self) -> bool {
        self.disc.as_constant().is_some_and(|c| c.abs().is_one())
    }
}

pub fn ramified_locus(ext: &FunctionFieldExt) -> Result<RamifiedLocus> {
    let r = ext.base_ring();
    if ext.degree() < 2 {
        return Ok(RamifiedLocus { disc: MPoly::constant(r.nvars(), Int::one()), content_primes: Vec::new() });
    }
    let disc = ext.discriminant()?;
    let content_primes = if disc.is_zero() { Vec::new() } else { prime_factors(&disc.integer_content()) };
    Ok(RamifiedLocus { disc, content_primes })
}

/// `disc_X(f) = ±1`: every fiber of the order is squarefree.
pub fn is_unramified_everywhere_order(ext: &FunctionFieldExt) -> Result<bool> {
    Ok(ramified_locus(ext)?.is_empty())
}

/// Ideals a report tests by default: `(p)` for `p | disc` when `n = 0`;
/// otherwise linear points over the content primes and `2, 3, 5`.
pub fn default_ideals(ext: &FunctionFieldExt) -> Result<Vec<TriangularIdeal>> {
    let locus = ramified_locus(ext)?;
    let n = ext.nvars();
    let mut primes: Vec<u64> = locus.content_primes.iter().filter_map(|p| p.to_u64()).collect();
    if n == 0 {
        return primes.into_iter().map(|p| TriangularIdeal::new(p, Vec::new())).collect();
    }
    primes.extend([2, 3, 5]);
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for p in primes {
        let width = if (p as u128).pow(n as u32) <= 64 { p } else { 2.min(p) };
        let total = width.pow(n as u32);
        for idx in 0..total {
            let mut point = vec![0i64; n];
            let mut rest = idx;
            for slot in point.iter_mut().rev() {
                *slot = (rest % width) as i64;
                rest /= width;
            }
            out.push(TriangularIdeal::at_point(p, &point)?);
        }
    }
    Ok(out)
}

/// Per-ideal verdicts for a single extension.
///
/// A squarefree fiber makes the order étale, hence normal, over `m`, so an
/// unramified verdict holds at field level. A ramified fiber transfers to
/// the field only when the order is known to be maximal at `p`.
pub fn absolute_report(ext: &FunctionFieldExt, ideals: &[TriangularIdeal], seed: u64) -> Result<RamificationReport> {
    let locus = ramified_locus(ext)?;
    let mut records = Vec::with_capacity(ideals.len());
    for m in ideals {
        let lv = is_unramified_at(ext, m, seed)?;
        let (verdict, level) = match lv.verdict {
            Verdict::Ramified { e } if ext.is_p_maximal(m.p()) == Some(true) => (Verdict::Ramified { e }, Level::Field),
            Verdict::Ramified { e } => (Verdict::Indeterminate { e: Some(e) }, Level::Order),
            v => (v, Level::Field),
        };
        records.push(IdealRecord {
            ideal: m.to_string(),
            prime: None,
            verdict,
            e_list: lv.factorization.e_list(),
            f_list: lv.factorization.f_list(),
            level,
        });
    }
    let exhaustive = locus.is_empty().then(|| format!("unit discriminant {}", format_mpoly(&locus.disc)));
    let subject = format!("{} over {} (disc {})", ext.label(), integer_ring_name(ext.nvars()), format_mpoly(&locus.disc));
    Ok(RamificationReport::assemble(subject, records, exhaustive, ext.nvars() > 0))
}
