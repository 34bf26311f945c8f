//! Bounded search for monogenic extensions of `Q(t1..tn)` with unit
//! discriminant, and the report that turns its outcome into evidence about
//! the étale fundamental group of `Spec Z[t1..tn]`.

mod irreducible;
mod report;
mod space;

use std::thread;
use std::time::Instant;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::Result;
use crate::poly::text::{format_mpoly, format_upoly};
use crate::poly::{discriminant, sylvester_resultant, MPoly, MPolyRing, PolyRing, Ring, UPoly};

pub use irreducible::{classify, Irreducibility};
pub use report::{pi1_report, Pi1Report, Pi1Status, Step, StepKind, CAVEAT};
pub use space::{enumerate_candidates, CandidateSpace};

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    pub workers: usize,
    pub cap: u64,
    /// Record wall-clock time; off by default so results are reproducible.
    pub timing: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { workers: 1, cap: DEFAULT_CAP, timing: false }
    }
}

/// A candidate that is not known to be reducible and has unit discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    pub index: u64,
    pub f: UPoly<MPoly>,
    pub disc: MPoly,
    /// The same discriminant through the Sylvester determinant.
    pub disc_sylvester: MPoly,
    /// Irreducibility was not decided.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditResult {
    pub space: CandidateSpace,
    pub enumerated: u64,
    pub reducible_skipped: u64,
    /// Candidates whose irreducibility was not decided; audited anyway.
    pub flagged: u64,
    /// Reducible candidates with unit discriminant, such as `X^2 − X`.
    pub reducible_unit_disc: u64,
    pub survivors: Vec<Survivor>,
    pub runtime_ms: Option<u64>,
}

impl AuditResult {
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.to_json(),
            "enumerated": self.enumerated,
            "reducible_skipped": self.reducible_skipped,
            "reducible_unit_disc": self.reducible_unit_disc,
            "flagged": self.flagged,
            "survivors": self.survivors.iter().map(|s| json!({
                "f": format_upoly(&s.f),
                "disc": format_mpoly(&s.disc),
                "disc_sylvester": format_mpoly(&s.disc_sylvester),
                "flagged": s.flagged,
            })).collect::<Vec<_>>(),
            "runtime_ms": self.runtime_ms,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "audit {}: {} enumerated, {} reducible skipped ({} with unit discriminant), {} flagged, {} survivors\n",
            self.space.describe(),
            self.enumerated,
            self.reducible_skipped,
            self.reducible_unit_disc,
            self.flagged,
            self.survivors.len()
        );
        for s in &self.survivors {
            out.push_str(&format!("  survivor {} disc {}\n", format_upoly(&s.f), format_mpoly(&s.disc)));
        }
        if let Some(ms) = self.runtime_ms {
            out.push_str(&format!("  runtime {ms} ms\n"));
        }
        out
    }
}

#[derive(Default)]
struct Partial {
    enumerated: u64,
    reducible: u64,
    reducible_unit: u64,
    flagged: u64,
    survivors: Vec<Survivor>,
}

fn is_unit(a: &MPoly) -> bool {
    a.as_constant().is_some_and(|c| c.abs().is_one())
}

fn audit_range(space: &CandidateSpace, from: u64, to: u64) -> Result<Partial> {
    let r = MPolyRing::new(space.n);
    let mut out = Partial::default();
    for idx in from..to {
        let f = space.candidate(idx);
        out.enumerated += 1;
        let disc = discriminant(&r, &f)?;
        match classify(&f) {
            Irreducibility::Reducible(_) => {
                out.reducible += 1;
                if is_unit(&disc) {
                    out.reducible_unit += 1;
                }
            }
            c => {
                let flagged = c == Irreducibility::Undecided;
                if flagged {
                    out.flagged += 1;
                }
                if is_unit(&disc) {
                    out.survivors.push(Survivor { index: idx, disc_sylvester: sylvester_disc(&r, &f)?, f, disc, flagged });
                }
            }
        }
    }
    Ok(out)
}

/// `(−1)^{d(d−1)/2} Res(f, f′)` through the Sylvester determinant.
fn sylvester_disc(r: &MPolyRing, f: &UPoly<MPoly>) -> Result<MPoly> {
    let d = f.degree().unwrap_or(0) as u64;
    let res = sylvester_resultant(r, f, &PolyRing::new(*r).derivative(f))?;
    Ok(if (d * d.saturating_sub(1) / 2) % 2 == 1 { r.neg(&res) } else { res })
}

/// Every enumerated candidate that is not shown reducible must have a
/// nonunit discriminant; the ones that do not are returned as survivors.
pub fn thm41_audit(space: &CandidateSpace, opts: &AuditOptions) -> Result<AuditResult> {
    let start = Instant::now();
    let total = space.cardinality_within(opts.cap)?;
    let workers = opts.workers.max(1) as u64;
    let bounds: Vec<(u64, u64)> = (0..workers).map(|w| (total * w / workers, total * (w + 1) / workers)).collect();
    let parts: Vec<Result<Partial>> = thread::scope(|s| {
        let handles: Vec<_> = bounds.iter().map(|&(a, b)| s.spawn(move || audit_range(space, a, b))).collect();
        handles.into_iter().map(|h| h.join().expect("audit worker panicked")).collect()
    });
    let mut acc = Partial::default();
    for p in parts {
        let p = p?;
        acc.enumerated += p.enumerated;
        acc.reducible += p.reducible;
        acc.reducible_unit += p.reducible_unit;
        acc.flagged += p.flagged;
        acc.survivors.extend(p.survivors);
    }
    Ok(AuditResult {
        space: *space,
        enumerated: acc.enumerated,
        reducible_skipped: acc.reducible,
        flagged: acc.flagged,
        reducible_unit_disc: acc.reducible_unit,
        survivors: acc.survivors,
        runtime_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_integers() {
        let space = CandidateSpace::new(0, 2, 1, 10).unwrap();
        let a = thm41_audit(&space, &AuditOptions::default()).unwrap();
        assert_eq!(a.enumerated, 441);
        assert!(a.survivors.is_empty());
        assert_eq!(a.flagged, 0);
        // X^2 + bX + c with b^2 − 4c = ±1 always factors: b odd, c = (b^2 − 1)/4.
        let direct = (-10i64..=10)
            .flat_map(|b| (-10i64..=10).map(move |c| (b, c)))
            .filter(|&(b, c)| (b * b - 4 * c).abs() == 1)
            .count() as u64;
        assert_eq!(a.reducible_unit_disc, direct);
    }

    #[test]
    fn small_space_and_workers() {
        let space = CandidateSpace::new(1, 2, 1, 1).unwrap();
        let one = thm41_audit(&space, &AuditOptions::default()).unwrap();
        let four = thm41_audit(&space, &AuditOptions { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.enumerated, 81);
        assert!(one.survivors.is_empty());
        assert!(one.reducible_unit_disc >= 1);
        assert_eq!(one.runtime_ms, None);
    }
}
