use serde_json::{json, Value};

use super::AuditResult;
use crate::error::{Error, Result};
use crate::poly::text::{format_mpoly, format_upoly};

pub const CAVEAT: &str = "The audit tests the order-level criterion (unit discriminant) on a finite space \
of monogenic candidates; it is sound evidence, not a proof.";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Computed,
    Cited,
    Conclusion,
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Computed => "computed",
            StepKind::Cited => "cited",
            StepKind::Conclusion => "conclusion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    pub text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi1Status {
    Trivial,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Report {
    pub status: Pi1Status,
    pub scheme: String,
    pub bounds: String,
    pub steps: Vec<Step>,
    pub caveat: &'static str,
}

fn variables(n: usize) -> String {
    (1..=n).map(|i| format!("t{i}")).collect::<Vec<_>>().join(",")
}

/// Chain `π1(Spec Z[t]) ≅ Gal(k^un/k) ≅ Gal(k^au/k) ≅ Gal(k/k) = 0` for
/// `k = Q(t1..tn)`, with the audit as the computed link.
pub fn pi1_report(audit: &AuditResult) -> Result<Pi1Report> {
    if audit.enumerated == 0 {
        return Err(Error::Precondition("the audited space is empty, so there is no evidence to report".into()));
    }
    let n = audit.space.n;
    let vars = variables(n);
    let scheme = if n == 0 { "Spec Z".to_string() } else { format!("Spec Z[{vars}]") };
    let k = if n == 0 { "Q".to_string() } else { format!("Q({vars})") };
    let bounds = audit.space.describe();
    let computed = Step {
        kind: StepKind::Computed,
        text: format!(
            "audit over {bounds}: {} candidates enumerated, {} reducible skipped, {} flagged undecided, {} unit-discriminant survivors",
            audit.enumerated,
            audit.reducible_skipped,
            audit.flagged,
            audit.survivors.len()
        ),
    };
    if !audit.survivors.is_empty() {
        let mut steps = vec![computed];
        for s in &audit.survivors {
            steps.push(Step {
                kind: StepKind::Computed,
                text: format!(
                    "survivor {} with disc {} (Sylvester: {}){}",
                    format_upoly(&s.f),
                    format_mpoly(&s.disc),
                    format_mpoly(&s.disc_sylvester),
                    if s.flagged { ", irreducibility undecided" } else { "" }
                ),
            });
        }
        steps.push(Step {
            kind: StepKind::Conclusion,
            text: "counterexample to audit expectations: no triviality claim is made".into(),
        });
        return Ok(Pi1Report { status: Pi1Status::Counterexample, scheme, bounds, steps, caveat: CAVEAT });
    }
    let steps = vec![
        Step {
            kind: StepKind::Cited,
            text: format!(
                "pi1_et({scheme}) = Gal({k}^un/{k}): finite etale covers of the normal scheme {scheme} are the normalizations in finite unramified extensions of {k}, canonically"
            ),
        },
        Step {
            kind: StepKind::Cited,
            text: format!(
                "Gal({k}^un/{k}) = Gal({k}^au/{k}): the maximal unramified extension equals the maximal arithmetically unramified one, both direct limits of finite subextensions"
            ),
        },
        computed,
        Step {
            kind: StepKind::Computed,
            text: format!(
                "hence no monogenic extension {k}[X]/(f) with f in the audited space is unramified over Z[{vars}] at order level"
            ),
        },
        Step {
            kind: StepKind::Cited,
            text: format!("{k}^au = {k}: {k} has no nontrivial arithmetically unramified extension"),
        },
        Step { kind: StepKind::Conclusion, text: format!("pi1_et({scheme}) = Gal({k}/{k}) = {{0}}") },
    ];
    Ok(Pi1Report { status: Pi1Status::Trivial, scheme, bounds, steps, caveat: CAVEAT })
}

impl Pi1Report {
    pub fn render(&self) -> String {
        let mut out = format!("pi1 report for {} (bounds: {})\n", self.scheme, self.bounds);
        for s in &self.steps {
            out.push_str(&format!("  [{}] {}\n", s.kind.name(), s.text));
        }
        out.push_str(self.caveat);
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scheme": self.scheme,
            "bounds": self.bounds,
            "status": match self.status { Pi1Status::Trivial => "trivial", Pi1Status::Counterexample => "counterexample" },
            "steps": self.steps.iter().map(|s| json!({"kind": s.kind.name(), "text": s.text})).collect::<Vec<_>>(),
            "caveat": self.caveat,
        })
    }
}
