//! The unramified predicate for monogenic orders and relative towers,
//! composite fields, and executable checks of the standard lemmas.

mod composite;
mod harness;
mod local;
mod tower;

use std::fmt;

use serde_json::{json, Value};

pub use composite::{composite_extension, composite_over, lambda_sequence, Composite, CompositeOver};
pub use harness::{lemma_harness, HarnessReport, InstanceOutcome, InstanceStatus, LemmaInstance};
pub use local::{
    absolute_report, default_ideals, is_unramified_at, is_unramified_everywhere_order, ramified_locus,
    LocalVerdict, RamifiedLocus,
};
pub use tower::{
    primes_above, relative_absolute_consistent, relative_fiber, relative_unramified, LocalTower,
    RelativeExtension, ResiduePrime, TowerEmbedding,
};

/// Whether a statement concerns the monogenic order only or also the
/// integral closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Order,
    Field,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Order => "order",
            Level::Field => "field",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unramified,
    /// Some fiber factor has multiplicity `e ≥ 2`.
    Ramified { e: usize },
    /// The order is ramified but maximality is unknown, or no integral
    /// presentation is available at this prime.
    Indeterminate { e: Option<usize> },
}

impl Verdict {
    pub fn is_unramified(&self) -> bool {
        matches!(self, Verdict::Unramified)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Unramified => "unramified",
            Verdict::Ramified { .. } => "ramified",
            Verdict::Indeterminate { .. } => "indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unramified => write!(f, "unramified"),
            Verdict::Ramified { e } => write!(f, "ramified, e={e}"),
            Verdict::Indeterminate { e: Some(e) } => write!(f, "indeterminate (maximality unknown), e={e}"),
            Verdict::Indeterminate { e: None } => write!(f, "indeterminate (no integral presentation)"),
        }
    }
}

/// One prime above one tested ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealRecord {
    pub ideal: String,
    /// The prime of the base order, for relative reports.
    pub prime: Option<String>,
    pub verdict: Verdict,
    pub e_list: Vec<usize>,
    pub f_list: Vec<usize>,
    pub level: Level,
}

impl IdealRecord {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "ideal": self.ideal,
            "verdict": self.verdict.name(),
            "e_list": self.e_list,
            "f_list": self.f_list,
            "certificate_level": self.level.to_string(),
        });
        if let Some(p) = &self.prime {
            v["prime"] = json!(p);
        }
        if let Verdict::Ramified { e } | Verdict::Indeterminate { e: Some(e) } = self.verdict {
            v["e"] = json!(e);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlobalVerdict {
    /// Backed by an exhaustive argument, stated in the payload.
    UnramifiedEverywhere(String),
    /// Every tested prime is unramified but the list is not exhaustive.
    UnramifiedAtTested { sampled: bool },
    Ramified,
    Indeterminate,
}

impl fmt::Display for GlobalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalVerdict::UnramifiedEverywhere(why) => write!(f, "unramified everywhere ({why})"),
            GlobalVerdict::UnramifiedAtTested { sampled: true } => write!(f, "unramified at every sampled ideal"),
            GlobalVerdict::UnramifiedAtTested { sampled: false } => write!(f, "unramified at every tested ideal"),
            GlobalVerdict::Ramified => write!(f, "ramified"),
            GlobalVerdict::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub subject: String,
    pub records: Vec<IdealRecord>,
    pub global: GlobalVerdict,
    pub level: Level,
}

impl RamificationReport {
    fn assemble(subject: String, records: Vec<IdealRecord>, exhaustive: Option<String>, sampled: bool) -> Self {
        let level = records.iter().map(|r| r.level).min().unwrap_or(Level::Field);
        let global = if records.iter().any(|r| matches!(r.verdict, Verdict::Ramified { .. })) {
            GlobalVerdict::Ramified
        } else if records.iter().any(|r| matches!(r.verdict, Verdict::Indeterminate { .. })) {
            GlobalVerdict::Indeterminate
        } else if let Some(why) = exhaustive {
            GlobalVerdict::UnramifiedEverywhere(why)
        } else {
            GlobalVerdict::UnramifiedAtTested { sampled }
        };
        RamificationReport { subject, records, global, level }
    }

    pub fn is_unramified_everywhere(&self) -> bool {
        matches!(self.global, GlobalVerdict::UnramifiedEverywhere(_))
    }

    pub fn all_unramified(&self) -> bool {
        self.records.iter().all(|r| r.verdict.is_unramified())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "records": self.records.iter().map(IdealRecord::to_json).collect::<Vec<_>>(),
            "global": self.global.to_string(),
            "certificate_level": self.level.to_string(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.subject);
        for r in &self.records {
            let at = match &r.prime {
                Some(p) => format!("{} above {}", p, r.ideal),
                None => r.ideal.clone(),
            };
            out.push_str(&format!(
                "  {at}: {} [e={:?} f={:?}; {} level]\n",
                r.verdict, r.e_list, r.f_list, r.level
            ));
        }
        out.push_str(&format!("  global: {} ({} level)\n", self.global, self.level));
        out
    }
}
