use std::thread;

use serde_json::{json, Value};

use super::composite::composite_over;
use super::local::{is_unramified_at, is_unramified_everywhere_order};
use super::tower::{relative_absolute_consistent, relative_unramified, LocalTower, RelativeExtension, TowerEmbedding};
use super::{Level, RamificationReport};
use crate::error::{Error, Result};
use crate::orders::{new_extension, FunctionFieldExt, TriangularIdeal};
use crate::poly::text::format_mpoly;
use crate::poly::{bareiss_determinant, Int, Integers, MPoly};

/// One configured instance of a lemma about unramified extensions.
#[derive(Clone, Debug)]
pub enum LemmaInstance {
    /// `K ⊆ L0 = step ⊆ M = L0 · other`: `L0/K` and `M/L0` unramified give `M/K`.
    Transitivity { step: LocalTower, other: LocalTower },
    /// `K ⊆ L0 = sub ⊆ L = L0 · other`: `L/K` unramified gives `L0/K` and `L/L0`.
    Subfield { sub: LocalTower, other: LocalTower },
    /// `L1/K`, `L2/K` unramified give `L1 L2 / K`.
    Composite { left: LocalTower, right: LocalTower },
    /// `L/K` unramified gives `L K′ / K′` for `base: K ⊆ K′`.
    BaseChange { base: LocalTower, ext: LocalTower },
    /// Ramification is unchanged by an affine change of variables
    /// `t ↦ U t + v` with `U ∈ GL_n(Z)`.
    Substitution { ext: FunctionFieldExt, images: Vec<MPoly> },
}

impl LemmaInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            LemmaInstance::Transitivity { .. } => "transitivity",
            LemmaInstance::Subfield { .. } => "subfield",
            LemmaInstance::Composite { .. } => "composite",
            LemmaInstance::BaseChange { .. } => "base-change",
            LemmaInstance::Substitution { .. } => "substitution",
        }
    }

    pub fn subject(&self) -> String {
        match self {
            LemmaInstance::Transitivity { step: a, other: b } | LemmaInstance::Subfield { sub: a, other: b } => {
                format!("{} <= {} <= {} * {}", a.lower().label(), a.label(), a.label(), b.label())
            }
            LemmaInstance::Composite { left, right } => {
                format!("{} * {} over {}", left.label(), right.label(), left.lower().label())
            }
            LemmaInstance::BaseChange { base, ext } => format!("{} along {}", ext.label(), base.label()),
            LemmaInstance::Substitution { ext, images } => format!(
                "{} under t -> ({})",
                ext.label(),
                images.iter().map(format_mpoly).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceStatus {
    Passed,
    /// The hypotheses do not hold, so the instance says nothing.
    Vacuous(String),
    /// Composite degree collapsed; the instance is outside the lemma's setting.
    Skipped(String),
    Misconfigured(String),
    Counterexample(String),
    Failed(String),
}

impl InstanceStatus {
    pub fn name(&self) -> &'static str {
        match self {
            InstanceStatus::Passed => "passed",
            InstanceStatus::Vacuous(_) => "vacuous",
            InstanceStatus::Skipped(_) => "skipped",
            InstanceStatus::Misconfigured(_) => "misconfigured",
            InstanceStatus::Counterexample(_) => "counterexample",
            InstanceStatus::Failed(_) => "failed",
        }
    }

    fn detail(&self) -> Option<&str> {
        match self {
            InstanceStatus::Passed => None,
            InstanceStatus::Vacuous(s)
            | InstanceStatus::Skipped(s)
            | InstanceStatus::Misconfigured(s)
            | InstanceStatus::Counterexample(s)
            | InstanceStatus::Failed(s) => Some(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceOutcome {
    pub kind: &'static str,
    pub subject: String,
    pub status: InstanceStatus,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct HarnessReport {
    pub outcomes: Vec<InstanceOutcome>,
}

impl HarnessReport {
    /// Counterexamples and failed computations; both are hard failures.
    pub fn violations(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.status, InstanceStatus::Counterexample(_) | InstanceStatus::Failed(_)))
            .count()
    }

    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.status == InstanceStatus::Passed).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instances": self.outcomes.iter().map(|o| {
                let mut v = json!({"lemma": o.kind, "subject": o.subject, "status": o.status.name(), "checks": o.checks});
                if let Some(d) = o.status.detail() {
                    v["detail"] = json!(d);
                }
                v
            }).collect::<Vec<_>>(),
            "passed": self.passed(),
            "violations": self.violations(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            out.push_str(&format!("{} {}: {}", o.status.name(), o.kind, o.subject));
            if let Some(d) = o.status.detail() {
                out.push_str(&format!(" ({d})"));
            }
            out.push('\n');
            for c in &o.checks {
                out.push_str(&format!("    {c}\n"));
            }
        }
        out.push_str(&format!("{} passed, {} violations\n", self.passed(), self.violations()));
        out
    }
}

/// Run every instance; instances are independent and run concurrently,
/// outcomes come back in configured order.
pub fn lemma_harness(instances: &[LemmaInstance], seed: u64) -> HarnessReport {
    let outcomes = thread::scope(|s| {
        let handles: Vec<_> = instances.iter().map(|inst| s.spawn(move || run(inst, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("harness instance panicked")).collect()
    });
    HarnessReport { outcomes }
}

fn run(inst: &LemmaInstance, seed: u64) -> InstanceOutcome {
    let mut checks = Vec::new();
    let status = match check(inst, seed, &mut checks) {
        Ok(s) => s,
        Err(e @ (Error::Precondition(_) | Error::VariableCount { .. })) => InstanceStatus::Misconfigured(e.to_string()),
        Err(e) => InstanceStatus::Failed(e.to_string()),
    };
    InstanceOutcome { kind: inst.kind(), subject: inst.subject(), status, checks }
}

fn check(inst: &LemmaInstance, seed: u64, checks: &mut Vec<String>) -> Result<InstanceStatus> {
    use RelativeExtension::{BaseChange, Composite, Simple};
    let base_change = |base: &LocalTower, ext: &LocalTower| BaseChange {
        base: base.clone(),
        ext: Box::new(Simple(ext.clone())),
    };
    match inst {
        LemmaInstance::Transitivity { step, other } | LemmaInstance::Subfield { sub: step, other } => {
            same_base(step, other)?;
            let Some(co) = disjoint_composite(step, other, checks)? else {
                return Ok(InstanceStatus::Skipped("composite is not linearly disjoint".into()));
            };
            let lower = Simple(step.clone());
            let upper = base_change(step, other);
            let whole = Composite(vec![step.clone(), other.clone()]);
            let (hyps, concls) = if matches!(inst, LemmaInstance::Transitivity { .. }) {
                (vec![&lower, &upper], vec![&whole])
            } else {
                (vec![&whole], vec![&lower, &upper])
            };
            for h in hyps {
                if !holds(h, seed, checks, "hypothesis")? {
                    return Ok(InstanceStatus::Vacuous(format!("{} is not unramified", h.describe())));
                }
            }
            for c in concls {
                if !holds(c, seed, checks, "conclusion")? {
                    return Ok(InstanceStatus::Counterexample(format!("{} is ramified", c.describe())));
                }
            }
            consistency(step, seed, checks)
                .and_then(|s| if s == InstanceStatus::Passed { cross_check_composite(&whole, &co.base, seed, checks) } else { Ok(s) })
        }
        LemmaInstance::Composite { left, right } => {
            same_base(left, right)?;
            let Some(co) = disjoint_composite(left, right, checks)? else {
                return Ok(InstanceStatus::Skipped("composite is not linearly disjoint".into()));
            };
            for t in [left, right] {
                let h = Simple(t.clone());
                if !holds(&h, seed, checks, "hypothesis")? {
                    return Ok(InstanceStatus::Vacuous(format!("{} is not unramified", h.describe())));
                }
                let s = consistency(t, seed, checks)?;
                if s != InstanceStatus::Passed {
                    return Ok(s);
                }
            }
            let whole = Composite(vec![left.clone(), right.clone()]);
            if !holds(&whole, seed, checks, "conclusion")? {
                return Ok(InstanceStatus::Counterexample(format!("{} is ramified", whole.describe())));
            }
            cross_check_composite(&whole, &co.base, seed, checks)
        }
        LemmaInstance::BaseChange { base, ext } => {
            same_base(base, ext)?;
            let Some(co) = disjoint_composite(ext, base, checks)? else {
                return Ok(InstanceStatus::Skipped("composite is not linearly disjoint".into()));
            };
            let h = Simple(ext.clone());
            if !holds(&h, seed, checks, "hypothesis")? {
                return Ok(InstanceStatus::Vacuous(format!("{} is not unramified", h.describe())));
            }
            let c = base_change(base, ext);
            if !holds(&c, seed, checks, "conclusion")? {
                return Ok(InstanceStatus::Counterexample(format!("{} is ramified", c.describe())));
            }
            let ideals = c.default_ideals()?;
            let mono = relative_unramified(&Simple(LocalTower::single(co.right.clone())), &ideals, seed)?;
            let mut field_level = 0;
            for r in mono.records.iter().filter(|r| r.level == Level::Field) {
                field_level += 1;
                if !r.verdict.is_unramified() {
                    return Ok(InstanceStatus::Counterexample(format!(
                        "monogenic presentation of the composite is ramified at {}",
                        r.prime.as_deref().unwrap_or(&r.ideal)
                    )));
                }
            }
            checks.push(format!(
                "cross-check through {} over {}: {field_level} field-level primes unramified",
                co.ext.label(),
                base.upper().label()
            ));
            Ok(InstanceStatus::Passed)
        }
        LemmaInstance::Substitution { ext, images } => substitution(ext, images, seed, checks),
    }
}

fn same_base(a: &LocalTower, b: &LocalTower) -> Result<()> {
    if a.lower() != b.lower() {
        return Err(Error::Precondition(format!(
            "{} is over {} but {} is over {}",
            a.label(),
            a.lower().label(),
            b.label(),
            b.lower().label()
        )));
    }
    Ok(())
}

fn disjoint_composite(
    a: &LocalTower,
    b: &LocalTower,
    checks: &mut Vec<String>,
) -> Result<Option<super::composite::CompositeOver>> {
    let label = format!("{}*{}", a.upper().label(), b.upper().label());
    let co = composite_over(&a.presentations()[0], &b.presentations()[0], &label)?;
    checks.push(format!(
        "composite {} of degree {} (lambda = {}{})",
        label,
        co.ext.degree(),
        co.lambda,
        if co.linearly_disjoint { "" } else { ", degree collapsed" }
    ));
    Ok(co.linearly_disjoint.then_some(co))
}

fn everywhere(rel: &RelativeExtension, seed: u64) -> Result<RamificationReport> {
    relative_unramified(rel, &rel.default_ideals()?, seed)
}

fn holds(rel: &RelativeExtension, seed: u64, checks: &mut Vec<String>, role: &str) -> Result<bool> {
    let report = everywhere(rel, seed)?;
    checks.push(format!("{role} {}: {}", rel.describe(), report.global));
    Ok(report.is_unramified_everywhere() || (rel.nvars() > 0 && report.all_unramified()))
}

/// e(𝔓|p) = e(𝔓|𝔭) e(𝔭|p) and f likewise, at primes where a presentation is
/// certified.
fn consistency(t: &LocalTower, seed: u64, checks: &mut Vec<String>) -> Result<InstanceStatus> {
    if t.lower().nvars() != 0 {
        return Ok(InstanceStatus::Passed);
    }
    let mut tested = 0;
    for p in RelativeExtension::Simple(t.clone()).required_primes()? {
        let m = TriangularIdeal::new(p, Vec::new())?;
        for pres in t.presentations() {
            let certified = !m.contains(pres.denominator())
                && pres.lower().is_p_maximal(p) == Some(true)
                && pres.upper().is_p_maximal(p) == Some(true);
            if certified {
                tested += 1;
                if !relative_absolute_consistent(pres, p, seed)? {
                    return Ok(InstanceStatus::Counterexample(format!(
                        "relative and absolute splitting of {} disagree at {p}",
                        pres.upper().label()
                    )));
                }
            }
        }
    }
    checks.push(format!("relative/absolute e,f consistency for {}: {tested} certified (p, presentation) pairs", t.label()));
    Ok(InstanceStatus::Passed)
}

/// Compare tensor-product fibers with the fibers of a monogenic
/// presentation of the composite, at primes where the latter is certified.
fn cross_check_composite(
    whole: &RelativeExtension,
    mono: &TowerEmbedding,
    seed: u64,
    checks: &mut Vec<String>,
) -> Result<InstanceStatus> {
    let ideals = whole.default_ideals()?;
    let tensor = relative_unramified(whole, &ideals, seed)?;
    let direct = relative_unramified(&RelativeExtension::Simple(LocalTower::single(mono.clone())), &ideals, seed)?;
    let mut compared = 0;
    for d in direct.records.iter().filter(|r| r.level == Level::Field) {
        let Some(t) = tensor.records.iter().find(|t| t.ideal == d.ideal && t.prime == d.prime) else {
            continue;
        };
        compared += 1;
        let key = |r: &super::IdealRecord| {
            let mut v: Vec<(usize, usize)> = r.e_list.iter().copied().zip(r.f_list.iter().copied()).collect();
            v.sort_unstable();
            v
        };
        if key(d) != key(t) || !d.verdict.is_unramified() {
            return Ok(InstanceStatus::Counterexample(format!(
                "tensor and monogenic fibers disagree at {}",
                d.prime.as_deref().unwrap_or(&d.ideal)
            )));
        }
    }
    checks.push(format!(
        "cross-check through {}: {compared} primes agree with the tensor-product fibers",
        mono.upper().label()
    ));
    Ok(InstanceStatus::Passed)
}

fn substitution(ext: &FunctionFieldExt, images: &[MPoly], seed: u64, checks: &mut Vec<String>) -> Result<InstanceStatus> {
    let n = ext.nvars();
    if n == 0 {
        return Err(Error::Precondition("substitution needs at least one variable".into()));
    }
    if images.len() != n {
        return Err(Error::VariableCount { expected: n, found: images.len() });
    }
    if let Some(g) = images.iter().find(|g| g.nvars() != n) {
        return Err(Error::VariableCount { expected: n, found: g.nvars() });
    }
    if images.iter().any(|g| g.total_degree().unwrap_or(0) > 1) {
        return Err(Error::Precondition("substitution is not affine".into()));
    }
    let unit = |i: usize| {
        let mut m = vec![0u32; n];
        m[i] = 1;
        m
    };
    let matrix: Vec<Vec<Int>> = images.iter().map(|g| (0..n).map(|j| g.coefficient(&unit(j))).collect()).collect();
    let det = bareiss_determinant(&Integers, &matrix)?;
    if det != Int::from(1) && det != Int::from(-1) {
        return Err(Error::Precondition(format!("linear part has determinant {det}")));
    }
    let r = ext.base_ring();
    let f2 = ext.min_poly().map(|c| r.substitute(c, images));
    let moved = new_extension(n, f2, &format!("{}'", ext.label()))?;
    let d1 = ext.discriminant()?;
    let d2 = moved.discriminant()?;
    if d2 != r.substitute(&d1, images) {
        return Ok(InstanceStatus::Counterexample(format!(
            "discriminant {} does not transform to {}",
            format_mpoly(&d1),
            format_mpoly(&d2)
        )));
    }
    checks.push(format!("disc {} -> {}", format_mpoly(&d1), format_mpoly(&d2)));
    if is_unramified_everywhere_order(ext)? != is_unramified_everywhere_order(&moved)? {
        return Ok(InstanceStatus::Counterexample("unit-discriminant test changed".into()));
    }
    let mut tested = 0;
    for p in [2u64, 3, 5, 7] {
        let width = if (p as u128).pow(n as u32) <= 49 { p } else { 2 };
        for idx in 0..width.pow(n as u32) {
            let mut a = vec![0i64; n];
            let mut rest = idx;
            for slot in a.iter_mut().rev() {
                *slot = (rest % width) as i64;
                rest /= width;
            }
            let point: Vec<Int> = a.iter().map(|&x| Int::from(x)).collect();
            let b: Vec<i64> = images
                .iter()
                .map(|g| {
                    let v = g.eval_int(&point) % Int::from(p);
                    let v: i64 = v.try_into().expect("residue fits");
                    v.rem_euclid(p as i64)
                })
                .collect();
            let ma = TriangularIdeal::at_point(p, &a)?;
            let mb = TriangularIdeal::at_point(p, &b)?;
            let va = is_unramified_at(&moved, &ma, seed)?.verdict;
            let vb = is_unramified_at(ext, &mb, seed)?.verdict;
            tested += 1;
            if va != vb {
                return Ok(InstanceStatus::Counterexample(format!("{ma} gives {va} but its image {mb} gives {vb}")));
            }
        }
    }
    checks.push(format!("{tested} points: verdicts correspond under the substitution"));
    Ok(InstanceStatus::Passed)
}
