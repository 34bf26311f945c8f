//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramify_core::audits::{pi1_report, thm41_audit, AuditOptions, CandidateSpace, Pi1Status};
use ramify_core::gf::{factor_fq, FieldTower, FqElem};
use ramify_core::orders::{dedekind_maximality_test, factor_ideal, new_extension, reduce_mod, Dedekind, TriangularIdeal};
use ramify_core::poly::text::{format_mpoly, parse_upoly};
use ramify_core::poly::{discriminant, prime_factors, Int, MPoly, MPolyRing, Ring, UPoly};
use ramify_core::ramification::{
    lemma_harness, relative_unramified, InstanceStatus, LemmaInstance, Level, RelativeExtension, Verdict,
};
use ramify_core::spec::{parse_field_spec, FieldSpecFile};

const BIN: &str = env!("CARGO_BIN_EXE_ramify");
const GOLDEN_PI1: &str = include_str!("golden/pi1_report.txt");

type Check = Result<String, String>;

fn catalog() -> FieldSpecFile {
    parse_field_spec(include_str!("../src/catalog.spec")).expect("catalog parses")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn gaussian_splitting() -> Check {
    let start = Instant::now();
    let qi = new_extension(0, parse_upoly("X^2 + 1", 0).unwrap(), "Qi").unwrap();
    let ps = primes_below(200);
    for &p in &ps {
        let fac = factor_ideal(&qi, &TriangularIdeal::new(p, Vec::new()).unwrap(), 0).map_err(|e| e.to_string())?;
        let (es, fs) = (fac.e_list(), fac.f_list());
        let expected: (Vec<usize>, Vec<usize>) = match p % 4 {
            _ if p == 2 => (vec![2], vec![1]),
            1 => (vec![1, 1], vec![1, 1]),
            _ => (vec![1], vec![2]),
        };
        ensure((es.clone(), fs.clone()) == expected, || format!("p={p}: e={es:?} f={fs:?}, expected {expected:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{} primes below 200", ps.len()))
}

fn dedekind_criterion() -> Check {
    let ext = |f: &str| new_extension(0, parse_upoly(f, 0).unwrap(), f).unwrap();
    let k2 = FieldTower::prime(2).unwrap();
    match dedekind_maximality_test(&ext("X^2 - 5"), 2).map_err(|e| e.to_string())? {
        Dedekind::NotMaximal(w) => {
            let s = k2.format_poly(&w, "X");
            ensure(s == "X + 1", || format!("X^2 - 5 at 2: witness {s}, expected X + 1"))?
        }
        Dedekind::Maximal => return Err("X^2 - 5 reported 2-maximal".into()),
    }
    ensure(dedekind_maximality_test(&ext("X^2 + 1"), 2) == Ok(Dedekind::Maximal), || "X^2 + 1 not 2-maximal".into())?;
    let cubic = ext("X^3 - X - 1");
    let d = cubic.discriminant().map_err(|e| e.to_string())?;
    ensure(format_mpoly(&d) == "-23", || format!("disc(X^3 - X - 1) = {}", format_mpoly(&d)))?;
    ensure(dedekind_maximality_test(&cubic, 23) == Ok(Dedekind::Maximal), || "X^3 - X - 1 not 23-maximal".into())?;
    Ok("X^2 - 5 not 2-maximal (witness X + 1); X^2 + 1 2-maximal; X^3 - X - 1 23-maximal".into())
}

fn hilbert_class_field() -> Check {
    let start = Instant::now();
    let spec = catalog();
    let t = spec.tower("hcf").map_err(|e| e.to_string())?;
    let r = MPolyRing::new(0);
    let dk = t.lower().discriminant().map_err(|e| e.to_string())?;
    let dl = t.upper().discriminant().map_err(|e| e.to_string())?;
    let n = r.mul(&dk, &dl).as_constant().unwrap();
    let required: Vec<u64> = prime_factors(&n).iter().map(|p| u64::try_from(p).unwrap()).collect();
    let ideals: Vec<TriangularIdeal> = required.iter().map(|&p| TriangularIdeal::new(p, Vec::new()).unwrap()).collect();
    let rel = RelativeExtension::Simple(t);
    let report = relative_unramified(&rel, &ideals, 0).map_err(|e| e.to_string())?;
    for p in &required {
        let ideal = format!("({p})");
        let recs: Vec<_> = report.records.iter().filter(|x| x.ideal == ideal).collect();
        ensure(!recs.is_empty(), || format!("no record above {ideal}"))?;
        for x in recs {
            ensure(x.verdict == Verdict::Unramified && x.level == Level::Field, || {
                format!("{} above {ideal}: {} at {} level", x.prime.clone().unwrap_or_default(), x.verdict, x.level)
            })?;
        }
    }
    ensure(report.is_unramified_everywhere(), || report.render())?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!(
        "{} primes of the base above p in {:?} (disc {}), all unramified at field level",
        report.records.len(),
        required,
        n
    ))
}

fn genus_field() -> Check {
    let start = Instant::now();
    let spec = catalog();
    let names = ["K30(sqrt2)", "K30(sqrt-3)", "K30(sqrt5)"];
    let towers: Vec<_> = names.iter().map(|n| spec.tower(n)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut verdicts = 0;
    for t in &towers {
        let rel = RelativeExtension::Simple(t.clone());
        let r = relative_unramified(&rel, &rel.default_ideals().map_err(|e| e.to_string())?, 0)
            .map_err(|e| e.to_string())?;
        ensure(r.is_unramified_everywhere(), || r.render())?;
        verdicts += r.records.len();
    }
    let mut instances = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let rel = RelativeExtension::Composite(vec![towers[i].clone(), towers[j].clone()]);
            let r = relative_unramified(&rel, &rel.default_ideals().map_err(|e| e.to_string())?, 0)
                .map_err(|e| e.to_string())?;
            ensure(r.is_unramified_everywhere(), || r.render())?;
            verdicts += r.records.len();
            instances.push(LemmaInstance::Composite { left: towers[i].clone(), right: towers[j].clone() });
        }
    }
    instances.push(LemmaInstance::Transitivity { step: towers[0].clone(), other: towers[1].clone() });
    let report = lemma_harness(&instances, 0);
    ensure(report.violations() == 0, || report.render())?;
    ensure(report.outcomes.iter().all(|o| o.status == InstanceStatus::Passed), || report.render())?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "3 towers and 3 composites unramified ({verdicts} field-level records); {} instances passed, 0 counterexamples",
        report.passed()
    ))
}

fn base_change() -> Check {
    let spec = catalog();
    let base = spec.tower("K5(sqrt2)").map_err(|e| e.to_string())?;
    let ext = spec.tower("hcf").map_err(|e| e.to_string())?;
    let report = lemma_harness(&[LemmaInstance::BaseChange { base, ext }], 0);
    let o = &report.outcomes[0];
    ensure(o.status == InstanceStatus::Passed, || report.render())?;
    Ok(format!("{}: {}", o.subject, o.status.name()))
}

fn audit_spaces() -> Check {
    let mut out = Vec::new();
    for (degx, tdeg, height, expected) in [(2usize, 2u32, 3u32, 7u64.pow(6)), (3, 1, 2, 5u64.pow(6))] {
        let space = CandidateSpace::new(1, degx, tdeg, height).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let a = thm41_audit(&space, &AuditOptions { workers: 2, ..Default::default() }).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        within(elapsed, Duration::from_secs(60))?;
        let again = thm41_audit(&space, &AuditOptions::default()).map_err(|e| e.to_string())?;
        ensure(a.enumerated == expected, || format!("{}: enumerated {}, expected {expected}", space.describe(), a.enumerated))?;
        ensure(a == again, || format!("{}: results differ between runs", space.describe()))?;
        ensure(a.survivors.is_empty(), || a.render())?;
        out.push(format!("[{}] {} enumerated, 0 survivors, {:.1?}", space.describe(), a.enumerated, elapsed));
    }
    Ok(out.join("; "))
}

fn pi1_golden() -> Check {
    let out = Command::new(BIN)
        .args(["pi1-report", "--n", "1", "--degx", "2", "--tdeg", "2", "--height", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    ensure(text == GOLDEN_PI1, || format!("differs from golden file:\n{text}"))?;
    let space = CandidateSpace::new(1, 2, 1, 1).unwrap();
    let r = pi1_report(&thm41_audit(&space, &AuditOptions::default()).unwrap()).map_err(|e| e.to_string())?;
    ensure(r.status == Pi1Status::Trivial, || "small space not trivial".into())?;
    for label in ["[computed]", "[cited]", "[conclusion]"] {
        ensure(text.contains(label), || format!("missing {label} step"))?;
    }
    let cited = text.lines().filter(|l| l.contains("[cited]")).count();
    ensure(cited == 3, || format!("{cited} cited steps"))?;
    ensure(text.contains("= {0}"), || "no trivial-group conclusion".into())?;
    Ok(format!("golden match, {} steps ({cited} cited)", text.lines().filter(|l| l.starts_with("  [")).count()))
}

fn field(q: u32) -> FieldTower {
    match q {
        4 => FieldTower::build(2, &[parse_upoly("X^2 + X + 1", 0).unwrap()]).unwrap(),
        9 => FieldTower::build(3, &[parse_upoly("X^2 + 1", 0).unwrap()]).unwrap(),
        p => FieldTower::prime(p as u64).unwrap(),
    }
}

fn finite_field_oracle() -> Check {
    let start = Instant::now();
    let mut checked = 0usize;
    for q in [2u32, 3, 4, 5, 9] {
        let k = field(q);
        let kx = k.poly_ring();
        let elems: Vec<FqElem> = k.elements().collect();
        let mut monics: Vec<Vec<UPoly<FqElem>>> = vec![vec![UPoly::constant(k.one())]];
        for d in 1..=4 {
            let next = monics[d - 1]
                .iter()
                .flat_map(|g| {
                    elems.iter().map(move |c| {
                        let mut cs = vec![c.clone()];
                        cs.extend(g.coeffs().iter().cloned());
                        UPoly::from_coeffs(cs)
                    })
                })
                .collect();
            monics.push(next);
        }
        let no_divisor = |h: &UPoly<FqElem>| {
            let d = h.degree().unwrap();
            (1..=d / 2).all(|e| monics[e].iter().all(|g| !kx.div_rem(h, g).unwrap().1.is_zero()))
        };
        for f in monics[1..].iter().flatten() {
            let fs = factor_fq(&k, f, 1);
            let mut prod = kx.one();
            for (h, e) in &fs {
                ensure(no_divisor(h), || format!("q={q}: factor {} of {} is reducible", k.format_poly(h, "X"), k.format_poly(f, "X")))?;
                for _ in 0..*e {
                    prod = kx.mul(&prod, h);
                }
            }
            ensure(&prod == f, || format!("q={q}: factors of {} multiply back wrong", k.format_poly(f, "X")))?;
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{checked} monic polynomials, 100% agreement"))
}

fn random_mpoly(rng: &mut ChaCha8Rng, n: usize) -> MPoly {
    let terms = (0..rng.gen_range(0..4))
        .map(|_| ((0..n).map(|_| rng.gen_range(0..3)).collect(), Int::from(rng.gen_range(-6i64..=6))))
        .collect::<Vec<_>>();
    MPoly::from_terms(n, terms)
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize) -> TriangularIdeal {
    let primes = [2u64, 3, 5, 7, 11, 13];
    loop {
        let p = primes[rng.gen_range(0..primes.len())];
        let r = MPolyRing::new(n);
        let mut chain: Vec<MPoly> =
            (0..n).map(|i| r.sub(&r.var(i), &r.from_i64(rng.gen_range(0..p as i64)))).collect();
        if n > 0 && rng.gen_bool(0.3) {
            let t = r.var(n - 1);
            chain[n - 1] = r.add(&r.mul(&t, &t), &r.from_i64(rng.gen_range(0..p as i64)));
        }
        if let Ok(m) = TriangularIdeal::new(p, chain) {
            return m;
        }
    }
}

fn duality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut pairs, mut in_ideal) = (0, 0);
    for _ in 0..300 {
        let n = rng.gen_range(0..=2);
        let d = rng.gen_range(1..=4);
        let r = MPolyRing::new(n);
        let mut cs: Vec<MPoly> = (0..d).map(|_| random_mpoly(&mut rng, n)).collect();
        cs.push(r.one());
        let mut f = UPoly::from_coeffs(cs);
        if d >= 2 && rng.gen_bool(0.3) {
            // force a square factor modulo everything: (X - a)^2 * g
            let a = random_mpoly(&mut rng, n);
            let lin = UPoly::from_coeffs(vec![r.neg(&a), r.one()]);
            let px = ramify_core::poly::PolyRing::new(r);
            let g = UPoly::from_coeffs(f.coeffs()[2..].to_vec());
            f = px.mul(&px.mul(&lin, &lin), &g);
        }
        let m = random_ideal(&mut rng, n);
        let disc = discriminant(&r, &f).map_err(|e| e.to_string())?;
        let fbar = reduce_mod(&f, &m).map_err(|e| e.to_string())?;
        let squarefree = m.residue_field().poly_ring().is_squarefree(&fbar);
        let member = m.contains(&disc);
        ensure(member != squarefree, || format!("disagreement at {m}: disc {} ", format_mpoly(&disc)))?;
        pairs += 1;
        in_ideal += member as usize;
    }
    Ok(format!("{pairs} pairs, {in_ideal} with disc in m, 100% agreement"))
}

fn determinism() -> Check {
    let invocations: Vec<Vec<&str>> = vec![
        vec!["factor-ideal", "--ext", "Q-zeta8", "--ideal", "(17)", "--seed", "11"],
        vec!["unramified", "--ext", "Qt-sqrt-t", "--seed", "11"],
        vec!["relative", "--tower", "K30(sqrt2)", "--tower", "K30(sqrt5)", "--seed", "11"],
        vec!["composite", "--ext", "Qi", "--ext", "Q-sqrt5"],
        vec!["lemmas", "--seed", "11"],
        vec!["audit-thm41", "--n", "1", "--degx", "2", "--tdeg", "1", "--height", "2", "--workers", "3"],
    ];
    for args in &invocations {
        let run = || {
            Command::new(BIN).args(args).arg("--json").output().map(|o| (o.status.code(), o.stdout)).map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.0 == Some(0), || format!("{args:?}: exit {:?}", a.0))?;
        ensure(a == b, || format!("{args:?}: outputs differ"))?;
        ensure(String::from_utf8_lossy(&a.1).contains("\"schema\": 1"), || format!("{args:?}: no schema field"))?;
    }
    Ok(format!("{} invocations byte-identical across runs", invocations.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Gaussian splitting law", gaussian_splitting),
        ("Dedekind criterion", dedekind_criterion),
        ("Hilbert class field of Q(sqrt -5)", hilbert_class_field),
        ("genus field of Q(sqrt -30)", genus_field),
        ("base change", base_change),
        ("unit-discriminant audit", audit_spaces),
        ("pi1 report golden file", pi1_golden),
        ("finite-field factorization oracle", finite_field_oracle),
        ("discriminant/squarefree duality", duality),
        ("JSON determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
