use num_traits::{One, Signed, ToPrimitive};

use super::local::default_ideals;
use super::{IdealRecord, Level, RamificationReport, Verdict};
use crate::error::{Error, Result};
use crate::gf::{factor_fq, FieldTower, FqElem};
use crate::orders::{factor_ideal, new_extension, reduce_mod, FunctionFieldExt, TriangularIdeal};
use crate::poly::text::{format_mpoly, format_upoly};
use crate::poly::{prime_factors, Field, FracQuotient, Int, MPoly, PolyRing, Ring, UPoly};

/// An inclusion `K ⊆ L` given by `μ_K = num(μ_L) / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerEmbedding {
    lower: FunctionFieldExt,
    upper: FunctionFieldExt,
    num: UPoly<MPoly>,
    den: MPoly,
}

impl TowerEmbedding {
    /// Checks `f_K(num/den) ≡ 0 mod f_L` exactly over `Q(t)`. The stored
    /// expression is reduced modulo `f_L` and to lowest terms.
    pub fn new(lower: FunctionFieldExt, upper: FunctionFieldExt, num: UPoly<MPoly>, den: MPoly) -> Result<Self> {
        let n = upper.nvars();
        for nv in std::iter::once(lower.nvars()).chain(num.coeffs().iter().map(MPoly::nvars)).chain([den.nvars()]) {
            if nv != n {
                return Err(Error::VariableCount { expected: n, found: nv });
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if upper.degree() % lower.degree() != 0 {
            return Err(Error::Precondition(format!(
                "degree {} of {} is not a multiple of degree {} of {}",
                upper.degree(),
                upper.label(),
                lower.degree(),
                lower.label()
            )));
        }
        let q = FracQuotient::new(upper.base_ring(), upper.min_poly().clone());
        let x = q.from_fraction(&num, &den);
        if !q.is_zero(&q.eval(lower.min_poly(), &x)) {
            return Err(Error::Precondition(format!(
                "{} does not vanish at ({}) / ({}) modulo {}",
                format_upoly(lower.min_poly()),
                format_upoly(&num),
                format_mpoly(&den),
                format_upoly(upper.min_poly())
            )));
        }
        Ok(TowerEmbedding { lower, upper, num: x.num, den: x.den })
    }

    /// `L ⊆ L` with `μ ↦ μ`.
    pub fn identity(ext: &FunctionFieldExt) -> Self {
        let r = ext.base_ring();
        let x = PolyRing::new(r).x();
        TowerEmbedding { lower: ext.clone(), upper: ext.clone(), num: x, den: r.one() }
    }

    /// `Q(t) ⊆ L`, the base presented by `f = X` with `μ = 0`.
    pub fn over_rationals(ext: &FunctionFieldExt) -> Result<Self> {
        let r = ext.base_ring();
        let q = new_extension(r.nvars(), PolyRing::new(r).x(), "Q")?.with_maximal_attested(true);
        Self::new(q, ext.clone(), UPoly::zero(), r.one())
    }

    pub fn lower(&self) -> &FunctionFieldExt {
        &self.lower
    }

    pub fn upper(&self) -> &FunctionFieldExt {
        &self.upper
    }

    pub fn numerator(&self) -> &UPoly<MPoly> {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn relative_degree(&self) -> usize {
        self.upper.degree() / self.lower.degree()
    }

    pub fn expression(&self) -> String {
        let num = format_upoly(&self.num);
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            num
        } else {
            format!("({num})/({})", format_mpoly(&self.den))
        }
    }

    /// Integer primes dividing `disc(f_K)·disc(f_L)·den`, for `n = 0`.
    fn bad_primes(&self) -> Result<Vec<Int>> {
        let r = self.upper.base_ring();
        let prod = r.mul(&r.mul(&self.lower.discriminant()?, &self.upper.discriminant()?), &self.den);
        let c = prod
            .as_constant()
            .ok_or_else(|| Error::Unsupported("exhaustive prime lists need n = 0".into()))?;
        if c == Int::from(0) {
            return Err(Error::Precondition(format!(
                "{} or {} is not squarefree",
                self.lower.label(),
                self.upper.label()
            )));
        }
        Ok(prime_factors(&c))
    }
}

/// A prime `𝔭 = (m, H(μ_K))` of the order `Z[t][μ_K]`, with its residue field.
#[derive(Clone, Debug)]
pub struct ResiduePrime {
    pub ideal: TriangularIdeal,
    /// Irreducible factor of `f_K mod m` over `κ(m)`.
    pub factor: UPoly<FqElem>,
    pub e: usize,
    pub f_deg: usize,
    /// `κ(𝔭) = κ(m)[Y]/(H)`.
    pub field: FieldTower,
    /// Residue class of `μ_K` in `κ(𝔭)`.
    pub generator: FqElem,
    pub label: String,
}

pub fn primes_above(ext: &FunctionFieldExt, m: &TriangularIdeal, seed: u64) -> Result<Vec<ResiduePrime>> {
    let k = m.residue_field();
    factor_ideal(ext, m, seed)?
        .primes
        .into_iter()
        .map(|pa| {
            let field = k.extend(&pa.factor)?;
            let generator = field.generator(field.num_stages() - 1);
            let s = m.to_string();
            let label = format!("{}; {})", &s[..s.len() - 1], k.format_poly(&pa.factor, "Y"));
            Ok(ResiduePrime { ideal: m.clone(), e: pa.e, f_deg: pa.f_deg, factor: pa.factor, field, generator, label })
        })
        .collect()
}

/// `d = gcd(f̄_L, ē − ȳ)` over `κ(𝔭)`: the fiber of `Z[t][μ_L]` over `𝔭`.
/// Fails when the denominator of the embedding lies in `m`.
pub fn relative_fiber(tower: &TowerEmbedding, prime: &ResiduePrime) -> Result<UPoly<FqElem>> {
    let m = &prime.ideal;
    if m.contains(&tower.den) {
        return Err(Error::Precondition(format!("denominator {} lies in {}", format_mpoly(&tower.den), m)));
    }
    let k = &prime.field;
    let kx = k.poly_ring();
    let lift = |f: &UPoly<MPoly>| -> Result<UPoly<FqElem>> { Ok(reduce_mod(f, m)?.map(|c| k.embed(c))) };
    let den = k.embed(&m.reduce_mpoly(&tower.den));
    let inv = k.inv(&den).ok_or(Error::ZeroInverse)?;
    let fl = lift(tower.upper.min_poly())?;
    let e = kx.scale(&lift(&tower.num)?, &inv);
    let diff = kx.sub(&e, &kx.constant(prime.generator.clone()));
    Ok(kx.gcd(&fl, &diff))
}

/// For `n = 0`, the `(e, f)` data of the primes of `L` above `p` computed
/// twice: from the absolute fiber and as relative data composed with the
/// primes of `K`. Meaningful where both orders are `p`-maximal.
pub fn relative_absolute_consistent(tower: &TowerEmbedding, p: u64, seed: u64) -> Result<bool> {
    let m = TriangularIdeal::new(p, Vec::new())?;
    let mut abs: Vec<(usize, usize)> =
        factor_ideal(&tower.upper, &m, seed)?.primes.iter().map(|q| (q.e, q.f_deg)).collect();
    let mut rel = Vec::new();
    for prime in primes_above(&tower.lower, &m, seed)? {
        let d = relative_fiber(tower, &prime)?;
        for (h, e) in factor_fq(&prime.field, &d, seed) {
            rel.push((e * prime.e, h.degree().unwrap() * prime.f_deg));
        }
    }
    abs.sort_unstable();
    rel.sort_unstable();
    Ok(abs == rel)
}

/// One field extension `L/K` with several presentations of `L`, all over
/// the same `K`. At each prime the first presentation that is integral there
/// and whose orders are maximal there is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTower {
    label: String,
    presentations: Vec<TowerEmbedding>,
}

impl LocalTower {
    pub fn new(label: &str, presentations: Vec<TowerEmbedding>) -> Result<Self> {
        let first = presentations
            .first()
            .ok_or_else(|| Error::Precondition(format!("tower {label} has no presentation")))?;
        for t in &presentations[1..] {
            if t.lower != first.lower {
                return Err(Error::Precondition(format!(
                    "tower {label}: presentations over different base fields {} and {}",
                    first.lower.label(),
                    t.lower.label()
                )));
            }
            if t.relative_degree() != first.relative_degree() {
                return Err(Error::Precondition(format!(
                    "tower {label}: presentations of relative degrees {} and {}",
                    first.relative_degree(),
                    t.relative_degree()
                )));
            }
        }
        Ok(LocalTower { label: label.to_string(), presentations })
    }

    pub fn single(tower: TowerEmbedding) -> Self {
        LocalTower { label: tower.upper.label().to_string(), presentations: vec![tower] }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lower(&self) -> &FunctionFieldExt {
        &self.presentations[0].lower
    }

    pub fn upper(&self) -> &FunctionFieldExt {
        &self.presentations[0].upper
    }

    pub fn presentations(&self) -> &[TowerEmbedding] {
        &self.presentations
    }

    pub fn relative_degree(&self) -> usize {
        self.presentations[0].relative_degree()
    }

    pub fn choose(&self, prime: &ResiduePrime) -> Option<(&TowerEmbedding, Level)> {
        let p = prime.ideal.p();
        let integral: Vec<&TowerEmbedding> =
            self.presentations.iter().filter(|t| !prime.ideal.contains(&t.den)).collect();
        let lower_max = self.lower().is_p_maximal(p) == Some(true);
        integral
            .iter()
            .find(|t| lower_max && t.upper.is_p_maximal(p) == Some(true))
            .map(|t| (*t, Level::Field))
            .or_else(|| integral.first().map(|t| (*t, Level::Order)))
    }

    fn fiber(&self, prime: &ResiduePrime) -> Result<Option<(UPoly<FqElem>, Level)>> {
        match self.choose(prime) {
            None => Ok(None),
            Some((t, level)) => Ok(Some((relative_fiber(t, prime)?, level))),
        }
    }

    fn bad_primes(&self) -> Result<Vec<Int>> {
        let mut out = Vec::new();
        for t in &self.presentations {
            out.extend(t.bad_primes()?);
        }
        Ok(out)
    }

    fn has_unit_discriminants(&self) -> Result<bool> {
        let t = &self.presentations[0];
        let unit = |a: &MPoly| a.as_constant().is_some_and(|c| c.abs().is_one());
        Ok(unit(&t.upper.discriminant()?) && unit(&t.lower.discriminant()?) && unit(&t.den))
    }
}

/// The relative extensions a report can be asked about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelativeExtension {
    /// `L/K`.
    Simple(LocalTower),
    /// `L1 ⋯ Lk / K`, fibers taken from `O_{L1} ⊗ ⋯ ⊗ O_{Lk}` over `O_K`.
    Composite(Vec<LocalTower>),
    /// `L K′ / K′` for `base: K ⊆ K′` and `ext` over the same `K`.
    BaseChange { base: LocalTower, ext: Box<RelativeExtension> },
}

impl RelativeExtension {
    fn towers(&self) -> Vec<&LocalTower> {
        match self {
            RelativeExtension::Simple(t) => vec![t],
            RelativeExtension::Composite(ts) => ts.iter().collect(),
            RelativeExtension::BaseChange { base, ext } => {
                let mut v = vec![base];
                v.extend(ext.towers());
                v
            }
        }
    }

    /// The field whose primes are enumerated first.
    pub fn bottom(&self) -> &FunctionFieldExt {
        self.towers()[0].lower()
    }

    pub fn nvars(&self) -> usize {
        self.bottom().nvars()
    }

    pub fn relative_degree(&self) -> usize {
        match self {
            RelativeExtension::Simple(t) => t.relative_degree(),
            RelativeExtension::Composite(ts) => ts.iter().map(LocalTower::relative_degree).product(),
            RelativeExtension::BaseChange { ext, .. } => ext.relative_degree(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RelativeExtension::Simple(t) => format!("{} ({}/{})", t.label, t.upper().label(), t.lower().label()),
            RelativeExtension::Composite(ts) => format!(
                "composite {} over {}",
                ts.iter().map(|t| t.label()).collect::<Vec<_>>().join(" * "),
                ts[0].lower().label()
            ),
            RelativeExtension::BaseChange { base, ext } => {
                format!("base change of {} along {} to {}", ext.describe(), base.label, base.upper().label())
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Precondition(s));
        match self {
            RelativeExtension::Simple(_) => Ok(()),
            RelativeExtension::Composite(ts) => {
                if ts.is_empty() {
                    return bad("empty composite".into());
                }
                if let Some(t) = ts.iter().find(|t| t.lower() != ts[0].lower()) {
                    return bad(format!("{} and {} have different base fields", ts[0].label, t.label));
                }
                Ok(())
            }
            RelativeExtension::BaseChange { base, ext } => {
                if matches!(**ext, RelativeExtension::BaseChange { .. }) {
                    return bad("nested base change".into());
                }
                ext.validate()?;
                if ext.bottom() != base.lower() {
                    return bad(format!(
                        "{} is over {} but {} is over {}",
                        ext.describe(),
                        ext.bottom().label(),
                        base.label,
                        base.lower().label()
                    ));
                }
                Ok(())
            }
        }
    }

    /// For `n = 0`: every integer prime outside this list is unramified by
    /// the first presentation of each tower.
    pub fn required_primes(&self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for t in self.towers() {
            for p in t.bad_primes()? {
                out.push(p.to_u64().ok_or_else(|| Error::Unsupported(format!("prime {p} exceeds 64 bits")))?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn default_ideals(&self) -> Result<Vec<TriangularIdeal>> {
        if self.nvars() == 0 {
            self.required_primes()?.into_iter().map(|p| TriangularIdeal::new(p, Vec::new())).collect()
        } else {
            default_ideals(self.towers().last().unwrap().upper())
        }
    }

    fn records_at(&self, m: &TriangularIdeal, seed: u64) -> Result<Vec<IdealRecord>> {
        let mut out = Vec::new();
        match self {
            RelativeExtension::Simple(_) | RelativeExtension::Composite(_) => {
                for prime in primes_above(self.bottom(), m, seed)? {
                    let comps = match fiber_polys(&self.towers(), &prime)? {
                        None => None,
                        Some((polys, level)) => Some((tensor_components(&polys, &prime.field, seed)?, level)),
                    };
                    out.push(record(m, prime.label.clone(), comps));
                }
            }
            RelativeExtension::BaseChange { base, ext } => {
                for prime in primes_above(base.lower(), m, seed)? {
                    let Some((bt, blevel)) = base.choose(&prime) else {
                        out.push(record(m, prime.label.clone(), None));
                        continue;
                    };
                    let dbase = relative_fiber(bt, &prime)?;
                    let ext_fiber = fiber_polys(&ext.towers(), &prime)?;
                    for (h, _) in factor_fq(&prime.field, &dbase, seed) {
                        let over = prime.field.extend(&h)?;
                        let label = format!("{} / {}", prime.label, prime.field.format_poly(&h, "Z"));
                        let comps = match &ext_fiber {
                            None => None,
                            Some((polys, level)) => {
                                Some((tensor_components(polys, &over, seed)?, (*level).min(blevel)))
                            }
                        };
                        out.push(record(m, label, comps));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn fiber_polys(towers: &[&LocalTower], prime: &ResiduePrime) -> Result<Option<(Vec<UPoly<FqElem>>, Level)>> {
    let mut polys = Vec::with_capacity(towers.len());
    let mut level = Level::Field;
    for t in towers {
        match t.fiber(prime)? {
            None => return Ok(None),
            Some((d, lv)) => {
                polys.push(d);
                level = level.min(lv);
            }
        }
    }
    Ok(Some((polys, level)))
}

/// Decompose `over[X1]/(d1) ⊗ ⋯ ⊗ over[Xk]/(dk)` into local components,
/// returned as `(multiplicity, residue degree over `over`)`. The `d_i` live
/// over a prefix of `over`.
fn tensor_components(polys: &[UPoly<FqElem>], over: &FieldTower, seed: u64) -> Result<Vec<(usize, usize)>> {
    let mut cur = vec![(over.clone(), 1usize)];
    for d in polys {
        let mut next = Vec::new();
        for (field, e) in &cur {
            let dd = d.map(|c| field.embed(c));
            for (h, e2) in factor_fq(field, &dd, seed) {
                next.push((field.extend(&h)?, e * e2));
            }
        }
        cur = next;
    }
    let base = over.dimension();
    Ok(cur.iter().map(|(f, e)| (*e, f.dimension() / base)).collect())
}

fn record(m: &TriangularIdeal, prime: String, comps: Option<(Vec<(usize, usize)>, Level)>) -> IdealRecord {
    let Some((comps, level)) = comps else {
        return IdealRecord {
            ideal: m.to_string(),
            prime: Some(prime),
            verdict: Verdict::Indeterminate { e: None },
            e_list: Vec::new(),
            f_list: Vec::new(),
            level: Level::Order,
        };
    };
    let e = comps.iter().map(|c| c.0).max().unwrap_or(1);
    let verdict = match (e, level) {
        (1, _) => Verdict::Unramified,
        (e, Level::Field) => Verdict::Ramified { e },
        (e, Level::Order) => Verdict::Indeterminate { e: Some(e) },
    };
    IdealRecord {
        ideal: m.to_string(),
        prime: Some(prime),
        verdict,
        e_list: comps.iter().map(|c| c.0).collect(),
        f_list: comps.iter().map(|c| c.1).collect(),
        level,
    }
}

/// Relative verdicts at every prime of the base above every listed ideal.
pub fn relative_unramified(
    rel: &RelativeExtension,
    ideals: &[TriangularIdeal],
    seed: u64,
) -> Result<RamificationReport> {
    rel.validate()?;
    if ideals.is_empty() {
        return Err(Error::Precondition("no ideals to test".into()));
    }
    let mut records = Vec::new();
    for m in ideals {
        records.extend(rel.records_at(m, seed)?);
    }
    let all_field = records.iter().all(|r| r.level == Level::Field);
    let exhaustive = if rel.nvars() == 0 {
        let required = rel.required_primes()?;
        let covered = required.iter().all(|p| ideals.iter().any(|m| m.p() == *p));
        (covered && all_field).then(|| "all primes dividing the discriminants tested at field level".to_string())
    } else {
        let mut unit = true;
        for t in rel.towers() {
            unit &= t.has_unit_discriminants()?;
        }
        unit.then(|| "unit discriminants".to_string())
    };
    Ok(RamificationReport::assemble(rel.describe(), records, exhaustive, rel.nvars() > 0))
}
