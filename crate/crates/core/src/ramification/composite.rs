use super::tower::TowerEmbedding;
use crate::error::{Error, Result};
use crate::orders::{new_extension, FunctionFieldExt};
use crate::poly::text::format_upoly;
use crate::poly::{discriminant, resultant, Field, FracQuotient, MPoly, MPolyRing, PolyRing, QElem, Ring, UPoly};

const MAX_ATTEMPTS: usize = 32;

/// `1, −1, 2, −2, …`, at most 32 terms.
pub fn lambda_sequence() -> impl Iterator<Item = i64> {
    (1..).flat_map(|k| [k, -k]).take(MAX_ATTEMPTS)
}

/// `L1 L2 = Q(t)(γ)` with `γ = μ1 + λ μ2`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub ext: FunctionFieldExt,
    pub lambda: i64,
    pub left: TowerEmbedding,
    pub right: TowerEmbedding,
    /// `[L1 L2 : Q(t)] = [L1 : Q(t)] [L2 : Q(t)]`.
    pub linearly_disjoint: bool,
    /// Values of `λ` tried, in order; the last one was accepted.
    pub attempts: Vec<i64>,
    /// Both inputs carry a modular irreducibility certificate.
    pub certified: bool,
}

/// `L1 L2` over a common base `K`, with the three embeddings into it.
#[derive(Clone, Debug)]
pub struct CompositeOver {
    pub ext: FunctionFieldExt,
    pub lambda: i64,
    pub base: TowerEmbedding,
    pub left: TowerEmbedding,
    pub right: TowerEmbedding,
    pub linearly_disjoint: bool,
    pub attempts: Vec<i64>,
    pub certified: bool,
}

struct Shift {
    n: usize,
    r1: MPolyRing,
}

impl Shift {
    fn new(n: usize) -> Self {
        Shift { n, r1: MPolyRing::new(n + 1) }
    }

    /// `a(Y)` over `Z[t, X]`.
    fn lift(&self, a: &UPoly<MPoly>) -> UPoly<MPoly> {
        a.map(|c| c.extend_vars(1))
    }

    /// `a(X − λY)` as a polynomial in `Y` over `Z[t, X]`.
    fn shifted(&self, a: &UPoly<MPoly>, lambda: i64) -> UPoly<MPoly> {
        let g = UPoly::from_coeffs(vec![self.r1.var(self.n), self.r1.from_i64(-lambda)]);
        PolyRing::new(self.r1).compose(&self.lift(a), &g)
    }

    fn to_x(&self, a: &MPoly) -> UPoly<MPoly> {
        a.to_univariate(self.n).map(|c| c.truncate_vars(self.n).expect("X was the only extra variable"))
    }

    fn from_x(&self, a: &UPoly<MPoly>) -> MPoly {
        MPoly::from_univariate(&self.lift(a), self.n, self.n + 1)
    }

    fn resultant_y(&self, a: &UPoly<MPoly>, b: &UPoly<MPoly>) -> Result<UPoly<MPoly>> {
        Ok(self.to_x(&resultant(&self.r1, a, b)?))
    }
}

fn is_squarefree(n: usize, f: &UPoly<MPoly>) -> Result<bool> {
    Ok(!discriminant(&MPolyRing::new(n), f)?.is_zero())
}

/// Monic gcd over `Q(t)[X]/(G)`, or `None` when a zero divisor shows up.
fn try_gcd(q: &FracQuotient, a: &UPoly<QElem>, b: &UPoly<QElem>) -> Option<UPoly<QElem>> {
    let qx = PolyRing::new(q.clone());
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = qx.div_rem(&a, &b)?;
        a = std::mem::replace(&mut b, r);
    }
    let inv = q.inv(a.lc()?)?;
    Some(qx.scale(&a, &inv))
}

/// The common root `μ2` of the given polynomials in `Y` over `Q(t)(γ)`, if
/// their gcd is linear.
fn common_root(q: &FracQuotient, polys: &[UPoly<QElem>]) -> Option<QElem> {
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        g = try_gcd(q, &g, p)?;
    }
    (g.degree() == Some(1)).then(|| q.neg(g.coeff(0).unwrap()))
}

fn check_inputs(a: &FunctionFieldExt, b: &FunctionFieldExt) -> Result<()> {
    if a.nvars() != b.nvars() {
        return Err(Error::VariableCount { expected: a.nvars(), found: b.nvars() });
    }
    Ok(())
}

fn certified(a: &FunctionFieldExt, b: &FunctionFieldExt) -> bool {
    [a, b].iter().all(|e| e.degree() == 1 || e.is_certified_irreducible())
}

/// Primitive element `γ = μ1 + λ μ2` of `L1 L2` with minimal polynomial
/// candidate `Res_Y(f1(Y), f2(X − λY))`, for `λ` from [`lambda_sequence`].
pub fn composite_extension(e1: &FunctionFieldExt, e2: &FunctionFieldExt, label: &str) -> Result<Composite> {
    check_inputs(e1, e2)?;
    let n = e1.nvars();
    let sh = Shift::new(n);
    let r = e1.base_ring();
    let (f1, f2) = (e1.min_poly(), e2.min_poly());
    if f1 == f2 && f1.degree() > Some(1) {
        // Same field, μ2 identified with μ1: γ = 2 μ1.
        let d = f1.degree().unwrap();
        let h = UPoly::from_coeffs(
            f1.coeffs().iter().enumerate().map(|(i, c)| r.mul(c, &r.pow(&r.from_i64(2), (d - i) as u64))).collect(),
        );
        let m = new_extension(n, h, label)?;
        let x = PolyRing::new(r).x();
        let left = TowerEmbedding::new(e1.clone(), m.clone(), x.clone(), r.from_i64(2))?;
        let right = TowerEmbedding::new(e2.clone(), m.clone(), x, r.from_i64(2))?;
        return Ok(Composite { ext: m, lambda: 1, left, right, linearly_disjoint: false, attempts: vec![1], certified: certified(e1, e2) });
    }
    let mut attempts = Vec::new();
    for lambda in lambda_sequence() {
        attempts.push(lambda);
        let res = sh.resultant_y(&sh.lift(f1), &sh.shifted(f2, lambda))?;
        if res.degree() != Some(e1.degree() * e2.degree()) || !is_squarefree(n, &res)? {
            continue;
        }
        let q = FracQuotient::new(r, res.clone());
        let gamma = q.generator();
        let lift = |a: &UPoly<MPoly>| a.map(|c| q.from_base(c));
        let qy = PolyRing::new(q.clone());
        let shifted_f1 = qy.compose(&lift(f1), &UPoly::from_coeffs(vec![gamma.clone(), q.from_i64(-lambda)]));
        let Some(mu2) = common_root(&q, &[lift(f2), shifted_f1]) else { continue };
        let mu1 = q.sub(&gamma, &q.mul(&q.from_i64(lambda), &mu2));
        let m = new_extension(n, res, label)?;
        let left = TowerEmbedding::new(e1.clone(), m.clone(), mu1.num, mu1.den)?;
        let right = TowerEmbedding::new(e2.clone(), m.clone(), mu2.num, mu2.den)?;
        return Ok(Composite { ext: m, lambda, left, right, linearly_disjoint: true, attempts, certified: certified(e1, e2) });
    }
    Err(Error::NoAdmissibleLambda {
        attempts: attempts.len(),
        left: format_upoly(f1),
        right: format_upoly(f2),
    })
}

/// Composite of `K ⊆ L1` and `K ⊆ L2` over `K`.
///
/// With `R = Res_Y(f1(Y), f2(X − λY))` and
/// `S = Res_Y(f2(Y), D2·N1(X − λY) − D1·N2(Y))`, where `μ_K = N_i(μ_i)/D_i`,
/// the roots of `G = gcd(R, S)` are the `α + λβ` whose images of `μ_K`
/// agree; `G` is accepted when squarefree of degree dividing
/// `[L1:K][L2:K][K:Q(t)]`.
pub fn composite_over(t1: &TowerEmbedding, t2: &TowerEmbedding, label: &str) -> Result<CompositeOver> {
    if t1.lower() != t2.lower() {
        return Err(Error::Precondition(format!(
            "{} and {} lie over different fields",
            t1.upper().label(),
            t2.upper().label()
        )));
    }
    check_inputs(t1.upper(), t2.upper())?;
    let n = t1.upper().nvars();
    let r = t1.upper().base_ring();
    let sh = Shift::new(n);
    let py = PolyRing::new(sh.r1);
    let (f1, f2) = (t1.upper().min_poly(), t2.upper().min_poly());
    let expected = t1.relative_degree() * t2.relative_degree() * t1.lower().degree();
    if f1 == f2 && t1.numerator() == t2.numerator() && t1.denominator() == t2.denominator() {
        return same_tower(t1, t2, label);
    }
    let ext1 = |a: &MPoly| a.extend_vars(1);
    let mut attempts = Vec::new();
    for lambda in lambda_sequence() {
        attempts.push(lambda);
        let res = sh.resultant_y(&sh.lift(f1), &sh.shifted(f2, lambda))?;
        let compat = py.sub(
            &py.scale(&sh.shifted(t1.numerator(), lambda), &ext1(t2.denominator())),
            &py.scale(&sh.lift(t2.numerator()), &ext1(t1.denominator())),
        );
        // Over a linear base every pair of roots is compatible.
        let mut g = if compat.is_zero() {
            res
        } else {
            let s = sh.resultant_y(&sh.lift(f2), &compat)?;
            sh.to_x(&sh.r1.gcd(&sh.from_x(&res), &sh.from_x(&s)))
        };
        let Some(dg) = g.degree() else { continue };
        if dg == 0 || dg > expected || expected % dg != 0 {
            continue;
        }
        let lc = g.lc().unwrap().clone();
        if r.is_one(&r.neg(&lc)) {
            g = PolyRing::new(r).neg(&g);
        } else if !r.is_one(&lc) {
            continue;
        }
        if !is_squarefree(n, &g)? {
            continue;
        }
        let q = FracQuotient::new(r, g.clone());
        let gamma = q.generator();
        let lift = |a: &UPoly<MPoly>| a.map(|c| q.from_base(c));
        let qy = PolyRing::new(q.clone());
        let shift_poly = UPoly::from_coeffs(vec![gamma.clone(), q.from_i64(-lambda)]);
        let n1 = qy.compose(&lift(t1.numerator()), &shift_poly);
        let compat_q = qy.sub(
            &qy.scale(&n1, &q.from_base(t2.denominator())),
            &qy.scale(&lift(t2.numerator()), &q.from_base(t1.denominator())),
        );
        let shifted_f1 = qy.compose(&lift(f1), &shift_poly);
        let Some(mu2) = common_root(&q, &[lift(f2), shifted_f1, compat_q]) else { continue };
        let mu1 = q.sub(&gamma, &q.mul(&q.from_i64(lambda), &mu2));
        let Some(dinv) = q.inv(&q.from_base(t1.denominator())) else { continue };
        let mu_k = q.mul(&q.eval(t1.numerator(), &mu1), &dinv);
        let m = new_extension(n, g, label)?;
        let base = TowerEmbedding::new(t1.lower().clone(), m.clone(), mu_k.num, mu_k.den)?;
        let left = TowerEmbedding::new(t1.upper().clone(), m.clone(), mu1.num, mu1.den)?;
        let right = TowerEmbedding::new(t2.upper().clone(), m.clone(), mu2.num, mu2.den)?;
        return Ok(CompositeOver { ext: m, lambda, base, left, right, linearly_disjoint: dg == expected,
            attempts,
            certified: certified(t1.upper(), t2.upper()),
        });
    }
    Err(Error::NoAdmissibleLambda { attempts: attempts.len(), left: format_upoly(f1), right: format_upoly(f2) })
}

/// `L ⊗_K L` is not a field; its diagonal factor is `L = Q(t)(2 μ)`.
fn same_tower(t1: &TowerEmbedding, t2: &TowerEmbedding, label: &str) -> Result<CompositeOver> {
    let upper = t1.upper();
    let n = upper.nvars();
    let r = upper.base_ring();
    let f = upper.min_poly();
    let d = f.degree().unwrap_or(0);
    let h = UPoly::from_coeffs(
        f.coeffs().iter().enumerate().map(|(i, c)| r.mul(c, &r.pow(&r.from_i64(2), (d - i) as u64))).collect(),
    );
    let m = new_extension(n, h.clone(), label)?;
    let q = FracQuotient::new(r, h);
    let x = PolyRing::new(r).x();
    let mu = q.from_fraction(&x, &r.from_i64(2));
    let dinv = q.inv(&q.from_base(t1.denominator())).ok_or_else(|| {
        Error::Invariant(format!("denominator of {} vanishes", t1.expression()))
    })?;
    let mu_k = q.mul(&q.eval(t1.numerator(), &mu), &dinv);
    let base = TowerEmbedding::new(t1.lower().clone(), m.clone(), mu_k.num, mu_k.den)?;
    let left = TowerEmbedding::new(upper.clone(), m.clone(), x.clone(), r.from_i64(2))?;
    let right = TowerEmbedding::new(t2.upper().clone(), m.clone(), x, r.from_i64(2))?;
    Ok(CompositeOver {
        ext: m,
        lambda: 1,
        base,
        left,
        right,
        linearly_disjoint: t1.relative_degree() == 1,
        attempts: vec![1],
        certified: certified(t1.upper(), t2.upper()),
    })
}
