//! Monogenic presentations `Q(t1..tn)[μ]`, maximal ideals of `Z[t1..tn]`,
//! fiber factorization and the Dedekind criterion.

mod ideal;

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{factor_fq, is_irreducible_fq, FieldTower, FqElem};
use crate::poly::text::{format_upoly, rational_field_name};
use crate::poly::{discriminant, prime_factors, Int, MPoly, MPolyRing, PolyRing, Ring, UPoly};

pub use ideal::{reduce_mod, residue_field, TriangularIdeal};

/// Largest prime tried by the irreducibility certificate search.
pub const CERTIFICATE_PRIME_BOUND: u64 = 31;

/// Evidence that the defining polynomial is irreducible over `Q(t1..tn)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `f mod m` is irreducible over `κ(m)`; monic `f` is then irreducible.
    Verified(TriangularIdeal),
    /// No small witness was found; irreducibility is assumed.
    Attested,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Verified(m) => write!(f, "verified {m}"),
            Certificate::Attested => write!(f, "attested"),
        }
    }
}

/// `K = Q(t1..tn)[μ]` with `μ` a root of the monic `f ∈ Z[t1..tn][X]`, and
/// the order `Z[t1..tn][μ]` it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionFieldExt {
    nvars: usize,
    f: UPoly<MPoly>,
    label: String,
    certificate: Certificate,
    maximal_attested: bool,
}

impl FunctionFieldExt {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn min_poly(&self) -> &UPoly<MPoly> {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn is_certified_irreducible(&self) -> bool {
        matches!(self.certificate, Certificate::Verified(_))
    }

    /// The caller vouches that `Z[t][μ]` is the full integral closure.
    pub fn maximal_attested(&self) -> bool {
        self.maximal_attested
    }

    pub fn with_maximal_attested(mut self, yes: bool) -> Self {
        self.maximal_attested = yes;
        self
    }

    pub fn base_ring(&self) -> MPolyRing {
        MPolyRing::new(self.nvars)
    }

    pub fn discriminant(&self) -> Result<MPoly> {
        discriminant(&self.base_ring(), &self.f)
    }

    /// Whether the order is known to be maximal at every prime over `p`:
    /// attested by the caller, or `n = 0` and the Dedekind test passes.
    pub fn is_p_maximal(&self, p: u64) -> Option<bool> {
        if self.maximal_attested {
            return Some(true);
        }
        if self.nvars != 0 {
            return None;
        }
        Some(matches!(dedekind_maximality_test(self, p), Ok(Dedekind::Maximal)))
    }

    /// Whether the order is known to be maximal everywhere.
    pub fn is_maximal(&self) -> Option<bool> {
        if self.maximal_attested {
            return Some(true);
        }
        if self.nvars != 0 {
            return None;
        }
        let d = self.discriminant().ok()?.as_constant()?;
        for p in prime_factors(&d) {
            let p: u64 = p.try_into().ok()?;
            if self.is_p_maximal(p) != Some(true) {
                return Some(false);
            }
        }
        Some(true)
    }
}

impl fmt::Display for FunctionFieldExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}[X]/({})", self.label, rational_field_name(self.nvars), format_upoly(&self.f))
    }
}

/// Present `Q(t1..tn)[X]/(f)` for monic `f`, searching for an irreducibility
/// certificate among `(p; t1 − a1; …; tn − an)` with `p ≤ 31`.
pub fn new_extension(n: usize, f: UPoly<MPoly>, label: &str) -> Result<FunctionFieldExt> {
    let r = MPolyRing::new(n);
    let Some(d) = f.degree() else {
        return Err(Error::Precondition("zero polynomial".into()));
    };
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if let Some(c) = f.coeffs().iter().find(|c| c.nvars() != n) {
        return Err(Error::VariableCount { expected: n, found: c.nvars() });
    }
    if !r.is_one(f.lc().unwrap()) {
        return Err(Error::NotMonic(format_upoly(&f)));
    }
    let certificate = find_certificate(n, &f);
    Ok(FunctionFieldExt { nvars: n, f, label: label.to_string(), certificate, maximal_attested: false })
}

fn find_certificate(n: usize, f: &UPoly<MPoly>) -> Certificate {
    for p in 2..=CERTIFICATE_PRIME_BOUND {
        if !crate::gf::is_prime_u64(p) {
            continue;
        }
        let total = (p as u128).pow(n as u32);
        for idx in 0..total {
            let mut point = vec![0i64; n];
            let mut rest = idx;
            for slot in point.iter_mut().rev() {
                *slot = (rest % p as u128) as i64;
                rest /= p as u128;
            }
            let Ok(m) = TriangularIdeal::at_point(p, &point) else { continue };
            let fbar = reduce_mod(f, &m).expect("matching variable count");
            if is_irreducible_fq(m.residue_field(), &fbar) {
                return Certificate::Verified(m);
            }
        }
    }
    Certificate::Attested
}

/// Re-check a certificate from scratch.
pub fn check_certificate(ext: &FunctionFieldExt) -> bool {
    match &ext.certificate {
        Certificate::Verified(m) => reduce_mod(&ext.f, m)
            .map(|fb| is_irreducible_fq(m.residue_field(), &fb))
            .unwrap_or(false),
        Certificate::Attested => false,
    }
}

/// Monic companion of a non-monic `g = a_n X^n + … + a_0`:
/// `h(Y) = Y^n + Σ_{k≥1} a_{n−k} a_n^{k−1} Y^{n−k}`, so that `h(a_n X) =
/// a_n^{n−1} g(X)` and roots correspond by `s ↦ a_n s`.
pub fn normalize_integral(ring: &MPolyRing, g: &UPoly<MPoly>) -> Result<(UPoly<MPoly>, MPoly)> {
    let n = match g.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let an = g.lc().unwrap().clone();
    let mut coeffs = vec![ring.zero(); n + 1];
    coeffs[n] = ring.one();
    for k in 1..=n {
        coeffs[n - k] = ring.mul(g.coeff(n - k).unwrap(), &ring.pow(&an, (k - 1) as u64));
    }
    Ok((UPoly::from_coeffs(coeffs), an))
}

/// A prime of the order above a maximal ideal: the irreducible factor `H` of
/// the fiber polynomial, with its multiplicity `e` and degree `f_deg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAbove {
    pub factor: UPoly<FqElem>,
    pub e: usize,
    pub f_deg: usize,
}

/// Fiber of `Z[t][μ]` over a maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub ideal: TriangularIdeal,
    pub fiber_poly: UPoly<FqElem>,
    pub primes: Vec<PrimeAbove>,
}

impl Factorization {
    pub fn e_list(&self) -> Vec<usize> {
        self.primes.iter().map(|p| p.e).collect()
    }

    pub fn f_list(&self) -> Vec<usize> {
        self.primes.iter().map(|p| p.f_deg).collect()
    }

    pub fn is_unramified(&self) -> bool {
        self.primes.iter().all(|p| p.e == 1)
    }

    pub fn format_factors(&self) -> String {
        let k = self.ideal.residue_field();
        self.primes
            .iter()
            .map(|p| {
                let s = k.format_poly(&p.factor, "X");
                let s = if p.factor.coeffs().len() > 2 || s.contains(' ') { format!("({s})") } else { s };
                if p.e > 1 { format!("{s}^{}", p.e) } else { s }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// Factor `f mod m` over `κ(m)`; the factors are the primes of the order
/// above `m`.
pub fn factor_ideal(ext: &FunctionFieldExt, m: &TriangularIdeal, seed: u64) -> Result<Factorization> {
    let fbar = reduce_mod(&ext.f, m)?;
    let primes = factor_fq(m.residue_field(), &fbar, seed)
        .into_iter()
        .map(|(h, e)| PrimeAbove { f_deg: h.degree().unwrap(), factor: h, e })
        .collect();
    Ok(Factorization { ideal: m.clone(), fiber_poly: fbar, primes })
}

/// Outcome of the Dedekind criterion at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dedekind {
    Maximal,
    /// `gcd(T̄, ḡ, h̄)`, a nontrivial common factor over `F_p`.
    NotMaximal(UPoly<FqElem>),
}

/// Dedekind's criterion for `Z[μ]` at `p`, `n = 0` only.
///
/// With `f̄ = ∏ ḡ_i^{e_i}`, `ḡ = ∏ ḡ_i`, `h̄ = f̄/ḡ`, lifts `g, h` with
/// coefficients in `[0, p)` and `T = (g h − f)/p`, the order is `p`-maximal
/// iff `gcd(T̄, ḡ, h̄) = 1`.
pub fn dedekind_maximality_test(ext: &FunctionFieldExt, p: u64) -> Result<Dedekind> {
    if ext.nvars != 0 {
        return Err(Error::Unsupported(format!(
            "Dedekind test needs n = 0, {} has n = {}",
            ext.label, ext.nvars
        )));
    }
    let k = FieldTower::prime(p)?;
    let kx = k.poly_ring();
    let m = TriangularIdeal::new(p, Vec::new())?;
    let fbar = reduce_mod(&ext.f, &m)?;
    let mut gbar = kx.one();
    for (h, _) in factor_fq(&k, &fbar, 0) {
        gbar = kx.mul(&gbar, &h);
    }
    let hbar = kx.div_rem(&fbar, &gbar).expect("nonzero").0;
    let r = ext.base_ring();
    let zx = PolyRing::new(r);
    let lift = |a: &UPoly<FqElem>| -> UPoly<MPoly> {
        UPoly::from_coeffs(a.coeffs().iter().map(|c| r.constant(Int::from(c.0[0]))).collect())
    };
    let diff = zx.sub(&zx.mul(&lift(&gbar), &lift(&hbar)), &ext.f);
    let t = zx
        .div_scalar(&diff, &r.from_int(&Int::from(p)))
        .ok_or_else(|| Error::Invariant("g h − f not divisible by p".into()))?;
    let tbar = reduce_mod(&t, &m)?;
    let d = kx.gcd(&kx.gcd(&tbar, &gbar), &hbar);
    if d.degree() == Some(0) {
        Ok(Dedekind::Maximal)
    } else {
        Ok(Dedekind::NotMaximal(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::text::parse_upoly;

    fn ext(n: usize, f: &str) -> FunctionFieldExt {
        new_extension(n, parse_upoly(f, n).unwrap(), "test").unwrap()
    }

    #[test]
    fn certificates() {
        let qi = ext(0, "X^2 + 1");
        assert_eq!(qi.certificate(), &Certificate::Verified(TriangularIdeal::parse("(3)", 0).unwrap()));
        let s = ext(1, "X^2 - t1");
        assert_eq!(s.certificate(), &Certificate::Verified(TriangularIdeal::parse("(3; t1 - 2)", 1).unwrap()));
        let alt = TriangularIdeal::parse("(5; t1 - 2)", 1).unwrap();
        let fb = reduce_mod(s.min_poly(), &alt).unwrap();
        assert!(is_irreducible_fq(alt.residue_field(), &fb));
        assert!(check_certificate(&s));
        let lin = ext(0, "X");
        assert!(lin.is_certified_irreducible());
        let red = ext(0, "X^2 - 1");
        assert_eq!(red.certificate(), &Certificate::Attested);
        assert!(matches!(
            new_extension(0, parse_upoly("2*X^2 + 1", 0).unwrap(), "x"),
            Err(Error::NotMonic(_))
        ));
    }

    #[test]
    fn normalization() {
        let r = MPolyRing::new(0);
        let (h, a) = normalize_integral(&r, &parse_upoly("2*X^2 - 1", 0).unwrap()).unwrap();
        assert_eq!(format_upoly(&h), "X^2 - 2");
        assert_eq!(a, r.from_i64(2));
        let (h, _) = normalize_integral(&r, &parse_upoly("3*X^2 + X + 1", 0).unwrap()).unwrap();
        assert_eq!(format_upoly(&h), "X^2 + X + 3");
        let g = parse_upoly("X^3 + 5", 0).unwrap();
        assert_eq!(normalize_integral(&r, &g).unwrap(), (g, r.one()));
        assert!(normalize_integral(&r, &parse_upoly("7", 0).unwrap()).is_err());
    }

    #[test]
    fn gaussian_fibers() {
        let qi = ext(0, "X^2 + 1");
        let f5 = factor_ideal(&qi, &TriangularIdeal::parse("(5)", 0).unwrap(), 1).unwrap();
        assert_eq!(f5.e_list(), vec![1, 1]);
        assert_eq!(f5.f_list(), vec![1, 1]);
        let f2 = factor_ideal(&qi, &TriangularIdeal::parse("(2)", 0).unwrap(), 1).unwrap();
        assert_eq!(f2.e_list(), vec![2]);
        assert_eq!(f2.format_factors(), "(X + 1)^2");
        let s = ext(1, "X^2 - t1");
        let fs = factor_ideal(&s, &TriangularIdeal::parse("(5; t1 - 2)", 1).unwrap(), 1).unwrap();
        assert_eq!((fs.e_list(), fs.f_list()), (vec![1], vec![2]));
    }

    #[test]
    fn dedekind_examples() {
        let f = ext(0, "X^2 - 5");
        let k2 = FieldTower::prime(2).unwrap();
        assert_eq!(dedekind_maximality_test(&f, 2).unwrap(), Dedekind::NotMaximal(k2.poly_from_u64s(&[1, 1])));
        assert_eq!(dedekind_maximality_test(&ext(0, "X^2 + 1"), 2).unwrap(), Dedekind::Maximal);
        assert_eq!(dedekind_maximality_test(&ext(0, "X^2 + 1"), 5).unwrap(), Dedekind::Maximal);
        assert_eq!(dedekind_maximality_test(&ext(0, "X^3 - X - 1"), 23).unwrap(), Dedekind::Maximal);
        assert!(matches!(dedekind_maximality_test(&ext(1, "X^2 - t1"), 2), Err(Error::Unsupported(_))));
        assert_eq!(f.is_maximal(), Some(false));
        assert_eq!(ext(0, "X^2 + 1").is_maximal(), Some(true));
        assert_eq!(ext(1, "X^2 - t1").is_maximal(), None);
    }
}
