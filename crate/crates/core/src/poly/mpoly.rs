use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{upoly::content_primitive, Coeff, Int, PolyRing, Ring, UPoly};

/// Exponent vector, one entry per variable `t1..tn`.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in `Z[t1..tn]`.
///
/// Terms live in a `BTreeMap` keyed by exponent vectors. Vectors compare
/// lexicographically with index 0 (that is `t1`) most significant, so the
/// last entry is the lex-leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Int>,
}

impl Coeff for MPoly {
    fn is_zero_coeff(&self) -> bool {
        self.terms.is_empty()
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Int) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// Build from `(exponents, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Int)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Int)> {
        self.terms.iter().next_back()
    }

    /// Integer coefficient of the lex-leading term.
    pub fn leading_coefficient(&self) -> Option<&Int> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: &[u32]) -> Int {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    /// Gcd of the integer coefficients, nonnegative.
    pub fn integer_content(&self) -> Int {
        self.terms.values().fold(Int::zero(), |g, c| g.gcd(c))
    }

    pub fn map_coefficients<F: FnMut(&Int) -> Int>(&self, mut f: F) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Evaluate at an integer point.
    pub fn eval_int(&self, point: &[Int]) -> Int {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Int::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Generic evaluation `t_i ↦ images[i]` into any ring.
    pub fn eval_in<R: Ring>(&self, ring: &R, images: &[R::Elem]) -> R::Elem {
        assert_eq!(images.len(), self.nvars);
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = ring.from_int(c);
            for (x, &e) in images.iter().zip(m) {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(x, e as u64));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Insert `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Self {
        let n = self.nvars + extra;
        Self::from_terms(
            n,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.resize(n, 0);
                (m2, c.clone())
            }),
        )
    }

    /// Drop trailing variables that do not occur.
    pub fn truncate_vars(&self, n: usize) -> Option<Self> {
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            if m[n..].iter().any(|&e| e != 0) {
                return None;
            }
            out.terms.insert(m[..n].to_vec(), c.clone());
        }
        Some(out)
    }

    /// Write the polynomial as a univariate polynomial in `t_var`, each
    /// coefficient free of that variable.
    pub fn to_univariate(&self, var: usize) -> UPoly<MPoly> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![MPoly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2[var], 0) as usize;
            coeffs[e].terms.insert(m2, c.clone());
        }
        UPoly::from_coeffs(coeffs)
    }

    pub fn from_univariate(p: &UPoly<MPoly>, var: usize, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in p.coeffs().iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2[var] += e as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }
}

/// The ring `Z[t1..tn]`; `n = 0` gives `Z` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MPolyRing {
    nvars: usize,
}

impl MPolyRing {
    pub fn new(nvars: usize) -> Self {
        MPolyRing { nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The variable `t_{i+1}`.
    pub fn var(&self, i: usize) -> MPoly {
        assert!(i < self.nvars);
        let mut m = vec![0; self.nvars];
        m[i] = 1;
        MPoly::from_terms(self.nvars, [(m, Int::one())])
    }

    pub fn constant(&self, c: Int) -> MPoly {
        MPoly::constant(self.nvars, c)
    }

    pub fn scale_int(&self, a: &MPoly, c: &Int) -> MPoly {
        a.map_coefficients(|x| x * c)
    }

    /// Substitute `t_i ↦ images[i]`.
    pub fn substitute(&self, a: &MPoly, images: &[MPoly]) -> MPoly {
        a.eval_in(self, images)
    }

    /// Greatest common divisor, normalized so the lex-leading integer
    /// coefficient is positive. `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return self.normalize_sign(b);
        }
        if b.is_zero() {
            return self.normalize_sign(a);
        }
        if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
            return self.constant(x.gcd(&y));
        }
        let Some(var) = (0..self.nvars)
            .find(|&v| a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0)
        else {
            unreachable!("non-constant polynomial without variables");
        };
        let ua = a.to_univariate(var);
        let ub = b.to_univariate(var);
        let (ca, pa) = content_primitive(self, &ua);
        let (cb, pb) = content_primitive(self, &ub);
        let c = self.gcd(&ca, &cb);
        let g = self.primitive_prs_gcd(pa, pb);
        let g = MPoly::from_univariate(&g, var, self.nvars);
        self.normalize_sign(&self.mul(&c, &g))
    }

    fn primitive_prs_gcd(&self, a: UPoly<MPoly>, b: UPoly<MPoly>) -> UPoly<MPoly> {
        let px = PolyRing::new(*self);
        let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
        loop {
            if b.degree() == Some(0) {
                return px.one();
            }
            let r = px.prem(&a, &b).expect("nonzero divisor");
            if r.is_zero() {
                return b;
            }
            a = b;
            b = content_primitive(self, &r).1;
        }
    }

    fn normalize_sign(&self, a: &MPoly) -> MPoly {
        if a.leading_coefficient().is_some_and(|c| c.is_negative()) {
            self.neg(a)
        } else {
            a.clone()
        }
    }
}

impl Ring for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(self.nvars)
    }

    fn one(&self) -> MPoly {
        MPoly::constant(self.nvars, Int::one())
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        a.map_coefficients(|c| -c)
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn from_int(&self, n: &Int) -> MPoly {
        MPoly::constant(self.nvars, n.clone())
    }

    /// Exact division by repeated cancellation of lex-leading terms.
    fn div_exact(&self, a: &MPoly, b: &MPoly) -> Option<MPoly> {
        let (mb, cb) = b.leading_term()?;
        let (mb, cb) = (mb.clone(), cb.clone());
        let mut rem = a.clone();
        let mut quo = MPoly::zero(self.nvars);
        while let Some((mr, cr)) = rem.leading_term() {
            if mr.iter().zip(&mb).any(|(x, y)| x < y) {
                return None;
            }
            let (q, r) = cr.div_rem(&cb);
            if !r.is_zero() {
                return None;
            }
            let m: Monomial = mr.iter().zip(&mb).map(|(x, y)| x - y).collect();
            let term = MPoly::from_terms(self.nvars, [(m.clone(), q.clone())]);
            rem = self.sub(&rem, &self.mul(&term, b));
            quo.add_term(m, q);
        }
        Some(quo)
    }
}
