use num_bigint::BigInt;
use num_traits::Signed;

use super::{Coeff, Field, Int, MPoly, MPolyRing, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first.
///
/// Invariant: the last stored coefficient is nonzero, so the zero polynomial
/// has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Coeff> UPoly<E> {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_coeff()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: E) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, `None` for the zero polynomial.
    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of `X^i`, `None` above the degree.
    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn map<F, T: Coeff>(&self, f: F) -> UPoly<T>
    where
        F: FnMut(&E) -> T,
    {
        UPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<E: Coeff> Coeff for UPoly<E> {
    fn is_zero_coeff(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Result of [`PolyRing::pseudo_divide`]: `lc(g)^scale · f = quotient·g + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision<E> {
    pub quotient: UPoly<E>,
    pub remainder: UPoly<E>,
    pub scale: u32,
}

/// Univariate polynomial ring `R[X]` over a base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn x(&self) -> UPoly<R::Elem> {
        UPoly::from_coeffs(vec![self.base.zero(), self.base.one()])
    }

    /// `c · X^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> UPoly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        UPoly::from_coeffs(v)
    }

    pub fn constant(&self, c: R::Elem) -> UPoly<R::Elem> {
        UPoly::constant(c)
    }

    pub fn from_i64s(&self, cs: &[i64]) -> UPoly<R::Elem> {
        UPoly::from_coeffs(cs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn scale(&self, f: &UPoly<R::Elem>, c: &R::Elem) -> UPoly<R::Elem> {
        UPoly::from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn shift(&self, f: &UPoly<R::Elem>, k: usize) -> UPoly<R::Elem> {
        if f.is_zero() {
            return f.clone();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(f.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    pub fn derivative(&self, f: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        UPoly::from_coeffs(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(c, &self.base.from_int(&BigInt::from(i))))
                .collect(),
        )
    }

    /// Horner evaluation at a point of the base ring.
    pub fn eval(&self, f: &UPoly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in f.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// `f(g(X))`.
    pub fn compose(&self, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        let mut acc = UPoly::zero();
        for c in f.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &UPoly::constant(c.clone()));
        }
        acc
    }

    /// Pseudo-division of `f` by `g ≠ 0`.
    ///
    /// The dividend is scaled by `lc(g)` only on steps that need it and only
    /// when `lc(g) ≠ 1`, so monic divisors report `scale = 0`. In all cases
    /// `scale ≤ deg f − deg g + 1`.
    pub fn pseudo_divide(
        &self,
        f: &UPoly<R::Elem>,
        g: &UPoly<R::Elem>,
    ) -> Result<PseudoDivision<R::Elem>> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lcg = g.lc().unwrap().clone();
        let unit_lc = self.base.is_one(&lcg);
        let mut rem = f.clone();
        let mut quo = UPoly::zero();
        let mut scale = 0u32;
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let c = rem.lc().unwrap().clone();
            if !unit_lc {
                rem = self.scale(&rem, &lcg);
                quo = self.scale(&quo, &lcg);
                scale += 1;
            }
            let term = self.monomial(c, dr - dg);
            rem = self.sub(&rem, &self.mul(&term, g));
            debug_assert!(rem.degree().map_or(true, |d| d < dr));
            quo = self.add(&quo, &term);
        }
        Ok(PseudoDivision { quotient: quo, remainder: rem, scale })
    }

    /// Full pseudo-remainder `prem(f, g)`: the remainder of
    /// `lc(g)^(deg f − deg g + 1) · f` by `g`.
    pub fn prem(&self, f: &UPoly<R::Elem>, g: &UPoly<R::Elem>) -> Result<UPoly<R::Elem>> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let Some(df) = f.degree() else {
            return Ok(UPoly::zero());
        };
        if df < dg {
            return Ok(f.clone());
        }
        let pd = self.pseudo_divide(f, g)?;
        let full = (df - dg + 1) as u64;
        let missing = full - pd.scale as u64;
        if missing == 0 || pd.remainder.is_zero() {
            return Ok(pd.remainder);
        }
        let lc = g.lc().unwrap();
        Ok(self.scale(&pd.remainder, &self.base.pow(lc, missing)))
    }

    /// Exact division `f / g` in `R[X]`, `None` if `g` does not divide `f`.
    pub fn div_exact_poly(
        &self,
        f: &UPoly<R::Elem>,
        g: &UPoly<R::Elem>,
    ) -> Option<UPoly<R::Elem>> {
        let dg = g.degree()?;
        let lcg = g.lc().unwrap();
        let mut rem = f.clone();
        let mut quo = vec![self.base.zero(); f.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                return None;
            }
            let c = self.base.div_exact(rem.lc().unwrap(), lcg)?;
            let term = self.monomial(c.clone(), dr - dg);
            rem = self.sub(&rem, &self.mul(&term, g));
            quo[dr - dg] = c;
        }
        Some(UPoly::from_coeffs(quo))
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_scalar(&self, f: &UPoly<R::Elem>, c: &R::Elem) -> Option<UPoly<R::Elem>> {
        let v: Option<Vec<_>> = f.coeffs.iter().map(|a| self.base.div_exact(a, c)).collect();
        v.map(UPoly::from_coeffs)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = UPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        UPoly::zero()
    }

    fn one(&self) -> Self::Elem {
        UPoly::constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.add(x, y)
            })
            .collect();
        UPoly::from_coeffs(v)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.sub(x, y)
            })
            .collect();
        UPoly::from_coeffs(v)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        UPoly::from_coeffs(a.coeffs.iter().map(|c| self.base.neg(c)).collect())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero_coeff() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero_coeff() {
                    continue;
                }
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        UPoly::from_coeffs(v)
    }

    fn from_int(&self, n: &Int) -> Self::Elem {
        UPoly::constant(self.base.from_int(n))
    }

    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.div_exact_poly(a, b)
    }
}

/// Operations that need a coefficient field.
impl<F: Field> PolyRing<F> {
    /// Euclidean division; `None` when `g = 0`.
    pub fn div_rem(
        &self,
        f: &UPoly<F::Elem>,
        g: &UPoly<F::Elem>,
    ) -> Option<(UPoly<F::Elem>, UPoly<F::Elem>)> {
        let dg = g.degree()?;
        let inv = self.base.inv(g.lc().unwrap())?;
        let mut rem = f.clone();
        let mut quo = vec![self.base.zero(); f.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let c = self.base.mul(rem.lc().unwrap(), &inv);
            let term = self.monomial(c.clone(), dr - dg);
            rem = self.sub(&rem, &self.mul(&term, g));
            quo[dr - dg] = c;
        }
        Some((UPoly::from_coeffs(quo), rem))
    }

    pub fn rem(&self, f: &UPoly<F::Elem>, g: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        self.div_rem(f, g).expect("nonzero modulus").1
    }

    /// Scale to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self, f: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        match f.lc() {
            None => f.clone(),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &UPoly<F::Elem>, g: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        let mut a = f.clone();
        let mut b = g.clone();
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `g = s·f + t·h` monic.
    pub fn ext_gcd(
        &self,
        f: &UPoly<F::Elem>,
        h: &UPoly<F::Elem>,
    ) -> (UPoly<F::Elem>, UPoly<F::Elem>, UPoly<F::Elem>) {
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (self.one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1).unwrap();
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.base.inv(lc).unwrap();
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    /// `f^e mod m` for an arbitrary-precision exponent.
    pub fn pow_mod(
        &self,
        f: &UPoly<F::Elem>,
        e: &num_bigint::BigUint,
        m: &UPoly<F::Elem>,
    ) -> UPoly<F::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let base = self.rem(f, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// True iff `gcd(f, f') = 1`. Over a perfect field this is exactly
    /// separability of `f`.
    pub fn is_squarefree(&self, f: &UPoly<F::Elem>) -> bool {
        match f.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let g = self.gcd(f, &self.derivative(f));
                g.degree() == Some(0)
            }
        }
    }
}

/// Content and primitive part of a polynomial with coefficients in `Z[t1..tn]`.
///
/// `f = content · primitive`, the content is the gcd of the coefficients and
/// the leading coefficient of the primitive part has a positive leading
/// integer. The zero polynomial gives `(0, 0)`.
pub fn content_primitive(ring: &MPolyRing, f: &UPoly<MPoly>) -> (MPoly, UPoly<MPoly>) {
    if f.is_zero() {
        return (ring.zero(), UPoly::zero());
    }
    let mut c = ring.zero();
    for a in f.coeffs() {
        c = ring.gcd(&c, a);
        if ring.is_one(&c) {
            break;
        }
    }
    let lc = f.lc().unwrap();
    let sign_negative = lc.leading_coefficient().is_some_and(|x| x.is_negative());
    if sign_negative {
        c = ring.neg(&c);
    }
    let px = PolyRing::new(ring.clone());
    let prim = px.div_scalar(f, &c).expect("content divides every coefficient");
    (c, prim)
}
