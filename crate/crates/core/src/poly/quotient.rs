use num_traits::Signed;

use super::{bareiss_determinant, Coeff, Field, Int, MPoly, MPolyRing, PolyRing, Ring, UPoly};

/// Element `num / den` of `Q(t1..tn)[X]/(f)`, with `deg num < deg f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QElem {
    pub num: UPoly<MPoly>,
    pub den: MPoly,
}

impl Coeff for QElem {
    fn is_zero_coeff(&self) -> bool {
        self.num.is_zero()
    }
}

/// The algebra `Q(t1..tn)[X]/(f)` for a monic `f ∈ Z[t1..tn][X]`.
///
/// Elements are kept as a numerator in `Z[t][X]` over a common denominator
/// in `Z[t]`, reduced to lowest terms by the content gcd. When `f` is
/// irreducible this is a field and [`Field::inv`] always succeeds on nonzero
/// input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracQuotient {
    base: MPolyRing,
    modulus: UPoly<MPoly>,
}

impl FracQuotient {
    pub fn new(base: MPolyRing, modulus: UPoly<MPoly>) -> Self {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1),
            "quotient modulus must have positive degree"
        );
        assert!(base.is_one(modulus.lc().unwrap()), "quotient modulus must be monic");
        FracQuotient { base, modulus }
    }

    pub fn base(&self) -> &MPolyRing {
        &self.base
    }

    pub fn modulus(&self) -> &UPoly<MPoly> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `X`.
    pub fn generator(&self) -> QElem {
        self.from_poly(&PolyRing::new(self.base).x())
    }

    pub fn from_poly(&self, p: &UPoly<MPoly>) -> QElem {
        self.make(p.clone(), self.base.one())
    }

    pub fn from_fraction(&self, num: &UPoly<MPoly>, den: &MPoly) -> QElem {
        assert!(!den.is_zero(), "zero denominator");
        self.make(num.clone(), den.clone())
    }

    pub fn from_base(&self, c: &MPoly) -> QElem {
        self.make(UPoly::constant(c.clone()), self.base.one())
    }

    fn reduce(&self, p: &UPoly<MPoly>) -> UPoly<MPoly> {
        let px = PolyRing::new(self.base);
        px.pseudo_divide(p, &self.modulus).expect("monic modulus").remainder
    }

    fn make(&self, num: UPoly<MPoly>, den: MPoly) -> QElem {
        let num = self.reduce(&num);
        if num.is_zero() {
            return QElem { num, den: self.base.one() };
        }
        let mut g = den.clone();
        for c in num.coeffs() {
            g = self.base.gcd(&g, c);
        }
        if den.leading_coefficient().is_some_and(|c| c.is_negative()) {
            g = self.base.neg(&g);
        }
        let px = PolyRing::new(self.base);
        let num = px.div_scalar(&num, &g).expect("gcd divides numerator");
        let den = self.base.div_exact(&den, &g).expect("gcd divides denominator");
        QElem { num, den }
    }

    /// Evaluate a polynomial with coefficients in `Z[t]` at an element.
    pub fn eval(&self, p: &UPoly<MPoly>, x: &QElem) -> QElem {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_base(c));
        }
        acc
    }

    /// Multiplication matrix of `num` on the basis `1, X, …, X^{d−1}`:
    /// column `j` holds the coordinates of `num · X^j`.
    fn multiplication_matrix(&self, num: &UPoly<MPoly>) -> Vec<Vec<MPoly>> {
        let d = self.degree();
        let px = PolyRing::new(self.base);
        let mut cols = Vec::with_capacity(d);
        let mut cur = num.clone();
        for _ in 0..d {
            let coords: Vec<MPoly> = (0..d)
                .map(|i| cur.coeff(i).cloned().unwrap_or_else(|| self.base.zero()))
                .collect();
            cols.push(coords);
            cur = self.reduce(&px.shift(&cur, 1));
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }
}

impl Ring for FracQuotient {
    type Elem = QElem;

    fn zero(&self) -> QElem {
        QElem { num: UPoly::zero(), den: self.base.one() }
    }

    fn one(&self) -> QElem {
        QElem { num: UPoly::constant(self.base.one()), den: self.base.one() }
    }

    fn add(&self, a: &QElem, b: &QElem) -> QElem {
        let px = PolyRing::new(self.base);
        if a.den == b.den {
            return self.make(px.add(&a.num, &b.num), a.den.clone());
        }
        let num = px.add(&px.scale(&a.num, &b.den), &px.scale(&b.num, &a.den));
        self.make(num, self.base.mul(&a.den, &b.den))
    }

    fn sub(&self, a: &QElem, b: &QElem) -> QElem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &QElem) -> QElem {
        let px = PolyRing::new(self.base);
        QElem { num: px.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &QElem, b: &QElem) -> QElem {
        let px = PolyRing::new(self.base);
        self.make(px.mul(&a.num, &b.num), self.base.mul(&a.den, &b.den))
    }

    fn from_int(&self, n: &Int) -> QElem {
        self.from_base(&self.base.from_int(n))
    }

    fn div_exact(&self, a: &QElem, b: &QElem) -> Option<QElem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

impl Field for FracQuotient {
    /// Inverse by Cramer's rule on the multiplication matrix. Returns `None`
    /// for zero divisors, which exist only when the modulus is reducible.
    fn inv(&self, a: &QElem) -> Option<QElem> {
        if a.num.is_zero() {
            return None;
        }
        let m = self.multiplication_matrix(&a.num);
        let det = bareiss_determinant(&self.base, &m).ok()?;
        if det.is_zero() {
            return None;
        }
        let d = self.degree();
        let mut sol = Vec::with_capacity(d);
        for i in 0..d {
            let mut mi = m.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = if r == 0 { self.base.one() } else { self.base.zero() };
            }
            sol.push(bareiss_determinant(&self.base, &mi).ok()?);
        }
        let px = PolyRing::new(self.base);
        let num = px.scale(&UPoly::from_coeffs(sol), &a.den);
        Some(self.make(num, det))
    }
}
