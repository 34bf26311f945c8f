//! Exact integer, rational and polynomial arithmetic.
//!
//! Rings are passed around as explicit context objects implementing [`Ring`];
//! their elements carry no context of their own. This lets one generic
//! implementation of polynomial algorithms (pseudo-division, subresultants,
//! gcds) serve integers, rationals, multivariate polynomials over `Z` and the
//! finite residue fields of the `gf` module alike.

mod linalg;
mod mpoly;
mod quotient;
mod resultant;
pub mod text;
mod upoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use linalg::{bareiss_determinant, sylvester_matrix, sylvester_resultant};
pub use mpoly::{MPoly, MPolyRing, Monomial};
pub use quotient::{FracQuotient, QElem};
pub use resultant::{discriminant, resultant, subresultant_prs};
pub use upoly::{content_primitive, PolyRing, PseudoDivision, UPoly};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rat = BigRational;

/// Element types usable as polynomial coefficients.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
}

impl Coeff for Int {
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coeff for Rat {
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// A commutative ring with identity, given as a context object.
pub trait Ring: Clone {
    type Elem: Coeff;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &Int) -> Self::Elem;

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`
    /// (including `b = 0`).
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero_coeff()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&Int::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The ring `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Int;

    fn zero(&self) -> Int {
        Int::zero()
    }
    fn one(&self) -> Int {
        Int::one()
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a + b
    }
    fn sub(&self, a: &Int, b: &Int) -> Int {
        a - b
    }
    fn neg(&self, a: &Int) -> Int {
        -a
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a * b
    }
    fn from_int(&self, n: &Int) -> Int {
        n.clone()
    }
    fn div_exact(&self, a: &Int, b: &Int) -> Option<Int> {
        if Zero::is_zero(b) {
            return None;
        }
        let (q, r) = a.div_rem(b);
        Zero::is_zero(&r).then_some(q)
    }
}

/// The field `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn from_int(&self, n: &Int) -> Rat {
        Rat::from_integer(n.clone())
    }
    fn div_exact(&self, a: &Rat, b: &Rat) -> Option<Rat> {
        self.inv(b).map(|bi| a * bi)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!Zero::is_zero(a)).then(|| a.recip())
    }
}

/// Prime factors of `|n|` in increasing order, without multiplicity.
///
/// Small factors are removed by trial division; the cofactor is split with
/// Pollard–Brent rho and certified with Miller–Rabin.
pub fn prime_factors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut m = n.abs();
    if m <= Int::one() {
        return out;
    }
    for p in 2u32..1000 {
        let pb = Int::from(p);
        if (&m % &pb).is_zero() {
            out.push(pb.clone());
            while (&m % &pb).is_zero() {
                m /= &pb;
            }
        }
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c <= Int::one() {
            continue;
        }
        if is_probable_prime(&c) {
            out.push(c);
            continue;
        }
        let d = pollard_brent(&c);
        let rest = &c / &d;
        stack.push(d);
        stack.push(rest);
    }
    out.sort();
    out.dedup();
    out
}

fn is_probable_prime(n: &Int) -> bool {
    let two = Int::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let pb = Int::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    // These bases are deterministic below 3.3e24 and a strong test beyond.
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = Int::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &Int) -> Int {
    if n.is_even() {
        return Int::from(2u32);
    }
    let mut c = Int::one();
    loop {
        let f = |x: &Int| (x * x + &c) % n;
        let mut y = Int::from(2u32);
        let mut r: u64 = 1;
        let mut q = Int::one();
        let m: u64 = 64;
        let mut g = Int::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}
