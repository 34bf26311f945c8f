use proptest::prelude::*;

use ramify_core::audits::{thm41_audit, AuditOptions, CandidateSpace};
use ramify_core::gf::{factor_fq, FieldTower, FqElem};
use ramify_core::orders::{reduce_mod, TriangularIdeal};
use ramify_core::poly::text::parse_upoly;
use ramify_core::poly::{
    content_primitive, discriminant, Field, Int, MPoly, MPolyRing, PolyRing, Ring, UPoly,
};

fn mpoly(nvars: usize, max_deg: u32, max_coeff: i64) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -max_coeff..=max_coeff), 0..5)
        .prop_map(move |ts| MPoly::from_terms(nvars, ts.into_iter().map(|(m, c)| (m, Int::from(c)))))
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec((-5i64..=5).prop_map(Int::from), nvars)
}

fn upoly(nvars: usize, deg: usize) -> impl Strategy<Value = UPoly<MPoly>> {
    prop::collection::vec(mpoly(nvars, 2, 6), 1..=deg + 1).prop_map(UPoly::from_coeffs)
}

/// Monic in X with the given degree.
fn monic(nvars: usize, deg: usize) -> impl Strategy<Value = UPoly<MPoly>> {
    prop::collection::vec(mpoly(nvars, 2, 4), deg).prop_map(move |mut cs| {
        cs.push(MPoly::constant(nvars, Int::from(1)));
        UPoly::from_coeffs(cs)
    })
}

fn field(q: u32) -> FieldTower {
    match q {
        4 => FieldTower::build(2, &[parse_upoly("X^2 + X + 1", 0).unwrap()]).unwrap(),
        9 => FieldTower::build(3, &[parse_upoly("X^2 + 1", 0).unwrap()]).unwrap(),
        p => FieldTower::prime(p as u64).unwrap(),
    }
}

/// A maximal ideal of `Z[t1..tn]`: a point, possibly with an irreducible
/// quadratic last stage.
fn ideal(n: usize) -> impl Strategy<Value = TriangularIdeal> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), prop::collection::vec(0i64..13, n), any::<bool>())
        .prop_filter_map("reducible stage", move |(p, pt, quadratic)| {
            if n == 0 || !quadratic {
                return TriangularIdeal::at_point(p, &pt).ok();
            }
            let r = MPolyRing::new(n);
            let mut chain: Vec<MPoly> =
                pt[..n - 1].iter().enumerate().map(|(i, &a)| r.sub(&r.var(i), &r.from_i64(a))).collect();
            let t = r.var(n - 1);
            chain.push(r.add(&r.mul(&t, &t), &r.from_i64(pt[n - 1])));
            TriangularIdeal::new(p, chain).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mpoly_ring_axioms(a in mpoly(2, 3, 9), b in mpoly(2, 3, 9), c in mpoly(2, 3, 9)) {
        let r = MPolyRing::new(2);
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.zero()), a.clone());
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert!(r.add(&a, &r.neg(&a)).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(r.div_exact(&r.mul(&a, &b), &b), Some(a.clone()));
        }
    }

    #[test]
    fn mpoly_evaluation_is_a_homomorphism(a in mpoly(3, 3, 9), b in mpoly(3, 3, 9), pt in point(3)) {
        let r = MPolyRing::new(3);
        prop_assert_eq!(r.mul(&a, &b).eval_int(&pt), a.eval_int(&pt) * b.eval_int(&pt));
        prop_assert_eq!(r.sub(&a, &b).eval_int(&pt), a.eval_int(&pt) - b.eval_int(&pt));
    }

    #[test]
    fn gauss_content_is_multiplicative(f in upoly(1, 3), g in upoly(1, 3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let r = MPolyRing::new(1);
        let px = PolyRing::new(r);
        let (cf, pf) = content_primitive(&r, &f);
        let (cg, _) = content_primitive(&r, &g);
        let (cfg, pfg) = content_primitive(&r, &px.mul(&f, &g));
        let prod = r.mul(&cf, &cg);
        prop_assert!(cfg == prod || cfg == r.neg(&prod), "{:?} vs {:?}", cfg, prod);
        prop_assert_eq!(px.scale(&pf, &cf), f);
        let (c2, _) = content_primitive(&r, &pfg);
        prop_assert!(r.is_one(&c2));
    }

    #[test]
    fn finite_field_axioms(q in prop::sample::select(vec![2u32, 3, 4, 5, 9]), seed in any::<u64>()) {
        let k = field(q);
        let elems: Vec<FqElem> = k.elements().collect();
        let pick = |i: u64| elems[(seed.rotate_left(i as u32 * 13) % elems.len() as u64) as usize].clone();
        let (a, b, c) = (pick(1), pick(2), pick(3));
        prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
        prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
        if !k.is_zero(&a) {
            let inv = k.inv(&a).unwrap();
            prop_assert!(k.is_one(&k.mul(&a, &inv)));
        }
        prop_assert_eq!(k.pow_big(&a, &k.order()), a.clone());
    }

    #[test]
    fn factorization_is_seed_independent(q in prop::sample::select(vec![2u32, 3, 4, 5, 9, 25]), cs in prop::collection::vec(0u64..1000, 1..=6), s1 in any::<u64>(), s2 in any::<u64>()) {
        let k = if q == 25 { FieldTower::build(5, &[parse_upoly("X^2 - 2", 0).unwrap()]).unwrap() } else { field(q) };
        let qq = u64::try_from(k.order()).unwrap();
        let mut coeffs: Vec<FqElem> = cs.iter().map(|&c| k.element_from_index(c % qq)).collect();
        coeffs.push(k.one());
        let f = UPoly::from_coeffs(coeffs);
        let a = factor_fq(&k, &f, s1);
        let b = factor_fq(&k, &f, s2);
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    /// `disc(f) ∈ m` iff `f mod m` is not squarefree, for monic `f`.
    #[test]
    fn discriminant_detects_repeated_factors(
        (n, f, m) in (0usize..=2, 1usize..=4).prop_flat_map(|(n, d)| (Just(n), monic(n, d), ideal(n)))
    ) {
        let r = MPolyRing::new(n);
        let disc = discriminant(&r, &f).unwrap();
        let fbar = reduce_mod(&f, &m).unwrap();
        let squarefree = m.residue_field().poly_ring().is_squarefree(&fbar);
        prop_assert_eq!(m.contains(&disc), !squarefree, "f = {:?}, m = {}", f, m);
    }
}

#[test]
fn factor_fq_exhaustive_corpus() {
    for q in [2u32, 3, 4, 5, 9] {
        let k = field(q);
        let kx = k.poly_ring();
        let elems: Vec<FqElem> = k.elements().collect();
        let mut monics: Vec<Vec<UPoly<FqElem>>> = vec![vec![UPoly::constant(k.one())]];
        for d in 1..=4 {
            let mut next = Vec::new();
            for g in &monics[d - 1] {
                for c in &elems {
                    let mut cs = vec![c.clone()];
                    cs.extend(g.coeffs().iter().cloned());
                    next.push(UPoly::from_coeffs(cs));
                }
            }
            monics.push(next);
        }
        let divides = |g: &UPoly<FqElem>, f: &UPoly<FqElem>| kx.div_rem(f, g).unwrap().1.is_zero();
        let irreducible = |h: &UPoly<FqElem>| {
            let d = h.degree().unwrap();
            (1..=d / 2).all(|e| monics[e].iter().all(|g| !divides(g, h)))
        };
        for d in 1..=4 {
            for f in &monics[d] {
                let fs = factor_fq(&k, f, 7);
                let mut prod = kx.one();
                for (h, e) in &fs {
                    assert!(irreducible(h), "q={q}: {} is reducible", k.format_poly(h, "X"));
                    for _ in 0..*e {
                        prod = kx.mul(&prod, h);
                    }
                }
                assert_eq!(&prod, f, "q={q}");
            }
        }
    }
}

#[test]
fn audit_sub_spaces_are_monotone() {
    let big = thm41_audit(&CandidateSpace::new(1, 2, 1, 3).unwrap(), &AuditOptions::default()).unwrap();
    for (tdeg, height) in [(1, 1), (1, 2), (1, 3)] {
        let small = CandidateSpace::new(1, 2, tdeg, height).unwrap();
        let sub = thm41_audit(&small, &AuditOptions::default()).unwrap();
        assert!(sub.enumerated <= big.enumerated);
        assert!(sub.reducible_skipped <= big.reducible_skipped);
        assert!(sub.reducible_unit_disc <= big.reducible_unit_disc);
        assert!(sub.survivors.iter().all(|s| big.survivors.iter().any(|b| b.f == s.f)));
    }
    for (n, degx, tdeg, height) in [(0usize, 2usize, 1u32, 4u32), (1, 2, 1, 2), (0, 3, 1, 2)] {
        let s = CandidateSpace::new(n, degx, tdeg, height).unwrap();
        let a = thm41_audit(&s, &AuditOptions::default()).unwrap();
        assert!(a.survivors.is_empty(), "{}", a.render());
        let grown = CandidateSpace::new(n, degx, tdeg, height + 1).unwrap();
        let b = thm41_audit(&grown, &AuditOptions::default()).unwrap();
        assert!(a.enumerated < b.enumerated && a.reducible_skipped <= b.reducible_skipped);
    }
}
