use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use p1moduli::arith::DEFAULT_FACTOR_BITS;
use p1moduli::conic::{diagonalize, hilbert_symbol, relevant_places, TernaryForm};
use p1moduli::construct::{
    deg6_normal_form, gen_counterexample, random_galois_tower, random_mobius, random_stable_divisor, random_twisted_divisor,
    CounterexampleSpec, DEFAULT_MAX_RETRIES,
};
use p1moduli::decide::{decide, verify_certificate, Outcome};
use p1moduli::divisor::{compute_aut, conjugate_divisor, Divisor, GroupClass};
use p1moduli::moduli::{field_of_moduli, quotient_ramification};
use p1moduli::projline::{cross_ratio, Mobius, ProjPoint};
use p1moduli::qfield::{format_rational, parse_rational, FieldElem, FieldTower, GaloisGroup, Rational};

fn tower_2_plus_sqrt2() -> FieldTower {
    let q = FieldTower::rational();
    let k = q.extend(&q.int(2)).unwrap().tower;
    let r = &k.int(2) + &k.root(0);
    k.extend(&r).unwrap().tower
}

fn elem(t: &FieldTower, cs: &[(i64, i64)]) -> FieldElem {
    t.elem(cs.iter().take(t.degree()).map(|&(n, d)| Rational::new(n.into(), d.into())).collect()).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..40, 1i64..7), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_canonical(n in -10_000i64..10_000, d in prop::num::i64::ANY.prop_filter("nonzero", |d| *d != 0)) {
        let q = Rational::new(n.into(), d.into());
        let text = format_rational(&q);
        let back = parse_rational(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert!(back.denom() > &BigInt::from(0));
        if n == 0 {
            prop_assert_eq!(text, "0");
        }
    }

    #[test]
    fn tower_field_axioms(a in coords(), b in coords(), c in coords()) {
        let t = tower_2_plus_sqrt2();
        let (x, y, z) = (elem(&t, &a), elem(&t, &b), elem(&t, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        let sq = x.square();
        let r = sq.sqrt().unwrap();
        prop_assert!(r == x || r == -&x);
    }

    #[test]
    fn galois_elements_are_field_automorphisms(a in coords(), b in coords()) {
        let t = tower_2_plus_sqrt2();
        let gal = GaloisGroup::compute(&t).unwrap();
        prop_assert_eq!(gal.order(), 4);
        let (x, y) = (elem(&t, &a), elem(&t, &b));
        for g in gal.elements() {
            prop_assert_eq!(g.apply(&(&x * &y)), &g.apply(&x) * &g.apply(&y));
            prop_assert_eq!(g.apply(&(&x + &y)), &g.apply(&x) + &g.apply(&y));
            prop_assert_eq!(g.apply(&t.int(5)), t.int(5));
        }
        for i in 0..4 {
            for j in 0..4 {
                let k = gal.mul(i, j);
                prop_assert_eq!(gal.apply(k, &x), gal.apply(i, &gal.apply(j, &x)));
            }
        }
    }

    #[test]
    fn mobius_normalization_and_cross_ratio(seed in any::<u64>(), xs in prop::collection::vec(-50i64..50, 4)) {
        let q = FieldTower::rational();
        let t = q.extend(&q.int(-1)).unwrap().tower;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mobius(&t, &mut rng);
        let first = m.entries().iter().find(|e| !e.is_zero()).unwrap();
        prop_assert!(first.is_one());
        prop_assert!(m.compose(&m.inverse()).is_identity());
        let mut pts: Vec<ProjPoint> = xs.iter().map(|&x| ProjPoint::int(&t, x)).collect();
        pts.sort();
        pts.dedup();
        prop_assume!(pts.len() == 4);
        let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let im: Vec<ProjPoint> = pts.iter().map(|p| m.apply(p)).collect();
        prop_assert_eq!(cross_ratio(&im[0], &im[1], &im[2], &im[3]).unwrap(), before);
    }

    #[test]
    fn hilbert_reciprocity(a in -2000i64..2000, b in -2000i64..2000) {
        prop_assume!(a != 0 && b != 0);
        let (a, b) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let places = relevant_places(&a, &b, DEFAULT_FACTOR_BITS).unwrap();
        let prod: i8 = places.iter().map(|p| hilbert_symbol(&a, &b, p)).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn diagonalization_is_a_congruence(u in prop::collection::vec(-9i64..9, 6)) {
        let r = |i: usize| Rational::from_integer(u[i].into());
        let f = TernaryForm::from_upper([r(0), r(1), r(2), r(3), r(4), r(5)]);
        prop_assume!(f.is_nonsingular());
        let d = diagonalize(&f).unwrap();
        let g = f.transform(&d.basis);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { &d.scale * Rational::from_integer(d.coeffs[i].clone()) } else { Rational::from_integer(0.into()) };
                prop_assert_eq!(&g.gram()[i][j], &want);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn aut_and_cochain_invariants(seed in any::<u64>(), n in 4usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_galois_tower(&mut rng, 1);
        let d = random_stable_divisor(n, &t, &mut rng).unwrap();
        let d = d.apply(&random_mobius(&t, &mut rng));
        let aut = compute_aut(&d).unwrap();
        for (i, g) in aut.elements().iter().enumerate() {
            prop_assert!(d.is_stabilized_by(g));
            for j in 0..aut.order() {
                prop_assert_eq!(aut.element(aut.mul(i, j)), &g.compose(aut.element(j)));
            }
        }
        prop_assert!(aut.element(0).is_identity());
        let data = field_of_moduli(&d).unwrap();
        let gal = data.galois();
        for (s, phi) in data.h().iter().zip(data.cochain()) {
            let conj = conjugate_divisor(gal.element(*s), &d);
            prop_assert_eq!(conj.apply(phi), d.clone());
        }
    }

    #[test]
    fn verdicts_obey_the_characterization(seed in any::<u64>(), n in 5usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_galois_tower(&mut rng, 1);
        let d = random_twisted_divisor(n, &t, seed).unwrap();
        let v = decide(&d).unwrap();
        if v.outcome == Outcome::NotDefined {
            prop_assert!(v.aut_class.is_cyclic_even());
        }
        if let Some(s) = v.compression_solvable {
            prop_assert_eq!(s, v.outcome == Outcome::DefinedOnP1);
        }
        prop_assert!(verify_certificate(&d, &v).is_ok());
    }

    #[test]
    fn counterexample_invariants(seed in 0u64..1000, half in 4usize..6) {
        let n = 2 * half;
        let (c, v) = gen_counterexample(&CounterexampleSpec { a: -1, b: -1, n, seed }, DEFAULT_MAX_RETRIES).unwrap();
        prop_assert_eq!(c.d.degree(), n);
        prop_assert!(c.d.is_stabilized_by(&c.deck));
        prop_assert_eq!(c.branch_in_e() % 2, 0);
        prop_assert_eq!(v.outcome, Outcome::NotDefined);
        prop_assert!(matches!(v.aut_class, GroupClass::Cyclic(m) if m % 2 == 0));
    }

    #[test]
    fn degree_six_normal_form(seed in any::<u64>(), l in 2i64..40) {
        let q = FieldTower::rational();
        let t = q.extend(&q.int(3)).unwrap().tower;
        let lam = &t.int(l) + &t.root(0);
        let d = Divisor::from_affine(&t, [Some(t.zero()), None, Some(t.one()), Some(-t.one()), Some(lam.clone()), Some(-&lam)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = d.apply(&random_mobius(&t, &mut rng));
        let nf = deg6_normal_form(&d).unwrap();
        let lam = &nf.lambda;
        prop_assert!(!lam.is_zero() && !lam.is_one() && !(-lam).is_one());
        let e = d.apply(&nf.normalizer);
        let flip = Mobius::new(t.zero(), lam.clone(), t.one(), t.zero()).unwrap();
        prop_assert!(e.is_stabilized_by(&flip));
        prop_assert!(d.is_stabilized_by(&nf.involution));
    }
}

#[test]
fn quotient_ledgers_satisfy_riemann_hurwitz() {
    for m in 2..=12u32 {
        let l = quotient_ramification(m);
        assert_eq!(l.different_sum(), 2 * m - 2);
        assert!(l.entries.iter().all(|e| e.d + 1 == e.e));
        assert!(l.check());
    }
}
