mod common;

use common::{agrees_on_box, divides_some, mono, monomial_ideal, ring};
use fsplit::{
    frobenius_power, parse_ideal, parse_polynomial, reduced_basis, Colength, Ideal, Monomial, MonomialOrder,
    Polynomial, Ring,
};
use proptest::prelude::*;

fn exps(d: usize, max: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max, d), 1..4)
        .prop_filter("proper", |g| g.iter().all(|v| v.iter().any(|&a| a > 0)))
}

fn polys(d: usize) -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
    prop::collection::vec(prop::collection::vec((prop::collection::vec(0u32..3, d), 1i64..5), 1..4), 1..4)
}

fn build(r: &std::sync::Arc<Ring>, gens: &[Vec<(Vec<u32>, i64)>]) -> Vec<Polynomial> {
    gens.iter()
        .map(|t| Polynomial::from_terms(r, t.iter().map(|(e, c)| (Monomial::from_exponents(e), *c))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_is_idempotent_and_order_free(p in prop::sample::select(vec![2u64, 3, 5]), g in polys(3), seed in any::<u64>()) {
        let r = ring(p, 3);
        let gens = build(&r, &g);
        let basis = reduced_basis(&r, &gens);
        prop_assert_eq!(reduced_basis(&r, &basis), basis.clone());
        let mut shuffled = gens.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        if seed & 1 == 1 {
            shuffled.reverse();
        }
        prop_assert_eq!(reduced_basis(&r, &shuffled), basis.clone());
        let i = Ideal::new(&r, gens.clone());
        for f in &gens {
            prop_assert!(i.contains(f));
        }
        for g in &basis {
            prop_assert_eq!(g.leading_coeff(), 1);
        }
    }

    #[test]
    fn membership_survives_regeneration(p in prop::sample::select(vec![2u64, 3]), g in polys(2), h in polys(2)) {
        let r = ring(p, 2);
        let gens = build(&r, &g);
        let i = Ideal::new(&r, gens.clone());
        let mut again = gens.clone();
        again.reverse();
        let j = Ideal::new(&r, again);
        for f in build(&r, &h) {
            prop_assert_eq!(i.contains(&f), j.contains(&f));
            let combo = &f * &gens[0];
            prop_assert!(i.contains(&combo));
        }
    }

    #[test]
    fn monomial_operations_match_exponent_sets(a in exps(3, 3), b in exps(3, 3)) {
        let r = ring(3, 3);
        let (i, j) = (monomial_ideal(&r, &a), monomial_ideal(&r, &b));
        let meet = i.intersect(&j);
        prop_assert!(meet.is_monomial());
        prop_assert!(agrees_on_box(&r, &meet, 7, |v| divides_some(&a, v) && divides_some(&b, v)));
        let colon = i.colon(&j);
        prop_assert!(colon.is_monomial());
        let in_colon = |v: &[u32]| b.iter().all(|h| {
            let w: Vec<u32> = v.iter().zip(h).map(|(x, y)| x + y).collect();
            divides_some(&a, &w)
        });
        prop_assert!(agrees_on_box(&r, &colon, 7, in_colon));
        let sum = i.sum(&j);
        prop_assert!(agrees_on_box(&r, &sum, 7, |v| divides_some(&a, v) || divides_some(&b, v)));
    }

    #[test]
    fn colength_counts_the_box(a in exps(2, 4)) {
        let r = ring(5, 2);
        let i = monomial_ideal(&r, &a);
        let pure = (0..2).all(|k| a.iter().any(|g| g.iter().enumerate().all(|(j, &e)| (j == k) == (e > 0))));
        let expect = if pure {
            let count = common::box_points(2, 4).iter().filter(|v| !divides_some(&a, v)).count();
            Colength::Finite(count as u64)
        } else {
            Colength::Infinite
        };
        prop_assert_eq!(i.colength(), expect);
    }

    #[test]
    fn mutual_containment_is_equality(g in polys(2), h in polys(2)) {
        let r = ring(2, 2);
        let i = Ideal::new(&r, build(&r, &g));
        let j = i.sum(&Ideal::new(&r, build(&r, &h)));
        prop_assert!(i.is_subset(&j));
        prop_assert_eq!(j.is_subset(&i), i == j);
    }
}

#[test]
fn frobenius_powers_of_the_maximal_ideal_have_colength_q_to_the_d() {
    for (p, d, e) in [(2, 2, 3), (3, 3, 2), (5, 2, 2), (2, 4, 2), (7, 1, 2)] {
        let r = ring(p, d);
        let q = p.pow(e);
        let mq = frobenius_power(&Ideal::maximal(&r), e).unwrap();
        assert_eq!(mq.colength(), Colength::Finite(q.pow(d as u32)));
    }
}

#[test]
fn basis_examples() {
    let r = ring(2, 2);
    let i = parse_ideal("(x, x + y)", &r).unwrap();
    assert_eq!(i.basis_strings(), ["x", "y"]);
    assert_eq!(parse_ideal("(x^2)", &r).unwrap().basis_strings(), ["x^2"]);
    let lex = Ring::new(5, &["x", "y"], MonomialOrder::Lex).unwrap();
    let b = parse_ideal("(x^2 - y, y^2 - x)", &lex).unwrap().basis_strings();
    assert!(b.contains(&"y^4 + 4*y".to_string()));
    assert!(b.contains(&"x + 4*y^2".to_string()));
}

#[test]
fn normal_form_and_membership_examples() {
    let r = ring(5, 2);
    let p = |s: &str| parse_polynomial(s, &r).unwrap();
    let m = Ideal::maximal(&r);
    assert_eq!(m.normal_form(&Polynomial::one(&r)), Polynomial::one(&r));
    let i = parse_ideal("(x^2 - y)", &r).unwrap();
    assert_eq!(i.normal_form(&p("x^2*y")), p("y^2"));
    assert!(i.normal_form(&p("x^2 - y")).is_zero());
    assert!(m.contains(&p("x*y")));
    assert!(!m.contains(&p("x + 1")));
    let r3 = ring(5, 3);
    let cone = parse_ideal("(x*y, x*z, y*z)", &r3).unwrap().power(2);
    assert!(!cone.contains(&parse_polynomial("x*y*z", &r3).unwrap()));
}

#[test]
fn colon_intersection_equality_examples() {
    let r = ring(5, 3);
    let id = |s: &str| parse_ideal(s, &r).unwrap();
    assert_eq!(id("(x^2)").colon(&id("(x)")), id("(x)"));
    assert_eq!(id("(x^5, y^5)").colon(&id("(x^4)")), id("(x, y^5)"));
    assert_eq!(id("(x*y)").colon(&id("(x)")), id("(y)"));
    assert_eq!(id("(x)").intersect(&id("(y)")), id("(x*y)"));
    let i = id("(x^2 + y*z, x*y)");
    assert_eq!(i.intersect(&i), i);
    assert_eq!(id("(x, y)").intersect(&id("(x, z)")).intersect(&id("(y, z)")), id("(x*y, x*z, y*z)"));
    assert_eq!(id("(x, x + y)"), id("(x, y)"));
    assert_ne!(id("(x^2)"), id("(x)"));
    let r2 = ring(2, 2);
    assert_eq!(parse_ideal("(x + y, x*y)", &r2).unwrap(), parse_ideal("(x + y, x^2)", &r2).unwrap());
    // a non-monomial colon, checked by the defining property
    let j = id("(x + y)");
    let c = id("(x^3 - y*z, x*y^2)").colon(&j);
    for g in c.basis() {
        assert!(id("(x^3 - y*z, x*y^2)").contains(&(g * &j.generators()[0])));
    }
}

#[test]
fn colength_examples() {
    let r = ring(3, 2);
    assert_eq!(Ideal::maximal(&r).colength(), Colength::Finite(1));
    assert_eq!(parse_ideal("(x^2, y^3)", &r).unwrap().colength(), Colength::Finite(6));
    assert_eq!(parse_ideal("(x)", &r).unwrap().colength(), Colength::Infinite);
    let g = mono(&r, &[1, 1]);
    assert_eq!(Ideal::principal(g).colength(), Colength::Infinite);
}
