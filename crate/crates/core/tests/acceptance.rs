//! Acceptance run: every criterion is timed against its limit and reported
//! as one PASS/FAIL line. Exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic;
use std::time::{Duration, Instant};

use common::{check_property, mono, ring, PROPERTIES};
use fsplit::{
    check_symbolic_containment, fedder_split_test, fpt_interval, frobenius_power, frobenius_root,
    fsignature_estimate, is_compatible, parse_ideal, parse_polynomial, splitting_coefficient,
    splitting_number_hypersurface, symbolic_power, test_ideal_quotient, test_ideal_regular, Budget, CartierMap,
    Exponent, Ideal, Polynomial,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: fsplit::Error) -> String {
    e.to_string()
}

fn cubic_splitting_pattern() -> Result<(), String> {
    for p in [5u64, 7, 11, 13, 31, 37] {
        let r = ring(p, 3);
        let f = parse_polynomial("x^3 + y^3 + z^3", &r).map_err(err)?;
        let split = fedder_split_test(&Ideal::principal(f.clone())).map_err(err)?;
        let coeff = splitting_coefficient(&f).map_err(err)?;
        ensure(split == (p % 3 == 1), || format!("p = {p}: split = {split}"))?;
        ensure((coeff != 0) == split, || format!("p = {p}: coefficient {coeff} disagrees"))?;
    }
    Ok(())
}

fn maximal_ideal_test_ideals() -> Result<(), String> {
    for p in [2u64, 3, 5] {
        let r = ring(p, 2);
        let m = Ideal::maximal(&r);
        for n in 1..=5u64 {
            let tau = test_ideal_regular(&m, Exponent::integer(n), &Budget::default()).map_err(err)?;
            ensure(tau.result == m.power(n - 1), || format!("p = {p}, n = {n}: got {}", tau.result))?;
        }
    }
    Ok(())
}

fn cubic_cone_test_ideal() -> Result<(), String> {
    for p in [5u64, 7] {
        let r = ring(p, 3);
        let i = parse_ideal("(x^3 + y^3 + z^3)", &r).map_err(err)?;
        let q = test_ideal_quotient(&i, None, &[], &Budget::default()).map_err(err)?;
        ensure(q.report.result == Ideal::maximal(&r), || format!("p = {p}: got {}", q.report.result))?;
    }
    Ok(())
}

fn quadric_cone_is_f_regular() -> Result<(), String> {
    for p in [2u64, 3, 5, 7] {
        let r = ring(p, 3);
        let i = parse_ideal("(x*z - y^2)", &r).map_err(err)?;
        let q = test_ideal_quotient(&i, None, &[], &Budget::default()).map_err(err)?;
        ensure(q.report.result.is_unit(), || format!("p = {p}: got {}", q.report.result))?;
    }
    Ok(())
}

fn f_signature_limits() -> Result<(), String> {
    let cases = [
        ("x*y - z^2", 1.0 / 2.0),
        ("x*y - z^3", 1.0 / 3.0),
        ("x*y - z^4", 1.0 / 4.0),
        ("x^2 + y^2 + z^2", 1.0 / 2.0),
    ];
    let r = ring(5, 3);
    for (text, limit) in cases {
        let f = parse_polynomial(text, &r).map_err(err)?;
        let rep = fsignature_estimate(&f, 3).map_err(err)?;
        let gap = |e: usize| (rep.samples[e - 1].ratio.to_f64() - limit).abs();
        ensure(gap(3) < 0.07, || format!("{text}: estimate {} is {} away", rep.estimate, gap(3)))?;
        ensure(gap(3) <= gap(2), || format!("{text}: gap grows from e = 2 to e = 3"))?;
        if text == "x*y - z^2" {
            ensure(rep.samples[0].a_e == 13, || format!("a_1 = {} instead of 13", rep.samples[0].a_e))?;
        }
    }
    Ok(())
}

fn regular_calibration() -> Result<(), String> {
    for p in [2u64, 3, 5] {
        for d in 1..=2usize {
            let r = ring(p, d + 1);
            let x = Polynomial::var(&r, 0);
            for e in 1..=3u32 {
                let a = splitting_number_hypersurface(&x, e).map_err(err)?;
                let expect = p.pow(e * d as u32);
                ensure(a == expect, || format!("p = {p}, d = {d}, e = {e}: {a} != {expect}"))?;
            }
        }
    }
    Ok(())
}

fn symbolic_power_containment() -> Result<(), String> {
    let r = ring(3, 3);
    let primes: Vec<Ideal> = ["(x, y)", "(x, z)", "(y, z)"]
        .iter()
        .map(|s| parse_ideal(s, &r))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    for n in 1..=3 {
        ensure(check_symbolic_containment(&primes, n, 3).map_err(err)?, || format!("fails for n = {n}"))?;
    }
    let xyz = parse_polynomial("x*y*z", &r).map_err(err)?;
    let i = symbolic_power(&primes, 1).map_err(err)?;
    ensure(symbolic_power(&primes, 2).map_err(err)?.contains(&xyz), || "xyz ∉ I^(2)".into())?;
    ensure(!i.power(2).contains(&xyz), || "xyz ∈ I^2".into())
}

fn property_suite() -> Result<(), String> {
    const CASES: usize = 200;
    let mut failures = Vec::new();
    for (index, name) in PROPERTIES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xacce97 + index as u64);
        let bad = (0..CASES).filter_map(|_| check_property(index, &mut rng).err()).collect::<Vec<_>>();
        if let Some(first) = bad.first() {
            failures.push(format!("{name}: {} violations, first: {first}", bad.len()));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

/// Every monomial of degree at most `deg` in two variables.
fn monomials(deg: u32) -> Vec<[u32; 2]> {
    (0..=deg).flat_map(|t| (0..=t).map(move |a| [a, t - a])).collect()
}

/// Monomials and sums of two distinct monomials of degree at most `deg`.
fn monomials_and_binomials(r: &std::sync::Arc<fsplit::Ring>, deg: u32) -> Vec<Polynomial> {
    let ms: Vec<Polynomial> = monomials(deg).iter().map(|m| mono(r, m)).collect();
    let mut out = ms.clone();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            out.push(&ms[i] + &ms[j]);
        }
    }
    out
}

fn frobenius_root_oracle() -> Result<(), String> {
    let r = ring(2, 2);
    // Roots of these ideals are generated by at most four monomials or
    // binomials of degree at most two, so the candidate family below holds
    // every possible answer.
    let small = monomials_and_binomials(&r, 2);
    let mut family: Vec<Ideal> = Vec::new();
    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    let mut add = |gens: Vec<Polynomial>| {
        let j = Ideal::new(&r, gens);
        let key = j.basis_strings();
        if !index.contains_key(&key) {
            index.insert(key, family.len());
            family.push(j);
        }
    };
    let n = small.len();
    for a in 0..n {
        add(vec![small[a].clone()]);
        for b in a + 1..n {
            add(vec![small[a].clone(), small[b].clone()]);
            for c in b + 1..n {
                add(vec![small[a].clone(), small[b].clone(), small[c].clone()]);
                for d in c + 1..n {
                    add(vec![small[a].clone(), small[b].clone(), small[c].clone(), small[d].clone()]);
                }
            }
        }
    }
    let frob: Vec<Ideal> = family.iter().map(|j| frobenius_power(j, 1)).collect::<Result<_, _>>().map_err(err)?;
    let words = family.len().div_ceil(64);

    // bit k of inside[g] says g ∈ family[k]^[2]
    let gens = monomials_and_binomials(&r, 4);
    let inside: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| {
            let mut bits = vec![0u64; words];
            for (k, jq) in frob.iter().enumerate() {
                if jq.contains(g) {
                    bits[k / 64] |= 1 << (k % 64);
                }
            }
            bits
        })
        .collect();

    let mut subset: HashMap<(usize, usize), bool> = HashMap::new();
    let mut checked = 0usize;
    for a in 0..gens.len() {
        for b in a..gens.len() {
            let i = if a == b {
                Ideal::new(&r, vec![gens[a].clone()])
            } else {
                Ideal::new(&r, vec![gens[a].clone(), gens[b].clone()])
            };
            let root = frobenius_root(&i, 1).map_err(err)?;
            let &k = index
                .get(&root.basis_strings())
                .ok_or_else(|| format!("root {root} of {i} is outside the candidate family"))?;
            let admissible: Vec<usize> = (0..family.len())
                .filter(|&j| (inside[a][j / 64] & inside[b][j / 64]) >> (j % 64) & 1 == 1)
                .collect();
            ensure(admissible.contains(&k), || format!("{i} ⊄ ({root})^[2]"))?;
            for &j in &admissible {
                let below = *subset.entry((k, j)).or_insert_with(|| family[k].is_subset(&family[j]));
                ensure(below, || format!("root {root} of {i} is not below admissible {}", family[j]))?;
            }
            checked += 1;
        }
    }
    ensure(checked == gens.len() * (gens.len() + 1) / 2, || "not every instance ran".into())
}

fn compatible_lattice() -> Result<(), String> {
    for p in [2u64, 3] {
        let r = ring(p, 2);
        let phi = CartierMap::new(parse_polynomial("x*y", &r).map_err(err)?.pow(p - 1), 1).map_err(err)?;
        let ms = monomials(2);
        let mut ideals: Vec<Ideal> = vec![Ideal::zero(&r), parse_ideal("(x + y)", &r).map_err(err)?];
        for mask in 1u32..(1 << ms.len()) {
            let gens = (0..ms.len()).filter(|k| mask >> k & 1 == 1).map(|k| mono(&r, &ms[k])).collect();
            ideals.push(Ideal::new(&r, gens));
        }
        let mut found = BTreeSet::new();
        for j in &ideals {
            if is_compatible(j, &phi).map_err(err)? {
                found.insert(j.basis_strings());
            }
        }
        let expected: BTreeSet<Vec<String>> = ["(0)", "(x)", "(y)", "(x*y)", "(x, y)", "(1)"]
            .iter()
            .map(|s| if *s == "(0)" { Ideal::zero(&r) } else { parse_ideal(s, &r).unwrap() })
            .map(|j| j.basis_strings())
            .collect();
        ensure(found == expected, || format!("p = {p}: compatible ideals {found:?}"))?;
    }
    Ok(())
}

fn fpt_convergence() -> Result<(), String> {
    let r = ring(5, 2);
    let m = Ideal::maximal(&r);
    for e in 1..=3u32 {
        let q = 5u64.pow(e);
        let b = fpt_interval(&m, e).map_err(err)?;
        let low = Exponent::new(2 * q - 2, q).map_err(err)?;
        let high = Exponent::new(2 * q - 1, q).map_err(err)?;
        ensure(b.low == low && b.high == high, || format!("e = {e}: [{}, {}]", b.low, b.high))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, u64, Check); 11] = [
        ("cubic splitting pattern", 10, cubic_splitting_pattern),
        ("test ideals of the maximal ideal", 30, maximal_ideal_test_ideals),
        ("cubic cone test ideal", 60, cubic_cone_test_ideal),
        ("quadric cone F-regularity", 60, quadric_cone_is_f_regular),
        ("F-signature limits", 300, f_signature_limits),
        ("regular calibration", 30, regular_calibration),
        ("symbolic power containment", 30, symbolic_power_containment),
        ("test ideal property suite", 300, property_suite),
        ("Frobenius root oracle", 60, frobenius_root_oracle),
        ("compatible ideal lattice", 10, compatible_lattice),
        ("fpt convergence", 10, fpt_convergence),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(*limit), || format!("over the {limit} s limit"))
        });
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2} s, limit {limit} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s, limit {limit} s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
