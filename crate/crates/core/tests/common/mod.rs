//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use fsplit::{Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn ring(p: u64, d: usize) -> Arc<Ring> {
    Ring::new(p, &NAMES[..d], MonomialOrder::DegRevLex).unwrap()
}

pub fn mono(r: &Arc<Ring>, e: &[u32]) -> Polynomial {
    Polynomial::monomial(r, Monomial::from_exponents(e), 1)
}

pub fn monomial_ideal(r: &Arc<Ring>, gens: &[Vec<u32>]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| mono(r, g)).collect())
}

/// Exponent vectors of a random monomial ideal with `1..=max_gens` proper
/// generators, each exponent at most `max_exp`.
pub fn random_exponents(rng: &mut ChaCha8Rng, d: usize, max_gens: usize, max_exp: u32) -> Vec<Vec<u32>> {
    let k = rng.gen_range(1..=max_gens);
    (0..k)
        .map(|_| loop {
            let g: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=max_exp)).collect();
            if g.iter().any(|&a| a > 0) {
                break g;
            }
        })
        .collect()
}

/// Every exponent vector in `[0, bound]^d`.
pub fn box_points(d: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Membership in the monomial ideal generated by `gens`, by divisibility.
pub fn divides_some(gens: &[Vec<u32>], v: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(v).all(|(a, b)| a <= b))
}

/// Whether the monomial ideal `ideal` has exactly the monomials of the box
/// predicted by `member`.
pub fn agrees_on_box(r: &Arc<Ring>, ideal: &Ideal, bound: u32, member: impl Fn(&[u32]) -> bool) -> bool {
    box_points(r.nvars(), bound)
        .iter()
        .all(|v| ideal.contains(&mono(r, v)) == member(v))
}

/// The image of `f` under `x_last ↦ 0`, living in the first `d - 1` variables.
pub fn drop_last(f: &Polynomial, target: &Arc<Ring>) -> Polynomial {
    let d = f.ring().nvars();
    let map: Vec<Option<usize>> = (0..d).map(|i| (i + 1 < d).then_some(i)).collect();
    f.map_variables(target, &map)
}

/// Rank over `F_p` of a dense matrix, by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(k) = (rank..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(rank, k);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `dim_k (g · S/m^[q])`, which equals the colength of `(m^[q] : g)`.
/// The multiplication map preserves the grading given by `weights` when
/// `g` is homogeneous for it, so the rank is taken one degree at a time.
pub fn multiplication_rank(g: &Polynomial, q: u32, weights: &[u64]) -> u64 {
    let ring = g.ring();
    let p = ring.prime() as u64;
    let d = ring.nvars();
    let wdeg = |e: &[u32]| e.iter().zip(weights).map(|(&a, &w)| a as u64 * w).sum::<u64>();
    let shift = wdeg(g.terms()[0].0.exponents());
    assert!(g.terms().iter().all(|(m, _)| wdeg(m.exponents()) == shift), "g must be homogeneous");
    let mut by_degree: std::collections::BTreeMap<u64, Vec<Vec<u32>>> = Default::default();
    for v in box_points(d, q - 1) {
        by_degree.entry(wdeg(&v)).or_default().push(v);
    }
    let mut total = 0u64;
    for (deg, sources) in &by_degree {
        let Some(targets) = by_degree.get(&(deg + shift)) else {
            continue;
        };
        let index: std::collections::HashMap<&Vec<u32>, usize> =
            targets.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let rows: Vec<Vec<u64>> = sources
            .iter()
            .map(|s| {
                let mut row = vec![0u64; targets.len()];
                for (m, c) in g.terms() {
                    let t: Vec<u32> = s.iter().zip(m.exponents()).map(|(a, b)| a + b).collect();
                    if let Some(&k) = index.get(&t) {
                        row[k] = (row[k] + *c as u64) % p;
                    }
                }
                row
            })
            .collect();
        total += rank_mod_p(rows, p) as u64;
    }
    total
}

use fsplit::{test_ideal_regular, Budget, Exponent};

/// A random pair `(a, t)` for the test-ideal property checks.
#[derive(Clone, Debug)]
pub struct Pair {
    pub p: u64,
    pub d: usize,
    pub gens: Vec<Vec<u32>>,
    pub t: Exponent,
}

impl Pair {
    pub fn random(rng: &mut ChaCha8Rng, min_d: usize) -> Pair {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let d = rng.gen_range(min_d..=3);
        let gens = random_exponents(rng, d, 3, 3);
        let den = [1, p][rng.gen_range(0..2)];
        let t = Exponent::new(rng.gen_range(1..=2 * den), den).unwrap();
        Pair { p, d, gens, t }
    }

    pub fn ring(&self) -> Arc<Ring> {
        ring(self.p, self.d)
    }

    pub fn ideal(&self) -> Ideal {
        monomial_ideal(&self.ring(), &self.gens)
    }
}

pub fn property_budget() -> Budget {
    Budget { max_e: 10, confirmations: 2 }
}

pub fn tau(a: &Ideal, t: Exponent) -> Result<Ideal, String> {
    test_ideal_regular(a, t, &property_budget())
        .map(|r| r.result)
        .map_err(|e| format!("τ({a}^{t}) failed: {e}"))
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub const PROPERTIES: [&str; 8] = [
    "(1) monotone in a",
    "(2) monotone in t",
    "(3) powers and exponents",
    "(6) right constancy",
    "(7) a inside τ(a)",
    "(8) Briançon-Skoda",
    "(9) restriction",
    "(10) subadditivity",
];

/// Checks one test-ideal property on a fresh random instance.
pub fn check_property(index: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let min_d = if index == 6 { 2 } else { 1 };
    let pair = Pair::random(rng, min_d);
    let r = pair.ring();
    let a = pair.ideal();
    let t = pair.t;
    let ctx = |msg: String| format!("{msg} for a = {a}, t = {t}, p = {}", pair.p);
    match index {
        0 => {
            let mut more = pair.gens.clone();
            more.extend(random_exponents(rng, pair.d, 1, 3));
            let b = monomial_ideal(&r, &more);
            expect(tau(&a, t)?.is_subset(&tau(&b, t)?), || ctx(format!("τ(a^t) ⊄ τ(b^t) with b = {b}")))
        }
        1 => {
            let bump = Exponent::new(rng.gen_range(1..=3), [2, pair.p, pair.p * pair.p][rng.gen_range(0..3)]).unwrap();
            let larger = t.add(bump);
            expect(tau(&a, larger)?.is_subset(&tau(&a, t)?), || ctx(format!("τ(a^{larger}) ⊄ τ(a^t)")))
        }
        2 => {
            let n = rng.gen_range(1..=3u64);
            let lhs = tau(&a.power(n), t)?;
            let rhs = tau(&a, t.mul_int(n))?;
            expect(lhs == rhs, || ctx(format!("τ((a^{n})^t) = {lhs} but τ(a^(nt)) = {rhs}")))
        }
        3 => {
            let base = tau(&a, t)?;
            let p = pair.p;
            let mut step = None;
            for e in 1..=6u32 {
                let eps = Exponent::new(1, p.pow(e)).unwrap();
                if tau(&a, t.add(eps))? == base {
                    step = Some(eps);
                    break;
                }
            }
            let eps = step.ok_or_else(|| ctx("no constancy step down to p^-6".into()))?;
            for k in [2u64, 3, p + 1] {
                let smaller = eps.div_int(k).unwrap();
                let value = tau(&a, t.add(smaller))?;
                if value != base {
                    return Err(ctx(format!("τ changes at t + {smaller} inside the step {eps}")));
                }
            }
            Ok(())
        }
        4 => expect(a.is_subset(&tau(&a, Exponent::ONE)?), || ctx("a ⊄ τ(a)".into())),
        5 => {
            let a_min = Ideal::new(&r, a.basis().to_vec());
            let gens = a_min.generators().len() as u64;
            let l = rng.gen_range(gens..=4.max(gens));
            let lhs = tau(&a_min, Exponent::integer(l))?;
            let rhs = a_min.product(&tau(&a_min, Exponent::integer(l - 1))?);
            expect(lhs == rhs, || ctx(format!("τ(a^{l}) = {lhs} but a·τ(a^{}) = {rhs}", l - 1)))
        }
        6 => {
            let small = ring(pair.p, pair.d - 1);
            let cut: Vec<Vec<u32>> =
                pair.gens.iter().filter(|g| *g.last().unwrap() == 0).map(|g| g[..pair.d - 1].to_vec()).collect();
            if cut.is_empty() {
                return Ok(());
            }
            let lhs = tau(&monomial_ideal(&small, &cut), t)?;
            let big = tau(&a, t)?;
            let image = Ideal::new(&small, big.basis().iter().map(|g| drop_last(g, &small)).collect());
            expect(lhs.is_subset(&image), || ctx(format!("τ(ā^t) = {lhs} ⊄ {image}")))
        }
        7 => {
            let n = rng.gen_range(2..=3u64);
            let lhs = tau(&a, t.mul_int(n))?;
            let rhs = tau(&a, t)?.power(n);
            expect(lhs.is_subset(&rhs), || ctx(format!("τ(a^({n}t)) ⊄ τ(a^t)^{n}")))
        }
        _ => unreachable!(),
    }
}
