//! Combinatorics of monomial ideals: minimal generators, products, powers,
//! intersections and quotients on exponent vectors.

use std::collections::HashSet;

use crate::ring::{Monomial, Ring};

/// Minimal generators of the monomial ideal generated by `monos`, sorted
/// ascending in the ring's order.
pub(crate) fn minimalize(ring: &Ring, monos: Vec<Monomial>) -> Vec<Monomial> {
    let mut monos: Vec<Monomial> = monos
        .into_iter()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Monomial> = Vec::new();
    // kept[..lower] holds the generators of strictly smaller degree
    let mut lower = 0;
    for m in monos {
        if kept.last().is_some_and(|k| k.degree() < m.degree()) {
            lower = kept.len();
        }
        // a proper divisor has smaller degree, so it was seen already
        if !kept[..lower].iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| ring.cmp(a, b));
    kept
}

pub(crate) fn product(ring: &Ring, a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y));
        }
    }
    minimalize(ring, out)
}

pub(crate) fn power(ring: &Ring, gens: &[Monomial], mut n: u64) -> Vec<Monomial> {
    let nvars = ring.nvars();
    let mut acc = vec![Monomial::one(nvars)];
    let mut base = minimalize(ring, gens.to_vec());
    while n > 0 {
        if n & 1 == 1 {
            acc = product(ring, &acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = product(ring, &base, &base);
        }
    }
    acc
}

pub(crate) fn intersection(ring: &Ring, a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.lcm(y));
        }
    }
    minimalize(ring, out)
}

/// `(a : m)` for a single monomial `m`.
pub(crate) fn quotient(ring: &Ring, a: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    let out = a
        .iter()
        .map(|g| {
            Monomial::from_exponents(
                &g.exponents()
                    .iter()
                    .zip(m.exponents())
                    .map(|(x, y)| x.saturating_sub(*y))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    minimalize(ring, out)
}

/// Minimal generators of `(a^n)^[1/q]` for the monomial ideal `a`, found by
/// running over the multisets of `n` generators without forming `a^n`.
/// Gives up (`None`) when there are more than `limit` multisets.
pub(crate) fn root_of_power(
    ring: &Ring,
    gens: &[Monomial],
    n: u64,
    q: u64,
    limit: u64,
) -> Option<Vec<Monomial>> {
    let k = gens.len() as u64;
    if k == 0 {
        return Some(Vec::new());
    }
    // multiplicities of all but the last two generators are enumerated:
    // C(n + k - 3, k - 3) choices, abandoned once past the limit
    let mut count: u128 = 1;
    for i in 1..k.saturating_sub(2) {
        count = count * (n + i) as u128 / i as u128;
        if count > limit as u128 {
            return None;
        }
    }
    let d = ring.nvars();
    let mut roots: HashSet<Monomial> = HashSet::new();
    let mut sum = vec![0u64; d];
    go(0, n, gens, q, &mut sum, &mut roots);
    Some(minimalize(ring, roots.into_iter().collect()))
}

fn go(i: usize, left: u64, gens: &[Monomial], q: u64, sum: &mut [u64], roots: &mut HashSet<Monomial>) {
    let g = gens[i].exponents();
    if i + 1 == gens.len() {
        let floor: Vec<u32> = sum.iter().zip(g).map(|(&s, &a)| ((s + left * a as u64) / q) as u32).collect();
        roots.insert(Monomial::from_exponents(&floor));
        return;
    }
    if i + 2 == gens.len() {
        walk(sum, g, gens[i + 1].exponents(), left, q, roots);
        return;
    }
    for take in 0..=left {
        go(i + 1, left - take, gens, q, sum, roots);
        for (s, &a) in sum.iter_mut().zip(g) {
            *s += a as u64;
        }
    }
    for (s, &a) in sum.iter_mut().zip(g) {
        *s -= (left + 1) * a as u64;
    }
}

/// Floors of `(sum + j·g + (m - j)·h) / q` for `j = 0..=m`. The floors are
/// constant between breakpoints, so only one point per stretch is visited.
fn walk(sum: &[u64], g: &[u32], h: &[u32], m: u64, q: u64, roots: &mut HashSet<Monomial>) {
    let base: Vec<i128> = sum.iter().zip(h).map(|(&s, &b)| (s + m * b as u64) as i128).collect();
    let step: Vec<i128> = g.iter().zip(h).map(|(&a, &b)| a as i128 - b as i128).collect();
    let q = q as i128;
    let mut j: i128 = 0;
    while j <= m as i128 {
        let mut next = m as i128 + 1;
        let mut floor = Vec::with_capacity(base.len());
        for (&b, &s) in base.iter().zip(&step) {
            let v = b + j * s;
            let f = v / q;
            floor.push(f as u32);
            if s > 0 {
                next = next.min(((f + 1) * q - b + s - 1) / s);
            } else if s < 0 {
                next = next.min((b - f * q) / -s + 1);
            }
        }
        roots.insert(Monomial::from_exponents(&floor));
        j = next;
    }
}

/// Number of monomials outside the ideal generated by `lead`, or `None`
/// when that number is infinite.
pub(crate) fn count_standard(nvars: usize, lead: &[Monomial]) -> Option<u64> {
    let mut bounds = vec![u32::MAX; nvars];
    for m in lead {
        let e = m.exponents();
        let support: Vec<usize> = (0..nvars).filter(|&i| e[i] > 0).collect();
        match support.as_slice() {
            [] => return Some(0),
            [i] => bounds[*i] = bounds[*i].min(e[*i]),
            _ => {}
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let all: Vec<&[u32]> = lead.iter().map(|m| m.exponents()).collect();
    let mut prefix = vec![0u32; nvars];
    Some(count_rec(0, &bounds, &all, &mut prefix))
}

fn count_rec(depth: usize, bounds: &[u32], live: &[&[u32]], prefix: &mut [u32]) -> u64 {
    let n = bounds.len();
    if depth == n {
        return 1;
    }
    let mut total = 0;
    for v in 0..bounds[depth] {
        prefix[depth] = v;
        let next: Vec<&[u32]> = live.iter().copied().filter(|g| g[depth] <= v).collect();
        // some generator already divides every completion of this prefix
        if next.iter().any(|g| g[depth + 1..].iter().all(|&x| x == 0)) {
            break;
        }
        total += count_rec(depth + 1, bounds, &next, prefix);
    }
    total
}

/// Krull dimension of `S / (lead)`: the largest set of variables that
/// supports no generator.
pub(crate) fn dimension(nvars: usize, lead: &[Monomial]) -> Option<usize> {
    if lead.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u32> = lead
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    (0u32..(1 << nvars))
        .filter(|set| supports.iter().all(|s| s & !set != 0))
        .map(|set| set.count_ones() as usize)
        .max()
}
