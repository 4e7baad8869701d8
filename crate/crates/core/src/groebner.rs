//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller pair criteria, plus multivariate division.

use std::sync::Arc;

use crate::monomial_ideal;
use crate::ring::{Monomial, Polynomial, Ring};

/// Remainder of `f` under full multivariate division by `basis`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    reduce_by(f, basis.iter())
}

pub(crate) fn reduce_by<'a, I>(f: &Polynomial, basis: I) -> Polynomial
where
    I: Iterator<Item = &'a Polynomial> + Clone,
{
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.leading_term().cloned() {
        let divisor = basis
            .clone()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let k = ring.mul(c, ring.inv(*lc));
                p.sub_scaled(k, &lm.quotient_of(&m), g);
            }
            None => {
                p.pop_leading();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    Polynomial::from_sorted(&ring, rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Buchberger {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
    sugar: Vec<u64>,
    // indices into `polys` forming the current basis
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let d = lcm.degree();
        (self.sugar[i] + d - self.lm(i).degree()).max(self.sugar[j] + d - self.lm(j).degree())
    }

    fn insert(&mut self, h: Polynomial, sugar: u64) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        let lh = self.lm(hi).clone();

        let mut fresh: Vec<(usize, Monomial)> = self
            .basis
            .iter()
            .map(|&g| (g, lh.lcm(self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = fresh.pop() {
            let coprime = lh.is_coprime(self.lm(g));
            if coprime
                || (!fresh.iter().any(|(_, l2)| l2.divides(&l))
                    && !kept.iter().any(|(_, l2)| l2.divides(&l)))
            {
                kept.push((g, l));
            }
        }
        // product criterion
        kept.retain(|(g, _)| !lh.is_coprime(self.lm(*g)));

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lm(p.i).lcm(&lh) != p.lcm && lm(p.j).lcm(&lh) != p.lcm)
        });
        for (g, l) in kept {
            let sugar = self.pair_sugar(g, hi, &l);
            self.pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                sugar,
            });
        }

        let polys = &self.polys;
        self.basis
            .retain(|&g| !lh.divides(polys[g].leading_monomial().unwrap()));
        self.basis.push(hi);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ring.cmp(&a.lcm, &b.lcm))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> Polynomial {
        let f = &self.polys[pair.i];
        let g = &self.polys[pair.j];
        let mut s = f.mul_term(&self.lm(pair.i).quotient_of(&pair.lcm), 1);
        s.sub_scaled(1, &self.lm(pair.j).quotient_of(&pair.lcm), g);
        s
    }

    fn current(&self) -> impl Iterator<Item = &Polynomial> + Clone {
        self.basis.iter().map(move |&i| &self.polys[i])
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// ascending leading monomial. The zero ideal yields an empty basis.
pub fn reduced_basis(ring: &Arc<Ring>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if gens.is_empty() {
        return Vec::new();
    }
    if gens.iter().any(|g| g.is_constant()) {
        return vec![Polynomial::one(ring)];
    }
    if gens.iter().all(|g| g.is_monomial()) {
        let monos = gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        return monomial_ideal::minimalize(ring, monos)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m, 1))
            .collect();
    }

    let mut bb = Buchberger {
        ring: ring.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        basis: Vec::new(),
        pairs: Vec::new(),
    };
    let mut sorted = gens;
    sorted.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in sorted {
        let r = reduce_by(&g, bb.current());
        if !r.is_zero() {
            let sugar = g.total_degree();
            bb.insert(r.monic(), sugar);
        }
    }
    while let Some(pair) = bb.next_pair() {
        let s = bb.spoly(&pair);
        let r = reduce_by(&s, bb.current());
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        bb.insert(r.monic(), pair.sugar);
    }

    let mut basis: Vec<Polynomial> = bb.basis.iter().map(|&i| bb.polys[i].clone()).collect();
    interreduce(&mut basis);
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    basis
}

/// Reduces every tail against the other elements. Expects a minimal basis
/// with monic elements.
fn interreduce(basis: &mut [Polynomial]) {
    for k in 0..basis.len() {
        let mut g = basis[k].clone();
        let lead = g.pop_leading().unwrap();
        let others = basis
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != k)
            .map(|(_, p)| p);
        let tail = reduce_by(&g, others);
        let mut terms = tail.terms().to_vec();
        terms.push(lead);
        basis[k] = Polynomial::from_sorted(g.ring(), terms);
    }
}

/// Checks the defining property of a Gröbner basis: every S-polynomial
/// reduces to zero. Used by tests as an independent certificate.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for (a, f) in basis.iter().enumerate() {
        for g in &basis[a + 1..] {
            let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
            let l = lf.lcm(lg);
            let mut s = f.monic().mul_term(&lf.quotient_of(&l), 1);
            s.sub_scaled(1, &lg.quotient_of(&l), &g.monic());
            if !reduce(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}
