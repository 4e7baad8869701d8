//! Zero-dimensional ideals held as a standard-monomial basis plus rewriting
//! rules, and the colon `(I^[p] : g)` computed by linear algebra on
//! `S/I^[p]` instead of elimination.
//!
//! Normal forms modulo `I^[p]` never touch a Gröbner basis of `I^[p]`:
//! writing `x^m = x^{p·u + a}` with `a ∈ [0, p)^d`, one has
//! `NF(x^m) = NF_I(x^u)^[p] · x^a`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use crate::ring::{Coeff, Monomial, Polynomial, Ring};

type Sparse = Rc<Vec<(u32, Coeff)>>;

pub(crate) struct ZeroDim {
    ring: Arc<Ring>,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    // minimal non-standard monomial -> its normal form
    rules: HashMap<Monomial, Sparse>,
    memo: HashMap<Monomial, Sparse>,
    units: Vec<Sparse>,
}

fn lowered(m: &Monomial, i: usize) -> Monomial {
    let mut out = m.clone();
    out.0[i] -= 1;
    out
}

fn raised(m: &Monomial, i: usize) -> Monomial {
    let mut out = m.clone();
    out.0[i] += 1;
    out
}

impl ZeroDim {
    fn empty(ring: &Arc<Ring>) -> ZeroDim {
        ZeroDim {
            ring: ring.clone(),
            standard: Vec::new(),
            index: HashMap::new(),
            rules: HashMap::new(),
            memo: HashMap::new(),
            units: Vec::new(),
        }
    }

    /// The homogeneous maximal ideal.
    pub(crate) fn maximal(ring: &Arc<Ring>) -> ZeroDim {
        let mut z = ZeroDim::empty(ring);
        z.push_standard(Monomial::one(ring.nvars()));
        for i in 0..ring.nvars() {
            z.rules.insert(Monomial::var(ring.nvars(), i), Rc::new(Vec::new()));
        }
        z
    }

    fn push_standard(&mut self, m: Monomial) -> u32 {
        let id = self.standard.len() as u32;
        self.index.insert(m.clone(), id);
        self.standard.push(m);
        self.units.push(Rc::new(vec![(id, 1)]));
        id
    }

    pub(crate) fn colength(&self) -> u64 {
        self.standard.len() as u64
    }

    fn lookup(&self, m: &Monomial) -> Option<Sparse> {
        if let Some(&id) = self.index.get(m) {
            return Some(self.units[id as usize].clone());
        }
        self.rules.get(m).or_else(|| self.memo.get(m)).cloned()
    }

    /// Normal form of `x^u` as coordinates on the standard monomials.
    ///
    /// For non-standard `x^u` pick `i` with `x^u / x_i` non-standard; then
    /// `NF(x^u) = Σ c_s NF(x_i x^s)` over `NF(x^u / x_i) = Σ c_s x^s`. Every
    /// dependency is smaller than `x^u`, so an explicit stack replaces the
    /// recursion.
    pub(crate) fn normal_form(&mut self, u: &Monomial) -> Sparse {
        if let Some(v) = self.lookup(u) {
            return v;
        }
        let p = self.ring.prime() as u64;
        let n = self.ring.nvars();
        let mut stack: Vec<(Monomial, usize, u8)> = vec![(u.clone(), 0, 0)];
        while let Some((m, var, phase)) = stack.pop() {
            match phase {
                0 => {
                    if self.lookup(&m).is_some() {
                        continue;
                    }
                    let i = (0..n)
                        .find(|&i| m.0[i] > 0 && !self.index.contains_key(&lowered(&m, i)))
                        .expect("a minimal non-standard monomial must carry a rule");
                    let below = lowered(&m, i);
                    let ready = self.lookup(&below).is_some();
                    stack.push((m, i, 1));
                    if !ready {
                        stack.push((below, 0, 0));
                    }
                }
                1 => {
                    let below = self.lookup(&lowered(&m, var)).unwrap();
                    stack.push((m, var, 2));
                    for &(s, _) in below.iter() {
                        let up = raised(&self.standard[s as usize], var);
                        if self.lookup(&up).is_none() {
                            stack.push((up, 0, 0));
                        }
                    }
                }
                _ => {
                    let below = self.lookup(&lowered(&m, var)).unwrap();
                    let mut acc: HashMap<u32, u64> = HashMap::new();
                    for &(s, c) in below.iter() {
                        let up = raised(&self.standard[s as usize], var);
                        for &(t, d) in self.lookup(&up).unwrap().iter() {
                            let e = acc.entry(t).or_insert(0);
                            *e = (*e + c as u64 * d as u64) % p;
                        }
                    }
                    let mut v: Vec<(u32, Coeff)> =
                        acc.into_iter().filter(|&(_, c)| c != 0).map(|(t, c)| (t, c as Coeff)).collect();
                    v.sort_unstable();
                    self.memo.insert(m, Rc::new(v));
                }
            }
        }
        self.lookup(u).unwrap()
    }

    /// The ideal as a reduced Gröbner basis.
    #[cfg(test)]
    pub(crate) fn to_ideal(&self) -> crate::ideal::Ideal {
        use crate::ideal::Ideal;
        let ring = &self.ring;
        let mut basis: Vec<Polynomial> = self
            .rules
            .iter()
            .map(|(lead, tail)| {
                let mut terms = vec![(lead.clone(), 1i64)];
                terms.extend(tail.iter().map(|&(s, c)| (self.standard[s as usize].clone(), -(c as i64))));
                Polynomial::from_terms(ring, terms)
            })
            .collect();
        if basis.iter().any(|g| g.is_constant()) {
            return Ideal::unit(ring);
        }
        basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Ideal::from_reduced_basis(ring, basis)
    }

    /// `(I^[p] : g)` for this ideal `I`. `weights` must make `g` and every
    /// rule homogeneous; all-zero weights are always valid but slower.
    pub(crate) fn frobenius_colon(&mut self, g: &Polynomial, weights: &[u64]) -> ZeroDim {
        let ring = self.ring.clone();
        let n = ring.nvars();
        let p = ring.prime() as u64;
        let radix = p.pow(n as u32);
        let weight = |m: &Monomial| m.0.iter().zip(weights).map(|(&a, &w)| a as u64 * w).sum::<u64>();

        let mut out = ZeroDim::empty(&ring);
        let mut queue: BTreeMap<Vec<i64>, Monomial> = BTreeMap::new();
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut nonstandard: HashSet<Monomial> = HashSet::new();
        let mut blocks: HashMap<u64, Block> = HashMap::new();
        let one = Monomial::one(n);
        queue.insert(ring.sort_key(&one), one.clone());
        seen.insert(one);

        while let Some((_, m)) = queue.pop_first() {
            if (0..n).any(|j| m.0[j] > 0 && nonstandard.contains(&lowered(&m, j))) {
                nonstandard.insert(m);
                continue;
            }
            let mut image: HashMap<u64, u64> = HashMap::new();
            for (t, c) in g.terms() {
                let e = m.mul(t);
                let mut base = Monomial::one(n);
                let mut digit = 0u64;
                for i in 0..n {
                    base.0[i] = e.0[i] / p as u32;
                    digit = digit * p + (e.0[i] as u64 % p);
                }
                for &(s, d) in self.normal_form(&base).iter() {
                    let slot = image.entry(s as u64 * radix + digit).or_insert(0);
                    *slot = (*slot + *c as u64 * d as u64) % p;
                }
            }
            let block = blocks.entry(weight(&m)).or_default();
            match block.reduce(image, p) {
                Some(comb) => {
                    let mut tail: Vec<(u32, Coeff)> =
                        comb.into_iter().map(|(k, c)| (block.ids[k as usize], c as Coeff)).collect();
                    tail.sort_unstable();
                    out.rules.insert(m.clone(), Rc::new(tail));
                    nonstandard.insert(m);
                }
                None => {
                    let id = out.push_standard(m.clone());
                    block.ids.push(id);
                    for i in 0..n {
                        let up = raised(&m, i);
                        if seen.insert(up.clone()) {
                            queue.insert(ring.sort_key(&up), up);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Sparse echelon form of the images of the standard monomials of one
/// weight, with each row's expression in terms of those images.
#[derive(Default)]
struct Block {
    columns: HashMap<u64, u32>,
    pivots: HashMap<u32, usize>,
    rows: Vec<Row>,
    ids: Vec<u32>,
}

struct Row {
    // sorted by column; the first entry is the pivot and equals 1
    entries: Vec<(u32, u64)>,
    combination: Vec<(u32, u64)>,
}

fn inverse(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Block {
    /// Reduces `image`. If it lies in the span of the previous images,
    /// returns its coordinates in them; otherwise records a new row.
    fn reduce(&mut self, image: HashMap<u64, u64>, p: u64) -> Option<Vec<(u32, u64)>> {
        let mut acc: BTreeMap<u32, u64> = BTreeMap::new();
        for (key, c) in image {
            if c == 0 {
                continue;
            }
            let next = self.columns.len() as u32;
            let col = *self.columns.entry(key).or_insert(next);
            acc.insert(col, c);
        }
        let mut comb: HashMap<u32, u64> = HashMap::new();
        let mut cursor = 0u32;
        loop {
            let hit = acc
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(&c, &v)| (c, v));
            let Some((col, f)) = hit else { break };
            let row = &self.rows[self.pivots[&col]];
            let neg = p - f;
            for &(c, r) in &row.entries {
                let slot = acc.entry(c).or_insert(0);
                *slot = (*slot + neg * r) % p;
                if *slot == 0 {
                    acc.remove(&c);
                }
            }
            for &(k, t) in &row.combination {
                let slot = comb.entry(k).or_insert(0);
                *slot = (*slot + f * t) % p;
            }
            cursor = col + 1;
        }
        let mut comb: Vec<(u32, u64)> = comb.into_iter().filter(|&(_, c)| c != 0).collect();
        comb.sort_unstable();
        let Some((&pivot, &lead)) = acc.iter().next() else {
            return Some(comb);
        };
        let inv = inverse(lead, p);
        let entries = acc.into_iter().map(|(c, v)| (c, v * inv % p)).collect();
        let mut combination: Vec<(u32, u64)> = comb.into_iter().map(|(k, c)| (k, (p - c) * inv % p)).collect();
        combination.push((self.ids.len() as u32, inv));
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { entries, combination });
        None
    }
}
