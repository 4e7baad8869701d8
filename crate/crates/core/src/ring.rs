//! Sparse multivariate polynomials over the prime field `Z/p`.
//!
//! A [`Ring`] fixes the prime, the ordered variable names and a monomial
//! order. Every [`Polynomial`] carries a shared handle to its ring and keeps
//! its terms sorted in ascending order, so the leading term is the last one.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Coefficients are representatives in `0..p`.
pub type Coeff = u32;

/// Largest prime accepted; keeps products of two coefficients inside `u64`
/// with plenty of room.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    DegLex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::DegLex => "deglex",
        }
    }

    fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegLex => degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)),
            MonomialOrder::DegRevLex => degree(a).cmp(&degree(b)).then_with(|| {
                for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                    if x != y {
                        // smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            "deglex" | "grlex" => Ok(MonomialOrder::DegLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

fn degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

/// Deterministic primality check by trial division; inputs are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The polynomial ring `F_p[x_1, ..., x_d]` together with a monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    prime: u32,
    vars: Vec<String>,
    order: MonomialOrder,
    // Number of leading variables that form an elimination block.
    block: usize,
}

impl Ring {
    pub fn new<S: AsRef<str>>(prime: u64, vars: &[S], order: MonomialOrder) -> Result<Arc<Ring>> {
        if prime >= MAX_PRIME || !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        if vars.is_empty() {
            return Err(Error::BadVariables("at least one variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::BadVariables(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(Error::BadVariables(format!("`{v}` appears twice")));
            }
        }
        Ok(Arc::new(Ring {
            prime: prime as u32,
            vars,
            order,
            block: 0,
        }))
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            order,
            ..self.clone()
        })
    }

    /// Same prime and order, different variables.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Arc<Ring>> {
        Ring::new(self.prime as u64, vars, self.order)
    }

    /// Prepends one fresh variable that is eliminated first: monomials are
    /// compared by its exponent, ties broken by the base order.
    pub(crate) fn with_elimination_variable(&self) -> Arc<Ring> {
        let mut name = String::from("_t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(name);
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring {
            prime: self.prime,
            vars,
            order: self.order,
            block: self.block + 1,
        })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.block == 0 {
            return self.order.compare(&a.0, &b.0);
        }
        let (ha, ta) = a.0.split_at(self.block);
        let (hb, tb) = b.0.split_at(self.block);
        MonomialOrder::DegRevLex
            .compare(ha, hb)
            .then_with(|| self.order.compare(ta, tb))
    }

    /// A key whose lexicographic order matches the monomial order. Only
    /// meaningful without an elimination block.
    pub(crate) fn sort_key(&self, m: &Monomial) -> Vec<i64> {
        debug_assert_eq!(self.block, 0);
        let deg = m.degree() as i64;
        let e = m.0.iter().map(|&a| a as i64);
        match self.order {
            MonomialOrder::Lex => e.collect(),
            MonomialOrder::DegLex => std::iter::once(deg).chain(e).collect(),
            MonomialOrder::DegRevLex => std::iter::once(deg).chain(e.rev().map(|a| -a)).collect(),
        }
    }

    // --- arithmetic in Z/p ---

    pub fn reduce(&self, c: i64) -> Coeff {
        c.rem_euclid(self.prime as i64) as Coeff
    }

    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a as u64 + b as u64;
        (s % self.prime as u64) as Coeff
    }

    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        let p = self.prime as u64;
        ((a as u64 + p - b as u64) % p) as Coeff
    }

    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        ((a as u64 * b as u64) % self.prime as u64) as Coeff
    }

    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.prime - a
        }
    }

    pub fn pow(&self, a: Coeff, mut n: u64) -> Coeff {
        let mut base = a % self.prime;
        let mut acc = 1 % self.prime;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero coefficient.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a % self.prime != 0, "inverse of zero");
        self.pow(a, self.prime as u64 - 2)
    }
}

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub(crate) SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        degree(&self.0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product; panics if an exponent exceeds `u32::MAX`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Every exponent multiplied by `k`, with overflow detection.
    pub fn scaled(&self, k: u64) -> Result<Monomial> {
        self.0
            .iter()
            .map(|&a| {
                (a as u64)
                    .checked_mul(k)
                    .filter(|&v| v <= u32::MAX as u64)
                    .map(|v| v as u32)
                    .ok_or(Error::ExponentOverflow(k))
            })
            .collect::<Result<SmallVec<_>>>()
            .map(Monomial)
    }

    pub(crate) fn write(&self, ring: &Ring, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&ring.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial: nonzero coefficients keyed by monomial, ascending in the
/// ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = ring.reduce(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: i64) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
        let c = ring.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: coefficients are reduced,
    /// duplicates merged and zeros dropped.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
            let c = ring.reduce(c);
            let e = acc.entry(m).or_insert(0);
            *e = ring.add(*e, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, map: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&a.0, &b.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` is sorted ascending with nonzero
    /// coefficients.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Less));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.last()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.terms.last().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|t| self.ring.cmp(&t.0, m))
            .map_or(0, |i| self.terms[i].1)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        let c = c % self.ring.prime;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.ring.mul(*a, c)))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.inv(c)),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: Coeff) -> Polynomial {
        let c = c % self.ring.prime;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        let terms = self
            .terms
            .iter()
            .map(|(n, a)| (n.mul(m), self.ring.mul(*a, c)))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// `self - c * m * g` in one merge pass.
    pub(crate) fn sub_scaled(&mut self, c: Coeff, m: &Monomial, g: &Polynomial) {
        let ring = &self.ring;
        let negc = ring.neg(c % ring.prime);
        if negc == 0 || g.is_zero() {
            return;
        }
        let lhs = std::mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(lhs.len() + g.terms.len());
        let mut a = lhs.into_iter().peekable();
        let mut b = g.terms.iter().map(|(n, x)| (n.mul(m), ring.mul(*x, negc))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (mono, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = ring.add(x, y);
                    if s != 0 {
                        out.push((mono, s));
                    }
                }
            }
        }
        self.terms = out;
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Coeff)> {
        self.terms.pop()
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        out.sub_scaled(self.ring.neg(1), &Monomial::one(self.ring.nvars()), other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        out.sub_scaled(1, &Monomial::one(self.ring.nvars()), other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(big.mul_term(m, *c));
        }
        let ring = &self.ring;
        let p = ring.prime as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for (m, a) in &small.terms {
            for (n, b) in &big.terms {
                let e = acc.entry(m.mul(n)).or_insert(0);
                *e = (*e + (*a as u64) * (*b as u64)) % p;
            }
        }
        let map = acc.into_iter().map(|(m, c)| (m, c as Coeff)).collect();
        Ok(Polynomial::from_map(ring, map))
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(p^e)`: in characteristic `p` this only scales every exponent
    /// vector by `p^e`, coefficients being fixed by Frobenius on `F_p`.
    pub fn frobenius_expand(&self, e: u32) -> Result<Polynomial> {
        let q = frobenius_q(self.ring.prime, e)?;
        if q == 1 {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.scaled(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let ring = &self.ring;
        Polynomial::from_terms(
            ring,
            self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
                let mut n = m.clone();
                let k = n.0[i];
                n.0[i] -= 1;
                (n, ring.mul(*c, ring.reduce(k as i64)) as i64)
            }),
        )
    }

    /// Rewrites this polynomial in `target`, mapping variable `i` to
    /// `target` variable `map[i]`, or to zero when `map[i]` is `None`.
    pub fn map_variables(&self, target: &Arc<Ring>, map: &[Option<usize>]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        Polynomial::from_terms(
            target,
            self.terms.iter().filter_map(|(m, c)| {
                let mut n = Monomial::one(target.nvars());
                for (i, &e) in m.0.iter().enumerate() {
                    match map[i] {
                        Some(j) => n.0[j] += e,
                        None if e > 0 => return None,
                        None => {}
                    }
                }
                Some((n, *c as i64))
            }),
        )
    }

    /// Exact division by `g`; `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = g.leading_term()?;
        let inv = self.ring.inv(*lc);
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let t = lm.quotient_of(&m);
            let k = self.ring.mul(c, inv);
            rest.sub_scaled(k, &t, g);
            quot.push((t, k));
        }
        quot.reverse();
        Some(Polynomial::from_sorted(&self.ring, quot))
    }
}

pub(crate) fn frobenius_q(p: u32, e: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(Error::ExponentOverflow(p as u64))
}

pub(crate) fn check_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                if *c != 1 {
                    write!(f, "{c}*")?;
                }
                m.write(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.neg(1))
    }
}
