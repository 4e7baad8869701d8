//! Ideals with a write-once cached reduced Gröbner basis, and the ideal
//! toolbox built on top of it.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::groebner;
use crate::monomial_ideal;
use crate::ring::{same_ring, Monomial, Polynomial, Ring};

/// Number of standard monomials of an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    /// Panics if a generator lives in another ring.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Ideal {
        for g in &gens {
            assert!(same_ring(ring, g.ring()), "generator from a different ring");
        }
        Ideal {
            ring: ring.clone(),
            gens,
            basis: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::zero(ring)])
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
    }

    pub fn principal(f: Polynomial) -> Ideal {
        let ring = f.ring().clone();
        Ideal::new(&ring, vec![f])
    }

    pub(crate) fn from_monomials(ring: &Arc<Ring>, monos: Vec<Monomial>) -> Ideal {
        let basis = monomial_ideal::minimalize(ring, monos);
        let polys: Vec<Polynomial> = basis.into_iter().map(|m| Polynomial::monomial(ring, m, 1)).collect();
        Ideal::from_reduced_basis(ring, polys)
    }

    /// Wraps a basis already known to be reduced and sorted.
    pub(crate) fn from_reduced_basis(ring: &Arc<Ring>, basis: Vec<Polynomial>) -> Ideal {
        let gens = if basis.is_empty() {
            vec![Polynomial::zero(ring)]
        } else {
            basis.clone()
        };
        let cell = OnceLock::new();
        let _ = cell.set(basis);
        Ideal {
            ring: ring.clone(),
            gens,
            basis: cell,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed on first use.
    pub fn basis(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| groebner::reduced_basis(&self.ring, &self.gens))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.basis(), [g] if g.is_constant())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// True when the ideal is generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.basis().iter().all(|g| g.is_monomial())
    }

    pub(crate) fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        if self.gens.iter().all(|g| g.is_zero() || g.is_monomial()) {
            Some(
                self.gens
                    .iter()
                    .filter_map(|g| g.leading_monomial().cloned())
                    .collect(),
            )
        } else if self.is_monomial() {
            Some(self.leading_monomials())
        } else {
            None
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        groebner::reduce(f, self.basis())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        self.normal_form(f).is_zero()
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        if let (Some(a), Some(b)) = (self.monomial_generators(), other.monomial_generators()) {
            return Ideal::from_monomials(&self.ring, monomial_ideal::product(&self.ring, &a, &b));
        }
        let mut gens = Vec::new();
        for f in self.basis() {
            for g in other.basis() {
                gens.push(f * g);
            }
        }
        dedup(&mut gens);
        Ideal::new(&self.ring, gens)
    }

    /// `self^n`, with `self^0 = (1)`.
    pub fn power(&self, n: u64) -> Ideal {
        if n == 0 {
            return Ideal::unit(&self.ring);
        }
        if let Some(m) = self.monomial_generators() {
            return Ideal::from_monomials(&self.ring, monomial_ideal::power(&self.ring, &m, n));
        }
        // every product of n generators, one per multiset of indices
        let base: Vec<Polynomial> = self.basis().to_vec();
        let mut layer: Vec<(usize, Polynomial)> = vec![(0, Polynomial::one(&self.ring))];
        for _ in 0..n {
            let mut next = Vec::new();
            for (start, f) in &layer {
                for (k, g) in base.iter().enumerate().skip(*start) {
                    next.push((k, f * g));
                }
            }
            layer = next;
        }
        let mut gens: Vec<Polynomial> = layer.into_iter().map(|(_, f)| f).collect();
        dedup(&mut gens);
        Ideal::new(&self.ring, gens)
    }

    /// Ideal equality via reduced bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        same_ring(&self.ring, &other.ring) && self.basis() == other.basis()
    }

    /// `self ∩ other`, by eliminating `t` from `t·self + (1 - t)·other`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        assert!(same_ring(&self.ring, &other.ring), "ideals from different rings");
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.monomial_generators(), other.monomial_generators()) {
            return Ideal::from_monomials(&self.ring, monomial_ideal::intersection(&self.ring, &a, &b));
        }
        self.intersect_by_elimination(other)
    }

    pub(crate) fn intersect_by_elimination(&self, other: &Ideal) -> Ideal {
        let ring = &self.ring;
        let ext = ring.with_elimination_variable();
        let n = ring.nvars();
        let lift: Vec<Option<usize>> = (1..=n).map(Some).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for f in self.basis() {
            gens.push(&t * &f.map_variables(&ext, &lift));
        }
        for g in other.basis() {
            gens.push(&one_minus_t * &g.map_variables(&ext, &lift));
        }
        let basis = groebner::reduced_basis(&ext, &gens);
        let mut drop: Vec<Option<usize>> = vec![None];
        drop.extend((0..n).map(Some));
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| g.map_variables(ring, &drop))
            .collect();
        // elimination keeps the basis reduced for the restricted order
        let mut kept = kept;
        kept.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Ideal::from_reduced_basis(ring, kept)
    }

    /// `(self : other) = { f : f·other ⊆ self }`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        assert!(same_ring(&self.ring, &other.ring), "ideals from different rings");
        let mut acc: Option<Ideal> = None;
        for g in other.basis() {
            let q = self.colon_element(g);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// `(self : g)` for a single element, computed as `(self ∩ (g)) / g`.
    pub fn colon_element(&self, g: &Polynomial) -> Ideal {
        let ring = &self.ring;
        if g.is_zero() || self.is_unit() || self.contains(g) {
            return Ideal::unit(ring);
        }
        if g.is_monomial() {
            if let Some(a) = self.monomial_generators() {
                let m = g.leading_monomial().unwrap();
                return Ideal::from_monomials(ring, monomial_ideal::quotient(ring, &a, m));
            }
        }
        if let [h] = self.basis() {
            if let Some(q) = h.exact_div(g) {
                return Ideal::principal(q);
            }
        }
        let meet = self.intersect(&Ideal::principal(g.clone()));
        let gens = meet
            .basis()
            .iter()
            .map(|f| f.exact_div(g).expect("intersection element not divisible"))
            .collect();
        Ideal::new(ring, gens)
    }

    /// Number of standard monomials of the leading-term ideal.
    pub fn colength(&self) -> Colength {
        if self.is_zero() {
            return Colength::Infinite;
        }
        match monomial_ideal::count_standard(self.ring.nvars(), &self.leading_monomials()) {
            Some(n) => Colength::Finite(n),
            None => Colength::Infinite,
        }
    }

    /// Krull dimension of the quotient ring, `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return Some(self.ring.nvars());
        }
        monomial_ideal::dimension(self.ring.nvars(), &self.leading_monomials())
    }

    /// `f ∈ √self`, by testing `1 ∈ self + (1 - t·f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> bool {
        if self.contains(f) {
            return true;
        }
        let ext = self.ring.with_elimination_variable();
        let n = self.ring.nvars();
        let lift: Vec<Option<usize>> = (1..=n).map(Some).collect();
        let mut gens: Vec<Polynomial> = self.basis().iter().map(|g| g.map_variables(&ext, &lift)).collect();
        let t = Polynomial::var(&ext, 0);
        gens.push(&Polynomial::one(&ext) - &(&t * &f.map_variables(&ext, &lift)));
        matches!(groebner::reduced_basis(&ext, &gens).as_slice(), [g] if g.is_constant())
    }

    /// Sorted printed generators of the reduced basis.
    pub fn basis_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.basis().iter().map(|g| g.to_string()).collect();
        if v.is_empty() {
            v.push("0".into());
        }
        v.sort();
        v
    }
}

/// Monic greatest common divisor, read off from `(f) ∩ (g) = (lcm(f, g))`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.ring());
    }
    let meet = Ideal::principal(f.clone()).intersect(&Ideal::principal(g.clone()));
    let lcm = &meet.basis()[0];
    (f * g).exact_div(lcm).expect("lcm divides the product").monic()
}

/// Whether `f` has no repeated factor: over a perfect field this holds iff
/// `f` shares no factor with all of its partial derivatives.
pub fn is_squarefree(f: &Polynomial) -> bool {
    if f.is_zero() {
        return false;
    }
    let mut h = f.monic();
    for i in 0..f.ring().nvars() {
        if h.is_constant() {
            break;
        }
        h = gcd(&h, &f.derivative(i));
    }
    h.is_constant()
}

fn dedup(gens: &mut Vec<Polynomial>) {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| !g.is_zero() && seen.insert(g.monic()));
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis();
        if basis.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, g) in basis.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}
