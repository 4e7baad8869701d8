//! Frobenius powers and roots of ideals, the Fedder splitting test, the
//! ν-counter behind F-pure thresholds, and compatibility of ideals with
//! maps of the form `Ψ_e ∘ g^{1/p^e}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{frobenius_q, Coeff, Monomial, Polynomial, Ring};

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
///
/// Raising a reduced Gröbner basis to the `p^e`-th power gives the reduced
/// basis of the Frobenius power, so no new basis computation happens here.
pub fn frobenius_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(ideal.clone());
    }
    let basis = ideal
        .basis()
        .iter()
        .map(|g| g.frobenius_expand(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::from_reduced_basis(ideal.ring(), basis))
}

/// The decomposition `f = Σ_r (f_r)^{p^e} · x^r` over `r ∈ [0, p^e)^d`.
/// Only nonzero components are returned, sorted by `r`.
pub fn frobenius_components(f: &Polynomial, e: u32) -> Result<Vec<(Monomial, Polynomial)>> {
    let ring = f.ring();
    let q = frobenius_q(ring.prime(), e)? as u32;
    let mut parts: HashMap<Monomial, Vec<(Monomial, i64)>> = HashMap::new();
    for (m, c) in f.terms() {
        let (base, rest): (Vec<u32>, Vec<u32>) = m.exponents().iter().map(|&a| (a / q, a % q)).unzip();
        parts
            .entry(Monomial::from_exponents(&rest))
            .or_default()
            .push((Monomial::from_exponents(&base), *c as i64));
    }
    let mut out: Vec<(Monomial, Polynomial)> = parts
        .into_iter()
        .map(|(r, terms)| (r, Polynomial::from_terms(ring, terms)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// `I^[1/p^e]`: the smallest ideal `J` with `I ⊆ J^[p^e]`, generated by the
/// Frobenius components of the generators of `I`.
pub fn frobenius_root(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(ideal.clone());
    }
    let mut gens = Vec::new();
    for g in ideal.generators() {
        for (_, part) in frobenius_components(g, e)? {
            gens.push(part);
        }
    }
    if gens.is_empty() {
        return Ok(Ideal::zero(ideal.ring()));
    }
    Ok(Ideal::new(ideal.ring(), gens))
}

/// `f^n` with every term outside the box `[0, bound]^d` discarded along
/// the way; exact for the coefficients inside the box.
fn truncated_power(f: &Polynomial, n: u64, bound: u32) -> Polynomial {
    let ring = f.ring();
    let inside = |m: &Monomial| m.exponents().iter().all(|&a| a <= bound);
    let f = Polynomial::from_terms(
        ring,
        f.terms().iter().filter(|(m, _)| inside(m)).map(|(m, c)| (m.clone(), *c as i64)),
    );
    let mut acc = Polynomial::one(ring);
    for _ in 0..n {
        let prod = &acc * &f;
        acc = Polynomial::from_terms(
            ring,
            prod.terms().iter().filter(|(m, _)| inside(m)).map(|(m, c)| (m.clone(), *c as i64)),
        );
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Coefficient of `(x_1 ⋯ x_d)^{p-1}` in `f^{p-1}`. A nonzero value means
/// `S/(f)` is Frobenius split at the origin.
pub fn splitting_coefficient(f: &Polynomial) -> Result<Coeff> {
    if f.is_zero() {
        return Err(Error::precondition("the polynomial must be nonzero"));
    }
    let ring = f.ring();
    let p = ring.prime();
    let target = Monomial::from_exponents(&vec![p - 1; ring.nvars()]);
    Ok(truncated_power(f, (p - 1) as u64, p - 1).coefficient(&target))
}

/// True when `h ∉ (x_1^p, ..., x_d^p)`.
fn escapes_frobenius_maximal(h: &Polynomial) -> bool {
    let p = h.ring().prime();
    h.terms().iter().any(|(m, _)| m.exponents().iter().all(|&a| a < p))
}

/// Generators of `(I^[p] : I)` that are not already in `I^[p]`. Every
/// `p^{-1}`-linear map on `S/I` is the trace precomposed with one of them.
pub fn cartier_generators(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    if let [f] = ideal.basis() {
        let p = ideal.ring().prime() as u64;
        return Ok(vec![f.pow(p - 1)]);
    }
    let frob = frobenius_power(ideal, 1)?;
    let colon = frob.colon(ideal);
    Ok(colon
        .basis()
        .iter()
        .filter(|u| !frob.contains(u))
        .cloned()
        .collect())
}

/// Fedder's criterion at the origin: `(I^[p] : I) ⊄ m^[p]`.
pub fn fedder_split_test(ideal: &Ideal) -> Result<bool> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if let [f] = ideal.basis() {
        let p = ideal.ring().prime();
        return Ok(!truncated_power(f, (p - 1) as u64, p - 1).is_zero());
    }
    Ok(cartier_generators(ideal)?.iter().any(escapes_frobenius_maximal))
}

/// `ν = max{ n : a^n ⊄ J^[p^e] }`, found by binary search.
pub fn nu_value(a: &Ideal, j: &Ideal, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::precondition("e must be at least 1"));
    }
    if !j.is_proper() {
        return Err(Error::precondition("J must be a proper ideal"));
    }
    let ring = a.ring();
    let maximal = j.equals(&Ideal::maximal(ring));
    let q = frobenius_q(ring.prime(), e)?;
    let jq = frobenius_power(j, e)?;
    let upper = if maximal {
        if a.generators().iter().any(|g| g.constant_term() != 0) {
            return Err(Error::precondition("a must be contained in the maximal ideal"));
        }
        // pigeonhole: every monomial of this degree has an exponent >= q
        ring.nvars() as u64 * (q - 1) + 1
    } else {
        if !a.generators().iter().all(|g| j.radical_contains(g)) {
            return Err(Error::precondition("a must be contained in the radical of J"));
        }
        let mut k = 1;
        while !a.power(k).is_subset(j) {
            k *= 2;
        }
        k * (j.basis().len() as u64 * (q - 1) + 1)
    };
    let escapes = |n: u64| !a.power(n).is_subset(&jq);
    let (mut lo, mut hi) = (0, upper);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if escapes(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The map `φ = Ψ_e ∘ g^{1/p^e}`, where `Ψ_e` is the trace of Frobenius
/// sending `x^{(q-1)·1}` to 1 and every other basis monomial to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct CartierMap {
    multiplier: Polynomial,
    level: u32,
}

impl CartierMap {
    pub fn new(multiplier: Polynomial, level: u32) -> Result<CartierMap> {
        if multiplier.is_zero() {
            return Err(Error::precondition("the multiplier of a Cartier map must be nonzero"));
        }
        if level == 0 {
            return Err(Error::precondition("the level of a Cartier map must be at least 1"));
        }
        frobenius_q(multiplier.ring().prime(), level)?;
        Ok(CartierMap { multiplier, level })
    }

    /// The trace itself at level `e`.
    pub fn trace(ring: &Arc<Ring>, level: u32) -> Result<CartierMap> {
        CartierMap::new(Polynomial::one(ring), level)
    }

    pub fn multiplier(&self) -> &Polynomial {
        &self.multiplier
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `φ(f^{1/p^e})`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let ring = f.ring();
        let q = frobenius_q(ring.prime(), self.level)? as u32;
        let top = Monomial::from_exponents(&vec![q - 1; ring.nvars()]);
        let prod = f.try_mul(&self.multiplier)?;
        Ok(frobenius_components(&prod, self.level)?
            .into_iter()
            .find(|(r, _)| *r == top)
            .map_or_else(|| Polynomial::zero(ring), |(_, part)| part))
    }
}

/// `φ(J^{1/p^e}) ⊆ J`, checked as `((g)·J)^[1/p^e] ⊆ J`.
pub fn is_compatible(j: &Ideal, phi: &CartierMap) -> Result<bool> {
    let product = Ideal::new(
        j.ring(),
        j.generators()
            .iter()
            .map(|h| h.try_mul(phi.multiplier()))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(frobenius_root(&product, phi.level())?.is_subset(j))
}

/// Compatibility with every map at every level, which reduces to
/// `J^[1/p] ⊆ J` because roots compose.
pub fn is_uniformly_compatible(j: &Ideal) -> Result<bool> {
    Ok(frobenius_root(j, 1)?.is_subset(j))
}
