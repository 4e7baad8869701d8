//! Test ideals `τ(a^t)` of pairs in a polynomial ring, together with
//! F-pure threshold brackets and F-jumping candidates on a `p^{-e}` grid.
//!
//! `τ(a^t)` is the stable value of the ascending chain
//! `J_e = (a^{⌈t p^e⌉})^[1/p^e]`.

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::frobenius::{frobenius_root, nu_value};
use crate::ideal::Ideal;
use crate::monomial_ideal;
use crate::ring::frobenius_q;

/// The value of a stabilizing chain and where it became stable.
#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub result: Ideal,
    /// First chain index carrying the final value.
    pub stabilized_at_e: usize,
    /// Number of further indices at which the value was seen again.
    pub confirmations: usize,
}

/// Runs `term(1), term(2), ...` until `budget.confirmations` consecutive
/// terms repeat the previous one.
pub(crate) fn stabilize<F>(budget: &Budget, mut term: F) -> Result<StabilizationReport>
where
    F: FnMut(usize) -> Result<Ideal>,
{
    budget.validate()?;
    let mut current = term(1)?;
    let mut start = 1;
    let mut repeats = 0;
    for e in 2..=budget.max_e {
        let next = term(e)?;
        if next.equals(&current) {
            repeats += 1;
            if repeats == budget.confirmations {
                return Ok(StabilizationReport {
                    result: current,
                    stabilized_at_e: start,
                    confirmations: repeats,
                });
            }
        } else {
            current = next;
            start = e;
            repeats = 0;
        }
    }
    Err(Error::BudgetExceeded {
        levels: budget.max_e,
        max_e: budget.max_e,
    })
}

/// `J_e = (a^{⌈t p^e⌉})^[1/p^e]`, one term of the defining chain.
pub fn test_ideal_level(a: &Ideal, t: Exponent, e: usize) -> Result<Ideal> {
    let e = e as u32;
    let ring = a.ring();
    let q = frobenius_q(ring.prime(), e)?;
    let n = t.ceil_mul(q);
    if let Some(gens) = a.monomial_generators() {
        let gens = monomial_ideal::minimalize(ring, gens);
        if let Some(root) = monomial_ideal::root_of_power(ring, &gens, n, q, MULTISET_LIMIT) {
            return Ok(Ideal::from_monomials(ring, root));
        }
    }
    frobenius_root(&a.power(n), e)
}

// beyond this many products the power is formed explicitly
const MULTISET_LIMIT: u64 = 4_000_000;

/// `τ(a^t)` in the polynomial ring.
pub fn test_ideal_regular(a: &Ideal, t: Exponent, budget: &Budget) -> Result<StabilizationReport> {
    if a.is_zero() {
        return Err(Error::precondition("a must be a nonzero ideal"));
    }
    if t.is_zero() {
        budget.validate()?;
        return Ok(StabilizationReport {
            result: Ideal::unit(a.ring()),
            stabilized_at_e: 0,
            confirmations: budget.confirmations,
        });
    }
    stabilize(budget, |e| test_ideal_level(a, t, e))
}

/// Bracket `[ν/p^e, (ν+1)/p^e]` around the F-pure threshold of `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FptInterval {
    pub low: Exponent,
    pub high: Exponent,
    pub level: u32,
}

pub fn fpt_interval(a: &Ideal, e: u32) -> Result<FptInterval> {
    if !a.is_proper() {
        return Err(Error::precondition("a must be a proper ideal"));
    }
    let ring = a.ring();
    let q = frobenius_q(ring.prime(), e)?;
    let nu = nu_value(a, &Ideal::maximal(ring), e)?;
    Ok(FptInterval {
        low: Exponent::new(nu, q)?,
        high: Exponent::new(nu + 1, q)?,
        level: e,
    })
}

/// Grid points `k/p^e ≤ t_max` at which the test ideal strictly drops.
pub fn f_jumping_candidates(
    a: &Ideal,
    e: u32,
    t_max: Exponent,
    budget: &Budget,
) -> Result<Vec<Exponent>> {
    if e == 0 {
        return Err(Error::precondition("e must be at least 1"));
    }
    if a.is_unit() {
        return Ok(Vec::new());
    }
    let q = frobenius_q(a.ring().prime(), e)?;
    let mut jumps = Vec::new();
    let mut previous = Ideal::unit(a.ring());
    for k in 1..=t_max.floor_mul(q) {
        let t = Exponent::new(k, q)?;
        let tau = test_ideal_regular(a, t, budget)?.result;
        if !tau.equals(&previous) {
            jumps.push(t);
        }
        previous = tau;
    }
    Ok(jumps)
}
