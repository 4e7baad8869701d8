//! Graded sequences of ideals, their asymptotic test ideals, and symbolic
//! powers of squarefree monomial ideals.

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::Ideal;
use crate::test_ideal::{test_ideal_regular, StabilizationReport};

/// A graded sequence `a_•` with `a_n · a_m ⊆ a_{n+m}`.
#[derive(Clone, Debug)]
pub enum GradedSequenceSpec {
    /// `a_n = a^n`.
    OrdinaryPowers(Ideal),
    /// `a_n = I^{(n)}` for `I` the intersection of the listed primes.
    SymbolicSquarefree(Vec<Ideal>),
}

impl GradedSequenceSpec {
    /// The `n`-th member of the sequence.
    pub fn term(&self, n: u64) -> Result<Ideal> {
        match self {
            GradedSequenceSpec::OrdinaryPowers(a) => Ok(a.power(n)),
            GradedSequenceSpec::SymbolicSquarefree(primes) => symbolic_power(primes, n),
        }
    }
}

/// `τ_∞(a_•; n)`: the stable value of `τ(a_{mn}^{1/m})` for
/// `m = 1, 2, 4, ...`, stopped once two consecutive values agree.
/// `stabilized_at_e` is `log2 m` of the first agreeing value.
pub fn asymptotic_test_ideal(
    seq: &GradedSequenceSpec,
    n: u64,
    budget: &Budget,
) -> Result<StabilizationReport> {
    budget.validate()?;
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let value = |k: usize| -> Result<Ideal> {
        let m = 1u64 << k;
        let a = seq.term(m * n)?;
        if a.is_unit() {
            return Ok(a);
        }
        Ok(test_ideal_regular(&a, Exponent::new(1, m)?, budget)?.result)
    };
    let mut previous = value(0)?;
    for k in 1..=budget.max_e {
        let next = value(k)?;
        if next.equals(&previous) {
            return Ok(StabilizationReport {
                result: previous,
                stabilized_at_e: k - 1,
                confirmations: 1,
            });
        }
        previous = next;
    }
    Err(Error::BudgetExceeded {
        levels: budget.max_e,
        max_e: budget.max_e,
    })
}

fn check_primes(primes: &[Ideal]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::precondition("at least one prime is required"));
    }
    for p in primes {
        let ok = !p.is_zero()
            && p.basis()
                .iter()
                .all(|g| g.is_monomial() && g.leading_coeff() == 1 && g.total_degree() == 1);
        if !ok {
            return Err(Error::precondition(format!("{p} is not generated by variables")));
        }
    }
    Ok(())
}

/// `I^{(n)} = ∩ P^n` over the listed monomial primes.
pub fn symbolic_power(primes: &[Ideal], n: u64) -> Result<Ideal> {
    check_primes(primes)?;
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let mut acc = primes[0].power(n);
    for p in &primes[1..] {
        acc = acc.intersect(&p.power(n));
    }
    Ok(acc)
}

/// Whether `I^{(d·n)} ⊆ I^n`. The theorem guarantees this when `d` is the
/// number of variables; smaller `d` probes sharper containments.
pub fn check_symbolic_containment(primes: &[Ideal], n: u64, d: u64) -> Result<bool> {
    if n == 0 || d == 0 {
        return Err(Error::precondition("n and d must be at least 1"));
    }
    let symbolic = symbolic_power(primes, d * n)?;
    let ordinary = symbolic_power(primes, 1)?.power(n);
    Ok(symbolic.is_subset(&ordinary))
}
