//! Test ideals of quotient rings `S/I`, lifted to `S`, and the chain of
//! test ideals obtained by passing to successive quotients.

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::frobenius::{cartier_generators, fedder_split_test, frobenius_power, frobenius_root};
use crate::groebner;
use crate::ideal::Ideal;
use crate::ring::Polynomial;
use crate::test_ideal::StabilizationReport;

/// Result of [`test_ideal_quotient`].
#[derive(Clone, Debug)]
pub struct QuotientTestIdeal {
    pub report: StabilizationReport,
    /// The element `c` the iteration started from.
    pub test_element: Polynomial,
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = entry * &determinant(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Jacobian candidates for a test element: the `h × h` minors of the
/// Jacobian matrix of the reduced basis, `h` the codimension of `I`, and
/// then for each choice of rows the sum of those minors. For a
/// hypersurface these are the partial derivatives of its equation followed
/// by their sum.
fn jacobian_candidates(ideal: &Ideal) -> Vec<Polynomial> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let Some(dim) = ideal.dimension() else {
        return Vec::new();
    };
    let h = n - dim;
    if h == 0 {
        return vec![Polynomial::one(ring)];
    }
    let basis = ideal.basis();
    let jac: Vec<Vec<Polynomial>> = basis.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    let mut minors = Vec::new();
    let mut sums = Vec::new();
    for rows in subsets(basis.len(), h) {
        let mut sum = Polynomial::zero(ring);
        for cols in subsets(n, h) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            let d = determinant(&sub);
            sum = &sum + &d;
            minors.push(d);
        }
        sums.push(sum);
    }
    minors.extend(sums);
    minors
}

/// Why `c` cannot serve as a test element, if it cannot.
fn reject_test_element(ideal: &Ideal, c: &Polynomial, primes: &[Ideal]) -> Option<String> {
    if ideal.contains(c) {
        return Some(format!("{c} is zero in the quotient"));
    }
    if let Some(p) = primes.iter().find(|p| p.contains(c)) {
        return Some(format!("{c} lies in the minimal prime {p}"));
    }
    if !ideal.colon_element(c).equals(ideal) {
        return Some(format!("{c} is a zero divisor modulo the ideal"));
    }
    None
}

/// The default test element: the first Jacobian candidate that is a
/// nonzerodivisor modulo `I` and avoids every supplied minimal prime.
pub fn default_test_element(ideal: &Ideal, minimal_primes: &[Ideal]) -> Option<Polynomial> {
    jacobian_candidates(ideal)
        .into_iter()
        .filter(|c| !c.is_zero())
        .find(|c| reject_test_element(ideal, c, minimal_primes).is_none())
}

/// The lift to `S` of `τ(S/I)`, computed as the stable value of
/// `J_0 = I + (c)`, `J_{k+1} = J_k + Σ_u (u·J_k)^[1/p]` where `u` runs over
/// the Cartier generators of `I`.
///
/// `c` must be a nonzerodivisor on `S/I` such that the localization at `c`
/// is regular; when omitted, a Jacobian candidate is chosen. A choice that
/// contradicts the splitting test is reported as a bad test element.
pub fn test_ideal_quotient(
    ideal: &Ideal,
    test_element: Option<&Polynomial>,
    minimal_primes: &[Ideal],
    budget: &Budget,
) -> Result<QuotientTestIdeal> {
    budget.validate()?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let ring = ideal.ring();
    let c = match test_element {
        Some(c) => {
            if let Some(why) = reject_test_element(ideal, c, minimal_primes) {
                return Err(Error::BadTestElement(why));
            }
            c.clone()
        }
        None => default_test_element(ideal, minimal_primes).ok_or(Error::TestElementSelection { stage: 0 })?,
    };
    let frob = frobenius_power(ideal, 1)?;
    let cartier = cartier_generators(ideal)?;

    let step = |j: &Ideal| -> Result<Ideal> {
        let mut gens = j.basis().to_vec();
        for u in &cartier {
            let products: Vec<Polynomial> = j
                .basis()
                .iter()
                // elements of I^[p] only contribute elements of I
                .map(|g| groebner::reduce(&(u * g), frob.basis()))
                .filter(|h| !h.is_zero())
                .collect();
            if !products.is_empty() {
                gens.extend(frobenius_root(&Ideal::new(ring, products), 1)?.basis().iter().cloned());
            }
        }
        Ok(Ideal::new(ring, gens))
    };

    let mut current = ideal.sum(&Ideal::principal(c.clone()));
    for k in 0..budget.max_e {
        let next = step(&current)?;
        if next.equals(&current) {
            if current.is_unit() && !fedder_split_test(ideal)? {
                return Err(Error::BadTestElement(format!(
                    "{c} gives the unit ideal although the quotient is not Frobenius split"
                )));
            }
            return Ok(QuotientTestIdeal {
                report: StabilizationReport {
                    result: current,
                    stabilized_at_e: k,
                    // the step is deterministic, so a fixed point repeats forever
                    confirmations: budget.confirmations,
                },
                test_element: c,
            });
        }
        current = next;
    }
    Err(Error::BudgetExceeded {
        levels: budget.max_e,
        max_e: budget.max_e,
    })
}

/// The chain `τ_0 ⊂ τ_1 ⊂ ...` of lifted test ideals: `τ_0` is the test
/// ideal of `S/I`, and `τ_{k+1}` that of `S/τ_k`. It ends once a quotient
/// is strongly F-regular. Each stage must cut the dimension.
pub fn vassilev_chain(ideal: &Ideal, budget: &Budget) -> Result<Vec<Ideal>> {
    if !fedder_split_test(ideal)? {
        return Err(Error::precondition("the quotient is not Frobenius split"));
    }
    let mut chain: Vec<Ideal> = Vec::new();
    let mut current = ideal.clone();
    for stage in 0.. {
        let tau = match test_ideal_quotient(&current, None, &[], budget) {
            Ok(t) => t.report.result,
            Err(Error::TestElementSelection { .. }) => return Err(Error::TestElementSelection { stage }),
            Err(e) => return Err(e),
        };
        if tau.is_unit() {
            break;
        }
        if tau.dimension() >= current.dimension() {
            return Err(Error::BadTestElement(format!("stage {stage} did not cut the dimension")));
        }
        chain.push(tau.clone());
        current = tau;
    }
    Ok(chain)
}
