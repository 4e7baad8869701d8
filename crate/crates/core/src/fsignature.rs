//! Splitting numbers `a_e` of hypersurfaces `R = S/(f)` at the origin and
//! the resulting F-signature estimates `a_e / p^{e·dim R}`.
//!
//! `a_e` is the colength of `I_e = (m^[p^e] : f^{p^e - 1})`. These ideals
//! satisfy `I_0 = m` and `I_{e+1} = (I_e^[p] : f^{p-1})`, so each level is a
//! colon by the fixed element `f^{p-1}`, evaluated by linear algebra in the
//! finite-dimensional algebra `S/I_e^[p]`.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::frobenius::frobenius_power;
use crate::ideal::{is_squarefree, Colength, Ideal};
use crate::ring::{frobenius_q, Polynomial};
use crate::zero_dim::ZeroDim;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FSignatureSample {
    pub e: u32,
    pub a_e: u64,
    /// `a_e / p^{e·d}`.
    pub ratio: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSignatureReport {
    pub prime: u32,
    /// `d = dim R`, one less than the number of variables.
    pub dimension: usize,
    pub samples: Vec<FSignatureSample>,
    /// The ratio at the largest `e`.
    pub estimate: Exponent,
    /// `log_p δ`, where `δ = p^d` is the generic rank of `R` over `R^p`.
    pub delta_exponent: usize,
}

fn check_hypersurface(f: &Polynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::precondition("f must be nonzero"));
    }
    if f.constant_term() != 0 {
        return Err(Error::precondition("f must vanish at the origin"));
    }
    if !is_squarefree(f) {
        return Err(Error::precondition("f must be squarefree"));
    }
    Ok(())
}

/// Positive integer weights making `f` weighted homogeneous, if small ones
/// exist; otherwise all zeros.
fn grading(f: &Polynomial) -> Vec<u64> {
    const MAX_WEIGHT: u64 = 12;
    let n = f.ring().nvars();
    let exps: Vec<&[u32]> = f.terms().iter().map(|(m, _)| m.exponents()).collect();
    let homogeneous = |w: &[u64]| {
        let deg = |e: &[u32]| e.iter().zip(w).map(|(&a, &b)| a as u64 * b).sum::<u64>();
        exps.windows(2).all(|pair| deg(pair[0]) == deg(pair[1]))
    };
    let mut w = vec![1u64; n];
    loop {
        if homogeneous(&w) {
            return w;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return vec![0; n];
            }
            i -= 1;
            if w[i] < MAX_WEIGHT {
                w[i] += 1;
                break;
            }
            w[i] = 1;
        }
    }
}

/// `a_1, ..., a_{e_max}` in one pass of the recursion.
pub fn splitting_numbers(f: &Polynomial, e_max: u32) -> Result<Vec<u64>> {
    check_hypersurface(f)?;
    let ring = f.ring();
    frobenius_q(ring.prime(), e_max)?;
    let g = f.pow(ring.prime() as u64 - 1);
    let weights = grading(f);
    let mut current = ZeroDim::maximal(ring);
    let mut out = Vec::with_capacity(e_max as usize);
    for _ in 0..e_max {
        current = current.frobenius_colon(&g, &weights);
        out.push(current.colength());
    }
    Ok(out)
}

/// `a_e = colength(m^[p^e] : f^{p^e - 1})`.
pub fn splitting_number_hypersurface(f: &Polynomial, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::precondition("e must be at least 1"));
    }
    Ok(*splitting_numbers(f, e)?.last().unwrap())
}

/// The same number through the generic colon of ideals; only practical
/// for small `p^e`.
pub fn splitting_number_direct(f: &Polynomial, e: u32) -> Result<u64> {
    check_hypersurface(f)?;
    let ring = f.ring();
    let q = frobenius_q(ring.prime(), e)?;
    let colon = frobenius_power(&Ideal::maximal(ring), e)?.colon_element(&f.pow(q - 1));
    match colon.colength() {
        Colength::Finite(n) => Ok(n),
        Colength::Infinite => Err(Error::InfiniteColength),
    }
}

/// Samples `a_e / p^{e·d}` for `e = 1..=e_max`, with `1 ≤ e_max ≤ 4`.
pub fn fsignature_estimate(f: &Polynomial, e_max: u32) -> Result<FSignatureReport> {
    if !(1..=4).contains(&e_max) {
        return Err(Error::precondition("e_max must lie between 1 and 4"));
    }
    let ring = f.ring();
    let p = ring.prime();
    let d = ring.nvars() - 1;
    let numbers = splitting_numbers(f, e_max)?;
    let samples = numbers
        .into_iter()
        .enumerate()
        .map(|(k, a_e)| {
            let e = k as u32 + 1;
            let scale = frobenius_q(p, e * d as u32)?;
            Ok(FSignatureSample {
                e,
                a_e,
                ratio: Exponent::new(a_e, scale)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FSignatureReport {
        prime: p,
        dimension: d,
        estimate: samples.last().unwrap().ratio,
        samples,
        delta_exponent: d,
    })
}
