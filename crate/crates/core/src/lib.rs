//! Frobenius splitting invariants of polynomial rings over `F_p` and of
//! their quotients: Frobenius powers and roots, splitting tests, test
//! ideals `τ(a^t)`, F-pure thresholds, symbolic-power containments and
//! F-signatures.
//!
//! ```
//! use fsplit::{parse_ideal, test_ideal_regular, Budget, Exponent, MonomialOrder, Ring};
//!
//! let ring = Ring::new(5, &["x", "y"], MonomialOrder::DegRevLex)?;
//! let m = parse_ideal("(x, y)", &ring)?;
//! let tau = test_ideal_regular(&m, Exponent::integer(3), &Budget::default())?;
//! assert_eq!(tau.result, m.power(2));
//! # Ok::<(), fsplit::Error>(())
//! ```

pub mod asymptotic;
pub mod config;
pub mod error;
pub mod exponent;
pub mod frobenius;
pub mod fsignature;
pub mod groebner;
pub mod ideal;
mod monomial_ideal;
pub mod parse;
pub mod quotient;
pub mod ring;
pub mod test_ideal;
mod zero_dim;

pub use asymptotic::{asymptotic_test_ideal, check_symbolic_containment, symbolic_power, GradedSequenceSpec};
pub use config::Budget;
pub use error::{Error, Result};
pub use exponent::Exponent;
pub use frobenius::{
    cartier_generators, fedder_split_test, frobenius_power, frobenius_root, is_compatible,
    is_uniformly_compatible, nu_value, splitting_coefficient, CartierMap,
};
pub use fsignature::{fsignature_estimate, splitting_number_hypersurface, FSignatureReport, FSignatureSample};
pub use groebner::{reduce, reduced_basis};
pub use ideal::{Colength, Ideal};
pub use parse::{parse_ideal, parse_polynomial};
pub use quotient::{test_ideal_quotient, vassilev_chain, QuotientTestIdeal};
pub use ring::{Coeff, Monomial, MonomialOrder, Polynomial, Ring};
pub use test_ideal::{f_jumping_candidates, fpt_interval, test_ideal_regular, FptInterval, StabilizationReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    mod frobenius {}
    #[doc = include_str!("../../../book/src/test-ideals.md")]
    mod test_ideals {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/symbolic-powers.md")]
    mod symbolic_powers {}
    #[doc = include_str!("../../../book/src/f-signature.md")]
    mod f_signature {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
