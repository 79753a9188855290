//! Matrix-level checks of integral representations of fractional powers.
//!
//! A symmetric positive semi-definite matrix stands in for a non-negative
//! sectorial operator. The quadratures in [`balakrishnan_neg_power`],
//! [`inv_i_plus_apow`] and [`identity_minus_negpower_decay`] only ever touch
//! `A` through the resolvent `(A + λI)^{-1}`; the cached eigendecomposition
//! supplies that resolvent and, independently, the exact answers
//! ([`DenseOperator::eig_power`], [`DenseOperator::spectral_apply`]) that
//! the quadratures are judged against.

mod dense;
mod lemmas;
mod quadrature;

pub use dense::DenseOperator;
pub use lemmas::{
    balakrishnan_neg_power, identity_minus_negpower_decay, inv_i_plus_apow, lemma62_convergence,
    moment_constant, moment_inequality_check, resolvent_apply, MomentCheck,
};
pub use quadrature::{QuadratureRule, QuadratureSpec};
