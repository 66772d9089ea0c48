//! Polynomial presentation of the Ehrhart ring of `kP`: the variable
//! catalog and the map `π`, monomial orders, binomial reduction and
//! Buchberger's criterion, initial ideals and standard-monomial counts,
//! plus an independent toric Gröbner basis used as a cross-check.

pub mod catalog;
pub mod groebner;
pub mod ideal;
pub mod json;
pub mod monomial;
pub mod order;
pub mod toric;

pub use catalog::{VarId, VarKind, VariableCatalog};
pub use groebner::{buchberger, buchberger_check, normal_form, reduce_basis, s_polynomial, BuchbergerReport};
pub use ideal::{
    count_standard_monomials, hilbert_vs_ehrhart, initial_ideal_generators, is_squarefree,
    pi_image, verify_membership, HilbertReport,
};
pub use monomial::{Binomial, Monomial};
pub use order::{MonomialOrder, OrderSpec};
pub use toric::toric_gb_reference;
