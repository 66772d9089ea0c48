//! JSON encoding of monomials and binomials: variables are written by name
//! (`"x[0,3]"`, `"y[1]"`) and monomials as name → exponent maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::catalog::VariableCatalog;
use super::monomial::{Binomial, Monomial};

pub type MonomialJson = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialJson {
    pub lead: MonomialJson,
    pub tail: MonomialJson,
}

pub fn monomial_to_json(cat: &VariableCatalog, m: &Monomial) -> MonomialJson {
    m.support_with_exponents()
        .map(|(v, e)| (cat.name(v), e))
        .collect()
}

pub fn monomial_from_json(cat: &VariableCatalog, j: &MonomialJson) -> Result<Monomial> {
    let mut m = Monomial::one(cat.len());
    for (name, &e) in j {
        if e == 0 {
            return Err(Error::Parse(format!("zero exponent for {name}")));
        }
        m.bump(cat.parse_name(name)?, e);
    }
    Ok(m)
}

pub fn binomial_to_json(cat: &VariableCatalog, b: &Binomial) -> BinomialJson {
    BinomialJson {
        lead: monomial_to_json(cat, &b.lead),
        tail: monomial_to_json(cat, &b.tail),
    }
}

pub fn binomial_from_json(cat: &VariableCatalog, j: &BinomialJson) -> Result<Binomial> {
    Binomial::new(monomial_from_json(cat, &j.lead)?, monomial_from_json(cat, &j.tail)?)
        .ok_or_else(|| Error::Parse("binomial with equal sides".into()))
}

/// Human-readable form such as `x[0,3]*x[1,2] - y[1]^2`.
pub fn monomial_display(cat: &VariableCatalog, m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.support_with_exponents()
        .map(|(v, e)| {
            if e == 1 {
                cat.name(v)
            } else {
                format!("{}^{e}", cat.name(v))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn binomial_display(cat: &VariableCatalog, b: &Binomial) -> String {
    format!("{} - {}", monomial_display(cat, &b.lead), monomial_display(cat, &b.tail))
}
