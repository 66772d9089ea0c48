//! Initial ideals, standard monomials and the Hilbert-function check.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::family::build_simplex;
use crate::lattice::LatticeVector;

use super::catalog::VariableCatalog;
use super::groebner::canonical_basis;
use super::monomial::{Binomial, Monomial};
use super::order::MonomialOrder;

/// `π(mono)`: weighted sum of the variable images; the last coordinate is
/// the total degree.
pub fn pi_image(cat: &VariableCatalog, mono: &Monomial) -> LatticeVector {
    let mut out = LatticeVector::zero(cat.dim() + 1);
    for (v, e) in mono.support_with_exponents() {
        out = &out + &cat.image(v).scale(i64::from(e));
    }
    out
}

/// Whether `g` lies in the toric ideal, i.e. both sides have equal images.
pub fn verify_membership(cat: &VariableCatalog, g: &Binomial) -> bool {
    pi_image(cat, &g.lead) == pi_image(cat, &g.tail)
}

/// Minimal generators of the monomial ideal spanned by the leads of `gens`,
/// sorted.
pub fn initial_ideal_generators(gens: &[Binomial], order: &MonomialOrder) -> Vec<Monomial> {
    let leads: BTreeSet<Monomial> = canonical_basis(gens, order)
        .into_iter()
        .map(|g| g.lead)
        .collect();
    minimalize(leads.into_iter().collect())
}

/// Removes monomials divisible by another one in the list.
pub fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    monos.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in monos {
        if !kept.iter().any(|g| g.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort();
    kept
}

pub fn is_squarefree(gens: &[Monomial]) -> bool {
    gens.iter().all(Monomial::is_squarefree)
}

/// Number of degree-`degree` monomials in `nvars` variables divisible by
/// none of `gens`.
pub fn count_standard_monomials(gens: &[Monomial], nvars: usize, degree: u32) -> u64 {
    let mut by_var: Vec<Vec<&Monomial>> = vec![Vec::new(); nvars];
    for g in gens {
        if g.is_one() {
            return 0;
        }
        for v in g.support() {
            by_var[v].push(g);
        }
    }
    fn go(
        start: usize,
        left: u32,
        cur: &mut Monomial,
        by_var: &[Vec<&Monomial>],
        count: &mut u64,
    ) {
        if left == 0 {
            *count += 1;
            return;
        }
        for v in start..by_var.len() {
            cur.bump(v, 1);
            if !by_var[v].iter().any(|g| g.divides(cur)) {
                go(v, left - 1, cur, by_var, count);
            }
            let e = cur.exponent(v);
            *cur = {
                let mut exps = cur.exponents().to_vec();
                exps[v] = e - 1;
                Monomial::from_exponents(exps)
            };
        }
    }
    let mut count = 0;
    let mut cur = Monomial::one(nvars);
    go(0, degree, &mut cur, &by_var, &mut count);
    count
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertRow {
    pub degree: u32,
    pub standard_monomials: u64,
    pub lattice_points: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub rows: Vec<HilbertRow>,
    pub first_mismatch: Option<u32>,
}

impl HilbertReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares, for `1 ≤ n ≤ maxdeg`, the number of standard monomials of
/// degree `n` for the leads of `gens` with `|n(kP) ∩ ℤᵈ|`.
///
/// For `gens` inside the toric ideal, agreement in every degree up to
/// `maxdeg` means the lead terms of `gens` span the initial ideal in those
/// degrees.
pub fn hilbert_vs_ehrhart(
    cat: &VariableCatalog,
    order: &MonomialOrder,
    gens: &[Binomial],
    maxdeg: u32,
) -> Result<HilbertReport> {
    let leads = initial_ideal_generators(gens, order);
    let simplex = build_simplex(cat.params())?;
    let k = cat.k() as i64;
    let mut rows = Vec::new();
    let mut first_mismatch = None;
    for n in 1..=maxdeg {
        let standard = count_standard_monomials(&leads, cat.len(), n);
        let points = simplex.enumerate_dilation_points(k * i64::from(n))?.len() as u64;
        if standard != points && first_mismatch.is_none() {
            first_mismatch = Some(n);
        }
        rows.push(HilbertRow {
            degree: n,
            standard_monomials: standard,
            lattice_points: points,
        });
    }
    Ok(HilbertReport {
        rows,
        first_mismatch,
    })
}

/// Whether two monomial lists generate the same monomial ideal.
pub fn same_monomial_ideal(a: &[Monomial], b: &[Monomial]) -> bool {
    minimalize(a.to_vec()) == minimalize(b.to_vec())
}

pub fn lead_order(order: &MonomialOrder) -> impl Fn(&Monomial, &Monomial) -> Ordering + '_ {
    move |a, b| order.compare(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;

    fn cat22() -> VariableCatalog {
        VariableCatalog::new(&FamilyParams::unit(2, 2).unwrap())
    }

    #[test]
    fn images() {
        let c = cat22();
        let x = |s: &[usize]| Monomial::var(c.len(), c.var_of_sequence(s).unwrap());
        assert_eq!(pi_image(&c, &x(&[0, 0])).0, vec![0, 0, 0, 1]);
        assert_eq!(pi_image(&c, &Monomial::var(c.len(), c.y(1))).0, vec![1, 1, 1, 1]);
        assert_eq!(pi_image(&c, &x(&[0, 3])).0, vec![1, 1, 2, 1]);
    }

    #[test]
    fn membership() {
        let c = cat22();
        let n = c.len();
        let y = |j| c.y(j);
        let g = Binomial::new(
            Monomial::from_vars(n, &[y(0), y(2)]),
            Monomial::from_vars(n, &[y(1), y(1)]),
        )
        .unwrap();
        assert!(verify_membership(&c, &g));
        assert_eq!(pi_image(&c, &g.lead).0, vec![2, 2, 2, 2]);

        let x = |s: &[usize]| c.var_of_sequence(s).unwrap();
        let g = Binomial::new(
            Monomial::from_vars(n, &[x(&[0, 1]), x(&[2, 3])]),
            Monomial::from_vars(n, &[x(&[0, 2]), x(&[1, 3])]),
        )
        .unwrap();
        assert!(verify_membership(&c, &g));
        assert_eq!(pi_image(&c, &g.tail).0, vec![2, 2, 2, 2]);

        let g = Binomial::new(Monomial::var(n, x(&[0, 0])), Monomial::var(n, y(1))).unwrap();
        assert!(!verify_membership(&c, &g));
    }

    #[test]
    fn standard_monomial_counts() {
        let y0y2 = Monomial::from_vars(3, &[0, 2]);
        assert_eq!(count_standard_monomials(&[], 3, 2), 6);
        assert_eq!(count_standard_monomials(&[y0y2.clone()], 3, 1), 3);
        assert_eq!(count_standard_monomials(&[y0y2], 3, 2), 5);
        assert!(is_squarefree(&[Monomial::from_vars(3, &[0, 2])]));
        assert!(!is_squarefree(&[Monomial::from_vars(3, &[1, 1])]));
    }

    #[test]
    fn minimal_generators() {
        let a = Monomial::from_vars(3, &[0, 1]);
        let b = Monomial::from_vars(3, &[0, 1, 2]);
        assert_eq!(minimalize(vec![b, a.clone(), a.clone()]), vec![a]);
    }
}
