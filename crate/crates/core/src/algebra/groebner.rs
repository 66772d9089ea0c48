//! Reduction and Buchberger's algorithm for pure binomials.
//!
//! Reducing `a − b` by `l − t` (with `l | a`) yields `(a/l)·t − b`, so a
//! binomial is reduced by rewriting each of its two monomials separately;
//! it reduces to zero exactly when both land on the same standard monomial.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::monomial::{Binomial, Monomial};
use super::order::MonomialOrder;

/// Orients every binomial under `order`, drops zeros and duplicates, and
/// sorts by (lead, tail) in increasing order.
pub fn canonical_basis(gens: &[Binomial], order: &MonomialOrder) -> Vec<Binomial> {
    let mut out: Vec<Binomial> = gens
        .iter()
        .filter_map(|g| Binomial::oriented(g.lead.clone(), g.tail.clone(), order))
        .collect();
    out.sort_by(|x, y| {
        order
            .compare(&x.lead, &y.lead)
            .then_with(|| order.compare(&x.tail, &y.tail))
    });
    out.dedup();
    out
}

/// Rewrites monomials modulo a fixed list of oriented binomials, always
/// using the first generator (by list position) whose lead divides.
#[derive(Clone, Debug)]
pub struct Reducer<'a> {
    order: &'a MonomialOrder,
    basis: Vec<Binomial>,
    by_var: Vec<Vec<usize>>,
}

impl<'a> Reducer<'a> {
    /// `basis` must already be oriented under `order`.
    pub fn new(basis: Vec<Binomial>, order: &'a MonomialOrder) -> Self {
        let mut r = Reducer {
            order,
            basis: Vec::new(),
            by_var: vec![Vec::new(); order.nvars()],
        };
        for g in basis {
            r.push(g);
        }
        r
    }

    pub fn push(&mut self, g: Binomial) {
        debug_assert!(g.lead_is_first(self.order));
        let first = g.lead.support().next().expect("lead of a binomial is not 1");
        self.by_var[first].push(self.basis.len());
        self.basis.push(g);
    }

    pub fn basis(&self) -> &[Binomial] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Binomial> {
        self.basis
    }

    /// Position of the first generator whose lead divides `m`.
    pub fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        m.support()
            .flat_map(|v| self.by_var[v].iter().copied())
            .filter(|&i| self.basis[i].lead.divides(m))
            .min()
    }

    pub fn reduce_monomial(&self, m: &Monomial) -> Monomial {
        let mut cur = m.clone();
        while let Some(i) = self.find_divisor(&cur) {
            let g = &self.basis[i];
            cur = cur.div(&g.lead).expect("divisor").mul(&g.tail);
        }
        cur
    }

    /// Normal form of `a − b`; `None` means zero.
    pub fn reduce_pair(&self, a: &Monomial, b: &Monomial) -> Option<Binomial> {
        Binomial::oriented(self.reduce_monomial(a), self.reduce_monomial(b), self.order)
    }

    pub fn reduce(&self, f: &Binomial) -> Option<Binomial> {
        self.reduce_pair(&f.lead, &f.tail)
    }
}

/// Normal form of `f` modulo `gens`; `None` means zero.
pub fn normal_form(f: &Binomial, gens: &[Binomial], order: &MonomialOrder) -> Option<Binomial> {
    Reducer::new(canonical_basis(gens, order), order).reduce(f)
}

/// S-pair of two binomials; `None` when it vanishes identically.
pub fn s_polynomial(g1: &Binomial, g2: &Binomial, order: &MonomialOrder) -> Option<Binomial> {
    let g1 = g1.reorient(order);
    let g2 = g2.reorient(order);
    if g1 == g2 {
        return None;
    }
    let l = g1.lead.lcm(&g2.lead);
    let a = l.div(&g1.lead).unwrap().mul(&g1.tail);
    let b = l.div(&g2.lead).unwrap().mul(&g2.tail);
    Binomial::oriented(a, b, order)
}

/// An S-pair whose remainder is nonzero.
#[derive(Clone, Debug)]
pub struct PairFailure {
    pub first: Binomial,
    pub second: Binomial,
    pub s_polynomial: Binomial,
    pub remainder: Binomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuchbergerReport {
    pub basis_size: usize,
    pub pairs_total: usize,
    pub pairs_coprime: usize,
    pub pairs_reduced: usize,
    #[serde(skip)]
    pub failure: Option<PairFailure>,
}

impl BuchbergerReport {
    pub fn is_groebner(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks Buchberger's criterion: every S-pair of `gens` reduces to zero.
///
/// Pairs with coprime leads are skipped. The reductions run in parallel;
/// the reported failure is the first one in the canonical pair order
/// (lcm degree, then positions in the canonical basis).
pub fn buchberger_check(gens: &[Binomial], order: &MonomialOrder) -> BuchbergerReport {
    let basis = canonical_basis(gens, order);
    let n = basis.len();
    let mut pairs = Vec::new();
    let mut coprime = 0;
    for i in 0..n {
        for j in i + 1..n {
            if basis[i].lead.is_coprime(&basis[j].lead) {
                coprime += 1;
            } else {
                let deg = basis[i].lead.lcm(&basis[j].lead).degree();
                pairs.push((deg, i, j));
            }
        }
    }
    pairs.sort_unstable();
    let reducer = Reducer::new(basis.clone(), order);
    let failure = pairs.par_iter().find_map_first(|&(_, i, j)| {
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = reducer.reduce(&s)?;
        Some(PairFailure {
            first: basis[i].clone(),
            second: basis[j].clone(),
            s_polynomial: s,
            remainder: r,
        })
    });
    BuchbergerReport {
        basis_size: n,
        pairs_total: n * n.saturating_sub(1) / 2,
        pairs_coprime: coprime,
        pairs_reduced: pairs.len(),
        failure,
    }
}

/// Completes `gens` to a Gröbner basis of the ideal it generates.
///
/// Pairs are processed by increasing lcm degree. More than `max_pairs`
/// S-pair reductions yields [`Error::TooLarge`].
pub fn buchberger(gens: &[Binomial], order: &MonomialOrder, max_pairs: usize) -> Result<Vec<Binomial>> {
    let mut reducer = Reducer::new(Vec::new(), order);
    for g in canonical_basis(gens, order) {
        if let Some(r) = reducer.reduce(&g) {
            reducer.push(r);
        }
    }
    let mut queue: std::collections::BinaryHeap<std::cmp::Reverse<(u32, usize, usize)>> =
        std::collections::BinaryHeap::new();
    let n0 = reducer.basis().len();
    for i in 0..n0 {
        for j in i + 1..n0 {
            let deg = reducer.basis()[i].lead.lcm(&reducer.basis()[j].lead).degree();
            queue.push(std::cmp::Reverse((deg, i, j)));
        }
    }
    let mut steps = 0usize;
    while let Some(std::cmp::Reverse((_, i, j))) = queue.pop() {
        let (gi, gj) = (&reducer.basis()[i], &reducer.basis()[j]);
        if gi.lead.is_coprime(&gj.lead) {
            continue;
        }
        steps += 1;
        if steps > max_pairs {
            return Err(Error::TooLarge(format!(
                "Buchberger completion exceeded {max_pairs} S-pair reductions"
            )));
        }
        let Some(s) = s_polynomial(gi, gj, order) else { continue };
        if let Some(r) = reducer.reduce(&s) {
            let new = reducer.basis().len();
            for t in 0..new {
                let deg = reducer.basis()[t].lead.lcm(&r.lead).degree();
                queue.push(std::cmp::Reverse((deg, t, new)));
            }
            reducer.push(r);
        }
    }
    Ok(reducer.into_basis())
}

/// The reduced Gröbner basis determined by a Gröbner basis `gens`.
pub fn reduce_basis(gens: &[Binomial], order: &MonomialOrder) -> Vec<Binomial> {
    let basis = canonical_basis(gens, order);
    // minimal: drop elements whose lead is divisible by an earlier-kept lead
    let mut minimal: Vec<Binomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i
                && h.lead.divides(&g.lead)
                && (h.lead != g.lead || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let reducer = Reducer::new(minimal.clone(), order);
    let mut out: Vec<Binomial> = minimal
        .iter()
        .filter_map(|g| {
            let tail = reducer.reduce_monomial(&g.tail);
            Binomial::new(g.lead.clone(), tail)
        })
        .collect();
    out.sort_by(|x, y| order.compare(&x.lead, &y.lead));
    debug_assert!(out.iter().all(|g| g.lead_is_first(order)));
    out
}

/// Whether both lists generate the same ideal, given that each is a
/// Gröbner basis under `order`.
pub fn same_ideal(g1: &[Binomial], g2: &[Binomial], order: &MonomialOrder) -> bool {
    let r1 = Reducer::new(canonical_basis(g1, order), order);
    let r2 = Reducer::new(canonical_basis(g2, order), order);
    g1.iter().all(|g| r2.reduce(g).is_none()) && g2.iter().all(|g| r1.reduce(g).is_none())
}

pub fn compare_leads(a: &Binomial, b: &Binomial, order: &MonomialOrder) -> Ordering {
    order.compare(&a.lead, &b.lead)
}
