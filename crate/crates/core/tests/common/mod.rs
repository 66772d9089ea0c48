//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dilate_core::algebra::catalog::{multisets, sorted_split, VariableCatalog};
use dilate_core::algebra::groebner::Reducer;
use dilate_core::algebra::ideal::pi_image;
use dilate_core::algebra::monomial::Monomial;
use dilate_core::algebra::order::{sorting_weight, MonomialOrder};
use dilate_core::families::{canonical_members, generate_g};
use dilate_core::family::{build_simplex, FamilyParams};
use num_bigint::BigInt;

/// Every valid parameter vector for `(k, m)`.
pub fn all_params(k: usize, m: i64) -> Vec<FamilyParams> {
    let choices: Vec<i64> = (1..=m / 2).filter(|a| a.gcd(&m) == 1).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k - 1];
    loop {
        let a: Vec<i64> = idx.iter().map(|&i| choices[i]).collect();
        out.push(FamilyParams::new(k, m, a).unwrap());
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let mut m = Monomial::one(nvars);
    let deg = rng.gen_range(0..=max_degree);
    for _ in 0..deg {
        m.bump(rng.gen_range(0..nvars), 1);
    }
    m
}

/// Totality, antisymmetry, transitivity, compatibility with products and
/// `1` as minimum, on `trials` random triples.
pub fn check_order_axioms(
    order: &MonomialOrder,
    rng: &mut ChaCha8Rng,
    trials: usize,
    max_degree: u32,
) -> Result<(), String> {
    let n = order.nvars();
    let one = Monomial::one(n);
    for _ in 0..trials {
        let a = random_monomial(rng, n, max_degree);
        let b = random_monomial(rng, n, max_degree);
        let c = random_monomial(rng, n, max_degree);
        let ab = order.compare(&a, &b);
        if ab != order.compare(&b, &a).reverse() {
            return Err(format!("asymmetric comparison of {a:?} and {b:?}"));
        }
        if (ab == Ordering::Equal) != (a == b) {
            return Err(format!("distinct monomials compare equal: {a:?}, {b:?}"));
        }
        let bc = order.compare(&b, &c);
        if ab != Ordering::Greater && bc != Ordering::Greater && order.compare(&a, &c) == Ordering::Greater {
            return Err(format!("transitivity fails on {a:?} ≤ {b:?} ≤ {c:?}"));
        }
        if order.compare(&a.mul(&c), &b.mul(&c)) != ab {
            return Err(format!("multiplication by {c:?} changes the comparison of {a:?}, {b:?}"));
        }
        if !a.is_one() && order.compare(&one, &a) != Ordering::Less {
            return Err(format!("1 is not below {a:?}"));
        }
    }
    Ok(())
}

/// In every fiber of pairs of k-sequences with the same multiset union, the
/// sorted pair has strictly the smallest sorting weight, and among
/// non-alias pairs the composite order's minimum is the sorted pair
/// whenever the sorted pair itself avoids the aliases.
pub fn check_sorted_minimality(k: usize, m: i64) -> Result<usize, String> {
    let params = FamilyParams::unit(k, m).unwrap();
    let cat = VariableCatalog::new(&params);
    let order = MonomialOrder::composite(&cat);
    let d = params.dim();
    let seqs = multisets(k, d);
    let mut fibers: std::collections::BTreeMap<Vec<usize>, Vec<(usize, usize)>> = Default::default();
    for i in 0..seqs.len() {
        for j in i..seqs.len() {
            let mut all = [seqs[i].clone(), seqs[j].clone()].concat();
            all.sort_unstable();
            fibers.entry(all).or_default().push((i, j));
        }
    }
    for (multiset, pairs) in &fibers {
        let sorted = sorted_split(multiset.clone(), 2);
        let weight = |&(i, j): &(usize, usize)| sorting_weight(&seqs[i], d) + sorting_weight(&seqs[j], d);
        let sorted_weight = sorting_weight(&sorted[0], d) + sorting_weight(&sorted[1], d);
        for p in pairs {
            let is_sorted = (seqs[p.0].clone(), seqs[p.1].clone()) == (sorted[0].clone(), sorted[1].clone());
            if !is_sorted && weight(p) <= sorted_weight {
                return Err(format!(
                    "fiber {multiset:?}: {:?}·{:?} does not weigh more than the sorted pair",
                    seqs[p.0], seqs[p.1]
                ));
            }
        }
        let sorted_mono = cat.monomial_of_sequences(&sorted).unwrap();
        if cat.sequences_of(&sorted_mono).map(|s| s.len()) == Some(2)
            && sorted_mono.support().all(|v| cat.is_x(v))
        {
            for p in pairs {
                let Some(mono) = cat.monomial_of_sequences(&[seqs[p.0].clone(), seqs[p.1].clone()]) else {
                    continue;
                };
                if mono.support().all(|v| cat.is_x(v))
                    && mono != sorted_mono
                    && order.compare(&mono, &sorted_mono) != Ordering::Greater
                {
                    return Err(format!("fiber {multiset:?}: composite order misses the sorted minimum"));
                }
            }
        }
    }
    Ok(fibers.len())
}

/// Normal forms modulo `G` for `P(1,…,1,m)` are fixed points of reduction,
/// standard, and keep the `π`-image.
pub fn check_normal_form_idempotence(
    k: usize,
    m: i64,
    rng: &mut ChaCha8Rng,
    trials: usize,
) -> Result<(), String> {
    let family = generate_g(k, m).unwrap();
    let cat = VariableCatalog::new(&family.params);
    let order = MonomialOrder::composite(&cat);
    let basis = canonical_members(&family, &order);
    let leads: Vec<Monomial> = basis.iter().map(|g| g.lead.clone()).collect();
    let reducer = Reducer::new(basis, &order);
    for _ in 0..trials {
        let f = random_monomial(rng, cat.len(), 6);
        let nf = reducer.reduce_monomial(&f);
        if reducer.reduce_monomial(&nf) != nf {
            return Err(format!("normal form of {f:?} is not fixed"));
        }
        if leads.iter().any(|l| l.divides(&nf)) {
            return Err(format!("normal form of {f:?} is divisible by a lead"));
        }
        if pi_image(&cat, &nf) != pi_image(&cat, &f) {
            return Err(format!("reduction of {f:?} changed its image"));
        }
    }
    Ok(())
}

/// `δ(1) = normalized volume` and `Σ δⱼ C(n−j+d, d) = |nP ∩ ℤᵈ|` for
/// `0 ≤ n ≤ nmax`.
pub fn check_ehrhart_volume(params: &FamilyParams, nmax: i64) -> Result<(), String> {
    let s = build_simplex(params).map_err(|e| e.to_string())?;
    let delta = s.delta_polynomial().map_err(|e| e.to_string())?;
    if delta.sum() != s.normalized_volume() {
        return Err(format!("{params:?}: δ(1) ≠ volume"));
    }
    for n in 1..=nmax {
        let count = s.enumerate_dilation_points(n).map_err(|e| e.to_string())?.len();
        if delta.ehrhart(n as u64) != BigInt::from(count) {
            return Err(format!("{params:?}: Ehrhart count mismatch at n = {n}"));
        }
    }
    Ok(())
}
