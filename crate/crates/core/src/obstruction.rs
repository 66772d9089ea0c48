//! Certificates that `kP(a₁,…,a_{k−1},m)` has no regular unimodular
//! triangulation when some `2 ≤ aⱼ ≤ m−2`.
//!
//! Write `A` for the k-fold sumset of the vertices of `P`. The argument runs:
//!
//! * for `2 ≤ i ≤ m−2` the second difference `w* = w_{i−1} + w_{i+1} − 2wᵢ`
//!   equals `v − v′` for some `v, v′ ∈ A`, and its mirror image at `m − i`
//!   equals `v′ − v`;
//! * with `a·a′ ≡ 1 (mod m)`, `w_{(a−1)a′} + w_{(a+1)a′} − 2w₁ = u − u′` for
//!   some `u, u′ ∈ A`, again with a mirrored identity at `m − 1`;
//! * the points `v + wᵢ`, `v′ + w_{m−i}`, `u + w₁`, `u′ + w_{m−1}` split as a
//!   sum of two lattice points of `kP` only in the obvious way.
//!
//! The first two facts give cubic binomials in the toric ideal; the third
//! forces, under any order with squarefree initial ideal, their first
//! monomials to lead. Multiplying mirrored pairs then forces, for every
//! class `{i, m−i}`, a strictly larger class `{j, m−j}` among the products
//! `yⱼy_{m−j}`, which no total order admits.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::catalog::{multisets, VariableCatalog};
use crate::algebra::ideal::verify_membership;
use crate::algebra::json::{binomial_from_json, binomial_to_json, BinomialJson};
use crate::algebra::monomial::{Binomial, Monomial};
use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::lattice::LatticeVector;

/// How a witness pair was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// The explicit coordinate recipe.
    Constructive,
    /// The zero difference, witnessed by `v = v′ = k·v₀`.
    Trivial,
    /// Exhaustive search over `A × A`.
    Search,
}

/// The k-fold vertex sumset `A`, sorted.
pub fn vertex_sumset(params: &FamilyParams) -> Vec<LatticeVector> {
    let verts = params.vertices();
    let d = params.dim();
    let mut out: Vec<LatticeVector> = multisets(params.k(), d)
        .into_iter()
        .map(|s| s.iter().fold(LatticeVector::zero(d), |acc, &i| &acc + &verts[i]))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `w_{i−1} + w_{i+1} − 2wᵢ`.
pub fn second_difference(params: &FamilyParams, i: i64) -> LatticeVector {
    &(&params.w(i - 1) + &params.w(i + 1)) - &params.w(i).scale(2)
}

/// Splits a difference `z` with entries in `{−1, 0, 1}` as `p − q` where
/// `p` has a 2 at the first nonzero coordinate `j₀`, ones where `z = 1`
/// elsewhere, and `q` has a 1 at `j₀` and ones where `z = −1`; the roles are
/// exchanged first when `z_{j₀} = −1`. Returns `(p, q)` with `p − q = z`.
fn split_signed(z: &LatticeVector) -> Option<(LatticeVector, LatticeVector)> {
    let j0 = z.0.iter().position(|&c| c != 0)?;
    let s = z.0[j0];
    let zz = z.scale(s);
    let d = z.dim();
    let mut p = vec![0; d];
    let mut q = vec![0; d];
    p[j0] = 2;
    q[j0] = 1;
    for j in 0..d {
        if j == j0 {
            continue;
        }
        match zz.0[j] {
            1 => p[j] = 1,
            -1 => q[j] = 1,
            _ => {}
        }
    }
    let (p, q) = (LatticeVector(p), LatticeVector(q));
    Some(if s == 1 { (p, q) } else { (q, p) })
}

fn search_pair(a_set: &HashSet<LatticeVector>, a_list: &[LatticeVector], diff: &LatticeVector) -> Option<(LatticeVector, LatticeVector)> {
    a_list.iter().find_map(|q| {
        let p = q + diff;
        a_set.contains(&p).then(|| (p, q.clone()))
    })
}

/// Witness pair `(v, v′)` for the second difference at `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceWitness {
    pub i: i64,
    pub w_star: LatticeVector,
    pub v: LatticeVector,
    pub v_prime: LatticeVector,
    pub method: Method,
}

/// `(v, v′) ∈ A × A` with `w_{i−1} + w_{i+1} − 2wᵢ = v − v′` and
/// `w_{m−i+1} + w_{m−i−1} − 2w_{m−i} = v′ − v`, for `2 ≤ i ≤ m−2`.
pub fn second_difference_witness(params: &FamilyParams, i: i64) -> Result<DifferenceWitness> {
    let m = params.m();
    if !(2..=m - 2).contains(&i) {
        return Err(Error::Precondition(format!("index {i} outside 2 ≤ i ≤ m−2 = {}", m - 2)));
    }
    let w_star = second_difference(params, i);
    let mirror = second_difference(params, m - i);
    if mirror != w_star.scale(-1) {
        return Err(Error::Internal(format!(
            "second differences at {i} and {} are not opposite: {w_star} vs {mirror}",
            m - i
        )));
    }
    let a_list = vertex_sumset(params);
    let a_set: HashSet<LatticeVector> = a_list.iter().cloned().collect();
    let d = params.dim();
    let (v, v_prime, method) = if w_star.is_zero() {
        let z = LatticeVector::zero(d);
        (z.clone(), z, Method::Trivial)
    } else {
        match split_signed(&w_star).filter(|(p, q)| a_set.contains(p) && a_set.contains(q)) {
            Some((p, q)) => (p, q, Method::Constructive),
            None => {
                log::warn!("constructive witness for i = {i} failed; searching A × A");
                let (p, q) = search_pair(&a_set, &a_list, &w_star).ok_or_else(|| {
                    Error::Internal(format!("no pair in A × A has difference {w_star}"))
                })?;
                (p, q, Method::Search)
            }
        }
    };
    Ok(DifferenceWitness {
        i,
        w_star,
        v,
        v_prime,
        method,
    })
}

/// Witness pair `(u, u′)` for the difference built from `a` and its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseWitness {
    pub a: i64,
    pub a_prime: i64,
    /// `(a−1)a′ mod m` and `(a+1)a′ mod m`.
    pub lower: i64,
    pub upper: i64,
    /// `((m−1)a−1)a′ mod m` and `((m−1)a+1)a′ mod m`.
    pub mirror_lower: i64,
    pub mirror_upper: i64,
    pub w_double_star: LatticeVector,
    pub u: LatticeVector,
    pub u_prime: LatticeVector,
    pub method: Method,
}

pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// `(u, u′) ∈ A × A` with `w_{(a−1)a′} + w_{(a+1)a′} − 2w₁ = u − u′` and
/// `w_{((m−1)a−1)a′} + w_{((m−1)a+1)a′} − 2w_{m−1} = u′ − u`, where
/// `a·a′ ≡ 1 (mod m)`.
pub fn inverse_difference_witness(params: &FamilyParams, a: i64) -> Result<InverseWitness> {
    let m = params.m();
    let k = params.k();
    if !(2..=m - 2).contains(&a) {
        return Err(Error::Precondition(format!("a = {a} violates 2 ≤ a ≤ m−2 (m = {m})")));
    }
    let a_prime = mod_inverse(a, m)
        .ok_or_else(|| Error::Precondition(format!("a = {a} has no inverse modulo {m}")))?;
    if !(2..=m - 2).contains(&a_prime) {
        return Err(Error::Precondition(format!("inverse a′ = {a_prime} violates 2 ≤ a′ ≤ m−2")));
    }
    let ja = (1..k)
        .find(|&j| params.a_at(j) == a)
        .ok_or_else(|| Error::Precondition(format!("a = {a} is not one of the parameters a₁…a_{{k−1}}")))?;
    let lower = ((a - 1) * a_prime).rem_euclid(m);
    let upper = ((a + 1) * a_prime).rem_euclid(m);
    let mirror_lower = (((m - 1) * a - 1) * a_prime).rem_euclid(m);
    let mirror_upper = (((m - 1) * a + 1) * a_prime).rem_euclid(m);
    let w = |i: i64| params.w(i);
    let wss = &(&w(lower) + &w(upper)) - &w(1).scale(2);
    let mirror = &(&w(mirror_lower) + &w(mirror_upper)) - &w(m - 1).scale(2);
    let apex = params.apex();
    let d = params.dim();

    let a_list = vertex_sumset(params);
    let a_set: HashSet<LatticeVector> = a_list.iter().cloned().collect();
    let valid = |u: &LatticeVector, up: &LatticeVector| {
        a_set.contains(u) && a_set.contains(up) && u - up == wss && up - u == mirror
    };

    let z = &wss - &apex;
    let constructive = if z.is_zero() {
        Some((apex.clone(), LatticeVector::zero(d), Method::Constructive))
    } else {
        // the coordinate pair belonging to a is zero in z
        let mirror_ja = 2 * k - 1 - ja;
        if z.0[ja - 1] != 0 || z.0[mirror_ja - 1] != 0 {
            None
        } else {
            // p − q = z, so (apex + p) − q = w**
            split_signed(&z).map(|(p, q)| (&apex + &p, q, Method::Constructive))
        }
    };
    let (u, u_prime, method) = match constructive.filter(|(u, up, _)| valid(u, up)) {
        Some(t) => t,
        None => {
            log::warn!("constructive witness for a = {a} failed; searching A × A");
            let (u, up) = search_pair(&a_set, &a_list, &wss)
                .filter(|(u, up)| valid(u, up))
                .ok_or_else(|| Error::Internal(format!("no pair in A × A has difference {wss}")))?;
            (u, up, Method::Search)
        }
    };
    Ok(InverseWitness {
        a,
        a_prime,
        lower,
        upper,
        mirror_lower,
        mirror_upper,
        w_double_star: wss,
        u,
        u_prime,
        method,
    })
}

/// Decompositions of one target `base + w_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetCheck {
    pub base: LatticeVector,
    pub w_index: i64,
    pub target: LatticeVector,
    /// Whether the argument needs this target.
    pub required: bool,
    /// Unordered pairs `{h₁, h₂} ⊂ A` with `h₁ + h₂ = target`.
    pub decompositions_in_a: usize,
    /// Unordered pairs `{h₁, h₂} ⊂ kP ∩ ℤᵈ` with `h₁ + h₂ = target`.
    pub decompositions_in_kp: usize,
    /// Pairs in `kP ∩ ℤᵈ` not containing `base`.
    pub counterexamples: Vec<(LatticeVector, LatticeVector)>,
}

impl TargetCheck {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Outcome of the exhaustive indecomposability scans.
///
/// Under the reading `h₁, h₂ ∈ A` every target's last coordinate is not a
/// multiple of `m`, so no decomposition exists and the statement holds
/// vacuously; the reading `h₁, h₂ ∈ kP ∩ ℤᵈ` is the one the argument uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndecomposabilityReport {
    pub targets: Vec<TargetCheck>,
    pub holds_in_a: bool,
    pub holds_in_kp: bool,
    pub required_hold_in_kp: bool,
}

fn decompositions(
    target: &LatticeVector,
    points: &[LatticeVector],
    set: &HashSet<LatticeVector>,
) -> Vec<(LatticeVector, LatticeVector)> {
    points
        .iter()
        .filter_map(|h1| {
            let h2 = target - h1;
            (h1 <= &h2 && set.contains(&h2)).then(|| (h1.clone(), h2))
        })
        .collect()
}

fn check_target(
    base: &LatticeVector,
    w_index: i64,
    required: bool,
    params: &FamilyParams,
    a: (&[LatticeVector], &HashSet<LatticeVector>),
    kp: (&[LatticeVector], &HashSet<LatticeVector>),
) -> TargetCheck {
    let target = base + &params.w(w_index);
    let in_a = decompositions(&target, a.0, a.1);
    let in_kp = decompositions(&target, kp.0, kp.1);
    let counterexamples = in_kp
        .iter()
        .filter(|(h1, h2)| h1 != base && h2 != base)
        .cloned()
        .collect();
    TargetCheck {
        base: base.clone(),
        w_index,
        target,
        required,
        decompositions_in_a: in_a.len(),
        decompositions_in_kp: in_kp.len(),
        counterexamples,
    }
}

/// Exhaustively decomposes `v + wⱼ` and `v′ + wⱼ` (all `1 ≤ j ≤ m−1`) for
/// every nontrivial difference witness, and `u + w₁`, `u′ + w_{m−1}`.
///
/// Targets `v + wᵢ`, `v′ + w_{m−i}`, `u + w₁` and `u′ + w_{m−1}` are marked
/// required: they are the quadratic divisors of the second monomials of the
/// cubic binomials.
pub fn indecomposability_check(
    params: &FamilyParams,
    differences: &[DifferenceWitness],
    inverse: &InverseWitness,
) -> IndecomposabilityReport {
    let m = params.m();
    let a_list = vertex_sumset(params);
    let a_set: HashSet<LatticeVector> = a_list.iter().cloned().collect();
    let mut kp_list = a_list.clone();
    kp_list.extend((1..m).map(|i| params.w(i)));
    kp_list.sort();
    let kp_set: HashSet<LatticeVector> = kp_list.iter().cloned().collect();

    let mut jobs: Vec<(LatticeVector, i64, bool)> = Vec::new();
    for dw in differences.iter().filter(|d| d.method != Method::Trivial) {
        for j in 1..m {
            jobs.push((dw.v.clone(), j, j == dw.i));
            jobs.push((dw.v_prime.clone(), j, j == m - dw.i));
        }
    }
    jobs.push((inverse.u.clone(), 1, true));
    jobs.push((inverse.u_prime.clone(), m - 1, true));

    let targets: Vec<TargetCheck> = jobs
        .par_iter()
        .map(|(base, j, req)| {
            check_target(
                base,
                *j,
                *req,
                params,
                (&a_list, &a_set),
                (&kp_list, &kp_set),
            )
        })
        .collect();
    IndecomposabilityReport {
        holds_in_a: targets
            .iter()
            .all(|t| t.decompositions_in_a == 0 || t.holds()),
        holds_in_kp: targets.iter().all(TargetCheck::holds),
        required_hold_in_kp: targets.iter().filter(|t| t.required).all(TargetCheck::holds),
        targets,
    }
}

/// The class `{i, m−i}`, represented by `min(i, m−i)`.
pub fn class_of(i: i64, m: i64) -> i64 {
    i.min(m - i)
}

/// One forced comparison: `yᵢy_{m−i}` is strictly below `yⱼy_{m−j}` for at
/// least one listed class `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLink {
    pub class: i64,
    /// `"second-difference"` or `"inverse-difference"`.
    pub source: String,
    /// Index `i` (second difference) or `a` (inverse difference) used.
    pub index: i64,
    pub larger_candidates: Vec<i64>,
}

/// A binomial of the argument, with the role it plays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBinomial {
    pub source: String,
    pub index: i64,
    pub binomial: BinomialJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub k: usize,
    pub m: i64,
    pub a: Vec<i64>,
    pub second_differences: Vec<DifferenceWitness>,
    pub inverse_difference: InverseWitness,
    pub indecomposability: IndecomposabilityReport,
    pub binomials: Vec<CertificateBinomial>,
    pub chain: Vec<ChainLink>,
    /// Classes `c₀ → c₁ → ⋯ → c₀` with each step a listed candidate.
    pub cycle: Vec<i64>,
}

fn var_monomial(cat: &VariableCatalog, p: &LatticeVector, ys: &[i64]) -> Result<Monomial> {
    let x = cat
        .var_at_point(p)
        .filter(|&v| cat.in_vertex_sumset(&cat.point(v)))
        .ok_or_else(|| Error::Internal(format!("{p} is not a k-fold vertex sum")))?;
    let mut mono = Monomial::var(cat.len(), x);
    for &y in ys {
        mono.bump(cat.y(y as usize), 1);
    }
    Ok(mono)
}

fn y_monomial(cat: &VariableCatalog, ys: &[i64]) -> Monomial {
    let mut mono = Monomial::one(cat.len());
    for &y in ys {
        mono.bump(cat.y(y as usize), 1);
    }
    mono
}

/// The two cubic (or quadratic, when `w* = 0`) binomials of a second
/// difference witness, first monomial first.
pub fn difference_binomials(cat: &VariableCatalog, dw: &DifferenceWitness) -> Result<[Binomial; 2]> {
    let (i, m) = (dw.i, cat.m());
    let pair = |lead: Monomial, tail: Monomial| {
        Binomial::new(lead, tail).ok_or_else(|| Error::Internal("zero binomial".into()))
    };
    if dw.method == Method::Trivial {
        return Ok([
            pair(y_monomial(cat, &[i - 1, i + 1]), y_monomial(cat, &[i, i]))?,
            pair(y_monomial(cat, &[m - i + 1, m - i - 1]), y_monomial(cat, &[m - i, m - i]))?,
        ]);
    }
    Ok([
        pair(
            var_monomial(cat, &dw.v_prime, &[i - 1, i + 1])?,
            var_monomial(cat, &dw.v, &[i, i])?,
        )?,
        pair(
            var_monomial(cat, &dw.v, &[m - i + 1, m - i - 1])?,
            var_monomial(cat, &dw.v_prime, &[m - i, m - i])?,
        )?,
    ])
}

pub fn inverse_binomials(cat: &VariableCatalog, iw: &InverseWitness) -> Result<[Binomial; 2]> {
    let m = cat.m();
    let pair = |lead: Monomial, tail: Monomial| {
        Binomial::new(lead, tail).ok_or_else(|| Error::Internal("zero binomial".into()))
    };
    Ok([
        pair(
            var_monomial(cat, &iw.u_prime, &[iw.lower, iw.upper])?,
            var_monomial(cat, &iw.u, &[1, 1])?,
        )?,
        pair(
            var_monomial(cat, &iw.u, &[iw.mirror_lower, iw.mirror_upper])?,
            var_monomial(cat, &iw.u_prime, &[m - 1, m - 1])?,
        )?,
    ])
}

fn chain_links(params: &FamilyParams, inverse: &InverseWitness) -> Vec<ChainLink> {
    let m = params.m();
    let mut links = vec![ChainLink {
        class: 1,
        source: "inverse-difference".into(),
        index: inverse.a,
        larger_candidates: vec![class_of(inverse.lower, m), class_of(inverse.upper, m)],
    }];
    for c in 2..=m / 2 {
        links.push(ChainLink {
            class: c,
            source: "second-difference".into(),
            index: c,
            larger_candidates: vec![class_of(c - 1, m), class_of(c + 1, m)],
        });
    }
    links
}

/// Follows, from class 1, the first candidate different from the current
/// class (or the class itself when it is the only candidate) until a class
/// repeats, and returns the closed cycle.
fn find_cycle(links: &[ChainLink]) -> Option<Vec<i64>> {
    let next = |c: i64| {
        let link = links.iter().find(|l| l.class == c)?;
        link.larger_candidates
            .iter()
            .copied()
            .find(|&j| j != c)
            .or_else(|| link.larger_candidates.first().copied())
    };
    let mut path = vec![1];
    loop {
        let cur = *path.last().unwrap();
        let nxt = next(cur)?;
        if let Some(pos) = path.iter().position(|&c| c == nxt) {
            let mut cycle = path[pos..].to_vec();
            cycle.push(nxt);
            return Some(cycle);
        }
        path.push(nxt);
    }
}

/// The parameter `a` used for the inverse-difference step: the first `aⱼ`
/// with `2 ≤ aⱼ ≤ m−2`.
pub fn hypothesis_parameter(params: &FamilyParams) -> Option<i64> {
    let m = params.m();
    params.a().iter().copied().find(|&a| 2 <= a && a <= m - 2)
}

/// Assembles and self-checks the full certificate.
pub fn build_certificate(params: &FamilyParams) -> Result<ObstructionCertificate> {
    let m = params.m();
    let a = hypothesis_parameter(params).ok_or_else(|| {
        Error::Precondition(format!(
            "hypothesis not met: no parameter a with 2 ≤ a ≤ m−2 among {:?} (m = {m})",
            params.a()
        ))
    })?;
    let cat = VariableCatalog::new(params);
    let second_differences = (2..=m - 2)
        .map(|i| second_difference_witness(params, i))
        .collect::<Result<Vec<_>>>()?;
    let inverse_difference = inverse_difference_witness(params, a)?;
    let indecomposability = indecomposability_check(params, &second_differences, &inverse_difference);

    let mut binomials = Vec::new();
    for dw in &second_differences {
        for b in difference_binomials(&cat, dw)? {
            binomials.push(CertificateBinomial {
                source: "second-difference".into(),
                index: dw.i,
                binomial: binomial_to_json(&cat, &b),
            });
        }
    }
    for b in inverse_binomials(&cat, &inverse_difference)? {
        binomials.push(CertificateBinomial {
            source: "inverse-difference".into(),
            index: a,
            binomial: binomial_to_json(&cat, &b),
        });
    }
    let chain = chain_links(params, &inverse_difference);
    let cycle = find_cycle(&chain).ok_or_else(|| Error::Internal("comparison graph has no cycle".into()))?;
    let cert = ObstructionCertificate {
        k: params.k(),
        m,
        a: params.a().to_vec(),
        second_differences,
        inverse_difference,
        indecomposability,
        binomials,
        chain,
        cycle,
    };
    let check = check_certificate(&cert)?;
    if !check.valid() {
        return Err(Error::Internal(format!(
            "assembled certificate fails its own check: {}",
            check.failures.join("; ")
        )));
    }
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateCheck {
    pub checked_binomials: usize,
    pub checked_targets: usize,
    pub failures: Vec<String>,
}

impl CertificateCheck {
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-validates a certificate from its data alone: parameters, every
/// witness equality and `A`-membership, the binomials (shape and toric
/// membership), a fresh exhaustive indecomposability scan, the chain
/// candidates and the cycle.
pub fn check_certificate(cert: &ObstructionCertificate) -> Result<CertificateCheck> {
    let params = FamilyParams::new(cert.k, cert.m, cert.a.clone())?;
    let m = params.m();
    let cat = VariableCatalog::new(&params);
    let a_set: HashSet<LatticeVector> = vertex_sumset(&params).into_iter().collect();
    let mut failures = Vec::new();
    let mut fail = |s: String| failures.push(s);

    if hypothesis_parameter(&params).is_none() {
        fail("no parameter a with 2 ≤ a ≤ m−2".into());
    }

    let seen: BTreeSet<i64> = cert.second_differences.iter().map(|d| d.i).collect();
    if seen != (2..=m - 2).collect::<BTreeSet<_>>() || seen.len() != cert.second_differences.len() {
        fail(format!("second differences cover {seen:?}, expected 2..={}", m - 2));
    }
    let mut expected_binomials: Vec<(String, i64, Binomial)> = Vec::new();
    for dw in &cert.second_differences {
        let i = dw.i;
        if !(2..=m - 2).contains(&i) {
            continue;
        }
        let ws = second_difference(&params, i);
        if dw.w_star != ws {
            fail(format!("i = {i}: stored w* {} differs from {ws}", dw.w_star));
        }
        if &dw.v - &dw.v_prime != ws {
            fail(format!("i = {i}: v − v′ ≠ w*"));
        }
        if &dw.v_prime - &dw.v != second_difference(&params, m - i) {
            fail(format!("i = {i}: mirrored identity fails"));
        }
        if !a_set.contains(&dw.v) || !a_set.contains(&dw.v_prime) {
            fail(format!("i = {i}: witness outside A"));
        }
        if (dw.method == Method::Trivial) != ws.is_zero() {
            fail(format!("i = {i}: trivial flag does not match w*"));
        }
        match difference_binomials(&cat, dw) {
            Ok(bs) => expected_binomials.extend(bs.into_iter().map(|b| ("second-difference".into(), i, b))),
            Err(e) => fail(format!("i = {i}: {e}")),
        }
    }

    let iw = &cert.inverse_difference;
    let a = iw.a;
    if !(2..=m - 2).contains(&a) || !params.a().contains(&a) {
        fail(format!("inverse difference uses a = {a}, not an admissible parameter"));
    }
    if (a * iw.a_prime).rem_euclid(m) != 1 {
        fail(format!("a·a′ = {a}·{} ≢ 1 (mod {m})", iw.a_prime));
    }
    let idx_ok = [
        (iw.lower, (a - 1) * iw.a_prime),
        (iw.upper, (a + 1) * iw.a_prime),
        (iw.mirror_lower, ((m - 1) * a - 1) * iw.a_prime),
        (iw.mirror_upper, ((m - 1) * a + 1) * iw.a_prime),
    ]
    .iter()
    .all(|&(stored, raw)| stored == raw.rem_euclid(m) && (1..m).contains(&stored));
    if !idx_ok {
        fail("inverse-difference indices are wrong".into());
    } else {
        let w = |i: i64| params.w(i);
        let wss = &(&w(iw.lower) + &w(iw.upper)) - &w(1).scale(2);
        let mirror = &(&w(iw.mirror_lower) + &w(iw.mirror_upper)) - &w(m - 1).scale(2);
        if iw.w_double_star != wss || &iw.u - &iw.u_prime != wss {
            fail("u − u′ ≠ w**".into());
        }
        if &iw.u_prime - &iw.u != mirror {
            fail("mirrored inverse-difference identity fails".into());
        }
        if !a_set.contains(&iw.u) || !a_set.contains(&iw.u_prime) {
            fail("u or u′ outside A".into());
        }
        match inverse_binomials(&cat, iw) {
            Ok(bs) => expected_binomials.extend(bs.into_iter().map(|b| ("inverse-difference".into(), a, b))),
            Err(e) => fail(format!("inverse difference: {e}")),
        }
    }

    if cert.binomials.len() != expected_binomials.len() {
        fail(format!(
            "{} binomials listed, {} expected",
            cert.binomials.len(),
            expected_binomials.len()
        ));
    }
    for (cb, (src, idx, expected)) in cert.binomials.iter().zip(&expected_binomials) {
        match binomial_from_json(&cat, &cb.binomial) {
            Ok(b) => {
                if &b != expected || &cb.source != src || cb.index != *idx {
                    fail(format!("binomial for {src} {idx} does not match its witness"));
                }
                if !verify_membership(&cat, &b) {
                    fail(format!("binomial for {src} {idx} is not in the toric ideal"));
                }
            }
            Err(e) => fail(format!("binomial for {src} {idx}: {e}")),
        }
    }

    let fresh = indecomposability_check(&params, &cert.second_differences, iw);
    if fresh != cert.indecomposability {
        fail("stored indecomposability report differs from a fresh scan".into());
    }
    if !fresh.required_hold_in_kp {
        let bad = fresh
            .targets
            .iter()
            .find(|t| t.required && !t.holds())
            .map(|t| format!("{} = {} + w{}", t.target, t.base, t.w_index))
            .unwrap_or_default();
        fail(format!("indecomposability fails for required target {bad}"));
    }

    let expected_chain = chain_links(&params, iw);
    if cert.chain != expected_chain {
        fail("comparison chain does not match the witnesses".into());
    }
    let classes: BTreeSet<i64> = (1..m).map(|i| class_of(i, m)).collect();
    let covered: BTreeSet<i64> = cert.chain.iter().map(|l| l.class).collect();
    if classes != covered {
        fail(format!("chain covers classes {covered:?}, expected {classes:?}"));
    }
    let cycle_ok = cert.cycle.len() >= 2
        && cert.cycle.first() == cert.cycle.last()
        && cert.cycle.windows(2).all(|w| {
            cert.chain
                .iter()
                .any(|l| l.class == w[0] && l.larger_candidates.contains(&w[1]))
        });
    if !cycle_ok {
        fail(format!("{:?} is not a closed walk along chain candidates", cert.cycle));
    }

    Ok(CertificateCheck {
        checked_binomials: cert.binomials.len(),
        checked_targets: fresh.targets.len(),
        failures,
    })
}
