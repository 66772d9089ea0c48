//! The empty simplices `P(a₁,…,a_{k−1},m)` of dimension `2k−1` whose
//! δ-polynomial is `1 + (m−1)tᵏ`, their box points `wᵢ`, and the integer
//! decomposition behaviour of their dilations.

use std::collections::HashSet;

use log::warn;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{iterated_sumset, sumset, LatticeSimplex, LatticeVector};

/// Parameters `(k, m, a₁,…,a_{k−1})` with `1 ≤ aᵢ ≤ m/2` and `gcd(aᵢ, m) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    k: usize,
    m: i64,
    a: Vec<i64>,
}

/// A parameter rewritten from `aᵢ` to `m − aᵢ` during normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjustment {
    pub index: usize,
    pub given: i64,
    pub replaced_by: i64,
}

impl FamilyParams {
    pub fn new(k: usize, m: i64, a: Vec<i64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!("k = {k} violates k ≥ 2")));
        }
        if m < 2 {
            return Err(Error::InvalidParams(format!("m = {m} violates m ≥ 2")));
        }
        if a.len() != k - 1 {
            return Err(Error::InvalidParams(format!(
                "expected k−1 = {} values of a, got {}",
                k - 1,
                a.len()
            )));
        }
        for (i, &ai) in a.iter().enumerate() {
            if ai < 1 || 2 * ai > m {
                return Err(Error::InvalidParams(format!(
                    "a{} = {ai} violates 1 ≤ a ≤ m/2 (m = {m})",
                    i + 1
                )));
            }
            if ai.gcd(&m) != 1 {
                return Err(Error::InvalidParams(format!(
                    "a{} = {ai} violates gcd(a, m) = 1 (m = {m})",
                    i + 1
                )));
            }
        }
        Ok(FamilyParams { k, m, a })
    }

    /// Like [`FamilyParams::new`], but first replaces any `m/2 < aᵢ < m`
    /// coprime to `m` by `m − aᵢ`, logging a warning for each replacement.
    pub fn normalized(k: usize, m: i64, a: Vec<i64>) -> Result<(Self, Vec<Adjustment>)> {
        let mut adjustments = Vec::new();
        let a = a
            .into_iter()
            .enumerate()
            .map(|(i, ai)| {
                if 2 * ai > m && ai < m && ai.gcd(&m) == 1 {
                    warn!("a{} = {ai} replaced by m − a{} = {}", i + 1, i + 1, m - ai);
                    adjustments.push(Adjustment {
                        index: i + 1,
                        given: ai,
                        replaced_by: m - ai,
                    });
                    m - ai
                } else {
                    ai
                }
            })
            .collect();
        Ok((FamilyParams::new(k, m, a)?, adjustments))
    }

    /// The parameters `a = (1,…,1)`.
    pub fn unit(k: usize, m: i64) -> Result<Self> {
        FamilyParams::new(k, m, vec![1; k.saturating_sub(1)])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// `aᵢ`, 1-based.
    pub fn a_at(&self, i: usize) -> i64 {
        self.a[i - 1]
    }

    /// `bᵢ = m − aᵢ`, 1-based.
    pub fn b_at(&self, i: usize) -> i64 {
        self.m - self.a[i - 1]
    }

    pub fn dim(&self) -> usize {
        2 * self.k - 1
    }

    pub fn is_unit(&self) -> bool {
        self.a.iter().all(|&x| x == 1)
    }

    /// The last vertex `Σ aᵢeᵢ + Σ_{j=k}^{d−1} (m − a_{d−j}) eⱼ + m e_d`.
    pub fn apex(&self) -> LatticeVector {
        let d = self.dim();
        let mut c = vec![0; d];
        for j in 1..self.k {
            c[j - 1] = self.a_at(j);
        }
        for j in self.k..d {
            c[j - 1] = self.b_at(d - j);
        }
        c[d - 1] = self.m;
        LatticeVector(c)
    }

    /// Vertices `v₀ = 0, vᵢ = eᵢ (1 ≤ i ≤ d−1), v_d = apex`.
    pub fn vertices(&self) -> Vec<LatticeVector> {
        let d = self.dim();
        let mut verts = vec![LatticeVector::zero(d)];
        verts.extend((1..d).map(|i| LatticeVector::unit(d, i)));
        verts.push(self.apex());
        verts
    }

    /// The point `wᵢ`, `1 ≤ i ≤ m−1`.
    pub fn w(&self, i: i64) -> LatticeVector {
        let (k, m) = (self.k, self.m);
        let d = self.dim();
        let mut c = vec![0; d];
        for j in 1..k {
            let aj = self.a_at(j);
            c[j - 1] = ((i * (m - aj)).rem_euclid(m) + i * aj) / m;
        }
        for j in k..=2 * k - 2 {
            let r = 2 * k - 1 - j;
            let ar = self.a_at(r);
            c[j - 1] = ((i * ar).rem_euclid(m) + i * (m - ar)) / m;
        }
        c[d - 1] = i;
        LatticeVector(c)
    }
}

pub fn build_simplex(params: &FamilyParams) -> Result<LatticeSimplex> {
    LatticeSimplex::new(params.vertices())
}

/// `w₁, …, w_{m−1}` in order.
pub fn w_points(params: &FamilyParams) -> Vec<LatticeVector> {
    (1..params.m()).map(|i| params.w(i)).collect()
}

/// Both sides of `nP ∩ ℤᵈ = (n-fold sumset) ⊔ ((n−k)-fold sumset + {wᵢ})`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub lattice_points: usize,
    pub deep_part: usize,
    pub shifted_part: usize,
    pub equal: bool,
    pub disjoint: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.equal && self.disjoint
    }
}

pub fn verify_decomposition(params: &FamilyParams, n: usize) -> Result<DecompositionReport> {
    let k = params.k();
    if n < k {
        return Err(Error::Precondition(format!("n = {n} must be at least k = {k}")));
    }
    let d = params.dim();
    let simplex = build_simplex(params)?;
    let lhs = simplex.enumerate_dilation_points(n as i64)?;
    let verts = params.vertices();
    let deep = iterated_sumset(&verts, n, d);
    let shifted = sumset(&iterated_sumset(&verts, n - k, d), &w_points(params));

    let deep_set: HashSet<&LatticeVector> = deep.iter().collect();
    let disjoint = shifted.iter().all(|p| !deep_set.contains(p));
    let mut union: Vec<LatticeVector> = deep.iter().chain(shifted.iter()).cloned().collect();
    union.sort();
    union.dedup();
    Ok(DecompositionReport {
        n,
        lattice_points: lhs.len(),
        deep_part: deep.len(),
        shifted_part: shifted.len(),
        equal: union == lhs,
        disjoint,
    })
}

/// Outcome of a bounded IDP test.
#[derive(Clone, Debug, Serialize)]
pub struct IdpOutcome {
    pub holds: bool,
    /// First level `ℓ` and point of `ℓ(nS)` that is not a sum of a point of
    /// `(ℓ−1)(nS)` and a point of `nS`.
    pub failure: Option<(usize, LatticeVector)>,
}

/// Checks `ℓ(nS) ∩ ℤᵈ = (ℓ−1)(nS) ∩ ℤᵈ + nS ∩ ℤᵈ` for `2 ≤ ℓ ≤ depth`.
///
/// With `depth ≥ d − 1` this decides whether `nS` has IDP.
pub fn idp_check(simplex: &LatticeSimplex, n: i64, depth: usize) -> Result<IdpOutcome> {
    if depth < 2 {
        return Err(Error::Precondition(format!("depth = {depth} must be at least 2")));
    }
    let base = simplex.enumerate_dilation_points(n)?;
    let mut previous = base.clone();
    for level in 2..=depth {
        let target = simplex.enumerate_dilation_points(n * level as i64)?;
        let sums: HashSet<LatticeVector> = sumset(&previous, &base).into_iter().collect();
        if let Some(p) = target.iter().find(|p| !sums.contains(*p)) {
            return Ok(IdpOutcome {
                holds: false,
                failure: Some((level, p.clone())),
            });
        }
        previous = target;
    }
    Ok(IdpOutcome {
        holds: true,
        failure: None,
    })
}

/// Default IDP depth `d − 1` (at least 2).
pub fn default_depth(dim: usize) -> usize {
    dim.saturating_sub(1).max(2)
}

/// For `n < k`, the point `w₁ + (ℓ′n − k)v₀` of `ℓ′(nP)` (with `ℓ′` minimal
/// such that `ℓ′n ≥ k`), checked exhaustively not to be a sum of `ℓ′`
/// points of `nP`.
pub fn idp_failure_witness(params: &FamilyParams, n: usize) -> Result<LatticeVector> {
    let k = params.k();
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if n >= k {
        return Err(Error::Precondition(format!(
            "no witness exists: nP has IDP for n = {n} ≥ k = {k}"
        )));
    }
    let levels = k.div_ceil(n);
    let simplex = build_simplex(params)?;
    let v0 = simplex.vertex(0).clone();
    let witness = &params.w(1) + &v0.scale((levels * n - k) as i64);

    if !simplex.contains(&witness, (levels * n) as i64)? {
        return Err(Error::Internal(format!(
            "{witness} is not in {}·({n}P)",
            levels
        )));
    }
    let base = simplex.enumerate_dilation_points(n as i64)?;
    let sums = iterated_sumset(&base, levels, params.dim());
    if sums.binary_search(&witness).is_ok() {
        return Err(Error::Internal(format!(
            "{witness} decomposes into {levels} points of {n}P"
        )));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    #[test]
    fn rejects_bad_params() {
        assert!(FamilyParams::new(2, 4, vec![2]).is_err()); // gcd
        assert!(FamilyParams::new(2, 5, vec![3]).is_err()); // > m/2
        assert!(FamilyParams::new(1, 5, vec![]).is_err());
        assert!(FamilyParams::new(2, 1, vec![1]).is_err());
        assert!(FamilyParams::new(3, 5, vec![1]).is_err());
        let err = FamilyParams::new(2, 6, vec![3]).unwrap_err();
        assert!(err.to_string().contains("gcd"));
    }

    #[test]
    fn normalization_flips_large_a() {
        let (p, adj) = FamilyParams::normalized(2, 5, vec![3]).unwrap();
        assert_eq!(p.a(), &[2]);
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].replaced_by, 2);
    }

    #[test]
    fn simplex_vertices() {
        let p = FamilyParams::new(2, 2, vec![1]).unwrap();
        assert_eq!(
            p.vertices(),
            vec![v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 2])]
        );
        assert_eq!(FamilyParams::new(2, 5, vec![2]).unwrap().apex(), v(&[2, 3, 5]));
        assert_eq!(
            FamilyParams::new(3, 3, vec![1, 1]).unwrap().apex(),
            v(&[1, 1, 2, 2, 3])
        );
    }

    #[test]
    fn w_point_values() {
        let p = FamilyParams::new(2, 5, vec![2]).unwrap();
        assert_eq!(
            w_points(&p),
            vec![v(&[1, 1, 1]), v(&[1, 2, 2]), v(&[2, 2, 3]), v(&[2, 3, 4])]
        );
        let p = FamilyParams::new(2, 3, vec![1]).unwrap();
        assert_eq!(w_points(&p), vec![v(&[1, 1, 1]), v(&[1, 2, 2])]);
    }

    #[test]
    fn decomposition_small() {
        let p = FamilyParams::new(2, 2, vec![1]).unwrap();
        let r = verify_decomposition(&p, 2).unwrap();
        assert!(r.holds());
        assert_eq!((r.lattice_points, r.deep_part, r.shifted_part), (11, 10, 1));
        assert!(verify_decomposition(&p, 3).unwrap().holds());
        let p = FamilyParams::new(2, 3, vec![1]).unwrap();
        let r = verify_decomposition(&p, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.shifted_part, 2);
        assert!(verify_decomposition(&p, 1).is_err());
    }

    #[test]
    fn idp_threshold_small() {
        let p = FamilyParams::new(2, 2, vec![1]).unwrap();
        let s = build_simplex(&p).unwrap();
        assert!(!idp_check(&s, 1, 2).unwrap().holds);
        assert!(idp_check(&s, 2, 2).unwrap().holds);
        assert!(idp_check(&s, 2, 1).is_err());
    }

    #[test]
    fn failure_witnesses() {
        let p = FamilyParams::new(2, 2, vec![1]).unwrap();
        assert_eq!(idp_failure_witness(&p, 1).unwrap(), v(&[1, 1, 1]));
        assert!(idp_failure_witness(&p, 2).is_err());
        let p = FamilyParams::new(3, 2, vec![1, 1]).unwrap();
        assert_eq!(idp_failure_witness(&p, 2).unwrap(), v(&[1, 1, 1, 1, 1]));
        let p = FamilyParams::new(2, 5, vec![2]).unwrap();
        assert_eq!(idp_failure_witness(&p, 1).unwrap(), v(&[1, 1, 1]));
    }
}
