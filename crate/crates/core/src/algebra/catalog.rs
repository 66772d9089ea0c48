use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::lattice::LatticeVector;

use super::monomial::Monomial;

pub type VarId = usize;

/// What a catalog variable stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// `x_{i₁⋯i_k}` for a weakly increasing index sequence.
    X(Vec<usize>),
    /// `y_j`, `0 ≤ j ≤ m`; `y₀` and `y_m` are the renamed `x_{𝐮₀}` and `x_{𝐮ₘ}`.
    Y(usize),
}

/// Variables of the polynomial ring presenting the Ehrhart ring of `kP`.
///
/// Plain x-variables come first, in lexicographic order of their index
/// sequences, followed by `y₀, …, y_m`. The sequences `𝐮₀ = 0 1 ⋯ (k−1)`
/// and `𝐮ₘ = k ⋯ d` never appear as x-variables: looking them up returns
/// `y₀` and `y_m`.
#[derive(Clone, Debug)]
pub struct VariableCatalog {
    params: FamilyParams,
    kinds: Vec<VarKind>,
    images: Vec<LatticeVector>,
    by_sequence: HashMap<Vec<usize>, VarId>,
    by_point: HashMap<LatticeVector, VarId>,
    y_base: VarId,
}

/// All weakly increasing sequences of length `len` over `0..=max`, in
/// lexicographic order.
pub fn multisets(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, start: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..=max {
            cur.push(i);
            go(len, i, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, max, &mut Vec::with_capacity(len), &mut out);
    out
}

impl VariableCatalog {
    pub fn new(params: &FamilyParams) -> Self {
        let k = params.k();
        let d = params.dim();
        let m = params.m();
        let verts = params.vertices();
        let u0: Vec<usize> = (0..k).collect();
        let um: Vec<usize> = (k..=d).collect();

        let seq_image = |s: &[usize]| {
            let mut p = LatticeVector::zero(d);
            for &i in s {
                p = &p + &verts[i];
            }
            p.lifted(1)
        };

        let mut kinds = Vec::new();
        let mut images = Vec::new();
        let mut by_sequence = HashMap::new();
        for s in multisets(k, d) {
            if s == u0 || s == um {
                continue;
            }
            by_sequence.insert(s.clone(), kinds.len());
            images.push(seq_image(&s));
            kinds.push(VarKind::X(s));
        }
        let y_base = kinds.len();
        for j in 0..=m {
            let img = if j == 0 {
                seq_image(&u0)
            } else if j == m {
                seq_image(&um)
            } else {
                params.w(j).lifted(1)
            };
            kinds.push(VarKind::Y(j as usize));
            images.push(img);
        }
        by_sequence.insert(u0, y_base);
        by_sequence.insert(um, y_base + m as usize);
        let by_point = images
            .iter()
            .enumerate()
            .map(|(i, p)| (LatticeVector(p.0[..d].to_vec()), i))
            .collect();
        VariableCatalog {
            params: params.clone(),
            kinds,
            images,
            by_sequence,
            by_point,
            y_base,
        }
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn k(&self) -> usize {
        self.params.k()
    }

    pub fn m(&self) -> i64 {
        self.params.m()
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn kind(&self, v: VarId) -> &VarKind {
        &self.kinds[v]
    }

    /// Number of plain x-variables (aliases excluded).
    pub fn x_count(&self) -> usize {
        self.y_base
    }

    pub fn is_x(&self, v: VarId) -> bool {
        v < self.y_base
    }

    /// `y_j` for `0 ≤ j ≤ m`.
    pub fn y(&self, j: usize) -> VarId {
        assert!(j as i64 <= self.m(), "y index {j} out of range");
        self.y_base + j
    }

    pub fn y_index(&self, v: VarId) -> Option<usize> {
        match self.kinds[v] {
            VarKind::Y(j) => Some(j),
            VarKind::X(_) => None,
        }
    }

    pub fn u0(&self) -> Vec<usize> {
        (0..self.k()).collect()
    }

    pub fn um(&self) -> Vec<usize> {
        (self.k()..=self.dim()).collect()
    }

    /// Variable for a (weakly increasing) index sequence; aliases map to
    /// `y₀` and `y_m`.
    pub fn var_of_sequence(&self, s: &[usize]) -> Option<VarId> {
        self.by_sequence.get(s).copied()
    }

    /// Index sequence for x-variables and for the aliases `y₀`, `y_m`.
    pub fn sequence_of(&self, v: VarId) -> Option<Vec<usize>> {
        match &self.kinds[v] {
            VarKind::X(s) => Some(s.clone()),
            VarKind::Y(0) => Some(self.u0()),
            VarKind::Y(j) if *j as i64 == self.m() => Some(self.um()),
            VarKind::Y(_) => None,
        }
    }

    /// `π`-image of a variable: its lattice point with height 1 appended.
    pub fn image(&self, v: VarId) -> &LatticeVector {
        &self.images[v]
    }

    /// Lattice point of `kP ∩ ℤᵈ` carried by `v`.
    pub fn point(&self, v: VarId) -> LatticeVector {
        LatticeVector(self.images[v].0[..self.dim()].to_vec())
    }

    pub fn var_at_point(&self, p: &LatticeVector) -> Option<VarId> {
        self.by_point.get(p).copied()
    }

    /// Whether `p` lies in the k-fold sumset of the vertices of `P`.
    pub fn in_vertex_sumset(&self, p: &LatticeVector) -> bool {
        self.var_at_point(p)
            .is_some_and(|v| self.sequence_of(v).is_some())
    }

    pub fn name(&self, v: VarId) -> String {
        match &self.kinds[v] {
            VarKind::X(s) => {
                let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                format!("x[{}]", parts.join(","))
            }
            VarKind::Y(j) => format!("y[{j}]"),
        }
    }

    pub fn parse_name(&self, name: &str) -> Result<VarId> {
        let bad = || Error::Parse(format!("unknown variable {name:?}"));
        let inner = |prefix: &str| {
            name.strip_prefix(prefix)
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(bad)
        };
        if name.starts_with("x[") {
            let seq = inner("x[")?
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            let v = self.var_of_sequence(&seq).ok_or_else(bad)?;
            if !self.is_x(v) {
                return Err(Error::Parse(format!(
                    "{name} is an alias; write it as {}",
                    self.name(v)
                )));
            }
            Ok(v)
        } else if name.starts_with("y[") {
            let j: usize = inner("y[")?.trim().parse().map_err(|_| bad())?;
            if j as i64 > self.m() {
                return Err(bad());
            }
            Ok(self.y(j))
        } else {
            Err(bad())
        }
    }

    /// Monomial `Π x_{𝐬}` over the given sequences (aliases become y's).
    pub fn monomial_of_sequences<S: AsRef<[usize]>>(&self, seqs: &[S]) -> Option<Monomial> {
        let mut mono = Monomial::one(self.len());
        for s in seqs {
            mono.bump(self.var_of_sequence(s.as_ref())?, 1);
        }
        Some(mono)
    }

    /// Index sequences of every factor when the monomial involves only
    /// x-variables and the aliases `y₀`, `y_m`; factors are listed in
    /// lexicographic order.
    pub fn sequences_of(&self, mono: &Monomial) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for (v, e) in mono.support_with_exponents() {
            let s = self.sequence_of(v)?;
            for _ in 0..e {
                out.push(s.clone());
            }
        }
        out.sort();
        Some(out)
    }

    /// Whether the x-part of `mono` (aliases read as x-variables) is sorted.
    /// Returns `None` if `mono` involves some `y_j` with `0 < j < m`.
    pub fn is_sorted(&self, mono: &Monomial) -> Option<bool> {
        Some(is_sorted_sequences(&self.sequences_of(mono)?))
    }
}

/// Interleaving of a multiset split into `factors` rows: row `i` takes the
/// sorted entries at positions `i, i + factors, i + 2·factors, …`.
pub fn sorted_split(mut all: Vec<usize>, factors: usize) -> Vec<Vec<usize>> {
    all.sort_unstable();
    (0..factors)
        .map(|i| all.iter().skip(i).step_by(factors).copied().collect())
        .collect()
}

/// Whether `x_{𝐬₁}⋯x_{𝐬_ℓ}` is sorted: with the factors listed in
/// lexicographic order, `sort(𝐬₁⋯𝐬_ℓ)` equals the column-wise interleaving
/// `s₁,₁ s₂,₁ ⋯ s_ℓ,₁ s₁,₂ ⋯`.
pub fn is_sorted_sequences(seqs: &[Vec<usize>]) -> bool {
    let mut factors: Vec<&Vec<usize>> = seqs.iter().collect();
    factors.sort();
    let Some(len) = factors.first().map(|s| s.len()) else {
        return true;
    };
    let interleaved: Vec<usize> = (0..len)
        .flat_map(|c| factors.iter().map(move |s| s[c]))
        .collect();
    interleaved.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(k: usize, m: i64) -> VariableCatalog {
        VariableCatalog::new(&FamilyParams::unit(k, m).unwrap())
    }

    #[test]
    fn sizes() {
        // C(d+k, k) + (m − 1)
        assert_eq!(cat(2, 2).len(), 11);
        assert_eq!(cat(2, 3).len(), 12);
        assert_eq!(cat(3, 2).len(), 57);
        assert_eq!(cat(2, 2).x_count(), 8);
    }

    #[test]
    fn aliases_resolve_to_y() {
        let c = cat(2, 2);
        assert_eq!(c.var_of_sequence(&[0, 1]), Some(c.y(0)));
        assert_eq!(c.var_of_sequence(&[2, 3]), Some(c.y(2)));
        assert_eq!(c.image(c.y(0)).0, vec![1, 0, 0, 1]);
        assert_eq!(c.image(c.y(2)).0, vec![1, 2, 2, 1]);
        assert_eq!(c.image(c.y(1)).0, vec![1, 1, 1, 1]);
    }

    #[test]
    fn names_round_trip() {
        let c = cat(3, 2);
        for v in 0..c.len() {
            assert_eq!(c.parse_name(&c.name(v)).unwrap(), v);
        }
        assert!(c.parse_name("x[0,1,2]").is_err());
        assert!(c.parse_name("y[3]").is_err());
        assert!(c.parse_name("z[1]").is_err());
    }

    #[test]
    fn sortedness() {
        assert!(is_sorted_sequences(&[vec![0, 2], vec![1, 3]]));
        assert!(!is_sorted_sequences(&[vec![0, 3], vec![1, 2]]));
        assert!(!is_sorted_sequences(&[vec![0, 1], vec![2, 3]]));
        assert!(is_sorted_sequences(&[vec![1, 2]]));
        assert_eq!(sorted_split(vec![3, 1, 2, 0], 2), vec![vec![0, 2], vec![1, 3]]);
    }
}
