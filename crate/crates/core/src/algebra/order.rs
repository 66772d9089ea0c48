//! Monomial orders.
//!
//! The composite order compares, in turn: (i) the total degree of the
//! x-part, (ii) the x-parts under a sorting order, (iii) the y-parts
//! lexicographically with `y₀ > y₁ > ⋯ > y_m`.
//!
//! The sorting order in (ii) is a weight order refined by lexicographic
//! order. The weight of `x_𝐬` is the height of its lattice point under the
//! convex lifting `Σ_{0≤i<j≤d+1} (tᵢ − tⱼ)²` with `tⱼ = #{r : s_r ≥ j}`
//! (so `t₀ = k`, `t_{d+1} = 0`). That lifting is piecewise linear exactly on
//! the alcoves `tᵢ − tⱼ ∈ [n, n+1]`, whose vertex sets are the sorted
//! monomials, so in every fiber the sorted monomial is the unique one of
//! minimum weight.

use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::catalog::VariableCatalog;
use super::monomial::Monomial;

/// Description of a monomial order, resolved against a catalog by
/// [`MonomialOrder::from_spec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    /// The graded / sorting / y-lexicographic composite order.
    Composite,
    /// Lexicographic; `ranking[0]` is the largest variable.
    Lex { ranking: Vec<usize> },
    /// Degree reverse lexicographic; the last entry of `ranking` is the
    /// smallest variable.
    DegRevLex { ranking: Vec<usize> },
    /// Nonnegative weight vector, ties broken by another order.
    Weight {
        weights: Vec<u64>,
        tiebreak: Box<OrderSpec>,
    },
}

#[derive(Clone, Debug)]
enum Kind {
    Composite {
        x_weight: Vec<u64>,
        nx: usize,
    },
    Lex(Vec<usize>),
    DegRevLex(Vec<usize>),
    Weight(Vec<u64>, Box<Kind>),
}

#[derive(Clone, Debug)]
pub struct MonomialOrder {
    nvars: usize,
    kind: Kind,
}

/// Weight of `x_𝐬` in the sorting order (see module docs).
pub fn sorting_weight(seq: &[usize], dim: usize) -> u64 {
    let t: Vec<i64> = (0..=dim + 1)
        .map(|j| seq.iter().filter(|&&s| s >= j).count() as i64)
        .collect();
    let mut w = 0i64;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            w += (t[i] - t[j]).pow(2);
        }
    }
    w as u64
}

fn check_ranking(ranking: &[usize], nvars: usize) -> Result<()> {
    let mut seen = vec![false; nvars];
    if ranking.len() != nvars {
        return Err(Error::InvalidParams(format!(
            "ranking lists {} variables, catalog has {nvars}",
            ranking.len()
        )));
    }
    for &v in ranking {
        if v >= nvars || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParams(format!("ranking is not a permutation (at {v})")));
        }
    }
    Ok(())
}

impl MonomialOrder {
    pub fn composite(cat: &VariableCatalog) -> Self {
        let nx = cat.x_count();
        let x_weight = (0..nx)
            .map(|v| sorting_weight(&cat.sequence_of(v).unwrap(), cat.dim()))
            .collect();
        MonomialOrder {
            nvars: cat.len(),
            kind: Kind::Composite { x_weight, nx },
        }
    }

    /// Lexicographic with variable 0 largest.
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            nvars,
            kind: Kind::Lex((0..nvars).collect()),
        }
    }

    /// Degree reverse lexicographic with `smallest` as the cheapest
    /// variable and the remaining ones in index order.
    pub fn degrevlex_with_last(nvars: usize, smallest: usize) -> Self {
        let mut ranking: Vec<usize> = (0..nvars).filter(|&v| v != smallest).collect();
        ranking.push(smallest);
        MonomialOrder {
            nvars,
            kind: Kind::DegRevLex(ranking),
        }
    }

    pub fn from_spec(spec: &OrderSpec, cat: &VariableCatalog) -> Result<Self> {
        if let OrderSpec::Composite = spec {
            return Ok(MonomialOrder::composite(cat));
        }
        Ok(MonomialOrder {
            nvars: cat.len(),
            kind: Self::resolve(spec, cat.len(), Some(cat))?,
        })
    }

    /// Resolves orders that do not need a catalog.
    pub fn from_spec_plain(spec: &OrderSpec, nvars: usize) -> Result<Self> {
        Ok(MonomialOrder {
            nvars,
            kind: Self::resolve(spec, nvars, None)?,
        })
    }

    fn resolve(spec: &OrderSpec, nvars: usize, cat: Option<&VariableCatalog>) -> Result<Kind> {
        Ok(match spec {
            OrderSpec::Composite => match cat {
                Some(c) => MonomialOrder::composite(c).kind,
                None => {
                    return Err(Error::InvalidParams(
                        "the composite order needs a variable catalog".into(),
                    ))
                }
            },
            OrderSpec::Lex { ranking } => {
                check_ranking(ranking, nvars)?;
                Kind::Lex(ranking.clone())
            }
            OrderSpec::DegRevLex { ranking } => {
                check_ranking(ranking, nvars)?;
                Kind::DegRevLex(ranking.clone())
            }
            OrderSpec::Weight { weights, tiebreak } => {
                if weights.len() != nvars {
                    return Err(Error::InvalidParams(format!(
                        "weight vector has {} entries, expected {nvars}",
                        weights.len()
                    )));
                }
                Kind::Weight(weights.clone(), Box::new(Self::resolve(tiebreak, nvars, cat)?))
            }
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars);
        debug_assert_eq!(b.nvars(), self.nvars);
        compare_kind(&self.kind, a.exponents(), b.exponents())
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn compare_kind(kind: &Kind, a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        Kind::Composite { x_weight, nx } => {
            let (ax, bx) = (&a[..*nx], &b[..*nx]);
            let deg = |e: &[u32]| e.iter().map(|&x| u64::from(x)).sum::<u64>();
            let wt = |e: &[u32]| {
                e.iter()
                    .zip(x_weight)
                    .map(|(&x, w)| u64::from(x) * w)
                    .sum::<u64>()
            };
            deg(ax)
                .cmp(&deg(bx))
                .then_with(|| wt(ax).cmp(&wt(bx)))
                .then_with(|| ax.cmp(bx))
                .then_with(|| a[*nx..].cmp(&b[*nx..]))
        }
        Kind::Lex(ranking) => {
            for &v in ranking {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
        Kind::DegRevLex(ranking) => {
            let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
            let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for &v in ranking.iter().rev() {
                match a[v].cmp(&b[v]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        }
        Kind::Weight(w, tiebreak) => {
            let wa: u64 = a.iter().zip(w).map(|(&x, w)| u64::from(x) * w).sum();
            let wb: u64 = b.iter().zip(w).map(|(&x, w)| u64::from(x) * w).sum();
            wa.cmp(&wb).then_with(|| compare_kind(tiebreak, a, b))
        }
    }
}
