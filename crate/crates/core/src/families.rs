//! The explicit binomial families `G₁,₁, G₁,₂, G₁,₃, G₂, G₃, …, G_k` for the
//! unit-parameter simplices `P(1,…,1,m)` and the pipeline certifying that
//! they form a Gröbner basis with squarefree initial ideal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::catalog::{is_sorted_sequences, sorted_split, VarId, VariableCatalog};
use crate::algebra::groebner::{buchberger_check, canonical_basis, BuchbergerReport};
use crate::algebra::ideal::{hilbert_vs_ehrhart, initial_ideal_generators, verify_membership, HilbertReport};
use crate::algebra::json::{binomial_display, binomial_to_json, BinomialJson};
use crate::algebra::monomial::{Binomial, Monomial};
use crate::algebra::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::lattice::binomial;
use crate::triangulation::{complex_from_initial_ideal, verify_triangulation, TriangulationReport};

/// Default limit on `k·C(d+k, k)`, the size measure of the variable catalog.
pub const DEFAULT_BUDGET: u64 = 500;

/// Refuses instances whose catalog measure `k·C(d+k, k)` exceeds `budget`.
pub fn check_budget(k: usize, budget: u64) -> Result<()> {
    let d = 2 * k as u64 - 1;
    let size = binomial(d + k as u64, k as u64) * k as u64;
    if size > budget.into() {
        return Err(Error::TooLarge(format!(
            "scale: k·C(d+k,k) = {size} exceeds the budget {budget}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PartLabel {
    G11,
    G12,
    G13,
    G2,
    /// `Gₙ` for `3 ≤ n ≤ k`.
    Gn(usize),
}

impl fmt::Display for PartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartLabel::G11 => write!(f, "G11"),
            PartLabel::G12 => write!(f, "G12"),
            PartLabel::G13 => write!(f, "G13"),
            PartLabel::G2 => write!(f, "G2"),
            PartLabel::Gn(n) => write!(f, "G{n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FamilyPart {
    pub label: PartLabel,
    /// Members written with the intended lead first.
    pub members: Vec<Binomial>,
}

#[derive(Clone, Debug)]
pub struct FamilyG {
    pub params: FamilyParams,
    pub parts: Vec<FamilyPart>,
}

impl FamilyG {
    pub fn len(&self) -> usize {
        self.parts.iter().map(|p| p.members.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn part(&self, label: PartLabel) -> Option<&FamilyPart> {
        self.parts.iter().find(|p| p.label == label)
    }

    pub fn all(&self) -> Vec<Binomial> {
        self.parts.iter().flat_map(|p| p.members.iter().cloned()).collect()
    }

    /// Members tagged with their part.
    pub fn labeled(&self) -> impl Iterator<Item = (PartLabel, &Binomial)> {
        self.parts
            .iter()
            .flat_map(|p| p.members.iter().map(move |g| (p.label, g)))
    }

    pub fn sizes(&self) -> BTreeMap<String, usize> {
        self.parts
            .iter()
            .map(|p| (p.label.to_string(), p.members.len()))
            .collect()
    }

    pub fn to_json(&self, cat: &VariableCatalog) -> FamilyGJson {
        FamilyGJson {
            k: self.params.k(),
            m: self.params.m(),
            parts: self
                .parts
                .iter()
                .map(|p| {
                    let members = p.members.iter().map(|g| binomial_to_json(cat, g)).collect();
                    (p.label.to_string(), members)
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyGJson {
    pub k: usize,
    pub m: i64,
    pub parts: BTreeMap<String, Vec<BinomialJson>>,
}

fn merged(seqs: &[&[usize]]) -> Vec<usize> {
    let mut all: Vec<usize> = seqs.iter().flat_map(|s| s.iter().copied()).collect();
    all.sort_unstable();
    all
}

/// Removes the entries of `sub` from the sorted multiset `all`, if contained.
fn multiset_minus(all: &[usize], sub: &[usize]) -> Option<Vec<usize>> {
    let mut rest = all.to_vec();
    for x in sub {
        let pos = rest.iter().position(|y| y == x)?;
        rest.remove(pos);
    }
    Some(rest)
}

fn covers(union: &BTreeSet<usize>, target: &[usize]) -> bool {
    target.iter().all(|t| union.contains(t))
}

/// Generates `G` for `P(1,…,1,m)`.
pub fn generate_g(k: usize, m: i64) -> Result<FamilyG> {
    let params = FamilyParams::unit(k, m)?;
    let cat = VariableCatalog::new(&params);
    let order = MonomialOrder::composite(&cat);
    let n = cat.len();
    let nx = cat.x_count();
    let u = [cat.u0(), cat.um()];
    let y_end = [cat.y(0), cat.y(m as usize)];
    let seq = |v: VarId| cat.sequence_of(v).unwrap();

    // quadratic x-monomials grouped by fiber
    let mut fibers: BTreeMap<Vec<usize>, Vec<(VarId, VarId)>> = BTreeMap::new();
    for i in 0..nx {
        for j in i..nx {
            fibers
                .entry(merged(&[&seq(i), &seq(j)]))
                .or_default()
                .push((i, j));
        }
    }
    let quad = |&(i, j): &(VarId, VarId)| Monomial::from_vars(n, &[i, j]);

    let fiber_list: Vec<(&Vec<usize>, &Vec<(VarId, VarId)>)> = fibers.iter().collect();
    let per_fiber: Vec<[Vec<Binomial>; 3]> = fiber_list
        .par_iter()
        .map(|(multiset, pairs)| {
            let monos: Vec<Monomial> = pairs.iter().map(quad).collect();
            let mut g11 = Vec::new();
            for a in 0..monos.len() {
                for b in a + 1..monos.len() {
                    g11.push(
                        Binomial::oriented(monos[a].clone(), monos[b].clone(), &order).unwrap(),
                    );
                }
            }
            let mut g12 = Vec::new();
            for (p, up) in u.iter().enumerate() {
                let Some(rest) = multiset_minus(multiset, up) else { continue };
                let Some(x) = cat.var_of_sequence(&rest).filter(|&v| cat.is_x(v)) else {
                    continue;
                };
                let tail = Monomial::from_vars(n, &[x, y_end[p]]);
                g12.extend(monos.iter().map(|l| Binomial::new(l.clone(), tail.clone()).unwrap()));
            }
            let mut g13 = Vec::new();
            for p in 0..2 {
                for q in p..2 {
                    if **multiset == merged(&[&u[p], &u[q]]) {
                        let tail = Monomial::from_vars(n, &[y_end[p], y_end[q]]);
                        g13.extend(
                            monos.iter().map(|l| Binomial::new(l.clone(), tail.clone()).unwrap()),
                        );
                    }
                }
            }
            [g11, g12, g13]
        })
        .collect();

    let mut g11 = Vec::new();
    let mut g12 = Vec::new();
    let mut g13 = Vec::new();
    for [a, b, c] in per_fiber {
        g11.extend(a);
        g12.extend(b);
        g13.extend(c);
    }

    let mut g2 = Vec::new();
    let mu = m as usize;
    for p in 0..=mu {
        for q in p + 1..=mu {
            for r in q..=mu {
                let s = q + r - p;
                if s <= mu {
                    g2.push(
                        Binomial::new(
                            Monomial::from_vars(n, &[cat.y(p), cat.y(s)]),
                            Monomial::from_vars(n, &[cat.y(q), cat.y(r)]),
                        )
                        .unwrap(),
                    );
                }
            }
        }
    }

    let mut parts = vec![
        FamilyPart { label: PartLabel::G11, members: g11 },
        FamilyPart { label: PartLabel::G12, members: g12 },
        FamilyPart { label: PartLabel::G13, members: g13 },
        FamilyPart { label: PartLabel::G2, members: g2 },
    ];
    let higher: Vec<FamilyPart> = (3..=k)
        .into_par_iter()
        .map(|len| FamilyPart {
            label: PartLabel::Gn(len),
            members: generate_gn(&cat, len),
        })
        .collect();
    parts.extend(higher);
    Ok(FamilyG { params, parts })
}

/// `Gₙ`: sorted products of `n` x-variables covering `𝐮₀` or `𝐮ₘ` such that
/// no `n − 1` of the factors cover either.
fn generate_gn(cat: &VariableCatalog, len: usize) -> Vec<Binomial> {
    let nvars = cat.len();
    let nx = cat.x_count();
    let u = [cat.u0(), cat.um()];
    let y_end = [cat.y(0), cat.y(cat.m() as usize)];
    let seqs: Vec<Vec<usize>> = (0..nx).map(|v| cat.sequence_of(v).unwrap()).collect();

    fn go(
        start: usize,
        len: usize,
        chosen: &mut Vec<VarId>,
        seqs: &[Vec<usize>],
        u: &[Vec<usize>; 2],
        out: &mut Vec<Vec<VarId>>,
    ) {
        if chosen.len() == len {
            let full: BTreeSet<usize> = chosen.iter().flat_map(|&v| seqs[v].iter().copied()).collect();
            if !u.iter().any(|t| covers(&full, t)) {
                return;
            }
            let minimal = (0..len).all(|skip| {
                let union: BTreeSet<usize> = chosen
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .flat_map(|(_, &v)| seqs[v].iter().copied())
                    .collect();
                !u.iter().any(|t| covers(&union, t))
            });
            if minimal {
                out.push(chosen.clone());
            }
            return;
        }
        for v in start..seqs.len() {
            chosen.push(v);
            let factors: Vec<Vec<usize>> = chosen.iter().map(|&c| seqs[c].clone()).collect();
            let union: BTreeSet<usize> = factors.iter().flatten().copied().collect();
            // proper sub-products of a valid product are sorted and cover nothing
            let keep = is_sorted_sequences(&factors)
                && (chosen.len() == len || !u.iter().any(|t| covers(&union, t)));
            if keep {
                go(v, len, chosen, seqs, u, out);
            }
            chosen.pop();
        }
    }

    let mut tuples = Vec::new();
    go(0, len, &mut Vec::with_capacity(len), &seqs, &u, &mut tuples);

    let mut out = Vec::new();
    for t in tuples {
        let lead = Monomial::from_vars(nvars, &t);
        let refs: Vec<&[usize]> = t.iter().map(|&v| seqs[v].as_slice()).collect();
        let all = merged(&refs);
        for p in 0..2 {
            let Some(rest) = multiset_minus(&all, &u[p]) else { continue };
            let mut tail = cat
                .monomial_of_sequences(&sorted_split(rest, len - 1))
                .expect("every weakly increasing k-sequence is a variable");
            tail.bump(y_end[p], 1);
            out.push(Binomial::new(lead.clone(), tail).unwrap());
        }
    }
    out
}

/// Outcome of one pipeline stage.
#[derive(Clone, Debug, Serialize)]
pub struct StageResult {
    pub stage: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub k: usize,
    pub m: i64,
    pub maxdeg: u32,
    pub family_sizes: BTreeMap<String, usize>,
    pub stages: Vec<StageResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub buchberger: Option<BuchbergerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangulation: Option<TriangulationReport>,
    pub certified: bool,
}

impl PipelineReport {
    pub fn verdict(&self) -> String {
        if self.certified {
            "RUT certified".into()
        } else {
            match self.stages.iter().find(|s| !s.passed) {
                Some(s) => format!("not certified: stage {} failed", s.stage),
                None => "not certified".into(),
            }
        }
    }

    pub fn failed_stage(&self) -> Option<&StageResult> {
        self.stages.iter().find(|s| !s.passed)
    }
}

/// Runs generation, membership, squarefree-lead, Buchberger, Hilbert and
/// triangulation checks on `G` for `P(1,…,1,m)`, stopping at the first
/// failing stage.
pub fn sufficiency_pipeline(k: usize, m: i64, maxdeg: u32, budget: u64) -> Result<PipelineReport> {
    check_budget(k, budget)?;
    let family = generate_g(k, m)?;
    let cat = VariableCatalog::new(&family.params);
    let order = MonomialOrder::composite(&cat);
    run_pipeline(&cat, &order, &family, maxdeg)
}

/// The pipeline on an arbitrary (possibly modified) family.
pub fn run_pipeline(
    cat: &VariableCatalog,
    order: &MonomialOrder,
    family: &FamilyG,
    maxdeg: u32,
) -> Result<PipelineReport> {
    let mut report = PipelineReport {
        k: family.params.k(),
        m: family.params.m(),
        maxdeg,
        family_sizes: family.sizes(),
        stages: Vec::new(),
        buchberger: None,
        hilbert: None,
        triangulation: None,
        certified: false,
    };
    report.stages.push(StageResult {
        stage: "generate",
        passed: true,
        detail: format!("{} binomials", family.len()),
        witness: None,
    });

    log::info!("membership check on {} binomials", family.len());
    let outside = family.labeled().find(|(_, g)| !verify_membership(cat, g));
    report.stages.push(StageResult {
        stage: "membership",
        passed: outside.is_none(),
        detail: "every member lies in the toric ideal".into(),
        witness: outside.map(|(l, g)| format!("{l}: {}", binomial_display(cat, g))),
    });
    if outside.is_some() {
        return Ok(report);
    }

    let bad_lead = family
        .labeled()
        .find(|(_, g)| !g.lead_is_first(order) || !g.lead.is_squarefree());
    report.stages.push(StageResult {
        stage: "squarefree-lead",
        passed: bad_lead.is_none(),
        detail: "each member's first monomial is its squarefree lead".into(),
        witness: bad_lead.map(|(l, g)| format!("{l}: {}", binomial_display(cat, g))),
    });
    if bad_lead.is_some() {
        return Ok(report);
    }

    let all = family.all();
    log::info!("Buchberger criterion on {} binomials", all.len());
    let bb = buchberger_check(&all, order);
    report.stages.push(StageResult {
        stage: "buchberger",
        passed: bb.is_groebner(),
        detail: format!(
            "{} S-pairs reduced, {} skipped as coprime",
            bb.pairs_reduced, bb.pairs_coprime
        ),
        witness: bb.failure.as_ref().map(|f| {
            format!(
                "S({}, {}) reduces to {}",
                binomial_display(cat, &f.first),
                binomial_display(cat, &f.second),
                binomial_display(cat, &f.remainder)
            )
        }),
    });
    let groebner = bb.is_groebner();
    report.buchberger = Some(bb);
    if !groebner {
        return Ok(report);
    }

    log::info!("Hilbert function up to degree {maxdeg}");
    let hilbert = hilbert_vs_ehrhart(cat, order, &all, maxdeg)?;
    report.stages.push(StageResult {
        stage: "hilbert",
        passed: hilbert.agrees(),
        detail: hilbert
            .rows
            .iter()
            .map(|r| format!("{}:{}/{}", r.degree, r.standard_monomials, r.lattice_points))
            .collect::<Vec<_>>()
            .join(" "),
        witness: hilbert.first_mismatch.map(|n| format!("degree {n}")),
    });
    let agrees = hilbert.agrees();
    report.hilbert = Some(hilbert);
    if !agrees {
        return Ok(report);
    }

    log::info!("extracting the triangulation");
    let leads = initial_ideal_generators(&all, order);
    let complex = complex_from_initial_ideal(&leads, cat)?;
    let tri = verify_triangulation(&complex)?;
    report.stages.push(StageResult {
        stage: "triangulation",
        passed: tri.passed(),
        detail: format!("{} unimodular cells, total volume {}", tri.cells, tri.total_volume),
        witness: tri.first_failure(),
    });
    report.certified = tri.passed();
    report.triangulation = Some(tri);
    Ok(report)
}

/// The family with one member removed, for mutation testing.
pub fn without_member(family: &FamilyG, label: PartLabel, index: usize) -> FamilyG {
    let mut out = family.clone();
    if let Some(p) = out.parts.iter_mut().find(|p| p.label == label) {
        if index < p.members.len() {
            p.members.remove(index);
        }
    }
    out
}

/// Oriented, deduplicated members of `family`.
pub fn canonical_members(family: &FamilyG, order: &MonomialOrder) -> Vec<Binomial> {
    canonical_basis(&family.all(), order)
}
